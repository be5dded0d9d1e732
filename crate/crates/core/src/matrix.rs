//! Sparse matrices with exact entries, rank over the supported fields, kernel
//! bases, and Smith normal form over the integers.
//!
//! Rank is computed by left-to-right column reduction, keeping one reduced
//! pivot column per leading row. Over F_2 incoming columns are reduced in a
//! dense bit scratch and stored pivots switch between sparse index lists and
//! packed bit rows depending on their weight, which keeps both the very sparse
//! early phase and the dense tail of a bar-complex boundary cheap.

use crate::error::{Error, Result};
use crate::scalar::{RingSpec, Scalar};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

#[derive(Clone, Debug, PartialEq, Eq)]
enum ValStore {
    Int(Vec<BigInt>),
    Rat(Vec<BigRational>),
    Fp(Vec<u64>),
    Fp2(Vec<(u64, u64)>),
}

impl ValStore {
    fn new(ring: RingSpec) -> Self {
        match ring {
            RingSpec::Integers => ValStore::Int(Vec::new()),
            RingSpec::Rationals => ValStore::Rat(Vec::new()),
            RingSpec::PrimeField { .. } => ValStore::Fp(Vec::new()),
            RingSpec::QuadExt { .. } => ValStore::Fp2(Vec::new()),
        }
    }

    fn len(&self) -> usize {
        match self {
            ValStore::Int(v) => v.len(),
            ValStore::Rat(v) => v.len(),
            ValStore::Fp(v) => v.len(),
            ValStore::Fp2(v) => v.len(),
        }
    }

    fn push(&mut self, s: &Scalar) -> Result<()> {
        match self {
            ValStore::Int(v) => v.push(s.as_bigint()?),
            ValStore::Rat(v) => v.push(s.as_bigrational()?),
            ValStore::Fp(v) => v.push(s.as_residue()?),
            ValStore::Fp2(v) => v.push(s.as_residue_pair()?),
        }
        Ok(())
    }

    fn get(&self, ring: RingSpec, i: usize) -> Scalar {
        match self {
            ValStore::Int(v) => Scalar::from_bigint(ring, v[i].clone()),
            ValStore::Rat(v) => {
                Scalar::parse(ring, &format!("{}/{}", v[i].numer(), v[i].denom()))
                    .expect("reconstruct rational")
            }
            ValStore::Fp(v) => Scalar::from_int(ring, 0)
                .add(&Scalar::from_bigint(ring, BigInt::from(v[i])))
                .expect("same ring"),
            ValStore::Fp2(v) => {
                Scalar::from_residue_pair(ring, v[i].0, v[i].1).expect("quad ext ring")
            }
        }
    }
}

/// Immutable sparse matrix in column-major form; no explicit zeros stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    ring: RingSpec,
    col_ptr: Vec<usize>,
    row_idx: Vec<u32>,
    vals: ValStore,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize, ring: RingSpec) -> Self {
        SparseMatrix {
            rows,
            cols,
            ring,
            col_ptr: vec![0; cols + 1],
            row_idx: Vec::new(),
            vals: ValStore::new(ring),
        }
    }

    /// Build from (row, col, value) triplets; duplicate positions are summed.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        ring: RingSpec,
        triplets: Vec<(u32, u32, Scalar)>,
    ) -> Result<Self> {
        let mut by_col: Vec<Vec<(u32, Scalar)>> = vec![Vec::new(); cols];
        for (r, c, v) in triplets {
            if r as usize >= rows || c as usize >= cols {
                return Err(Error::Invalid(format!("entry ({r},{c}) out of range")));
            }
            if v.ring() != ring {
                return Err(Error::RingMismatch(ring.name(), v.ring().name()));
            }
            by_col[c as usize].push((r, v));
        }
        Self::from_columns(rows, ring, by_col)
    }

    /// Build from per-column sparse vectors; entries in a column are summed by
    /// row and zeros dropped.
    pub fn from_columns(
        rows: usize,
        ring: RingSpec,
        columns: Vec<Vec<(u32, Scalar)>>,
    ) -> Result<Self> {
        let cols = columns.len();
        let mut col_ptr = Vec::with_capacity(cols + 1);
        col_ptr.push(0usize);
        let mut row_idx = Vec::new();
        let mut vals = ValStore::new(ring);
        for mut col in columns {
            col.sort_by_key(|&(r, _)| r);
            let mut i = 0;
            while i < col.len() {
                let r = col[i].0;
                if r as usize >= rows {
                    return Err(Error::Invalid(format!("row {r} out of range")));
                }
                let mut acc = col[i].1.clone();
                let mut j = i + 1;
                while j < col.len() && col[j].0 == r {
                    acc = acc.add(&col[j].1)?;
                    j += 1;
                }
                if !acc.is_zero() {
                    row_idx.push(r);
                    vals.push(&acc)?;
                }
                i = j;
            }
            col_ptr.push(row_idx.len());
        }
        Ok(SparseMatrix {
            rows,
            cols,
            ring,
            col_ptr,
            row_idx,
            vals,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn nnz(&self) -> usize {
        self.row_idx.len()
    }

    pub fn column(&self, c: usize) -> Vec<(u32, Scalar)> {
        let (lo, hi) = (self.col_ptr[c], self.col_ptr[c + 1]);
        (lo..hi)
            .map(|i| (self.row_idx[i], self.vals.get(self.ring, i)))
            .collect()
    }

    pub fn entry(&self, r: u32, c: usize) -> Scalar {
        let (lo, hi) = (self.col_ptr[c], self.col_ptr[c + 1]);
        match self.row_idx[lo..hi].binary_search(&r) {
            Ok(k) => self.vals.get(self.ring, lo + k),
            Err(_) => Scalar::zero(self.ring),
        }
    }

    fn fp_columns(&self) -> impl Iterator<Item = Vec<(u32, u64)>> + '_ {
        let vals = match &self.vals {
            ValStore::Fp(v) => v.as_slice(),
            _ => &[],
        };
        (0..self.cols).map(move |c| {
            let (lo, hi) = (self.col_ptr[c], self.col_ptr[c + 1]);
            (lo..hi).map(|i| (self.row_idx[i], vals[i])).collect()
        })
    }

    fn generic_columns(&self) -> Vec<Vec<(u32, Scalar)>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    /// Reinterpret the integer entries over the rationals.
    pub fn over_rationals(&self) -> Result<SparseMatrix> {
        match &self.vals {
            ValStore::Int(v) => {
                let vals = ValStore::Rat(v.iter().map(|n| BigRational::from_integer(n.clone())).collect());
                Ok(SparseMatrix {
                    ring: RingSpec::Rationals,
                    vals,
                    rows: self.rows,
                    cols: self.cols,
                    col_ptr: self.col_ptr.clone(),
                    row_idx: self.row_idx.clone(),
                })
            }
            _ => Err(Error::Invalid("matrix is not over the integers".into())),
        }
    }
}

// ---------------------------------------------------------------------------
// field contexts for the elimination kernels

pub(crate) trait FieldCtx {
    type Elt: Clone + PartialEq;
    fn is_zero(&self, a: &Self::Elt) -> bool;
    fn neg(&self, a: &Self::Elt) -> Self::Elt;
    fn mul(&self, a: &Self::Elt, b: &Self::Elt) -> Self::Elt;
    fn add(&self, a: &Self::Elt, b: &Self::Elt) -> Self::Elt;
    fn inv(&self, a: &Self::Elt) -> Self::Elt;
    fn one(&self) -> Self::Elt;
}

pub(crate) struct FpCtx {
    pub p: u64,
}

impl FieldCtx for FpCtx {
    type Elt = u64;
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn inv(&self, a: &u64) -> u64 {
        let mut e = self.p - 2;
        let mut acc = 1u64;
        let mut base = a % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
    fn one(&self) -> u64 {
        1
    }
}

pub(crate) struct RatCtx;

impl FieldCtx for RatCtx {
    type Elt = BigRational;
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a.clone()
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
}

pub(crate) struct ScalarCtx {
    pub ring: RingSpec,
}

impl FieldCtx for ScalarCtx {
    type Elt = Scalar;
    fn is_zero(&self, a: &Scalar) -> bool {
        a.is_zero()
    }
    fn neg(&self, a: &Scalar) -> Scalar {
        a.neg()
    }
    fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a.mul(b).expect("same ring")
    }
    fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a.add(b).expect("same ring")
    }
    fn inv(&self, a: &Scalar) -> Scalar {
        a.inv().expect("field element invertible")
    }
    fn one(&self) -> Scalar {
        Scalar::one(self.ring)
    }
}

/// col <- col + factor * pivot, both sorted by row ascending.
fn axpy<C: FieldCtx>(
    ctx: &C,
    col: &[(u32, C::Elt)],
    factor: &C::Elt,
    pivot: &[(u32, C::Elt)],
) -> Vec<(u32, C::Elt)> {
    let mut out = Vec::with_capacity(col.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < col.len() || j < pivot.len() {
        if j >= pivot.len() || (i < col.len() && col[i].0 < pivot[j].0) {
            out.push(col[i].clone());
            i += 1;
        } else if i >= col.len() || pivot[j].0 < col[i].0 {
            out.push((pivot[j].0, ctx.mul(factor, &pivot[j].1)));
            j += 1;
        } else {
            let s = ctx.add(&col[i].1, &ctx.mul(factor, &pivot[j].1));
            if !ctx.is_zero(&s) {
                out.push((col[i].0, s));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Rank by column reduction: one stored pivot column per leading (largest)
/// row index, with the pivot coefficient normalized to 1.
pub(crate) fn rank_columns<C: FieldCtx>(
    ctx: &C,
    cols: impl Iterator<Item = Vec<(u32, C::Elt)>>,
) -> usize {
    let mut pivots: HashMap<u32, Vec<(u32, C::Elt)>> = HashMap::new();
    let mut rank = 0usize;
    for mut col in cols {
        loop {
            let Some((low, v)) = col.last().map(|(r, v)| (*r, v.clone())) else {
                break;
            };
            match pivots.get(&low) {
                None => {
                    let inv = ctx.inv(&v);
                    for e in col.iter_mut() {
                        e.1 = ctx.mul(&e.1, &inv);
                    }
                    pivots.insert(low, col);
                    rank += 1;
                    break;
                }
                Some(p) => {
                    let f = ctx.neg(&v);
                    col = axpy(ctx, &col[..col.len() - 1], &f, &p[..p.len() - 1]);
                }
            }
        }
    }
    rank
}

const GF2_SPARSE_MAX: usize = 768;

enum Gf2Pivot {
    Sparse(Vec<u32>),
    Dense(Box<[u64]>),
}

/// Rank over F_2 with a dense bit scratch row and hybrid pivot storage.
pub(crate) fn rank_gf2(rows: usize, cols: impl Iterator<Item = Vec<u32>>) -> usize {
    let words = rows.div_ceil(64).max(1);
    let mut scratch = vec![0u64; words];
    let mut pivots: Vec<Option<Gf2Pivot>> = Vec::new();
    pivots.resize_with(rows.max(1), || None);
    let mut rank = 0usize;
    for col in cols {
        if col.is_empty() {
            continue;
        }
        let mut top_word = 0usize;
        for &r in &col {
            let w = r as usize / 64;
            scratch[w] ^= 1u64 << (r % 64);
            top_word = top_word.max(w);
        }
        loop {
            // locate highest set bit at or below top_word
            let mut top = None;
            let mut w = top_word;
            loop {
                if scratch[w] != 0 {
                    top = Some(w * 64 + 63 - scratch[w].leading_zeros() as usize);
                    top_word = w;
                    break;
                }
                if w == 0 {
                    break;
                }
                w -= 1;
            }
            let Some(top) = top else { break };
            match &pivots[top] {
                None => {
                    let mut weight = 0usize;
                    for word in &scratch[..=top_word] {
                        weight += word.count_ones() as usize;
                    }
                    let piv = if weight <= GF2_SPARSE_MAX {
                        let mut v = Vec::with_capacity(weight);
                        for (wi, word) in scratch[..=top_word].iter().enumerate() {
                            let mut word = *word;
                            while word != 0 {
                                let b = word.trailing_zeros() as usize;
                                v.push((wi * 64 + b) as u32);
                                word &= word - 1;
                            }
                        }
                        Gf2Pivot::Sparse(v)
                    } else {
                        let mut d = vec![0u64; words].into_boxed_slice();
                        d[..=top_word].copy_from_slice(&scratch[..=top_word]);
                        Gf2Pivot::Dense(d)
                    };
                    pivots[top] = Some(piv);
                    rank += 1;
                    break;
                }
                Some(Gf2Pivot::Sparse(v)) => {
                    for &r in v {
                        scratch[r as usize / 64] ^= 1u64 << (r % 64);
                    }
                }
                Some(Gf2Pivot::Dense(d)) => {
                    for (s, dw) in scratch[..=top_word].iter_mut().zip(d[..=top_word].iter()) {
                        *s ^= dw;
                    }
                }
            }
        }
        scratch.fill(0);
    }
    rank
}

/// Exact rank of a matrix over a field.
pub fn matrix_rank(m: &SparseMatrix) -> Result<usize> {
    match m.ring {
        RingSpec::Integers => Err(Error::NotAField(m.ring.name())),
        RingSpec::PrimeField { p } if p == 2 => {
            Ok(rank_gf2(m.rows, m.fp_columns().map(|c| {
                c.into_iter().map(|(r, _)| r).collect()
            })))
        }
        RingSpec::PrimeField { p } => Ok(rank_columns(&FpCtx { p }, m.fp_columns())),
        RingSpec::Rationals | RingSpec::QuadExt { .. } => {
            let ctx = ScalarCtx { ring: m.ring };
            Ok(rank_columns(&ctx, m.generic_columns().into_iter()))
        }
    }
}

/// A basis of the kernel of the matrix (as combinations of its columns),
/// computed over a field.
pub fn kernel_basis(m: &SparseMatrix) -> Result<Vec<Vec<(u32, Scalar)>>> {
    if !m.ring.is_field() {
        return Err(Error::NotAField(m.ring.name()));
    }
    let ctx = ScalarCtx { ring: m.ring };
    let mut pivots: HashMap<u32, (Vec<(u32, Scalar)>, Vec<(u32, Scalar)>)> = HashMap::new();
    let mut kernel = Vec::new();
    for j in 0..m.cols {
        let mut col = m.column(j);
        let mut combo = vec![(j as u32, Scalar::one(m.ring))];
        loop {
            let Some((low, v)) = col.last().map(|(r, v)| (*r, v.clone())) else {
                kernel.push(combo);
                break;
            };
            match pivots.get(&low) {
                None => {
                    let inv = v.inv()?;
                    for e in col.iter_mut() {
                        e.1 = e.1.mul(&inv)?;
                    }
                    for e in combo.iter_mut() {
                        e.1 = e.1.mul(&inv)?;
                    }
                    pivots.insert(low, (col, combo));
                    break;
                }
                Some((p, pc)) => {
                    let f = v.neg();
                    col = axpy(&ctx, &col[..col.len() - 1], &f, &p[..p.len() - 1]);
                    combo = axpy(&ctx, &combo, &f, pc);
                }
            }
        }
    }
    Ok(kernel)
}

// ---------------------------------------------------------------------------
// Smith normal form

/// Invariant factors d_1 | d_2 | ... (nonzero, positive) of an integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SNFResult {
    pub invariant_factors: Vec<BigInt>,
    pub rank: usize,
}

#[derive(Serialize, Deserialize)]
struct SnfDto {
    invariant_factors: Vec<String>,
    rank: usize,
}

impl Serialize for SNFResult {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SnfDto {
            invariant_factors: self.invariant_factors.iter().map(|d| d.to_string()).collect(),
            rank: self.rank,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SNFResult {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let dto = SnfDto::deserialize(deserializer)?;
        let invariant_factors = dto
            .invariant_factors
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(serde::de::Error::custom))
            .collect::<std::result::Result<Vec<_>, D::Error>>()?;
        Ok(SNFResult {
            invariant_factors,
            rank: dto.rank,
        })
    }
}

struct SnfWork {
    // row-major adjacency with column occupancy mirror
    rows: HashMap<u32, HashMap<u32, BigInt>>,
    cols: HashMap<u32, HashMap<u32, BigInt>>,
}

impl SnfWork {
    fn get(&self, r: u32, c: u32) -> BigInt {
        self.rows
            .get(&r)
            .and_then(|m| m.get(&c))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    fn set(&mut self, r: u32, c: u32, v: BigInt) {
        if v.is_zero() {
            if let Some(m) = self.rows.get_mut(&r) {
                m.remove(&c);
                if m.is_empty() {
                    self.rows.remove(&r);
                }
            }
            if let Some(m) = self.cols.get_mut(&c) {
                m.remove(&r);
                if m.is_empty() {
                    self.cols.remove(&c);
                }
            }
        } else {
            self.rows.entry(r).or_default().insert(c, v.clone());
            self.cols.entry(c).or_default().insert(r, v);
        }
    }

    /// row_r -= q * row_pr
    fn row_op(&mut self, r: u32, pr: u32, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        let pivot_row: Vec<(u32, BigInt)> = self.rows[&pr]
            .iter()
            .map(|(c, v)| (*c, v.clone()))
            .collect();
        for (c, v) in pivot_row {
            let new = self.get(r, c) - q * &v;
            self.set(r, c, new);
        }
    }

    /// col_c -= q * col_pc
    fn col_op(&mut self, c: u32, pc: u32, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        let pivot_col: Vec<(u32, BigInt)> = self.cols[&pc]
            .iter()
            .map(|(r, v)| (*r, v.clone()))
            .collect();
        for (r, v) in pivot_col {
            let new = self.get(r, c) - q * &v;
            self.set(r, c, new);
        }
    }

    /// Pivot of minimal absolute value, Markowitz cost as tie-break.
    fn best_pivot(&self) -> Option<(u32, u32)> {
        let mut best: Option<((u32, u32), BigInt, usize)> = None;
        for (r, row) in &self.rows {
            let rw = row.len();
            for (c, v) in row {
                let a = v.abs();
                let cost = (rw - 1) * (self.cols[c].len() - 1);
                let better = match &best {
                    None => true,
                    Some((_, ba, bc)) => a < *ba || (a == *ba && cost < *bc),
                };
                if better {
                    best = Some(((*r, *c), a, cost));
                }
            }
        }
        best.map(|(rc, _, _)| rc)
    }
}

/// Smith normal form of an integer matrix. Pivots are chosen with minimal
/// absolute value (Markowitz cost as tie-break) to control entry growth.
pub fn smith_normal_form(m: &SparseMatrix) -> Result<SNFResult> {
    if m.ring != RingSpec::Integers {
        return Err(Error::Invalid("Smith normal form requires integer entries".into()));
    }
    let mut work = SnfWork {
        rows: HashMap::new(),
        cols: HashMap::new(),
    };
    for c in 0..m.cols {
        for (r, v) in m.column(c) {
            work.set(r, c as u32, v.as_bigint()?);
        }
    }

    let mut diagonal: Vec<BigInt> = Vec::new();
    while let Some((mut pr, mut pc)) = work.best_pivot() {
        // clear the pivot row and column with Euclidean steps; a nonzero
        // remainder is strictly smaller than the pivot and becomes the new
        // pivot, so the loop terminates
        loop {
            let pivot = work.get(pr, pc);
            debug_assert!(!pivot.is_zero());
            let col_other = work.cols[&pc].keys().copied().find(|r| *r != pr);
            if let Some(r) = col_other {
                let v = work.get(r, pc);
                let (q, rem) = v.div_rem(&pivot);
                work.row_op(r, pr, &q);
                if !rem.is_zero() {
                    pr = r;
                }
                continue;
            }
            let row_other = work.rows[&pr].keys().copied().find(|c| *c != pc);
            if let Some(c) = row_other {
                let v = work.get(pr, c);
                let (q, rem) = v.div_rem(&pivot);
                work.col_op(c, pc, &q);
                if !rem.is_zero() {
                    pc = c;
                }
                continue;
            }
            break;
        }
        let d = work.get(pr, pc).abs();
        work.set(pr, pc, BigInt::zero());
        diagonal.push(d);
    }

    // enforce the divisibility chain by pairwise gcd/lcm replacement
    loop {
        let mut changed = false;
        for i in 0..diagonal.len() {
            for j in i + 1..diagonal.len() {
                if !(&diagonal[j] % &diagonal[i]).is_zero() {
                    let g = diagonal[i].gcd(&diagonal[j]);
                    let l = (&diagonal[i] * &diagonal[j]) / &g;
                    diagonal[i] = g;
                    diagonal[j] = l;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    diagonal.sort();
    let rank = diagonal.len();
    Ok(SNFResult {
        invariant_factors: diagonal,
        rank,
    })
}

// ---------------------------------------------------------------------------
// JSON exchange format

#[derive(Serialize, Deserialize)]
struct MatrixDto {
    rows: usize,
    cols: usize,
    ring: RingSpec,
    entries: Vec<(u32, u32, String)>,
}

impl Serialize for SparseMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut entries = Vec::with_capacity(self.nnz());
        for c in 0..self.cols {
            for (r, v) in self.column(c) {
                entries.push((r, c as u32, v.to_string()));
            }
        }
        entries.sort_by_key(|&(r, c, _)| (r, c));
        MatrixDto {
            rows: self.rows,
            cols: self.cols,
            ring: self.ring,
            entries,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SparseMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let dto = MatrixDto::deserialize(deserializer)?;
        let triplets = dto
            .entries
            .into_iter()
            .map(|(r, c, s)| {
                Scalar::parse(dto.ring, &s)
                    .map(|v| (r, c, v))
                    .map_err(serde::de::Error::custom)
            })
            .collect::<std::result::Result<Vec<_>, D::Error>>()?;
        SparseMatrix::from_triplets(dto.rows, dto.cols, dto.ring, triplets)
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: usize, cols: usize, ring: RingSpec, entries: &[(u32, u32, i64)]) -> SparseMatrix {
        SparseMatrix::from_triplets(
            rows,
            cols,
            ring,
            entries
                .iter()
                .map(|&(r, c, v)| (r, c, Scalar::from_int(ring, v)))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn rank_identity() {
        let m = mat(2, 2, RingSpec::Rationals, &[(0, 0, 1), (1, 1, 1)]);
        assert_eq!(matrix_rank(&m).unwrap(), 2);
    }

    #[test]
    fn rank_zero_matrix() {
        let m = SparseMatrix::zero(3, 4, RingSpec::Rationals);
        assert_eq!(matrix_rank(&m).unwrap(), 0);
    }

    #[test]
    fn rank_proportional_rows() {
        let m = mat(
            2,
            2,
            RingSpec::Rationals,
            &[(0, 0, 1), (0, 1, 2), (1, 0, 2), (1, 1, 4)],
        );
        assert_eq!(matrix_rank(&m).unwrap(), 1);
    }

    #[test]
    fn rank_needs_field() {
        let m = mat(1, 1, RingSpec::Integers, &[(0, 0, 2)]);
        assert!(matches!(matrix_rank(&m), Err(Error::NotAField(_))));
    }

    #[test]
    fn rank_gf2_matches_generic() {
        let f2 = RingSpec::prime_field(2).unwrap();
        let f3 = RingSpec::prime_field(3).unwrap();
        let entries = [
            (0u32, 0u32, 1i64),
            (1, 0, 1),
            (1, 1, 1),
            (2, 1, 1),
            (0, 2, 1),
            (2, 2, 1),
        ];
        // columns sum to zero mod 2: rank 2
        let m2 = mat(3, 3, f2, &entries);
        assert_eq!(matrix_rank(&m2).unwrap(), 2);
        let m3 = mat(3, 3, f3, &entries);
        assert_eq!(matrix_rank(&m3).unwrap(), 3);
    }

    #[test]
    fn snf_diag_2_3() {
        let m = mat(2, 2, RingSpec::Integers, &[(0, 0, 2), (1, 1, 3)]);
        let snf = smith_normal_form(&m).unwrap();
        assert_eq!(
            snf.invariant_factors,
            vec![BigInt::from(1), BigInt::from(6)]
        );
        assert_eq!(snf.rank, 2);
    }

    #[test]
    fn snf_zero_matrix() {
        let m = SparseMatrix::zero(2, 3, RingSpec::Integers);
        let snf = smith_normal_form(&m).unwrap();
        assert!(snf.invariant_factors.is_empty());
        assert_eq!(snf.rank, 0);
    }

    #[test]
    fn snf_single_entry() {
        let m = mat(1, 1, RingSpec::Integers, &[(0, 0, 2)]);
        let snf = smith_normal_form(&m).unwrap();
        assert_eq!(snf.invariant_factors, vec![BigInt::from(2)]);
    }

    #[test]
    fn snf_known_4x4() {
        // worked example with factors 1, 3, 21, 0
        let entries: Vec<(u32, u32, i64)> = vec![
            (0, 0, -6), (0, 1, 111), (0, 2, -36), (0, 3, 6),
            (1, 0, 5), (1, 1, -672), (1, 2, 210), (1, 3, 74),
            (2, 1, -255), (2, 2, 81), (2, 3, 24),
            (3, 0, -7), (3, 1, 255), (3, 2, -81), (3, 3, -10),
        ];
        let m = mat(4, 4, RingSpec::Integers, &entries);
        let snf = smith_normal_form(&m).unwrap();
        assert_eq!(
            snf.invariant_factors,
            vec![BigInt::from(1), BigInt::from(3), BigInt::from(21)]
        );
        assert_eq!(snf.rank, 3);
    }

    #[test]
    fn kernel_of_singular_matrix() {
        let m = mat(
            2,
            3,
            RingSpec::Rationals,
            &[(0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 2, 1)],
        );
        let kern = kernel_basis(&m).unwrap();
        // rank 2, so kernel has dimension 1
        assert_eq!(kern.len(), 1);
        // verify: m * v = 0
        for v in kern {
            let mut acc = vec![Scalar::zero(RingSpec::Rationals); 2];
            for (j, coef) in v {
                for (r, e) in m.column(j as usize) {
                    acc[r as usize] = acc[r as usize].add(&e.mul(&coef).unwrap()).unwrap();
                }
            }
            assert!(acc.iter().all(|s| s.is_zero()));
        }
    }

    #[test]
    fn matrix_json_roundtrip() {
        let f5 = RingSpec::prime_field(5).unwrap();
        let m = mat(2, 3, f5, &[(0, 0, 3), (1, 2, 4)]);
        let s = serde_json::to_string(&m).unwrap();
        let back: SparseMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(m, back);
    }
}
