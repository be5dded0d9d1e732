//! The reduced bar complex of an augmented finite-dimensional algebra and the
//! homology Tor it computes, over fields (dimensions) and over the integers
//! (invariant factors), together with maps induced on Tor by inclusions and a
//! per-degree comparison of results.
//!
//! The degree-q chains are the q-fold tensor power of the augmentation
//! kernel, with basis the elements b - chi(b) 1 for non-unit basis elements b.
//! The boundary merges adjacent tensor slots with alternating signs; products
//! of two kernel-basis elements expand back into the kernel basis with at most
//! three terms.

use crate::algebra::{group_algebra, AlgebraMap, Character, FiniteAlgebra};
use crate::error::{Error, Result};
use crate::group::GroupDesc;
use crate::matrix::{kernel_basis, matrix_rank, smith_normal_form, SparseMatrix};
use crate::scalar::{RingSpec, Scalar};
use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Caps and mode for a Tor computation.
#[derive(Clone, Copy, Debug)]
pub struct TorOptions {
    pub qmax: usize,
    pub mode: TorMode,
    /// largest admissible number of columns (dim A - 1)^q of a boundary
    pub col_cap: usize,
    /// largest admissible matrix side for integer-mode Smith normal forms
    pub int_dim_cap: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TorMode {
    Field,
    Integer,
}

pub const DEFAULT_COL_CAP: usize = 200_000;
pub const DEFAULT_INT_DIM_CAP: usize = 5_000;

impl TorOptions {
    pub fn field(qmax: usize) -> Self {
        TorOptions {
            qmax,
            mode: TorMode::Field,
            col_cap: DEFAULT_COL_CAP,
            int_dim_cap: DEFAULT_INT_DIM_CAP,
        }
    }

    pub fn integer(qmax: usize) -> Self {
        TorOptions {
            mode: TorMode::Integer,
            ..Self::field(qmax)
        }
    }

    pub fn with_col_cap(mut self, cap: usize) -> Self {
        self.col_cap = cap;
        self
    }
}

/// Homology of one integer-coefficient degree: free rank plus torsion
/// invariant factors (> 1, in divisibility order).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntegerHomology {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

#[derive(Clone, PartialEq, Debug)]
pub enum TorData {
    Field { dims: Vec<usize> },
    Integer { groups: Vec<IntegerHomology> },
}

/// Per-degree Tor of an augmented algebra, degrees 0..=qmax.
#[derive(Clone, PartialEq, Debug)]
pub struct TorResult {
    pub ring: RingSpec,
    pub data: TorData,
    pub note: Option<String>,
}

impl TorResult {
    pub fn dims(&self) -> Option<&[usize]> {
        match &self.data {
            TorData::Field { dims } => Some(dims),
            _ => None,
        }
    }

    pub fn qmax(&self) -> usize {
        match &self.data {
            TorData::Field { dims } => dims.len() - 1,
            TorData::Integer { groups } => groups.len() - 1,
        }
    }
}

// ---------------------------------------------------------------------------
// the complex

/// Precomputed products of augmentation-kernel basis elements, expanded in the
/// kernel basis: xbar ybar = s zbar - chi(x) ybar - chi(y) xbar.
struct AbarMult {
    dim: usize,
    /// terms[(i * dim + j)]: list of (coefficient, kernel-basis index)
    terms: Vec<Vec<(Scalar, u32)>>,
}

fn abar_mult(alg: &FiniteAlgebra, chi: &Character) -> Result<AbarMult> {
    let ring = alg.ring();
    let unit = alg.unit();
    let to_alg: Vec<usize> = (0..alg.dim()).filter(|&i| i != unit).collect();
    let mut to_abar = vec![usize::MAX; alg.dim()];
    for (a, &i) in to_alg.iter().enumerate() {
        to_abar[i] = a;
    }
    let dim = to_alg.len();
    let mut terms = Vec::with_capacity(dim * dim);
    for &x in &to_alg {
        for &y in &to_alg {
            let mut t: Vec<(Scalar, u32)> = Vec::with_capacity(3);
            if let Some((s, z)) = alg.mul_basis(x, y) {
                if z != unit {
                    t.push((s, to_abar[z] as u32));
                }
            }
            let chi_x = &chi.values[x];
            if !chi_x.is_zero() {
                t.push((chi_x.neg(), to_abar[y] as u32));
            }
            let chi_y = &chi.values[y];
            if !chi_y.is_zero() {
                t.push((chi_y.neg(), to_abar[x] as u32));
            }
            // merge coincident indices
            t.sort_by_key(|&(_, k)| k);
            let mut merged: Vec<(Scalar, u32)> = Vec::with_capacity(t.len());
            for (s, k) in t {
                match merged.last_mut() {
                    Some((acc, last)) if *last == k => {
                        *acc = acc.add(&s)?;
                    }
                    _ => merged.push((s, k)),
                }
            }
            merged.retain(|(s, _)| !s.is_zero());
            terms.push(merged);
        }
    }
    Ok(AbarMult { dim, terms })
}

/// The reduced bar complex with boundaries d_1 .. d_through.
pub struct BarComplex {
    pub ring: RingSpec,
    pub abar_dim: usize,
    /// boundaries[q-1] = d_q : C_q -> C_{q-1}
    pub boundaries: Vec<SparseMatrix>,
}

fn chain_dim(abar_dim: usize, q: usize) -> Option<usize> {
    abar_dim.checked_pow(q as u32)
}

fn boundary_columns(
    mult: &AbarMult,
    q: usize,
    mut emit: impl FnMut(Vec<(u32, Scalar)>),
) {
    let dim = mult.dim;
    let cols = chain_dim(dim, q).expect("capped");
    let rows_radix: Vec<usize> = (0..q - 1).rev().map(|k| dim.pow(k as u32)).collect();
    let mut digits = vec![0usize; q];
    for _ in 0..cols {
        let mut entries: Vec<(u32, Scalar)> = Vec::with_capacity(3 * (q - 1));
        for slot in 0..q - 1 {
            // merge slots `slot` and `slot+1`, sign (-1)^(slot+1)
            let neg = slot % 2 == 0;
            for (s, k) in &mult.terms[digits[slot] * dim + digits[slot + 1]] {
                let mut row = 0usize;
                let mut r = 0usize;
                for (d, digit) in digits.iter().enumerate() {
                    if d == slot {
                        row += *k as usize * rows_radix[r];
                        r += 1;
                    } else if d == slot + 1 {
                        continue;
                    } else {
                        row += digit * rows_radix[r];
                        r += 1;
                    }
                }
                let coef = if neg { s.neg() } else { s.clone() };
                entries.push((row as u32, coef));
            }
        }
        emit(entries);
        // odometer
        for d in (0..q).rev() {
            digits[d] += 1;
            if digits[d] < dim {
                break;
            }
            digits[d] = 0;
        }
    }
}

/// The boundary d_q of the reduced bar complex as a sparse matrix.
pub fn bar_boundary(alg: &FiniteAlgebra, chi: &Character, q: usize) -> Result<SparseMatrix> {
    let mult = abar_mult(alg, chi)?;
    build_boundary(&mult, alg.ring(), q, usize::MAX)
}

fn build_boundary(
    mult: &AbarMult,
    ring: RingSpec,
    q: usize,
    col_cap: usize,
) -> Result<SparseMatrix> {
    if q == 0 {
        return Err(Error::Invalid("boundaries start at q = 1".into()));
    }
    let cols = chain_dim(mult.dim, q)
        .filter(|&c| c <= col_cap)
        .ok_or_else(|| {
            Error::SizeCapExceeded(format!(
                "bar degree {q} needs {}^{q} columns (cap {col_cap})",
                mult.dim
            ))
        })?;
    let rows = chain_dim(mult.dim, q - 1).unwrap();
    if q == 1 {
        return Ok(SparseMatrix::zero(rows, cols, ring));
    }
    let mut columns: Vec<Vec<(u32, Scalar)>> = Vec::with_capacity(cols);
    boundary_columns(mult, q, |c| columns.push(c));
    SparseMatrix::from_columns(rows, ring, columns)
}

impl BarComplex {
    /// Build boundaries d_1 .. d_through and assert d . d = 0 on every
    /// computed pair of degrees.
    pub fn build(
        alg: &FiniteAlgebra,
        chi: &Character,
        through: usize,
        col_cap: usize,
    ) -> Result<Self> {
        chi.verify(alg)?;
        let mult = abar_mult(alg, chi)?;
        let mut boundaries = Vec::with_capacity(through);
        for q in 1..=through {
            boundaries.push(build_boundary(&mult, alg.ring(), q, col_cap)?);
        }
        let complex = BarComplex {
            ring: alg.ring(),
            abar_dim: mult.dim,
            boundaries,
        };
        complex.assert_square_zero()?;
        Ok(complex)
    }

    /// d_{q} o d_{q+1} = 0, asserted exactly for every stored pair.
    fn assert_square_zero(&self) -> Result<()> {
        for w in self.boundaries.windows(2) {
            let (d_lo, d_hi) = (&w[0], &w[1]);
            for c in 0..d_hi.cols() {
                let mut acc: Vec<(u32, Scalar)> = Vec::new();
                for (mid, s) in d_hi.column(c) {
                    for (row, t) in d_lo.column(mid as usize) {
                        acc.push((row, s.mul(&t)?));
                    }
                }
                acc.sort_by_key(|&(r, _)| r);
                let mut sum = Scalar::zero(self.ring);
                let mut cur = None;
                for (r, s) in acc {
                    if cur == Some(r) {
                        sum = sum.add(&s)?;
                    } else {
                        if !sum.is_zero() {
                            return Err(Error::Invalid(format!(
                                "boundary square is nonzero at column {c}"
                            )));
                        }
                        cur = Some(r);
                        sum = s;
                    }
                }
                if !sum.is_zero() {
                    return Err(Error::Invalid(format!(
                        "boundary square is nonzero at column {c}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn boundary(&self, q: usize) -> &SparseMatrix {
        &self.boundaries[q - 1]
    }
}

// ---------------------------------------------------------------------------
// Tor

/// Tor of the trivial module against itself over an augmented algebra, per
/// degree 0..=qmax: dimensions over a field, or free rank plus torsion over
/// the integers.
pub fn tor(alg: &FiniteAlgebra, chi: &Character, opts: &TorOptions) -> Result<TorResult> {
    match opts.mode {
        TorMode::Field => {
            if !alg.ring().is_field() {
                return Err(Error::NotAField(alg.ring().name()));
            }
            let complex = BarComplex::build(alg, chi, opts.qmax + 1, opts.col_cap)?;
            let ranks: Vec<usize> = complex
                .boundaries
                .par_iter()
                .map(|m| matrix_rank(m))
                .collect::<Result<_>>()?;
            let dims = (0..=opts.qmax)
                .map(|q| {
                    let dim_cq = chain_dim(complex.abar_dim, q).expect("capped");
                    let rank_dq = if q == 0 { 0 } else { ranks[q - 1] };
                    let rank_dq1 = ranks[q];
                    dim_cq - rank_dq - rank_dq1
                })
                .collect();
            Ok(TorResult {
                ring: alg.ring(),
                data: TorData::Field { dims },
                note: None,
            })
        }
        TorMode::Integer => {
            if alg.ring() != RingSpec::Integers {
                return Err(Error::Invalid(
                    "integer mode requires integer coefficients".into(),
                ));
            }
            let complex = BarComplex::build(alg, chi, opts.qmax + 1, opts.col_cap)?;
            let too_big = complex
                .boundaries
                .iter()
                .any(|m| m.rows().max(m.cols()) > opts.int_dim_cap);
            if too_big {
                // fall back to field dimensions over the rationals
                let rat: Vec<SparseMatrix> = complex
                    .boundaries
                    .iter()
                    .map(|m| m.over_rationals())
                    .collect::<Result<_>>()?;
                let ranks: Vec<usize> = rat
                    .par_iter()
                    .map(|m| matrix_rank(m))
                    .collect::<Result<_>>()?;
                let dims = (0..=opts.qmax)
                    .map(|q| {
                        let dim_cq = chain_dim(complex.abar_dim, q).expect("capped");
                        let rank_dq = if q == 0 { 0 } else { ranks[q - 1] };
                        dim_cq - rank_dq - ranks[q]
                    })
                    .collect();
                return Ok(TorResult {
                    ring: RingSpec::Rationals,
                    data: TorData::Field { dims },
                    note: Some(format!(
                        "matrix sides exceed the integer-mode cap {}; reporting free ranks over the rationals",
                        opts.int_dim_cap
                    )),
                });
            }
            let snfs: Vec<_> = complex
                .boundaries
                .par_iter()
                .map(smith_normal_form)
                .collect::<Result<Vec<_>>>()?;
            let groups = (0..=opts.qmax)
                .map(|q| {
                    let dim_cq = chain_dim(complex.abar_dim, q).expect("capped");
                    let rank_dq = if q == 0 { 0 } else { snfs[q - 1].rank };
                    let next = &snfs[q];
                    IntegerHomology {
                        free_rank: dim_cq - rank_dq - next.rank,
                        torsion: next
                            .invariant_factors
                            .iter()
                            .filter(|d| !d.is_one())
                            .cloned()
                            .collect(),
                    }
                })
                .collect();
            Ok(TorResult {
                ring: RingSpec::Integers,
                data: TorData::Integer { groups },
                note: None,
            })
        }
    }
}

/// Group homology via the bar complex of the group algebra.
pub fn group_homology(desc: &GroupDesc, ring: RingSpec, opts: &TorOptions) -> Result<TorResult> {
    let (alg, chi) = group_algebra(desc, ring, usize::MAX)?;
    tor(&alg, &chi, opts)
}

// ---------------------------------------------------------------------------
// induced maps

/// Ranks of the maps induced on Tor (degrees 0..=qmax) by a character-
/// compatible inclusion of augmented algebras mapping basis to basis.
pub fn tor_induced_map(
    src: (&FiniteAlgebra, &Character),
    tgt: (&FiniteAlgebra, &Character),
    map: &AlgebraMap,
    opts: &TorOptions,
) -> Result<Vec<usize>> {
    let (salg, schi) = src;
    let (talg, tchi) = tgt;
    if salg.ring() != talg.ring() || !salg.ring().is_field() {
        return Err(Error::NotAField(salg.ring().name()));
    }
    // basis-to-basis with coefficient one, unit to unit, characters compatible
    let mut img = vec![0usize; salg.dim()];
    for (i, e) in map.images.iter().enumerate() {
        if e.len() != 1 || !e[0].0.is_one() {
            return Err(Error::Invalid(
                "induced maps require basis-to-basis inclusions".into(),
            ));
        }
        img[i] = e[0].1;
        if tchi.values[e[0].1] != schi.values[i] {
            return Err(Error::CharacterIncompatible);
        }
        if (e[0].1 == talg.unit()) != (i == salg.unit()) {
            return Err(Error::Invalid("inclusion must match units exactly".into()));
        }
    }
    let unit_s = salg.unit();
    let unit_t = talg.unit();
    // kernel-basis index maps
    let abar_s: Vec<usize> = (0..salg.dim()).filter(|&i| i != unit_s).collect();
    let mut t_to_abar = vec![usize::MAX; talg.dim()];
    {
        let mut a = 0usize;
        for i in 0..talg.dim() {
            if i != unit_t {
                t_to_abar[i] = a;
                a += 1;
            }
        }
    }
    let abar_map: Vec<usize> = abar_s.iter().map(|&i| t_to_abar[img[i]]).collect();

    let s_complex = BarComplex::build(salg, schi, opts.qmax + 1, opts.col_cap)?;
    let t_complex = BarComplex::build(talg, tchi, opts.qmax + 1, opts.col_cap)?;
    let t_dim = talg.dim() - 1;

    let mut out = Vec::with_capacity(opts.qmax + 1);
    for q in 0..=opts.qmax {
        // cycles: C_0 is spanned by the empty tensor; otherwise ker d_q
        let cycles: Vec<Vec<(u32, Scalar)>> = if q == 0 {
            vec![vec![(0u32, Scalar::one(salg.ring()))]]
        } else {
            kernel_basis(s_complex.boundary(q))?
        };
        // push a source chain index through the tensor-power of the inclusion
        let push_index = |mut idx: usize| -> u32 {
            let mut digits = vec![0usize; q];
            for d in (0..q).rev() {
                digits[d] = idx % s_complex.abar_dim;
                idx /= s_complex.abar_dim;
            }
            let mut out_idx = 0usize;
            for d in 0..q {
                out_idx = out_idx * t_dim + abar_map[digits[d]];
            }
            out_idx as u32
        };
        let mapped: Vec<Vec<(u32, Scalar)>> = cycles
            .iter()
            .map(|v| {
                let mut w: Vec<(u32, Scalar)> =
                    v.iter().map(|(i, s)| (push_index(*i as usize), s.clone())).collect();
                w.sort_by_key(|&(i, _)| i);
                w
            })
            .collect();
        let boundaries = t_complex.boundary(q + 1);
        let b_cols: Vec<Vec<(u32, Scalar)>> =
            (0..boundaries.cols()).map(|c| boundaries.column(c)).collect();
        let rank_b = {
            let ctx = crate::matrix::ScalarCtx { ring: talg.ring() };
            crate::matrix::rank_columns(&ctx, b_cols.iter().cloned())
        };
        let rank_total = {
            let ctx = crate::matrix::ScalarCtx { ring: talg.ring() };
            crate::matrix::rank_columns(&ctx, b_cols.into_iter().chain(mapped))
        };
        out.push(rank_total - rank_b);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// comparison

/// Per-degree comparison of two Tor results over the same ring.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub equal_through: usize,
    pub per_degree: Vec<bool>,
    pub left: TorResult,
    pub right: TorResult,
}

pub fn compare(a: &TorResult, b: &TorResult) -> Result<ComparisonReport> {
    if a.ring != b.ring {
        return Err(Error::RingMismatch(a.ring.name(), b.ring.name()));
    }
    let qmax = a.qmax().min(b.qmax());
    let per_degree: Vec<bool> = (0..=qmax)
        .map(|q| match (&a.data, &b.data) {
            (TorData::Field { dims: da }, TorData::Field { dims: db }) => da[q] == db[q],
            (TorData::Integer { groups: ga }, TorData::Integer { groups: gb }) => {
                ga[q] == gb[q]
            }
            _ => false,
        })
        .collect();
    let equal_through = per_degree.iter().take_while(|&&b| b).count().saturating_sub(1);
    Ok(ComparisonReport {
        equal_through,
        per_degree,
        left: a.clone(),
        right: b.clone(),
    })
}

// ---------------------------------------------------------------------------
// JSON form of TorResult

#[derive(Serialize, Deserialize)]
struct TorDto {
    ring: RingSpec,
    mode: TorMode,
    #[serde(skip_serializing_if = "Option::is_none")]
    dims: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    invariants: Option<Vec<(usize, Vec<String>)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
}

impl Serialize for TorResult {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let dto = match &self.data {
            TorData::Field { dims } => TorDto {
                ring: self.ring,
                mode: TorMode::Field,
                dims: Some(dims.clone()),
                invariants: None,
                note: self.note.clone(),
            },
            TorData::Integer { groups } => TorDto {
                ring: self.ring,
                mode: TorMode::Integer,
                dims: None,
                invariants: Some(
                    groups
                        .iter()
                        .map(|g| {
                            (
                                g.free_rank,
                                g.torsion.iter().map(|d| d.to_string()).collect(),
                            )
                        })
                        .collect(),
                ),
                note: self.note.clone(),
            },
        };
        dto.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TorResult {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let dto = TorDto::deserialize(deserializer)?;
        let data = match dto.mode {
            TorMode::Field => TorData::Field {
                dims: dto
                    .dims
                    .ok_or_else(|| serde::de::Error::custom("field mode needs dims"))?,
            },
            TorMode::Integer => {
                let invariants = dto
                    .invariants
                    .ok_or_else(|| serde::de::Error::custom("integer mode needs invariants"))?;
                TorData::Integer {
                    groups: invariants
                        .into_iter()
                        .map(|(free_rank, tors)| {
                            let torsion = tors
                                .iter()
                                .map(|s| s.parse::<BigInt>().map_err(serde::de::Error::custom))
                                .collect::<std::result::Result<Vec<_>, D::Error>>()?;
                            Ok(IntegerHomology { free_rank, torsion })
                        })
                        .collect::<std::result::Result<Vec<_>, D::Error>>()?,
                }
            }
        };
        Ok(TorResult {
            ring: dto.ring,
            data,
            note: dto.note,
        })
    }
}
