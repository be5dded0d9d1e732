//! Finite groups (products of cyclic groups or explicit Cayley tables),
//! permutations, semidirect products G^n x| Sigma_n, and actions of a group on
//! the ground ring by ring automorphisms.

use crate::error::{Error, Result};
use crate::scalar::{RingSpec, Scalar};
use serde::{Deserialize, Serialize};

/// A finite group given by generators-free data: either a direct product of
/// cyclic groups (always abelian) or an explicit multiplication table.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FiniteGroupSpec {
    CyclicProduct { moduli: Vec<u32> },
    Cayley { table: Vec<Vec<u32>>, identity: u32 },
}

/// Canonical coordinates of a group element: one reduced coordinate per cyclic
/// factor, or a single table index.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement(pub Vec<u32>);

impl FiniteGroupSpec {
    /// The trivial group.
    pub fn trivial() -> Self {
        FiniteGroupSpec::CyclicProduct { moduli: vec![] }
    }

    pub fn cyclic(m: u32) -> Result<Self> {
        Self::cyclic_product(vec![m])
    }

    pub fn cyclic_product(moduli: Vec<u32>) -> Result<Self> {
        if moduli.iter().any(|&m| m < 2) {
            return Err(Error::Invalid("cyclic moduli must be at least 2".into()));
        }
        Ok(FiniteGroupSpec::CyclicProduct { moduli })
    }

    pub fn cayley(table: Vec<Vec<u32>>, identity: u32) -> Result<Self> {
        let spec = FiniteGroupSpec::Cayley { table, identity };
        spec.validate()?;
        Ok(spec)
    }

    /// Check the axioms on an explicit table (associativity, identity,
    /// inverses); cyclic products are valid by construction.
    pub fn validate(&self) -> Result<()> {
        match self {
            FiniteGroupSpec::CyclicProduct { moduli } => {
                if moduli.iter().any(|&m| m < 2) {
                    return Err(Error::Invalid("cyclic moduli must be at least 2".into()));
                }
                Ok(())
            }
            FiniteGroupSpec::Cayley { table, identity } => {
                let n = table.len();
                if n == 0 || *identity as usize >= n {
                    return Err(Error::Invalid("empty table or bad identity index".into()));
                }
                for row in table {
                    if row.len() != n || row.iter().any(|&v| v as usize >= n) {
                        return Err(Error::Invalid("table is not square over range".into()));
                    }
                }
                let e = *identity as usize;
                for a in 0..n {
                    if table[e][a] as usize != a || table[a][e] as usize != a {
                        return Err(Error::Invalid("identity law fails".into()));
                    }
                    if !(0..n).any(|b| table[a][b] as usize == e && table[b][a] as usize == e) {
                        return Err(Error::Invalid(format!("element {a} has no inverse")));
                    }
                }
                for a in 0..n {
                    for b in 0..n {
                        for c in 0..n {
                            let lhs = table[table[a][b] as usize][c];
                            let rhs = table[a][table[b][c] as usize];
                            if lhs != rhs {
                                return Err(Error::Invalid("associativity fails".into()));
                            }
                        }
                    }
                }
                Ok(())
            }
        }
    }

    pub fn order(&self) -> usize {
        match self {
            FiniteGroupSpec::CyclicProduct { moduli } => {
                moduli.iter().map(|&m| m as usize).product()
            }
            FiniteGroupSpec::Cayley { table, .. } => table.len(),
        }
    }

    pub fn is_abelian(&self) -> bool {
        match self {
            FiniteGroupSpec::CyclicProduct { .. } => true,
            FiniteGroupSpec::Cayley { table, .. } => {
                let n = table.len();
                (0..n).all(|a| (0..n).all(|b| table[a][b] == table[b][a]))
            }
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn identity(&self) -> GroupElement {
        match self {
            FiniteGroupSpec::CyclicProduct { moduli } => {
                GroupElement(vec![0; moduli.len()])
            }
            FiniteGroupSpec::Cayley { identity, .. } => GroupElement(vec![*identity]),
        }
    }

    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        match self {
            FiniteGroupSpec::CyclicProduct { moduli } => GroupElement(
                moduli
                    .iter()
                    .zip(a.0.iter().zip(b.0.iter()))
                    .map(|(&m, (&x, &y))| (x + y) % m)
                    .collect(),
            ),
            FiniteGroupSpec::Cayley { table, .. } => {
                GroupElement(vec![table[a.0[0] as usize][b.0[0] as usize]])
            }
        }
    }

    pub fn inv(&self, a: &GroupElement) -> GroupElement {
        match self {
            FiniteGroupSpec::CyclicProduct { moduli } => GroupElement(
                moduli
                    .iter()
                    .zip(a.0.iter())
                    .map(|(&m, &x)| (m - x) % m)
                    .collect(),
            ),
            FiniteGroupSpec::Cayley { table, identity } => {
                let n = table.len();
                let b = (0..n)
                    .find(|&b| table[a.0[0] as usize][b] == *identity)
                    .expect("validated group has inverses");
                GroupElement(vec![b as u32])
            }
        }
    }

    /// All elements in canonical order (odometer over coordinates, or table
    /// index order).
    pub fn elements(&self) -> Vec<GroupElement> {
        match self {
            FiniteGroupSpec::CyclicProduct { moduli } => {
                let mut out = Vec::with_capacity(self.order());
                let mut cur = vec![0u32; moduli.len()];
                loop {
                    out.push(GroupElement(cur.clone()));
                    let mut i = moduli.len();
                    loop {
                        if i == 0 {
                            return out;
                        }
                        i -= 1;
                        cur[i] += 1;
                        if cur[i] < moduli[i] {
                            break;
                        }
                        cur[i] = 0;
                    }
                }
            }
            FiniteGroupSpec::Cayley { table, .. } => {
                (0..table.len() as u32).map(|i| GroupElement(vec![i])).collect()
            }
        }
    }

    /// Index of an element in the canonical enumeration.
    pub fn elem_index(&self, g: &GroupElement) -> usize {
        match self {
            FiniteGroupSpec::CyclicProduct { moduli } => {
                let mut idx = 0usize;
                for (&m, &c) in moduli.iter().zip(g.0.iter()) {
                    idx = idx * m as usize + c as usize;
                }
                idx
            }
            FiniteGroupSpec::Cayley { .. } => g.0[0] as usize,
        }
    }

    /// Order of a single element.
    pub fn element_order(&self, g: &GroupElement) -> usize {
        let e = self.identity();
        let mut x = g.clone();
        let mut k = 1;
        while x != e {
            x = self.mul(&x, g);
            k += 1;
        }
        k
    }
}

// ---------------------------------------------------------------------------
// permutations

/// A permutation of {0, ..., n-1} in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v as usize >= n || seen[v as usize] {
                return Err(Error::Invalid("images are not a bijection".into()));
            }
            seen[v as usize] = true;
        }
        Ok(Permutation { images })
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// Apply `self` first, then `other`: (self.then(other))(i) = other(self(i)).
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: self
                .images
                .iter()
                .map(|&i| other.images[i as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v as usize] = i as u32;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i as u32 == v)
    }

    pub fn transposition(n: usize, i: usize) -> Permutation {
        let mut images: Vec<u32> = (0..n as u32).collect();
        images.swap(i, i + 1);
        Permutation { images }
    }

    /// The order-reversing permutation i -> n-1-i.
    pub fn reversal(n: usize) -> Permutation {
        Permutation {
            images: (0..n as u32).rev().collect(),
        }
    }

    /// All permutations of {0..n-1} in lexicographic order of one-line notation.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<u32> = (0..n as u32).collect();
        loop {
            out.push(Permutation { images: cur.clone() });
            // next lexicographic permutation
            let mut i = n.wrapping_sub(1);
            while i > 0 && cur[i - 1] >= cur[i] {
                i -= 1;
            }
            if i == 0 {
                return out;
            }
            let mut j = n - 1;
            while cur[j] <= cur[i - 1] {
                j -= 1;
            }
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
    }

    /// Inversion pairs (i, j) with i < j and images[i] > images[j].
    pub fn inversions(&self) -> Vec<(u32, u32)> {
        let n = self.images.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.images[i] > self.images[j] {
                    out.push((i as u32, j as u32));
                }
            }
        }
        out
    }
}

// ---------------------------------------------------------------------------
// semidirect products

/// Which group sits on top of G^n in a semidirect product description.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TopGroup {
    Symmetric,
    /// Accepted in descriptions for documentation, but rejected wherever a
    /// finite group is required.
    Braid,
}

/// A group usable as a group-algebra input: a plain finite group or
/// G^n x| Sigma_n (with Sigma_n permuting the factors of G^n).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupDesc {
    Semidirect {
        base: FiniteGroupSpec,
        n: usize,
        top: TopGroup,
    },
    Plain(FiniteGroupSpec),
}

/// An element (g_1, ..., g_n; sigma) of G^n x| Sigma_n.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SemidirectElement {
    pub g_vec: Vec<GroupElement>,
    pub perm: Permutation,
}

impl SemidirectElement {
    pub fn identity(base: &FiniteGroupSpec, n: usize) -> Self {
        SemidirectElement {
            g_vec: vec![base.identity(); n],
            perm: Permutation::identity(n),
        }
    }
}

/// Product in G^n x| Sigma_n:
/// (g, sigma)(h, tau) = (g . (sigma |> h), sigma tau), where the action is
/// (sigma |> h)_i = h_{sigma^{-1}(i)} and sigma tau is the composite sending j
/// to sigma(tau(j)). This is the convention under which the bijection with
/// maximum-rank labelled diagrams is multiplicative.
pub fn semidirect_multiply(
    base: &FiniteGroupSpec,
    a: &SemidirectElement,
    b: &SemidirectElement,
) -> Result<SemidirectElement> {
    let n = a.g_vec.len();
    if b.g_vec.len() != n || a.perm.n() != n || b.perm.n() != n {
        return Err(Error::SizeMismatch(format!(
            "{} vs {}",
            a.g_vec.len(),
            b.g_vec.len()
        )));
    }
    let a_inv = a.perm.inverse();
    let g_vec = (0..n)
        .map(|i| base.mul(&a.g_vec[i], &b.g_vec[a_inv.apply(i)]))
        .collect();
    let perm = b.perm.then(&a.perm);
    Ok(SemidirectElement { g_vec, perm })
}

pub fn semidirect_inverse(base: &FiniteGroupSpec, a: &SemidirectElement) -> SemidirectElement {
    // (g, sigma)^{-1} = (sigma^{-1} |> g^{-1}, sigma^{-1})
    let n = a.g_vec.len();
    let inv_perm = a.perm.inverse();
    let g_vec = (0..n)
        .map(|i| base.inv(&a.g_vec[inv_perm.inverse().apply(i)]))
        .collect();
    SemidirectElement {
        g_vec,
        perm: inv_perm,
    }
}

/// All elements of G^n x| Sigma_n in canonical order: label vectors in
/// odometer order (last coordinate fastest), then permutations lexicographic.
pub fn semidirect_elements(base: &FiniteGroupSpec, n: usize) -> Vec<SemidirectElement> {
    let gs = base.elements();
    let perms = Permutation::all(n);
    let mut out = Vec::with_capacity(gs.len().pow(n as u32) * perms.len());
    let mut idx = vec![0usize; n];
    loop {
        let g_vec: Vec<GroupElement> = idx.iter().map(|&i| gs[i].clone()).collect();
        for p in &perms {
            out.push(SemidirectElement {
                g_vec: g_vec.clone(),
                perm: p.clone(),
            });
        }
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < gs.len() {
                break;
            }
            idx[i] = 0;
        }
    }
}

impl GroupDesc {
    pub fn order(&self) -> Result<usize> {
        match self {
            GroupDesc::Plain(g) => Ok(g.order()),
            GroupDesc::Semidirect { base, n, top } => match top {
                TopGroup::Symmetric => {
                    let fact: usize = (1..=*n).product();
                    Ok(base.order().pow(*n as u32) * fact)
                }
                TopGroup::Braid => Err(Error::InfiniteGroup(
                    "braid groups are infinite".into(),
                )),
            },
        }
    }
}

// ---------------------------------------------------------------------------
// actions on the ground ring

/// An automorphism of the ground ring: only the identity and (on QuadExt) the
/// Frobenius exist for the supported rings.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AutTag {
    Identity,
    Frobenius,
}

/// A homomorphism G -> Aut(k) recording where each cyclic generator goes.
/// Groups given by Cayley tables only carry the trivial action.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GRingAction {
    ring: RingSpec,
    group: FiniteGroupSpec,
    generator_images: Vec<AutTag>,
}

impl GRingAction {
    pub fn trivial(ring: RingSpec, group: FiniteGroupSpec) -> Self {
        let k = match &group {
            FiniteGroupSpec::CyclicProduct { moduli } => moduli.len(),
            FiniteGroupSpec::Cayley { .. } => 0,
        };
        GRingAction {
            ring,
            group,
            generator_images: vec![AutTag::Identity; k],
        }
    }

    /// Action of a cyclic product on the ring, one automorphism per generator.
    pub fn new(
        ring: RingSpec,
        group: FiniteGroupSpec,
        generator_images: Vec<AutTag>,
    ) -> Result<Self> {
        let moduli = match &group {
            FiniteGroupSpec::CyclicProduct { moduli } => moduli.clone(),
            FiniteGroupSpec::Cayley { .. } => {
                if generator_images.iter().all(|t| *t == AutTag::Identity) {
                    return Ok(Self::trivial(ring, group));
                }
                return Err(Error::Invalid(
                    "nontrivial ring actions require a cyclic product group".into(),
                ));
            }
        };
        if generator_images.len() != moduli.len() {
            return Err(Error::Invalid("one automorphism per generator required".into()));
        }
        for (&m, tag) in moduli.iter().zip(&generator_images) {
            if *tag == AutTag::Frobenius {
                let aut_order = match ring {
                    RingSpec::QuadExt { .. } => 2u32,
                    _ => 1,
                };
                if m % aut_order != 0 {
                    return Err(Error::Invalid(format!(
                        "generator of order {m} cannot map to an automorphism of order {aut_order}"
                    )));
                }
            }
        }
        Ok(GRingAction {
            ring,
            group,
            generator_images,
        })
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn group(&self) -> &FiniteGroupSpec {
        &self.group
    }

    pub fn is_trivial(&self) -> bool {
        self.generator_images.iter().all(|t| *t == AutTag::Identity)
            || !matches!(self.ring, RingSpec::QuadExt { .. })
    }

    /// Apply the automorphism rho(g) to a scalar.
    pub fn apply(&self, g: &GroupElement, lambda: &Scalar) -> Result<Scalar> {
        if lambda.ring() != self.ring {
            return Err(Error::RingMismatch(self.ring.name(), lambda.ring().name()));
        }
        let mut frob_count = 0u64;
        for (tag, &c) in self.generator_images.iter().zip(g.0.iter()) {
            if *tag == AutTag::Frobenius {
                frob_count += c as u64;
            }
        }
        if frob_count % 2 == 1 {
            Ok(lambda.frobenius())
        } else {
            Ok(lambda.clone())
        }
    }
}
