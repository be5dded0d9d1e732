//! Diagrams for the non-braided flavors: partial matchings on two columns of n
//! nodes with optional group labels, flavor validation, basis enumeration, the
//! concatenation product with its loop and contractible-component prefactors,
//! and the extension of an n-diagram to an (n+1)-diagram.
//!
//! Nodes are encoded 0..n-1 for the left column (top to bottom) and n..2n-1
//! for the right column; edges are stored as sorted pairs in sorted order.

use crate::error::{Error, Result};
use crate::group::{FiniteGroupSpec, GRingAction, GroupElement};
use crate::scalar::Scalar;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

pub type Node = u16;

/// A partial matching on the 2n nodes of a two-column diagram.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Diagram {
    pub n: usize,
    /// Sorted list of sorted pairs; every node appears in at most one edge.
    pub edges: Vec<(Node, Node)>,
}

impl Diagram {
    pub fn new(n: usize, mut edges: Vec<(Node, Node)>) -> Result<Self> {
        let mut seen = vec![false; 2 * n];
        for e in edges.iter_mut() {
            if e.0 > e.1 {
                std::mem::swap(&mut e.0, &mut e.1);
            }
            if e.0 == e.1 || e.1 as usize >= 2 * n {
                return Err(Error::Invalid(format!("bad edge ({}, {})", e.0, e.1)));
            }
            for v in [e.0, e.1] {
                if seen[v as usize] {
                    return Err(Error::Invalid(format!("node {v} has degree > 1")));
                }
                seen[v as usize] = true;
            }
        }
        edges.sort();
        Ok(Diagram { n, edges })
    }

    pub fn identity(n: usize) -> Self {
        Diagram {
            n,
            edges: (0..n).map(|i| (i as Node, (i + n) as Node)).collect(),
        }
    }

    pub fn is_left(&self, v: Node) -> bool {
        (v as usize) < self.n
    }

    /// Number of left-to-right edges.
    pub fn rank(&self) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| self.is_left(a) && !self.is_left(b))
            .count()
    }

    pub fn partner(&self, v: Node) -> Option<Node> {
        for &(a, b) in &self.edges {
            if a == v {
                return Some(b);
            }
            if b == v {
                return Some(a);
            }
        }
        None
    }

    fn has_ll_or_rr(&self) -> bool {
        self.edges
            .iter()
            .any(|&(a, b)| self.is_left(a) == self.is_left(b))
    }

    fn has_unmatched(&self) -> bool {
        self.edges.len() * 2 < 2 * self.n
    }

    /// Position of a node in the boundary cyclic order L1..Ln, Rn..R1.
    fn boundary_pos(&self, v: Node) -> usize {
        if self.is_left(v) {
            v as usize
        } else {
            2 * self.n - 1 - (v as usize - self.n)
        }
    }

    pub fn is_planar(&self) -> bool {
        let chords: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|&(a, b)| {
                let (pa, pb) = (self.boundary_pos(a), self.boundary_pos(b));
                (pa.min(pb), pa.max(pb))
            })
            .collect();
        for (i, &(a, b)) in chords.iter().enumerate() {
            for &(c, d) in &chords[i + 1..] {
                let c_in = a < c && c < b;
                let d_in = a < d && d < b;
                if c_in != d_in {
                    return false;
                }
            }
        }
        true
    }
}

/// The diagram families, cut out of rook-Brauer diagrams by structural
/// predicates.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Flavor {
    RookBrauer,
    Rook,
    Brauer,
    Motzkin,
    TemperleyLieb,
}

impl Flavor {
    pub const ALL: [Flavor; 5] = [
        Flavor::RookBrauer,
        Flavor::Rook,
        Flavor::Brauer,
        Flavor::Motzkin,
        Flavor::TemperleyLieb,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Flavor::RookBrauer => "rook_brauer",
            Flavor::Rook => "rook",
            Flavor::Brauer => "brauer",
            Flavor::Motzkin => "motzkin",
            Flavor::TemperleyLieb => "temperley_lieb",
        }
    }

    pub fn allows_same_side_edges(&self) -> bool {
        !matches!(self, Flavor::Rook)
    }

    pub fn allows_unmatched(&self) -> bool {
        !matches!(self, Flavor::Brauer | Flavor::TemperleyLieb)
    }

    pub fn requires_planar(&self) -> bool {
        matches!(self, Flavor::Motzkin | Flavor::TemperleyLieb)
    }

    /// Loops can form under composition exactly when same-side edges exist,
    /// which is what forces the group to be abelian.
    pub fn requires_abelian(&self) -> bool {
        self.allows_same_side_edges()
    }
}

/// Check a diagram against a flavor's structural predicates.
pub fn validate_flavor(d: &Diagram, f: Flavor) -> bool {
    if !f.allows_same_side_edges() && d.has_ll_or_rr() {
        return false;
    }
    if !f.allows_unmatched() && d.has_unmatched() {
        return false;
    }
    if f.requires_planar() && !d.is_planar() {
        return false;
    }
    true
}

/// A diagram with one group label per edge, stored parallel to `edges`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct LabeledDiagram {
    pub n: usize,
    pub edges: Vec<(Node, Node)>,
    pub labels: Vec<GroupElement>,
}

impl LabeledDiagram {
    pub fn new(diagram: Diagram, labels: Vec<GroupElement>) -> Result<Self> {
        if labels.len() != diagram.edges.len() {
            return Err(Error::Invalid("one label per edge required".into()));
        }
        Ok(LabeledDiagram {
            n: diagram.n,
            edges: diagram.edges,
            labels,
        })
    }

    /// Attach identity labels everywhere.
    pub fn unlabelled(diagram: Diagram, group: &FiniteGroupSpec) -> Self {
        let labels = vec![group.identity(); diagram.edges.len()];
        LabeledDiagram {
            n: diagram.n,
            edges: diagram.edges,
            labels,
        }
    }

    pub fn identity(n: usize, group: &FiniteGroupSpec) -> Self {
        Self::unlabelled(Diagram::identity(n), group)
    }

    /// The identity diagram with its i-th edge deleted (1-based i).
    pub fn rho(n: usize, i: usize, group: &FiniteGroupSpec) -> Self {
        let edges = (0..n)
            .filter(|&j| j + 1 != i)
            .map(|j| (j as Node, (j + n) as Node))
            .collect();
        Self::unlabelled(Diagram { n, edges }, group)
    }

    pub fn shape(&self) -> Diagram {
        Diagram {
            n: self.n,
            edges: self.edges.clone(),
        }
    }

    pub fn rank(&self) -> usize {
        self.shape().rank()
    }

    pub fn label_of(&self, edge: (Node, Node)) -> Option<&GroupElement> {
        self.edges
            .iter()
            .position(|&e| e == edge)
            .map(|i| &self.labels[i])
    }

    fn is_left(&self, v: Node) -> bool {
        (v as usize) < self.n
    }

    fn partner(&self, v: Node) -> Option<Node> {
        self.shape().partner(v)
    }
}

/// The scalar data entering composition: the loop parameter, the contractible
/// component parameter, and the action of labels on the ground ring.
#[derive(Clone, PartialEq, Debug)]
pub struct Params {
    pub delta: Scalar,
    pub epsilon: Scalar,
    pub action: GRingAction,
}

impl Params {
    pub fn new(delta: Scalar, epsilon: Scalar, action: GRingAction) -> Result<Self> {
        if delta.ring() != action.ring() || epsilon.ring() != action.ring() {
            return Err(Error::RingMismatch(
                delta.ring().name(),
                action.ring().name(),
            ));
        }
        Ok(Params {
            delta,
            epsilon,
            action,
        })
    }
}

/// Per-call tallies of the component classes met during composition; the four
/// classes must account for every component.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ComposeTally {
    pub through: usize,
    pub loops: usize,
    pub middle_paths: usize,
    pub dead_ends: usize,
}

/// Concatenation product of two labelled diagrams.
///
/// The middle graph on identified nodes splits into paths and cycles; each
/// component is classified exactly once:
/// - a path with two outer endpoints becomes an output edge whose label is the
///   ordered product of its constituent labels;
/// - a cycle (necessarily wholly in the middle) contributes the factor
///   rho(product of its labels)(delta);
/// - a wholly-middle path, including an isolated middle vertex, contributes a
///   factor epsilon and its labels are discarded;
/// - a path with one outer endpoint leaves that endpoint unmatched, with no
///   scalar contribution.
pub fn compose(
    x: &LabeledDiagram,
    y: &LabeledDiagram,
    flavor: Flavor,
    group: &FiniteGroupSpec,
    params: &Params,
) -> Result<(Scalar, LabeledDiagram)> {
    let n = x.n;
    if y.n != n {
        return Err(Error::SizeMismatch(format!("{} vs {}", x.n, y.n)));
    }
    if flavor.requires_abelian() && !group.is_abelian() {
        return Err(Error::NonAbelianGroup);
    }
    for d in [x, y] {
        if !validate_flavor(&d.shape(), flavor) {
            return Err(Error::FlavorViolation(flavor.name().into()));
        }
    }
    let (scalar, out, _tally) = compose_raw(x, y, group, params)?;
    Ok((scalar, out))
}

pub(crate) fn compose_raw(
    x: &LabeledDiagram,
    y: &LabeledDiagram,
    group: &FiniteGroupSpec,
    params: &Params,
) -> Result<(Scalar, LabeledDiagram, ComposeTally)> {
    let n = x.n;
    // combined graph nodes: 0..n left outer, n..2n middle, 2n..3n right outer
    let total = 3 * n;
    let mut adj: Vec<Vec<(usize, u8, usize)>> = vec![Vec::new(); total];
    for (idx, &(a, b)) in x.edges.iter().enumerate() {
        let (ga, gb) = (a as usize, b as usize);
        adj[ga].push((gb, 0, idx));
        adj[gb].push((ga, 0, idx));
    }
    for (idx, &(a, b)) in y.edges.iter().enumerate() {
        let ga = a as usize + n;
        let gb = b as usize + n;
        adj[ga].push((gb, 1, idx));
        adj[gb].push((ga, 1, idx));
    }
    let is_outer = |v: usize| v < n || v >= 2 * n;
    let label_of = |side: u8, idx: usize| -> &GroupElement {
        if side == 0 {
            &x.labels[idx]
        } else {
            &y.labels[idx]
        }
    };

    let mut edge_used = [vec![false; x.edges.len()], vec![false; y.edges.len()]];
    let mut node_seen = vec![false; total];
    let mut scalar = Scalar::one(params.delta.ring());
    let mut out_edges: Vec<((Node, Node), GroupElement)> = Vec::new();
    let mut tally = ComposeTally::default();
    let mut components = 0usize;

    // walk the path starting at an endpoint (degree <= 1), returning the far
    // end and the ordered label product; marks nodes/edges when `mark`
    fn walk(
        adj: &[Vec<(usize, u8, usize)>],
        start: usize,
        group: &FiniteGroupSpec,
        labels: &dyn Fn(u8, usize) -> GroupElement,
        node_seen: &mut [bool],
        edge_used: &mut [Vec<bool>; 2],
    ) -> (usize, GroupElement) {
        let mut cur = start;
        node_seen[cur] = true;
        let mut label = group.identity();
        loop {
            let next = adj[cur]
                .iter()
                .find(|&&(_, side, idx)| !edge_used[side as usize][idx])
                .copied();
            match next {
                None => return (cur, label),
                Some((nb, side, idx)) => {
                    edge_used[side as usize][idx] = true;
                    label = group.mul(&label, &labels(side, idx));
                    node_seen[nb] = true;
                    cur = nb;
                }
            }
        }
    }
    let label_fn = |side: u8, idx: usize| label_of(side, idx).clone();

    // paths first: endpoints have degree <= 1 (isolated nodes included)
    for v in 0..total {
        if node_seen[v] || adj[v].len() > 1 {
            continue;
        }
        components += 1;
        // find the far end without committing, to orient the left-to-right
        // reading direction of the label product
        let other = {
            let mut probe_used = [vec![false; x.edges.len()], vec![false; y.edges.len()]];
            probe_used[0].copy_from_slice(&edge_used[0]);
            probe_used[1].copy_from_slice(&edge_used[1]);
            let mut probe_seen = vec![false; total];
            walk(&adj, v, group, &label_fn, &mut probe_seen, &mut probe_used).0
        };
        let start = if v < n {
            v
        } else if other < n {
            other
        } else {
            v.min(other)
        };
        let (end, label) = walk(&adj, start, group, &label_fn, &mut node_seen, &mut edge_used);
        // an isolated node is a component with a single endpoint
        let outer_count = if start == end {
            is_outer(start) as usize
        } else {
            is_outer(start) as usize + is_outer(end) as usize
        };
        match outer_count {
            2 => {
                tally.through += 1;
                let trans = |v: usize| -> Node {
                    if v < n {
                        v as Node
                    } else {
                        (v - n) as Node
                    }
                };
                out_edges.push(((trans(start), trans(end)), label));
            }
            1 => {
                tally.dead_ends += 1;
            }
            0 => {
                tally.middle_paths += 1;
                scalar = scalar.mul(&params.epsilon)?;
            }
            _ => unreachable!(),
        }
    }

    // remaining components are cycles wholly in the middle
    for v in n..2 * n {
        if node_seen[v] {
            continue;
        }
        components += 1;
        tally.loops += 1;
        node_seen[v] = true;
        let mut label = group.identity();
        let mut cur = v;
        loop {
            let next = adj[cur]
                .iter()
                .find(|&&(_, side, idx)| !edge_used[side as usize][idx])
                .copied();
            match next {
                None => break,
                Some((nb, side, idx)) => {
                    edge_used[side as usize][idx] = true;
                    label = group.mul(&label, label_of(side, idx));
                    node_seen[nb] = true;
                    cur = nb;
                }
            }
        }
        debug_assert_eq!(cur, v, "cycle closes at its starting node");
        scalar = scalar.mul(&params.action.apply(&label, &params.delta)?)?;
    }

    assert_eq!(
        components,
        tally.through + tally.loops + tally.middle_paths + tally.dead_ends,
        "every component classified exactly once"
    );

    out_edges.sort_by_key(|&((a, b), _)| (a.min(b), a.max(b)));
    let mut edges = Vec::with_capacity(out_edges.len());
    let mut labels = Vec::with_capacity(out_edges.len());
    for ((a, b), l) in out_edges {
        edges.push((a.min(b), a.max(b)));
        labels.push(l);
    }
    let out = LabeledDiagram { n, edges, labels };
    Ok((scalar, out, tally))
}

/// Extend an n-diagram to an (n+1)-diagram by appending a horizontal edge,
/// labelled by the identity, between new bottom vertices.
pub fn extend(x: &LabeledDiagram, group: &FiniteGroupSpec) -> LabeledDiagram {
    let n = x.n;
    let shift = |v: Node| -> Node {
        if (v as usize) < n {
            v
        } else {
            v + 1
        }
    };
    let mut pairs: Vec<((Node, Node), GroupElement)> = x
        .edges
        .iter()
        .zip(&x.labels)
        .map(|(&(a, b), l)| ((shift(a), shift(b)), l.clone()))
        .collect();
    pairs.push(((n as Node, (2 * n + 1) as Node), group.identity()));
    pairs.sort_by_key(|&(e, _)| e);
    let (edges, labels) = pairs.into_iter().unzip();
    LabeledDiagram {
        n: n + 1,
        edges,
        labels,
    }
}

/// Enumerate all flavor-valid diagrams at size n with labels from the group,
/// in a deterministic canonical order.
pub fn enumerate_diagrams(
    n: usize,
    flavor: Flavor,
    group: &FiniteGroupSpec,
    cap: usize,
) -> Result<Vec<LabeledDiagram>> {
    let matchings = enumerate_matchings(n, flavor);
    let g_order = group.order();
    let mut count = 0usize;
    for m in &matchings {
        let labelings = g_order.checked_pow(m.edges.len() as u32);
        count = labelings
            .and_then(|l| count.checked_add(l))
            .ok_or_else(|| Error::SizeCapExceeded("labelled diagram count overflow".into()))?;
        if count > cap {
            return Err(Error::SizeCapExceeded(format!(
                "more than {cap} diagrams at n={n}"
            )));
        }
    }
    let elems = group.elements();
    let mut out = Vec::with_capacity(count);
    for m in matchings {
        let k = m.edges.len();
        let mut idx = vec![0usize; k];
        loop {
            let labels: Vec<GroupElement> = idx.iter().map(|&i| elems[i].clone()).collect();
            out.push(LabeledDiagram {
                n,
                edges: m.edges.clone(),
                labels,
            });
            let mut i = k;
            let mut done = true;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                idx[i] += 1;
                if idx[i] < elems.len() {
                    done = false;
                    break;
                }
                idx[i] = 0;
            }
            if done {
                break;
            }
        }
    }
    out.sort();
    Ok(out)
}

/// All partial matchings on 2n nodes satisfying the flavor predicates, sorted
/// by their edge lists.
pub fn enumerate_matchings(n: usize, flavor: Flavor) -> Vec<Diagram> {
    let mut out = Vec::new();
    let mut partial: Vec<(Node, Node)> = Vec::new();
    let mut matched = vec![false; 2 * n];
    rec_matchings(n, flavor, 0, &mut partial, &mut matched, &mut out);
    out.sort();
    out
}

fn rec_matchings(
    n: usize,
    flavor: Flavor,
    from: usize,
    partial: &mut Vec<(Node, Node)>,
    matched: &mut [bool],
    out: &mut Vec<Diagram>,
) {
    let u = (from..2 * n).find(|&v| !matched[v]);
    let Some(u) = u else {
        let d = Diagram {
            n,
            edges: partial.clone(),
        };
        if !flavor.requires_planar() || d.is_planar() {
            out.push(d);
        }
        return;
    };
    // leave u unmatched
    if flavor.allows_unmatched() {
        matched[u] = true;
        rec_matchings(n, flavor, u + 1, partial, matched, out);
        matched[u] = false;
    }
    // match u with a later node
    for v in u + 1..2 * n {
        if matched[v] {
            continue;
        }
        let same_side = (u < n) == (v < n);
        if same_side && !flavor.allows_same_side_edges() {
            continue;
        }
        matched[u] = true;
        matched[v] = true;
        partial.push((u as Node, v as Node));
        rec_matchings(n, flavor, u + 1, partial, matched, out);
        partial.pop();
        matched[u] = false;
        matched[v] = false;
    }
}

// ---------------------------------------------------------------------------
// JSON interchange and rendering

#[derive(Serialize, Deserialize)]
struct EdgeDto {
    a: String,
    b: String,
    label: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct DiagramDto {
    n: usize,
    edges: Vec<EdgeDto>,
}

fn node_name(n: usize, v: Node) -> String {
    if (v as usize) < n {
        format!("L{}", v + 1)
    } else {
        format!("R{}", v as usize - n + 1)
    }
}

fn parse_node(n: usize, s: &str) -> Result<Node> {
    let bad = || Error::Invalid(format!("bad node name {s:?}"));
    if s.len() < 2 {
        return Err(bad());
    }
    let (col, idx) = s.split_at(1);
    let i: usize = idx.parse().map_err(|_| bad())?;
    if i == 0 || i > n {
        return Err(bad());
    }
    match col {
        "L" => Ok((i - 1) as Node),
        "R" => Ok((n + i - 1) as Node),
        _ => Err(bad()),
    }
}

impl Serialize for LabeledDiagram {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        DiagramDto {
            n: self.n,
            edges: self
                .edges
                .iter()
                .zip(&self.labels)
                .map(|(&(a, b), l)| EdgeDto {
                    a: node_name(self.n, a),
                    b: node_name(self.n, b),
                    label: l.0.clone(),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LabeledDiagram {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let dto = DiagramDto::deserialize(deserializer)?;
        let mut pairs = Vec::with_capacity(dto.edges.len());
        for e in &dto.edges {
            let a = parse_node(dto.n, &e.a).map_err(serde::de::Error::custom)?;
            let b = parse_node(dto.n, &e.b).map_err(serde::de::Error::custom)?;
            pairs.push(((a.min(b), a.max(b)), GroupElement(e.label.clone())));
        }
        pairs.sort_by_key(|&(e, _)| e);
        let (edges, labels): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
        let d = Diagram::new(dto.n, edges).map_err(serde::de::Error::custom)?;
        LabeledDiagram::new(d, labels).map_err(serde::de::Error::custom)
    }
}

/// Two-column ASCII rendering with an edge/label legend.
pub fn render(d: &LabeledDiagram) -> String {
    let n = d.n;
    let mut s = String::new();
    for i in 0..n {
        let li = i as Node;
        let ri = (i + n) as Node;
        let lmark = match d.partner(li) {
            None => ' ',
            Some(p) if d.is_left(p) => '(',
            Some(_) => '-',
        };
        let rmark = match d.partner(ri) {
            None => ' ',
            Some(p) if !d.is_left(p) => ')',
            Some(_) => '-',
        };
        let _ = writeln!(s, "L{} o{}    {}o R{}", i + 1, lmark, rmark, i + 1);
    }
    let legend: Vec<String> = d
        .edges
        .iter()
        .zip(&d.labels)
        .map(|(&(a, b), l)| {
            format!(
                "{}-{} [{}]",
                node_name(n, a),
                node_name(n, b),
                l.0.iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            )
        })
        .collect();
    if legend.is_empty() {
        let _ = writeln!(s, "(empty diagram)");
    } else {
        let _ = writeln!(s, "{}", legend.join("  "));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::RingSpec;

    fn trivial() -> FiniteGroupSpec {
        FiniteGroupSpec::trivial()
    }

    fn c2() -> FiniteGroupSpec {
        FiniteGroupSpec::cyclic(2).unwrap()
    }

    fn params_q(delta: i64, eps: i64, group: &FiniteGroupSpec) -> Params {
        let ring = RingSpec::Rationals;
        Params::new(
            Scalar::from_int(ring, delta),
            Scalar::from_int(ring, eps),
            GRingAction::trivial(ring, group.clone()),
        )
        .unwrap()
    }

    #[test]
    fn validate_examples() {
        let id = Diagram::identity(2);
        for f in Flavor::ALL {
            assert!(validate_flavor(&id, f), "identity valid for {f:?}");
        }
        // crossing through-strands
        let cross = Diagram::new(2, vec![(0, 3), (1, 2)]).unwrap();
        assert!(!validate_flavor(&cross, Flavor::TemperleyLieb));
        assert!(validate_flavor(&cross, Flavor::Brauer));
        // cup-cap
        let e = Diagram::new(2, vec![(0, 1), (2, 3)]).unwrap();
        assert!(validate_flavor(&e, Flavor::TemperleyLieb));
        assert!(!validate_flavor(&e, Flavor::Rook));
    }

    #[test]
    fn nested_arcs_are_planar() {
        let d = Diagram::new(4, vec![(0, 3), (1, 2), (4, 7), (5, 6)]).unwrap();
        assert!(d.is_planar());
        let crossing = Diagram::new(4, vec![(0, 2), (1, 3), (4, 6), (5, 7)]).unwrap();
        assert!(!crossing.is_planar());
    }

    #[test]
    fn enumerate_counts() {
        let t = trivial();
        assert_eq!(enumerate_diagrams(1, Flavor::Motzkin, &t, 1 << 20).unwrap().len(), 2);
        assert_eq!(enumerate_diagrams(2, Flavor::Rook, &t, 1 << 20).unwrap().len(), 7);
        assert_eq!(enumerate_diagrams(2, Flavor::Brauer, &c2(), 1 << 20).unwrap().len(), 12);
        assert_eq!(
            enumerate_diagrams(3, Flavor::TemperleyLieb, &t, 1 << 20).unwrap().len(),
            5
        );
    }

    #[test]
    fn enumerate_respects_cap() {
        assert!(matches!(
            enumerate_diagrams(3, Flavor::Brauer, &c2(), 10),
            Err(Error::SizeCapExceeded(_))
        ));
    }

    #[test]
    fn compose_rho_squares_to_epsilon_rho() {
        let t = trivial();
        let rho = LabeledDiagram::rho(2, 1, &t);
        let p = params_q(7, 5, &t);
        let (s, d) = compose(&rho, &rho, Flavor::Rook, &t, &p).unwrap();
        assert_eq!(s, Scalar::from_int(RingSpec::Rationals, 5));
        assert_eq!(d, rho);
    }

    #[test]
    fn compose_identity_neutral() {
        let g = c2();
        let p = params_q(2, 3, &g);
        let id = LabeledDiagram::identity(2, &g);
        for x in enumerate_diagrams(2, Flavor::RookBrauer, &g, 1 << 20).unwrap() {
            let (s, d) = compose(&id, &x, Flavor::RookBrauer, &g, &p).unwrap();
            assert!(s.is_one());
            assert_eq!(d, x);
            let (s, d) = compose(&x, &id, Flavor::RookBrauer, &g, &p).unwrap();
            assert!(s.is_one());
            assert_eq!(d, x);
        }
    }

    #[test]
    fn compose_tl_cupcap_makes_loop() {
        let t = trivial();
        let p = params_q(7, 1, &t);
        let e = LabeledDiagram::unlabelled(Diagram::new(2, vec![(0, 1), (2, 3)]).unwrap(), &t);
        let (s, d) = compose(&e, &e, Flavor::TemperleyLieb, &t, &p).unwrap();
        assert_eq!(s, Scalar::from_int(RingSpec::Rationals, 7));
        assert_eq!(d, e);
    }

    #[test]
    fn compose_labelled_loop_uses_label_product() {
        // x = {LL(1,2) label 1, RR(1,2) label a} over C_2, trivial action:
        // x . x forms one loop whose labels multiply to a, factor is delta
        let g = c2();
        let p = params_q(7, 1, &g);
        let d = Diagram::new(2, vec![(0, 1), (2, 3)]).unwrap();
        let x = LabeledDiagram::new(d, vec![GroupElement(vec![0]), GroupElement(vec![1])]).unwrap();
        let (s, out) = compose(&x, &x, Flavor::Brauer, &g, &p).unwrap();
        assert_eq!(s, Scalar::from_int(RingSpec::Rationals, 7));
        assert_eq!(out, x);
    }

    #[test]
    fn compose_chains_labels_left_to_right() {
        // one-strand diagrams labelled g and h compose to a strand labelled gh
        let g = FiniteGroupSpec::cyclic(4).unwrap();
        let p = params_q(1, 1, &g);
        let mk = |c: u32| {
            LabeledDiagram::new(Diagram::identity(1), vec![GroupElement(vec![c])]).unwrap()
        };
        let (s, d) = compose(&mk(1), &mk(2), Flavor::Rook, &g, &p).unwrap();
        assert!(s.is_one());
        assert_eq!(d, mk(3));
    }

    #[test]
    fn compose_dead_strand_no_scalar() {
        // a through edge dying against a missing partner contributes nothing
        let t = trivial();
        let p = params_q(7, 5, &t);
        let x = LabeledDiagram::identity(1, &t);
        let empty = LabeledDiagram::unlabelled(Diagram::new(1, vec![]).unwrap(), &t);
        let (s, d) = compose(&x, &empty, Flavor::Rook, &t, &p).unwrap();
        assert!(s.is_one());
        assert_eq!(d, empty);
        // empty . empty: the middle vertex is isolated, giving one epsilon
        let (s, d) = compose(&empty, &empty, Flavor::Rook, &t, &p).unwrap();
        assert_eq!(s, Scalar::from_int(RingSpec::Rationals, 5));
        assert_eq!(d, empty);
    }

    #[test]
    fn compose_rejects_mismatches() {
        let t = trivial();
        let p = params_q(1, 1, &t);
        let a = LabeledDiagram::identity(1, &t);
        let b = LabeledDiagram::identity(2, &t);
        assert!(matches!(
            compose(&a, &b, Flavor::Rook, &t, &p),
            Err(Error::SizeMismatch(_))
        ));
        // non-rook flavors require abelian groups
        let perms = crate::group::Permutation::all(3);
        let table: Vec<Vec<u32>> = perms
            .iter()
            .map(|x| {
                perms
                    .iter()
                    .map(|y| {
                        let prod = y.then(x);
                        perms.iter().position(|p| *p == prod).unwrap() as u32
                    })
                    .collect()
            })
            .collect();
        let s3 = FiniteGroupSpec::cayley(table, 0).unwrap();
        let pa = params_q(1, 1, &s3);
        let ida = LabeledDiagram::identity(2, &s3);
        assert!(matches!(
            compose(&ida, &ida, Flavor::Brauer, &s3, &pa),
            Err(Error::NonAbelianGroup)
        ));
        // rook flavor accepts any group
        assert!(compose(&ida, &ida, Flavor::Rook, &s3, &pa).is_ok());
    }

    #[test]
    fn extend_properties() {
        let g = c2();
        let id = LabeledDiagram::identity(2, &g);
        assert_eq!(extend(&id, &g), LabeledDiagram::identity(3, &g));
        for x in enumerate_diagrams(2, Flavor::Motzkin, &g, 1 << 20).unwrap() {
            let ext = extend(&x, &g);
            assert!(validate_flavor(&ext.shape(), Flavor::Motzkin));
            assert_eq!(ext.rank(), x.rank() + 1);
        }
    }

    #[test]
    fn rank_examples() {
        let t = trivial();
        assert_eq!(LabeledDiagram::identity(3, &t).rank(), 3);
        assert_eq!(LabeledDiagram::rho(2, 1, &t).rank(), 1);
        let e = Diagram::new(2, vec![(0, 1), (2, 3)]).unwrap();
        assert_eq!(e.rank(), 0);
    }

    #[test]
    fn diagram_json_roundtrip() {
        let g = c2();
        for d in enumerate_diagrams(2, Flavor::RookBrauer, &g, 1 << 20).unwrap() {
            let s = serde_json::to_string(&d).unwrap();
            let back: LabeledDiagram = serde_json::from_str(&s).unwrap();
            assert_eq!(d, back);
        }
    }

    #[test]
    fn render_smoke() {
        let g = c2();
        let d = LabeledDiagram::identity(2, &g);
        let s = render(&d);
        assert!(s.contains("L1"));
        assert!(s.contains("R2"));
    }
}
