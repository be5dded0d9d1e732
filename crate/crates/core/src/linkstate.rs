//! Link states: the half-diagrams obtained by slicing a labelled diagram
//! vertically down the middle. A node is missing, carries a labelled hanging
//! edge (a defect), or is paired with another node of the same column. Link
//! states index the left ideals spanned by diagrams whose right link state is
//! reachable by splices, deletions, and label replacements.

use crate::diagram::{Flavor, LabeledDiagram, Node};
use crate::error::{Error, Result};
use crate::group::{FiniteGroupSpec, GroupElement};

#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum NodeStatus {
    Missing,
    Defect(GroupElement),
    Paired { partner: usize, label: GroupElement },
}

/// One column of n nodes with per-node status; pairings are symmetric and the
/// shared label is stored on both ends.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct LinkState {
    pub n: usize,
    pub nodes: Vec<NodeStatus>,
}

/// The defect-set rewrites generating reachability between link states.
#[derive(Clone, Debug)]
pub enum LinkMove {
    /// Connect two defects with a labelled edge.
    GSplice { a: usize, b: usize, label: GroupElement },
    /// Delete a defect, leaving the node missing.
    Deletion { a: usize },
    /// Multiply a defect label on the right by a group element.
    LabelReplace { a: usize, g: GroupElement },
}

impl LinkState {
    pub fn new(n: usize, nodes: Vec<NodeStatus>) -> Result<Self> {
        if nodes.len() != n {
            return Err(Error::Invalid("one status per node required".into()));
        }
        for (v, st) in nodes.iter().enumerate() {
            if let NodeStatus::Paired { partner, label } = st {
                if *partner >= n || *partner == v {
                    return Err(Error::Invalid(format!("bad partner at node {v}")));
                }
                match &nodes[*partner] {
                    NodeStatus::Paired { partner: w, label: l } if *w == v && l == label => {}
                    _ => {
                        return Err(Error::Invalid(format!(
                            "pairing at node {v} is not symmetric"
                        )))
                    }
                }
            }
        }
        Ok(LinkState { n, nodes })
    }

    pub fn defect_count(&self) -> usize {
        self.nodes
            .iter()
            .filter(|s| matches!(s, NodeStatus::Defect(_)))
            .count()
    }

    pub fn has_missing(&self) -> bool {
        self.nodes.iter().any(|s| matches!(s, NodeStatus::Missing))
    }

    /// Node pairs (a < b) with their labels.
    pub fn pairs(&self) -> Vec<(usize, usize, GroupElement)> {
        let mut out = Vec::new();
        for (v, st) in self.nodes.iter().enumerate() {
            if let NodeStatus::Paired { partner, label } = st {
                if v < *partner {
                    out.push((v, *partner, label.clone()));
                }
            }
        }
        out
    }

    pub fn defects(&self) -> Vec<usize> {
        self.nodes
            .iter()
            .enumerate()
            .filter_map(|(v, s)| matches!(s, NodeStatus::Defect(_)).then_some(v))
            .collect()
    }

    /// The label-free shape, for comparisons of underlying unlabelled states.
    pub fn shape(&self) -> Vec<ShapeStatus> {
        self.nodes
            .iter()
            .map(|s| match s {
                NodeStatus::Missing => ShapeStatus::Missing,
                NodeStatus::Defect(_) => ShapeStatus::Defect,
                NodeStatus::Paired { partner, .. } => ShapeStatus::Paired(*partner),
            })
            .collect()
    }

    /// Planarity of the half-diagram: pairs must not interleave and no defect
    /// may sit strictly under a pair arc (its hanging edge could not escape).
    pub fn is_planar(&self) -> bool {
        let pairs = self.pairs();
        for (i, &(a, b, _)) in pairs.iter().enumerate() {
            for &(c, d, _) in &pairs[i + 1..] {
                let c_in = a < c && c < b;
                let d_in = a < d && d < b;
                if c_in != d_in {
                    return false;
                }
            }
            for &j in &self.defects() {
                if a < j && j < b {
                    return false;
                }
            }
        }
        true
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum ShapeStatus {
    Missing,
    Defect,
    Paired(usize),
}

/// The right link state: right-to-right edges stay as pairs, sliced
/// left-to-right edges leave defects inheriting the label, untouched nodes are
/// missing.
pub fn right_link_state(x: &LabeledDiagram) -> LinkState {
    let n = x.n;
    let mut nodes = vec![NodeStatus::Missing; n];
    for (&(a, b), l) in x.edges.iter().zip(&x.labels) {
        let (a, b) = (a as usize, b as usize);
        match (a < n, b < n) {
            (false, false) => {
                nodes[a - n] = NodeStatus::Paired {
                    partner: b - n,
                    label: l.clone(),
                };
                nodes[b - n] = NodeStatus::Paired {
                    partner: a - n,
                    label: l.clone(),
                };
            }
            (true, false) => {
                nodes[b - n] = NodeStatus::Defect(l.clone());
            }
            _ => {}
        }
    }
    LinkState { n, nodes }
}

/// The left link state, mirror to [`right_link_state`].
pub fn left_link_state(x: &LabeledDiagram) -> LinkState {
    let n = x.n;
    let mut nodes = vec![NodeStatus::Missing; n];
    for (&(a, b), l) in x.edges.iter().zip(&x.labels) {
        let (a, b) = (a as usize, b as usize);
        match (a < n, b < n) {
            (true, true) => {
                nodes[a] = NodeStatus::Paired {
                    partner: b,
                    label: l.clone(),
                };
                nodes[b] = NodeStatus::Paired {
                    partner: a,
                    label: l.clone(),
                };
            }
            (true, false) => {
                nodes[a] = NodeStatus::Defect(l.clone());
            }
            _ => {}
        }
    }
    LinkState { n, nodes }
}

/// Apply one rewrite; the targets must currently be defects.
pub fn apply_link_move(s: &LinkState, mv: &LinkMove, group: &FiniteGroupSpec) -> Result<LinkState> {
    let mut nodes = s.nodes.clone();
    let expect_defect = |nodes: &[NodeStatus], a: usize| -> Result<GroupElement> {
        match nodes.get(a) {
            Some(NodeStatus::Defect(l)) => Ok(l.clone()),
            _ => Err(Error::NotADefect(a)),
        }
    };
    match mv {
        LinkMove::GSplice { a, b, label } => {
            if a == b {
                return Err(Error::Invalid("cannot splice a defect to itself".into()));
            }
            expect_defect(&nodes, *a)?;
            expect_defect(&nodes, *b)?;
            nodes[*a] = NodeStatus::Paired {
                partner: *b,
                label: label.clone(),
            };
            nodes[*b] = NodeStatus::Paired {
                partner: *a,
                label: label.clone(),
            };
        }
        LinkMove::Deletion { a } => {
            expect_defect(&nodes, *a)?;
            nodes[*a] = NodeStatus::Missing;
        }
        LinkMove::LabelReplace { a, g } => {
            let l = expect_defect(&nodes, *a)?;
            nodes[*a] = NodeStatus::Defect(group.mul(&l, g));
        }
    }
    Ok(LinkState { n: s.n, nodes })
}

/// Is the right link state of `x` reachable from `p` by splices, deletions,
/// and label replacements? Decided structurally: existing pairs of `p` are
/// untouchable; missing nodes stay missing; defects may be deleted, relabelled
/// arbitrarily, or spliced (with arbitrary label) to another defect of `p`.
pub fn jp_member(x: &LabeledDiagram, p: &LinkState) -> Result<bool> {
    if x.n != p.n {
        return Err(Error::SizeMismatch(format!("{} vs {}", x.n, p.n)));
    }
    let q = right_link_state(x);
    for v in 0..p.n {
        match (&p.nodes[v], &q.nodes[v]) {
            (NodeStatus::Missing, NodeStatus::Missing) => {}
            (NodeStatus::Missing, _) => return Ok(false),
            (
                NodeStatus::Paired { partner, label },
                NodeStatus::Paired {
                    partner: w,
                    label: l,
                },
            ) => {
                if partner != w || label != l {
                    return Ok(false);
                }
            }
            (NodeStatus::Paired { .. }, _) => return Ok(false),
            (NodeStatus::Defect(_), NodeStatus::Missing) => {}
            (NodeStatus::Defect(_), NodeStatus::Defect(_)) => {}
            (NodeStatus::Defect(_), NodeStatus::Paired { partner: w, .. }) => {
                if !matches!(p.nodes[*w], NodeStatus::Defect(_)) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Enumerate the link states with exactly `i` defects that occur as right link
/// states of flavor diagrams, labels unquotiented.
pub fn enumerate_link_states(
    n: usize,
    i: usize,
    flavor: Flavor,
    group: &FiniteGroupSpec,
    cap: usize,
) -> Result<Vec<LinkState>> {
    let mut shapes: Vec<Vec<ShapeStatus>> = Vec::new();
    let mut current = vec![ShapeStatus::Missing; n];
    rec_states(n, flavor, 0, i, &mut current, &mut shapes);

    let elems = group.elements();
    let g = elems.len();
    let mut out = Vec::new();
    for shape in shapes {
        let defect_slots: Vec<usize> = (0..n)
            .filter(|&v| matches!(shape[v], ShapeStatus::Defect))
            .collect();
        let pair_slots: Vec<(usize, usize)> = (0..n)
            .filter_map(|v| match shape[v] {
                ShapeStatus::Paired(w) if v < w => Some((v, w)),
                _ => None,
            })
            .collect();
        let slots = defect_slots.len() + pair_slots.len();
        let labelings = g
            .checked_pow(slots as u32)
            .ok_or_else(|| Error::SizeCapExceeded("labelling count overflow".into()))?;
        if out.len() + labelings > cap {
            return Err(Error::SizeCapExceeded(format!(
                "more than {cap} link states at n={n}, i={i}"
            )));
        }
        let mut idx = vec![0usize; slots];
        loop {
            let mut nodes: Vec<NodeStatus> = shape
                .iter()
                .map(|s| match s {
                    ShapeStatus::Missing => NodeStatus::Missing,
                    ShapeStatus::Defect => NodeStatus::Defect(group.identity()),
                    ShapeStatus::Paired(w) => NodeStatus::Paired {
                        partner: *w,
                        label: group.identity(),
                    },
                })
                .collect();
            for (k, &v) in defect_slots.iter().enumerate() {
                nodes[v] = NodeStatus::Defect(elems[idx[k]].clone());
            }
            for (k, &(v, w)) in pair_slots.iter().enumerate() {
                let l = elems[idx[defect_slots.len() + k]].clone();
                nodes[v] = NodeStatus::Paired {
                    partner: w,
                    label: l.clone(),
                };
                nodes[w] = NodeStatus::Paired { partner: v, label: l };
            }
            out.push(LinkState { n, nodes });
            let mut k = slots;
            let mut done = true;
            loop {
                if k == 0 {
                    break;
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < g {
                    done = false;
                    break;
                }
                idx[k] = 0;
            }
            if done {
                break;
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

fn rec_states(
    n: usize,
    flavor: Flavor,
    from: usize,
    defects_left: usize,
    current: &mut Vec<ShapeStatus>,
    out: &mut Vec<Vec<ShapeStatus>>,
) {
    // find first undecided node; Missing is the initial placeholder, so track
    // decided positions via `from`
    if from == n {
        if defects_left > 0 {
            return;
        }
        let state = LinkState {
            n,
            nodes: current
                .iter()
                .map(|s| match s {
                    ShapeStatus::Missing => NodeStatus::Missing,
                    ShapeStatus::Defect => NodeStatus::Defect(GroupElement(vec![])),
                    ShapeStatus::Paired(w) => NodeStatus::Paired {
                        partner: *w,
                        label: GroupElement(vec![]),
                    },
                })
                .collect(),
        };
        if flavor.requires_planar() && !state.is_planar() {
            return;
        }
        out.push(current.clone());
        return;
    }
    if matches!(current[from], ShapeStatus::Paired(_)) {
        rec_states(n, flavor, from + 1, defects_left, current, out);
        return;
    }
    // missing
    if flavor.allows_unmatched() {
        current[from] = ShapeStatus::Missing;
        rec_states(n, flavor, from + 1, defects_left, current, out);
    }
    // defect
    if defects_left > 0 {
        current[from] = ShapeStatus::Defect;
        rec_states(n, flavor, from + 1, defects_left - 1, current, out);
        current[from] = ShapeStatus::Missing;
    }
    // pair with a later undecided node
    if flavor.allows_same_side_edges() {
        for w in from + 1..n {
            if matches!(current[w], ShapeStatus::Paired(_)) {
                continue;
            }
            current[from] = ShapeStatus::Paired(w);
            current[w] = ShapeStatus::Paired(from);
            rec_states(n, flavor, from + 1, defects_left, current, out);
            current[from] = ShapeStatus::Missing;
            current[w] = ShapeStatus::Missing;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::Diagram;

    fn trivial() -> FiniteGroupSpec {
        FiniteGroupSpec::trivial()
    }

    fn c2() -> FiniteGroupSpec {
        FiniteGroupSpec::cyclic(2).unwrap()
    }

    #[test]
    fn right_state_of_identity_is_all_defects() {
        let t = trivial();
        let id = LabeledDiagram::identity(3, &t);
        let s = right_link_state(&id);
        assert_eq!(s.defect_count(), 3);
        assert!(!s.has_missing());
    }

    #[test]
    fn right_state_of_rho() {
        let t = trivial();
        let rho = LabeledDiagram::rho(2, 1, &t);
        let s = right_link_state(&rho);
        assert_eq!(s.nodes[0], NodeStatus::Missing);
        assert!(matches!(s.nodes[1], NodeStatus::Defect(_)));
    }

    #[test]
    fn defect_inherits_label() {
        let g = c2();
        // L1-R2 labelled a, everything else missing
        let d = Diagram::new(2, vec![(0, 3)]).unwrap();
        let x = LabeledDiagram::new(d, vec![GroupElement(vec![1])]).unwrap();
        let s = right_link_state(&x);
        assert_eq!(s.nodes[0], NodeStatus::Missing);
        assert_eq!(s.nodes[1], NodeStatus::Defect(GroupElement(vec![1])));
        let l = left_link_state(&x);
        assert_eq!(l.nodes[0], NodeStatus::Defect(GroupElement(vec![1])));
        assert_eq!(l.nodes[1], NodeStatus::Missing);
    }

    #[test]
    fn moves_examples() {
        let g = c2();
        let id_state = LinkState::new(
            2,
            vec![
                NodeStatus::Defect(g.identity()),
                NodeStatus::Defect(g.identity()),
            ],
        )
        .unwrap();
        let a = GroupElement(vec![1]);
        let spliced = apply_link_move(
            &id_state,
            &LinkMove::GSplice {
                a: 0,
                b: 1,
                label: a.clone(),
            },
            &g,
        )
        .unwrap();
        assert_eq!(
            spliced.nodes[0],
            NodeStatus::Paired {
                partner: 1,
                label: a.clone()
            }
        );
        let deleted = apply_link_move(&id_state, &LinkMove::Deletion { a: 0 }, &g).unwrap();
        assert_eq!(deleted.nodes[0], NodeStatus::Missing);
        // label replacement twice by an order-2 element returns the original
        let once =
            apply_link_move(&id_state, &LinkMove::LabelReplace { a: 0, g: a.clone() }, &g).unwrap();
        let twice = apply_link_move(&once, &LinkMove::LabelReplace { a: 0, g: a }, &g).unwrap();
        assert_eq!(twice, id_state);
        // moves on non-defects fail
        assert!(matches!(
            apply_link_move(&spliced, &LinkMove::Deletion { a: 0 }, &g),
            Err(Error::NotADefect(0))
        ));
    }

    #[test]
    fn enumerate_state_counts() {
        let t = trivial();
        let g = c2();
        // n=2, i=2, Brauer-compatible, unlabelled: the two-defect state only
        assert_eq!(
            enumerate_link_states(2, 2, Flavor::Brauer, &t, 1 << 20).unwrap().len(),
            1
        );
        // n=2, i=0, Brauer-compatible over C_2: one pair, two labels
        assert_eq!(
            enumerate_link_states(2, 0, Flavor::Brauer, &g, 1 << 20).unwrap().len(),
            2
        );
        // n=1, i=1: one state per label, no quotienting
        assert_eq!(
            enumerate_link_states(1, 1, Flavor::Brauer, &g, 1 << 20).unwrap().len(),
            2
        );
        // planarity: at n=3, i=1, the defect may not sit under the arc
        assert_eq!(
            enumerate_link_states(3, 1, Flavor::TemperleyLieb, &t, 1 << 20).unwrap().len(),
            2
        );
        assert_eq!(
            enumerate_link_states(3, 1, Flavor::Brauer, &t, 1 << 20).unwrap().len(),
            3
        );
    }

    #[test]
    fn jp_member_examples() {
        let t = trivial();
        // x whose right link state is exactly p
        let id = LabeledDiagram::identity(2, &t);
        let p = right_link_state(&id);
        assert!(jp_member(&id, &p).unwrap());
        // from the two-defect state every Brauer_2 diagram is reachable
        let all = crate::diagram::enumerate_diagrams(2, Flavor::Brauer, &t, 1 << 20).unwrap();
        for x in &all {
            assert!(jp_member(x, &p).unwrap(), "{x:?}");
        }
        // pairs cannot be unspliced
        let cup = LabeledDiagram::unlabelled(Diagram::new(2, vec![(0, 1), (2, 3)]).unwrap(), &t);
        let paired = right_link_state(&cup);
        assert!(!jp_member(&id, &paired).unwrap());
        assert!(jp_member(&cup, &paired).unwrap());
    }

    #[test]
    fn reachability_matches_exhaustive_search() {
        // closure of the moves from p, by breadth-first search over all states,
        // must agree with the structural membership test
        let g = c2();
        let n = 2;
        let all_diagrams =
            crate::diagram::enumerate_diagrams(n, Flavor::RookBrauer, &g, 1 << 20).unwrap();
        let mut all_states: Vec<LinkState> = Vec::new();
        for i in 0..=n {
            all_states.extend(enumerate_link_states(n, i, Flavor::RookBrauer, &g, 1 << 20).unwrap());
        }
        let elems = g.elements();
        for p in &all_states {
            // BFS over the move closure
            let mut reached = vec![p.clone()];
            let mut frontier = vec![p.clone()];
            while let Some(s) = frontier.pop() {
                let mut nexts = Vec::new();
                for a in s.defects() {
                    nexts.push(apply_link_move(&s, &LinkMove::Deletion { a }, &g).unwrap());
                    for e in &elems {
                        nexts.push(
                            apply_link_move(
                                &s,
                                &LinkMove::LabelReplace { a, g: e.clone() },
                                &g,
                            )
                            .unwrap(),
                        );
                        for b in s.defects() {
                            if b != a {
                                nexts.push(
                                    apply_link_move(
                                        &s,
                                        &LinkMove::GSplice {
                                            a,
                                            b,
                                            label: e.clone(),
                                        },
                                        &g,
                                    )
                                    .unwrap(),
                                );
                            }
                        }
                    }
                }
                for nxt in nexts {
                    if !reached.contains(&nxt) {
                        reached.push(nxt.clone());
                        frontier.push(nxt);
                    }
                }
            }
            for x in &all_diagrams {
                let q = right_link_state(x);
                let bfs = reached.contains(&q);
                let structural = jp_member(x, p).unwrap();
                assert_eq!(bfs, structural, "p={p:?} x={x:?}");
            }
        }
    }
}
