//! Lambda-weighted directed graphs, structural-set validation, and branch
//! enumeration with branch weights.
//!
//! Vertices are labeled 1..n. An absent edge has weight zero and zero-weight
//! edges are never stored.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::ratfield::{GaussianRational, RatFunc};

/// A weighted directed graph with rational-function edge weights.
#[derive(Clone, PartialEq, Debug)]
pub struct Network {
    n: usize,
    edges: BTreeMap<(usize, usize), RatFunc>,
}

impl Network {
    pub fn new(n: usize) -> Self {
        Self { n, edges: BTreeMap::new() }
    }

    pub fn with_edges(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize, RatFunc)>,
    ) -> Result<Self> {
        let mut net = Self::new(n);
        for (i, j, w) in edges {
            net.add_edge(i, j, w)?;
        }
        Ok(net)
    }

    /// Inserts an edge; a zero weight is a no-op, re-inserting is an error.
    pub fn add_edge(&mut self, i: usize, j: usize, w: RatFunc) -> Result<()> {
        self.check_vertex(i)?;
        self.check_vertex(j)?;
        if w.is_zero() {
            return Ok(());
        }
        if self.edges.contains_key(&(i, j)) {
            return Err(Error::DuplicateEdge { from: i, to: j });
        }
        self.edges.insert((i, j), w);
        Ok(())
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v == 0 || v > self.n {
            Err(Error::BadVertexIndex { index: v, n: self.n })
        } else {
            Ok(())
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Weight of (i, j); the zero function when the edge is absent.
    pub fn weight(&self, i: usize, j: usize) -> RatFunc {
        self.edges.get(&(i, j)).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.edges.contains_key(&(i, j))
    }

    /// Edges in sorted (from, to) order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, &RatFunc)> {
        self.edges.iter().map(|(&(i, j), w)| (i, j, w))
    }

    pub fn out_neighbors(&self, i: usize) -> Vec<usize> {
        self.edges
            .range((i, 1)..=(i, self.n))
            .map(|(&(_, j), _)| j)
            .collect()
    }

    /// The weighted adjacency matrix, zero function for absent edges.
    pub fn adjacency(&self) -> Mat<RatFunc> {
        Mat::from_fn(self.n, self.n, |r, c| self.weight(r + 1, c + 1))
    }

    /// Network whose edges are the nonzero entries of a square matrix.
    pub fn from_adjacency(m: &Mat<RatFunc>) -> Result<Self> {
        let n = m.require_square()?;
        let mut net = Self::new(n);
        for r in 0..n {
            for c in 0..n {
                let w = m.at(r, c);
                if !w.is_zero() {
                    net.add_edge(r + 1, c + 1, w.clone())?;
                }
            }
        }
        Ok(net)
    }

    /// Validates `keep` as a structural set: every non-loop cycle meets it and
    /// no complement loop is weighted identically lambda. Returns a
    /// certificate carrying a topological order of the complement.
    pub fn validate_structural(&self, keep: &[usize]) -> Result<StructuralSet> {
        if keep.is_empty() {
            return Err(Error::EmptySet);
        }
        let mut keep: Vec<usize> = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        for &v in &keep {
            self.check_vertex(v)?;
        }
        let in_keep = |v: usize| keep.binary_search(&v).is_ok();
        let complement: Vec<usize> = (1..=self.n).filter(|&v| !in_keep(v)).collect();

        let lambda = RatFunc::lambda();
        for &v in &complement {
            if self.weight(v, v) == lambda {
                return Err(Error::LoopWeightIsLambda { vertex: v });
            }
        }

        // Kahn's algorithm on the complement-induced subgraph, loops ignored.
        let mut indeg: BTreeMap<usize, usize> = complement.iter().map(|&v| (v, 0)).collect();
        for &(i, j) in self.edges.keys() {
            if i != j && indeg.contains_key(&i) && indeg.contains_key(&j) {
                *indeg.get_mut(&j).unwrap() += 1;
            }
        }
        let mut queue: Vec<usize> = complement
            .iter()
            .copied()
            .filter(|v| indeg[v] == 0)
            .collect();
        let mut topo = Vec::with_capacity(complement.len());
        while let Some(v) = queue.pop() {
            topo.push(v);
            for j in self.out_neighbors(v) {
                if j != v {
                    if let Some(d) = indeg.get_mut(&j) {
                        *d -= 1;
                        if *d == 0 {
                            queue.push(j);
                        }
                    }
                }
            }
        }
        if topo.len() < complement.len() {
            let witness = complement
                .iter()
                .copied()
                .find(|v| !topo.contains(v))
                .unwrap();
            return Err(Error::CycleInComplement { witness });
        }
        let topo = deterministic_topo(self, &complement);
        Ok(StructuralSet { n: self.n, keep, complement, topo })
    }

    /// Pointwise lambda0 condition: w(i,i)(lambda0) != lambda0 on the complement.
    pub fn is_lambda0_structural(
        &self,
        ss: &StructuralSet,
        lambda0: &GaussianRational,
    ) -> Result<bool> {
        for &v in &ss.complement {
            let val = self.weight(v, v).eval_exact(lambda0)?;
            if &val == lambda0 {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn deterministic_topo(net: &Network, complement: &[usize]) -> Vec<usize> {
    let mut remaining: Vec<usize> = complement.to_vec();
    let mut order = Vec::with_capacity(remaining.len());
    while !remaining.is_empty() {
        let pos = remaining
            .iter()
            .position(|&v| {
                remaining
                    .iter()
                    .all(|&u| u == v || !net.has_edge(u, v))
            })
            .expect("acyclic by prior validation");
        order.push(remaining.remove(pos));
    }
    order
}

/// Certificate that a vertex subset is structural.
#[derive(Clone, Debug, PartialEq)]
pub struct StructuralSet {
    n: usize,
    keep: Vec<usize>,
    complement: Vec<usize>,
    /// Topological order of the complement (loops ignored): sources first.
    topo: Vec<usize>,
}

impl StructuralSet {
    pub fn keep(&self) -> &[usize] {
        &self.keep
    }

    pub fn complement(&self) -> &[usize] {
        &self.complement
    }

    pub fn topo(&self) -> &[usize] {
        &self.topo
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn contains(&self, v: usize) -> bool {
        self.keep.binary_search(&v).is_ok()
    }

    pub fn in_complement(&self, v: usize) -> bool {
        self.complement.binary_search(&v).is_ok()
    }
}

/// A branch: path with all interior vertices in the complement. Endpoints may
/// coincide (cycle-branch); interior vertices are pairwise distinct and
/// distinct from the endpoints.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Branch {
    path: Vec<usize>,
}

impl Branch {
    pub fn path(&self) -> &[usize] {
        &self.path
    }

    /// Number of edges in the path.
    pub fn length(&self) -> usize {
        self.path.len() - 1
    }
}

/// Complete enumeration of branches from `i` to `j`, finite because the
/// complement carries no non-loop cycles.
pub fn branches(net: &Network, ss: &StructuralSet, i: usize, j: usize) -> Vec<Branch> {
    let mut out = Vec::new();
    let mut path = vec![i];
    extend(net, ss, j, &mut path, &mut out);
    out.sort();
    out
}

fn extend(net: &Network, ss: &StructuralSet, j: usize, path: &mut Vec<usize>, out: &mut Vec<Branch>) {
    let last = *path.last().unwrap();
    for b in net.out_neighbors(last) {
        if b == j {
            let mut p = path.clone();
            p.push(b);
            out.push(Branch { path: p });
        }
        if b != j && ss.in_complement(b) && !path.contains(&b) {
            path.push(b);
            extend(net, ss, j, path, out);
            path.pop();
        }
    }
}

/// Weight of a branch: first edge times, per interior vertex l, the factor
/// w(l, next) / (lambda - w(l, l)).
pub fn branch_weight(net: &Network, b: &Branch) -> RatFunc {
    let p = b.path();
    let lambda = RatFunc::lambda();
    let mut acc = net.weight(p[0], p[1]);
    for l in 1..p.len() - 1 {
        let denom = &lambda - &net.weight(p[l], p[l]);
        acc = &acc * &(&net.weight(p[l], p[l + 1]) / &denom);
    }
    acc
}

/// Reduced weight R_{i,j}: the sum of all branch weights from i to j.
///
/// Computed by a single sweep over the complement DAG rather than explicit
/// enumeration; `branches` + `branch_weight` provide the independent route.
pub fn reduced_entry(net: &Network, ss: &StructuralSet, i: usize, j: usize) -> RatFunc {
    let col = reduced_column(net, ss, j);
    entry_from_column(net, ss, i, j, &col)
}

/// Partial sum over branches of exact length `p`.
pub fn branches_by_length(
    net: &Network,
    ss: &StructuralSet,
    i: usize,
    j: usize,
    p: usize,
) -> RatFunc {
    let mut acc = RatFunc::zero();
    for b in branches(net, ss, i, j) {
        if b.length() == p {
            acc = &acc + &branch_weight(net, &b);
        }
    }
    acc
}

/// For fixed target `j`, the map u -> sum over branch tails u -> ... -> j
/// where u itself is an interior vertex. Processed against the reverse
/// topological order so each value is computed once.
pub(crate) fn reduced_column(
    net: &Network,
    ss: &StructuralSet,
    j: usize,
) -> BTreeMap<usize, RatFunc> {
    let lambda = RatFunc::lambda();
    let mut tail: BTreeMap<usize, RatFunc> = BTreeMap::new();
    for &u in ss.topo().iter().rev() {
        let denom = &lambda - &net.weight(u, u);
        let mut acc = RatFunc::zero();
        for v in net.out_neighbors(u) {
            let step = &net.weight(u, v) / &denom;
            if v == j {
                acc = &acc + &step;
            } else if v != u && ss.in_complement(v) {
                if let Some(t) = tail.get(&v) {
                    if !t.is_zero() {
                        acc = &acc + &(&step * t);
                    }
                }
            }
        }
        tail.insert(u, acc);
    }
    tail
}

pub(crate) fn entry_from_column(
    net: &Network,
    ss: &StructuralSet,
    i: usize,
    j: usize,
    col: &BTreeMap<usize, RatFunc>,
) -> RatFunc {
    let mut acc = net.weight(i, j);
    for v in net.out_neighbors(i) {
        if v != j && v != i && ss.in_complement(v) {
            if let Some(t) = col.get(&v) {
                if !t.is_zero() {
                    acc = &acc + &(&net.weight(i, v) * t);
                }
            }
        }
    }
    acc
}

/// The four-vertex example network used throughout the tests.
#[cfg(test)]
pub(crate) fn example_network() -> Network {
    Network::with_edges(
        4,
        [
            (1, 2, RatFunc::from_int(1)),
            (2, 3, RatFunc::from_int(1)),
            (3, 4, RatFunc::from_int(1)),
            (4, 3, RatFunc::from_int(-2)),
            (4, 1, RatFunc::from_int(-1)),
        ],
    )
    .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfield::parse_ratfunc;

    fn rf(s: &str) -> RatFunc {
        parse_ratfunc(s).unwrap()
    }

    #[test]
    fn adjacency_of_example() {
        let net = example_network();
        let a = net.adjacency();
        let expect = [
            ["0", "1", "0", "0"],
            ["0", "0", "1", "0"],
            ["0", "0", "0", "1"],
            ["-1", "0", "-2", "0"],
        ];
        for r in 0..4 {
            for c in 0..4 {
                assert_eq!(a.at(r, c), &rf(expect[r][c]));
            }
        }
    }

    #[test]
    fn adjacency_edge_cases() {
        let empty = Network::new(2);
        let a = empty.adjacency();
        assert!(a.at(0, 0).is_zero() && a.at(1, 1).is_zero());

        let mut loopy = Network::new(1);
        loopy.add_edge(1, 1, RatFunc::lambda()).unwrap();
        assert_eq!(loopy.adjacency().at(0, 0), &RatFunc::lambda());
    }

    #[test]
    fn structural_validation_on_example() {
        let net = example_network();
        for s in [vec![1, 4], vec![2, 4], vec![3, 4], vec![1, 3], vec![2, 3]] {
            assert!(net.validate_structural(&s).is_ok(), "expected {s:?} valid");
        }
        match net.validate_structural(&[1, 2]) {
            Err(Error::CycleInComplement { .. }) => {}
            other => panic!("expected CycleInComplement, got {other:?}"),
        }
    }

    #[test]
    fn lambda_loop_rejected() {
        let mut net = Network::new(2);
        net.add_edge(1, 1, RatFunc::lambda()).unwrap();
        match net.validate_structural(&[2]) {
            Err(Error::LoopWeightIsLambda { vertex: 1 }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn empty_set_rejected() {
        let net = example_network();
        assert_eq!(net.validate_structural(&[]), Err(Error::EmptySet));
    }

    #[test]
    fn lambda0_structural_checks() {
        let net = example_network();
        let ss = net.validate_structural(&[1, 4]).unwrap();
        assert!(net.is_lambda0_structural(&ss, &GaussianRational::i()).unwrap());

        // constant loop weight 2 at the complement vertex, lambda0 = 2
        let mut small = Network::new(2);
        small.add_edge(2, 2, RatFunc::from_int(2)).unwrap();
        small.add_edge(2, 1, RatFunc::one()).unwrap();
        let ss = small.validate_structural(&[1]).unwrap();
        assert!(!small
            .is_lambda0_structural(&ss, &GaussianRational::from_int(2))
            .unwrap());
        assert!(small
            .is_lambda0_structural(&ss, &GaussianRational::from_int(3))
            .unwrap());

        // loopless complement: fine for any nonzero lambda0
        let ss14 = net.validate_structural(&[1, 4]).unwrap();
        assert!(net
            .is_lambda0_structural(&ss14, &GaussianRational::from_int(7))
            .unwrap());
    }

    #[test]
    fn branch_enumeration_examples() {
        let net = example_network();
        let ss = net.validate_structural(&[1, 4]).unwrap();

        let b14 = branches(&net, &ss, 1, 4);
        assert_eq!(b14.len(), 1);
        assert_eq!(b14[0].path(), &[1, 2, 3, 4]);

        let b44 = branches(&net, &ss, 4, 4);
        assert_eq!(b44.len(), 1);
        assert_eq!(b44[0].path(), &[4, 3, 4]);

        let b41 = branches(&net, &ss, 4, 1);
        assert_eq!(b41.len(), 1);
        assert_eq!(b41[0].path(), &[4, 1]);

        // no path from 2 to 1 avoiding S
        assert!(branches(&net, &ss, 2, 1).is_empty());
    }

    #[test]
    fn branch_weights_from_figure() {
        let net = example_network();
        let ss124 = net.validate_structural(&[1, 2, 4]).unwrap();
        let b = branches(&net, &ss124, 2, 4);
        assert_eq!(b.len(), 1);
        assert_eq!(branch_weight(&net, &b[0]), rf("1/l"));

        let b44 = branches(&net, &ss124, 4, 4);
        assert_eq!(branch_weight(&net, &b44[0]), rf("-2/l"));

        let b12 = branches(&net, &ss124, 1, 2);
        assert_eq!(branch_weight(&net, &b12[0]), rf("1"));
    }

    #[test]
    fn reduced_entries_match_figure() {
        let net = example_network();
        let ss = net.validate_structural(&[1, 4]).unwrap();
        assert_eq!(reduced_entry(&net, &ss, 1, 4), rf("1/l^2"));
        assert_eq!(reduced_entry(&net, &ss, 4, 4), rf("-2/l"));
        assert_eq!(reduced_entry(&net, &ss, 2, 1), RatFunc::zero());
    }

    #[test]
    fn length_partitioned_sums() {
        let net = example_network();
        let ss = net.validate_structural(&[1, 4]).unwrap();
        assert_eq!(branches_by_length(&net, &ss, 1, 4, 3), rf("1/l^2"));
        assert!(branches_by_length(&net, &ss, 1, 4, 7).is_zero());
        assert_eq!(branches_by_length(&net, &ss, 4, 1, 1), rf("-1"));

        // the length-partitioned sums add up to the reduced entry
        for (i, j) in [(1, 4), (4, 4), (4, 1), (1, 1)] {
            let mut acc = RatFunc::zero();
            for p in 1..=ss.complement().len() + 1 {
                acc = &acc + &branches_by_length(&net, &ss, i, j, p);
            }
            assert_eq!(acc, reduced_entry(&net, &ss, i, j));
        }
    }
}
