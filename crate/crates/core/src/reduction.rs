//! Isospectral reduction: branch summation on graphs and block elimination
//! over the function field on matrices, plus sequential reduction.
//!
//! The two routes are implemented independently; `cross_validate` checks they
//! agree entrywise, keeping the equivalence of the two definitions
//! permanently executable.

use crate::error::{Error, Result};
use crate::linalg::{solve, Mat};
use crate::netgraph::{entry_from_column, reduced_column, Network, StructuralSet};
use crate::ratfield::RatFunc;

/// Index partition of {1..n} into a kept set and its complement.
#[derive(Clone, Debug, PartialEq)]
pub struct Partition {
    n: usize,
    keep: Vec<usize>,
    complement: Vec<usize>,
}

impl Partition {
    pub fn new(n: usize, keep: &[usize]) -> Result<Self> {
        if keep.is_empty() {
            return Err(Error::EmptySet);
        }
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        for &v in &keep {
            if v == 0 || v > n {
                return Err(Error::BadVertexIndex { index: v, n });
            }
        }
        let complement = (1..=n).filter(|v| keep.binary_search(v).is_err()).collect();
        Ok(Self { n, keep, complement })
    }

    pub fn from_structural(ss: &StructuralSet) -> Self {
        Self {
            n: ss.n(),
            keep: ss.keep().to_vec(),
            complement: ss.complement().to_vec(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn keep(&self) -> &[usize] {
        &self.keep
    }

    pub fn complement(&self) -> &[usize] {
        &self.complement
    }

    fn keep0(&self) -> Vec<usize> {
        self.keep.iter().map(|v| v - 1).collect()
    }

    fn comp0(&self) -> Vec<usize> {
        self.complement.iter().map(|v| v - 1).collect()
    }
}

/// The four blocks of `m` under a partition, kept indices ordered ascending.
pub struct Blocks {
    pub keep_keep: Mat<RatFunc>,
    pub keep_comp: Mat<RatFunc>,
    pub comp_keep: Mat<RatFunc>,
    pub comp_comp: Mat<RatFunc>,
}

pub fn split_blocks(m: &Mat<RatFunc>, part: &Partition) -> Result<Blocks> {
    let n = m.require_square()?;
    if part.n() != n {
        return Err(Error::DimensionMismatch(
            "partition size differs from matrix dimension".into(),
        ));
    }
    let k = part.keep0();
    let c = part.comp0();
    Ok(Blocks {
        keep_keep: m.submatrix(&k, &k),
        keep_comp: m.submatrix(&k, &c),
        comp_keep: m.submatrix(&c, &k),
        comp_comp: m.submatrix(&c, &c),
    })
}

/// Isospectral matrix reduction onto the kept indices:
/// `R = M_kk - M_kc (M_cc - lambda I)^-1 M_ck`, exactly over the field of
/// rational functions.
pub fn reduce_matrix(m: &Mat<RatFunc>, part: &Partition) -> Result<Mat<RatFunc>> {
    let b = split_blocks(m, part)?;
    if part.complement().is_empty() {
        return Ok(b.keep_keep);
    }
    let shifted = b.comp_comp.sub_scalar_diag(&RatFunc::lambda())?;
    let x = solve(&shifted, &b.comp_keep)?.ok_or(Error::SingularComplement)?;
    Ok(b.keep_keep.sub(&b.keep_comp.mul(&x)))
}

/// A reduced network plus the original labels of its (relabeled) vertices:
/// `original_labels[k]` is the original name of new vertex `k+1`.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedNetwork {
    pub network: Network,
    pub original_labels: Vec<usize>,
}

/// Isospectral graph reduction by branch summation, relabeled to 1..|S|.
pub fn reduce_graph(net: &Network, ss: &StructuralSet) -> ReducedNetwork {
    let keep = ss.keep();
    let k = keep.len();
    let mut out = Network::new(k);
    for (cj, &j) in keep.iter().enumerate() {
        let col = reduced_column(net, ss, j);
        for (ci, &i) in keep.iter().enumerate() {
            let w = entry_from_column(net, ss, i, j, &col);
            if !w.is_zero() {
                out.add_edge(ci + 1, cj + 1, w).expect("fresh edge");
            }
        }
    }
    ReducedNetwork {
        network: out,
        original_labels: keep.to_vec(),
    }
}

/// Sequential reduction through a chain of nested sets given in ORIGINAL
/// labels; each set must be structural for the previously reduced network.
pub fn reduce_sequence(net: &Network, chain: &[Vec<usize>]) -> Result<ReducedNetwork> {
    let mut current = ReducedNetwork {
        network: net.clone(),
        original_labels: (1..=net.n()).collect(),
    };
    for set in chain {
        // translate original labels to the current network's labels
        let mut local = Vec::with_capacity(set.len());
        for &orig in set {
            let pos = current
                .original_labels
                .iter()
                .position(|&l| l == orig)
                .ok_or(Error::InvalidInput(format!(
                    "vertex {orig} is not present in the current reduction"
                )))?;
            local.push(pos + 1);
        }
        let ss = current.network.validate_structural(&local)?;
        let next = reduce_graph(&current.network, &ss);
        let labels = next
            .original_labels
            .iter()
            .map(|&v| current.original_labels[v - 1])
            .collect();
        current = ReducedNetwork {
            network: next.network,
            original_labels: labels,
        };
    }
    Ok(current)
}

/// Checks that the graph-route and matrix-route reductions agree entrywise.
pub fn cross_validate(net: &Network, ss: &StructuralSet) -> Result<bool> {
    let graph_route = reduce_graph(net, ss).network.adjacency();
    let part = Partition::from_structural(ss);
    let matrix_route = reduce_matrix(&net.adjacency(), &part)?;
    Ok(graph_route == matrix_route)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netgraph::example_network;
    use crate::ratfield::parse_ratfunc;

    fn rf(s: &str) -> RatFunc {
        parse_ratfunc(s).unwrap()
    }

    fn mat(rows: &[&[&str]]) -> Mat<RatFunc> {
        Mat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|s| rf(s)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn graph_reduction_reproduces_displays() {
        let net = example_network();

        let ss = net.validate_structural(&[1, 2, 4]).unwrap();
        let red = reduce_graph(&net, &ss);
        assert_eq!(red.original_labels, vec![1, 2, 4]);
        let expect = mat(&[
            &["0", "1", "0"],
            &["0", "0", "1/l"],
            &["-1", "0", "-2/l"],
        ]);
        assert_eq!(red.network.adjacency(), expect);

        let ss = net.validate_structural(&[1, 4]).unwrap();
        let red = reduce_graph(&net, &ss);
        let expect = mat(&[&["0", "1/l^2"], &["-1", "-2/l"]]);
        assert_eq!(red.network.adjacency(), expect);
    }

    #[test]
    fn reduce_onto_everything_is_identity() {
        let net = example_network();
        let ss = net.validate_structural(&[1, 2, 3, 4]).unwrap();
        let red = reduce_graph(&net, &ss);
        assert_eq!(red.network, net);
    }

    #[test]
    fn matrix_reduction_matches_graph_on_example() {
        let net = example_network();
        let ss = net.validate_structural(&[1, 4]).unwrap();
        let part = Partition::from_structural(&ss);
        let r = reduce_matrix(&net.adjacency(), &part).unwrap();
        assert_eq!(r, mat(&[&["0", "1/l^2"], &["-1", "-2/l"]]));
    }

    #[test]
    fn singular_complement_detected() {
        // complement block [[lambda]] makes (M_cc - lambda I) the zero function
        let m = mat(&[&["l", "1"], &["1", "0"]]);
        let part = Partition::new(2, &[2]).unwrap();
        assert_eq!(reduce_matrix(&m, &part), Err(Error::SingularComplement));
    }

    #[test]
    fn sequential_matches_direct() {
        let net = example_network();
        let via = reduce_sequence(&net, &[vec![1, 2, 4], vec![1, 4]]).unwrap();
        let direct = reduce_sequence(&net, &[vec![1, 4]]).unwrap();
        assert_eq!(via.network, direct.network);
        assert_eq!(via.original_labels, vec![1, 4]);

        let via134 = reduce_sequence(&net, &[vec![1, 3, 4], vec![1, 4]]).unwrap();
        assert_eq!(via134.network, direct.network);
    }

    #[test]
    fn cross_validation_on_all_nine_sets() {
        let net = example_network();
        let sets: [&[usize]; 9] = [
            &[1, 4],
            &[2, 4],
            &[3, 4],
            &[1, 3],
            &[2, 3],
            &[1, 2, 4],
            &[1, 3, 4],
            &[2, 3, 4],
            &[1, 2, 3],
        ];
        for s in sets {
            let ss = net.validate_structural(s).unwrap();
            assert!(cross_validate(&net, &ss).unwrap(), "disagreement on {s:?}");
        }
    }
}
