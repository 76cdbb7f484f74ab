//! Recovery of full-network spectral data from reduced data: vertex depths,
//! the recursive reconstruction of eigenvectors and generalized eigenvectors,
//! and full matrix rebuild from Jordan data.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{in_span, inverse, nullspace, Mat};
use crate::netgraph::{Network, StructuralSet};
use crate::ratfield::GaussianRational;
use crate::reduction::reduce_graph;
use crate::spectra::{eval_matrix, root_multiplicity, spectrum_constant};

/// Depths of vertices relative to a structural set: kept vertices have depth
/// 0; a complement vertex sits one level above the deepest of its (non-loop)
/// out-neighbors. Finite for every vertex because the complement is acyclic.
#[derive(Clone, Debug, PartialEq)]
pub struct DepthMap {
    depth: BTreeMap<usize, usize>,
    max_depth: usize,
}

impl DepthMap {
    pub fn depth(&self, v: usize) -> usize {
        self.depth[&v]
    }

    pub fn max_depth(&self) -> usize {
        self.max_depth
    }

    /// Vertices of depth exactly `k`, ascending.
    pub fn stratum(&self, k: usize) -> Vec<usize> {
        self.depth
            .iter()
            .filter(|&(_, &d)| d == k)
            .map(|(&v, _)| v)
            .collect()
    }

    /// Vertices of depth <= k, ascending.
    pub fn up_to(&self, k: usize) -> Vec<usize> {
        self.depth
            .iter()
            .filter(|&(_, &d)| d <= k)
            .map(|(&v, _)| v)
            .collect()
    }
}

/// Minimal depths by a sweep along the complement's reverse topological order.
pub fn vertex_depths(net: &Network, ss: &StructuralSet) -> DepthMap {
    let mut depth: BTreeMap<usize, usize> = ss.keep().iter().map(|&v| (v, 0)).collect();
    // topo() lists complement sources first; the non-loop out-neighbors of a
    // vertex come later in that order, so process it reversed.
    for &v in ss.topo().iter().rev() {
        let d = net
            .out_neighbors(v)
            .into_iter()
            .filter(|&j| j != v)
            .map(|j| depth[&j])
            .max()
            .map_or(1, |m| m + 1);
        depth.insert(v, d);
    }
    let max_depth = depth.values().copied().max().unwrap_or(0);
    DepthMap { depth, max_depth }
}

/// Reconstructs a full vector from its restriction to the kept set by
/// filling depth strata:
/// `v_l = [sum_{j != l} w(l,j)(l0) v_j - u_l] / (l0 - w(l,l)(l0))`.
///
/// With `prev = None` this rebuilds an eigenvector (`u = 0`); with
/// `prev = Some(u)` it rebuilds the rank-(k+1) member from the already
/// reconstructed rank-k member `u`. The hypothesis that `known` is spectral
/// data of the reduction is verified first and the call refuses otherwise:
/// for the eigenvector case R(l0) v_S = l0 v_S must hold, and for the chain
/// case (R(l0) - l0) v_S must be a (1+c) multiple of u_S with c != -1.
///
/// The output satisfies (M(l0) - l0 I) * result = prev (all rows) exactly.
pub fn reconstruct_vector(
    net: &Network,
    ss: &StructuralSet,
    lambda0: &GaussianRational,
    known: &[GaussianRational],
    prev: Option<&[GaussianRational]>,
) -> Result<Vec<GaussianRational>> {
    let keep = ss.keep();
    if known.len() != keep.len() {
        return Err(Error::DimensionMismatch(
            "reduced vector length differs from kept-set size".into(),
        ));
    }
    if let Some(u) = prev {
        if u.len() != net.n() {
            return Err(Error::DimensionMismatch(
                "previous-rank vector length differs from vertex count".into(),
            ));
        }
    }
    if !net.is_lambda0_structural(ss, lambda0)? {
        return Err(Error::NotLambda0Structural);
    }
    verify_hypothesis(net, ss, lambda0, known, prev)?;

    let depths = vertex_depths(net, ss);
    let mut full: Vec<Option<GaussianRational>> = vec![None; net.n()];
    for (slot, &v) in keep.iter().enumerate() {
        full[v - 1] = Some(known[slot].clone());
    }
    for k in 1..=depths.max_depth() {
        for l in depths.stratum(k) {
            let loop_val = net.weight(l, l).eval_exact(lambda0)?;
            let denom = lambda0 - &loop_val;
            if denom.is_zero() {
                return Err(Error::LoopWeightEqualsLambda0 { vertex: l });
            }
            let mut acc = GaussianRational::zero();
            for j in net.out_neighbors(l) {
                if j == l {
                    continue;
                }
                let vj = full[j - 1]
                    .as_ref()
                    .expect("out-neighbors have smaller depth")
                    .clone();
                let w = net.weight(l, j).eval_exact(lambda0)?;
                acc = &acc + &(&w * &vj);
            }
            if let Some(u) = prev {
                acc = &acc - &u[l - 1];
            }
            full[l - 1] = Some(&acc / &denom);
        }
    }
    Ok(full.into_iter().map(|x| x.expect("all depths finite")).collect())
}

fn verify_hypothesis(
    net: &Network,
    ss: &StructuralSet,
    lambda0: &GaussianRational,
    known: &[GaussianRational],
    prev: Option<&[GaussianRational]>,
) -> Result<()> {
    let reduced = reduce_graph(net, ss);
    let r0 = eval_matrix(&reduced.network.adjacency(), lambda0)?;
    let rv = r0.mul_vec(known);
    let residual: Vec<GaussianRational> = rv
        .iter()
        .zip(known)
        .map(|(rv_i, v_i)| rv_i - &(lambda0 * v_i))
        .collect();
    match prev {
        None => {
            if residual.iter().any(|x| !x.is_zero()) {
                return Err(Error::HypothesisNotSatisfied(
                    "R(lambda0) v != lambda0 v for the supplied reduced vector".into(),
                ));
            }
        }
        Some(u) => {
            // residual must equal (1+c) u_S with consistent 1+c != 0
            let u_s: Vec<GaussianRational> =
                ss.keep().iter().map(|&v| u[v - 1].clone()).collect();
            let mut kappa: Option<GaussianRational> = None;
            for (r, us) in residual.iter().zip(&u_s) {
                if us.is_zero() {
                    if !r.is_zero() {
                        return Err(Error::HypothesisNotSatisfied(
                            "(R(lambda0) - lambda0)v is not a multiple of u on the kept set"
                                .into(),
                        ));
                    }
                } else {
                    let this = r / us;
                    match &kappa {
                        None => kappa = Some(this),
                        Some(k) if *k == this => {}
                        Some(_) => {
                            return Err(Error::HypothesisNotSatisfied(
                                "(R(lambda0) - lambda0)v is not a consistent multiple of u"
                                    .into(),
                            ))
                        }
                    }
                }
            }
            if kappa.is_some_and(|k| k.is_zero()) {
                return Err(Error::HypothesisNotSatisfied(
                    "coupling constant c = -1: the chain relation degenerates".into(),
                ));
            }
        }
    }
    Ok(())
}

/// Jordan structure of a constant matrix: block list and a chain basis.
///
/// `basis` columns are grouped per block as `[u, v_2, ..., v_size]`, the
/// eigenvector first.
#[derive(Clone, Debug, PartialEq)]
pub struct JordanData {
    pub blocks: Vec<(GaussianRational, usize)>,
    pub basis: Mat<GaussianRational>,
}

impl JordanData {
    pub fn dimension(&self) -> usize {
        self.blocks.iter().map(|(_, s)| s).sum()
    }

    /// The block-diagonal Jordan matrix for this block list.
    pub fn jordan_matrix(&self) -> Mat<GaussianRational> {
        let n = self.dimension();
        let mut j = Mat::zero(n, n);
        let mut offset = 0;
        for (value, size) in &self.blocks {
            for k in 0..*size {
                *j.at_mut(offset + k, offset + k) = value.clone();
                if k + 1 < *size {
                    *j.at_mut(offset + k, offset + k + 1) = GaussianRational::one();
                }
            }
            offset += size;
        }
        j
    }

    /// Multiset of block sizes for one eigenvalue, ascending.
    pub fn block_sizes(&self, value: &GaussianRational) -> Vec<usize> {
        let mut sizes: Vec<usize> = self
            .blocks
            .iter()
            .filter(|(v, _)| v == value)
            .map(|(_, s)| *s)
            .collect();
        sizes.sort_unstable();
        sizes
    }
}

/// `M = B J B^-1` from Jordan data, exactly.
pub fn rebuild_matrix(jd: &JordanData) -> Result<Mat<GaussianRational>> {
    let n = jd.dimension();
    if jd.basis.rows() != n || jd.basis.cols() != n {
        return Err(Error::DimensionMismatch(
            "basis shape differs from total block size".into(),
        ));
    }
    let inv = inverse(&jd.basis)?.ok_or(Error::SingularBasis)?;
    Ok(jd.basis.mul(&jd.jordan_matrix()).mul(&inv))
}

/// Jordan decomposition of a constant matrix whose eigenvalues all lie in
/// Q(i); fails with [`Error::InexactSpectrum`] otherwise.
pub fn jordan_form(m: &Mat<GaussianRational>) -> Result<JordanData> {
    let n = m.require_square()?;
    let sigma = spectrum_constant(m)?;
    if !sigma.all_exact() {
        return Err(Error::InexactSpectrum);
    }
    let cf = crate::spectra::char_function(&crate::linalg::lift_constant(m))?;
    let mut blocks = Vec::new();
    let mut columns: Vec<Vec<GaussianRational>> = Vec::new();
    for (root, _) in sigma.entries() {
        let value = root.as_exact().expect("checked exact").clone();
        let b = m.sub_scalar_diag(&value)?;
        let alg = root_multiplicity(cf.num(), &value);
        // kernels of increasing powers until the algebraic multiplicity fills
        let mut kernels: Vec<Vec<Vec<GaussianRational>>> = Vec::new();
        let mut power = b.clone();
        loop {
            let kernel = nullspace(&power);
            let done = kernel.len() == alg;
            kernels.push(kernel);
            if done {
                break;
            }
            power = power.mul(&b);
        }
        let kmax = kernels.len();
        // chains, longest first; each chain top is chosen independent of the
        // lower kernel together with the level-k tails of longer chains
        let mut chains: Vec<Vec<Vec<GaussianRational>>> = Vec::new();
        for k in (1..=kmax).rev() {
            let mut obstruction: Vec<Vec<GaussianRational>> = if k >= 2 {
                kernels[k - 2].clone()
            } else {
                Vec::new()
            };
            for chain in &chains {
                // chains are stored eigenvector-first: level-k member is [k-1]
                obstruction.push(chain[k - 1].clone());
            }
            let level_dim = kernels[k - 1].len();
            let lower_dim = if k >= 2 { kernels[k - 2].len() } else { 0 };
            let needed =
                (level_dim - lower_dim) - chains.iter().filter(|c| c.len() > k).count();
            let mut picked = 0;
            for cand in &kernels[k - 1] {
                if picked == needed {
                    break;
                }
                if in_span(&obstruction, cand) {
                    continue;
                }
                let mut chain = vec![cand.clone()];
                for _ in 1..k {
                    let next = b.mul_vec(chain.last().unwrap());
                    chain.push(next);
                }
                chain.reverse(); // eigenvector first
                obstruction.push(cand.clone());
                chains.push(chain);
                picked += 1;
            }
            if picked < needed {
                return Err(Error::InvalidInput(
                    "jordan chain selection failed; matrix data inconsistent".into(),
                ));
            }
        }
        chains.sort_by_key(|c| std::cmp::Reverse(c.len()));
        for chain in chains {
            blocks.push((value.clone(), chain.len()));
            columns.extend(chain);
        }
    }
    if columns.len() != n {
        return Err(Error::InvalidInput(
            "jordan basis does not span; matrix data inconsistent".into(),
        ));
    }
    let basis = Mat::from_fn(n, n, |r, c| columns[c][r].clone());
    Ok(JordanData { blocks, basis })
}
