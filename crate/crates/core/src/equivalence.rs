//! Weighted graph isomorphism, generalized spectral equivalence of networks
//! under a reduction rule, and spectral-equivalence testing of matrices by
//! exhaustive reduction comparison.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{det, Mat};
use crate::netgraph::Network;
use crate::ratfield::RatFunc;
use crate::reduction::{reduce_matrix, reduce_sequence, Partition, ReducedNetwork};
use crate::spectra::{spectrum, SpectrumMultiset, MULTISET_MATCH_TOLERANCE};

/// Exact weight-preserving vertex bijection, if one exists.
///
/// Backtracking search pruned by per-vertex signatures (degrees, loop weight
/// and sorted weight multisets); `map[v-1]` is the image of vertex v.
pub fn isomorphic(g: &Network, h: &Network) -> Option<Vec<usize>> {
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        return None;
    }
    let n = g.n();
    let sig_g: Vec<String> = (1..=n).map(|v| signature(g, v)).collect();
    let sig_h: Vec<String> = (1..=n).map(|v| signature(h, v)).collect();
    {
        let mut a = sig_g.clone();
        let mut b = sig_h.clone();
        a.sort();
        b.sort();
        if a != b {
            return None;
        }
    }
    // most-constrained first: rare signatures get assigned early
    let mut counts: BTreeMap<&String, usize> = BTreeMap::new();
    for s in &sig_g {
        *counts.entry(s).or_default() += 1;
    }
    let mut order: Vec<usize> = (1..=n).collect();
    order.sort_by_key(|&v| (counts[&sig_g[v - 1]], v));

    let mut map = vec![0usize; n];
    let mut used = vec![false; n];
    if assign(g, h, &sig_g, &sig_h, &order, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

fn signature(net: &Network, v: usize) -> String {
    let mut outs: Vec<String> = Vec::new();
    let mut ins: Vec<String> = Vec::new();
    for (i, j, w) in net.edges() {
        if i == v && j != v {
            outs.push(w.to_literal());
        }
        if j == v && i != v {
            ins.push(w.to_literal());
        }
    }
    outs.sort();
    ins.sort();
    format!(
        "loop:{};out:{};in:{}",
        net.weight(v, v).to_literal(),
        outs.join(","),
        ins.join(",")
    )
}

#[allow(clippy::too_many_arguments)]
fn assign(
    g: &Network,
    h: &Network,
    sig_g: &[String],
    sig_h: &[String],
    order: &[usize],
    k: usize,
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    if k == order.len() {
        return true;
    }
    let v = order[k];
    for cand in 1..=h.n() {
        if used[cand - 1] || sig_g[v - 1] != sig_h[cand - 1] {
            continue;
        }
        // consistency against already-assigned vertices
        let consistent = order[..k].iter().all(|&u| {
            let cu = map[u - 1];
            g.weight(v, u) == h.weight(cand, cu) && g.weight(u, v) == h.weight(cu, cand)
        }) && g.weight(v, v) == h.weight(cand, cand);
        if !consistent {
            continue;
        }
        map[v - 1] = cand;
        used[cand - 1] = true;
        if assign(g, h, sig_g, sig_h, order, k + 1, map, used) {
            return true;
        }
        used[cand - 1] = false;
        map[v - 1] = 0;
    }
    false
}

/// True iff every edge weight is proper (deg num <= deg den); such networks
/// can always be isospectrally reduced.
pub fn in_g_pi(net: &Network) -> bool {
    net.edges().all(|(_, _, w)| w.is_proper())
}

/// Deterministic vertex-subset selector driving repeated reductions.
#[derive(Clone, Debug, PartialEq)]
pub enum ReductionRule {
    /// Keep exactly the listed vertices (those still present).
    KeepListed(Vec<usize>),
    /// Keep the vertices carrying loops.
    KeepLoops,
    /// Keep a smallest structural set (ties broken lexicographically).
    MinCycleCover,
}

impl ReductionRule {
    pub fn name(&self) -> String {
        match self {
            ReductionRule::KeepListed(vs) => format!(
                "keep:{}",
                vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
            ),
            ReductionRule::KeepLoops => "loops".into(),
            ReductionRule::MinCycleCover => "mincover".into(),
        }
    }

    /// The subset this rule selects on the given network (current labels).
    pub fn select(&self, net: &Network) -> Result<Vec<usize>> {
        let selection: Vec<usize> = match self {
            ReductionRule::KeepListed(vs) => {
                vs.iter().copied().filter(|&v| v >= 1 && v <= net.n()).collect()
            }
            ReductionRule::KeepLoops => {
                (1..=net.n()).filter(|&v| net.has_edge(v, v)).collect()
            }
            ReductionRule::MinCycleCover => {
                let n = net.n();
                let mut best: Option<Vec<usize>> = None;
                'size: for size in 1..=n {
                    for keep in subsets_of_size(n, size) {
                        if net.validate_structural(&keep).is_ok() {
                            best = Some(keep);
                            break 'size;
                        }
                    }
                }
                best.unwrap_or_default()
            }
        };
        if selection.is_empty() {
            return Err(Error::RuleInapplicable(format!(
                "rule {} selects an empty set",
                self.name()
            )));
        }
        Ok(selection)
    }
}

fn subsets_of_size(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(size);
    fn rec(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for v in start..=n {
            cur.push(v);
            rec(v + 1, n, size, cur, out);
            cur.pop();
        }
    }
    rec(1, n, size, &mut cur, &mut out);
    out
}

/// Unique reduction onto an arbitrary target set, via a sequence of
/// single-vertex removals when the target is not structural. Labels in the
/// result refer to the input network.
pub fn reduce_onto(net: &Network, target: &[usize]) -> Result<ReducedNetwork> {
    if target.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut target = target.to_vec();
    target.sort_unstable();
    target.dedup();
    if let Ok(ss) = net.validate_structural(&target) {
        return Ok(crate::reduction::reduce_graph(net, &ss));
    }
    // remove complement vertices one at a time; single-vertex complements
    // only require the loop weight to differ from lambda
    let mut current = ReducedNetwork {
        network: net.clone(),
        original_labels: (1..=net.n()).collect(),
    };
    while current.original_labels.len() > target.len() {
        let mut removed = false;
        let candidates: Vec<usize> = current
            .original_labels
            .iter()
            .copied()
            .filter(|l| target.binary_search(l).is_err())
            .collect();
        for orig in candidates {
            let keep: Vec<usize> = current
                .original_labels
                .iter()
                .copied()
                .filter(|&l| l != orig)
                .collect();
            let step = reduce_sequence(&current.network, &[keep
                .iter()
                .map(|l| {
                    current
                        .original_labels
                        .iter()
                        .position(|&x| x == *l)
                        .unwrap()
                        + 1
                })
                .collect::<Vec<_>>()]);
            // reduce_sequence expects current labels; translate back after
            if let Ok(next) = step {
                let labels: Vec<usize> = next
                    .original_labels
                    .iter()
                    .map(|&v| current.original_labels[v - 1])
                    .collect();
                current = ReducedNetwork { network: next.network, original_labels: labels };
                removed = true;
                break;
            }
        }
        if !removed {
            return Err(Error::RuleInapplicable(
                "no removable vertex outside the target set".into(),
            ));
        }
    }
    Ok(current)
}

/// Witness of generalized spectral equivalence: exponents and the bijection.
#[derive(Clone, Debug, PartialEq)]
pub struct EquivalenceWitness {
    pub m: usize,
    pub k: usize,
    pub iso: Vec<usize>,
}

/// Searches exponent pairs (m, k) within the bounds for an isomorphism
/// between iterated reductions of the two networks, smallest m+k first.
///
/// With `allow_zero` false the identity pair (0, 0) is skipped. Fails with
/// [`Error::RuleInapplicable`] only when no witness exists within bounds and
/// some tower stopped early because the rule shrank a network to one vertex.
pub fn spectrally_equivalent(
    g: &Network,
    h: &Network,
    rule: &ReductionRule,
    max_m: usize,
    max_k: usize,
    allow_zero: bool,
) -> Result<Option<EquivalenceWitness>> {
    if !in_g_pi(g) || !in_g_pi(h) {
        return Err(Error::InvalidInput(
            "spectral equivalence is defined on networks with proper weights".into(),
        ));
    }
    let (tower_g, blocked_g) = tower(g, rule, max_m)?;
    let (tower_h, blocked_h) = tower(h, rule, max_k)?;
    let mut pairs: Vec<(usize, usize)> = (0..tower_g.len())
        .flat_map(|m| (0..tower_h.len()).map(move |k| (m, k)))
        .collect();
    pairs.sort_by_key(|&(m, k)| (m + k, m));
    for (m, k) in pairs {
        if !allow_zero && m == 0 && k == 0 {
            continue;
        }
        if let Some(iso) = isomorphic(&tower_g[m], &tower_h[k]) {
            return Ok(Some(EquivalenceWitness { m, k, iso }));
        }
    }
    if blocked_g || blocked_h {
        return Err(Error::RuleInapplicable(
            "rule shrank a network to a single vertex before a witness was found".into(),
        ));
    }
    Ok(None)
}

/// Iterated reductions [G, R(G), R^2(G), ...]; true when stopped because the
/// rule's next selection had one vertex or fewer.
fn tower(net: &Network, rule: &ReductionRule, max_steps: usize) -> Result<(Vec<Network>, bool)> {
    let mut out = vec![net.clone()];
    let mut blocked = false;
    for _ in 0..max_steps {
        let current = out.last().unwrap();
        let selection = match rule.select(current) {
            Ok(s) => s,
            Err(_) => {
                blocked = true;
                break;
            }
        };
        // reductions to one node lose all geometric content; stop before them
        if selection.len() <= 1 {
            blocked = true;
            break;
        }
        if selection.len() == current.n() {
            break; // fixed point
        }
        let reduced = reduce_onto(current, &selection)?;
        out.push(reduced.network);
    }
    Ok((out, blocked))
}

/// Evidence from the exhaustive matrix comparison: every valid reduction of
/// both matrices, and the matching pair when one exists.
#[derive(Clone, Debug)]
pub struct MatrixEquivalenceEvidence {
    pub reductions_a: Vec<(Vec<usize>, Mat<RatFunc>)>,
    pub reductions_b: Vec<(Vec<usize>, Mat<RatFunc>)>,
    /// (index into reductions_a, index into reductions_b, permutation)
    pub matched: Option<(usize, usize, Vec<usize>)>,
}

/// Tests whether two matrices reduce to a common matrix (up to simultaneous
/// row/column permutation) over any kept index set of the given dimension.
pub fn matrix_spectrally_equivalent(
    m1: &Mat<RatFunc>,
    m2: &Mat<RatFunc>,
    dim: usize,
) -> Result<(bool, MatrixEquivalenceEvidence)> {
    if dim < 2 {
        return Err(Error::InvalidInput(
            "reductions to one node are not considered".into(),
        ));
    }
    let reductions_a = all_reductions(m1, dim)?;
    let reductions_b = all_reductions(m2, dim)?;
    let perms = permutations(dim);
    for (ia, (_, ra)) in reductions_a.iter().enumerate() {
        for (ib, (_, rb)) in reductions_b.iter().enumerate() {
            for perm in &perms {
                if permuted_equal(ra, rb, perm) {
                    let evidence = MatrixEquivalenceEvidence {
                        reductions_a,
                        reductions_b,
                        matched: Some((ia, ib, perm.clone())),
                    };
                    return Ok((true, evidence));
                }
            }
        }
    }
    Ok((
        false,
        MatrixEquivalenceEvidence { reductions_a, reductions_b, matched: None },
    ))
}

/// All reductions of `m` onto index sets of the given size for which the
/// shifted complement block is invertible over the function field.
pub fn all_reductions(m: &Mat<RatFunc>, dim: usize) -> Result<Vec<(Vec<usize>, Mat<RatFunc>)>> {
    let n = m.require_square()?;
    let mut out = Vec::new();
    for keep in subsets_of_size(n, dim) {
        let part = Partition::new(n, &keep)?;
        let valid = {
            let blocks = crate::reduction::split_blocks(m, &part)?;
            part.complement().is_empty() || {
                let shifted = blocks.comp_comp.sub_scalar_diag(&RatFunc::lambda())?;
                !det(&shifted)?.is_zero()
            }
        };
        if valid {
            out.push((keep.clone(), reduce_matrix(m, &part)?));
        }
    }
    Ok(out)
}

/// `a == P b P^T` for the permutation given as image list (0-based).
fn permuted_equal(a: &Mat<RatFunc>, b: &Mat<RatFunc>, perm: &[usize]) -> bool {
    let d = a.rows();
    if b.rows() != d || perm.len() != d {
        return false;
    }
    for r in 0..d {
        for c in 0..d {
            if a.at(r, c) != b.at(perm[r], perm[c]) {
                return false;
            }
        }
    }
    true
}

fn permutations(d: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..d).collect();
    heap_permute(&mut items, d, &mut out);
    out
}

fn heap_permute(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == 1 {
        out.push(items.clone());
        return;
    }
    for i in 0..k {
        heap_permute(items, k - 1, out);
        if k % 2 == 0 {
            items.swap(i, k - 1);
        } else {
            items.swap(0, k - 1);
        }
    }
}

/// sigma(M) and sigma(M_cc) are disjoint: the reduction loses no eigenvalue.
pub fn seq_condition(m: &Mat<RatFunc>, part: &Partition) -> Result<bool> {
    let sigma_m = spectrum(m)?;
    if part.complement().is_empty() {
        return Ok(true);
    }
    let blocks = crate::reduction::split_blocks(m, part)?;
    let sigma_comp = spectrum(&blocks.comp_comp)?;
    Ok(!sigma_m.intersects(&sigma_comp, MULTISET_MATCH_TOLERANCE))
}

/// Spectrum comparison helper for the seq-condition consequence
/// sigma(M) = sigma(R).
pub fn spectra_agree(m: &Mat<RatFunc>, r: &Mat<RatFunc>, tol: f64) -> Result<bool> {
    let a: SpectrumMultiset = spectrum(m)?;
    let b: SpectrumMultiset = spectrum(r)?;
    Ok(a.approx_eq(&b, tol))
}
