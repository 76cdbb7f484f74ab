//! Characteristic function, eigenvalue multisets, eigenvectors, generalized
//! eigenvector chains and multiplicity reports.
//!
//! The spectrum of a matrix over the function field is the multiset of roots
//! of det(M(lambda) - lambda I) = 0, which can hold more than `dim` values;
//! nothing here assumes the characteristic numerator has degree <= dim.

pub mod roots;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, det, in_span, nullspace, Mat};
use crate::ratfield::{GaussianRational, Poly, RatFunc};

pub use roots::{poly_roots, squarefree_decomposition, RootValue, ROOT_RESIDUAL};

/// Tolerance for matching numeric eigenvalues between multisets.
pub const MULTISET_MATCH_TOLERANCE: f64 = 1e-7;

/// det(M(lambda) - lambda I) as a reduced rational function.
///
/// Constant matrices take the trace-recursion route (matrix products over
/// the scalar field only); general function-field matrices go through exact
/// elimination.
pub fn char_function(m: &Mat<RatFunc>) -> Result<RatFunc> {
    if let Ok(constant) = linalg::as_constant(m) {
        return Ok(RatFunc::from_poly(char_poly_constant(&constant)?));
    }
    det(&m.sub_scalar_diag(&RatFunc::lambda())?)
}

/// det(M - lambda I) for a constant matrix by the Faddeev-LeVerrier
/// recursion: N_1 = I, B_k = M N_k, a_{n-k} = -tr(B_k)/k,
/// N_{k+1} = B_k + a_{n-k} I gives det(lambda I - M) = l^n + sum a_j l^j.
fn char_poly_constant(m: &Mat<GaussianRational>) -> Result<Poly> {
    let n = m.require_square()?;
    if n == 0 {
        return Ok(Poly::one());
    }
    let mut coeffs = vec![GaussianRational::zero(); n + 1];
    coeffs[n] = GaussianRational::one();
    let mut nk = Mat::identity(n);
    for k in 1..=n {
        let bk = m.mul(&nk);
        let mut tr = GaussianRational::zero();
        for d in 0..n {
            tr = &tr + bk.at(d, d);
        }
        let a = &(-&tr) / &GaussianRational::from_int(k as i64);
        coeffs[n - k] = a.clone();
        if k < n {
            nk = bk;
            for d in 0..n {
                let bumped = nk.at(d, d) + &a;
                *nk.at_mut(d, d) = bumped;
            }
        }
    }
    let monic = Poly::new(coeffs); // det(lambda I - M)
    Ok(if n % 2 == 0 { monic } else { -&monic })
}

/// Eigenvalue multiset: roots of the characteristic numerator.
pub fn spectrum(m: &Mat<RatFunc>) -> Result<SpectrumMultiset> {
    let cf = char_function(m)?;
    if cf.is_zero() {
        return Err(Error::InvalidInput(
            "zero characteristic function: every point is an eigenvalue".into(),
        ));
    }
    Ok(SpectrumMultiset::from_roots(poly_roots(cf.num())?))
}

/// Spectrum of a constant matrix.
pub fn spectrum_constant(m: &Mat<GaussianRational>) -> Result<SpectrumMultiset> {
    spectrum(&linalg::lift_constant(m))
}

/// Entrywise exact evaluation of a function-field matrix.
pub fn eval_matrix(m: &Mat<RatFunc>, lambda0: &GaussianRational) -> Result<Mat<GaussianRational>> {
    m.try_map(|f| f.eval_exact(lambda0))
}

/// Eigenvalues with multiplicities; union/difference follow the clamped
/// multiset rules, with numeric roots matched within a tolerance.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumMultiset {
    entries: Vec<(RootValue, usize)>,
}

impl SpectrumMultiset {
    pub fn empty() -> Self {
        Self { entries: vec![] }
    }

    pub fn from_roots(mut roots: Vec<(RootValue, usize)>) -> Self {
        // merge exact duplicates, keep a canonical (re, im) order
        let mut merged: Vec<(RootValue, usize)> = Vec::new();
        for (r, m) in roots.drain(..) {
            if let RootValue::Exact(ref g) = r {
                if let Some(slot) = merged.iter_mut().find(|(e, _)| e.as_exact() == Some(g)) {
                    slot.1 += m;
                    continue;
                }
            }
            merged.push((r, m));
        }
        merged.sort_by(|(a, _), (b, _)| {
            let (za, zb) = (a.to_c64(), b.to_c64());
            za.re
                .total_cmp(&zb.re)
                .then(za.im.total_cmp(&zb.im))
                .then(b.is_exact().cmp(&a.is_exact()))
        });
        Self { entries: merged }
    }

    pub fn from_exact(values: &[(GaussianRational, usize)]) -> Self {
        Self::from_roots(
            values
                .iter()
                .map(|(g, m)| (RootValue::Exact(g.clone()), *m))
                .collect(),
        )
    }

    pub fn entries(&self) -> &[(RootValue, usize)] {
        &self.entries
    }

    /// Total count, multiplicities included.
    pub fn total(&self) -> usize {
        self.entries.iter().map(|(_, m)| m).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn all_exact(&self) -> bool {
        self.entries.iter().all(|(r, _)| r.is_exact())
    }

    pub fn multiplicity_of_exact(&self, g: &GaussianRational) -> usize {
        self.entries
            .iter()
            .filter(|(r, _)| r.as_exact() == Some(g))
            .map(|(_, m)| m)
            .sum()
    }

    fn match_position(&self, target: &RootValue, tol: f64) -> Option<usize> {
        // exact-to-exact equality first, then numeric proximity
        if let Some(g) = target.as_exact() {
            if let Some(k) = self
                .entries
                .iter()
                .position(|(r, m)| *m > 0 && r.as_exact() == Some(g))
            {
                return Some(k);
            }
        }
        let z = target.to_c64();
        self.entries
            .iter()
            .position(|(r, m)| *m > 0 && (r.to_c64() - z).norm() <= tol)
    }

    /// Multiset union: multiplicities add.
    pub fn union(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (r, m) in &other.entries {
            match out.match_position(r, MULTISET_MATCH_TOLERANCE) {
                Some(k) if out.entries[k].0.is_exact() == r.is_exact() => out.entries[k].1 += m,
                _ => out.entries.push((r.clone(), *m)),
            }
        }
        Self::from_roots(out.entries)
    }

    /// Clamped multiset difference: multiplicities subtract, floor at zero.
    pub fn difference(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (r, m) in &other.entries {
            let mut remaining = *m;
            while remaining > 0 {
                match out.match_position(r, MULTISET_MATCH_TOLERANCE) {
                    Some(k) => {
                        let take = remaining.min(out.entries[k].1);
                        out.entries[k].1 -= take;
                        remaining -= take;
                        if out.entries[k].1 == 0 {
                            out.entries.remove(k);
                        }
                    }
                    None => break,
                }
            }
        }
        Self::from_roots(out.entries)
    }

    /// Multiset inclusion honoring multiplicities.
    pub fn subset_of(&self, other: &Self) -> bool {
        let mut pool = other.clone();
        for (r, m) in &self.entries {
            for _ in 0..*m {
                match pool.match_position(r, MULTISET_MATCH_TOLERANCE) {
                    Some(k) => {
                        pool.entries[k].1 -= 1;
                        if pool.entries[k].1 == 0 {
                            pool.entries.remove(k);
                        }
                    }
                    None => return false,
                }
            }
        }
        true
    }

    /// True when some element matches between the two multisets.
    pub fn intersects(&self, other: &Self, tol: f64) -> bool {
        self.entries
            .iter()
            .any(|(r, _)| other.match_position(r, tol).is_some())
    }

    /// Flattened values with multiplicity, sorted by (re, im).
    pub fn flatten_c64(&self) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(self.total());
        for (r, m) in &self.entries {
            for _ in 0..*m {
                out.push(r.to_c64());
            }
        }
        out.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        out
    }

    /// Equality within tolerance: greedy pairing after sorting by (re, im).
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        let (a, b) = (self.flatten_c64(), other.flatten_c64());
        a.len() == b.len()
            && a.iter()
                .zip(b.iter())
                .all(|(x, y)| (x - y).norm() <= tol)
    }
}

/// An eigenvector together with its generalized-eigenvector chain at a fixed
/// lambda0: `vectors[0]` is the eigenvector, `vectors[k]` has rank k+1 and
/// maps to `vectors[k-1]` under (M(lambda0) - lambda0 I).
#[derive(Clone, Debug, PartialEq)]
pub struct ChainData {
    pub lambda0: GaussianRational,
    pub vectors: Vec<Vec<GaussianRational>>,
}

impl ChainData {
    pub fn depth(&self) -> usize {
        self.vectors.len()
    }

    pub fn eigenvector(&self) -> &[GaussianRational] {
        &self.vectors[0]
    }

    /// Verifies every chain link exactly against the given matrix.
    pub fn verify(&self, m: &Mat<RatFunc>) -> Result<bool> {
        let b = eval_matrix(m, &self.lambda0)?
            .sub_scalar_diag(&self.lambda0)?;
        let zero = vec![GaussianRational::zero(); b.rows()];
        let mut expectation = zero.clone();
        for v in &self.vectors {
            if b.mul_vec(v) != expectation {
                return Ok(false);
            }
            expectation = v.clone();
        }
        Ok(self.vectors[0] != zero)
    }

    /// Canonical form: eigenvector scaled to first nonzero entry 1 and every
    /// later member zeroed at that index by chain-preserving shifts.
    pub fn canonicalize(&self) -> ChainData {
        let Some(j) = self.vectors[0].iter().position(|x| !x.is_zero()) else {
            return self.clone();
        };
        let scale = self.vectors[0][j].inv().expect("nonzero entry");
        let mut vecs: Vec<Vec<GaussianRational>> = self
            .vectors
            .iter()
            .map(|v| v.iter().map(|x| x * &scale).collect())
            .collect();
        // subtracting alpha * (k-1 positions lower) from every member k..end
        // preserves the chain relation; use it to zero index j in each member
        for k in 1..vecs.len() {
            let alpha = vecs[k][j].clone();
            if alpha.is_zero() {
                continue;
            }
            for m in (k..vecs.len()).rev() {
                let lower = vecs[m - k].clone();
                for (x, l) in vecs[m].iter_mut().zip(lower) {
                    *x = &*x - &(&alpha * &l);
                }
            }
        }
        ChainData { lambda0: self.lambda0.clone(), vectors: vecs }
    }
}

/// Exact eigenspace basis of M(lambda0) for lambda0, canonically normalized.
pub fn eigenvectors_at(
    m: &Mat<RatFunc>,
    lambda0: &GaussianRational,
) -> Result<Vec<Vec<GaussianRational>>> {
    let b = eval_matrix(m, lambda0)?.sub_scalar_diag(lambda0)?;
    let basis = nullspace(&b);
    if basis.is_empty() {
        return Err(Error::NotAnEigenvalue);
    }
    Ok(basis)
}

/// Numeric eigenspace basis at an approximate eigenvalue.
pub fn eigenvectors_at_numeric(
    m: &Mat<RatFunc>,
    z: Complex64,
    rank_tol: f64,
) -> Result<Vec<Vec<Complex64>>> {
    let n = m.require_square()?;
    let mut rows = Vec::with_capacity(n);
    for r in 0..n {
        let mut row = Vec::with_capacity(n);
        for c in 0..n {
            let mut v = m.at(r, c).eval_numeric(z, 1e-12)?;
            if r == c {
                v -= z;
            }
            row.push(v);
        }
        rows.push(row);
    }
    let basis = numeric_nullspace(rows, rank_tol);
    if basis.is_empty() {
        return Err(Error::NotAnEigenvalue);
    }
    Ok(basis)
}

/// Floating-point nullspace by Gaussian elimination with magnitude pivoting.
pub fn numeric_nullspace(mut m: Vec<Vec<Complex64>>, tol: f64) -> Vec<Vec<Complex64>> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let scale = m
        .iter()
        .flatten()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
        .max(1.0);
    let threshold = tol * scale;
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let best = (row..rows).max_by(|&a, &b| m[a][col].norm().total_cmp(&m[b][col].norm()));
        let Some(p) = best else { continue };
        if m[p][col].norm() <= threshold {
            continue;
        }
        m.swap(row, p);
        let inv = Complex64::new(1.0, 0.0) / m[row][col];
        for c in col..cols {
            m[row][c] *= inv;
        }
        for r in 0..rows {
            if r != row {
                let f = m[r][col];
                if f.norm() > 0.0 {
                    for c in col..cols {
                        let delta = f * m[row][c];
                        m[r][c] -= delta;
                    }
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for f in (0..cols).filter(|c| !pivot_set.contains(c)) {
        let mut v = vec![Complex64::new(0.0, 0.0); cols];
        v[f] = Complex64::new(1.0, 0.0);
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[r][f];
        }
        // normalize first significant entry to 1
        if let Some(lead) = v.iter().position(|z| z.norm() > tol) {
            let inv = Complex64::new(1.0, 0.0) / v[lead];
            for z in v.iter_mut() {
                *z *= inv;
            }
        }
        basis.push(v);
    }
    basis
}

/// Maximal generalized-eigenvector chain of the requested depth at lambda0.
///
/// Fails with [`Error::ChainTerminated`] as soon as the nullspaces of the
/// powers stop growing before the requested depth is reached.
pub fn generalized_chain(
    m: &Mat<RatFunc>,
    lambda0: &GaussianRational,
    depth: usize,
) -> Result<ChainData> {
    if depth == 0 {
        return Err(Error::InvalidInput("chain depth must be at least 1".into()));
    }
    let b = eval_matrix(m, lambda0)?.sub_scalar_diag(lambda0)?;
    let mut kernels: Vec<Vec<Vec<GaussianRational>>> = Vec::with_capacity(depth);
    let mut power = b.clone();
    for k in 1..=depth {
        let kernel = nullspace(&power);
        let prev_dim = if k == 1 { 0 } else { kernels[k - 2].len() };
        if kernel.len() == prev_dim {
            return if k == 1 {
                Err(Error::NotAnEigenvalue)
            } else {
                Err(Error::ChainTerminated { rank: k })
            };
        }
        kernels.push(kernel);
        if k < depth {
            power = power.mul(&b);
        }
    }
    // pick a top vector in ker(B^depth) outside ker(B^(depth-1))
    let lower: &[Vec<GaussianRational>] = if depth == 1 {
        &[]
    } else {
        &kernels[depth - 2]
    };
    let top = kernels[depth - 1]
        .iter()
        .find(|v| !in_span(lower, v))
        .expect("dimension growth guarantees a candidate")
        .clone();
    let mut vectors = vec![top];
    for _ in 1..depth {
        let next = b.mul_vec(vectors.last().unwrap());
        vectors.push(next);
    }
    vectors.reverse();
    Ok(ChainData { lambda0: lambda0.clone(), vectors })
}

/// Algebraic and geometric multiplicity at lambda0; the defect a - g is
/// reported only for constant matrices, where generalized-eigenvector counts
/// are meaningful.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiplicityReport {
    pub lambda0: GaussianRational,
    pub algebraic: usize,
    pub geometric: usize,
    pub defect: Option<usize>,
}

pub fn multiplicities(m: &Mat<RatFunc>, lambda0: &GaussianRational) -> Result<MultiplicityReport> {
    let cf = char_function(m)?;
    let algebraic = root_multiplicity(cf.num(), lambda0);
    let b = eval_matrix(m, lambda0)?.sub_scalar_diag(lambda0)?;
    let geometric = nullspace(&b).len();
    if algebraic == 0 && geometric == 0 {
        return Err(Error::NotAnEigenvalue);
    }
    let constant = (0..m.rows()).all(|r| (0..m.cols()).all(|c| m.at(r, c).is_constant()));
    Ok(MultiplicityReport {
        lambda0: lambda0.clone(),
        algebraic,
        geometric,
        defect: constant.then(|| algebraic - geometric),
    })
}

/// Multiplicity of `root` in `p` by repeated exact division.
pub fn root_multiplicity(p: &Poly, root: &GaussianRational) -> usize {
    let linear = Poly::new(vec![-root, GaussianRational::one()]);
    let mut count = 0;
    let mut cur = p.clone();
    while !cur.is_zero() {
        let (q, r) = cur.div_rem(&linear);
        if !r.is_zero() {
            break;
        }
        count += 1;
        cur = q;
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netgraph::example_network;
    use crate::ratfield::{parse_gauss_vector, parse_ratfunc};

    fn rf(s: &str) -> RatFunc {
        parse_ratfunc(s).unwrap()
    }

    fn g(s: &str) -> GaussianRational {
        crate::ratfield::parse_gauss(s).unwrap()
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
    fn char_function_goldens() {
        let net = example_network();

        let r124 = mat(&[&["0", "1", "0"], &["0", "0", "1/l"], &["-1", "0", "-2/l"]]);
        assert_eq!(char_function(&r124).unwrap(), rf("-1*l^4-2*l^2-1/l"));

        let r14 = mat(&[&["0", "1/l^2"], &["-1", "-2/l"]]);
        assert_eq!(char_function(&r14).unwrap(), rf("l^4+2*l^2+1/l^2"));

        assert_eq!(char_function(&net.adjacency()).unwrap(), rf("l^4+2*l^2+1"));

        assert_eq!(char_function(&mat(&[&["5"]])).unwrap(), rf("5-l"));
    }

    #[test]
    fn constant_route_matches_elimination_route() {
        // same matrix, two computation paths
        let constant = mat(&[
            &["1", "2i", "0"],
            &["-1/2", "3", "7"],
            &["0", "1", "-2"],
        ]);
        let fast = char_function(&constant).unwrap();
        let slow = det(&constant.sub_scalar_diag(&RatFunc::lambda()).unwrap()).unwrap();
        assert_eq!(fast, slow);
    }

    #[test]
    fn spectrum_of_example_is_pm_i_twice() {
        let net = example_network();
        let s = spectrum(&net.adjacency()).unwrap();
        assert!(s.all_exact());
        assert_eq!(s.total(), 4);
        assert_eq!(s.multiplicity_of_exact(&g("i")), 2);
        assert_eq!(s.multiplicity_of_exact(&g("-i")), 2);
    }

    #[test]
    fn spectrum_can_exceed_dimension() {
        // 1x1 matrix [1/l] has two eigenvalues
        let m = mat(&[&["1/l"]]);
        let s = spectrum(&m).unwrap();
        assert_eq!(s.total(), 2);
        assert_eq!(s.multiplicity_of_exact(&g("1")), 1);
        assert_eq!(s.multiplicity_of_exact(&g("-1")), 1);
    }

    #[test]
    fn identity_spectrum() {
        let m = mat(&[&["1", "0", "0"], &["0", "1", "0"], &["0", "0", "1"]]);
        let s = spectrum(&m).unwrap();
        assert_eq!(s.multiplicity_of_exact(&g("1")), 3);
    }

    #[test]
    fn multiset_rules() {
        let ii = SpectrumMultiset::from_exact(&[(g("i"), 2)]);
        let one_i = SpectrumMultiset::from_exact(&[(g("i"), 1)]);
        assert_eq!(ii.union(&one_i).multiplicity_of_exact(&g("i")), 3);

        let four = SpectrumMultiset::from_exact(&[(g("i"), 2), (g("-i"), 2)]);
        let zero = SpectrumMultiset::from_exact(&[(g("0"), 1)]);
        assert_eq!(four.difference(&zero), four);

        let clamped = one_i.difference(&ii);
        assert!(clamped.is_empty());

        assert!(one_i.subset_of(&four));
        assert!(!ii.subset_of(&one_i));
    }

    #[test]
    fn eigenvectors_of_example() {
        let net = example_network();
        let a = net.adjacency();
        let at_i = eigenvectors_at(&a, &g("i")).unwrap();
        assert_eq!(at_i.len(), 1);
        // span{(i,-1,-i,1)} normalized to first entry 1: (1, i, -1, -i)
        assert_eq!(at_i[0], parse_gauss_vector("1, i, -1, -i").unwrap());

        let at_mi = eigenvectors_at(&a, &g("-i")).unwrap();
        assert_eq!(at_mi[0], parse_gauss_vector("1, -i, -1, i").unwrap());

        assert_eq!(
            eigenvectors_at(&a, &g("3")),
            Err(Error::NotAnEigenvalue)
        );
    }

    #[test]
    fn chain_on_example_matches_display() {
        let net = example_network();
        let a = net.adjacency();
        let chain = generalized_chain(&a, &g("i"), 2).unwrap();
        assert!(chain.verify(&a).unwrap());

        // the displayed chain v = (-3, -2i, 1, 0) -> u = (i, -1, -i, 1)
        let displayed = ChainData {
            lambda0: g("i"),
            vectors: vec![
                parse_gauss_vector("i, -1, -i, 1").unwrap(),
                parse_gauss_vector("-3, -2i, 1, 0").unwrap(),
            ],
        };
        assert!(displayed.verify(&a).unwrap());
        assert_eq!(chain.canonicalize(), displayed.canonicalize());

        let canon = displayed.canonicalize();
        assert_eq!(canon.vectors[0], parse_gauss_vector("1, i, -1, -i").unwrap());
        assert_eq!(canon.vectors[1], parse_gauss_vector("0, 1, 2i, -3").unwrap());
    }

    #[test]
    fn chain_terminates_when_no_generalized_vector() {
        // R_S(i) from the worked example: algebraic 1 at i, no rank-2 vector
        let r = mat(&[&["0", "1", "0"], &["0", "0", "-i"], &["-1", "0", "2i"]]);
        assert_eq!(
            generalized_chain(&r, &g("i"), 2),
            Err(Error::ChainTerminated { rank: 2 })
        );
    }

    #[test]
    fn chain_recovered_after_second_reduction() {
        let r = mat(&[&["0", "-1"], &["-1", "2i"]]);
        let chain = generalized_chain(&r, &g("i"), 2).unwrap();
        assert_eq!(chain.depth(), 2);
        assert!(chain.verify(&r).unwrap());
    }

    #[test]
    fn multiplicity_reports() {
        let net = example_network();
        let rep = multiplicities(&net.adjacency(), &g("i")).unwrap();
        assert_eq!((rep.algebraic, rep.geometric, rep.defect), (2, 1, Some(1)));

        // lambda-dependent reduced matrix: defect undefined
        let r124 = mat(&[&["0", "1", "0"], &["0", "0", "1/l"], &["-1", "0", "-2/l"]]);
        let rep = multiplicities(&r124, &g("i")).unwrap();
        assert_eq!((rep.algebraic, rep.geometric, rep.defect), (2, 1, None));

        // evaluated at i the same matrix has algebraic multiplicity 1
        let r124_at_i = mat(&[&["0", "1", "0"], &["0", "0", "-i"], &["-1", "0", "2i"]]);
        let rep = multiplicities(&r124_at_i, &g("i")).unwrap();
        assert_eq!((rep.algebraic, rep.geometric, rep.defect), (1, 1, Some(0)));
    }

    #[test]
    fn numeric_spectrum_of_evaluated_reduction() {
        let r124_at_i = mat(&[&["0", "1", "0"], &["0", "0", "-i"], &["-1", "0", "2i"]]);
        let s = spectrum(&r124_at_i).unwrap();
        assert_eq!(s.total(), 3);
        assert_eq!(s.multiplicity_of_exact(&g("i")), 1);
        let numeric: Vec<Complex64> = s
            .entries()
            .iter()
            .filter(|(r, _)| !r.is_exact())
            .map(|(r, _)| r.to_c64())
            .collect();
        assert_eq!(numeric.len(), 2);
        let phi_hi = (1.0 + 5.0f64.sqrt()) / 2.0;
        let phi_lo = (1.0 - 5.0f64.sqrt()) / 2.0;
        assert!(numeric
            .iter()
            .any(|z| (z - Complex64::new(0.0, phi_hi)).norm() < 1e-9));
        assert!(numeric
            .iter()
            .any(|z| (z - Complex64::new(0.0, phi_lo)).norm() < 1e-9));
    }
}
