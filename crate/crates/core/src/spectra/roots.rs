//! Polynomial root finding over the Gaussian rationals.
//!
//! Multiplicities come from an exact square-free decomposition (Yun), so the
//! numeric solver only ever sees simple roots. Exact roots are found by
//! solving degree <= 2 factors in closed form and by snapping numeric roots
//! to small-denominator Gaussian rationals, each verified by exact
//! evaluation before being reported as exact.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::ratfield::{GaussianRational, Poly};

/// Residual bound for numeric roots, relative to the max coefficient size.
pub const ROOT_RESIDUAL: f64 = 1e-9;

/// A root of the characteristic numerator: exact or verified numeric.
#[derive(Clone, Debug, PartialEq)]
pub enum RootValue {
    Exact(GaussianRational),
    Approx { value: Complex64, residual: f64 },
}

impl RootValue {
    pub fn to_c64(&self) -> Complex64 {
        match self {
            RootValue::Exact(g) => g.to_c64(),
            RootValue::Approx { value, .. } => *value,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, RootValue::Exact(_))
    }

    pub fn as_exact(&self) -> Option<&GaussianRational> {
        match self {
            RootValue::Exact(g) => Some(g),
            _ => None,
        }
    }
}

/// Yun square-free decomposition of a nonzero polynomial: returns monic
/// square-free factors with their multiplicities, pairwise coprime.
pub fn squarefree_decomposition(p: &Poly) -> Vec<(Poly, usize)> {
    let f = p.monic();
    if f.degree().unwrap_or(0) == 0 {
        return vec![];
    }
    let df = f.derivative();
    let g0 = f.gcd(&df);
    if g0.is_one() {
        return vec![(f, 1)];
    }
    let mut out = Vec::new();
    let mut c = f.div_rem(&g0).0;
    let mut d = &df.div_rem(&g0).0 - &c.derivative();
    let mut i = 1;
    while !c.is_one() {
        let a = c.gcd(&d);
        if a.degree().unwrap_or(0) > 0 {
            out.push((a.clone(), i));
        }
        c = c.div_rem(&a).0;
        d = &d.div_rem(&a).0 - &c.derivative();
        i += 1;
    }
    out
}

/// Closed-form roots for degree 1 and 2 when they lie in Q(i).
fn exact_low_degree_roots(f: &Poly) -> Option<Vec<GaussianRational>> {
    match f.degree() {
        Some(1) => {
            let root = &(-&f.coeff(0)) / &f.coeff(1);
            Some(vec![root])
        }
        Some(2) => {
            let (a, b, c) = (f.coeff(2), f.coeff(1), f.coeff(0));
            let four = GaussianRational::from_int(4);
            let disc = &(&b * &b) - &(&four * &(&a * &c));
            let s = disc.sqrt_exact()?;
            let two_a = &GaussianRational::from_int(2) * &a;
            let r1 = &(&(-&b) + &s) / &two_a;
            let r2 = &(&(-&b) - &s) / &two_a;
            Some(vec![r1, r2])
        }
        _ => None,
    }
}

/// Best rational approximation with bounded denominator (continued fractions).
fn limit_denominator(x: f64, max_den: u64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    let exact = BigRational::from_float(x)?;
    let max_den = BigInt::from(max_den);
    if exact.denom() <= &max_den {
        return Some(exact);
    }
    // convergents of the continued fraction of |x|
    let neg = exact.is_negative();
    let mut frac = exact.abs();
    let (mut h0, mut h1) = (BigInt::from(0), BigInt::from(1));
    let (mut k0, mut k1) = (BigInt::from(1), BigInt::from(0));
    loop {
        let a = frac.numer() / frac.denom(); // floor
        let h2 = &a * &h1 + &h0;
        let k2 = &a * &k1 + &k0;
        if k2 > max_den {
            break;
        }
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        let rem = &frac - BigRational::from_integer(a);
        if rem.is_zero() {
            break;
        }
        frac = rem.recip();
    }
    if k1.is_zero() {
        return None;
    }
    let approx = BigRational::new(h1, k1);
    Some(if neg { -approx } else { approx })
}

/// Candidate Gaussian rationals near z, smallest denominators first.
fn snap_candidates(z: Complex64) -> Vec<GaussianRational> {
    let mut out = Vec::new();
    for max_den in [1u64, 2, 4, 12, 60, 1000, 1_000_000] {
        let (Some(re), Some(im)) = (
            limit_denominator(z.re, max_den),
            limit_denominator(z.im, max_den),
        ) else {
            continue;
        };
        let cand = GaussianRational::new(re, im);
        if out.last() != Some(&cand) {
            out.push(cand);
        }
    }
    out
}

fn max_coeff_norm(p: &Poly) -> f64 {
    p.coeffs()
        .iter()
        .map(|c| c.to_c64().norm())
        .fold(0.0, f64::max)
}

/// Aberth–Ehrlich iteration for a polynomial with simple roots.
fn aberth(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let deg = coeffs.len() - 1;
    let lead = coeffs[deg];
    if lead.norm() == 0.0 || coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
        return Err(Error::NumericFailure(
            "coefficients not representable in double precision".into(),
        ));
    }
    let eval = |z: Complex64| {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for c in coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    };
    // Cauchy-style inclusion radius
    let radius = 1.0
        + coeffs[..deg]
            .iter()
            .map(|c| (c / lead).norm())
            .fold(0.0, f64::max);
    let mut zs: Vec<Complex64> = (0..deg)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * (k as f64) / (deg as f64) + 0.4;
            radius * Complex64::new(theta.cos(), theta.sin()) * (0.5 + 0.5 * (k as f64 + 1.0) / (deg as f64))
        })
        .collect();
    for _ in 0..400 {
        let mut max_step = 0.0f64;
        for i in 0..deg {
            let (p, dp) = eval(zs[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let newton = if dp.norm() > 0.0 { p / dp } else { p };
            let mut sum = Complex64::new(0.0, 0.0);
            for j in 0..deg {
                if j != i {
                    let d = zs[i] - zs[j];
                    if d.norm() > 1e-300 {
                        sum += Complex64::new(1.0, 0.0) / d;
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - newton * sum;
            let step = if denom.norm() > 1e-300 { newton / denom } else { newton };
            zs[i] -= step;
            max_step = max_step.max(step.norm() / (1.0 + zs[i].norm()));
        }
        if max_step < 1e-14 {
            break;
        }
    }
    // Newton polish
    for z in zs.iter_mut() {
        for _ in 0..4 {
            let (p, dp) = eval(*z);
            if dp.norm() > 1e-300 {
                *z -= p / dp;
            }
        }
    }
    Ok(zs)
}

/// All roots of `p` with multiplicities; exact where the root lies in Q(i),
/// verified numeric otherwise.
pub fn poly_roots(p: &Poly) -> Result<Vec<(RootValue, usize)>> {
    if p.is_zero() {
        return Err(Error::InvalidInput("zero polynomial".into()));
    }
    let scale = max_coeff_norm(p).max(1e-300);
    let mut out = Vec::new();
    for (factor, mult) in squarefree_decomposition(p) {
        let mut f = factor;
        loop {
            let deg = f.degree().unwrap_or(0);
            if deg == 0 {
                break;
            }
            if let Some(roots) = exact_low_degree_roots(&f) {
                for r in roots {
                    debug_assert!(f.eval(&r).is_zero());
                    out.push((RootValue::Exact(r), mult));
                }
                break;
            }
            let coeffs: Vec<Complex64> = f.coeffs().iter().map(|c| c.to_c64()).collect();
            let approx = aberth(&coeffs)?;
            let snapped = approx.iter().find_map(|&z| {
                snap_candidates(z)
                    .into_iter()
                    .find(|cand| f.eval(cand).is_zero())
            });
            match snapped {
                Some(root) => {
                    // deflate exactly and keep going on the quotient
                    let linear = Poly::new(vec![-&root, GaussianRational::one()]);
                    let (q, rem) = f.div_rem(&linear);
                    debug_assert!(rem.is_zero());
                    out.push((RootValue::Exact(root), mult));
                    f = q;
                }
                None => {
                    for z in approx {
                        let residual = p.eval_c64(z).norm();
                        if residual > ROOT_RESIDUAL * scale {
                            return Err(Error::NumericFailure(format!(
                                "residual {residual:e} exceeds {ROOT_RESIDUAL:e} * {scale:e}"
                            )));
                        }
                        out.push((RootValue::Approx { value: z, residual }, mult));
                    }
                    break;
                }
            }
        }
    }
    Ok(out)
}
