//! Dense univariate polynomials over the Gaussian rationals.
//!
//! Coefficients are stored in ascending degree with the leading coefficient
//! nonzero; the zero polynomial is the empty list.

use num_complex::Complex64;
use num_traits::{Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::gauss::{frac_literal, GaussianRational};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<GaussianRational>,
}

impl Poly {
    /// Builds a polynomial from ascending coefficients, trimming high zeros.
    pub fn new(mut coeffs: Vec<GaussianRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `lambda`.
    pub fn lambda() -> Self {
        Self::new(vec![GaussianRational::zero(), GaussianRational::one()])
    }

    /// `c * lambda^k`.
    pub fn monomial(c: GaussianRational, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![GaussianRational::zero(); k + 1];
        coeffs[k] = c;
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| GaussianRational::from_int(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> GaussianRational {
        self.coeffs.get(k).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn leading(&self) -> Option<&GaussianRational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.inv().expect("leading coefficient nonzero")),
        }
    }

    /// Horner evaluation at an exact point.
    pub fn eval(&self, z: &GaussianRational) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * z) + c;
        }
        acc
    }

    pub fn eval_c64(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c.to_c64();
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| &GaussianRational::from_int(k as i64) * c)
                .collect(),
        )
    }

    /// Euclidean division; panics if `div` is zero (internal callers guard).
    pub fn div_rem(&self, div: &Poly) -> (Poly, Poly) {
        let dd = div.degree().expect("division by zero polynomial");
        let lc_inv = div.leading().unwrap().inv().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() < dd + 1 {
            return (Poly::zero(), self.clone());
        }
        let qlen = rem.len() - dd;
        let mut quot = vec![GaussianRational::zero(); qlen];
        for k in (0..qlen).rev() {
            let lead = rem[k + dd].clone();
            if lead.is_zero() {
                continue;
            }
            let q = &lead * &lc_inv;
            for (j, dc) in div.coeffs.iter().enumerate() {
                rem[k + j] = &rem[k + j] - &(&q * dc);
            }
            quot[k] = q;
        }
        (Poly::new(quot), Poly::new(rem))
    }

    /// Monic greatest common divisor by the Euclidean algorithm.
    ///
    /// Remainders are re-normalized monic at every step; this leaves the gcd
    /// unchanged (it is defined up to units) and keeps the coefficient
    /// fractions from exploding along the remainder sequence.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.monic(), other.monic());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a
    }

    pub fn pow(&self, mut e: usize) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Canonical literal, descending degree, e.g. `l^2+1`, `-1*l^4-2*l^2-1`.
    pub fn to_literal(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        let mut first = true;
        for k in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            if first {
                out.push_str(&leading_term(c, k));
                first = false;
            } else {
                let (neg, body) = signed_term(c, k);
                out.push(if neg { '-' } else { '+' });
                out.push_str(&body);
            }
        }
        out
    }
}

fn mono(k: usize) -> String {
    match k {
        1 => "l".into(),
        _ => format!("l^{k}"),
    }
}

fn leading_term(c: &GaussianRational, k: usize) -> String {
    if k == 0 {
        return if c.re().is_zero() || c.im().is_zero() {
            c.to_literal()
        } else {
            format!("({})", c.to_literal())
        };
    }
    if c.im().is_zero() {
        if c.is_one() {
            mono(k)
        } else {
            format!("{}*{}", frac_literal(c.re()), mono(k))
        }
    } else {
        format!("({})*{}", c.to_literal(), mono(k))
    }
}

/// Splits a non-leading term into (is_negative, printed magnitude).
fn signed_term(c: &GaussianRational, k: usize) -> (bool, String) {
    if c.im().is_zero() {
        let neg = c.re().is_negative();
        let a = if neg { -c } else { c.clone() };
        let body = if k == 0 {
            frac_literal(a.re())
        } else if a.is_one() {
            mono(k)
        } else {
            format!("{}*{}", frac_literal(a.re()), mono(k))
        };
        (neg, body)
    } else if c.re().is_zero() {
        let neg = c.im().is_negative();
        let a = if neg { -c } else { c.clone() };
        let body = if k == 0 {
            a.to_literal()
        } else {
            format!("({})*{}", a.to_literal(), mono(k))
        };
        (neg, body)
    } else {
        let body = if k == 0 {
            format!("({})", c.to_literal())
        } else {
            format!("({})*{}", c.to_literal(), mono(k))
        };
        (false, body)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(&self.coeff(k) + &rhs.coeff(k));
        }
        Poly::new(out)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(&self.coeff(k) - &rhs.coeff(k));
        }
        Poly::new(out)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out =
            vec![GaussianRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_literal())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_literal())
    }
}
