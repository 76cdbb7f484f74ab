//! Rational functions p(lambda)/q(lambda) in lowest terms: the weight field.
//!
//! Invariants enforced on construction: the denominator is monic and nonzero,
//! and gcd(num, den) = 1, so equality is structural equality.

use num_complex::Complex64;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::gauss::GaussianRational;
use super::poly::Poly;
use crate::error::{Error, Result};

/// Default tolerance on |q(z)| below which numeric evaluation refuses.
pub const DEFAULT_POLE_TOLERANCE: f64 = 1e-10;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    /// Builds `num/den` reduced to coprime form with monic denominator.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZeroFunction);
        }
        if num.is_zero() {
            return Ok(Self { num, den: Poly::one() });
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        let lc = den.leading().expect("nonzero denominator").clone();
        if lc.is_one() {
            Ok(Self { num, den })
        } else {
            let inv = lc.inv().expect("leading coefficient nonzero");
            Ok(Self {
                num: num.scale(&inv),
                den: den.monic(),
            })
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        Self { num: p, den: Poly::one() }
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(GaussianRational::from_int(n))
    }

    pub fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    /// The identity function `lambda`.
    pub fn lambda() -> Self {
        Self::from_poly(Poly::lambda())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Some(c) when the function is the constant c.
    pub fn as_constant(&self) -> Option<GaussianRational> {
        if self.num.is_constant() && self.den.is_one() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZeroFunction);
        }
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZeroFunction);
        }
        Self::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    /// deg(num) + deg(den); used as a pivot-size heuristic in elimination.
    pub fn total_degree(&self) -> usize {
        self.num.degree().unwrap_or(0) + self.den.degree().unwrap_or(0)
    }

    /// True iff deg(num) <= deg(den); the zero function is proper.
    pub fn is_proper(&self) -> bool {
        match self.num.degree() {
            None => true,
            Some(dn) => dn <= self.den.degree().unwrap_or(0),
        }
    }

    /// Exact value p(z)/q(z); fails with [`Error::PoleError`] when q(z) = 0.
    pub fn eval_exact(&self, z: &GaussianRational) -> Result<GaussianRational> {
        let d = self.den.eval(z);
        if d.is_zero() {
            return Err(Error::PoleError);
        }
        Ok(&self.num.eval(z) / &d)
    }

    /// Floating-point value with a guard against near-pole blowup.
    pub fn eval_numeric(&self, z: Complex64, pole_tol: f64) -> Result<Complex64> {
        let d = self.den.eval_c64(z);
        if d.norm() < pole_tol {
            return Err(Error::NearPoleError {
                magnitude: d.norm(),
                tolerance: pole_tol,
            });
        }
        let v = self.num.eval_c64(z) / d;
        if !v.re.is_finite() || !v.im.is_finite() {
            return Err(Error::NonFiniteValue);
        }
        Ok(v)
    }

    /// Canonical literal: `num` or `num/den`, e.g. `-2/l`, `1/l^2`.
    pub fn to_literal(&self) -> String {
        if self.den.is_one() {
            self.num.to_literal()
        } else {
            format!("{}/{}", self.num.to_literal(), self.den.to_literal())
        }
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
        .expect("nonzero denominators")
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(
            &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
        .expect("nonzero denominators")
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        // cross-cancel before multiplying to keep degrees down
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n1 = if g1.is_one() { self.num.clone() } else { self.num.div_rem(&g1).0 };
        let d2 = if g1.is_one() { rhs.den.clone() } else { rhs.den.div_rem(&g1).0 };
        let n2 = if g2.is_one() { rhs.num.clone() } else { rhs.num.div_rem(&g2).0 };
        let d1 = if g2.is_one() { self.den.clone() } else { self.den.div_rem(&g2).0 };
        RatFunc::new(&n1 * &n2, &d1 * &d2).expect("nonzero denominators")
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    /// Panics on division by the zero function; see [`RatFunc::checked_div`].
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self.checked_div(rhs).expect("division by zero RatFunc")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! owned_ops {
    ($($trait:ident, $m:ident);*) => {$(
        impl $trait for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                (&self).$m(&rhs)
            }
        }
    )*};
}
owned_ops!(Add, add; Sub, sub; Mul, mul; Div, div);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_literal())
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_literal())
    }
}

impl std::str::FromStr for RatFunc {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        super::parse::parse_ratfunc(s)
    }
}
