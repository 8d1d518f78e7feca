//! Rational functions in the equivariant parameters.
//!
//! Stored as an unreduced numerator/denominator pair. Full multivariate
//! gcd is deliberately avoided: localization sums cancel at the end, so
//! equality by cross-multiplication plus a cheap content/monomial
//! normalization is all that correctness needs.

use std::fmt;

use crate::error::{Error, Result};
use crate::multipoly::MultiPoly;
use crate::rational::Rational;

#[derive(Clone)]
pub struct RationalFunction {
    num: MultiPoly,
    den: MultiPoly,
}

impl RationalFunction {
    /// Build `num / den`; the denominator must be a nonzero polynomial.
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let mut rf = RationalFunction { num, den };
        rf.normalize();
        Ok(rf)
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        let n = p.nvars();
        RationalFunction {
            num: p,
            den: MultiPoly::one(n),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        RationalFunction::from_poly(MultiPoly::constant(nvars, c))
    }

    pub fn one(nvars: usize) -> Self {
        RationalFunction::constant(nvars, Rational::one())
    }

    pub fn zero(nvars: usize) -> Self {
        RationalFunction::constant(nvars, Rational::zero())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        RationalFunction::from_poly(MultiPoly::var(nvars, i))
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn numer(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denom(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Cancel shared rational content and shared monomial factors, and fix
    /// the sign of the denominator's leading term. Keeps the pair small
    /// and the printed form deterministic without a full gcd.
    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = MultiPoly::one(self.den.nvars());
            return;
        }
        let (ncore, ncont, nshift) = self.num.primitive_part();
        let (dcore, dcont, dshift) = self.den.primitive_part();
        let common: Vec<u32> = nshift.iter().zip(&dshift).map(|(a, b)| *a.min(b)).collect();
        let remount = |core: &MultiPoly, shift: &[u32]| -> MultiPoly {
            let rest: Vec<u32> = shift.iter().zip(&common).map(|(s, c)| s - c).collect();
            if rest.iter().all(|&e| e == 0) {
                core.clone()
            } else {
                let mut mon = MultiPoly::one(core.nvars());
                for (i, &e) in rest.iter().enumerate() {
                    for _ in 0..e {
                        mon = mon.mul(&MultiPoly::var(core.nvars(), i));
                    }
                }
                core.mul(&mon)
            }
        };
        let scalar = ncont
            .div_exact(&dcont)
            .expect("denominator content nonzero");
        self.num = remount(&ncore, &nshift).scale(&scalar);
        self.den = remount(&dcore, &dshift);
        if let Some(c) = self.den.is_constant() {
            self.num = self.num.scale(&c.recip().expect("nonzero"));
            self.den = MultiPoly::one(self.den.nvars());
        }
    }

    pub fn add(&self, rhs: &RationalFunction) -> RationalFunction {
        let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
        let den = self.den.mul(&rhs.den);
        let mut rf = RationalFunction { num, den };
        rf.normalize();
        rf
    }

    pub fn sub(&self, rhs: &RationalFunction) -> RationalFunction {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> RationalFunction {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, rhs: &RationalFunction) -> RationalFunction {
        let mut rf = RationalFunction {
            num: self.num.mul(&rhs.num),
            den: self.den.mul(&rhs.den),
        };
        rf.normalize();
        rf
    }

    pub fn div(&self, rhs: &RationalFunction) -> Result<RationalFunction> {
        if rhs.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let mut rf = RationalFunction {
            num: self.num.mul(&rhs.den),
            den: self.den.mul(&rhs.num),
        };
        rf.normalize();
        Ok(rf)
    }

    pub fn recip(&self) -> Result<RationalFunction> {
        RationalFunction::one(self.nvars()).div(self)
    }

    pub fn scale(&self, c: &Rational) -> RationalFunction {
        let mut rf = RationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        };
        rf.normalize();
        rf
    }

    pub fn pow(&self, exp: i64) -> Result<RationalFunction> {
        let base = if exp < 0 { self.recip()? } else { self.clone() };
        let mut acc = RationalFunction::one(self.nvars());
        for _ in 0..exp.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Substitute numeric values for the parameters. Points that vanish
    /// the denominator are rejected rather than silently producing 0/0.
    pub fn substitute(&self, point: &[Rational]) -> Result<Rational> {
        let den = self.den.eval(point)?;
        if den.is_zero() {
            return Err(Error::VanishingDenominator);
        }
        self.num.eval(point)?.div_exact(&den)
    }

    /// `Some(c)` when the stored pair is literally `c / 1`.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.den.is_constant().is_some_and(|c| c.is_one()) {
            self.num.is_constant()
        } else {
            None
        }
    }

    /// Degree of a homogeneous rational function: numerator and
    /// denominator each homogeneous, degree the difference. `None` when
    /// either part is inhomogeneous; `Some(0)` for the zero function.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        if self.num.is_zero() {
            return Some(0);
        }
        let n = self.num.homogeneous_degree()?;
        let d = self.den.homogeneous_degree()?;
        Some(n as i64 - d as i64)
    }
}

/// Equality by cross-multiplication; no canonical form is required.
impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl Eq for RationalFunction {}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant().is_some_and(|c| c.is_one()) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Uniform entry point mirroring `rat_arith` one level up.
pub fn rf_arith(
    f: &RationalFunction,
    g: &RationalFunction,
    op: crate::rational::RatOp,
) -> Result<RationalFunction> {
    use crate::rational::RatOp;
    match op {
        RatOp::Add => Ok(f.add(g)),
        RatOp::Sub => Ok(f.sub(g)),
        RatOp::Mul => Ok(f.mul(g)),
        RatOp::Div => f.div(g),
    }
}
