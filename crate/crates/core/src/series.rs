//! Truncated Laurent series with exact rational coefficients.
//!
//! A series carries its variable tag, its lowest exponent, and an explicit
//! truncation bound: coefficients are reported for exponents in
//! `[lowest, trunc)` and never at or beyond `trunc`. Series are always
//! truncated, never lazy, so output files are reproducible.

use std::fmt;

use crate::error::{Error, Result};
use crate::rational::{factorial, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SeriesVar {
    Lambda,
    T,
}

impl fmt::Display for SeriesVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesVar::Lambda => write!(f, "lambda"),
            SeriesVar::T => write!(f, "t"),
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct LaurentSeries {
    var: SeriesVar,
    lowest: i64,
    /// Exclusive bound: coefficients live at exponents in `[lowest, trunc)`.
    trunc: i64,
    coeffs: Vec<Rational>,
}

impl LaurentSeries {
    pub fn new(var: SeriesVar, lowest: i64, trunc: i64, coeffs: Vec<Rational>) -> Result<Self> {
        if trunc < lowest {
            return Err(Error::invalid("truncation order below lowest exponent"));
        }
        if coeffs.len() as i64 != trunc - lowest {
            return Err(Error::invalid("coefficient count does not match window"));
        }
        Ok(LaurentSeries {
            var,
            lowest,
            trunc,
            coeffs,
        })
    }

    /// The zero series on the window `[trunc, trunc)`.
    pub fn zero(var: SeriesVar, trunc: i64) -> Self {
        LaurentSeries {
            var,
            lowest: trunc,
            trunc,
            coeffs: Vec::new(),
        }
    }

    pub fn var(&self) -> SeriesVar {
        self.var
    }

    pub fn lowest(&self) -> i64 {
        self.lowest
    }

    pub fn truncation(&self) -> i64 {
        self.trunc
    }

    /// Coefficient at `exp`. Exponents at or beyond the truncation bound
    /// are an error: the series carries no information there.
    pub fn coeff(&self, exp: i64) -> Result<Rational> {
        if exp >= self.trunc {
            return Err(Error::invalid(format!(
                "coefficient at {exp} requested beyond truncation {}",
                self.trunc
            )));
        }
        if exp < self.lowest {
            return Ok(Rational::zero());
        }
        Ok(self.coeffs[(exp - self.lowest) as usize].clone())
    }

    /// Nonzero coefficients in ascending exponent order.
    pub fn iter_nonzero(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.lowest + k as i64, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn check_var(&self, rhs: &LaurentSeries) -> Result<()> {
        if self.var != rhs.var {
            return Err(Error::invalid("series variable mismatch"));
        }
        Ok(())
    }

    pub fn add(&self, rhs: &LaurentSeries) -> Result<LaurentSeries> {
        self.check_var(rhs)?;
        let trunc = self.trunc.min(rhs.trunc);
        let lowest = self.lowest.min(rhs.lowest).min(trunc);
        let mut coeffs = vec![Rational::zero(); (trunc - lowest) as usize];
        for (k, c) in coeffs.iter_mut().enumerate() {
            let e = lowest + k as i64;
            if e >= self.lowest && e < self.trunc {
                *c += &self.coeffs[(e - self.lowest) as usize];
            }
            if e >= rhs.lowest && e < rhs.trunc {
                *c += &rhs.coeffs[(e - rhs.lowest) as usize];
            }
        }
        LaurentSeries::new(self.var, lowest, trunc, coeffs)
    }

    pub fn neg(&self) -> LaurentSeries {
        LaurentSeries {
            var: self.var,
            lowest: self.lowest,
            trunc: self.trunc,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, rhs: &LaurentSeries) -> Result<LaurentSeries> {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, c: &Rational) -> LaurentSeries {
        LaurentSeries {
            var: self.var,
            lowest: self.lowest,
            trunc: self.trunc,
            coeffs: self.coeffs.iter().map(|k| k * c).collect(),
        }
    }

    pub fn mul(&self, rhs: &LaurentSeries) -> Result<LaurentSeries> {
        self.check_var(rhs)?;
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            let trunc = (self.trunc + rhs.lowest).min(rhs.trunc + self.lowest);
            return Ok(LaurentSeries::zero(self.var, trunc));
        }
        let lowest = self.lowest + rhs.lowest;
        // Products against coefficients beyond either truncation are
        // unknown, so the window shrinks accordingly.
        let trunc = (self.trunc + rhs.lowest).min(rhs.trunc + self.lowest);
        let mut coeffs = vec![Rational::zero(); (trunc - lowest).max(0) as usize];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let e = self.lowest + i as i64 + rhs.lowest + j as i64;
                if e < trunc {
                    coeffs[(e - lowest) as usize] += &(a * b);
                }
            }
        }
        LaurentSeries::new(self.var, lowest, trunc, coeffs)
    }

    /// Restrict to a smaller truncation bound.
    pub fn truncate(&self, trunc: i64) -> LaurentSeries {
        if trunc >= self.trunc {
            return self.clone();
        }
        let lowest = self.lowest.min(trunc);
        let keep = (trunc - lowest).max(0) as usize;
        LaurentSeries {
            var: self.var,
            lowest,
            trunc,
            coeffs: self.coeffs.iter().take(keep).cloned().collect(),
        }
    }

    /// Multiplicative inverse. The coefficient at the lowest exponent must
    /// be nonzero; relative precision is preserved.
    pub fn recip(&self) -> Result<LaurentSeries> {
        let lead = self
            .coeffs
            .first()
            .cloned()
            .ok_or_else(|| Error::invalid("cannot invert an empty series"))?;
        if lead.is_zero() {
            return Err(Error::invalid("cannot invert: leading coefficient is zero"));
        }
        let n = self.coeffs.len();
        // u = self / (lead * x^lowest) is 1 + higher order; invert by the
        // triangular recurrence inv[k] = -sum_{j<k} inv[j] * u[k-j].
        let u: Vec<Rational> = self
            .coeffs
            .iter()
            .map(|c| c.div_exact(&lead).expect("lead nonzero"))
            .collect();
        let mut inv = vec![Rational::zero(); n];
        inv[0] = Rational::one();
        for k in 1..n {
            let mut acc = Rational::zero();
            for j in 0..k {
                acc += &(&inv[j] * &u[k - j]);
            }
            inv[k] = -acc;
        }
        let lead_inv = lead.recip()?;
        let coeffs: Vec<Rational> = inv.iter().map(|c| c * &lead_inv).collect();
        LaurentSeries::new(self.var, -self.lowest, -self.lowest + n as i64, coeffs)
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.iter_nonzero() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}*{}^{}", c, self.var, e)?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O({}^{})", self.var, self.trunc)
    }
}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// `sin(c*x)` as a power series in `x` up to exponent `trunc` (exclusive).
fn sin_series(var: SeriesVar, c: &Rational, trunc: i64) -> LaurentSeries {
    let n = trunc.max(0) as usize;
    let mut coeffs = vec![Rational::zero(); n];
    let mut k = 0u64;
    loop {
        let e = 2 * k + 1;
        if e as i64 >= trunc {
            break;
        }
        let mut term = c.pow(e as i64).expect("positive exponent");
        term = term.div_exact(&factorial(e)).expect("factorial is nonzero");
        if k % 2 == 1 {
            term = -term;
        }
        coeffs[e as usize] = term;
        k += 1;
    }
    LaurentSeries::new(var, 0, trunc.max(0), coeffs).expect("valid window")
}

/// Laurent expansion of `1 / (4d sin^2(d*x/2))` in the `lambda` variable.
///
/// The pole order is exactly 2, so any `order` below `-2` yields an empty
/// window. `order` is the highest exponent reported (inclusive).
pub fn series_expand_sin_inverse_sq(d: u32, order: i64) -> Result<LaurentSeries> {
    if d == 0 {
        return Err(Error::invalid("degree must be positive"));
    }
    let trunc = order + 1;
    let rel = trunc + 2; // number of coefficients from the pole on
    if rel <= 0 {
        return LaurentSeries::new(SeriesVar::Lambda, trunc, trunc, Vec::new());
    }
    // sin(d*x/2)^2 = x^2 * u(x) with u a unit power series.
    let half_d = Rational::new(d as i64, 2)?;
    let s = sin_series(SeriesVar::Lambda, &half_d, rel + 2);
    let s2 = s.mul(&s)?;
    // shift down by x^2: u has window [0, rel)
    let u = LaurentSeries::new(
        SeriesVar::Lambda,
        0,
        rel,
        (0..rel)
            .map(|k| s2.coeff(k + 2).expect("inside window"))
            .collect(),
    )?;
    let u_inv = u.recip()?;
    let scale = Rational::new(1, 4 * d as i64)?;
    // multiply by x^-2 / (4d)
    let coeffs: Vec<Rational> = u_inv.coeffs.iter().map(|c| c * &scale).collect();
    LaurentSeries::new(SeriesVar::Lambda, -2, trunc, coeffs)
}
