//! Multivariate polynomials in the equivariant parameters.
//!
//! `MultiPoly` is a sparse map from exponent vectors to rational
//! coefficients. The variable count is fixed per value; all arithmetic
//! checks that operands agree. Zero coefficients are never stored.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = MultiPoly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        MultiPoly::constant(nvars, Rational::one())
    }

    /// The variable `x_i` (0-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        let mut p = MultiPoly::zero(nvars);
        p.terms.insert(exps, Rational::one());
        p
    }

    /// Linear form `sum_i coeffs[i] * x_i + constant`.
    pub fn linear(coeffs: &[Rational], constant: Rational) -> Self {
        let nvars = coeffs.len();
        let mut p = MultiPoly::constant(nvars, constant);
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut exps = vec![0; nvars];
                exps[i] = 1;
                p.add_term(exps, c.clone());
            }
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_constant(&self) -> Option<Rational> {
        if self.terms.is_empty() {
            return Some(Rational::zero());
        }
        if self.terms.len() == 1 {
            let (exps, c) = self.terms.iter().next().unwrap();
            if exps.iter().all(|&e| e == 0) {
                return Some(c.clone());
            }
        }
        None
    }

    fn add_term(&mut self, exps: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &MultiPoly) -> MultiPoly {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = MultiPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let exps: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(exps, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(self.nvars);
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    /// Total degree, or `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// `Some(d)` when every stored monomial has total degree `d`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut deg = None;
        for e in self.terms.keys() {
            let d: u32 = e.iter().sum();
            match deg {
                None => deg = Some(d),
                Some(k) if k == d => {}
                _ => return None,
            }
        }
        deg
    }

    /// Evaluate at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars {
            return Err(Error::invalid("evaluation point has wrong length"));
        }
        let mut acc = Rational::zero();
        for (exps, c) in &self.terms {
            let mut term = c.clone();
            for (x, &e) in point.iter().zip(exps) {
                for _ in 0..e {
                    term *= x;
                }
            }
            acc += &term;
        }
        Ok(acc)
    }

    /// Divide out the rational content and the common monomial factor.
    /// This is the cheap normalization used to keep unreduced rational
    /// functions from growing without bound; it is not a full gcd.
    pub fn primitive_part(&self) -> (MultiPoly, Rational, Vec<u32>) {
        if self.terms.is_empty() {
            return (self.clone(), Rational::one(), vec![0; self.nvars]);
        }
        let content = self.terms.values().next().unwrap().clone();
        let mut shift = self.terms.keys().next().unwrap().clone();
        for e in self.terms.keys() {
            for (s, &v) in shift.iter_mut().zip(e) {
                *s = (*s).min(v);
            }
        }
        let mut out = MultiPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            let exps: Vec<u32> = e.iter().zip(&shift).map(|(x, s)| x - s).collect();
            out.terms
                .insert(exps, c.div_exact(&content).expect("content is nonzero"));
        }
        (out, content, shift)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exps, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", c)?;
            for (i, &e) in exps.iter().enumerate() {
                if e == 1 {
                    write!(f, "*l{}", i + 1)?;
                } else if e > 1 {
                    write!(f, "*l{}^{}", i + 1, e)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lam(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    #[test]
    fn ring_identities() {
        let a = lam(3, 0).sub(&lam(3, 1));
        let b = lam(3, 0).sub(&lam(3, 2));
        assert_eq!(a.mul(&b), b.mul(&a));
        assert!(a.sub(&a).is_zero());
        let s = a.add(&b);
        assert_eq!(
            s.mul(&s),
            a.mul(&a)
                .add(&a.mul(&b).scale(&Rational::from_int(2)))
                .add(&b.mul(&b))
        );
    }

    #[test]
    fn homogeneity_and_eval() {
        let p = lam(2, 0).mul(&lam(2, 1)).add(&lam(2, 0).pow(2));
        assert_eq!(p.homogeneous_degree(), Some(2));
        let q = p.add(&MultiPoly::one(2));
        assert_eq!(q.homogeneous_degree(), None);
        let v = p
            .eval(&[Rational::from_int(2), Rational::from_int(3)])
            .unwrap();
        assert_eq!(v, Rational::from_int(10));
    }

    #[test]
    fn primitive_part_strips_content_and_monomial() {
        // 2*l1^2*l2 + 4*l1*l2: the lex-least monomial l1*l2 carries 4, so
        // content 4, shift (1,1), core (1/2)*l1 + 1
        let p = lam(2, 0)
            .pow(2)
            .mul(&lam(2, 1))
            .scale(&Rational::from_int(2))
            .add(&lam(2, 0).mul(&lam(2, 1)).scale(&Rational::from_int(4)));
        let (core, content, shift) = p.primitive_part();
        assert_eq!(content, Rational::from_int(4));
        assert_eq!(shift, vec![1, 1]);
        let expect = lam(2, 0)
            .scale(&Rational::new(1, 2).unwrap())
            .add(&MultiPoly::one(2));
        assert_eq!(core, expect);
        // reassembling recovers the input
        let back = core.mul(&lam(2, 0)).mul(&lam(2, 1)).scale(&content);
        assert_eq!(back, p);
    }
}
