//! Weighted pointed stability on nodal configurations.
//!
//! Markings carry weights in `(0, 1]` and may coincide; a configuration is
//! stable when every coincidence class has weight sum at most one and every
//! component of the curve has positive twisted degree. The only weight
//! family the rest of the crate uses is `m` ones followed by `d` copies of
//! the stability parameter.

use crate::error::{Error, Result};
use crate::rational::Rational;

/// A marked point on the dual graph, member of a coincidence class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedMarking {
    /// 1-based label; weight `weights[label-1]` applies.
    pub label: u32,
    /// Vertex carrying the point.
    pub vertex: usize,
    /// Markings sharing a coincidence class id sit at the same point.
    pub coincidence: u32,
}

/// Dual graph of a nodal curve with weighted markings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedConfig {
    /// Genus per vertex.
    pub genera: Vec<u32>,
    /// Nodes; loops allowed and count twice.
    pub edges: Vec<(usize, usize)>,
    pub markings: Vec<WeightedMarking>,
}

impl WeightedConfig {
    fn nodes_on(&self, v: usize) -> u32 {
        let mut s = 0;
        for &(a, b) in &self.edges {
            if a == v {
                s += 1;
            }
            if b == v {
                s += 1;
            }
        }
        s
    }

    pub fn validate(&self) -> Result<()> {
        let nv = self.genera.len();
        if nv == 0 {
            return Err(Error::invalid("no vertices"));
        }
        for &(a, b) in &self.edges {
            if a >= nv || b >= nv {
                return Err(Error::invalid("edge endpoint out of range"));
            }
        }
        for mk in &self.markings {
            if mk.vertex >= nv {
                return Err(Error::invalid("marking vertex out of range"));
            }
        }
        // a coincidence class lives on a single vertex
        for a in &self.markings {
            for b in &self.markings {
                if a.coincidence == b.coincidence && a.vertex != b.vertex {
                    return Err(Error::invalid(format!(
                        "coincidence class {} spans two vertices",
                        a.coincidence
                    )));
                }
            }
        }
        Ok(())
    }
}

/// The weight family used throughout: `m` ones, then `d` copies of `eps`.
pub fn weight_vector(m: u32, d: u32, eps: &Rational) -> Result<Vec<Rational>> {
    check_weight(eps)?;
    let mut w = vec![Rational::one(); m as usize];
    w.extend(std::iter::repeat_n(eps.clone(), d as usize));
    Ok(w)
}

fn check_weight(w: &Rational) -> Result<()> {
    if !w.is_positive() || w > &Rational::one() {
        return Err(Error::invalid(format!("weight {w} outside (0, 1]")));
    }
    Ok(())
}

/// Weighted stability: every coincidence class has weight sum `<= 1`, and
/// every component `P` satisfies `2g(P) - 2 + #nodes(P) + sum of weights
/// on P > 0`.
pub fn is_weighted_stable(cfg: &WeightedConfig, weights: &[Rational]) -> Result<bool> {
    cfg.validate()?;
    for w in weights {
        check_weight(w)?;
    }
    let weight_of = |mk: &WeightedMarking| -> Result<&Rational> {
        weights
            .get(mk.label as usize - 1)
            .ok_or_else(|| Error::invalid(format!("no weight for label {}", mk.label)))
    };
    // coincidence classes must not exceed total weight one
    let mut classes: std::collections::BTreeMap<u32, Rational> = Default::default();
    for mk in &cfg.markings {
        let entry = classes.entry(mk.coincidence).or_insert_with(Rational::zero);
        *entry += weight_of(mk)?;
    }
    if classes.values().any(|sum| sum > &Rational::one()) {
        return Ok(false);
    }
    for v in 0..cfg.genera.len() {
        let mut lhs = Rational::from_int(2 * cfg.genera[v] as i64 - 2 + cfg.nodes_on(v) as i64);
        for mk in cfg.markings.iter().filter(|mk| mk.vertex == v) {
            lhs += weight_of(mk)?;
        }
        if !lhs.is_positive() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Dimension `3g - 3 + m + d` of the weighted moduli. Errors when the
/// count is negative or genus-zero stability is unsatisfiable.
pub fn hassett_dim(g: u32, m: u32, d: u32) -> Result<i64> {
    let dim = 3 * g as i64 - 3 + m as i64 + d as i64;
    if dim < 0 || (g == 0 && m + d < 3) {
        return Err(Error::invalid(format!(
            "weighted moduli of type ({g}, {m}|{d}) is empty"
        )));
    }
    Ok(dim)
}
