//! Closed-form and series-level invariants of the local geometries, and
//! the wall-crossing report tying the chamber structure to exact values.
//!
//! The all-genus generating function of the resolved conifold is
//! `sum_{d>=1} t^d / (4d sin^2(d*lambda/2))`; its coefficients are the
//! reference values that the localization engine must reproduce. The
//! invariants here never hardcode those numbers: they are always read off
//! the series, so the two computation paths stay independent.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::localization::{assemble_invariant, Geometry};
use crate::quotient::{walls, WallSet};
use crate::rational::Rational;
use crate::series::{series_expand_sin_inverse_sq, LaurentSeries, SeriesVar};

/// A series in `t` whose coefficients are Laurent series in `lambda`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TSeries {
    /// Highest reported `t` exponent (inclusive).
    pub t_order: u32,
    /// `t^d` coefficients for `d = 1..=t_order`.
    pub coefficients: BTreeMap<u32, LaurentSeries>,
}

impl TSeries {
    pub fn coeff(&self, d: u32, lambda_exp: i64) -> Result<Rational> {
        let series = self
            .coefficients
            .get(&d)
            .ok_or_else(|| Error::invalid(format!("t^{d} beyond truncation {}", self.t_order)))?;
        series.coeff(lambda_exp)
    }
}

/// The all-genus generating function of the resolved conifold, truncated
/// at `t^t_order` and `lambda^lambda_order` (both inclusive).
pub fn gv_series(lambda_order: i64, t_order: u32) -> Result<TSeries> {
    if t_order < 1 {
        return Err(Error::invalid("t order must be at least one"));
    }
    let mut coefficients = BTreeMap::new();
    for d in 1..=t_order {
        coefficients.insert(d, series_expand_sin_inverse_sq(d, lambda_order)?);
    }
    Ok(TSeries {
        t_order,
        coefficients,
    })
}

/// The degree-`d` genus-`g` coefficient of the conifold series, i.e. the
/// `lambda^(2g-2) t^d` coefficient.
fn conifold_series_value(g: u32, d: u32) -> Result<Rational> {
    let exp = 2 * g as i64 - 2;
    series_expand_sin_inverse_sq(d, exp)?.coeff(exp)
}

/// Chamber-wise conifold invariant: the series value when
/// `2g - 2 + eps*d > 0`, zero otherwise.
pub fn conifold_invariant(g: u32, d: u32, eps: &Rational) -> Result<Rational> {
    if d == 0 {
        return Err(Error::invalid("degree must be positive"));
    }
    if !eps.is_positive() {
        return Err(Error::invalid("stability parameter must be positive"));
    }
    let threshold = &Rational::from_int(2 * g as i64 - 2) + &(eps * &Rational::from_int(d as i64));
    if threshold.is_positive() {
        conifold_series_value(g, d)
    } else {
        Ok(Rational::zero())
    }
}

/// The chamber-dependent conifold series: the full generating function
/// minus the pole corrections `(1/d^3) lambda^-2 t^d` for `0 < d <= 2/eps`.
pub fn f_epsilon_conifold(eps: &Rational, lambda_order: i64, t_order: u32) -> Result<TSeries> {
    if !eps.is_positive() {
        return Err(Error::invalid("stability parameter must be positive"));
    }
    let mut series = gv_series(lambda_order, t_order)?;
    // largest degree with d <= 2/eps
    let bound = Rational::from_int(2).div_exact(eps)?.floor_int();
    let bound: u32 = bound.try_into().unwrap_or(0);
    for d in 1..=bound.min(t_order) {
        let cur = series
            .coefficients
            .get(&d)
            .expect("within truncation")
            .clone();
        // pole correction on the same window, zero above the pole
        let mut coeffs = vec![Rational::zero(); (cur.truncation() + 2) as usize];
        coeffs[0] = Rational::new(1, (d as i64).pow(3))?;
        let correction = LaurentSeries::new(SeriesVar::Lambda, -2, cur.truncation(), coeffs)?;
        series.coefficients.insert(d, cur.sub(&correction)?);
    }
    Ok(series)
}

/// The elliptic degree-one invariant of the local plane: localization in
/// the torsion-free chambers, the direct product computation below them.
pub fn local_p2_11(eps: &Rational) -> Result<Rational> {
    if !eps.is_positive() {
        return Err(Error::invalid("stability parameter must be positive"));
    }
    if eps > &Rational::one() {
        assemble_invariant(1, 0, 1, eps, Geometry::LocalP2)
    } else {
        // the moduli is a product of the one-pointed elliptic curve moduli
        // with the plane; the obstruction bundle integrates to
        // 9 * (3 * psi - hodge) over the elliptic factor
        let (hodge, psi) = crate::taut::m11_constants();
        let inner = &(&psi * &Rational::from_int(3)) - &hodge;
        Ok(&inner * &Rational::from_int(9))
    }
}

/// Genus-zero quintic invariant at degree one: zero at or below the
/// emptiness threshold, the line count above it.
pub fn quintic_g0(d: u32, eps: &Rational) -> Result<Rational> {
    if d != 1 {
        return Err(Error::unsupported(
            "quintic invariants beyond degree one need torsion-vertex integrals",
        ));
    }
    if !eps.is_positive() {
        return Err(Error::invalid("stability parameter must be positive"));
    }
    if eps <= &Rational::from_int(2) {
        // unpointed genus-zero moduli are empty for eps <= 2/d
        return Ok(Rational::zero());
    }
    assemble_invariant(0, 0, 1, eps, Geometry::Quintic)
}

/// One row of a wall-crossing report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChamberValue {
    /// Open lower bound of the chamber.
    pub lower: Rational,
    /// Closed upper bound; `None` for the unbounded top chamber.
    pub upper: Option<Rational>,
    pub value: Rational,
}

/// Evaluate the invariant once per chamber of the wall set for `(g, 0, d)`.
pub fn wall_crossing_report(
    geometry: Geometry,
    g: u32,
    d: u32,
) -> Result<(WallSet, Vec<ChamberValue>)> {
    let ws = walls(g, 0, d)?;
    let mut rows = Vec::new();
    for chamber in 1..=ws.num_chambers() {
        let (lower, upper) = ws.chamber_bounds(chamber)?;
        let eps = ws.chamber_sample(chamber)?;
        let value = match geometry {
            Geometry::Conifold => conifold_invariant(g, d, &eps)?,
            Geometry::LocalP2 => {
                if (g, d) != (1, 1) {
                    return Err(Error::unsupported(
                        "local-p2 reporting covers the elliptic degree-one invariant",
                    ));
                }
                local_p2_11(&eps)?
            }
            Geometry::Quintic => {
                if g != 0 {
                    return Err(Error::unsupported("quintic reporting is genus zero"));
                }
                quintic_g0(d, &eps)?
            }
            Geometry::Projective(_) => {
                return Err(Error::unsupported(
                    "no invariant attached to a bare projective space",
                ))
            }
        };
        rows.push(ChamberValue {
            lower,
            upper,
            value,
        });
    }
    Ok((ws, rows))
}
