//! Combinatorial quotient data on decorated dual graphs.
//!
//! A [`CombQuotient`] records, per irreducible component, the genus, the
//! marking labels, the quotient degree (torsion included), and the torsion
//! lengths. Edges are nodes of the curve; loops are allowed and count
//! twice toward a component's special points. On top of this sit the
//! stability predicates, the wall/chamber structure in the stability
//! parameter, dimension formulas, and the contraction and wedge morphisms.

pub(crate) mod enumerate;

pub use enumerate::enumerate_quotients;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// One irreducible component of the underlying curve.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Component {
    pub genus: u32,
    /// Marking labels on this component, kept sorted.
    pub markings: Vec<u32>,
    /// Degree of the quotient restricted to this component, torsion included.
    pub degree: u32,
    /// Torsion lengths at (anonymous) points of this component, kept sorted.
    pub torsion: Vec<u32>,
}

/// A quasi-stable quotient datum of type `(r, n, d)` on a decorated graph.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CombQuotient {
    pub vertices: Vec<Component>,
    /// Unordered vertex pairs; loops allowed. Stored with `i <= j`, sorted.
    pub edges: Vec<(usize, usize)>,
    /// `(r, n)` with `1 <= r < n`.
    pub rank: (u32, u32),
}

impl CombQuotient {
    /// Sort markings, torsion, and edges into the canonical stored order.
    pub fn normalize(&mut self) {
        for v in &mut self.vertices {
            v.markings.sort_unstable();
            v.torsion.sort_unstable();
        }
        for e in &mut self.edges {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        self.edges.sort_unstable();
    }

    /// Check every structural invariant: connectivity, the marking
    /// partition, torsion bounded by degree, and the rank range.
    pub fn validate(&self) -> Result<()> {
        let nv = self.vertices.len();
        if nv == 0 {
            return Err(Error::invalid("no vertices"));
        }
        let (r, n) = self.rank;
        if !(1 <= r && r < n) {
            return Err(Error::invalid(format!(
                "rank ({r}, {n}) must satisfy 1 <= r < n"
            )));
        }
        for &(a, b) in &self.edges {
            if a >= nv || b >= nv {
                return Err(Error::invalid(format!("edge ({a}, {b}) out of range")));
            }
        }
        if !self.is_connected() {
            return Err(Error::invalid("underlying graph is not connected"));
        }
        let mut seen = BTreeSet::new();
        for v in &self.vertices {
            for &m in &v.markings {
                if m == 0 || !seen.insert(m) {
                    return Err(Error::invalid(format!(
                        "marking label {m} repeated or zero"
                    )));
                }
            }
            let t_sum: u32 = v.torsion.iter().sum();
            if v.torsion.contains(&0) {
                return Err(Error::invalid("torsion lengths must be positive"));
            }
            if t_sum > v.degree {
                return Err(Error::invalid(format!(
                    "torsion total {t_sum} exceeds component degree {}",
                    v.degree
                )));
            }
        }
        let m = seen.len() as u32;
        for &label in &seen {
            if label > m {
                return Err(Error::invalid(format!(
                    "marking labels must be 1..{m}, found {label}"
                )));
            }
        }
        Ok(())
    }

    fn is_connected(&self) -> bool {
        let nv = self.vertices.len();
        let mut adj = vec![Vec::new(); nv];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; nv];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// First Betti number of the dual graph.
    pub fn h1(&self) -> u32 {
        (self.edges.len() as i64 + 1 - self.vertices.len() as i64).max(0) as u32
    }

    /// Arithmetic genus: component genera plus the graph genus.
    pub fn genus(&self) -> u32 {
        self.vertices.iter().map(|v| v.genus).sum::<u32>() + self.h1()
    }

    /// Number of markings.
    pub fn num_markings(&self) -> u32 {
        self.vertices.iter().map(|v| v.markings.len() as u32).sum()
    }

    /// Total quotient degree `sum_v b_v`.
    pub fn total_degree(&self) -> u32 {
        self.vertices.iter().map(|v| v.degree).sum()
    }

    /// Special points of component `v`: incident edge-ends (a loop counts
    /// twice, since special points live on the normalization) plus markings.
    pub fn special_points(&self, v: usize) -> u32 {
        let mut s = self.vertices[v].markings.len() as u32;
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

    /// Serialize to the stable on-disk form (compact JSON, fixed key order).
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<CombQuotient> {
        let q: CombQuotient = serde_json::from_str(text).map_err(|e| Error::Parse {
            pos: e.column(),
            msg: e.to_string(),
        })?;
        q.validate()?;
        Ok(q)
    }
}

/// Why a quotient fails a stability test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// The twisted line bundle has nonpositive degree on this component.
    Ampleness {
        component: usize,
        genus: u32,
        special: u32,
        degree: u32,
    },
    /// A torsion length exceeds the bound `eps * length <= 1`.
    TorsionLength { component: usize, length: u32 },
    /// The early-chamber limit fails: `2g - 2 + s = 0` needs positive degree.
    DegenerateComponent { component: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Ampleness {
                component,
                genus,
                special,
                degree,
            } => write!(
                f,
                "component {component}: 2*{genus} - 2 + {special} + eps*{degree} <= 0"
            ),
            Violation::TorsionLength { component, length } => {
                write!(
                    f,
                    "component {component}: torsion length {length} violates eps*length <= 1"
                )
            }
            Violation::DegenerateComponent { component } => {
                write!(
                    f,
                    "component {component}: 2g - 2 + s = 0 with zero quotient degree"
                )
            }
        }
    }
}

/// Outcome of a stability test, carrying the first violation found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stability {
    Stable,
    Unstable(Violation),
}

impl Stability {
    pub fn is_stable(&self) -> bool {
        matches!(self, Stability::Stable)
    }
}

/// Stability at a fixed positive parameter: on every component
/// `2g - 2 + s + eps*b > 0`, and every torsion length `l` satisfies
/// `eps*l <= 1`. The first violated component or torsion point is reported.
///
/// Parameters that fit machine words take an integer path; the exact
/// big-rational comparison is the fallback, never an approximation.
pub fn is_epsilon_stable(q: &CombQuotient, eps: &Rational) -> Result<Stability> {
    if !eps.is_positive() {
        return Err(Error::invalid("stability parameter must be positive"));
    }
    use num_traits::ToPrimitive;
    let small = match (eps.numer().to_i64(), eps.denom().to_i64()) {
        (Some(p), Some(qd)) => Some((p as i128, qd as i128)),
        _ => None,
    };
    let mut specials: Vec<u32> = q.vertices.iter().map(|v| v.markings.len() as u32).collect();
    for &(a, b) in &q.edges {
        specials[a] += 1;
        specials[b] += 1;
    }
    for (i, v) in q.vertices.iter().enumerate() {
        let s = specials[i];
        let base = 2 * v.genus as i128 - 2 + s as i128;
        // 2g - 2 + s + eps * b > 0, cleared of denominators
        let ample = match small {
            Some((p, qd)) => base * qd + p * v.degree as i128 > 0,
            None => {
                let lhs = &Rational::from_int(base as i64)
                    + &(eps * &Rational::from_int(v.degree as i64));
                lhs.is_positive()
            }
        };
        if !ample {
            return Ok(Stability::Unstable(Violation::Ampleness {
                component: i,
                genus: v.genus,
                special: s,
                degree: v.degree,
            }));
        }
        for &l in &v.torsion {
            let bounded = match small {
                Some((p, qd)) => p * l as i128 <= qd,
                None => (eps * &Rational::from_int(l as i64)) <= Rational::one(),
            };
            if !bounded {
                return Ok(Stability::Unstable(Violation::TorsionLength {
                    component: i,
                    length: l,
                }));
            }
        }
    }
    Ok(Stability::Stable)
}

/// Stability for every positive parameter (the small-parameter limit):
/// each component has `2g - 2 + s > 0`, or `2g - 2 + s = 0` with positive
/// quotient degree. The torsion condition is vacuous in the limit.
pub fn is_mop_stable(q: &CombQuotient) -> Stability {
    for (i, v) in q.vertices.iter().enumerate() {
        let base = 2 * v.genus as i64 - 2 + q.special_points(i) as i64;
        if base < 0 {
            return Stability::Unstable(Violation::Ampleness {
                component: i,
                genus: v.genus,
                special: q.special_points(i),
                degree: v.degree,
            });
        }
        if base == 0 && v.degree == 0 {
            return Stability::Unstable(Violation::DegenerateComponent { component: i });
        }
    }
    Stability::Stable
}

/// The finite list of critical parameter values for fixed `(g, m, d)`,
/// with an implicit final wall at infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallSet {
    pub g: u32,
    pub m: u32,
    pub d: u32,
    /// Strictly increasing finite walls in `(0, infinity)`.
    pub finite: Vec<Rational>,
}

impl WallSet {
    /// Number of chambers, counting the unbounded top chamber.
    pub fn num_chambers(&self) -> usize {
        self.finite.len() + 1
    }

    /// Chamber bounds `(lower, upper)` for the 1-based chamber `i`;
    /// `upper = None` means unbounded. Chambers are right-closed.
    pub fn chamber_bounds(&self, i: usize) -> Result<(Rational, Option<Rational>)> {
        if i == 0 || i > self.num_chambers() {
            return Err(Error::invalid(format!("chamber index {i} out of range")));
        }
        let lower = if i == 1 {
            Rational::zero()
        } else {
            self.finite[i - 2].clone()
        };
        let upper = self.finite.get(i - 1).cloned();
        Ok((lower, upper))
    }

    /// A parameter value inside chamber `i`: the right endpoint when the
    /// chamber is bounded (chambers are right-closed), else one past the
    /// last finite wall.
    pub fn chamber_sample(&self, i: usize) -> Result<Rational> {
        let (lower, upper) = self.chamber_bounds(i)?;
        Ok(match upper {
            Some(u) => u,
            None => &lower + &Rational::one(),
        })
    }
}

impl fmt::Display for WallSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for w in &self.finite {
            write!(f, "{} ", w)?;
        }
        write!(f, "inf")
    }
}

/// Critical values of the stability parameter for type `(1, *, d)` data of
/// genus `g` with `m` markings.
///
/// For `(g, m) != (0, 0)` the walls are `1/d < 1/(d-1) < ... < 1/2 < 1`.
/// For `(g, m) = (0, 0)` the unpointed genus-zero moduli are empty below
/// `2/d`, and the list starts at that threshold: `d = 1` gives `{2}`,
/// odd `d >= 3` gives `{2/d, 1/d', ..., 1}` with `d' = floor(d/2)`, and
/// even `d` gives `{1/d', ..., 1}`.
pub fn walls(g: u32, m: u32, d: u32) -> Result<WallSet> {
    if d == 0 {
        return Err(Error::invalid("degree must be positive"));
    }
    let mut finite = Vec::new();
    if (g, m) != (0, 0) {
        for k in (1..=d).rev() {
            finite.push(Rational::new(1, k as i64)?);
        }
    } else if d == 1 {
        finite.push(Rational::from_int(2));
    } else {
        let dp = d / 2;
        if d % 2 == 1 {
            finite.push(Rational::new(2, d as i64)?);
        }
        for k in (1..=dp).rev() {
            finite.push(Rational::new(1, k as i64)?);
        }
    }
    Ok(WallSet { g, m, d, finite })
}

/// The 1-based chamber containing `eps`: the unique `i` with
/// `eps in (w_{i-1}, w_i]`, the top chamber being unbounded.
pub fn chamber_index(ws: &WallSet, eps: &Rational) -> Result<usize> {
    if !eps.is_positive() {
        return Err(Error::invalid("stability parameter must be positive"));
    }
    for (k, w) in ws.finite.iter().enumerate() {
        if eps <= w {
            return Ok(k + 1);
        }
    }
    Ok(ws.finite.len() + 1)
}

/// Virtual dimension `nd + r(n-r)(1-g) + 3g - 3 + m`; independent of the
/// stability parameter by construction (it is not an argument).
pub fn vdim(g: u32, m: u32, r: u32, n: u32, d: u32) -> Result<i64> {
    if !(1 <= r && r < n) {
        return Err(Error::invalid("rank must satisfy 1 <= r < n"));
    }
    let (g, m, r, n, d) = (g as i64, m as i64, r as i64, n as i64, d as i64);
    Ok(n * d + r * (n - r) * (1 - g) + 3 * g - 3 + m)
}

/// Genus-zero moduli are non-singular of dimension `nd + r(n-r) + m - 3`.
pub fn genus0_dim(m: u32, r: u32, n: u32, d: u32) -> Result<i64> {
    vdim(0, m, r, n, d)
}

/// Section count of the very-ample twist used to embed the curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingH0 {
    pub value: i64,
    /// Very-ampleness is established only for `k >= 5`; below that the
    /// formula still evaluates but carries no guarantee.
    pub proven: bool,
}

/// `h^0 = 1 - g + k*l*(2g - 2) + k*d + m` for the `k`-th power of the
/// twisted bundle at parameter `1/l`.
pub fn embedding_h0(g: u32, m: u32, d: u32, l: u32, k: u32) -> Result<EmbeddingH0> {
    if l == 0 {
        return Err(Error::invalid("l must be positive"));
    }
    if k == 0 {
        return Err(Error::invalid("k must be positive"));
    }
    let (g, m, d, l, k) = (g as i64, m as i64, d as i64, l as i64, k as i64);
    Ok(EmbeddingH0 {
        value: 1 - g + k * l * (2 * g - 2) + k * d + m,
        proven: k >= 5,
    })
}

/// Contract rational tails wall by wall, from parameter `eps` down to
/// `eps_to`. At the wall `w = 1/k`, every genus-zero component with exactly
/// one special point and quotient degree `k` is deleted and its full degree
/// becomes a torsion point of length `k` on the attaching component.
pub fn contract(q: &CombQuotient, eps: &Rational, eps_to: &Rational) -> Result<CombQuotient> {
    if q.rank.0 != 1 {
        return Err(Error::unsupported(
            "contraction is defined only for rank-1 quotient data",
        ));
    }
    if !eps_to.is_positive() || eps < eps_to {
        return Err(Error::invalid("need eps >= eps_to > 0"));
    }
    match is_epsilon_stable(q, eps)? {
        Stability::Stable => {}
        Stability::Unstable(v) => {
            return Err(Error::invalid(format!("input is not stable at eps: {v}")));
        }
    }
    let g = q.genus();
    let m = q.num_markings();
    let d = q.total_degree();
    if d == 0 {
        return Ok(q.clone());
    }
    // the twisted bundle must have positive total degree on the target
    // side: 2g - 2 + m + eps*d > 0, otherwise that chamber is empty
    let total_deg = &Rational::from_int(2 * g as i64 - 2 + m as i64)
        + &(eps_to * &Rational::from_int(d as i64));
    if !total_deg.is_positive() {
        return Err(Error::invalid(
            "target chamber is empty: the twisted bundle has nonpositive total degree",
        ));
    }
    let ws = walls(g, m, d)?;
    // Walls crossed going down: eps_to <= w < eps, largest first.
    let mut crossed: Vec<Rational> = ws
        .finite
        .iter()
        .filter(|w| *w >= eps_to && *w < eps)
        .cloned()
        .collect();
    crossed.sort();
    crossed.reverse();

    let mut cur = q.clone();
    for w in crossed {
        let k = w
            .recip()?
            .to_i64()
            .ok_or_else(|| Error::Inconsistency("wall is not a unit fraction".into()))?
            as u32;
        cur = contract_at_wall(&cur, k)?;
    }
    cur.normalize();
    Ok(cur)
}

/// One wall step: delete tails of critical degree `k`, recording torsion.
fn contract_at_wall(q: &CombQuotient, k: u32) -> Result<CombQuotient> {
    let nv = q.vertices.len();
    let mut end_count = vec![0u32; nv];
    let mut neighbor = vec![usize::MAX; nv];
    for &(a, b) in &q.edges {
        end_count[a] += 1;
        end_count[b] += 1;
        neighbor[a] = b;
        neighbor[b] = a;
    }
    let is_tail = |v: usize| -> bool {
        let c = &q.vertices[v];
        c.genus == 0
            && c.markings.is_empty()
            && end_count[v] == 1
            && c.degree == k
            && neighbor[v] != v
    };
    let tails: Vec<usize> = (0..nv).filter(|&v| is_tail(v)).collect();
    if tails.is_empty() {
        return Ok(q.clone());
    }
    let tail_set: BTreeSet<usize> = tails.iter().copied().collect();
    for &t in &tails {
        if tail_set.contains(&neighbor[t]) {
            return Err(Error::invalid(
                "two critical tails attach to each other; target chamber is empty",
            ));
        }
    }
    let mut keep_index = vec![usize::MAX; nv];
    let mut vertices = Vec::new();
    for v in 0..nv {
        if !tail_set.contains(&v) {
            keep_index[v] = vertices.len();
            vertices.push(q.vertices[v].clone());
        }
    }
    if vertices.is_empty() {
        return Err(Error::invalid("contraction would delete the whole curve"));
    }
    for &t in &tails {
        let host = keep_index[neighbor[t]];
        vertices[host].degree += k;
        vertices[host].torsion.push(k);
        vertices[host].torsion.sort_unstable();
    }
    let edges: Vec<(usize, usize)> = q
        .edges
        .iter()
        .filter(|&&(a, b)| !tail_set.contains(&a) && !tail_set.contains(&b))
        .map(|&(a, b)| (keep_index[a], keep_index[b]))
        .collect();
    let mut out = CombQuotient {
        vertices,
        edges,
        rank: q.rank,
    };
    out.normalize();
    Ok(out)
}

/// The wedge morphism on quotient data: rank `(r, n)` becomes
/// `(1, C(n, r))`; the graph, genera, markings, degrees and torsion are
/// untouched because the wedge of the kernel has the same degree.
pub fn plucker(q: &CombQuotient) -> Result<CombQuotient> {
    let (r, n) = q.rank;
    let c = binomial(n as u64, r as u64)
        .ok_or_else(|| Error::invalid("binomial coefficient overflow"))?;
    let c32 = u32::try_from(c).map_err(|_| Error::invalid("binomial coefficient exceeds u32"))?;
    let mut out = q.clone();
    out.rank = (1, c32);
    Ok(out)
}

pub(crate) fn binomial(n: u64, r: u64) -> Option<u64> {
    if r > n {
        return Some(0);
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc.checked_mul((n - i) as u128)?;
        acc /= (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}
