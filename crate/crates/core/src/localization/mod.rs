//! Torus-fixed-locus graphs and the localization engine.
//!
//! Fixed loci of the torus action on quotient moduli are indexed by
//! decorated graphs: vertices sit at torus-fixed points of the target,
//! edges are multiple covers of coordinate lines, and decorations record
//! genera, torsion degrees, covering degrees, and marking positions.
//! Enumeration works for any rank; exact numeric evaluation is restricted
//! to rank one with torsion-free vertices of genus at most one.

mod eval;

pub use eval::{
    assemble_invariant, edge_contribution, graph_contribution, vertex_contribution, Geometry,
    TwistSpec,
};

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quotient::binomial;
use crate::rational::Rational;

/// A vertex of a fixed-locus graph.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FixedVertex {
    pub genus: u32,
    /// Marking labels assigned to this vertex, sorted.
    pub markings: Vec<u32>,
    /// Torsion degrees, one per tautological subbundle summand (length r).
    pub s: Vec<u32>,
    /// The fixed point of the target: an ascending r-subset of `1..=n`.
    pub iota: Vec<u32>,
}

impl FixedVertex {
    pub fn s_total(&self) -> u32 {
        self.s.iter().sum()
    }
}

/// An edge: a degree-`delta` cover of the coordinate line joining the two
/// incident fixed points.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FixedEdge {
    pub ends: (usize, usize),
    pub delta: u32,
}

/// A fixed-locus datum for genus `g`, `m` markings, degree `d` quotients
/// into the rank-`(r, n)` target.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FixedGraph {
    pub vertices: Vec<FixedVertex>,
    pub edges: Vec<FixedEdge>,
    pub rank: (u32, u32),
}

impl FixedGraph {
    pub fn valence(&self, v: usize) -> u32 {
        self.edges
            .iter()
            .map(|e| (e.ends.0 == v) as u32 + (e.ends.1 == v) as u32)
            .sum()
    }

    pub fn h1(&self) -> u32 {
        (self.edges.len() as i64 + 1 - self.vertices.len() as i64).max(0) as u32
    }

    pub fn total_genus(&self) -> u32 {
        self.vertices.iter().map(|v| v.genus).sum::<u32>() + self.h1()
    }

    pub fn total_degree(&self) -> u32 {
        self.vertices.iter().map(|v| v.s_total()).sum::<u32>()
            + self.edges.iter().map(|e| e.delta).sum::<u32>()
    }

    /// Flags at `v`: for each incident edge end, the other endpoint's
    /// fixed point (first entry of its iota at rank one) and the degree.
    pub(crate) fn flags(&self, v: usize) -> Vec<(usize, u32)> {
        let mut out = Vec::new();
        for e in &self.edges {
            if e.ends.0 == v {
                out.push((e.ends.1, e.delta));
            }
            if e.ends.1 == v {
                out.push((e.ends.0, e.delta));
            }
        }
        out
    }

    pub fn normalize(&mut self) {
        for v in &mut self.vertices {
            v.markings.sort_unstable();
        }
        for e in &mut self.edges {
            if e.ends.0 > e.ends.1 {
                e.ends = (e.ends.1, e.ends.0);
            }
        }
        self.edges.sort();
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serialization cannot fail")
    }
}

/// The ampleness slack of a vertex at stability parameter `eps`:
/// `min(0, 2*genus - 2 + eps*s + valence + markings)`.
fn vertex_slack(fg: &FixedGraph, v: usize, eps: &Rational) -> Rational {
    let vert = &fg.vertices[v];
    let base = Rational::from_int(
        2 * vert.genus as i64 - 2 + fg.valence(v) as i64 + vert.markings.len() as i64,
    );
    let with_s = &base + &(eps * &Rational::from_int(vert.s_total() as i64));
    if with_s.is_positive() {
        Rational::zero()
    } else {
        with_s
    }
}

/// Whether the vertex moduli factor is positive-dimensional (strict
/// inequality `2g - 2 + eps*s + valence + markings > 0`).
pub fn vertex_positive(fg: &FixedGraph, v: usize, eps: &Rational) -> bool {
    let vert = &fg.vertices[v];
    let base = Rational::from_int(
        2 * vert.genus as i64 - 2 + fg.valence(v) as i64 + vert.markings.len() as i64,
    );
    (&base + &(eps * &Rational::from_int(vert.s_total() as i64))).is_positive()
}

/// Check every structural invariant of a fixed graph against the ambient
/// data `(g, m, d, r, n)` and the stability parameter.
pub fn validate_fixed_graph(
    fg: &FixedGraph,
    g: u32,
    m: u32,
    d: u32,
    r: u32,
    n: u32,
    eps: &Rational,
) -> Result<()> {
    if fg.rank != (r, n) {
        return Err(Error::invalid("rank data mismatch"));
    }
    let nv = fg.vertices.len();
    if nv == 0 {
        return Err(Error::invalid("no vertices"));
    }
    for e in &fg.edges {
        if e.ends.0 >= nv || e.ends.1 >= nv {
            return Err(Error::invalid("edge endpoint out of range"));
        }
        if e.ends.0 == e.ends.1 {
            return Err(Error::invalid("self edges are not allowed"));
        }
        if e.delta == 0 {
            return Err(Error::invalid("covering degree must be positive"));
        }
    }
    // connectivity
    let mut seen = vec![false; nv];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for e in &fg.edges {
            let other = match e.ends {
                (a, b) if a == v => b,
                (a, b) if b == v => a,
                _ => continue,
            };
            if !seen[other] {
                seen[other] = true;
                stack.push(other);
            }
        }
    }
    if !seen.iter().all(|&s| s) {
        return Err(Error::invalid("graph is not connected"));
    }
    if fg.total_genus() != g {
        return Err(Error::invalid(format!(
            "genus mismatch: vertices plus loops give {}, want {g}",
            fg.total_genus()
        )));
    }
    if fg.total_degree() != d {
        return Err(Error::invalid(format!(
            "degree mismatch: torsion plus covers give {}, want {d}",
            fg.total_degree()
        )));
    }
    let mut labels = BTreeSet::new();
    for v in &fg.vertices {
        if v.s.len() != r as usize {
            return Err(Error::invalid("torsion tuple length must equal the rank"));
        }
        if v.iota.len() != r as usize
            || v.iota.windows(2).any(|w| w[0] >= w[1])
            || v.iota.iter().any(|&i| i == 0 || i > n)
        {
            return Err(Error::invalid(
                "iota must be an ascending r-subset of 1..=n",
            ));
        }
        for &mk in &v.markings {
            if mk == 0 || mk > m || !labels.insert(mk) {
                return Err(Error::invalid("bad marking distribution"));
            }
        }
    }
    if labels.len() != m as usize {
        return Err(Error::invalid("marking distribution misses labels"));
    }
    // adjacent fixed points share an (r-1)-face: the coordinate line exists
    for e in &fg.edges {
        let a = &fg.vertices[e.ends.0].iota;
        let b = &fg.vertices[e.ends.1].iota;
        let common = a.iter().filter(|x| b.contains(x)).count();
        if common != r as usize - 1 {
            return Err(Error::invalid(
                "incident vertices must sit at fixed points joined by an invariant line",
            ));
        }
    }
    // torsion is forbidden once the parameter exceeds one
    if eps > &Rational::one() {
        for v in &fg.vertices {
            if v.s_total() > 0 {
                return Err(Error::invalid("torsion present although eps > 1"));
            }
        }
    }
    // edge ampleness, with collapsed-vertex slack
    for e in &fg.edges {
        let lhs = &(eps * &Rational::from_int(e.delta as i64))
            + &(&vertex_slack(fg, e.ends.0, eps) + &vertex_slack(fg, e.ends.1, eps));
        if !lhs.is_positive() {
            return Err(Error::invalid(format!(
                "edge ({}, {}) fails ampleness",
                e.ends.0, e.ends.1
            )));
        }
    }
    // a lone vertex must itself be positive, otherwise the locus is empty
    if nv == 1 && fg.edges.is_empty() && !vertex_positive(fg, 0, eps) {
        return Err(Error::invalid(
            "single collapsed vertex indexes an empty locus",
        ));
    }
    Ok(())
}

/// Exhaustive, duplicate-free enumeration of fixed-locus graphs for the
/// given ambient data and stability parameter.
pub fn enumerate_fixed_graphs(
    g: u32,
    m: u32,
    d: u32,
    r: u32,
    n: u32,
    eps: &Rational,
) -> Result<Vec<FixedGraph>> {
    if !(1 <= r && r < n) {
        return Err(Error::invalid("rank must satisfy 1 <= r < n"));
    }
    if !eps.is_positive() {
        return Err(Error::invalid("stability parameter must be positive"));
    }
    if g > 2 || m > 2 || d > 6 || n > 8 {
        return Err(Error::SizeLimit(format!(
            "fixed-graph enumeration bounds exceeded: g={g}, m={m}, d={d}, n={n} \
             (need g<=2, m<=2, d<=6, n<=8)"
        )));
    }
    let fixed_points: Vec<Vec<u32>> = subsets_of_size(n, r as usize);
    let torsion_allowed = eps <= &Rational::one();

    let mut found: BTreeSet<FixedGraph> = BTreeSet::new();
    let max_vertices = (d as usize + 1).max(1);
    for nv in 1..=max_vertices {
        let mut pair_slots = Vec::new();
        for i in 0..nv {
            for j in i + 1..nv {
                pair_slots.push((i, j));
            }
        }
        let ne_min = nv - 1;
        let ne_max = ((nv - 1) + g as usize).min(d as usize);
        if ne_min > ne_max && nv > 1 {
            continue;
        }
        for ne in ne_min..=ne_max.max(ne_min) {
            for shape in edge_multisets(ne, &pair_slots) {
                if !shape_connected(nv, &shape) {
                    continue;
                }
                let h1 = (ne as i64 + 1 - nv as i64).max(0) as u32;
                if h1 > g {
                    continue;
                }
                enumerate_decorations(
                    g,
                    m,
                    d,
                    (r, n),
                    &fixed_points,
                    nv,
                    &shape,
                    h1,
                    torsion_allowed,
                    eps,
                    &mut found,
                )?;
            }
        }
    }
    Ok(found.into_iter().collect())
}

fn subsets_of_size(n: u32, r: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(n: u32, r: usize, from: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for x in from..=n {
            cur.push(x);
            rec(n, r, x + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, r, 1, &mut cur, &mut out);
    out
}

/// Multisets of `ne` edges over the available vertex pairs.
fn edge_multisets(ne: usize, slots: &[(usize, usize)]) -> Vec<Vec<(usize, usize)>> {
    fn rec(
        ne: usize,
        from: usize,
        slots: &[(usize, usize)],
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if ne == 0 {
            out.push(cur.clone());
            return;
        }
        for s in from..slots.len() {
            cur.push(slots[s]);
            rec(ne - 1, s, slots, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if ne == 0 {
        out.push(Vec::new());
        return out;
    }
    rec(ne, 0, slots, &mut Vec::new(), &mut out);
    out
}

fn shape_connected(nv: usize, edges: &[(usize, usize)]) -> bool {
    if nv == 1 {
        return true;
    }
    let mut seen = vec![false; nv];
    seen[0] = true;
    let mut stack = vec![0usize];
    while let Some(v) = stack.pop() {
        for &(a, b) in edges {
            if a == v && !seen[b] {
                seen[b] = true;
                stack.push(b);
            }
            if b == v && !seen[a] {
                seen[a] = true;
                stack.push(a);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

#[allow(clippy::too_many_arguments)]
fn enumerate_decorations(
    g: u32,
    m: u32,
    d: u32,
    rank: (u32, u32),
    fixed_points: &[Vec<u32>],
    nv: usize,
    shape: &[(usize, usize)],
    h1: u32,
    torsion_allowed: bool,
    eps: &Rational,
    found: &mut BTreeSet<FixedGraph>,
) -> Result<()> {
    use crate::quotient::enumerate::compositions;

    let r = rank.0;
    let ne = shape.len();
    let genus_left = g - h1;

    // delta assignments: one positive degree per edge; parallel edges get
    // nondecreasing degrees to curb duplicates before canonicalization
    for delta_total in ne as u32..=d {
        let extra = delta_total - ne as u32;
        for delta_extra in compositions(extra, ne) {
            let deltas: Vec<u32> = delta_extra.iter().map(|&x| x + 1).collect();
            if !parallel_nondecreasing(shape, &deltas) {
                continue;
            }
            let s_total = d - delta_total;
            if s_total > 0 && !torsion_allowed {
                continue;
            }
            for genera in compositions(genus_left, nv) {
                for s_flat in compositions(s_total, nv * r as usize) {
                    for iota_pick in iota_assignments(fixed_points, nv, shape, r) {
                        for marks in marking_assignments(m, nv) {
                            let fg = FixedGraph {
                                vertices: (0..nv)
                                    .map(|i| FixedVertex {
                                        genus: genera[i],
                                        markings: marks[i].clone(),
                                        s: s_flat[i * r as usize..(i + 1) * r as usize].to_vec(),
                                        iota: fixed_points[iota_pick[i]].clone(),
                                    })
                                    .collect(),
                                edges: shape
                                    .iter()
                                    .zip(&deltas)
                                    .map(|(&ends, &delta)| FixedEdge { ends, delta })
                                    .collect(),
                                rank,
                            };
                            if !graph_ample(&fg, eps) {
                                continue;
                            }
                            if fg.vertices.len() == 1
                                && fg.edges.is_empty()
                                && !vertex_positive(&fg, 0, eps)
                            {
                                continue;
                            }
                            found.insert(canonical_fixed_graph(&fg));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn parallel_nondecreasing(shape: &[(usize, usize)], deltas: &[u32]) -> bool {
    for i in 1..shape.len() {
        if shape[i] == shape[i - 1] && deltas[i] < deltas[i - 1] {
            return false;
        }
    }
    true
}

fn iota_assignments(
    fixed_points: &[Vec<u32>],
    nv: usize,
    shape: &[(usize, usize)],
    r: u32,
) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; nv];
    fn ok_so_far(
        cur: &[usize],
        upto: usize,
        shape: &[(usize, usize)],
        fixed_points: &[Vec<u32>],
        r: u32,
    ) -> bool {
        for &(a, b) in shape {
            if a <= upto && b <= upto {
                let fa = &fixed_points[cur[a]];
                let fb = &fixed_points[cur[b]];
                let common = fa.iter().filter(|x| fb.contains(x)).count();
                if common != r as usize - 1 {
                    return false;
                }
            }
        }
        true
    }
    fn rec(
        v: usize,
        nv: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        shape: &[(usize, usize)],
        fixed_points: &[Vec<u32>],
        r: u32,
    ) {
        if v == nv {
            out.push(cur.clone());
            return;
        }
        for p in 0..fixed_points.len() {
            cur[v] = p;
            if ok_so_far(cur, v, shape, fixed_points, r) {
                rec(v + 1, nv, cur, out, shape, fixed_points, r);
            }
        }
    }
    rec(0, nv, &mut cur, &mut out, shape, fixed_points, r);
    out
}

fn marking_assignments(m: u32, nv: usize) -> Vec<Vec<Vec<u32>>> {
    let mut out = Vec::new();
    let total = (nv as u64).pow(m);
    for code in 0..total {
        let mut per_vertex = vec![Vec::new(); nv];
        let mut c = code;
        for label in 1..=m {
            per_vertex[(c % nv as u64) as usize].push(label);
            c /= nv as u64;
        }
        out.push(per_vertex);
    }
    out
}

fn graph_ample(fg: &FixedGraph, eps: &Rational) -> bool {
    for e in &fg.edges {
        let lhs = &(eps * &Rational::from_int(e.delta as i64))
            + &(&vertex_slack(fg, e.ends.0, eps) + &vertex_slack(fg, e.ends.1, eps));
        if !lhs.is_positive() {
            return false;
        }
    }
    true
}

/// Groups of vertex indices carrying identical decorations, listed in
/// ascending decoration order.
fn decoration_classes(fg: &FixedGraph) -> Vec<Vec<usize>> {
    let mut order: Vec<usize> = (0..fg.vertices.len()).collect();
    order.sort_by(|&a, &b| fg.vertices[a].cmp(&fg.vertices[b]));
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for v in order {
        match classes.last_mut() {
            Some(class) if fg.vertices[class[0]] == fg.vertices[v] => class.push(v),
            _ => classes.push(vec![v]),
        }
    }
    classes
}

/// Visit every assignment `slot -> old index` that fills each class's
/// slot range with that class's members. `assign[new] = old`.
fn for_each_class_assignment(classes: &[Vec<usize>], f: &mut impl FnMut(&[usize])) {
    fn rec(
        classes: &[Vec<usize>],
        c: usize,
        members: &mut Vec<usize>,
        k: usize,
        assign: &mut Vec<usize>,
        f: &mut impl FnMut(&[usize]),
    ) {
        if c == classes.len() {
            f(assign);
            return;
        }
        if k == members.len() {
            let mut next = classes.get(c + 1).cloned().unwrap_or_default();
            rec(classes, c + 1, &mut next, 0, assign, f);
            return;
        }
        for i in k..members.len() {
            members.swap(k, i);
            assign.push(members[k]);
            rec(classes, c, members, k + 1, assign, f);
            assign.pop();
            members.swap(k, i);
        }
    }
    let mut first = classes.first().cloned().unwrap_or_default();
    rec(classes, 0, &mut first, 0, &mut Vec::new(), f);
}

/// Canonical representative under vertex relabeling.
///
/// The lexicographically least form necessarily lists the vertices in
/// ascending decoration order, so only relabelings within classes of
/// equal decoration need searching; the edge list breaks the ties.
pub(crate) fn canonical_fixed_graph(fg: &FixedGraph) -> FixedGraph {
    let nv = fg.vertices.len();
    let classes = decoration_classes(fg);
    let mut best: Option<Vec<FixedEdge>> = None;
    let mut vertices_sorted: Option<Vec<FixedVertex>> = None;
    for_each_class_assignment(&classes, &mut |assign| {
        // assign[new] = old; invert for edge mapping
        let mut new_of = vec![0usize; nv];
        for (new, &old) in assign.iter().enumerate() {
            new_of[old] = new;
        }
        let mut edges: Vec<FixedEdge> = fg
            .edges
            .iter()
            .map(|e| {
                let (a, b) = (new_of[e.ends.0], new_of[e.ends.1]);
                FixedEdge {
                    ends: (a.min(b), a.max(b)),
                    delta: e.delta,
                }
            })
            .collect();
        edges.sort();
        if best.as_ref().is_none_or(|b| edges < *b) {
            if vertices_sorted.is_none() {
                vertices_sorted =
                    Some(assign.iter().map(|&old| fg.vertices[old].clone()).collect());
            }
            best = Some(edges);
        }
    });
    let mut out = FixedGraph {
        vertices: vertices_sorted.expect("at least one assignment"),
        edges: best.expect("at least one assignment"),
        rank: fg.rank,
    };
    out.normalize();
    out
}

/// `|Aut|`: decoration-preserving graph automorphisms, times the product
/// of parallel-edge multiplicities' factorials, times the product of the
/// covering degrees (deck transformations of each cover).
pub fn automorphism_order(fg: &FixedGraph) -> u64 {
    use std::collections::BTreeMap;
    let nv = fg.vertices.len();
    let decorated_edges = |map: &dyn Fn(usize) -> usize| -> BTreeMap<(usize, usize, u32), u32> {
        let mut out = BTreeMap::new();
        for e in &fg.edges {
            let (a, b) = (map(e.ends.0), map(e.ends.1));
            *out.entry((a.min(b), a.max(b), e.delta)).or_insert(0) += 1;
        }
        out
    };
    let id_edges = decorated_edges(&|v| v);
    let classes = decoration_classes(fg);
    // the slot layout fixes a reference assignment; an automorphism is a
    // composition of two class assignments, so counting pairs that agree
    // on the edge multiset and dividing by the reference count gives the
    // stabilizer order. Simpler: map old -> slot -> old through one fixed
    // assignment and count assignments inducing the same edge multiset.
    let mut reference: Vec<usize> = Vec::new();
    for class in &classes {
        reference.extend(class.iter().copied());
    }
    let mut slot_of = vec![0usize; nv];
    for (slot, &old) in reference.iter().enumerate() {
        slot_of[old] = slot;
    }
    let mut sigma_count = 0u64;
    for_each_class_assignment(&classes, &mut |assign| {
        // sigma(old) = assign[slot_of[old]] permutes equal decorations
        let mapped = decorated_edges(&|v| assign[slot_of[v]]);
        if mapped == id_edges {
            sigma_count += 1;
        }
    });
    let mut aut = sigma_count;
    for mult in id_edges.values() {
        aut *= (1..=*mult as u64).product::<u64>();
    }
    for e in &fg.edges {
        aut *= e.delta as u64;
    }
    aut
}

/// Binomial guard used when mapping rank data through the wedge.
pub fn plucker_rank(r: u32, n: u32) -> Result<(u32, u32)> {
    let c = binomial(n as u64, r as u64)
        .ok_or_else(|| Error::invalid("binomial coefficient overflow"))?;
    Ok((
        1,
        u32::try_from(c).map_err(|_| Error::invalid("rank too large"))?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn degree_one_maps_chamber_has_one_graph() {
        let graphs = enumerate_fixed_graphs(0, 0, 1, 1, 2, &Rational::from_int(3)).unwrap();
        assert_eq!(graphs.len(), 1);
        let fg = &graphs[0];
        assert_eq!(fg.edges.len(), 1);
        assert_eq!(fg.edges[0].delta, 1);
        assert_eq!(fg.vertices.len(), 2);
        assert!(fg.vertices.iter().all(|v| v.genus == 0 && v.s_total() == 0));
    }

    #[test]
    fn degree_two_maps_chamber_graph_count() {
        let graphs = enumerate_fixed_graphs(0, 0, 2, 1, 2, &Rational::from_int(3)).unwrap();
        // single edge of degree two, plus a chain through either fixed
        // point; the two chains are exchanged by swapping the fixed points,
        // which is not a decoration-preserving isomorphism, and the
        // localization sum needs both as separate summands
        assert_eq!(graphs.len(), 3);
        let edge_counts: Vec<usize> = graphs.iter().map(|g| g.edges.len()).collect();
        assert_eq!(edge_counts.iter().filter(|&&c| c == 1).count(), 1);
        assert_eq!(edge_counts.iter().filter(|&&c| c == 2).count(), 2);
    }

    #[test]
    fn below_threshold_everything_is_empty() {
        let graphs = enumerate_fixed_graphs(0, 0, 1, 1, 2, &Rational::one()).unwrap();
        assert!(graphs.is_empty());
        let graphs = enumerate_fixed_graphs(0, 0, 2, 1, 2, &Rational::one()).unwrap();
        assert!(graphs.is_empty());
    }

    #[test]
    fn torsion_appears_below_eps_one() {
        // genus one, degree one at small eps: the collapsed elliptic vertex
        // with a torsion point is a valid fixed locus
        let graphs = enumerate_fixed_graphs(1, 0, 1, 1, 3, &q(1, 2)).unwrap();
        assert!(graphs
            .iter()
            .any(|g| g.edges.is_empty() && g.vertices.len() == 1 && g.vertices[0].s_total() == 1));
        // but never when eps > 1
        let graphs = enumerate_fixed_graphs(1, 0, 1, 1, 3, &q(3, 2)).unwrap();
        assert!(graphs
            .iter()
            .all(|g| g.vertices.iter().all(|v| v.s_total() == 0)));
    }

    #[test]
    fn enumerated_graphs_validate() {
        for (g, m, d, r, n, eps) in [
            (0, 0, 2, 1, 2, Rational::from_int(3)),
            (1, 0, 1, 1, 3, Rational::from_int(3)),
            (1, 0, 2, 1, 2, Rational::from_int(3)),
            (0, 1, 1, 1, 2, Rational::from_int(3)),
            (0, 0, 2, 2, 4, Rational::from_int(3)),
            (1, 0, 1, 1, 3, q(1, 2)),
        ] {
            let graphs = enumerate_fixed_graphs(g, m, d, r, n, &eps).unwrap();
            for fg in &graphs {
                validate_fixed_graph(fg, g, m, d, r, n, &eps).unwrap();
            }
        }
    }

    #[test]
    fn rank_two_enumeration_respects_adjacency() {
        let graphs = enumerate_fixed_graphs(0, 0, 1, 2, 4, &Rational::from_int(3)).unwrap();
        assert!(!graphs.is_empty());
        for fg in &graphs {
            for e in &fg.edges {
                let a = &fg.vertices[e.ends.0].iota;
                let b = &fg.vertices[e.ends.1].iota;
                let common = a.iter().filter(|x| b.contains(x)).count();
                assert_eq!(common, 1);
            }
        }
    }

    #[test]
    fn genus_one_cycle_graphs_exist() {
        let graphs = enumerate_fixed_graphs(1, 0, 2, 1, 2, &Rational::from_int(3)).unwrap();
        assert!(graphs.iter().any(|g| g.h1() == 1 && g.edges.len() == 2));
    }

    #[test]
    fn automorphism_orders() {
        let graphs = enumerate_fixed_graphs(0, 0, 2, 1, 2, &Rational::from_int(3)).unwrap();
        let mut orders: Vec<u64> = graphs.iter().map(automorphism_order).collect();
        orders.sort_unstable();
        // single delta=2 edge: deck factor 2; each chain: outer swap
        assert_eq!(orders, vec![2, 2, 2]);
    }
}
