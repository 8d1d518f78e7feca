//! Brute-force enumeration of quasi-stable quotient data.
//!
//! Exhaustively lists isomorphism-class representatives of decorated dual
//! graphs with prescribed totals. This is the oracle pool for the
//! chamber-constancy and contraction property tests, so correctness beats
//! speed; everything here runs at desk scale.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::quotient::{CombQuotient, Component};

/// All ways to write `total` as an ordered sum of `parts` nonnegative ints.
pub(crate) fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            let mut v = vec![first];
            v.append(&mut rest);
            out.push(v);
        }
    }
    out
}

/// Partitions of `total` into positive parts, each listed descending.
pub(crate) fn partitions(total: u32) -> Vec<Vec<u32>> {
    fn rec(total: u32, max: u32) -> Vec<Vec<u32>> {
        if total == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for first in (1..=max.min(total)).rev() {
            for mut rest in rec(total - first, first) {
                let mut v = vec![first];
                v.append(&mut rest);
                out.push(v);
            }
        }
        out
    }
    rec(total, total)
}

/// Multisets of size `count` drawn from `slots` labeled positions.
fn multisets(count: usize, slots: usize) -> Vec<Vec<usize>> {
    fn rec(
        count: usize,
        from: usize,
        slots: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if count == 0 {
            out.push(cur.clone());
            return;
        }
        for s in from..slots {
            cur.push(s);
            rec(count - 1, s, slots, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(count, 0, slots, &mut Vec::new(), &mut out);
    out
}

fn connected(nv: usize, edges: &[(usize, usize)]) -> bool {
    if nv == 0 {
        return false;
    }
    let mut adj = vec![Vec::new(); nv];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = vec![false; nv];
    seen[0] = true;
    let mut stack = vec![0];
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

/// Canonical representative under vertex relabeling: the lexicographically
/// least normalized form over all permutations. Instances are tiny, so
/// plain backtracking over every permutation is fine.
pub(crate) fn canonical_quotient(q: &CombQuotient) -> CombQuotient {
    let nv = q.vertices.len();
    let mut perm: Vec<usize> = (0..nv).collect();
    let mut best: Option<CombQuotient> = None;
    permute(&mut perm, 0, &mut |p| {
        let mut cand = CombQuotient {
            vertices: (0..nv).map(|i| q.vertices[p[i]].clone()).collect(),
            edges: q
                .edges
                .iter()
                .map(|&(a, b)| {
                    let (x, y) = (inv(p, a), inv(p, b));
                    (x.min(y), x.max(y))
                })
                .collect(),
            rank: q.rank,
        };
        cand.normalize();
        if best.as_ref().is_none_or(|b| cand < *b) {
            best = Some(cand);
        }
    });
    best.expect("at least one permutation")
}

fn inv(p: &[usize], v: usize) -> usize {
    p.iter().position(|&x| x == v).expect("permutation")
}

fn permute(perm: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == perm.len() {
        f(perm);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute(perm, k + 1, f);
        perm.swap(k, i);
    }
}

/// Exhaustive list of isomorphism-class representatives of quasi-stable
/// quotient data with arithmetic genus `g`, markings `1..=m`, total degree
/// `d`, and at most `max_vertices` components. Rank data is `(1, 2)`.
pub fn enumerate_quotients(
    g: u32,
    m: u32,
    d: u32,
    max_vertices: usize,
) -> Result<Vec<CombQuotient>> {
    if g > 3 || m > 3 || d > 6 || max_vertices > 5 {
        return Err(Error::SizeLimit(format!(
            "enumeration bounds exceeded: g={g}, m={m}, d={d}, max_vertices={max_vertices} \
             (need g<=3, m<=3, d<=6, max_vertices<=5)"
        )));
    }
    let mut found: BTreeSet<CombQuotient> = BTreeSet::new();
    for nv in 1..=max_vertices {
        // Slots for edges: unordered pairs including loops.
        let mut slots: Vec<(usize, usize)> = Vec::new();
        for i in 0..nv {
            for j in i..nv {
                slots.push((i, j));
            }
        }
        let ne_min = nv - 1;
        let ne_max = nv - 1 + g as usize;
        for ne in ne_min..=ne_max {
            for edge_choice in multisets(ne, slots.len()) {
                let edges: Vec<(usize, usize)> = edge_choice.iter().map(|&s| slots[s]).collect();
                if !connected(nv, &edges) {
                    continue;
                }
                let h1 = (ne + 1 - nv) as u32;
                if h1 > g {
                    continue;
                }
                let genus_left = g - h1;
                for genera in compositions(genus_left, nv) {
                    for degrees in compositions(d, nv) {
                        for marks in marking_assignments(m, nv) {
                            collect_torsion_choices(
                                &genera, &degrees, &marks, &edges, nv, &mut found,
                            );
                        }
                    }
                }
            }
        }
    }
    Ok(found.into_iter().collect())
}

fn marking_assignments(m: u32, nv: usize) -> Vec<Vec<Vec<u32>>> {
    // every function {1..m} -> vertices, reported as per-vertex label lists
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

fn collect_torsion_choices(
    genera: &[u32],
    degrees: &[u32],
    marks: &[Vec<u32>],
    edges: &[(usize, usize)],
    nv: usize,
    found: &mut BTreeSet<CombQuotient>,
) {
    // per vertex: any multiset of positive lengths with sum <= degree
    let per_vertex: Vec<Vec<Vec<u32>>> = degrees
        .iter()
        .map(|&b| (0..=b).flat_map(partitions).collect())
        .collect();
    let mut pick = vec![0usize; nv];
    loop {
        let q = CombQuotient {
            vertices: (0..nv)
                .map(|i| Component {
                    genus: genera[i],
                    markings: marks[i].clone(),
                    degree: degrees[i],
                    torsion: per_vertex[i][pick[i]].clone(),
                })
                .collect(),
            edges: edges.to_vec(),
            rank: (1, 2),
        };
        found.insert(canonical_quotient(&q));
        // advance the mixed-radix counter
        let mut i = 0;
        loop {
            if i == nv {
                return;
            }
            pick[i] += 1;
            if pick[i] < per_vertex[i].len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
    }
}
