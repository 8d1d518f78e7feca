//! Randomized property tests for the arithmetic core, the rewriting
//! system, and the combinatorial morphisms.

use proptest::prelude::*;

use squot::localization::{enumerate_fixed_graphs, graph_contribution, Geometry};
use squot::multipoly::MultiPoly;
use squot::quotient::{
    chamber_index, contract, enumerate_quotients, is_epsilon_stable, plucker, walls,
};
use squot::ratfunc::RationalFunction;
use squot::rational::Rational;
use squot::taut::{canonical_form, Monomial, TautExpr};

fn rat() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

fn nonzero_rat() -> impl Strategy<Value = Rational> {
    rat().prop_filter("nonzero", |r| !r.is_zero())
}

proptest! {
    #[test]
    fn rational_field_axioms(a in rat(), b in rat(), c in rat()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn rational_division_inverts(a in rat(), b in nonzero_rat()) {
        let q = a.div_exact(&b).unwrap();
        prop_assert_eq!(&q * &b, a);
    }
}

// small random polynomials in three parameters
fn poly() -> impl Strategy<Value = MultiPoly> {
    proptest::collection::vec((0u32..3, 0u32..3, 0u32..3, -5i64..=5), 1..4).prop_map(|terms| {
        let mut p = MultiPoly::zero(3);
        for (a, b, c, k) in terms {
            let mono = MultiPoly::var(3, 0)
                .pow(a)
                .mul(&MultiPoly::var(3, 1).pow(b))
                .mul(&MultiPoly::var(3, 2).pow(c))
                .scale(&Rational::from_int(k));
            p = p.add(&mono);
        }
        p
    })
}

fn nonzero_poly() -> impl Strategy<Value = MultiPoly> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_function_cancellation(
        a in nonzero_poly(),
        b in nonzero_poly(),
        c in nonzero_poly(),
    ) {
        let f = RationalFunction::new(a, b).unwrap();
        let g = RationalFunction::new(c.clone(), MultiPoly::one(3)).unwrap();
        // (f*g)/g = f whenever g != 0
        let back = f.mul(&g).div(&g).unwrap();
        prop_assert_eq!(&back, &f);
        // equality is symmetric and consistent with subtraction
        prop_assert!(back.sub(&f).is_zero());
    }
}

// ---- rewriting system ----

fn monomial() -> impl Strategy<Value = Monomial> {
    let dset = proptest::sample::subsequence(vec![1u32, 2, 3, 4, 5], 2..=3);
    let delta = proptest::sample::subsequence(vec![1u32, 2, 3, 4, 5], 2..=3);
    (
        proptest::collection::vec((1u32..=3, 1u32..=2), 0..2),
        proptest::collection::vec((1u32..=5, 1u32..=2), 0..3),
        proptest::collection::vec(dset, 0..3),
        proptest::collection::vec(delta, 0..2),
    )
        .prop_map(|(psis, psihs, dsets, deltas)| {
            let mut m = Monomial::one();
            for (i, e) in psis {
                *m.psi.entry(i).or_insert(0) += e;
            }
            for (j, e) in psihs {
                *m.psih.entry(j).or_insert(0) += e;
            }
            for set in dsets {
                *m.dsets.entry(set).or_insert(0) += 1;
            }
            for set in deltas {
                *m.deltas.entry(set).or_insert(0) += 1;
            }
            m
        })
}

fn taut_expr() -> impl Strategy<Value = TautExpr> {
    proptest::collection::vec((monomial(), -6i64..=6), 1..5).prop_map(|terms| {
        let mut e = TautExpr::zero();
        for (m, c) in terms {
            e.add_term(m, Rational::from_int(c));
        }
        e
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn canonical_form_is_idempotent(e in taut_expr()) {
        let once = canonical_form(&e, None);
        prop_assert_eq!(canonical_form(&once, None), once);
    }

    #[test]
    fn canonical_form_under_eps_is_idempotent(e in taut_expr()) {
        let eps = Rational::new(1, 2).unwrap();
        let once = canonical_form(&e, Some(&eps));
        prop_assert_eq!(canonical_form(&once, Some(&eps)), once);
    }

    #[test]
    fn product_order_is_immaterial(a in taut_expr(), b in taut_expr(), c in taut_expr()) {
        // multiplication in shuffled order canonicalizes identically
        let abc = canonical_form(&a.mul(&b).mul(&c), None);
        let cab = canonical_form(&c.mul(&a).mul(&b), None);
        let bca = canonical_form(&b.mul(&c).mul(&a), None);
        prop_assert_eq!(&abc, &cab);
        prop_assert_eq!(&abc, &bca);
    }

    #[test]
    fn diagonal_merge_instances_hold(
        j in proptest::sample::subsequence(vec![1u32, 2, 3, 4, 5], 2..=4),
        jp in proptest::sample::subsequence(vec![1u32, 2, 3, 4, 5], 2..=4),
    ) {
        let overlap: Vec<u32> = j.iter().filter(|x| jp.contains(x)).copied().collect();
        prop_assume!(!overlap.is_empty());
        let mut union: Vec<u32> = j.clone();
        union.extend(&jp);
        union.sort_unstable();
        union.dedup();
        // lhs: the raw product
        let lhs = TautExpr::from_monomial(Monomial::dset(&j).unwrap(), Rational::one())
            .mul(&TautExpr::from_monomial(Monomial::dset(&jp).unwrap(), Rational::one()));
        // rhs: (-psih(min U))^(|overlap|-1) D(U)
        let mut rhs = TautExpr::from_monomial(Monomial::dset(&union).unwrap(), Rational::one());
        let psih = TautExpr::from_monomial(Monomial::psih(union[0]), Rational::one()).neg();
        for _ in 0..overlap.len() - 1 {
            rhs = rhs.mul(&psih);
        }
        prop_assert_eq!(canonical_form(&lhs, None), canonical_form(&rhs, None));
    }
}

// ---- quotient morphisms ----

#[test]
fn plucker_preserves_stability_and_degree() {
    let pool = enumerate_quotients(1, 1, 3, 3).unwrap();
    let eps_values: Vec<Rational> = vec![
        Rational::new(1, 4).unwrap(),
        Rational::new(1, 3).unwrap(),
        Rational::new(1, 2).unwrap(),
        Rational::new(2, 3).unwrap(),
        Rational::one(),
        Rational::from_int(3),
    ];
    for (k, q) in pool.iter().enumerate() {
        let mut q = q.clone();
        // vary the rank data deterministically across the pool
        q.rank = match k % 3 {
            0 => (1, 2),
            1 => (2, 4),
            _ => (2, 5),
        };
        let p = plucker(&q).unwrap();
        assert_eq!(p.total_degree(), q.total_degree());
        for eps in &eps_values {
            assert_eq!(
                is_epsilon_stable(&q, eps).unwrap().is_stable(),
                is_epsilon_stable(&p, eps).unwrap().is_stable(),
            );
        }
    }
}

#[test]
fn plucker_commutes_with_contract() {
    let pool = enumerate_quotients(1, 1, 3, 3).unwrap();
    let ws = walls(1, 1, 3).unwrap();
    let eps = Rational::from_int(3);
    let mut seen = 0;
    for q in &pool {
        if !is_epsilon_stable(q, &eps).unwrap().is_stable() {
            continue;
        }
        for chamber in 1..=ws.num_chambers() {
            let target = ws.chamber_sample(chamber).unwrap();
            if target > eps {
                continue;
            }
            let a = plucker(&contract(q, &eps, &target).unwrap()).unwrap();
            let b = contract(&plucker(q).unwrap(), &eps, &target).unwrap();
            assert_eq!(a, b);
            seen += 1;
        }
    }
    assert!(seen > 50, "pool too small to be meaningful: {seen}");
}

/// A quotient datum of type (1, 1, d) is the same thing as a weighted
/// configuration: light points carry the stability parameter as weight,
/// torsion lengths become coincidence-class sizes, and the free degree
/// becomes simple points. Stability must agree on the nose.
#[test]
fn quotient_stability_agrees_with_weighted_stability() {
    use squot::hassett::{is_weighted_stable, weight_vector, WeightedConfig, WeightedMarking};

    let eps_values = [
        Rational::new(1, 4).unwrap(),
        Rational::new(1, 3).unwrap(),
        Rational::new(1, 2).unwrap(),
        Rational::new(3, 4).unwrap(),
        Rational::one(),
    ];
    let mut agreements = 0usize;
    for (g, m, d) in [(0u32, 0u32, 3u32), (0, 2, 2), (1, 1, 3), (2, 0, 2)] {
        for quot in enumerate_quotients(g, m, d, 3).unwrap() {
            // translate to the weighted picture
            let genera: Vec<u32> = quot.vertices.iter().map(|v| v.genus).collect();
            let mut markings = Vec::new();
            let mut class_id = 0u32;
            for (vi, v) in quot.vertices.iter().enumerate() {
                for &label in &v.markings {
                    class_id += 1;
                    markings.push(WeightedMarking {
                        label,
                        vertex: vi,
                        coincidence: class_id,
                    });
                }
            }
            let mut light_label = m;
            for (vi, v) in quot.vertices.iter().enumerate() {
                let mut place = |count: u32, markings: &mut Vec<WeightedMarking>| {
                    class_id += 1;
                    for _ in 0..count {
                        light_label += 1;
                        markings.push(WeightedMarking {
                            label: light_label,
                            vertex: vi,
                            coincidence: class_id,
                        });
                    }
                };
                for &len in &v.torsion {
                    place(len, &mut markings);
                }
                let free = v.degree - v.torsion.iter().sum::<u32>();
                for _ in 0..free {
                    place(1, &mut markings);
                }
            }
            let cfg = WeightedConfig {
                genera,
                edges: quot.edges.clone(),
                markings,
            };
            for eps in &eps_values {
                let weights = weight_vector(m, d, eps).unwrap();
                let via_quotient = is_epsilon_stable(&quot, eps).unwrap().is_stable();
                let via_weights = is_weighted_stable(&cfg, &weights).unwrap();
                assert_eq!(
                    via_quotient, via_weights,
                    "stability disagreement at eps = {eps} on {quot:?}"
                );
                agreements += 1;
            }
        }
    }
    assert!(
        agreements > 1000,
        "bridge exercised only {agreements} times"
    );
}

#[test]
fn pullback_composes_across_three_walls() {
    use squot::taut::{pullback_contraction, Monomial, TautExpr};
    let one = Rational::one();
    let (w2, w3, w4) = (
        Rational::new(1, 2).unwrap(),
        Rational::new(1, 3).unwrap(),
        Rational::new(1, 4).unwrap(),
    );
    let ph = |j: u32| TautExpr::from_monomial(Monomial::psih(j), Rational::one());
    let dd = |s: &[u32]| TautExpr::from_monomial(Monomial::dset(s).unwrap(), Rational::one());
    for e in [
        ph(1).pow(2),
        ph(1).mul(&ph(2)).mul(&ph(4)),
        ph(2).pow(3),
        ph(1).mul(&dd(&[2, 3])),
        ph(3).pow(2).mul(&dd(&[1, 2])),
    ] {
        let direct = pullback_contraction(&e, &one, &w4, 4).unwrap();
        let chained = pullback_contraction(
            &pullback_contraction(
                &pullback_contraction(&e, &one, &w2, 4).unwrap(),
                &w2,
                &w3,
                4,
            )
            .unwrap(),
            &w3,
            &w4,
            4,
        )
        .unwrap();
        assert_eq!(direct, chained, "three-wall composition failed on {e}");
    }
}

#[test]
fn chamber_samples_land_in_their_chambers() {
    for (g, m, d) in [(0, 0, 4), (0, 0, 5), (1, 0, 3), (2, 2, 4)] {
        let ws = walls(g, m, d).unwrap();
        for chamber in 1..=ws.num_chambers() {
            let eps = ws.chamber_sample(chamber).unwrap();
            assert_eq!(chamber_index(&ws, &eps).unwrap(), chamber);
        }
    }
}

// ---- localization symmetries ----

#[test]
fn assembled_sum_is_symmetric_under_parameter_permutations() {
    // evaluate the summed contributions at a point and at its images under
    // coordinate permutations; the exact values must agree
    let eps = Rational::from_int(3);
    for (g, d, geometry) in [
        (0u32, 2u32, Geometry::Conifold),
        (1, 1, Geometry::LocalP2),
        (0, 1, Geometry::Quintic),
    ] {
        let n = geometry.n();
        let twist = geometry.twist().unwrap();
        let graphs = enumerate_fixed_graphs(g, 0, d, 1, n, &eps).unwrap();
        let conts: Vec<_> = graphs
            .iter()
            .map(|fg| graph_contribution(fg, &eps, Some(&twist)).unwrap())
            .collect();
        let base: Vec<Rational> = [2i64, 7, 19, 37, 61][..n as usize]
            .iter()
            .map(|&x| Rational::from_int(x))
            .collect();
        let eval = |point: &[Rational]| -> Rational {
            let mut total = Rational::zero();
            for c in &conts {
                total += &c.substitute(point).unwrap();
            }
            total
        };
        let reference = eval(&base);
        // cyclic shift and a swap generate the whole symmetric group
        let mut shifted = base.clone();
        shifted.rotate_left(1);
        assert_eq!(eval(&shifted), reference);
        let mut swapped = base.clone();
        swapped.swap(0, n as usize - 1);
        assert_eq!(eval(&swapped), reference);
    }
}

/// Independent algebraic route for the flag-series integrals on stable
/// genus-zero vertices: by the multinomial theorem,
/// `int prod_F 1/(w_F - psi_F) = (sum_F 1/w_F)^(k-3) / prod_F w_F`,
/// so an untwisted vertex contribution must equal that closed form times
/// the tangent Euler class to the `k - 1`.
#[test]
fn stable_vertex_contributions_match_the_closed_form() {
    use squot::localization::vertex_contribution;
    use squot::multipoly::MultiPoly;
    use squot::ratfunc::RationalFunction;

    let eps = Rational::from_int(3);
    let mut checked = 0;
    for d in 3..=5u32 {
        for fg in enumerate_fixed_graphs(0, 0, d, 1, 2, &eps).unwrap() {
            for v in 0..fg.vertices.len() {
                let k = fg.valence(v) as usize;
                if k < 3 {
                    continue;
                }
                let n = 2usize;
                let i = (fg.vertices[v].iota[0] - 1) as usize;
                let mut weights = Vec::new();
                for e in &fg.edges {
                    let other = if e.ends.0 == v {
                        e.ends.1
                    } else if e.ends.1 == v {
                        e.ends.0
                    } else {
                        continue;
                    };
                    let j = (fg.vertices[other].iota[0] - 1) as usize;
                    let diff = MultiPoly::var(n, j).sub(&MultiPoly::var(n, i));
                    let w = diff.scale(&Rational::new(1, e.delta as i64).unwrap());
                    weights.push(RationalFunction::from_poly(w));
                }
                let mut et = RationalFunction::one(n);
                for l in 0..n {
                    if l != i {
                        et = et.mul(&RationalFunction::from_poly(
                            MultiPoly::var(n, l).sub(&MultiPoly::var(n, i)),
                        ));
                    }
                }
                let mut sum_inv = RationalFunction::zero(n);
                let mut prod = RationalFunction::one(n);
                for w in &weights {
                    sum_inv = sum_inv.add(&w.recip().unwrap());
                    prod = prod.mul(w);
                }
                let closed = et
                    .pow(k as i64 - 1)
                    .unwrap()
                    .mul(&sum_inv.pow(k as i64 - 3).unwrap())
                    .div(&prod)
                    .unwrap();
                let direct = vertex_contribution(&fg, v, &eps, None).unwrap();
                assert_eq!(direct, closed);
                checked += 1;
            }
        }
    }
    assert!(checked >= 10, "only {checked} stable vertices seen");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn parser_never_panics(input in "[ psihD()Delta0-9*^+,/-]{0,40}") {
        // errors are fine; panics are not
        let _ = squot::taut::parse_expr(&input, squot::taut::ExprBounds::default());
    }

    #[test]
    fn printed_expressions_reparse_to_themselves(e in taut_expr()) {
        let canon = canonical_form(&e, None);
        let printed = canon.to_string();
        let back = squot::taut::parse_expr(&printed, squot::taut::ExprBounds::default())
            .unwrap_or_else(|err| panic!("reparse of {printed:?} failed: {err}"));
        prop_assert_eq!(canonical_form(&back, None), canon);
    }
}

#[test]
fn every_graph_summand_has_weight_degree_zero() {
    let eps = Rational::from_int(3);
    for (g, d, geometry) in [
        (0u32, 3u32, Geometry::Conifold),
        (1, 1, Geometry::LocalP2),
        (0, 1, Geometry::Quintic),
    ] {
        let n = geometry.n();
        let twist = geometry.twist().unwrap();
        for fg in enumerate_fixed_graphs(g, 0, d, 1, n, &eps).unwrap() {
            let cont = graph_contribution(&fg, &eps, Some(&twist)).unwrap();
            assert!(cont.is_zero() || cont.homogeneous_degree() == Some(0));
        }
    }
}
