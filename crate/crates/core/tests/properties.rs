//! Property suites for the algebraic invariants: ring and field axioms,
//! order-theoretic laws, module invariance and the string-level cone facts.

use proptest::prelude::*;

use ordlab_core::biorder::{derived_sign, DerivedStage};
use ordlab_core::conelang;
use ordlab_core::harness::ExecMode;
use ordlab_core::latord::{ci_bracket, vec_i64, ComparisonBracket, FormTower, LimitResult, Rel};
use ordlab_core::laurent::{IntPoly, LaurentPoly, Monomial, RatPoly};
use ordlab_core::magnus::{GroupWord, Letter, WreathElement};
use ordlab_core::presets;
use ordlab_core::realalg::{sturm_count, QAlphaElem};
use ordlab_core::{Int, Rat, Sign};

fn monomial(vars: usize) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(-5i64..=5, vars).prop_map(Monomial)
}

fn poly(vars: usize) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((monomial(vars), -9i64..=9), 0..6)
        .prop_map(move |terms| {
            LaurentPoly::from_terms(vars, terms.into_iter().map(|(m, c)| (m, Int::from(c))))
        })
}

fn word(rank: usize, max_len: usize) -> impl Strategy<Value = GroupWord> {
    prop::collection::vec((0..rank, any::<bool>()), 0..max_len).prop_map(move |letters| {
        GroupWord::new(
            rank,
            letters
                .into_iter()
                .map(|(gen, inverse)| Letter { gen, inverse })
                .collect(),
        )
        .unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms(a in poly(2), b in poly(2), c in poly(2)) {
        let ab = a.mul(&b).unwrap();
        let ba = b.mul(&a).unwrap();
        prop_assert_eq!(&ab, &ba);
        let assoc_l = ab.mul(&c).unwrap();
        let assoc_r = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(assoc_l, assoc_r);
        let distrib_l = a.mul(&b.add(&c).unwrap()).unwrap();
        let distrib_r = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(distrib_l, distrib_r);
        prop_assert!(a.sub(&a).unwrap().is_zero());
    }
}

proptest! {
    #[test]
    fn shift_commutes_with_mul(a in poly(2), b in poly(2), m in monomial(2)) {
        let lhs = a.mul(&b).unwrap().shift(&m).unwrap();
        let rhs = a.shift(&m).unwrap().mul(&b).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn augmentation_is_ring_hom(a in poly(3), b in poly(3)) {
        prop_assert_eq!(
            a.mul(&b).unwrap().augmentation(),
            a.augmentation() * b.augmentation()
        );
        prop_assert_eq!(
            a.add(&b).unwrap().augmentation(),
            a.augmentation() + b.augmentation()
        );
    }

    #[test]
    fn print_parse_round_trip(p in poly(3)) {
        let s = p.to_string();
        prop_assert_eq!(LaurentPoly::parse(3, &s).unwrap(), p);
    }

    #[test]
    fn divexact_recovers_factor(g in poly(1), c0 in -5i64..=5, c1 in -5i64..=5) {
        let p = IntPoly::new(vec![Int::from(c0), Int::from(c1), Int::from(1)]);
        let f = g.mul(&p.to_laurent()).unwrap();
        let q = f.divexact_uni(&p).unwrap();
        prop_assert_eq!(q, g);
    }

    #[test]
    fn sturm_counts_are_additive(coeffs in prop::collection::vec(-9i64..=9, 1..6), split in -3i64..=3) {
        let p = IntPoly::from_i64(&coeffs);
        prop_assume!(!p.is_zero());
        let lo = Rat::from_integer(Int::from(-100));
        let hi = Rat::from_integer(Int::from(100));
        let mid = Rat::new(Int::from(2 * split + 1), Int::from(2));
        // Half-integer endpoints are never roots of an integer polynomial
        // with these degrees unless the polynomial vanishes there; skip then.
        let total = match sturm_count(&p, &lo, &hi) {
            Ok(n) => n,
            Err(_) => return Ok(()),
        };
        let left = match sturm_count(&p, &lo, &mid) {
            Ok(n) => n,
            Err(_) => return Ok(()),
        };
        let right = match sturm_count(&p, &mid, &hi) {
            Ok(n) => n,
            Err(_) => return Ok(()),
        };
        prop_assert_eq!(total, left + right);
    }
}

fn qalpha(range: std::ops::RangeInclusive<i64>) -> impl Strategy<Value = QAlphaElem> {
    (range.clone(), range).prop_map(|(a, b)| {
        QAlphaElem::from_poly_unchecked(RatPoly::new(vec![
            Rat::from_integer(Int::from(a)),
            Rat::from_integer(Int::from(b)),
        ]))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn field_axioms_in_q_sqrt2(u in qalpha(-9..=9), v in qalpha(-9..=9), w in qalpha(-9..=9)) {
        let al = presets::sqrt2();
        let uv = al.qa_mul(&u, &v);
        prop_assert_eq!(&uv, &al.qa_mul(&v, &u));
        prop_assert_eq!(
            al.qa_mul(&uv, &w),
            al.qa_mul(&u, &al.qa_mul(&v, &w))
        );
        prop_assert_eq!(
            al.qa_mul(&u, &al.qa_add(&v, &w)),
            al.qa_add(&al.qa_mul(&u, &v), &al.qa_mul(&u, &w))
        );
        if !u.is_zero() {
            let inv = al.qa_inv(&u).unwrap();
            prop_assert_eq!(al.qa_mul(&u, &inv), QAlphaElem::one());
        }
    }
}

fn lattice_vec(dim: usize) -> impl Strategy<Value = Vec<Int>> {
    prop::collection::vec(-6i64..=6, dim).prop_map(|v| vec_i64(&v))
}

proptest! {
    #[test]
    fn tower_sign_group_laws(u in lattice_vec(3), v in lattice_vec(3), idx in 0usize..5) {
        let towers = presets::towers();
        let (_, tower) = &towers[idx];
        let dim = tower.dim();
        let u = u[..dim].to_vec();
        let v = v[..dim].to_vec();
        let su = tower.sign(&u).unwrap();
        let neg: Vec<Int> = u.iter().map(|c| -c).collect();
        prop_assert_eq!(tower.sign(&neg).unwrap(), -su);
        if su == Sign::Pos && tower.sign(&v).unwrap() == Sign::Pos {
            let sum: Vec<Int> = u.iter().zip(&v).map(|(a, b)| a + b).collect();
            prop_assert_eq!(tower.sign(&sum).unwrap(), Sign::Pos);
        }
    }

    #[test]
    fn archimedean_relation_laws(u in lattice_vec(2), v in lattice_vec(2), w in lattice_vec(2)) {
        let tower = FormTower::lex(2);
        let nonzero = |x: &Vec<Int>| x.iter().any(|c| !num_traits::Zero::is_zero(c));
        prop_assume!(nonzero(&u) && nonzero(&v) && nonzero(&w));
        prop_assert_eq!(tower.rel(&u, &u).unwrap(), Rel::Comparable);
        let uv = tower.rel(&u, &v).unwrap();
        let vu = tower.rel(&v, &u).unwrap();
        match uv {
            Rel::Comparable => prop_assert_eq!(vu, Rel::Comparable),
            Rel::LexLess => prop_assert_eq!(vu, Rel::LexGreater),
            Rel::LexGreater => prop_assert_eq!(vu, Rel::LexLess),
        }
        // Transitivity of the strict part through the comparable classes.
        let vw = tower.rel(&v, &w).unwrap();
        if uv == Rel::LexLess && vw == Rel::LexLess {
            prop_assert_eq!(tower.rel(&u, &w).unwrap(), Rel::LexLess);
        }
        if uv == Rel::Comparable && vw == Rel::Comparable {
            prop_assert_eq!(tower.rel(&u, &w).unwrap(), Rel::Comparable);
        }
    }

    #[test]
    fn limit_index_within_one_over_n(
        u in lattice_vec(2),
        v in lattice_vec(2),
        n in 1u64..64,
    ) {
        let towers = presets::towers();
        let tower = &towers[2].1; // the slope-2 rational tower
        prop_assume!(tower.sign(&u).unwrap() == Sign::Pos);
        prop_assume!(tower.sign(&v).unwrap() == Sign::Pos);
        let exact = match tower.ci_exact(&u, &v).unwrap() {
            ComparisonBracket::Exact(e) => e.as_rat().unwrap(),
            _ => return Ok(()),
        };
        match tower.ci_by_limit(&u, &v, n).unwrap() {
            LimitResult::Ratio(r) => {
                let err = if r > exact { &r - &exact } else { &exact - &r };
                let bound = Rat::new(Int::from(1), Int::from(n));
                prop_assert!(err <= bound, "err {} at n {}", err, n);
            }
            LimitResult::NoMinimum => prop_assert!(false, "finite index lost"),
        }
    }
}

fn derived_element(rank: usize) -> impl Strategy<Value = WreathElement> {
    word(rank, 8).prop_map(move |w| {
        // Random word times a correction making the abelianization zero.
        let e = WreathElement::eval(&w);
        let mut fix = GroupWord::empty(rank);
        for (i, &c) in e.abelianization().to_vec().iter().enumerate() {
            fix = fix
                .concat(&GroupWord::generator_power(rank, i, -c).unwrap())
                .unwrap();
        }
        e.mul(&WreathElement::eval(&fix)).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn evaluation_is_a_homomorphism(u in word(3, 12), v in word(3, 12)) {
        let uv = u.concat(&v).unwrap();
        prop_assert_eq!(
            WreathElement::eval(&uv),
            WreathElement::eval(&u).mul(&WreathElement::eval(&v)).unwrap()
        );
        prop_assert!(WreathElement::eval(&u).in_image());
    }
}

proptest! {
    #[test]
    fn module_action_is_a_module_action(d in derived_element(2), p in poly(2), q in poly(2)) {
        let lhs = d.module_exp(&p.add(&q).unwrap()).unwrap();
        let rhs = d.module_exp(&p).unwrap().mul(&d.module_exp(&q).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let iterated = d.module_exp(&p).unwrap().module_exp(&q).unwrap();
        prop_assert_eq!(iterated, d.module_exp(&p.mul(&q).unwrap()).unwrap());
    }

    #[test]
    fn derived_stages_are_module_invariant(d in derived_element(3), q in monomial(3)) {
        let translate = d.module_exp(&LaurentPoly::term(q, Int::from(1))).unwrap();
        let lead = DerivedStage::LeadingCoeff {
            q_order: FormTower::lex(3),
            coeff_order: FormTower::lex(3),
        };
        prop_assert_eq!(
            derived_sign(std::slice::from_ref(&lead), &d).unwrap(),
            derived_sign(std::slice::from_ref(&lead), &translate).unwrap()
        );
        let character = DerivedStage::Character {
            alpha: None,
            chi: vec![
                QAlphaElem::from_rat(Rat::new(Int::from(2), Int::from(1))),
                QAlphaElem::from_rat(Rat::new(Int::from(1), Int::from(1))),
                QAlphaElem::from_rat(Rat::new(Int::from(1), Int::from(2))),
            ],
            weights: vec![num_traits::One::one(); 3],
        };
        prop_assert_eq!(
            derived_sign(std::slice::from_ref(&character), &d).unwrap(),
            derived_sign(std::slice::from_ref(&character), &translate).unwrap()
        );
        // The non-convex functional is invariant on image elements.
        let nc = match presets::nonconvex3() {
            ordlab_core::biorder::OrderSpec::NonConvex(n) => n,
            _ => unreachable!(),
        };
        prop_assert_eq!(nc.phi(&d).unwrap(), nc.phi(&translate).unwrap());
    }

    #[test]
    fn compare_sides_agree_for_bi_orders(u in word(2, 10), v in word(2, 10)) {
        let order = presets::m2_lex_order();
        let e1 = WreathElement::eval(&u);
        let e2 = WreathElement::eval(&v);
        let right = order.sign(&e1.mul(&e2.inv()).unwrap()).unwrap();
        let left = order.sign(&e2.inv().mul(&e1).unwrap()).unwrap();
        prop_assert_eq!(right, left);
    }
}

/// Comparison-index brackets of module elements are invariant under the
/// module action, realized through the derived-sign oracle.
#[test]
fn ci_brackets_invariant_under_module_action() {
    let stages = vec![DerivedStage::LeadingCoeff {
        q_order: FormTower::lex(2),
        coeff_order: FormTower::lex(2),
    }];
    let c = WreathElement::commutator(
        &WreathElement::generator(2, 0).unwrap(),
        &WreathElement::generator(2, 1).unwrap(),
    )
    .unwrap();
    let m1 = c.clone();
    let m2 = c
        .module_exp(&LaurentPoly::parse(2, "1 + x1").unwrap())
        .unwrap();
    let bracket_of = |a: &WreathElement, b: &WreathElement| {
        let a = a.clone();
        let b = b.clone();
        let stages = &stages;
        ci_bracket(
            move |m: &Int, n: &Int| {
                let am = a.module_exp(&LaurentPoly::constant(2, m.clone())).unwrap();
                let bn = b.module_exp(&LaurentPoly::constant(2, n.clone())).unwrap();
                derived_sign(stages, &am.mul(&bn).unwrap())
            },
            64,
        )
        .unwrap()
    };
    let base = bracket_of(&m1, &m2);
    for q in [[1i64, 0], [0, -2], [3, 1]] {
        let shift = LaurentPoly::term(Monomial(q.to_vec()), Int::from(1));
        let t1 = m1.module_exp(&shift).unwrap();
        let t2 = m2.module_exp(&shift).unwrap();
        assert_eq!(bracket_of(&t1, &t2), base);
    }
}

/// String-level disjointness: no accepted string's formal inverse is
/// accepted, and no two accepted strings evaluate to mutually inverse
/// elements (checked on the full length-8 enumeration).
#[test]
fn cone_and_inverse_cone_are_disjoint() {
    let order = conelang::matching_order();
    let mut accepted_elements = std::collections::HashSet::new();
    let accepted_words = conelang::enumerate_accepted(8).unwrap();
    assert!(!accepted_words.is_empty());
    for w in &accepted_words {
        // Formal inverse: reverse and swap case.
        let inv: String = w
            .chars()
            .rev()
            .map(|c| {
                if c.is_ascii_lowercase() {
                    c.to_ascii_uppercase()
                } else {
                    c.to_ascii_lowercase()
                }
            })
            .collect();
        assert!(
            !conelang::cl_accept(&inv).unwrap(),
            "{w} and its inverse word {inv} both accepted"
        );
        let e = WreathElement::eval(&conelang::to_group_word(w).unwrap());
        assert_eq!(order.sign(&e).unwrap(), Sign::Pos);
        accepted_elements.insert(e);
    }
    for e in &accepted_elements {
        assert!(
            !accepted_elements.contains(&e.inv()),
            "an element and its inverse are both represented"
        );
    }
}

proptest! {
    #[test]
    fn simplest_rational_is_simplest(
        a in 0i64..400,
        d1 in 1i64..40,
        w in 1i64..50,
        d2 in 1i64..40,
    ) {
        use ordlab_core::latord::simplest_in_interval;
        let lo = Rat::new(Int::from(a), Int::from(d1));
        let hi = &lo + Rat::new(Int::from(w), Int::from(d2));
        let c = simplest_in_interval(&lo, &hi);
        prop_assert!(c >= lo && c <= hi, "{c} outside [{lo}, {hi}]");
        // No rational with a smaller denominator fits in the interval.
        let denom: i64 = num_traits::ToPrimitive::to_i64(c.denom()).unwrap();
        for q in 1..denom {
            let first = (lo.numer() * Int::from(q) + lo.denom() - Int::from(1))
                / lo.denom(); // ceil(lo * q)
            let cand = Rat::new(first, Int::from(q));
            prop_assert!(
                cand > hi,
                "{cand} in [{lo}, {hi}] has denominator {q} < {denom}"
            );
        }
    }
}

/// Probing the first codification stage of every shipped shift-invariant
/// order recovers its orientation and comparison value.
#[test]
fn codify_probe_round_trips_shipped_specs() {
    use ordlab_core::zxord::{codify_probe, StageKind};
    for (name, spec) in presets::zx_specs() {
        let (eps, bracket) = codify_probe(|f| spec.sign(f), 128).unwrap();
        let first = &spec.stages()[0];
        assert_eq!(eps, first.eps, "{name}: orientation");
        match &first.kind {
            StageKind::AtZero => assert_eq!(bracket, ComparisonBracket::Zero, "{name}"),
            StageKind::AtInfinity => {
                assert_eq!(bracket, ComparisonBracket::Infinity, "{name}")
            }
            StageKind::AtAlgebraic(a) => match (&bracket, a.as_rational()) {
                (ComparisonBracket::Exact(v), Some(r)) => {
                    assert_eq!(v.as_rat().unwrap(), r, "{name}")
                }
                (ComparisonBracket::Interval(lo, hi), None) => {
                    assert_eq!(a.compare_rational(lo), Sign::Pos, "{name}");
                    assert_eq!(a.compare_rational(hi), Sign::Neg, "{name}");
                }
                other => panic!("{name}: unexpected bracket {other:?}"),
            },
        }
    }
}

/// Repeated algebraic stages are allowed and strip one factor per stage.
#[test]
fn repeated_algebraic_stages() {
    use ordlab_core::zxord::{ZxOrderSpec, ZxStage};
    let spec = ZxOrderSpec::new(vec![
        ZxStage::at_algebraic(presets::sqrt2(), Sign::Pos).unwrap(),
        ZxStage::at_algebraic(presets::sqrt2(), Sign::Pos).unwrap(),
        ZxStage::at_zero(Sign::Pos),
    ])
    .unwrap();
    let p = LaurentPoly::parse(1, "x^2 - 2").unwrap();
    let p2 = p.mul(&p).unwrap();
    // One factor vanishes at stage one, the quotient is decided at stage two.
    assert_eq!(spec.sign(&p).unwrap(), Sign::Pos);
    // Both factors strip, the final stage sees the constant 1.
    assert_eq!(spec.sign(&p2).unwrap(), Sign::Pos);
    assert_eq!(spec.sign(&p2.neg()).unwrap(), Sign::Neg);
    assert_eq!(spec.chain(2).unwrap()[2], p2.to_univariate().unwrap().1);
}

/// The soundness scan and the per-string checks agree between backends.
#[test]
fn scan_modes_agree() {
    let seq = conelang::soundness_scan(5, ExecMode::Sequential).unwrap();
    let auto = conelang::soundness_scan(5, ExecMode::auto()).unwrap();
    assert_eq!(seq.accepted, auto.accepted);
    assert_eq!(seq.violations.len(), auto.violations.len());
}
