//! Ready-made towers and order specs used by the test suites and shipped as
//! JSON configs next to the command-line tool.

use num_traits::One;

use crate::biorder::{BiOrderSpec, DerivedStage, NonConvexSpec, OrderSpec};
use crate::latord::FormTower;
use crate::laurent::IntPoly;
use crate::realalg::{QAlphaElem, RealAlgebraic};
use crate::zxord::{ZxOrderSpec, ZxStage};
use crate::{Int, Rat, Sign};

pub fn sqrt2() -> RealAlgebraic {
    RealAlgebraic::new(
        IntPoly::from_i64(&[-2, 0, 1]),
        Rat::from_integer(Int::from(1)),
        Rat::from_integer(Int::from(2)),
    )
    .expect("x^2 - 2 isolates sqrt(2) on (1, 2)")
}

fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

/// Five named towers: rational and sqrt(2)-entry examples.
pub fn towers() -> Vec<(&'static str, FormTower)> {
    let a = sqrt2();
    vec![
        ("lex2", FormTower::lex(2)),
        ("lex3", FormTower::lex(3)),
        (
            "slope2",
            FormTower::from_rational_forms(2, &[vec![rat(1, 1), rat(2, 1)], vec![rat(1, 1), rat(0, 1)]])
                .expect("static tower"),
        ),
        (
            "sqrt2",
            FormTower::new(
                2,
                Some(a.clone()),
                vec![vec![QAlphaElem::one(), a.generator()]],
            )
            .expect("static tower"),
        ),
        (
            "sqrt2-3d",
            FormTower::new(
                3,
                Some(a.clone()),
                vec![
                    vec![QAlphaElem::one(), a.generator(), QAlphaElem::zero()],
                    vec![QAlphaElem::zero(), QAlphaElem::zero(), QAlphaElem::one()],
                ],
            )
            .expect("static tower"),
        ),
    ]
}

/// Five named shift-invariant orders on the univariate Laurent ring.
pub fn zx_specs() -> Vec<(&'static str, ZxOrderSpec)> {
    let two = RealAlgebraic::from_rational(&rat(2, 1));
    let three_halves = RealAlgebraic::from_rational(&rat(3, 2));
    vec![
        (
            "at-zero",
            ZxOrderSpec::new(vec![ZxStage::at_zero(Sign::Pos)]).unwrap(),
        ),
        (
            "at-infinity-neg",
            ZxOrderSpec::new(vec![ZxStage::at_infinity(Sign::Neg)]).unwrap(),
        ),
        (
            "sqrt2-zero",
            ZxOrderSpec::new(vec![
                ZxStage::at_algebraic(sqrt2(), Sign::Pos).unwrap(),
                ZxStage::at_zero(Sign::Pos),
            ])
            .unwrap(),
        ),
        (
            "three-halves-inf",
            ZxOrderSpec::new(vec![
                ZxStage::at_algebraic(three_halves, Sign::Neg).unwrap(),
                ZxStage::at_infinity(Sign::Pos),
            ])
            .unwrap(),
        ),
        (
            "two-sqrt2-zero",
            ZxOrderSpec::new(vec![
                ZxStage::at_algebraic(two, Sign::Pos).unwrap(),
                ZxStage::at_algebraic(sqrt2(), Sign::Neg).unwrap(),
                ZxStage::at_zero(Sign::Pos),
            ])
            .unwrap(),
        ),
    ]
}

/// Rank-2 lexicographic quotient with a leading-coefficient derived stage.
pub fn m2_lex_order() -> OrderSpec {
    OrderSpec::Quotient(
        BiOrderSpec::new(
            2,
            FormTower::lex(2),
            vec![DerivedStage::LeadingCoeff {
                q_order: FormTower::lex(2),
                coeff_order: FormTower::lex(2),
            }],
        )
        .expect("static spec"),
    )
}

/// Rank-3 order with a rational character stage before the leading
/// coefficient: chi = (2, 1, 1/2), all weights 1.
pub fn m3_character_order() -> OrderSpec {
    OrderSpec::Quotient(
        BiOrderSpec::new(
            3,
            FormTower::lex(3),
            vec![
                DerivedStage::Character {
                    alpha: None,
                    chi: vec![
                        QAlphaElem::from_rat(rat(2, 1)),
                        QAlphaElem::from_rat(rat(1, 1)),
                        QAlphaElem::from_rat(rat(1, 2)),
                    ],
                    weights: vec![Rat::one(), Rat::one(), Rat::one()],
                },
                DerivedStage::LeadingCoeff {
                    q_order: FormTower::lex(3),
                    coeff_order: FormTower::lex(3),
                },
            ],
        )
        .expect("static spec"),
    )
}

/// The default rank-3 non-convex order.
pub fn nonconvex3() -> OrderSpec {
    OrderSpec::NonConvex(NonConvexSpec::thm_default(3).expect("rank 3 is enough"))
}
