//! JSON encodings of algebraic numbers, form towers and order specs.
//!
//! Rationals travel as strings (`"3/2"`), integers as plain numbers, and
//! field elements either as a rational string or `{"poly": ["c0", "c1"]}`
//! giving the representative in the ambient algebraic field.

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::biorder::{BiOrderSpec, DerivedStage, NonConvexSpec, OrderSpec};
use crate::latord::FormTower;
use crate::laurent::{IntPoly, RatPoly};
use crate::realalg::{QAlphaElem, RealAlgebraic};
use crate::zxord::{StageKind, ZxOrderSpec, ZxStage};
use crate::{Error, Int, Rat, Result, Sign};

pub fn rat_from_str(s: &str) -> Result<Rat> {
    Rat::from_str(s.trim()).map_err(|e| Error::Config(format!("bad rational {s:?}: {e}")))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum IntDto {
    Num(i64),
    Str(String),
}

impl IntDto {
    fn to_int(&self) -> Result<Int> {
        match self {
            IntDto::Num(n) => Ok(Int::from(*n)),
            IntDto::Str(s) => Int::from_str(s.trim())
                .map_err(|e| Error::Config(format!("bad integer {s:?}: {e}"))),
        }
    }

    fn from_int(n: &Int) -> IntDto {
        match i64::try_from(n) {
            Ok(v) => IntDto::Num(v),
            Err(_) => IntDto::Str(n.to_string()),
        }
    }
}

/// `{"minpoly": [-2, 0, 1], "interval": ["1", "2"]}`
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraicDto {
    minpoly: Vec<IntDto>,
    interval: [String; 2],
}

impl AlgebraicDto {
    pub fn to_domain(&self) -> Result<RealAlgebraic> {
        let coeffs = self
            .minpoly
            .iter()
            .map(|c| c.to_int())
            .collect::<Result<Vec<_>>>()?;
        RealAlgebraic::new(
            IntPoly::new(coeffs),
            rat_from_str(&self.interval[0])?,
            rat_from_str(&self.interval[1])?,
        )
    }

    pub fn from_domain(a: &RealAlgebraic) -> AlgebraicDto {
        let (lo, hi) = a.interval();
        AlgebraicDto {
            minpoly: a.minpoly().coeffs().iter().map(IntDto::from_int).collect(),
            interval: [lo.to_string(), hi.to_string()],
        }
    }
}

/// A rational as a string (`"3/2"`) or a bare integer.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum RatDto {
    Num(i64),
    Str(String),
}

impl RatDto {
    fn to_rat(&self) -> Result<Rat> {
        match self {
            RatDto::Num(n) => Ok(Rat::from_integer(Int::from(*n))),
            RatDto::Str(s) => rat_from_str(s),
        }
    }
}

/// A field element: a rational or `{"poly": [...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum EntryDto {
    Num(i64),
    Str(String),
    Poly { poly: Vec<RatDto> },
}

impl EntryDto {
    fn to_domain(&self) -> Result<QAlphaElem> {
        match self {
            EntryDto::Num(n) => Ok(QAlphaElem::from_rat(Rat::from_integer(Int::from(*n)))),
            EntryDto::Str(s) => Ok(QAlphaElem::from_rat(rat_from_str(s)?)),
            EntryDto::Poly { poly } => {
                let coeffs = poly
                    .iter()
                    .map(|c| c.to_rat())
                    .collect::<Result<Vec<_>>>()?;
                Ok(QAlphaElem::from_poly_unchecked(RatPoly::new(coeffs)))
            }
        }
    }

    fn from_domain(e: &QAlphaElem) -> EntryDto {
        match e.as_rat() {
            Some(r) => EntryDto::Str(r.to_string()),
            None => EntryDto::Poly {
                poly: e
                    .rep()
                    .coeffs()
                    .iter()
                    .map(|c| RatDto::Str(c.to_string()))
                    .collect(),
            },
        }
    }
}

/// `{"alpha": {...}|null, "forms": [[entry, ...], ...]}`
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TowerDto {
    alpha: Option<AlgebraicDto>,
    forms: Vec<Vec<EntryDto>>,
}

impl TowerDto {
    pub fn to_domain(&self) -> Result<FormTower> {
        let alpha = self.alpha.as_ref().map(|a| a.to_domain()).transpose()?;
        let dim = self
            .forms
            .first()
            .map(|f| f.len())
            .ok_or_else(|| Error::Config("tower needs at least one form".into()))?;
        let forms = self
            .forms
            .iter()
            .map(|f| f.iter().map(|e| e.to_domain()).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        FormTower::new(dim, alpha, forms)
    }

    pub fn from_domain(t: &FormTower) -> TowerDto {
        TowerDto {
            alpha: t.alpha().map(AlgebraicDto::from_domain),
            forms: t
                .forms()
                .iter()
                .map(|f| f.iter().map(EntryDto::from_domain).collect())
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind")]
enum ZxStageDto {
    #[serde(rename = "zero")]
    Zero { eps: i8 },
    #[serde(rename = "infinity")]
    Infinity { eps: i8 },
    #[serde(rename = "algebraic")]
    Algebraic { value: AlgebraicDto, eps: i8 },
}

fn eps_sign(eps: i8) -> Result<Sign> {
    match eps {
        1 => Ok(Sign::Pos),
        -1 => Ok(Sign::Neg),
        other => Err(Error::Config(format!("eps must be 1 or -1, got {other}"))),
    }
}

/// `{"stages": [{"kind": "algebraic", "value": ..., "eps": 1}, ...]}`
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ZxDto {
    stages: Vec<ZxStageDto>,
}

impl ZxDto {
    pub fn to_domain(&self) -> Result<ZxOrderSpec> {
        let stages = self
            .stages
            .iter()
            .map(|s| match s {
                ZxStageDto::Zero { eps } => Ok(ZxStage::at_zero(eps_sign(*eps)?)),
                ZxStageDto::Infinity { eps } => Ok(ZxStage::at_infinity(eps_sign(*eps)?)),
                ZxStageDto::Algebraic { value, eps } => {
                    ZxStage::at_algebraic(value.to_domain()?, eps_sign(*eps)?)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        ZxOrderSpec::new(stages)
    }

    pub fn from_domain(spec: &ZxOrderSpec) -> ZxDto {
        ZxDto {
            stages: spec
                .stages()
                .iter()
                .map(|s| match &s.kind {
                    StageKind::AtZero => ZxStageDto::Zero {
                        eps: s.eps.to_i8(),
                    },
                    StageKind::AtInfinity => ZxStageDto::Infinity {
                        eps: s.eps.to_i8(),
                    },
                    StageKind::AtAlgebraic(a) => ZxStageDto::Algebraic {
                        value: AlgebraicDto::from_domain(a),
                        eps: s.eps.to_i8(),
                    },
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind")]
enum StageDto {
    #[serde(rename = "leading_coeff")]
    LeadingCoeff {
        q_order: TowerDto,
        coeff_order: TowerDto,
    },
    #[serde(rename = "character")]
    Character {
        alpha: Option<AlgebraicDto>,
        chi: Vec<EntryDto>,
        weights: Vec<String>,
    },
    #[serde(rename = "linear_functional")]
    LinearFunctional {
        matrix: Vec<Vec<i64>>,
        offsets: Vec<i64>,
    },
}

impl StageDto {
    fn to_domain(&self) -> Result<DerivedStage> {
        Ok(match self {
            StageDto::LeadingCoeff {
                q_order,
                coeff_order,
            } => DerivedStage::LeadingCoeff {
                q_order: q_order.to_domain()?,
                coeff_order: coeff_order.to_domain()?,
            },
            StageDto::Character {
                alpha,
                chi,
                weights,
            } => DerivedStage::Character {
                alpha: alpha.as_ref().map(|a| a.to_domain()).transpose()?,
                chi: chi.iter().map(|e| e.to_domain()).collect::<Result<_>>()?,
                weights: weights
                    .iter()
                    .map(|w| rat_from_str(w))
                    .collect::<Result<_>>()?,
            },
            StageDto::LinearFunctional { matrix, offsets } => DerivedStage::LinearFunctional {
                matrix: matrix.clone(),
                offsets: offsets.clone(),
            },
        })
    }

    fn from_domain(s: &DerivedStage) -> StageDto {
        match s {
            DerivedStage::LeadingCoeff {
                q_order,
                coeff_order,
            } => StageDto::LeadingCoeff {
                q_order: TowerDto::from_domain(q_order),
                coeff_order: TowerDto::from_domain(coeff_order),
            },
            DerivedStage::Character {
                alpha,
                chi,
                weights,
            } => StageDto::Character {
                alpha: alpha.as_ref().map(AlgebraicDto::from_domain),
                chi: chi.iter().map(EntryDto::from_domain).collect(),
                weights: weights.iter().map(|w| w.to_string()).collect(),
            },
            DerivedStage::LinearFunctional { matrix, offsets } => StageDto::LinearFunctional {
                matrix: matrix.clone(),
                offsets: offsets.clone(),
            },
        }
    }
}

/// `{"rank": n, "quotient": TOWER, "derived": [STAGE, ...]}`
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BiOrderDto {
    rank: usize,
    quotient: TowerDto,
    derived: Vec<StageDto>,
}

/// `{"rank": n, "kind": "thm7.6", "quotient_rest": TOWER, ...}`; the
/// functional, tiebreak towers and distinguished index (1-based) are optional
/// and default to the standard construction.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NonConvexDto {
    rank: usize,
    kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    quotient_rest: Option<TowerDto>,
    #[serde(skip_serializing_if = "Option::is_none")]
    distinguished: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    matrix: Option<Vec<Vec<i64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    offsets: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tiebreak_q: Option<TowerDto>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tiebreak_coeff: Option<TowerDto>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
#[allow(clippy::large_enum_variant)]
enum OrderDto {
    NonConvex(NonConvexDto),
    Quotient(BiOrderDto),
}

pub fn order_from_json(input: &str) -> Result<OrderSpec> {
    let dto: OrderDto =
        serde_json::from_str(input).map_err(|e| Error::Config(format!("bad order config: {e}")))?;
    match dto {
        OrderDto::Quotient(b) => {
            let quotient = b.quotient.to_domain()?;
            let stages = b
                .derived
                .iter()
                .map(|s| s.to_domain())
                .collect::<Result<Vec<_>>>()?;
            Ok(OrderSpec::Quotient(BiOrderSpec::new(
                b.rank, quotient, stages,
            )?))
        }
        OrderDto::NonConvex(n) => {
            if n.kind != "thm7.6" {
                return Err(Error::Config(format!(
                    "unknown non-convex kind {:?}",
                    n.kind
                )));
            }
            let default = NonConvexSpec::thm_default(n.rank)?;
            let spec = NonConvexSpec::new(
                n.rank,
                n.distinguished
                    .map(|d| d.checked_sub(1).ok_or(Error::Config("distinguished index is 1-based".into())))
                    .transpose()?
                    .unwrap_or(default.distinguished()),
                n.matrix.unwrap_or_else(|| default.matrix().to_vec()),
                n.offsets.unwrap_or_else(|| default.offsets().to_vec()),
                n.quotient_rest
                    .map(|t| t.to_domain())
                    .transpose()?
                    .unwrap_or_else(|| default.quotient_rest().clone()),
                n.tiebreak_q
                    .map(|t| t.to_domain())
                    .transpose()?
                    .unwrap_or_else(|| default.tiebreak().0.clone()),
                n.tiebreak_coeff
                    .map(|t| t.to_domain())
                    .transpose()?
                    .unwrap_or_else(|| default.tiebreak().1.clone()),
            )?;
            Ok(OrderSpec::NonConvex(spec))
        }
    }
}

pub fn order_to_json(order: &OrderSpec) -> serde_json::Value {
    match order {
        OrderSpec::Quotient(b) => serde_json::to_value(BiOrderDto {
            rank: b.rank(),
            quotient: TowerDto::from_domain(b.quotient()),
            derived: b.stages().iter().map(StageDto::from_domain).collect(),
        })
        .expect("serializable"),
        OrderSpec::NonConvex(n) => serde_json::to_value(NonConvexDto {
            rank: n.rank(),
            kind: "thm7.6".into(),
            quotient_rest: Some(TowerDto::from_domain(n.quotient_rest())),
            distinguished: Some(n.distinguished() + 1),
            matrix: Some(n.matrix().to_vec()),
            offsets: Some(n.offsets().to_vec()),
            tiebreak_q: Some(TowerDto::from_domain(n.tiebreak().0)),
            tiebreak_coeff: Some(TowerDto::from_domain(n.tiebreak().1)),
        })
        .expect("serializable"),
    }
}

pub fn zx_from_json(input: &str) -> Result<ZxOrderSpec> {
    let dto: ZxDto = serde_json::from_str(input)
        .map_err(|e| Error::Config(format!("bad zx spec: {e}")))?;
    dto.to_domain()
}

pub fn zx_to_json(spec: &ZxOrderSpec) -> serde_json::Value {
    serde_json::to_value(ZxDto::from_domain(spec)).expect("serializable")
}

pub fn tower_from_json(input: &str) -> Result<FormTower> {
    let dto: TowerDto = serde_json::from_str(input)
        .map_err(|e| Error::Config(format!("bad tower config: {e}")))?;
    dto.to_domain()
}

pub fn tower_to_json(t: &FormTower) -> serde_json::Value {
    serde_json::to_value(TowerDto::from_domain(t)).expect("serializable")
}

pub fn algebraic_from_json(input: &str) -> Result<RealAlgebraic> {
    let dto: AlgebraicDto = serde_json::from_str(input)
        .map_err(|e| Error::Config(format!("bad algebraic config: {e}")))?;
    dto.to_domain()
}
