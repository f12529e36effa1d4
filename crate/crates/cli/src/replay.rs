//! Re-run the violation witnesses of a stored suite report.
//!
//! Every suite embeds enough context in `params` (order or spec configs) for
//! its witnesses to be checked standalone. A witness "reproduces" when the
//! recorded check still fails on it.

use std::process::ExitCode;

use ordlab_core::biorder::OrderSpec;
use ordlab_core::config;
use ordlab_core::harness::{Report, Violation};
use ordlab_core::magnus::{GroupWord, WreathElement};
use ordlab_core::suites;
use ordlab_core::zxord::ZxOrderSpec;
use ordlab_core::{Error, Sign};

pub fn run(report_text: &str) -> Result<ExitCode, Error> {
    let report: Report = serde_json::from_str(report_text)
        .map_err(|e| Error::Config(format!("bad report file: {e}")))?;
    if report.violations.is_empty() {
        println!("report has no violations; nothing to replay");
        return Ok(ExitCode::SUCCESS);
    }
    let mut all_reproduced = true;
    for (i, v) in report.violations.iter().enumerate() {
        let reproduced = replay_one(&report, v)?;
        println!(
            "witness {}: [{}] {:?} -> {}",
            i,
            v.check,
            v.words,
            if reproduced { "reproduced" } else { "NOT reproduced" }
        );
        all_reproduced &= reproduced;
    }
    Ok(if all_reproduced {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn order_from_params(report: &Report) -> Result<OrderSpec, Error> {
    let order = report
        .params
        .get("order")
        .ok_or_else(|| Error::Config("report params carry no order".into()))?;
    config::order_from_json(&order.to_string())
}

fn zx_from_params(report: &Report) -> Result<ZxOrderSpec, Error> {
    let spec = report
        .params
        .get("spec")
        .ok_or_else(|| Error::Config("report params carry no spec".into()))?;
    config::zx_from_json(&spec.to_string())
}

fn replay_one(report: &Report, v: &Violation) -> Result<bool, Error> {
    match report.suite.as_str() {
        "axioms" => replay_axiom(&order_from_params(report)?, v),
        "convexity" => replay_convexity(&zx_from_params(report)?, v),
        "jacobi" => {
            let spec = v.words[0]
                .split_once(':')
                .ok_or_else(|| Error::Config("bad jacobi witness".into()))?;
            let rank: usize = spec.0.parse().map_err(|_| bad_witness())?;
            let idx: Vec<usize> = spec
                .1
                .split(',')
                .map(|p| p.parse::<usize>().map_err(|_| bad_witness()))
                .collect::<Result<_, _>>()?;
            let e = WreathElement::jacobi(rank, idx[0] - 1, idx[1] - 1, idx[2] - 1)?;
            Ok(!e.is_identity())
        }
        "lemma61" => {
            let (m, n) = v.words[0]
                .split_once(',')
                .ok_or_else(bad_witness)?;
            let m: i64 = m.parse().map_err(|_| bad_witness())?;
            let n: i64 = n.parse().map_err(|_| bad_witness())?;
            let conj = if v.words[1].is_empty() {
                None
            } else {
                Some(GroupWord::parse(2, &v.words[1])?)
            };
            Ok(!suites::lemma61_instance(m, n, conj.as_ref())?)
        }
        other => Err(Error::Config(format!(
            "suite {other:?} does not support replay"
        ))),
    }
}

fn bad_witness() -> Error {
    Error::Config("malformed witness".into())
}

fn replay_axiom(order: &OrderSpec, v: &Violation) -> Result<bool, Error> {
    let eval = |w: &str| -> Result<WreathElement, Error> {
        Ok(WreathElement::eval(&GroupWord::parse(order.rank(), w)?))
    };
    match v.check.as_str() {
        "trichotomy" => {
            let e = eval(&v.words[0])?;
            Ok((order.sign(&e)? == Sign::Zero) != e.is_identity())
        }
        "antisymmetry" => {
            let e = eval(&v.words[0])?;
            Ok(order.sign(&e.inv())? != -order.sign(&e)?)
        }
        "semigroup" => {
            let e = eval(&v.words[0])?;
            let f = eval(&v.words[1])?;
            Ok(order.sign(&e)? == Sign::Pos
                && order.sign(&f)? == Sign::Pos
                && order.sign(&e.mul(&f)?)? != Sign::Pos)
        }
        "conjugation" => {
            let e = eval(&v.words[0])?;
            let h = eval(&v.words[1])?;
            Ok(order.sign(&e.conj(&h)?)? != order.sign(&e)?)
        }
        other => Err(Error::Config(format!("unknown axiom check {other:?}"))),
    }
}

fn replay_convexity(spec: &ZxOrderSpec, v: &Violation) -> Result<bool, Error> {
    let gen = spec.chain(1)?.pop().expect("depth-1 chain");
    let f = suites::zx_parse(&v.words[0])?;
    let g = suites::zx_parse(&v.words[1])?;
    let h = suites::zx_parse(&v.words[2])?;
    let member = |p: &ordlab_core::laurent::LaurentPoly| p.is_zero() || p.divexact_uni(&gen).is_ok();
    Ok(member(&f)
        && member(&h)
        && !member(&g)
        && spec.compare(&f, &g)? != Sign::Pos
        && spec.compare(&g, &h)? != Sign::Pos)
}
