//! Seeded samplers, violation reports and the shard runner behind every
//! randomized suite.
//!
//! Trials are split into a shard count that depends only on the trial count,
//! each shard draws from its own seeded generator, and results merge in shard
//! order. Reports are therefore byte-identical for identical inputs no matter
//! how many worker threads run, and identical between the parallel and the
//! sequential backends.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::biorder::OrderSpec;
use crate::magnus::{GroupWord, Letter, WreathElement};
use crate::{Result, Sign};

/// Execution backend for sharded suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExecMode {
    Sequential,
    #[cfg(feature = "parallel")]
    Parallel,
}

impl ExecMode {
    /// Parallel when compiled in, sequential otherwise.
    pub fn auto() -> ExecMode {
        #[cfg(feature = "parallel")]
        {
            ExecMode::Parallel
        }
        #[cfg(not(feature = "parallel"))]
        {
            ExecMode::Sequential
        }
    }
}

/// Cap the worker pool; reads `ORDLAB_THREADS` when `n` is `None`.
#[cfg(feature = "parallel")]
pub fn configure_threads(n: Option<usize>) {
    let n = n.or_else(|| {
        std::env::var("ORDLAB_THREADS")
            .ok()
            .and_then(|s| s.parse().ok())
    });
    if let Some(n) = n {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
}

#[cfg(not(feature = "parallel"))]
pub fn configure_threads(_n: Option<usize>) {}

/// Run `f` over shard indices and collect results in shard order.
pub fn map_shards<T, F>(shards: usize, mode: ExecMode, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match mode {
        ExecMode::Sequential => (0..shards).map(f).collect(),
        #[cfg(feature = "parallel")]
        ExecMode::Parallel => {
            use rayon::prelude::*;
            (0..shards).into_par_iter().map(f).collect()
        }
    }
}

/// Shard count for a trial budget: deterministic in the budget alone.
pub fn shard_count(trials: u64) -> usize {
    trials.clamp(1, 64) as usize
}

/// Per-shard generator seed (splitmix step of the suite seed).
pub fn shard_seed(seed: u64, shard: usize) -> u64 {
    let mut z = seed
        .wrapping_add(0x9e37_79b9_7f4a_7c15u64.wrapping_mul(shard as u64 + 1));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Inclusive trial range handled by a shard.
pub fn shard_range(trials: u64, shards: usize, shard: usize) -> std::ops::Range<u64> {
    let per = trials / shards as u64;
    let extra = trials % shards as u64;
    let lo = shard as u64 * per + (shard as u64).min(extra);
    let hi = lo + per + if (shard as u64) < extra { 1 } else { 0 };
    lo..hi
}

/// Word sampler: geometric length distribution, uniform letters.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WordSampler {
    pub rank: usize,
    /// Expected word length of the geometric distribution.
    pub mean_len: u32,
    /// Hard cap on the sampled length.
    pub max_len: u32,
}

impl WordSampler {
    pub fn new(rank: usize) -> WordSampler {
        WordSampler {
            rank,
            mean_len: 8,
            max_len: 40,
        }
    }

    pub fn sample(&self, rng: &mut impl Rng) -> GroupWord {
        let mut len = 1u32;
        while len < self.max_len && !rng.gen_bool(1.0 / self.mean_len.max(1) as f64) {
            len += 1;
        }
        let letters = (0..len)
            .map(|_| Letter {
                gen: rng.gen_range(0..self.rank),
                inverse: rng.gen_bool(0.5),
            })
            .collect();
        GroupWord::new(self.rank, letters).expect("letters in range")
    }
}

/// Sampler for derived-subgroup elements (times an optional coset power of a
/// fixed generator), produced as explicit words so witnesses replay.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DerivedSampler {
    pub rank: usize,
    /// Commutator factors per element.
    pub max_factors: u32,
    /// Length of the conjugating words.
    pub conj_len: u32,
    /// Generator whose powers multiply the sample (0-based).
    pub coset_gen: usize,
    /// Powers to draw from; `[0]` stays inside the derived subgroup.
    pub coset_powers: Vec<i64>,
}

impl DerivedSampler {
    pub fn new(rank: usize) -> DerivedSampler {
        DerivedSampler {
            rank,
            max_factors: 3,
            conj_len: 3,
            coset_gen: 0,
            coset_powers: vec![0],
        }
    }

    pub fn with_coset_powers(rank: usize, powers: Vec<i64>) -> DerivedSampler {
        DerivedSampler {
            coset_powers: powers,
            ..DerivedSampler::new(rank)
        }
    }

    /// A word of the form `prod_k [a_i, a_j]^{w_k} * g^p`.
    pub fn sample(&self, rng: &mut impl Rng) -> GroupWord {
        let factors = rng.gen_range(1..=self.max_factors);
        let mut word = GroupWord::empty(self.rank);
        for _ in 0..factors {
            let i = rng.gen_range(0..self.rank - 1);
            let j = rng.gen_range(i + 1..self.rank);
            let comm = GroupWord::new(
                self.rank,
                vec![
                    Letter {
                        gen: i,
                        inverse: true,
                    },
                    Letter {
                        gen: j,
                        inverse: true,
                    },
                    Letter {
                        gen: i,
                        inverse: false,
                    },
                    Letter {
                        gen: j,
                        inverse: false,
                    },
                ],
            )
            .unwrap();
            let conj_letters = (0..rng.gen_range(0..=self.conj_len))
                .map(|_| Letter {
                    gen: rng.gen_range(0..self.rank),
                    inverse: rng.gen_bool(0.5),
                })
                .collect();
            let conj = GroupWord::new(self.rank, conj_letters).unwrap();
            let invert = rng.gen_bool(0.5);
            let factor = conj
                .inverse()
                .concat(&if invert { comm.inverse() } else { comm })
                .unwrap()
                .concat(&conj)
                .unwrap();
            word = word.concat(&factor).unwrap();
        }
        let p = self.coset_powers[rng.gen_range(0..self.coset_powers.len())];
        let tail = GroupWord::generator_power(self.rank, self.coset_gen, p).unwrap();
        word.concat(&tail).unwrap()
    }
}

/// A replayable counterexample found by a suite.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Violation {
    /// Name of the failed check.
    pub check: String,
    /// Witness words, in the order the check consumes them.
    pub words: Vec<String>,
    pub detail: String,
}

/// Outcome of a randomized suite, deterministic given suite + seed.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub trials: u64,
    pub seed: u64,
    pub params: serde_json::Value,
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// Human-readable summary (the JSON form is the machine surface).
    pub fn render_text(&self) -> String {
        let mut out = format!(
            "suite: {}\ntrials: {}\nseed: {}\nviolations: {}\n",
            self.suite,
            self.trials,
            self.seed,
            self.violations.len()
        );
        for v in &self.violations {
            out.push_str(&format!(
                "  [{}] words={:?} {}\n",
                v.check, v.words, v.detail
            ));
        }
        out.push_str(if self.passed() { "PASS\n" } else { "FAIL\n" });
        out
    }
}

/// Check the positive-cone axioms of an order oracle on sampled elements:
/// trichotomy, antisymmetry, closure of the positive set under products, and
/// conjugation invariance.
pub fn verify_axioms_with<F>(
    oracle: F,
    sampler: &WordSampler,
    trials: u64,
    seed: u64,
    mode: ExecMode,
) -> Result<Report>
where
    F: Fn(&WreathElement) -> Result<Sign> + Sync,
{
    let shards = shard_count(trials);
    let results = map_shards(shards, mode, |shard| -> Result<Vec<Violation>> {
        let mut rng = ChaCha8Rng::seed_from_u64(shard_seed(seed, shard));
        let mut violations = Vec::new();
        for _ in shard_range(trials, shards, shard) {
            let wu = sampler.sample(&mut rng);
            let wv = sampler.sample(&mut rng);
            let wh = sampler.sample(&mut rng);
            let e = WreathElement::eval(&wu);
            let f = WreathElement::eval(&wv);
            let h = WreathElement::eval(&wh);
            let se = oracle(&e)?;
            let sf = oracle(&f)?;
            if (se == Sign::Zero) != e.is_identity() {
                violations.push(Violation {
                    check: "trichotomy".into(),
                    words: vec![wu.to_string()],
                    detail: format!("sign {se} on identity={}", e.is_identity()),
                });
            }
            let si = oracle(&e.inv())?;
            if si != -se {
                violations.push(Violation {
                    check: "antisymmetry".into(),
                    words: vec![wu.to_string()],
                    detail: format!("sign {se} but inverse sign {si}"),
                });
            }
            if se == Sign::Pos && sf == Sign::Pos {
                let sp = oracle(&e.mul(&f)?)?;
                if sp != Sign::Pos {
                    violations.push(Violation {
                        check: "semigroup".into(),
                        words: vec![wu.to_string(), wv.to_string()],
                        detail: format!("product of positives has sign {sp}"),
                    });
                }
            }
            let sc = oracle(&e.conj(&h)?)?;
            if sc != se {
                violations.push(Violation {
                    check: "conjugation".into(),
                    words: vec![wu.to_string(), wh.to_string()],
                    detail: format!("sign {se} became {sc} under conjugation"),
                });
            }
        }
        Ok(violations)
    });
    let mut violations = Vec::new();
    for r in results {
        violations.extend(r?);
    }
    Ok(Report {
        suite: "axioms".into(),
        trials,
        seed,
        params: serde_json::json!({ "sampler": sampler }),
        violations,
    })
}

pub fn verify_axioms(
    order: &OrderSpec,
    sampler: &WordSampler,
    trials: u64,
    seed: u64,
    mode: ExecMode,
) -> Result<Report> {
    verify_axioms_with(|e| order.sign(e), sampler, trials, seed, mode)
}

/// Evidence about the position of `g` relative to sampled derived-subgroup
/// elements (or fixed cosets thereof).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SandwichReport {
    pub word: String,
    pub trials: u64,
    pub seed: u64,
    /// Samples whose absolute value stayed below |g|.
    pub below: u64,
    /// Sampled words which |g| failed to dominate.
    pub not_below: Vec<String>,
    /// Derived words m1 <= g <= m2 when found (hull-inclusion evidence).
    pub sandwich: Option<(String, String)>,
}

impl SandwichReport {
    /// True when every sample stayed below |g|.
    pub fn excluded(&self) -> bool {
        self.not_below.is_empty()
    }

    pub fn render_text(&self) -> String {
        let mut out = format!(
            "word: {}\ntrials: {}\nseed: {}\nbelow: {}\n",
            self.word, self.trials, self.seed, self.below
        );
        match &self.sandwich {
            Some((lo, hi)) => out.push_str(&format!("sandwich: {lo} <= g <= {hi}\n")),
            None => out.push_str("sandwich: none\n"),
        }
        if !self.not_below.is_empty() {
            out.push_str(&format!("not dominated: {:?}\n", self.not_below));
        }
        out
    }
}

/// Compare |g| against sampled elements; collect domination counts and a
/// sandwich pair when one exists.
pub fn sandwich_check(
    order: &OrderSpec,
    g_word: &GroupWord,
    sampler: &DerivedSampler,
    trials: u64,
    seed: u64,
    mode: ExecMode,
) -> Result<SandwichReport> {
    let g = WreathElement::eval(g_word);
    let abs_g = order.abs(&g)?;
    let shards = shard_count(trials);
    struct ShardOut {
        below: u64,
        not_below: Vec<String>,
        lower: Option<String>,
        upper: Option<String>,
    }
    let results = map_shards(shards, mode, |shard| -> Result<ShardOut> {
        let mut rng = ChaCha8Rng::seed_from_u64(shard_seed(seed, shard));
        let mut out = ShardOut {
            below: 0,
            not_below: Vec::new(),
            lower: None,
            upper: None,
        };
        for _ in shard_range(trials, shards, shard) {
            let wm = sampler.sample(&mut rng);
            let m = WreathElement::eval(&wm);
            if m.is_identity() {
                continue;
            }
            let abs_m = order.abs(&m)?;
            if order.compare(&abs_g, &abs_m)? == Sign::Pos {
                out.below += 1;
            } else {
                out.not_below.push(wm.to_string());
            }
            match order.compare(&m, &g)? {
                Sign::Neg | Sign::Zero => {
                    if out.lower.is_none() {
                        out.lower = Some(wm.to_string());
                    }
                }
                Sign::Pos => {
                    if out.upper.is_none() {
                        out.upper = Some(wm.to_string());
                    }
                }
            }
        }
        Ok(out)
    });
    let mut below = 0;
    let mut not_below = Vec::new();
    let mut lower = None;
    let mut upper = None;
    for r in results {
        let r = r?;
        below += r.below;
        not_below.extend(r.not_below);
        if lower.is_none() {
            lower = r.lower;
        }
        if upper.is_none() {
            upper = r.upper;
        }
    }
    Ok(SandwichReport {
        word: g_word.to_string(),
        trials,
        seed,
        below,
        not_below,
        sandwich: lower.zip(upper),
    })
}
