//! The context-free positive-cone language of the rank-2 free metabelian
//! group, over the alphabet `{a, b, c}` and inverses with `c = [a, b]`.
//!
//! Accepted strings have the shape `v c^{t_1} w_1 ... c^{t_n} w_n z` (first
//! block positive) or `v c^{t_1} w_1 ... c^{t_n} w_n z z'` (any nonzero
//! blocks, positive tail), where the `w_i` and `z'` are canonical words of a
//! regular cone on the abelianization and `z` undoes `v w_1 ... w_n` in the
//! free group on `{a, b}`. Membership is decided by a breadth-first subset
//! simulation of the pushdown machine: configurations carry the reduction
//! stack explicitly and are deduplicated per step, so no backtracking occurs.
//!
//! Soundness is checked against the matching quotient-leading order; note the
//! leading position of an accepted string's derived part is the minimal
//! support monomial in Magnus coordinates, so the matching order reverses the
//! lexicographic tower on positions.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::biorder::{BiOrderSpec, DerivedStage};
use crate::harness::{map_shards, ExecMode};
use crate::latord::FormTower;
use crate::laurent::{LaurentPoly, Monomial};
use crate::magnus::{GroupWord, WreathElement};
use crate::{Error, Result, Sign};

/// States of the canonical-representative automaton for the lexicographic
/// cone on the abelianization: `a a* (b b* | B B* | eps) | b b*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum LqState {
    Start,
    A,
    Ab,
    AbInv,
    B,
}

impl LqState {
    fn step(self, ch: u8) -> Option<LqState> {
        use LqState::*;
        match (self, ch) {
            (Start, b'a') => Some(A),
            (Start, b'b') => Some(B),
            (A, b'a') => Some(A),
            (A, b'b') => Some(Ab),
            (A, b'B') => Some(AbInv),
            (Ab, b'b') => Some(Ab),
            (AbInv, b'B') => Some(AbInv),
            (B, b'b') => Some(B),
            _ => None,
        }
    }

    fn accepting(self) -> bool {
        !matches!(self, LqState::Start)
    }
}

/// Membership in the canonical-representative language of the lexicographic
/// cone on the rank-2 abelianization.
pub fn lq_accept(word: &str) -> Result<bool> {
    let mut state = LqState::Start;
    for ch in word.chars() {
        if !matches!(ch, 'a' | 'b' | 'A' | 'B') {
            return Err(Error::BadLetter(ch));
        }
        state = match state.step(ch as u8) {
            Some(s) => s,
            None => return Ok(false),
        };
    }
    Ok(state.accepting())
}

/// Canonical representative of a lattice point, when it is lex-positive.
pub fn lq_canonical(m: i64, k: i64) -> Option<String> {
    if m > 0 {
        let mut s = "a".repeat(m as usize);
        if k > 0 {
            s.push_str(&"b".repeat(k as usize));
        } else if k < 0 {
            s.push_str(&"B".repeat((-k) as usize));
        }
        Some(s)
    } else if m == 0 && k > 0 {
        Some("b".repeat(k as usize))
    } else {
        None
    }
}

/// Abelianization of a word over `{a, b, A, B}`.
pub fn lq_value(word: &str) -> Result<(i64, i64)> {
    let mut m = 0;
    let mut k = 0;
    for ch in word.chars() {
        match ch {
            'a' => m += 1,
            'A' => m -= 1,
            'b' => k += 1,
            'B' => k -= 1,
            other => return Err(Error::BadLetter(other)),
        }
    }
    Ok((m, k))
}

const ALPHABET: [u8; 6] = *b"abABcC";

fn is_t_letter(ch: u8) -> bool {
    matches!(ch, b'a' | b'b' | b'A' | b'B')
}

fn letter_inverse(ch: u8) -> u8 {
    match ch {
        b'a' => b'A',
        b'A' => b'a',
        b'b' => b'B',
        b'B' => b'b',
        b'c' => b'C',
        b'C' => b'c',
        _ => unreachable!(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SegKind {
    Prefix,
    Block,
    Quotient,
    Undo,
    Tail,
}

/// One segment of an accepted string's decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    pub kind: SegKind,
    pub start: usize,
    pub end: usize,
}

/// Certificate for an accepted string: the segmentation plus the reduction
/// stack depth after each letter. Replaying it re-checks acceptance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AcceptTrace {
    pub segments: Vec<Segment>,
    pub stack_depths: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Phase {
    Prefix,
    Block { neg: bool },
    Quotient { lq: LqState },
    Undo,
    Tail { lq: LqState },
}

#[derive(Clone)]
struct Config {
    phase: Phase,
    stack: Vec<u8>,
    seen_block: bool,
    first_pos: bool,
    trace: Option<TracePayload>,
}

#[derive(Clone)]
struct TracePayload {
    segments: Vec<(SegKind, usize)>,
    depths: Vec<usize>,
}

impl Config {
    fn key(&self) -> (Phase, Vec<u8>, bool, bool) {
        (self.phase, self.stack.clone(), self.seen_block, self.first_pos)
    }
}

fn phase_seg(phase: Phase) -> SegKind {
    match phase {
        Phase::Prefix => SegKind::Prefix,
        Phase::Block { .. } => SegKind::Block,
        Phase::Quotient { .. } => SegKind::Quotient,
        Phase::Undo => SegKind::Undo,
        Phase::Tail { .. } => SegKind::Tail,
    }
}

/// The live configuration set of the pushdown simulation.
pub struct ConeRun {
    configs: Vec<Config>,
    pos: usize,
    tracing: bool,
}

impl ConeRun {
    pub fn start(tracing: bool) -> ConeRun {
        let init = Config {
            phase: Phase::Prefix,
            stack: Vec::new(),
            seen_block: false,
            first_pos: false,
            trace: tracing.then(|| TracePayload {
                segments: vec![(SegKind::Prefix, 0)],
                depths: Vec::new(),
            }),
        };
        let mut run = ConeRun {
            configs: vec![init],
            pos: 0,
            tracing,
        };
        run.close();
        run
    }

    pub fn is_live(&self) -> bool {
        !self.configs.is_empty()
    }

    fn switch(cfg: &Config, phase: Phase, pos: usize) -> Config {
        let mut out = cfg.clone();
        out.phase = phase;
        if let Some(t) = &mut out.trace {
            t.segments.push((phase_seg(phase), pos));
        }
        out
    }

    /// Epsilon closure: a finished quotient word may begin the undo segment,
    /// and an empty stack may begin the positive tail.
    fn close(&mut self) {
        let mut seen: HashSet<(Phase, Vec<u8>, bool, bool)> =
            self.configs.iter().map(|c| c.key()).collect();
        let mut i = 0;
        while i < self.configs.len() {
            let cfg = self.configs[i].clone();
            let mut add = |c: Config, configs: &mut Vec<Config>| {
                if seen.insert(c.key()) {
                    configs.push(c);
                }
            };
            match cfg.phase {
                Phase::Quotient { lq } if lq.accepting() => {
                    add(
                        ConeRun::switch(&cfg, Phase::Undo, self.pos),
                        &mut self.configs,
                    );
                }
                Phase::Undo | Phase::Prefix if cfg.stack.is_empty() => {
                    add(
                        ConeRun::switch(&cfg, Phase::Tail { lq: LqState::Start }, self.pos),
                        &mut self.configs,
                    );
                }
                _ => {}
            }
            i += 1;
        }
    }

    /// Consume one letter.
    pub fn step(&mut self, ch: u8) -> Result<()> {
        if !ALPHABET.contains(&ch) {
            return Err(Error::BadLetter(ch as char));
        }
        let mut next: Vec<Config> = Vec::new();
        let mut seen: HashSet<(Phase, Vec<u8>, bool, bool)> = HashSet::new();
        let mut push = |c: Config| {
            if seen.insert(c.key()) {
                next.push(c);
            }
        };
        let stack_op = |stack: &mut Vec<u8>, ch: u8| {
            if stack.last() == Some(&letter_inverse(ch)) {
                stack.pop();
            } else {
                stack.push(ch);
            }
        };
        for cfg in &self.configs {
            match cfg.phase {
                Phase::Prefix => {
                    if is_t_letter(ch) {
                        let mut c = cfg.clone();
                        stack_op(&mut c.stack, ch);
                        push(c);
                    } else {
                        let mut c =
                            ConeRun::switch(cfg, Phase::Block { neg: ch == b'C' }, self.pos);
                        c.seen_block = true;
                        c.first_pos = ch == b'c';
                        push(c);
                    }
                }
                Phase::Block { neg } => {
                    let blk = if neg { b'C' } else { b'c' };
                    if ch == blk {
                        push(cfg.clone());
                    } else if is_t_letter(ch) {
                        if let Some(lq) = LqState::Start.step(ch) {
                            let mut c =
                                ConeRun::switch(cfg, Phase::Quotient { lq }, self.pos);
                            stack_op(&mut c.stack, ch);
                            push(c);
                        }
                    }
                }
                Phase::Quotient { lq } => {
                    if is_t_letter(ch) {
                        if let Some(lq2) = lq.step(ch) {
                            let mut c = cfg.clone();
                            c.phase = Phase::Quotient { lq: lq2 };
                            stack_op(&mut c.stack, ch);
                            push(c);
                        }
                    } else if lq.accepting() {
                        let mut c =
                            ConeRun::switch(cfg, Phase::Block { neg: ch == b'C' }, self.pos);
                        c.seen_block = true;
                        push(c);
                    }
                }
                Phase::Undo => {
                    if is_t_letter(ch) {
                        let mut c = cfg.clone();
                        stack_op(&mut c.stack, ch);
                        push(c);
                    }
                }
                Phase::Tail { lq } => {
                    if is_t_letter(ch) {
                        if let Some(lq2) = lq.step(ch) {
                            let mut c = cfg.clone();
                            c.phase = Phase::Tail { lq: lq2 };
                            push(c);
                        }
                    }
                }
            }
        }
        if self.tracing {
            for c in &mut next {
                if let Some(t) = &mut c.trace {
                    t.depths.push(c.stack.len());
                }
            }
        }
        self.configs = next;
        self.pos += 1;
        self.close();
        Ok(())
    }

    /// Acceptance of the prefix consumed so far.
    pub fn accepted(&self) -> bool {
        self.accepting_config().is_some()
    }

    fn accepting_config(&self) -> Option<&Config> {
        self.configs.iter().find(|c| match c.phase {
            Phase::Undo => c.stack.is_empty() && c.seen_block && c.first_pos,
            Phase::Tail { lq } => lq.accepting(),
            _ => false,
        })
    }

    fn into_trace(self, len: usize) -> Option<AcceptTrace> {
        let cfg = self.accepting_config()?;
        let payload = cfg.trace.as_ref()?;
        let mut segments = Vec::new();
        for (i, &(kind, start)) in payload.segments.iter().enumerate() {
            let end = payload
                .segments
                .get(i + 1)
                .map(|&(_, s)| s)
                .unwrap_or(len);
            if end > start {
                segments.push(Segment { kind, start, end });
            }
        }
        Some(AcceptTrace {
            segments,
            stack_depths: payload.depths.clone(),
        })
    }
}

/// Decide membership of a string in the cone language.
pub fn cl_accept(word: &str) -> Result<bool> {
    Ok(run_word(word, false)?.accepted())
}

/// Decide membership and return the acceptance certificate.
pub fn cl_accept_with_trace(word: &str) -> Result<(bool, Option<AcceptTrace>)> {
    let run = run_word(word, true)?;
    let accepted = run.accepted();
    let trace = run.into_trace(word.len());
    Ok((accepted, trace))
}

fn run_word(word: &str, tracing: bool) -> Result<ConeRun> {
    let mut run = ConeRun::start(tracing);
    for ch in word.chars() {
        if !ch.is_ascii() {
            return Err(Error::BadLetter(ch));
        }
        run.step(ch as u8)?;
        if !run.is_live() {
            break;
        }
    }
    Ok(run)
}

/// Re-check an acceptance certificate against its string.
pub fn replay_trace(word: &str, trace: &AcceptTrace) -> bool {
    let bytes = word.as_bytes();
    if trace.stack_depths.len() != bytes.len() {
        return false;
    }
    // Segments must tile the word.
    let mut pos = 0;
    for seg in &trace.segments {
        if seg.start != pos || seg.end <= seg.start || seg.end > bytes.len() {
            return false;
        }
        pos = seg.end;
    }
    if pos != bytes.len() {
        return false;
    }
    // Grammar shape: Prefix? (Block Quotient)* Undo? Tail?
    let mut kinds = trace.segments.iter().map(|s| s.kind).peekable();
    if matches!(kinds.peek(), Some(SegKind::Prefix)) {
        kinds.next();
    }
    let mut blocks = 0;
    while matches!(kinds.peek(), Some(SegKind::Block)) {
        kinds.next();
        blocks += 1;
        if !matches!(kinds.peek(), Some(SegKind::Quotient)) {
            return false;
        }
        kinds.next();
    }
    let mut saw_undo = false;
    if matches!(kinds.peek(), Some(SegKind::Undo)) {
        kinds.next();
        saw_undo = true;
    }
    let mut saw_tail = false;
    if matches!(kinds.peek(), Some(SegKind::Tail)) {
        kinds.next();
        saw_tail = true;
    }
    if kinds.next().is_some() {
        return false;
    }
    // Content checks with the reduction stack.
    let mut stack: Vec<u8> = Vec::new();
    let mut first_block_pos = None;
    for seg in &trace.segments {
        let text = &word[seg.start..seg.end];
        match seg.kind {
            SegKind::Prefix | SegKind::Undo => {
                for &ch in text.as_bytes() {
                    if !is_t_letter(ch) {
                        return false;
                    }
                }
            }
            SegKind::Block => {
                let first = text.as_bytes()[0];
                if !matches!(first, b'c' | b'C') {
                    return false;
                }
                if text.as_bytes().iter().any(|&ch| ch != first) {
                    return false;
                }
                if first_block_pos.is_none() {
                    first_block_pos = Some(first == b'c');
                }
            }
            SegKind::Quotient | SegKind::Tail => {
                if !lq_accept(text).unwrap_or(false) {
                    return false;
                }
            }
        }
        // Maintain the free-reduction stack over everything but the tail.
        if seg.kind != SegKind::Tail && seg.kind != SegKind::Block {
            for (off, &ch) in text.as_bytes().iter().enumerate() {
                if stack.last() == Some(&letter_inverse(ch)) {
                    stack.pop();
                } else {
                    stack.push(ch);
                }
                if trace.stack_depths[seg.start + off] != stack.len() {
                    return false;
                }
            }
        } else {
            for off in 0..text.len() {
                if trace.stack_depths[seg.start + off] != stack.len() {
                    return false;
                }
            }
        }
    }
    if !stack.is_empty() {
        return false;
    }
    if saw_tail {
        // Branch 2: any block signs, the tail already checked.
        true
    } else {
        // Branch 1: at least one block, the first one positive; the undo
        // segment may be empty.
        let _ = saw_undo;
        blocks > 0 && first_block_pos == Some(true)
    }
}

/// Expand the commutator letter and parse into the rank-2 group.
pub fn to_group_word(word: &str) -> Result<GroupWord> {
    let mut expanded = String::with_capacity(word.len() * 4);
    for ch in word.chars() {
        match ch {
            'c' => expanded.push_str("ABab"),
            'C' => expanded.push_str("BAba"),
            'a' | 'b' | 'A' | 'B' => expanded.push(ch),
            other => return Err(Error::BadLetter(other)),
        }
    }
    GroupWord::parse(2, &expanded)
}

/// The quotient-leading order matched by the language: lexicographic on the
/// abelianization, and on the derived subgroup the coefficient sign at the
/// minimal support position (the tower on positions is the reversed
/// lexicographic one).
pub fn matching_order() -> BiOrderSpec {
    BiOrderSpec::new(
        2,
        FormTower::lex(2),
        vec![DerivedStage::LeadingCoeff {
            q_order: FormTower::neg_lex(2),
            coeff_order: FormTower::lex(2),
        }],
    )
    .expect("static spec is valid")
}

/// Every accepted string up to a length bound, in prefix order.
pub fn enumerate_accepted(maxlen: usize) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    let run = ConeRun::start(false);
    enumerate_rec(&run, &mut prefix, maxlen, &mut out)?;
    Ok(out)
}

fn enumerate_rec(
    run: &ConeRun,
    prefix: &mut Vec<u8>,
    maxlen: usize,
    out: &mut Vec<String>,
) -> Result<()> {
    if run.accepted() {
        out.push(String::from_utf8(prefix.clone()).expect("ascii"));
    }
    if prefix.len() == maxlen {
        return Ok(());
    }
    for &ch in &ALPHABET {
        let mut next = ConeRun {
            configs: run.configs.clone(),
            pos: run.pos,
            tracing: false,
        };
        next.step(ch)?;
        if !next.is_live() {
            continue;
        }
        prefix.push(ch);
        enumerate_rec(&next, prefix, maxlen, out)?;
        prefix.pop();
    }
    Ok(())
}

/// Outcome of the exhaustive soundness scan.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScanReport {
    pub maxlen: usize,
    pub accepted: u64,
    pub violations: Vec<ScanViolation>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScanViolation {
    pub word: String,
    pub sign: String,
}

/// Enumerate every accepted string up to `maxlen` (pruning dead prefixes) and
/// check that each evaluates to a positive element of the matching order.
pub fn soundness_scan(maxlen: usize, mode: ExecMode) -> Result<ScanReport> {
    let order = matching_order();
    // Shard by first letter; the empty string is not accepted.
    let shard_results = map_shards(ALPHABET.len(), mode, |i| -> Result<(u64, Vec<ScanViolation>)> {
        let mut accepted = 0;
        let mut violations = Vec::new();
        let mut run = ConeRun::start(false);
        run.step(ALPHABET[i])?;
        if !run.is_live() || maxlen == 0 {
            return Ok((0, violations));
        }
        let mut prefix = vec![ALPHABET[i]];
        scan_rec(
            &order,
            &run,
            &mut prefix,
            maxlen,
            &mut accepted,
            &mut violations,
        )?;
        Ok((accepted, violations))
    });
    let mut accepted = 0;
    let mut violations = Vec::new();
    for r in shard_results {
        let (a, v) = r?;
        accepted += a;
        violations.extend(v);
    }
    violations.sort_by(|a, b| a.word.cmp(&b.word));
    Ok(ScanReport {
        maxlen,
        accepted,
        violations,
    })
}

fn scan_rec(
    order: &BiOrderSpec,
    run: &ConeRun,
    prefix: &mut Vec<u8>,
    maxlen: usize,
    accepted: &mut u64,
    violations: &mut Vec<ScanViolation>,
) -> Result<()> {
    if run.accepted() {
        *accepted += 1;
        let word = String::from_utf8(prefix.clone()).expect("ascii");
        let e = WreathElement::eval(&to_group_word(&word)?);
        let sign = order.sign(&e)?;
        if sign != Sign::Pos {
            violations.push(ScanViolation {
                word,
                sign: sign.to_string(),
            });
        }
    }
    if prefix.len() == maxlen {
        return Ok(());
    }
    for &ch in &ALPHABET {
        let mut next = ConeRun {
            configs: run.configs.clone(),
            pos: run.pos,
            tracing: false,
        };
        next.step(ch)?;
        if !next.is_live() {
            continue;
        }
        prefix.push(ch);
        scan_rec(order, &next, prefix, maxlen, accepted, violations)?;
        prefix.pop();
    }
    Ok(())
}

/// Construct a representative string for a positive element, or `None` when
/// the construction exceeds `search_len`.
pub fn completeness_probe(e: &WreathElement, search_len: usize) -> Result<Option<String>> {
    let order = matching_order();
    if e.rank() != 2 {
        return Err(Error::RankMismatch {
            expected: 2,
            got: e.rank(),
        });
    }
    if order.sign(e)? != Sign::Pos {
        return Err(Error::NotPositive);
    }
    let t = e.abelianization();
    let (tail, derived) = if t.iter().any(|&c| c != 0) {
        let z = lq_canonical(t[0], t[1]).expect("quotient-positive element");
        let zw = to_group_word(&z)?;
        let d = e.mul(&WreathElement::eval(&zw).inv())?;
        (Some(z), d)
    } else {
        (None, e.clone())
    };
    // Recover the module polynomial from the second slot:
    // slot_2 = x1^{-1} x2^{-1} (x1 - 1) * mhat.
    let mhat = if derived.is_identity() {
        LaurentPoly::zero(2)
    } else {
        derived
            .slot(1)
            .shift(&Monomial(vec![1, 1]))?
            .divexact_var_minus_one(0)?
    };
    let mut terms: Vec<(Vec<i64>, crate::Int)> =
        mhat.terms().map(|(m, c)| (m.0.clone(), c.clone())).collect();
    terms.sort_by(|a, b| a.0.cmp(&b.0));
    let mut body = String::new();
    let mut carrier = String::new();
    if !terms.is_empty() {
        let p1 = &terms[0].0;
        carrier.push_str(&power_word('a', p1[0]));
        carrier.push_str(&power_word('b', p1[1]));
        body.push_str(&carrier.clone());
        for (j, (p, c)) in terms.iter().enumerate() {
            let count: i64 = num_traits::ToPrimitive::to_i64(c).ok_or_else(|| {
                Error::Config("representative coefficient exceeds i64".into())
            })?;
            let blk = if count > 0 { 'c' } else { 'C' };
            body.push_str(&blk.to_string().repeat(count.unsigned_abs() as usize));
            let w = if j + 1 < terms.len() {
                let next = &terms[j + 1].0;
                lq_canonical(next[0] - p[0], next[1] - p[1])
                    .expect("support monomials ascend lexicographically")
            } else {
                "a".to_string()
            };
            body.push_str(&w);
            carrier.push_str(&w);
        }
        body.push_str(&invert_reduced(&carrier));
    }
    if let Some(z) = &tail {
        body.push_str(z);
    }
    if body.len() > search_len {
        return Ok(None);
    }
    debug_assert!(cl_accept(&body)?);
    debug_assert_eq!(WreathElement::eval(&to_group_word(&body)?), *e);
    if !cl_accept(&body)? || WreathElement::eval(&to_group_word(&body)?) != *e {
        return Err(Error::Config(
            "internal: constructed representative failed verification".into(),
        ));
    }
    Ok(Some(body))
}

fn power_word(gen: char, k: i64) -> String {
    let ch = if k < 0 {
        gen.to_ascii_uppercase()
    } else {
        gen
    };
    ch.to_string().repeat(k.unsigned_abs() as usize)
}

/// Formal inverse of the freely reduced form of a word over `{a, b}`.
fn invert_reduced(word: &str) -> String {
    let mut stack: Vec<u8> = Vec::new();
    for &ch in word.as_bytes() {
        if stack.last() == Some(&letter_inverse(ch)) {
            stack.pop();
        } else {
            stack.push(ch);
        }
    }
    stack
        .iter()
        .rev()
        .map(|&ch| letter_inverse(ch) as char)
        .collect()
}

/// Coverage of the completeness probe over all positive elements represented
/// by short reduced words over the cone alphabet.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoverageReport {
    pub word_len: usize,
    pub search_len: usize,
    pub positives: u64,
    pub found: u64,
    pub missed: Vec<String>,
}

pub fn completeness_coverage(word_len: usize, search_len: usize) -> Result<CoverageReport> {
    let order = matching_order();
    let mut seen: HashSet<WreathElement> = HashSet::new();
    let mut positives = 0;
    let mut found = 0;
    let mut missed = Vec::new();
    let mut word: Vec<u8> = Vec::new();
    enumerate_reduced(&mut word, word_len, &mut |w| -> Result<()> {
        let s = String::from_utf8(w.to_vec()).expect("ascii");
        let e = WreathElement::eval(&to_group_word(&s)?);
        if !seen.insert(e.clone()) {
            return Ok(());
        }
        if order.sign(&e)? != Sign::Pos {
            return Ok(());
        }
        positives += 1;
        match completeness_probe(&e, search_len)? {
            Some(_) => found += 1,
            None => missed.push(s),
        }
        Ok(())
    })?;
    Ok(CoverageReport {
        word_len,
        search_len,
        positives,
        found,
        missed,
    })
}

fn enumerate_reduced(
    word: &mut Vec<u8>,
    maxlen: usize,
    visit: &mut impl FnMut(&[u8]) -> Result<()>,
) -> Result<()> {
    visit(word)?;
    if word.len() == maxlen {
        return Ok(());
    }
    for &ch in &ALPHABET {
        if word.last() == Some(&letter_inverse(ch)) {
            continue;
        }
        word.push(ch);
        enumerate_reduced(word, maxlen, visit)?;
        word.pop();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lq_membership() {
        assert!(lq_accept("a").unwrap());
        assert!(lq_accept("aBB").unwrap());
        assert!(!lq_accept("B").unwrap());
        assert!(!lq_accept("").unwrap());
        assert!(!lq_accept("ba").unwrap());
        assert!(!lq_accept("abB").unwrap());
        assert!(lq_accept("bb").unwrap());
        assert!(matches!(lq_accept("c"), Err(Error::BadLetter('c'))));
    }

    #[test]
    fn lq_canonical_bijective_on_box() {
        let mut count = 0;
        for m in -6..=6i64 {
            for k in -6..=6i64 {
                let lex_positive = m > 0 || (m == 0 && k > 0);
                match lq_canonical(m, k) {
                    Some(w) => {
                        assert!(lex_positive);
                        assert!(lq_accept(&w).unwrap());
                        assert_eq!(lq_value(&w).unwrap(), (m, k));
                        count += 1;
                    }
                    None => assert!(!lex_positive),
                }
            }
        }
        // Exactly the lex-positive points of the box.
        assert_eq!(count, 6 * 13 + 6);
    }

    #[test]
    fn lq_values_are_distinct_across_accepted_strings() {
        // Walk the canonical-form automaton: every accepted string maps to a
        // distinct lattice point.
        let mut values = std::collections::HashSet::new();
        fn walk(
            prefix: &mut String,
            state: LqState,
            maxlen: usize,
            values: &mut std::collections::HashSet<(i64, i64)>,
        ) {
            if state.accepting() {
                assert!(
                    values.insert(lq_value(prefix).unwrap()),
                    "duplicate representative {prefix}"
                );
            }
            if prefix.len() == maxlen {
                return;
            }
            for ch in ['a', 'b', 'A', 'B'] {
                if let Some(next) = state.step(ch as u8) {
                    prefix.push(ch);
                    walk(prefix, next, maxlen, values);
                    prefix.pop();
                }
            }
        }
        let mut buf = String::new();
        walk(&mut buf, LqState::Start, 12, &mut values);
        // All lex-positive points of the |m|,|k| <= 6 box were reached.
        for m in 0..=6i64 {
            for k in -6..=6i64 {
                if m > 0 || (m == 0 && k > 0) {
                    assert!(values.contains(&(m, k)), "({m},{k}) unreached");
                }
            }
        }
    }

    #[test]
    fn enumerate_accepted_matches_membership() {
        let words = enumerate_accepted(4).unwrap();
        assert!(words.contains(&"caA".to_string()));
        assert!(words.contains(&"a".to_string()));
        for w in &words {
            assert!(cl_accept(w).unwrap());
        }
        // Spot-check completeness of the enumeration against brute force.
        let mut brute = 0;
        let alphabet = ['a', 'b', 'A', 'B', 'c', 'C'];
        for len in 1..=3usize {
            let mut idx = vec![0usize; len];
            loop {
                let s: String = idx.iter().map(|&i| alphabet[i]).collect();
                if cl_accept(&s).unwrap() {
                    brute += 1;
                }
                let mut k = 0;
                loop {
                    if k == len {
                        break;
                    }
                    idx[k] += 1;
                    if idx[k] < alphabet.len() {
                        break;
                    }
                    idx[k] = 0;
                    k += 1;
                }
                if k == len {
                    break;
                }
            }
        }
        let enumerated_short = words.iter().filter(|w| w.len() <= 3).count();
        assert_eq!(brute, enumerated_short);
    }

    #[test]
    fn cl_accept_examples() {
        assert!(cl_accept("caA").unwrap());
        assert!(cl_accept("a").unwrap());
        assert!(!cl_accept("C").unwrap());
        assert!(cl_accept("aBB").unwrap());
        assert!(!cl_accept("").unwrap());
        assert!(!cl_accept("A").unwrap());
        // Mixed c-runs cannot form a block.
        assert!(!cl_accept("cCaA").unwrap());
        // Branch 2 with a negative block and positive tail.
        assert!(cl_accept("CaAa").unwrap());
        assert!(matches!(cl_accept("z"), Err(Error::BadLetter('z'))));
    }

    #[test]
    fn trace_replays() {
        for w in ["caA", "a", "aBB", "CaAa", "ccaAb", "bcaAB"] {
            let (acc, trace) = cl_accept_with_trace(w).unwrap();
            if !acc {
                continue;
            }
            let trace = trace.expect("accepted strings carry traces");
            assert!(replay_trace(w, &trace), "trace of {w:?} must replay");
        }
        // A trace does not transfer to a different word.
        let (_, trace) = cl_accept_with_trace("caA").unwrap();
        assert!(!replay_trace("caB", &trace.unwrap()));
    }

    #[test]
    fn accepted_strings_are_positive() {
        for w in ["caA", "a", "aBB", "CaAa", "ccaAb"] {
            if !cl_accept(w).unwrap() {
                continue;
            }
            let e = WreathElement::eval(&to_group_word(w).unwrap());
            assert_eq!(matching_order().sign(&e).unwrap(), Sign::Pos, "word {w}");
        }
    }

    #[test]
    fn negative_first_block_without_tail_rejected() {
        // "CaA" evaluates to c^{-1}, which is negative; branch 1 needs a
        // positive first block and branch 2 needs a tail.
        assert!(!cl_accept("CaA").unwrap());
        let e = WreathElement::eval(&to_group_word("CaA").unwrap());
        assert_eq!(matching_order().sign(&e).unwrap(), Sign::Neg);
    }

    #[test]
    fn soundness_scan_small() {
        let report = soundness_scan(6, ExecMode::Sequential).unwrap();
        assert!(report.accepted > 0);
        assert!(report.violations.is_empty(), "{:?}", report.violations);
    }

    #[test]
    fn probe_finds_spec_examples() {
        // c itself.
        let c = WreathElement::eval(&to_group_word("c").unwrap());
        assert_eq!(completeness_probe(&c, 14).unwrap().as_deref(), Some("caA"));
        // a: the tail alone.
        let a = WreathElement::eval(&to_group_word("a").unwrap());
        assert_eq!(completeness_probe(&a, 14).unwrap().as_deref(), Some("a"));
        // c^{-1} a: negative block, quotient-positive element.
        let e = WreathElement::eval(&to_group_word("Ca").unwrap());
        assert_eq!(
            completeness_probe(&e, 14).unwrap().as_deref(),
            Some("CaAa")
        );
        // Negative elements are rejected.
        let neg = WreathElement::eval(&to_group_word("A").unwrap());
        assert!(matches!(
            completeness_probe(&neg, 14),
            Err(Error::NotPositive)
        ));
    }

    #[test]
    fn probe_round_trips_random_positives() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        let order = matching_order();
        let mut checked = 0;
        while checked < 40 {
            let len = rng.gen_range(1..=8);
            let s: String = (0..len)
                .map(|_| {
                    let i = rng.gen_range(0..ALPHABET.len());
                    ALPHABET[i] as char
                })
                .collect();
            let e = WreathElement::eval(&to_group_word(&s).unwrap());
            if order.sign(&e).unwrap() != Sign::Pos {
                continue;
            }
            if let Some(rep) = completeness_probe(&e, 200).unwrap() {
                assert!(cl_accept(&rep).unwrap());
                assert_eq!(WreathElement::eval(&to_group_word(&rep).unwrap()), e);
            }
            checked += 1;
        }
    }

    #[test]
    fn coverage_on_short_words() {
        let report = completeness_coverage(3, 14).unwrap();
        assert_eq!(report.positives, report.found + report.missed.len() as u64);
        assert!(report.positives > 0);
    }
}
