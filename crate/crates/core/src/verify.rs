//! Machine checks of the distance formulas against oracle tables.

use std::collections::{HashSet, VecDeque};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::distance::{prefix_exchange_distance, psrd_lower_bound, psrd_simple_from_graph};
use crate::error::{Error, Result};
use crate::graph::BreakpointGraph;
use crate::oracle::{Generators, OracleTable, StateCodec};
use crate::perm::SignedPermutation;
use crate::sorter::{classify_move, sort_simple, MoveClassification};

/// Outcome of one named check. Violations are recorded verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub checked: usize,
    pub violations: Vec<String>,
}

impl CheckResult {
    fn new(name: &str) -> Self {
        CheckResult { name: name.to_string(), checked: 0, violations: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub n: usize,
    pub generators: Generators,
    pub states: usize,
    /// Largest distance in the table; informational only.
    pub max_distance: u8,
    /// Signed tables: states where the lower bound is attained.
    pub bound_tight: Option<usize>,
    /// Signed tables: states where the lower bound is strictly below.
    pub bound_strict: Option<usize>,
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "n: {}", self.n);
        let _ = writeln!(out, "generators: {}", self.generators);
        let _ = writeln!(out, "states: {}", self.states);
        let _ = writeln!(out, "max_distance: {}", self.max_distance);
        if let (Some(tight), Some(strict)) = (self.bound_tight, self.bound_strict) {
            let _ = writeln!(out, "lower_bound_tight: {tight}");
            let _ = writeln!(out, "lower_bound_strict: {strict}");
        }
        for c in &self.checks {
            let _ = writeln!(
                out,
                "{} {}: {} checked, {} violations",
                if c.passed() { "PASS" } else { "FAIL" },
                c.name,
                c.checked,
                c.violations.len()
            );
            for v in &c.violations {
                let _ = writeln!(out, "  {v}");
            }
        }
        out
    }
}

/// Runs every check that applies to the table's generator set.
pub fn verify_theorems(table: &OracleTable) -> VerificationReport {
    let mut checks = vec![check_table_consistency(table)];
    let (mut tight, mut strict) = (None, None);
    match table.generators() {
        Generators::PrefixExchanges => {
            let mut c = CheckResult::new("prefix-exchange-formula");
            for (pi, d) in table.iter() {
                c.checked += 1;
                match prefix_exchange_distance(&pi) {
                    Ok(v) if v == d as usize => {}
                    Ok(v) => c.violations.push(format!("{pi}: formula {v}, oracle {d}")),
                    Err(e) => c.violations.push(format!("{pi}: {e}")),
                }
            }
            checks.push(c);
        }
        Generators::PrefixSignedReversals => {
            let mut bound = CheckResult::new("lower-bound");
            let (mut t, mut s) = (0, 0);
            for (pi, d) in table.iter() {
                bound.checked += 1;
                let g = psrd_lower_bound(&pi);
                match g.cmp(&(d as usize)) {
                    std::cmp::Ordering::Equal => t += 1,
                    std::cmp::Ordering::Less => s += 1,
                    std::cmp::Ordering::Greater => bound.violations.push(format!("{pi}: bound {g} > oracle {d}")),
                }
            }
            tight = Some(t);
            strict = Some(s);
            checks.push(bound);
            checks.extend(check_simple_permutations(table));
        }
    }
    VerificationReport {
        n: table.n(),
        generators: table.generators(),
        states: table.len(),
        max_distance: table.max_distance(),
        bound_tight: tight,
        bound_strict: strict,
        checks,
    }
}

/// Identity at distance 0 and every generator edge changing the distance by
/// at most one.
fn check_table_consistency(table: &OracleTable) -> CheckResult {
    let mut c = CheckResult::new("oracle-consistency");
    let codec = table.codec();
    let n = table.n();
    let d = table.distances();
    if d[codec.encode(SignedPermutation::identity(n).entries())] != 0 {
        c.violations.push("identity is not at distance 0".into());
    }
    let bad: Vec<String> = (0..d.len())
        .into_par_iter()
        .flat_map_iter(|code| {
            let entries = codec.decode(code);
            let ks: Vec<usize> = if table.generators().is_signed() { (1..=n).collect() } else { (2..=n).collect() };
            ks.into_iter().filter_map(move |k| {
                let mut next = entries.clone();
                if table.generators().is_signed() {
                    next[..k].reverse();
                    next[..k].iter_mut().for_each(|e| *e = -*e);
                } else {
                    next.swap(0, k - 1);
                }
                let other = codec.encode(&next);
                (d[code].abs_diff(d[other]) > 1).then(|| format!("state {code} and {other} differ by more than 1"))
            })
        })
        .collect();
    c.checked = d.len();
    c.violations = bad;
    c
}

fn check_simple_permutations(table: &OracleTable) -> Vec<CheckResult> {
    let simple: Vec<(SignedPermutation, u8)> =
        table.iter().filter(|(pi, _)| BreakpointGraph::new(pi).is_simple()).collect();
    let results: Vec<(Option<String>, Option<String>)> = simple
        .par_iter()
        .map(|(pi, d)| {
            let d = *d as usize;
            let bg = BreakpointGraph::new(pi);
            let formula = match psrd_simple_from_graph(&bg) {
                Ok(v) if v == d => None,
                Ok(v) => Some(format!("{pi}: formula {v}, oracle {d}")),
                Err(e) => Some(format!("{pi}: {e}")),
            };
            let sorter = match sort_simple(pi) {
                Ok(trace) => {
                    let folds = trace.flips.apply(pi).map(|r| r.is_identity()).unwrap_or(false);
                    let conservative =
                        trace.checkpoints.iter().all(|cp| BreakpointGraph::new(&cp.after).is_simple());
                    if !folds {
                        Some(format!("{pi}: flips {} do not sort", trace.flips))
                    } else if !conservative {
                        Some(format!("{pi}: a checkpoint is not simple"))
                    } else if trace.flips.len() != d {
                        Some(format!("{pi}: sorter used {} flips, oracle {d}", trace.flips.len()))
                    } else {
                        None
                    }
                }
                Err(e) => Some(format!("{pi}: {e}")),
            };
            (formula, sorter)
        })
        .collect();
    let mut formula = CheckResult::new("simple-formula");
    let mut sorter = CheckResult::new("simple-sorter");
    formula.checked = results.len();
    sorter.checked = results.len();
    for (f, s) in results {
        formula.violations.extend(f);
        sorter.violations.extend(s);
    }
    vec![formula, sorter]
}

pub const DEFAULT_LEMMA9_CAP: usize = 5;

/// Result of exploring merging/splitting move sequences.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma9Report {
    pub n: usize,
    /// Simple permutations with `π₁ ≠ 1` and a nonoriented leftmost component.
    pub qualifying: usize,
    /// Reached states whose leftmost cycle is a 2-cycle.
    pub states_checked: usize,
    pub depth_bound: usize,
    /// Starting permutations whose search was cut off by the depth bound.
    pub depth_exceeded: Vec<String>,
    pub counterexamples: Vec<String>,
}

impl Lemma9Report {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{} leftmost-orientation: {} qualifying, {} states checked, depth bound {}, {} cut off, {} counter-examples\n",
            if self.passed() { "PASS" } else { "FAIL" },
            self.qualifying,
            self.states_checked,
            self.depth_bound,
            self.depth_exceeded.len(),
            self.counterexamples.len()
        );
        for c in &self.counterexamples {
            let _ = writeln!(out, "  {c}");
        }
        out
    }
}

/// For every simple `π` with `π₁ ≠ 1` and a nonoriented leftmost component,
/// follows every sequence of merging and splitting prefix flips up to
/// `2(n+1)` moves and checks that each state whose leftmost cycle is a
/// 2-cycle is simple with a nonoriented leftmost component.
pub fn check_lemma9(n: usize) -> Result<Lemma9Report> {
    check_lemma9_with_cap(n, DEFAULT_LEMMA9_CAP)
}

pub fn check_lemma9_with_cap(n: usize, cap: usize) -> Result<Lemma9Report> {
    if n > cap {
        return Err(Error::OverCap { n, cap });
    }
    let depth_bound = 2 * (n + 1);
    let codec = StateCodec::new(n, true);
    let starts: Vec<SignedPermutation> = (0..if n == 0 { 0 } else { codec.size() })
        .map(|code| SignedPermutation::from_entries_unchecked(codec.decode(code)))
        .filter(|pi| {
            let bg = BreakpointGraph::new(pi);
            bg.is_simple()
                && !pi.fixes_one()
                && bg.leftmost_structures().is_some_and(|lm| !bg.component(lm.component).oriented)
        })
        .collect();

    let outcomes: Vec<Result<(usize, bool, Vec<String>)>> =
        starts.par_iter().map(|pi| explore_lemma9(pi, depth_bound)).collect();
    let mut report = Lemma9Report {
        n,
        qualifying: starts.len(),
        states_checked: 0,
        depth_bound,
        depth_exceeded: Vec::new(),
        counterexamples: Vec::new(),
    };
    for (pi, outcome) in starts.iter().zip(outcomes) {
        let (checked, cut, bad) = outcome?;
        report.states_checked += checked;
        if cut {
            report.depth_exceeded.push(pi.to_string());
        }
        report.counterexamples.extend(bad);
    }
    Ok(report)
}

fn explore_lemma9(start: &SignedPermutation, depth_bound: usize) -> Result<(usize, bool, Vec<String>)> {
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([(start.clone(), 0usize)]);
    let (mut checked, mut cut, mut bad) = (0, false, Vec::new());
    while let Some((pi, depth)) = queue.pop_front() {
        let bg = BreakpointGraph::new(&pi);
        if let Some(c) = bg.leftmost_cycle_strict() {
            if bg.cycle(c).len() == 2 {
                checked += 1;
                let oriented = bg.component(bg.component_of_cycle(c)).oriented;
                if !bg.is_simple() || oriented {
                    bad.push(format!(
                        "{start} -> {pi}: simple {}, leftmost component {}",
                        bg.is_simple(),
                        if oriented { "oriented" } else { "nonoriented" }
                    ));
                }
            }
        }
        for k in 1..=pi.len() {
            let kind = classify_move(&bg, k)?;
            if kind == MoveClassification::Other {
                continue;
            }
            let next = pi.apply_prefix_flip(k)?;
            if seen.contains(&next) {
                continue;
            }
            if depth == depth_bound {
                cut = true;
                continue;
            }
            seen.insert(next.clone());
            queue.push_back((next, depth + 1));
        }
    }
    Ok((checked, cut, bad))
}
