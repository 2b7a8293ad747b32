//! Closed-form distances and bounds.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::BreakpointGraph;
use crate::perm::SignedPermutation;

/// Every term entering the prefix distance formulas, so callers can check
/// them one by one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistanceReport {
    pub permutation: String,
    pub n: usize,
    /// `c(Γ(π))`, present only for unsigned permutations.
    pub c_gamma: Option<usize>,
    /// `c₁(Γ(π))`, present only for unsigned permutations.
    pub c1_gamma: Option<usize>,
    /// Prefix exchange distance, present only for unsigned permutations.
    pub prefix_exchange_distance: Option<usize>,
    pub c_bg: usize,
    pub c1_bg: usize,
    pub first_element_fixed: bool,
    pub simple: bool,
    /// `t(π)`; only defined for simple permutations.
    pub t: Option<u8>,
    pub lower_bound: usize,
    /// Exact prefix signed reversal distance, when `simple`.
    pub psrd: Option<usize>,
}

impl DistanceReport {
    pub fn new(pi: &SignedPermutation) -> Self {
        let bg = BreakpointGraph::new(pi);
        let (c_gamma, c1_gamma, ped) = match pi.graph_cycles() {
            Ok(cycles) => {
                let c1 = cycles.iter().filter(|c| c.len() == 1).count();
                (Some(cycles.len()), Some(c1), prefix_exchange_distance(pi).ok())
            }
            Err(_) => (None, None, None),
        };
        let simple = bg.is_simple();
        let t = simple.then(|| t_term(&bg));
        DistanceReport {
            permutation: pi.to_string(),
            n: pi.len(),
            c_gamma,
            c1_gamma,
            prefix_exchange_distance: ped,
            c_bg: bg.cycle_count(),
            c1_bg: bg.trivial_cycle_count(),
            first_element_fixed: pi.fixes_one(),
            simple,
            t,
            lower_bound: lower_bound_from_graph(&bg),
            psrd: simple.then(|| lower_bound_from_graph(&bg) + t_term(&bg) as usize),
        }
    }

    /// Key/value text, one field per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "permutation: {}", self.permutation);
        let _ = writeln!(out, "n: {}", self.n);
        let _ = writeln!(out, "c_bg: {}", self.c_bg);
        let _ = writeln!(out, "c1_bg: {}", self.c1_bg);
        let _ = writeln!(out, "first_element_fixed: {}", self.first_element_fixed);
        let _ = writeln!(out, "lower_bound: {}", self.lower_bound);
        let _ = writeln!(out, "simple: {}", self.simple);
        if let (Some(t), Some(psrd)) = (self.t, self.psrd) {
            let _ = writeln!(out, "t: {t}");
            let _ = writeln!(out, "psrd: {psrd}");
        } else {
            let _ = writeln!(out, "psrd: not simple: formula unavailable, lower bound only");
        }
        if let (Some(c), Some(c1), Some(ped)) = (self.c_gamma, self.c1_gamma, self.prefix_exchange_distance) {
            let _ = writeln!(out, "c_gamma: {c}");
            let _ = writeln!(out, "c1_gamma: {c1}");
            let _ = writeln!(out, "ped: {ped}");
        }
        out
    }

    /// Single-line form used in batch mode.
    pub fn to_line(&self) -> String {
        let mut line = format!(
            "{}\tg={}\tsimple={}",
            self.permutation, self.lower_bound, self.simple
        );
        match (self.t, self.psrd) {
            (Some(t), Some(psrd)) => {
                let _ = write!(line, "\tt={t}\tpsrd={psrd}");
            }
            _ => line.push_str("\tpsrd=unavailable"),
        }
        line
    }
}

fn first_element_term(pi: &SignedPermutation) -> usize {
    if pi.fixes_one() {
        0
    } else {
        2
    }
}

/// `n + c(Γ) − 2c₁(Γ) − (0 if π₁ = 1 else 2)` for an unsigned permutation.
pub fn prefix_exchange_distance(pi: &SignedPermutation) -> Result<usize> {
    let cycles = pi.graph_cycles()?;
    let c1 = cycles.iter().filter(|c| c.len() == 1).count();
    let value = pi.len() + cycles.len() - 2 * c1;
    // The subtraction cannot underflow: when π₁ ≠ 1 there is a nontrivial cycle.
    Ok(value - first_element_term(pi))
}

fn lower_bound_from_graph(bg: &BreakpointGraph) -> usize {
    let pi = bg.permutation();
    pi.len() + 1 + bg.cycle_count() - 2 * bg.trivial_cycle_count() - first_element_term(pi)
}

/// `g(π) = n + 1 + c(BG) − 2c₁(BG) − (0 if π₁ = 1 else 2)`.
pub fn psrd_lower_bound(pi: &SignedPermutation) -> usize {
    lower_bound_from_graph(&BreakpointGraph::new(pi))
}

/// `t(π)`: 1 iff `π₁ ≠ 1` and the leftmost component is nonoriented.
pub fn t_term(bg: &BreakpointGraph) -> u8 {
    if bg.permutation().fixes_one() {
        return 0;
    }
    match bg.leftmost_structures() {
        Some(lm) if !bg.component(lm.component).oriented => 1,
        _ => 0,
    }
}

/// Exact prefix signed reversal distance of a simple permutation.
pub fn psrd_simple(pi: &SignedPermutation) -> Result<usize> {
    let bg = BreakpointGraph::new(pi);
    psrd_simple_from_graph(&bg)
}

pub fn psrd_simple_from_graph(bg: &BreakpointGraph) -> Result<usize> {
    if !bg.is_simple() {
        return Err(Error::NotSimple(bg.permutation().to_string()));
    }
    Ok(lower_bound_from_graph(bg) + t_term(bg) as usize)
}

pub(crate) fn lower_bound_of(bg: &BreakpointGraph) -> usize {
    lower_bound_from_graph(bg)
}
