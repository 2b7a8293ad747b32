//! Optimal sorting of simple permutations by prefix signed reversals.
//!
//! The main loop sorts oriented components with proper reversals, each
//! replayed as one or three prefix flips. When no oriented cycle is left it
//! orients a component first: with one flip on the leftmost cycle when
//! `π₁ ≠ 1`, otherwise with two flips through a cycle interleaving the
//! leftmost cycle of a nonoriented component.

use std::collections::HashSet;
use std::fmt::{self, Write as _};

use serde::Serialize;

use crate::distance::{lower_bound_of, psrd_simple_from_graph};
use crate::error::{Error, Result};
use crate::graph::BreakpointGraph;
use crate::perm::{mimic_as_prefix_flips, FlipSequence, SignedPermutation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MoveKind {
    /// A proper reversal splitting an oriented 2-cycle.
    ProperSplit,
    /// One flip on the leftmost cycle orienting the leftmost component.
    #[serde(rename = "lemma5-orient")]
    Lemma5Orient,
    /// Two flips orienting a component while `π₁ = 1`.
    #[serde(rename = "lemma6-orient")]
    Lemma6Orient,
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MoveKind::ProperSplit => "proper-split",
            MoveKind::Lemma5Orient => "lemma5-orient",
            MoveKind::Lemma6Orient => "lemma6-orient",
        })
    }
}

/// One logical move of the sorter.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Checkpoint {
    pub kind: MoveKind,
    pub flips: FlipSequence,
    pub after: SignedPermutation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SortTrace {
    pub source: SignedPermutation,
    pub flips: FlipSequence,
    pub checkpoints: Vec<Checkpoint>,
    pub result: SignedPermutation,
    /// Proper reversals abandoned while searching for a valid order.
    pub backtracks: usize,
}

impl SortTrace {
    /// One line per flip: length, move kind, permutation after the flip, and
    /// a `checkpoint` marker on the flip that completes a logical move.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut cur = self.source.clone();
        for cp in &self.checkpoints {
            let last = cp.flips.len().saturating_sub(1);
            for (t, &k) in cp.flips.lengths().iter().enumerate() {
                cur.prefix_flip_in_place(k).expect("trace flips are in range");
                let _ = write!(out, "{k}\t{}\t{cur}", cp.kind);
                if t == last {
                    out.push_str("\tcheckpoint");
                }
                out.push('\n');
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MoveClassification {
    /// Acts on two distinct nontrivial cycles.
    Merging,
    /// Splits the leftmost cycle in two, at least one of them trivial.
    Splitting,
    Other,
}

/// Signed reversal positions `(i, j)` acting on the two black edges of
/// every oriented 2-cycle, by increasing left black edge.
pub fn proper_reversals(bg: &BreakpointGraph) -> Vec<(usize, usize)> {
    bg.cycles()
        .iter()
        .filter(|c| c.oriented && c.len() == 2)
        .map(|c| {
            let b = c.sorted_black();
            (b[0] + 1, b[1])
        })
        .collect()
}

/// A proper reversal on an oriented 2-cycle, if any exists.
pub fn find_proper_reversal(bg: &BreakpointGraph) -> Result<Option<(usize, usize)>> {
    require_simple(bg)?;
    Ok(proper_reversals(bg).into_iter().next())
}

fn require_simple(bg: &BreakpointGraph) -> Result<()> {
    if bg.is_simple() {
        Ok(())
    } else {
        Err(Error::NotSimple(bg.permutation().to_string()))
    }
}

fn leftmost_component_oriented(bg: &BreakpointGraph) -> bool {
    bg.leftmost_structures().map(|lm| bg.component(lm.component).oriented).unwrap_or(false)
}

/// One flip on the leftmost cycle that orients the leftmost component
/// without changing the lower bound. Requires `π₁ ≠ 1` and no oriented cycle.
pub fn lemma5_move(bg: &BreakpointGraph) -> Result<FlipSequence> {
    require_simple(bg)?;
    let pi = bg.permutation();
    if pi.fixes_one() {
        return Err(Error::Precondition("leftmost-cycle orientation needs π₁ ≠ 1".into()));
    }
    if bg.has_oriented_cycle() {
        return Err(Error::Precondition("an oriented cycle already exists".into()));
    }
    let leftmost = bg
        .leftmost_cycle_strict()
        .ok_or_else(|| Error::Internal(format!("{pi}: π₁ ≠ 1 but black edge 0 is trivial")))?;
    let black = bg.cycle(leftmost).sorted_black();
    // A prefix flip always acts on black edge 0, so the only flip acting on
    // the leftmost 2-cycle has length equal to its other black edge.
    let flips = FlipSequence::from(vec![black[1]]);
    let after = BreakpointGraph::new(&flips.apply(pi)?);
    if !(after.is_simple() && leftmost_component_oriented(&after) && lower_bound_of(&after) == lower_bound_of(bg)) {
        return Err(Error::Internal(format!("flip {} failed to orient the leftmost component of {pi}", black[1])));
    }
    Ok(flips)
}

/// Two flips orienting a nonoriented component when `π₁ = 1`, lowering the
/// bound by exactly two. Requires no oriented cycle.
pub fn lemma6_move(bg: &BreakpointGraph) -> Result<FlipSequence> {
    require_simple(bg)?;
    let pi = bg.permutation();
    if !pi.fixes_one() {
        return Err(Error::Precondition("two-flip orientation needs π₁ = 1".into()));
    }
    if bg.has_oriented_cycle() {
        return Err(Error::Precondition("an oriented cycle already exists".into()));
    }
    let component = bg
        .components()
        .iter()
        .find(|c| !c.sorted)
        .ok_or_else(|| Error::Precondition(format!("{pi} has no nontrivial component")))?;
    // Components list their cycles by smallest black edge, so the first one
    // is the leftmost cycle of the component.
    let first = component.cycles[0];
    let g_before = lower_bound_of(bg);
    for &partner in bg.interleaving_neighbours(first) {
        let black = bg.cycle(partner).sorted_black();
        let flips = FlipSequence::from(vec![black[0], black[1]]);
        let after = BreakpointGraph::new(&flips.apply(pi)?);
        if after.is_simple() && leftmost_component_oriented(&after) && lower_bound_of(&after) + 2 == g_before {
            return Ok(flips);
        }
    }
    Err(Error::Internal(format!(
        "no interleaving cycle orients component {} of {pi}",
        component.id
    )))
}

/// Sorts one oriented component by proper reversals and returns the flips.
pub fn sort_oriented_component(bg: &BreakpointGraph, component: usize) -> Result<FlipSequence> {
    let (steps, _) = sort_component_steps(bg, component)?;
    let mut flips = FlipSequence::new();
    for s in &steps {
        flips.extend_from(&s.flips);
    }
    Ok(flips)
}

fn sort_component_steps(bg: &BreakpointGraph, component: usize) -> Result<(Vec<Checkpoint>, usize)> {
    require_simple(bg)?;
    let comp = bg
        .components()
        .get(component)
        .ok_or_else(|| Error::Precondition(format!("no component {component}")))?;
    if !comp.oriented {
        return Err(Error::Precondition(format!("component {component} is nonoriented")));
    }
    let tracked: HashSet<(u32, u32)> = comp
        .cycles
        .iter()
        .filter(|&&c| !bg.cycle(c).is_trivial())
        .flat_map(|&c| bg.cycle(c).black.iter().map(|&b| bg.black_edge_key(b)))
        .collect();
    let mut search = ComponentSearch { tracked, dead: HashSet::new(), backtracks: 0 };
    match search.run(bg.clone())? {
        Some(mut steps) => {
            steps.reverse();
            Ok((steps, search.backtracks))
        }
        None => Err(Error::Internal(format!(
            "no valid proper-reversal order sorts component {component} of {}",
            bg.permutation()
        ))),
    }
}

/// Depth-first search over proper reversals inside one component.
/// Candidates that keep the most cycles oriented are tried first; a branch
/// fails when the component still has nontrivial cycles but none oriented.
struct ComponentSearch {
    tracked: HashSet<(u32, u32)>,
    dead: HashSet<SignedPermutation>,
    backtracks: usize,
}

impl ComponentSearch {
    /// Returns the steps in reverse order.
    fn run(&mut self, bg: BreakpointGraph) -> Result<Option<Vec<Checkpoint>>> {
        let in_component = |c: &crate::graph::AlternatingCycle| {
            !c.is_trivial() && c.black.iter().all(|&b| self.tracked.contains(&bg.black_edge_key(b)))
        };
        if !bg.cycles().iter().any(in_component) {
            return Ok(Some(Vec::new()));
        }
        let pi = bg.permutation().clone();
        if self.dead.contains(&pi) {
            return Ok(None);
        }

        let mut candidates = Vec::new();
        for c in bg.cycles().iter().filter(|c| c.oriented && in_component(c)) {
            let black = c.sorted_black();
            let (i, j) = (black[0] + 1, black[1]);
            let next = BreakpointGraph::new(&pi.apply_signed_reversal(i, j)?);
            let score = next.cycles().iter().filter(|c| c.oriented).count();
            candidates.push((score, i, j, next));
        }
        candidates.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));

        let g_before = lower_bound_of(&bg);
        for (_, i, j, next) in candidates {
            let flips = mimic_as_prefix_flips(i, j, pi.len())?;
            if flips.apply(&pi)? != *next.permutation() {
                return Err(Error::Internal(format!("flips {flips} do not mimic reversal ({i}, {j}) on {pi}")));
            }
            if g_before != lower_bound_of(&next) + flips.len() {
                return Err(Error::Internal(format!(
                    "proper reversal ({i}, {j}) on {pi} moved the bound by {} with {} flips",
                    g_before as isize - lower_bound_of(&next) as isize,
                    flips.len()
                )));
            }
            let after = next.permutation().clone();
            if let Some(mut rest) = self.run(next)? {
                rest.push(Checkpoint { kind: MoveKind::ProperSplit, flips, after });
                return Ok(Some(rest));
            }
            self.backtracks += 1;
        }
        self.dead.insert(pi);
        Ok(None)
    }
}

/// Sorts a simple permutation optimally, recording each logical move.
pub fn sort_simple(pi: &SignedPermutation) -> Result<SortTrace> {
    let mut bg = BreakpointGraph::new(pi);
    require_simple(&bg)?;
    let n = pi.len();
    let mut checkpoints = Vec::new();
    let mut backtracks = 0;
    let mut guard = 0;
    while !bg.permutation().is_identity() {
        guard += 1;
        if guard > 4 * (n + 1) {
            return Err(Error::Internal(format!("sorting {pi} did not terminate")));
        }
        let oriented = bg
            .components()
            .iter()
            .filter(|c| c.oriented && !c.sorted)
            .min_by_key(|c| c.extent.0)
            .map(|c| c.id);
        let cur = bg.permutation().clone();
        let steps = match oriented {
            Some(id) => {
                let (steps, b) = sort_component_steps(&bg, id)?;
                backtracks += b;
                steps
            }
            None => {
                let (kind, flips) = if cur.fixes_one() {
                    (MoveKind::Lemma6Orient, lemma6_move(&bg)?)
                } else {
                    (MoveKind::Lemma5Orient, lemma5_move(&bg)?)
                };
                let after = flips.apply(&cur)?;
                vec![Checkpoint { kind, flips, after }]
            }
        };
        for s in &steps {
            if !BreakpointGraph::new(&s.after).is_simple() {
                return Err(Error::Internal(format!("move {} left {} non-simple", s.kind, s.after)));
            }
        }
        let last = steps.last().map(|s| s.after.clone()).unwrap_or(cur);
        checkpoints.extend(steps);
        bg = BreakpointGraph::new(&last);
    }

    let mut flips = FlipSequence::new();
    for cp in &checkpoints {
        flips.extend_from(&cp.flips);
    }
    let result = flips.apply(pi)?;
    if !result.is_identity() {
        return Err(Error::Internal(format!("flips {flips} carry {pi} to {result}, not the identity")));
    }
    Ok(SortTrace { source: pi.clone(), flips, checkpoints, result, backtracks })
}

/// Classifies the prefix flip of length `k` relative to `bg`.
pub fn classify_move(bg: &BreakpointGraph, k: usize) -> Result<MoveClassification> {
    let pi = bg.permutation();
    if k == 0 || k > pi.len() {
        return Err(Error::FlipOutOfRange { k, n: pi.len() });
    }
    let (left, right) = (bg.cycle_of_black(0), bg.cycle_of_black(k));
    if left != right {
        let merging = !bg.cycle(left).is_trivial() && !bg.cycle(right).is_trivial();
        return Ok(if merging { MoveClassification::Merging } else { MoveClassification::Other });
    }
    let after = BreakpointGraph::new(&pi.apply_prefix_flip(k)?);
    if after.cycle_count() == bg.cycle_count() + 1 && after.trivial_cycle_count() > bg.trivial_cycle_count() {
        Ok(MoveClassification::Splitting)
    } else {
        Ok(MoveClassification::Other)
    }
}

/// The exact distance the trace should reach, for self-checks.
pub fn expected_length(pi: &SignedPermutation) -> Result<usize> {
    psrd_simple_from_graph(&BreakpointGraph::new(pi))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> SignedPermutation {
        s.parse().unwrap()
    }

    fn bg(s: &str) -> BreakpointGraph {
        BreakpointGraph::new(&p(s))
    }

    #[test]
    fn proper_reversal_examples() {
        let g = bg("-2 -3 1");
        assert_eq!(find_proper_reversal(&g).unwrap(), Some((2, 3)));
        let after = BreakpointGraph::new(&p("-2 -3 1").apply_signed_reversal(2, 3).unwrap());
        assert_eq!(after.cycle_count(), g.cycle_count() + 1);
        assert_eq!(find_proper_reversal(&bg("-1")).unwrap(), Some((1, 1)));
        assert_eq!(find_proper_reversal(&bg("3 2 1")).unwrap(), None);
        assert!(find_proper_reversal(&bg("2 1")).is_err());
    }

    #[test]
    fn lemma5_example() {
        let g = bg("3 2 1");
        let flips = lemma5_move(&g).unwrap();
        assert_eq!(flips.lengths(), &[2]);
        let after = flips.apply(&p("3 2 1")).unwrap();
        assert_eq!(after, p("-2 -3 1"));
        assert_eq!(lower_bound_of(&BreakpointGraph::new(&after)), 4);
        assert!(lemma5_move(&bg("1 4 3 2")).is_err());
        assert!(lemma5_move(&bg("-2 -3 1")).is_err());
    }

    #[test]
    fn lemma6_example() {
        let flips = lemma6_move(&bg("1 4 3 2")).unwrap();
        assert_eq!(flips.lengths(), &[2, 4]);
        let after = flips.apply(&p("1 4 3 2")).unwrap();
        assert_eq!(after, p("-2 -3 1 4"));
        let g = BreakpointGraph::new(&after);
        assert!(leftmost_component_oriented(&g));
        assert_eq!(lower_bound_of(&g), 4);
        assert!(matches!(lemma6_move(&bg("1")), Err(Error::Precondition(_))));
        assert!(lemma6_move(&bg("3 2 1")).is_err());
    }

    #[test]
    fn component_sort_examples() {
        let g = bg("-2 -3 1");
        let flips = sort_oriented_component(&g, 0).unwrap();
        assert_eq!(flips.lengths(), &[3, 2, 3, 2]);
        assert!(flips.apply(&p("-2 -3 1")).unwrap().is_identity());
        assert_eq!(sort_oriented_component(&bg("-1"), 0).unwrap().lengths(), &[1]);
        // Oriented 2-cycle holding black edge 0: one flip.
        assert_eq!(sort_oriented_component(&bg("-2 -1 3"), 0).unwrap().lengths(), &[2]);
        assert!(sort_oriented_component(&bg("3 2 1"), 0).is_err());
    }

    #[test]
    fn worked_trace() {
        let trace = sort_simple(&p("3 2 1")).unwrap();
        assert_eq!(trace.flips.lengths(), &[2, 3, 2, 3, 2]);
        let after: Vec<String> = trace.checkpoints.iter().map(|c| c.after.to_string()).collect();
        assert_eq!(after, vec!["-2 -3 1", "-2 -1 3", "1 2 3"]);
        assert_eq!(trace.checkpoints[0].kind, MoveKind::Lemma5Orient);
        assert!(trace.to_text().starts_with("2\tlemma5-orient\t-2 -3 1\tcheckpoint\n3\tproper-split\t"));
    }

    #[test]
    fn sort_examples() {
        assert!(sort_simple(&SignedPermutation::identity(3)).unwrap().flips.is_empty());
        let trace = sort_simple(&p("1 4 3 2")).unwrap();
        assert_eq!(trace.flips.len(), 6);
        assert_eq!(&trace.flips.lengths()[..2], &[2, 4]);
        assert_eq!(sort_simple(&p("-1")).unwrap().flips.lengths(), &[1]);
        assert!(matches!(sort_simple(&p("2 1")), Err(Error::NotSimple(_))));
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify_move(&bg("3 2 1"), 2).unwrap(), MoveClassification::Other);
        assert_eq!(classify_move(&bg("-2 -1 3"), 2).unwrap(), MoveClassification::Splitting);
        // Black edges 0 and 1 of ⟨3 2 1⟩ lie in its two distinct 2-cycles.
        assert_eq!(classify_move(&bg("3 2 1"), 1).unwrap(), MoveClassification::Merging);
        assert!(classify_move(&bg("3 2 1"), 4).is_err());
    }
}
