//! Breakpoint graph of a signed permutation.
//!
//! Vertices are the positions `0..=2n+1` of the doubled permutation `π′`.
//! Black edge `i` joins positions `2i` and `2i+1`; grey edge `k` joins the
//! positions holding values `2k` and `2k+1`. Every vertex has one edge of
//! each colour, so the graph splits into alternating cycles.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{DoubledPermutation, SignedPermutation};

/// Black edge `index` joins positions `2·index` and `2·index + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BlackEdge {
    pub index: usize,
    /// Values at the two endpoints, left to right.
    pub values: (usize, usize),
}

/// Grey edge `index` joins values `2·index` and `2·index + 1`; `support` is
/// the closed interval of positions between its endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GreyEdge {
    pub index: usize,
    pub support: (usize, usize),
}

impl GreyEdge {
    pub fn support_len(&self) -> usize {
        self.support.1 - self.support.0 + 1
    }

    /// Oriented iff the support holds an odd number of positions.
    pub fn is_oriented(&self) -> bool {
        self.support_len() % 2 == 1
    }

    /// Supports overlap without either containing the other.
    pub fn interleaves(&self, other: &GreyEdge) -> bool {
        let (a, b) = self.support;
        let (c, d) = other.support;
        (a < c && c < b && b < d) || (c < a && a < d && d < b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlternatingCycle {
    pub id: usize,
    /// Black edges in traversal order, starting from the smallest index.
    pub black: Vec<usize>,
    /// Grey edges in traversal order; `grey[t]` follows `black[t]`.
    pub grey: Vec<usize>,
    pub oriented: bool,
}

impl AlternatingCycle {
    pub fn len(&self) -> usize {
        self.black.len()
    }

    pub fn is_empty(&self) -> bool {
        self.black.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.black.len() == 1
    }

    /// Smallest interval of positions covering every vertex of the cycle.
    pub fn support(&self) -> (usize, usize) {
        let lo = *self.black.iter().min().expect("cycles are nonempty");
        let hi = *self.black.iter().max().expect("cycles are nonempty");
        (2 * lo, 2 * hi + 1)
    }

    /// Black edge indices in increasing order.
    pub fn sorted_black(&self) -> Vec<usize> {
        let mut b = self.black.clone();
        b.sort_unstable();
        b
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Component {
    pub id: usize,
    /// Cycle ids, increasing.
    pub cycles: Vec<usize>,
    pub oriented: bool,
    pub extent: (usize, usize),
    pub minimal: bool,
    /// Every cycle is trivial; nothing left to sort.
    pub sorted: bool,
}

/// Leftmost nontrivial cycle and its component.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Leftmost {
    pub cycle: usize,
    pub component: usize,
    /// The cycle holds black edge 0, i.e. it is the leftmost cycle proper.
    /// Otherwise it is the cycle of the smallest black edge in a nontrivial
    /// cycle.
    pub strict: bool,
}

#[derive(Debug, Clone)]
pub struct BreakpointGraph {
    perm: SignedPermutation,
    doubled: DoubledPermutation,
    black: Vec<BlackEdge>,
    grey: Vec<GreyEdge>,
    cycles: Vec<AlternatingCycle>,
    cycle_of_black: Vec<usize>,
    cycle_of_grey: Vec<usize>,
    interleaving: Vec<Vec<usize>>,
    components: Vec<Component>,
    component_of_cycle: Vec<usize>,
}

impl BreakpointGraph {
    pub fn new(pi: &SignedPermutation) -> Self {
        let n = pi.len();
        let doubled = pi.double();
        let values = doubled.values();
        let pos = doubled.positions();

        let black: Vec<BlackEdge> = (0..=n)
            .map(|i| BlackEdge { index: i, values: (values[2 * i], values[2 * i + 1]) })
            .collect();
        let grey: Vec<GreyEdge> = (0..=n)
            .map(|k| {
                let (p, q) = (pos[2 * k], pos[2 * k + 1]);
                GreyEdge { index: k, support: (p.min(q), p.max(q)) }
            })
            .collect();

        // Walk each cycle starting at the left end of its smallest black edge.
        let mut cycle_of_black = vec![usize::MAX; n + 1];
        let mut cycle_of_grey = vec![usize::MAX; n + 1];
        let mut cycles = Vec::new();
        for start in 0..=n {
            if cycle_of_black[start] != usize::MAX {
                continue;
            }
            let id = cycles.len();
            let mut cycle = AlternatingCycle { id, black: Vec::new(), grey: Vec::new(), oriented: false };
            let mut p = 2 * start;
            loop {
                let b = p / 2;
                cycle_of_black[b] = id;
                cycle.black.push(b);
                let q = p ^ 1;
                let g = values[q] / 2;
                cycle_of_grey[g] = id;
                cycle.grey.push(g);
                cycle.oriented |= grey[g].is_oriented();
                p = pos[values[q] ^ 1];
                if p == 2 * start {
                    break;
                }
            }
            cycles.push(cycle);
        }

        let mut interleaving = vec![Vec::new(); cycles.len()];
        for a in 0..grey.len() {
            for b in a + 1..grey.len() {
                let (ca, cb) = (cycle_of_grey[a], cycle_of_grey[b]);
                if ca != cb && grey[a].interleaves(&grey[b]) {
                    interleaving[ca].push(cb);
                    interleaving[cb].push(ca);
                }
            }
        }
        for adj in &mut interleaving {
            adj.sort_unstable();
            adj.dedup();
        }

        let (components, component_of_cycle) = connected_components(&cycles, &interleaving);

        BreakpointGraph {
            perm: pi.clone(),
            doubled,
            black,
            grey,
            cycles,
            cycle_of_black,
            cycle_of_grey,
            interleaving,
            components,
            component_of_cycle,
        }
    }

    pub fn permutation(&self) -> &SignedPermutation {
        &self.perm
    }

    pub fn doubled(&self) -> &DoubledPermutation {
        &self.doubled
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    pub fn black_edges(&self) -> &[BlackEdge] {
        &self.black
    }

    pub fn grey_edges(&self) -> &[GreyEdge] {
        &self.grey
    }

    pub fn cycles(&self) -> &[AlternatingCycle] {
        &self.cycles
    }

    pub fn cycle(&self, id: usize) -> &AlternatingCycle {
        &self.cycles[id]
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn component(&self, id: usize) -> &Component {
        &self.components[id]
    }

    pub fn cycle_of_black(&self, i: usize) -> usize {
        self.cycle_of_black[i]
    }

    pub fn cycle_of_grey(&self, k: usize) -> usize {
        self.cycle_of_grey[k]
    }

    pub fn component_of_cycle(&self, c: usize) -> usize {
        self.component_of_cycle[c]
    }

    /// Neighbours of cycle `c` in the interleaving graph, increasing.
    pub fn interleaving_neighbours(&self, c: usize) -> &[usize] {
        &self.interleaving[c]
    }

    /// `c(BG)`.
    pub fn cycle_count(&self) -> usize {
        self.cycles.len()
    }

    /// `c₁(BG)`.
    pub fn trivial_cycle_count(&self) -> usize {
        self.cycles.iter().filter(|c| c.is_trivial()).count()
    }

    pub fn is_simple(&self) -> bool {
        self.cycles.iter().all(|c| c.len() <= 2)
    }

    pub fn has_oriented_cycle(&self) -> bool {
        self.cycles.iter().any(|c| c.oriented)
    }

    pub fn grey_edge_oriented(&self, k: usize) -> bool {
        self.grey[k].is_oriented()
    }

    /// Black edge `i` sits between `πᵢ` and `πᵢ₊₁` (sentinels positive) and is
    /// oriented iff those two have opposite signs.
    pub fn black_edge_oriented(&self, i: usize) -> bool {
        let left = self.perm.framed(i);
        let right = self.perm.framed(i + 1);
        (left < 0) != (right < 0)
    }

    /// Unordered pair of absolute values flanking black edge `i`. Stable under
    /// any reversal that does not act on this edge.
    pub fn black_edge_key(&self, i: usize) -> (u32, u32) {
        let a = self.perm.framed(i).unsigned_abs();
        let b = self.perm.framed(i + 1).unsigned_abs();
        (a.min(b), a.max(b))
    }

    pub fn cycles_interleave(&self, c1: usize, c2: usize) -> Result<bool> {
        if c1 == c2 {
            return Err(Error::Precondition(format!("cycle {c1} compared with itself")));
        }
        Ok(self.interleaving[c1].binary_search(&c2).is_ok())
    }

    /// The cycle containing black edge 0, if it is nontrivial.
    pub fn leftmost_cycle_strict(&self) -> Option<usize> {
        let c = self.cycle_of_black[0];
        (!self.cycles[c].is_trivial()).then_some(c)
    }

    /// The leftmost nontrivial cycle (strict when black edge 0 is in one)
    /// together with its component. `None` only for the identity.
    pub fn leftmost_structures(&self) -> Option<Leftmost> {
        let first = (0..self.black.len()).find(|&i| !self.cycles[self.cycle_of_black[i]].is_trivial())?;
        let cycle = self.cycle_of_black[first];
        Some(Leftmost { cycle, component: self.component_of_cycle[cycle], strict: first == 0 })
    }

    /// Human-readable dump consumed by the CLI `analyze` command.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "permutation: {}", self.perm);
        let _ = writeln!(out, "doubled: {}", self.doubled);
        for b in &self.black {
            let _ = writeln!(
                out,
                "black {}: {{{}, {}}} {}",
                b.index,
                b.values.0,
                b.values.1,
                orientation_word(self.black_edge_oriented(b.index))
            );
        }
        for g in &self.grey {
            let _ = writeln!(
                out,
                "grey {}: {{{}, {}}} support [{}, {}] {}",
                g.index,
                2 * g.index,
                2 * g.index + 1,
                g.support.0,
                g.support.1,
                orientation_word(g.is_oriented())
            );
        }
        for c in &self.cycles {
            let _ = writeln!(
                out,
                "cycle {}: black {} length {} {} {}",
                c.id,
                join(&c.black),
                c.len(),
                if c.is_trivial() { "trivial" } else { "nontrivial" },
                orientation_word(c.oriented)
            );
        }
        for comp in &self.components {
            let mut flags = vec![orientation_word(comp.oriented)];
            if comp.minimal {
                flags.push("minimal");
            }
            if comp.sorted {
                flags.push("sorted");
            }
            let _ = writeln!(
                out,
                "component {}: cycles {} extent [{}, {}] {}",
                comp.id,
                join(&comp.cycles),
                comp.extent.0,
                comp.extent.1,
                flags.join(" ")
            );
        }
        let _ = writeln!(
            out,
            "summary: cycles {} trivial {} components {} simple {}",
            self.cycle_count(),
            self.trivial_cycle_count(),
            self.components.len(),
            self.is_simple()
        );
        out
    }

    /// Structured form of [`dump`](Self::dump) for machine output.
    pub fn to_dump(&self) -> GraphDump {
        GraphDump {
            permutation: self.perm.to_string(),
            doubled: self.doubled.values().to_vec(),
            black_edges: self
                .black
                .iter()
                .map(|b| BlackEdgeDump {
                    index: b.index,
                    values: [b.values.0, b.values.1],
                    oriented: self.black_edge_oriented(b.index),
                })
                .collect(),
            grey_edges: self
                .grey
                .iter()
                .map(|g| GreyEdgeDump {
                    index: g.index,
                    values: [2 * g.index, 2 * g.index + 1],
                    support: [g.support.0, g.support.1],
                    oriented: g.is_oriented(),
                })
                .collect(),
            cycles: self
                .cycles
                .iter()
                .map(|c| CycleDump {
                    id: c.id,
                    black: c.black.clone(),
                    length: c.len(),
                    trivial: c.is_trivial(),
                    oriented: c.oriented,
                })
                .collect(),
            components: self
                .components
                .iter()
                .map(|c| ComponentDump {
                    id: c.id,
                    cycles: c.cycles.clone(),
                    oriented: c.oriented,
                    extent: [c.extent.0, c.extent.1],
                    minimal: c.minimal,
                    sorted: c.sorted,
                })
                .collect(),
            cycle_count: self.cycle_count(),
            trivial_cycle_count: self.trivial_cycle_count(),
            simple: self.is_simple(),
        }
    }
}

fn connected_components(cycles: &[AlternatingCycle], adj: &[Vec<usize>]) -> (Vec<Component>, Vec<usize>) {
    let mut component_of = vec![usize::MAX; cycles.len()];
    let mut members: Vec<Vec<usize>> = Vec::new();
    for start in 0..cycles.len() {
        if component_of[start] != usize::MAX {
            continue;
        }
        let id = members.len();
        let mut stack = vec![start];
        let mut comp = Vec::new();
        component_of[start] = id;
        while let Some(c) = stack.pop() {
            comp.push(c);
            for &d in &adj[c] {
                if component_of[d] == usize::MAX {
                    component_of[d] = id;
                    stack.push(d);
                }
            }
        }
        comp.sort_unstable();
        members.push(comp);
    }

    let supports: Vec<(usize, usize)> = cycles.iter().map(AlternatingCycle::support).collect();
    let components = members
        .into_iter()
        .enumerate()
        .map(|(id, cyc)| {
            let lo = cyc.iter().map(|&c| supports[c].0).min().unwrap_or(0);
            let hi = cyc.iter().map(|&c| supports[c].1).max().unwrap_or(0);
            let minimal = (0..cycles.len())
                .filter(|&c| component_of[c] != id)
                .all(|c| !(lo <= supports[c].0 && supports[c].1 <= hi));
            Component {
                id,
                oriented: cyc.iter().any(|&c| cycles[c].oriented),
                sorted: cyc.iter().all(|&c| cycles[c].is_trivial()),
                extent: (lo, hi),
                minimal,
                cycles: cyc,
            }
        })
        .collect();
    (components, component_of)
}

fn orientation_word(oriented: bool) -> &'static str {
    if oriented {
        "oriented"
    } else {
        "nonoriented"
    }
}

fn join(items: &[usize]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

#[derive(Debug, Clone, Serialize)]
pub struct GraphDump {
    pub permutation: String,
    pub doubled: Vec<usize>,
    pub black_edges: Vec<BlackEdgeDump>,
    pub grey_edges: Vec<GreyEdgeDump>,
    pub cycles: Vec<CycleDump>,
    pub components: Vec<ComponentDump>,
    pub cycle_count: usize,
    pub trivial_cycle_count: usize,
    pub simple: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct BlackEdgeDump {
    pub index: usize,
    pub values: [usize; 2],
    pub oriented: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct GreyEdgeDump {
    pub index: usize,
    pub values: [usize; 2],
    pub support: [usize; 2],
    pub oriented: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CycleDump {
    pub id: usize,
    pub black: Vec<usize>,
    pub length: usize,
    pub trivial: bool,
    pub oriented: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComponentDump {
    pub id: usize,
    pub cycles: Vec<usize>,
    pub oriented: bool,
    pub extent: [usize; 2],
    pub minimal: bool,
    pub sorted: bool,
}
