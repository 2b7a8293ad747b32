//! Signed permutations and the elementary operations on them.
//!
//! Positions are 1-based at the API surface. A permutation of length `n`
//! holds each of `1..=n` exactly once, each carrying a sign.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// An arrangement of `±1..±n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPermutation {
    entries: Vec<i32>,
}

impl SignedPermutation {
    /// The identity `⟨1 2 … n⟩`.
    pub fn identity(n: usize) -> Self {
        SignedPermutation { entries: (1..=n as i32).collect() }
    }

    /// Validates `entries` as a signed permutation of `1..=entries.len()`.
    pub fn from_entries(entries: Vec<i32>) -> Result<Self> {
        validate(entries.iter().map(|&e| (i64::from(e), e.to_string())))?;
        Ok(SignedPermutation { entries })
    }

    pub(crate) fn from_entries_unchecked(entries: Vec<i32>) -> Self {
        debug_assert!(SignedPermutation::from_entries(entries.clone()).is_ok());
        SignedPermutation { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Always false for a constructed permutation; present for API symmetry.
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[i32] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<i32> {
        self.entries
    }

    /// The entry at 1-based position `pos`, with the conventions `π₀ = 0`
    /// and `πₙ₊₁ = n + 1` for the two sentinels.
    pub fn framed(&self, pos: usize) -> i32 {
        if pos == 0 {
            0
        } else if pos == self.len() + 1 {
            self.len() as i32 + 1
        } else {
            self.entries[pos - 1]
        }
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().enumerate().all(|(i, &e)| e == i as i32 + 1)
    }

    /// True when no entry is negative, i.e. this is a classical permutation.
    pub fn is_unsigned(&self) -> bool {
        self.entries.iter().all(|&e| e > 0)
    }

    /// True when `π₁ = 1` (positive one in front).
    pub fn fixes_one(&self) -> bool {
        self.entries[0] == 1
    }

    /// Reverses the first `k` entries and inverts their signs.
    pub fn apply_prefix_flip(&self, k: usize) -> Result<Self> {
        let mut out = self.clone();
        out.prefix_flip_in_place(k)?;
        Ok(out)
    }

    pub fn prefix_flip_in_place(&mut self, k: usize) -> Result<()> {
        if k == 0 || k > self.len() {
            return Err(Error::FlipOutOfRange { k, n: self.len() });
        }
        flip_segment(&mut self.entries[..k]);
        Ok(())
    }

    /// Applies the signed reversal on positions `i..=j` (1-based).
    pub fn apply_signed_reversal(&self, i: usize, j: usize) -> Result<Self> {
        if i == 0 || i > j || j > self.len() {
            return Err(Error::ReversalOutOfRange { i, j, n: self.len() });
        }
        let mut out = self.clone();
        flip_segment(&mut out.entries[i - 1..j]);
        Ok(out)
    }

    /// Swaps the entries at positions `i < j` (1-based).
    pub fn apply_exchange(&self, i: usize, j: usize) -> Result<Self> {
        if i == 0 || i >= j || j > self.len() {
            return Err(Error::ExchangeOutOfRange { i, j, n: self.len() });
        }
        let mut out = self.clone();
        out.entries.swap(i - 1, j - 1);
        Ok(out)
    }

    /// The prefix exchange `ε(1, j)`.
    pub fn apply_prefix_exchange(&self, j: usize) -> Result<Self> {
        self.apply_exchange(1, j)
    }

    /// `(π ∘ σ)ᵢ = π_{σᵢ}`, reading `π₋ₖ` as `−πₖ`.
    pub fn compose(&self, sigma: &SignedPermutation) -> Result<Self> {
        if self.len() != sigma.len() {
            return Err(Error::Precondition(format!(
                "cannot compose permutations of lengths {} and {}",
                self.len(),
                sigma.len()
            )));
        }
        let entries = sigma
            .entries
            .iter()
            .map(|&s| {
                let v = self.entries[s.unsigned_abs() as usize - 1];
                if s < 0 {
                    -v
                } else {
                    v
                }
            })
            .collect();
        Ok(SignedPermutation { entries })
    }

    /// The unique `σ` with `σ ∘ π = ι`.
    pub fn inverse(&self) -> Self {
        let mut entries = vec![0; self.len()];
        for (i, &e) in self.entries.iter().enumerate() {
            let pos = i as i32 + 1;
            entries[e.unsigned_abs() as usize - 1] = if e < 0 { -pos } else { pos };
        }
        SignedPermutation { entries }
    }

    /// Disjoint cycles of the functional graph `i → πᵢ`, each led by its
    /// minimum and sorted by leader. Fixed points appear as 1-cycles.
    pub fn graph_cycles(&self) -> Result<Vec<Vec<usize>>> {
        if let Some(&neg) = self.entries.iter().find(|&&e| e < 0) {
            return Err(Error::Signed(neg));
        }
        let n = self.len();
        let mut seen = vec![false; n + 1];
        let mut cycles = Vec::new();
        for start in 1..=n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                cycle.push(cur);
                cur = self.entries[cur - 1] as usize;
            }
            cycles.push(cycle);
        }
        Ok(cycles)
    }

    /// Maps `πᵢ > 0` to `(2πᵢ−1, 2πᵢ)` and `πᵢ < 0` to `(2|πᵢ|, 2|πᵢ|−1)`,
    /// framed by `0` and `2n+1`.
    pub fn double(&self) -> DoubledPermutation {
        let n = self.len();
        let mut values = Vec::with_capacity(2 * n + 2);
        values.push(0);
        for &e in &self.entries {
            let a = 2 * e.unsigned_abs() as usize;
            if e > 0 {
                values.extend([a - 1, a]);
            } else {
                values.extend([a, a - 1]);
            }
        }
        values.push(2 * n + 1);
        DoubledPermutation { values }
    }
}

fn flip_segment(segment: &mut [i32]) {
    segment.reverse();
    for e in segment.iter_mut() {
        *e = -*e;
    }
}

fn validate<I>(tokens: I) -> Result<()>
where
    I: IntoIterator<Item = (i64, String)>,
{
    let tokens: Vec<(i64, String)> = tokens.into_iter().collect();
    if tokens.is_empty() {
        return Err(Error::Empty);
    }
    let n = tokens.len();
    let mut seen = HashSet::with_capacity(n);
    for (value, token) in &tokens {
        if *value == 0 {
            return Err(Error::ZeroEntry(token.clone()));
        }
        if !seen.insert(value.unsigned_abs()) {
            return Err(Error::Duplicate(token.clone()));
        }
    }
    if let Some((_, token)) = tokens.iter().find(|(v, _)| v.unsigned_abs() > n as u64) {
        let missing = (1..=n as u64).find(|v| !seen.contains(v)).unwrap_or(0);
        return Err(Error::Gap { token: token.clone(), n, missing: missing as usize });
    }
    Ok(())
}

/// Parses whitespace-separated signed integers; a leading `+` is accepted.
pub fn parse_permutation(text: &str) -> Result<SignedPermutation> {
    let mut parsed = Vec::new();
    for token in text.split_whitespace() {
        let value: i64 = token.parse().map_err(|_| Error::InvalidToken(token.to_string()))?;
        if value.unsigned_abs() > i32::MAX as u64 {
            return Err(Error::InvalidToken(token.to_string()));
        }
        parsed.push((value, token.to_string()));
    }
    validate(parsed.iter().cloned())?;
    Ok(SignedPermutation { entries: parsed.into_iter().map(|(v, _)| v as i32).collect() })
}

impl FromStr for SignedPermutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_permutation(s)
    }
}

impl Serialize for SignedPermutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

/// Ordered prefix flip lengths; a sorting certificate when folded over a
/// source permutation yields the identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize)]
pub struct FlipSequence(Vec<usize>);

impl FlipSequence {
    pub fn new() -> Self {
        FlipSequence(Vec::new())
    }

    pub fn lengths(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, k: usize) {
        self.0.push(k);
    }

    pub fn extend_from(&mut self, other: &FlipSequence) {
        self.0.extend_from_slice(&other.0);
    }

    /// Folds the flips over `pi`, left to right.
    pub fn apply(&self, pi: &SignedPermutation) -> Result<SignedPermutation> {
        let mut cur = pi.clone();
        for &k in &self.0 {
            cur.prefix_flip_in_place(k)?;
        }
        Ok(cur)
    }
}

impl From<Vec<usize>> for FlipSequence {
    fn from(v: Vec<usize>) -> Self {
        FlipSequence(v)
    }
}

impl fmt::Display for FlipSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{k}")?;
        }
        Ok(())
    }
}

/// Prefix flips reproducing the signed reversal on positions `i..=j` of a
/// permutation of length `n`: `[j]` when `i = 1`, otherwise `[j, j−i+1, j]`.
pub fn mimic_as_prefix_flips(i: usize, j: usize, n: usize) -> Result<FlipSequence> {
    if i == 0 || i > j || j > n {
        return Err(Error::ReversalOutOfRange { i, j, n });
    }
    if i == 1 {
        Ok(FlipSequence(vec![j]))
    } else {
        Ok(FlipSequence(vec![j, j - i + 1, j]))
    }
}

/// The unsigned permutation `π′` of length `2n + 2` including both sentinels.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DoubledPermutation {
    values: Vec<usize>,
}

impl DoubledPermutation {
    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// Length `n` of the underlying signed permutation.
    pub fn n(&self) -> usize {
        self.values.len() / 2 - 1
    }

    /// `pos[v]` is the index of value `v` in the doubled sequence.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.values.len()];
        for (i, &v) in self.values.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }

    /// Recovers the signed permutation this sequence was doubled from.
    pub fn to_permutation(&self) -> Result<SignedPermutation> {
        let n = self.n();
        let corrupt = || Error::Precondition(format!("not a doubled permutation: {:?}", self.values));
        if self.values.len() != 2 * n + 2 || self.values[0] != 0 || self.values[2 * n + 1] != 2 * n + 1 {
            return Err(corrupt());
        }
        let mut entries = Vec::with_capacity(n);
        for i in 1..=n {
            let (a, b) = (self.values[2 * i - 1], self.values[2 * i]);
            let e = if b == a + 1 && b % 2 == 0 {
                (b / 2) as i32
            } else if a == b + 1 && a % 2 == 0 {
                -((a / 2) as i32)
            } else {
                return Err(corrupt());
            };
            entries.push(e);
        }
        SignedPermutation::from_entries(entries)
    }
}

impl fmt::Display for DoubledPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}
