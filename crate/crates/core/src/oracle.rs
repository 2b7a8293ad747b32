//! Exhaustive breadth-first search over small permutation groups.
//!
//! States are packed densely: the lexicographic rank of the absolute values
//! times `2ⁿ`, plus a sign mask whose most significant bit belongs to
//! position 1. Encoding order is therefore lexicographic on the absolute
//! values first and on the signs (`+` before `−`) second.
//!
//! # Table file layout
//!
//! | offset | size | field                                              |
//! |--------|------|----------------------------------------------------|
//! | 0      | 4    | magic `BPOT`                                       |
//! | 4      | 1    | format version, `1`                                |
//! | 5      | 1    | `n`                                                |
//! | 6      | 1    | generator tag: `0` signed flips, `1` prefix swaps  |
//! | 7      | 1    | reserved, `0`                                      |
//! | 8      | 8    | state count, little-endian `u64`                   |
//! | 16     | count| one distance byte per state, in encoding order     |

use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::BreakpointGraph;
use crate::perm::SignedPermutation;

pub const DEFAULT_SIGNED_CAP: usize = 7;
pub const DEFAULT_UNSIGNED_CAP: usize = 8;
/// Hard ceiling regardless of configuration; distances are stored as bytes
/// and states must index a `usize` table.
pub const HARD_CAP: usize = 10;

const MAGIC: &[u8; 4] = b"BPOT";
const FORMAT_VERSION: u8 = 1;
const UNSEEN: u8 = u8::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Generators {
    /// Prefix flips of every length over signed permutations.
    PrefixSignedReversals,
    /// Swaps of position 1 with every other position over unsigned permutations.
    PrefixExchanges,
}

impl Generators {
    pub fn default_cap(self) -> usize {
        match self {
            Generators::PrefixSignedReversals => DEFAULT_SIGNED_CAP,
            Generators::PrefixExchanges => DEFAULT_UNSIGNED_CAP,
        }
    }

    pub fn is_signed(self) -> bool {
        self == Generators::PrefixSignedReversals
    }

    fn tag(self) -> u8 {
        match self {
            Generators::PrefixSignedReversals => 0,
            Generators::PrefixExchanges => 1,
        }
    }

    fn from_tag(tag: u8) -> Result<Self> {
        match tag {
            0 => Ok(Generators::PrefixSignedReversals),
            1 => Ok(Generators::PrefixExchanges),
            t => Err(Error::Table(format!("unknown generator tag {t}"))),
        }
    }
}

impl fmt::Display for Generators {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Generators::PrefixSignedReversals => "prefix-signed-reversals",
            Generators::PrefixExchanges => "prefix-exchanges",
        })
    }
}

impl FromStr for Generators {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "prefix-signed-reversals" | "signed" => Ok(Generators::PrefixSignedReversals),
            "prefix-exchanges" | "unsigned" => Ok(Generators::PrefixExchanges),
            other => Err(Error::Precondition(format!("unknown generator set `{other}`"))),
        }
    }
}

/// Dense bijection between the states of a group and `0..size()`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StateCodec {
    n: usize,
    signed: bool,
}

impl StateCodec {
    pub fn new(n: usize, signed: bool) -> Self {
        StateCodec { n, signed }
    }

    pub fn size(&self) -> usize {
        let fact: usize = (1..=self.n).product();
        if self.signed {
            fact << self.n
        } else {
            fact
        }
    }

    pub fn encode(&self, entries: &[i32]) -> usize {
        debug_assert_eq!(entries.len(), self.n);
        let n = self.n;
        let mut rank = 0;
        let mut used = 0u32;
        for (i, &e) in entries.iter().enumerate() {
            let v = e.unsigned_abs() - 1;
            let smaller_unused = v - (used & ((1 << v) - 1)).count_ones();
            rank = rank * (n - i) + smaller_unused as usize;
            used |= 1 << v;
        }
        if !self.signed {
            return rank;
        }
        let mask = entries.iter().fold(0usize, |m, &e| (m << 1) | usize::from(e < 0));
        (rank << n) | mask
    }

    pub fn decode(&self, code: usize) -> Vec<i32> {
        let n = self.n;
        let (mut rank, mask) = if self.signed { (code >> n, code & ((1 << n) - 1)) } else { (code, 0) };
        let mut digits = vec![0usize; n];
        for i in (0..n).rev() {
            let base = n - i;
            digits[i] = rank % base;
            rank /= base;
        }
        let mut unused: Vec<i32> = (1..=n as i32).collect();
        digits
            .into_iter()
            .enumerate()
            .map(|(i, d)| {
                let v = unused.remove(d);
                if mask >> (n - 1 - i) & 1 == 1 {
                    -v
                } else {
                    v
                }
            })
            .collect()
    }
}

/// Exact distance to the identity for every state of a small group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleTable {
    n: usize,
    generators: Generators,
    distances: Vec<u8>,
    max_distance: u8,
}

impl OracleTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> Generators {
        self.generators
    }

    pub fn codec(&self) -> StateCodec {
        StateCodec::new(self.n, self.generators.is_signed())
    }

    pub fn len(&self) -> usize {
        self.distances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.distances.is_empty()
    }

    pub fn max_distance(&self) -> u8 {
        self.max_distance
    }

    /// Distances in encoding order.
    pub fn distances(&self) -> &[u8] {
        &self.distances
    }

    /// Number of states at each distance from the identity.
    pub fn layer_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.max_distance as usize + 1];
        for &d in &self.distances {
            sizes[d as usize] += 1;
        }
        sizes
    }

    pub fn distance(&self, pi: &SignedPermutation) -> Result<u8> {
        if pi.len() != self.n {
            return Err(Error::Precondition(format!("table is for n = {}, got n = {}", self.n, pi.len())));
        }
        if !self.generators.is_signed() && !pi.is_unsigned() {
            return Err(Error::Signed(*pi.entries().iter().find(|&&e| e < 0).expect("has a negative entry")));
        }
        Ok(self.distances[self.codec().encode(pi.entries())])
    }

    /// Every state with its distance, in encoding order.
    pub fn iter(&self) -> impl Iterator<Item = (SignedPermutation, u8)> + '_ {
        let codec = self.codec();
        self.distances
            .iter()
            .enumerate()
            .map(move |(code, &d)| (SignedPermutation::from_entries_unchecked(codec.decode(code)), d))
    }

    pub fn write_to<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        w.write_all(MAGIC)?;
        w.write_all(&[FORMAT_VERSION, self.n as u8, self.generators.tag(), 0])?;
        w.write_all(&(self.distances.len() as u64).to_le_bytes())?;
        w.write_all(&self.distances)?;
        w.flush()
    }

    pub fn read_from<R: Read>(mut r: R) -> Result<Self> {
        let io = |e: std::io::Error| Error::Table(e.to_string());
        let mut header = [0u8; 16];
        r.read_exact(&mut header).map_err(io)?;
        if &header[..4] != MAGIC {
            return Err(Error::Table("bad magic bytes".into()));
        }
        if header[4] != FORMAT_VERSION {
            return Err(Error::Table(format!("unsupported format version {}", header[4])));
        }
        let n = header[5] as usize;
        if n == 0 || n > HARD_CAP {
            return Err(Error::Table(format!("n = {n} outside 1..={HARD_CAP}")));
        }
        let generators = Generators::from_tag(header[6])?;
        let count = u64::from_le_bytes(header[8..16].try_into().expect("8 bytes")) as usize;
        let expected = StateCodec::new(n, generators.is_signed()).size();
        if count != expected {
            return Err(Error::Table(format!("state count {count}, expected {expected}")));
        }
        let mut distances = vec![0u8; count];
        r.read_exact(&mut distances).map_err(io)?;
        if distances.contains(&UNSEEN) {
            return Err(Error::Table("table has unreached states".into()));
        }
        let max_distance = distances.iter().copied().max().unwrap_or(0);
        Ok(OracleTable { n, generators, distances, max_distance })
    }
}

fn neighbours(codec: StateCodec, generators: Generators, code: usize) -> impl Iterator<Item = usize> {
    let entries = codec.decode(code);
    let n = entries.len();
    let ks = match generators {
        Generators::PrefixSignedReversals => 1..=n,
        Generators::PrefixExchanges => 2..=n,
    };
    ks.map(move |k| {
        let mut next = entries.clone();
        match generators {
            Generators::PrefixSignedReversals => {
                next[..k].reverse();
                next[..k].iter_mut().for_each(|e| *e = -*e);
            }
            Generators::PrefixExchanges => next.swap(0, k - 1),
        }
        codec.encode(&next)
    })
}

/// Builds the table with the default cap for `generators`.
pub fn build_oracle(n: usize, generators: Generators) -> Result<OracleTable> {
    build_oracle_with_cap(n, generators, generators.default_cap())
}

/// Layered BFS from the identity. Frontier expansion runs in parallel; the
/// table depends only on layer membership, so it matches a serial run.
pub fn build_oracle_with_cap(n: usize, generators: Generators, cap: usize) -> Result<OracleTable> {
    let cap = cap.min(HARD_CAP);
    if n > cap {
        return Err(Error::OverCap { n, cap });
    }
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    let codec = StateCodec::new(n, generators.is_signed());
    let mut distances = vec![UNSEEN; codec.size()];
    let start = codec.encode(SignedPermutation::identity(n).entries());
    distances[start] = 0;
    let mut frontier = vec![start];
    let mut depth: u8 = 0;
    while !frontier.is_empty() {
        let reached: Vec<usize> = frontier
            .par_iter()
            .flat_map_iter(|&code| neighbours(codec, generators, code))
            .collect();
        let next_depth = depth
            .checked_add(1)
            .filter(|&d| d < UNSEEN)
            .ok_or_else(|| Error::Internal("distance exceeds one byte".into()))?;
        let mut next = Vec::new();
        for code in reached {
            if distances[code] == UNSEEN {
                distances[code] = next_depth;
                next.push(code);
            }
        }
        if next.is_empty() {
            break;
        }
        next.sort_unstable();
        frontier = next;
        depth = next_depth;
    }
    if distances.contains(&UNSEEN) {
        return Err(Error::Internal(format!("BFS for n = {n} left states unreached")));
    }
    Ok(OracleTable { n, generators, distances, max_distance: depth })
}

pub const DEFAULT_SIMPLE_CAP: usize = DEFAULT_SIGNED_CAP;

/// Every simple signed permutation of length `n`, in encoding order.
pub fn enumerate_simple(n: usize) -> Result<impl Iterator<Item = SignedPermutation>> {
    enumerate_simple_with_cap(n, DEFAULT_SIMPLE_CAP)
}

pub fn enumerate_simple_with_cap(n: usize, cap: usize) -> Result<impl Iterator<Item = SignedPermutation>> {
    let cap = cap.min(HARD_CAP);
    if n > cap {
        return Err(Error::OverCap { n, cap });
    }
    let codec = StateCodec::new(n, true);
    let size = if n == 0 { 0 } else { codec.size() };
    Ok((0..size)
        .map(move |code| SignedPermutation::from_entries_unchecked(codec.decode(code)))
        .filter(|pi| BreakpointGraph::new(pi).is_simple()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> SignedPermutation {
        s.parse().unwrap()
    }

    #[test]
    fn single_element_table() {
        let t = build_oracle(1, Generators::PrefixSignedReversals).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t.distance(&p("1")).unwrap(), 0);
        assert_eq!(t.distance(&p("-1")).unwrap(), 1);
        assert_eq!(t.max_distance(), 1);
    }

    #[test]
    fn counter_example_distances() {
        let t2 = build_oracle(2, Generators::PrefixSignedReversals).unwrap();
        assert_eq!(t2.distance(&p("2 1")).unwrap(), 3);
        let t3 = build_oracle(3, Generators::PrefixSignedReversals).unwrap();
        assert_eq!(t3.distance(&p("3 2 1")).unwrap(), 5);
        assert_eq!(t3.len(), 48);
    }

    #[test]
    fn over_cap_is_rejected() {
        assert_eq!(
            build_oracle(8, Generators::PrefixSignedReversals),
            Err(Error::OverCap { n: 8, cap: 7 })
        );
        assert!(build_oracle(9, Generators::PrefixExchanges).is_err());
        assert!(enumerate_simple(20).is_err());
    }

    #[test]
    fn codec_is_a_bijection() {
        for n in 1..=5 {
            for signed in [false, true] {
                let codec = StateCodec::new(n, signed);
                let mut seen = std::collections::HashSet::new();
                for code in 0..codec.size() {
                    let entries = codec.decode(code);
                    let pi = SignedPermutation::from_entries(entries.clone()).unwrap();
                    assert!(signed || pi.is_unsigned());
                    assert_eq!(codec.encode(&entries), code);
                    assert!(seen.insert(entries));
                }
            }
        }
    }

    #[test]
    fn encoding_order_is_lexicographic() {
        let codec = StateCodec::new(3, true);
        let key = |e: &[i32]| e.iter().map(|&v| v.abs()).chain(e.iter().map(|&v| i32::from(v < 0))).collect::<Vec<_>>();
        let keys: Vec<Vec<i32>> = (0..codec.size()).map(|c| key(&codec.decode(c))).collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn simple_enumeration_examples() {
        let one: Vec<String> = enumerate_simple(1).unwrap().map(|p| p.to_string()).collect();
        assert_eq!(one, vec!["1", "-1"]);
        assert!(enumerate_simple(3).unwrap().any(|q| q == p("3 2 1")));
        assert!(!enumerate_simple(2).unwrap().any(|q| q == p("2 1")));
    }

    #[test]
    fn table_file_round_trip() {
        let t = build_oracle(3, Generators::PrefixSignedReversals).unwrap();
        let mut bytes = Vec::new();
        t.write_to(&mut bytes).unwrap();
        assert_eq!(&bytes[..8], &[b'B', b'P', b'O', b'T', 1, 3, 0, 0]);
        assert_eq!(u64::from_le_bytes(bytes[8..16].try_into().unwrap()), 48);
        assert_eq!(bytes.len(), 16 + 48);
        assert_eq!(OracleTable::read_from(&bytes[..]).unwrap(), t);

        let mut bad = bytes.clone();
        bad[0] = b'X';
        assert!(OracleTable::read_from(&bad[..]).is_err());
        assert!(OracleTable::read_from(&bytes[..20]).is_err());
    }

    #[test]
    fn parallel_layers_match_serial_bfs() {
        // Plain queue BFS as an independent reference.
        for generators in [Generators::PrefixSignedReversals, Generators::PrefixExchanges] {
            let n = 4;
            let t = build_oracle(n, generators).unwrap();
            let codec = t.codec();
            let mut dist = vec![u8::MAX; codec.size()];
            let start = codec.encode(SignedPermutation::identity(n).entries());
            dist[start] = 0;
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for v in neighbours(codec, generators, u) {
                    if dist[v] == u8::MAX {
                        dist[v] = dist[u] + 1;
                        queue.push_back(v);
                    }
                }
            }
            assert_eq!(t.distances(), &dist[..]);
        }
    }
}
