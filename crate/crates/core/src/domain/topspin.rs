use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use rand::Rng;

use crate::cost::Cost;
use crate::rng;

use super::SearchDomain;

/// Tokens on the ring.
pub const N: usize = 12;
/// Width of the reversal window.
pub const K: usize = 4;
/// Abstract states of a 4-token pattern: `12 * 11 * 10 * 9`.
pub const PDB_SIZE: usize = 11_880;

const MAGIC: &[u8; 8] = b"IBEXPDB1";

/// The three disjoint patterns, as token numbers.
pub const PATTERNS: [[u8; 4]; 3] = [[1, 2, 3, 4], [5, 6, 7, 8], [9, 10, 11, 12]];

/// Position of each pattern token, in pattern order.
type Positions = [u8; 4];

fn rank(p: Positions) -> usize {
    let mut idx = 0;
    for k in 0..4 {
        let smaller = p[..k].iter().filter(|&&q| q < p[k]).count();
        idx = idx * (N - k) + (p[k] as usize - smaller);
    }
    idx
}

fn unrank(mut idx: usize) -> Positions {
    let mut digits = [0usize; 4];
    for k in (0..4).rev() {
        digits[k] = idx % (N - k);
        idx /= N - k;
    }
    let mut p = [0u8; 4];
    for k in 0..4 {
        // the digits[k]-th position not used by p[..k]
        let mut left = digits[k];
        let mut pos = 0u8;
        loop {
            if !p[..k].contains(&pos) {
                if left == 0 {
                    break;
                }
                left -= 1;
            }
            pos += 1;
        }
        p[k] = pos;
    }
    p
}

/// Where `pos` ends up after reversing the window starting at `action`.
fn moved(pos: u8, action: usize) -> u8 {
    let offset = (pos as usize + N - action) % N;
    if offset < K {
        ((action + K - 1 - offset) % N) as u8
    } else {
        pos
    }
}

/// Exact solution costs of the abstraction that only tracks one pattern's
/// tokens.
#[derive(Clone, Debug, PartialEq)]
pub struct PatternDatabase {
    pattern: [u8; 4],
    table: Vec<f64>,
}

impl PatternDatabase {
    /// Cost-ordered search backwards from the abstract goal. Reversals are
    /// their own inverses, so backward and forward edges coincide.
    pub fn build(pattern: [u8; 4], costs: &[u32; N]) -> PatternDatabase {
        let goal: Positions = pattern.map(|t| t - 1);
        let mut dist = vec![u32::MAX; PDB_SIZE];
        let mut queue = BinaryHeap::new();
        dist[rank(goal)] = 0;
        queue.push(Reverse((0u32, rank(goal))));
        while let Some(Reverse((d, idx))) = queue.pop() {
            if d > dist[idx] {
                continue;
            }
            let p = unrank(idx);
            for (a, &c) in costs.iter().enumerate() {
                let next = rank(p.map(|q| moved(q, a)));
                if d + c < dist[next] {
                    dist[next] = d + c;
                    queue.push(Reverse((d + c, next)));
                }
            }
        }
        PatternDatabase { pattern, table: dist.into_iter().map(f64::from).collect() }
    }

    pub fn pattern(&self) -> [u8; 4] {
        self.pattern
    }

    pub fn lookup(&self, state: &TopSpinState) -> Cost {
        let positions = self.pattern.map(|t| state.position_of(t));
        Cost::new(self.table[rank(positions)])
    }

    fn to_bytes(&self, seed: u64) -> Vec<u8> {
        let mut out = Vec::with_capacity(24 + 8 * PDB_SIZE);
        out.extend_from_slice(MAGIC);
        out.extend_from_slice(&seed.to_le_bytes());
        out.extend_from_slice(&self.pattern);
        out.extend_from_slice(&(PDB_SIZE as u32).to_le_bytes());
        for v in &self.table {
            out.extend_from_slice(&v.to_le_bytes());
        }
        out
    }

    /// Reads a cache file, returning `None` if it is for another seed or
    /// pattern or is malformed.
    fn from_bytes(bytes: &[u8], seed: u64, pattern: [u8; 4]) -> Option<PatternDatabase> {
        let body = bytes.strip_prefix(MAGIC)?;
        let (s, body) = body.split_at_checked(8)?;
        let (p, body) = body.split_at_checked(4)?;
        let (n, body) = body.split_at_checked(4)?;
        if u64::from_le_bytes(s.try_into().ok()?) != seed
            || p != pattern
            || u32::from_le_bytes(n.try_into().ok()?) as usize != PDB_SIZE
            || body.len() != 8 * PDB_SIZE
        {
            return None;
        }
        let table = body.chunks_exact(8).map(|c| f64::from_le_bytes(c.try_into().unwrap())).collect();
        Some(PatternDatabase { pattern, table })
    }
}

/// Ring contents, one token (0-based) per nibble.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TopSpinState(u64);

impl TopSpinState {
    pub fn goal() -> TopSpinState {
        TopSpinState((0..N).fold(0, |acc, i| acc | (i as u64) << (4 * i)))
    }

    /// Token (1-based) at `pos`.
    pub fn token(&self, pos: usize) -> u8 {
        ((self.0 >> (4 * pos)) & 0xf) as u8 + 1
    }

    pub fn tokens(&self) -> [u8; N] {
        std::array::from_fn(|i| self.token(i))
    }

    fn position_of(&self, token: u8) -> u8 {
        (0..N).find(|&i| self.token(i) == token).expect("every token is on the ring") as u8
    }

    /// Reverses the window of `K` positions starting at `action`.
    pub fn apply(&self, action: usize) -> TopSpinState {
        let mut v = self.0;
        for j in 0..K / 2 {
            let a = (action + j) % N;
            let b = (action + K - 1 - j) % N;
            let ta = (v >> (4 * a)) & 0xf;
            let tb = (v >> (4 * b)) & 0xf;
            v &= !(0xf << (4 * a)) & !(0xf << (4 * b));
            v |= (tb << (4 * a)) | (ta << (4 * b));
        }
        TopSpinState(v)
    }
}

/// (12, 4)-TopSpin: twelve tokens on a ring and twelve actions, action `i`
/// reversing the four tokens at positions `i..i+4` (mod 12). Each action has
/// an integer cost in `[40, 60]`. The heuristic is the maximum of three
/// pattern databases. Successors are listed in action order.
#[derive(Clone, Debug)]
pub struct TopSpin {
    seed: u64,
    costs: [u32; N],
    start: TopSpinState,
    pdbs: Arc<[PatternDatabase; 3]>,
}

impl TopSpin {
    /// Action costs and a start state `walk` random actions away from the
    /// goal, all drawn from `seed`.
    pub fn from_seed(seed: u64, walk: u32) -> TopSpin {
        let (costs, start) = Self::sample(seed, walk);
        let pdbs = PATTERNS.map(|p| PatternDatabase::build(p, &costs));
        TopSpin { seed, costs, start, pdbs: Arc::new(pdbs) }
    }

    /// Like [`TopSpin::from_seed`], reading the pattern databases from
    /// `dir` when present and writing them there otherwise.
    pub fn with_cache(seed: u64, walk: u32, dir: &Path) -> io::Result<TopSpin> {
        let (costs, start) = Self::sample(seed, walk);
        fs::create_dir_all(dir)?;
        let mut pdbs = Vec::with_capacity(3);
        for pattern in PATTERNS {
            let path = cache_path(dir, seed, pattern);
            let cached = fs::read(&path).ok().and_then(|b| PatternDatabase::from_bytes(&b, seed, pattern));
            let pdb = match cached {
                Some(pdb) => pdb,
                None => {
                    let pdb = PatternDatabase::build(pattern, &costs);
                    fs::write(&path, pdb.to_bytes(seed))?;
                    pdb
                }
            };
            pdbs.push(pdb);
        }
        let pdbs: [PatternDatabase; 3] = pdbs.try_into().expect("three patterns");
        Ok(TopSpin { seed, costs, start, pdbs: Arc::new(pdbs) })
    }

    fn sample(seed: u64, walk: u32) -> ([u32; N], TopSpinState) {
        let mut r = rng::rng(seed);
        let costs = std::array::from_fn(|_| r.random_range(40..=60));
        let mut start = TopSpinState::goal();
        for _ in 0..walk {
            start = start.apply(r.random_range(0..N));
        }
        (costs, start)
    }

    /// The same instance started from another state.
    pub fn with_start(&self, start: TopSpinState) -> TopSpin {
        TopSpin { start, ..self.clone() }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn costs(&self) -> &[u32; N] {
        &self.costs
    }

    pub fn pdbs(&self) -> &[PatternDatabase; 3] {
        &self.pdbs
    }
}

fn cache_path(dir: &Path, seed: u64, pattern: [u8; 4]) -> PathBuf {
    let p: Vec<String> = pattern.iter().map(u8::to_string).collect();
    dir.join(format!("topspin-{seed:016x}-{}.pdb", p.join("-")))
}

impl SearchDomain for TopSpin {
    type State = TopSpinState;

    fn initial_state(&self) -> TopSpinState {
        self.start
    }

    fn successors(&self, s: &TopSpinState, mut emit: impl FnMut(TopSpinState, Cost)) {
        for (a, &c) in self.costs.iter().enumerate() {
            emit(s.apply(a), Cost::from(c));
        }
    }

    fn heuristic(&self, s: &TopSpinState) -> Cost {
        self.pdbs.iter().map(|p| p.lookup(s)).max().expect("three databases")
    }

    fn is_goal(&self, s: &TopSpinState) -> bool {
        *s == TopSpinState::goal()
    }
}
