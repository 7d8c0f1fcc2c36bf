use rand::Rng;
use thiserror::Error;

use crate::cost::Cost;
use crate::rng;

use super::SearchDomain;

pub const SIDE: usize = 4;
pub const CELLS: usize = SIDE * SIDE;

/// The bundled 100-instance corpus, one instance per line, blank as 0.
pub const KORF_100: &str = include_str!("../../data/korf100.txt");

/// Fixed-point denominator for the real cost model: every tile price
/// `1 + 1/(t+1)` is an integer multiple of `1/720720`.
const SCALE: u32 = 720_720;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CostModel {
    /// Every move costs 1.
    Unit,
    /// Moving tile `t` costs `1 + 1/(t+1)`.
    Real,
}

#[derive(Debug, Error, PartialEq)]
pub enum PuzzleError {
    #[error("tiles are not a permutation of 0..16")]
    NotPermutation,
    #[error("instance is not solvable")]
    Unsolvable,
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

/// Tile at each cell packed into nibbles, the blank's cell, and the cached
/// heuristic (in moves for unit costs, in units of `1/720720` for real costs).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PuzzleState {
    tiles: u64,
    blank: u8,
    h: u32,
}

impl PuzzleState {
    pub fn tile(&self, cell: usize) -> u8 {
        ((self.tiles >> (4 * cell)) & 0xf) as u8
    }

    pub fn blank(&self) -> usize {
        self.blank as usize
    }

    pub fn tiles(&self) -> [u8; CELLS] {
        std::array::from_fn(|i| self.tile(i))
    }
}

/// The 15-puzzle with the (weighted) Manhattan distance heuristic.
///
/// The goal has the blank in the top-left corner and tile `t` in cell `t`.
/// Successors move the blank up, left, right, down, in that order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Puzzle {
    start: PuzzleState,
    model: CostModel,
}

fn manhattan(tile: u8, cell: usize) -> u32 {
    let goal = tile as usize;
    ((goal / SIDE).abs_diff(cell / SIDE) + (goal % SIDE).abs_diff(cell % SIDE)) as u32
}

fn weight(model: CostModel, tile: u8) -> u32 {
    match model {
        CostModel::Unit => 1,
        CostModel::Real => SCALE / (u32::from(tile) + 1) * (u32::from(tile) + 2),
    }
}

impl Puzzle {
    pub fn new(tiles: [u8; CELLS], model: CostModel) -> Result<Puzzle, PuzzleError> {
        let mut seen = [false; CELLS];
        for &t in &tiles {
            if t as usize >= CELLS || seen[t as usize] {
                return Err(PuzzleError::NotPermutation);
            }
            seen[t as usize] = true;
        }
        let blank = tiles.iter().position(|&t| t == 0).expect("permutation contains 0");
        if permutation_parity(&tiles) != (blank / SIDE + blank % SIDE) % 2 {
            return Err(PuzzleError::Unsolvable);
        }
        let mut packed = 0u64;
        let mut h = 0u32;
        for (cell, &t) in tiles.iter().enumerate() {
            packed |= u64::from(t) << (4 * cell);
            if t != 0 {
                h += manhattan(t, cell) * weight(model, t);
            }
        }
        Ok(Puzzle { start: PuzzleState { tiles: packed, blank: blank as u8, h }, model })
    }

    pub fn goal(model: CostModel) -> Puzzle {
        Puzzle::new(std::array::from_fn(|i| i as u8), model).expect("goal is solvable")
    }

    /// A random walk of `moves` moves from the goal.
    pub fn scrambled(seed: u64, moves: u32, model: CostModel) -> Puzzle {
        let mut r = rng::rng(seed);
        let mut p = Puzzle::goal(model);
        for _ in 0..moves {
            let mut next = Vec::new();
            p.successors(&p.start, |s, _| next.push(s));
            p.start = next[r.random_range(0..next.len())];
        }
        p
    }

    pub fn model(&self) -> CostModel {
        self.model
    }

    pub fn tiles(&self) -> [u8; CELLS] {
        self.start.tiles()
    }

    pub fn move_cost(&self, tile: u8) -> Cost {
        match self.model {
            CostModel::Unit => Cost::ONE,
            CostModel::Real => Cost::new(1.0 + 1.0 / (f64::from(tile) + 1.0)),
        }
    }
}

/// 0 for even permutations, 1 for odd.
fn permutation_parity(tiles: &[u8; CELLS]) -> usize {
    let mut seen = [false; CELLS];
    let mut transpositions = 0;
    for i in 0..CELLS {
        let mut len = 0;
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            j = tiles[j] as usize;
            len += 1;
        }
        if len > 0 {
            transpositions += len - 1;
        }
    }
    transpositions % 2
}

impl SearchDomain for Puzzle {
    type State = PuzzleState;

    fn initial_state(&self) -> PuzzleState {
        self.start
    }

    fn successors(&self, s: &PuzzleState, mut emit: impl FnMut(PuzzleState, Cost)) {
        let b = s.blank as usize;
        let (row, col) = (b / SIDE, b % SIDE);
        let targets = [
            (row > 0).then(|| b - SIDE),
            (col > 0).then(|| b - 1),
            (col + 1 < SIDE).then(|| b + 1),
            (row + 1 < SIDE).then(|| b + SIDE),
        ];
        for to in targets.into_iter().flatten() {
            let t = s.tile(to);
            let w = weight(self.model, t);
            let h = s.h + manhattan(t, b) * w - manhattan(t, to) * w;
            let tiles = s.tiles & !(0xf << (4 * to)) | (u64::from(t) << (4 * b));
            emit(PuzzleState { tiles, blank: to as u8, h }, self.move_cost(t));
        }
    }

    fn heuristic(&self, s: &PuzzleState) -> Cost {
        match self.model {
            CostModel::Unit => Cost::from(s.h),
            CostModel::Real => Cost::new(f64::from(s.h) / f64::from(SCALE)),
        }
    }

    fn is_goal(&self, s: &PuzzleState) -> bool {
        s.h == 0
    }
}

/// Parses one instance per line; blank lines and `#` comments are skipped.
pub fn parse_instances(text: &str) -> Result<Vec<[u8; CELLS]>, PuzzleError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parse_err = |reason: String| PuzzleError::Parse { line: i + 1, reason };
        let nums: Vec<u8> = line
            .split_whitespace()
            .map(|w| w.parse::<u8>().map_err(|e| parse_err(format!("{w:?}: {e}"))))
            .collect::<Result<_, _>>()?;
        let tiles: [u8; CELLS] = nums
            .try_into()
            .map_err(|v: Vec<u8>| parse_err(format!("expected {CELLS} numbers, found {}", v.len())))?;
        out.push(tiles);
    }
    Ok(out)
}

/// The bundled corpus.
pub fn korf_instances() -> Vec<[u8; CELLS]> {
    parse_instances(KORF_100).expect("bundled corpus parses")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::successor_list;

    #[test]
    fn goal_has_zero_heuristic() {
        let p = Puzzle::goal(CostModel::Real);
        assert_eq!(p.heuristic(&p.initial_state()), Cost::ZERO);
        assert!(p.is_goal(&p.initial_state()));
    }

    #[test]
    fn one_move_from_goal() {
        let mut tiles: [u8; CELLS] = std::array::from_fn(|i| i as u8);
        tiles.swap(0, 1);
        let p = Puzzle::new(tiles, CostModel::Real).unwrap();
        assert_eq!(p.heuristic(&p.initial_state()), Cost::new(1.5));
        let succ = successor_list(&p, &p.initial_state());
        let (goal, cost) = succ.iter().find(|(s, _)| p.is_goal(s)).unwrap();
        assert_eq!(*cost, Cost::new(1.5));
        assert_eq!(goal.tiles(), std::array::from_fn(|i| i as u8));
    }

    #[test]
    fn rejects_unsolvable_and_malformed() {
        let mut tiles: [u8; CELLS] = std::array::from_fn(|i| i as u8);
        tiles.swap(1, 2);
        assert_eq!(Puzzle::new(tiles, CostModel::Unit), Err(PuzzleError::Unsolvable));
        tiles[1] = 1;
        assert_eq!(Puzzle::new(tiles, CostModel::Unit), Err(PuzzleError::NotPermutation));
        assert!(matches!(parse_instances("1 2 3\n"), Err(PuzzleError::Parse { line: 1, .. })));
    }

    #[test]
    fn cached_heuristic_matches_recomputation() {
        for model in [CostModel::Unit, CostModel::Real] {
            let p = Puzzle::scrambled(11, 40, model);
            for (s, _) in successor_list(&p, &p.initial_state()) {
                let fresh = Puzzle::new(s.tiles(), model).unwrap();
                assert_eq!(p.heuristic(&s), fresh.heuristic(&fresh.initial_state()));
            }
        }
    }

    #[test]
    fn corpus_is_solvable() {
        let instances = korf_instances();
        assert_eq!(instances.len(), 100);
        for tiles in instances {
            Puzzle::new(tiles, CostModel::Unit).unwrap();
        }
    }
}
