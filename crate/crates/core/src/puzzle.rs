// Copyright 2026 The qtree Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! The 3×3 sliding-tile puzzle: boards, the misplaced-tile and Euclidean
//! heuristics, and exhaustive enumeration of a solvability class.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::classical::SearchProblem;
use crate::stats::{DistributionKind, EmpiricalDistribution};
use crate::{Error, Result};

pub const SIDE: usize = 3;
pub const CELLS: usize = SIDE * SIDE;
/// Boards in one solvability class, `9!/2`.
pub const CLASS_SIZE: usize = 181_440;

/// Row-major 3×3 board; 0 is the blank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PuzzleBoard {
    tiles: [u8; CELLS],
}

/// Direction the blank moves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Move {
    Up,
    Down,
    Left,
    Right,
}

impl Move {
    pub const ALL: [Move; 4] = [Move::Up, Move::Down, Move::Left, Move::Right];
}

impl PuzzleBoard {
    pub fn new(tiles: [u8; CELLS]) -> Result<Self> {
        let mut seen = [false; CELLS];
        for &t in &tiles {
            let t = t as usize;
            if t >= CELLS || seen[t] {
                return Err(Error::Domain(format!(
                    "{tiles:?} is not a permutation of 0..9"
                )));
            }
            seen[t] = true;
        }
        Ok(Self { tiles })
    }

    /// `1 2 3 / 4 5 6 / 7 8 _`.
    pub fn solved() -> Self {
        Self {
            tiles: [1, 2, 3, 4, 5, 6, 7, 8, 0],
        }
    }

    pub fn tiles(&self) -> &[u8; CELLS] {
        &self.tiles
    }

    pub fn blank(&self) -> usize {
        self.tiles
            .iter()
            .position(|&t| t == 0)
            .expect("board has a blank")
    }

    /// 4 bits per cell.
    pub fn pack(&self) -> u64 {
        self.tiles
            .iter()
            .fold(0u64, |acc, &t| (acc << 4) | u64::from(t))
    }

    pub fn unpack(code: u64) -> Result<Self> {
        let mut tiles = [0u8; CELLS];
        for (i, t) in tiles.iter_mut().enumerate() {
            *t = ((code >> (4 * (CELLS - 1 - i))) & 0xf) as u8;
        }
        Self::new(tiles)
    }

    /// Parity of inversions among the numbered tiles. On an odd-width board
    /// a move never changes it, and boards with equal parity are mutually
    /// reachable.
    pub fn inversion_parity(&self) -> bool {
        let tiles: Vec<u8> = self.tiles.iter().copied().filter(|&t| t != 0).collect();
        let mut inversions = 0;
        for i in 0..tiles.len() {
            for j in i + 1..tiles.len() {
                if tiles[i] > tiles[j] {
                    inversions += 1;
                }
            }
        }
        inversions % 2 == 1
    }

    pub fn same_class(&self, other: &PuzzleBoard) -> bool {
        self.inversion_parity() == other.inversion_parity()
    }

    pub fn apply(&self, mv: Move) -> Option<PuzzleBoard> {
        let b = self.blank();
        let (r, c) = (b / SIDE, b % SIDE);
        let target = match mv {
            Move::Up if r > 0 => b - SIDE,
            Move::Down if r + 1 < SIDE => b + SIDE,
            Move::Left if c > 0 => b - 1,
            Move::Right if c + 1 < SIDE => b + 1,
            _ => return None,
        };
        let mut tiles = self.tiles;
        tiles.swap(b, target);
        Some(PuzzleBoard { tiles })
    }

    pub fn neighbors(&self) -> impl Iterator<Item = (Move, PuzzleBoard)> + '_ {
        Move::ALL
            .into_iter()
            .filter_map(move |m| self.apply(m).map(|b| (m, b)))
    }

    fn positions(&self) -> [usize; CELLS] {
        let mut pos = [0; CELLS];
        for (cell, &t) in self.tiles.iter().enumerate() {
            pos[t as usize] = cell;
        }
        pos
    }
}

impl fmt::Display for PuzzleBoard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.tiles.chunks(SIDE) {
            let cells: Vec<String> = row
                .iter()
                .map(|&t| if t == 0 { "_".into() } else { t.to_string() })
                .collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Whether the blank counts as a tile for the misplaced-tile heuristic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BlankPolicy {
    /// Range `[0, 9]`; the value 1 is unreachable.
    #[default]
    Counted,
    /// Range `[0, 8]`; admissible for search.
    Excluded,
}

/// Number of cells whose content differs from `goal`.
pub fn h1_misplaced(board: &PuzzleBoard, goal: &PuzzleBoard, blank: BlankPolicy) -> u32 {
    board
        .tiles
        .iter()
        .zip(goal.tiles.iter())
        .filter(|&(&t, &g)| t != g && (blank == BlankPolicy::Counted || t != 0))
        .count() as u32
}

/// Sum over all nine cell contents, blank included, of the straight-line
/// distance between their positions in `board` and in `goal`.
pub fn h2_euclidean(board: &PuzzleBoard, goal: &PuzzleBoard) -> f64 {
    let here = board.positions();
    let there = goal.positions();
    here.iter()
        .zip(there.iter())
        .map(|(&a, &b)| {
            let dr = (a / SIDE) as f64 - (b / SIDE) as f64;
            let dc = (a % SIDE) as f64 - (b % SIDE) as f64;
            dr.hypot(dc)
        })
        .sum()
}

/// Every board reachable from `goal`, in breadth-first order.
pub fn enumerate_reachable(goal: &PuzzleBoard) -> Vec<PuzzleBoard> {
    let mut seen = HashSet::with_capacity(CLASS_SIZE);
    let mut order = Vec::with_capacity(CLASS_SIZE);
    let mut queue = VecDeque::from([*goal]);
    seen.insert(goal.pack());
    while let Some(b) = queue.pop_front() {
        order.push(b);
        for (_, next) in b.neighbors() {
            if seen.insert(next.pack()) {
                queue.push_back(next);
            }
        }
    }
    order
}

/// Distribution of `h` over the solvability class of `goal`.
pub fn heuristic_distribution<H>(
    h: H,
    goal: &PuzzleBoard,
    kind: DistributionKind,
) -> Result<EmpiricalDistribution>
where
    H: Fn(&PuzzleBoard) -> f64,
{
    let values: Vec<f64> = enumerate_reachable(goal).iter().map(h).collect();
    EmpiricalDistribution::from_samples(&values, kind)
}

/// Heuristics usable by [`EightPuzzle`]; both ignore the blank so they stay
/// admissible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SearchHeuristic {
    Zero,
    #[default]
    MisplacedTiles,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EightPuzzle {
    pub start: PuzzleBoard,
    pub goal: PuzzleBoard,
    pub heuristic: SearchHeuristic,
}

impl EightPuzzle {
    pub fn new(start: PuzzleBoard, goal: PuzzleBoard) -> Self {
        Self {
            start,
            goal,
            heuristic: SearchHeuristic::default(),
        }
    }
}

impl SearchProblem for EightPuzzle {
    type State = PuzzleBoard;
    type Action = Move;

    fn initial_state(&self) -> PuzzleBoard {
        self.start
    }

    fn is_goal(&self, state: &PuzzleBoard) -> bool {
        *state == self.goal
    }

    fn successors(&self, state: &PuzzleBoard) -> Vec<(Move, PuzzleBoard, f64)> {
        state.neighbors().map(|(m, b)| (m, b, 1.0)).collect()
    }

    fn heuristic(&self, state: &PuzzleBoard) -> f64 {
        match self.heuristic {
            SearchHeuristic::Zero => 0.0,
            SearchHeuristic::MisplacedTiles => {
                f64::from(h1_misplaced(state, &self.goal, BlankPolicy::Excluded))
            }
        }
    }
}
