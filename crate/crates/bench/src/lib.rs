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

//! Fixtures shared by the criterion benchmarks.

use qtree_core::puzzle::{Move, PuzzleBoard};
use qtree_core::{SearchTree, TreeSpec};

/// One of the two boards farthest from the solved board (31 moves).
pub const FARTHEST: [u8; 9] = [6, 4, 7, 8, 5, 0, 3, 2, 1];

/// Complete tree with `branching` actions per node, `depth` levels deep and
/// one goal at the last leaf.
pub fn complete_tree(branching: usize, depth: usize) -> SearchTree {
    let actions: Vec<String> = (0..branching).map(|a| format!("a{a}")).collect();
    let mut spec = TreeSpec::new(&actions, "r");
    let mut frontier = vec!["r".to_owned()];
    for _ in 0..depth {
        let mut next = Vec::with_capacity(frontier.len() * branching);
        for parent in &frontier {
            for a in &actions {
                let child = format!("{parent}{a}");
                spec = spec.child(parent, a, &child);
                next.push(child);
            }
        }
        frontier = next;
    }
    let spec = spec.goal(frontier.last().expect("depth ≥ 1"));
    SearchTree::from_spec(&spec).expect("well-formed tree")
}

/// Board reached by a fixed walk of the blank that never undoes its last
/// move; its distance to the solved board is at most `moves`.
pub fn scrambled_board(moves: usize) -> PuzzleBoard {
    let mut board = PuzzleBoard::solved();
    let mut previous = board;
    for step in 0..moves {
        let next = (0..4)
            .map(|o| Move::ALL[(step + o) % 4])
            .filter_map(|m| board.apply(m))
            .find(|n| *n != previous)
            .expect("every cell has at least two neighbours");
        previous = board;
        board = next;
    }
    board
}
