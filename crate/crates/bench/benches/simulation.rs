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

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qtree_bench::{complete_tree, scrambled_board, FARTHEST};
use qtree_core::classical::{a_star, bfs, SearchOptions};
use qtree_core::puzzle::{enumerate_reachable, EightPuzzle, PuzzleBoard};
use qtree_core::{Oracle, PathCodec, StateVector};

fn grover_iterate(c: &mut Criterion) {
    let mut group = c.benchmark_group("grover_iterate");
    for m in [10usize, 14, 18] {
        let marked = |x: usize| x == 3;
        group.bench_with_input(BenchmarkId::from_parameter(m), &m, |b, &m| {
            let mut state = StateVector::uniform(m).unwrap();
            b.iter(|| state.grover_iterate(black_box(marked)));
        });
    }
    group.finish();
}

fn tree_pipeline(c: &mut Criterion) {
    let tree = complete_tree(4, 6);
    let codec = PathCodec::for_tree(&tree, 6).unwrap();
    c.bench_function("goal_oracle_4x6", |b| {
        b.iter(|| Oracle::goal(black_box(&tree), &codec))
    });
    let oracle = Oracle::goal(&tree, &codec);
    c.bench_function("amplify_and_measure_4x6", |b| {
        b.iter(|| {
            let mut state = StateVector::uniform(codec.total_bits()).unwrap();
            state.amplify(oracle.predicate(), 50);
            state.measure(black_box(1))
        })
    });
}

fn puzzle(c: &mut Criterion) {
    let mut group = c.benchmark_group("eight_puzzle");
    group.sample_size(10);
    group.bench_function("enumerate_reachable", |b| {
        b.iter(|| enumerate_reachable(black_box(&PuzzleBoard::solved())).len())
    });
    let instances = [
        ("walk_8", scrambled_board(8)),
        ("farthest", PuzzleBoard::new(FARTHEST).unwrap()),
    ];
    for (label, start) in instances {
        let problem = EightPuzzle::new(start, PuzzleBoard::solved());
        group.bench_with_input(BenchmarkId::new("a_star", label), &problem, |b, p| {
            b.iter(|| a_star(p, SearchOptions::graph()).nodes_expanded)
        });
        group.bench_with_input(BenchmarkId::new("bfs", label), &problem, |b, p| {
            b.iter(|| bfs(p, SearchOptions::graph()).nodes_expanded)
        });
    }
    group.finish();
}

criterion_group!(benches, grover_iterate, tree_pipeline, puzzle);
criterion_main!(benches);
