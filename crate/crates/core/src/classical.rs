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

//! Classical tree-search baselines with expansion accounting.
//!
//! All strategies run tree search by default: no repeated-state
//! elimination, so counts follow the textbook `O(b^d)` framing.
//! [`SearchOptions::closed_set`] switches to graph search for state spaces
//! with transpositions such as the 8-puzzle.
//!
//! Counting conventions:
//! - `nodes_expanded` counts successor-function invocations.
//! - `nodes_generated` counts every node created, the root included.
//! - Breadth-first search tests for the goal when a node is generated;
//!   the depth-first family and the best-first strategies test when a
//!   node is removed from the frontier.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashSet, VecDeque};
use std::hash::Hash;

use crate::tree::{ActionId, NodeId, SearchTree};

pub trait SearchProblem {
    type State: Clone + Eq + Hash;
    type Action: Clone;

    fn initial_state(&self) -> Self::State;

    fn is_goal(&self, state: &Self::State) -> bool;

    /// `(action, next state, step cost)` triples; costs must be ≥ 0.
    fn successors(&self, state: &Self::State) -> Vec<(Self::Action, Self::State, f64)>;

    /// Estimated remaining cost, `h(n) ≥ 0`.
    fn heuristic(&self, _state: &Self::State) -> f64 {
        0.0
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchOptions {
    /// Graph search: never re-expand a state. For the depth-first family
    /// this only prunes states already on the current path.
    pub closed_set: bool,
}

impl SearchOptions {
    pub fn graph() -> Self {
        Self { closed_set: true }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult<A> {
    /// Actions from the initial state to a goal, if one was found.
    pub path: Option<Vec<A>>,
    /// Sum of step costs along `path`, `g` of the goal node.
    pub path_cost: f64,
    pub nodes_expanded: u64,
    pub nodes_generated: u64,
    pub max_frontier: usize,
}

impl<A> SearchResult<A> {
    pub fn found(&self) -> bool {
        self.path.is_some()
    }
}

struct Node<S, A> {
    state: S,
    parent: Option<usize>,
    action: Option<A>,
    g: f64,
    depth: usize,
}

struct Arena<S, A> {
    nodes: Vec<Node<S, A>>,
}

impl<S: Clone + Eq, A: Clone> Arena<S, A> {
    fn new(root: S) -> Self {
        Self {
            nodes: vec![Node {
                state: root,
                parent: None,
                action: None,
                g: 0.0,
                depth: 0,
            }],
        }
    }

    fn push(&mut self, parent: usize, action: A, state: S, cost: f64) -> usize {
        let p = &self.nodes[parent];
        let node = Node {
            state,
            parent: Some(parent),
            action: Some(action),
            g: p.g + cost,
            depth: p.depth + 1,
        };
        self.nodes.push(node);
        self.nodes.len() - 1
    }

    fn path(&self, mut idx: usize) -> Vec<A> {
        let mut out = Vec::with_capacity(self.nodes[idx].depth);
        while let Some(parent) = self.nodes[idx].parent {
            out.push(
                self.nodes[idx]
                    .action
                    .clone()
                    .expect("non-root node has an action"),
            );
            idx = parent;
        }
        out.reverse();
        out
    }

    fn on_path(&self, mut idx: usize, state: &S) -> bool {
        loop {
            if &self.nodes[idx].state == state {
                return true;
            }
            match self.nodes[idx].parent {
                Some(p) => idx = p,
                None => return false,
            }
        }
    }
}

#[derive(Default)]
struct Counters {
    expanded: u64,
    generated: u64,
    max_frontier: usize,
}

impl Counters {
    fn finish<S: Clone + Eq, A: Clone>(
        self,
        arena: &Arena<S, A>,
        goal: Option<usize>,
    ) -> SearchResult<A> {
        SearchResult {
            path: goal.map(|g| arena.path(g)),
            path_cost: goal.map_or(0.0, |g| arena.nodes[g].g),
            nodes_expanded: self.expanded,
            nodes_generated: self.generated,
            max_frontier: self.max_frontier,
        }
    }
}

/// Breadth-first search with the goal test applied at generation.
pub fn bfs<P: SearchProblem>(problem: &P, options: SearchOptions) -> SearchResult<P::Action> {
    let mut arena = Arena::new(problem.initial_state());
    let mut c = Counters {
        generated: 1,
        max_frontier: 1,
        ..Counters::default()
    };
    if problem.is_goal(&arena.nodes[0].state) {
        return c.finish(&arena, Some(0));
    }
    let mut seen = HashSet::new();
    if options.closed_set {
        seen.insert(arena.nodes[0].state.clone());
    }
    let mut frontier = VecDeque::from([0usize]);
    while let Some(idx) = frontier.pop_front() {
        c.expanded += 1;
        let state = arena.nodes[idx].state.clone();
        for (action, next, cost) in problem.successors(&state) {
            c.generated += 1;
            if options.closed_set && !seen.insert(next.clone()) {
                continue;
            }
            let goal = problem.is_goal(&next);
            let child = arena.push(idx, action, next, cost);
            if goal {
                return c.finish(&arena, Some(child));
            }
            frontier.push_back(child);
        }
        c.max_frontier = c.max_frontier.max(frontier.len());
    }
    c.finish(&arena, None)
}

/// Outcome of one depth-limited pass.
struct LimitedOutcome {
    goal: Option<usize>,
    cutoff: bool,
}

fn depth_limited_pass<P: SearchProblem>(
    problem: &P,
    limit: usize,
    options: SearchOptions,
    arena: &mut Arena<P::State, P::Action>,
    c: &mut Counters,
) -> LimitedOutcome {
    let mut stack = vec![0usize];
    let mut cutoff = false;
    c.max_frontier = c.max_frontier.max(1);
    while let Some(idx) = stack.pop() {
        if problem.is_goal(&arena.nodes[idx].state) {
            return LimitedOutcome {
                goal: Some(idx),
                cutoff,
            };
        }
        if arena.nodes[idx].depth >= limit {
            cutoff = true;
            continue;
        }
        c.expanded += 1;
        let state = arena.nodes[idx].state.clone();
        let successors = problem.successors(&state);
        // Reverse so the first successor is explored first.
        for (action, next, cost) in successors.into_iter().rev() {
            c.generated += 1;
            if options.closed_set && arena.on_path(idx, &next) {
                continue;
            }
            let child = arena.push(idx, action, next, cost);
            stack.push(child);
        }
        c.max_frontier = c.max_frontier.max(stack.len());
    }
    LimitedOutcome { goal: None, cutoff }
}

/// Depth-first search that does not expand nodes at depth `limit`.
pub fn dfs_depth_limited<P: SearchProblem>(
    problem: &P,
    limit: usize,
    options: SearchOptions,
) -> SearchResult<P::Action> {
    let mut arena = Arena::new(problem.initial_state());
    let mut c = Counters {
        generated: 1,
        ..Counters::default()
    };
    let outcome = depth_limited_pass(problem, limit, options, &mut arena, &mut c);
    c.finish(&arena, outcome.goal)
}

/// Depth-limited passes with limits `0, 1, …, max_depth`; counts
/// accumulate over all passes.
pub fn iterative_deepening<P: SearchProblem>(
    problem: &P,
    max_depth: usize,
    options: SearchOptions,
) -> SearchResult<P::Action> {
    let mut c = Counters::default();
    for limit in 0..=max_depth {
        let mut arena = Arena::new(problem.initial_state());
        c.generated += 1;
        let outcome = depth_limited_pass(problem, limit, options, &mut arena, &mut c);
        if outcome.goal.is_some() || !outcome.cutoff {
            return c.finish(&arena, outcome.goal);
        }
    }
    SearchResult {
        path: None,
        path_cost: 0.0,
        nodes_expanded: c.expanded,
        nodes_generated: c.generated,
        max_frontier: c.max_frontier,
    }
}

#[derive(Debug, Clone, Copy)]
struct Entry {
    priority: f64,
    seq: u64,
    node: usize,
}

impl PartialEq for Entry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Entry {}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Entry {
    // Max-heap inverted: lowest priority, then earliest insertion, first.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .priority
            .total_cmp(&self.priority)
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

fn best_first<P, F>(problem: &P, options: SearchOptions, priority: F) -> SearchResult<P::Action>
where
    P: SearchProblem,
    F: Fn(f64, &P::State) -> f64,
{
    let root = problem.initial_state();
    let mut heap = BinaryHeap::new();
    heap.push(Entry {
        priority: priority(0.0, &root),
        seq: 0,
        node: 0,
    });
    let mut arena = Arena::new(root);
    let mut c = Counters {
        generated: 1,
        max_frontier: 1,
        ..Counters::default()
    };
    let mut seq = 1u64;
    let mut closed = HashSet::new();
    while let Some(Entry { node: idx, .. }) = heap.pop() {
        let state = arena.nodes[idx].state.clone();
        if problem.is_goal(&state) {
            return c.finish(&arena, Some(idx));
        }
        if options.closed_set && !closed.insert(state.clone()) {
            continue;
        }
        c.expanded += 1;
        for (action, next, cost) in problem.successors(&state) {
            c.generated += 1;
            if options.closed_set && closed.contains(&next) {
                continue;
            }
            let child = arena.push(idx, action, next, cost);
            let node = &arena.nodes[child];
            heap.push(Entry {
                priority: priority(node.g, &node.state),
                seq,
                node: child,
            });
            seq += 1;
        }
        c.max_frontier = c.max_frontier.max(heap.len());
    }
    c.finish(&arena, None)
}

/// Greedy best-first search: expands the lowest `h` first.
pub fn greedy<P: SearchProblem>(problem: &P, options: SearchOptions) -> SearchResult<P::Action> {
    best_first(problem, options, |_, s| problem.heuristic(s))
}

/// A*: expands the lowest `f = g + h` first.
pub fn a_star<P: SearchProblem>(problem: &P, options: SearchOptions) -> SearchResult<P::Action> {
    best_first(problem, options, |g, s| g + problem.heuristic(s))
}

/// A [`SearchTree`] viewed as a search problem with uniform action cost.
#[derive(Debug, Clone, Copy)]
pub struct TreeProblem<'a> {
    pub tree: &'a SearchTree,
    pub action_cost: f64,
}

impl<'a> TreeProblem<'a> {
    pub fn new(tree: &'a SearchTree) -> Self {
        Self {
            tree,
            action_cost: 1.0,
        }
    }
}

impl SearchProblem for TreeProblem<'_> {
    type State = NodeId;
    type Action = ActionId;

    fn initial_state(&self) -> NodeId {
        self.tree.root()
    }

    fn is_goal(&self, state: &NodeId) -> bool {
        self.tree.is_goal(*state)
    }

    fn successors(&self, state: &NodeId) -> Vec<(ActionId, NodeId, f64)> {
        self.tree
            .children(*state)
            .iter()
            .map(|(&a, &n)| (a, n, self.action_cost))
            .collect()
    }

    fn heuristic(&self, state: &NodeId) -> f64 {
        self.tree.heuristic(*state)
    }
}

/// Implicit, unbounded tree with constant branching factor. Nodes are
/// `(depth, index within level)`; children of `(d, i)` are
/// `(d + 1, i·b + j)` for `j < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UniformTree {
    pub branching: u64,
    pub goal: (u32, u64),
}

impl UniformTree {
    /// Goal at the last node of level `depth`.
    pub fn goal_at_last_leaf(branching: u64, depth: u32) -> Self {
        Self {
            branching,
            goal: (depth, branching.pow(depth) - 1),
        }
    }

    /// Goal at the first node of level `depth`.
    pub fn goal_at_first_leaf(branching: u64, depth: u32) -> Self {
        Self {
            branching,
            goal: (depth, 0),
        }
    }
}

impl SearchProblem for UniformTree {
    type State = (u32, u64);
    type Action = u64;

    fn initial_state(&self) -> (u32, u64) {
        (0, 0)
    }

    fn is_goal(&self, state: &(u32, u64)) -> bool {
        *state == self.goal
    }

    fn successors(&self, &(d, i): &(u32, u64)) -> Vec<(u64, (u32, u64), f64)> {
        (0..self.branching)
            .map(|j| (j, (d + 1, i * self.branching + j), 1.0))
            .collect()
    }
}
