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

//! Explicit search trees and the fixed-width binary path codec.
//!
//! A path of `d` actions drawn from an alphabet of `|a|` labels is packed
//! into `n·d` bits with `n = ⌈log₂|a|⌉`. The first action occupies the most
//! significant `n` bits. Codes at or above `|a|`, and codes for actions not
//! defined at the node reached so far, make a string inadmissible.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::statevector::DEFAULT_MAX_QUBITS;
use crate::{Error, Result};

pub type NodeId = usize;
pub type ActionId = usize;

/// On-disk description of a tree. Nodes that only appear as children may be
/// omitted from `nodes`; they are leaves.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct TreeSpec {
    pub actions: Vec<String>,
    pub root: String,
    #[serde(default)]
    pub goals: Vec<String>,
    #[serde(default)]
    pub nodes: BTreeMap<String, BTreeMap<String, String>>,
    /// Optional per-node heuristic estimate `h`; unlisted nodes get 0.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub heuristic: BTreeMap<String, f64>,
}

impl TreeSpec {
    pub fn new<S: AsRef<str>>(actions: &[S], root: &str) -> Self {
        Self {
            actions: actions.iter().map(|a| a.as_ref().to_owned()).collect(),
            root: root.to_owned(),
            ..Self::default()
        }
    }

    pub fn child(mut self, parent: &str, action: &str, child: &str) -> Self {
        self.nodes
            .entry(parent.to_owned())
            .or_default()
            .insert(action.to_owned(), child.to_owned());
        self
    }

    pub fn goal(mut self, name: &str) -> Self {
        self.goals.push(name.to_owned());
        self
    }

    pub fn with_heuristic(mut self, name: &str, h: f64) -> Self {
        self.heuristic.insert(name.to_owned(), h);
        self
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidTree(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("tree spec serializes")
    }
}

/// A validated rooted tree with labelled edges and a goal set.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchTree {
    action_names: Vec<String>,
    node_names: Vec<String>,
    children: Vec<BTreeMap<ActionId, NodeId>>,
    heuristic: Vec<f64>,
    root: NodeId,
    goals: BTreeSet<NodeId>,
}

impl SearchTree {
    pub fn from_spec(spec: &TreeSpec) -> Result<Self> {
        let mut action_ids = BTreeMap::new();
        for (i, a) in spec.actions.iter().enumerate() {
            if action_ids.insert(a.as_str(), i).is_some() {
                return Err(Error::InvalidTree(format!("duplicate action '{a}'")));
            }
        }
        if spec.actions.is_empty() {
            return Err(Error::InvalidTree("empty action alphabet".into()));
        }

        // Dense ids in breadth-first order from the root.
        let mut node_ids: BTreeMap<&str, NodeId> = BTreeMap::new();
        let mut node_names = vec![spec.root.clone()];
        let mut children: Vec<BTreeMap<ActionId, NodeId>> = vec![BTreeMap::new()];
        node_ids.insert(spec.root.as_str(), 0);
        let mut queue = VecDeque::from([spec.root.as_str()]);
        while let Some(name) = queue.pop_front() {
            let parent = node_ids[name];
            let Some(edges) = spec.nodes.get(name) else {
                continue;
            };
            for (action, child) in edges {
                let &action_id = action_ids.get(action.as_str()).ok_or_else(|| {
                    Error::InvalidTree(format!("node '{name}' uses unknown action '{action}'"))
                })?;
                if node_ids.contains_key(child.as_str()) {
                    return Err(Error::InvalidTree(format!(
                        "node '{child}' is reached twice (cycle or shared child)"
                    )));
                }
                let id = node_names.len();
                node_ids.insert(child.as_str(), id);
                node_names.push(child.clone());
                children.push(BTreeMap::new());
                children[parent].insert(action_id, id);
                queue.push_back(child.as_str());
            }
        }

        for name in spec.nodes.keys() {
            if !node_ids.contains_key(name.as_str()) {
                return Err(Error::InvalidTree(format!(
                    "node '{name}' is not reachable from root '{}'",
                    spec.root
                )));
            }
        }

        let lookup = |name: &str| {
            node_ids
                .get(name)
                .copied()
                .ok_or_else(|| Error::InvalidTree(format!("unknown node '{name}'")))
        };
        let goals = spec
            .goals
            .iter()
            .map(|g| lookup(g))
            .collect::<Result<BTreeSet<_>>>()?;
        let mut heuristic = vec![0.0; node_names.len()];
        for (name, &h) in &spec.heuristic {
            if !h.is_finite() {
                return Err(Error::InvalidTree(format!(
                    "heuristic of '{name}' is not finite"
                )));
            }
            heuristic[lookup(name)?] = h;
        }

        Ok(Self {
            action_names: spec.actions.clone(),
            node_names,
            children,
            heuristic,
            root: 0,
            goals,
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_spec(&TreeSpec::from_json(text)?)
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn len(&self) -> usize {
        self.node_names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.node_names.is_empty()
    }

    pub fn alphabet_size(&self) -> usize {
        self.action_names.len()
    }

    pub fn action_names(&self) -> &[String] {
        &self.action_names
    }

    pub fn action_name(&self, action: ActionId) -> &str {
        &self.action_names[action]
    }

    pub fn action_id(&self, name: &str) -> Option<ActionId> {
        self.action_names.iter().position(|a| a == name)
    }

    pub fn node_name(&self, node: NodeId) -> &str {
        &self.node_names[node]
    }

    pub fn node_id(&self, name: &str) -> Option<NodeId> {
        self.node_names.iter().position(|n| n == name)
    }

    pub fn children(&self, node: NodeId) -> &BTreeMap<ActionId, NodeId> {
        &self.children[node]
    }

    pub fn child(&self, node: NodeId, action: ActionId) -> Option<NodeId> {
        self.children[node].get(&action).copied()
    }

    pub fn heuristic(&self, node: NodeId) -> f64 {
        self.heuristic[node]
    }

    pub fn goals(&self) -> &BTreeSet<NodeId> {
        &self.goals
    }

    pub fn is_goal(&self, node: NodeId) -> bool {
        self.goals.contains(&node)
    }

    /// Replaces the goal set by node names.
    pub fn set_goals<S: AsRef<str>>(&mut self, names: &[S]) -> Result<()> {
        self.goals = names
            .iter()
            .map(|n| {
                self.node_id(n.as_ref())
                    .ok_or_else(|| Error::InvalidTree(format!("unknown goal '{}'", n.as_ref())))
            })
            .collect::<Result<_>>()?;
        Ok(())
    }

    /// Length of the longest root-to-leaf path.
    pub fn height(&self) -> usize {
        fn go(tree: &SearchTree, node: NodeId) -> usize {
            tree.children[node]
                .values()
                .map(|&c| 1 + go(tree, c))
                .max()
                .unwrap_or(0)
        }
        go(self, self.root)
    }

    /// Follows `actions` from the root; `None` if any step is undefined.
    pub fn walk(&self, actions: &[ActionId]) -> Option<NodeId> {
        actions
            .iter()
            .try_fold(self.root, |node, &a| self.child(node, a))
    }
}

/// Branching factors of a tree. `b_max` is the alphabet size, the
/// theoretical maximum; `structural_max` is the largest observed child
/// count. The average is taken over internal nodes only.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BranchingStats {
    pub b_max: usize,
    pub structural_max: usize,
    pub total_children: usize,
    pub internal_nodes: usize,
}

impl BranchingStats {
    pub fn b_avg(&self) -> f64 {
        if self.internal_nodes == 0 {
            0.0
        } else {
            self.total_children as f64 / self.internal_nodes as f64
        }
    }
}

pub fn branching_stats(tree: &SearchTree) -> BranchingStats {
    let counts: Vec<usize> = tree
        .children
        .iter()
        .map(BTreeMap::len)
        .filter(|&c| c > 0)
        .collect();
    BranchingStats {
        b_max: tree.alphabet_size(),
        structural_max: counts.iter().copied().max().unwrap_or(0),
        total_children: counts.iter().sum(),
        internal_nodes: counts.len(),
    }
}

/// A sequence of action ids.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ActionPath(pub Vec<ActionId>);

impl ActionPath {
    pub fn actions(&self) -> &[ActionId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Renders the path with the tree's action labels, e.g. `(a0,a1,a1)`.
    pub fn display_with<'a>(&'a self, tree: &'a SearchTree) -> impl fmt::Display + 'a {
        NamedPath { path: self, tree }
    }
}

impl From<Vec<ActionId>> for ActionPath {
    fn from(v: Vec<ActionId>) -> Self {
        Self(v)
    }
}

struct NamedPath<'a> {
    path: &'a ActionPath,
    tree: &'a SearchTree,
}

impl fmt::Display for NamedPath<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, &a) in self.path.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            match self.tree.action_names.get(a) {
                Some(name) => f.write_str(name)?,
                None => write!(f, "#{a}")?,
            }
        }
        f.write_str(")")
    }
}

/// Fixed-width codec between depth-`d` action paths and basis indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PathCodec {
    bits_per_action: usize,
    depth: usize,
    alphabet_size: usize,
}

/// `⌈log₂ size⌉`, never less than 1.
pub fn bits_for_alphabet(size: usize) -> usize {
    if size <= 2 {
        1
    } else {
        (usize::BITS - (size - 1).leading_zeros()) as usize
    }
}

impl PathCodec {
    pub fn new(alphabet_size: usize, depth: usize) -> Result<Self> {
        Self::with_max_bits(alphabet_size, depth, DEFAULT_MAX_QUBITS)
    }

    /// Codec whose total width may reach `max_bits`.
    pub fn with_max_bits(alphabet_size: usize, depth: usize, max_bits: usize) -> Result<Self> {
        if alphabet_size == 0 {
            return Err(Error::Codec("empty action alphabet".into()));
        }
        if depth == 0 {
            return Err(Error::Codec("depth must be at least 1".into()));
        }
        let bits_per_action = bits_for_alphabet(alphabet_size);
        let width = bits_per_action * depth;
        let max = max_bits.min(usize::BITS as usize - 2);
        if width > max {
            return Err(Error::Capacity {
                requested: width,
                max,
            });
        }
        Ok(Self {
            bits_per_action,
            depth,
            alphabet_size,
        })
    }

    pub fn for_tree(tree: &SearchTree, depth: usize) -> Result<Self> {
        Self::new(tree.alphabet_size(), depth)
    }

    pub fn bits_per_action(&self) -> usize {
        self.bits_per_action
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    /// `n·d`, the register width in qubits.
    pub fn total_bits(&self) -> usize {
        self.bits_per_action * self.depth
    }

    /// `2^(n·d)`.
    pub fn code_space(&self) -> usize {
        1usize << self.total_bits()
    }

    pub fn encode(&self, path: &ActionPath) -> Result<usize> {
        if path.len() != self.depth {
            return Err(Error::Codec(format!(
                "path has {} actions, codec depth is {}",
                path.len(),
                self.depth
            )));
        }
        let limit = 1usize << self.bits_per_action;
        path.0.iter().try_fold(0usize, |acc, &a| {
            if a >= limit {
                Err(Error::Codec(format!(
                    "action id {a} does not fit in {} bits",
                    self.bits_per_action
                )))
            } else {
                Ok((acc << self.bits_per_action) | a)
            }
        })
    }

    /// Splits an index into its `d` action codes. Codes may exceed the
    /// alphabet; admissibility is a separate question.
    pub fn decode(&self, index: usize) -> ActionPath {
        let mask = (1usize << self.bits_per_action) - 1;
        let actions = (0..self.depth)
            .rev()
            .map(|level| (index >> (level * self.bits_per_action)) & mask)
            .collect();
        ActionPath(actions)
    }

    /// The `n`-bit code of one action, e.g. `"100"` for action 4 with n = 3.
    pub fn action_bits(&self, action: ActionId) -> String {
        format!("{:0width$b}", action, width = self.bits_per_action)
    }

    /// All `n·d` bits of an index.
    pub fn index_bits(&self, index: usize) -> String {
        format!("{:0width$b}", index, width = self.total_bits())
    }

    /// Terminal node when every decoded action is defined along the walk
    /// from the root.
    pub fn is_admissible(&self, index: usize, tree: &SearchTree) -> Option<NodeId> {
        if index >= self.code_space() {
            return None;
        }
        tree.walk(self.decode(index).actions())
    }

    /// Every admissible path of exactly `d` actions, ordered by index.
    pub fn admissible_paths(&self, tree: &SearchTree) -> Vec<AdmissiblePath> {
        let mut out = Vec::new();
        let mut stack = Vec::with_capacity(self.depth);
        self.collect(tree, tree.root(), &mut stack, &mut out);
        out
    }

    fn collect(
        &self,
        tree: &SearchTree,
        node: NodeId,
        stack: &mut Vec<ActionId>,
        out: &mut Vec<AdmissiblePath>,
    ) {
        if stack.len() == self.depth {
            let path = ActionPath(stack.clone());
            let index = self.encode(&path).expect("tree actions fit the codec");
            out.push(AdmissiblePath {
                index,
                path,
                terminal: node,
            });
            return;
        }
        for (&action, &child) in tree.children(node) {
            stack.push(action);
            self.collect(tree, child, stack, out);
            stack.pop();
        }
    }

    pub fn admissible_count(&self, tree: &SearchTree) -> usize {
        self.admissible_paths(tree).len()
    }
}

/// An admissible code word with its decoded path and terminal node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissiblePath {
    pub index: usize,
    pub path: ActionPath,
    pub terminal: NodeId,
}
