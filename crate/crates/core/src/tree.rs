//! Baseline and modified decision trees.
//!
//! Trees are written down as tables of named rows. A row either tests a
//! [`TestId`] and names its yes/no children, or is a leaf. Rows are expanded
//! recursively into an arena, so a row referenced from several parents (the
//! VID subtree) is copied for each of them and the result stays a proper
//! tree with single parents.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::FormatError;
use crate::model::{Answer, Candidate, DecisionTrace, EvidenceSource, Label, TestId, TraceStep};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TreeVariant {
    #[serde(alias = "BASELINE")]
    Baseline,
    #[serde(alias = "MODIFIED")]
    Modified,
}

impl TreeVariant {
    pub const ALL: [TreeVariant; 2] = [TreeVariant::Baseline, TreeVariant::Modified];

    pub fn as_str(self) -> &'static str {
        match self {
            TreeVariant::Baseline => "baseline",
            TreeVariant::Modified => "modified",
        }
    }
}

impl fmt::Display for TreeVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TreeVariant {
    type Err = FormatError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "baseline" => Ok(TreeVariant::Baseline),
            "modified" => Ok(TreeVariant::Modified),
            _ => Err(FormatError::UnknownVariant(s.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NodeId(pub usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TreeNode {
    Test { test: TestId, yes: NodeId, no: NodeId },
    Leaf(Label),
}

/// Which root a candidate enters by.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Entry {
    Direct,
    Pp,
}

impl Entry {
    pub const ALL: [Entry; 2] = [Entry::Direct, Entry::Pp];

    pub fn for_candidate(candidate: &Candidate) -> Entry {
        if candidate.is_prepositional() {
            Entry::Pp
        } else {
            Entry::Direct
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecisionTree {
    variant: TreeVariant,
    nodes: Vec<TreeNode>,
    entry_direct: NodeId,
    entry_pp: NodeId,
}

// Table rows. `Ref` names another row of the same table or of `SHARED`.
#[derive(Clone, Copy)]
enum Row {
    Test(TestId, &'static str, &'static str),
    Leaf(Label),
}

use Row::{Leaf as L, Test as T};
use TestId::*;

const SHARED: &[(&str, Row)] = &[
    ("vidsub", T(VID2, "vid", "vid3")),
    ("vid3", T(VID3, "vid", "cp")),
    ("vid", L(Label::Vid)),
    ("cp", L(Label::NonMwe)),
    ("full", L(Label::LvcFull)),
    ("asp", L(Label::LvcAsp)),
];

const BASELINE_DIRECT: &[(&str, Row)] = &[
    ("root", T(LVC0, "lvc1", "vidsub")),
    ("lvc1", T(LVC1, "lvc2", "vidsub")),
    ("lvc2", T(LVC2, "lvc3", "vidsub")),
    ("lvc3", T(LVC3, "lvc4", "vidsub")),
    ("lvc4", T(LVC4, "full", "vidsub")),
];

const BASELINE_PP: &[(&str, Row)] = &[
    ("root", T(PPI1, "pp_vid2", "vidsub")),
    ("pp_vid2", T(VID2, "vid", "cp")),
];

const MODIFIED_DIRECT: &[(&str, Row)] = &[
    ("root", T(LVC0, "lvc1", "vidsub")),
    ("lvc1", T(LVC1, "lvc2", "vidsub")),
    ("lvc2", T(LVC2, "lvc3", "vidsub")),
    ("lvc3", T(LVC3, "lvc4", "asp1")),
    ("lvc4", T(LVC4, "full", "vidsub")),
    ("asp1", T(ASP1, "asp2", "asp2")),
    ("asp2", T(ASP2, "asp", "vidsub")),
];

// Under COP1=YES an ASP2=NO answer is followed by LVC3: a verb that adds
// nothing to its copular counterpart (the copula itself, or another listed
// support verb) gives LVC.full.
const MODIFIED_PP: &[(&str, Row)] = &[
    ("root", T(PPI1, "lvc0bis", "vidsub")),
    ("lvc0bis", T(LVC0BIS, "lvc1bis", "vidsub")),
    ("lvc1bis", T(LVC1BIS, "lvc2bis", "vidsub")),
    ("lvc2bis", T(LVC2BIS, "cop1", "vidsub")),
    ("cop1", T(COP1, "cop_asp2", "asp2")),
    ("cop_asp2", T(ASP2, "asp", "cop_lvc3")),
    ("cop_lvc3", T(LVC3, "full", "vidsub")),
    ("asp2", T(ASP2, "asp", "vidsub")),
];

struct Builder {
    nodes: Vec<TreeNode>,
}

impl Builder {
    fn lookup(table: &[(&'static str, Row)], name: &str) -> Row {
        table
            .iter()
            .chain(SHARED.iter())
            .find(|(n, _)| *n == name)
            .map(|(_, r)| *r)
            .unwrap_or_else(|| panic!("tree table refers to unknown row '{name}'"))
    }

    fn expand(&mut self, table: &[(&'static str, Row)], name: &str, depth: usize) -> NodeId {
        assert!(depth <= 64, "tree table has a cycle through '{name}'");
        match Self::lookup(table, name) {
            Row::Leaf(label) => {
                self.nodes.push(TreeNode::Leaf(label));
                NodeId(self.nodes.len() - 1)
            }
            Row::Test(test, yes, no) => {
                let slot = self.nodes.len();
                // placeholder, patched once both children exist
                self.nodes.push(TreeNode::Leaf(Label::Unresolved));
                let yes = self.expand(table, yes, depth + 1);
                let no = self.expand(table, no, depth + 1);
                self.nodes[slot] = TreeNode::Test { test, yes, no };
                NodeId(slot)
            }
        }
    }
}

/// Builds one of the two trees. Structurally identical on every call.
pub fn build_tree(variant: TreeVariant) -> DecisionTree {
    let (direct, pp) = match variant {
        TreeVariant::Baseline => (BASELINE_DIRECT, BASELINE_PP),
        TreeVariant::Modified => (MODIFIED_DIRECT, MODIFIED_PP),
    };
    let mut b = Builder { nodes: Vec::new() };
    let entry_direct = b.expand(direct, "root", 0);
    let entry_pp = b.expand(pp, "root", 0);
    DecisionTree {
        variant,
        nodes: b.nodes,
        entry_direct,
        entry_pp,
    }
}

/// One root-to-leaf path: the answers that lead to the leaf.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreePath {
    pub entry: Entry,
    pub assignment: Vec<(TestId, bool)>,
    pub label: Label,
}

impl TreePath {
    /// Whether a complete answer function follows this path.
    pub fn matches(&self, answers: &dyn Fn(TestId) -> bool) -> bool {
        self.assignment.iter().all(|&(t, a)| answers(t) == a)
    }
}

impl DecisionTree {
    /// A tree made of a single entry node, used to exercise degenerate cases.
    pub fn single_leaf(variant: TreeVariant, label: Label) -> DecisionTree {
        DecisionTree {
            variant,
            nodes: vec![TreeNode::Leaf(label)],
            entry_direct: NodeId(0),
            entry_pp: NodeId(0),
        }
    }

    pub fn variant(&self) -> TreeVariant {
        self.variant
    }

    pub fn entry(&self, entry: Entry) -> NodeId {
        match entry {
            Entry::Direct => self.entry_direct,
            Entry::Pp => self.entry_pp,
        }
    }

    pub fn node(&self, id: NodeId) -> &TreeNode {
        &self.nodes[id.0]
    }

    pub fn nodes(&self) -> &[TreeNode] {
        &self.nodes
    }

    /// Test ids below `entry`, in first-visit order.
    pub fn tests_in(&self, entry: Entry) -> Vec<TestId> {
        let mut out = Vec::new();
        let mut stack = vec![self.entry(entry)];
        while let Some(id) = stack.pop() {
            if let TreeNode::Test { test, yes, no } = self.node(id) {
                if !out.contains(test) {
                    out.push(*test);
                }
                stack.push(*no);
                stack.push(*yes);
            }
        }
        out
    }

    /// Number of tests on the longest root-to-leaf path of `entry`.
    pub fn depth(&self, entry: Entry) -> usize {
        fn go(tree: &DecisionTree, id: NodeId) -> usize {
            match tree.node(id) {
                TreeNode::Leaf(_) => 0,
                TreeNode::Test { yes, no, .. } => 1 + go(tree, *yes).max(go(tree, *no)),
            }
        }
        go(self, self.entry(entry))
    }

    /// Every root-to-leaf path of both entries.
    pub fn enumerate_paths(&self) -> Vec<TreePath> {
        let mut out = Vec::new();
        for entry in Entry::ALL {
            let mut prefix = Vec::new();
            self.collect_paths(entry, self.entry(entry), &mut prefix, &mut out);
            if self.entry_direct == self.entry_pp {
                break;
            }
        }
        out
    }

    fn collect_paths(
        &self,
        entry: Entry,
        id: NodeId,
        prefix: &mut Vec<(TestId, bool)>,
        out: &mut Vec<TreePath>,
    ) {
        match self.node(id) {
            TreeNode::Leaf(label) => out.push(TreePath {
                entry,
                assignment: prefix.clone(),
                label: *label,
            }),
            TreeNode::Test { test, yes, no } => {
                prefix.push((*test, true));
                self.collect_paths(entry, *yes, prefix, out);
                prefix.pop();
                prefix.push((*test, false));
                self.collect_paths(entry, *no, prefix, out);
                prefix.pop();
            }
        }
    }

    /// Walks the tree for `candidate`, asking `oracle` at each test node.
    ///
    /// Stops at the first `Unknown` answer with an `Unresolved` leaf; the
    /// unknown step is kept as the last step of the trace.
    pub fn traverse<F>(&self, candidate: &Candidate, mut oracle: F) -> DecisionTrace
    where
        F: FnMut(TestId) -> (Answer, EvidenceSource),
    {
        self.traverse_from(Entry::for_candidate(candidate), &mut oracle)
    }

    pub fn traverse_from<F>(&self, entry: Entry, oracle: &mut F) -> DecisionTrace
    where
        F: FnMut(TestId) -> (Answer, EvidenceSource),
    {
        let mut steps = Vec::new();
        let mut id = self.entry(entry);
        loop {
            match self.node(id) {
                TreeNode::Leaf(label) => {
                    return DecisionTrace {
                        steps,
                        leaf: *label,
                    }
                }
                TreeNode::Test { test, yes, no } => {
                    let (answer, evidence) = oracle(*test);
                    steps.push(TraceStep {
                        test: *test,
                        answer,
                        evidence,
                    });
                    id = match answer {
                        Answer::Yes => *yes,
                        Answer::No => *no,
                        Answer::Unknown => {
                            return DecisionTrace {
                                steps,
                                leaf: Label::Unresolved,
                            }
                        }
                    };
                }
            }
        }
    }

    /// Node reached after following `trace` from `entry`, or `None` if the
    /// trace does not follow the tree's edges.
    pub fn node_after(&self, entry: Entry, trace: &DecisionTrace) -> Option<NodeId> {
        let mut id = self.entry(entry);
        for step in &trace.steps {
            match self.node(id) {
                TreeNode::Test { test, yes, no } if *test == step.test => {
                    id = match step.answer {
                        Answer::Yes => *yes,
                        Answer::No => *no,
                        Answer::Unknown => return Some(id),
                    };
                }
                _ => return None,
            }
        }
        Some(id)
    }

    /// Checks that `trace` follows edges of this tree and ends on its leaf.
    pub fn validates(&self, entry: Entry, trace: &DecisionTrace) -> bool {
        let Some(end) = self.node_after(entry, trace) else {
            return false;
        };
        match (self.node(end), trace.steps.last()) {
            (TreeNode::Leaf(l), _) => *l == trace.leaf,
            (TreeNode::Test { test, .. }, Some(last)) => {
                last.answer == Answer::Unknown
                    && last.test == *test
                    && trace.leaf == Label::Unresolved
            }
            _ => false,
        }
    }

    /// Structural checks: every node reachable exactly once, no test
    /// repeated on a path, leaves drawn from the four verdict labels.
    pub fn check_structure(&self) -> Result<(), String> {
        let mut parents: HashMap<NodeId, usize> = HashMap::new();
        for node in &self.nodes {
            if let TreeNode::Test { yes, no, .. } = node {
                *parents.entry(*yes).or_default() += 1;
                *parents.entry(*no).or_default() += 1;
            }
        }
        if let Some((id, n)) = parents.iter().find(|(_, n)| **n > 1) {
            return Err(format!("node {} has {n} parents", id.0));
        }
        for entry in Entry::ALL {
            if parents.contains_key(&self.entry(entry)) {
                return Err(format!("{entry:?} entry has a parent"));
            }
        }
        for path in self.enumerate_paths() {
            if !path.label.is_leaf_label() {
                return Err(format!("leaf label {:?} not allowed", path.label));
            }
            let mut seen = Vec::new();
            for (t, _) in &path.assignment {
                if seen.contains(t) {
                    return Err(format!("{t} repeated on a path"));
                }
                seen.push(*t);
            }
        }
        Ok(())
    }

    pub fn to_view(&self) -> TreeView {
        TreeView {
            variant: self.variant,
            direct: self.view_node(self.entry_direct),
            pp: self.view_node(self.entry_pp),
        }
    }

    fn view_node(&self, id: NodeId) -> NodeView {
        match self.node(id) {
            TreeNode::Leaf(label) => NodeView::Leaf { id: id.0, label: *label },
            TreeNode::Test { test, yes, no } => NodeView::Test {
                id: id.0,
                test: *test,
                yes: Box::new(self.view_node(*yes)),
                no: Box::new(self.view_node(*no)),
            },
        }
    }
}

/// Nested rendering of a tree, as served to annotation front ends.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeView {
    pub variant: TreeVariant,
    pub direct: NodeView,
    pub pp: NodeView,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NodeView {
    Test {
        id: usize,
        test: TestId,
        yes: Box<NodeView>,
        no: Box<NodeView>,
    },
    Leaf {
        id: usize,
        label: Label,
    },
}
