//! Two-step schema tree construction: recursively split the hypothetical
//! rowid column into a skeleton of key-like columns, then attach every
//! remaining column as a leaf under the deepest skeleton node that
//! determines it.

use serde::{Deserialize, Serialize};

use crate::best::{shortest_min_error, shortest_with_error_bound, Optimize, SearchConfig};
use crate::colset::{ColumnId, ColumnSet};
use crate::error::{Error, Result};
use crate::measure::{descendants, fd_error, is_fd, EvalCounter};
use crate::table::Table;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeKind {
    Root,
    Skeleton,
    Leaf,
}

/// One tree node. Non-root nodes hold a single column; the root holds the
/// hypothetical `rowid`. `split_error` is the verified error of the edge
/// from the parent: for skeleton nodes the joint split error shared with the
/// siblings of the same split, for leaves the attachment error.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchemaNode {
    pub id: usize,
    pub columns: Vec<String>,
    pub kind: NodeKind,
    pub children: Vec<usize>,
    pub split_error: f64,
    pub depth: usize,
}

/// Rooted schema tree plus the configuration that built it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchemaTree {
    pub nodes: Vec<SchemaNode>,
    pub config: SearchConfig,
    pub excluded_decimals: Vec<String>,
}

impl SchemaTree {
    pub fn root(&self) -> &SchemaNode {
        &self.nodes[0]
    }

    pub fn node(&self, id: usize) -> &SchemaNode {
        &self.nodes[id]
    }

    /// The node holding `column`, if any.
    pub fn node_of_column(&self, column: &str) -> Option<&SchemaNode> {
        self.nodes
            .iter()
            .find(|n| n.columns.iter().any(|c| c == column))
    }

    pub fn parent_of(&self, id: usize) -> Option<usize> {
        self.nodes
            .iter()
            .find(|n| n.children.contains(&id))
            .map(|n| n.id)
    }

    /// Node ids in depth-first pre-order.
    pub fn preorder(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![0usize];
        while let Some(id) = stack.pop() {
            out.push(id);
            for &child in self.node(id).children.iter().rev() {
                stack.push(child);
            }
        }
        out
    }

    /// Stable JSON rendering; parses back losslessly.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("tree serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<SchemaTree> {
        serde_json::from_str(text)
            .map_err(|e| Error::PlanMismatch(format!("invalid schema tree JSON: {e}")))
    }

    /// Deterministic DOT rendering: root, skeleton, and leaf nodes styled
    /// distinctly; zero-error skeleton splits drawn as equivalences.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph schema_tree {\n  rankdir=TB;\n");
        for node in &self.nodes {
            let (shape, fill) = match node.kind {
                NodeKind::Root => ("ellipse", "indianred1"),
                NodeKind::Skeleton => ("box", "lightblue"),
                NodeKind::Leaf => ("box", "gray90"),
            };
            out.push_str(&format!(
                "  n{} [label=\"{}\", shape={}, style=filled, fillcolor={}];\n",
                node.id,
                node.columns.join(", ").replace('"', "\\\""),
                shape,
                fill
            ));
        }
        for node in &self.nodes {
            for &child_id in &node.children {
                let child = self.node(child_id);
                let label = if child.kind != NodeKind::Leaf && child.split_error == 0.0 {
                    "\u{2194}" // bidirectional dependency
                } else {
                    "\u{2192}"
                };
                out.push_str(&format!(
                    "  n{} -> n{} [label=\"{label}\"];\n",
                    node.id, child_id
                ));
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Builds the skeleton only (no leaves yet): the root is the hypothetical
/// rowid; each node is recursively split by the shortest solution found
/// among its non-decimal, not-yet-placed descendants.
pub fn build_skeleton(table: &Table, cfg: &SearchConfig) -> Result<SchemaTree> {
    cfg.validate()?;
    let decimals: ColumnSet = (0..table.col_count())
        .filter(|&c| table.columns()[c].is_decimal())
        .collect();
    let mut builder = SkeletonBuilder {
        table,
        cfg,
        decimals: decimals.clone(),
        nodes: vec![SchemaNode {
            id: 0,
            columns: vec!["rowid".to_string()],
            kind: NodeKind::Root,
            children: Vec::new(),
            split_error: 0.0,
            depth: 0,
        }],
        placed: ColumnSet::new(),
        split_seq: 0,
    };
    builder.split(0, ColumnSet::single(table.rowid_id()))?;
    Ok(SchemaTree {
        nodes: builder.nodes,
        config: cfg.clone(),
        excluded_decimals: decimals
            .iter()
            .map(|c| table.columns()[c].name().to_string())
            .collect(),
    })
}

/// Recursive skeleton construction state. Sibling recursions observe each
/// other's placements through `placed`, so building is inherently
/// sequential.
struct SkeletonBuilder<'a> {
    table: &'a Table,
    cfg: &'a SearchConfig,
    decimals: ColumnSet,
    nodes: Vec<SchemaNode>,
    placed: ColumnSet,
    split_seq: u64,
}

impl SkeletonBuilder<'_> {
    fn split(&mut self, node_id: usize, y: ColumnSet) -> Result<()> {
        if y.is_empty() {
            return Ok(()); // unreachable guard: nodes always hold a column
        }
        let mut scratch = EvalCounter::new();
        let candidates = descendants(
            self.table,
            &y,
            self.cfg.epsilon,
            self.cfg.measure,
            &mut scratch,
        )?
        .difference(&self.decimals)
        .difference(&self.placed)
        .difference(&y);
        if candidates.is_empty() {
            return Ok(());
        }
        // fresh permutation stream per split, pinned by (seed, ordinal)
        let split_cfg = SearchConfig {
            seed: self
                .cfg
                .seed
                .wrapping_add(self.split_seq.wrapping_mul(0x9e3779b97f4a7c15)),
            ..self.cfg.clone()
        };
        self.split_seq += 1;
        let found = match self.cfg.optimize {
            Optimize::Size => shortest_with_error_bound(self.table, &y, &candidates, &split_cfg)?,
            Optimize::ErrorThenSize => shortest_min_error(self.table, &y, &candidates, &split_cfg)?,
        };
        let Some(best) = found else {
            return Ok(());
        };
        let depth = self.nodes[node_id].depth + 1;
        let mut child_ids = Vec::new();
        for col in best.columns.iter() {
            let id = self.nodes.len();
            self.nodes.push(SchemaNode {
                id,
                columns: vec![self.table.columns()[col].name().to_string()],
                kind: NodeKind::Skeleton,
                children: Vec::new(),
                split_error: best.achieved_error,
                depth,
            });
            self.nodes[node_id].children.push(id);
            self.placed.insert(col);
            child_ids.push((id, col));
        }
        for (id, col) in child_ids {
            self.split(id, ColumnSet::single(col))?;
        }
        Ok(())
    }
}

/// Attaches every column outside the skeleton as a leaf under the deepest
/// skeleton node that determines it (the root determines everything, so
/// otherwise-undetermined columns land there). Equal-depth ties go to the
/// earliest node in depth-first pre-order.
pub fn attach_leaves(
    mut tree: SchemaTree,
    table: &Table,
    cfg: &SearchConfig,
) -> Result<SchemaTree> {
    cfg.validate()?;
    let skeleton_cols: Vec<String> = tree
        .nodes
        .iter()
        .filter(|n| n.kind == NodeKind::Skeleton)
        .flat_map(|n| n.columns.iter().cloned())
        .collect();

    // (node id, column id, depth) of attachment candidates, in pre-order.
    let mut anchors: Vec<(usize, Option<ColumnId>, usize)> = Vec::new();
    for id in tree.preorder() {
        let node = tree.node(id);
        match node.kind {
            NodeKind::Root => anchors.push((id, None, 0)),
            NodeKind::Skeleton => {
                let col = table.column_id(&node.columns[0])?;
                anchors.push((id, Some(col), node.depth));
            }
            NodeKind::Leaf => {}
        }
    }

    let mut scratch = EvalCounter::new();
    for col in 0..table.col_count() {
        let name = table.columns()[col].name().to_string();
        if skeleton_cols.contains(&name) {
            continue;
        }
        let target = ColumnSet::single(col);
        // root as the depth-0 fallback; pre-order iteration makes the first
        // deepest determining node win ties
        let mut best: (usize, usize, Option<ColumnId>) = (0, 0, None);
        for &(node_id, anchor_col, depth) in &anchors {
            if depth <= best.1 && anchor_col.is_some() {
                continue;
            }
            let determines = match anchor_col {
                None => true, // rowid determines every column
                Some(a) => is_fd(
                    table,
                    &ColumnSet::single(a),
                    &target,
                    cfg.epsilon,
                    cfg.measure,
                    &mut scratch,
                )?,
            };
            if determines && depth > best.1 {
                best = (node_id, depth, anchor_col);
            }
        }
        let (parent_id, parent_depth, parent_col) = best;
        let attach_error = match parent_col {
            None => 0.0,
            Some(a) => fd_error(table, &ColumnSet::single(a), &target, cfg.measure)?,
        };
        let id = tree.nodes.len();
        tree.nodes.push(SchemaNode {
            id,
            columns: vec![name],
            kind: NodeKind::Leaf,
            children: Vec::new(),
            split_error: attach_error,
            depth: parent_depth + 1,
        });
        tree.nodes[parent_id].children.push(id);
    }
    Ok(tree)
}

/// Skeleton construction followed by leaf attachment.
pub fn build_schema_tree(table: &Table, cfg: &SearchConfig) -> Result<SchemaTree> {
    let skeleton = build_skeleton(table, cfg)?;
    attach_leaves(skeleton, table, cfg)
}
