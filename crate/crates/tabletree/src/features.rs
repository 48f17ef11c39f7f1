//! Automated feature engineering from a schema tree: one-to-one targets
//! become direct features of the anchor, one-to-many targets are aggregated
//! bottom-up along their (collapsed) tree path, one feature per subpath and
//! function assignment.

use std::collections::HashMap;

use crate::colset::{ColumnId, ColumnSet};
use crate::error::{Error, Result};
use crate::measure::{descendants, is_fd, ErrorMeasure, EvalCounter};
use crate::table::Table;
use crate::tree::SchemaTree;

/// How a target column relates to the anchor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelationKind {
    /// The anchor determines the target: one instance per anchor value.
    OneToOne,
    /// Several target instances per anchor value; aggregation required.
    OneToMany,
}

/// `one_to_one` iff `anchor -> target` within `epsilon`.
pub fn classify_relation(
    table: &Table,
    anchor: ColumnId,
    target: ColumnId,
    epsilon: f64,
    measure: ErrorMeasure,
) -> Result<RelationKind> {
    let mut scratch = EvalCounter::new();
    let one = is_fd(
        table,
        &ColumnSet::single(anchor),
        &ColumnSet::single(target),
        epsilon,
        measure,
        &mut scratch,
    )?;
    Ok(if one {
        RelationKind::OneToOne
    } else {
        RelationKind::OneToMany
    })
}

/// A bottom-up aggregation route: values of `source` are grouped by
/// `hops[0]`, the per-group aggregates regrouped by `hops[1]`, and so on;
/// the last hop is always the anchor. One-to-one hops are collapsed away and
/// the hypothetical rowid never appears.
#[derive(Debug, Clone, PartialEq)]
pub struct AggregationPath {
    pub source: String,
    pub hops: Vec<String>,
}

/// Shortest tree path from `target` up to `anchor`, rowid elided, one-to-one
/// hops collapsed.
///
/// A guarded call with a one-to-one target returns an empty-hops path; the
/// planner never takes that branch (such targets are direct features).
pub fn aggregation_path(
    tree: &SchemaTree,
    table: &Table,
    anchor: ColumnId,
    target: ColumnId,
) -> Result<AggregationPath> {
    let epsilon = tree.config.epsilon;
    let measure = tree.config.measure;
    let source_name = table.column(target)?.name().to_string();
    if classify_relation(table, anchor, target, epsilon, measure)? == RelationKind::OneToOne {
        return Ok(AggregationPath {
            source: source_name,
            hops: Vec::new(),
        });
    }

    let anchor_name = table.column(anchor)?.name().to_string();
    let start = tree
        .node_of_column(&source_name)
        .ok_or_else(|| Error::AnchorNotInTree(source_name.clone()))?
        .id;
    let goal = tree
        .node_of_column(&anchor_name)
        .ok_or_else(|| Error::AnchorNotInTree(anchor_name.clone()))?
        .id;

    // Unique tree path via parent links from both ends.
    let node_path = tree_path(tree, start, goal);

    // Node ids to column names, dropping the hypothetical root.
    let mut names: Vec<String> = Vec::new();
    for id in node_path {
        let node = tree.node(id);
        if node.kind == crate::tree::NodeKind::Root {
            continue;
        }
        names.push(node.columns[0].clone());
    }

    // Collapse: drop any intermediate that determines its source-side
    // neighbor (no aggregation happens across a one-to-one hop). Iterate to
    // a fixpoint; collapsing a collapsed path is the identity.
    let mut scratch = EvalCounter::new();
    let mut changed = true;
    while changed {
        changed = false;
        let mut i = 1;
        while i + 1 < names.len() {
            let from = ColumnSet::single(table.column_id(&names[i])?);
            let to = ColumnSet::single(table.column_id(&names[i - 1])?);
            if is_fd(table, &from, &to, epsilon, measure, &mut scratch)? {
                names.remove(i);
                changed = true;
            } else {
                i += 1;
            }
        }
    }

    Ok(AggregationPath {
        source: names[0].clone(),
        hops: names[1..].to_vec(),
    })
}

/// Path between two nodes of a rooted tree, via the lowest common ancestor.
fn tree_path(tree: &SchemaTree, start: usize, goal: usize) -> Vec<usize> {
    let chain = |mut id: usize| {
        let mut up = vec![id];
        while let Some(parent) = tree.parent_of(id) {
            up.push(parent);
            id = parent;
        }
        up
    };
    let from_start = chain(start);
    let from_goal = chain(goal);
    // drop the shared suffix down to the lowest common ancestor
    let mut i = from_start.len();
    let mut j = from_goal.len();
    while i > 1 && j > 1 && from_start[i - 2] == from_goal[j - 2] {
        i -= 1;
        j -= 1;
    }
    let mut path = from_start[..i].to_vec();
    path.extend(from_goal[..j - 1].iter().rev());
    path
}

/// Aggregation functions; the first hop uses the source-type set, later hops
/// aggregate numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AggFn {
    Min,
    Max,
    Mean,
    /// Population standard deviation; a single-element group yields 0.
    Std,
    /// Number of non-missing instances.
    Count,
    /// Number of distinct non-missing instances.
    NDistinct,
}

impl AggFn {
    pub fn name(&self) -> &'static str {
        match self {
            AggFn::Min => "min",
            AggFn::Max => "max",
            AggFn::Mean => "mean",
            AggFn::Std => "std",
            AggFn::Count => "count",
            AggFn::NDistinct => "n_distinct",
        }
    }

    fn apply_numeric(&self, values: &[f64]) -> Option<f64> {
        match self {
            AggFn::Count => Some(values.len() as f64),
            AggFn::NDistinct => {
                let mut v: Vec<u64> = values.iter().map(|x| x.to_bits()).collect();
                v.sort_unstable();
                v.dedup();
                Some(v.len() as f64)
            }
            AggFn::Min => values.iter().copied().reduce(f64::min),
            AggFn::Max => values.iter().copied().reduce(f64::max),
            AggFn::Mean => {
                (!values.is_empty()).then(|| values.iter().sum::<f64>() / values.len() as f64)
            }
            AggFn::Std => (!values.is_empty()).then(|| {
                let n = values.len() as f64;
                let mean = values.iter().sum::<f64>() / n;
                let var = values.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
                var.sqrt()
            }),
        }
    }

    fn apply_categorical(&self, codes: &[u32]) -> Option<f64> {
        match self {
            AggFn::Count => Some(codes.len() as f64),
            AggFn::NDistinct => {
                let mut v = codes.to_vec();
                v.sort_unstable();
                v.dedup();
                Some(v.len() as f64)
            }
            _ => None,
        }
    }
}

/// Which functions apply at each stage.
#[derive(Debug, Clone)]
pub struct AggregationConfig {
    /// First hop, numeric sources.
    pub numeric: Vec<AggFn>,
    /// First hop, categorical sources.
    pub categorical: Vec<AggFn>,
    /// Every later hop (aggregates are numbers).
    pub chained: Vec<AggFn>,
}

impl Default for AggregationConfig {
    fn default() -> Self {
        AggregationConfig {
            numeric: vec![AggFn::Min, AggFn::Max, AggFn::Mean, AggFn::Std],
            categorical: vec![AggFn::Count, AggFn::NDistinct],
            chained: vec![AggFn::Min, AggFn::Max, AggFn::Mean, AggFn::Std],
        }
    }
}

/// One planned aggregation: a subpath of the target's route plus one
/// function per hop.
#[derive(Debug, Clone, PartialEq)]
pub struct AggregationFeature {
    pub name: String,
    pub path: AggregationPath,
    pub functions: Vec<AggFn>,
}

/// The full per-anchor feature recipe.
#[derive(Debug, Clone)]
pub struct FeaturePlan {
    pub anchor: String,
    pub epsilon: f64,
    pub measure: ErrorMeasure,
    /// One-to-one targets, copied per anchor value.
    pub direct: Vec<String>,
    pub aggregations: Vec<AggregationFeature>,
    /// Columns excluded from the plan, with reasons.
    pub skipped: Vec<(String, String)>,
}

/// Plans features for `anchor`: direct features are the anchor's
/// epsilon-descendants; every other column contributes one aggregation per
/// subpath of its route crossed with the applicable functions.
pub fn plan_features(
    tree: &SchemaTree,
    table: &Table,
    anchor: ColumnId,
    agg: &AggregationConfig,
) -> Result<FeaturePlan> {
    let epsilon = tree.config.epsilon;
    let measure = tree.config.measure;
    let anchor_name = table.column(anchor)?.name().to_string();
    if tree.node_of_column(&anchor_name).is_none() {
        return Err(Error::AnchorNotInTree(anchor_name));
    }

    let mut scratch = EvalCounter::new();
    let direct_set = descendants(
        table,
        &ColumnSet::single(anchor),
        epsilon,
        measure,
        &mut scratch,
    )?
    .without(anchor);
    let direct: Vec<String> = direct_set
        .iter()
        .map(|c| table.columns()[c].name().to_string())
        .collect();

    let mut aggregations = Vec::new();
    let mut skipped = Vec::new();
    for col in 0..table.col_count() {
        if col == anchor || direct_set.contains(col) {
            continue;
        }
        let full = aggregation_path(tree, table, anchor, col)?;
        if full.hops.is_empty() {
            skipped.push((
                full.source,
                "determined by the anchor despite one-to-many classification".to_string(),
            ));
            continue;
        }
        let source_numeric = table.columns()[col].is_numeric();
        let first_fns = if source_numeric {
            &agg.numeric
        } else {
            &agg.categorical
        };
        let intermediates = &full.hops[..full.hops.len() - 1];
        // every subpath: subsets of the intermediate hops, full path first
        for mask in (0..(1u32 << intermediates.len())).rev() {
            let mut hops: Vec<String> = intermediates
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, h)| h.clone())
                .collect();
            hops.push(full.hops[full.hops.len() - 1].clone());
            let path = AggregationPath {
                source: full.source.clone(),
                hops,
            };
            for combo in function_combos(first_fns, &agg.chained, path.hops.len()) {
                let name = feature_name(&path, &combo, &path.hops[path.hops.len() - 1]);
                aggregations.push(AggregationFeature {
                    name,
                    path: path.clone(),
                    functions: combo,
                });
            }
        }
    }

    Ok(FeaturePlan {
        anchor: table.column(anchor)?.name().to_string(),
        epsilon,
        measure,
        direct,
        aggregations,
        skipped,
    })
}

fn function_combos(first: &[AggFn], chained: &[AggFn], hop_count: usize) -> Vec<Vec<AggFn>> {
    let mut combos: Vec<Vec<AggFn>> = first.iter().map(|&f| vec![f]).collect();
    for _ in 1..hop_count {
        let mut next = Vec::with_capacity(combos.len() * chained.len());
        for combo in &combos {
            for &f in chained {
                let mut c = combo.clone();
                c.push(f);
                next.push(c);
            }
        }
        combos = next;
    }
    combos
}

fn sanitize(name: &str) -> String {
    name.chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
        .collect()
}

/// `source__f1_by_hop1__f2_by_hop2__f3` — the final (anchor) hop carries no
/// `_by_` suffix.
fn feature_name(path: &AggregationPath, functions: &[AggFn], anchor: &str) -> String {
    let mut out = sanitize(&path.source);
    for (hop, f) in path.hops.iter().zip(functions) {
        out.push_str("__");
        out.push_str(f.name());
        if hop != anchor {
            out.push_str("_by_");
            out.push_str(&sanitize(hop));
        }
    }
    out
}

/// One value of the materialized feature table.
#[derive(Debug, Clone, PartialEq)]
pub enum FeatureValue {
    Text(String),
    Number(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeatureColumn {
    pub name: String,
    pub values: Vec<Option<FeatureValue>>,
}

/// Materialized per-anchor features: one row per distinct anchor value in
/// first-occurrence order; the anchor column comes first.
#[derive(Debug, Clone)]
pub struct FeatureTable {
    pub anchor: String,
    pub columns: Vec<FeatureColumn>,
    /// Per feature, how many rows disagreed with the modal value when the
    /// plan's epsilon tolerates approximate dependencies.
    pub violations: Vec<(String, usize)>,
}

impl FeatureTable {
    pub fn row_count(&self) -> usize {
        self.columns.first().map_or(0, |c| c.values.len())
    }

    /// Delimited text with header; `null_marker` stands in for nulls.
    pub fn to_delimited(&self, delimiter: u8, null_marker: &str) -> String {
        let mut wtr = csv::WriterBuilder::new()
            .delimiter(delimiter)
            .from_writer(Vec::new());
        wtr.write_record(self.columns.iter().map(|c| c.name.as_str()))
            .expect("write header");
        for row in 0..self.row_count() {
            let record: Vec<String> = self
                .columns
                .iter()
                .map(|c| match &c.values[row] {
                    None => null_marker.to_string(),
                    Some(FeatureValue::Text(t)) => t.clone(),
                    Some(FeatureValue::Number(x)) => format!("{x}"),
                })
                .collect();
            wtr.write_record(&record).expect("write row");
        }
        String::from_utf8(wtr.into_inner().expect("flush csv")).expect("utf8 csv")
    }
}

/// Computes the feature table: direct features are copied (modal value with
/// a violation count when epsilon allows approximate dependencies),
/// aggregations run bottom-up along each path. Output rows equal the number
/// of distinct anchor values.
pub fn materialize_features(table: &Table, plan: &FeaturePlan) -> Result<FeatureTable> {
    let anchor = table
        .column_id(&plan.anchor)
        .map_err(|_| Error::PlanMismatch(format!("anchor `{}` missing", plan.anchor)))?;
    let anchor_col = table.column(anchor)?;
    let anchor_card = anchor_col.cardinality();
    let exact = plan.epsilon == 0.0;

    let mut columns: Vec<FeatureColumn> = Vec::new();
    let mut violations: Vec<(String, usize)> = Vec::new();

    columns.push(FeatureColumn {
        name: plan.anchor.clone(),
        values: (0..anchor_card as u32)
            .map(|code| {
                (!anchor_col.is_missing(code))
                    .then(|| FeatureValue::Text(anchor_col.value(code).to_string()))
            })
            .collect(),
    });

    for name in &plan.direct {
        let col_id = table
            .column_id(name)
            .map_err(|_| Error::PlanMismatch(format!("direct feature `{name}` missing")))?;
        let col = table.column(col_id)?;
        let (mapping, disagreements) = modal_map(table, anchor, col_id)?;
        if exact && disagreements > 0 {
            return Err(Error::DependencyViolated(format!(
                "direct feature `{name}` has {disagreements} conflicting rows"
            )));
        }
        if disagreements > 0 {
            violations.push((name.clone(), disagreements));
        }
        columns.push(FeatureColumn {
            name: name.clone(),
            values: mapping
                .into_iter()
                .map(|code| {
                    let code = code.expect("every anchor value has rows");
                    (!col.is_missing(code)).then(|| FeatureValue::Text(col.value(code).to_string()))
                })
                .collect(),
        });
    }

    for feature in &plan.aggregations {
        let values = materialize_aggregation(table, plan, anchor, feature, &mut violations)?;
        columns.push(FeatureColumn {
            name: feature.name.clone(),
            values: values
                .into_iter()
                .map(|v| v.map(FeatureValue::Number))
                .collect(),
        });
    }

    Ok(FeatureTable {
        anchor: plan.anchor.clone(),
        columns,
        violations,
    })
}

/// Per anchor code, the modal code of `col` (ties to the smallest code),
/// plus the number of rows disagreeing with the chosen values.
fn modal_map(table: &Table, anchor: ColumnId, col: ColumnId) -> Result<(Vec<Option<u32>>, usize)> {
    let anchor_codes = table.column(anchor)?.codes();
    let col_codes = table.column(col)?.codes();
    let mut counts: Vec<HashMap<u32, usize>> =
        vec![HashMap::new(); table.column(anchor)?.cardinality()];
    for row in 0..table.row_count() {
        *counts[anchor_codes[row] as usize]
            .entry(col_codes[row])
            .or_default() += 1;
    }
    let mut mapping = Vec::with_capacity(counts.len());
    let mut disagreements = 0usize;
    for group in counts {
        if group.is_empty() {
            mapping.push(None);
            continue;
        }
        let total: usize = group.values().sum();
        let (&code, &n) = group
            .iter()
            .max_by(|(ca, na), (cb, nb)| na.cmp(nb).then(cb.cmp(ca)))
            .expect("nonempty group");
        disagreements += total - n;
        mapping.push(Some(code));
    }
    Ok((mapping, disagreements))
}

fn materialize_aggregation(
    table: &Table,
    plan: &FeaturePlan,
    anchor: ColumnId,
    feature: &AggregationFeature,
    violations: &mut Vec<(String, usize)>,
) -> Result<Vec<Option<f64>>> {
    let missing = |name: &str| Error::PlanMismatch(format!("column `{name}` missing"));
    let source = table
        .column_id(&feature.path.source)
        .map_err(|_| missing(&feature.path.source))?;
    let source_col = table.column(source)?;
    let hop_ids: Vec<ColumnId> = feature
        .path
        .hops
        .iter()
        .map(|h| table.column_id(h).map_err(|_| missing(h)))
        .collect::<Result<_>>()?;
    if hop_ids.last() != Some(&anchor) {
        return Err(Error::PlanMismatch(format!(
            "feature `{}` does not end at the anchor",
            feature.name
        )));
    }
    if feature.functions.len() != hop_ids.len() {
        return Err(Error::PlanMismatch(format!(
            "feature `{}` has {} functions for {} hops",
            feature.name,
            feature.functions.len(),
            hop_ids.len()
        )));
    }

    // First hop: group row-level source values by the first key.
    let first_key = table.column(hop_ids[0])?;
    let key_codes = first_key.codes();
    let card = first_key.cardinality();
    let f0 = feature.functions[0];
    let mut level: Vec<Option<f64>> = if source_col.is_numeric() {
        let mut groups: Vec<Vec<f64>> = vec![Vec::new(); card];
        for row in 0..table.row_count() {
            if let Some(v) = source_col.numeric_value(source_col.codes()[row]) {
                groups[key_codes[row] as usize].push(v);
            }
        }
        groups.into_iter().map(|g| f0.apply_numeric(&g)).collect()
    } else {
        let mut groups: Vec<Vec<u32>> = vec![Vec::new(); card];
        for row in 0..table.row_count() {
            let code = source_col.codes()[row];
            if !source_col.is_missing(code) {
                groups[key_codes[row] as usize].push(code);
            }
        }
        groups
            .into_iter()
            .map(|g| {
                f0.apply_categorical(&g).map(Some).ok_or_else(|| {
                    Error::PlanMismatch(format!(
                        "function {} does not apply to categorical source `{}`",
                        f0.name(),
                        feature.path.source
                    ))
                })
            })
            .collect::<Result<_>>()?
    };

    // Chained hops: map the previous key to the next via the rows, then
    // aggregate the previous level per next-key group.
    for (hop_idx, window) in hop_ids.windows(2).enumerate() {
        let (prev, next) = (window[0], window[1]);
        let f = feature.functions[hop_idx + 1];
        let (assoc, disagreements) = modal_map(table, prev, next)?;
        if disagreements > 0 {
            if plan.epsilon == 0.0 {
                return Err(Error::DependencyViolated(format!(
                    "hop `{}` -> `{}` of feature `{}` is not functional",
                    table.column(prev)?.name(),
                    table.column(next)?.name(),
                    feature.name
                )));
            }
            violations.push((feature.name.clone(), disagreements));
        }
        let next_card = table.column(next)?.cardinality();
        let mut groups: Vec<Vec<f64>> = vec![Vec::new(); next_card];
        for (prev_code, value) in level.iter().enumerate() {
            if let (Some(next_code), Some(v)) = (assoc[prev_code], value) {
                groups[next_code as usize].push(*v);
            }
        }
        level = groups
            .into_iter()
            .map(|g| {
                if g.is_empty() && !matches!(f, AggFn::Count | AggFn::NDistinct) {
                    None
                } else {
                    f.apply_numeric(&g)
                }
            })
            .collect();
    }

    Ok(level)
}
