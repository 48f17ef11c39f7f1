//! Derive a per-customer feature table from the discovered schema tree.
//!
//! ```bash
//! cargo run -p tabletree --example feature_engineering
//! ```

use tabletree::{
    build_schema_tree, materialize_features, plan_features, synth, AggregationConfig, SearchConfig,
};

fn main() {
    let table = synth::order_table(1000, 1);
    let tree = build_schema_tree(&table, &SearchConfig::default()).expect("tree builds");
    let anchor = table.column_id("customerID").unwrap();

    let plan =
        plan_features(&tree, &table, anchor, &AggregationConfig::default()).expect("plan builds");
    println!("anchor: {}", plan.anchor);
    println!(
        "direct features (one value per customer): {:?}",
        plan.direct
    );
    println!("aggregated features: {}", plan.aggregations.len());
    for feature in plan.aggregations.iter().take(8) {
        let fns: Vec<&str> = feature.functions.iter().map(|f| f.name()).collect();
        println!(
            "  {:<40} {} => {} via {:?}",
            feature.name,
            feature.path.source,
            feature.path.hops.join(" => "),
            fns
        );
    }
    println!("  ...");

    let features = materialize_features(&table, &plan).expect("features materialize");
    println!(
        "materialized {} rows x {} columns; first rows:",
        features.row_count(),
        features.columns.len()
    );
    let csv = features.to_delimited(b',', "");
    for line in csv.lines().take(4) {
        let short: String = line.chars().take(100).collect();
        println!("  {short}...");
    }
}
