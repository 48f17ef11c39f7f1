//! Search for the best determinant set of a chosen target column.
//!
//! ```bash
//! cargo run -p tabletree --example find_dependencies
//! ```

use tabletree::{best, descendants, synth, ColumnSet, ErrorMeasure, EvalCounter, SearchConfig};

fn main() {
    let table = synth::order_table(1000, 3);
    let y = ColumnSet::single(table.column_id("orderID").unwrap());

    // Everything functionally determined by the order id.
    let mut counter = EvalCounter::new();
    let determined = descendants(&table, &y, 0.0, ErrorMeasure::G3, &mut counter).unwrap();
    println!(
        "orderID determines: {:?} ({} evals)",
        table.names(&determined.difference(&y)),
        counter.value()
    );

    // The shortest column set that determines the order id back.
    let candidates = table.all_columns().difference(&y);
    let cfg = SearchConfig::default();
    let best = best::shortest_with_error_bound(&table, &y, &candidates, &cfg)
        .expect("search runs")
        .expect("an exact determinant exists");
    println!(
        "shortest determinant of orderID: {:?} (error {}, {} runs)",
        table.names(&best.columns),
        best.achieved_error,
        best.runs_used
    );
}
