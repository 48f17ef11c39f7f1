//! Find the shortest minimal unique column combination of a table.
//!
//! ```bash
//! cargo run -p tabletree --example profile
//! ```

use tabletree::{best, synth, SearchConfig};

fn main() {
    // The small embedded order sample: 8 rows, 12 columns.
    let sample = synth::order_sample();
    let cfg = SearchConfig {
        max_failures: 20,
        ..SearchConfig::default()
    };
    let best = best::shortest_minimal_unique(&sample, &cfg)
        .expect("search runs")
        .expect("the sample has a small key");
    println!("order sample ({} rows):", sample.row_count());
    println!(
        "  shortest minimal unique: {:?} (size {}, {} runs, {} distinct-count evals)",
        sample.names(&best.columns),
        best.columns.len(),
        best.runs_used,
        best.evals
    );

    // A larger synthetic order table with the same layered structure.
    let table = synth::order_table(1000, 7);
    let best = best::shortest_minimal_unique(&table, &cfg)
        .expect("search runs")
        .expect("a key exists");
    println!("synthetic order table ({} rows):", table.row_count());
    println!(
        "  shortest minimal unique: {:?} (size {}, {} runs, {} evals)",
        table.names(&best.columns),
        best.columns.len(),
        best.runs_used,
        best.evals
    );
}
