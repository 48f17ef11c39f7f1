//! Compare the two approximate-dependency error measures on one table.
//!
//! ```bash
//! cargo run -p tabletree --example error_measures
//! ```

use tabletree::{g3_error, is_fd, ratio_error, synth, ColumnSet, ErrorMeasure, EvalCounter};

fn main() {
    let table = synth::order_sample();
    let set = |name: &str| ColumnSet::single(table.column_id(name).unwrap());

    let pairs = [
        ("productID", "price"),
        ("customerID", "phoneno"),
        ("orderID", "customerID"),
        ("ptype", "price"),
    ];
    println!("{:<28} {:>10} {:>10}", "dependency", "g3", "ratio");
    for (c, y) in pairs {
        let g3 = g3_error(&table, &set(c), &set(y)).unwrap();
        let ratio = ratio_error(&table, &set(c), &set(y)).unwrap();
        println!("{:<28} {:>10.4} {:>10.4}", format!("{c} -> {y}"), g3, ratio);
    }

    // The two measures agree exactly at zero, so approximate checks at
    // epsilon = 0 are measure-independent.
    let mut counter = EvalCounter::new();
    let exact = is_fd(
        &table,
        &set("customerID"),
        &set("phoneno"),
        0.0,
        ErrorMeasure::Ratio,
        &mut counter,
    )
    .unwrap();
    println!("customerID -> phoneno holds exactly: {exact}");

    // product -> price misses at 10% tolerance but passes at 20%.
    for epsilon in [0.1, 0.2] {
        let ok = is_fd(
            &table,
            &set("productID"),
            &set("price"),
            epsilon,
            ErrorMeasure::G3,
            &mut counter,
        )
        .unwrap();
        println!("productID -> price within {epsilon}: {ok}");
    }
}
