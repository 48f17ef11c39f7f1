//! Measure the distinct-count evaluation cost of forward addition against
//! the backward-elimination baseline, and the preference of random-order
//! forward addition for shorter keys.
//!
//! ```bash
//! cargo run -p tabletree --example search_cost
//! ```

use rand::rngs::StdRng;
use rand::SeedableRng;
use tabletree::{
    be_minimal_unique, fa_minimal_unique, oracle, random_permutation, synth, EvalCounter,
};

fn main() {
    // A 100-column table whose only key has 3 columns: forward addition
    // needs a few dozen evaluations, backward elimination always needs 100.
    let n = 100;
    let (table, planted) = synth::planted_single(n, 3, 42).expect("plant fits");
    println!("planted key: {:?}", table.names(&planted));

    let mut rng = StdRng::seed_from_u64(0);
    let mut fa = Vec::new();
    let mut be = Vec::new();
    for _ in 0..100 {
        let perm = random_permutation(n, &mut rng).unwrap();
        let mut counter = EvalCounter::new();
        let out = fa_minimal_unique(&table, &perm, 3, &mut counter).unwrap();
        assert_eq!(out.solution.unwrap(), planted);
        fa.push(out.evals);
        let mut counter = EvalCounter::new();
        be_minimal_unique(&table, &perm, &mut counter).unwrap();
        be.push(counter.value());
    }
    fa.sort_unstable();
    be.sort_unstable();
    println!(
        "forward addition evals over 100 runs: min {} median {} max {}",
        fa[0], fa[50], fa[99]
    );
    println!(
        "backward elimination evals:           min {} median {} max {}",
        be[0], be[50], be[99]
    );

    // With competing keys of sizes 2 and 3 planted among 40 columns, the
    // shorter one wins about 3/5 of the runs.
    let mut rng = StdRng::seed_from_u64(1);
    let stats = oracle::preference_trial(2, 3, 40, 2000, &mut rng).expect("trial runs");
    println!(
        "shorter of two planted keys returned in {:.1}% of {} runs (expected ~60%)",
        100.0 * stats.win_frequency(),
        stats.trials
    );
}
