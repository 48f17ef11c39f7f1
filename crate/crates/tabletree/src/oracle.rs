//! Brute-force ground truth for small tables and Monte-Carlo checks of the
//! randomized-search distribution claims.
//!
//! Everything here recomputes from scratch on an independent, sort-based
//! counting path (the engine hashes); the two implementations cross-validate
//! each other in the test suites. Enumeration is guarded to 16 columns.

use rand::rngs::StdRng;

use crate::colset::{ColumnId, ColumnSet};
use crate::error::{Error, Result};
use crate::measure::{ErrorMeasure, EvalCounter};
use crate::search::{fa_minimal_unique, random_permutation};
use crate::synth::planted_pair;
use crate::table::Table;

const MAX_ORACLE_COLUMNS: usize = 16;

fn guard(table: &Table) -> Result<()> {
    if table.col_count() > MAX_ORACLE_COLUMNS {
        return Err(Error::OracleTooWide {
            max: MAX_ORACLE_COLUMNS,
            n: table.col_count(),
        });
    }
    Ok(())
}

/// Sort-based distinct row count: materialize the projected tuples, sort,
/// count boundaries. Deliberately not the engine's hash path.
pub fn distinct_count_sorted(table: &Table, cols: &ColumnSet) -> Result<usize> {
    table.validate_set(cols)?;
    if cols.is_empty() {
        return Ok(1);
    }
    let mut rows: Vec<Vec<u32>> = (0..table.row_count())
        .map(|row| cols.iter().map(|id| table.cell_code(row, id)).collect())
        .collect();
    rows.sort_unstable();
    let mut count = 1usize;
    for i in 1..rows.len() {
        if rows[i] != rows[i - 1] {
            count += 1;
        }
    }
    Ok(count)
}

/// Sort-based g3: sort rows by (determinant, target) projection, then take
/// the longest constant-target run inside each determinant run.
pub fn g3_error_sorted(table: &Table, c: &ColumnSet, y: &ColumnSet) -> Result<f64> {
    table.validate_set(c)?;
    table.validate_set(y)?;
    let mut rows: Vec<(Vec<u32>, Vec<u32>)> = (0..table.row_count())
        .map(|row| {
            (
                c.iter().map(|id| table.cell_code(row, id)).collect(),
                y.iter().map(|id| table.cell_code(row, id)).collect(),
            )
        })
        .collect();
    rows.sort_unstable();
    let mut kept = 0usize;
    let mut i = 0;
    while i < rows.len() {
        let mut group_end = i;
        while group_end < rows.len() && rows[group_end].0 == rows[i].0 {
            group_end += 1;
        }
        let mut best_run = 0usize;
        let mut j = i;
        while j < group_end {
            let mut run_end = j;
            while run_end < group_end && rows[run_end].1 == rows[j].1 {
                run_end += 1;
            }
            best_run = best_run.max(run_end - j);
            j = run_end;
        }
        kept += best_run;
        i = group_end;
    }
    Ok(1.0 - kept as f64 / table.row_count() as f64)
}

fn error_sorted(table: &Table, c: &ColumnSet, y: &ColumnSet, measure: ErrorMeasure) -> Result<f64> {
    match measure {
        ErrorMeasure::G3 => g3_error_sorted(table, c, y),
        ErrorMeasure::Ratio => {
            let rc = distinct_count_sorted(table, c)?;
            let rcy = distinct_count_sorted(table, &c.union(y))?;
            Ok(1.0 - rc as f64 / rcy as f64)
        }
    }
}

/// Nonempty subsets of `pool` up to `max_size`, in (size, lexicographic)
/// order.
fn subsets_by_size(pool: &[ColumnId], max_size: usize) -> Vec<ColumnSet> {
    let n = pool.len();
    let mut out = Vec::new();
    for size in 1..=max_size.min(n) {
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            out.push(combo.iter().map(|&i| pool[i]).collect());
            // advance to the next index combination
            let mut i = size;
            while i > 0 && combo[i - 1] == i - 1 + n - size {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            combo[i - 1] += 1;
            for j in i..size {
                combo[j] = combo[j - 1] + 1;
            }
        }
    }
    out
}

/// Exhaustive set of minimal uniques. For a single-row table the empty set
/// is the only minimal unique.
pub fn all_minimal_uniques(table: &Table) -> Result<Vec<ColumnSet>> {
    guard(table)?;
    let r = table.row_count();
    if r == 1 {
        return Ok(vec![ColumnSet::new()]);
    }
    let pool: Vec<ColumnId> = (0..table.col_count()).collect();
    let mut found: Vec<ColumnSet> = Vec::new();
    for set in subsets_by_size(&pool, pool.len()) {
        if found.iter().any(|m| m.is_subset_of(&set)) {
            continue; // superset of a known solution: not minimal
        }
        if distinct_count_sorted(table, &set)? == r {
            found.push(set);
        }
    }
    Ok(found)
}

/// Exhaustive set of minimal `C` disjoint from `y` with
/// `error(C -> y) <= epsilon` under `measure`.
pub fn all_minimal_fds(
    table: &Table,
    y: &ColumnSet,
    epsilon: f64,
    measure: ErrorMeasure,
) -> Result<Vec<ColumnSet>> {
    guard(table)?;
    let pool: Vec<ColumnId> = (0..table.col_count()).filter(|&c| !y.contains(c)).collect();
    let mut found: Vec<ColumnSet> = Vec::new();
    for set in subsets_by_size(&pool, pool.len()) {
        if found.iter().any(|m| m.is_subset_of(&set)) {
            continue;
        }
        if error_sorted(table, &set, y, measure)? <= epsilon {
            found.push(set);
        }
    }
    Ok(found)
}

/// Exhaustive referee for the minimal-error search: the lexicographically
/// least among the minimum-size sets achieving the minimum achievable error
/// within size `d`, or none when that minimum exceeds `epsilon`. Searches all
/// columns outside `y`.
pub fn grid_shortest(
    table: &Table,
    y: &ColumnSet,
    epsilon: f64,
    d: usize,
    measure: ErrorMeasure,
) -> Result<Option<(ColumnSet, f64)>> {
    guard(table)?;
    let pool: Vec<ColumnId> = (0..table.col_count()).filter(|&c| !y.contains(c)).collect();
    let mut best: Option<(ColumnSet, f64)> = None;
    for set in subsets_by_size(&pool, d) {
        let err = error_sorted(table, &set, y, measure)?;
        if best.as_ref().is_none_or(|(_, b)| err < *b) {
            let done = err == 0.0;
            best = Some((set, err));
            if done {
                break; // smallest size first, lexicographic within size
            }
        }
    }
    Ok(best.filter(|(_, err)| *err <= epsilon))
}

/// Outcome statistics of repeated FA runs on a table with two planted
/// disjoint minimal uniques.
#[derive(Debug, Clone)]
pub struct PreferenceStats {
    pub trials: usize,
    /// Trials won by the first planted set (the `d1`-sized one).
    pub wins_shorter: usize,
    /// Per trial, the largest permuted index of the second (`d2`-sized)
    /// planted set divided by the column count.
    pub max_index_samples: Vec<f64>,
}

impl PreferenceStats {
    pub fn win_frequency(&self) -> f64 {
        if self.trials == 0 {
            0.0
        } else {
            self.wins_shorter as f64 / self.trials as f64
        }
    }

    /// Empirical `P(M <= x)` over the recorded max-index samples.
    pub fn max_index_cdf(&self, x: f64) -> f64 {
        if self.max_index_samples.is_empty() {
            return 0.0;
        }
        let hits = self.max_index_samples.iter().filter(|&&m| m <= x).count();
        hits as f64 / self.max_index_samples.len() as f64
    }
}

/// Plants disjoint minimal uniques of sizes `d1` and `d2` in an `n`-column
/// table and runs FA once per trial with a fresh random permutation,
/// recording which planted set was returned and the normalized largest
/// permuted index of the second set.
pub fn preference_trial(
    d1: usize,
    d2: usize,
    n: usize,
    trials: usize,
    rng: &mut StdRng,
) -> Result<PreferenceStats> {
    let (table, first, second) = planted_pair(n, d1, d2, 0x9e3779b97f4a7c15 ^ n as u64)?;
    let mut wins_shorter = 0usize;
    let mut max_index_samples = Vec::with_capacity(trials);
    for _ in 0..trials {
        let perm = random_permutation(n, rng)?;
        let position = |set: &ColumnSet| -> usize {
            set.iter()
                .map(|id| perm.as_slice().iter().position(|&x| x == id).unwrap())
                .max()
                .unwrap()
        };
        max_index_samples.push((position(&second) + 1) as f64 / n as f64);
        let mut counter = EvalCounter::new();
        let out = fa_minimal_unique(&table, &perm, d1.max(d2), &mut counter)?;
        let solution = out
            .solution
            .expect("one of the planted uniques always fits the budget");
        if solution == first {
            wins_shorter += 1;
        } else {
            debug_assert_eq!(solution, second);
        }
    }
    Ok(PreferenceStats {
        trials,
        wins_shorter,
        max_index_samples,
    })
}
