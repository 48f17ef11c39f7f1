//! Multi-run searches over random permutations: the shortest solution under
//! an error bound, and the shortest solution at the minimal achievable error
//! (hill climbing on the error with greedy column addition).

use rand::rngs::StdRng;
use rand::SeedableRng;
use serde::{Deserialize, Serialize};

use crate::colset::{ColumnId, ColumnSet};
use crate::error::{Error, Result};
use crate::measure::{fd_error, ErrorMeasure, EvalCounter};
use crate::search::{fa_fd, fa_minimal_unique, random_permutation};
use crate::table::Table;

/// Which multi-run search a schema-tree split uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Optimize {
    /// Shortest solution within the error bound.
    #[default]
    Size,
    /// Minimal achievable error first, then shortest size at that error.
    ErrorThenSize,
}

/// Shared knobs for the randomized searches.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    /// Error bound epsilon in `[0, 1]`.
    pub epsilon: f64,
    /// Size bound D: solutions use at most this many columns.
    pub max_size: usize,
    /// Consecutive non-improving runs tolerated before giving up.
    pub max_failures: usize,
    /// RNG seed; identical configs produce identical results.
    pub seed: u64,
    /// Dependency error measure.
    pub measure: ErrorMeasure,
    /// Search flavor used per schema-tree split.
    #[serde(default)]
    pub optimize: Optimize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            epsilon: 0.0,
            max_size: 3,
            max_failures: 10,
            seed: 0,
            measure: ErrorMeasure::G3,
            optimize: Optimize::Size,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.epsilon) {
            return Err(Error::InvalidConfig(format!(
                "epsilon {} outside [0, 1]",
                self.epsilon
            )));
        }
        if self.max_size < 1 {
            return Err(Error::InvalidConfig("max_size must be at least 1".into()));
        }
        if self.max_failures < 1 {
            return Err(Error::InvalidConfig(
                "max_failures must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// Best solution found by a multi-run search.
#[derive(Debug, Clone, PartialEq)]
pub struct BestSolution {
    pub columns: ColumnSet,
    /// Error of `columns -> y`, recomputed from the table on return.
    pub achieved_error: f64,
    /// FA runs performed, successful or not.
    pub runs_used: usize,
    /// Distinct-count evaluations charged over the whole search.
    pub evals: u64,
}

/// Shortest solution `C` with `error(C -> y) <= epsilon` and `|C| <= D`,
/// found by repeated FA runs over fresh random permutations.
///
/// Once an incumbent of size `s` exists the sweep budget drops to `s - 1`,
/// so any later success is a strict improvement; the search stops after
/// `max_failures` consecutive non-improving runs, or as soon as a size-1
/// solution appears.
pub fn shortest_with_error_bound(
    table: &Table,
    y: &ColumnSet,
    candidates: &ColumnSet,
    cfg: &SearchConfig,
) -> Result<Option<BestSolution>> {
    cfg.validate()?;
    let mut rng = StdRng::seed_from_u64(cfg.seed);
    let mut counter = EvalCounter::new();
    let mut runs = 0usize;
    let best = bounded_search(
        table,
        y,
        candidates,
        cfg.epsilon,
        cfg,
        None,
        &mut rng,
        &mut counter,
        &mut runs,
    )?;
    Ok(best.map(|columns| finish(table, y, columns, cfg.measure, runs, &counter)))
}

/// Shortest minimal unique of size at most `cfg.max_size`: the
/// whole-table-key special case, run through [`fa_minimal_unique`] so the
/// evaluation accounting matches the single-run cost model.
pub fn shortest_minimal_unique(table: &Table, cfg: &SearchConfig) -> Result<Option<BestSolution>> {
    cfg.validate()?;
    let mut rng = StdRng::seed_from_u64(cfg.seed);
    let mut counter = EvalCounter::new();
    let n = table.col_count();
    let mut best: Option<ColumnSet> = None;
    let mut failures = 0usize;
    let mut runs = 0usize;
    while failures < cfg.max_failures && best.as_ref().is_none_or(|b| b.len() > 1) {
        let budget = match &best {
            Some(b) => b.len() - 1,
            None => cfg.max_size,
        };
        if budget == 0 {
            break;
        }
        let perm = random_permutation(n, &mut rng)?;
        runs += 1;
        let out = fa_minimal_unique(table, &perm, budget, &mut counter)?;
        match out.solution {
            Some(s) => {
                best = Some(s);
                failures = 0;
            }
            None => failures += 1,
        }
    }
    Ok(best.map(|columns| {
        let rowid = ColumnSet::single(table.rowid_id());
        let err = fd_error(table, &columns, &rowid, cfg.measure).expect("solution re-verifies");
        BestSolution {
            columns,
            achieved_error: err,
            runs_used: runs,
            evals: counter.value(),
        }
    }))
}

/// Shortest solution at the minimal achievable error within the bound:
/// hill-climbs the error downward (FA run at the current target, then greedy
/// column addition), and finishes with a bounded-size pass at the final
/// error, seeded with the incumbent.
pub fn shortest_min_error(
    table: &Table,
    y: &ColumnSet,
    candidates: &ColumnSet,
    cfg: &SearchConfig,
) -> Result<Option<BestSolution>> {
    cfg.validate()?;
    let mut rng = StdRng::seed_from_u64(cfg.seed);
    let mut counter = EvalCounter::new();
    let mut runs = 0usize;

    let mut error_target = cfg.epsilon;
    let mut incumbent: Option<ColumnSet> = None;
    let mut failures = 0usize;
    while failures < cfg.max_failures && error_target > 0.0 {
        let perm = random_permutation(table.col_count(), &mut rng)?;
        runs += 1;
        let out = fa_fd(
            table,
            y,
            error_target,
            cfg.max_size,
            &perm,
            candidates,
            &ColumnSet::new(),
            cfg.measure,
            &mut counter,
        )?;
        let mut improved = false;
        if let Some(s) = out.solution {
            let extended = col_add(table, &s, y, cfg.max_size, candidates, cfg.measure)?;
            let err = fd_error(table, &extended, y, cfg.measure)?;
            match incumbent {
                None => {
                    incumbent = Some(extended);
                    error_target = err;
                    improved = true;
                }
                Some(_) if err < error_target => {
                    incumbent = Some(extended);
                    error_target = err;
                    improved = true;
                }
                Some(_) => {}
            }
        }
        if improved {
            failures = 0;
        } else {
            failures += 1;
        }
    }

    // Final shortest-size pass at the error floor. With epsilon = 0 the climb
    // is vacuous and this is the whole search; with no incumbent at a
    // positive epsilon there is nothing achievable and the answer is none.
    if incumbent.is_none() && cfg.epsilon > 0.0 {
        return Ok(None);
    }
    let best = bounded_search(
        table,
        y,
        candidates,
        error_target,
        cfg,
        incumbent,
        &mut rng,
        &mut counter,
        &mut runs,
    )?;
    Ok(best.map(|columns| finish(table, y, columns, cfg.measure, runs, &counter)))
}

/// Greedy column addition: while below `d_max`, append the candidate column
/// whose addition decreases the dependency error the most; stop at error
/// zero or when no strict decrease exists. Ties take the smaller column id.
pub fn col_add(
    table: &Table,
    s: &ColumnSet,
    y: &ColumnSet,
    d_max: usize,
    candidates: &ColumnSet,
    measure: ErrorMeasure,
) -> Result<ColumnSet> {
    let mut current = s.clone();
    let mut current_err = fd_error(table, &current, y, measure)?;
    while current.len() < d_max && current_err > 0.0 {
        let mut best: Option<(f64, ColumnId)> = None;
        for id in candidates.iter().filter(|&id| !current.contains(id)) {
            let err = fd_error(table, &current.with(id), y, measure)?;
            if err < current_err && best.is_none_or(|(b, bid)| err < b || (err == b && id < bid)) {
                best = Some((err, id));
            }
        }
        match best {
            Some((err, id)) => {
                current.insert(id);
                current_err = err;
            }
            None => break,
        }
    }
    Ok(current)
}

/// The bounded-size improvement loop shared by the public searches: FA runs
/// at `epsilon`, sweep budget one below the incumbent size.
#[allow(clippy::too_many_arguments)]
fn bounded_search(
    table: &Table,
    y: &ColumnSet,
    candidates: &ColumnSet,
    epsilon: f64,
    cfg: &SearchConfig,
    mut best: Option<ColumnSet>,
    rng: &mut StdRng,
    counter: &mut EvalCounter,
    runs: &mut usize,
) -> Result<Option<ColumnSet>> {
    if candidates.is_empty() {
        return Ok(best);
    }
    let mut failures = 0usize;
    while failures < cfg.max_failures && best.as_ref().is_none_or(|b| b.len() > 1) {
        let budget = match &best {
            Some(b) => b.len() - 1,
            None => cfg.max_size,
        };
        if budget == 0 {
            break;
        }
        let perm = random_permutation(table.col_count(), rng)?;
        *runs += 1;
        let out = fa_fd(
            table,
            y,
            epsilon,
            budget,
            &perm,
            candidates,
            &ColumnSet::new(),
            cfg.measure,
            counter,
        )?;
        match out.solution {
            Some(s) => {
                best = Some(s);
                failures = 0;
            }
            None => failures += 1,
        }
    }
    Ok(best)
}

fn finish(
    table: &Table,
    y: &ColumnSet,
    columns: ColumnSet,
    measure: ErrorMeasure,
    runs: usize,
    counter: &EvalCounter,
) -> BestSolution {
    let achieved_error = fd_error(table, &columns, y, measure).expect("solution re-verifies");
    BestSolution {
        columns,
        achieved_error,
        runs_used: runs,
        evals: counter.value(),
    }
}
