//! One run of the forward-addition (FA) sweep search, plus the
//! backward-elimination baseline.
//!
//! FA scans a column permutation. Each sweep finds the first prefix position
//! at which the search predicate (row uniqueness, or dependency error within
//! bound) starts to hold, keeps that boundary column, and discards everything
//! after it. Because the predicate is monotone along the prefix, the boundary
//! is located by binary search, so a run with `d` sweeps over `N` columns
//! costs `O(d log N)` distinct-count evaluations, against `O(N)` for
//! backward elimination.

use rand::Rng;

use crate::colset::{ColumnId, ColumnSet};
use crate::error::{Error, Result};
use crate::measure::{descendants, distinct_count, is_fd, ErrorMeasure, EvalCounter};
use crate::table::Table;

/// A bijection on `{0..N-1}`: the column visit order of one FA run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    order: Vec<ColumnId>,
}

impl Permutation {
    /// Validates that `order` is a permutation of `0..order.len()`.
    pub fn new(order: Vec<ColumnId>) -> Result<Self> {
        if order.is_empty() {
            return Err(Error::EmptyPermutation);
        }
        let n = order.len();
        let mut seen = vec![false; n];
        for &id in &order {
            if id >= n || seen[id] {
                return Err(Error::NotAPermutation(n));
            }
            seen[id] = true;
        }
        Ok(Permutation { order })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Permutation::new((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn as_slice(&self) -> &[ColumnId] {
        &self.order
    }
}

/// Uniform random permutation of `0..n` from a seeded stream; the same seed
/// always yields the same permutation.
pub fn random_permutation<R: Rng>(n: usize, rng: &mut R) -> Result<Permutation> {
    if n == 0 {
        return Err(Error::EmptyPermutation);
    }
    let mut order: Vec<ColumnId> = (0..n).collect();
    // Fisher-Yates, explicit so the draw order is pinned by this crate rather
    // than by SliceRandom internals.
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        order.swap(i, j);
    }
    Ok(Permutation { order })
}

/// Result of one FA run.
#[derive(Debug, Clone)]
pub struct FaOutcome {
    /// The solution, ordered by position in the permuted list (the reverse of
    /// selection order), or `None` if no solution fit the sweep budget.
    pub solution: Option<ColumnSet>,
    /// Sweeps performed; equals the solution size when one is present.
    pub sweeps_used: usize,
    /// Distinct-count evaluations charged during this run.
    pub evals: u64,
}

/// Largest remaining-list length that is scanned linearly instead of
/// bisected. Four keeps every sweep within the `ceil(log2 N) + 2` evaluation
/// allowance that the run budget is stated in.
const LINEAR_SCAN_MAX: usize = 4;

/// Smallest 1-based position `h` in `remaining` at which
/// `holds(base ∪ remaining[..h])` is true.
///
/// The predicate must be monotone along the prefix (false then true), and the
/// caller guarantees it holds for the full list; that boundary is never
/// re-evaluated. Costs at most `ceil(log2 |remaining|)` predicate
/// evaluations when bisecting, `min(h, LINEAR_SCAN_MAX)` otherwise.
pub fn sweep_select<F>(
    table: &Table,
    base: &ColumnSet,
    remaining: &[ColumnId],
    counter: &mut EvalCounter,
    mut holds: F,
) -> Result<usize>
where
    F: FnMut(&Table, &ColumnSet, &mut EvalCounter) -> Result<bool>,
{
    debug_assert!(!remaining.is_empty());
    let prefix_set = |h: usize| {
        let mut set = base.clone();
        for &id in &remaining[..h] {
            set.insert(id);
        }
        set
    };
    if remaining.len() <= LINEAR_SCAN_MAX {
        for h in 1..=remaining.len() {
            if h == remaining.len() || holds(table, &prefix_set(h), counter)? {
                return Ok(h);
            }
        }
        unreachable!("caller guarantees the full prefix satisfies the predicate");
    }
    let mut lo = 1usize;
    let mut hi = remaining.len();
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if holds(table, &prefix_set(mid), counter)? {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(lo)
}

/// One FA run for a minimal unique of size at most `d_max`.
///
/// Each sweep selects the first prefix position of the remaining permutation
/// at which the prefix (plus the columns already chosen) reaches the full
/// distinct row count, keeps that column, and truncates the list before it.
/// A returned solution is a minimal unique: removal of any single column
/// drops the distinct count below the row count.
pub fn fa_minimal_unique(
    table: &Table,
    l0: &Permutation,
    d_max: usize,
    counter: &mut EvalCounter,
) -> Result<FaOutcome> {
    if l0.len() != table.col_count() {
        return Err(Error::NotAPermutation(table.col_count()));
    }
    if d_max == 0 {
        return Err(Error::InvalidConfig("size bound must be at least 1".into()));
    }
    let r_target = table.row_count();
    let start = counter.value();
    if r_target == 1 {
        // A single-row table is identified by the empty set.
        return Ok(FaOutcome {
            solution: Some(ColumnSet::new()),
            sweeps_used: 0,
            evals: 0,
        });
    }

    let mut selected: Vec<ColumnId> = Vec::new();
    let mut remaining: Vec<ColumnId> = l0.as_slice().to_vec();
    // Invariant at each sweep: r(selected ∪ remaining) = R. It holds on
    // entry because the table has no duplicate rows, and each truncation
    // keeps exactly the prefix that satisfied the predicate.
    let solved = loop {
        let base: ColumnSet = selected.iter().copied().collect();
        let h = sweep_select(table, &base, &remaining, counter, |t, set, ctr| {
            Ok(distinct_count(t, set, ctr)? == r_target)
        })?;
        selected.push(remaining[h - 1]);
        remaining.truncate(h - 1);
        if remaining.is_empty() {
            break true; // r(selected) equals the last satisfied prefix
        }
        let current: ColumnSet = selected.iter().copied().collect();
        if distinct_count(table, &current, counter)? == r_target {
            break true;
        }
        if selected.len() >= d_max {
            break false;
        }
    };

    Ok(FaOutcome {
        solution: solved.then(|| selected.iter().rev().copied().collect()),
        sweeps_used: selected.len(),
        evals: counter.value() - start,
    })
}

/// One FA run for an approximate dependency `C -> y` with error within
/// `epsilon` and `|C| <= d_max`.
///
/// The permutation is filtered down to `candidates` minus the seed `c0`;
/// the first sweep checks the full candidate prefix once and returns the
/// no-solution outcome if even that fails. With the ratio measure the
/// candidates must be exact descendants of `y` (otherwise the prefix error is
/// not monotone and bisection would be unsound); this contract is validated
/// up front against a scratch counter.
#[allow(clippy::too_many_arguments)]
pub fn fa_fd(
    table: &Table,
    y: &ColumnSet,
    epsilon: f64,
    d_max: usize,
    l0: &Permutation,
    candidates: &ColumnSet,
    c0: &ColumnSet,
    measure: ErrorMeasure,
    counter: &mut EvalCounter,
) -> Result<FaOutcome> {
    if y.is_empty() {
        return Err(Error::EmptyColumnSet);
    }
    if l0.len() != table.col_count() {
        return Err(Error::NotAPermutation(table.col_count()));
    }
    if d_max == 0 {
        return Err(Error::InvalidConfig("size bound must be at least 1".into()));
    }
    if epsilon < 0.0 {
        return Err(Error::InvalidConfig("epsilon must be non-negative".into()));
    }
    table.validate_set(y)?;
    table.validate_set(candidates)?;
    if candidates.intersects(y) {
        return Err(Error::CandidatesOverlapTarget);
    }
    if !c0.is_subset_of(candidates) {
        return Err(Error::SeedOutsideCandidates);
    }
    if measure == ErrorMeasure::Ratio && !y.contains(table.rowid_id()) {
        let mut scratch = EvalCounter::new();
        let exact = descendants(table, y, 0.0, measure, &mut scratch)?;
        for id in candidates.iter() {
            if !exact.contains(id) {
                return Err(Error::NonDescendantCandidate(id));
            }
        }
    }

    let start = counter.value();
    let outcome = |solution: Option<ColumnSet>, sweeps: usize, counter: &EvalCounter| FaOutcome {
        solution,
        sweeps_used: sweeps,
        evals: counter.value() - start,
    };

    // Seeded start: accept c0 outright when it already satisfies the bound.
    if !c0.is_empty() && is_fd(table, c0, y, epsilon, measure, counter)? {
        return Ok(outcome(Some(c0.clone()), 0, counter));
    }

    let remaining_all: Vec<ColumnId> = l0
        .as_slice()
        .iter()
        .copied()
        .filter(|&id| candidates.contains(id) && !c0.contains(id))
        .collect();
    if remaining_all.is_empty() {
        return Ok(outcome(None, 0, counter));
    }
    let full: ColumnSet = c0.union(&remaining_all.iter().copied().collect());
    if !is_fd(table, &full, y, epsilon, measure, counter)? {
        // Even every candidate together misses the bound; no prefix can win.
        return Ok(outcome(None, 0, counter));
    }

    let mut selected: Vec<ColumnId> = Vec::new();
    let mut remaining = remaining_all;
    let solved = loop {
        let base: ColumnSet = c0.union(&selected.iter().copied().collect());
        let h = sweep_select(table, &base, &remaining, counter, |t, set, ctr| {
            is_fd(t, set, y, epsilon, measure, ctr)
        })?;
        selected.push(remaining[h - 1]);
        remaining.truncate(h - 1);
        if remaining.is_empty() {
            break true;
        }
        let current = c0.union(&selected.iter().copied().collect());
        if is_fd(table, &current, y, epsilon, measure, counter)? {
            break true;
        }
        if selected.len() >= d_max {
            break false;
        }
    };

    let sweeps = selected.len();
    let solution = solved.then(|| {
        let mut set: ColumnSet = c0.clone();
        for &id in selected.iter().rev() {
            set.insert(id);
        }
        set
    });
    Ok(outcome(solution, sweeps, counter))
}

/// Backward-elimination baseline: start from all columns and drop, in the
/// given visit order, every column whose removal keeps the distinct count at
/// the row count. Always costs exactly `N` evaluations.
pub fn be_minimal_unique(
    table: &Table,
    order: &Permutation,
    counter: &mut EvalCounter,
) -> Result<ColumnSet> {
    if order.len() != table.col_count() {
        return Err(Error::NotAPermutation(table.col_count()));
    }
    let r_target = table.row_count();
    let mut kept = table.all_columns();
    for &id in order.as_slice() {
        let candidate = kept.without(id);
        if distinct_count(table, &candidate, counter)? == r_target {
            kept = candidate;
        }
    }
    Ok(kept)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth::{order_sample, planted_pair, planted_single};
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    fn ids(table: &Table, names: &[&str]) -> ColumnSet {
        names.iter().map(|n| table.column_id(n).unwrap()).collect()
    }

    #[test]
    fn permutation_validation() {
        assert!(Permutation::new(vec![]).is_err());
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(Permutation::new(vec![0, 2]).is_err());
        assert!(Permutation::new(vec![2, 0, 1]).is_ok());
    }

    #[test]
    fn random_permutation_is_seed_deterministic() {
        let mut a = StdRng::seed_from_u64(42);
        let mut b = StdRng::seed_from_u64(42);
        assert_eq!(
            random_permutation(10, &mut a).unwrap(),
            random_permutation(10, &mut b).unwrap()
        );
        assert!(random_permutation(0, &mut a).is_err());
        assert_eq!(random_permutation(1, &mut a).unwrap().as_slice(), &[0]);
    }

    #[test]
    fn random_permutation_is_roughly_uniform() {
        let mut rng = StdRng::seed_from_u64(1);
        let mut first_slot = [0usize; 5];
        for _ in 0..10_000 {
            let p = random_permutation(5, &mut rng).unwrap();
            first_slot[p.as_slice()[0]] += 1;
        }
        for &count in &first_slot {
            let freq = count as f64 / 10_000.0;
            assert!((freq - 0.2).abs() < 0.02, "frequency {freq}");
        }
    }

    #[test]
    fn sweep_finds_price_at_position_ten() {
        let t = order_sample();
        let mut ctr = EvalCounter::new();
        let order: Vec<ColumnId> = (0..12).collect();
        let r = t.row_count();
        let h = sweep_select(&t, &ColumnSet::new(), &order, &mut ctr, |t, set, c| {
            Ok(distinct_count(t, set, c)? == r)
        })
        .unwrap();
        assert_eq!(h, 10); // price is the 10th printed column
    }

    #[test]
    fn sweep_on_single_element_list() {
        let t = order_sample();
        let mut ctr = EvalCounter::new();
        let h = sweep_select(
            &t,
            &ColumnSet::new(),
            &[t.rowid_id() - 1],
            &mut ctr,
            |_, _, c| {
                c.increment();
                Ok(true)
            },
        )
        .unwrap();
        assert_eq!(h, 1);
        // length-1 lists return without evaluating: the caller vouches for
        // the full prefix
        assert_eq!(ctr.value(), 0);
    }

    #[test]
    fn sweep_eval_budget_on_long_lists() {
        let (t, _planted) = planted_single(100, 1, 9).unwrap();
        // predicate true from position 64 on
        let order: Vec<ColumnId> = (0..100).collect();
        let mut ctr = EvalCounter::new();
        let h = sweep_select(&t, &ColumnSet::new(), &order, &mut ctr, |_, set, c| {
            c.increment();
            Ok(set.len() >= 64)
        })
        .unwrap();
        assert_eq!(h, 64);
        assert!(ctr.value() <= 8, "used {}", ctr.value()); // ceil(log2 100) + 1
    }

    #[test]
    fn fa_on_the_order_sample_identity_permutation() {
        let t = order_sample();
        let mut ctr = EvalCounter::new();
        let out = fa_minimal_unique(&t, &Permutation::identity(12).unwrap(), 3, &mut ctr).unwrap();
        let solution = out.solution.unwrap();
        assert_eq!(solution, ids(&t, &["orderID", "price"]));
        assert_eq!(out.sweeps_used, 2);
        // selection order: price first, then orderID
        assert_eq!(solution.reversed().ids()[0], t.column_id("price").unwrap());
    }

    #[test]
    fn fa_selection_order_on_planted_unique() {
        // sole minimal unique {1, 4, 6} with the identity permutation:
        // selection order is 6, then 4, then 1.
        let (t, planted) = planted_positions(&[1, 4, 6], 8);
        let mut ctr = EvalCounter::new();
        let out = fa_minimal_unique(&t, &Permutation::identity(8).unwrap(), 3, &mut ctr).unwrap();
        let solution = out.solution.unwrap();
        assert_eq!(solution, planted);
        assert_eq!(solution.ids(), &[1, 4, 6]); // permuted-order listing
        assert_eq!(solution.reversed().ids(), &[6, 4, 1]); // selection order
    }

    /// Planted single unique at explicit positions (test helper).
    fn planted_positions(positions: &[usize], n: usize) -> (Table, ColumnSet) {
        let d = positions.len();
        let mut rows = Vec::new();
        for k in 0..d {
            for copy in 0..2usize {
                let mut row = vec!["0".to_string(); n];
                for (j, &col) in positions.iter().enumerate() {
                    row[col] = if j == k {
                        format!("{}", d + 2 * k + copy)
                    } else {
                        format!("{k}")
                    };
                }
                rows.push(row);
            }
        }
        let header = (0..n).map(|i| format!("c{i}")).collect();
        let t = Table::from_rows(header, rows, &crate::table::LoadOptions::default()).unwrap();
        (t, positions.iter().copied().collect())
    }

    #[test]
    fn fa_with_budget_one_needs_the_key_to_finish_first() {
        // column 0 is a key; columns 1 and 2 are a joint key
        let t = Table::from_csv_str("k,a,b\n1,x,p\n2,x,q\n3,y,p\n4,y,q\n").unwrap();
        let mut ctr = EvalCounter::new();
        // key first: selected alone reaches the row count
        let out =
            fa_minimal_unique(&t, &Permutation::new(vec![0, 1, 2]).unwrap(), 1, &mut ctr).unwrap();
        assert_eq!(out.solution.unwrap(), ColumnSet::single(0));
        // the pair (a, b) completes before k: its boundary column is
        // selected, but alone it is no key, so a one-sweep run fails
        let out =
            fa_minimal_unique(&t, &Permutation::new(vec![1, 2, 0]).unwrap(), 1, &mut ctr).unwrap();
        assert!(out.solution.is_none());
    }

    #[test]
    fn each_selected_column_joins_a_minimal_unique_within_the_prefix() {
        let mut rng = StdRng::seed_from_u64(31);
        for _ in 0..20 {
            let t = crate::synth::random_table(6, 32, 3, &mut rng);
            let n = t.col_count();
            let uniques = crate::oracle::all_minimal_uniques(&t).unwrap();
            let perm = random_permutation(n, &mut rng).unwrap();
            let r_target = t.row_count();
            let mut selected: Vec<ColumnId> = Vec::new();
            let mut remaining: Vec<ColumnId> = perm.as_slice().to_vec();
            let mut ctr = EvalCounter::new();
            loop {
                let base: ColumnSet = selected.iter().copied().collect();
                let h = sweep_select(&t, &base, &remaining, &mut ctr, |t, set, c| {
                    Ok(distinct_count(t, set, c)? == r_target)
                })
                .unwrap();
                let chosen = remaining[h - 1];
                let available: ColumnSet = selected
                    .iter()
                    .copied()
                    .chain(remaining[..h].iter().copied())
                    .collect();
                assert!(
                    uniques
                        .iter()
                        .any(|u| u.contains(chosen) && u.is_subset_of(&available)),
                    "column {chosen} belongs to no minimal unique inside {available}"
                );
                selected.push(chosen);
                remaining.truncate(h - 1);
                if remaining.is_empty() {
                    break;
                }
                let current: ColumnSet = selected.iter().copied().collect();
                if distinct_count(&t, &current, &mut ctr).unwrap() == r_target {
                    break;
                }
            }
        }
    }

    #[test]
    fn fa_respects_the_size_budget() {
        let (t, _) = planted_positions(&[1, 4, 6], 8);
        let mut ctr = EvalCounter::new();
        let out = fa_minimal_unique(&t, &Permutation::identity(8).unwrap(), 2, &mut ctr).unwrap();
        assert!(out.solution.is_none());
        assert_eq!(out.sweeps_used, 2);
    }

    #[test]
    fn fa_single_column_table() {
        let t = Table::from_csv_str("v\na\nb\nc\n").unwrap();
        let mut ctr = EvalCounter::new();
        let out = fa_minimal_unique(&t, &Permutation::identity(1).unwrap(), 1, &mut ctr).unwrap();
        assert_eq!(out.solution.unwrap(), ColumnSet::single(0));
    }

    #[test]
    fn fa_single_row_table_returns_the_empty_set() {
        let t = Table::from_csv_str("a,b\n1,2\n").unwrap();
        let mut ctr = EvalCounter::new();
        let out = fa_minimal_unique(&t, &Permutation::identity(2).unwrap(), 1, &mut ctr).unwrap();
        assert_eq!(out.solution.unwrap(), ColumnSet::new());
        assert_eq!(out.sweeps_used, 0);
    }

    #[test]
    fn fa_eval_budget_holds() {
        // evals <= d * (ceil(log2 N) + 2) + d
        let mut rng = StdRng::seed_from_u64(5);
        for seed in 0..30 {
            let t = crate::synth::random_table(8, 64, 4, &mut rng);
            let n = t.col_count();
            let perm = random_permutation(n, &mut rng).unwrap();
            let mut ctr = EvalCounter::new();
            let out = fa_minimal_unique(&t, &perm, n, &mut ctr).unwrap();
            let d = out.sweeps_used.max(1) as u64;
            let log = (n as f64).log2().ceil() as u64;
            assert!(
                out.evals <= d * (log + 2) + d,
                "seed {seed}: evals {} d {d} n {n}",
                out.evals
            );
        }
    }

    #[test]
    fn fa_fd_eval_budget_scales_by_the_two_count_predicate() {
        // dependency predicates charge two evaluations each, so an FD run
        // stays within twice the unique-search budget plus the one
        // full-prefix check
        let mut rng = StdRng::seed_from_u64(6);
        for seed in 0..30 {
            let t = crate::synth::random_table(8, 64, 4, &mut rng);
            let n = t.col_count();
            let y = ColumnSet::single(seed % n);
            let candidates = t.all_columns().difference(&y);
            let perm = random_permutation(n, &mut rng).unwrap();
            let mut ctr = EvalCounter::new();
            let out = fa_fd(
                &t,
                &y,
                0.05,
                n - 1,
                &perm,
                &candidates,
                &ColumnSet::new(),
                ErrorMeasure::G3,
                &mut ctr,
            )
            .unwrap();
            let d = out.sweeps_used.max(1) as u64;
            let log = (n as f64).log2().ceil() as u64;
            assert!(
                out.evals <= 2 * (d * (log + 2) + d) + 2,
                "seed {seed}: evals {} d {d} n {n}",
                out.evals
            );
        }
    }

    #[test]
    fn fa_tie_break_follows_the_max_index_rule() {
        // two disjoint planted uniques: FA returns the one whose largest
        // permuted position is smaller
        let (t, a, b) = planted_pair(10, 2, 3, 21).unwrap();
        let mut rng = StdRng::seed_from_u64(77);
        for _ in 0..200 {
            let perm = random_permutation(10, &mut rng).unwrap();
            let pos = |set: &ColumnSet| {
                set.iter()
                    .map(|id| perm.as_slice().iter().position(|&x| x == id).unwrap())
                    .max()
                    .unwrap()
            };
            let expected = if pos(&a) < pos(&b) { &a } else { &b };
            let mut ctr = EvalCounter::new();
            let out = fa_minimal_unique(&t, &perm, 3, &mut ctr).unwrap();
            assert_eq!(&out.solution.unwrap(), expected);
        }
    }

    #[test]
    fn fa_fd_finds_the_customer_time_split() {
        let t = order_sample();
        let y = ids(&t, &["orderID"]);
        let mut ctr = EvalCounter::new();
        let candidates = descendants(&t, &y, 0.0, ErrorMeasure::G3, &mut ctr)
            .unwrap()
            .difference(&y);
        let out = fa_fd(
            &t,
            &y,
            0.0,
            3,
            &Permutation::identity(12).unwrap(),
            &candidates,
            &ColumnSet::new(),
            ErrorMeasure::G3,
            &mut ctr,
        )
        .unwrap();
        assert_eq!(out.solution.unwrap(), ids(&t, &["customerID", "time"]));
    }

    #[test]
    fn fa_fd_single_candidate_exact_dependency() {
        let t = order_sample();
        let mut ctr = EvalCounter::new();
        let out = fa_fd(
            &t,
            &ids(&t, &["phoneno"]),
            0.0,
            3,
            &Permutation::identity(12).unwrap(),
            &ids(&t, &["customerID"]),
            &ColumnSet::new(),
            ErrorMeasure::G3,
            &mut ctr,
        )
        .unwrap();
        assert_eq!(out.solution.unwrap(), ids(&t, &["customerID"]));
    }

    #[test]
    fn fa_fd_vacuous_bound_takes_the_first_candidate() {
        let t = order_sample();
        let mut ctr = EvalCounter::new();
        let candidates = t.all_columns().difference(&ids(&t, &["price"]));
        let out = fa_fd(
            &t,
            &ids(&t, &["price"]),
            1.0,
            3,
            &Permutation::identity(12).unwrap(),
            &candidates,
            &ColumnSet::new(),
            ErrorMeasure::G3,
            &mut ctr,
        )
        .unwrap();
        // first candidate column alone satisfies an error bound of 1
        assert_eq!(out.solution.unwrap(), ids(&t, &["orderID"]));
    }

    #[test]
    fn fa_fd_returns_none_when_the_full_prefix_fails() {
        let t = order_sample();
        let mut ctr = EvalCounter::new();
        let out = fa_fd(
            &t,
            &ids(&t, &["price"]),
            0.0,
            3,
            &Permutation::identity(12).unwrap(),
            &ids(&t, &["ordertype", "ptype"]),
            &ColumnSet::new(),
            ErrorMeasure::G3,
            &mut ctr,
        )
        .unwrap();
        assert!(out.solution.is_none());
        assert_eq!(out.sweeps_used, 0);
    }

    #[test]
    fn fa_fd_ratio_rejects_non_descendant_candidates() {
        let t = order_sample();
        let mut ctr = EvalCounter::new();
        let err = fa_fd(
            &t,
            &ids(&t, &["customerID"]),
            0.0,
            3,
            &Permutation::identity(12).unwrap(),
            &ids(&t, &["price", "fullname"]),
            &ColumnSet::new(),
            ErrorMeasure::Ratio,
            &mut ctr,
        );
        assert!(matches!(err, Err(Error::NonDescendantCandidate(_))));
    }

    #[test]
    fn fa_fd_contract_checks() {
        let t = order_sample();
        let mut ctr = EvalCounter::new();
        let y = ids(&t, &["price"]);
        let overlap = fa_fd(
            &t,
            &y,
            0.0,
            3,
            &Permutation::identity(12).unwrap(),
            &ids(&t, &["price", "ptype"]),
            &ColumnSet::new(),
            ErrorMeasure::G3,
            &mut ctr,
        );
        assert!(matches!(overlap, Err(Error::CandidatesOverlapTarget)));
        let seed = fa_fd(
            &t,
            &y,
            0.0,
            3,
            &Permutation::identity(12).unwrap(),
            &ids(&t, &["ptype"]),
            &ids(&t, &["ordertype"]),
            ErrorMeasure::G3,
            &mut ctr,
        );
        assert!(matches!(seed, Err(Error::SeedOutsideCandidates)));
    }

    #[test]
    fn be_finds_a_minimal_unique() {
        let t = order_sample();
        let mut ctr = EvalCounter::new();
        let result = be_minimal_unique(&t, &Permutation::identity(12).unwrap(), &mut ctr).unwrap();
        let r = t.row_count();
        assert_eq!(t.projection_count(&result).unwrap(), r);
        for id in result.iter() {
            assert!(t.projection_count(&result.without(id)).unwrap() < r);
        }
        assert_eq!(ctr.value(), 12); // one removal attempt per column
    }

    #[test]
    fn be_on_duplicated_column_omits_one_copy() {
        let t = Table::from_csv_str("a,b,c\n1,x,1\n2,x,2\n1,y,1\n2,y,2\n").unwrap();
        for order in [vec![0, 1, 2], vec![2, 1, 0]] {
            let mut ctr = EvalCounter::new();
            let result =
                be_minimal_unique(&t, &Permutation::new(order).unwrap(), &mut ctr).unwrap();
            // column 2 duplicates column 0: exactly one of them survives
            assert_eq!(result.contains(0) as usize + result.contains(2) as usize, 1);
        }
    }

    #[test]
    fn be_single_column() {
        let t = Table::from_csv_str("v\na\nb\n").unwrap();
        let mut ctr = EvalCounter::new();
        let result = be_minimal_unique(&t, &Permutation::identity(1).unwrap(), &mut ctr).unwrap();
        assert_eq!(result, ColumnSet::single(0));
        assert_eq!(ctr.value(), 1);
    }
}
