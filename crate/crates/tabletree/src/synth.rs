//! Synthetic table generators used by the test suites, the benchmark
//! subcommand, and the runnable examples.
//!
//! The order and router generators plant specific value collisions so that
//! the layered structure each one encodes is the *only* structure a search
//! can find: every competing column combination is broken by at least one
//! colliding row pair, which stays broken as more rows are added.

use rand::prelude::*;
use rand::rngs::StdRng;

use crate::colset::{ColumnId, ColumnSet};
use crate::error::{Error, Result};
use crate::table::{LoadOptions, Table};

/// The 8-row customer-order sample used across the documentation and tests.
pub fn order_sample_csv() -> &'static str {
    "orderID,productID,customerID,time,ordertype,fullname,phoneno,age,ptype,price,weight,shippingcost\n\
     1,1,4,day 1,web,Alex Smith,732-906-9882,29,book,15,0.5,4.5\n\
     1,6,4,day 1,web,Alex Smith,732-906-9882,29,music,11,NA,NA\n\
     2,3,2,day 1,web,Emma Miller,908-654-3213,36,beauty,39,0.2,4.2\n\
     3,2,2,day 2,web,Emma Miller,908-654-3213,36,clothing,32,0.6,4.6\n\
     3,4,2,day 2,web,Emma Miller,908-654-3213,36,games,18,NA,NA\n\
     3,6,2,day 2,web,Emma Miller,908-654-3213,36,music,11,NA,NA\n\
     4,5,3,day 2,phone,Kim Dole,973-211-1245,45,grocery,25,1,2.3\n\
     4,5,3,day 2,phone,Kim Dole,973-211-1245,45,grocery,12,1,2.3\n"
}

/// The 8-row sample as a loaded table.
pub fn order_sample() -> Table {
    Table::from_csv_str(order_sample_csv()).expect("embedded sample parses")
}

const FIRST_NAMES: [&str; 10] = [
    "Alex", "Emma", "Kim", "Ravi", "Lena", "Omar", "Sofia", "Dana", "Hugo", "Mia",
];
const LAST_NAMES: [&str; 5] = ["Smith", "Miller", "Dole", "Ortiz", "Chen"];
const PRODUCT_TYPES: [&str; 8] = [
    "book", "music", "beauty", "clothing", "games", "grocery", "garden", "sports",
];

struct Customer {
    fullname: String,
    phoneno: String,
    age: u32,
}

struct Product {
    ptype: &'static str,
    price: u32,
    weight: String,
    shipping: String,
}

/// Generates a customer-order line table with exactly `rows` rows.
///
/// The layered structure is fixed regardless of seed: each row is one
/// order/product line, `(orderID, productID)` identifies a row, an order is
/// placed by one customer at one time (and `(customerID, time)` never repeats
/// across orders), customer attributes are functions of the customer, product
/// attributes are functions of the product. Planted collisions guarantee that
/// no competing column combination of size <= 3 identifies rows or orders:
/// two customers share all printed attributes and order the same product at
/// the same time, one customer re-orders one product across web and phone
/// orders, and one order contains two products agreeing on type and price.
pub fn order_table_csv(rows: usize, seed: u64) -> String {
    assert!(rows >= 20, "order generator needs at least 20 rows");
    let mut rng = StdRng::seed_from_u64(seed);

    let mut customers: Vec<Customer> = (0..30)
        .map(|i| Customer {
            fullname: format!("{} {}", FIRST_NAMES[i % 10], LAST_NAMES[i / 10 * 2 % 5]),
            phoneno: format!("9{:02}-{:03}-{:04}", 10 + i, 100 + 7 * i, 1000 + 31 * i),
            age: (21 + (i * 7) % 45) as u32,
        })
        .collect();
    // Two customers indistinguishable by their printed attributes.
    customers[1] = Customer {
        fullname: customers[0].fullname.clone(),
        phoneno: customers[0].phoneno.clone(),
        age: customers[0].age,
    };

    let mut products: Vec<Product> = (0..40)
        .map(|i| Product {
            ptype: PRODUCT_TYPES[i % 8],
            price: (5 + (i * 13) % 55) as u32,
            weight: if i % 5 == 4 {
                "NA".to_string()
            } else {
                format!("{:.1}", 0.1 * ((i % 19) + 1) as f64)
            },
            shipping: if i % 5 == 4 {
                "NA".to_string()
            } else {
                format!("{:.1}", 2.0 + 0.1 * ((i % 37) + 1) as f64)
            },
        })
        .collect();
    // One order below carries both of these: same type, same price.
    products[1].ptype = products[0].ptype;
    products[1].price = products[0].price;

    // (customer, time, ordertype, product lines); customer/product 0-based.
    let mut orders: Vec<(usize, usize, &'static str, Vec<usize>)> = vec![
        (0, 0, "web", vec![2, 3]),    // shared product 2 at day 1 ...
        (1, 0, "web", vec![2, 4]),    // ... by the look-alike customer
        (2, 1, "web", vec![0, 1, 5]), // type/price twins in one order
        (2, 2, "web", vec![5]),       // repeat purchase, still web
        (2, 3, "phone", vec![5]),     // repeat purchase over the phone
        (3, 1, "phone", vec![6, 2]),  // phone order on a web day
        (4, 3, "web", vec![7]),       // web order on a phone day
    ];
    let mut used_slots: std::collections::HashSet<(usize, usize)> =
        orders.iter().map(|o| (o.0, o.1)).collect();

    let planted_lines: usize = orders.iter().map(|o| o.3.len()).sum();
    let mut remaining = rows - planted_lines;
    while remaining > 0 {
        let customer = rng.gen_range(0..30);
        let day = rng.gen_range(0..60);
        if !used_slots.insert((customer, day)) {
            continue;
        }
        let ordertype = if rng.gen_bool(0.7) { "web" } else { "phone" };
        let count = rng.gen_range(1..=5).min(remaining);
        let mut line_products: Vec<usize> = (0..40).collect();
        line_products.shuffle(&mut rng);
        line_products.truncate(count);
        remaining -= count;
        orders.push((customer, day, ordertype, line_products));
    }

    let mut out = String::from(
        "orderID,productID,customerID,time,ordertype,fullname,phoneno,age,ptype,price,weight,shippingcost\n",
    );
    for (order_idx, (customer, day, ordertype, line_products)) in orders.iter().enumerate() {
        let c = &customers[*customer];
        for &p in line_products {
            let prod = &products[p];
            out.push_str(&format!(
                "{},{},{},day {},{},{},{},{},{},{},{},{}\n",
                order_idx + 1,
                p + 1,
                customer + 1,
                day + 1,
                ordertype,
                c.fullname,
                c.phoneno,
                c.age,
                prod.ptype,
                prod.price,
                prod.weight,
                prod.shipping,
            ));
        }
    }
    out
}

/// [`order_table_csv`] parsed into a table.
pub fn order_table(rows: usize, seed: u64) -> Table {
    Table::from_csv_str(&order_table_csv(rows, seed)).expect("generated order table parses")
}

/// Generates a home-router-style measurement table (112 rows, 12 columns).
///
/// Rows are KPI measurements: one per (daily link record, time bucket,
/// measurement day). A daily link record (`customerattr2`) is a session
/// (`sid`) on a calendar day; a session is a (device, BRAS) pair; `dn` is a
/// one-to-one alias of `deviceid`; `day_id` is the coarser week of `day`.
/// The KPI columns are decimal and unique per row.
pub fn router_table() -> Table {
    // (device, bras, active days); one device uses two BRASes on day 1 and
    // two devices share a BRAS on day 1, so neither column alone refines sid.
    let sessions: [(&str, &str, &[usize]); 6] = [
        ("d1", "b1", &[1, 2, 4]),
        ("d1", "b2", &[1, 5]),
        ("d2", "b1", &[1, 2]),
        ("d3", "b2", &[2, 3, 6]),
        ("d4", "b3", &[4, 5]),
        ("d5", "b3", &[5, 6]),
    ];
    let device_type = |dev: &str| match dev {
        "d1" | "d2" => "vdsl",
        _ => "fiber",
    };
    let buckets = ["00:00", "06:00", "12:00", "18:00"];

    let header: Vec<String> = [
        "start_gp",
        "customerattr2",
        "day.1",
        "day",
        "sid",
        "day_id",
        "deviceid",
        "bras_id",
        "dn",
        "devicetype",
        "kpi_down",
        "kpi_up",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();

    let mut rows = Vec::new();
    let mut row_no = 0usize;
    for (s_idx, (dev, bras, days)) in sessions.iter().enumerate() {
        let sid = format!("s{}", s_idx + 1);
        for &day in days.iter() {
            let attr2 = format!("{sid}-d{day}");
            for bucket in buckets {
                for offset in 0..2usize {
                    let m = day + offset;
                    rows.push(vec![
                        bucket.to_string(),
                        attr2.clone(),
                        format!("day {m}"),
                        format!("day {day}"),
                        sid.clone(),
                        format!("w{}", (day - 1) / 3 + 1),
                        dev.to_string(),
                        bras.to_string(),
                        format!("dn-{dev}"),
                        device_type(dev).to_string(),
                        format!("{}.5", 100 + row_no),
                        format!("{}.25", 500 + row_no),
                    ]);
                    row_no += 1;
                }
            }
        }
    }
    Table::from_rows(header, rows, &LoadOptions::default()).expect("router table builds")
}

/// Plants a single minimal unique of size `d` in an `n_cols`-column table.
///
/// For each planted column there is one row pair identical everywhere except
/// that column, so the planted set is the only minimal unique: any set
/// missing a planted column collides on some pair. Filler columns are
/// constant. Returns the table and the planted set.
pub fn planted_single(n_cols: usize, d: usize, seed: u64) -> Result<(Table, ColumnSet)> {
    if d == 0 || d > n_cols {
        return Err(Error::InfeasiblePlant(format!(
            "cannot plant a size-{d} unique in {n_cols} columns"
        )));
    }
    let positions = pick_positions(n_cols, d, seed);
    let planted: ColumnSet = positions.iter().copied().collect();

    let mut rows = Vec::with_capacity(2 * d);
    for k in 0..d {
        for copy in 0..2usize {
            let mut row = vec!["0".to_string(); n_cols];
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
    let header = (0..n_cols).map(|i| format!("c{i}")).collect();
    let table = Table::from_rows(header, rows, &LoadOptions::default())?;
    Ok((table, planted))
}

/// Plants two disjoint minimal uniques of sizes `d1` and `d2`.
///
/// One row pair per (i, j) in `d1 x d2` differs exactly at the i-th column of
/// the first set and the j-th column of the second, so the two planted sets
/// are the only minimal uniques (verified against the brute-force oracle in
/// tests). Returns the table and both planted sets.
pub fn planted_pair(
    n_cols: usize,
    d1: usize,
    d2: usize,
    seed: u64,
) -> Result<(Table, ColumnSet, ColumnSet)> {
    if d1 == 0 || d2 == 0 || d1 + d2 > n_cols {
        return Err(Error::InfeasiblePlant(format!(
            "cannot plant disjoint sizes {d1} and {d2} in {n_cols} columns"
        )));
    }
    let positions = pick_positions(n_cols, d1 + d2, seed);
    let first: Vec<ColumnId> = positions[..d1].to_vec();
    let second: Vec<ColumnId> = positions[d1..].to_vec();
    let offset = d1 * d2;

    let mut rows = Vec::with_capacity(2 * d1 * d2);
    for i in 0..d1 {
        for j in 0..d2 {
            let pid = i * d2 + j;
            for copy in 0..2usize {
                let mut row = vec!["0".to_string(); n_cols];
                for (k, &col) in first.iter().enumerate() {
                    row[col] = if k == i {
                        format!("{}", offset + 2 * pid + copy)
                    } else {
                        format!("{pid}")
                    };
                }
                for (l, &col) in second.iter().enumerate() {
                    row[col] = if l == j {
                        format!("{}", offset + 2 * pid + copy)
                    } else {
                        format!("{pid}")
                    };
                }
                rows.push(row);
            }
        }
    }
    let header = (0..n_cols).map(|i| format!("c{i}")).collect();
    let table = Table::from_rows(header, rows, &LoadOptions::default())?;
    Ok((
        table,
        first.into_iter().collect(),
        second.into_iter().collect(),
    ))
}

fn pick_positions(n_cols: usize, take: usize, seed: u64) -> Vec<ColumnId> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut ids: Vec<ColumnId> = (0..n_cols).collect();
    ids.shuffle(&mut rng);
    ids.truncate(take);
    ids
}

/// Random small table for property and acceptance tests: `n_cols` columns,
/// up to `max_rows` rows before deduplication, per-column alphabet sizes up
/// to `max_alphabet`. Regenerates until at least two distinct rows survive.
pub fn random_table(
    n_cols: usize,
    max_rows: usize,
    max_alphabet: usize,
    rng: &mut StdRng,
) -> Table {
    loop {
        let rows_wanted = rng.gen_range(2..=max_rows.max(2));
        let alphabets: Vec<usize> = (0..n_cols)
            .map(|_| rng.gen_range(1..=max_alphabet))
            .collect();
        let rows: Vec<Vec<String>> = (0..rows_wanted)
            .map(|_| {
                (0..n_cols)
                    .map(|c| format!("v{}", rng.gen_range(0..alphabets[c])))
                    .collect()
            })
            .collect();
        let header = (0..n_cols).map(|i| format!("c{i}")).collect();
        let table =
            Table::from_rows(header, rows, &LoadOptions::default()).expect("random table builds");
        if table.row_count() >= 2 {
            return table;
        }
    }
}
