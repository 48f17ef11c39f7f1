//! Build the layered schema tree of a table and render it.
//!
//! ```bash
//! cargo run -p tabletree --example schema_tree
//! cargo run -p tabletree --example schema_tree | dot -Tpng -o schema.png
//! ```

use tabletree::{build_schema_tree, synth, NodeKind, SearchConfig};

fn main() {
    let table = synth::order_table(1000, 1);
    let tree = build_schema_tree(&table, &SearchConfig::default()).expect("tree builds");

    // Indented outline on stderr so stdout stays valid DOT.
    eprintln!("discovered structure:");
    let mut stack = vec![(0usize, 0usize)];
    while let Some((id, indent)) = stack.pop() {
        let node = tree.node(id);
        let marker = match node.kind {
            NodeKind::Root => "*",
            NodeKind::Skeleton => "+",
            NodeKind::Leaf => "-",
        };
        eprintln!(
            "{}{} {}",
            "  ".repeat(indent),
            marker,
            node.columns.join(", ")
        );
        for &child in node.children.iter().rev() {
            stack.push((child, indent + 1));
        }
    }
    eprintln!(
        "decimal columns kept out of the skeleton: {:?}",
        tree.excluded_decimals
    );

    print!("{}", tree.to_dot());
}
