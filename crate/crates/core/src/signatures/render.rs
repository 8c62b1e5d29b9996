//! Two-row ASCII drawings of G_λ and G′_λ.
//!
//! ```text
//! 1 - 2 - 3    6    8 - 9    14
//!         |    |    |   |    |
//!         3    6    8   9    14
//! ```
//!
//! Backbone edges are drawn as ` - ` and deleted backbone edges as three
//! blanks; runs are separated by four blanks.

use crate::error::Result;
use crate::partitions::NeighborlyPartition;

use super::{build_graph, prune, DeletionRule};

const EDGE: &str = " - ";
const DELETED: &str = "   ";
const RUN_GAP: &str = "    ";

pub fn render_graph(np: &NeighborlyPartition) -> String {
    render(np, &[])
}

pub fn render_pruned(np: &NeighborlyPartition, rule: DeletionRule) -> Result<String> {
    let pg = prune(&build_graph(np), rule)?;
    Ok(render(np, &pg.deleted_backbone))
}

fn render(np: &NeighborlyPartition, deleted: &[u32]) -> String {
    let mut top = String::new();
    let mut columns = Vec::new();
    for (ri, run) in np.runs().iter().enumerate() {
        if ri > 0 {
            top.push_str(RUN_GAP);
        }
        for x in run.start..=run.end {
            if x > run.start {
                top.push_str(if deleted.contains(&(x - 1)) { DELETED } else { EDGE });
            }
            columns.push((x, top.len()));
            top.push_str(&x.to_string());
        }
    }
    let mut bars = String::new();
    let mut dups = String::new();
    for &(x, col) in columns.iter().filter(|(x, _)| np.is_doubled(*x)) {
        pad_to(&mut bars, col);
        bars.push('|');
        pad_to(&mut dups, col);
        dups.push_str(&x.to_string());
    }
    format!("{top}\n{bars}\n{dups}\n")
}

fn pad_to(line: &mut String, col: usize) {
    while line.len() < col {
        line.push(' ');
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn intro_example_layout() {
        let np = NeighborlyPartition::parse("1,2,3,6,8,9,14/3,6,8,9,14").unwrap();
        assert_eq!(
            render_graph(&np),
            "1 - 2 - 3    6    8 - 9    14\n        |    |    |   |    |\n        3    6    8   9    14\n"
        );
    }

    #[test]
    fn pruned_layout_blanks_deleted_edges() {
        let np = NeighborlyPartition::parse("1,2,3,4,5,6,7/1,3,6").unwrap();
        let pruned = render_pruned(&np, DeletionRule::ExampleConsistent).unwrap();
        assert_eq!(
            pruned,
            "1 - 2   3 - 4   5 - 6 - 7\n|       |           |\n1       3           6\n"
        );
    }

    #[test]
    fn empty_partition_renders_blank() {
        assert_eq!(render_graph(&NeighborlyPartition::empty()), "\n\n\n");
    }
}
