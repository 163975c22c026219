//! Biconnected components (blocks) as edge partitions.
//!
//! Genus is additive over blocks, and a block is either a bridge or
//! 2-connected, so the face search only ever runs on 2-connected pieces.

use crate::graph::Graph;

/// Edge ids of each block, every list ascending, blocks ordered by their
/// smallest edge id.
pub fn biconnected_components(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut timer = 0;
    let mut edge_stack: Vec<usize> = Vec::new();
    let mut blocks = Vec::new();
    // (vertex, edge used to enter it, next adjacency cursor)
    let mut stack: Vec<(usize, usize, usize)> = Vec::new();

    disc[0] = timer;
    low[0] = timer;
    timer += 1;
    stack.push((0, usize::MAX, 0));
    while let Some(&mut (v, via, ref mut cursor)) = stack.last_mut() {
        if let Some(inc) = g.neighbors(v).get(*cursor) {
            *cursor += 1;
            let (w, e) = (inc.neighbor, inc.edge);
            if e == via {
                continue;
            }
            if disc[w] == usize::MAX {
                edge_stack.push(e);
                disc[w] = timer;
                low[w] = timer;
                timer += 1;
                stack.push((w, e, 0));
            } else if disc[w] < disc[v] {
                edge_stack.push(e);
                low[v] = low[v].min(disc[w]);
            }
        } else {
            stack.pop();
            if let Some(&(parent, _, _)) = stack.last() {
                low[parent] = low[parent].min(low[v]);
                if low[v] >= disc[parent] {
                    let mut block = Vec::new();
                    while let Some(e) = edge_stack.pop() {
                        block.push(e);
                        if e == via {
                            break;
                        }
                    }
                    block.sort_unstable();
                    blocks.push(block);
                }
            }
        }
    }
    blocks.sort_unstable_by_key(|b| b[0]);
    blocks
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, path};

    #[test]
    fn single_block() {
        let g = complete(5).unwrap();
        let b = biconnected_components(&g);
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].len(), 10);
    }

    #[test]
    fn path_is_all_bridges() {
        let g = path(5).unwrap();
        assert_eq!(biconnected_components(&g).len(), 4);
    }

    #[test]
    fn bowtie() {
        let g = Graph::new(5, vec![(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap();
        assert_eq!(
            biconnected_components(&g),
            vec![vec![0, 1, 2], vec![3, 4, 5]]
        );
    }

    #[test]
    fn parallel_edges_share_a_block() {
        let g = Graph::new(3, vec![(0, 1), (0, 1), (1, 2)]).unwrap();
        assert_eq!(biconnected_components(&g), vec![vec![0, 1], vec![2]]);
    }
}
