//! Exhaustive generation of small capacity trees for property checks.

use crate::tree::{CapacityTree, NodeSpec};

/// Parent arrays (preorder, `None` for the root) of every rooted planar
/// tree on `n` vertices.
pub fn planar_shapes(n: usize) -> Vec<Vec<Option<usize>>> {
    fn grow(parents: &mut Vec<Option<usize>>, n: usize, out: &mut Vec<Vec<Option<usize>>>) {
        if parents.len() == n {
            out.push(parents.clone());
            return;
        }
        // The next preorder vertex hangs off the rightmost path.
        let mut v = Some(parents.len() - 1);
        while let Some(p) = v {
            parents.push(Some(p));
            grow(parents, n, out);
            parents.pop();
            v = parents[p];
        }
    }
    if n == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    grow(&mut vec![None], n, &mut out);
    out
}

pub fn shape_tree(parents: &[Option<usize>], caps: &[u32]) -> CapacityTree {
    let specs: Vec<NodeSpec> = parents
        .iter()
        .zip(caps)
        .enumerate()
        .map(|(i, (p, &c))| NodeSpec {
            name: format!("v{}", i + 1),
            parent: p.map(|p| format!("v{}", p + 1)),
            cap: c,
        })
        .collect();
    CapacityTree::from_specs(&specs).expect("generated shape is a tree")
}

/// Every capacity tree with at most `max_vertices` vertices, total
/// capacity between 1 and `max_total`, and each capacity at most `max_cap`.
pub fn capacity_trees(max_vertices: usize, max_total: u32, max_cap: u32) -> Vec<CapacityTree> {
    let mut out = Vec::new();
    for n in 1..=max_vertices {
        for shape in planar_shapes(n) {
            let mut caps = vec![0u32; n];
            loop {
                let total: u32 = caps.iter().sum();
                if (1..=max_total).contains(&total) {
                    out.push(shape_tree(&shape, &caps));
                }
                let mut i = 0;
                loop {
                    if i == n {
                        break;
                    }
                    caps[i] += 1;
                    if caps[i] <= max_cap {
                        break;
                    }
                    caps[i] = 0;
                    i += 1;
                }
                if i == n {
                    break;
                }
            }
        }
    }
    out
}

/// Distributable trees from [`capacity_trees`].
pub fn distributable_trees(max_vertices: usize, max_total: u32, max_cap: u32) -> Vec<CapacityTree> {
    capacity_trees(max_vertices, max_total, max_cap)
        .into_iter()
        .filter(CapacityTree::is_distributable)
        .collect()
}

/// Unit-capacity trees on `n` vertices whose root is a leaf.
pub fn unit_trees_with_leaf_root(n: usize) -> Vec<CapacityTree> {
    planar_shapes(n)
        .into_iter()
        .map(|s| shape_tree(&s, &vec![1; n]))
        .filter(|t| t.len() == 1 || t.root_is_leaf())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalan_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| planar_shapes(n).len()).collect();
        assert_eq!(counts, [1, 1, 2, 5, 14, 42]);
    }

    #[test]
    fn capacity_bounds_respected() {
        for t in capacity_trees(3, 4, 2) {
            assert!((1..=4).contains(&t.total_capacity()));
            assert!(t.vertices().all(|v| t.cap(v) <= 2));
        }
    }
}
