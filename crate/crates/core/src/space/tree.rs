//! Prefix tree of sign patterns on the nested balls `Ball(0) < ... < Ball(R)`.

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::groups::Ball;
use crate::orderings::{OrderingDescriptor, Sign, SignOracle};

#[derive(Clone, Debug, Serialize)]
pub struct TreeNode {
    pub depth: u32,
    /// Hex prefix of the SHA-256 of the sign pattern on `Ball(depth)`.
    pub pattern_hash: String,
    pub children: Vec<TreeNode>,
    /// Indices into the exported descriptor list (leaf nodes only).
    pub leaves: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CantorTree {
    pub check: &'static str,
    pub radius: u32,
    pub descriptors: Vec<String>,
    pub root: TreeNode,
}

impl TreeNode {
    pub fn leaf_count(&self) -> usize {
        if self.children.is_empty() {
            1
        } else {
            self.children.iter().map(TreeNode::leaf_count).sum()
        }
    }

    pub fn node_count(&self) -> usize {
        1 + self
            .children
            .iter()
            .map(TreeNode::node_count)
            .sum::<usize>()
    }

    /// Whether every node has at most one child.
    pub fn is_path(&self) -> bool {
        self.children.len() <= 1 && self.children.iter().all(TreeNode::is_path)
    }
}

fn sign_char(s: Sign) -> char {
    match s {
        Sign::Positive => '+',
        Sign::Negative => '-',
        Sign::Zero => '0',
    }
}

fn hash(pattern: &str) -> String {
    hex::encode(&Sha256::digest(pattern.as_bytes())[..8])
}

pub fn cantor_tree_export(descriptors: &[OrderingDescriptor], radius: u32) -> Result<CantorTree> {
    let Some(first) = descriptors.first() else {
        return Err(Error::Precondition("no descriptors to export".into()));
    };
    let family = first.family();
    for d in descriptors {
        if d.family() != family {
            return Err(Error::FamilyMismatch {
                expected: family,
                found: d.family(),
            });
        }
        d.validate()?;
    }
    let ball = Ball::generate(family, radius)?;
    let patterns: Vec<String> = descriptors
        .iter()
        .map(|d| ball.iter().map(|g| sign_char(d.sign(g))).collect())
        .collect();
    let ends: Vec<usize> = (0..=radius).map(|r| ball.within(r).len()).collect();
    let all: Vec<usize> = (0..descriptors.len()).collect();
    let root = build(&patterns, &ends, 0, &all);
    Ok(CantorTree {
        check: "cantor-tree",
        radius,
        descriptors: descriptors.iter().map(|d| d.to_string()).collect(),
        root,
    })
}

fn build(patterns: &[String], ends: &[usize], depth: usize, members: &[usize]) -> TreeNode {
    let prefix = &patterns[members[0]][..ends[depth]];
    let mut node = TreeNode {
        depth: depth as u32,
        pattern_hash: hash(prefix),
        children: Vec::new(),
        leaves: Vec::new(),
    };
    if depth + 1 == ends.len() {
        node.leaves = members.to_vec();
        return node;
    }
    // Group by the next prefix, keeping first-occurrence order.
    let mut groups: Vec<(&str, Vec<usize>)> = Vec::new();
    for &i in members {
        let p = &patterns[i][..ends[depth + 1]];
        match groups.iter_mut().find(|(q, _)| *q == p) {
            Some((_, v)) => v.push(i),
            None => groups.push((p, vec![i])),
        }
    }
    node.children = groups
        .iter()
        .map(|(_, m)| build(patterns, ends, depth + 1, m))
        .collect();
    node
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conradian::enumerate_c_orderings;
    use crate::groups::Family;
    use crate::orderings::Side;
    use crate::space::probes::gap_representatives;
    use crate::space::thresholds;

    #[test]
    fn four_flip_leaves() {
        let t = cantor_tree_export(&enumerate_c_orderings(Family::bs(2)).unwrap(), 2).unwrap();
        assert_eq!(t.root.leaf_count(), 4);
        let json = serde_json::to_value(&t).unwrap();
        assert!(json["root"]["pattern_hash"].is_string());
        assert!(json["root"]["children"].is_array());
    }

    #[test]
    fn single_descriptor_is_a_path() {
        let o = OrderingDescriptor::parse("smirnov:sqrt2", Family::bs(2)).unwrap();
        let t = cantor_tree_export(&[o], 4).unwrap();
        assert!(t.root.is_path());
        assert_eq!(t.root.node_count(), 5);
    }

    #[test]
    fn gap_samples_separate() {
        let ball = Ball::generate(Family::bs(2), 4).unwrap();
        let reps = gap_representatives(&thresholds(&ball).unwrap());
        let ds: Vec<OrderingDescriptor> = reps
            .into_iter()
            .map(|x| OrderingDescriptor::smirnov(2, x, Side::Exact).unwrap())
            .collect();
        let n = ds.len();
        let t = cantor_tree_export(&ds, 4).unwrap();
        assert_eq!(t.root.leaf_count(), n);
        // Branching at every depth below the leaves.
        fn branching_depths(node: &TreeNode, out: &mut Vec<bool>) {
            if node.children.len() >= 2 {
                out[node.depth as usize] = true;
            }
            for c in &node.children {
                branching_depths(c, out);
            }
        }
        let mut seen = vec![false; 5];
        branching_depths(&t.root, &mut seen);
        assert!(seen[..4].iter().all(|b| *b), "{seen:?}");
    }
}
