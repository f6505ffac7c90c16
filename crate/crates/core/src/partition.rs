use serde::{Serialize, Serializer};

// Union by size with path halving.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
    sets: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
            sets: n,
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merge the sets of `a` and `b`; false if they were already one set.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        self.sets -= 1;
        true
    }

    pub fn sets(&self) -> usize {
        self.sets
    }
}

/// A partition of the vertices `0..len` into labelled blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl Partition {
    /// Blocks keep the given order; each block is sorted.
    pub fn from_blocks(len: usize, mut blocks: Vec<Vec<usize>>) -> Self {
        let mut block_of = vec![usize::MAX; len];
        for (b, block) in blocks.iter_mut().enumerate() {
            block.sort_unstable();
            for &v in block.iter() {
                assert_eq!(block_of[v], usize::MAX, "vertex {v} in two blocks");
                block_of[v] = b;
            }
        }
        assert!(
            block_of.iter().all(|&b| b != usize::MAX),
            "partition does not cover 0..{len}"
        );
        Partition { blocks, block_of }
    }

    /// Group vertices by an arbitrary label.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut seen = std::collections::HashMap::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (v, &l) in labels.iter().enumerate() {
            let b = *seen.entry(l).or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            blocks[b].push(v);
        }
        Partition::from_blocks(labels.len(), blocks)
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_of(&self, v: usize) -> usize {
        self.block_of[v]
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Blocks sorted by least element, for order-free comparison.
    pub fn normalized(&self) -> Vec<Vec<usize>> {
        let mut b = self.blocks.clone();
        b.sort();
        b
    }

    pub fn same_blocks(&self, other: &Partition) -> bool {
        self.normalized() == other.normalized()
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.blocks.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn union_find_counts_sets() {
        let mut uf = UnionFind::new(5);
        assert!(uf.union(0, 1));
        assert!(uf.union(3, 4));
        assert!(!uf.union(1, 0));
        assert_eq!(uf.sets(), 3);
        assert_eq!(uf.find(0), uf.find(1));
        assert_ne!(uf.find(0), uf.find(3));
    }

    #[test]
    fn partitions_compare_up_to_order() {
        let a = Partition::from_blocks(4, vec![vec![3, 1], vec![0], vec![2]]);
        let b = Partition::from_labels(&[7, 5, 9, 5]);
        assert!(a.same_blocks(&b));
        assert_eq!(a.blocks()[0], [1, 3]);
        assert_eq!(a.block_of(3), 0);
    }
}
