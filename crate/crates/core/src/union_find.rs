//! Component numbering on top of petgraph's disjoint-set forest.

pub(crate) use petgraph::unionfind::UnionFind;

/// Component id per element, numbered by smallest member.
pub(crate) fn labels(uf: &UnionFind<usize>, len: usize) -> (Vec<usize>, usize) {
    let mut id_of_root = vec![usize::MAX; len];
    let mut labels = Vec::with_capacity(len);
    let mut next = 0;
    for x in 0..len {
        let r = uf.find(x);
        if id_of_root[r] == usize::MAX {
            id_of_root[r] = next;
            next += 1;
        }
        labels.push(id_of_root[r]);
    }
    (labels, next)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_follow_smallest_member() {
        let mut uf = UnionFind::new(6);
        assert!(uf.union(4, 1));
        assert!(uf.union(5, 3));
        assert!(!uf.union(1, 4));
        let (labels, count) = labels(&uf, 6);
        assert_eq!(count, 4);
        assert_eq!(labels, vec![0, 1, 2, 3, 1, 3]);
    }
}
