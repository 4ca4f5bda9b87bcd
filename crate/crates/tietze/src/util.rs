//! Small shared helpers.

/// Plain union-find over `0..n`, used for generator quotients in colimits.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, i: usize) -> usize {
        let mut root = i;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = i;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Merges the classes of `a` and `b`; the smaller root index wins so the
    /// result is independent of call order.
    pub fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// Returns `base` if unused, otherwise `base` with enough `'` marks appended
/// to avoid every name in `taken`.
pub fn freshen(base: &str, taken: &[String]) -> String {
    let mut name = base.to_string();
    while taken.iter().any(|t| t == &name) {
        name.push('\'');
    }
    name
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn union_find_merges() {
        let mut uf = UnionFind::new(4);
        uf.union(1, 3);
        uf.union(3, 2);
        assert_eq!(uf.find(2), 1);
        assert_eq!(uf.find(0), 0);
    }

    #[test]
    fn freshen_avoids_collisions() {
        let taken = vec!["a".to_string(), "a'".to_string()];
        assert_eq!(freshen("b", &taken), "b");
        assert_eq!(freshen("a", &taken), "a''");
    }
}
