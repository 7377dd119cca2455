//! Maximal-clique search over graphs with at most 256 vertices.

use crate::limits::MAX_DOMAIN;

/// Fixed-width bitset of 256 bits.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, Debug)]
pub struct Bits([u64; 4]);

impl Bits {
    pub const fn empty() -> Self {
        Bits([0; 4])
    }

    pub fn first_n(n: usize) -> Self {
        let mut b = Bits::empty();
        for i in 0..n {
            b.insert(i);
        }
        b
    }

    pub fn insert(&mut self, i: usize) {
        self.0[i >> 6] |= 1 << (i & 63);
    }

    pub fn remove(&mut self, i: usize) {
        self.0[i >> 6] &= !(1 << (i & 63));
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0[i >> 6] >> (i & 63) & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    pub fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn and(&self, o: &Bits) -> Bits {
        Bits(std::array::from_fn(|k| self.0[k] & o.0[k]))
    }

    pub fn and_not(&self, o: &Bits) -> Bits {
        Bits(std::array::from_fn(|k| self.0[k] & !o.0[k]))
    }

    pub fn or(&self, o: &Bits) -> Bits {
        Bits(std::array::from_fn(|k| self.0[k] | o.0[k]))
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..4).flat_map(move |k| {
            let mut w = self.0[k];
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * 64 + t)
            })
        })
    }
}

/// Undirected graph on vertices `0..len` with bitset adjacency.
#[derive(Clone, Debug)]
pub struct CompatGraph {
    adj: Vec<Bits>,
}

impl CompatGraph {
    /// Builds the graph with an edge `{u, v}` whenever `compatible(u, v)`.
    /// The predicate must be symmetric. Panics above 256 vertices.
    pub fn new(len: usize, mut compatible: impl FnMut(usize, usize) -> bool) -> Self {
        assert!(len <= MAX_DOMAIN, "graph too large for clique search");
        let mut adj = vec![Bits::empty(); len];
        for u in 0..len {
            for v in u + 1..len {
                if compatible(u, v) {
                    adj[u].insert(v);
                    adj[v].insert(u);
                }
            }
        }
        CompatGraph { adj }
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn neighbors(&self, v: usize) -> &Bits {
        &self.adj[v]
    }

    /// Calls `visit` once per maximal clique (as a bitset of vertices).
    ///
    /// Vertices adjacent to every other vertex lie in every maximal clique;
    /// they are factored out before the search and added back to each result.
    pub fn for_each_maximal_clique(&self, mut visit: impl FnMut(&Bits)) {
        let n = self.len();
        let all = Bits::first_n(n);
        let mut universal = Bits::empty();
        for v in 0..n {
            if self.adj[v].count() == n - 1 {
                universal.insert(v);
            }
        }
        let p = all.and_not(&universal);
        self.expand(universal, p, Bits::empty(), &mut visit);
    }

    fn expand(&self, r: Bits, mut p: Bits, mut x: Bits, visit: &mut impl FnMut(&Bits)) {
        if p.is_empty() {
            if x.is_empty() {
                visit(&r);
            }
            return;
        }
        let pivot = p
            .or(&x)
            .iter()
            .max_by_key(|&u| p.and(&self.adj[u]).count())
            .expect("p is nonempty");
        let candidates = p.and_not(&self.adj[pivot]);
        for v in candidates.iter() {
            let mut r2 = r;
            r2.insert(v);
            self.expand(r2, p.and(&self.adj[v]), x.and(&self.adj[v]), visit);
            p.remove(v);
            x.insert(v);
        }
    }

    pub fn maximal_cliques(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        self.for_each_maximal_clique(|c| out.push(c.iter().collect()));
        out.sort();
        out
    }

    /// True when `clique` is a clique that no outside vertex extends.
    pub fn is_maximal_clique(&self, clique: &Bits) -> bool {
        let members: Vec<usize> = clique.iter().collect();
        let pairwise = members
            .iter()
            .all(|&u| clique.and_not(&self.adj[u]).iter().all(|w| w == u));
        pairwise
            && (0..self.len())
                .filter(|v| !clique.contains(*v))
                .all(|v| !clique.and_not(&self.adj[v]).is_empty())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// All maximal cliques by exhaustive subset scan (tiny graphs only).
    fn brute(g: &CompatGraph) -> Vec<Vec<usize>> {
        let n = g.len();
        let mut out = Vec::new();
        for m in 0u32..(1 << n) {
            let mut b = Bits::empty();
            for i in 0..n {
                if m >> i & 1 == 1 {
                    b.insert(i);
                }
            }
            if g.is_maximal_clique(&b) {
                out.push(b.iter().collect());
            }
        }
        out.sort();
        out
    }

    #[test]
    fn matches_brute_force_on_small_graphs() {
        for seed in 0u64..60 {
            let n = 1 + (seed % 11) as usize;
            let g = CompatGraph::new(n, |u, v| {
                (u * 7 + v * 13 + seed as usize * (u + v + 1)) % 3 != 0
            });
            assert_eq!(g.maximal_cliques(), brute(&g), "seed {seed}");
        }
    }

    #[test]
    fn empty_and_complete_graphs() {
        let g = CompatGraph::new(0, |_, _| true);
        assert_eq!(g.maximal_cliques(), vec![Vec::<usize>::new()]);
        let g = CompatGraph::new(4, |_, _| true);
        assert_eq!(g.maximal_cliques(), vec![vec![0, 1, 2, 3]]);
        let g = CompatGraph::new(3, |_, _| false);
        assert_eq!(g.maximal_cliques(), vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn bits_cross_word_boundaries() {
        let mut b = Bits::empty();
        for i in [0, 63, 64, 130, 255] {
            b.insert(i);
        }
        assert_eq!(b.iter().collect::<Vec<_>>(), vec![0, 63, 64, 130, 255]);
        assert_eq!(b.count(), 5);
        b.remove(64);
        assert!(!b.contains(64));
    }
}
