//! Rebuilding the unique combi whose spectrum is a given maximal w-collection.

use std::collections::{BTreeSet, HashSet};

use super::{chain_path, Combi, DeltaTile, Lens, NablaTile};
use crate::enumerate::is_maximal_weak;
use crate::error::{Error, Result};
use crate::planar::Edge;
use crate::subset::{SetFamily, SubsetWord};

/// Triangles filling the angles between consecutive V-edges at each vertex.
fn triangles(f: &SetFamily) -> (BTreeSet<DeltaTile>, BTreeSet<NablaTile>) {
    let n = f.n();
    let mut deltas = BTreeSet::new();
    let mut nablas = BTreeSet::new();
    for a in f.iter() {
        let up: Vec<usize> = (1..=n)
            .filter(|&i| !a.contains(i) && f.contains(a.with(i)))
            .collect();
        for w in up.windows(2) {
            nablas.insert(NablaTile::with_types(a, w[0], w[1]).unwrap());
        }
        let down: Vec<usize> = a.iter().filter(|&i| f.contains(a.without(i))).collect();
        for w in down.windows(2) {
            deltas.insert(DeltaTile::with_types(a, w[0], w[1]).unwrap());
        }
    }
    (deltas, nablas)
}

/// Peels lenses off the girdle region between `lower` and `upper`, bottom first.
fn peel_lenses(
    f: &SetFamily,
    h: usize,
    lower: Vec<SubsetWord>,
    upper: &[SubsetWord],
) -> Result<Vec<Lens>> {
    let fixed: HashSet<Edge> = upper.windows(2).map(|w| (w[0], w[1])).collect();
    let mut cur = lower;
    let mut out = Vec::new();
    'outer: while cur != upper {
        let m = cur.len() - 1;
        let mut p = 0;
        while p < m {
            if fixed.contains(&(cur[p], cur[p + 1])) {
                p += 1;
                continue;
            }
            let union = cur[p].union(cur[p + 1]);
            let mut q = p + 1;
            while q < m
                && !fixed.contains(&(cur[q], cur[q + 1]))
                && cur[q].union(cur[q + 1]) == union
            {
                q += 1;
            }
            if q >= p + 2 {
                let center = cur[p].intersection(cur[q]);
                let a = cur[p].difference(center).sole().unwrap();
                let b = cur[q].difference(center).sole().unwrap();
                let mut top = vec![cur[p]];
                top.extend(
                    (a + 1..b)
                        .filter(|&c| !center.contains(c))
                        .map(|c| center.with(c))
                        .filter(|&y| f.contains(y)),
                );
                top.push(cur[q]);
                if top.len() > 2 {
                    let lens = Lens::new(top.clone(), cur[p..=q].to_vec())?;
                    cur.splice(p..=q, top);
                    out.push(lens);
                    continue 'outer;
                }
            }
            p = q;
        }
        return Err(Error::Reconstruction(format!(
            "level {h}: no lens can be peeled from the lower path {}",
            cur.iter().map(|x| x.label()).collect::<Vec<_>>().join(",")
        )));
    }
    Ok(out)
}

/// The unique combi with spectrum `f`.
pub fn from_w_collection(f: &SetFamily) -> Result<Combi> {
    if !is_maximal_weak(f) {
        return Err(Error::NotMaximal("weakly separated"));
    }
    let n = f.n();
    let (deltas, nablas) = triangles(f);
    let mut lenses = BTreeSet::new();
    for h in 1..n {
        let low: Vec<Edge> = nablas
            .iter()
            .filter(|t| t.bottom().len() + 1 == h)
            .map(|t| t.base())
            .collect();
        let up: Vec<Edge> = deltas
            .iter()
            .filter(|d| d.apex().len() == h + 1)
            .map(|d| d.base())
            .collect();
        let lower = chain_path(&low, h, n)?;
        let upper = chain_path(&up, h, n)?;
        lenses.extend(peel_lenses(f, h, lower, &upper)?);
    }
    Combi::new(f.ground(), deltas, nablas, lenses)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combi::{from_rhombus, spectrum};
    use crate::enumerate::enumerate_maximal;
    use crate::rhombus::from_s_collection;
    use crate::separation::Separation;
    use crate::subset::GroundSize;

    fn s(e: &[usize]) -> SubsetWord {
        SubsetWord::of(e)
    }

    #[test]
    fn intervals_give_the_semi_rhombus_combi() {
        for n in 1..=6 {
            let f = SetFamily::intervals(GroundSize::new(n).unwrap());
            let k = from_w_collection(&f).unwrap();
            assert_eq!(k, from_rhombus(&from_s_collection(&f).unwrap()));
        }
    }

    #[test]
    fn co_intervals_of_z3() {
        let g = GroundSize::new(3).unwrap();
        let f = SetFamily::collect(
            g,
            [&[][..], &[1], &[3], &[1, 3], &[1, 2], &[2, 3], &[1, 2, 3]].map(s),
        )
        .unwrap();
        let k = from_w_collection(&f).unwrap();
        assert_eq!(spectrum(&k), f);
        assert!(k.lenses().is_empty());
    }

    #[test]
    fn non_maximal_input_is_rejected() {
        let g = GroundSize::new(3).unwrap();
        let f = SetFamily::intervals(g)
            .replaced(s(&[2]), s(&[1, 3]))
            .unwrap();
        let f = SetFamily::new(g, f.iter().filter(|x| *x != s(&[1, 2])).collect()).unwrap();
        assert_eq!(
            from_w_collection(&f),
            Err(Error::NotMaximal("weakly separated"))
        );
    }

    #[test]
    fn every_maximal_w_collection_round_trips() {
        for n in 2..=5 {
            let g = GroundSize::new(n).unwrap();
            let r = enumerate_maximal(&SetFamily::hypercube(g), Separation::Weak).unwrap();
            let mut with_lens = 0;
            for f in &r.maximal_collections {
                let k = from_w_collection(f).unwrap();
                assert_eq!(&spectrum(&k), f);
                with_lens += usize::from(!k.lenses().is_empty());
            }
            assert_eq!(with_lens > 0, n >= 4);
        }
    }
}
