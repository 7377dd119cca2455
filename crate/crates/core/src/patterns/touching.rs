//! Crossing test for closed curves that revisit points or retrace edges.
//!
//! Two passages through a common point, or two strands running along a
//! shared stretch of the curve, cross exactly when the free ends of one strand
//! lie on opposite sides of the other.

use std::cmp::Ordering;

use super::CyclicPattern;
use crate::geometry::{segments_intersect, segments_overlap, Generators, PlanePoint};
use crate::subset::SubsetWord;

/// Orders `x` and `y` by the counterclockwise angle swept from `u`.
fn cmp_from(u: PlanePoint, x: PlanePoint, y: PlanePoint) -> Ordering {
    let half = |p: PlanePoint| {
        let c = u.cross(p);
        if c > 0 || (c == 0 && u.dot(p) > 0) {
            0
        } else {
            1
        }
    };
    half(x).cmp(&half(y)).then_with(|| 0.cmp(&x.cross(y)))
}

fn same_ray(u: PlanePoint, v: PlanePoint) -> bool {
    u.cross(v) == 0 && u.dot(v) > 0
}

/// Side of the path `a_in -> p -> a_out` on which `x` leaves `p`: `true` for
/// the left, `None` when `x` leaves along the path itself.
fn side(g: &Generators, p: SubsetWord, a_in: SubsetWord, a_out: SubsetWord, x: SubsetWord) -> Option<bool> {
    let o = g.embed(p);
    let (u, w, v) = (g.embed(a_out).sub(o), g.embed(a_in).sub(o), g.embed(x).sub(o));
    if same_ray(u, v) || same_ray(w, v) {
        return None;
    }
    Some(cmp_from(u, v, w) == Ordering::Less)
}

struct Walk<'a> {
    c: &'a [SubsetWord],
}

impl Walk<'_> {
    fn at(&self, i: isize) -> SubsetWord {
        self.c[self.idx(i)]
    }

    fn idx(&self, i: isize) -> usize {
        i.rem_euclid(self.c.len() as isize) as usize
    }
}

fn differ(a: Option<bool>, b: Option<bool>) -> bool {
    match (a, b) {
        (Some(x), Some(y)) => x != y,
        _ => true,
    }
}

/// Strands through positions `p` and `q` running the same way.
fn parallel_cross(g: &Generators, w: &Walk, p: isize, q: isize) -> bool {
    let r = w.c.len() as isize;
    let (mut t0, mut t1) = (0, 0);
    while w.at(p + t1 + 1) == w.at(q + t1 + 1) {
        t1 += 1;
        if t1 >= r {
            return false;
        }
    }
    while w.at(p + t0 - 1) == w.at(q + t0 - 1) {
        t0 -= 1;
        if t1 - t0 >= r {
            return false;
        }
    }
    let start = side(g, w.at(p + t0), w.at(p + t0 - 1), w.at(p + t0 + 1), w.at(q + t0 - 1));
    let end = side(g, w.at(p + t1), w.at(p + t1 - 1), w.at(p + t1 + 1), w.at(q + t1 + 1));
    differ(start, end)
}

/// Strands through positions `p` and `q` running in opposite directions
/// along a stretch of at least one edge. `None` when no such stretch exists.
fn antiparallel_cross(g: &Generators, w: &Walk, p: isize, q: isize) -> Option<bool> {
    let r = w.c.len() as isize;
    let (mut t0, mut t1) = (0, 0);
    loop {
        let (a, b) = (w.idx(p + t1 + 1), w.idx(q - t1 - 1));
        if a == b {
            return Some(false);
        }
        if w.c[a] != w.c[b] {
            break;
        }
        t1 += 1;
        if t1 >= r {
            return Some(false);
        }
    }
    loop {
        let (a, b) = (w.idx(p + t0 - 1), w.idx(q - t0 + 1));
        if a == b {
            return Some(false);
        }
        if w.c[a] != w.c[b] {
            break;
        }
        t0 -= 1;
        if t1 - t0 >= r {
            return Some(false);
        }
    }
    if t0 == t1 {
        return None;
    }
    let start = side(g, w.at(p + t0), w.at(p + t0 - 1), w.at(p + t0 + 1), w.at(q - t0 + 1));
    let end = side(g, w.at(p + t1), w.at(p + t1 - 1), w.at(p + t1 + 1), w.at(q - t1 - 1));
    Some(differ(start, end))
}

pub(crate) fn has_crossing(s: &CyclicPattern, g: &Generators) -> bool {
    let c = s.cycle();
    let r = c.len();
    let segs: Vec<(SubsetWord, SubsetWord)> = s.steps().collect();
    for i in 0..r {
        for j in i + 1..r {
            let ((a, b), (x, y)) = (segs[i], segs[j]);
            if (a, b) == (x, y) || (a, b) == (y, x) {
                continue;
            }
            let (pa, pb, px, py) = (g.embed(a), g.embed(b), g.embed(x), g.embed(y));
            if segments_overlap(pa, pb, px, py) {
                return true;
            }
            let shared = a == x || a == y || b == x || b == y;
            if !shared && segments_intersect(pa, pb, px, py) {
                return true;
            }
        }
    }
    let w = Walk { c };
    for p in 0..r {
        for q in p + 1..r {
            if c[p] != c[q] {
                continue;
            }
            let (p, q) = (p as isize, q as isize);
            let crossed = match antiparallel_cross(g, &w, p, q) {
                Some(v) => v,
                None => parallel_cross(g, &w, p, q),
            };
            if crossed {
                return true;
            }
        }
    }
    false
}
