//! Exact planar embedding of subsets as points of the zonogon, and the exact
//! predicates shared by validation, pattern regions and rendering.
//!
//! Coordinates are integers. The default generators are lattice points of the
//! circle `x² + y² = R²` with `R = 5·13·17·29·37`, which are exactly the
//! rational points of the unit circle with denominator `R`, scaled by `R`.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::subset::{GroundSize, SubsetWord};

/// Radius of the lattice circle carrying the default generators.
pub const CIRCLE_RADIUS: i64 = 5 * 13 * 17 * 29 * 37;

/// Largest `n` for which the extended genericity check runs at construction.
const GENERICITY_CHECK_MAX_N: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PlanePoint {
    pub x: i128,
    pub y: i128,
}

impl PlanePoint {
    pub const ORIGIN: PlanePoint = PlanePoint { x: 0, y: 0 };

    pub fn new(x: i128, y: i128) -> Self {
        PlanePoint { x, y }
    }

    pub fn add(self, o: Self) -> Self {
        PlanePoint::new(self.x + o.x, self.y + o.y)
    }

    pub fn sub(self, o: Self) -> Self {
        PlanePoint::new(self.x - o.x, self.y - o.y)
    }

    pub fn scale(self, k: i128) -> Self {
        PlanePoint::new(self.x * k, self.y * k)
    }

    pub fn cross(self, o: Self) -> i128 {
        self.x * o.y - self.y * o.x
    }

    pub fn dot(self, o: Self) -> i128 {
        self.x * o.x + self.y * o.y
    }
}

/// Twice the signed area of triangle `abc`; positive when counterclockwise.
pub fn orient(a: PlanePoint, b: PlanePoint, c: PlanePoint) -> i128 {
    b.sub(a).cross(c.sub(a))
}

/// Compares the directions of two nonzero vectors by angle in `[0, 2π)`.
pub fn cmp_angle(u: PlanePoint, v: PlanePoint) -> Ordering {
    let half = |p: PlanePoint| {
        if p.y > 0 || (p.y == 0 && p.x > 0) {
            0
        } else {
            1
        }
    };
    half(u).cmp(&half(v)).then_with(|| 0.cmp(&u.cross(v)))
}

/// True when `p` lies on the closed segment `ab`.
pub fn on_segment(p: PlanePoint, a: PlanePoint, b: PlanePoint) -> bool {
    orient(a, b, p) == 0
        && p.x >= a.x.min(b.x)
        && p.x <= a.x.max(b.x)
        && p.y >= a.y.min(b.y)
        && p.y <= a.y.max(b.y)
}

/// The open segments `ab` and `cd` cross at a single interior point.
pub fn segments_properly_cross(a: PlanePoint, b: PlanePoint, c: PlanePoint, d: PlanePoint) -> bool {
    let o1 = orient(a, b, c).signum();
    let o2 = orient(a, b, d).signum();
    let o3 = orient(c, d, a).signum();
    let o4 = orient(c, d, b).signum();
    o1 * o2 < 0 && o3 * o4 < 0
}

/// The closed segments `ab` and `cd` share at least one point.
pub fn segments_intersect(a: PlanePoint, b: PlanePoint, c: PlanePoint, d: PlanePoint) -> bool {
    segments_properly_cross(a, b, c, d)
        || on_segment(c, a, b)
        || on_segment(d, a, b)
        || on_segment(a, c, d)
        || on_segment(b, c, d)
}

/// Collinear segments sharing more than a single point.
pub fn segments_overlap(a: PlanePoint, b: PlanePoint, c: PlanePoint, d: PlanePoint) -> bool {
    if orient(a, b, c) != 0 || orient(a, b, d) != 0 {
        return false;
    }
    let dir = b.sub(a);
    let t = |p: PlanePoint| p.sub(a).dot(dir);
    let (lo1, hi1) = (0, dir.dot(dir));
    let (lo2, hi2) = (t(c).min(t(d)), t(c).max(t(d)));
    lo1.max(lo2) < hi1.min(hi2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Location {
    Inside,
    On,
    Outside,
}

/// A sequence of points, optionally closed back to its start.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polyline {
    pub points: Vec<PlanePoint>,
    pub closed: bool,
}

impl Polyline {
    pub fn closed(points: Vec<PlanePoint>) -> Self {
        Polyline {
            points,
            closed: true,
        }
    }

    pub fn segments(&self) -> impl Iterator<Item = (PlanePoint, PlanePoint)> + '_ {
        let m = self.points.len();
        let count = if self.closed { m } else { m.saturating_sub(1) };
        (0..count).map(move |i| (self.points[i], self.points[(i + 1) % m]))
    }

    /// Twice the signed enclosed area (closed polylines).
    pub fn area2(&self) -> i128 {
        self.segments().map(|(a, b)| a.cross(b)).sum()
    }

    /// Finds two segments that cross, overlap, or touch away from shared
    /// consecutive endpoints. Touching at repeated vertices is not counted.
    pub fn first_self_crossing(&self) -> Option<(usize, usize)> {
        let segs: Vec<_> = self.segments().collect();
        let m = segs.len();
        for i in 0..m {
            for j in i + 1..m {
                let (a, b) = segs[i];
                let (c, d) = segs[j];
                if segments_properly_cross(a, b, c, d) || segments_overlap(a, b, c, d) {
                    return Some((i, j));
                }
                let touch = [(c, a, b), (d, a, b), (a, c, d), (b, c, d)]
                    .iter()
                    .any(|&(p, s, t)| p != s && p != t && on_segment(p, s, t));
                if touch {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_self_crossing(&self) -> bool {
        self.first_self_crossing().is_some()
    }

    /// Winding number of the closed curve around `p` (which must not lie on it).
    pub fn winding_number(&self, p: PlanePoint) -> i64 {
        let mut wn = 0i64;
        for (a, b) in self.segments() {
            if a.y <= p.y {
                if b.y > p.y && orient(a, b, p) > 0 {
                    wn += 1;
                }
            } else if b.y <= p.y && orient(a, b, p) < 0 {
                wn -= 1;
            }
        }
        wn
    }

    pub fn is_on(&self, p: PlanePoint) -> bool {
        self.segments().any(|(a, b)| on_segment(p, a, b))
    }
}

/// Locates `p` relative to a closed, non-self-crossing curve.
pub fn point_in_closed_polyline(p: PlanePoint, zeta: &Polyline) -> Result<Location> {
    if !zeta.closed {
        return Err(Error::Pattern("point location needs a closed curve".into()));
    }
    if zeta.is_self_crossing() {
        return Err(Error::SelfCrossing);
    }
    Ok(locate_unchecked(p, zeta))
}

/// Point location without the self-crossing check.
pub fn locate_unchecked(p: PlanePoint, zeta: &Polyline) -> Location {
    if zeta.is_on(p) {
        Location::On
    } else if zeta.winding_number(p) != 0 {
        Location::Inside
    } else {
        Location::Outside
    }
}

/// An exact rational number, used only for generator interchange.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rational {
    pub num: i64,
    pub den: i64,
}

/// Plane vectors `ξ_1, ..., ξ_n` stored as integers over a common denominator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generators {
    xi: Vec<PlanePoint>,
    denominator: i64,
}

fn lattice_upper_semicircle() -> &'static [(i64, i64)] {
    static POINTS: OnceLock<Vec<(i64, i64)>> = OnceLock::new();
    POINTS.get_or_init(|| {
        let r = CIRCLE_RADIUS;
        let mut pts = Vec::new();
        for x in -r + 1..r {
            let y2 = (r * r - x * x) as u64;
            let y = y2.isqrt();
            if y * y == y2 {
                pts.push((x, y as i64));
            }
        }
        pts
    })
}

fn default_cache() -> &'static [OnceLock<Generators>; 17] {
    static CACHE: OnceLock<[OnceLock<Generators>; 17]> = OnceLock::new();
    CACHE.get_or_init(|| std::array::from_fn(|_| OnceLock::new()))
}

impl Generators {
    /// Equal-norm generators for `[n]`, running clockwise from the leftmost.
    pub fn default_for(n: usize) -> Result<Generators> {
        GroundSize::new(n)?;
        if let Some(g) = default_cache()[n].get() {
            return Ok(g.clone());
        }
        let g = Self::variant(n, 0)?;
        Ok(default_cache()[n].get_or_init(|| g).clone())
    }

    /// Alternative equal-norm generator sets; `variant(n, 0)` is the default.
    pub fn variant(n: usize, v: u64) -> Result<Generators> {
        GroundSize::new(n)?;
        const ATTEMPTS: u64 = 64;
        for attempt in 0..ATTEMPTS {
            let seed = (n as u64) << 32 | v << 8 | attempt;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let pts = lattice_upper_semicircle();
            let mut xi = Vec::with_capacity(n);
            for k in 1..=n {
                let jitter: f64 = rng.gen_range(-0.3..0.3);
                let target = std::f64::consts::PI * ((n - k) as f64 + 0.5 + jitter) / n as f64;
                let best = pts
                    .iter()
                    .min_by(|a, b| {
                        let da = ((a.1 as f64).atan2(a.0 as f64) - target).abs();
                        let db = ((b.1 as f64).atan2(b.0 as f64) - target).abs();
                        da.total_cmp(&db)
                    })
                    .unwrap();
                xi.push(PlanePoint::new(best.0 as i128, best.1 as i128));
            }
            let g = Generators {
                xi,
                denominator: CIRCLE_RADIUS,
            };
            if g.check().is_ok() {
                return Ok(g);
            }
        }
        Err(Error::Generators(format!(
            "no generic choice found for n = {n} after {ATTEMPTS} attempts"
        )))
    }

    /// Builds generators from rational coordinates, brought to a common
    /// denominator, and checks the required invariants.
    pub fn from_rationals(coords: &[[Rational; 2]]) -> Result<Generators> {
        GroundSize::new(coords.len())?;
        let mut den: i128 = 1;
        for c in coords.iter().flatten() {
            if c.den <= 0 {
                return Err(Error::Generators("denominators must be positive".into()));
            }
            let d = c.den as i128;
            den = den / gcd(den, d) * d;
            if den > i64::MAX as i128 / 4 {
                return Err(Error::Generators("common denominator too large".into()));
            }
        }
        let xi = coords
            .iter()
            .map(|[x, y]| {
                PlanePoint::new(
                    x.num as i128 * (den / x.den as i128),
                    y.num as i128 * (den / y.den as i128),
                )
            })
            .collect();
        let g = Generators {
            xi,
            denominator: den as i64,
        };
        g.check()?;
        Ok(g)
    }

    pub fn to_rationals(&self) -> Vec<[Rational; 2]> {
        let d = self.denominator;
        self.xi
            .iter()
            .map(|p| {
                let r = |v: i128| {
                    let g = gcd(v.abs(), d as i128).max(1);
                    Rational {
                        num: (v / g) as i64,
                        den: (d as i128 / g) as i64,
                    }
                };
                [r(p.x), r(p.y)]
            })
            .collect()
    }

    fn check(&self) -> Result<()> {
        let n = self.n();
        if self.xi.iter().any(|p| p.y <= 0) {
            return Err(Error::Generators(
                "generators must lie in the open upper half-plane".into(),
            ));
        }
        if self.xi.windows(2).any(|w| w[0].cross(w[1]) >= 0) {
            return Err(Error::Generators(
                "generators must run strictly clockwise".into(),
            ));
        }
        let mut seen = HashSet::with_capacity(1 << n);
        for m in 0u32..(1 << n) {
            if !seen.insert(self.embed(SubsetWord::from_mask(m as u16))) {
                return Err(Error::Generators("subset sums are not injective".into()));
            }
        }
        if n <= GENERICITY_CHECK_MAX_N {
            self.check_no_accidental_parallels()?;
        }
        Ok(())
    }

    /// No signed 0/±1 combination of generators is parallel to some `ξ_i` or
    /// `ξ_j - ξ_i` unless it is that very vector (up to sign). This rules out
    /// accidental collinearities among subset points.
    fn check_no_accidental_parallels(&self) -> Result<()> {
        let n = self.n();
        let mut dirs: Vec<(Vec<i8>, PlanePoint)> = Vec::new();
        for i in 0..n {
            let mut c = vec![0i8; n];
            c[i] = 1;
            dirs.push((c, self.xi[i]));
            for j in i + 1..n {
                let mut c = vec![0i8; n];
                c[i] = -1;
                c[j] = 1;
                dirs.push((c, self.xi[j].sub(self.xi[i])));
            }
        }
        let total = 3usize.pow(n as u32);
        let mut coeff = vec![0i8; n];
        for code in 0..total {
            let mut r = code;
            let mut v = PlanePoint::ORIGIN;
            for (i, c) in coeff.iter_mut().enumerate() {
                *c = (r % 3) as i8 - 1;
                r /= 3;
                v = v.add(self.xi[i].scale(*c as i128));
            }
            if coeff.iter().all(|&c| c == 0) {
                continue;
            }
            if v == PlanePoint::ORIGIN {
                return Err(Error::Generators("a signed combination vanishes".into()));
            }
            for (dc, d) in &dirs {
                if d.cross(v) == 0 {
                    let same = coeff.iter().zip(dc).all(|(a, b)| a == b);
                    let opposite = coeff.iter().zip(dc).all(|(a, b)| *a == -*b);
                    if !same && !opposite {
                        return Err(Error::Generators("accidental parallel combination".into()));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.xi.len()
    }

    pub fn xi(&self, i: usize) -> PlanePoint {
        self.xi[i - 1]
    }

    pub fn vectors(&self) -> &[PlanePoint] {
        &self.xi
    }

    /// Real coordinates are integer coordinates divided by this.
    pub fn denominator(&self) -> i64 {
        self.denominator
    }

    /// The point `Σ_{i ∈ X} ξ_i`.
    pub fn embed(&self, x: SubsetWord) -> PlanePoint {
        x.iter()
            .fold(PlanePoint::ORIGIN, |acc, i| acc.add(self.xi[i - 1]))
    }

    /// Counterclockwise boundary of the zonogon, starting at `∅`: the right
    /// boundary upward, then the left boundary downward.
    pub fn zonogon_boundary(&self) -> Polyline {
        let (left, right) = boundary_vertices(self.n());
        let mut pts: Vec<PlanePoint> = right.iter().map(|&x| self.embed(x)).collect();
        pts.extend(
            left.iter()
                .rev()
                .skip(1)
                .take(self.n() - 1)
                .map(|&x| self.embed(x)),
        );
        Polyline::closed(pts)
    }

    /// Twice the area of the zonogon.
    pub fn zonogon_area2(&self) -> i128 {
        if self.n() < 2 {
            return 0;
        }
        self.zonogon_boundary().area2()
    }

    pub fn to_f64(&self, p: PlanePoint) -> (f64, f64) {
        let d = self.denominator as f64;
        (p.x as f64 / d, p.y as f64 / d)
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// The left boundary `∅, [1], [1..2], ..., [n]` and the right boundary
/// `∅, {n}, {n-1, n}, ..., [n]`.
pub fn boundary_vertices(n: usize) -> (Vec<SubsetWord>, Vec<SubsetWord>) {
    let left = (0..=n).map(|i| SubsetWord::interval(1, i)).collect();
    let right = (0..=n)
        .map(|i| SubsetWord::interval(n - i + 1, n))
        .collect();
    (left, right)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(x: i128, y: i128) -> PlanePoint {
        PlanePoint::new(x, y)
    }

    #[test]
    fn default_generators_are_equal_norm_and_clockwise() {
        for n in 1..=16 {
            let g = Generators::default_for(n).unwrap();
            let r2 = (CIRCLE_RADIUS as i128).pow(2);
            assert!(g.vectors().iter().all(|v| v.dot(*v) == r2 && v.y > 0));
            assert!(g.vectors().windows(2).all(|w| w[0].cross(w[1]) < 0));
        }
    }

    #[test]
    fn small_zonogons() {
        let g = Generators::default_for(1).unwrap();
        assert_eq!(g.embed(SubsetWord::EMPTY), PlanePoint::ORIGIN);
        assert_eq!(g.embed(SubsetWord::of(&[1])), g.xi(1));
        let g = Generators::default_for(2).unwrap();
        assert!(g.xi(1).cross(g.xi(2)) < 0);
        let b = g.zonogon_boundary();
        assert_eq!(b.points.len(), 4);
        assert!(b.area2() > 0);
        let g = Generators::default_for(4).unwrap();
        let pts: HashSet<_> = GroundSize::new(4)
            .unwrap()
            .all_subsets()
            .map(|x| g.embed(x))
            .collect();
        assert_eq!(pts.len(), 16);
        let top = g
            .vectors()
            .iter()
            .fold(PlanePoint::ORIGIN, |a, v| a.add(*v));
        assert_eq!(g.embed(SubsetWord::full(4)), top);
    }

    #[test]
    fn boundaries() {
        let (l, r) = boundary_vertices(3);
        let s = SubsetWord::of;
        assert_eq!(l, vec![s(&[]), s(&[1]), s(&[1, 2]), s(&[1, 2, 3])]);
        assert_eq!(r, vec![s(&[]), s(&[3]), s(&[2, 3]), s(&[1, 2, 3])]);
        let (l, r) = boundary_vertices(1);
        assert_eq!(l, r);
    }

    #[test]
    fn variants_differ() {
        let gs: Vec<_> = (0..3).map(|v| Generators::variant(5, v).unwrap()).collect();
        assert_ne!(gs[0], gs[1]);
        assert_ne!(gs[1], gs[2]);
        assert_eq!(gs[0], Generators::default_for(5).unwrap());
    }

    #[test]
    fn rational_round_trip_and_rejections() {
        let g = Generators::default_for(3).unwrap();
        let back = Generators::from_rationals(&g.to_rationals()).unwrap();
        assert_eq!(back.n(), 3);
        for i in 1..=3 {
            assert_eq!(back.xi(i).cross(g.xi(i)), 0);
        }
        let r = |num, den| Rational { num, den };
        let ccw = [[r(1, 1), r(1, 1)], [r(-1, 1), r(1, 1)]];
        assert!(Generators::from_rationals(&ccw).is_err());
        let low = [[r(-1, 1), r(0, 1)], [r(1, 1), r(1, 1)]];
        assert!(Generators::from_rationals(&low).is_err());
        let ok = [[r(-1, 2), r(1, 1)], [r(1, 3), r(1, 1)]];
        assert!(Generators::from_rationals(&ok).is_ok());
    }

    #[test]
    fn crossing_examples() {
        assert!(segments_properly_cross(p(0, 0), p(2, 2), p(0, 2), p(2, 0)));
        assert!(!segments_properly_cross(p(0, 0), p(1, 0), p(2, 0), p(3, 0)));
        assert!(!segments_intersect(p(0, 0), p(1, 0), p(2, 0), p(3, 0)));
        assert!(segments_overlap(p(0, 0), p(2, 0), p(1, 0), p(3, 0)));
        assert!(!segments_overlap(p(0, 0), p(1, 0), p(1, 0), p(3, 0)));
    }

    #[test]
    fn point_location_examples() {
        let sq = Polyline::closed(vec![p(0, 0), p(4, 0), p(4, 4), p(0, 4)]);
        assert_eq!(point_in_closed_polyline(p(0, 0), &sq), Ok(Location::On));
        assert_eq!(point_in_closed_polyline(p(2, 0), &sq), Ok(Location::On));
        assert_eq!(point_in_closed_polyline(p(2, 2), &sq), Ok(Location::Inside));
        assert_eq!(
            point_in_closed_polyline(p(5, 2), &sq),
            Ok(Location::Outside)
        );
        let bow = Polyline::closed(vec![p(0, 0), p(4, 4), p(4, 0), p(0, 4)]);
        assert_eq!(
            point_in_closed_polyline(p(1, 2), &bow),
            Err(Error::SelfCrossing)
        );
    }

    #[test]
    fn angle_order() {
        let dirs = [
            p(1, 0),
            p(1, 1),
            p(0, 1),
            p(-1, 1),
            p(-1, 0),
            p(-1, -1),
            p(0, -1),
            p(1, -1),
        ];
        for w in dirs.windows(2) {
            assert_eq!(cmp_angle(w[0], w[1]), Ordering::Less);
        }
        assert_eq!(cmp_angle(p(2, 2), p(1, 1)), Ordering::Equal);
    }

    /// Even-odd ray casting with rational crossing abscissas.
    fn ray_cast(q: PlanePoint, poly: &[PlanePoint]) -> bool {
        let m = poly.len();
        let mut inside = false;
        for i in 0..m {
            let (a, b) = (poly[i], poly[(i + 1) % m]);
            if (a.y > q.y) != (b.y > q.y) {
                // x-coordinate of the crossing compared to q.x without division
                let lhs = (q.x - a.x) * (b.y - a.y);
                let rhs = (b.x - a.x) * (q.y - a.y);
                let left_of = if b.y > a.y { lhs < rhs } else { lhs > rhs };
                if left_of {
                    inside = !inside;
                }
            }
        }
        inside
    }

    proptest! {
        #[test]
        fn winding_agrees_with_ray_cast(x in -30i128..30, y in -30i128..30) {
            let poly = vec![p(-20, -20), p(10, -25), p(25, 0), p(5, 5), p(20, 20), p(-15, 15), p(-5, 0)];
            let zeta = Polyline::closed(poly.clone());
            let q = p(x, y);
            match point_in_closed_polyline(q, &zeta).unwrap() {
                Location::On => {}
                loc => prop_assert_eq!(loc == Location::Inside, ray_cast(q, &poly)),
            }
        }

        #[test]
        fn embedding_is_monotone(mask in 0u16..256, extra in 0u16..256) {
            let g = Generators::default_for(8).unwrap();
            let x = SubsetWord::from_mask(mask);
            let y = x.union(SubsetWord::from_mask(extra));
            let d = g.embed(y).sub(g.embed(x));
            if x != y {
                prop_assert!(d.y > 0);
                let diff = y.difference(x);
                let lo = g.xi(diff.max());
                let hi = g.xi(diff.min());
                prop_assert!(lo.cross(d) >= 0 && d.cross(hi) >= 0);
            }
        }
    }
}
