//! Floating-point plane geometry with an explicit tolerance contract.
//!
//! Every primitive construction step has a numeric realization here. All
//! comparisons are relative to a scene scale (usually the diagonal of the
//! bounding box of the figure), so the same [`Kernel`] works for unit-size
//! test figures and for sampled scenes in `[0, 100]²`.

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::label::PointLabel;

#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
pub enum GeomError {
    #[error("degenerate input")]
    DegenerateInput,
    #[error("identical objects have infinitely many common points")]
    IdenticalObjects,
    #[error("point is not outside the circle")]
    PointNotOutside,
    #[error("lines are parallel")]
    ParallelLines,
    #[error("homothety ratio is zero")]
    ZeroRatio,
    #[error("degenerate triangle")]
    DegenerateTriangle,
}

pub type GeomResult<T> = Result<T, GeomError>;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }

    pub fn dot(self, o: Vec2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Vec2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, o: Vec2) -> f64 {
        (self - o).norm()
    }

    /// Counter-clockwise quarter turn.
    pub fn perp(self) -> Vec2 {
        Vec2::new(-self.y, self.x)
    }

    pub fn unit(self) -> Vec2 {
        self * (1.0 / self.norm())
    }

    pub fn midpoint(self, o: Vec2) -> Vec2 {
        (self + o) * 0.5
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Lexicographic order on `(x, y)`; used to make branch order deterministic.
    pub fn lex_cmp(&self, o: &Vec2) -> Ordering {
        self.x.total_cmp(&o.x).then(self.y.total_cmp(&o.y))
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, k: f64) -> Vec2 {
        Vec2::new(self.x * k, self.y * k)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

impl fmt::Display for Vec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// The line `{p : normal · p = offset}` with a unit normal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumLine {
    normal: Vec2,
    offset: f64,
}

impl NumLine {
    /// Builds a line from any non-zero normal; the normal is rescaled to unit length.
    pub fn from_normal(normal: Vec2, offset: f64) -> GeomResult<Self> {
        let n = normal.norm();
        if !(n > 0.0) || !n.is_finite() || !offset.is_finite() {
            return Err(GeomError::DegenerateInput);
        }
        Ok(NumLine { normal: normal * (1.0 / n), offset: offset / n })
    }

    /// Line through `p` with direction `dir`.
    pub fn through(p: Vec2, dir: Vec2) -> GeomResult<Self> {
        let normal = dir.perp();
        NumLine::from_normal(normal, normal.dot(p))
    }

    pub fn normal(&self) -> Vec2 {
        self.normal
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn direction(&self) -> Vec2 {
        -self.normal.perp()
    }

    /// The point of the line closest to the origin.
    pub fn anchor(&self) -> Vec2 {
        self.normal * self.offset
    }

    pub fn signed_distance(&self, p: Vec2) -> f64 {
        self.normal.dot(p) - self.offset
    }

    pub fn distance(&self, p: Vec2) -> f64 {
        self.signed_distance(p).abs()
    }

    pub fn project(&self, p: Vec2) -> Vec2 {
        p - self.normal * self.signed_distance(p)
    }

    pub fn is_parallel(&self, o: &NumLine, eps: f64) -> bool {
        self.normal.cross(o.normal).abs() <= eps
    }

    /// Same point set, up to `eps` (absolute) near the origin-anchored frame.
    pub fn same_as(&self, o: &NumLine, eps: f64) -> bool {
        let (n, c) = if self.normal.dot(o.normal) < 0.0 { (-o.normal, -o.offset) } else { (o.normal, o.offset) };
        (self.normal - n).norm() <= eps && (self.offset - c).abs() <= eps
    }

    /// Canonical orientation: normal in the upper half plane (ties broken by x > 0).
    pub fn canonical(&self) -> NumLine {
        let flip = self.normal.y < 0.0 || (self.normal.y == 0.0 && self.normal.x < 0.0);
        if flip {
            NumLine { normal: -self.normal, offset: -self.offset }
        } else {
            *self
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumCircle {
    pub center: Vec2,
    pub radius: f64,
}

impl NumCircle {
    pub fn new(center: Vec2, radius: f64) -> GeomResult<Self> {
        if !(radius > 0.0) || !radius.is_finite() || !center.is_finite() {
            return Err(GeomError::DegenerateInput);
        }
        Ok(NumCircle { center, radius })
    }

    pub fn residual(&self, p: Vec2) -> f64 {
        (p.dist(self.center) - self.radius).abs()
    }

    pub fn same_as(&self, o: &NumCircle, eps: f64) -> bool {
        self.center.dist(o.center) <= eps && (self.radius - o.radius).abs() <= eps
    }
}

/// The locus of points `S` with `∠XSY = angle`: two arcs symmetric about line XY.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumArcPair {
    pub base_x: Vec2,
    pub base_y: Vec2,
    pub angle: f64,
}

impl NumArcPair {
    /// The two full circles carrying the arcs.
    pub fn circles(&self) -> [NumCircle; 2] {
        let chord = self.base_y - self.base_x;
        let half = chord.norm() / 2.0;
        let radius = half / self.angle.sin();
        // signed distance of the centers from the chord midpoint
        let h = half / self.angle.tan();
        let m = self.base_x.midpoint(self.base_y);
        let n = chord.perp().unit();
        [NumCircle { center: m + n * h, radius }, NumCircle { center: m - n * h, radius }]
    }

    pub fn contains(&self, p: Vec2, eps: f64) -> bool {
        if p.dist(self.base_x) <= eps || p.dist(self.base_y) <= eps {
            return false;
        }
        (angle_at(p, self.base_x, self.base_y) - self.angle).abs() <= 1e-7 && self.circles().iter().any(|c| c.residual(p) <= eps)
    }
}

/// Relative tolerances. `rel` bounds residuals, `degeneracy_floor` rejects
/// inputs too close to a degenerate configuration. Both scale with the scene.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub rel: f64,
    pub degeneracy_floor: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { rel: 1e-9, degeneracy_floor: 1e-7 }
    }
}

impl Tolerance {
    pub fn with_rel(rel: f64) -> Self {
        let d = Tolerance::default();
        Tolerance { rel, degeneracy_floor: d.degeneracy_floor.max(rel * 10.0) }
    }

    pub fn is_valid(&self) -> bool {
        0.0 < self.rel && self.rel < self.degeneracy_floor && self.degeneracy_floor < 1.0
    }
}

/// A tolerance bound to a scene scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Kernel {
    pub tol: Tolerance,
    pub scale: f64,
}

impl Default for Kernel {
    fn default() -> Self {
        Kernel { tol: Tolerance::default(), scale: 1.0 }
    }
}

/// Anything `intersect` accepts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Locus {
    Line(NumLine),
    Circle(NumCircle),
    Arcs(NumArcPair),
}

impl Kernel {
    pub fn new(tol: Tolerance, scale: f64) -> Self {
        Kernel { tol, scale: scale.max(f64::MIN_POSITIVE) }
    }

    /// Absolute residual bound.
    pub fn eps(&self) -> f64 {
        self.tol.rel * self.scale
    }

    /// Absolute degeneracy bound.
    pub fn floor(&self) -> f64 {
        self.tol.degeneracy_floor * self.scale
    }

    fn distinct(&self, p: Vec2, q: Vec2) -> GeomResult<()> {
        if p.dist(q) > self.floor() {
            Ok(())
        } else {
            Err(GeomError::DegenerateInput)
        }
    }

    pub fn line_through(&self, p: Vec2, q: Vec2) -> GeomResult<NumLine> {
        self.distinct(p, q)?;
        NumLine::through(p, q - p)
    }

    pub fn circle_center_through(&self, c: Vec2, p: Vec2) -> GeomResult<NumCircle> {
        self.distinct(c, p)?;
        NumCircle::new(c, c.dist(p))
    }

    pub fn perp_bisector(&self, p: Vec2, q: Vec2) -> GeomResult<NumLine> {
        self.distinct(p, q)?;
        NumLine::from_normal(q - p, (q - p).dot(p.midpoint(q)))
    }

    pub fn perp_through(&self, p: Vec2, l: &NumLine) -> NumLine {
        NumLine::through(p, l.normal()).expect("unit normal is never zero")
    }

    pub fn parallel_through(&self, p: Vec2, l: &NumLine) -> NumLine {
        NumLine::from_normal(l.normal(), l.normal().dot(p)).expect("unit normal is never zero")
    }

    pub fn diameter_circle(&self, p: Vec2, q: Vec2) -> GeomResult<NumCircle> {
        self.distinct(p, q)?;
        NumCircle::new(p.midpoint(q), p.dist(q) / 2.0)
    }

    pub fn circumcircle(&self, p: Vec2, q: Vec2, r: Vec2) -> GeomResult<NumCircle> {
        self.distinct(p, q)?;
        self.distinct(q, r)?;
        self.distinct(p, r)?;
        let d = (q - p).cross(r - p);
        let longest = (q - p).norm().max((r - p).norm()).max((r - q).norm());
        if d.abs() <= self.tol.degeneracy_floor * longest * longest {
            return Err(GeomError::DegenerateInput);
        }
        let (b, c) = (q - p, r - p);
        let (bb, cc) = (b.dot(b), c.dot(c));
        let ux = (c.y * bb - b.y * cc) / (2.0 * d);
        let uy = (b.x * cc - c.x * bb) / (2.0 * d);
        let center = p + Vec2::new(ux, uy);
        NumCircle::new(center, center.dist(p))
    }

    pub fn angle_locus(&self, x: Vec2, y: Vec2, alpha: f64) -> GeomResult<NumArcPair> {
        self.distinct(x, y)?;
        let floor = self.tol.degeneracy_floor;
        if !(alpha > floor && alpha < PI - floor) {
            return Err(GeomError::DegenerateInput);
        }
        Ok(NumArcPair { base_x: x, base_y: y, angle: alpha })
    }

    pub fn reflect(&self, p: Vec2, l: &NumLine) -> Vec2 {
        p - l.normal() * (2.0 * l.signed_distance(p))
    }

    pub fn tangent_circle(&self, c: Vec2, l: &NumLine) -> GeomResult<NumCircle> {
        let r = l.distance(c);
        if r <= self.floor() {
            return Err(GeomError::DegenerateInput);
        }
        NumCircle::new(c, r)
    }

    /// Both tangents from an outside point, ordered by their touching points.
    pub fn tangent_lines(&self, p: Vec2, k: &NumCircle) -> GeomResult<[NumLine; 2]> {
        let d = p.dist(k.center);
        if d <= k.radius + self.floor() {
            return Err(GeomError::PointNotOutside);
        }
        // touching points lie on the circle with diameter p-center (Thales)
        let u = (k.center - p).unit();
        let t = (d * d - k.radius * k.radius).sqrt();
        let a = (k.radius / d).asin();
        let rot = |v: Vec2, th: f64| Vec2::new(v.x * th.cos() - v.y * th.sin(), v.x * th.sin() + v.y * th.cos());
        let mut touches = [p + rot(u, a) * t, p + rot(u, -a) * t];
        touches.sort_by(|a, b| a.lex_cmp(b));
        Ok([self.line_through(p, touches[0])?, self.line_through(p, touches[1])?])
    }

    /// Both angle bisectors of two intersecting lines, deterministically ordered.
    pub fn bisectors(&self, l1: &NumLine, l2: &NumLine) -> GeomResult<[NumLine; 2]> {
        let v = self.meet(l1, l2)?;
        let d1 = l1.direction();
        let d2 = l2.direction();
        let mut out = [NumLine::through(v, d1 + d2)?, NumLine::through(v, d1 - d2)?];
        out.sort_by(|a, b| {
            let (a, b) = (a.canonical(), b.canonical());
            a.normal.lex_cmp(&b.normal).then(a.offset.total_cmp(&b.offset))
        });
        Ok(out)
    }

    /// The bisector of the angle region that contains `region_hint`.
    pub fn angle_bisector(&self, l1: &NumLine, l2: &NumLine, region_hint: Vec2) -> GeomResult<NumLine> {
        let v = self.meet(l1, l2)?;
        // orient each line's normal so the hint sits on its positive side
        let n1 = if l1.signed_distance(region_hint) >= 0.0 { l1.normal() } else { -l1.normal() };
        let n2 = if l2.signed_distance(region_hint) >= 0.0 { l2.normal() } else { -l2.normal() };
        // inside the wedge both signed distances agree, so the bisector normal is n1 - n2
        NumLine::from_normal(n1 - n2, (n1 - n2).dot(v))
    }

    pub fn mirror_line(&self, l: &NumLine, axis: &NumLine) -> NumLine {
        let p = l.anchor();
        let q = p + l.direction();
        let (p2, q2) = (self.reflect(p, axis), self.reflect(q, axis));
        NumLine::through(p2, q2 - p2).expect("reflection preserves distances")
    }

    pub fn homothety_line(&self, center: Vec2, r: f64, l: &NumLine) -> GeomResult<NumLine> {
        if r == 0.0 {
            return Err(GeomError::ZeroRatio);
        }
        let image = center + (l.anchor() - center) * r;
        Ok(self.parallel_through(image, l))
    }

    /// The point `u` with `vec(u, x) = r · vec(y, z)`, i.e. `u = x - r (z - y)`.
    pub fn ratio_point(&self, x: Vec2, y: Vec2, z: Vec2, r: f64) -> Vec2 {
        x - (z - y) * r
    }

    /// The point `w` with H(x,y;z,w). Undefined when z is the midpoint of xy.
    pub fn harmonic_conjugate(&self, x: Vec2, y: Vec2, z: Vec2) -> GeomResult<Vec2> {
        self.distinct(x, y)?;
        let d = y - x;
        let t = (z - x).dot(d) / d.dot(d);
        let denom = 2.0 * t - 1.0;
        if denom.abs() <= self.tol.degeneracy_floor {
            return Err(GeomError::DegenerateInput);
        }
        Ok(x + d * (t / denom))
    }

    fn meet(&self, l1: &NumLine, l2: &NumLine) -> GeomResult<Vec2> {
        let det = l1.normal().cross(l2.normal());
        if det.abs() <= self.tol.degeneracy_floor {
            return Err(GeomError::ParallelLines);
        }
        let x = (l1.offset() * l2.normal().y - l2.offset() * l1.normal().y) / det;
        let y = (l1.normal().x * l2.offset() - l2.normal().x * l1.offset()) / det;
        Ok(Vec2::new(x, y))
    }

    /// Common points of two loci, sorted lexicographically.
    pub fn intersect(&self, a: &Locus, b: &Locus) -> GeomResult<Vec<Vec2>> {
        let mut pts = match (a, b) {
            (Locus::Line(l1), Locus::Line(l2)) => {
                if l1.same_as(l2, self.eps().max(1e-12)) {
                    return Err(GeomError::IdenticalObjects);
                }
                match self.meet(l1, l2) {
                    Ok(p) => vec![p],
                    Err(_) => vec![],
                }
            }
            (Locus::Line(l), Locus::Circle(k)) | (Locus::Circle(k), Locus::Line(l)) => self.line_circle(l, k),
            (Locus::Circle(k1), Locus::Circle(k2)) => self.circle_circle(k1, k2)?,
            (Locus::Arcs(arcs), other) | (other, Locus::Arcs(arcs)) => {
                if matches!(other, Locus::Arcs(_)) {
                    return Err(GeomError::DegenerateInput);
                }
                let mut found: Vec<Vec2> = Vec::new();
                for k in arcs.circles() {
                    let cands = match other {
                        Locus::Line(l) => self.line_circle(l, &k),
                        Locus::Circle(c) => match self.circle_circle(&k, c) {
                            Ok(v) => v,
                            Err(_) => return Err(GeomError::IdenticalObjects),
                        },
                        Locus::Arcs(_) => unreachable!(),
                    };
                    for p in cands {
                        let on_arc = arcs.contains(p, self.floor());
                        let dup = found.iter().any(|q| q.dist(p) <= self.floor());
                        if on_arc && !dup {
                            found.push(p);
                        }
                    }
                }
                found
            }
        };
        pts.sort_by(|p, q| p.lex_cmp(q));
        Ok(pts)
    }

    fn line_circle(&self, l: &NumLine, k: &NumCircle) -> Vec<Vec2> {
        let d = l.signed_distance(k.center);
        let foot = k.center - l.normal() * d;
        let gap = d.abs() - k.radius;
        if gap > self.eps() {
            return vec![];
        }
        if gap.abs() <= self.eps() {
            return vec![foot];
        }
        let h = (k.radius * k.radius - d * d).max(0.0).sqrt();
        let dir = l.direction();
        vec![foot + dir * h, foot - dir * h]
    }

    fn circle_circle(&self, k1: &NumCircle, k2: &NumCircle) -> GeomResult<Vec<Vec2>> {
        let d = k1.center.dist(k2.center);
        if d <= self.eps().max(1e-15) {
            if (k1.radius - k2.radius).abs() <= self.eps() {
                return Err(GeomError::IdenticalObjects);
            }
            return Ok(vec![]);
        }
        if d > k1.radius + k2.radius + self.eps() || d < (k1.radius - k2.radius).abs() - self.eps() {
            return Ok(vec![]);
        }
        // radical line: distance a from k1's center along the center line
        let a = (d * d + k1.radius * k1.radius - k2.radius * k2.radius) / (2.0 * d);
        let u = (k2.center - k1.center) * (1.0 / d);
        let base = k1.center + u * a;
        let h2 = k1.radius * k1.radius - a * a;
        if h2.abs() <= 2.0 * k1.radius * self.eps() || h2 < 0.0 {
            return Ok(vec![base]);
        }
        let h = h2.sqrt();
        Ok(vec![base + u.perp() * h, base - u.perp() * h])
    }
}

/// Undirected angle `∠xvy` in `[0, π]`.
pub fn angle_at(v: Vec2, x: Vec2, y: Vec2) -> f64 {
    let (a, b) = (x - v, y - v);
    a.cross(b).abs().atan2(a.dot(b))
}

/// Coordinates of every vocabulary point for the triangle `abc`.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacteristicPoints {
    points: [Option<Vec2>; 28],
}

impl CharacteristicPoints {
    pub fn get(&self, l: PointLabel) -> Option<Vec2> {
        self.points[l.index()]
    }

    pub fn iter(&self) -> impl Iterator<Item = (PointLabel, Vec2)> + '_ {
        PointLabel::ALL.iter().filter_map(|&l| self.get(l).map(|p| (l, p)))
    }

    pub fn is_complete(&self) -> bool {
        self.points.iter().all(Option::is_some)
    }

    /// Diagonal of the bounding box of all defined points.
    pub fn scale(&self) -> f64 {
        bbox_diagonal(self.iter().map(|(_, p)| p))
    }
}

pub fn bbox_diagonal(pts: impl IntoIterator<Item = Vec2>) -> f64 {
    let mut lo = Vec2::new(f64::INFINITY, f64::INFINITY);
    let mut hi = Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in pts {
        lo = Vec2::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Vec2::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    if lo.x > hi.x {
        return 0.0;
    }
    (hi - lo).norm()
}

/// Computes all named points of triangle `abc` from their definitions.
///
/// External bisector feet are left undefined when the triangle is (nearly)
/// isosceles about that vertex, since the external bisector is then parallel
/// to the opposite side.
pub fn characteristic_points(a: Vec2, b: Vec2, c: Vec2, tol: &Tolerance) -> GeomResult<CharacteristicPoints> {
    use PointLabel::*;
    if !(a.is_finite() && b.is_finite() && c.is_finite()) {
        return Err(GeomError::DegenerateTriangle);
    }
    let (la, lb, lc) = (b.dist(c), c.dist(a), a.dist(b));
    let longest = la.max(lb).max(lc);
    let area2 = (b - a).cross(c - a);
    if longest == 0.0 || area2.abs() <= tol.degeneracy_floor * longest * longest {
        return Err(GeomError::DegenerateTriangle);
    }
    let k = Kernel::new(*tol, longest);
    let mut pts: [Option<Vec2>; 28] = [None; 28];
    let mut set = |l: PointLabel, p: Vec2| pts[l.index()] = Some(p);

    let side_a = k.line_through(b, c)?;
    let side_b = k.line_through(c, a)?;
    let side_c = k.line_through(a, b)?;
    let o = k.circumcircle(a, b, c)?.center;
    let g = (a + b + c) * (1.0 / 3.0);
    let h = a + b + c - o * 2.0;
    let incenter = (a * la + b * lb + c * lc) * (1.0 / (la + lb + lc));

    set(A, a);
    set(B, b);
    set(C, c);
    set(O, o);
    set(Ma, b.midpoint(c));
    set(Mb, c.midpoint(a));
    set(Mc, a.midpoint(b));
    set(G, g);
    set(Ha, side_a.project(a));
    set(Hb, side_b.project(b));
    set(Hc, side_c.project(c));
    set(H, h);
    set(Ta, (b * lb + c * lc) * (1.0 / (lb + lc)));
    set(Tb, (c * lc + a * la) * (1.0 / (lc + la)));
    set(Tc, (a * la + b * lb) * (1.0 / (la + lb)));
    set(I, incenter);
    let external = |p: Vec2, wp: f64, q: Vec2, wq: f64| {
        // divides pq externally in ratio wq : wp
        let den = wp - wq;
        if den.abs() <= tol.degeneracy_floor * longest {
            None
        } else {
            Some((p * wp - q * wq) * (1.0 / den))
        }
    };
    pts_set_opt(&mut set, TaExt, external(b, lb, c, lc));
    pts_set_opt(&mut set, TbExt, external(c, lc, a, la));
    pts_set_opt(&mut set, TcExt, external(a, la, b, lb));
    set(HBc, k.reflect(h, &side_a));
    set(HAc, k.reflect(h, &side_b));
    set(HAb, k.reflect(h, &side_c));
    set(Pa, side_a.project(incenter));
    set(Pb, side_b.project(incenter));
    set(Pc, side_c.project(incenter));
    // second intersection of the vertex bisector with the circumcircle
    let arc_mid = |v: Vec2| {
        let d = incenter - v;
        let t = -2.0 * (v - o).dot(d) / d.dot(d);
        v + d * t
    };
    set(Na, arc_mid(a));
    set(Nb, arc_mid(b));
    set(Nc, arc_mid(c));
    Ok(CharacteristicPoints { points: pts })
}

fn pts_set_opt(set: &mut impl FnMut(PointLabel, Vec2), l: PointLabel, p: Option<Vec2>) {
    if let Some(p) = p {
        set(l, p)
    }
}
