//! Named points checked against their defining properties rather than formulas.

use proptest::prelude::*;
use wernick::geom::{characteristic_points, Tolerance, Vec2};
use wernick::label::PointLabel::{self, *};

fn dist_to_line(p: Vec2, a: Vec2, b: Vec2) -> f64 {
    (b - a).cross(p - a).abs() / a.dist(b)
}

fn angle(v: Vec2, x: Vec2, y: Vec2) -> f64 {
    let (u, w) = (x - v, y - v);
    u.cross(w).atan2(u.dot(w)).abs()
}

fn triangle() -> impl Strategy<Value = (Vec2, Vec2, Vec2)> {
    let p = || (-10.0..10.0f64, -10.0..10.0f64).prop_map(|(x, y)| Vec2::new(x, y));
    (p(), p(), p()).prop_filter("well shaped", |&(a, b, c)| {
        let sides = [a.dist(b), b.dist(c), c.dist(a)];
        let longest = sides.iter().cloned().fold(0.0, f64::max);
        let shortest = sides.iter().cloned().fold(f64::INFINITY, f64::min);
        let min_angle = [angle(a, b, c), angle(b, c, a), angle(c, a, b)].into_iter().fold(f64::INFINITY, f64::min);
        shortest > 0.5
            && longest / shortest < 10.0
            && min_angle > 0.15
            && (angle(a, b, c) - angle(b, c, a)).abs() > 0.05
            && (angle(b, c, a) - angle(c, a, b)).abs() > 0.05
            && (angle(c, a, b) - angle(a, b, c)).abs() > 0.05
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn points_meet_their_definitions((a, b, c) in triangle()) {
        let cp = characteristic_points(a, b, c, &Tolerance::default()).unwrap();
        let p = |l: PointLabel| cp.get(l).unwrap();
        let scale = a.dist(b).max(b.dist(c)).max(c.dist(a));
        let eps = 1e-8 * scale;
        let sides = [(A, B, C), (B, C, A), (C, A, B)];

        let o = p(O);
        prop_assert!((o.dist(a) - o.dist(b)).abs() < eps && (o.dist(b) - o.dist(c)).abs() < eps);
        let h = p(H);
        prop_assert!((h - a).dot(c - b).abs() < eps * scale && (h - b).dot(c - a).abs() < eps * scale);
        let i = p(I);
        let r = dist_to_line(i, b, c);
        prop_assert!((dist_to_line(i, c, a) - r).abs() < eps && (dist_to_line(i, a, b) - r).abs() < eps);
        prop_assert!((b - a).cross(i - a).signum() == (b - a).cross(c - a).signum());

        let feet = [(Ma, Ha, Ta, TaExt, HBc, Pa, Na), (Mb, Hb, Tb, TbExt, HAc, Pb, Nb), (Mc, Hc, Tc, TcExt, HAb, Pc, Nc)];
        for ((v, s, t), (m, hf, tb, te, hr, pf, n)) in sides.into_iter().zip(feet) {
            let (v, s, t) = (p(v), p(s), p(t));
            // midpoint, and the centroid two thirds along the median
            prop_assert!((p(m).dist(s) - p(m).dist(t)).abs() < eps && dist_to_line(p(m), s, t) < eps);
            prop_assert!((p(G) - v).dist((p(m) - v) * (2.0 / 3.0)) < eps);
            // altitude foot
            prop_assert!(dist_to_line(p(hf), s, t) < eps && (p(hf) - v).dot(t - s).abs() < eps * scale);
            // internal and external bisector feet
            prop_assert!(dist_to_line(p(tb), s, t) < eps && (angle(v, s, p(tb)) - angle(v, p(tb), t)).abs() < 1e-8);
            prop_assert!(dist_to_line(p(te), s, t) < eps && (p(te) - v).dot(p(tb) - v).abs() < eps * scale);
            // orthocenter reflected in the side lies on the circumcircle
            prop_assert!(dist_to_line(h.midpoint(p(hr)), s, t) < eps && (p(hr) - h).dot(t - s).abs() < eps * scale);
            prop_assert!((p(hr).dist(o) - o.dist(a)).abs() < eps);
            // incircle touch point
            prop_assert!(dist_to_line(p(pf), s, t) < eps && (p(pf) - i).dot(t - s).abs() < eps * scale);
            // arc midpoint: on the circumcircle, on the bisector, equidistant from the side ends
            prop_assert!((p(n).dist(o) - o.dist(a)).abs() < eps && dist_to_line(p(n), v, i) < eps);
            prop_assert!((p(n).dist(s) - p(n).dist(t)).abs() < eps && p(n).dist(v) > eps);
        }
    }
}
