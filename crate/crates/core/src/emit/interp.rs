//! Interpreter for the GCLC-style dialect the emitter writes.
//!
//! Commands (identifiers first, then arguments):
//!
//! ```text
//! point P x y          line l P Q           circle k C P
//! intersec P l m       intersec2 P Q a b    med l P Q
//! perp l P m           parallel l P m       midpoint M P Q
//! foot F P l           reflexion X l Y      towards T P Q r
//! translate T P Q R    angle q X V Y        arcs k1 k2 X Y q c p
//! bisectors l1 l2 a b  tangents l1 l2 P k   harmonic W X Y Z
//! cmark_b P ...        drawsegment P Q      drawdashline l
//! ```
//!
//! `angle` yields degrees. `arcs` yields the two circles from which XY is seen
//! under `c*q + p*180` degrees (`q` may be `0`). `reflexion` accepts a point or a line.
//! Two-valued commands list results in the kernel's order.

use std::collections::HashMap;

use crate::geom::{angle_at, GeomError, Kernel, Locus, NumCircle, NumLine, Vec2};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GVal {
    Point(Vec2),
    Line(NumLine),
    Circle(NumCircle),
    Number(f64),
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("script line {line}: {msg}")]
pub struct ScriptError {
    pub line: usize,
    pub msg: String,
}

#[derive(Debug, Clone)]
pub struct GclcState {
    pub kernel: Kernel,
    vals: HashMap<String, GVal>,
}

impl GclcState {
    pub fn new(kernel: Kernel) -> GclcState {
        GclcState { kernel, vals: HashMap::new() }
    }

    pub fn get(&self, id: &str) -> Option<GVal> {
        self.vals.get(id).copied()
    }

    pub fn point(&self, id: &str) -> Option<Vec2> {
        match self.get(id)? {
            GVal::Point(p) => Some(p),
            _ => None,
        }
    }

    pub fn is_defined(&self, id: &str) -> bool {
        self.vals.contains_key(id)
    }

    /// Execute one command line; blank lines and `%` comments are skipped.
    pub fn exec(&mut self, text: &str) -> Result<(), String> {
        let text = text.split('%').next().unwrap_or("").trim();
        let w: Vec<&str> = text.split_whitespace().collect();
        let Some((&cmd, a)) = w.split_first() else { return Ok(()) };
        let k = self.kernel;
        let need = |n: usize| if a.len() == n { Ok(()) } else { Err(format!("`{cmd}` takes {n} arguments")) };
        let g = |e: GeomError| e.to_string();
        match cmd {
            "point" => {
                need(3)?;
                let x = a[1].parse().map_err(|_| format!("bad number `{}`", a[1]))?;
                let y = a[2].parse().map_err(|_| format!("bad number `{}`", a[2]))?;
                self.set(a[0], GVal::Point(Vec2::new(x, y)));
            }
            "line" => {
                need(3)?;
                let l = k.line_through(self.pt(a[1])?, self.pt(a[2])?).map_err(g)?;
                self.set(a[0], GVal::Line(l));
            }
            "circle" => {
                need(3)?;
                let c = k.circle_center_through(self.pt(a[1])?, self.pt(a[2])?).map_err(g)?;
                self.set(a[0], GVal::Circle(c));
            }
            "intersec" => {
                need(3)?;
                let pts = k.intersect(&Locus::Line(self.line(a[1])?), &Locus::Line(self.line(a[2])?)).map_err(g)?;
                let p = *pts.first().ok_or("lines do not meet")?;
                self.set(a[0], GVal::Point(p));
            }
            "intersec2" => {
                need(4)?;
                let pts = k.intersect(&self.locus(a[2])?, &self.locus(a[3])?).map_err(g)?;
                match pts.as_slice() {
                    [] => return Err("curves do not meet".into()),
                    [p] => self.set2(a, GVal::Point(*p), GVal::Point(*p)),
                    [p, q, ..] => self.set2(a, GVal::Point(*p), GVal::Point(*q)),
                }
            }
            "med" => {
                need(3)?;
                let l = k.perp_bisector(self.pt(a[1])?, self.pt(a[2])?).map_err(g)?;
                self.set(a[0], GVal::Line(l));
            }
            "perp" => {
                need(3)?;
                let l = k.perp_through(self.pt(a[1])?, &self.line(a[2])?);
                self.set(a[0], GVal::Line(l));
            }
            "parallel" => {
                need(3)?;
                let l = k.parallel_through(self.pt(a[1])?, &self.line(a[2])?);
                self.set(a[0], GVal::Line(l));
            }
            "midpoint" => {
                need(3)?;
                let m = self.pt(a[1])?.midpoint(self.pt(a[2])?);
                self.set(a[0], GVal::Point(m));
            }
            "foot" => {
                need(3)?;
                let f = self.line(a[2])?.project(self.pt(a[1])?);
                self.set(a[0], GVal::Point(f));
            }
            "reflexion" => {
                need(3)?;
                let axis = self.line(a[1])?;
                let v = match self.val(a[2])? {
                    GVal::Point(p) => GVal::Point(k.reflect(p, &axis)),
                    GVal::Line(l) => GVal::Line(k.mirror_line(&l, &axis)),
                    _ => return Err(format!("`{}` is neither a point nor a line", a[2])),
                };
                self.set(a[0], v);
            }
            "towards" => {
                need(4)?;
                let (p, q) = (self.pt(a[1])?, self.pt(a[2])?);
                let r = self.num(a[3])?;
                self.set(a[0], GVal::Point(p + (q - p) * r));
            }
            "translate" => {
                need(4)?;
                let (p, q, r) = (self.pt(a[1])?, self.pt(a[2])?, self.pt(a[3])?);
                self.set(a[0], GVal::Point(r + (q - p)));
            }
            "angle" => {
                need(4)?;
                let (x, v, y) = (self.pt(a[1])?, self.pt(a[2])?, self.pt(a[3])?);
                self.set(a[0], GVal::Number(angle_at(v, x, y).to_degrees()));
            }
            "arcs" => {
                need(7)?;
                let q = if a[4] == "0" { 0.0 } else { self.num(a[4])? };
                let deg = self.num(a[5])? * q + self.num(a[6])? * 180.0;
                let arcs = k.angle_locus(self.pt(a[2])?, self.pt(a[3])?, deg.to_radians()).map_err(g)?;
                let [c1, c2] = arcs.circles();
                self.set2(&a[..2], GVal::Circle(c1), GVal::Circle(c2));
            }
            "bisectors" => {
                need(4)?;
                let [l1, l2] = k.bisectors(&self.line(a[2])?, &self.line(a[3])?).map_err(g)?;
                self.set2(a, GVal::Line(l1), GVal::Line(l2));
            }
            "tangents" => {
                need(4)?;
                let c = match self.val(a[3])? {
                    GVal::Circle(c) => c,
                    _ => return Err(format!("`{}` is not a circle", a[3])),
                };
                let [l1, l2] = k.tangent_lines(self.pt(a[2])?, &c).map_err(g)?;
                self.set2(a, GVal::Line(l1), GVal::Line(l2));
            }
            "harmonic" => {
                need(4)?;
                let w = k.harmonic_conjugate(self.pt(a[1])?, self.pt(a[2])?, self.pt(a[3])?).map_err(g)?;
                self.set(a[0], GVal::Point(w));
            }
            c if c.starts_with("cmark") || c.starts_with("draw") => {
                for id in a {
                    self.val(id)?;
                }
            }
            other => return Err(format!("unknown command `{other}`")),
        }
        Ok(())
    }

    fn set(&mut self, id: &str, v: GVal) {
        self.vals.insert(id.to_string(), v);
    }

    fn set2(&mut self, ids: &[&str], v1: GVal, v2: GVal) {
        self.set(ids[0], v1);
        self.set(ids[1], v2);
    }

    fn val(&self, id: &str) -> Result<GVal, String> {
        self.get(id).ok_or_else(|| format!("undefined identifier `{id}`"))
    }

    fn pt(&self, id: &str) -> Result<Vec2, String> {
        match self.val(id)? {
            GVal::Point(p) => Ok(p),
            _ => Err(format!("`{id}` is not a point")),
        }
    }

    fn line(&self, id: &str) -> Result<NumLine, String> {
        match self.val(id)? {
            GVal::Line(l) => Ok(l),
            _ => Err(format!("`{id}` is not a line")),
        }
    }

    fn num(&self, s: &str) -> Result<f64, String> {
        if let Ok(x) = s.parse::<f64>() {
            return Ok(x);
        }
        if let Some((n, d)) = s.split_once('/') {
            if let (Ok(n), Ok(d)) = (n.parse::<f64>(), d.parse::<f64>()) {
                return Ok(n / d);
            }
        }
        match self.val(s)? {
            GVal::Number(x) => Ok(x),
            _ => Err(format!("`{s}` is not a number")),
        }
    }

    fn locus(&self, id: &str) -> Result<Locus, String> {
        match self.val(id)? {
            GVal::Line(l) => Ok(Locus::Line(l)),
            GVal::Circle(c) => Ok(Locus::Circle(c)),
            _ => Err(format!("`{id}` is not a curve")),
        }
    }
}

/// Run a whole script in a frame of the given size.
pub fn interpret(script: &str, frame: f64) -> Result<GclcState, ScriptError> {
    let mut st = GclcState::new(Kernel::new(Default::default(), frame));
    for (i, line) in script.lines().enumerate() {
        st.exec(line).map_err(|msg| ScriptError { line: i + 1, msg })?;
    }
    Ok(st)
}
