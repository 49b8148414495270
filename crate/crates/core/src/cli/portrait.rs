//! SVG phase portraits. Floating point is used here and nowhere else.

use std::fmt::Write as _;

use num_traits::ToPrimitive;

use crate::lienard::{HyperellipticCurve, LienardSystem};
use crate::polyx::{Poly, Rational};
use crate::rootclass::isolate_real_roots;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PortraitError {
    #[error("window must satisfy x_min < x_max and y_min < y_max")]
    EmptyWindow,
    #[error("step must be positive and finite")]
    BadStep,
}

/// Viewing rectangle `[x_min, x_max] x [y_min, y_max]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Window {
    pub x_min: Rational,
    pub x_max: Rational,
    pub y_min: Rational,
    pub y_max: Rational,
}

#[derive(Debug, Clone)]
pub struct PortraitSpec {
    system: LienardSystem,
    curve: Option<HyperellipticCurve>,
    window: Window,
    step: f64,
    steps: usize,
    seeds: Vec<(f64, f64)>,
}

impl PortraitSpec {
    pub fn new(
        system: LienardSystem,
        curve: Option<HyperellipticCurve>,
        window: Window,
        step: f64,
        steps: usize,
        seeds: Vec<(f64, f64)>,
    ) -> Result<Self, PortraitError> {
        if window.x_min >= window.x_max || window.y_min >= window.y_max {
            return Err(PortraitError::EmptyWindow);
        }
        if !(step.is_finite() && step > 0.0) {
            return Err(PortraitError::BadStep);
        }
        Ok(PortraitSpec {
            system,
            curve,
            window,
            step,
            steps,
            seeds,
        })
    }
}

const SIZE: f64 = 600.0;
const SAMPLES: usize = 400;

struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Frame {
    fn px(&self, x: f64, y: f64) -> (f64, f64) {
        (
            (x - self.x0) / (self.x1 - self.x0) * SIZE,
            (self.y1 - y) / (self.y1 - self.y0) * SIZE,
        )
    }
}

fn f64_of(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn path(frame: &Frame, class: &str, pts: &[(f64, f64)]) -> String {
    let mut d = String::new();
    for (i, &(x, y)) in pts.iter().enumerate() {
        let (u, v) = frame.px(x, y);
        let _ = write!(d, "{}{:.2},{:.2}", if i == 0 { "M" } else { " L" }, u, v);
    }
    format!("  <path class=\"{class}\" d=\"{d}\"/>\n")
}

/// Maximal closed `x`-intervals inside the window on which `Q >= 0` and
/// which have positive length.
fn nonnegative_runs(q: &Poly, lo: &Rational, hi: &Rational) -> Vec<(f64, f64)> {
    let mut cuts = vec![f64_of(lo)];
    let width = (hi - lo) / Rational::from_integer(1_000_000.into());
    for mut r in isolate_real_roots(q) {
        r.refine(&width);
        let v = r.midpoint();
        if &v > lo && &v < hi {
            cuts.push(f64_of(&v));
        }
    }
    cuts.push(f64_of(hi));
    let mut runs: Vec<(f64, f64)> = Vec::new();
    for w in cuts.windows(2) {
        if q.eval_f64((w[0] + w[1]) / 2.0) <= 0.0 {
            continue;
        }
        match runs.last_mut() {
            Some(last) if last.1 == w[0] => last.1 = w[1],
            _ => runs.push((w[0], w[1])),
        }
    }
    runs
}

fn rhs(sys: &LienardSystem, x: f64, y: f64) -> (f64, f64) {
    (y, -sys.f.eval_f64(x) * y - sys.g.eval_f64(x))
}

fn trajectory(spec: &PortraitSpec, frame: &Frame, seed: (f64, f64)) -> Vec<(f64, f64)> {
    let (w, h) = (frame.x1 - frame.x0, frame.y1 - frame.y0);
    let inside = |x: f64, y: f64| {
        x.is_finite()
            && y.is_finite()
            && x > frame.x0 - w
            && x < frame.x1 + w
            && y > frame.y0 - h
            && y < frame.y1 + h
    };
    let dt = spec.step;
    let (mut x, mut y) = seed;
    let mut pts = vec![(x, y)];
    for _ in 0..spec.steps {
        let k1 = rhs(&spec.system, x, y);
        let k2 = rhs(&spec.system, x + dt / 2.0 * k1.0, y + dt / 2.0 * k1.1);
        let k3 = rhs(&spec.system, x + dt / 2.0 * k2.0, y + dt / 2.0 * k2.1);
        let k4 = rhs(&spec.system, x + dt * k3.0, y + dt * k3.1);
        x += dt / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0);
        y += dt / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1);
        if !inside(x, y) {
            break;
        }
        pts.push((x, y));
    }
    pts
}

/// RK4 trajectories from each seed plus the branches `y = -P(x) +- sqrt(Q(x))`
/// of the curve where `Q >= 0`. Output depends only on the spec.
pub fn render_portrait(spec: &PortraitSpec) -> String {
    let win = &spec.window;
    let frame = Frame {
        x0: f64_of(&win.x_min),
        x1: f64_of(&win.x_max),
        y0: f64_of(&win.y_min),
        y1: f64_of(&win.y_max),
    };
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">"
    );
    svg.push_str("  <defs><clipPath id=\"win\"><rect x=\"0\" y=\"0\" width=\"600\" height=\"600\"/></clipPath></defs>\n");
    svg.push_str("  <style>.trajectory{fill:none;stroke:#4a6fa5;stroke-width:1}.curve{fill:none;stroke:#c0392b;stroke-width:2}.axis{stroke:#999;stroke-width:0.5}</style>\n");
    svg.push_str("  <rect width=\"600\" height=\"600\" fill=\"white\"/>\n");
    svg.push_str("  <g clip-path=\"url(#win)\">\n");
    if frame.y0 < 0.0 && frame.y1 > 0.0 {
        svg.push_str(&path(&frame, "axis", &[(frame.x0, 0.0), (frame.x1, 0.0)]));
    }
    if frame.x0 < 0.0 && frame.x1 > 0.0 {
        svg.push_str(&path(&frame, "axis", &[(0.0, frame.y0), (0.0, frame.y1)]));
    }
    for &seed in &spec.seeds {
        svg.push_str(&path(&frame, "trajectory", &trajectory(spec, &frame, seed)));
    }
    if let Some(curve) = &spec.curve {
        for (a, b) in nonnegative_runs(&curve.q, &win.x_min, &win.x_max) {
            for sgn in [1.0, -1.0] {
                let pts: Vec<(f64, f64)> = (0..=SAMPLES)
                    .map(|i| {
                        let x = a + (b - a) * i as f64 / SAMPLES as f64;
                        let root = curve.q.eval_f64(x).max(0.0).sqrt();
                        (x, -curve.p.eval_f64(x) + sgn * root)
                    })
                    .collect();
                svg.push_str(&path(&frame, "curve", &pts));
            }
        }
    }
    svg.push_str("  </g>\n</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lienard::derive_system;
    use crate::polyx::{rat, ratio};

    fn worked() -> HyperellipticCurve {
        let r = Poly::from_ints(&[2, -3, 1]);
        let s = Poly::from_ints(&[10, 1]);
        HyperellipticCurve::new(&r * &s, (&r * &s.pow(4)).scale(&rat(-10)))
    }

    fn window() -> Window {
        Window {
            x_min: ratio(1, 2),
            x_max: ratio(5, 2),
            y_min: rat(-150),
            y_max: rat(150),
        }
    }

    #[test]
    fn two_branches_over_the_oval() {
        let c = worked();
        let sys = derive_system(&c).unwrap();
        let spec = PortraitSpec::new(sys, Some(c), window(), 1e-3, 2000, vec![(1.5, 0.0)]).unwrap();
        let svg = render_portrait(&spec);
        assert_eq!(svg.matches("class=\"curve\"").count(), 2);
        assert_eq!(svg.matches("class=\"trajectory\"").count(), 1);
        assert_eq!(svg, render_portrait(&spec));
    }

    #[test]
    fn curve_only_and_trajectories_only() {
        let c = worked();
        let sys = derive_system(&c).unwrap();
        let spec = PortraitSpec::new(sys.clone(), Some(c), window(), 1e-3, 10, vec![]).unwrap();
        let svg = render_portrait(&spec);
        assert_eq!(svg.matches("class=\"trajectory\"").count(), 0);
        assert_eq!(svg.matches("class=\"curve\"").count(), 2);
        let spec = PortraitSpec::new(sys, None, window(), 1e-3, 10, vec![(1.0, 1.0)]).unwrap();
        let svg = render_portrait(&spec);
        assert_eq!(svg.matches("class=\"curve\"").count(), 0);
        assert_eq!(svg.matches("class=\"trajectory\"").count(), 1);
    }

    #[test]
    fn invalid_specs() {
        let sys = derive_system(&worked()).unwrap();
        let mut w = window();
        w.x_max = w.x_min.clone();
        assert_eq!(
            PortraitSpec::new(sys.clone(), None, w, 0.1, 1, vec![]).unwrap_err(),
            PortraitError::EmptyWindow
        );
        assert_eq!(
            PortraitSpec::new(sys, None, window(), 0.0, 1, vec![]).unwrap_err(),
            PortraitError::BadStep
        );
    }
}
