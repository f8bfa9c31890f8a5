use std::f64::consts::PI;

use num_complex::Complex64;

use super::quad::{gauss_adaptive, tanh_sinh_log, QuadConfig, QuadValue};
use super::NumericError;

/// A polyline vertex with log(t − x_j) for every finite puncture x_j.
/// At a puncture vertex the puncture's own log is NaN.
#[derive(Clone, Debug, PartialEq)]
pub struct Vertex {
    pub t: Complex64,
    pub logs: Vec<Complex64>,
    pub at: Option<usize>,
}

/// Logarithm on the closed upper half plane, with arg ∈ [0, π].
fn log_upper(z: Complex64) -> Complex64 {
    if z.im == 0.0 && z.re < 0.0 {
        Complex64::new((-z.re).ln(), PI)
    } else {
        z.ln()
    }
}

fn nan() -> Complex64 {
    Complex64::new(f64::NAN, f64::NAN)
}

impl Vertex {
    /// A vertex in the closed upper half plane carrying the principal branch.
    pub fn upper(t: Complex64, at: Option<usize>, punctures: &[Complex64]) -> Self {
        let logs = punctures
            .iter()
            .enumerate()
            .map(|(j, &x)| if at == Some(j) { nan() } else { log_upper(t - x) })
            .collect();
        Vertex { t, logs, at }
    }

    /// A vertex at `t` whose logs are continued from `self` along the straight segment.
    pub fn continued(&self, t: Complex64, at: Option<usize>, punctures: &[Complex64]) -> Self {
        debug_assert!(self.at.is_none(), "continuation starts off the punctures");
        let logs = punctures
            .iter()
            .enumerate()
            .map(|(j, &x)| {
                if at == Some(j) {
                    nan()
                } else {
                    self.logs[j] + ((t - x) / (self.t - x)).ln()
                }
            })
            .collect();
        Vertex { t, logs, at }
    }
}

/// Distance from `t` to the nearest puncture other than `exclude`.
pub fn clearance(t: Complex64, punctures: &[Complex64], exclude: Option<usize>) -> f64 {
    punctures
        .iter()
        .enumerate()
        .filter(|&(j, _)| Some(j) != exclude)
        .map(|(_, &x)| (t - x).norm())
        .fold(f64::INFINITY, f64::min)
}

/// A polyline with per-vertex branch data. Only the first and last vertex
/// may sit on a puncture.
#[derive(Clone, Debug, PartialEq)]
pub struct BranchPath {
    pub vertices: Vec<Vertex>,
}

const MAX_VERTICES: usize = 200_000;

/// Ratio between a segment's length and the clearance of its ends.
pub const SEGMENT_RATIO: f64 = 0.5;

impl BranchPath {
    /// The arc A + (B−A)τ + i(|B−A|/2) sin(πτ), τ ∈ [0, 1], through the upper half plane.
    pub fn arc(
        a: Complex64,
        at_a: Option<usize>,
        b: Complex64,
        at_b: Option<usize>,
        samples: usize,
        punctures: &[Complex64],
    ) -> Result<Self, NumericError> {
        let n = samples.max(2);
        let height = 0.5 * (b - a).norm();
        let vertices = (0..=n)
            .map(|k| {
                let tau = k as f64 / n as f64;
                let at = if k == 0 {
                    at_a
                } else if k == n {
                    at_b
                } else {
                    None
                };
                let t = match at {
                    Some(j) => punctures[j],
                    None => a + (b - a) * tau + Complex64::new(0.0, height * (PI * tau).sin()),
                };
                Vertex::upper(t, at, punctures)
            })
            .collect();
        let mut p = BranchPath { vertices };
        p.refine(punctures)?;
        Ok(p)
    }

    /// The positive circle |t − x_c| = ε starting and ending at x_c + iε,
    /// branch fixed at the start and continued around.
    pub fn circle(centre: usize, eps: f64, samples: usize, punctures: &[Complex64]) -> Result<Self, NumericError> {
        let n = samples.max(8);
        let c = punctures[centre];
        let mut vertices: Vec<Vertex> = Vec::with_capacity(n + 1);
        vertices.push(Vertex::upper(c + Complex64::new(0.0, eps), None, punctures));
        for k in 1..=n {
            let phi = 0.5 * PI + 2.0 * PI * k as f64 / n as f64;
            let t = if k == n {
                vertices[0].t
            } else {
                c + Complex64::from_polar(eps, phi)
            };
            let v = vertices[k - 1].continued(t, None, punctures);
            vertices.push(v);
        }
        let mut p = BranchPath { vertices };
        p.refine(punctures)?;
        Ok(p)
    }

    /// A single vertex; used to watch branch data without integrating.
    pub fn probe(t: Complex64, punctures: &[Complex64]) -> Self {
        BranchPath {
            vertices: vec![Vertex::upper(t, None, punctures)],
        }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    fn segment_ok(a: &Vertex, b: &Vertex, punctures: &[Complex64]) -> bool {
        let len = (b.t - a.t).norm();
        match (a.at, b.at) {
            (Some(_), Some(_)) => false,
            (Some(p), None) => len <= SEGMENT_RATIO * clearance(b.t, punctures, Some(p)),
            (None, Some(p)) => len <= SEGMENT_RATIO * clearance(a.t, punctures, Some(p)),
            (None, None) => len <= SEGMENT_RATIO * clearance(a.t, punctures, None).min(clearance(b.t, punctures, None)),
        }
    }

    /// Bisects segments until each is short against the clearance of its ends.
    pub fn refine(&mut self, punctures: &[Complex64]) -> Result<(), NumericError> {
        if self.vertices.len() < 2 || self.vertices.windows(2).all(|w| Self::segment_ok(&w[0], &w[1], punctures)) {
            return Ok(());
        }
        let mut out: Vec<Vertex> = Vec::with_capacity(self.vertices.len() * 2);
        out.push(self.vertices[0].clone());
        for next in &self.vertices[1..] {
            // bisect (last, next) until it passes
            let mut pending = vec![next.clone()];
            while let Some(b) = pending.pop() {
                let a = out.last().expect("nonempty");
                if Self::segment_ok(a, &b, punctures) {
                    out.push(b);
                    continue;
                }
                if out.len() + pending.len() > MAX_VERTICES {
                    return Err(NumericError::ClearanceLost(format!(
                        "path refinement exceeded {MAX_VERTICES} vertices"
                    )));
                }
                let mid = 0.5 * (a.t + b.t);
                let reference = if a.at.is_none() { a } else { &b };
                let m = reference.continued(mid, None, punctures);
                pending.push(b);
                pending.push(m);
            }
        }
        self.vertices = out;
        Ok(())
    }

    /// Smallest distance from a vertex to a puncture it does not sit on.
    pub fn min_clearance(&self, punctures: &[Complex64]) -> f64 {
        self.vertices
            .iter()
            .map(|v| clearance(v.t, punctures, v.at))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn length(&self) -> f64 {
        self.vertices.windows(2).map(|w| (w[1].t - w[0].t).norm()).sum()
    }

    /// ∫ Π (t − x_j)^{e_j} dt along the path on the carried branch.
    pub fn integrate(&self, e: &[Complex64], punctures: &[Complex64], quad: &QuadConfig) -> Result<QuadValue, NumericError> {
        let total = self.length().max(f64::MIN_POSITIVE);
        let mut acc = QuadValue::default();
        for w in self.vertices.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            let share = quad.tol * ((b.t - a.t).norm() / total).max(1e-3);
            let q = match (a.at, b.at) {
                (Some(p), None) => end_segment(p, b, e, punctures, share, quad.max_level)?,
                (None, Some(p)) => end_segment(p, a, e, punctures, share, quad.max_level)?.scale(Complex64::new(-1.0, 0.0)),
                (None, None) => interior_segment(a, b, e, punctures, share, 4 * quad.max_level)?,
                (Some(_), Some(_)) => unreachable!("refinement splits puncture-to-puncture segments"),
            };
            acc = acc + q;
        }
        Ok(acc)
    }
}

fn log_integrand(reference: &Vertex, t: Complex64, e: &[Complex64], punctures: &[Complex64], skip: Option<usize>) -> Complex64 {
    let mut lg = Complex64::new(0.0, 0.0);
    for (j, (&ej, &x)) in e.iter().zip(punctures).enumerate() {
        if Some(j) == skip || ej == Complex64::new(0.0, 0.0) {
            continue;
        }
        lg += ej * (reference.logs[j] + ((t - x) / (reference.t - x)).ln());
    }
    lg
}

fn interior_segment(a: &Vertex, b: &Vertex, e: &[Complex64], punctures: &[Complex64], tol: f64, depth: usize) -> Result<QuadValue, NumericError> {
    let d = b.t - a.t;
    let mut f = |u: f64| log_integrand(a, a.t + d * u, e, punctures, None).exp() * d;
    gauss_adaptive(&mut f, 0.0, 1.0, tol, depth)
}

/// ∫ from the puncture x_p to the vertex v, substituting t = x_p + s(v − x_p).
fn end_segment(p: usize, v: &Vertex, e: &[Complex64], punctures: &[Complex64], tol: f64, max_level: usize) -> Result<QuadValue, NumericError> {
    if e[p].re <= -1.0 {
        return Err(NumericError::EndpointDivergence(format!(
            "exponent {} at x_{p} makes the integral diverge",
            e[p]
        )));
    }
    let x = punctures[p];
    let d = v.t - x;
    let ln_d = d.ln();
    let own = v.logs[p];
    let q = tanh_sinh_log(
        |n| {
            let t = x + d * n.s;
            e[p] * (own + n.ln_s) + log_integrand(v, t, e, punctures, Some(p)) + ln_d
        },
        tol,
        max_level,
    )?;
    Ok(q)
}
