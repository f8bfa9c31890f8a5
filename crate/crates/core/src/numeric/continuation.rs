use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::monodromy::{Generator, Representation};
use crate::report::{Check, VerificationReport};

use super::paths::{clearance, BranchPath};
use super::period::{integrate_chains, period_chains, scene_punctures, Chain, PeriodVector};
use super::quad::QuadConfig;
use super::scene::{relative_residual, NumericScene, PeriodSide};
use super::NumericError;

/// The loop ρ_pq: the moving point rises to height radius/2, runs
/// horizontally to the circle of the given radius around the centre, turns
/// once positively and retraces its approach.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LoopSchedule {
    pub generator: Generator,
    pub steps: usize,
    pub radius: f64,
    pub reversed: bool,
}

impl LoopSchedule {
    pub fn new(generator: Generator, steps: usize, radius: f64) -> Self {
        LoopSchedule {
            generator,
            steps,
            radius,
            reversed: false,
        }
    }

    /// Radius a quarter of the smallest gap, or the scene's configured loop.
    pub fn for_scene(scene: &NumericScene, generator: Generator) -> Self {
        let cfg = scene.loop_config;
        let steps = cfg.map_or(64, |c| c.steps);
        let radius = cfg.and_then(|c| c.radius).unwrap_or(0.25 * scene.min_gap());
        LoopSchedule::new(generator, steps, radius)
    }

    pub fn reverse(&self) -> Self {
        LoopSchedule {
            reversed: !self.reversed,
            ..*self
        }
    }

    pub fn validate(&self, scene: &NumericScene) -> Result<(), NumericError> {
        let m = scene.m();
        let g = self.generator;
        if !(g.p < g.q && g.q <= m + 1 && (g.p, g.q) != (0, m + 1)) {
            return Err(NumericError::InvalidParameter(format!("({},{}) is not a generator for m = {m}", g.p, g.q)));
        }
        if self.steps == 0 {
            return Err(NumericError::InvalidParameter("steps must be positive".into()));
        }
        let half_gap = 0.5 * scene.min_gap();
        if !(self.radius >= 0.0 && self.radius < half_gap) {
            return Err(NumericError::InvalidParameter(format!(
                "radius {} must lie in [0, {half_gap}) (half the smallest gap)",
                self.radius
            )));
        }
        Ok(())
    }

    pub fn track(&self, scene: &NumericScene) -> Track {
        let (mv, c) = self.generator.moving_and_centre();
        Track::new(scene.points()[mv], scene.points()[c], self.radius, self.reversed)
    }
}

/// Arc-length parametrisation of the moving point's path.
#[derive(Clone, Copy, Debug)]
pub struct Track {
    start: f64,
    centre: f64,
    radius: f64,
    height: f64,
    entry: Complex64,
    theta0: f64,
    reversed: bool,
}

impl Track {
    pub fn new(start: f64, centre: f64, radius: f64, reversed: bool) -> Self {
        let height = 0.5 * radius;
        let dx = (radius * radius - height * height).sqrt();
        let entry_re = if start < centre { centre - dx } else { centre + dx };
        let entry = Complex64::new(entry_re, height);
        let theta0 = (entry - centre).arg();
        Track {
            start,
            centre,
            radius,
            height,
            entry,
            theta0,
            reversed,
        }
    }

    fn run(&self) -> f64 {
        (self.entry.re - self.start).abs()
    }

    /// Total arc length; a zero-radius loop is constant.
    pub fn length(&self) -> f64 {
        if self.radius == 0.0 {
            return 0.0;
        }
        2.0 * self.height + 2.0 * self.run() + 2.0 * PI * self.radius
    }

    pub fn pos(&self, s: f64) -> Complex64 {
        let total = self.length();
        let s = if self.reversed { total - s } else { s };
        if s <= 0.0 || s >= total {
            return Complex64::new(self.start, 0.0);
        }
        let (h, run) = (self.height, self.run());
        let dir = (self.entry.re - self.start).signum();
        let circ = 2.0 * PI * self.radius;
        if s <= h {
            Complex64::new(self.start, s)
        } else if s <= h + run {
            Complex64::new(self.start + dir * (s - h), h)
        } else if s <= h + run + circ {
            let phi = self.theta0 + (s - h - run) / self.radius;
            self.centre + Complex64::from_polar(self.radius, phi)
        } else if s <= h + 2.0 * run + circ {
            Complex64::new(self.entry.re - dir * (s - h - run - circ), h)
        } else {
            Complex64::new(self.start, total - s)
        }
    }
}

/// Counters from one loop traversal.
#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct LoopStats {
    pub substeps: usize,
    pub vertices: usize,
    pub min_clearance: f64,
}

/// Chains (and optional probe vertices) being carried along by the puncture isotopy.
#[derive(Clone, Debug)]
pub struct ContinuationState {
    pub punctures: Vec<Complex64>,
    pub chains: Vec<Chain>,
    pub probes: Vec<BranchPath>,
    exponents: Vec<Complex64>,
    clear_floor: f64,
}

fn smoothstep(u: f64) -> f64 {
    u * u * (3.0 - 2.0 * u)
}

/// 1 within R of the moving point, 0 beyond 2R.
fn weight(d: f64, r: f64) -> f64 {
    if d <= r {
        1.0
    } else if d >= 2.0 * r {
        0.0
    } else {
        1.0 - smoothstep((d - r) / r)
    }
}

fn min_gap(p: &[Complex64]) -> f64 {
    let mut g = f64::INFINITY;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            g = g.min((p[i] - p[j]).norm());
        }
    }
    g
}

impl ContinuationState {
    pub fn new(scene: &NumericScene, side: PeriodSide) -> Result<Self, NumericError> {
        Ok(ContinuationState {
            punctures: scene_punctures(scene),
            chains: period_chains(scene, side)?,
            probes: Vec::new(),
            exponents: scene.exponents(side)?,
            clear_floor: 1e-6 * scene.min_gap(),
        })
    }

    pub fn add_probe(&mut self, t: Complex64) -> usize {
        self.probes.push(BranchPath::probe(t, &self.punctures));
        self.probes.len() - 1
    }

    pub fn period(&self, quad: &QuadConfig) -> Result<PeriodVector, NumericError> {
        integrate_chains(&self.chains, &self.exponents, &self.punctures, quad)
    }

    pub fn vertex_count(&self) -> usize {
        self.chains.iter().flat_map(Chain::paths).map(BranchPath::len).sum()
    }

    /// Moves puncture `mover` to `target`, dragging nearby vertices along.
    fn push(&mut self, mover: usize, target: Complex64) -> Result<(), NumericError> {
        let old = self.punctures.clone();
        let r = 0.5 * min_gap(&old);
        let delta = target - old[mover];
        let mut new = old.clone();
        new[mover] = target;
        let paths = self.chains.iter_mut().flat_map(Chain::paths_mut).chain(self.probes.iter_mut());
        for path in paths {
            for v in &mut path.vertices {
                let t_new = match v.at {
                    Some(j) => new[j],
                    None => v.t + delta * weight((v.t - old[mover]).norm(), r),
                };
                for j in 0..old.len() {
                    if v.at == Some(j) {
                        continue;
                    }
                    let inc = ((t_new - new[j]) / (v.t - old[j])).ln();
                    if inc.im.abs() > 0.5 * PI {
                        return Err(NumericError::BranchJump(format!(
                            "log(t − x_{j}) jumped by {:.3} at t = {}",
                            inc.im, v.t
                        )));
                    }
                    v.logs[j] += inc;
                }
                v.t = t_new;
            }
            path.refine(&new)?;
        }
        self.punctures = new;
        Ok(())
    }

    fn min_clearance(&self) -> f64 {
        self.chains
            .iter()
            .flat_map(Chain::paths)
            .flat_map(|p| p.vertices.iter())
            .map(|v| clearance(v.t, &self.punctures, v.at))
            .fold(f64::INFINITY, f64::min)
    }

    /// Carries the state once along the loop.
    pub fn run(&mut self, scene: &NumericScene, schedule: &LoopSchedule) -> Result<LoopStats, NumericError> {
        schedule.validate(scene)?;
        let track = schedule.track(scene);
        let (mover, _) = schedule.generator.moving_and_centre();
        let total = track.length();
        let mut stats = LoopStats {
            min_clearance: self.min_clearance(),
            ..LoopStats::default()
        };
        if total == 0.0 {
            stats.vertices = self.vertex_count();
            return Ok(stats);
        }
        let mut s = 0.0;
        for k in 0..schedule.steps {
            let s_end = if k + 1 == schedule.steps {
                total
            } else {
                total * (k + 1) as f64 / schedule.steps as f64
            };
            while s < s_end {
                let limit = 0.05 * min_gap(&self.punctures);
                s = if s_end - s <= limit { s_end } else { s + limit };
                self.push(mover, track.pos(s))?;
                stats.substeps += 1;
                let c = self.min_clearance();
                stats.min_clearance = stats.min_clearance.min(c);
                if c < self.clear_floor {
                    return Err(NumericError::ClearanceLost(format!("a path came within {c:e} of a puncture")));
                }
            }
        }
        stats.vertices = self.vertex_count();
        Ok(stats)
    }
}

/// The period vector after continuation along the loop.
pub fn continue_loop(scene: &NumericScene, schedule: &LoopSchedule, side: PeriodSide) -> Result<PeriodVector, NumericError> {
    let mut state = ContinuationState::new(scene, side)?;
    state.run(scene, schedule)?;
    state.period(&scene.quad)
}

/// ‖period after ρ then ρ^{-1} − start‖ / ‖start‖.
pub fn loop_closure_residual(scene: &NumericScene, schedule: &LoopSchedule, side: PeriodSide) -> Result<f64, NumericError> {
    let mut state = ContinuationState::new(scene, side)?;
    let start = state.period(&scene.quad)?;
    state.run(scene, schedule)?;
    state.run(scene, &schedule.reverse())?;
    let end = state.period(&scene.quad)?;
    Ok(relative_residual(&end.values, &start.values, &start.values))
}

/// Tolerances and loop controls for the end-to-end check.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MonodromyOptions {
    pub tol: f64,
    pub steps: Option<usize>,
    pub radius: Option<f64>,
    pub closure: bool,
}

impl Default for MonodromyOptions {
    fn default() -> Self {
        MonodromyOptions {
            tol: 1e-6,
            steps: None,
            radius: None,
            closure: false,
        }
    }
}

fn check_generator(
    scene: &NumericScene,
    rep: &Representation,
    side: PeriodSide,
    base: &ContinuationState,
    start: &PeriodVector,
    schedule: &LoopSchedule,
    opts: &MonodromyOptions,
) -> Vec<Check> {
    let g = schedule.generator;
    let (label, name) = match side {
        PeriodSide::Lf => ("M", format!("continued lf periods = M{g}·start")),
        PeriodSide::Fin => ("N", format!("continued fin periods = tr(N{g})·start")),
    };
    let mut out = Vec::new();
    let mut state = base.clone();
    let outcome = (|| -> Result<(f64, LoopStats), NumericError> {
        let stats = state.run(scene, schedule)?;
        let cont = state.period(&scene.quad)?;
        let pair = rep.pair(g);
        let mat = match side {
            PeriodSide::Lf => scene.evaluate(&pair.m)?,
            PeriodSide::Fin => scene.evaluate(&pair.n)?.transpose(),
        };
        let want = mat.mul_vec(&start.values);
        Ok((relative_residual(&cont.values, &want, &start.values), stats))
    })();
    match outcome {
        Ok((res, stats)) => out.push(
            Check::from_bool(name, res <= opts.tol, || {
                format!("{label}{g}: residual {res:.3e} > {:.0e} ({} substeps)", opts.tol, stats.substeps)
            })
            .with_residual(res),
        ),
        Err(e) => out.push(Check::fail(name, e.to_string())),
    }
    if opts.closure {
        let cname = format!("loop {g} then its reverse returns the start");
        let closed = (|| -> Result<f64, NumericError> {
            state.run(scene, &schedule.reverse())?;
            let end = state.period(&scene.quad)?;
            Ok(relative_residual(&end.values, &start.values, &start.values))
        })();
        match closed {
            Ok(res) => out.push(
                Check::from_bool(cname, res <= 2.0 * opts.tol, || format!("residual {res:.3e} > {:.0e}", 2.0 * opts.tol)).with_residual(res),
            ),
            Err(e) => out.push(Check::fail(cname, e.to_string())),
        }
    }
    out
}

/// Continues the scene's period vector along each generator loop and compares
/// with the symbolic circuit matrix evaluated at the scene's λ values: M for
/// the lf side (shift hat), the transpose of N for the fin side (shift check).
pub fn verify_monodromy_numeric(scene: &NumericScene, generators: &[Generator], opts: &MonodromyOptions) -> Result<VerificationReport, NumericError> {
    let side = scene
        .shift()
        .side()
        .ok_or_else(|| NumericError::BadScene("shift `none` selects no period side".into()))?;
    let rep = Representation::new(scene.params())?;
    let base = ContinuationState::new(scene, side)?;
    let start = base.period(&scene.quad)?;
    let schedules: Vec<LoopSchedule> = generators
        .iter()
        .map(|&g| {
            let mut s = LoopSchedule::for_scene(scene, g);
            if let Some(n) = opts.steps {
                s.steps = n;
            }
            if let Some(r) = opts.radius {
                s.radius = r;
            }
            s
        })
        .collect();
    for s in &schedules {
        s.validate(scene)?;
    }
    let per_generator: Vec<Vec<Check>> = std::thread::scope(|sc| {
        let handles: Vec<_> = schedules
            .iter()
            .map(|s| {
                let (rep, base, start) = (&rep, &base, &start);
                sc.spawn(move || check_generator(scene, rep, side, base, start, s, opts))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("continuation thread")).collect()
    });
    let side_name = match side {
        PeriodSide::Lf => "lf",
        PeriodSide::Fin => "fin",
    };
    let mut report = VerificationReport::with_header(format!("side = {side_name}, tol = {:e}", opts.tol));
    for check in per_generator.into_iter().flatten() {
        report.push(check);
    }
    Ok(report)
}
