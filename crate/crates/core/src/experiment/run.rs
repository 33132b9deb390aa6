use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use super::config::{ExperimentConfig, Quantity};
use super::fit::{fit_scaling, ScalingFit, ScalingModel};
use crate::bounds::{verify_relations, BoundReport, MeasuredQuantities};
use crate::coalesce::{default_cap, estimate, Estimate, SimKind};
use crate::error::{Error, Result};
use crate::graph::{generate, FamilyKind, FamilySpec, Graph};
use crate::markov::{
    collision_stats_for_window, meeting_exact_with, mixing_time_with, separation_time_with, spectral_with,
    stationary, t_hit_with, ExactConfig, MixingTime, DEFAULT_EPS,
};
use crate::rng;

pub const CSV_HEADER: &str = "family,n,m,quantity,value,stderr,trials,censored,seed";

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EstimateRecord {
    pub estimate: Estimate,
    pub seed: u64,
    pub cap: u64,
    /// Start pair for fixed-pair meeting estimates.
    pub pair: Option<(usize, usize)>,
}

/// Everything computed for one (family, size) point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Record {
    pub family: FamilyKind,
    pub spec: FamilySpec,
    pub label: String,
    pub n: usize,
    pub m: usize,
    pub graph_seed: u64,
    pub measured: MeasuredQuantities,
    pub estimates: BTreeMap<String, EstimateRecord>,
    pub report: Option<BoundReport>,
}

impl Record {
    /// Value of a quantity: exact value, or estimated mean.
    pub fn value(&self, q: Quantity) -> Option<f64> {
        let mq = &self.measured;
        match q {
            Quantity::THit => mq.t_hit,
            Quantity::TMix => mq.t_mix,
            Quantity::TSep => mq.t_sep,
            Quantity::Lambda2 => mq.lambda2,
            Quantity::TMeet => mq.t_meet,
            Quantity::Collision => mq.collision.as_ref().map(|c| c.c_max),
            Quantity::Bounds => None,
            _ => self.estimates.get(q.name()).map(|e| e.estimate.mean),
        }
    }

    pub fn csv_rows(&self, out: &mut String) {
        let fam = self.family.name();
        let mq = &self.measured;
        let exact = [
            ("t_hit", mq.t_hit),
            ("t_meet", mq.t_meet),
            ("t_meet_pi", mq.t_meet_pi),
            ("t_mix", mq.t_mix),
            ("t_sep", mq.t_sep),
            ("lambda2", mq.lambda2),
            ("c_max", mq.collision.as_ref().map(|c| c.c_max)),
            ("c_min", mq.collision.as_ref().map(|c| c.c_min)),
            ("r_max", mq.collision.as_ref().map(|c| c.r_max)),
        ];
        for (name, v) in exact {
            if let Some(v) = v {
                let _ = writeln!(out, "{fam},{},{},{name},{v:e},,,,{}", self.n, self.m, self.graph_seed);
            }
        }
        for (name, e) in &self.estimates {
            let est = &e.estimate;
            let _ = writeln!(
                out,
                "{fam},{},{},{name},{:e},{:e},{},{},{}",
                self.n, self.m, est.mean, est.stderr, est.trials, est.censored_count, e.seed
            );
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunSummary {
    pub records: Vec<Record>,
    pub csv: String,
}

impl RunSummary {
    pub fn explicit_passed(&self) -> bool {
        self.records.iter().all(|r| r.report.as_ref().is_none_or(BoundReport::explicit_passed))
    }

    /// 0 when every explicit check passed, 2 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.explicit_passed() {
            0
        } else {
            2
        }
    }

    /// Fits `quantity` against `model` for every sweep with enough points.
    pub fn fits(&self, quantity: Quantity, model: ScalingModel) -> Vec<(String, Result<ScalingFit>)> {
        let mut groups: BTreeMap<String, Vec<(f64, f64)>> = BTreeMap::new();
        for r in &self.records {
            if let Some(v) = r.value(quantity) {
                groups.entry(r.family.name().to_string()).or_default().push((r.n as f64, v));
            }
        }
        groups.into_iter().map(|(k, s)| (k, fit_scaling(&s, model))).collect()
    }
}

/// A graph paired with the options that drive one point of a sweep.
pub struct PointInput<'a> {
    pub spec: FamilySpec,
    pub graph: &'a Graph,
    pub graph_seed: u64,
    /// Seed the Monte Carlo ensembles are derived from.
    pub point_seed: u64,
}

/// Two vertices far apart: the end of a BFS from vertex 0, then the vertex
/// farthest from it. Used as the start pair for worst-case meeting estimates
/// when the exact solution is unavailable.
pub fn far_pair(g: &Graph) -> (usize, usize) {
    let pick = |d: Vec<Option<usize>>| (0..g.n()).max_by_key(|&v| (d[v], std::cmp::Reverse(v))).unwrap_or(0);
    let u = pick(g.bfs_distances(0));
    let v = pick(g.bfs_distances(u));
    (u, v)
}

fn needs(qs: &[Quantity], q: Quantity) -> bool {
    qs.contains(&q) || (qs.contains(&Quantity::Bounds) && !q.is_monte_carlo() && q != Quantity::Bounds)
}

/// Computes the requested quantities for one graph.
pub fn run_point(
    input: &PointInput<'_>,
    quantities: &[Quantity],
    trials: usize,
    cap: Option<u64>,
    exact: &ExactConfig,
) -> Result<Record> {
    let g = input.graph;
    let kind = input.spec.kind();
    let mut mq = MeasuredQuantities { n: g.n(), vertex_transitive: kind.is_vertex_transitive(), ..Default::default() };
    let pi = stationary(g);
    mq.pi_norm_sq = Some(pi.norm_sq());
    mq.pi_min = Some(pi.as_slice().iter().copied().fold(f64::INFINITY, f64::min));
    mq.gamma = Some(g.gamma());

    let mut mix: Option<MixingTime> = None;
    if needs(quantities, Quantity::TMix) || needs(quantities, Quantity::Collision) {
        let m = mixing_time_with(g, DEFAULT_EPS, exact)?;
        mq.t_mix = Some(m.value() as f64);
        mq.t_mix_exact = m.is_exact();
        mix = Some(m);
    }
    if needs(quantities, Quantity::THit) {
        mq.t_hit = Some(t_hit_with(g, exact)?);
    }
    if needs(quantities, Quantity::TSep) {
        mq.t_sep = Some(separation_time_with(g, DEFAULT_EPS, exact)? as f64);
    }
    if needs(quantities, Quantity::Lambda2) {
        mq.lambda2 = Some(spectral_with(g, exact)?.lambda2);
    }
    let mut argmax = None;
    if needs(quantities, Quantity::TMeet) {
        if g.n() <= exact.meeting_limit {
            let m = meeting_exact_with(g, exact)?;
            mq.t_meet = Some(m.t_meet);
            mq.t_meet_pi = Some(m.t_meet_pi);
            argmax = Some(m.argmax);
        } else if quantities.contains(&Quantity::TMeet) || quantities.contains(&Quantity::Bounds) {
            return Err(Error::TooLarge { n: g.n(), limit: exact.meeting_limit });
        }
    }
    if let (true, Some(m)) = (needs(quantities, Quantity::Collision), mix) {
        mq.collision = Some(collision_stats_for_window(g, m));
    }

    let cap = cap.unwrap_or_else(|| default_cap(g.n()));
    let mut estimates = BTreeMap::new();
    for &q in quantities.iter().filter(|q| q.is_monte_carlo()) {
        let (sim, pair) = match q {
            Quantity::TCoal => (SimKind::Coalescence { start: None }, None),
            Quantity::TMeetMc => {
                let (u, v) = argmax.unwrap_or_else(|| far_pair(g));
                (SimKind::Meeting { u, v }, Some((u, v)))
            }
            Quantity::TMeetPiMc => (SimKind::MeetingStationary, None),
            Quantity::Voter => (SimKind::Voter { lazy: true }, None),
            _ => unreachable!(),
        };
        let seed = rng::trial_seed(input.point_seed, q.index());
        let est = estimate(&sim, g, trials, seed, cap)?;
        estimates.insert(q.name().to_string(), EstimateRecord { estimate: est, seed, cap, pair });
    }
    if let Some(e) = estimates.get(Quantity::TCoal.name()) {
        mq.t_coal_estimate = Some(e.estimate.clone());
    }

    let report = if quantities.contains(&Quantity::Bounds) { Some(verify_relations(g, &mq)?) } else { None };
    Ok(Record {
        family: kind,
        label: input.spec.label(),
        spec: input.spec.clone(),
        n: g.n(),
        m: g.m(),
        graph_seed: input.graph_seed,
        measured: mq,
        estimates,
        report,
    })
}

/// Runs every sweep point and, if `output_dir` is set, writes one JSON file
/// per point plus `results.csv`.
pub fn run(config: &ExperimentConfig) -> Result<RunSummary> {
    config.validate()?;
    let master = config.master_seed.unwrap_or(0);
    let mut points = Vec::new();
    for (si, sweep) in config.sweeps.iter().enumerate() {
        for spec in sweep.specs()? {
            let size = spec.vertex_count()? as u64;
            let point_seed = rng::trial_seed(rng::trial_seed(master, si as u64), size);
            points.push((spec, point_seed));
        }
    }
    let records: Vec<Record> = points
        .par_iter()
        .map(|(spec, point_seed)| {
            let graph_seed = rng::trial_seed(*point_seed, u64::MAX);
            let g = generate(spec, graph_seed).map_err(|e| with_context(e, spec))?;
            let input = PointInput { spec: spec.clone(), graph: &g, graph_seed, point_seed: *point_seed };
            run_point(&input, &config.quantities, config.trials, config.cap, &config.exact)
                .map_err(|e| with_context(e, spec))
        })
        .collect::<Result<_>>()?;

    let mut csv = String::from(CSV_HEADER);
    csv.push('\n');
    for r in &records {
        r.csv_rows(&mut csv);
    }
    if let Some(dir) = &config.output_dir {
        std::fs::create_dir_all(dir)?;
        for r in &records {
            let json = serde_json::to_string_pretty(r).map_err(|e| Error::Io(e.to_string()))?;
            write_atomic(&dir.join(format!("{}.json", file_stem(&r.label))), json.as_bytes())?;
        }
        write_atomic(&dir.join("results.csv"), csv.as_bytes())?;
    }
    Ok(RunSummary { records, csv })
}

/// `torus(dim=3,side=4)` becomes `torus_dim3_side4`.
pub fn file_stem(label: &str) -> String {
    label
        .chars()
        .filter_map(|c| match c {
            '(' | ',' => Some('_'),
            ')' | '=' => None,
            c => Some(c),
        })
        .collect()
}

fn with_context(e: Error, spec: &FamilySpec) -> Error {
    match e {
        Error::Io(m) => Error::Io(format!("{}: {m}", spec.label())),
        Error::SolverFailure(m) => Error::SolverFailure(format!("{}: {m}", spec.label())),
        Error::ConvergenceFailure(m) => Error::ConvergenceFailure(format!("{}: {m}", spec.label())),
        other => other,
    }
}

pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, bytes)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}
