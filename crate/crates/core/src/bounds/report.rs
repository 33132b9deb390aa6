use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use super::{
    approx_le, bound_coal_beer, bound_coal_mixtradeoff, bound_hit_spectral, bound_meet_hit, bound_meet_interval,
    sandwich_avgmeet,
};
use crate::coalesce::Estimate;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::markov::{
    collision_stats_for_window, meeting_exact_with, mixing_time_with, separation_time_with, spectral_with,
    stationary, t_hit_with, CollisionStats, ExactConfig, DEFAULT_EPS,
};

/// Measured quantities consumed by [`verify_relations`]. Missing entries are
/// `None`; checks that need them fail with [`Error::MissingQuantity`].
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct MeasuredQuantities {
    pub n: usize,
    pub t_hit: Option<f64>,
    pub t_meet: Option<f64>,
    pub t_meet_pi: Option<f64>,
    pub t_mix: Option<f64>,
    /// Whether `t_mix` is the exact pairwise value rather than an upper
    /// bracket end.
    pub t_mix_exact: bool,
    pub t_sep: Option<f64>,
    pub lambda2: Option<f64>,
    pub pi_norm_sq: Option<f64>,
    pub pi_min: Option<f64>,
    pub gamma: Option<f64>,
    pub collision: Option<CollisionStats>,
    pub t_coal_estimate: Option<Estimate>,
    /// Applies the vertex-transitive hitting/meeting sandwich when set.
    pub vertex_transitive: bool,
}

impl MeasuredQuantities {
    fn check_values(&self) -> Result<()> {
        let named = [
            ("t_hit", self.t_hit),
            ("t_meet", self.t_meet),
            ("t_meet_pi", self.t_meet_pi),
            ("t_mix", self.t_mix),
            ("t_sep", self.t_sep),
            ("lambda2", self.lambda2),
            ("pi_norm_sq", self.pi_norm_sq),
            ("pi_min", self.pi_min),
            ("gamma", self.gamma),
        ];
        for (name, v) in named {
            if let Some(x) = v {
                if !x.is_finite() || x < 0.0 {
                    return Err(Error::InvalidArgument(format!("{name} must be finite and non-negative, got {x}")));
                }
            }
        }
        Ok(())
    }
}

fn need(v: Option<f64>, name: &'static str) -> Result<f64> {
    v.ok_or(Error::MissingQuantity(name))
}

/// Computes every exact quantity that fits the configured size limits.
/// `t_meet` and `t_meet_pi` are left empty above `cfg.meeting_limit`.
pub fn measure(g: &Graph, cfg: &ExactConfig, vertex_transitive: bool) -> Result<MeasuredQuantities> {
    let pi = stationary(g);
    let mix = mixing_time_with(g, DEFAULT_EPS, cfg)?;
    let meeting = if g.n() <= cfg.meeting_limit { Some(meeting_exact_with(g, cfg)?) } else { None };
    Ok(MeasuredQuantities {
        n: g.n(),
        t_hit: Some(t_hit_with(g, cfg)?),
        t_meet: meeting.as_ref().map(|m| m.t_meet),
        t_meet_pi: meeting.as_ref().map(|m| m.t_meet_pi),
        t_mix: Some(mix.value() as f64),
        t_mix_exact: mix.is_exact(),
        t_sep: Some(separation_time_with(g, DEFAULT_EPS, cfg)? as f64),
        lambda2: Some(spectral_with(g, cfg)?.lambda2),
        pi_norm_sq: Some(pi.norm_sq()),
        pi_min: Some(pi.as_slice().iter().copied().fold(f64::INFINITY, f64::min)),
        gamma: Some(g.gamma()),
        collision: Some(collision_stats_for_window(g, mix)),
        t_coal_estimate: None,
        vertex_transitive,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
    /// Asymptotic expression; only `lhs / rhs` is reported.
    #[serde(rename = "ratio")]
    Ratio,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Ratio => "ratio",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundEntry {
    pub name: String,
    pub lhs: f64,
    pub rel: Relation,
    pub rhs: f64,
    pub explicit: bool,
    /// `None` for asymptotic ratios and for checks that do not apply.
    pub passed: Option<bool>,
}

impl BoundEntry {
    fn explicit(name: &str, lhs: f64, rel: Relation, rhs: f64) -> Self {
        let passed = match rel {
            Relation::Le => approx_le(lhs, rhs),
            Relation::Ge => approx_le(rhs, lhs),
            Relation::Ratio => unreachable!(),
        };
        BoundEntry { name: name.into(), lhs, rel, rhs, explicit: true, passed: Some(passed) }
    }

    fn not_applicable(name: &str, lhs: f64, rel: Relation, rhs: f64) -> Self {
        BoundEntry { name: name.into(), lhs, rel, rhs, explicit: true, passed: None }
    }

    fn ratio(name: &str, lhs: f64, rhs: f64) -> Self {
        BoundEntry { name: name.into(), lhs, rel: Relation::Ratio, rhs, explicit: false, passed: None }
    }

    pub fn ratio_value(&self) -> f64 {
        self.lhs / self.rhs
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct BoundReport {
    pub entries: Vec<BoundEntry>,
    /// Whether the collision window used the exact pairwise mixing time.
    pub t_mix_exact: bool,
}

impl BoundReport {
    pub const CSV_HEADER: &'static str = "name,lhs,rel,rhs,explicit,passed";

    /// True when no explicit-constant check failed.
    pub fn explicit_passed(&self) -> bool {
        self.entries.iter().all(|e| !e.explicit || e.passed != Some(false))
    }

    pub fn failures(&self) -> impl Iterator<Item = &BoundEntry> {
        self.entries.iter().filter(|e| e.passed == Some(false))
    }

    pub fn get(&self, name: &str) -> Option<&BoundEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(Self::CSV_HEADER);
        out.push('\n');
        for e in &self.entries {
            let passed = match e.passed {
                Some(true) => "true",
                Some(false) => "false",
                None => "na",
            };
            let _ = writeln!(out, "{},{:e},{},{:e},{},{}", e.name, e.lhs, e.rel, e.rhs, e.explicit, passed);
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Checks every explicit-constant inequality that `mq` supports and reports
/// the asymptotic expressions as ratios.
///
/// Explicit checks need `t_hit`, `t_meet`, `t_meet_pi`, `t_mix`, `t_sep`,
/// `pi_min` and `collision`; asymptotic ratios are added when their inputs
/// are present.
pub fn verify_relations(g: &Graph, mq: &MeasuredQuantities) -> Result<BoundReport> {
    mq.check_values()?;
    let t_hit = need(mq.t_hit, "t_hit")?;
    let t_meet = need(mq.t_meet, "t_meet")?;
    let t_meet_pi = need(mq.t_meet_pi, "t_meet_pi")?;
    let t_mix = need(mq.t_mix, "t_mix")?;
    let t_sep = need(mq.t_sep, "t_sep")?;
    let pi_min = need(mq.pi_min, "pi_min")?;
    let cs = mq.collision.as_ref().ok_or(Error::MissingQuantity("collision"))?;
    let n = g.n() as f64;

    let mut entries = vec![
        BoundEntry::explicit("hit_lower_pi_min", t_hit, Relation::Ge, 2.0 / pi_min - 2.0),
        BoundEntry::explicit("sep_le_4mix", t_sep, Relation::Le, 4.0 * t_mix),
        BoundEntry::explicit("meet_le_4hit", t_meet, Relation::Le, bound_meet_hit(t_hit)),
    ];
    let sw = sandwich_avgmeet(t_mix, t_meet_pi, t_meet);
    entries.push(BoundEntry::explicit("avgmeet_lower", t_meet, Relation::Ge, sw.lower));
    entries.push(BoundEntry::explicit("avgmeet_upper", t_meet, Relation::Le, sw.upper));
    let (lo, hi) = bound_meet_interval(cs);
    entries.push(BoundEntry::explicit("collision_lower", t_meet_pi, Relation::Ge, lo));
    entries.push(BoundEntry::explicit("collision_upper", t_meet, Relation::Le, hi));
    if mq.vertex_transitive {
        entries.push(BoundEntry::explicit("vt_meet_ge_half_hit", t_meet, Relation::Ge, t_hit / 2.0));
        entries.push(BoundEntry::explicit("vt_meet_le_2hit", t_meet, Relation::Le, 2.0 * t_hit));
    } else {
        entries.push(BoundEntry::not_applicable("vt_meet_ge_half_hit", t_meet, Relation::Ge, t_hit / 2.0));
        entries.push(BoundEntry::not_applicable("vt_meet_le_2hit", t_meet, Relation::Le, 2.0 * t_hit));
    }

    if let (Some(l2), Some(gamma)) = (mq.lambda2, mq.gamma) {
        if l2 < 1.0 {
            entries.push(BoundEntry::ratio("hit_spectral", t_hit, bound_hit_spectral(n, gamma, l2)));
        }
    }
    if let Some(est) = &mq.t_coal_estimate {
        if t_meet > 0.0 {
            entries.push(BoundEntry::ratio("coal_mixtradeoff", est.mean, bound_coal_mixtradeoff(t_meet, t_mix, n)));
        }
        if g.n() >= 2 {
            entries.push(BoundEntry::ratio("coal_beer", est.mean, bound_coal_beer(t_meet, n)));
        }
    }
    Ok(BoundReport { entries, t_mix_exact: cs.t_mix_exact })
}
