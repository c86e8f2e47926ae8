//! End-to-end runs: pick a construction, build, verify, and collect
//! everything into a serializable report.

use crate::bounds::{bounds_report, BoundsError, BoundsReport};
use crate::diagram::{diagram_for, random_diagram, Crossing, DiagramError};
use crate::exact::{format_rational, Rational};
use crate::mesh::{check_embedded_with, orientation_propagate, surface_report, validate_manifold, EmbedMode, TriMesh};
use crate::otherdims::{cone_highdim, earclip_2d, embedded_4d, immersed_disk_4d, OtherDimError};
use crate::par::Execution;
use crate::polygon::ClosedPolygon;
use crate::seifert::{spanning_surface_r3_with, SeifertBuildTrace, SeifertError, SmoothingRule};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// by dimension: 2 ear clip, 3 seifert, 4 immersed disk, 5+ cone
    #[default]
    Auto,
    Seifert,
    Cone,
    Immersed4,
    Embedded4,
    Earclip,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::Auto => "auto",
            Strategy::Seifert => "seifert",
            Strategy::Cone => "cone",
            Strategy::Immersed4 => "immersed4",
            Strategy::Embedded4 => "embedded4",
            Strategy::Earclip => "earclip",
        }
    }

    /// The concrete strategy for a polygon in `R^dim`.
    pub fn resolve(self, dim: usize) -> Result<Strategy, PipelineError> {
        let s = match self {
            Strategy::Auto => match dim {
                2 => Strategy::Earclip,
                3 => Strategy::Seifert,
                4 => Strategy::Immersed4,
                _ => Strategy::Cone,
            },
            s => s,
        };
        let ok = match s {
            Strategy::Earclip => dim == 2,
            Strategy::Seifert => dim == 3,
            Strategy::Immersed4 | Strategy::Embedded4 => dim == 4,
            Strategy::Cone => dim >= 5,
            Strategy::Auto => unreachable!(),
        };
        if ok {
            Ok(s)
        } else {
            Err(PipelineError::StrategyMismatch {
                strategy: s.name(),
                dim,
            })
        }
    }

    /// Embeddedness notion the strategy guarantees.
    pub fn mode(self) -> EmbedMode {
        match self {
            Strategy::Immersed4 => EmbedMode::ComplementaryImmersed,
            _ => EmbedMode::Embedded,
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        [
            Strategy::Auto,
            Strategy::Seifert,
            Strategy::Cone,
            Strategy::Immersed4,
            Strategy::Embedded4,
            Strategy::Earclip,
        ]
        .into_iter()
        .find(|x| x.name() == s)
        .ok_or_else(|| format!("unknown strategy `{s}`"))
    }
}

pub fn mode_name(m: EmbedMode) -> &'static str {
    match m {
        EmbedMode::Embedded => "embedded",
        EmbedMode::ComplementaryImmersed => "complementary-immersed",
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error("strategy {strategy} does not apply in dimension {dim}")]
    StrategyMismatch { strategy: &'static str, dim: usize },
    #[error(transparent)]
    Seifert(#[from] SeifertError),
    #[error(transparent)]
    OtherDim(#[from] OtherDimError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
}

#[derive(Clone, Debug, Default)]
pub struct SpanOptions {
    pub seed: u64,
    pub rule: SmoothingRule,
    pub strategy: Strategy,
    pub knot_genus: Option<i64>,
    pub unoriented_genus: Option<Rational>,
    pub exec: Execution,
}

fn ser_rat<S: serde::Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(q))
}

/// Wall-clock timings in milliseconds, kept apart from reproducible data.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Timings {
    pub build_ms: f64,
    pub verify_ms: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub input: String,
    pub n: usize,
    pub dim: usize,
    pub c: Option<usize>,
    pub writhe: Option<i64>,
    pub circuits: Option<usize>,
    pub levels: Option<Vec<usize>>,
    pub crossings: Option<Vec<Crossing>>,
    pub trace: Option<SeifertBuildTrace>,
    pub t: usize,
    pub chi: i64,
    #[serde(serialize_with = "ser_rat")]
    pub genus: Rational,
    pub manifold: bool,
    pub orientable: bool,
    pub embedded: bool,
    pub mode: &'static str,
    pub boundary_match: bool,
    pub chi_consistent: bool,
    pub within_budget: bool,
    pub lower_bounds_hold: bool,
    pub provenance: BTreeMap<&'static str, usize>,
    pub bounds: BoundsReport,
    pub seed: u64,
    pub strategy: Strategy,
    pub rule: SmoothingRule,
    pub attempts: usize,
    pub witness: Option<String>,
    pub timings: Timings,
}

impl RunReport {
    /// Every certificate holds.
    pub fn passed(&self) -> bool {
        self.manifold
            && self.orientable
            && self.embedded
            && self.boundary_match
            && self.chi_consistent
            && self.within_budget
            && self.lower_bounds_hold
    }
}

pub struct SpanOutcome {
    pub mesh: TriMesh,
    pub report: RunReport,
}

struct Built {
    mesh: TriMesh,
    c: Option<usize>,
    writhe: Option<i64>,
    circuits: Option<usize>,
    levels: Option<Vec<usize>>,
    crossings: Option<Vec<Crossing>>,
    trace: Option<SeifertBuildTrace>,
    expected_chi: i64,
    attempts: usize,
}

/// Builds a spanning surface for `p`, re-verifies it from scratch and
/// reports. Construction failures are errors; verification failures are
/// recorded in the report.
pub fn run_span(p: &ClosedPolygon, input: &str, o: &SpanOptions) -> Result<SpanOutcome, PipelineError> {
    let strategy = o.strategy.resolve(p.dim())?;
    let n = p.n();
    let start = Instant::now();
    let b = match strategy {
        Strategy::Seifert => {
            let s = spanning_surface_r3_with(p, o.seed, o.rule, o.exec)?;
            Built {
                c: Some(s.trace.c),
                writhe: Some(s.writhe),
                circuits: Some(s.trace.s),
                expected_chi: s.trace.s as i64 - s.trace.c as i64,
                levels: Some(s.levels.level.clone()),
                attempts: s.trace.shrink as usize + 1,
                crossings: Some(s.crossings),
                trace: Some(s.trace),
                mesh: s.mesh,
            }
        }
        Strategy::Earclip => Built {
            mesh: earclip_2d(p)?,
            c: None,
            writhe: None,
            circuits: None,
            levels: None,
            crossings: None,
            trace: None,
            expected_chi: 1,
            attempts: 1,
        },
        Strategy::Cone => {
            let k = cone_highdim(p, o.seed)?;
            Built {
                mesh: k.mesh,
                c: None,
                writhe: None,
                circuits: None,
                levels: None,
                crossings: None,
                trace: None,
                expected_chi: 1,
                attempts: k.attempts,
            }
        }
        Strategy::Immersed4 => {
            let d = immersed_disk_4d(p, o.seed)?;
            Built {
                mesh: d.mesh,
                c: None,
                writhe: None,
                circuits: None,
                levels: None,
                crossings: None,
                trace: None,
                expected_chi: 1,
                attempts: d.attempts,
            }
        }
        Strategy::Embedded4 => {
            let e = embedded_4d(p, o.seed, o.rule)?;
            Built {
                mesh: e.mesh,
                c: None,
                writhe: None,
                circuits: Some(e.cap.trace.s),
                levels: Some(e.cap.levels.level.clone()),
                crossings: None,
                expected_chi: e.cap.trace.s as i64 - e.cap.trace.c as i64,
                trace: Some(e.cap.trace),
                attempts: e.attempts,
            }
        }
        Strategy::Auto => unreachable!(),
    };
    let build_ms = start.elapsed().as_secs_f64() * 1e3;

    let start = Instant::now();
    let v = verify_mesh(&b.mesh, Some(p), strategy.mode(), o.exec);
    let verify_ms = start.elapsed().as_secs_f64() * 1e3;

    let t = b.mesh.t();
    let bounds = bounds_report(
        n,
        b.c.unwrap_or(0),
        b.writhe.unwrap_or(0),
        o.knot_genus,
        o.unoriented_genus.clone(),
        Some(t),
    )?;
    let within_budget = match strategy {
        Strategy::Seifert => t <= bounds.upper.seifert && t <= bounds.upper.quadratic,
        Strategy::Earclip => t == bounds.upper.d2,
        Strategy::Cone => t == bounds.upper.d5_cone,
        Strategy::Immersed4 => t == bounds.upper.d4_immersed,
        Strategy::Embedded4 => t <= bounds.upper.d4_embedded,
        Strategy::Auto => unreachable!(),
    };
    let lower_bounds_hold = strategy != Strategy::Seifert || t as i64 >= bounds.best_lower();
    let report = RunReport {
        input: input.to_string(),
        n,
        dim: p.dim(),
        c: b.c,
        writhe: b.writhe,
        circuits: b.circuits,
        levels: b.levels,
        crossings: b.crossings,
        trace: b.trace,
        t,
        chi: v.chi,
        genus: v.genus.clone(),
        manifold: v.manifold,
        orientable: v.orientable,
        embedded: v.embedded,
        mode: mode_name(strategy.mode()),
        boundary_match: v.boundary_match,
        chi_consistent: v.manifold && v.chi == b.expected_chi,
        within_budget,
        lower_bounds_hold,
        provenance: b.mesh.provenance_counts(),
        bounds,
        seed: o.seed,
        strategy,
        rule: o.rule,
        attempts: b.attempts,
        witness: v.witness,
        timings: Timings { build_ms, verify_ms },
    };
    Ok(SpanOutcome { mesh: b.mesh, report })
}

/// Certificates for any mesh, optionally against its intended boundary.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub manifold: bool,
    pub orientable: bool,
    pub embedded: bool,
    pub mode: &'static str,
    pub boundary_match: bool,
    #[serde(rename = "V")]
    pub v: usize,
    #[serde(rename = "E")]
    pub e: usize,
    #[serde(rename = "F")]
    pub f: usize,
    pub chi: i64,
    pub boundary_components: usize,
    #[serde(serialize_with = "ser_rat")]
    pub genus: Rational,
    pub witness: Option<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.manifold && self.orientable && self.embedded && self.boundary_match
    }
}

pub fn verify_mesh(m: &TriMesh, p: Option<&ClosedPolygon>, mode: EmbedMode, exec: Execution) -> VerifyReport {
    let mut witness = Vec::new();
    let summary = validate_manifold(m).map_err(|e| witness.push(e.to_string())).ok();
    let orient = orientation_propagate(m);
    if let Err(e) = &orient {
        witness.push(e.to_string());
    }
    let emb = if summary.is_some() {
        check_embedded_with(m, None, mode, exec)
    } else {
        Ok(())
    };
    if let Err(e) = &emb {
        witness.push(e.to_string());
    }
    let boundary_match = match p {
        Some(p) => match crate::mesh::check_boundary_match(m, p) {
            Ok(()) => true,
            Err(e) => {
                witness.push(format!("boundary: {e}"));
                false
            }
        },
        None => true,
    };
    let r = surface_report(m).ok();
    VerifyReport {
        manifold: summary.is_some(),
        orientable: orient.is_ok(),
        embedded: summary.is_some() && emb.is_ok(),
        mode: mode_name(mode),
        boundary_match,
        v: r.as_ref().map_or(0, |r| r.v),
        e: r.as_ref().map_or(0, |r| r.e),
        f: m.t(),
        chi: r.as_ref().map_or(0, |r| r.chi),
        boundary_components: r.as_ref().map_or(0, |r| r.boundary_components),
        genus: r.map_or(Rational::from(0u32), |r| r.genus),
        witness: (!witness.is_empty()).then(|| witness.join("; ")),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectionStat {
    pub seed: u64,
    pub c: usize,
    pub writhe: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundsRun {
    pub n: usize,
    pub dim: usize,
    pub projections: Vec<ProjectionStat>,
    pub max_abs_writhe: i64,
    pub bounds: BoundsReport,
}

/// Writhe and crossings under the default projection and `k - 1` seeded
/// random ones; bounds use the largest `|w|`.
pub fn run_bounds(
    p: &ClosedPolygon,
    k: usize,
    seed: u64,
    knot_genus: Option<i64>,
    unoriented_genus: Option<Rational>,
) -> Result<BoundsRun, PipelineError> {
    let mut projections = Vec::new();
    if p.dim() == 3 {
        for i in 0..k.max(1) {
            let s = seed.wrapping_add(i as u64);
            let d = if i == 0 {
                diagram_for(p, seed)?.1
            } else {
                random_diagram(p, s)?
            };
            projections.push(ProjectionStat {
                seed: s,
                c: d.crossing_count(),
                writhe: d.writhe(),
            });
        }
    }
    let max_abs_writhe = projections.iter().map(|x| x.writhe.abs()).max().unwrap_or(0);
    let c = projections.first().map_or(0, |x| x.c);
    let bounds = bounds_report(p.n(), c, max_abs_writhe, knot_genus, unoriented_genus, None)?;
    Ok(BoundsRun {
        n: p.n(),
        dim: p.dim(),
        projections,
        max_abs_writhe,
        bounds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::{gen_planar_ngon, gen_torus_stick, gen_twist_writhe};

    #[test]
    fn dispatch() {
        assert_eq!(Strategy::Auto.resolve(2), Ok(Strategy::Earclip));
        assert_eq!(Strategy::Auto.resolve(3), Ok(Strategy::Seifert));
        assert_eq!(Strategy::Auto.resolve(4), Ok(Strategy::Immersed4));
        assert_eq!(Strategy::Auto.resolve(7), Ok(Strategy::Cone));
        assert!(Strategy::Cone.resolve(3).is_err());
        assert_eq!("embedded4".parse(), Ok(Strategy::Embedded4));
    }

    #[test]
    fn trefoil_report() {
        let p = gen_torus_stick(3).unwrap();
        let o = SpanOptions {
            knot_genus: Some(1),
            ..Default::default()
        };
        let r = run_span(&p, "torus 3", &o).unwrap().report;
        assert_eq!((r.t, r.chi, r.c, r.circuits), (56, -1, Some(3), Some(2)));
        assert_eq!(r.genus, Rational::from(1u32));
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn small_dimensions() {
        let o = SpanOptions::default();
        let r = run_span(&gen_planar_ngon(3, 5).unwrap(), "tri", &o).unwrap().report;
        assert_eq!(r.t, 3);
        assert!(r.passed());
        let r = run_span(&gen_planar_ngon(6, 2).unwrap(), "hex", &o).unwrap().report;
        assert_eq!(r.t, 4);
        assert!(r.passed());
    }

    #[test]
    fn bounds_over_projections() {
        let b = run_bounds(&gen_twist_writhe(3).unwrap(), 4, 0, None, None).unwrap();
        assert_eq!(b.projections.len(), 4);
        assert_eq!(b.projections[0].writhe, 12);
        assert!(b.bounds.lower.writhe >= 13);
        let b = run_bounds(&gen_planar_ngon(5, 3).unwrap(), 3, 0, None, None).unwrap();
        assert_eq!(b.bounds.best_lower(), 1);
    }
}
