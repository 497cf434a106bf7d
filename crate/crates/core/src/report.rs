//! Runs named checks on a scene and assembles deterministic reports.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::arrangement::build_arrangement;
use crate::collections::{admissible, generated_by_hyperplanes, generated_by_points, Collection};
use crate::complexes::spherical::{check_spherical, pt_bicomplex, pt_collapse_crosscheck};
use crate::complexes::tits::{local_complex, order_complex, relative_st_complex};
use crate::complexes::{homology, wedge_verdict, HomologySummary};
use crate::error::{Error, Result};
use crate::exact::rational::fmt_vec;
use crate::geometry::Kind;
use crate::groups::apartments::{signed_permutations, simplicial_relation, tuple_apartment_or_zero};
use crate::groups::checks::{
    duality_check, exact_sequence_check, homology_json, local_check, solomon_tits_checks, suspension_check, CheckReport, Verdict,
};
use crate::groups::ptls::{ls_group, pt_group, verify_pt_ls};
use crate::resolution::resolution_homology;
use crate::scene::Scene;

pub const TOOL: &str = "geotits";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Every check a scene can request, in canonical order.
pub const CHECKS: &[&str] = &[
    "validate",
    "closure",
    "arrangement",
    "homology-t",
    "homology-st",
    "homology-pt",
    "homology-local",
    "groups-pt",
    "groups-ls",
    "solomon-tits",
    "pt-ls",
    "exact-seq",
    "duality",
    "suspension",
    "local",
    "resolution",
];

/// Samples drawn per randomized relation check.
pub const SAMPLES: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Outcome {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "INVALID_SCENE")]
    InvalidScene,
    #[serde(rename = "HYPOTHESES_NOT_MET")]
    HypothesesNotMet,
}

impl Outcome {
    pub fn as_str(&self) -> &'static str {
        match self {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::InvalidScene => "INVALID_SCENE",
            Outcome::HypothesesNotMet => "HYPOTHESES_NOT_MET",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Outcome::Pass => 0,
            Outcome::Fail => 1,
            Outcome::InvalidScene => 2,
            Outcome::HypothesesNotMet => 3,
        }
    }

    /// Combined outcome of several checks: invalid input first, then theorem
    /// failures, then unmet hypotheses.
    pub fn worst(items: impl IntoIterator<Item = Outcome>) -> Outcome {
        let rank = |o: &Outcome| match o {
            Outcome::Pass => 0,
            Outcome::HypothesesNotMet => 1,
            Outcome::Fail => 2,
            Outcome::InvalidScene => 3,
        };
        items.into_iter().max_by_key(rank).unwrap_or(Outcome::Pass)
    }
}

impl From<Verdict> for Outcome {
    fn from(v: Verdict) -> Self {
        match v {
            Verdict::Pass => Outcome::Pass,
            Verdict::Fail => Outcome::Fail,
        }
    }
}

pub fn classify(e: &Error) -> Outcome {
    match e {
        Error::HypothesesNotMet(_) | Error::NotGeneratedByPoints | Error::NotDecidableFinite(_) => Outcome::HypothesesNotMet,
        Error::NotWellDefined(_) | Error::NoLift(_) => Outcome::Fail,
        _ => Outcome::InvalidScene,
    }
}

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub with_matrices: bool,
    pub timings: bool,
    pub seed: u64,
    pub p_max: Option<usize>,
    pub unordered: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckBlock {
    pub name: String,
    pub hypotheses: &'static str,
    pub result: Outcome,
    pub data: Value,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub details: Vec<CheckReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub seed: u64,
    pub scene: Value,
    pub checks: Vec<CheckBlock>,
    pub overall: Outcome,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        self.overall.exit_code()
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

fn data_block(name: &str, data: Value) -> CheckBlock {
    CheckBlock { name: name.into(), hypotheses: "MET", result: Outcome::Pass, data, details: Vec::new(), diagnostic: None, timing_ms: None }
}

fn from_reports(name: &str, reports: Vec<CheckReport>) -> CheckBlock {
    let result = Outcome::worst(reports.iter().map(|r| Outcome::from(r.verdict)));
    let diagnostic = reports.iter().filter_map(|r| r.witness.clone()).next();
    CheckBlock { name: name.into(), hypotheses: "MET", result, data: Value::Null, details: reports, diagnostic, timing_ms: None }
}

fn homology_block(name: &str, h: &HomologySummary, wedge_degree: i64, extra: Value) -> CheckBlock {
    let mut data = json!({
        "reduced": h.reduced,
        "homology": homology_json(h),
        "betti": h.betti(),
        "torsion_free": h.torsion_free(),
        "wedge_degree": wedge_degree,
        "wedge_verdict": wedge_verdict(h, wedge_degree),
    });
    if let (Value::Object(m), Value::Object(e)) = (&mut data, extra) {
        m.extend(e);
    }
    data_block(name, data)
}

fn closure_json(l: &Collection) -> Value {
    let members: Vec<Value> = l
        .members
        .iter()
        .enumerate()
        .map(|(i, m)| json!({"index": i, "dim": l.geo_dim(i), "equations": m.annihilator().iter().map(|f| fmt_vec(f)).collect::<Vec<_>>()}))
        .collect();
    json!({"members": members, "top": l.top})
}

/// Randomized spot checks of the tuple apartment map: the simplicial
/// relation on `(n + 2)`-tuples and alternation under reordering.
fn sampled_relations(l: &Collection, seed: u64) -> Result<Value> {
    let st = relative_st_complex(l)?;
    let n = l.geometry.n;
    let pts = l.points();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut relation_ok = true;
    let mut alternation_ok = true;
    let mut drawn = 0;
    if pts.len() >= n + 1 {
        let perms = signed_permutations(n + 1);
        for _ in 0..SAMPLES {
            let t: Vec<usize> = pts.choose_multiple(&mut rng, n + 1).copied().collect();
            let base = tuple_apartment_or_zero(l, &st, &t)?;
            let (perm, s) = perms.choose(&mut rng).expect("nonempty");
            let pt: Vec<usize> = perm.iter().map(|&i| t[i]).collect();
            let moved = tuple_apartment_or_zero(l, &st, &pt)?;
            alternation_ok &= base.iter().zip(&moved).all(|(a, b)| *b == s * a);
            if pts.len() >= n + 2 {
                let r: Vec<usize> = pts.choose_multiple(&mut rng, n + 2).copied().collect();
                relation_ok &= simplicial_relation(l, &st, &r)?.iter().all(|&x| x == 0);
            }
            drawn += 1;
        }
    }
    Ok(json!({"samples": drawn, "simplicial_relation": relation_ok, "alternation": alternation_ok}))
}

fn need_a(scene: &Scene) -> Result<crate::geometry::ConvexPolytope> {
    scene.polytope_a()?.ok_or_else(|| Error::InvalidScene("this check needs polytope_A".into()))
}

fn run_inner(scene: &Scene, l: &Collection, name: &str, opts: &RunOptions) -> Result<CheckBlock> {
    let n = l.geometry.n as i64;
    Ok(match name {
        "validate" => data_block(
            name,
            json!({
                "members": l.len(),
                "hyperplanes": scene.hyperplanes.len(),
                "points": scene.points.len(),
                "admissible": admissible(l),
                "generated_by_hyperplanes": generated_by_hyperplanes(l),
                "generated_by_points": generated_by_points(l),
            }),
        ),
        "closure" => data_block(name, closure_json(l)),
        "arrangement" => {
            let arr = build_arrangement(l)?;
            let mut by_dim = vec![0usize; l.geometry.n + 1];
            for c in &arr.cells {
                by_dim[c.dim as usize] += 1;
            }
            data_block(name, json!({"cells_by_dim": by_dim, "basis_regions": arr.regions.len(), "region_signs": arr.region_signs()}))
        }
        "homology-t" => {
            let t = order_complex(l, false)?;
            homology_block(name, &homology(&t.complex.augmented(), true), n - 1, json!({"complex_size": t.complex.size()}))
        }
        "homology-st" => {
            let st = relative_st_complex(l)?;
            let h = homology(&st.complex, true);
            // ST is the suspension of T, so T's reduced groups sit one degree lower
            let tits: Vec<(i64, usize)> = h.betti().into_iter().map(|(d, r)| (d - 1, r)).collect();
            homology_block(name, &h, n, json!({"complex_size": st.complex.size(), "tits_betti": tits}))
        }
        "homology-pt" => {
            check_spherical(l)?;
            let pt = pt_bicomplex(l)?;
            let h = homology(&pt.relative, true);
            let c = pt_collapse_crosscheck(l)?;
            let mut b = homology_block(name, &h, n, json!({"collapse_homology": homology_json(&c), "methods_agree": c == h}));
            if c != h {
                b.result = Outcome::Fail;
                b.diagnostic = Some("bicomplex and collapse homology differ".into());
            }
            b
        }
        "homology-local" => {
            let a = need_a(scene)?;
            let (la, c) = local_complex(l, &a)?;
            homology_block(name, &homology(&c.complex, true), n, json!({"members_meeting_A": la.len()}))
        }
        "groups-pt" => {
            let (_, g) = pt_group(l)?;
            data_block(name, json!({"pt": g.summary(), "generators": g.generators}))
        }
        "groups-ls" => {
            let (_, g) = ls_group(l)?;
            data_block(name, json!({"ls": g.summary()}))
        }
        "solomon-tits" => {
            let reports = solomon_tits_checks(l, opts.with_matrices)?;
            let mut b = from_reports(name, reports);
            if generated_by_points(l) {
                let s = sampled_relations(l, opts.seed)?;
                if s["simplicial_relation"] != json!(true) || s["alternation"] != json!(true) {
                    b.result = Outcome::Fail;
                    b.diagnostic = Some("sampled apartment relation failed".into());
                }
                b.data = json!({"sampled": s});
            }
            b
        }
        "pt-ls" => from_reports(name, vec![verify_pt_ls(l, opts.with_matrices)?]),
        "exact-seq" => {
            let u = scene.u.as_ref().ok_or_else(|| Error::InvalidScene("exact-seq needs options.u".into()))?;
            let a = scene.polytope_a()?;
            if l.geometry.kind == Kind::H && a.is_none() {
                return Err(Error::HypothesesNotMet("the hyperbolic sequence is stated inside a polytope A".into()));
            }
            from_reports(name, vec![exact_sequence_check(l, u, a.as_ref(), opts.with_matrices)?])
        }
        "duality" => from_reports(name, vec![duality_check(l, opts.with_matrices)?]),
        "suspension" => from_reports(name, vec![suspension_check(l)?]),
        "local" => from_reports(name, vec![local_check(l, &need_a(scene)?, opts.with_matrices)?]),
        "resolution" => {
            let p_max = opts.p_max.or(scene.options.p_max);
            let ordered = !opts.unordered.unwrap_or(scene.options.unordered);
            let r = resolution_homology(l, p_max, ordered)?;
            from_reports(name, vec![r.report])
        }
        other => return Err(Error::InvalidArgument(format!("unknown check {other:?}; known: {}", CHECKS.join(", ")))),
    })
}

fn failed(name: &str, e: &Error) -> CheckBlock {
    let result = classify(e);
    let hypotheses = match result {
        Outcome::HypothesesNotMet => "NOT_MET",
        Outcome::InvalidScene => "INVALID",
        _ => "MET",
    };
    CheckBlock { name: name.into(), hypotheses, result, data: Value::Null, details: Vec::new(), diagnostic: Some(e.to_string()), timing_ms: None }
}

pub fn run_check(scene: &Scene, l: &Collection, name: &str, opts: &RunOptions) -> CheckBlock {
    let start = Instant::now();
    let mut b = run_inner(scene, l, name, opts).unwrap_or_else(|e| failed(name, &e));
    if opts.timings {
        b.timing_ms = Some(start.elapsed().as_millis());
    }
    b
}

/// Run `checks` on a parsed scene.
pub fn run_scene(scene: &Scene, checks: &[String], opts: &RunOptions) -> Report {
    let blocks = match scene.collection() {
        Ok(l) => checks.iter().map(|c| run_check(scene, &l, c, opts)).collect(),
        Err(e) => checks.iter().map(|c| failed(c, &e)).collect::<Vec<_>>(),
    };
    let overall = Outcome::worst(blocks.iter().map(|b: &CheckBlock| b.result));
    Report { tool: TOOL, version: VERSION, seed: opts.seed, scene: scene.to_json(), checks: blocks, overall }
}

/// Report for input that did not parse.
pub fn invalid_report(name: &str, e: &Error, opts: &RunOptions) -> Report {
    Report {
        tool: TOOL,
        version: VERSION,
        seed: opts.seed,
        scene: Value::Null,
        checks: vec![failed(name, e)],
        overall: classify(e),
    }
}
