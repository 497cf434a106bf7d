//! Scene files: a geometry, hyperplanes or points with exact string
//! coordinates, an optional ambient polytope A and run options.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Deserialize;
use sha2::{Digest, Sha256};

use crate::collections::{closure_by_hyperplanes, closure_by_points, Collection};
use crate::error::{Error, Result};
use crate::exact::rational::{fmt_vec, is_zero_vec, normalize_leading};
use crate::exact::{parse_rational, LinearSubspace, Rational};
use crate::geometry::{ConvexPolytope, Geometry, HalfSpace, Kind, Sense};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScene {
    geometry: String,
    n: usize,
    #[serde(default)]
    hyperplanes: Vec<Vec<String>>,
    #[serde(default)]
    points: Vec<Vec<String>>,
    #[serde(default, rename = "polytope_A")]
    polytope_a: Option<RawPolytope>,
    #[serde(default)]
    options: Options,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPolytope {
    halfspaces: Vec<RawHalfSpace>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawHalfSpace {
    Plain(Vec<String>),
    Tagged {
        functional: Vec<String>,
        #[serde(default)]
        sense: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Hyperplanes,
    Points,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default)]
    pub name: Option<String>,
    #[serde(default)]
    pub description: Option<String>,
    /// Generate L from the hyperplanes or from the points. Defaults to
    /// hyperplanes when any are given.
    #[serde(default)]
    pub mode: Option<Mode>,
    /// Extra hyperplane U for the exact sequence check.
    #[serde(default)]
    pub u: Option<Vec<String>>,
    #[serde(default)]
    pub p_max: Option<usize>,
    #[serde(default)]
    pub unordered: bool,
    /// Declared outcome per check, e.g. `{"solomon-tits": "PASS"}`.
    #[serde(default)]
    pub expect: BTreeMap<String, String>,
}

#[derive(Clone, Debug)]
pub struct Scene {
    pub geometry: Geometry,
    /// Functionals on Q^(n+1), as written.
    pub hyperplanes: Vec<Vec<Rational>>,
    /// Homogeneous coordinates of the points.
    pub points: Vec<Vec<Rational>>,
    pub polytope_a: Option<Vec<HalfSpace>>,
    pub u: Option<Vec<Rational>>,
    pub mode: Mode,
    pub options: Options,
    /// SHA-256 of the scene text.
    pub digest: String,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidScene(msg.into())
}

fn parse_vec(v: &[String], what: &str) -> Result<Vec<Rational>> {
    v.iter()
        .map(|s| parse_rational(s).map_err(|_| invalid(format!("{what}: {s:?} is not an exact rational literal"))))
        .collect()
}

fn parse_functional(g: &Geometry, v: &[String], what: &str) -> Result<Vec<Rational>> {
    let f = parse_vec(v, what)?;
    if f.len() != g.ambient() {
        return Err(invalid(format!("{what} has {} coefficients, expected {}", f.len(), g.ambient())));
    }
    if is_zero_vec(&f) {
        return Err(invalid(format!("{what} is the zero functional")));
    }
    if g.is_affine() && is_zero_vec(&f[1..]) {
        return Err(invalid(format!("{what} is the hyperplane at infinity")));
    }
    Ok(f)
}

impl Scene {
    pub fn parse(text: &str) -> Result<Scene> {
        let raw: RawScene = serde_json::from_str(text).map_err(|e| invalid(format!("malformed scene JSON: {e}")))?;
        let kind = match raw.geometry.as_str() {
            "E" => Kind::E,
            "H" => Kind::H,
            "S" => Kind::S,
            other => return Err(invalid(format!("unknown geometry {other:?}; expected E, H or S"))),
        };
        if kind != Kind::S && raw.n == 0 {
            return Err(invalid("E and H scenes need n >= 1"));
        }
        let g = Geometry::new(kind, raw.n);
        let d = g.ambient();

        let mut hyperplanes = Vec::new();
        let mut seen: Vec<Vec<Rational>> = Vec::new();
        for (i, h) in raw.hyperplanes.iter().enumerate() {
            let f = parse_functional(&g, h, &format!("hyperplane {i}"))?;
            let c = normalize_leading(&f);
            if let Some(j) = seen.iter().position(|x| *x == c) {
                return Err(invalid(format!("duplicate hyperplane: hyperplanes {j} and {i} define the same subspace")));
            }
            if kind == Kind::H && !g.geo_nonempty(&LinearSubspace::kernel_of(&[f.clone()], d)) {
                return Err(invalid(format!("hyperplane {i} misses the open unit ball")));
            }
            seen.push(c);
            hyperplanes.push(f);
        }

        let mut points = Vec::new();
        let mut seen: Vec<Vec<Rational>> = Vec::new();
        for (i, p) in raw.points.iter().enumerate() {
            let x = parse_vec(p, &format!("point {i}"))?;
            let v = g.lift_point(&x).map_err(|e| match e {
                Error::DimensionMismatch(m) => invalid(format!("point {i}: {m}")),
                _ if kind == Kind::H => invalid(format!("point {i} is not strictly inside the unit ball")),
                _ => invalid(format!("point {i} is the zero vector")),
            })?;
            // on S a point is an antipodal pair
            let c = normalize_leading(&v);
            if let Some(j) = seen.iter().position(|y| *y == c) {
                return Err(invalid(format!("duplicate point: points {j} and {i} coincide")));
            }
            seen.push(c);
            points.push(v);
        }

        let mode = match raw.options.mode {
            Some(m) => m,
            None if !hyperplanes.is_empty() => Mode::Hyperplanes,
            None => Mode::Points,
        };
        match mode {
            Mode::Hyperplanes if hyperplanes.is_empty() && !(kind == Kind::S && raw.n == 0) => {
                return Err(invalid("mode is hyperplanes but no hyperplanes are given"))
            }
            Mode::Points if points.is_empty() => return Err(invalid("mode is points but no points are given")),
            _ => {}
        }

        let polytope_a = match &raw.polytope_a {
            None => None,
            Some(p) => {
                let mut hs = Vec::new();
                for (i, h) in p.halfspaces.iter().enumerate() {
                    let what = format!("polytope_A half-space {i}");
                    let (f, sense) = match h {
                        RawHalfSpace::Plain(v) => (v, None),
                        RawHalfSpace::Tagged { functional, sense } => (functional, sense.as_deref()),
                    };
                    let sense = match sense {
                        None | Some(">=") => Sense::Geq,
                        Some("<=") => Sense::Leq,
                        Some(s) => return Err(invalid(format!("{what}: unknown sense {s:?}"))),
                    };
                    hs.push(HalfSpace { functional: parse_functional(&g, f, &what)?, sense });
                }
                ConvexPolytope::from_halfspaces(g, &hs).map_err(|e| invalid(format!("polytope_A: {e}")))?;
                Some(hs)
            }
        };

        let u = match &raw.options.u {
            None => None,
            Some(v) => {
                let f = parse_functional(&g, v, "option u")?;
                if kind == Kind::H && !g.geo_nonempty(&LinearSubspace::kernel_of(&[f.clone()], d)) {
                    return Err(invalid("option u misses the open unit ball"));
                }
                Some(f)
            }
        };

        for (k, v) in &raw.options.expect {
            if !matches!(v.as_str(), "PASS" | "FAIL" | "INVALID_SCENE" | "HYPOTHESES_NOT_MET") {
                return Err(invalid(format!("expect.{k}: unknown outcome {v:?}")));
            }
        }

        let digest = hex::encode(Sha256::digest(text.as_bytes()));
        Ok(Scene { geometry: g, hyperplanes, points, polytope_a, u, mode, options: raw.options, digest })
    }

    pub fn name(&self) -> String {
        self.options.name.clone().unwrap_or_else(|| format!("{}{}", self.geometry.kind, self.geometry.n))
    }

    /// The collection L generated according to `mode`.
    pub fn collection(&self) -> Result<Collection> {
        match self.mode {
            Mode::Hyperplanes => closure_by_hyperplanes(self.geometry, &self.hyperplanes),
            Mode::Points => closure_by_points(self.geometry, &self.points),
        }
    }

    pub fn polytope_a(&self) -> Result<Option<ConvexPolytope>> {
        self.polytope_a.as_ref().map(|hs| ConvexPolytope::from_halfspaces(self.geometry, hs)).transpose()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let chart = |v: &Vec<Rational>| -> Vec<String> {
            if self.geometry.is_affine() {
                fmt_vec(&v[1..])
            } else {
                fmt_vec(v)
            }
        };
        serde_json::json!({
            "name": self.name(),
            "geometry": self.geometry.kind.to_string(),
            "n": self.geometry.n,
            "mode": match self.mode { Mode::Hyperplanes => "hyperplanes", Mode::Points => "points" },
            "hyperplanes": self.hyperplanes.iter().map(|f| fmt_vec(f)).collect::<Vec<_>>(),
            "points": self.points.iter().map(chart).collect::<Vec<_>>(),
            "digest": self.digest,
        })
    }
}

/// Chart coordinates of a homogeneous affine point, used by scene validators.
pub fn chart_of(v: &[Rational]) -> Vec<Rational> {
    if v[0].is_zero() {
        return v.to_vec();
    }
    v[1..].iter().map(|x| x / &v[0]).collect()
}
