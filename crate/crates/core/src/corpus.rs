//! The bundled scene corpus. Every scene declares the outcome it expects
//! from each check it lists.

use serde::Serialize;

use crate::error::Result;
use crate::report::{run_scene, Outcome, Report, RunOptions};
use crate::scene::Scene;

pub const SCENES: &[(&str, &str)] = &[
    ("e1_five_points", include_str!("../scenes/e1_five_points.json")),
    ("e1_points_three", include_str!("../scenes/e1_points_three.json")),
    ("e1_six_points", include_str!("../scenes/e1_six_points.json")),
    ("e1_three_points", include_str!("../scenes/e1_three_points.json")),
    ("e1_two_points", include_str!("../scenes/e1_two_points.json")),
    ("e2_five_square_diagonal", include_str!("../scenes/e2_five_square_diagonal.json")),
    ("e2_four_generic", include_str!("../scenes/e2_four_generic.json")),
    ("e2_four_generic_u", include_str!("../scenes/e2_four_generic_u.json")),
    ("e2_four_with_triple_point", include_str!("../scenes/e2_four_with_triple_point.json")),
    ("e2_origin_pair", include_str!("../scenes/e2_origin_pair.json")),
    ("e2_points_five", include_str!("../scenes/e2_points_five.json")),
    ("e2_points_four", include_str!("../scenes/e2_points_four.json")),
    ("e2_quadrilateral_A", include_str!("../scenes/e2_quadrilateral_A.json")),
    ("e2_six_grid", include_str!("../scenes/e2_six_grid.json")),
    ("e2_six_square_diagonals", include_str!("../scenes/e2_six_square_diagonals.json")),
    ("e2_three_lines_concurrent", include_str!("../scenes/e2_three_lines_concurrent.json")),
    ("e2_three_parallel_one_transversal", include_str!("../scenes/e2_three_parallel_one_transversal.json")),
    ("e2_triangle", include_str!("../scenes/e2_triangle.json")),
    ("e2_triangle_A", include_str!("../scenes/e2_triangle_A.json")),
    ("e2_triangle_far_line", include_str!("../scenes/e2_triangle_far_line.json")),
    ("e2_triangle_transversal", include_str!("../scenes/e2_triangle_transversal.json")),
    ("e3_origin_triple", include_str!("../scenes/e3_origin_triple.json")),
    ("h2_points_four", include_str!("../scenes/h2_points_four.json")),
    ("h2_quadrilateral_A", include_str!("../scenes/h2_quadrilateral_A.json")),
    ("h2_triangle", include_str!("../scenes/h2_triangle.json")),
    ("h2_triangle_A", include_str!("../scenes/h2_triangle_A.json")),
    ("h2_triangle_u_in_A", include_str!("../scenes/h2_triangle_u_in_A.json")),
    ("h3_two_cubes", include_str!("../scenes/h3_two_cubes.json")),
    ("s0_base", include_str!("../scenes/s0_base.json")),
    ("s1_coordinate", include_str!("../scenes/s1_coordinate.json")),
    ("s1_coordinate_u", include_str!("../scenes/s1_coordinate_u.json")),
    ("s1_one_point_pair", include_str!("../scenes/s1_one_point_pair.json")),
    ("s2_coordinate", include_str!("../scenes/s2_coordinate.json")),
    ("s2_coordinate_u", include_str!("../scenes/s2_coordinate_u.json")),
    ("s2_generic_planes", include_str!("../scenes/s2_generic_planes.json")),
    ("s2_one_plane", include_str!("../scenes/s2_one_plane.json")),
    ("s2_points_four", include_str!("../scenes/s2_points_four.json")),
    ("s2_two_planes", include_str!("../scenes/s2_two_planes.json")),
    ("s3_two_planes", include_str!("../scenes/s3_two_planes.json")),
];

pub fn scene(name: &str) -> Option<Result<Scene>> {
    SCENES.iter().find(|(n, _)| *n == name).map(|(_, t)| Scene::parse(t))
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusEntry {
    pub scene: String,
    pub check: String,
    pub expected: String,
    pub actual: Outcome,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusRun {
    pub entries: Vec<CorpusEntry>,
    #[serde(skip)]
    pub reports: Vec<Report>,
    pub overall: Outcome,
}

/// Run every scene's declared checks and compare with the declared outcomes.
pub fn run_corpus(opts: &RunOptions) -> Result<CorpusRun> {
    let mut entries = Vec::new();
    let mut reports = Vec::new();
    for (name, text) in SCENES {
        let s = Scene::parse(text)?;
        let checks: Vec<String> = s.options.expect.keys().cloned().collect();
        let r = run_scene(&s, &checks, opts);
        for b in &r.checks {
            let expected = s.options.expect[&b.name].clone();
            entries.push(CorpusEntry { scene: name.to_string(), check: b.name.clone(), ok: b.result.as_str() == expected, expected, actual: b.result });
        }
        reports.push(r);
    }
    let overall = if entries.iter().all(|e| e.ok) { Outcome::Pass } else { Outcome::Fail };
    Ok(CorpusRun { entries, reports, overall })
}
