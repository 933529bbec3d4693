//! Command implementations. Each returns a [`Report`]: a JSON body with
//! sorted keys, a few human-readable summary lines, an exit status and, for
//! commands that produce a file, the artifact text.

use std::collections::BTreeMap;
use std::fs;
use std::io::Read;

use brick_core::constructions::{self, ConstructionError, ZZParams};
use brick_core::scalar::{format_scalar, parse_scalar};
use brick_core::topology::TableError;
use brick_core::voxel::VoxelError;
use brick_core::{
    apply_schedule, brick_graph, corners, degree_histogram, natural_resolution, piece_table_chi, standard_schedule,
    surface_stats, validate, voxel_chi, BrickComplex, ComplexError, ContactClass, PieceTable, RefinementError,
    RefinementSchedule, Scalar,
};
use serde_json::{json, Value};
use thiserror::Error;

use crate::brick_file::{emit_brick_file, parse_brick_file};
use crate::lexer::ParseError;
use crate::obj::export_obj;
use crate::piece_file::parse_piece_file;
use crate::schedule_file::parse_schedule_file;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    Semantic = 1,
    Input = 2,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}:{source}")]
    Parse { path: String, source: ParseError },
    #[error(transparent)]
    Refinement(#[from] RefinementError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(transparent)]
    Voxel(#[from] VoxelError),
    #[error("unknown build target `{0}` (expected zz-immersed, zz-embedded or a fixture name)")]
    UnknownBuild(String),
    #[error("unknown builtin table `{0}` (expected buttressed-octahedron or zz)")]
    UnknownTable(String),
    #[error("bad scalar `{0}` (expected an integer or n/d)")]
    BadScalar(String),
}

impl CliError {
    /// A layout the builder refuses is a semantic failure; everything else
    /// is bad input.
    pub fn exit_status(&self) -> ExitStatus {
        match self {
            CliError::Construction(ConstructionError::ImproperLayout { .. } | ConstructionError::LayoutCheck(_)) => {
                ExitStatus::Semantic
            }
            _ => ExitStatus::Input,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub command: &'static str,
    pub body: Value,
    pub summary: Vec<String>,
    pub exit: ExitStatus,
    pub artifact: Option<String>,
}

impl Report {
    fn new(command: &'static str, body: Value, summary: Vec<String>) -> Self {
        Self { command, body, summary, exit: ExitStatus::Success, artifact: None }
    }

    /// Pretty JSON with `command` and `exit_code` added to the body.
    pub fn to_json(&self) -> String {
        let mut doc = self.body.clone();
        if let Value::Object(map) = &mut doc {
            map.insert("command".into(), json!(self.command));
            map.insert("exit_code".into(), json!(self.exit.code()));
        }
        serde_json::to_string_pretty(&doc).expect("json values serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = self.summary.join("\n");
        out.push('\n');
        out
    }
}

fn display_path(path: &str) -> String {
    if path == "-" { "<stdin>".to_string() } else { path.to_string() }
}

pub fn read_input(path: &str) -> Result<String, CliError> {
    let io = |source| CliError::Io { path: display_path(path), source };
    if path == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text).map_err(io)?;
        Ok(text)
    } else {
        fs::read_to_string(path).map_err(io)
    }
}

pub fn load_complex(path: &str) -> Result<BrickComplex, CliError> {
    parse_brick_file(&read_input(path)?).map_err(|source| CliError::Parse { path: display_path(path), source })
}

pub fn load_schedule(path: &str) -> Result<RefinementSchedule, CliError> {
    parse_schedule_file(&read_input(path)?).map_err(|source| CliError::Parse { path: display_path(path), source })
}

pub fn load_table(path: &str) -> Result<PieceTable, CliError> {
    parse_piece_file(&read_input(path)?).map_err(|source| CliError::Parse { path: display_path(path), source })
}

pub fn scalar_arg(text: &str) -> Result<Scalar, CliError> {
    parse_scalar(text).ok_or_else(|| CliError::BadScalar(text.to_string()))
}

fn contact_json(a: &str, b: &str, class: &ContactClass) -> Value {
    let mut v = json!({ "a": a, "b": b, "kind": class.kind() });
    let map = v.as_object_mut().expect("object");
    match class {
        ContactClass::Point(p) => {
            map.insert("point".into(), json!(p.to_string()));
        }
        ContactClass::WholeEdge { segment, edge_a, edge_b } => {
            map.insert("segment".into(), json!([segment[0].to_string(), segment[1].to_string()]));
            map.insert("edge_a".into(), json!(edge_a));
            map.insert("edge_b".into(), json!(edge_b));
        }
        ContactClass::WholeFace { face_a, face_b } => {
            map.insert("face_a".into(), json!(face_a.to_string()));
            map.insert("face_b".into(), json!(face_b.to_string()));
        }
        ContactClass::Disjoint | ContactClass::Improper(_) => {}
    }
    v
}

pub fn cmd_validate(c: &BrickComplex) -> Report {
    let r = validate(c);
    let kinds = ["point", "whole-edge", "whole-face", "volume-overlap", "partial-face", "partial-edge"];
    let counts: BTreeMap<&str, usize> = kinds.iter().map(|k| (*k, r.count_kind(k))).collect();
    let contacts: Vec<Value> = r.contacts.iter().map(|x| contact_json(&x.a, &x.b, &x.class)).collect();
    let improper: Vec<Value> = r.improper_pairs.iter().map(|x| contact_json(&x.a, &x.b, &x.class)).collect();
    let body = json!({
        "name": c.name,
        "bricks": c.len(),
        "properly_joined": r.properly_joined,
        "contact_counts": counts,
        "contacts": contacts,
        "improper_pairs": improper,
    });
    let mut summary = vec![format!(
        "{}: {} bricks, {} contacts ({} whole-face, {} whole-edge, {} point)",
        c.name,
        c.len(),
        r.contacts.len(),
        counts["whole-face"],
        counts["whole-edge"],
        counts["point"]
    )];
    if r.properly_joined {
        summary.push("properly joined".into());
    } else {
        summary.push(format!("NOT properly joined: {} improper pairs", r.improper_pairs.len()));
        summary.extend(r.improper_pairs.iter().map(|x| format!("  {} / {}: {}", x.a, x.b, x.class.kind())));
    }
    let mut report = Report::new("validate", body, summary);
    if !r.properly_joined {
        report.exit = ExitStatus::Semantic;
    }
    report
}

pub fn cmd_graph(c: &BrickComplex, assert_cornerless: bool) -> Result<Report, CliError> {
    let r = validate(c);
    let g = brick_graph(c, &r)?;
    let corner_list = corners(&g);
    let hist: BTreeMap<String, usize> = degree_histogram(&g).into_iter().map(|(d, n)| (d.to_string(), n)).collect();
    let cornerless = corner_list.is_empty();
    let body = json!({
        "name": c.name,
        "bricks": c.len(),
        "arcs": g.arcs.len(),
        "properly_joined": r.properly_joined,
        "degrees": g.degree,
        "corners": corner_list,
        "cornerless": cornerless,
        "min_degree": g.min_degree(),
        "degree_histogram": hist,
        "components": g.component_count(),
        "connected": g.is_connected(),
    });
    let mut summary = vec![format!(
        "{}: {} bricks, {} arcs, min degree {}, {} component(s)",
        c.name,
        c.len(),
        g.arcs.len(),
        g.min_degree().map_or("-".to_string(), |d| d.to_string()),
        g.component_count()
    )];
    summary.push(if cornerless {
        "cornerless: true".to_string()
    } else {
        format!("cornerless: false ({} corners: {})", corner_list.len(), corner_list.join(", "))
    });
    if !r.properly_joined {
        summary.push("warning: complex is not properly joined; arcs reflect whole-face contacts only".into());
    }
    let mut report = Report::new("graph", body, summary);
    if assert_cornerless && !cornerless {
        report.exit = ExitStatus::Semantic;
    }
    Ok(report)
}

/// `oracle`: `None` skips the voxel cross-check, `Some(None)` uses the
/// natural resolution, `Some(Some(r))` uses `r`.
pub fn cmd_genus(c: &BrickComplex, oracle: Option<Option<Scalar>>) -> Result<Report, CliError> {
    let r = validate(c);
    let s = surface_stats(c, &r)?;
    let mut body = json!({
        "name": c.name,
        "properly_joined": r.properly_joined,
        "V": s.v,
        "E": s.e,
        "F": s.f,
        "chi": s.chi,
        "surface_components": s.surface_components,
        "edge_manifold": s.edge_manifold,
        "vertex_manifold": s.vertex_manifold,
        "genus": s.genus,
        "genus_unavailable": s.genus_error.as_ref().map(|e| e.to_string()),
    });
    let mut summary = vec![format!("{}: {s}", c.name)];
    if !r.properly_joined {
        summary.push("warning: complex is not properly joined".into());
    }
    let mut exit = ExitStatus::Success;
    if let Some(resolution) = oracle {
        let all_rect = c.bricks().iter().all(|b| b.is_rectilinear());
        let entry = if !all_rect {
            summary.push("oracle: skipped (non-rectilinear bricks)".into());
            json!({ "status": "skipped", "reason": "non-rectilinear bricks" })
        } else {
            let res = match resolution {
                Some(res) => res,
                None => natural_resolution(c)?,
            };
            let chi = voxel_chi(c, &res)?;
            let agree = chi == s.chi;
            if !agree {
                exit = ExitStatus::Semantic;
            }
            summary.push(format!(
                "oracle: voxel chi {chi} at resolution {} ({})",
                format_scalar(&res),
                if agree { "agrees" } else { "MISMATCH" }
            ));
            json!({ "status": if agree { "agrees" } else { "mismatch" }, "chi": chi, "resolution": format_scalar(&res) })
        };
        body.as_object_mut().expect("object").insert("oracle".into(), entry);
    }
    let mut report = Report::new("genus", body, summary);
    report.exit = exit;
    Ok(report)
}

pub fn builtin_table(name: &str) -> Result<PieceTable, CliError> {
    match name {
        "buttressed-octahedron" => Ok(constructions::table_buttressed_octahedron()),
        "zz" => Ok(constructions::table_zz()),
        other => Err(CliError::UnknownTable(other.to_string())),
    }
}

pub fn cmd_table_chi(t: &PieceTable) -> Result<Report, CliError> {
    let totals = piece_table_chi(t)?;
    let rows: Vec<Value> = t
        .rows
        .iter()
        .map(|r| json!({ "label": r.label, "multiplicity": r.multiplicity, "v": r.v, "e": r.e, "f": r.f }))
        .collect();
    let genus = totals.genus.as_ref().ok().copied();
    let body = json!({
        "rows": rows,
        "V": totals.v,
        "E": totals.e,
        "F": totals.f,
        "chi": totals.chi,
        "genus": genus,
        "genus_unavailable": totals.genus.as_ref().err().map(|e| e.to_string()),
    });
    let genus_text = match &totals.genus {
        Ok(g) => format!("genus={g}"),
        Err(e) => format!("genus unavailable: {e}"),
    };
    let summary = vec![format!("V={} E={} F={} chi={} {genus_text}", totals.v, totals.e, totals.f, totals.chi)];
    Ok(Report::new("table-chi", body, summary))
}

pub enum ScheduleSource {
    StandardZZ,
    Schedule(RefinementSchedule),
}

pub fn cmd_refine(c: &BrickComplex, source: &ScheduleSource) -> Result<Report, CliError> {
    let schedule = match source {
        ScheduleSource::StandardZZ => standard_schedule(c),
        ScheduleSource::Schedule(s) => s.clone(),
    };
    let refined = apply_schedule(c, &schedule)?;
    let body = json!({ "name": refined.name, "bricks_before": c.len(), "bricks_after": refined.len() });
    let summary = vec![format!("{}: refined {} bricks into {}", refined.name, c.len(), refined.len())];
    let mut report = Report::new("refine", body, summary);
    report.artifact = Some(emit_brick_file(&refined));
    Ok(report)
}

pub fn build_complex(name: &str, cube_side: Option<Scalar>) -> Result<BrickComplex, CliError> {
    let params = cube_side.map_or_else(ZZParams::default, ZZParams::with_cube_side);
    match name {
        "zz-immersed" => Ok(constructions::zz_immersed(&params)?),
        "zz-embedded" => Ok(constructions::zz_embedded(&params)?),
        other => match constructions::fixture(other) {
            Ok(c) => Ok(c),
            Err(ConstructionError::UnknownFixture(_)) => Err(CliError::UnknownBuild(other.to_string())),
            Err(e) => Err(e.into()),
        },
    }
}

pub fn cmd_build(name: &str, cube_side: Option<Scalar>) -> Result<Report, CliError> {
    let c = build_complex(name, cube_side)?;
    let body = json!({ "name": c.name, "bricks": c.len() });
    let summary = vec![format!("built {}: {} bricks", c.name, c.len())];
    let mut report = Report::new("build", body, summary);
    report.artifact = Some(emit_brick_file(&c));
    Ok(report)
}

pub fn cmd_export_obj(c: &BrickComplex, exposed_only: bool) -> Result<Report, CliError> {
    let mesh = export_obj(c, exposed_only)?;
    let body = json!({
        "name": c.name,
        "exposed_only": exposed_only,
        "vertices": mesh.vertex_count,
        "faces": mesh.face_count,
    });
    let summary = vec![format!(
        "{}: {} vertices, {} quads{}",
        c.name,
        mesh.vertex_count,
        mesh.face_count,
        if exposed_only { " (exposed only)" } else { "" }
    )];
    let mut report = Report::new("export-obj", body, summary);
    report.artifact = Some(mesh.text);
    Ok(report)
}
