//! Exposed boundary surface, Euler characteristic and genus.
//!
//! The boundary is assembled abstractly: exposed brick faces are glued only
//! where the validation report records a proper contact. Bricks that merely
//! pass through each other (improper pairs) are never glued, so an immersed
//! object gets the same counts as the embedded one it stands in for.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use thiserror::Error;

use crate::complex::{BrickComplex, ComplexError, ValidationReport};
use crate::contact::ContactClass;
use crate::geometry::{Brick, FaceIndex, EDGES};
use crate::union_find::UnionFind;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenusError {
    #[error("surface is not a manifold")]
    NonManifold,
    #[error("surface has {0} components; genus needs exactly one")]
    Disconnected(usize),
    #[error("Euler characteristic {0} is odd")]
    OddChi(i64),
    #[error("Euler characteristic {0} exceeds 2")]
    ChiTooLarge(i64),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableError {
    #[error("piece table is empty")]
    Empty,
    #[error("row `{0}` has multiplicity 0")]
    ZeroMultiplicity(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceStats {
    pub v: usize,
    pub e: usize,
    pub f: usize,
    pub chi: i64,
    pub surface_components: usize,
    pub edge_manifold: bool,
    pub vertex_manifold: bool,
    pub genus: Option<u64>,
    /// Why `genus` is absent.
    pub genus_error: Option<GenusError>,
}

impl fmt::Display for SurfaceStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "V={} E={} F={} chi={}", self.v, self.e, self.f, self.chi)?;
        match (&self.genus, &self.genus_error) {
            (Some(g), _) => write!(f, " genus={g}"),
            (None, Some(e)) => write!(f, " genus unavailable: {e}"),
            (None, None) => Ok(()),
        }
    }
}

/// `g = (2 - chi) / 2` for a connected closed manifold surface.
pub fn genus_from_chi(chi: i64, components: usize, manifold: bool) -> Result<u64, GenusError> {
    if !manifold {
        return Err(GenusError::NonManifold);
    }
    if components != 1 {
        return Err(GenusError::Disconnected(components));
    }
    if chi % 2 != 0 {
        return Err(GenusError::OddChi(chi));
    }
    if chi > 2 {
        return Err(GenusError::ChiTooLarge(chi));
    }
    Ok(((2 - chi) / 2) as u64)
}

/// Faces not covered by any whole-face contact, in complex order.
pub fn exposed_faces(c: &BrickComplex, r: &ValidationReport) -> Result<Vec<(String, FaceIndex)>, ComplexError> {
    let covered = covered_faces(c, r)?;
    Ok(c.bricks()
        .iter()
        .enumerate()
        .flat_map(|(i, b)| {
            let covered = &covered;
            FaceIndex::ALL
                .into_iter()
                .filter(move |f| !covered[i][f.ordinal()])
                .map(move |f| (b.id().to_string(), f))
        })
        .collect())
}

fn covered_faces(c: &BrickComplex, r: &ValidationReport) -> Result<Vec<[bool; 6]>, ComplexError> {
    r.check_matches(c)?;
    let index = c.index_of();
    let mut covered = vec![[false; 6]; c.len()];
    for contact in r.whole_face_contacts() {
        if let ContactClass::WholeFace { face_a, face_b } = contact.class {
            covered[index[contact.a.as_str()]][face_a.ordinal()] = true;
            covered[index[contact.b.as_str()]][face_b.ordinal()] = true;
        }
    }
    Ok(covered)
}

fn vertex_slot(brick: usize, v: usize) -> usize {
    8 * brick + v
}

fn edge_slot(brick: usize, e: usize) -> usize {
    12 * brick + e
}

/// Identification of vertex and edge slots across bricks.
struct Gluing {
    vertices: UnionFind,
    edges: UnionFind,
}

impl Gluing {
    fn glue_vertices(&mut self, a: usize, ba: &Brick, va: &[usize], b: usize, bb: &Brick, vb: &[usize]) {
        for &i in va {
            let p = ba.vertex(i);
            if let Some(&j) = vb.iter().find(|&&j| bb.vertex(j) == p) {
                self.vertices.union(vertex_slot(a, i), vertex_slot(b, j));
            }
        }
    }

    fn glue_edges(&mut self, a: usize, ba: &Brick, ea: &[usize], b: usize, bb: &Brick, eb: &[usize]) {
        let ends = |brick: &Brick, e: usize| {
            let (i, j) = EDGES[e];
            let (p, q) = (brick.vertex(i), brick.vertex(j));
            if p <= q {
                (p, q)
            } else {
                (q, p)
            }
        };
        for &i in ea {
            let key = ends(ba, i);
            if let Some(&j) = eb.iter().find(|&&j| ends(bb, j) == key) {
                self.edges.union(edge_slot(a, i), edge_slot(b, j));
            }
        }
    }
}

/// V, E, F, chi, manifold flags and genus of the exposed boundary.
pub fn surface_stats(c: &BrickComplex, r: &ValidationReport) -> Result<SurfaceStats, ComplexError> {
    let covered = covered_faces(c, r)?;
    let bricks = c.bricks();
    let n = bricks.len();
    let index = c.index_of();
    let mut glue = Gluing { vertices: UnionFind::new(8 * n), edges: UnionFind::new(12 * n) };

    for contact in &r.contacts {
        let (a, b) = (index[contact.a.as_str()], index[contact.b.as_str()]);
        let (ba, bb) = (&bricks[a], &bricks[b]);
        match &contact.class {
            ContactClass::WholeFace { face_a, face_b } => {
                glue.glue_vertices(a, ba, &face_a.vertex_indices(), b, bb, &face_b.vertex_indices());
                glue.glue_edges(a, ba, &face_a.edge_indices(), b, bb, &face_b.edge_indices());
            }
            ContactClass::WholeEdge { edge_a, edge_b, .. } => {
                let (ea, eb) = (EDGES[*edge_a], EDGES[*edge_b]);
                glue.glue_vertices(a, ba, &[ea.0, ea.1], b, bb, &[eb.0, eb.1]);
                glue.edges.union(edge_slot(a, *edge_a), edge_slot(b, *edge_b));
            }
            ContactClass::Point(p) => {
                let va = ba.vertices().iter().position(|v| v == p);
                let vb = bb.vertices().iter().position(|v| v == p);
                if let (Some(i), Some(j)) = (va, vb) {
                    glue.vertices.union(vertex_slot(a, i), vertex_slot(b, j));
                }
            }
            ContactClass::Improper(_) | ContactClass::Disjoint => {}
        }
    }

    // Exposed faces, numbered densely.
    let faces: Vec<(usize, FaceIndex)> = (0..n)
        .flat_map(|i| FaceIndex::ALL.into_iter().map(move |f| (i, f)))
        .filter(|(i, f)| !covered[*i][f.ordinal()])
        .collect();

    // Exposed face incidences per edge class and corner incidences per vertex class.
    let mut edge_faces: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut vertex_corners: BTreeMap<usize, Vec<(usize, [usize; 2])>> = BTreeMap::new();
    for (fi, &(brick, face)) in faces.iter().enumerate() {
        let edge_classes = face.edge_indices().map(|e| glue.edges.find(edge_slot(brick, e)));
        for &ec in &edge_classes {
            edge_faces.entry(ec).or_default().push(fi);
        }
        // Corner k sits between face edges k-1 and k.
        for (k, &v) in face.vertex_indices().iter().enumerate() {
            let vc = glue.vertices.find(vertex_slot(brick, v));
            vertex_corners.entry(vc).or_default().push((fi, [edge_classes[(k + 3) % 4], edge_classes[k]]));
        }
    }

    let v = vertex_corners.len();
    let e = edge_faces.len();
    let f = faces.len();
    let chi = v as i64 - e as i64 + f as i64;

    let edge_manifold = edge_faces.values().all(|fs| fs.len() == 2);

    // The corners around a vertex must chain into one cycle through shared edges.
    let vertex_manifold = vertex_corners.values().all(|corners| {
        let mut uses: HashMap<usize, Vec<usize>> = HashMap::new();
        for (ci, (_, edges)) in corners.iter().enumerate() {
            for &ec in edges {
                uses.entry(ec).or_default().push(ci);
            }
        }
        if uses.values().any(|cs| cs.len() != 2) {
            return false;
        }
        let mut uf = UnionFind::new(corners.len());
        for cs in uses.values() {
            uf.union(cs[0], cs[1]);
        }
        (0..corners.len()).all(|ci| uf.find(ci) == uf.find(0))
    });

    let mut face_uf = UnionFind::new(f);
    for fs in edge_faces.values() {
        for w in fs.windows(2) {
            face_uf.union(w[0], w[1]);
        }
    }
    let surface_components = (0..f).filter(|&i| face_uf.find(i) == i).count();

    let (genus, genus_error) = match genus_from_chi(chi, surface_components, edge_manifold && vertex_manifold) {
        Ok(g) => (Some(g), None),
        Err(e) => (None, Some(e)),
    };

    Ok(SurfaceStats { v, e, f, chi, surface_components, edge_manifold, vertex_manifold, genus, genus_error })
}

/// One row of a per-piece count table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PieceRow {
    pub label: String,
    pub multiplicity: u64,
    pub v: u64,
    pub e: u64,
    pub f: u64,
}

impl PieceRow {
    pub fn new(label: impl Into<String>, multiplicity: u64, v: u64, e: u64, f: u64) -> Self {
        Self { label: label.into(), multiplicity, v, e, f }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PieceTable {
    pub rows: Vec<PieceRow>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PieceTotals {
    pub v: u64,
    pub e: u64,
    pub f: u64,
    pub chi: i64,
    /// Assumes the pieces assemble into a connected closed manifold.
    pub genus: Result<u64, GenusError>,
}

/// Sums `multiplicity × per-piece` counts and derives chi and genus.
pub fn piece_table_chi(t: &PieceTable) -> Result<PieceTotals, TableError> {
    if t.rows.is_empty() {
        return Err(TableError::Empty);
    }
    if let Some(row) = t.rows.iter().find(|r| r.multiplicity == 0) {
        return Err(TableError::ZeroMultiplicity(row.label.clone()));
    }
    let sum = |pick: fn(&PieceRow) -> u64| t.rows.iter().map(|r| r.multiplicity * pick(r)).sum::<u64>();
    let (v, e, f) = (sum(|r| r.v), sum(|r| r.e), sum(|r| r.f));
    let chi = v as i64 - e as i64 + f as i64;
    Ok(PieceTotals { v, e, f, chi, genus: genus_from_chi(chi, 1, true) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::validate;
    use crate::geometry::Vec3;

    fn unit(id: &str, x: i64, y: i64, z: i64) -> Brick {
        Brick::from_box(Vec3::from_ints(x, y, z), Vec3::from_ints(x + 1, y + 1, z + 1), id).unwrap()
    }

    fn stats(bricks: Vec<Brick>) -> SurfaceStats {
        let c = BrickComplex::new("t", bricks).unwrap();
        surface_stats(&c, &validate(&c)).unwrap()
    }

    #[test]
    fn genus_formula() {
        assert_eq!(genus_from_chi(2, 1, true), Ok(0));
        assert_eq!(genus_from_chi(-4, 1, true), Ok(3));
        assert_eq!(genus_from_chi(-24, 1, true), Ok(13));
        assert_eq!(genus_from_chi(-3, 1, true), Err(GenusError::OddChi(-3)));
        assert_eq!(genus_from_chi(4, 2, true), Err(GenusError::Disconnected(2)));
        assert_eq!(genus_from_chi(2, 1, false), Err(GenusError::NonManifold));
    }

    #[test]
    fn single_cube() {
        let s = stats(vec![unit("a", 0, 0, 0)]);
        assert_eq!((s.v, s.e, s.f, s.chi), (8, 12, 6, 2));
        assert_eq!(s.genus, Some(0));
        assert!(s.edge_manifold && s.vertex_manifold);
    }

    #[test]
    fn exposed_face_counts() {
        let c = BrickComplex::new("p", vec![unit("a", 0, 0, 0), unit("b", 1, 0, 0)]).unwrap();
        assert_eq!(exposed_faces(&c, &validate(&c)).unwrap().len(), 10);
        let s = surface_stats(&c, &validate(&c)).unwrap();
        assert_eq!((s.v, s.e, s.f, s.chi, s.genus), (12, 20, 10, 2, Some(0)));
    }

    #[test]
    fn edge_touching_cubes_are_not_manifold() {
        let s = stats(vec![unit("a", 0, 0, 0), unit("b", 1, 1, 0)]);
        assert!(!s.edge_manifold);
        assert_eq!(s.genus, None);
        // 8 + 8 - 2 vertices, 12 + 12 - 1 edges, 12 faces
        assert_eq!(s.chi, 14 - 23 + 12);
    }

    #[test]
    fn point_touching_cubes_are_not_vertex_manifold() {
        let s = stats(vec![unit("a", 0, 0, 0), unit("b", 1, 1, 1)]);
        assert!(s.edge_manifold);
        assert!(!s.vertex_manifold);
        assert_eq!(s.chi, 15 - 24 + 12);
        assert_eq!(s.surface_components, 2);
    }

    #[test]
    fn disjoint_cubes() {
        let s = stats(vec![unit("a", 0, 0, 0), unit("b", 5, 0, 0)]);
        assert_eq!(s.chi, 4);
        assert_eq!(s.surface_components, 2);
        assert_eq!(s.genus_error, Some(GenusError::Disconnected(2)));
    }

    #[test]
    fn piece_tables() {
        let cube = PieceTable { rows: vec![PieceRow::new("cube", 1, 8, 12, 6)] };
        let t = piece_table_chi(&cube).unwrap();
        assert_eq!((t.chi, t.genus), (2, Ok(0)));
        assert_eq!(piece_table_chi(&PieceTable::default()), Err(TableError::Empty));
    }
}
