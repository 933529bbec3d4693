//! Pairwise contact classification of bricks.
//!
//! The intersection of two bricks is the convex polytope cut out by their
//! twelve bounding half-spaces. Its vertices are enumerated exactly from
//! every independent triple of bounding planes, and the affine rank of the
//! vertex set gives its dimension.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::geometry::{edge_between, Brick, FaceIndex, Point3, Vec3, EDGES};
use crate::scalar::Scalar;

/// Ways a brick pair can fail to be properly joined.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ImproperKind {
    VolumeOverlap,
    PartialFace,
    PartialEdge,
}

impl fmt::Display for ImproperKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ImproperKind::VolumeOverlap => "volume-overlap",
            ImproperKind::PartialFace => "partial-face",
            ImproperKind::PartialEdge => "partial-edge",
        })
    }
}

/// How two bricks meet. Index payloads refer to (first, second) argument.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ContactClass {
    Disjoint,
    Point(Point3),
    /// `segment` is sorted so that `segment[0] < segment[1]`.
    WholeEdge { segment: [Point3; 2], edge_a: usize, edge_b: usize },
    WholeFace { face_a: FaceIndex, face_b: FaceIndex },
    Improper(ImproperKind),
}

impl ContactClass {
    /// The same contact seen from the other brick.
    pub fn mirrored(&self) -> Self {
        match self {
            ContactClass::WholeEdge { segment, edge_a, edge_b } => ContactClass::WholeEdge {
                segment: segment.clone(),
                edge_a: *edge_b,
                edge_b: *edge_a,
            },
            ContactClass::WholeFace { face_a, face_b } => ContactClass::WholeFace { face_a: *face_b, face_b: *face_a },
            other => other.clone(),
        }
    }

    pub fn is_improper(&self) -> bool {
        matches!(self, ContactClass::Improper(_))
    }

    pub fn is_disjoint(&self) -> bool {
        matches!(self, ContactClass::Disjoint)
    }

    /// Dimension of the intersection, `-1` for disjoint bricks.
    pub fn dimension(&self) -> i32 {
        match self {
            ContactClass::Disjoint => -1,
            ContactClass::Point(_) => 0,
            ContactClass::WholeEdge { .. } | ContactClass::Improper(ImproperKind::PartialEdge) => 1,
            ContactClass::WholeFace { .. } | ContactClass::Improper(ImproperKind::PartialFace) => 2,
            ContactClass::Improper(ImproperKind::VolumeOverlap) => 3,
        }
    }

    /// Short kind tag used in reports.
    pub fn kind(&self) -> &'static str {
        match self {
            ContactClass::Disjoint => "disjoint",
            ContactClass::Point(_) => "point",
            ContactClass::WholeEdge { .. } => "whole-edge",
            ContactClass::WholeFace { .. } => "whole-face",
            ContactClass::Improper(ImproperKind::VolumeOverlap) => "volume-overlap",
            ContactClass::Improper(ImproperKind::PartialFace) => "partial-face",
            ContactClass::Improper(ImproperKind::PartialEdge) => "partial-edge",
        }
    }
}

/// `lo <= normal · x <= hi`: the region between a pair of opposite faces.
struct Slab {
    normal: Vec3,
    lo: Scalar,
    hi: Scalar,
}

#[cfg(test)]
impl Slab {
    fn contains(&self, p: &Point3) -> bool {
        let t = self.normal.dot(p);
        self.lo <= t && t <= self.hi
    }
}

fn slabs(b: &Brick) -> [Slab; 3] {
    let [u, v, w] = b.generators();
    let det = b.det();
    let normals = [v.cross(w), w.cross(u), u.cross(v)];
    normals.map(|normal| {
        let lo = normal.dot(b.origin());
        let hi = &lo + &det;
        Slab { normal, lo, hi }
    })
}

type F3 = [f64; 3];

fn approx(v: &Vec3) -> F3 {
    v.components().map(|c| c.to_f64().unwrap_or(f64::NAN))
}

fn fdot(a: &F3, b: &F3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn fcross(a: &F3, b: &F3) -> F3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

/// Floating-point separating-axis filter. Any direction separates two
/// convex sets if their projections are apart, so the candidate axes may be
/// approximate; only the projections need a rounding margin. Returns `true`
/// only when the gap exceeds a bound far above the accumulated error, so a
/// `true` is exact and a `false` means "undecided".
fn clearly_separated(a: &Brick, b: &Brick) -> bool {
    let (va, vb) = (a.vertices().map(|v| approx(&v)), b.vertices().map(|v| approx(&v)));
    let scale = va.iter().chain(vb.iter()).flatten().fold(0.0f64, |m, x| m.max(x.abs()));
    if !scale.is_finite() {
        return false;
    }
    let apart = |n: &F3| {
        let len = n.iter().map(|x| x.abs()).sum::<f64>();
        if len == 0.0 || !len.is_finite() {
            return false;
        }
        let range = |vs: &[F3; 8]| {
            vs.iter().map(|v| fdot(n, v)).fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), t| (lo.min(t), hi.max(t)))
        };
        let ((alo, ahi), (blo, bhi)) = (range(&va), range(&vb));
        let margin = 1e-9 * len * scale.max(1.0);
        blo - ahi > margin || alo - bhi > margin
    };
    let ga = a.generators().each_ref().map(approx);
    let gb = b.generators().each_ref().map(approx);
    let unit = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
    let normals = |g: &[F3; 3]| [fcross(&g[1], &g[2]), fcross(&g[2], &g[0]), fcross(&g[0], &g[1])];
    unit.iter().chain(normals(&ga).iter()).chain(normals(&gb).iter()).any(apart)
        || ga.iter().any(|g| gb.iter().any(|h| apart(&fcross(g, h))))
}

/// Vertices of `x` inside `y`, and crossings of `x`'s edges with the face
/// planes of `y` that lie inside `y`.
fn one_sided_vertices(x: &Brick, y_slabs: &[Slab; 3], out: &mut BTreeSet<Point3>) {
    let vs = x.vertices();
    // heights[k][i] = normal_k · vertex_i; along an edge they interpolate linearly.
    let heights: Vec<Vec<Scalar>> = y_slabs.iter().map(|s| vs.iter().map(|v| s.normal.dot(v)).collect()).collect();
    let within = |k: usize, h: &Scalar| y_slabs[k].lo <= *h && *h <= y_slabs[k].hi;
    for (i, v) in vs.iter().enumerate() {
        if (0..3).all(|k| within(k, &heights[k][i])) {
            out.insert(v.clone());
        }
    }
    for &(i, j) in EDGES.iter() {
        for (k, slab) in y_slabs.iter().enumerate() {
            let rate = &heights[k][j] - &heights[k][i];
            if rate.is_zero() {
                continue;
            }
            for level in [&slab.lo, &slab.hi] {
                let t = (level - &heights[k][i]) / &rate;
                if t.is_negative() || t > Scalar::one() {
                    continue;
                }
                let inside = (0..3).filter(|&m| m != k).all(|m| {
                    let h = &heights[m][i] + &(&t * &(&heights[m][j] - &heights[m][i]));
                    within(m, &h)
                });
                if inside {
                    out.insert(&vs[i] + &(&vs[j] - &vs[i]).scale(&t));
                }
            }
        }
    }
}

/// Exact vertex set of `a ∩ b` (empty when the bricks are disjoint).
///
/// A vertex of the intersection is a vertex of one brick lying in the
/// other, or the point where an edge of one brick crosses a face plane of
/// the other.
pub fn intersection_vertices(a: &Brick, b: &Brick) -> BTreeSet<Point3> {
    let mut out = BTreeSet::new();
    if clearly_separated(a, b) {
        return out;
    }
    one_sided_vertices(a, &slabs(b), &mut out);
    one_sided_vertices(b, &slabs(a), &mut out);
    out
}

/// Reference enumeration: every independent triple of bounding planes.
#[cfg(test)]
pub(crate) fn intersection_vertices_by_triples(a: &Brick, b: &Brick) -> BTreeSet<Point3> {
    let mut out = BTreeSet::new();
    let all: Vec<Slab> = slabs(a).into_iter().chain(slabs(b)).collect();
    for i in 0..all.len() {
        for j in i + 1..all.len() {
            let c_ij = all[i].normal.cross(&all[j].normal);
            if c_ij.is_zero() {
                continue;
            }
            for k in j + 1..all.len() {
                let det = all[k].normal.dot(&c_ij);
                if det.is_zero() {
                    continue;
                }
                let c_jk = all[j].normal.cross(&all[k].normal);
                let c_ki = all[k].normal.cross(&all[i].normal);
                let inv = det.recip();
                // Cramer: x = (d_i c_jk + d_j c_ki + d_k c_ij) / det.
                for mask in 0..8u8 {
                    let pick = |s: &Slab, bit: u8| if mask & bit == 0 { s.lo.clone() } else { s.hi.clone() };
                    let (di, dj, dk) = (pick(&all[i], 1), pick(&all[j], 2), pick(&all[k], 4));
                    let num = &(&c_jk.scale(&di) + &c_ki.scale(&dj)) + &c_ij.scale(&dk);
                    let p = num.scale(&inv);
                    if all.iter().enumerate().all(|(n, s)| n == i || n == j || n == k || s.contains(&p)) {
                        out.insert(p);
                    }
                }
            }
        }
    }
    out
}

/// Affine dimension of a point set, `-1` when empty.
pub fn affine_dimension<'a>(points: impl IntoIterator<Item = &'a Point3>) -> i32 {
    let mut it = points.into_iter();
    let Some(base) = it.next() else { return -1 };
    let mut rows: Vec<[Scalar; 3]> = it
        .map(|p| {
            let d = p - base;
            [d.x, d.y, d.z]
        })
        .collect();
    let mut rank = 0usize;
    for col in 0..3 {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else { continue };
        rows.swap(rank, pivot);
        let pivot_row = rows[rank].clone();
        for r in rank + 1..rows.len() {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = &rows[r][col] / &pivot_row[col];
            for c in col..3 {
                let delta = &factor * &pivot_row[c];
                rows[r][c] -= delta;
            }
        }
        rank += 1;
    }
    rank as i32
}

fn find_edge(b: &Brick, p: &Point3, q: &Point3) -> Option<usize> {
    let vs = b.vertices();
    let i = vs.iter().position(|v| v == p)?;
    let j = vs.iter().position(|v| v == q)?;
    edge_between(i, j)
}

fn find_face(b: &Brick, polygon: &BTreeSet<Point3>) -> Option<FaceIndex> {
    if polygon.len() != 4 {
        return None;
    }
    let vs = b.vertices();
    FaceIndex::ALL
        .into_iter()
        .find(|f| f.vertex_indices().iter().all(|&i| polygon.contains(&vs[i])))
}

/// Classifies how `a` and `b` meet.
pub fn classify_contact(a: &Brick, b: &Brick) -> ContactClass {
    let vertices = intersection_vertices(a, b);
    match affine_dimension(&vertices) {
        -1 => ContactClass::Disjoint,
        0 => ContactClass::Point(vertices.into_iter().next().expect("one vertex")),
        1 => {
            let mut it = vertices.into_iter();
            let (p, q) = (it.next().expect("segment start"), it.next().expect("segment end"));
            match (find_edge(a, &p, &q), find_edge(b, &p, &q)) {
                (Some(edge_a), Some(edge_b)) => ContactClass::WholeEdge { segment: [p, q], edge_a, edge_b },
                _ => ContactClass::Improper(ImproperKind::PartialEdge),
            }
        }
        2 => match (find_face(a, &vertices), find_face(b, &vertices)) {
            (Some(face_a), Some(face_b)) => ContactClass::WholeFace { face_a, face_b },
            _ => ContactClass::Improper(ImproperKind::PartialFace),
        },
        _ => ContactClass::Improper(ImproperKind::VolumeOverlap),
    }
}

/// Endpoints of edge `edge` of `b`.
pub fn edge_endpoints(b: &Brick, edge: usize) -> [Point3; 2] {
    let (i, j) = EDGES[edge];
    [b.vertex(i), b.vertex(j)]
}
