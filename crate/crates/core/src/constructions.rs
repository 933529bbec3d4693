//! Builders for the ZZ-objects, the published piece tables and test fixtures.
//!
//! The ZZ-object joins four cubes by two Z-shaped paths of skew connectors.
//! One path runs along x (cubes in increasing x), the other along z (cubes in
//! decreasing z). Every connector starts on a whole face of one cube and ends
//! on the parallel whole face of the next, so each cube has one opposite pair
//! of faces covered by the path it sits in the middle of, plus one face
//! covered by the other path, and three faces exposed.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::complex::{brick_graph, validate, BrickComplex, ComplexError};
use crate::geometry::{Brick, GeometryError, Point3, Vec3};
use crate::refinement::two_opposite_covered;
use crate::scalar::{format_scalar, half, int, ratio, Scalar};
use crate::topology::{surface_stats, PieceRow, PieceTable};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("cube side must be positive")]
    NonPositiveSide,
    #[error("cube centers must have distinct {0} coordinates")]
    TiedCenters(char),
    #[error(
        "gap of {gap} along {axis} between {from} and {to} does not exceed cube side {side}; connector would be degenerate"
    )]
    GapTooSmall { axis: char, from: String, to: String, gap: String, side: String },
    #[error("the x-ordered and z-ordered paths share a cube pair; the connectors do not decompose K4")]
    PathsOverlap,
    #[error("zig-zag layout is improper under these parameters: `{a}` / `{b}` meet as {kind}")]
    ImproperLayout { a: String, b: String, kind: String },
    #[error("zig-zag layout check failed: {0}")]
    LayoutCheck(String),
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// Cube size and centers of the ZZ-object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZZParams {
    pub cube_side: Scalar,
    /// Centers of cubes C1..C4.
    pub centers: [Point3; 4],
}

impl Default for ZZParams {
    fn default() -> Self {
        Self {
            cube_side: int(4),
            centers: [
                Vec3::from_ints(30, 40, 50),
                Vec3::from_ints(60, 10, 40),
                Vec3::from_ints(10, 20, 30),
                Vec3::from_ints(55, 30, 10),
            ],
        }
    }
}

impl ZZParams {
    pub fn with_cube_side(cube_side: Scalar) -> Self {
        Self { cube_side, ..Self::default() }
    }

    /// Multiplies every coordinate and the cube side by `k`.
    pub fn scaled(&self, k: &Scalar) -> Self {
        Self { cube_side: &self.cube_side * k, centers: self.centers.clone().map(|c| c.scale(k)) }
    }
}

pub fn cube_label(i: usize) -> String {
    format!("C{}", i + 1)
}

/// Cube indices along the x path (increasing x) and the z path (decreasing z).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Routing {
    pub x_path: [usize; 4],
    pub z_path: [usize; 4],
}

const AXIS_NAMES: [char; 3] = ['x', 'y', 'z'];

/// Orders the cubes along x and z and checks that the two paths are
/// edge-disjoint and that every hop leaves room for a connector.
pub fn routing(p: &ZZParams) -> Result<Routing, ConstructionError> {
    if !p.cube_side.is_positive() {
        return Err(ConstructionError::NonPositiveSide);
    }
    let order = |axis: usize, descending: bool| -> Result<[usize; 4], ConstructionError> {
        let mut idx = [0, 1, 2, 3];
        idx.sort_by(|&a, &b| p.centers[a].component(axis).cmp(p.centers[b].component(axis)));
        if descending {
            idx.reverse();
        }
        for w in idx.windows(2) {
            let gap = (p.centers[w[1]].component(axis) - p.centers[w[0]].component(axis)).abs();
            if gap.is_zero() {
                return Err(ConstructionError::TiedCenters(AXIS_NAMES[axis]));
            }
            if gap <= p.cube_side {
                return Err(ConstructionError::GapTooSmall {
                    axis: AXIS_NAMES[axis],
                    from: cube_label(w[0]),
                    to: cube_label(w[1]),
                    gap: format_scalar(&gap),
                    side: format_scalar(&p.cube_side),
                });
            }
        }
        Ok(idx)
    };
    let x_path = order(0, false)?;
    let z_path = order(2, true)?;
    let hops = |path: &[usize; 4]| -> BTreeSet<(usize, usize)> {
        path.windows(2).map(|w| (w[0].min(w[1]), w[0].max(w[1]))).collect()
    };
    if !hops(&x_path).is_disjoint(&hops(&z_path)) {
        return Err(ConstructionError::PathsOverlap);
    }
    Ok(Routing { x_path, z_path })
}

fn cube(p: &ZZParams, i: usize) -> Result<Brick, GeometryError> {
    let h = &p.cube_side * half();
    let d = Vec3::new(h.clone(), h.clone(), h);
    Brick::from_box(&p.centers[i] - &d, &p.centers[i] + &d, cube_label(i))
}

/// Square `side × side` face centered at `center`, normal to `axis`.
fn face_min_corner(center: &Point3, side: &Scalar) -> Point3 {
    let h = side * half();
    center - &Vec3::new(h.clone(), h.clone(), h)
}

fn unit_axis(axis: usize, length: &Scalar) -> Vec3 {
    let mut c = [Scalar::zero(), Scalar::zero(), Scalar::zero()];
    c[axis] = length.clone();
    let [x, y, z] = c;
    Vec3::new(x, y, z)
}

/// Parallelepiped from the square face centered at `from` to the square
/// face centered at `to`, both normal to `axis`.
fn connector(id: String, from: &Point3, to: &Point3, axis: usize, side: &Scalar) -> Result<Brick, GeometryError> {
    let start = with_component(&face_min_corner(from, side), axis, from.component(axis).clone());
    let end = with_component(&face_min_corner(to, side), axis, to.component(axis).clone());
    let cross: Vec<usize> = (0..3).filter(|&k| k != axis).collect();
    Brick::new(id, start.clone(), [&end - &start, unit_axis(cross[0], side), unit_axis(cross[1], side)])
}

fn with_component(p: &Point3, axis: usize, value: Scalar) -> Point3 {
    let mut c = [p.x.clone(), p.y.clone(), p.z.clone()];
    c[axis] = value;
    let [x, y, z] = c;
    Vec3::new(x, y, z)
}

/// Center of the face of cube `i` on side `sign` of `axis`.
fn face_center(p: &ZZParams, center: &Point3, axis: usize, positive: bool) -> Point3 {
    let h = &p.cube_side * half();
    let value = if positive { center.component(axis) + &h } else { center.component(axis) - &h };
    with_component(center, axis, value)
}

fn path_connector(p: &ZZParams, id: String, from: usize, to: usize, axis: usize) -> Result<Brick, GeometryError> {
    let forward = p.centers[to].component(axis) > p.centers[from].component(axis);
    let a = face_center(p, &p.centers[from], axis, forward);
    let b = face_center(p, &p.centers[to], axis, !forward);
    connector(id, &a, &b, axis, &p.cube_side)
}

/// The 10-brick self-intersecting ZZ-object: cubes `C1..C4`, x-path
/// connectors `x1..x3` and z-path connectors `z1..z3`.
pub fn zz_immersed(p: &ZZParams) -> Result<BrickComplex, ConstructionError> {
    let route = routing(p)?;
    let mut bricks: Vec<Brick> = (0..4).map(|i| cube(p, i)).collect::<Result<_, _>>()?;
    for (k, w) in route.x_path.windows(2).enumerate() {
        bricks.push(path_connector(p, format!("x{}", k + 1), w[0], w[1], 0)?);
    }
    for (k, w) in route.z_path.windows(2).enumerate() {
        bricks.push(path_connector(p, format!("z{}", k + 1), w[0], w[1], 2)?);
    }
    Ok(BrickComplex::new("zz-immersed", bricks)?.with_provenance("ZZ-object, two Z paths of skew connectors"))
}

/// Where the joint of a zig-zagged z-path hop sits, relative to the hop's
/// start cube `A` and end cube `B`: center = A + t·(B − A) + side·(dx, dy, 0).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JointPlacement {
    /// Which z-path hop (0, 1 or 2) is zig-zagged.
    pub hop: usize,
    pub t: Scalar,
    pub dx: Scalar,
    pub dy: Scalar,
}

/// Joint placements used by [`zz_embedded`]: hop C1→C2 with its joint
/// under C1 at (30, 33, 45), hop C3→C4 with its joint over C4 at (55, 25, 20).
/// These clear every overlap that involves x2. The straight C2→C3 connector
/// still overlaps x1 at C3 and x3 at C2, and no joint on that hop avoids
/// both, so [`zz_embedded`] rejects the default layout.
pub fn default_joints() -> Vec<JointPlacement> {
    vec![
        JointPlacement { hop: 0, t: half(), dx: ratio(-15, 4), dy: int(2) },
        JointPlacement { hop: 2, t: half(), dx: ratio(45, 8), dy: int(0) },
    ]
}

/// Builds the zig-zagged complex for arbitrary joint placements without
/// running any checks.
pub fn zz_zigzag(p: &ZZParams, joints: &[JointPlacement]) -> Result<BrickComplex, ConstructionError> {
    let route = routing(p)?;
    let mut bricks: Vec<Brick> = (0..4).map(|i| cube(p, i)).collect::<Result<_, _>>()?;
    for (k, w) in route.x_path.windows(2).enumerate() {
        bricks.push(path_connector(p, format!("x{}", k + 1), w[0], w[1], 0)?);
    }
    for (k, w) in route.z_path.windows(2).enumerate() {
        let label = format!("z{}", k + 1);
        match joints.iter().find(|j| j.hop == k) {
            None => bricks.push(path_connector(p, label, w[0], w[1], 2)?),
            Some(j) => {
                let (a, b) = (&p.centers[w[0]], &p.centers[w[1]]);
                let center = &(a + &(b - a).scale(&j.t)) + &Vec3::new(&j.dx * &p.cube_side, &j.dy * &p.cube_side, Scalar::zero());
                let h = &p.cube_side * half();
                let lo = &center - &Vec3::new(h.clone(), h.clone(), h.clone());
                let hi = &center + &Vec3::new(h.clone(), h.clone(), h);
                let joint = Brick::from_box(lo, hi, format!("j{}", k + 1))?;
                let top = face_center(p, &center, 2, true);
                let bottom = face_center(p, &center, 2, false);
                let a_exit = face_center(p, a, 2, false);
                let b_entry = face_center(p, b, 2, true);
                bricks.push(connector(format!("{label}a"), &a_exit, &top, 2, &p.cube_side)?);
                bricks.push(joint);
                bricks.push(connector(format!("{label}b"), &bottom, &b_entry, 2, &p.cube_side)?);
            }
        }
    }
    Ok(BrickComplex::new("zz-embedded", bricks)?.with_provenance("ZZ-object with two z-path hops zig-zagged through joints"))
}

/// The 14-brick embedded ZZ-object. The layout is checked before it is
/// returned: properly joined, every brick with an opposite covered face
/// pair, connected brick graph, Euler characteristic -4.
pub fn zz_embedded(p: &ZZParams) -> Result<BrickComplex, ConstructionError> {
    let c = zz_zigzag(p, &default_joints())?;
    let report = validate(&c);
    if let Some(bad) = report.improper_pairs.first() {
        return Err(ConstructionError::ImproperLayout { a: bad.a.clone(), b: bad.b.clone(), kind: bad.class.kind().to_string() });
    }
    let cover = two_opposite_covered(&c, &report)?;
    if let Some((label, _)) = cover.iter().find(|(_, ok)| !**ok) {
        return Err(ConstructionError::LayoutCheck(format!("`{label}` has no covered opposite face pair")));
    }
    if !brick_graph(&c, &report)?.is_connected() {
        return Err(ConstructionError::LayoutCheck("brick graph is disconnected".into()));
    }
    let stats = surface_stats(&c, &report)?;
    if stats.chi != -4 {
        return Err(ConstructionError::LayoutCheck(format!("Euler characteristic is {}, expected -4", stats.chi)));
    }
    Ok(c)
}

/// Per-piece counts for the 52-brick buttressed octahedron (genus 13).
pub fn table_buttressed_octahedron() -> PieceTable {
    PieceTable {
        rows: vec![
            PieceRow::new("ring (4 quarters)", 4, 20, 40, 16),
            PieceRow::new("arch (2)", 2, 30, 66, 32),
            PieceRow::new("buttress (8)", 8, 0, 4, 4),
        ],
    }
}

/// Per-piece counts for the ZZ-object (genus 3).
pub fn table_zz() -> PieceTable {
    PieceTable { rows: vec![PieceRow::new("cubes (4)", 4, 8, 12, 3), PieceRow::new("connectors (6)", 6, 0, 4, 4)] }
}

pub const FIXTURE_NAMES: [&str; 8] = ["cube", "column-3", "ring-3x3", "block-2x2x2", "slab-3x2", "tube-3x3x2", "cross-7", "box-2x1x1"];

fn unit_cube(id: String, x: i64, y: i64, z: i64) -> Brick {
    Brick::from_box(Vec3::from_ints(x, y, z), Vec3::from_ints(x + 1, y + 1, z + 1), id).expect("unit cube")
}

fn from_cells(name: &str, cells: impl IntoIterator<Item = (i64, i64, i64)>) -> BrickComplex {
    let bricks = cells.into_iter().map(|(x, y, z)| unit_cube(format!("u{x}{y}{z}"), x, y, z)).collect();
    BrickComplex::new(name, bricks).expect("distinct cells").with_provenance("fixture")
}

/// Small deterministic complexes of unit cubes.
pub fn fixture(name: &str) -> Result<BrickComplex, ConstructionError> {
    let grid = |nx: i64, ny: i64, nz: i64| {
        (0..nx).flat_map(move |x| (0..ny).flat_map(move |y| (0..nz).map(move |z| (x, y, z))))
    };
    let c = match name {
        "cube" => BrickComplex::new("cube", vec![unit_cube("cube".into(), 0, 0, 0)])?.with_provenance("fixture"),
        "column-3" => from_cells(name, grid(1, 1, 3)),
        "ring-3x3" => from_cells(name, grid(3, 3, 1).filter(|&(x, y, _)| (x, y) != (1, 1))),
        "block-2x2x2" => from_cells(name, grid(2, 2, 2)),
        "slab-3x2" => from_cells(name, grid(3, 2, 1)),
        "tube-3x3x2" => from_cells(name, grid(3, 3, 2).filter(|&(x, y, _)| (x, y) != (1, 1))),
        "cross-7" => from_cells(
            name,
            [(1, 1, 1), (0, 1, 1), (2, 1, 1), (1, 0, 1), (1, 2, 1), (1, 1, 0), (1, 1, 2)],
        ),
        "box-2x1x1" => from_cells(name, grid(2, 1, 1)),
        other => match other.strip_prefix("random-") {
            Some(seed) => {
                let seed: u64 = seed.parse().map_err(|_| ConstructionError::UnknownFixture(other.to_string()))?;
                random_unit_complex(seed, 40, 8)
            }
            None => return Err(ConstructionError::UnknownFixture(other.to_string())),
        },
    };
    Ok(c)
}

/// Up to `max_bricks` distinct unit cubes in a `grid³` box, seeded.
pub fn random_unit_complex(seed: u64, max_bricks: usize, grid: i64) -> BrickComplex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let count = rng.gen_range(1..=max_bricks);
    let mut cells = BTreeSet::new();
    // Grow from a random start so the complexes are mostly clumped.
    let mut frontier = vec![(rng.gen_range(0..grid), rng.gen_range(0..grid), rng.gen_range(0..grid))];
    while cells.len() < count {
        let cell = if rng.gen_bool(0.85) && !frontier.is_empty() {
            let (x, y, z) = frontier[rng.gen_range(0..frontier.len())];
            let mut c = [x, y, z];
            c[rng.gen_range(0..3)] += if rng.gen_bool(0.5) { 1 } else { -1 };
            (c[0], c[1], c[2])
        } else {
            (rng.gen_range(0..grid), rng.gen_range(0..grid), rng.gen_range(0..grid))
        };
        let inside = [cell.0, cell.1, cell.2].iter().all(|&v| (0..grid).contains(&v));
        if inside && cells.insert(cell) {
            frontier.push(cell);
        }
    }
    from_cells(&format!("random-{seed}"), cells)
}
