//! Points, vectors and the parallelepiped brick.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::scalar::{format_scalar, int, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("brick `{0}` has zero volume (generators are linearly dependent)")]
    ZeroVolume(String),
    #[error("box `{id}` is degenerate: extent along {axis} is not positive")]
    DegenerateBox { id: String, axis: char },
}

/// Exact 3-vector. Doubles as a point; ordering is lexicographic (x, y, z).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vec3 {
    pub x: Scalar,
    pub y: Scalar,
    pub z: Scalar,
}

pub type Point3 = Vec3;
pub type Vector3 = Vec3;

impl Vec3 {
    pub fn new(x: Scalar, y: Scalar, z: Scalar) -> Self {
        Self { x, y, z }
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> Self {
        Self::new(int(x), int(y), int(z))
    }

    pub fn zero() -> Self {
        Self::new(Scalar::zero(), Scalar::zero(), Scalar::zero())
    }

    pub fn component(&self, axis: usize) -> &Scalar {
        match axis {
            0 => &self.x,
            1 => &self.y,
            2 => &self.z,
            _ => panic!("axis index {axis} out of range"),
        }
    }

    pub fn components(&self) -> [&Scalar; 3] {
        [&self.x, &self.y, &self.z]
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        Self::new(&self.x * k, &self.y * k, &self.z * k)
    }

    pub fn dot(&self, other: &Self) -> Scalar {
        &self.x * &other.x + &self.y * &other.y + &self.z * &other.z
    }

    pub fn cross(&self, other: &Self) -> Self {
        Self::new(
            &self.y * &other.z - &self.z * &other.y,
            &self.z * &other.x - &self.x * &other.z,
            &self.x * &other.y - &self.y * &other.x,
        )
    }

    pub fn norm_squared(&self) -> Scalar {
        self.dot(self)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }
}

/// Scalar triple product `a · (b × c)`.
pub fn det3(a: &Vec3, b: &Vec3, c: &Vec3) -> Scalar {
    a.dot(&b.cross(c))
}

impl Add for &Vec3 {
    type Output = Vec3;
    fn add(self, rhs: &Vec3) -> Vec3 {
        Vec3::new(&self.x + &rhs.x, &self.y + &rhs.y, &self.z + &rhs.z)
    }
}

impl Sub for &Vec3 {
    type Output = Vec3;
    fn sub(self, rhs: &Vec3) -> Vec3 {
        Vec3::new(&self.x - &rhs.x, &self.y - &rhs.y, &self.z - &rhs.z)
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, rhs: Vec3) -> Vec3 {
        &self + &rhs
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, rhs: Vec3) -> Vec3 {
        &self - &rhs
    }
}

impl Neg for &Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-&self.x, -&self.y, -&self.z)
    }
}

impl fmt::Display for Vec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {})",
            format_scalar(&self.x),
            format_scalar(&self.y),
            format_scalar(&self.z)
        )
    }
}

pub const GENERATOR_NAMES: [char; 3] = ['u', 'v', 'w'];

/// One of the six faces: the `axis` generator coefficient is fixed at 0
/// (`upper == false`, face k⁻) or 1 (`upper == true`, face k⁺).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceIndex {
    pub axis: usize,
    pub upper: bool,
}

impl FaceIndex {
    pub const ALL: [FaceIndex; 6] = [
        FaceIndex { axis: 0, upper: false },
        FaceIndex { axis: 0, upper: true },
        FaceIndex { axis: 1, upper: false },
        FaceIndex { axis: 1, upper: true },
        FaceIndex { axis: 2, upper: false },
        FaceIndex { axis: 2, upper: true },
    ];

    /// Position in [`FaceIndex::ALL`].
    pub fn ordinal(self) -> usize {
        2 * self.axis + usize::from(self.upper)
    }

    pub fn from_ordinal(i: usize) -> Self {
        Self::ALL[i]
    }

    pub fn opposite(self) -> Self {
        Self { axis: self.axis, upper: !self.upper }
    }

    /// Vertex indices of this face in cyclic order.
    pub fn vertex_indices(self) -> [usize; 4] {
        let fixed = usize::from(self.upper) << (2 - self.axis);
        let (i, j) = match self.axis {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        let bit = |axis: usize| 1usize << (2 - axis);
        [
            fixed,
            fixed | bit(i),
            fixed | bit(i) | bit(j),
            fixed | bit(j),
        ]
    }

    /// Edge indices (into [`EDGES`]) bounding this face, in cyclic order.
    pub fn edge_indices(self) -> [usize; 4] {
        let vs = self.vertex_indices();
        std::array::from_fn(|k| edge_between(vs[k], vs[(k + 1) % 4]).expect("face sides are edges"))
    }

    pub fn contains_vertex(self, vertex: usize) -> bool {
        ((vertex >> (2 - self.axis)) & 1 == 1) == self.upper
    }
}

impl fmt::Display for FaceIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", GENERATOR_NAMES[self.axis], if self.upper { '+' } else { '-' })
    }
}

impl std::str::FromStr for FaceIndex {
    type Err = ();
    fn from_str(s: &str) -> Result<Self, ()> {
        let mut chars = s.chars();
        let first = chars.next().ok_or(())?;
        let axis = GENERATOR_NAMES.iter().position(|&c| c == first).ok_or(())?;
        let upper = match (chars.next(), chars.next()) {
            (Some('+'), None) => true,
            (Some('-'), None) => false,
            _ => return Err(()),
        };
        Ok(FaceIndex { axis, upper })
    }
}

/// The 12 edges as vertex-index pairs, sorted lexicographically.
///
/// Vertex index `4a + 2b + c` is the point `origin + a·u + b·v + c·w`.
pub const EDGES: [(usize, usize); 12] = [
    (0, 1),
    (0, 2),
    (0, 4),
    (1, 3),
    (1, 5),
    (2, 3),
    (2, 6),
    (3, 7),
    (4, 5),
    (4, 6),
    (5, 7),
    (6, 7),
];

pub fn edge_between(a: usize, b: usize) -> Option<usize> {
    let key = (a.min(b), a.max(b));
    EDGES.iter().position(|&e| e == key)
}

/// Generator direction an edge runs along.
pub fn edge_axis(edge: usize) -> usize {
    let (a, b) = EDGES[edge];
    2 - (a ^ b).trailing_zeros() as usize
}

/// The two faces of a brick that contain a given edge.
pub fn faces_of_edge(edge: usize) -> [FaceIndex; 2] {
    let (a, _) = EDGES[edge];
    let along = edge_axis(edge);
    let mut out = Vec::with_capacity(2);
    for axis in (0..3).filter(|&k| k != along) {
        out.push(FaceIndex { axis, upper: (a >> (2 - axis)) & 1 == 1 });
    }
    [out[0], out[1]]
}

/// A parallelepiped `origin + a·u + b·v + c·w`, `a, b, c ∈ [0, 1]`.
///
/// Generators are stored with `det(u, v, w) > 0`; a left-handed input has
/// `v` and `w` swapped at construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Brick {
    id: String,
    origin: Point3,
    generators: [Vector3; 3],
}

impl Brick {
    pub fn new(id: impl Into<String>, origin: Point3, generators: [Vector3; 3]) -> Result<Self, GeometryError> {
        let id = id.into();
        let [u, v, w] = generators;
        let det = det3(&u, &v, &w);
        if det.is_zero() {
            return Err(GeometryError::ZeroVolume(id));
        }
        let generators = if det.is_negative() { [u, w, v] } else { [u, v, w] };
        Ok(Self { id, origin, generators })
    }

    /// Axis-aligned box `[min, max]`.
    pub fn from_box(min: Point3, max: Point3, id: impl Into<String>) -> Result<Self, GeometryError> {
        let id = id.into();
        let extent = &max - &min;
        for (axis, name) in ['x', 'y', 'z'].into_iter().enumerate() {
            if !extent.component(axis).is_positive() {
                return Err(GeometryError::DegenerateBox { id, axis: name });
            }
        }
        let zero = Scalar::zero;
        let generators = [
            Vec3::new(extent.x, zero(), zero()),
            Vec3::new(zero(), extent.y, zero()),
            Vec3::new(zero(), zero(), extent.z),
        ];
        Ok(Self { id, origin: min, generators })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn origin(&self) -> &Point3 {
        &self.origin
    }

    pub fn generators(&self) -> &[Vector3; 3] {
        &self.generators
    }

    pub fn generator(&self, axis: usize) -> &Vector3 {
        &self.generators[axis]
    }

    pub fn with_id(&self, id: impl Into<String>) -> Self {
        Self { id: id.into(), ..self.clone() }
    }

    /// Same brick moved by `offset`.
    pub fn translated(&self, offset: &Vector3) -> Self {
        Self { origin: &self.origin + offset, ..self.clone() }
    }

    /// `det(u, v, w)`, always positive.
    pub fn det(&self) -> Scalar {
        let [u, v, w] = &self.generators;
        det3(u, v, w)
    }

    pub fn volume(&self) -> Scalar {
        self.det()
    }

    /// Vertex `4a + 2b + c`.
    pub fn vertex(&self, index: usize) -> Point3 {
        let mut p = self.origin.clone();
        for axis in 0..3 {
            if (index >> (2 - axis)) & 1 == 1 {
                p = &p + &self.generators[axis];
            }
        }
        p
    }

    pub fn vertices(&self) -> [Point3; 8] {
        std::array::from_fn(|i| self.vertex(i))
    }

    pub fn elements(&self) -> BrickElements {
        let vertices = self.vertices();
        let edges = EDGES.map(|(a, b)| [vertices[a].clone(), vertices[b].clone()]);
        let faces = FaceIndex::ALL.map(|f| f.vertex_indices().map(|i| vertices[i].clone()));
        BrickElements { vertices, edges, faces }
    }

    /// Exact axis-aligned bounding box.
    pub fn bounding_box(&self) -> (Point3, Point3) {
        let vs = self.vertices();
        let pick = |axis: usize, max: bool| {
            let it = vs.iter().map(|v| v.component(axis));
            let best = if max { it.max() } else { it.min() };
            best.cloned().expect("eight vertices")
        };
        (
            Vec3::new(pick(0, false), pick(1, false), pick(2, false)),
            Vec3::new(pick(0, true), pick(1, true), pick(2, true)),
        )
    }

    /// True when every generator is parallel to a distinct coordinate axis.
    pub fn is_rectilinear(&self) -> bool {
        let mut seen = [false; 3];
        for g in &self.generators {
            let nonzero: Vec<usize> = (0..3).filter(|&a| !g.component(a).is_zero()).collect();
            match nonzero.as_slice() {
                [a] if !seen[*a] => seen[*a] = true,
                _ => return false,
            }
        }
        true
    }

    /// All three generators have the same squared length.
    pub fn is_cube_shaped(&self) -> bool {
        let [u, v, w] = &self.generators;
        let lu = u.norm_squared();
        lu == v.norm_squared() && lu == w.norm_squared()
    }
}

/// Vertices, edges and faces of a brick in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrickElements {
    pub vertices: [Point3; 8],
    pub edges: [[Point3; 2]; 12],
    pub faces: [[Point3; 4]; 6],
}
