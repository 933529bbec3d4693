//! Exact-arithmetic complexes of parallelepiped bricks.
//!
//! A [`Brick`] is a parallelepiped over exact rationals. A [`BrickComplex`]
//! is a labeled collection of them; [`validate`] classifies every pair as
//! disjoint, point, whole-edge or whole-face contact (or improper), the
//! [`BrickGraph`] links bricks sharing a whole face, and bricks of degree at
//! most three are *corners*. Refinement operators split bricks without
//! changing the point set, and [`surface_stats`] computes the Euler
//! characteristic and genus of the exposed boundary surface.

pub mod complex;
pub mod constructions;
pub mod contact;
pub mod geometry;
pub mod refinement;
pub mod scalar;
pub mod topology;
pub mod union_find;
pub mod voxel;

pub use complex::{brick_graph, corners, degree_histogram, validate, BrickComplex, BrickGraph, ComplexError, Contact, ValidationReport};
pub use contact::{classify_contact, ContactClass, ImproperKind};
pub use geometry::{Brick, FaceIndex, GeometryError, Point3, Vec3, Vector3};
pub use refinement::{
    apply_schedule, octasect, quarter_lengthwise, split_at, standard_schedule, two_opposite_covered, Operator,
    RefinementError, RefinementSchedule,
};
pub use scalar::Scalar;
pub use topology::{exposed_faces, genus_from_chi, piece_table_chi, surface_stats, PieceRow, PieceTable, SurfaceStats};
pub use voxel::{natural_resolution, voxel_chi};
