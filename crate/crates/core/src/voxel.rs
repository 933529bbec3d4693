//! Voxel oracle for the Euler characteristic of rectilinear complexes.
//!
//! Independent of the contact machinery: the union is rasterized into
//! cells, and the boundary cell complex is counted directly from integer
//! grid coordinates.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::complex::BrickComplex;
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VoxelError {
    #[error("resolution must be positive")]
    BadResolution,
    #[error("brick `{0}` is not axis-aligned")]
    NotRectilinear(String),
    #[error("brick `{0}` has coordinates that are not multiples of the resolution")]
    OffGrid(String),
    #[error("brick `{0}` is too large to rasterize")]
    TooLarge(String),
}

type Cell = [i64; 3];

fn to_grid(value: &Scalar, resolution: &Scalar) -> Option<i64> {
    let q = value / resolution;
    if q.is_integer() {
        q.to_integer().to_i64()
    } else {
        None
    }
}

/// Coarsest resolution that puts every box corner on the grid: the rational
/// gcd of all corner coordinates (1 if they are all zero).
pub fn natural_resolution(c: &BrickComplex) -> Result<Scalar, VoxelError> {
    let mut coords = Vec::new();
    for b in c.bricks() {
        if !b.is_rectilinear() {
            return Err(VoxelError::NotRectilinear(b.id().to_string()));
        }
        let (lo, hi) = b.bounding_box();
        coords.extend(lo.components().into_iter().chain(hi.components()).cloned());
    }
    let lcm = coords.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let gcd = coords.iter().fold(BigInt::zero(), |acc, v| acc.gcd(&(v.numer() * (&lcm / v.denom()))));
    if gcd.is_zero() {
        return Ok(Scalar::one());
    }
    Ok(Scalar::new(gcd, lcm))
}

/// Occupied unit cells of the rasterized union.
pub fn rasterize(c: &BrickComplex, resolution: &Scalar) -> Result<HashSet<Cell>, VoxelError> {
    if !resolution.is_positive() {
        return Err(VoxelError::BadResolution);
    }
    let mut cells = HashSet::new();
    for b in c.bricks() {
        if !b.is_rectilinear() {
            return Err(VoxelError::NotRectilinear(b.id().to_string()));
        }
        let (lo, hi) = b.bounding_box();
        let mut range = [(0i64, 0i64); 3];
        for (axis, r) in range.iter_mut().enumerate() {
            let a = to_grid(lo.component(axis), resolution).ok_or_else(|| VoxelError::OffGrid(b.id().to_string()))?;
            let z = to_grid(hi.component(axis), resolution).ok_or_else(|| VoxelError::OffGrid(b.id().to_string()))?;
            *r = (a, z);
        }
        let volume: BigInt = range.iter().map(|(a, z)| BigInt::from(z - a)).product();
        if volume > BigInt::from(10_000_000) {
            return Err(VoxelError::TooLarge(b.id().to_string()));
        }
        for x in range[0].0..range[0].1 {
            for y in range[1].0..range[1].1 {
                for z in range[2].0..range[2].1 {
                    cells.insert([x, y, z]);
                }
            }
        }
    }
    Ok(cells)
}

/// V - E + F of the boundary between occupied and empty cells.
pub fn voxel_chi(c: &BrickComplex, resolution: &Scalar) -> Result<i64, VoxelError> {
    let cells = rasterize(c, resolution)?;
    // Squares keyed by (normal axis, min corner); edges by (direction, min corner).
    let mut squares: HashSet<(usize, Cell)> = HashSet::new();
    for cell in &cells {
        for axis in 0..3 {
            for step in [-1i64, 1] {
                let mut nb = *cell;
                nb[axis] += step;
                if !cells.contains(&nb) {
                    let mut corner = *cell;
                    if step == 1 {
                        corner[axis] += 1;
                    }
                    squares.insert((axis, corner));
                }
            }
        }
    }
    let mut edges: HashSet<(usize, Cell)> = HashSet::new();
    let mut vertices: HashSet<Cell> = HashSet::new();
    for &(axis, corner) in &squares {
        let (i, j) = ((axis + 1) % 3, (axis + 2) % 3);
        let offset = |p: Cell, k: usize| {
            let mut q = p;
            q[k] += 1;
            q
        };
        edges.insert((i, corner));
        edges.insert((j, corner));
        edges.insert((i, offset(corner, j)));
        edges.insert((j, offset(corner, i)));
        for p in [corner, offset(corner, i), offset(corner, j), offset(offset(corner, i), j)] {
            vertices.insert(p);
        }
    }
    Ok(vertices.len() as i64 - edges.len() as i64 + squares.len() as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Brick, Vec3};
    use crate::scalar::{half, int};

    fn unit(id: &str, x: i64, y: i64, z: i64) -> Brick {
        Brick::from_box(Vec3::from_ints(x, y, z), Vec3::from_ints(x + 1, y + 1, z + 1), id).unwrap()
    }

    #[test]
    fn unit_cube() {
        let c = BrickComplex::new("c", vec![unit("a", 0, 0, 0)]).unwrap();
        assert_eq!(voxel_chi(&c, &int(1)), Ok(2));
        assert_eq!(voxel_chi(&c, &half()), Ok(2));
    }

    #[test]
    fn two_cube_box() {
        let c = BrickComplex::new("c", vec![unit("a", 0, 0, 0), unit("b", 1, 0, 0)]).unwrap();
        assert_eq!(voxel_chi(&c, &int(1)), Ok(2));
    }

    #[test]
    fn square_ring() {
        // Hand count at resolution 1: 32 vertices, 64 edges, 32 squares.
        let ring: Vec<Brick> = (0..3)
            .flat_map(|x| (0..3).map(move |y| (x, y)))
            .filter(|&(x, y)| (x, y) != (1, 1))
            .map(|(x, y)| unit(&format!("r{x}{y}"), x, y, 0))
            .collect();
        let c = BrickComplex::new("ring", ring).unwrap();
        assert_eq!(voxel_chi(&c, &int(1)), Ok(0));
    }

    #[test]
    fn natural_resolution_is_rational_gcd() {
        let a = Brick::from_box(Vec3::from_ints(0, 0, 0), Vec3::from_ints(4, 6, 2), "a").unwrap();
        let c = BrickComplex::new("c", vec![a.clone()]).unwrap();
        assert_eq!(natural_resolution(&c), Ok(int(2)));
        let b = Brick::from_box(Vec3::new(int(4), int(0), int(0)), Vec3::new(crate::scalar::ratio(9, 2), int(6), int(2)), "b").unwrap();
        let c = BrickComplex::new("c", vec![a, b]).unwrap();
        assert_eq!(natural_resolution(&c), Ok(half()));
        assert_eq!(voxel_chi(&c, &half()), Ok(2));
    }

    #[test]
    fn rejects_skew_and_off_grid() {
        let skew = Brick::new("s", Vec3::zero(), [Vec3::from_ints(1, 1, 0), Vec3::from_ints(0, 1, 0), Vec3::from_ints(0, 0, 1)]).unwrap();
        let c = BrickComplex::new("s", vec![skew]).unwrap();
        assert_eq!(voxel_chi(&c, &int(1)), Err(VoxelError::NotRectilinear("s".into())));
        let c = BrickComplex::new("c", vec![unit("a", 0, 0, 0)]).unwrap();
        assert_eq!(voxel_chi(&c, &int(2)), Err(VoxelError::OffGrid("a".into())));
        assert_eq!(voxel_chi(&c, &int(0)), Err(VoxelError::BadResolution));
    }
}
