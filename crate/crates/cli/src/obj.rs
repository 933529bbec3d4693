//! Wavefront OBJ export of brick faces as quads.

use std::collections::HashMap;
use std::fmt::Write;

use brick_core::scalar::{int, to_decimal};
use brick_core::{exposed_faces, validate, Brick, BrickComplex, ComplexError, FaceIndex, Point3};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObjMesh {
    pub text: String,
    pub vertex_count: usize,
    pub face_count: usize,
}

/// Corners of a face, ordered so the right-hand normal points out of the brick.
fn outward_quad(b: &Brick, face: FaceIndex) -> [Point3; 4] {
    let mut quad = face.vertex_indices().map(|i| b.vertex(i));
    let normal = (&quad[1] - &quad[0]).cross(&(&quad[2] - &quad[1]));
    let along = normal.dot(b.generator(face.axis));
    let outward = if face.upper { along > int(0) } else { along < int(0) };
    if !outward {
        quad.swap(1, 3);
    }
    quad
}

/// Vertices are shared between faces that meet at exactly the same point and
/// numbered in order of first use, so the output is deterministic for a
/// given brick order.
pub fn export_obj(c: &BrickComplex, exposed_only: bool) -> Result<ObjMesh, ComplexError> {
    let faces: Vec<(usize, FaceIndex)> = if exposed_only {
        let index = c.index_of();
        exposed_faces(c, &validate(c))?.into_iter().map(|(label, f)| (index[label.as_str()], f)).collect()
    } else {
        (0..c.len()).flat_map(|i| FaceIndex::ALL.map(|f| (i, f))).collect()
    };
    let mut ids: HashMap<Point3, usize> = HashMap::new();
    let mut verts = String::new();
    let mut quads = String::new();
    for (i, face) in &faces {
        let b = &c.bricks()[*i];
        let mut corner_ids = [0usize; 4];
        for (slot, p) in corner_ids.iter_mut().zip(outward_quad(b, *face)) {
            let next = ids.len() + 1;
            *slot = *ids.entry(p.clone()).or_insert_with(|| {
                writeln!(verts, "v {} {} {}", to_decimal(&p.x), to_decimal(&p.y), to_decimal(&p.z)).unwrap();
                next
            });
        }
        let [a, b2, c2, d] = corner_ids;
        writeln!(quads, "f {a} {b2} {c2} {d}").unwrap();
    }
    let mut text = String::new();
    writeln!(text, "# {} bricks, {} quads{}", c.len(), faces.len(), if exposed_only { " (exposed only)" } else { "" }).unwrap();
    writeln!(text, "o {}", c.name).unwrap();
    text.push_str(&verts);
    text.push_str(&quads);
    Ok(ObjMesh { text, vertex_count: ids.len(), face_count: faces.len() })
}
