//! Text format for brick complexes.
//!
//! ```text
//! # comment lines and blank lines are ignored
//! name ring
//! provenance optional free text
//! brick a origin 0 0 0 u 1 0 0 v 0 1 0 w 0 0 1
//! brick b origin 1/2 0 0 u 1 0 0 v 0 1 0 w 0 0 1
//! end 2
//! ```
//!
//! `name` comes first and is required; `provenance` is optional. Scalars are
//! integers or fractions `n/d`. The closing `end <count>` line must match the
//! number of bricks, which catches truncated files. Canonical output lists
//! bricks sorted by id with no comments.

use std::collections::HashMap;
use std::fmt::Write;

use brick_core::scalar::format_scalar;
use brick_core::{Brick, BrickComplex, Vec3};

use crate::lexer::{content_lines, Cursor, ParseError};

pub fn parse_brick_file(text: &str) -> Result<BrickComplex, ParseError> {
    let mut name: Option<String> = None;
    let mut provenance: Option<String> = None;
    let mut bricks: Vec<Brick> = Vec::new();
    let mut first_line: HashMap<String, usize> = HashMap::new();
    let mut ended: Option<usize> = None;
    let mut last_line = 0;

    for (line_no, line) in content_lines(text) {
        last_line = line_no;
        let mut cur = Cursor::new(line_no, line);
        let head = cur.next("a keyword")?;
        if let Some(end_line) = ended {
            return Err(cur.error_at(head, format!("content after `end` on line {end_line}")));
        }
        match head.text {
            "name" => {
                if name.is_some() {
                    return Err(cur.error_at(head, "second `name` line"));
                }
                name = Some(cur.rest("a name")?.to_string());
            }
            "provenance" => {
                if name.is_none() {
                    return Err(cur.error_at(head, "`name` must come first"));
                }
                if provenance.is_some() || !bricks.is_empty() {
                    return Err(cur.error_at(head, "`provenance` must appear once, before any brick"));
                }
                provenance = Some(cur.rest("provenance text")?.to_string());
            }
            "brick" => {
                if name.is_none() {
                    return Err(cur.error_at(head, "`name` must come first"));
                }
                let id = cur.next("a brick id")?;
                if let Some(prev) = first_line.get(id.text) {
                    return Err(cur.error_at(id, format!("duplicate brick id `{}` (first defined on line {prev})", id.text)));
                }
                let vec3 = |cur: &mut Cursor<'_>, kw: &str| -> Result<Vec3, ParseError> {
                    cur.keyword(kw)?;
                    Ok(Vec3::new(cur.scalar()?, cur.scalar()?, cur.scalar()?))
                };
                let origin = vec3(&mut cur, "origin")?;
                let u = vec3(&mut cur, "u")?;
                let v = vec3(&mut cur, "v")?;
                let w = vec3(&mut cur, "w")?;
                cur.finish()?;
                let brick = Brick::new(id.text, origin, [u, v, w]).map_err(|e| cur.error_at(head, e.to_string()))?;
                first_line.insert(id.text.to_string(), line_no);
                bricks.push(brick);
            }
            "end" => {
                let t = cur.next("the brick count")?;
                let count: usize = t.text.parse().map_err(|_| cur.error_at(t, format!("`{}` is not a brick count", t.text)))?;
                cur.finish()?;
                if count != bricks.len() {
                    return Err(cur.error_at(t, format!("`end` declares {count} bricks but {} were read", bricks.len())));
                }
                ended = Some(line_no);
            }
            other => return Err(cur.error_at(head, format!("unknown keyword `{other}`"))),
        }
    }
    let name = name.ok_or_else(|| ParseError::new(1, 1, "missing `name` line"))?;
    if ended.is_none() {
        return Err(ParseError::new(last_line + 1, 1, "missing `end` line (file truncated?)"));
    }
    let complex = BrickComplex::new(name, bricks).expect("ids checked while parsing");
    Ok(match provenance {
        Some(p) => complex.with_provenance(p),
        None => complex,
    })
}

fn push_vec(out: &mut String, v: &Vec3) {
    for c in v.components() {
        out.push(' ');
        out.push_str(&format_scalar(c));
    }
}

/// Canonical text: bricks sorted by id.
pub fn emit_brick_file(c: &BrickComplex) -> String {
    let mut out = String::new();
    writeln!(out, "name {}", c.name).unwrap();
    if !c.provenance.is_empty() {
        writeln!(out, "provenance {}", c.provenance).unwrap();
    }
    let sorted = c.sorted_by_id();
    for b in sorted.bricks() {
        write!(out, "brick {} origin", b.id()).unwrap();
        push_vec(&mut out, b.origin());
        for (name, g) in ["u", "v", "w"].iter().zip(b.generators()) {
            write!(out, " {name}").unwrap();
            push_vec(&mut out, g);
        }
        out.push('\n');
    }
    writeln!(out, "end {}", c.len()).unwrap();
    out
}
