//! Text format for per-piece vertex/edge/face tables.
//!
//! ```text
//! # multiplicity v e f label
//! piece 4 8 12 3 cubes
//! piece 6 0 4 4 connectors
//! ```

use std::fmt::Write;

use brick_core::{PieceRow, PieceTable};

use crate::lexer::{content_lines, Cursor, ParseError};

/// Parses rows. An empty table parses fine; the chi calculation rejects it.
pub fn parse_piece_file(text: &str) -> Result<PieceTable, ParseError> {
    let mut rows = Vec::new();
    for (line_no, line) in content_lines(text) {
        let mut cur = Cursor::new(line_no, line);
        let head = cur.next("`piece`")?;
        if head.text != "piece" {
            return Err(cur.error_at(head, format!("expected `piece`, found `{}`", head.text)));
        }
        let multiplicity = cur.count("multiplicity")?;
        let v = cur.count("vertex count")?;
        let e = cur.count("edge count")?;
        let f = cur.count("face count")?;
        let label = cur.rest("a label")?;
        rows.push(PieceRow::new(label, multiplicity, v, e, f));
    }
    Ok(PieceTable { rows })
}

pub fn emit_piece_file(t: &PieceTable) -> String {
    let mut out = String::from("# multiplicity v e f label\n");
    for r in &t.rows {
        writeln!(out, "piece {} {} {} {} {}", r.multiplicity, r.v, r.e, r.f, r.label).unwrap();
    }
    out
}
