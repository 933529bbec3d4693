//! Text format for refinement schedules.
//!
//! One brick per line, `<id> <operator> [arguments]`:
//!
//! ```text
//! C1 octasect
//! x1 quarter          # long direction = strictly longest generator
//! x2 quarter u        # long direction named explicitly
//! x3 split v 1/3 2/3  # cut along generator v at the given fractions
//! z1 keep
//! ```
//!
//! Unlisted bricks are kept. Trailing `#` comments are allowed.

use std::collections::BTreeMap;
use std::fmt::Write;

use brick_core::geometry::GENERATOR_NAMES;
use brick_core::scalar::format_scalar;
use brick_core::{Operator, RefinementSchedule};

use crate::lexer::{content_lines, Cursor, ParseError};

fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(a, _)| a)
}

pub fn parse_schedule_file(text: &str) -> Result<RefinementSchedule, ParseError> {
    let mut schedule = RefinementSchedule::new();
    let mut seen: BTreeMap<String, usize> = BTreeMap::new();
    for (line_no, line) in content_lines(text) {
        let mut cur = Cursor::new(line_no, strip_comment(line));
        let id = cur.next("a brick id")?;
        if let Some(prev) = seen.get(id.text) {
            return Err(cur.error_at(id, format!("brick `{}` already scheduled on line {prev}", id.text)));
        }
        let op_tok = cur.next("an operator")?;
        let direction = |cur: &mut Cursor<'_>| -> Result<usize, ParseError> {
            let t = cur.next("a generator name (u, v or w)")?;
            GENERATOR_NAMES
                .iter()
                .position(|n| t.text.len() == 1 && t.text.starts_with(*n))
                .ok_or_else(|| cur.error_at(t, format!("expected u, v or w, found `{}`", t.text)))
        };
        let op = match op_tok.text {
            "keep" => Operator::Keep,
            "octasect" => Operator::Octasect,
            "quarter" => {
                if cur.at_end() {
                    Operator::QuarterLengthwise(None)
                } else {
                    Operator::QuarterLengthwise(Some(direction(&mut cur)?))
                }
            }
            "split" => {
                let d = direction(&mut cur)?;
                let mut fractions = vec![cur.scalar()?];
                while !cur.at_end() {
                    fractions.push(cur.scalar()?);
                }
                Operator::SplitAt { direction: d, fractions }
            }
            other => {
                return Err(cur.error_at(op_tok, format!("unknown operator `{other}` (keep, octasect, quarter, split)")))
            }
        };
        cur.finish()?;
        seen.insert(id.text.to_string(), line_no);
        schedule.set(id.text, op);
    }
    Ok(schedule)
}

pub fn emit_schedule_file(s: &RefinementSchedule) -> String {
    let mut out = String::new();
    for (id, op) in &s.ops {
        match op {
            Operator::Keep => writeln!(out, "{id} keep"),
            Operator::Octasect => writeln!(out, "{id} octasect"),
            Operator::QuarterLengthwise(None) => writeln!(out, "{id} quarter"),
            Operator::QuarterLengthwise(Some(d)) => writeln!(out, "{id} quarter {}", GENERATOR_NAMES[*d]),
            Operator::SplitAt { direction, fractions } => {
                let fr: Vec<String> = fractions.iter().map(format_scalar).collect();
                writeln!(out, "{id} split {} {}", GENERATOR_NAMES[*direction], fr.join(" "))
            }
        }
        .unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use brick_core::scalar::ratio;

    #[test]
    fn parses_every_operator() {
        let s = parse_schedule_file("C1 octasect\nx1 quarter # default\nx2 quarter w\nx3 split v 1/3 2/3\nz1 keep\n").unwrap();
        assert_eq!(s.ops["C1"], Operator::Octasect);
        assert_eq!(s.ops["x1"], Operator::QuarterLengthwise(None));
        assert_eq!(s.ops["x2"], Operator::QuarterLengthwise(Some(2)));
        assert_eq!(s.ops["x3"], Operator::SplitAt { direction: 1, fractions: vec![ratio(1, 3), ratio(2, 3)] });
        assert_eq!(s.ops["z1"], Operator::Keep);
        assert_eq!(parse_schedule_file(&emit_schedule_file(&s)).unwrap(), s);
    }

    #[test]
    fn rejects_bad_lines() {
        let e = parse_schedule_file("a octasect\na keep\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 1));
        let e = parse_schedule_file("a split q 1/2\n").unwrap_err();
        assert_eq!(e.column, 9);
        assert!(parse_schedule_file("a split u\n").is_err());
        assert!(parse_schedule_file("a shred\n").is_err());
        assert!(parse_schedule_file("a octasect now\n").is_err());
    }

    #[test]
    fn empty_file_is_empty_schedule() {
        assert!(parse_schedule_file("").unwrap().is_empty());
    }
}
