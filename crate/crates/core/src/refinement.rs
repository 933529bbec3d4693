//! Splitting operators and refinement schedules.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::complex::{validate, BrickComplex, ComplexError, ValidationReport};
use crate::contact::ContactClass;
use crate::geometry::{Brick, GENERATOR_NAMES};
use crate::scalar::{format_scalar, half, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RefinementError {
    #[error("split fraction {0} is outside the open interval (0, 1)")]
    FractionOutOfRange(String),
    #[error("split fractions for `{0}` must be strictly increasing")]
    FractionsNotIncreasing(String),
    #[error("generator index {0} is out of range (expected 0, 1 or 2)")]
    BadDirection(usize),
    #[error("brick `{0}` has no unique longest generator; name the long direction explicitly")]
    AmbiguousLongDirection(String),
    #[error("schedule references unknown brick `{0}`")]
    UnknownLabel(String),
    #[error("refinement changed total volume from {before} to {after}")]
    VolumeChanged { before: String, after: String },
    #[error("refinement broke proper joining: `{a}` / `{b}` meet as {kind}")]
    ProperJoiningLost { a: String, b: String, kind: String },
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// What to do with one brick.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Operator {
    Keep,
    Octasect,
    QuarterLengthwise(Option<usize>),
    SplitAt { direction: usize, fractions: Vec<Scalar> },
}

/// Per-brick operators; unlisted bricks are kept.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RefinementSchedule {
    pub ops: BTreeMap<String, Operator>,
}

impl RefinementSchedule {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, label: impl Into<String>, op: Operator) -> &mut Self {
        self.ops.insert(label.into(), op);
        self
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }
}

/// Cube-shaped bricks are octasected, everything else is quartered lengthwise.
pub fn standard_schedule(c: &BrickComplex) -> RefinementSchedule {
    let ops = c
        .bricks()
        .iter()
        .map(|b| {
            let op = if b.is_cube_shaped() { Operator::Octasect } else { Operator::QuarterLengthwise(None) };
            (b.id().to_string(), op)
        })
        .collect();
    RefinementSchedule { ops }
}

fn check_direction(direction: usize) -> Result<(), RefinementError> {
    if direction < 3 {
        Ok(())
    } else {
        Err(RefinementError::BadDirection(direction))
    }
}

fn split_raw(b: &Brick, direction: usize, t: &Scalar) -> (Brick, Brick) {
    let g = b.generator(direction);
    let mut lower = b.generators().clone();
    let mut upper = b.generators().clone();
    lower[direction] = g.scale(t);
    upper[direction] = g.scale(&(Scalar::one() - t));
    let upper_origin = b.origin() + &lower[direction];
    (
        Brick::new(format!("{}/s0", b.id()), b.origin().clone(), lower).expect("scaled generator keeps volume"),
        Brick::new(format!("{}/s1", b.id()), upper_origin, upper).expect("scaled generator keeps volume"),
    )
}

/// Cuts `b` by the plane at coefficient `t` along generator `direction`.
/// Children are labeled `<id>/s0` (near the origin) and `<id>/s1`.
pub fn split_at(b: &Brick, direction: usize, t: &Scalar) -> Result<(Brick, Brick), RefinementError> {
    check_direction(direction)?;
    if *t <= Scalar::zero() || *t >= Scalar::one() {
        return Err(RefinementError::FractionOutOfRange(format_scalar(t)));
    }
    Ok(split_raw(b, direction, t))
}

/// Cuts at every fraction in `fractions`; children `<id>/s0 .. <id>/sN`.
pub fn split_many(b: &Brick, direction: usize, fractions: &[Scalar]) -> Result<Vec<Brick>, RefinementError> {
    check_direction(direction)?;
    for t in fractions {
        if *t <= Scalar::zero() || *t >= Scalar::one() {
            return Err(RefinementError::FractionOutOfRange(format_scalar(t)));
        }
    }
    if fractions.windows(2).any(|w| w[0] >= w[1]) {
        return Err(RefinementError::FractionsNotIncreasing(b.id().to_string()));
    }
    let g = b.generator(direction);
    let mut cuts = vec![Scalar::zero()];
    cuts.extend(fractions.iter().cloned());
    cuts.push(Scalar::one());
    Ok(cuts
        .windows(2)
        .enumerate()
        .map(|(k, w)| {
            let mut gens = b.generators().clone();
            gens[direction] = g.scale(&(&w[1] - &w[0]));
            let origin = b.origin() + &g.scale(&w[0]);
            Brick::new(format!("{}/s{k}", b.id()), origin, gens).expect("positive slice keeps volume")
        })
        .collect())
}

/// Midpoint split along all three generators. Child `<id>/abc` holds the
/// octant with coefficient bits a, b, c for u, v, w.
pub fn octasect(b: &Brick) -> Vec<Brick> {
    let h = half();
    let gens = b.generators().clone().map(|g| g.scale(&h));
    (0..8)
        .map(|i: usize| {
            let bits: Vec<usize> = (0..3).map(|k| (i >> (2 - k)) & 1).collect();
            let mut origin = b.origin().clone();
            for (k, &bit) in bits.iter().enumerate() {
                if bit == 1 {
                    origin = &origin + &gens[k];
                }
            }
            let id = format!("{}/{}{}{}", b.id(), bits[0], bits[1], bits[2]);
            Brick::new(id, origin, gens.clone()).expect("halved generators keep volume")
        })
        .collect()
}

/// Index of the strictly longest generator, if there is one.
pub fn longest_direction(b: &Brick) -> Option<usize> {
    let lens: Vec<Scalar> = b.generators().iter().map(|g| g.norm_squared()).collect();
    let best = (0..3).max_by(|&i, &j| lens[i].cmp(&lens[j]))?;
    let ties = lens.iter().filter(|l| **l == lens[best]).count();
    (ties == 1).then_some(best)
}

/// Midpoint split in the two directions other than `long_dir` (or the
/// strictly longest generator). Children `<id>/q0 .. <id>/q3`, ordered by
/// (lower-index direction bit, higher-index direction bit).
pub fn quarter_lengthwise(b: &Brick, long_dir: Option<usize>) -> Result<Vec<Brick>, RefinementError> {
    let long = match long_dir {
        Some(d) => {
            check_direction(d)?;
            d
        }
        None => longest_direction(b).ok_or_else(|| RefinementError::AmbiguousLongDirection(b.id().to_string()))?,
    };
    let h = half();
    let cross: Vec<usize> = (0..3).filter(|&k| k != long).collect();
    let mut gens = b.generators().clone();
    for &k in &cross {
        gens[k] = gens[k].scale(&h);
    }
    Ok((0..4)
        .map(|q: usize| {
            let mut origin = b.origin().clone();
            if q & 2 != 0 {
                origin = &origin + &gens[cross[0]];
            }
            if q & 1 != 0 {
                origin = &origin + &gens[cross[1]];
            }
            Brick::new(format!("{}/q{q}", b.id()), origin, gens.clone()).expect("halved generators keep volume")
        })
        .collect())
}

pub fn apply_operator(b: &Brick, op: &Operator) -> Result<Vec<Brick>, RefinementError> {
    match op {
        Operator::Keep => Ok(vec![b.clone()]),
        Operator::Octasect => Ok(octasect(b)),
        Operator::QuarterLengthwise(dir) => quarter_lengthwise(b, *dir),
        Operator::SplitAt { direction, fractions } => split_many(b, *direction, fractions),
    }
}

fn total_volume(c: &BrickComplex) -> Scalar {
    c.bricks().iter().map(Brick::volume).sum()
}

/// Replaces every scheduled brick by its children, in parent order.
///
/// Total volume is checked exactly. When the input is properly joined the
/// output is validated as well, and a pair that lost proper joining (for
/// example a kept brick facing an octasected neighbor) is an error.
pub fn apply_schedule(c: &BrickComplex, s: &RefinementSchedule) -> Result<BrickComplex, RefinementError> {
    let index = c.index_of();
    if let Some(unknown) = s.ops.keys().find(|l| !index.contains_key(l.as_str())) {
        return Err(RefinementError::UnknownLabel(unknown.clone()));
    }
    if s.is_empty() {
        return Ok(c.clone());
    }
    let mut bricks = Vec::new();
    for b in c.bricks() {
        let op = s.ops.get(b.id()).unwrap_or(&Operator::Keep);
        bricks.extend(apply_operator(b, op)?);
    }
    let refined = BrickComplex::new(c.name.clone(), bricks)?.with_provenance(if c.provenance.is_empty() {
        "refined".to_string()
    } else {
        format!("{}; refined", c.provenance)
    });
    let (before, after) = (total_volume(c), total_volume(&refined));
    if before != after {
        return Err(RefinementError::VolumeChanged { before: format_scalar(&before), after: format_scalar(&after) });
    }
    if validate(c).properly_joined {
        let report = validate(&refined);
        if let Some(bad) = report.improper_pairs.first() {
            return Err(RefinementError::ProperJoiningLost {
                a: bad.a.clone(),
                b: bad.b.clone(),
                kind: bad.class.kind().to_string(),
            });
        }
    }
    Ok(refined)
}

/// For every brick: does some opposite face pair (k⁺, k⁻) appear among its
/// whole-face contacts?
pub fn two_opposite_covered(c: &BrickComplex, r: &ValidationReport) -> Result<BTreeMap<String, bool>, ComplexError> {
    r.check_matches(c)?;
    let mut covered: HashMap<&str, [bool; 6]> = c.bricks().iter().map(|b| (b.id(), [false; 6])).collect();
    for contact in r.whole_face_contacts() {
        if let ContactClass::WholeFace { face_a, face_b } = contact.class {
            covered.get_mut(contact.a.as_str()).ok_or(ComplexError::StaleReport)?[face_a.ordinal()] = true;
            covered.get_mut(contact.b.as_str()).ok_or(ComplexError::StaleReport)?[face_b.ordinal()] = true;
        }
    }
    Ok(covered
        .into_iter()
        .map(|(label, faces)| (label.to_string(), (0..3).any(|k| faces[2 * k] && faces[2 * k + 1])))
        .collect())
}

/// Human name of a generator index, for diagnostics.
pub fn direction_name(direction: usize) -> char {
    GENERATOR_NAMES.get(direction).copied().unwrap_or('?')
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::brick_graph;
    use crate::geometry::Vec3;
    use crate::scalar::{int, ratio};

    fn boxed(id: &str, min: (i64, i64, i64), max: (i64, i64, i64)) -> Brick {
        Brick::from_box(Vec3::from_ints(min.0, min.1, min.2), Vec3::from_ints(max.0, max.1, max.2), id).unwrap()
    }

    fn unit() -> Brick {
        boxed("c", (0, 0, 0), (1, 1, 1))
    }

    #[test]
    fn split_unit_cube_in_half() {
        let (a, b) = split_at(&unit(), 0, &half()).unwrap();
        assert_eq!(a.generator(0), &Vec3::new(ratio(1, 2), int(0), int(0)));
        assert_eq!(b.origin(), &Vec3::new(ratio(1, 2), int(0), int(0)));
        assert_eq!(a.volume() + b.volume(), int(1));
        let c = BrickComplex::new("halves", vec![a, b]).unwrap();
        let r = validate(&c);
        assert!(r.properly_joined);
        assert_eq!(r.count_kind("whole-face"), 1);
    }

    #[test]
    fn split_skew_brick_is_linear() {
        let b = Brick::new("s", Vec3::zero(), [Vec3::from_ints(10, 20, 20), Vec3::from_ints(0, 10, 0), Vec3::from_ints(0, 0, 10)])
            .unwrap();
        let (lo, hi) = split_at(&b, 0, &half()).unwrap();
        assert_eq!(lo.generator(0), &Vec3::from_ints(5, 10, 10));
        assert_eq!(hi.generator(0), &Vec3::from_ints(5, 10, 10));
    }

    #[test]
    fn split_rejects_endpoints() {
        assert!(matches!(split_at(&unit(), 0, &int(0)), Err(RefinementError::FractionOutOfRange(_))));
        assert!(matches!(split_at(&unit(), 0, &int(1)), Err(RefinementError::FractionOutOfRange(_))));
        assert!(matches!(split_at(&unit(), 3, &half()), Err(RefinementError::BadDirection(3))));
        assert!(matches!(
            split_many(&unit(), 0, &[ratio(2, 3), ratio(1, 3)]),
            Err(RefinementError::FractionsNotIncreasing(_))
        ));
    }

    #[test]
    fn split_many_tiles() {
        let parts = split_many(&unit(), 2, &[ratio(1, 3), ratio(1, 2)]).unwrap();
        assert_eq!(parts.len(), 3);
        let vol: Scalar = parts.iter().map(Brick::volume).sum();
        assert_eq!(vol, int(1));
        let r = validate(&BrickComplex::new("p", parts).unwrap());
        assert!(r.properly_joined);
        assert_eq!(r.count_kind("whole-face"), 2);
    }

    #[test]
    fn octasect_box() {
        let children = octasect(&boxed("b", (0, 0, 0), (2, 4, 6)));
        assert_eq!(children.len(), 8);
        for ch in &children {
            assert_eq!(ch.generators(), &[Vec3::from_ints(1, 0, 0), Vec3::from_ints(0, 2, 0), Vec3::from_ints(0, 0, 3)]);
        }
        assert_eq!(children[5].id(), "b/101");
        let c = BrickComplex::new("oct", children).unwrap();
        let g = brick_graph(&c, &validate(&c)).unwrap();
        assert!(g.degree.values().all(|&d| d == 3));
    }

    #[test]
    fn octasect_unit_cube() {
        let children = octasect(&unit());
        assert!(children.iter().all(|ch| ch.volume() == ratio(1, 8) && ch.is_cube_shaped()));
    }

    #[test]
    fn quarter_bar() {
        let bars = quarter_lengthwise(&boxed("bar", (0, 0, 0), (10, 1, 1)), None).unwrap();
        assert_eq!(bars.len(), 4);
        for b in &bars {
            assert_eq!(b.generators(), &[Vec3::from_ints(10, 0, 0), Vec3::new(int(0), half(), int(0)), Vec3::new(int(0), int(0), half())]);
        }
        let c = BrickComplex::new("bars", bars).unwrap();
        let g = brick_graph(&c, &validate(&c)).unwrap();
        assert!(g.degree.values().all(|&d| d == 2));
    }

    #[test]
    fn quarter_cube_is_ambiguous() {
        assert_eq!(
            quarter_lengthwise(&unit(), None),
            Err(RefinementError::AmbiguousLongDirection("c".into()))
        );
        assert_eq!(quarter_lengthwise(&unit(), Some(1)).unwrap().len(), 4);
    }

    #[test]
    fn quarter_skew_connector() {
        let b = Brick::new(
            "link",
            Vec3::from_ints(15, 15, 25),
            [Vec3::from_ints(10, 20, 20), Vec3::from_ints(0, 10, 0), Vec3::from_ints(0, 0, 10)],
        )
        .unwrap();
        // |u|^2 = 100 + 400 + 400 = 900 against 100 for v and w.
        assert_eq!(b.generator(0).norm_squared(), int(900));
        assert_eq!(longest_direction(&b), Some(0));
        let parts = quarter_lengthwise(&b, None).unwrap();
        for p in &parts {
            assert_eq!(p.generator(1), &Vec3::from_ints(0, 5, 0));
            assert_eq!(p.generator(2), &Vec3::from_ints(0, 0, 5));
        }
    }

    #[test]
    fn schedule_basics() {
        let c = BrickComplex::new("one", vec![unit()]).unwrap();
        assert_eq!(apply_schedule(&c, &RefinementSchedule::new()).unwrap(), c);
        let mut s = RefinementSchedule::new();
        s.set("c", Operator::Octasect);
        let out = apply_schedule(&c, &s).unwrap();
        assert_eq!(out.len(), 8);
        assert_eq!(out.bricks().iter().map(Brick::volume).sum::<Scalar>(), int(1));
        let mut bad = RefinementSchedule::new();
        bad.set("nope", Operator::Keep);
        assert_eq!(apply_schedule(&c, &bad), Err(RefinementError::UnknownLabel("nope".into())));
    }

    #[test]
    fn mismatched_neighbors_lose_proper_joining() {
        let c = BrickComplex::new("pair", vec![boxed("a", (0, 0, 0), (1, 1, 1)), boxed("b", (1, 0, 0), (2, 1, 1))]).unwrap();
        let mut s = RefinementSchedule::new();
        s.set("a", Operator::Octasect);
        assert!(matches!(apply_schedule(&c, &s), Err(RefinementError::ProperJoiningLost { .. })));
    }

    #[test]
    fn opposite_cover() {
        let c = BrickComplex::new(
            "col",
            vec![boxed("c0", (0, 0, 0), (1, 1, 1)), boxed("c1", (0, 0, 1), (1, 1, 2)), boxed("c2", (0, 0, 2), (1, 1, 3))],
        )
        .unwrap();
        let cover = two_opposite_covered(&c, &validate(&c)).unwrap();
        assert_eq!(cover["c0"], false);
        assert_eq!(cover["c1"], true);
        assert_eq!(cover["c2"], false);
        let single = BrickComplex::new("one", vec![unit()]).unwrap();
        assert_eq!(two_opposite_covered(&single, &validate(&single)).unwrap()["c"], false);
    }
}
