//! Brick complexes, proper-joining validation and the brick graph.

use std::collections::{BTreeMap, HashMap, HashSet};

use rayon::prelude::*;
use thiserror::Error;

use crate::contact::{classify_contact, ContactClass};
use crate::geometry::Brick;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("duplicate brick id `{0}`")]
    DuplicateId(String),
    #[error("report does not match complex (brick labels differ)")]
    StaleReport,
}

/// A finite, labeled set of bricks. List order defines node indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrickComplex {
    pub name: String,
    pub provenance: String,
    bricks: Vec<Brick>,
}

impl BrickComplex {
    pub fn new(name: impl Into<String>, bricks: Vec<Brick>) -> Result<Self, ComplexError> {
        let mut seen = HashSet::new();
        for b in &bricks {
            if !seen.insert(b.id()) {
                return Err(ComplexError::DuplicateId(b.id().to_string()));
            }
        }
        Ok(Self { name: name.into(), provenance: String::new(), bricks })
    }

    pub fn with_provenance(mut self, provenance: impl Into<String>) -> Self {
        self.provenance = provenance.into();
        self
    }

    pub fn bricks(&self) -> &[Brick] {
        &self.bricks
    }

    pub fn len(&self) -> usize {
        self.bricks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bricks.is_empty()
    }

    pub fn labels(&self) -> Vec<String> {
        self.bricks.iter().map(|b| b.id().to_string()).collect()
    }

    pub fn get(&self, id: &str) -> Option<&Brick> {
        self.bricks.iter().find(|b| b.id() == id)
    }

    pub fn index_of(&self) -> HashMap<&str, usize> {
        self.bricks.iter().enumerate().map(|(i, b)| (b.id(), i)).collect()
    }

    /// Copy with bricks sorted by id.
    pub fn sorted_by_id(&self) -> Self {
        let mut bricks = self.bricks.clone();
        bricks.sort_by(|a, b| a.id().cmp(b.id()));
        Self { bricks, ..self.clone() }
    }
}

/// One non-disjoint pair. `a < b` by label and `class` is oriented (a, b).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Contact {
    pub a: String,
    pub b: String,
    pub class: ContactClass,
}

/// Audit of every brick pair of a complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    /// Brick labels in complex order; used to detect stale reports.
    pub labels: Vec<String>,
    pub contacts: Vec<Contact>,
    pub improper_pairs: Vec<Contact>,
    pub properly_joined: bool,
}

impl ValidationReport {
    pub fn check_matches(&self, c: &BrickComplex) -> Result<(), ComplexError> {
        let same = self.labels.len() == c.len() && self.labels.iter().zip(c.bricks()).all(|(l, b)| l == b.id());
        if same {
            Ok(())
        } else {
            Err(ComplexError::StaleReport)
        }
    }

    pub fn whole_face_contacts(&self) -> impl Iterator<Item = &Contact> {
        self.contacts.iter().filter(|c| matches!(c.class, ContactClass::WholeFace { .. }))
    }

    pub fn count_kind(&self, kind: &str) -> usize {
        self.contacts.iter().filter(|c| c.class.kind() == kind).count()
    }
}

/// Classifies all `n(n-1)/2` pairs. Pairs are scanned in parallel; the
/// result is sorted by label pair so it does not depend on scheduling.
pub fn validate(c: &BrickComplex) -> ValidationReport {
    let bricks = c.bricks();
    let n = bricks.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut contacts: Vec<Contact> = pairs
        .par_iter()
        .filter_map(|&(i, j)| {
            let (first, second) = if bricks[i].id() <= bricks[j].id() { (i, j) } else { (j, i) };
            let class = classify_contact(&bricks[first], &bricks[second]);
            (!class.is_disjoint()).then(|| Contact {
                a: bricks[first].id().to_string(),
                b: bricks[second].id().to_string(),
                class,
            })
        })
        .collect();
    contacts.sort_by(|x, y| (&x.a, &x.b).cmp(&(&y.a, &y.b)));
    let improper_pairs: Vec<Contact> = contacts.iter().filter(|c| c.class.is_improper()).cloned().collect();
    ValidationReport {
        labels: c.labels(),
        properly_joined: improper_pairs.is_empty(),
        contacts,
        improper_pairs,
    }
}

/// Nodes are bricks, arcs are whole-face adjacencies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrickGraph {
    pub nodes: Vec<String>,
    /// Unordered pairs stored as (smaller label, larger label), sorted.
    pub arcs: Vec<(String, String)>,
    pub degree: BTreeMap<String, usize>,
    /// Copied from the report: arcs of an improperly joined complex only
    /// reflect its whole-face contacts.
    pub properly_joined: bool,
}

impl BrickGraph {
    pub fn min_degree(&self) -> Option<usize> {
        self.degree.values().copied().min()
    }

    pub fn neighbors(&self, label: &str) -> Vec<&str> {
        self.arcs
            .iter()
            .filter_map(|(a, b)| {
                if a == label {
                    Some(b.as_str())
                } else if b == label {
                    Some(a.as_str())
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn component_count(&self) -> usize {
        let index: HashMap<&str, usize> = self.nodes.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let mut uf = crate::union_find::UnionFind::new(self.nodes.len());
        for (a, b) in &self.arcs {
            uf.union(index[a.as_str()], index[b.as_str()]);
        }
        (0..self.nodes.len()).filter(|&i| uf.find(i) == i).count()
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }
}

pub fn brick_graph(c: &BrickComplex, r: &ValidationReport) -> Result<BrickGraph, ComplexError> {
    r.check_matches(c)?;
    let mut degree: BTreeMap<String, usize> = c.labels().into_iter().map(|l| (l, 0)).collect();
    let mut arcs = Vec::new();
    for contact in r.whole_face_contacts() {
        *degree.get_mut(&contact.a).ok_or(ComplexError::StaleReport)? += 1;
        *degree.get_mut(&contact.b).ok_or(ComplexError::StaleReport)? += 1;
        arcs.push((contact.a.clone(), contact.b.clone()));
    }
    // One class per pair, so a pair can never contribute two arcs.
    debug_assert!(arcs.windows(2).all(|w| w[0] != w[1]));
    Ok(BrickGraph { nodes: c.labels(), arcs, degree, properly_joined: r.properly_joined })
}

/// Bricks of degree at most three, sorted by label.
pub fn corners(g: &BrickGraph) -> Vec<String> {
    g.degree.iter().filter(|(_, &d)| d <= 3).map(|(l, _)| l.clone()).collect()
}

pub fn degree_histogram(g: &BrickGraph) -> BTreeMap<usize, usize> {
    let mut hist = BTreeMap::new();
    for &d in g.degree.values() {
        *hist.entry(d).or_insert(0) += 1;
    }
    hist
}
