use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Whether a coordinate belongs to the base of a cotangent chart or is one of
/// its fibre (momentum) coordinates. Plain charts only carry base coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    Base,
    Momentum,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coordinate {
    pub name: String,
    pub degree: u32,
    /// Position in chart order; monomials are normal-ordered by it.
    pub ordinal: usize,
    pub role: Role,
}

impl Coordinate {
    pub fn is_odd(&self) -> bool {
        self.degree % 2 == 1
    }
}

#[derive(Debug, PartialEq, Eq)]
struct ChartData {
    coords: Vec<Coordinate>,
    shift: Option<u32>,
    partner: Vec<Option<usize>>,
}

/// An ordered set of graded coordinates generating a free graded commutative
/// polynomial algebra. Cheap to clone.
#[derive(Clone)]
pub struct Chart(Arc<ChartData>);

impl PartialEq for Chart {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Chart {}

impl fmt::Debug for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut list = f.debug_list();
        for c in &self.0.coords {
            list.entry(&format_args!("{}:{}", c.name, c.degree));
        }
        list.finish()
    }
}

impl Chart {
    /// Builds a chart from `(name, degree)` declarations, in declaration order.
    pub fn new<S: AsRef<str>>(decls: &[(S, i64)]) -> Result<Chart> {
        let mut seen = HashSet::new();
        let mut coords = Vec::with_capacity(decls.len());
        for (ordinal, (name, degree)) in decls.iter().enumerate() {
            let name = name.as_ref();
            if !seen.insert(name.to_string()) {
                return Err(Error::DuplicateCoordinate(name.to_string()));
            }
            if *degree < 0 {
                return Err(Error::NegativeDegree {
                    name: name.to_string(),
                    degree: *degree,
                });
            }
            coords.push(Coordinate {
                name: name.to_string(),
                degree: *degree as u32,
                ordinal,
                role: Role::Base,
            });
        }
        let partner = vec![None; coords.len()];
        Ok(Chart(Arc::new(ChartData {
            coords,
            shift: None,
            partner,
        })))
    }

    pub(crate) fn with_pairing(coords: Vec<Coordinate>, shift: u32, partner: Vec<Option<usize>>) -> Chart {
        debug_assert_eq!(coords.len(), partner.len());
        Chart(Arc::new(ChartData {
            coords,
            shift: Some(shift),
            partner,
        }))
    }

    pub fn empty() -> Chart {
        Chart::new::<&str>(&[]).expect("empty chart is valid")
    }

    pub fn dim(&self) -> usize {
        self.0.coords.len()
    }

    pub fn coords(&self) -> &[Coordinate] {
        &self.0.coords
    }

    pub fn coordinate(&self, index: usize) -> &Coordinate {
        &self.0.coords[index]
    }

    pub fn degree(&self, index: usize) -> i64 {
        self.0.coords[index].degree as i64
    }

    pub fn is_odd(&self, index: usize) -> bool {
        self.0.coords[index].is_odd()
    }

    pub fn role(&self, index: usize) -> Role {
        self.0.coords[index].role
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.coords.iter().position(|c| c.name == name)
    }

    pub fn lookup(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownCoordinate(name.to_string()))
    }

    pub fn shift(&self) -> Option<u32> {
        self.0.shift
    }

    pub fn partner(&self, index: usize) -> Option<usize> {
        self.0.partner[index]
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.0.coords.iter().map(|c| c.degree).max()
    }

    /// Dimension in the `m0|m1|...|mk` notation, counting coordinates per degree.
    pub fn signature(&self) -> String {
        let top = self.max_degree().unwrap_or(0) as usize;
        let mut counts = vec![0usize; top + 1];
        for c in &self.0.coords {
            counts[c.degree as usize] += 1;
        }
        counts.iter().map(|n| n.to_string()).collect::<Vec<_>>().join("|")
    }
}
