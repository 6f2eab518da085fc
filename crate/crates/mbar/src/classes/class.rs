use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use super::marking::{canonical_side_indices, BoundarySide, MarkingSet};
use super::ClassError;
use crate::arith::Rat;

/// Sparse exact-rational vector of intersection numbers of a curve class
/// against the boundary divisors. Keys are canonical sides; zero entries
/// are never stored.
#[derive(Clone, PartialEq)]
pub struct ClassVector {
    ms: Arc<MarkingSet>,
    entries: BTreeMap<BoundarySide, Rat>,
}

impl fmt::Debug for ClassVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .entries
            .iter()
            .map(|(s, v)| format!("{}*d{:?}", v, s.labels(&self.ms)))
            .collect();
        write!(f, "[{}]", terms.join(" + "))
    }
}

impl ClassVector {
    pub fn zero(ms: &Arc<MarkingSet>) -> Self {
        ClassVector {
            ms: ms.clone(),
            entries: BTreeMap::new(),
        }
    }

    pub fn marking_set(&self) -> &Arc<MarkingSet> {
        &self.ms
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&BoundarySide, &Rat)> {
        self.entries.iter()
    }

    /// Accumulate `v` into the canonical slot of `subset` (by index).
    pub(crate) fn add_at_indices(&mut self, subset: &[u8], v: Rat) -> Result<(), ClassError> {
        if v.is_zero() {
            return Ok(());
        }
        let side = canonical_side_indices(&self.ms, subset)?;
        let slot = self.entries.entry(side).or_insert_with(Rat::zero);
        *slot += v;
        if slot.is_zero() {
            // re-borrow to remove; clone key cheaply via lookup
            let side = canonical_side_indices(&self.ms, subset)?;
            self.entries.remove(&side);
        }
        Ok(())
    }

    pub fn add_at<S: AsRef<str>>(&mut self, subset: &[S], v: Rat) -> Result<(), ClassError> {
        let idx = self.ms.indices_of(subset)?;
        self.add_at_indices(&idx, v)
    }

    /// Intersection number with the boundary divisor of `subset`.
    pub fn coeff_at(&self, side: &BoundarySide) -> Rat {
        self.entries.get(side).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeff_at_labels<S: AsRef<str>>(&self, subset: &[S]) -> Result<Rat, ClassError> {
        let side = super::marking::canonical_side(&self.ms, subset)?;
        Ok(self.coeff_at(&side))
    }

    pub fn add(&self, other: &ClassVector) -> Result<ClassVector, ClassError> {
        if !Arc::ptr_eq(&self.ms, &other.ms) && self.ms != other.ms {
            return Err(ClassError::MarkingMismatch);
        }
        let mut out = self.clone();
        for (side, v) in &other.entries {
            let slot = out.entries.entry(side.clone()).or_insert_with(Rat::zero);
            *slot += v;
            if slot.is_zero() {
                out.entries.remove(side);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rat) -> ClassVector {
        if c.is_zero() {
            return ClassVector::zero(&self.ms);
        }
        ClassVector {
            ms: self.ms.clone(),
            entries: self
                .entries
                .iter()
                .map(|(s, v)| (s.clone(), v * c))
                .collect(),
        }
    }

    pub fn neg(&self) -> ClassVector {
        self.scale(&-Rat::from_integer(1.into()))
    }

    pub fn sub(&self, other: &ClassVector) -> Result<ClassVector, ClassError> {
        self.add(&other.neg())
    }

    /// Re-index onto a marking set with the same labels (possibly another
    /// order); canonical representatives are recomputed.
    pub fn with_marking(&self, ms: &Arc<MarkingSet>) -> Result<ClassVector, ClassError> {
        if !self.ms.same_labels(ms) {
            return Err(ClassError::MarkingMismatch);
        }
        let mut out = ClassVector::zero(ms);
        for (side, v) in &self.entries {
            let idx: Vec<u8> = side
                .labels(&self.ms)
                .iter()
                .map(|l| ms.index_of(l).unwrap())
                .collect();
            out.add_at_indices(&idx, v.clone())?;
        }
        Ok(out)
    }

    /// All entries integral?
    pub fn is_integral(&self) -> bool {
        self.entries.values().all(|v| v.is_integer())
    }

    /// Human-readable difference report, one line per residual side.
    pub fn diff_report(&self, other: &ClassVector) -> Vec<String> {
        let mut sides: Vec<&BoundarySide> = self.entries.keys().collect();
        for s in other.entries.keys() {
            if !self.entries.contains_key(s) {
                sides.push(s);
            }
        }
        sides.sort();
        sides.dedup();
        let mut out = Vec::new();
        for s in sides {
            let a = self.coeff_at(s);
            let b = other.coeff_at(s);
            if a != b {
                out.push(format!(
                    "delta_{{{}}}: {} vs {} (residual {})",
                    s.labels(&self.ms).join(","),
                    a,
                    b,
                    &a - &b
                ));
            }
        }
        out
    }
}
