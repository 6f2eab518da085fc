use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

use super::ClassError;

/// Ordered set of n >= 4 distinct marking labels. The order is fixed at
/// construction and used for every tie-break (notably the canonical side
/// at exactly half size).
#[derive(Clone, PartialEq, Eq)]
pub struct MarkingSet {
    labels: Vec<String>,
    index: HashMap<String, u8>,
}

impl fmt::Debug for MarkingSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Markings{:?}", self.labels)
    }
}

impl MarkingSet {
    pub fn new<S: AsRef<str>>(labels: &[S]) -> Result<Arc<Self>, ClassError> {
        if labels.len() < 4 {
            return Err(ClassError::TooFewLabels(labels.len()));
        }
        if labels.len() > u8::MAX as usize {
            return Err(ClassError::Other("too many labels".into()));
        }
        let mut index = HashMap::new();
        let labels: Vec<String> = labels.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i as u8).is_some() {
                return Err(ClassError::DuplicateLabel(l.clone()));
            }
        }
        Ok(Arc::new(MarkingSet { labels, index }))
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: u8) -> &str {
        &self.labels[i as usize]
    }

    pub fn index_of(&self, label: &str) -> Result<u8, ClassError> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| ClassError::UnknownLabel(label.to_string()))
    }

    pub fn indices_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<Vec<u8>, ClassError> {
        labels.iter().map(|l| self.index_of(l.as_ref())).collect()
    }

    /// Same label set in a possibly different order?
    pub fn same_labels(&self, other: &MarkingSet) -> bool {
        self.n() == other.n() && self.labels.iter().all(|l| other.index.contains_key(l))
    }
}

/// Canonical representative of a boundary divisor: the side `I` of the
/// splitting `I | I^c` with `|I| < n - |I|`, or, at exactly half, the side
/// containing the first label of the ordering. Indices sorted ascending.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BoundarySide(pub(crate) SmallVec<[u8; 8]>);

impl fmt::Debug for BoundarySide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "side{:?}", self.0.as_slice())
    }
}

impl BoundarySide {
    pub fn indices(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: u8) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn labels<'a>(&self, ms: &'a MarkingSet) -> Vec<&'a str> {
        self.0.iter().map(|&i| ms.label(i)).collect()
    }

    pub fn complement(&self, ms: &MarkingSet) -> Vec<u8> {
        (0..ms.n() as u8).filter(|i| !self.contains(*i)).collect()
    }
}

/// Canonicalize a subset (by index) into a [`BoundarySide`].
pub(crate) fn canonical_side_indices(
    ms: &MarkingSet,
    subset: &[u8],
) -> Result<BoundarySide, ClassError> {
    let n = ms.n();
    let mut v: SmallVec<[u8; 8]> = subset.into();
    v.sort_unstable();
    v.dedup();
    if v.len() != subset.len() {
        return Err(ClassError::Other("subset has repeated labels".into()));
    }
    let k = v.len();
    if k < 2 || k > n - 2 {
        return Err(ClassError::SideSizeOutOfRange {
            size: k,
            max: n - 2,
            n,
        });
    }
    let take_complement = match (2 * k).cmp(&n) {
        std::cmp::Ordering::Less => false,
        std::cmp::Ordering::Greater => true,
        std::cmp::Ordering::Equal => !v.contains(&0),
    };
    if take_complement {
        let mut c: SmallVec<[u8; 8]> = SmallVec::new();
        for i in 0..n as u8 {
            if v.binary_search(&i).is_err() {
                c.push(i);
            }
        }
        v = c;
    }
    Ok(BoundarySide(v))
}

/// Canonical representative of `{subset, complement}` given by labels.
pub fn canonical_side<S: AsRef<str>>(
    ms: &MarkingSet,
    subset: &[S],
) -> Result<BoundarySide, ClassError> {
    let idx = ms.indices_of(subset)?;
    canonical_side_indices(ms, &idx)
}

pub use canonical_side as canonical_side_labels;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_rule_at_half() {
        let ms = MarkingSet::new(&["1", "2", "3", "4"]).unwrap();
        let s = canonical_side(&ms, &["3", "4"]).unwrap();
        assert_eq!(s.labels(&ms), vec!["1", "2"]);
    }

    #[test]
    fn smaller_side_wins() {
        let labels = ["m", "n", "p", "1", "2", "3", "a", "b", "c", "al", "be", "ga"];
        let ms = MarkingSet::new(&labels).unwrap();
        let big: Vec<&str> = labels
            .iter()
            .filter(|l| !["m", "n", "p"].contains(l))
            .copied()
            .collect();
        let s = canonical_side(&ms, &big).unwrap();
        assert_eq!(s.labels(&ms), vec!["m", "n", "p"]);
        let s2 = canonical_side(&ms, &["2", "b", "ga"]).unwrap();
        assert_eq!(s2.labels(&ms), vec!["2", "b", "ga"]);
    }

    #[test]
    fn size_bounds() {
        let ms = MarkingSet::new(&["1", "2", "3", "4", "5"]).unwrap();
        assert!(canonical_side(&ms, &["1"]).is_err());
        assert!(canonical_side(&ms, &["1", "2", "3", "4"]).is_err());
    }

    #[test]
    fn canonical_equals_complement_exhaustive() {
        for n in 4..=8usize {
            let labels: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
            let ms = MarkingSet::new(&labels).unwrap();
            for mask in 1u32..(1 << n) - 1 {
                let subset: Vec<u8> = (0..n as u8).filter(|i| mask & (1 << i) != 0).collect();
                if subset.len() < 2 || subset.len() > n - 2 {
                    continue;
                }
                let comp: Vec<u8> = (0..n as u8).filter(|i| mask & (1 << i) == 0).collect();
                let a = canonical_side_indices(&ms, &subset).unwrap();
                let b = canonical_side_indices(&ms, &comp).unwrap();
                assert_eq!(a, b);
            }
        }
    }
}
