use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use super::class::ClassVector;
use super::divisor::{canonical_divisor, delta_divisor, pair, psi_divisor};
use super::marking::MarkingSet;
use super::ClassError;
use crate::arith::{rat_int, Rat};

/// One-dimensional boundary stratum: a partition of the markings into four
/// nonempty unordered blocks.
#[derive(Clone, PartialEq, Eq)]
pub struct FCurve {
    pub ms: Arc<MarkingSet>,
    /// Sorted within blocks; blocks sorted by first element.
    pub blocks: [Vec<u8>; 4],
}

impl fmt::Debug for FCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bs: Vec<Vec<&str>> = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|&i| self.ms.label(i)).collect())
            .collect();
        write!(f, "F{:?}", bs)
    }
}

impl FCurve {
    pub fn new<S: AsRef<str>>(
        ms: &Arc<MarkingSet>,
        blocks: [&[S]; 4],
    ) -> Result<Self, ClassError> {
        let idx: Vec<Vec<u8>> = blocks
            .iter()
            .map(|b| ms.indices_of(b))
            .collect::<Result<_, _>>()?;
        Self::from_indices(ms, idx.try_into().unwrap())
    }

    pub fn from_indices(ms: &Arc<MarkingSet>, mut blocks: [Vec<u8>; 4]) -> Result<Self, ClassError> {
        let mut seen = BTreeSet::new();
        for b in blocks.iter_mut() {
            if b.is_empty() {
                return Err(ClassError::BadPartition);
            }
            b.sort_unstable();
            for &i in b.iter() {
                if !seen.insert(i) {
                    return Err(ClassError::BadPartition);
                }
            }
        }
        if seen.len() != ms.n() {
            return Err(ClassError::BadPartition);
        }
        blocks.sort_by_key(|b| b[0]);
        Ok(FCurve {
            ms: ms.clone(),
            blocks,
        })
    }

    pub fn block_labels(&self) -> [Vec<String>; 4] {
        let get = |b: &Vec<u8>| b.iter().map(|&i| self.ms.label(i).to_string()).collect();
        [
            get(&self.blocks[0]),
            get(&self.blocks[1]),
            get(&self.blocks[2]),
            get(&self.blocks[3]),
        ]
    }
}

/// Irreducible component of a fiber of the map forgetting one marking:
/// the moving label plus k >= 3 fixed blocks.
#[derive(Clone, PartialEq, Eq)]
pub struct FiberComponent {
    pub ms: Arc<MarkingSet>,
    pub moving: u8,
    pub blocks: Vec<Vec<u8>>,
}

impl fmt::Debug for FiberComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bs: Vec<Vec<&str>> = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|&i| self.ms.label(i)).collect())
            .collect();
        write!(f, "Fiber[{} -> {:?}]", self.ms.label(self.moving), bs)
    }
}

impl FiberComponent {
    pub fn new<S: AsRef<str>>(
        ms: &Arc<MarkingSet>,
        moving: &str,
        blocks: &[Vec<S>],
    ) -> Result<Self, ClassError> {
        let moving = ms.index_of(moving)?;
        let idx: Vec<Vec<u8>> = blocks
            .iter()
            .map(|b| ms.indices_of(b))
            .collect::<Result<_, _>>()?;
        Self::from_indices(ms, moving, idx)
    }

    pub fn from_indices(
        ms: &Arc<MarkingSet>,
        moving: u8,
        mut blocks: Vec<Vec<u8>>,
    ) -> Result<Self, ClassError> {
        if blocks.len() < 3 {
            return Err(ClassError::TooFewBlocks(blocks.len()));
        }
        let mut seen = BTreeSet::new();
        seen.insert(moving);
        for b in blocks.iter_mut() {
            if b.is_empty() {
                return Err(ClassError::BadPartition);
            }
            b.sort_unstable();
            for &i in b.iter() {
                if !seen.insert(i) {
                    return Err(ClassError::BadPartition);
                }
            }
        }
        if seen.len() != ms.n() {
            return Err(ClassError::BadPartition);
        }
        blocks.sort_by_key(|b| b[0]);
        Ok(FiberComponent {
            ms: ms.clone(),
            moving,
            blocks,
        })
    }
}

/// Class of an F-curve: -1 at each block of size >= 2 and +1 at the three
/// pairwise unions through the first block, accumulated canonically.
pub fn fcurve_class(f: &FCurve) -> ClassVector {
    let mut c = ClassVector::zero(&f.ms);
    for b in &f.blocks {
        if b.len() >= 2 {
            c.add_at_indices(b, rat_int(-1)).unwrap();
        }
    }
    for other in 1..4 {
        let mut u = f.blocks[0].clone();
        u.extend_from_slice(&f.blocks[other]);
        c.add_at_indices(&u, rat_int(1)).unwrap();
    }
    c
}

/// Class of a forgetful-fiber component: -1 at each block of size >= 2 and
/// +1 at each block joined with the moving label.
pub fn fiber_component_class(b: &FiberComponent) -> ClassVector {
    let mut c = ClassVector::zero(&b.ms);
    for blk in &b.blocks {
        if blk.len() >= 2 {
            c.add_at_indices(blk, rat_int(-1)).unwrap();
        }
        let mut u = blk.clone();
        u.push(b.moving);
        c.add_at_indices(&u, rat_int(1)).unwrap();
    }
    c
}

/// The k-2 F-curves summing to a fiber component: the j-th has blocks
/// `({p}, I_1 u ... u I_j, I_{j+1}, I_{j+2} u ... u I_k)`.
pub fn fiber_fdecomp(b: &FiberComponent) -> DecompCertificate {
    let k = b.blocks.len();
    let mut terms = Vec::with_capacity(k - 2);
    for j in 1..=k - 2 {
        let head: Vec<u8> = b.blocks[..j].concat();
        let mid = b.blocks[j].clone();
        let tail: Vec<u8> = b.blocks[j + 1..].concat();
        let f = FCurve::from_indices(&b.ms, [vec![b.moving], head, mid, tail])
            .expect("fiber blocks partition the markings");
        terms.push((Generator::F(f), rat_int(1)));
    }
    DecompCertificate { terms }
}

/// Glue a fixed tail marked by `tail` onto the class `c` at the marking
/// `y`, at a generic point of the tail moduli.
///
/// Output lives on the markings of `c` minus `y` plus `tail` (in that
/// order). Sides inside the old markings keep their coefficients, sides
/// through `y` widen by the tail, and the side splitting off the whole tail
/// picks up minus the psi-degree of `c` at `y`.
pub fn attach(
    c: &ClassVector,
    tail: &[String],
    y: &str,
) -> Result<(ClassVector, Arc<MarkingSet>), ClassError> {
    let ms = c.marking_set();
    let y_idx = ms.index_of(y)?;
    let mut keep: Vec<String> = Vec::new();
    for l in ms.labels() {
        if l != y {
            keep.push(l.clone());
        }
    }
    if keep.len() < 3 || tail.is_empty() {
        return Err(ClassError::Other(
            "attach needs |S| >= 3 and a nonempty tail".into(),
        ));
    }
    for t in tail {
        if keep.contains(t) || t == y {
            return Err(ClassError::AttachCollision(vec![t.clone()]));
        }
    }
    let mut new_labels = keep.clone();
    new_labels.extend(tail.iter().cloned());
    let new_ms = MarkingSet::new(&new_labels)?;

    let mut out = ClassVector::zero(&new_ms);
    for (side, v) in c.entries() {
        let labels = side.labels(ms);
        let mut subset: Vec<u8> = Vec::new();
        let mut has_y = false;
        for l in &labels {
            if *l == y {
                has_y = true;
            } else {
                subset.push(new_ms.index_of(l)?);
            }
        }
        if has_y {
            for t in tail {
                subset.push(new_ms.index_of(t)?);
            }
        }
        out.add_at_indices(&subset, v.clone())?;
    }

    // psi degree at y, using the first two retained labels as auxiliaries;
    // independent of the choice for genuine classes
    let aux: Vec<&str> = ms
        .labels()
        .iter()
        .filter(|l| l.as_str() != y)
        .take(2)
        .map(|s| s.as_str())
        .collect();
    let psi = psi_divisor(ms, y, aux[0], aux[1])?;
    let psi_deg = pair(c, &psi)?;
    let _ = y_idx;
    if !psi_deg.is_zero() {
        let tail_side: Vec<u8> = tail
            .iter()
            .map(|t| new_ms.index_of(t))
            .collect::<Result<_, _>>()?;
        out.add_at_indices(&tail_side, -psi_deg)?;
    }
    Ok((out, new_ms))
}

/// Push a class through a relabeling of its marking set. `perm` maps old
/// labels to new ones; omitted labels stay fixed.
pub fn relabel(c: &ClassVector, perm: &BTreeMap<String, String>) -> Result<ClassVector, ClassError> {
    let ms = c.marking_set();
    let mut map: Vec<u8> = (0..ms.n() as u8).collect();
    for (from, to) in perm {
        let fi = ms.index_of(from)?;
        let ti = ms.index_of(to)?;
        map[fi as usize] = ti;
    }
    let mut seen = BTreeSet::new();
    if !map.iter().all(|i| seen.insert(*i)) {
        return Err(ClassError::BadPermutation);
    }
    let mut out = ClassVector::zero(ms);
    for (side, v) in c.entries() {
        let subset: Vec<u8> = side.indices().iter().map(|&i| map[i as usize]).collect();
        out.add_at_indices(&subset, v.clone())?;
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct RigidityReport {
    pub k_dot: Rat,
    pub kd_dot: Rat,
    /// `-K.c + (n-3) - 3`: the Hom-scheme dimension bound minus dim PGL2.
    /// Nonpositive is necessary for rigidity.
    pub hom_excess: Rat,
}

pub fn rigidity_report(c: &ClassVector) -> Result<RigidityReport, ClassError> {
    let ms = c.marking_set();
    let k = canonical_divisor(ms);
    let kd = k.add_symmetric(&delta_divisor(ms))?;
    let k_dot = pair(c, &k)?;
    let kd_dot = pair(c, &kd)?;
    let hom_excess = -&k_dot + rat_int(ms.n() as i64 - 3) - rat_int(3);
    Ok(RigidityReport {
        k_dot,
        kd_dot,
        hom_excess,
    })
}

/// A certificate generator: F-curve or forgetful-fiber component.
#[derive(Clone, Debug, PartialEq)]
pub enum Generator {
    F(FCurve),
    Fiber(FiberComponent),
}

impl Generator {
    pub fn class(&self) -> ClassVector {
        match self {
            Generator::F(f) => fcurve_class(f),
            Generator::Fiber(b) => fiber_component_class(b),
        }
    }

    pub fn marking_set(&self) -> &Arc<MarkingSet> {
        match self {
            Generator::F(f) => &f.ms,
            Generator::Fiber(b) => &b.ms,
        }
    }
}

/// Multiset of generators with nonnegative rational multiplicities,
/// certifying a class as an effective combination.
#[derive(Clone, Debug, PartialEq)]
pub struct DecompCertificate {
    pub terms: Vec<(Generator, Rat)>,
}

impl DecompCertificate {
    pub fn new(terms: Vec<(Generator, Rat)>) -> Result<Self, ClassError> {
        if terms.iter().any(|(_, m)| m < &Rat::zero()) {
            return Err(ClassError::Other(
                "certificate multiplicities must be nonnegative".into(),
            ));
        }
        Ok(DecompCertificate { terms })
    }

    pub fn class_sum(&self, ms: &Arc<MarkingSet>) -> Result<ClassVector, ClassError> {
        let mut acc = ClassVector::zero(ms);
        for (g, m) in &self.terms {
            let c = g.class().with_marking(ms)?;
            acc = acc.add(&c.scale(m))?;
        }
        Ok(acc)
    }

    pub fn extend(&mut self, other: DecompCertificate) {
        self.terms.extend(other.terms);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::divisor::delta_divisor;

    fn hesse_ms() -> Arc<MarkingSet> {
        MarkingSet::new(&["m", "n", "p", "1", "2", "3", "a", "b", "c", "al", "be", "ga"]).unwrap()
    }

    #[test]
    fn fcurve_class_three_singletons() {
        // blocks {1},{a},{be},rest on 12 labels
        let ms = hesse_ms();
        let rest: Vec<&str> = ms
            .labels()
            .iter()
            .map(|s| s.as_str())
            .filter(|l| !["1", "a", "be"].contains(l))
            .collect();
        let f = FCurve::new(&ms, [&["1"], &["a"], &["be"], &rest]).unwrap();
        let c = fcurve_class(&f);
        assert_eq!(c.coeff_at_labels(&["1", "a", "be"]).unwrap(), rat_int(-1));
        assert_eq!(c.coeff_at_labels(&["1", "a"]).unwrap(), rat_int(1));
        assert_eq!(c.coeff_at_labels(&["1", "be"]).unwrap(), rat_int(1));
        assert_eq!(c.coeff_at_labels(&["a", "be"]).unwrap(), rat_int(1));
        assert_eq!(c.len(), 4);
    }

    #[test]
    fn fcurve_class_n4() {
        let ms = MarkingSet::new(&["1", "2", "3", "4"]).unwrap();
        let f = FCurve::new(&ms, [&["1"], &["2"], &["3"], &["4"]]).unwrap();
        let c = fcurve_class(&f);
        // all three boundary divisors get 1
        assert_eq!(c.len(), 3);
        for pair in [["1", "2"], ["1", "3"], ["1", "4"]] {
            assert_eq!(c.coeff_at_labels(&pair).unwrap(), rat_int(1));
        }
    }

    #[test]
    fn fiber_component_matches_fcurve_at_k3_singletons() {
        let ms = MarkingSet::new(&["1", "2", "3", "4"]).unwrap();
        let b = FiberComponent::new(
            &ms,
            "4",
            &[vec!["1"], vec!["2"], vec!["3"]],
        )
        .unwrap();
        let f = FCurve::new(&ms, [&["1"], &["2"], &["3"], &["4"]]).unwrap();
        assert_eq!(fiber_component_class(&b), fcurve_class(&f));
    }

    #[test]
    fn fiber_decomposition_sums_to_class() {
        let ms = MarkingSet::new(&["1", "2", "3", "4", "5", "6", "7", "8", "9"]).unwrap();
        let b = FiberComponent::new(
            &ms,
            "5",
            &[
                vec!["1", "2"],
                vec!["3"],
                vec!["4", "6"],
                vec!["7"],
                vec!["8", "9"],
            ],
        )
        .unwrap();
        let cert = fiber_fdecomp(&b);
        assert_eq!(cert.terms.len(), 3);
        let sum = cert.class_sum(&ms).unwrap();
        assert_eq!(sum, fiber_component_class(&b));
    }

    #[test]
    fn every_fcurve_pairs_one_with_k_plus_delta() {
        let ms = hesse_ms();
        let kd = canonical_divisor(&ms)
            .add_symmetric(&delta_divisor(&ms))
            .unwrap();
        let f = FCurve::new(&ms, [&["m", "n"], &["p", "1", "2"], &["3"], &[
            "a", "b", "c", "al", "be", "ga",
        ]])
        .unwrap();
        assert_eq!(pair(&fcurve_class(&f), &kd).unwrap(), rat_int(1));
    }

    #[test]
    fn attach_zero_is_zero() {
        let ms = MarkingSet::new(&["5", "7", "8", "p", "y"]).unwrap();
        let z = ClassVector::zero(&ms);
        let (out, _) = attach(&z, &["x1".into(), "x2".into()], "y").unwrap();
        assert!(out.is_zero());
    }

    #[test]
    fn attach_fdoubleprime_example() {
        // class on {5,7,8,p,y} with 1 at each triple through y's complement
        let ms = MarkingSet::new(&["5", "7", "8", "p", "y"]).unwrap();
        let mut c = ClassVector::zero(&ms);
        for tri in [["5", "7", "8"], ["5", "7", "p"], ["5", "8", "p"], ["7", "8", "p"]] {
            c.add_at(&tri, rat_int(1)).unwrap();
        }
        let tail: Vec<String> = ["1", "2", "3", "4", "6", "9", "u", "v"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let (out, _ms12) = attach(&c, &tail, "y").unwrap();
        assert_eq!(out.coeff_at_labels(&["5", "7", "8", "p"]).unwrap(), rat_int(-2));
        for tri in [["5", "7", "8"], ["5", "7", "p"], ["5", "8", "p"], ["7", "8", "p"]] {
            assert_eq!(out.coeff_at_labels(&tri).unwrap(), rat_int(1));
        }
        assert_eq!(out.len(), 5);
    }

    #[test]
    fn relabel_involution() {
        let ms = hesse_ms();
        let rest: Vec<&str> = ms
            .labels()
            .iter()
            .map(|s| s.as_str())
            .filter(|l| !["1", "a", "be"].contains(l))
            .collect();
        let f = FCurve::new(&ms, [&["1"], &["a"], &["be"], &rest]).unwrap();
        let c = fcurve_class(&f);
        let mut perm = BTreeMap::new();
        for (x, y) in [("m", "1"), ("1", "m"), ("n", "be"), ("be", "n")] {
            perm.insert(x.to_string(), y.to_string());
        }
        let once = relabel(&c, &perm).unwrap();
        let twice = relabel(&once, &perm).unwrap();
        assert_eq!(twice, c);
        assert_ne!(once, c);
        let id = relabel(&c, &BTreeMap::new()).unwrap();
        assert_eq!(id, c);
    }
}
