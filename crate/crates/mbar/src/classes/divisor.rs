use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;

use super::class::ClassVector;
use super::marking::{BoundarySide, MarkingSet};
use super::ClassError;
use crate::arith::{rat_int, Rat};

/// A boundary divisor expression, paired against class vectors.
///
/// `Symmetric` holds coefficients per side size k (denoting the sum of all
/// boundary divisors with k markings on the smaller side); `General` holds
/// per-side coefficients. The psi and Keel forms are evaluated sparsely on
/// a class's support and can be expanded to `General` when serialized.
#[derive(Clone, Debug, PartialEq)]
pub enum DivisorExpr {
    Symmetric {
        ms: Arc<MarkingSet>,
        coeffs: BTreeMap<usize, Rat>,
    },
    General {
        ms: Arc<MarkingSet>,
        coeffs: BTreeMap<BoundarySide, Rat>,
    },
    Psi {
        ms: Arc<MarkingSet>,
        i: u8,
        j: u8,
        k: u8,
    },
    Keel {
        ms: Arc<MarkingSet>,
        i: u8,
        j: u8,
        k: u8,
        l: u8,
    },
}

impl DivisorExpr {
    pub fn marking_set(&self) -> &Arc<MarkingSet> {
        match self {
            DivisorExpr::Symmetric { ms, .. }
            | DivisorExpr::General { ms, .. }
            | DivisorExpr::Psi { ms, .. }
            | DivisorExpr::Keel { ms, .. } => ms,
        }
    }

    /// Coefficient at the boundary divisor of a canonical side.
    pub fn coeff(&self, side: &BoundarySide) -> Rat {
        match self {
            DivisorExpr::Symmetric { coeffs, .. } => {
                coeffs.get(&side.len()).cloned().unwrap_or_else(Rat::zero)
            }
            DivisorExpr::General { coeffs, .. } => {
                coeffs.get(side).cloned().unwrap_or_else(Rat::zero)
            }
            DivisorExpr::Psi { ms, i, j, k } => {
                let on = |inside: bool| {
                    let has = |x: u8| side.contains(x) == inside;
                    has(*i) && !has(*j) && !has(*k)
                };
                let mut c = Rat::zero();
                if on(true) {
                    c += rat_int(1);
                }
                if on(false) {
                    c += rat_int(1);
                }
                let _ = ms;
                c
            }
            DivisorExpr::Keel { ms, i, j, k, l } => {
                // sum over I in {side, complement} of
                //   [i,j in I; k,l notin I] - [i,k in I; j,l notin I]
                let mut c = Rat::zero();
                for inside in [true, false] {
                    let has = |x: u8| side.contains(x) == inside;
                    if has(*i) && has(*j) && !has(*k) && !has(*l) {
                        c += rat_int(1);
                    }
                    if has(*i) && has(*k) && !has(*j) && !has(*l) {
                        c -= rat_int(1);
                    }
                }
                let _ = ms;
                c
            }
        }
    }

    /// Sum of two symmetric expressions (used for K + Delta and friends).
    pub fn add_symmetric(&self, other: &DivisorExpr) -> Result<DivisorExpr, ClassError> {
        match (self, other) {
            (
                DivisorExpr::Symmetric { ms, coeffs },
                DivisorExpr::Symmetric {
                    ms: ms2,
                    coeffs: c2,
                },
            ) => {
                if ms != ms2 {
                    return Err(ClassError::MarkingMismatch);
                }
                let mut out = coeffs.clone();
                for (k, v) in c2 {
                    let slot = out.entry(*k).or_insert_with(Rat::zero);
                    *slot += v;
                    if slot.is_zero() {
                        out.remove(k);
                    }
                }
                Ok(DivisorExpr::Symmetric {
                    ms: ms.clone(),
                    coeffs: out,
                })
            }
            _ => Err(ClassError::Other(
                "add_symmetric needs two symmetric divisors".into(),
            )),
        }
    }

    /// Expand to the general form by enumerating every canonical side.
    pub fn to_general(&self) -> DivisorExpr {
        if let DivisorExpr::General { .. } = self {
            return self.clone();
        }
        let ms = self.marking_set().clone();
        let n = ms.n();
        let mut coeffs = BTreeMap::new();
        for mask in 1u64..(1u64 << n) - 1 {
            let subset: Vec<u8> = (0..n as u8).filter(|i| mask & (1 << i) != 0).collect();
            let k = subset.len();
            if k < 2 || k > n - 2 {
                continue;
            }
            // each divisor once: take only the canonical representative
            let side = match super::marking::canonical_side_indices(&ms, &subset) {
                Ok(s) => s,
                Err(_) => continue,
            };
            if side.indices() != subset.as_slice() {
                continue;
            }
            let c = self.coeff(&side);
            if !c.is_zero() {
                coeffs.insert(side, c);
            }
        }
        DivisorExpr::General { ms, coeffs }
    }
}

/// `sum_I D(I) * c(I)` over boundary divisors; bilinear.
pub fn pair(c: &ClassVector, d: &DivisorExpr) -> Result<Rat, ClassError> {
    if c.marking_set() != d.marking_set() {
        return Err(ClassError::MarkingMismatch);
    }
    match d {
        DivisorExpr::General { coeffs, .. } => {
            // iterate over the sparser of the two supports
            if coeffs.len() < c.len() {
                let mut acc = Rat::zero();
                for (side, dv) in coeffs {
                    acc += dv * c.coeff_at(side);
                }
                Ok(acc)
            } else {
                let mut acc = Rat::zero();
                for (side, cv) in c.entries() {
                    acc += cv * coeffs.get(side).cloned().unwrap_or_else(Rat::zero);
                }
                Ok(acc)
            }
        }
        _ => {
            let mut acc = Rat::zero();
            for (side, cv) in c.entries() {
                acc += cv * d.coeff(side);
            }
            Ok(acc)
        }
    }
}

/// The canonical divisor `K` in symmetric form: coefficient
/// `k(n-k)/(n-1) - 2` at delta_k.
pub fn canonical_divisor(ms: &Arc<MarkingSet>) -> DivisorExpr {
    let n = ms.n() as i64;
    let mut coeffs = BTreeMap::new();
    for k in 2..=(ms.n() / 2) {
        let ki = k as i64;
        let c = Rat::new((ki * (n - ki)).into(), (n - 1).into()) - rat_int(2);
        if !c.is_zero() {
            coeffs.insert(k, c);
        }
    }
    DivisorExpr::Symmetric {
        ms: ms.clone(),
        coeffs,
    }
}

/// The total boundary `Delta` in symmetric form: coefficient 1 at every
/// delta_k.
pub fn delta_divisor(ms: &Arc<MarkingSet>) -> DivisorExpr {
    let coeffs = (2..=(ms.n() / 2)).map(|k| (k, rat_int(1))).collect();
    DivisorExpr::Symmetric {
        ms: ms.clone(),
        coeffs,
    }
}

/// The psi class at `i`, expanded with auxiliary markings `j`, `k`:
/// coefficient 1 at each boundary divisor whose i-side avoids j and k.
pub fn psi_divisor(
    ms: &Arc<MarkingSet>,
    i: &str,
    j: &str,
    k: &str,
) -> Result<DivisorExpr, ClassError> {
    let (i, j, k) = (ms.index_of(i)?, ms.index_of(j)?, ms.index_of(k)?);
    if i == j || i == k || j == k {
        return Err(ClassError::RepeatedLabel);
    }
    Ok(DivisorExpr::Psi {
        ms: ms.clone(),
        i,
        j,
        k,
    })
}

/// The signed boundary relation attached to a quadruple: genuine curve
/// classes pair to zero with it.
pub fn keel_divisor(
    ms: &Arc<MarkingSet>,
    i: &str,
    j: &str,
    k: &str,
    l: &str,
) -> Result<DivisorExpr, ClassError> {
    let (i, j, k, l) = (
        ms.index_of(i)?,
        ms.index_of(j)?,
        ms.index_of(k)?,
        ms.index_of(l)?,
    );
    let mut seen = [i, j, k, l];
    seen.sort_unstable();
    if seen.windows(2).any(|w| w[0] == w[1]) {
        return Err(ClassError::RepeatedLabel);
    }
    Ok(DivisorExpr::Keel {
        ms: ms.clone(),
        i,
        j,
        k,
        l,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ms_n(n: usize) -> Arc<MarkingSet> {
        let labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        MarkingSet::new(&labels).unwrap()
    }

    fn sym_coeffs(d: &DivisorExpr) -> Vec<(usize, Rat)> {
        match d {
            DivisorExpr::Symmetric { coeffs, .. } => {
                coeffs.iter().map(|(k, v)| (*k, v.clone())).collect()
            }
            _ => panic!("not symmetric"),
        }
    }

    #[test]
    fn printed_canonical_formulas() {
        use crate::arith::rat;
        // n = 6: -K = (2/5) d2 + (1/5) d3
        assert_eq!(
            sym_coeffs(&canonical_divisor(&ms_n(6))),
            vec![(2, rat(-2, 5)), (3, rat(-1, 5))]
        );
        // n = 7: -K = (1/3) d2 (coefficient at d3 vanishes)
        assert_eq!(sym_coeffs(&canonical_divisor(&ms_n(7))), vec![(2, rat(-1, 3))]);
        // n = 9: K = (1/4)(-d2 + d3 + 2 d4)
        assert_eq!(
            sym_coeffs(&canonical_divisor(&ms_n(9))),
            vec![(2, rat(-1, 4)), (3, rat(1, 4)), (4, rat(1, 2))]
        );
        // n = 12: K = (1/11)(-2 d2 + 5 d3 + 10 d4 + 13 d5 + 14 d6)
        assert_eq!(
            sym_coeffs(&canonical_divisor(&ms_n(12))),
            vec![
                (2, rat(-2, 11)),
                (3, rat(5, 11)),
                (4, rat(10, 11)),
                (5, rat(13, 11)),
                (6, rat(14, 11)),
            ]
        );
    }

    #[test]
    fn pairing_zero_class() {
        let ms = ms_n(6);
        let z = ClassVector::zero(&ms);
        let kd = canonical_divisor(&ms)
            .add_symmetric(&delta_divisor(&ms))
            .unwrap();
        assert_eq!(pair(&z, &kd).unwrap(), rat_int(0));
    }

    #[test]
    fn psi_on_m04() {
        // n = 4: psi_1(2,3) is delta_{1,4}
        let ms = ms_n(4);
        let psi = psi_divisor(&ms, "1", "2", "3").unwrap().to_general();
        match &psi {
            DivisorExpr::General { coeffs, .. } => {
                assert_eq!(coeffs.len(), 1);
                let (side, v) = coeffs.iter().next().unwrap();
                assert_eq!(side.labels(&ms), vec!["1", "4"]);
                assert_eq!(v, &rat_int(1));
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn general_expansion_matches_sparse_pairing() {
        let ms = ms_n(7);
        let mut c = ClassVector::zero(&ms);
        c.add_at(&["1", "3"], rat_int(2)).unwrap();
        c.add_at(&["2", "4", "5"], rat_int(-1)).unwrap();
        let psi = psi_divisor(&ms, "3", "1", "6").unwrap();
        assert_eq!(pair(&c, &psi).unwrap(), pair(&c, &psi.to_general()).unwrap());
        let keel = keel_divisor(&ms, "1", "2", "3", "4").unwrap();
        assert_eq!(
            pair(&c, &keel).unwrap(),
            pair(&c, &keel.to_general()).unwrap()
        );
    }
}
