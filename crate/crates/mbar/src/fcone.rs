//! F-cone membership: enumerate the F-curve generators, decide
//! nonnegative-combination feasibility by exact rational simplex, and
//! verify decomposition certificates.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith::Rat;
use crate::classes::{
    fcurve_class, BoundarySide, ClassError, ClassVector, DecompCertificate, DivisorExpr, FCurve,
    Generator, MarkingSet,
};

#[derive(Debug, Error)]
pub enum FconeError {
    #[error("n = {n} exceeds the enumeration cap {cap}; use a certificate or the constructive decomposer")]
    CapExceeded { n: usize, cap: usize },
    #[error("certificate does not reproduce the class; residuals:\n{0}")]
    CertificateMismatch(String),
    #[error(transparent)]
    Class(#[from] ClassError),
}

/// Every set partition of the markings into exactly 4 nonempty blocks, in
/// restricted-growth order; count is the Stirling partition number S(n,4).
pub fn enumerate_fcurves(ms: &Arc<MarkingSet>) -> Vec<FCurve> {
    let n = ms.n();
    let mut out = Vec::new();
    // restricted growth string: rgs[0] = 0, rgs[i] <= max(rgs[..i]) + 1, capped at 3
    let mut rgs = vec![0u8; n];
    fn rec(ms: &Arc<MarkingSet>, rgs: &mut Vec<u8>, pos: usize, used: u8, out: &mut Vec<FCurve>) {
        let n = rgs.len();
        if pos == n {
            if used == 4 {
                let mut blocks: [Vec<u8>; 4] = Default::default();
                for (i, &b) in rgs.iter().enumerate() {
                    blocks[b as usize].push(i as u8);
                }
                out.push(FCurve::from_indices(ms, blocks).expect("rgs yields a valid partition"));
            }
            return;
        }
        // prune: not enough elements left to reach 4 blocks
        if (4 - used as usize) > n - pos {
            return;
        }
        let top = (used + 1).min(4);
        for b in 0..top {
            rgs[pos] = b;
            rec(ms, rgs, pos + 1, used.max(b + 1), out);
        }
    }
    rec(ms, &mut rgs, 1, 1, &mut out);
    out
}

/// All canonical boundary sides of the marking set, ascending.
pub fn enumerate_sides(ms: &Arc<MarkingSet>) -> Vec<BoundarySide> {
    let n = ms.n();
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << n) - 1 {
        let subset: Vec<u8> = (0..n as u8).filter(|i| mask & (1 << i) != 0).collect();
        if subset.len() < 2 || subset.len() > n - 2 {
            continue;
        }
        if let Ok(side) = crate::classes::canonical_side_indices_pub(ms, &subset) {
            if side.indices() == subset.as_slice() {
                out.push(side);
            }
        }
    }
    out.sort();
    out
}

/// Outcome of [`lp_decompose`]: a verified nonnegative combination, or an
/// exact separating divisor.
pub enum DecompOutcome {
    Certificate(DecompCertificate),
    /// Pairs `>= 0` with every F-curve and `< 0` with the target.
    Infeasible(DivisorExpr),
}

pub const DEFAULT_CAP: usize = 10;

/// Decide membership of `c` in the cone spanned by the F-curve classes by
/// exact Phase-I simplex over the full boundary coordinate space. Exactly
/// one of the two outcomes is produced, by LP duality over Q.
pub fn lp_decompose(c: &ClassVector, cap: usize) -> Result<DecompOutcome, FconeError> {
    let ms = c.marking_set();
    let n = ms.n();
    if n > cap {
        return Err(FconeError::CapExceeded { n, cap });
    }
    let sides = enumerate_sides(ms);
    let row_of: BTreeMap<&BoundarySide, usize> =
        sides.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let m = sides.len();

    let fcurves = enumerate_fcurves(ms);
    let cols: Vec<Vec<(usize, Rat)>> = fcurves
        .iter()
        .map(|f| {
            fcurve_class(f)
                .entries()
                .map(|(s, v)| (row_of[s], v.clone()))
                .collect()
        })
        .collect();
    let mut rhs = vec![Rat::zero(); m];
    for (s, v) in c.entries() {
        rhs[row_of[s]] = v.clone();
    }

    match phase_one(&cols, rhs) {
        PhaseOne::Feasible(lambda) => {
            let terms: Vec<(Generator, Rat)> = lambda
                .into_iter()
                .filter(|(_, v)| !v.is_zero())
                .map(|(j, v)| (Generator::F(fcurves[j].clone()), v))
                .collect();
            let cert = DecompCertificate::new(terms)?;
            // re-verify the simplex output by direct accumulation
            verify_certificate(c, &cert)?;
            Ok(DecompOutcome::Certificate(cert))
        }
        PhaseOne::Infeasible(y) => {
            let mut coeffs = BTreeMap::new();
            for (i, side) in sides.iter().enumerate() {
                if !y[i].is_zero() {
                    coeffs.insert(side.clone(), -y[i].clone());
                }
            }
            let witness = DivisorExpr::General {
                ms: ms.clone(),
                coeffs,
            };
            debug_assert!(fcurves
                .iter()
                .all(|f| crate::classes::pair(&fcurve_class(f), &witness).unwrap() >= Rat::zero()));
            debug_assert!(crate::classes::pair(c, &witness).unwrap() < Rat::zero());
            Ok(DecompOutcome::Infeasible(witness))
        }
    }
}

/// Succeeds iff the certificate's class sum equals `c` exactly.
pub fn verify_certificate(c: &ClassVector, cert: &DecompCertificate) -> Result<(), FconeError> {
    let sum = cert.class_sum(c.marking_set())?;
    if &sum == c {
        Ok(())
    } else {
        Err(FconeError::CertificateMismatch(
            sum.diff_report(c).join("\n"),
        ))
    }
}

enum PhaseOne {
    /// Structural solution as (column index, value) pairs.
    Feasible(Vec<(usize, Rat)>),
    /// Dual vector y (in original row coordinates) with y.a_j <= 0 for all
    /// columns and y.c > 0.
    Infeasible(Vec<Rat>),
}

/// Exact Phase-I simplex for `A x = b, x >= 0` with sparse columns.
///
/// Dantzig pricing with a lexicographic ratio test; after a long
/// degenerate stall the pricing switches permanently to Bland's rule.
/// Either rule alone already makes the method cycling-free.
fn phase_one(cols: &[Vec<(usize, Rat)>], mut rhs: Vec<Rat>) -> PhaseOne {
    let m = rhs.len();
    let ncols = cols.len();

    // flip rows to make the rhs nonnegative
    let mut flip = vec![false; m];
    for i in 0..m {
        if rhs[i] < Rat::zero() {
            flip[i] = true;
            rhs[i] = -rhs[i].clone();
        }
    }
    let col_entry = |i: usize, v: &Rat| -> Rat {
        if flip[i] {
            -v.clone()
        } else {
            v.clone()
        }
    };

    // basis: artificial variable per row, identified by index ncols + i
    let mut basis: Vec<usize> = (0..m).map(|i| ncols + i).collect();
    let mut binv: Vec<Vec<Rat>> = (0..m)
        .map(|i| {
            let mut row = vec![Rat::zero(); m];
            row[i] = Rat::one();
            row
        })
        .collect();
    let mut xb = rhs.clone();
    // y = sum of binv rows at artificial basic positions (phase-one dual)
    let mut y: Vec<Rat> = xb.iter().map(|_| Rat::one()).collect();

    let mut bland = false;
    let mut stall = 0usize;
    let mut last_obj: Option<Rat> = None;
    let mut iter = 0usize;

    loop {
        iter += 1;
        if iter % 64 == 0 {
            // guard against drift in the incremental dual
            for v in y.iter_mut() {
                *v = Rat::zero();
            }
            for i in 0..m {
                if basis[i] >= ncols {
                    for k in 0..m {
                        if !binv[i][k].is_zero() {
                            y[k] += &binv[i][k];
                        }
                    }
                }
            }
        }
        let mut obj = Rat::zero();
        for i in 0..m {
            if basis[i] >= ncols {
                obj += &xb[i];
            }
        }
        if obj.is_zero() {
            let sol = basis
                .iter()
                .zip(&xb)
                .filter(|(j, _)| **j < ncols)
                .map(|(j, v)| (*j, v.clone()))
                .collect();
            return PhaseOne::Feasible(sol);
        }
        match &last_obj {
            Some(o) if *o == obj => {
                stall += 1;
                if stall > 200 {
                    bland = true;
                }
            }
            _ => stall = 0,
        }
        last_obj = Some(obj);

        // price structural columns: reduced cost = -y . a_j
        let mut entering: Option<(usize, Rat)> = None;
        for (j, col) in cols.iter().enumerate() {
            let mut d = Rat::zero();
            for (i, v) in col {
                if !y[*i].is_zero() {
                    d -= &y[*i] * col_entry(*i, v);
                }
            }
            if d < Rat::zero() {
                if bland {
                    entering = Some((j, d));
                    break;
                }
                match &entering {
                    Some((_, best)) if d >= *best => {}
                    _ => entering = Some((j, d)),
                }
            }
        }
        let j = match entering {
            Some((j, _)) => j,
            None => {
                let y_orig: Vec<Rat> = (0..m)
                    .map(|i| if flip[i] { -y[i].clone() } else { y[i].clone() })
                    .collect();
                return PhaseOne::Infeasible(y_orig);
            }
        };

        // direction w = binv * a_j
        let mut w = vec![Rat::zero(); m];
        for (i, v) in &cols[j] {
            let a = col_entry(*i, v);
            if a.is_zero() {
                continue;
            }
            for r in 0..m {
                if !binv[r][*i].is_zero() {
                    w[r] += &binv[r][*i] * &a;
                }
            }
        }

        // ratio test
        let r = if bland {
            // Bland: among minimal ratios, leave the smallest basic index
            let mut leave: Option<(usize, Rat)> = None;
            for r in 0..m {
                if w[r] <= Rat::zero() {
                    continue;
                }
                let ratio = &xb[r] / &w[r];
                let better = match &leave {
                    None => true,
                    Some((lr, lratio)) => {
                        ratio < *lratio || (ratio == *lratio && basis[r] < basis[*lr])
                    }
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
            leave.expect("phase one objective is bounded below").0
        } else {
            // lexicographic: minimize (xb[r], binv[r][..]) / w[r]
            let mut cand: Vec<usize> = (0..m).filter(|&r| w[r] > Rat::zero()).collect();
            assert!(!cand.is_empty(), "phase one objective is bounded below");
            let mut best: Vec<usize> = vec![cand[0]];
            for &r in &cand[1..] {
                let cmp = (&xb[r] * &w[best[0]]).cmp(&(&xb[best[0]] * &w[r]));
                match cmp {
                    std::cmp::Ordering::Less => best = vec![r],
                    std::cmp::Ordering::Equal => best.push(r),
                    std::cmp::Ordering::Greater => {}
                }
            }
            if best.len() > 1 {
                for k in 0..m {
                    if best.len() == 1 {
                        break;
                    }
                    let mut next: Vec<usize> = vec![best[0]];
                    for &r in &best[1..] {
                        let cmp = (&binv[r][k] * &w[next[0]]).cmp(&(&binv[next[0]][k] * &w[r]));
                        match cmp {
                            std::cmp::Ordering::Less => next = vec![r],
                            std::cmp::Ordering::Equal => next.push(r),
                            std::cmp::Ordering::Greater => {}
                        }
                    }
                    best = next;
                }
            }
            cand.clear();
            best[0]
        };

        // incremental dual update: y' = y - [r was artificial] binv'[r]
        //                              - (sum of w_i over artificial basics, i != r) binv'[r]
        let mut art_w = Rat::zero();
        for i in 0..m {
            if i != r && basis[i] >= ncols && !w[i].is_zero() {
                art_w += &w[i];
            }
        }
        if basis[r] >= ncols {
            art_w += &w[r];
        }

        // pivot: basis[r] <- j, update binv and xb
        let pinv = w[r].clone().recip();
        for k in 0..m {
            if !binv[r][k].is_zero() {
                binv[r][k] *= &pinv;
            }
        }
        xb[r] *= &pinv;
        for i in 0..m {
            if i == r || w[i].is_zero() {
                continue;
            }
            let f = w[i].clone();
            for k in 0..m {
                if !binv[r][k].is_zero() {
                    let t = &binv[r][k] * &f;
                    binv[i][k] -= t;
                }
            }
            let t = &xb[r] * &f;
            xb[i] -= t;
        }
        basis[r] = j;
        if !art_w.is_zero() {
            for k in 0..m {
                if !binv[r][k].is_zero() {
                    let t = &binv[r][k] * &art_w;
                    y[k] -= t;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat_int;
    use crate::classes::{fiber_component_class, fiber_fdecomp, pair, FiberComponent};

    fn ms_n(n: usize) -> Arc<MarkingSet> {
        let labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        MarkingSet::new(&labels).unwrap()
    }

    #[test]
    fn stirling_counts() {
        assert_eq!(enumerate_fcurves(&ms_n(4)).len(), 1);
        assert_eq!(enumerate_fcurves(&ms_n(6)).len(), 65);
        assert_eq!(enumerate_fcurves(&ms_n(9)).len(), 7770);
    }

    #[test]
    fn partitions_are_distinct() {
        let all = enumerate_fcurves(&ms_n(6));
        for i in 0..all.len() {
            for j in i + 1..all.len() {
                assert_ne!(all[i], all[j]);
            }
        }
    }

    #[test]
    fn negative_fcurve_is_infeasible() {
        let ms = ms_n(6);
        let f = enumerate_fcurves(&ms).into_iter().next().unwrap();
        let c = fcurve_class(&f).neg();
        match lp_decompose(&c, DEFAULT_CAP).unwrap() {
            DecompOutcome::Infeasible(w) => {
                assert!(pair(&c, &w).unwrap() < Rat::zero());
                for g in enumerate_fcurves(&ms) {
                    assert!(pair(&fcurve_class(&g), &w).unwrap() >= Rat::zero());
                }
            }
            DecompOutcome::Certificate(_) => panic!("negative class cannot be effective"),
        }
    }

    #[test]
    fn fiber_component_feasible_at_n6() {
        let ms = ms_n(6);
        let b = FiberComponent::new(&ms, "1", &[vec!["2", "3"], vec!["4"], vec!["5", "6"]]).unwrap();
        let target = fiber_component_class(&b);
        match lp_decompose(&target, DEFAULT_CAP).unwrap() {
            DecompOutcome::Certificate(cert) => {
                verify_certificate(&target, &cert).unwrap();
                let alt = fiber_fdecomp(&b);
                assert_eq!(alt.class_sum(&ms).unwrap(), target);
            }
            DecompOutcome::Infeasible(_) => panic!("fiber component is effective"),
        }
    }

    #[test]
    fn cap_is_enforced() {
        let ms = ms_n(12);
        let c = ClassVector::zero(&ms);
        assert!(matches!(
            lp_decompose(&c, DEFAULT_CAP),
            Err(FconeError::CapExceeded { .. })
        ));
    }

    #[test]
    fn verify_reports_residual_sides() {
        let ms = ms_n(6);
        let f = enumerate_fcurves(&ms).into_iter().next().unwrap();
        let mut c = fcurve_class(&f);
        c.add_at(&["1", "2"], rat_int(5)).unwrap();
        let cert = DecompCertificate::new(vec![(Generator::F(f), rat_int(1))]).unwrap();
        let err = verify_certificate(&c, &cert).unwrap_err();
        let msg = format!("{err}");
        assert!(msg.contains("residual"));
    }
}
