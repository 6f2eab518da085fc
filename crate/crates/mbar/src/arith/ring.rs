use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::ArithError;

/// A monogenic number ring `Z[x]/(mu(x))` with `mu` monic.
///
/// The ring of plain integers is encoded as degree 1 with `mu(x) = x`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NumberRing {
    pub variable_name: String,
    /// Coefficients of mu, constant term first; leading coefficient 1.
    pub min_poly: Vec<BigInt>,
}

impl fmt::Debug for NumberRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z[{}]/(mu deg {})", self.variable_name, self.degree())
    }
}

impl NumberRing {
    pub fn new(variable_name: &str, min_poly: Vec<BigInt>) -> Result<Arc<Self>, ArithError> {
        if min_poly.len() < 2 || !min_poly.last().unwrap().is_one() {
            return Err(ArithError::BadMinPoly);
        }
        Ok(Arc::new(NumberRing {
            variable_name: variable_name.to_string(),
            min_poly,
        }))
    }

    /// The plain integers, `Z[x]/(x)`.
    pub fn integers() -> Arc<Self> {
        NumberRing::new("x", vec![BigInt::zero(), BigInt::one()]).unwrap()
    }

    /// Eisenstein integers `Z[w]`, `w^2 + w + 1 = 0`.
    pub fn eisenstein() -> Arc<Self> {
        NumberRing::new("w", vec![BigInt::one(), BigInt::one(), BigInt::one()]).unwrap()
    }

    /// `Z[t]` with `t^2 - 3t + 1 = 0` (golden-ratio ring of the nine-line
    /// configuration).
    pub fn golden() -> Arc<Self> {
        NumberRing::new(
            "t",
            vec![BigInt::one(), BigInt::from(-3), BigInt::one()],
        )
        .unwrap()
    }

    pub fn degree(&self) -> usize {
        self.min_poly.len() - 1
    }

    pub fn zero(self: &Arc<Self>) -> RingElem {
        RingElem {
            ring: self.clone(),
            coeffs: vec![BigInt::zero(); self.degree()],
        }
    }

    pub fn one(self: &Arc<Self>) -> RingElem {
        self.from_int(BigInt::one())
    }

    pub fn from_int(self: &Arc<Self>, n: BigInt) -> RingElem {
        let mut coeffs = vec![BigInt::zero(); self.degree()];
        coeffs[0] = n;
        RingElem {
            ring: self.clone(),
            coeffs,
        }
    }

    /// The image of the ring generator (0 for the integer ring, where the
    /// generator is a root of `x`).
    pub fn generator(self: &Arc<Self>) -> RingElem {
        let mut coeffs = vec![BigInt::zero(); self.degree()];
        if self.degree() >= 2 {
            coeffs[1] = BigInt::one();
        }
        RingElem {
            ring: self.clone(),
            coeffs,
        }
    }

    pub fn elem(self: &Arc<Self>, coeffs: Vec<BigInt>) -> Result<RingElem, ArithError> {
        if coeffs.len() > self.degree() && coeffs[self.degree()..].iter().any(|c| !c.is_zero()) {
            return Err(ArithError::BadCoeffLen {
                got: coeffs.len(),
                want: self.degree(),
            });
        }
        let mut c = coeffs;
        c.resize(self.degree(), BigInt::zero());
        Ok(RingElem {
            ring: self.clone(),
            coeffs: c,
        })
    }

    pub fn elem_i64(self: &Arc<Self>, coeffs: &[i64]) -> RingElem {
        self.elem(coeffs.iter().map(|&c| BigInt::from(c)).collect())
            .expect("coefficient vector too long")
    }

    /// mu evaluated at an integer.
    pub fn min_poly_at(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.min_poly.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}

/// Element of a [`NumberRing`] in the power basis `1, x, ..., x^(d-1)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RingElem {
    pub ring: Arc<NumberRing>,
    pub coeffs: Vec<BigInt>,
}

impl fmt::Debug for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = &self.ring.variable_name;
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let m = match i {
                0 => c.to_string(),
                1 if c.is_one() => var.clone(),
                1 => format!("{}*{}", c, var),
                _ if c.is_one() => format!("{}^{}", var, i),
                _ => format!("{}*{}^{}", c, var, i),
            };
            parts.push(m);
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join("+").replace("+-", "-"))
        }
    }
}

impl RingElem {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn check_ring(&self, other: &RingElem) -> Result<(), ArithError> {
        if self.ring.min_poly != other.ring.min_poly {
            return Err(ArithError::RingMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &RingElem) -> RingElem {
        self.check_ring(other).expect("ring mismatch");
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        RingElem {
            ring: self.ring.clone(),
            coeffs,
        }
    }

    pub fn sub(&self, other: &RingElem) -> RingElem {
        self.check_ring(other).expect("ring mismatch");
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        RingElem {
            ring: self.ring.clone(),
            coeffs,
        }
    }

    pub fn neg(&self) -> RingElem {
        RingElem {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &RingElem) -> RingElem {
        self.check_ring(other).expect("ring mismatch");
        let d = self.ring.degree();
        let mut raw = vec![BigInt::zero(); 2 * d];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                raw[i + j] += a * b;
            }
        }
        // reduce x^k for k >= d using x^d = -(mu - x^d)
        for k in (d..2 * d).rev() {
            if raw[k].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut raw[k], BigInt::zero());
            for i in 0..d {
                let m = &self.ring.min_poly[i];
                if !m.is_zero() {
                    raw[k - d + i] -= &c * m;
                }
            }
        }
        raw.truncate(d);
        RingElem {
            ring: self.ring.clone(),
            coeffs: raw,
        }
    }

    pub fn scale(&self, n: &BigInt) -> RingElem {
        RingElem {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|c| c * n).collect(),
        }
    }

    /// Field norm down to `Z`: the determinant of multiplication by `self`
    /// on the power basis, i.e. the resultant `Res(mu, self)`.
    pub fn norm(&self) -> BigInt {
        let d = self.ring.degree();
        // columns: self * x^j reduced, j = 0..d
        let mut cols = Vec::with_capacity(d);
        let mut cur = self.clone();
        cols.push(cur.coeffs.clone());
        for _ in 1..d {
            cur = cur.mul(&self.ring.generator());
            cols.push(cur.coeffs.clone());
        }
        let mat: Vec<Vec<BigInt>> = (0..d)
            .map(|i| (0..d).map(|j| cols[j][i].clone()).collect())
            .collect();
        det_bareiss(mat)
    }

    pub fn is_unit(&self) -> bool {
        self.norm().abs().is_one()
    }
}

/// Fraction-free Gaussian elimination; exact integer determinant.
pub(crate) fn det_bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = &t / &prev;
            }
        }
        for row in m.iter_mut().take(n).skip(k + 1) {
            row[k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

fn is_prime_u64(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Reduction `Z[x]/(mu) -> F_p` sending the generator to `root`;
/// checked to be a ring homomorphism at construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ReductionMap {
    pub source: Arc<NumberRing>,
    pub p: u64,
    pub root: i64,
}

impl ReductionMap {
    pub fn new(source: Arc<NumberRing>, p: u64, root: i64) -> Result<Self, ArithError> {
        if !is_prime_u64(p) {
            return Err(ArithError::NotPrime { p });
        }
        let v = source.min_poly_at(&BigInt::from(root));
        if !(v % BigInt::from(p)).is_zero() {
            return Err(ArithError::BadReductionRoot { p, root });
        }
        Ok(ReductionMap { source, p, root })
    }

    /// Substitute the root and reduce mod p; result in `0..p`.
    pub fn reduce(&self, e: &RingElem) -> Result<u64, ArithError> {
        if e.ring.min_poly != self.source.min_poly {
            return Err(ArithError::RingMismatch);
        }
        let p = BigInt::from(self.p);
        let r = BigInt::from(self.root);
        let mut acc = BigInt::zero();
        for c in e.coeffs.iter().rev() {
            acc = (acc * &r + c) % &p;
        }
        let acc = ((acc % &p) + &p) % &p;
        Ok(u64::try_from(acc).unwrap())
    }

    /// Roots of mu mod p, in `0..p`. Empty when p is inert.
    pub fn roots_mod_p(ring: &NumberRing, p: u64) -> Vec<i64> {
        (0..p as i64)
            .filter(|r| {
                (ring.min_poly_at(&BigInt::from(*r)) % BigInt::from(p)).is_zero()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norm_examples() {
        // tau - 2 in Z[tau] is a unit: mu(2) = 4 - 6 + 1 = -1
        let zt = NumberRing::golden();
        let e = zt.elem_i64(&[-2, 1]);
        assert_eq!(e.norm(), BigInt::from(-1));
        assert!(e.is_unit());

        // omega - 1 in Z[omega] has norm mu(1) = 3 up to sign
        let zw = NumberRing::eisenstein();
        let e = zw.elem_i64(&[-1, 1]);
        assert_eq!(e.norm().abs(), BigInt::from(3));

        // the identity has norm 1 in any ring
        assert_eq!(zw.one().norm(), BigInt::one());
        assert_eq!(NumberRing::integers().one().norm(), BigInt::one());
    }

    #[test]
    fn norm_is_multiplicative() {
        let zw = NumberRing::eisenstein();
        let pairs = [
            ([2, 3], [5, -1]),
            ([0, 1], [1, 1]),
            ([-4, 7], [3, 2]),
            ([11, -2], [0, 5]),
        ];
        for (a, b) in pairs {
            let a = zw.elem_i64(&a);
            let b = zw.elem_i64(&b);
            assert_eq!(a.mul(&b).norm(), a.norm() * b.norm());
        }
    }

    #[test]
    fn reduction_is_homomorphism() {
        let zw = NumberRing::eisenstein();
        let m = ReductionMap::new(zw.clone(), 3, 1).unwrap();
        // omega^2 = -1 - omega -> -2 = 1 mod 3
        let w2 = zw.generator().mul(&zw.generator());
        assert_eq!(m.reduce(&w2).unwrap(), 1);

        let zt = NumberRing::golden();
        let m5 = ReductionMap::new(zt.clone(), 5, -1).unwrap();
        // 2(tau - 1) -> 2(-1 - 1) = -4 = 1 mod 5
        let e = zt.elem_i64(&[-2, 2]);
        assert_eq!(m5.reduce(&e).unwrap(), 1);

        let pairs = [([2, 3], [5, -1]), ([-4, 7], [3, 2]), ([9, 4], [-1, 6])];
        for (a, b) in pairs {
            let a = zw.elem_i64(&a);
            let b = zw.elem_i64(&b);
            let (ra, rb) = (m.reduce(&a).unwrap(), m.reduce(&b).unwrap());
            assert_eq!(m.reduce(&a.add(&b)).unwrap(), (ra + rb) % 3);
            assert_eq!(m.reduce(&a.mul(&b)).unwrap(), (ra * rb) % 3);
        }
    }

    #[test]
    fn reduction_rejects_non_roots() {
        let zw = NumberRing::eisenstein();
        assert!(ReductionMap::new(zw.clone(), 3, 0).is_err());
        assert!(ReductionMap::new(zw.clone(), 4, 1).is_err());
        // 2 is inert in Z[omega]: x^2+x+1 has no root mod 2
        assert!(ReductionMap::roots_mod_p(&zw, 2).is_empty());
        assert_eq!(ReductionMap::roots_mod_p(&zw, 3), vec![1]);
        let zt = NumberRing::golden();
        assert_eq!(ReductionMap::roots_mod_p(&zt, 5), vec![4]);
    }
}
