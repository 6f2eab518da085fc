use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

fn zr(c: &Rat) -> bool {
    Zero::is_zero(c)
}

use super::ring::{NumberRing, RingElem};
use super::{ArithError, FieldElem, Rat};

/// Element of the fraction field `Q[x]/(mu)` of a number ring.
///
/// Assumes mu is irreducible over Q (true for every ring this crate
/// constructs); inversion reports failure otherwise.
#[derive(Clone, PartialEq)]
pub struct NfElem {
    pub ring: Arc<NumberRing>,
    pub coeffs: Vec<Rat>,
}

impl fmt::Debug for NfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for NfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = &self.ring.variable_name;
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if zr(c) {
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

impl NfElem {
    pub fn zero(ring: &Arc<NumberRing>) -> Self {
        NfElem {
            ring: ring.clone(),
            coeffs: vec![Rat::zero(); ring.degree()],
        }
    }

    pub fn from_rat(ring: &Arc<NumberRing>, q: Rat) -> Self {
        let mut e = NfElem::zero(ring);
        e.coeffs[0] = q;
        e
    }

    pub fn from_i64(ring: &Arc<NumberRing>, n: i64) -> Self {
        NfElem::from_rat(ring, Rat::from_integer(n.into()))
    }

    pub fn generator(ring: &Arc<NumberRing>) -> Self {
        let mut e = NfElem::zero(ring);
        if ring.degree() >= 2 {
            e.coeffs[1] = Rat::one();
        }
        e
    }

    pub fn from_ring_elem(e: &RingElem) -> Self {
        NfElem {
            ring: e.ring.clone(),
            coeffs: e.coeffs.iter().map(|c| Rat::from_integer(c.clone())).collect(),
        }
    }

    /// `a + b*gen` convenience for quadratic rings (zero-pads above).
    pub fn from_pair(ring: &Arc<NumberRing>, a: Rat, b: Rat) -> Self {
        let mut e = NfElem::zero(ring);
        e.coeffs[0] = a;
        if ring.degree() >= 2 {
            e.coeffs[1] = b;
        } else {
            assert!(zr(&b), "degree-1 ring cannot hold a generator part");
        }
        e
    }

    fn check_ring(&self, other: &NfElem) {
        assert_eq!(
            self.ring.min_poly, other.ring.min_poly,
            "number field mismatch"
        );
    }

    fn mul_impl(&self, other: &NfElem) -> NfElem {
        self.check_ring(other);
        let d = self.ring.degree();
        let mut raw = vec![Rat::zero(); 2 * d];
        for (i, a) in self.coeffs.iter().enumerate() {
            if zr(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if zr(b) {
                    continue;
                }
                raw[i + j] += a * b;
            }
        }
        for k in (d..2 * d).rev() {
            if zr(&raw[k]) {
                continue;
            }
            let c = std::mem::replace(&mut raw[k], Rat::zero());
            for i in 0..d {
                let m = &self.ring.min_poly[i];
                if !num_traits::Zero::is_zero(m) {
                    raw[k - d + i] -= &c * Rat::from_integer(m.clone());
                }
            }
        }
        raw.truncate(d);
        NfElem {
            ring: self.ring.clone(),
            coeffs: raw,
        }
    }

    /// Multiply by the least common denominator; returns an integral element.
    pub fn to_ring_elem_scaled(&self) -> RingElem {
        let mut lcm = num_bigint::BigInt::one();
        for c in &self.coeffs {
            lcm = num_integer::lcm(lcm, c.denom().clone());
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        RingElem {
            ring: self.ring.clone(),
            coeffs,
        }
    }
}

impl std::ops::Add for NfElem {
    type Output = NfElem;
    fn add(self, rhs: NfElem) -> NfElem {
        self.check_ring(&rhs);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        NfElem {
            ring: self.ring,
            coeffs,
        }
    }
}

impl std::ops::Sub for NfElem {
    type Output = NfElem;
    fn sub(self, rhs: NfElem) -> NfElem {
        self.check_ring(&rhs);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        NfElem {
            ring: self.ring,
            coeffs,
        }
    }
}

impl std::ops::Mul for NfElem {
    type Output = NfElem;
    fn mul(self, rhs: NfElem) -> NfElem {
        self.mul_impl(&rhs)
    }
}

impl std::ops::Neg for NfElem {
    type Output = NfElem;
    fn neg(self) -> NfElem {
        NfElem {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl FieldElem for NfElem {
    fn zero_like(&self) -> Self {
        NfElem::zero(&self.ring)
    }
    fn one_like(&self) -> Self {
        NfElem::from_rat(&self.ring, Rat::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(zr)
    }
    fn from_rat_like(&self, q: &Rat) -> Self {
        NfElem::from_rat(&self.ring, q.clone())
    }

    fn inv(&self) -> Result<Self, ArithError> {
        if FieldElem::is_zero(self) {
            return Err(ArithError::NotInvertible("0".into()));
        }
        // extended Euclid in Q[x] for gcd(self, mu) = 1
        let mu: Vec<Rat> = self
            .ring
            .min_poly
            .iter()
            .map(|c| Rat::from_integer(c.clone()))
            .collect();
        let (mut r0, mut r1) = (mu, trim(self.coeffs.clone()));
        let (mut s0, mut s1) = (vec![], vec![Rat::one()]);
        while !r1.is_empty() {
            let (q, rem) = poly_divmod(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = r1;
            r1 = rem;
            s0 = s1;
            s1 = s2;
        }
        if r0.len() != 1 {
            return Err(ArithError::NotInvertible(format!("{}", self)));
        }
        let scale = r0[0].clone().recip();
        let mut coeffs: Vec<Rat> = s0.iter().map(|c| c * &scale).collect();
        coeffs.resize(self.ring.degree(), Rat::zero());
        // s0 may have degree >= d when self had low degree; reduce by mul
        let inv = NfElem {
            ring: self.ring.clone(),
            coeffs,
        };
        debug_assert!(FieldElem::is_zero(
            &(inv.clone() * self.clone() - self.one_like())
        ));
        Ok(inv)
    }
}

fn trim(mut v: Vec<Rat>) -> Vec<Rat> {
    while v.last().map(zr).unwrap_or(false) {
        v.pop();
    }
    v
}

fn poly_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let n = a.len().max(b.len());
    let mut out = vec![Rat::zero(); n];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    trim(out)
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_divmod(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let lead = b.last().unwrap();
    if rem.len() <= db {
        return (vec![], trim(rem));
    }
    let mut quot = vec![Rat::zero(); rem.len() - db];
    while trim(rem.clone()).len() > db {
        rem = trim(rem);
        let dr = rem.len() - 1;
        let c = rem.last().unwrap() / lead;
        quot[dr - db] = c.clone();
        for i in 0..=db {
            let t = &b[i] * &c;
            rem[dr - db + i] -= t;
        }
        rem = trim(rem);
        if rem.is_empty() {
            break;
        }
    }
    (trim(quot), trim(rem))
}

/// Exact absolute value as a rational when the element is rational, used by
/// display code; number-field elements have no canonical real embedding here.
impl NfElem {
    pub fn as_rat(&self) -> Option<Rat> {
        if self.coeffs[1..].iter().all(zr) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn norm_rat(&self) -> Rat {
        // determinant of multiplication matrix over Q
        let d = self.ring.degree();
        let mut cols = Vec::with_capacity(d);
        let mut cur = self.clone();
        cols.push(cur.coeffs.clone());
        for _ in 1..d {
            cur = cur * NfElem::generator(&self.ring);
            cols.push(cur.coeffs.clone());
        }
        det_rat((0..d)
            .map(|i| (0..d).map(|j| cols[j][i].clone()).collect())
            .collect())
    }
}

fn det_rat(mut m: Vec<Vec<Rat>>) -> Rat {
    let n = m.len();
    let mut det = Rat::one();
    for k in 0..n {
        let piv = match (k..n).find(|&i| !zr(&m[i][k])) {
            Some(i) => i,
            None => return Rat::zero(),
        };
        if piv != k {
            m.swap(k, piv);
            det = -det;
        }
        det *= &m[k][k];
        let inv = m[k][k].clone().recip();
        for i in k + 1..n {
            if zr(&m[i][k]) {
                continue;
            }
            let f = &m[i][k] * &inv;
            for j in k..n {
                let t = &m[k][j] * &f;
                m[i][j] -= t;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_in_eisenstein_field() {
        let zw = NumberRing::eisenstein();
        // (1 - w)^-1 * (1 - w) = 1
        let e = NfElem::from_pair(&zw, Rat::one(), -Rat::one());
        let inv = FieldElem::inv(&e).unwrap();
        assert_eq!(e.clone() * inv, NfElem::from_rat(&zw, Rat::one()));
    }

    #[test]
    fn inverse_of_generator() {
        let zt = NumberRing::golden();
        let t = NfElem::generator(&zt);
        let inv = FieldElem::inv(&t).unwrap();
        // t^-1 = 3 - t since t^2 - 3t + 1 = 0
        assert_eq!(inv, NfElem::from_pair(&zt, Rat::from_integer(3.into()), -Rat::one()));
    }
}
