use std::fmt;

use super::{ArithError, FieldElem};

/// Dense univariate polynomial over an exact field, constant term first.
/// The zero polynomial has an empty coefficient list.
#[derive(Clone, PartialEq)]
pub struct Poly<F: FieldElem> {
    pub coeffs: Vec<F>,
}

impl<F: FieldElem> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("({})", c),
                1 => format!("({})*T", c),
                _ => format!("({})*T^{}", c, i),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl<F: FieldElem> Poly<F> {
    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn constant(c: F) -> Self {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { coeffs: vec![c] }
        }
    }

    /// `c0 + c1*T`.
    pub fn linear(c0: F, c1: F) -> Self {
        Poly {
            coeffs: vec![c0, c1],
        }
        .trimmed()
    }

    pub fn from_coeffs(coeffs: Vec<F>) -> Self {
        Poly { coeffs }.trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            self.coeffs.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn lead(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &F) -> F {
        let mut it = self.coeffs.iter().rev();
        let mut acc = match it.next() {
            Some(c) => c.clone(),
            None => return x.zero_like(),
        };
        for c in it {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn add(&self, other: &Poly<F>) -> Poly<F> {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i);
            let b = other.coeffs.get(i);
            out.push(match (a, b) {
                (Some(a), Some(b)) => a.clone() + b.clone(),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Poly { coeffs: out }.trimmed()
    }

    pub fn sub(&self, other: &Poly<F>) -> Poly<F> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly<F> {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn mul(&self, other: &Poly<F>) -> Poly<F> {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly { coeffs: out }.trimmed()
    }

    pub fn scale(&self, c: &F) -> Poly<F> {
        Poly {
            coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
        }
        .trimmed()
    }

    /// Euclidean division; `other` must be nonzero.
    pub fn divmod(&self, other: &Poly<F>) -> Result<(Poly<F>, Poly<F>), ArithError> {
        let lead = other
            .lead()
            .ok_or_else(|| ArithError::DivisionByZero("polynomial division".into()))?;
        let lead_inv = lead.inv()?;
        let db = other.degree().unwrap();
        let mut rem = self.clone();
        if rem.degree().map(|d| d < db).unwrap_or(true) {
            return Ok((Poly::zero(), rem));
        }
        let zero = lead.zero_like();
        let mut quot = vec![zero; rem.coeffs.len() - db];
        while let Some(dr) = rem.degree() {
            if dr < db {
                break;
            }
            let c = rem.lead().unwrap().clone() * lead_inv.clone();
            quot[dr - db] = c.clone();
            for i in 0..=db {
                let t = other.coeffs[i].clone() * c.clone();
                rem.coeffs[dr - db + i] = rem.coeffs[dr - db + i].clone() - t;
            }
            rem = rem.trimmed();
        }
        Ok((Poly { coeffs: quot }.trimmed(), rem))
    }

    /// Monic gcd; zero polynomial when both inputs are zero.
    pub fn gcd(&self, other: &Poly<F>) -> Result<Poly<F>, ArithError> {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.divmod(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic()?)
    }

    pub fn monic(&self) -> Result<Poly<F>, ArithError> {
        match self.lead() {
            None => Ok(Poly::zero()),
            Some(l) => {
                let inv = l.inv()?;
                Ok(self.scale(&inv))
            }
        }
    }

    pub fn derivative(&self) -> Poly<F> {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| {
                let mut acc = c.zero_like();
                for _ in 0..i {
                    acc = acc + c.clone();
                }
                acc
            })
            .collect();
        Poly { coeffs }.trimmed()
    }

    /// Exact multiplicity of `root` as a zero of this polynomial.
    pub fn root_multiplicity(&self, root: &F) -> Result<usize, ArithError> {
        let lin = Poly::linear(-root.clone(), root.one_like());
        let mut mult = 0;
        let mut cur = self.clone();
        loop {
            if cur.is_zero() {
                return Ok(mult);
            }
            let (q, r) = cur.divmod(&lin)?;
            if !r.is_zero() {
                return Ok(mult);
            }
            mult += 1;
            cur = q;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat_int, Rat};

    fn p(cs: &[i64]) -> Poly<Rat> {
        Poly::from_coeffs(cs.iter().map(|&c| rat_int(c)).collect())
    }

    #[test]
    fn divmod_and_gcd() {
        // (T-1)(T-2) and (T-1)(T-3) have gcd T-1
        let a = p(&[2, -3, 1]);
        let b = p(&[3, -4, 1]);
        let g = a.gcd(&b).unwrap();
        assert_eq!(g, p(&[-1, 1]));
        let (q, r) = a.divmod(&g).unwrap();
        assert!(r.is_zero());
        assert_eq!(q, p(&[-2, 1]));
    }

    #[test]
    fn multiplicity() {
        // (T-5)^3 * (T+1)
        let a = p(&[-5, 1]);
        let f = a.mul(&a).mul(&a).mul(&p(&[1, 1]));
        assert_eq!(f.root_multiplicity(&rat_int(5)).unwrap(), 3);
        assert_eq!(f.root_multiplicity(&rat_int(-1)).unwrap(), 1);
        assert_eq!(f.root_multiplicity(&rat_int(2)).unwrap(), 0);
    }
}
