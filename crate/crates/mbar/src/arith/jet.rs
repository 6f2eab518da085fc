use std::fmt;

use super::{ArithError, FieldElem, Rat};

/// Second-order truncated Taylor expansion at a point: exact value,
/// gradient, and symmetric Hessian in `v` active variables.
///
/// The Hessian is stored as a packed lower triangle.
#[derive(Clone, PartialEq)]
pub struct Jet2<F: FieldElem> {
    pub value: F,
    pub grad: Vec<F>,
    hess: Vec<F>,
}

fn tri(i: usize, j: usize) -> usize {
    let (i, j) = if i >= j { (i, j) } else { (j, i) };
    i * (i + 1) / 2 + j
}

impl<F: FieldElem> fmt::Debug for Jet2<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Jet2({}; grad {:?})", self.value, self.grad)
    }
}

impl<F: FieldElem> fmt::Display for Jet2<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl<F: FieldElem> Jet2<F> {
    pub fn constant(value: F, nvars: usize) -> Self {
        let zero = value.zero_like();
        Jet2 {
            value,
            grad: vec![zero.clone(); nvars],
            hess: vec![zero; nvars * (nvars + 1) / 2],
        }
    }

    /// Seed for the `idx`-th variable: unit gradient, zero Hessian.
    pub fn variable(value: F, idx: usize, nvars: usize) -> Self {
        let mut jet = Jet2::constant(value, nvars);
        jet.grad[idx] = jet.grad[idx].one_like();
        jet
    }

    pub fn nvars(&self) -> usize {
        self.grad.len()
    }

    pub fn hess_at(&self, i: usize, j: usize) -> &F {
        &self.hess[tri(i, j)]
    }

    pub fn is_zero_jet(&self) -> bool {
        self.value.is_zero()
            && self.grad.iter().all(|g| g.is_zero())
            && self.hess.iter().all(|h| h.is_zero())
    }

    pub fn mul_scalar(&self, c: &F) -> Self {
        Jet2 {
            value: self.value.clone() * c.clone(),
            grad: self.grad.iter().map(|g| g.clone() * c.clone()).collect(),
            hess: self.hess.iter().map(|h| h.clone() * c.clone()).collect(),
        }
    }

    /// Truncated Leibniz product:
    /// `(fg)'' = f''g + f' (x) g' + g' (x) f' + f g''`.
    fn mul_impl(&self, other: &Jet2<F>) -> Jet2<F> {
        let n = self.nvars();
        assert_eq!(n, other.nvars(), "jet variable count mismatch");
        let value = self.value.clone() * other.value.clone();
        let grad: Vec<F> = (0..n)
            .map(|i| {
                self.grad[i].clone() * other.value.clone()
                    + self.value.clone() * other.grad[i].clone()
            })
            .collect();
        let mut hess = Vec::with_capacity(self.hess.len());
        for i in 0..n {
            for j in 0..=i {
                let t = self.hess[tri(i, j)].clone() * other.value.clone()
                    + self.value.clone() * other.hess[tri(i, j)].clone()
                    + self.grad[i].clone() * other.grad[j].clone()
                    + self.grad[j].clone() * other.grad[i].clone();
                hess.push(t);
            }
        }
        Jet2 { value, grad, hess }
    }

    fn inv_impl(&self) -> Result<Jet2<F>, ArithError> {
        let v = self.value.inv()?;
        let v2 = v.clone() * v.clone();
        let v3 = v2.clone() * v.clone();
        let n = self.nvars();
        let grad: Vec<F> = (0..n).map(|i| -(self.grad[i].clone() * v2.clone())).collect();
        let two = v.one_like() + v.one_like();
        let mut hess = Vec::with_capacity(self.hess.len());
        for i in 0..n {
            for j in 0..=i {
                let t = two.clone() * self.grad[i].clone() * self.grad[j].clone() * v3.clone()
                    - self.hess[tri(i, j)].clone() * v2.clone();
                hess.push(t);
            }
        }
        Ok(Jet2 {
            value: v,
            grad,
            hess,
        })
    }
}

impl<F: FieldElem> std::ops::Add for Jet2<F> {
    type Output = Jet2<F>;
    fn add(self, rhs: Jet2<F>) -> Jet2<F> {
        Jet2 {
            value: self.value + rhs.value,
            grad: self
                .grad
                .into_iter()
                .zip(rhs.grad)
                .map(|(a, b)| a + b)
                .collect(),
            hess: self
                .hess
                .into_iter()
                .zip(rhs.hess)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl<F: FieldElem> std::ops::Sub for Jet2<F> {
    type Output = Jet2<F>;
    fn sub(self, rhs: Jet2<F>) -> Jet2<F> {
        self + (-rhs)
    }
}

impl<F: FieldElem> std::ops::Neg for Jet2<F> {
    type Output = Jet2<F>;
    fn neg(self) -> Jet2<F> {
        Jet2 {
            value: -self.value,
            grad: self.grad.into_iter().map(|g| -g).collect(),
            hess: self.hess.into_iter().map(|h| -h).collect(),
        }
    }
}

impl<F: FieldElem> std::ops::Mul for Jet2<F> {
    type Output = Jet2<F>;
    fn mul(self, rhs: Jet2<F>) -> Jet2<F> {
        self.mul_impl(&rhs)
    }
}

impl<F: FieldElem> FieldElem for Jet2<F> {
    fn zero_like(&self) -> Self {
        Jet2::constant(self.value.zero_like(), self.nvars())
    }
    fn one_like(&self) -> Self {
        Jet2::constant(self.value.one_like(), self.nvars())
    }
    fn is_zero(&self) -> bool {
        self.is_zero_jet()
    }
    fn inv(&self) -> Result<Self, ArithError> {
        self.inv_impl()
    }
    fn from_rat_like(&self, q: &Rat) -> Self {
        Jet2::constant(self.value.from_rat_like(q), self.nvars())
    }
}

/// Arithmetic expression tree for [`jet_eval`].
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Const(Rat),
    Var(String),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(q) => write!(f, "{}", q),
            Expr::Var(v) => write!(f, "{}", v),
            Expr::Add(a, b) => write!(f, "({} + {})", a, b),
            Expr::Sub(a, b) => write!(f, "({} - {})", a, b),
            Expr::Mul(a, b) => write!(f, "({} * {})", a, b),
            Expr::Div(a, b) => write!(f, "({} / {})", a, b),
            Expr::Neg(a) => write!(f, "(-{})", a),
        }
    }
}

impl Expr {
    pub fn var(name: &str) -> Expr {
        Expr::Var(name.to_string())
    }

    pub fn int(n: i64) -> Expr {
        Expr::Const(Rat::from_integer(n.into()))
    }

    pub fn add(self, rhs: Expr) -> Expr {
        Expr::Add(Box::new(self), Box::new(rhs))
    }
    pub fn sub(self, rhs: Expr) -> Expr {
        Expr::Sub(Box::new(self), Box::new(rhs))
    }
    pub fn mul(self, rhs: Expr) -> Expr {
        Expr::Mul(Box::new(self), Box::new(rhs))
    }
    pub fn div(self, rhs: Expr) -> Expr {
        Expr::Div(Box::new(self), Box::new(rhs))
    }
    pub fn neg(self) -> Expr {
        Expr::Neg(Box::new(self))
    }
}

/// Evaluate an expression to a second-order jet at the given point.
///
/// The gradient/Hessian variable order is the order of `point`; dividing by
/// a subexpression that vanishes at the point reports that subexpression.
pub fn jet_eval<F: FieldElem>(expr: &Expr, point: &[(String, F)]) -> Result<Jet2<F>, ArithError> {
    let n = point.len();
    match expr {
        Expr::Const(q) => {
            let sample = &point
                .first()
                .expect("jet_eval needs at least one variable for field context")
                .1;
            Ok(Jet2::constant(sample.from_rat_like(q), n))
        }
        Expr::Var(name) => {
            let idx = point
                .iter()
                .position(|(v, _)| v == name)
                .ok_or_else(|| ArithError::UnknownVariable(name.clone()))?;
            Ok(Jet2::variable(point[idx].1.clone(), idx, n))
        }
        Expr::Add(a, b) => Ok(jet_eval(a, point)? + jet_eval(b, point)?),
        Expr::Sub(a, b) => Ok(jet_eval(a, point)? - jet_eval(b, point)?),
        Expr::Mul(a, b) => Ok(jet_eval(a, point)? * jet_eval(b, point)?),
        Expr::Neg(a) => Ok(-jet_eval(a, point)?),
        Expr::Div(a, b) => {
            let den = jet_eval(b, point)?;
            if den.value.is_zero() {
                return Err(ArithError::DivisionByZero(b.to_string()));
            }
            Ok(jet_eval(a, point)? * den.inv_impl()?)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat_int;

    #[test]
    fn bilinear_form() {
        // u*v at (2,3): value 6, grad (3,2), hess [[0,1],[1,0]]
        let e = Expr::var("u").mul(Expr::var("v"));
        let jet = jet_eval(&e, &[("u".into(), rat_int(2)), ("v".into(), rat_int(3))]).unwrap();
        assert_eq!(jet.value, rat_int(6));
        assert_eq!(jet.grad, vec![rat_int(3), rat_int(2)]);
        assert_eq!(*jet.hess_at(0, 0), rat_int(0));
        assert_eq!(*jet.hess_at(0, 1), rat_int(1));
        assert_eq!(*jet.hess_at(1, 1), rat_int(0));
    }

    #[test]
    fn square() {
        // u^2 at 5: value 25, grad (10), hess (2)
        let e = Expr::var("u").mul(Expr::var("u"));
        let jet = jet_eval(&e, &[("u".into(), rat_int(5))]).unwrap();
        assert_eq!(jet.value, rat_int(25));
        assert_eq!(jet.grad, vec![rat_int(10)]);
        assert_eq!(*jet.hess_at(0, 0), rat_int(2));
    }

    #[test]
    fn quotient_rule() {
        // u/v at (1,2): value 1/2, du = 1/2, dv = -1/4, dudv = -1/4, dvdv = 1/4
        let e = Expr::var("u").div(Expr::var("v"));
        let jet = jet_eval(&e, &[("u".into(), rat_int(1)), ("v".into(), rat_int(2))]).unwrap();
        assert_eq!(jet.value, crate::arith::rat(1, 2));
        assert_eq!(jet.grad, vec![crate::arith::rat(1, 2), crate::arith::rat(-1, 4)]);
        assert_eq!(*jet.hess_at(0, 1), crate::arith::rat(-1, 4));
        assert_eq!(*jet.hess_at(1, 1), crate::arith::rat(1, 4));
        assert_eq!(*jet.hess_at(0, 0), rat_int(0));
    }

    #[test]
    fn division_by_zero_names_subexpression() {
        let e = Expr::int(1).div(Expr::var("u").sub(Expr::int(3)));
        let err = jet_eval(&e, &[("u".into(), rat_int(3))]).unwrap_err();
        match err {
            ArithError::DivisionByZero(s) => assert!(s.contains("u - 3")),
            other => panic!("unexpected error {other:?}"),
        }
    }
}
