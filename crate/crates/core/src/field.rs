//! The field ℚ(λ) of rational functions in the degeneracy parameter, and the
//! mode-tagged scalar [`FieldElem`] used by every series and sequence.
//!
//! A [`RatFunc`] is always stored in canonical form: numerator and denominator
//! coprime, denominator monic, zero stored as `0/1`. Equality is therefore
//! structural. [`FieldElem`] wraps either a symbolic `RatFunc` or a plain
//! rational obtained by fixing λ to a rational value; the two never mix.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poly::{poly_gcd, LambdaPoly};
use crate::rational::{format_rational, int, parse_rational, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: LambdaPoly,
    den: LambdaPoly,
}

impl RatFunc {
    pub fn new(num: LambdaPoly, den: LambdaPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    pub fn from_poly(num: LambdaPoly) -> Self {
        RatFunc {
            num,
            den: LambdaPoly::one(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(LambdaPoly::constant(c))
    }

    pub fn lambda() -> Self {
        Self::from_poly(LambdaPoly::lambda())
    }

    pub fn zero() -> Self {
        Self::from_poly(LambdaPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(LambdaPoly::one())
    }

    pub fn numer(&self) -> &LambdaPoly {
        &self.num
    }

    pub fn denom(&self) -> &LambdaPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    // `den` must be nonzero.
    fn normalize(num: LambdaPoly, den: LambdaPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (num, den) = if den.degree() == Some(0) {
            (num, den)
        } else {
            let g = poly_gcd(&num, &den).expect("denominator is nonzero");
            if g.is_one() {
                (num, den)
            } else {
                (
                    num.div_exact(&g).expect("gcd divides numerator"),
                    den.div_exact(&g).expect("gcd divides denominator"),
                )
            }
        };
        let lc = den.leading().expect("nonzero denominator").clone();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.recip();
            RatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn recip(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Evaluation homomorphism ℚ(λ) → ℚ at `lambda0`.
    pub fn instantiate(&self, lambda0: &Rational) -> Result<Rational> {
        let d = self.den.eval(lambda0);
        if d.is_zero() {
            return Err(Error::PoleAtLambda(format_rational(lambda0)));
        }
        Ok(self.num.eval(lambda0) / d)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

fn parse_poly(s: &str) -> Result<LambdaPoly> {
    let bad = || Error::Parse(format!("invalid polynomial `{s}`"));
    let mut acc = LambdaPoly::zero();
    for term in s.split(" + ") {
        let term = term.trim();
        let (c, k) = match term.split_once(")*l^") {
            Some((c, k)) => {
                let c = c.strip_prefix('(').ok_or_else(bad)?;
                let k: usize = k.parse().map_err(|_| bad())?;
                (parse_rational(c)?, k)
            }
            None => (parse_rational(term)?, 0),
        };
        acc = &acc + &LambdaPoly::monomial(c, k);
    }
    Ok(acc)
}

impl FromStr for RatFunc {
    type Err = Error;

    /// Inverse of `Display`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s.split_once(") / (") {
            Some((n, d)) => {
                let n = n.strip_prefix('(').ok_or_else(|| Error::Parse(s.into()))?;
                let d = d.strip_suffix(')').ok_or_else(|| Error::Parse(s.into()))?;
                RatFunc::new(parse_poly(n)?, parse_poly(d)?)
            }
            None => Ok(RatFunc::from_poly(parse_poly(s)?)),
        }
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            if self.den.is_one() {
                return RatFunc::from_poly(num);
            }
            return RatFunc::normalize(num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatFunc::normalize(num, &self.den * &rhs.den)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc::from_poly(&self.num * &rhs.num);
        }
        RatFunc::normalize(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

/// Which copy of the scalar field a value lives in.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LambdaMode {
    /// λ is a formal indeterminate; values are elements of ℚ(λ).
    Symbolic,
    /// λ is fixed to this rational; values are plain rationals.
    At(Rational),
}

impl LambdaMode {
    pub fn is_symbolic(&self) -> bool {
        matches!(self, LambdaMode::Symbolic)
    }

    pub fn rational(&self, c: Rational) -> FieldElem {
        match self {
            LambdaMode::Symbolic => FieldElem::Symbolic(RatFunc::constant(c)),
            LambdaMode::At(l) => FieldElem::Instantiated {
                value: c,
                lambda: l.clone(),
            },
        }
    }

    pub fn int(&self, n: i64) -> FieldElem {
        self.rational(int(n))
    }

    pub fn zero(&self) -> FieldElem {
        self.int(0)
    }

    pub fn one(&self) -> FieldElem {
        self.int(1)
    }

    pub fn lambda(&self) -> FieldElem {
        match self {
            LambdaMode::Symbolic => FieldElem::Symbolic(RatFunc::lambda()),
            LambdaMode::At(l) => self.rational(l.clone()),
        }
    }

    /// Bring a symbolic value into this mode, evaluating it when λ is fixed.
    pub fn from_ratfunc(&self, f: RatFunc) -> Result<FieldElem> {
        match self {
            LambdaMode::Symbolic => Ok(FieldElem::Symbolic(f)),
            LambdaMode::At(l) => Ok(self.rational(f.instantiate(l)?)),
        }
    }
}

impl fmt::Display for LambdaMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LambdaMode::Symbolic => f.write_str("symbolic"),
            LambdaMode::At(l) => f.write_str(&format_rational(l)),
        }
    }
}

/// A scalar: either an element of ℚ(λ) or a rational at a fixed λ.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldElem {
    Symbolic(RatFunc),
    Instantiated { value: Rational, lambda: Rational },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl FieldElem {
    pub fn mode(&self) -> LambdaMode {
        match self {
            FieldElem::Symbolic(_) => LambdaMode::Symbolic,
            FieldElem::Instantiated { lambda, .. } => LambdaMode::At(lambda.clone()),
        }
    }

    pub fn same_mode(&self, other: &FieldElem) -> bool {
        match (self, other) {
            (FieldElem::Symbolic(_), FieldElem::Symbolic(_)) => true,
            (FieldElem::Instantiated { lambda: a, .. }, FieldElem::Instantiated { lambda: b, .. }) => {
                a == b
            }
            _ => false,
        }
    }

    pub fn in_mode(&self, mode: &LambdaMode) -> bool {
        match (self, mode) {
            (FieldElem::Symbolic(_), LambdaMode::Symbolic) => true,
            (FieldElem::Instantiated { lambda, .. }, LambdaMode::At(l)) => lambda == l,
            _ => false,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElem::Symbolic(f) => f.is_zero(),
            FieldElem::Instantiated { value, .. } => value.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElem::Symbolic(f) => f.numer().is_one() && f.denom().is_one(),
            FieldElem::Instantiated { value, .. } => value.is_one(),
        }
    }

    pub fn as_ratfunc(&self) -> Option<&RatFunc> {
        match self {
            FieldElem::Symbolic(f) => Some(f),
            FieldElem::Instantiated { .. } => None,
        }
    }

    /// Exact arithmetic with mode and zero-divisor checks.
    pub fn field_arith(&self, rhs: &FieldElem, op: ArithOp) -> Result<FieldElem> {
        use FieldElem::*;
        match (self, rhs) {
            (Symbolic(a), Symbolic(b)) => Ok(Symbolic(match op {
                ArithOp::Add => a + b,
                ArithOp::Sub => a - b,
                ArithOp::Mul => a * b,
                ArithOp::Div => a * &b.recip()?,
            })),
            (Instantiated { value: a, lambda }, Instantiated { value: b, lambda: lb }) if lambda == lb => {
                let value = match op {
                    ArithOp::Add => a + b,
                    ArithOp::Sub => a - b,
                    ArithOp::Mul => a * b,
                    ArithOp::Div => {
                        if b.is_zero() {
                            return Err(Error::DivisionByZero);
                        }
                        a / b
                    }
                };
                Ok(Instantiated {
                    value,
                    lambda: lambda.clone(),
                })
            }
            _ => Err(Error::ModeMismatch),
        }
    }

    pub fn try_div(&self, rhs: &FieldElem) -> Result<FieldElem> {
        self.field_arith(rhs, ArithOp::Div)
    }

    pub fn inv(&self) -> Result<FieldElem> {
        match self {
            FieldElem::Symbolic(f) => Ok(FieldElem::Symbolic(f.recip()?)),
            FieldElem::Instantiated { value, lambda } => {
                if value.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Ok(FieldElem::Instantiated {
                    value: value.recip(),
                    lambda: lambda.clone(),
                })
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> FieldElem {
        match self {
            FieldElem::Symbolic(f) => FieldElem::Symbolic(f.scale(c)),
            FieldElem::Instantiated { value, lambda } => FieldElem::Instantiated {
                value: value * c,
                lambda: lambda.clone(),
            },
        }
    }

    pub fn pow(&self, e: u32) -> FieldElem {
        let mut acc = self.mode().one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Value at λ = `lambda0`. An instantiated value only answers for its own λ.
    pub fn instantiate(&self, lambda0: &Rational) -> Result<Rational> {
        match self {
            FieldElem::Symbolic(f) => f.instantiate(lambda0),
            FieldElem::Instantiated { value, lambda } if lambda == lambda0 => Ok(value.clone()),
            FieldElem::Instantiated { .. } => Err(Error::ModeMismatch),
        }
    }

    /// Same as [`instantiate`](Self::instantiate) but stays a `FieldElem`.
    pub fn to_mode(&self, mode: &LambdaMode) -> Result<FieldElem> {
        match (self, mode) {
            (FieldElem::Symbolic(f), _) => mode.from_ratfunc(f.clone()),
            (_, _) if self.in_mode(mode) => Ok(self.clone()),
            _ => Err(Error::ModeMismatch),
        }
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Symbolic(r) => write!(f, "{r}"),
            FieldElem::Instantiated { value, .. } => f.write_str(&format_rational(value)),
        }
    }
}

impl Serialize for FieldElem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

// Operator sugar for code that builds every operand from one `LambdaMode`.
// Mixing modes here is a programming error and panics; use `field_arith` for
// checked arithmetic.
macro_rules! elem_op {
    ($tr:ident, $m:ident, $op:expr) => {
        impl $tr for &FieldElem {
            type Output = FieldElem;
            fn $m(self, rhs: &FieldElem) -> FieldElem {
                self.field_arith(rhs, $op)
                    .unwrap_or_else(|e| panic!("{}: {e}", stringify!($m)))
            }
        }
        impl $tr for FieldElem {
            type Output = FieldElem;
            fn $m(self, rhs: FieldElem) -> FieldElem {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, rhs: &FieldElem) -> FieldElem {
                (&self).$m(rhs)
            }
        }
    };
}
elem_op!(Add, add, ArithOp::Add);
elem_op!(Sub, sub, ArithOp::Sub);
elem_op!(Mul, mul, ArithOp::Mul);
elem_op!(Div, div, ArithOp::Div);

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        match self {
            FieldElem::Symbolic(f) => FieldElem::Symbolic(-f),
            FieldElem::Instantiated { value, lambda } => FieldElem::Instantiated {
                value: -value,
                lambda: lambda.clone(),
            },
        }
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn sym() -> LambdaMode {
        LambdaMode::Symbolic
    }

    fn one_minus_lambda() -> FieldElem {
        sym().one() - sym().lambda()
    }

    #[test]
    fn rational_addition() {
        let m = sym();
        let s = m.rational(rat(1, 2)) + m.rational(rat(1, 3));
        assert_eq!(s, m.rational(rat(5, 6)));
    }

    #[test]
    fn inverse_cancellation() {
        let a = one_minus_lambda();
        assert!((&a * &a.inv().unwrap()).is_one());
    }

    #[test]
    fn polynomial_quotient_reduces() {
        let m = sym();
        let l = m.lambda();
        let num = m.one() - &l * &l;
        let q = num.try_div(&one_minus_lambda()).unwrap();
        assert_eq!(q, m.one() + l);
        assert!(q.as_ratfunc().unwrap().is_polynomial());
    }

    #[test]
    fn division_by_zero_and_mode_mismatch() {
        let m = sym();
        assert_eq!(m.one().try_div(&m.zero()), Err(Error::DivisionByZero));
        let at = LambdaMode::At(rat(1, 2));
        assert_eq!(at.one().try_div(&at.zero()), Err(Error::DivisionByZero));
        assert_eq!(m.one().field_arith(&at.one(), ArithOp::Add), Err(Error::ModeMismatch));
        let other = LambdaMode::At(rat(1, 3));
        assert_eq!(at.one().field_arith(&other.one(), ArithOp::Mul), Err(Error::ModeMismatch));
    }

    #[test]
    fn canonical_denominator_is_monic() {
        let m = sym();
        // 3 / (2 − 2λ) → (−3/2) / (λ − 1)
        let e = m.int(3).try_div(&(m.int(2) - m.int(2) * m.lambda())).unwrap();
        let f = e.as_ratfunc().unwrap();
        assert!(f.denom().leading().unwrap().is_one());
        assert_eq!(e.to_string(), "(-3/2) / ((1/1)*l^1 + -1/1)");
    }

    #[test]
    fn instantiate_examples() {
        let m = sym();
        assert_eq!(one_minus_lambda().instantiate(&rat(1, 2)).unwrap(), rat(1, 2));
        let e = m.int(2).try_div(&one_minus_lambda()).unwrap();
        assert_eq!(e.instantiate(&rat(1, 3)).unwrap(), rat(3, 1));
        let p = one_minus_lambda().inv().unwrap();
        assert!(matches!(p.instantiate(&rat(1, 1)), Err(Error::PoleAtLambda(_))));
    }

    #[test]
    fn display_round_trips() {
        let m = sym();
        let e = (m.rational(rat(1, 2)) - m.rational(rat(1, 2)) * m.lambda())
            .try_div(&(m.lambda() * m.lambda() + m.int(3)))
            .unwrap();
        let s = e.to_string();
        assert_eq!(s, "((-1/2)*l^1 + 1/2) / ((1/1)*l^2 + 3/1)");
        let back: RatFunc = s.parse().unwrap();
        assert_eq!(FieldElem::Symbolic(back), e);
        assert_eq!(LambdaMode::At(rat(2, 3)).rational(rat(-4, 6)).to_string(), "-2/3");
    }
}
