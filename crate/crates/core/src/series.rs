//! Truncated formal power series in t over [`FieldElem`].
//!
//! A series of precision N knows the coefficients of t⁰..t^N exactly and
//! nothing beyond. Every operation computes the precision of its result from
//! the precisions of its inputs; unknown coefficients are never read as zero.
//!
//! Precision rules:
//! - `add`, `sub`, `mul`, `compose`: minimum of the operand precisions.
//! - `div`: minimum of the operand precisions minus the divisor valuation.
//! - `derivative`: precision minus one.
//! - `shift_up(k)` (multiply by tᵏ): precision plus k.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::field::{FieldElem, LambdaMode};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    mode: LambdaMode,
    coeffs: Vec<FieldElem>,
}

impl Series {
    /// Build from the coefficients of t⁰..t^N; the precision is `coeffs.len() - 1`.
    ///
    /// Panics on an empty vector or coefficients from another mode.
    pub fn new(mode: LambdaMode, coeffs: Vec<FieldElem>) -> Self {
        assert!(!coeffs.is_empty(), "a series knows at least its constant term");
        assert!(
            coeffs.iter().all(|c| c.in_mode(&mode)),
            "series coefficients must share the series mode"
        );
        Series { mode, coeffs }
    }

    pub fn from_fn(mode: &LambdaMode, precision: usize, f: impl FnMut(usize) -> FieldElem) -> Self {
        Series::new(mode.clone(), (0..=precision).map(f).collect())
    }

    pub fn zero(mode: &LambdaMode, precision: usize) -> Self {
        Self::from_fn(mode, precision, |_| mode.zero())
    }

    pub fn one(mode: &LambdaMode, precision: usize) -> Self {
        Self::constant(mode.one(), precision)
    }

    pub fn constant(c: FieldElem, precision: usize) -> Self {
        let mode = c.mode();
        let mut coeffs = vec![mode.zero(); precision + 1];
        coeffs[0] = c;
        Series { mode, coeffs }
    }

    /// `c·tᵏ` known to `precision`; vanishes if `k > precision`.
    pub fn monomial(c: FieldElem, k: usize, precision: usize) -> Self {
        let mode = c.mode();
        let mut coeffs = vec![mode.zero(); precision + 1];
        if k <= precision {
            coeffs[k] = c;
        }
        Series { mode, coeffs }
    }

    /// The series `t`.
    pub fn t(mode: &LambdaMode, precision: usize) -> Self {
        Self::monomial(mode.one(), 1, precision)
    }

    pub fn mode(&self) -> &LambdaMode {
        &self.mode
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    /// `[tⁿ]f`.
    pub fn coeff(&self, n: usize) -> Result<&FieldElem> {
        self.coeffs.get(n).ok_or(Error::PrecisionExceeded {
            requested: n,
            precision: self.precision(),
        })
    }

    /// Index of the first known nonzero coefficient; `None` when every known
    /// coefficient vanishes.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Drop knowledge beyond `precision`. Never extends.
    pub fn truncate(&self, precision: usize) -> Self {
        let keep = precision.min(self.precision()) + 1;
        Series {
            mode: self.mode.clone(),
            coeffs: self.coeffs[..keep].to_vec(),
        }
    }

    /// Zero out the coefficients of orders below `k`.
    pub fn drop_below(&self, k: usize) -> Series {
        let zero = self.mode.zero();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if i < k { zero.clone() } else { c.clone() })
            .collect();
        Series::new(self.mode.clone(), coeffs)
    }

    fn check_mode(&self, other: &Series) -> Result<()> {
        if self.mode == other.mode {
            Ok(())
        } else {
            Err(Error::ModeMismatch)
        }
    }

    pub fn add(&self, other: &Series) -> Result<Series> {
        self.check_mode(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(Series::new(self.mode.clone(), coeffs))
    }

    pub fn sub(&self, other: &Series) -> Result<Series> {
        self.check_mode(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(Series::new(self.mode.clone(), coeffs))
    }

    pub fn neg(&self) -> Series {
        Series {
            mode: self.mode.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &FieldElem) -> Series {
        Series {
            mode: self.mode.clone(),
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn scale_rational(&self, c: &Rational) -> Series {
        Series {
            mode: self.mode.clone(),
            coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect(),
        }
    }

    /// Multiply by `1/d` for a nonzero integer `d`.
    pub fn div_int(&self, d: &BigInt) -> Series {
        self.scale_rational(&BigRational::new(1.into(), d.clone()))
    }

    /// Cauchy product, naive O(N²).
    pub fn mul(&self, other: &Series) -> Result<Series> {
        self.check_mode(other)?;
        let prec = self.precision().min(other.precision());
        let mut coeffs = vec![self.mode.zero(); prec + 1];
        for (i, a) in self.coeffs.iter().take(prec + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(prec + 1 - i).enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Ok(Series::new(self.mode.clone(), coeffs))
    }

    /// `f / g`. With `v = valuation(g)`, requires `valuation(f) ≥ v`; the
    /// quotient is known to `min(prec f, prec g) − v`.
    pub fn div(&self, other: &Series) -> Result<Series> {
        self.check_mode(other)?;
        let v = other.valuation().ok_or(Error::ZeroDivisorSeries)?;
        let prec = self.precision().min(other.precision());
        if let Some(vf) = self.valuation() {
            if vf < v {
                return Err(Error::ValuationTooHigh {
                    divisor: v,
                    dividend: vf,
                });
            }
        }
        if prec < v {
            return Err(Error::InsufficientPrecision {
                needed: v,
                precision: prec,
            });
        }
        let out_prec = prec - v;
        let num = &self.coeffs[v..=prec];
        let den = &other.coeffs[v..=prec];
        let lead_inv = den[0].inv()?;
        let mut q: Vec<FieldElem> = Vec::with_capacity(out_prec + 1);
        for n in 0..=out_prec {
            let mut acc = num[n].clone();
            for j in 1..=n {
                if den[j].is_zero() {
                    continue;
                }
                acc = &acc - &(&den[j] * &q[n - j]);
            }
            q.push(&acc * &lead_inv);
        }
        Ok(Series::new(self.mode.clone(), q))
    }

    /// Multiplicative inverse; the constant term must be nonzero.
    pub fn recip(&self) -> Result<Series> {
        Series::one(&self.mode, self.precision()).div(self)
    }

    /// `fᵏ` by repeated squaring; `f⁰ = 1` at `f`'s precision.
    pub fn pow(&self, k: u32) -> Series {
        let mut result = Series::one(&self.mode, self.precision());
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).expect("same mode");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same mode");
            }
        }
        result
    }

    /// `outer(inner(t))` by Horner's rule; `inner` must have zero constant term.
    pub fn compose(&self, inner: &Series) -> Result<Series> {
        self.check_mode(inner)?;
        if !inner.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let prec = self.precision().min(inner.precision());
        let inner = inner.truncate(prec);
        let mut acc = Series::constant(self.coeffs[prec].clone(), prec);
        for c in self.coeffs[..prec].iter().rev() {
            acc = acc.mul(&inner)?;
            acc.coeffs[0] = &acc.coeffs[0] + c;
        }
        Ok(acc)
    }

    /// Formal derivative; precision drops by one.
    pub fn derivative(&self) -> Result<Series> {
        if self.precision() == 0 {
            return Err(Error::ZeroPrecision);
        }
        let coeffs = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(n, c)| c.scale(&BigRational::from_integer(BigInt::from(n + 1))))
            .collect();
        Ok(Series::new(self.mode.clone(), coeffs))
    }

    /// Multiply by tᵏ. The low coefficients are known zeros, so precision grows by k.
    pub fn shift_up(&self, k: usize) -> Series {
        let mut coeffs = vec![self.mode.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Series::new(self.mode.clone(), coeffs)
    }

    /// Divide by tᵏ; the first k coefficients must vanish.
    pub fn shift_down(&self, k: usize) -> Result<Series> {
        if k > self.precision() {
            return Err(Error::InsufficientPrecision {
                needed: k,
                precision: self.precision(),
            });
        }
        if let Some(v) = self.valuation() {
            if v < k {
                return Err(Error::ValuationTooHigh {
                    divisor: k,
                    dividend: v,
                });
            }
        }
        Ok(Series::new(self.mode.clone(), self.coeffs[k..].to_vec()))
    }

    /// Canonical strings of the known coefficients, in order.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(ToString::to_string).collect()
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "[{c}]*t^{k}")?;
        }
        write!(f, " + O(t^{})", self.precision() + 1)
    }
}
