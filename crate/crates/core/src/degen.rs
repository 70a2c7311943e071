//! Falling factorials, λ-falling factorials, and the degenerate exponential
//! and logarithm series.

use num_bigint::BigInt;

use crate::field::{FieldElem, LambdaMode, RatFunc};
use crate::rational::{inv_factorial, Rational};
use crate::series::Series;

/// `(x)ₙ = x(x−1)⋯(x−n+1)`, with `(x)₀ = 1`.
pub fn falling_factorial(x: &FieldElem, n: usize) -> FieldElem {
    gen_falling(x, n, &x.mode().one())
}

/// `(x)ₙ,ₛ = x(x−s)(x−2s)⋯(x−(n−1)s)`, with `(x)₀,ₛ = 1`.
///
/// `step` is usually λ itself but any field element is accepted, e.g. `1/λ`.
pub fn gen_falling(x: &FieldElem, n: usize, step: &FieldElem) -> FieldElem {
    let mode = x.mode();
    let mut acc = mode.one();
    let mut shift = mode.zero();
    for _ in 0..n {
        acc = &acc * &(x - &shift);
        shift = &shift + step;
    }
    acc
}

/// `(1)ₙ,λ` in the given mode.
pub fn unit_falling(mode: &LambdaMode, n: usize) -> FieldElem {
    gen_falling(&mode.one(), n, &mode.lambda())
}

/// `λᵏ·(1)ₘ,₁/λ`, formed in ℚ(λ) and then brought into `mode`.
///
/// For `k ≥ m − 1` the product is a polynomial in λ, so this is defined at
/// every rational λ (including 0) even though `1/λ` is not.
pub fn lambda_scaled_reciprocal_falling(mode: &LambdaMode, k: usize, m: usize) -> FieldElem {
    let sym = LambdaMode::Symbolic;
    let l = sym.lambda();
    let step = l.inv().expect("λ is nonzero in ℚ(λ)");
    let v = &l.pow(k as u32) * &gen_falling(&sym.one(), m, &step);
    let f: RatFunc = v.as_ratfunc().expect("symbolic").clone();
    mode.from_ratfunc(f)
        .expect("λᵏ(1)ₘ,₁/λ has no finite pole for k ≥ m − 1")
}

/// `e_λˣ(t) = Σ (x)ₖ,λ tᵏ/k!`, known to `precision`.
pub fn degen_exp(x: &FieldElem, precision: usize) -> Series {
    let mode = x.mode();
    let lambda = mode.lambda();
    let mut coeffs = Vec::with_capacity(precision + 1);
    let mut falling = mode.one();
    let mut fact = BigInt::from(1);
    for k in 0..=precision {
        if k > 0 {
            let shift = &lambda * &mode.int(k as i64 - 1);
            falling = &falling * &(x - &shift);
            fact *= k;
        }
        coeffs.push(falling.scale(&Rational::new(1.into(), fact.clone())));
    }
    Series::new(mode, coeffs)
}

/// `log_λ(1+t) = Σₙ≥₁ λⁿ⁻¹(1)ₙ,₁/λ tⁿ/n!`, known to `precision`.
pub fn degen_log(mode: &LambdaMode, precision: usize) -> Series {
    Series::from_fn(mode, precision, |n| {
        if n == 0 {
            return mode.zero();
        }
        lambda_scaled_reciprocal_falling(mode, n - 1, n)
            .scale(&inv_factorial(n))
    })
}

/// `e_λ(t) − Σ_{l<r} (1)ₗ,λ tˡ/l!`: the degenerate exponential with its first
/// r terms removed. Valuation r whenever `(1)ᵣ,λ ≠ 0`.
pub fn truncated_exp(mode: &LambdaMode, r: usize, precision: usize) -> Series {
    degen_exp(&mode.one(), precision).drop_below(r)
}

/// `log_λ(1+t)` with the terms of orders 1..r−1 removed.
pub fn truncated_log(mode: &LambdaMode, r: usize, precision: usize) -> Series {
    degen_log(mode, precision).drop_below(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn sym() -> LambdaMode {
        LambdaMode::Symbolic
    }

    #[test]
    fn falling_factorial_examples() {
        let m = sym();
        assert!(falling_factorial(&m.lambda(), 0).is_one());
        assert_eq!(falling_factorial(&m.int(3), 2), m.int(6));
        let l = m.lambda();
        let expected = &(&l * &(&l - &m.one())) * &(&l - &m.int(2));
        assert_eq!(falling_factorial(&l, 3), expected);
    }

    #[test]
    fn gen_falling_examples() {
        let m = sym();
        let l = m.lambda();
        assert!(gen_falling(&m.int(5), 0, &l).is_one());
        let expected = &(&m.one() - &l) * &(&m.one() - &(&m.int(2) * &l));
        assert_eq!(gen_falling(&m.one(), 3, &l), expected);
        // λᵏ (1)_{k+1, 1/λ} = (λ−1)(λ−2)⋯(λ−k)
        for k in 0..6 {
            let v = lambda_scaled_reciprocal_falling(&m, k, k + 1);
            let mut prod = m.one();
            for i in 1..=k {
                prod = &prod * &(&l - &m.int(i as i64));
            }
            assert_eq!(v, prod, "k = {k}");
        }
    }

    #[test]
    fn degen_exp_coefficients() {
        let m = sym();
        let x = m.rational(rat(3, 7));
        let e = degen_exp(&x, 4);
        assert!(e.coeff(0).unwrap().is_one());
        let l = m.lambda();
        let c2 = (&x * &(&x - &l)).scale(&rat(1, 2));
        assert_eq!(e.coeff(2).unwrap(), &c2);
        // e_λ(t) at x = 1: [t²] = (1 − λ)/2
        let e1 = degen_exp(&m.one(), 4);
        assert_eq!(e1.coeff(2).unwrap(), &(&m.one() - &l).scale(&rat(1, 2)));
    }

    #[test]
    fn classical_limit_of_degen_exp() {
        let m = LambdaMode::At(int(0));
        let e = degen_exp(&m.one(), 8);
        for k in 0..=8 {
            assert_eq!(e.coeff(k).unwrap(), &m.rational(inv_factorial(k)));
        }
    }

    #[test]
    fn degen_log_coefficients() {
        let m = sym();
        let g = degen_log(&m, 6);
        assert!(g.coeff(0).unwrap().is_zero());
        assert!(g.coeff(1).unwrap().is_one());
        assert_eq!(g.coeff(2).unwrap(), &(&m.lambda() - &m.one()).scale(&rat(1, 2)));
        // λ = 0 is allowed: coefficients are polynomials in λ
        let g0 = degen_log(&LambdaMode::At(int(0)), 4);
        // log(1+t) = t − t²/2 + t³/3 − t⁴/4
        let at0 = LambdaMode::At(int(0));
        assert_eq!(g0.coeff(3).unwrap(), &at0.rational(rat(1, 3)));
        assert_eq!(g0.coeff(4).unwrap(), &at0.rational(rat(-1, 4)));
    }

    #[test]
    fn truncated_exp_has_valuation_r() {
        let m = sym();
        for r in 1..=4 {
            let s = truncated_exp(&m, r, 8);
            assert_eq!(s.valuation(), Some(r));
            assert_eq!(s.coeff(r).unwrap(), &unit_falling(&m, r).scale(&inv_factorial(r)));
        }
    }
}
