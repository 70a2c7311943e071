//! Degenerate Bernoulli polynomials of order α, their r-truncated versions,
//! partial Bell polynomials, and the `K_{n,λ}` reciprocal-series polynomials.
//!
//! Polynomial dependence on `x` is handled by evaluating at rational (or
//! ℚ(λ)) sample points; no second indeterminate is introduced.

use crate::degen::{degen_exp, truncated_exp, unit_falling};
use crate::error::{Error, Result};
use crate::field::{FieldElem, LambdaMode};
use crate::rational::{factorial, int, inv_factorial, Rational};
use crate::series::Series;

fn check_mode(mode: &LambdaMode, x: &FieldElem) -> Result<()> {
    if x.in_mode(mode) {
        Ok(())
    } else {
        Err(Error::ModeMismatch)
    }
}

fn coefficient_times_factorial(s: &Series, n: usize) -> Result<FieldElem> {
    Ok(s.coeff(n)?.scale(&Rational::from_integer(factorial(n))))
}

/// `t / (e_λ(t) − 1)` from series known to `precision`; the result is known
/// to `precision − 1`.
pub fn bernoulli_kernel(mode: &LambdaMode, precision: usize) -> Result<Series> {
    let denom = truncated_exp(mode, 1, precision);
    Series::t(mode, precision).div(&denom)
}

/// `(t/(e_λ(t)−1))^α · e_λˣ(t)`, built from inputs of the given precision.
/// Order α = 0 gives `e_λˣ(t)` itself.
pub fn degen_bernoulli_series(mode: &LambdaMode, alpha: u32, x: &FieldElem, precision: usize) -> Result<Series> {
    check_mode(mode, x)?;
    let ex = degen_exp(x, precision);
    if alpha == 0 {
        return Ok(ex);
    }
    let kernel = bernoulli_kernel(mode, precision)?.pow(alpha);
    kernel.mul(&ex)
}

/// `β⁽ᵅ⁾ₙ,λ(x)`. The kernel division costs one order, so `n ≤ precision − 1`
/// is required for α ≥ 1.
pub fn degen_bernoulli(
    mode: &LambdaMode,
    n: usize,
    alpha: u32,
    x: &FieldElem,
    precision: usize,
) -> Result<FieldElem> {
    let s = degen_bernoulli_series(mode, alpha, x, precision)?;
    coefficient_times_factorial(&s, n)
}

/// `β⁽ᵅ⁾ₖ,λ(x)` for `k = 0..=n_max`, with the working precision chosen to cover
/// `n_max`.
pub fn degen_bernoulli_seq(mode: &LambdaMode, alpha: u32, x: &FieldElem, n_max: usize) -> Result<Vec<FieldElem>> {
    let s = degen_bernoulli_series(mode, alpha, x, n_max + 1)?;
    (0..=n_max).map(|n| coefficient_times_factorial(&s, n)).collect()
}

/// `t^{αr} / (e_λ(t) − Σ_{l<r}(1)ₗ,λ tˡ/l!)^α · e_λˣ(t)`. The division by a
/// series of valuation αr leaves the result known to `precision − αr`.
///
/// At a fixed λ where `(1)ᵣ,λ = 0` every `(1)ₗ,λ` with `l ≥ r` vanishes too,
/// so the denominator is identically zero and the division reports
/// [`Error::ZeroDivisorSeries`].
pub fn trunc_degen_bernoulli_series(
    mode: &LambdaMode,
    r: usize,
    alpha: u32,
    x: &FieldElem,
    precision: usize,
) -> Result<Series> {
    assert!(r >= 1, "truncation order r must be positive");
    check_mode(mode, x)?;
    let shift = alpha as usize * r;
    let num = Series::monomial(mode.one(), shift, precision);
    let den = truncated_exp(mode, r, precision).pow(alpha);
    num.div(&den)?.mul(&degen_exp(x, precision))
}

/// `β^{[r−1,α]}ₙ,λ(x)`.
pub fn trunc_degen_bernoulli(
    mode: &LambdaMode,
    n: usize,
    r: usize,
    alpha: u32,
    x: &FieldElem,
    precision: usize,
) -> Result<FieldElem> {
    let s = trunc_degen_bernoulli_series(mode, r, alpha, x, precision)?;
    coefficient_times_factorial(&s, n)
}

/// Working precision for truncated Bernoulli values up to index `n`: the
/// valuation cost `αr` plus a guard of two orders.
pub fn trunc_working_precision(n: usize, r: usize, alpha: u32) -> usize {
    n + alpha as usize * r + 2
}

/// `β^{[r−1,α]}ₖ,λ(x)` for `k = 0..=n_max`.
pub fn trunc_degen_bernoulli_seq(
    mode: &LambdaMode,
    r: usize,
    alpha: u32,
    x: &FieldElem,
    n_max: usize,
) -> Result<Vec<FieldElem>> {
    let s = trunc_degen_bernoulli_series(mode, r, alpha, x, trunc_working_precision(n_max, r, alpha))?;
    (0..=n_max).map(|n| coefficient_times_factorial(&s, n)).collect()
}

/// Sign convention for the closed form of `β^{[r−1,1]}₂,λ(x)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClosedFormVariant {
    /// `r!/(1)ᵣ,λ {x(x−λ) + 2xA − 2A² + B}`.
    AsPrinted,
    /// `r!/(1)ᵣ,λ {x(x−λ) − 2xA + 2A² − B}`, the form obtained by solving the
    /// `(x)ₙ,λ` expansion for n = 0, 1, 2.
    AsDerived,
}

/// Closed forms for `β^{[r−1,1]}ₙ,λ(x)`, `n ≤ 2`, with
/// `A = (1−rλ)/(1+r)` and `B = 2(1−rλ)(1−(r+1)λ)/((1+r)(2+r))`:
///
/// - `β₀ = r!/(1)ᵣ,λ`
/// - `β₁ = r!/(1)ᵣ,λ · (x − A)`
/// - `β₂` per [`ClosedFormVariant`]
///
/// The two variants agree for n ≤ 1.
pub fn trunc_bernoulli_closed_form(
    mode: &LambdaMode,
    n: usize,
    r: usize,
    x: &FieldElem,
    variant: ClosedFormVariant,
) -> Result<FieldElem> {
    check_mode(mode, x)?;
    let r_i = r as i64;
    let lambda = mode.lambda();
    let lead = mode
        .rational(Rational::from_integer(factorial(r)))
        .try_div(&unit_falling(mode, r))?;
    let one_minus = |c: i64| &mode.one() - &(&mode.int(c) * &lambda);
    let a = one_minus(r_i).scale(&Rational::new(1.into(), (1 + r_i).into()));
    let b = (&one_minus(r_i) * &one_minus(r_i + 1))
        .scale(&Rational::new(2.into(), ((1 + r_i) * (2 + r_i)).into()));
    let body = match n {
        0 => mode.one(),
        1 => x - &a,
        2 => {
            let quad = x * &(x - &lambda);
            let lin = (x * &a).scale(&int(2));
            let sq = (&a * &a).scale(&int(2));
            match variant {
                ClosedFormVariant::AsPrinted => &(&(&quad + &lin) - &sq) + &b,
                ClosedFormVariant::AsDerived => &(&(&quad - &lin) + &sq) - &b,
            }
        }
        _ => return Err(Error::DomainViolation(format!("closed forms exist for n ≤ 2, got n = {n}"))),
    };
    Ok(&lead * &body)
}

/// Arguments `x₁, x₂, …` of a partial Bell polynomial (index 1 first).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BellInput(pub Vec<FieldElem>);

impl BellInput {
    /// `x_l` for `l ≥ 1`.
    pub fn get(&self, l: usize) -> Option<&FieldElem> {
        l.checked_sub(1).and_then(|i| self.0.get(i))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `x_l·(1)ₗ,λ` for every entry.
    pub fn lambda_weighted(&self, mode: &LambdaMode) -> BellInput {
        BellInput(
            self.0
                .iter()
                .enumerate()
                .map(|(i, x)| x * &unit_falling(mode, i + 1))
                .collect(),
        )
    }

    fn check(&self, mode: &LambdaMode, needed: usize) -> Result<()> {
        if self.0.len() < needed {
            return Err(Error::InputTooShort {
                needed,
                len: self.0.len(),
            });
        }
        if self.0.iter().any(|x| !x.in_mode(mode)) {
            return Err(Error::ModeMismatch);
        }
        Ok(())
    }
}

/// Trivial cases shared by both Bell routes; `None` means "compute".
fn bell_trivial(mode: &LambdaMode, n: usize, k: usize) -> Option<FieldElem> {
    if k == 0 {
        return Some(if n == 0 { mode.one() } else { mode.zero() });
    }
    if k > n {
        return Some(mode.zero());
    }
    None
}

/// `B_{n,k}(x₁, …, x_{n−k+1})` by enumerating the multiplicity vectors
/// `(k₁, …, k_{n−k+1})` with `Σkⱼ = k` and `Σj·kⱼ = n`:
///
/// `n! Σ Π (1/kⱼ!)(xⱼ/j!)^{kⱼ}`
pub fn bell_partial(mode: &LambdaMode, n: usize, k: usize, xs: &BellInput) -> Result<FieldElem> {
    if let Some(v) = bell_trivial(mode, n, k) {
        return Ok(v);
    }
    let width = n - k + 1;
    xs.check(mode, width)?;
    let scaled: Vec<FieldElem> = (1..=width)
        .map(|j| xs.get(j).expect("checked length").scale(&inv_factorial(j)))
        .collect();

    // Choose k_j for j = width, width−1, …, 1 with remaining part count and size.
    fn descend(
        scaled: &[FieldElem],
        j: usize,
        parts: usize,
        size: usize,
        acc: &FieldElem,
        total: &mut FieldElem,
    ) {
        if j == 0 {
            if parts == 0 && size == 0 {
                *total = &*total + acc;
            }
            return;
        }
        if j == 1 {
            // the remaining parts must all be 1s
            if parts == size {
                let term = &scaled[0].pow(parts as u32) * acc;
                *total = &*total + &term.scale(&inv_factorial(parts));
            }
            return;
        }
        let max_kj = (size / j).min(parts);
        let mut power = acc.clone();
        for kj in 0..=max_kj {
            if kj > 0 {
                power = &power * &scaled[j - 1];
            }
            let next = power.scale(&inv_factorial(kj));
            descend(scaled, j - 1, parts - kj, size - kj * j, &next, total);
        }
    }

    let mut total = mode.zero();
    descend(&scaled, width, k, n, &mode.one(), &mut total);
    Ok(total.scale(&Rational::from_integer(factorial(n))))
}

/// `B_{n,k}` from its generating function `(Σ_{l≥1} x_l tˡ/l!)ᵏ/k!`.
pub fn bell_partial_gf(mode: &LambdaMode, n: usize, k: usize, xs: &BellInput) -> Result<FieldElem> {
    if let Some(v) = bell_trivial(mode, n, k) {
        return Ok(v);
    }
    let width = n - k + 1;
    xs.check(mode, width)?;
    // Entries beyond x_{n−k+1} cannot reach tⁿ in a k-fold product.
    let base = Series::from_fn(mode, n, |l| match l {
        0 => mode.zero(),
        l if l <= width => xs.get(l).expect("checked length").scale(&inv_factorial(l)),
        _ => mode.zero(),
    });
    let p = base.pow(k as u32);
    Ok(p.coeff(n)?.scale(&Rational::new(factorial(n), factorial(k))))
}

/// `K_{n,λ}(x₁, x₂, …) = Σ_{k=1}^{n} (−1)ᵏ k! B_{n,k}(x₁(1)₁,λ, …, x_{n−k+1}(1)_{n−k+1,λ})`,
/// with `K_{0,λ} = 1`.
pub fn k_lambda(mode: &LambdaMode, n: usize, xs: &BellInput) -> Result<FieldElem> {
    if n == 0 {
        return Ok(mode.one());
    }
    xs.check(mode, n)?;
    let weighted = BellInput(xs.0[..n].to_vec()).lambda_weighted(mode);
    let mut total = mode.zero();
    for k in 1..=n {
        let b = bell_partial(mode, n, k, &weighted)?;
        let c = Rational::from_integer(factorial(k)) * int(if k % 2 == 0 { 1 } else { -1 });
        total = &total + &b.scale(&c);
    }
    Ok(total)
}

/// `K_{n,λ}` as `n!·[tⁿ]` of `1 / (1 + Σ_{l≥1} (1)ₗ,λ x_l tˡ/l!)`.
pub fn k_lambda_series(mode: &LambdaMode, n: usize, xs: &BellInput) -> Result<FieldElem> {
    if n == 0 {
        return Ok(mode.one());
    }
    xs.check(mode, n)?;
    let denom = Series::from_fn(mode, n, |l| match l {
        0 => mode.one(),
        l => (xs.get(l).expect("checked length") * &unit_falling(mode, l)).scale(&inv_factorial(l)),
    });
    coefficient_times_factorial(&denom.recip()?, n)
}
