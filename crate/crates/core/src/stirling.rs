//! Degenerate Stirling numbers of both kinds and their r-truncated versions.
//!
//! Throughout, `k` is the number of blocks. For the truncated kinds the
//! classical second index is `k·r`, so `stirling2r_gf(n, k, r, _)` is
//! `S⁽ʳ⁾₂,λ(n, kr)`, the coefficient of `tⁿ/n!` in
//! `(e_λ(t) − Σ_{l<r} (1)ₗ,λ tˡ/l!)ᵏ / k!`.
//!
//! The truncated second kind has three independent routes: the generating
//! function, a sum over compositions of n into k parts each at least r, and
//! an alternating binomial sum built from λ-falling factorials of `k − m`.

use std::collections::BTreeMap;
use std::fmt;

use crate::degen::{degen_log, gen_falling, truncated_exp, truncated_log, unit_falling};
use crate::error::{Error, Result};
use crate::field::{FieldElem, LambdaMode};
use crate::rational::{binomial, factorial, inv_factorial, Rational};
use crate::series::Series;

/// `n!·[tⁿ](baseᵏ/k!)`.
fn power_coefficient(base: &Series, n: usize, k: usize) -> Result<FieldElem> {
    if n > base.precision() {
        return Err(Error::PrecisionExceeded {
            requested: n,
            precision: base.precision(),
        });
    }
    let p = base.truncate(n).pow(k as u32);
    let scale = Rational::new(factorial(n), factorial(k));
    Ok(p.coeff(n)?.scale(&scale))
}

/// `S₂,λ(n, k)`: coefficient of `tⁿ/n!` in `(e_λ(t) − 1)ᵏ/k!`.
pub fn stirling2_degen(mode: &LambdaMode, n: usize, k: usize, precision: usize) -> Result<FieldElem> {
    power_coefficient(&truncated_exp(mode, 1, precision), n, k)
}

/// `S₁,λ(n, k)`: coefficient of `tⁿ/n!` in `(log_λ(1+t))ᵏ/k!`.
pub fn stirling1_degen(mode: &LambdaMode, n: usize, k: usize, precision: usize) -> Result<FieldElem> {
    power_coefficient(&degen_log(mode, precision), n, k)
}

/// `S⁽ʳ⁾₂,λ(n, kr)` from its generating function. Zero for `n < kr`.
pub fn stirling2r_gf(
    mode: &LambdaMode,
    n: usize,
    k: usize,
    r: usize,
    precision: usize,
) -> Result<FieldElem> {
    power_coefficient(&truncated_exp(mode, r, precision), n, k)
}

/// `S⁽ʳ⁾₁,λ(n, kr)` from its generating function: the degenerate logarithm
/// with its terms of orders 1..r−1 removed. Zero for `n < kr`.
pub fn stirling1r_gf(
    mode: &LambdaMode,
    n: usize,
    k: usize,
    r: usize,
    precision: usize,
) -> Result<FieldElem> {
    power_coefficient(&truncated_log(mode, r, precision), n, k)
}

/// `(1)ₗ,λ / l!` for `l = 0..=n`.
fn unit_terms(mode: &LambdaMode, n: usize) -> Vec<FieldElem> {
    (0..=n)
        .map(|l| unit_falling(mode, l).scale(&inv_factorial(l)))
        .collect()
}

/// `S⁽ʳ⁾₂,λ(n, kr)` by enumerating compositions `l₁+⋯+lₖ = n` with every
/// `lᵢ ≥ r`:
///
/// `(1/k!) Σ n! Π (1)_{lᵢ,λ} / Π lᵢ!`
pub fn stirling2r_composition(mode: &LambdaMode, n: usize, k: usize, r: usize) -> FieldElem {
    assert!(r >= 1, "truncation order r must be positive");
    if n < k * r {
        return mode.zero();
    }
    let terms = unit_terms(mode, n);

    fn descend(
        terms: &[FieldElem],
        remaining: usize,
        parts: usize,
        r: usize,
        acc: &FieldElem,
        total: &mut FieldElem,
    ) {
        if parts == 0 {
            if remaining == 0 {
                *total = &*total + acc;
            }
            return;
        }
        // every later part needs at least r
        let max_here = remaining - (parts - 1) * r;
        for l in r..=max_here {
            let next = acc * &terms[l];
            descend(terms, remaining - l, parts - 1, r, &next, total);
        }
    }

    let mut total = mode.zero();
    descend(&terms, n, k, r, &mode.one(), &mut total);
    total.scale(&Rational::new(factorial(n), factorial(k)))
}

/// `S⁽ʳ⁾₂,λ(n, kr)` by the alternating binomial expansion
///
/// `(1/k!) Σₘ C(k,m)(−1)ᵐ Σ_{l₁..lₘ∈[0,r)} n! Π(1)_{lᵢ,λ}/Π lᵢ! · (k−m)_{n−L,λ}/(n−L)!`
///
/// with `L = l₁+⋯+lₘ`. Tuples with `L > n` contribute nothing. The sum
/// vanishes identically for `n < kr`.
pub fn stirling2r_binomial(mode: &LambdaMode, n: usize, k: usize, r: usize) -> FieldElem {
    assert!(r >= 1, "truncation order r must be positive");
    let terms = unit_terms(mode, n.max(r));
    let lambda = mode.lambda();

    // Σ over m-tuples in [0, r)ᵐ of Π terms, bucketed by L = Σ lᵢ (L ≤ n).
    fn tuple_sums(terms: &[FieldElem], m: usize, r: usize, n: usize, mode: &LambdaMode) -> Vec<FieldElem> {
        let mut sums = vec![mode.zero(); n + 1];
        sums[0] = mode.one();
        for _ in 0..m {
            let mut next = vec![mode.zero(); n + 1];
            for (s, v) in sums.iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                for l in 0..r {
                    if s + l > n {
                        break;
                    }
                    next[s + l] = &next[s + l] + &(v * &terms[l]);
                }
            }
            sums = next;
        }
        sums
    }

    let mut total = mode.zero();
    for m in 0..=k {
        let by_sum = tuple_sums(&terms, m, r, n, mode);
        let base = mode.int((k - m) as i64);
        let mut inner = mode.zero();
        for (big_l, v) in by_sum.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let j = n - big_l;
            let tail = gen_falling(&base, j, &lambda).scale(&inv_factorial(j));
            inner = &inner + &(v * &tail);
        }
        let sign = if m % 2 == 0 { 1 } else { -1 };
        let c = Rational::from_integer(binomial(k, m) * sign);
        total = &total + &inner.scale(&c);
    }
    total.scale(&Rational::new(factorial(n), factorial(k)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StirlingKind {
    FirstDegenerate,
    SecondDegenerate,
    SecondTruncated,
    FirstTruncated,
}

impl fmt::Display for StirlingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StirlingKind::FirstDegenerate => "stirling1",
            StirlingKind::SecondDegenerate => "stirling2",
            StirlingKind::SecondTruncated => "stirling2r",
            StirlingKind::FirstTruncated => "stirling1r",
        })
    }
}

/// A block of Stirling values for `0 ≤ n ≤ n_max`, `0 ≤ k ≤ k_max`, computed
/// from the generating function one power at a time.
#[derive(Clone, Debug)]
pub struct StirlingTriangle {
    kind: StirlingKind,
    r: usize,
    n_max: usize,
    k_max: usize,
    entries: BTreeMap<(usize, usize), FieldElem>,
}

impl StirlingTriangle {
    /// `r` is ignored (taken as 1) for the untruncated kinds.
    pub fn build(mode: &LambdaMode, kind: StirlingKind, r: usize, n_max: usize, k_max: usize) -> Self {
        assert!(r >= 1, "truncation order r must be positive");
        let r = match kind {
            StirlingKind::FirstDegenerate | StirlingKind::SecondDegenerate => 1,
            _ => r,
        };
        let base = match kind {
            StirlingKind::SecondDegenerate | StirlingKind::SecondTruncated => {
                truncated_exp(mode, r, n_max)
            }
            StirlingKind::FirstDegenerate | StirlingKind::FirstTruncated => {
                truncated_log(mode, r, n_max)
            }
        };
        let mut entries = BTreeMap::new();
        let mut power = Series::one(mode, n_max);
        for k in 0..=k_max {
            let inv_k = inv_factorial(k);
            for n in 0..=n_max {
                let v = power.coeffs()[n].scale(&(Rational::from_integer(factorial(n)) * &inv_k));
                entries.insert((n, k), v);
            }
            if k < k_max {
                power = power.mul(&base).expect("same mode");
            }
        }
        StirlingTriangle {
            kind,
            r,
            n_max,
            k_max,
            entries,
        }
    }

    pub fn kind(&self) -> StirlingKind {
        self.kind
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }

    /// Value at `(n, k)` with `k` counting blocks; `None` outside the block.
    pub fn get(&self, n: usize, k: usize) -> Option<&FieldElem> {
        self.entries.get(&(n, k))
    }

    /// Like [`get`](Self::get) but panics outside the computed range.
    pub fn at(&self, n: usize, k: usize) -> &FieldElem {
        self.get(n, k).unwrap_or_else(|| {
            panic!(
                "({n}, {k}) outside {} table with n ≤ {}, k ≤ {}",
                self.kind, self.n_max, self.k_max
            )
        })
    }

    /// `(n, k, value)` with n ascending, then k ascending.
    pub fn rows(&self) -> impl Iterator<Item = (usize, usize, &FieldElem)> {
        self.entries.iter().map(|(&(n, k), v)| (n, k, v))
    }
}

/// `(x)ₙ,λ` expanded in the falling-factorial basis: `Σₖ S₂,λ(n,k)(x)ₖ`.
/// Used to check the defining basis identity independently of the series.
pub fn second_kind_basis_sum(table: &StirlingTriangle, n: usize, x: &FieldElem) -> FieldElem {
    (0..=n).fold(x.mode().zero(), |acc, k| {
        &acc + &(table.at(n, k) * &crate::degen::falling_factorial(x, k))
    })
}

/// `(x)ₙ` expanded in the λ-falling basis: `Σₖ S₁,λ(n,k)(x)ₖ,λ`.
pub fn first_kind_basis_sum(table: &StirlingTriangle, n: usize, x: &FieldElem) -> FieldElem {
    let lambda = x.mode().lambda();
    (0..=n).fold(x.mode().zero(), |acc, k| {
        &acc + &(table.at(n, k) * &gen_falling(x, k, &lambda))
    })
}
