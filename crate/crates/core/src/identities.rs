//! Mechanical verification of identities among degenerate Stirling and
//! Bernoulli numbers.
//!
//! Every check computes its two sides along separate code paths (tables from
//! generating functions on one side, explicit finite sums on the other) and
//! wraps the result in an [`IdentityReport`]. Equality is exact: both sides
//! are canonical field elements, compared structurally.
//!
//! Two identities carry a second, `as-printed` variant next to the asserted
//! `as-derived` one:
//!
//! - `thm5`: the as-printed form has `C(n+j, k)` on the left and `(−1)ⁿ` on
//!   the right, the as-derived form `C(n+k, j)` and `(−1)ᵏ`.
//! - `thm8`: the as-printed inner sum starts at `l = 1`; the as-derived one
//!   keeps the `l = 0` term `S₂,λ(n+j−1, j−1)/(n+j−1)!`.
//!
//! `as-printed` verdicts are reported, never asserted.

use std::collections::hash_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::bernoulli::{
    bell_partial, bell_partial_gf, degen_bernoulli_seq, k_lambda, k_lambda_series, trunc_bernoulli_closed_form,
    trunc_degen_bernoulli_seq, BellInput, ClosedFormVariant,
};
use crate::degen::{falling_factorial, gen_falling, lambda_scaled_reciprocal_falling, unit_falling};
use crate::error::{Error, Result};
use crate::field::{FieldElem, LambdaMode};
use crate::rational::{binomial, factorial, format_rational, int, inv_factorial, Rational};
use crate::stirling::{stirling2r_binomial, stirling2r_composition, StirlingKind, StirlingTriangle};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityId {
    /// Generating function vs composition sum for `S⁽ʳ⁾₂,λ`.
    StirlingComposition,
    /// Generating function vs alternating binomial sum for `S⁽ʳ⁾₂,λ`.
    StirlingBinomial,
    /// `S⁽¹⁾₂,λ(n, k) = S₂,λ(n, k)`.
    TruncationOne,
    /// `S⁽ʳ⁾₂,λ(n, kr) = 0` for `n < kr`.
    Vanishing,
    /// Convolution of one-block truncated Stirling numbers.
    Thm3,
    /// `Σₖ S₁,λ(n,k) S₂,λ(k,m) = δₙₘ` and its mirror.
    Inversion,
    /// `(x)ₙ,λ = Σ S₂,λ(n,k)(x)ₖ` and `(x)ₙ = Σ S₁,λ(n,k)(x)ₖ,λ`.
    Basis,
    /// Closed forms of `β^{[r−1,1]}ₙ,λ(x)` for n ≤ 2.
    ClosedForm,
    /// `Σ C(n,l) S⁽ʳ⁾₂,λ(n−l, αr) β^{[r−1,α]}ₗ,λ = (αr)!/α! · [n = αr]`.
    BernoulliDelta,
    /// `(x)ₙ,λ` expanded in truncated Bernoulli polynomials.
    FallingExpansion,
    /// Bell-sum vs reciprocal-series `K_{n,λ}`.
    KLambda,
    /// `K_{n,λ}(1, 1, …) = Σ (−1)ᵏ k! S₂,λ(n,k)`.
    KLambdaOnes,
    /// Enumeration vs generating function for partial Bell polynomials.
    Bell,
    /// `β_{n,λ} = Σ λᵏ(1)_{k+1,1/λ}/(k+1) · S₂,λ(n,k)`.
    Thm4Second,
    /// `λⁿ(1)_{n+1,1/λ}/(n+1) = Σ β_{k,λ} S₁,λ(n,k)`.
    Thm4First,
    Thm5,
    Thm6,
    Thm7,
    Thm8,
}

impl IdentityId {
    pub fn tag(self) -> &'static str {
        use IdentityId::*;
        match self {
            StirlingComposition => "stirling-composition",
            StirlingBinomial => "stirling-binomial",
            TruncationOne => "truncation-one",
            Vanishing => "vanishing",
            Thm3 => "thm3",
            Inversion => "inversion",
            Basis => "basis",
            ClosedForm => "closed-form",
            BernoulliDelta => "bernoulli-delta",
            FallingExpansion => "falling-expansion",
            KLambda => "klambda",
            KLambdaOnes => "klambda-ones",
            Bell => "bell",
            Thm4Second => "thm4-second-kind",
            Thm4First => "thm4-first-kind",
            Thm5 => "thm5",
            Thm6 => "thm6",
            Thm7 => "thm7",
            Thm8 => "thm8",
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl Serialize for IdentityId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.tag())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    AsPrinted,
    AsDerived,
}

/// A parameter value in a report: an index, or a rational sample point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Param {
    Index(usize),
    Value(Rational),
}

impl Serialize for Param {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Param::Index(i) => s.serialize_u64(*i as u64),
            Param::Value(q) => s.serialize_str(&format_rational(q)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub identity: IdentityId,
    pub variant: Option<Variant>,
    pub params: BTreeMap<String, Param>,
    pub lhs: FieldElem,
    pub rhs: FieldElem,
    pub equal: bool,
}

impl IdentityReport {
    pub fn new(identity: IdentityId, params: &[(&str, usize)], lhs: FieldElem, rhs: FieldElem) -> Self {
        let equal = lhs == rhs;
        IdentityReport {
            identity,
            variant: None,
            params: params
                .iter()
                .map(|&(k, v)| (k.to_string(), Param::Index(v)))
                .collect(),
            lhs,
            rhs,
            equal,
        }
    }

    pub fn with_variant(mut self, variant: Variant) -> Self {
        self.variant = Some(variant);
        self
    }

    pub fn with_value(mut self, name: &str, value: Rational) -> Self {
        self.params.insert(name.to_string(), Param::Value(value));
        self
    }

    /// `as-printed` variants are informational; everything else must hold.
    pub fn asserted(&self) -> bool {
        self.variant != Some(Variant::AsPrinted)
    }

    pub fn param(&self, name: &str) -> Option<&Param> {
        self.params.get(name)
    }
}

fn sign(e: usize) -> Rational {
    int(if e.is_multiple_of(2) { 1 } else { -1 })
}

fn int_r(n: usize) -> Rational {
    Rational::from_integer(n.into())
}

/// Cached tables for one λ mode. Every lookup grows the relevant table on
/// demand, so verifiers can be called in any order.
#[derive(Debug)]
pub struct Verifier {
    mode: LambdaMode,
    bound: usize,
    s2: Option<StirlingTriangle>,
    s1: Option<StirlingTriangle>,
    s2r: HashMap<usize, StirlingTriangle>,
    beta: HashMap<u32, Vec<FieldElem>>,
    trunc_beta: HashMap<(usize, u32), Vec<FieldElem>>,
}

impl Verifier {
    pub fn new(mode: LambdaMode) -> Self {
        Verifier {
            mode,
            bound: 0,
            s2: None,
            s1: None,
            s2r: HashMap::new(),
            beta: HashMap::new(),
            trunc_beta: HashMap::new(),
        }
    }

    /// Pre-size every table to cover indices up to `bound`.
    pub fn with_bound(mode: LambdaMode, bound: usize) -> Self {
        let mut v = Self::new(mode);
        v.bound = bound;
        v
    }

    pub fn mode(&self) -> &LambdaMode {
        &self.mode
    }

    fn grow(&mut self, needed: usize) {
        if needed > self.bound {
            self.bound = needed.max(self.bound + 4);
            self.s2 = None;
            self.s1 = None;
            self.s2r.clear();
            self.beta.clear();
            self.trunc_beta.clear();
        }
    }

    /// `S₂,λ(n, k)`.
    pub fn s2(&mut self, n: usize, k: usize) -> FieldElem {
        if k > n {
            return self.mode.zero();
        }
        self.grow(n);
        let (mode, bound) = (&self.mode, self.bound);
        self.s2
            .get_or_insert_with(|| StirlingTriangle::build(mode, StirlingKind::SecondDegenerate, 1, bound, bound))
            .at(n, k)
            .clone()
    }

    /// `S₁,λ(n, k)`.
    pub fn s1(&mut self, n: usize, k: usize) -> FieldElem {
        if k > n {
            return self.mode.zero();
        }
        self.grow(n);
        let (mode, bound) = (&self.mode, self.bound);
        self.s1
            .get_or_insert_with(|| StirlingTriangle::build(mode, StirlingKind::FirstDegenerate, 1, bound, bound))
            .at(n, k)
            .clone()
    }

    /// `S⁽ʳ⁾₂,λ(n, kr)` with `k` blocks.
    pub fn s2r(&mut self, n: usize, k: usize, r: usize) -> FieldElem {
        if k * r > n {
            return self.mode.zero();
        }
        self.grow(n);
        let (mode, bound) = (&self.mode, self.bound);
        self.s2r
            .entry(r)
            .or_insert_with(|| StirlingTriangle::build(mode, StirlingKind::SecondTruncated, r, bound, bound / r))
            .at(n, k)
            .clone()
    }

    /// `β⁽ᵅ⁾ₙ,λ` (at x = 0).
    pub fn beta(&mut self, n: usize, alpha: u32) -> FieldElem {
        self.grow(n);
        let (mode, bound) = (&self.mode, self.bound);
        self.beta
            .entry(alpha)
            .or_insert_with(|| degen_bernoulli_seq(mode, alpha, &mode.zero(), bound).expect("Bernoulli kernel is invertible"))
            [n]
            .clone()
    }

    /// `β^{[r−1,α]}ₙ,λ` (at x = 0). Fails at a fixed λ where `(1)ᵣ,λ = 0`.
    pub fn trunc_beta(&mut self, n: usize, r: usize, alpha: u32) -> Result<FieldElem> {
        self.grow(n);
        let (mode, bound) = (&self.mode, self.bound);
        let seq = match self.trunc_beta.entry((r, alpha)) {
            Entry::Occupied(e) => e.into_mut(),
            Entry::Vacant(e) => e.insert(trunc_degen_bernoulli_seq(mode, r, alpha, &mode.zero(), bound)?),
        };
        Ok(seq[n].clone())
    }

    fn rational(&self, q: Rational) -> FieldElem {
        self.mode.rational(q)
    }

    /// Generating function against the composition and binomial routes for
    /// `S⁽ʳ⁾₂,λ(n, kr)`.
    pub fn verify_stirling_routes(&mut self, n: usize, k: usize, r: usize) -> [IdentityReport; 2] {
        let params = [("n", n), ("k", k), ("r", r)];
        let gf = self.s2r(n, k, r);
        let comp = stirling2r_composition(&self.mode, n, k, r);
        let binom = stirling2r_binomial(&self.mode, n, k, r);
        [
            IdentityReport::new(IdentityId::StirlingComposition, &params, gf.clone(), comp),
            IdentityReport::new(IdentityId::StirlingBinomial, &params, gf, binom),
        ]
    }

    /// `S⁽¹⁾₂,λ(n,k)` by the composition route against `S₂,λ(n,k)`.
    pub fn verify_truncation_one(&mut self, n: usize, k: usize) -> IdentityReport {
        let lhs = stirling2r_composition(&self.mode, n, k, 1);
        let rhs = self.s2(n, k);
        IdentityReport::new(IdentityId::TruncationOne, &[("n", n), ("k", k)], lhs, rhs)
    }

    /// All three routes vanish below the diagonal `n < kr`.
    pub fn verify_vanishing(&mut self, n: usize, k: usize, r: usize) -> Result<Vec<IdentityReport>> {
        if n >= k * r {
            return Err(Error::DomainViolation(format!("vanishing needs n < kr, got n={n}, kr={}", k * r)));
        }
        let params = [("n", n), ("k", k), ("r", r)];
        let zero = self.mode.zero();
        let gf = crate::stirling::stirling2r_gf(&self.mode, n, k, r, n).expect("n within precision");
        Ok(vec![
            IdentityReport::new(IdentityId::Vanishing, &params, gf, zero.clone()),
            IdentityReport::new(IdentityId::Vanishing, &params, stirling2r_composition(&self.mode, n, k, r), zero.clone()),
            IdentityReport::new(IdentityId::Vanishing, &params, stirling2r_binomial(&self.mode, n, k, r), zero),
        ])
    }

    /// `k!/(n+kr)!·S⁽ʳ⁾₂,λ(n+kr, kr)` against the sum over weak compositions
    /// `j₁+⋯+jₖ = n` of `Π S⁽ʳ⁾₂,λ(jᵢ+r, r)/(jᵢ+r)!`.
    pub fn verify_thm3(&mut self, n: usize, k: usize, r: usize) -> IdentityReport {
        let lhs = self
            .s2r(n + k * r, k, r)
            .scale(&Rational::new(factorial(k), factorial(n + k * r)));
        let factors: Vec<FieldElem> = (0..=n)
            .map(|j| self.s2r(j + r, 1, r).scale(&inv_factorial(j + r)))
            .collect();

        fn weak(factors: &[FieldElem], remaining: usize, parts: usize, acc: &FieldElem, total: &mut FieldElem) {
            if parts == 0 {
                if remaining == 0 {
                    *total = &*total + acc;
                }
                return;
            }
            for j in 0..=remaining {
                weak(factors, remaining - j, parts - 1, &(acc * &factors[j]), total);
            }
        }

        let mut rhs = self.mode.zero();
        weak(&factors, n, k, &self.mode.one(), &mut rhs);
        IdentityReport::new(IdentityId::Thm3, &[("n", n), ("k", k), ("r", r)], lhs, rhs)
    }

    /// `Σₖ S₁,λ(n,k)S₂,λ(k,m)` and `Σₖ S₂,λ(n,k)S₁,λ(k,m)` against `δₙₘ`.
    pub fn verify_inversion(&mut self, n: usize, m: usize) -> [IdentityReport; 2] {
        let delta = if n == m { self.mode.one() } else { self.mode.zero() };
        let mut a = self.mode.zero();
        let mut b = self.mode.zero();
        for k in 0..=n {
            a = &a + &(&self.s1(n, k) * &self.s2(k, m));
            b = &b + &(&self.s2(n, k) * &self.s1(k, m));
        }
        let params = [("n", n), ("m", m)];
        [
            IdentityReport::new(IdentityId::Inversion, &params, a, delta.clone()),
            IdentityReport::new(IdentityId::Inversion, &params, b, delta),
        ]
    }

    /// Both basis expansions at the sample point `x`.
    pub fn verify_basis(&mut self, n: usize, x: &Rational) -> [IdentityReport; 2] {
        let xv = self.rational(x.clone());
        let lambda = self.mode.lambda();
        let mut second = self.mode.zero();
        let mut first = self.mode.zero();
        for k in 0..=n {
            second = &second + &(&self.s2(n, k) * &falling_factorial(&xv, k));
            first = &first + &(&self.s1(n, k) * &gen_falling(&xv, k, &lambda));
        }
        [
            IdentityReport::new(IdentityId::Basis, &[("n", n)], gen_falling(&xv, n, &lambda), second)
                .with_value("x", x.clone()),
            IdentityReport::new(IdentityId::Basis, &[("n", n)], falling_factorial(&xv, n), first)
                .with_value("x", x.clone()),
        ]
    }

    /// Series value of `β^{[r−1,1]}ₙ,λ(x)` against the closed form, both sign
    /// variants for n = 2. For n < 2 one report, with no variant.
    pub fn verify_closed_form(&mut self, n: usize, r: usize, x: &Rational) -> Result<Vec<IdentityReport>> {
        let xv = self.rational(x.clone());
        let series = trunc_degen_bernoulli_seq(&self.mode, r, 1, &xv, n)?[n].clone();
        let params = [("n", n), ("r", r)];
        let derived = trunc_bernoulli_closed_form(&self.mode, n, r, &xv, ClosedFormVariant::AsDerived)?;
        let mut out = Vec::new();
        if n < 2 {
            out.push(IdentityReport::new(IdentityId::ClosedForm, &params, series, derived).with_value("x", x.clone()));
        } else {
            let printed = trunc_bernoulli_closed_form(&self.mode, n, r, &xv, ClosedFormVariant::AsPrinted)?;
            out.push(
                IdentityReport::new(IdentityId::ClosedForm, &params, series.clone(), derived)
                    .with_variant(Variant::AsDerived)
                    .with_value("x", x.clone()),
            );
            out.push(
                IdentityReport::new(IdentityId::ClosedForm, &params, series, printed)
                    .with_variant(Variant::AsPrinted)
                    .with_value("x", x.clone()),
            );
        }
        Ok(out)
    }

    /// `Σ_{l=0}^{n−αr} C(n,l) S⁽ʳ⁾₂,λ(n−l, αr) β^{[r−1,α]}ₗ,λ` against
    /// `(αr)!/α!` when `n = αr` and `0` when `n > αr`.
    pub fn verify_bernoulli_delta(&mut self, alpha: u32, r: usize, n: usize) -> Result<IdentityReport> {
        let ar = alpha as usize * r;
        if n < ar {
            return Err(Error::DomainViolation(format!("need n ≥ αr = {ar}, got n = {n}")));
        }
        let mut lhs = self.mode.zero();
        for l in 0..=(n - ar) {
            let term = &self.s2r(n - l, alpha as usize, r) * &self.trunc_beta(l, r, alpha)?;
            lhs = &lhs + &term.scale(&Rational::from_integer(binomial(n, l)));
        }
        let rhs = if n == ar {
            self.rational(Rational::new(factorial(ar), factorial(alpha as usize)))
        } else {
            self.mode.zero()
        };
        Ok(IdentityReport::new(
            IdentityId::BernoulliDelta,
            &[("alpha", alpha as usize), ("r", r), ("n", n)],
            lhs,
            rhs,
        ))
    }

    /// `(x)ₙ,λ = Σⱼ C(n,j)·j!/(j+r)!·(1)_{j+r,λ}·β^{[r−1,1]}_{n−j,λ}(x)`.
    pub fn verify_falling_expansion(&mut self, n: usize, r: usize, x: &Rational) -> Result<IdentityReport> {
        let xv = self.rational(x.clone());
        let betas = trunc_degen_bernoulli_seq(&self.mode, r, 1, &xv, n)?;
        let mut rhs = self.mode.zero();
        for j in 0..=n {
            let c = Rational::from_integer(binomial(n, j) * factorial(j)) * inv_factorial(j + r);
            rhs = &rhs + &(&unit_falling(&self.mode, j + r) * &betas[n - j]).scale(&c);
        }
        let lhs = gen_falling(&xv, n, &self.mode.lambda());
        Ok(IdentityReport::new(IdentityId::FallingExpansion, &[("n", n), ("r", r)], lhs, rhs).with_value("x", x.clone()))
    }

    /// Bell-sum `K_{n,λ}` against the reciprocal series.
    pub fn verify_k_lambda(&mut self, n: usize, xs: &BellInput) -> Result<IdentityReport> {
        let lhs = k_lambda(&self.mode, n, xs)?;
        let rhs = k_lambda_series(&self.mode, n, xs)?;
        Ok(IdentityReport::new(IdentityId::KLambda, &[("n", n)], lhs, rhs))
    }

    /// `K_{n,λ}(1, 1, …)` against `Σₖ (−1)ᵏ k! S₂,λ(n,k)`.
    pub fn verify_k_lambda_ones(&mut self, n: usize) -> Result<IdentityReport> {
        let ones = BellInput(vec![self.mode.one(); n]);
        let lhs = k_lambda(&self.mode, n, &ones)?;
        let mut rhs = self.mode.zero();
        for k in 0..=n {
            rhs = &rhs + &self.s2(n, k).scale(&(sign(k) * Rational::from_integer(factorial(k))));
        }
        Ok(IdentityReport::new(IdentityId::KLambdaOnes, &[("n", n)], lhs, rhs))
    }

    /// Enumeration against generating function for `B_{n,k}`.
    pub fn verify_bell(&mut self, n: usize, k: usize, xs: &BellInput) -> Result<IdentityReport> {
        let lhs = bell_partial(&self.mode, n, k, xs)?;
        let rhs = bell_partial_gf(&self.mode, n, k, xs)?;
        Ok(IdentityReport::new(IdentityId::Bell, &[("n", n), ("k", k)], lhs, rhs))
    }

    /// Both expansions of the degenerate Bernoulli numbers through the
    /// degenerate Stirling numbers.
    pub fn verify_thm4(&mut self, n: usize) -> [IdentityReport; 2] {
        // λᵏ(1)_{k+1,1/λ}/(k+1), a polynomial in λ
        let weight = |mode: &LambdaMode, k: usize| {
            lambda_scaled_reciprocal_falling(mode, k, k + 1).scale(&Rational::new(1.into(), (k + 1).into()))
        };
        let lhs_a = self.beta(n, 1);
        let mut rhs_a = self.mode.zero();
        for k in 0..=n {
            rhs_a = &rhs_a + &(&weight(&self.mode, k) * &self.s2(n, k));
        }
        let lhs_b = weight(&self.mode, n);
        let mut rhs_b = self.mode.zero();
        for k in 0..=n {
            rhs_b = &rhs_b + &(&self.beta(k, 1) * &self.s1(n, k));
        }
        [
            IdentityReport::new(IdentityId::Thm4Second, &[("n", n)], lhs_a, rhs_a),
            IdentityReport::new(IdentityId::Thm4First, &[("n", n)], lhs_b, rhs_b),
        ]
    }

    /// `Σⱼ S⁽²⁾₂,λ(n−j+k, 2k) C(n+k, j) β_{j,λ}` against
    /// `(−1)ᵏ C(n+k,k) β_{n,λ} + (n+k)! Σ_{j=1}^{k} (−1)^{k−j}/(j(k−j)!) · S₂,λ(n+j−1, j−1)/(n+j−1)!`,
    /// plus the printed variant with `C(n+j, k)` and `(−1)ⁿ`.
    pub fn verify_thm5(&mut self, n: usize, k: usize) -> [IdentityReport; 2] {
        let mut lhs = self.mode.zero();
        let mut lhs_printed = self.mode.zero();
        for j in 0..=n {
            let term = &self.s2r(n - j + k, k, 2) * &self.beta(j, 1);
            lhs = &lhs + &term.scale(&Rational::from_integer(binomial(n + k, j)));
            lhs_printed = &lhs_printed + &term.scale(&Rational::from_integer(binomial(n + j, k)));
        }
        let mut tail = self.mode.zero();
        for j in 1..=k {
            let c = sign(k - j) / (int_r(j) * Rational::from_integer(factorial(k - j)));
            let s = self.s2(n + j - 1, j - 1).scale(&inv_factorial(n + j - 1));
            tail = &tail + &s.scale(&c);
        }
        tail = tail.scale(&Rational::from_integer(factorial(n + k)));
        let bn = self.beta(n, 1).scale(&Rational::from_integer(binomial(n + k, k)));
        let rhs = &bn.scale(&sign(k)) + &tail;
        let rhs_printed = &bn.scale(&sign(n)) + &tail;
        let params = [("n", n), ("k", k)];
        [
            IdentityReport::new(IdentityId::Thm5, &params, lhs, rhs).with_variant(Variant::AsDerived),
            IdentityReport::new(IdentityId::Thm5, &params, lhs_printed, rhs_printed).with_variant(Variant::AsPrinted),
        ]
    }

    /// `thm6` on its domain `n ≥ k ≥ 1`.
    pub fn verify_thm6(&mut self, n: usize, k: usize) -> Result<IdentityReport> {
        if k < 1 || n < k {
            return Err(Error::DomainViolation(format!("need n ≥ k ≥ 1, got n = {n}, k = {k}")));
        }
        self.verify_thm6_unchecked(n, k)
    }

    /// `Σⱼ C(n+k−1, j) S⁽²⁾₂,λ(n−j+k, 2k) β_{j,λ}` against
    /// `(n+k−1)! { Σ_{l=k}^{n} S⁽²⁾₂,λ(l+k−2, 2k−2)/(l+k−2)! (−λ)^{n−l}
    ///   + Σ_{j=k}^{n} Σ_{l=k}^{j} S⁽²⁾₂,λ(l+k−2, 2k−2) β_{n−j,λ} (−λ)^{j−l+1} / ((l+k−2)!(n−j)!) }`
    ///
    /// Requires only `k ≥ 1`; `n < k` is outside the domain but the
    /// two sides are still computed.
    pub fn verify_thm6_unchecked(&mut self, n: usize, k: usize) -> Result<IdentityReport> {
        if k < 1 {
            return Err(Error::DomainViolation(format!("need k ≥ 1, got k = {k}")));
        }
        let mut lhs = self.mode.zero();
        for j in 0..=n {
            let term = &self.s2r(n - j + k, k, 2) * &self.beta(j, 1);
            lhs = &lhs + &term.scale(&Rational::from_integer(binomial(n + k - 1, j)));
        }
        let neg_lambda = -&self.mode.lambda();
        let mut first = self.mode.zero();
        for l in k..=n {
            let s = self.s2r(l + k - 2, k - 1, 2).scale(&inv_factorial(l + k - 2));
            first = &first + &(&s * &neg_lambda.pow((n - l) as u32));
        }
        let mut second = self.mode.zero();
        for j in k..=n {
            let b = self.beta(n - j, 1).scale(&inv_factorial(n - j));
            for l in k..=j {
                let s = self.s2r(l + k - 2, k - 1, 2).scale(&inv_factorial(l + k - 2));
                second = &second + &(&(&s * &b) * &neg_lambda.pow((j - l + 1) as u32));
            }
        }
        let rhs = (&first + &second).scale(&Rational::from_integer(factorial(n + k - 1)));
        Ok(IdentityReport::new(IdentityId::Thm6, &[("n", n), ("k", k)], lhs, rhs))
    }

    /// `Σⱼ S⁽²⁾₂,λ(n−j+k, 2k) C(n+k, j) β⁽ᵏ⁾_{j,λ}` against
    /// `C(n+k, k) Σⱼ C(k, j)(−1)^{k−j} β^{(k−j)}_{n,λ}`.
    pub fn verify_thm7(&mut self, n: usize, k: usize) -> IdentityReport {
        let mut lhs = self.mode.zero();
        for j in 0..=n {
            let term = &self.s2r(n - j + k, k, 2) * &self.beta(j, k as u32);
            lhs = &lhs + &term.scale(&Rational::from_integer(binomial(n + k, j)));
        }
        let mut rhs = self.mode.zero();
        for j in 0..=k {
            let c = sign(k - j) * Rational::from_integer(binomial(k, j));
            rhs = &rhs + &self.beta(n, (k - j) as u32).scale(&c);
        }
        rhs = rhs.scale(&Rational::from_integer(binomial(n + k, k)));
        IdentityReport::new(IdentityId::Thm7, &[("n", n), ("k", k)], lhs, rhs)
    }

    /// `Σⱼ C(n+k, j+k) S⁽³⁾₂,λ(j+k, 3k) β_{n−j,λ}` against
    ///
    /// `(−1)ᵏ(n+k)! Σⱼ C(k,j)(1−λ)ʲ β_{n−j,λ}/(2ʲ(n−j)!k!)
    ///   + (n+k)! Σ_{j=1}^{k} (−1)^{k−j}/(j(k−j)!) Σₗ C(k−j,l) S₂,λ(n−l+j−1, j−1)(1−λ)ˡ/(2ˡ(n−l+j−1)!)`
    ///
    /// with the inner sum from `l = 0` (as derived) and from `l = 1` (as printed).
    pub fn verify_thm8(&mut self, n: usize, k: usize) -> [IdentityReport; 2] {
        let mut lhs = self.mode.zero();
        for j in 0..=n {
            let term = &self.s2r(j + k, k, 3) * &self.beta(n - j, 1);
            lhs = &lhs + &term.scale(&Rational::from_integer(binomial(n + k, j + k)));
        }
        let one_minus = &self.mode.one() - &self.mode.lambda();
        let half_one_minus = one_minus.scale(&Rational::new(1.into(), 2.into()));
        let mut head = self.mode.zero();
        for j in 0..=n.min(k) {
            let b = self.beta(n - j, 1).scale(&inv_factorial(n - j));
            let c = Rational::from_integer(binomial(k, j));
            head = &head + &(&half_one_minus.pow(j as u32) * &b).scale(&c);
        }
        head = head.scale(&(sign(k) * Rational::new(factorial(n + k), factorial(k))));

        let mut tail_l0 = self.mode.zero();
        let mut tail_l1 = self.mode.zero();
        for j in 1..=k {
            let outer = sign(k - j) / (int_r(j) * Rational::from_integer(factorial(k - j)));
            for l in 0..=n.min(k - j) {
                let s = self.s2(n - l + j - 1, j - 1).scale(&inv_factorial(n - l + j - 1));
                let c = Rational::from_integer(binomial(k - j, l)) * &outer;
                let term = (&s * &half_one_minus.pow(l as u32)).scale(&c);
                tail_l0 = &tail_l0 + &term;
                if l >= 1 {
                    tail_l1 = &tail_l1 + &term;
                }
            }
        }
        let nk = Rational::from_integer(factorial(n + k));
        let rhs = &head + &tail_l0.scale(&nk);
        let rhs_printed = &head + &tail_l1.scale(&nk);
        let params = [("n", n), ("k", k)];
        [
            IdentityReport::new(IdentityId::Thm8, &params, lhs.clone(), rhs).with_variant(Variant::AsDerived),
            IdentityReport::new(IdentityId::Thm8, &params, lhs, rhs_printed).with_variant(Variant::AsPrinted),
        ]
    }
}
