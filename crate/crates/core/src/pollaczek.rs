//! Pollaczek polynomials `P_j^λ(x; a, b)`, specialised to the hydrogen
//! family `P_j(x) = P_j^1(x; 0, −δ)`.
//!
//! Three independent evaluation routes live here: the three-term recursion
//! (generic over [`Scalar`]), the exact closed form at the discrete mass points
//! `x_m = √(1 + δ²/(m+1)²)`, and the trigonometric sum over Pochhammer symbols.

use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numerics::{binomial, int, pow2, QuadraticSurd, Rational, Scalar};

/// Parameters `(λ, a, b)` of the Pollaczek family.
#[derive(Debug, Clone, PartialEq)]
pub struct PollaczekParams {
    pub lambda: Rational,
    pub a: Rational,
    pub b: Rational,
}

impl PollaczekParams {
    pub fn new(lambda: Rational, a: Rational, b: Rational) -> Self {
        PollaczekParams { lambda, a, b }
    }

    /// `λ = 1, a = 0, b = −δ`: the family attached to the hydrogen lattice.
    pub fn hydrogen(delta: &Rational) -> Self {
        PollaczekParams {
            lambda: Rational::one(),
            a: Rational::zero(),
            b: -delta,
        }
    }

    pub fn is_hydrogen(&self) -> bool {
        self.lambda.is_one() && self.a.is_zero()
    }

    /// Lattice step `δ = −b`.
    pub fn delta(&self) -> Rational {
        -&self.b
    }
}

/// An isolated point `x_m` of the discrete spectrum, with `s = δ/(m+1)` and
/// decay factor `q = x_m − s`.
#[derive(Debug, Clone, PartialEq)]
pub struct MassPoint {
    pub m: usize,
    pub delta: Rational,
    pub x: QuadraticSurd,
    pub s: Rational,
    pub q: QuadraticSurd,
}

impl MassPoint {
    /// Radicand `1 + s²` of the field holding `x`, `q`.
    pub fn radicand(&self) -> Rational {
        Rational::one() + &self.s * &self.s
    }
}

pub fn mass_point(m: usize, delta: &Rational) -> MassPoint {
    let s = delta / int(m as i64 + 1);
    let d = Rational::one() + &s * &s;
    let x = QuadraticSurd::sqrt(d.clone()).expect("1 + s^2 > 0");
    let q = &x - &QuadraticSurd::rational_in(s.clone(), &d);
    MassPoint {
        m,
        delta: delta.clone(),
        x,
        s,
        q,
    }
}

/// `P_0(x), P_1(x), …` at one abscissa.
#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialSequence<S> {
    pub params: PollaczekParams,
    pub x: S,
    pub values: Vec<S>,
}

impl<S: Scalar> PolynomialSequence<S> {
    pub fn get(&self, j: usize) -> Option<&S> {
        self.values.get(j)
    }

    pub fn last(&self) -> &S {
        self.values.last().expect("sequence always holds P_0")
    }
}

/// Hydrogen family `P_0..=P_jmax` at `x` by the three-term recursion.
pub fn pollaczek_seq<S: Scalar>(delta: &Rational, x: S, jmax: usize) -> PolynomialSequence<S> {
    pollaczek_seq_with(&PollaczekParams::hydrogen(delta), x, jmax)
}

/// General family by recursion:
///
/// `(j+1) P_{j+1} = 2[(j+λ+a)x + b] P_j − (j+2λ−1) P_{j−1}`,
///
/// started from `P_{−1} = 0`, `P_0 = 1` and applied for every `j ≥ 0`, so
/// `P_1 = 2[(λ+a)x + b]`.
pub fn pollaczek_seq_with<S: Scalar>(
    params: &PollaczekParams,
    x: S,
    jmax: usize,
) -> PolynomialSequence<S> {
    let two = S::from_usize(2);
    let b = S::from_rational(&params.b);
    let mut values = Vec::with_capacity(jmax + 1);
    values.push(S::one());
    let mut prev = S::zero();
    for j in 0..jmax {
        let shift = int(j as i64) + &params.lambda + &params.a;
        let damp = int(j as i64) + &params.lambda * int(2) - Rational::one();
        let cur = values[j].clone();
        let lead = two.clone() * (S::from_rational(&shift) * x.clone() + b.clone()) * cur.clone();
        let next = (lead - S::from_rational(&damp) * prev)
            * S::from_rational(&Rational::new(1.into(), (j as i64 + 1).into()));
        values.push(next);
        prev = cur;
    }
    PolynomialSequence {
        params: params.clone(),
        x,
        values,
    }
}

/// `P_1` under the alternative initial condition `P_1 = 2(λ+a)x + b`, which
/// drops the factor 2 on `b`. Only used to report the discrepancy.
pub fn alternate_initial_p1<S: Scalar>(params: &PollaczekParams, x: S) -> S {
    S::from_usize(2) * S::from_rational(&(&params.lambda + &params.a)) * x
        + S::from_rational(&params.b)
}

/// `β_{j,m} = Σ_{l=0}^{min(j,m)} 2^l/(l+1) · C(j,l) · C(m,l)`.
pub fn beta_coeff(j: usize, m: usize) -> Rational {
    (0..=j.min(m))
        .map(|l| {
            Rational::new(
                pow2(l) * binomial(j, l) * binomial(m, l),
                (l as i64 + 1).into(),
            )
        })
        .sum()
}

/// First closed-form branch, `(j+1) Σ_{l≤j} x^{j−l} (−s)^l C(j,l) β_{m,l}`.
pub fn closed_first_branch(j: usize, mp: &MassPoint) -> QuadraticSurd {
    let weights = (0..=j).map(|l| Rational::from_integer(binomial(j, l)) * beta_coeff(mp.m, l));
    weighted_power_sum(j, mp, weights).scale(&int(j as i64 + 1))
}

/// Second closed-form branch,
/// `(j+1) q^{j−m} Σ_{l≤m} x^{m−l} (−s)^l C(m,l) β_{j,l}`; needs `j ≥ m`.
pub fn closed_second_branch(j: usize, mp: &MassPoint) -> QuadraticSurd {
    assert!(j >= mp.m, "second branch needs j >= m");
    &mp.q.pow((j - mp.m) as u64) * &pollaczek_q_factor(j, mp)
}

/// `Q_j^m(x_m)`, the degree-`m` factor of the second branch (including `j+1`).
pub fn pollaczek_q_factor(j: usize, mp: &MassPoint) -> QuadraticSurd {
    let m = mp.m;
    let weights = (0..=m).map(|l| Rational::from_integer(binomial(m, l)) * beta_coeff(j, l));
    weighted_power_sum(m, mp, weights).scale(&int(j as i64 + 1))
}

/// `Σ_{l≤deg} w_l x^{deg−l} (−s)^l` with `x² = 1 + s²` reduced exactly.
fn weighted_power_sum(
    deg: usize,
    mp: &MassPoint,
    weights: impl Iterator<Item = Rational>,
) -> QuadraticSurd {
    let d = mp.radicand();
    let x_pows = powers(&mp.x, deg);
    let minus_s = -&mp.s;
    let mut s_pow = Rational::one();
    let mut acc = QuadraticSurd::rational_in(Rational::zero(), &d);
    for (l, w) in weights.enumerate() {
        acc = acc + x_pows[deg - l].scale(&(&w * &s_pow));
        s_pow *= &minus_s;
    }
    acc
}

fn powers(x: &QuadraticSurd, n: usize) -> Vec<QuadraticSurd> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(QuadraticSurd::rational_in(Rational::one(), x.radicand()));
    for i in 0..n {
        out.push(&out[i] * x);
    }
    out
}

/// `P_j(x_m)` from the closed form: the first branch for `j ≤ m`, the
/// factored second branch for `j > m`.
pub fn pollaczek_mass_closed(j: usize, mp: &MassPoint) -> QuadraticSurd {
    if j <= mp.m {
        closed_first_branch(j, mp)
    } else {
        closed_second_branch(j, mp)
    }
}

/// Recovers `Q_j^m(x_m) = P_j(x_m) / q^{j−m}` from a value of `P_j(x_m)`.
pub fn qfactor_split(j: usize, mp: &MassPoint, value: &QuadraticSurd) -> Result<QuadraticSurd> {
    if j <= mp.m {
        return Err(Error::SplitBelowMassIndex { j, m: mp.m });
    }
    value.checked_div(&mp.q.pow((j - mp.m) as u64))
}

/// Sign convention for the first Pochhammer symbol of the trigonometric sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrigConvention {
    /// `(−λ + iΦ)_k (λ + iΦ)_{n−k}`, exactly as the formula is usually
    /// quoted for this family. Not consistent with the recursion.
    Direct,
    /// `(λ − iΦ)_k (λ + iΦ)_{n−k}`. Reproduces the recursion with `P_{−1} = 0`.
    Conjugate,
}

fn rising(base: Complex64, k: usize) -> Complex64 {
    (0..k).fold(Complex64::new(1.0, 0.0), |acc, i| acc * (base + i as f64))
}

/// `Σ_k (−λ+iΦ)_k (λ+iΦ)_{n−k} / (k!(n−k)!) · e^{iθ(2k−n)}` at `x = cos θ`,
/// `Φ = (a cos θ + b)/sin θ`. Returned as evaluated, without renormalisation.
pub fn pollaczek_explicit_trig(
    lambda: f64,
    a: f64,
    b: f64,
    theta: f64,
    n: usize,
) -> Result<Complex64> {
    pollaczek_explicit_trig_with(TrigConvention::Direct, lambda, a, b, theta, n)
}

pub fn pollaczek_explicit_trig_with(
    convention: TrigConvention,
    lambda: f64,
    a: f64,
    b: f64,
    theta: f64,
    n: usize,
) -> Result<Complex64> {
    if !(theta > 0.0 && theta < std::f64::consts::PI) || theta.sin() == 0.0 {
        return Err(Error::SingularAngle(theta));
    }
    let phi = (a * theta.cos() + b) / theta.sin();
    let first = match convention {
        TrigConvention::Direct => Complex64::new(-lambda, phi),
        TrigConvention::Conjugate => Complex64::new(lambda, -phi),
    };
    let second = Complex64::new(lambda, phi);
    let mut fact = vec![1.0_f64; n + 1];
    for i in 1..=n {
        fact[i] = fact[i - 1] * i as f64;
    }
    let sum = (0..=n)
        .map(|k| {
            let phase = Complex64::from_polar(1.0, theta * (2.0 * k as f64 - n as f64));
            rising(first, k) * rising(second, n - k) / (fact[k] * fact[n - k]) * phase
        })
        .sum();
    Ok(sum)
}

/// Ratio of the trigonometric sum to the recursion value for one degree,
/// sampled over several angles.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeRatio {
    pub degree: usize,
    /// Ratio at the first sample angle, used as the normalisation constant.
    pub constant: Complex64,
    /// Largest `|ratio(θ) − constant| / |constant|` over the samples.
    pub max_rel_deviation: f64,
}

/// Per-degree normalisation constants relating the trigonometric sum to the
/// recursion at `x = cos θ`.
pub fn trig_degree_ratios(
    convention: TrigConvention,
    params: &PollaczekParams,
    thetas: &[f64],
    max_degree: usize,
) -> Result<Vec<DegreeRatio>> {
    let (lambda, a, b) = (
        params.lambda.to_f64().unwrap_or(f64::NAN),
        params.a.to_f64().unwrap_or(f64::NAN),
        params.b.to_f64().unwrap_or(f64::NAN),
    );
    let mut samples = vec![Vec::with_capacity(thetas.len()); max_degree + 1];
    for &theta in thetas {
        let seq = pollaczek_seq_with(params, theta.cos(), max_degree);
        for (n, rec) in seq.values.iter().enumerate() {
            let trig = pollaczek_explicit_trig_with(convention, lambda, a, b, theta, n)?;
            samples[n].push(trig / rec);
        }
    }
    Ok(samples
        .into_iter()
        .enumerate()
        .map(|(degree, ratios)| {
            let constant = ratios.first().copied().unwrap_or(Complex64::new(f64::NAN, 0.0));
            let max_rel_deviation = ratios
                .iter()
                .map(|r| (r - constant).norm() / constant.norm())
                .fold(0.0, f64::max);
            DegreeRatio {
                degree,
                constant,
                max_rel_deviation,
            }
        })
        .collect())
}

/// Both candidate values of `P_1` for the hydrogen family at `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct InitialConditionReport<S> {
    pub recursion: S,
    pub alternate: S,
}

pub fn initial_condition_report<S: Scalar>(delta: &Rational, x: S) -> InitialConditionReport<S> {
    let params = PollaczekParams::hydrogen(delta);
    InitialConditionReport {
        recursion: pollaczek_seq_with(&params, x.clone(), 1).values[1].clone(),
        alternate: alternate_initial_p1(&params, x),
    }
}

impl MassPoint {
    /// `0 < q < 1`, meaningful for `δ > 0`.
    pub fn decays(&self) -> bool {
        let q = self.q.to_f64();
        self.delta.is_positive() && q > 0.0 && q < 1.0
    }
}
