//! Position representation: closed-form eigenvalues, the continuum Laguerre
//! reference, and eigenfunctions of the symmetric finite-difference equation
//!
//! `−(u(r−δ) − 2u(r) + u(r+δ))/(2δ²) − u(r)/r = E u(r)`.

mod alpha;
mod ansatz;

pub use alpha::{alpha_assemble, alpha_inner, alpha_vector, c_coeff, AlphaTable};
pub use ansatz::{ansatz_constraint_system, ConstraintSystem, LinearConstraint};

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numerics::{binomial, factorial, int, QuadraticSurd, Rational, Real};

/// Eigenvalue data of the `n`-th discrete state.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenData {
    pub n: usize,
    pub delta: Rational,
    /// `μ_n = √(1 + (δ/n)²)`.
    pub mu: QuadraticSurd,
    /// `E_n = (1 − μ_n)/δ²`; the continuum value `−1/(2n²)` at `δ = 0`.
    pub energy: QuadraticSurd,
    /// `β_n = −arsinh(δ/n)/δ`, `−1/n` at `δ = 0`.
    pub beta: f64,
    /// Per-step decay `q = e^{βδ} = μ_n − δ/n`.
    pub q: QuadraticSurd,
}

pub fn eigen_data(n: usize, delta: &Rational) -> Result<EigenData> {
    if n == 0 {
        return Err(Error::InvalidStateIndex);
    }
    let ratio = delta / int(n as i64);
    let d = Rational::one() + &ratio * &ratio;
    let mu = QuadraticSurd::sqrt(d.clone())?;
    let q = &mu - &QuadraticSurd::rational_in(ratio.clone(), &d);
    let (energy, beta) = if delta.is_zero() {
        let e = -Rational::new(1.into(), (2 * n * n).into());
        (QuadraticSurd::rational_in(e, &d), -1.0 / n as f64)
    } else {
        let e = (QuadraticSurd::rational_in(Rational::one(), &d) - &mu)
            .scale(&(delta * delta).recip());
        let step = delta.to_f64().unwrap_or(f64::NAN);
        let r = ratio.to_f64().unwrap_or(f64::NAN);
        (e, -r.asinh() / step)
    };
    Ok(EigenData {
        n,
        delta: delta.clone(),
        mu,
        energy,
        beta,
        q,
    })
}

impl EigenData {
    /// `μ² − (δ/n)² = 1`, `μ = 1 − δ²E` and `q(μ + δ/n) = 1`, checked exactly.
    pub fn invariants_hold(&self) -> bool {
        let d = self.mu.radicand().clone();
        let one = QuadraticSurd::rational_in(Rational::one(), &d);
        let ratio = QuadraticSurd::rational_in(&self.delta / int(self.n as i64), &d);
        let pythagoras = &self.mu * &self.mu - &ratio * &ratio == one;
        let energy = self.delta.is_zero()
            || self.mu == &one - &self.energy.scale(&(&self.delta * &self.delta));
        let inverse = &self.q * &(&self.mu + &ratio) == one;
        pythagoras && energy && inverse
    }

    /// Continuum energy `−1/(2n²)`.
    pub fn continuum_energy(&self) -> Rational {
        -Rational::new(1.into(), (2 * self.n * self.n).into())
    }
}

/// Coefficients `ℓ_k^{(n)} = (−2/n)^{k−1}/k! · C(n−1, k−1)` of the continuum
/// solution `u_n(r) = e^{−r/n} Σ_k ℓ_k r^k = r L^1_{n−1}(2r/n) e^{−r/n}`.
#[derive(Debug, Clone, PartialEq)]
pub struct LaguerreRef {
    pub n: usize,
    /// `coefficients[k − 1] = ℓ_k`.
    pub coefficients: Vec<Rational>,
}

pub fn laguerre_ref(n: usize) -> Result<LaguerreRef> {
    if n == 0 {
        return Err(Error::InvalidStateIndex);
    }
    let step = Rational::new((-2).into(), (n as i64).into());
    let mut power = Rational::one();
    let mut coefficients = Vec::with_capacity(n);
    for k in 1..=n {
        coefficients.push(
            &power * Rational::new(binomial(n - 1, k - 1), factorial(k)),
        );
        power *= &step;
    }
    Ok(LaguerreRef { n, coefficients })
}

impl LaguerreRef {
    /// `ℓ_k`, zero outside `1..=n`.
    pub fn coefficient(&self, k: usize) -> Rational {
        k.checked_sub(1)
            .and_then(|i| self.coefficients.get(i).cloned())
            .unwrap_or_else(Rational::zero)
    }

    pub fn evaluate<F: Real>(&self, r: F) -> F {
        let poly = self
            .coefficients
            .iter()
            .rev()
            .fold(F::zero(), |acc, c| (acc + F::from_rational(c)) * r);
        poly * (-r / F::from_usize(self.n)).exp()
    }
}

/// The `n`-th discrete eigenfunction for step `δ`, with its polynomial
/// coefficients `ℓ_j α^{(n,δ)}_j` cached.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigenfunction {
    pub data: EigenData,
    /// `poly[j − 1]` multiplies `r^j`.
    pub poly: Vec<QuadraticSurd>,
}

pub fn eigenfunction(n: usize, delta: &Rational) -> Result<Eigenfunction> {
    let data = eigen_data(n, delta)?;
    let ell = laguerre_ref(n)?;
    let poly = alpha_vector(n, delta)?
        .into_iter()
        .enumerate()
        .map(|(i, alpha)| alpha.scale(&ell.coefficients[i]))
        .collect();
    Ok(Eigenfunction { data, poly })
}

impl Eigenfunction {
    /// `u_k = (Σ_j ℓ_j α_j (kδ)^j) q^k` on the lattice `r = kδ`; `u_0 = 0`.
    pub fn grid_value(&self, k: usize) -> QuadraticSurd {
        let r = &self.data.delta * int(k as i64);
        let d = self.data.mu.radicand();
        let mut acc = QuadraticSurd::rational_in(Rational::zero(), d);
        for c in self.poly.iter().rev() {
            acc = (acc + c).scale(&r);
        }
        acc * self.data.q.pow(k as u64)
    }

    /// `u(r) = (Σ_j ℓ_j α_j r^j) e^{βr}` at any real `r`.
    pub fn value_at<F: Real>(&self, r: F) -> F {
        let poly = self
            .poly
            .iter()
            .rev()
            .fold(F::zero(), |acc, c| (acc + num_traits::cast::<f64, F>(c.to_f64()).unwrap()) * r);
        poly * (num_traits::cast::<f64, F>(self.data.beta).unwrap() * r).exp()
    }

    /// `u_{k−1}/2 + u_{k+1}/2 + δ u_k/k − μ u_k` for a trial `μ`.
    pub fn residual_with(&self, mu: &QuadraticSurd, k: usize) -> QuadraticSurd {
        let half = Rational::new(1.into(), 2.into());
        let below = if k == 0 {
            QuadraticSurd::zero()
        } else {
            self.grid_value(k - 1)
        };
        let here = self.grid_value(k);
        let above = self.grid_value(k + 1);
        let potential = &self.data.delta / int(k as i64);
        (below + above).scale(&half) + here.scale(&potential) - mu * &here
    }
}

pub fn wavefunction(n: usize, delta: &Rational, k: usize) -> Result<QuadraticSurd> {
    Ok(eigenfunction(n, delta)?.grid_value(k))
}

/// Float evaluation of the eigenfunction at an arbitrary point `r`.
pub fn wavefunction_at<F: Real>(n: usize, delta: &Rational, r: F) -> Result<F> {
    Ok(eigenfunction(n, delta)?.value_at(r))
}

/// Exact residual of `u(r−δ)/2 + u(r+δ)/2 + δ²u(r)/r = μ u(r)` at `r = kδ`.
pub fn difference_residual(n: usize, delta: &Rational, k: usize) -> Result<QuadraticSurd> {
    if k == 0 {
        return Err(Error::InvalidArgument("grid index k must be >= 1".into()));
    }
    let ef = eigenfunction(n, delta)?;
    Ok(ef.residual_with(&ef.data.mu, k))
}

/// Same residual for any candidate function, eigenvalue and point.
pub fn difference_residual_float<F: Real>(u: impl Fn(F) -> F, mu: F, delta: F, r: F) -> F {
    let two = F::from_usize(2);
    (u(r - delta) + u(r + delta)) / two + delta * delta * u(r) / r - mu * u(r)
}

/// Residual of the continuum solution `u_n` in the unscaled difference
/// equation with `E = −1/(2n²)`; it is `O(δ²)` at fixed `r`.
pub fn continuum_residual<F: Real>(n: usize, delta: F, r: F) -> Result<F> {
    let reference = laguerre_ref(n)?;
    let u = |x: F| reference.evaluate(x);
    let two = F::from_usize(2);
    let energy = -F::one() / (two * F::from_usize(n * n));
    let second = (u(r - delta) - two * u(r) + u(r + delta)) / (two * delta * delta);
    Ok(-second - u(r) / r - energy * u(r))
}

/// `(E_n(δ) + 1/(2n²))/δ²`, which tends to `1/(8n⁴)`.
pub fn energy_shift_ratio(n: usize, delta: &Rational) -> Result<f64> {
    if !delta.is_positive() {
        return Err(Error::InvalidArgument("step must be positive".into()));
    }
    let data = eigen_data(n, delta)?;
    let shift = &data.energy
        - &QuadraticSurd::rational_in(data.continuum_energy(), data.mu.radicand());
    Ok(shift.scale(&(delta * delta).recip()).to_f64())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rat;

    #[test]
    fn eigen_data_examples() {
        let data = eigen_data(1, &int(1)).unwrap();
        assert_eq!(data.mu, QuadraticSurd::sqrt(int(2)).unwrap());
        let expect = QuadraticSurd::new(int(1), int(-1), int(2)).unwrap();
        assert_eq!(data.energy, expect);
        assert!((data.energy.to_f64() + 0.414_213_562_373_095).abs() < 1e-14);
        assert_eq!(data.q, QuadraticSurd::new(int(-1), int(1), int(2)).unwrap());
        assert!((data.beta + 1f64.asinh()).abs() < 1e-15);
        assert!(data.invariants_hold());

        let limit = eigen_data(2, &int(0)).unwrap();
        assert_eq!(limit.energy, QuadraticSurd::from_rational(rat(-1, 8)));
        assert_eq!(limit.beta, -0.5);

        // 40-digit oracle: −0.49875621120890270219...
        let small = eigen_data(1, &rat(1, 10)).unwrap();
        assert!((small.energy.to_f64() + 0.498_756_211_208_902_7).abs() < 1e-15);
        assert!((small.energy.to_f64() - (-0.5 + 0.01 / 8.0)).abs() < 1e-5);

        assert_eq!(eigen_data(0, &int(1)), Err(Error::InvalidStateIndex));
    }

    #[test]
    fn laguerre_examples() {
        assert_eq!(laguerre_ref(1).unwrap().coefficients, vec![int(1)]);
        assert_eq!(laguerre_ref(2).unwrap().coefficients, vec![int(1), rat(-1, 2)]);
        let l3 = laguerre_ref(3).unwrap();
        assert_eq!(l3.coefficient(2), rat(-2, 3));
        assert_eq!(l3.coefficient(1), int(1));
        assert_eq!(l3.coefficient(4), int(0));
        let r = 1.7_f64;
        assert!((laguerre_ref(2).unwrap().evaluate(r) - (r - r * r / 2.0) * (-r / 2.0).exp()).abs() < 1e-15);
    }

    #[test]
    fn ground_state_on_the_grid() {
        let q = QuadraticSurd::new(int(-1), int(1), int(2)).unwrap();
        for k in 1..8 {
            assert_eq!(
                wavefunction(1, &int(1), k).unwrap(),
                q.pow(k as u64).scale(&int(k as i64))
            );
        }
    }

    #[test]
    fn float_overload() {
        for r in [0.5_f64, 1.0, 3.0] {
            let v = wavefunction_at(1, &int(0), r).unwrap();
            assert!((v - r * (-r).exp()).abs() < 1e-15);
        }
        for n in 1..5 {
            assert_eq!(wavefunction_at(n, &rat(1, 2), 0.0_f64).unwrap(), 0.0);
        }
        let ef = eigenfunction(3, &rat(1, 2)).unwrap();
        for k in 1..20 {
            let exact = ef.grid_value(k).to_f64();
            let float = ef.value_at(k as f64 * 0.5);
            assert!((exact - float).abs() <= 1e-10 * exact.abs().max(1e-4), "k={k}");
        }
    }

    #[test]
    fn residual_vanishes_exactly() {
        for k in 1..=30 {
            assert!(difference_residual(2, &int(1), k).unwrap().is_zero());
        }
        let ef = eigenfunction(2, &int(1)).unwrap();
        let off = &ef.data.mu + &QuadraticSurd::from_rational(rat(1, 1000));
        assert!(!ef.residual_with(&off, 3).is_zero());
        assert!(difference_residual(2, &int(1), 0).is_err());
    }

    #[test]
    fn continuum_residual_is_second_order() {
        let coarse = continuum_residual(2, 0.1_f64, 2.0).unwrap();
        let fine = continuum_residual(2, 0.05_f64, 2.0).unwrap();
        assert!((coarse / fine - 4.0).abs() < 0.1);
    }

    #[test]
    fn float_residual_detects_wrong_eigenvalue() {
        let ef = eigenfunction(3, &int(1)).unwrap();
        let mu = ef.data.mu.to_f64();
        let u = |r: f64| ef.value_at(r);
        assert!(difference_residual_float(u, mu, 1.0, 4.0).abs() < 1e-12);
        assert!(difference_residual_float(u, mu + 1e-3, 1.0, 4.0).abs() > 1e-6);
    }
}
