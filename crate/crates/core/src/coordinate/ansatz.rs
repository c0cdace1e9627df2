//! Linear constraints on the ansatz `u(r) = e^{βr} Σ_{k=1}^n a_k r^k`.
//!
//! Substituting the ansatz into
//! `u(r−δ)/2 + u(r+δ)/2 + δ² u(r)/r = μ u(r)` and expanding `(r ± δ)^k`
//! binomially, the coefficient of each `r^j` (`j = 0..=n`) must vanish:
//!
//! `Σ_{k≥j} a_k C(k,j) δ^{k−j} (q + (−1)^{k−j} q⁻¹)/2 + δ² a_{j+1} − μ a_j = 0`
//!
//! with `q = e^{βδ}` and `a_0 = a_{n+1} = 0`. The system is solved exactly by
//! Gaussian elimination over ℚ(√(1 + δ²/n²)); its null space is one-dimensional.

use num_traits::{One, Zero};

use super::{eigen_data, laguerre_ref};
use crate::error::{Error, Result};
use crate::numerics::{binomial, rational_pow, QuadraticSurd, Rational};

/// Coefficient row for the power `r^power`; `coeffs[k − 1]` multiplies `a_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearConstraint {
    pub power: usize,
    pub coeffs: Vec<QuadraticSurd>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintSystem {
    pub n: usize,
    pub delta: Rational,
    pub mu: QuadraticSurd,
    pub rows: Vec<LinearConstraint>,
}

pub fn ansatz_constraint_system(n: usize, delta: &Rational) -> Result<ConstraintSystem> {
    if delta.is_zero() {
        return Err(Error::InvalidArgument(
            "the ansatz constraints need a nonzero step".into(),
        ));
    }
    let data = eigen_data(n, delta)?;
    let d = data.mu.radicand().clone();
    let q = data.q.clone();
    let q_inv = q.checked_inv()?;
    let half = Rational::new(1.into(), 2.into());
    let even = (&q + &q_inv).scale(&half);
    let odd = (&q - &q_inv).scale(&half);
    let delta_sq = QuadraticSurd::rational_in(delta * delta, &d);

    let rows = (0..=n)
        .map(|j| {
            let coeffs = (1..=n)
                .map(|k| {
                    let mut c = QuadraticSurd::rational_in(Rational::zero(), &d);
                    if k >= j {
                        let shift = rational_pow(delta, k - j)
                            * Rational::from_integer(binomial(k, j));
                        let parity = if (k - j) % 2 == 0 { &even } else { &odd };
                        c = c + parity.scale(&shift);
                    }
                    if k == j + 1 {
                        c = c + &delta_sq;
                    }
                    if k == j {
                        c = c - &data.mu;
                    }
                    c
                })
                .collect();
            LinearConstraint { power: j, coeffs }
        })
        .collect();

    Ok(ConstraintSystem {
        n,
        delta: delta.clone(),
        mu: data.mu,
        rows,
    })
}

impl ConstraintSystem {
    /// Null vector `(a_1, …, a_n)` of the system, scaled so `a_n = 1`.
    pub fn null_vector(&self) -> Result<Vec<QuadraticSurd>> {
        let cols = self.n;
        let mut matrix: Vec<Vec<QuadraticSurd>> =
            self.rows.iter().map(|row| row.coeffs.clone()).collect();
        let mut pivots: Vec<usize> = Vec::new();
        let mut rank = 0;
        for col in 0..cols {
            let Some(found) = (rank..matrix.len()).find(|&r| !matrix[r][col].is_zero()) else {
                continue;
            };
            matrix.swap(rank, found);
            let inv = matrix[rank][col].checked_inv()?;
            for entry in matrix[rank].iter_mut() {
                *entry = &*entry * &inv;
            }
            for r in 0..matrix.len() {
                if r == rank || matrix[r][col].is_zero() {
                    continue;
                }
                let factor = matrix[r][col].clone();
                let pivot_row = matrix[rank].clone();
                for (entry, p) in matrix[r].iter_mut().zip(&pivot_row).skip(col) {
                    *entry = &*entry - &(&factor * p);
                }
            }
            pivots.push(col);
            rank += 1;
        }
        let nullity = cols - rank;
        if nullity != 1 {
            return Err(Error::DegenerateSystem { nullity });
        }
        let free = (0..cols).find(|c| !pivots.contains(c)).expect("nullity is one");
        let mut solution = vec![QuadraticSurd::zero(); cols];
        solution[free] = QuadraticSurd::one();
        for (row, &col) in pivots.iter().enumerate() {
            solution[col] = -&matrix[row][free];
        }
        let last = solution[cols - 1].clone();
        solution.iter().map(|a| a.checked_div(&last)).collect()
    }

    /// `α^{(n,δ)}_k = a_k / ℓ_k^{(n)}`, normalised to `α^{(n,δ)}_n = 1`.
    pub fn solve_alpha(&self) -> Result<Vec<QuadraticSurd>> {
        let a = self.null_vector()?;
        let ell = laguerre_ref(self.n)?;
        let mut alpha: Vec<QuadraticSurd> = a
            .iter()
            .enumerate()
            .map(|(i, ak)| ak.checked_div(&QuadraticSurd::from_rational(ell.coefficient(i + 1))))
            .collect::<Result<_>>()?;
        let last = alpha[self.n - 1].clone();
        for value in alpha.iter_mut() {
            *value = value.checked_div(&last)?;
        }
        Ok(alpha)
    }

    /// Largest row residual for a candidate `a` vector (zero for a solution).
    pub fn residual(&self, a: &[QuadraticSurd]) -> QuadraticSurd {
        self.rows
            .iter()
            .map(|row| {
                row.coeffs
                    .iter()
                    .zip(a)
                    .fold(QuadraticSurd::zero(), |acc, (c, x)| acc + c * x)
                    .abs()
            })
            .fold(QuadraticSurd::zero(), |best, r| if r > best { r } else { best })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coordinate::alpha_vector;
    use crate::numerics::{int, rat};

    #[test]
    fn single_coefficient_case_is_vacuous() {
        let system = ansatz_constraint_system(1, &int(1)).unwrap();
        assert_eq!(system.rows.len(), 2);
        assert!(system.rows.iter().all(|r| r.coeffs.iter().all(|c| c.is_zero())));
        assert_eq!(system.solve_alpha().unwrap(), vec![QuadraticSurd::one()]);
    }

    #[test]
    fn second_state_ratio_is_mu() {
        let system = ansatz_constraint_system(2, &int(1)).unwrap();
        let alpha = system.solve_alpha().unwrap();
        assert_eq!(alpha[0], QuadraticSurd::sqrt(rat(5, 4)).unwrap());
        assert_eq!(alpha[1], QuadraticSurd::one());
    }

    #[test]
    fn fourth_state_matches_recursion() {
        let delta = rat(1, 2);
        let system = ansatz_constraint_system(4, &delta).unwrap();
        assert_eq!(system.solve_alpha().unwrap(), alpha_vector(4, &delta).unwrap());
    }

    #[test]
    fn solution_annihilates_every_row() {
        let system = ansatz_constraint_system(5, &rat(3, 2)).unwrap();
        let a = system.null_vector().unwrap();
        assert!(system.residual(&a).is_zero());
        let mut wrong = a.clone();
        wrong[0] = &wrong[0] + &QuadraticSurd::one();
        assert!(!system.residual(&wrong).is_zero());
    }

    #[test]
    fn zero_step_is_rejected() {
        assert!(ansatz_constraint_system(3, &int(0)).is_err());
    }
}
