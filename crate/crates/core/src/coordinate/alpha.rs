//! Coefficient tables `α^{(n)}_{n−k,m}` of the discrete eigenfunctions.
//!
//! For one concrete `n` the polynomial part of the `n`-th eigenfunction is
//! `Σ_j ℓ_j^{(n)} α^{(n,δ)}_j r^j` with
//! `α^{(n,δ)}_{n−k} = μ_n^{k mod 2} Σ_{m ≤ ⌊k/2⌋} α^{(n)}_{n−k,m} δ^{2m}`.
//! The inner rationals are filled level by level in `k` with separate
//! recursions for even and odd `k`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numerics::{binomial, factorial, int, rational_pow, QuadraticSurd, Rational};

/// `C_{n,k,l} = (−n/2)^k n! / (k! l! (n−k−l)!) · Π_{m=1}^k (n−m)`.
pub fn c_coeff(n: usize, k: usize, l: usize) -> Result<Rational> {
    if k + l > n {
        return Err(Error::NegativeFactorialArgument { n, k, l });
    }
    let falling: BigInt = (1..=k).map(|m| BigInt::from(n as i64 - m as i64)).product();
    let multinomial = Rational::new(
        factorial(n) * falling,
        factorial(k) * factorial(l) * factorial(n - k - l),
    );
    Ok(rational_pow(&Rational::new((-(n as i64)).into(), 2.into()), k) * multinomial)
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlphaTable {
    pub n: usize,
    pub kmax: usize,
    /// `inner[k][m] = α^{(n)}_{n−k,m}` for `m ≤ ⌊k/2⌋`.
    inner: Vec<Vec<Rational>>,
}

impl AlphaTable {
    /// `α^{(n)}_{n−k,m}`; zero for impossible `m`, `None` past `kmax`.
    pub fn inner(&self, k: usize, m: usize) -> Option<Rational> {
        let row = self.inner.get(k)?;
        Some(row.get(m).cloned().unwrap_or_else(Rational::zero))
    }

    pub fn level(&self, k: usize) -> Option<&[Rational]> {
        self.inner.get(k).map(Vec::as_slice)
    }

    /// `α^{(n,δ)}_{n−k}` as an element of ℚ(√(1 + δ²/n²)).
    pub fn assemble(&self, k: usize, delta: &Rational) -> Result<QuadraticSurd> {
        let row = self.inner.get(k).ok_or(Error::LevelOutOfRange {
            n: self.n,
            kmax: k,
        })?;
        let d = Rational::one() + delta * delta / int((self.n * self.n) as i64);
        let delta_sq = delta * delta;
        let mut pow = Rational::one();
        let mut sum = Rational::zero();
        for coeff in row {
            sum += coeff * &pow;
            pow *= &delta_sq;
        }
        if k.is_multiple_of(2) {
            Ok(QuadraticSurd::rational_in(sum, &d))
        } else {
            QuadraticSurd::new(Rational::zero(), sum, d)
        }
    }

    /// `α^{(n)}_{n−k,m} · n^{2m} · (n−k+2m−1)! / ((n−k)! · C(⌊k/2⌋, m))`.
    ///
    /// Evaluated across several `n` this traces a polynomial of degree `2m−1`
    /// in `n` with unit leading coefficient.
    pub fn normalized_poly_value(&self, k: usize, m: usize) -> Option<Rational> {
        if m == 0 || m > k / 2 || k >= self.n {
            return None;
        }
        let n = self.n;
        let alpha = self.inner(k, m)?;
        let scale = Rational::new(
            num_traits::pow(BigInt::from(n), 2 * m) * factorial(n - k + 2 * m - 1),
            factorial(n - k) * binomial(k / 2, m),
        );
        Some(alpha * scale)
    }
}

pub fn alpha_assemble(table: &AlphaTable, k: usize, delta: &Rational) -> Result<QuadraticSurd> {
    table.assemble(k, delta)
}

/// Fills `α^{(n)}_{n−k,m}` for `0 ≤ k ≤ kmax` with exact rationals.
pub fn alpha_inner(n: usize, kmax: usize) -> Result<AlphaTable> {
    if n == 0 {
        return Err(Error::InvalidStateIndex);
    }
    if kmax + 1 > n {
        return Err(Error::LevelOutOfRange { n, kmax });
    }
    let mut inner: Vec<Vec<Rational>> = Vec::with_capacity(kmax + 1);
    let n_rat = int(n as i64);
    let n_sq = &n_rat * &n_rat;
    for k in 0..=kmax {
        let half = k / 2;
        let mut row = vec![Rational::one()];
        for m in 1..=half {
            let divisor = c_coeff(n, k, 1)? / &n_rat - c_coeff(n, k, 0)?;
            if divisor.is_zero() {
                return Err(Error::ZeroDivisor { n, k, m });
            }
            let numerator = if k % 2 == 0 {
                even_level_numerator(&inner, n, k, m, &n_rat, &n_sq)?
            } else {
                odd_level_numerator(&inner, n, k, m, &n_rat)?
            };
            row.push(numerator / divisor);
        }
        inner.push(row);
    }
    Ok(AlphaTable { n, kmax, inner })
}

/// Previously computed `α^{(n)}_{n−j,m}`, or `None` when the index is
/// impossible (those terms vanish).
fn lookup(inner: &[Vec<Rational>], j: i64, m: i64) -> Option<&Rational> {
    if j < 0 || m < 0 {
        return None;
    }
    inner.get(j as usize)?.get(m as usize)
}

/// `C_{n,k,l} · α^{(n)}_{n−j,mm}`, zero when the `α` index is impossible.
fn term(inner: &[Vec<Rational>], n: usize, ck: i64, cl: i64, j: i64, mm: i64) -> Result<Rational> {
    match lookup(inner, j, mm) {
        Some(alpha) if ck >= 0 && cl >= 0 => Ok(c_coeff(n, ck as usize, cl as usize)? * alpha),
        _ => Ok(Rational::zero()),
    }
}

fn even_level_numerator(
    inner: &[Vec<Rational>],
    n: usize,
    k: usize,
    m: usize,
    n_rat: &Rational,
    n_sq: &Rational,
) -> Result<Rational> {
    let (k, m, h) = (k as i64, m as i64, (k / 2) as i64);
    let mut acc = Rational::zero();
    for l in (h - m)..h {
        acc -= term(inner, n, 2 * l, k + 1 - 2 * l, 2 * l, l + m - h)? / n_rat;
    }
    for l in (h - m - 1)..h {
        acc += term(inner, n, 2 * l + 1, k - 2 * l, 2 * l + 1, l + m - h + 1)?;
    }
    for l in (h - m)..h {
        acc += term(inner, n, 2 * l + 1, k - 2 * l, 2 * l + 1, l + m - h)? / n_sq;
    }
    Ok(acc)
}

fn odd_level_numerator(
    inner: &[Vec<Rational>],
    n: usize,
    k: usize,
    m: usize,
    n_rat: &Rational,
) -> Result<Rational> {
    let (k, m, h) = (k as i64, m as i64, (k / 2) as i64);
    let mut acc = Rational::zero();
    for l in (h - m)..h {
        acc -= term(inner, n, 2 * l + 1, k - 2 * l, 2 * l + 1, l + m - h)? / n_rat;
    }
    for l in (h - m)..=h {
        acc += term(inner, n, 2 * l, k + 1 - 2 * l, 2 * l, l + m - h)?;
    }
    Ok(acc)
}

/// `α^{(n,δ)}_j` for `j = 1..=n` (index `j − 1`), with `α^{(n,δ)}_n = 1`.
pub fn alpha_vector(n: usize, delta: &Rational) -> Result<Vec<QuadraticSurd>> {
    let table = alpha_inner(n, n.checked_sub(1).ok_or(Error::InvalidStateIndex)?)?;
    (1..=n).map(|j| table.assemble(n - j, delta)).collect()
}
