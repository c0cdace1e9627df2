//! Spectral representation: the tridiagonal lattice operator
//! `H_kk = δ/k`, `H_{k,k±1} = 1/2` (`k ≥ 1`), its eigenvectors
//! `u_k^n = P_{k−1}(x_{n−1})` and their orthonormality.

mod sturm;

pub use sturm::{
    eigen_bisection, gershgorin_bounds, inverse_iteration, kth_eigenvalue, largest_eigenvalues,
    sturm_count,
};

use num_traits::{One, Signed, Zero};

use crate::coordinate::eigen_data;
use crate::error::{Error, Result};
use crate::numerics::{int, QuadraticSurd, Rational, Real, Scalar};
use crate::pollaczek::{mass_point, pollaczek_mass_closed, pollaczek_q_factor, MassPoint};

/// The lattice operator truncated to its leading `size × size` block.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalOperator {
    pub delta: Rational,
    pub size: usize,
}

pub fn build_truncated(delta: &Rational, size: usize) -> Result<TridiagonalOperator> {
    if size == 0 {
        return Err(Error::InvalidArgument("truncation size must be >= 1".into()));
    }
    Ok(TridiagonalOperator {
        delta: delta.clone(),
        size,
    })
}

impl TridiagonalOperator {
    /// `H_kk = δ/k` for 1-based `k`.
    pub fn diag_entry(&self, k: usize) -> Rational {
        &self.delta / int(k as i64)
    }

    pub fn off_diagonal_entry(&self) -> Rational {
        Rational::new(1.into(), 2.into())
    }

    pub fn diagonal<S: Scalar>(&self) -> Vec<S> {
        (1..=self.size)
            .map(|k| S::from_rational(&self.diag_entry(k)))
            .collect()
    }

    pub fn off_diagonal_value<S: Scalar>(&self) -> S {
        S::from_rational(&self.off_diagonal_entry())
    }

    /// Dense row-major copy, for small sizes.
    pub fn to_dense<S: Scalar>(&self) -> Vec<Vec<S>> {
        let diag = self.diagonal::<S>();
        let off = self.off_diagonal_value::<S>();
        (0..self.size)
            .map(|i| {
                (0..self.size)
                    .map(|j| match i.abs_diff(j) {
                        0 => diag[i].clone(),
                        1 => off.clone(),
                        _ => S::zero(),
                    })
                    .collect()
            })
            .collect()
    }

    /// Applies the operator to a vector, with the implicit `u_0 = 0` and
    /// `u_{N+1} = 0` boundary entries.
    pub fn apply<S: Scalar>(&self, v: &[S]) -> Vec<S> {
        let diag = self.diagonal::<S>();
        let off = self.off_diagonal_value::<S>();
        (0..self.size.min(v.len()))
            .map(|i| {
                let mut acc = diag[i].clone() * v[i].clone();
                if i > 0 {
                    acc = acc + off.clone() * v[i - 1].clone();
                }
                if i + 1 < v.len() {
                    acc = acc + off.clone() * v[i + 1].clone();
                }
                acc
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    ClosedForm,
    Diagonalization,
}

/// Eigenvector entries `entries[k − 1] = u_k^n` for `k = 1..=K`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralVector<S> {
    pub n: usize,
    pub delta: Rational,
    pub entries: Vec<S>,
    pub provenance: Provenance,
}

/// `u_k^n = P_{k−1}(x_{n−1})` exactly, for `k = 1..=len`.
pub fn closed_form_vector(n: usize, delta: &Rational, len: usize) -> Result<SpectralVector<QuadraticSurd>> {
    if n == 0 {
        return Err(Error::InvalidStateIndex);
    }
    if len == 0 {
        return Err(Error::InvalidArgument("vector length must be >= 1".into()));
    }
    let mp = mass_point(n - 1, delta);
    let m = mp.m;
    let mut entries: Vec<QuadraticSurd> = (0..len.min(m + 1))
        .map(|j| pollaczek_mass_closed(j, &mp))
        .collect();
    // Past the mass index, P_j = q^{j−m} Q_j with the power accumulated.
    let mut q_pow = QuadraticSurd::rational_in(Rational::one(), &mp.radicand());
    for j in (m + 1)..len {
        q_pow = &q_pow * &mp.q;
        entries.push(&q_pow * &pollaczek_q_factor(j, &mp));
    }
    Ok(SpectralVector {
        n,
        delta: delta.clone(),
        entries,
        provenance: Provenance::ClosedForm,
    })
}

/// Float entries of the closed-form vector. The polynomial factor is exact;
/// only the geometric factor `q^{j−m}` is formed in floating point.
pub fn closed_form_vector_f64(n: usize, delta: &Rational, len: usize) -> Result<SpectralVector<f64>> {
    if n == 0 {
        return Err(Error::InvalidStateIndex);
    }
    let mp = mass_point(n - 1, delta);
    let mut entries = Vec::with_capacity(len);
    extend_float_entries(&mp, &mut entries, len);
    Ok(SpectralVector {
        n,
        delta: delta.clone(),
        entries,
        provenance: Provenance::ClosedForm,
    })
}

fn extend_float_entries(mp: &MassPoint, entries: &mut Vec<f64>, len: usize) {
    let q = mp.q.to_f64();
    for j in entries.len()..len {
        let value = if j <= mp.m {
            pollaczek_mass_closed(j, mp).to_f64()
        } else {
            pollaczek_q_factor(j, mp).to_f64() * q.powi((j - mp.m) as i32)
        };
        entries.push(value);
    }
}

/// Eigenvector of the truncated operator for an eigenvalue found by the
/// Sturm oracle, scaled to `u_1 = 1`.
pub fn diagonalization_vector(op: &TridiagonalOperator, n: usize, eigenvalue: f64) -> SpectralVector<f64> {
    SpectralVector {
        n,
        delta: op.delta.clone(),
        entries: inverse_iteration(op, eigenvalue, 4),
        provenance: Provenance::Diagonalization,
    }
}

/// Row residuals `u_{k−1}/2 + (δ/k) u_k + u_{k+1}/2 − μ u_k` for
/// `k = 1..K−1`, with `u_0 = 0`.
pub fn eigen_residual_rows<S: Scalar>(v: &SpectralVector<S>, mu: &S) -> Vec<S> {
    let half = S::from_rational(&Rational::new(1.into(), 2.into()));
    let u = &v.entries;
    (0..u.len().saturating_sub(1))
        .map(|i| {
            let k = i + 1;
            let below = if i == 0 { S::zero() } else { u[i - 1].clone() };
            let potential = S::from_rational(&(&v.delta / int(k as i64)));
            (below + u[i + 1].clone()) * half.clone() + potential * u[i].clone()
                - mu.clone() * u[i].clone()
        })
        .collect()
}

/// Largest row residual in magnitude (exactly zero for an eigenvector).
pub fn eigen_residual<S: Scalar>(v: &SpectralVector<S>, mu: &S) -> S {
    eigen_residual_rows(v, mu)
        .into_iter()
        .map(|r| r.magnitude())
        .fold(S::zero(), |best, r| if r > best { r } else { best })
}

/// `(√(1+(δ/n)²) − δ/n)^k`, the lattice form of `e^{βkδ}`.
pub fn exp_part(k: usize, n: usize, delta: &Rational) -> Result<QuadraticSurd> {
    Ok(eigen_data(n, delta)?.q.pow(k as u64))
}

/// `exp(−kδ·arsinh(δ/n)/δ)` in floating point.
pub fn exp_part_transcendental(k: usize, n: usize, delta: f64) -> f64 {
    if delta == 0.0 {
        return 1.0;
    }
    (-(k as f64) * delta * (delta / n as f64).asinh() / delta).exp()
}

/// Truncated lattice sum `Σ_k u_k^n u_k^{n2}` and the bound on what was cut.
#[derive(Debug, Clone, PartialEq)]
pub struct InnerProduct {
    pub value: f64,
    pub terms: usize,
    pub tail_bound: f64,
}

const TAIL_WINDOW: usize = 16;
const MAX_TERMS: usize = 1 << 15;

/// Float closed-form vector of one state, grown on demand.
struct Series {
    n: usize,
    q: f64,
    mp: MassPoint,
    entries: Vec<f64>,
}

impl Series {
    fn new(n: usize, delta: &Rational) -> Result<Self> {
        if !delta.is_positive() {
            let q = if delta.is_zero() { 1.0 } else { f64::INFINITY };
            return Err(Error::NonConvergentTail(q));
        }
        let q = eigen_data(n, delta)?.q.to_f64();
        if q >= 1.0 {
            return Err(Error::NonConvergentTail(q));
        }
        Ok(Series {
            n,
            q,
            mp: mass_point(n - 1, delta),
            entries: Vec::new(),
        })
    }

    fn grow(&mut self, len: usize) {
        extend_float_entries(&self.mp, &mut self.entries, len);
    }

    fn tail_bound(&self, other: &Series, len: usize) -> f64 {
        product_tail_bound(
            &self.entries[..len],
            self.n,
            self.q,
            &other.entries[..len],
            other.n,
            other.q,
        )
    }

    fn dot(&self, other: &Series, len: usize) -> f64 {
        self.entries[..len].iter().zip(&other.entries[..len]).map(|(x, y)| x * y).sum()
    }
}

/// Smallest doubling of the cut-off from 64 at which every listed product
/// has a tail bound below `tail_tol`; all series are grown to that length.
fn common_cutoff(series: &mut [Series], pairs: &[(usize, usize)], tail_tol: f64) -> Result<usize> {
    let mut len = 64;
    loop {
        series.iter_mut().for_each(|s| s.grow(len));
        let worst = pairs
            .iter()
            .map(|&(i, j)| series[i].tail_bound(&series[j], len))
            .fold(0.0, f64::max);
        if worst < tail_tol {
            return Ok(len);
        }
        if len >= MAX_TERMS {
            let q = series.iter().map(|s| s.q).fold(0.0, f64::max);
            return Err(Error::NonConvergentTail(q));
        }
        len *= 2;
    }
}

/// `Σ_{k≥1} u_k^n u_k^{n2}` with the cut-off chosen adaptively.
///
/// Each vector is bounded by `|u_k| ≤ c·k^n·q_n^k`, with `c` taken from the
/// largest ratio over the last computed entries. The cut-off `K` doubles
/// until the bound on the discarded products falls below `tail_tol`.
pub fn inner_product(n: usize, n2: usize, delta: &Rational, tail_tol: f64) -> Result<InnerProduct> {
    let mut series = vec![Series::new(n, delta)?, Series::new(n2, delta)?];
    let len = common_cutoff(&mut series, &[(0, 1)], tail_tol)?;
    Ok(InnerProduct {
        value: series[0].dot(&series[1], len),
        terms: len,
        tail_bound: series[0].tail_bound(&series[1], len),
    })
}

fn envelope_constant(entries: &[f64], degree: usize, q: f64) -> f64 {
    let len = entries.len();
    (len.saturating_sub(TAIL_WINDOW)..len)
        .map(|i| {
            let k = (i + 1) as f64;
            entries[i].abs() / (k.powi(degree as i32) * q.powi(i as i32 + 1))
        })
        .fold(0.0, f64::max)
}

/// Bound on `Σ_{k>K} c_a c_b k^{na+nb} (q_a q_b)^k` via the geometric ratio
/// of consecutive terms at `k = K`.
fn product_tail_bound(a: &[f64], na: usize, qa: f64, b: &[f64], nb: usize, qb: f64) -> f64 {
    let len = a.len();
    let c = envelope_constant(a, na, qa) * envelope_constant(b, nb, qb);
    let k = len as f64;
    let power = (na + nb) as i32;
    let rate = qa * qb;
    let ratio = (1.0 + 1.0 / k).powi(power) * rate;
    if ratio >= 1.0 {
        return f64::INFINITY;
    }
    c * k.powi(power) * rate.powf(k) * ratio / (1.0 - ratio)
}

/// Gram matrix of the normalised closed-form vectors for the given states.
/// All vectors share one cut-off, chosen so every pairwise tail bound is
/// below `tail_tol`.
pub fn gram_matrix(states: &[usize], delta: &Rational, tail_tol: f64) -> Result<Vec<Vec<f64>>> {
    let mut series: Vec<Series> = states
        .iter()
        .map(|&n| Series::new(n, delta))
        .collect::<Result<_>>()?;
    let pairs: Vec<(usize, usize)> = (0..states.len())
        .flat_map(|i| (i..states.len()).map(move |j| (i, j)))
        .collect();
    let len = common_cutoff(&mut series, &pairs, tail_tol)?;
    let norms: Vec<f64> = series.iter().map(|s| s.dot(s, len).sqrt()).collect();
    Ok(series
        .iter()
        .enumerate()
        .map(|(i, a)| {
            series
                .iter()
                .enumerate()
                .map(|(j, b)| a.dot(b, len) / (norms[i] * norms[j]))
                .collect()
        })
        .collect())
}

/// The single ratio `a_k / b_k` when the two sequences are exactly
/// proportional (entries where both vanish are skipped).
pub fn proportionality_ratio(a: &[QuadraticSurd], b: &[QuadraticSurd]) -> Option<QuadraticSurd> {
    let mut ratio: Option<QuadraticSurd> = None;
    for (x, y) in a.iter().zip(b) {
        match (x.is_zero(), y.is_zero()) {
            (true, true) => continue,
            (false, false) => {}
            _ => return None,
        }
        let r = x.checked_div(y).ok()?;
        match &ratio {
            Some(prev) if *prev != r => return None,
            Some(_) => {}
            None => ratio = Some(r),
        }
    }
    ratio
}

/// Normalised copy of a float vector, `Σ u_k² = 1`.
pub fn normalized(entries: &[f64]) -> Vec<f64> {
    let norm = entries.iter().map(|x| x * x).sum::<f64>().sqrt();
    entries.iter().map(|x| x / norm).collect()
}

/// Eigenvalues above the continuum edge `1` among the `count` largest,
/// in descending order.
pub fn point_spectrum<F: Real>(
    op: &TridiagonalOperator,
    count: usize,
    tol: F,
) -> Result<Vec<F>> {
    let top = largest_eigenvalues(op, count, tol)?;
    Ok(top.into_iter().filter(|&e| e > F::one()).collect())
}

impl SpectralVector<QuadraticSurd> {
    pub fn to_f64(&self) -> SpectralVector<f64> {
        SpectralVector {
            n: self.n,
            delta: self.delta.clone(),
            entries: self.entries.iter().map(QuadraticSurd::to_f64).collect(),
            provenance: self.provenance,
        }
    }
}

impl<S: Scalar> SpectralVector<S> {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `u_k`, 1-based; `u_0 = 0`.
    pub fn entry(&self, k: usize) -> Option<S> {
        if k == 0 {
            return Some(S::zero());
        }
        self.entries.get(k - 1).cloned()
    }
}
