//! Closed-form spectral bounds for the extremal families.

use alloc::format;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::cubic::balanced_plus_cubic;
use crate::error::SpectralError;
use crate::exact::QuadraticSurd;
use crate::families;
use crate::graph::Graph;
use crate::spectral::spectral_radius;

/// `(k − 1 + √(4m − k² + 1)) / 2` as an exact surd.
pub fn bound_fixed_size_surd(m: u64, k: u64) -> Result<QuadraticSurd, SpectralError> {
    let disc = 4 * m as i128 - (k as i128) * (k as i128) + 1;
    if disc < 0 {
        return Err(SpectralError::InvalidInput(format!("4m - k^2 + 1 < 0 for m={m}, k={k}")));
    }
    Ok(QuadraticSurd::new(
        BigRational::new(BigInt::from(k as i64 - 1), BigInt::from(2)),
        BigRational::new(BigInt::from(1), BigInt::from(2)),
        BigInt::from(disc),
    ))
}

/// `(k − 1 + √(4m − k² + 1)) / 2`, the conjectured maximum spectral radius of
/// an `F_k`-free graph with `m` edges.
pub fn bound_fixed_size(m: u64, k: u64) -> Result<f64, SpectralError> {
    let disc = 4.0 * m as f64 - (k * k) as f64 + 1.0;
    if disc < 0.0 {
        return Err(SpectralError::InvalidInput(format!("4m - k^2 + 1 < 0 for m={m}, k={k}")));
    }
    Ok((k as f64 - 1.0 + libm::sqrt(disc)) / 2.0)
}

/// `K_k ∨ I_s` with `m = C(k,2) + ks` edges, when `k` divides `m − C(k,2)`;
/// its spectral radius equals [`bound_fixed_size`].
pub fn fixed_size_extremal(m: u64, k: u64) -> Option<Graph> {
    let c = k * k.saturating_sub(1) / 2;
    if k == 0 || m < c || !(m - c).is_multiple_of(k) {
        return None;
    }
    Some(families::make_split_join(k as usize, ((m - c) / k) as usize))
}

/// `n/2 + 2/n` for even `n`, `n/2 + 3/(2n)` for odd `n`: the Rayleigh
/// quotient of a simple test vector on `K⁺`, strictly below its spectral
/// radius.
pub fn rayleigh_lower_bound(n: u64) -> Result<f64, SpectralError> {
    if n < 4 {
        return Err(SpectralError::InvalidInput(format!("need n >= 4, got {n}")));
    }
    let nf = n as f64;
    Ok(if n.is_multiple_of(2) { nf / 2.0 + 2.0 / nf } else { nf / 2.0 + 3.0 / (2.0 * nf) })
}

/// Evidence that `λ(K⁺)² > ⌊n²/4⌋ + 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareBoundCertificate {
    pub n: u64,
    pub threshold: u64,
    pub lambda_lower: f64,
    pub lambda_upper: f64,
    /// The certified lower bracket squared exceeds the threshold.
    pub numeric: bool,
    /// The family cubic is negative at `√threshold`, exactly.
    pub exact: bool,
}

impl SquareBoundCertificate {
    pub fn holds(&self) -> bool {
        self.numeric && self.exact
    }
}

pub fn check_square_bound(n: u64) -> Result<SquareBoundCertificate, SpectralError> {
    if n < 7 {
        return Err(SpectralError::InvalidInput(format!("need n >= 7, got {n}")));
    }
    let threshold = n * n / 4 + 2;
    let g = families::make_balanced_plus(n as usize)?;
    let est = spectral_radius(&g, crate::spectral::VERIFY_TOL)?;
    let ni = n as i64;
    // √threshold = √(n² + 8)/2 for even n and √(n² + 7)/2 for odd n
    let d = if n.is_multiple_of(2) { ni * ni + 8 } else { ni * ni + 7 };
    let at = QuadraticSurd::from_ints(0, 1, d, 2);
    let cubic = balanced_plus_cubic(n)?;
    Ok(SquareBoundCertificate {
        n,
        threshold,
        lambda_lower: est.lower,
        lambda_upper: est.upper,
        numeric: est.lower * est.lower > threshold as f64,
        exact: cubic.sign_at_surd(&at) == Ordering::Less,
    })
}
