//! Monic cubics whose largest roots are spectral radii of the extremal
//! families, with a certified root finder and exact sign tests.

use core::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};

use crate::error::SpectralError;
use crate::exact::{QuadraticSurd, RatPoly};

/// Which family a cubic belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CubicKind {
    /// `K_{n/2,n/2}^+`, even `n`.
    BalancedPlusEven { n: u64 },
    /// `K_{(n-1)/2,(n+1)/2}^+`, odd `n`.
    BalancedPlusOdd { n: u64 },
    /// `K_{a,b}^+` with the extra edge in the size-`a` part.
    BipartitePlus { a: u64, b: u64 },
    /// `K_1 ∨ (K_3 ∪ I_{m-6})`, indexed by edge count.
    ApexTriangleBySize { m: u64 },
    /// `K_1 ∨ (K_3 ∪ I_{n-4})`, indexed by order.
    ApexTriangleByOrder { n: u64 },
    Custom,
}

/// `x³ + c2·x² + c1·x + c0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CubicPoly {
    pub c2: Rational64,
    pub c1: Rational64,
    pub c0: Rational64,
    pub kind: CubicKind,
}

/// A certified enclosure `lower ≤ root ≤ upper`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootBracket {
    pub lower: f64,
    pub upper: f64,
}

impl RootBracket {
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }
}

fn r(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

fn to_f(x: Rational64) -> f64 {
    // denominators here are 1 or 4, so this is exact for moderate numerators
    *x.numer() as f64 / *x.denom() as f64
}

fn big(x: Rational64) -> BigRational {
    BigRational::new(BigInt::from(*x.numer()), BigInt::from(*x.denom()))
}

impl CubicPoly {
    pub fn new(c2: Rational64, c1: Rational64, c0: Rational64) -> Self {
        CubicPoly {
            c2,
            c1,
            c0,
            kind: CubicKind::Custom,
        }
    }

    pub fn from_ints(c2: i64, c1: i64, c0: i64) -> Self {
        CubicPoly::new(r(c2, 1), r(c1, 1), r(c0, 1))
    }

    fn coeffs_f64(&self) -> [f64; 3] {
        [to_f(self.c2), to_f(self.c1), to_f(self.c0)]
    }

    pub fn eval(&self, x: f64) -> f64 {
        let [c2, c1, c0] = self.coeffs_f64();
        ((x + c2) * x + c1) * x + c0
    }

    /// Rounding-error bound for [`CubicPoly::eval`] at `x`.
    fn eval_error(&self, x: f64) -> f64 {
        let [c2, c1, c0] = self.coeffs_f64();
        let ax = x.abs();
        7.0 * f64::EPSILON * (((ax + c2.abs()) * ax + c1.abs()) * ax + c0.abs())
    }

    /// Sign of `p(x)` when it is certain despite rounding.
    fn certain_sign(&self, x: f64) -> Option<Ordering> {
        let v = self.eval(x);
        let e = self.eval_error(x);
        if v > e {
            Some(Ordering::Greater)
        } else if v < -e {
            Some(Ordering::Less)
        } else {
            None
        }
    }

    pub fn to_ratpoly(&self) -> RatPoly {
        RatPoly::new([self.c0, self.c1, self.c2, r(1, 1)].into_iter().map(big).collect())
    }

    pub fn eval_exact(&self, x: &BigRational) -> BigRational {
        self.to_ratpoly().eval(x)
    }

    /// Exact sign of the cubic at a quadratic surd.
    pub fn sign_at_surd(&self, s: &QuadraticSurd) -> Ordering {
        self.to_ratpoly().eval_surd(s).sign()
    }

    /// Certified bracket around the largest real root, of width at most
    /// `1e-12 · max(1, |root|)` unless rounding noise stops refinement first.
    pub fn largest_root(&self) -> Result<RootBracket, SpectralError> {
        let [c2, c1, c0] = self.coeffs_f64();
        let bound = 1.0 + c2.abs().max(c1.abs()).max(c0.abs());
        // critical points of p: 3x² + 2c2·x + c1
        let disc = c2 * c2 - 3.0 * c1;
        let (mut lo, mut hi) = if disc <= 0.0 {
            (-bound, bound)
        } else {
            let sq = libm::sqrt(disc);
            let x_plus = (-c2 + sq) / 3.0;
            let x_minus = (-c2 - sq) / 3.0;
            match self.certain_sign(x_plus) {
                Some(Ordering::Less) => (x_plus, bound),
                Some(Ordering::Greater) => (-bound, x_minus),
                _ => return Err(SpectralError::DegenerateCubic),
            }
        };
        if self.certain_sign(lo) != Some(Ordering::Less) || self.certain_sign(hi) != Some(Ordering::Greater) {
            return Err(SpectralError::DegenerateCubic);
        }
        for _ in 0..400 {
            let scale = lo.abs().max(hi.abs()).max(1.0);
            if hi - lo <= 1e-12 * scale {
                break;
            }
            let mid = 0.5 * (lo + hi);
            // Newton from the midpoint, bisection when it leaves the bracket
            let d = (3.0 * mid + 2.0 * c2) * mid + c1;
            let newton = mid - self.eval(mid) / d;
            let mut advanced = false;
            for x in [newton, mid] {
                if !(x > lo && x < hi) {
                    continue;
                }
                match self.certain_sign(x) {
                    Some(Ordering::Less) => {
                        lo = x;
                        advanced = true;
                    }
                    Some(Ordering::Greater) => {
                        hi = x;
                        advanced = true;
                    }
                    _ => {}
                }
                if advanced {
                    break;
                }
            }
            if !advanced {
                // both probes inside the rounding noise around the root;
                // step inwards from each end by the noise width
                let e = self.eval_error(mid) / d.abs().max(f64::MIN_POSITIVE);
                let (a, b) = (mid - 2.0 * e, mid + 2.0 * e);
                let mut moved = false;
                if a > lo && self.certain_sign(a) == Some(Ordering::Less) {
                    lo = a;
                    moved = true;
                }
                if b < hi && self.certain_sign(b) == Some(Ordering::Greater) {
                    hi = b;
                    moved = true;
                }
                if !moved {
                    break;
                }
            }
        }
        Ok(RootBracket { lower: lo, upper: hi })
    }
}

/// The cubic for `K_{⌊n/2⌋,⌈n/2⌉}^+`: for even `n`,
/// `x³ − x² − (n²/4)x + n²/4 − n`; for odd `n`,
/// `x³ − x² + ((1−n²)/4)x + n²/4 − n − 5/4`.
pub fn balanced_plus_cubic(n: u64) -> Result<CubicPoly, SpectralError> {
    if n < 4 {
        return Err(SpectralError::InvalidInput(alloc::format!("balanced cubic needs n >= 4, got {n}")));
    }
    let ni = n as i64;
    let n2 = ni * ni;
    let (c1, c0, kind) = if n.is_multiple_of(2) {
        (r(-n2, 4), r(n2, 4) - ni, CubicKind::BalancedPlusEven { n })
    } else {
        (r(1 - n2, 4), r(n2, 4) - ni - r(5, 4), CubicKind::BalancedPlusOdd { n })
    };
    Ok(CubicPoly {
        c2: r(-1, 1),
        c1,
        c0,
        kind,
    })
}

/// `x³ − x² − abx + ab − 2b`, the cubic for `K_{a,b}^+`.
pub fn bipartite_plus_cubic(a: u64, b: u64) -> Result<CubicPoly, SpectralError> {
    if a < 2 || b < 1 {
        return Err(SpectralError::InvalidInput(alloc::format!("need a >= 2 and b >= 1, got a={a}, b={b}")));
    }
    let (ai, bi) = (a as i64, b as i64);
    Ok(CubicPoly {
        c2: r(-1, 1),
        c1: r(-ai * bi, 1),
        c0: r(ai * bi - 2 * bi, 1),
        kind: CubicKind::BipartitePlus { a, b },
    })
}

/// `x³ − 2x² + (3 − m)x + 2m − 12`, the cubic for `K_1 ∨ (K_3 ∪ I_{m−6})`.
pub fn apex_triangle_size_cubic(m: u64) -> Result<CubicPoly, SpectralError> {
    if m < 8 {
        return Err(SpectralError::InvalidInput(alloc::format!("size cubic needs m >= 8, got {m}")));
    }
    let mi = m as i64;
    Ok(CubicPoly {
        c2: r(-2, 1),
        c1: r(3 - mi, 1),
        c0: r(2 * mi - 12, 1),
        kind: CubicKind::ApexTriangleBySize { m },
    })
}

/// `x³ − 2x² + (1 − n)x + 2n − 8`, the cubic for `K_1 ∨ (K_3 ∪ I_{n−4})`.
pub fn apex_triangle_order_cubic(n: u64) -> Result<CubicPoly, SpectralError> {
    if n < 7 {
        return Err(SpectralError::InvalidInput(alloc::format!("order cubic needs n >= 7, got {n}")));
    }
    let ni = n as i64;
    Ok(CubicPoly {
        c2: r(-2, 1),
        c1: r(1 - ni, 1),
        c0: r(2 * ni - 8, 1),
        kind: CubicKind::ApexTriangleByOrder { n },
    })
}

/// Exact test of `h((1 + √(4m − 3))/2) > 0` for the size cubic `h`, which
/// places its largest root below `(1 + √(4m − 3))/2`.
pub fn size_cubic_positive_at_bound(m: u64) -> Result<bool, SpectralError> {
    let h = apex_triangle_size_cubic(m)?;
    let s = QuadraticSurd::from_ints(1, 1, 4 * m as i64 - 3, 2);
    Ok(h.sign_at_surd(&s) == Ordering::Greater)
}

/// Exact test of `p(n/2) > 0` for the order cubic `p`.
pub fn order_cubic_positive_at_half(n: u64) -> Result<bool, SpectralError> {
    let p = apex_triangle_order_cubic(n)?;
    let half = BigRational::new(BigInt::from(n), BigInt::from(2));
    Ok(p.eval_exact(&half) > BigRational::from_integer(BigInt::from(0)))
}
