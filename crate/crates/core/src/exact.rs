//! Exact arithmetic for sign tests and tie-breaking: quadratic surds,
//! rational polynomials with Sturm sequences, and integer characteristic
//! polynomials.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::graph::Graph;

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn sign_of(x: &BigRational) -> Ordering {
    x.cmp(&BigRational::zero())
}

pub fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// `a + b·√d` with rational `a`, `b` and integer `d ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticSurd {
    pub a: BigRational,
    pub b: BigRational,
    pub d: BigInt,
}

impl QuadraticSurd {
    pub fn new(a: BigRational, b: BigRational, d: BigInt) -> Self {
        assert!(!d.is_negative(), "surd radicand must be nonnegative");
        QuadraticSurd { a, b, d }
    }

    pub fn rational(a: BigRational, d: BigInt) -> Self {
        QuadraticSurd::new(a, BigRational::zero(), d)
    }

    /// `(p + q·√d) / r` for small integers.
    pub fn from_ints(p: i64, q: i64, d: i64, r: i64) -> Self {
        QuadraticSurd::new(rat(p, r), rat(q, r), BigInt::from(d))
    }

    fn same_field(&self, other: &Self) -> BigInt {
        if self.b.is_zero() {
            other.d.clone()
        } else if other.b.is_zero() || self.d == other.d {
            self.d.clone()
        } else {
            panic!("surds with different radicands");
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let d = self.same_field(other);
        QuadraticSurd::new(&self.a + &other.a, &self.b + &other.b, d)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let d = self.same_field(other);
        QuadraticSurd::new(&self.a - &other.a, &self.b - &other.b, d)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let d = self.same_field(other);
        let dr = BigRational::from_integer(d.clone());
        QuadraticSurd::new(
            &self.a * &other.a + &self.b * &other.b * dr,
            &self.a * &other.b + &self.b * &other.a,
            d,
        )
    }

    pub fn add_rational(&self, r: &BigRational) -> Self {
        QuadraticSurd::new(&self.a + r, self.b.clone(), self.d.clone())
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        QuadraticSurd::new(&self.a * r, &self.b * r, self.d.clone())
    }

    /// Exact sign of `a + b√d`.
    pub fn sign(&self) -> Ordering {
        let sa = sign_of(&self.a);
        let sb = if self.d.is_zero() { Ordering::Equal } else { sign_of(&self.b) };
        match (sa, sb) {
            (x, Ordering::Equal) => x,
            (Ordering::Equal, y) => y,
            (x, y) if x == y => x,
            (x, _) => {
                // opposite signs: compare a² with b²d
                let a2 = &self.a * &self.a;
                let b2d = &self.b * &self.b * BigRational::from_integer(self.d.clone());
                match a2.cmp(&b2d) {
                    Ordering::Greater => x,
                    Ordering::Less => x.reverse(),
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }

    pub fn cmp_surd(&self, other: &Self) -> Ordering {
        self.sub(other).sign()
    }

    pub fn cmp_rational(&self, r: &BigRational) -> Ordering {
        self.add_rational(&-r).sign()
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.a) + to_f64(&self.b) * libm::sqrt(self.d.to_f64().unwrap_or(f64::NAN))
    }
}

/// Polynomial with rational coefficients, lowest degree first, no trailing
/// zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatPoly(Vec<BigRational>);

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly(coeffs)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        RatPoly::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> Self {
        RatPoly::new(coeffs.iter().cloned().map(BigRational::from_integer).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn lead(&self) -> &BigRational {
        self.0.last().expect("nonzero polynomial")
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.0.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_surd(&self, x: &QuadraticSurd) -> QuadraticSurd {
        let zero = QuadraticSurd::rational(BigRational::zero(), x.d.clone());
        self.0.iter().rev().fold(zero, |acc, c| acc.mul(x).add_rational(c))
    }

    pub fn sign_at(&self, x: &BigRational) -> Ordering {
        sign_of(&self.eval(x))
    }

    pub fn derivative(&self) -> RatPoly {
        RatPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    fn monic(&self) -> RatPoly {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead().clone();
        RatPoly::new(self.0.iter().map(|c| c / &l).collect())
    }

    pub fn div_rem(&self, divisor: &RatPoly) -> (RatPoly, RatPoly) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dd = divisor.0.len() - 1;
        let mut rem = self.0.clone();
        if rem.len() <= dd {
            return (RatPoly(Vec::new()), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        let lead = divisor.lead();
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] / lead;
            if !c.is_zero() {
                for (j, dc) in divisor.0.iter().enumerate() {
                    rem[i + j] = &rem[i + j] - &c * dc;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (RatPoly::new(quot), RatPoly::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// The product of the distinct irreducible factors, monic.
    pub fn squarefree(&self) -> RatPoly {
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    pub fn sturm_chain(&self) -> Vec<RatPoly> {
        let mut chain = vec![self.clone(), self.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let r = chain[n - 2].div_rem(&chain[n - 1]).1;
            if r.is_zero() {
                break;
            }
            chain.push(RatPoly::new(r.0.into_iter().map(|c| -c).collect()));
        }
        chain
    }

    /// `1 + max |c_i / c_n|`: every real root lies strictly inside.
    pub fn cauchy_bound(&self) -> BigRational {
        let l = self.lead().abs();
        let m = self.0[..self.0.len() - 1]
            .iter()
            .map(|c| c.abs() / &l)
            .max()
            .unwrap_or_else(BigRational::zero);
        m + BigRational::one()
    }
}

fn variations(chain: &[RatPoly], x: &BigRational) -> usize {
    let mut last = Ordering::Equal;
    let mut count = 0;
    for p in chain {
        let s = p.sign_at(x);
        if s == Ordering::Equal {
            continue;
        }
        if last != Ordering::Equal && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Real-root isolation for one polynomial via its squarefree Sturm chain.
#[derive(Debug, Clone)]
pub struct RootIsolator {
    pub squarefree: RatPoly,
    chain: Vec<RatPoly>,
}

impl RootIsolator {
    pub fn new(p: &RatPoly) -> Self {
        let squarefree = p.squarefree();
        let chain = squarefree.sturm_chain();
        RootIsolator { squarefree, chain }
    }

    /// Number of distinct real roots in `(a, b]`.
    pub fn count(&self, a: &BigRational, b: &BigRational) -> usize {
        variations(&self.chain, a).saturating_sub(variations(&self.chain, b))
    }

    /// An interval `(lo, hi]` holding the largest real root and no other
    /// root, or `None` when there are no real roots.
    pub fn largest_root_interval(&self) -> Option<(BigRational, BigRational)> {
        if self.squarefree.degree().unwrap_or(0) == 0 {
            return None;
        }
        let b = self.squarefree.cauchy_bound();
        let (mut lo, hi) = (-b.clone(), b);
        if self.count(&lo, &hi) == 0 {
            return None;
        }
        let mut hi = hi;
        while self.count(&lo, &hi) > 1 {
            let mid = (&lo + &hi) / int(2);
            if self.count(&mid, &hi) >= 1 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Some((lo, hi))
    }

    /// Halves an isolating interval `(lo, hi]` of a single root.
    pub fn bisect(&self, lo: &mut BigRational, hi: &mut BigRational) {
        let mid = (&*lo + &*hi) / int(2);
        if self.count(&mid, hi) == 1 {
            *lo = mid;
        } else {
            *hi = mid;
        }
    }

    /// Isolating interval of the largest root narrowed below `width`.
    pub fn largest_root_bracket(&self, width: &BigRational) -> Option<(BigRational, BigRational)> {
        let (mut lo, mut hi) = self.largest_root_interval()?;
        while &(&hi - &lo) > width {
            self.bisect(&mut lo, &mut hi);
        }
        Some((lo, hi))
    }
}

/// Exact comparison of the largest real roots of `p` and `q`; `None` when
/// either has no real root.
pub fn compare_largest_roots(p: &RatPoly, q: &RatPoly) -> Option<Ordering> {
    let ip = RootIsolator::new(p);
    let iq = RootIsolator::new(q);
    let (mut plo, mut phi) = ip.largest_root_interval()?;
    let (mut qlo, mut qhi) = iq.largest_root_interval()?;
    let g = ip.squarefree.gcd(&iq.squarefree);
    let ig = (g.degree().unwrap_or(0) > 0).then(|| RootIsolator::new(&g));
    loop {
        if phi <= qlo {
            return Some(Ordering::Less);
        }
        if qhi <= plo {
            return Some(Ordering::Greater);
        }
        if let Some(ig) = &ig {
            // a root of g inside an isolating interval is that interval's root
            let lo = (&plo).min(&qlo).clone();
            let hi = (&phi).max(&qhi).clone();
            if ig.count(&plo, &phi) == 1 && ig.count(&qlo, &qhi) == 1 && ig.count(&lo, &hi) == 1 {
                return Some(Ordering::Equal);
            }
        }
        ip.bisect(&mut plo, &mut phi);
        iq.bisect(&mut qlo, &mut qhi);
    }
}

/// Whether the surd `s` is the largest real root of `p`.
pub fn largest_root_is_surd(p: &RatPoly, s: &QuadraticSurd) -> bool {
    if p.eval_surd(s).sign() != Ordering::Equal {
        return false;
    }
    let iso = RootIsolator::new(p);
    let Some((lo, hi)) = iso.largest_root_interval() else {
        return false;
    };
    s.cmp_rational(&lo) == Ordering::Greater && s.cmp_rational(&hi) != Ordering::Greater
}

/// Exact comparison of the largest real root of `p` against `s`; `None`
/// when `p` has no real root.
pub fn compare_largest_root_to_surd(p: &RatPoly, s: &QuadraticSurd) -> Option<Ordering> {
    let iso = RootIsolator::new(p);
    let (mut lo, mut hi) = iso.largest_root_interval()?;
    let is_root = iso.squarefree.eval_surd(s).sign() == Ordering::Equal;
    loop {
        if s.cmp_rational(&hi) == Ordering::Greater {
            return Some(Ordering::Less);
        }
        if s.cmp_rational(&lo) != Ordering::Greater {
            return Some(Ordering::Greater);
        }
        if is_root {
            return Some(Ordering::Equal);
        }
        iso.bisect(&mut lo, &mut hi);
    }
}

/// `det(xI - M)` of an integer matrix by Faddeev–LeVerrier.
pub fn charpoly(m: &[Vec<BigInt>]) -> RatPoly {
    let n = m.len();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut mk = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        // mk <- M * mk + c_{n-k+1} I
        let mut next = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for (l, mil) in m[i].iter().enumerate() {
                if mil.is_zero() {
                    continue;
                }
                for j in 0..n {
                    if !mk[l][j].is_zero() {
                        next[i][j] += mil * &mk[l][j];
                    }
                }
            }
            next[i][i] += &coeffs[n - k + 1];
        }
        mk = next;
        let mut tr = BigInt::zero();
        for i in 0..n {
            for l in 0..n {
                if !m[i][l].is_zero() && !mk[l][i].is_zero() {
                    tr += &m[i][l] * &mk[l][i];
                }
            }
        }
        let (q, r) = tr.div_rem(&BigInt::from(k));
        debug_assert!(r.is_zero(), "Faddeev–LeVerrier division is exact");
        coeffs[n - k] = -q;
    }
    RatPoly::from_bigints(&coeffs)
}

/// Characteristic polynomial of the adjacency matrix.
pub fn graph_charpoly(g: &Graph) -> RatPoly {
    let n = g.vertex_count();
    let m: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| BigInt::from(u8::from(g.has_edge(i, j)))).collect())
        .collect();
    charpoly(&m)
}

/// Exact comparison of two spectral radii.
pub fn compare_spectral_radii(g: &Graph, h: &Graph) -> Ordering {
    let zero = || RatPoly::from_ints(&[0, 1]);
    let pg = if g.edge_count() == 0 { zero() } else { graph_charpoly(g) };
    let ph = if h.edge_count() == 0 { zero() } else { graph_charpoly(h) };
    compare_largest_roots(&pg, &ph).expect("adjacency spectra are real")
}
