//! Exact univariate and bivariate rational functions, their power-series
//! coefficients, and the closed-form generating series of the twist orbits.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::quadfield::QuadNum;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("denominator is zero")]
    ZeroDenominator,
    #[error("constant term vanishes; the series is not invertible")]
    ZeroConstantTerm,
    #[error("eigenvalue r does not satisfy r + 1/r = N")]
    EigenvalueMismatch,
}

/// Exact field elements usable as polynomial coefficients.
pub trait Coefficient:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Exact sign of the element as a real number.
    fn exact_sign(&self) -> Ordering;
}

impl Coefficient for BigRational {
    fn exact_sign(&self) -> Ordering {
        self.cmp(&BigRational::zero())
    }
}

impl Coefficient for QuadNum {
    fn exact_sign(&self) -> Ordering {
        self.sign()
    }
}

pub fn rat(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Dense polynomial in `t`, lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Coefficient> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Poly::new(vec![c])
    }

    pub fn one() -> Self {
        Poly::constant(T::one())
    }

    pub fn monomial(c: T, k: usize) -> Self {
        let mut v = vec![T::zero(); k];
        v.push(c);
        Poly::new(v)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn map<U: Coefficient>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    /// `p(c t)`.
    pub fn scale_variable(&self, c: &T) -> Self {
        let mut pow = T::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for x in &self.coeffs {
            out.push(x.clone() * pow.clone());
            pow = pow * c.clone();
        }
        Poly::new(out)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }

    pub fn neg(&self) -> Self {
        self.map(|x| -x.clone())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, o: &Self) -> (Self, Self) {
        let dl = o.degree().expect("polynomial division by zero");
        let lead = o.coeffs[dl].clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![T::zero(); self.coeffs.len().saturating_sub(dl)];
        while rem.len() > dl && !rem.is_empty() {
            let k = rem.len() - 1 - dl;
            let c = rem[rem.len() - 1].clone() / lead.clone();
            for (j, b) in o.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - c.clone() * b.clone();
            }
            quot[k] = c;
            rem.pop();
            while rem.last().is_some_and(|x| x.is_zero()) {
                rem.pop();
            }
        }
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => {
                let inv = T::one() / l.clone();
                self.scale(&inv)
            }
            None => Poly::zero(),
        }
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }
}

/// Reduced quotient of polynomials in `t` whose denominator has constant
/// term one.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalFunction<T> {
    num: Poly<T>,
    den: Poly<T>,
}

impl<T: Coefficient> RationalFunction<T> {
    pub fn new(num: Poly<T>, den: Poly<T>) -> Result<Self, SeriesError> {
        if den.is_zero() {
            return Err(SeriesError::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(RationalFunction {
                num,
                den: Poly::one(),
            });
        }
        let g = num.gcd(&den);
        let num = num.div_rem(&g).0;
        let den = den.div_rem(&g).0;
        let c0 = den.coeff(0);
        if c0.is_zero() {
            return Err(SeriesError::ZeroConstantTerm);
        }
        let inv = T::one() / c0;
        Ok(RationalFunction {
            num: num.scale(&inv),
            den: den.scale(&inv),
        })
    }

    pub fn from_poly(p: Poly<T>) -> Self {
        RationalFunction {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn numerator(&self) -> &Poly<T> {
        &self.num
    }

    pub fn denominator(&self) -> &Poly<T> {
        &self.den
    }

    pub fn constant_term(&self) -> T {
        self.num.coeff(0)
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
        .expect("product of unit-constant denominators")
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(self.num.mul(&o.num), self.den.mul(&o.den))
            .expect("product of unit-constant denominators")
    }

    pub fn inv(&self) -> Result<Self, SeriesError> {
        if self.num.is_zero() {
            return Err(SeriesError::ZeroDenominator);
        }
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &Self) -> Result<Self, SeriesError> {
        Ok(self.mul(&o.inv()?))
    }

    /// `f(c t)`.
    pub fn scale_variable(&self, c: &T) -> Self {
        Self::new(self.num.scale_variable(c), self.den.scale_variable(c))
            .expect("scaling keeps the constant term")
    }

    pub fn map<U: Coefficient>(&self, f: impl Fn(&T) -> U) -> RationalFunction<U> {
        RationalFunction::new(self.num.map(&f), self.den.map(&f))
            .expect("coefficient embedding preserves the constant term")
    }

    /// Taylor coefficients of degree `0..=n`, from the recurrence given by the
    /// denominator.
    pub fn coefficients(&self, n: usize) -> Vec<T> {
        let mut out: Vec<T> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut c = self.num.coeff(k);
            for (j, dj) in self.den.coeffs().iter().enumerate().skip(1) {
                if j > k {
                    break;
                }
                c = c - dj.clone() * out[k - j].clone();
            }
            out.push(c);
        }
        out
    }
}

pub fn coefficients<T: Coefficient>(f: &RationalFunction<T>, n: usize) -> Vec<T> {
    f.coefficients(n)
}

/// `(1 + (M - N) t + t^2) / (1 - N t + t^2)`, i.e. `1 + M t / (1 - N t + t^2)`.
pub fn hilbert_series(n: &BigInt, m: &BigInt) -> RationalFunction<BigRational> {
    let num = Poly::new(vec![rat(1), rat(m - n), rat(1)]);
    let den = Poly::new(vec![rat(1), rat(-n), rat(1)]);
    RationalFunction::new(num, den).expect("denominator has constant term 1")
}

/// `f(-t)^{-1}`.
pub fn dual_series<T: Coefficient>(f: &RationalFunction<T>) -> Result<RationalFunction<T>, SeriesError> {
    if f.constant_term().is_zero() {
        return Err(SeriesError::ZeroConstantTerm);
    }
    f.scale_variable(&-T::one()).inv()
}

/// First index in `1..=horizon` whose coefficient is zero or negative.
pub fn positivity_scan<T: Coefficient>(f: &RationalFunction<T>, horizon: usize) -> Option<usize> {
    f.coefficients(horizon)
        .iter()
        .enumerate()
        .skip(1)
        .find(|(_, c)| c.exact_sign() != Ordering::Greater)
        .map(|(i, _)| i)
}

/// `M t / (1 - N t + t^2)`, the generating series of `chi(v, g^n v)`.
pub fn orbit_chi_series(n: &BigInt, m: &BigInt) -> RationalFunction<BigRational> {
    RationalFunction::new(
        Poly::new(vec![rat(0), rat(m.clone())]),
        Poly::new(vec![rat(1), rat(-n), rat(1)]),
    )
    .expect("denominator has constant term 1")
}

/// Sparse polynomial in `(t, u)`; key `(i, j)` is the monomial `t^i u^j`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BiPoly {
    terms: BTreeMap<(usize, usize), BigRational>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((usize, usize), BigRational)>) -> Self {
        let mut p = BiPoly::zero();
        for (k, c) in terms {
            p.add_term(k, c);
        }
        p
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_terms([((0, 0), c)])
    }

    /// A polynomial in `t` alone.
    pub fn in_t(p: &Poly<BigRational>) -> Self {
        Self::from_terms(p.coeffs().iter().cloned().enumerate().map(|(i, c)| ((i, 0), c)))
    }

    /// A polynomial in `u` alone.
    pub fn in_u(p: &Poly<BigRational>) -> Self {
        Self::from_terms(p.coeffs().iter().cloned().enumerate().map(|(j, c)| ((0, j), c)))
    }

    fn add_term(&mut self, k: (usize, usize), c: BigRational) {
        let e = self.terms.entry(k).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn terms(&self) -> &BTreeMap<(usize, usize), BigRational> {
        &self.terms
    }

    pub fn coeff(&self, i: usize, j: usize) -> BigRational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        BiPoly {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, x)| (*k, x * c)))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = BiPoly::zero();
        for ((i, j), a) in &self.terms {
            for ((k, l), b) in &o.terms {
                out.add_term((i + k, j + l), a * b);
            }
        }
        out
    }

    /// View as a polynomial in `u` with coefficients in `Q[t]`.
    fn to_u_poly(&self) -> Vec<Poly<BigRational>> {
        let du = self.terms.keys().map(|k| k.1).max().map_or(0, |d| d + 1);
        let mut rows: Vec<Vec<BigRational>> = vec![Vec::new(); du];
        for ((i, j), c) in &self.terms {
            let row = &mut rows[*j];
            if row.len() <= *i {
                row.resize(*i + 1, BigRational::zero());
            }
            row[*i] = c.clone();
        }
        rows.into_iter().map(Poly::new).collect()
    }

    fn from_u_poly(rows: &[Poly<BigRational>]) -> Self {
        Self::from_terms(rows.iter().enumerate().flat_map(|(j, p)| {
            p.coeffs()
                .iter()
                .cloned()
                .enumerate()
                .map(move |(i, c)| ((i, j), c))
        }))
    }
}

type UPoly = Vec<Poly<BigRational>>;

fn u_trim(mut p: UPoly) -> UPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn u_content(p: &UPoly) -> Poly<BigRational> {
    p.iter().fold(Poly::zero(), |g, c| g.gcd(c))
}

fn u_exact_div_scalar(p: &UPoly, c: &Poly<BigRational>) -> UPoly {
    p.iter()
        .map(|x| {
            let (q, r) = x.div_rem(c);
            debug_assert!(r.is_zero());
            q
        })
        .collect()
}

fn u_primitive(p: &UPoly) -> UPoly {
    let c = u_content(p);
    if c.is_zero() {
        return Vec::new();
    }
    u_exact_div_scalar(p, &c)
}

/// Pseudo-remainder of `a` by `b` in `Q[t][u]`.
fn u_prem(a: &UPoly, b: &UPoly) -> UPoly {
    let lb = b.last().expect("nonzero divisor").clone();
    let db = b.len() - 1;
    let mut r = a.clone();
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let lr = r.last().expect("nonempty").clone();
        let mut next: UPoly = r.iter().map(|c| c.mul(&lb)).collect();
        for (j, bj) in b.iter().enumerate() {
            next[shift + j] = next[shift + j].sub(&bj.mul(&lr));
        }
        r = u_trim(next);
    }
    r
}

/// Exact quotient `a / b` in `Q[t][u]`; `b` must divide `a`.
fn u_exact_div(a: &UPoly, b: &UPoly) -> UPoly {
    let lb = b.last().expect("nonzero divisor").clone();
    let db = b.len() - 1;
    let mut r = a.clone();
    let mut q: UPoly = vec![Poly::zero(); a.len().saturating_sub(db)];
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let (c, rem) = r.last().expect("nonempty").div_rem(&lb);
        debug_assert!(rem.is_zero());
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] = r[shift + j].sub(&bj.mul(&c));
        }
        q[shift] = c;
        r = u_trim(r);
    }
    debug_assert!(r.is_empty());
    u_trim(q)
}

/// Greatest common divisor in `Q[t, u]` via contents and a primitive
/// pseudo-remainder sequence in `u`.
fn bi_gcd(a: &BiPoly, b: &BiPoly) -> BiPoly {
    let (pa, pb) = (a.to_u_poly(), b.to_u_poly());
    if pa.is_empty() {
        return b.clone();
    }
    if pb.is_empty() {
        return a.clone();
    }
    let content = u_content(&pa).gcd(&u_content(&pb));
    let (mut x, mut y) = (u_primitive(&pa), u_primitive(&pb));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = u_prem(&x, &y);
        x = y;
        y = u_primitive(&r);
    }
    let g = if x.len() <= 1 { vec![Poly::one()] } else { x };
    BiPoly::from_u_poly(&g.iter().map(|c| c.mul(&content)).collect::<Vec<_>>())
}

fn bi_exact_div(a: &BiPoly, b: &BiPoly) -> BiPoly {
    BiPoly::from_u_poly(&u_exact_div(&a.to_u_poly(), &b.to_u_poly()))
}

/// Reduced quotient of polynomials in `(t, u)` with `den(0, 0) = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct BiRationalFunction {
    num: BiPoly,
    den: BiPoly,
}

impl BiRationalFunction {
    pub fn new(num: BiPoly, den: BiPoly) -> Result<Self, SeriesError> {
        if den.is_zero() {
            return Err(SeriesError::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(BiRationalFunction {
                num,
                den: BiPoly::constant(BigRational::one()),
            });
        }
        let g = bi_gcd(&num, &den);
        let (num, den) = (bi_exact_div(&num, &g), bi_exact_div(&den, &g));
        let c0 = den.coeff(0, 0);
        if c0.is_zero() {
            return Err(SeriesError::ZeroConstantTerm);
        }
        let inv = c0.recip();
        Ok(BiRationalFunction {
            num: num.scale(&inv),
            den: den.scale(&inv),
        })
    }

    pub fn numerator(&self) -> &BiPoly {
        &self.num
    }

    pub fn denominator(&self) -> &BiPoly {
        &self.den
    }

    /// Equality as rational functions, by cross-multiplication.
    pub fn same_function(&self, o: &Self) -> bool {
        self.num.mul(&o.den) == o.num.mul(&self.den)
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(self.num.mul(&o.num), self.den.mul(&o.den)).expect("unit constant terms")
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
        .expect("unit constant terms")
    }

    pub fn from_poly(p: BiPoly) -> Self {
        BiRationalFunction {
            num: p,
            den: BiPoly::constant(BigRational::one()),
        }
    }

    /// `f(t)` viewed as a function of `(t, u)`.
    pub fn from_t(f: &RationalFunction<BigRational>) -> Self {
        Self::new(BiPoly::in_t(f.numerator()), BiPoly::in_t(f.denominator()))
            .expect("unit constant term")
    }

    /// `f(u)` viewed as a function of `(t, u)`.
    pub fn from_u(f: &RationalFunction<BigRational>) -> Self {
        Self::new(BiPoly::in_u(f.numerator()), BiPoly::in_u(f.denominator()))
            .expect("unit constant term")
    }

    /// Power-series coefficients; entry `[n][k]` is the `t^n u^k` coefficient.
    pub fn coefficients(&self, tmax: usize, umax: usize) -> Vec<Vec<BigRational>> {
        let mut c = vec![vec![BigRational::zero(); umax + 1]; tmax + 1];
        for n in 0..=tmax {
            for k in 0..=umax {
                let mut acc = self.num.coeff(n, k);
                for ((i, j), dij) in &self.den.terms {
                    if (*i, *j) == (0, 0) || *i > n || *j > k {
                        continue;
                    }
                    acc -= dij * &c[n - i][k - j];
                }
                c[n][k] = acc;
            }
        }
        c
    }
}

/// `F(t, u) = M (1 + t u) / ((1 - N u + u^2)(1 - (M - N) t + t^2))`.
pub fn twist_series_f(n: &BigInt, m: &BigInt) -> BiRationalFunction {
    let num = BiPoly::from_terms([((0, 0), rat(m.clone())), ((1, 1), rat(m.clone()))]);
    let den_u = BiPoly::from_terms([((0, 0), rat(1)), ((0, 1), rat(-n)), ((0, 2), rat(1))]);
    let den_t = BiPoly::from_terms([((0, 0), rat(1)), ((1, 0), rat(n - m)), ((2, 0), rat(1))]);
    BiRationalFunction::new(num, den_u.mul(&den_t)).expect("unit constant term")
}

/// `R(t) = (1 + r^2 t) / (1 - (M - N) r t + r^2 t^2)` over `Q(sqrt D)`.
pub fn twist_series_r(
    n: &BigInt,
    m: &BigInt,
    r: &QuadNum,
) -> Result<RationalFunction<QuadNum>, SeriesError> {
    let r_inv = r.inv().map_err(|_| SeriesError::EigenvalueMismatch)?;
    if r + &r_inv != QuadNum::integer(n.clone()) {
        return Err(SeriesError::EigenvalueMismatch);
    }
    let r2 = r * r;
    let mn = QuadNum::integer(m - n);
    RationalFunction::new(
        Poly::new(vec![QuadNum::one(), r2.clone()]),
        Poly::new(vec![QuadNum::one(), -(mn * r), r2]),
    )
}

/// `F0(t) = (H(-t)^{-1} - 1) / t`.
pub fn twist_series_f0(n: &BigInt, m: &BigInt) -> RationalFunction<BigRational> {
    let dual = dual_series(&hilbert_series(n, m)).expect("H(0) = 1");
    let shifted = dual.sub(&RationalFunction::from_poly(Poly::one()));
    // H(-t)^{-1} - 1 vanishes at t = 0, so the numerator is divisible by t.
    let (q, r) = shifted
        .numerator()
        .div_rem(&Poly::monomial(BigRational::one(), 1));
    debug_assert!(r.is_zero());
    RationalFunction::new(q, shifted.denominator().clone()).expect("unit constant term")
}

/// `(u + t) F(t, u) = H(u) (1 + t F0(t)) - 1` as an identity of reduced
/// rational functions in `(t, u)`.
pub fn twist_identity_holds(n: &BigInt, m: &BigInt) -> bool {
    let f = twist_series_f(n, m);
    let u_plus_t = BiRationalFunction::from_poly(BiPoly::from_terms([
        ((0, 1), rat(1)),
        ((1, 0), rat(1)),
    ]));
    let lhs = u_plus_t.mul(&f);
    let h_u = BiRationalFunction::from_u(&hilbert_series(n, m));
    let t_f0 = RationalFunction::from_poly(Poly::monomial(rat(1), 1))
        .mul(&twist_series_f0(n, m))
        .add(&RationalFunction::from_poly(Poly::one()));
    let rhs = h_u
        .mul(&BiRationalFunction::from_t(&t_f0))
        .add(&BiRationalFunction::from_poly(BiPoly::constant(rat(-1))));
    lhs.same_function(&rhs) && lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn ints(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| rat(x)).collect()
    }

    fn qpoly(v: &[i64]) -> Poly<BigRational> {
        Poly::new(ints(v))
    }

    fn rf(num: &[i64], den: &[i64]) -> RationalFunction<BigRational> {
        RationalFunction::new(qpoly(num), qpoly(den)).unwrap()
    }

    #[test]
    fn hilbert_examples() {
        assert_eq!(hilbert_series(&b(2), &b(4)).coefficients(4), ints(&[1, 4, 8, 12, 16]));
        assert_eq!(hilbert_series(&b(6), &b(14)).coefficients(3), ints(&[1, 14, 84, 490]));
        let trivial = hilbert_series(&b(2), &b(0));
        assert_eq!(trivial, RationalFunction::from_poly(Poly::one()));
    }

    #[test]
    fn coefficient_examples() {
        assert_eq!(rf(&[1], &[1, -1]).coefficients(3), ints(&[1, 1, 1, 1]));
        assert_eq!(rf(&[0, 1], &[1, -3, 1]).coefficients(4), ints(&[0, 1, 3, 8, 21]));
        assert_eq!(orbit_chi_series(&b(-3), &b(-1)).coefficients(3), ints(&[0, -1, 3, -8]));
    }

    #[test]
    fn reduction_normalizes() {
        // (2 - 2t^2) / (2 + 2t) = 1 - t
        let f = rf(&[2, 0, -2], &[2, 2]);
        assert_eq!(f.numerator(), &qpoly(&[1, -1]));
        assert_eq!(f.denominator(), &qpoly(&[1]));
        assert_eq!(
            RationalFunction::new(qpoly(&[1]), qpoly(&[0, 1])),
            Err(SeriesError::ZeroConstantTerm)
        );
        assert_eq!(
            RationalFunction::new(qpoly(&[1]), Poly::zero()),
            Err(SeriesError::ZeroDenominator)
        );
    }

    #[test]
    fn dual_examples() {
        let h = hilbert_series(&b(6), &b(14));
        assert_eq!(dual_series(&h).unwrap(), hilbert_series(&b(8), &b(14)));
        let h = hilbert_series(&b(2), &b(4));
        assert_eq!(dual_series(&h).unwrap(), h);
        assert_eq!(
            dual_series(&rf(&[0, 1], &[1, -1])),
            Err(SeriesError::ZeroConstantTerm)
        );
    }

    #[test]
    fn positivity_examples() {
        assert_eq!(positivity_scan(&orbit_chi_series(&b(2), &b(1)), 50), None);
        // t / (1 + t^2) = 0, 1, 0, -1, ...: zero counts as nonpositive.
        assert_eq!(positivity_scan(&orbit_chi_series(&b(0), &b(1)), 10), Some(2));
        assert_eq!(positivity_scan(&rf(&[1], &[1, -1]), 10), None);
    }

    #[test]
    fn twist_f_examples() {
        let f = twist_series_f(&b(6), &b(14));
        let c = f.coefficients(3, 6);
        assert_eq!(c[0][0], rat(14));
        // row t^1 = 14 (8 + u) / (1 - 6u + u^2)
        let row = RationalFunction::new(qpoly(&[112, 14]), qpoly(&[1, -6, 1])).unwrap();
        assert_eq!(c[1], row.coefficients(6));
        let f0 = twist_series_f0(&b(6), &b(14));
        assert_eq!(f0.coefficients(3), (0..=3).map(|n| c[n][0].clone()).collect::<Vec<_>>());
    }

    #[test]
    fn twist_f_zero_m() {
        let f = twist_series_f(&b(3), &b(0));
        assert!(f.numerator().is_zero());
    }

    #[test]
    fn bivariate_gcd_cancels() {
        // ((1 + tu)(1 - t)) / ((1 + tu)(1 + u)) reduces to (1 - t) / (1 + u)
        let p = BiPoly::from_terms([((0, 0), rat(1)), ((1, 1), rat(1))]);
        let x = BiPoly::from_terms([((0, 0), rat(1)), ((1, 0), rat(-1))]);
        let y = BiPoly::from_terms([((0, 0), rat(3)), ((0, 1), rat(3))]);
        let f = BiRationalFunction::new(p.mul(&x), p.mul(&y)).unwrap();
        assert_eq!(f.numerator(), &x.scale(&BigRational::new(1.into(), 3.into())));
        assert_eq!(f.denominator(), &y.scale(&BigRational::new(1.into(), 3.into())));
    }

    #[test]
    fn twist_r_examples() {
        let r = QuadNum::from_ints(3, 2, -1).unwrap();
        let rs = twist_series_r(&b(4), &b(3), &r).unwrap();
        let c = rs.coefficients(1);
        assert_eq!(c[0], QuadNum::one());
        assert_eq!(c[1], QuadNum::from_ints(3, 5, -3).unwrap());
        assert!(c[1].is_negative());
        let r6 = QuadNum::from_ints(2, 3, -2).unwrap();
        let c6 = twist_series_r(&b(6), &b(14), &r6).unwrap().coefficients(1);
        assert_eq!(c6[1], &r6 * &QuadNum::integer(14) - QuadNum::one());
        assert_eq!(
            twist_series_r(&b(5), &b(3), &r),
            Err(SeriesError::EigenvalueMismatch)
        );
    }

    #[test]
    fn bivariate_identity_examples() {
        assert!(twist_identity_holds(&b(6), &b(14)));
        assert!(twist_identity_holds(&b(2), &b(4)));
    }

    proptest! {
        #[test]
        fn bivariate_identity_all(n in -6i64..12, m in -6i64..16) {
            prop_assert!(twist_identity_holds(&b(n), &b(m)));
        }

        #[test]
        fn dual_is_involution(n in -10i64..10, m in -10i64..20) {
            let h = hilbert_series(&b(n), &b(m));
            let d = dual_series(&h).unwrap();
            prop_assert_eq!(&dual_series(&d).unwrap(), &h);
            prop_assert_eq!(d, hilbert_series(&b(m - n), &b(m)));
        }

        #[test]
        fn positive_for_hyperbolic_or_unipotent(n in 2i64..12, m in 1i64..20) {
            prop_assert_eq!(positivity_scan(&orbit_chi_series(&b(n), &b(m)), 60), None);
        }

        #[test]
        fn coefficients_match_long_division(num in prop::collection::vec(-5i64..5, 0..4), den_tail in prop::collection::vec(-5i64..5, 0..4)) {
            let mut den = vec![1i64];
            den.extend(den_tail);
            let f = rf(&num, &den);
            let c = f.coefficients(12);
            // c * den == num modulo t^13
            let prod = Poly::new(c).mul(&qpoly(&den));
            for k in 0..=12 {
                prop_assert_eq!(prod.coeff(k), qpoly(&num).coeff(k));
            }
        }
    }
}
