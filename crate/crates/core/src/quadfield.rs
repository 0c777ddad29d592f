//! Exact arithmetic in real quadratic fields `Q(sqrt D)`, quadratic orders,
//! continued fractions and eigen-data of hyperbolic matrices.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::lattice::{chi, classify_eigen, EigenClass, KVector, SL2Matrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuadError {
    #[error("radicand {0} is not a squarefree integer >= 2")]
    BadRadicand(BigInt),
    #[error("cannot combine elements of Q(sqrt {0}) and Q(sqrt {1})")]
    FieldMismatch(BigInt, BigInt),
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid quadratic order ({0}, {1}, {2}): {3}")]
    InvalidOrder(BigInt, BigInt, BigInt, &'static str),
    #[error("matrix is unipotent or has rational fixed points")]
    UnipotentOrRational,
    #[error("infinity is a fixed point (c = 0)")]
    InfinityFixed,
    #[error("matrix is not hyperbolic (trace must be at least 3)")]
    NotHyperbolic,
    #[error("base vector is proportional to an eigenvector")]
    EigenvectorBase,
    #[error("{0} is not a norm-one unit of the order lying in (0, 1)")]
    NotAUnit(String),
    #[error("number is rational; an irrational value is required")]
    NotIrrational,
    #[error("internal identity check failed: {0}")]
    Internal(&'static str),
}

/// Splits `n > 0` as `root^2 * core` with `core` squarefree.
pub fn squarefree_split(n: &BigInt) -> (BigInt, BigInt) {
    assert!(n.is_positive(), "squarefree_split needs a positive integer");
    let mut rest = n.clone();
    let mut core = BigInt::one();
    let mut root = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= rest {
        let mut e = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            e += 1;
        }
        if e > 0 {
            root *= p.pow(e / 2);
            if e % 2 == 1 {
                core *= &p;
            }
        }
        p += if p == BigInt::from(2) { 1 } else { 2 };
    }
    core *= rest;
    (core, root)
}

pub fn is_perfect_square(n: &BigInt) -> bool {
    !n.is_negative() && {
        let s = n.sqrt();
        &s * &s == *n
    }
}

/// `x + y sqrt(d)`.
///
/// `d` is squarefree and at least 2, except for context-free rationals which
/// carry `d = 1` and `y = 0`. A value with `y = 0` is a rational number and
/// combines with an element of any field; two irrational operands must share
/// `d`.
#[derive(Debug, Clone)]
pub struct QuadNum {
    d: BigInt,
    x: BigRational,
    y: BigRational,
}

impl QuadNum {
    pub fn new(d: impl Into<BigInt>, x: BigRational, y: BigRational) -> Result<Self, QuadError> {
        let d = d.into();
        if d < BigInt::from(2) || squarefree_split(&d).1 != BigInt::one() {
            if d.is_one() && y.is_zero() {
                return Ok(QuadNum { d, x, y });
            }
            return Err(QuadError::BadRadicand(d));
        }
        Ok(QuadNum { d, x, y })
    }

    pub fn from_ints(d: i64, x: i64, y: i64) -> Result<Self, QuadError> {
        Self::new(d, BigRational::from_integer(x.into()), BigRational::from_integer(y.into()))
    }

    pub fn rational(q: BigRational) -> Self {
        QuadNum {
            d: BigInt::one(),
            x: q,
            y: BigRational::zero(),
        }
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Self::rational(BigRational::from_integer(n.into()))
    }

    /// The rational `q` viewed inside `Q(sqrt d)`.
    pub fn rational_in(d: &BigInt, q: BigRational) -> Self {
        QuadNum {
            d: d.clone(),
            x: q,
            y: BigRational::zero(),
        }
    }

    /// `sqrt(n)` for an integer `n >= 0`, rational when `n` is a square.
    pub fn sqrt_of(n: &BigInt) -> Self {
        if n.is_zero() {
            return Self::integer(0);
        }
        let (core, root) = squarefree_split(n);
        let root = BigRational::from_integer(root);
        if core.is_one() {
            Self::rational(root)
        } else {
            QuadNum {
                d: core,
                x: BigRational::zero(),
                y: root,
            }
        }
    }

    pub fn radicand(&self) -> &BigInt {
        &self.d
    }
    pub fn x(&self) -> &BigRational {
        &self.x
    }
    pub fn y(&self) -> &BigRational {
        &self.y
    }

    pub fn is_rational(&self) -> bool {
        self.y.is_zero()
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.x.clone())
    }

    fn common_d(&self, other: &QuadNum) -> Result<BigInt, QuadError> {
        match (self.is_rational(), other.is_rational()) {
            (false, false) if self.d != other.d => {
                Err(QuadError::FieldMismatch(self.d.clone(), other.d.clone()))
            }
            (false, _) => Ok(self.d.clone()),
            (true, false) => Ok(other.d.clone()),
            (true, true) => Ok(if self.d.is_one() {
                other.d.clone()
            } else {
                self.d.clone()
            }),
        }
    }

    pub fn try_add(&self, o: &QuadNum) -> Result<QuadNum, QuadError> {
        Ok(QuadNum {
            d: self.common_d(o)?,
            x: &self.x + &o.x,
            y: &self.y + &o.y,
        })
    }

    pub fn try_sub(&self, o: &QuadNum) -> Result<QuadNum, QuadError> {
        Ok(QuadNum {
            d: self.common_d(o)?,
            x: &self.x - &o.x,
            y: &self.y - &o.y,
        })
    }

    pub fn try_mul(&self, o: &QuadNum) -> Result<QuadNum, QuadError> {
        let d = self.common_d(o)?;
        let dq = BigRational::from_integer(d.clone());
        Ok(QuadNum {
            x: &self.x * &o.x + &self.y * &o.y * dq,
            y: &self.x * &o.y + &self.y * &o.x,
            d,
        })
    }

    pub fn try_div(&self, o: &QuadNum) -> Result<QuadNum, QuadError> {
        self.try_mul(&o.inv()?)
    }

    pub fn inv(&self) -> Result<QuadNum, QuadError> {
        let n = self.norm();
        if n.is_zero() {
            return Err(QuadError::DivisionByZero);
        }
        Ok(QuadNum {
            d: self.d.clone(),
            x: &self.x / &n,
            y: -&self.y / &n,
        })
    }

    pub fn conj(&self) -> QuadNum {
        QuadNum {
            d: self.d.clone(),
            x: self.x.clone(),
            y: -&self.y,
        }
    }

    /// `x^2 - d y^2`.
    pub fn norm(&self) -> BigRational {
        &self.x * &self.x - &self.y * &self.y * BigRational::from_integer(self.d.clone())
    }

    pub fn scale(&self, q: &BigRational) -> QuadNum {
        QuadNum {
            d: self.d.clone(),
            x: &self.x * q,
            y: &self.y * q,
        }
    }

    pub fn pow(&self, n: i64) -> Result<QuadNum, QuadError> {
        let mut base = if n < 0 { self.inv()? } else { self.clone() };
        let mut acc = QuadNum::rational_in(&self.d, BigRational::one());
        let mut e = n.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Exact sign of `x + y sqrt(d)` as the real number it denotes.
    pub fn sign(&self) -> Ordering {
        let sx = self.x.cmp(&BigRational::zero());
        let sy = self.y.cmp(&BigRational::zero());
        match (sx, sy) {
            (_, Ordering::Equal) => sx,
            (Ordering::Equal, _) => sy,
            _ if sx == sy => sx,
            _ => {
                let x2 = &self.x * &self.x;
                let dy2 = &self.y * &self.y * BigRational::from_integer(self.d.clone());
                if x2 > dy2 {
                    sx
                } else {
                    sy
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.sign() == Ordering::Less
    }

    pub fn try_cmp(&self, o: &QuadNum) -> Result<Ordering, QuadError> {
        Ok(self.try_sub(o)?.sign())
    }

    /// Largest integer not exceeding the value.
    pub fn floor(&self) -> BigInt {
        if self.is_rational() {
            return self.x.floor().to_integer();
        }
        let p = self.y.numer();
        let s = self.y.denom();
        let t = (p * p * &self.d).sqrt();
        let lower = if p.is_negative() {
            &self.x - BigRational::new(t + BigInt::one(), s.clone())
        } else {
            &self.x + BigRational::new(t, s.clone())
        };
        let mut f = lower.floor().to_integer();
        loop {
            let next = QuadNum::integer(&f + BigInt::one());
            if self.try_cmp(&next).expect("rational comparison") != Ordering::Less {
                f += 1;
                continue;
            }
            if self.try_cmp(&QuadNum::integer(f.clone())).expect("rational comparison")
                == Ordering::Less
            {
                f -= 1;
                continue;
            }
            return f;
        }
    }

    pub fn ceil(&self) -> BigInt {
        -(-self).floor()
    }
}

impl PartialEq for QuadNum {
    fn eq(&self, other: &Self) -> bool {
        self.x == other.x && self.y == other.y && (self.y.is_zero() || self.d == other.d)
    }
}

impl Eq for QuadNum {}

impl Hash for QuadNum {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.x.hash(state);
        self.y.hash(state);
        if !self.y.is_zero() {
            self.d.hash(state);
        }
    }
}

impl PartialOrd for QuadNum {
    /// `None` when the operands live in different fields.
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.try_cmp(other).ok()
    }
}

impl fmt::Display for QuadNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.y.is_zero() {
            return write!(f, "{}", self.x);
        }
        let y_abs = self.y.abs();
        let coef = if y_abs.is_one() {
            String::new()
        } else {
            format!("{}*", y_abs)
        };
        if self.x.is_zero() {
            let sign = if self.y.is_negative() { "-" } else { "" };
            write!(f, "{sign}{coef}sqrt({})", self.d)
        } else {
            let sign = if self.y.is_negative() { '-' } else { '+' };
            write!(f, "{} {sign} {coef}sqrt({})", self.x, self.d)
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&QuadNum> for &QuadNum {
            type Output = QuadNum;
            /// Panics when the operands lie in different quadratic fields
            /// (or on division by zero); use the `try_*` methods to recover.
            fn $method(self, rhs: &QuadNum) -> QuadNum {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<QuadNum> for QuadNum {
            type Output = QuadNum;
            fn $method(self, rhs: QuadNum) -> QuadNum {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&QuadNum> for QuadNum {
            type Output = QuadNum;
            fn $method(self, rhs: &QuadNum) -> QuadNum {
                (&self).$method(rhs)
            }
        }
        impl $trait<QuadNum> for &QuadNum {
            type Output = QuadNum;
            fn $method(self, rhs: QuadNum) -> QuadNum {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

impl Neg for &QuadNum {
    type Output = QuadNum;
    fn neg(self) -> QuadNum {
        QuadNum {
            d: self.d.clone(),
            x: -&self.x,
            y: -&self.y,
        }
    }
}

impl Neg for QuadNum {
    type Output = QuadNum;
    fn neg(self) -> QuadNum {
        -&self
    }
}

impl Zero for QuadNum {
    fn zero() -> Self {
        QuadNum::integer(0)
    }
    fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }
}

impl One for QuadNum {
    fn one() -> Self {
        QuadNum::integer(1)
    }
}

impl From<BigRational> for QuadNum {
    fn from(q: BigRational) -> Self {
        QuadNum::rational(q)
    }
}

impl From<&BigInt> for QuadNum {
    fn from(n: &BigInt) -> Self {
        QuadNum::integer(n.clone())
    }
}

/// A primitive integer quadratic `alpha t^2 + beta t + gamma` with `alpha > 0`
/// and positive non-square discriminant; it defines the order `Z[alpha theta]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadOrder {
    alpha: BigInt,
    beta: BigInt,
    gamma: BigInt,
}

impl QuadOrder {
    pub fn new(
        alpha: impl Into<BigInt>,
        beta: impl Into<BigInt>,
        gamma: impl Into<BigInt>,
    ) -> Result<Self, QuadError> {
        let (alpha, beta, gamma) = (alpha.into(), beta.into(), gamma.into());
        let bad = |why| {
            Err(QuadError::InvalidOrder(
                alpha.clone(),
                beta.clone(),
                gamma.clone(),
                why,
            ))
        };
        if !alpha.is_positive() {
            return bad("alpha must be positive");
        }
        if !alpha.gcd(&beta).gcd(&gamma).is_one() {
            return bad("coefficients must be coprime");
        }
        let disc = &beta * &beta - BigInt::from(4) * &alpha * &gamma;
        if !disc.is_positive() {
            return bad("discriminant must be positive");
        }
        if is_perfect_square(&disc) {
            return bad("discriminant must not be a perfect square");
        }
        Ok(QuadOrder { alpha, beta, gamma })
    }

    pub fn alpha(&self) -> &BigInt {
        &self.alpha
    }
    pub fn beta(&self) -> &BigInt {
        &self.beta
    }
    pub fn gamma(&self) -> &BigInt {
        &self.gamma
    }

    /// `beta^2 - 4 alpha gamma`.
    pub fn discriminant(&self) -> BigInt {
        &self.beta * &self.beta - BigInt::from(4) * &self.alpha * &self.gamma
    }

    fn root(&self, sign: i32) -> QuadNum {
        let two_alpha = BigRational::from_integer(BigInt::from(2) * &self.alpha);
        let s = QuadNum::sqrt_of(&self.discriminant());
        let s = if sign < 0 { -s } else { s };
        let shifted = &s + &QuadNum::integer(-&self.beta);
        shifted.scale(&two_alpha.recip())
    }

    /// The root `(-beta + sqrt(disc)) / (2 alpha)`.
    pub fn theta(&self) -> QuadNum {
        self.root(1)
    }

    /// The root `(-beta - sqrt(disc)) / (2 alpha)`.
    pub fn conjugate_theta(&self) -> QuadNum {
        self.root(-1)
    }
}

pub fn theta_of(order: &QuadOrder) -> QuadNum {
    order.theta()
}

/// A point of the real projective line.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ProjPoint {
    Finite(QuadNum),
    Infinity,
}

/// `theta -> (a theta + b) / (c theta + d)`.
pub fn fractional_linear(g: &SL2Matrix, theta: &ProjPoint) -> ProjPoint {
    let int = |n: &BigInt| QuadNum::integer(n.clone());
    match theta {
        ProjPoint::Infinity => {
            if g.c().is_zero() {
                ProjPoint::Infinity
            } else {
                ProjPoint::Finite(QuadNum::rational(BigRational::new(g.a().clone(), g.c().clone())))
            }
        }
        ProjPoint::Finite(t) => {
            let den = t * &int(g.c()) + int(g.d());
            if den.is_zero() {
                ProjPoint::Infinity
            } else {
                ProjPoint::Finite((t * &int(g.a()) + int(g.b())) / den)
            }
        }
    }
}

/// Both roots of `c t^2 + (d - a) t - b = 0`, the `+sqrt` root first.
pub fn fixed_points(g: &SL2Matrix) -> Result<(QuadNum, QuadNum), QuadError> {
    if g.c().is_zero() {
        return Err(QuadError::InfinityFixed);
    }
    let tr = g.trace();
    let disc = &tr * &tr - BigInt::from(4);
    if disc.is_negative() {
        return Err(QuadError::NotHyperbolic);
    }
    if is_perfect_square(&disc) {
        return Err(QuadError::UnipotentOrRational);
    }
    let s = QuadNum::sqrt_of(&disc);
    let base = QuadNum::integer(g.a() - g.d());
    let inv_2c = BigRational::new(BigInt::one(), BigInt::from(2) * g.c());
    Ok(((&base + &s).scale(&inv_2c), (&base - &s).scale(&inv_2c)))
}

/// Exact test `v.deg - theta * v.rk > 0`.
pub fn halfplane_test(theta: &QuadNum, v: &KVector) -> bool {
    (QuadNum::integer(v.deg.clone()) - theta * &QuadNum::integer(v.rk.clone())).is_positive()
}

/// A vector of two field elements, coordinates `(deg, rk)`.
pub type QuadVec = [QuadNum; 2];

/// Euler form extended to `Q(sqrt D)^2`.
pub fn chi_q(v: &QuadVec, w: &QuadVec) -> QuadNum {
    &v[1] * &w[0] - &v[0] * &w[1]
}

pub fn lift(v: &KVector) -> QuadVec {
    [QuadNum::integer(v.deg.clone()), QuadNum::integer(v.rk.clone())]
}

pub fn act_q(g: &SL2Matrix, v: &QuadVec) -> QuadVec {
    let int = |n: &BigInt| QuadNum::integer(n.clone());
    [
        &v[0] * &int(g.a()) + &v[1] * &int(g.b()),
        &v[0] * &int(g.c()) + &v[1] * &int(g.d()),
    ]
}

fn scale_vec(k: &QuadNum, v: &QuadVec) -> QuadVec {
    [k * &v[0], k * &v[1]]
}

/// Eigen-data of a hyperbolic `g` relative to a base vector `v0`:
/// `g u = r u`, `g u' = u' / r`, `u + u' = v0`, `delta = chi(u, u')`.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenFrame {
    pub g: SL2Matrix,
    /// The eigenvalue in `(0, 1)`.
    pub r: QuadNum,
    pub u: QuadVec,
    pub uprime: QuadVec,
    pub delta: QuadNum,
}

impl EigenFrame {
    pub fn r_inv(&self) -> QuadNum {
        self.r.inv().expect("eigenvalue is nonzero")
    }

    /// Slope of the contracting eigenvector `u`.
    pub fn theta_attract(&self) -> QuadNum {
        &self.u[0] / &self.u[1]
    }

    /// Slope of the expanding eigenvector `u'`.
    pub fn theta_repel(&self) -> QuadNum {
        &self.uprime[0] / &self.uprime[1]
    }

    /// Coordinates `(alpha, beta)` with `v = alpha u + beta u'`.
    pub fn coordinates(&self, v: &QuadVec) -> QuadVec {
        let det = chi_q(&self.uprime, &self.u);
        // chi(u', u) alpha = chi(u', v), chi(u, u') beta = chi(u, v)
        [
            chi_q(&self.uprime, v) / &det,
            chi_q(&self.u, v) / (-&det),
        ]
    }

    pub fn from_coordinates(&self, c: &QuadVec) -> QuadVec {
        [
            &c[0] * &self.u[0] + &c[1] * &self.uprime[0],
            &c[0] * &self.u[1] + &c[1] * &self.uprime[1],
        ]
    }
}

/// The eigenvalue `(N - sqrt(N^2 - 4)) / 2` of a hyperbolic matrix.
pub fn contracting_eigenvalue(g: &SL2Matrix) -> Result<QuadNum, QuadError> {
    if classify_eigen(g) != EigenClass::HyperbolicPositive {
        return Err(QuadError::NotHyperbolic);
    }
    let tr = g.trace();
    let s = QuadNum::sqrt_of(&(&tr * &tr - BigInt::from(4)));
    Ok((QuadNum::integer(tr) - s).scale(&BigRational::new(1.into(), 2.into())))
}

pub fn eigen_frame(g: &SL2Matrix, v0: &KVector) -> Result<EigenFrame, QuadError> {
    let r = contracting_eigenvalue(g)?;
    let r_inv = r.inv()?;
    let int = |n: &BigInt| QuadNum::integer(n.clone());
    // b != 0 for hyperbolic g, so (b, lambda - a) spans each eigenline.
    let w = [int(g.b()), &r - &int(g.a())];
    let wp = [int(g.b()), &r_inv - &int(g.a())];
    let v = lift(v0);
    let det = |x: &QuadVec, y: &QuadVec| &x[0] * &y[1] - &x[1] * &y[0];
    let dw = det(&w, &wp);
    let s = det(&v, &wp) / &dw;
    let sp = det(&w, &v) / &dw;
    if s.is_zero() || sp.is_zero() {
        return Err(QuadError::EigenvectorBase);
    }
    let u = scale_vec(&s, &w);
    let uprime = scale_vec(&sp, &wp);
    let delta = chi_q(&u, &uprime);

    if act_q(g, &u) != scale_vec(&r, &u) || act_q(g, &uprime) != scale_vec(&r_inv, &uprime) {
        return Err(QuadError::Internal("eigenvector equations"));
    }
    if [&u[0] + &uprime[0], &u[1] + &uprime[1]] != v {
        return Err(QuadError::Internal("u + u' = v0"));
    }
    let m = QuadNum::integer(chi(v0, &g.act(v0)));
    if &delta * &(&r_inv - &r) != m {
        return Err(QuadError::Internal("delta (1/r - r) = M"));
    }
    Ok(EigenFrame {
        g: g.clone(),
        r,
        u,
        uprime,
        delta,
    })
}

/// Simple continued fraction of a quadratic irrationality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContinuedFraction {
    /// The first `n` partial quotients.
    pub terms: Vec<BigInt>,
    pub preperiod: Vec<BigInt>,
    pub period: Vec<BigInt>,
}

impl ContinuedFraction {
    /// Partial quotient with index `i`, from the periodic description.
    pub fn term(&self, i: usize) -> BigInt {
        if i < self.preperiod.len() {
            self.preperiod[i].clone()
        } else {
            let j = (i - self.preperiod.len()) % self.period.len();
            self.period[j].clone()
        }
    }
}

/// Convergents `p_n / q_n` of a finite list of partial quotients.
pub fn convergents(terms: &[BigInt]) -> Vec<(BigInt, BigInt)> {
    let (mut p0, mut q0) = (BigInt::zero(), BigInt::one());
    let (mut p1, mut q1) = (BigInt::one(), BigInt::zero());
    let mut out = Vec::with_capacity(terms.len());
    for a in terms {
        let p = a * &p1 + &p0;
        let q = a * &q1 + &q0;
        p0 = std::mem::replace(&mut p1, p.clone());
        q0 = std::mem::replace(&mut q1, q.clone());
        out.push((p, q));
    }
    out
}

struct Expansion {
    partials: Vec<BigInt>,
    quotients: Vec<QuadNum>,
    period_start: usize,
}

/// Runs the expansion until a complete quotient repeats.
fn expand_until_periodic(theta: &QuadNum) -> Result<Expansion, QuadError> {
    if theta.is_rational() {
        return Err(QuadError::NotIrrational);
    }
    let mut seen: HashMap<QuadNum, usize> = HashMap::new();
    let mut partials = Vec::new();
    let mut quotients = Vec::new();
    let mut xi = theta.clone();
    loop {
        if let Some(&start) = seen.get(&xi) {
            return Ok(Expansion {
                partials,
                quotients,
                period_start: start,
            });
        }
        seen.insert(xi.clone(), partials.len());
        let a = xi.floor();
        let frac = &xi - &QuadNum::integer(a.clone());
        partials.push(a);
        quotients.push(xi);
        xi = frac.inv()?;
    }
}

pub fn continued_fraction(theta: &QuadNum, n: usize) -> Result<ContinuedFraction, QuadError> {
    let exp = expand_until_periodic(theta)?;
    let mut cf = ContinuedFraction {
        terms: Vec::new(),
        preperiod: exp.partials[..exp.period_start].to_vec(),
        period: exp.partials[exp.period_start..].to_vec(),
    };
    cf.terms = (0..n).map(|i| cf.term(i)).collect();
    Ok(cf)
}

/// The unit `epsilon > 1` read off one period of the expansion of `theta`;
/// it generates the units of the multiplier ring of `Z + Z theta` up to sign.
pub fn period_unit(theta: &QuadNum) -> Result<QuadNum, QuadError> {
    let exp = expand_until_periodic(theta)?;
    let period = &exp.partials[exp.period_start..];
    let conv = convergents(period);
    let k = period.len();
    let (_, q_last) = &conv[k - 1];
    let q_prev = if k >= 2 {
        conv[k - 2].1.clone()
    } else {
        BigInt::zero()
    };
    let xi = &exp.quotients[exp.period_start];
    Ok(xi * &QuadNum::integer(q_last.clone()) + QuadNum::integer(q_prev))
}

/// The largest norm-one unit of `Z[alpha theta]` below one.
pub fn unit_below_one(order: &QuadOrder) -> Result<QuadNum, QuadError> {
    let eps = period_unit(&order.theta())?;
    let eps_plus = if eps.norm().is_one() {
        eps
    } else {
        &eps * &eps
    };
    let base = eps_plus.conj();
    // The period unit already lies in the multiplier ring; the power search
    // only guards the integrality check below.
    let mut r = base.clone();
    for _ in 0..64 {
        if matrix_of_unit(order, &r).is_ok() {
            return Ok(r);
        }
        r = &r * &base;
    }
    Err(QuadError::Internal("no power of the period unit lies in the order"))
}

/// Matrix of multiplication by `r` on `Z theta + Z` in the basis `(theta, 1)`:
/// `r theta = a theta + b`, `r = c theta + d`.
pub fn matrix_of_unit(order: &QuadOrder, r: &QuadNum) -> Result<SL2Matrix, QuadError> {
    let not_unit = || QuadError::NotAUnit(r.to_string());
    if !r.norm().is_one() || !r.is_positive() || r.try_cmp(&QuadNum::one())? != Ordering::Less {
        return Err(not_unit());
    }
    let theta = order.theta();
    if r.radicand() != theta.radicand() {
        return Err(QuadError::FieldMismatch(
            r.radicand().clone(),
            theta.radicand().clone(),
        ));
    }
    let split = |z: &QuadNum| -> Option<(BigInt, BigInt)> {
        let hi = z.y() / theta.y();
        let lo = z.x() - &hi * theta.x();
        (hi.is_integer() && lo.is_integer()).then(|| (hi.to_integer(), lo.to_integer()))
    };
    let (c, d) = split(r).ok_or_else(not_unit)?;
    let (a, b) = split(&(r * &theta)).ok_or_else(not_unit)?;
    SL2Matrix::new(a, b, c, d).map_err(|_| not_unit())
}
