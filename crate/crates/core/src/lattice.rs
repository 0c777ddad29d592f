//! Integer `SL2(Z)` matrices acting on `(deg, rk)` vectors, the Euler form,
//! and the K-theory classes of the spherical twists.
//!
//! Vectors are columns; a matrix `[[a, b], [c, d]]` sends `(deg, rk)` to
//! `(a*deg + b*rk, c*deg + d*rk)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("determinant is {0}, expected 1")]
    NotUnimodular(BigInt),
    #[error("vector ({0}, {1}) is not primitive")]
    NotPrimitive(BigInt, BigInt),
}

/// A `(deg, rk)` pair.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KVector {
    pub deg: BigInt,
    pub rk: BigInt,
}

impl KVector {
    pub fn new(deg: impl Into<BigInt>, rk: impl Into<BigInt>) -> Self {
        KVector {
            deg: deg.into(),
            rk: rk.into(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.deg.is_zero() && self.rk.is_zero()
    }

    /// `gcd(|deg|, |rk|) == 1`.
    pub fn is_primitive(&self) -> bool {
        self.deg.gcd(&self.rk).is_one()
    }

    pub fn require_primitive(&self) -> Result<(), LatticeError> {
        if self.is_primitive() {
            Ok(())
        } else {
            Err(LatticeError::NotPrimitive(self.deg.clone(), self.rk.clone()))
        }
    }

    pub fn scale(&self, k: &BigInt) -> KVector {
        KVector {
            deg: &self.deg * k,
            rk: &self.rk * k,
        }
    }

    pub fn add(&self, other: &KVector) -> KVector {
        KVector {
            deg: &self.deg + &other.deg,
            rk: &self.rk + &other.rk,
        }
    }

    pub fn sub(&self, other: &KVector) -> KVector {
        KVector {
            deg: &self.deg - &other.deg,
            rk: &self.rk - &other.rk,
        }
    }

    pub fn neg(&self) -> KVector {
        KVector {
            deg: -&self.deg,
            rk: -&self.rk,
        }
    }
}

impl fmt::Display for KVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.deg, self.rk)
    }
}

/// Euler form `chi(v, w) = -(v.deg * w.rk - v.rk * w.deg)`.
///
/// With this orientation `chi((0,1), (d,1)) = d`, i.e. `chi(O, L) = deg L`.
pub fn chi(v: &KVector, w: &KVector) -> BigInt {
    &v.rk * &w.deg - &v.deg * &w.rk
}

/// Integer 2x2 matrix of determinant one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SL2Matrix {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl SL2Matrix {
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Result<Self, LatticeError> {
        let (a, b, c, d) = (a.into(), b.into(), c.into(), d.into());
        let det = &a * &d - &b * &c;
        if !det.is_one() {
            return Err(LatticeError::NotUnimodular(det));
        }
        Ok(SL2Matrix { a, b, c, d })
    }

    /// Row-major `[a, b, c, d]`.
    pub fn from_row_major(entries: [BigInt; 4]) -> Result<Self, LatticeError> {
        let [a, b, c, d] = entries;
        Self::new(a, b, c, d)
    }

    pub fn identity() -> Self {
        SL2Matrix {
            a: BigInt::one(),
            b: BigInt::zero(),
            c: BigInt::zero(),
            d: BigInt::one(),
        }
    }

    pub fn minus_identity() -> Self {
        SL2Matrix {
            a: -BigInt::one(),
            b: BigInt::zero(),
            c: BigInt::zero(),
            d: -BigInt::one(),
        }
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }
    pub fn b(&self) -> &BigInt {
        &self.b
    }
    pub fn c(&self) -> &BigInt {
        &self.c
    }
    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn row_major(&self) -> [BigInt; 4] {
        [
            self.a.clone(),
            self.b.clone(),
            self.c.clone(),
            self.d.clone(),
        ]
    }

    pub fn trace(&self) -> BigInt {
        &self.a + &self.d
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    /// Matrix product `self * other`.
    pub fn compose(&self, other: &SL2Matrix) -> SL2Matrix {
        SL2Matrix {
            a: &self.a * &other.a + &self.b * &other.c,
            b: &self.a * &other.b + &self.b * &other.d,
            c: &self.c * &other.a + &self.d * &other.c,
            d: &self.c * &other.b + &self.d * &other.d,
        }
    }

    pub fn inverse(&self) -> SL2Matrix {
        SL2Matrix {
            a: self.d.clone(),
            b: -&self.b,
            c: -&self.c,
            d: self.a.clone(),
        }
    }

    pub fn neg(&self) -> SL2Matrix {
        SL2Matrix {
            a: -&self.a,
            b: -&self.b,
            c: -&self.c,
            d: -&self.d,
        }
    }

    /// `self^n` for any integer `n` (negative powers use the inverse).
    pub fn pow(&self, n: i64) -> SL2Matrix {
        let mut base = if n < 0 { self.inverse() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = SL2Matrix::identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        acc
    }

    pub fn act(&self, v: &KVector) -> KVector {
        act(self, v)
    }
}

impl fmt::Display for SL2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// Column action `(deg, rk) -> g (deg, rk)^T`.
pub fn act(g: &SL2Matrix, v: &KVector) -> KVector {
    KVector {
        deg: &g.a * &v.deg + &g.b * &v.rk,
        rk: &g.c * &v.deg + &g.d * &v.rk,
    }
}

/// Trace-based classification of `g`; the determinant is one, so the trace
/// fixes the characteristic polynomial `t^2 - tr t + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EigenClass {
    Identity,
    /// `tr = 2`, `g != I`: the eigenvalue 1 with multiplicity two.
    UnipotentPositive,
    /// `tr >= 3`: real eigenvalues `r > 1 > 1/r > 0`.
    HyperbolicPositive,
    /// Everything else (`tr <= 1`): eigenvalues are not both real and positive.
    Other,
}

impl EigenClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            EigenClass::Identity => "identity",
            EigenClass::UnipotentPositive => "unipotent",
            EigenClass::HyperbolicPositive => "hyperbolic",
            EigenClass::Other => "other",
        }
    }

    pub fn has_positive_real_eigenvalues(&self) -> bool {
        !matches!(self, EigenClass::Other)
    }
}

pub fn classify_eigen(g: &SL2Matrix) -> EigenClass {
    let tr = g.trace();
    let two = BigInt::from(2);
    if tr > two {
        EigenClass::HyperbolicPositive
    } else if tr == two {
        if g.is_identity() {
            EigenClass::Identity
        } else {
            EigenClass::UnipotentPositive
        }
    } else {
        EigenClass::Other
    }
}

/// Checks `g^3 - (N+1) g^2 + (N+1) g - I = 0` with `N = tr g`, entry by entry.
pub fn cube_identity_check(g: &SL2Matrix) -> bool {
    let n1 = g.trace() + BigInt::one();
    let g2 = g.compose(g);
    let g3 = g2.compose(g);
    let lhs = |x: &BigInt, y: &BigInt, z: &BigInt, id: BigInt| x - &n1 * y + &n1 * z - id;
    lhs(&g3.a, &g2.a, &g.a, BigInt::one()).is_zero()
        && lhs(&g3.b, &g2.b, &g.b, BigInt::zero()).is_zero()
        && lhs(&g3.c, &g2.c, &g.c, BigInt::zero()).is_zero()
        && lhs(&g3.d, &g2.d, &g.d, BigInt::one()).is_zero()
}

/// Class of the shifted left twist `L_{F0}[1]`: `v -> v - chi(v0, v) v0`.
pub fn left_twist_matrix(v0: &KVector) -> Result<SL2Matrix, LatticeError> {
    v0.require_primitive()?;
    let (p, q) = (&v0.deg, &v0.rk);
    let pq = p * q;
    Ok(SL2Matrix {
        a: BigInt::one() - &pq,
        b: p * p,
        c: -(q * q),
        d: BigInt::one() + &pq,
    })
}

/// Class of the right twist `R_{F0}`: `v -> chi(v, v0) v0 - v`.
pub fn right_twist_matrix(v0: &KVector) -> Result<SL2Matrix, LatticeError> {
    v0.require_primitive()?;
    let (p, q) = (&v0.deg, &v0.rk);
    let pq = p * q;
    Ok(SL2Matrix {
        a: -(&pq + BigInt::one()),
        b: p * p,
        c: -(q * q),
        d: &pq - BigInt::one(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(a: i64, b: i64, c: i64, d: i64) -> SL2Matrix {
        SL2Matrix::new(a, b, c, d).unwrap()
    }

    fn kv(d: i64, r: i64) -> KVector {
        KVector::new(d, r)
    }

    #[test]
    fn chi_examples() {
        assert_eq!(chi(&kv(0, 1), &kv(0, 1)), BigInt::zero());
        for d in -5..=5 {
            assert_eq!(chi(&kv(0, 1), &kv(d, 1)), BigInt::from(d));
        }
        assert_eq!(chi(&kv(3, 1), &kv(5, -3)), BigInt::from(14));
    }

    #[test]
    fn rejects_non_unimodular() {
        assert_eq!(
            SL2Matrix::new(2, 0, 0, 1),
            Err(LatticeError::NotUnimodular(BigInt::from(2)))
        );
    }

    #[test]
    fn act_examples() {
        assert_eq!(act(&m(1, 7, 0, 1), &kv(0, 1)), kv(7, 1));
        assert_eq!(act(&m(3, -4, -2, 3), &kv(3, 1)), kv(5, -3));
    }

    #[test]
    fn inverse_and_trace() {
        assert_eq!(m(3, -4, -2, 3).inverse(), m(3, 4, 2, 3));
        assert_eq!(m(2, 1, 1, 1).trace(), BigInt::from(3));
        assert_eq!(m(2, 1, 1, 1).pow(-2), m(2, -3, -3, 5));
        assert_eq!(m(2, 1, 1, 1).pow(0), SL2Matrix::identity());
    }

    #[test]
    fn eigen_classes() {
        assert_eq!(classify_eigen(&m(1, 4, 0, 1)), EigenClass::UnipotentPositive);
        assert_eq!(classify_eigen(&m(3, -4, -2, 3)), EigenClass::HyperbolicPositive);
        assert_eq!(classify_eigen(&m(0, -1, 1, 0)), EigenClass::Other);
        assert_eq!(classify_eigen(&SL2Matrix::identity()), EigenClass::Identity);
        assert_eq!(classify_eigen(&SL2Matrix::minus_identity()), EigenClass::Other);
    }

    #[test]
    fn cube_identity_examples() {
        assert!(cube_identity_check(&m(1, 1, 0, 1)));
        assert!(cube_identity_check(&m(2, 1, 1, 1)));
    }

    #[test]
    fn left_twist_examples() {
        let l = left_twist_matrix(&kv(0, 1)).unwrap();
        assert_eq!(act(&l, &kv(1, 0)), kv(1, -1));
        let l3 = left_twist_matrix(&kv(3, 1)).unwrap();
        assert_eq!(&l3.a * &l3.d - &l3.b * &l3.c, BigInt::one());
        assert_eq!(act(&l3, &kv(3, 1)), kv(3, 1));
        assert!(left_twist_matrix(&kv(2, 4)).is_err());
    }

    #[test]
    fn right_twist_examples() {
        assert_eq!(right_twist_matrix(&kv(3, 1)).unwrap(), m(-4, 9, -1, 2));
        assert_eq!(act(&right_twist_matrix(&kv(3, 1)).unwrap(), &kv(3, 1)), kv(-3, -1));
        assert!(matches!(
            right_twist_matrix(&kv(0, 0)),
            Err(LatticeError::NotPrimitive(..))
        ));
    }

    fn arb_sl2() -> impl Strategy<Value = SL2Matrix> {
        let gens = vec![m(1, 1, 0, 1), m(1, -1, 0, 1), m(0, -1, 1, 0), m(1, 0, 1, 1)];
        prop::collection::vec(0usize..4, 0..12).prop_map(move |word| {
            word.iter()
                .fold(SL2Matrix::identity(), |acc, &i| acc.compose(&gens[i]))
        })
    }

    fn arb_vec() -> impl Strategy<Value = KVector> {
        (-50i64..50, -50i64..50).prop_map(|(d, r)| kv(d, r))
    }

    fn arb_primitive() -> impl Strategy<Value = KVector> {
        arb_vec().prop_filter("primitive", |v| v.is_primitive())
    }

    proptest! {
        #[test]
        fn chi_antisymmetric_bilinear(v in arb_vec(), w in arb_vec(), x in arb_vec(), k in -9i64..9) {
            prop_assert_eq!(chi(&v, &w), -chi(&w, &v));
            let kb = BigInt::from(k);
            prop_assert_eq!(chi(&v.scale(&kb).add(&x), &w), &kb * chi(&v, &w) + chi(&x, &w));
        }

        #[test]
        fn act_preserves_chi(g in arb_sl2(), v in arb_vec(), w in arb_vec()) {
            prop_assert_eq!(chi(&act(&g, &v), &act(&g, &w)), chi(&v, &w));
            prop_assert_eq!(act(&g, &act(&g.inverse(), &v)), v);
            prop_assert!(g.compose(&g.inverse()).is_identity());
        }

        #[test]
        fn cube_identity_everywhere(g in arb_sl2()) {
            prop_assert!(cube_identity_check(&g));
        }

        #[test]
        fn twists_fix_and_negate_base(v0 in arb_primitive(), w in arb_vec()) {
            let l = left_twist_matrix(&v0).unwrap();
            let r = right_twist_matrix(&v0).unwrap();
            prop_assert_eq!(act(&l, &v0), v0.clone());
            prop_assert_eq!(act(&r, &v0), v0.neg());
            // R = -(L^{-1})
            prop_assert_eq!(r.compose(&l), SL2Matrix::minus_identity());
            prop_assert_eq!(act(&l, &w), w.sub(&v0.scale(&chi(&v0, &w))));
        }

        #[test]
        fn hyperbolic_iff_trace_at_least_three(g in arb_sl2()) {
            let cls = classify_eigen(&g);
            prop_assert_eq!(cls == EigenClass::HyperbolicPositive, g.trace() >= BigInt::from(3));
            prop_assert_eq!(
                cls == EigenClass::UnipotentPositive,
                g.trace() == BigInt::from(2) && !g.is_identity()
            );
        }
    }
}
