//! Profiles `(g, v0)` and the numeric verdicts on their graded algebras.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use thiserror::Error;

use crate::lattice::{
    chi, classify_eigen, right_twist_matrix, EigenClass, KVector, SL2Matrix,
};
use crate::quadfield::{
    eigen_frame, fixed_points, fractional_linear, halfplane_test, EigenFrame, ProjPoint, QuadNum,
};
use crate::series::{dual_series, hilbert_series, RationalFunction};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("base vector {0} is not primitive")]
    NonPrimitiveBase(KVector),
    #[error("profile is not admissible: need positive real eigenvalues and M > 0 (N = {n}, M = {m})")]
    NotAdmissible { n: BigInt, m: BigInt },
    #[error("profile is not Koszul: need M >= N + 2 (N = {n}, M = {m})")]
    NotKoszul { n: BigInt, m: BigInt },
    #[error("precondition violated: {0}")]
    PreconditionViolated(&'static str),
    #[error("internal check failed: {0}")]
    Internal(String),
}

/// Whether the automorphism twisting the determinant is known to be trivial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum AlphaFlag {
    Trivial,
    #[default]
    NontrivialOrUnknown,
}

impl AlphaFlag {
    pub fn as_str(&self) -> &'static str {
        match self {
            AlphaFlag::Trivial => "trivial",
            AlphaFlag::NontrivialOrUnknown => "unknown",
        }
    }

    pub fn parse(s: &str) -> Option<AlphaFlag> {
        match s {
            "trivial" => Some(AlphaFlag::Trivial),
            "unknown" | "nontrivial" => Some(AlphaFlag::NontrivialOrUnknown),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Holds,
    Fails,
    BoundaryConditional,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub status: Status,
    pub note: Option<String>,
}

pub const DET_CONDITION_DEGREE_ONE: &str =
    "holds iff det F^2(E) is not isomorphic to (det F(E))^N (x) det(E)^-1; undecidable from K-theory";
pub const DET_CONDITION_QUADRATIC: &str = "holds iff det F^3(E) is not isomorphic to \
     (det F^2(E))^(N+1) (x) (det F(E))^(-N-1) (x) det(E); undecidable from K-theory";
pub const UNIPOTENT_AMPLE_NOTE: &str = "unipotent case: ampleness of the orbit is taken as given";

impl Verdict {
    pub fn holds() -> Self {
        Verdict { status: Status::Holds, note: None }
    }

    pub fn fails() -> Self {
        Verdict { status: Status::Fails, note: None }
    }

    pub fn boundary(note: &str) -> Self {
        Verdict {
            status: Status::BoundaryConditional,
            note: Some(note.to_string()),
        }
    }

    fn from_bool(b: bool) -> Self {
        if b {
            Self::holds()
        } else {
            Self::fails()
        }
    }

    pub fn is_holds(&self) -> bool {
        self.status == Status::Holds
    }

    /// Short form used in tables and JSON.
    pub fn label(&self) -> &'static str {
        match self.status {
            Status::Holds => "holds",
            Status::Fails => "fails",
            Status::BoundaryConditional => "boundary:det-condition",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// All verdicts for an admissible `(N, M)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerdictSet {
    pub degree_one: Verdict,
    pub quadratic: Verdict,
    pub koszul: Verdict,
    pub finitely_generated: Verdict,
    pub ample: Verdict,
    pub unipotent: bool,
}

/// `(N, M)` is admissible iff `N >= 2` and `M > 0`; with `det g = 1` this is
/// exactly "positive real eigenvalues and `chi(v0, g v0) > 0`".
pub fn admissible_nm(n: &BigInt, m: &BigInt) -> bool {
    *n >= BigInt::from(2) && m.is_positive()
}

pub fn degree_one_nm(n: &BigInt, m: &BigInt) -> Verdict {
    if *m >= n + 1 {
        Verdict::holds()
    } else if m == n {
        Verdict::boundary(DET_CONDITION_DEGREE_ONE)
    } else {
        Verdict::fails()
    }
}

pub fn quadratic_nm(n: &BigInt, m: &BigInt, alpha: AlphaFlag) -> Verdict {
    if *m >= n + 2 {
        Verdict::holds()
    } else if *m == n + 1 {
        match alpha {
            AlphaFlag::Trivial => Verdict::fails(),
            AlphaFlag::NontrivialOrUnknown => Verdict::boundary(DET_CONDITION_QUADRATIC),
        }
    } else {
        Verdict::fails()
    }
}

pub fn koszul_nm(n: &BigInt, m: &BigInt) -> Verdict {
    Verdict::from_bool(*m >= n + 2)
}

pub fn finitely_generated_nm(n: &BigInt, m: &BigInt) -> Verdict {
    Verdict::from_bool(*m >= n - 1)
}

pub fn ample_nm(n: &BigInt, m: &BigInt) -> Verdict {
    if *n == BigInt::from(2) {
        Verdict {
            status: Status::Holds,
            note: Some(UNIPOTENT_AMPLE_NOTE.to_string()),
        }
    } else {
        Verdict::from_bool(*m >= n - 1)
    }
}

/// Verdicts computed from `(N, M, alpha)` alone; `None` when inadmissible.
pub fn verdicts_nm(n: &BigInt, m: &BigInt, alpha: AlphaFlag) -> Option<VerdictSet> {
    admissible_nm(n, m).then(|| VerdictSet {
        degree_one: degree_one_nm(n, m),
        quadratic: quadratic_nm(n, m, alpha),
        koszul: koszul_nm(n, m),
        finitely_generated: finitely_generated_nm(n, m),
        ample: ample_nm(n, m),
        unipotent: *n == BigInt::from(2),
    })
}

/// K-theory data of an autoequivalence and a stable object.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraProfile {
    pub g: SL2Matrix,
    pub v0: KVector,
    pub n: BigInt,
    pub m: BigInt,
    pub alpha: AlphaFlag,
    pub class: EigenClass,
    pub frame: Option<EigenFrame>,
    pub theta_attract: Option<QuadNum>,
    pub theta_repel: Option<QuadNum>,
}

pub fn profile(g: &SL2Matrix, v0: &KVector, alpha: AlphaFlag) -> Result<AlgebraProfile, ClassifyError> {
    if !v0.is_primitive() {
        return Err(ClassifyError::NonPrimitiveBase(v0.clone()));
    }
    let n = g.trace();
    let m = chi(v0, &g.act(v0));
    let class = classify_eigen(g);
    let (mut frame, mut theta_attract, mut theta_repel) = (None, None, None);
    if class == EigenClass::HyperbolicPositive && m.is_positive() {
        let fr = eigen_frame(g, v0).map_err(|e| ClassifyError::Internal(e.to_string()))?;
        let (ta, tr) = (fr.theta_attract(), fr.theta_repel());
        let (p, q) = fixed_points(g).map_err(|e| ClassifyError::Internal(e.to_string()))?;
        let same_pair = (ta == p && tr == q) || (ta == q && tr == p);
        let fixed = fractional_linear(g, &ProjPoint::Finite(ta.clone()))
            == ProjPoint::Finite(ta.clone());
        if !same_pair || !fixed {
            return Err(ClassifyError::Internal("eigenvector slopes are not the fixed points".into()));
        }
        frame = Some(fr);
        theta_attract = Some(ta);
        theta_repel = Some(tr);
    }
    Ok(AlgebraProfile {
        g: g.clone(),
        v0: v0.clone(),
        n,
        m,
        alpha,
        class,
        frame,
        theta_attract,
        theta_repel,
    })
}

impl AlgebraProfile {
    pub fn is_admissible(&self) -> bool {
        self.class.has_positive_real_eigenvalues()
            && self.class != EigenClass::Identity
            && self.m.is_positive()
    }

    fn require_admissible(&self) -> Result<(), ClassifyError> {
        if self.is_admissible() {
            Ok(())
        } else {
            Err(ClassifyError::NotAdmissible {
                n: self.n.clone(),
                m: self.m.clone(),
            })
        }
    }

    pub fn is_unipotent(&self) -> bool {
        self.class == EigenClass::UnipotentPositive
    }

    /// Whether `v0` itself lies in the heart of slope `theta_attract`; when
    /// false it lies there after the shift `[1]` and all verdicts refer to the
    /// shifted object.
    pub fn in_heart(&self) -> Option<bool> {
        self.theta_attract.as_ref().map(|t| halfplane_test(t, &self.v0))
    }

    pub fn hilbert(&self) -> RationalFunction<BigRational> {
        hilbert_series(&self.n, &self.m)
    }

    pub fn hilbert_coefficients(&self, horizon: usize) -> Vec<BigInt> {
        self.hilbert()
            .coefficients(horizon)
            .into_iter()
            .map(|c| c.to_integer())
            .collect()
    }

    pub fn degree_one_generated(&self) -> Result<Verdict, ClassifyError> {
        self.require_admissible()?;
        Ok(degree_one_nm(&self.n, &self.m))
    }

    pub fn quadratic(&self) -> Result<Verdict, ClassifyError> {
        self.require_admissible()?;
        Ok(quadratic_nm(&self.n, &self.m, self.alpha))
    }

    pub fn koszul(&self) -> Result<Verdict, ClassifyError> {
        self.require_admissible()?;
        Ok(koszul_nm(&self.n, &self.m))
    }

    pub fn finitely_generated(&self) -> Result<Verdict, ClassifyError> {
        self.require_admissible()?;
        Ok(finitely_generated_nm(&self.n, &self.m))
    }

    pub fn ample(&self) -> Result<Verdict, ClassifyError> {
        self.require_admissible()?;
        if !self.is_unipotent() && self.frame.is_none() {
            return Err(ClassifyError::Internal("hyperbolic profile without frame".into()));
        }
        Ok(ample_nm(&self.n, &self.m))
    }

    pub fn verdicts(&self) -> Result<VerdictSet, ClassifyError> {
        self.require_admissible()?;
        verdicts_nm(&self.n, &self.m, self.alpha)
            .ok_or_else(|| ClassifyError::Internal("admissibility disagrees".into()))
    }

    /// The profile `(R_{v0} g^-1, v0)` of the quadratic dual algebra.
    pub fn koszul_dual(&self) -> Result<AlgebraProfile, ClassifyError> {
        if !self.koszul()?.is_holds() {
            return Err(ClassifyError::NotKoszul {
                n: self.n.clone(),
                m: self.m.clone(),
            });
        }
        let rho = right_twist_matrix(&self.v0).map_err(|e| ClassifyError::Internal(e.to_string()))?;
        let g_dual = rho.compose(&self.g.inverse());
        let dual = profile(&g_dual, &self.v0, AlphaFlag::NontrivialOrUnknown)?;
        let check = |ok: bool, what: &str| {
            if ok {
                Ok(())
            } else {
                Err(ClassifyError::Internal(format!("dual profile: {what}")))
            }
        };
        check(dual.n == &self.m - &self.n, "trace is not M - N")?;
        check(dual.m == self.m, "chi(v0, g v0) is not M")?;
        let expected = dual_series(&self.hilbert()).map_err(|e| ClassifyError::Internal(e.to_string()))?;
        check(dual.hilbert() == expected, "Hilbert series is not H(-t)^-1")?;
        Ok(dual)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositivityReport {
    pub condition_i: bool,
    pub condition_i_prime: bool,
    pub condition_ii: bool,
    /// `chi(v, g^n v)` for `n = 1..=horizon`.
    pub scan: Vec<BigInt>,
}

/// Positivity of `chi(v, g^n v)`: exactly for the eigenvalue condition, by
/// scanning to `horizon` for the asymptotic ones. "Sufficiently large n" is
/// judged on the second half of the window.
pub fn positivity_report(g: &SL2Matrix, v: &KVector, horizon: usize) -> PositivityReport {
    let mut scan = Vec::with_capacity(horizon);
    let mut w = v.clone();
    for _ in 0..horizon {
        w = g.act(&w);
        scan.push(chi(v, &w));
    }
    let class = classify_eigen(g);
    let condition_ii = class.has_positive_real_eigenvalues() && chi(v, &g.act(v)).is_positive();
    let condition_i_prime = scan.iter().all(|x| x.is_positive());
    let condition_i = scan[horizon / 2..].iter().all(|x| x.is_positive());
    PositivityReport {
        condition_i,
        condition_i_prime,
        condition_ii,
        scan,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthReport {
    pub i: bool,
    pub ii: bool,
    pub iii: bool,
    pub iv: bool,
}

impl GrowthReport {
    pub fn agree(&self) -> bool {
        self.i == self.ii && self.ii == self.iii && self.iii == self.iv
    }
}

pub const GROWTH_HORIZON: usize = 40;

/// The four equivalent growth conditions on `chi(v, g^n v) - tr(g^n)`.
pub fn growth_report(g: &SL2Matrix, v: &KVector) -> Result<GrowthReport, ClassifyError> {
    growth_report_with_horizon(g, v, GROWTH_HORIZON)
}

pub fn growth_report_with_horizon(
    g: &SL2Matrix,
    v: &KVector,
    horizon: usize,
) -> Result<GrowthReport, ClassifyError> {
    let class = classify_eigen(g);
    if !matches!(class, EigenClass::UnipotentPositive | EigenClass::HyperbolicPositive) {
        return Err(ClassifyError::PreconditionViolated("g must be unipotent or hyperbolic"));
    }
    let n = g.trace();
    let m = chi(v, &g.act(v));
    if !m.is_positive() {
        return Err(ClassifyError::PreconditionViolated("chi(v, g v) must be positive"));
    }
    let horizon = horizon.max(2);
    let unipotent = class == EigenClass::UnipotentPositive;
    let iii = &m * &m > &n * &n - BigInt::from(4);
    let iv = unipotent || m >= n;

    // d_k = chi(v, g^k v) - tr(g^k) from the closed forms.
    let diffs: Vec<QuadNum> = if unipotent {
        (1..=horizon)
            .map(|k| QuadNum::integer(BigInt::from(k) * &m - BigInt::from(2)))
            .collect()
    } else {
        let s = QuadNum::sqrt_of(&(&n * &n - BigInt::from(4)));
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let r = (QuadNum::integer(n.clone()) + s.clone()).scale(&half);
        let r_inv = r.inv().expect("eigenvalue is nonzero");
        let gap = &r - &r_inv;
        let mq = QuadNum::integer(m.clone());
        let (mut rk, mut rk_inv) = (QuadNum::one(), QuadNum::one());
        (1..=horizon)
            .map(|_| {
                rk = &rk * &r;
                rk_inv = &rk_inv * &r_inv;
                let chi_k = &(&mq * &(&rk - &rk_inv)) / &gap;
                chi_k - (&rk + &rk_inv)
            })
            .collect()
    };
    let ii = diffs.iter().any(|d| !d.is_negative());
    let last = &diffs[horizon - 1];
    let prev = &diffs[horizon - 2];
    let i = last.is_positive() && (last - prev).is_positive();
    Ok(GrowthReport { i, ii, iii, iv })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use proptest::prelude::*;

    fn mat(a: i64, b: i64, c: i64, d: i64) -> SL2Matrix {
        SL2Matrix::new(a, b, c, d).unwrap()
    }

    fn bi(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn st(v: &Result<Verdict, ClassifyError>) -> Status {
        v.as_ref().unwrap().status
    }

    #[test]
    fn profile_examples() {
        let p = profile(&mat(1, 4, 0, 1), &KVector::new(0, 1), AlphaFlag::Trivial).unwrap();
        assert_eq!((p.n.clone(), p.m.clone()), (bi(2), bi(4)));
        assert_eq!(p.class, EigenClass::UnipotentPositive);
        assert!(p.frame.is_none());

        let p = profile(&mat(3, -4, -2, 3), &KVector::new(3, 1), AlphaFlag::Trivial).unwrap();
        assert_eq!((p.n.clone(), p.m.clone()), (bi(6), bi(14)));
        assert_eq!(p.theta_attract, Some(QuadNum::from_ints(2, 0, 1).unwrap()));
        assert_eq!(p.in_heart(), Some(true));

        let p = profile(&mat(2, 1, 1, 1), &KVector::new(0, 1), AlphaFlag::Trivial).unwrap();
        assert_eq!((p.n.clone(), p.m.clone()), (bi(3), bi(1)));

        assert_eq!(
            profile(&mat(2, 1, 1, 1), &KVector::new(2, 4), AlphaFlag::Trivial),
            Err(ClassifyError::NonPrimitiveBase(KVector::new(2, 4)))
        );
    }

    #[test]
    fn inadmissible_profiles_are_built_but_rejected() {
        let p = profile(&mat(2, 1, 1, 1), &KVector::new(1, 0), AlphaFlag::Trivial).unwrap();
        assert_eq!(p.m, bi(-1));
        assert!(!p.is_admissible());
        assert!(matches!(p.koszul(), Err(ClassifyError::NotAdmissible { .. })));
    }

    #[test]
    fn verdict_examples() {
        let p = |a, b, c, d, v: (i64, i64), al| profile(&mat(a, b, c, d), &KVector::new(v.0, v.1), al).unwrap();
        let line4 = p(1, 4, 0, 1, (0, 1), AlphaFlag::Trivial);
        assert_eq!(st(&line4.degree_one_generated()), Status::Holds);
        assert_eq!(st(&line4.quadratic()), Status::Holds);
        assert_eq!(st(&line4.koszul()), Status::Holds);
        let line3 = p(1, 3, 0, 1, (0, 1), AlphaFlag::Trivial);
        assert_eq!(st(&line3.quadratic()), Status::Fails);
        let sq2 = p(3, -4, -2, 3, (3, 1), AlphaFlag::Trivial);
        for v in [sq2.degree_one_generated(), sq2.quadratic(), sq2.koszul(), sq2.ample()] {
            assert_eq!(st(&v), Status::Holds);
        }
        let gold = p(2, 1, 1, 1, (0, 1), AlphaFlag::Trivial);
        assert_eq!(st(&gold.degree_one_generated()), Status::Fails);
        assert_eq!(st(&gold.finitely_generated()), Status::Fails);
        assert_eq!(st(&gold.ample()), Status::Fails);
        let edge = p(2, -1, -3, 2, (1, 0), AlphaFlag::Trivial);
        assert_eq!((edge.n.clone(), edge.m.clone()), (bi(4), bi(3)));
        assert_eq!(st(&edge.finitely_generated()), Status::Holds);
        assert_eq!(st(&edge.ample()), Status::Holds);
        let uni1 = p(1, 1, 0, 1, (0, 1), AlphaFlag::Trivial);
        assert_eq!(st(&uni1.finitely_generated()), Status::Holds);
        assert!(uni1.ample().unwrap().note.is_some());
    }

    #[test]
    fn boundary_cases() {
        assert_eq!(
            quadratic_nm(&bi(3), &bi(4), AlphaFlag::NontrivialOrUnknown).status,
            Status::BoundaryConditional
        );
        assert_eq!(quadratic_nm(&bi(3), &bi(4), AlphaFlag::Trivial).status, Status::Fails);
        assert_eq!(koszul_nm(&bi(3), &bi(4)).status, Status::Fails);
        let d1 = degree_one_nm(&bi(5), &bi(5));
        assert_eq!(d1.status, Status::BoundaryConditional);
        assert!(d1.note.unwrap().contains("det F^2(E)"));
        assert_eq!(degree_one_nm(&bi(5), &bi(5)).label(), "boundary:det-condition");
    }

    #[test]
    fn koszul_dual_example() {
        let p = profile(&mat(3, -4, -2, 3), &KVector::new(3, 1), AlphaFlag::Trivial).unwrap();
        let d = p.koszul_dual().unwrap();
        assert_eq!(d.g, mat(6, 11, 1, 2));
        assert_eq!((d.n.clone(), d.m.clone()), (bi(8), bi(14)));
        let line = profile(&mat(1, 4, 0, 1), &KVector::new(0, 1), AlphaFlag::Trivial).unwrap();
        let dd = line.koszul_dual().unwrap();
        assert_eq!(dd.hilbert(), line.hilbert());
        let gold = profile(&mat(2, 1, 1, 1), &KVector::new(0, 1), AlphaFlag::Trivial).unwrap();
        assert!(matches!(gold.koszul_dual(), Err(ClassifyError::NotKoszul { .. })));
    }

    #[test]
    fn positivity_examples() {
        let r = positivity_report(&mat(2, 1, 1, 1), &KVector::new(0, 1), 10);
        assert!(r.condition_i && r.condition_i_prime && r.condition_ii);
        assert_eq!(r.scan[..5], [bi(1), bi(3), bi(8), bi(21), bi(55)]);
        let r = positivity_report(&mat(-2, -1, -1, -1), &KVector::new(0, 1), 10);
        assert!(!r.condition_i && !r.condition_i_prime && !r.condition_ii);
        assert_eq!(r.scan[..3], [bi(-1), bi(3), bi(-8)]);
        let r = positivity_report(&SL2Matrix::identity(), &KVector::new(1, 1), 10);
        assert!(!r.condition_ii);
    }

    #[test]
    fn growth_examples() {
        let all = |r: GrowthReport| r.i && r.ii && r.iii && r.iv;
        assert!(all(growth_report(&mat(1, 1, 0, 1), &KVector::new(0, 1)).unwrap()));
        assert!(all(growth_report(&mat(3, -4, -2, 3), &KVector::new(3, 1)).unwrap()));
        let r = growth_report(&mat(2, 1, 1, 1), &KVector::new(0, 1)).unwrap();
        assert!(!r.i && !r.ii && !r.iii && !r.iv);
        assert!(matches!(
            growth_report(&mat(2, 1, 1, 1), &KVector::new(1, 0)),
            Err(ClassifyError::PreconditionViolated(_))
        ));
    }

    fn small_matrix() -> impl Strategy<Value = SL2Matrix> {
        (-4i64..=4, -4i64..=4, -4i64..=4, -4i64..=4)
            .prop_filter_map("det 1", |(a, b, c, d)| SL2Matrix::new(a, b, c, d).ok())
    }

    proptest! {
        #[test]
        fn verdict_monotonicity(n in 2i64..30, m in 1i64..40, trivial in any::<bool>()) {
            let alpha = if trivial { AlphaFlag::Trivial } else { AlphaFlag::NontrivialOrUnknown };
            let v = verdicts_nm(&bi(n), &bi(m), alpha).unwrap();
            if v.koszul.is_holds() {
                prop_assert!(v.quadratic.is_holds());
            }
            if v.quadratic.is_holds() {
                prop_assert!(v.degree_one.is_holds());
            }
            if v.degree_one.is_holds() || v.quadratic.is_holds() || v.koszul.is_holds() {
                prop_assert!(v.finitely_generated.is_holds());
            }
        }

        #[test]
        fn koszul_iff_dual_series_nonnegative(n in 2i64..=30, m in 1i64..=30) {
            let d = dual_series(&hilbert_series(&bi(n), &bi(m))).unwrap();
            let nonneg = d.coefficients(60).iter().all(|c| *c >= BigRational::zero());
            prop_assert_eq!(koszul_nm(&bi(n), &bi(m)).is_holds(), nonneg);
        }

        #[test]
        fn positivity_equivalence(g in small_matrix(), x in -4i64..=4, y in -4i64..=4) {
            prop_assume!(x != 0 || y != 0);
            let r = positivity_report(&g, &KVector::new(x, y), 40);
            prop_assert_eq!(r.condition_ii, r.condition_i_prime);
            prop_assert_eq!(r.condition_ii, r.condition_i);
        }

        #[test]
        fn growth_agreement(g in small_matrix(), x in -4i64..=4, y in -4i64..=4) {
            if let Ok(r) = growth_report(&g, &KVector::new(x, y)) {
                prop_assert!(r.agree(), "{:?}", r);
            }
        }

        #[test]
        fn dual_postconditions(g in small_matrix(), x in -4i64..=4, y in -4i64..=4) {
            let v = KVector::new(x, y);
            prop_assume!(v.is_primitive());
            let p = profile(&g, &v, AlphaFlag::Trivial).unwrap();
            if p.koszul().map(|k| k.is_holds()).unwrap_or(false) {
                let d = p.koszul_dual().unwrap();
                prop_assert_eq!(d.n, &p.m - &p.n);
                prop_assert_eq!(d.m, p.m);
            }
        }
    }
}
