//! F_q-isomorphism machinery.
//!
//! Three routes decide whether two curves are isomorphic over F_q itself:
//!
//! * [`scan_iso_witness`] — exhaustive search for a change of variables
//!   (u, r) between short-form curves. Ground truth for everything else.
//! * [`set_criterion_iso`] — closed-form test for y^2 = x(x-a)(x-b) pairs:
//!   the target root set must be one of three scaled candidate sets.
//! * [`fast_orbit_iso`] — Legendre fast path: mu must lie in the
//!   lambda-orbit and the scale u^2 demanded by the matching orbit
//!   expression must be a square.
//!
//! All three agree everywhere; the census uses the fast path and the test
//! suite holds the three against each other.

use std::fmt;

use crate::curves::{LegendreCurve, TwoParamCurve, WeierstrassCurve};
use crate::error::Error;
use crate::gf::{FieldElement, FieldSpec};

/// Change of variables (x, y) -> (u^2 x + r, u^3 y + u^2 s x + t), u != 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransformParams {
    u: FieldElement,
    r: FieldElement,
    s: FieldElement,
    t: FieldElement,
}

impl TransformParams {
    pub fn new(
        u: FieldElement,
        r: FieldElement,
        s: FieldElement,
        t: FieldElement,
    ) -> Result<TransformParams, Error> {
        let f = u.field();
        assert!(
            r.field() == f && s.field() == f && t.field() == f,
            "parameters from different fields"
        );
        if u.is_zero() {
            return Err(Error::ZeroScale);
        }
        Ok(TransformParams { u, r, s, t })
    }

    /// Scale and x-shift only: s = t = 0.
    pub fn shift_scale(u: FieldElement, r: FieldElement) -> Result<TransformParams, Error> {
        let zero = u.field().zero();
        TransformParams::new(u, r, zero.clone(), zero)
    }

    pub fn identity(field: &FieldSpec) -> TransformParams {
        TransformParams::shift_scale(field.one(), field.zero()).unwrap()
    }

    pub fn u(&self) -> &FieldElement {
        &self.u
    }
    pub fn r(&self) -> &FieldElement {
        &self.r
    }
    pub fn s(&self) -> &FieldElement {
        &self.s
    }
    pub fn t(&self) -> &FieldElement {
        &self.t
    }
}

/// Which of the three candidate set equalities fired in
/// [`set_criterion_iso`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatchedCase {
    /// {a/u^2, b/u^2} (r = 0)
    IdentitySet,
    /// {-a/u^2, (b-a)/u^2} (r = a)
    NegatedSet,
    /// {(a-b)/u^2, -b/u^2} (r = b)
    SwappedSet,
}

impl fmt::Display for MatchedCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MatchedCase::IdentitySet => "identity-set",
            MatchedCase::NegatedSet => "negated-set",
            MatchedCase::SwappedSet => "swapped-set",
        })
    }
}

/// Outcome of an isomorphism test. `params`, when present, actually maps
/// the source equation onto the target (checkable via [`apply_transform`]).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoWitness {
    pub isomorphic: bool,
    pub params: Option<TransformParams>,
    pub matched_case: Option<MatchedCase>,
}

impl IsoWitness {
    fn non_isomorphic() -> IsoWitness {
        IsoWitness {
            isomorphic: false,
            params: None,
            matched_case: None,
        }
    }

    fn found(params: TransformParams, matched_case: Option<MatchedCase>) -> IsoWitness {
        IsoWitness {
            isomorphic: true,
            params: Some(params),
            matched_case,
        }
    }
}

/// Applies the change of variables to a curve, returning the image curve
/// with coefficients solved from
///
/// ```text
/// u   a1' = a1 + 2s
/// u^2 a2' = a2 - s a1 + 3r - s^2
/// u^3 a3' = a3 + r a1 + 2t
/// u^4 a4' = a4 - s a3 + 2r a2 - (t + rs) a1 + 3r^2 - 2st
/// u^6 a6' = a6 + r a4 + r^2 a2 + r^3 - t a3 - t^2 - rt a1
/// ```
///
/// The j-invariant is preserved; the discriminant scales by u^-12.
pub fn apply_transform(w: &WeierstrassCurve, p: &TransformParams) -> WeierstrassCurve {
    let f = w.field();
    assert!(p.u.field() == f, "transform over a different field");
    let c = |n: i64| f.from_int(n);
    let (u, r, s, t) = (&p.u, &p.r, &p.s, &p.t);
    let ui = u.inv().expect("u nonzero by construction");
    let ui2 = ui.square();
    let ui3 = &ui2 * &ui;
    let ui4 = ui2.square();
    let ui6 = &ui4 * &ui2;

    let a1 = (w.a1() + c(2) * s) * &ui;
    let a2 = (w.a2() - s * w.a1() + c(3) * r - s.square()) * &ui2;
    let a3 = (w.a3() + r * w.a1() + c(2) * t) * &ui3;
    let a4 = (w.a4() - s * w.a3() + c(2) * r * w.a2() - (t + r * s) * w.a1() + c(3) * r.square()
        - c(2) * s * t)
        * &ui4;
    let a6 = (w.a6() + r * w.a4() + r.square() * w.a2() + r.pow(3)
        - t * w.a3()
        - t.square()
        - r * t * w.a1())
        * &ui6;
    WeierstrassCurve::new(a1, a2, a3, a4, a6)
}

/// Exhaustive witness search between short-form curves: scans u over F_q*
/// in canonical order and, for each u, the unique r consistent with the
/// first of the three equations
///
/// ```text
/// u^2 a2' = a2 + 3r
/// u^4 a4' = a4 + 2r a2 + 3r^2
/// u^6 a6' = a6 + r a4 + r^2 a2 + r^3
/// ```
///
/// (3 is invertible since char > 3, so fixing u pins r; the first hit is
/// therefore the same witness the full (u, r) double scan would return.)
/// Returns the first witness found, or a negative result after exhausting
/// the search space. Ground-truth oracle for the closed-form predicates.
pub fn scan_iso_witness(
    source: &WeierstrassCurve,
    target: &WeierstrassCurve,
) -> Result<IsoWitness, Error> {
    if source.field() != target.field() {
        return Err(Error::MixedFields);
    }
    if !source.is_short_form() || !target.is_short_form() {
        return Err(Error::NotShortForm);
    }
    let f = source.field();
    let three = f.from_int(3);
    let third = three.inv().expect("3 != 0 since char > 3");
    let (a2, a4, a6) = (source.a2(), source.a4(), source.a6());
    let (d2, d4, d6) = (target.a2(), target.a4(), target.a6());
    let two_a2 = f.from_int(2) * a2;

    for u in f.elements().skip(1) {
        let u2 = u.square();
        let u4 = u2.square();
        let u6 = &u4 * &u2;
        let r = (&u2 * d2 - a2) * &third;
        let r2 = r.square();
        if &u4 * d4 != a4 + &two_a2 * &r + &three * &r2 {
            continue;
        }
        if &u6 * d6 != a6 + &r * a4 + &r2 * a2 + &r2 * &r {
            continue;
        }
        return Ok(IsoWitness::found(
            TransformParams::shift_scale(u, r).unwrap(),
            None,
        ));
    }
    Ok(IsoWitness::non_isomorphic())
}

/// Closed-form test for y^2 = x(x-a)(x-b) against y^2 = x(x-d)(x-e): the
/// curves are isomorphic iff some u in F_q* makes {d, e} equal to one of
/// {a, b}/u^2, {-a, b-a}/u^2, {a-b, -b}/u^2. Each candidate pair is tried
/// in both matchings; a firing case yields the witness (u, r) with
/// r in {0, a, b} respectively.
pub fn set_criterion_iso(
    source: &TwoParamCurve,
    target: &TwoParamCurve,
) -> Result<IsoWitness, Error> {
    if source.field() != target.field() {
        return Err(Error::MixedFields);
    }
    let (a, b) = (source.a(), source.b());
    let (d, e) = (target.a(), target.b());
    let zero = source.field().zero();

    let cases = [
        (MatchedCase::IdentitySet, a.clone(), b.clone(), zero),
        (MatchedCase::NegatedSet, -a, b - a, a.clone()),
        (MatchedCase::SwappedSet, a - b, -b, b.clone()),
    ];
    for (case, first, second, r) in cases {
        for (m1, m2) in [(d, e), (e, d)] {
            // {m1, m2} = {first, second}/u^2 needs first/m1 = second/m2.
            if &first * m2 != &second * m1 {
                continue;
            }
            let u_sq = &first * m1.inv().expect("target roots nonzero");
            if let Some(u) = u_sq.sqrt() {
                debug_assert!(!u.is_zero());
                return Ok(IsoWitness::found(
                    TransformParams::shift_scale(u, r).unwrap(),
                    Some(case),
                ));
            }
        }
    }
    Ok(IsoWitness::non_isomorphic())
}

/// [`set_criterion_iso`] specialized to Legendre curves: a = 1, b = lambda
/// against d = 1, e = mu.
pub fn legendre_iso(source: &LegendreCurve, target: &LegendreCurve) -> Result<IsoWitness, Error> {
    set_criterion_iso(&source.to_two_param(), &target.to_two_param())
}

/// Legendre fast path. False unless mu lies in the lambda-orbit; otherwise
/// true iff, for some orbit expression equal to mu, the scale u^2 that
/// expression demands is a nonzero square:
///
/// ```text
/// mu = lambda               u^2 = 1
/// mu = 1 - lambda           u^2 = -1
/// mu = 1/lambda             u^2 = lambda
/// mu = (lambda-1)/lambda    u^2 = -lambda
/// mu = 1/(1-lambda)         u^2 = lambda - 1
/// mu = lambda/(lambda-1)    u^2 = 1 - lambda
/// ```
///
/// Every row whose expression equals mu is tried, so degenerate orbits
/// (j = 0 or 1728, where expressions collide) still answer correctly.
pub fn fast_orbit_iso(source: &LegendreCurve, mu: &FieldElement) -> bool {
    let f = source.field();
    assert!(mu.field() == f, "mu from a different field");
    assert!(
        !mu.is_zero() && !mu.is_one(),
        "mu must satisfy mu(mu - 1) != 0"
    );
    let one = f.one();
    let l = source.lambda();
    let l_inv = l.inv().unwrap();
    let lm1 = l - &one;
    let lm1_inv = lm1.inv().unwrap();

    let rows = [
        (l.clone(), one.clone()),
        (&one - l, -&one),
        (l_inv.clone(), l.clone()),
        (&lm1 * &l_inv, -l),
        (-&lm1_inv, lm1.clone()),
        (l * &lm1_inv, -&lm1),
    ];
    rows.iter()
        .any(|(expr, scale)| expr == mu && scale.jacobi() == 1)
}
