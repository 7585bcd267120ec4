//! Curve representations and their derived quantities.
//!
//! [`WeierstrassCurve`] carries general coefficients a1..a6 and computes the
//! b-quantities, the discriminant, and the j-invariant. [`LegendreCurve`] is
//! the normal form y^2 = x(x-1)(x-lambda); [`TwoParamCurve`] is the wider
//! family y^2 = x(x-a)(x-b) that the isomorphism criterion is stated for.

use crate::error::Error;
use crate::gf::{FieldElement, FieldSpec};

/// The four b-quantities derived from Weierstrass coefficients.
pub struct BQuantities {
    pub b2: FieldElement,
    pub b4: FieldElement,
    pub b6: FieldElement,
    pub b8: FieldElement,
}

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6.
///
/// Raw construction does not require a nonzero discriminant; the curve is
/// elliptic only when `discriminant()` is nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeierstrassCurve {
    a1: FieldElement,
    a2: FieldElement,
    a3: FieldElement,
    a4: FieldElement,
    a6: FieldElement,
}

impl WeierstrassCurve {
    pub fn new(
        a1: FieldElement,
        a2: FieldElement,
        a3: FieldElement,
        a4: FieldElement,
        a6: FieldElement,
    ) -> WeierstrassCurve {
        let f = a1.field();
        assert!(
            a2.field() == f && a3.field() == f && a4.field() == f && a6.field() == f,
            "coefficients belong to different fields"
        );
        WeierstrassCurve { a1, a2, a3, a4, a6 }
    }

    pub fn field(&self) -> &FieldSpec {
        self.a1.field()
    }

    pub fn a1(&self) -> &FieldElement {
        &self.a1
    }
    pub fn a2(&self) -> &FieldElement {
        &self.a2
    }
    pub fn a3(&self) -> &FieldElement {
        &self.a3
    }
    pub fn a4(&self) -> &FieldElement {
        &self.a4
    }
    pub fn a6(&self) -> &FieldElement {
        &self.a6
    }

    /// a1 = a3 = 0, the form the (u, r) isomorphism scan applies to.
    pub fn is_short_form(&self) -> bool {
        self.a1.is_zero() && self.a3.is_zero()
    }

    pub fn b_quantities(&self) -> BQuantities {
        let f = self.field();
        let c = |n: i64| f.from_int(n);
        let b2 = self.a1.square() + c(4) * &self.a2;
        let b4 = c(2) * &self.a4 + &self.a1 * &self.a3;
        let b6 = self.a3.square() + c(4) * &self.a6;
        let b8 = self.a1.square() * &self.a6 - &self.a1 * &self.a3 * &self.a4
            + c(4) * &self.a2 * &self.a6
            + &self.a2 * self.a3.square()
            - self.a4.square();
        BQuantities { b2, b4, b6, b8 }
    }

    /// Delta = -b2^2 b8 - 8 b4^3 - 27 b6^2 + 9 b2 b4 b6.
    pub fn discriminant(&self) -> FieldElement {
        let f = self.field();
        let c = |n: i64| f.from_int(n);
        let BQuantities { b2, b4, b6, b8 } = self.b_quantities();
        -(b2.square() * &b8) - c(8) * b4.pow(3) - c(27) * b6.square() + c(9) * b2 * b4 * b6
    }

    /// j = (b2^2 - 24 b4)^3 / Delta; fails on singular curves.
    pub fn j_invariant(&self) -> Result<FieldElement, Error> {
        let delta = self.discriminant();
        if delta.is_zero() {
            return Err(Error::SingularCurve);
        }
        let BQuantities { b2, b4, .. } = self.b_quantities();
        let c4 = b2.square() - self.field().from_int(24) * b4;
        Ok(c4.pow(3) * delta.inv().unwrap())
    }
}

/// A point on a curve, or the point at infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurvePoint {
    Infinity,
    Affine(FieldElement, FieldElement),
}

/// The Legendre curve y^2 = x(x-1)(x-lambda), lambda not in {0, 1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LegendreCurve {
    lambda: FieldElement,
}

impl LegendreCurve {
    pub fn new(lambda: FieldElement) -> Result<LegendreCurve, Error> {
        if lambda.is_zero() || lambda.is_one() {
            return Err(Error::SingularLambda(lambda.index()));
        }
        Ok(LegendreCurve { lambda })
    }

    pub fn lambda(&self) -> &FieldElement {
        &self.lambda
    }

    pub fn field(&self) -> &FieldSpec {
        self.lambda.field()
    }

    /// Expands x(x-1)(x-lambda): a2 = -(1 + lambda), a4 = lambda, rest zero.
    pub fn to_weierstrass(&self) -> WeierstrassCurve {
        let f = self.field();
        WeierstrassCurve::new(
            f.zero(),
            -(f.one() + &self.lambda),
            f.zero(),
            self.lambda.clone(),
            f.zero(),
        )
    }

    pub fn to_two_param(&self) -> TwoParamCurve {
        TwoParamCurve::new(self.field().one(), self.lambda.clone())
            .expect("lambda(lambda - 1) != 0")
    }

    /// j = 2^8 (lambda^2 - lambda + 1)^3 / (lambda^2 (lambda - 1)^2).
    pub fn j_invariant(&self) -> FieldElement {
        let f = self.field();
        let l = &self.lambda;
        let num = f.from_int(256) * (l.square() - l + f.one()).pow(3);
        let den = l.square() * (l - f.one()).square();
        num * den.inv().expect("denominator nonzero for admissible lambda")
    }

    /// The distinct values among lambda, 1/lambda, 1 - lambda,
    /// 1/(1 - lambda), lambda/(lambda - 1), (lambda - 1)/lambda, sorted
    /// canonically. Size is 6, or 3 when j = 1728, or 2 when j = 0.
    pub fn lambda_orbit(&self) -> Vec<FieldElement> {
        let f = self.field();
        let one = f.one();
        let l = &self.lambda;
        let l_inv = l.inv().unwrap();
        let lm1 = l - &one;
        let lm1_inv = lm1.inv().unwrap();
        let mut orbit = vec![
            l.clone(),
            l_inv.clone(),
            &one - l,
            -&lm1_inv, // 1/(1 - lambda)
            l * &lm1_inv,
            lm1 * l_inv,
        ];
        orbit.sort();
        orbit.dedup();
        debug_assert!(matches!(orbit.len(), 2 | 3 | 6));
        orbit
    }

    /// The four 2-division points: O, (0,0), (1,0), (lambda,0).
    pub fn two_torsion(&self) -> Vec<CurvePoint> {
        let f = self.field();
        vec![
            CurvePoint::Infinity,
            CurvePoint::Affine(f.zero(), f.zero()),
            CurvePoint::Affine(f.one(), f.zero()),
            CurvePoint::Affine(self.lambda.clone(), f.zero()),
        ]
    }
}

/// y^2 = x(x-a)(x-b) with ab(a-b) != 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoParamCurve {
    a: FieldElement,
    b: FieldElement,
}

impl TwoParamCurve {
    pub fn new(a: FieldElement, b: FieldElement) -> Result<TwoParamCurve, Error> {
        assert!(a.field() == b.field(), "parameters from different fields");
        if a.is_zero() || b.is_zero() || a == b {
            return Err(Error::SingularPair);
        }
        Ok(TwoParamCurve { a, b })
    }

    pub fn a(&self) -> &FieldElement {
        &self.a
    }

    pub fn b(&self) -> &FieldElement {
        &self.b
    }

    pub fn field(&self) -> &FieldSpec {
        self.a.field()
    }

    /// Expands x(x-a)(x-b): a2 = -(a + b), a4 = ab, rest zero.
    pub fn to_weierstrass(&self) -> WeierstrassCurve {
        let f = self.field();
        WeierstrassCurve::new(
            f.zero(),
            -(&self.a + &self.b),
            f.zero(),
            &self.a * &self.b,
            f.zero(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::prime_power;

    fn f(q: u64) -> FieldSpec {
        FieldSpec::for_order(q).unwrap()
    }

    fn legendre(q: u64, lambda: u64) -> LegendreCurve {
        let spec = f(q);
        LegendreCurve::new(spec.element_from_index(lambda).unwrap()).unwrap()
    }

    #[test]
    fn b_quantities_zero_curve() {
        let spec = f(7);
        let w = WeierstrassCurve::new(
            spec.zero(),
            spec.zero(),
            spec.zero(),
            spec.zero(),
            spec.zero(),
        );
        let b = w.b_quantities();
        assert!(b.b2.is_zero() && b.b4.is_zero() && b.b6.is_zero() && b.b8.is_zero());
    }

    #[test]
    fn b_quantities_of_embedded_legendre() {
        // a2 = -(1 + lambda), a4 = lambda gives b2 = -4(1 + lambda),
        // b4 = 2 lambda, b6 = 0, b8 = -lambda^2.
        for q in [7u64, 13, 25, 49] {
            let spec = f(q);
            for lam in spec.elements().skip(2) {
                let w = LegendreCurve::new(lam.clone()).unwrap().to_weierstrass();
                let b = w.b_quantities();
                assert_eq!(b.b2, spec.from_int(-4) * (spec.one() + &lam));
                assert_eq!(b.b4, spec.from_int(2) * &lam);
                assert!(b.b6.is_zero());
                assert_eq!(b.b8, -lam.square());
            }
        }
    }

    #[test]
    fn b_quantities_mod_7_example() {
        let w = legendre(7, 2).to_weierstrass();
        let spec = w.field().clone();
        let b = w.b_quantities();
        assert_eq!(b.b2, spec.from_int(2));
        assert_eq!(b.b4, spec.from_int(4));
        assert!(b.b6.is_zero());
        assert_eq!(b.b8, spec.from_int(3));
    }

    #[test]
    fn discriminant_of_legendre_form() {
        // Delta = 16 lambda^2 (lambda - 1)^2, swept exhaustively.
        for q in (5..=50).filter(|&q| matches!(prime_power(q), Some((p, _)) if p > 3)) {
            let spec = f(q);
            for lam in spec.elements().skip(2) {
                let w = LegendreCurve::new(lam.clone()).unwrap().to_weierstrass();
                let expected =
                    spec.from_int(16) * lam.square() * (&lam - spec.one()).square();
                assert_eq!(w.discriminant(), expected);
            }
        }
    }

    #[test]
    fn discriminant_singular_when_lambda_zero() {
        // lambda = 0 embedded by hand: y^2 = x^2(x - 1).
        let spec = f(7);
        let w = WeierstrassCurve::new(
            spec.zero(),
            spec.from_int(-1),
            spec.zero(),
            spec.zero(),
            spec.zero(),
        );
        assert!(w.discriminant().is_zero());
        assert_eq!(w.j_invariant(), Err(Error::SingularCurve));
    }

    #[test]
    fn discriminant_mod_13_example() {
        let w = legendre(13, 4).to_weierstrass();
        assert_eq!(w.discriminant(), w.field().from_int(3));
    }

    #[test]
    fn j_invariant_examples() {
        // lambda = 2 has j = 1728.
        let w = legendre(7, 2).to_weierstrass();
        assert_eq!(w.j_invariant().unwrap(), w.field().from_int(1728));
        assert_eq!(w.j_invariant().unwrap().index(), 6);

        // lambda^2 - lambda + 1 = 0 forces j = 0: lambda = 4 over F_13.
        assert!(legendre(13, 4).j_invariant().is_zero());
        assert!(legendre(7, 3).j_invariant().is_zero());

        // lambda = -1 has j = 1728.
        let spec = f(13);
        let lam = spec.from_int(-1);
        let e = LegendreCurve::new(lam).unwrap();
        assert_eq!(e.j_invariant(), spec.from_int(1728));
    }

    #[test]
    fn j_formula_matches_weierstrass_route() {
        for q in (5..=50).filter(|&q| matches!(prime_power(q), Some((p, _)) if p > 3)) {
            let spec = f(q);
            for lam in spec.elements().skip(2) {
                let e = LegendreCurve::new(lam).unwrap();
                assert_eq!(
                    e.j_invariant(),
                    e.to_weierstrass().j_invariant().unwrap(),
                    "lambda = {} over F_{q}",
                    e.lambda()
                );
            }
        }
    }

    #[test]
    fn to_weierstrass_examples() {
        let w = legendre(7, 2).to_weierstrass();
        let idx = |e: &FieldElement| e.index();
        assert_eq!(
            [idx(w.a1()), idx(w.a2()), idx(w.a3()), idx(w.a4()), idx(w.a6())],
            [0, 4, 0, 2, 0]
        );

        let spec = f(13);
        let e = LegendreCurve::new(spec.from_int(-1)).unwrap();
        let w = e.to_weierstrass();
        assert!(w.a2().is_zero());
        assert_eq!(*w.a4(), spec.from_int(-1));

        for lam in spec.elements().skip(2) {
            let w = LegendreCurve::new(lam).unwrap().to_weierstrass();
            assert!(!w.discriminant().is_zero());
        }
    }

    #[test]
    fn lambda_must_be_admissible() {
        let spec = f(7);
        assert_eq!(
            LegendreCurve::new(spec.zero()),
            Err(Error::SingularLambda(0))
        );
        assert_eq!(LegendreCurve::new(spec.one()), Err(Error::SingularLambda(1)));
    }

    #[test]
    fn orbit_examples() {
        let orbit = |q, lam| -> Vec<u64> {
            legendre(q, lam)
                .lambda_orbit()
                .iter()
                .map(|e| e.index())
                .collect()
        };
        assert_eq!(orbit(7, 2), vec![2, 4, 6]);
        assert_eq!(orbit(7, 3), vec![3, 5]);
        assert_eq!(orbit(13, 3), vec![3, 5, 6, 8, 9, 11]);
    }

    #[test]
    fn orbit_closure_and_fibers() {
        for q in (5..=50).filter(|&q| matches!(prime_power(q), Some((p, _)) if p > 3)) {
            let spec = f(q);
            let mut covered = 0u64;
            let mut seen = std::collections::BTreeSet::new();
            for lam in spec.elements().skip(2) {
                let e = LegendreCurve::new(lam.clone()).unwrap();
                let orbit = e.lambda_orbit();
                let j = e.j_invariant();
                for nu in &orbit {
                    assert!(!nu.is_zero() && !nu.is_one());
                    let e2 = LegendreCurve::new(nu.clone()).unwrap();
                    assert_eq!(e2.j_invariant(), j, "j constant on orbit");
                    assert_eq!(e2.lambda_orbit(), orbit, "orbit closed");
                }
                if seen.insert(orbit[0].index()) {
                    covered += orbit.len() as u64;
                }
            }
            // distinct orbits partition the q - 2 admissible values
            assert_eq!(covered, q - 2);
        }
    }

    #[test]
    fn two_torsion_points() {
        let e = legendre(7, 2);
        let spec = e.field().clone();
        assert_eq!(
            e.two_torsion(),
            vec![
                CurvePoint::Infinity,
                CurvePoint::Affine(spec.zero(), spec.zero()),
                CurvePoint::Affine(spec.one(), spec.zero()),
                CurvePoint::Affine(spec.from_int(2), spec.zero()),
            ]
        );
        assert_eq!(e.two_torsion().len(), 4);

        let f5 = f(5);
        let e = LegendreCurve::new(f5.from_int(-1)).unwrap();
        let xs: Vec<u64> = e
            .two_torsion()
            .iter()
            .filter_map(|pt| match pt {
                CurvePoint::Affine(x, _) => Some(x.index()),
                CurvePoint::Infinity => None,
            })
            .collect();
        assert_eq!(xs, vec![0, 1, 4]);
    }

    #[test]
    fn two_param_preconditions() {
        let spec = f(13);
        let el = |n: i64| spec.from_int(n);
        assert!(TwoParamCurve::new(el(1), el(3)).is_ok());
        assert_eq!(TwoParamCurve::new(el(0), el(3)), Err(Error::SingularPair));
        assert_eq!(TwoParamCurve::new(el(2), el(0)), Err(Error::SingularPair));
        assert_eq!(TwoParamCurve::new(el(2), el(2)), Err(Error::SingularPair));
    }
}
