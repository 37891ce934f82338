//! Contact-condition verification for explicit rational curves in P³.
//!
//! The contact structure on P³ is induced by a fixed symplectic form ω on
//! the underlying C⁴: the distribution plane at a point p consists of the
//! directions z with ω(p, z) = 0. A parametrized rational curve is a
//! contact (Legendrian) curve exactly when its tangent directions lie in
//! the distribution, which for a homogeneous parametrization f(s:t) is the
//! single polynomial identity ω(∂_s f, ∂_t f) ≡ 0.
//!
//! The module also constructs the model family of contact curves indexed by
//! coprime exponent pairs, and measures how sharply a distribution plane
//! touches the curve it is attached to: the vanishing order of the plane
//! section pulled back through f.

use crate::exactmath::{ExactError, HomogPoly2, P1Point, Rational};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LegendrianError {
    #[error("curve coordinates must all have the same degree")]
    MixedDegrees,
    #[error("curve degree must be at least 1")]
    DegreeZero,
    #[error("curve coordinates must not all be identically zero")]
    ZeroCurve,
    #[error("model curve parameters must satisfy k > l ≥ 1 with gcd(k, l) = 1")]
    DomainError,
    #[error("all curve coordinates vanish at the given point")]
    DegenerateParametrization,
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// The fixed symplectic form on C⁴ used throughout: block-diagonal with
/// two standard 2×2 blocks.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SymplecticForm;

impl SymplecticForm {
    pub fn matrix() -> [[Rational; 4]; 4] {
        let row = |values: [i64; 4]| values.map(Rational::from_int);
        [
            row([0, 1, 0, 0]),
            row([-1, 0, 0, 0]),
            row([0, 0, 0, 1]),
            row([0, 0, -1, 0]),
        ]
    }

    /// ω(u, v) for numeric vectors.
    pub fn pairing(u: &[Rational; 4], v: &[Rational; 4]) -> Rational {
        let m = Self::matrix();
        let mut total = Rational::zero();
        for i in 0..4 {
            for j in 0..4 {
                if !m[i][j].is_zero() {
                    total = total + m[i][j].clone() * &u[i] * &v[j];
                }
            }
        }
        total
    }

    /// ω(u, v) for vectors of homogeneous polynomials of one common degree
    /// per side; the result has the sum of the two degrees.
    pub fn pairing_poly(u: &[HomogPoly2; 4], v: &[HomogPoly2; 4]) -> HomogPoly2 {
        let m = Self::matrix();
        let mut total = HomogPoly2::zero(u[0].degree() + v[0].degree());
        for i in 0..4 {
            for j in 0..4 {
                if !m[i][j].is_zero() {
                    total = total.add(&u[i].mul(&v[j]).scale(&m[i][j]));
                }
            }
        }
        total
    }
}

/// A rational curve in P³ given by four homogeneous coordinates of one
/// common degree d ≥ 1, not all identically zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalCurveParam {
    coords: [HomogPoly2; 4],
}

impl RationalCurveParam {
    pub fn new(coords: [HomogPoly2; 4]) -> Result<RationalCurveParam, LegendrianError> {
        let degree = coords[0].degree();
        if coords.iter().any(|c| c.degree() != degree) {
            return Err(LegendrianError::MixedDegrees);
        }
        if degree == 0 {
            return Err(LegendrianError::DegreeZero);
        }
        if coords.iter().all(HomogPoly2::is_zero) {
            return Err(LegendrianError::ZeroCurve);
        }
        Ok(RationalCurveParam { coords })
    }

    pub fn coords(&self) -> &[HomogPoly2; 4] {
        &self.coords
    }

    pub fn degree(&self) -> usize {
        self.coords[0].degree()
    }

    pub fn eval(&self, point: &P1Point) -> [Rational; 4] {
        [
            self.coords[0].eval(point.a(), point.b()),
            self.coords[1].eval(point.a(), point.b()),
            self.coords[2].eval(point.a(), point.b()),
            self.coords[3].eval(point.a(), point.b()),
        ]
    }

    /// Precompose with an invertible substitution (s,t) ↦ m·(s,t); the
    /// image curve is unchanged as a subset of P³.
    pub fn compose_linear(&self, m: &[[Rational; 2]; 2]) -> RationalCurveParam {
        RationalCurveParam {
            coords: [
                self.coords[0].compose_linear(m),
                self.coords[1].compose_linear(m),
                self.coords[2].compose_linear(m),
                self.coords[3].compose_linear(m),
            ],
        }
    }
}

/// ω(∂_s f, ∂_t f): a homogeneous polynomial of degree 2d−2, identically
/// zero exactly when f parametrizes a contact curve.
pub fn contact_pairing(f: &RationalCurveParam) -> HomogPoly2 {
    let fs = [
        f.coords[0].partial_s(),
        f.coords[1].partial_s(),
        f.coords[2].partial_s(),
        f.coords[3].partial_s(),
    ];
    let ft = [
        f.coords[0].partial_t(),
        f.coords[1].partial_t(),
        f.coords[2].partial_t(),
        f.coords[3].partial_t(),
    ];
    SymplecticForm::pairing_poly(&fs, &ft)
}

pub fn is_contact(f: &RationalCurveParam) -> bool {
    contact_pairing(f).is_zero()
}

/// The model contact curve of degree k+l for coprime k > l ≥ 1:
/// (s^{k+l} : (k−l)/(k+l)·t^{k+l} : s^l t^k : s^k t^l).
pub fn buczynski(k: u32, l: u32) -> Result<RationalCurveParam, LegendrianError> {
    if !(k > l && l >= 1) || num_integer::gcd(k, l) != 1 {
        return Err(LegendrianError::DomainError);
    }
    let d = (k + l) as usize;
    let ratio = Rational::new((k as i64 - l as i64).into(), ((k + l) as i64).into())
        .expect("k + l is positive");
    Ok(RationalCurveParam {
        coords: [
            HomogPoly2::monomial(d, d, Rational::one()),
            HomogPoly2::monomial(d, 0, ratio),
            HomogPoly2::monomial(d, l as usize, Rational::one()),
            HomogPoly2::monomial(d, k as usize, Rational::one()),
        ],
    })
}

/// Coefficients (c_0..c_3) of the distribution plane Σ c_i z_i = 0 at the
/// image point (a_0:a_1:a_2:a_3) = f(point): the tuple (a_1, −a_0, a_3, −a_2).
pub fn contact_plane(
    f: &RationalCurveParam,
    point: &P1Point,
) -> Result<[Rational; 4], LegendrianError> {
    let a = f.eval(point);
    if a.iter().all(Rational::is_zero) {
        return Err(LegendrianError::DegenerateParametrization);
    }
    Ok([a[1].clone(), -a[0].clone(), a[3].clone(), -a[2].clone()])
}

/// Vanishing order of the distribution-plane section along the curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Osculation {
    /// The section vanishes to this finite order at the point.
    Order(u32),
    /// The section is identically zero: the curve lies inside its own
    /// distribution plane (planar degenerate case).
    Total,
}

impl fmt::Display for Osculation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Osculation::Order(m) => write!(f, "{}", m),
            Osculation::Total => write!(f, "total"),
        }
    }
}

/// Order of tangency between the curve and its distribution plane at
/// f(point): the root multiplicity at `point` of the plane equation pulled
/// back through f. For a contact curve this is at least 3 at every
/// nondegenerate point.
pub fn osculation_multiplicity(
    f: &RationalCurveParam,
    point: &P1Point,
) -> Result<Osculation, LegendrianError> {
    let plane = contact_plane(f, point)?;
    let mut section = HomogPoly2::zero(f.degree());
    for (coeff, coord) in plane.iter().zip(f.coords.iter()) {
        section = section.add(&coord.scale(coeff));
    }
    if section.is_zero() {
        return Ok(Osculation::Total);
    }
    Ok(Osculation::Order(section.root_multiplicity(point)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into()).unwrap()
    }

    fn point(a: i64, b: i64) -> P1Point {
        P1Point::new(Rational::from_int(a), Rational::from_int(b)).unwrap()
    }

    fn line_st() -> RationalCurveParam {
        RationalCurveParam::new([
            HomogPoly2::monomial(1, 1, Rational::one()),
            HomogPoly2::monomial(1, 0, Rational::one()),
            HomogPoly2::zero(1),
            HomogPoly2::zero(1),
        ])
        .unwrap()
    }

    fn det4(m: &[[Rational; 4]; 4]) -> Rational {
        // Laplace expansion along the first row, minors by index filtering.
        fn minor(m: &[[Rational; 4]; 4], rows: &[usize], cols: &[usize]) -> Rational {
            if rows.len() == 1 {
                return m[rows[0]][cols[0]].clone();
            }
            let mut total = Rational::zero();
            for (k, &c) in cols.iter().enumerate() {
                let sub_cols: Vec<usize> =
                    cols.iter().copied().filter(|&x| x != c).collect();
                let term = m[rows[0]][c].clone() * minor(m, &rows[1..], &sub_cols);
                total = if k % 2 == 0 { total + term } else { total - term };
            }
            total
        }
        minor(m, &[0, 1, 2, 3], &[0, 1, 2, 3])
    }

    #[test]
    fn form_is_antisymmetric_with_unit_determinant() {
        let m = SymplecticForm::matrix();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(m[i][j], -m[j][i].clone());
            }
        }
        assert_eq!(det4(&m), Rational::one());
    }

    #[test]
    fn twisted_cubic_pairing_cancels_term_by_term() {
        // (s³, t³/3, st², s²t): the pairing expands to
        // 3s²·t² − 2st·2st + t²·s² = 0.
        let f = buczynski(2, 1).unwrap();
        let pairing = contact_pairing(&f);
        assert_eq!(pairing.degree(), 4);
        assert!(pairing.is_zero());
        assert!(is_contact(&f));
    }

    #[test]
    fn line_has_constant_pairing_one() {
        let f = line_st();
        let pairing = contact_pairing(&f);
        assert_eq!(pairing.degree(), 0);
        assert_eq!(*pairing.coeff(0), Rational::one());
        assert!(!is_contact(&f));
    }

    #[test]
    fn plane_curves_with_proportional_first_coordinates_are_contact() {
        // f_2 = f_3 = 0 and f_1 = c·f_0 make both products in the pairing
        // cancel identically.
        let f0 = HomogPoly2::new(vec![rat(1, 1), rat(-2, 1), rat(3, 1)]);
        let f = RationalCurveParam::new([
            f0.clone(),
            f0.scale(&rat(5, 1)),
            HomogPoly2::zero(2),
            HomogPoly2::zero(2),
        ])
        .unwrap();
        assert!(is_contact(&f));
    }

    #[test]
    fn model_curve_construction_and_rejections() {
        let cubic = buczynski(2, 1).unwrap();
        assert_eq!(cubic.degree(), 3);
        assert_eq!(
            cubic.coords()[0],
            HomogPoly2::monomial(3, 3, Rational::one())
        );
        assert_eq!(cubic.coords()[1], HomogPoly2::monomial(3, 0, rat(1, 3)));
        assert_eq!(
            cubic.coords()[2],
            HomogPoly2::monomial(3, 1, Rational::one())
        );
        assert_eq!(
            cubic.coords()[3],
            HomogPoly2::monomial(3, 2, Rational::one())
        );

        let quartic = buczynski(3, 1).unwrap();
        assert_eq!(quartic.degree(), 4);
        assert_eq!(quartic.coords()[1], HomogPoly2::monomial(4, 0, rat(1, 2)));

        assert_eq!(buczynski(4, 2).unwrap_err(), LegendrianError::DomainError);
        assert_eq!(buczynski(1, 1).unwrap_err(), LegendrianError::DomainError);
        assert_eq!(buczynski(1, 2).unwrap_err(), LegendrianError::DomainError);
        assert_eq!(buczynski(3, 0).unwrap_err(), LegendrianError::DomainError);
    }

    #[test]
    fn whole_coprime_family_is_contact() {
        let mut checked = 0;
        for k in 2..=11u32 {
            for l in 1..k {
                if k + l <= 12 && num_integer::gcd(k, l) == 1 {
                    assert!(is_contact(&buczynski(k, l).unwrap()), "k={} l={}", k, l);
                    checked += 1;
                }
            }
        }
        assert!(checked >= 20);
    }

    #[test]
    fn curve_type_invariants_are_enforced() {
        let mixed = RationalCurveParam::new([
            HomogPoly2::monomial(2, 2, Rational::one()),
            HomogPoly2::monomial(1, 1, Rational::one()),
            HomogPoly2::zero(2),
            HomogPoly2::zero(2),
        ]);
        assert_eq!(mixed.unwrap_err(), LegendrianError::MixedDegrees);
        let constant =
            RationalCurveParam::new(std::array::from_fn(|_| HomogPoly2::constant(rat(1, 1))));
        assert_eq!(constant.unwrap_err(), LegendrianError::DegreeZero);
        let zero = RationalCurveParam::new(std::array::from_fn(|_| HomogPoly2::zero(3)));
        assert_eq!(zero.unwrap_err(), LegendrianError::ZeroCurve);
    }

    #[test]
    fn contact_plane_examples() {
        let cubic = buczynski(2, 1).unwrap();
        // f(1:0) = (1,0,0,0), plane z_1 = 0
        assert_eq!(
            contact_plane(&cubic, &point(1, 0)).unwrap(),
            [rat(0, 1), rat(-1, 1), rat(0, 1), rat(0, 1)]
        );
        let quartic = buczynski(3, 1).unwrap();
        assert_eq!(
            contact_plane(&quartic, &point(1, 0)).unwrap(),
            [rat(0, 1), rat(-1, 1), rat(0, 1), rat(0, 1)]
        );
        // f(0:1) = (0, 1/2, 0, 0), plane z_0 = 0
        assert_eq!(
            contact_plane(&quartic, &point(0, 1)).unwrap(),
            [rat(1, 2), rat(0, 1), rat(0, 1), rat(0, 1)]
        );
    }

    #[test]
    fn contact_plane_is_projectively_invariant_in_the_point() {
        let quartic = buczynski(3, 1).unwrap();
        let p = contact_plane(&quartic, &point(1, 2)).unwrap();
        let q = contact_plane(&quartic, &point(3, 6)).unwrap();
        // proportional coefficient vectors cut the same plane
        let ratio = q[0].checked_div(&p[0]).unwrap();
        for i in 0..4 {
            assert_eq!(q[i], p[i].clone() * &ratio);
        }
    }

    #[test]
    fn degenerate_point_is_rejected() {
        let f = RationalCurveParam::new([
            HomogPoly2::monomial(2, 2, Rational::one()),
            HomogPoly2::monomial(2, 1, Rational::one()),
            HomogPoly2::zero(2),
            HomogPoly2::zero(2),
        ])
        .unwrap();
        assert_eq!(
            contact_plane(&f, &point(0, 1)).unwrap_err(),
            LegendrianError::DegenerateParametrization
        );
    }

    #[test]
    fn quartic_plane_section_factors_as_expected() {
        // At (1:1) the section of the degree-4 model curve is
        // ½s⁴ − s³t + st³ − ½t⁴ = ½(s−t)³(s+t): a triple root there.
        let quartic = buczynski(3, 1).unwrap();
        let plane = contact_plane(&quartic, &point(1, 1)).unwrap();
        let mut section = HomogPoly2::zero(4);
        for (c, coord) in plane.iter().zip(quartic.coords().iter()) {
            section = section.add(&coord.scale(c));
        }
        let s_minus_t = HomogPoly2::new(vec![rat(-1, 1), rat(1, 1)]);
        let s_plus_t = HomogPoly2::new(vec![rat(1, 1), rat(1, 1)]);
        let expected = s_minus_t.pow(3).mul(&s_plus_t).scale(&rat(1, 2));
        assert_eq!(section, expected);
    }

    #[test]
    fn osculation_orders_of_model_curves() {
        let cubic = buczynski(2, 1).unwrap();
        assert_eq!(
            osculation_multiplicity(&cubic, &point(1, 1)).unwrap(),
            Osculation::Order(3)
        );
        let quartic = buczynski(3, 1).unwrap();
        assert_eq!(
            osculation_multiplicity(&quartic, &point(1, 1)).unwrap(),
            Osculation::Order(3)
        );
        // hyperosculation at the two torus-fixed parameter values
        assert_eq!(
            osculation_multiplicity(&quartic, &point(1, 0)).unwrap(),
            Osculation::Order(4)
        );
        assert_eq!(
            osculation_multiplicity(&quartic, &point(0, 1)).unwrap(),
            Osculation::Order(4)
        );
    }

    #[test]
    fn osculation_is_at_least_three_for_contact_curves() {
        let points = [point(1, 1), point(2, 1), point(1, -3), point(5, 7)];
        for (k, l) in [(2, 1), (3, 1), (3, 2), (4, 1), (5, 2)] {
            let f = buczynski(k, l).unwrap();
            for p in &points {
                match osculation_multiplicity(&f, p).unwrap() {
                    Osculation::Order(m) => assert!(m >= 3, "k={} l={} got {}", k, l, m),
                    Osculation::Total => {}
                }
            }
        }
    }

    #[test]
    fn planar_contact_curve_has_total_osculation() {
        let f0 = HomogPoly2::new(vec![rat(1, 1), rat(0, 1), rat(2, 1)]);
        let f = RationalCurveParam::new([
            f0.clone(),
            f0.scale(&rat(3, 1)),
            HomogPoly2::zero(2),
            HomogPoly2::zero(2),
        ])
        .unwrap();
        assert!(is_contact(&f));
        assert_eq!(
            osculation_multiplicity(&f, &point(1, 1)).unwrap(),
            Osculation::Total
        );
        assert_eq!(Osculation::Total.to_string(), "total");
        assert_eq!(Osculation::Order(4).to_string(), "4");
    }

    #[test]
    fn pairing_swap_negates() {
        let f = buczynski(3, 2).unwrap();
        let fs = std::array::from_fn(|i| f.coords()[i].partial_s());
        let ft = std::array::from_fn(|i| f.coords()[i].partial_t());
        let forward = SymplecticForm::pairing_poly(&fs, &ft);
        let backward = SymplecticForm::pairing_poly(&ft, &fs);
        assert_eq!(forward, backward.neg());

        let u = [rat(1, 1), rat(2, 1), rat(3, 1), rat(4, 1)];
        let v = [rat(5, 1), rat(-1, 1), rat(0, 1), rat(2, 1)];
        assert_eq!(
            SymplecticForm::pairing(&u, &v),
            -SymplecticForm::pairing(&v, &u)
        );
    }

    #[test]
    fn reparametrization_preserves_the_contact_property() {
        let m = [
            [rat(2, 1), rat(1, 1)],
            [rat(1, 1), rat(1, 1)],
        ];
        assert!(is_contact(&buczynski(3, 1).unwrap().compose_linear(&m)));
        assert!(!is_contact(&line_st().compose_linear(&m)));
    }

    proptest! {
        #[test]
        fn contact_property_survives_any_invertible_substitution(
            a in -5i64..=5, b in -5i64..=5, c in -5i64..=5, d in -5i64..=5,
            k in 2u32..=5,
        ) {
            prop_assume!(a * d - b * c != 0);
            let m = [
                [Rational::from_int(a), Rational::from_int(b)],
                [Rational::from_int(c), Rational::from_int(d)],
            ];
            let l = if k % 2 == 0 { 1 } else { 2 };
            let contact = buczynski(k, l).unwrap();
            prop_assert!(is_contact(&contact.compose_linear(&m)));
            prop_assert!(!is_contact(&line_st().compose_linear(&m)));
        }
    }
}
