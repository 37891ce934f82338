//! Exact fixed-locus contributions for torus localization on spaces of
//! stable maps to P³.
//!
//! The torus (C*)⁴ acts on P³ with four fixed coordinate points and a weight
//! λ_i attached to each. Every invariant computed here is a sum over the
//! tree classes of [`crate::graphs`]: each class Γ contributes
//!
//! ```text
//!   (optional tangency factor) · H^m · V(Γ) · E(Γ) / a(Γ)
//! ```
//!
//! where V·E is the reciprocal equivariant Euler class of the virtual normal
//! bundle, H is the restriction of the meets-a-line divisor class, m is the
//! number of line conditions, and a(Γ) = |Aut Γ| · ∏ d_e. The total sum is
//! homogeneous of degree zero in the weights, hence independent of the
//! specialization chosen — that independence is what the retry/agreement
//! logic in [`crate::invariants`] checks.
//!
//! A specialization can be unusable for a particular graph: a vertex flag
//! sum or an edge character may vanish inside a denominator. Those cases
//! surface as [`LocalizationError::SpecializationDegenerate`] so the caller
//! can resample; genuinely zero numerator factors are ordinary zero
//! contributions, not errors.

use crate::exactmath::{factorial, Rational};
use crate::graphs::{GraphClass, WeightedColoredTree};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LocalizationError {
    #[error("torus weights must be pairwise distinct")]
    RepeatedWeight,
    #[error("degenerate specialization: {0}")]
    SpecializationDegenerate(String),
}

/// Four pairwise distinct rational weights for the torus action, one per
/// coordinate fixed point of P³.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusSpec {
    lambdas: [Rational; 4],
}

impl TorusSpec {
    pub fn new(lambdas: [Rational; 4]) -> Result<Self, LocalizationError> {
        for i in 0..4 {
            for j in (i + 1)..4 {
                if lambdas[i] == lambdas[j] {
                    return Err(LocalizationError::RepeatedWeight);
                }
            }
        }
        Ok(TorusSpec { lambdas })
    }

    pub fn from_integers(values: [i64; 4]) -> Result<Self, LocalizationError> {
        Self::new(values.map(Rational::from_int))
    }

    pub fn lambda(&self, i: u8) -> &Rational {
        &self.lambdas[i as usize]
    }

    pub fn lambdas(&self) -> &[Rational; 4] {
        &self.lambdas
    }

    /// λ_i − λ_j, nonzero for i ≠ j by construction.
    fn diff(&self, i: u8, j: u8) -> Rational {
        self.lambdas[i as usize].clone() - &self.lambdas[j as usize]
    }
}

/// Which equivariant class is integrated over the moduli space: H to the
/// power `incidence_exponent`, optionally multiplied by the tangency class
/// of the contact distribution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassSelector {
    pub incidence_exponent: u32,
    pub include_contact_class: bool,
}

impl ClassSelector {
    /// Tangency class times H^(2d+1): the integrand whose value is the
    /// contact-curve count N_d. The exponent makes the total degree match
    /// the virtual dimension 4d of the degree-d moduli space.
    pub fn contact(d: u32) -> ClassSelector {
        ClassSelector {
            incidence_exponent: 2 * d + 1,
            include_contact_class: true,
        }
    }

    /// H^(4d) alone: the Gromov–Witten number of rational degree-d curves
    /// meeting 4d general lines.
    pub fn line_incidence(d: u32) -> ClassSelector {
        ClassSelector {
            incidence_exponent: 4 * d,
            include_contact_class: false,
        }
    }

    /// Whether the integrand has total degree 4d, the virtual dimension at
    /// degree d. Only balanced selectors produce specialization-independent
    /// sums.
    pub fn is_balanced_for(self, d: u32) -> bool {
        let class_degree = if self.include_contact_class { 2 * d - 1 } else { 0 };
        self.incidence_exponent + class_degree == 4 * d
    }
}

fn nonzero_recip(x: &Rational) -> Rational {
    x.recip().expect("torus weights are pairwise distinct")
}

/// Vertex part of the reciprocal Euler class:
///
/// ```text
///   V(Γ) = ∏_v (∏_{j≠i} (λ_i−λ_j))^(val−1)
///          · (Σ_{flags at v} d_e/(λ_i−λ_w))^(val−3)
///          · ∏_{flags at v} d_e/(λ_i−λ_w)
/// ```
///
/// with i the color of v and w the color across each incident edge. The flag
/// sum enters with a negative exponent at valence 1 and 2, so its vanishing
/// there makes the specialization degenerate; at valence 3 the exponent is
/// zero and the factor is 1 regardless.
pub fn vertex_factor(
    t: &WeightedColoredTree,
    spec: &TorusSpec,
) -> Result<Rational, LocalizationError> {
    let adj = t.adjacency();
    let mut total = Rational::one();
    for (v, flags) in adj.iter().enumerate() {
        let i = t.colors()[v];
        let val = flags.len() as i64;

        let mut all_diffs = Rational::one();
        for j in 0..4u8 {
            if j != i {
                all_diffs = all_diffs * spec.diff(i, j);
            }
        }
        total = total
            * all_diffs
                .pow(val - 1)
                .expect("product of nonzero differences");

        let mut flag_sum = Rational::zero();
        let mut flag_product = Rational::one();
        for &(nbr, weight) in flags {
            let w = t.colors()[nbr];
            let term = Rational::from_int(weight as i64) * nonzero_recip(&spec.diff(i, w));
            flag_sum = flag_sum + &term;
            flag_product = flag_product * term;
        }
        let sum_power = flag_sum.pow(val - 3).map_err(|_| {
            LocalizationError::SpecializationDegenerate(format!(
                "flag weight sum vanishes at a valence-{} vertex of color {}",
                val, i
            ))
        })?;
        total = total * sum_power * flag_product;
    }
    Ok(total)
}

/// Edge part of the reciprocal Euler class:
///
/// ```text
///   E(Γ) = ∏_e (-1)^d · (d/(λ_i−λ_j))^(2d) / (d!)²
///          · ∏_{k∉{i,j}} ∏_{α=0}^{d} 1 / ((αλ_i + (d−α)λ_j)/d − λ_k)
/// ```
///
/// writing d for the edge weight and i, j for the endpoint colors. Interior
/// characters (0 < α < d) can collide with a third weight λ_k; that makes
/// the specialization degenerate for this graph. The endpoint characters are
/// λ_j − λ_k and λ_i − λ_k, never zero.
pub fn edge_factor(
    t: &WeightedColoredTree,
    spec: &TorusSpec,
) -> Result<Rational, LocalizationError> {
    let mut total = Rational::one();
    for e in t.edges() {
        let (i, j) = (t.colors()[e.u], t.colors()[e.v]);
        let d = e.weight;
        let d_rat = Rational::from_int(d as i64);

        let mut term = (d_rat.clone() * nonzero_recip(&spec.diff(i, j)))
            .pow(2 * d as i64)
            .expect("positive exponent");
        if d % 2 == 1 {
            term = -term;
        }
        let fact = Rational::from(factorial(d as u64));
        term = term * nonzero_recip(&(fact.clone() * fact));

        for k in 0..4u8 {
            if k == i || k == j {
                continue;
            }
            for alpha in 0..=d {
                let character = (Rational::from_int(alpha as i64) * spec.lambda(i)
                    + Rational::from_int((d - alpha) as i64) * spec.lambda(j))
                    * nonzero_recip(&d_rat)
                    - spec.lambda(k);
                let recip = character.recip().map_err(|_| {
                    LocalizationError::SpecializationDegenerate(format!(
                        "edge character ({}·λ_{} + {}·λ_{})/{} equals λ_{}",
                        alpha,
                        i,
                        d - alpha,
                        j,
                        d,
                        k
                    ))
                })?;
                term = term * recip;
            }
        }
        total = total * term;
    }
    Ok(total)
}

/// Restriction of the meets-a-line divisor class: Σ_e d_e (λ_i + λ_j) over
/// the edges, endpoint colors i and j.
pub fn incidence_class(t: &WeightedColoredTree, spec: &TorusSpec) -> Rational {
    let mut total = Rational::zero();
    for e in t.edges() {
        let (i, j) = (t.colors()[e.u], t.colors()[e.v]);
        total = total
            + Rational::from_int(e.weight as i64)
                * (spec.lambda(i).clone() + spec.lambda(j));
    }
    total
}

/// Restriction of the tangency-to-the-contact-distribution class:
///
/// ```text
///   ∏_e ∏_{α=1}^{2d−1} (αλ_i + (2d−α)λ_j)/d  ·  ∏_v (2λ_{i_v})^(val−1)
/// ```
///
/// A zero value is a legitimate zero contribution, never an error.
pub fn contact_class(t: &WeightedColoredTree, spec: &TorusSpec) -> Rational {
    let mut total = Rational::one();
    for e in t.edges() {
        let (i, j) = (t.colors()[e.u], t.colors()[e.v]);
        let d = e.weight;
        let d_recip = nonzero_recip(&Rational::from_int(d as i64));
        for alpha in 1..(2 * d) {
            total = total
                * (Rational::from_int(alpha as i64) * spec.lambda(i)
                    + Rational::from_int((2 * d - alpha) as i64) * spec.lambda(j))
                * &d_recip;
        }
    }
    let adj = t.adjacency();
    for (v, flags) in adj.iter().enumerate() {
        let double = Rational::from_int(2) * spec.lambda(t.colors()[v]);
        total = total
            * double
                .pow(flags.len() as i64 - 1)
                .expect("valence is at least one");
    }
    total
}

/// Full contribution of one class to the localization sum for the selected
/// integrand: (tangency factor if selected) · H^m · V · E / a(Γ).
/// Homogeneous of degree zero in the weights whenever the selector is
/// dimension-balanced for the class's degree.
pub fn graph_contribution(
    class: &GraphClass,
    spec: &TorusSpec,
    selector: ClassSelector,
) -> Result<Rational, LocalizationError> {
    let t = &class.representative;

    let mut value = incidence_class(t, spec)
        .pow(selector.incidence_exponent as i64)
        .expect("nonnegative exponent");
    if selector.include_contact_class {
        value = value * contact_class(t, spec);
    }
    value = value * vertex_factor(t, spec)? * edge_factor(t, spec)?;
    Ok(value * nonzero_recip(&Rational::from_int(class.a_gamma() as i64)))
}
