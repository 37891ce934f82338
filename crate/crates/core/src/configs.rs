//! Counts of reducible contact-curve configurations built from sequential
//! line-incidence choices.
//!
//! A reducible contact curve of total degree d meeting 2d+1 general lines
//! decomposes into components, each taking a share of the lines. Every
//! decomposition type is counted by one declarative [`IncidenceRecipe`]: a
//! symmetry divisor and an ordered list of steps, where each step removes
//! `lines_chosen` lines from the remaining pool and multiplies by the
//! number of component curves realizing that step (`branch_factor`, e.g. 2
//! contact lines through two general lines, or 1080 irreducible contact
//! cubics through six). The tables evaluate their recipes — results are
//! derived, never transcribed — and the irreducible counts are what remains
//! after subtracting the table total from the full invariant.
//!
//! Every table carries an explicit assumption banner: these counts treat
//! each boundary configuration as contributing with multiplicity one, which
//! is plausible but unverified.

use crate::exactmath::binomial;
use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RecipeError {
    #[error("step needs {needed} lines but only {remaining} remain in the pool")]
    PoolExhausted { needed: u32, remaining: u32 },
    #[error("symmetry divisor {divisor} does not divide the raw product {product}")]
    InexactSymmetryDivision { divisor: u64, product: String },
    #[error("symmetry divisor must be positive")]
    ZeroSymmetryDivisor,
    #[error("irreducible estimates are defined for degrees 3 and 4 only (got {0})")]
    UnsupportedDegree(u32),
}

/// One construction step: choose `lines_chosen` of the remaining lines,
/// then pick one of `branch_factor` component curves satisfying them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RecipeStep {
    pub lines_chosen: u32,
    pub branch_factor: u64,
}

/// A full sequential construction: ordered steps over a shrinking line
/// pool, divided by the symmetry order of the configuration shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceRecipe {
    pub symmetry_divisor: u64,
    pub steps: Vec<RecipeStep>,
}

impl IncidenceRecipe {
    pub fn new(symmetry_divisor: u64, steps: &[(u32, u64)]) -> IncidenceRecipe {
        IncidenceRecipe {
            symmetry_divisor,
            steps: steps
                .iter()
                .map(|&(lines_chosen, branch_factor)| RecipeStep {
                    lines_chosen,
                    branch_factor,
                })
                .collect(),
        }
    }

    /// (1/symmetry_divisor) · ∏ steps C(remaining, lines_chosen) ·
    /// branch_factor, with the pool shrinking after every step. The
    /// division must be exact.
    pub fn count(&self, pool: u32) -> Result<BigUint, RecipeError> {
        if self.symmetry_divisor == 0 {
            return Err(RecipeError::ZeroSymmetryDivisor);
        }
        let mut remaining = pool;
        let mut product = BigUint::one();
        for step in &self.steps {
            if step.lines_chosen > remaining {
                return Err(RecipeError::PoolExhausted {
                    needed: step.lines_chosen,
                    remaining,
                });
            }
            product *= binomial(remaining as u64, step.lines_chosen as u64);
            product *= BigUint::from(step.branch_factor);
            remaining -= step.lines_chosen;
        }
        let divisor = BigUint::from(self.symmetry_divisor);
        if (&product % &divisor) != BigUint::zero() {
            return Err(RecipeError::InexactSymmetryDivision {
                divisor: self.symmetry_divisor,
                product: product.to_string(),
            });
        }
        Ok(product / divisor)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigEntry {
    pub label: String,
    pub recipe: IncidenceRecipe,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigTable {
    pub family: String,
    pub pool: u32,
    pub entries: Vec<ConfigEntry>,
    pub total: u64,
    pub assumption: String,
}

const MULTIPLICITY_ASSUMPTION: &str = "ASSUMPTION: every reducible boundary configuration is \
counted with multiplicity 1; these multiplicities are unverified, so the totals and the derived \
irreducible counts are estimates.";

fn build_table(family: &str, pool: u32, rows: &[(&str, u64, &[(u32, u64)])]) -> ConfigTable {
    let entries: Vec<ConfigEntry> = rows
        .iter()
        .map(|&(label, symmetry_divisor, steps)| {
            let recipe = IncidenceRecipe::new(symmetry_divisor, steps);
            let count = recipe
                .count(pool)
                .expect("table recipes stay within the pool and divide exactly");
            ConfigEntry {
                label: label.to_string(),
                count: u64::try_from(count).expect("configuration counts fit in u64"),
                recipe,
            }
        })
        .collect();
    let total = entries.iter().map(|e| e.count).sum();
    ConfigTable {
        family: family.to_string(),
        pool,
        entries,
        total,
        assumption: MULTIPLICITY_ASSUMPTION.to_string(),
    }
}

/// Reducible contact cubics meeting 7 general lines, by the partition of
/// the lines among the three components (branch factor 2 at each step: the
/// contact lines through two general lines).
pub fn cubic_configuration_table() -> ConfigTable {
    build_table(
        "cubics",
        7,
        &[
            ("((3+1+3))", 2, &[(3, 2), (1, 2), (3, 2)]),
            ("((2+3+2))", 2, &[(2, 2), (3, 2), (2, 2)]),
            ("((3+2+2))", 1, &[(3, 2), (2, 2), (2, 2)]),
        ],
    )
}

/// Reducible contact quartics meeting 9 general lines: an irreducible cubic
/// plus a line (branch factor 1080 = irreducible cubic count), and the
/// four-line chain (W) and star (w) shapes by line partition.
pub fn quartic_configuration_table() -> ConfigTable {
    build_table(
        "quartics",
        9,
        &[
            ("(3+1)", 1, &[(3, 2), (6, 1080)]),
            ("W ((3+2+2+2))", 1, &[(3, 2), (2, 2), (2, 2), (2, 2)]),
            ("W ((3+1+2+3))", 1, &[(3, 2), (1, 2), (2, 2), (3, 2)]),
            ("W ((2+3+2+2))", 1, &[(2, 2), (3, 2), (2, 2), (2, 2)]),
            ("W ((2+3+1+3))", 1, &[(2, 2), (3, 2), (1, 2), (3, 2)]),
            ("w ((3+2+2+2))", 6, &[(3, 2), (2, 2), (2, 2), (2, 2)]),
            ("w ((2+3+2+2))", 2, &[(2, 2), (3, 2), (2, 2), (2, 2)]),
            ("w ((1+3+3+2))", 2, &[(1, 2), (3, 2), (3, 2), (2, 2)]),
            ("w ((0+3+3+3))", 6, &[(0, 2), (3, 2), (3, 2), (3, 2)]),
        ],
    )
}

/// Expected number of irreducible contact curves: the full invariant value
/// minus the reducible-configuration total for that degree.
pub fn irreducible_estimate(degree: u32, n_d: i64) -> Result<i64, RecipeError> {
    let table = match degree {
        3 => cubic_configuration_table(),
        4 => quartic_configuration_table(),
        _ => return Err(RecipeError::UnsupportedDegree(degree)),
    };
    Ok(n_d - table.total as i64)
}

impl ConfigTable {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "family": self.family,
            "pool": self.pool,
            "assumption": self.assumption,
            "entries": self.entries.iter().map(|e| {
                serde_json::json!({
                    "label": e.label,
                    "count": e.count,
                    "symmetry_divisor": e.recipe.symmetry_divisor,
                    "steps": e.recipe.steps.iter()
                        .map(|s| serde_json::json!([s.lines_chosen, s.branch_factor]))
                        .collect::<Vec<_>>(),
                })
            }).collect::<Vec<_>>(),
            "total": self.total,
        })
    }
}
