//! Tame local mass formulas for permutation groups built from symmetric
//! groups by wreath products and direct products.
//!
//! Masses are polynomials in `x = 1/q` with the residue `a = q mod |G|` as
//! the only input from the local field. The polynomial type is generic over
//! its coefficient ring; [`MassPoly`] and [`Rational`] fix the concrete
//! scalars used throughout.

pub mod counting;
pub mod error;
pub mod expr;
pub mod group;
pub mod image;
pub mod mass;
pub mod perm;
pub mod poly;
pub mod reference;
pub mod report;
pub mod types;

pub use counting::{
    build_counting, perm_conductor, signed_conductor, sum_compose, wreath_compose, zero_conductor,
    TameCountingFunction,
};
pub use error::{Error, Result};
pub use expr::{build_group, parse_counting, parse_group, CountingExpr, GroupExpr};
pub use group::{Limits, PermGroup};
pub use image::{ambient_centralizer_order, conjugators_into, mass_by_image, ImageClass};
pub use mass::{
    frobenius_solutions, mass_by_product_type, mass_by_type, mass_by_wreath_type,
    predicted_product_mass, predicted_wreath_mass, rational_character_table, total_mass,
    ProductType,
};
pub use perm::Permutation;
pub use poly::Poly;
pub use report::{check_mass_formula, mass_report, FormulaReport, Stratification};
pub use types::{RamType, TypeTerm, WreathTerm, WreathType};

/// Masses have nonnegative integer coefficients.
pub type MassPoly = Poly<u64>;
/// Exact scalar for evaluating masses at `x = 1/q`.
pub type Rational = num_rational::Ratio<i128>;
