//! Exact polynomial algebra: univariate and bivariate rational polynomials,
//! Bernstein conversions, Sturm sign analysis.

mod bernstein;
mod bipoly;
mod poly;
mod sturm;

pub use bernstein::{bernstein_mono, binomial, from_bernstein, to_bernstein};
pub use bipoly::{net_indices, net_len, net_pos, BiPoly, Domain};
pub use poly::Poly;
pub use sturm::{root_count_unit, unit_sign, UnitSign};
