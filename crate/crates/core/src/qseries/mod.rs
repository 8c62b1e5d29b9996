//! Exact truncated q-series in one variable ([`Series`]) and in x and q
//! ([`BivariateSeries`]), with Pochhammer and infinite-product builders.

mod bivariate;
mod products;
mod series;

pub use bivariate::BivariateSeries;
pub use products::{
    divide_by_product, finite_product, geometric_inverse_factor, infinite_product,
    pochhammer_factors, product_of, q_pochhammer, Factor,
};
pub use series::Series;
