//! Fixed-locus data of a `G`-variety and the characteristic-class
//! machinery the stringy rings are built from.

mod algebra;
mod model;
pub mod series;
mod table;

pub use algebra::{ChernVector, GradedAlgebra};
pub use model::{
    gset_model, linear_model, point_model, regular_gset_model, required_subgroups, useful_mix_failures, Backend,
    GeometricModel, GradingMode, Locus, LocusMap, ModelData,
};
pub use series::{
    c_top, euler_characteristic, grr_pushforward, lambda_minus1_dual, lambda_minus1_dual_adams, todd, total_chern,
    BundleDescriptor, Certificate,
};
pub use table::{
    load_cocycle, load_group, load_table_model, parse_cocycle, parse_combination, parse_group, parse_model, parse_rational,
};

pub(crate) use algebra::difference;
