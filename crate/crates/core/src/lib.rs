//! Exact level-set geometry on the circle and its consequences for
//! translation incidence and moduli of continuity.
//!
//! The crate is organized around one pipeline: open sets on the circle
//! with rational endpoints ([`circle_set`]), piecewise-linear functions
//! whose superlevel sets those are ([`pl_function`]), gauge functions
//! weighting component lengths ([`gauge`]), named constructions that
//! exercise the extremes ([`constructions`]), certified inequalities
//! connecting incidence to smoothness ([`bounds`]), and a rasterized
//! planar analogue ([`plane`]). Set-level computations are exact
//! rationals; float results carry explicit error radii.

pub mod bounds;
pub mod circle_set;
pub mod constructions;
pub mod error;
pub mod gauge;
pub mod pl_function;
pub mod plane;
pub mod rational;

pub use bounds::{
    clipped_length_bound, fat_cantor_envelope, gauge_decay_bound, level_gauge_sum,
    level_sup_integral, level_tau_integral, rate_implication_check, scaling_exponent, BoundReport,
    CertifiedValue, RateVariant, Witness,
};
pub use circle_set::{Arc, CircleOpenSet};
pub use constructions::{
    fat_cantor_complement, parse_function_spec, parse_set_spec, pierpont, random_open_set,
    random_pl_function, tent_train, terekhin, FatCantorSpec,
};
pub use error::{Error, Result};
pub use gauge::{
    bt_index, gauge_sum, jensen_bound, BtIndex, GaugeFamily, GaugeFunction, GaugeSum,
    LengthFamily, PhiReport, PhiViolation,
};
pub use pl_function::{IndicatrixProfile, ModulusEstimate, PLFunction, Strip};
pub use plane::{
    dilate, mask_subset, rasterize, DimensionEstimates, DistanceField, RasterSet, Shape,
};
pub use rational::Rational;
