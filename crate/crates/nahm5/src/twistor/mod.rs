//! Geometry of the total space of O(4) over CP^1: charts, real structure,
//! SL(2,C) actions, the invariant quadratic form on quartics, alpha-surface
//! frames and coframes, and a finite-difference pullback engine.

mod frame;
mod mobius;
mod point;
mod pullback;
mod section;

pub use frame::{
    alpha_frame, alpha_surface_section, change_of_basis, f_frame, natural_forms, weight_coframe,
    weight_forms, Coform, CoframeConvention,
};
pub use mobius::{act_on_point, act_on_section, g_lambda, MobiusElement};
pub use point::{tau_point, Chart, TwistorPoint};
pub use pullback::{natural_section, pullback_01, wirtinger, FdConfig, PullbackForm};
pub use section::{
    invariant_norm, metric, point_to_section, section_to_point, tau_section, QuarticSection,
    RealPoint5,
};
