//! The fundamental representation of `U_q(sl(n))` and everything evaluated in it.

pub mod cartan_weyl;
pub mod classical;
pub mod fundamental;
pub mod modified;
pub mod qexp;
pub mod rmatrix;
pub mod session;
pub mod twist;

pub use cartan_weyl::{cartan_weyl, CartanWeylFamily, CartanWeylRecipe, CompositeStep};
pub use classical::{classical_r, cybe_defect, symmetric_part};
pub use fundamental::{cartan_lift, cartan_on_v, cartan_on_vv, fundamental_rep, h_weight, CartanLift, FundamentalRep};
pub use modified::{modified_rep, ModifiedRep};
pub use qexp::qexp_matrix;
pub use rmatrix::{
    calibrate_constants, check_intertwiner, full_twist, root_product_expression, standard_r, twist_factor, twisted_r, FullTwist,
    RootConstants, StandardR,
};
pub use session::{required_denominator, Session, SessionConfig};
pub use twist::{coproduct_family, coproduct_generators, Coproduct, Slot, TwistExpression, TwistFactor};
