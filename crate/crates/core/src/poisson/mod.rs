//! Numerical side: the Poisson pencil on the big cell of `CP_n`, its
//! bihamiltonian identities, and the matrix Lie theory behind the groupoid
//! action.

pub mod chart;
pub mod dual;
pub mod identities;
pub mod lie;
pub mod mat;
pub mod schouten;
pub mod su2;
pub mod tensors;

use thiserror::Error;

pub use chart::{c_of_x, y_to_z, z_to_y, ChartPoint};
pub use identities::{identity_batch, identity_suite, IdentityBatch, IdentityReport};
pub use lie::{
    build_element, crosscheck_batch, iwasawa, momentum_c, momentum_h, raction_crosscheck, sigma_t, su_sb_split,
    CrossBatch, CrossReport, Element, Order,
};
pub use schouten::{jacobiator, schouten};
pub use su2::{su2_check, Su2Report};
pub use tensors::{PencilModel, TensorsAtPoint};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PoissonError {
    #[error("outside the domain: {0}")]
    Domain(String),
    #[error("matrix is numerically singular")]
    Singular,
    #[error("no sign of the inverse form satisfies the momentum condition (residual {0:e})")]
    Sign(f64),
    #[error("matrix is not traceless")]
    NotTraceless,
    #[error("matrix does not have determinant 1")]
    NotSl,
    #[error("matrix is not in SB: {0}")]
    NotSb(String),
}
