//! Clifford-valued Hardy space toolkit on periodic grids.
//!
//! Fields take values in the complex Clifford algebra `C^(n)`, are sampled on
//! a uniform periodic grid in `R^n`, and are analysed through the discrete
//! Fourier transform. The crate provides the `χ±` projectors, Riesz and
//! Hilbert transforms, Poisson/Cauchy/spectral extensions into the upper
//! half-space, Bergman representations, a binary field format and a
//! self-verification suite.

pub mod args;
pub mod bergman;
pub mod cli;
pub mod clifford;
pub mod error;
pub mod extension;
pub mod field;
pub mod format;
pub mod generators;
pub mod quadrature;
pub mod spectral;
pub mod transforms;
pub mod verify;

pub use clifford::{blade_product, blade_sign_l, BladeIndex, Multivector, Paravector};
pub use error::{Error, Result};
pub use field::{BladeOrder, FieldHeader, GridField, SpectralField};
pub use spectral::{chi_projector, dft_forward, dft_inverse, e_kernel, Side};
