//! χ⁽²⁾ tensor algebra and the mode-overlap integral behind the coupling constant.

pub mod fields;
mod grid;
mod overlap;
mod tensor;

pub use grid::{vector_norm, FieldGrid, FieldVector};
pub use overlap::{coupling_constant, field_per_photon, overlap_integral, overlap_integral_complex, overlap_shortcut};
pub use tensor::{rotation_aligning, Chi2Tensor};
