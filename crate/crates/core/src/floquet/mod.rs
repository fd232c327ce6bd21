//! Symbol-level Fredholm analysis of periodic lattice operators.
//!
//! A banded periodic operator on `ℓ²(ℤ, ℂ^N)` is described by its Laurent
//! symbol `A(z)`. The operator is Fredholm (indeed invertible) iff `A(z)`
//! is invertible for every `|z| = 1`; its half-line compression then has
//! index `−winding(det A)`.

mod flow;
mod index;
mod scan;
mod sections;
mod symbol;

pub use flow::{spectral_flow, spectral_flow_with, Crossing, FlowOptions, SpectralFlowResult};
pub use index::{checked_index, toeplitz_index, winding_number};
pub use scan::{
    is_fredholm, is_fredholm_with_grid, min_singular_on_circle, min_singular_on_circle_rotated,
    sigma_min_at, CircleMinimum, FredholmReport, UnitPoint,
};
pub(crate) use sections::truncate;
pub use sections::{
    finite_section, fredholm_via_sections, section_kernel_cokernel, SectionEntry, SectionIndex,
    SectionVerdict, SectionsReport,
};
pub use symbol::{symbol_eval, LaurentSymbol};
