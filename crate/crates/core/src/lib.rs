//! Exact-arithmetic engine for nodal curves built from rational components:
//! section spaces and Koszul cohomology of line bundles, with verification
//! sweeps for syzygy bounds (property N_p) and Koszul vanishing thresholds.
//!
//! Everything runs over exact rationals; there is no floating point and no
//! tolerance anywhere.
//!
//! ```
//! use curve_koszul::catalog;
//! use curve_koszul::koszul::{koszul_dim, KoszulConfig};
//! use curve_koszul::linalg::rat;
//! use curve_koszul::sheaf::{global_sections, CoefficientBundle, LineBundle, LinearSystem};
//!
//! // two projective lines glued at two points: a cycle of genus 1
//! let x = catalog::f3();
//! let l = LineBundle::new(&x, vec![3, 3], vec![rat(1), rat(1)]).unwrap();
//! let space = global_sections(&x, &l).unwrap();
//! assert_eq!(space.dim(), 6); // deg - g + 1
//!
//! // its Koszul cohomology in weight two vanishes through position 2,
//! // so the embedded curve has property N_2
//! let w = LinearSystem::full(space);
//! let o = CoefficientBundle::line(LineBundle::structure_sheaf(&x));
//! let cfg = KoszulConfig::default();
//! for p in 0..=2 {
//!     assert_eq!(koszul_dim(&x, p, 2, &o, &l, &w, &cfg).unwrap(), 0);
//! }
//! ```

pub mod catalog;
pub mod curve;
pub mod error;
pub mod files;
pub mod koszul;
pub mod linalg;
pub mod report;
pub mod sheaf;
pub mod sweep;
pub mod theorems;

pub use error::{Error, Result};
