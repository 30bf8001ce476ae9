//! Exact computations with finite quotients of free groups: covering-space
//! homology, restricted Lie algebra witnesses, chain representations of
//! automorphism groups and integral representations.

pub mod certificate;
pub mod chainrep;
pub mod cover;
pub mod error;
pub mod freegrp;
pub mod group;
pub mod intrep;
pub mod linalg;
pub mod presets;
pub mod stallings;
pub mod truncalg;

pub use error::{Error, Result};
pub use freegrp::{NielsenAuto, OrbitMode, OrbitSpec, Word};
