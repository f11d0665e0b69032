//! Orthogonal-plane feature codebooks with a differentiable volume renderer,
//! for overfitting single static or articulated scenes from posed images.

pub mod codebook;
pub mod decoder;
pub mod error;
pub mod rng;

pub use codebook::{PlaneGroupSet, Representation, TriPlane, VoxelGrid};
pub use decoder::{DecoderMode, DecoderOutput, MlpDecoder};
pub use error::{Error, Result};
