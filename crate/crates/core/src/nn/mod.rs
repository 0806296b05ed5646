//! From-scratch 2D convolutional network: layers with analytic backward
//! passes, Adam, the training loop, and model persistence.

pub mod scalar;
pub mod tensor;

pub use scalar::Scalar;
pub use tensor::Tensor;
