//! Exact linear algebra over GF(2): packed vectors, matrices, 3-index tensors
//! and Boolean functions given by truth tables.

mod boolean;
mod matrix;
mod tensor;
mod vector;

pub use boolean::{BooleanFunction, MAX_INPUTS};
pub use matrix::{enumerate_gl, gl_order, shear, BitMatrix, MAX_GL_ORDER_M};
pub use tensor::{BitTensor3, Cell};
pub use vector::BitVector;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Gf2Error {
    #[error("matrix is singular over GF(2)")]
    Singular,
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("GL(m,2) enumeration supports 1 <= m <= {max}, got m = {m}")]
    UnsupportedSize { m: usize, max: usize },
    #[error("shear needs distinct indices, got ({0}, {0})")]
    DiagonalShear(usize),
    #[error("index {index} out of range for size {bound}")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("cell {cell:?} out of range for tensor of shape {dims:?}")]
    CellOutOfRange {
        cell: (usize, usize, usize),
        dims: (usize, usize, usize),
    },
    #[error("truth table of length {0} is not a power of two made of 0/1")]
    TableLength(usize),
}
