//! Component tensors of multilinear cocycles and their gauge normal forms.

mod census;
mod code;
mod gauge;
mod normal;

use thiserror::Error;

use crate::gf2::{Cell, Gf2Error};

pub use census::{classify_orbits, classify_orbits_with, orbit_representative, ColorConvention, OrbitCensus, MAX_CENSUS_M};
pub use code::{gauge_generator_maps, gl_generators, CellMasks, CodeMap, Dims};
pub use gauge::{gauge2, gauge3, GaugePair, GaugeTriple};
pub use normal::{
    diagonal_normal_form, disjoint_normal_form, disjoint_normal_form_with, edge_disjoint_form,
    is_decomposable, is_irreducible, spto_labels, supports, DiagonalForm, DisjointDecomposition,
    EdgeDisjointForm, SearchOrder, Subspace, SupportSets, MAX_SEARCH_M,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TensorError {
    #[error("shapes of tensor and gauge do not agree")]
    DimensionMismatch,
    #[error("gauge matrix is not invertible")]
    NotInvertible,
    #[error("tensor of dims {dims:?} exceeds the search limit m <= {max}")]
    TooLarge { dims: Dims, max: usize },
    #[error("tensor is zero")]
    ZeroTensor,
    #[error("fiducial cell {0:?} is not a nonzero entry")]
    ZeroFiducial(Cell),
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
}
