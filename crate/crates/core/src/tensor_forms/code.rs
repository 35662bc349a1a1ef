//! Packed-code fast paths for tensors with at most 64 cells.

use crate::gf2::{BitMatrix, BitTensor3};

use super::gauge::{gauge3, GaugeTriple};

pub type Dims = (usize, usize, usize);

/// A GF(2)-linear map on packed tensor codes, evaluated by byte lookups.
#[derive(Clone)]
pub struct CodeMap {
    tables: Vec<[u64; 256]>,
}

impl CodeMap {
    /// Builds the map from the image of every unit code.
    pub fn from_basis_images(bits: usize, image: impl Fn(usize) -> u64) -> Self {
        assert!(bits <= 64);
        let images: Vec<u64> = (0..bits).map(image).collect();
        let tables = images
            .chunks(8)
            .map(|chunk| {
                let mut t = [0u64; 256];
                for (byte, slot) in t.iter_mut().enumerate() {
                    *slot = chunk
                        .iter()
                        .enumerate()
                        .filter(|(b, _)| (byte >> b) & 1 == 1)
                        .fold(0, |acc, (_, &img)| acc ^ img);
                }
                t
            })
            .collect();
        Self { tables }
    }

    pub fn gauge(dims: Dims, g: &GaugeTriple) -> Self {
        let n = dims.0 * dims.1 * dims.2;
        Self::from_basis_images(n, |b| {
            let unit = BitTensor3::from_code(dims, 1u64 << b);
            gauge3(&unit, g).expect("gauge matches dims").code()
        })
    }

    /// Gauge acting on a single axis (0 = A, 1 = B, 2 = C).
    pub fn axis(dims: Dims, axis: usize, chi: &BitMatrix) -> Self {
        let mut g = GaugeTriple::identity_for(dims);
        match axis {
            0 => g.a = chi.clone(),
            1 => g.b = chi.clone(),
            2 => g.c = chi.clone(),
            _ => panic!("axis {axis} out of range"),
        }
        Self::gauge(dims, &g)
    }

    /// Relabeling of the three colors; output index `p` is input index `perm[p]`.
    pub fn color_permutation(m: usize, perm: [usize; 3]) -> Self {
        let dims = (m, m, m);
        Self::from_basis_images(m * m * m, |b| {
            BitTensor3::from_code(dims, 1u64 << b)
                .permute_indices(perm)
                .code()
        })
    }

    #[inline]
    pub fn apply(&self, code: u64) -> u64 {
        let mut out = 0;
        for (c, t) in self.tables.iter().enumerate() {
            out ^= t[((code >> (8 * c)) & 0xFF) as usize];
        }
        out
    }
}

/// For each color and index value, the mask of cells using that value.
#[derive(Debug, Clone)]
pub struct CellMasks {
    dims: Dims,
    by_axis: [Vec<u64>; 3],
}

impl CellMasks {
    pub fn new(dims: Dims) -> Self {
        let (ma, mb, mc) = dims;
        let mut by_axis = [vec![0u64; ma], vec![0u64; mb], vec![0u64; mc]];
        for i in 0..ma {
            for j in 0..mb {
                for k in 0..mc {
                    let bit = 1u64 << ((i * mb + j) * mc + k);
                    by_axis[0][i] |= bit;
                    by_axis[1][j] |= bit;
                    by_axis[2][k] |= bit;
                }
            }
        }
        Self { dims, by_axis }
    }

    pub fn dims(&self) -> Dims {
        self.dims
    }

    /// The cells of `code` connected to its lowest cell, where two cells are
    /// adjacent when they agree in some index at the same color.
    #[inline]
    pub fn component_of_lowest(&self, code: u64) -> u64 {
        if code == 0 {
            return 0;
        }
        let mut reached = code & code.wrapping_neg();
        loop {
            let mut grown = reached;
            for masks in &self.by_axis {
                for &mask in masks {
                    if reached & mask != 0 {
                        grown |= mask & code;
                    }
                }
            }
            if grown == reached {
                return reached;
            }
            reached = grown;
        }
    }

    /// Split into at least two pieces with disjoint index sets at every color.
    #[inline]
    pub fn is_decomposable(&self, code: u64) -> bool {
        code != 0 && self.component_of_lowest(code) != code
    }

    /// Connected components, in order of their lowest cell.
    pub fn components(&self, mut code: u64) -> Vec<u64> {
        let mut out = Vec::new();
        while code != 0 {
            let c = self.component_of_lowest(code);
            out.push(c);
            code &= !c;
        }
        out
    }

    /// Index values used by `code` on each axis, as bitmasks.
    pub fn used_indices(&self, code: u64) -> [u64; 3] {
        let mut used = [0u64; 3];
        for (axis, masks) in self.by_axis.iter().enumerate() {
            for (v, &mask) in masks.iter().enumerate() {
                if code & mask != 0 {
                    used[axis] |= 1 << v;
                }
            }
        }
        used
    }
}

/// Two generators of GL(n, 2): the shear `e_1 -> e_1 + e_0` and the cyclic
/// shift of basis vectors. Empty for `n = 1`.
pub fn gl_generators(n: usize) -> Vec<BitMatrix> {
    if n < 2 {
        return Vec::new();
    }
    let mut shear = BitMatrix::identity(n);
    shear.set(0, 1, true);
    let mut cycle = BitMatrix::zeros(n, n);
    for i in 0..n {
        cycle.set(i, (i + 1) % n, true);
    }
    vec![shear, cycle]
}

/// Code maps generating the gauge group GL(m_a) x GL(m_b) x GL(m_c).
pub fn gauge_generator_maps(dims: Dims) -> Vec<CodeMap> {
    let sizes = [dims.0, dims.1, dims.2];
    let mut maps = Vec::new();
    for (axis, &n) in sizes.iter().enumerate() {
        for g in gl_generators(n) {
            maps.push(CodeMap::axis(dims, axis, &g));
        }
    }
    maps
}
