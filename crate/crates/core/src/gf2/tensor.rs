use std::fmt;

use super::vector::BitVector;
use super::Gf2Error;

pub type Cell = (usize, usize, usize);

/// Dense 3-index GF(2) tensor of shape `(m_a, m_b, m_c)`.
///
/// Entry `(i, j, k)` lives at bit `(i * m_b + j) * m_c + k`, so the packed
/// code of a tensor orders cells lexicographically.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitTensor3 {
    dims: (usize, usize, usize),
    bits: BitVector,
}

impl BitTensor3 {
    pub fn zeros(dims: (usize, usize, usize)) -> Self {
        Self {
            dims,
            bits: BitVector::zeros(dims.0 * dims.1 * dims.2),
        }
    }

    pub fn cube(m: usize) -> Self {
        Self::zeros((m, m, m))
    }

    pub fn from_cells(dims: (usize, usize, usize), cells: &[Cell]) -> Result<Self, Gf2Error> {
        let mut t = Self::zeros(dims);
        for &c in cells {
            t.check(c)?;
            t.toggle(c);
        }
        Ok(t)
    }

    /// Tensor whose packed bits are the low bits of `code`.
    pub fn from_code(dims: (usize, usize, usize), code: u64) -> Self {
        Self {
            dims,
            bits: BitVector::from_u64(dims.0 * dims.1 * dims.2, code),
        }
    }

    pub fn code(&self) -> u64 {
        self.bits.to_u64()
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        self.dims
    }

    /// Side length for cubic tensors.
    pub fn m(&self) -> Option<usize> {
        let (a, b, c) = self.dims;
        (a == b && b == c).then_some(a)
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    fn offset(&self, (i, j, k): Cell) -> usize {
        (i * self.dims.1 + j) * self.dims.2 + k
    }

    fn check(&self, c: Cell) -> Result<(), Gf2Error> {
        let (a, b, cc) = self.dims;
        if c.0 >= a || c.1 >= b || c.2 >= cc {
            return Err(Gf2Error::CellOutOfRange { cell: c, dims: self.dims });
        }
        Ok(())
    }

    pub fn get(&self, c: Cell) -> bool {
        self.bits.get(self.offset(c))
    }

    pub fn set(&mut self, c: Cell, value: bool) {
        let o = self.offset(c);
        self.bits.set(o, value);
    }

    pub fn toggle(&mut self, c: Cell) {
        let o = self.offset(c);
        self.bits.flip(o);
    }

    pub fn is_zero(&self) -> bool {
        self.bits.is_zero()
    }

    pub fn cell_count(&self) -> usize {
        self.bits.count_ones()
    }

    /// Nonzero cells in lexicographic order.
    pub fn cells(&self) -> Vec<Cell> {
        let (_, b, c) = self.dims;
        self.bits
            .ones()
            .map(|o| (o / (b * c), (o / c) % b, o % c))
            .collect()
    }

    pub fn xor(&self, other: &BitTensor3) -> BitTensor3 {
        assert_eq!(self.dims, other.dims, "shape mismatch");
        Self {
            dims: self.dims,
            bits: self.bits.xor(&other.bits),
        }
    }

    /// Reorders the three indices: output index `p` is input index `perm[p]`.
    pub fn permute_indices(&self, perm: [usize; 3]) -> BitTensor3 {
        let d = [self.dims.0, self.dims.1, self.dims.2];
        let mut out = BitTensor3::zeros((d[perm[0]], d[perm[1]], d[perm[2]]));
        for (i, j, k) in self.cells() {
            let src = [i, j, k];
            out.set((src[perm[0]], src[perm[1]], src[perm[2]]), true);
        }
        out
    }
}

impl fmt::Debug for BitTensor3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitTensor3{:?}{:?}", self.dims, self.cells())
    }
}
