use crate::gf2::{BitMatrix, BitTensor3};

use super::TensorError;

/// Change of generating set on the two colors of a 1D lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaugePair {
    pub a: BitMatrix,
    pub b: BitMatrix,
}

/// Change of generating set on each of the three colors of a 2D lattice.
///
/// Acts on a component tensor as
/// `t'(i', j', k') = sum chi_a(i, i') chi_b(j, j') chi_c(k, k') t(i, j, k)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaugeTriple {
    pub a: BitMatrix,
    pub b: BitMatrix,
    pub c: BitMatrix,
}

fn check_invertible(m: &BitMatrix) -> Result<(), TensorError> {
    m.invert().map(|_| ()).map_err(|_| TensorError::NotInvertible)
}

impl GaugePair {
    pub fn new(a: BitMatrix, b: BitMatrix) -> Result<Self, TensorError> {
        check_invertible(&a)?;
        check_invertible(&b)?;
        Ok(Self { a, b })
    }

    pub fn identity(m: usize) -> Self {
        Self {
            a: BitMatrix::identity(m),
            b: BitMatrix::identity(m),
        }
    }
}

impl GaugeTriple {
    pub fn new(a: BitMatrix, b: BitMatrix, c: BitMatrix) -> Result<Self, TensorError> {
        check_invertible(&a)?;
        check_invertible(&b)?;
        check_invertible(&c)?;
        Ok(Self { a, b, c })
    }

    pub fn identity(m: usize) -> Self {
        Self::identity_for((m, m, m))
    }

    pub fn identity_for(dims: (usize, usize, usize)) -> Self {
        Self {
            a: BitMatrix::identity(dims.0),
            b: BitMatrix::identity(dims.1),
            c: BitMatrix::identity(dims.2),
        }
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        (self.a.rows(), self.b.rows(), self.c.rows())
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity_for(self.dims())
    }

    /// The gauge equal to applying `self` first and then `then`.
    pub fn then(&self, then: &GaugeTriple) -> GaugeTriple {
        let mul = |x: &BitMatrix, y: &BitMatrix| x.mul(y).expect("gauge shapes agree");
        GaugeTriple {
            a: mul(&self.a, &then.a),
            b: mul(&self.b, &then.b),
            c: mul(&self.c, &then.c),
        }
    }

    pub fn inverse(&self) -> GaugeTriple {
        let inv = |x: &BitMatrix| x.invert().expect("gauge matrices are invertible");
        GaugeTriple {
            a: inv(&self.a),
            b: inv(&self.b),
            c: inv(&self.c),
        }
    }
}

/// `chi_a^T * t * chi_b`.
pub fn gauge2(t: &BitMatrix, g: &GaugePair) -> Result<BitMatrix, TensorError> {
    if g.a.rows() != t.rows() || g.b.rows() != t.cols() {
        return Err(TensorError::DimensionMismatch);
    }
    let left = g.a.transpose().mul(t).map_err(|_| TensorError::DimensionMismatch)?;
    left.mul(&g.b).map_err(|_| TensorError::DimensionMismatch)
}

pub fn gauge3(t: &BitTensor3, g: &GaugeTriple) -> Result<BitTensor3, TensorError> {
    if g.dims() != t.dims() || !g.a.is_square() || !g.b.is_square() || !g.c.is_square() {
        return Err(TensorError::DimensionMismatch);
    }
    let mut out = BitTensor3::zeros(t.dims());
    let (ma, mb, mc) = t.dims();
    for (i, j, k) in t.cells() {
        for i2 in (0..ma).filter(|&x| g.a.get(i, x)) {
            for j2 in (0..mb).filter(|&x| g.b.get(j, x)) {
                for k2 in (0..mc).filter(|&x| g.c.get(k, x)) {
                    out.toggle((i2, j2, k2));
                }
            }
        }
    }
    Ok(out)
}
