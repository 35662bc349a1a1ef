//! Sign-valued cochains on `G = (Z_2)^m`.
//!
//! A cochain takes values in `{+1, -1}` and is stored as the table of its
//! Z_2 exponents. Group elements are `m`-bit words (bit `i` is the coordinate
//! along generator `e_i`), and a tuple `(g_1, .., g_d)` is packed into one
//! table index with `g_1` in the lowest `m` bits.

use thiserror::Error;

use crate::gf2::{BitMatrix, BitTensor3, BitVector, BooleanFunction};

/// Largest packed argument width a cochain table may use.
pub const MAX_TABLE_BITS: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomologyError {
    #[error("cochain over (Z2)^{m} of degree {degree} needs 2^{bits} entries, above the 2^{max} limit")]
    TooLarge {
        m: usize,
        degree: usize,
        bits: usize,
        max: usize,
    },
    #[error("expected {expected} arguments, got {found}")]
    Arity { expected: usize, found: usize },
    #[error("degree {0} is not supported here")]
    UnsupportedDegree(usize),
    #[error("group order 2^{0} has no fixed-width representation")]
    Overflow(u64),
    #[error("m must be at least 1")]
    EmptyGroup,
}

/// The elementary abelian group `(Z_2)^m` with its standard generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupZ2m {
    m: usize,
}

impl GroupZ2m {
    pub fn new(m: usize) -> Self {
        assert!(m <= 16, "(Z2)^{m} is outside the supported range");
        Self { m }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn order(&self) -> u64 {
        1u64 << self.m
    }

    pub fn identity(&self) -> u64 {
        0
    }

    pub fn generator(&self, i: usize) -> u64 {
        assert!(i < self.m);
        1u64 << i
    }

    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.order()
    }

    pub fn to_bits(&self, g: u64) -> BitVector {
        BitVector::from_u64(self.m, g)
    }

    pub fn from_bits(&self, v: &BitVector) -> u64 {
        assert_eq!(v.len(), self.m);
        v.to_u64()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Form {
    Inhomogeneous,
    /// Stored through `h(a_1, .., a_d) = lambda(e, a_1, .., a_d)`; the full
    /// homogeneous cochain is `lambda(a_0, .., a_d) = h(a_0 a_1, .., a_0 a_d)`.
    Homogeneous,
}

/// A `{+1,-1}`-valued `d`-cochain, stored as Z_2 exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cochain {
    group: GroupZ2m,
    degree: usize,
    form: Form,
    table: BooleanFunction,
}

fn check_size(m: usize, degree: usize) -> Result<(), CohomologyError> {
    let bits = m * degree;
    if bits > MAX_TABLE_BITS {
        return Err(CohomologyError::TooLarge {
            m,
            degree,
            bits,
            max: MAX_TABLE_BITS,
        });
    }
    Ok(())
}

fn pack(m: usize, args: &[u64]) -> u64 {
    args.iter()
        .enumerate()
        .fold(0, |acc, (i, &g)| acc | (g << (i * m)))
}

fn unpack(m: usize, degree: usize, index: u64) -> Vec<u64> {
    let mask = (1u64 << m) - 1;
    (0..degree).map(|i| (index >> (i * m)) & mask).collect()
}

impl Cochain {
    pub fn trivial(m: usize, degree: usize, form: Form) -> Result<Self, CohomologyError> {
        check_size(m, degree)?;
        Ok(Self {
            group: GroupZ2m::new(m),
            degree,
            form,
            table: BooleanFunction::zero(m * degree),
        })
    }

    /// Builds a cochain from its stored parameterization: `f(g_1..g_d)` for
    /// inhomogeneous, `f(a_1..a_d) = lambda(e, a_1..a_d)` for homogeneous.
    pub fn from_fn(
        m: usize,
        degree: usize,
        form: Form,
        f: impl Fn(&[u64]) -> bool,
    ) -> Result<Self, CohomologyError> {
        check_size(m, degree)?;
        let table = BooleanFunction::from_fn(m * degree, |x| f(&unpack(m, degree, x)));
        Ok(Self {
            group: GroupZ2m::new(m),
            degree,
            form,
            table,
        })
    }

    pub fn from_table(
        m: usize,
        degree: usize,
        form: Form,
        table: BooleanFunction,
    ) -> Result<Self, CohomologyError> {
        check_size(m, degree)?;
        if table.inputs() != m * degree {
            return Err(CohomologyError::Arity {
                expected: m * degree,
                found: table.inputs(),
            });
        }
        Ok(Self {
            group: GroupZ2m::new(m),
            degree,
            form,
            table,
        })
    }

    /// Exponent vector in packed-index order, the coordinates used by
    /// [`coboundary_matrix`].
    pub fn from_exponents(
        m: usize,
        degree: usize,
        form: Form,
        v: &BitVector,
    ) -> Result<Self, CohomologyError> {
        Self::from_fn(m, degree, form, |args| v.get(pack(m, args) as usize))
    }

    pub fn exponents(&self) -> BitVector {
        let size = self.table.size() as usize;
        let mut v = BitVector::zeros(size);
        for x in 0..size {
            if self.table.eval(x as u64) {
                v.set(x, true);
            }
        }
        v
    }

    pub fn group(&self) -> GroupZ2m {
        self.group
    }

    pub fn m(&self) -> usize {
        self.group.m
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn form(&self) -> Form {
        self.form
    }

    pub fn table(&self) -> &BooleanFunction {
        &self.table
    }

    pub fn is_trivial(&self) -> bool {
        self.table.is_zero()
    }

    /// Value of the stored parameterization at `args` (`d` elements).
    pub fn stored(&self, args: &[u64]) -> bool {
        debug_assert_eq!(args.len(), self.degree);
        self.table.eval(pack(self.m(), args))
    }

    /// Inhomogeneous value `xi(g_1, .., g_d)`, whatever the stored form.
    pub fn inhomogeneous_value(&self, args: &[u64]) -> bool {
        match self.form {
            Form::Inhomogeneous => self.stored(args),
            Form::Homogeneous => {
                // xi(g_1..g_d) = lambda(e, g_1, g_1 g_2, ..)
                let mut partial = 0;
                let lifted: Vec<u64> = args
                    .iter()
                    .map(|&g| {
                        partial ^= g;
                        partial
                    })
                    .collect();
                self.stored(&lifted)
            }
        }
    }

    /// Homogeneous value `lambda(a_0, .., a_d)`, whatever the stored form.
    pub fn homogeneous_value(&self, args: &[u64]) -> bool {
        debug_assert_eq!(args.len(), self.degree + 1);
        match self.form {
            Form::Homogeneous => {
                let a0 = args[0];
                let shifted: Vec<u64> = args[1..].iter().map(|&a| a ^ a0).collect();
                self.stored(&shifted)
            }
            Form::Inhomogeneous => {
                let steps: Vec<u64> = args.windows(2).map(|w| w[0] ^ w[1]).collect();
                self.stored(&steps)
            }
        }
    }

    pub fn convert_form(&self, target: Form) -> Cochain {
        if target == self.form {
            return self.clone();
        }
        let (m, d) = (self.m(), self.degree);
        let table = match target {
            Form::Inhomogeneous => {
                BooleanFunction::from_fn(m * d, |x| self.inhomogeneous_value(&unpack(m, d, x)))
            }
            Form::Homogeneous => BooleanFunction::from_fn(m * d, |x| {
                let mut args = vec![0];
                args.extend(unpack(m, d, x));
                self.homogeneous_value(&args)
            }),
        };
        Cochain {
            group: self.group,
            degree: d,
            form: target,
            table,
        }
    }

    /// The coboundary `d + 1`-cochain, in the same stored form.
    pub fn coboundary(&self) -> Result<Cochain, CohomologyError> {
        let (m, d) = (self.m(), self.degree);
        check_size(m, d + 1)?;
        let table = match self.form {
            Form::Inhomogeneous => BooleanFunction::from_fn(m * (d + 1), |x| {
                inhomogeneous_coboundary_value(&unpack(m, d + 1, x), |a| self.stored(a))
            }),
            Form::Homogeneous => BooleanFunction::from_fn(m * (d + 1), |x| {
                let mut args = vec![0];
                args.extend(unpack(m, d + 1, x));
                homogeneous_coboundary_value(&args, |a| self.homogeneous_value(a))
            }),
        };
        Ok(Cochain {
            group: self.group,
            degree: d + 1,
            form: self.form,
            table,
        })
    }

    pub fn is_cocycle(&self) -> Result<bool, CohomologyError> {
        Ok(self.coboundary()?.is_trivial())
    }

    /// Whether `self` is the coboundary of some sign-valued `(d-1)`-cochain.
    pub fn is_coboundary(&self) -> Result<bool, CohomologyError> {
        Ok(self.coboundary_preimage()?.is_some())
    }

    /// A sign-valued `(d-1)`-cochain whose coboundary is `self`, in
    /// inhomogeneous form, if one exists.
    pub fn coboundary_preimage(&self) -> Result<Option<Cochain>, CohomologyError> {
        if self.degree == 0 {
            return Err(CohomologyError::UnsupportedDegree(0));
        }
        let (m, d) = (self.m(), self.degree);
        let a = coboundary_matrix(m, d - 1)?;
        let target = self.convert_form(Form::Inhomogeneous).exponents();
        let solution = a
            .solve_linear(&target)
            .expect("coboundary matrix rows match the cochain table");
        solution
            .map(|x| Cochain::from_exponents(m, d - 1, Form::Inhomogeneous, &x))
            .transpose()
    }

    /// Pointwise product of two cochains (sum of exponents).
    pub fn product(&self, other: &Cochain) -> Cochain {
        assert_eq!(
            (self.m(), self.degree),
            (other.m(), other.degree),
            "cochain shape mismatch"
        );
        let other = other.convert_form(self.form);
        Cochain {
            group: self.group,
            degree: self.degree,
            form: self.form,
            table: self.table.xor(&other.table),
        }
    }
}

/// `xi(g_2..g_{d+1}) + sum_k xi(.., g_k g_{k+1}, ..) + xi(g_1..g_d)` over Z_2.
fn inhomogeneous_coboundary_value(args: &[u64], xi: impl Fn(&[u64]) -> bool) -> bool {
    let n = args.len();
    let d = n - 1;
    let mut acc = xi(&args[1..]);
    let mut merged = Vec::with_capacity(d);
    for k in 0..d {
        merged.clear();
        merged.extend_from_slice(&args[..k]);
        merged.push(args[k] ^ args[k + 1]);
        merged.extend_from_slice(&args[k + 2..]);
        acc ^= xi(&merged);
    }
    acc ^ xi(&args[..d])
}

/// `sum_k lambda(a_0, .., skip a_k, .., a_{d+1})` over Z_2.
fn homogeneous_coboundary_value(args: &[u64], lambda: impl Fn(&[u64]) -> bool) -> bool {
    let mut acc = false;
    let mut face = Vec::with_capacity(args.len() - 1);
    for k in 0..args.len() {
        face.clear();
        face.extend(args.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, &a)| a));
        acc ^= lambda(&face);
    }
    acc
}

/// Matrix of the inhomogeneous coboundary map on exponent vectors: column `x`
/// is the packed `d`-cochain index, row `y` the packed `(d+1)`-cochain index.
pub fn coboundary_matrix(m: usize, degree: usize) -> Result<BitMatrix, CohomologyError> {
    check_size(m, degree + 1)?;
    let rows = 1usize << (m * (degree + 1));
    let cols = 1usize << (m * degree);
    let mut a = BitMatrix::zeros(rows, cols);
    for y in 0..rows {
        let args = unpack(m, degree + 1, y as u64);
        let mut toggle = |sub: &[u64]| {
            let c = pack(m, sub) as usize;
            let cur = a.get(y, c);
            a.set(y, c, !cur);
        };
        let d = degree;
        toggle(&args[1..]);
        for k in 0..d {
            let mut merged = args[..k].to_vec();
            merged.push(args[k] ^ args[k + 1]);
            merged.extend_from_slice(&args[k + 2..]);
            toggle(&merged);
        }
        toggle(&args[..d]);
    }
    Ok(a)
}

/// Basis of the sign-valued `d`-cocycles (kernel of the coboundary matrix),
/// as inhomogeneous cochains.
pub fn cocycle_basis(m: usize, degree: usize) -> Result<Vec<Cochain>, CohomologyError> {
    coboundary_matrix(m, degree)?
        .kernel_basis()
        .iter()
        .map(|v| Cochain::from_exponents(m, degree, Form::Inhomogeneous, v))
        .collect()
}

/// `|H^3((Z_2)^m, U(1))| = 2^(m + C(m,2) + C(m,3))`, from the type-I/II/III
/// factor decomposition.
pub fn cohomology_order(m: usize) -> Result<u128, CohomologyError> {
    if m == 0 {
        return Err(CohomologyError::EmptyGroup);
    }
    let exp = cohomology_rank(m);
    if exp >= 128 {
        return Err(CohomologyError::Overflow(exp));
    }
    Ok(1u128 << exp)
}

/// Number of Z_2 factors of `H^3((Z_2)^m, U(1))`.
pub fn cohomology_rank(m: usize) -> u64 {
    let m = m as u64;
    m + m * m.saturating_sub(1) / 2 + m * m.saturating_sub(1) * m.saturating_sub(2) / 6
}

/// A `d`-linear sign function, `d` in 1..=3, given by its binary components.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MultilinearForm {
    Linear(BitVector),
    Bilinear(BitMatrix),
    Trilinear(BitTensor3),
}

impl MultilinearForm {
    pub fn degree(&self) -> usize {
        match self {
            Self::Linear(_) => 1,
            Self::Bilinear(_) => 2,
            Self::Trilinear(_) => 3,
        }
    }

    pub fn m(&self) -> usize {
        match self {
            Self::Linear(v) => v.len(),
            Self::Bilinear(a) => a.rows(),
            Self::Trilinear(t) => t.dims().0,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Self::Linear(v) => v.is_zero(),
            Self::Bilinear(a) => a.is_zero(),
            Self::Trilinear(t) => t.is_zero(),
        }
    }

    /// Z_2 exponent of the form at `args`: the contraction of the components
    /// with the argument coordinates.
    pub fn eval(&self, args: &[u64]) -> Result<bool, CohomologyError> {
        if args.len() != self.degree() {
            return Err(CohomologyError::Arity {
                expected: self.degree(),
                found: args.len(),
            });
        }
        let bit = |g: u64, i: usize| (g >> i) & 1 == 1;
        Ok(match self {
            Self::Linear(v) => v.ones().filter(|&i| bit(args[0], i)).count() % 2 == 1,
            Self::Bilinear(a) => {
                let mut acc = false;
                for i in (0..a.rows()).filter(|&i| bit(args[0], i)) {
                    for j in (0..a.cols()).filter(|&j| bit(args[1], j)) {
                        acc ^= a.get(i, j);
                    }
                }
                acc
            }
            Self::Trilinear(t) => t
                .cells()
                .into_iter()
                .filter(|&(i, j, k)| bit(args[0], i) && bit(args[1], j) && bit(args[2], k))
                .count()
                % 2
                == 1,
        })
    }

    /// The form as an inhomogeneous cochain. Requires square components.
    pub fn to_cochain(&self) -> Result<Cochain, CohomologyError> {
        let m = self.m();
        Cochain::from_fn(m, self.degree(), Form::Inhomogeneous, |args| {
            self.eval(args).expect("arity matches degree")
        })
    }

    /// Reads components off at generator tuples and returns the form if it
    /// reproduces `x` everywhere, `None` when `x` is not multilinear.
    pub fn extract(x: &Cochain) -> Result<Option<MultilinearForm>, CohomologyError> {
        let m = x.m();
        let x = x.convert_form(Form::Inhomogeneous);
        let form = match x.degree() {
            1 => MultilinearForm::Linear(BitVector::from_bits(
                &(0..m).map(|i| x.stored(&[1 << i])).collect::<Vec<_>>(),
            )),
            2 => {
                let mut a = BitMatrix::zeros(m, m);
                for i in 0..m {
                    for j in 0..m {
                        a.set(i, j, x.stored(&[1 << i, 1 << j]));
                    }
                }
                MultilinearForm::Bilinear(a)
            }
            3 => {
                let mut t = BitTensor3::cube(m);
                for i in 0..m {
                    for j in 0..m {
                        for k in 0..m {
                            t.set((i, j, k), x.stored(&[1 << i, 1 << j, 1 << k]));
                        }
                    }
                }
                MultilinearForm::Trilinear(t)
            }
            d => return Err(CohomologyError::UnsupportedDegree(d)),
        };
        Ok((form.to_cochain()? == x).then_some(form))
    }
}
