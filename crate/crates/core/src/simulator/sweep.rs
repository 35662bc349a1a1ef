use std::collections::HashSet;

use crate::cohomology::{cocycle_basis, Cochain, Form, MultilinearForm};
use crate::gf2::{BitMatrix, BitTensor3, BitVector, BooleanFunction};

use super::build::build_cochain_state;
use super::lattice::Lattice;
use super::state::{apply_fractional_symmetry, is_same_state, SignState};
use super::{SimError, MAX_QUBITS};

/// Largest cocycle-space dimension a sweep will enumerate.
pub const MAX_SWEEP_DIM: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepReport {
    pub degree: usize,
    pub m: usize,
    pub cocycle_count: u64,
    /// Cocycles whose state is invariant under every color and generator.
    pub symmetric_cocycles: u64,
    pub multilinear_forms: u64,
    /// Distinct states from symmetric cocycles.
    pub symmetric_states: usize,
    /// Distinct states from multilinear forms.
    pub multilinear_states: usize,
    /// The two state sets coincide.
    pub sets_equal: bool,
}

fn is_fractionally_symmetric(s: &SignState, lat: &Lattice, m: usize) -> Result<bool, SimError> {
    for &color in lat.colors_in_use() {
        for gen in 0..m {
            let moved = apply_fractional_symmetry(s, lat, color, 1 << gen);
            if !is_same_state(&moved, s)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn key(s: &SignState) -> BooleanFunction {
    let mut p = s.phase().clone();
    if p.eval(0) {
        p.negate();
    }
    p
}

fn all_forms(d: usize, m: usize) -> Vec<MultilinearForm> {
    let cells = m.pow(d as u32);
    (0..1u64 << cells)
        .map(|code| match d {
            1 => MultilinearForm::Linear(BitVector::from_u64(m, code)),
            2 => {
                let mut a = BitMatrix::zeros(m, m);
                for c in 0..cells {
                    a.set(c / m, c % m, (code >> c) & 1 == 1);
                }
                MultilinearForm::Bilinear(a)
            }
            _ => MultilinearForm::Trilinear(BitTensor3::from_code((m, m, m), code)),
        })
        .collect()
}

/// Enumerates every sign-valued `d`-cocycle of `Z_2^m`, builds its state on
/// `lat` and compares the fractionally symmetric states with those generated
/// by `d`-linear forms.
pub fn symmetry_sweep(d: usize, m: usize, lat: &Lattice) -> Result<SweepReport, SimError> {
    if d != lat.degree() {
        return Err(SimError::Arity {
            expected: lat.degree(),
            found: d,
        });
    }
    if lat.site_count() * m > MAX_QUBITS {
        return Err(SimError::TooManyQubits {
            qubits: lat.site_count() * m,
            max: MAX_QUBITS,
        });
    }
    let basis = cocycle_basis(m, d)?;
    if basis.len() > MAX_SWEEP_DIM {
        return Err(SimError::SweepTooLarge {
            cocycles_log2: basis.len(),
        });
    }
    let cocycle_count = 1u64 << basis.len();

    let mut symmetric = HashSet::new();
    let mut symmetric_cocycles = 0;
    for combo in 0..cocycle_count {
        let mut table = BooleanFunction::zero(m * d);
        for (b, x) in basis.iter().enumerate() {
            if (combo >> b) & 1 == 1 {
                table.xor_assign(x.table());
            }
        }
        let x = Cochain::from_table(m, d, Form::Inhomogeneous, table)?;
        let s = build_cochain_state(lat, &x)?;
        if is_fractionally_symmetric(&s, lat, m)? {
            symmetric_cocycles += 1;
            symmetric.insert(key(&s));
        }
    }

    let forms = all_forms(d, m);
    let mut multilinear = HashSet::new();
    for f in &forms {
        multilinear.insert(key(&build_cochain_state(lat, &f.to_cochain()?)?));
    }
    Ok(SweepReport {
        degree: d,
        m,
        cocycle_count,
        symmetric_cocycles,
        multilinear_forms: forms.len() as u64,
        symmetric_states: symmetric.len(),
        multilinear_states: multilinear.len(),
        sets_equal: symmetric == multilinear,
    })
}
