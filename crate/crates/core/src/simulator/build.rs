use crate::cohomology::{Cochain, Form, MultilinearForm};
use crate::gf2::BooleanFunction;

use super::lattice::Lattice;
use super::state::SignState;
use super::SimError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convention {
    /// The diagonal gate with eigenvalues `nu(e, g_1, .., g_d)` on each simplex.
    Homogeneous,
    /// One CZ or CCZ per nonzero component per simplex.
    Plain,
}

fn check_arity(lat: &Lattice, degree: usize, m: usize) -> Result<(), SimError> {
    if degree != lat.degree() {
        return Err(SimError::Arity {
            expected: lat.degree(),
            found: degree,
        });
    }
    if m == 0 {
        return Err(SimError::Arity {
            expected: lat.degree(),
            found: 0,
        });
    }
    Ok(())
}

pub fn build_state(
    lat: &Lattice,
    form: &MultilinearForm,
    convention: Convention,
) -> Result<SignState, SimError> {
    if let MultilinearForm::Trilinear(t) = form {
        if t.m().is_none() {
            return Err(SimError::Arity {
                expected: lat.degree(),
                found: form.degree(),
            });
        }
    }
    let m = form.m();
    check_arity(lat, form.degree(), m)?;
    match convention {
        Convention::Homogeneous => build_cochain_state(lat, &form.to_cochain()?),
        Convention::Plain => {
            let mut s = SignState::lattice_product(lat, m)?;
            let cells: Vec<Vec<usize>> = match form {
                MultilinearForm::Linear(v) => v.ones().map(|i| vec![i]).collect(),
                MultilinearForm::Bilinear(a) => (0..m)
                    .flat_map(|i| (0..m).map(move |j| (i, j)))
                    .filter(|&(i, j)| a.get(i, j))
                    .map(|(i, j)| vec![i, j])
                    .collect(),
                MultilinearForm::Trilinear(t) => {
                    t.cells().into_iter().map(|(i, j, k)| vec![i, j, k]).collect()
                }
            };
            for simplex in lat.simplices() {
                for cell in &cells {
                    let qubits: Vec<usize> = simplex
                        .iter()
                        .zip(cell)
                        .map(|(&site, &layer)| site * m + layer)
                        .collect();
                    s.apply_phase_monomial(&qubits);
                }
            }
            s.normalize();
            Ok(s)
        }
    }
}

/// State of an arbitrary cochain under the homogeneous convention.
pub fn build_cochain_state(lat: &Lattice, x: &Cochain) -> Result<SignState, SimError> {
    let (m, d) = (x.m(), x.degree());
    check_arity(lat, d, m)?;
    // gate exponent on one simplex as a function of its d*m qubits
    let local: BooleanFunction = x.convert_form(Form::Homogeneous).table().clone();
    let monomials = local.anf();
    let mut s = SignState::lattice_product(lat, m)?;
    for simplex in lat.simplices() {
        for &mono in &monomials {
            let qubits: Vec<usize> = (0..d * m)
                .filter(|b| (mono >> b) & 1 == 1)
                .map(|b| simplex[b / m] * m + b % m)
                .collect();
            s.apply_phase_monomial(&qubits);
        }
    }
    s.normalize();
    Ok(s)
}
