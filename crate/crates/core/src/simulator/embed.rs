use crate::cohomology::MultilinearForm;
use crate::gf2::{BitTensor3, BooleanFunction};

use super::build::{build_state, Convention};
use super::lattice::{Color, Lattice};
use super::state::{apply_fractional_symmetry, is_same_state, QubitLabel, SignState};
use super::{SimError, MAX_QUBITS};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PadState {
    Plus,
    Zero,
}

/// A cocycle state carried into three copies of the layer space: a site of
/// color `X` keeps its qubits in copy `X` (layers `X*m .. X*m + m`); the other
/// `2m` layers per site are unentangled pads.
#[derive(Debug, Clone)]
pub struct EmbeddedState {
    base: SignState,
    lattice: Lattice,
    m: usize,
    pads: Vec<(QubitLabel, PadState)>,
}

impl EmbeddedState {
    pub fn base(&self) -> &SignState {
        &self.base
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn qubit_count(&self) -> usize {
        3 * self.m * self.lattice.site_count()
    }

    /// Embedded position of an original qubit.
    pub fn embedded_label(&self, original: QubitLabel) -> QubitLabel {
        QubitLabel {
            site: original.site,
            layer: self.lattice.color(original.site).index() * self.m + original.layer,
        }
    }

    pub fn pads(&self) -> &[(QubitLabel, PadState)] {
        &self.pads
    }

    pub fn set_pad(&mut self, label: QubitLabel, state: PadState) -> Result<(), SimError> {
        let slot = self
            .pads
            .iter_mut()
            .find(|(l, _)| *l == label)
            .ok_or(SimError::NotPresent(label))?;
        slot.1 = state;
        Ok(())
    }

    /// Color and original generator touched by global generator `q` in
    /// `0..3m`.
    pub fn generator_action(&self, q: usize) -> (Color, usize) {
        (Color::ALL[q / self.m], q % self.m)
    }

    /// The full `3m`-layer state. Requires every pad in `|+>`.
    pub fn materialize(&self) -> Result<SignState, SimError> {
        if self.qubit_count() > MAX_QUBITS {
            return Err(SimError::TooManyQubits {
                qubits: self.qubit_count(),
                max: MAX_QUBITS,
            });
        }
        if self.pads.iter().any(|(_, s)| *s != PadState::Plus) {
            return Err(SimError::NotSignState);
        }
        let sites = self.lattice.site_count();
        let labels: Vec<QubitLabel> = (0..sites)
            .flat_map(|site| (0..3 * self.m).map(move |layer| QubitLabel { site, layer }))
            .collect();
        let positions: Vec<usize> = self
            .base
            .labels()
            .iter()
            .map(|&l| {
                let e = self.embedded_label(l);
                e.site * 3 * self.m + e.layer
            })
            .collect();
        let phase = BooleanFunction::from_fn(labels.len(), |z| {
            let x = positions
                .iter()
                .enumerate()
                .fold(0u64, |acc, (q, &p)| acc | (((z >> p) & 1) << q));
            self.base.phase().eval(x)
        });
        SignState::from_phase(labels, phase)
    }
}

pub fn embed_g3(t: &BitTensor3, lat: &Lattice) -> Result<EmbeddedState, SimError> {
    let base = build_state(lat, &MultilinearForm::Trilinear(t.clone()), Convention::Plain)?;
    let m = t.dims().0;
    let mut pads = Vec::new();
    for site in 0..lat.site_count() {
        let own = lat.color(site).index();
        for copy in (0..3).filter(|&c| c != own) {
            for l in 0..m {
                pads.push((
                    QubitLabel {
                        site,
                        layer: copy * m + l,
                    },
                    PadState::Plus,
                ));
            }
        }
    }
    Ok(EmbeddedState {
        base,
        lattice: lat.clone(),
        m,
        pads,
    })
}

/// Invariance under each of the `3m` global generators, where generator `q`
/// applies X to layer `q` of every site.
pub fn check_global_symmetry(e: &EmbeddedState) -> Result<bool, SimError> {
    for q in 0..3 * e.m {
        let pads_fixed = e
            .pads
            .iter()
            .filter(|(l, _)| l.layer == q)
            .all(|(_, s)| *s == PadState::Plus);
        if !pads_fixed {
            return Ok(false);
        }
        let (color, gen) = e.generator_action(q);
        let moved = apply_fractional_symmetry(&e.base, &e.lattice, color, 1 << gen);
        if !is_same_state(&moved, &e.base)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Applies global generator `q` to a materialized embedded state.
pub fn apply_global_generator(s: &SignState, q: usize) -> SignState {
    let mask = s
        .labels()
        .iter()
        .enumerate()
        .filter(|(_, l)| l.layer == q)
        .fold(0u64, |acc, (i, _)| acc | (1 << i));
    s.flip(mask)
}
