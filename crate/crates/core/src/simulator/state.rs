use crate::gf2::{BitMatrix, BooleanFunction};
use crate::tensor_forms::CodeMap;

use super::lattice::{Color, Lattice};
use super::{SimError, MAX_QUBITS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QubitLabel {
    pub site: usize,
    pub layer: usize,
}

/// Equal-magnitude real state `sum_z (-1)^phase(z) |z>`; bit `q` of `z` is
/// the qubit `labels[q]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignState {
    labels: Vec<QubitLabel>,
    phase: BooleanFunction,
}

/// Z outcomes taken so far, in measurement order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MeasurementRecord {
    pub measured: Vec<QubitLabel>,
    pub outcomes: Vec<u8>,
    /// Phase difference between the post-measurement state and its target,
    /// when one has been certified affine.
    pub byproduct: Option<BooleanFunction>,
}

impl SignState {
    /// `|+>` on every qubit.
    pub fn product(labels: Vec<QubitLabel>) -> Result<Self, SimError> {
        if labels.len() > MAX_QUBITS {
            return Err(SimError::TooManyQubits {
                qubits: labels.len(),
                max: MAX_QUBITS,
            });
        }
        let phase = BooleanFunction::zero(labels.len());
        Ok(Self { labels, phase })
    }

    /// Wraps a phase table; the global sign is normalized.
    pub fn from_phase(labels: Vec<QubitLabel>, phase: BooleanFunction) -> Result<Self, SimError> {
        if phase.inputs() != labels.len() {
            return Err(SimError::LabelMismatch);
        }
        let mut s = Self { labels, phase };
        s.normalize();
        Ok(s)
    }

    /// `m` layers on each site of the lattice, site-major.
    pub fn lattice_product(lat: &Lattice, m: usize) -> Result<Self, SimError> {
        let labels = (0..lat.site_count())
            .flat_map(|site| (0..m).map(move |layer| QubitLabel { site, layer }))
            .collect();
        Self::product(labels)
    }

    pub fn qubit_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[QubitLabel] {
        &self.labels
    }

    pub fn phase(&self) -> &BooleanFunction {
        &self.phase
    }

    pub fn index_of(&self, label: QubitLabel) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }

    /// Forces `phase(0..0) = 0`.
    pub fn normalize(&mut self) {
        if self.phase.eval(0) {
            self.phase.negate();
        }
    }

    /// Multiplies by `(-1)^(prod of the given qubits)`: CZ-type gates, or a
    /// global sign for the empty product.
    pub fn apply_phase_monomial(&mut self, qubits: &[usize]) {
        let mask = qubits.iter().fold(0u64, |acc, &q| acc | (1 << q));
        self.phase.xor_monomial(mask);
    }

    /// X on every qubit in `mask`.
    pub fn flip(&self, mask: u64) -> SignState {
        let mut out = Self {
            labels: self.labels.clone(),
            phase: self.phase.translate(mask),
        };
        out.normalize();
        out
    }

    /// Relabels basis strings by an invertible linear map per site: the new
    /// amplitude at `w` is the old amplitude at `chi_site * w`, where `chi`
    /// acts on the site's layer bits. Every qubit of the site must be present.
    pub fn apply_layer_maps(&self, chi_of_site: impl Fn(usize) -> BitMatrix) -> Result<SignState, SimError> {
        let n = self.labels.len();
        let mut images = vec![0u64; n];
        for (q, label) in self.labels.iter().enumerate() {
            let chi = chi_of_site(label.site);
            // unit vector at this layer maps to column `layer` of chi
            for row in 0..chi.rows() {
                if chi.get(row, label.layer) {
                    let target = QubitLabel {
                        site: label.site,
                        layer: row,
                    };
                    let idx = self.index_of(target).ok_or(SimError::NotPresent(target))?;
                    images[q] |= 1 << idx;
                }
            }
        }
        let map = CodeMap::from_basis_images(n, |q| images[q]);
        let mut out = Self {
            labels: self.labels.clone(),
            phase: self.phase.pull_back(|w| map.apply(w)),
        };
        out.normalize();
        Ok(out)
    }
}

/// Applies `g` (bit `i` = generator `i`) on every site of `color`.
pub fn apply_fractional_symmetry(s: &SignState, lat: &Lattice, color: Color, g: u64) -> SignState {
    let mask = s
        .labels
        .iter()
        .enumerate()
        .filter(|(_, l)| lat.color(l.site) == color && (g >> l.layer) & 1 == 1)
        .fold(0u64, |acc, (q, _)| acc | (1 << q));
    s.flip(mask)
}

pub fn is_same_state(a: &SignState, b: &SignState) -> Result<bool, SimError> {
    if a.labels != b.labels {
        return Err(SimError::LabelMismatch);
    }
    let (mut x, mut y) = (a.phase.clone(), b.phase.clone());
    if x.eval(0) {
        x.negate();
    }
    if y.eval(0) {
        y.negate();
    }
    Ok(x == y)
}

/// Projects `label` onto `|outcome>` and drops it from the state.
pub fn measure_z(s: &SignState, label: QubitLabel, outcome: u8) -> Result<SignState, SimError> {
    let q = s.index_of(label).ok_or(SimError::NotPresent(label))?;
    let mut labels = s.labels.clone();
    labels.remove(q);
    let mut out = SignState {
        labels,
        phase: s.phase.restrict(q, outcome == 1),
    };
    out.normalize();
    Ok(out)
}

impl MeasurementRecord {
    pub fn measure(&mut self, s: &SignState, label: QubitLabel, outcome: u8) -> Result<SignState, SimError> {
        let out = measure_z(s, label, outcome)?;
        self.measured.push(label);
        self.outcomes.push(outcome);
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simulator::build_chain;

    fn cluster4() -> (Lattice, SignState) {
        let lat = build_chain(4).unwrap();
        let mut s = SignState::lattice_product(&lat, 1).unwrap();
        for q in 0..4 {
            s.apply_phase_monomial(&[q, (q + 1) % 4]);
        }
        (lat, s)
    }

    #[test]
    fn sameness() {
        let (lat, cluster) = cluster4();
        assert!(is_same_state(&cluster, &cluster).unwrap());
        let product = SignState::lattice_product(&lat, 1).unwrap();
        assert!(!is_same_state(&cluster, &product).unwrap());
        let mut flipped = cluster.clone();
        flipped.apply_phase_monomial(&[]);
        assert!(is_same_state(&cluster, &flipped).unwrap());
        let other = SignState::lattice_product(&lat, 2).unwrap();
        assert!(is_same_state(&other, &product).is_err());
    }

    #[test]
    fn identity_symmetry() {
        let (lat, cluster) = cluster4();
        for color in [Color::A, Color::B] {
            assert_eq!(apply_fractional_symmetry(&cluster, &lat, color, 0), cluster);
        }
    }

    #[test]
    fn measurement() {
        let (_, cluster) = cluster4();
        let l = |site| QubitLabel { site, layer: 0 };
        let zero = measure_z(&cluster, l(0), 0).unwrap();
        assert_eq!(zero.qubit_count(), 3);
        // substitution z_0 = 0 leaves the single edge between sites 1 and 2
        let mut expected = BooleanFunction::zero(3);
        expected.xor_monomial(0b011);
        expected.xor_monomial(0b110);
        assert_eq!(zero.phase(), &expected);
        let one = measure_z(&cluster, l(0), 1).unwrap();
        let diff = zero.phase().xor(one.phase());
        assert!(diff.is_affine());
        assert!(!diff.is_zero());
        assert!(measure_z(&zero, l(0), 0).is_err());

        // an unentangled layer
        let lat = build_chain(4).unwrap();
        let mut two = SignState::lattice_product(&lat, 2).unwrap();
        for s in 0..4 {
            two.apply_phase_monomial(&[2 * s, 2 * ((s + 1) % 4)]);
        }
        let after = measure_z(&two, QubitLabel { site: 0, layer: 1 }, 0).unwrap();
        let again = measure_z(&two, QubitLabel { site: 0, layer: 1 }, 1).unwrap();
        assert_eq!(after, again);
    }

    #[test]
    fn layer_map_is_a_basis_permutation() {
        let lat = build_chain(4).unwrap();
        let mut s = SignState::lattice_product(&lat, 2).unwrap();
        s.apply_phase_monomial(&[0, 2]);
        let swap = BitMatrix::from_rows(&[[0, 1], [1, 0]]);
        let out = s.apply_layer_maps(|_| swap.clone()).unwrap();
        let mut expected = SignState::lattice_product(&lat, 2).unwrap();
        expected.apply_phase_monomial(&[1, 3]);
        assert_eq!(out, expected);
    }
}
