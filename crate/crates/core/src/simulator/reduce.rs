use rand::{Rng, SeedableRng};

use crate::cohomology::MultilinearForm;
use crate::gf2::{BitTensor3, Cell};
use crate::tensor_forms::{edge_disjoint_form, GaugeTriple};

use super::build::{build_state, Convention};
use super::lattice::{Lattice, LatticeKind};
use super::state::{MeasurementRecord, QubitLabel, SignState};
use super::{SimError, MAX_QUBITS};

/// How the non-fiducial Z outcomes are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Outcomes {
    #[default]
    Zero,
    /// Independent fair bits from a seeded generator.
    Seeded(u64),
}

#[derive(Debug, Clone)]
pub struct Reduction {
    pub residual: SignState,
    pub record: MeasurementRecord,
    pub gauge: GaugeTriple,
    pub fiducial: Cell,
    pub ok: bool,
}

/// One-layer Union Jack state on `lat`.
pub fn union_jack_reference(lat: &Lattice) -> Result<SignState, SimError> {
    build_state(
        lat,
        &MultilinearForm::Trilinear(BitTensor3::from_code((1, 1, 1), 1)),
        Convention::Plain,
    )
}

/// Brings `t` to edge-disjoint form with layer-mixing basis changes, then
/// measures every layer but the fiducial one on each color in Z. `ok` holds
/// when what is left differs from the Union Jack state by an affine phase,
/// i.e. by Z byproducts only.
pub fn reduce_to_union_jack(
    t: &BitTensor3,
    lat: &Lattice,
    fiducial: Option<Cell>,
    outcomes: Outcomes,
) -> Result<Reduction, SimError> {
    if !matches!(lat.kind(), LatticeKind::UnionJack { .. }) {
        return Err(SimError::UnsupportedLattice);
    }
    let m = t.m().ok_or(SimError::Arity {
        expected: 3,
        found: 3,
    })?;
    if m > 3 || lat.site_count() * m > MAX_QUBITS {
        return Err(SimError::TooManyQubits {
            qubits: lat.site_count() * m,
            max: MAX_QUBITS,
        });
    }
    let form = edge_disjoint_form(t, fiducial)?;
    let state = build_state(lat, &MultilinearForm::Trilinear(t.clone()), Convention::Plain)?;
    let chis = [&form.gauge.a, &form.gauge.b, &form.gauge.c];
    let mut state = state.apply_layer_maps(|site| chis[lat.color(site).index()].clone())?;

    let f = [form.fiducial.0, form.fiducial.1, form.fiducial.2];
    let mut rng = match outcomes {
        Outcomes::Zero => None,
        Outcomes::Seeded(seed) => Some(rand_chacha::ChaCha8Rng::seed_from_u64(seed)),
    };
    let mut record = MeasurementRecord::default();
    for site in 0..lat.site_count() {
        let keep = f[lat.color(site).index()];
        for layer in (0..m).filter(|&l| l != keep) {
            let outcome = rng.as_mut().map_or(0, |r| r.gen_range(0..=1u8));
            state = record.measure(&state, QubitLabel { site, layer }, outcome)?;
        }
    }

    let reference = union_jack_reference(lat)?;
    let residual_phase = state.phase();
    let byproduct = residual_phase.xor(reference.phase());
    let ok = byproduct.is_affine();
    record.byproduct = Some(byproduct);
    Ok(Reduction {
        residual: state,
        record,
        gauge: form.gauge,
        fiducial: form.fiducial,
        ok,
    })
}
