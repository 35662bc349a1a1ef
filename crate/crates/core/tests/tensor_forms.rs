use cocycle_core::gf2::{enumerate_gl, BitTensor3};
use cocycle_core::tensor_forms::*;
use proptest::prelude::*;

fn gauge_from(m: usize, picks: (usize, usize, usize)) -> GaugeTriple {
    let gl = enumerate_gl(m).unwrap();
    let n = gl.len();
    GaugeTriple::new(
        gl[picks.0 % n].clone(),
        gl[picks.1 % n].clone(),
        gl[picks.2 % n].clone(),
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn support_dimensions_are_gauge_invariant(m in 1usize..=3, code: u64, picks: (usize, usize, usize)) {
        let t = BitTensor3::from_code((m, m, m), code);
        let g = gauge_from(m, picks);
        let moved = gauge3(&t, &g).unwrap();
        prop_assert_eq!(supports(&t).dims(), supports(&moved).dims());
    }

    #[test]
    fn orbit_membership_is_gauge_invariant(m in 1usize..=2, code: u64, picks: (usize, usize, usize)) {
        let t = BitTensor3::from_code((m, m, m), code);
        let g = gauge_from(m, picks);
        for convention in [ColorConvention::GaugeOnly, ColorConvention::WithColorPermutations] {
            let a = orbit_representative(&t, convention).unwrap();
            let b = orbit_representative(&gauge3(&t, &g).unwrap(), convention).unwrap();
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn edge_disjoint_agreements_at_most_one(m in 1usize..=3, code: u64) {
        let t = BitTensor3::from_code((m, m, m), code);
        prop_assume!(!t.is_zero());
        let e = edge_disjoint_form(&t, None).unwrap();
        let f = e.fiducial;
        for c in e.tensor.cells() {
            let agree = usize::from(c.0 == f.0) + usize::from(c.1 == f.1) + usize::from(c.2 == f.2);
            prop_assert!(c == f || agree <= 1);
        }
    }

    #[test]
    fn labels_separate_tensors(m in 1usize..=3, x: u64, y: u64) {
        let a = BitTensor3::from_code((m, m, m), x);
        let b = BitTensor3::from_code((m, m, m), y);
        prop_assert_eq!(spto_labels(&a) == spto_labels(&b), a == b);
        prop_assert_eq!(spto_labels(&a).len(), a.cell_count());
    }
}

#[test]
fn census_representatives_name_orbits() {
    let census = classify_orbits(2).unwrap();
    assert_eq!(census.orbit_sizes.iter().sum::<u64>(), 256);
    assert_eq!(census.irreducible_class_count, 4);
    for code in 0..256u64 {
        let t = BitTensor3::from_code((2, 2, 2), code);
        let rep = orbit_representative(&t, census.convention).unwrap();
        assert!(census.representatives.contains(&rep));
        let irreducible = census.irreducible_representatives.contains(&rep);
        assert_eq!(irreducible, is_irreducible(&t).unwrap(), "code {code}");
    }
}

#[test]
fn census_is_independent_of_thread_count() {
    let one = classify_orbits_with(2, ColorConvention::GaugeOnly, Some(1)).unwrap();
    let three = classify_orbits_with(2, ColorConvention::GaugeOnly, Some(3)).unwrap();
    assert_eq!(one, three);
    assert!(classify_orbits(4).is_err());
}

#[test]
fn disjoint_r_of_every_pair_tensor_is_stable() {
    for code in 0..256u64 {
        let t = BitTensor3::from_code((2, 2, 2), code);
        let r = disjoint_normal_form(&t).unwrap().r();
        assert!(r <= 2);
        assert_eq!(r == 0, t.is_zero());
        for seed in 0..10 {
            assert_eq!(disjoint_normal_form_with(&t, SearchOrder::Shuffled(seed)).unwrap().r(), r);
        }
    }
}
