//! End-to-end acceptance run. Prints one line per criterion and exits
//! nonzero if any fails.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use cocycle_cli::commands::cmd_classify;
use cocycle_core::cohomology::{cohomology_order, Cochain, Form, MultilinearForm};
use cocycle_core::gf2::{BitMatrix, BitTensor3, BooleanFunction};
use cocycle_core::simulator::*;
use cocycle_core::tensor_forms::{
    classify_orbits_with, diagonal_normal_form, gauge2, spto_labels, ColorConvention,
};
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn matrix(m: usize, code: u64) -> BitMatrix {
    let mut a = BitMatrix::zeros(m, m);
    for c in 0..m * m {
        a.set(c / m, c % m, (code >> c) & 1 == 1);
    }
    a
}

/// Rank as log2 of the number of distinct row combinations.
fn span_rank(a: &BitMatrix) -> usize {
    let rows: Vec<u64> = (0..a.rows()).map(|i| a.row_word(i)).collect();
    let span: HashSet<u64> = (0..1u64 << rows.len())
        .map(|s| {
            rows.iter()
                .enumerate()
                .filter(|(i, _)| (s >> i) & 1 == 1)
                .fold(0, |acc, (_, r)| acc ^ r)
        })
        .collect();
    span.len().trailing_zeros() as usize
}

fn zeta(m: usize, convention: ColorConvention) -> Result<u64, String> {
    let report = cmd_classify(m, convention, None, true).map_err(|e| e.to_string())?;
    ensure(report.passed(), "census does not partition the codes")?;
    report.results["zeta"].as_u64().ok_or_else(|| "no zeta in report".into())
}

fn criterion_1() -> Check {
    let t = Instant::now();
    let z1 = zeta(1, ColorConvention::ADOPTED)?;
    let t1 = t.elapsed();
    ensure(z1 == 1, format!("zeta(1) = {z1}"))?;
    ensure(t1 < Duration::from_secs(1), format!("m=1 took {t1:?}"))?;

    let t = Instant::now();
    let candidates = [ColorConvention::GaugeOnly, ColorConvention::WithColorPermutations];
    let mut fixed = None;
    let mut seen = Vec::new();
    for c in candidates {
        let z = zeta(2, c)?;
        seen.push(format!("{}={z}", c.name()));
        if z == 4 && fixed.is_none() {
            fixed = Some(c);
        }
    }
    let t2 = t.elapsed();
    let convention = fixed.ok_or_else(|| format!("no convention gives zeta(2)=4: {seen:?}"))?;
    ensure(t2 < Duration::from_secs(60), format!("m=2 took {t2:?}"))?;

    let t = Instant::now();
    let z3 = zeta(3, convention)?;
    let t3 = t.elapsed();
    ensure(z3 == 50, format!("zeta(3) = {z3} under {}", convention.name()))?;
    ensure(t3 < Duration::from_secs(30 * 60), format!("m=3 took {t3:?}"))?;
    Ok(format!(
        "zeta = 1, 4, 50 under {} (m=3 in {:.1}s)",
        convention.name(),
        t3.as_secs_f64()
    ))
}

fn criterion_2() -> Check {
    let mut total = 0;
    for m in 1..=3 {
        for code in 0..1u64 << (m * m) {
            let a = matrix(m, code);
            let d = diagonal_normal_form(&a).map_err(|e| e.to_string())?;
            let r = span_rank(&a);
            ensure(d.rank == r, format!("m={m} code={code}: r={} rank={r}", d.rank))?;
            let diag = BitMatrix::from_row_words(m, &(0..m).map(|i| if i < r { 1 << i } else { 0 }).collect::<Vec<_>>());
            ensure(d.form == diag, format!("m={m} code={code}: form not diagonal"))?;
            ensure(
                gauge2(&a, &d.gauge).map_err(|e| e.to_string())? == diag,
                format!("m={m} code={code}: gauge does not certify"),
            )?;
            ensure(span_rank(&d.gauge.a) == m && span_rank(&d.gauge.b) == m, "singular gauge")?;
            total += 1;
        }
    }
    Ok(format!("{total} matrices, r = rank with certifying gauge"))
}

fn criterion_3() -> Check {
    let chain = build_chain(4).map_err(|e| e.to_string())?;
    let r = symmetry_sweep(2, 1, &chain).map_err(|e| e.to_string())?;
    ensure(r.sets_equal, format!("{r:?}"))?;
    Ok(format!(
        "{} cocycles, {} symmetric states = {} bilinear states",
        r.cocycle_count, r.symmetric_states, r.multilinear_states
    ))
}

fn criterion_4() -> Check {
    let uj = build_union_jack(2, 2).map_err(|e| e.to_string())?;
    for code in 0..256u64 {
        let t = BitTensor3::from_code((2, 2, 2), code);
        let s = build_state(&uj, &MultilinearForm::Trilinear(t), Convention::Plain)
            .map_err(|e| e.to_string())?;
        for color in Color::ALL {
            for g in 1..4 {
                let moved = apply_fractional_symmetry(&s, &uj, color, g);
                ensure(
                    is_same_state(&moved, &s).map_err(|e| e.to_string())?,
                    format!("code {code} not invariant under {color} g={g}"),
                )?;
            }
        }
    }
    Ok("256 tensors x 3 colors x 3 elements invariant".into())
}

fn criterion_5() -> Check {
    let mut count = 0;
    let chain = build_chain(6).map_err(|e| e.to_string())?;
    let uj = build_union_jack(2, 2).map_err(|e| e.to_string())?;
    let mut cases: Vec<(&Lattice, MultilinearForm)> = Vec::new();
    for m in 1..=2 {
        for code in 0..1u64 << (m * m) {
            cases.push((&chain, MultilinearForm::Bilinear(matrix(m, code))));
        }
    }
    for code in 0..2 {
        cases.push((&uj, MultilinearForm::Trilinear(BitTensor3::from_code((1, 1, 1), code))));
    }
    for (lat, f) in cases {
        let h = build_state(lat, &f, Convention::Homogeneous).map_err(|e| e.to_string())?;
        let p = build_state(lat, &f, Convention::Plain).map_err(|e| e.to_string())?;
        ensure(is_same_state(&h, &p).map_err(|e| e.to_string())?, format!("{f:?} differs"))?;
        count += 1;
    }
    Ok(format!("{count} forms agree"))
}

fn criterion_6() -> Check {
    let uj = build_union_jack(2, 2).map_err(|e| e.to_string())?;
    let census = classify_orbits_with(2, ColorConvention::ADOPTED, None).map_err(|e| e.to_string())?;
    for &code in &census.irreducible_representatives {
        let t = BitTensor3::from_code((2, 2, 2), code);
        let r = reduce_to_union_jack(&t, &uj, None, Outcomes::Zero).map_err(|e| e.to_string())?;
        ensure(r.ok, format!("m=2 representative {code:#x} not reduced"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut done = 0;
    while done < 100 {
        let t = BitTensor3::from_code((3, 3, 3), rng.gen::<u64>() & ((1 << 27) - 1));
        if t.is_zero() {
            continue;
        }
        let r = reduce_to_union_jack(&t, &uj, None, Outcomes::Zero).map_err(|e| e.to_string())?;
        ensure(r.ok, format!("m=3 tensor {:#x} not reduced", t.code()))?;
        done += 1;
    }
    Ok(format!(
        "{} m=2 representatives and 100 random m=3 tensors reduce",
        census.irreducible_representatives.len()
    ))
}

fn criterion_7() -> Check {
    let uj = build_union_jack(2, 2).map_err(|e| e.to_string())?;
    let mut count = 0;
    for m in 1..=2usize {
        let mut labels = HashSet::new();
        for code in 0..1u64 << (m * m * m) {
            let t = BitTensor3::from_code((m, m, m), code);
            ensure(labels.insert(spto_labels(&t)), format!("m={m}: label collision at {code}"))?;
            let e = embed_g3(&t, &uj).map_err(|e| e.to_string())?;
            ensure(
                check_global_symmetry(&e).map_err(|e| e.to_string())?,
                format!("m={m} code={code}: embedded state not symmetric"),
            )?;
            count += 1;
        }
    }
    Ok(format!("{count} tensors: labels injective, embeddings symmetric"))
}

fn criterion_8() -> Check {
    let dd_trivial = |x: &Cochain| -> Result<bool, String> {
        let dd = x
            .coboundary()
            .and_then(|y| y.coboundary())
            .map_err(|e| e.to_string())?;
        Ok(dd.is_trivial())
    };
    let mut count = 0;
    for d in 0..=2usize {
        for bits in 0..1u64 << (1 << d) {
            for form in [Form::Inhomogeneous, Form::Homogeneous] {
                let table = BooleanFunction::from_fn(d, |x| (bits >> x) & 1 == 1);
                let x = Cochain::from_table(1, d, form, table).map_err(|e| e.to_string())?;
                ensure(dd_trivial(&x)?, format!("m=1 d={d} table {bits:#b}"))?;
                count += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..1000 {
        let d = rng.gen_range(0..=2usize);
        let form = if rng.gen() { Form::Inhomogeneous } else { Form::Homogeneous };
        let bits: Vec<bool> = (0..1u64 << (2 * d)).map(|_| rng.gen()).collect();
        let table = BooleanFunction::from_fn(2 * d, |x| bits[x as usize]);
        let x = Cochain::from_table(2, d, form, table).map_err(|e| e.to_string())?;
        ensure(dd_trivial(&x)?, format!("random m=2 d={d} cochain"))?;
        count += 1;
    }
    let orders: Vec<u128> = (1..=3)
        .map(cohomology_order)
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    ensure(orders == [2, 8, 128], format!("orders {orders:?}"))?;
    Ok(format!("{count} cochains with trivial dd, orders 2, 8, 128"))
}

/// Exact rank over the rationals of the full amplitude matrix.
fn rational_rank(s: &SignState, left: &[usize]) -> usize {
    let n = s.qubit_count();
    let right: Vec<usize> = (0..n).filter(|q| !left.contains(q)).collect();
    let spread = |bits: u64, qs: &[usize]| {
        qs.iter().enumerate().fold(0u64, |acc, (i, &q)| acc | (((bits >> i) & 1) << q))
    };
    let mut a: Vec<Vec<BigRational>> = (0..1u64 << left.len())
        .map(|x| {
            (0..1u64 << right.len())
                .map(|y| {
                    let v: i64 = if s.phase().eval(spread(x, left) | spread(y, &right)) { -1 } else { 1 };
                    BigRational::from_integer(v.into())
                })
                .collect()
        })
        .collect();
    let (rows, cols) = (a.len(), a[0].len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(rank, p);
        for r in rank + 1..rows {
            if !a[r][c].is_zero() {
                let f = &a[r][c] / &a[rank][c];
                let pivot_row = a[rank].clone();
                for (x, p) in a[r][c..].iter_mut().zip(&pivot_row[c..]) {
                    *x -= p * &f;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn criterion_9() -> Check {
    let chain = build_chain(6).map_err(|e| e.to_string())?;
    let mut count = 0;
    for m in 1..=2usize {
        let side: Vec<QubitLabel> = (0..3)
            .flat_map(|site| (0..m).map(move |layer| QubitLabel { site, layer }))
            .collect();
        let left: Vec<usize> = (0..3 * m).collect();
        for code in 0..1u64 << (m * m) {
            let a = matrix(m, code);
            let s = build_state(&chain, &MultilinearForm::Bilinear(a.clone()), Convention::Plain)
                .map_err(|e| e.to_string())?;
            let log2 = schmidt_rank_log2(&s, &side).map_err(|e| e.to_string())? as usize;
            let r = span_rank(&a);
            ensure(log2 == 2 * r, format!("m={m} code={code}: log2 rank {log2}, 2r = {}", 2 * r))?;
            let oracle = rational_rank(&s, &left);
            ensure(oracle == 1 << log2, format!("m={m} code={code}: oracle rank {oracle}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} matrices: log2 Schmidt rank = 2 rank"))
}

fn main() {
    type Criterion = (&'static str, fn() -> Check, Duration);
    let criteria: [Criterion; 9] = [
        ("irreducible census", criterion_1, Duration::from_secs(31 * 60)),
        ("d=2 normal form", criterion_2, Duration::from_secs(60)),
        ("cocycle symmetry sweep", criterion_3, Duration::from_secs(10)),
        ("fractional symmetry", criterion_4, Duration::from_secs(5 * 60)),
        ("convention equivalence", criterion_5, Duration::from_secs(5 * 60)),
        ("reduction to Union Jack", criterion_6, Duration::from_secs(10 * 60)),
        ("labels and embedding", criterion_7, Duration::from_secs(10 * 60)),
        ("cohomology engine", criterion_8, Duration::from_secs(60)),
        ("Schmidt rank", criterion_9, Duration::from_secs(5 * 60)),
    ];
    let mut failures = 0;
    for (n, (name, check, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if elapsed <= *budget => Ok(msg),
            Ok(msg) => Err(format!("{msg}, but took {elapsed:?} (budget {budget:?})")),
            Err(e) => Err(e),
        };
        match outcome {
            Ok(msg) => println!("criterion {}: PASS {name}: {msg} [{:.2}s]", n + 1, elapsed.as_secs_f64()),
            Err(msg) => {
                failures += 1;
                println!("criterion {}: FAIL {name}: {msg} [{:.2}s]", n + 1, elapsed.as_secs_f64());
            }
        }
    }
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
    println!("all 9 criteria passed");
}
