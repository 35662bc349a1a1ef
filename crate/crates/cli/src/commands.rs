use std::str::FromStr;

use cocycle_core::cohomology::MultilinearForm;
use cocycle_core::gf2::{BitMatrix, BitTensor3, Cell};
use cocycle_core::simulator::{
    apply_fractional_symmetry, build_chain, build_state, build_union_jack, check_global_symmetry,
    embed_g3, is_same_state, symmetry_sweep, reduce_to_union_jack, schmidt_rank_log2, Convention,
    Lattice, Outcomes, QubitLabel,
};
use cocycle_core::tensor_forms::{
    classify_orbits_with, diagonal_normal_form, disjoint_normal_form, edge_disjoint_form, gauge2,
    gauge3, is_irreducible, ColorConvention, GaugeTriple,
};
use serde_json::{json, Value};

use crate::document::{Document, ParseError, TensorDocument};
use crate::report::RunReport;

/// Qubits allowed in a simulation without `--allow-large`.
pub const DEFAULT_QUBIT_GUARD: usize = 20;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("{0}")]
    Usage(String),
    #[error("{0} (pass --allow-large to run anyway)")]
    Guard(String),
    #[error("{0}")]
    Failed(String),
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn failed(e: impl std::fmt::Display) -> CliError {
    CliError::Failed(e.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormalFormMode {
    Diagonal,
    Disjoint,
    EdgeDisjoint,
}

impl FromStr for NormalFormMode {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "diagonal" => Ok(Self::Diagonal),
            "disjoint" => Ok(Self::Disjoint),
            "edge-disjoint" | "edge_disjoint" => Ok(Self::EdgeDisjoint),
            _ => Err(usage(format!("unknown mode {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeSpec {
    Chain(usize),
    UnionJack(usize, usize),
}

impl FromStr for LatticeSpec {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, CliError> {
        let bad = || usage(format!("lattice {s:?} is neither chain-N nor WxH"));
        if let Some(n) = s.strip_prefix("chain-") {
            return n.parse().map(Self::Chain).map_err(|_| bad());
        }
        let (w, h) = s.split_once('x').ok_or_else(bad)?;
        Ok(Self::UnionJack(
            w.parse().map_err(|_| bad())?,
            h.parse().map_err(|_| bad())?,
        ))
    }
}

impl LatticeSpec {
    fn build(self) -> Result<Lattice, CliError> {
        match self {
            Self::Chain(n) => build_chain(n),
            Self::UnionJack(w, h) => build_union_jack(w, h),
        }
        .map_err(|e| usage(e.to_string()))
    }

    fn label(self) -> String {
        match self {
            Self::Chain(n) => format!("chain-{n}"),
            Self::UnionJack(w, h) => format!("{w}x{h}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Task {
    Symmetry,
    Reduce,
    Embed,
    Schmidt,
    Sweep,
}

impl FromStr for Task {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "symmetry" => Ok(Self::Symmetry),
            "reduce" => Ok(Self::Reduce),
            "embed" => Ok(Self::Embed),
            "schmidt" => Ok(Self::Schmidt),
            "sweep" => Ok(Self::Sweep),
            _ => Err(usage(format!("unknown task {s:?}"))),
        }
    }
}

pub fn parse_convention(s: &str) -> Result<ColorConvention, CliError> {
    match s {
        "adopted" => Ok(ColorConvention::ADOPTED),
        "gauge-only" => Ok(ColorConvention::GaugeOnly),
        "with-color-permutations" => Ok(ColorConvention::WithColorPermutations),
        _ => Err(usage(format!("unknown convention {s:?}"))),
    }
}

pub fn load_document(path: &str, text: &str) -> Result<Document, CliError> {
    Document::parse(text).map_err(|source| CliError::Parse {
        path: path.to_string(),
        source,
    })
}

fn rows(a: &BitMatrix) -> Value {
    (0..a.rows())
        .map(|i| {
            (0..a.cols())
                .map(|j| if a.get(i, j) { '1' } else { '0' })
                .collect::<String>()
        })
        .collect::<Vec<_>>()
        .into()
}

fn cells(t: &BitTensor3) -> Value {
    t.cells()
        .into_iter()
        .map(|(i, j, k)| json!([i, j, k]))
        .collect::<Vec<_>>()
        .into()
}

fn gauge_value(g: &GaugeTriple) -> Value {
    json!({ "a": rows(&g.a), "b": rows(&g.b), "c": rows(&g.c) })
}

fn tensor_of(doc: &Document) -> Result<&TensorDocument, CliError> {
    match doc {
        Document::Tensor(t) => Ok(t),
        Document::Cochain(_) => Err(usage("this command needs a tensor document")),
    }
}

fn cube(doc: &TensorDocument) -> Result<BitTensor3, CliError> {
    match (doc.degree(), doc.m()) {
        (3, Some(_)) => Ok(doc.tensor().expect("validated on parse")),
        (3, None) => Err(usage("this operation needs equal sides at all three colors")),
        (d, _) => Err(usage(format!("this operation needs a degree-3 tensor, got degree {d}"))),
    }
}

pub fn cmd_check(doc: &Document) -> Result<RunReport, CliError> {
    let canonical = doc.to_canonical();
    let mut report = RunReport::new("check", &[canonical.as_bytes()]);
    let cochain = match doc {
        Document::Tensor(t) => t
            .form()
            .ok_or_else(|| usage("check needs equal sides at every color"))?
            .to_cochain()
            .map_err(failed)?,
        Document::Cochain(c) => c.cochain(),
    };
    let cocycle = cochain.is_cocycle().map_err(failed)?;
    let form = MultilinearForm::extract(&cochain).map_err(failed)?;
    report.result("degree", cochain.degree());
    report.result("m", cochain.m());
    report.result("trivial", cochain.is_trivial());
    report.result("multilinear", form.is_some());
    if let Some(f) = form {
        let comps = match &f {
            MultilinearForm::Linear(v) => v.ones().map(|i| json!([i])).collect::<Vec<_>>().into(),
            MultilinearForm::Bilinear(a) => rows(a),
            MultilinearForm::Trilinear(t) => cells(t),
        };
        report.result("components", comps);
    }
    report.verdict("cocycle", cocycle);
    Ok(report)
}

pub fn cmd_normal_form(
    doc: &Document,
    mode: NormalFormMode,
    fiducial: Option<Cell>,
) -> Result<RunReport, CliError> {
    let t = tensor_of(doc)?;
    let canonical = doc.to_canonical();
    let args = format!("mode={mode:?} fiducial={fiducial:?}");
    let mut report = RunReport::new("normal-form", &[canonical.as_bytes(), args.as_bytes()]);
    match mode {
        NormalFormMode::Diagonal => {
            let a = t
                .matrix()
                .ok_or_else(|| usage("diagonal mode needs a degree-2 document"))?;
            let d = diagonal_normal_form(&a).map_err(failed)?;
            report.result("mode", "diagonal");
            report.result("r", d.rank);
            report.result("form", rows(&d.form));
            report.result("gauge", json!({ "a": rows(&d.gauge.a), "b": rows(&d.gauge.b) }));
            let certified = gauge2(&a, &d.gauge).map_err(failed)? == d.form && d.rank == a.rank();
            report.verdict("certified", certified);
        }
        NormalFormMode::Disjoint => {
            let tensor = t
                .tensor()
                .ok_or_else(|| usage("disjoint mode needs a degree-3 document"))?;
            let d = disjoint_normal_form(&tensor).map_err(failed)?;
            report.result("mode", "disjoint");
            report.result("r", d.r());
            report.result("gauge", gauge_value(&d.gauge));
            report.result("blocks", d.blocks.iter().map(cells).collect::<Vec<_>>());
            let mut certified = d.sum() == gauge3(&tensor, &d.gauge).map_err(failed)?;
            for b in &d.blocks {
                certified &= is_irreducible(b).map_err(failed)?;
            }
            report.verdict("certified", certified);
        }
        NormalFormMode::EdgeDisjoint => {
            let tensor = cube(t)?;
            let e = edge_disjoint_form(&tensor, fiducial).map_err(failed)?;
            report.result("mode", "edge-disjoint");
            report.result("fiducial", json!([e.fiducial.0, e.fiducial.1, e.fiducial.2]));
            report.result("tensor", cells(&e.tensor));
            report.result("gauge", gauge_value(&e.gauge));
            let certified = gauge3(&tensor, &e.gauge).map_err(failed)? == e.tensor;
            report.verdict("certified", certified);
        }
    }
    Ok(report)
}

pub fn cmd_classify(
    m: usize,
    convention: ColorConvention,
    threads: Option<usize>,
    allow_large: bool,
) -> Result<RunReport, CliError> {
    if m >= 3 && !allow_large {
        return Err(CliError::Guard(format!(
            "classifying m={m} sweeps 2^{} tensors",
            m * m * m
        )));
    }
    let args = format!("m={m} convention={}", convention.name());
    let mut report = RunReport::new("classify", &[args.as_bytes()]);
    let census = classify_orbits_with(m, convention, threads).map_err(failed)?;
    report.result("m", m);
    report.result("convention", convention.name());
    report.result("orbit_count", census.orbit_count);
    report.result("zeta", census.irreducible_class_count);
    report.result("orbit_sizes", census.orbit_sizes.clone());
    report.result(
        "irreducible_representatives",
        census
            .irreducible_representatives
            .iter()
            .map(|&c| cells(&BitTensor3::from_code((m, m, m), c)))
            .collect::<Vec<_>>(),
    );
    let total: u64 = census.orbit_sizes.iter().sum();
    report.verdict("partition", total == 1u64 << (m * m * m));
    Ok(report)
}

pub struct SimulateArgs {
    pub lattice: LatticeSpec,
    pub task: Task,
    pub seed: Option<u64>,
    pub m: Option<usize>,
    pub allow_large: bool,
}

fn guard(qubits: usize, allow_large: bool) -> Result<(), CliError> {
    if qubits > DEFAULT_QUBIT_GUARD && !allow_large {
        return Err(CliError::Guard(format!(
            "{qubits} qubits exceeds the default limit of {DEFAULT_QUBIT_GUARD}"
        )));
    }
    Ok(())
}

pub fn cmd_simulate(doc: Option<&Document>, args: &SimulateArgs) -> Result<RunReport, CliError> {
    let lat = args.lattice.build()?;
    let canonical = doc.map(Document::to_canonical).unwrap_or_default();
    let arg_text = format!(
        "lattice={} task={:?} seed={:?} m={:?}",
        args.lattice.label(),
        args.task,
        args.seed,
        args.m
    );
    let mut report = RunReport::new("simulate", &[canonical.as_bytes(), arg_text.as_bytes()]);
    report.result("lattice", args.lattice.label());

    if args.task == Task::Sweep {
        let m = args
            .m
            .or_else(|| doc.and_then(|d| tensor_of(d).ok()).and_then(TensorDocument::m))
            .ok_or_else(|| usage("sweep needs --m or an input document"))?;
        guard(lat.site_count() * m, args.allow_large)?;
        let r = symmetry_sweep(lat.degree(), m, &lat).map_err(failed)?;
        report.result("task", "sweep");
        report.result("degree", r.degree);
        report.result("m", r.m);
        report.result("cocycles", r.cocycle_count);
        report.result("symmetric_cocycles", r.symmetric_cocycles);
        report.result("symmetric_states", r.symmetric_states);
        report.result("multilinear_states", r.multilinear_states);
        report.verdict("symmetric_equals_multilinear", r.sets_equal);
        return Ok(report);
    }

    let t = tensor_of(doc.ok_or_else(|| usage("this task needs --input"))?)?;
    let form = t
        .form()
        .ok_or_else(|| usage("simulation needs equal sides at every color"))?;
    let m = form.m();
    if form.degree() != lat.degree() {
        return Err(usage(format!(
            "degree-{} document does not fit lattice {}",
            form.degree(),
            args.lattice.label()
        )));
    }
    report.result("m", m);
    match args.task {
        Task::Symmetry => {
            guard(lat.site_count() * m, args.allow_large)?;
            let s = build_state(&lat, &form, Convention::Plain).map_err(failed)?;
            let mut all = true;
            let mut checked = 0u64;
            for &color in lat.colors_in_use() {
                for g in 1..1u64 << m {
                    let moved = apply_fractional_symmetry(&s, &lat, color, g);
                    all &= is_same_state(&moved, &s).map_err(failed)?;
                    checked += 1;
                }
            }
            report.result("task", "symmetry");
            report.result("qubits", s.qubit_count());
            report.result("checks", checked);
            report.verdict("all_invariant", all);
        }
        Task::Reduce => {
            let tensor = cube(t)?;
            guard(lat.site_count() * m, args.allow_large)?;
            let outcomes = args.seed.map_or(Outcomes::Zero, Outcomes::Seeded);
            let r = reduce_to_union_jack(&tensor, &lat, None, outcomes).map_err(failed)?;
            report.result("task", "reduce");
            report.result("fiducial", json!([r.fiducial.0, r.fiducial.1, r.fiducial.2]));
            report.result("gauge", gauge_value(&r.gauge));
            report.result("measured", r.record.measured.len());
            report.result(
                "outcomes",
                r.record.outcomes.iter().map(|o| char::from(b'0' + o)).collect::<String>(),
            );
            report.verdict("ok", r.ok);
        }
        Task::Embed => {
            let tensor = cube(t)?;
            guard(lat.site_count() * m, args.allow_large)?;
            let e = embed_g3(&tensor, &lat).map_err(failed)?;
            report.result("task", "embed");
            report.result("embedded_qubits", e.qubit_count());
            report.verdict("global_symmetric", check_global_symmetry(&e).map_err(failed)?);
        }
        Task::Schmidt => {
            let a = t
                .matrix()
                .ok_or_else(|| usage("schmidt needs a degree-2 document on a chain"))?;
            guard(lat.site_count() * m, args.allow_large)?;
            let s = build_state(&lat, &form, Convention::Plain).map_err(failed)?;
            let half = lat.site_count() / 2;
            let side: Vec<QubitLabel> = (0..half)
                .flat_map(|site| (0..m).map(move |layer| QubitLabel { site, layer }))
                .collect();
            let log2 = schmidt_rank_log2(&s, &side).map_err(failed)?;
            report.result("task", "schmidt");
            report.result("cut_sites", (0..half).collect::<Vec<_>>());
            report.result("schmidt_rank_log2", log2);
            report.result("component_rank", a.rank());
            report.verdict("twice_component_rank", log2 as usize == 2 * a.rank());
        }
        Task::Sweep => unreachable!(),
    }
    Ok(report)
}
