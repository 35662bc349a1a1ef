use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;

use crate::gf2::{enumerate_gl, shear, BitMatrix, BitTensor3, BitVector, Cell};

use super::code::{gauge_generator_maps, CellMasks, CodeMap, Dims};
use super::gauge::{gauge2, gauge3, GaugePair, GaugeTriple};
use super::TensorError;

/// Largest side length for which exhaustive gauge searches are run.
pub const MAX_SEARCH_M: usize = 3;

/// Diagonal normal form of a component matrix under `chi_a^T t chi_b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalForm {
    pub form: BitMatrix,
    pub gauge: GaugePair,
    pub rank: usize,
}

/// Brings `t` to `diag(1, .., 1, 0, .., 0)` with `rank(t)` ones.
pub fn diagonal_normal_form(t: &BitMatrix) -> Result<DiagonalForm, TensorError> {
    if !t.is_square() {
        return Err(TensorError::DimensionMismatch);
    }
    // P t = R (row echelon), then S R^T = [I 0; 0 0], so P t S^T is diagonal.
    let (reduced, p, rank) = t.reduce_with_transform();
    let (_, s, _) = reduced.transpose().reduce_with_transform();
    let gauge = GaugePair::new(p.transpose(), s.transpose())?;
    let form = gauge2(t, &gauge)?;
    debug_assert!((0..t.rows()).all(|i| (0..t.cols()).all(|j| form.get(i, j) == (i == j && i < rank))));
    Ok(DiagonalForm { form, gauge, rank })
}

/// A subspace of GF(2)^n kept as a reduced echelon basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<BitVector>,
}

impl Subspace {
    pub fn span(ambient: usize, vectors: impl IntoIterator<Item = BitVector>) -> Self {
        let rows: Vec<BitVector> = vectors.into_iter().collect();
        let mut a = BitMatrix::zeros(rows.len(), ambient);
        for (i, v) in rows.iter().enumerate() {
            for j in v.ones() {
                a.set(i, j, true);
            }
        }
        let (reduced, _, rank) = a.reduce_with_transform();
        Self {
            ambient,
            basis: (0..rank).map(|i| reduced.row(i)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[BitVector] {
        &self.basis
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        Subspace::span(self.ambient, self.basis.iter().cloned().chain([v.clone()])).dim()
            == self.dim()
    }

    /// Dimension of the intersection with `other`.
    pub fn meet_dim(&self, other: &Subspace) -> usize {
        let joined = Subspace::span(
            self.ambient,
            self.basis.iter().chain(&other.basis).cloned(),
        );
        self.dim() + other.dim() - joined.dim()
    }
}

/// Supports of a tensor at the three colors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportSets {
    pub a: Subspace,
    pub b: Subspace,
    pub c: Subspace,
}

impl SupportSets {
    pub fn dims(&self) -> [usize; 3] {
        [self.a.dim(), self.b.dim(), self.c.dim()]
    }
}

/// Span of the contractions `v(x, y)_k = sum t(i,j,k) x_i y_j` at each color.
///
/// The contraction is bilinear in the two fixed arguments, so the span is the
/// span of the fibers `t(i, j, .)` taken at generator pairs.
pub fn supports(t: &BitTensor3) -> SupportSets {
    let (ma, mb, mc) = t.dims();
    let mut fa = vec![BitVector::zeros(ma); mb * mc];
    let mut fb = vec![BitVector::zeros(mb); ma * mc];
    let mut fc = vec![BitVector::zeros(mc); ma * mb];
    for (i, j, k) in t.cells() {
        fa[j * mc + k].set(i, true);
        fb[i * mc + k].set(j, true);
        fc[i * mb + j].set(k, true);
    }
    SupportSets {
        a: Subspace::span(ma, fa),
        b: Subspace::span(mb, fb),
        c: Subspace::span(mc, fc),
    }
}

/// Whether the cells of `t` split into two or more groups that share no
/// index value at any color.
pub fn is_decomposable(t: &BitTensor3) -> bool {
    if t.len() <= 64 {
        return CellMasks::new(t.dims()).is_decomposable(t.code());
    }
    components_by_cells(&t.cells()).len() > 1
}

fn components_by_cells(cells: &[Cell]) -> Vec<Vec<Cell>> {
    let mut seen = vec![false; cells.len()];
    let mut out = Vec::new();
    for start in 0..cells.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = vec![start];
        let mut idx = 0;
        while idx < comp.len() {
            let c = cells[comp[idx]];
            for (o, &other) in cells.iter().enumerate() {
                if !seen[o] && (c.0 == other.0 || c.1 == other.1 || c.2 == other.2) {
                    seen[o] = true;
                    comp.push(o);
                }
            }
            idx += 1;
        }
        out.push(comp.into_iter().map(|i| cells[i]).collect());
    }
    out
}

fn check_search_size(dims: Dims) -> Result<(), TensorError> {
    if dims.0 > MAX_SEARCH_M || dims.1 > MAX_SEARCH_M || dims.2 > MAX_SEARCH_M {
        return Err(TensorError::TooLarge {
            dims,
            max: MAX_SEARCH_M,
        });
    }
    Ok(())
}

/// Walks the gauge orbit of `code` and reports whether some member is
/// decomposable.
fn orbit_has_decomposable(dims: Dims, code: u64) -> bool {
    let masks = CellMasks::new(dims);
    let gens = gauge_generator_maps(dims);
    let bits = dims.0 * dims.1 * dims.2;
    let mut seen = vec![0u64; (1usize << bits).div_ceil(64)];
    let mut claim = |x: u64| {
        let (w, b) = ((x >> 6) as usize, 1u64 << (x & 63));
        let fresh = seen[w] & b == 0;
        seen[w] |= b;
        fresh
    };
    claim(code);
    let mut stack = vec![code];
    while let Some(x) = stack.pop() {
        if masks.is_decomposable(x) {
            return true;
        }
        for g in &gens {
            let y = g.apply(x);
            if claim(y) {
                stack.push(y);
            }
        }
    }
    false
}

/// Nonzero and no gauge image decomposes.
pub fn is_irreducible(t: &BitTensor3) -> Result<bool, TensorError> {
    check_search_size(t.dims())?;
    Ok(!t.is_zero() && !orbit_has_decomposable(t.dims(), t.code()))
}

/// Order in which gauge triples are tried by [`disjoint_normal_form_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchOrder {
    /// Product order over each factor's lexicographic GL enumeration.
    Lexicographic,
    /// Each factor's list shuffled by a seeded generator.
    Shuffled(u64),
}

/// Maximal splitting of a tensor into support-disjoint irreducible blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DisjointDecomposition {
    pub gauge: GaugeTriple,
    pub blocks: Vec<BitTensor3>,
}

impl DisjointDecomposition {
    pub fn r(&self) -> usize {
        self.blocks.len()
    }

    /// XOR of the blocks, which equals the gauge-transformed input.
    pub fn sum(&self) -> BitTensor3 {
        let dims = self.gauge.dims();
        self.blocks
            .iter()
            .fold(BitTensor3::zeros(dims), |acc, b| acc.xor(b))
    }
}

pub fn disjoint_normal_form(t: &BitTensor3) -> Result<DisjointDecomposition, TensorError> {
    disjoint_normal_form_with(t, SearchOrder::Lexicographic)
}

pub fn disjoint_normal_form_with(
    t: &BitTensor3,
    order: SearchOrder,
) -> Result<DisjointDecomposition, TensorError> {
    check_search_size(t.dims())?;
    let mut searcher = Searcher::new(order);
    let (gauge, blocks) = decompose(t, &mut searcher)?;
    Ok(DisjointDecomposition { gauge, blocks })
}

struct Searcher {
    order: SearchOrder,
    salt: u64,
}

impl Searcher {
    fn new(order: SearchOrder) -> Self {
        Self { order, salt: 0 }
    }

    fn gl(&mut self, n: usize) -> Vec<BitMatrix> {
        let mut all = enumerate_gl(n).expect("search sizes are in range");
        if let SearchOrder::Shuffled(seed) = self.order {
            self.salt += 1;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ self.salt.wrapping_mul(0x9E37_79B9_7F4A_7C15));
            all.shuffle(&mut rng);
        }
        all
    }

    /// First gauge in search order under which `code` decomposes.
    fn find_split(&mut self, dims: Dims, code: u64) -> Option<GaugeTriple> {
        let masks = CellMasks::new(dims);
        let (ga, gb, gc) = (self.gl(dims.0), self.gl(dims.1), self.gl(dims.2));
        let maps_a: Vec<CodeMap> = ga.iter().map(|x| CodeMap::axis(dims, 0, x)).collect();
        let maps_b: Vec<CodeMap> = gb.iter().map(|x| CodeMap::axis(dims, 1, x)).collect();
        let maps_c: Vec<CodeMap> = gc.iter().map(|x| CodeMap::axis(dims, 2, x)).collect();
        for (ia, ma) in maps_a.iter().enumerate() {
            let after_a = ma.apply(code);
            for (ib, mb) in maps_b.iter().enumerate() {
                let after_b = mb.apply(after_a);
                for (ic, mc) in maps_c.iter().enumerate() {
                    if masks.is_decomposable(mc.apply(after_b)) {
                        return Some(GaugeTriple {
                            a: ga[ia].clone(),
                            b: gb[ib].clone(),
                            c: gc[ic].clone(),
                        });
                    }
                }
            }
        }
        None
    }
}

fn decompose(
    t: &BitTensor3,
    searcher: &mut Searcher,
) -> Result<(GaugeTriple, Vec<BitTensor3>), TensorError> {
    let dims = t.dims();
    if t.is_zero() {
        return Ok((GaugeTriple::identity_for(dims), Vec::new()));
    }
    if !orbit_has_decomposable(dims, t.code()) {
        return Ok((GaugeTriple::identity_for(dims), vec![t.clone()]));
    }
    let split = searcher
        .find_split(dims, t.code())
        .expect("a decomposable orbit member is reachable by some gauge");
    let split_t = gauge3(t, &split)?;
    let masks = CellMasks::new(dims);

    let mut refine = GaugeTriple::identity_for(dims);
    let mut blocks = Vec::new();
    for comp in masks.components(split_t.code()) {
        let used = masks.used_indices(comp);
        let index_sets: Vec<Vec<usize>> = used
            .iter()
            .map(|&bits| (0..64).filter(|v| (bits >> v) & 1 == 1).collect())
            .collect();
        let sub_dims = (index_sets[0].len(), index_sets[1].len(), index_sets[2].len());
        let full = BitTensor3::from_code(dims, comp);
        let pos = |axis: usize, v: usize| index_sets[axis].iter().position(|&x| x == v).unwrap();
        let sub_cells: Vec<Cell> = full
            .cells()
            .into_iter()
            .map(|(i, j, k)| (pos(0, i), pos(1, j), pos(2, k)))
            .collect();
        let sub = BitTensor3::from_cells(sub_dims, &sub_cells)?;
        let (sub_gauge, sub_blocks) = decompose(&sub, searcher)?;

        embed_block_gauge(&mut refine.a, &sub_gauge.a, &index_sets[0]);
        embed_block_gauge(&mut refine.b, &sub_gauge.b, &index_sets[1]);
        embed_block_gauge(&mut refine.c, &sub_gauge.c, &index_sets[2]);
        for b in sub_blocks {
            let cells: Vec<Cell> = b
                .cells()
                .into_iter()
                .map(|(i, j, k)| (index_sets[0][i], index_sets[1][j], index_sets[2][k]))
                .collect();
            blocks.push(BitTensor3::from_cells(dims, &cells)?);
        }
    }
    Ok((split.then(&refine), blocks))
}

fn embed_block_gauge(full: &mut BitMatrix, block: &BitMatrix, indices: &[usize]) {
    for (r, &gi) in indices.iter().enumerate() {
        for (c, &gj) in indices.iter().enumerate() {
            full.set(gi, gj, block.get(r, c));
        }
    }
}

/// Result of eliminating edge incidences around a fiducial cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeDisjointForm {
    pub tensor: BitTensor3,
    pub gauge: GaugeTriple,
    pub fiducial: Cell,
}

fn agreements(a: Cell, b: Cell) -> usize {
    usize::from(a.0 == b.0) + usize::from(a.1 == b.1) + usize::from(a.2 == b.2)
}

/// Applies shears until every nonzero cell other than the fiducial agrees
/// with it in at most one index. `None` picks the lowest nonzero cell.
pub fn edge_disjoint_form(
    t: &BitTensor3,
    fiducial: Option<Cell>,
) -> Result<EdgeDisjointForm, TensorError> {
    let m = t.m().ok_or(TensorError::DimensionMismatch)?;
    let f = match fiducial {
        Some(c) => c,
        None => *t.cells().first().ok_or(TensorError::ZeroTensor)?,
    };
    if f.0 >= m || f.1 >= m || f.2 >= m || !t.get(f) {
        return Err(TensorError::ZeroFiducial(f));
    }
    let mut current = t.clone();
    let mut gauge = GaugeTriple::identity(m);
    while let Some(cell) = current
        .cells()
        .into_iter()
        .find(|&c| c != f && agreements(c, f) == 2)
    {
        let mut step = GaugeTriple::identity(m);
        if cell.2 != f.2 {
            step.c = shear(m, f.2, cell.2)?;
        } else if cell.1 != f.1 {
            step.b = shear(m, f.1, cell.1)?;
        } else {
            step.a = shear(m, f.0, cell.0)?;
        }
        current = gauge3(&current, &step)?;
        gauge = gauge.then(&step);
    }
    Ok(EdgeDisjointForm {
        tensor: current,
        gauge,
        fiducial: f,
    })
}

/// Type-III generator triples `(i, j + m, k + 2m)`, one per nonzero cell.
pub fn spto_labels(t: &BitTensor3) -> BTreeSet<(usize, usize, usize)> {
    let m = t.dims().0;
    t.cells()
        .into_iter()
        .map(|(i, j, k)| (i, j + m, k + 2 * m))
        .collect()
}
