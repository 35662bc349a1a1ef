use std::collections::HashSet;
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use crate::gf2::BitTensor3;

use super::code::{gauge_generator_maps, CellMasks, CodeMap};
use super::TensorError;

pub const MAX_CENSUS_M: usize = 3;

const PARALLEL_FRONTIER: usize = 4096;

/// Which symmetries identify two tensors in a census.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ColorConvention {
    /// Local basis changes only.
    GaugeOnly,
    /// Local basis changes plus relabeling of the three colors.
    WithColorPermutations,
}

impl ColorConvention {
    /// The convention under which the irreducible counts are 1, 4, 50.
    pub const ADOPTED: ColorConvention = ColorConvention::WithColorPermutations;

    pub fn name(self) -> &'static str {
        match self {
            ColorConvention::GaugeOnly => "gauge-only",
            ColorConvention::WithColorPermutations => "with-color-permutations",
        }
    }
}

/// Partition of all `2^(m^3)` tensor codes into orbits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitCensus {
    pub m: usize,
    pub convention: ColorConvention,
    pub orbit_count: usize,
    pub irreducible_class_count: usize,
    /// Sizes in order of each orbit's smallest code.
    pub orbit_sizes: Vec<u64>,
    /// Smallest code in each orbit.
    pub representatives: Vec<u64>,
    /// Smallest code of every irreducible orbit.
    pub irreducible_representatives: Vec<u64>,
}

pub fn classify_orbits(m: usize) -> Result<OrbitCensus, TensorError> {
    classify_orbits_with(m, ColorConvention::ADOPTED, None)
}

/// Breadth-first orbit sweep over every code. `threads = None` uses the
/// global pool. The result does not depend on the thread count.
pub fn classify_orbits_with(
    m: usize,
    convention: ColorConvention,
    threads: Option<usize>,
) -> Result<OrbitCensus, TensorError> {
    if m == 0 || m > MAX_CENSUS_M {
        return Err(TensorError::TooLarge {
            dims: (m, m, m),
            max: MAX_CENSUS_M,
        });
    }
    match threads {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .expect("thread pool");
            Ok(pool.install(|| sweep(m, convention)))
        }
        None => Ok(sweep(m, convention)),
    }
}

/// Smallest code in the orbit of `t`, which is how a census names orbits.
pub fn orbit_representative(t: &BitTensor3, convention: ColorConvention) -> Result<u64, TensorError> {
    let m = t.m().ok_or(TensorError::DimensionMismatch)?;
    if m > MAX_CENSUS_M {
        return Err(TensorError::TooLarge {
            dims: t.dims(),
            max: MAX_CENSUS_M,
        });
    }
    let gens = generators(m, convention);
    let mut seen = HashSet::from([t.code()]);
    let mut stack = vec![t.code()];
    while let Some(x) = stack.pop() {
        for g in &gens {
            let y = g.apply(x);
            if seen.insert(y) {
                stack.push(y);
            }
        }
    }
    Ok(*seen.iter().min().expect("orbit is nonempty"))
}

struct Visited(Vec<AtomicU64>);

impl Visited {
    fn new(bits: u64) -> Self {
        Self((0..bits.div_ceil(64)).map(|_| AtomicU64::new(0)).collect())
    }

    /// Marks `code`, returning true if it was unmarked.
    #[inline]
    fn claim(&self, code: u64) -> bool {
        let bit = 1u64 << (code & 63);
        self.0[(code >> 6) as usize].fetch_or(bit, Ordering::Relaxed) & bit == 0
    }

    fn word(&self, i: usize) -> u64 {
        self.0[i].load(Ordering::Relaxed)
    }
}

fn generators(m: usize, convention: ColorConvention) -> Vec<CodeMap> {
    let mut gens = gauge_generator_maps((m, m, m));
    if convention == ColorConvention::WithColorPermutations {
        gens.push(CodeMap::color_permutation(m, [1, 0, 2]));
        gens.push(CodeMap::color_permutation(m, [1, 2, 0]));
    }
    gens
}

fn sweep(m: usize, convention: ColorConvention) -> OrbitCensus {
    let bits = (m * m * m) as u32;
    let total = 1u64 << bits;
    let gens = generators(m, convention);
    let masks = CellMasks::new((m, m, m));
    let visited = Visited::new(total);

    let mut census = OrbitCensus {
        m,
        convention,
        orbit_count: 0,
        irreducible_class_count: 0,
        orbit_sizes: Vec::new(),
        representatives: Vec::new(),
        irreducible_representatives: Vec::new(),
    };

    let mut seed = 0u64;
    while seed < total {
        let base = seed & !63;
        let mut word = visited.word((base >> 6) as usize);
        if total - base < 64 {
            word |= !0u64 << (total - base);
        }
        let free = !word >> (seed & 63);
        if free == 0 {
            seed = (seed | 63) + 1;
            continue;
        }
        seed += u64::from(free.trailing_zeros());
        visited.claim(seed);
        let (size, reducible) = walk_orbit(seed, &gens, &masks, &visited);
        census.orbit_count += 1;
        census.orbit_sizes.push(size);
        census.representatives.push(seed);
        if seed != 0 && !reducible {
            census.irreducible_class_count += 1;
            census.irreducible_representatives.push(seed);
        }
        seed += 1;
    }
    census
}

/// Visits the orbit of an already claimed code. Returns its size and
/// whether some member is decomposable.
fn walk_orbit(start: u64, gens: &[CodeMap], masks: &CellMasks, visited: &Visited) -> (u64, bool) {
    let mut frontier = vec![start];
    let mut size = 0u64;
    let mut reducible = false;
    while !frontier.is_empty() {
        size += frontier.len() as u64;
        let expand = |&x: &u64| gens.iter().map(move |g| g.apply(x));
        if frontier.len() >= PARALLEL_FRONTIER {
            reducible |= frontier.par_iter().any(|&x| masks.is_decomposable(x));
            frontier = frontier
                .par_iter()
                .flat_map_iter(expand)
                .filter(|&y| visited.claim(y))
                .collect();
        } else {
            reducible |= frontier.iter().any(|&x| masks.is_decomposable(x));
            frontier = frontier
                .iter()
                .flat_map(expand)
                .filter(|&y| visited.claim(y))
                .collect();
        }
    }
    (size, reducible)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_censuses() {
        let one = classify_orbits(1).unwrap();
        assert_eq!(one.irreducible_class_count, 1);
        assert_eq!(one.orbit_sizes.iter().sum::<u64>(), 2);

        let gauge_only = classify_orbits_with(2, ColorConvention::GaugeOnly, Some(2)).unwrap();
        let colored = classify_orbits_with(2, ColorConvention::WithColorPermutations, Some(2)).unwrap();
        for c in [&gauge_only, &colored] {
            assert_eq!(c.orbit_sizes.iter().sum::<u64>(), 256);
            assert_eq!(c.representatives[0], 0);
        }
        assert_eq!(gauge_only.irreducible_class_count, 6);
        assert_eq!(colored.irreducible_class_count, 4);
    }
}
