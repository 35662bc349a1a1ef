use std::fmt;

use super::Gf2Error;

/// Bit pattern of positions `p < 64` whose bit `q` is set.
const LOW_PATTERNS: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

pub const MAX_INPUTS: usize = 30;

/// Truth table of a Boolean function on `n` input bits.
///
/// Input `x` is read as an integer whose bit `q` is input variable `q`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BooleanFunction {
    n: usize,
    table: Vec<u64>,
}

impl BooleanFunction {
    pub fn zero(n: usize) -> Self {
        assert!(n <= MAX_INPUTS, "{n} inputs exceeds the supported {MAX_INPUTS}");
        let words = if n >= 6 { 1usize << (n - 6) } else { 1 };
        Self {
            n,
            table: vec![0; words],
        }
    }

    pub fn from_fn(n: usize, f: impl Fn(u64) -> bool) -> Self {
        let mut out = Self::zero(n);
        for x in 0..(1u64 << n) {
            if f(x) {
                out.set(x, true);
            }
        }
        out
    }

    /// Parses a truth table written as a string of `0`/`1`, entry `x` first
    /// for `x = 0, 1, ...`.
    pub fn from_table_str(s: &str) -> Result<Self, Gf2Error> {
        let len = s.len();
        if !len.is_power_of_two() {
            return Err(Gf2Error::TableLength(len));
        }
        let n = len.trailing_zeros() as usize;
        let mut f = Self::zero(n);
        for (x, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => f.set(x as u64, true),
                _ => return Err(Gf2Error::TableLength(len)),
            }
        }
        Ok(f)
    }

    pub fn inputs(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> u64 {
        1u64 << self.n
    }

    fn low_mask(&self) -> u64 {
        if self.n >= 6 {
            u64::MAX
        } else {
            (1u64 << (1u64 << self.n)) - 1
        }
    }

    pub fn eval(&self, x: u64) -> bool {
        debug_assert!(x < self.size());
        (self.table[(x >> 6) as usize] >> (x & 63)) & 1 == 1
    }

    pub fn set(&mut self, x: u64, value: bool) {
        let w = &mut self.table[(x >> 6) as usize];
        let mask = 1u64 << (x & 63);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.table.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> u64 {
        self.table.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn xor_assign(&mut self, other: &BooleanFunction) {
        assert_eq!(self.n, other.n, "input count mismatch");
        for (a, b) in self.table.iter_mut().zip(&other.table) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &BooleanFunction) -> BooleanFunction {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Complements the function, i.e. adds the constant 1.
    pub fn negate(&mut self) {
        let low = self.low_mask();
        for w in &mut self.table {
            *w = !*w;
        }
        if self.n < 6 {
            self.table[0] &= low;
        }
    }

    /// Adds the monomial `prod_{q in vars} x_q`; the empty monomial is the
    /// constant 1.
    pub fn xor_monomial(&mut self, vars: u64) {
        debug_assert!(vars >> self.n == 0, "monomial uses an input past {}", self.n);
        let low_vars = vars & 63;
        let high = vars >> 6;
        let mut pattern = self.low_mask();
        for (q, pat) in LOW_PATTERNS.iter().enumerate() {
            if (low_vars >> q) & 1 == 1 {
                pattern &= pat;
            }
        }
        for (w, word) in self.table.iter_mut().enumerate() {
            if (w as u64) & high == high {
                *word ^= pattern;
            }
        }
    }

    /// Returns `g(x) = f(x xor shift)`.
    pub fn translate(&self, shift: u64) -> BooleanFunction {
        let high = (shift >> 6) as usize;
        let mut out = Self::zero(self.n);
        for (w, &word) in self.table.iter().enumerate() {
            let mut v = word;
            for (q, pat) in LOW_PATTERNS.iter().enumerate() {
                if (shift >> q) & 1 == 1 {
                    let s = 1u32 << q;
                    v = ((v & pat) >> s) | ((v & !pat) << s);
                }
            }
            out.table[w ^ high] = v;
        }
        if self.n < 6 {
            out.table[0] &= self.low_mask();
        }
        out
    }

    /// Returns `g(x) = f(map(x))` for an arbitrary input map on the same
    /// number of bits.
    pub fn pull_back(&self, map: impl Fn(u64) -> u64) -> BooleanFunction {
        let mut out = Self::zero(self.n);
        for x in 0..self.size() {
            if self.eval(map(x)) {
                out.set(x, true);
            }
        }
        out
    }

    /// Fixes input `var` to `value`, giving a function of the remaining
    /// `n - 1` inputs (higher inputs shift down by one).
    pub fn restrict(&self, var: usize, value: bool) -> BooleanFunction {
        assert!(var < self.n, "variable {var} out of range");
        let mut out = Self::zero(self.n - 1);
        let low = (1u64 << var) - 1;
        let fixed = if value { 1u64 << var } else { 0 };
        for y in 0..out.size() {
            let x = (y & low) | ((y & !low) << 1) | fixed;
            if self.eval(x) {
                out.set(y, true);
            }
        }
        out
    }

    /// Whether flipping input `var` can change the output.
    pub fn depends_on(&self, var: usize) -> bool {
        self.translate(1u64 << var) != *self
    }

    /// True iff `f(x) = c xor (a . x)` for some constant `c` and vector `a`.
    pub fn is_affine(&self) -> bool {
        self.affine_part() == *self
    }

    /// The unique affine function agreeing with `self` at `0` and every unit
    /// vector; equals `self` exactly when `self` is affine.
    fn affine_part(&self) -> BooleanFunction {
        let mut g = Self::zero(self.n);
        let c = self.eval(0);
        if c {
            g.xor_monomial(0);
        }
        for q in 0..self.n {
            if self.eval(1u64 << q) != c {
                g.xor_monomial(1u64 << q);
            }
        }
        g
    }

    /// Algebraic normal form: the set of monomials (as variable masks) whose
    /// XOR equals the function. Intended for small `n`.
    pub fn anf(&self) -> Vec<u64> {
        let size = self.size() as usize;
        let mut coeff: Vec<bool> = (0..size as u64).map(|x| self.eval(x)).collect();
        let mut step = 1;
        while step < size {
            for x in 0..size {
                if x & step != 0 {
                    coeff[x] ^= coeff[x ^ step];
                }
            }
            step <<= 1;
        }
        (0..size as u64).filter(|&x| coeff[x as usize]).collect()
    }

    pub fn degree(&self) -> Option<u32> {
        self.anf().into_iter().map(u64::count_ones).max()
    }
}

impl fmt::Debug for BooleanFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n <= 6 {
            write!(f, "BooleanFunction[")?;
            for x in 0..self.size() {
                f.write_str(if self.eval(x) { "1" } else { "0" })?;
            }
            write!(f, "]")
        } else {
            write!(f, "BooleanFunction(n={}, ones={})", self.n, self.count_ones())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn affinity_examples() {
        assert!(BooleanFunction::zero(3).is_affine());
        let parity = BooleanFunction::from_fn(4, |x| x.count_ones() % 2 == 1);
        assert!(parity.is_affine());
        let and = BooleanFunction::from_table_str("0001").unwrap();
        assert!(!and.is_affine());
        let mut one = BooleanFunction::zero(2);
        one.negate();
        assert!(one.is_affine());
        assert_eq!(one.count_ones(), 4);
    }

    #[test]
    fn monomials_match_pointwise_products() {
        for n in [2usize, 5, 7, 9] {
            let vars: u64 = if n > 7 { 0b1_0100_0011 } else { 0b11 };
            let mut f = BooleanFunction::zero(n);
            f.xor_monomial(vars);
            let oracle = BooleanFunction::from_fn(n, |x| x & vars == vars);
            assert_eq!(f, oracle, "n={n}");
        }
    }

    #[test]
    fn translate_matches_pointwise_definition() {
        let f = BooleanFunction::from_fn(8, |x| (x * 37 + 11) % 7 < 3);
        for shift in [0u64, 1, 5, 63, 64, 200, 255] {
            let g = f.translate(shift);
            for x in 0..256 {
                assert_eq!(g.eval(x), f.eval(x ^ shift));
            }
        }
        let small = BooleanFunction::from_table_str("0110").unwrap();
        assert_eq!(small.translate(3), small);
        assert_eq!(small.translate(1), BooleanFunction::from_table_str("1001").unwrap());
    }

    #[test]
    fn restrict_drops_a_variable() {
        let f = BooleanFunction::from_fn(3, |x| (x & 1 == 1) && (x & 4 == 4));
        let r = f.restrict(1, true);
        assert_eq!(r.inputs(), 2);
        assert_eq!(r, BooleanFunction::from_table_str("0001").unwrap());
        assert!(!r.depends_on(0) || r.depends_on(1));
    }

    #[test]
    fn anf_of_and_is_single_monomial() {
        let and = BooleanFunction::from_table_str("0001").unwrap();
        assert_eq!(and.anf(), vec![0b11]);
        assert_eq!(and.degree(), Some(2));
        assert_eq!(BooleanFunction::zero(3).degree(), None);
    }

    proptest! {
        #[test]
        fn random_affine_functions_are_affine(n in 1usize..9, a in any::<u64>(), c in any::<bool>()) {
            let a = a & ((1u64 << n) - 1);
            let f = BooleanFunction::from_fn(n, |x| ((x & a).count_ones() % 2 == 1) ^ c);
            prop_assert!(f.is_affine());
        }

        #[test]
        fn genuine_quadratics_are_not_affine(
            n in 2usize..9,
            a in any::<u64>(),
            i in 0usize..8,
            j in 0usize..8,
        ) {
            let (i, j) = (i % n, j % n);
            prop_assume!(i != j);
            let a = a & ((1u64 << n) - 1);
            let f = BooleanFunction::from_fn(n, |x| {
                ((x & a).count_ones() % 2 == 1) ^ ((x >> i) & (x >> j) & 1 == 1)
            });
            prop_assert!(!f.is_affine());
        }
    }
}
