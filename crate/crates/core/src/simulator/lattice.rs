use std::collections::HashMap;
use std::fmt;

use super::SimError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    A,
    B,
    C,
}

impl Color {
    pub const ALL: [Color; 3] = [Color::A, Color::B, Color::C];

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeKind {
    Chain { n: usize },
    UnionJack { w: usize, h: usize },
}

/// A closed, properly colored simplicial lattice.
///
/// Each simplex lists its sites in color order (A, B[, C]). Faces are kept as
/// ids so that two faces with the same endpoints on a small torus stay
/// distinct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    kind: LatticeKind,
    colors: Vec<Color>,
    simplices: Vec<Vec<usize>>,
    alternation: Vec<i8>,
    faces: Vec<Vec<usize>>,
}

pub fn build_chain(n: usize) -> Result<Lattice, SimError> {
    if n < 4 || n % 2 == 1 {
        return Err(SimError::BadLatticeSize(format!(
            "chain length {n} must be even and at least 4"
        )));
    }
    let colors = (0..n)
        .map(|i| if i % 2 == 0 { Color::A } else { Color::B })
        .collect();
    let mut simplices = Vec::new();
    let mut alternation = Vec::new();
    let mut faces = Vec::new();
    for i in 0..n {
        let j = (i + 1) % n;
        let (a, b) = if i % 2 == 0 { (i, j) } else { (j, i) };
        simplices.push(vec![a, b]);
        alternation.push(if i % 2 == 0 { 1 } else { -1 });
        faces.push(vec![i, j]);
    }
    let lat = Lattice {
        kind: LatticeKind::Chain { n },
        colors,
        simplices,
        alternation,
        faces,
    };
    lat.check_closed()?;
    Ok(lat)
}

/// Union Jack torus with `w x h` unit squares. Corner `(x, y)` is site
/// `y * w + x`, colored A when `x + y` is even; the center of square `(x, y)`
/// is site `w * h + y * w + x`, colored C.
pub fn build_union_jack(w: usize, h: usize) -> Result<Lattice, SimError> {
    if w < 2 || h < 2 || w % 2 == 1 || h % 2 == 1 {
        return Err(SimError::BadLatticeSize(format!(
            "torus {w}x{h} needs even sides of at least 2"
        )));
    }
    let corner = |x: usize, y: usize| (y % h) * w + (x % w);
    let mut colors: Vec<Color> = (0..w * h)
        .map(|s| if (s % w + s / w).is_multiple_of(2) { Color::A } else { Color::B })
        .collect();
    colors.extend(std::iter::repeat_n(Color::C, w * h));

    // face ids: horizontal sides, vertical sides, then 4 diagonals per square
    let hside = |x: usize, y: usize| corner(x, y);
    let vside = |x: usize, y: usize| w * h + corner(x, y);
    let diag = |sq: usize, c: usize| 2 * w * h + 4 * sq + c;

    let mut simplices = Vec::new();
    let mut alternation = Vec::new();
    let mut faces = Vec::new();
    for y in 0..h {
        for x in 0..w {
            let sq = corner(x, y);
            let center = w * h + sq;
            let ring = [corner(x, y), corner(x + 1, y), corner(x + 1, y + 1), corner(x, y + 1)];
            let sides = [hside(x, y), vside(x + 1, y), hside(x, y + 1), vside(x, y)];
            let parity: i8 = if (x + y) % 2 == 0 { 1 } else { -1 };
            for side in 0..4 {
                let (p, q) = (ring[side], ring[(side + 1) % 4]);
                let (a, b) = if colors[p] == Color::A { (p, q) } else { (q, p) };
                simplices.push(vec![a, b, center]);
                alternation.push(if side % 2 == 0 { parity } else { -parity });
                faces.push(vec![sides[side], diag(sq, side), diag(sq, (side + 1) % 4)]);
            }
        }
    }
    let lat = Lattice {
        kind: LatticeKind::UnionJack { w, h },
        colors,
        simplices,
        alternation,
        faces,
    };
    lat.check_closed()?;
    Ok(lat)
}

impl Lattice {
    pub fn kind(&self) -> LatticeKind {
        self.kind
    }

    /// Simplex arity: 2 for chains, 3 for the Union Jack torus.
    pub fn degree(&self) -> usize {
        self.simplices[0].len()
    }

    pub fn site_count(&self) -> usize {
        self.colors.len()
    }

    pub fn color(&self, site: usize) -> Color {
        self.colors[site]
    }

    pub fn sites_of(&self, color: Color) -> impl Iterator<Item = usize> + '_ {
        (0..self.colors.len()).filter(move |&s| self.colors[s] == color)
    }

    pub fn simplices(&self) -> &[Vec<usize>] {
        &self.simplices
    }

    pub fn alternation(&self) -> &[i8] {
        &self.alternation
    }

    /// Colors used by the simplices, in argument order.
    pub fn colors_in_use(&self) -> &'static [Color] {
        match self.degree() {
            2 => &Color::ALL[..2],
            _ => &Color::ALL,
        }
    }

    /// Every simplex is properly colored, and every face lies in exactly two
    /// simplices with opposite alternation signs.
    pub fn check_closed(&self) -> Result<(), SimError> {
        let order = self.colors_in_use();
        for (s, simplex) in self.simplices.iter().enumerate() {
            let colors: Vec<Color> = simplex.iter().map(|&v| self.colors[v]).collect();
            if colors != order {
                return Err(SimError::NotClosed(format!(
                    "simplex {s} has colors {colors:?}"
                )));
            }
        }
        let mut incidence: HashMap<usize, Vec<i8>> = HashMap::new();
        for (s, fs) in self.faces.iter().enumerate() {
            for &f in fs {
                incidence.entry(f).or_default().push(self.alternation[s]);
            }
        }
        for (f, signs) in incidence {
            if signs.len() != 2 || signs[0] == signs[1] {
                return Err(SimError::NotClosed(format!(
                    "face {f} has incident signs {signs:?}"
                )));
            }
        }
        Ok(())
    }

    #[cfg(test)]
    pub(crate) fn alternation_mut(&mut self) -> &mut Vec<i8> {
        &mut self.alternation
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chains() {
        let c = build_chain(4).unwrap();
        assert_eq!(c.site_count(), 4);
        assert_eq!(c.simplices().len(), 4);
        let colors: Vec<Color> = (0..4).map(|s| c.color(s)).collect();
        assert_eq!(colors, [Color::A, Color::B, Color::A, Color::B]);
        assert_eq!(build_chain(6).unwrap().simplices().len(), 6);
        assert!(build_chain(5).is_err());
        assert!(build_chain(2).is_err());
    }

    #[test]
    fn union_jacks() {
        let uj = build_union_jack(2, 2).unwrap();
        assert_eq!(uj.site_count(), 8);
        assert_eq!(uj.simplices().len(), 16);
        let big = build_union_jack(2, 4).unwrap();
        assert_eq!(big.site_count(), 16);
        assert_eq!(big.simplices().len(), 32);
        assert!(build_union_jack(3, 2).is_err());
        assert_eq!(uj.sites_of(Color::C).count(), 4);
        assert_eq!(uj.sites_of(Color::A).count(), 2);
    }

    #[test]
    fn broken_alternation_is_detected() {
        let mut uj = build_union_jack(2, 2).unwrap();
        uj.alternation_mut()[0] *= -1;
        assert!(uj.check_closed().is_err());
        let mut c = build_chain(6).unwrap();
        c.alternation_mut()[3] *= -1;
        assert!(c.check_closed().is_err());
    }
}
