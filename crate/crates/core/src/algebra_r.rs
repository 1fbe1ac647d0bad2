//! The six-dimensional quiver DG algebra.
//!
//! Two vertices `x`, `y`, arrows `a` (degree 0) and `b` (degree 1), with all
//! length-three paths killed: `aba = bab = 0`. The surviving path basis is
//! `{e_x, e_y, a, b, ab, ba}` with grading `{0: 3, 1: 3}` and trivial
//! differential. The multiplication table is materialized once and checked
//! exhaustively in the tests.

use std::fmt;

/// A quiver vertex.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Vertex {
    X,
    Y,
}

impl Vertex {
    pub fn other(self) -> Vertex {
        match self {
            Vertex::X => Vertex::Y,
            Vertex::Y => Vertex::X,
        }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::X => write!(f, "x"),
            Vertex::Y => write!(f, "y"),
        }
    }
}

/// A basis path of the algebra.
///
/// The convention follows `e(x) a = a e(y) = a` and `e(y) b = b e(x) = b`:
/// `left_vertex` is the idempotent acting from the left, `right_vertex`
/// from the right.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Path {
    Ex,
    Ey,
    A,
    B,
    Ab,
    Ba,
}

pub const PATHS: [Path; 6] = [Path::Ex, Path::Ey, Path::A, Path::B, Path::Ab, Path::Ba];

impl Path {
    pub fn index(self) -> usize {
        match self {
            Path::Ex => 0,
            Path::Ey => 1,
            Path::A => 2,
            Path::B => 3,
            Path::Ab => 4,
            Path::Ba => 5,
        }
    }

    pub fn from_index(i: usize) -> Path {
        PATHS[i]
    }

    /// The vertex `v` with `e(v) p = p`.
    pub fn left_vertex(self) -> Vertex {
        match self {
            Path::Ex | Path::A | Path::Ab => Vertex::X,
            Path::Ey | Path::B | Path::Ba => Vertex::Y,
        }
    }

    /// The vertex `w` with `p e(w) = p`.
    pub fn right_vertex(self) -> Vertex {
        match self {
            Path::Ex | Path::B | Path::Ab => Vertex::X,
            Path::Ey | Path::A | Path::Ba => Vertex::Y,
        }
    }

    pub fn degree(self) -> i64 {
        match self {
            Path::Ex | Path::Ey | Path::A => 0,
            Path::B | Path::Ab | Path::Ba => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Path::Ex => "ex",
            Path::Ey => "ey",
            Path::A => "a",
            Path::B => "b",
            Path::Ab => "ab",
            Path::Ba => "ba",
        }
    }

    pub fn from_name(s: &str) -> Option<Path> {
        PATHS.iter().copied().find(|p| p.name() == s)
    }

    pub fn idempotent(v: Vertex) -> Path {
        match v {
            Vertex::X => Path::Ex,
            Vertex::Y => Path::Ey,
        }
    }
}

/// Product of two basis paths, `None` meaning zero.
///
/// Idempotents are orthogonal, `a` and `b` concatenate when the inner
/// vertices match, and every length-three path vanishes.
pub fn path_product(p: Path, q: Path) -> Option<Path> {
    use Path::*;
    if p.right_vertex() != q.left_vertex() {
        return None;
    }
    match (p, q) {
        (Ex | Ey, q) => Some(q),
        (p, Ex | Ey) => Some(p),
        (A, B) => Some(Ab),
        (B, A) => Some(Ba),
        // aba = bab = 0 kills everything of length three and beyond
        _ => None,
    }
}

/// A GF(2)-linear combination of basis paths.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct PathElement {
    /// Bit `i` is the coefficient of `PATHS[i]`.
    mask: u8,
}

impl PathElement {
    pub fn zero() -> Self {
        PathElement { mask: 0 }
    }

    pub fn path(p: Path) -> Self {
        PathElement { mask: 1 << p.index() }
    }

    /// The algebra unit `e_x + e_y`.
    pub fn one() -> Self {
        PathElement::path(Path::Ex).add(PathElement::path(Path::Ey))
    }

    pub fn from_paths(paths: &[Path]) -> Self {
        let mut e = PathElement::zero();
        for &p in paths {
            e = e.add(PathElement::path(p));
        }
        e
    }

    pub fn is_zero(self) -> bool {
        self.mask == 0
    }

    pub fn coefficient(self, p: Path) -> bool {
        self.mask >> p.index() & 1 == 1
    }

    pub fn paths(self) -> impl Iterator<Item = Path> {
        PATHS.into_iter().filter(move |p| self.coefficient(*p))
    }

    pub fn add(self, other: PathElement) -> PathElement {
        PathElement { mask: self.mask ^ other.mask }
    }

    /// Bilinear extension of the path product.
    pub fn multiply(self, other: PathElement) -> PathElement {
        let mut out = PathElement::zero();
        for p in self.paths() {
            for q in other.paths() {
                if let Some(r) = path_product(p, q) {
                    out = out.add(PathElement::path(r));
                }
            }
        }
        out
    }

    /// Degree when homogeneous and nonzero.
    pub fn degree(self) -> Option<i64> {
        let mut degrees = self.paths().map(Path::degree);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }
}

impl fmt::Display for PathElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for p in self.paths() {
            if !first {
                write!(f, "+")?;
            }
            write!(f, "{}", p.name())?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for PathElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Graded dimension of the algebra: `{0: 3, 1: 3}`.
pub fn graded_dimension() -> Vec<(i64, usize)> {
    let mut counts = std::collections::BTreeMap::new();
    for p in PATHS {
        *counts.entry(p.degree()).or_insert(0usize) += 1;
    }
    counts.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_multiply_to_length_two_paths() {
        assert_eq!(path_product(Path::A, Path::B), Some(Path::Ab));
        assert_eq!(path_product(Path::B, Path::A), Some(Path::Ba));
    }

    #[test]
    fn length_three_paths_vanish() {
        assert_eq!(path_product(Path::Ab, Path::A), None);
        assert_eq!(path_product(Path::A, Path::Ba), None);
        assert_eq!(path_product(Path::Ba, Path::B), None);
        assert_eq!(path_product(Path::B, Path::Ab), None);
    }

    #[test]
    fn idempotent_actions() {
        assert_eq!(path_product(Path::Ex, Path::A), Some(Path::A));
        assert_eq!(path_product(Path::A, Path::Ey), Some(Path::A));
        assert_eq!(path_product(Path::A, Path::Ex), None);
        assert_eq!(path_product(Path::Ex, Path::Ey), None);
        assert_eq!(path_product(Path::Ex, Path::Ex), Some(Path::Ex));
    }

    #[test]
    fn associativity_exhaustive() {
        // all 216 basis triples
        for p in PATHS {
            for q in PATHS {
                for r in PATHS {
                    let left = PathElement::path(p)
                        .multiply(PathElement::path(q))
                        .multiply(PathElement::path(r));
                    let right = PathElement::path(p)
                        .multiply(PathElement::path(q).multiply(PathElement::path(r)));
                    assert_eq!(left, right, "({p:?} {q:?}) {r:?}");
                }
            }
        }
    }

    #[test]
    fn unit_element() {
        let one = PathElement::one();
        for p in PATHS {
            let e = PathElement::path(p);
            assert_eq!(one.multiply(e), e);
            assert_eq!(e.multiply(one), e);
        }
    }

    #[test]
    fn degree_additive_on_nonzero_products() {
        for p in PATHS {
            for q in PATHS {
                if let Some(r) = path_product(p, q) {
                    assert_eq!(r.degree(), p.degree() + q.degree());
                }
            }
        }
    }

    #[test]
    fn graded_dimension_three_three() {
        assert_eq!(graded_dimension(), vec![(0, 3), (1, 3)]);
        // oracle: paths of length <= 2 in the two-vertex quiver modulo the
        // length-three relations, split by degree
        let degree_zero: Vec<Path> = PATHS.iter().copied().filter(|p| p.degree() == 0).collect();
        assert_eq!(degree_zero, vec![Path::Ex, Path::Ey, Path::A]);
    }
}
