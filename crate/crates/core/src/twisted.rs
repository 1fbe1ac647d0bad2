//! One-sided twisted complexes over a DG base category.
//!
//! A twisted complex is a formal direct sum of shifted base objects together
//! with a strictly upper-triangular family of degree-1 morphisms satisfying
//! the Maurer-Cartan equation (the base differentials vanish here, so the
//! equation is purely quadratic). Twisted complexes close the base under
//! shifts and mapping cones; morphism spaces carry the induced differential,
//! which is what makes contractibility and homotopy questions computable.
//!
//! The module is generic over [`DgBase`]; the diagram category and the
//! projective modules over the quiver algebra both implement it. Every
//! graded Hom space of either base is finite dimensional, so homotopy
//! search reduces to a GF(2) linear solve.

use crate::diagrams::{self, Morphism, ObjQ};
use crate::gf2::{Gf2Matrix, Gf2Vec};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// The interface a DG category must expose for twisted complexes over it.
///
/// Morphisms are graded with zero differential; `degree` reports the raw
/// (unshifted) degree of a homogeneous morphism.
pub trait DgBase {
    type Obj: Copy + Eq + Ord + fmt::Debug;
    type Mor: Clone + Eq + fmt::Debug;

    fn identity(obj: Self::Obj) -> Self::Mor;
    fn zero(src: Self::Obj, tgt: Self::Obj) -> Self::Mor;
    fn is_zero(m: &Self::Mor) -> bool;
    fn add(f: &Self::Mor, g: &Self::Mor) -> Self::Mor;
    /// Composition `g . f` (apply `f` first).
    fn compose(g: &Self::Mor, f: &Self::Mor) -> Self::Mor;
    /// Raw degree of a homogeneous nonzero morphism.
    fn degree(m: &Self::Mor) -> Option<i64>;
    /// GF(2) basis of the degree-`d` Hom space.
    fn hom_basis(src: Self::Obj, tgt: Self::Obj, degree: i64) -> Vec<Self::Mor>;
    /// Coordinates of `m` in `basis`, if expressible.
    fn coords(m: &Self::Mor, src: Self::Obj, tgt: Self::Obj, basis: &[Self::Mor])
        -> Option<Vec<bool>>;
}

/// The diagram category as a twisted-complex base. Objects are strand
/// counts; morphisms are diagram morphisms with unshifted endpoints.
pub struct DiagBase;

impl DgBase for DiagBase {
    type Obj = usize;
    type Mor = Morphism;

    fn identity(obj: usize) -> Morphism {
        Morphism::identity(ObjQ::q(obj))
    }

    fn zero(src: usize, tgt: usize) -> Morphism {
        Morphism::zero(ObjQ::q(src), ObjQ::q(tgt))
    }

    fn is_zero(m: &Morphism) -> bool {
        m.is_zero()
    }

    fn add(f: &Morphism, g: &Morphism) -> Morphism {
        f.add(g)
    }

    fn compose(g: &Morphism, f: &Morphism) -> Morphism {
        g.compose(f)
    }

    fn degree(m: &Morphism) -> Option<i64> {
        if m.term_count() == 1 {
            m.degree()
        } else {
            None
        }
    }

    fn hom_basis(src: usize, tgt: usize, degree: i64) -> Vec<Morphism> {
        diagrams::hom_basis(src, tgt, degree)
            .into_iter()
            .map(|nf| Morphism::from_normal_form(ObjQ::q(src), ObjQ::q(tgt), nf))
            .collect()
    }

    fn coords(m: &Morphism, _src: usize, _tgt: usize, basis: &[Morphism]) -> Option<Vec<bool>> {
        let mut remaining = m.clone();
        let mut bits = Vec::with_capacity(basis.len());
        for b in basis {
            let nf = b.terms().next().expect("basis morphisms are nonzero");
            let present = remaining.terms().any(|t| t == nf);
            bits.push(present);
            if present {
                remaining = remaining.add(b);
            }
        }
        remaining.is_zero().then_some(bits)
    }
}

/// One summand of a twisted complex: a base object with a shift.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Term<O> {
    pub obj: O,
    pub shift: i64,
}

impl<O> Term<O> {
    pub fn new(obj: O, shift: i64) -> Self {
        Term { obj, shift }
    }
}

/// A one-sided twisted complex over the base `B`.
pub struct TwistedComplex<B: DgBase> {
    terms: Vec<Term<B::Obj>>,
    /// Twist components `f_i^j` keyed by `(i, j)`; absent keys are zero.
    twist: BTreeMap<(usize, usize), B::Mor>,
}

// manual impls: the derives would demand bounds on the base marker itself
impl<B: DgBase> Clone for TwistedComplex<B> {
    fn clone(&self) -> Self {
        TwistedComplex { terms: self.terms.clone(), twist: self.twist.clone() }
    }
}

impl<B: DgBase> PartialEq for TwistedComplex<B> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && self.twist == other.twist
    }
}

impl<B: DgBase> Eq for TwistedComplex<B> {}

impl<B: DgBase> fmt::Debug for TwistedComplex<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TwistedComplex")
            .field("terms", &self.terms)
            .field("twist", &self.twist)
            .finish()
    }
}

/// Why a complex failed validation.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ViolationKind {
    /// A twist component with `i >= j`.
    OneSidedness,
    /// A component that is not homogeneous of shifted degree 1.
    Degree,
    /// The Maurer-Cartan sum at `(i, j)` is nonzero.
    MaurerCartan,
    /// A component index outside the term list.
    IndexRange,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Violation {
    pub kind: ViolationKind,
    pub i: usize,
    pub j: usize,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} violated at ({}, {})", self.kind, self.i, self.j)
    }
}

/// Errors from [`cone`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ConeError {
    NotDegreeZero,
    NotClosed,
    InvalidInput(Violation),
}

impl fmt::Display for ConeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConeError::NotDegreeZero => write!(f, "cone input must have degree 0"),
            ConeError::NotClosed => write!(f, "cone input must be closed"),
            ConeError::InvalidInput(v) => write!(f, "invalid complex: {v}"),
        }
    }
}

impl std::error::Error for ConeError {}

impl<B: DgBase> TwistedComplex<B> {
    pub fn new(terms: Vec<Term<B::Obj>>, twist: BTreeMap<(usize, usize), B::Mor>) -> Self {
        let twist = twist.into_iter().filter(|(_, m)| !B::is_zero(m)).collect();
        TwistedComplex { terms, twist }
    }

    /// A single base object with a shift and no twist.
    pub fn single(obj: B::Obj, shift: i64) -> Self {
        TwistedComplex { terms: vec![Term::new(obj, shift)], twist: BTreeMap::new() }
    }

    pub fn terms(&self) -> &[Term<B::Obj>] {
        &self.terms
    }

    pub fn twist(&self) -> &BTreeMap<(usize, usize), B::Mor> {
        &self.twist
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Twist component `f_i^j`, zero when absent. Indices are 0-based.
    pub fn twist_at(&self, i: usize, j: usize) -> B::Mor {
        self.twist
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(|| B::zero(self.terms[i].obj, self.terms[j].obj))
    }

    /// Checks one-sidedness, degree-1 homogeneity of every component and the
    /// Maurer-Cartan equation, reporting the first failure.
    pub fn validate(&self) -> Result<(), Violation> {
        for (&(i, j), m) in &self.twist {
            if i >= self.terms.len() || j >= self.terms.len() {
                return Err(Violation { kind: ViolationKind::IndexRange, i, j });
            }
            if i >= j {
                return Err(Violation { kind: ViolationKind::OneSidedness, i, j });
            }
            // shifted degree 1 means raw degree 1 - m_i + m_j
            let want = 1 - self.terms[i].shift + self.terms[j].shift;
            if B::degree(m) != Some(want) {
                return Err(Violation { kind: ViolationKind::Degree, i, j });
            }
        }
        for i in 0..self.terms.len() {
            for j in i + 1..self.terms.len() {
                let mut sum = B::zero(self.terms[i].obj, self.terms[j].obj);
                for k in i + 1..j {
                    let inner = self.twist_at(i, k);
                    let outer = self.twist_at(k, j);
                    sum = B::add(&sum, &B::compose(&outer, &inner));
                }
                if !B::is_zero(&sum) {
                    return Err(Violation { kind: ViolationKind::MaurerCartan, i, j });
                }
            }
        }
        Ok(())
    }

    /// Adds `m` to every term's shift; twist morphisms carry over unchanged.
    pub fn shifted(&self, m: i64) -> Self {
        TwistedComplex {
            terms: self.terms.iter().map(|t| Term::new(t.obj, t.shift + m)).collect(),
            twist: self.twist.clone(),
        }
    }
}

/// A morphism of twisted complexes, stored componentwise.
pub struct TwMorphism<B: DgBase> {
    /// Components `h_i^j : a_i -> b_j`, keyed by `(i, j)`.
    components: BTreeMap<(usize, usize), B::Mor>,
    degree: i64,
}

impl<B: DgBase> Clone for TwMorphism<B> {
    fn clone(&self) -> Self {
        TwMorphism { components: self.components.clone(), degree: self.degree }
    }
}

impl<B: DgBase> PartialEq for TwMorphism<B> {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.components == other.components
    }
}

impl<B: DgBase> Eq for TwMorphism<B> {}

impl<B: DgBase> fmt::Debug for TwMorphism<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TwMorphism")
            .field("degree", &self.degree)
            .field("components", &self.components)
            .finish()
    }
}

impl<B: DgBase> TwMorphism<B> {
    pub fn new(degree: i64, components: BTreeMap<(usize, usize), B::Mor>) -> Self {
        let components = components.into_iter().filter(|(_, m)| !B::is_zero(m)).collect();
        TwMorphism { components, degree }
    }

    pub fn zero(degree: i64) -> Self {
        TwMorphism { components: BTreeMap::new(), degree }
    }

    /// The identity endomorphism of `x`.
    pub fn identity(x: &TwistedComplex<B>) -> Self {
        let components = x
            .terms()
            .iter()
            .enumerate()
            .map(|(i, t)| ((i, i), B::identity(t.obj)))
            .collect();
        TwMorphism { components, degree: 0 }
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn components(&self) -> &BTreeMap<(usize, usize), B::Mor> {
        &self.components
    }

    pub fn component_at(
        &self,
        i: usize,
        j: usize,
        x: &TwistedComplex<B>,
        y: &TwistedComplex<B>,
    ) -> B::Mor {
        self.components
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(|| B::zero(x.terms[i].obj, y.terms[j].obj))
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn add(&self, other: &TwMorphism<B>) -> TwMorphism<B> {
        assert_eq!(self.degree, other.degree, "degree mismatch in sum");
        let mut components = self.components.clone();
        for (&key, m) in &other.components {
            let sum = match components.get(&key) {
                Some(existing) => B::add(existing, m),
                None => m.clone(),
            };
            if B::is_zero(&sum) {
                components.remove(&key);
            } else {
                components.insert(key, sum);
            }
        }
        TwMorphism { components, degree: self.degree }
    }

    /// Checks component endpoints and homogeneity against `x` and `y`.
    pub fn check_against(&self, x: &TwistedComplex<B>, y: &TwistedComplex<B>) -> bool {
        self.components.iter().all(|(&(i, j), m)| {
            i < x.len()
                && j < y.len()
                && B::degree(m) == Some(self.degree - x.terms[i].shift + y.terms[j].shift)
        })
    }
}

/// The differential on `Hom(x, y)`: twist precomposition plus twist
/// postcomposition (no signs over GF(2)). Raises degree by one.
pub fn differential<B: DgBase>(
    h: &TwMorphism<B>,
    x: &TwistedComplex<B>,
    y: &TwistedComplex<B>,
) -> TwMorphism<B> {
    let mut components: BTreeMap<(usize, usize), B::Mor> = BTreeMap::new();
    let accumulate = |components: &mut BTreeMap<(usize, usize), B::Mor>,
                          key: (usize, usize),
                          m: B::Mor| {
        if B::is_zero(&m) {
            return;
        }
        let sum = match components.get(&key) {
            Some(existing) => B::add(existing, &m),
            None => m,
        };
        if B::is_zero(&sum) {
            components.remove(&key);
        } else {
            components.insert(key, sum);
        }
    };
    for (&(i, j), comp) in &h.components {
        // h . f : twist components of x arriving at i
        for i_pre in 0..i {
            if let Some(f) = x.twist.get(&(i_pre, i)) {
                accumulate(&mut components, (i_pre, j), B::compose(comp, f));
            }
        }
        // g . h : twist components of y leaving j
        for j_post in j + 1..y.len() {
            if let Some(g) = y.twist.get(&(j, j_post)) {
                accumulate(&mut components, (i, j_post), B::compose(g, comp));
            }
        }
    }
    TwMorphism { components, degree: h.degree + 1 }
}

/// Mapping cone of a closed degree-0 morphism `h : x -> y`: the terms of
/// `x[1]` followed by the terms of `y`, with `h` as the connecting twist.
pub fn cone<B: DgBase>(
    h: &TwMorphism<B>,
    x: &TwistedComplex<B>,
    y: &TwistedComplex<B>,
) -> Result<TwistedComplex<B>, ConeError> {
    if h.degree != 0 {
        return Err(ConeError::NotDegreeZero);
    }
    if let Err(v) = x.validate() {
        return Err(ConeError::InvalidInput(v));
    }
    if let Err(v) = y.validate() {
        return Err(ConeError::InvalidInput(v));
    }
    if !differential(h, x, y).is_zero() {
        return Err(ConeError::NotClosed);
    }
    let offset = x.len();
    let mut terms: Vec<Term<B::Obj>> =
        x.terms.iter().map(|t| Term::new(t.obj, t.shift + 1)).collect();
    terms.extend(y.terms.iter().copied());
    let mut twist = BTreeMap::new();
    for (&(i, j), m) in &x.twist {
        twist.insert((i, j), m.clone());
    }
    for (&(i, j), m) in &y.twist {
        twist.insert((i + offset, j + offset), m.clone());
    }
    for (&(i, j), m) in &h.components {
        twist.insert((i, j + offset), m.clone());
    }
    Ok(TwistedComplex::new(terms, twist))
}

impl TwistedComplex<DiagBase> {
    /// Monoidal product of diagram complexes. Product terms `(i, j)` are
    /// ordered lexicographically by `(i + j, i)`, which preserves
    /// one-sidedness; the twist is `f x id + id x g`.
    pub fn tensor(&self, other: &TwistedComplex<DiagBase>) -> TwistedComplex<DiagBase> {
        let mut pairs: Vec<(usize, usize)> = (0..self.len())
            .flat_map(|i| (0..other.len()).map(move |j| (i, j)))
            .collect();
        pairs.sort_by_key(|&(i, j)| (i + j, i));
        let index_of = |i: usize, j: usize| pairs.iter().position(|&p| p == (i, j)).unwrap();
        let terms: Vec<Term<usize>> = pairs
            .iter()
            .map(|&(i, j)| {
                Term::new(
                    self.terms[i].obj + other.terms[j].obj,
                    self.terms[i].shift + other.terms[j].shift,
                )
            })
            .collect();
        let mut twist: BTreeMap<(usize, usize), Morphism> = BTreeMap::new();
        for (&(i, i2), f) in &self.twist {
            for j in 0..other.len() {
                let id = Morphism::identity(ObjQ::q(other.terms[j].obj));
                twist.insert((index_of(i, j), index_of(i2, j)), f.tensor(&id));
            }
        }
        for (&(j, j2), g) in &other.twist {
            for i in 0..self.len() {
                let id = Morphism::identity(ObjQ::q(self.terms[i].obj));
                twist.insert((index_of(i, j), index_of(i, j2)), id.tensor(g));
            }
        }
        TwistedComplex::new(terms, twist)
    }
}

/// A Gaussian integer; the Grothendieck-group class of a diagram complex.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct GaussClass {
    pub re: i64,
    pub im: i64,
}

impl GaussClass {
    pub const ZERO: GaussClass = GaussClass { re: 0, im: 0 };
    pub const ONE: GaussClass = GaussClass { re: 1, im: 0 };
    pub const I: GaussClass = GaussClass { re: 0, im: 1 };

    pub fn new(re: i64, im: i64) -> Self {
        GaussClass { re, im }
    }

    /// `i^k`.
    pub fn i_pow(k: usize) -> Self {
        match k % 4 {
            0 => GaussClass::new(1, 0),
            1 => GaussClass::new(0, 1),
            2 => GaussClass::new(-1, 0),
            _ => GaussClass::new(0, -1),
        }
    }
}

impl Add for GaussClass {
    type Output = GaussClass;
    fn add(self, rhs: GaussClass) -> GaussClass {
        GaussClass::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for GaussClass {
    type Output = GaussClass;
    fn sub(self, rhs: GaussClass) -> GaussClass {
        GaussClass::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Neg for GaussClass {
    type Output = GaussClass;
    fn neg(self) -> GaussClass {
        GaussClass::new(-self.re, -self.im)
    }
}

impl Mul for GaussClass {
    type Output = GaussClass;
    fn mul(self, rhs: GaussClass) -> GaussClass {
        GaussClass::new(
            self.re * rhs.re - self.im * rhs.im,
            self.re * rhs.im + self.im * rhs.re,
        )
    }
}

impl fmt::Debug for GaussClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:+}i", self.re, self.im)
    }
}

impl fmt::Display for GaussClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:+}i", self.re, self.im)
    }
}

/// Euler-characteristic class of a diagram complex in `Z[i]`: each term
/// `Q^k[m]` contributes `(-1)^m i^k`. Well defined on the Grothendieck group
/// because a one-sided twisted complex is an iterated cone.
pub fn gauss_class(x: &TwistedComplex<DiagBase>) -> GaussClass {
    let mut total = GaussClass::ZERO;
    for t in x.terms() {
        let sign = if t.shift.rem_euclid(2) == 0 { 1 } else { -1 };
        let contrib = GaussClass::i_pow(t.obj);
        total = total + GaussClass::new(sign * contrib.re, sign * contrib.im);
    }
    total
}

/// Searches for a degree minus-one homotopy `s` with `d(s) = h1 + h2`.
///
/// Both inputs must be closed degree-0 morphisms `x -> y`. Components of `s`
/// range over the finite graded Hom bases of the base category, so the
/// search is a GF(2) linear solve; returns the witness when consistent.
pub fn are_homotopic<B: DgBase>(
    h1: &TwMorphism<B>,
    h2: &TwMorphism<B>,
    x: &TwistedComplex<B>,
    y: &TwistedComplex<B>,
) -> Option<TwMorphism<B>> {
    assert_eq!(h1.degree(), 0);
    assert_eq!(h2.degree(), 0);
    let rhs_m = h1.add(h2);

    // variables: basis elements of each degree -1 component slot
    let mut vars: Vec<((usize, usize), B::Mor)> = Vec::new();
    for i in 0..x.len() {
        for j in 0..y.len() {
            let raw = -1 - x.terms[i].shift + y.terms[j].shift;
            for b in B::hom_basis(x.terms[i].obj, y.terms[j].obj, raw) {
                vars.push(((i, j), b));
            }
        }
    }
    // equation slots: graded bases of each degree-0 component
    let mut slots: Vec<((usize, usize), Vec<B::Mor>)> = Vec::new();
    for i in 0..x.len() {
        for j in 0..y.len() {
            let raw = -x.terms[i].shift + y.terms[j].shift;
            let basis = B::hom_basis(x.terms[i].obj, y.terms[j].obj, raw);
            if !basis.is_empty() {
                slots.push(((i, j), basis));
            }
        }
    }
    let n_rows: usize = slots.iter().map(|(_, b)| b.len()).sum();
    let mut a = Gf2Matrix::zeros(n_rows, vars.len());
    let mut rhs = Gf2Vec::zeros(n_rows);

    let coords_of = |m: &TwMorphism<B>| -> Vec<bool> {
        let mut bits = Vec::with_capacity(n_rows);
        for ((i, j), basis) in &slots {
            let comp = m.component_at(*i, *j, x, y);
            let coords = B::coords(&comp, x.terms[*i].obj, y.terms[*j].obj, basis)
                .expect("degree-0 components lie in the graded basis");
            bits.extend(coords);
        }
        bits
    };

    for (col, (key, b)) in vars.iter().enumerate() {
        let mut single = BTreeMap::new();
        single.insert(*key, b.clone());
        let s = TwMorphism::<B>::new(-1, single);
        let ds = differential(&s, x, y);
        for (row, bit) in coords_of(&ds).into_iter().enumerate() {
            if bit {
                a.set(row, col, true);
            }
        }
    }
    for (row, bit) in coords_of(&rhs_m).into_iter().enumerate() {
        if bit {
            rhs.set(row, true);
        }
    }

    let solution = a.solve(&rhs)?;
    let mut components: BTreeMap<(usize, usize), B::Mor> = BTreeMap::new();
    for (col, (key, b)) in vars.iter().enumerate() {
        if solution.get(col) {
            let sum = match components.get(key) {
                Some(existing) => B::add(existing, b),
                None => b.clone(),
            };
            components.insert(*key, sum);
        }
    }
    Some(TwMorphism::new(-1, components))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::NormalForm;

    fn alpha0() -> Morphism {
        Morphism::alpha0(1)
    }

    fn diag(
        terms: &[(usize, i64)],
        twist: &[(usize, usize, Morphism)],
    ) -> TwistedComplex<DiagBase> {
        let terms = terms.iter().map(|&(k, m)| Term::new(k, m)).collect();
        let twist = twist.iter().cloned().map(|(i, j, m)| ((i, j), m)).collect();
        TwistedComplex::new(terms, twist)
    }

    #[test]
    fn single_unit_is_valid() {
        assert_eq!(diag(&[(0, 0)], &[]).validate(), Ok(()));
    }

    #[test]
    fn alpha_twist_is_valid() {
        let x = diag(&[(0, 0), (0, 0)], &[(0, 1, alpha0())]);
        assert_eq!(x.validate(), Ok(()));
    }

    #[test]
    fn identity_twist_fails_degree() {
        let x = diag(&[(0, 0), (0, 0)], &[(0, 1, Morphism::identity(ObjQ::unit()))]);
        assert_eq!(x.validate(), Err(Violation { kind: ViolationKind::Degree, i: 0, j: 1 }));
    }

    #[test]
    fn lower_triangular_twist_fails() {
        let mut twist = BTreeMap::new();
        twist.insert((1, 0), alpha0());
        let x = TwistedComplex::<DiagBase>::new(
            vec![Term::new(0usize, 0), Term::new(0usize, 0)],
            twist,
        );
        assert_eq!(
            x.validate(),
            Err(Violation { kind: ViolationKind::OneSidedness, i: 1, j: 0 })
        );
    }

    #[test]
    fn differential_with_zero_twist_vanishes() {
        let x = diag(&[(0, 0), (1, 0)], &[]);
        let h = TwMorphism::identity(&x);
        assert!(differential(&h, &x, &x).is_zero());
    }

    #[test]
    fn differential_of_inclusion() {
        // x = (Q^0) untwisted, y = (Q^0 -> Q^0) twisted by alpha; the
        // inclusion into the first term differentiates to alpha into the
        // second.
        let x = diag(&[(0, 0)], &[]);
        let y = diag(&[(0, 0), (0, 0)], &[(0, 1, alpha0())]);
        let mut comps = BTreeMap::new();
        comps.insert((0, 0), Morphism::identity(ObjQ::unit()));
        let h = TwMorphism::<DiagBase>::new(0, comps);
        let dh = differential(&h, &x, &y);
        assert_eq!(dh.components().len(), 1);
        assert_eq!(dh.components().get(&(0, 1)), Some(&alpha0()));
        assert_eq!(dh.degree(), 1);
    }

    #[test]
    fn cone_of_zero_is_direct_sum() {
        let x = diag(&[(1, 0)], &[]);
        let y = diag(&[(0, 0)], &[]);
        let z = cone(&TwMorphism::zero(0), &x, &y).unwrap();
        assert_eq!(z.terms(), &[Term::new(1usize, 1), Term::new(0usize, 0)]);
        assert!(z.twist().is_empty());
    }

    #[test]
    fn cone_of_identity_validates() {
        let x = diag(&[(0, 0)], &[]);
        let h = TwMorphism::identity(&x);
        let c = cone(&h, &x, &x).unwrap();
        assert_eq!(c.validate(), Ok(()));
        assert_eq!(c.terms(), &[Term::new(0usize, 1), Term::new(0usize, 0)]);
        assert_eq!(gauss_class(&c), GaussClass::ZERO);
    }

    #[test]
    fn cone_rejects_non_closed() {
        let x = diag(&[(0, 0)], &[]);
        let y = diag(&[(0, 0), (0, 0)], &[(0, 1, alpha0())]);
        let mut comps = BTreeMap::new();
        comps.insert((0, 0), Morphism::identity(ObjQ::unit()));
        let h = TwMorphism::<DiagBase>::new(0, comps);
        assert_eq!(cone(&h, &x, &y), Err(ConeError::NotClosed));
    }

    #[test]
    fn shift_round_trip() {
        let x = diag(&[(0, 0), (2, 1)], &[]);
        assert_eq!(x.shifted(1).shifted(-1), x);
    }

    #[test]
    fn tensor_unit_and_gauss_product() {
        let unit = diag(&[(0, 0)], &[]);
        let q = diag(&[(1, 0)], &[]);
        let t = unit.tensor(&q);
        assert_eq!(t.terms(), q.terms());
        let qq = q.tensor(&q);
        assert_eq!(qq.terms(), &[Term::new(2usize, 0)]);
        assert_eq!(gauss_class(&qq), GaussClass::new(-1, 0));
    }

    #[test]
    fn gauss_class_examples() {
        assert_eq!(gauss_class(&diag(&[(0, 0)], &[])), GaussClass::ONE);
        assert_eq!(gauss_class(&diag(&[(2, 0)], &[])), GaussClass::new(-1, 0));
        let c = diag(&[(0, 1), (0, 0)], &[(0, 1, Morphism::identity(ObjQ::unit()))]);
        assert_eq!(c.validate(), Ok(()));
        assert_eq!(gauss_class(&c), GaussClass::ZERO);
    }

    #[test]
    fn homotopic_to_itself() {
        let x = diag(&[(0, 0)], &[]);
        let h = TwMorphism::identity(&x);
        let s = are_homotopic(&h, &h, &x, &x).unwrap();
        assert!(s.is_zero());
    }

    #[test]
    fn identity_not_null_homotopic_on_unit() {
        // End^{-1}(Q^0) = 0, so there is nothing to solve with
        let x = diag(&[(0, 0)], &[]);
        let id = TwMorphism::identity(&x);
        let zero = TwMorphism::zero(0);
        assert!(are_homotopic(&id, &zero, &x, &x).is_none());
    }

    #[test]
    fn cone_of_identity_is_contractible() {
        let unit = diag(&[(0, 0)], &[]);
        let c = cone(&TwMorphism::identity(&unit), &unit, &unit).unwrap();
        let id = TwMorphism::identity(&c);
        let zero = TwMorphism::zero(0);
        let s = are_homotopic(&id, &zero, &c, &c).expect("cone of identity is contractible");
        // the witness is the identity from the second block back to the first
        assert_eq!(s.components().len(), 1);
        let w = s.components().get(&(1, 0)).unwrap();
        assert_eq!(w.terms().next(), Some(NormalForm::new(0, 0, 0)));
        let ds = differential(&s, &c, &c);
        assert_eq!(ds, id);
    }

    #[test]
    fn dd_zero_on_basis_morphisms() {
        let x = diag(&[(0, 0), (0, 0)], &[(0, 1, alpha0())]);
        let y = diag(&[(0, 0), (0, 0)], &[(0, 1, Morphism::alpha0(2))]);
        for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            for n in 0..3u32 {
                let mut comps = BTreeMap::new();
                comps.insert((i, j), Morphism::alpha0(n));
                let raw = NormalForm::new(0, 0, n).degree();
                let deg = raw + x.terms()[i].shift - y.terms()[j].shift;
                let h = TwMorphism::<DiagBase>::new(deg, comps);
                assert!(h.check_against(&x, &y));
                let dd = differential(&differential(&h, &x, &y), &x, &y);
                assert!(dd.is_zero(), "d^2 != 0 at ({i},{j}) n={n}");
            }
        }
    }
}
