//! The additive monoidal DG category of planar strand diagrams.
//!
//! Objects are tensor powers `Q^k` of a single generator with a cohomological
//! shift `[m]`. Morphisms are GF(2)-linear combinations of planar diagrams
//! built by stacking four elementary pictures: a vertical strand, a cup, a
//! cap and a half strand (a strand with one free end). Diagrams are taken
//! modulo local relations:
//!
//! * isotopy of disjoint sub-diagrams and of a single strand (zigzags),
//! * a closed loop equals the empty diagram,
//! * a cup stacked on top of a cap cancels (cup and cap are mutually
//!   inverse up to shift),
//! * cups, caps and half strands slide past trivial strands.
//!
//! Every diagram is equal to exactly one *normal form*: a left-nested tower
//! of caps, a parity core (a power of the floating-interval endomorphism
//! `alpha`, possibly pre/post-composed with a half strand), then a
//! left-nested tower of cups. [`normalize`] implements the relations as a
//! terminating rewriting system on slice words and reads the normal form off
//! the irreducible word.

use std::collections::BTreeSet;
use std::fmt;

/// An elementary object `Q^k[m]`: `k` strands with cohomological shift `m`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ObjQ {
    /// Number of strands (the power of the generator `Q`).
    pub strands: usize,
    /// Cohomological shift.
    pub shift: i64,
}

impl ObjQ {
    pub fn new(strands: usize, shift: i64) -> Self {
        ObjQ { strands, shift }
    }

    /// The monoidal unit `Q^0`.
    pub fn unit() -> Self {
        ObjQ { strands: 0, shift: 0 }
    }

    pub fn q(strands: usize) -> Self {
        ObjQ { strands, shift: 0 }
    }

    pub fn shifted(self, m: i64) -> Self {
        ObjQ { strands: self.strands, shift: self.shift + m }
    }
}

impl fmt::Debug for ObjQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.shift == 0 {
            write!(f, "Q^{}", self.strands)
        } else {
            write!(f, "Q^{}[{}]", self.strands, self.shift)
        }
    }
}

/// The three non-identity elementary diagrams.
///
/// Identity slices are never stored; the identity morphism is the empty word.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Generator {
    /// Creates two adjacent strands; degree -1.
    Cup,
    /// Joins two adjacent strands; degree +1.
    Cap,
    /// Creates one strand with a free lower end; degree 0.
    Hf,
}

impl Generator {
    /// Net change in strand count.
    pub fn width_delta(self) -> isize {
        match self {
            Generator::Cup => 2,
            Generator::Cap => -2,
            Generator::Hf => 1,
        }
    }

    pub fn degree(self) -> i64 {
        match self {
            Generator::Cup => -1,
            Generator::Cap => 1,
            Generator::Hf => 0,
        }
    }

    /// Valid positions on a slice with `width` incoming strands (1-based).
    fn position_range(self, width: usize) -> std::ops::RangeInclusive<usize> {
        match self {
            Generator::Cup | Generator::Hf => 1..=width + 1,
            Generator::Cap => 1..=width.saturating_sub(1),
        }
    }
}

/// One horizontal layer of a diagram: a single generator at `position`,
/// tensored with trivial strands everywhere else.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Slice {
    pub generator: Generator,
    /// Leftmost strand the generator touches, 1-based.
    pub position: usize,
    /// Strand count below this slice.
    pub width_in: usize,
}

/// Errors from building a [`DiagramWord`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum WordError {
    PositionOutOfRange { index: usize, generator: Generator, position: usize, width: usize },
    WidthMismatch { expected: usize, produced: usize },
}

impl fmt::Display for WordError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordError::PositionOutOfRange { index, generator, position, width } => write!(
                f,
                "slice {index}: {generator:?} at position {position} invalid on width {width}"
            ),
            WordError::WidthMismatch { expected, produced } => {
                write!(f, "word produces {produced} strands, target has {expected}")
            }
        }
    }
}

impl std::error::Error for WordError {}

/// A concrete diagram presented as a bottom-to-top word of slices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DiagramWord {
    source: ObjQ,
    target: ObjQ,
    slices: Vec<Slice>,
}

impl DiagramWord {
    /// Builds and validates a word: positions in range, strand counts
    /// chaining from `source.strands` to `target.strands`.
    pub fn new(
        source: ObjQ,
        target: ObjQ,
        slices: &[(Generator, usize)],
    ) -> Result<Self, WordError> {
        let mut width = source.strands;
        let mut out = Vec::with_capacity(slices.len());
        for (index, &(generator, position)) in slices.iter().enumerate() {
            if !generator.position_range(width).contains(&position) {
                return Err(WordError::PositionOutOfRange { index, generator, position, width });
            }
            out.push(Slice { generator, position, width_in: width });
            width = (width as isize + generator.width_delta()) as usize;
        }
        if width != target.strands {
            return Err(WordError::WidthMismatch { expected: target.strands, produced: width });
        }
        Ok(DiagramWord { source, target, slices: out })
    }

    /// Identity word on `obj`.
    pub fn identity(obj: ObjQ) -> Self {
        DiagramWord { source: obj, target: obj, slices: Vec::new() }
    }

    pub fn source(&self) -> ObjQ {
        self.source
    }

    pub fn target(&self) -> ObjQ {
        self.target
    }

    pub fn slices(&self) -> &[Slice] {
        &self.slices
    }

    /// Cohomological degree: caps minus cups plus the shift difference.
    pub fn degree(&self) -> i64 {
        let d: i64 = self.slices.iter().map(|s| s.generator.degree()).sum();
        d + self.source.shift - self.target.shift
    }
}

/// The canonical representative of a diagram class: `floor(k/2)` left-nested
/// caps, a parity core with `alpha` exponent `n`, then `floor(l/2)`
/// left-nested cups.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalForm {
    /// Strand count of the source.
    pub source_strands: usize,
    /// Strand count of the target.
    pub target_strands: usize,
    /// Exponent of the floating-interval endomorphism.
    pub alpha: u32,
}

impl NormalForm {
    pub fn new(source_strands: usize, target_strands: usize, alpha: u32) -> Self {
        NormalForm { source_strands, target_strands, alpha }
    }

    /// Degree of the underlying diagram (no shifts).
    pub fn degree(&self) -> i64 {
        let k = self.source_strands as i64;
        let l = self.target_strands as i64;
        k.div_euclid(2) - l.div_euclid(2)
            + self.alpha as i64
            + i64::from(self.source_strands % 2 == 1 && self.target_strands % 2 == 0)
    }

    /// Minimal degree of any diagram from `Q^k` to `Q^l`.
    pub fn min_degree(k: usize, l: usize) -> i64 {
        (k as i64).div_euclid(2) - (l as i64).div_euclid(2) + i64::from(k % 2 == 1 && l % 2 == 0)
    }

    /// Expands the normal form into its canonical slice word (zero shifts).
    pub fn canonical_word(&self) -> DiagramWord {
        let k = self.source_strands;
        let l = self.target_strands;
        let mut slices: Vec<(Generator, usize)> = Vec::new();
        for _ in 0..k / 2 {
            slices.push((Generator::Cap, 1));
        }
        if k % 2 == 1 && l % 2 == 0 {
            // opposite half strand: kill the leftover strand
            slices.push((Generator::Hf, 1));
            slices.push((Generator::Cap, 1));
        }
        for _ in 0..self.alpha {
            // one floating interval
            slices.push((Generator::Hf, 1));
            slices.push((Generator::Hf, 2));
            slices.push((Generator::Cap, 1));
        }
        if k % 2 == 0 && l % 2 == 1 {
            slices.push((Generator::Hf, 1));
        }
        for _ in 0..l / 2 {
            slices.push((Generator::Cup, 1));
        }
        DiagramWord::new(ObjQ::q(k), ObjQ::q(l), &slices)
            .expect("canonical word is always well-formed")
    }
}

impl fmt::Debug for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.source_strands, self.target_strands, self.alpha)
    }
}

/// A morphism: a GF(2)-linear combination of normal forms sharing endpoints.
///
/// The zero morphism is the empty combination. Since the `alpha` exponent
/// determines the degree, a morphism is degree-homogeneous exactly when it
/// has at most one term.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Morphism {
    source: ObjQ,
    target: ObjQ,
    /// Alpha exponents of the terms present (GF(2) coefficients).
    terms: BTreeSet<u32>,
}

impl Morphism {
    pub fn zero(source: ObjQ, target: ObjQ) -> Self {
        Morphism { source, target, terms: BTreeSet::new() }
    }

    pub fn from_normal_form(source: ObjQ, target: ObjQ, nf: NormalForm) -> Self {
        assert_eq!(nf.source_strands, source.strands);
        assert_eq!(nf.target_strands, target.strands);
        let mut terms = BTreeSet::new();
        terms.insert(nf.alpha);
        Morphism { source, target, terms }
    }

    pub fn identity(obj: ObjQ) -> Self {
        Morphism::from_normal_form(obj, obj, NormalForm::new(obj.strands, obj.strands, 0))
    }

    pub fn cup() -> Self {
        Morphism::from_normal_form(ObjQ::unit(), ObjQ::q(2), NormalForm::new(0, 2, 0))
    }

    pub fn cap() -> Self {
        Morphism::from_normal_form(ObjQ::q(2), ObjQ::unit(), NormalForm::new(2, 0, 0))
    }

    pub fn half_strand() -> Self {
        Morphism::from_normal_form(ObjQ::unit(), ObjQ::q(1), NormalForm::new(0, 1, 0))
    }

    /// The opposite half strand `cap . (hf x id)`.
    pub fn half_strand_op() -> Self {
        Morphism::from_normal_form(ObjQ::q(1), ObjQ::unit(), NormalForm::new(1, 0, 0))
    }

    /// `alpha_0^n`: `n` floating intervals as an endomorphism of the unit.
    pub fn alpha0(n: u32) -> Self {
        Morphism::from_normal_form(ObjQ::unit(), ObjQ::unit(), NormalForm::new(0, 0, n))
    }

    /// `alpha_1^n`: a strand next to `n` floating intervals.
    pub fn alpha1(n: u32) -> Self {
        Morphism::from_normal_form(ObjQ::q(1), ObjQ::q(1), NormalForm::new(1, 1, n))
    }

    pub fn source(&self) -> ObjQ {
        self.source
    }

    pub fn target(&self) -> ObjQ {
        self.target
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = NormalForm> + '_ {
        self.terms
            .iter()
            .map(move |&n| NormalForm::new(self.source.strands, self.target.strands, n))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Degree after shifts, when homogeneous; `None` for the zero morphism.
    pub fn degree(&self) -> Option<i64> {
        let &n = self.terms.first()?;
        Some(
            NormalForm::new(self.source.strands, self.target.strands, n).degree()
                + self.source.shift
                - self.target.shift,
        )
    }

    /// GF(2) sum; endpoints must agree.
    pub fn add(&self, other: &Morphism) -> Morphism {
        assert_eq!(self.source, other.source, "source mismatch in sum");
        assert_eq!(self.target, other.target, "target mismatch in sum");
        let mut terms = self.terms.clone();
        for &n in &other.terms {
            if !terms.insert(n) {
                terms.remove(&n);
            }
        }
        Morphism { source: self.source, target: self.target, terms }
    }

    fn add_term(&mut self, n: u32) {
        if !self.terms.insert(n) {
            self.terms.remove(&n);
        }
    }

    /// Vertical composition `self . f` (first `f`, then `self`).
    ///
    /// Strand-count mismatch between `f`'s target and `self`'s source yields
    /// the zero morphism; shifts never block composition.
    pub fn compose(&self, f: &Morphism) -> Morphism {
        let mut out = Morphism::zero(f.source, self.target);
        if f.target.strands != self.source.strands {
            return out;
        }
        for &n1 in &f.terms {
            let w1 = NormalForm::new(f.source.strands, f.target.strands, n1).canonical_word();
            for &n2 in &self.terms {
                let w2 =
                    NormalForm::new(self.source.strands, self.target.strands, n2).canonical_word();
                let mut slices: Vec<(Generator, usize)> =
                    w1.slices.iter().map(|s| (s.generator, s.position)).collect();
                slices.extend(w2.slices.iter().map(|s| (s.generator, s.position)));
                let stacked = DiagramWord::new(
                    ObjQ::q(f.source.strands),
                    ObjQ::q(self.target.strands),
                    &slices,
                )
                .expect("stacking normal-form words is well-formed");
                let nf = normalize_word(&stacked);
                out.add_term(nf.alpha);
            }
        }
        out
    }

    /// Horizontal composition, `self` placed to the left of `g`.
    pub fn tensor(&self, g: &Morphism) -> Morphism {
        let source = ObjQ::new(self.source.strands + g.source.strands, self.source.shift + g.source.shift);
        let target = ObjQ::new(self.target.strands + g.target.strands, self.target.shift + g.target.shift);
        let mut out = Morphism::zero(source, target);
        for &n1 in &self.terms {
            let w1 = NormalForm::new(self.source.strands, self.target.strands, n1).canonical_word();
            for &n2 in &g.terms {
                let w2 = NormalForm::new(g.source.strands, g.target.strands, n2).canonical_word();
                // Left word first at unchanged positions, then the right word
                // shifted past the finished left part.
                let mut slices: Vec<(Generator, usize)> =
                    w1.slices.iter().map(|s| (s.generator, s.position)).collect();
                let offset = self.target.strands;
                slices.extend(w2.slices.iter().map(|s| (s.generator, s.position + offset)));
                let side = DiagramWord::new(ObjQ::q(source.strands), ObjQ::q(target.strands), &slices)
                    .expect("juxtaposing normal-form words is well-formed");
                let nf = normalize_word(&side);
                out.add_term(nf.alpha);
            }
        }
        out
    }

    /// Applies the shift functor `[m]` to both endpoints.
    pub fn shifted(&self, m: i64) -> Morphism {
        Morphism {
            source: self.source.shifted(m),
            target: self.target.shifted(m),
            terms: self.terms.clone(),
        }
    }
}

/// Basis of the degree-`d` Hom space from `Q^k` to `Q^l` (no shifts):
/// exactly one normal form when `d >= min_degree`, empty otherwise.
pub fn hom_basis(k: usize, l: usize, d: i64) -> Vec<NormalForm> {
    let min = NormalForm::min_degree(k, l);
    if d < min {
        return Vec::new();
    }
    vec![NormalForm::new(k, l, (d - min) as u32)]
}

// ---------------------------------------------------------------------------
// Rewriting engine
// ---------------------------------------------------------------------------

/// Working representation during rewriting: generator/position pairs plus the
/// source strand count. Widths are recomputed as needed.
#[derive(Clone, PartialEq, Eq, Debug)]
struct WorkWord {
    source_strands: usize,
    slices: Vec<(Generator, usize)>,
}

impl WorkWord {
    fn from_word(w: &DiagramWord) -> Self {
        WorkWord {
            source_strands: w.source.strands,
            slices: w.slices.iter().map(|s| (s.generator, s.position)).collect(),
        }
    }

}

/// A single applicable rewrite instance.
///
/// Every move is an oriented instance of a defining relation:
/// * `SlideLeft` — a generator slides past the trivial strand to its left.
/// * `Annihilate` — a cap directly above a cup consumes at least one of its
///   legs: a closed loop (both legs) or a zigzag (one leg) disappears.
/// * `Inverse` — a cup directly above a cap at the same position cancels.
/// * `Commute` — disjoint adjacent slices swap, moving caps below and cups
///   above the slice next to them.
///
/// Each move strictly decreases the measure
/// `(#caps + #cups, misordered disjoint pairs, total leftward displacement)`
/// lexicographically, so rewriting terminates under any application order.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum RewriteMove {
    SlideLeft { index: usize },
    Annihilate { index: usize },
    Inverse { index: usize },
    Commute { index: usize },
}

/// True when the upper slice consumes a strand emitted by the lower slice.
fn interacting(lower: (Generator, usize), upper: (Generator, usize)) -> bool {
    let (lg, lp) = lower;
    let (ug, up) = upper;
    if ug != Generator::Cap {
        return false; // cups and half strands consume nothing
    }
    let eaten = [up, up + 1];
    match lg {
        Generator::Cup => eaten.iter().any(|&s| s == lp || s == lp + 1),
        Generator::Hf => eaten.contains(&lp),
        Generator::Cap => false,
    }
}

/// Disjoint adjacent pairs we orient: caps sink, cups rise past half strands.
fn misordered(lower: Generator, upper: Generator) -> bool {
    matches!(
        (lower, upper),
        (Generator::Cup, Generator::Cap)
            | (Generator::Cup, Generator::Hf)
            | (Generator::Hf, Generator::Cap)
    )
}

/// Swaps disjoint adjacent slices `(s, t) -> (t, s)` with position bookkeeping.
/// Returns the new pair, or `None` when the swap cannot be expressed at the
/// adjacent-slice level (a half strand sitting between cup legs; a slide
/// resolves that case instead).
fn commuted(lower: (Generator, usize), upper: (Generator, usize)) -> Option<((Generator, usize), (Generator, usize))> {
    let (lg, lp) = lower;
    let (ug, up) = upper;
    let ld = lg.width_delta();
    let ud = ug.width_delta();
    // Strand interval footprints on the shared boundary.
    let lower_span = match lg {
        Generator::Cup => (lp, lp + 1),
        Generator::Hf => (lp, lp),
        Generator::Cap => unreachable!("caps emit nothing and are never the misordered lower slice"),
    };
    let upper_margin = match ug {
        Generator::Cap => (up, up + 1),
        // insertion points: treat as acting "at" up with zero width
        Generator::Cup | Generator::Hf => (up, up.saturating_sub(1)),
    };
    if ug == Generator::Cap {
        if upper_margin.1 < lower_span.0 {
            // upper acts strictly left of lower's output
            Some(((ug, up), (lg, (lp as isize + ud) as usize)))
        } else if upper_margin.0 > lower_span.1 {
            Some(((ug, (up as isize - ld) as usize), (lg, lp)))
        } else {
            None // interacting; not a commute
        }
    } else {
        // upper is an insertion (Cup/Hf moving below a Cup/Hf lower slice)
        if up <= lower_span.0 {
            Some(((ug, up), (lg, (lp as isize + ud) as usize)))
        } else if up > lower_span.1 + 1 {
            Some(((ug, (up as isize - ld) as usize), (lg, lp)))
        } else if up == lower_span.1 + 1 && lg == Generator::Hf {
            // insertion immediately right of a single created strand
            Some(((ug, up - 1), (lg, lp)))
        } else {
            None // insertion between cup legs: handled by slides
        }
    }
}

fn applicable_moves(word: &WorkWord) -> Vec<RewriteMove> {
    let mut moves = Vec::new();
    for (i, &(_, p)) in word.slices.iter().enumerate() {
        if p > 1 {
            moves.push(RewriteMove::SlideLeft { index: i });
        }
    }
    for i in 0..word.slices.len().saturating_sub(1) {
        let lower = word.slices[i];
        let upper = word.slices[i + 1];
        match (lower.0, upper.0) {
            (Generator::Cup, Generator::Cap) if interacting(lower, upper) => {
                moves.push(RewriteMove::Annihilate { index: i });
            }
            (Generator::Cap, Generator::Cup) if lower.1 == upper.1 => {
                moves.push(RewriteMove::Inverse { index: i });
            }
            (lg, ug) if misordered(lg, ug) && !interacting(lower, upper) => {
                if commuted(lower, upper).is_some() {
                    moves.push(RewriteMove::Commute { index: i });
                }
            }
            _ => {}
        }
    }
    moves
}

fn apply_move(word: &mut WorkWord, mv: RewriteMove) {
    match mv {
        RewriteMove::SlideLeft { index } => {
            word.slices[index].1 -= 1;
        }
        RewriteMove::Annihilate { index } | RewriteMove::Inverse { index } => {
            word.slices.drain(index..index + 2);
        }
        RewriteMove::Commute { index } => {
            let (lo, up) = (word.slices[index], word.slices[index + 1]);
            let (new_lo, new_up) = commuted(lo, up).expect("move was checked applicable");
            word.slices[index] = new_lo;
            word.slices[index + 1] = new_up;
        }
    }
}

/// Provenance of a strand during read-off.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Origin {
    Bottom,
    HalfStrand,
    CupLeg,
}

/// Reads the normal form off an irreducible word by tracing strand origins.
///
/// In an irreducible word no cap sits above a cup, so caps consume only
/// bottom strands and half-strand ends. A cap eating two free ends closes a
/// floating interval (one `alpha` factor); a cap eating one free end is an
/// opposite half strand; surviving free ends are plain half strands. Opposite
/// and plain half strands pair up into `alpha` factors, except for the single
/// connector needed when the source and target parities differ.
fn read_off(word: &WorkWord, target_strands: usize) -> NormalForm {
    let k = word.source_strands;
    let mut strands: Vec<Origin> = vec![Origin::Bottom; k];
    let mut intervals = 0u32;
    let mut op_half = 0u32;
    for &(gen, p) in &word.slices {
        match gen {
            Generator::Hf => strands.insert(p - 1, Origin::HalfStrand),
            Generator::Cup => {
                strands.insert(p - 1, Origin::CupLeg);
                strands.insert(p, Origin::CupLeg);
            }
            Generator::Cap => {
                let b = strands.remove(p);
                let a = strands.remove(p - 1);
                let free = [a, b].iter().filter(|&&o| o == Origin::HalfStrand).count();
                debug_assert!(
                    a != Origin::CupLeg && b != Origin::CupLeg,
                    "irreducible word has a cap above a cup"
                );
                match free {
                    2 => intervals += 1,
                    1 => op_half += 1,
                    _ => {}
                }
            }
        }
    }
    debug_assert_eq!(strands.len(), target_strands);
    let naked = strands.iter().filter(|&&o| o == Origin::HalfStrand).count() as u32;
    let parity = ((k + target_strands) % 2) as u32;
    debug_assert_eq!((op_half + naked) % 2, parity, "parity events must match endpoints");
    let alpha = intervals + (op_half + naked - parity) / 2;
    NormalForm::new(k, target_strands, alpha)
}

/// Rewrites `word` to its unique normal form, choosing applicable moves with
/// a fixed deterministic priority.
pub fn normalize_word(word: &DiagramWord) -> NormalForm {
    let mut work = WorkWord::from_word(word);
    loop {
        let moves = applicable_moves(&work);
        let Some(&mv) = moves.iter().max_by_key(|mv| match mv {
            RewriteMove::Annihilate { .. } | RewriteMove::Inverse { .. } => 2,
            RewriteMove::SlideLeft { .. } => 1,
            RewriteMove::Commute { .. } => 0,
        }) else {
            break;
        };
        apply_move(&mut work, mv);
    }
    read_off(&work, word.target.strands)
}

/// Like [`normalize_word`] but applies moves in an order chosen by `pick`,
/// which receives the number of applicable moves and returns an index.
/// Used to check that the rewriting system is order-independent.
pub fn normalize_word_with_order(
    word: &DiagramWord,
    mut pick: impl FnMut(usize) -> usize,
) -> NormalForm {
    let mut work = WorkWord::from_word(word);
    loop {
        let moves = applicable_moves(&work);
        if moves.is_empty() {
            break;
        }
        let chosen = moves[pick(moves.len()) % moves.len()];
        apply_move(&mut work, chosen);
    }
    read_off(&work, word.target.strands)
}

/// Normal form of a word, wrapped as a morphism with the word's shifts.
pub fn normalize(word: &DiagramWord) -> Morphism {
    let nf = normalize_word(word);
    Morphism::from_normal_form(word.source, word.target, nf)
}
