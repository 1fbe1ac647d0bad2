//! Generators for diagram words: relation instances, random words and
//! bounded exhaustive enumeration.
//!
//! The verification suite and the test oracles both draw from here. Random
//! generation is fully determined by the caller's RNG, so seeded runs are
//! reproducible.

use crate::diagrams::{DiagramWord, Generator, Morphism, NormalForm, ObjQ};
use crate::modules_r::ProjBase;
use crate::twisted::{differential, DgBase, DiagBase, Term, TwMorphism, TwistedComplex};
use rand::Rng;
use std::collections::BTreeMap;

/// Two words asserted equal by a defining relation.
pub struct RelationInstance {
    pub name: &'static str,
    pub lhs: DiagramWord,
    pub rhs: DiagramWord,
}

fn word(k: usize, l: usize, slices: &[(Generator, usize)]) -> DiagramWord {
    DiagramWord::new(ObjQ::q(k), ObjQ::q(l), slices)
        .expect("relation instances are well-formed by construction")
}

/// All instances of the local relations at every position with ambient width
/// at most `max_width`.
///
/// Covers: loop removal, both zigzags, cup/cap cancellation, sideways slides
/// of each generator past a trivial strand, disjoint commutations of every
/// generator pair, and the half-strand handle slide consequence
/// `hf . hfbar = alpha_1`.
pub fn relation_instances(max_width: usize) -> Vec<RelationInstance> {
    use Generator::*;
    let mut out = Vec::new();

    for w in 0..=max_width {
        // loop: cap directly on top of cup equals the empty diagram
        for p in 1..=w + 1 {
            out.push(RelationInstance {
                name: "loop",
                lhs: word(w, w, &[(Cup, p), (Cap, p)]),
                rhs: word(w, w, &[]),
            });
        }
        // zigzags: isotopy of a single strand
        if w >= 1 {
            for p in 1..=w {
                out.push(RelationInstance {
                    name: "zigzag-left",
                    lhs: word(w, w, &[(Cup, p + 1), (Cap, p)]),
                    rhs: word(w, w, &[]),
                });
                out.push(RelationInstance {
                    name: "zigzag-right",
                    lhs: word(w, w, &[(Cup, p), (Cap, p + 1)]),
                    rhs: word(w, w, &[]),
                });
            }
        }
        // cup on top of cap at the same position cancels
        if w >= 2 {
            for p in 1..=w - 1 {
                out.push(RelationInstance {
                    name: "cap-cup-cancel",
                    lhs: word(w, w, &[(Cap, p), (Cup, p)]),
                    rhs: word(w, w, &[]),
                });
            }
        }
        // sideways slides: a generator moves past the trivial strand next to it
        for gen in [Cup, Cap, Hf] {
            let positions: Vec<usize> = match gen {
                Cup | Hf => (1..=w).collect(),
                Cap => {
                    if w >= 3 {
                        (1..=w - 2).collect()
                    } else {
                        Vec::new()
                    }
                }
            };
            for p in positions {
                let l = (w as isize + gen.width_delta()) as usize;
                out.push(RelationInstance {
                    name: "slide",
                    lhs: word(w, l, &[(gen, p)]),
                    rhs: word(w, l, &[(gen, p + 1)]),
                });
            }
        }
        // disjoint commutation: the order of far-apart slices is immaterial
        for g1 in [Cup, Cap, Hf] {
            for g2 in [Cup, Cap, Hf] {
                // place g1 at the left edge, g2 past it on the right
                let w1 = w as isize + g1.width_delta();
                if w1 < 0 {
                    continue;
                }
                let p1 = 1usize;
                let gap = match g1 {
                    Cup => 2,
                    Hf => 1,
                    Cap => 0,
                };
                let p2 = p1 + gap + 2; // leave one untouched strand between
                let needed = match g2 {
                    Cap => p2 + 1,
                    Cup | Hf => p2 - 1,
                };
                if (w1 as usize) < needed {
                    continue;
                }
                let l = (w1 + g2.width_delta()) as usize;
                let lhs = word(w, l, &[(g1, p1), (g2, p2)]);
                // same diagram built upper-slice-first
                let p2_low = (p2 as isize - g1.width_delta()) as usize;
                if !(1..=w + 2).contains(&p2_low) {
                    continue;
                }
                let rhs_try = DiagramWord::new(ObjQ::q(w), ObjQ::q(l), &[(g2, p2_low), (g1, p1)]);
                if let Ok(rhs) = rhs_try {
                    out.push(RelationInstance { name: "disjoint-commute", lhs, rhs });
                }
            }
        }
        // half strand absorbed into an opposite half strand on its left
        if w >= 1 {
            out.push(RelationInstance {
                name: "handle-slide",
                lhs: word(w, w, &[(Hf, 1), (Cap, 1), (Hf, 1)]),
                rhs: word(w, w, &[(Hf, 1), (Hf, 2), (Cap, 1)]),
            });
        }
    }
    out
}

/// Uniformly random valid word with at most `max_len` slices, keeping every
/// intermediate width at most `max_width`. The source strand count is drawn
/// from `0..=max_width`.
pub fn random_word(rng: &mut impl Rng, max_len: usize, max_width: usize) -> DiagramWord {
    loop {
        let k = rng.gen_range(0..=max_width);
        let len = rng.gen_range(0..=max_len);
        let mut width = k;
        let mut slices = Vec::with_capacity(len);
        let mut ok = true;
        for _ in 0..len {
            let mut options: Vec<Generator> = Vec::new();
            if width + 2 <= max_width {
                options.push(Generator::Cup);
            }
            if width + 1 <= max_width {
                options.push(Generator::Hf);
            }
            if width >= 2 {
                options.push(Generator::Cap);
            }
            if options.is_empty() {
                ok = false;
                break;
            }
            let gen = options[rng.gen_range(0..options.len())];
            let position = match gen {
                Generator::Cup | Generator::Hf => rng.gen_range(1..=width + 1),
                Generator::Cap => rng.gen_range(1..=width - 1),
            };
            slices.push((gen, position));
            width = (width as isize + gen.width_delta()) as usize;
        }
        if !ok {
            continue;
        }
        return DiagramWord::new(ObjQ::q(k), ObjQ::q(width), &slices)
            .expect("random word construction is valid by construction");
    }
}

/// Random single-term morphism with both strand counts at most `max_strands`
/// and a small alpha exponent; shifts are zero.
pub fn random_morphism_term(rng: &mut impl Rng, max_strands: usize) -> Morphism {
    let k = rng.gen_range(0..=max_strands);
    let l = rng.gen_range(0..=max_strands);
    let n = rng.gen_range(0..3);
    Morphism::from_normal_form(ObjQ::q(k), ObjQ::q(l), NormalForm::new(k, l, n))
}

/// Random valid word from `Q^k` to `Q^l` with exactly `len` slices, widths
/// capped by `max_width`; `None` when the random walk dead-ends.
pub fn random_word_between(
    rng: &mut impl Rng,
    k: usize,
    l: usize,
    len: usize,
    max_width: usize,
) -> Option<DiagramWord> {
    let mut width = k;
    let mut slices = Vec::with_capacity(len);
    for step in 0..len {
        let remaining = (len - step - 1) as isize;
        let mut options: Vec<Generator> = Vec::new();
        for gen in [Generator::Cup, Generator::Cap, Generator::Hf] {
            let next = width as isize + gen.width_delta();
            if next < 0 || next as usize > max_width {
                continue;
            }
            if (next - l as isize).abs() > 2 * remaining {
                continue;
            }
            if gen == Generator::Cap && width < 2 {
                continue;
            }
            options.push(gen);
        }
        let gen = *options.get(rng.gen_range(0..options.len().max(1)))?;
        let position = match gen {
            Generator::Cup | Generator::Hf => rng.gen_range(1..=width + 1),
            Generator::Cap => rng.gen_range(1..=width - 1),
        };
        slices.push((gen, position));
        width = (width as isize + gen.width_delta()) as usize;
    }
    (width == l).then(|| {
        DiagramWord::new(ObjQ::q(k), ObjQ::q(l), &slices).expect("walk is valid by construction")
    })
}

/// Random valid twisted complex over the diagram base with at most
/// `max_terms` terms. Twist entries come from the graded Hom bases; the
/// candidate is re-drawn until the Maurer-Cartan equation holds.
pub fn random_diag_complex(
    rng: &mut impl Rng,
    max_terms: usize,
) -> TwistedComplex<DiagBase> {
    loop {
        let n = rng.gen_range(1..=max_terms);
        let terms: Vec<Term<usize>> = (0..n)
            .map(|_| Term::new(rng.gen_range(0..=2usize), rng.gen_range(-1..=1i64)))
            .collect();
        let mut twist = BTreeMap::new();
        for i in 0..n {
            for j in i + 1..n {
                if !rng.gen_bool(0.6) {
                    continue;
                }
                let raw = 1 - terms[i].shift + terms[j].shift;
                let basis = DiagBase::hom_basis(terms[i].obj, terms[j].obj, raw);
                if let Some(m) = basis.first() {
                    twist.insert((i, j), m.clone());
                }
            }
        }
        let x = TwistedComplex::<DiagBase>::new(terms, twist);
        if x.validate().is_ok() {
            return x;
        }
    }
}

/// Random valid twisted complex over the projectives.
pub fn random_proj_complex(
    rng: &mut impl Rng,
    max_terms: usize,
) -> TwistedComplex<ProjBase> {
    use crate::algebra_r::Vertex;
    loop {
        let n = rng.gen_range(1..=max_terms);
        let terms: Vec<Term<Vertex>> = (0..n)
            .map(|_| {
                let v = if rng.gen_bool(0.5) { Vertex::X } else { Vertex::Y };
                Term::new(v, rng.gen_range(-1..=1i64))
            })
            .collect();
        let mut twist = BTreeMap::new();
        for i in 0..n {
            for j in i + 1..n {
                if !rng.gen_bool(0.6) {
                    continue;
                }
                let raw = 1 - terms[i].shift + terms[j].shift;
                let basis = ProjBase::hom_basis(terms[i].obj, terms[j].obj, raw);
                if let Some(m) = basis.first() {
                    twist.insert((i, j), *m);
                }
            }
        }
        let x = TwistedComplex::<ProjBase>::new(terms, twist);
        if x.validate().is_ok() {
            return x;
        }
    }
}

/// Random closed degree-0 morphism `x -> y`, or `None` when the draw is not
/// closed (callers re-draw).
pub fn random_closed_map(
    rng: &mut impl Rng,
    x: &TwistedComplex<DiagBase>,
    y: &TwistedComplex<DiagBase>,
) -> Option<TwMorphism<DiagBase>> {
    let mut components = BTreeMap::new();
    for i in 0..x.len() {
        for j in 0..y.len() {
            if !rng.gen_bool(0.5) {
                continue;
            }
            let raw = -x.terms()[i].shift + y.terms()[j].shift;
            let basis = DiagBase::hom_basis(x.terms()[i].obj, y.terms()[j].obj, raw);
            if let Some(m) = basis.first() {
                components.insert((i, j), m.clone());
            }
        }
    }
    let h = TwMorphism::<DiagBase>::new(0, components);
    differential(&h, x, y).is_zero().then_some(h)
}

/// Calls `visit` on every valid word from `Q^k` to `Q^l` with at most
/// `max_len` slices and intermediate width at most `max_width`.
///
/// Prunes branches that cannot return to `l` strands in the remaining steps.
pub fn for_each_word(
    k: usize,
    l: usize,
    max_len: usize,
    max_width: usize,
    visit: &mut impl FnMut(&DiagramWord),
) {
    fn recurse(
        k: usize,
        l: usize,
        max_len: usize,
        max_width: usize,
        width: usize,
        slices: &mut Vec<(Generator, usize)>,
        visit: &mut impl FnMut(&DiagramWord),
    ) {
        if width == l {
            let w = DiagramWord::new(ObjQ::q(k), ObjQ::q(l), slices)
                .expect("enumerated words are valid");
            visit(&w);
        }
        let remaining = max_len - slices.len();
        if remaining == 0 {
            return;
        }
        for gen in [Generator::Cup, Generator::Cap, Generator::Hf] {
            let next = width as isize + gen.width_delta();
            if next < 0 || next as usize > max_width {
                continue;
            }
            // must be able to reach l in the remaining steps
            if (next - l as isize).unsigned_abs() > 2 * (remaining - 1) {
                continue;
            }
            let positions: Vec<usize> = match gen {
                Generator::Cup | Generator::Hf => (1..=width + 1).collect(),
                Generator::Cap => {
                    if width >= 2 {
                        (1..=width - 1).collect()
                    } else {
                        Vec::new()
                    }
                }
            };
            for p in positions {
                slices.push((gen, p));
                recurse(k, l, max_len, max_width, next as usize, slices, visit);
                slices.pop();
            }
        }
    }
    let mut slices = Vec::new();
    recurse(k, l, max_len, max_width, k, &mut slices, visit);
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn relation_instances_are_well_formed() {
        let insts = relation_instances(5);
        assert!(insts.len() > 100);
        for inst in &insts {
            assert_eq!(inst.lhs.source(), inst.rhs.source(), "{}", inst.name);
            assert_eq!(inst.lhs.target(), inst.rhs.target(), "{}", inst.name);
            assert_eq!(inst.lhs.degree(), inst.rhs.degree(), "{}", inst.name);
        }
    }

    #[test]
    fn random_words_respect_bounds() {
        let mut rng = StdRng::seed_from_u64(3);
        for _ in 0..500 {
            let w = random_word(&mut rng, 8, 5);
            assert!(w.slices().len() <= 8);
            assert!(w.source().strands <= 5 && w.target().strands <= 5);
            for s in w.slices() {
                assert!(s.width_in <= 5);
            }
        }
    }

    #[test]
    fn enumeration_counts_match_by_hand() {
        // words of length exactly 1 from Q^2: cup at 3 positions, cap at 1,
        // hf at 3; plus the empty word to Q^2 itself
        let mut count00 = 0;
        for_each_word(2, 0, 1, 6, &mut |_| count00 += 1);
        assert_eq!(count00, 1); // the single cap
        let mut count22 = 0;
        for_each_word(2, 2, 1, 6, &mut |_| count22 += 1);
        assert_eq!(count22, 1); // only the empty word
        let mut count23 = 0;
        for_each_word(2, 3, 1, 6, &mut |_| count23 += 1);
        assert_eq!(count23, 3); // hf at positions 1..=3
    }
}
