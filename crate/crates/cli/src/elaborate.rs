//! Elaboration of parsed expressions into diagram morphisms.
//!
//! Strand counts are checked here, not at parse time. In strict mode a
//! composition whose strand counts do not chain is an error; otherwise it
//! elaborates to the zero morphism, matching the convention that stacking
//! mismatched diagrams gives zero.

use crate::parser::{Expr, GenKind};
use gausscat_core::diagrams::{Morphism, ObjQ};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ElabError {
    pub message: String,
}

impl fmt::Display for ElabError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "elaboration error: {}", self.message)
    }
}

impl std::error::Error for ElabError {}

fn generator(g: GenKind) -> Morphism {
    match g {
        GenKind::Id(k) => Morphism::identity(ObjQ::q(k)),
        GenKind::Cup => Morphism::cup(),
        GenKind::Cap => Morphism::cap(),
        GenKind::Hf => Morphism::half_strand(),
        GenKind::Hfb => Morphism::half_strand_op(),
        GenKind::Alpha0 => Morphism::alpha0(1),
        GenKind::Alpha1 => Morphism::alpha1(1),
    }
}

/// Turns an expression into a morphism. `strict` rejects strand mismatches
/// in compositions instead of producing the zero morphism.
pub fn elaborate(expr: &Expr, strict: bool) -> Result<Morphism, ElabError> {
    match expr {
        Expr::Gen(g) => Ok(generator(*g)),
        Expr::Seq(lower, upper) => {
            let lo = elaborate(lower, strict)?;
            let up = elaborate(upper, strict)?;
            if strict && lo.target().strands != up.source().strands {
                return Err(ElabError {
                    message: format!(
                        "cannot stack: lower ends on {} strands, upper starts on {}",
                        lo.target().strands,
                        up.source().strands
                    ),
                });
            }
            Ok(up.compose(&lo))
        }
        Expr::Tensor(left, right) => {
            let l = elaborate(left, strict)?;
            let r = elaborate(right, strict)?;
            Ok(l.tensor(&r))
        }
        Expr::Shift(inner, m) => Ok(elaborate(inner, strict)?.shifted(*m)),
        Expr::Sum(terms) => {
            let mut elaborated = Vec::with_capacity(terms.len());
            for t in terms {
                elaborated.push(elaborate(t, strict)?);
            }
            let first = elaborated.first().expect("sums have at least two terms");
            let (src, tgt) = (first.source(), first.target());
            for m in &elaborated {
                if m.source() != src || m.target() != tgt {
                    return Err(ElabError {
                        message: format!(
                            "sum endpoints differ: {:?} -> {:?} vs {:?} -> {:?}",
                            src,
                            tgt,
                            m.source(),
                            m.target()
                        ),
                    });
                }
            }
            let mut acc = Morphism::zero(src, tgt);
            for m in &elaborated {
                acc = acc.add(m);
            }
            Ok(acc)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse;
    use gausscat_core::diagrams::NormalForm;

    fn run(text: &str) -> Morphism {
        elaborate(&parse(text).unwrap(), true).unwrap()
    }

    #[test]
    fn loop_normalizes_to_unit_identity() {
        assert_eq!(run("cup ; cap"), Morphism::identity(ObjQ::unit()));
    }

    #[test]
    fn half_strand_slides() {
        assert_eq!(run("hf * id1"), run("id1 * hf"));
    }

    #[test]
    fn hfb_composite_gives_alpha() {
        assert_eq!(run("hf ; hfb"), Morphism::alpha0(1));
        let nf: Vec<NormalForm> = run("hf ; hfb").terms().collect();
        assert_eq!(nf, vec![NormalForm::new(0, 0, 1)]);
    }

    #[test]
    fn strict_mismatch_is_error() {
        let e = parse("cup ; hf").unwrap();
        assert!(elaborate(&e, true).is_err());
        let z = elaborate(&e, false).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn sums_cancel_over_gf2() {
        let m = run("alpha0 + alpha0");
        assert!(m.is_zero());
    }

    #[test]
    fn sum_endpoint_mismatch_rejected() {
        let e = parse("hf + cup").unwrap();
        assert!(elaborate(&e, true).is_err());
    }

    #[test]
    fn shifts_track_endpoints() {
        let m = run("cup[1]");
        assert_eq!(m.source(), ObjQ::new(0, 1));
        assert_eq!(m.target(), ObjQ::new(2, 1));
        assert_eq!(m.degree(), Some(-1));
    }
}
