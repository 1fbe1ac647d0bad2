//! Human-readable names and reconstructible expressions for normal forms.

use gausscat_core::diagrams::NormalForm;

/// Compact display name: cap/cup towers, the parity core, and alpha powers
/// written with a caret (display only; see [`expression`] for parseable
/// output).
pub fn short_name(nf: &NormalForm) -> String {
    let (k, l, n) = (nf.source_strands, nf.target_strands, nf.alpha);
    let mut parts: Vec<String> = Vec::new();
    let mut width = k;
    for _ in 0..k / 2 {
        parts.push(if width > 2 { format!("cap * id{}", width - 2) } else { "cap".into() });
        width -= 2;
    }
    if k % 2 == 1 && l % 2 == 0 {
        parts.push("hfb".into());
        width = 0;
    }
    if n > 0 {
        let alpha = if width == 1 { "alpha1" } else { "alpha0" };
        parts.push(if n == 1 { alpha.to_string() } else { format!("{alpha}^{n}") });
    }
    if k % 2 == 0 && l % 2 == 1 {
        parts.push("hf".into());
        width = 1;
    }
    for _ in 0..l / 2 {
        parts.push(if width > 0 { format!("cup * id{width}") } else { "cup".into() });
        width += 2;
    }
    if parts.is_empty() {
        format!("id{k}")
    } else {
        parts.join(" ; ")
    }
}

/// An expression in the surface language that elaborates back to the form.
pub fn expression(nf: &NormalForm) -> String {
    let (k, l, n) = (nf.source_strands, nf.target_strands, nf.alpha);
    let mut parts: Vec<String> = Vec::new();
    let mut width = k;
    for _ in 0..k / 2 {
        parts.push(if width > 2 { format!("cap * id{}", width - 2) } else { "cap".into() });
        width -= 2;
    }
    if k % 2 == 1 && l % 2 == 0 {
        parts.push("hfb".into());
        width = 0;
    }
    for _ in 0..n {
        parts.push(if width == 1 { "alpha1".into() } else { "alpha0".into() });
    }
    if k % 2 == 0 && l % 2 == 1 {
        parts.push("hf".into());
        width = 1;
    }
    for _ in 0..l / 2 {
        parts.push(if width > 0 { format!("cup * id{width}") } else { "cup".into() });
        width += 2;
    }
    if parts.is_empty() {
        format!("id{k}")
    } else {
        parts.join(" ; ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elaborate::elaborate;
    use crate::parser::parse;
    use gausscat_core::diagrams::{Morphism, ObjQ};

    #[test]
    fn names_of_small_forms() {
        assert_eq!(short_name(&NormalForm::new(0, 0, 2)), "alpha0^2");
        assert_eq!(short_name(&NormalForm::new(0, 0, 0)), "id0");
        assert_eq!(short_name(&NormalForm::new(2, 0, 0)), "cap");
        assert_eq!(short_name(&NormalForm::new(0, 1, 0)), "hf");
        assert_eq!(short_name(&NormalForm::new(1, 0, 0)), "hfb");
        assert_eq!(short_name(&NormalForm::new(1, 1, 3)), "alpha1^3");
        assert_eq!(short_name(&NormalForm::new(4, 0, 0)), "cap * id2 ; cap");
    }

    #[test]
    fn expressions_elaborate_back() {
        for k in 0..=4usize {
            for l in 0..=4usize {
                for n in 0..=2u32 {
                    let nf = NormalForm::new(k, l, n);
                    let text = expression(&nf);
                    let expr = parse(&text).unwrap_or_else(|e| panic!("{text:?}: {e}"));
                    let m = elaborate(&expr, true).unwrap_or_else(|e| panic!("{text:?}: {e}"));
                    let expect = Morphism::from_normal_form(ObjQ::q(k), ObjQ::q(l), nf);
                    assert_eq!(m, expect, "{text:?}");
                }
            }
        }
    }
}
