//! SVG rendering of normal-form diagrams.
//!
//! Each term of a morphism is drawn as its canonical slice word, read
//! bottom to top: caps and cups as arcs, half strands as dot-terminated
//! segments, pass-through strands as straight lines between bands. Terms
//! of a sum are laid out side by side with plus signs. The output is plain
//! SVG 1.1 with no interaction.

use gausscat_core::diagrams::{Generator, Morphism, NormalForm};
use std::fmt::Write as _;

const UNIT: f64 = 36.0;
const BAND: f64 = 40.0;
const PAD: f64 = 24.0;

struct TermLayout {
    width: f64,
    height: f64,
    body: String,
}

fn x_of(pos: usize) -> f64 {
    PAD + pos as f64 * UNIT
}

fn painter(body: &mut String, d: &str) {
    let _ = writeln!(body, r#"<path d="{d}" />"#);
}

fn render_term(nf: &NormalForm, x_offset: f64) -> TermLayout {
    let word = nf.canonical_word();
    let bands = word.slices().len().max(1);
    let height = bands as f64 * BAND + 2.0 * PAD;
    let mut max_width = word.source().strands.max(word.target().strands);
    let mut body = String::new();

    if word.slices().is_empty() {
        // identity: straight strands through the single band
        for i in 1..=word.source().strands {
            let x = x_offset + x_of(i);
            painter(&mut body, &format!("M {x} {} L {x} {}", height - PAD, PAD));
        }
    }
    let mut y_bot = height - PAD;
    for slice in word.slices() {
        let y_top = y_bot - BAND;
        let y_mid = (y_bot + y_top) / 2.0;
        let w_in = slice.width_in;
        let p = slice.position;
        let w_out = (w_in as isize + slice.generator.width_delta()) as usize;
        max_width = max_width.max(w_out);
        // pass-through strands
        for j in 1..=w_out {
            let source = match slice.generator {
                Generator::Cup => {
                    if j < p {
                        Some(j)
                    } else if j <= p + 1 {
                        None
                    } else {
                        Some(j - 2)
                    }
                }
                Generator::Hf => {
                    if j < p {
                        Some(j)
                    } else if j == p {
                        None
                    } else {
                        Some(j - 1)
                    }
                }
                Generator::Cap => Some(if j < p { j } else { j + 2 }),
            };
            if let Some(i) = source {
                let xa = x_offset + x_of(i);
                let xb = x_offset + x_of(j);
                painter(&mut body, &format!("M {xa} {y_bot} L {xb} {y_top}"));
            }
        }
        match slice.generator {
            Generator::Cup => {
                let (xa, xb) = (x_offset + x_of(p), x_offset + x_of(p + 1));
                painter(&mut body, &format!("M {xa} {y_top} Q {} {y_bot} {xb} {y_top}", (xa + xb) / 2.0));
            }
            Generator::Cap => {
                let (xa, xb) = (x_offset + x_of(p), x_offset + x_of(p + 1));
                painter(&mut body, &format!("M {xa} {y_bot} Q {} {y_top} {xb} {y_bot}", (xa + xb) / 2.0));
            }
            Generator::Hf => {
                let x = x_offset + x_of(p);
                painter(&mut body, &format!("M {x} {y_mid} L {x} {y_top}"));
                let _ = writeln!(body, r#"<circle cx="{x}" cy="{y_mid}" r="3.5" class="end" />"#);
            }
        }
        y_bot = y_top;
    }
    let width = (max_width + 1) as f64 * UNIT + PAD;
    TermLayout { width, height, body }
}

/// Renders a morphism to a complete SVG document.
pub fn render_svg(m: &Morphism) -> String {
    let terms: Vec<NormalForm> = m.terms().collect();
    let mut layouts = Vec::new();
    let mut x = 0.0;
    let mut body = String::new();
    let mut height: f64 = 2.0 * PAD + BAND;
    for (idx, nf) in terms.iter().enumerate() {
        if idx > 0 {
            body.push_str(&format!(
                r#"<text x="{}" y="{}" class="op">+</text>"#,
                x + 8.0,
                height / 2.0
            ));
            body.push('\n');
            x += 28.0;
        }
        let layout = render_term(nf, x);
        x += layout.width;
        height = height.max(layout.height);
        layouts.push(layout);
    }
    if terms.is_empty() {
        body.push_str(&format!(
            r#"<text x="{}" y="{}" class="op">0</text>"#,
            PAD,
            PAD + BAND / 2.0
        ));
        x = 2.0 * PAD + 20.0;
    }
    for l in &layouts {
        body.push_str(&l.body);
    }
    let width = x.max(2.0 * PAD + UNIT);
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    out.push_str(
        "<style>path { fill: none; stroke: #1f2430; stroke-width: 2; } \
         .end { fill: #1f2430; } text.op { font-family: serif; font-size: 20px; }</style>\n",
    );
    out.push_str(&body);
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use gausscat_core::diagrams::Morphism;

    #[test]
    fn elementary_diagrams_render() {
        for m in [
            Morphism::identity(gausscat_core::diagrams::ObjQ::q(1)),
            Morphism::cup(),
            Morphism::cap(),
            Morphism::half_strand(),
            Morphism::alpha0(1),
        ] {
            let svg = render_svg(&m);
            assert!(svg.starts_with("<?xml"));
            assert!(svg.contains("<svg"));
            assert!(svg.ends_with("</svg>\n"));
        }
    }

    #[test]
    fn zero_renders_as_zero() {
        let z = Morphism::zero(
            gausscat_core::diagrams::ObjQ::unit(),
            gausscat_core::diagrams::ObjQ::unit(),
        );
        assert!(render_svg(&z).contains(">0</text>"));
    }

    #[test]
    fn sums_get_plus_signs() {
        let m = Morphism::alpha0(1).add(&Morphism::alpha0(2));
        assert!(render_svg(&m).contains(">+</text>"));
    }
}
