//! The deterministic verification suite.
//!
//! Re-proves the structural identities of the whole construction by exact
//! computation: the diagram relations and confluence of the rewriting
//! system, the algebra axioms, the bimodule identities behind the functor,
//! and the Grothendieck-group computations. All randomness is seeded, so
//! two runs produce byte-identical reports.

use crate::bimodules::{
    bimodule_m, eta_q, gauss_ring_check, regular_bimodule, tensor_bimodule_module, tensor_over_r,
    verify_relations, TensorTower,
};
use crate::corpus;
use crate::diagrams::{self, hom_basis, normalize, normalize_word_with_order, Morphism, NormalForm, ObjQ};
use crate::json::{Report, ReportEntry};
use crate::modules_r::{dim_vector_class, find_isomorphism, hom_space, projective};
use crate::twisted::{cone, gauss_class, DgBase, DiagBase, GaussClass, TwMorphism, TwistedComplex};
use crate::algebra_r::{path_product, graded_dimension, PathElement, Vertex, PATHS};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::collections::BTreeMap;

const CONFLUENCE_WORDS: usize = 1000;
const FUNCTORIALITY_WORDS: usize = 200;
const COMPAT_COMPLEXES: usize = 100;

fn entry(check: &str, ok: bool, witness: Option<String>) -> ReportEntry {
    ReportEntry {
        check: check.to_string(),
        status: if ok { "ok" } else { "fail" }.to_string(),
        witness,
    }
}

/// Canonical-word length of a normal form; bounds which Hom classes are
/// reachable by words of a given length.
fn canonical_length(k: usize, l: usize, n: u32) -> usize {
    let mut len = k / 2 + l / 2 + 3 * n as usize;
    if k % 2 == 1 && l % 2 == 0 {
        len += 2;
    }
    if k % 2 == 0 && l % 2 == 1 {
        len += 1;
    }
    len
}

/// Diagram suite: relation soundness, confluence fuzz, the key isomorphism
/// and the Hom-basis dimensions against enumeration.
pub fn diagrams_suite() -> Report {
    let mut checks = Vec::new();

    // every defining relation instance normalizes equally
    let mut bad = None;
    let instances = corpus::relation_instances(5);
    let total = instances.len();
    for inst in instances {
        if normalize(&inst.lhs) != normalize(&inst.rhs) {
            bad = Some(format!("{} at source {:?}", inst.name, inst.lhs.source()));
            break;
        }
    }
    checks.push(entry(
        &format!("relation instances up to width 5 normalize equally ({total} instances)"),
        bad.is_none(),
        bad,
    ));

    // order-independence of rewriting on random words
    let mut rng = StdRng::seed_from_u64(0xC0FFEE);
    let mut bad = None;
    for _ in 0..CONFLUENCE_WORDS {
        let w = corpus::random_word(&mut rng, 8, 5);
        let reference = diagrams::normalize_word(&w);
        if reference.degree() != w.degree() {
            bad = Some(format!("degree not preserved on {w:?}"));
            break;
        }
        for seed in 0..2u64 {
            let mut order = StdRng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9).wrapping_add(7));
            let nf = normalize_word_with_order(&w, |n| order.gen_range(0..n));
            if nf != reference {
                bad = Some(format!("order-dependent result on {w:?}"));
                break;
            }
        }
        if bad.is_some() {
            break;
        }
    }
    checks.push(entry(
        &format!("confluence fuzz on {CONFLUENCE_WORDS} random words (length <= 8, width <= 5)"),
        bad.is_none(),
        bad,
    ));

    // cup and cap are mutually inverse up to shift
    let loop_ok = Morphism::cap().compose(&Morphism::cup()) == Morphism::identity(ObjQ::unit());
    let wall_ok = Morphism::cup().compose(&Morphism::cap()) == Morphism::identity(ObjQ::q(2));
    checks.push(entry("cap . cup = id and cup . cap = id (key isomorphism)", loop_ok && wall_ok, None));

    // zigzag identities: the bi-adjointness witness
    let z1 = diagrams::DiagramWord::new(ObjQ::q(1), ObjQ::q(1), &[(diagrams::Generator::Cup, 2), (diagrams::Generator::Cap, 1)]).unwrap();
    let z2 = diagrams::DiagramWord::new(ObjQ::q(1), ObjQ::q(1), &[(diagrams::Generator::Cup, 1), (diagrams::Generator::Cap, 2)]).unwrap();
    let ok = normalize(&z1) == Morphism::identity(ObjQ::q(1))
        && normalize(&z2) == Morphism::identity(ObjQ::q(1));
    checks.push(entry("zigzags normalize to the identity (bi-adjointness witness)", ok, None));

    // Hom bases: every word lands on the unique normal form of its degree;
    // every class reachable within the length bound is realized
    checks.push(hom_bases_check(4, 4, 8, 200, 0xBA5E));

    Report { suite: "diagrams".to_string(), checks }
}

/// Cross-checks normalized spans against the Hom-basis dimensions for all
/// `k, l <= k_max`: exhaustive enumeration up to `exhaustive_len`, seeded
/// samples up to `sample_len`, plus the canonical word of every reachable
/// class. Each degree bucket must contain exactly the predicted form.
pub fn hom_bases_check(
    k_max: usize,
    exhaustive_len: usize,
    sample_len: usize,
    samples_per_len: usize,
    seed: u64,
) -> ReportEntry {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut witness = None;
    'outer: for k in 0..=k_max {
        for l in 0..=k_max {
            let mut buckets: BTreeMap<i64, std::collections::BTreeSet<NormalForm>> =
                BTreeMap::new();
            let collect = |w: &diagrams::DiagramWord,
                               buckets: &mut BTreeMap<i64, std::collections::BTreeSet<NormalForm>>| {
                let nf = diagrams::normalize_word(w);
                buckets.entry(w.degree()).or_default().insert(nf);
            };
            corpus::for_each_word(k, l, exhaustive_len.min(4), 6, &mut |w| {
                collect(w, &mut buckets);
            });
            // longer words, sampled
            for len in exhaustive_len.min(4) + 1..=sample_len {
                for _ in 0..samples_per_len {
                    if let Some(w) = corpus::random_word_between(&mut rng, k, l, len, 6) {
                        collect(&w, &mut buckets);
                    }
                }
            }
            // canonical words of every class reachable within the bound
            for d in -3..=6i64 {
                for nf in hom_basis(k, l, d) {
                    if canonical_length(k, l, nf.alpha) <= sample_len {
                        collect(&nf.canonical_word(), &mut buckets);
                    }
                }
            }
            for (d, nfs) in &buckets {
                let expect = hom_basis(k, l, *d);
                if expect.is_empty() {
                    witness = Some(format!(
                        "words exist in Hom^{d}(Q^{k}, Q^{l}) but the basis is empty"
                    ));
                    break 'outer;
                }
                if nfs.len() != 1 || !nfs.contains(&expect[0]) {
                    witness = Some(format!(
                        "Hom^{d}(Q^{k}, Q^{l}): span {:?} vs basis {:?}",
                        nfs, expect
                    ));
                    break 'outer;
                }
            }
            // every reachable admissible class was realized
            for d in -3..=6i64 {
                for nf in hom_basis(k, l, d) {
                    if canonical_length(k, l, nf.alpha) <= sample_len
                        && !buckets.get(&d).is_some_and(|s| s.contains(&nf))
                    {
                        witness = Some(format!("class {nf:?} unrealized in degree {d}"));
                        break 'outer;
                    }
                }
            }
        }
    }
    entry(
        "normalized spans match Hom-basis dimensions (k, l <= 4, degrees -3..6)",
        witness.is_none(),
        witness,
    )
}

/// Twisted-complex suite: differentials square to zero, cones validate and
/// the cone of the identity is contractible with an explicit witness.
pub fn twisted_suite() -> Report {
    let mut checks = Vec::new();
    let mut rng = StdRng::seed_from_u64(0x7157ED);

    let mut bad = None;
    for _ in 0..200 {
        let x = corpus::random_diag_complex(&mut rng, 3);
        let y = corpus::random_diag_complex(&mut rng, 3);
        if x.validate().is_err() || y.validate().is_err() {
            bad = Some("generator produced an invalid complex".to_string());
            break;
        }
        // all single-component basis morphisms of small degree
        for i in 0..x.len() {
            for j in 0..y.len() {
                for raw in -2..=2i64 {
                    for b in
                        DiagBase::hom_basis(x.terms()[i].obj, y.terms()[j].obj, raw)
                    {
                        let mut comps = BTreeMap::new();
                        comps.insert((i, j), b);
                        let deg = raw + x.terms()[i].shift - y.terms()[j].shift;
                        let h = TwMorphism::new(deg, comps);
                        let dd = crate::twisted::differential(
                            &crate::twisted::differential(&h, &x, &y),
                            &x,
                            &y,
                        );
                        if !dd.is_zero() {
                            bad = Some(format!("d^2 != 0 at ({i},{j}) raw {raw}"));
                        }
                    }
                }
            }
        }
        if bad.is_some() {
            break;
        }
    }
    checks.push(entry("d^2 = 0 on a corpus of twisted complexes (<= 3 terms)", bad.is_none(), bad));

    // cones of closed degree-0 morphisms validate
    let mut rng2 = StdRng::seed_from_u64(0xC04E);
    let mut bad = None;
    let mut built = 0;
    while built < 100 {
        let x = corpus::random_diag_complex(&mut rng2, 2);
        let y = corpus::random_diag_complex(&mut rng2, 2);
        let Some(h) = corpus::random_closed_map(&mut rng2, &x, &y) else { continue };
        built += 1;
        match cone(&h, &x, &y) {
            Ok(c) => {
                if c.validate().is_err() {
                    bad = Some("cone failed validation".to_string());
                    break;
                }
                let expect = gauss_class(&y) - gauss_class(&x);
                if gauss_class(&c) != expect {
                    bad = Some("gauss class not additive on cone".to_string());
                    break;
                }
            }
            Err(e) => {
                bad = Some(format!("cone construction failed: {e}"));
                break;
            }
        }
    }
    checks.push(entry(
        "cones of closed degree-0 maps validate; classes subtract",
        bad.is_none(),
        bad,
    ));

    // contractibility of the cone of the identity, with explicit witness
    let unit = TwistedComplex::<DiagBase>::single(0usize, 0);
    let c = cone(&TwMorphism::identity(&unit), &unit, &unit).expect("cone of identity");
    let witness = crate::twisted::are_homotopic(
        &TwMorphism::identity(&c),
        &TwMorphism::zero(0),
        &c,
        &c,
    );
    let ok = match &witness {
        Some(s) => crate::twisted::differential(s, &c, &c) == TwMorphism::identity(&c),
        None => false,
    };
    checks.push(entry("cone(id) is contractible via an explicit homotopy", ok, None));

    Report { suite: "twisted".to_string(), checks }
}

/// Algebra suite: the multiplication table, unit, grading and the
/// projective modules.
pub fn algebra_suite() -> Report {
    let mut checks = Vec::new();

    let mut ok = true;
    for p in PATHS {
        for q in PATHS {
            for r in PATHS {
                let lhs = PathElement::path(p)
                    .multiply(PathElement::path(q))
                    .multiply(PathElement::path(r));
                let rhs = PathElement::path(p)
                    .multiply(PathElement::path(q).multiply(PathElement::path(r)));
                ok &= lhs == rhs;
            }
        }
    }
    checks.push(entry("associativity over all 216 basis triples", ok, None));

    let one = PathElement::one();
    let ok = PATHS
        .iter()
        .all(|&p| one.multiply(PathElement::path(p)) == PathElement::path(p)
            && PathElement::path(p).multiply(one) == PathElement::path(p));
    checks.push(entry("e_x + e_y is the unit", ok, None));

    checks.push(entry(
        "graded dimension is {0: 3, 1: 3}",
        graded_dimension() == vec![(0, 3), (1, 3)],
        None,
    ));

    let px = projective(Vertex::X, 0);
    let py = projective(Vertex::Y, 0);
    checks.push(entry(
        "dimension vectors of the projectives are (2,1) and (1,2)",
        px.dim_by_vertex() == (2, 1) && py.dim_by_vertex() == (1, 2),
        None,
    ));

    // action matrices factor through the relations (re-verified explicitly)
    let mut ok = true;
    for module in [&px, &py] {
        for p in PATHS {
            for q in PATHS {
                let lhs = module.path_action(p).mul(&module.path_action(q));
                let rhs = match path_product(p, q) {
                    Some(r) => module.path_action(r),
                    None => crate::gf2::Gf2Matrix::zeros(module.dim(), module.dim()),
                };
                ok &= lhs == rhs;
            }
        }
    }
    checks.push(entry("projective actions satisfy every relation", ok, None));

    // Hom spaces between projectives match the algebra's graded pieces
    let expect = [
        ((Vertex::X, Vertex::X, 0), 1),
        ((Vertex::X, Vertex::X, 1), 1),
        ((Vertex::X, Vertex::Y, 0), 1),
        ((Vertex::Y, Vertex::X, 0), 0),
        ((Vertex::Y, Vertex::X, 1), 1),
        ((Vertex::Y, Vertex::Y, 1), 1),
    ];
    let ok = expect.iter().all(|&((v, w, d), n)| {
        hom_space(&projective(v, 0), &projective(w, 0), d).len() == n
    });
    checks.push(entry("module Hom spaces match e(v) R e(w)", ok, None));

    Report { suite: "algebra".to_string(), checks }
}

/// Bimodule suite: the twisting bimodule's axioms, the tensor
/// identifications and the functor's relation checks.
pub fn bimodules_suite(tower: &TensorTower) -> Report {
    let mut checks = Vec::new();

    // construction re-checks the axioms; make the check visible
    let m = bimodule_m();
    checks.push(entry("M satisfies the full bimodule axiom check", m.dim() == 6, None));

    let unit_tensor = tensor_over_r(&regular_bimodule(), &m);
    checks.push(entry("R (x) M has dimension 6", unit_tensor.module.dim() == 6, None));

    let px = projective(Vertex::X, 0);
    let py = projective(Vertex::Y, 0);
    let mp_x = tensor_bimodule_module(&m, &px);
    let iso1 = find_isomorphism(&mp_x.module, &py);
    checks.push(entry("M (x) P(x) is isomorphic to P(y)", iso1.is_some(), None));
    let mp_y = tensor_bimodule_module(&m, &py);
    let iso2 = find_isomorphism(&mp_y.module, &projective(Vertex::X, 1));
    checks.push(entry("M (x) P(y) is isomorphic to P(x)[1]", iso2.is_some(), None));

    let mm = tensor_over_r(&m, &m);
    let ok = mm.module.graded_dimension() == regular_bimodule().shifted(1).graded_dimension();
    checks.push(entry("M (x) M has the graded dimension of R[1]", ok, None));

    for r in verify_relations(tower, FUNCTORIALITY_WORDS, 0xF0CA1) {
        checks.push(entry(&r.name, r.ok, r.witness));
    }

    Report { suite: "bimodules".to_string(), checks }
}

/// Grothendieck-group suite: the rotation matrix, its square, and the
/// compatibility between the module action and the diagram classes.
pub fn k0_suite(tower: &TensorTower) -> Report {
    let mut checks = Vec::new();

    let (square_ok, matrix) = gauss_ring_check(tower);
    checks.push(entry(
        &format!(
            "action matrix is [[{}, {}], [{}, {}]]",
            matrix[0][0], matrix[0][1], matrix[1][0], matrix[1][1]
        ),
        matrix == [[0, -1], [1, 0]],
        None,
    ));
    checks.push(entry("square = -I: ok", square_ok, None));

    // multiplicativity of the Euler class under tensor
    let mut rng = StdRng::seed_from_u64(0x6A055);
    let mut bad = None;
    for _ in 0..200 {
        let x = corpus::random_diag_complex(&mut rng, 3);
        let y = corpus::random_diag_complex(&mut rng, 3);
        let t = x.tensor(&y);
        if t.validate().is_err() {
            bad = Some("tensor of valid complexes failed validation".to_string());
            break;
        }
        if gauss_class(&t) != gauss_class(&x) * gauss_class(&y) {
            bad = Some(format!("multiplicativity fails: {:?} x {:?}", x.terms(), y.terms()));
            break;
        }
    }
    checks.push(entry("gauss class is multiplicative under tensor", bad.is_none(), bad));

    // additivity under cones
    let mut rng = StdRng::seed_from_u64(0xADD17);
    let mut bad = None;
    let mut built = 0;
    while built < 100 {
        let x = corpus::random_diag_complex(&mut rng, 2);
        let y = corpus::random_diag_complex(&mut rng, 2);
        let Some(h) = corpus::random_closed_map(&mut rng, &x, &y) else { continue };
        built += 1;
        let c = match cone(&h, &x, &y) {
            Ok(c) => c,
            Err(e) => {
                bad = Some(format!("cone failed: {e}"));
                break;
            }
        };
        if gauss_class(&c) != gauss_class(&y) - gauss_class(&x) {
            bad = Some("additivity fails".to_string());
            break;
        }
    }
    checks.push(entry("gauss class is additive under cones", bad.is_none(), bad));

    // the compatibility square between the action and the classes
    let mut rng = StdRng::seed_from_u64(0x50A4E);
    let mut bad = None;
    for _ in 0..COMPAT_COMPLEXES {
        let x = corpus::random_proj_complex(&mut rng, 3);
        let image = match eta_q(tower, &x) {
            Ok(im) => im,
            Err(e) => {
                bad = Some(format!("action failed: {e}"));
                break;
            }
        };
        if image.validate().is_err() {
            bad = Some("action output failed validation".to_string());
            break;
        }
        let before = dim_vector_class(&x);
        let after = dim_vector_class(&image);
        let matrix = k0_rotation();
        let expect = crate::modules_r::DimVector::new(
            matrix[0][0] * before.x + matrix[0][1] * before.y,
            matrix[1][0] * before.x + matrix[1][1] * before.y,
        );
        if after != expect {
            bad = Some(format!("square fails on {:?}", x.terms()));
            break;
        }
    }
    checks.push(entry(
        &format!("class of the action agrees with the matrix on {COMPAT_COMPLEXES} random complexes"),
        bad.is_none(),
        bad,
    ));

    // the decategorified generator squares to -1
    let q = TwistedComplex::<DiagBase>::single(1usize, 0);
    let ok = gauss_class(&q.tensor(&q)) == GaussClass::new(-1, 0);
    checks.push(entry("the generator's class squares to -1", ok, None));

    Report { suite: "k0".to_string(), checks }
}

fn k0_rotation() -> [[i64; 2]; 2] {
    [[0, -1], [1, 0]]
}

/// Runs one suite by name; `None` if the name is unknown.
pub fn run_suite(name: &str, tower: &TensorTower) -> Option<Report> {
    match name {
        "diagrams" => Some(diagrams_suite()),
        "twisted" => Some(twisted_suite()),
        "algebra" => Some(algebra_suite()),
        "bimodules" => Some(bimodules_suite(tower)),
        "k0" => Some(k0_suite(tower)),
        _ => None,
    }
}

pub const SUITES: [&str; 5] = ["diagrams", "twisted", "algebra", "bimodules", "k0"];

/// Runs every suite in order.
pub fn run_all(tower: &TensorTower) -> Vec<Report> {
    SUITES.iter().map(|s| run_suite(s, tower).expect("known suite")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_suites_pass() {
        let tower = TensorTower::new(4);
        for report in run_all(&tower) {
            for check in &report.checks {
                assert_eq!(check.status, "ok", "{}::{} {:?}", report.suite, check.check, check.witness);
            }
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let tower = TensorTower::new(4);
        let a = serde_json::to_string(&run_all(&tower)).unwrap();
        let b = serde_json::to_string(&run_all(&tower)).unwrap();
        assert_eq!(a, b);
    }
}
