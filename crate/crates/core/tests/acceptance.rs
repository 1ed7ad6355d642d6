//! End-to-end acceptance run: one timed line per criterion.

mod oracle;

use std::io::Write;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sharpset::boolean::{is_sheaf, sheafify, verify_inverse_image_preserves_hocartesian, InverseImageOptions};
use sharpset::category::FiniteCategory;
use sharpset::certificate::{certify_weak_equivalence, CertifyOptions};
use sharpset::fixtures::*;
use sharpset::hocolim::filtration::verify_filtration;
use sharpset::hocolim::harness::{verify_horn_gluing, verify_thm_hocolims, HarnessOptions};
use sharpset::hocolim::{hocolim, simplicial_replacement, verify_tilde_pullback_all, SimplicialObject};
use sharpset::limits::verify_distributive_law;
use sharpset::map::{SSet, SimplicialMap};
use sharpset::peculiar::{Ladder, LadderVerdict};
use sharpset::product::product;
use sharpset::random::{random_diagram_map, random_map_into_colimit, random_presheaf, Bounds};
use sharpset::sharp::{is_sharp, SharpOptions, Sharpness};
use sharpset::sset::{CellId, SimplexRef};
use sharpset::standard::*;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn run(id: usize, name: &str, budget: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let t = Instant::now();
    let o = f();
    let elapsed = t.elapsed();
    let in_time = elapsed <= budget;
    let pass = o.ok && in_time;
    // Straight to the handle, past the harness's capture, so a plain
    // `cargo test` shows every line.
    let _ = writeln!(
        std::io::stderr(),
        "criterion {id:>2} {:<4} {name}: {} [{:.2?} / {:?}]{}",
        if pass { "PASS" } else { "FAIL" },
        o.detail,
        elapsed,
        budget,
        if in_time { "" } else { " over budget" }
    );
    pass
}

fn arc(x: sharpset::sset::FiniteSimplicialSet) -> SSet {
    Arc::new(x)
}

fn distributive_law() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut bad = 0;
    for _ in 0..200 {
        let (d, a) = random_map_into_colimit(&mut rng, Bounds::default()).unwrap();
        if !verify_distributive_law(&d, &a).unwrap().holds {
            bad += 1;
        }
    }
    outcome(bad == 0, format!("200 instances, {bad} failures"))
}

fn tilde_pullback() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (mut objects, mut bad) = (0, 0);
    for _ in 0..100 {
        let f = random_diagram_map(&mut rng, Bounds::default()).unwrap();
        for r in verify_tilde_pullback_all(&f).unwrap() {
            objects += 1;
            bad += usize::from(!r.holds);
        }
    }
    outcome(bad == 0, format!("100 maps, {objects} objects, {bad} failures"))
}

fn sharpness() -> Outcome {
    let opts = SharpOptions::default();
    let pairs: Vec<(SSet, SSet)> = vec![
        (arc(circle()), arc(standard_simplex(1))),
        (arc(discrete(2)), arc(standard_simplex(2))),
        (arc(standard_simplex(1)), arc(circle())),
        (arc(sphere(2)), arc(boundary(2))),
        (arc(circle()), arc(circle())),
        (arc(rp2()), arc(standard_simplex(1))),
    ];
    let projections_sharp = pairs
        .iter()
        .all(|(k, b)| is_sharp(&product(k, b).unwrap().right, &opts).unwrap().verdict == Sharpness::Sharp);
    let d1 = arc(standard_simplex(1));
    let v = SimplicialMap::from_fn(arc(point()), d1, |_| SimplexRef::cell(CellId::new(0, 0))).unwrap();
    let vertex_not_sharp = is_sharp(&v, &opts).unwrap().verdict == Sharpness::NotSharp;
    let (d3, d2) = (arc(discrete(3)), arc(discrete(2)));
    let discrete_maps = [
        SimplicialMap::from_fn(d3.clone(), d2.clone(), |c| SimplexRef::cell(CellId::new(0, c.index() % 2))).unwrap(),
        SimplicialMap::from_fn(d2.clone(), d3, |c| SimplexRef::cell(CellId::new(0, c.index()))).unwrap(),
        SimplicialMap::terminal(d2.clone()),
        SimplicialMap::identity(d2),
    ];
    let discrete_sharp = discrete_maps.iter().all(|m| is_sharp(m, &opts).unwrap().verdict == Sharpness::Sharp);
    outcome(
        projections_sharp && vertex_not_sharp && discrete_sharp,
        format!("{} projections sharp: {projections_sharp}; vertex inclusion not sharp: {vertex_not_sharp}; {} discrete maps sharp: {discrete_sharp}", pairs.len(), discrete_maps.len()),
    )
}

fn hocolim_theorem() -> Outcome {
    let k = arc(standard_simplex(1));
    let d2 = arc(standard_simplex(2));
    let fixtures = [
        ("cone span", trivial_bundle(&cone_span(), &k).unwrap()),
        ("skeleta", trivial_bundle(&skeleton_chain(&d2), &k).unwrap()),
        ("proper subsets", trivial_bundle(&triangle_boundary_poset(), &k).unwrap()),
    ];
    let mut failures = Vec::new();
    for (name, f) in &fixtures {
        for part in [1, 2] {
            let r = verify_thm_hocolims(f, part, &HarnessOptions::default()).unwrap();
            if !r.passed() {
                failures.push(format!("{name} part {part}: {:?}", r.outcome));
            }
        }
    }
    outcome(failures.is_empty(), if failures.is_empty() { "3 fixtures, parts 1 and 2".into() } else { failures.join("; ") })
}

fn suspension() -> Outcome {
    let h = hocolim(&suspension_span(), None).unwrap();
    let groups = oracle::homology_strings(&h.object, 2);
    let library: Vec<String> = sharpset::homology::homology(&h.object, 2).iter().map(|g| g.to_string()).collect();
    outcome(groups == ["Z", "0", "Z"] && library == groups, format!("oracle {groups:?}, library {library:?}"))
}

fn corpus_objects() -> Vec<(&'static str, SimplicialObject)> {
    let d2 = arc(standard_simplex(2));
    let mut out = vec![("constant circle", SimplicialObject::constant(arc(circle()), 3))];
    for (name, d) in [
        ("suspension span", suspension_span()),
        ("cone span", cone_span()),
        ("skeleta", skeleton_chain(&d2)),
        ("triangle boundary", triangle_boundary_poset()),
    ] {
        let top = d.shape().nerve_dim().unwrap() + d.max_dim();
        out.push((name, simplicial_replacement(&d, top).unwrap().object));
    }
    out
}

fn filtration() -> Outcome {
    let mut failures = Vec::new();
    let mut squares = 0;
    for (name, x) in corpus_objects() {
        let r = verify_filtration(&x).unwrap();
        squares += r.stages.len();
        if !(r.holds && r.reconstructs && r.stages.iter().all(|s| s.verified)) {
            failures.push(name);
        }
    }
    outcome(failures.is_empty(), format!("{} objects, {squares} stages; failures {failures:?}", corpus_objects().len()))
}

fn sheafification() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut trials, mut bad) = (0, 0);
    for _ in 0..40 {
        let x = random_presheaf(&mut rng, 4).unwrap();
        let l = sheafify(&x).unwrap();
        let ll = sheafify(&l.sheaf).unwrap();
        let sheaf_ok = is_sheaf(&l.sheaf).unwrap().is_sheaf;
        // η is iso exactly on sheaves; L(LX) is LX.
        let unit_ok = is_sheaf(&x).unwrap().is_sheaf == l.unit.is_iso();
        let idem_ok = ll.unit.is_iso();
        trials += 1;
        bad += usize::from(!(sheaf_ok && unit_ok && idem_ok));
    }
    outcome(bad == 0, format!("{trials} presheaves, {bad} failures"))
}

fn inverse_image() -> Outcome {
    let opts = InverseImageOptions::default();
    let mut detail = Vec::new();
    let mut ok = true;
    for (name, shape) in [("arrow", FiniteCategory::chain(2)), ("span", FiniteCategory::span())] {
        let r = verify_inverse_image_preserves_hocartesian(&bundle_restriction_square(Arc::new(shape)).unwrap(), &opts).unwrap();
        ok &= r.passed();
        detail.push(format!("{name}: {:?} ({} conclusions)", r.outcome, r.conclusions.len()));
    }
    outcome(ok, detail.join("; "))
}

fn horn_gluing() -> Outcome {
    let d2 = arc(standard_simplex(2));
    let p = product(&arc(sphere(2)), &d2).unwrap();
    let r = verify_horn_gluing(&p.right, &SimplexRef::cell(CellId::new(2, 0)), 1, &HarnessOptions::default()).unwrap();
    outcome(r.harness.passed() && r.horn_colimit_agrees, format!("{:?}, horn pieces glue: {}", r.harness.outcome, r.horn_colimit_agrees))
}

fn peculiar() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let bad = (0..200).filter(|_| Ladder::random(&mut rng, 5).verify() != LadderVerdict::Holds).count();
    outcome(bad == 0, format!("200 ladders, {bad} failures"))
}

fn soundness() -> Outcome {
    let opts = CertifyOptions::default();
    let (mut refuted, mut unsound) = (0, Vec::new());
    for (name, f) in map_corpus().unwrap() {
        let c = certify_weak_equivalence(&f, &opts).unwrap();
        if c.is_refuted() {
            refuted += 1;
            if !oracle::genuine_mismatch(&f) {
                unsound.push(name);
            }
        }
    }
    outcome(unsound.is_empty() && refuted > 0, format!("{refuted} refutations, unconfirmed {unsound:?}"))
}

#[test]
fn acceptance() {
    let s = Duration::from_secs;
    let results = [
        run(1, "distributive law", s(30), distributive_law),
        run(2, "tilde pullback", s(60), tilde_pullback),
        run(3, "sharpness checker", s(10), sharpness),
        run(4, "hocolim theorem harnesses", s(120), hocolim_theorem),
        run(5, "suspension homology", s(5), suspension),
        run(6, "diagonal filtration", s(30), filtration),
        run(7, "sheafification", s(10), sheafification),
        run(8, "inverse image harness", s(20), inverse_image),
        run(9, "horn gluing", s(5), horn_gluing),
        run(10, "ladder lemma", s(5), peculiar),
        run(11, "refutation soundness", s(60), soundness),
    ];
    let failed: Vec<usize> = results.iter().enumerate().filter(|(_, &ok)| !ok).map(|(i, _)| i + 1).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
