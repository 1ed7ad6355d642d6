//! The files under `fixtures/` are generated from the library's own
//! constructions. Set `SHARPSET_BLESS=1` to rewrite them.

use std::path::PathBuf;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sharpset::boolean::Presheaf;
use sharpset::category::FiniteCategory;
use sharpset::fixtures::*;
use sharpset::map::SimplicialMap;
use sharpset::peculiar::Ladder;
use sharpset::product::product;
use sharpset::standard::{circle, point, sphere, standard_simplex};
use sharpset::sset::DEFAULT_DIM_CAP;
use sharpset::SSet;
use sharpset_cli::io::*;

fn arc(x: sharpset::FiniteSimplicialSet) -> SSet {
    Arc::new(x)
}

fn corpus_map(name: &str) -> SimplicialMap {
    map_corpus().unwrap().into_iter().find(|(n, _)| n == name).unwrap().1
}

fn fixtures() -> Vec<(&'static str, String)> {
    let d1 = arc(standard_simplex(1));
    let d2 = arc(standard_simplex(2));
    let s1 = arc(circle());
    let chain = Arc::new(FiniteCategory::chain(2));
    let bundle = bundle_restriction_square(chain.clone()).unwrap();
    let fiber = bundle.at(0).unwrap();
    let as_edge = |f: &SimplicialMap| EdgeRecord::Map(map_to_record(f));
    vec![
        ("circle.sset", to_json(&sset_to_record(&s1))),
        ("sphere.sset", to_json(&sset_to_record(&sphere(2)))),
        ("triangle.sset", to_json(&sset_to_record(&d2))),
        ("vertex-inclusion.smap", to_json(&map_to_record(&corpus_map("vertex-into-edge")))),
        ("double-cover.smap", to_json(&map_to_record(&corpus_map("double-cover")))),
        ("edge-projection.smap", to_json(&map_to_record(&corpus_map("edge-projection")))),
        ("horn-inclusion.smap", to_json(&map_to_record(&corpus_map("horn-1-inclusion")))),
        ("sphere-bundle.smap", to_json(&map_to_record(&product(&arc(sphere(2)), &d2).unwrap().right))),
        ("span.diag", to_json(&diagram_to_record(&suspension_span()))),
        ("cone-span.diag", to_json(&diagram_to_record(&cone_span()))),
        ("skeleta.diag", to_json(&diagram_to_record(&skeleton_chain(&d2)))),
        ("cone-span-leg.smap", to_json(&map_to_record(&sharpset::limits::colimit(&cone_span()).unwrap().cocone[1]))),
        ("proj.dmap", to_json(&diagram_map_to_record(&trivial_bundle(&cone_span(), &d1).unwrap()))),
        ("proj-chain.dmap", to_json(&diagram_map_to_record(&trivial_bundle(&skeleton_chain(&d2), &d1).unwrap()))),
        ("proj-subsets.dmap", to_json(&diagram_map_to_record(&trivial_bundle(&triangle_boundary_poset(), &d1).unwrap()))),
        (
            "bundle-fiber.square",
            to_json(&SquareRecord { px: as_edge(&fiber.px), py: as_edge(&fiber.py), f: as_edge(&fiber.f), g: as_edge(&fiber.g) }),
        ),
        (
            "bundle-arrow.square",
            to_json(&SquareRecord {
                px: EdgeRecord::Diagram(diagram_map_to_record(&bundle.px)),
                py: EdgeRecord::Diagram(diagram_map_to_record(&bundle.py)),
                f: EdgeRecord::Diagram(diagram_map_to_record(&bundle.f)),
                g: EdgeRecord::Diagram(diagram_map_to_record(&bundle.g)),
            }),
        ),
        (
            "atoms.bpsh",
            to_json(&presheaf_to_record(&Presheaf::atom_family(&[s1.clone(), arc(point())]).unwrap(), &["a".into(), "b".into()])),
        ),
        (
            "constant-circle.bpsh",
            to_json(&presheaf_to_record(
                &Presheaf::constant(sharpset::boolean::BooleanAlgebra::new(2).unwrap(), &s1).unwrap(),
                &["a".into(), "b".into()],
            )),
        ),
        ("ladder.json", to_json(&Ladder::random(&mut ChaCha8Rng::seed_from_u64(3), 4))),
    ]
}

fn dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

#[test]
fn fixture_files_are_current() {
    let bless = std::env::var_os("SHARPSET_BLESS").is_some();
    for (name, text) in fixtures() {
        let path = dir().join(name);
        if bless {
            std::fs::write(&path, format!("{text}\n")).unwrap();
        }
        let on_disk = std::fs::read_to_string(&path).unwrap();
        assert_eq!(on_disk.trim_end(), text, "{name} is stale; rerun with SHARPSET_BLESS=1");
    }
}

#[test]
fn fixture_files_parse_back_to_themselves() {
    let cap = DEFAULT_DIM_CAP;
    for (name, text) in fixtures() {
        let path = dir().join(name);
        let again = match path.extension().unwrap().to_str().unwrap() {
            "sset" => to_json(&sset_to_record(&sset_from_record(&read_json(&path).unwrap().0, cap).unwrap())),
            "smap" => to_json(&map_to_record(&map_from_record(&read_json(&path).unwrap().0, cap).unwrap())),
            "diag" => to_json(&diagram_to_record(&diagram_from_record(&read_json(&path).unwrap().0, cap).unwrap())),
            "dmap" => to_json(&diagram_map_to_record(&diagram_map_from_record(&read_json(&path).unwrap().0, cap).unwrap())),
            "bpsh" => {
                let r: PresheafRecord = read_json(&path).unwrap().0;
                to_json(&presheaf_to_record(&presheaf_from_record(&r, cap).unwrap(), &r.atoms))
            }
            _ => continue,
        };
        assert_eq!(again, text, "{name}");
    }
}
