//! The library's homology, components and certificates against the
//! reference computations in `oracle`.

mod oracle;

use std::sync::Arc;

use sharpset::certificate::{certify_weak_equivalence, CertifyOptions};
use sharpset::fixtures::{double_cover, map_corpus};
use sharpset::homology::{components, homology};
use sharpset::map::SSet;
use sharpset::product::product;
use sharpset::standard::*;

fn spaces() -> Vec<(&'static str, SSet)> {
    let s1: SSet = Arc::new(circle());
    vec![
        ("point", Arc::new(point())),
        ("three points", Arc::new(discrete(3))),
        ("triangle", Arc::new(standard_simplex(2))),
        ("triangle boundary", Arc::new(boundary(2))),
        ("tetrahedron boundary", Arc::new(boundary(3))),
        ("circle", s1.clone()),
        ("two-sphere", Arc::new(sphere(2))),
        ("projective plane", Arc::new(rp2())),
        ("torus", product(&s1, &s1).unwrap().object),
        ("cone on circle", Arc::new(cone(&s1))),
    ]
}

#[test]
fn known_groups() {
    let expect: &[(&str, &[&str])] = &[
        ("point", &["Z", "0"]),
        ("three points", &["Z^3", "0"]),
        ("triangle boundary", &["Z", "Z", "0"]),
        ("tetrahedron boundary", &["Z", "0", "Z", "0"]),
        ("projective plane", &["Z", "Z/2", "0"]),
        ("torus", &["Z", "Z^2", "Z", "0"]),
    ];
    let all = spaces();
    for (name, groups) in expect {
        let x = &all.iter().find(|(n, _)| n == name).unwrap().1;
        assert_eq!(oracle::homology_strings(x, groups.len() - 1), *groups, "{name}");
    }
}

#[test]
fn homology_agrees_with_oracle() {
    for (name, x) in spaces() {
        let top = x.max_dim() + 1;
        let lib: Vec<String> = homology(&x, top).iter().map(|g| g.to_string()).collect();
        assert_eq!(lib, oracle::homology_strings(&x, top), "{name}");
        let lib_components = components(&x).0;
        let oracle_components = oracle::components(&x).iter().copied().max().map_or(0, |m| m + 1);
        assert_eq!(lib_components, oracle_components, "{name}");
    }
}

#[test]
fn certified_maps_have_acyclic_cones() {
    for (name, f) in map_corpus().unwrap() {
        let c = certify_weak_equivalence(&f, &CertifyOptions::default()).unwrap();
        if c.is_certified() {
            assert!(!oracle::genuine_mismatch(&f), "{name}");
        }
    }
}

#[test]
fn double_cover_is_refuted_by_the_cone() {
    let f = double_cover().unwrap();
    assert!(certify_weak_equivalence(&f, &CertifyOptions::default()).unwrap().is_refuted());
    assert!(oracle::pi0_bijective(&f));
    assert!(!oracle::cone_acyclic(&f, 2));
}
