use k3fib_lattice::{classify_roots, LatticeError};
use k3fib_niemeier::*;

#[test]
fn twenty_four_lattices() {
    let all = all_niemeier();
    assert_eq!(all.len(), 24);
    for n in &all {
        if n.id == "Leech" {
            assert_eq!(n.root_rank(), 0);
            continue;
        }
        assert_eq!(n.root_rank(), 24, "{}", n.id);
        assert_eq!((n.glue_order() as u128).pow(2), n.root_det(), "{}", n.id);
    }
    assert_eq!(all.iter().filter(|n| n.has_glue_data()).count(), 13);
    assert_eq!(all.iter().take(13).map(|n| n.id.as_str()).collect::<Vec<_>>(), HOST_ORDER.to_vec());
}

#[test]
fn declared_groups() {
    assert_eq!(group_label(&find("E8^3").unwrap().glue_group), "(0)");
    assert_eq!(find("D9A15").unwrap().glue_group, vec![8]);
    assert_eq!(find("A11E6D7").unwrap().glue_group, vec![12]);
    assert_eq!(find("D6A9^2").unwrap().glue_group_label(), "Z/2 x Z/10");
    assert!(matches!(find("nope"), Err(NiemeierError::Unknown(_))));
}

#[test]
fn component_labels() {
    let n = find("E7^2D10").unwrap();
    let labels: Vec<String> = n.components.iter().map(|c| c.to_string()).collect();
    assert_eq!(labels, ["E7(1)", "E7(2)", "D10"]);
    let w = &n.glue.as_ref().unwrap()[1];
    assert_eq!(w.terms[0].component, 1);
    assert_eq!(w.terms[1].component, 2);
    assert!(parse_glue_word("eta+delta", &n.components).is_err());
    assert!(parse_glue_word("eta(3)", &n.components).is_err());
    assert!(parse_glue_word("gamma", &n.components).is_err());
}

#[test]
fn every_glued_host_validates() {
    for id in HOST_ORDER {
        let n = find(id).unwrap();
        let r = validate(&n).unwrap();
        assert!(r.ok, "{r:?}");
        assert_eq!(r.det.trim_start_matches('-'), "1");
        assert_eq!(r.glue_order as u64, n.glue_order());
    }
}

#[test]
fn realization_examples() {
    let e8 = realize(&find("E8^3").unwrap()).unwrap();
    assert_eq!(e8.lattice.det(), 1.into());
    assert_eq!(validate(&find("E8^3").unwrap()).unwrap().root_count, 720);
    let d16 = realize(&find("E8D16").unwrap()).unwrap();
    assert_eq!(d16.lattice.det(), 1.into());
    let r = validate(&find("D5^2A7^2").unwrap()).unwrap();
    assert_eq!(r.computed_glue_group, vec!["4", "8"]);
    assert!(matches!(realize(&find("A24").unwrap()), Err(NiemeierError::NoGlueData(_))));
}

fn with_words(id: &str, words: &[&str]) -> NiemeierLattice {
    let mut n = find(id).unwrap();
    n.glue = Some(words.iter().map(|w| parse_glue_word(w, &n.components).unwrap()).collect());
    n
}

// The words as they are printed in the published glue table.
#[test]
fn printed_words_that_do_not_glue() {
    let e7 = with_words("E7^2D10", &["eta(1)+delta", "eta(2)+delta_bar"]);
    assert!(matches!(realize(&e7), Err(NiemeierError::Lattice(LatticeError::GlueNotEven { .. }))));

    let d6a9 = with_words("D6A9^2", &["delta+5alpha(2)", "delta+alpha(1)+2alpha(2)"]);
    assert!(matches!(realize(&d6a9), Err(NiemeierError::Lattice(LatticeError::GluePairing { .. }))));

    let d5a7 = with_words("D5^2A7^2", &["delta(1)+delta(2)+2alpha(1)", "delta(1)+2delta(2)+alpha(1)+alpha(2)"]);
    assert!(realize(&d5a7).is_err());

    let d6 = with_words(
        "D6^4",
        &["delta_bar(1)+delta_bar(4)", "delta_bar(2)+delta_bar(3)", "delta(1)+delta_bar(3)+delta(4)", "delta_bar(1)+delta_bar(2)"],
    );
    match realize(&d6) {
        Err(_) => {}
        Ok(_) => assert!(!validate(&d6).unwrap().ok),
    }
}

// Independent of the coset argument: enumerate every norm −2 vector of the
// realized rank-24 lattice directly.
#[test]
fn full_root_enumeration_agrees() {
    for id in HOST_ORDER {
        let n = find(id).unwrap();
        let r = realize(&n).unwrap();
        let d = classify_roots(&r.lattice).unwrap();
        assert_eq!(d.label(), n.root_label(), "{id}");
    }
}
