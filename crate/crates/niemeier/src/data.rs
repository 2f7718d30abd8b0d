use k3fib_lattice::DynkinType;

use crate::{parse_glue_word, Component, NiemeierError, NiemeierLattice};

/// Hosts with explicit glue, in the order fibrations are tabulated.
pub const HOST_ORDER: [&str; 13] =
    ["E8^3", "E8D16", "E7^2D10", "E7A17", "D24", "D12^2", "D8^3", "D9A15", "E6^4", "A11E6D7", "D6^4", "D6A9^2", "D5^2A7^2"];

// (id, components, glue words, invariant factors)
const TABLE: &[(&str, &[&str], Option<&[&str]>, &[u64])] = &[
    ("E8^3", &["E8", "E8", "E8"], Some(&[]), &[]),
    ("E8D16", &["E8", "D16"], Some(&["delta"]), &[2]),
    ("E7^2D10", &["E7", "E7", "D10"], Some(&["eta(1)+delta", "eta(2)+delta_tilde"]), &[2, 2]),
    ("E7A17", &["E7", "A17"], Some(&["eta+3alpha"]), &[6]),
    ("D24", &["D24"], Some(&["delta"]), &[2]),
    ("D12^2", &["D12", "D12"], Some(&["delta(1)+delta_bar(2)", "delta_bar(1)+delta(2)"]), &[2, 2]),
    (
        "D8^3",
        &["D8", "D8", "D8"],
        Some(&["delta(1)+delta_bar(2)+delta_bar(3)", "delta_bar(1)+delta(2)+delta_bar(3)", "delta_bar(1)+delta_bar(2)+delta(3)"]),
        &[2, 2, 2],
    ),
    ("D9A15", &["D9", "A15"], Some(&["delta+2alpha"]), &[8]),
    ("E6^4", &["E6", "E6", "E6", "E6"], Some(&["eta(1)+eta(2)+eta(3)", "2eta(1)+eta(3)+eta(4)"]), &[3, 3]),
    ("A11E6D7", &["A11", "E6", "D7"], Some(&["alpha+eta+delta"]), &[12]),
    (
        "D6^4",
        &["D6", "D6", "D6", "D6"],
        Some(&[
            "delta(2)+delta_bar(3)+delta_tilde(4)",
            "delta_bar(2)+delta_tilde(3)+delta(4)",
            "delta(1)+delta_tilde(3)+delta_bar(4)",
            "delta_bar(1)+delta(3)+delta_tilde(4)",
        ]),
        &[2, 2, 2, 2],
    ),
    ("D6A9^2", &["D6", "A9", "A9"], Some(&["delta+5alpha(2)", "delta_tilde+alpha(1)+2alpha(2)"]), &[2, 10]),
    ("D5^2A7^2", &["D5", "D5", "A7", "A7"], Some(&["delta_tilde(1)+delta(2)+2alpha(1)", "delta(1)+2delta(2)+alpha(1)+alpha(2)"]), &[4, 8]),
    ("A24", &["A24"], None, &[5]),
    ("A12^2", &["A12", "A12"], None, &[13]),
    ("A8^3", &["A8", "A8", "A8"], None, &[3, 9]),
    ("A6^4", &["A6", "A6", "A6", "A6"], None, &[7, 7]),
    ("A5^4D4", &["A5", "A5", "A5", "A5", "D4"], None, &[2, 6, 6]),
    ("D4^6", &["D4"; 6], None, &[2, 2, 2, 2, 2, 2]),
    ("A4^6", &["A4"; 6], None, &[5, 5, 5]),
    ("A3^8", &["A3"; 8], None, &[4, 4, 4, 4]),
    ("A2^12", &["A2"; 12], None, &[3, 3, 3, 3, 3, 3]),
    ("A1^24", &["A1"; 24], None, &[2; 12]),
    ("Leech", &[], None, &[]),
];

fn components(types: &[&str]) -> Vec<Component> {
    let tys: Vec<DynkinType> = types.iter().map(|t| t.parse().expect("valid Dynkin label in table")).collect();
    tys.iter()
        .enumerate()
        .map(|(i, &ty)| {
            let same = tys.iter().filter(|&&t| t == ty).count();
            let copy = if same == 1 { 0 } else { tys[..=i].iter().filter(|&&t| t == ty).count() };
            Component { ty, copy }
        })
        .collect()
}

/// All 24 Niemeier lattices: the thirteen glued hosts first, in tabulation order.
pub fn all_niemeier() -> Vec<NiemeierLattice> {
    TABLE
        .iter()
        .map(|(id, types, glue, group)| {
            let comps = components(types);
            let glue = glue.map(|words| words.iter().map(|w| parse_glue_word(w, &comps).expect("glue words in table parse")).collect());
            NiemeierLattice { id: id.to_string(), components: comps, glue, glue_group: group.to_vec() }
        })
        .collect()
}

pub fn find(id: &str) -> Result<NiemeierLattice, NiemeierError> {
    all_niemeier().into_iter().find(|n| n.id == id).ok_or_else(|| NiemeierError::Unknown(id.to_string()))
}
