mod common;

use hnngenus::hnn::{hnn_isomorphic, pair_orbit_catalog, HnnData};
use hnngenus::morphisms::enumerate_isomorphisms;
use hnngenus::named::{cyclic, dihedral, symmetric};
use hnngenus::group::Subgroup;

use common::{base, relations_hold};

/// Number of blocks of `Iso(H, K)` under pairwise `hnn_isomorphic`.
fn brute_force_classes(b: &hnngenus::BaseGroup, h: &Subgroup, k: &Subgroup) -> usize {
    let maps = enumerate_isomorphisms(h, k);
    let data: Vec<HnnData> = maps.into_iter().map(|f| HnnData::new(h.clone(), k.clone(), f, "").unwrap()).collect();
    let mut reps: Vec<usize> = Vec::new();
    for i in 0..data.len() {
        let mut found = false;
        for &r in &reps {
            if let Some(w) = hnn_isomorphic(b, &data[r], &data[i]).unwrap() {
                assert!(relations_hold(b, &data[r], &data[i], &w.iso));
                found = true;
                break;
            }
        }
        if !found {
            reps.push(i);
        }
    }
    reps.len()
}

#[test]
fn catalog_counts_match_pairwise_isomorphism() {
    for g in [cyclic(6).unwrap(), symmetric(3).unwrap(), dihedral(8).unwrap(), cyclic(8).unwrap()] {
        let name = g.to_string();
        let b = base(g);
        let cat = pair_orbit_catalog(&b, None).unwrap();
        assert!(!cat.entries.is_empty());
        for e in &cat.entries {
            let h = Subgroup::from_elements(b.group(), &e.h).unwrap();
            let k = Subgroup::from_elements(b.group(), &e.k).unwrap();
            assert_eq!(e.count, brute_force_classes(&b, &h, &k), "{name}: H={:?} K={:?}", e.h, e.k);
        }
    }
}

#[test]
fn cyclic_six_total() {
    // Per unordered pair of subgroups of C6: the trivial pair 1, C2 1, C3 2 and C6 2.
    let b = base(cyclic(6).unwrap());
    assert_eq!(pair_orbit_catalog(&b, None).unwrap().total(), 6);
}
