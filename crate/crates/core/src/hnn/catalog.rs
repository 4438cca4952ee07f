//! Aut(G1)-orbits of unordered pairs of subgroup conjugacy classes, and the
//! total number of HNN isomorphism classes over a finite base.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::gamma::{iso_class_count, orbits_of};
use crate::base::BaseGroup;
use crate::error::{Error, Result};
use crate::group::{conjugacy_classes_of_subgroups, Subgroup};
use crate::morphisms::first_isomorphism;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairEntry {
    /// Indices into the class list of the catalog.
    pub classes: [usize; 2],
    #[serde(rename = "H")]
    pub h: Vec<usize>,
    #[serde(rename = "K")]
    pub k: Vec<usize>,
    /// Number of unordered class pairs in this orbit.
    pub orbit_size: usize,
    /// Isomorphism classes of `HNN(G1, H, K, f)`; zero when `H ≇ K`.
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairOrbitCatalog {
    /// Conjugacy class representatives, as element lists.
    pub classes: Vec<Vec<usize>>,
    pub entries: Vec<PairEntry>,
}

impl PairOrbitCatalog {
    pub fn total(&self) -> usize {
        self.entries.iter().map(|e| e.count).sum()
    }
}

/// Representatives of the `Aut(G1)`-orbits of unordered pairs of subgroup classes.
#[derive(Debug, Clone)]
pub struct PairOrbit {
    pub classes: [usize; 2],
    pub h: Subgroup,
    pub k: Subgroup,
    pub orbit_size: usize,
}

/// Class representatives (optionally only those isomorphic to `restrict`) and
/// one pair per `Aut(G1)`-orbit, without class counts.
pub fn pair_orbits(base: &BaseGroup, restrict: Option<&Subgroup>) -> Result<(Vec<Subgroup>, Vec<PairOrbit>)> {
    let g = base.group();
    let all = conjugacy_classes_of_subgroups(g, base.limits().subgroup_order)?;
    let keep: Vec<usize> = (0..all.len())
        .filter(|&i| match restrict {
            None => true,
            Some(r) => {
                let rep = &all[i].representative;
                rep.order() == r.order() && first_isomorphism(r, rep).is_some()
            }
        })
        .collect();
    let mut class_of: HashMap<&[usize], usize> = HashMap::new();
    for (ci, &i) in keep.iter().enumerate() {
        for m in &all[i].members {
            class_of.insert(m.elements(), ci);
        }
    }
    let c = keep.len();
    let sigma: Vec<Vec<usize>> = (0..base.aut().aut_order())
        .map(|a| {
            keep.iter()
                .map(|&i| class_of[base.image_of(a, &all[i].representative).elements()])
                .collect()
        })
        .collect();
    let pairs: Vec<(usize, usize)> = (0..c).flat_map(|i| (i..c).map(move |j| (i, j))).collect();
    let pair_index: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(p, &q)| (q, p)).collect();
    let perms: Vec<Vec<u32>> = sigma
        .iter()
        .map(|s| {
            pairs
                .iter()
                .map(|&(i, j)| {
                    let (a, b) = (s[i].min(s[j]), s[i].max(s[j]));
                    pair_index[&(a, b)] as u32
                })
                .collect()
        })
        .collect();
    let reps: Vec<Subgroup> = keep.iter().map(|&i| all[i].representative.clone()).collect();
    let orbits = orbits_of(pairs.len(), &perms)
        .into_iter()
        .map(|orbit| {
            let (i, j) = pairs[orbit[0]];
            PairOrbit { classes: [i, j], h: reps[i].clone(), k: reps[j].clone(), orbit_size: orbit.len() }
        })
        .collect();
    Ok((reps, orbits))
}

/// One entry per `Aut(G1)`-orbit of unordered class pairs, optionally only
/// classes whose subgroups are isomorphic to `restrict`.
pub fn pair_orbit_catalog(base: &BaseGroup, restrict: Option<&Subgroup>) -> Result<PairOrbitCatalog> {
    let (reps, orbits) = pair_orbits(base, restrict)?;
    let entries: Vec<PairEntry> = orbits
        .par_iter()
        .map(|o| {
            let (h, k) = (&o.h, &o.k);
            let count = if h.order() == k.order() && first_isomorphism(h, k).is_some() {
                iso_class_count(base, h, k)?.count
            } else {
                0
            };
            Ok(PairEntry {
                classes: o.classes,
                h: h.elements().to_vec(),
                k: k.elements().to_vec(),
                orbit_size: o.orbit_size,
                count,
            })
        })
        .collect::<Result<_>>()?;
    Ok(PairOrbitCatalog { classes: reps.iter().map(|r| r.elements().to_vec()).collect(), entries })
}

/// Number of isomorphism classes of `HNN(G1, H, K, f)` over all `H, K ≤ G1`
/// and `f ∈ Iso(H, K)`.
pub fn total_iso_count(base: &BaseGroup) -> Result<usize> {
    let cat = pair_orbit_catalog(base, None)?;
    if cat.entries.is_empty() {
        return Err(Error::EmptyIsoSet);
    }
    Ok(cat.total())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::subgroup_closure;
    use crate::named::{cyclic, dihedral};
    use crate::Limits;

    fn base(g: crate::group::FiniteGroup) -> BaseGroup {
        BaseGroup::new(g.into_group(), Limits::default()).unwrap()
    }

    #[test]
    fn trivial_base() {
        let b = base(cyclic(1).unwrap());
        let cat = pair_orbit_catalog(&b, None).unwrap();
        assert_eq!(cat.entries.len(), 1);
        assert_eq!(total_iso_count(&b).unwrap(), 1);
    }

    #[test]
    fn c6_total() {
        let b = base(cyclic(6).unwrap());
        assert_eq!(total_iso_count(&b).unwrap(), 6);
    }

    #[test]
    fn d8_klein_type() {
        let b = base(dihedral(8).unwrap());
        let g = b.group().clone();
        let v = subgroup_closure(&g, &[2, 4]);
        let cat = pair_orbit_catalog(&b, Some(&v)).unwrap();
        assert_eq!(cat.classes.len(), 2);
        let v2 = subgroup_closure(&g, &[2, 5]);
        // The outer automorphism swaps the two Klein subgroups.
        let has = |a: &Subgroup, c: &Subgroup| {
            cat.entries.iter().any(|e| {
                (e.h == a.elements() && e.k == c.elements()) || (e.h == c.elements() && e.k == a.elements())
            })
        };
        assert!(has(&v, &v) || has(&v2, &v2));
        assert!(has(&v, &v2));
        let total: usize = cat.entries.iter().map(|e| e.count).sum();
        assert_eq!(total, cat.total());
    }
}
