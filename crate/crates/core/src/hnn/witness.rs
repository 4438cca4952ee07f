//! Explicit isomorphisms between HNN-extensions over a common finite base.
//!
//! An [`HnnIso`] from `HNN(G1, H, K, f, t)` to `HNN(G1, H', K', f', s)` sends
//! `g ∈ G1` to `ψ(g)` and `t` to `left · s^e · right` with `e = ±1`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{HnnData, IsoSet};
use crate::base::BaseGroup;
use crate::error::Result;

/// `g ↦ ψ(g)`, `t ↦ left · s^exponent · right`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HnnIso {
    pub psi: usize,
    pub left: usize,
    pub exponent: i8,
    pub right: usize,
}

impl HnnIso {
    pub fn identity(base: &BaseGroup) -> Self {
        let e = base.group().identity();
        HnnIso { psi: base.aut().identity(), left: e, exponent: 1, right: e }
    }

    /// `self` followed by `next`.
    pub fn then(&self, base: &BaseGroup, next: &HnnIso) -> HnnIso {
        let g = base.group();
        let psi = base.aut().compose(next.psi, self.psi);
        let (l1, r1) = (base.apply_aut(next.psi, self.left), base.apply_aut(next.psi, self.right));
        if self.exponent == 1 {
            HnnIso { psi, left: g.mul(l1, next.left), exponent: next.exponent, right: g.mul(next.right, r1) }
        } else {
            HnnIso {
                psi,
                left: g.mul(l1, g.inv(next.right)),
                exponent: -next.exponent,
                right: g.mul(g.inv(next.left), r1),
            }
        }
    }

    pub fn inverse(&self, base: &BaseGroup) -> HnnIso {
        let g = base.group();
        let pi = base.aut_inverse(self.psi);
        let back = |x: usize| base.apply_aut(pi, x);
        if self.exponent == 1 {
            HnnIso { psi: pi, left: back(g.inv(self.left)), exponent: 1, right: back(g.inv(self.right)) }
        } else {
            HnnIso { psi: pi, left: back(self.right), exponent: -1, right: back(self.left) }
        }
    }

    /// Whether the map is the identity of `HNN(d)`: `ψ = id`, `e = 1` and `x t y = t`.
    pub fn is_identity_on(&self, base: &BaseGroup, d: &HnnData) -> bool {
        let g = base.group();
        self.psi == base.aut().identity()
            && self.exponent == 1
            && d.h.contains(self.left)
            && d.apply_f(self.left) == g.inv(self.right)
    }
}

/// One defining relation `t⁻¹ h t = f(h)` pushed through the map.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationCheck {
    pub generator: usize,
    /// `ψ(f(h))`.
    pub expected: usize,
    /// The image of `t⁻¹ h t`, absent when it does not reduce into `G1`.
    pub actual: Option<usize>,
    pub holds: bool,
}

fn relation_checks(base: &BaseGroup, src: &HnnData, dst: &HnnData, iso: &HnnIso) -> Vec<RelationCheck> {
    let g = base.group();
    src.h
        .generators()
        .iter()
        .map(|&h| {
            let expected = base.apply_aut(iso.psi, src.apply_f(h));
            let u = g.mul(g.inv(iso.left), g.mul(base.apply_aut(iso.psi, h), iso.left));
            let v = match iso.exponent {
                1 if dst.h.contains(u) => Some(dst.apply_f(u)),
                -1 if dst.k.contains(u) => {
                    Some(dst.h.elements().iter().copied().find(|&x| dst.apply_f(x) == u).expect("f is onto K"))
                }
                _ => None,
            };
            let actual = v.map(|v| g.mul(g.inv(iso.right), g.mul(v, iso.right)));
            RelationCheck { generator: h, expected, actual, holds: actual == Some(expected) }
        })
        .collect()
}

/// A verified isomorphism with its inverse and the checks performed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoWitness {
    pub iso: HnnIso,
    pub inverse: HnnIso,
    /// `ψ` as an image array over `G1`.
    pub psi_images: Vec<usize>,
    pub checks: Vec<RelationCheck>,
    pub inverse_checks: Vec<RelationCheck>,
    /// Both composites with the inverse are the identity.
    pub round_trip: bool,
    pub verified: bool,
}

/// Checks that `iso` is an isomorphism `HNN(a) → HNN(b)`: both it and its
/// inverse respect the relations on generators, and both composites are the identity.
pub fn verify_witness(base: &BaseGroup, a: &HnnData, b: &HnnData, iso: &HnnIso) -> IsoWitness {
    let inverse = iso.inverse(base);
    let checks = relation_checks(base, a, b, iso);
    let inverse_checks = relation_checks(base, b, a, &inverse);
    let round_trip =
        iso.then(base, &inverse).is_identity_on(base, a) && inverse.then(base, iso).is_identity_on(base, b);
    let verified = round_trip && checks.iter().chain(&inverse_checks).all(|c| c.holds);
    IsoWitness {
        iso: *iso,
        inverse,
        psi_images: base.aut().aut(iso.psi).images.clone(),
        checks,
        inverse_checks,
        round_trip,
        verified,
    }
}

fn relations_hold(base: &BaseGroup, a: &HnnData, b: &HnnData, iso: &HnnIso) -> bool {
    relation_checks(base, a, b, iso).iter().all(|c| c.holds)
}

/// Decides whether `HNN(a) ≅ HNN(b)` and returns a verified witness.
///
/// Up to an inner automorphism of the target every isomorphism has `left = 1`,
/// so the search runs over `ψ ∈ Aut(G1)`, `e = ±1` and `right ∈ G1`.
pub fn hnn_isomorphic(base: &BaseGroup, a: &HnnData, b: &HnnData) -> Result<Option<IsoWitness>> {
    for s in [&a.h, &a.k, &b.h, &b.k] {
        base.check(s)?;
    }
    if a.same_data(b) {
        return Ok(Some(verify_witness(base, a, b, &HnnIso::identity(base))));
    }
    if a.h.order() != b.h.order() {
        return Ok(None);
    }
    let g = base.group();
    let e = g.identity();
    let found = (0..base.aut().aut_order()).into_par_iter().find_map_first(|psi| {
        let psi_h = base.image_of(psi, &a.h);
        [1i8, -1].into_iter().find_map(|exponent| {
            let target = if exponent == 1 { &b.h } else { &b.k };
            if psi_h != *target {
                return None;
            }
            (0..g.order()).find_map(|right| {
                let iso = HnnIso { psi, left: e, exponent, right };
                relations_hold(base, a, b, &iso).then_some(iso)
            })
        })
    });
    Ok(found.map(|iso| verify_witness(base, a, b, &iso)).filter(|w| w.verified))
}

/// Indices `j` of `iso_set` with `HNN(G1, H, K, f_j) ≅ HNN(G1, H, K, f_i)`,
/// obtained by solving the relation for the target map over every `(ψ, e, right)`.
pub fn related_isomorphisms(base: &BaseGroup, iso_set: &IsoSet, i: usize) -> Vec<usize> {
    let g = base.group();
    let (h, k) = (&iso_set.h, &iso_set.k);
    let f = iso_set.map(i);
    let finv = f.inverse(h, k);
    let mut out: Vec<usize> = (0..base.aut().aut_order())
        .into_par_iter()
        .flat_map_iter(|psi| {
            let pi = base.aut_inverse(psi);
            let psi_h = base.image_of(psi, h);
            let mut found = Vec::new();
            if psi_h == *h {
                // f1(x) = r ψ f ψ⁻¹(x) r⁻¹
                for r in 0..g.order() {
                    if let Some(j) =
                        iso_set.lookup_by(|x| g.conj(r, base.apply_aut(psi, f.apply(h, base.apply_aut(pi, x)))))
                    {
                        found.push(j);
                    }
                }
            }
            if psi_h == *k {
                // f1⁻¹(y) = r ψ f ψ⁻¹(y) r⁻¹ on K, so f1(x) = ψ f⁻¹ ψ⁻¹(r⁻¹ x r)
                for r in 0..g.order() {
                    if let Some(j) = iso_set.lookup_by(|x| {
                        let y = base.apply_aut(pi, g.conj(g.inv(r), x));
                        if !k.contains(y) {
                            return usize::MAX;
                        }
                        base.apply_aut(psi, finv.apply(k, y))
                    }) {
                        found.push(j);
                    }
                }
            }
            found
        })
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::subgroup_closure;
    use crate::named::{cyclic, dicyclic, dihedral, direct_product};
    use crate::Limits;

    fn base(g: crate::group::FiniteGroup) -> BaseGroup {
        BaseGroup::new(g.into_group(), Limits::default()).unwrap()
    }

    #[test]
    fn d8_klein_f1_f2_not_isomorphic() {
        let b = base(dihedral(8).unwrap());
        let g = b.group().clone();
        let e = |s: &str| g.parse_element(s).unwrap();
        let v = subgroup_closure(&g, &[e("c"), e("r2")]);
        let f1 = HnnData::from_pairs(v.clone(), v.clone(), &[(e("c"), e("c")), (e("r2"), e("r2c"))], "f1").unwrap();
        let f2 = HnnData::from_pairs(v.clone(), v.clone(), &[(e("c"), e("r2c")), (e("r2"), e("r2"))], "f2").unwrap();
        assert!(hnn_isomorphic(&b, &f1, &f2).unwrap().is_none());
        let w = hnn_isomorphic(&b, &f1, &f1).unwrap().unwrap();
        assert!(w.verified);
        assert_eq!(w.iso, HnnIso::identity(&b));
    }

    #[test]
    fn inverse_map_gives_isomorphic_extension() {
        let b = base(direct_product(&cyclic(11).unwrap(), &cyclic(2).unwrap()).unwrap());
        let g = b.group().clone();
        let h = subgroup_closure(&g, &[1]);
        let f = HnnData::from_pairs(h.clone(), h.clone(), &[(1, g.pow(1, 3))], "").unwrap();
        let finv = HnnData::new(h.clone(), h.clone(), f.f_inverse(), "").unwrap();
        let w = hnn_isomorphic(&b, &f, &finv).unwrap().unwrap();
        assert!(w.verified);
        assert_eq!(w.iso.exponent, -1);
        let f2 = HnnData::from_pairs(h.clone(), h.clone(), &[(1, g.pow(1, 2))], "").unwrap();
        assert!(hnn_isomorphic(&b, &f, &f2).unwrap().is_none());
    }

    #[test]
    fn non_normal_pair_and_swap() {
        let b = base(dicyclic(8).unwrap());
        let g = b.group().clone();
        let e = |s: &str| g.parse_element(s).unwrap();
        let hi = subgroup_closure(&g, &[e("i")]);
        let hj = subgroup_closure(&g, &[e("j")]);
        let a = HnnData::from_pairs(hi.clone(), hj.clone(), &[(e("i"), e("j"))], "").unwrap();
        let swapped = HnnData::new(hj, hi, a.f_inverse(), "").unwrap();
        let w = hnn_isomorphic(&b, &a, &swapped).unwrap().unwrap();
        assert!(w.verified);
    }

    #[test]
    fn composition_and_inverse_roundtrip() {
        let b = base(dihedral(8).unwrap());
        let g = b.group().clone();
        let c = subgroup_closure(&g, &[4]);
        let d = HnnData::identity(c);
        for psi in 0..b.aut().aut_order() {
            for x in 0..8 {
                let iso = HnnIso { psi, left: x, exponent: if x % 2 == 0 { 1 } else { -1 }, right: g.inv(x) };
                assert!(iso.then(&b, &iso.inverse(&b)).psi == b.aut().identity());
            }
        }
        assert!(HnnIso::identity(&b).is_identity_on(&b, &d));
    }

    #[test]
    fn related_matches_pairwise_search() {
        let b = base(dihedral(8).unwrap());
        let g = b.group().clone();
        let v = subgroup_closure(&g, &[2, 4]);
        let iso = IsoSet::new(&v, &v);
        for i in 0..iso.len() {
            let rel = related_isomorphisms(&b, &iso, i);
            for j in 0..iso.len() {
                let pair = hnn_isomorphic(&b, &iso.data(i), &iso.data(j)).unwrap();
                assert_eq!(pair.is_some(), rel.contains(&j));
            }
        }
    }
}
