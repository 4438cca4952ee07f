//! HNN data over a finite base and its classification up to isomorphism.
//!
//! `HNN(G1, H, K, f, t)` is presented by `G1`, a stable letter `t` and the
//! relations `t⁻¹ h t = f(h)` for `h ∈ H`.

mod catalog;
mod closed;
pub(crate) mod gamma;
mod witness;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{is_conjugate_subgroups, subgroup_closure, Group, Subgroup};
use crate::morphisms::{enumerate_isomorphisms, extend_homomorphism, GroupMap, MapKind};
use crate::spec::GroupSpec;

pub use catalog::{pair_orbit_catalog, pair_orbits, total_iso_count, PairEntry, PairOrbit, PairOrbitCatalog};
pub use closed::{central_cyclic_formula, closed_form_central_cyclic, closed_form_g1, ClosedForm};
pub use gamma::{
    build_gamma_bar, build_gamma_bar_with_swap, double_coset_count, gamma_action, iso_class_count, swap_automorphisms,
    DoubleCosetCount, GammaBarGroup, IsoClassCount, Perm, SwapAutomorphism,
};
pub use witness::{hnn_isomorphic, related_isomorphisms, verify_witness, HnnIso, IsoWitness, RelationCheck};

/// The defining data `(G1, H, K, f)` of an HNN-extension.
#[derive(Debug, Clone)]
pub struct HnnData {
    pub base: Group,
    pub h: Subgroup,
    pub k: Subgroup,
    /// An isomorphism `H → K`, as images of the sorted elements of `H`.
    pub f: GroupMap,
    pub label: String,
}

impl HnnData {
    pub fn new(h: Subgroup, k: Subgroup, f: GroupMap, label: impl Into<String>) -> Result<Self> {
        if !h.parent().same_law(k.parent()) {
            return Err(Error::NotASubgroup("H and K lie in different groups".into()));
        }
        if f.images.len() != h.order() || !f.is_hom(&h, &k) || !f.is_bijective_onto(&k) {
            return Err(Error::NotAnIsomorphism("f is not an isomorphism H → K".into()));
        }
        let f = GroupMap { kind: if h == k { MapKind::Aut } else { MapKind::Iso }, ..f };
        Ok(HnnData { base: h.parent().clone(), h, k, f, label: label.into() })
    }

    /// Extends the assignment `pairs` on generators of `H` to an isomorphism onto `K`.
    pub fn from_pairs(h: Subgroup, k: Subgroup, pairs: &[(usize, usize)], label: impl Into<String>) -> Result<Self> {
        let (src, dst): (Vec<usize>, Vec<usize>) = pairs.iter().copied().unzip();
        let f = extend_homomorphism(&h, &k, &src, &dst)
            .ok_or_else(|| Error::NotAnIsomorphism("the pairs do not extend to a homomorphism on H".into()))?;
        Self::new(h, k, f, label)
    }

    /// `HNN(G1, H, H, id)`.
    pub fn identity(h: Subgroup) -> Self {
        let f = GroupMap::identity_on(&h);
        HnnData { base: h.parent().clone(), k: h.clone(), h, f, label: String::new() }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    #[inline]
    pub fn apply_f(&self, x: usize) -> usize {
        self.f.apply(&self.h, x)
    }

    /// `f⁻¹: K → H`.
    pub fn f_inverse(&self) -> GroupMap {
        self.f.inverse(&self.h, &self.k)
    }

    pub fn is_normal(&self) -> bool {
        self.h == self.k
    }

    /// Same subgroups and same map.
    pub fn same_data(&self, other: &HnnData) -> bool {
        self.h == other.h && self.k == other.k && self.f.images == other.f.images
    }

    pub fn record(&self) -> HnnRecord {
        HnnRecord {
            h: self.h.elements().to_vec(),
            k: self.k.elements().to_vec(),
            f: self.h.elements().iter().map(|&x| [x, self.apply_f(x)]).collect(),
            label: self.label.clone(),
        }
    }
}

/// Base-free serial form of `HnnData`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HnnRecord {
    #[serde(rename = "H")]
    pub h: Vec<usize>,
    #[serde(rename = "K")]
    pub k: Vec<usize>,
    pub f: Vec<[usize; 2]>,
    #[serde(default)]
    pub label: String,
}

impl HnnRecord {
    pub fn resolve(&self, base: &Group) -> Result<HnnData> {
        let h = Subgroup::from_elements(base, &self.h)?;
        let k = Subgroup::from_elements(base, &self.k)?;
        let pairs: Vec<(usize, usize)> = self.f.iter().map(|p| (p[0], p[1])).collect();
        HnnData::from_pairs(h, k, &pairs, self.label.clone())
    }
}

/// HNN input file: `{"base": <group spec>, "H": [..], "K": [..], "f": [[h, k], ..]}`.
/// `H` and `K` may list generators only; `K` defaults to `H` and `f` to the identity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HnnFile {
    pub base: GroupSpec,
    #[serde(rename = "H")]
    pub h: Vec<usize>,
    #[serde(rename = "K", default, skip_serializing_if = "Option::is_none")]
    pub k: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<Vec<[usize; 2]>>,
    #[serde(default)]
    pub label: String,
}

impl HnnFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn load(&self) -> Result<HnnData> {
        let base = self.base.build()?.into_group();
        self.load_into(&base)
    }

    /// Resolves the subgroups and map inside an already built base.
    pub fn load_into(&self, base: &Group) -> Result<HnnData> {
        for &x in self.h.iter().chain(self.k.iter().flatten()) {
            if x >= base.order() {
                return Err(Error::Parse(format!("element index {x} out of range")));
            }
        }
        let h = subgroup_closure(base, &self.h);
        let k = match &self.k {
            Some(k) => subgroup_closure(base, k),
            None => h.clone(),
        };
        match &self.f {
            Some(pairs) => {
                let pairs: Vec<(usize, usize)> = pairs.iter().map(|p| (p[0], p[1])).collect();
                HnnData::from_pairs(h, k, &pairs, self.label.clone())
            }
            None if h == k => Ok(HnnData::identity(h).with_label(self.label.clone())),
            None => Err(Error::Parse("`f` is required when K differs from H".into())),
        }
    }
}

/// `Iso(H, K)` in canonical order with lookup by generator images.
#[derive(Debug, Clone)]
pub struct IsoSet {
    pub h: Subgroup,
    pub k: Subgroup,
    maps: Vec<GroupMap>,
    index: HashMap<Vec<usize>, usize>,
}

impl IsoSet {
    pub fn new(h: &Subgroup, k: &Subgroup) -> Self {
        let maps = enumerate_isomorphisms(h, k);
        let gens = h.generators();
        let index = maps
            .iter()
            .enumerate()
            .map(|(i, m)| (gens.iter().map(|&x| m.apply(h, x)).collect(), i))
            .collect();
        IsoSet { h: h.clone(), k: k.clone(), maps, index }
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn maps(&self) -> &[GroupMap] {
        &self.maps
    }

    pub fn map(&self, i: usize) -> &GroupMap {
        &self.maps[i]
    }

    /// Index of the isomorphism sending each generator `x` of `H` to `f(x)`.
    pub fn lookup_by(&self, f: impl Fn(usize) -> usize) -> Option<usize> {
        let key: Vec<usize> = self.h.generators().iter().map(|&x| f(x)).collect();
        self.index.get(&key).copied()
    }

    pub fn index_of(&self, f: &GroupMap) -> Option<usize> {
        self.lookup_by(|x| f.apply(&self.h, x))
    }

    pub fn data(&self, i: usize) -> HnnData {
        HnnData {
            base: self.h.parent().clone(),
            h: self.h.clone(),
            k: self.k.clone(),
            f: self.maps[i].clone(),
            label: String::new(),
        }
    }
}

/// Replaces conjugate associated subgroups by `K = H` and `f` by `τ_{g1} ∘ f`,
/// where `g1` is the least element with `g1⁻¹ H g1 = K`.
pub fn normalize_hnn(d: &HnnData) -> Result<HnnData> {
    let (n, g1) = normal_form(d)?;
    let label = if d.label.is_empty() {
        format!("normalized by conjugator {}", d.base.element_name(g1))
    } else {
        format!("{} (normalized by conjugator {})", d.label, d.base.element_name(g1))
    };
    Ok(n.with_label(label))
}

pub(crate) fn normal_form(d: &HnnData) -> Result<(HnnData, usize)> {
    let g = &d.base;
    if d.is_normal() {
        return Ok((d.clone(), g.identity()));
    }
    let g1 = is_conjugate_subgroups(g, &d.h, &d.k).ok_or(Error::NotConjugate)?;
    let f = GroupMap::from_fn(&d.h, MapKind::Aut, |x| g.conj(g1, d.apply_f(x)));
    Ok((HnnData { base: g.clone(), h: d.h.clone(), k: d.h.clone(), f, label: d.label.clone() }, g1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named::{dicyclic, dihedral};

    #[test]
    fn normalize_reflections() {
        let g = dihedral(8).unwrap().into_group();
        let e = |s: &str| g.parse_element(s).unwrap();
        let h = subgroup_closure(&g, &[e("c")]);
        let k = subgroup_closure(&g, &[e("r2c")]);
        let d = HnnData::from_pairs(h.clone(), k, &[(e("c"), e("r2c"))], "").unwrap();
        let n = normalize_hnn(&d).unwrap();
        assert!(n.is_normal());
        assert_eq!(n.h, h);
        let id = HnnData::identity(h);
        let (same, g1) = normal_form(&id).unwrap();
        assert!(same.same_data(&id));
        assert_eq!(g1, g.identity());
    }

    #[test]
    fn normal_quaternion_pair_is_not_conjugate() {
        let g = dicyclic(8).unwrap().into_group();
        let e = |s: &str| g.parse_element(s).unwrap();
        let h = subgroup_closure(&g, &[e("i")]);
        let k = subgroup_closure(&g, &[e("j")]);
        let d = HnnData::from_pairs(h, k, &[(e("i"), e("j"))], "").unwrap();
        assert_eq!(normalize_hnn(&d).unwrap_err(), Error::NotConjugate);
    }

    #[test]
    fn file_roundtrip() {
        let text = r#"{"base":{"kind":"named","name":"dihedral","params":{"order":8}},"H":[2,4],"f":[[4,6],[2,2]]}"#;
        let file = HnnFile::parse(text).unwrap();
        let d = file.load().unwrap();
        assert_eq!(d.h.order(), 4);
        assert_eq!(d.apply_f(4), 6);
        let rec = d.record();
        assert!(rec.resolve(&d.base).unwrap().same_data(&d));
        let back: HnnFile = serde_json::from_str(&serde_json::to_string(&file).unwrap()).unwrap();
        assert_eq!(back, file);
    }

    #[test]
    fn rejects_non_isomorphisms() {
        let g = dihedral(8).unwrap().into_group();
        let h = subgroup_closure(&g, &[2, 4]);
        assert!(HnnData::from_pairs(h.clone(), h.clone(), &[(4, 2), (2, 2)], "").is_err());
        assert!(HnnData::from_pairs(h.clone(), h, &[(4, 4)], "").is_err());
    }
}
