//! The action of `Γ_HK` on `Iso(H, K)`, the swap involution, and orbit counts.
//!
//! `(g1, α) · f = τ_{g1} ∘ α ∘ f ∘ α⁻¹` for `α ∈ Aut(G1)` with `α(H) = H` and
//! `g1 α(K) g1⁻¹ = K`. A swap automorphism `ψ` with `ψ(H) = K` and
//! `ψ(K) = g1⁻¹ H g1` induces `ι(f) = τ_c ∘ ψ⁻¹ ∘ f⁻¹ ∘ ψ` with `c = ψ⁻¹(g1⁻¹)`.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::IsoSet;
use crate::base::{BaseGroup, SubgroupInfo};
use crate::error::{cap_check, Error, Result};
use crate::group::{is_conjugate_subgroups, Subgroup};
use crate::morphisms::{GroupMap, MapKind};

/// A permutation of `Iso(H, K)` indices.
pub type Perm = Vec<u32>;

/// `τ_{g1} ∘ α ∘ f ∘ α⁻¹` for `f: H → X`; `alpha` indexes `Aut(G1)`.
pub fn gamma_action(base: &BaseGroup, g1: usize, alpha: usize, h: &Subgroup, f: &GroupMap) -> Result<GroupMap> {
    let g = base.group();
    if !h.elements().iter().all(|&x| h.contains(base.apply_aut(alpha, x))) {
        return Err(Error::AlphaDoesNotPreserveH);
    }
    let ai = base.aut_inverse(alpha);
    Ok(GroupMap::from_fn(h, MapKind::Iso, |x| {
        g.conj(g1, base.apply_aut(alpha, f.apply(h, base.apply_aut(ai, x))))
    }))
}

/// A swap automorphism: `ψ(H) = K` and `ψ(K) = g1⁻¹ H g1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwapAutomorphism {
    pub psi: usize,
    pub conjugator: usize,
}

/// All swap automorphisms in canonical order, each with its least conjugator.
pub fn swap_automorphisms(base: &BaseGroup, h: &Subgroup, k: &Subgroup) -> Vec<SwapAutomorphism> {
    let g = base.group();
    (0..base.aut().aut_order())
        .filter_map(|psi| {
            if !h.elements().iter().all(|&x| k.contains(base.apply_aut(psi, x))) {
                return None;
            }
            let psi_k = base.image_of(psi, k);
            is_conjugate_subgroups(g, h, &psi_k).map(|conjugator| SwapAutomorphism { psi, conjugator })
        })
        .collect()
}

/// `Γ̄_HK` acting on `Iso(H, K)`.
#[derive(Debug, Clone)]
pub struct GammaBarGroup {
    pub iso_set: IsoSet,
    /// Every element of `Γ̃_HK`, sorted; the identity comes first.
    pub generators: Vec<Perm>,
    pub iota: Option<Perm>,
    pub swap: Option<SwapAutomorphism>,
}

fn compose(p: &[u32], q: &[u32]) -> Perm {
    q.iter().map(|&i| p[i as usize]).collect()
}

fn invert(p: &[u32]) -> Perm {
    let mut inv = vec![0u32; p.len()];
    for (i, &j) in p.iter().enumerate() {
        inv[j as usize] = i as u32;
    }
    inv
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        parent[hi] = lo;
    }
}

/// Orbits of the group generated by `perms` on `0..n`, each sorted, ordered by least element.
pub(crate) fn orbits_of(n: usize, perms: impl IntoIterator<Item = impl AsRef<[u32]>>) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..n).collect();
    for p in perms {
        for (i, &j) in p.as_ref().iter().enumerate() {
            union(&mut parent, i, j as usize);
        }
    }
    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    let mut out: Vec<Vec<usize>> = groups.into_values().collect();
    out.sort();
    out
}

fn gamma_tilde(base: &BaseGroup, iso: &IsoSet) -> Result<Vec<Perm>> {
    let g = base.group();
    let (h, k) = (&iso.h, &iso.k);
    let info = base.info(h)?;
    let hg = h.generators();
    let kg = k.generators();
    let mut keys: HashSet<(Vec<usize>, Vec<usize>)> = HashSet::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for &alpha in &info.restriction.aut_g1_h {
        let ak: Vec<usize> = kg.iter().map(|&x| base.apply_aut(alpha, x)).collect();
        let on_h: Vec<usize> = hg.iter().map(|&x| base.apply_aut(alpha, x)).collect();
        for g1 in 0..g.order() {
            let on_k: Vec<usize> = ak.iter().map(|&y| g.conj(g1, y)).collect();
            if on_k.iter().all(|&y| k.contains(y)) && keys.insert((on_h.clone(), on_k)) {
                pairs.push((g1, alpha));
            }
        }
    }
    let mut perms: Vec<Perm> = pairs
        .iter()
        .map(|&(g1, alpha)| {
            let ai = base.aut_inverse(alpha);
            let pre: Vec<usize> = hg.iter().map(|&x| base.apply_aut(ai, x)).collect();
            (0..iso.len())
                .map(|i| {
                    let f = iso.map(i);
                    let j = iso
                        .lookup_by(|x| {
                            let p = hg.iter().position(|&y| y == x).expect("generator");
                            g.conj(g1, base.apply_aut(alpha, f.apply(h, pre[p])))
                        })
                        .expect("the action preserves Iso(H, K)");
                    j as u32
                })
                .collect()
        })
        .collect();
    perms.sort();
    perms.dedup();
    Ok(perms)
}

fn iota_perm(base: &BaseGroup, iso: &IsoSet, swap: SwapAutomorphism) -> Perm {
    let g = base.group();
    let (h, k) = (&iso.h, &iso.k);
    let psi = swap.psi;
    let psi_inv = base.aut_inverse(psi);
    let c = base.apply_aut(psi_inv, g.inv(swap.conjugator));
    (0..iso.len())
        .map(|i| {
            let f = iso.map(i);
            let finv = f.inverse(h, k);
            let j = iso
                .lookup_by(|x| g.conj(c, base.apply_aut(psi_inv, finv.apply(k, base.apply_aut(psi, x)))))
                .expect("the involution preserves Iso(H, K)");
            j as u32
        })
        .collect()
}

/// Builds `Γ̄_HK` using the first swap automorphism in canonical order.
pub fn build_gamma_bar(base: &BaseGroup, h: &Subgroup, k: &Subgroup) -> Result<GammaBarGroup> {
    let swap = swap_automorphisms(base, h, k).into_iter().next();
    build_gamma_bar_with_swap(base, h, k, swap)
}

/// Builds `Γ̄_HK` with a chosen swap automorphism, or `Γ̃_HK` alone with `None`.
pub fn build_gamma_bar_with_swap(
    base: &BaseGroup,
    h: &Subgroup,
    k: &Subgroup,
    swap: Option<SwapAutomorphism>,
) -> Result<GammaBarGroup> {
    base.check(h)?;
    base.check(k)?;
    let iso_set = IsoSet::new(h, k);
    if iso_set.is_empty() {
        return Err(Error::EmptyIsoSet);
    }
    cap_check("Iso(H, K)", iso_set.len(), base.limits().iso_set)?;
    let generators = gamma_tilde(base, &iso_set)?;
    let iota = swap.map(|s| iota_perm(base, &iso_set, s));
    Ok(GammaBarGroup { iso_set, generators, iota, swap })
}

impl GammaBarGroup {
    /// Orbits on `Iso(H, K)`, sorted by least member.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        orbits_of(self.iso_set.len(), self.generators.iter().chain(self.iota.iter()))
    }

    /// Every element of `Γ̄_HK` as a sorted list of permutations.
    pub fn closure(&self) -> Vec<Perm> {
        let tilde: HashSet<&Perm> = self.generators.iter().collect();
        let mut all: Vec<Perm> = self.generators.clone();
        if let Some(iota) = &self.iota {
            let mut power = iota.clone();
            while !tilde.contains(&power) {
                all.extend(self.generators.iter().map(|g| compose(&power, g)));
                power = compose(&power, iota);
            }
        }
        all.sort();
        all.dedup();
        all
    }

    /// The same `Γ̃_HK` with the involution of another swap automorphism.
    pub fn with_swap(&self, base: &BaseGroup, swap: SwapAutomorphism) -> GammaBarGroup {
        GammaBarGroup {
            iso_set: self.iso_set.clone(),
            generators: self.generators.clone(),
            iota: Some(iota_perm(base, &self.iso_set, swap)),
            swap: Some(swap),
        }
    }

    pub fn order(&self) -> usize {
        self.closure().len()
    }

    /// Whether `ι γ ι⁻¹ ∈ Γ̃_HK` for every `γ ∈ Γ̃_HK`.
    pub fn iota_normalizes(&self) -> bool {
        let Some(iota) = &self.iota else { return true };
        let tilde: HashSet<&Perm> = self.generators.iter().collect();
        let inv = invert(iota);
        self.generators.iter().all(|g| tilde.contains(&compose(&compose(iota, g), &inv)))
    }

    /// Whether the permutation set is closed under composition and inverses.
    pub fn is_closed(perms: &[Perm]) -> bool {
        let set: HashSet<&Perm> = perms.iter().collect();
        perms.iter().all(|p| set.contains(&invert(p)) && perms.iter().all(|q| set.contains(&compose(p, q))))
    }
}

/// Number of isomorphism classes with one canonical representative per class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoClassCount {
    pub count: usize,
    /// Least isomorphism of each orbit, in canonical order.
    pub representatives: Vec<GroupMap>,
    /// Orbits as index lists into the canonical `Iso(H, K)`.
    pub orbits: Vec<Vec<usize>>,
}

/// `|Γ̄_HK \ Iso(H, K)|` with orbit representatives.
pub fn iso_class_count(base: &BaseGroup, h: &Subgroup, k: &Subgroup) -> Result<IsoClassCount> {
    let gb = build_gamma_bar(base, h, k)?;
    let orbits = gb.orbits();
    Ok(IsoClassCount {
        count: orbits.len(),
        representatives: orbits.iter().map(|o| gb.iso_set.map(o[0]).clone()).collect(),
        orbits,
    })
}

/// Double-coset count over `Out(H)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoubleCosetCount {
    pub count: usize,
    /// Least `Out(H)` index in each orbit.
    pub representatives: Vec<usize>,
}

/// Orbits of `Out(H)` under left multiplication by `Ñ_{G1}(H)`, conjugation by
/// `Ãut_{G1}(H)` and inversion.
pub fn double_coset_count(base: &BaseGroup, h: &Subgroup) -> Result<DoubleCosetCount> {
    let info = base.info(h)?;
    let orbits = double_coset_orbits(&info);
    Ok(DoubleCosetCount { count: orbits.len(), representatives: orbits.iter().map(|o| o[0]).collect() })
}

pub(crate) fn double_coset_orbits(info: &SubgroupInfo) -> Vec<Vec<usize>> {
    let out = &info.out;
    let n = out.out_order();
    let mut perms: Vec<Perm> = Vec::new();
    for &m in &info.restriction.n_tilde {
        perms.push((0..n).map(|x| out.out_mul(m, x) as u32).collect());
    }
    for &a in &info.restriction.aut_tilde {
        let ai = out.out_inv(a);
        perms.push((0..n).map(|x| out.out_mul(ai, out.out_mul(x, a)) as u32).collect());
    }
    perms.push((0..n).map(|x| out.out_inv(x) as u32).collect());
    orbits_of(n, &perms)
}

/// Orbit index of every `Out(H)` element under the double-coset action.
pub(crate) fn double_coset_labels(info: &SubgroupInfo) -> Vec<usize> {
    let orbits = double_coset_orbits(info);
    let mut label = vec![0; info.out.out_order()];
    for (i, o) in orbits.iter().enumerate() {
        for &x in o {
            label[x] = i;
        }
    }
    label
}
