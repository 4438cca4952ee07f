//! Homomorphisms, isomorphisms and automorphisms between finite groups and subgroups.
//!
//! A map is stored as the array of images of the domain's sorted element list.
//! For a whole group that list is `0..order`, so images are indexed by element.
//! Maps are enumerated by backtracking over the images of the domain's canonical
//! generating set; each partial assignment is checked on every edge of the Cayley
//! graph of the subgroup generated so far, which certifies multiplicativity.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{cap_check, Result};
use crate::group::{normalizer, Subgroup};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MapKind {
    Hom,
    Iso,
    Aut,
}

/// A map from a domain subgroup, as images of its sorted elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupMap {
    pub images: Vec<usize>,
    pub kind: MapKind,
}

impl GroupMap {
    pub fn new(images: Vec<usize>, kind: MapKind) -> Self {
        GroupMap { images, kind }
    }

    pub fn identity_on(dom: &Subgroup) -> Self {
        GroupMap { images: dom.elements().to_vec(), kind: MapKind::Aut }
    }

    #[inline]
    pub fn apply(&self, dom: &Subgroup, x: usize) -> usize {
        self.images[dom.pos_unchecked(x)]
    }

    /// Builds a map on `dom` from a function on its elements.
    pub fn from_fn(dom: &Subgroup, kind: MapKind, f: impl Fn(usize) -> usize) -> Self {
        GroupMap { images: dom.elements().iter().map(|&x| f(x)).collect(), kind }
    }

    /// Full multiplicativity check.
    pub fn is_hom(&self, dom: &Subgroup, cod: &Subgroup) -> bool {
        let (g, q) = (dom.parent(), cod.parent());
        self.images.iter().all(|&y| cod.contains(y))
            && dom.elements().iter().all(|&a| {
                dom.elements()
                    .iter()
                    .all(|&b| self.apply(dom, g.mul(a, b)) == q.mul(self.apply(dom, a), self.apply(dom, b)))
            })
    }

    pub fn is_bijective_onto(&self, cod: &Subgroup) -> bool {
        let mut v = self.images.clone();
        v.sort_unstable();
        v == cod.elements()
    }

    /// Inverse of a bijection `dom → cod`, as a map on `cod`.
    pub fn inverse(&self, dom: &Subgroup, cod: &Subgroup) -> GroupMap {
        let mut inv = vec![0; cod.order()];
        for (i, &y) in self.images.iter().enumerate() {
            inv[cod.pos_unchecked(y)] = dom.elements()[i];
        }
        GroupMap { images: inv, kind: self.kind }
    }

    /// `self ∘ other`, where `other: A → dom(self)`.
    pub fn after(&self, dom: &Subgroup, other: &GroupMap) -> GroupMap {
        GroupMap { images: other.images.iter().map(|&y| self.apply(dom, y)).collect(), kind: self.kind }
    }
}

const NONE: u32 = u32::MAX;

struct MapSearch<'a> {
    dom: &'a Subgroup,
    cod: &'a Subgroup,
    gens: Vec<usize>,
    candidates: Vec<Vec<usize>>,
    injective: bool,
}

struct Scratch {
    img: Vec<u32>,
    stamp: Vec<u32>,
    round: u32,
    queue: Vec<usize>,
    assigned: Vec<usize>,
}

impl<'a> MapSearch<'a> {
    fn new(dom: &'a Subgroup, cod: &'a Subgroup, injective: bool) -> Self {
        let (g, q) = (dom.parent(), cod.parent());
        let gens = dom.generators().to_vec();
        let candidates = gens
            .iter()
            .map(|&x| {
                let o = g.element_order(x);
                cod.elements()
                    .iter()
                    .copied()
                    .filter(|&y| {
                        let p = q.element_order(y);
                        if injective {
                            p == o
                        } else {
                            o % p == 0
                        }
                    })
                    .collect()
            })
            .collect();
        MapSearch { dom, cod, gens, candidates, injective }
    }

    fn scratch(&self) -> Scratch {
        Scratch {
            img: vec![NONE; self.dom.order()],
            stamp: vec![0; self.cod.parent().order()],
            round: 0,
            queue: Vec::with_capacity(self.dom.order()),
            assigned: Vec::with_capacity(self.gens.len()),
        }
    }

    /// Defines the map on the subgroup generated by the assigned generators and
    /// checks every Cayley edge; with `injective` also checks injectivity.
    fn extend(&self, s: &mut Scratch) -> bool {
        let (g, q) = (self.dom.parent(), self.cod.parent());
        s.img.iter_mut().for_each(|v| *v = NONE);
        s.round = s.round.wrapping_add(1);
        if s.round == 0 {
            s.stamp.iter_mut().for_each(|v| *v = 0);
            s.round = 1;
        }
        let e = g.identity();
        s.img[self.dom.pos_unchecked(e)] = q.identity() as u32;
        s.stamp[q.identity()] = s.round;
        s.queue.clear();
        s.queue.push(e);
        let mut head = 0;
        while head < s.queue.len() {
            let x = s.queue[head];
            head += 1;
            let ix = s.img[self.dom.pos_unchecked(x)] as usize;
            for (i, &gen) in self.gens[..s.assigned.len()].iter().enumerate() {
                let y = g.mul(x, gen);
                let v = q.mul(ix, s.assigned[i]) as u32;
                let py = self.dom.pos_unchecked(y);
                if s.img[py] == NONE {
                    if self.injective {
                        if s.stamp[v as usize] == s.round {
                            return false;
                        }
                        s.stamp[v as usize] = s.round;
                    }
                    s.img[py] = v;
                    s.queue.push(y);
                } else if s.img[py] != v {
                    return false;
                }
            }
        }
        true
    }

    /// Returns `false` once `visit` asks to stop.
    fn recurse(&self, s: &mut Scratch, visit: &mut dyn FnMut(&[u32]) -> bool) -> bool {
        let k = s.assigned.len();
        if k == self.gens.len() {
            return visit(&s.img);
        }
        for idx in 0..self.candidates[k].len() {
            s.assigned.push(self.candidates[k][idx]);
            let go_on = !self.extend(s) || self.recurse(s, visit);
            s.assigned.pop();
            if !go_on {
                return false;
            }
        }
        true
    }

    fn run_from(&self, first: Option<usize>, visit: &mut dyn FnMut(&[u32]) -> bool) {
        let mut s = self.scratch();
        if self.gens.is_empty() {
            if self.extend(&mut s) {
                visit(&s.img);
            }
            return;
        }
        match first {
            None => {
                self.recurse(&mut s, visit);
            }
            Some(y) => {
                s.assigned.push(y);
                if self.extend(&mut s) {
                    self.recurse(&mut s, visit);
                }
            }
        }
    }

    fn parallel_worthwhile(&self) -> bool {
        !self.gens.is_empty() && self.dom.order() * self.cod.order() >= 4096
    }

    fn collect(&self, kind: MapKind) -> Vec<GroupMap> {
        let to_map = |img: &[u32]| GroupMap { images: img.iter().map(|&v| v as usize).collect(), kind };
        if self.parallel_worthwhile() {
            self.candidates[0]
                .par_iter()
                .map(|&y| {
                    let mut out = Vec::new();
                    self.run_from(Some(y), &mut |img| {
                        out.push(to_map(img));
                        true
                    });
                    out
                })
                .collect::<Vec<_>>()
                .into_iter()
                .flatten()
                .collect()
        } else {
            let mut out = Vec::new();
            self.run_from(None, &mut |img| {
                out.push(to_map(img));
                true
            });
            out
        }
    }

    fn count(&self) -> u64 {
        if self.parallel_worthwhile() {
            self.candidates[0]
                .par_iter()
                .map(|&y| {
                    let mut c = 0u64;
                    self.run_from(Some(y), &mut |_| {
                        c += 1;
                        true
                    });
                    c
                })
                .sum()
        } else {
            let mut c = 0u64;
            self.run_from(None, &mut |_| {
                c += 1;
                true
            });
            c
        }
    }
}

/// All isomorphisms `H → K`, in lexicographic order of generator images.
pub fn enumerate_isomorphisms(h: &Subgroup, k: &Subgroup) -> Vec<GroupMap> {
    if h.order() != k.order() {
        return Vec::new();
    }
    MapSearch::new(h, k, true).collect(MapKind::Iso)
}

/// All homomorphisms `G → Q`.
pub fn enumerate_homs(g: &Subgroup, q: &Subgroup, probe_cap: usize) -> Result<Vec<GroupMap>> {
    cap_check("target group order", q.order(), probe_cap)?;
    Ok(MapSearch::new(g, q, false).collect(MapKind::Hom))
}

pub fn count_homs(g: &Subgroup, q: &Subgroup, probe_cap: usize) -> Result<u64> {
    cap_check("target group order", q.order(), probe_cap)?;
    Ok(MapSearch::new(g, q, false).count())
}

/// Calls `visit` with the image array of every homomorphism `G → Q`, sequentially.
pub fn for_each_hom(g: &Subgroup, q: &Subgroup, mut visit: impl FnMut(&[u32])) {
    MapSearch::new(g, q, false).run_from(None, &mut |img| {
        visit(img);
        true
    })
}

/// Least isomorphism `H → K`, if the two are isomorphic.
pub fn first_isomorphism(h: &Subgroup, k: &Subgroup) -> Option<GroupMap> {
    if h.order() != k.order() {
        return None;
    }
    let mut found = None;
    MapSearch::new(h, k, true).run_from(None, &mut |img| {
        found = Some(GroupMap { images: img.iter().map(|&v| v as usize).collect(), kind: MapKind::Iso });
        false
    });
    found
}

/// Extends `sources[i] ↦ targets[i]` to a homomorphism on `dom`, if the sources
/// generate `dom` and the assignment is consistent.
pub fn extend_homomorphism(dom: &Subgroup, cod: &Subgroup, sources: &[usize], targets: &[usize]) -> Option<GroupMap> {
    let (g, q) = (dom.parent(), cod.parent());
    if sources.len() != targets.len()
        || sources.iter().any(|&x| x >= g.order() || !dom.contains(x))
        || targets.iter().any(|&y| y >= q.order() || !cod.contains(y))
    {
        return None;
    }
    let mut img = vec![NONE; dom.order()];
    img[dom.pos_unchecked(g.identity())] = q.identity() as u32;
    let mut queue = vec![g.identity()];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        let ix = img[dom.pos_unchecked(x)] as usize;
        for (&s, &t) in sources.iter().zip(targets) {
            let y = g.mul(x, s);
            let v = q.mul(ix, t) as u32;
            let py = dom.pos_unchecked(y);
            if img[py] == NONE {
                img[py] = v;
                queue.push(y);
            } else if img[py] != v {
                return None;
            }
        }
    }
    if queue.len() != dom.order() {
        return None;
    }
    Some(GroupMap { images: img.into_iter().map(|v| v as usize).collect(), kind: MapKind::Hom })
}

/// `Aut(H)` with its inner automorphisms and the cosets forming `Out(H)`.
#[derive(Debug, Clone)]
pub struct OutGroup {
    sub: Subgroup,
    auts: Vec<GroupMap>,
    index: HashMap<Vec<usize>, usize>,
    inner: Vec<usize>,
    coset_of: Vec<usize>,
    cosets: Vec<Vec<usize>>,
}

/// Computes `Aut(H)`, `Inn(H)` and `Out(H)`.
pub fn aut_group(h: &Subgroup, cap: usize) -> Result<OutGroup> {
    cap_check("group order for automorphism enumeration", h.order(), cap)?;
    let auts: Vec<GroupMap> = MapSearch::new(h, h, true).collect(MapKind::Aut);
    let gens = h.generators().to_vec();
    let index: HashMap<Vec<usize>, usize> = auts
        .iter()
        .enumerate()
        .map(|(i, a)| (gens.iter().map(|&x| a.apply(h, x)).collect(), i))
        .collect();
    let g = h.parent();
    let mut inner: Vec<usize> = h
        .elements()
        .iter()
        .map(|&y| index[&gens.iter().map(|&x| g.conj(y, x)).collect::<Vec<_>>()])
        .collect();
    inner.sort_unstable();
    inner.dedup();
    let mut out = OutGroup { sub: h.clone(), auts, index, inner, coset_of: Vec::new(), cosets: Vec::new() };
    let mut coset_of = vec![usize::MAX; out.auts.len()];
    let mut cosets = Vec::new();
    for a in 0..out.auts.len() {
        if coset_of[a] != usize::MAX {
            continue;
        }
        let mut members: Vec<usize> = out.inner.iter().map(|&i| out.compose(a, i)).collect();
        members.sort_unstable();
        for &m in &members {
            coset_of[m] = cosets.len();
        }
        cosets.push(members);
    }
    out.coset_of = coset_of;
    out.cosets = cosets;
    Ok(out)
}

impl OutGroup {
    pub fn sub(&self) -> &Subgroup {
        &self.sub
    }

    pub fn auts(&self) -> &[GroupMap] {
        &self.auts
    }

    pub fn aut(&self, i: usize) -> &GroupMap {
        &self.auts[i]
    }

    pub fn aut_order(&self) -> usize {
        self.auts.len()
    }

    pub fn out_order(&self) -> usize {
        self.cosets.len()
    }

    pub fn inner(&self) -> &[usize] {
        &self.inner
    }

    pub fn cosets(&self) -> &[Vec<usize>] {
        &self.cosets
    }

    pub fn coset_of(&self, a: usize) -> usize {
        self.coset_of[a]
    }

    /// Least automorphism in a coset.
    pub fn coset_rep(&self, c: usize) -> usize {
        self.cosets[c][0]
    }

    #[inline]
    pub fn apply(&self, a: usize, x: usize) -> usize {
        self.auts[a].apply(&self.sub, x)
    }

    /// Index of the automorphism taking each canonical generator `x` to `f(x)`.
    pub fn lookup_by(&self, f: impl Fn(usize) -> usize) -> Option<usize> {
        let key: Vec<usize> = self.sub.generators().iter().map(|&x| f(x)).collect();
        self.index.get(&key).copied()
    }

    /// Index of a map given as a full image array, if it is an automorphism.
    pub fn lookup(&self, map: &GroupMap) -> Option<usize> {
        self.lookup_by(|x| map.apply(&self.sub, x))
    }

    pub fn identity(&self) -> usize {
        self.lookup_by(|x| x).expect("identity is an automorphism")
    }

    /// `a ∘ b`.
    pub fn compose(&self, a: usize, b: usize) -> usize {
        self.lookup_by(|x| self.apply(a, self.apply(b, x))).expect("closed under composition")
    }

    pub fn inverse(&self, a: usize) -> usize {
        let inv = self.auts[a].inverse(&self.sub, &self.sub);
        self.lookup(&inv).expect("closed under inverse")
    }

    pub fn out_identity(&self) -> usize {
        self.coset_of(self.identity())
    }

    pub fn out_mul(&self, c: usize, d: usize) -> usize {
        self.coset_of(self.compose(self.coset_rep(c), self.coset_rep(d)))
    }

    pub fn out_inv(&self, c: usize) -> usize {
        self.coset_of(self.inverse(self.coset_rep(c)))
    }

    /// Multiplication table on coset indices.
    pub fn coset_law(&self) -> Vec<Vec<usize>> {
        (0..self.out_order()).map(|c| (0..self.out_order()).map(|d| self.out_mul(c, d)).collect()).collect()
    }

    /// Order of an automorphism.
    pub fn aut_element_order(&self, a: usize) -> usize {
        let id = self.identity();
        let mut x = a;
        let mut k = 1;
        while x != id {
            x = self.compose(x, a);
            k += 1;
        }
        k
    }

    pub fn out_element_order(&self, c: usize) -> usize {
        let id = self.out_identity();
        let mut x = c;
        let mut k = 1;
        while x != id {
            x = self.out_mul(x, c);
            k += 1;
        }
        k
    }

    /// Subgroup of `Aut(H)` generated by `gens`, sorted.
    pub fn aut_closure(&self, gens: &[usize]) -> Vec<usize> {
        close_indices(self.identity(), gens, |a, b| self.compose(a, b))
    }

    /// Subgroup of `Out(H)` generated by `gens`, sorted.
    pub fn out_closure(&self, gens: &[usize]) -> Vec<usize> {
        close_indices(self.out_identity(), gens, |a, b| self.out_mul(a, b))
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.aut_order();
        (0..n).all(|a| (0..a).all(|b| self.compose(a, b) == self.compose(b, a)))
    }
}

/// Closure of `gens` under a finite group law, sorted.
pub(crate) fn close_indices(identity: usize, gens: &[usize], mul: impl Fn(usize, usize) -> usize) -> Vec<usize> {
    let mut seen = std::collections::HashSet::from([identity]);
    let mut queue = vec![identity];
    while let Some(x) = queue.pop() {
        for &g in gens {
            let y = mul(x, g);
            if seen.insert(y) {
                queue.push(y);
            }
        }
    }
    let mut v: Vec<usize> = seen.into_iter().collect();
    v.sort_unstable();
    v
}

/// Images of `Aut_{G1}(H)` and `N_{G1}(H)` in `Aut(H)` and `Out(H)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestrictionImages {
    /// Indices into `Aut(G1)` of the automorphisms with `α(H) = H`.
    pub aut_g1_h: Vec<usize>,
    /// Indices into `Aut(H)`.
    pub aut_bar: Vec<usize>,
    /// Indices into `Out(H)`.
    pub aut_tilde: Vec<usize>,
    /// Indices into `Aut(H)` of `τ_{x⁻¹}|_H` for `x ∈ N_{G1}(H)`.
    pub n_bar: Vec<usize>,
    pub n_tilde: Vec<usize>,
}

fn sorted_dedup(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v.dedup();
    v
}

/// `aut_g1` must be the automorphism structure of the whole base group.
pub fn restriction_images(aut_g1: &OutGroup, out_h: &OutGroup) -> Result<RestrictionImages> {
    let g1 = aut_g1.sub().parent();
    let h = out_h.sub();
    let aut_g1_h: Vec<usize> = (0..aut_g1.aut_order())
        .filter(|&a| h.elements().iter().all(|&x| h.contains(aut_g1.apply(a, x))))
        .collect();
    let aut_bar = sorted_dedup(
        aut_g1_h
            .iter()
            .map(|&a| out_h.lookup_by(|x| aut_g1.apply(a, x)).expect("restriction is an automorphism"))
            .collect(),
    );
    let n = normalizer(g1, h)?;
    let n_bar = sorted_dedup(
        n.elements()
            .iter()
            .map(|&x| out_h.lookup_by(|y| g1.conj(g1.inv(x), y)).expect("conjugation is an automorphism"))
            .collect(),
    );
    let aut_tilde = sorted_dedup(aut_bar.iter().map(|&a| out_h.coset_of(a)).collect());
    let n_tilde = sorted_dedup(n_bar.iter().map(|&a| out_h.coset_of(a)).collect());
    Ok(RestrictionImages { aut_g1_h, aut_bar, aut_tilde, n_bar, n_tilde })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{subgroup_closure, Group};
    use crate::named::{cyclic, dihedral, direct_product, elementary_abelian};

    fn whole(g: crate::group::FiniteGroup) -> (Group, Subgroup) {
        let g = g.into_group();
        let s = Subgroup::whole(&g);
        (g, s)
    }

    #[test]
    fn iso_counts() {
        let (_, c5) = whole(cyclic(5).unwrap());
        assert_eq!(enumerate_isomorphisms(&c5, &c5).len(), 4);
        let (_, v) = whole(elementary_abelian(2, 2).unwrap());
        let isos = enumerate_isomorphisms(&v, &v);
        assert_eq!(isos.len(), 6);
        assert!(isos.iter().all(|m| m.is_hom(&v, &v) && m.is_bijective_onto(&v)));
        let (_, c2) = whole(cyclic(2).unwrap());
        let (_, c3) = whole(cyclic(3).unwrap());
        assert!(enumerate_isomorphisms(&c2, &c3).is_empty());
    }

    #[test]
    fn aut_structures() {
        let (_, c8) = whole(cyclic(8).unwrap());
        let out = aut_group(&c8, 128).unwrap();
        assert_eq!(out.aut_order(), 4);
        assert_eq!(out.inner().len(), 1);
        assert!((0..4).all(|c| out.out_element_order(c) <= 2));
        let (_, v) = whole(elementary_abelian(2, 2).unwrap());
        let out = aut_group(&v, 128).unwrap();
        assert_eq!(out.out_order(), 6);
        assert!(!out.is_abelian());
        let (_, t) = whole(cyclic(1).unwrap());
        assert_eq!(aut_group(&t, 128).unwrap().aut_order(), 1);
        let (_, d8) = whole(dihedral(8).unwrap());
        let out = aut_group(&d8, 128).unwrap();
        assert_eq!(out.aut_order(), 8);
        assert_eq!(out.inner().len(), 4);
        assert_eq!(out.out_order(), 2);
    }

    #[test]
    fn coset_law_is_quotient_map() {
        let (_, d8) = whole(dihedral(8).unwrap());
        let out = aut_group(&d8, 128).unwrap();
        let law = out.coset_law();
        for a in 0..out.aut_order() {
            for b in 0..out.aut_order() {
                assert_eq!(out.coset_of(out.compose(a, b)), law[out.coset_of(a)][out.coset_of(b)]);
            }
        }
    }

    #[test]
    fn hom_counts() {
        let (_, c6) = whole(cyclic(6).unwrap());
        let (_, c4) = whole(cyclic(4).unwrap());
        assert_eq!(count_homs(&c6, &c4, 60).unwrap(), 2);
        let (_, t) = whole(cyclic(1).unwrap());
        let (_, d8) = whole(dihedral(8).unwrap());
        assert_eq!(count_homs(&d8, &t, 60).unwrap(), 1);
        let (_, v) = whole(elementary_abelian(2, 2).unwrap());
        let (_, c2) = whole(cyclic(2).unwrap());
        let homs = enumerate_homs(&v, &c2, 60).unwrap();
        assert_eq!(homs.len(), 4);
        assert!(homs.iter().all(|m| m.is_hom(&v, &c2)));
        assert!(count_homs(&v, &d8, 4).is_err());
    }

    #[test]
    fn d8_klein_restrictions() {
        let (g, d8) = whole(dihedral(8).unwrap());
        let e = |s: &str| g.parse_element(s).unwrap();
        let klein = subgroup_closure(&g, &[e("c"), e("r2")]);
        let aut_g1 = aut_group(&d8, 128).unwrap();
        let out_h = aut_group(&klein, 128).unwrap();
        let r = restriction_images(&aut_g1, &out_h).unwrap();
        assert_eq!(r.n_bar.len(), 2);
        let cr = g.mul(e("c"), e("r"));
        let tau = out_h.lookup_by(|x| g.conj(cr, x)).unwrap();
        assert!(r.n_bar.contains(&tau));
        assert_eq!(r.aut_bar, r.n_bar);
    }

    #[test]
    fn central_factor_restrictions() {
        let g = direct_product(&cyclic(11).unwrap(), &cyclic(2).unwrap()).unwrap().into_group();
        let c11 = subgroup_closure(&g, &[1]);
        let aut_g1 = aut_group(&Subgroup::whole(&g), 128).unwrap();
        let out_h = aut_group(&c11, 128).unwrap();
        let r = restriction_images(&aut_g1, &out_h).unwrap();
        assert_eq!(r.n_tilde.len(), 1);
        assert_eq!(r.aut_tilde.len(), 10);
    }
}
