#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

use hnngenus::group::{conjugacy_classes_of_subgroups, is_conjugate_subgroups, normalizer, FiniteGroup, Group, Subgroup};
use hnngenus::hnn::{pair_orbits, HnnData, HnnIso};
use hnngenus::morphisms::first_isomorphism;
use hnngenus::named::{cyclic, dicyclic, dihedral, direct_product, elementary_abelian, semidirect_cyclic};
use hnngenus::{BaseGroup, Limits};

/// `(C4 × C2) ⋊ C2` with the C2 acting by `sigma` on `(i, j) ∈ Z4 × Z2`.
fn c4c2_by_c2(name: &str, sigma: fn(usize, usize) -> (usize, usize)) -> FiniteGroup {
    let law = move |x: usize, y: usize| {
        let (a1, b1, c1) = (x % 4, (x / 4) % 2, x / 8);
        let (mut a2, mut b2, c2) = (y % 4, (y / 4) % 2, y / 8);
        if c1 == 1 {
            (a2, b2) = sigma(a2, b2);
        }
        (a1 + a2) % 4 + 4 * ((b1 + b2) % 2) + 8 * ((c1 + c2) % 2)
    };
    FiniteGroup::from_law(16, law, true).unwrap().with_name(name)
}

fn dp(a: FiniteGroup, b: FiniteGroup) -> FiniteGroup {
    direct_product(&a, &b).unwrap()
}

/// One group of every isomorphism type of order at most 16.
pub fn groups_up_to_16() -> Vec<FiniteGroup> {
    let c = |n| cyclic(n).unwrap();
    let mut out: Vec<FiniteGroup> = (1..=16).map(c).collect();
    out.extend([
        elementary_abelian(2, 2).unwrap(),
        dihedral(6).unwrap(),
        dp(c(4), c(2)),
        elementary_abelian(2, 3).unwrap(),
        dihedral(8).unwrap(),
        dicyclic(8).unwrap(),
        elementary_abelian(3, 2).unwrap(),
        dihedral(10).unwrap(),
        dp(c(6), c(2)),
        dihedral(12).unwrap(),
        dicyclic(12).unwrap(),
        hnngenus::named::alternating(4).unwrap(),
        dihedral(14).unwrap(),
        dp(c(8), c(2)),
        dp(c(4), c(4)),
        dp(c(4), elementary_abelian(2, 2).unwrap()),
        elementary_abelian(2, 4).unwrap(),
        dihedral(16).unwrap(),
        dicyclic(16).unwrap(),
        semidirect_cyclic(8, 2, 3).unwrap(),
        semidirect_cyclic(8, 2, 5).unwrap(),
        semidirect_cyclic(4, 4, 3).unwrap(),
        dp(c(2), dihedral(8).unwrap()),
        dp(c(2), dicyclic(8).unwrap()),
        c4c2_by_c2("(C4xC2):C2[a->ab]", |i, j| (i, (i + j) % 2)),
        c4c2_by_c2("C4oD8", |i, j| ((i + 2 * j) % 4, j)),
    ]);
    out.sort_by_key(|g| g.order());
    out
}

pub fn base(g: FiniteGroup) -> BaseGroup {
    BaseGroup::new(g.into_group(), Limits::default()).unwrap()
}

/// An instance `(H, K)` of criterion-style sweeps.
#[derive(Clone)]
pub struct Instance {
    pub h: Subgroup,
    pub k: Subgroup,
}

/// One pair per `Aut(G1)`-orbit of unordered pairs of isomorphic subgroup
/// classes, plus one conjugate non-equal pair `(H, H^x)` per non-normal class.
pub fn instances(b: &BaseGroup) -> Vec<Instance> {
    let g = b.group();
    let (_, orbits) = pair_orbits(b, None).unwrap();
    let mut out: Vec<Instance> = orbits
        .into_iter()
        .filter(|o| o.h.order() == o.k.order() && first_isomorphism(&o.h, &o.k).is_some())
        .map(|o| Instance { h: o.h, k: o.k })
        .collect();
    for class in conjugacy_classes_of_subgroups(g, 256).unwrap() {
        if class.members.len() > 1 {
            out.push(Instance { h: class.members[0].clone(), k: class.members[1].clone() });
        }
    }
    out
}

/// Checks `Φ(t)⁻¹ Φ(h) Φ(t) = Φ(f_a(h))` in `HNN(b)` for every generator `h` of `H_a`,
/// using only the normal form `g s^e g'` of `Φ(t)`.
pub fn relations_hold(base: &BaseGroup, a: &HnnData, b: &HnnData, iso: &HnnIso) -> bool {
    let g = base.group();
    let psi = |x| base.apply_aut(iso.psi, x);
    let fb_inv = b.f_inverse();
    a.h.generators().iter().all(|&h| {
        let u = g.mul(g.inv(iso.left), g.mul(psi(h), iso.left));
        let v = match iso.exponent {
            1 if b.h.contains(u) => b.apply_f(u),
            -1 if b.k.contains(u) => fb_inv.apply(&b.k, u),
            _ => return false,
        };
        g.mul(g.inv(iso.right), g.mul(v, iso.right)) == psi(a.apply_f(h))
    })
}

/// Whether `ψ` restricted to `G1` is a bijective homomorphism.
pub fn psi_is_automorphism(base: &BaseGroup, iso: &HnnIso) -> bool {
    let g = base.group();
    let n = g.order();
    let img: Vec<usize> = (0..n).map(|x| base.apply_aut(iso.psi, x)).collect();
    let distinct: HashSet<usize> = img.iter().copied().collect();
    distinct.len() == n && (0..n).all(|x| (0..n).all(|y| img[g.mul(x, y)] == g.mul(img[x], img[y])))
}

/// Automorphisms of `H` (as image lists over sorted `H`) induced by words in
/// `N_{G1}(H)` and the extra normalizing generator of `HNN(d)`, found by breadth-first search.
pub fn normalizer_image_by_words(d: &HnnData) -> BTreeSet<Vec<usize>> {
    let g = &d.base;
    let h = &d.h;
    let n = normalizer(g, h).unwrap();
    let mut gens: Vec<Vec<usize>> = n.elements().iter().map(|&x| h.elements().iter().map(|&y| g.conj(x, y)).collect()).collect();
    let act = |m: &dyn Fn(usize) -> usize| -> Vec<usize> { h.elements().iter().map(|&y| m(y)).collect() };
    if let Some(x) = is_conjugate_subgroups(g, &d.h, &d.k) {
        // t x⁻¹ normalizes H: (t x⁻¹)⁻¹ y (t x⁻¹) = x f(y) x⁻¹.
        gens.push(act(&|y| g.conj(x, d.apply_f(y))));
    } else {
        // t k t⁻¹ with k ∈ N_{G1}(K) normalizes H: y ↦ f⁻¹(k f(y) k⁻¹).
        let nk = normalizer(g, &d.k).unwrap();
        let finv = d.f_inverse();
        for &k in nk.elements() {
            gens.push(act(&|y| finv.apply(&d.k, g.conj(k, d.apply_f(y)))));
        }
    }
    let pos = |y: usize| h.position(y).unwrap();
    let identity: Vec<usize> = h.elements().to_vec();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::from([identity.clone()]);
    let mut queue = VecDeque::from([identity]);
    while let Some(w) = queue.pop_front() {
        for s in &gens {
            let next: Vec<usize> = w.iter().map(|&y| s[pos(y)]).collect();
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    seen
}

/// Whether two groups are isomorphic.
pub fn isomorphic(a: &Group, b: &Group) -> bool {
    first_isomorphism(&Subgroup::whole(a), &Subgroup::whole(b)).is_some()
}
