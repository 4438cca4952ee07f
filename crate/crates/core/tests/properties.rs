mod common;

use std::sync::OnceLock;

use proptest::prelude::*;

use hnngenus::fingerprint::{Fingerprinter, ProbeSet};
use hnngenus::genus::genus_report;
use hnngenus::group::{normalizer, Subgroup};
use hnngenus::hnn::{build_gamma_bar, gamma_action, GammaBarGroup, HnnData};
use hnngenus::morphisms::{GroupMap, MapKind};
use hnngenus::BaseGroup;

use common::{base, groups_up_to_16, instances, Instance};

struct Fixture {
    name: String,
    base: BaseGroup,
    cases: Vec<(Instance, GammaBarGroup)>,
    fingerprinter: Fingerprinter,
}

fn fixtures() -> &'static [Fixture] {
    static CELL: OnceLock<Vec<Fixture>> = OnceLock::new();
    CELL.get_or_init(|| {
        groups_up_to_16()
            .into_iter()
            .filter(|g| g.order() <= 12)
            .map(|g| {
                let name = g.to_string();
                let b = base(g);
                let cases = instances(&b)
                    .into_iter()
                    .map(|i| {
                        let gb = build_gamma_bar(&b, &i.h, &i.k).unwrap();
                        (i, gb)
                    })
                    .collect();
                let fingerprinter = Fingerprinter::new(b.group(), ProbeSet::catalog(24));
                Fixture { name, base: b, cases, fingerprinter }
            })
            .collect()
    })
}

fn pick<T>(items: &[T], seed: usize) -> &T {
    &items[seed % items.len()]
}

/// Automorphisms of `G1` that fix `H` setwise.
fn stabilizer(b: &BaseGroup, h: &Subgroup) -> Vec<usize> {
    (0..b.aut().aut_order()).filter(|&a| h.elements().iter().all(|&x| h.contains(b.apply_aut(a, x)))).collect()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn group_axioms(gi in any::<usize>(), x in any::<usize>(), y in any::<usize>(), z in any::<usize>()) {
        let fx = pick(fixtures(), gi);
        let g = fx.base.group();
        let n = g.order();
        let (x, y, z) = (x % n, y % n, z % n);
        prop_assert_eq!(g.mul(g.mul(x, y), z), g.mul(x, g.mul(y, z)));
        prop_assert_eq!(g.mul(x, g.identity()), x);
        prop_assert_eq!(g.mul(g.inv(x), x), g.identity());
    }

    /// The identity acts trivially and `(g, α)·((h, β)·f) = (g α(h), αβ)·f` on `Iso(H, H)`.
    #[test]
    fn gamma_action_is_an_action(gi in any::<usize>(), ci in any::<usize>(), s in any::<[usize; 5]>()) {
        let fx = pick(fixtures(), gi);
        let b = &fx.base;
        let g = b.group();
        let (inst, gb) = pick(&fx.cases, ci);
        let h = &inst.h;
        let norm = normalizer(g, h).unwrap();
        let stab = stabilizer(b, h);
        let f = if inst.k == *h { gb.iso_set.map(s[0] % gb.iso_set.len()).clone() } else { GroupMap::identity_on(h) };
        let (g1, g2) = (*pick(norm.elements(), s[1]), *pick(norm.elements(), s[2]));
        let (a1, a2) = (*pick(&stab, s[3]), *pick(&stab, s[4]));
        let id = b.aut().identity();
        prop_assert_eq!(&gamma_action(b, g.identity(), id, h, &f).unwrap().images, &f.images);
        let inner = gamma_action(b, g2, a2, h, &f).unwrap();
        let twice = gamma_action(b, g1, a1, h, &inner).unwrap();
        let combined = gamma_action(b, g.mul(g1, b.apply_aut(a1, g2)), b.aut().compose(a1, a2), h, &f).unwrap();
        prop_assert_eq!(twice.images, combined.images);
    }

    /// `Γ̃_HK` is a group and the swap involution normalizes it.
    #[test]
    fn iota_normalizes_gamma_tilde(gi in any::<usize>(), ci in any::<usize>()) {
        let fx = pick(fixtures(), gi);
        let (_, gb) = pick(&fx.cases, ci);
        prop_assert!(GammaBarGroup::is_closed(&gb.generators));
        prop_assert!(gb.iota_normalizes(), "{}", fx.name);
        if let Some(iota) = &gb.iota {
            let square: Vec<u32> = iota.iter().map(|&i| iota[i as usize]).collect();
            prop_assert!(gb.generators.contains(&square));
        }
    }

    #[test]
    fn genus_sandwich(gi in any::<usize>(), ci in any::<usize>(), fi in any::<usize>()) {
        let fx = pick(fixtures(), gi);
        let (_, gb) = pick(&fx.cases, ci);
        let d = gb.iso_set.data(fi % gb.iso_set.len());
        let r = genus_report(&fx.base, &d).unwrap();
        prop_assert!(1 <= r.value.lower());
        prop_assert!(r.value.lower() <= r.value.upper());
        prop_assert!(r.value.upper() <= r.envelope.max(1), "{}: {:?}", fx.name, r);
    }

    /// Extensions in one `Γ̄_HK`-orbit, and images under automorphisms of `G1`, share fingerprints.
    #[test]
    fn fingerprint_is_an_isomorphism_invariant(gi in any::<usize>(), ci in any::<usize>(), fi in any::<usize>(), ai in any::<usize>()) {
        let fx = pick(fixtures(), gi);
        let b = &fx.base;
        let (_, gb) = pick(&fx.cases, ci);
        let orbits = gb.orbits();
        let orbit = pick(&orbits, fi);
        let first = fx.fingerprinter.fingerprint(&gb.iso_set.data(orbit[0])).unwrap();
        let other = gb.iso_set.data(*pick(orbit, ai));
        prop_assert_eq!(&fx.fingerprinter.fingerprint(&other).unwrap(), &first);
        let a = ai % b.aut().aut_order();
        let (h, k) = (b.image_of(a, &other.h), b.image_of(a, &other.k));
        let moved = GroupMap::from_fn(&h, MapKind::Iso, |x| {
            b.apply_aut(a, other.apply_f(b.apply_aut(b.aut_inverse(a), x)))
        });
        let moved = HnnData::new(h, k, moved, "").unwrap();
        prop_assert_eq!(&fx.fingerprinter.fingerprint(&moved).unwrap(), &first);
    }
}
