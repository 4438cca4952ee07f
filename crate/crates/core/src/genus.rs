//! Genus of an HNN-extension over a finite base group among HNN-extensions
//! with the same base.
//!
//! Every extension is handled through the image `Ñ_G(H)` of the normalizer of
//! `H` in `Out(H)`. The genus is contained in the set of isomorphism classes
//! met by `f̃ · Ñ_G(H)` (the envelope) and contains `G` itself. A fixed list of
//! certificates is tried in order; the first one whose hypotheses verify
//! decides the value, and otherwise the envelope is narrowed by discarding
//! classes whose own certificates exclude `G`.
//!
//! Normal case, in order:
//!
//! 1. `|Out(H)| ≤ 2`
//! 2. `Ñ_G1(H) = Out(H)`
//! 3. `f̃ ∈ Ñ_G1(H)`
//! 4. `Ñ_G1(H) = 1` and `Aut(H)` abelian: `φ(|f̃|)/2` classes for `|f̃| ≥ 3`
//! 5. one of `f ∈ Āut_G1(H)`, `N̄_G1(H) = Inn(H)`, `H ≤ Z(G1)`: the classes
//!    met by generators of the cyclic quotient `Ñ_G(H)/Ñ_G1(H)`
//! 6. envelope of size 1
//! 7. exclusion
//!
//! Non-conjugate case: `Ñ_G(H) = Ñ_G1(H)`, `f` extends to `Aut(G1)`,
//! `N(K) = K·C(K)` or `N(H) = H·C(H)`, envelope, exclusion.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::base::{BaseGroup, SubgroupInfo};
use crate::error::Result;
use crate::group::{center, centralizer, is_conjugate_subgroups, product_subgroup, Subgroup};
use crate::hnn::gamma::double_coset_labels;
use crate::hnn::{iso_class_count, normal_form, HnnData, HnnRecord, IsoSet};
use crate::morphisms::{GroupMap, MapKind, OutGroup};

/// How `Ñ_G(H)` was generated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Construction {
    /// `⟨Ñ_G1(H), f̃⟩`.
    Normal,
    /// `⟨Ñ_G1(H), f̃⁻¹ Ñ_G1(K) f̃⟩`.
    NonConjugate,
}

/// The image of `N_G(H)` in `Aut(H)` and `Out(H)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NOutData {
    /// The subgroup `H` whose automorphisms are indexed, after normalization.
    #[serde(rename = "H")]
    pub h: Vec<usize>,
    pub construction: Construction,
    /// Indices into `Aut(H)`.
    pub n_bar_g: Vec<usize>,
    /// Indices into `Out(H)`.
    pub n_tilde_g1: Vec<usize>,
    pub n_tilde_g: Vec<usize>,
    /// `|Ñ_G(H)| / |Ñ_G1(H)|` when `Ñ_G1(H)` is normal in `Ñ_G(H)`.
    pub quotient_order: Option<usize>,
}

fn normalized(d: &HnnData) -> Result<Option<(HnnData, usize)>> {
    if d.is_normal() {
        return Ok(Some((d.clone(), d.base.identity())));
    }
    if is_conjugate_subgroups(&d.base, &d.h, &d.k).is_none() {
        return Ok(None);
    }
    normal_form(d).map(Some)
}

fn normal_in(out: &OutGroup, sub: &[usize], ambient: &[usize]) -> bool {
    ambient.iter().all(|&x| {
        let xi = out.out_inv(x);
        sub.iter().all(|&y| sub.binary_search(&out.out_mul(out.out_mul(x, y), xi)).is_ok())
    })
}

fn cosets_image(out: &OutGroup, auts: &[usize]) -> Vec<usize> {
    let set: BTreeSet<usize> = auts.iter().map(|&a| out.coset_of(a)).collect();
    set.into_iter().collect()
}

/// `Ñ_G(H)` for `G = HNN(d)`; conjugate associated subgroups are normalized first.
pub fn n_out_image(base: &BaseGroup, d: &HnnData) -> Result<NOutData> {
    let g = base.group();
    if let Some((n, _)) = normalized(d)? {
        let info = base.info(&n.h)?;
        let out = &info.out;
        let fa = out.lookup(&n.f).expect("f is an automorphism of H");
        let mut gens = info.restriction.n_bar.clone();
        gens.push(fa);
        let n_bar_g = out.aut_closure(&gens);
        return Ok(finish(out, &info, n.h.elements().to_vec(), Construction::Normal, n_bar_g));
    }
    let info = base.info(&d.h)?;
    let out = &info.out;
    let nk = base.info(&d.k)?.normalizer.clone();
    let finv = d.f_inverse();
    let mut gens = info.restriction.n_bar.clone();
    for &x in nk.elements() {
        let xi = g.inv(x);
        gens.push(
            out.lookup_by(|h| finv.apply(&d.k, g.conj(xi, d.apply_f(h)))).expect("conjugation transports to H"),
        );
    }
    let n_bar_g = out.aut_closure(&gens);
    Ok(finish(out, &info, d.h.elements().to_vec(), Construction::NonConjugate, n_bar_g))
}

fn finish(out: &OutGroup, info: &SubgroupInfo, h: Vec<usize>, construction: Construction, n_bar_g: Vec<usize>) -> NOutData {
    let n_tilde_g = cosets_image(out, &n_bar_g);
    let n_tilde_g1 = info.restriction.n_tilde.clone();
    let quotient_order =
        normal_in(out, &n_tilde_g1, &n_tilde_g).then(|| n_tilde_g.len() / n_tilde_g1.len());
    NOutData { h, construction, n_bar_g, n_tilde_g1, n_tilde_g, quotient_order }
}

/// `Exact(k)` or `Bounds(lo, hi)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value")]
pub enum GenusValue {
    Exact(usize),
    Bounds(usize, usize),
}

impl GenusValue {
    pub fn upper(&self) -> usize {
        match *self {
            GenusValue::Exact(k) => k,
            GenusValue::Bounds(_, hi) => hi,
        }
    }

    pub fn lower(&self) -> usize {
        match *self {
            GenusValue::Exact(k) => k,
            GenusValue::Bounds(lo, _) => lo,
        }
    }
}

impl fmt::Display for GenusValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenusValue::Exact(k) => write!(f, "Exact({k})"),
            GenusValue::Bounds(lo, hi) => write!(f, "Bounds({lo}, {hi})"),
        }
    }
}

/// One certificate evaluation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleCheck {
    pub rule: String,
    pub hypothesis: String,
    pub verdict: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusReport {
    #[serde(flatten)]
    pub value: GenusValue,
    pub rule: String,
    /// Number of isomorphism classes met by `f̃ · Ñ_G(H)`.
    pub envelope: usize,
    pub checks: Vec<RuleCheck>,
    /// Representatives of the genus members when a value above 1 is certified.
    pub companions: Vec<HnnRecord>,
}

pub const RULE_OUT_SMALL: &str = "|Out(H)| ≤ 2";
pub const RULE_N_FULL: &str = "Ñ_G1(H) = Out(H)";
pub const RULE_F_IN_N: &str = "f̃ ∈ Ñ_G1(H)";
pub const RULE_EULER: &str = "Ñ_G1(H) = 1 and Aut(H) abelian: φ(|f̃|)/2";
pub const RULE_CYCLIC_QUOTIENT: &str = "cyclic quotient Ñ_G(H)/Ñ_G1(H)";
pub const RULE_ENVELOPE: &str = "|κ̃(Ñ_G(H))| = 1";
pub const RULE_EXCLUSION: &str = "exclusion of the other envelope classes";
pub const RULE_N_EQUAL: &str = "Ñ_G(H) = Ñ_G1(H)";
pub const RULE_EXTENDS: &str = "f extends to an automorphism of G1";
pub const RULE_SELF_CENTRALIZING: &str = "N(K) = K·C(K) or N(H) = H·C(H)";
pub const RULE_ENVELOPE_ISO: &str = "one class in Γ̄_HK·f·N̄_G(H)";

pub(crate) fn euler_phi(n: usize) -> usize {
    (1..=n).filter(|&u| crate::named::gcd(u, n) == 1).count()
}

/// The result of the certificate list for one map, before exclusion.
struct Certificate {
    checks: Vec<RuleCheck>,
    /// First certificate fixing the value, with the value.
    exact: Option<(usize, &'static str)>,
    /// Classes that may share the genus.
    possible: BTreeSet<usize>,
    envelope: usize,
    companions: Vec<usize>,
}

impl Certificate {
    fn new() -> Self {
        Certificate { checks: Vec::new(), exact: None, possible: BTreeSet::new(), envelope: 0, companions: Vec::new() }
    }

    fn check(&mut self, rule: &'static str, hypothesis: impl Into<String>, verdict: bool) -> bool {
        self.checks.push(RuleCheck { rule: rule.into(), hypothesis: hypothesis.into(), verdict });
        verdict
    }

    fn settle(&mut self, value: usize, rule: &'static str) {
        if self.exact.is_none() {
            self.exact = Some((value, rule));
        }
    }
}

struct NormalContext<'a> {
    info: &'a SubgroupInfo,
    labels: Vec<usize>,
    aut_abelian: bool,
    central: bool,
}

impl<'a> NormalContext<'a> {
    fn new(base: &BaseGroup, h: &Subgroup, info: &'a SubgroupInfo) -> Self {
        NormalContext {
            info,
            labels: double_coset_labels(info),
            aut_abelian: info.out.is_abelian(),
            central: h.is_subset_of(&center(base.group())),
        }
    }

    fn out(&self) -> &OutGroup {
        &self.info.out
    }

    fn certify(&self, fa: usize) -> Certificate {
        let out = self.out();
        let r = &self.info.restriction;
        let ft = out.coset_of(fa);
        let own = self.labels[ft];
        let mut gens = r.n_tilde.clone();
        gens.push(ft);
        let ng = out.out_closure(&gens);
        let envelope: BTreeSet<usize> = ng.iter().map(|&x| self.labels[x]).collect();
        let mut c = Certificate::new();
        c.envelope = envelope.len();
        c.possible = envelope.clone();

        if c.check(RULE_OUT_SMALL, format!("|Out(H)| = {}", out.out_order()), out.out_order() <= 2) {
            c.settle(1, RULE_OUT_SMALL);
        }
        let full = r.n_tilde.len() == out.out_order();
        if c.check(RULE_N_FULL, format!("|Ñ_G1(H)| = {}, |Out(H)| = {}", r.n_tilde.len(), out.out_order()), full) {
            c.settle(1, RULE_N_FULL);
        }
        let inside = r.n_tilde.binary_search(&ft).is_ok();
        if c.check(RULE_F_IN_N, format!("|f̃| = {}", out.out_element_order(ft)), inside) {
            c.settle(1, RULE_F_IN_N);
        }
        let euler = r.n_tilde.len() == 1 && self.aut_abelian;
        let hyp = format!("|Ñ_G1(H)| = {}, Aut(H) abelian: {}", r.n_tilde.len(), self.aut_abelian);
        if c.check(RULE_EULER, hyp, euler) {
            let n = out.out_element_order(ft);
            let units: Vec<usize> = (1..=n.max(1)).filter(|&u| crate::named::gcd(u, n) == 1).collect();
            let mut power = out.identity();
            let mut powers = vec![power];
            for _ in 1..n {
                power = out.compose(power, fa);
                powers.push(power);
            }
            let classes: BTreeSet<usize> = units.iter().map(|&u| self.labels[out.coset_of(powers[u % n])]).collect();
            c.possible = &c.possible & &classes;
            if n <= 2 {
                c.settle(1, RULE_EULER);
            } else {
                c.settle(euler_phi(n) / 2, RULE_EULER);
                if euler_phi(n) >= 4 {
                    c.companions = units.iter().filter(|&&u| 2 * u < n).map(|&u| powers[u]).collect();
                }
            }
        }
        let in_aut_bar = r.aut_bar.binary_search(&fa).is_ok();
        let n_inner = r.n_bar.len() == out.inner().len();
        let hyp = format!("f ∈ Āut_G1(H): {in_aut_bar}, N̄_G1(H) = Inn(H): {n_inner}, H ≤ Z(G1): {}", self.central);
        let quotient = normal_in(out, &r.n_tilde, &ng).then(|| ng.len() / r.n_tilde.len());
        if c.check(RULE_CYCLIC_QUOTIENT, hyp, (in_aut_bar || n_inner || self.central) && quotient.is_some()) {
            let q = quotient.expect("checked");
            let fiber: BTreeSet<usize> = ng
                .iter()
                .filter(|&&x| {
                    let mut y = x;
                    let mut k = 1;
                    while r.n_tilde.binary_search(&y).is_err() {
                        y = out.out_mul(y, x);
                        k += 1;
                    }
                    k == q
                })
                .map(|&x| self.labels[x])
                .collect();
            c.possible = &c.possible & &fiber;
            if q <= 2 || c.possible.len() == 1 {
                c.settle(1, RULE_CYCLIC_QUOTIENT);
            }
        }
        if c.check(RULE_ENVELOPE, format!("|κ̃(Ñ_G(H))| = {}", envelope.len()), envelope.len() == 1) {
            c.settle(1, RULE_ENVELOPE);
        }
        if matches!(c.exact, Some((1, _))) {
            c.possible = BTreeSet::from([own]);
        }
        c
    }
}

fn exclusion(
    own: usize,
    mut c: Certificate,
    other: impl Fn(usize) -> Certificate,
) -> (GenusValue, String, Vec<RuleCheck>, usize, Vec<usize>) {
    if let Some((k, rule)) = c.exact {
        return (GenusValue::Exact(k), rule.to_string(), c.checks, c.envelope, c.companions);
    }
    let mut kept = Vec::new();
    for &label in &c.possible {
        if label == own || other(label).possible.contains(&own) {
            kept.push(label);
        }
    }
    let hyp = format!("{} of {} candidate classes remain", kept.len(), c.possible.len());
    let value = if c.check(RULE_EXCLUSION, hyp, kept.len() == 1) {
        GenusValue::Exact(1)
    } else {
        GenusValue::Bounds(1, kept.len())
    };
    let rule = match value {
        GenusValue::Exact(_) => RULE_EXCLUSION.to_string(),
        GenusValue::Bounds(..) => format!("bounds from the envelope after {RULE_EXCLUSION}"),
    };
    (value, rule, c.checks, c.envelope, Vec::new())
}

fn normal_report(base: &BaseGroup, n: &HnnData, g1: usize, original: &HnnData) -> Result<GenusReport> {
    let info = base.info(&n.h)?;
    let ctx = NormalContext::new(base, &n.h, &info);
    let out = ctx.out();
    let fa = out.lookup(&n.f).expect("f is an automorphism of H");
    let own = ctx.labels[out.coset_of(fa)];
    let cert = ctx.certify(fa);
    let reps: Vec<usize> = {
        let mut first = vec![usize::MAX; ctx.labels.iter().max().map_or(0, |m| m + 1)];
        for (x, &l) in ctx.labels.iter().enumerate() {
            if first[l] == usize::MAX {
                first[l] = x;
            }
        }
        first
    };
    let (value, rule, checks, envelope, companions) =
        exclusion(own, cert, |label| ctx.certify(out.coset_rep(reps[label])));
    let g = base.group();
    let gi = g.inv(g1);
    let companions = companions
        .into_iter()
        .map(|a| {
            let f = GroupMap::from_fn(&n.h, MapKind::Iso, |x| g.conj(gi, out.apply(a, x)));
            HnnData::new(original.h.clone(), original.k.clone(), f, "").expect("companion is an isomorphism").record()
        })
        .collect();
    Ok(GenusReport { value, rule, envelope, checks, companions })
}

struct NonConjugateContext<'a> {
    base: &'a BaseGroup,
    iso: IsoSet,
    labels: Vec<usize>,
    h_self_centralizing: bool,
    k_self_centralizing: bool,
}

fn self_centralizing(base: &BaseGroup, s: &Subgroup) -> Result<bool> {
    let n = base.info(s)?.normalizer.clone();
    let c = centralizer(base.group(), s)?;
    Ok(product_subgroup(base.group(), s, &c).is_some_and(|p| p == n))
}

impl<'a> NonConjugateContext<'a> {
    fn new(base: &'a BaseGroup, d: &HnnData) -> Result<Self> {
        let classes = iso_class_count(base, &d.h, &d.k)?;
        let iso = IsoSet::new(&d.h, &d.k);
        let mut labels = vec![0; iso.len()];
        for (i, o) in classes.orbits.iter().enumerate() {
            for &x in o {
                labels[x] = i;
            }
        }
        Ok(NonConjugateContext {
            base,
            iso,
            labels,
            h_self_centralizing: self_centralizing(base, &d.h)?,
            k_self_centralizing: self_centralizing(base, &d.k)?,
        })
    }

    fn certify(&self, i: usize) -> Result<Certificate> {
        let base = self.base;
        let d = self.iso.data(i);
        let nd = n_out_image(base, &d)?;
        let info = base.info(&d.h)?;
        let out = &info.out;
        let envelope: BTreeSet<usize> = nd
            .n_bar_g
            .iter()
            .map(|&t| {
                let j = self.iso.lookup_by(|x| d.apply_f(out.apply(t, x))).expect("f∘τ lies in Iso(H, K)");
                self.labels[j]
            })
            .collect();
        let mut c = Certificate::new();
        c.envelope = envelope.len();
        c.possible = envelope.clone();
        let equal = nd.n_tilde_g == nd.n_tilde_g1;
        let hyp = format!("|Ñ_G(H)| = {}, |Ñ_G1(H)| = {}", nd.n_tilde_g.len(), nd.n_tilde_g1.len());
        if c.check(RULE_N_EQUAL, hyp, equal) {
            c.settle(1, RULE_N_EQUAL);
        }
        let hg = d.h.generators();
        let extends =
            (0..base.aut().aut_order()).any(|a| hg.iter().all(|&x| base.apply_aut(a, x) == d.apply_f(x)));
        if c.check(RULE_EXTENDS, format!("extension found: {extends}"), extends) {
            c.settle(1, RULE_EXTENDS);
        }
        let hyp = format!("K: {}, H: {}", self.k_self_centralizing, self.h_self_centralizing);
        if c.check(RULE_SELF_CENTRALIZING, hyp, self.k_self_centralizing || self.h_self_centralizing) {
            c.settle(1, RULE_SELF_CENTRALIZING);
        }
        if c.check(RULE_ENVELOPE_ISO, format!("{} classes met", envelope.len()), envelope.len() == 1) {
            c.settle(1, RULE_ENVELOPE_ISO);
        }
        if matches!(c.exact, Some((1, _))) {
            c.possible = BTreeSet::from([self.labels[i]]);
        }
        Ok(c)
    }
}

fn non_conjugate_report(base: &BaseGroup, d: &HnnData) -> Result<GenusReport> {
    let ctx = NonConjugateContext::new(base, d)?;
    let i = ctx.iso.index_of(&d.f).expect("f lies in Iso(H, K)");
    let own = ctx.labels[i];
    let cert = ctx.certify(i)?;
    let mut reps = vec![usize::MAX; ctx.labels.iter().max().map_or(0, |m| m + 1)];
    for (x, &l) in ctx.labels.iter().enumerate() {
        if reps[l] == usize::MAX {
            reps[l] = x;
        }
    }
    let others: Vec<Option<Certificate>> = (0..reps.len())
        .map(|l| if cert.possible.contains(&l) && l != own { ctx.certify(reps[l]).map(Some) } else { Ok(None) })
        .collect::<Result<_>>()?;
    let (value, rule, checks, envelope, _) = exclusion(own, cert, |l| {
        others[l].as_ref().map_or_else(Certificate::new, |c| Certificate {
            checks: Vec::new(),
            exact: c.exact,
            possible: c.possible.clone(),
            envelope: c.envelope,
            companions: Vec::new(),
        })
    });
    Ok(GenusReport { value, rule, envelope, checks, companions: Vec::new() })
}

/// The genus of `HNN(G1, H, K, f)` among HNN-extensions of `G1` with finite associated subgroups.
pub fn genus_report(base: &BaseGroup, d: &HnnData) -> Result<GenusReport> {
    for s in [&d.h, &d.k] {
        base.check(s)?;
    }
    match normalized(d)? {
        Some((n, g1)) => normal_report(base, &n, g1, d),
        None => non_conjugate_report(base, d),
    }
}

/// The genus with the base group allowed to vary; over a finite base this equals [`genus_report`].
pub fn genus_in_class_a(base: &BaseGroup, d: &HnnData) -> Result<GenusReport> {
    let k = k_invariant(base, &d.h, &d.k)?;
    let mut report = genus_report(base, d)?;
    report.rule = format!("{}; k(G1,H,K)={} (finite base)", report.rule, k.value);
    Ok(report)
}

/// The number of base-compatible subgroup pairs together with the two orbit counts bounding it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KInvariant {
    pub value: usize,
    pub l_h: usize,
    pub l_k: usize,
    /// Subgroups in the `Aut(G1)`-orbit of `H`, respectively `K`.
    pub orbit_h: usize,
    pub orbit_k: usize,
}

fn aut_orbit(base: &BaseGroup, s: &Subgroup) -> Vec<Subgroup> {
    let set: BTreeSet<Subgroup> = (0..base.aut().aut_order()).map(|a| base.image_of(a, s)).collect();
    set.into_iter().collect()
}

/// Number of `Aut(G1)`-orbits among the subgroups that `Aut(Ĝ1)` moves `s` to.
/// For a finite base `Ĝ1 = G1`, so the candidates form a single orbit.
fn orbit_count(base: &BaseGroup, candidates: &[Subgroup]) -> usize {
    let mut seen: BTreeSet<&Subgroup> = BTreeSet::new();
    let mut count = 0;
    for s in candidates {
        if seen.contains(s) {
            continue;
        }
        count += 1;
        for a in 0..base.aut().aut_order() {
            if let Some(t) = candidates.iter().find(|t| **t == base.image_of(a, s)) {
                seen.insert(t);
            }
        }
    }
    count
}

pub fn k_invariant(base: &BaseGroup, h: &Subgroup, k: &Subgroup) -> Result<KInvariant> {
    base.check(h)?;
    base.check(k)?;
    let oh = aut_orbit(base, h);
    let ok = aut_orbit(base, k);
    let (l_h, l_k) = (orbit_count(base, &oh), orbit_count(base, &ok));
    Ok(KInvariant { value: 1, l_h, l_k, orbit_h: oh.len(), orbit_k: ok.len() })
}
