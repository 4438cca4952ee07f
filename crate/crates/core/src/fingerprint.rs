//! Homomorphism counts from an HNN-extension into small finite groups.
//!
//! A homomorphism `HNN(G1, H, K, f, t) → Q` is a pair `(φ, q)` with
//! `φ ∈ Hom(G1, Q)` and `q φ(h) q⁻¹ = φ(f(h))` for every generator `h` of `H`.
//! Groups with isomorphic profinite completions have the same counts for every
//! `Q`, so a differing count separates them. Equal counts prove nothing.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{cap_check, Error, Result};
use crate::group::{FiniteGroup, Group, Subgroup};
use crate::hnn::HnnData;
use crate::morphisms::{first_isomorphism, for_each_hom};
use crate::named::{
    alternating, cyclic, dicyclic, dihedral, direct_product, elementary_abelian, gcd, semidirect_cyclic, symmetric,
};

/// A labelled probe group.
#[derive(Debug, Clone)]
pub struct Probe {
    pub label: String,
    pub group: Group,
}

/// Probe groups sorted by `(order, label)`, pairwise non-isomorphic.
#[derive(Debug, Clone)]
pub struct ProbeSet {
    pub probes: Vec<Probe>,
    pub order_bound: usize,
}

fn order_profile(g: &FiniteGroup) -> Vec<usize> {
    let mut v: Vec<usize> = (0..g.order()).map(|x| g.element_order(x)).collect();
    v.sort_unstable();
    v
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn candidates(bound: usize) -> Vec<FiniteGroup> {
    let mut out: Vec<FiniteGroup> = Vec::new();
    let mut push = |g: Result<FiniteGroup>| out.extend(g.ok().filter(|g| g.order() <= bound));
    for n in 1..=bound {
        push(cyclic(n));
    }
    for n in (6..=bound).step_by(2) {
        push(dihedral(n));
    }
    for n in (8..=bound).step_by(4) {
        push(dicyclic(n));
    }
    for n in 3..=5 {
        push(symmetric(n));
        push(alternating(n + 1));
    }
    for p in (2..=bound).filter(|&p| is_prime(p)) {
        let mut k = 2;
        while p.pow(k as u32) <= bound {
            push(elementary_abelian(p, k));
            k += 1;
        }
    }
    for a in 2..=bound {
        for b in (a..=bound / a).filter(|b| b % a == 0) {
            if let (Ok(x), Ok(y)) = (cyclic(a), cyclic(b)) {
                push(direct_product(&x, &y));
            }
        }
    }
    for n in 3..=bound {
        for m in 2..=bound / n {
            for s in 2..n {
                if gcd(s, n) == 1 && (1..m).all(|j| s.pow(j as u32) % n != 1) && s.pow(m as u32) % n == 1 {
                    push(semidirect_cyclic(n, m, s));
                }
            }
        }
    }
    let small: Vec<FiniteGroup> = out.iter().filter(|g| !g.is_abelian() && g.order() * 2 <= bound).cloned().collect();
    for g in &small {
        for c in [2, 3].into_iter().filter(|c| g.order() * c <= bound) {
            out.extend(cyclic(c).and_then(|x| direct_product(&x, g)));
        }
    }
    out
}

impl ProbeSet {
    /// The default catalog up to `order_bound`.
    pub fn catalog(order_bound: usize) -> Self {
        let mut set = ProbeSet { probes: Vec::new(), order_bound };
        set.extend(candidates(order_bound));
        set
    }

    /// Adds groups not isomorphic to an existing probe, labelled by their names.
    pub fn extend(&mut self, groups: impl IntoIterator<Item = FiniteGroup>) {
        for g in groups {
            let label = g.to_string();
            self.add(label, g);
        }
    }

    /// Adds one probe unless it is too large or isomorphic to an existing one.
    pub fn add(&mut self, label: impl Into<String>, g: FiniteGroup) -> bool {
        if g.order() > self.order_bound {
            return false;
        }
        let profile = order_profile(&g);
        let g = g.into_group();
        let whole = Subgroup::whole(&g);
        let seen = self.probes.iter().any(|p| {
            p.group.order() == g.order()
                && order_profile(&p.group) == profile
                && first_isomorphism(&whole, &Subgroup::whole(&p.group)).is_some()
        });
        if seen {
            return false;
        }
        let probe = Probe { label: label.into(), group: g };
        let key = |p: &Probe| (p.group.order(), p.label.clone());
        let at = self.probes.partition_point(|p| key(p) < key(&probe));
        self.probes.insert(at, probe);
        true
    }

    pub fn len(&self) -> usize {
        self.probes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probes.is_empty()
    }

    pub fn labels(&self) -> Vec<String> {
        self.probes.iter().map(|p| p.label.clone()).collect()
    }
}

fn q_count(q: &FiniteGroup, pairs: &[(u32, u32)]) -> u64 {
    (0..q.order())
        .filter(|&x| pairs.iter().all(|&(a, b)| q.conj(x, a as usize) == b as usize))
        .count() as u64
}

fn count_over(d: &HnnData, q: &FiniteGroup, homs: &[u32]) -> u64 {
    let n = d.base.order();
    let gens = d.h.generators();
    let targets: Vec<usize> = gens.iter().map(|&h| d.apply_f(h)).collect();
    let mut cache: HashMap<Vec<(u32, u32)>, u64> = HashMap::new();
    let mut total = 0u64;
    for phi in homs.chunks_exact(n.max(1)) {
        let key: Vec<(u32, u32)> = gens.iter().zip(&targets).map(|(&h, &k)| (phi[h], phi[k])).collect();
        total += *cache.entry(key).or_insert_with_key(|key| q_count(q, key));
    }
    total
}

fn hom_table(g1: &Group, q: &Group) -> Vec<u32> {
    let mut flat = Vec::new();
    for_each_hom(&Subgroup::whole(g1), &Subgroup::whole(q), |img| flat.extend_from_slice(img));
    flat
}

/// `|Hom(HNN(d), Q)|`.
pub fn hom_count_hnn(d: &HnnData, q: &Group, probe_cap: usize) -> Result<u64> {
    cap_check("probe group order", q.order(), probe_cap)?;
    Ok(count_over(d, q, &hom_table(&d.base, q)))
}

/// Homomorphism counts keyed by probe label, in probe order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FingerprintVector {
    pub order_bound: usize,
    pub entries: Vec<FingerprintEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FingerprintEntry {
    pub probe: String,
    pub order: usize,
    pub count: u64,
}

impl FingerprintVector {
    pub fn get(&self, probe: &str) -> Option<u64> {
        self.entries.iter().find(|e| e.probe == probe).map(|e| e.count)
    }
}

/// `Hom(G1, Q)` for every probe, reused across extensions of one base.
pub struct Fingerprinter {
    base: Group,
    probes: ProbeSet,
    homs: Vec<Vec<u32>>,
}

impl Fingerprinter {
    pub fn new(base: &Group, probes: ProbeSet) -> Self {
        let homs = probes.probes.par_iter().map(|p| hom_table(base, &p.group)).collect();
        Fingerprinter { base: base.clone(), probes, homs }
    }

    pub fn probes(&self) -> &ProbeSet {
        &self.probes
    }

    pub fn fingerprint(&self, d: &HnnData) -> Result<FingerprintVector> {
        if !d.base.same_law(&self.base) {
            return Err(Error::BaseMismatch);
        }
        let entries = self
            .probes
            .probes
            .par_iter()
            .zip(&self.homs)
            .map(|(p, homs)| FingerprintEntry {
                probe: p.label.clone(),
                order: p.group.order(),
                count: count_over(d, &p.group, homs),
            })
            .collect();
        Ok(FingerprintVector { order_bound: self.probes.order_bound, entries })
    }
}

/// Counts for every probe.
pub fn fingerprint(d: &HnnData, probes: &ProbeSet) -> Result<FingerprintVector> {
    Fingerprinter::new(&d.base, probes.clone()).fingerprint(d)
}

/// Outcome of comparing two fingerprints over the same probes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result")]
pub enum Comparison {
    Equal { order_bound: usize },
    FirstDifference { probe: String, order: usize, a: u64, b: u64 },
}

impl Comparison {
    pub fn is_equal(&self) -> bool {
        matches!(self, Comparison::Equal { .. })
    }
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Comparison::Equal { order_bound } => write!(f, "Equal (no separating probe up to order {order_bound})"),
            Comparison::FirstDifference { probe, .. } => write!(f, "FirstDifference({probe})"),
        }
    }
}

/// The least probe with differing counts, if any.
pub fn compare(a: &FingerprintVector, b: &FingerprintVector) -> Comparison {
    a.entries
        .iter()
        .zip(&b.entries)
        .find(|(x, y)| x.count != y.count)
        .map_or(Comparison::Equal { order_bound: a.order_bound.min(b.order_bound) }, |(x, y)| {
            Comparison::FirstDifference { probe: x.probe.clone(), order: x.order, a: x.count, b: y.count }
        })
}
