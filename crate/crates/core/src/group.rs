//! Finite groups as dense multiplication tables, and their subgroups.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{cap_check, Error, Result};

/// Shared handle to an immutable group.
pub type Group = Arc<FiniteGroup>;

/// Permutation realisation of a group: `elements[x]` is the permutation of element `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermRep {
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
    pub elements: Vec<Vec<usize>>,
}

/// A finite group on the indices `0..order` with a materialised multiplication table.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    identity: usize,
    inverse: Vec<u32>,
    elem_order: Vec<u32>,
    name: Option<String>,
    element_names: Option<Vec<String>>,
    perm: Option<PermRep>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.same_law(other)
    }
}
impl Eq for FiniteGroup {}

/// Validates a square table and builds the group.
pub fn make_group_from_table(order: usize, table: &[Vec<usize>]) -> Result<FiniteGroup> {
    if order == 0 {
        return Err(Error::BadTable("order must be positive".into()));
    }
    if table.len() != order || table.iter().any(|row| row.len() != order) {
        return Err(Error::BadTable(format!("table must be {order}x{order}")));
    }
    let mut flat = Vec::with_capacity(order * order);
    for row in table {
        for &v in row {
            if v >= order {
                return Err(Error::BadTable(format!("entry {v} out of range")));
            }
            flat.push(v as u32);
        }
    }
    FiniteGroup::from_flat(order, flat, true)
}

impl FiniteGroup {
    /// Builds a group from a flat row-major table. With `check` the associativity
    /// of every triple is verified.
    pub fn from_flat(order: usize, table: Vec<u32>, check: bool) -> Result<Self> {
        let n = order;
        let at = |a: usize, b: usize| table[a * n + b] as usize;
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or(Error::NoIdentity)?;
        let mut inverse = vec![0u32; n];
        for x in 0..n {
            let y = (0..n)
                .find(|&y| at(x, y) == identity && at(y, x) == identity)
                .ok_or(Error::NoInverse(x))?;
            inverse[x] = y as u32;
        }
        if check {
            for a in 0..n {
                for b in 0..n {
                    let ab = at(a, b);
                    for c in 0..n {
                        if at(ab, c) != at(a, at(b, c)) {
                            return Err(Error::NotAssociative { a, b, c });
                        }
                    }
                }
            }
        }
        let mut elem_order = vec![0u32; n];
        for x in 0..n {
            let mut k = 1;
            let mut y = x;
            while y != identity {
                y = at(y, x);
                k += 1;
            }
            elem_order[x] = k;
        }
        Ok(FiniteGroup {
            order: n,
            table,
            identity,
            inverse,
            elem_order,
            name: None,
            element_names: None,
            perm: None,
        })
    }

    /// Tabulates `law` on `0..order`.
    pub fn from_law(order: usize, law: impl Fn(usize, usize) -> usize, check: bool) -> Result<Self> {
        let mut table = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                let c = law(a, b);
                if c >= order {
                    return Err(Error::BadTable(format!("product {a}·{b} = {c} out of range")));
                }
                table.push(c as u32);
            }
        }
        Self::from_flat(order, table, check)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn with_element_names(mut self, names: Vec<String>) -> Self {
        debug_assert_eq!(names.len(), self.order);
        self.element_names = Some(names);
        self
    }

    pub(crate) fn with_perm(mut self, perm: PermRep) -> Self {
        self.perm = Some(perm);
        self
    }

    pub fn into_group(self) -> Group {
        Arc::new(self)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    #[inline]
    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn element_order(&self, a: usize) -> usize {
        self.elem_order[a] as usize
    }

    /// `g x g⁻¹`.
    #[inline]
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn pow(&self, x: usize, k: i64) -> usize {
        let m = self.element_order(x) as i64;
        let e = k.rem_euclid(m);
        let mut y = self.identity;
        for _ in 0..e {
            y = self.mul(y, x);
        }
        y
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn perm_rep(&self) -> Option<&PermRep> {
        self.perm.as_ref()
    }

    pub fn element_names(&self) -> Option<&[String]> {
        self.element_names.as_deref()
    }

    pub fn element_name(&self, x: usize) -> String {
        match &self.element_names {
            Some(names) => names[x].clone(),
            None => x.to_string(),
        }
    }

    /// Resolves an element by name, by `1`/`e` for the identity, or by raw index.
    pub fn parse_element(&self, s: &str) -> Option<usize> {
        let s = s.trim();
        if let Some(names) = &self.element_names {
            if let Some(i) = names.iter().position(|n| n == s) {
                return Some(i);
            }
        }
        if s == "1" || s == "e" {
            return Some(self.identity);
        }
        s.parse::<usize>().ok().filter(|&i| i < self.order)
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| (0..self.order).map(|b| self.mul(a, b)).collect())
            .collect()
    }

    /// Same order and same multiplication table.
    pub fn same_law(&self, other: &FiniteGroup) -> bool {
        self.order == other.order && self.table == other.table
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.name {
            Some(n) => write!(f, "{n}"),
            None => write!(f, "group of order {}", self.order),
        }
    }
}

const ABSENT: u32 = u32::MAX;

/// A subgroup of a shared parent group, stored as a sorted element list.
#[derive(Clone)]
pub struct Subgroup {
    parent: Group,
    elements: Vec<usize>,
    pos: Vec<u32>,
    gens: OnceLock<Vec<usize>>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Subgroup").field(&self.elements).finish()
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
            && (Arc::ptr_eq(&self.parent, &other.parent) || self.parent.same_law(&other.parent))
    }
}
impl Eq for Subgroup {}

impl std::hash::Hash for Subgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.elements.hash(state);
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.elements.len(), &self.elements).cmp(&(other.elements.len(), &other.elements))
    }
}

impl Subgroup {
    fn from_mask(parent: &Group, mask: &[bool]) -> Self {
        let elements: Vec<usize> = (0..mask.len()).filter(|&i| mask[i]).collect();
        Self::from_sorted(parent, elements)
    }

    fn from_sorted(parent: &Group, elements: Vec<usize>) -> Self {
        let mut pos = vec![ABSENT; parent.order()];
        for (i, &x) in elements.iter().enumerate() {
            pos[x] = i as u32;
        }
        Subgroup { parent: parent.clone(), elements, pos, gens: OnceLock::new() }
    }

    /// Checks closure and builds the subgroup from an arbitrary element list.
    pub fn from_elements(parent: &Group, elements: &[usize]) -> Result<Self> {
        let n = parent.order();
        let mut mask = vec![false; n];
        for &x in elements {
            if x >= n {
                return Err(Error::NotASubgroup(format!("element {x} out of range")));
            }
            mask[x] = true;
        }
        if !mask[parent.identity()] {
            return Err(Error::NotASubgroup("identity missing".into()));
        }
        for a in 0..n {
            if !mask[a] {
                continue;
            }
            if !mask[parent.inv(a)] {
                return Err(Error::NotASubgroup(format!("not closed under inverse at {a}")));
            }
            for b in 0..n {
                if mask[b] && !mask[parent.mul(a, b)] {
                    return Err(Error::NotASubgroup(format!("not closed at {a}·{b}")));
                }
            }
        }
        Ok(Self::from_mask(parent, &mask))
    }

    pub fn whole(parent: &Group) -> Self {
        Self::from_sorted(parent, (0..parent.order()).collect())
    }

    pub fn trivial(parent: &Group) -> Self {
        Self::from_sorted(parent, vec![parent.identity()])
    }

    pub fn parent(&self) -> &Group {
        &self.parent
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.pos[x] != ABSENT
    }

    /// Position of `x` in the sorted element list.
    #[inline]
    pub fn position(&self, x: usize) -> Option<usize> {
        let p = self.pos[x];
        (p != ABSENT).then_some(p as usize)
    }

    #[inline]
    pub(crate) fn pos_unchecked(&self, x: usize) -> usize {
        self.pos[x] as usize
    }

    pub fn is_whole(&self) -> bool {
        self.order() == self.parent.order()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    /// Canonical generating set: repeatedly adjoin the element of largest order
    /// (least index on ties) outside the current closure.
    pub fn generators(&self) -> &[usize] {
        self.gens.get_or_init(|| {
            let g = &self.parent;
            let mut candidates = self.elements.clone();
            candidates.sort_by_key(|&x| (std::cmp::Reverse(g.element_order(x)), x));
            let mut gens = Vec::new();
            let mut mask = vec![false; g.order()];
            mask[g.identity()] = true;
            let mut count = 1;
            for x in candidates {
                if count == self.order() {
                    break;
                }
                if mask[x] {
                    continue;
                }
                gens.push(x);
                count = close_mask(g, &mut mask, &gens);
            }
            gens
        })
    }

    pub fn is_normal(&self) -> bool {
        let g = &self.parent;
        (0..g.order()).all(|x| self.elements.iter().all(|&h| self.contains(g.conj(x, h))))
    }

    /// `g⁻¹ H g`.
    pub fn conjugate_by(&self, g: usize) -> Subgroup {
        let p = &self.parent;
        let gi = p.inv(g);
        let mut els: Vec<usize> = self.elements.iter().map(|&h| p.conj(gi, h)).collect();
        els.sort_unstable();
        Self::from_sorted(p, els)
    }

    /// Image under a map of the parent given as a full image array.
    pub fn image_under(&self, images: &[usize]) -> Subgroup {
        let mut els: Vec<usize> = self.elements.iter().map(|&h| images[h]).collect();
        els.sort_unstable();
        els.dedup();
        Self::from_sorted(&self.parent, els)
    }

    pub fn element_names(&self) -> Vec<String> {
        self.elements.iter().map(|&x| self.parent.element_name(x)).collect()
    }
}

/// Extends `mask` to the closure of its elements together with `gens`; returns the size.
/// Closing under right multiplication by generators suffices in a finite group.
fn close_mask(g: &FiniteGroup, mask: &mut [bool], gens: &[usize]) -> usize {
    let mut queue: Vec<usize> = (0..mask.len()).filter(|&i| mask[i]).collect();
    let mut count = queue.len();
    for &s in gens {
        if !mask[s] {
            mask[s] = true;
            count += 1;
            queue.push(s);
        }
    }
    while let Some(x) = queue.pop() {
        for &s in gens {
            let y = g.mul(x, s);
            if !mask[y] {
                mask[y] = true;
                count += 1;
                queue.push(y);
            }
        }
    }
    count
}

/// Smallest subgroup containing `seeds`.
pub fn subgroup_closure(g: &Group, seeds: &[usize]) -> Subgroup {
    let mut mask = vec![false; g.order()];
    mask[g.identity()] = true;
    let seeds: Vec<usize> = seeds.iter().copied().filter(|&s| s < g.order()).collect();
    close_mask(g, &mut mask, &seeds);
    Subgroup::from_mask(g, &mask)
}

fn join(g: &Group, a: &Subgroup, x: usize) -> Subgroup {
    let mut gens = a.generators().to_vec();
    gens.push(x);
    let mut fresh = vec![false; g.order()];
    fresh[g.identity()] = true;
    close_mask(g, &mut fresh, &gens);
    Subgroup::from_mask(g, &fresh)
}

/// Every subgroup exactly once, sorted by (order, element set).
pub fn all_subgroups(g: &Group, cap: usize) -> Result<Vec<Subgroup>> {
    cap_check("group order for subgroup enumeration", g.order(), cap)?;
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut cyclic_reps: Vec<usize> = Vec::new();
    let mut list: Vec<Subgroup> = Vec::new();
    for x in 0..g.order() {
        let c = subgroup_closure(g, &[x]);
        if seen.insert(c.elements.clone()) {
            cyclic_reps.push(x);
            list.push(c);
        }
    }
    let mut i = 0;
    while i < list.len() {
        let s = list[i].clone();
        for &x in &cyclic_reps {
            if s.contains(x) {
                continue;
            }
            let j = join(g, &s, x);
            if seen.insert(j.elements.clone()) {
                list.push(j);
            }
        }
        i += 1;
    }
    list.sort();
    Ok(list)
}

/// A conjugacy class of subgroups with one conjugating witness per member.
#[derive(Debug, Clone)]
pub struct SubgroupClass {
    pub representative: Subgroup,
    pub members: Vec<Subgroup>,
    /// `members[i] == representative.conjugate_by(witnesses[i])`.
    pub witnesses: Vec<usize>,
}

impl SubgroupClass {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn index_of(&self, s: &Subgroup) -> Option<usize> {
        self.members.iter().position(|m| m == s)
    }
}

/// Partition of all subgroups into conjugacy classes, ordered by least member.
pub fn conjugacy_classes_of_subgroups(g: &Group, cap: usize) -> Result<Vec<SubgroupClass>> {
    let subs = all_subgroups(g, cap)?;
    let mut assigned: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut classes: Vec<SubgroupClass> = Vec::new();
    for s in subs {
        if assigned.contains_key(&s.elements) {
            continue;
        }
        let mut members: Vec<(Subgroup, usize)> = Vec::new();
        for x in 0..g.order() {
            let c = s.conjugate_by(x);
            if !members.iter().any(|(m, _)| *m == c) {
                members.push((c, x));
            }
        }
        members.sort_by(|a, b| a.0.cmp(&b.0));
        let idx = classes.len();
        for (m, _) in &members {
            assigned.insert(m.elements.clone(), idx);
        }
        classes.push(SubgroupClass {
            representative: s,
            witnesses: members.iter().map(|m| m.1).collect(),
            members: members.into_iter().map(|m| m.0).collect(),
        });
    }
    Ok(classes)
}

fn check_parent(g: &Group, h: &Subgroup) -> Result<()> {
    if Arc::ptr_eq(g, h.parent()) || g.same_law(h.parent()) {
        Ok(())
    } else {
        Err(Error::NotASubgroup("subgroup of a different group".into()))
    }
}

/// `{g : g H g⁻¹ = H}`.
pub fn normalizer(g: &Group, h: &Subgroup) -> Result<Subgroup> {
    check_parent(g, h)?;
    let mask: Vec<bool> = (0..g.order())
        .map(|x| h.elements().iter().all(|&y| h.contains(g.conj(x, y))))
        .collect();
    Ok(Subgroup::from_mask(g, &mask))
}

/// `{g : gh = hg for all h ∈ H}`.
pub fn centralizer(g: &Group, h: &Subgroup) -> Result<Subgroup> {
    check_parent(g, h)?;
    let gens = h.generators();
    let mask: Vec<bool> = (0..g.order())
        .map(|x| gens.iter().all(|&y| g.mul(x, y) == g.mul(y, x)))
        .collect();
    Ok(Subgroup::from_mask(g, &mask))
}

pub fn center(g: &Group) -> Subgroup {
    centralizer(g, &Subgroup::whole(g)).expect("same parent")
}

/// Least `x` with `x⁻¹ H x = K`, if any.
pub fn is_conjugate_subgroups(g: &Group, h: &Subgroup, k: &Subgroup) -> Option<usize> {
    if h.order() != k.order() {
        return None;
    }
    (0..g.order()).find(|&x| {
        let xi = g.inv(x);
        h.elements().iter().all(|&y| k.contains(g.conj(xi, y)))
    })
}

/// Product set `A·B` as a subgroup, if it is one.
pub fn product_subgroup(g: &Group, a: &Subgroup, b: &Subgroup) -> Option<Subgroup> {
    let mut mask = vec![false; g.order()];
    for &x in a.elements() {
        for &y in b.elements() {
            mask[g.mul(x, y)] = true;
        }
    }
    let s = Subgroup::from_mask(g, &mask);
    Subgroup::from_elements(g, s.elements()).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named::{cyclic, dicyclic, dihedral};

    fn brute_subgroup_count(g: &Group) -> usize {
        let n = g.order();
        assert!(n <= 12);
        (0u32..(1 << n))
            .filter(|&m| {
                let mut els = Vec::new();
                for i in 0..n {
                    if m >> i & 1 == 1 {
                        els.push(i);
                    }
                }
                Subgroup::from_elements(g, &els).is_ok()
            })
            .count()
    }

    #[test]
    fn trivial_table() {
        let g = make_group_from_table(1, &[vec![0]]).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.identity(), 0);
    }

    #[test]
    fn broken_triple_detected() {
        // Latin square with identity 0 and inverses, but not associative.
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        match make_group_from_table(5, &t) {
            Err(Error::NotAssociative { a, b, c }) => {
                assert_ne!(t[t[a][b]][c], t[a][t[b][c]]);
            }
            other => panic!("expected NotAssociative, got {other:?}"),
        }
    }

    #[test]
    fn missing_identity_and_inverse() {
        let t = vec![vec![0, 0], vec![0, 0]];
        assert_eq!(make_group_from_table(2, &t).unwrap_err(), Error::NoIdentity);
        let t = vec![vec![0, 1, 2], vec![1, 2, 2], vec![2, 2, 2]];
        assert!(matches!(make_group_from_table(3, &t), Err(Error::NoInverse(_))));
    }

    #[test]
    fn d8_from_table_roundtrip() {
        let d8 = dihedral(8).unwrap();
        let g = make_group_from_table(8, &d8.table_rows()).unwrap();
        assert!(g.same_law(&d8));
    }

    #[test]
    fn closure_examples() {
        let d8 = dihedral(8).unwrap().into_group();
        let r2 = d8.parse_element("r2").unwrap();
        let c = d8.parse_element("c").unwrap();
        let v = subgroup_closure(&d8, &[r2, c]);
        assert_eq!(v.order(), 4);
        assert_eq!(subgroup_closure(&d8, &[]).order(), 1);
        let c6 = cyclic(6).unwrap().into_group();
        assert_eq!(subgroup_closure(&c6, &[2]).elements(), &[0, 2, 4]);
    }

    #[test]
    fn subgroup_counts_match_brute_force() {
        for g in [cyclic(6).unwrap(), dihedral(8).unwrap(), dicyclic(8).unwrap(), cyclic(1).unwrap()] {
            let g = g.into_group();
            let subs = all_subgroups(&g, 256).unwrap();
            assert_eq!(subs.len(), brute_subgroup_count(&g));
            for w in subs.windows(2) {
                assert!(w[0] < w[1]);
            }
        }
        let c6 = cyclic(6).unwrap().into_group();
        assert_eq!(all_subgroups(&c6, 256).unwrap().len(), 4);
        let d8 = dihedral(8).unwrap().into_group();
        assert_eq!(all_subgroups(&d8, 256).unwrap().len(), 10);
    }

    #[test]
    fn class_counts() {
        let d8 = dihedral(8).unwrap().into_group();
        let cl = conjugacy_classes_of_subgroups(&d8, 256).unwrap();
        assert_eq!(cl.len(), 8);
        for c in &cl {
            for (m, &w) in c.members.iter().zip(&c.witnesses) {
                assert_eq!(*m, c.representative.conjugate_by(w));
            }
        }
        let q8 = dicyclic(8).unwrap().into_group();
        let cl = conjugacy_classes_of_subgroups(&q8, 256).unwrap();
        assert_eq!(cl.len(), 6);
        assert!(cl.iter().all(|c| c.len() == 1));
    }

    #[test]
    fn normalizers_and_conjugators() {
        let d8 = dihedral(8).unwrap().into_group();
        let e = |s: &str| d8.parse_element(s).unwrap();
        let klein = subgroup_closure(&d8, &[e("c"), e("r2")]);
        assert!(normalizer(&d8, &klein).unwrap().is_whole());
        let c = subgroup_closure(&d8, &[e("c")]);
        assert_eq!(normalizer(&d8, &c).unwrap(), klein);
        let r2c = subgroup_closure(&d8, &[e("r2c")]);
        let x = is_conjugate_subgroups(&d8, &c, &r2c).unwrap();
        assert_eq!(c.conjugate_by(x), r2c);
        assert_eq!(x, e("r"));
        assert_eq!(is_conjugate_subgroups(&d8, &c, &c), Some(d8.identity()));
        let q8 = dicyclic(8).unwrap().into_group();
        let i = subgroup_closure(&q8, &[q8.parse_element("i").unwrap()]);
        let j = subgroup_closure(&q8, &[q8.parse_element("j").unwrap()]);
        assert_eq!(is_conjugate_subgroups(&q8, &i, &j), None);
        assert_eq!(center(&d8).order(), 2);
    }

    #[test]
    fn generators_generate() {
        let d8 = dihedral(8).unwrap().into_group();
        for s in all_subgroups(&d8, 256).unwrap() {
            assert_eq!(subgroup_closure(&d8, s.generators()), s);
        }
    }
}
