//! Named group families and their canonical element enumerations.
//!
//! Index layouts and element names:
//!
//! | family | element at index | names |
//! |---|---|---|
//! | `cyclic n` | `g^k` at `k` | `1, g, g2, …` |
//! | `dihedral 2n` | `r^i c^j` at `i + n·j`, `c r c⁻¹ = r⁻¹` | `1, r, r2, …, c, rc, r2c, …` |
//! | `dicyclic 4n` | `a^i x^j` at `i + 2n·j`, `x² = a^n`, `x a x⁻¹ = a⁻¹` | `1, a, a2, …, x, ax, …`; order 8 uses `1, i, -1, -i, j, k, -j, -k` |
//! | `symmetric n`, `alternating n` | permutations of `0..n` in lexicographic order of their image lists | cycle notation on points `1..n`, identity `()` |
//! | `elementary_abelian p^k` | vector `v` at `Σ v_i p^i` | `1`, `e1`, `e1e2`, `e1^2e3`, … |
//! | `direct_product(A, B)` | `(a, b)` at `a + |A|·b` | `(a;b)` |
//! | `semidirect_cyclic(n, m, s)` | `x^i y^j` at `i + n·j`, `y x y⁻¹ = x^s` | `1, x, x2, …, y, xy, …, y2, xy2, …` |
//!
//! Permutations compose right to left: `(p·q)(i) = p(q(i))`.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, PermRep};

/// Largest order accepted from permutation generators.
pub const MAX_PERM_GROUP_ORDER: usize = 5040;

fn bad(name: &str, reason: impl Into<String>) -> Error {
    Error::BadParams { name: name.to_string(), reason: reason.into() }
}

fn power_name(base: &str, k: usize) -> String {
    match k {
        0 => String::new(),
        1 => base.to_string(),
        _ => format!("{base}{k}"),
    }
}

fn or_one(s: String) -> String {
    if s.is_empty() {
        "1".into()
    } else {
        s
    }
}

pub fn cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(bad("cyclic", "order must be positive"));
    }
    let names = (0..n).map(|k| or_one(power_name("g", k))).collect();
    Ok(FiniteGroup::from_law(n, |a, b| (a + b) % n, false)?
        .with_name(format!("C{n}"))
        .with_element_names(names))
}

/// Dihedral group of the given order `2n`.
pub fn dihedral(order: usize) -> Result<FiniteGroup> {
    if order < 2 || !order.is_multiple_of(2) {
        return Err(bad("dihedral", "order must be even and at least 2"));
    }
    let n = order / 2;
    let law = |a: usize, b: usize| {
        let (i, j) = (a % n, a / n);
        let (x, y) = (b % n, b / n);
        let r = if j == 0 { (i + x) % n } else { (i + n - x) % n };
        r + n * ((j + y) % 2)
    };
    let names = (0..order)
        .map(|k| {
            let (i, j) = (k % n, k / n);
            or_one(format!("{}{}", power_name("r", i), if j == 1 { "c" } else { "" }))
        })
        .collect();
    Ok(FiniteGroup::from_law(order, law, false)?
        .with_name(format!("D{order}"))
        .with_element_names(names))
}

/// Dicyclic group of the given order `4n`; order 8 is the quaternion group.
pub fn dicyclic(order: usize) -> Result<FiniteGroup> {
    if order < 4 || !order.is_multiple_of(4) {
        return Err(bad("dicyclic", "order must be a positive multiple of 4"));
    }
    let n = order / 4;
    let m = 2 * n;
    let law = |a: usize, b: usize| {
        let (i, j) = (a % m, a / m);
        let (k, l) = (b % m, b / m);
        let mut e = if j == 0 { i + k } else { i + m - k };
        if j == 1 && l == 1 {
            e += n;
        }
        e % m + m * ((j + l) % 2)
    };
    let names: Vec<String> = if order == 8 {
        ["1", "i", "-1", "-i", "j", "k", "-j", "-k"].iter().map(|s| s.to_string()).collect()
    } else {
        (0..order)
            .map(|k| {
                let (i, j) = (k % m, k / m);
                or_one(format!("{}{}", power_name("a", i), if j == 1 { "x" } else { "" }))
            })
            .collect()
    };
    let label = if order == 8 { "Q8".to_string() } else { format!("Dic{order}") };
    Ok(FiniteGroup::from_law(order, law, false)?.with_name(label).with_element_names(names))
}

fn cycle_name(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut cyc = vec![start + 1];
        seen[start] = true;
        let mut x = p[start];
        while x != start {
            seen[x] = true;
            cyc.push(x + 1);
            x = p[x];
        }
        out.push('(');
        out.push_str(&cyc.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "));
        out.push(')');
    }
    if out.is_empty() {
        "()".into()
    } else {
        out
    }
}

fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    q.iter().map(|&i| p[i]).collect()
}

fn group_from_perm_list(degree: usize, mut perms: Vec<Vec<usize>>, generators: Vec<Vec<usize>>) -> Result<FiniteGroup> {
    perms.sort();
    let index: HashMap<Vec<usize>, usize> = perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let n = perms.len();
    let mut table = Vec::with_capacity(n * n);
    for a in &perms {
        for b in &perms {
            table.push(index[&compose(a, b)] as u32);
        }
    }
    let names = perms.iter().map(|p| cycle_name(p)).collect();
    Ok(FiniteGroup::from_flat(n, table, false)?
        .with_element_names(names)
        .with_perm(PermRep { degree, generators, elements: perms }))
}

/// Group generated by permutations of `0..degree`.
pub fn from_permutations(degree: usize, generators: &[Vec<usize>]) -> Result<FiniteGroup> {
    for g in generators {
        let mut seen = vec![false; degree];
        if g.len() != degree || g.iter().any(|&x| x >= degree || std::mem::replace(&mut seen[x], true)) {
            return Err(bad("perm", format!("{g:?} is not a permutation of degree {degree}")));
        }
    }
    let id: Vec<usize> = (0..degree).collect();
    let mut found: HashMap<Vec<usize>, ()> = HashMap::new();
    found.insert(id.clone(), ());
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for g in generators {
            let q = compose(&p, g);
            if !found.contains_key(&q) {
                if found.len() >= MAX_PERM_GROUP_ORDER {
                    return Err(Error::CapExceeded {
                        what: "permutation group".into(),
                        size: found.len() + 1,
                        cap: MAX_PERM_GROUP_ORDER,
                    });
                }
                found.insert(q.clone(), ());
                queue.push_back(q);
            }
        }
    }
    group_from_perm_list(degree, found.into_keys().collect(), generators.to_vec())
}

fn all_perms(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                cur.push(x);
                rec(cur, used, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn is_even(p: &[usize]) -> bool {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 0
}

fn transposition_gens(n: usize) -> Vec<Vec<usize>> {
    let mut gens = Vec::new();
    if n >= 2 {
        let mut t: Vec<usize> = (0..n).collect();
        t.swap(0, 1);
        gens.push(t);
        gens.push((0..n).map(|i| (i + 1) % n).collect());
    }
    gens
}

pub fn symmetric(n: usize) -> Result<FiniteGroup> {
    if n == 0 || n > 7 {
        return Err(bad("symmetric", "degree must be in 1..=7"));
    }
    Ok(group_from_perm_list(n, all_perms(n), transposition_gens(n))?.with_name(format!("S{n}")))
}

pub fn alternating(n: usize) -> Result<FiniteGroup> {
    if n == 0 || n > 7 {
        return Err(bad("alternating", "degree must be in 1..=7"));
    }
    let perms: Vec<Vec<usize>> = all_perms(n).into_iter().filter(|p| is_even(p)).collect();
    let gens = (2..n)
        .map(|k| {
            let mut p: Vec<usize> = (0..n).collect();
            p[0] = 1;
            p[1] = k;
            p[k] = 0;
            p
        })
        .collect();
    Ok(group_from_perm_list(n, perms, gens)?.with_name(format!("A{n}")))
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

pub fn elementary_abelian(p: usize, k: usize) -> Result<FiniteGroup> {
    if !is_prime(p) {
        return Err(bad("elementary_abelian", format!("{p} is not prime")));
    }
    let order = p.checked_pow(k as u32).filter(|&o| o <= 4096).ok_or_else(|| bad("elementary_abelian", "order too large"))?;
    let digits = |mut x: usize| {
        let mut v = vec![0; k];
        for d in v.iter_mut() {
            *d = x % p;
            x /= p;
        }
        v
    };
    let law = |a: usize, b: usize| {
        let (da, db) = (digits(a), digits(b));
        let mut r = 0;
        for i in (0..k).rev() {
            r = r * p + (da[i] + db[i]) % p;
        }
        r
    };
    let names = (0..order)
        .map(|x| {
            let s: String = digits(x)
                .iter()
                .enumerate()
                .filter(|(_, &d)| d > 0)
                .map(|(i, &d)| if d == 1 { format!("e{}", i + 1) } else { format!("e{}^{d}", i + 1) })
                .collect();
            or_one(s)
        })
        .collect();
    let label = if k == 1 { format!("C{p}") } else { format!("C{p}^{k}") };
    Ok(FiniteGroup::from_law(order, law, false)?.with_name(label).with_element_names(names))
}

pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<FiniteGroup> {
    let (na, nb) = (a.order(), b.order());
    let order = na * nb;
    if order > 4096 {
        return Err(bad("direct_product", "order too large"));
    }
    let law = |x: usize, y: usize| {
        let (xa, xb) = (x % na, x / na);
        let (ya, yb) = (y % na, y / na);
        a.mul(xa, ya) + na * b.mul(xb, yb)
    };
    let names = (0..order)
        .map(|x| format!("({};{})", a.element_name(x % na), b.element_name(x / na)))
        .collect();
    let label = format!("{}x{}", a, b);
    Ok(FiniteGroup::from_law(order, law, false)?.with_name(label).with_element_names(names))
}

fn pow_mod(base: usize, exp: usize, m: usize) -> usize {
    let mut r = 1 % m;
    for _ in 0..exp {
        r = r * base % m;
    }
    r
}

/// `C_n ⋊ C_m` with `y x y⁻¹ = x^s`; requires `s^m ≡ 1 (mod n)`.
pub fn semidirect_cyclic(n: usize, m: usize, s: usize) -> Result<FiniteGroup> {
    let name = "semidirect_cyclic";
    if n == 0 || m == 0 {
        return Err(bad(name, "orders must be positive"));
    }
    if n > 1 && (gcd(s, n) != 1 || pow_mod(s % n, m, n) != 1 % n) {
        return Err(bad(name, format!("{s} is not a unit of order dividing {m} modulo {n}")));
    }
    let order = n * m;
    if order > 4096 {
        return Err(bad(name, "order too large"));
    }
    let powers: Vec<usize> = (0..m).map(|j| pow_mod(s % n.max(1), j, n.max(1))).collect();
    let law = |a: usize, b: usize| {
        let (i, j) = (a % n, a / n);
        let (k, l) = (b % n, b / n);
        (i + k * powers[j]) % n + n * ((j + l) % m)
    };
    let names = (0..order)
        .map(|x| or_one(format!("{}{}", power_name("x", x % n), power_name("y", x / n))))
        .collect();
    Ok(FiniteGroup::from_law(order, law, false)?
        .with_name(format!("C{n}:C{m}[{s}]"))
        .with_element_names(names))
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
