//! Closed-form class counts for normal HNN-extensions.

use serde::{Deserialize, Serialize};

use crate::base::BaseGroup;
use crate::error::{Error, Result};
use crate::group::{center, Subgroup};

/// A closed-form value with the quantities it was computed from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedForm {
    pub value: usize,
    /// `|Out(H) / Ñ_{G1}(H)|`.
    pub n: usize,
    /// Elements of order at most 2 in `Out(H) / Ñ_{G1}(H)`.
    pub d: usize,
}

/// `(n + d) / 2`, valid when `Ãut_{G1}(H)` is central in `Out(H)`.
pub fn closed_form_g1(base: &BaseGroup, h: &Subgroup) -> Result<ClosedForm> {
    let info = base.info(h)?;
    let out = &info.out;
    let m = out.out_order();
    let central = info.restriction.aut_tilde.iter().all(|&a| (0..m).all(|x| out.out_mul(a, x) == out.out_mul(x, a)));
    if !central {
        return Err(Error::HypothesisNotVerified("the image of Aut_G1(H) is not central in Out(H)".into()));
    }
    let nt = &info.restriction.n_tilde;
    let mut seen = vec![false; m];
    let (mut n, mut d) = (0, 0);
    for x in 0..m {
        if seen[x] {
            continue;
        }
        n += 1;
        for &y in nt {
            seen[out.out_mul(x, y)] = true;
        }
        if nt.binary_search(&out.out_mul(x, x)).is_ok() {
            d += 1;
        }
    }
    Ok(ClosedForm { value: (n + d) / 2, n, d })
}

fn factor(mut n: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Class count for a central cyclic subgroup of order `n`, by the size of its 2-part.
pub fn central_cyclic_formula(n: usize) -> usize {
    let f = factor(n.max(1));
    let odd: Vec<_> = f.iter().filter(|(p, _)| *p != 2).collect();
    let r = odd.len() as u32;
    let p_prod: usize = odd.iter().map(|&&(p, e)| (p - 1) * p.pow(e - 1)).product();
    let m = f.iter().find(|(p, _)| *p == 2).map_or(0, |&(_, e)| e);
    match m {
        0 | 1 => (p_prod - (1 << r)) / 2 + (1 << r),
        2 => (2 * p_prod - (1 << (r + 1))) / 2 + (1 << (r + 1)),
        _ => ((1 << (m - 1)) * p_prod - (1 << (r + 2))) / 2 + (1 << (r + 2)),
    }
}

/// The central-cyclic formula after checking that `H` is cyclic and central in `G1`.
pub fn closed_form_central_cyclic(base: &BaseGroup, h: &Subgroup) -> Result<usize> {
    base.check(h)?;
    let g = base.group();
    if !h.elements().iter().any(|&x| g.element_order(x) == h.order()) {
        return Err(Error::HypothesisNotVerified("H is not cyclic".into()));
    }
    if !h.is_subset_of(&center(g)) {
        return Err(Error::HypothesisNotVerified("H is not central in G1".into()));
    }
    Ok(central_cyclic_formula(h.order()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::subgroup_closure;
    use crate::named::{cyclic, dihedral, direct_product, symmetric};
    use crate::Limits;

    #[test]
    fn formula_values() {
        let got: Vec<usize> = [1, 2, 3, 4, 5, 8, 15, 16].iter().map(|&n| central_cyclic_formula(n)).collect();
        assert_eq!(got, [1, 1, 2, 2, 3, 4, 6, 6]);
    }

    #[test]
    fn c5_in_c5_times_s3() {
        let g = direct_product(&cyclic(5).unwrap(), &symmetric(3).unwrap()).unwrap().into_group();
        let b = BaseGroup::new(g.clone(), Limits::default()).unwrap();
        let h = subgroup_closure(&g, &[1]);
        assert_eq!(closed_form_central_cyclic(&b, &h).unwrap(), 3);
        assert_eq!(closed_form_g1(&b, &h).unwrap(), ClosedForm { value: 3, n: 4, d: 2 });
    }

    #[test]
    fn hypotheses_checked() {
        let g = dihedral(8).unwrap().into_group();
        let b = BaseGroup::new(g.clone(), Limits::default()).unwrap();
        let c = subgroup_closure(&g, &[4]);
        assert!(matches!(closed_form_central_cyclic(&b, &c), Err(Error::HypothesisNotVerified(_))));
        let v = subgroup_closure(&g, &[2, 4]);
        assert!(matches!(closed_form_g1(&b, &v), Err(Error::HypothesisNotVerified(_))));
    }
}
