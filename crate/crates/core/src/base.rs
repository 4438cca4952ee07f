//! A base group together with its automorphism group and per-subgroup caches.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::group::{normalizer, Group, Subgroup};
use crate::morphisms::{aut_group, restriction_images, OutGroup, RestrictionImages};
use crate::Limits;

/// Data attached to a subgroup `H` of the base.
#[derive(Debug)]
pub struct SubgroupInfo {
    pub out: OutGroup,
    pub restriction: RestrictionImages,
    pub normalizer: Subgroup,
}

/// The base group `G1` with `Aut(G1)` precomputed.
#[derive(Debug)]
pub struct BaseGroup {
    group: Group,
    whole: Subgroup,
    aut: OutGroup,
    aut_inverse: Vec<usize>,
    limits: Limits,
    cache: Mutex<HashMap<Vec<usize>, Arc<SubgroupInfo>>>,
}

impl BaseGroup {
    pub fn new(group: Group, limits: Limits) -> Result<Self> {
        let whole = Subgroup::whole(&group);
        let aut = aut_group(&whole, limits.aut_order)?;
        let aut_inverse = (0..aut.aut_order()).map(|a| aut.inverse(a)).collect();
        Ok(BaseGroup { group, whole, aut, aut_inverse, limits, cache: Mutex::new(HashMap::new()) })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn whole(&self) -> &Subgroup {
        &self.whole
    }

    /// `Aut(G1)`, indexed canonically.
    pub fn aut(&self) -> &OutGroup {
        &self.aut
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    #[inline]
    pub fn apply_aut(&self, a: usize, x: usize) -> usize {
        self.aut.apply(a, x)
    }

    #[inline]
    pub fn aut_inverse(&self, a: usize) -> usize {
        self.aut_inverse[a]
    }

    pub fn image_of(&self, a: usize, s: &Subgroup) -> Subgroup {
        s.image_under(&self.aut.aut(a).images)
    }

    /// Checks that `s` is a subgroup of this base.
    pub fn check(&self, s: &Subgroup) -> Result<()> {
        if Arc::ptr_eq(s.parent(), &self.group) || s.parent().same_law(&self.group) {
            Ok(())
        } else {
            Err(Error::BaseMismatch)
        }
    }

    /// `Out(H)` and the restriction images, computed once per subgroup.
    pub fn info(&self, h: &Subgroup) -> Result<Arc<SubgroupInfo>> {
        self.check(h)?;
        if let Some(i) = self.cache.lock().expect("cache lock").get(h.elements()) {
            return Ok(i.clone());
        }
        let out = aut_group(h, self.limits.aut_order)?;
        let restriction = restriction_images(&self.aut, &out)?;
        let normalizer = normalizer(&self.group, h)?;
        let info = Arc::new(SubgroupInfo { out, restriction, normalizer });
        self.cache.lock().expect("cache lock").insert(h.elements().to_vec(), info.clone());
        Ok(info)
    }
}
