//! Fixtures shared by the benchmarks.

use hnngenus::{subgroup_closure, Group, GroupSpec, Subgroup};

pub fn group(spec: &str) -> Group {
    GroupSpec::parse(spec).expect("valid spec").build().expect("buildable").into_group()
}

pub fn subgroup(g: &Group, names: &[&str]) -> Subgroup {
    let seeds: Vec<usize> = names.iter().map(|n| g.parse_element(n).expect("known element")).collect();
    subgroup_closure(g, &seeds)
}
