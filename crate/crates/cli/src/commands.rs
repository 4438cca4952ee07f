use std::fmt::Write as _;

use hnngenus::fingerprint::{compare, Comparison, FingerprintVector, Fingerprinter, ProbeSet};
use hnngenus::genus::{genus_report, GenusReport};
use hnngenus::group::{Group, Subgroup};
use hnngenus::hnn::{
    build_gamma_bar, closed_form_central_cyclic, closed_form_g1, hnn_isomorphic, pair_orbit_catalog, total_iso_count,
    HnnData, HnnRecord, IsoWitness, PairOrbitCatalog, SwapAutomorphism,
};
use hnngenus::{BaseGroup, Error, Limits};
use serde::{Deserialize, Serialize};

use crate::input::{load_file, load_file_into, parse_base, parse_map, parse_subgroup};
use crate::{ClosedFormKind, Cli, CliError, Command, Format, HnnArgs, PairArgs, MAX_CAP_AUT, MAX_PROBE_ORDER};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub base: String,
    #[serde(rename = "H")]
    pub h: Vec<usize>,
    #[serde(rename = "K")]
    pub k: Vec<usize>,
    pub count: usize,
    pub representatives: Vec<HnnRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closed_form: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitEntry {
    pub representative: HnnRecord,
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitsReport {
    pub iso_count: usize,
    /// Elements of `Γ̃_HK` as permutations of the canonical `Iso(H, K)`.
    pub gamma_tilde: Vec<Vec<u32>>,
    pub iota: Option<Vec<u32>>,
    pub swap: Option<SwapAutomorphism>,
    pub orbits: Vec<OrbitEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsomorphicReport {
    pub isomorphic: bool,
    pub witness: Option<IsoWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FingerprintReport {
    pub a: FingerprintVector,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<FingerprintVector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comparison: Option<Comparison>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TotalReport {
    pub base: String,
    pub total: usize,
}

fn limits(cli: &Cli) -> Result<Limits, CliError> {
    if cli.cap_aut == 0 || cli.cap_aut > MAX_CAP_AUT {
        return Err(CliError::Usage(format!("--cap-aut must lie in 1..={MAX_CAP_AUT}")));
    }
    Ok(Limits { aut_order: cli.cap_aut, ..Limits::default() })
}

fn base_group(cli: &Cli, g: Group) -> Result<BaseGroup, CliError> {
    Ok(BaseGroup::new(g, limits(cli)?)?)
}

fn pair(args: &PairArgs) -> Result<(Group, Subgroup, Subgroup), CliError> {
    let g = parse_base(&args.base)?;
    let h = parse_subgroup(&g, &args.h, "--H")?;
    let k = match &args.k {
        Some(k) => parse_subgroup(&g, k, "--K")?,
        None => h.clone(),
    };
    Ok((g, h, k))
}

fn hnn(args: &HnnArgs) -> Result<HnnData, CliError> {
    if let Some(path) = &args.a {
        return load_file(path);
    }
    let missing = |flag: &str| CliError::Usage(format!("{flag} is required unless --a is given"));
    let g = parse_base(args.base.as_deref().ok_or_else(|| missing("--base"))?)?;
    let h = parse_subgroup(&g, args.h.as_deref().ok_or_else(|| missing("--H"))?, "--H")?;
    let k = match &args.k {
        Some(k) => parse_subgroup(&g, k, "--K")?,
        None => h.clone(),
    };
    parse_map(&h, &k, args.f.as_deref())
}

fn names(g: &Group, xs: &[usize]) -> String {
    xs.iter().map(|&x| g.element_name(x)).collect::<Vec<_>>().join(", ")
}

fn map_text(d: &HnnData) -> String {
    let g = &d.base;
    d.h.generators()
        .iter()
        .map(|&x| format!("{}->{}", g.element_name(x), g.element_name(d.apply_f(x))))
        .collect::<Vec<_>>()
        .join(", ")
}

fn record_text(g: &Group, r: &HnnRecord) -> String {
    match r.resolve(g) {
        Ok(d) => format!("f: {}", map_text(&d)),
        Err(_) => format!("{r:?}"),
    }
}

fn render<T: Serialize>(cli: &Cli, value: &T, text: impl FnOnce() -> String) -> Result<String, CliError> {
    match cli.format {
        Format::Json => Ok(serde_json::to_string_pretty(value)? + "\n"),
        Format::Text => Ok(text()),
    }
}

pub fn classify(cli: &Cli, args: &PairArgs, closed: Option<ClosedFormKind>) -> Result<ClassifyReport, CliError> {
    let (g, h, k) = pair(args)?;
    let b = base_group(cli, g.clone())?;
    let gb = build_gamma_bar(&b, &h, &k)?;
    let orbits = gb.orbits();
    let closed_form = match closed {
        None => None,
        Some(_) if h != k => {
            return Err(Error::HypothesisNotVerified("closed forms need K = H".into()).into());
        }
        Some(ClosedFormKind::G1) => Some(closed_form_g1(&b, &h)?.value),
        Some(ClosedFormKind::CentralCyclic) => Some(closed_form_central_cyclic(&b, &h)?),
    };
    Ok(ClassifyReport {
        base: g.to_string(),
        h: h.elements().to_vec(),
        k: k.elements().to_vec(),
        count: orbits.len(),
        representatives: orbits
            .iter()
            .enumerate()
            .map(|(i, o)| gb.iso_set.data(o[0]).with_label(format!("class {}", i + 1)).record())
            .collect(),
        closed_form,
    })
}

fn orbits(cli: &Cli, args: &PairArgs) -> Result<(Group, OrbitsReport), CliError> {
    let (g, h, k) = pair(args)?;
    let b = base_group(cli, g.clone())?;
    let gb = build_gamma_bar(&b, &h, &k)?;
    let orbits = gb
        .orbits()
        .iter()
        .map(|o| OrbitEntry { representative: gb.iso_set.data(o[0]).record(), size: o.len() })
        .collect();
    let report = OrbitsReport {
        iso_count: gb.iso_set.len(),
        gamma_tilde: gb.generators.clone(),
        iota: gb.iota.clone(),
        swap: gb.swap,
        orbits,
    };
    Ok((g, report))
}

fn genus(cli: &Cli, args: &HnnArgs) -> Result<(Group, GenusReport), CliError> {
    let d = hnn(args)?;
    let b = base_group(cli, d.base.clone())?;
    Ok((d.base.clone(), genus_report(&b, &d)?))
}

fn isomorphic(cli: &Cli, a: &std::path::Path, b: &std::path::Path) -> Result<IsomorphicReport, CliError> {
    let da = load_file(a)?;
    let db = load_file_into(b, &da.base)?;
    let base = base_group(cli, da.base.clone())?;
    let witness = hnn_isomorphic(&base, &da, &db)?;
    Ok(IsomorphicReport { isomorphic: witness.is_some(), witness })
}

fn fingerprint(args: &HnnArgs, b: Option<&std::path::PathBuf>, max_order: usize) -> Result<FingerprintReport, CliError> {
    if max_order == 0 || max_order > MAX_PROBE_ORDER {
        return Err(CliError::Usage(format!("--max-order must lie in 1..={MAX_PROBE_ORDER}")));
    }
    let da = hnn(args)?;
    let db = b.map(|p| load_file_into(p, &da.base)).transpose()?;
    let fp = Fingerprinter::new(&da.base, ProbeSet::catalog(max_order));
    let a = fp.fingerprint(&da)?;
    let b = db.map(|d| fp.fingerprint(&d)).transpose()?;
    let comparison = b.as_ref().map(|b| compare(&a, b));
    Ok(FingerprintReport { a, b, comparison })
}

fn catalog(cli: &Cli, base: &str, h: Option<&str>) -> Result<(Group, PairOrbitCatalog), CliError> {
    let g = parse_base(base)?;
    let restrict = h.map(|h| parse_subgroup(&g, h, "--H")).transpose()?;
    let b = base_group(cli, g.clone())?;
    Ok((g, pair_orbit_catalog(&b, restrict.as_ref())?))
}

pub fn run(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Classify { pair, closed_form } => {
            let r = classify(cli, pair, *closed_form)?;
            render(cli, &r, || {
                let g = parse_base(&pair.base).expect("parsed above");
                let mut s = format!("{} isomorphism classes\n", r.count);
                for rep in &r.representatives {
                    let _ = writeln!(s, "  {}: {}", rep.label, record_text(&g, rep));
                }
                if let Some(c) = r.closed_form {
                    let _ = writeln!(s, "closed form: {c}");
                }
                s
            })
        }
        Command::Orbits { pair } => {
            let (g, r) = orbits(cli, pair)?;
            render(cli, &r, || {
                let mut s = format!("{} orbits on {} isomorphisms\n", r.orbits.len(), r.iso_count);
                let _ = writeln!(s, "Γ̃_HK: {} permutations", r.gamma_tilde.len());
                match &r.swap {
                    Some(sw) => {
                        let _ = writeln!(s, "ι from swap automorphism #{} with conjugator {}", sw.psi, g.element_name(sw.conjugator));
                    }
                    None => s.push_str("no swap automorphism\n"),
                }
                for (i, o) in r.orbits.iter().enumerate() {
                    let _ = writeln!(s, "  orbit {} (size {}): {}", i + 1, o.size, record_text(&g, &o.representative));
                }
                s
            })
        }
        Command::Genus { hnn } => {
            let (g, r) = genus(cli, hnn)?;
            render(cli, &r, || {
                let mut s = format!("{}, rule: {}\n", r.value, r.rule);
                let _ = writeln!(s, "envelope: {}", r.envelope);
                for c in &r.checks {
                    let _ = writeln!(s, "  [{}] {}: {}", if c.verdict { "pass" } else { "fail" }, c.rule, c.hypothesis);
                }
                for c in &r.companions {
                    let _ = writeln!(s, "  companion {}", record_text(&g, c));
                }
                s
            })
        }
        Command::Isomorphic { a, b } => {
            let r = isomorphic(cli, a, b)?;
            render(cli, &r, || match &r.witness {
                None => "not isomorphic\n".to_string(),
                Some(w) => {
                    let da = load_file(a).expect("loaded above");
                    let g = &da.base;
                    let mut s = String::from("isomorphic\n");
                    let gens = Subgroup::whole(g).generators().to_vec();
                    let imgs: Vec<usize> = gens.iter().map(|&x| w.psi_images[x]).collect();
                    let _ = writeln!(s, "  G1: {} -> {}", names(g, &gens), names(g, &imgs));
                    let _ = writeln!(
                        s,
                        "  t -> {} t^{} {}",
                        g.element_name(w.iso.left),
                        w.iso.exponent,
                        g.element_name(w.iso.right)
                    );
                    let holds = w.checks.iter().chain(&w.inverse_checks).filter(|c| c.holds).count();
                    let total = w.checks.len() + w.inverse_checks.len();
                    let _ = writeln!(s, "  relations checked: {holds}/{total}, round trip: {}", w.round_trip);
                    s
                }
            })
        }
        Command::Fingerprint { hnn, b, max_order } => {
            let r = fingerprint(hnn, b.as_ref(), *max_order)?;
            render(cli, &r, || match &r.comparison {
                Some(Comparison::FirstDifference { probe, order, a, b }) => {
                    format!("FirstDifference({probe})\n  order {order}: {a} vs {b}\n")
                }
                Some(c) => format!("{c}\n"),
                None => {
                    let mut s = String::new();
                    for e in &r.a.entries {
                        let _ = writeln!(s, "{:<24} {:>4} {}", e.probe, e.order, e.count);
                    }
                    s
                }
            })
        }
        Command::Catalog { base, h } => {
            let (g, r) = catalog(cli, base, h.as_deref())?;
            render(cli, &r, || {
                let mut s = format!("{} class representatives, {} pair orbits, total {}\n", r.classes.len(), r.entries.len(), r.total());
                for e in &r.entries {
                    let _ = writeln!(s, "  H = <{}>, K = <{}>, orbit {}: {}", names(&g, &e.h), names(&g, &e.k), e.orbit_size, e.count);
                }
                s
            })
        }
        Command::Total { base } => {
            let g = parse_base(base)?;
            let b = base_group(cli, g.clone())?;
            let r = TotalReport { base: g.to_string(), total: total_iso_count(&b)? };
            render(cli, &r, || format!("{} isomorphism classes\n", r.total))
        }
    }
}
