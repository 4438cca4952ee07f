use criterion::{black_box, criterion_group, criterion_main, Criterion};
use hnngenus::{
    build_gamma_bar, genus_report, hnn_isomorphic, iso_class_count, total_iso_count, BaseGroup, Fingerprinter, HnnData,
    Limits, ProbeSet,
};
use hnngenus_bench::{group, subgroup};

fn base(spec: &str) -> BaseGroup {
    BaseGroup::new(group(spec), Limits::default()).expect("base group")
}

fn classification(c: &mut Criterion) {
    let d8 = base("dihedral:8");
    let klein = subgroup(d8.group(), &["r2", "c"]);
    c.bench_function("iso_class_count D8 Klein", |b| b.iter(|| iso_class_count(&d8, &klein, &klein).unwrap()));

    let c4c4 = base("direct_product(cyclic:4,cyclic:4)");
    let whole = c4c4.whole().clone();
    c.bench_function("build_gamma_bar C4xC4 whole", |b| b.iter(|| build_gamma_bar(&c4c4, &whole, &whole).unwrap()));

    let s4 = base("symmetric:4");
    c.bench_function("total_iso_count S4", |b| b.iter(|| total_iso_count(black_box(&s4)).unwrap()));
}

fn isomorphism_and_genus(c: &mut Criterion) {
    let d8 = base("dihedral:8");
    let klein = subgroup(d8.group(), &["r2", "c"]);
    let f1 = HnnData::identity(klein.clone());
    let f2 = HnnData::from_pairs(klein.clone(), klein.clone(), &[(2, 2), (4, 6)], "").unwrap();
    c.bench_function("hnn_isomorphic D8 Klein", |b| b.iter(|| hnn_isomorphic(&d8, &f1, &f2).unwrap()));
    c.bench_function("genus_report D8 Klein", |b| b.iter(|| genus_report(&d8, &f2).unwrap()));
}

fn fingerprints(c: &mut Criterion) {
    let d8 = base("dihedral:8");
    let klein = subgroup(d8.group(), &["r2", "c"]);
    let f2 = HnnData::from_pairs(klein.clone(), klein, &[(2, 2), (4, 6)], "").unwrap();
    c.bench_function("probe catalog 60", |b| b.iter(|| ProbeSet::catalog(black_box(60))));
    let fp = Fingerprinter::new(d8.group(), ProbeSet::catalog(60));
    c.bench_function("fingerprint D8 Klein", |b| b.iter(|| fp.fingerprint(&f2).unwrap()));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = classification, isomorphism_and_genus, fingerprints
}
criterion_main!(benches);
