use std::time::Instant;

use hcsuper::combinatorics::{check_rsk_identities, check_std_num, enumerate_multipartitions};
use hcsuper::cyclo::{census_identity, center_check, irreducibility_check, predicted_dim, CycloModule};
use hcsuper::oracle::{oracle_report, regular_representation};
use hcsuper::{Error, Exec, Flavor, ModuleType, Multipartition, ParameterSet, Precision, Scalar, Variant};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TOL: f64 = 1e-25;

struct Outcome {
    pass: bool,
    detail: String,
}

fn line(id: usize, name: &str, started: Instant, o: &Outcome) -> bool {
    println!(
        "criterion {id:>2} [{}] {name}: {} ({:.1}s)",
        if o.pass { "PASS" } else { "FAIL" },
        o.detail,
        started.elapsed().as_secs_f64()
    );
    o.pass
}

fn combos() -> Vec<(Variant, Flavor)> {
    vec![
        (Variant::Nondegenerate, Flavor::Zero),
        (Variant::Nondegenerate, Flavor::S),
        (Variant::Nondegenerate, Flavor::Ss),
        (Variant::Degenerate, Flavor::Zero),
        (Variant::Degenerate, Flavor::S),
    ]
}

fn params(v: Variant, f: Flavor, qs: &[&str]) -> ParameterSet {
    let q = if v == Variant::Degenerate { "1" } else { "3/2" };
    ParameterSet::parse(v, f, q, qs, Precision::default()).expect("valid parameters")
}

const STANDARD: [&str; 2] = ["5", "7"];
const SUPPLEMENT: [&str; 2] = ["5", "15/2"];

struct Case {
    p: ParameterSet,
    n: usize,
    label: String,
}

/// Every (variant, flavor, m ≤ 2, n ≤ 4) case with Q = (5, 7) truncated, or
/// the supplementary Q = (5, 15/2) where P_n vanishes; excluded cases are
/// returned with a check that building is refused.
fn cases() -> (Vec<Case>, Vec<(String, bool)>) {
    let mut out = Vec::new();
    let mut excluded = Vec::new();
    for (v, f) in combos() {
        for m in 0..=2 {
            for n in 1..=4 {
                let p = params(v, f, &STANDARD[..m]);
                let label = format!("{} {} m={m} n={n}", v.name(), f.name());
                if p.separability_vanishes(n) {
                    let shape = enumerate_multipartitions(f, m, n).into_iter().next();
                    let refused = shape.is_none_or(|s| matches!(CycloModule::build(&s, &p), Err(Error::NotSeparate(_))));
                    excluded.push((label.clone(), refused));
                    let alt = params(v, f, &SUPPLEMENT[..m]);
                    if !alt.separability_vanishes(n) {
                        out.push(Case { p: alt, n, label: format!("{label} Q=(5,15/2)") });
                    }
                } else {
                    out.push(Case { p, n, label });
                }
            }
        }
    }
    (out, excluded)
}

struct ModuleRecord {
    case: usize,
    shape: Multipartition,
    built: Result<(), String>,
    relation_residual: f64,
    total_dim: usize,
    predicted: (u128, ModuleType),
    spin_up_full: bool,
    commutant: (usize, usize),
    commutant_type: Option<ModuleType>,
    intertwiners_pass: bool,
    intertwiner_worst: f64,
    central: Vec<Scalar>,
    central_dev: f64,
}

fn sweep(cases: &[Case]) -> Vec<ModuleRecord> {
    let jobs: Vec<(usize, Multipartition)> = cases
        .iter()
        .enumerate()
        .flat_map(|(k, c)| enumerate_multipartitions(c.p.flavor, c.p.m(), c.n).into_iter().map(move |s| (k, s)))
        .collect();
    Exec::Parallel.map(&jobs, |(k, shape)| {
        let p = &cases[*k].p;
        let mut rec = ModuleRecord {
            case: *k,
            shape: shape.clone(),
            built: Ok(()),
            relation_residual: f64::INFINITY,
            total_dim: 0,
            predicted: predicted_dim(shape),
            spin_up_full: false,
            commutant: (0, 0),
            commutant_type: None,
            intertwiners_pass: false,
            intertwiner_worst: f64::INFINITY,
            central: vec![],
            central_dev: f64::INFINITY,
        };
        let m = match CycloModule::build(shape, p) {
            Ok(m) => m,
            Err(e) => {
                rec.built = Err(e.to_string());
                return rec;
            }
        };
        rec.relation_residual = m.verify_relations(TOL).max_residual;
        rec.total_dim = m.total_dim;
        let irr = irreducibility_check(&m.gens, p, 5, 0);
        rec.spin_up_full = irr.spin_up_dims.iter().all(|&d| d == m.total_dim);
        rec.commutant = (irr.even_commutant, irr.odd_commutant);
        rec.commutant_type = irr.module_type;
        let mut ok = true;
        let mut worst: f64 = 0.0;
        for i in 1..m.n() {
            match m.intertwiner_check(i, TOL) {
                Ok(r) => {
                    ok &= r.pass;
                    worst = worst.max(r.square_residual).max(r.exchange_residual).max(r.off_target_residual);
                }
                Err(_) => ok = false,
            }
        }
        rec.intertwiners_pass = ok;
        rec.intertwiner_worst = worst;
        let (central, dev) = m.central_scalars();
        rec.central = central;
        rec.central_dev = dev;
        rec
    })
}

fn criterion_1(records: &[ModuleRecord], cases: &[Case], excluded: &[(String, bool)]) -> Outcome {
    let failures: Vec<String> = records
        .iter()
        .filter(|r| r.built.is_err() || r.relation_residual > TOL)
        .map(|r| format!("{} {}", cases[r.case].label, r.shape))
        .collect();
    let worst = records.iter().map(|r| r.relation_residual).fold(0.0, f64::max);
    let refused = excluded.iter().all(|e| e.1);
    let excl: Vec<&str> = excluded.iter().map(|e| e.0.as_str()).collect();
    Outcome {
        pass: failures.is_empty() && refused,
        detail: format!(
            "{} modules over {} cases, max residual {worst:.2e}; P_n = 0 excluded (build refused: {refused}, rerun with Q=(5,15/2)): [{}]{}",
            records.len(),
            cases.len(),
            excl.join(", "),
            if failures.is_empty() { String::new() } else { format!("; failing {failures:?}") }
        ),
    }
}

fn criterion_2(records: &[ModuleRecord]) -> Outcome {
    let bad = records.iter().filter(|r| r.total_dim as u128 != r.predicted.0).count();
    Outcome { pass: bad == 0, detail: format!("{} shapes, {bad} mismatches", records.len()) }
}

fn criterion_3(records: &[ModuleRecord], cases: &[Case]) -> Outcome {
    let mut combinatorial = 0;
    let mut bad = Vec::new();
    for f in [Flavor::Zero, Flavor::S, Flavor::Ss] {
        for m in 0..=3 {
            for n in 1..=6 {
                let (l, r) = census_identity(f, m, n);
                combinatorial += 1;
                if l != r {
                    bad.push(format!("{} m={m} n={n}: {l} ≠ {r}", f.name()));
                }
            }
        }
    }
    let anchors = census_identity(Flavor::Zero, 1, 2) == (32, 32) && census_identity(Flavor::S, 0, 2) == (8, 8);
    let mut numeric = 0;
    for (k, c) in cases.iter().enumerate() {
        let lhs: u128 = records
            .iter()
            .filter(|r| r.case == k)
            .map(|r| {
                let d = r.total_dim as u128;
                match r.commutant_type {
                    Some(ModuleType::M) => d * d,
                    Some(ModuleType::Q) => d * d / 2,
                    None => 0,
                }
            })
            .sum();
        let (_, rhs) = census_identity(c.p.flavor, c.p.m(), c.n);
        numeric += 1;
        if lhs != rhs {
            bad.push(format!("numeric {}: {lhs} ≠ {rhs}", c.label));
        }
    }
    Outcome {
        pass: bad.is_empty() && anchors,
        detail: format!("{combinatorial} exact identities (n ≤ 6, m ≤ 3), {numeric} numeric (n ≤ 4), anchors 32/8: {anchors}{}", if bad.is_empty() { String::new() } else { format!("; {bad:?}") }),
    }
}

fn criterion_4(records: &[ModuleRecord]) -> Outcome {
    let bad = records.iter().filter(|r| r.commutant_type != Some(r.predicted.1)).count();
    let q = records.iter().filter(|r| r.commutant_type == Some(ModuleType::Q)).count();
    Outcome {
        pass: bad == 0,
        detail: format!("{} modules ({q} type Q) classified by commutant dimensions, {bad} mismatches", records.len()),
    }
}

fn criterion_5(records: &[ModuleRecord], cases: &[Case]) -> Outcome {
    let spin_bad = records.iter().filter(|r| !r.spin_up_full).count();
    let mut clashes = 0;
    for (k, c) in cases.iter().enumerate() {
        let group: Vec<&ModuleRecord> = records.iter().filter(|r| r.case == k).collect();
        for i in 0..group.len() {
            for j in i + 1..group.len() {
                let same = group[i].central.iter().zip(&group[j].central).all(|(a, b)| c.p.eq(a, b));
                if same {
                    clashes += 1;
                }
            }
        }
    }
    Outcome {
        pass: spin_bad == 0 && clashes == 0,
        detail: format!("5 seeded spin-ups per module, {spin_bad} incomplete; {clashes} residue-vector clashes"),
    }
}

fn random_scalar(rng: &mut ChaCha8Rng, nonzero: bool) -> String {
    loop {
        let a: i64 = rng.gen_range(-9..=9);
        let b: i64 = rng.gen_range(1..=5);
        if !nonzero || a != 0 {
            return format!("{a}/{b}");
        }
    }
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut checked = 0;
    let mut bad = Vec::new();
    let mut forced_ok = true;
    for draw in 0..20 {
        let q = loop {
            let a: i64 = rng.gen_range(2..=9);
            let b: i64 = rng.gen_range(1..=7);
            if a != b {
                break format!("{a}/{b}");
            }
        };
        let qs: Vec<String> = (0..2).map(|_| random_scalar(&mut rng, true)).collect();
        for (v, f) in combos() {
            for m in 0..=2 {
                let refs: Vec<&str> = qs[..m].iter().map(String::as_str).collect();
                let qq = if v == Variant::Degenerate { "1" } else { q.as_str() };
                let Ok(p) = ParameterSet::parse(v, f, qq, &refs, Precision::default()) else {
                    continue;
                };
                for n in 1..=3 {
                    checked += 1;
                    if !p.verify_separate_equivalence(n) {
                        bad.push(format!("draw {draw} {} {} m={m} n={n}", v.name(), f.name()));
                    }
                }
            }
        }
    }
    for (v, f) in combos() {
        let crafted: Vec<(Vec<&str>, usize)> = match v {
            Variant::Nondegenerate => vec![(vec!["1"], 1), (vec!["-1"], 1), (vec!["5", "5"], 1), (vec!["5", "45/4"], 2)],
            Variant::Degenerate => vec![(vec!["-1"], 1), (vec!["1"], 2), (vec!["-1/2"], 2), (vec!["5", "5"], 1), (vec!["5", "7"], 3)],
        };
        for (qs, forced_from) in crafted {
            let p = params(v, f, &qs);
            for n in 1..=3 {
                checked += 1;
                if !p.verify_separate_equivalence(n) {
                    bad.push(format!("crafted {} {} Q={qs:?} n={n}", v.name(), f.name()));
                }
                if n >= forced_from && !p.separability_vanishes(n) {
                    forced_ok = false;
                    bad.push(format!("crafted {} {} Q={qs:?} n={n} did not force P_n = 0", v.name(), f.name()));
                }
            }
        }
    }
    Outcome {
        pass: bad.is_empty() && forced_ok,
        detail: format!("{checked} (parameters, n) pairs, 20 random draws plus crafted P_n = 0 draws{}", if bad.is_empty() { String::new() } else { format!("; {bad:?}") }),
    }
}

fn criterion_7(records: &[ModuleRecord]) -> Outcome {
    let bad = records.iter().filter(|r| !r.intertwiners_pass).count();
    let worst = records.iter().map(|r| r.intertwiner_worst).fold(0.0, f64::max);
    Outcome {
        pass: bad == 0,
        detail: format!("cross-block ranks full and squares/exchanges within {TOL:e} (worst {worst:.2e}); {bad} failing modules"),
    }
}

fn criterion_8() -> Outcome {
    let mut runs = Vec::new();
    for (v, f) in combos() {
        for m in 0..=1 {
            for n in 1..=2 {
                runs.push((params(v, f, &STANDARD[..m]), n, false));
            }
        }
    }
    runs.push((params(Variant::Nondegenerate, Flavor::Zero, &["1"]), 1, true));
    let results = Exec::Parallel.map(&runs, |(p, n, crafted)| (oracle_report(p, *n), p.separability_vanishes(*n), *crafted));
    let mut bad = Vec::new();
    let mut summary = Vec::new();
    for ((p, n, _), (rep, vanishes, crafted)) in runs.iter().zip(results) {
        let tag = format!("{} {} m={} n={n}", p.variant.name(), p.flavor.name(), p.m());
        match rep {
            Ok(r) => {
                if crafted {
                    summary.push(format!("crafted Q₁=1: rank {}/{}", r.rank, r.dim));
                    if r.rank >= r.dim {
                        bad.push(format!("{tag} crafted: full rank"));
                    }
                } else if !vanishes && (r.rank != r.dim || r.relation_residual > TOL) {
                    bad.push(format!("{tag}: rank {}/{} residual {:.1e}", r.rank, r.dim, r.relation_residual));
                }
            }
            Err(e) => bad.push(format!("{tag}: {e}")),
        }
    }
    Outcome {
        pass: bad.is_empty(),
        detail: format!("{} oracle runs, full trace-form rank wherever P_n ≠ 0; {}{}", runs.len() - 1, summary.join(", "), if bad.is_empty() { String::new() } else { format!("; {bad:?}") }),
    }
}

fn criterion_9() -> Outcome {
    let mut bad = Vec::new();
    for n in 0..=7 {
        for m in 0..=3 {
            if !check_rsk_identities(n, m) {
                bad.push(format!("rsk n={n} m={m}"));
            }
        }
    }
    for n in 0..=6 {
        for m in 0..=3 {
            if !check_std_num(Flavor::Ss, m, n) {
                bad.push(format!("std-num ss n={n} m={m}"));
            }
        }
    }
    Outcome { pass: bad.is_empty(), detail: format!("rsk n ≤ 7, m ≤ 3; ss factorizations n ≤ 6, m ≤ 3{}", if bad.is_empty() { String::new() } else { format!("; {bad:?}") }) }
}

fn criterion_10() -> Outcome {
    let mut runs = Vec::new();
    for (v, f) in combos() {
        for m in 0..=2 {
            for n in 1..=3 {
                if enumerate_multipartitions(f, m, n).is_empty() {
                    continue;
                }
                let mut p = params(v, f, &STANDARD[..m]);
                if p.separability_vanishes(n) {
                    p = params(v, f, &SUPPLEMENT[..m]);
                }
                runs.push((p, n));
            }
        }
    }
    let mut bad = Vec::new();
    let mut worst: f64 = 0.0;
    let mut cross = 0;
    for (p, n) in &runs {
        match center_check(p, *n, TOL, Exec::Parallel) {
            Ok(r) => {
                worst = worst.max(r.max_residual);
                if !r.pass {
                    bad.push(format!("{} {} m={} n={n}", p.variant.name(), p.flavor.name(), p.m()));
                }
                if *n <= 2 && p.m() <= 1 {
                    let center = regular_representation(p, *n).map(|rep| rep.even_center_dim());
                    cross += 1;
                    if center.as_ref().ok() != Some(&r.shapes.len()) {
                        bad.push(format!("{} {} m={} n={n}: even center {center:?}, {} shapes", p.variant.name(), p.flavor.name(), p.m(), r.shapes.len()));
                    }
                }
            }
            Err(e) => bad.push(format!("{} {} m={} n={n}: {e}", p.variant.name(), p.flavor.name(), p.m())),
        }
    }
    Outcome {
        pass: bad.is_empty(),
        detail: format!("{} parameter sets, scalar residual {worst:.2e}, shapes separated; even center of the regular representation counts shapes in {cross} cases (n ≤ 2, m ≤ 1){}", runs.len(), if bad.is_empty() { String::new() } else { format!("; {bad:?}") }),
    }
}

fn main() {
    let start = Instant::now();
    let (cases, excluded) = cases();
    let records = sweep(&cases);
    println!("built {} modules in {:.1}s", records.len(), start.elapsed().as_secs_f64());
    let mut ok = true;
    ok &= line(1, "relation suite", start, &criterion_1(&records, &cases, &excluded));
    ok &= line(2, "dimension formula", start, &criterion_2(&records));
    let t = Instant::now();
    ok &= line(3, "census identity", t, &criterion_3(&records, &cases));
    ok &= line(4, "type classification", t, &criterion_4(&records));
    ok &= line(5, "irreducibility and non-isomorphism", t, &criterion_5(&records, &cases));
    let t = Instant::now();
    ok &= line(6, "separability equivalence", t, &criterion_6());
    ok &= line(7, "intertwiner bijectivity", t, &criterion_7(&records));
    let t = Instant::now();
    ok &= line(8, "oracle agreement", t, &criterion_8());
    let t = Instant::now();
    ok &= line(9, "rsk identities", t, &criterion_9());
    let t = Instant::now();
    ok &= line(10, "center", t, &criterion_10());
    println!("acceptance: {} ({:.1}s)", if ok { "all criteria pass" } else { "FAILED" }, start.elapsed().as_secs_f64());
    if !ok {
        std::process::exit(1);
    }
}
