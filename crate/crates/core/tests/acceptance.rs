//! Acceptance suite. Each criterion prints one PASS/FAIL line with its
//! runtime; the process exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use kstrata::batch::{classify_batch, enumerate_signatures, Execution};
use kstrata::classifier::{primitive_nonhyperelliptic_components, ComponentDescriptor};
use kstrata::degeneration::{
    enumerate_zero_splits, genus0_has_cylinder, genus0_has_simple_cylinder, rejoin_result, split_result,
};
use kstrata::framing::Mod2QuadraticForm;
use kstrata::genus_one;
use kstrata::prong::{enumerate_local_classes, local_classes};
use kstrata::quartic::{
    branch_series, smoothness_certificate, tangent_contact_order, vanishing_order, MultivariatePoly,
    SmoothnessCertificate, VanishingOrder,
};
use kstrata::Signature;
use kstrata_oracle as oracle;
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;

fn ensure(condition: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if condition {
        Ok(())
    } else {
        Err(message())
    }
}

fn count(k: u32, g: u32, orders: &[i64]) -> Result<usize, String> {
    let sig = Signature::new(k, g, orders).map_err(|e| e.to_string())?;
    primitive_nonhyperelliptic_components(&sig)
        .map(|r| r.count)
        .map_err(|e| e.to_string())
}

/// Positive partitions of `n` into even parts, largest part first.
fn even_partitions(n: i64, max: i64) -> Vec<Vec<i64>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let mut part = max.min(n);
    if part % 2 == 1 {
        part -= 1;
    }
    while part >= 2 {
        for mut rest in even_partitions(n - part, part) {
            rest.insert(0, part);
            out.push(rest);
        }
        part -= 2;
    }
    out
}

fn exception_table() -> Outcome {
    let rows: &[(u32, u32, &[i64], usize)] = &[
        (1, 2, &[2], 0),
        (1, 2, &[1, 1], 0),
        (2, 2, &[4], 0),
        (2, 2, &[3, 1], 0),
        (2, 2, &[2, 2], 0),
        (2, 2, &[2, 1, 1], 0),
        (2, 2, &[1, 1, 1, 1], 0),
        (1, 3, &[4], 1),
        (1, 3, &[2, 2], 1),
        (1, 2, &[4, -2], 1),
        (1, 2, &[2, 2, -2], 1),
        (3, 2, &[6], 1),
        (3, 2, &[4, 2], 1),
        (3, 2, &[2, 2, 2], 1),
        (2, 3, &[9, -1], 2),
        (2, 3, &[6, 3, -1], 2),
        (2, 3, &[3, 3, 3, -1], 2),
        (2, 4, &[12], 2),
        (2, 4, &[9, 3], 2),
        (2, 4, &[6, 6], 2),
        (2, 4, &[6, 3, 3], 2),
        (2, 4, &[3, 3, 3, 3], 2),
        (3, 3, &[12], 3),
        (3, 3, &[8, 4], 3),
        (3, 3, &[4, 4, 4], 3),
    ];
    let mut checked = 0;
    for &(k, g, orders, expected) in rows {
        let got = count(k, g, orders)?;
        ensure(got == expected, || format!("({k},{g},{orders:?}): got {got}, expected {expected}"))?;
        checked += 1;
    }
    for g in 3..=5u32 {
        for mut kappa in even_partitions(2 * i64::from(g), 2 * i64::from(g)) {
            kappa.extend([-1, -1]);
            let sig = Signature::new(1, g, &kappa).map_err(|e| e.to_string())?;
            let report = primitive_nonhyperelliptic_components(&sig).map_err(|e| e.to_string())?;
            ensure(report.count == 2, || format!("(1,{g},{kappa:?}): got {}", report.count))?;
            ensure(
                report
                    .components
                    .iter()
                    .all(|c| matches!(c, ComponentDescriptor::RelativeArfLabeled { .. })),
                || format!("(1,{g},{kappa:?}) not labelled by relative Arf"),
            )?;
            checked += 1;
        }
    }
    Ok(format!("{checked} rows"))
}

fn default_rule_sweep() -> Outcome {
    let mut total = 0;
    for k in 1..=8u32 {
        for g in 2..=3u32 {
            let ki = i64::from(k);
            let sigs = enumerate_signatures(k, g, 1 - ki, 3 * ki, 5);
            let reports = classify_batch(&sigs, Execution::Parallel);
            for (sig, report) in sigs.iter().zip(reports) {
                let got = report.map_err(|e| format!("{sig}: {e}"))?.count;
                let expected = oracle::expected_count(k, g, sig.orders());
                ensure(got == expected, || format!("{sig}: got {got}, table says {expected}"))?;
            }
            total += sigs.len();
        }
    }
    Ok(format!("{total} signatures"))
}

fn genus_one_oracle() -> Outcome {
    let sigs: Vec<Signature> = enumerate_signatures(1, 1, -6, 6, 4)
        .into_iter()
        .filter(|s| s.len() >= 2)
        .collect();
    let mut count_checks = 0;
    let mut class_checks = 0;
    for sig in &sigs {
        let coefficients = sig.orders();
        for n in 1..=8i64 {
            let formula = oracle::torsion_solution_formula(coefficients, n);
            let dp = oracle::torsion_solution_count(coefficients, n);
            ensure(dp == formula, || format!("{sig} N={n}: counted {dp}, formula {formula}"))?;
            if (n * n) .pow(coefficients.len() as u32) <= 1 << 16 {
                let brute = oracle::torsion_solution_count_exhaustive(coefficients, n);
                ensure(brute == formula, || format!("{sig} N={n}: enumerated {brute}, formula {formula}"))?;
            }
            count_checks += 1;
        }
        let d = sig.gcd_orders() as i64;
        let expected: BTreeSet<i64> = genus_one::components(sig)
            .map_err(|e| e.to_string())?
            .iter()
            .map(|c| c.torsion_order as i64)
            .collect();
        let largest = (1..=8).rev().find(|n| n % d == 0 && *n >= 2);
        for n in (2..=8).filter(|n| n % d == 0) {
            let found: BTreeSet<i64> = oracle::order_classes(coefficients, n).into_keys().collect();
            ensure(found.is_subset(&expected), || {
                format!("{sig} N={n}: classes {found:?} not among components {expected:?}")
            })?;
            if Some(n) == largest {
                ensure(found == expected, || {
                    format!("{sig} N={n}: classes {found:?}, components {expected:?}")
                })?;
            }
            class_checks += 1;
        }
    }
    Ok(format!(
        "{} signatures, {count_checks} count checks, {class_checks} class decompositions",
        sigs.len()
    ))
}

fn minimal_genus_two() -> Outcome {
    let counts: Vec<usize> = (1..=8u32)
        .map(|k| count(k, 2, &[2 * i64::from(k)]))
        .collect::<Result<_, _>>()?;
    ensure(counts == [0, 0, 1, 1, 2, 1, 2, 1], || format!("got {counts:?}"))?;
    Ok(format!("{counts:?}"))
}

fn prong_oracle() -> Outcome {
    let mut checked = 0;
    for k in 1..=10u32 {
        let ki = i64::from(k);
        for a in (1 - ki)..=12 {
            for b in (1 - ki)..=12 {
                let closed = local_classes(k, a, b).map_err(|e| e.to_string())?;
                let walked = enumerate_local_classes(k, a, b).map_err(|e| e.to_string())?;
                ensure(closed == walked, || format!("k={k} a={a} b={b}: {closed} vs {walked}"))?;
                let (p, q) = ((ki + a) as u64, (ki + b) as u64);
                if p * q <= 64 {
                    let orbits = oracle::prong_orbits(p, q);
                    ensure(orbits == closed, || format!("k={k} a={a} b={b}: oracle {orbits}"))?;
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} triples"))
}

fn arf_basis_independence() -> Outcome {
    let mut forms = 0;
    let mut bases_seen = 0;
    for g in 1..=2u32 {
        let bases = oracle::symplectic_bases(g);
        bases_seen += bases.len();
        let dim = 2 * g;
        for values in 0..1u32 << dim {
            let arfs: BTreeSet<u8> = bases.iter().map(|b| oracle::arf_in_basis(g, values, b)).collect();
            ensure(arfs.len() == 1, || format!("g={g} form {values:b}: Arf varies with basis"))?;
            let bit = |i: u32| (values >> i & 1) as u8;
            let form = Mod2QuadraticForm::new((0..g).map(bit).collect(), (g..dim).map(bit).collect())
                .map_err(|e| e.to_string())?;
            let arf = *arfs.iter().next().expect("nonempty");
            ensure(form.arf() == arf, || format!("g={g} form {values:b}: library Arf differs"))?;
            ensure(oracle::arf_by_counting(g, values) == arf, || {
                format!("g={g} form {values:b}: counting Arf differs")
            })?;
            for x in 0..1u32 << dim {
                let coords: Vec<u8> = (0..dim).map(|i| (x >> i & 1) as u8).collect();
                let q = form.eval(&coords).map_err(|e| e.to_string())?;
                ensure(q == oracle::quadratic_value(g, values, x), || {
                    format!("g={g} form {values:b}: value at {x:b} differs")
                })?;
            }
            forms += 1;
        }
    }
    Ok(format!("{forms} forms over {bases_seen} symplectic bases"))
}

fn poly(text: &str) -> Result<MultivariatePoly, String> {
    MultivariatePoly::parse_in(text, &["x", "y"]).map_err(|e| e.to_string())
}

fn integer_coefficients(series: &kstrata::quartic::TruncatedPowerSeries, through: usize) -> Vec<BigRational> {
    series.truncate(through).coeffs().to_vec()
}

fn ints(values: &[i64]) -> Vec<BigRational> {
    values.iter().map(|&v| BigRational::from_integer(v.into())).collect()
}

fn sporadic_verification() -> Outcome {
    let f1 = poly("x^4 - x*y^3 + x^3 - y^3 - x^2 - x*y - y^2 + y")?;
    let f2 = poly("-x^4 + x^3*y - x*y^3 - y^4 - x^3 - x^2*y - x*y^2 - y^3 - x*y - y^2 + y")?;
    let g1 = poly("2*x^3 - y^3 - x^2 - 2*x*y + y")?;
    let h = poly("x^2 - y")?;
    let g2 = poly("-x^3 + x^2*y - y^3 - 2*x*y - y^2 + y")?;
    let big_f1 = MultivariatePoly::parse_in(
        "x^4 - x*y^3 + x^3*z - y^3*z - x^2*z^2 - x*y*z^2 - y^2*z^2 + y*z^3",
        &["x", "y", "z"],
    )
    .map_err(|e| e.to_string())?;
    let big_f2 = MultivariatePoly::parse_in(
        "-x^4 + x^3*y - x*y^3 - y^4 - x^3*z - x^2*y*z - x*y^2*z - y^3*z - x*y*z^2 - y^2*z^2 + y*z^3",
        &["x", "y", "z"],
    )
    .map_err(|e| e.to_string())?;
    let err = |e: kstrata::quartic::SeriesError| e.to_string();

    let phi1 = branch_series(&f1, 12).map_err(err)?;
    let listed1 = ints(&[0, 0, 1, 0, 0, 0, 1, 2, 4, 8, 19, 44, 101]);
    ensure(integer_coefficients(&phi1, 12) == listed1, || format!("phi1 = {phi1}"))?;
    let phi2 = branch_series(&f2, 12).map_err(err)?;
    let listed2 = ints(&[0, 0, 0, 1, 2, 3, 5, 11, 27, 66, 162, 407, 1043]);
    ensure(integer_coefficients(&phi2, 12) == listed2, || format!("phi2 = {phi2}"))?;

    let phi1 = branch_series(&f1, 13).map_err(err)?;
    let phi2 = branch_series(&f2, 13).map_err(err)?;
    let checks = [
        ("ord g1", vanishing_order(&g1, &phi1, 13).map_err(err)?, 12),
        ("ord h", vanishing_order(&h, &phi1, 7).map_err(err)?, 6),
        ("ord g2", vanishing_order(&g2, &phi2, 13).map_err(err)?, 12),
        ("contact f1", tangent_contact_order(&f1, 13).map_err(err)?, 2),
        ("contact f2", tangent_contact_order(&f2, 13).map_err(err)?, 3),
    ];
    for (name, got, want) in checks {
        ensure(got == VanishingOrder::Exact(want), || format!("{name}: got {got}, expected {want}"))?;
    }
    let mut certificates = Vec::new();
    for (name, f) in [("F1", &big_f1), ("F2", &big_f2)] {
        let c = smoothness_certificate(f).map_err(|e| e.to_string())?;
        ensure(!matches!(c, SmoothnessCertificate::SingularAt(_)), || format!("{name}: {c}"))?;
        certificates.push(format!("{name} {c}"));
    }
    Ok(format!("series, orders and contacts exact; {}", certificates.join(", ")))
}

fn cylinder_criteria() -> Outcome {
    let compare = |k: u32, orders: &[i64]| -> Result<(), String> {
        let ki = i64::from(k);
        let dp = genus0_has_cylinder(k, orders).map_err(|e| e.to_string())?;
        let simple = genus0_has_simple_cylinder(k, orders).map_err(|e| e.to_string())?;
        ensure(dp == oracle::has_subset_sum(ki, orders), || format!("cylinder k={k} {orders:?}"))?;
        ensure(simple == oracle::has_good_partition(ki, orders), || {
            format!("simple cylinder k={k} {orders:?}")
        })
    };
    ensure(
        genus0_has_cylinder(2, &[-1, -1, -1, -1]) == Ok(true)
            && genus0_has_simple_cylinder(2, &[-1, -1, -1, -1]) == Ok(false),
        || "(-1,-1,-1,-1) for k=2 should be cylindrical but not simple".into(),
    )?;
    let mut exhaustive = 0;
    for k in 1..=6u32 {
        let ki = i64::from(k);
        let max_len = if k <= 3 { 12 } else { 8 };
        let sigs = enumerate_signatures(k, 0, -2 * ki, 2 * ki, max_len);
        let results = kstrata::batch::map(&sigs, Execution::Parallel, |s| compare(k, s.orders()));
        results.into_iter().collect::<Result<Vec<()>, String>>()?;
        exhaustive += sigs.len();
    }
    let mut rng = StdRng::seed_from_u64(0x5eed_c71d);
    let mut sampled = Vec::new();
    while sampled.len() < 20_000 {
        let k: u32 = rng.gen_range(4..=6);
        let ki = i64::from(k);
        let n = rng.gen_range(9..=12);
        let mut orders: Vec<i64> = (0..n - 1)
            .map(|_| loop {
                let v = rng.gen_range(-2 * ki..=3 * ki);
                if v != 0 {
                    break v;
                }
            })
            .collect();
        let last = -2 * ki - orders.iter().sum::<i64>();
        if last < -2 * ki || last == 0 {
            continue;
        }
        orders.push(last);
        sampled.push((k, orders));
    }
    let results = kstrata::batch::map(&sampled, Execution::Parallel, |(k, o)| compare(*k, o));
    results.into_iter().collect::<Result<Vec<()>, String>>()?;
    Ok(format!(
        "{exhaustive} enumerated signatures, {} sampled with 9-12 entries",
        sampled.len()
    ))
}

fn degeneration_round_trip() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x00de_c0de);
    let mut done = 0;
    while done < 10_000 {
        let k: u32 = rng.gen_range(1..=8);
        let g: u32 = rng.gen_range(1..=5);
        let ki = i64::from(k);
        let extra: Vec<i64> = (0..rng.gen_range(0..=4))
            .map(|_| loop {
                let v = rng.gen_range(1 - ki..=3 * ki);
                if v != 0 {
                    break v;
                }
            })
            .collect();
        let z = ki * (2 * i64::from(g) - 2) - extra.iter().sum::<i64>();
        if z < 2 {
            continue;
        }
        let mut orders = extra.clone();
        orders.push(z);
        let source = Signature::new(k, g, &orders).map_err(|e| e.to_string())?;
        let zero_index = source.orders().iter().position(|&o| o == z).expect("z present");
        let splits = enumerate_zero_splits(k, z).map_err(|e| e.to_string())?;
        let pick = splits[rng.gen_range(0..splits.len())];
        let lower = split_result(&source, zero_index, pick.a, pick.b).map_err(|e| e.to_string())?;
        let revalidated = Signature::new(k, g - 1, lower.orders()).map_err(|e| e.to_string())?;
        ensure(revalidated == lower, || format!("{lower} does not revalidate"))?;
        let ia = lower.orders().iter().position(|&o| o == pick.a).expect("a present");
        let ib = lower
            .orders()
            .iter()
            .enumerate()
            .position(|(i, &o)| o == pick.b && i != ia)
            .expect("b present");
        let back = rejoin_result(&lower, ia, ib).map_err(|e| e.to_string())?;
        ensure(back == source, || format!("{source} -> {lower} -> {back}"))?;
        done += 1;
    }
    Ok(format!("{done} random splits"))
}

struct Criterion {
    number: u32,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { number: 1, name: "exception-table fidelity", limit: Some(Duration::from_secs(1)), run: exception_table },
        Criterion { number: 2, name: "default-rule sweep", limit: Some(Duration::from_secs(60)), run: default_rule_sweep },
        Criterion { number: 3, name: "genus-one torsion oracle", limit: Some(Duration::from_secs(30)), run: genus_one_oracle },
        Criterion { number: 4, name: "minimal genus-two law", limit: None, run: minimal_genus_two },
        Criterion { number: 5, name: "prong oracle", limit: Some(Duration::from_secs(5)), run: prong_oracle },
        Criterion { number: 6, name: "Arf basis independence", limit: Some(Duration::from_secs(30)), run: arf_basis_independence },
        Criterion { number: 7, name: "sporadic quartic verification", limit: Some(Duration::from_secs(10)), run: sporadic_verification },
        Criterion { number: 8, name: "cylinder criteria", limit: Some(Duration::from_secs(20)), run: cylinder_criteria },
        Criterion { number: 9, name: "degeneration round trip", limit: None, run: degeneration_round_trip },
    ];
    let mut failures = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let outcome = match (outcome, c.limit) {
            (Ok(detail), Some(limit)) if elapsed > limit => {
                Err(format!("{detail}; took longer than the {:.0?} limit", limit))
            }
            (other, _) => other,
        };
        match outcome {
            Ok(detail) => println!("PASS criterion {} ({}) in {:.2?}: {detail}", c.number, c.name, elapsed),
            Err(reason) => {
                failures += 1;
                println!("FAIL criterion {} ({}) in {:.2?}: {reason}", c.number, c.name, elapsed);
            }
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} criterion(s) failed");
        ExitCode::FAILURE
    }
}
