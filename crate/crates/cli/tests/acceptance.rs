//! Acceptance suite: one PASS/FAIL line per criterion.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use semnorm::algebra::{validate_table, BicyclicCarrier, DEFAULT_BOUND, DEFAULT_SAMPLES};
use semnorm::clifford_bridge::{norm_from_metric, reproduce_counter_family, roundtrip_check, verify_dclifford};
use semnorm::exact::{q, Q};
use semnorm::fixtures::{catalog, clifford_catalog, semigroups, Fixture};
use semnorm::metrics::{check_metric_chain, d1, is_metric, validate_ppm, verify_d2_triangle, verify_lemma_dist2};
use semnorm::norms::{
    check_subinvariance_and_convexity, classify, induced_p, is_norm, validate_pseudonorm, verify_bicyclic_pseudonorm,
    verify_norm_properties, BicyclicNorm, GroupNorm,
};
use semnorm::ordermaps::{
    is_submodular, topkis_map, transform_concave, transform_kunzi, transform_max, transform_shift, PairMap,
};
use semnorm::random::{random_concave, random_points, random_ppm, random_submodular, small_q};
use semnorm::report::{Report, Status};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn first_failure(r: &Report) -> String {
    match r.failures().next() {
        Some(a) => format!("{}: {} ({:?})", r.command, a.name, a.witness),
        None => r.command.clone(),
    }
}

fn passes(r: &Report, what: &str) -> Result<(), String> {
    ensure(r.passed, || format!("{what}: {}", first_failure(r)))
}

fn fixtures() -> Vec<Fixture> {
    catalog().expect("built-in fixtures")
}

fn c1_inverse_semigroup_core() -> Outcome {
    let start = Instant::now();
    let mut sizes = Vec::new();
    for (name, s) in semigroups().map_err(|e| e.to_string())? {
        let again = validate_table(s.len(), &s.rows()).map_err(|e| format!("{name}: {e}"))?;
        passes(&again.verify_identities(), &name)?;
        ensure(s.natural_order() == s.natural_order_by_formula(), || format!("{name}: natural orders differ"))?;
        let c = s.clifford_conditions();
        ensure(c.iter().all(|&b| b == c[0]), || format!("{name}: Clifford conditions disagree {c:?}"))?;
        sizes.push(s.len());
    }
    ensure(sizes[..2] == [7, 34], || format!("I2, I3 sizes {:?}", &sizes[..2]))?;
    let t = start.elapsed();
    ensure(t < Duration::from_secs(60), || format!("took {t:?}"))?;
    Ok(format!("{} carriers, max {} elements, {:.2?}", sizes.len(), sizes.iter().max().unwrap(), t))
}

/// Random partial pseudo-metrics until at least `min_triples` ordered
/// triples are covered.
fn random_ppms(seed: u64, min_triples: usize) -> Vec<PairMap> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut triples = 0;
    while triples < min_triples {
        let n = rng.gen_range(2..=8);
        out.push(random_ppm(&mut rng, n));
        triples += n * n * n;
    }
    out
}

fn c2_dist2() -> Outcome {
    let mut fixture_triples = 0;
    for f in fixtures() {
        let p = induced_p(&f.semigroup, &f.valuation).map_err(|e| e.to_string())?;
        passes(&verify_lemma_dist2(&p), &f.name)?;
        passes(&verify_d2_triangle(&p), &f.name)?;
        fixture_triples += p.len().pow(3);
    }
    let mut random_triples = 0;
    for p in random_ppms(2, 100_000) {
        validate_ppm(&p).map_err(|e| e.to_string())?;
        passes(&verify_lemma_dist2(&p), "random ppm")?;
        passes(&verify_d2_triangle(&p), "random ppm")?;
        random_triples += p.len().pow(3);
    }
    Ok(format!("{fixture_triples} fixture triples, {random_triples} random triples"))
}

fn c3_metric_chain() -> Outcome {
    let mut maps: Vec<PairMap> = random_ppms(3, 100_000);
    for f in fixtures() {
        maps.push(induced_p(&f.semigroup, &f.valuation).map_err(|e| e.to_string())?);
    }
    let mut pairs = 0;
    for p in &maps {
        passes(&check_metric_chain(p), "metric chain")?;
        pairs += p.len() * p.len();
    }
    Ok(format!("{} partial pseudo-metrics, {pairs} pairs", maps.len()))
}

fn c4_counter_family() -> Outcome {
    let start = Instant::now();
    let r = reproduce_counter_family(1_000_000).map_err(|e| e.to_string())?;
    let t = start.elapsed();
    passes(&r, "counter family")?;
    ensure(t < Duration::from_secs(5), || format!("took {t:?}"))?;
    Ok(format!("k up to 10^6 in {t:.2?}"))
}

fn c5_ladder() -> Outcome {
    let mut weak = 0;
    let mut zero = false;
    let mut sup = false;
    for f in fixtures() {
        let c = classify(&f.semigroup, &f.valuation).map_err(|e| e.to_string())?;
        if !c.weakly_permutable {
            continue;
        }
        weak += 1;
        let l = c.ladder();
        ensure(l.iter().all(|&b| b == l[0]), || format!("{}: ladder {l:?}", f.name))?;
        if c.pstar_order_agrees == Some(false) {
            return Err(format!("{}: <=_p* differs from <=_p", f.name));
        }
        zero |= f.name.ends_with("/zero");
        sup |= f.name == "grid(2,2)/sup" && !l[0];
    }
    ensure(weak >= 20, || format!("only {weak} weakly permutable fixtures"))?;
    ensure(zero && sup, || "zero or sup-norm fixture missing".into())?;
    Ok(format!("{weak} weakly permutable fixtures"))
}

fn c6_properties() -> Outcome {
    let mut joint = 0;
    let all = fixtures();
    for f in &all {
        let (s, v) = (&f.semigroup, &f.valuation);
        passes(&verify_norm_properties(s, v).map_err(|e| e.to_string())?, &f.name)?;
        let r = check_subinvariance_and_convexity(s, v).map_err(|e| e.to_string())?;
        passes(&r, &f.name)?;
        for name in [
            "d0 right-subinvariant",
            "d1 right-subinvariant",
            "d0 radially convex",
            "d1 radially convex",
            "d0 to idempotent is restricted norm",
        ] {
            let a = r.assertion(name).ok_or_else(|| format!("{}: missing {name}", f.name))?;
            ensure(a.status == Status::Pass, || format!("{}: {name}", f.name))?;
        }
        let cyclic = classify(s, v).map_err(|e| e.to_string())?.cyclically_permutable;
        if cyclic {
            let a = r.assertion("joint continuity of addition").ok_or_else(|| format!("{}: no joint", f.name))?;
            ensure(a.status == Status::Pass, || format!("{}: joint continuity {:?}", f.name, a.status))?;
            joint += 1;
        }
    }
    Ok(format!("{} fixtures, joint continuity on {joint} cyclically permutable", all.len()))
}

fn c7_bridge() -> Outcome {
    let mut clifford = 0;
    let mut metric_inputs = 0;
    for f in fixtures().into_iter().filter(|f| f.semigroup.is_clifford()) {
        let (s, v) = (&f.semigroup, &f.valuation);
        passes(&verify_dclifford(s, v).map_err(|e| e.to_string())?, &f.name)?;
        clifford += 1;
        if s.identity().is_none() {
            continue;
        }
        let d = d1(&induced_p(s, v).map_err(|e| e.to_string())?);
        let (v2, r) = norm_from_metric(s, &d).map_err(|e| format!("{}: {e}", f.name))?;
        passes(&r, &f.name)?;
        passes(&validate_pseudonorm(s, &v2).map_err(|e| e.to_string())?, &f.name)?;
        if is_metric(&d) {
            ensure(is_norm(s, &v2), || format!("{}: recovered v is not a norm", f.name))?;
            metric_inputs += 1;
        }
    }
    let monoids = clifford_catalog().map_err(|e| e.to_string())?;
    for f in &monoids {
        passes(&roundtrip_check(&f.semigroup, &f.valuation).map_err(|e| e.to_string())?, &f.name)?;
    }
    Ok(format!("{clifford} Clifford fixtures, {metric_inputs} metric inputs, {} roundtrips", monoids.len()))
}

fn c8_bicyclic() -> Outcome {
    for k in [1, 2] {
        let carrier = BicyclicCarrier::new(k);
        passes(&carrier.verify_identities(DEFAULT_SAMPLES, 11, DEFAULT_BOUND), "bicyclic identities")?;
        for gn in [GroupNorm::L1, GroupNorm::LInf] {
            let r = verify_bicyclic_pseudonorm(&BicyclicNorm::new(k, gn), DEFAULT_SAMPLES, 11, DEFAULT_BOUND);
            passes(&r, "bicyclic norm")?;
            ensure(!r.exhaustive && r.sampling.is_some(), || "sampling not reported".into())?;
        }
    }
    Ok(format!("Z and Z^2, {DEFAULT_SAMPLES} samples each, coordinates <= {DEFAULT_BOUND}"))
}

fn c9_transforms() -> Outcome {
    const N: usize = 1000;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let check = |name: &str, p: PairMap| passes(&is_submodular(&p), name);
    for alpha in 1..=3 {
        for _ in 0..N {
            let (n, dims) = (rng.gen_range(2..=6), rng.gen_range(1..=3));
            let pts = random_points(&mut rng, n, dims);
            check("topkis", topkis_map(&pts, alpha).map_err(|e| e.to_string())?)?;
        }
    }
    for _ in 0..N {
        let n = rng.gen_range(2..=6);
        let p = random_ppm(&mut rng, n);
        let b: Q = small_q(&mut rng, 3) + q(1, 4);
        check("kunzi", transform_kunzi(&p, &b).map_err(|e| e.to_string())?)?;
        let f = random_concave(&mut rng);
        check("concave", transform_concave(&p, &f).map_err(|e| e.to_string())?)?;
        let sp = random_submodular(&mut rng, n);
        check("max", transform_max(&sp))?;
        let shift: Vec<Q> = (0..n).map(|_| small_q(&mut rng, 4) - q(2, 1)).collect();
        check("shift", transform_shift(&sp, &shift).map_err(|e| e.to_string())?)?;
    }
    Ok(format!("{N} instances per transform, Topkis with alpha 1..3"))
}

fn cli(args: &[&str]) -> (i32, Vec<u8>) {
    let o = Command::new(env!("CARGO_BIN_EXE_semnorm")).args(args).output().expect("binary runs");
    (o.status.code().unwrap_or(-1), o.stdout)
}

fn c10_cli_contract() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let b = dir.path().join("b.json");
    let b = b.to_str().unwrap();
    ensure(cli(&["generate", "--family", "bicyclic", "--k", "2", "--out", b]).0 == 0, || "generate".into())?;
    let sampled = ["--seed", "5", "--samples", "2000", "verify", "--what", "pseudonorm", "--semigroup", b];
    let exhaustive = ["verify", "--what", "norm", "--fixture", "clifford(4,4)/length+cardinality"];
    for args in [&sampled[..], &exhaustive[..]] {
        let first = cli(args);
        ensure(first == cli(args), || format!("re-run differs: {args:?}"))?;
        let mut one = vec!["--threads", "1"];
        one.extend_from_slice(args);
        ensure(first == cli(&one), || format!("thread count changes output: {args:?}"))?;
    }

    let (code, _) = cli(&["verify", "--what", "pseudonorm", "--fixture", "powerset(3)/cardinality"]);
    ensure(code == 0, || format!("pass scenario exited {code}"))?;
    let (code, out) = cli(&["verify", "--what", "norm", "--fixture", "grid(2,2)/sup"]);
    let has_witness = String::from_utf8_lossy(&out).contains("\"witness\"");
    ensure(code == 1 && has_witness, || format!("math-fail scenario exited {code}"))?;
    let sg = dir.path().join("s.json");
    let v = dir.path().join("v.json");
    ensure(cli(&["generate", "--family", "cyclic", "--n", "2", "--out", sg.to_str().unwrap()]).0 == 0, || {
        "generate".into()
    })?;
    std::fs::write(&v, r#"{"kind":"valuation","n":2,"values":["0","1/0"]}"#).map_err(|e| e.to_string())?;
    let (code, _) = cli(&[
        "verify",
        "--what",
        "pseudonorm",
        "--semigroup",
        sg.to_str().unwrap(),
        "--valuation",
        v.to_str().unwrap(),
    ]);
    ensure(code == 2, || format!("format-error scenario exited {code}"))?;
    Ok("byte-identical re-runs; exit codes 0/1/2".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("inverse-semigroup core", c1_inverse_semigroup_core),
        ("d2 lemma and triangle inequality", c2_dist2),
        ("metric chain d0 <= 2 d1 <= 2 (d0 ∧ d2)", c3_metric_chain),
        ("counterexample family", c4_counter_family),
        ("separation ladder", c5_ladder),
        ("norm properties, subinvariance, convexity", c6_properties),
        ("Clifford bridge", c7_bridge),
        ("bicyclic monoid", c8_bicyclic),
        ("submodular transforms", c9_transforms),
        ("CLI contract", c10_cli_contract),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let t = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {:>2}: PASS {name}: {detail} [{t:.2?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL {name}: {why} [{t:.2?}]", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
