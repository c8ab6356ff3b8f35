//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::path::PathBuf;
use std::process::{Command, Output};
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use serde_json::Value;

use cutlab::characterizations::{
    real_two_group_check_set, remark_two_group_sum, CLASS2_FACTOR_CENTRAL,
    CLASS2_FACTOR_PER_ELEMENT, CLASS2_POWER, NILPOTENT, ODD_ORDER, SOLVABLE_EPPO,
};
use cutlab::corpus::builtin_corpus;
use cutlab::{construct, decide_cut, structural_profile, FiniteGroup, GroupSpec, Limits};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cutlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cutlab"))
        .args(args)
        .output()
        .expect("cutlab runs")
}

fn spec_file(name: &str, json: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, json).unwrap();
    path
}

fn analyze(name: &str, json: &str, expect: &str) -> Result<(Value, Duration), String> {
    let path = spec_file(name, json);
    let start = Instant::now();
    let out = cutlab(&[
        "analyze",
        path.to_str().unwrap(),
        "--expect",
        expect,
        "--format",
        "json",
    ]);
    let elapsed = start.elapsed();
    ensure(out.status.code() == Some(0), || {
        format!(
            "exit status {:?}: {}",
            out.status.code(),
            String::from_utf8_lossy(&out.stderr)
        )
    })?;
    let doc = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    Ok((doc, elapsed))
}

struct CorpusRun {
    doc: Value,
    elapsed: Duration,
    status: Option<i32>,
}

/// Single-threaded JSON run of the full corpus, shared by several criteria.
fn corpus_run() -> &'static CorpusRun {
    static RUN: OnceLock<CorpusRun> = OnceLock::new();
    RUN.get_or_init(|| {
        let start = Instant::now();
        let out = cutlab(&["corpus", "run", "--threads", "1", "--format", "json"]);
        let elapsed = start.elapsed();
        CorpusRun {
            doc: serde_json::from_slice(&out.stdout).expect("corpus report is JSON"),
            elapsed,
            status: out.status.code(),
        }
    })
}

fn entries() -> &'static [Value] {
    corpus_run().doc["entries"].as_array().expect("entries")
}

fn analyzed() -> impl Iterator<Item = &'static Value> {
    entries().iter().filter(|e| e["error"].is_null())
}

fn counter(name: &str) -> u64 {
    corpus_run().doc["counters"][name]
        .as_u64()
        .expect("counter")
}

fn pi(e: &Value) -> Vec<u64> {
    e["pi"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p.as_u64().unwrap())
        .collect()
}

fn cut(e: &Value) -> bool {
    e["classification"]["cut"].as_bool().unwrap()
}

fn positive_example() -> Check {
    let (doc, t) = analyze(
        "positive.json",
        r#"{"kind":"metacyclic","m":12,"n":2,"r":5}"#,
        "cut",
    )?;
    ensure(doc["cut"] == true, || "cut is not true".into())?;
    ensure(doc["structure"]["eppo"] == false, || {
        "eppo is not false".into()
    })?;
    ensure(doc["order"] == 24, || "order is not 24".into())?;
    ensure(t < Duration::from_secs(1), || format!("took {t:?}"))?;
    Ok(format!("cut=true eppo=false in {} ms", t.as_millis()))
}

fn negative_example() -> Check {
    let (doc, t) = analyze(
        "negative.json",
        r#"{"kind":"metacyclic","m":9,"n":9,"r":4}"#,
        "not-cut",
    )?;
    ensure(doc["cut"] == false, || "cut is not false".into())?;
    let first = &doc["witnesses"][0];
    ensure(first["element"] == "b" && first["exponent"] == 2, || {
        format!("first witness is {first}")
    })?;
    for key in ["center", "central_quotient"] {
        let s = &doc[key];
        ensure(
            s["order"] == 9 && s["abelian"] == true && s["exponent"] == 3 && s["cut"] == true,
            || format!("{key}: {s}"),
        )?;
    }
    ensure(t < Duration::from_secs(1), || format!("took {t:?}"))?;

    // Independently: b² is conjugate to neither b nor b⁻¹.
    let g = construct(&GroupSpec::metacyclic(9, 9, 4)).unwrap();
    let b = 9;
    let b2 = g.mul(b, b);
    ensure(
        !g.are_conjugate(b2, b) && !g.are_conjugate(b2, g.inv(b)),
        || "b² is conjugate to b or b⁻¹".into(),
    )?;
    Ok(format!(
        "witness (b, j=2); center and Z-quotient C3×C3 with cut; {} ms",
        t.as_millis()
    ))
}

fn oracle_equivalence() -> Check {
    let run = corpus_run();
    let n = analyzed().count();
    ensure(n == entries().len(), || {
        "some entries failed to build".into()
    })?;
    ensure(n >= 120, || format!("only {n} entries"))?;
    let bad: Vec<&str> = analyzed()
        .filter(|e| e["oracle_agrees"] != true)
        .map(|e| e["id"].as_str().unwrap())
        .collect();
    ensure(bad.is_empty(), || format!("oracle disagrees on {bad:?}"))?;
    ensure(counter("oracle_disagreements") == 0, || {
        "oracle counter".into()
    })?;
    let max = analyzed()
        .filter_map(|e| e["order"].as_u64())
        .max()
        .unwrap();
    ensure(run.elapsed < Duration::from_secs(120), || {
        format!("single-threaded run took {:?}", run.elapsed)
    })?;
    Ok(format!(
        "{n}/{n} groups agree (largest order {max}); single-threaded run {:.1} s",
        run.elapsed.as_secs_f64()
    ))
}

fn theorem_equivalence() -> Check {
    let mut parts = Vec::new();
    for name in [
        ODD_ORDER,
        SOLVABLE_EPPO,
        NILPOTENT,
        CLASS2_POWER,
        CLASS2_FACTOR_PER_ELEMENT,
        CLASS2_FACTOR_CENTRAL,
    ] {
        let mut applicable = 0;
        for e in analyzed() {
            for t in e["theorems"].as_array().unwrap() {
                if t["name"] == name && t["applicable"] == true {
                    applicable += 1;
                    ensure(t["agrees"] == true, || {
                        format!("{name} disagrees on {}", e["id"])
                    })?;
                }
            }
        }
        ensure(applicable > 0, || format!("{name} never applicable"))?;
        parts.push(format!("{name}={applicable}"));
    }
    ensure(counter("disagreements") == 0, || {
        "disagreement counter".into()
    })?;
    ensure(corpus_run().status == Some(0), || {
        format!("corpus run exit status {:?}", corpus_run().status)
    })?;
    Ok(format!("0 disagreements; applicable: {}", parts.join(" ")))
}

fn pi_constraints() -> Check {
    let within = |p: &[u64], allowed: &[u64]| p.iter().all(|q| allowed.contains(q));
    let (mut solvable, mut odd, mut rational) = (0, 0, 0);
    for e in analyzed() {
        let p = pi(e);
        let is_solvable = e["structure"]["solvable"] == true;
        let order = e["order"].as_u64().unwrap();
        if is_solvable && cut(e) {
            solvable += 1;
            ensure(within(&p, &[2, 3, 5, 7, 13]), || {
                format!("{} has π {p:?}", e["id"])
            })?;
        }
        if order % 2 == 1 && cut(e) {
            odd += 1;
            ensure(within(&p, &[3, 7]), || format!("{} has π {p:?}", e["id"]))?;
        }
        if is_solvable && e["classification"]["rational"] == true {
            rational += 1;
            ensure(within(&p, &[2, 3, 5]), || {
                format!("{} has π {p:?}", e["id"])
            })?;
        }
    }
    Ok(format!(
        "0 violations over {solvable} solvable cut, {odd} odd cut, {rational} rational solvable groups"
    ))
}

fn corpus_groups() -> &'static [(String, FiniteGroup)] {
    static GROUPS: OnceLock<Vec<(String, FiniteGroup)>> = OnceLock::new();
    GROUPS.get_or_init(|| {
        builtin_corpus()
            .into_iter()
            .map(|e| (e.id, construct(&e.spec).expect("corpus groups build")))
            .collect()
    })
}

fn remark_pairs() -> Check {
    let two_groups: Vec<&(String, FiniteGroup)> = corpus_groups()
        .iter()
        .filter(|(_, g)| {
            let p = structural_profile(g);
            p.p_group == Some(2) && decide_cut(g).has_cut
        })
        .collect();
    let limits = Limits::default();
    let mut pairs = 0;
    let mut failing = 0;
    let mut sd_m = None;
    let mut c4_c4 = None;
    for (hid, h) in &two_groups {
        for (kid, k) in &two_groups {
            if h.order() * k.order() > 1024 {
                continue;
            }
            let report = remark_two_group_sum(h, k).map_err(|e| e.to_string())?;
            let sum = FiniteGroup::direct_product(h, k, &limits).map_err(|e| e.to_string())?;
            let sum_cut = decide_cut(&sum).has_cut;
            let predicted_failure = report.predicted_failure();
            ensure(predicted_failure == Some(!sum_cut), || {
                format!("{hid} ⊕ {kid}: predicted failure {predicted_failure:?}, cut {sum_cut}")
            })?;
            pairs += 1;
            failing += usize::from(!sum_cut);
            match (hid.as_str(), kid.as_str()) {
                ("metacyclic-008-2-3", "metacyclic-008-2-5") => sd_m = Some((sum.order(), sum_cut)),
                ("cyclic-004", "cyclic-004") => c4_c4 = Some(sum_cut),
                _ => {}
            }
        }
    }
    ensure(sd_m == Some((256, false)), || {
        format!("SD16 ⊕ M16: {sd_m:?}")
    })?;
    ensure(c4_c4 == Some(true), || format!("C4 ⊕ C4: {c4_c4:?}"))?;
    let reported = corpus_run().doc["two_group_pairs"].as_array().unwrap();
    ensure(reported.len() == pairs, || {
        format!(
            "corpus run reports {} pairs, expected {pairs}",
            reported.len()
        )
    })?;
    ensure(reported.iter().all(|p| p["agrees"] == true), || {
        "corpus run reports a disagreeing pair".into()
    })?;
    Ok(format!(
        "{pairs} ordered pairs, {failing} sums without cut, all predicted; SD16⊕M16 fails, C4⊕C4 keeps"
    ))
}

fn real_two_group_sums() -> Check {
    let check_set: Vec<(&str, FiniteGroup)> = real_two_group_check_set()
        .into_iter()
        .map(|(name, spec)| (name, construct(&spec).unwrap()))
        .collect();
    let limits = Limits::default();
    let mut groups = 0;
    let mut largest = 0;
    for (id, g) in corpus_groups() {
        if !structural_profile(g).is_nilpotent || !decide_cut(g).has_cut {
            continue;
        }
        groups += 1;
        for (name, r) in &check_set {
            let sum = FiniteGroup::direct_product(g, r, &limits).map_err(|e| e.to_string())?;
            largest = largest.max(sum.order());
            ensure(decide_cut(&sum).has_cut, || {
                format!("{id} ⊕ {name} lacks cut")
            })?;
        }
    }
    ensure(groups > 0, || "no nilpotent cut groups".into())?;
    Ok(format!(
        "{groups} nilpotent cut groups × {} check groups, 0 failures (largest sum {largest})",
        check_set.len()
    ))
}

fn abelian_oracle() -> Check {
    let mut n = 0;
    for e in analyzed() {
        let tags = e["tags"].as_array().unwrap();
        if !tags.iter().any(|t| t == "abelian") {
            continue;
        }
        let order = e["order"].as_u64().unwrap();
        if order > 64 {
            continue;
        }
        n += 1;
        let exp = e["structure"]["exponent"].as_u64().unwrap();
        let expected = 4 % exp == 0 || 6 % exp == 0;
        ensure(cut(e) == expected, || {
            format!("{} (exponent {exp}) has cut={}", e["id"], cut(e))
        })?;
    }
    ensure(n >= 117, || format!("only {n} abelian groups"))?;
    Ok(format!("{n} abelian groups, 0 mismatches"))
}

fn closure() -> Check {
    ensure(counter("invariant_violations") == 0, || {
        let bad: Vec<String> = analyzed()
            .filter(|e| !e["invariant_violations"].as_array().unwrap().is_empty())
            .map(|e| format!("{}: {}", e["id"], e["invariant_violations"]))
            .collect();
        bad.join("; ")
    })?;
    let limits = Limits::default();
    let mut centers = 0;
    let mut quotients = 0;
    for e in builtin_corpus() {
        let g = construct(&e.spec).unwrap();
        if decide_cut(&g).has_cut {
            centers += 1;
            ensure(decide_cut(&g.center().to_group()).has_cut, || {
                format!("center of {} lacks cut", e.id)
            })?;
        }
        if let GroupSpec::Quotient { group, .. } = &e.spec {
            let parent = cutlab::construct_with(group, &limits).unwrap();
            if decide_cut(&parent).has_cut {
                quotients += 1;
                ensure(decide_cut(&g).has_cut, || format!("{} lacks cut", e.id))?;
            }
        }
    }
    Ok(format!(
        "{centers} centers and {quotients} recipe quotients of cut groups keep cut"
    ))
}

fn strip_timing(bytes: &[u8]) -> Vec<String> {
    String::from_utf8_lossy(bytes)
        .lines()
        .filter(|l| !l.trim_start().starts_with("\"timing_ms\""))
        .map(str::to_owned)
        .collect()
}

fn determinism() -> Check {
    let a = cutlab(&["corpus", "run", "--format", "json"]);
    let b = cutlab(&["corpus", "run", "--format", "json"]);
    ensure(a.status.success() && b.status.success(), || {
        "corpus run failed".into()
    })?;
    let (a, b) = (strip_timing(&a.stdout), strip_timing(&b.stdout));
    ensure(a == b, || {
        let i = a
            .iter()
            .zip(&b)
            .position(|(x, y)| x != y)
            .unwrap_or(a.len().min(b.len()));
        format!("reports differ at line {}", i + 1)
    })?;
    let single =
        strip_timing(&cutlab(&["corpus", "run", "--threads", "1", "--format", "json"]).stdout);
    ensure(a == single, || {
        "parallel and single-threaded reports differ".into()
    })?;
    Ok(format!(
        "{} lines identical across runs and thread counts",
        a.len()
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("positive example metacyclic(12,2,5)", positive_example),
        ("negative example metacyclic(9,9,4)", negative_example),
        ("oracle equivalence", oracle_equivalence),
        ("theorem equivalence", theorem_equivalence),
        ("π constraints", pi_constraints),
        ("2-group direct sums", remark_pairs),
        ("sums with C2, C2×C2, D8, Q8", real_two_group_sums),
        ("abelian classification", abelian_oracle),
        ("closure under quotients and centers", closure),
        ("determinism", determinism),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failures} failed",
        criteria.len() - failures
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
