//! One line per acceptance criterion; exits nonzero if any criterion fails.

use std::path::Path;
use std::time::{Duration, Instant};

use plectic_core::cli::{parse, run};
use plectic_core::report::Report;
use plectic_core::suites::{self, SuiteConfig};

const CFG: SuiteConfig = SuiteConfig {
    seed: 20_240_601,
    count: 200,
    max_degree: 4,
};

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass_if(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn instances(r: &Report, id: &str) -> usize {
    r.get(id)
        .and_then(|c| c.anchor.rsplit_once('[').map(|(_, n)| n.to_string()))
        .and_then(|n| n.split_whitespace().next().and_then(|n| n.parse().ok()))
        .unwrap_or(0)
}

fn has_all(r: &Report, ids: &[&str]) -> Result<(), String> {
    let missing: Vec<&&str> = ids.iter().filter(|id| r.get(id).is_none()).collect();
    if missing.is_empty() {
        Ok(())
    } else {
        Err(format!("missing checks {missing:?}"))
    }
}

fn suite(name: &str, extra: impl FnOnce(&Report) -> Result<(), String>) -> Outcome {
    let r = suites::run_suite(name, &CFG).expect("known suite");
    if !r.passed() {
        let first = r.failures().next().expect("a failure");
        return pass_if(false, format!("{}: {}", first.id, first.residual));
    }
    match extra(&r) {
        Ok(()) => pass_if(true, format!("{} checks", r.len())),
        Err(e) => pass_if(false, e),
    }
}

fn courant_ids(prefix: &str) -> Vec<String> {
    let names = [
        "skew.jacobi",
        "skew.anchor",
        "skew.leibniz",
        "skew.d-isotropic",
        "skew.invariance",
        "dorfman.jacobi",
        "dorfman.anchor",
        "dorfman.leibniz",
        "dorfman.self",
        "dorfman.invariance",
        "dorfman.interchange",
    ];
    names.iter().map(|n| format!("{prefix}.{n}")).collect()
}

fn cli_goldens() -> Outcome {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let mut n = 0;
    let mut entries: Vec<_> = std::fs::read_dir(&dir).unwrap().map(|e| e.unwrap().path()).collect();
    entries.sort();
    for f in entries.iter().filter(|p| p.extension().is_some_and(|e| e == "plc")) {
        let name = f.file_name().unwrap().to_string_lossy().into_owned();
        let doc = match parse(&std::fs::read_to_string(f).unwrap()) {
            Ok(d) => d,
            Err(e) => return pass_if(false, format!("{name}: {e}")),
        };
        let report = run(&doc, 0);
        let golden = std::fs::read_to_string(f.with_extension("golden")).unwrap_or_default();
        if report.machine_text() != golden {
            return pass_if(false, format!("{name}: report differs from golden"));
        }
        let exit = i32::from(!report.passed());
        let fails = golden.lines().filter(|l| l.starts_with("FAIL\t")).count();
        if exit != i32::from(fails > 0) {
            return pass_if(false, format!("{name}: exit code {exit} with {fails} FAIL lines"));
        }
        match parse(&doc.to_source()) {
            Ok(again) if again == doc => {}
            _ => return pass_if(false, format!("{name}: parse-print round trip differs")),
        }
        n += 1;
    }
    pass_if(n > 0, format!("{n} fixtures"))
}

fn main() {
    type Criterion = (&'static str, u64, Box<dyn FnOnce() -> Outcome>);
    let criteria: Vec<Criterion> = vec![
        (
            "exterior calculus identities",
            10,
            Box::new(|| {
                suite("exterior", |r| {
                    has_all(r, &["d-squared", "cartan", "iota-derivation", "iota-bracket"])
                })
            }),
        ),
        (
            "semi-bracket laws up to exact forms",
            30,
            Box::new(|| {
                suite("prop35", |r| {
                    has_all(r, &["bracket-hamiltonian", "bracket-skew", "bracket-jacobi"])
                })
            }),
        ),
        (
            "calculus lemmas",
            30,
            Box::new(|| {
                suite("lemmas", |r| {
                    has_all(r, &["lie-derivative", "cyclic-contraction", "lie-derivative-skew"])
                })
            }),
        ),
        (
            "Courant axioms, twisted and untwisted",
            60,
            Box::new(|| {
                suite("courant", |r| {
                    let ids: Vec<String> = courant_ids("twisted")
                        .into_iter()
                        .chain(courant_ids("untwisted"))
                        .collect();
                    has_all(r, &ids.iter().map(String::as_str).collect::<Vec<_>>())
                })
            }),
        ),
        (
            "curvature of a splitting and of its shift",
            20,
            Box::new(|| suite("curvature", |r| has_all(r, &["twist", "shifted", "shifted-twist"]))),
        ),
        (
            "Lie 2-algebra axioms for six algebras",
            60,
            Box::new(|| {
                suite("lie2", |r| {
                    let prefixes = [
                        "plectic",
                        "courant",
                        "courant-preserving",
                        "ham-fields",
                        "abelian-closed",
                        "ham-fields-at-point",
                    ];
                    let ids: Vec<String> = prefixes.iter().map(|p| format!("{p}.coherence")).collect();
                    has_all(r, &ids.iter().map(String::as_str).collect::<Vec<_>>())
                })
            }),
        ),
        (
            "morphism into the Courant Lie 2-algebra",
            30,
            Box::new(|| {
                suite("morphism", |r| {
                    has_all(r, &["coherence", "worked.phi", "worked.jacobiator", "worked.coherence"])
                })
            }),
        ),
        (
            "membership criterion for the image",
            60,
            Box::new(|| {
                suite("iso", |r| {
                    has_all(
                        r,
                        &[
                            "phi0-recovers",
                            "image-preserves",
                            "non-image-rejected",
                            "criterion-agrees",
                        ],
                    )?;
                    let (a, b) = (instances(r, "image-preserves"), instances(r, "non-image-rejected"));
                    if a >= 100 && b >= 100 {
                        Ok(())
                    } else {
                        Err(format!("only {a} and {b} samples"))
                    }
                })
            }),
        ),
        (
            "symplectic bracket preservation",
            30,
            Box::new(|| {
                suite("atiyah", |r| {
                    has_all(r, &["atiyah-morphism", "poisson-qp", "ks-cocycle"])
                })
            }),
        ),
        (
            "central extension identities",
            60,
            Box::new(|| {
                suite("extension", |r| {
                    has_all(
                        r,
                        &[
                            "jx-cocycle",
                            "coboundary",
                            "bu1-exact",
                            "ev-morphism.coherence",
                            "ev-morphism-random.coherence",
                        ],
                    )?;
                    let n = instances(r, "coboundary");
                    if n >= 50 {
                        Ok(())
                    } else {
                        Err(format!("only {n} coboundary samples"))
                    }
                })
            }),
        ),
        (
            "cocycle fixtures and perturbations",
            10,
            Box::new(|| {
                suite("cocycle", |r| {
                    has_all(r, &["two-box.valid", "perturb.A", "perturb.B-curving"])
                })
            }),
        ),
        ("CLI goldens, exit codes, round trip", 60, Box::new(cli_goldens)),
    ];

    let mut failed = 0;
    for (i, (name, limit, body)) in criteria.into_iter().enumerate() {
        let t = Instant::now();
        let mut out = body();
        let elapsed = t.elapsed();
        if elapsed > Duration::from_secs(limit) {
            out = pass_if(false, format!("{} (over the {limit} s limit)", out.detail));
        }
        let status = if out.ok { "PASS" } else { "FAIL" };
        println!(
            "criterion {:>2} {status} {name}: {} [{:.2} s]",
            i + 1,
            out.detail,
            elapsed.as_secs_f64()
        );
        failed += usize::from(!out.ok);
    }
    println!("acceptance: {} of 12 criteria passed", 12 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
