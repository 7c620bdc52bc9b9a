//! One pass/fail line per acceptance criterion, each against its time budget.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use lhk::commands::{self, DEFAULT_SAMPLES, DEFAULT_SEED};
use lhk::corpus;
use lhk_core::chain::{ChainComplex, Matrix};
use lhk_core::complex::BallComplex;
use lhk_core::graded::duality::shifted_dual;
use lhk_core::graded::{chain_dual, counit, dissected_subdivision, local_equivalence_check, GradedComplex, GradedMorphism, Variance};
use lhk_core::structured::{e8_refinement, form_matrix, quadratic_from_form, signature};
use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;

type Outcome = Result<String, String>;

fn ensure(ok: bool, why: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(why.into())
    }
}

fn complex(name: &str) -> Arc<BallComplex> {
    Arc::new(corpus::file(name).complex().expect("corpus member"))
}

fn members() -> Vec<(&'static str, Arc<BallComplex>)> {
    corpus::MEMBERS.iter().map(|n| (*n, complex(n))).collect()
}

/// Labels of `a` are `owner|flag` with `flag` the label of `b` at the same
/// position and `owner` the first cell of the flag.
fn labels_match(a: &ChainComplex, b: &ChainComplex) -> bool {
    a.degrees().chain(b.degrees()).all(|n| match (a.labels(n), b.labels(n)) {
        (Some(la), Some(lb)) => {
            la.len() == lb.len()
                && la.iter().zip(lb).all(|(x, y)| match x.split_once('|') {
                    Some((owner, flag)) => flag == y && flag.trim_end_matches('*').split('<').next() == Some(owner),
                    None => false,
                })
        }
        (None, None) => a.rank(n) == 0 && b.rank(n) == 0,
        _ => false,
    })
}

fn interval_contractibility() -> Outcome {
    let mut pairs = 0;
    for (name, x) in members() {
        for s in 0..x.len() {
            for &r in x.closure(s) {
                if r == s {
                    continue;
                }
                let c = x.chain_complex_on(&x.interval(r, s).map_err(|e| e.to_string())?);
                ensure(c.is_acyclic() && c.dual().is_acyclic(), format!("[{}:{}] in {name} is not acyclic", x.id(r), x.id(s)))?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} strict pairs, chains and cochains acyclic"))
}

fn assembly_identity() -> Outcome {
    for (name, x) in members() {
        let (d, sub) = dissected_subdivision(&x);
        let c = sub.chain_complex();
        ensure(d.assemble().clone().drop_labels() == c.clone().drop_labels(), format!("{name}: assembly differs from C(X')"))?;
        ensure(labels_match(d.assemble(), &c), format!("{name}: basis labels differ"))?;
    }
    Ok(format!("{} members, matrices and basis labels equal", corpus::MEMBERS.len()))
}

fn dual_of_dual_cells() -> Outcome {
    let mut balls = 0;
    for (name, x) in members() {
        let (d, sub) = dissected_subdivision(&x);
        let t = chain_dual(&d);
        for s in 0..x.len() {
            let want = shifted_dual(&sub.dual_cell(s).chain_complex(), x.cell_dim(s), Variance::Lower);
            let got = t.component(s);
            ensure(got.clone().drop_labels() == want.clone().drop_labels(), format!("{name}: dual at {} differs", x.id(s)))?;
            ensure(labels_match(got, &want), format!("{name}: basis labels at {} differ", x.id(s)))?;
            balls += 1;
        }
    }
    Ok(format!("{balls} balls equal to the shifted dual-cell cochains, matrices and basis labels"))
}

fn duality_axioms() -> Outcome {
    let mut records = 0;
    for name in corpus::MEMBERS {
        let out = commands::duality_check(&corpus::input(name), DEFAULT_SEED, DEFAULT_SAMPLES).map_err(|e| e.to_string())?;
        let bad: Vec<String> = out.report.failures().map(|r| format!("{} {:?}", r.name, r.location)).collect();
        ensure(bad.is_empty(), format!("{name}: {}", bad.join(", ")))?;
        records += out.report.records.len();
    }
    Ok(format!("{} members, {DEFAULT_SAMPLES} random complexes per variance each, {records} records", corpus::MEMBERS.len()))
}

/// `k` times the identity on the ball `at`, identity elsewhere, on a complex with
/// no cross terms.
fn scaled_at(c: &Arc<GradedComplex>, at: usize, k: i64) -> GradedMorphism {
    let a = c.assemble();
    let comps = a
        .degrees()
        .map(|n| {
            let r = c.range(n, at);
            (n, Matrix::diagonal(&(0..a.rank(n)).map(|i| if r.contains(&i) { k } else { 1 }).collect::<Vec<_>>()))
        })
        .collect();
    let f = lhk_core::chain::ChainMap::new(a.clone(), a.clone(), 0, comps).expect("chain map");
    GradedMorphism::new(c.clone(), c.clone(), f).expect("graded morphism")
}

fn local_criterion() -> Outcome {
    let mut cases = 0;
    let mut negatives = 0;
    let check = |f: &GradedMorphism| -> Result<(bool, Vec<usize>), String> {
        let l = local_equivalence_check(f).map_err(|e| e.to_string())?;
        ensure(l.all_local() == l.assembled.holds, "per-ball and assembled verdicts disagree")?;
        Ok((l.assembled.holds, l.failing()))
    };
    for (name, x) in members() {
        let (d, _) = dissected_subdivision(&x);
        let (ok, _) = check(&counit(&d))?;
        ensure(ok, format!("{name}: counit is not an equivalence"))?;
        cases += 1;
    }
    let square = complex("square");
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    for i in 0..10 {
        let comps: Vec<ChainComplex> = (0..square.len()).map(|s| ChainComplex::concentrated((s % 3) as i32, 1 + (i + s) % 2)).collect();
        let c = Arc::new(GradedComplex::diagonal(square.clone(), Variance::Lower, comps));
        let at = i % square.len();
        let (ok, failing) = check(&scaled_at(&c, at, 2))?;
        ensure(!ok && failing == vec![at], format!("scaling at {} was not located", square.id(at)))?;
        let (ok, _) = check(&scaled_at(&c, at, -1))?;
        ensure(ok, "a sign change is an isomorphism")?;
        let r = Arc::new(GradedComplex::random(square.clone(), Variance::Upper, &mut rng, 0..=1));
        let (ok, _) = check(&GradedMorphism::identity(&r).scale(2))?;
        ensure(ok == r.assemble().is_acyclic(), "twice the identity is an equivalence exactly on acyclic complexes")?;
        negatives += usize::from(!ok) + 1;
        cases += 3;
    }
    for name in ["corrupt_interval", "corrupt_square"] {
        let input = corpus::input(name);
        let out = commands::duality_check(&input, DEFAULT_SEED, 2).map_err(|e| e.to_string())?;
        let want = input.file.corruption.as_ref().unwrap().ball.clone();
        let counit_fails: Vec<Vec<String>> = out.report.records_named("counit").filter(|r| !r.passes()).map(|r| r.location.clone()).collect();
        ensure(counit_fails == vec![vec![want.clone()]], format!("{name}: counit failures at {counit_fails:?}, injected at {want}"))?;
        let agree = out.report.records_named("local_criterion").all(|r| r.passes());
        ensure(agree && out.exit_code() == 2, format!("{name}: verdicts disagree or the check passed"))?;
        cases += 1;
    }
    Ok(format!("{cases} fixtures ({negatives} negative), corruptions located"))
}

fn local_poincare() -> Outcome {
    for name in ["circle", "octahedron", "torus"] {
        let out = commands::signature(&corpus::input(name), false).map_err(|e| e.to_string())?;
        ensure(out.report.passes(), format!("{name} fails"))?;
        let balls: Vec<_> = out.report.records_named("local_poincare").collect();
        ensure(balls.len() == complex(name).len() && balls.iter().all(|r| r.passes() && r.required), format!("{name}: not Poincaré at every ball"))?;
    }
    for name in ["interval", "square"] {
        let x = complex(name);
        let out = commands::signature(&corpus::input(name), true).map_err(|e| e.to_string())?;
        ensure(out.report.passes(), format!("{name} fails"))?;
        let boundary: Vec<usize> = x.boundary_subcomplex();
        for r in out.report.records_named("local_poincare") {
            let s = x.find(&r.location[0]).unwrap();
            let inside = !boundary.contains(&s);
            ensure(r.passes() == inside && r.required == inside, format!("{name}: verdict at {} does not match the boundary", r.location[0]))?;
        }
    }
    Ok("circle, S², torus locally and globally Poincaré; interval and square exactly off the boundary".into())
}

fn product_formula() -> Outcome {
    let torus = commands::check_products(&corpus::input("circle"), &corpus::input("circle")).map_err(|e| e.to_string())?;
    let balls: Vec<_> = torus.report.records_named("product_formula").collect();
    ensure(balls.len() == 36 && balls.iter().all(|r| r.passes()), "circle × circle has a failing ball")?;
    let unit = commands::check_products(&corpus::input("point"), &corpus::input("circle")).map_err(|e| e.to_string())?;
    ensure(unit.report.passes(), "point × circle fails")?;
    ensure(unit.report.records_named("product_formula").all(|r| r.certificate["exact"] == true), "point × circle is not matrix-exact")?;
    Ok("36/36 balls pass for circle × circle; point × circle matrix-exact".into())
}

fn suspension() -> Outcome {
    let out = commands::suspend(&corpus::input("circle"), 1).map_err(|e| e.to_string())?;
    ensure(out.report.passes(), "suspension report fails")?;
    let circle = complex("circle");
    let mut want: Vec<String> = ["v0", "v1"].iter().flat_map(|v| (0..circle.len()).map(move |c| (v, c))).map(|(v, c)| format!("({v},{})", circle.id(c))).collect();
    want.sort();
    let locus = out.report.records_named("boundary_locus").next().ok_or("no locus record")?;
    let mut got = locus.location.clone();
    got.sort();
    ensure(locus.passes() && got == want, format!("non-Poincaré locus {got:?}"))?;
    let inner = out.report.records_named("interior_assembly").next().ok_or("no interior record")?;
    ensure(inner.passes(), "interior assembly is not equivalent to the suspension")?;
    Ok(format!("non-Poincaré exactly on S⁰ × circle ({} balls); interior assembly equivalent", want.len()))
}

fn forms() -> Outcome {
    let hyperbolic = quadratic_from_form(&Matrix::from_rows(&[vec![0, 1], vec![0, 0]])).map_err(|e| e.to_string())?;
    ensure(hyperbolic.is_poincare(), "hyperbolic is not Poincaré")?;
    let one = quadratic_from_form(&Matrix::identity(1)).map_err(|e| e.to_string())?;
    let m = form_matrix(&one.symmetrize(0)).map_err(|e| e.to_string())?;
    ensure(!one.is_poincare() && m.get(0, 0) == 2, "the refinement of <1> should fail with det 2")?;
    let e8 = quadratic_from_form(&e8_refinement()).map_err(|e| e.to_string())?;
    let sig = signature(&form_matrix(&e8.symmetrize(0)).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    ensure(e8.is_poincare() && sig == 8, format!("E8: signature {sig}"))?;
    Ok("hyperbolic TRUE, <1> FALSE (det 2), E8 TRUE with signature 8".into())
}

fn corpus_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus").join(format!("{name}.json"))
}

/// Runs the binary and returns its stdout and `--out` artifact.
fn run_cli(args: &[String], threads: usize, out: Option<&Path>) -> Result<(Vec<u8>, Option<Vec<u8>>), String> {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_lhk"));
    cmd.args(args).env("LHK_THREADS", threads.to_string());
    if let Some(p) = out {
        cmd.arg("--out").arg(p);
    }
    let o = cmd.output().map_err(|e| e.to_string())?;
    let artifact = out.map(|p| std::fs::read(p).map_err(|e| e.to_string())).transpose()?;
    Ok((o.stdout, artifact))
}

fn determinism() -> Outcome {
    let dir = std::env::temp_dir().join(format!("lhk-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let p = |n: &str| corpus_path(n).display().to_string();
    let mut jobs: Vec<(Vec<String>, bool)> = Vec::new();
    for name in corpus::FILES.iter().map(|(n, _)| *n) {
        jobs.push((vec!["validate".into(), p(name)], false));
        jobs.push((vec!["homology".into(), p(name)], false));
        jobs.push((vec!["subdivide".into(), p(name)], true));
        jobs.push((vec!["duality-check".into(), p(name)], false));
    }
    for name in corpus::CLOSED {
        jobs.push((vec!["signature".into(), p(name)], true));
        jobs.push((vec!["suspend".into(), p(name), "--k".into(), "1".into()], true));
    }
    for name in ["interval", "square", "cube"] {
        jobs.push((vec!["signature".into(), p(name), "--relative".into()], true));
    }
    jobs.push((vec!["dual".into(), p("torus"), "--cell".into(), "(a,b)".into()], true));
    jobs.push((vec!["product".into(), p("circle"), p("square")], true));
    jobs.push((vec!["check-products".into(), p("circle"), p("circle")], false));
    jobs.push((vec!["check-products".into(), p("point"), p("circle")], false));
    for (args, has_out) in &jobs {
        let (a, b) = (dir.join("one.json"), dir.join("eight.json"));
        let one = run_cli(args, 1, has_out.then_some(a.as_path()))?;
        let eight = run_cli(args, 8, has_out.then_some(b.as_path()))?;
        ensure(!one.0.is_empty() && one == eight, format!("output differs for {}", args.join(" ")))?;
    }
    let _ = std::fs::remove_dir_all(&dir);
    Ok(format!("{} commands byte-identical with LHK_THREADS = 1 and 8", jobs.len()))
}

fn main() {
    let criteria: [(&str, u64, fn() -> Outcome); 10] = [
        ("interval contractibility", 10, interval_contractibility),
        ("assembly identity", 5, assembly_identity),
        ("dual of the dual-cell complex", 30, dual_of_dual_cells),
        ("chain-duality axioms", 300, duality_axioms),
        ("local criterion both ways", 10, local_criterion),
        ("local Poincaré duality of dissected signatures", 120, local_poincare),
        ("product formula", 300, product_formula),
        ("suspension", 60, suspension),
        ("form-level sanity", 1, forms),
        ("determinism", 900, determinism),
    ];
    let only: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    let mut ran = 0;
    for (i, (name, budget, f)) in criteria.iter().enumerate() {
        if !only.is_empty() && !only.contains(&(i + 1)) {
            continue;
        }
        ran += 1;
        let t = Instant::now();
        let result = f();
        let took = t.elapsed();
        let over = took > Duration::from_secs(*budget);
        let (verdict, detail) = match (&result, over) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("{d}; over budget")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if verdict == "FAIL" {
            failed += 1;
        }
        println!("criterion {:>2} {verdict}: {name}: {detail} [{:.2}s, budget {budget}s]", i + 1, took.as_secs_f64());
    }
    println!("acceptance: {} of {ran} criteria pass", ran - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
