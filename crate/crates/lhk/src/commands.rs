//! The subcommands, each producing a report and optionally an artifact for `--out`.

use std::collections::BTreeMap;
use std::sync::Arc;

use lhk_core::chain::{ChainComplex, ChainMap, Matrix, TensorLayout};
use lhk_core::complex::{BallComplex, ComplexPair, DerivedSubdivision, RawCell};
use lhk_core::graded::{chain_dual, counit, dissected_cosubdivision, dissected_subdivision, dual_morphism, redistribution, switch, GradedComplex, GradedMorphism, Variance};
use lhk_core::signatures::{check_product_formula, dissected_signature, fundamental_class, relative_dissected_signature, suspension_product, ManifoldComplex, Promise};
use lhk_core::structured::GradedStructure;
use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};
use crate::format::{ComplexFile, Input};
use crate::report::{canonical_json, homology_json, Record, Report};

pub const DEFAULT_SEED: u64 = 20_240_601;
pub const DEFAULT_SAMPLES: usize = 20;

/// A finished command: its report, an optional artifact and the exit code on failure.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: Report,
    pub artifact: Option<String>,
    failure_code: i32,
}

impl Outcome {
    fn checked(report: Report, artifact: Option<String>) -> Self {
        Outcome { report, artifact, failure_code: 2 }
    }

    pub fn exit_code(&self) -> i32 {
        if self.report.passes() {
            0
        } else {
            self.failure_code
        }
    }
}

fn ids(x: &BallComplex, cells: impl IntoIterator<Item = usize>) -> Vec<String> {
    cells.into_iter().map(|c| x.id(c).to_string()).collect()
}

fn loc(x: &BallComplex, c: usize) -> Vec<String> {
    vec![x.id(c).to_string()]
}

fn cell_counts(x: &BallComplex) -> Vec<usize> {
    (0..=x.dim()).map(|d| x.cells_of_dim(d).len()).collect()
}

fn trimmed(mut v: Vec<usize>) -> Vec<usize> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn lookup(x: &BallComplex, id: &str) -> CliResult<usize> {
    x.find(id).ok_or_else(|| CliError::UnknownCell(id.to_string()))
}

fn free_ranks(c: &ChainComplex) -> BTreeMap<i32, usize> {
    c.homology().groups.iter().filter(|(_, g)| g.free > 0).map(|(&n, g)| (n, g.free)).collect()
}

fn verdict_json(v: &lhk_core::chain::EquivalenceVerdict) -> Value {
    homology_json(&v.cone_homology)
}

/// Whether a degree-0 map is a chain equivalence, with the cone homology when it is a chain map.
fn equivalence(f: &ChainMap) -> (bool, Value) {
    if !f.is_chain_map() {
        return (false, json!({"chain_map": false}));
    }
    match f.equivalence() {
        Ok(v) => (v.holds, json!({"chain_map": true, "cone_homology": verdict_json(&v)})),
        Err(e) => (false, json!({"chain_map": true, "error": e.to_string()})),
    }
}

pub fn validate(input: &Input) -> Outcome {
    let mut rep = Report::new("validate");
    rep.input(input);
    let x = match input.file.validate() {
        Ok(x) => x,
        Err(errs) => {
            for e in errs {
                rep.push(Record::new("cell_complex", vec![], false, json!({"code": e.kind.code(), "detail": e.detail})));
            }
            return Outcome { report: rep, artifact: None, failure_code: 1 };
        }
    };
    rep.summarize("cells", x.len());
    rep.summarize("dim", x.dim());
    rep.push(Record::new("cell_complex", vec![], true, json!({"cells": x.len(), "counts": cell_counts(&x)})));
    if let Some(p) = input.file.promise {
        let x = Arc::new(x);
        match input.file.manifold(x.clone()) {
            Ok(m) => {
                rep.push(Record::new("promise", vec![], true, json!({"promise": m.promise().name(), "boundary": ids(&x, m.boundary().iter().copied())})));
                let z = fundamental_class(&m);
                let cert = match &z {
                    Ok(_) => json!({}),
                    Err(e) => json!({"code": e.kind.code(), "detail": e.detail}),
                };
                rep.push(Record::new("orientable", vec![], z.is_ok(), cert).required_if(m.promise() == Promise::ClosedOrientable));
            }
            Err(e) => rep.push(Record::new("promise", vec![], false, json!({"promise": Promise::from(p).name(), "detail": e.to_string()}))),
        }
    }
    Outcome { report: rep, artifact: None, failure_code: 1 }
}

pub fn homology(input: &Input, pair: Option<&[String]>) -> CliResult<Outcome> {
    let x = Arc::new(input.file.complex()?);
    let mut rep = Report::new("homology");
    rep.input(input);
    let (c, sub) = match pair {
        Some(sub) => {
            let cells = sub.iter().map(|id| lookup(&x, id)).collect::<CliResult<Vec<_>>>()?;
            let p = ComplexPair::new(x.clone(), &cells)?;
            let mut names = ids(&x, p.sub.iter().copied());
            names.sort();
            rep.parameter("pair", names.clone());
            (p.chain_complex(), names)
        }
        None => (x.chain_complex(), Vec::new()),
    };
    let h = c.homology();
    rep.summarize("profile", h.describe());
    rep.push(Record::new("homology", sub, true, json!({"homology": homology_json(&h), "euler_characteristic": h.euler_characteristic()})));
    Ok(Outcome::checked(rep, None))
}

pub fn subdivide(input: &Input) -> CliResult<Outcome> {
    let x = Arc::new(input.file.complex()?);
    let sub = DerivedSubdivision::new(x.clone());
    let s = &sub.simplicial;
    let counts: Vec<usize> = (0..=s.dim()).map(|d| s.count(d)).collect();
    let mut rep = Report::new("subdivide");
    rep.input(input);
    rep.summarize("counts", counts.clone());
    rep.push(Record::new("subdivision", vec![], true, json!({"counts": counts, "source_counts": cell_counts(&x)})));
    let same = s.chain_complex().homology() == x.chain_complex().homology();
    let (eq, cert) = equivalence(&sub.subdivision_map());
    rep.push(Record::new("homology_preserved", vec![], same && eq, json!({"homology_equal": same, "subdivision_map": cert})));
    Ok(Outcome::checked(rep, Some(ComplexFile::from_raw(&s.to_raw()).to_json())))
}

pub fn dual(input: &Input, cell: &str) -> CliResult<Outcome> {
    let x = Arc::new(input.file.complex()?);
    let sigma = lookup(&x, cell)?;
    let sub = DerivedSubdivision::new(x.clone());
    let dc = sub.dual_cell(sigma);
    let (counts, bcounts) = dc.counts();
    let (counts, bcounts) = (trimmed(counts), trimmed(bcounts));
    let h = dc.chain_complex().homology();
    let contractible = h.describe() == "H0=Z";
    let mut rep = Report::new("dual");
    rep.input(input);
    rep.parameter("cell", cell);
    rep.summarize("counts", counts.clone());
    rep.summarize("boundary_counts", bcounts.clone());
    rep.push(Record::new(
        "dual_cell",
        loc(&x, sigma),
        contractible,
        json!({
            "counts": counts,
            "boundary_counts": bcounts,
            "homology": homology_json(&h),
            "boundary_homology": homology_json(&dc.boundary_chain_complex().homology()),
            "relative_homology": homology_json(&dc.relative_chain_complex().homology()),
        }),
    ));
    let s = &sub.simplicial;
    let raw: Vec<RawCell> = s.to_raw();
    let mut flags = Vec::new();
    for d in 0..=s.dim() {
        flags.extend(s.simplices(d).iter().cloned());
    }
    let keep: Vec<(RawCell, bool)> = raw.into_iter().zip(flags).filter(|(_, f)| dc.contains(f)).map(|(c, f)| (c, dc.in_boundary(&f))).collect();
    let mut file = ComplexFile::from_raw(&keep.iter().map(|(c, _)| c.clone()).collect::<Vec<_>>());
    file.boundary_cells = Some(keep.iter().filter(|(_, b)| *b).map(|(c, _)| c.id.clone()).collect());
    Ok(Outcome::checked(rep, Some(file.to_json())))
}

pub fn product(a: &Input, b: &Input) -> CliResult<Outcome> {
    let x = a.file.complex()?;
    let y = b.file.complex()?;
    let p = x.product(&y);
    let mut rep = Report::new("product");
    rep.input(a);
    rep.input(b);
    rep.summarize("cells", p.len());
    rep.push(Record::new("product", vec![], true, json!({"cells": p.len(), "counts": cell_counts(&p)})));
    let (fx, fy) = (free_ranks(&x.chain_complex()), free_ranks(&y.chain_complex()));
    let mut want: BTreeMap<i32, usize> = BTreeMap::new();
    for (&i, &r) in &fx {
        for (&j, &s) in &fy {
            *want.entry(i + j).or_default() += r * s;
        }
    }
    let hp = p.chain_complex().homology();
    let got: BTreeMap<i32, usize> = hp.groups.iter().filter(|(_, g)| g.free > 0).map(|(&n, g)| (n, g.free)).collect();
    rep.push(Record::new("kunneth_free_ranks", vec![], got == want, json!({"homology": homology_json(&hp)})));
    Ok(Outcome::checked(rep, Some(ComplexFile::from_complex(&p).to_json())))
}

/// Negates the degree-`n` part of the diagonal block of `f` at `ball`.
pub fn corrupt(f: &GradedMorphism, ball: usize, n: i32) -> CliResult<GradedMorphism> {
    let map = f.assemble();
    let rows = f.target.range(n + map.shift, ball);
    let cols = f.source.range(n, ball);
    let mut comps = map.components().clone();
    let m = map.component(n);
    let flipped = Matrix::from_triplets(m.rows(), m.cols(), m.triplets().map(|(i, j, v)| if rows.contains(&i) && cols.contains(&j) { (i, j, -v) } else { (i, j, v) }));
    comps.insert(n, flipped);
    let g = ChainMap::from_components(map.source.clone(), map.target.clone(), map.shift, comps);
    Ok(GradedMorphism::new(f.source.clone(), f.target.clone(), g)?)
}

/// Per-ball and assembled verdicts for a degree-0 morphism, and whether they agree.
pub fn local_criterion(x: &BallComplex, f: &GradedMorphism, name: &str, tag: &str) -> Vec<Record> {
    let per_ball: Vec<(bool, Value)> = (0..x.len()).into_par_iter().map(|s| equivalence(&f.diagonal(s))).collect();
    let all_local = per_ball.iter().all(|(ok, _)| *ok);
    let (assembled, acert) = equivalence(f.assemble());
    let mut out: Vec<Record> = per_ball.into_iter().enumerate().map(|(s, (ok, cert))| Record::new(name, loc(x, s), ok, json!({"complex": tag, "block": cert}))).collect();
    out.push(Record::new(&format!("{name}_assembled"), vec![], assembled, json!({"complex": tag, "map": acert})));
    out.push(Record::new("local_criterion", vec![], all_local == assembled, json!({"complex": tag, "all_local": all_local, "assembled": assembled})));
    out
}

fn involution(c: &GradedComplex, e: &GradedMorphism) -> bool {
    let tc = Arc::new(chain_dual(c));
    counit(&tc).compose(&dual_morphism(e)) == GradedMorphism::identity(&tc)
}

fn switch_twice(c: &GradedComplex, rng: &mut ChaCha8Rng, n: i32) -> bool {
    let tc = Arc::new(chain_dual(c));
    let phi = GradedMorphism::random(&tc, &Arc::new(c.clone()), n, rng);
    match switch(c, &phi).and_then(|s| switch(c, &s)) {
        Ok(back) => back == phi,
        Err(_) => false,
    }
}

fn redistribution_ok(c: &GradedComplex, s: usize) -> (bool, Value) {
    match redistribution(c, s) {
        Ok(r) => (r.collapse.holds && r.projection.holds, json!({"collapse": r.collapse.holds, "projection": verdict_json(&r.projection)})),
        Err(e) => (false, json!({"error": e.to_string()})),
    }
}

fn interval_records(x: &BallComplex) -> Record {
    let pairs: Vec<(usize, usize)> = (0..x.len()).flat_map(|s| x.closure(s).iter().filter(move |&&r| r != s).map(move |&r| (r, s))).collect();
    let bad: Vec<(usize, usize)> = pairs
        .par_iter()
        .filter(|&&(r, s)| {
            let cells = x.interval(r, s).expect("comparable");
            let c = x.chain_complex_on(&cells);
            !(c.is_acyclic() && c.dual().is_acyclic())
        })
        .copied()
        .collect();
    let failing: Vec<Vec<String>> = bad.iter().map(|&(r, s)| vec![x.id(r).to_string(), x.id(s).to_string()]).collect();
    Record::new("interval_contractibility", vec![], bad.is_empty(), json!({"pairs": pairs.len(), "failing": failing}))
}

fn sample_records(x: &Arc<BallComplex>, seed: u64, index: usize, v: Variance) -> Vec<Record> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((index as u64) << 1 | (v == Variance::Upper) as u64));
    let c = GradedComplex::random(x.clone(), v, &mut rng, -1..=1);
    let e = counit(&c);
    let failing: Vec<usize> = (0..x.len()).filter(|&s| !equivalence(&e.diagonal(s)).0).collect();
    let (assembled, _) = equivalence(e.assemble());
    let inv = involution(&c, &e);
    let sw = switch_twice(&c, &mut rng, index as i32 % 3 - 1);
    let redist: Vec<usize> = (0..x.len()).filter(|&s| !redistribution_ok(&c, s).0).collect();
    let tag = json!({"sample": index, "variance": v.name()});
    vec![
        Record::new("sample_counit", ids(x, failing.iter().copied()), failing.is_empty() && assembled, json!({"sample": tag, "assembled": assembled})),
        Record::new("sample_counit_involution", vec![], inv, json!({"sample": tag})),
        Record::new("sample_switch_involution", vec![], sw, json!({"sample": tag})),
        Record::new("sample_redistribution", ids(x, redist.iter().copied()), redist.is_empty(), json!({"sample": tag})),
    ]
}

pub fn duality_check(input: &Input, seed: u64, samples: usize) -> CliResult<Outcome> {
    let x = Arc::new(input.file.complex()?);
    let injected = match &input.file.corruption {
        Some(c) => Some((lookup(&x, &c.ball)?, c.degree)),
        None => None,
    };
    let mut rep = Report::new("duality-check");
    rep.input(input);
    rep.parameter("seed", seed);
    rep.parameter("samples", samples);
    rep.push(interval_records(&x));
    for (tag, (c, _)) in [("subdivision", dissected_subdivision(&x)), ("cosubdivision", dissected_cosubdivision(&x))] {
        let mut e = counit(&c);
        if let (Some((ball, n)), "subdivision") = (injected, tag) {
            e = corrupt(&e, ball, n)?;
        }
        rep.extend(local_criterion(&x, &e, "counit", tag));
        rep.push(Record::new("counit_involution", vec![], involution(&c, &e), json!({"complex": tag})));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rep.push(Record::new("switch_involution", vec![], switch_twice(&c, &mut rng, 0), json!({"complex": tag})));
        let redist: Vec<(bool, Value)> = (0..x.len()).into_par_iter().map(|s| redistribution_ok(&c, s)).collect();
        rep.extend(redist.into_iter().enumerate().map(|(s, (ok, cert))| Record::new("redistribution", loc(&x, s), ok, json!({"complex": tag, "verdicts": cert}))));
    }
    let jobs: Vec<(usize, Variance)> = (0..samples).flat_map(|i| [(i, Variance::Upper), (i, Variance::Lower)]).collect();
    let sampled: Vec<Vec<Record>> = jobs.par_iter().map(|&(i, v)| sample_records(&x, seed, i, v)).collect();
    rep.extend(sampled.into_iter().flatten());
    let failing: Vec<String> = rep.failures().flat_map(|r| r.location.clone()).collect::<std::collections::BTreeSet<_>>().into_iter().collect();
    rep.summarize("failing_balls", failing);
    rep.summarize("records", rep.records.len());
    Ok(Outcome::checked(rep, None))
}

/// Sparse serialization of a graded structure: per ball, the chains `φ_s` as
/// lists of `[left label, right label, coefficient]`.
pub fn structure_json(g: &GradedStructure) -> Value {
    let x = g.base();
    let balls: Vec<Value> = (0..x.len())
        .map(|s| {
            let piece = g.ball(s);
            let c = piece.complex();
            let lay = TensorLayout::new(c, c);
            let label = |p: i32, i: usize| c.labels(p).map_or_else(|| format!("{p}:{i}"), |l| l[i].clone());
            let chains: Vec<Value> = (0..=piece.truncation())
                .map(|t| {
                    let n = piece.dim() + t as i32;
                    let terms: Vec<Value> = piece
                        .phi(t)
                        .iter()
                        .enumerate()
                        .filter(|(_, &v)| v != 0)
                        .map(|(k, &v)| {
                            let (p, i, q, j) = lay.locate(n, k);
                            json!([label(p, i), label(q, j), v])
                        })
                        .collect();
                    json!({"s": t, "terms": terms})
                })
                .collect();
            json!({"ball": x.id(s), "dim": piece.dim(), "chains": chains})
        })
        .collect();
    json!({"dim": g.dim(), "variance": g.complex().variance().name(), "balls": balls})
}

fn manifold_of(input: &Input) -> CliResult<(Arc<BallComplex>, ManifoldComplex)> {
    let x = Arc::new(input.file.complex()?);
    let m = input.file.manifold(x.clone())?;
    Ok((x, m))
}

fn closed_manifold(input: &Input) -> CliResult<(Arc<BallComplex>, ManifoldComplex)> {
    let (x, m) = manifold_of(input)?;
    if m.promise() != Promise::ClosedOrientable {
        return Err(CliError::Invalid(format!("{} is not promised closed orientable", input.path.display())));
    }
    Ok((x, m))
}

fn poincare_json(v: &lhk_core::structured::PoincareVerdict) -> Value {
    json!({"cycle": v.cycle, "cone_homology": v.cone_homology.as_ref().map(homology_json)})
}

pub fn signature(input: &Input, relative: bool) -> CliResult<Outcome> {
    let (x, m) = manifold_of(input)?;
    if m.promise() == Promise::WithBoundary && !relative {
        return Err(CliError::Invalid("a manifold with boundary needs --relative".into()));
    }
    let sig = if relative { relative_dissected_signature(&m)? } else { dissected_signature(&m)? };
    let mut rep = Report::new("signature");
    rep.input(input);
    rep.parameter("relative", relative);
    rep.summarize("dim", sig.dim());
    rep.summarize("balls", x.len());
    rep.summarize("exempt", ids(&x, (0..x.len()).filter(|&s| !sig.required(s))));
    for (s, v) in sig.verdicts.iter().enumerate() {
        let cert = json!({"dim": sig.structure.ball(s).dim(), "in_boundary": !sig.required(s), "verdict": poincare_json(v)});
        rep.push(Record::new("local_poincare", loc(&x, s), v.holds, cert).required_if(sig.required(s)));
    }
    let kind = if sig.is_relative() { "lefschetz" } else { "poincare" };
    rep.push(Record::new("global_duality", vec![], sig.global_verdict.holds, json!({"kind": kind, "verdict": poincare_json(&sig.global_verdict)})));
    let defects = sig.compatibility_defects();
    rep.push(Record::new("local_classes_compatible", ids(&x, defects.iter().copied()), defects.is_empty(), json!({})));
    let artifact = json!({"fundamental_class": sig.class, "promise": m.promise().name(), "structure": structure_json(&sig.structure)});
    Ok(Outcome::checked(rep, Some(canonical_json(&artifact))))
}

pub fn check_products(a: &Input, b: &Input) -> CliResult<Outcome> {
    let (l, m) = closed_manifold(a)?;
    let (k, n) = closed_manifold(b)?;
    let check = check_product_formula(&m, &n)?;
    let p = check.base().clone();
    let records: Vec<_> = (0..p.len()).into_par_iter().map(|s| check.ball_record(s)).collect();
    let mut rep = Report::new("check-products");
    rep.input(a);
    rep.input(b);
    rep.summarize("balls", p.len());
    rep.summarize("exact", records.iter().filter(|r| r.exact).count());
    for r in &records {
        let (s, t) = check.factors(r.ball);
        let cert = json!({"factors": [l.id(s), k.id(t)], "comparison": r.comparison, "homotopic": r.homotopic, "exact": r.exact, "orientation_sign": check.orientation_sign(r.ball)});
        rep.push(Record::new("product_formula", loc(&p, r.ball), r.passes(), cert));
    }
    let unit = l.len() == 1 || k.len() == 1;
    let inexact = ids(&p, records.iter().filter(|r| !r.exact).map(|r| r.ball));
    rep.push(Record::new("matrix_exact", inexact, records.iter().all(|r| r.exact), json!({"unit_case": unit})).required_if(unit));
    Ok(Outcome::checked(rep, None))
}

pub fn suspend(input: &Input, k: usize) -> CliResult<Outcome> {
    let (_, m) = closed_manifold(input)?;
    let sig = dissected_signature(&m)?;
    let t = suspension_product(&sig.structure, k)?;
    let p = t.structure.base().clone();
    let verdicts = t.verdicts();
    let mut rep = Report::new("suspend");
    rep.input(input);
    rep.parameter("k", k);
    rep.summarize("balls", p.len());
    rep.summarize("boundary_locus", ids(&p, t.boundary.iter().copied()));
    for (s, v) in verdicts.iter().enumerate() {
        let cert = json!({"in_boundary": !t.required(s), "verdict": poincare_json(v)});
        rep.push(Record::new("local_poincare", loc(&p, s), v.holds, cert).required_if(t.required(s)));
    }
    let locus: Vec<usize> = t.structure.non_poincare_locus();
    rep.push(Record::new("boundary_locus", ids(&p, locus.iter().copied()), t.locus_matches(), json!({"expected": ids(&p, t.boundary.iter().copied())})));
    let iv = t.interior_verdict(sig.complex().assemble())?;
    rep.push(Record::new("interior_assembly", vec![], iv.holds, json!({"verdict": poincare_json(&iv)})));
    let artifact = json!({"k": k, "boundary": ids(&p, t.boundary.iter().copied()), "structure": structure_json(&t.structure)});
    Ok(Outcome::checked(rep, Some(canonical_json(&artifact))))
}
