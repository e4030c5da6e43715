//! Implementations of the subcommands.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use qip_core::arith::rat;
use qip_core::geometry::{hull_facets, integer_points_with_budget, VPolytope};
use qip_core::gsa::{gsa_count_with_budget, gsa_decide_with_budget, GsaInstance};
use qip_core::oracle::{
    eval_exists_forall_union, eval_q3sat, eval_sentence_with, project_count_with_budget,
    OracleConfig,
};
use qip_core::reductions::{
    complement_to_simplices, count_gsa_to_projection, gsa_to_two_quantifiers, q3sat_construction,
    three_quantifier_construction, Literal, Q3SatInstance, QuantSentence,
};
use qip_core::sweep::{gsa_grid, gsa_grid_small};
use qip_core::Rational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::schema::{self, Document, Loaded, Provenance};
use crate::{smtlib, CliError, Format, Grid, Outcome, Target};

/// Every tenth instance of the full grid.
const SMALL_GRID_STEP: usize = 10;

fn read(path: &Path) -> Result<Document, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    Document::from_json(&text)
}

fn write(output: Option<&Path>, text: &str) -> Result<(), CliError> {
    match output {
        Some(p) => fs::write(p, text)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn check_range<T: PartialOrd + std::fmt::Display>(name: &str, v: T, lo: T, hi: T) -> Result<(), CliError> {
    if v < lo || v > hi {
        return Err(CliError::Usage(format!("{name} = {v} outside {lo}..={hi}")));
    }
    Ok(())
}

pub fn gen_gsa(
    d: usize,
    n: u64,
    den: i64,
    eps: Option<&str>,
    seed: u64,
    output: Option<&Path>,
) -> Result<Outcome, CliError> {
    check_range("d", d, 1, 8)?;
    check_range("N", n, 1, 1_000_000)?;
    check_range("den", den, 1, 1000)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let alpha = (0..d)
        .map(|_| {
            let q = rng.gen_range(1..=den);
            rat(rng.gen_range(0..q), q)
        })
        .collect();
    let eps = match eps {
        Some(s) => Rational::from_str(s).map_err(|_| CliError::Usage(format!("bad eps {s:?}")))?,
        None => {
            let q = rng.gen_range(3..=den.max(3));
            rat(rng.gen_range(1..=(q - 1) / 2), q)
        }
    };
    let inst = GsaInstance::new(alpha, n, eps)?;
    write(output, &schema::gsa_to_wire(&inst).to_json())?;
    Ok(Outcome::Pass)
}

pub fn gen_q3sat(
    k: usize,
    ell: usize,
    clauses: usize,
    seed: u64,
    output: Option<&Path>,
) -> Result<Outcome, CliError> {
    check_range("k", k, 1, 4)?;
    check_range("ell", ell, 1, 8)?;
    check_range("clauses", clauses, 1, 50)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cs = (0..clauses)
        .map(|_| {
            [(); 3].map(|_| Literal {
                block: rng.gen_range(1..=k),
                index: rng.gen_range(1..=ell),
                positive: rng.gen_bool(0.5),
            })
        })
        .collect();
    let inst = Q3SatInstance::new(k, ell, cs)?;
    write(output, &schema::q3sat_to_wire(&inst).to_json())?;
    Ok(Outcome::Pass)
}

fn provenance(
    target: Target,
    source: Document,
    d: usize,
    ell: usize,
    m: &[num_bigint::BigInt],
    t: Option<&num_bigint::BigInt>,
) -> Option<Provenance> {
    Some(Provenance {
        target: target.name().into(),
        source: Box::new(source),
        d,
        ell,
        m: m.iter().map(ToString::to_string).collect(),
        t: t.map(ToString::to_string),
    })
}

fn incompatible(target: Target, kind: &str) -> CliError {
    CliError::Usage(format!("target {} does not apply to a {kind} document", target.name()))
}

/// Runs a reduction and returns its document.
pub fn reduce_document(doc: &Document, target: Target) -> Result<Document, CliError> {
    let loaded = schema::load(doc)?;
    Ok(match (target, loaded) {
        (Target::Eae, Loaded::Gsa(inst)) => {
            let c = three_quantifier_construction(&inst)?;
            let t = inst.t_bound();
            Document::Sentence {
                provenance: provenance(target, doc.clone(), c.gadget.d, c.compressed.ell, &[], Some(&t)),
                sentence: schema::sentence_to_wire(&c.sentence),
            }
        }
        (Target::Qsat, Loaded::Q3sat(inst)) => {
            let c = q3sat_construction(&inst)?;
            let ell = c.lifted.dim - (inst.k + 5);
            Document::Sentence {
                provenance: provenance(target, doc.clone(), c.gadget.d, ell, &[], None),
                sentence: schema::sentence_to_wire(&c.sentence),
            }
        }
        (Target::Proj, Loaded::Gsa(inst)) => {
            let p = count_gsa_to_projection(&inst)?;
            let prov = provenance(target, doc.clone(), inst.d(), 0, &p.m, Some(&p.t));
            schema::projection_to_wire(&p, prov)
        }
        (Target::Simplices, Loaded::Gsa(inst)) => {
            let p = count_gsa_to_projection(&inst)?;
            let simplices = complement_to_simplices(&p.u, &p.v)?;
            Document::Simplices {
                provenance: provenance(target, doc.clone(), inst.d(), 0, &p.m, Some(&p.t)),
                n: inst.n.to_string(),
                simplices: simplices.iter().map(schema::vpoly_to_wire).collect(),
            }
        }
        (Target::TwoQuant, Loaded::Gsa(inst)) => {
            let s = gsa_to_two_quantifiers(&inst)?;
            let prov = provenance(target, doc.clone(), s.gadget.d, 0, &[], Some(&s.t));
            schema::two_quant_to_wire(&s, prov)
        }
        (target, _) => return Err(incompatible(target, doc.kind())),
    })
}

pub fn reduce(input: &Path, target: Target, output: Option<&Path>) -> Result<Outcome, CliError> {
    let doc = read(input)?;
    write(output, &reduce_document(&doc, target)?.to_json())?;
    Ok(Outcome::Pass)
}

fn eval(s: &QuantSentence, budget: u64) -> Result<bool, CliError> {
    let cfg = OracleConfig {
        budget,
        ..OracleConfig::default()
    };
    Ok(eval_sentence_with(s, &cfg)?)
}

fn decide_loaded(loaded: &Loaded, kind: &str, budget: u64) -> Result<bool, CliError> {
    match loaded {
        Loaded::Gsa(inst) => Ok(gsa_decide_with_budget(inst, budget)?),
        Loaded::Q3sat(inst) => Ok(eval_q3sat(inst)?),
        Loaded::Sentence(s) => eval(s, budget),
        Loaded::TwoQuant(s) => Ok(eval_exists_forall_union(&s.i_box, &s.k_box, &s.parts, budget)?),
        _ => Err(CliError::Usage(format!("a {kind} document has no truth value; use count"))),
    }
}

pub fn decide(input: &Path, budget: u64) -> Result<Outcome, CliError> {
    let doc = read(input)?;
    let v = decide_loaded(&schema::load(&doc)?, doc.kind(), budget)?;
    println!("{v}");
    Ok(Outcome::Pass)
}

/// Distinct first coordinates of the integer points of the simplices.
fn simplex_count(simplices: &[VPolytope], budget: u64) -> Result<u64, CliError> {
    let mut xs = BTreeSet::new();
    for s in simplices {
        for p in integer_points_with_budget(&hull_facets(s)?, budget)? {
            xs.insert(p[0]);
        }
    }
    Ok(xs.len() as u64)
}

pub fn count(input: &Path, budget: u64) -> Result<Outcome, CliError> {
    let doc = read(input)?;
    let n = match schema::load(&doc)? {
        Loaded::Gsa(inst) => gsa_count_with_budget(&inst, budget)?,
        Loaded::Projection(p) => project_count_with_budget(&p.v, &p.u, budget)?,
        Loaded::Simplices(simplices) => simplex_count(&simplices, budget)?,
        _ => {
            return Err(CliError::Usage(format!(
                "a {} document cannot be counted; use decide",
                doc.kind()
            )))
        }
    };
    println!("{n}");
    Ok(Outcome::Pass)
}

fn describe_gsa(inst: &GsaInstance) -> String {
    let alpha: Vec<String> = inst.alpha.iter().map(ToString::to_string).collect();
    format!("gsa alpha=[{}] N={} eps={}", alpha.join(","), inst.n, inst.eps)
}

fn describe_q3sat(inst: &Q3SatInstance) -> String {
    let clauses: Vec<String> = inst
        .clauses
        .iter()
        .map(|c| format!("({} | {} | {})", c[0], c[1], c[2]))
        .collect();
    format!("q3sat k={} ell={} {}", inst.k, inst.ell, clauses.join(" & "))
}

/// One verification: the reduction's answer against the direct oracle.
fn check(loaded: &Loaded, target: Target, budget: u64) -> Result<(bool, String), CliError> {
    match (target, loaded) {
        (Target::Eae, Loaded::Gsa(inst)) => {
            let want = gsa_decide_with_budget(inst, budget)?;
            let got = eval(&three_quantifier_construction(inst)?.sentence, budget)?;
            Ok((want == got, format!("decide={want} sentence={got}")))
        }
        (Target::TwoQuant, Loaded::Gsa(inst)) => {
            let want = gsa_decide_with_budget(inst, budget)?;
            let s = gsa_to_two_quantifiers(inst)?;
            let got = eval_exists_forall_union(&s.i_box, &s.k_box, &s.parts, budget)?;
            Ok((want == got, format!("decide={want} sentence={got}")))
        }
        (Target::Qsat, Loaded::Q3sat(inst)) => {
            let want = eval_q3sat(inst)?;
            let got = eval(&q3sat_construction(inst)?.sentence, budget)?;
            Ok((want == got, format!("formula={want} sentence={got}")))
        }
        (Target::Proj, Loaded::Gsa(inst)) => {
            let want = gsa_count_with_budget(inst, budget)?;
            let p = count_gsa_to_projection(inst)?;
            let proj = project_count_with_budget(&p.v, &p.u, budget)?;
            let got = inst.n - proj.min(inst.n);
            Ok((want == got && proj <= inst.n, format!("count={want} N-projcount={got}")))
        }
        (Target::Simplices, Loaded::Gsa(inst)) => {
            let want = gsa_count_with_budget(inst, budget)?;
            let p = count_gsa_to_projection(inst)?;
            let simplices = complement_to_simplices(&p.u, &p.v)?;
            let proj = simplex_count(&simplices, budget)?;
            let got = inst.n - proj.min(inst.n);
            Ok((
                want == got && proj <= inst.n,
                format!("count={want} N-simplexcount={got} simplices={}", simplices.len()),
            ))
        }
        (target, _) => Err(incompatible(target, match loaded {
            Loaded::Gsa(_) => "gsa",
            Loaded::Q3sat(_) => "q3sat",
            _ => "reduced",
        })),
    }
}

fn report(loaded: &Loaded, target: Target, budget: u64) -> Result<Outcome, CliError> {
    let what = match loaded {
        Loaded::Gsa(i) => describe_gsa(i),
        Loaded::Q3sat(i) => describe_q3sat(i),
        _ => return Err(CliError::Usage("verify takes a gsa or q3sat instance".into())),
    };
    match check(loaded, target, budget) {
        Ok((true, detail)) => {
            println!("PASS {} {what}: {detail}", target.name());
            Ok(Outcome::Pass)
        }
        Ok((false, detail)) => {
            println!("FAIL {} {what}: {detail}", target.name());
            Ok(Outcome::Fail)
        }
        Err(CliError::Budget(m)) => {
            println!("SKIP {} {what}: {m}", target.name());
            Ok(Outcome::Skip)
        }
        Err(e) => Err(e),
    }
}

pub fn verify_file(input: &Path, target: Target, budget: u64) -> Result<Outcome, CliError> {
    let doc = read(input)?;
    report(&schema::load(&doc)?, target, budget)
}

pub fn verify_sweep(grid: Grid, target: Option<Target>, budget: u64) -> Result<Outcome, CliError> {
    let instances = match grid {
        Grid::Small => gsa_grid_small(SMALL_GRID_STEP),
        Grid::Full => gsa_grid(),
    };
    let targets = match target {
        Some(Target::Qsat) => return Err(incompatible(Target::Qsat, "gsa")),
        Some(t) => vec![t],
        None => vec![Target::Eae, Target::TwoQuant, Target::Proj],
    };
    let (mut pass, mut fail, mut skip) = (0, 0, 0);
    for inst in instances {
        let loaded = Loaded::Gsa(inst);
        for &t in &targets {
            match report(&loaded, t, budget)? {
                Outcome::Pass => pass += 1,
                Outcome::Fail => fail += 1,
                Outcome::Skip => skip += 1,
            }
        }
    }
    let trials = pass + fail + skip;
    let name = match grid {
        Grid::Small => "small",
        Grid::Full => "full",
    };
    println!("sweep {name}: {pass}/{trials} PASS, {fail} FAIL, {skip} SKIP");
    Ok(if fail > 0 {
        Outcome::Fail
    } else if skip > 0 {
        Outcome::Skip
    } else {
        Outcome::Pass
    })
}

pub fn export(input: &Path, format: Format, output: Option<&Path>) -> Result<Outcome, CliError> {
    let doc = read(input)?;
    let text = match format {
        Format::NativeJson => {
            // Re-serialize through the domain types so the output is checked.
            match (&doc, schema::load(&doc)?) {
                (Document::Sentence { provenance, .. }, Loaded::Sentence(s)) => Document::Sentence {
                    provenance: provenance.clone(),
                    sentence: schema::sentence_to_wire(&s),
                }
                .to_json(),
                _ => return Err(CliError::Usage(format!("export takes a sentence, not {}", doc.kind()))),
            }
        }
        Format::Smtlib2Lia => match schema::load(&doc)? {
            Loaded::Sentence(s) => smtlib::render(&s),
            _ => return Err(CliError::Usage(format!("export takes a sentence, not {}", doc.kind()))),
        },
    };
    write(output, &text)?;
    Ok(Outcome::Pass)
}
