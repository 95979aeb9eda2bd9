//! The `make` and `check` commands: object factories and single-check runs
//! over the file formats.

use crate::corpus;
use crate::report::{Report, Verdict};
use segalkit::bisset::{
    self, bi_product, bi_pushout, box_, boundary_box, disc, f_disc, f_horn, skeleton_pushout_check,
    twist_projection, BiMap, FinBiSet,
};
use segalkit::homology::{homology_report, we_necessary, WeVerdict};
use segalkit::lifting::{
    check_kan_fibration, check_left_fibration, check_reedy_fibration, check_trivial_fibration_b,
    check_trivial_fibration_s,
};
use segalkit::objfile::{self, kind_of};
use segalkit::segal::{
    check_segal_discrete, disc_nerve, heq_subset, homotopy_category, is_complete_discrete, nerve,
    prime_components, Tier,
};
use segalkit::sset::{boundary, horn, pi0, standard};
use segalkit::yoneda::{elements, evaluation_check, fully_faithful_yoneda_check};
use segalkit::{Error, Result};
use serde_json::{json, Value};
use std::sync::Arc;

fn load(path: &str) -> Result<Value> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))?;
    objfile::parse(&text).map_err(|e| Error::Parse(format!("{path}: {e}")))
}

fn want_usize(params: &[String], i: usize, what: &str) -> Result<usize> {
    params
        .get(i)
        .and_then(|p| p.parse().ok())
        .ok_or_else(|| Error::Parse(format!("expected {what} at position {}", i + 1)))
}

/// Build an object and return its document.
pub fn cmd_make(
    kind: &str,
    params: &[String],
    inputs: &[String],
    dim: Option<usize>,
    bound: Option<usize>,
) -> Result<Value> {
    match kind {
        "standard" => Ok(objfile::sset_to_value(&standard(want_usize(params, 0, "n")?))),
        "boundary" => Ok(objfile::sset_to_value(&boundary(want_usize(params, 0, "n")?)?)),
        "horn" => Ok(objfile::sset_to_value(&horn(
            want_usize(params, 0, "n")?,
            want_usize(params, 1, "k")?,
        )?)),
        "box" => Ok(objfile::bisset_to_value(&box_(
            want_usize(params, 0, "n")?,
            want_usize(params, 1, "m")?,
        ))),
        "boundary-box" => {
            let (b, _) = boundary_box(want_usize(params, 0, "n")?, want_usize(params, 1, "m")?)?;
            Ok(objfile::bisset_to_value(&b))
        }
        "f" => Ok(objfile::bisset_to_value(&f_disc(want_usize(params, 0, "n")?))),
        "f-horn" => {
            let (h, _) = f_horn(want_usize(params, 0, "n")?, want_usize(params, 1, "i")?)?;
            Ok(objfile::bisset_to_value(&h))
        }
        "cat" => {
            let name = params.first().ok_or_else(|| Error::Parse("expected a category name".into()))?;
            Ok(objfile::fincat_to_value(&corpus::category_by_name(name)?))
        }
        "rep-functor" => {
            let c = objfile::fincat_from_value(&load(
                inputs.first().ok_or_else(|| Error::Parse("expected a category file".into()))?,
            )?)?;
            let x = want_usize(params, 0, "object")?;
            Ok(objfile::functor_to_value(&segalkit::fincat::SetFunctor::representable(&c, x)))
        }
        "nerve" => {
            let c = match (params.first(), inputs.first()) {
                (Some(name), _) => corpus::category_by_name(name)?,
                (None, Some(path)) => objfile::fincat_from_value(&load(path)?)?,
                _ => return Err(Error::Parse("expected a category name or file".into())),
            };
            let (n, _) = nerve(&c, dim)?;
            Ok(objfile::sset_to_value(&n))
        }
        "disc-nerve" => {
            let c = match (params.first(), inputs.first()) {
                (Some(name), _) => corpus::category_by_name(name)?,
                (None, Some(path)) => objfile::fincat_from_value(&load(path)?)?,
                _ => return Err(Error::Parse("expected a category name or file".into())),
            };
            let (x, _) = disc_nerve(&c, dim)?;
            Ok(objfile::bisset_to_value(&x))
        }
        "disc" => {
            let x = objfile::sset_from_value(&load(
                inputs.first().ok_or_else(|| Error::Parse("expected a simplicial file".into()))?,
            )?)?;
            Ok(objfile::bisset_to_value(&disc(&x)))
        }
        "constant" => {
            let x = objfile::sset_from_value(&load(
                inputs.first().ok_or_else(|| Error::Parse("expected a simplicial file".into()))?,
            )?)?;
            Ok(objfile::bisset_to_value(&bisset::constant(&x)))
        }
        "product" => {
            let a = load_bisset(inputs, 0)?;
            let b = load_bisset(inputs, 1)?;
            Ok(objfile::bisset_to_value(&bi_product(&a, &b)?.object))
        }
        "pushout" => {
            let f = objfile::bimap_from_value(&load(
                inputs.first().ok_or_else(|| Error::Parse("expected two map files".into()))?,
            )?)?;
            let g = objfile::bimap_from_value(&load(
                inputs.get(1).ok_or_else(|| Error::Parse("expected two map files".into()))?,
            )?)?;
            Ok(objfile::bisset_to_value(&bi_pushout(&f, &g)?.object))
        }
        "elements" => {
            let c = objfile::fincat_from_value(&load(
                inputs.first().ok_or_else(|| Error::Parse("expected category and functor".into()))?,
            )?)?;
            let f = objfile::functor_from_value(&load(
                inputs.get(1).ok_or_else(|| Error::Parse("expected category and functor".into()))?,
            )?)?;
            let e = elements(&c, &f, dim)?;
            Ok(objfile::bimap_to_value(&e.projection))
        }
        "pi" => {
            let x = load_bisset(inputs, 0)?;
            let tp = twist_projection(&x, bound)?;
            Ok(objfile::bimap_to_value(&tp.pi))
        }
        "terminal-map" => {
            let doc = load(
                inputs.first().ok_or_else(|| Error::Parse("expected an object file".into()))?,
            )?;
            match kind_of(&doc)? {
                "sset" => {
                    let x = Arc::new(objfile::sset_from_value(&doc)?);
                    Ok(objfile::smap_to_value(&segalkit::sset::SSetMap::terminal(x)))
                }
                "bisset" => {
                    let x = Arc::new(objfile::bisset_from_value(&doc)?);
                    Ok(objfile::bimap_to_value(&BiMap::terminal(x)))
                }
                k => Err(Error::Parse(format!("terminal-map expects an object, got {k}"))),
            }
        }
        _ => Err(Error::Parse(format!("unknown make kind {kind}"))),
    }
}

fn load_bisset(inputs: &[String], i: usize) -> Result<Arc<FinBiSet>> {
    let doc = load(
        inputs
            .get(i)
            .ok_or_else(|| Error::Parse(format!("expected an object file at position {}", i + 1)))?,
    )?;
    Ok(Arc::new(objfile::bisset_from_value(&doc)?))
}

/// Run one named check over files; returns the report.
pub fn cmd_check(kind: &str, inputs: &[String], bound: usize) -> Result<Report> {
    let started = std::time::Instant::now();
    let mut report = match kind {
        "kan-fib" => {
            let f = objfile::smap_from_value(&load(need(inputs, 0)?)?)?;
            decide(kind, Tier::Bounded(bound), check_kan_fibration(&f, bound)?)?
        }
        "trivial-fib" => {
            let doc = load(need(inputs, 0)?)?;
            match doc["flavor"].as_str() {
                Some("sset") => {
                    let f = objfile::smap_from_value(&doc)?;
                    decide(kind, Tier::Bounded(bound), check_trivial_fibration_s(&f, bound)?)?
                }
                Some("bisset") => {
                    let f = objfile::bimap_from_value(&doc)?;
                    decide(kind, Tier::Bounded(bound), check_trivial_fibration_b(&f, bound)?)?
                }
                _ => return Err(Error::Parse("expected a map file".into())),
            }
        }
        "reedy-fib" => {
            let f = objfile::bimap_from_value(&load(need(inputs, 0)?)?)?;
            decide(kind, Tier::Bounded(bound), check_reedy_fibration(&f, bound)?)?
        }
        "left-fib" => {
            let f = objfile::bimap_from_value(&load(need(inputs, 0)?)?)?;
            decide(kind, Tier::Bounded(bound), check_left_fibration(&f, bound)?)?
        }
        "segal" => {
            let x = load_bisset(inputs, 0)?;
            match check_segal_discrete(&x, bound)? {
                Ok(()) => Report::new(kind, Tier::ExactDiscrete.to_string(), Verdict::Pass)?,
                Err(w) => Report::new(kind, Tier::ExactDiscrete.to_string(), Verdict::Fail)?
                    .with_certificate(json!({
                        "level": w.level, "row": w.row_cells, "chains": w.chain_cells,
                    })),
            }
        }
        "complete" => {
            let x = load_bisset(inputs, 0)?;
            let (complete, verts, heq) = is_complete_discrete(&x)?;
            let v = if complete { Verdict::Pass } else { Verdict::Fail };
            Report::new(kind, Tier::ExactDiscrete.to_string(), v)?
                .with_certificate(json!({ "vertices": verts, "heq": heq }))
        }
        "ho-cat" => {
            let x = load_bisset(inputs, 0)?;
            let ho = homotopy_category(&x)?;
            Report::new(kind, Tier::ExactDiscrete.to_string(), Verdict::Pass)?
                .with_certificate(json!({
                    "objects": ho.objects.len(), "arrows": ho.arrows.len(),
                }))
        }
        "heq" => {
            let x = load_bisset(inputs, 0)?;
            let heq = heq_subset(&x)?;
            let pc = prime_components(&x)?;
            let v = if pc.matches_heq { Verdict::Pass } else { Verdict::Fail };
            Report::new(kind, pc.tier.to_string(), v)?.with_certificate(json!({
                "heq": heq.len(),
                "x1_prime": pc.x1_prime.len(),
                "x3_prime": pc.x3_prime.len(),
            }))
        }
        "yoneda-eval" => {
            let c = objfile::fincat_from_value(&load(need(inputs, 0)?)?)?;
            let f = objfile::functor_from_value(&load(need(inputs, 1)?)?)?;
            f.validate(&c)?;
            let mut all = Vec::new();
            let mut ok = true;
            let nb = corpus::nerve_bound(&c, bound.max(4));
            for x in 0..c.objects.len() {
                let rep = evaluation_check(&c, x, &f, nb)?;
                ok &= rep.bijective && rep.psi_prime_bijective;
                all.push(json!([x, rep.maps_over, rep.fiber_size, rep.bijective]));
            }
            let v = if ok { Verdict::Pass } else { Verdict::Fail };
            Report::new(kind, Tier::ExactDiscrete.to_string(), v)?
                .with_certificate(json!({ "objects": all }))
        }
        "yoneda-ff" => {
            let c = objfile::fincat_from_value(&load(need(inputs, 0)?)?)?;
            let rep = fully_faithful_yoneda_check(&c, corpus::nerve_bound(&c, bound.max(3)))?;
            let v = if rep.counts_match && rep.naturality { Verdict::Pass } else { Verdict::Fail };
            Report::new(kind, Tier::ExactDiscrete.to_string(), v)?
                .with_certificate(json!({ "pairs": rep.pairs }))
        }
        "cyl-fiber" => {
            let chain = objfile::chain_from_value(&load(need(inputs, 0)?)?)?;
            let verdicts = segalkit::cylinder::fiber_formula_check(&chain, bound.min(3))?;
            let bad: Vec<_> = verdicts.iter().filter(|v| !v.matched).collect();
            let v = if bad.is_empty() { Verdict::Pass } else { Verdict::Fail };
            Report::new(kind, Tier::ExactDiscrete.to_string(), v)?
                .with_certificate(json!({ "pieces": verdicts.len(), "mismatches": bad.len() }))
        }
        "prism" => {
            let mut ok = true;
            for n in 0..=bound.min(3) {
                ok &= segalkit::cylinder::prism_decomposition(n)?.comparison.is_isomorphism();
            }
            let v = if ok { Verdict::Pass } else { Verdict::Fail };
            Report::new(kind, Tier::ExactDiscrete.to_string(), v)?
                .with_certificate(json!({ "max_n": bound.min(3) }))
        }
        "skeleton-pushout" => {
            let x = load_bisset(inputs, 0)?;
            let steps = skeleton_pushout_check(&x, bound)?;
            let ok = steps.iter().all(|s| s.matched);
            let v = if ok { Verdict::Pass } else { Verdict::Fail };
            Report::new(kind, Tier::ExactDiscrete.to_string(), v)?
                .with_certificate(serde_json::to_value(&steps).unwrap())
        }
        "homology" => {
            let x = objfile::sset_from_value(&load(need(inputs, 0)?)?)?;
            let h = homology_report(&x, bound)?;
            Report::new(kind, Tier::ExactDiscrete.to_string(), Verdict::Pass)?
                .with_certificate(serde_json::to_value(&h).unwrap())
        }
        "we-necessary" => {
            let f = objfile::smap_from_value(&load(need(inputs, 0)?)?)?;
            let (v, why) = we_necessary(&f, bound)?;
            let verdict = match v {
                WeVerdict::Consistent => Verdict::Pass,
                WeVerdict::RefutedWe => Verdict::Fail,
            };
            Report::new(kind, Tier::ExactDiscrete.to_string(), verdict)?
                .with_certificate(json!({ "verdict": v, "detail": why }))
        }
        "pi0" => {
            let x = objfile::sset_from_value(&load(need(inputs, 0)?)?)?;
            let p = pi0(&x)?;
            Report::new(kind, Tier::ExactDiscrete.to_string(), Verdict::Pass)?
                .with_certificate(json!({
                    "components": p.count(),
                    "classes": p
                        .classes
                        .iter()
                        .map(|c| c.iter().map(|g| g.idx).collect::<Vec<_>>())
                        .collect::<Vec<_>>(),
                }))
        }
        _ => return Err(Error::Parse(format!("unknown check kind {kind}"))),
    };
    report.wall_ms = started.elapsed().as_millis();
    Ok(report)
}

fn need<'a>(inputs: &'a [String], i: usize) -> Result<&'a str> {
    inputs
        .get(i)
        .map(|s| s.as_str())
        .ok_or_else(|| Error::Parse(format!("missing input file at position {}", i + 1)))
}

fn decide(kind: &str, tier: Tier, d: segalkit::lifting::Decision) -> Result<Report> {
    Ok(match d {
        Ok(()) => Report::new(kind, tier.to_string(), Verdict::Pass)?,
        Err(w) => Report::new(kind, tier.to_string(), Verdict::Fail)?
            .with_certificate(serde_json::to_value(&w).unwrap()),
    })
}
