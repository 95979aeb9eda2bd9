//! The interchange format: UTF-8 JSON documents carrying objects, maps,
//! categories, set-valued functors and chains.
//!
//! Serialization is canonical: generators are written with generated ids in
//! insertion order (zero-padded so id order equals index order), keys are
//! alphabetical, and saving a loaded canonical file reproduces it byte for
//! byte. Loaded objects pass the full structural validation.

use crate::bisset::{BiGenId, BiMap, BiSimplex, FinBiSet};
use crate::cylinder::ChainOverB;
use crate::error::{Error, Result};
use crate::fincat::{Arrow, FinCat, SetFunctor};
use crate::ordinal::OrdinalMap;
use crate::sset::{FinSSet, GenId, SSetMap, Simplex};
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;
use std::sync::Arc;

fn sid(dim: usize, idx: usize) -> String {
    format!("g{dim}_{idx:04}")
}

fn bid(n: usize, m: usize, idx: usize) -> String {
    format!("g{n}x{m}_{idx:04}")
}

/// Serialize a simplicial set.
pub fn sset_to_value(x: &FinSSet) -> Value {
    let counts = x.gen_counts();
    let mut generators = Vec::new();
    let mut faces = Map::new();
    for (d, &count) in counts.iter().enumerate() {
        if count == 0 {
            continue;
        }
        generators.push(json!({
            "degree": [d],
            "ids": (0..count).map(|i| sid(d, i)).collect::<Vec<_>>(),
        }));
        if d > 0 {
            for i in 0..count {
                let g = GenId { dim: d, idx: i };
                let entries: Vec<Value> = x
                    .faces_of(g)
                    .iter()
                    .enumerate()
                    .map(|(k, s)| {
                        json!({
                            "axis": 0,
                            "index": k,
                            "surjection": s.epi.values(),
                            "generator": sid(s.gen.dim, s.gen.idx),
                        })
                    })
                    .collect();
                faces.insert(sid(d, i), Value::Array(entries));
            }
        }
    }
    json!({ "kind": "sset", "generators": generators, "faces": faces })
}

fn parse_id(s: &str) -> Result<(Vec<usize>, usize)> {
    // "g{d}_{i}" or "g{n}x{m}_{i}"
    let body = s.strip_prefix('g').ok_or_else(|| Error::Parse(format!("bad id {s}")))?;
    let (deg, idx) = body.rsplit_once('_').ok_or_else(|| Error::Parse(format!("bad id {s}")))?;
    let idx: usize = idx.parse().map_err(|_| Error::Parse(format!("bad id {s}")))?;
    let degs: Vec<usize> = deg
        .split('x')
        .map(|p| p.parse().map_err(|_| Error::Parse(format!("bad id {s}"))))
        .collect::<Result<_>>()?;
    Ok((degs, idx))
}

fn as_usize_vec(v: &Value) -> Result<Vec<usize>> {
    v.as_array()
        .ok_or_else(|| Error::Parse("expected an array".into()))?
        .iter()
        .map(|e| {
            e.as_u64().map(|u| u as usize).ok_or_else(|| Error::Parse("expected a natural".into()))
        })
        .collect()
}

pub fn sset_from_value(v: &Value) -> Result<FinSSet> {
    if v["kind"] != "sset" {
        return Err(Error::Parse("expected kind sset".into()));
    }
    let gens = v["generators"].as_array().ok_or_else(|| Error::Parse("generators".into()))?;
    let mut counts: BTreeMap<usize, Vec<String>> = BTreeMap::new();
    for group in gens {
        let degree = as_usize_vec(&group["degree"])?;
        if degree.len() != 1 {
            return Err(Error::Parse("sset degree must have one entry".into()));
        }
        let ids = group["ids"].as_array().ok_or_else(|| Error::Parse("ids".into()))?;
        counts.entry(degree[0]).or_default().extend(
            ids.iter()
                .map(|i| i.as_str().map(String::from).ok_or_else(|| Error::Parse("id".into())))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    let max_dim = counts.keys().max().copied().unwrap_or(0);
    let mut labels = vec![Vec::new(); max_dim + 1];
    let mut id_lookup: BTreeMap<String, GenId> = BTreeMap::new();
    for (&d, ids) in &counts {
        for id in ids {
            let g = GenId { dim: d, idx: labels[d].len() };
            labels[d].push(id.clone());
            if id_lookup.insert(id.clone(), g).is_some() {
                return Err(Error::Parse(format!("duplicate id {id}")));
            }
        }
    }
    let face_map = v["faces"].as_object().ok_or_else(|| Error::Parse("faces".into()))?;
    let mut faces: Vec<Vec<Vec<Simplex>>> = labels
        .iter()
        .map(|level| vec![Vec::new(); level.len()])
        .collect();
    for (owner, entries) in face_map {
        let g = *id_lookup
            .get(owner)
            .ok_or_else(|| Error::Parse(format!("unknown owner {owner}")))?;
        let entries = entries.as_array().ok_or_else(|| Error::Parse("face list".into()))?;
        let mut by_index: Vec<Option<Simplex>> = vec![None; g.dim + 1];
        for e in entries {
            if e["axis"].as_u64() != Some(0) {
                return Err(Error::Parse("sset faces have axis 0".into()));
            }
            let k = e["index"].as_u64().ok_or_else(|| Error::Parse("face index".into()))? as usize;
            let target_id =
                e["generator"].as_str().ok_or_else(|| Error::Parse("face generator".into()))?;
            let tgt = *id_lookup
                .get(target_id)
                .ok_or_else(|| Error::Parse(format!("unknown generator {target_id}")))?;
            let epi = OrdinalMap::new(as_usize_vec(&e["surjection"])?, tgt.dim)?;
            if k > g.dim || by_index[k].is_some() {
                return Err(Error::Parse(format!("bad face index {k} on {owner}")));
            }
            by_index[k] = Some(Simplex { gen: tgt, epi });
        }
        faces[g.dim][g.idx] = by_index
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Parse(format!("missing face on {owner}")))?;
    }
    FinSSet::build(labels, faces)
}

pub fn bisset_to_value(x: &FinBiSet) -> Value {
    let mut generators = Vec::new();
    let mut faces = Map::new();
    for (&(n, m), labs) in x.labels() {
        if labs.is_empty() {
            continue;
        }
        generators.push(json!({
            "degree": [n, m],
            "ids": (0..labs.len()).map(|i| bid(n, m, i)).collect::<Vec<_>>(),
        }));
        for idx in 0..labs.len() {
            let g = BiGenId { n, m, idx };
            let mut entries = Vec::new();
            if n > 0 {
                for k in 0..=n {
                    let s = x.face1(g, k).unwrap();
                    entries.push(json!({
                        "axis": 0,
                        "index": k,
                        "surjection": s.e1.values(),
                        "surjection2": s.e2.values(),
                        "generator": bid(s.gen.n, s.gen.m, s.gen.idx),
                    }));
                }
            }
            if m > 0 {
                for k in 0..=m {
                    let s = x.face2(g, k).unwrap();
                    entries.push(json!({
                        "axis": 1,
                        "index": k,
                        "surjection": s.e1.values(),
                        "surjection2": s.e2.values(),
                        "generator": bid(s.gen.n, s.gen.m, s.gen.idx),
                    }));
                }
            }
            if !entries.is_empty() {
                faces.insert(bid(n, m, idx), Value::Array(entries));
            }
        }
    }
    json!({ "kind": "bisset", "generators": generators, "faces": faces })
}

pub fn bisset_from_value(v: &Value) -> Result<FinBiSet> {
    if v["kind"] != "bisset" {
        return Err(Error::Parse("expected kind bisset".into()));
    }
    let gens = v["generators"].as_array().ok_or_else(|| Error::Parse("generators".into()))?;
    let mut labels: BTreeMap<(usize, usize), Vec<String>> = BTreeMap::new();
    let mut id_lookup: BTreeMap<String, BiGenId> = BTreeMap::new();
    for group in gens {
        let degree = as_usize_vec(&group["degree"])?;
        if degree.len() != 2 {
            return Err(Error::Parse("bisset degree must have two entries".into()));
        }
        let key = (degree[0], degree[1]);
        let ids = group["ids"].as_array().ok_or_else(|| Error::Parse("ids".into()))?;
        for id in ids {
            let id = id.as_str().ok_or_else(|| Error::Parse("id".into()))?;
            let level = labels.entry(key).or_default();
            let g = BiGenId { n: key.0, m: key.1, idx: level.len() };
            level.push(id.to_string());
            if id_lookup.insert(id.to_string(), g).is_some() {
                return Err(Error::Parse(format!("duplicate id {id}")));
            }
        }
    }
    let empty = Map::new();
    let face_map = v["faces"].as_object().unwrap_or(&empty);
    let mut faces1: BTreeMap<(usize, usize), Vec<Vec<BiSimplex>>> = BTreeMap::new();
    let mut faces2: BTreeMap<(usize, usize), Vec<Vec<BiSimplex>>> = BTreeMap::new();
    for (&key, labs) in &labels {
        if key.0 > 0 {
            faces1.insert(key, vec![Vec::new(); labs.len()]);
        }
        if key.1 > 0 {
            faces2.insert(key, vec![Vec::new(); labs.len()]);
        }
    }
    for (owner, entries) in face_map {
        let g = *id_lookup
            .get(owner)
            .ok_or_else(|| Error::Parse(format!("unknown owner {owner}")))?;
        let mut ax1: Vec<Option<BiSimplex>> = vec![None; if g.n > 0 { g.n + 1 } else { 0 }];
        let mut ax2: Vec<Option<BiSimplex>> = vec![None; if g.m > 0 { g.m + 1 } else { 0 }];
        for e in entries.as_array().ok_or_else(|| Error::Parse("face list".into()))? {
            let axis = e["axis"].as_u64().ok_or_else(|| Error::Parse("axis".into()))?;
            let k = e["index"].as_u64().ok_or_else(|| Error::Parse("face index".into()))? as usize;
            let target_id =
                e["generator"].as_str().ok_or_else(|| Error::Parse("face generator".into()))?;
            let tgt = *id_lookup
                .get(target_id)
                .ok_or_else(|| Error::Parse(format!("unknown generator {target_id}")))?;
            let cell = BiSimplex {
                gen: tgt,
                e1: OrdinalMap::new(as_usize_vec(&e["surjection"])?, tgt.n)?,
                e2: OrdinalMap::new(as_usize_vec(&e["surjection2"])?, tgt.m)?,
            };
            let slot = match axis {
                0 => ax1.get_mut(k),
                1 => ax2.get_mut(k),
                _ => return Err(Error::Parse("axis must be 0 or 1".into())),
            };
            match slot {
                Some(s @ None) => *s = Some(cell),
                _ => return Err(Error::Parse(format!("bad face slot {axis}:{k} on {owner}"))),
            }
        }
        if g.n > 0 {
            faces1.get_mut(&(g.n, g.m)).unwrap()[g.idx] = ax1
                .into_iter()
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| Error::Parse(format!("missing axis-1 face on {owner}")))?;
        }
        if g.m > 0 {
            faces2.get_mut(&(g.n, g.m)).unwrap()[g.idx] = ax2
                .into_iter()
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| Error::Parse(format!("missing axis-2 face on {owner}")))?;
        }
    }
    FinBiSet::build(labels, faces1, faces2)
}

pub fn fincat_to_value(c: &FinCat) -> Value {
    json!({
        "kind": "fincat",
        "objects": c.objects,
        "arrows": c.arrows.iter().map(|a| json!({"name": a.name, "src": a.src, "tgt": a.tgt})).collect::<Vec<_>>(),
        "compose": c.compose.iter().map(|(&(f, g), &h)| json!([f, g, h])).collect::<Vec<_>>(),
        "identity": c.identity,
    })
}

pub fn fincat_from_value(v: &Value) -> Result<FinCat> {
    if v["kind"] != "fincat" {
        return Err(Error::Parse("expected kind fincat".into()));
    }
    let objects = v["objects"]
        .as_array()
        .ok_or_else(|| Error::Parse("objects".into()))?
        .iter()
        .map(|o| o.as_str().map(String::from).ok_or_else(|| Error::Parse("object name".into())))
        .collect::<Result<Vec<_>>>()?;
    let arrows = v["arrows"]
        .as_array()
        .ok_or_else(|| Error::Parse("arrows".into()))?
        .iter()
        .map(|a| {
            Ok(Arrow {
                name: a["name"].as_str().ok_or_else(|| Error::Parse("arrow name".into()))?.into(),
                src: a["src"].as_u64().ok_or_else(|| Error::Parse("arrow src".into()))? as usize,
                tgt: a["tgt"].as_u64().ok_or_else(|| Error::Parse("arrow tgt".into()))? as usize,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut compose = BTreeMap::new();
    for t in v["compose"].as_array().ok_or_else(|| Error::Parse("compose".into()))? {
        let t = as_usize_vec(t)?;
        if t.len() != 3 {
            return Err(Error::Parse("compose entries are triples".into()));
        }
        compose.insert((t[0], t[1]), t[2]);
    }
    let identity = as_usize_vec(&v["identity"])?;
    let c = FinCat { objects, arrows, compose, identity };
    c.validate()?;
    Ok(c)
}

pub fn functor_to_value(f: &SetFunctor) -> Value {
    json!({ "kind": "functor", "maps": f.maps, "sets": f.sets })
}

pub fn functor_from_value(v: &Value) -> Result<SetFunctor> {
    if v["kind"] != "functor" {
        return Err(Error::Parse("expected kind functor".into()));
    }
    let sets = v["sets"]
        .as_array()
        .ok_or_else(|| Error::Parse("sets".into()))?
        .iter()
        .map(|s| {
            s.as_array()
                .ok_or_else(|| Error::Parse("set".into()))?
                .iter()
                .map(|e| e.as_str().map(String::from).ok_or_else(|| Error::Parse("element".into())))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let maps = v["maps"]
        .as_array()
        .ok_or_else(|| Error::Parse("maps".into()))?
        .iter()
        .map(as_usize_vec)
        .collect::<Result<Vec<_>>>()?;
    Ok(SetFunctor { sets, maps })
}

fn simplex_to_value(s: &Simplex) -> Value {
    json!({ "generator": sid(s.gen.dim, s.gen.idx), "surjection": s.epi.values() })
}

fn bisimplex_to_value(s: &BiSimplex) -> Value {
    json!({
        "generator": bid(s.gen.n, s.gen.m, s.gen.idx),
        "surjection": s.e1.values(),
        "surjection2": s.e2.values(),
    })
}

pub fn smap_to_value(f: &SSetMap) -> Value {
    let mut assignment = Map::new();
    for d in 0..f.source().gen_counts().len() {
        for g in f.source().gens(d) {
            assignment.insert(sid(d, g.idx), simplex_to_value(f.gen_image(g)));
        }
    }
    json!({
        "kind": "map",
        "assignment": assignment,
        "flavor": "sset",
        "source": sset_to_value(f.source()),
        "target": sset_to_value(f.target()),
    })
}

pub fn smap_from_value(v: &Value) -> Result<SSetMap> {
    if v["kind"] != "map" || v["flavor"] != "sset" {
        return Err(Error::Parse("expected a simplicial map".into()));
    }
    let source = Arc::new(sset_from_value(&v["source"])?);
    let target = Arc::new(sset_from_value(&v["target"])?);
    let obj = v["assignment"].as_object().ok_or_else(|| Error::Parse("assignment".into()))?;
    let mut assign: Vec<Vec<Simplex>> = source
        .gen_counts()
        .iter()
        .map(|&c| vec![Simplex::of(GenId { dim: 0, idx: 0 }); c])
        .collect();
    let mut seen = 0usize;
    for (id, val) in obj {
        let (deg, idx) = parse_id(id)?;
        let (tdeg, tidx) = parse_id(val["generator"].as_str().ok_or_else(|| Error::Parse("target".into()))?)?;
        let epi = OrdinalMap::new(as_usize_vec(&val["surjection"])?, tdeg[0])?;
        assign[deg[0]][idx] = Simplex { gen: GenId { dim: tdeg[0], idx: tidx }, epi };
        seen += 1;
    }
    if seen != source.gen_count() {
        return Err(Error::Parse("assignment does not cover the source".into()));
    }
    SSetMap::new(source, target, assign)
}

pub fn bimap_to_value(f: &BiMap) -> Value {
    let mut assignment = Map::new();
    for g in f.source().all_gens() {
        assignment.insert(bid(g.n, g.m, g.idx), bisimplex_to_value(f.gen_image(g)));
    }
    json!({
        "kind": "map",
        "assignment": assignment,
        "flavor": "bisset",
        "source": bisset_to_value(f.source()),
        "target": bisset_to_value(f.target()),
    })
}

pub fn bimap_from_value(v: &Value) -> Result<BiMap> {
    if v["kind"] != "map" || v["flavor"] != "bisset" {
        return Err(Error::Parse("expected a bisimplicial map".into()));
    }
    let source = Arc::new(bisset_from_value(&v["source"])?);
    let target = Arc::new(bisset_from_value(&v["target"])?);
    let obj = v["assignment"].as_object().ok_or_else(|| Error::Parse("assignment".into()))?;
    let mut assign: BTreeMap<(usize, usize), Vec<BiSimplex>> = source
        .labels()
        .iter()
        .map(|(&k, labs)| {
            (k, vec![BiSimplex::of(BiGenId { n: 0, m: 0, idx: 0 }); labs.len()])
        })
        .collect();
    let mut seen = 0usize;
    for (id, val) in obj {
        let (deg, idx) = parse_id(id)?;
        let (tdeg, tidx) = parse_id(val["generator"].as_str().ok_or_else(|| Error::Parse("target".into()))?)?;
        let cell = BiSimplex {
            gen: BiGenId { n: tdeg[0], m: tdeg[1], idx: tidx },
            e1: OrdinalMap::new(as_usize_vec(&val["surjection"])?, tdeg[0])?,
            e2: OrdinalMap::new(as_usize_vec(&val["surjection2"])?, tdeg[1])?,
        };
        assign
            .get_mut(&(deg[0], deg[1]))
            .ok_or_else(|| Error::Parse(format!("unknown level for {id}")))?[idx] = cell;
        seen += 1;
    }
    if seen != source.gen_count() {
        return Err(Error::Parse("assignment does not cover the source".into()));
    }
    BiMap::new(source, target, assign)
}

pub fn chain_to_value(chain: &ChainOverB) -> Value {
    json!({
        "kind": "chain",
        "base": bisset_to_value(&chain.base),
        "maps": chain.maps.iter().map(bimap_assignment_value).collect::<Vec<_>>(),
        "objects": chain.objects.iter().map(|o| bisset_to_value(o)).collect::<Vec<_>>(),
        "to_base": chain.to_base.iter().map(bimap_assignment_value).collect::<Vec<_>>(),
    })
}

fn bimap_assignment_value(f: &BiMap) -> Value {
    let mut assignment = Map::new();
    for g in f.source().all_gens() {
        assignment.insert(bid(g.n, g.m, g.idx), bisimplex_to_value(f.gen_image(g)));
    }
    Value::Object(assignment)
}

fn bimap_from_assignment(
    v: &Value,
    source: Arc<FinBiSet>,
    target: Arc<FinBiSet>,
) -> Result<BiMap> {
    let obj = v.as_object().ok_or_else(|| Error::Parse("assignment".into()))?;
    let mut assign: BTreeMap<(usize, usize), Vec<BiSimplex>> = source
        .labels()
        .iter()
        .map(|(&k, labs)| {
            (k, vec![BiSimplex::of(BiGenId { n: 0, m: 0, idx: 0 }); labs.len()])
        })
        .collect();
    let mut seen = 0usize;
    for (id, val) in obj {
        let (deg, idx) = parse_id(id)?;
        let (tdeg, tidx) = parse_id(val["generator"].as_str().ok_or_else(|| Error::Parse("target".into()))?)?;
        let cell = BiSimplex {
            gen: BiGenId { n: tdeg[0], m: tdeg[1], idx: tidx },
            e1: OrdinalMap::new(as_usize_vec(&val["surjection"])?, tdeg[0])?,
            e2: OrdinalMap::new(as_usize_vec(&val["surjection2"])?, tdeg[1])?,
        };
        assign
            .get_mut(&(deg[0], deg[1]))
            .ok_or_else(|| Error::Parse(format!("unknown level for {id}")))?[idx] = cell;
        seen += 1;
    }
    if seen != source.gen_count() {
        return Err(Error::Parse("assignment does not cover the source".into()));
    }
    BiMap::new(source, target, assign)
}

pub fn chain_from_value(v: &Value) -> Result<ChainOverB> {
    if v["kind"] != "chain" {
        return Err(Error::Parse("expected kind chain".into()));
    }
    let base = Arc::new(bisset_from_value(&v["base"])?);
    let objects = v["objects"]
        .as_array()
        .ok_or_else(|| Error::Parse("objects".into()))?
        .iter()
        .map(|o| Ok(Arc::new(bisset_from_value(o)?)))
        .collect::<Result<Vec<_>>>()?;
    let to_base_vals = v["to_base"].as_array().ok_or_else(|| Error::Parse("to_base".into()))?;
    let map_vals = v["maps"].as_array().ok_or_else(|| Error::Parse("maps".into()))?;
    if to_base_vals.len() != objects.len() || map_vals.len() + 1 != objects.len() {
        return Err(Error::Parse("chain shape mismatch".into()));
    }
    let to_base = to_base_vals
        .iter()
        .zip(&objects)
        .map(|(val, o)| bimap_from_assignment(val, o.clone(), base.clone()))
        .collect::<Result<Vec<_>>>()?;
    let maps = map_vals
        .iter()
        .enumerate()
        .map(|(j, val)| bimap_from_assignment(val, objects[j].clone(), objects[j + 1].clone()))
        .collect::<Result<Vec<_>>>()?;
    ChainOverB::new(base, objects, to_base, maps)
}

/// Canonical text form: pretty JSON with a trailing newline.
pub fn to_canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json serialization");
    s.push('\n');
    s
}

pub fn parse(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

/// The kind tag of a document.
pub fn kind_of(v: &Value) -> Result<&str> {
    v["kind"].as_str().ok_or_else(|| Error::Parse("missing kind".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bisset::{box_, disc};
    use crate::fincat::{cyclic_group, path_category, SetFunctor};
    use crate::sset::{boundary, standard};

    #[test]
    fn sset_roundtrip() {
        for x in [standard(2), boundary(3).unwrap()] {
            let v = sset_to_value(&x);
            let y = sset_from_value(&v).unwrap();
            assert_eq!(x, y);
            // canonical: save(load(file)) is byte-identical
            let text = to_canonical_string(&v);
            let v2 = parse(&text).unwrap();
            assert_eq!(to_canonical_string(&sset_to_value(&sset_from_value(&v2).unwrap())), text);
        }
    }

    #[test]
    fn bisset_roundtrip() {
        for x in [box_(1, 1), disc(&standard(2))] {
            let v = bisset_to_value(&x);
            let y = bisset_from_value(&v).unwrap();
            assert_eq!(x, y);
            let text = to_canonical_string(&v);
            assert_eq!(
                to_canonical_string(&bisset_to_value(&bisset_from_value(&parse(&text).unwrap()).unwrap())),
                text
            );
        }
    }

    #[test]
    fn fincat_and_functor_roundtrip() {
        for c in [path_category(2), cyclic_group(3)] {
            let v = fincat_to_value(&c);
            assert_eq!(fincat_from_value(&v).unwrap(), c);
            let f = SetFunctor::representable(&c, 0);
            let fv = functor_to_value(&f);
            let f2 = functor_from_value(&fv).unwrap();
            assert_eq!(f, f2);
            f2.validate(&c).unwrap();
        }
    }

    #[test]
    fn map_roundtrip() {
        let x = Arc::new(standard(1));
        let f = SSetMap::terminal(x);
        let v = smap_to_value(&f);
        let g = smap_from_value(&v).unwrap();
        assert_eq!(f.assignments(), g.assignments());

        let b = Arc::new(box_(1, 0));
        let bf = BiMap::terminal(b);
        let bv = bimap_to_value(&bf);
        let bg = bimap_from_value(&bv).unwrap();
        assert_eq!(bf.assignments(), bg.assignments());
    }

    #[test]
    fn chain_roundtrip() {
        let k = Arc::new(disc(&standard(1)));
        let pt = Arc::new(box_(0, 0));
        let chain = ChainOverB::new(
            pt.clone(),
            vec![k.clone(), k.clone()],
            vec![BiMap::terminal(k.clone()), BiMap::terminal(k.clone())],
            vec![BiMap::identity(k.clone())],
        )
        .unwrap();
        let v = chain_to_value(&chain);
        let c2 = chain_from_value(&v).unwrap();
        assert_eq!(c2.objects.len(), 2);
        assert_eq!(to_canonical_string(&chain_to_value(&c2)), to_canonical_string(&v));
    }

    #[test]
    fn malformed_documents_are_rejected() {
        assert!(sset_from_value(&serde_json::json!({"kind": "bisset"})).is_err());
        assert!(parse("{ not json").is_err());
        // a face referencing a missing generator
        let bad = serde_json::json!({
            "kind": "sset",
            "generators": [{"degree": [0], "ids": ["g0_0000"]}, {"degree": [1], "ids": ["g1_0000"]}],
            "faces": {"g1_0000": [
                {"axis": 0, "index": 0, "surjection": [0], "generator": "nope"},
                {"axis": 0, "index": 1, "surjection": [0], "generator": "g0_0000"}
            ]}
        });
        assert!(sset_from_value(&bad).is_err());
    }
}
