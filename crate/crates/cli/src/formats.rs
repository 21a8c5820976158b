//! Line-based text formats. One statement per line, `#` starts a comment.
//! Parse errors carry line numbers; structural invariants are validated on
//! parse by the core builders.

use std::collections::BTreeMap;
use std::path::Path;
use std::rc::Rc;

use sct_core::error::Error;
use sct_core::fincat::{CatBuilder, FinCategory};
use sct_core::presheaf::{FinPresheaf, PresheafMorphism};
use sct_core::simpset::{DegeneracyWord, SimplexRef, SimplicialSet, SsetBuilder};

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(p) => &line[..p],
        None => line,
    }
}

fn err(line_no: usize, msg: impl Into<String>) -> Error {
    Error::Parameter(format!("line {}: {}", line_no + 1, msg.into()))
}

/// Grammar:
///   sset <name>
///   dimcap <d>
///   simplex <id> dim=<n>
///   face <id>.<k> = <target-id> deg=[j1,j2,...]
pub fn parse_sset(text: &str) -> Result<SimplicialSet, Error> {
    let mut name: Option<String> = None;
    let mut dimcap: Option<usize> = None;
    let mut simplices: Vec<(usize, String, usize)> = Vec::new();
    let mut faces: Vec<(usize, String, usize, String, Vec<usize>)> = Vec::new();

    for (no, raw) in text.lines().enumerate() {
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens[0] {
            "sset" => {
                if tokens.len() != 2 {
                    return Err(err(no, "expected: sset <name>"));
                }
                name = Some(tokens[1].to_string());
            }
            "dimcap" => {
                let d = tokens
                    .get(1)
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| err(no, "expected: dimcap <d>"))?;
                dimcap = Some(d);
            }
            "simplex" => {
                if tokens.len() != 3 || !tokens[2].starts_with("dim=") {
                    return Err(err(no, "expected: simplex <id> dim=<n>"));
                }
                let dim = tokens[2][4..]
                    .parse()
                    .map_err(|_| err(no, "bad dimension"))?;
                simplices.push((no, tokens[1].to_string(), dim));
            }
            "face" => {
                // face <id>.<k> = <target> deg=[...]
                if tokens.len() != 5 || tokens[2] != "=" || !tokens[4].starts_with("deg=[") {
                    return Err(err(no, "expected: face <id>.<k> = <target> deg=[...]"));
                }
                let dot = tokens[1]
                    .rfind('.')
                    .ok_or_else(|| err(no, "face selector needs <id>.<k>"))?;
                let id = tokens[1][..dot].to_string();
                let k: usize = tokens[1][dot + 1..]
                    .parse()
                    .map_err(|_| err(no, "bad face index"))?;
                let inner = tokens[4]
                    .strip_prefix("deg=[")
                    .and_then(|s| s.strip_suffix(']'))
                    .ok_or_else(|| err(no, "bad deg list"))?;
                let mut word = Vec::new();
                if !inner.is_empty() {
                    for part in inner.split(',') {
                        word.push(part.trim().parse().map_err(|_| err(no, "bad deg letter"))?);
                    }
                }
                faces.push((no, id, k, tokens[3].to_string(), word));
            }
            other => return Err(err(no, format!("unknown statement {other}"))),
        }
    }

    let name = name.ok_or_else(|| Error::Parameter("missing sset header".to_string()))?;
    let dimcap = dimcap.ok_or_else(|| Error::Parameter("missing dimcap".to_string()))?;
    let mut b = SsetBuilder::new(name, dimcap);
    for (no, id, dim) in &simplices {
        b.add_simplex(id.clone(), *dim).map_err(|e| err(*no, e.to_string()))?;
    }
    // Collect faces per simplex, indexed by k.
    let mut per: BTreeMap<String, BTreeMap<usize, (usize, String, Vec<usize>)>> = BTreeMap::new();
    for (no, id, k, target, word) in faces {
        if per.entry(id.clone()).or_default().insert(k, (no, target, word)).is_some() {
            return Err(err(no, format!("duplicate face {id}.{k}")));
        }
    }
    let dim_of: BTreeMap<&String, usize> =
        simplices.iter().map(|(_, id, d)| (id, *d)).collect();
    for (_, id, dim) in &simplices {
        if *dim == 0 {
            continue;
        }
        let listed = per.remove(id).unwrap_or_default();
        let mut out = Vec::with_capacity(dim + 1);
        for k in 0..=*dim {
            let (no, target, word) = listed
                .get(&k)
                .ok_or_else(|| Error::Parameter(format!("simplex {id} misses face {k}")))?;
            let tid = b
                .lookup(target)
                .ok_or_else(|| err(*no, format!("unknown face target {target}")))?;
            let w = DegeneracyWord::new(word.clone()).map_err(|e| err(*no, e.to_string()))?;
            let tdim = dim_of[target] + w.len();
            if tdim + 1 != *dim {
                return Err(Error::Dimension(format!(
                    "line {}: face {id}.{k} has dimension {tdim}, expected {}",
                    no + 1,
                    dim - 1
                )));
            }
            out.push(SimplexRef { base: tid, word: w });
        }
        let sid = b.lookup(id).unwrap();
        b.set_faces(sid, out);
    }
    if let Some(extra) = per.keys().next() {
        return Err(Error::Parameter(format!(
            "face lines for unknown or 0-dimensional simplex {extra}"
        )));
    }
    b.finish()
}

pub fn serialize_sset(x: &SimplicialSet) -> String {
    let mut out = String::new();
    out.push_str(&format!("sset {}\n", x.name()));
    out.push_str(&format!("dimcap {}\n", x.dim_cap()));
    for d in 0..=x.dim_cap() {
        for &id in x.nondeg_at(d) {
            out.push_str(&format!("simplex {} dim={}\n", x.simplex_name(id), d));
        }
    }
    for d in 1..=x.dim_cap() {
        for &id in x.nondeg_at(d) {
            for (k, f) in x.faces_of(id).iter().enumerate() {
                let letters: Vec<String> =
                    f.word.letters().iter().map(|j| j.to_string()).collect();
                out.push_str(&format!(
                    "face {}.{} = {} deg=[{}]\n",
                    x.simplex_name(id),
                    k,
                    x.simplex_name(f.base),
                    letters.join(",")
                ));
            }
        }
    }
    out
}

/// Grammar:
///   fcat <name>
///   obj <id>
///   mor <id> : <src> -> <dst>
///   comp <g> o <f> = <h>
/// Identities are implicit with reserved names `id:<obj>`; unit-law cells
/// need no comp lines.
pub fn parse_fcat(text: &str) -> Result<FinCategory, Error> {
    let mut name: Option<String> = None;
    let mut b: Option<CatBuilder> = None;
    let mut comps: Vec<(usize, String, String, String)> = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens[0] {
            "fcat" => {
                if tokens.len() != 2 {
                    return Err(err(no, "expected: fcat <name>"));
                }
                name = Some(tokens[1].to_string());
                b = Some(CatBuilder::new(tokens[1]));
            }
            "obj" => {
                let b = b.as_mut().ok_or_else(|| err(no, "obj before fcat header"))?;
                if tokens.len() != 2 {
                    return Err(err(no, "expected: obj <id>"));
                }
                b.add_object_with_identity(tokens[1])
                    .map_err(|e| err(no, e.to_string()))?;
            }
            "mor" => {
                let b = b.as_mut().ok_or_else(|| err(no, "mor before fcat header"))?;
                if tokens.len() != 6 || tokens[2] != ":" || tokens[4] != "->" {
                    return Err(err(no, "expected: mor <id> : <src> -> <dst>"));
                }
                if tokens[1].starts_with("id:") {
                    return Err(err(no, "identity names are reserved"));
                }
                let src = b
                    .lookup_object(tokens[3])
                    .ok_or_else(|| err(no, format!("unknown object {}", tokens[3])))?;
                let dst = b
                    .lookup_object(tokens[5])
                    .ok_or_else(|| err(no, format!("unknown object {}", tokens[5])))?;
                b.add_morphism(tokens[1], src, dst)
                    .map_err(|e| err(no, e.to_string()))?;
            }
            "comp" => {
                if tokens.len() != 6 || tokens[2] != "o" || tokens[4] != "=" {
                    return Err(err(no, "expected: comp <g> o <f> = <h>"));
                }
                comps.push((
                    no,
                    tokens[1].to_string(),
                    tokens[3].to_string(),
                    tokens[5].to_string(),
                ));
            }
            other => return Err(err(no, format!("unknown statement {other}"))),
        }
    }
    let _ = name.ok_or_else(|| Error::Parameter("missing fcat header".to_string()))?;
    let mut b = b.unwrap();
    for (no, g, f, h) in comps {
        let g = b
            .lookup_morphism(&g)
            .ok_or_else(|| err(no, format!("unknown morphism {g}")))?;
        let f = b
            .lookup_morphism(&f)
            .ok_or_else(|| err(no, format!("unknown morphism {f}")))?;
        let h = b
            .lookup_morphism(&h)
            .ok_or_else(|| err(no, format!("unknown morphism {h}")))?;
        b.set_composite(g, f, h);
    }
    // Totality errors name the missing pair; validation is the caller's
    // concern beyond that.
    b.finish()
}

pub fn serialize_fcat(c: &FinCategory) -> String {
    // Identities serialize under their reserved names whatever they are
    // called in memory, so every emitted file parses back.
    let name_of = |m: sct_core::fincat::MorId| -> String {
        if c.is_identity(m) {
            format!("id:{}", c.object_name(c.morphism(m).src))
        } else {
            c.morphism(m).name.clone()
        }
    };
    let mut out = String::new();
    out.push_str(&format!("fcat {}\n", c.name));
    for o in c.objects() {
        out.push_str(&format!("obj {}\n", c.object_name(o)));
    }
    for m in c.morphisms() {
        if c.is_identity(m) {
            continue;
        }
        let d = c.morphism(m);
        out.push_str(&format!(
            "mor {} : {} -> {}\n",
            d.name,
            c.object_name(d.src),
            c.object_name(d.dst)
        ));
    }
    for g in c.morphisms() {
        for f in c.morphisms() {
            if c.morphism(f).dst != c.morphism(g).src {
                continue;
            }
            // Unit-law cells are implicit.
            if c.is_identity(g) || c.is_identity(f) {
                continue;
            }
            let h = c.compose(g, f).expect("total");
            let note = c
                .cell_notes
                .get(&(g, f))
                .map(|n| format!("  # {n}"))
                .unwrap_or_default();
            out.push_str(&format!(
                "comp {} o {} = {}{}\n",
                name_of(g),
                name_of(f),
                name_of(h),
                note
            ));
        }
    }
    out
}

/// Grammar:
///   fps <name> over <fcat-file>
///   set <obj> = {e1,e2,...}
///   act <mor> : e -> e'
/// The fcat file is resolved relative to `dir`.
pub fn parse_fps(text: &str, dir: &Path) -> Result<(FinPresheaf, Rc<FinCategory>), Error> {
    let mut name: Option<String> = None;
    let mut base: Option<Rc<FinCategory>> = None;
    let mut sets: Vec<(usize, String, Vec<String>)> = Vec::new();
    let mut acts: Vec<(usize, String, String, String)> = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens[0] {
            "fps" => {
                if tokens.len() != 4 || tokens[2] != "over" {
                    return Err(err(no, "expected: fps <name> over <fcat-file>"));
                }
                name = Some(tokens[1].to_string());
                let path = dir.join(tokens[3]);
                let text = std::fs::read_to_string(&path).map_err(|e| {
                    err(no, format!("cannot read {}: {e}", path.display()))
                })?;
                base = Some(Rc::new(parse_fcat(&text)?));
            }
            "set" => {
                if tokens.len() < 4 || tokens[2] != "=" {
                    return Err(err(no, "expected: set <obj> = {e1,e2,...}"));
                }
                let braces = line.split_once('=').unwrap().1.trim();
                let inner = braces
                    .strip_prefix('{')
                    .and_then(|s| s.strip_suffix('}'))
                    .ok_or_else(|| err(no, "expected braces"))?;
                let elems: Vec<String> = inner
                    .split(',')
                    .map(|s| s.trim().to_string())
                    .filter(|s| !s.is_empty())
                    .collect();
                sets.push((no, tokens[1].to_string(), elems));
            }
            "act" => {
                if tokens.len() != 6 || tokens[2] != ":" || tokens[4] != "->" {
                    return Err(err(no, "expected: act <mor> : <e> -> <e'>"));
                }
                acts.push((
                    no,
                    tokens[1].to_string(),
                    tokens[3].to_string(),
                    tokens[5].to_string(),
                ));
            }
            other => return Err(err(no, format!("unknown statement {other}"))),
        }
    }
    let name = name.ok_or_else(|| Error::Parameter("missing fps header".to_string()))?;
    let base = base.unwrap();
    let mut values: Vec<Vec<String>> = vec![Vec::new(); base.object_count()];
    for (no, obj, elems) in sets {
        let o = base
            .lookup_object(&obj)
            .ok_or_else(|| err(no, format!("unknown object {obj}")))?;
        values[o.0 as usize] = elems;
    }
    let mut actions: Vec<BTreeMap<String, String>> =
        vec![BTreeMap::new(); base.morphism_count()];
    for (no, mor, e, e2) in acts {
        let m = base
            .lookup_morphism(&mor)
            .ok_or_else(|| err(no, format!("unknown morphism {mor}")))?;
        actions[m.0 as usize].insert(e, e2);
    }
    // Identity actions are implicit.
    for o in base.objects() {
        let idm = base.identity(o);
        if actions[idm.0 as usize].is_empty() {
            actions[idm.0 as usize] = values[o.0 as usize]
                .iter()
                .map(|e| (e.clone(), e.clone()))
                .collect();
        }
    }
    let p = FinPresheaf::new(name, base.clone(), values, actions)?;
    Ok((p, base))
}

pub fn serialize_fps(p: &FinPresheaf, fcat_file: &str) -> String {
    let mut out = String::new();
    out.push_str(&format!("fps {} over {}\n", p.name, fcat_file));
    for o in p.base.objects() {
        out.push_str(&format!(
            "set {} = {{{}}}\n",
            p.base.object_name(o),
            p.value(o).join(",")
        ));
    }
    for m in p.base.morphisms() {
        if p.base.is_identity(m) {
            continue;
        }
        for (e, v) in p.action(m) {
            out.push_str(&format!("act {} : {} -> {}\n", p.base.morphism(m).name, e, v));
        }
    }
    out
}

/// Morphism file:
///   fpm <name> from <src.fps> to <dst.fps>
///   at <obj> : <e> -> <e'>
pub fn parse_fpm(
    text: &str,
    dir: &Path,
) -> Result<(PresheafMorphism, FinPresheaf, FinPresheaf), Error> {
    let mut header: Option<(String, String)> = None;
    let mut ats: Vec<(usize, String, String, String)> = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens[0] {
            "fpm" => {
                if tokens.len() != 6 || tokens[2] != "from" || tokens[4] != "to" {
                    return Err(err(no, "expected: fpm <name> from <src.fps> to <dst.fps>"));
                }
                header = Some((tokens[3].to_string(), tokens[5].to_string()));
            }
            "at" => {
                if tokens.len() != 6 || tokens[2] != ":" || tokens[4] != "->" {
                    return Err(err(no, "expected: at <obj> : <e> -> <e'>"));
                }
                ats.push((
                    no,
                    tokens[1].to_string(),
                    tokens[3].to_string(),
                    tokens[5].to_string(),
                ));
            }
            other => return Err(err(no, format!("unknown statement {other}"))),
        }
    }
    let (src_file, dst_file) =
        header.ok_or_else(|| Error::Parameter("missing fpm header".to_string()))?;
    let src_text = std::fs::read_to_string(dir.join(&src_file))
        .map_err(|e| Error::Parameter(format!("cannot read {src_file}: {e}")))?;
    let dst_text = std::fs::read_to_string(dir.join(&dst_file))
        .map_err(|e| Error::Parameter(format!("cannot read {dst_file}: {e}")))?;
    let (src, src_base) = parse_fps(&src_text, dir)?;
    let (dst, _) = parse_fps(&dst_text, dir)?;
    // Rebuild dst over the src base so components line up.
    let dst = FinPresheaf::new(dst.name.clone(), src_base, dst.values.clone(), dst.actions.clone())?;
    let mut components: Vec<BTreeMap<String, String>> =
        vec![BTreeMap::new(); src.base.object_count()];
    for (no, obj, e, e2) in ats {
        let o = src
            .base
            .lookup_object(&obj)
            .ok_or_else(|| err(no, format!("unknown object {obj}")))?;
        components[o.0 as usize].insert(e, e2);
    }
    let m = PresheafMorphism { components };
    m.validate(&src, &dst)?;
    Ok((m, src, dst))
}

#[cfg(test)]
mod tests {
    use super::*;
    use sct_core::fincat::ret_category;
    use sct_core::simpset::{make_standard, StandardKind};

    #[test]
    fn sset_round_trip() {
        let d1 = make_standard(StandardKind::Delta, 1).unwrap();
        let text = serialize_sset(&d1);
        let back = parse_sset(&text).unwrap();
        assert_eq!(serialize_sset(&back), text);
        assert_eq!(back.nondeg_counts(), d1.nondeg_counts());
    }

    #[test]
    fn sset_dimension_error_carries_line() {
        let bad = "sset x\ndimcap 1\nsimplex a dim=0\nsimplex b dim=0\nsimplex e dim=1\nface e.0 = a deg=[0]\nface e.1 = b deg=[]\n";
        let e = parse_sset(bad).unwrap_err();
        let msg = e.to_string();
        assert!(msg.contains("dimension") || msg.contains("line"), "{msg}");
    }

    #[test]
    fn fcat_round_trip_ret() {
        let c = ret_category();
        let text = serialize_fcat(&c);
        let back = parse_fcat(&text).unwrap();
        assert_eq!(serialize_fcat(&back), text);
        assert!(sct_core::fincat::validate_category(&back).is_valid());
    }

    #[test]
    fn fcat_missing_cell_is_totality_error() {
        let bad = "fcat x\nobj a\nmor f : a -> a\nmor g : a -> a\n";
        let e = parse_fcat(bad).unwrap_err();
        assert!(e.to_string().contains("composite"));
    }
}
