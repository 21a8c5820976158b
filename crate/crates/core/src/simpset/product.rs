//! Binary products, with non-degenerate pairs extracted by joint-word
//! analysis: a pair is degenerate exactly when the components' canonical
//! words share a letter.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::simpset::map::SimplicialMap;
use crate::simpset::sset::{Operator, SimplexId, SimplexRef, SimplicialSet, SsetBuilder};
use crate::simpset::word::normalize_word;

fn pair_name(x: &SimplicialSet, y: &SimplicialSet, rx: &SimplexRef, ry: &SimplexRef) -> String {
    format!("({},{})", x.ref_name(rx), y.ref_name(ry))
}

fn shares_letter(a: &SimplexRef, b: &SimplexRef) -> Option<usize> {
    // Words are strictly decreasing; take the largest shared letter.
    for &i in a.word.letters() {
        if b.word.letters().contains(&i) {
            return Some(i);
        }
    }
    None
}

/// `X × Y` truncated at `dim_cap ≤ min(caps)`.
pub fn product(x: &SimplicialSet, y: &SimplicialSet, dim_cap: usize) -> Result<SimplicialSet> {
    if dim_cap > x.dim_cap() || dim_cap > y.dim_cap() {
        return Err(Error::Truncation(format!(
            "product cap {dim_cap} exceeds an operand cap ({}, {})",
            x.dim_cap(),
            y.dim_cap()
        )));
    }
    let mut b = SsetBuilder::new(format!("({}x{})", x.name(), y.name()), dim_cap);
    let mut bases: Vec<(usize, SimplexRef, SimplexRef, SimplexId)> = Vec::new();
    for n in 0..=dim_cap {
        for rx in x.simplices_at(n)? {
            for ry in y.simplices_at(n)? {
                if shares_letter(&rx, &ry).is_none() {
                    let id = b.add_simplex(pair_name(x, y, &rx, &ry), n)?;
                    bases.push((n, rx.clone(), ry.clone(), id));
                }
            }
        }
    }
    let product_skeleton = b;
    // Faces need lookups into the finished name table; build in two passes
    // over a scratch finished set would re-validate, so compute face names
    // against the builder's own lookup.
    let mut face_jobs: Vec<(SimplexId, Vec<(SimplexRef, SimplexRef)>)> = Vec::new();
    for (n, rx, ry, id) in &bases {
        if *n >= 1 {
            let mut faces = Vec::with_capacity(n + 1);
            for k in 0..=*n {
                faces.push((
                    x.apply(rx, Operator::Face(k))?,
                    y.apply(ry, Operator::Face(k))?,
                ));
            }
            face_jobs.push((*id, faces));
        }
    }
    let mut b = product_skeleton;
    // Resolve face pairs to normal forms; requires only name lookup, which
    // the builder provides.
    let mut resolved: Vec<(SimplexId, Vec<SimplexRef>)> = Vec::new();
    for (id, faces) in face_jobs {
        let mut out = Vec::with_capacity(faces.len());
        for (fx, fy) in faces {
            let mut letters: Vec<usize> = Vec::new();
            let mut cx = fx;
            let mut cy = fy;
            while let Some(i) = shares_letter(&cx, &cy) {
                letters.push(i);
                cx = x.apply(&cx, Operator::Face(i + 1))?;
                cy = y.apply(&cy, Operator::Face(i + 1))?;
            }
            let base = b
                .lookup(&pair_name(x, y, &cx, &cy))
                .ok_or_else(|| Error::ConstructionBug("missing product base".to_string()))?;
            let base_dim = x.ref_dim(&cx);
            out.push(SimplexRef {
                base,
                word: normalize_word(&letters, base_dim)?,
            });
        }
        resolved.push((id, out));
    }
    for (id, faces) in resolved {
        b.set_faces(id, faces);
    }
    let mut out = b.finish()?;
    out.truncated = x.truncated || y.truncated || dim_cap < x.dim_cap().min(y.dim_cap());
    Ok(out)
}

/// Projections of a product onto its factors.
pub fn projections(
    x: &SimplicialSet,
    y: &SimplicialSet,
    p: &SimplicialSet,
) -> Result<(SimplicialMap, SimplicialMap)> {
    let mut ax = BTreeMap::new();
    let mut ay = BTreeMap::new();
    for id in p.all_nondeg() {
        let name = p.simplex_name(id);
        let inner = &name[1..name.len() - 1];
        let (xn, yn) = split_pair(inner).ok_or_else(|| {
            Error::ConstructionBug(format!("unparsable pair name {name}"))
        })?;
        ax.insert(id, parse_ref(x, xn)?);
        ay.insert(id, parse_ref(y, yn)?);
    }
    Ok((
        SimplicialMap::new(p.clone(), x.clone(), ax)?,
        SimplicialMap::new(p.clone(), y.clone(), ay)?,
    ))
}

/// Splits `a,b` at the comma not enclosed in parentheses.
fn split_pair(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0usize;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => return Some((&s[..i], &s[i + 1..])),
            _ => {}
        }
    }
    None
}

/// Parses `base.s3s1s0` back into a ref of `x`.
fn parse_ref(x: &SimplicialSet, s: &str) -> Result<SimplexRef> {
    let (base_name, word) = match s.rfind('.') {
        Some(dot) if s[dot + 1..].starts_with('s') => {
            let mut letters = Vec::new();
            for part in s[dot + 1..].split('s').filter(|p| !p.is_empty()) {
                letters.push(part.parse::<usize>().map_err(|_| {
                    Error::Parameter(format!("bad word suffix in {s}"))
                })?);
            }
            (&s[..dot], letters)
        }
        _ => (s, Vec::new()),
    };
    let base = x
        .lookup(base_name)
        .ok_or_else(|| Error::Parameter(format!("unknown simplex {base_name}")))?;
    Ok(SimplexRef {
        base,
        word: normalize_word(&word, x.simplex_dim(base))?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simpset::standard::{make_standard, StandardKind};

    #[test]
    fn square_counts() {
        let d1 = make_standard(StandardKind::Delta, 1).unwrap();
        let p = product(&d1, &d1, 1).unwrap();
        assert_eq!(p.nondeg_counts(), vec![4, 5]);
        let d1c = d1.with_cap(2).unwrap();
        let p = product(&d1c, &d1c, 2).unwrap();
        assert_eq!(p.nondeg_counts(), vec![4, 5, 2]);
    }

    #[test]
    fn level_counts_multiply() {
        let d1 = make_standard(StandardKind::Delta, 1).unwrap().with_cap(2).unwrap();
        let d2 = make_standard(StandardKind::Delta, 2).unwrap();
        let p = product(&d1, &d2, 2).unwrap();
        for n in 0..=2 {
            assert_eq!(
                p.level_count(n).unwrap(),
                d1.level_count(n).unwrap() * d2.level_count(n).unwrap()
            );
        }
    }

    #[test]
    fn unit_laws() {
        let d0 = make_standard(StandardKind::Delta, 0).unwrap().with_cap(2).unwrap();
        let d2 = make_standard(StandardKind::Delta, 2).unwrap();
        let p = product(&d0, &d2, 2).unwrap();
        assert_eq!(p.nondeg_counts(), d2.nondeg_counts());
        let q = product(&d2, &d0, 2).unwrap();
        assert_eq!(q.nondeg_counts(), d2.nondeg_counts());
        assert!(
            crate::simpset::map::find_sset_isomorphism(&q, &d2)
                .unwrap()
                .is_some()
        );
    }

    #[test]
    fn projections_are_maps() {
        let d1 = make_standard(StandardKind::Delta, 1).unwrap();
        let p = product(&d1, &d1, 1).unwrap();
        let (px, py) = projections(&d1, &d1, &p).unwrap();
        assert!(px.validate().is_ok());
        assert!(py.validate().is_ok());
    }
}
