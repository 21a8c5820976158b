//! Level-wise colimits: discrete products, name-based inclusions, and the
//! pushout of a span, with non-degenerate representatives re-extracted from
//! the level-wise set quotient.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::simpset::map::SimplicialMap;
use crate::simpset::sset::{SimplexId, SimplexRef, SimplicialSet, SsetBuilder};
use crate::simpset::word::normalize_word;

/// `labels × K`: one copy of `K` per label, simplices named `<label>*<name>`.
pub fn discrete_product(labels: &[String], k: &SimplicialSet) -> Result<SimplicialSet> {
    let mut b = SsetBuilder::new(format!("disc*{}", k.name()), k.dim_cap());
    let mut ids: HashMap<(usize, SimplexId), SimplexId> = HashMap::new();
    for (ln, label) in labels.iter().enumerate() {
        for id in k.all_nondeg() {
            let new = b.add_simplex(
                format!("{label}*{}", k.simplex_name(id)),
                k.simplex_dim(id),
            )?;
            ids.insert((ln, id), new);
        }
    }
    for (ln, _) in labels.iter().enumerate() {
        for id in k.all_nondeg() {
            if k.simplex_dim(id) >= 1 {
                let faces = k
                    .faces_of(id)
                    .iter()
                    .map(|f| SimplexRef {
                        base: ids[&(ln, f.base)],
                        word: f.word.clone(),
                    })
                    .collect();
                b.set_faces(ids[&(ln, id)], faces);
            }
        }
    }
    b.finish()
}

/// Map out of a discrete product assembled from one map per label.
pub fn map_from_copies(
    labels: &[String],
    k: &SimplicialSet,
    product: &SimplicialSet,
    target: &SimplicialSet,
    per_label: impl Fn(&str) -> Result<SimplicialMap>,
) -> Result<SimplicialMap> {
    let mut assignment = BTreeMap::new();
    for label in labels {
        let m = per_label(label)?;
        for id in k.all_nondeg() {
            let pid = product
                .lookup(&format!("{label}*{}", k.simplex_name(id)))
                .ok_or_else(|| Error::Parameter(format!("missing copy simplex for {label}")))?;
            // Rebase the per-label value into the shared target.
            let v = m.assignment.get(&id).ok_or_else(|| {
                Error::Parameter(format!("per-label map lacks value on {}", k.simplex_name(id)))
            })?;
            let base = target
                .lookup(m.target.simplex_name(v.base))
                .ok_or_else(|| Error::Parameter("per-label target mismatch".to_string()))?;
            assignment.insert(
                pid,
                SimplexRef {
                    base,
                    word: v.word.clone(),
                },
            );
        }
    }
    SimplicialMap::new(product.clone(), target.clone(), assignment)
}

/// Inclusion of `sub` into `sup` matching simplices by name.
pub fn inclusion_by_name(sub: &SimplicialSet, sup: &SimplicialSet) -> Result<SimplicialMap> {
    let assignment = sub
        .all_nondeg()
        .map(|id| {
            let t = sup.lookup(sub.simplex_name(id)).ok_or_else(|| {
                Error::Parameter(format!(
                    "{} has no simplex named {}",
                    sup.name(),
                    sub.simplex_name(id)
                ))
            })?;
            Ok((id, SimplexRef::nondeg(t)))
        })
        .collect::<Result<BTreeMap<_, _>>>()?;
    SimplicialMap::new(sub.clone(), sup.clone(), assignment)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Leg {
    B,
    C,
}

#[derive(Debug, Clone)]
pub struct Pushout {
    pub object: SimplicialSet,
    pub leg_b: SimplicialMap,
    pub leg_c: SimplicialMap,
}

struct LevelClasses {
    /// element -> class representative index
    class_of: HashMap<(Leg, SimplexRef), usize>,
    /// class representative index -> sorted members
    members: BTreeMap<usize, Vec<(Leg, SimplexRef)>>,
}

/// Pushout of `B ←f− A −g→ C`, computed level by level as a set quotient and
/// re-expressed through non-degenerate representatives in normal form.
/// Quotient classes are named after their lexicographically least member
/// under the (origin tag, identifier) ordering, tags `b:` then `c:`.
pub fn pushout(f: &SimplicialMap, g: &SimplicialMap) -> Result<Pushout> {
    if f.source.nondeg_counts() != g.source.nondeg_counts()
        || f.source
            .all_nondeg()
            .any(|id| g.source.lookup(f.source.simplex_name(id)).is_none())
    {
        return Err(Error::Parameter(
            "pushout legs must share their source".to_string(),
        ));
    }
    let cap = f
        .source
        .dim_cap()
        .min(f.target.dim_cap())
        .min(g.target.dim_cap());
    // Re-capping renumbers simplex ids, so keep the presentations untouched
    // when the caps already agree.
    let caps_match = f.source.dim_cap() == cap
        && f.target.dim_cap() == cap
        && g.target.dim_cap() == cap;
    let (a, b, c, fb, gc) = if caps_match {
        (
            f.source.clone(),
            f.target.clone(),
            g.target.clone(),
            f.clone(),
            g.clone(),
        )
    } else {
        let a = f.source.with_cap(cap)?;
        let b = f.target.with_cap(cap)?;
        let c = g.target.with_cap(cap)?;
        let fb = rebase(f, &a, &b)?;
        let gc = rebase(g, &a, &c)?;
        (a, b, c, fb, gc)
    };

    // Union-find per level over tagged simplices.
    let mut levels: Vec<LevelClasses> = Vec::with_capacity(cap + 1);
    for n in 0..=cap {
        let mut elements: Vec<(Leg, SimplexRef)> = Vec::new();
        for r in b.simplices_at(n)? {
            elements.push((Leg::B, r));
        }
        for r in c.simplices_at(n)? {
            elements.push((Leg::C, r));
        }
        let index: HashMap<(Leg, SimplexRef), usize> = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        let mut uf: Vec<usize> = (0..elements.len()).collect();
        fn find(uf: &mut Vec<usize>, x: usize) -> usize {
            if uf[x] != x {
                let r = find(uf, uf[x]);
                uf[x] = r;
            }
            uf[x]
        }
        for ar in a.simplices_at(n)? {
            let vb = (Leg::B, fb.eval(&ar)?);
            let vc = (Leg::C, gc.eval(&ar)?);
            let (ib, ic) = (index[&vb], index[&vc]);
            let (ra, rb) = (find(&mut uf, ib), find(&mut uf, ic));
            if ra != rb {
                uf[ra.max(rb)] = ra.min(rb);
            }
        }
        let mut members: BTreeMap<usize, Vec<(Leg, SimplexRef)>> = BTreeMap::new();
        let mut class_of = HashMap::new();
        for (i, e) in elements.iter().enumerate() {
            let root = find(&mut uf, i);
            members.entry(root).or_default().push(e.clone());
        }
        for (root, mem) in members.iter_mut() {
            mem.sort_by(|x, y| member_key(&b, &c, x).cmp(&member_key(&b, &c, y)));
            for e in mem.iter() {
                class_of.insert(e.clone(), *root);
            }
        }
        levels.push(LevelClasses { class_of, members });
    }

    // Non-degenerate classes become the simplices of P.
    let mut builder = SsetBuilder::new(format!("po({},{})", b.name(), c.name()), cap);
    let mut class_id: Vec<HashMap<usize, SimplexId>> = vec![HashMap::new(); cap + 1];
    for n in 0..=cap {
        for (root, mem) in &levels[n].members {
            if mem.iter().all(|(_, r)| r.is_nondeg()) {
                let name = tagged_name(&b, &c, &mem[0]);
                let id = builder.add_simplex(name, n)?;
                class_id[n].insert(*root, id);
            }
        }
    }

    // Normal form of an arbitrary class, peeling one degeneracy at a time.
    fn normal_form(
        levels: &[LevelClasses],
        class_id: &[HashMap<usize, SimplexId>],
        b: &SimplicialSet,
        c: &SimplicialSet,
        n: usize,
        root: usize,
        memo: &mut HashMap<(usize, usize), SimplexRef>,
    ) -> Result<SimplexRef> {
        if let Some(r) = memo.get(&(n, root)) {
            return Ok(r.clone());
        }
        let mem = &levels[n].members[&root];
        let result = if let Some(&id) = class_id[n].get(&root) {
            SimplexRef::nondeg(id)
        } else {
            // Least degenerate member decides the peel.
            let (leg, r) = mem
                .iter()
                .find(|(_, r)| !r.is_nondeg())
                .expect("degenerate class has a degenerate member");
            let j = r.word.letters()[0];
            let inner = SimplexRef {
                base: r.base,
                word: normalize_word(&r.word.letters()[1..], match leg {
                    Leg::B => b.simplex_dim(r.base),
                    Leg::C => c.simplex_dim(r.base),
                })?,
            };
            let inner_root = levels[n - 1].class_of[&(*leg, inner)];
            let below = normal_form(levels, class_id, b, c, n - 1, inner_root, memo)?;
            let mut letters = vec![j];
            letters.extend_from_slice(below.word.letters());
            // Base dim of the class rep is n-1 minus the word below.
            let base_dim = (n - 1) - below.word.len();
            SimplexRef {
                base: below.base,
                word: normalize_word(&letters, base_dim)?,
            }
        };
        memo.insert((n, root), result.clone());
        Ok(result)
    }

    let mut memo: HashMap<(usize, usize), SimplexRef> = HashMap::new();

    // Faces of each non-degenerate class via its canonical member.
    let mut face_jobs: Vec<(SimplexId, Vec<SimplexRef>)> = Vec::new();
    for n in 1..=cap {
        let roots: Vec<usize> = class_id[n].keys().copied().collect();
        for root in roots {
            let id = class_id[n][&root];
            let (leg, r) = levels[n].members[&root][0].clone();
            let side = match leg {
                Leg::B => &b,
                Leg::C => &c,
            };
            let mut faces = Vec::with_capacity(n + 1);
            for k in 0..=n {
                let fr = side.apply(&r, crate::simpset::sset::Operator::Face(k))?;
                let froot = levels[n - 1].class_of[&(leg, fr)];
                faces.push(normal_form(
                    &levels, &class_id, &b, &c, n - 1, froot, &mut memo,
                )?);
            }
            face_jobs.push((id, faces));
        }
    }
    for (id, faces) in face_jobs {
        builder.set_faces(id, faces);
    }
    let object = builder.finish()?;

    // Legs.
    let mut leg = |side: &SimplicialSet, tag: Leg| -> Result<SimplicialMap> {
        let assignment = side
            .all_nondeg()
            .map(|id| {
                let n = side.simplex_dim(id);
                let root = levels[n].class_of[&(tag, SimplexRef::nondeg(id))];
                Ok((
                    id,
                    normal_form(&levels, &class_id, &b, &c, n, root, &mut memo)?,
                ))
            })
            .collect::<Result<BTreeMap<_, _>>>()?;
        SimplicialMap::new(side.clone(), object.clone(), assignment)
    };
    let leg_b = leg(&b, Leg::B)?;
    let leg_c = leg(&c, Leg::C)?;
    let mut object = object;
    object.truncated = b.truncated || c.truncated;
    Ok(Pushout {
        object,
        leg_b,
        leg_c,
    })
}

fn member_key(b: &SimplicialSet, c: &SimplicialSet, e: &(Leg, SimplexRef)) -> (u8, String) {
    match e.0 {
        Leg::B => (0, b.ref_name(&e.1)),
        Leg::C => (1, c.ref_name(&e.1)),
    }
}

fn tagged_name(b: &SimplicialSet, c: &SimplicialSet, e: &(Leg, SimplexRef)) -> String {
    match e.0 {
        Leg::B => format!("b:{}", b.ref_name(&e.1)),
        Leg::C => format!("c:{}", c.ref_name(&e.1)),
    }
}

/// Re-check a map against re-capped source and target presentations.
fn rebase(
    m: &SimplicialMap,
    src: &SimplicialSet,
    dst: &SimplicialSet,
) -> Result<SimplicialMap> {
    let assignment = src
        .all_nondeg()
        .map(|id| {
            let orig = m
                .source
                .lookup(src.simplex_name(id))
                .ok_or_else(|| Error::Parameter("rebase: missing source simplex".into()))?;
            let v = m.assignment.get(&orig).ok_or_else(|| {
                Error::Parameter(format!(
                    "map lacks value on {}",
                    src.simplex_name(id)
                ))
            })?;
            let base = dst
                .lookup(m.target.simplex_name(v.base))
                .ok_or_else(|| Error::Parameter("rebase: missing target simplex".into()))?;
            Ok((
                id,
                SimplexRef {
                    base,
                    word: v.word.clone(),
                },
            ))
        })
        .collect::<Result<BTreeMap<_, _>>>()?;
    SimplicialMap::new(src.clone(), dst.clone(), assignment)
}

/// Map `P → Z` induced by maps on the legs via the universal property;
/// verifies that both triangles commute.
pub fn pushout_induced(
    po: &Pushout,
    mb: &SimplicialMap,
    mc: &SimplicialMap,
) -> Result<SimplicialMap> {
    let p = &po.object;
    let mut assignment = BTreeMap::new();
    for id in p.all_nondeg() {
        let name = p.simplex_name(id);
        let (is_b, rest) = match name.split_once(':') {
            Some(("b", rest)) => (true, rest),
            Some(("c", rest)) => (false, rest),
            _ => return Err(Error::ConstructionBug(format!("untagged class {name}"))),
        };
        let side = if is_b { &po.leg_b.source } else { &po.leg_c.source };
        let m = if is_b { mb } else { mc };
        let sid = side
            .lookup(rest)
            .ok_or_else(|| Error::ConstructionBug(format!("lost member {rest}")))?;
        let orig = m
            .source
            .lookup(side.simplex_name(sid))
            .ok_or_else(|| Error::Parameter("induced map: source mismatch".into()))?;
        let v = m.assignment[&orig].clone();
        assignment.insert(id, v);
    }
    let induced = SimplicialMap::new(p.clone(), mb.target.clone(), assignment)?;
    // Both triangles must commute.
    for (leg, m) in [(&po.leg_b, mb), (&po.leg_c, mc)] {
        let comp = leg.compose(&induced)?;
        for (id, v) in &comp.assignment {
            let name = comp.target.ref_name(v);
            let orig = m
                .source
                .lookup(leg.source.simplex_name(*id))
                .ok_or_else(|| Error::Parameter("induced map: leg mismatch".into()))?;
            let direct = m.target.ref_name(&m.assignment[&orig]);
            if name != direct {
                return Err(Error::Parameter(format!(
                    "cocone maps disagree on {}: {} vs {}",
                    leg.source.simplex_name(*id),
                    name,
                    direct
                )));
            }
        }
    }
    Ok(induced)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simpset::standard::{make_standard, StandardKind};

    fn vertex_map(
        src: &SimplicialSet,
        dst: &SimplicialSet,
        vertex: &str,
    ) -> SimplicialMap {
        let v = dst.lookup(vertex).unwrap();
        let assignment = src
            .all_nondeg()
            .map(|id| {
                let dim = src.simplex_dim(id);
                let word = normalize_word(&vec![0; dim], 0).unwrap();
                (id, SimplexRef { base: v, word })
            })
            .collect();
        SimplicialMap::new(src.clone(), dst.clone(), assignment).unwrap()
    }

    #[test]
    fn wedge_of_two_edges() {
        // Δ¹ ⊔_{Δ⁰} Δ¹ gluing endpoint 1 of the first to endpoint 0 of the
        // second: nondeg counts [3, 2].
        let d1 = make_standard(StandardKind::Delta, 1).unwrap();
        let d0 = make_standard(StandardKind::Delta, 0).unwrap().with_cap(1).unwrap();
        let f = vertex_map(&d0, &d1, "1");
        let g = vertex_map(&d0, &d1, "0");
        let po = pushout(&f, &g).unwrap();
        assert_eq!(po.object.nondeg_counts(), vec![3, 2]);
        assert!(po.leg_b.validate().is_ok());
        assert!(po.leg_c.validate().is_ok());
    }

    #[test]
    fn idempotent_pushout_of_points() {
        let d0 = make_standard(StandardKind::Delta, 0).unwrap();
        let id = SimplicialMap::identity(&d0);
        let po = pushout(&id, &id).unwrap();
        assert_eq!(po.object.nondeg_counts(), vec![1]);
    }

    #[test]
    fn glue_two_triangles_along_edge() {
        // Two copies of Δ² glued along an edge: [4, 5, 2].
        let d2 = make_standard(StandardKind::Delta, 2).unwrap();
        let d1 = make_standard(StandardKind::Delta, 1).unwrap().with_cap(2).unwrap();
        let edge = |dst: &SimplicialSet| {
            let mut assignment = BTreeMap::new();
            assignment.insert(
                d1.lookup("0").unwrap(),
                SimplexRef::nondeg(dst.lookup("0").unwrap()),
            );
            assignment.insert(
                d1.lookup("1").unwrap(),
                SimplexRef::nondeg(dst.lookup("1").unwrap()),
            );
            assignment.insert(
                d1.lookup("01").unwrap(),
                SimplexRef::nondeg(dst.lookup("01").unwrap()),
            );
            SimplicialMap::new(d1.clone(), dst.clone(), assignment).unwrap()
        };
        let po = pushout(&edge(&d2), &edge(&d2)).unwrap();
        assert_eq!(po.object.nondeg_counts(), vec![4, 5, 2]);
    }
}
