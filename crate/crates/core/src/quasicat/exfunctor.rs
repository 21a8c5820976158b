//! Barycentric subdivision of standard simplices and the right adjoint on
//! levels: `Ex(X)_n` = simplicial maps `Sd Δⁿ → X`, with operators given by
//! precomposition with subdivided cofaces and codegeneracies. Only
//! subdivisions of standard simplices are built; that is all the tower
//! needs.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::fincat::nerve::{nondeg_chains, Chain};
use crate::fincat::{nerve, poset_category, FinCategory, Poset};
use crate::simpset::map::SimplicialMap;
use crate::simpset::sset::{SimplexRef, SimplicialSet, SsetBuilder};
use crate::simpset::standard::subset_name;
use crate::simpset::word::normalize_word;

/// The subdivided standard simplex with its poset presentation kept around
/// for functoriality.
#[derive(Debug, Clone)]
pub struct SdStandard {
    pub n: usize,
    pub subsets: Vec<Vec<usize>>,
    pub poset: Poset,
    pub category: FinCategory,
    pub sset: SimplicialSet,
    pub chains: Vec<Vec<Chain>>,
}

/// Nerve of the poset of non-empty subsets of `{0,…,n}` by inclusion,
/// truncated at dimension `n`.
pub fn sd_standard(n: usize) -> Result<SdStandard> {
    let mut subsets: Vec<Vec<usize>> = Vec::new();
    for size in 1..=n + 1 {
        let mut level = Vec::new();
        fn rec(n: usize, size: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == size {
                out.push(cur.clone());
                return;
            }
            for v in start..=n {
                cur.push(v);
                rec(n, size, v + 1, cur, out);
                cur.pop();
            }
        }
        rec(n, size, 0, &mut Vec::new(), &mut level);
        subsets.extend(level);
    }
    let elements: Vec<String> = subsets.iter().map(|s| subset_name(s, n)).collect();
    let mut pairs = Vec::new();
    for (a, sa) in subsets.iter().enumerate() {
        for (b, sb) in subsets.iter().enumerate() {
            if a != b && sa.iter().all(|v| sb.contains(v)) {
                pairs.push((a, b));
            }
        }
    }
    let poset = Poset::new(elements, &pairs)?;
    let category = poset_category(&poset)?;
    let sset = nerve(&category, n)?;
    let chains = nondeg_chains(&category, n);
    Ok(SdStandard {
        n,
        subsets,
        poset,
        category,
        sset,
        chains,
    })
}

/// The simplicial map `Sd(f) : Sd Δᵃ → Sd Δᵇ` induced by a monotone vertex
/// map `f : {0..a} → {0..b}`, acting on subsets by image.
pub fn sd_map(from: &SdStandard, to: &SdStandard, f: impl Fn(usize) -> usize) -> Result<SimplicialMap> {
    // Subset index in `to` for the image of each subset of `from`.
    let to_index: HashMap<String, usize> = to
        .poset
        .elements
        .iter()
        .enumerate()
        .map(|(i, e)| (e.clone(), i))
        .collect();
    let image_of = |s: &[usize]| -> String {
        let mut img: Vec<usize> = s.iter().map(|&v| f(v)).collect();
        img.sort_unstable();
        img.dedup();
        subset_name(&img, to.n)
    };
    let mut assignment = BTreeMap::new();
    for (len, level) in from.chains.iter().enumerate() {
        for chain in level {
            let id = from.sset.lookup(&chain.name(&from.category)).unwrap();
            // Image chain: subsets mapped elementwise, identities where
            // consecutive images agree.
            let mut verts: Vec<usize> = Vec::with_capacity(len + 1);
            let mut cur = chain.start;
            verts.push(to_index[&image_of(&from.subsets[cur.0 as usize])]);
            for &m in &chain.arrows {
                cur = from.category.morphism(m).dst;
                verts.push(to_index[&image_of(&from.subsets[cur.0 as usize])]);
            }
            let target_ref = chain_of_vertices(to, &verts)?;
            assignment.insert(id, target_ref);
        }
    }
    SimplicialMap::new(from.sset.clone(), to.sset.clone(), assignment)
}

/// The simplex of `to.sset` presented by a weakly monotone vertex list
/// (poset element indices), in normal form.
fn chain_of_vertices(to: &SdStandard, verts: &[usize]) -> Result<SimplexRef> {
    let mut arrows = Vec::with_capacity(verts.len() - 1);
    for w in verts.windows(2) {
        let (a, b) = (w[0], w[1]);
        if a == b {
            arrows.push(
                to.category
                    .identity(crate::fincat::ObjId(a as u32)),
            );
        } else {
            let name = format!(
                "b.{}.{}",
                to.poset.elements[a], to.poset.elements[b]
            );
            arrows.push(to.category.lookup_morphism(&name).ok_or_else(|| {
                Error::ConstructionBug(format!("missing poset arrow {name}"))
            })?);
        }
    }
    let chain = Chain {
        start: crate::fincat::ObjId(verts[0] as u32),
        arrows,
    };
    let (base, letters) = chain.normal_form(&to.category);
    let bid = to
        .sset
        .lookup(&base.name(&to.category))
        .ok_or_else(|| Error::ConstructionBug("missing base chain".to_string()))?;
    Ok(SimplexRef {
        base: bid,
        word: normalize_word(&letters, base.len())?,
    })
}

/// An element of `Ex(X)_n`, i.e. a map `Sd Δⁿ → X`, keyed canonically.
fn map_key(m: &SimplicialMap) -> String {
    let mut parts: Vec<String> = m
        .assignment
        .iter()
        .map(|(id, v)| {
            format!(
                "{}={}",
                m.source.simplex_name(*id),
                m.target.ref_name(v)
            )
        })
        .collect();
    parts.sort();
    parts.join(";")
}

pub struct ExResult {
    pub sset: SimplicialSet,
    pub last_vertex: SimplicialMap,
}

/// `Ex(X)` truncated at `dim_cap ≤ X.dim_cap`, with the last-vertex map
/// `X → Ex(X)`.
pub fn ex(x: &SimplicialSet, dim_cap: usize) -> Result<ExResult> {
    if x.dim_cap() < dim_cap {
        return Err(Error::Truncation(format!(
            "Ex at cap {dim_cap} needs the operand cap ≥ {dim_cap}"
        )));
    }
    let sds: Vec<SdStandard> = (0..=dim_cap).map(sd_standard).collect::<Result<_>>()?;

    // Level elements, all of them.
    let mut levels: Vec<Vec<SimplicialMap>> = Vec::with_capacity(dim_cap + 1);
    for sd in sds.iter() {
        levels.push(super::all_maps(&sd.sset, x)?);
    }
    let mut key_index: Vec<HashMap<String, usize>> = Vec::with_capacity(dim_cap + 1);
    for level in &levels {
        key_index.push(
            level
                .iter()
                .enumerate()
                .map(|(i, m)| (map_key(m), i))
                .collect(),
        );
    }

    // Peel: q at level k equals s_i(q ∘ Sd δᵢ) for some i < k.
    let mut sd_delta: Vec<Vec<SimplicialMap>> = vec![Vec::new()];
    let mut sd_sigma: Vec<Vec<SimplicialMap>> = vec![Vec::new()];
    for k in 1..=dim_cap {
        let deltas = (0..=k)
            .map(|i| sd_map(&sds[k - 1], &sds[k], |v| if v < i { v } else { v + 1 }))
            .collect::<Result<Vec<_>>>()?;
        let sigmas = (0..k)
            .map(|i| sd_map(&sds[k], &sds[k - 1], |v| if v <= i { v } else { v - 1 }))
            .collect::<Result<Vec<_>>>()?;
        sd_delta.push(deltas);
        sd_sigma.push(sigmas);
    }

    let peel = |k: usize,
                q: &SimplicialMap,
                levels: &[Vec<SimplicialMap>],
                key_index: &[HashMap<String, usize>]|
     -> Result<Option<(usize, usize)>> {
        for i in 0..k {
            let down = sd_delta[k][i].compose(q)?;
            let down_key = map_key(&down);
            let idx = key_index[k - 1][&down_key];
            let back = sd_sigma[k][i].compose(&levels[k - 1][idx])?;
            if map_key(&back) == map_key(q) {
                return Ok(Some((i, idx)));
            }
        }
        Ok(None)
    };

    // Non-degenerate elements and their names.
    let mut nondeg: Vec<Vec<usize>> = Vec::with_capacity(dim_cap + 1);
    let mut peels: Vec<Vec<Option<(usize, usize)>>> = Vec::with_capacity(dim_cap + 1);
    for k in 0..=dim_cap {
        let mut nd = Vec::new();
        let mut pl = Vec::with_capacity(levels[k].len());
        for q in levels[k].iter() {
            let p = if k == 0 {
                None
            } else {
                peel(k, q, &levels, &key_index)?
            };
            if p.is_none() {
                nd.push(key_index[k][&map_key(q)]);
            }
            pl.push(p);
        }
        nd.sort_by_key(|&i| map_key(&levels[k][i]));
        nondeg.push(nd);
        peels.push(pl);
    }

    let mut b = SsetBuilder::new(format!("Ex({})", x.name()), dim_cap);
    let mut name_of: Vec<HashMap<usize, String>> = vec![HashMap::new(); dim_cap + 1];
    for k in 0..=dim_cap {
        for (j, &idx) in nondeg[k].iter().enumerate() {
            let name = format!("ex{k}.{j}");
            b.add_simplex(&name, k)?;
            name_of[k].insert(idx, name);
        }
    }

    // Normal form of an arbitrary element by iterated peeling.
    fn normal_form(
        k: usize,
        idx: usize,
        peels: &[Vec<Option<(usize, usize)>>],
        name_of: &[HashMap<usize, String>],
        b: &SsetBuilder,
    ) -> Result<SimplexRef> {
        match peels[k][idx] {
            None => {
                let name = &name_of[k][&idx];
                Ok(SimplexRef::nondeg(b.lookup(name).unwrap()))
            }
            Some((i, down_idx)) => {
                let below = normal_form(k - 1, down_idx, peels, name_of, b)?;
                let mut letters = vec![i];
                letters.extend_from_slice(below.word.letters());
                let base_dim = (k - 1) - below.word.len();
                Ok(SimplexRef {
                    base: below.base,
                    word: normalize_word(&letters, base_dim)?,
                })
            }
        }
    }

    let mut face_jobs = Vec::new();
    for k in 1..=dim_cap {
        for &idx in &nondeg[k] {
            let q = &levels[k][idx];
            let mut faces = Vec::with_capacity(k + 1);
            for j in 0..=k {
                let down = sd_delta[k][j].compose(q)?;
                let didx = key_index[k - 1][&map_key(&down)];
                faces.push(normal_form(k - 1, didx, &peels, &name_of, &b)?);
            }
            face_jobs.push((b.lookup(&name_of[k][&idx]).unwrap(), faces));
        }
    }
    for (id, faces) in face_jobs {
        b.set_faces(id, faces);
    }

    // Last-vertex map: an n-simplex goes to the composite
    // Sd Δⁿ → Δⁿ → X picking maxima of chains.
    let mut lv_assignment = BTreeMap::new();
    for id in x.all_nondeg() {
        let n = x.simplex_dim(id);
        if n > dim_cap {
            continue;
        }
        let sd = &sds[n];
        let mut assignment = BTreeMap::new();
        for level in sd.chains.iter() {
            for chain in level {
                let cid = sd.sset.lookup(&chain.name(&sd.category)).unwrap();
                let mut verts = Vec::with_capacity(chain.len() + 1);
                let mut cur = chain.start;
                verts.push(*sd.subsets[cur.0 as usize].iter().max().unwrap());
                for &m in &chain.arrows {
                    cur = sd.category.morphism(m).dst;
                    verts.push(*sd.subsets[cur.0 as usize].iter().max().unwrap());
                }
                assignment.insert(cid, x.eval_vertices(&SimplexRef::nondeg(id), &verts)?);
            }
        }
        let elem = SimplicialMap::new(sd.sset.clone(), x.clone(), assignment)?;
        let idx = *key_index[n].get(&map_key(&elem)).ok_or_else(|| {
            Error::ConstructionBug("last-vertex element missing from level".to_string())
        })?;
        lv_assignment.insert(id, normal_form(n, idx, &peels, &name_of, &b)?);
    }

    let sset = b.finish()?;
    let last_vertex = SimplicialMap::new(x.clone(), sset.clone(), lv_assignment)?;
    Ok(ExResult { sset, last_vertex })
}

/// Iterated Ex with the composite comparison map recorded.
pub fn ex_iterate(
    x: &SimplicialSet,
    iters: usize,
    dim_cap: usize,
) -> Result<(SimplicialSet, SimplicialMap)> {
    let mut current = x.clone();
    let mut comparison: Option<SimplicialMap> = None;
    for _ in 0..iters {
        let step = ex(&current, dim_cap.min(current.dim_cap()))?;
        comparison = Some(match comparison {
            None => step.last_vertex.clone(),
            Some(c) => c.compose(&step.last_vertex)?,
        });
        current = step.sset;
    }
    let comparison = match comparison {
        Some(c) => c,
        None => SimplicialMap::identity(&current),
    };
    Ok((current, comparison))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simpset::standard::{make_standard, StandardKind};

    #[test]
    fn sd_counts() {
        assert_eq!(sd_standard(0).unwrap().sset.nondeg_counts(), vec![1]);
        assert_eq!(sd_standard(1).unwrap().sset.nondeg_counts(), vec![3, 2]);
        assert_eq!(sd_standard(2).unwrap().sset.nondeg_counts(), vec![7, 12, 6]);
    }

    #[test]
    fn ex_level_zero_is_x0() {
        let d2 = make_standard(StandardKind::Delta, 2).unwrap();
        let e = ex(&d2, 1).unwrap();
        assert_eq!(
            e.sset.nondeg_at(0).len(),
            d2.nondeg_at(0).len()
        );
    }

    #[test]
    fn ex_of_point_is_point() {
        let d0 = make_standard(StandardKind::Delta, 0).unwrap().with_cap(1).unwrap();
        let e = ex(&d0, 1).unwrap();
        assert_eq!(e.sset.nondeg_counts(), vec![1, 0]);
    }

    #[test]
    fn ex_delta1_level_one() {
        let d1 = make_standard(StandardKind::Delta, 1).unwrap();
        let e = ex(&d1, 1).unwrap();
        // |Ex(Δ¹)_1| = #maps Sd Δ¹ → Δ¹; the zigzag has three vertices
        // a → c ← b with images constrained by the two edges.
        let sd1 = sd_standard(1).unwrap();
        let count = super::super::all_maps(&sd1.sset, &d1).unwrap().len();
        assert_eq!(e.sset.level_count(1).unwrap(), count);
        assert!(e.last_vertex.validate().is_ok());
    }

    #[test]
    fn pi0_of_ex_iterate_boundary() {
        let b1 = make_standard(StandardKind::Boundary, 1).unwrap();
        for iters in 0..=3 {
            let (result, _) = ex_iterate(&b1, iters, 1).unwrap();
            assert_eq!(result.pi0().unwrap().len(), 2, "iters={iters}");
        }
    }

    #[test]
    fn pi0_of_ex_horn_is_one() {
        let h = make_standard(StandardKind::Horn(1), 2).unwrap();
        let (result, _) = ex_iterate(&h, 1, 2).unwrap();
        assert_eq!(result.pi0().unwrap().len(), 1);
    }
}
