//! Homotopy category of a quasi-category, extracted at desk scale.
//!
//! Objects are vertices; morphisms are 1-simplices modulo the relation
//! generated by 2-simplices with a degenerate outer edge; composition is
//! chosen through inner-horn fillers and checked to be independent of all
//! choices. The required inner-horn fillers in dimensions 2 and 3 are
//! verified first.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::fincat::{CatBuilder, FinCategory};
use crate::simpset::sset::{Operator, SimplexRef, SimplicialSet};

/// Checks that every inner horn of dimension 2 and 3 into `x` has a filler.
fn check_inner_fillers(x: &SimplicialSet) -> Result<()> {
    if let Some(w) = crate::quasicat::inner_fillers_witness(x, 3)? {
        return Err(Error::NotQuasiCategory(w));
    }
    Ok(())
}

/// Extracts the homotopy category. Requires `dim_cap ≥ 3` and all inner
/// 2- and 3-horn fillers (verified first).
pub fn homotopy_category(x: &SimplicialSet) -> Result<FinCategory> {
    if x.dim_cap() < 3 {
        return Err(Error::Truncation(
            "homotopy category needs dim_cap ≥ 3".to_string(),
        ));
    }
    check_inner_fillers(x)?;

    let edges = x.simplices_at(1)?;
    let index: HashMap<SimplexRef, usize> = edges
        .iter()
        .enumerate()
        .map(|(n, e)| (e.clone(), n))
        .collect();

    // Homotopy relation witnesses: 2-simplices whose ∂₀ or ∂₂ is
    // degenerate relate the remaining two edges.
    let mut uf: Vec<usize> = (0..edges.len()).collect();
    fn find(uf: &mut Vec<usize>, a: usize) -> usize {
        if uf[a] != a {
            let r = find(uf, uf[a]);
            uf[a] = r;
        }
        uf[a]
    }
    let union = |uf: &mut Vec<usize>, a: usize, b: usize| {
        let (ra, rb) = (find(uf, a), find(uf, b));
        if ra != rb {
            uf[ra.max(rb)] = ra.min(rb);
        }
    };
    for t in x.simplices_at(2)? {
        let d0 = x.apply(&t, Operator::Face(0))?;
        let d1 = x.apply(&t, Operator::Face(1))?;
        let d2 = x.apply(&t, Operator::Face(2))?;
        if !d0.is_nondeg() {
            union(&mut uf, index[&d1], index[&d2]);
        }
        if !d2.is_nondeg() {
            union(&mut uf, index[&d0], index[&d1]);
        }
    }

    // Classes with deterministic representatives (least edge name).
    let mut class_members: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for n in 0..edges.len() {
        class_members.entry(find(&mut uf, n)).or_default().push(n);
    }
    let mut rep_of_root: BTreeMap<usize, usize> = BTreeMap::new();
    for (root, members) in &class_members {
        let rep = *members
            .iter()
            .min_by_key(|&&m| x.ref_name(&edges[m]))
            .unwrap();
        rep_of_root.insert(*root, rep);
    }

    // Endpoint consistency inside classes.
    for members in class_members.values() {
        let first = &edges[members[0]];
        let src = x.apply(first, Operator::Face(1))?;
        let dst = x.apply(first, Operator::Face(0))?;
        for &m in members {
            if x.apply(&edges[m], Operator::Face(1))? != src
                || x.apply(&edges[m], Operator::Face(0))? != dst
            {
                return Err(Error::ConstructionBug(
                    "homotopic edges with different endpoints".to_string(),
                ));
            }
        }
    }

    let mut b = CatBuilder::new(format!("ho({})", x.name()));
    for &v in x.nondeg_at(0) {
        b.add_object(x.simplex_name(v))?;
    }
    // One morphism per class, named by its representative edge.
    let mut mor_of_root: BTreeMap<usize, crate::fincat::MorId> = BTreeMap::new();
    let class_of_edge = |uf: &mut Vec<usize>, e: usize| find(uf, e);
    let roots: Vec<usize> = class_members.keys().copied().collect();
    for &root in &roots {
        let rep = rep_of_root[&root];
        let e = &edges[rep];
        let src_v = x.apply(e, Operator::Face(1))?.base;
        let dst_v = x.apply(e, Operator::Face(0))?.base;
        let src = b.lookup_object(x.simplex_name(src_v)).unwrap();
        let dst = b.lookup_object(x.simplex_name(dst_v)).unwrap();
        let name = format!("[{}]", x.ref_name(e));
        let m = b.add_morphism(name, src, dst)?;
        mor_of_root.insert(root, m);
    }
    // Identities: classes of the degenerate edges.
    for &v in x.nondeg_at(0) {
        let deg = x.apply(&SimplexRef::nondeg(v), Operator::Degeneracy(0))?;
        let root = class_of_edge(&mut uf, index[&deg]);
        let o = b.lookup_object(x.simplex_name(v)).unwrap();
        b.set_identity(o, mor_of_root[&root]);
    }

    // Composition: for every composable pair of class representatives,
    // every Λ²₁ filler over every pair of members must land in one class.
    let triangles = x.simplices_at(2)?;
    let mut tri_by_pair: HashMap<(SimplexRef, SimplexRef), Vec<SimplexRef>> = HashMap::new();
    for t in &triangles {
        let d0 = x.apply(t, Operator::Face(0))?;
        let d1 = x.apply(t, Operator::Face(1))?;
        let d2 = x.apply(t, Operator::Face(2))?;
        tri_by_pair.entry((d2, d0)).or_default().push(d1);
    }
    for &root_f in &roots {
        for &root_g in &roots {
            let rep_f = &edges[rep_of_root[&root_f]];
            let rep_g = &edges[rep_of_root[&root_g]];
            // f then g: dst f = src g.
            if x.apply(rep_f, Operator::Face(0))? != x.apply(rep_g, Operator::Face(1))? {
                continue;
            }
            let mut composite_root: Option<usize> = None;
            let mut found_any = false;
            for &fm in &class_members[&root_f] {
                for &gm in &class_members[&root_g] {
                    let key = (edges[fm].clone(), edges[gm].clone());
                    if let Some(d1s) = tri_by_pair.get(&key) {
                        for d1 in d1s {
                            found_any = true;
                            let r = class_of_edge(&mut uf, index[d1]);
                            match composite_root {
                                None => composite_root = Some(r),
                                Some(prev) if prev != r => {
                                    return Err(Error::ConstructionBug(format!(
                                        "filler choice changes the composite of {} and {}",
                                        x.ref_name(rep_f),
                                        x.ref_name(rep_g)
                                    )));
                                }
                                _ => {}
                            }
                        }
                    }
                }
            }
            if !found_any {
                return Err(Error::NotQuasiCategory(format!(
                    "no filler composes {} with {}",
                    x.ref_name(rep_f),
                    x.ref_name(rep_g)
                )));
            }
            // g ∘ f = composite class.
            b.set_composite(
                mor_of_root[&root_g],
                mor_of_root[&root_f],
                mor_of_root[&composite_root.unwrap()],
            );
        }
    }
    let cat = b.finish()?;
    let verdict = crate::fincat::validate_category(&cat);
    if !verdict.is_valid() {
        return Err(Error::ConstructionBug(format!(
            "homotopy category fails validation: {verdict:?}"
        )));
    }
    Ok(cat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{find_isomorphism, nerve, ret_category, terminal_category};
    use crate::simpset::standard::{make_standard, StandardKind};

    #[test]
    fn homotopy_category_of_nerve_recovers_ret() {
        let c = ret_category();
        let n = nerve(&c, 3).unwrap();
        let ho = homotopy_category(&n).unwrap();
        assert!(find_isomorphism(&ho, &c).unwrap().is_some());
    }

    #[test]
    fn homotopy_category_of_point_is_terminal() {
        let d0 = make_standard(StandardKind::Delta, 0)
            .unwrap()
            .with_cap(4)
            .unwrap();
        let ho = homotopy_category(&d0).unwrap();
        assert!(find_isomorphism(&ho, &terminal_category()).unwrap().is_some());
    }

    #[test]
    fn unreplaced_cone_has_the_retraction_homotopy_category() {
        // The cone with retracts on a point is already fibrant in range;
        // a zero-step replacement keeps it on the nose.
        let l = crate::constructions::cone_with_retracts(
            &crate::fincat::Poset::point(),
            4,
        )
        .unwrap();
        let (replaced, _, _) = crate::quasicat::fibrant_replace(&l, 0, 4).unwrap();
        let ho = homotopy_category(&replaced).unwrap();
        assert!(find_isomorphism(&ho, &ret_category()).unwrap().is_some());
    }

    #[test]
    fn missing_filler_is_reported() {
        let horn = make_standard(StandardKind::Horn(1), 2)
            .unwrap()
            .with_cap(3)
            .unwrap();
        match homotopy_category(&horn) {
            Err(Error::NotQuasiCategory(_)) => {}
            other => panic!("expected NotQuasiCategory, got {other:?}"),
        }
    }
}
