//! Horn and extension enumeration, the inner-Kan condition, the
//! fibrant-replacement tower, and subdivision/Ex machinery.

pub mod exfunctor;
pub mod fibrant;

pub use exfunctor::{ex, ex_iterate, sd_map, sd_standard, ExResult, SdStandard};
pub use fibrant::{fibrant_replace, ReplacementTrace};

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::simpset::map::SimplicialMap;
use crate::simpset::sset::{Operator, SimplexId, SimplexRef, SimplicialSet, SsetBuilder};
use crate::simpset::standard::{make_standard, StandardKind};

/// A lifting problem: a level-wise injective inclusion `A → B` and a
/// partial map `A → X` to extend over `B`.
pub struct ExtensionProblem {
    pub inclusion: SimplicialMap,
    pub partial: SimplicialMap,
}

impl ExtensionProblem {
    pub fn new(inclusion: SimplicialMap, partial: SimplicialMap) -> Result<ExtensionProblem> {
        if !inclusion.is_levelwise_injective()?.is_injective() {
            return Err(Error::Parameter(
                "extension problems require a level-wise injective inclusion".to_string(),
            ));
        }
        Ok(ExtensionProblem { inclusion, partial })
    }
}

/// The empty simplicial set at a given cap.
pub fn empty_sset(dim_cap: usize) -> SimplicialSet {
    SsetBuilder::new("empty", dim_cap).finish().expect("empty set is valid")
}

/// All maps `B → X` restricting to the partial map along the inclusion,
/// found by backtracking over the non-degenerate simplices of `B` missing
/// from `A`, in (dimension, name) order with candidates in level order.
pub fn enumerate_extensions(p: &ExtensionProblem) -> Result<Vec<SimplicialMap>> {
    let b = &p.inclusion.target;
    let x = &p.partial.target;
    let a = &p.inclusion.source;

    // Forced values: a level-wise injective map sends non-degenerate
    // simplices to non-degenerate simplices.
    let mut forced: BTreeMap<SimplexId, SimplexRef> = BTreeMap::new();
    for aid in a.all_nondeg() {
        let img = p.inclusion.assignment.get(&aid).ok_or_else(|| {
            Error::Parameter("inclusion is not total".to_string())
        })?;
        if !img.is_nondeg() {
            return Err(Error::Parameter(
                "inclusion degenerates a simplex".to_string(),
            ));
        }
        let val = p.partial.assignment.get(&aid).cloned().ok_or_else(|| {
            Error::Parameter("partial map is not total on A".to_string())
        })?;
        forced.insert(img.base, val);
    }

    let mut order: Vec<SimplexId> = Vec::new();
    for d in 0..=b.dim_cap() {
        for &id in b.nondeg_at(d) {
            order.push(id);
        }
    }

    // candidates_at[d] caches simplices_at(x, d).
    let mut candidates_at: Vec<Vec<SimplexRef>> = Vec::new();
    for d in 0..=b.dim_cap().min(x.dim_cap()) {
        candidates_at.push(x.simplices_at(d)?);
    }

    let mut results = Vec::new();
    let mut assignment: BTreeMap<SimplexId, SimplexRef> = BTreeMap::new();

    fn value_of(
        x: &SimplicialSet,
        assignment: &BTreeMap<SimplexId, SimplexRef>,
        r: &SimplexRef,
    ) -> Result<SimplexRef> {
        let v = assignment
            .get(&r.base)
            .ok_or_else(|| Error::ConstructionBug("value requested before assignment".into()))?;
        if r.word.is_empty() {
            return Ok(v.clone());
        }
        let mut letters = r.word.letters().to_vec();
        letters.extend_from_slice(v.word.letters());
        Ok(SimplexRef {
            base: v.base,
            word: crate::simpset::word::normalize_word(&letters, x.simplex_dim(v.base))?,
        })
    }

    fn rec(
        b: &SimplicialSet,
        x: &SimplicialSet,
        order: &[SimplexId],
        pos: usize,
        forced: &BTreeMap<SimplexId, SimplexRef>,
        candidates_at: &[Vec<SimplexRef>],
        assignment: &mut BTreeMap<SimplexId, SimplexRef>,
        results: &mut Vec<BTreeMap<SimplexId, SimplexRef>>,
    ) -> Result<()> {
        if pos == order.len() {
            results.push(assignment.clone());
            return Ok(());
        }
        let id = order[pos];
        let dim = b.simplex_dim(id);
        if dim >= candidates_at.len() {
            // B has simplices above X's cap: no extension can exist.
            return Ok(());
        }
        let try_candidate = |cand: &SimplexRef,
                             assignment: &mut BTreeMap<SimplexId, SimplexRef>,
                             results: &mut Vec<BTreeMap<SimplexId, SimplexRef>>|
         -> Result<()> {
            // Faces must match the already-assigned boundary.
            if dim >= 1 {
                for k in 0..=dim {
                    let bf = b.apply(&SimplexRef::nondeg(id), Operator::Face(k))?;
                    let want = value_of(x, assignment, &bf)?;
                    let got = x.apply(cand, Operator::Face(k))?;
                    if want != got {
                        return Ok(());
                    }
                }
            }
            assignment.insert(id, cand.clone());
            rec(b, x, order, pos + 1, forced, candidates_at, assignment, results)?;
            assignment.remove(&id);
            Ok(())
        };
        match forced.get(&id) {
            Some(v) => {
                let v = v.clone();
                try_candidate(&v, assignment, results)?;
            }
            None => {
                for cand in &candidates_at[dim] {
                    try_candidate(cand, assignment, results)?;
                }
            }
        }
        Ok(())
    }

    let mut raw = Vec::new();
    rec(
        b,
        x,
        &order,
        0,
        &forced,
        &candidates_at,
        &mut assignment,
        &mut raw,
    )?;
    for assignment in raw {
        results.push(SimplicialMap::new(b.clone(), x.clone(), assignment)?);
    }
    Ok(results)
}

/// All simplicial maps `K → X`, i.e. extensions from the empty subcomplex.
pub fn all_maps(k: &SimplicialSet, x: &SimplicialSet) -> Result<Vec<SimplicialMap>> {
    let empty = empty_sset(k.dim_cap());
    let incl = SimplicialMap::new(empty.clone(), k.clone(), BTreeMap::new())?;
    let part = SimplicialMap::new(empty, x.clone(), BTreeMap::new())?;
    enumerate_extensions(&ExtensionProblem::new(incl, part)?)
}

#[derive(Debug, Clone)]
pub struct HornCheck {
    pub dim: usize,
    pub index: usize,
    pub horn_maps: usize,
    pub unfilled: Vec<String>,
    pub min_fillers: usize,
    pub max_fillers: usize,
}

#[derive(Debug, Clone)]
pub struct QcatReport {
    pub checks: Vec<HornCheck>,
}

impl QcatReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.unfilled.is_empty())
    }

    pub fn unique_fillers(&self) -> bool {
        self.passed()
            && self
                .checks
                .iter()
                .all(|c| c.horn_maps == 0 || (c.min_fillers == 1 && c.max_fillers == 1))
    }

    pub fn first_unfilled(&self) -> Option<String> {
        self.checks
            .iter()
            .flat_map(|c| c.unfilled.first().cloned())
            .next()
    }
}

/// Short deterministic description of a horn map by its vertex images.
pub(crate) fn describe_horn_map(m: &SimplicialMap) -> String {
    let mut parts = Vec::new();
    for &v in m.source.nondeg_at(0) {
        parts.push(format!(
            "{}→{}",
            m.source.simplex_name(v),
            m.target.ref_name(&m.assignment[&v])
        ));
    }
    parts.join(",")
}

/// Existence-only check of inner-horn fillers in dimensions `2..=max_dim`,
/// requiring only `max_dim ≤ dim_cap`. Returns the first unfilled horn.
pub fn inner_fillers_witness(x: &SimplicialSet, max_dim: usize) -> Result<Option<String>> {
    if max_dim > x.dim_cap() {
        return Err(Error::Truncation(format!(
            "fillers in dimension {max_dim} need cap ≥ {max_dim}"
        )));
    }
    for n in 2..=max_dim {
        for i in 1..n {
            let horn = make_standard(StandardKind::Horn(i), n)?;
            let delta = make_standard(StandardKind::Delta, n)?;
            let incl = crate::simpset::colimit::inclusion_by_name(&horn, &delta)?;
            for hm in all_maps(&horn, x)? {
                let problem = ExtensionProblem::new(incl.clone(), hm.clone())?;
                if enumerate_extensions(&problem)?.is_empty() {
                    return Ok(Some(format!("Λ{n}_{i}[{}]", describe_horn_map(&hm))));
                }
            }
        }
    }
    Ok(None)
}

/// Checks every inner horn `Λⁿᵢ → X` for `2 ≤ n ≤ dim_check`, counting
/// fillers per horn map. Fillers are separated one level above the checked
/// dimension, hence the cap precondition.
pub fn is_quasicategory(x: &SimplicialSet, dim_check: usize) -> Result<QcatReport> {
    if dim_check + 1 > x.dim_cap() {
        return Err(Error::Truncation(format!(
            "checking horns to dimension {dim_check} needs cap ≥ {}",
            dim_check + 1
        )));
    }
    let mut checks = Vec::new();
    for n in 2..=dim_check {
        for i in 1..n {
            let horn = make_standard(StandardKind::Horn(i), n)?;
            let delta = make_standard(StandardKind::Delta, n)?;
            let incl = crate::simpset::colimit::inclusion_by_name(&horn, &delta)?;
            let horn_maps = all_maps(&horn, x)?;
            let mut unfilled = Vec::new();
            let mut min_fillers = usize::MAX;
            let mut max_fillers = 0usize;
            for hm in &horn_maps {
                let problem = ExtensionProblem::new(incl.clone(), hm.clone())?;
                let fillers = enumerate_extensions(&problem)?;
                min_fillers = min_fillers.min(fillers.len());
                max_fillers = max_fillers.max(fillers.len());
                if fillers.is_empty() {
                    unfilled.push(format!("Λ{n}_{i}[{}]", describe_horn_map(hm)));
                }
            }
            if horn_maps.is_empty() {
                min_fillers = 0;
            }
            checks.push(HornCheck {
                dim: n,
                index: i,
                horn_maps: horn_maps.len(),
                unfilled,
                min_fillers,
                max_fillers,
            });
        }
    }
    Ok(QcatReport { checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{nerve, ret_category};
    use crate::simpset::colimit::inclusion_by_name;

    #[test]
    fn inner_horn_into_nerve_has_unique_filler() {
        let n = nerve(&ret_category(), 2).unwrap();
        let horn = make_standard(StandardKind::Horn(1), 2).unwrap();
        let delta = make_standard(StandardKind::Delta, 2).unwrap();
        let incl = inclusion_by_name(&horn, &delta).unwrap();
        // Classify the composable pair (i, r): Y → X → Y.
        let mut assignment = BTreeMap::new();
        assignment.insert(
            horn.lookup("0").unwrap(),
            SimplexRef::nondeg(n.lookup("Y").unwrap()),
        );
        assignment.insert(
            horn.lookup("1").unwrap(),
            SimplexRef::nondeg(n.lookup("X").unwrap()),
        );
        assignment.insert(
            horn.lookup("2").unwrap(),
            SimplexRef::nondeg(n.lookup("Y").unwrap()),
        );
        assignment.insert(
            horn.lookup("01").unwrap(),
            SimplexRef::nondeg(n.lookup("i").unwrap()),
        );
        assignment.insert(
            horn.lookup("12").unwrap(),
            SimplexRef::nondeg(n.lookup("r").unwrap()),
        );
        let hm = SimplicialMap::new(horn.clone(), n.clone(), assignment).unwrap();
        let fillers =
            enumerate_extensions(&ExtensionProblem::new(incl, hm).unwrap()).unwrap();
        assert_eq!(fillers.len(), 1);
        // The long edge of the filler is r∘i = Id_Y, the degenerate edge.
        let top = fillers[0]
            .eval(&SimplexRef::nondeg(delta.lookup("012").unwrap()))
            .unwrap();
        let d1 = n.apply(&top, Operator::Face(1)).unwrap();
        assert_eq!(n.ref_name(&d1), "Y.s0");
    }

    #[test]
    fn outer_horn_filler_count() {
        // Λ²₀ → N(Ret) sending the two edges out of the cone point to i
        // and the identity on Y: the fillers are counted by edges Y → X
        // composing correctly; exactly one.
        let n = nerve(&ret_category(), 2).unwrap();
        let horn = make_standard(StandardKind::Horn(0), 2).unwrap();
        let delta = make_standard(StandardKind::Delta, 2).unwrap();
        let incl = inclusion_by_name(&horn, &delta).unwrap();
        let y = n.lookup("Y").unwrap();
        let x = n.lookup("X").unwrap();
        let mut assignment = BTreeMap::new();
        assignment.insert(horn.lookup("0").unwrap(), SimplexRef::nondeg(y));
        assignment.insert(horn.lookup("1").unwrap(), SimplexRef::nondeg(x));
        assignment.insert(horn.lookup("2").unwrap(), SimplexRef::nondeg(y));
        assignment.insert(
            horn.lookup("01").unwrap(),
            SimplexRef::nondeg(n.lookup("i").unwrap()),
        );
        let idy = n
            .apply(&SimplexRef::nondeg(y), Operator::Degeneracy(0))
            .unwrap();
        assignment.insert(horn.lookup("02").unwrap(), idy);
        let hm = SimplicialMap::new(horn.clone(), n.clone(), assignment).unwrap();
        let fillers =
            enumerate_extensions(&ExtensionProblem::new(incl, hm).unwrap()).unwrap();
        assert_eq!(fillers.len(), 1);
    }

    #[test]
    fn horn_into_boundary_has_no_filler() {
        let horn = make_standard(StandardKind::Horn(1), 2).unwrap();
        let delta = make_standard(StandardKind::Delta, 2).unwrap();
        let bdry = make_standard(StandardKind::Boundary, 2).unwrap();
        let incl = inclusion_by_name(&horn, &delta).unwrap();
        let hm = inclusion_by_name(&horn, &bdry).unwrap();
        let fillers =
            enumerate_extensions(&ExtensionProblem::new(incl, hm).unwrap()).unwrap();
        assert!(fillers.is_empty());
    }

    #[test]
    fn nerve_of_ret_is_quasicategory() {
        let n = nerve(&ret_category(), 4).unwrap();
        let report = is_quasicategory(&n, 3).unwrap();
        assert!(report.passed());
        assert!(report.unique_fillers());
    }

    #[test]
    fn horn_itself_fails() {
        let h = make_standard(StandardKind::Horn(1), 2)
            .unwrap()
            .with_cap(3)
            .unwrap();
        let report = is_quasicategory(&h, 2).unwrap();
        assert!(!report.passed());
        assert!(report.first_unfilled().is_some());
    }
}
