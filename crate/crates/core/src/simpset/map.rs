//! Maps of truncated simplicial sets.
//!
//! A map is stored by its values on non-degenerate simplices; values on
//! degenerate simplices follow by naturality. Construction checks
//! compatibility with every face operator up to the shared cap.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::simpset::sset::{Operator, SimplexId, SimplexRef, SimplicialSet};
use crate::simpset::word::normalize_word;

#[derive(Debug, Clone)]
pub struct SimplicialMap {
    pub source: SimplicialSet,
    pub target: SimplicialSet,
    /// Value on each non-degenerate source simplex; the target ref has the
    /// same total dimension.
    pub assignment: BTreeMap<SimplexId, SimplexRef>,
}

impl SimplicialMap {
    /// Builds and validates a map from its non-degenerate assignment.
    pub fn new(
        source: SimplicialSet,
        target: SimplicialSet,
        assignment: BTreeMap<SimplexId, SimplexRef>,
    ) -> Result<SimplicialMap> {
        let m = SimplicialMap {
            source,
            target,
            assignment,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn identity(x: &SimplicialSet) -> SimplicialMap {
        let assignment = x
            .all_nondeg()
            .map(|id| (id, SimplexRef::nondeg(id)))
            .collect();
        SimplicialMap {
            source: x.clone(),
            target: x.clone(),
            assignment,
        }
    }

    /// Value on an arbitrary simplex: `f(s_w b) = s_w f(b)`.
    pub fn eval(&self, r: &SimplexRef) -> Result<SimplexRef> {
        let v = self.assignment.get(&r.base).ok_or_else(|| {
            Error::Parameter(format!(
                "map {} -> {} has no value on {}",
                self.source.name(),
                self.target.name(),
                self.source.simplex_name(r.base)
            ))
        })?;
        if r.word.is_empty() {
            return Ok(v.clone());
        }
        let mut letters = r.word.letters().to_vec();
        letters.extend_from_slice(v.word.letters());
        let word = normalize_word(&letters, self.target.simplex_dim(v.base))?;
        Ok(SimplexRef {
            base: v.base,
            word,
        })
    }

    fn shared_cap(&self) -> usize {
        self.source.dim_cap().min(self.target.dim_cap())
    }

    /// Checks totality, dimension preservation and face compatibility.
    pub fn validate(&self) -> Result<()> {
        let cap = self.shared_cap();
        for id in self.source.all_nondeg() {
            let dim = self.source.simplex_dim(id);
            if dim > cap {
                continue;
            }
            let v = self.assignment.get(&id).ok_or_else(|| {
                Error::Validation(format!(
                    "no value on simplex {}",
                    self.source.simplex_name(id)
                ))
            })?;
            if self.target.ref_dim(v) != dim {
                return Err(Error::Validation(format!(
                    "value of {} has dimension {} instead of {}",
                    self.source.simplex_name(id),
                    self.target.ref_dim(v),
                    dim
                )));
            }
            if dim >= 1 {
                let r = SimplexRef::nondeg(id);
                let fv = self.eval(&r)?;
                for k in 0..=dim {
                    let a = self.eval(&self.source.apply(&r, Operator::Face(k))?)?;
                    let b = self.target.apply(&fv, Operator::Face(k))?;
                    if a != b {
                        return Err(Error::Validation(format!(
                            "map does not commute with ∂{k} on {}",
                            self.source.simplex_name(id)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// g ∘ self, requiring self.target and g.source to be the same
    /// presentation (checked by name-compatible simplex set).
    pub fn compose(&self, g: &SimplicialMap) -> Result<SimplicialMap> {
        let assignment = self
            .assignment
            .iter()
            .map(|(&id, v)| {
                // Rebase v into g.source by name, then evaluate.
                let base = g
                    .source
                    .lookup(self.target.simplex_name(v.base))
                    .ok_or_else(|| {
                        Error::Parameter(format!(
                            "composition mismatch: {} missing in {}",
                            self.target.simplex_name(v.base),
                            g.source.name()
                        ))
                    })?;
                let rebased = SimplexRef {
                    base,
                    word: v.word.clone(),
                };
                Ok((id, g.eval(&rebased)?))
            })
            .collect::<Result<BTreeMap<_, _>>>()?;
        SimplicialMap::new(self.source.clone(), g.target.clone(), assignment)
    }

    /// Level-wise injectivity up to the shared cap; on failure reports the
    /// level and a colliding pair of simplices.
    pub fn is_levelwise_injective(&self) -> Result<InjectivityVerdict> {
        for n in 0..=self.shared_cap() {
            let mut seen: HashMap<SimplexRef, SimplexRef> = HashMap::new();
            for r in self.source.simplices_at(n)? {
                let v = self.eval(&r)?;
                if let Some(prev) = seen.get(&v) {
                    return Ok(InjectivityVerdict::Fails {
                        level: n,
                        first: self.source.ref_name(prev),
                        second: self.source.ref_name(&r),
                    });
                }
                seen.insert(v, r);
            }
        }
        Ok(InjectivityVerdict::Injective)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InjectivityVerdict {
    Injective,
    Fails {
        level: usize,
        first: String,
        second: String,
    },
}

impl InjectivityVerdict {
    pub fn is_injective(&self) -> bool {
        matches!(self, InjectivityVerdict::Injective)
    }
}

/// Searches for an isomorphism of presentations: a dimension-preserving
/// bijection of non-degenerate simplices commuting with all faces.
/// Backtracks dimension by dimension.
pub fn find_sset_isomorphism(
    x: &SimplicialSet,
    y: &SimplicialSet,
) -> Result<Option<SimplicialMap>> {
    if x.dim_cap() != y.dim_cap() || x.nondeg_counts() != y.nondeg_counts() {
        return Ok(None);
    }
    let order: Vec<SimplexId> = (0..=x.dim_cap())
        .flat_map(|d| x.nondeg_at(d).to_vec())
        .collect();
    let mut assignment: BTreeMap<SimplexId, SimplexRef> = BTreeMap::new();
    let mut used: HashMap<SimplexId, SimplexId> = HashMap::new();

    fn faces_match(
        x: &SimplicialSet,
        y: &SimplicialSet,
        assignment: &BTreeMap<SimplexId, SimplexRef>,
        id: SimplexId,
        cand: SimplexId,
    ) -> bool {
        let dim = x.simplex_dim(id);
        if dim == 0 {
            return true;
        }
        for k in 0..=dim {
            let xf = &x.faces_of(id)[k];
            let yf = y
                .apply(&SimplexRef::nondeg(cand), Operator::Face(k))
                .expect("face in range");
            match assignment.get(&xf.base) {
                Some(img) => {
                    // f(x-face) must equal the candidate's face.
                    let mut letters = xf.word.letters().to_vec();
                    letters.extend_from_slice(img.word.letters());
                    let word = normalize_word(&letters, y.simplex_dim(img.base))
                        .expect("valid word");
                    if img.base != yf.base || word != yf.word {
                        return false;
                    }
                }
                None => return false,
            }
        }
        true
    }

    fn rec(
        x: &SimplicialSet,
        y: &SimplicialSet,
        order: &[SimplexId],
        pos: usize,
        assignment: &mut BTreeMap<SimplexId, SimplexRef>,
        used: &mut HashMap<SimplexId, SimplexId>,
    ) -> bool {
        if pos == order.len() {
            return true;
        }
        let id = order[pos];
        let dim = x.simplex_dim(id);
        for &cand in y.nondeg_at(dim) {
            if used.contains_key(&cand) {
                continue;
            }
            if !faces_match(x, y, assignment, id, cand) {
                continue;
            }
            assignment.insert(id, SimplexRef::nondeg(cand));
            used.insert(cand, id);
            if rec(x, y, order, pos + 1, assignment, used) {
                return true;
            }
            assignment.remove(&id);
            used.remove(&cand);
        }
        false
    }

    if rec(x, y, &order, 0, &mut assignment, &mut used) {
        Ok(Some(SimplicialMap::new(x.clone(), y.clone(), assignment)?))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simpset::standard::{make_standard, StandardKind};

    #[test]
    fn identity_is_injective() {
        let d2 = make_standard(StandardKind::Delta, 2).unwrap();
        let id = SimplicialMap::identity(&d2);
        assert!(id.is_levelwise_injective().unwrap().is_injective());
    }

    #[test]
    fn collapse_to_point_fails_at_level_zero() {
        let d1 = make_standard(StandardKind::Delta, 1).unwrap();
        let d0 = make_standard(StandardKind::Delta, 0).unwrap().with_cap(1).unwrap();
        let pt = d0.lookup("0").unwrap();
        let mut assignment = BTreeMap::new();
        for id in d1.all_nondeg() {
            let dim = d1.simplex_dim(id);
            let word = normalize_word(&vec![0; dim], 0).unwrap();
            assignment.insert(
                id,
                SimplexRef {
                    base: pt,
                    word,
                },
            );
        }
        let f = SimplicialMap::new(d1, d0, assignment).unwrap();
        match f.is_levelwise_injective().unwrap() {
            InjectivityVerdict::Fails { level, .. } => assert_eq!(level, 0),
            _ => panic!("expected failure"),
        }
    }

    #[test]
    fn delta2_is_isomorphic_to_itself_but_not_to_horn() {
        let d2 = make_standard(StandardKind::Delta, 2).unwrap();
        assert!(find_sset_isomorphism(&d2, &d2).unwrap().is_some());
        let h = make_standard(StandardKind::Horn(1), 2).unwrap();
        assert!(find_sset_isomorphism(&d2, &h).unwrap().is_none());
    }
}
