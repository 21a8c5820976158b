//! The level-wise injectivity criterion for pushouts of the shape
//! `(A × Δⁿ) ⊔_{A × Λⁿᵢ} X → Y`.
//!
//! Four hypotheses are evaluated by enumeration, and the conclusion is
//! evaluated independently through the generic pushout plus the level-wise
//! injectivity check, so the two sides can disagree when a hypothesis is
//! violated.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::simpset::colimit::{discrete_product, inclusion_by_name, pushout};
use crate::simpset::map::{InjectivityVerdict, SimplicialMap};
use crate::simpset::sset::{SimplexRef, SimplicialSet};
use crate::simpset::standard::{make_standard, subset_name, StandardKind};

/// The commutative square of the criterion, with the product objects built
/// by [`HornSquare::build`] so callers can address copies by label and
/// vertex subset (`<label>*<subset>`).
pub struct HornSquare {
    pub labels: Vec<String>,
    pub n: usize,
    pub i: usize,
    /// `A × Λⁿᵢ`
    pub horn_part: SimplicialSet,
    /// `A × Δⁿ`
    pub simplex_part: SimplicialSet,
    /// top map `A × Λⁿᵢ → X`
    pub top: SimplicialMap,
    /// right map `f : X ↪ Y`
    pub f: SimplicialMap,
    /// bottom map `j : A × Δⁿ → Y`
    pub j: SimplicialMap,
}

impl HornSquare {
    /// Builds the two product objects for a label set; `top` and `j` are
    /// supplied afterwards by the caller.
    pub fn build_parts(
        labels: &[String],
        n: usize,
        i: usize,
        cap: usize,
    ) -> Result<(SimplicialSet, SimplicialSet)> {
        let horn = make_standard(StandardKind::Horn(i), n)?.with_cap(cap)?;
        let delta = make_standard(StandardKind::Delta, n)?.with_cap(cap)?;
        Ok((
            discrete_product(labels, &horn)?,
            discrete_product(labels, &delta)?,
        ))
    }

    fn check_commutes(&self) -> Result<()> {
        let incl = inclusion_by_name(&self.horn_part, &self.simplex_part)?;
        let via_x = self.top.compose(&self.f)?;
        let via_j = incl.compose(&self.j)?;
        for (id, v) in &via_x.assignment {
            if via_j.assignment.get(id) != Some(v) {
                return Err(Error::Parameter(format!(
                    "square does not commute at {}",
                    self.horn_part.simplex_name(*id)
                )));
            }
        }
        Ok(())
    }

    /// The derived map `g = j ∘ (Id × δᵢ) : A × Δ^{n-1} → Y`, returned as
    /// the list of values of its top cells together with their sources.
    fn g_top_values(&self) -> Result<Vec<(String, SimplexRef)>> {
        // The (n-1)-face of Δⁿ opposite vertex i has vertex set
        // {0..n} \ {i}; the top nondegenerate simplices of A × Δ^{n-1} map
        // to the restriction of j to that subset, per label.
        let face: Vec<usize> = (0..=self.n).filter(|&v| v != self.i).collect();
        let face_name = subset_name(&face, self.n);
        self.labels
            .iter()
            .map(|label| {
                let id = self
                    .j
                    .source
                    .lookup(&format!("{label}*{face_name}"))
                    .ok_or_else(|| {
                        Error::ConstructionBug(format!("missing face copy for {label}"))
                    })?;
                Ok((label.clone(), self.j.eval(&SimplexRef::nondeg(id))?))
            })
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct CriterionVerdict {
    /// (1) f level-wise injective, (2) g injective on non-degenerate
    /// (n-1)-simplices, (3) the two image-disjointness conditions,
    /// (4) j_n and g_{n-1} preserve non-degeneracy.
    pub hypotheses: [bool; 4],
    pub hypothesis_witness: Option<String>,
    /// Level-wise injectivity of the induced map out of the pushout,
    /// evaluated independently of the hypotheses.
    pub conclusion: bool,
    pub conclusion_witness: Option<String>,
}

impl CriterionVerdict {
    pub fn all_hypotheses(&self) -> bool {
        self.hypotheses.iter().all(|&b| b)
    }
}

pub fn injectivity_criterion(square: &HornSquare) -> Result<CriterionVerdict> {
    square.check_commutes()?;
    let y = &square.f.target;
    let mut witness = None;

    // (1) f is a level-wise injection.
    let h1 = match square.f.is_levelwise_injective()? {
        InjectivityVerdict::Injective => true,
        InjectivityVerdict::Fails { level, first, second } => {
            witness.get_or_insert(format!("f collides at level {level}: {first} = {second}"));
            false
        }
    };

    // g on non-degenerate (n-1)-simplices: one top cell per label.
    let g_tops = square.g_top_values()?;
    let mut seen = HashSet::new();
    let mut h2 = true;
    for (label, v) in &g_tops {
        if !seen.insert(v.clone()) {
            h2 = false;
            witness.get_or_insert(format!("g collides on copy {label}"));
        }
    }

    // (4) j_n and g_{n-1} preserve non-degeneracy.
    let mut h4 = true;
    for (label, v) in &g_tops {
        if !v.is_nondeg() {
            h4 = false;
            witness.get_or_insert(format!("g degenerates the face copy of {label}"));
        }
    }
    let top_cell = subset_name(&(0..=square.n).collect::<Vec<_>>(), square.n);
    let mut j_tops = Vec::new();
    for label in &square.labels {
        let id = square
            .j
            .source
            .lookup(&format!("{label}*{top_cell}"))
            .ok_or_else(|| Error::ConstructionBug("missing top cell".to_string()))?;
        let v = square.j.eval(&SimplexRef::nondeg(id))?;
        if !v.is_nondeg() {
            h4 = false;
            witness.get_or_insert(format!("j degenerates the top cell of {label}"));
        }
        j_tops.push(v);
    }

    // (3) Im(g^nd_{n-1}) ∩ Im(f_{n-1}) = ∅ and Im(j^nd_n) ∩ Im(f_n) = ∅.
    let cap = square.f.source.dim_cap().min(y.dim_cap());
    let mut h3 = true;
    if square.n >= 1 && square.n - 1 <= cap {
        let f_im: HashSet<SimplexRef> = square
            .f
            .source
            .simplices_at(square.n - 1)?
            .into_iter()
            .map(|r| square.f.eval(&r))
            .collect::<Result<_>>()?;
        for (label, v) in &g_tops {
            if f_im.contains(v) {
                h3 = false;
                witness.get_or_insert(format!(
                    "image of g on copy {label} meets the image of f"
                ));
            }
        }
    }
    if square.n <= cap {
        let f_im: HashSet<SimplexRef> = square
            .f
            .source
            .simplices_at(square.n)?
            .into_iter()
            .map(|r| square.f.eval(&r))
            .collect::<Result<_>>()?;
        for (pos, v) in j_tops.iter().enumerate() {
            if f_im.contains(v) {
                h3 = false;
                witness.get_or_insert(format!(
                    "image of j on copy {} meets the image of f",
                    square.labels[pos]
                ));
            }
        }
    }

    // Conclusion, via the actual pushout and the injectivity check.
    let incl = inclusion_by_name(&square.horn_part, &square.simplex_part)?;
    let po = pushout(&incl, &square.top)?;
    let induced = crate::simpset::colimit::pushout_induced(&po, &square.j, &square.f)?;
    let (conclusion, conclusion_witness) = match induced.is_levelwise_injective()? {
        InjectivityVerdict::Injective => (true, None),
        InjectivityVerdict::Fails { level, first, second } => (
            false,
            Some(format!("pushout map collides at level {level}: {first} = {second}")),
        ),
    };

    Ok(CriterionVerdict {
        hypotheses: [h1, h2, h3, h4],
        hypothesis_witness: witness,
        conclusion,
        conclusion_witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    /// A = {*}, n = 1, i = 0: glue the edge of Δ¹ onto ∂Δ¹ at vertex 0,
    /// while j hits the whole of Δ¹ = Y. Hypothesis (3) fails because the
    /// g-image vertex 1 is already in the image of f, and so does the
    /// conclusion.
    #[test]
    fn seeded_overlap_violates_hypothesis_three() {
        let labels = vec!["a".to_string()];
        let (horn_part, simplex_part) = HornSquare::build_parts(&labels, 1, 0, 1).unwrap();
        let x = make_standard(StandardKind::Boundary, 1).unwrap();
        let y = make_standard(StandardKind::Delta, 1).unwrap();
        // Λ¹₀ is the single vertex {0}; commutativity forces its image.
        let mut top_assignment = BTreeMap::new();
        top_assignment.insert(
            horn_part.lookup("a*0").unwrap(),
            SimplexRef::nondeg(x.lookup("0").unwrap()),
        );
        let top = SimplicialMap::new(horn_part.clone(), x.clone(), top_assignment).unwrap();
        let f = inclusion_by_name(&x, &y).unwrap();
        let j = inclusion_strip_label(&simplex_part, &y);
        let square = HornSquare {
            labels,
            n: 1,
            i: 0,
            horn_part,
            simplex_part,
            top,
            f,
            j,
        };
        let v = injectivity_criterion(&square).unwrap();
        assert!(v.hypotheses[0], "f injective");
        assert!(!v.hypotheses[2], "overlap must be flagged");
        assert!(!v.conclusion, "conclusion fails too");
    }

    /// A = ∅: hypotheses hold vacuously, conclusion = injectivity of f.
    #[test]
    fn empty_label_set_reduces_to_f() {
        let labels: Vec<String> = Vec::new();
        let (horn_part, simplex_part) = HornSquare::build_parts(&labels, 2, 1, 2).unwrap();
        let x = make_standard(StandardKind::Boundary, 2).unwrap();
        let y = make_standard(StandardKind::Delta, 2).unwrap();
        let f = inclusion_by_name(&x, &y).unwrap();
        let top = SimplicialMap::new(horn_part.clone(), x.clone(), BTreeMap::new()).unwrap();
        let j = SimplicialMap::new(simplex_part.clone(), y.clone(), BTreeMap::new()).unwrap();
        let square = HornSquare {
            labels,
            n: 2,
            i: 1,
            horn_part,
            simplex_part,
            top,
            f,
            j,
        };
        let v = injectivity_criterion(&square).unwrap();
        assert!(v.all_hypotheses());
        assert!(v.conclusion);
    }

    fn inclusion_strip_label(part: &SimplicialSet, target: &SimplicialSet) -> SimplicialMap {
        let assignment = part
            .all_nondeg()
            .map(|id| {
                let name = part.simplex_name(id);
                let inner = name.split_once('*').unwrap().1;
                (id, SimplexRef::nondeg(target.lookup(inner).unwrap()))
            })
            .collect();
        SimplicialMap::new(part.clone(), target.clone(), assignment).unwrap()
    }
}
