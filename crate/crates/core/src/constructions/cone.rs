//! The cone with retracts on a poset: glue a copy of the retraction nerve
//! onto each cone edge of the poset's cone, so every arrow out of the cone
//! point acquires a retraction. The cone edge is glued to the section edge
//! (the one pointing out of Y), so the cone point lands on Y.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::fincat::{nerve, poset_category, Poset};
use crate::simpset::colimit::{discrete_product, map_from_copies, pushout, Pushout};
use crate::simpset::join::{join_point, APEX};
use crate::simpset::map::SimplicialMap;
use crate::simpset::sset::{SimplexRef, SimplicialSet};
use crate::simpset::standard::{make_standard, StandardKind};

use super::ret_nerve;

/// `I^◁ ⊔_{Ob(I)×Δ¹} (Ob(I)×N(Ret))` at the given cap. Also returns the
/// pushout legs for inspecting where the retraction cells land.
pub fn cone_with_retracts_full(i: &Poset, dim_cap: usize) -> Result<Pushout> {
    let n_i = nerve(&poset_category(i)?, dim_cap.saturating_sub(1))?;
    let i_cone = join_point(&n_i)?.with_cap(dim_cap)?;
    let rets = ret_nerve(dim_cap)?;
    let labels: Vec<String> = i.elements.clone();
    let d1 = make_standard(StandardKind::Delta, 1)?.with_cap(dim_cap)?;
    let edges = discrete_product(&labels, &d1)?;
    let rets_part = discrete_product(&labels, &rets)?;

    // Copy i of Δ¹ picks the cone edge -inf → i.
    let to_cone = map_from_copies(&labels, &d1, &edges, &i_cone, |label| {
        let mut assignment = BTreeMap::new();
        assignment.insert(
            d1.lookup("0").unwrap(),
            SimplexRef::nondeg(i_cone.lookup(APEX).unwrap()),
        );
        assignment.insert(
            d1.lookup("1").unwrap(),
            SimplexRef::nondeg(i_cone.lookup(label).unwrap()),
        );
        assignment.insert(
            d1.lookup("01").unwrap(),
            SimplexRef::nondeg(i_cone.lookup(&format!("<{label}")).unwrap()),
        );
        SimplicialMap::new(d1.clone(), i_cone.clone(), assignment)
    })?;

    // Copy i of Δ¹ picks the section edge i : Y → X of the i-th retraction
    // copy: the cone point is identified with Y.
    let to_rets = map_from_copies(&labels, &d1, &edges, &rets_part, |label| {
        let mut assignment = BTreeMap::new();
        assignment.insert(
            d1.lookup("0").unwrap(),
            SimplexRef::nondeg(rets_part.lookup(&format!("{label}*Y")).unwrap()),
        );
        assignment.insert(
            d1.lookup("1").unwrap(),
            SimplexRef::nondeg(rets_part.lookup(&format!("{label}*X")).unwrap()),
        );
        assignment.insert(
            d1.lookup("01").unwrap(),
            SimplexRef::nondeg(rets_part.lookup(&format!("{label}*i")).unwrap()),
        );
        SimplicialMap::new(d1.clone(), rets_part.clone(), assignment)
    })?;

    pushout(&to_cone, &to_rets)
}

/// The underlying simplicial set of the cone with retracts.
pub fn cone_with_retracts(i: &Poset, dim_cap: usize) -> Result<SimplicialSet> {
    Ok(cone_with_retracts_full(i, dim_cap)?.object)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simpset::map::find_sset_isomorphism;
    use crate::simpset::sset::Operator;

    #[test]
    fn point_gives_the_retraction_nerve() {
        // Gluing along the whole edge degenerates the pushout.
        let l = cone_with_retracts(&Poset::point(), 3).unwrap();
        let r = ret_nerve(3).unwrap();
        assert!(find_sset_isomorphism(&l, &r).unwrap().is_some());
    }

    #[test]
    fn chain_vertex_census() {
        // Each retraction copy's Y is identified with the cone point and
        // its X with the poset vertex: 3 vertices for the 2-chain.
        let l = cone_with_retracts(&Poset::chain(2), 3).unwrap();
        assert_eq!(l.nondeg_at(0).len(), 3);
    }

    #[test]
    fn retraction_triangles_survive() {
        let po = cone_with_retracts_full(&Poset::chain(2), 3).unwrap();
        for label in ["0", "1"] {
            let tri = po
                .leg_c
                .source
                .lookup(&format!("{label}*i|r"))
                .unwrap();
            let img = po.leg_c.eval(&SimplexRef::nondeg(tri)).unwrap();
            assert!(img.is_nondeg(), "triangle of copy {label} collapsed");
            // Its long edge is the degenerate identity at the cone point.
            let d1 = po
                .object
                .apply(&img, Operator::Face(1))
                .unwrap();
            assert!(!d1.is_nondeg());
        }
    }
}
