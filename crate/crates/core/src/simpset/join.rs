//! Left cone `Δ⁰ ⋆ K`: an apex with a unique edge to every vertex of `K`,
//! one apex-joined simplex per simplex of `K`, and `K` itself.

use crate::error::Result;
use crate::simpset::map::SimplicialMap;
use crate::simpset::sset::{SimplexRef, SimplicialSet, SsetBuilder};
use crate::simpset::colimit::inclusion_by_name;
use crate::simpset::word::DegeneracyWord;

pub const APEX: &str = "<apex>";

fn cone_name(inner: &str) -> String {
    format!("<{inner}")
}

/// `K^◁ = Δ⁰ ⋆ K` with cap `K.dim_cap + 1`. Level counts satisfy
/// `|(K^◁)_n| = 1 + Σ_{j=0}^{n} |K_j|`.
pub fn join_point(k: &SimplicialSet) -> Result<SimplicialSet> {
    let cap = k.dim_cap() + 1;
    let mut b = SsetBuilder::new(format!("cone({})", k.name()), cap);
    b.add_simplex(APEX, 0)?;
    for id in k.all_nondeg() {
        b.add_simplex(k.simplex_name(id), k.simplex_dim(id))?;
    }
    for id in k.all_nondeg() {
        b.add_simplex(cone_name(k.simplex_name(id)), k.simplex_dim(id) + 1)?;
    }
    // Faces of K's own simplices are unchanged.
    for id in k.all_nondeg() {
        if k.simplex_dim(id) >= 1 {
            let new = b.lookup(k.simplex_name(id)).unwrap();
            let faces = k
                .faces_of(id)
                .iter()
                .map(|f| SimplexRef {
                    base: b.lookup(k.simplex_name(f.base)).unwrap(),
                    word: f.word.clone(),
                })
                .collect();
            b.set_faces(new, faces);
        }
    }
    // Apex-joined simplex over σ of dim d: ∂_0 = σ, ∂_k = apex ⋆ ∂_{k-1} σ,
    // where the join shifts degeneracy letters up by one.
    for id in k.all_nondeg() {
        let d = k.simplex_dim(id);
        let new = b.lookup(&cone_name(k.simplex_name(id))).unwrap();
        let mut faces = Vec::with_capacity(d + 2);
        faces.push(SimplexRef::nondeg(b.lookup(k.simplex_name(id)).unwrap()));
        if d == 0 {
            faces.push(SimplexRef::nondeg(b.lookup(APEX).unwrap()));
        } else {
            for kf in 0..=d {
                let f = &k.faces_of(id)[kf];
                let shifted: Vec<usize> =
                    f.word.letters().iter().map(|&j| j + 1).collect();
                faces.push(SimplexRef {
                    base: b.lookup(&cone_name(k.simplex_name(f.base))).unwrap(),
                    word: DegeneracyWord::new(shifted)?,
                });
            }
        }
        b.set_faces(new, faces);
    }
    let mut out = b.finish()?;
    out.truncated = k.truncated;
    Ok(out)
}

/// The inclusion `K → K^◁`.
pub fn cone_inclusion(k: &SimplicialSet, cone: &SimplicialSet) -> Result<SimplicialMap> {
    inclusion_by_name(k, cone)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simpset::map::find_sset_isomorphism;
    use crate::simpset::standard::{make_standard, StandardKind};

    #[test]
    fn cone_on_point_is_edge() {
        let d0 = make_standard(StandardKind::Delta, 0).unwrap();
        let c = join_point(&d0).unwrap();
        let d1 = make_standard(StandardKind::Delta, 1).unwrap();
        assert_eq!(c.nondeg_counts(), vec![2, 1]);
        assert!(find_sset_isomorphism(&c, &d1).unwrap().is_some());
    }

    #[test]
    fn cone_on_two_points_is_wedge() {
        let b1 = make_standard(StandardKind::Boundary, 1).unwrap();
        let c = join_point(&b1).unwrap();
        assert_eq!(c.nondeg_counts(), vec![3, 2, 0]);
    }

    #[test]
    fn level_count_formula() {
        // |(K^◁)_n| = 1 + Σ_{j=0}^{n} |K_j| for n within K's cap.
        let k = make_standard(StandardKind::Delta, 2).unwrap();
        let c = join_point(&k).unwrap();
        for n in 0..=k.dim_cap() {
            let expected: usize =
                1 + (0..=n).map(|j| k.level_count(j).unwrap()).sum::<usize>();
            assert_eq!(c.level_count(n).unwrap(), expected, "level {n}");
        }
    }

    #[test]
    fn apex_has_unique_edge_to_each_vertex() {
        let k = make_standard(StandardKind::Delta, 2).unwrap();
        let c = join_point(&k).unwrap();
        use crate::simpset::sset::Operator;
        let apex = c.lookup(APEX).unwrap();
        for v in ["0", "1", "2"] {
            let mut count = 0;
            for e in c.nondeg_at(1) {
                let r = SimplexRef::nondeg(*e);
                let d0 = c.apply(&r, Operator::Face(0)).unwrap();
                let d1 = c.apply(&r, Operator::Face(1)).unwrap();
                if d1.base == apex && c.simplex_name(d0.base) == v && d0.is_nondeg() {
                    count += 1;
                }
            }
            assert_eq!(count, 1, "vertex {v}");
        }
    }
}
