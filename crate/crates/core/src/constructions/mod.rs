//! The named objects of the development: the walking retraction and its
//! weak image, the one-object-gluing category, free-arrow gluing, the
//! marked-nerve replacement and its filtration, cones with retracts, the
//! localization tables, and hammock localization.

pub mod cone;
pub mod dinfty;
pub mod hammock;
pub mod table;

pub use cone::{cone_with_retracts, cone_with_retracts_full};
pub use dinfty::{d_filtration, dinfty, dinfty_iso, FiltrationStage};
pub use dinfty::verify_filtration_square;
pub use hammock::{
    hammock_label, hammock_mapping, hammock_pi0, reduce_hammock, Dir, Hammock, HammockComplex,
    HammockLabel,
};
pub use table::localization_table;

use crate::error::{Error, Result};
use crate::fincat::{CatBuilder, FinCategory, ObjId};
use crate::simpset::sset::{SimplexRef, SimplicialSet, SsetBuilder};
use crate::simpset::word::DegeneracyWord;

pub use crate::fincat::ret_category;

/// A category with a chosen object.
#[derive(Debug, Clone)]
pub struct MarkedCategory {
    pub category: FinCategory,
    pub mark: ObjId,
}

impl MarkedCategory {
    pub fn new(category: FinCategory, mark_name: &str) -> Result<MarkedCategory> {
        let mark = category.lookup_object(mark_name).ok_or_else(|| {
            Error::Parameter(format!("no object named {mark_name}"))
        })?;
        Ok(MarkedCategory { category, mark })
    }
}

/// The truncated nerve of the walking retraction.
pub fn ret_nerve(dim_cap: usize) -> Result<SimplicialSet> {
    crate::fincat::nerve(&ret_category(), dim_cap)
}

/// The image of the defining 2-simplex of Ret: vertices X and Y, the edges
/// i and r, and one 2-simplex whose long edge is the degenerate Id_Y.
pub fn wret() -> Result<SimplicialSet> {
    let mut b = SsetBuilder::new("wRet", 2);
    let x = b.add_simplex("X", 0)?;
    let y = b.add_simplex("Y", 0)?;
    let i = b.add_simplex("i", 1)?;
    let r = b.add_simplex("r", 1)?;
    let t = b.add_simplex("i|r", 2)?;
    b.set_faces(i, vec![SimplexRef::nondeg(x), SimplexRef::nondeg(y)]);
    b.set_faces(r, vec![SimplexRef::nondeg(y), SimplexRef::nondeg(x)]);
    b.set_faces(
        t,
        vec![
            SimplexRef::nondeg(r),
            SimplexRef {
                base: y,
                word: DegeneracyWord::new(vec![0])?,
            },
            SimplexRef::nondeg(i),
        ],
    );
    b.finish()
}

/// Gluing a free arrow at the marked object: objects gain `x'`, morphisms
/// gain a copy `~f : a → x'` of every `f : a → x`, and nothing leaves `x'`
/// except its identity.
pub fn d_category(m: &MarkedCategory) -> Result<FinCategory> {
    let c = &m.category;
    let x = m.mark;
    let prime = format!("{}'", c.object_name(x));
    let mut b = CatBuilder::new(format!("D({},{})", c.name, c.object_name(x)));
    for o in c.objects() {
        b.add_object(c.object_name(o))?;
    }
    let prime_obj = b.add_object_with_identity(&prime)?;
    for mo in c.morphisms() {
        let d = c.morphism(mo);
        let src = b.lookup_object(c.object_name(d.src)).unwrap();
        let dst = b.lookup_object(c.object_name(d.dst)).unwrap();
        b.add_morphism(&d.name, src, dst)?;
    }
    for o in c.objects() {
        b.set_identity(
            b.lookup_object(c.object_name(o)).unwrap(),
            b.lookup_morphism(&c.morphism(c.identity(o)).name).unwrap(),
        );
    }
    // Barred copies of morphisms into the mark.
    for mo in c.morphisms() {
        let d = c.morphism(mo);
        if d.dst == x {
            let src = b.lookup_object(c.object_name(d.src)).unwrap();
            b.add_morphism(format!("~{}", d.name), src, prime_obj)?;
        }
    }
    // Composition: the old table, plus ~f ∘ g = ~(f ∘ g).
    for g in c.morphisms() {
        for f in c.morphisms() {
            if c.morphism(f).dst == c.morphism(g).src {
                let gf = c.compose(g, f)?;
                b.set_composite(
                    b.lookup_morphism(&c.morphism(g).name).unwrap(),
                    b.lookup_morphism(&c.morphism(f).name).unwrap(),
                    b.lookup_morphism(&c.morphism(gf).name).unwrap(),
                );
            }
        }
    }
    for f in c.morphisms() {
        if c.morphism(f).dst == x {
            let barred = b.lookup_morphism(&format!("~{}", c.morphism(f).name)).unwrap();
            for g in c.morphisms() {
                if c.morphism(g).dst == c.morphism(f).src {
                    let fg = c.compose(f, g)?;
                    b.set_composite(
                        barred,
                        b.lookup_morphism(&c.morphism(g).name).unwrap(),
                        b.lookup_morphism(&format!("~{}", c.morphism(fg).name)).unwrap(),
                    );
                }
            }
        }
    }
    b.finish()
}

/// Iterates `d_category` over the named objects in the given order.
pub fn glue_free_arrows_in_order(c: &FinCategory, order: &[String]) -> Result<FinCategory> {
    let mut current = c.clone();
    for name in order {
        let marked = MarkedCategory::new(current, name)?;
        current = d_category(&marked)?;
    }
    current.name = format!("D_{}", c.name);
    Ok(current)
}

/// Iterates `d_category` over every object of the input in name order.
/// The result has twice as many objects; the outcome is independent of the
/// order up to isomorphism.
pub fn glue_free_arrows(c: &FinCategory) -> Result<FinCategory> {
    let mut names: Vec<String> = c.objects().map(|o| c.object_name(o).to_string()).collect();
    names.sort();
    glue_free_arrows_in_order(c, &names)
}

/// Object name used for the cone point.
pub const CONE_POINT: &str = "-inf";

/// Adds an initial object `-inf` with a unique arrow `h.<a>` to every other
/// object; composition is forced by the singleton hom-sets from the cone
/// point.
pub fn cone_category(c: &FinCategory) -> Result<FinCategory> {
    let mut b = CatBuilder::new(format!("{}^<", c.name));
    let inf = b.add_object_with_identity(CONE_POINT)?;
    for o in c.objects() {
        b.add_object(c.object_name(o))?;
    }
    for mo in c.morphisms() {
        let d = c.morphism(mo);
        b.add_morphism(
            &d.name,
            b.lookup_object(c.object_name(d.src)).unwrap(),
            b.lookup_object(c.object_name(d.dst)).unwrap(),
        )?;
    }
    for o in c.objects() {
        b.set_identity(
            b.lookup_object(c.object_name(o)).unwrap(),
            b.lookup_morphism(&c.morphism(c.identity(o)).name).unwrap(),
        );
    }
    for o in c.objects() {
        b.add_morphism(
            format!("h.{}", c.object_name(o)),
            inf,
            b.lookup_object(c.object_name(o)).unwrap(),
        )?;
    }
    for g in c.morphisms() {
        for f in c.morphisms() {
            if c.morphism(f).dst == c.morphism(g).src {
                let gf = c.compose(g, f)?;
                b.set_composite(
                    b.lookup_morphism(&c.morphism(g).name).unwrap(),
                    b.lookup_morphism(&c.morphism(f).name).unwrap(),
                    b.lookup_morphism(&c.morphism(gf).name).unwrap(),
                );
            }
        }
    }
    for o in c.objects() {
        let h = b.lookup_morphism(&format!("h.{}", c.object_name(o))).unwrap();
        for f in c.morphisms() {
            if c.morphism(f).src == o {
                let hd = b
                    .lookup_morphism(&format!("h.{}", c.object_name(c.morphism(f).dst)))
                    .unwrap();
                b.set_composite(b.lookup_morphism(&c.morphism(f).name).unwrap(), h, hd);
            }
        }
    }
    b.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{find_isomorphism, poset_category, terminal_category, validate_category, Poset};

    #[test]
    fn wret_counts_and_validity() {
        let w = wret().unwrap();
        assert_eq!(w.nondeg_counts(), vec![2, 2, 1]);
    }

    #[test]
    fn ret_nerve_counts() {
        let n = ret_nerve(2).unwrap();
        assert_eq!(n.nondeg_counts(), vec![2, 3, 5]);
    }

    #[test]
    fn d_of_terminal_is_arrow_poset() {
        let m = MarkedCategory::new(terminal_category(), "pt").unwrap();
        let d = d_category(&m).unwrap();
        assert!(validate_category(&d).is_valid());
        let arrow = poset_category(&Poset::chain(2)).unwrap();
        assert!(find_isomorphism(&d, &arrow).unwrap().is_some());
    }

    #[test]
    fn d_homs_match_the_description() {
        // C = {a→b}, marked at b: 3 objects, hom(a, b') a singleton,
        // nothing out of b'.
        let c = poset_category(&Poset::new(vec!["a".into(), "b".into()], &[(0, 1)]).unwrap())
            .unwrap();
        let m = MarkedCategory::new(c, "b").unwrap();
        let d = d_category(&m).unwrap();
        assert_eq!(d.object_count(), 3);
        let (a, bp) = (
            d.lookup_object("a").unwrap(),
            d.lookup_object("b'").unwrap(),
        );
        assert_eq!(d.hom(a, bp).len(), 1);
        for o in d.objects() {
            if o != bp {
                assert!(d.hom(bp, o).is_empty(), "nothing out of the prime");
            }
        }
    }

    #[test]
    fn glue_doubles_objects() {
        let c = poset_category(&Poset::chain(2)).unwrap();
        let g = glue_free_arrows(&c).unwrap();
        assert!(validate_category(&g).is_valid());
        assert_eq!(g.object_count(), 2 * c.object_count());
    }

    #[test]
    fn glue_of_discrete_two_is_two_arrows() {
        let mut b = CatBuilder::new("disc2");
        b.add_object_with_identity("a").unwrap();
        b.add_object_with_identity("b").unwrap();
        let c = b.finish().unwrap();
        let g = glue_free_arrows(&c).unwrap();
        assert_eq!(g.object_count(), 4);
        // Two disjoint arrows: each unprimed object maps only to its prime.
        let a = g.lookup_object("a").unwrap();
        let bp = g.lookup_object("b'").unwrap();
        assert!(g.hom(a, bp).is_empty());
        assert_eq!(g.hom(a, g.lookup_object("a'").unwrap()).len(), 1);
    }

    #[test]
    fn cone_category_has_initial_point() {
        let c = poset_category(&Poset::chain(2)).unwrap();
        let k = cone_category(&c).unwrap();
        assert!(validate_category(&k).is_valid());
        let inf = k.lookup_object(CONE_POINT).unwrap();
        for o in k.objects() {
            assert_eq!(k.hom(inf, o).len(), 1);
        }
    }

    #[test]
    fn glue_order_does_not_matter_up_to_iso() {
        let c = poset_category(&Poset::chain(2)).unwrap();
        let fwd = glue_free_arrows_in_order(&c, &["0".into(), "1".into()]).unwrap();
        let bwd = glue_free_arrows_in_order(&c, &["1".into(), "0".into()]).unwrap();
        assert!(find_isomorphism(&fwd, &bwd).unwrap().is_some());
    }
}
