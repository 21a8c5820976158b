//! The explicit presentation of the cone with retracts on a poset:
//! objects are the poset elements plus the cone point, hom-sets carry the
//! through-the-point maps `q_k`, the projections `g_k`, the unique sections
//! `h_i`, and the poset arrows `b_ij`. The five defining laws are
//!
//!   q_p q_k = q_k,  g_p q_k = g_k,  q_k b_ij = q_k,  b_ij q_k = q_k,
//!   h_i g_k = q_k,
//!
//! and the remaining cells are forced; each forced cell carries a note.

use crate::error::{Error, Result};
use crate::fincat::{CatBuilder, FinCategory, Poset};

use super::CONE_POINT;

fn q_name(k: &str, i: &str, j: &str) -> String {
    format!("q{k}.{i}.{j}")
}
fn g_name(k: &str, i: &str) -> String {
    format!("g{k}.{i}")
}
fn h_name(i: &str) -> String {
    format!("h.{i}")
}
fn b_name(i: &str, j: &str) -> String {
    format!("b.{i}.{j}")
}

/// Morphism label in the table, parsed back from names for the law checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TableLabel {
    Id,
    /// q_k from i to j
    Q { k: usize, i: usize, j: usize },
    /// g_k from i to the cone point
    G { k: usize, i: usize },
    /// h_i from the cone point
    H { i: usize },
    /// b_ij
    B { i: usize, j: usize },
}

/// Parses the label of a morphism of a table built by `localization_table`.
pub fn table_label(p: &Poset, name: &str) -> Option<TableLabel> {
    let find = |e: &str| p.elements.iter().position(|x| x == e);
    if name.starts_with("id:") {
        return Some(TableLabel::Id);
    }
    if let Some(rest) = name.strip_prefix("q") {
        let mut parts = rest.split('.');
        let (k, i, j) = (parts.next()?, parts.next()?, parts.next()?);
        return Some(TableLabel::Q {
            k: find(k)?,
            i: find(i)?,
            j: find(j)?,
        });
    }
    if let Some(rest) = name.strip_prefix("g") {
        let mut parts = rest.split('.');
        let (k, i) = (parts.next()?, parts.next()?);
        return Some(TableLabel::G {
            k: find(k)?,
            i: find(i)?,
        });
    }
    if let Some(rest) = name.strip_prefix("h.") {
        return Some(TableLabel::H { i: find(rest)? });
    }
    if let Some(rest) = name.strip_prefix("b.") {
        let mut parts = rest.split('.');
        let (i, j) = (parts.next()?, parts.next()?);
        return Some(TableLabel::B {
            i: find(i)?,
            j: find(j)?,
        });
    }
    None
}

/// Builds the table category for a poset. Identities are added to each
/// hom(i,i) disjointly from the `q_k`; all `q_k` with distinct subscripts
/// stay distinct.
pub fn localization_table(p: &Poset) -> Result<FinCategory> {
    if p.elements.iter().any(|e| e == CONE_POINT) {
        return Err(Error::Parameter(format!(
            "poset element name {CONE_POINT} is reserved"
        )));
    }
    let n = p.len();
    let mut b = CatBuilder::new("Ltable");
    for e in &p.elements {
        b.add_object_with_identity(e)?;
    }
    let inf = b.add_object_with_identity(CONE_POINT)?;

    // Hom-sets.
    for i in 0..n {
        let oi = b.lookup_object(&p.elements[i]).unwrap();
        for j in 0..n {
            let oj = b.lookup_object(&p.elements[j]).unwrap();
            for k in 0..n {
                if p.le(i, k) {
                    b.add_morphism(q_name(&p.elements[k], &p.elements[i], &p.elements[j]), oi, oj)?;
                }
            }
            if i != j && p.le(i, j) {
                b.add_morphism(b_name(&p.elements[i], &p.elements[j]), oi, oj)?;
            }
        }
        for k in 0..n {
            if p.le(i, k) {
                b.add_morphism(g_name(&p.elements[k], &p.elements[i]), oi, inf)?;
            }
        }
        b.add_morphism(h_name(&p.elements[i]), inf, oi)?;
    }

    // Composition by case analysis on labels. Each cell that is not one of
    // the five defining laws gets a provenance note.
    #[derive(Clone, Copy)]
    enum L<'a> {
        Q { k: &'a str, i: &'a str },
        G { k: &'a str, i: &'a str },
        H,
        B { i: &'a str },
    }
    let mut all: Vec<(String, L)> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if p.le(i, k) {
                    all.push((
                        q_name(&p.elements[k], &p.elements[i], &p.elements[j]),
                        L::Q {
                            k: &p.elements[k],
                            i: &p.elements[i],
                        },
                    ));
                }
            }
            if i != j && p.le(i, j) {
                all.push((
                    b_name(&p.elements[i], &p.elements[j]),
                    L::B { i: &p.elements[i] },
                ));
            }
        }
        for k in 0..n {
            if p.le(i, k) {
                all.push((
                    g_name(&p.elements[k], &p.elements[i]),
                    L::G {
                        k: &p.elements[k],
                        i: &p.elements[i],
                    },
                ));
            }
        }
        all.push((h_name(&p.elements[i]), L::H));
    }

    let mut cells: Vec<(String, String, String, Option<String>)> = Vec::new();
    for (fname, flab) in &all {
        let f = b.lookup_morphism(fname).unwrap();
        let fd = b.morphism(f).clone();
        for (gname, glab) in &all {
            let g = b.lookup_morphism(gname).unwrap();
            let gd = b.morphism(g).clone();
            if fd.dst != gd.src {
                continue;
            }
            let dst = b.object_name(gd.dst).to_string();
            let (result, note): (String, Option<String>) = match (flab, glab) {
                // The five defining laws: subscripts survive composition.
                (L::Q { k, i }, L::Q { .. }) => (q_name(k, i, &dst), None),
                (L::Q { k, i }, L::G { .. }) => (g_name(k, i), None),
                (L::B { i, .. }, L::Q { k, .. }) => (q_name(k, i, &dst), None),
                (L::Q { k, i }, L::B { .. }) => (q_name(k, i, &dst), None),
                (L::G { k, i }, L::H) => (q_name(k, i, &dst), None),
                // Forced cells.
                (L::B { i, .. }, L::B { .. }) => (
                    b_name(i, &dst),
                    Some("forced: functoriality of the poset inclusion".to_string()),
                ),
                (L::H, L::Q { .. }) | (L::H, L::B { .. }) => (
                    h_name(&dst),
                    Some("forced: hom from the cone point is a singleton".to_string()),
                ),
                (L::H, L::G { .. }) => (
                    format!("id:{CONE_POINT}"),
                    Some("forced: endomorphisms of the cone point are trivial".to_string()),
                ),
                (L::B { i, .. }, L::G { k, .. }) => (
                    g_name(k, i),
                    Some("forced: projection index survives a poset arrow".to_string()),
                ),
                _ => {
                    return Err(Error::Table(format!(
                        "uncovered composition case ({gname} ∘ {fname})"
                    )))
                }
            };
            cells.push((gname.clone(), fname.clone(), result, note));
        }
    }
    for (gname, fname, result, note) in cells {
        let g = b.lookup_morphism(&gname).unwrap();
        let f = b.lookup_morphism(&fname).unwrap();
        let h = b.lookup_morphism(&result).ok_or_else(|| {
            Error::Table(format!(
                "composite ({gname} ∘ {fname}) = {result} is not a morphism"
            ))
        })?;
        b.set_composite(g, f, h);
        if let Some(n) = note {
            b.note_cell(g, f, n);
        }
    }
    b.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::ret_category;
    use crate::fincat::{find_isomorphism, validate_category};

    #[test]
    fn point_table_is_ret() {
        let t = localization_table(&Poset::point()).unwrap();
        assert!(validate_category(&t).is_valid());
        assert!(find_isomorphism(&t, &ret_category()).unwrap().is_some());
    }

    #[test]
    fn chain_two_hom_sets() {
        let p = Poset::chain(2);
        let t = localization_table(&p).unwrap();
        assert!(validate_category(&t).is_valid());
        let (o0, o1, inf) = (
            t.lookup_object("0").unwrap(),
            t.lookup_object("1").unwrap(),
            t.lookup_object(CONE_POINT).unwrap(),
        );
        // hom(0,1) = {q0, q1, b01}
        assert_eq!(t.hom(o0, o1).len(), 3);
        // hom(1,0) = {q1}
        assert_eq!(t.hom(o1, o0).len(), 1);
        // hom(0,-inf) = {g0, g1}
        assert_eq!(t.hom(o0, inf).len(), 2);
        // hom(-inf,0) = {h0}
        assert_eq!(t.hom(inf, o0).len(), 1);
    }

    #[test]
    fn five_laws_hold_cellwise() {
        let p = Poset::chain(3);
        let t = localization_table(&p).unwrap();
        // h_i ∘ g_k = q_k for all valid (i, k).
        for i in 0..3 {
            for k in 0..3 {
                for target in 0..3 {
                    let g = t.lookup_morphism(&g_name(&k.to_string(), &i.to_string()));
                    let h = t.lookup_morphism(&h_name(&target.to_string()));
                    if let (Some(g), Some(h)) = (g, h) {
                        let got = t.compose(h, g).unwrap();
                        assert_eq!(
                            t.morphism(got).name,
                            q_name(&k.to_string(), &i.to_string(), &target.to_string())
                        );
                    }
                }
            }
        }
    }
}
