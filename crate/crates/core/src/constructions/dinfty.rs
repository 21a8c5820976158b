//! The replacement of the one-free-arrow pushout as an explicit simplicial
//! set: levels are `C_n ⊔ ∐_{i≤n} C_i^x` where `C_i^x` collects simplices
//! with last vertex at the mark. Non-degenerate simplices come in three
//! kinds:
//!   `c:σ`   a non-degenerate chain of C,
//!   `m:σ`   a non-degenerate chain ending at the mark, viewed marked,
//!   `mi:σ`  the top degeneracy of such a chain, which the marked part does
//!           not identify (its last arrow composes with the fresh one).

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::fincat::nerve::{nondeg_chains, Chain};
use crate::fincat::{nerve, FinCategory};
use crate::simpset::colimit::{
    discrete_product, inclusion_by_name, map_from_copies, pushout, pushout_induced, Pushout,
};
use crate::simpset::map::SimplicialMap;
use crate::simpset::sset::{Operator, SimplexRef, SimplicialSet, SsetBuilder};
use crate::simpset::standard::{make_standard, StandardKind};
use crate::simpset::word::normalize_word;

use super::MarkedCategory;

/// Shared scaffolding: the nerve of the underlying category plus the chain
/// tables, and which chains end at the mark.
struct MarkedNerve {
    cat: FinCategory,
    mark: crate::fincat::ObjId,
    nerve: SimplicialSet,
    chains: Vec<Vec<Chain>>,
}

impl MarkedNerve {
    fn new(m: &MarkedCategory, dim_cap: usize) -> Result<MarkedNerve> {
        let nerve = nerve(&m.category, dim_cap)?;
        let chains = nondeg_chains(&m.category, dim_cap);
        Ok(MarkedNerve {
            cat: m.category.clone(),
            mark: m.mark,
            nerve,
            chains,
        })
    }

    fn chain_ends_at_mark(&self, chain: &Chain) -> bool {
        chain.end(&self.cat) == self.mark
    }

    /// Marked non-degenerate chains of one length.
    fn marked_chains(&self, len: usize) -> Vec<&Chain> {
        self.chains[len]
            .iter()
            .filter(|c| self.chain_ends_at_mark(c))
            .collect()
    }
}

/// An element of a level of the replacement: either a plain simplex of the
/// nerve, or a marked simplex `σ ∈ C_l^x` sitting at some level ≥ l.
#[derive(Debug, Clone, PartialEq, Eq)]
enum DElem {
    Plain(SimplexRef),
    Marked { cref: SimplexRef, level: usize },
}

/// Names of the three base kinds.
fn c_name(s: &str) -> String {
    format!("c:{s}")
}
fn m_name(s: &str) -> String {
    format!("m:{s}")
}
fn mi_name(s: &str) -> String {
    format!("mi:{s}")
}

/// Normal form of an element against a lookup into the target presentation
/// (the full replacement or a filtration stage).
fn normalize_elem(
    mn: &MarkedNerve,
    lookup: &dyn Fn(&str) -> Option<crate::simpset::sset::SimplexId>,
    elem: &DElem,
) -> Result<SimplexRef> {
    let mut letters: Vec<usize> = Vec::new();
    let mut cur = elem.clone();
    loop {
        match cur {
            DElem::Plain(cref) => {
                let base_name = c_name(mn.nerve.simplex_name(cref.base));
                let base = lookup(&base_name).ok_or_else(|| {
                    Error::ConstructionBug(format!("missing base {base_name}"))
                })?;
                let mut all = letters;
                all.extend_from_slice(cref.word.letters());
                let base_dim = mn.nerve.simplex_dim(cref.base);
                return Ok(SimplexRef {
                    base,
                    word: normalize_word(&all, base_dim)?,
                });
            }
            DElem::Marked { cref, level } => {
                let l = mn.nerve.ref_dim(&cref);
                if level > l {
                    // s_k acts as the identity on marked elements for k ≥ l;
                    // peel the topmost.
                    letters.push(level - 1);
                    cur = DElem::Marked { cref, level: level - 1 };
                    continue;
                }
                let word = cref.word.letters();
                if word.is_empty() {
                    let base_name = m_name(mn.nerve.simplex_name(cref.base));
                    let base = lookup(&base_name).ok_or_else(|| {
                        Error::ConstructionBug(format!("missing base {base_name}"))
                    })?;
                    return Ok(SimplexRef {
                        base,
                        word: normalize_word(&letters, l)?,
                    });
                }
                if word == [l - 1] {
                    // s_{l-1} of a marked chain is itself non-degenerate here.
                    let base_name = mi_name(mn.nerve.simplex_name(cref.base));
                    let base = lookup(&base_name).ok_or_else(|| {
                        Error::ConstructionBug(format!("missing base {base_name}"))
                    })?;
                    return Ok(SimplexRef {
                        base,
                        word: normalize_word(&letters, l)?,
                    });
                }
                // Some letter ≤ l-2 exists; peel it as a marked degeneracy.
                let k = *word.iter().find(|&&j| j <= l - 2).ok_or_else(|| {
                    Error::ConstructionBug("unreachable word shape".to_string())
                })?;
                let peeled = mn.nerve.apply(&cref, Operator::Face(k + 1))?;
                letters.push(k);
                cur = DElem::Marked {
                    cref: peeled,
                    level: level - 1,
                };
            }
        }
    }
}

fn build_replacement(
    mn: &MarkedNerve,
    name: String,
    dim_cap: usize,
    stage: Option<usize>,
) -> Result<SimplicialSet> {
    let mut b = SsetBuilder::new(name, dim_cap);
    // Kind `c`: all non-degenerate chains.
    for (len, level) in mn.chains.iter().enumerate() {
        for chain in level {
            b.add_simplex(c_name(&chain.name(&mn.cat)), len)?;
        }
    }
    // Kind `m`: marked chains, length ≤ stage when filtering.
    for len in 0..=dim_cap {
        if stage.map(|s| len <= s).unwrap_or(true) {
            for chain in mn.marked_chains(len) {
                b.add_simplex(m_name(&chain.name(&mn.cat)), len)?;
            }
        }
    }
    // Kind `mi`: top degeneracies of marked chains, one dimension up.
    for len in 0..dim_cap {
        if stage.map(|s| len <= s).unwrap_or(true) {
            for chain in mn.marked_chains(len) {
                b.add_simplex(mi_name(&chain.name(&mn.cat)), len + 1)?;
            }
        }
    }

    // Faces. The builder's lookup is the name table.
    let mut jobs: Vec<(crate::simpset::sset::SimplexId, Vec<SimplexRef>)> = Vec::new();
    {
        let lookup = |s: &str| b.lookup(s);
        for (len, level) in mn.chains.iter().enumerate() {
            if len == 0 {
                continue;
            }
            for chain in level {
                let id = b.lookup(&c_name(&chain.name(&mn.cat))).unwrap();
                let cref = SimplexRef::nondeg(
                    mn.nerve.lookup(&chain.name(&mn.cat)).unwrap(),
                );
                let mut faces = Vec::with_capacity(len + 1);
                for k in 0..=len {
                    let f = mn.nerve.apply(&cref, Operator::Face(k))?;
                    faces.push(normalize_elem(mn, &lookup, &DElem::Plain(f))?);
                }
                jobs.push((id, faces));
            }
        }
        for len in 0..=dim_cap {
            if stage.map(|s| len <= s).unwrap_or(true) {
                for chain in mn.marked_chains(len) {
                    // m:σ of dimension len ≥ 1.
                    if len >= 1 {
                        let id = b.lookup(&m_name(&chain.name(&mn.cat))).unwrap();
                        let cref = SimplexRef::nondeg(
                            mn.nerve.lookup(&chain.name(&mn.cat)).unwrap(),
                        );
                        let mut faces = Vec::with_capacity(len + 1);
                        for k in 0..=len {
                            let f = mn.nerve.apply(&cref, Operator::Face(k))?;
                            let elem = if k <= len - 1 {
                                DElem::Marked {
                                    cref: f,
                                    level: len - 1,
                                }
                            } else {
                                DElem::Plain(f)
                            };
                            faces.push(normalize_elem(mn, &lookup, &elem)?);
                        }
                        jobs.push((id, faces));
                    }
                    // mi:σ of dimension len + 1, representing s_len(σ).
                    if len + 1 <= dim_cap {
                        let id = b.lookup(&mi_name(&chain.name(&mn.cat))).unwrap();
                        let base = SimplexRef::nondeg(
                            mn.nerve.lookup(&chain.name(&mn.cat)).unwrap(),
                        );
                        let top = mn.nerve.apply(&base, Operator::Degeneracy(len))?;
                        let n = len + 1;
                        let mut faces = Vec::with_capacity(n + 1);
                        for k in 0..=n {
                            let f = mn.nerve.apply(&top, Operator::Face(k))?;
                            let elem = if k <= n - 1 {
                                DElem::Marked {
                                    cref: f,
                                    level: n - 1,
                                }
                            } else {
                                DElem::Plain(f)
                            };
                            faces.push(normalize_elem(mn, &lookup, &elem)?);
                        }
                        jobs.push((id, faces));
                    }
                }
            }
        }
    }
    for (id, faces) in jobs {
        b.set_faces(id, faces);
    }
    let mut out = b.finish()?;
    out.truncated = true;
    Ok(out)
}

/// The full replacement at a cap.
pub fn dinfty(m: &MarkedCategory, dim_cap: usize) -> Result<SimplicialSet> {
    let mn = MarkedNerve::new(m, dim_cap)?;
    build_replacement(
        &mn,
        format!(
            "Dinf({},{})",
            m.category.name,
            m.category.object_name(m.mark)
        ),
        dim_cap,
        None,
    )
}

/// Level census helper: `|C_n| + Σ_{i=0}^{n} |C_i^x|`, computed on the
/// nerve side for tests and suites.
pub fn dinfty_expected_level(m: &MarkedCategory, n: usize, dim_cap: usize) -> Result<usize> {
    let mn = MarkedNerve::new(m, dim_cap)?;
    let mut total = mn.nerve.level_count(n)?;
    for i in 0..=n {
        total += marked_level_count(&mn, i)?;
    }
    Ok(total)
}

/// Number of simplices of `C_i` with last vertex at the mark, degenerate
/// ones included.
fn marked_level_count(mn: &MarkedNerve, i: usize) -> Result<usize> {
    let mut count = 0;
    for r in mn.nerve.simplices_at(i)? {
        let chain_name = mn.nerve.simplex_name(r.base).to_string();
        let dim = mn.nerve.simplex_dim(r.base);
        let chain = mn.chains[dim]
            .iter()
            .find(|c| c.name(&mn.cat) == chain_name)
            .expect("chain");
        if mn.chain_ends_at_mark(chain) {
            count += 1;
        }
    }
    Ok(count)
}

/// The isomorphism from the nerve of the gluing category onto the
/// replacement. Self-verifies level-wise bijectivity; face compatibility is
/// the map validation itself.
pub fn dinfty_iso(m: &MarkedCategory, dim_cap: usize) -> Result<SimplicialMap> {
    let d_inf = dinfty(m, dim_cap)?;
    let d_cat = super::d_category(m)?;
    let n_d = nerve(&d_cat, dim_cap)?;
    let prime_name = format!("{}'", m.category.object_name(m.mark));
    let prime = d_cat.lookup_object(&prime_name).unwrap();
    let d_chains = nondeg_chains(&d_cat, dim_cap);

    let mut assignment = BTreeMap::new();
    for (len, level) in d_chains.iter().enumerate() {
        for chain in level {
            let id = n_d.lookup(&chain.name(&d_cat)).unwrap();
            let value = if chain.end(&d_cat) != prime {
                // All vertices in C: the chain's arrow names exist verbatim.
                SimplexRef::nondeg(
                    d_inf
                        .lookup(&c_name(&chain.name(&d_cat)))
                        .ok_or_else(|| Error::ConstructionBug("missing c-part".into()))?,
                )
            } else if len == 0 {
                SimplexRef::nondeg(
                    d_inf
                        .lookup(&m_name(m.category.object_name(m.mark)))
                        .ok_or_else(|| Error::ConstructionBug("missing marked vertex".into()))?,
                )
            } else {
                // Last arrow is a barred ~f; replace it by f.
                let last = *chain.arrows.last().unwrap();
                let last_name = d_cat.morphism(last).name.clone();
                let f_name = last_name.strip_prefix('~').ok_or_else(|| {
                    Error::ConstructionBug(format!("unbarred arrow {last_name} into the prime"))
                })?;
                let f = m.category.lookup_morphism(f_name).unwrap();
                if m.category.is_identity(f) {
                    // σ_x ends with Id at the mark: the mi-cell on the rest.
                    let rest = Chain {
                        start: chain.start,
                        arrows: chain.arrows[..len - 1]
                            .iter()
                            .map(|&a| {
                                m.category
                                    .lookup_morphism(&d_cat.morphism(a).name)
                                    .unwrap()
                            })
                            .collect(),
                    };
                    SimplexRef::nondeg(
                        d_inf
                            .lookup(&mi_name(&rest.name(&m.category)))
                            .ok_or_else(|| Error::ConstructionBug("missing mi-cell".into()))?,
                    )
                } else {
                    let mut arrows: Vec<crate::fincat::MorId> = chain.arrows[..len - 1]
                        .iter()
                        .map(|&a| {
                            m.category
                                .lookup_morphism(&d_cat.morphism(a).name)
                                .unwrap()
                        })
                        .collect();
                    arrows.push(f);
                    let marked = Chain {
                        start: chain.start,
                        arrows,
                    };
                    SimplexRef::nondeg(
                        d_inf
                            .lookup(&m_name(&marked.name(&m.category)))
                            .ok_or_else(|| Error::ConstructionBug("missing m-cell".into()))?,
                    )
                }
            };
            assignment.insert(id, value);
        }
    }
    let map = SimplicialMap::new(n_d.clone(), d_inf.clone(), assignment).map_err(|e| {
        Error::ConstructionBug(format!("nerve comparison map does not commute: {e}"))
    })?;
    // Level-wise bijectivity.
    for n in 0..=dim_cap {
        if n_d.level_count(n)? != d_inf.level_count(n)? {
            return Err(Error::ConstructionBug(format!(
                "level {n} counts differ: {} vs {}",
                n_d.level_count(n)?,
                d_inf.level_count(n)?
            )));
        }
    }
    if !map.is_levelwise_injective()?.is_injective() {
        return Err(Error::ConstructionBug(
            "nerve comparison map is not level-wise injective".to_string(),
        ));
    }
    Ok(map)
}

/// One stage of the filtration together with its gluing square.
pub struct FiltrationStage {
    pub stage: SimplicialSet,
    /// For stage ≥ 1: the square (top, left-inclusion source/target,
    /// bottom, right-inclusion) in the order (u, incl, f, i).
    pub square: Option<FiltrationSquare>,
}

pub struct FiltrationSquare {
    /// Names of the marked chains indexing the copies.
    pub labels: Vec<String>,
    /// The paper's m: the horn is `Λ^{m+1}_m`.
    pub stage: usize,
    /// `Λ^{m+1}_m × A → previous stage`
    pub top: SimplicialMap,
    /// `Λ^{m+1}_m × A → Δ^{m+1} × A`
    pub left: SimplicialMap,
    /// `Δ^{m+1} × A → stage`
    pub bottom: SimplicialMap,
    /// `previous stage → stage`
    pub right: SimplicialMap,
}

/// The sub-presentation at a stage: marked cells only for chains of length
/// ≤ stage. For stage ≥ 1 also returns the gluing square, whose pushout
/// property is checked by `verify_filtration_square`.
pub fn d_filtration(m: &MarkedCategory, stage: usize, dim_cap: usize) -> Result<FiltrationStage> {
    let mn = MarkedNerve::new(m, dim_cap)?;
    let current = build_replacement(
        &mn,
        format!(
            "D{}({},{})",
            stage,
            m.category.name,
            m.category.object_name(m.mark)
        ),
        dim_cap,
        Some(stage),
    )?;
    if stage == 0 {
        return Ok(FiltrationStage {
            stage: current,
            square: None,
        });
    }
    let previous = build_replacement(
        &mn,
        format!(
            "D{}({},{})",
            stage - 1,
            m.category.name,
            m.category.object_name(m.mark)
        ),
        dim_cap,
        Some(stage - 1),
    )?;
    let mm = stage;
    if dim_cap < mm + 1 {
        return Err(Error::Truncation(format!(
            "stage {mm} gluing square needs cap ≥ {}",
            mm + 1
        )));
    }
    let labels: Vec<String> = mn
        .marked_chains(mm)
        .iter()
        .map(|c| c.name(&mn.cat))
        .collect();
    let horn = make_standard(StandardKind::Horn(mm), mm + 1)?.with_cap(dim_cap)?;
    let delta = make_standard(StandardKind::Delta, mm + 1)?.with_cap(dim_cap)?;
    let horn_part = discrete_product(&labels, &horn)?;
    let delta_part = discrete_product(&labels, &delta)?;
    let left = inclusion_by_name(&horn_part, &delta_part)?;

    // Per label σ, the bottom map classifies the mi-cell on σ; the top map
    // restricts it to the horn, landing in the previous stage.
    let subsets: Vec<Vec<usize>> = {
        let mut out = Vec::new();
        for mask in 1u32..(1 << (mm + 2)) {
            let s: Vec<usize> = (0..=mm + 1).filter(|&v| mask & (1 << v) != 0).collect();
            out.push(s);
        }
        out
    };
    let classified = |label: &str, target: &SimplicialSet| -> Result<SimplicialMap> {
        let mi = target
            .lookup(&mi_name(label))
            .ok_or_else(|| Error::ConstructionBug(format!("stage lacks mi:{label}")))?;
        let top_ref = SimplexRef::nondeg(mi);
        let mut assignment = BTreeMap::new();
        for subset in &subsets {
            let name = crate::simpset::standard::subset_name(subset, mm + 1);
            if let Some(id) = delta.lookup(&name) {
                assignment.insert(id, target.restrict(&top_ref, subset)?);
            }
        }
        SimplicialMap::new(delta.clone(), target.clone(), assignment)
    };

    let bottom = map_from_copies(&labels, &delta, &delta_part, &current, |label| {
        classified(label, &current)
    })?;
    // Top: same values on horn cells, rebased into the previous stage.
    let mut top_assignment = BTreeMap::new();
    for id in horn_part.all_nondeg() {
        let in_delta_part = delta_part
            .lookup(horn_part.simplex_name(id))
            .ok_or_else(|| Error::ConstructionBug("horn cell missing in product".into()))?;
        let v = bottom.assignment[&in_delta_part].clone();
        let prev_base = previous
            .lookup(current.simplex_name(v.base))
            .ok_or_else(|| {
                Error::ConstructionBug(format!(
                    "horn image {} escapes the previous stage",
                    current.simplex_name(v.base)
                ))
            })?;
        top_assignment.insert(
            id,
            SimplexRef {
                base: prev_base,
                word: v.word,
            },
        );
    }
    let top = SimplicialMap::new(horn_part.clone(), previous.clone(), top_assignment)?;
    let right = inclusion_by_name(&previous, &current)?;
    Ok(FiltrationStage {
        stage: current,
        square: Some(FiltrationSquare {
            labels,
            stage: mm,
            top,
            left,
            bottom,
            right,
        }),
    })
}

/// Computes the pushout of the square's span and checks the induced map to
/// the stage is a level-wise bijection. Returns the pushout for inspection.
pub fn verify_filtration_square(fsq: &FiltrationSquare) -> Result<Pushout> {
    let po = pushout(&fsq.left, &fsq.top)?;
    let induced = pushout_induced(&po, &fsq.bottom, &fsq.right)?;
    let stage = &fsq.bottom.target;
    for n in 0..=po.object.dim_cap().min(stage.dim_cap()) {
        if po.object.level_count(n)? != stage.level_count(n)? {
            return Err(Error::ConstructionBug(format!(
                "pushout level {n} has {} simplices, stage has {}",
                po.object.level_count(n)?,
                stage.level_count(n)?
            )));
        }
    }
    if !induced.is_levelwise_injective()?.is_injective() {
        return Err(Error::ConstructionBug(
            "induced map from the pushout is not injective".to_string(),
        ));
    }
    Ok(po)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{poset_category, terminal_category, Poset};
    use crate::simpset::map::find_sset_isomorphism;

    fn arrow_marked_at_end() -> MarkedCategory {
        let c = poset_category(&Poset::new(vec!["a".into(), "b".into()], &[(0, 1)]).unwrap())
            .unwrap();
        MarkedCategory::new(c, "b").unwrap()
    }

    #[test]
    fn terminal_replacement_levels() {
        let m = MarkedCategory::new(terminal_category(), "pt").unwrap();
        let d = dinfty(&m, 4).unwrap();
        for n in 0..=4 {
            assert_eq!(d.level_count(n).unwrap(), n + 2, "level {n}");
        }
        // Isomorphic to the nerve of the arrow poset.
        let arrow = nerve(&poset_category(&Poset::chain(2)).unwrap(), 4).unwrap();
        assert!(find_sset_isomorphism(&d, &arrow).unwrap().is_some());
    }

    #[test]
    fn arrow_marked_level_zero() {
        let m = arrow_marked_at_end();
        let d = dinfty(&m, 3).unwrap();
        assert_eq!(d.level_count(0).unwrap(), 3);
        assert_eq!(dinfty_expected_level(&m, 0, 3).unwrap(), 3);
    }

    #[test]
    fn top_face_of_marked_lands_plain() {
        // ∂^{n+1} of a marked simplex at full level is the plain part.
        let m = arrow_marked_at_end();
        let d = dinfty(&m, 3).unwrap();
        let mb = d.lookup("m:b.a.b").unwrap();
        let r = SimplexRef::nondeg(mb);
        let top_face = d.apply(&r, Operator::Face(1)).unwrap();
        assert_eq!(d.simplex_name(top_face.base), "c:a");
        let zero_face = d.apply(&r, Operator::Face(0)).unwrap();
        assert_eq!(d.simplex_name(zero_face.base), "m:b");
    }

    #[test]
    fn iso_on_terminal_and_arrow() {
        for m in [
            MarkedCategory::new(terminal_category(), "pt").unwrap(),
            arrow_marked_at_end(),
        ] {
            let map = dinfty_iso(&m, 4).unwrap();
            assert!(map.validate().is_ok());
        }
    }

    #[test]
    fn stage_zero_matches_plain_pushout() {
        // D⁰ is the pushout C ⊔_{Δ⁰} Δ¹ level-wise.
        let m = arrow_marked_at_end();
        let f0 = d_filtration(&m, 0, 4).unwrap();
        let c_nerve = nerve(&m.category, 4).unwrap();
        let d0 = make_standard(StandardKind::Delta, 0).unwrap().with_cap(4).unwrap();
        let d1 = make_standard(StandardKind::Delta, 1).unwrap().with_cap(4).unwrap();
        let to_c = SimplicialMap::new(
            d0.clone(),
            c_nerve.clone(),
            [(
                d0.lookup("0").unwrap(),
                SimplexRef::nondeg(c_nerve.lookup("b").unwrap()),
            )]
            .into_iter()
            .collect(),
        )
        .unwrap();
        let to_edge = SimplicialMap::new(
            d0.clone(),
            d1.clone(),
            [(
                d0.lookup("0").unwrap(),
                SimplexRef::nondeg(d1.lookup("0").unwrap()),
            )]
            .into_iter()
            .collect(),
        )
        .unwrap();
        let po = pushout(&to_c, &to_edge).unwrap();
        for n in 0..=4 {
            assert_eq!(
                po.object.level_count(n).unwrap(),
                f0.stage.level_count(n).unwrap(),
                "level {n}"
            );
        }
        assert!(find_sset_isomorphism(&po.object, &f0.stage).unwrap().is_some());
    }

    #[test]
    fn filtration_squares_are_pushouts() {
        let m = arrow_marked_at_end();
        for stage in 1..=2usize {
            let f = d_filtration(&m, stage, stage + 2).unwrap();
            let sq = f.square.expect("square at positive stage");
            verify_filtration_square(&sq).unwrap();
        }
    }

    #[test]
    fn stages_agree_with_limit_below_stage() {
        let m = arrow_marked_at_end();
        let full = dinfty(&m, 4).unwrap();
        for stage in 0..=3usize {
            let f = d_filtration(&m, stage, 4).unwrap();
            for n in 0..=stage {
                assert_eq!(
                    f.stage.level_count(n).unwrap(),
                    full.level_count(n).unwrap(),
                    "stage {stage} level {n}"
                );
            }
        }
    }
}
