//! Bounded discreteness of the localized mapping complexes: the component
//! census of every mapping complex matches the explicit table hom-set, and
//! no width-1 hammock connects vertices with different canonical labels.
//! All verdicts are within the stated length and width bounds.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use crate::report::Report;
use crate::suites::SuiteOptions;
use sct_core::constructions::{
    cone_category, glue_free_arrows, hammock_label, hammock_mapping, hammock_pi0,
    localization_table, HammockLabel, CONE_POINT,
};
use sct_core::fincat::{poset_category, FinCategory, MorId, ObjId, Poset};

/// The two fixtures: a point and an interval.
fn fixtures() -> Vec<(String, Poset)> {
    vec![
        ("point".to_string(), Poset::point()),
        ("interval".to_string(), Poset::chain(2)),
    ]
}

struct Setup {
    dcone: FinCategory,
    wide: BTreeSet<MorId>,
    /// Unprimed object of the base category per name.
    base_objects: HashSet<ObjId>,
    table: FinCategory,
}

fn build_setup(i: &Poset) -> Result<Setup, sct_core::Error> {
    let c = poset_category(i)?;
    let d = glue_free_arrows(&c)?;
    let dcone = cone_category(&d)?;
    let mut wide: BTreeSet<MorId> = dcone
        .morphisms()
        .filter(|&m| dcone.is_identity(m))
        .collect();
    for o in dcone.objects() {
        let name = dcone.object_name(o);
        if name.ends_with('\'') {
            wide.insert(
                dcone
                    .lookup_morphism(&format!("h.{name}"))
                    .expect("cone arrow"),
            );
        }
    }
    let base_objects: HashSet<ObjId> = dcone
        .objects()
        .filter(|&o| {
            let n = dcone.object_name(o);
            n != CONE_POINT && !n.ends_with('\'')
        })
        .collect();
    let table = localization_table(i)?;
    Ok(Setup {
        dcone,
        wide,
        base_objects,
        table,
    })
}

/// Table object corresponding to an object of the cone category.
fn table_object(setup: &Setup, o: ObjId) -> ObjId {
    let name = setup.dcone.object_name(o);
    if name == CONE_POINT || name.ends_with('\'') {
        setup.table.lookup_object(CONE_POINT).unwrap()
    } else {
        setup.table.lookup_object(name).unwrap()
    }
}

/// Expected token census for a table hom-set: one token per morphism,
/// sorted.
fn expected_tokens(setup: &Setup, a: ObjId, b: ObjId) -> Vec<String> {
    let mut out: Vec<String> = setup
        .table
        .hom(a, b)
        .into_iter()
        .map(|m| {
            let name = &setup.table.morphism(m).name;
            if name.starts_with("id:") {
                "Id".to_string()
            } else if let Some(rest) = name.strip_prefix('q') {
                format!("k:{}", rest.split('.').next().unwrap())
            } else if let Some(rest) = name.strip_prefix('g') {
                format!("k:{}", rest.split('.').next().unwrap())
            } else if name.starts_with("b.") {
                "b".to_string()
            } else {
                // h-arrows only occur out of the cone point.
                "h".to_string()
            }
        })
        .collect();
    out.sort();
    out
}

/// Token of a vertex hammock's canonical label.
fn label_token(setup: &Setup, label: &HammockLabel) -> String {
    match label {
        HammockLabel::Identity => "Id".to_string(),
        HammockLabel::Composite(m) => {
            let name = &setup.dcone.morphism(*m).name;
            if name.starts_with("b.") {
                "b".to_string()
            } else {
                format!("c:{name}")
            }
        }
        HammockLabel::Detour(f) => {
            // f : u → z'; the subscript is the unprimed target.
            let dst = setup.dcone.morphism(*f).dst;
            let z = setup
                .dcone
                .object_name(dst)
                .strip_suffix('\'')
                .unwrap_or("?")
                .to_string();
            format!("k:{z}")
        }
    }
}

pub fn run(opts: &SuiteOptions) -> Report {
    let mut report = Report::new("hammock-discrete");
    let (max_len, max_width) = (4usize, 2usize.min(opts.max_size.max(2)));
    for (name, poset) in fixtures() {
        report.check(format!("census[{name}]"), || {
            let setup = build_setup(&poset)?;
            let objects: Vec<ObjId> = setup.dcone.objects().collect();
            for &u in &objects {
                for &v in &objects {
                    let hc = hammock_mapping(
                        &setup.dcone,
                        &setup.wide,
                        u,
                        v,
                        max_len,
                        max_width,
                    )?;
                    let pi0 = hammock_pi0(&hc)?;
                    let (tu, tv) = (table_object(&setup, u), table_object(&setup, v));
                    let expected = expected_tokens(&setup, tu, tv);
                    if setup.base_objects.contains(&u) {
                        // Explicit labels realize the bijection.
                        let mut got: Vec<String> = pi0
                            .iter()
                            .map(|h| {
                                hammock_label(&setup.dcone, &setup.base_objects, h)
                                    .map(|l| label_token(&setup, &l))
                            })
                            .collect::<Result<_, _>>()?;
                        got.sort();
                        if got != expected {
                            return Ok((
                                false,
                                format!(
                                    "{}→{}: classes {:?} vs table {:?}",
                                    setup.dcone.object_name(u),
                                    setup.dcone.object_name(v),
                                    got,
                                    expected
                                ),
                            ));
                        }
                        // Width-1 cells never connect distinct labels.
                        for e in &hc.cells[1] {
                            let l0 = label_token(
                                &setup,
                                &hammock_label(
                                    &setup.dcone,
                                    &setup.base_objects,
                                    &hc.face(e, 0)?,
                                )?,
                            );
                            let l1 = label_token(
                                &setup,
                                &hammock_label(
                                    &setup.dcone,
                                    &setup.base_objects,
                                    &hc.face(e, 1)?,
                                )?,
                            );
                            if l0 != l1 {
                                return Ok((
                                    false,
                                    format!(
                                        "width-1 hammock connects {l0} with {l1} ({}→{})",
                                        setup.dcone.object_name(u),
                                        setup.dcone.object_name(v)
                                    ),
                                ));
                            }
                        }
                    } else {
                        // Everything mapping out of the cone point or a
                        // glued object is contractible-within-bounds.
                        if pi0.len() != expected.len() {
                            return Ok((
                                false,
                                format!(
                                    "{}→{}: {} classes vs table {}",
                                    setup.dcone.object_name(u),
                                    setup.dcone.object_name(v),
                                    pi0.len(),
                                    expected.len()
                                ),
                            ));
                        }
                    }
                }
            }
            Ok((
                true,
                format!(
                    "{} object pairs at max_len {max_len}, max_width {max_width}",
                    objects.len() * objects.len()
                ),
            ))
        });
    }
    report.check("simplicial-identities-after-reduction", || {
        // ∂_i ∂_j = ∂_{j-1} ∂_i on width-2 cells in a nontrivial complex.
        let setup = build_setup(&Poset::point())?;
        let objects: Vec<ObjId> = setup.dcone.objects().collect();
        let mut tested = 0usize;
        for &u in &objects {
            for &v in &objects {
                let hc = hammock_mapping(&setup.dcone, &setup.wide, u, v, 4, 2)?;
                for h in &hc.cells[2] {
                    for j in 1..=2usize {
                        for i in 0..j {
                            let a = hc.face(&hc.face(h, j)?, i)?;
                            let b = hc.face(&hc.face(h, i)?, j - 1)?;
                            if a != b {
                                return Ok((
                                    false,
                                    format!("identity fails at ({i},{j})"),
                                ));
                            }
                            tested += 1;
                        }
                    }
                }
            }
        }
        Ok((true, format!("{tested} face pairs")))
    });
    let _ = BTreeMap::<u8, u8>::new();
    report
}
