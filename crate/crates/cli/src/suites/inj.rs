//! The pushout injectivity criterion at scale: the filtration squares of
//! every builtin marked category, a family of randomized gluing squares
//! whose hypotheses hold by construction, and one seeded violation of the
//! disjointness hypothesis.

use std::collections::BTreeMap;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::corpus::builtin_marked_categories;
use crate::report::Report;
use crate::suites::SuiteOptions;
use sct_core::constructions::d_filtration;
use sct_core::fincat::nerve;
use sct_core::quasicat::all_maps;
use sct_core::simpset::{
    inclusion_by_name, injectivity_criterion, make_standard, map_from_copies, pushout,
    HornSquare, SimplexRef, SimplicialMap, StandardKind,
};

pub fn run(opts: &SuiteOptions) -> Report {
    let mut report = Report::new("inj");
    let mut satisfied = 0usize;
    let mut conclusion_held = 0usize;

    // Filtration squares are genuine instances of the criterion.
    report.check("filtration-squares", || {
        for m in builtin_marked_categories() {
            for stage in 1..=3usize {
                let f = d_filtration(&m, stage, stage + 2)?;
                let sq = f.square.expect("stage ≥ 1");
                let square = HornSquare {
                    labels: sq.labels.clone(),
                    n: sq.stage + 1,
                    i: sq.stage,
                    horn_part: sq.top.source.clone(),
                    simplex_part: sq.bottom.source.clone(),
                    top: sq.top.clone(),
                    f: sq.right.clone(),
                    j: sq.bottom.clone(),
                };
                let v = injectivity_criterion(&square)?;
                satisfied += 1;
                if !v.all_hypotheses() {
                    return Ok((
                        false,
                        format!(
                            "stage {stage} of {} fails a hypothesis: {:?}",
                            m.category.name, v.hypothesis_witness
                        ),
                    ));
                }
                if !v.conclusion {
                    return Ok((
                        false,
                        format!(
                            "stage {stage} of {} breaks the conclusion: {:?}",
                            m.category.name, v.conclusion_witness
                        ),
                    ));
                }
                conclusion_held += 1;
            }
        }
        Ok((true, "18 filtration squares verified".to_string()))
    });

    report.check("randomized-gluing-squares", || {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let xs = vec![
            nerve(&sct_core::fincat::ret_category(), 4)?,
            make_standard(StandardKind::Delta, 2)?.with_cap(4)?,
            make_standard(StandardKind::Boundary, 2)?.with_cap(4)?,
            nerve(&crate::corpus::builtin_categories()[2], 4)?,
        ];
        let mut produced = 0usize;
        'outer: for round in 0..64usize {
            let x = &xs[(rng.next_u32() as usize) % xs.len()];
            let n = 2 + (rng.next_u32() as usize) % 2; // 2 or 3
            let i = 1 + (rng.next_u32() as usize) % (n - 1);
            let horn = make_standard(StandardKind::Horn(i), n)?;
            let maps = all_maps(&horn, x)?;
            if maps.is_empty() {
                continue;
            }
            let copies = 1 + (rng.next_u32() as usize) % 2;
            let labels: Vec<String> = (0..copies).map(|c| format!("a{c}")).collect();
            let chosen: Vec<&SimplicialMap> = (0..copies)
                .map(|_| &maps[(rng.next_u32() as usize) % maps.len()])
                .collect();
            let (horn_part, simplex_part) =
                HornSquare::build_parts(&labels, n, i, x.dim_cap())?;
            let horn_capped = make_standard(StandardKind::Horn(i), n)?.with_cap(x.dim_cap())?;
            let top = map_from_copies(&labels, &horn_capped, &horn_part, x, |label| {
                let idx: usize = label[1..].parse().unwrap();
                // Rebase the chosen horn map onto the recapped horn.
                let assignment: BTreeMap<_, _> = horn_capped
                    .all_nondeg()
                    .map(|id| {
                        let orig = chosen[idx]
                            .source
                            .lookup(horn_capped.simplex_name(id))
                            .unwrap();
                        (id, chosen[idx].assignment[&orig].clone())
                    })
                    .collect();
                SimplicialMap::new(horn_capped.clone(), x.clone(), assignment)
            })?;
            let incl = inclusion_by_name(&horn_part, &simplex_part)?;
            let po = pushout(&incl, &top)?;
            let square = HornSquare {
                labels,
                n,
                i,
                horn_part: horn_part.clone(),
                simplex_part: simplex_part.clone(),
                top: top.clone(),
                f: po.leg_c.clone(),
                j: po.leg_b.clone(),
            };
            let v = injectivity_criterion(&square)?;
            produced += 1;
            satisfied += 1;
            if !v.all_hypotheses() {
                return Ok((
                    false,
                    format!("round {round}: hypothesis failed: {:?}", v.hypothesis_witness),
                ));
            }
            if !v.conclusion {
                return Ok((false, format!("round {round}: conclusion failed")));
            }
            conclusion_held += 1;
            if produced >= 40 {
                break 'outer;
            }
        }
        Ok((
            produced >= 32,
            format!("{produced} randomized squares verified"),
        ))
    });

    report.check("instance-count", || {
        Ok((
            satisfied >= 50 && conclusion_held == satisfied,
            format!("{conclusion_held}/{satisfied} hypothesis-satisfying instances conclude"),
        ))
    });

    // Seeded violation of the disjointness hypothesis: glue the edge of Δ¹
    // to ∂Δ¹ ⊂ Δ¹ at vertex 0; the derived map hits vertex 1 inside the
    // image of the inclusion.
    report.check("seeded-overlap-flagged", || {
        let labels = vec!["a".to_string()];
        let (horn_part, simplex_part) = HornSquare::build_parts(&labels, 1, 0, 1)?;
        let x = make_standard(StandardKind::Boundary, 1)?;
        let y = make_standard(StandardKind::Delta, 1)?;
        let mut top_assignment = BTreeMap::new();
        top_assignment.insert(
            horn_part.lookup("a*0").unwrap(),
            SimplexRef::nondeg(x.lookup("0").unwrap()),
        );
        let top = SimplicialMap::new(horn_part.clone(), x.clone(), top_assignment)?;
        let f = inclusion_by_name(&x, &y)?;
        let j_assignment: BTreeMap<_, _> = simplex_part
            .all_nondeg()
            .map(|id| {
                let inner = simplex_part.simplex_name(id).split_once('*').unwrap().1;
                (id, SimplexRef::nondeg(y.lookup(inner).unwrap()))
            })
            .collect();
        let j = SimplicialMap::new(simplex_part.clone(), y.clone(), j_assignment)?;
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
        let v = injectivity_criterion(&square)?;
        let flagged = !v.hypotheses[2];
        let recorded = !v.conclusion;
        Ok((
            flagged && recorded,
            format!(
                "hypothesis 3 flagged: {flagged}; conclusion evaluated anyway: {:?}",
                v.conclusion_witness
            ),
        ))
    });

    report
}
