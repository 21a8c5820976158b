//! Normal-form uniqueness: randomized words over generated simplicial
//! sets, two rewriting strategies, the monotone-surjection oracle, and
//! normal-form stability of operator outputs.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::report::Report;
use crate::suites::SuiteOptions;
use sct_core::fincat::{nerve, ret_category};
use sct_core::simpset::{
    make_standard, normalize_word, normalize_word_by_surjection, normalize_word_rightmost,
    Operator, SimplicialSet, StandardKind,
};

fn generated_sets() -> Vec<SimplicialSet> {
    vec![
        make_standard(StandardKind::Delta, 2).unwrap().with_cap(5).unwrap(),
        make_standard(StandardKind::Horn(1), 2).unwrap().with_cap(4).unwrap(),
        make_standard(StandardKind::Boundary, 2).unwrap().with_cap(4).unwrap(),
        nerve(&ret_category(), 3).unwrap(),
    ]
}

pub fn run(opts: &SuiteOptions) -> Report {
    let mut report = Report::new("ez");
    if opts.corpus == "seeded-defect" {
        // A face target whose degeneracy word is not strictly decreasing
        // must be rejected with a witness.
        report.check("reject-non-normal-face-target", || {
            match sct_core::simpset::DegeneracyWord::new(vec![0, 1]) {
                Err(e) => Ok((false, format!("defect detected as intended: {e}"))),
                Ok(_) => Ok((true, "defect went unnoticed".to_string())),
            }
        });
        return report;
    }

    let sets = generated_sets();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let rounds = 1200usize;
    report.check(format!("randomized-normalize-x{rounds}"), || {
        for round in 0..rounds {
            let x = &sets[(rng.next_u32() as usize) % sets.len()];
            let bases: Vec<_> = x.all_nondeg().collect();
            let base = bases[(rng.next_u32() as usize) % bases.len()];
            let dim = x.simplex_dim(base);
            // Random applicable letter sequence, possibly unsorted.
            let len = (rng.next_u32() as usize) % 6;
            let mut word = Vec::with_capacity(len);
            for p in 0..len {
                let bound = dim + p;
                word.push((rng.next_u32() as usize) % (bound + 1));
            }
            word.reverse();
            let a = normalize_word(&word, dim)
                .map_err(|e| sct_core::Error::ConstructionBug(format!("round {round}: {e}")))?;
            let b = normalize_word_rightmost(&word, dim)?;
            let c = normalize_word_by_surjection(&word, dim)?;
            if a != b || b != c {
                return Ok((
                    false,
                    format!("round {round}: strategies disagree on {word:?} at dim {dim}"),
                ));
            }
            let again = normalize_word(a.letters(), dim)?;
            if again != a {
                return Ok((false, format!("round {round}: not idempotent on {word:?}")));
            }
        }
        Ok((true, format!("{rounds} randomized calls, 3 routes agree")))
    });

    report.check("operator-outputs-stay-normal", || {
        for x in &sets {
            for n in 1..=x.dim_cap() {
                for r in x.simplices_at(n)? {
                    for k in 0..=n {
                        let f = x.apply(&r, Operator::Face(k))?;
                        let renorm = normalize_word(f.word.letters(), x.simplex_dim(f.base))?;
                        if renorm != f.word {
                            return Ok((
                                false,
                                format!("face {k} of {} is not normal", x.ref_name(&r)),
                            ));
                        }
                    }
                    if n < x.dim_cap() {
                        for k in 0..=n {
                            let s = x.apply(&r, Operator::Degeneracy(k))?;
                            let renorm =
                                normalize_word(s.word.letters(), x.simplex_dim(s.base))?;
                            if renorm != s.word {
                                return Ok((
                                    false,
                                    format!("degeneracy {k} of {} is not normal", x.ref_name(&r)),
                                ));
                            }
                        }
                    }
                }
            }
        }
        Ok((true, "all evaluated refs are fixed points".to_string()))
    });

    report.check("simplex-refs-equal-iff-components-equal", || {
        // Distinct (base, word) pairs at one level are distinct simplices.
        for x in &sets {
            for n in 0..=x.dim_cap() {
                let refs = x.simplices_at(n)?;
                let mut seen = std::collections::HashSet::new();
                for r in &refs {
                    if !seen.insert((r.base, r.word.clone())) {
                        return Ok((false, format!("duplicate ref {}", x.ref_name(r))));
                    }
                }
            }
        }
        Ok((true, String::new()))
    });

    report
}
