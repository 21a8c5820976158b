//! The explicit localization tables over every small poset: associativity
//! by exhaustion, the five defining laws cell by cell, and the documented
//! hom-set shapes.

use crate::corpus::builtin_posets;
use crate::report::Report;
use crate::suites::SuiteOptions;
use sct_core::constructions::{localization_table, CONE_POINT};
use sct_core::fincat::{validate_category, Poset};

pub fn run_table(opts: &SuiteOptions) -> Report {
    let mut report = Report::new("li-table");
    let posets = builtin_posets(opts.max_size);
    let total = posets.len();
    report.check(format!("validate-{total}-posets"), || {
        for (idx, p) in posets.iter().enumerate() {
            let t = localization_table(p)?;
            let v = validate_category(&t);
            if !v.is_valid() {
                return Ok((false, format!("poset #{idx} (n={}) fails: {v:?}", p.len())));
            }
        }
        Ok((
            true,
            format!("{total} tables pass exhaustive associativity"),
        ))
    });
    report
}

pub fn run_assoc(opts: &SuiteOptions) -> Report {
    let mut report = Report::new("li-assoc");
    let posets = builtin_posets(opts.max_size);
    report.check("five-laws-cell-by-cell", || {
        for (idx, p) in posets.iter().enumerate() {
            let t = localization_table(p)?;
            let n = p.len();
            let el = |i: usize| p.elements[i].clone();
            let q = |k: usize, i: usize, j: usize| {
                t.lookup_morphism(&format!("q{}.{}.{}", el(k), el(i), el(j)))
            };
            let g = |k: usize, i: usize| t.lookup_morphism(&format!("g{}.{}", el(k), el(i)));
            let h = |i: usize| t.lookup_morphism(&format!("h.{}", el(i)));
            let b = |i: usize, j: usize| t.lookup_morphism(&format!("b.{}.{}", el(i), el(j)));
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        if !p.le(i, k) {
                            continue;
                        }
                        // q_p ∘ q_k = q_k
                        for l in 0..n {
                            for pp in 0..n {
                                if p.le(j, pp) {
                                    if let (Some(qk), Some(qp)) = (q(k, i, j), q(pp, j, l)) {
                                        if t.compose(qp, qk).ok() != q(k, i, l) {
                                            return Ok((false, format!("poset #{idx}: q∘q")));
                                        }
                                    }
                                }
                            }
                        }
                        // g_p ∘ q_k = g_k
                        for pp in 0..n {
                            if p.le(j, pp) {
                                if let (Some(qk), Some(gp)) = (q(k, i, j), g(pp, j)) {
                                    if t.compose(gp, qk).ok() != g(k, i) {
                                        return Ok((false, format!("poset #{idx}: g∘q")));
                                    }
                                }
                            }
                        }
                        // q_k ∘ b_ij = q_k (source extends along b)
                        if i != j && p.le(i, j) {
                            for l in 0..n {
                                if p.le(j, k) {
                                    if let (Some(bij), Some(qk)) = (b(i, j), q(k, j, l)) {
                                        if t.compose(qk, bij).ok() != q(k, i, l) {
                                            return Ok((false, format!("poset #{idx}: q∘b")));
                                        }
                                    }
                                }
                            }
                        }
                        // b_jl ∘ q_k = q_k
                        for l in 0..n {
                            if j != l && p.le(j, l) {
                                if let (Some(qk), Some(bjl)) = (q(k, i, j), b(j, l)) {
                                    if t.compose(bjl, qk).ok() != q(k, i, l) {
                                        return Ok((false, format!("poset #{idx}: b∘q")));
                                    }
                                }
                            }
                        }
                        // h_j ∘ g_k = q_k
                        if let (Some(gk), Some(hj)) = (g(k, i), h(j)) {
                            if t.compose(hj, gk).ok() != q(k, i, j) {
                                return Ok((false, format!("poset #{idx}: h∘g")));
                            }
                        }
                    }
                }
            }
        }
        Ok((true, "all five laws hold on every table".to_string()))
    });

    report.check("interval-hom-shapes", || {
        let p = Poset::chain(2);
        let t = localization_table(&p)?;
        let o0 = t.lookup_object("0").unwrap();
        let o1 = t.lookup_object("1").unwrap();
        let inf = t.lookup_object(CONE_POINT).unwrap();
        let shape = |a, b| t.hom(a, b).len();
        let expected = [
            (shape(o0, o1), 3, "hom(0,1)"),
            (shape(o1, o0), 1, "hom(1,0)"),
            (shape(o0, inf), 2, "hom(0,-inf)"),
            (shape(inf, o0), 1, "hom(-inf,0)"),
            (shape(o0, o0), 3, "hom(0,0)"),
            (shape(inf, inf), 1, "hom(-inf,-inf)"),
        ];
        for (got, want, name) in expected {
            if got != want {
                return Ok((false, format!("{name} = {got}, expected {want}")));
            }
        }
        Ok((true, String::new()))
    });
    report
}
