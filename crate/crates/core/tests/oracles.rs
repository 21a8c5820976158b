//! Independent oracles: brute-force counterparts of the engine's clever
//! paths, kept free of the code they check.

use std::collections::{BTreeMap, BTreeSet};

use sct_core::fincat::{nerve, poset_category, ret_category, Poset};
use sct_core::simpset::{
    find_sset_isomorphism, join_point, make_standard, normalize_word,
    normalize_word_by_surjection, product, pushout, Operator, SimplexRef, SimplicialMap,
    SimplicialSet, StandardKind,
};

use proptest::prelude::*;

/// Random letter sequences that are applicable step by step to a
/// `dim`-simplex.
fn applicable_words(dim: usize, max_len: usize) -> impl Strategy<Value = Vec<usize>> {
    proptest::collection::vec(0usize..1, 0..=max_len).prop_perturb(move |skeleton, mut rng| {
        let mut word = Vec::with_capacity(skeleton.len());
        // Build right to left: letter at distance p from the right may be
        // anything ≤ dim + p.
        for p in 0..skeleton.len() {
            let bound = dim + p;
            word.push(rng.gen_range(0..=bound));
        }
        word.reverse();
        word
    })
}

proptest! {
    #[test]
    fn normalize_is_idempotent_and_matches_surjections(
        dim in 0usize..4,
        word in applicable_words(3, 6),
    ) {
        let w = word.clone();
        let n1 = normalize_word(&w, dim);
        let n2 = normalize_word_by_surjection(&w, dim);
        match (n1, n2) {
            (Ok(a), Ok(b)) => {
                prop_assert_eq!(&a, &b);
                // Idempotent.
                let again = normalize_word(a.letters(), dim).unwrap();
                prop_assert_eq!(again, a);
            }
            (Err(_), Err(_)) => {}
            (a, b) => prop_assert!(false, "routes disagree: {:?} vs {:?}", a, b),
        }
    }

    #[test]
    fn face_operator_agrees_with_vertex_model(
        k in 0usize..3,
        word in applicable_words(2, 3),
    ) {
        // On the standard simplex, operators have an independent model:
        // simplices are monotone vertex lists, ∂_k deletes position k,
        // s_k repeats position k.
        let d2 = make_standard(StandardKind::Delta, 2).unwrap().with_cap(6).unwrap();
        let top = d2.lookup("012").unwrap();
        if let Ok(w) = normalize_word(&word, 2) {
            let r = SimplexRef { base: top, word: w };
            let dim = d2.ref_dim(&r);
            // Vertex list of r.
            let mut verts: Vec<usize> = vec![0, 1, 2];
            for &j in r.word.letters().iter().rev() {
                let v = verts[j];
                verts.insert(j, v);
            }
            if k <= dim && dim >= 1 {
                let face = d2.apply(&r, Operator::Face(k)).unwrap();
                let mut expect = verts.clone();
                expect.remove(k);
                let modeled = d2.eval_vertices(&SimplexRef::nondeg(top), &expect).unwrap();
                prop_assert_eq!(face, modeled);
            }
        }
    }
}

/// Brute-force set-level pushout: repeated merging, no union-find.
fn naive_pushout_classes(
    f: &SimplicialMap,
    g: &SimplicialMap,
    n: usize,
) -> Vec<BTreeSet<(u8, String)>> {
    let b = &f.target;
    let c = &g.target;
    let a = &f.source;
    let mut classes: Vec<BTreeSet<(u8, String)>> = Vec::new();
    for r in b.simplices_at(n).unwrap() {
        classes.push([(0u8, b.ref_name(&r))].into_iter().collect());
    }
    for r in c.simplices_at(n).unwrap() {
        classes.push([(1u8, c.ref_name(&r))].into_iter().collect());
    }
    for ar in a.simplices_at(n).unwrap() {
        let fb = (0u8, b.ref_name(&f.eval(&ar).unwrap()));
        let gc = (1u8, c.ref_name(&g.eval(&ar).unwrap()));
        let i = classes.iter().position(|cl| cl.contains(&fb)).unwrap();
        let j = classes.iter().position(|cl| cl.contains(&gc)).unwrap();
        if i != j {
            let moved = classes.remove(i.max(j));
            classes[i.min(j)].extend(moved);
        }
    }
    classes
}

fn vertex_map(src: &SimplicialSet, dst: &SimplicialSet, vertex: &str) -> SimplicialMap {
    let v = dst.lookup(vertex).unwrap();
    let assignment = src
        .all_nondeg()
        .map(|id| {
            let dim = src.simplex_dim(id);
            let word = normalize_word(&vec![0; dim], 0).unwrap();
            (id, SimplexRef { base: v, word })
        })
        .collect();
    SimplicialMap::new(src.clone(), dst.clone(), assignment).unwrap()
}

#[test]
fn pushout_matches_naive_classes_naturally() {
    // Corpus: wedges, gluings of triangles, nerve gluings.
    let d0 = make_standard(StandardKind::Delta, 0).unwrap();
    let d1 = make_standard(StandardKind::Delta, 1).unwrap();
    let d2 = make_standard(StandardKind::Delta, 2).unwrap();
    let ret2 = nerve(&ret_category(), 2).unwrap();

    let d0c = |cap: usize| d0.with_cap(cap).unwrap();
    let cases: Vec<(SimplicialMap, SimplicialMap)> = vec![
        (vertex_map(&d0c(1), &d1, "1"), vertex_map(&d0c(1), &d1, "0")),
        (vertex_map(&d0c(2), &d2, "2"), vertex_map(&d0c(2), &d2, "0")),
        (vertex_map(&d0c(2), &ret2, "X"), vertex_map(&d0c(2), &d2.clone(), "1")),
        (
            SimplicialMap::identity(&d0),
            SimplicialMap::identity(&d0),
        ),
    ];
    for (f, g) in cases {
        let po = pushout(&f, &g).unwrap();
        let cap = po.object.dim_cap();
        for n in 0..=cap {
            let naive = naive_pushout_classes(&f, &g, n);
            assert_eq!(
                po.object.level_count(n).unwrap(),
                naive.len(),
                "level {n} of {}",
                po.object.name()
            );
        }
        // Naturality in face operators: the legs' values commute with
        // every face, which the map validator certifies, and gluing
        // relations are respected level by level.
        for n in 0..=cap {
            let naive = naive_pushout_classes(&f, &g, n);
            let mut image_class: BTreeMap<String, usize> = BTreeMap::new();
            for r in f.target.simplices_at(n).unwrap() {
                let img = po.leg_b.eval(&r).unwrap();
                let tag = (0u8, f.target.ref_name(&r));
                let pos = naive.iter().position(|cl| cl.contains(&tag)).unwrap();
                if let Some(prev) = image_class.insert(po.object.ref_name(&img), pos) {
                    assert_eq!(prev, pos, "leg merges two naive classes");
                }
            }
            for r in g.target.simplices_at(n).unwrap() {
                let img = po.leg_c.eval(&r).unwrap();
                let tag = (1u8, g.target.ref_name(&r));
                let pos = naive.iter().position(|cl| cl.contains(&tag)).unwrap();
                if let Some(prev) = image_class.insert(po.object.ref_name(&img), pos) {
                    assert_eq!(prev, pos, "legs disagree with naive classes");
                }
            }
            // Classes correspond bijectively.
            let distinct: BTreeSet<usize> = image_class.values().copied().collect();
            assert_eq!(distinct.len(), naive.len());
        }
    }
}

#[test]
fn product_counts_by_shuffle_enumeration() {
    // Non-degenerate n-cells of X×Y are pairs of refs with disjoint word
    // letter sets: enumerate directly.
    let d1 = make_standard(StandardKind::Delta, 1).unwrap().with_cap(2).unwrap();
    let p = product(&d1, &d1, 2).unwrap();
    let mut counts = vec![0usize; 3];
    for n in 0..=2usize {
        for rx in d1.simplices_at(n).unwrap() {
            for ry in d1.simplices_at(n).unwrap() {
                let sx: BTreeSet<usize> = rx.word.letters().iter().copied().collect();
                let sy: BTreeSet<usize> = ry.word.letters().iter().copied().collect();
                if sx.intersection(&sy).count() == 0 {
                    counts[n] += 1;
                }
            }
        }
    }
    assert_eq!(p.nondeg_counts(), counts);
    assert_eq!(counts, vec![4, 5, 2]);
}

#[test]
fn cone_of_interval_nerve_is_augmented_poset_nerve() {
    let n01 = nerve(&poset_category(&Poset::chain(2)).unwrap(), 2).unwrap();
    let cone = join_point(&n01).unwrap();
    let n3 = nerve(&poset_category(&Poset::chain(3)).unwrap(), 3).unwrap();
    assert!(find_sset_isomorphism(&cone, &n3).unwrap().is_some());
    for n in 0..=3 {
        assert_eq!(
            cone.level_count(n).unwrap(),
            n3.level_count(n).unwrap(),
            "level {n}"
        );
    }
}

#[test]
fn standard_levels_count_monotone_maps() {
    // |Δ^n_k| = number of weakly increasing (k+1)-tuples in {0..n}.
    fn monotone(n: usize, k: usize) -> usize {
        fn rec(n: usize, len: usize, min: usize) -> usize {
            if len == 0 {
                return 1;
            }
            (min..=n).map(|v| rec(n, len - 1, v)).sum()
        }
        rec(n, k + 1, 0)
    }
    for n in 0..=3usize {
        let d = make_standard(StandardKind::Delta, n).unwrap().with_cap(5).unwrap();
        for k in 0..=5usize {
            assert_eq!(
                d.level_count(k).unwrap(),
                monotone(n, k),
                "n={n} k={k}"
            );
        }
    }
    // The reconciled example: |Δ²_3| = 15.
    assert_eq!(monotone(2, 3), 15);
}

#[test]
fn normal_forms_of_operation_outputs_are_fixed_points() {
    // Every ref produced by face/degeneracy evaluation is already normal.
    let ret2 = nerve(&ret_category(), 3).unwrap();
    for n in 1..=3usize {
        for r in ret2.simplices_at(n).unwrap() {
            for k in 0..=n {
                let f = ret2.apply(&r, Operator::Face(k)).unwrap();
                let renorm =
                    normalize_word(f.word.letters(), ret2.simplex_dim(f.base)).unwrap();
                assert_eq!(renorm, f.word);
            }
        }
    }
}
