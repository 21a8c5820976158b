//! The finite split/pure model, exhaustively: over the terminal and arrow
//! bases with value sets of size ≤ 3, every morphism between corpus
//! presheaves is classified as split or not, purity against the whole
//! corpus is decided by a shared sweep, and the two notions must coincide.
//! The sweep is cross-checked against the module's own purity operation on
//! a seeded sample, and the cobase-change splitting step reports a split
//! in every case with a supplied filler.

use std::collections::{BTreeMap, HashSet};
use std::rc::Rc;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::report::Report;
use crate::suites::SuiteOptions;
use sct_core::fincat::{poset_category, terminal_category, FinCategory, Poset};
use sct_core::presheaf::{cobase_split, enumerate_nat, is_pure, is_split, FinPresheaf, PresheafMorphism};

/// Flattened transformation between two corpus presheaves: per source
/// element position, the target element position; object boundaries are
/// implicit in the shared element layout.
type Flat = Vec<u8>;

struct Corpus {
    presheaves: Vec<FinPresheaf>,
    /// Interned transformations per ordered pair of presheaf indices.
    nat: Vec<Vec<Vec<Flat>>>,
    /// Element offsets per presheaf per object, for flattening.
    offsets: Vec<Vec<usize>>,
}

fn flatten(p: &FinPresheaf, q: &FinPresheaf, m: &PresheafMorphism, offsets_q: &[usize]) -> Flat {
    let mut out = Vec::new();
    for o in p.base.objects() {
        for e in p.value(o) {
            let v = m.at(o, e).expect("total component");
            let pos = q.value(o).iter().position(|x| x == v).expect("in target");
            out.push((offsets_q[o.0 as usize] + pos) as u8);
        }
    }
    out
}

fn unflatten(p: &FinPresheaf, q: &FinPresheaf, flat: &Flat, offsets_q: &[usize]) -> PresheafMorphism {
    let mut components = Vec::new();
    let mut at = 0usize;
    for o in p.base.objects() {
        let mut comp = BTreeMap::new();
        for e in p.value(o) {
            let idx = flat[at] as usize - offsets_q[o.0 as usize];
            comp.insert(e.clone(), q.value(o)[idx].clone());
            at += 1;
        }
        components.push(comp);
    }
    PresheafMorphism { components }
}

/// `g ∘ f` on flats: positions chase through.
fn compose_flat(f: &Flat, g: &Flat) -> Flat {
    f.iter().map(|&i| g[i as usize]).collect()
}

/// Canonical key of a presheaf under relabelings of its value sets: the
/// minimal serialized action table over all permutation tuples. Splitness
/// and purity are invariant under isomorphism, so checking canonical
/// representatives decides the whole universe.
fn canonical_key(p: &FinPresheaf) -> String {
    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        let mut items: Vec<usize> = (0..n).collect();
        fn heap(k: usize, items: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if k <= 1 {
                out.push(items.clone());
                return;
            }
            for i in 0..k {
                heap(k - 1, items, out);
                if k % 2 == 0 {
                    items.swap(i, k - 1);
                } else {
                    items.swap(0, k - 1);
                }
            }
        }
        heap(n, &mut items, &mut out);
        out
    }
    let base = &p.base;
    let per_object: Vec<Vec<Vec<usize>>> = base
        .objects()
        .map(|o| perms(p.value(o).len()))
        .collect();
    // Cartesian product of permutation choices.
    let mut tuples: Vec<Vec<usize>> = vec![Vec::new()];
    for po in &per_object {
        let mut next = Vec::new();
        for t in &tuples {
            for (i, _) in po.iter().enumerate() {
                let mut t2 = t.clone();
                t2.push(i);
                next.push(t2);
            }
        }
        tuples = next;
    }
    let mut best: Option<String> = None;
    for t in &tuples {
        let mut s = String::new();
        for o in base.objects() {
            s.push_str(&format!("|{}", p.value(o).len()));
        }
        for m in base.morphisms() {
            if base.is_identity(m) {
                continue;
            }
            let d = base.morphism(m);
            let ps = &per_object[d.src.0 as usize][t[d.src.0 as usize]];
            let pd = &per_object[d.dst.0 as usize][t[d.dst.0 as usize]];
            s.push(';');
            for pos in 0..p.value(d.src).len() {
                // Relabeled action: e_{ps[pos]} ↦ target position.
                let e = &p.value(d.src)[ps[pos]];
                let v = p.apply(m, e).expect("total");
                let vpos = p.value(d.dst).iter().position(|x| x == v).unwrap();
                let relabeled = pd.iter().position(|&q| q == vpos).unwrap();
                s.push_str(&relabeled.to_string());
            }
        }
        if best.as_ref().map(|b| s < *b).unwrap_or(true) {
            best = Some(s);
        }
    }
    best.unwrap()
}

fn build_corpus(base: Rc<FinCategory>, max_size: usize) -> Result<Corpus, sct_core::Error> {
    // All presheaves with canonical value sets e0..e{k-1} per object and
    // every action assignment.
    let nobj = base.object_count();
    let sizes: Vec<Vec<usize>> = {
        let mut out = vec![Vec::new()];
        for _ in 0..nobj {
            let mut next = Vec::new();
            for partial in &out {
                for s in 0..=max_size {
                    let mut p = partial.clone();
                    p.push(s);
                    next.push(p);
                }
            }
            out = next;
        }
        out
    };
    let mut presheaves = Vec::new();
    for sizes in &sizes {
        let values: Vec<Vec<String>> = sizes
            .iter()
            .map(|&s| (0..s).map(|i| format!("e{i}")).collect())
            .collect();
        // Enumerate all action assignments for non-identity morphisms.
        let free: Vec<_> = base.morphisms().filter(|&m| !base.is_identity(m)).collect();
        let mut assignments: Vec<Vec<BTreeMap<String, String>>> = vec![Vec::new()];
        for &m in &free {
            let d = base.morphism(m);
            let src = &values[d.src.0 as usize];
            let dst = &values[d.dst.0 as usize];
            let mut fns: Vec<BTreeMap<String, String>> = vec![BTreeMap::new()];
            for e in src {
                let mut next = Vec::new();
                for partial in &fns {
                    for v in dst {
                        let mut p = partial.clone();
                        p.insert(e.clone(), v.clone());
                        next.push(p);
                    }
                }
                fns = next;
            }
            if src.is_empty() {
                fns = vec![BTreeMap::new()];
            }
            if dst.is_empty() && !src.is_empty() {
                fns.clear();
            }
            let mut next = Vec::new();
            for partial in &assignments {
                for f in &fns {
                    let mut p = partial.clone();
                    p.push(f.clone());
                    next.push(p);
                }
            }
            assignments = next;
        }
        for assign in assignments {
            let mut actions: Vec<BTreeMap<String, String>> =
                vec![BTreeMap::new(); base.morphism_count()];
            for o in base.objects() {
                actions[base.identity(o).0 as usize] = values[o.0 as usize]
                    .iter()
                    .map(|e| (e.clone(), e.clone()))
                    .collect();
            }
            for (pos, &m) in free.iter().enumerate() {
                actions[m.0 as usize] = assign[pos].clone();
            }
            let name = format!("P{}", presheaves.len());
            if let Ok(p) = FinPresheaf::new(name, base.clone(), values.clone(), actions) {
                presheaves.push(p);
            }
        }
    }
    // Canonical representatives: one presheaf per isomorphism class.
    {
        let mut seen = HashSet::new();
        presheaves.retain(|p| seen.insert(canonical_key(p)));
    }

    let offsets: Vec<Vec<usize>> = presheaves
        .iter()
        .map(|p| {
            let mut off = Vec::with_capacity(nobj);
            let mut at = 0;
            for o in base.objects() {
                off.push(at);
                at += p.value(o).len();
            }
            off
        })
        .collect();

    let n = presheaves.len();
    let mut nat = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let ms = enumerate_nat(&presheaves[i], &presheaves[j])?;
            nat[i][j] = ms
                .iter()
                .map(|m| flatten(&presheaves[i], &presheaves[j], m, &offsets[j]))
                .collect();
        }
    }
    Ok(Corpus {
        presheaves,
        nat,
        offsets,
    })
}

/// Purity of every corpus morphism by the shared sweep. Returns, per
/// (source index, target index, transformation index), whether it is pure.
fn sweep_pure(corpus: &Corpus) -> Vec<Vec<Vec<bool>>> {
    let n = corpus.presheaves.len();
    // Identity flats per presheaf.
    let ids: Vec<Flat> = corpus
        .presheaves
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let total: usize = p.values.iter().map(|v| v.len()).sum();
            let _ = i;
            (0..total as u8).collect()
        })
        .collect();

    let mut pure: Vec<Vec<Vec<bool>>> = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| vec![true; corpus.nat[a][b].len()])
                .collect()
        })
        .collect();

    // Split pre-pass: f not split fails its own identity square.
    for a in 0..n {
        for b in 0..n {
            for (fi, f) in corpus.nat[a][b].iter().enumerate() {
                let split = corpus.nat[b][a]
                    .iter()
                    .any(|r| compose_flat(f, r) == ids[a]);
                if !split {
                    pure[a][b][fi] = false;
                }
            }
        }
    }

    // Full sweep over (A', B', f'): any still-pure f: A→B fails if some
    // u : A' → A that does not factor through f' completes a commuting
    // square over f.
    for ap in 0..n {
        for bp in 0..n {
            for fp in &corpus.nat[ap][bp] {
                // Factorable u's per target A, as a set of flats.
                let mut factorable: Vec<HashSet<&Flat>> = Vec::with_capacity(n);
                let mut bad_u: Vec<Vec<&Flat>> = Vec::with_capacity(n);
                for a in 0..n {
                    let facts: HashSet<Flat> = corpus.nat[bp][a]
                        .iter()
                        .map(|ub| compose_flat(fp, ub))
                        .collect();
                    let mut bad = Vec::new();
                    let mut fact_refs = HashSet::new();
                    for u in &corpus.nat[ap][a] {
                        if facts.contains(u) {
                            fact_refs.insert(u);
                        } else {
                            bad.push(u);
                        }
                    }
                    factorable.push(fact_refs);
                    bad_u.push(bad);
                }
                let v_img: Vec<HashSet<Flat>> = (0..n)
                    .map(|b| {
                        corpus.nat[bp][b]
                            .iter()
                            .map(|v| compose_flat(fp, v))
                            .collect()
                    })
                    .collect();
                for a in 0..n {
                    if bad_u[a].is_empty() {
                        continue;
                    }
                    for b in 0..n {
                        if v_img[b].is_empty() {
                            continue;
                        }
                        for (fi, f) in corpus.nat[a][b].iter().enumerate() {
                            if !pure[a][b][fi] {
                                continue;
                            }
                            if bad_u[a]
                                .iter()
                                .any(|u| v_img[b].contains(&compose_flat(u, f)))
                            {
                                pure[a][b][fi] = false;
                            }
                        }
                    }
                }
            }
        }
    }
    pure
}

fn bases(max_size: usize) -> Vec<(String, Rc<FinCategory>, usize)> {
    vec![
        ("terminal".to_string(), Rc::new(terminal_category()), max_size),
        (
            "arrow".to_string(),
            Rc::new(
                poset_category(&Poset::new(vec!["0".into(), "1".into()], &[(0, 1)]).unwrap())
                    .unwrap(),
            ),
            max_size,
        ),
    ]
}

pub fn run(opts: &SuiteOptions) -> Report {
    let mut report = Report::new("pure-split");
    let max_size = opts.max_size.min(3);

    for (base_name, base, size) in bases(max_size) {
        report.check(format!("pure-iff-split[{base_name},size≤{size},up-to-iso]"), || {
            let corpus = build_corpus(base.clone(), size)?;
            let n = corpus.presheaves.len();
            let pure = sweep_pure(&corpus);
            let mut morphisms = 0usize;
            let mut split_count = 0usize;
            let ids: Vec<Flat> = corpus
                .presheaves
                .iter()
                .map(|p| {
                    let total: usize = p.values.iter().map(|v| v.len()).sum();
                    (0..total as u8).collect()
                })
                .collect();
            for a in 0..n {
                for b in 0..n {
                    for (fi, f) in corpus.nat[a][b].iter().enumerate() {
                        morphisms += 1;
                        let split = corpus.nat[b][a]
                            .iter()
                            .any(|r| compose_flat(f, r) == ids[a]);
                        if split {
                            split_count += 1;
                            if !pure[a][b][fi] {
                                return Ok((
                                    false,
                                    format!("split morphism #{fi}: P{a}→P{b} not pure"),
                                ));
                            }
                        } else if pure[a][b][fi] {
                            return Ok((
                                false,
                                format!("non-split morphism #{fi}: P{a}→P{b} pure"),
                            ));
                        }
                    }
                }
            }
            Ok((
                true,
                format!("{morphisms} morphisms over {n} presheaves; {split_count} split, all and only those pure"),
            ))
        });
    }

    report.check("module-op-agrees-on-sample", || {
        // Cross-check the sweep against the module's own purity check.
        let (_, base, _) = bases(max_size).remove(0);
        let corpus = build_corpus(base, max_size)?;
        let pure = sweep_pure(&corpus);
        let tests: Vec<FinPresheaf> = corpus.presheaves.clone();
        let n = corpus.presheaves.len();
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let mut checked = 0usize;
        for _ in 0..400 {
            let a = (rng.next_u32() as usize) % n;
            let b = (rng.next_u32() as usize) % n;
            if corpus.nat[a][b].is_empty() {
                continue;
            }
            let fi = (rng.next_u32() as usize) % corpus.nat[a][b].len();
            let f = unflatten(
                &corpus.presheaves[a],
                &corpus.presheaves[b],
                &corpus.nat[a][b][fi],
                &corpus.offsets[b],
            );
            let module_pure = is_pure(
                &f,
                &corpus.presheaves[a],
                &corpus.presheaves[b],
                &tests,
            )?
            .is_none();
            let module_split = is_split(&f, &corpus.presheaves[a], &corpus.presheaves[b])?
                .is_some();
            if module_pure != pure[a][b][fi] || module_split != pure[a][b][fi] {
                return Ok((
                    false,
                    format!("sample P{a}→P{b}#{fi}: module disagrees with sweep"),
                ));
            }
            checked += 1;
        }
        Ok((checked > 100, format!("{checked} sampled morphisms agree")))
    });

    report.check("cobase-change-splits", || {
        // Exhaustive over the terminal base at full size, and the arrow
        // base at size ≤ 2 (the sweep above covers the rest).
        let mut cases = 0usize;
        for (base_name, base, size) in [
            ("terminal", Rc::new(terminal_category()), max_size),
            (
                "arrow",
                Rc::new(
                    poset_category(
                        &Poset::new(vec!["0".into(), "1".into()], &[(0, 1)]).unwrap(),
                    )
                    .unwrap(),
                ),
                max_size.min(2),
            ),
        ] {
            let corpus = build_corpus(base, size)?;
            let n = corpus.presheaves.len();
            for ai in 0..n {
                for bi in 0..n {
                    for fflat in &corpus.nat[ai][bi] {
                        let fi = unflatten(
                            &corpus.presheaves[ai],
                            &corpus.presheaves[bi],
                            fflat,
                            &corpus.offsets[bi],
                        );
                        for a in 0..n {
                            for gflat in &corpus.nat[bi][a] {
                                let g = unflatten(
                                    &corpus.presheaves[bi],
                                    &corpus.presheaves[a],
                                    gflat,
                                    &corpus.offsets[a],
                                );
                                let u_flat = compose_flat(fflat, gflat);
                                let u = unflatten(
                                    &corpus.presheaves[ai],
                                    &corpus.presheaves[a],
                                    &u_flat,
                                    &corpus.offsets[a],
                                );
                                let out = cobase_split(
                                    &fi,
                                    &corpus.presheaves[ai],
                                    &corpus.presheaves[bi],
                                    &u,
                                    &corpus.presheaves[a],
                                    Some(&g),
                                )?;
                                if out.retraction.is_none() {
                                    return Ok((
                                        false,
                                        format!(
                                            "[{base_name}] fi: P{ai}→P{bi} with filler fails to split"
                                        ),
                                    ));
                                }
                                cases += 1;
                            }
                        }
                    }
                }
            }
        }
        Ok((cases > 0, format!("{cases} cobase changes, all split")))
    });

    report
}
