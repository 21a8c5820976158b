//! Builtin corpora, generated rather than shipped: every category with at
//! most two objects and at most one non-identity generator, each marked at
//! every object, and every poset with up to five elements taken up to
//! isomorphism. Generation is deterministic.

use sct_core::constructions::MarkedCategory;
use sct_core::fincat::{CatBuilder, FinCategory, Poset};

/// The generator corpus: terminal, the walking idempotent, the arrow, and
/// the discrete pair.
pub fn builtin_categories() -> Vec<FinCategory> {
    let terminal = {
        let mut b = CatBuilder::new("terminal");
        b.add_object_with_identity("pt").unwrap();
        b.finish().unwrap()
    };
    let idem = {
        let mut b = CatBuilder::new("idem");
        let a = b.add_object_with_identity("a").unwrap();
        let e = b.add_morphism("e", a, a).unwrap();
        b.set_composite(e, e, e);
        b.finish().unwrap()
    };
    let arrow = {
        let mut b = CatBuilder::new("arrow");
        let a = b.add_object_with_identity("a").unwrap();
        let c = b.add_object_with_identity("b").unwrap();
        b.add_morphism("f", a, c).unwrap();
        b.finish().unwrap()
    };
    let disc2 = {
        let mut b = CatBuilder::new("disc2");
        b.add_object_with_identity("a").unwrap();
        b.add_object_with_identity("b").unwrap();
        b.finish().unwrap()
    };
    vec![terminal, idem, arrow, disc2]
}

/// Every category in the corpus marked at every object: six in total.
pub fn builtin_marked_categories() -> Vec<MarkedCategory> {
    let mut out = Vec::new();
    for c in builtin_categories() {
        let names: Vec<String> = c.objects().map(|o| c.object_name(o).to_string()).collect();
        for name in names {
            out.push(MarkedCategory::new(c.clone(), &name).unwrap());
        }
    }
    out
}

/// All posets with `n` elements up to isomorphism, deterministic order.
/// Enumerates the three-valued assignment per unordered pair (no relation,
/// forward, backward), keeps transitive ones, and canonicalizes by the
/// minimal relation bitmap over all permutations.
pub fn posets_up_to_iso(n: usize) -> Vec<Poset> {
    if n == 0 {
        return vec![Poset::from_matrix(Vec::new(), Vec::new()).unwrap()];
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let mut canon: std::collections::BTreeSet<Vec<bool>> = std::collections::BTreeSet::new();
    let mut out = Vec::new();

    let encode = |m: &Vec<Vec<bool>>| -> Vec<bool> {
        let mut bits = Vec::with_capacity(n * n);
        for row in m {
            bits.extend_from_slice(row);
        }
        bits
    };

    let perms = permutations(n);
    let total = 3usize.pow(pairs.len() as u32);
    for code in 0..total {
        let mut m = vec![vec![false; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = true;
        }
        let mut c = code;
        for &(i, j) in &pairs {
            match c % 3 {
                1 => m[i][j] = true,
                2 => m[j][i] = true,
                _ => {}
            }
            c /= 3;
        }
        // Transitivity.
        let mut ok = true;
        'outer: for i in 0..n {
            for j in 0..n {
                if m[i][j] {
                    for k in 0..n {
                        if m[j][k] && !m[i][k] {
                            ok = false;
                            break 'outer;
                        }
                    }
                }
            }
        }
        if !ok {
            continue;
        }
        // Canonical form over permutations.
        let mut best: Option<Vec<bool>> = None;
        for p in &perms {
            let mut pm = vec![vec![false; n]; n];
            for i in 0..n {
                for j in 0..n {
                    pm[i][j] = m[p[i]][p[j]];
                }
            }
            let bits = encode(&pm);
            if best.as_ref().map(|b| bits < *b).unwrap_or(true) {
                best = Some(bits);
            }
        }
        let best = best.unwrap();
        if canon.insert(best) {
            let elements = (0..n).map(|i| i.to_string()).collect();
            out.push(Poset::from_matrix(elements, m).unwrap());
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
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

/// Posets of size 1..=max, concatenated.
pub fn builtin_posets(max: usize) -> Vec<Poset> {
    (1..=max).flat_map(posets_up_to_iso).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poset_counts_match_the_literature() {
        // 1, 2, 5, 16, 63 posets on 1..5 unlabeled elements.
        assert_eq!(posets_up_to_iso(1).len(), 1);
        assert_eq!(posets_up_to_iso(2).len(), 2);
        assert_eq!(posets_up_to_iso(3).len(), 5);
        assert_eq!(posets_up_to_iso(4).len(), 16);
        assert_eq!(posets_up_to_iso(5).len(), 63);
    }

    #[test]
    fn six_marked_categories() {
        assert_eq!(builtin_marked_categories().len(), 6);
    }
}
