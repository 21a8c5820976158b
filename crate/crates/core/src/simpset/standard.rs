//! Standard simplices, horns, and boundaries, presented on the nose:
//! non-degenerate k-simplices are the strictly increasing (k+1)-subsets of
//! `{0,…,n}` admitted by the kind, and faces delete vertices.

use crate::error::{Error, Result};
use crate::simpset::sset::{SimplexRef, SimplicialSet, SsetBuilder};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StandardKind {
    Delta,
    Horn(usize),
    Boundary,
}

/// Name of a vertex subset: digits are concatenated while all vertices fit
/// in one digit, otherwise dot-separated. Deterministic per `n`.
pub fn subset_name(subset: &[usize], n: usize) -> String {
    if n <= 9 {
        subset.iter().map(|v| v.to_string()).collect()
    } else {
        subset
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(".")
    }
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..=n {
            cur.push(v);
            rec(n, k, v + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, k, 0, &mut cur, &mut out);
    out
}

pub fn make_standard(kind: StandardKind, n: usize) -> Result<SimplicialSet> {
    let (name, admitted): (String, Box<dyn Fn(&[usize]) -> bool>) = match kind {
        StandardKind::Delta => (format!("delta{n}"), Box::new(|_: &[usize]| true)),
        StandardKind::Horn(i) => {
            if n == 0 || i > n {
                return Err(Error::Parameter(format!(
                    "horn index {i} invalid for dimension {n}"
                )));
            }
            let full: Vec<usize> = (0..=n).collect();
            let opposite: Vec<usize> = (0..=n).filter(|&v| v != i).collect();
            (
                format!("horn{n}_{i}"),
                Box::new(move |s: &[usize]| s != full.as_slice() && s != opposite.as_slice()),
            )
        }
        StandardKind::Boundary => {
            if n == 0 {
                return Err(Error::Parameter(
                    "the boundary of a point is empty; not representable".to_string(),
                ));
            }
            let full: Vec<usize> = (0..=n).collect();
            (
                format!("bdry{n}"),
                Box::new(move |s: &[usize]| s != full.as_slice()),
            )
        }
    };

    let mut b = SsetBuilder::new(name, n);
    for k in 0..=n {
        for subset in subsets_of_size(n, k + 1) {
            if admitted(&subset) {
                b.add_simplex(subset_name(&subset, n), k)?;
            }
        }
    }
    for k in 1..=n {
        for subset in subsets_of_size(n, k + 1) {
            if !admitted(&subset) {
                continue;
            }
            let id = b.lookup(&subset_name(&subset, n)).unwrap();
            let faces = (0..=k)
                .map(|j| {
                    let mut face = subset.clone();
                    face.remove(j);
                    SimplexRef::nondeg(b.lookup(&subset_name(&face, n)).unwrap())
                })
                .collect();
            b.set_faces(id, faces);
        }
    }
    b.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_counts() {
        let d2 = make_standard(StandardKind::Delta, 2).unwrap();
        assert_eq!(d2.nondeg_counts(), vec![3, 3, 1]);
    }

    #[test]
    fn horn_counts() {
        let h = make_standard(StandardKind::Horn(1), 2).unwrap();
        assert_eq!(h.nondeg_counts(), vec![3, 2, 0]);
        assert!(h.lookup("02").is_none());
        assert!(h.lookup("012").is_none());
    }

    #[test]
    fn boundary_counts() {
        let b = make_standard(StandardKind::Boundary, 2).unwrap();
        assert_eq!(b.nondeg_counts(), vec![3, 3, 0]);
    }

    #[test]
    fn invalid_parameters() {
        assert!(make_standard(StandardKind::Horn(3), 2).is_err());
        assert!(make_standard(StandardKind::Horn(0), 0).is_err());
        assert!(make_standard(StandardKind::Boundary, 0).is_err());
    }

    #[test]
    fn delta2_level_3_has_15_simplices() {
        // Monotone maps [3] → [2]: C(6,4) = 15; cross-checked by direct
        // enumeration of weakly increasing vertex lists.
        let d2 = make_standard(StandardKind::Delta, 2).unwrap().with_cap(3).unwrap();
        let refs = d2.simplices_at(3).unwrap();
        let mut monotone = 0;
        for a in 0..=2usize {
            for b in a..=2 {
                for c in b..=2 {
                    for d in c..=2 {
                        let _ = (a, b, c, d);
                        monotone += 1;
                    }
                }
            }
        }
        assert_eq!(monotone, 15);
        assert_eq!(refs.len(), monotone);
    }
}
