//! Degeneracy words and their normal forms.
//!
//! A word `[j1, j2, ..., jk]` denotes the composite operator
//! `s_{j1} ∘ s_{j2} ∘ ... ∘ s_{jk}` (the rightmost letter is applied first).
//! The canonical form has strictly decreasing letters; it is reached by
//! exhaustively rewriting `s_i s_j → s_{j+1} s_i` for `i ≤ j`. Uniqueness of
//! the result is the Eilenberg–Zilber property, cross-checked in tests
//! against the monotone-surjection model.

use crate::error::{Error, Result};

/// A strictly decreasing degeneracy word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct DegeneracyWord(Vec<usize>);

impl DegeneracyWord {
    pub fn empty() -> Self {
        DegeneracyWord(Vec::new())
    }

    /// Wraps a letter sequence, requiring it to already be strictly decreasing.
    pub fn new(letters: Vec<usize>) -> Result<Self> {
        if letters.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::Dimension(format!(
                "degeneracy word {letters:?} is not strictly decreasing"
            )));
        }
        Ok(DegeneracyWord(letters))
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// True when the word can be applied step by step to a `dim`-simplex:
    /// reading right to left, `s_j` needs `j ≤` the current dimension.
    pub fn applicable_to(&self, dim: usize) -> bool {
        word_applicable(&self.0, dim)
    }
}

impl std::fmt::Display for DegeneracyWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (n, j) in self.0.iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{j}")?;
        }
        write!(f, "]")
    }
}

fn word_applicable(letters: &[usize], dim: usize) -> bool {
    let mut d = dim;
    for &j in letters.iter().rev() {
        if j > d {
            return false;
        }
        d += 1;
    }
    true
}

/// Rewrites an arbitrary applicable letter sequence into the strictly
/// decreasing normal form using `s_i s_j → s_{j+1} s_i` (i ≤ j).
pub fn normalize_word(letters: &[usize], dim: usize) -> Result<DegeneracyWord> {
    if !word_applicable(letters, dim) {
        return Err(Error::Dimension(format!(
            "word {letters:?} is not applicable to a {dim}-simplex"
        )));
    }
    let mut w = letters.to_vec();
    // Bubble pass: each rewrite strictly reduces the number of inversions'
    // complement, so this terminates.
    loop {
        let mut changed = false;
        for p in 0..w.len().saturating_sub(1) {
            let (i, j) = (w[p], w[p + 1]);
            if i <= j {
                w[p] = j + 1;
                w[p + 1] = i;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    DegeneracyWord::new(w)
}

/// Alternative strategy: rewrite one pair at a time, always the rightmost
/// applicable one. Confluence with `normalize_word` is part of the
/// uniqueness property suite.
pub fn normalize_word_rightmost(letters: &[usize], dim: usize) -> Result<DegeneracyWord> {
    if !word_applicable(letters, dim) {
        return Err(Error::Dimension(format!(
            "word {letters:?} is not applicable to a {dim}-simplex"
        )));
    }
    let mut w = letters.to_vec();
    loop {
        let pos = (0..w.len().saturating_sub(1))
            .rev()
            .find(|&p| w[p] <= w[p + 1]);
        match pos {
            Some(p) => {
                let (i, j) = (w[p], w[p + 1]);
                w[p] = j + 1;
                w[p + 1] = i;
            }
            None => break,
        }
    }
    DegeneracyWord::new(w)
}

/// The same normal form computed through the monotone-surjection model:
/// the word is evaluated to a surjection `[dim+k] → [dim]` and the canonical
/// letters are the positions where consecutive values agree. Used as the
/// independent oracle for `normalize_word`.
pub fn normalize_word_by_surjection(letters: &[usize], dim: usize) -> Result<DegeneracyWord> {
    if !word_applicable(letters, dim) {
        return Err(Error::Dimension(format!(
            "word {letters:?} is not applicable to a {dim}-simplex"
        )));
    }
    let phi = word_to_surjection(letters, dim);
    Ok(surjection_to_word(&phi))
}

/// Evaluates the word to the monotone surjection it represents: the value
/// vector of `σ_{j_k} ∘ ... ∘ σ_{j_1} : [dim + k] → [dim]` (the classifying
/// map is precomposed once per letter, rightmost letter outermost).
pub fn word_to_surjection(letters: &[usize], dim: usize) -> Vec<usize> {
    // Start from the identity on [dim] and precompose with σ_j for each
    // letter, rightmost first.
    let mut phi: Vec<usize> = (0..=dim).collect();
    for &j in letters.iter().rev() {
        // Precompose phi with σ_j : [n+1] → [n], duplicating position j.
        let mut next = Vec::with_capacity(phi.len() + 1);
        next.extend_from_slice(&phi[..=j]);
        next.extend_from_slice(&phi[j..]);
        phi = next;
    }
    phi
}

/// Reads the canonical decreasing word off a monotone surjection's value
/// vector: the letters are `{i : φ(i) = φ(i+1)}` in decreasing order.
pub fn surjection_to_word(phi: &[usize]) -> DegeneracyWord {
    let mut letters: Vec<usize> = (0..phi.len().saturating_sub(1))
        .filter(|&i| phi[i] == phi[i + 1])
        .collect();
    letters.reverse();
    DegeneracyWord(letters)
}

/// All strictly decreasing words of length `len` applicable to a
/// `dim`-simplex, in lexicographic order of their letter vectors.
pub fn words_of_length(dim: usize, len: usize) -> Vec<DegeneracyWord> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(len);
    fn rec(dim: usize, len: usize, current: &mut Vec<usize>, out: &mut Vec<DegeneracyWord>) {
        if current.len() == len {
            out.push(DegeneracyWord(current.clone()));
            return;
        }
        let remaining = len - current.len();
        // Next letter must stay below the previous one and the word must
        // remain applicable: the p-th letter from the right allows ≤ dim+p-1.
        let hi = match current.last() {
            Some(&prev) => prev, // next letter < prev
            None => dim + remaining, // first letter ≤ dim + len - 1, exclusive bound
        };
        let cap = dim + remaining - 1;
        let hi = hi.min(cap + 1);
        for j in (0..hi).rev() {
            current.push(j);
            rec(dim, len, current, out);
            current.pop();
        }
    }
    rec(dim, len, &mut current, &mut out);
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s0_s0_rewrites_to_s1_s0() {
        let w = normalize_word(&[0, 0], 0).unwrap();
        assert_eq!(w.letters(), &[1, 0]);
    }

    #[test]
    fn empty_word_is_fixed() {
        let w = normalize_word(&[], 3).unwrap();
        assert!(w.is_empty());
    }

    #[test]
    fn mixed_word_on_edge() {
        // s0 s2 s1 on a 1-simplex; the surjection model gives (0,0,1,1,1),
        // i.e. letters {3,2,0}.
        let w = normalize_word(&[0, 2, 1], 1).unwrap();
        assert_eq!(w.letters(), &[3, 2, 0]);
        let o = normalize_word_by_surjection(&[0, 2, 1], 1).unwrap();
        assert_eq!(w, o);
    }

    #[test]
    fn inapplicable_word_is_rejected() {
        assert!(normalize_word(&[2, 1], 0).is_err());
        assert!(normalize_word(&[1], 0).is_err());
    }

    #[test]
    fn words_of_length_counts() {
        // Words of length k on a d-simplex = monotone surjections
        // [d+k] ↠ [d] = C(d+k, k).
        fn binom(n: usize, k: usize) -> usize {
            let mut r = 1usize;
            for i in 0..k {
                r = r * (n - i) / (i + 1);
            }
            r
        }
        for d in 0..4 {
            for k in 0..4 {
                assert_eq!(
                    words_of_length(d, k).len(),
                    binom(d + k, k),
                    "d={d} k={k}"
                );
            }
        }
    }

    #[test]
    fn every_enumerated_word_is_applicable_and_normal() {
        for d in 0..4 {
            for k in 0..5 {
                for w in words_of_length(d, k) {
                    assert!(w.applicable_to(d));
                    let renorm = normalize_word(w.letters(), d).unwrap();
                    assert_eq!(renorm, w);
                }
            }
        }
    }
}
