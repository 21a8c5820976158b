//! The nerve of a finite category, truncated: n-simplices are length-n
//! composable chains; the non-degenerate ones contain no identity.

use crate::error::{Error, Result};
use crate::fincat::{validate_category, FinCategory, MorId, ObjId};
use crate::simpset::sset::{SimplexRef, SimplicialSet, SsetBuilder};
use crate::simpset::word::normalize_word;

/// A composable chain; length 0 chains are objects.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chain {
    pub start: ObjId,
    pub arrows: Vec<MorId>,
}

impl Chain {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn end(&self, c: &FinCategory) -> ObjId {
        self.arrows
            .last()
            .map(|&m| c.morphism(m).dst)
            .unwrap_or(self.start)
    }

    /// Whether the chain contains an identity arrow.
    pub fn has_identity(&self, c: &FinCategory) -> bool {
        self.arrows.iter().any(|&m| c.is_identity(m))
    }

    /// The k-th face: drop an endpoint or compose at an inner vertex.
    pub fn face(&self, c: &FinCategory, k: usize) -> Result<Chain> {
        let n = self.len();
        if n == 0 || k > n {
            return Err(Error::Parameter("face out of range on chain".to_string()));
        }
        if k == 0 {
            let start = c.morphism(self.arrows[0]).dst;
            Ok(Chain {
                start,
                arrows: self.arrows[1..].to_vec(),
            })
        } else if k == n {
            Ok(Chain {
                start: self.start,
                arrows: self.arrows[..n - 1].to_vec(),
            })
        } else {
            let mut arrows = Vec::with_capacity(n - 1);
            arrows.extend_from_slice(&self.arrows[..k - 1]);
            arrows.push(c.compose(self.arrows[k], self.arrows[k - 1])?);
            arrows.extend_from_slice(&self.arrows[k + 1..]);
            Ok(Chain {
                start: self.start,
                arrows,
            })
        }
    }

    /// Normal form: strip identity arrows, recording the degeneracy letters
    /// they witness. Identity at arrow position p means the chain is
    /// `s_{p-1}` of the stripped chain.
    pub fn normal_form(&self, c: &FinCategory) -> (Chain, Vec<usize>) {
        let mut current = self.clone();
        let mut letters = Vec::new();
        loop {
            let pos = current
                .arrows
                .iter()
                .position(|&m| c.is_identity(m));
            match pos {
                None => break,
                Some(p) => {
                    letters.push(p);
                    let mut arrows = current.arrows.clone();
                    arrows.remove(p);
                    current = Chain {
                        start: current.start,
                        arrows,
                    };
                }
            }
        }
        (current, letters)
    }

    pub fn name(&self, c: &FinCategory) -> String {
        if self.arrows.is_empty() {
            c.object_name(self.start).to_string()
        } else {
            self.arrows
                .iter()
                .map(|&m| c.morphism(m).name.clone())
                .collect::<Vec<_>>()
                .join("|")
        }
    }
}

/// Enumerates the non-degenerate chains of each length up to the cap,
/// sorted deterministically.
pub fn nondeg_chains(c: &FinCategory, dim_cap: usize) -> Vec<Vec<Chain>> {
    let mut by_len: Vec<Vec<Chain>> = Vec::with_capacity(dim_cap + 1);
    by_len.push(
        c.objects()
            .map(|o| Chain {
                start: o,
                arrows: Vec::new(),
            })
            .collect(),
    );
    for n in 1..=dim_cap {
        let mut next = Vec::new();
        for chain in &by_len[n - 1] {
            let end = chain.end(c);
            for m in c.out_of(end) {
                if !c.is_identity(m) {
                    let mut arrows = chain.arrows.clone();
                    arrows.push(m);
                    next.push(Chain {
                        start: chain.start,
                        arrows,
                    });
                }
            }
        }
        next.sort_by_key(|ch| ch.name(c));
        by_len.push(next);
    }
    by_len
}

/// Builds the truncated nerve presentation. The category must validate.
pub fn nerve(c: &FinCategory, dim_cap: usize) -> Result<SimplicialSet> {
    let verdict = validate_category(c);
    if !verdict.is_valid() {
        return Err(Error::Validation(format!(
            "nerve input is not a category: {verdict:?}"
        )));
    }
    let chains = nondeg_chains(c, dim_cap);
    let mut b = SsetBuilder::new(format!("N({})", c.name), dim_cap);
    for (n, level) in chains.iter().enumerate() {
        for chain in level {
            b.add_simplex(chain.name(c), n)?;
        }
    }
    for (n, level) in chains.iter().enumerate() {
        if n == 0 {
            continue;
        }
        for chain in level {
            let id = b.lookup(&chain.name(c)).unwrap();
            let mut faces = Vec::with_capacity(n + 1);
            for k in 0..=n {
                let f = chain.face(c, k)?;
                let (base, letters) = f.normal_form(c);
                let bid = b.lookup(&base.name(c)).ok_or_else(|| {
                    Error::ConstructionBug(format!("missing chain {}", base.name(c)))
                })?;
                faces.push(SimplexRef {
                    base: bid,
                    word: normalize_word(&letters, base.len())?,
                });
            }
            b.set_faces(id, faces);
        }
    }
    let mut out = b.finish()?;
    // The nerve of a category with composable non-identity chains longer
    // than the cap always loses simplices to truncation.
    out.truncated = !chains
        .last()
        .map(|lvl| lvl.is_empty())
        .unwrap_or(true);
    Ok(out)
}

/// Resolves a simplex of the nerve back to the chain it names, with
/// degenerate levels reconstituted by reinserting identities.
pub fn ref_to_chain(
    c: &FinCategory,
    n_of_c: &SimplicialSet,
    chains: &[Vec<Chain>],
    r: &SimplexRef,
) -> Result<Chain> {
    let name = n_of_c.simplex_name(r.base).to_string();
    let dim = n_of_c.simplex_dim(r.base);
    let base = chains[dim]
        .iter()
        .find(|ch| ch.name(c) == name)
        .cloned()
        .ok_or_else(|| Error::ConstructionBug(format!("unknown chain {name}")))?;
    // Apply the degeneracy word, rightmost letter first: s_j inserts an
    // identity at arrow position j.
    let mut chain = base;
    for &j in r.word.letters().iter().rev() {
        let obj = if j == 0 {
            chain.start
        } else {
            let m = chain.arrows[j - 1];
            c.morphism(m).dst
        };
        chain.arrows.insert(j, c.identity(obj));
    }
    Ok(chain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{poset_category, ret_category, terminal_category, CatBuilder, Poset};
    use crate::simpset::map::find_sset_isomorphism;
    use crate::simpset::standard::{make_standard, StandardKind};

    #[test]
    fn nerve_of_chain_poset_is_delta1() {
        let c = poset_category(&Poset::chain(2)).unwrap();
        let n = nerve(&c, 1).unwrap();
        let d1 = make_standard(StandardKind::Delta, 1).unwrap();
        assert!(find_sset_isomorphism(&n, &d1).unwrap().is_some());
    }

    #[test]
    fn nerve_of_ret_counts() {
        let n = nerve(&ret_category(), 2).unwrap();
        assert_eq!(n.nondeg_counts(), vec![2, 3, 5]);
        assert!(n.truncated);
    }

    #[test]
    fn nerve_of_discrete_two_objects() {
        let mut b = CatBuilder::new("disc2");
        b.add_object_with_identity("a").unwrap();
        b.add_object_with_identity("b").unwrap();
        let c = b.finish().unwrap();
        let n = nerve(&c, 2).unwrap();
        assert_eq!(n.nondeg_counts(), vec![2, 0, 0]);
        assert!(!n.truncated);
    }

    #[test]
    fn nerve_of_terminal_is_point() {
        let n = nerve(&terminal_category(), 3).unwrap();
        assert_eq!(n.nondeg_counts(), vec![1, 0, 0, 0]);
        // Unique degenerate simplex at each level.
        for lvl in 0..=3 {
            assert_eq!(n.level_count(lvl).unwrap(), 1);
        }
    }
}
