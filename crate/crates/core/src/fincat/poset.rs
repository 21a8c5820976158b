//! Finite posets and their category presentations.

use crate::error::{Error, Result};
use crate::fincat::{CatBuilder, FinCategory};

/// A finite poset: elements by name, order as a reflexive matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    pub elements: Vec<String>,
    /// `leq[a][b]` iff element a ≤ element b.
    pub leq: Vec<Vec<bool>>,
}

impl Poset {
    /// Builds from the strict covers (or any generating pairs); the order
    /// is the reflexive-transitive closure, checked for antisymmetry.
    pub fn new(elements: Vec<String>, pairs: &[(usize, usize)]) -> Result<Poset> {
        let n = elements.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::Parameter("pair out of range".to_string()));
            }
            leq[a][b] = true;
        }
        // Warshall closure.
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        let p = Poset { elements, leq };
        p.validate()?;
        Ok(p)
    }

    pub fn from_matrix(elements: Vec<String>, leq: Vec<Vec<bool>>) -> Result<Poset> {
        let p = Poset { elements, leq };
        p.validate()?;
        Ok(p)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    /// Exhaustive check of reflexivity, antisymmetry, and transitivity.
    pub fn validate(&self) -> Result<()> {
        let n = self.len();
        if self.leq.len() != n || self.leq.iter().any(|r| r.len() != n) {
            return Err(Error::Validation("order matrix has wrong shape".to_string()));
        }
        for i in 0..n {
            if !self.leq[i][i] {
                return Err(Error::Validation(format!(
                    "order not reflexive at {}",
                    self.elements[i]
                )));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && self.leq[i][j] && self.leq[j][i] {
                    return Err(Error::Validation(format!(
                        "order not antisymmetric on ({}, {})",
                        self.elements[i], self.elements[j]
                    )));
                }
                for k in 0..n {
                    if self.leq[i][j] && self.leq[j][k] && !self.leq[i][k] {
                        return Err(Error::Validation(format!(
                            "order not transitive via ({}, {}, {})",
                            self.elements[i], self.elements[j], self.elements[k]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn point() -> Poset {
        Poset::new(vec!["0".to_string()], &[]).unwrap()
    }

    /// The chain 0 < 1 < … < n-1.
    pub fn chain(n: usize) -> Poset {
        let elements = (0..n).map(|i| i.to_string()).collect();
        let pairs: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        Poset::new(elements, &pairs).unwrap()
    }
}

/// The category of a poset: one morphism `b.<i>.<j>` per strict pair
/// `i < j` plus identities.
pub fn poset_category(p: &Poset) -> Result<FinCategory> {
    let mut b = CatBuilder::new("poset");
    for e in &p.elements {
        b.add_object_with_identity(e)?;
    }
    for i in 0..p.len() {
        for j in 0..p.len() {
            if i != j && p.le(i, j) {
                let src = b.lookup_object(&p.elements[i]).unwrap();
                let dst = b.lookup_object(&p.elements[j]).unwrap();
                b.add_morphism(format!("b.{}.{}", p.elements[i], p.elements[j]), src, dst)?;
            }
        }
    }
    // Composites of strict arrows are strict arrows (or nothing to do).
    let names: Vec<(usize, usize)> = (0..p.len())
        .flat_map(|i| (0..p.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j && p.le(i, j))
        .collect();
    for &(i, j) in &names {
        for &(k, l) in &names {
            if k == j {
                let f = b
                    .lookup_morphism(&format!("b.{}.{}", p.elements[i], p.elements[j]))
                    .unwrap();
                let g = b
                    .lookup_morphism(&format!("b.{}.{}", p.elements[k], p.elements[l]))
                    .unwrap();
                let h = b
                    .lookup_morphism(&format!("b.{}.{}", p.elements[i], p.elements[l]))
                    .unwrap();
                b.set_composite(g, f, h);
            }
        }
    }
    b.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::validate_category;

    #[test]
    fn chain_category_is_valid() {
        let p = Poset::chain(4);
        let c = poset_category(&p).unwrap();
        assert!(validate_category(&c).is_valid());
        assert_eq!(c.morphism_count(), 4 + 6);
    }

    #[test]
    fn cyclic_relation_is_rejected() {
        let r = Poset::new(vec!["a".into(), "b".into()], &[(0, 1), (1, 0)]);
        assert!(r.is_err());
    }
}
