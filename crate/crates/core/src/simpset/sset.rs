//! Dimension-truncated, finitely presented simplicial sets.
//!
//! A set is presented by its non-degenerate simplices and the faces of each;
//! every simplex is named by a unique normal form: a non-degenerate base plus
//! a strictly decreasing degeneracy word. Faces of degenerate simplices are
//! never stored, they are evaluated on demand through the simplicial
//! identities.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::simpset::word::{normalize_word, words_of_length, DegeneracyWord};

/// Index of a non-degenerate simplex inside one simplicial set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplexId(pub u32);

/// Canonical name of a possibly degenerate simplex: a non-degenerate base
/// and a strictly decreasing word. Two refs are equal iff both components
/// are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplexRef {
    pub base: SimplexId,
    pub word: DegeneracyWord,
}

impl SimplexRef {
    pub fn nondeg(base: SimplexId) -> Self {
        SimplexRef {
            base,
            word: DegeneracyWord::empty(),
        }
    }

    pub fn is_nondeg(&self) -> bool {
        self.word.is_empty()
    }
}

/// Face or degeneracy operator selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Operator {
    Face(usize),
    Degeneracy(usize),
}

#[derive(Debug, Clone)]
struct SimplexData {
    name: String,
    dim: usize,
    /// `dim + 1` faces for simplices of dim ≥ 1, empty for vertices.
    faces: Vec<SimplexRef>,
}

#[derive(Debug, Clone)]
pub struct SimplicialSet {
    name: String,
    dim_cap: usize,
    simplices: Vec<SimplexData>,
    by_dim: Vec<Vec<SimplexId>>,
    by_name: HashMap<String, SimplexId>,
    /// Set when an operation that produced this set discarded simplices
    /// above the cap.
    pub truncated: bool,
}

/// Incremental builder; `finish` validates the presentation.
pub struct SsetBuilder {
    name: String,
    dim_cap: usize,
    simplices: Vec<SimplexData>,
    by_name: HashMap<String, SimplexId>,
}

impl SsetBuilder {
    pub fn new(name: impl Into<String>, dim_cap: usize) -> Self {
        SsetBuilder {
            name: name.into(),
            dim_cap,
            simplices: Vec::new(),
            by_name: HashMap::new(),
        }
    }

    /// Registers a non-degenerate simplex; faces may be attached later.
    pub fn add_simplex(&mut self, name: impl Into<String>, dim: usize) -> Result<SimplexId> {
        let name = name.into();
        if dim > self.dim_cap {
            return Err(Error::Truncation(format!(
                "simplex {name} of dimension {dim} exceeds cap {}",
                self.dim_cap
            )));
        }
        if self.by_name.contains_key(&name) {
            return Err(Error::Parameter(format!("duplicate simplex name {name}")));
        }
        let id = SimplexId(self.simplices.len() as u32);
        self.by_name.insert(name.clone(), id);
        self.simplices.push(SimplexData {
            name,
            dim,
            faces: Vec::new(),
        });
        Ok(id)
    }

    pub fn set_faces(&mut self, id: SimplexId, faces: Vec<SimplexRef>) {
        self.simplices[id.0 as usize].faces = faces;
    }

    pub fn lookup(&self, name: &str) -> Option<SimplexId> {
        self.by_name.get(name).copied()
    }

    pub fn finish(self) -> Result<SimplicialSet> {
        let mut by_dim = vec![Vec::new(); self.dim_cap + 1];
        for (n, s) in self.simplices.iter().enumerate() {
            by_dim[s.dim].push(SimplexId(n as u32));
        }
        for ids in &mut by_dim {
            ids.sort_by(|a, b| {
                self.simplices[a.0 as usize]
                    .name
                    .cmp(&self.simplices[b.0 as usize].name)
            });
        }
        let sset = SimplicialSet {
            name: self.name,
            dim_cap: self.dim_cap,
            simplices: self.simplices,
            by_dim,
            by_name: self.by_name,
            truncated: false,
        };
        sset.validate()?;
        Ok(sset)
    }
}

impl SimplicialSet {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim_cap(&self) -> usize {
        self.dim_cap
    }

    pub fn simplex_name(&self, id: SimplexId) -> &str {
        &self.simplices[id.0 as usize].name
    }

    pub fn simplex_dim(&self, id: SimplexId) -> usize {
        self.simplices[id.0 as usize].dim
    }

    pub fn ref_dim(&self, r: &SimplexRef) -> usize {
        self.simplex_dim(r.base) + r.word.len()
    }

    pub fn lookup(&self, name: &str) -> Option<SimplexId> {
        self.by_name.get(name).copied()
    }

    /// Non-degenerate simplices of one dimension, sorted by name.
    pub fn nondeg_at(&self, dim: usize) -> &[SimplexId] {
        static EMPTY: &[SimplexId] = &[];
        self.by_dim.get(dim).map(|v| v.as_slice()).unwrap_or(EMPTY)
    }

    pub fn nondeg_counts(&self) -> Vec<usize> {
        self.by_dim.iter().map(|v| v.len()).collect()
    }

    pub fn all_nondeg(&self) -> impl Iterator<Item = SimplexId> + '_ {
        self.by_dim.iter().flatten().copied()
    }

    /// Stored faces of a non-degenerate simplex of dimension ≥ 1.
    pub fn faces_of(&self, id: SimplexId) -> &[SimplexRef] {
        &self.simplices[id.0 as usize].faces
    }

    /// Pretty canonical name of a ref, e.g. `e` or `e.s3s1s0`.
    pub fn ref_name(&self, r: &SimplexRef) -> String {
        if r.word.is_empty() {
            self.simplex_name(r.base).to_string()
        } else {
            let mut s = self.simplex_name(r.base).to_string();
            s.push('.');
            for j in r.word.letters() {
                s.push('s');
                s.push_str(&j.to_string());
            }
            s
        }
    }

    /// All simplices of dimension `n`: every non-degenerate base of
    /// dimension `d ≤ n` paired with every valid decreasing word of length
    /// `n − d`. Deterministic order.
    pub fn simplices_at(&self, n: usize) -> Result<Vec<SimplexRef>> {
        if n > self.dim_cap {
            return Err(Error::Truncation(format!(
                "level {n} exceeds cap {} of {}",
                self.dim_cap, self.name
            )));
        }
        let mut out = Vec::new();
        for d in 0..=n {
            let words = words_of_length(d, n - d);
            for &id in self.nondeg_at(d) {
                for w in &words {
                    out.push(SimplexRef {
                        base: id,
                        word: w.clone(),
                    });
                }
            }
        }
        Ok(out)
    }

    /// Count of `simplices_at(n)` without materializing it.
    pub fn level_count(&self, n: usize) -> Result<usize> {
        if n > self.dim_cap {
            return Err(Error::Truncation(format!(
                "level {n} exceeds cap {}",
                self.dim_cap
            )));
        }
        let mut total = 0;
        for d in 0..=n {
            total += self.nondeg_at(d).len() * words_of_length(d, n - d).len();
        }
        Ok(total)
    }

    /// Evaluates a face or degeneracy operator on a simplex, commuting the
    /// operator through the degeneracy word; the result is in normal form.
    pub fn apply(&self, r: &SimplexRef, op: Operator) -> Result<SimplexRef> {
        let dim = self.ref_dim(r);
        match op {
            Operator::Degeneracy(k) => {
                if k > dim {
                    return Err(Error::Parameter(format!(
                        "degeneracy index {k} out of range for dimension {dim}"
                    )));
                }
                if dim + 1 > self.dim_cap {
                    return Err(Error::Truncation(format!(
                        "degeneracy would exceed cap {}",
                        self.dim_cap
                    )));
                }
                let mut letters = vec![k];
                letters.extend_from_slice(r.word.letters());
                let word = normalize_word(&letters, self.simplex_dim(r.base))?;
                Ok(SimplexRef {
                    base: r.base,
                    word,
                })
            }
            Operator::Face(k) => {
                if dim == 0 {
                    return Err(Error::Parameter(
                        "a 0-simplex has no faces".to_string(),
                    ));
                }
                if k > dim {
                    return Err(Error::Parameter(format!(
                        "face index {k} out of range for dimension {dim}"
                    )));
                }
                self.face_of_ref(r, k)
            }
        }
    }

    fn face_of_ref(&self, r: &SimplexRef, k: usize) -> Result<SimplexRef> {
        // Commute ∂_k through the word letter by letter:
        //   ∂_i s_j = s_{j-1} ∂_i   (i < j)
        //   ∂_i s_j = id            (i = j or i = j+1)
        //   ∂_i s_j = s_j ∂_{i-1}   (i > j+1)
        let mut emitted: Vec<usize> = Vec::new();
        let mut i = k;
        let letters = r.word.letters();
        for (pos, &j) in letters.iter().enumerate() {
            if i < j {
                emitted.push(j - 1);
            } else if i == j || i == j + 1 {
                // Operator cancels; the remainder of the word survives.
                let mut rest: Vec<usize> = emitted;
                rest.extend_from_slice(&letters[pos + 1..]);
                let word = normalize_word(&rest, self.simplex_dim(r.base))?;
                return Ok(SimplexRef {
                    base: r.base,
                    word,
                });
            } else {
                emitted.push(j);
                i -= 1;
            }
        }
        // The face reaches the non-degenerate base.
        let stored = &self.simplices[r.base.0 as usize].faces[i];
        let mut letters: Vec<usize> = emitted;
        letters.extend_from_slice(stored.word.letters());
        let word = normalize_word(&letters, self.simplex_dim(stored.base))?;
        Ok(SimplexRef {
            base: stored.base,
            word,
        })
    }

    /// Restriction of an n-simplex to a strictly increasing vertex subset,
    /// computed by applying the missing faces from the top index down.
    pub fn restrict(&self, r: &SimplexRef, subset: &[usize]) -> Result<SimplexRef> {
        let dim = self.ref_dim(r);
        if subset.is_empty() || subset.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Parameter(format!(
                "restriction subset {subset:?} must be nonempty and strictly increasing"
            )));
        }
        if *subset.last().unwrap() > dim {
            return Err(Error::Parameter(format!(
                "restriction subset {subset:?} exceeds dimension {dim}"
            )));
        }
        let mut cur = r.clone();
        for k in (0..=dim).rev() {
            if !subset.contains(&k) {
                cur = self.apply(&cur, Operator::Face(k))?;
            }
        }
        Ok(cur)
    }

    /// Evaluates a simplex on an arbitrary monotone vertex list, i.e. the
    /// value of the classifying map `Δ^dim → X` on the simplex with those
    /// vertices. The list must be weakly increasing within `0..=dim`.
    pub fn eval_vertices(&self, r: &SimplexRef, vertices: &[usize]) -> Result<SimplexRef> {
        if vertices.is_empty() {
            return Err(Error::Parameter("empty vertex list".to_string()));
        }
        if vertices.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Parameter(format!(
                "vertex list {vertices:?} is not monotone"
            )));
        }
        let dim = self.ref_dim(r);
        if *vertices.last().unwrap() > dim {
            return Err(Error::Parameter(format!(
                "vertex list {vertices:?} exceeds dimension {dim}"
            )));
        }
        let mut support: Vec<usize> = vertices.to_vec();
        support.dedup();
        let restricted = self.restrict(r, &support)?;
        // Duplication pattern: letters where consecutive vertices agree.
        let mut letters: Vec<usize> = (0..vertices.len() - 1)
            .filter(|&i| vertices[i] == vertices[i + 1])
            .collect();
        letters.reverse();
        let mut all = letters;
        all.extend_from_slice(restricted.word.letters());
        let word = normalize_word(&all, self.simplex_dim(restricted.base))?;
        Ok(SimplexRef {
            base: restricted.base,
            word,
        })
    }

    /// Checks the structural invariants: face targets have the right
    /// dimension and reference known simplices, and the simplicial
    /// identities `∂_i ∂_j = ∂_{j-1} ∂_i` (i < j) hold everywhere.
    pub fn validate(&self) -> Result<()> {
        for (n, s) in self.simplices.iter().enumerate() {
            let id = SimplexId(n as u32);
            if s.dim == 0 {
                if !s.faces.is_empty() {
                    return Err(Error::Validation(format!(
                        "vertex {} must not list faces",
                        s.name
                    )));
                }
                continue;
            }
            if s.faces.len() != s.dim + 1 {
                return Err(Error::Validation(format!(
                    "simplex {} of dimension {} lists {} faces",
                    s.name,
                    s.dim,
                    s.faces.len()
                )));
            }
            for (k, f) in s.faces.iter().enumerate() {
                if f.base.0 as usize >= self.simplices.len() {
                    return Err(Error::Validation(format!(
                        "face {k} of {} references an unknown simplex",
                        s.name
                    )));
                }
                if self.ref_dim(f) + 1 != s.dim {
                    return Err(Error::Validation(format!(
                        "face {k} of {} has dimension {} instead of {}",
                        s.name,
                        self.ref_dim(f),
                        s.dim - 1
                    )));
                }
                if !f.word.applicable_to(self.simplex_dim(f.base)) {
                    return Err(Error::Validation(format!(
                        "face {k} of {} carries an inapplicable word",
                        s.name
                    )));
                }
            }
            if s.dim >= 2 {
                let r = SimplexRef::nondeg(id);
                for j in 1..=s.dim {
                    for i in 0..j {
                        let a = self.apply(&self.apply(&r, Operator::Face(j))?, Operator::Face(i))?;
                        let b = self
                            .apply(&self.apply(&r, Operator::Face(i))?, Operator::Face(j - 1))?;
                        if a != b {
                            return Err(Error::Validation(format!(
                                "simplicial identity fails on {}: ∂{i}∂{j} ≠ ∂{}∂{i}",
                                s.name,
                                j - 1
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Copy with a different cap. Raising the cap keeps everything; lowering
    /// it drops non-degenerate simplices above the cap and marks the result
    /// truncated.
    pub fn with_cap(&self, dim_cap: usize) -> Result<SimplicialSet> {
        let mut b = SsetBuilder::new(self.name.clone(), dim_cap);
        let mut dropped = false;
        let mut keep: BTreeMap<SimplexId, SimplexId> = BTreeMap::new();
        for id in self.all_nondeg() {
            if self.simplex_dim(id) > dim_cap {
                dropped = true;
                continue;
            }
            let new = b.add_simplex(self.simplex_name(id), self.simplex_dim(id))?;
            keep.insert(id, new);
        }
        for id in self.all_nondeg() {
            if let Some(&new) = keep.get(&id) {
                let faces = self
                    .faces_of(id)
                    .iter()
                    .map(|f| SimplexRef {
                        base: keep[&f.base],
                        word: f.word.clone(),
                    })
                    .collect();
                b.set_faces(new, faces);
            }
        }
        let mut out = b.finish()?;
        out.truncated = dropped || self.truncated;
        Ok(out)
    }

    /// Connected components of the 1-skeleton; returns the class index per
    /// vertex, classes numbered by least member in name order.
    pub fn pi0(&self) -> Result<Vec<Vec<SimplexId>>> {
        let verts = self.nondeg_at(0).to_vec();
        let index: HashMap<SimplexId, usize> =
            verts.iter().enumerate().map(|(n, &v)| (v, n)).collect();
        let mut uf: Vec<usize> = (0..verts.len()).collect();
        fn find(uf: &mut Vec<usize>, x: usize) -> usize {
            if uf[x] != x {
                let r = find(uf, uf[x]);
                uf[x] = r;
            }
            uf[x]
        }
        if self.dim_cap >= 1 {
            for &e in self.nondeg_at(1) {
                let r = SimplexRef::nondeg(e);
                let a = self.apply(&r, Operator::Face(0))?;
                let b = self.apply(&r, Operator::Face(1))?;
                let (ra, rb) = (index[&a.base], index[&b.base]);
                let (fa, fb) = (find(&mut uf, ra), find(&mut uf, rb));
                if fa != fb {
                    uf[fa.max(fb)] = fa.min(fb);
                }
            }
        }
        let mut classes: BTreeMap<usize, Vec<SimplexId>> = BTreeMap::new();
        for (n, &v) in verts.iter().enumerate() {
            classes.entry(find(&mut uf, n)).or_default().push(v);
        }
        Ok(classes.into_values().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simpset::standard::{make_standard, StandardKind};

    #[test]
    fn delta2_level_counts() {
        let d2 = make_standard(StandardKind::Delta, 2).unwrap();
        assert_eq!(d2.nondeg_counts(), vec![3, 3, 1]);
        // Level 2 = monotone maps [2]→[2] = C(5,2)... enumerate directly.
        assert_eq!(d2.simplices_at(2).unwrap().len(), 10);
    }

    #[test]
    fn face_through_degeneracy_cancels() {
        let d1 = make_standard(StandardKind::Delta, 1).unwrap();
        let edge = d1.lookup("01").unwrap();
        let s0_edge = d1
            .apply(&SimplexRef::nondeg(edge), Operator::Degeneracy(0));
        // cap is 1, so the degeneracy overflows the cap
        assert!(s0_edge.is_err());

        let d1 = d1.with_cap(2).unwrap();
        let edge = d1.lookup("01").unwrap();
        let s0_edge = d1
            .apply(&SimplexRef::nondeg(edge), Operator::Degeneracy(0))
            .unwrap();
        // ∂0 s0 = id
        let back = d1.apply(&s0_edge, Operator::Face(0)).unwrap();
        assert_eq!(back, SimplexRef::nondeg(edge));
        // ∂2 s0(01) = s0 ∂1(01) = s0(0)
        let v0 = d1.lookup("0").unwrap();
        let f2 = d1.apply(&s0_edge, Operator::Face(2)).unwrap();
        assert_eq!(f2.base, v0);
        assert_eq!(f2.word.letters(), &[0]);
    }

    #[test]
    fn vertex_degenerate_face_never_reads_base_faces() {
        let d0 = make_standard(StandardKind::Delta, 0)
            .unwrap()
            .with_cap(5)
            .unwrap();
        let v = d0.lookup("0").unwrap();
        let mut r = SimplexRef::nondeg(v);
        for _ in 0..5 {
            r = d0.apply(&r, Operator::Degeneracy(0)).unwrap();
        }
        assert_eq!(d0.ref_dim(&r), 5);
        for k in 0..=5 {
            let f = d0.apply(&r, Operator::Face(k)).unwrap();
            assert_eq!(d0.ref_dim(&f), 4);
            assert_eq!(f.base, v);
        }
        // Unique degenerate point at each level.
        assert_eq!(d0.simplices_at(5).unwrap().len(), 1);
    }
}
