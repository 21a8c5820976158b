//! Finite 1-categories with total composition tables.

pub mod homotopy;
pub mod nerve;
pub mod poset;

pub use homotopy::homotopy_category;
pub use nerve::nerve;
pub use poset::{poset_category, Poset};

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ObjId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MorId(pub u32);

#[derive(Debug, Clone)]
pub struct MorData {
    pub name: String,
    pub src: ObjId,
    pub dst: ObjId,
}

#[derive(Debug, Clone)]
pub struct FinCategory {
    pub name: String,
    objects: Vec<String>,
    morphisms: Vec<MorData>,
    identities: Vec<MorId>,
    table: HashMap<(MorId, MorId), MorId>,
    obj_by_name: HashMap<String, ObjId>,
    mor_by_name: HashMap<String, MorId>,
    /// Optional provenance notes for composition cells, keyed (g, f);
    /// serialized as comments.
    pub cell_notes: BTreeMap<(MorId, MorId), String>,
}

pub struct CatBuilder {
    name: String,
    objects: Vec<String>,
    morphisms: Vec<MorData>,
    obj_by_name: HashMap<String, ObjId>,
    mor_by_name: HashMap<String, MorId>,
    identities: BTreeMap<ObjId, MorId>,
    table: HashMap<(MorId, MorId), MorId>,
    cell_notes: BTreeMap<(MorId, MorId), String>,
}

impl CatBuilder {
    pub fn new(name: impl Into<String>) -> Self {
        CatBuilder {
            name: name.into(),
            objects: Vec::new(),
            morphisms: Vec::new(),
            obj_by_name: HashMap::new(),
            mor_by_name: HashMap::new(),
            identities: BTreeMap::new(),
            table: HashMap::new(),
            cell_notes: BTreeMap::new(),
        }
    }

    pub fn add_object(&mut self, name: impl Into<String>) -> Result<ObjId> {
        let name = name.into();
        if self.obj_by_name.contains_key(&name) {
            return Err(Error::Parameter(format!("duplicate object {name}")));
        }
        let id = ObjId(self.objects.len() as u32);
        self.obj_by_name.insert(name.clone(), id);
        self.objects.push(name);
        Ok(id)
    }

    /// Adds an object together with its identity morphism `id:<name>`.
    pub fn add_object_with_identity(&mut self, name: impl Into<String>) -> Result<ObjId> {
        let name = name.into();
        let o = self.add_object(name.clone())?;
        let m = self.add_morphism(format!("id:{name}"), o, o)?;
        self.identities.insert(o, m);
        Ok(o)
    }

    pub fn add_morphism(&mut self, name: impl Into<String>, src: ObjId, dst: ObjId) -> Result<MorId> {
        let name = name.into();
        if self.mor_by_name.contains_key(&name) {
            return Err(Error::Parameter(format!("duplicate morphism {name}")));
        }
        let id = MorId(self.morphisms.len() as u32);
        self.mor_by_name.insert(name.clone(), id);
        self.morphisms.push(MorData { name, src, dst });
        Ok(id)
    }

    pub fn set_identity(&mut self, obj: ObjId, m: MorId) {
        self.identities.insert(obj, m);
    }

    pub fn set_composite(&mut self, g: MorId, f: MorId, h: MorId) {
        self.table.insert((g, f), h);
    }

    pub fn note_cell(&mut self, g: MorId, f: MorId, note: impl Into<String>) {
        self.cell_notes.insert((g, f), note.into());
    }

    pub fn lookup_object(&self, name: &str) -> Option<ObjId> {
        self.obj_by_name.get(name).copied()
    }

    pub fn lookup_morphism(&self, name: &str) -> Option<MorId> {
        self.mor_by_name.get(name).copied()
    }

    pub fn morphism(&self, id: MorId) -> &MorData {
        &self.morphisms[id.0 as usize]
    }

    pub fn object_name(&self, o: ObjId) -> &str {
        &self.objects[o.0 as usize]
    }

    /// Fills every composite forced by the unit laws, then checks the table
    /// is total on composable pairs.
    pub fn finish(mut self) -> Result<FinCategory> {
        for (o, &idm) in &self.identities.clone() {
            for (n, m) in self.morphisms.iter().enumerate() {
                let mid = MorId(n as u32);
                if m.src == *o {
                    self.table.entry((mid, idm)).or_insert(mid);
                }
                if m.dst == *o {
                    self.table.entry((idm, mid)).or_insert(mid);
                }
            }
        }
        let identities: Vec<MorId> = (0..self.objects.len())
            .map(|n| {
                self.identities
                    .get(&ObjId(n as u32))
                    .copied()
                    .ok_or_else(|| {
                        Error::Validation(format!("object {} has no identity", self.objects[n]))
                    })
            })
            .collect::<Result<_>>()?;
        let cat = FinCategory {
            name: self.name,
            objects: self.objects,
            morphisms: self.morphisms,
            identities,
            table: self.table,
            obj_by_name: self.obj_by_name,
            mor_by_name: self.mor_by_name,
            cell_notes: self.cell_notes,
        };
        // Totality check; associativity is validate_category's concern.
        for (gi, g) in cat.morphisms.iter().enumerate() {
            for (fi, f) in cat.morphisms.iter().enumerate() {
                if f.dst == g.src && !cat.table.contains_key(&(MorId(gi as u32), MorId(fi as u32))) {
                    return Err(Error::Validation(format!(
                        "no composite for ({} ∘ {})",
                        g.name, f.name
                    )));
                }
            }
        }
        Ok(cat)
    }
}

impl FinCategory {
    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjId> + '_ {
        (0..self.objects.len() as u32).map(ObjId)
    }

    pub fn object_name(&self, o: ObjId) -> &str {
        &self.objects[o.0 as usize]
    }

    pub fn lookup_object(&self, name: &str) -> Option<ObjId> {
        self.obj_by_name.get(name).copied()
    }

    pub fn lookup_morphism(&self, name: &str) -> Option<MorId> {
        self.mor_by_name.get(name).copied()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn morphisms(&self) -> impl Iterator<Item = MorId> + '_ {
        (0..self.morphisms.len() as u32).map(MorId)
    }

    pub fn morphism(&self, m: MorId) -> &MorData {
        &self.morphisms[m.0 as usize]
    }

    pub fn identity(&self, o: ObjId) -> MorId {
        self.identities[o.0 as usize]
    }

    pub fn is_identity(&self, m: MorId) -> bool {
        self.identities.contains(&m)
    }

    /// `g ∘ f`, defined when `dst f = src g`.
    pub fn compose(&self, g: MorId, f: MorId) -> Result<MorId> {
        self.table.get(&(g, f)).copied().ok_or_else(|| {
            Error::Parameter(format!(
                "({} ∘ {}) is not composable or not tabulated",
                self.morphism(g).name,
                self.morphism(f).name
            ))
        })
    }

    pub fn hom(&self, a: ObjId, b: ObjId) -> Vec<MorId> {
        self.morphisms()
            .filter(|&m| self.morphism(m).src == a && self.morphism(m).dst == b)
            .collect()
    }

    /// Morphisms out of an object.
    pub fn out_of(&self, a: ObjId) -> Vec<MorId> {
        self.morphisms()
            .filter(|&m| self.morphism(m).src == a)
            .collect()
    }
}

/// Outcome of `validate_category`, carrying the first violation if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CategoryVerdict {
    Valid,
    MissingComposite { g: String, f: String },
    UnitFailure { m: String },
    AssociativityFailure { h: String, g: String, f: String },
}

impl CategoryVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, CategoryVerdict::Valid)
    }
}

/// Checks totality, unit laws and associativity over all composable
/// triples; reports the first violation found in deterministic order.
pub fn validate_category(c: &FinCategory) -> CategoryVerdict {
    for m in c.morphisms() {
        let d = c.morphism(m);
        let lid = c.identity(d.dst);
        let rid = c.identity(d.src);
        match (c.table.get(&(lid, m)), c.table.get(&(m, rid))) {
            (Some(&l), Some(&r)) if l == m && r == m => {}
            _ => {
                return CategoryVerdict::UnitFailure {
                    m: d.name.clone(),
                }
            }
        }
    }
    // Group morphisms by source object for the triple loop.
    let mut out_of: Vec<Vec<MorId>> = vec![Vec::new(); c.object_count()];
    for m in c.morphisms() {
        out_of[c.morphism(m).src.0 as usize].push(m);
    }
    for f in c.morphisms() {
        for &g in &out_of[c.morphism(f).dst.0 as usize] {
            let gf = match c.table.get(&(g, f)) {
                Some(&x) => x,
                None => {
                    return CategoryVerdict::MissingComposite {
                        g: c.morphism(g).name.clone(),
                        f: c.morphism(f).name.clone(),
                    }
                }
            };
            for &h in &out_of[c.morphism(g).dst.0 as usize] {
                let hg = match c.table.get(&(h, g)) {
                    Some(&x) => x,
                    None => {
                        return CategoryVerdict::MissingComposite {
                            g: c.morphism(h).name.clone(),
                            f: c.morphism(g).name.clone(),
                        }
                    }
                };
                let left = c.table.get(&(hg, f));
                let right = c.table.get(&(h, gf));
                if left.is_none() || right.is_none() || left != right {
                    return CategoryVerdict::AssociativityFailure {
                        h: c.morphism(h).name.clone(),
                        g: c.morphism(g).name.clone(),
                        f: c.morphism(f).name.clone(),
                    };
                }
            }
        }
    }
    CategoryVerdict::Valid
}

/// A functor between finite categories, stored as object and morphism maps.
#[derive(Debug, Clone)]
pub struct Functor {
    pub object_map: BTreeMap<ObjId, ObjId>,
    pub morphism_map: BTreeMap<MorId, MorId>,
}

impl Functor {
    /// Checks preservation of identities, endpoints, and all composites.
    pub fn validate(&self, c: &FinCategory, d: &FinCategory) -> Result<()> {
        for o in c.objects() {
            let io = *self.object_map.get(&o).ok_or_else(|| {
                Error::Validation(format!("no image for object {}", c.object_name(o)))
            })?;
            if self.morphism_map.get(&c.identity(o)) != Some(&d.identity(io)) {
                return Err(Error::Validation(format!(
                    "identity of {} is not preserved",
                    c.object_name(o)
                )));
            }
        }
        for m in c.morphisms() {
            let im = *self.morphism_map.get(&m).ok_or_else(|| {
                Error::Validation(format!("no image for morphism {}", c.morphism(m).name))
            })?;
            let md = c.morphism(m);
            let imd = d.morphism(im);
            if self.object_map[&md.src] != imd.src || self.object_map[&md.dst] != imd.dst {
                return Err(Error::Validation(format!(
                    "endpoints of {} are not preserved",
                    md.name
                )));
            }
        }
        for f in c.morphisms() {
            for g in c.morphisms() {
                if c.morphism(f).dst == c.morphism(g).src {
                    let gf = c.compose(g, f)?;
                    let igf = d.compose(self.morphism_map[&g], self.morphism_map[&f])?;
                    if self.morphism_map[&gf] != igf {
                        return Err(Error::Validation(format!(
                            "composite ({} ∘ {}) is not preserved",
                            c.morphism(g).name,
                            c.morphism(f).name
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Brute-force isomorphism search: object bijections pruned by hom-set
/// cardinality profiles, then hom-set bijections consistent with identities
/// and composition.
pub fn find_isomorphism(c: &FinCategory, d: &FinCategory) -> Result<Option<Functor>> {
    if c.object_count() != d.object_count() || c.morphism_count() != d.morphism_count() {
        return Ok(None);
    }
    let nc = c.object_count();
    let mut perm: Vec<Option<ObjId>> = vec![None; nc];
    let mut used = vec![false; nc];

    fn hom_profile(c: &FinCategory, o: ObjId) -> Vec<usize> {
        // Sorted multiset of |hom(o, -)| and |hom(-, o)| cardinalities.
        let mut outs: Vec<usize> = c.objects().map(|b| c.hom(o, b).len()).collect();
        let mut ins: Vec<usize> = c.objects().map(|b| c.hom(b, o).len()).collect();
        outs.sort_unstable();
        ins.sort_unstable();
        outs.extend(ins);
        outs
    }

    let c_profiles: Vec<Vec<usize>> = c.objects().map(|o| hom_profile(c, o)).collect();
    let d_profiles: Vec<Vec<usize>> = d.objects().map(|o| hom_profile(d, o)).collect();

    fn try_morphisms(
        c: &FinCategory,
        d: &FinCategory,
        perm: &[Option<ObjId>],
    ) -> Option<BTreeMap<MorId, MorId>> {
        // Backtracking over morphisms in id order, constrained by endpoints,
        // identity preservation, and composition with already-mapped ones.
        let mut map: BTreeMap<MorId, MorId> = BTreeMap::new();
        let mut used: Vec<bool> = vec![false; d.morphism_count()];
        // Force identities first.
        for o in c.objects() {
            let io = perm[o.0 as usize].unwrap();
            let (im, dm) = (c.identity(o), d.identity(io));
            map.insert(im, dm);
            used[dm.0 as usize] = true;
        }
        let rest: Vec<MorId> = c.morphisms().filter(|m| !c.is_identity(*m)).collect();
        fn rec(
            c: &FinCategory,
            d: &FinCategory,
            perm: &[Option<ObjId>],
            rest: &[MorId],
            pos: usize,
            map: &mut BTreeMap<MorId, MorId>,
            used: &mut Vec<bool>,
        ) -> bool {
            if pos == rest.len() {
                // Full composition check.
                for (&f, &df) in map.iter() {
                    for (&g, &dg) in map.iter() {
                        if c.morphism(f).dst == c.morphism(g).src {
                            let gf = c.compose(g, f).expect("total");
                            let dgf = d.compose(dg, df).expect("total");
                            if map[&gf] != dgf {
                                return false;
                            }
                        }
                    }
                }
                return true;
            }
            let m = rest[pos];
            let md = c.morphism(m);
            let (isrc, idst) = (
                perm[md.src.0 as usize].unwrap(),
                perm[md.dst.0 as usize].unwrap(),
            );
            for cand in d.hom(isrc, idst) {
                if used[cand.0 as usize] || d.is_identity(cand) {
                    continue;
                }
                map.insert(m, cand);
                used[cand.0 as usize] = true;
                if rec(c, d, perm, rest, pos + 1, map, used) {
                    return true;
                }
                map.remove(&m);
                used[cand.0 as usize] = false;
            }
            false
        }
        if rec(c, d, perm, &rest, 0, &mut map, &mut used) {
            Some(map)
        } else {
            None
        }
    }

    fn rec_objects(
        c: &FinCategory,
        d: &FinCategory,
        c_profiles: &[Vec<usize>],
        d_profiles: &[Vec<usize>],
        pos: usize,
        perm: &mut Vec<Option<ObjId>>,
        used: &mut Vec<bool>,
    ) -> Option<Functor> {
        let nc = c.object_count();
        if pos == nc {
            // Hom-set cardinalities must match cell-wise before trying maps.
            for a in c.objects() {
                for b in c.objects() {
                    let (ia, ib) = (perm[a.0 as usize].unwrap(), perm[b.0 as usize].unwrap());
                    if c.hom(a, b).len() != d.hom(ia, ib).len() {
                        return None;
                    }
                }
            }
            let object_map: BTreeMap<ObjId, ObjId> = (0..nc)
                .map(|n| (ObjId(n as u32), perm[n].unwrap()))
                .collect();
            return try_morphisms(c, d, perm).map(|morphism_map| Functor {
                object_map,
                morphism_map,
            });
        }
        for cand in 0..nc {
            if used[cand] || c_profiles[pos] != d_profiles[cand] {
                continue;
            }
            perm[pos] = Some(ObjId(cand as u32));
            used[cand] = true;
            if let Some(fun) = rec_objects(c, d, c_profiles, d_profiles, pos + 1, perm, used) {
                return Some(fun);
            }
            perm[pos] = None;
            used[cand] = false;
        }
        None
    }

    let found = rec_objects(c, d, &c_profiles, &d_profiles, 0, &mut perm, &mut used);
    if let Some(f) = &found {
        f.validate(c, d)?;
    }
    Ok(found)
}

/// The walking retraction: objects X, Y with r ∘ i = Id and i ∘ r = e.
pub fn ret_category() -> FinCategory {
    let mut b = CatBuilder::new("Ret");
    let x = b.add_object_with_identity("X").unwrap();
    let y = b.add_object_with_identity("Y").unwrap();
    let e = b.add_morphism("e", x, x).unwrap();
    let r = b.add_morphism("r", x, y).unwrap();
    let i = b.add_morphism("i", y, x).unwrap();
    let idy = b.lookup_morphism("id:Y").unwrap();
    b.set_composite(r, i, idy);
    b.set_composite(i, r, e);
    b.set_composite(e, e, e);
    b.set_composite(r, e, r);
    b.set_composite(e, i, i);
    b.finish().unwrap()
}

/// The terminal category.
pub fn terminal_category() -> FinCategory {
    let mut b = CatBuilder::new("terminal");
    b.add_object_with_identity("pt").unwrap();
    b.finish().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ret_is_a_category() {
        let c = ret_category();
        assert!(validate_category(&c).is_valid());
        // i ∘ r = e forces e idempotent.
        let e = c.lookup_morphism("e").unwrap();
        assert_eq!(c.compose(e, e).unwrap(), e);
    }

    #[test]
    fn mutated_cell_is_detected() {
        let mut c = ret_category();
        let e = c.lookup_morphism("e").unwrap();
        let r = c.lookup_morphism("r").unwrap();
        // Deliberately wrong: r ∘ e := e is not even well-typed by target,
        // so instead poison an associative cell: e ∘ e := id:X.
        let idx = c.lookup_morphism("id:X").unwrap();
        c.table.insert((e, e), idx);
        let v = validate_category(&c);
        assert!(!v.is_valid());
        let _ = r;
    }

    #[test]
    fn one_object_one_morphism_is_valid() {
        assert!(validate_category(&terminal_category()).is_valid());
    }

    #[test]
    fn ret_is_isomorphic_to_itself_but_not_terminal() {
        let c = ret_category();
        assert!(find_isomorphism(&c, &c).unwrap().is_some());
        assert!(find_isomorphism(&c, &terminal_category()).unwrap().is_none());
    }
}
