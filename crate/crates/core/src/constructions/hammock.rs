//! Reduced hammocks and the mapping complexes of the localization.
//!
//! A hammock of width k and length n is a commutative grid: rows are
//! zigzags from x to y through n−1 inner columns of objects, all arrows in
//! one column point the same way, left-pointing columns lie in the wide
//! subcategory W, adjacent columns alternate, no column is all identities,
//! and the vertical maps (downwards between consecutive rows) lie in W.
//! Faces delete rows, degeneracies repeat rows; both re-reduce.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::fincat::{FinCategory, MorId, ObjId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dir {
    Right,
    Left,
}

/// A hammock between two fixed objects. `length == 0` is the degenerate
/// identity form (source equals target, no columns).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hammock {
    pub width: usize,
    pub length: usize,
    pub left: ObjId,
    pub right: ObjId,
    /// Direction per arrow column, `length` entries.
    pub directions: Vec<Dir>,
    /// Inner objects: (width+1) rows × (length−1) columns.
    pub grid: Vec<Vec<ObjId>>,
    /// Horizontal arrows: (width+1) rows × length columns.
    pub horiz: Vec<Vec<MorId>>,
    /// Vertical arrows: width row-gaps × (length−1) inner columns.
    pub vert: Vec<Vec<MorId>>,
}

impl Hammock {
    pub fn zero_length(width: usize, at: ObjId) -> Hammock {
        Hammock {
            width,
            length: 0,
            left: at,
            right: at,
            directions: Vec::new(),
            grid: vec![Vec::new(); width + 1],
            horiz: vec![Vec::new(); width + 1],
            vert: vec![Vec::new(); width],
        }
    }

    /// Object at (row, column) where columns 0 and `length` are the apexes.
    fn object_at(&self, row: usize, col: usize) -> ObjId {
        if col == 0 {
            self.left
        } else if col == self.length {
            self.right
        } else {
            self.grid[row][col - 1]
        }
    }

    /// Checks shapes, typing, membership of left columns and verticals in
    /// W, and commutativity of every square.
    pub fn validate(&self, c: &FinCategory, w: &BTreeSet<MorId>) -> Result<()> {
        if self.length == 0 {
            if self.left != self.right {
                return Err(Error::Parameter(
                    "zero-length hammock must have equal apexes".to_string(),
                ));
            }
            return Ok(());
        }
        let rows = self.width + 1;
        if self.grid.len() != rows
            || self.horiz.len() != rows
            || self.vert.len() != self.width
            || self.directions.len() != self.length
        {
            return Err(Error::Parameter("hammock grid has wrong shape".to_string()));
        }
        for row in 0..rows {
            if self.grid[row].len() != self.length - 1 || self.horiz[row].len() != self.length {
                return Err(Error::Parameter("hammock row has wrong shape".to_string()));
            }
            for col in 1..=self.length {
                let m = c.morphism(self.horiz[row][col - 1]);
                let (from, to) = match self.directions[col - 1] {
                    Dir::Right => (self.object_at(row, col - 1), self.object_at(row, col)),
                    Dir::Left => (self.object_at(row, col), self.object_at(row, col - 1)),
                };
                if m.src != from || m.dst != to {
                    return Err(Error::Parameter(format!(
                        "arrow {} mistyped at row {row} column {col}",
                        m.name
                    )));
                }
                if self.directions[col - 1] == Dir::Left
                    && !w.contains(&self.horiz[row][col - 1])
                {
                    return Err(Error::Parameter(format!(
                        "left-pointing arrow {} is not in W",
                        m.name
                    )));
                }
            }
        }
        for gap in 0..self.width {
            if self.vert[gap].len() != self.length - 1 {
                return Err(Error::Parameter("vertical row has wrong shape".to_string()));
            }
            for col in 1..self.length {
                let v = c.morphism(self.vert[gap][col - 1]);
                if v.src != self.grid[gap][col - 1] || v.dst != self.grid[gap + 1][col - 1] {
                    return Err(Error::Parameter(format!(
                        "vertical {} mistyped at gap {gap} column {col}",
                        v.name
                    )));
                }
                if !w.contains(&self.vert[gap][col - 1]) {
                    return Err(Error::Parameter(format!(
                        "vertical {} is not in W",
                        v.name
                    )));
                }
            }
            // Square commutativity per column.
            for col in 1..=self.length {
                let top = self.horiz[gap][col - 1];
                let bot = self.horiz[gap + 1][col - 1];
                let lv = if col >= 2 {
                    Some(self.vert[gap][col - 2])
                } else {
                    None
                };
                let rv = if col <= self.length - 1 {
                    Some(self.vert[gap][col - 1])
                } else {
                    None
                };
                let (ok,) = match self.directions[col - 1] {
                    Dir::Right => {
                        // top: a→b, verticals s: a→a', t: b→b'; bottom a'→b'.
                        let lhs = match rv {
                            Some(t) => c.compose(t, top)?,
                            None => top,
                        };
                        let rhs = match lv {
                            Some(s) => c.compose(bot, s)?,
                            None => bot,
                        };
                        (lhs == rhs,)
                    }
                    Dir::Left => {
                        // top: b→a, verticals s: a→a', t: b→b'; bottom b'→a'.
                        let lhs = match lv {
                            Some(s) => c.compose(s, top)?,
                            None => top,
                        };
                        let rhs = match rv {
                            Some(t) => c.compose(bot, t)?,
                            None => bot,
                        };
                        (lhs == rhs,)
                    }
                };
                if !ok {
                    return Err(Error::Parameter(format!(
                        "square at gap {gap} column {col} does not commute"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Conditions 4 and 5: alternating directions, no all-identity column.
    pub fn is_reduced(&self, c: &FinCategory) -> bool {
        if self.length == 0 {
            return true;
        }
        for w in self.directions.windows(2) {
            if w[0] == w[1] {
                return false;
            }
        }
        for col in 0..self.length {
            if self
                .horiz
                .iter()
                .all(|row| c.is_identity(row[col]))
            {
                return false;
            }
        }
        true
    }
}

/// Reduction strategy, exposed so confluence can be tested.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReduceStrategy {
    /// Remove the leftmost all-identity column first, else compose the
    /// leftmost same-direction pair.
    IdentityFirst,
    /// Compose the rightmost same-direction pair first, else remove the
    /// rightmost all-identity column.
    ComposeFirst,
}

fn drop_column(h: &Hammock, col: usize) -> Hammock {
    // Removes arrow-column `col` (1-based) whose arrows are all identities;
    // the inner object column it connects disappears. An all-identity
    // column of a length-1 hammock forces equal apexes.
    if h.length == 1 {
        return Hammock::zero_length(h.width, h.left);
    }
    let mut out = h.clone();
    let obj_col = if col == h.length { col - 1 } else { col };
    for row in 0..=h.width {
        out.horiz[row].remove(col - 1);
        out.grid[row].remove(obj_col - 1);
    }
    for gap in 0..h.width {
        out.vert[gap].remove(obj_col - 1);
    }
    out.directions.remove(col - 1);
    out.length -= 1;
    out
}

fn compose_columns(c: &FinCategory, h: &Hammock, col: usize) -> Result<Hammock> {
    // Columns col and col+1 point the same way; the inner object column
    // between them (index col) disappears.
    let mut out = h.clone();
    for row in 0..=h.width {
        let a = h.horiz[row][col - 1];
        let b = h.horiz[row][col];
        let composed = match h.directions[col - 1] {
            Dir::Right => c.compose(b, a)?,
            Dir::Left => c.compose(a, b)?,
        };
        out.horiz[row][col - 1] = composed;
        out.horiz[row].remove(col);
        out.grid[row].remove(col - 1);
    }
    for gap in 0..h.width {
        out.vert[gap].remove(col - 1);
    }
    out.directions.remove(col);
    out.length -= 1;
    Ok(out)
}

/// Applies the two reduction moves to a fixpoint. Idempotent; the two
/// strategies agree (tested).
pub fn reduce_hammock_with(
    c: &FinCategory,
    h: &Hammock,
    strategy: ReduceStrategy,
) -> Result<Hammock> {
    let mut cur = h.clone();
    loop {
        if cur.length == 0 {
            return Ok(cur);
        }
        let id_col = (1..=cur.length)
            .find(|&col| cur.horiz.iter().all(|row| c.is_identity(row[col - 1])));
        let same_dir = (1..cur.length).find(|&col| cur.directions[col - 1] == cur.directions[col]);
        let (id_pick, same_pick) = match strategy {
            ReduceStrategy::IdentityFirst => (id_col, same_dir),
            ReduceStrategy::ComposeFirst => {
                let id_last = (1..=cur.length)
                    .rev()
                    .find(|&col| cur.horiz.iter().all(|row| c.is_identity(row[col - 1])));
                let same_last =
                    (1..cur.length).rev().find(|&col| cur.directions[col - 1] == cur.directions[col]);
                (id_last, same_last)
            }
        };
        match strategy {
            ReduceStrategy::IdentityFirst => {
                if let Some(col) = id_pick {
                    cur = drop_column(&cur, col);
                    continue;
                }
                if let Some(col) = same_pick {
                    cur = compose_columns(c, &cur, col)?;
                    continue;
                }
            }
            ReduceStrategy::ComposeFirst => {
                if let Some(col) = same_pick {
                    cur = compose_columns(c, &cur, col)?;
                    continue;
                }
                if let Some(col) = id_pick {
                    cur = drop_column(&cur, col);
                    continue;
                }
            }
        }
        return Ok(cur);
    }
}

/// Reduction with the default strategy.
pub fn reduce_hammock(c: &FinCategory, h: &Hammock) -> Result<Hammock> {
    reduce_hammock_with(c, h, ReduceStrategy::IdentityFirst)
}

/// Face: delete a row, compose the verticals across the gap, reduce.
pub fn hammock_face(c: &FinCategory, h: &Hammock, row: usize) -> Result<Hammock> {
    if h.width == 0 {
        return Err(Error::Parameter("width-0 hammock has no faces".to_string()));
    }
    if row > h.width {
        return Err(Error::Parameter("face index out of range".to_string()));
    }
    let mut out = h.clone();
    out.width -= 1;
    if h.length == 0 {
        return Ok(Hammock::zero_length(out.width, h.left));
    }
    out.grid.remove(row);
    out.horiz.remove(row);
    if row == 0 {
        out.vert.remove(0);
    } else if row == h.width {
        out.vert.remove(h.width - 1);
    } else {
        let merged: Vec<MorId> = (0..h.length - 1)
            .map(|col| c.compose(h.vert[row][col], h.vert[row - 1][col]))
            .collect::<Result<_>>()?;
        out.vert.remove(row);
        out.vert[row - 1] = merged;
    }
    reduce_hammock(c, &out)
}

/// Degeneracy: repeat a row with identity verticals. Exceeds the width
/// bound of a complex when width+1 would pass it; the caller flags that.
pub fn hammock_degeneracy(c: &FinCategory, h: &Hammock, row: usize) -> Result<Hammock> {
    if row > h.width {
        return Err(Error::Parameter("degeneracy index out of range".to_string()));
    }
    let mut out = h.clone();
    out.width += 1;
    if h.length == 0 {
        return Ok(Hammock::zero_length(out.width, h.left));
    }
    out.grid.insert(row, h.grid[row].clone());
    out.horiz.insert(row, h.horiz[row].clone());
    let ids: Vec<MorId> = h.grid[row].iter().map(|&o| c.identity(o)).collect();
    out.vert.insert(row, ids);
    // Repeating a row preserves reducedness.
    Ok(out)
}

/// The mapping complex within bounds: width-k cells are the reduced
/// hammocks of width k, length ≤ max_len.
#[derive(Debug)]
pub struct HammockComplex {
    pub category: FinCategory,
    pub wide: BTreeSet<MorId>,
    pub from: ObjId,
    pub to: ObjId,
    pub max_len: usize,
    pub max_width: usize,
    /// Cells per width 0..=max_width, sorted.
    pub cells: Vec<Vec<Hammock>>,
}

/// Checks W is wide (contains every identity) and closed under the
/// composites that exist inside it.
fn check_wide(c: &FinCategory, w: &BTreeSet<MorId>) -> Result<()> {
    for o in c.objects() {
        if !w.contains(&c.identity(o)) {
            return Err(Error::Parameter(format!(
                "W misses the identity of {}",
                c.object_name(o)
            )));
        }
    }
    for &f in w {
        for &g in w {
            if c.morphism(f).dst == c.morphism(g).src {
                let gf = c.compose(g, f)?;
                if !w.contains(&gf) {
                    return Err(Error::Parameter(format!(
                        "W is not closed: ({} ∘ {}) escapes",
                        c.morphism(g).name,
                        c.morphism(f).name
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Enumerates single zigzag rows from `from` to `to` for one direction
/// pattern: a vector of (inner objects, arrows).
fn enumerate_rows(
    c: &FinCategory,
    w: &BTreeSet<MorId>,
    from: ObjId,
    to: ObjId,
    dirs: &[Dir],
) -> Vec<(Vec<ObjId>, Vec<MorId>)> {
    let n = dirs.len();
    let mut rows = Vec::new();
    // Backtrack over columns; objects[col] is the object after col arrows.
    fn rec(
        c: &FinCategory,
        w: &BTreeSet<MorId>,
        to: ObjId,
        dirs: &[Dir],
        col: usize,
        at: ObjId,
        objs: &mut Vec<ObjId>,
        arrows: &mut Vec<MorId>,
        rows: &mut Vec<(Vec<ObjId>, Vec<MorId>)>,
    ) {
        let n = dirs.len();
        if col == n {
            rows.push((objs.clone(), arrows.clone()));
            return;
        }
        let last = col == n - 1;
        let candidates: Vec<(ObjId, MorId)> = match dirs[col] {
            Dir::Right => c
                .morphisms()
                .filter(|&m| c.morphism(m).src == at)
                .filter(|&m| !last || c.morphism(m).dst == to)
                .map(|m| (c.morphism(m).dst, m))
                .collect(),
            Dir::Left => c
                .morphisms()
                .filter(|&m| w.contains(&m))
                .filter(|&m| c.morphism(m).dst == at)
                .filter(|&m| !last || c.morphism(m).src == to)
                .map(|m| (c.morphism(m).src, m))
                .collect(),
        };
        for (next, m) in candidates {
            arrows.push(m);
            if !last {
                objs.push(next);
            }
            rec(c, w, to, dirs, col + 1, next, objs, arrows, rows);
            if !last {
                objs.pop();
            }
            arrows.pop();
        }
    }
    rec(
        c,
        w,
        to,
        dirs,
        0,
        from,
        &mut Vec::with_capacity(n),
        &mut Vec::with_capacity(n),
        &mut rows,
    );
    rows
}

/// All vertical-arrow assignments connecting two rows, column by column.
fn connectors(
    c: &FinCategory,
    w: &BTreeSet<MorId>,
    dirs: &[Dir],
    top: &(Vec<ObjId>, Vec<MorId>),
    bot: &(Vec<ObjId>, Vec<MorId>),
) -> Vec<Vec<MorId>> {
    let inner = top.0.len();
    let mut out: Vec<Vec<MorId>> = vec![Vec::new()];
    for col in 0..inner {
        let (a, b) = (top.0[col], bot.0[col]);
        let options: Vec<MorId> = c
            .hom(a, b)
            .into_iter()
            .filter(|m| w.contains(m))
            .collect();
        let mut next = Vec::new();
        for partial in &out {
            for &v in &options {
                let mut p = partial.clone();
                p.push(v);
                next.push(p);
            }
        }
        out = next;
        if out.is_empty() {
            return out;
        }
    }
    // Filter by square commutativity.
    out.retain(|verts| {
        (1..=dirs.len()).all(|col| {
            let t = top.1[col - 1];
            let bt = bot.1[col - 1];
            let lv = if col >= 2 { Some(verts[col - 2]) } else { None };
            let rv = if col <= dirs.len() - 1 {
                Some(verts[col - 1])
            } else {
                None
            };
            let check = || -> Result<bool> {
                Ok(match dirs[col - 1] {
                    Dir::Right => {
                        let lhs = match rv {
                            Some(x) => c.compose(x, t)?,
                            None => t,
                        };
                        let rhs = match lv {
                            Some(x) => c.compose(bt, x)?,
                            None => bt,
                        };
                        lhs == rhs
                    }
                    Dir::Left => {
                        let lhs = match lv {
                            Some(x) => c.compose(x, t)?,
                            None => t,
                        };
                        let rhs = match rv {
                            Some(x) => c.compose(bt, x)?,
                            None => bt,
                        };
                        lhs == rhs
                    }
                })
            };
            check().unwrap_or(false)
        })
    });
    out
}

/// Enumerates all reduced hammocks from `x` to `y` with length ≤ max_len
/// and width ≤ max_width.
pub fn hammock_mapping(
    c: &FinCategory,
    wide: &BTreeSet<MorId>,
    from: ObjId,
    to: ObjId,
    max_len: usize,
    max_width: usize,
) -> Result<HammockComplex> {
    check_wide(c, wide)?;
    let mut cells: Vec<Vec<Hammock>> = vec![Vec::new(); max_width + 1];

    // Direction patterns: alternation forces the pattern once the first
    // direction is chosen.
    let mut patterns: Vec<Vec<Dir>> = Vec::new();
    for n in 1..=max_len {
        for start in [Dir::Right, Dir::Left] {
            let mut dirs = Vec::with_capacity(n);
            let mut d = start;
            for _ in 0..n {
                dirs.push(d);
                d = if d == Dir::Right { Dir::Left } else { Dir::Right };
            }
            patterns.push(dirs);
        }
    }

    for dirs in &patterns {
        let rows = enumerate_rows(c, wide, from, to, dirs);
        if rows.is_empty() {
            continue;
        }
        // Width 0: single rows, kept when reduced.
        for row in &rows {
            let h = Hammock {
                width: 0,
                length: dirs.len(),
                left: from,
                right: to,
                directions: dirs.clone(),
                grid: vec![row.0.clone()],
                horiz: vec![row.1.clone()],
                vert: vec![],
            };
            if h.is_reduced(c) {
                cells[0].push(h);
            }
        }
        if max_width == 0 {
            continue;
        }
        // Compatibility edges with vertical choices.
        let mut edges: Vec<Vec<(usize, Vec<MorId>)>> = vec![Vec::new(); rows.len()];
        for (a, ra) in rows.iter().enumerate() {
            for (b, rb) in rows.iter().enumerate() {
                for verts in connectors(c, wide, dirs, ra, rb) {
                    edges[a].push((b, verts));
                }
            }
        }
        // Paths of length `width` through the compatibility graph.
        fn extend(
            c: &FinCategory,
            rows: &[(Vec<ObjId>, Vec<MorId>)],
            edges: &[Vec<(usize, Vec<MorId>)>],
            dirs: &[Dir],
            from: ObjId,
            to: ObjId,
            width: usize,
            path: &mut Vec<usize>,
            verts: &mut Vec<Vec<MorId>>,
            cells: &mut Vec<Vec<Hammock>>,
        ) {
            let cur = *path.last().unwrap();
            if path.len() == width + 1 {
                let h = Hammock {
                    width,
                    length: dirs.len(),
                    left: from,
                    right: to,
                    directions: dirs.to_vec(),
                    grid: path.iter().map(|&r| rows[r].0.clone()).collect(),
                    horiz: path.iter().map(|&r| rows[r].1.clone()).collect(),
                    vert: verts.clone(),
                };
                if h.is_reduced(c) {
                    cells[width].push(h);
                }
                return;
            }
            for (next, vs) in &edges[cur] {
                path.push(*next);
                verts.push(vs.clone());
                extend(c, rows, edges, dirs, from, to, width, path, verts, cells);
                verts.pop();
                path.pop();
            }
        }
        for width in 1..=max_width {
            for start in 0..rows.len() {
                let mut path = vec![start];
                let mut verts = Vec::new();
                extend(
                    c, &rows, &edges, dirs, from, to, width, &mut path, &mut verts, &mut cells,
                );
            }
        }
    }

    // Zero-length degenerate forms when the endpoints agree.
    if from == to {
        for (width, cell) in cells.iter_mut().enumerate() {
            cell.push(Hammock::zero_length(width, from));
        }
    }
    for cell in &mut cells {
        cell.sort();
        cell.dedup();
    }
    Ok(HammockComplex {
        category: c.clone(),
        wide: wide.clone(),
        from,
        to,
        max_len,
        max_width,
        cells,
    })
}

impl HammockComplex {
    /// Face of a cell; `None` when the reduced face leaves the length
    /// bound (it never does: reduction only shrinks).
    pub fn face(&self, h: &Hammock, row: usize) -> Result<Hammock> {
        hammock_face(&self.category, h, row)
    }

    /// Degeneracy of a cell; `None` flags the width bound.
    pub fn degeneracy(&self, h: &Hammock, row: usize) -> Result<Option<Hammock>> {
        if h.width + 1 > self.max_width {
            return Ok(None);
        }
        Ok(Some(hammock_degeneracy(&self.category, h, row)?))
    }
}

/// Connected components of the width-0 cells under width-1 cells, with the
/// least hammock of each class as representative.
pub fn hammock_pi0(hc: &HammockComplex) -> Result<Vec<Hammock>> {
    let verts = &hc.cells[0];
    let index: BTreeMap<&Hammock, usize> =
        verts.iter().enumerate().map(|(i, h)| (h, i)).collect();
    let mut uf: Vec<usize> = (0..verts.len()).collect();
    fn find(uf: &mut Vec<usize>, a: usize) -> usize {
        if uf[a] != a {
            let r = find(uf, uf[a]);
            uf[a] = r;
        }
        uf[a]
    }
    if hc.max_width >= 1 {
        for e in &hc.cells[1] {
            let d0 = hc.face(e, 0)?;
            let d1 = hc.face(e, 1)?;
            let (a, b) = (
                *index.get(&d0).ok_or_else(|| {
                    Error::ConstructionBug("face of an in-bounds edge is unknown".to_string())
                })?,
                *index.get(&d1).ok_or_else(|| {
                    Error::ConstructionBug("face of an in-bounds edge is unknown".to_string())
                })?,
            );
            let (ra, rb) = (find(&mut uf, a), find(&mut uf, b));
            if ra != rb {
                uf[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    let mut reps: BTreeMap<usize, &Hammock> = BTreeMap::new();
    for (i, h) in verts.iter().enumerate() {
        let root = find(&mut uf, i);
        reps.entry(root)
            .and_modify(|prev| {
                if h < *prev {
                    *prev = h;
                }
            })
            .or_insert(h);
    }
    Ok(reps.into_values().cloned().collect())
}

/// Canonical label of a width-0 hammock per the explicit isomorphism: a
/// pure composite when the zigzag stays in the unprimed part, else the
/// first arrow out of the source.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum HammockLabel {
    /// Identity (zero-length form).
    Identity,
    /// Single right-pointing arrow in the base category.
    Composite(MorId),
    /// First arrow of a zigzag that leaves through a glued object.
    Detour(MorId),
}

/// Labels a width-0 reduced hammock, given the set of objects regarded as
/// being in the base (unprimed) part.
pub fn hammock_label(
    _c: &FinCategory,
    base_objects: &HashSet<ObjId>,
    h: &Hammock,
) -> Result<HammockLabel> {
    if h.length == 0 {
        return Ok(HammockLabel::Identity);
    }
    let stays_in_base = base_objects.contains(&h.right)
        && h.grid[0].iter().all(|o| base_objects.contains(o));
    if stays_in_base && h.directions.iter().all(|&d| d == Dir::Right) {
        // Reduced + alternating forces length 1 here.
        if h.length == 1 {
            return Ok(HammockLabel::Composite(h.horiz[0][0]));
        }
        return Err(Error::ConstructionBug(
            "reduced all-right hammock of length > 1".to_string(),
        ));
    }
    if h.directions[0] != Dir::Right {
        return Err(Error::ConstructionBug(format!(
            "vertex hammock starts left: {h:?}"
        )));
    }
    Ok(HammockLabel::Detour(h.horiz[0][0]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{poset_category, Poset};

    fn arrow_cat() -> (FinCategory, BTreeSet<MorId>) {
        let c = poset_category(&Poset::new(vec!["a".into(), "b".into()], &[(0, 1)]).unwrap())
            .unwrap();
        let w: BTreeSet<MorId> = c.morphisms().filter(|&m| c.is_identity(m)).collect();
        (c, w)
    }

    #[test]
    fn single_morphism_mapping_space() {
        let (c, w) = arrow_cat();
        let (a, b) = (c.lookup_object("a").unwrap(), c.lookup_object("b").unwrap());
        let hc = hammock_mapping(&c, &w, a, b, 4, 2).unwrap();
        assert_eq!(hc.cells[0].len(), 1);
        let pi0 = hammock_pi0(&hc).unwrap();
        assert_eq!(pi0.len(), 1);
    }

    #[test]
    fn identity_class_exists() {
        let (c, w) = arrow_cat();
        let a = c.lookup_object("a").unwrap();
        let hc = hammock_mapping(&c, &w, a, a, 4, 2).unwrap();
        let pi0 = hammock_pi0(&hc).unwrap();
        assert_eq!(pi0.len(), 1);
        assert_eq!(pi0[0].length, 0);
    }

    #[test]
    fn reduction_drops_identity_column_and_composes() {
        let p = Poset::chain(3);
        let c = poset_category(&p).unwrap();
        let w: BTreeSet<MorId> = c.morphisms().filter(|&m| c.is_identity(m)).collect();
        let (o0, o1, o2) = (
            c.lookup_object("0").unwrap(),
            c.lookup_object("1").unwrap(),
            c.lookup_object("2").unwrap(),
        );
        let b01 = c.lookup_morphism("b.0.1").unwrap();
        let b12 = c.lookup_morphism("b.1.2").unwrap();
        // Not alternating: two right columns compose to b.0.2.
        let h = Hammock {
            width: 0,
            length: 2,
            left: o0,
            right: o2,
            directions: vec![Dir::Right, Dir::Right],
            grid: vec![vec![o1]],
            horiz: vec![vec![b01, b12]],
            vert: vec![],
        };
        h.validate(&c, &w).unwrap();
        let r = reduce_hammock(&c, &h).unwrap();
        assert_eq!(r.length, 1);
        assert_eq!(c.morphism(r.horiz[0][0]).name, "b.0.2");
        // Identity column: id then b.0.2 also reduces to b.0.2.
        let h2 = Hammock {
            width: 0,
            length: 2,
            left: o0,
            right: o2,
            directions: vec![Dir::Right, Dir::Right],
            grid: vec![vec![o0]],
            horiz: vec![vec![c.identity(o0), c.lookup_morphism("b.0.2").unwrap()]],
            vert: vec![],
        };
        let r2 = reduce_hammock(&c, &h2).unwrap();
        assert_eq!(r2.length, 1);
        assert_eq!(c.morphism(r2.horiz[0][0]).name, "b.0.2");
        // Already reduced stays put.
        let r3 = reduce_hammock(&c, &r2).unwrap();
        assert_eq!(r3, r2);
        // Both strategies agree.
        for h in [&h, &h2] {
            assert_eq!(
                reduce_hammock_with(&c, h, ReduceStrategy::IdentityFirst).unwrap(),
                reduce_hammock_with(&c, h, ReduceStrategy::ComposeFirst).unwrap()
            );
        }
    }

    #[test]
    fn wideness_is_checked() {
        let (c, _) = arrow_cat();
        let empty = BTreeSet::new();
        let a = c.lookup_object("a").unwrap();
        assert!(hammock_mapping(&c, &empty, a, a, 2, 1).is_err());
    }

    #[test]
    fn parallel_arrows_stay_disconnected() {
        // Two parallel arrows with only identities inverted: two vertex
        // hammocks, no width-1 hammock between them, two classes.
        use crate::fincat::CatBuilder;
        let mut b = CatBuilder::new("parallel");
        let a = b.add_object_with_identity("a").unwrap();
        let t = b.add_object_with_identity("b").unwrap();
        b.add_morphism("f", a, t).unwrap();
        b.add_morphism("g", a, t).unwrap();
        let c = b.finish().unwrap();
        let w: BTreeSet<MorId> = c.morphisms().filter(|&m| c.is_identity(m)).collect();
        let hc = hammock_mapping(&c, &w, a, t, 3, 2).unwrap();
        assert_eq!(hc.cells[0].len(), 2);
        let pi0 = hammock_pi0(&hc).unwrap();
        assert_eq!(pi0.len(), 2);
    }

    #[test]
    fn degeneracy_at_the_width_bound_is_flagged() {
        let (c, w) = arrow_cat();
        let (a, t) = (c.lookup_object("a").unwrap(), c.lookup_object("b").unwrap());
        let hc = hammock_mapping(&c, &w, a, t, 3, 1).unwrap();
        let vertex = hc.cells[0][0].clone();
        let edge = hc.degeneracy(&vertex, 0).unwrap().expect("within bounds");
        assert_eq!(edge.width, 1);
        assert!(hc.degeneracy(&edge, 0).unwrap().is_none(), "bound flagged");
    }
}
