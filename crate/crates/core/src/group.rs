//! Finite groups as Cayley tables.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::set::ElementSet;

/// A finite group given by its Cayley table.
///
/// Index `0` is always the identity. `op(a, b)` is the sum `a + b`; the
/// group need not be abelian. Groups are immutable once built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group {
    order: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
    catalog_id: Option<(usize, usize)>,
    names: Option<Vec<String>>,
}

impl Group {
    /// Builds a group from a full Cayley table, checking every group axiom.
    pub fn from_table(rows: Vec<Vec<usize>>) -> Result<Group> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidTable("empty table".into()));
        }
        let mut table = Vec::with_capacity(n * n);
        for (a, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidTable(format!(
                    "row {a} has length {}",
                    row.len()
                )));
            }
            table.extend_from_slice(row);
        }
        let g = Self::from_flat(n, table)?;
        g.verify()?;
        Ok(g)
    }

    /// Builds a group from a flattened table whose identity is index 0.
    /// Only shape, range and the identity/inverse structure are checked;
    /// callers constructing tables algorithmically use this and rely on
    /// [`Group::verify`] in tests.
    pub(crate) fn from_flat(order: usize, table: Vec<usize>) -> Result<Group> {
        if table.len() != order * order {
            return Err(Error::InvalidTable("table is not square".into()));
        }
        if let Some(&bad) = table.iter().find(|&&x| x >= order) {
            return Err(Error::InvalidTable(format!("entry {bad} out of range")));
        }
        let mut inverse = alloc::vec![usize::MAX; order];
        for a in 0..order {
            for b in 0..order {
                if table[a * order + b] == 0 {
                    inverse[a] = b;
                    break;
                }
            }
            if inverse[a] == usize::MAX {
                return Err(Error::InvalidTable(format!("element {a} has no inverse")));
            }
        }
        Ok(Group {
            order,
            table,
            inverse,
            catalog_id: None,
            names: None,
        })
    }

    /// Exhaustive check of identity, inverses, Latin-square rows and
    /// columns, and associativity.
    pub fn verify(&self) -> Result<()> {
        let n = self.order;
        for a in 0..n {
            if self.op(0, a) != a || self.op(a, 0) != a {
                return Err(Error::InvalidTable(format!("0 is not an identity for {a}")));
            }
            let inv = self.inverse[a];
            if self.op(a, inv) != 0 || self.op(inv, a) != 0 {
                return Err(Error::InvalidTable(format!(
                    "element {a} has no two-sided inverse"
                )));
            }
            let mut row = ElementSet::empty(n);
            let mut col = ElementSet::empty(n);
            for b in 0..n {
                row.insert(self.op(a, b));
                col.insert(self.op(b, a));
            }
            if !row.is_full() || !col.is_full() {
                return Err(Error::InvalidTable(format!(
                    "row/column {a} is not a permutation"
                )));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.op(a, b);
                for c in 0..n {
                    if self.op(ab, c) != self.op(a, self.op(b, c)) {
                        return Err(Error::InvalidTable(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.order);
        self.names = Some(names);
        self
    }

    pub fn with_catalog_id(mut self, order: usize, index: usize) -> Self {
        self.catalog_id = Some((order, index));
        self
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    /// `-a`.
    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `-a + b`.
    #[inline]
    pub fn neg_add(&self, a: usize, b: usize) -> usize {
        self.op(self.inverse[a], b)
    }

    /// Right conjugation `-h + g + h`.
    #[inline]
    pub fn conj(&self, g: usize, h: usize) -> usize {
        self.op(self.op(self.inverse[h], g), h)
    }

    /// `-x - y + x + y`.
    #[inline]
    pub fn commutator(&self, x: usize, y: usize) -> usize {
        let nx = self.inverse[x];
        let ny = self.inverse[y];
        self.op(self.op(self.op(nx, ny), x), y)
    }

    /// Sum of a sequence of elements, left to right.
    pub fn sum<I: IntoIterator<Item = usize>>(&self, terms: I) -> usize {
        terms.into_iter().fold(0, |acc, t| self.op(acc, t))
    }

    pub fn elements(&self) -> core::ops::Range<usize> {
        0..self.order
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table
            .chunks(self.order)
            .map(<[usize]>::to_vec)
            .collect()
    }

    pub fn inverse_table(&self) -> &[usize] {
        &self.inverse
    }

    pub fn catalog_id(&self) -> Option<(usize, usize)> {
        self.catalog_id
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// Display name of an element, falling back to its index.
    pub fn name(&self, a: usize) -> String {
        match &self.names {
            Some(names) => names[a].clone(),
            None => a.to_string(),
        }
    }

    /// Same elements and operation; names and catalog id are ignored.
    pub fn same_table(&self, other: &Group) -> bool {
        self.order == other.order && self.table == other.table
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.op(a, b) == self.op(b, a)))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.op(x, a);
            k += 1;
        }
        k
    }

    /// Smallest subgroup containing `seed`.
    pub fn closure(&self, seed: &ElementSet) -> ElementSet {
        let mut set = seed.clone();
        set.insert(0);
        let mut frontier: Vec<usize> = set.to_vec();
        let gens = frontier.clone();
        while let Some(a) = frontier.pop() {
            for &g in &gens {
                let b = self.op(a, g);
                if set.insert(b) {
                    frontier.push(b);
                }
            }
        }
        set
    }

    pub fn is_subgroup(&self, set: &ElementSet) -> bool {
        set.contains(0)
            && set
                .iter()
                .all(|a| set.iter().all(|b| set.contains(self.op(a, b))))
    }

    pub fn is_normal(&self, set: &ElementSet) -> bool {
        self.is_subgroup(set)
            && set
                .iter()
                .all(|a| self.elements().all(|x| set.contains(self.conj(a, x))))
    }

    /// A small generating set, chosen greedily: each step adds the element
    /// (smallest index on ties) that enlarges the generated subgroup most.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut current = ElementSet::identity(self.order);
        while !current.is_full() {
            let mut best: Option<(usize, ElementSet)> = None;
            for a in self.elements().filter(|&a| !current.contains(a)) {
                let mut seed = current.clone();
                seed.insert(a);
                let next = self.closure(&seed);
                if best.as_ref().is_none_or(|(_, b)| next.len() > b.len()) {
                    best = Some((a, next));
                }
            }
            let (a, next) = best.expect("a proper subgroup has an element outside it");
            gens.push(a);
            current = next;
        }
        gens
    }

    /// The subgroup on `set` with elements relabelled `0..|set|` in
    /// increasing index order, together with the embedding into `self`.
    pub fn subgroup(&self, set: &ElementSet) -> Result<(Group, Vec<usize>)> {
        if !self.is_subgroup(set) {
            return Err(Error::NotClosed("not a subgroup".into()));
        }
        let embed = set.to_vec();
        let mut pos = alloc::vec![usize::MAX; self.order];
        for (i, &e) in embed.iter().enumerate() {
            pos[e] = i;
        }
        let m = embed.len();
        let mut table = Vec::with_capacity(m * m);
        for &a in &embed {
            for &b in &embed {
                table.push(pos[self.op(a, b)]);
            }
        }
        let mut sub = Group::from_flat(m, table)?;
        if self.names.is_some() {
            sub.names = Some(embed.iter().map(|&e| self.name(e)).collect());
        }
        Ok((sub, embed))
    }

    // ---- constructors ----

    pub fn trivial() -> Group {
        Self::cyclic(1)
    }

    /// Cyclic group `Z/n` with `i + j = (i + j) mod n`.
    pub fn cyclic(n: usize) -> Group {
        assert!(n >= 1, "cyclic group needs n >= 1");
        let table = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i + j) % n))
            .collect();
        let names = (0..n).map(|i| i.to_string()).collect();
        Group::from_flat(n, table)
            .expect("cyclic table")
            .with_names(names)
    }

    /// Componentwise product; `(i, j)` has index `i * |h| + j`.
    pub fn direct_product(g: &Group, h: &Group) -> Group {
        let (n, m) = (g.order, h.order);
        let mut table = Vec::with_capacity(n * m * n * m);
        for a in 0..n * m {
            for b in 0..n * m {
                table.push(g.op(a / m, b / m) * m + h.op(a % m, b % m));
            }
        }
        let names = (0..n * m)
            .map(|a| {
                let (x, y) = (g.name(a / m), h.name(a % m));
                format!("({x},{y})")
            })
            .collect();
        Group::from_flat(n * m, table)
            .expect("product table")
            .with_names(names)
    }

    /// Klein four group with elements `e, a, b, ab` at indices `0..4`.
    pub fn klein_four() -> Group {
        let c2 = Group::cyclic(2);
        let names = ["e", "a", "b", "ab"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        Group::direct_product(&c2, &c2).with_names(names)
    }

    /// Permutation group generated by `gens` (0-based images). Elements are
    /// sorted lexicographically, so the identity is index 0, and `p + q`
    /// applies `p` first. Names use 1-based cycle notation.
    pub fn from_permutations(gens: &[Vec<usize>]) -> Group {
        let degree = gens.first().map_or(0, Vec::len);
        let identity: Vec<usize> = (0..degree).collect();
        let mut seen: BTreeMap<Vec<usize>, ()> = BTreeMap::new();
        seen.insert(identity.clone(), ());
        let mut frontier = alloc::vec![identity];
        while let Some(p) = frontier.pop() {
            for g in gens {
                let q: Vec<usize> = p.iter().map(|&i| g[i]).collect();
                if seen.insert(q.clone(), ()).is_none() {
                    frontier.push(q);
                }
            }
        }
        let elements: Vec<Vec<usize>> = seen.into_keys().collect();
        let index: BTreeMap<&Vec<usize>, usize> =
            elements.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let n = elements.len();
        let mut table = Vec::with_capacity(n * n);
        for p in &elements {
            for q in &elements {
                let pq: Vec<usize> = p.iter().map(|&i| q[i]).collect();
                table.push(index[&pq]);
            }
        }
        let names = elements.iter().map(|p| cycle_notation(p)).collect();
        Group::from_flat(n, table)
            .expect("permutation table")
            .with_names(names)
    }

    /// Alternating group on four points.
    pub fn alternating_4() -> Group {
        Group::from_permutations(&[alloc::vec![1, 2, 0, 3], alloc::vec![0, 2, 3, 1]])
    }

    /// Symmetric group on three points.
    pub fn symmetric_3() -> Group {
        Group::from_permutations(&[alloc::vec![1, 0, 2], alloc::vec![1, 2, 0]])
    }

    /// Dihedral group of order 8, acting on the vertices of a square.
    pub fn dihedral_8() -> Group {
        Group::from_permutations(&[alloc::vec![1, 2, 3, 0], alloc::vec![2, 1, 0, 3]])
    }

    /// Quaternion group `{±1, ±i, ±j, ±k}`.
    pub fn quaternion_8() -> Group {
        // unit products: (unit, unit) -> (sign flip, unit) with 1,i,j,k = 0..4
        const MUL: [[(bool, usize); 4]; 4] = [
            [(false, 0), (false, 1), (false, 2), (false, 3)],
            [(false, 1), (true, 0), (false, 3), (true, 2)],
            [(false, 2), (true, 3), (true, 0), (false, 1)],
            [(false, 3), (false, 2), (true, 1), (true, 0)],
        ];
        // index = 2 * unit + negative
        let mut table = Vec::with_capacity(64);
        for a in 0..8 {
            for b in 0..8 {
                let (flip, u) = MUL[a / 2][b / 2];
                let neg = (a % 2 == 1) ^ (b % 2 == 1) ^ flip;
                table.push(2 * u + usize::from(neg));
            }
        }
        let names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        Group::from_flat(8, table)
            .expect("quaternion table")
            .with_names(names)
    }
}

fn cycle_notation(p: &[usize]) -> String {
    let mut out = String::new();
    let mut done = alloc::vec![false; p.len()];
    for start in 0..p.len() {
        if done[start] || p[start] == start {
            continue;
        }
        out.push('(');
        let mut i = start;
        let mut first = true;
        while !done[i] {
            done[i] = true;
            if !first {
                out.push(',');
            }
            out.push_str(&(i + 1).to_string());
            first = false;
            i = p[i];
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructed_groups_satisfy_axioms() {
        for g in [
            Group::trivial(),
            Group::cyclic(4),
            Group::klein_four(),
            Group::alternating_4(),
            Group::symmetric_3(),
            Group::dihedral_8(),
            Group::quaternion_8(),
            Group::direct_product(&Group::cyclic(4), &Group::cyclic(2)),
        ] {
            g.verify().unwrap();
        }
    }

    #[test]
    fn cyclic_examples() {
        assert_eq!(Group::cyclic(1).table_rows(), alloc::vec![alloc::vec![0]]);
        let c4 = Group::cyclic(4);
        assert_eq!(c4.op(1, 3), 0);
        assert_eq!(c4.element_order(1), 4);
    }

    #[test]
    fn from_table_rejects_non_groups() {
        assert!(Group::from_table(alloc::vec![alloc::vec![0, 1], alloc::vec![1, 1]]).is_err());
        assert!(Group::from_table(alloc::vec![alloc::vec![0, 1]]).is_err());
        // Latin square that is not associative (order 5 loop)
        let loop5 = alloc::vec![
            alloc::vec![0, 1, 2, 3, 4],
            alloc::vec![1, 0, 3, 4, 2],
            alloc::vec![2, 4, 0, 1, 3],
            alloc::vec![3, 2, 4, 0, 1],
            alloc::vec![4, 3, 1, 2, 0],
        ];
        assert!(Group::from_table(loop5).is_err());
    }

    #[test]
    fn a4_structure() {
        let a4 = Group::alternating_4();
        assert_eq!(a4.order(), 12);
        assert!(!a4.is_abelian());
        assert_eq!(a4.name(0), "()");
        assert_eq!(a4.generators().len(), 2);
    }

    #[test]
    fn quaternion_has_single_involution() {
        let q8 = Group::quaternion_8();
        let involutions: Vec<_> = q8
            .elements()
            .filter(|&a| q8.element_order(a) == 2)
            .collect();
        assert_eq!(involutions, alloc::vec![1]);
        assert!(!q8.is_abelian());
    }

    #[test]
    fn subgroup_relabels() {
        let c4 = Group::cyclic(4);
        let (sub, embed) = c4.subgroup(&ElementSet::from_elements(4, [0, 2])).unwrap();
        assert_eq!(embed, alloc::vec![0, 2]);
        assert_eq!(sub.op(1, 1), 0);
        assert!(c4.subgroup(&ElementSet::from_elements(4, [0, 1])).is_err());
    }
}
