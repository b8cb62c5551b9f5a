//! Groups with action: a group acting on itself from the right by
//! automorphisms.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::group::Group;
use crate::hom::{self, AutomorphismGroup, GroupHom};
use crate::set::ElementSet;

/// A group `G` with a right action `g^h` of `G` on itself.
///
/// The action is stored row-major as `act[h][g] = g^h`: row `h` is the
/// automorphism by which `h` acts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupWithAction {
    group: Arc<Group>,
    act: Vec<usize>,
}

/// The first axiom that fails, with the elements that witness it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomViolation {
    /// 1: `g^(h1+h2) = (g^h1)^h2`; 2: `g^0 = g`; 3: `(a+b)^h = a^h + b^h`;
    /// 4: `0^h = 0`.
    pub axiom: u8,
    pub witness: [usize; 3],
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, y, z] = self.witness;
        match self.axiom {
            1 => write!(
                f,
                "axiom 1 (g^(h1+h2) = (g^h1)^h2) fails for g={z}, h1={x}, h2={y}"
            ),
            2 => write!(f, "axiom 2 (g^0 = g) fails for g={x}"),
            3 => write!(
                f,
                "axiom 3 ((a+b)^h = a^h + b^h) fails for a={x}, b={y}, h={z}"
            ),
            _ => write!(f, "axiom 4 (0^h = 0) fails for h={x}"),
        }
    }
}

/// Checks the four axioms of a group with action on a flattened table.
pub fn check_axioms(g: &Group, act: &[usize]) -> core::result::Result<(), AxiomViolation> {
    let n = g.order();
    let a = |h: usize, x: usize| act[h * n + x];
    for x in 0..n {
        if a(0, x) != x {
            return Err(AxiomViolation {
                axiom: 2,
                witness: [x, 0, 0],
            });
        }
    }
    for h in 0..n {
        if a(h, 0) != 0 {
            return Err(AxiomViolation {
                axiom: 4,
                witness: [h, 0, 0],
            });
        }
    }
    for h in 0..n {
        for x in 0..n {
            for y in 0..n {
                if a(h, g.op(x, y)) != g.op(a(h, x), a(h, y)) {
                    return Err(AxiomViolation {
                        axiom: 3,
                        witness: [x, y, h],
                    });
                }
            }
        }
    }
    for h1 in 0..n {
        for h2 in 0..n {
            let h = g.op(h1, h2);
            for x in 0..n {
                if a(h, x) != a(h2, a(h1, x)) {
                    return Err(AxiomViolation {
                        axiom: 1,
                        witness: [h1, h2, x],
                    });
                }
            }
        }
    }
    Ok(())
}

/// Same check on the nested-rows form used by [`GroupWithAction::from_table`].
pub fn is_gwa(g: &Group, rows: &[Vec<usize>]) -> core::result::Result<(), AxiomViolation> {
    let n = g.order();
    if rows.len() != n
        || rows
            .iter()
            .any(|r| r.len() != n || r.iter().any(|&x| x >= n))
    {
        // A table of the wrong shape cannot satisfy axiom 2.
        return Err(AxiomViolation {
            axiom: 2,
            witness: [0, 0, 0],
        });
    }
    let flat: Vec<usize> = rows.concat();
    check_axioms(g, &flat)
}

impl GroupWithAction {
    pub fn trivial(g: Arc<Group>) -> GroupWithAction {
        let n = g.order();
        let act = (0..n).flat_map(|_| 0..n).collect();
        GroupWithAction { group: g, act }
    }

    /// `g^h = -h + g + h`.
    pub fn conjugation(g: Arc<Group>) -> GroupWithAction {
        let n = g.order();
        let act = (0..n)
            .flat_map(|h| (0..n).map(move |x| (h, x)))
            .map(|(h, x)| g.conj(x, h))
            .collect();
        GroupWithAction { group: g, act }
    }

    /// `rows[h][g] = g^h`.
    pub fn from_table(g: Arc<Group>, rows: &[Vec<usize>]) -> Result<GroupWithAction> {
        let n = g.order();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidTable("action table must be n x n".into()));
        }
        if rows.iter().flatten().any(|&x| x >= n) {
            return Err(Error::InvalidTable("action entry out of range".into()));
        }
        Self::from_flat(g, rows.concat())
    }

    pub fn from_flat(g: Arc<Group>, act: Vec<usize>) -> Result<GroupWithAction> {
        if act.len() != g.order() * g.order() {
            return Err(Error::InvalidTable("action table must be n x n".into()));
        }
        check_axioms(&g, &act)?;
        Ok(GroupWithAction { group: g, act })
    }

    /// Skips the axiom check; for tables built from a homomorphism into
    /// `Aut(G)`, which satisfy the axioms by construction.
    pub(crate) fn from_flat_unchecked(g: Arc<Group>, act: Vec<usize>) -> GroupWithAction {
        debug_assert!(check_axioms(&g, &act).is_ok());
        GroupWithAction { group: g, act }
    }

    #[inline]
    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn group_arc(&self) -> &Arc<Group> {
        &self.group
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// `g^h`.
    #[inline]
    pub fn action(&self, g: usize, h: usize) -> usize {
        self.act[h * self.group.order() + g]
    }

    /// Flattened table, row `h` first.
    pub fn act_flat(&self) -> &[usize] {
        &self.act
    }

    pub fn act_rows(&self) -> Vec<Vec<usize>> {
        self.act
            .chunks(self.order())
            .map(<[usize]>::to_vec)
            .collect()
    }

    pub fn verify(&self) -> core::result::Result<(), AxiomViolation> {
        check_axioms(&self.group, &self.act)
    }

    pub fn is_trivial_action(&self) -> bool {
        let n = self.order();
        self.act.iter().enumerate().all(|(i, &x)| x == i % n)
    }

    /// The table obtained by relabelling every element through the
    /// automorphism `f`: `new[f h][f x] = f(x^h)`.
    pub fn transformed_table(&self, f: &[usize]) -> Vec<usize> {
        let n = self.order();
        let mut out = alloc::vec![0; n * n];
        for h in 0..n {
            for x in 0..n {
                out[f[h] * n + f[x]] = f[self.act[h * n + x]];
            }
        }
        out
    }

    /// Whether `set` is closed under `g^h` for all `g` in it and `h` in `G`.
    pub fn is_action_closed(&self, set: &ElementSet) -> bool {
        set.iter().all(|a| {
            self.group
                .elements()
                .all(|h| set.contains(self.action(a, h)))
        })
    }

    /// The sub-GwA on a subgroup that is closed under the action of its
    /// own elements, relabelled as in [`Group::subgroup`], with its embedding.
    pub fn restrict(&self, set: &ElementSet) -> Result<(GroupWithAction, Vec<usize>)> {
        let (sub, embed) = self.group.subgroup(set)?;
        let mut pos = alloc::vec![usize::MAX; self.order()];
        for (i, &e) in embed.iter().enumerate() {
            pos[e] = i;
        }
        let mut act = Vec::with_capacity(embed.len() * embed.len());
        for &h in &embed {
            for &x in &embed {
                let y = self.action(x, h);
                if pos[y] == usize::MAX {
                    return Err(Error::NotClosed(alloc::format!(
                        "{}^{} leaves the subset",
                        self.group.name(x),
                        self.group.name(h)
                    )));
                }
                act.push(pos[y]);
            }
        }
        Ok((GroupWithAction::from_flat(Arc::new(sub), act)?, embed))
    }

    /// Componentwise product: `(x, y)^(h, k) = (x^h, y^k)`.
    pub fn direct_product(a: &GroupWithAction, b: &GroupWithAction) -> GroupWithAction {
        let g = Arc::new(Group::direct_product(&a.group, &b.group));
        let m = b.order();
        let n = g.order();
        let mut act = Vec::with_capacity(n * n);
        for h in 0..n {
            for x in 0..n {
                act.push(a.action(x / m, h / m) * m + b.action(x % m, h % m));
            }
        }
        GroupWithAction::from_flat_unchecked(g, act)
    }
}

/// Every group with action on `g`, in lexicographic order of the flattened
/// action table. Each is a homomorphism `g -> Aut(g)` read as a right action.
pub fn all_gwa_on_group(g: &Group, max_order: usize) -> Result<Vec<GroupWithAction>> {
    if g.order() > max_order {
        return Err(Error::Capacity {
            order: g.order(),
            max: max_order,
        });
    }
    let g = Arc::new(g.clone());
    let aut = AutomorphismGroup::of(&g);
    let tables = hom::actions_by_automorphisms(&g, &aut);
    let out = tables
        .into_iter()
        .map(|act| GroupWithAction::from_flat_unchecked(g.clone(), act))
        .collect();
    Ok(out)
}

/// Six-term identity tying a GwA to a Leibniz algebra:
/// `x - x^(z^x) + x^(y + z^x) - x + x^z - x^(z + y^z) = 0` for all `x, y, z`.
pub fn satisfies_condition1(g: &GroupWithAction) -> bool {
    condition1_witness(g).is_none()
}

/// First `(x, y, z)` violating Condition 1, if any.
pub fn condition1_witness(g: &GroupWithAction) -> Option<(usize, usize, usize)> {
    let grp = g.group();
    let e = |x: usize, y: usize| g.action(x, y);
    for x in grp.elements() {
        for z in grp.elements() {
            let zx = e(z, x);
            let xz = e(x, z);
            for y in grp.elements() {
                let terms = [
                    x,
                    grp.neg(e(x, zx)),
                    e(x, grp.op(y, zx)),
                    grp.neg(x),
                    xz,
                    grp.neg(e(x, grp.op(z, e(y, z)))),
                ];
                if grp.sum(terms) != 0 {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

/// A homomorphism of the underlying groups that commutes with the actions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GwAMorphism {
    pub src: GroupWithAction,
    pub dst: GroupWithAction,
    pub hom: GroupHom,
}

impl GwAMorphism {
    pub fn new(
        src: GroupWithAction,
        dst: GroupWithAction,
        image: Vec<usize>,
    ) -> Result<GwAMorphism> {
        let hom = GroupHom::new(src.group.clone(), dst.group.clone(), image)?;
        if let Some((g, h)) = action_square_failure(&src, &dst, &hom.image) {
            return Err(Error::Mismatch(alloc::format!(
                "map does not preserve the action at g={g}, h={h}"
            )));
        }
        Ok(GwAMorphism { src, dst, hom })
    }

    pub fn identity(g: &GroupWithAction) -> GwAMorphism {
        GwAMorphism {
            src: g.clone(),
            dst: g.clone(),
            hom: GroupHom::identity(g.group.clone()),
        }
    }

    pub fn zero(src: &GroupWithAction, dst: &GroupWithAction) -> GwAMorphism {
        GwAMorphism {
            src: src.clone(),
            dst: dst.clone(),
            hom: GroupHom::zero(src.group.clone(), dst.group.clone()),
        }
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.hom.image[a]
    }

    pub fn image(&self) -> &[usize] {
        &self.hom.image
    }

    pub fn is_bijective(&self) -> bool {
        self.hom.is_bijective()
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GwAMorphism) -> GwAMorphism {
        GwAMorphism {
            src: self.src.clone(),
            dst: other.dst.clone(),
            hom: self.hom.then(&other.hom),
        }
    }
}

fn action_square_failure(
    src: &GroupWithAction,
    dst: &GroupWithAction,
    image: &[usize],
) -> Option<(usize, usize)> {
    for h in src.group.elements() {
        for g in src.group.elements() {
            if image[src.action(g, h)] != dst.action(image[g], image[h]) {
                return Some((g, h));
            }
        }
    }
    None
}

/// True iff `image` is a group homomorphism that carries `g^h` to
/// `image(g)^image(h)`.
pub fn is_gwa_morphism(image: &[usize], src: &GroupWithAction, dst: &GroupWithAction) -> bool {
    hom::check_hom(&src.group, &dst.group, image).is_ok()
        && action_square_failure(src, dst, image).is_none()
}

/// Image arrays of every GwA morphism, in lexicographic order.
pub fn gwa_morphism_images(src: &GroupWithAction, dst: &GroupWithAction) -> Vec<Vec<usize>> {
    hom::hom_images(&src.group, &dst.group)
        .into_iter()
        .filter(|m| action_square_failure(src, dst, m).is_none())
        .collect()
}

pub fn all_gwa_morphisms(src: &GroupWithAction, dst: &GroupWithAction) -> Vec<GwAMorphism> {
    gwa_morphism_images(src, dst)
        .into_iter()
        .map(|image| GwAMorphism {
            src: src.clone(),
            dst: dst.clone(),
            hom: GroupHom {
                src: src.group.clone(),
                dst: dst.group.clone(),
                image,
            },
        })
        .collect()
}

/// Group isomorphisms `a -> b` as image arrays (bijective homomorphisms).
pub(crate) fn group_isomorphisms(a: &Group, b: &Group) -> Vec<Vec<usize>> {
    if a.order() != b.order() {
        return Vec::new();
    }
    hom::hom_images(a, b)
        .into_iter()
        .filter(|m| m.iter().filter(|&&x| x == 0).count() == 1)
        .collect()
}

/// An isomorphism of groups with action `a -> b`, if one exists.
pub fn find_gwa_isomorphism(a: &GroupWithAction, b: &GroupWithAction) -> Option<Vec<usize>> {
    group_isomorphisms(&a.group, &b.group)
        .into_iter()
        .find(|m| action_square_failure(a, b, m).is_none())
}

pub fn are_isomorphic_gwa(a: &GroupWithAction, b: &GroupWithAction) -> bool {
    if a.group.same_table(&b.group) {
        // Same group: compare canonical forms under Aut(G) directly.
        let auts = hom::automorphism_images(&a.group);
        return auts.iter().any(|f| a.transformed_table(f) == b.act);
    }
    find_gwa_isomorphism(a, b).is_some()
}

/// Indices in `list` of the members isomorphic to `x`.
pub fn isomorphic_family(x: &GroupWithAction, list: &[GroupWithAction]) -> Vec<usize> {
    list.iter()
        .enumerate()
        .filter(|(_, y)| are_isomorphic_gwa(x, y))
        .map(|(i, _)| i)
        .collect()
}

/// Partition of `list` into isomorphism classes. Each class lists member
/// indices in increasing order; classes are ordered by their first member.
pub fn isomorphism_classes(list: &[GroupWithAction]) -> Vec<Vec<usize>> {
    let Some(first) = list.first() else {
        return Vec::new();
    };
    if list.iter().all(|g| g.group.same_table(&first.group)) {
        let auts = hom::automorphism_images(&first.group);
        let mut classes: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for (i, g) in list.iter().enumerate() {
            let canon = auts
                .iter()
                .map(|f| g.transformed_table(f))
                .min()
                .expect("identity");
            classes.entry(canon).or_default().push(i);
        }
        let mut out: Vec<Vec<usize>> = classes.into_values().collect();
        out.sort();
        return out;
    }
    let mut out: Vec<Vec<usize>> = Vec::new();
    for (i, g) in list.iter().enumerate() {
        match out.iter_mut().find(|c| are_isomorphic_gwa(&list[c[0]], g)) {
            Some(c) => c.push(i),
            None => out.push(alloc::vec![i]),
        }
    }
    out
}

/// First member of each isomorphism class.
pub fn isomorphism_class_representatives(list: &[GroupWithAction]) -> Vec<usize> {
    isomorphism_classes(list)
        .into_iter()
        .map(|c| c[0])
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kl4() -> Arc<Group> {
        Arc::new(Group::klein_four())
    }

    #[test]
    fn trivial_and_conjugation_are_gwas() {
        for g in [
            Group::klein_four(),
            Group::dihedral_8(),
            Group::alternating_4(),
        ] {
            let g = Arc::new(g);
            GroupWithAction::trivial(g.clone()).verify().unwrap();
            GroupWithAction::conjugation(g).verify().unwrap();
        }
        let kl4 = kl4();
        assert_eq!(
            GroupWithAction::trivial(kl4.clone()),
            GroupWithAction::conjugation(kl4)
        );
    }

    #[test]
    fn rejects_non_automorphism_row() {
        let rows = alloc::vec![
            alloc::vec![0, 1, 2, 3],
            alloc::vec![0, 1, 2, 3],
            alloc::vec![0, 1, 1, 3],
            alloc::vec![0, 1, 2, 3],
        ];
        let err = GroupWithAction::from_table(kl4(), &rows).unwrap_err();
        assert!(matches!(
            err,
            Error::GwaAxiom(AxiomViolation { axiom: 3, .. })
        ));
    }

    #[test]
    fn rejects_left_action() {
        // On S3, conjugation written as a left action breaks axiom 1.
        let s3 = Arc::new(Group::symmetric_3());
        let rows: Vec<Vec<usize>> = s3
            .elements()
            .map(|h| s3.elements().map(|x| s3.conj(x, s3.neg(h))).collect())
            .collect();
        let err = GroupWithAction::from_table(s3, &rows).unwrap_err();
        assert!(matches!(
            err,
            Error::GwaAxiom(AxiomViolation { axiom: 1, .. })
        ));
    }

    #[test]
    fn counts_on_small_groups() {
        assert_eq!(all_gwa_on_group(&Group::trivial(), 12).unwrap().len(), 1);
        assert_eq!(
            all_gwa_on_group(&Group::klein_four(), 12).unwrap().len(),
            10
        );
        assert_eq!(all_gwa_on_group(&Group::cyclic(2), 12).unwrap().len(), 1);
        assert!(matches!(
            all_gwa_on_group(&Group::cyclic(13), 12),
            Err(Error::Capacity { order: 13, max: 12 })
        ));
    }

    #[test]
    fn morphisms_between_trivial_c2() {
        let c2 = GroupWithAction::trivial(Arc::new(Group::cyclic(2)));
        assert_eq!(all_gwa_morphisms(&c2, &c2).len(), 2);
    }

    #[test]
    fn klein_classes() {
        let list = all_gwa_on_group(&Group::klein_four(), 12).unwrap();
        let classes = isomorphism_classes(&list);
        let total: usize = classes.iter().map(Vec::len).sum();
        assert_eq!(total, 10);
        for c in &classes {
            for &i in c {
                assert_eq!(isomorphic_family(&list[i], &list), *c);
            }
        }
    }

    #[test]
    fn product_of_gwas() {
        let list = all_gwa_on_group(&Group::klein_four(), 12).unwrap();
        let p = GroupWithAction::direct_product(&list[3], &list[7]);
        p.verify().unwrap();
        assert_eq!(p.order(), 16);
    }
}
