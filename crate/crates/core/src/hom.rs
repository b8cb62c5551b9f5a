//! Homomorphisms between finite groups and automorphism groups.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::group::Group;

/// A homomorphism `src -> dst` stored as its image array.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    pub src: Arc<Group>,
    pub dst: Arc<Group>,
    pub image: Vec<usize>,
}

impl GroupHom {
    /// Validates the image array against both tables.
    pub fn new(src: Arc<Group>, dst: Arc<Group>, image: Vec<usize>) -> Result<GroupHom> {
        check_hom(&src, &dst, &image)?;
        Ok(GroupHom { src, dst, image })
    }

    pub fn identity(g: Arc<Group>) -> GroupHom {
        let image = g.elements().collect();
        GroupHom {
            src: g.clone(),
            dst: g,
            image,
        }
    }

    pub fn zero(src: Arc<Group>, dst: Arc<Group>) -> GroupHom {
        let image = alloc::vec![0; src.order()];
        GroupHom { src, dst, image }
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.image[a]
    }

    pub fn is_injective(&self) -> bool {
        self.image.iter().filter(|&&x| x == 0).count() == 1
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = alloc::vec![false; self.dst.order()];
        for &x in &self.image {
            hit[x] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_bijective(&self) -> bool {
        self.src.order() == self.dst.order() && self.is_injective()
    }

    pub fn kernel(&self) -> crate::set::ElementSet {
        crate::set::ElementSet::from_elements(
            self.src.order(),
            self.src.elements().filter(|&a| self.image[a] == 0),
        )
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GroupHom) -> GroupHom {
        let image = self.image.iter().map(|&a| other.image[a]).collect();
        GroupHom {
            src: self.src.clone(),
            dst: other.dst.clone(),
            image,
        }
    }
}

pub fn check_hom(src: &Group, dst: &Group, image: &[usize]) -> Result<()> {
    if image.len() != src.order() || image.iter().any(|&x| x >= dst.order()) {
        return Err(Error::InvalidTable(
            "image array has the wrong shape".into(),
        ));
    }
    for a in src.elements() {
        for b in src.elements() {
            if image[src.op(a, b)] != dst.op(image[a], image[b]) {
                return Err(Error::NotAHomomorphism { a, b });
            }
        }
    }
    Ok(())
}

/// Propagates generator images over the subgroup they generate. Returns
/// `false` as soon as two words for the same element disagree.
fn propagate(src: &Group, dst: &Group, gens: &[usize], imgs: &[usize], map: &mut [usize]) -> bool {
    map.fill(usize::MAX);
    map[0] = 0;
    let mut frontier = alloc::vec![0usize];
    while let Some(a) = frontier.pop() {
        for (&g, &v) in gens.iter().zip(imgs) {
            let b = src.op(a, g);
            let w = dst.op(map[a], v);
            if map[b] == usize::MAX {
                map[b] = w;
                frontier.push(b);
            } else if map[b] != w {
                return false;
            }
        }
    }
    true
}

/// Image arrays of every homomorphism `src -> dst`, sorted lexicographically.
pub fn hom_images(src: &Group, dst: &Group) -> Vec<Vec<usize>> {
    let gens = src.generators();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| {
            let k = src.element_order(g);
            dst.elements()
                .filter(|&v| k.is_multiple_of(dst.element_order(v)))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut imgs = Vec::with_capacity(gens.len());
    let mut map = alloc::vec![0; src.order()];
    backtrack(src, dst, &gens, &candidates, &mut imgs, &mut map, &mut out);
    out.sort();
    out
}

fn backtrack(
    src: &Group,
    dst: &Group,
    gens: &[usize],
    candidates: &[Vec<usize>],
    imgs: &mut Vec<usize>,
    map: &mut [usize],
    out: &mut Vec<Vec<usize>>,
) {
    let k = imgs.len();
    if k == gens.len() {
        if propagate(src, dst, gens, imgs, map) {
            out.push(map.to_vec());
        }
        return;
    }
    for &v in &candidates[k] {
        imgs.push(v);
        if propagate(src, dst, &gens[..=k], imgs, map) {
            backtrack(src, dst, gens, candidates, imgs, map, out);
        }
        imgs.pop();
    }
}

/// Every homomorphism `src -> dst`, in lexicographic order of image arrays.
pub fn all_homomorphisms(src: &Arc<Group>, dst: &Arc<Group>) -> Vec<GroupHom> {
    hom_images(src, dst)
        .into_iter()
        .map(|image| GroupHom {
            src: src.clone(),
            dst: dst.clone(),
            image,
        })
        .collect()
}

/// Image arrays of every automorphism, sorted lexicographically (so the
/// identity comes first).
pub fn automorphism_images(g: &Group) -> Vec<Vec<usize>> {
    hom_images(g, g)
        .into_iter()
        .filter(|m| {
            let mut hit = alloc::vec![false; m.len()];
            m.iter().all(|&x| !core::mem::replace(&mut hit[x], true))
        })
        .collect()
}

pub fn automorphisms(g: &Arc<Group>) -> Vec<GroupHom> {
    automorphism_images(g)
        .into_iter()
        .map(|image| GroupHom {
            src: g.clone(),
            dst: g.clone(),
            image,
        })
        .collect()
}

/// `Aut(G)` as an abstract group. Element `i` is `maps[i]`, and `i + j`
/// applies `maps[i]` first, then `maps[j]`; a homomorphism into this group
/// is therefore a right action.
#[derive(Clone, Debug)]
pub struct AutomorphismGroup {
    pub maps: Vec<Vec<usize>>,
    pub group: Arc<Group>,
}

impl AutomorphismGroup {
    pub fn of(g: &Group) -> AutomorphismGroup {
        let maps = automorphism_images(g);
        let index: BTreeMap<&[usize], usize> = maps
            .iter()
            .enumerate()
            .map(|(i, m)| (m.as_slice(), i))
            .collect();
        let n = maps.len();
        let mut table = Vec::with_capacity(n * n);
        let mut buf = alloc::vec![0; g.order()];
        for a in &maps {
            for b in &maps {
                for x in g.elements() {
                    buf[x] = b[a[x]];
                }
                table.push(index[buf.as_slice()]);
            }
        }
        let group = Group::from_flat(n, table).expect("automorphisms form a group");
        AutomorphismGroup {
            maps,
            group: Arc::new(group),
        }
    }

    pub fn order(&self) -> usize {
        self.maps.len()
    }
}

/// Every homomorphism `r -> Aut(s)`, expanded into `|r| x |s|` tables
/// `t[r][x] = image of x under the automorphism attached to r`. Sorted
/// lexicographically by the flattened table.
pub fn actions_by_automorphisms(r: &Group, aut: &AutomorphismGroup) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = hom_images(r, &aut.group)
        .into_iter()
        .map(|h| {
            h.iter()
                .flat_map(|&i| aut.maps[i].iter().copied())
                .collect()
        })
        .collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force_homs(src: &Group, dst: &Group) -> Vec<Vec<usize>> {
        let n = src.order();
        let m = dst.order();
        let mut out = Vec::new();
        let mut image = alloc::vec![0; n];
        loop {
            if check_hom(src, dst, &image).is_ok() {
                out.push(image.clone());
            }
            let mut i = 0;
            loop {
                if i == n {
                    return out;
                }
                image[i] += 1;
                if image[i] < m {
                    break;
                }
                image[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn hom_counts() {
        let c2 = Group::cyclic(2);
        assert_eq!(hom_images(&c2, &c2).len(), 2);
        let kl4 = Group::klein_four();
        assert_eq!(hom_images(&kl4, &Group::trivial()).len(), 1);
        let s3 = Group::symmetric_3();
        assert_eq!(hom_images(&kl4, &s3).len(), 10);
    }

    #[test]
    fn matches_brute_force_small() {
        let groups = [
            Group::cyclic(2),
            Group::cyclic(3),
            Group::cyclic(4),
            Group::klein_four(),
            Group::symmetric_3(),
        ];
        for a in &groups {
            for b in &groups {
                let mut want = brute_force_homs(a, b);
                want.sort();
                assert_eq!(hom_images(a, b), want);
            }
        }
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(automorphism_images(&Group::klein_four()).len(), 6);
        let c2 = Group::cyclic(2);
        let c2_3 = Group::direct_product(&c2, &Group::direct_product(&c2, &c2));
        let aut = AutomorphismGroup::of(&c2_3);
        assert_eq!(aut.order(), 168);
        aut.group.verify().unwrap();
        assert_eq!(aut.maps[0], (0..8).collect::<Vec<_>>());
    }
}
