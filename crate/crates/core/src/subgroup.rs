//! Subgroup lattice enumeration.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::group::Group;
use crate::set::ElementSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    pub elements: ElementSet,
    pub normal: bool,
}

/// Every subgroup of `g`, ordered by size and then by element list.
///
/// Every subgroup is reached from `{0}` by repeatedly adjoining one element
/// and closing, so a search over that relation finds them all.
pub fn all_subgroups(g: &Group) -> Vec<Subgroup> {
    let start = ElementSet::identity(g.order());
    let mut seen = BTreeSet::new();
    seen.insert(start.clone());
    let mut frontier = alloc::vec![start];
    while let Some(h) = frontier.pop() {
        for a in g.elements().filter(|&a| !h.contains(a)) {
            let mut seed = h.clone();
            seed.insert(a);
            let next = g.closure(&seed);
            if seen.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    let mut subs: Vec<ElementSet> = seen.into_iter().collect();
    subs.sort_by(ElementSet::canonical_cmp);
    subs.into_iter()
        .map(|elements| {
            let normal = g.is_normal(&elements);
            Subgroup { elements, normal }
        })
        .collect()
}

pub fn normal_subgroups(g: &Group) -> Vec<ElementSet> {
    all_subgroups(g)
        .into_iter()
        .filter(|s| s.normal)
        .map(|s| s.elements)
        .collect()
}
