//! Ideals, commutators and the lower central series of a group with action.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::gwa::GroupWithAction;
use crate::set::ElementSet;
use crate::subgroup::all_subgroups;

/// A subset `A` of a GwA `G` that is a normal subgroup, is closed under
/// `a^g`, and contains `-g + g^a` for all `a` in `A`, `g` in `G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    pub parent: GroupWithAction,
    pub elements: ElementSet,
}

impl Ideal {
    pub fn new(parent: GroupWithAction, elements: ElementSet) -> Result<Ideal> {
        check_ideal(&elements, &parent)?;
        Ok(Ideal { parent, elements })
    }

    pub fn whole(parent: &GroupWithAction) -> Ideal {
        Ideal {
            parent: parent.clone(),
            elements: ElementSet::full(parent.order()),
        }
    }

    pub fn zero(parent: &GroupWithAction) -> Ideal {
        Ideal {
            parent: parent.clone(),
            elements: ElementSet::identity(parent.order()),
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

fn check_ideal(a: &ElementSet, g: &GroupWithAction) -> Result<()> {
    let grp = g.group();
    if !grp.is_subgroup(a) {
        return Err(Error::NotAnIdeal {
            condition: 1,
            element: 0,
            other: 0,
        });
    }
    for x in a.iter() {
        for h in grp.elements() {
            if !a.contains(grp.conj(x, h)) {
                return Err(Error::NotAnIdeal {
                    condition: 1,
                    element: x,
                    other: h,
                });
            }
        }
    }
    for x in a.iter() {
        for h in grp.elements() {
            if !a.contains(g.action(x, h)) {
                return Err(Error::NotAnIdeal {
                    condition: 2,
                    element: x,
                    other: h,
                });
            }
        }
    }
    for x in a.iter() {
        for h in grp.elements() {
            if !a.contains(grp.neg_add(h, g.action(h, x))) {
                return Err(Error::NotAnIdeal {
                    condition: 3,
                    element: x,
                    other: h,
                });
            }
        }
    }
    Ok(())
}

pub fn is_ideal(a: &ElementSet, g: &GroupWithAction) -> bool {
    a.universe() == g.order() && check_ideal(a, g).is_ok()
}

/// Every ideal, in the canonical subgroup order (size, then elements).
pub fn all_ideals(g: &GroupWithAction) -> Vec<Ideal> {
    all_subgroups(g.group())
        .into_iter()
        .filter(|s| s.normal && is_ideal(&s.elements, g))
        .map(|s| Ideal {
            parent: g.clone(),
            elements: s.elements,
        })
        .collect()
}

/// Smallest ideal containing `seed`.
pub fn ideal_closure(seed: &ElementSet, g: &GroupWithAction) -> Ideal {
    let grp = g.group();
    let mut cur = grp.closure(seed);
    loop {
        let mut next = cur.clone();
        for a in cur.iter() {
            for x in grp.elements() {
                next.insert(grp.conj(a, x));
                next.insert(g.action(a, x));
                next.insert(grp.neg_add(x, g.action(x, a)));
            }
        }
        let next = grp.closure(&next);
        if next == cur {
            return Ideal {
                parent: g.clone(),
                elements: cur,
            };
        }
        cur = next;
    }
}

/// Which generators enter the commutator of two ideals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CommutatorRule {
    /// Group commutators `-x-y+x+y`, and the twists `-x+x^y` and `-y+y^x`.
    #[default]
    Symmetric,
    /// Group commutators and `-x+x^y` only.
    OneSided,
}

/// `[A, B]`: the ideal generated by `-x-y+x+y`, `-x+x^y` and `-y+y^x` for
/// `x` in `A` and `y` in `B`.
pub fn commutator_ideal(a: &Ideal, b: &Ideal, g: &GroupWithAction) -> Result<Ideal> {
    commutator_ideal_with(a, b, g, CommutatorRule::Symmetric)
}

pub fn commutator_ideal_with(
    a: &Ideal,
    b: &Ideal,
    g: &GroupWithAction,
    rule: CommutatorRule,
) -> Result<Ideal> {
    check_ideal(&a.elements, g)?;
    check_ideal(&b.elements, g)?;
    Ok(commutator_unchecked(&a.elements, &b.elements, g, rule))
}

fn commutator_unchecked(
    a: &ElementSet,
    b: &ElementSet,
    g: &GroupWithAction,
    rule: CommutatorRule,
) -> Ideal {
    let grp = g.group();
    let mut gens = ElementSet::identity(g.order());
    for x in a.iter() {
        for y in b.iter() {
            gens.insert(grp.commutator(x, y));
            gens.insert(grp.neg_add(x, g.action(x, y)));
            if rule == CommutatorRule::Symmetric {
                gens.insert(grp.neg_add(y, g.action(y, x)));
            }
        }
    }
    ideal_closure(&gens, g)
}

pub fn is_perfect(g: &GroupWithAction) -> bool {
    let whole = ElementSet::full(g.order());
    commutator_unchecked(&whole, &whole, g, CommutatorRule::Symmetric)
        .elements
        .is_full()
}

/// `G = Γ1 ⊇ Γ2 ⊇ ...` with `Γ(k+1) = [Γk, G]`, listed until it reaches
/// `{0}` or stops shrinking.
pub fn lower_central_series(g: &GroupWithAction) -> Vec<Ideal> {
    lower_central_series_with(g, CommutatorRule::Symmetric)
}

pub fn lower_central_series_with(g: &GroupWithAction, rule: CommutatorRule) -> Vec<Ideal> {
    let whole = ElementSet::full(g.order());
    let mut series = alloc::vec![Ideal {
        parent: g.clone(),
        elements: whole.clone()
    }];
    loop {
        let last = &series.last().expect("nonempty").elements;
        if last.is_trivial() {
            return series;
        }
        let next = commutator_unchecked(last, &whole, g, rule);
        if &next.elements == last {
            return series;
        }
        series.push(next);
    }
}

/// Length of the lower central series down to `{0}`, or `0` when the
/// series stalls above `{0}`. The trivial GwA also gets `0`.
pub fn nilpotency_class(g: &GroupWithAction) -> usize {
    nilpotency_class_with(g, CommutatorRule::Symmetric)
}

pub fn nilpotency_class_with(g: &GroupWithAction, rule: CommutatorRule) -> usize {
    let series = lower_central_series_with(g, rule);
    if series.last().expect("nonempty").elements.is_trivial() {
        series.len() - 1
    } else {
        0
    }
}

pub fn is_nilpotent(g: &GroupWithAction) -> bool {
    g.order() == 1 || nilpotency_class(g) > 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Group;
    use crate::gwa::all_gwa_on_group;
    use alloc::sync::Arc;

    fn eps1() -> GroupWithAction {
        let rows = alloc::vec![
            alloc::vec![0, 1, 2, 3],
            alloc::vec![0, 1, 2, 3],
            alloc::vec![0, 1, 3, 2],
            alloc::vec![0, 1, 3, 2],
        ];
        GroupWithAction::from_table(Arc::new(Group::klein_four()), &rows).unwrap()
    }

    #[test]
    fn closure_examples() {
        let g = eps1();
        assert!(ideal_closure(&ElementSet::empty(4), &g)
            .elements
            .is_trivial());
        assert!(ideal_closure(&ElementSet::full(4), &g).elements.is_full());
        assert_eq!(
            ideal_closure(&ElementSet::from_elements(4, [1]), &g)
                .elements
                .to_vec(),
            [0, 1]
        );
    }

    #[test]
    fn closure_is_idempotent_and_monotone() {
        let g = eps1();
        for bits in 0u32..16 {
            let seed = ElementSet::from_elements(4, (0..4).filter(|i| bits >> i & 1 == 1));
            let c = ideal_closure(&seed, &g).elements;
            assert!(seed.is_subset(&c));
            assert_eq!(ideal_closure(&c, &g).elements, c);
            assert!(is_ideal(&c, &g));
        }
    }

    #[test]
    fn trivial_action_on_abelian_group_has_class_one() {
        for n in 2..7 {
            let g = GroupWithAction::trivial(Arc::new(Group::cyclic(n)));
            assert_eq!(nilpotency_class(&g), 1);
            assert!(is_nilpotent(&g));
        }
        let t = GroupWithAction::trivial(Arc::new(Group::trivial()));
        assert_eq!(nilpotency_class(&t), 0);
        assert!(is_nilpotent(&t));
    }

    #[test]
    fn no_gwa_on_klein_is_perfect() {
        for g in all_gwa_on_group(&Group::klein_four(), 12).unwrap() {
            assert!(!is_perfect(&g));
        }
    }

    #[test]
    fn whole_and_zero_are_ideals() {
        for g in all_gwa_on_group(&Group::dihedral_8(), 12).unwrap() {
            let ideals = all_ideals(&g);
            assert!(ideals.first().unwrap().elements.is_trivial());
            assert!(ideals.last().unwrap().elements.is_full());
        }
    }

    #[test]
    fn non_ideal_input_is_rejected() {
        let g = eps1();
        let not_ideal = Ideal {
            parent: g.clone(),
            elements: ElementSet::from_elements(4, [0, 2]),
        };
        let whole = Ideal::whole(&g);
        assert!(commutator_ideal(&not_ideal, &whole, &g).is_err());
    }
}
