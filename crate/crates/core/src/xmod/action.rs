use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::gwa::GroupWithAction;
use crate::hom::{actions_by_automorphisms, AutomorphismGroup};

/// Two actions `r·s` and `r⋆s` of a GwA `R` on a GwA `S`, compatible with
/// both self-actions.
///
/// Tables are `|R| x |S|`, row-major: `dot[r * |S| + s] = r·s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedActionPair {
    pub swa: GroupWithAction,
    pub rwa: GroupWithAction,
    dot: Vec<usize>,
    star: Vec<usize>,
}

/// The first of the eight compatibility conditions that fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionViolation {
    pub condition: u8,
    /// Elements named in the condition, in the order they appear in the
    /// message.
    pub witness: Vec<(&'static str, usize)>,
}

impl fmt::Display for ActionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const ROMAN: [&str; 9] = ["?", "i", "ii", "iii", "iv", "v", "vi", "vii", "viii"];
        let tag = ROMAN.get(self.condition as usize).copied().unwrap_or("?");
        write!(f, "condition {tag} fails for")?;
        for (i, (name, v)) in self.witness.iter().enumerate() {
            let sep = if i == 0 { " " } else { ", " };
            write!(f, "{sep}{name}={v}")?;
        }
        Ok(())
    }
}

fn violation(condition: u8, witness: &[(&'static str, usize)]) -> ActionViolation {
    ActionViolation {
        condition,
        witness: witness.to_vec(),
    }
}

/// Checks that `t` is a right action of `R` on `S` by automorphisms.
/// `base` is 1 for the dot action and 4 for the star action, so the
/// reported condition numbers line up with i-iii and iv-vi.
fn check_single(
    s: &GroupWithAction,
    r: &GroupWithAction,
    t: &[usize],
    base: u8,
) -> core::result::Result<(), ActionViolation> {
    let (sg, rg) = (s.group(), r.group());
    let ns = sg.order();
    let at = |r: usize, x: usize| t[r * ns + x];
    for x in sg.elements() {
        if at(0, x) != x {
            return Err(violation(base + 2, &[("s", x)]));
        }
    }
    for a in rg.elements() {
        if at(a, 0) != 0 {
            return Err(violation(base + 2, &[("r", a)]));
        }
    }
    for a in rg.elements() {
        for x in sg.elements() {
            for y in sg.elements() {
                if at(a, sg.op(x, y)) != sg.op(at(a, x), at(a, y)) {
                    return Err(violation(base + 1, &[("r", a), ("s", x), ("s1", y)]));
                }
            }
        }
    }
    for a in rg.elements() {
        for b in rg.elements() {
            let ab = rg.op(a, b);
            for x in sg.elements() {
                if at(ab, x) != at(b, at(a, x)) {
                    return Err(violation(base, &[("r", a), ("r1", b), ("s", x)]));
                }
            }
        }
    }
    Ok(())
}

/// Condition vii: `r⋆(r1·s) = (r1^r)·(r⋆s)`.
pub(crate) fn check_vii(
    s: &GroupWithAction,
    r: &GroupWithAction,
    dot: &[usize],
    star: &[usize],
) -> Option<[usize; 3]> {
    let ns = s.order();
    for a in r.group().elements() {
        for b in r.group().elements() {
            let ba = r.action(b, a);
            for x in s.group().elements() {
                if star[a * ns + dot[b * ns + x]] != dot[ba * ns + star[a * ns + x]] {
                    return Some([a, b, x]);
                }
            }
        }
    }
    None
}

/// Condition viii: `(r⋆s)^(r·s1) = r⋆(s^s1)`.
pub(crate) fn check_viii(
    s: &GroupWithAction,
    r: &GroupWithAction,
    dot: &[usize],
    star: &[usize],
) -> Option<[usize; 3]> {
    let ns = s.order();
    for a in r.group().elements() {
        for x in s.group().elements() {
            let ax = star[a * ns + x];
            for y in s.group().elements() {
                if s.action(ax, dot[a * ns + y]) != star[a * ns + s.action(x, y)] {
                    return Some([a, x, y]);
                }
            }
        }
    }
    None
}

/// Checks conditions i-viii and reports the first failure.
pub fn check_action_pair(
    swa: &GroupWithAction,
    rwa: &GroupWithAction,
    dot: &[usize],
    star: &[usize],
) -> core::result::Result<(), ActionViolation> {
    let size = swa.order() * rwa.order();
    if dot.len() != size || star.len() != size {
        return Err(violation(3, &[]));
    }
    if dot.iter().chain(star).any(|&x| x >= swa.order()) {
        return Err(violation(3, &[]));
    }
    check_single(swa, rwa, dot, 1)?;
    check_single(swa, rwa, star, 4)?;
    if let Some([a, b, x]) = check_vii(swa, rwa, dot, star) {
        return Err(violation(7, &[("r", a), ("r1", b), ("s", x)]));
    }
    if let Some([a, x, y]) = check_viii(swa, rwa, dot, star) {
        return Err(violation(8, &[("r", a), ("s", x), ("s1", y)]));
    }
    Ok(())
}

pub fn is_gwa_action(
    swa: &GroupWithAction,
    rwa: &GroupWithAction,
    dot: &[usize],
    star: &[usize],
) -> bool {
    check_action_pair(swa, rwa, dot, star).is_ok()
}

impl DerivedActionPair {
    pub fn new(
        swa: GroupWithAction,
        rwa: GroupWithAction,
        dot: Vec<usize>,
        star: Vec<usize>,
    ) -> Result<DerivedActionPair> {
        check_action_pair(&swa, &rwa, &dot, &star)?;
        Ok(DerivedActionPair {
            swa,
            rwa,
            dot,
            star,
        })
    }

    pub(crate) fn new_unchecked(
        swa: GroupWithAction,
        rwa: GroupWithAction,
        dot: Vec<usize>,
        star: Vec<usize>,
    ) -> DerivedActionPair {
        DerivedActionPair {
            swa,
            rwa,
            dot,
            star,
        }
    }

    /// Builds a pair from nested `|R| x |S|` tables.
    pub fn from_tables(
        swa: GroupWithAction,
        rwa: GroupWithAction,
        dot: &[Vec<usize>],
        star: &[Vec<usize>],
    ) -> Result<DerivedActionPair> {
        let shape_ok = |t: &[Vec<usize>]| {
            t.len() == rwa.order() && t.iter().all(|row| row.len() == swa.order())
        };
        if !shape_ok(dot) || !shape_ok(star) {
            return Err(Error::InvalidTable(
                "action pair tables must be |R| x |S|".into(),
            ));
        }
        Self::new(swa, rwa, dot.concat(), star.concat())
    }

    /// `r·s`.
    #[inline]
    pub fn dot(&self, r: usize, s: usize) -> usize {
        self.dot[r * self.swa.order() + s]
    }

    /// `r⋆s`.
    #[inline]
    pub fn star(&self, r: usize, s: usize) -> usize {
        self.star[r * self.swa.order() + s]
    }

    pub fn dot_flat(&self) -> &[usize] {
        &self.dot
    }

    pub fn star_flat(&self) -> &[usize] {
        &self.star
    }

    pub fn dot_rows(&self) -> Vec<Vec<usize>> {
        self.dot
            .chunks(self.swa.order())
            .map(<[usize]>::to_vec)
            .collect()
    }

    pub fn star_rows(&self) -> Vec<Vec<usize>> {
        self.star
            .chunks(self.swa.order())
            .map(<[usize]>::to_vec)
            .collect()
    }

    pub fn verify(&self) -> core::result::Result<(), ActionViolation> {
        check_action_pair(&self.swa, &self.rwa, &self.dot, &self.star)
    }

    /// Both actions trivial.
    pub fn trivial(swa: &GroupWithAction, rwa: &GroupWithAction) -> DerivedActionPair {
        let ns = swa.order();
        let t: Vec<usize> = (0..rwa.order() * ns).map(|i| i % ns).collect();
        DerivedActionPair {
            swa: swa.clone(),
            rwa: rwa.clone(),
            dot: t.clone(),
            star: t,
        }
    }
}

/// Tables of every candidate action `R -> Aut(S)`, in lexicographic order.
pub(crate) fn candidate_actions(swa: &GroupWithAction, rwa: &GroupWithAction) -> Vec<Vec<usize>> {
    let aut = AutomorphismGroup::of(swa.group());
    actions_by_automorphisms(rwa.group(), &aut)
}

/// Raw `(dot, star)` tables of every derived action pair, ordered by dot
/// table and then by star table.
pub(crate) fn action_pair_tables(
    swa: &GroupWithAction,
    rwa: &GroupWithAction,
) -> Vec<(Vec<usize>, Vec<usize>)> {
    let candidates = candidate_actions(swa, rwa);
    let mut out = Vec::new();
    for d in &candidates {
        for st in &candidates {
            if check_vii(swa, rwa, d, st).is_none() && check_viii(swa, rwa, d, st).is_none() {
                out.push((d.clone(), st.clone()));
            }
        }
    }
    out
}

/// Every derived action pair of `rwa` on `swa`. Both actions range over
/// homomorphisms `R -> Aut(S)`, since i-vi say exactly that, and the pairs
/// are filtered by vii and viii.
pub fn all_xmod_gwa_actions(
    swa: &GroupWithAction,
    rwa: &GroupWithAction,
    max_order: usize,
) -> Result<Vec<DerivedActionPair>> {
    for g in [swa, rwa] {
        if g.order() > max_order {
            return Err(Error::Capacity {
                order: g.order(),
                max: max_order,
            });
        }
    }
    Ok(action_pair_tables(swa, rwa)
        .into_iter()
        .map(|(dot, star)| DerivedActionPair::new_unchecked(swa.clone(), rwa.clone(), dot, star))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Group;
    use crate::gwa::all_gwa_on_group;
    use alloc::sync::Arc;

    /// All pairs of `|R| x |S|` tables whose rows are automorphisms of `S`,
    /// filtered by the full checker.
    fn oracle(swa: &GroupWithAction, rwa: &GroupWithAction) -> Vec<(Vec<usize>, Vec<usize>)> {
        let autos = crate::hom::automorphism_images(swa.group());
        let nr = rwa.order();
        let mut tables: Vec<Vec<usize>> = alloc::vec![Vec::new()];
        for _ in 0..nr {
            let mut next = Vec::new();
            for t in &tables {
                for a in &autos {
                    let mut u = t.clone();
                    u.extend_from_slice(a);
                    next.push(u);
                }
            }
            tables = next;
        }
        let mut out = Vec::new();
        for d in &tables {
            for st in &tables {
                if is_gwa_action(swa, rwa, d, st) {
                    out.push((d.clone(), st.clone()));
                }
            }
        }
        out.sort();
        out
    }

    #[test]
    fn matches_oracle_on_small_groups() {
        let groups = [
            Group::cyclic(2),
            Group::cyclic(3),
            Group::cyclic(4),
            Group::klein_four(),
        ];
        let mut gwas = Vec::new();
        for g in &groups {
            gwas.extend(all_gwa_on_group(g, 12).unwrap());
        }
        for s in &gwas {
            for r in &gwas {
                if s.order() == 4 && r.order() == 4 && s.group().neg(1) == 1 {
                    // 6^4 tables per action on Kl4: skip the largest cases here,
                    // the acceptance suite covers them.
                    continue;
                }
                let fast = action_pair_tables(s, r);
                assert_eq!(fast, oracle(s, r));
            }
        }
    }

    #[test]
    fn trivial_range_has_one_pair() {
        let s = &all_gwa_on_group(&Group::klein_four(), 12).unwrap()[4];
        let r = GroupWithAction::trivial(Arc::new(Group::trivial()));
        assert_eq!(all_xmod_gwa_actions(s, &r, 12).unwrap().len(), 1);
    }

    #[test]
    fn c2_on_c2() {
        let c2 = GroupWithAction::trivial(Arc::new(Group::cyclic(2)));
        let pairs = all_xmod_gwa_actions(&c2, &c2, 12).unwrap();
        assert_eq!(pairs.len(), 1);
        assert!(pairs[0].verify().is_ok());
    }

    #[test]
    fn violation_is_reported() {
        let c3 = GroupWithAction::trivial(Arc::new(Group::cyclic(3)));
        let c2 = GroupWithAction::trivial(Arc::new(Group::cyclic(2)));
        // r=1 inverts C3 under dot. Under star it acts by the zero map,
        // which is an endomorphism but cannot square to the identity.
        let dot = alloc::vec![0, 1, 2, 0, 2, 1];
        let star = alloc::vec![0, 1, 2, 0, 0, 0];
        let err = check_action_pair(&c3, &c2, &dot, &star).unwrap_err();
        assert_eq!(err.condition, 4);
    }
}
