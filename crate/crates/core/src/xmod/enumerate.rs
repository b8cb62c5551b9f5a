use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{action_pair_tables, cm_witness, DerivedActionPair, XModGwA, XModLevel};
use crate::catalog::small_group;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::gwa::{all_gwa_on_group, gwa_morphism_images, GroupWithAction, GwAMorphism};
use crate::hom::GroupHom;

/// Pre-crossed modules (a superset of the full ones) and full crossed
/// modules, in enumeration order.
#[derive(Clone, Debug, Default)]
pub struct XModEnumeration {
    pub pre: Vec<XModGwA>,
    pub full: Vec<XModGwA>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct XModCounts {
    pub pre: usize,
    pub full: usize,
}

impl core::ops::AddAssign for XModCounts {
    fn add_assign(&mut self, o: Self) {
        self.pre += o.pre;
        self.full += o.full;
    }
}

fn check_bound(g: &GroupWithAction, max_order: usize) -> Result<()> {
    if g.order() > max_order {
        return Err(Error::Capacity {
            order: g.order(),
            max: max_order,
        });
    }
    Ok(())
}

/// Visits every (boundary, action pair) combination that passes CM1 and
/// CM3. CM1/CM2 only involve the dot table and CM3/CM4 only the star
/// table, so each is evaluated once per distinct table and boundary.
fn scan<F>(swa: &GroupWithAction, rwa: &GroupWithAction, mut visit: F)
where
    F: FnMut(&[usize], &[usize], &[usize], XModLevel),
{
    let pairs = action_pair_tables(swa, rwa);
    if pairs.is_empty() {
        return;
    }
    let mut dots: BTreeMap<&[usize], usize> = BTreeMap::new();
    let mut stars: BTreeMap<&[usize], usize> = BTreeMap::new();
    let keyed: Vec<(usize, usize)> = pairs
        .iter()
        .map(|(d, s)| {
            let nd = dots.len();
            let ns = stars.len();
            (*dots.entry(d).or_insert(nd), *stars.entry(s).or_insert(ns))
        })
        .collect();
    let mut dot_list = alloc::vec![&[][..]; dots.len()];
    for (t, i) in &dots {
        dot_list[*i] = t;
    }
    let mut star_list = alloc::vec![&[][..]; stars.len()];
    for (t, i) in &stars {
        star_list[*i] = t;
    }
    for b in gwa_morphism_images(swa, rwa) {
        // 0 = fails the pre condition, 1 = pre only, 2 = full
        let grade = |pre: u8, full: u8, t: &[usize]| -> u8 {
            if cm_witness(pre, swa, rwa, &b, t).is_some() {
                0
            } else if cm_witness(full, swa, rwa, &b, t).is_some() {
                1
            } else {
                2
            }
        };
        let dot_grade: Vec<u8> = dot_list.iter().map(|t| grade(1, 2, t)).collect();
        let star_grade: Vec<u8> = star_list.iter().map(|t| grade(3, 4, t)).collect();
        for ((d, s), &(di, si)) in pairs.iter().zip(&keyed) {
            let level = match dot_grade[di].min(star_grade[si]) {
                0 => continue,
                1 => XModLevel::Pre,
                _ => XModLevel::Full,
            };
            visit(&b, d, s, level);
        }
    }
}

/// Counts of pre-crossed and crossed modules `swa -> rwa`.
pub fn count_xmods(
    swa: &GroupWithAction,
    rwa: &GroupWithAction,
    max_order: usize,
) -> Result<XModCounts> {
    check_bound(swa, max_order)?;
    check_bound(rwa, max_order)?;
    let mut c = XModCounts::default();
    scan(swa, rwa, |_, _, _, level| {
        c.pre += 1;
        if level == XModLevel::Full {
            c.full += 1;
        }
    });
    Ok(c)
}

/// Every pre-crossed and crossed module with the given source and range,
/// ordered by boundary and then by action pair.
pub fn all_xmods(
    swa: &GroupWithAction,
    rwa: &GroupWithAction,
    max_order: usize,
) -> Result<XModEnumeration> {
    check_bound(swa, max_order)?;
    check_bound(rwa, max_order)?;
    let mut out = XModEnumeration::default();
    scan(swa, rwa, |b, d, s, level| {
        let boundary = GwAMorphism {
            src: swa.clone(),
            dst: rwa.clone(),
            hom: GroupHom {
                src: swa.group_arc().clone(),
                dst: rwa.group_arc().clone(),
                image: b.to_vec(),
            },
        };
        let action =
            DerivedActionPair::new_unchecked(swa.clone(), rwa.clone(), d.to_vec(), s.to_vec());
        let x = XModGwA {
            boundary,
            action,
            level,
        };
        if level == XModLevel::Full {
            out.full.push(x.clone());
        }
        out.pre.push(x);
    });
    Ok(out)
}

/// Union of [`all_xmods`] over every GwA structure on
/// `small_group(x, y)` as source and on `small_group(m, n)` as range.
pub fn all_xmods_by_id(
    x: usize,
    y: usize,
    m: usize,
    n: usize,
    max_order: usize,
) -> Result<XModEnumeration> {
    let (s, r) = (small_group(x, y)?, small_group(m, n)?);
    all_xmods_over_groups(&s, &r, max_order)
}

pub(crate) fn all_xmods_over_groups(
    s: &Group,
    r: &Group,
    max_order: usize,
) -> Result<XModEnumeration> {
    let sources = all_gwa_on_group(s, max_order)?;
    let ranges = all_gwa_on_group(r, max_order)?;
    let mut out = XModEnumeration::default();
    for swa in &sources {
        for rwa in &ranges {
            let e = all_xmods(swa, rwa, max_order)?;
            out.pre.extend(e.pre);
            out.full.extend(e.full);
        }
    }
    Ok(out)
}
