//! The groups of order at most 8, numbered as in the standard small-groups
//! library, plus a couple of named constructors.

use alloc::string::ToString;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::group::Group;

/// Largest order covered by [`small_group`].
pub const MAX_CATALOG_ORDER: usize = 8;

/// Number of catalog groups of each order.
pub fn groups_of_order(order: usize) -> usize {
    match order {
        4 | 6 => 2,
        8 => 5,
        1..=MAX_CATALOG_ORDER => 1,
        _ => 0,
    }
}

/// Catalog group `(order, index)`; indices start at 1.
///
/// | order | 1  | 2     | 3  | 4  | 5   |
/// |-------|----|-------|----|----|-----|
/// | 4     | C4 | C2xC2 |    |    |     |
/// | 6     | S3 | C6    |    |    |     |
/// | 8     | C8 | C4xC2 | D8 | Q8 | C2^3|
///
/// Every other order up to 8 is cyclic.
pub fn small_group(order: usize, index: usize) -> Result<Group> {
    if index == 0 || index > groups_of_order(order) {
        return Err(Error::UnknownCatalogId { order, index });
    }
    let g = match (order, index) {
        (4, 2) => Group::klein_four(),
        (6, 1) => Group::symmetric_3(),
        (8, 2) => Group::direct_product(&Group::cyclic(4), &Group::cyclic(2)),
        (8, 3) => Group::dihedral_8(),
        (8, 4) => Group::quaternion_8(),
        (8, 5) => {
            let c2 = Group::cyclic(2);
            Group::direct_product(&c2, &Group::direct_product(&c2, &c2))
        }
        (n, _) => Group::cyclic(n),
    };
    Ok(g.with_catalog_id(order, index))
}

/// Every `(order, index)` pair in the catalog, in increasing order.
pub fn catalog_ids() -> Vec<(usize, usize)> {
    (1..=MAX_CATALOG_ORDER)
        .flat_map(|n| (1..=groups_of_order(n)).map(move |i| (n, i)))
        .collect()
}

/// Resolves `"order:index"`, `"A4"` or `"klein4"` (names are
/// case-insensitive).
pub fn group_from_spec(spec: &str) -> Result<Group> {
    let lower = spec.trim().to_ascii_lowercase();
    match lower.as_str() {
        "a4" => return Ok(Group::alternating_4()),
        "klein4" | "kl4" => return small_group(4, 2),
        _ => {}
    }
    let bad = || Error::BadSpec(spec.to_string());
    let (o, i) = lower.split_once(':').ok_or_else(bad)?;
    let order = o.parse::<usize>().map_err(|_| bad())?;
    let index = i.parse::<usize>().map_err(|_| bad())?;
    small_group(order, index)
}

/// Short human name of a catalog group, for reports.
pub fn describe(order: usize, index: usize) -> Option<&'static str> {
    Some(match (order, index) {
        (1, 1) => "trivial",
        (2, 1) => "C2",
        (3, 1) => "C3",
        (4, 1) => "C4",
        (4, 2) => "C2xC2",
        (5, 1) => "C5",
        (6, 1) => "S3",
        (6, 2) => "C6",
        (7, 1) => "C7",
        (8, 1) => "C8",
        (8, 2) => "C4xC2",
        (8, 3) => "D8",
        (8, 4) => "Q8",
        (8, 5) => "C2xC2xC2",
        _ => return None,
    })
}

/// Display form of a catalog id.
pub fn id_string(order: usize, index: usize) -> alloc::string::String {
    let mut s = order.to_string();
    s.push(':');
    s.push_str(&index.to_string());
    s
}
