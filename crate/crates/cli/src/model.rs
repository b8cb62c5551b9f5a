//! JSON shapes for everything the driver reads and writes.

use std::sync::Arc;

use gwakit_core::xmod::pre_xmod_obj;
use gwakit_core::{DerivedActionPair, Group, GroupWithAction, GwAMorphism, XModGwA, XModLevel};
use serde::{Deserialize, Serialize};

use gwakit_core::Result as CoreResult;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    pub catalog_id: Option<[usize; 2]>,
    pub names: Option<Vec<String>>,
}

impl GroupJson {
    pub fn from_group(g: &Group) -> Self {
        GroupJson {
            order: g.order(),
            table: g.table_rows(),
            catalog_id: g.catalog_id().map(|(o, i)| [o, i]),
            names: g.names().map(<[String]>::to_vec),
        }
    }

    pub fn to_group(&self) -> Result<Group, String> {
        if self.table.len() != self.order {
            return Err(format!(
                "group table has {} rows, order is {}",
                self.table.len(),
                self.order
            ));
        }
        let mut g = Group::from_table(self.table.clone()).map_err(|e| e.to_string())?;
        if let Some(names) = &self.names {
            if names.len() != self.order {
                return Err(format!(
                    "{} names for a group of order {}",
                    names.len(),
                    self.order
                ));
            }
            g = g.with_names(names.clone());
        }
        if let Some([o, i]) = self.catalog_id {
            g = g.with_catalog_id(o, i);
        }
        Ok(g)
    }
}

/// A group with action. Row `h` of `act` lists `g^h` for every `g`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GwaJson {
    pub group: GroupJson,
    pub act: Vec<Vec<usize>>,
}

impl GwaJson {
    pub fn from_gwa(g: &GroupWithAction) -> Self {
        GwaJson {
            group: GroupJson::from_group(g.group()),
            act: g.act_rows(),
        }
    }

    pub fn to_gwa(&self) -> Result<GroupWithAction, String> {
        let g = Arc::new(self.group.to_group()?);
        self.to_gwa_over(g)
    }

    /// Decodes the action over an already decoded group, so that several
    /// structures can share one group value.
    pub fn to_gwa_over(&self, g: Arc<Group>) -> Result<GroupWithAction, String> {
        GroupWithAction::from_table(g, &self.act).map_err(|e| e.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LevelJson {
    Pre,
    Full,
}

impl From<XModLevel> for LevelJson {
    fn from(l: XModLevel) -> Self {
        match l {
            XModLevel::Full => LevelJson::Full,
            _ => LevelJson::Pre,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct XModJson {
    pub source: GwaJson,
    pub range: GwaJson,
    pub boundary: Vec<usize>,
    pub dot: Vec<Vec<usize>>,
    pub star: Vec<Vec<usize>>,
    pub level: LevelJson,
}

impl XModJson {
    pub fn from_xmod(x: &XModGwA) -> Self {
        XModJson {
            source: GwaJson::from_gwa(x.source()),
            range: GwaJson::from_gwa(x.range()),
            boundary: x.boundary.image().to_vec(),
            dot: x.action.dot_rows(),
            star: x.action.star_rows(),
            level: x.level.into(),
        }
    }

    /// Rebuilds the crossed module. The level is recomputed from the tables;
    /// callers compare it with `self.level` when they care.
    pub fn to_xmod(&self) -> Result<XModGwA, String> {
        let swa = self.source.to_gwa()?;
        let rwa = self.range.to_gwa()?;
        let build = || -> CoreResult<XModGwA> {
            let boundary = GwAMorphism::new(swa.clone(), rwa.clone(), self.boundary.clone())?;
            let action =
                DerivedActionPair::from_tables(swa.clone(), rwa.clone(), &self.dot, &self.star)?;
            pre_xmod_obj(boundary, action)
        };
        build().map_err(|e| e.to_string())
    }
}

/// Enumeration payload: counts plus every pre-crossed module found, each
/// tagged with its level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct XModEnumerationJson {
    pub pre_count: usize,
    pub full_count: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c1_count: Option<usize>,
    pub items: Vec<XModJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationRow {
    pub family: usize,
    pub members: usize,
    pub representative_index: usize,
    pub ideals: usize,
    pub nilpotency_class: usize,
    pub condition1: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundTripRow {
    pub xmod_id: usize,
    pub roundtrip_ok: bool,
    pub bracket_zero: bool,
    pub simplicial_ok: bool,
    pub moore_length: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use gwakit_core::catalog::small_group;
    use gwakit_core::gwa::all_gwa_on_group;
    use gwakit_core::xmod::all_xmods;

    #[test]
    fn group_round_trips_through_json() {
        let g = small_group(8, 4).unwrap();
        let j = GroupJson::from_group(&g);
        let text = serde_json::to_string(&j).unwrap();
        let back: GroupJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_group().unwrap(), g);
    }

    #[test]
    fn bad_table_is_rejected() {
        let j = GroupJson {
            order: 2,
            table: vec![vec![0, 1], vec![1, 1]],
            catalog_id: None,
            names: None,
        };
        assert!(j.to_group().is_err());
    }

    #[test]
    fn xmod_round_trips_through_json() {
        let s = all_gwa_on_group(&small_group(2, 1).unwrap(), 12).unwrap();
        let r = all_gwa_on_group(&small_group(4, 2).unwrap(), 12).unwrap();
        let e = all_xmods(&s[0], &r[3], 12).unwrap();
        for x in &e.pre {
            let j = XModJson::from_xmod(x);
            let back = j.to_xmod().unwrap();
            assert_eq!(LevelJson::from(back.level), j.level);
            assert_eq!(XModJson::from_xmod(&back), j);
        }
    }
}
