use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CatalogKind {
    GwaList,
    XmodEnumeration,
    Classification,
    RoundtripReport,
}

impl CatalogKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CatalogKind::GwaList => "gwa_list",
            CatalogKind::XmodEnumeration => "xmod_enumeration",
            CatalogKind::Classification => "classification",
            CatalogKind::RoundtripReport => "roundtrip_report",
        }
    }
}

/// The parameters that produced a catalog. Two runs with equal provenance
/// produce identical files, so it doubles as the catalog's identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub command: String,
    pub params: BTreeMap<String, String>,
    pub tool_version: String,
}

impl Provenance {
    pub fn new<'a>(command: &str, params: impl IntoIterator<Item = (&'a str, String)>) -> Self {
        Provenance {
            command: command.to_string(),
            params: params
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CatalogFile {
    pub schema_version: u32,
    pub kind: CatalogKind,
    pub payload: serde_json::Value,
    pub provenance: Provenance,
}

impl CatalogFile {
    pub fn new<T: Serialize>(
        kind: CatalogKind,
        payload: &T,
        provenance: Provenance,
    ) -> CliResult<Self> {
        let payload = serde_json::to_value(payload)
            .map_err(|e| CliError::Usage(format!("cannot encode payload: {e}")))?;
        Ok(CatalogFile {
            schema_version: SCHEMA_VERSION,
            kind,
            payload,
            provenance,
        })
    }

    pub fn read(path: &Path) -> CliResult<Self> {
        let text = fs::read_to_string(path).map_err(|e| CliError::malformed(path, e))?;
        let file: CatalogFile =
            serde_json::from_str(&text).map_err(|e| CliError::malformed(path, e))?;
        if file.schema_version != SCHEMA_VERSION {
            return Err(CliError::malformed(
                path,
                format!("schema version {} is not supported", file.schema_version),
            ));
        }
        Ok(file)
    }

    /// Decodes the payload after checking the catalog kind.
    pub fn payload_as<T: DeserializeOwned>(
        &self,
        expected: CatalogKind,
        path: &Path,
    ) -> CliResult<T> {
        if self.kind != expected {
            return Err(CliError::malformed(
                path,
                format!(
                    "expected a {} catalog, found {}",
                    expected.as_str(),
                    self.kind.as_str()
                ),
            ));
        }
        serde_json::from_value(self.payload.clone()).map_err(|e| CliError::malformed(path, e))
    }

    pub fn to_pretty_string(&self) -> String {
        let mut s =
            serde_json::to_string_pretty(self).expect("catalog values are always encodable");
        s.push('\n');
        s
    }

    pub fn write(&self, path: &Path) -> CliResult<()> {
        write_atomic(path, self.to_pretty_string().as_bytes())
    }
}

/// Writes to a sibling temporary file and renames it over `path`, so a
/// reader never sees a half-written catalog.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> CliResult<()> {
    let io = |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    };
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(bytes).map_err(io)?;
    #[cfg(unix)]
    {
        use std::os::unix::fs::PermissionsExt;
        tmp.as_file()
            .set_permissions(fs::Permissions::from_mode(0o644))
            .map_err(io)?;
    }
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kind_names_match_serde() {
        for k in [
            CatalogKind::GwaList,
            CatalogKind::XmodEnumeration,
            CatalogKind::Classification,
            CatalogKind::RoundtripReport,
        ] {
            assert_eq!(
                serde_json::to_value(k).unwrap(),
                serde_json::json!(k.as_str())
            );
        }
    }

    #[test]
    fn write_then_read() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.json");
        let prov = Provenance::new("test", [("k", "v".to_string())]);
        let c = CatalogFile::new(CatalogKind::GwaList, &vec![1, 2, 3], prov).unwrap();
        c.write(&path).unwrap();
        let back = CatalogFile::read(&path).unwrap();
        assert_eq!(back, c);
        let v: Vec<u32> = back.payload_as(CatalogKind::GwaList, &path).unwrap();
        assert_eq!(v, [1, 2, 3]);
        assert!(matches!(
            back.payload_as::<Vec<u32>>(CatalogKind::Classification, &path),
            Err(CliError::Malformed { .. })
        ));
    }

    #[test]
    fn garbage_is_malformed() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.json");
        fs::write(&path, "{not json").unwrap();
        let e = CatalogFile::read(&path).unwrap_err();
        assert_eq!(e.exit_code(), 4);
    }
}
