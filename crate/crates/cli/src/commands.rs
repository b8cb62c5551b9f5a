//! One function per CLI verb. Results go to `out`; progress goes to stderr.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use gwakit_core::catalog::group_from_spec;
use gwakit_core::gwa::{
    all_gwa_on_group, gwa_morphism_images, isomorphism_classes, satisfies_condition1,
};
use gwakit_core::ideal::{all_ideals, nilpotency_class};
use gwakit_core::simplicial::roundtrip;
use gwakit_core::xmod::{all_xmod_gwa_actions, all_xmods, is_xmod, is_xmod_c1};
use gwakit_core::{Group, GroupWithAction, XModGwA};
use rayon::prelude::*;

use crate::catalog_file::{write_atomic, CatalogFile, CatalogKind, Provenance};
use crate::error::{CliError, CliResult};
use crate::model::{
    ClassificationRow, GroupJson, GwaJson, LevelJson, RoundTripRow, XModEnumerationJson, XModJson,
};

pub const CSV_HEADER: [&str; 6] = [
    "family",
    "members",
    "representative",
    "ideals",
    "nilpotency_class",
    "condition1",
];

const TRIVIAL_NOTE: &str = "group of order 1: nilpotency class reported as 1 by convention";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

/// Settings shared by every verb.
#[derive(Clone, Copy, Debug)]
pub struct Settings {
    pub max_order: usize,
    pub jobs: Option<usize>,
}

impl Settings {
    /// Runs `f` on a pool of `jobs` threads, or on the global pool.
    fn install<T: Send>(&self, f: impl FnOnce() -> T + Send) -> CliResult<T> {
        match self.jobs {
            None => Ok(f()),
            Some(0) => Err(CliError::Usage("--jobs must be at least 1".into())),
            Some(n) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build()
                    .map_err(|e| {
                        CliError::Usage(format!("cannot start {n} worker threads: {e}"))
                    })?;
                Ok(pool.install(f))
            }
        }
    }

    fn check_order(&self, order: usize) -> CliResult<()> {
        if order > self.max_order {
            return Err(CliError::Capacity(format!(
                "order {order} exceeds the bound {} (raise it with --max-order or GWAKIT_MAX_ORDER)",
                self.max_order
            )));
        }
        Ok(())
    }
}

fn io_err(path: &str) -> impl Fn(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: PathBuf::from(path),
        source,
    }
}

fn emit(out: &mut dyn Write, line: impl std::fmt::Display) -> CliResult<()> {
    writeln!(out, "{line}").map_err(io_err("<stdout>"))
}

/// Where the GwAs a verb works on come from.
#[derive(Clone, Debug)]
pub enum GwaSource {
    Spec(String),
    Catalog(PathBuf),
}

impl GwaSource {
    fn load(&self, settings: &Settings) -> CliResult<Vec<GroupWithAction>> {
        match self {
            GwaSource::Spec(spec) => {
                let g = group_from_spec(spec)?;
                settings.check_order(g.order())?;
                Ok(all_gwa_on_group(&g, settings.max_order)?)
            }
            GwaSource::Catalog(path) => load_gwa_list(path, settings),
        }
    }
}

/// Decodes a `gwa_list` catalog. Entries over the same group table share
/// one decoded group.
pub fn load_gwa_list(path: &Path, settings: &Settings) -> CliResult<Vec<GroupWithAction>> {
    let file = CatalogFile::read(path)?;
    let items: Vec<GwaJson> = file.payload_as(CatalogKind::GwaList, path)?;
    let mut last: Option<(GroupJson, Arc<Group>)> = None;
    let mut out = Vec::with_capacity(items.len());
    for (i, item) in items.iter().enumerate() {
        settings.check_order(item.group.order)?;
        let g = match &last {
            Some((j, g)) if *j == item.group => g.clone(),
            _ => {
                let g = Arc::new(
                    item.group
                        .to_group()
                        .map_err(|e| CliError::malformed(path, format!("entry {i}: {e}")))?,
                );
                last = Some((item.group.clone(), g.clone()));
                g
            }
        };
        out.push(
            item.to_gwa_over(g)
                .map_err(|e| CliError::malformed(path, format!("entry {i}: {e}")))?,
        );
    }
    Ok(out)
}

pub fn gwa_enumerate(
    spec: &str,
    out_path: Option<&Path>,
    settings: &Settings,
    out: &mut dyn Write,
) -> CliResult<CatalogFile> {
    let list = GwaSource::Spec(spec.to_string()).load(settings)?;
    let payload: Vec<GwaJson> = list.iter().map(GwaJson::from_gwa).collect();
    let prov = Provenance::new("gwa enumerate", [("group", spec.to_string())]);
    let file = CatalogFile::new(CatalogKind::GwaList, &payload, prov)?;
    if let Some(p) = out_path {
        file.write(p)?;
    }
    emit(out, list.len())?;
    Ok(file)
}

/// One row per isomorphism class, ordered by the class's first member.
pub fn classification_rows(
    list: &[GroupWithAction],
    settings: &Settings,
) -> CliResult<Vec<ClassificationRow>> {
    let classes = isomorphism_classes(list);
    eprintln!(
        "classifying {} structures into {} classes",
        list.len(),
        classes.len()
    );
    settings.install(|| {
        classes
            .par_iter()
            .enumerate()
            .map(|(k, members)| {
                let rep = &list[members[0]];
                let trivial = rep.order() == 1;
                ClassificationRow {
                    family: k + 1,
                    members: members.len(),
                    representative_index: members[0],
                    ideals: all_ideals(rep).len(),
                    nilpotency_class: if trivial { 1 } else { nilpotency_class(rep) },
                    condition1: satisfies_condition1(rep),
                    note: trivial.then(|| TRIVIAL_NOTE.to_string()),
                }
            })
            .collect()
    })
}

pub fn rows_to_csv(rows: &[ClassificationRow]) -> CliResult<String> {
    let csv_err = |e: csv::Error| CliError::Usage(format!("csv encoding failed: {e}"));
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).map_err(csv_err)?;
    for r in rows {
        w.write_record([
            r.family.to_string(),
            r.members.to_string(),
            r.representative_index.to_string(),
            r.ideals.to_string(),
            r.nilpotency_class.to_string(),
            r.condition1.to_string(),
        ])
        .map_err(csv_err)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Usage(format!("csv encoding failed: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn classify(
    in_path: &Path,
    out_path: Option<&Path>,
    format: Format,
    settings: &Settings,
    out: &mut dyn Write,
) -> CliResult<CatalogFile> {
    let list = load_gwa_list(in_path, settings)?;
    let rows = classification_rows(&list, settings)?;
    let prov = Provenance::new("gwa classify", [("in", in_path.display().to_string())]);
    let file = CatalogFile::new(CatalogKind::Classification, &rows, prov)?;
    let text = match format {
        Format::Csv => rows_to_csv(&rows)?,
        Format::Json => file.to_pretty_string(),
    };
    match out_path {
        Some(p) => write_atomic(p, text.as_bytes())?,
        None => out.write_all(text.as_bytes()).map_err(io_err("<stdout>"))?,
    }
    Ok(file)
}

fn pick<'a>(
    list: &'a [GroupWithAction],
    index: usize,
    what: &str,
) -> CliResult<&'a GroupWithAction> {
    list.get(index).ok_or_else(|| {
        CliError::Usage(format!(
            "{what} index {index} is out of range (0..{})",
            list.len()
        ))
    })
}

fn format_elements(g: &Group, elements: impl Iterator<Item = usize>) -> String {
    let names: Vec<String> = elements.map(|e| g.name(e)).collect();
    format!("{{{}}}", names.join(", "))
}

/// Lists the ideals of one structure, or the ideal count of each.
pub fn gwa_ideals(
    source: &GwaSource,
    index: Option<usize>,
    settings: &Settings,
    out: &mut dyn Write,
) -> CliResult<()> {
    let list = source.load(settings)?;
    match index {
        Some(i) => {
            let g = pick(&list, i, "structure")?;
            let ideals = all_ideals(g);
            for ideal in &ideals {
                emit(out, format_elements(g.group(), ideal.elements.iter()))?;
            }
            emit(out, format!("ideals={}", ideals.len()))
        }
        None => {
            let counts: Vec<usize> =
                settings.install(|| list.par_iter().map(|g| all_ideals(g).len()).collect())?;
            for (i, c) in counts.iter().enumerate() {
                emit(out, format!("{i}: {c}"))?;
            }
            Ok(())
        }
    }
}

/// Prints every morphism between two structures of one list, as the image
/// of each element in order.
pub fn gwa_morphisms(
    source: &GwaSource,
    from: usize,
    to: usize,
    settings: &Settings,
    out: &mut dyn Write,
) -> CliResult<()> {
    let list = source.load(settings)?;
    let (a, b) = (pick(&list, from, "--from")?, pick(&list, to, "--to")?);
    let images = gwa_morphism_images(a, b);
    for img in &images {
        let names: Vec<String> = img.iter().map(|&e| b.group().name(e)).collect();
        emit(out, format!("[{}]", names.join(", ")))?;
    }
    emit(out, format!("morphisms={}", images.len()))
}

/// A `--source`/`--range` style selection: a group and optionally one of
/// its structures.
#[derive(Clone, Debug)]
pub struct Selection {
    pub spec: String,
    pub index: Option<usize>,
}

impl Selection {
    fn load(&self, settings: &Settings) -> CliResult<Vec<GroupWithAction>> {
        let all = GwaSource::Spec(self.spec.clone()).load(settings)?;
        match self.index {
            None => Ok(all),
            Some(i) => Ok(vec![pick(&all, i, &self.spec)?.clone()]),
        }
    }

    fn describe(&self) -> String {
        match self.index {
            None => self.spec.clone(),
            Some(i) => format!("{}#{i}", self.spec),
        }
    }
}

fn pairs<'a>(
    s: &'a [GroupWithAction],
    r: &'a [GroupWithAction],
) -> Vec<(&'a GroupWithAction, &'a GroupWithAction)> {
    s.iter()
        .flat_map(|a| r.iter().map(move |b| (a, b)))
        .collect()
}

pub fn xmod_actions(
    source: &Selection,
    range: &Selection,
    settings: &Settings,
    out: &mut dyn Write,
) -> CliResult<()> {
    let (s, r) = (source.load(settings)?, range.load(settings)?);
    let work = pairs(&s, &r);
    let counts: Vec<CliResult<usize>> = settings.install(|| {
        work.par_iter()
            .map(|(a, b)| Ok(all_xmod_gwa_actions(a, b, settings.max_order)?.len()))
            .collect()
    })?;
    let mut total = 0;
    for c in counts {
        total += c?;
    }
    emit(out, format!("actions={total}"))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct XModFilters {
    pub c1: bool,
}

pub fn xmod_enumerate(
    source: &Selection,
    range: &Selection,
    filters: XModFilters,
    out_path: Option<&Path>,
    settings: &Settings,
    out: &mut dyn Write,
) -> CliResult<CatalogFile> {
    let (s, r) = (source.load(settings)?, range.load(settings)?);
    let work = pairs(&s, &r);
    eprintln!("scanning {} source/range pairs", work.len());
    let parts: Vec<CliResult<Vec<XModGwA>>> = settings.install(|| {
        work.par_iter()
            .map(|(a, b)| Ok(all_xmods(a, b, settings.max_order)?.pre))
            .collect()
    })?;
    let mut items = Vec::new();
    for p in parts {
        items.extend(p?);
    }
    let full: Vec<&XModGwA> = items.iter().filter(|x| is_xmod(x).is_ok()).collect();
    let c1_count = filters
        .c1
        .then(|| full.iter().filter(|x| is_xmod_c1(x)).count());
    let payload = XModEnumerationJson {
        pre_count: items.len(),
        full_count: full.len(),
        c1_count,
        items: items.iter().map(XModJson::from_xmod).collect(),
    };
    let mut params = vec![("source", source.describe()), ("range", range.describe())];
    if filters.c1 {
        params.push(("filter", "c1".to_string()));
    }
    let file = CatalogFile::new(
        CatalogKind::XmodEnumeration,
        &payload,
        Provenance::new("xmod enumerate", params),
    )?;
    if let Some(p) = out_path {
        file.write(p)?;
    }
    emit(
        out,
        format!("pre={} full={}", payload.pre_count, payload.full_count),
    )?;
    if let Some(c) = c1_count {
        emit(out, format!("c1={c}"))?;
    }
    Ok(file)
}

fn load_enumeration(path: &Path, settings: &Settings) -> CliResult<XModEnumerationJson> {
    let file = CatalogFile::read(path)?;
    let e: XModEnumerationJson = file.payload_as(CatalogKind::XmodEnumeration, path)?;
    for item in &e.items {
        settings.check_order(item.source.group.order)?;
        settings.check_order(item.range.group.order)?;
    }
    Ok(e)
}

fn decode_items(
    e: &XModEnumerationJson,
    path: &Path,
    settings: &Settings,
) -> CliResult<Vec<XModGwA>> {
    let decoded: Vec<Result<XModGwA, String>> =
        settings.install(|| e.items.par_iter().map(XModJson::to_xmod).collect())?;
    decoded
        .into_iter()
        .enumerate()
        .map(|(i, x)| x.map_err(|err| CliError::malformed(path, format!("item {i}: {err}"))))
        .collect()
}

/// Re-derives the level of every stored crossed module and compares it with
/// the recorded one and with the stored counts.
pub fn xmod_check(in_path: &Path, settings: &Settings, out: &mut dyn Write) -> CliResult<()> {
    let e = load_enumeration(in_path, settings)?;
    let xs = decode_items(&e, in_path, settings)?;
    let mut failures = Vec::new();
    let mut full = 0;
    for (i, (x, item)) in xs.iter().zip(&e.items).enumerate() {
        let level = match is_xmod(x) {
            Ok(()) => LevelJson::Full,
            Err(f) if item.level == LevelJson::Full => {
                failures.push(format!("item {i}: recorded full but {f}"));
                LevelJson::Pre
            }
            Err(_) => LevelJson::Pre,
        };
        if level == LevelJson::Full {
            full += 1;
            if item.level != LevelJson::Full {
                failures.push(format!("item {i}: recorded pre but passes CM1-CM4"));
            }
        }
    }
    if e.pre_count != xs.len() || e.full_count != full {
        failures.push(format!(
            "counts recorded as pre={} full={}, found pre={} full={full}",
            e.pre_count,
            e.full_count,
            xs.len()
        ));
    }
    emit(
        out,
        format!(
            "checked={} full={full} failures={}",
            xs.len(),
            failures.len()
        ),
    )?;
    if failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::Verification(failures.join("\n")))
    }
}

/// Round-trips every full crossed module of an enumeration catalog. The
/// report is written even when some instances fail.
pub fn simplicial_roundtrip(
    in_path: &Path,
    out_path: Option<&Path>,
    settings: &Settings,
    out: &mut dyn Write,
) -> CliResult<CatalogFile> {
    let e = load_enumeration(in_path, settings)?;
    let xs = decode_items(&e, in_path, settings)?;
    let targets: Vec<(usize, &XModGwA)> = xs
        .iter()
        .enumerate()
        .filter(|(_, x)| is_xmod(x).is_ok())
        .collect();
    eprintln!("round-tripping {} crossed modules", targets.len());
    let rows: Vec<RoundTripRow> = settings.install(|| {
        targets
            .par_iter()
            .map(|&(i, x)| {
                let r = roundtrip(x);
                RoundTripRow {
                    xmod_id: i,
                    roundtrip_ok: r.roundtrip_ok,
                    bracket_zero: r.bracket_zero,
                    simplicial_ok: r.simplicial_ok,
                    moore_length: r.moore_length,
                    error: r.error,
                }
            })
            .collect()
    })?;
    let prov = Provenance::new(
        "simplicial roundtrip",
        [("in", in_path.display().to_string())],
    );
    let file = CatalogFile::new(CatalogKind::RoundtripReport, &rows, prov)?;
    if let Some(p) = out_path {
        file.write(p)?;
    }
    let failed: Vec<&RoundTripRow> = rows
        .iter()
        .filter(|r| !(r.roundtrip_ok && r.bracket_zero))
        .collect();
    emit(
        out,
        format!(
            "checked={} passed={} failed={}",
            rows.len(),
            rows.len() - failed.len(),
            failed.len()
        ),
    )?;
    if failed.is_empty() {
        return Ok(file);
    }
    let lines: Vec<String> = failed
        .iter()
        .map(|r| {
            format!(
                "xmod {}: {}",
                r.xmod_id,
                r.error.as_deref().unwrap_or("kernel bracket is not zero")
            )
        })
        .collect();
    Err(CliError::Verification(format!(
        "{} round trips failed\n{}",
        failed.len(),
        lines.join("\n")
    )))
}
