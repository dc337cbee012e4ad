//! Event-log ingestion and phase duration extraction.
//!
//! A case (workflow) is the set of events sharing a `case_id`. Three phase
//! durations are derived from four anchor events:
//!
//! | phase       | from                  | to                    |
//! |-------------|-----------------------|-----------------------|
//! | induction   | `anesthesia_start`    | `anesthesia_complete` |
//! | preparation | `anesthesia_complete` | `incision`            |
//! | procedure   | `incision`            | `suture`              |
//!
//! All other event labels are carried through as [`EventKind::Other`].

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::io::{BufRead, BufReader, Read, Write};
use std::str::FromStr;

use chrono::{DateTime, NaiveDateTime, Timelike, Utc};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub const EVENTS_HEADER: [&str; 3] = ["case_id", "event_type", "timestamp"];

pub const CASES_HEADER: [&str; 9] = [
    "case_id",
    "department",
    "age",
    "sex",
    "procedure_text",
    "anesthesia_text",
    "positioning_text",
    "planned_induction_min",
    "planned_procedure_min",
];

const MAX_AGE: u32 = 130;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EventKind {
    AnesthesiaStart,
    AnesthesiaComplete,
    Incision,
    Suture,
    Other(String),
}

impl EventKind {
    pub fn from_label(label: &str) -> Self {
        match label {
            "anesthesia_start" => EventKind::AnesthesiaStart,
            "anesthesia_complete" => EventKind::AnesthesiaComplete,
            "incision" => EventKind::Incision,
            "suture" => EventKind::Suture,
            other => EventKind::Other(other.to_string()),
        }
    }

    pub fn label(&self) -> &str {
        match self {
            EventKind::AnesthesiaStart => "anesthesia_start",
            EventKind::AnesthesiaComplete => "anesthesia_complete",
            EventKind::Incision => "incision",
            EventKind::Suture => "suture",
            EventKind::Other(label) => label,
        }
    }

    pub fn is_anchor(&self) -> bool {
        !matches!(self, EventKind::Other(_))
    }
}

impl fmt::Display for EventKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Event {
    pub case_id: String,
    pub kind: EventKind,
    pub timestamp: DateTime<Utc>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sex {
    F,
    M,
    Unknown,
}

impl Sex {
    pub fn parse(raw: &str) -> Self {
        match raw.trim().to_ascii_lowercase().as_str() {
            "f" | "w" | "female" => Sex::F,
            "m" | "male" => Sex::M,
            _ => Sex::Unknown,
        }
    }

    pub fn code(self) -> &'static str {
        match self {
            Sex::F => "f",
            Sex::M => "m",
            Sex::Unknown => "unknown",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseAttributes {
    pub case_id: String,
    pub department: String,
    pub age: Option<u32>,
    pub sex: Sex,
    pub procedure_text: String,
    pub anesthesia_text: String,
    pub positioning_text: Option<String>,
    pub planned_induction_min: Option<f64>,
    pub planned_procedure_min: Option<f64>,
}

impl CaseAttributes {
    /// Attributes for a case that appears in the event log only.
    pub fn unknown(case_id: impl Into<String>) -> Self {
        Self {
            case_id: case_id.into(),
            department: "unknown".to_string(),
            age: None,
            sex: Sex::Unknown,
            procedure_text: String::new(),
            anesthesia_text: String::new(),
            positioning_text: None,
            planned_induction_min: None,
            planned_procedure_min: None,
        }
    }

    /// Manual plan for a phase. Preparation is never planned separately.
    pub fn planned(&self, phase: Phase) -> Option<f64> {
        match phase {
            Phase::Induction => self.planned_induction_min,
            Phase::Procedure => self.planned_procedure_min,
            Phase::Preparation => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Phase {
    Induction,
    Preparation,
    Procedure,
}

impl Phase {
    pub const ALL: [Phase; 3] = [Phase::Induction, Phase::Preparation, Phase::Procedure];

    pub fn name(self) -> &'static str {
        match self {
            Phase::Induction => "induction",
            Phase::Preparation => "preparation",
            Phase::Procedure => "procedure",
        }
    }

    /// The anchor events whose difference defines the phase.
    pub fn anchors(self) -> (EventKind, EventKind) {
        match self {
            Phase::Induction => (EventKind::AnesthesiaStart, EventKind::AnesthesiaComplete),
            Phase::Preparation => (EventKind::AnesthesiaComplete, EventKind::Incision),
            Phase::Procedure => (EventKind::Incision, EventKind::Suture),
        }
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Phase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "induction" => Ok(Phase::Induction),
            "preparation" => Ok(Phase::Preparation),
            "procedure" => Ok(Phase::Procedure),
            other => Err(Error::InvalidInput(format!("unknown phase `{other}`"))),
        }
    }
}

/// Phase durations in fractional minutes.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct PhaseDurations {
    pub induction_min: Option<f64>,
    pub preparation_min: Option<f64>,
    pub procedure_min: Option<f64>,
}

impl PhaseDurations {
    pub fn get(&self, phase: Phase) -> Option<f64> {
        match phase {
            Phase::Induction => self.induction_min,
            Phase::Preparation => self.preparation_min,
            Phase::Procedure => self.procedure_min,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Case {
    pub attributes: CaseAttributes,
    pub events: Vec<Event>,
    pub durations: PhaseDurations,
    /// Set when the case carries a duplicated anchor event; such cases have
    /// no durations.
    pub invalid: bool,
}

impl Case {
    pub fn id(&self) -> &str {
        &self.attributes.case_id
    }

    pub fn anchor_time(&self, kind: &EventKind) -> Option<DateTime<Utc>> {
        self.events
            .iter()
            .find(|e| &e.kind == kind)
            .map(|e| e.timestamp)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    Csv,
    Jsonl,
}

impl FromStr for InputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(InputFormat::Csv),
            "jsonl" | "json" => Ok(InputFormat::Jsonl),
            other => Err(Error::InvalidInput(format!("unknown input format `{other}`"))),
        }
    }
}

/// Strict parsing aborts on the first bad record; lenient parsing collects
/// record errors and skips the offending rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseMode {
    Strict,
    Lenient,
}

#[derive(Debug, Default)]
pub struct Parsed<T> {
    pub records: Vec<T>,
    pub errors: Vec<Error>,
}

pub fn parse_timestamp(raw: &str) -> Option<DateTime<Utc>> {
    let raw = raw.trim();
    let parsed = DateTime::parse_from_rfc3339(raw)
        .map(|t| t.with_timezone(&Utc))
        .ok()
        .or_else(|| {
            ["%Y-%m-%dT%H:%M:%S", "%Y-%m-%d %H:%M:%S"]
                .iter()
                .find_map(|fmt| NaiveDateTime::parse_from_str(raw, fmt).ok())
                .map(|t| t.and_utc())
        })?;
    parsed.with_nanosecond(0)
}

pub fn parse_events<R: Read>(source: R, format: InputFormat, mode: ParseMode) -> Result<Parsed<Event>> {
    parse_records(source, format, mode, &EVENTS_HEADER, event_from_fields)
}

pub fn parse_case_attributes<R: Read>(
    source: R,
    format: InputFormat,
    mode: ParseMode,
) -> Result<Parsed<CaseAttributes>> {
    parse_records(source, format, mode, &CASES_HEADER, attributes_from_fields)
}

fn parse_records<R, T, F>(
    source: R,
    format: InputFormat,
    mode: ParseMode,
    header: &[&str],
    build: F,
) -> Result<Parsed<T>>
where
    R: Read,
    F: Fn(&[&str], u64) -> Result<T>,
{
    let mut out = Parsed {
        records: Vec::new(),
        errors: Vec::new(),
    };
    let mut push = |res: Result<T>| -> Result<()> {
        match res {
            Ok(rec) => out.records.push(rec),
            Err(err) if mode == ParseMode::Lenient && matches!(err, Error::Record { .. }) => {
                out.errors.push(err)
            }
            Err(err) => return Err(err),
        }
        Ok(())
    };

    match format {
        InputFormat::Csv => {
            let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(source);
            let found: Vec<String> = reader.headers()?.iter().map(|h| h.trim().to_string()).collect();
            if found != header {
                return Err(Error::InvalidInput(format!(
                    "expected header `{}`, found `{}`",
                    header.join(","),
                    found.join(",")
                )));
            }
            for row in reader.records() {
                let row = row?;
                let line = row.position().map_or(0, |p| p.line());
                let fields: Vec<&str> = row.iter().collect();
                push(build(&fields, line))?;
            }
        }
        InputFormat::Jsonl => {
            for (idx, line) in BufReader::new(source).lines().enumerate() {
                let line_no = idx as u64 + 1;
                let line = line.map_err(|e| Error::io("<jsonl stream>", e))?;
                if line.trim().is_empty() {
                    continue;
                }
                let res = serde_json::from_str::<serde_json::Map<String, serde_json::Value>>(&line)
                    .map_err(|e| Error::Record {
                        line: line_no,
                        field: "json",
                        message: e.to_string(),
                    })
                    .and_then(|obj| {
                        let values: Vec<String> = header
                            .iter()
                            .map(|name| match obj.get(*name) {
                                Some(serde_json::Value::String(s)) => s.clone(),
                                Some(serde_json::Value::Null) | None => String::new(),
                                Some(other) => other.to_string(),
                            })
                            .collect();
                        let fields: Vec<&str> = values.iter().map(String::as_str).collect();
                        build(&fields, line_no)
                    });
                push(res)?;
            }
        }
    }
    Ok(out)
}

fn event_from_fields(fields: &[&str], line: u64) -> Result<Event> {
    let [case_id, kind, ts] = fields else {
        return Err(Error::Record {
            line,
            field: "record",
            message: format!("expected 3 fields, found {}", fields.len()),
        });
    };
    let case_id = case_id.trim();
    if case_id.is_empty() {
        return Err(Error::Record {
            line,
            field: "case_id",
            message: "missing".into(),
        });
    }
    let timestamp = parse_timestamp(ts).ok_or_else(|| Error::Record {
        line,
        field: "timestamp",
        message: format!("cannot parse `{ts}` as ISO-8601"),
    })?;
    Ok(Event {
        case_id: case_id.to_string(),
        kind: EventKind::from_label(kind.trim()),
        timestamp,
    })
}

fn optional_minutes(raw: &str, line: u64, field: &'static str) -> Result<Option<f64>> {
    let raw = raw.trim();
    if raw.is_empty() {
        return Ok(None);
    }
    match raw.parse::<f64>() {
        Ok(v) if v.is_finite() && v >= 0.0 => Ok(Some(v)),
        _ => Err(Error::Record {
            line,
            field,
            message: format!("`{raw}` is not a non-negative number of minutes"),
        }),
    }
}

fn attributes_from_fields(fields: &[&str], line: u64) -> Result<CaseAttributes> {
    if fields.len() != CASES_HEADER.len() {
        return Err(Error::Record {
            line,
            field: "record",
            message: format!("expected {} fields, found {}", CASES_HEADER.len(), fields.len()),
        });
    }
    let case_id = fields[0].trim();
    if case_id.is_empty() {
        return Err(Error::Record {
            line,
            field: "case_id",
            message: "missing".into(),
        });
    }
    let age = match fields[2].trim() {
        "" => None,
        raw => match raw.parse::<u32>() {
            Ok(a) if a <= MAX_AGE => Some(a),
            _ => {
                return Err(Error::Record {
                    line,
                    field: "age",
                    message: format!("`{raw}` is not an age in 0..={MAX_AGE}"),
                })
            }
        },
    };
    let department = match fields[1].trim() {
        "" => "unknown".to_string(),
        d => d.to_string(),
    };
    let positioning = fields[6].trim();
    Ok(CaseAttributes {
        case_id: case_id.to_string(),
        department,
        age,
        sex: Sex::parse(fields[3]),
        procedure_text: fields[4].to_string(),
        anesthesia_text: fields[5].to_string(),
        positioning_text: (!positioning.is_empty()).then(|| positioning.to_string()),
        planned_induction_min: optional_minutes(fields[7], line, "planned_induction_min")?,
        planned_procedure_min: optional_minutes(fields[8], line, "planned_procedure_min")?,
    })
}

pub fn write_cases_csv<W: Write>(attrs: &[CaseAttributes], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CASES_HEADER)?;
    let num = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
    for a in attrs {
        w.write_record([
            a.case_id.as_str(),
            a.department.as_str(),
            &a.age.map(|x| x.to_string()).unwrap_or_default(),
            a.sex.code(),
            a.procedure_text.as_str(),
            a.anesthesia_text.as_str(),
            a.positioning_text.as_deref().unwrap_or(""),
            &num(a.planned_induction_min),
            &num(a.planned_procedure_min),
        ])?;
    }
    w.flush().map_err(|e| Error::io("<cases csv>", e))?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DuplicateAnchor {
    pub case_id: String,
    pub event_type: String,
    pub count: usize,
}

#[derive(Debug, Clone, Default)]
pub struct Assembly {
    pub cases: Vec<Case>,
    pub duplicates: Vec<DuplicateAnchor>,
}

/// Group events into cases and derive phase durations.
///
/// Cases are ordered by first appearance in the event list, followed by
/// attribute-only cases in attribute order. Cases with a duplicated anchor
/// event are kept but flagged invalid and carry no durations.
pub fn assemble_cases(events: Vec<Event>, attrs: Vec<CaseAttributes>) -> Assembly {
    let mut order: Vec<String> = Vec::new();
    let mut grouped: HashMap<String, Vec<Event>> = HashMap::new();
    for ev in events {
        let slot = grouped.entry(ev.case_id.clone()).or_insert_with(|| {
            order.push(ev.case_id.clone());
            Vec::new()
        });
        slot.push(ev);
    }

    let mut attr_by_id: HashMap<String, CaseAttributes> = HashMap::new();
    let mut attr_only: Vec<String> = Vec::new();
    for a in attrs {
        if !grouped.contains_key(&a.case_id) && !attr_by_id.contains_key(&a.case_id) {
            attr_only.push(a.case_id.clone());
        }
        attr_by_id.entry(a.case_id.clone()).or_insert(a);
    }

    let mut assembly = Assembly::default();
    for id in order.into_iter().chain(attr_only) {
        let mut events = grouped.remove(&id).unwrap_or_default();
        events.sort_by_key(|e| e.timestamp);
        let attributes = attr_by_id
            .remove(&id)
            .unwrap_or_else(|| CaseAttributes::unknown(id.clone()));

        let mut anchor_counts: HashMap<&EventKind, usize> = HashMap::new();
        for e in events.iter().filter(|e| e.kind.is_anchor()) {
            *anchor_counts.entry(&e.kind).or_default() += 1;
        }
        let dup_kinds: BTreeSet<(&EventKind, usize)> = anchor_counts
            .into_iter()
            .filter(|(_, n)| *n > 1)
            .collect();
        let invalid = !dup_kinds.is_empty();
        assembly
            .duplicates
            .extend(dup_kinds.into_iter().map(|(kind, count)| DuplicateAnchor {
                case_id: id.clone(),
                event_type: kind.label().to_string(),
                count,
            }));

        let mut case = Case {
            attributes,
            events,
            durations: PhaseDurations::default(),
            invalid,
        };
        if !invalid {
            case.durations = extract_phase_durations(&case);
        }
        assembly.cases.push(case);
    }
    assembly
}

/// Phase durations in minutes from the anchor timestamps. Negative values
/// pass through; rejecting them is the cleaning step's job.
pub fn extract_phase_durations(case: &Case) -> PhaseDurations {
    let span = |phase: Phase| {
        let (from, to) = phase.anchors();
        let start = case.anchor_time(&from)?;
        let end = case.anchor_time(&to)?;
        Some((end - start).num_seconds() as f64 / 60.0)
    };
    PhaseDurations {
        induction_min: span(Phase::Induction),
        preparation_min: span(Phase::Preparation),
        procedure_min: span(Phase::Procedure),
    }
}
