//! Checkpoint tables exchanged between pipeline stages.

use std::fs::File;
use std::io::BufWriter;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::eventlog::{Case, CaseAttributes, PhaseDurations, Sex};
use crate::{Error, Phase, Result};

/// One assembled case with its derived durations (`phases.csv`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseRow {
    pub case_id: String,
    pub department: String,
    pub age: Option<u32>,
    pub sex: String,
    pub procedure_text: String,
    pub anesthesia_text: String,
    pub positioning_text: Option<String>,
    pub planned_induction_min: Option<f64>,
    pub planned_procedure_min: Option<f64>,
    pub induction_min: Option<f64>,
    pub preparation_min: Option<f64>,
    pub procedure_min: Option<f64>,
    pub invalid: bool,
}

impl CaseRow {
    pub fn from_case(case: &Case) -> Self {
        let a = &case.attributes;
        Self {
            case_id: a.case_id.clone(),
            department: a.department.clone(),
            age: a.age,
            sex: a.sex.code().to_string(),
            procedure_text: a.procedure_text.clone(),
            anesthesia_text: a.anesthesia_text.clone(),
            positioning_text: a.positioning_text.clone(),
            planned_induction_min: a.planned_induction_min,
            planned_procedure_min: a.planned_procedure_min,
            induction_min: case.durations.induction_min,
            preparation_min: case.durations.preparation_min,
            procedure_min: case.durations.procedure_min,
            invalid: case.invalid,
        }
    }

    /// A case without events, carrying the stored durations.
    pub fn to_case(&self) -> Case {
        Case {
            attributes: CaseAttributes {
                case_id: self.case_id.clone(),
                department: self.department.clone(),
                age: self.age,
                sex: Sex::parse(&self.sex),
                procedure_text: self.procedure_text.clone(),
                anesthesia_text: self.anesthesia_text.clone(),
                positioning_text: self.positioning_text.clone(),
                planned_induction_min: self.planned_induction_min,
                planned_procedure_min: self.planned_procedure_min,
            },
            events: Vec::new(),
            durations: PhaseDurations {
                induction_min: self.induction_min,
                preparation_min: self.preparation_min,
                procedure_min: self.procedure_min,
            },
            invalid: self.invalid,
        }
    }
}

/// One cleaned case of a single phase (`<phase>/clean.csv`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseRow {
    pub case_id: String,
    pub department: String,
    pub age: Option<u32>,
    pub sex: String,
    pub procedure_text: String,
    pub anesthesia_text: String,
    pub positioning_text: Option<String>,
    pub planned_min: Option<f64>,
    pub duration_min: f64,
}

impl PhaseRow {
    pub fn from_case(case: &Case, phase: Phase) -> Option<Self> {
        let a = &case.attributes;
        Some(Self {
            case_id: a.case_id.clone(),
            department: a.department.clone(),
            age: a.age,
            sex: a.sex.code().to_string(),
            procedure_text: a.procedure_text.clone(),
            anesthesia_text: a.anesthesia_text.clone(),
            positioning_text: a.positioning_text.clone(),
            planned_min: a.planned(phase),
            duration_min: case.durations.get(phase)?,
        })
    }

    /// Row built from case attributes alone, for prediction.
    pub fn from_attributes(a: &CaseAttributes, phase: Phase) -> Self {
        Self {
            case_id: a.case_id.clone(),
            department: a.department.clone(),
            age: a.age,
            sex: a.sex.code().to_string(),
            procedure_text: a.procedure_text.clone(),
            anesthesia_text: a.anesthesia_text.clone(),
            positioning_text: a.positioning_text.clone(),
            planned_min: a.planned(phase),
            duration_min: f64::NAN,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Split {
    Train,
    Test,
}

/// Split membership and cluster labels of a cleaned case
/// (`<phase>/assignments.csv`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assignment {
    pub case_id: String,
    pub split: Split,
    pub procedure_cluster: usize,
    pub anesthesia_cluster: usize,
}

pub fn write_rows<T: Serialize>(path: &Path, rows: &[T]) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = csv::Writer::from_writer(BufWriter::new(file));
    for r in rows {
        w.serialize(r)?;
    }
    w.flush().map_err(|e| Error::io(path, e))?;
    Ok(())
}

pub fn read_rows<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<Vec<T>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut r = csv::Reader::from_reader(std::io::BufReader::new(file));
    r.deserialize().map(|row| row.map_err(Error::from)).collect()
}
