//! Procedure families, anesthesia types and positionings of the generator.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Anesthesia {
    Itn,
    Lma,
    Spa,
    Pda,
    Sedation,
    Plexus,
}

impl Anesthesia {
    pub const ALL: [Anesthesia; 6] = [
        Anesthesia::Itn,
        Anesthesia::Lma,
        Anesthesia::Spa,
        Anesthesia::Pda,
        Anesthesia::Sedation,
        Anesthesia::Plexus,
    ];

    pub fn key(self) -> &'static str {
        match self {
            Anesthesia::Itn => "itn",
            Anesthesia::Lma => "lma",
            Anesthesia::Spa => "spa",
            Anesthesia::Pda => "pda",
            Anesthesia::Sedation => "analgosedierung",
            Anesthesia::Plexus => "plexus",
        }
    }

    pub fn variants(self) -> [&'static str; 3] {
        match self {
            Anesthesia::Itn => ["ITN", "Intubationsnarkose", "Intub.-Narkose"],
            Anesthesia::Lma => ["Larynxmaske", "LAMA", "LMA"],
            Anesthesia::Spa => ["Spinalanästhesie", "SPA", "Spinale"],
            Anesthesia::Pda => ["Periduralanästhesie", "PDA", "PDK"],
            Anesthesia::Sedation => ["Analgosedierung", "Sedierung", "AnSed"],
            Anesthesia::Plexus => ["Plexusanästhesie", "Plexusblock", "PLX"],
        }
    }

    /// Median induction time in minutes and log-scale spread.
    pub fn duration(self) -> (f64, f64) {
        match self {
            Anesthesia::Itn => (15.0, 0.30),
            Anesthesia::Lma => (9.0, 0.30),
            Anesthesia::Spa => (12.0, 0.30),
            Anesthesia::Pda => (18.0, 0.30),
            Anesthesia::Sedation => (6.0, 0.35),
            Anesthesia::Plexus => (20.0, 0.30),
        }
    }
}

pub const ARTERIAL_LINE: [&str; 3] = ["mit Arterie", "+ Art.", "Arterie"];
pub const CENTRAL_LINE: [&str; 3] = ["ZVK", "+ ZVK", "mit ZVK"];
pub const ARTERIAL_FACTOR: f64 = 1.3;
pub const CENTRAL_FACTOR: f64 = 1.45;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Positioning {
    Supine,
    Lithotomy,
    Lateral,
    Prone,
    BeachChair,
}

impl Positioning {
    pub fn label(self) -> &'static str {
        match self {
            Positioning::Supine => "Rückenlage",
            Positioning::Lithotomy => "Steinschnittlage",
            Positioning::Lateral => "Seitenlage",
            Positioning::Prone => "Bauchlage",
            Positioning::BeachChair => "Beach-Chair",
        }
    }

    /// Median preparation time in minutes and log-scale spread.
    pub fn duration(self) -> (f64, f64) {
        match self {
            Positioning::Supine => (15.0, 0.35),
            Positioning::Lithotomy => (18.0, 0.35),
            Positioning::Lateral => (25.0, 0.35),
            Positioning::Prone => (28.0, 0.35),
            Positioning::BeachChair => (24.0, 0.35),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Family {
    pub key: &'static str,
    pub department: &'static str,
    pub variants: [&'static str; 4],
    pub median_min: f64,
    pub sigma: f64,
    pub weight: f64,
    pub lateral: bool,
    pub female_only: bool,
    /// Major procedures get invasive lines more often.
    pub major: bool,
    pub positioning: Positioning,
    pub anesthesia: &'static [(Anesthesia, f64)],
}

use Anesthesia::*;
use Positioning::*;

const GENERAL: &[(Anesthesia, f64)] = &[(Itn, 1.0)];
const GENERAL_OR_MASK: &[(Anesthesia, f64)] = &[(Itn, 0.6), (Lma, 0.4)];
const NEURAXIAL: &[(Anesthesia, f64)] = &[(Spa, 0.6), (Itn, 0.3), (Pda, 0.1)];
const SHORT: &[(Anesthesia, f64)] = &[(Sedation, 0.5), (Lma, 0.4), (Spa, 0.1)];
const JOINT: &[(Anesthesia, f64)] = &[(Spa, 0.5), (Itn, 0.4), (Pda, 0.1)];
const LIMB: &[(Anesthesia, f64)] = &[(Itn, 0.5), (Plexus, 0.35), (Lma, 0.15)];
const SPINE: &[(Anesthesia, f64)] = &[(Itn, 0.9), (Lma, 0.1)];
const OBSTETRIC: &[(Anesthesia, f64)] = &[(Spa, 0.6), (Pda, 0.3), (Itn, 0.1)];

macro_rules! family {
    ($key:expr, $dept:expr, [$($v:expr),*], $median:expr, $sigma:expr, $weight:expr,
     lateral=$lat:expr, female=$fem:expr, major=$major:expr, $pos:expr, $anes:expr) => {
        Family {
            key: $key,
            department: $dept,
            variants: [$($v),*],
            median_min: $median,
            sigma: $sigma,
            weight: $weight,
            lateral: $lat,
            female_only: $fem,
            major: $major,
            positioning: $pos,
            anesthesia: $anes,
        }
    };
}

pub const FAMILIES: [Family; 25] = [
    family!("cholezystektomie", "visceral_surgery",
        ["Laparoskopische Cholezystektomie", "Lap. Cholezystektomie", "LCE", "Cholezystektomie lap."],
        75.0, 0.30, 3.0, lateral = false, female = false, major = false, Supine, GENERAL),
    family!("appendektomie", "visceral_surgery",
        ["Appendektomie", "Lap. Appendektomie", "LAE", "laparoskopische Appendektomie"],
        45.0, 0.30, 2.5, lateral = false, female = false, major = false, Supine, GENERAL),
    family!("leistenhernie", "visceral_surgery",
        ["Leistenhernie TAPP", "TAPP", "Leistenhernienversorgung", "L-Hernie"],
        60.0, 0.30, 2.5, lateral = true, female = false, major = false, Supine, GENERAL_OR_MASK),
    family!("sigmaresektion", "visceral_surgery",
        ["Sigmaresektion", "SR", "Lap. Sigmaresektion", "Sigma-Resektion"],
        180.0, 0.30, 1.0, lateral = false, female = false, major = true, Lithotomy, GENERAL),
    family!("whipple", "visceral_surgery",
        ["Whipple-OP", "PPPD", "Pankreaskopfresektion", "Whipple"],
        360.0, 0.25, 0.5, lateral = false, female = false, major = true, Supine, GENERAL),
    family!("turp", "urology",
        ["TUR-P", "TURP", "TUR-Prostata", "Prostataresektion transurethral"],
        60.0, 0.30, 2.0, lateral = false, female = false, major = false, Lithotomy, NEURAXIAL),
    family!("turb", "urology",
        ["TUR-B", "TURB", "TUR-Blase", "Blasentumorresektion"],
        40.0, 0.35, 2.0, lateral = false, female = false, major = false, Lithotomy, NEURAXIAL),
    family!("zystoskopie", "urology",
        ["Zystoskopie", "Cystoskopie", "Zysto", "ZYS"],
        15.0, 0.35, 1.5, lateral = false, female = false, major = false, Lithotomy, SHORT),
    family!("nephrektomie", "urology",
        ["Nephrektomie", "NE", "Nierenentfernung", "Lap. Nephrektomie"],
        150.0, 0.30, 0.8, lateral = true, female = false, major = true, Lateral, GENERAL),
    family!("hueftendoprothese", "orthopedics",
        ["Hüft-TEP", "H-TEP", "Hüftendoprothese", "Hueft-TEP"],
        90.0, 0.25, 2.5, lateral = true, female = false, major = false, Lateral, JOINT),
    family!("knieendoprothese", "orthopedics",
        ["Knie-TEP", "K-TEP", "Knieendoprothese", "KTEP"],
        100.0, 0.25, 2.5, lateral = true, female = false, major = false, Supine, JOINT),
    family!("kniearthroskopie", "orthopedics",
        ["Kniearthroskopie", "ASK Knie", "Arthroskopie", "Knie-ASK"],
        35.0, 0.30, 2.0, lateral = true, female = false, major = false, Supine, GENERAL_OR_MASK),
    family!("osteosynthese", "orthopedics",
        ["Osteosynthese", "ORIF", "Plattenosteosynthese", "OS"],
        80.0, 0.40, 2.0, lateral = true, female = false, major = false, Supine, LIMB),
    family!("nukleotomie", "neurosurgery",
        ["Nukleotomie", "Bandscheiben-OP", "BSV-OP", "Diskektomie"],
        90.0, 0.30, 1.5, lateral = false, female = false, major = false, Prone, SPINE),
    family!("kraniotomie", "neurosurgery",
        ["Kraniotomie", "Trepanation", "Craniotomie", "KT"],
        240.0, 0.30, 0.8, lateral = false, female = false, major = true, Supine, GENERAL),
    family!("acvb", "cardiac_surgery",
        ["ACVB", "Bypass-OP", "CABG", "Bypass"],
        240.0, 0.20, 1.0, lateral = false, female = false, major = true, Supine, GENERAL),
    family!("aortenklappenersatz", "cardiac_surgery",
        ["Aortenklappenersatz", "AKE", "Klappenersatz", "Aortenklappen-Ersatz"],
        210.0, 0.20, 0.8, lateral = false, female = false, major = true, Supine, GENERAL),
    family!("lobektomie", "thoracic_surgery",
        ["Lobektomie", "Lungenlappenresektion", "LE", "VATS Lobektomie"],
        180.0, 0.30, 0.8, lateral = true, female = false, major = true, Lateral, GENERAL),
    family!("karotisendarteriektomie", "vascular_surgery",
        ["Carotis-TEA", "Karotisendarteriektomie", "TEA", "CEA"],
        120.0, 0.25, 0.8, lateral = true, female = false, major = true, Supine, GENERAL),
    family!("crossektomie", "vascular_surgery",
        ["Crossektomie", "Varizen-OP", "Stripping", "Venenstripping"],
        60.0, 0.30, 1.5, lateral = true, female = false, major = false, Supine, GENERAL_OR_MASK),
    family!("tonsillektomie", "otolaryngology",
        ["Tonsillektomie", "TE", "Mandel-OP", "Tonsillektomie bds."],
        35.0, 0.30, 2.0, lateral = false, female = false, major = false, Supine, GENERAL),
    family!("septumplastik", "otolaryngology",
        ["Septumplastik", "Septoplastik", "Nasenscheidewand-OP", "SPL"],
        50.0, 0.30, 1.5, lateral = false, female = false, major = false, Supine, GENERAL),
    family!("hysterektomie", "gynecology",
        ["Hysterektomie", "LASH", "TLH", "Uterusentfernung"],
        120.0, 0.30, 1.5, lateral = false, female = true, major = false, Lithotomy, GENERAL),
    family!("sectio", "gynecology",
        ["Sectio", "Sectio caesarea", "Kaiserschnitt", "SC"],
        45.0, 0.25, 2.0, lateral = false, female = true, major = false, Supine, OBSTETRIC),
    family!("mammareduktion", "plastic_surgery",
        ["Mammareduktion", "Reduktionsplastik", "Brustverkleinerung", "MR"],
        150.0, 0.30, 0.8, lateral = false, female = true, major = false, BeachChair, GENERAL),
];

pub const SIDES: [&str; 6] = ["re.", "li.", "rechts", "links", "re", "li"];
pub const BILATERAL: [&str; 2] = ["bds.", "beidseits"];
pub const REVISION: [&str; 2] = ["Re-OP", "Revision"];
pub const BILATERAL_FACTOR: f64 = 1.6;
pub const REVISION_FACTOR: f64 = 1.3;
pub const BILATERAL_RATE: f64 = 0.1;
pub const REVISION_RATE: f64 = 0.05;
