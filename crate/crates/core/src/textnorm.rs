//! Free-text normalization and TF-IDF vectors.
//!
//! Normalization runs, in order: umlaut transliteration, lowercasing,
//! deletion of non-alphanumeric characters inside each whitespace-delimited
//! token, a minimum-length filter, one pass of synonym replacement and
//! suffix stemming.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Read;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Abbreviation and synonym table shipped as a default. It covers the
/// vocabulary of the bundled synthetic generator; real deployments load a
/// site-specific `synonyms.csv` instead.
pub const DEFAULT_SYNONYMS: &[(&str, &str)] = &[
    // anesthesia
    ("itn", "intubationsnarkose"),
    ("intubnarkose", "intubationsnarkose"),
    ("lama", "larynxmaske"),
    ("lma", "larynxmaske"),
    ("spa", "spinalanaesthesie"),
    ("spinale", "spinalanaesthesie"),
    ("pda", "periduralanaesthesie"),
    ("pdk", "periduralanaesthesie"),
    ("sedierung", "analgosedierung"),
    ("ansed", "analgosedierung"),
    ("plexusblock", "plexusanaesthesie"),
    ("plx", "plexusanaesthesie"),
    ("art", "arterie"),
    // procedures
    ("lap", "laparoskopisch"),
    ("lce", "cholezystektomie"),
    ("lae", "appendektomie"),
    ("tapp", "leistenhernie"),
    ("leistenhernienversorgung", "leistenhernie"),
    ("lhernie", "leistenhernie"),
    ("sr", "sigmaresektion"),
    ("whippleop", "whipple"),
    ("pankreaskopfresektion", "whipple"),
    ("pppd", "whipple"),
    ("turprostata", "turp"),
    ("prostataresektion", "turp"),
    ("turblase", "turb"),
    ("blasentumorresektion", "turb"),
    ("cystoskopie", "zystoskopie"),
    ("zys", "zystoskopie"),
    ("zysto", "zystoskopie"),
    ("ne", "nephrektomie"),
    ("nierenentfernung", "nephrektomie"),
    ("huefttep", "hueftendoprothese"),
    ("htep", "hueftendoprothese"),
    ("knietep", "knieendoprothese"),
    ("ktep", "knieendoprothese"),
    ("ask", "kniearthroskopie"),
    ("knieask", "kniearthroskopie"),
    ("arthroskopie", "kniearthroskopie"),
    ("orif", "osteosynthese"),
    ("plattenosteosynthese", "osteosynthese"),
    ("os", "osteosynthese"),
    ("bandscheibenop", "nukleotomie"),
    ("bsvop", "nukleotomie"),
    ("diskektomie", "nukleotomie"),
    ("trepanation", "kraniotomie"),
    ("craniotomie", "kraniotomie"),
    ("kt", "kraniotomie"),
    ("bypassop", "acvb"),
    ("bypass", "acvb"),
    ("cabg", "acvb"),
    ("ake", "aortenklappenersatz"),
    ("klappenersatz", "aortenklappenersatz"),
    ("lungenlappenresektion", "lobektomie"),
    ("le", "lobektomie"),
    ("carotistea", "karotisendarteriektomie"),
    ("karotistea", "karotisendarteriektomie"),
    ("tea", "karotisendarteriektomie"),
    ("carotis", "karotisendarteriektomie"),
    ("cea", "karotisendarteriektomie"),
    ("varizenop", "crossektomie"),
    ("stripping", "crossektomie"),
    ("venenstripping", "crossektomie"),
    ("te", "tonsillektomie"),
    ("mandelop", "tonsillektomie"),
    ("septoplastik", "septumplastik"),
    ("nasenscheidewandop", "septumplastik"),
    ("spl", "septumplastik"),
    ("lash", "hysterektomie"),
    ("tlh", "hysterektomie"),
    ("uterusentfernung", "hysterektomie"),
    ("reduktionsplastik", "mammareduktion"),
    ("brustverkleinerung", "mammareduktion"),
    ("mr", "mammareduktion"),
    ("kaiserschnitt", "sectio"),
    ("sc", "sectio"),
    // modifiers
    ("re", "rechts"),
    ("li", "links"),
    ("bds", "beidseits"),
    ("reop", "revision"),
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalizationRules {
    /// Lowercase token replacements, applied once (not to a fixpoint).
    pub synonyms: BTreeMap<String, String>,
    /// Suffixes tried in order; the first match is stripped.
    pub stem_suffixes: Vec<String>,
    /// Tokens ending in one of these are never stemmed.
    pub protected_suffixes: Vec<String>,
    /// A suffix is only stripped if at least this many characters remain.
    pub min_stem_len: usize,
    pub min_token_len: usize,
    /// Delete every non-alphanumeric character, whitespace included, which
    /// collapses the whole text into a single token.
    pub literal_strip: bool,
}

impl Default for NormalizationRules {
    fn default() -> Self {
        Self {
            synonyms: DEFAULT_SYNONYMS
                .iter()
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .collect(),
            stem_suffixes: vec!["en".into(), "e".into(), "s".into()],
            protected_suffixes: vec!["ie".into()],
            min_stem_len: 4,
            min_token_len: 2,
            literal_strip: false,
        }
    }
}

impl NormalizationRules {
    /// Rules without any synonym table; stemming and length filtering stay.
    pub fn without_synonyms() -> Self {
        Self {
            synonyms: BTreeMap::new(),
            ..Self::default()
        }
    }

    /// Load a `from,to` synonym table.
    pub fn load_synonyms<R: Read>(source: R) -> Result<BTreeMap<String, String>> {
        let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(source);
        let header: Vec<String> = reader.headers()?.iter().map(|h| h.trim().to_string()).collect();
        if header != ["from", "to"] {
            return Err(Error::InvalidInput(format!(
                "synonym table header must be `from,to`, found `{}`",
                header.join(",")
            )));
        }
        let mut map = BTreeMap::new();
        for row in reader.records() {
            let row = row?;
            let line = row.position().map_or(0, |p| p.line());
            let (Some(from), Some(to)) = (row.get(0), row.get(1)) else {
                return Err(Error::Record {
                    line,
                    field: "record",
                    message: "expected two fields".into(),
                });
            };
            let from = from.trim().to_lowercase();
            if from.is_empty() {
                return Err(Error::Record {
                    line,
                    field: "from",
                    message: "empty key".into(),
                });
            }
            map.insert(from, to.trim().to_lowercase());
        }
        Ok(map)
    }

    fn stem(&self, token: String) -> String {
        if self.protected_suffixes.iter().any(|p| token.ends_with(p.as_str())) {
            return token;
        }
        for suffix in &self.stem_suffixes {
            if let Some(stem) = token.strip_suffix(suffix.as_str()) {
                if stem.chars().count() >= self.min_stem_len {
                    return stem.to_string();
                }
                return token;
            }
        }
        token
    }
}

fn transliterate(raw: &str) -> String {
    let mut out = String::with_capacity(raw.len());
    for c in raw.chars() {
        match c {
            'ä' => out.push_str("ae"),
            'ö' => out.push_str("oe"),
            'ü' => out.push_str("ue"),
            'Ä' => out.push_str("Ae"),
            'Ö' => out.push_str("Oe"),
            'Ü' => out.push_str("Ue"),
            'ß' => out.push_str("ss"),
            c => out.push(c),
        }
    }
    out
}

pub fn normalize_text(raw: &str, rules: &NormalizationRules) -> Vec<String> {
    let lowered = transliterate(raw).to_lowercase();
    let pieces: Vec<String> = if rules.literal_strip {
        vec![lowered.chars().filter(|c| c.is_alphanumeric()).collect()]
    } else {
        lowered
            .split_whitespace()
            .map(|tok| tok.chars().filter(|c| c.is_alphanumeric()).collect())
            .collect()
    };
    pieces
        .into_iter()
        .filter(|tok: &String| tok.chars().count() >= rules.min_token_len.max(1))
        .map(|tok| rules.synonyms.get(&tok).cloned().unwrap_or(tok))
        .map(|tok| rules.stem(tok))
        .collect()
}

/// Sparse vector of `(column, weight)` pairs sorted by column.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct DocVector {
    pub entries: Vec<(usize, f64)>,
}

impl DocVector {
    pub fn norm(&self) -> f64 {
        self.entries.iter().map(|(_, w)| w * w).sum::<f64>().sqrt()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn to_dense(&self, dim: usize) -> Vec<f64> {
        let mut out = vec![0.0; dim];
        for &(i, w) in &self.entries {
            out[i] = w;
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TfidfModel {
    /// Term to column; columns are assigned in lexicographic term order.
    pub vocabulary: BTreeMap<String, usize>,
    pub idf: Vec<f64>,
    pub max_terms: Option<usize>,
    pub n_documents: usize,
}

impl TfidfModel {
    pub fn dim(&self) -> usize {
        self.idf.len()
    }

    /// Terms in column order.
    pub fn terms(&self) -> Vec<&str> {
        let mut terms = vec![""; self.dim()];
        for (t, &i) in &self.vocabulary {
            terms[i] = t.as_str();
        }
        terms
    }
}

/// Fit smoothed inverse document frequencies,
/// `idf(t) = ln((1 + N) / (1 + df(t))) + 1`.
///
/// With `max_terms`, only the most frequent terms by document frequency are
/// kept, ties broken lexicographically.
pub fn fit_tfidf(corpus: &[Vec<String>], max_terms: Option<usize>) -> Result<TfidfModel> {
    if corpus.is_empty() {
        return Err(Error::InsufficientData("empty corpus".into()));
    }
    let mut df: BTreeMap<&str, usize> = BTreeMap::new();
    for doc in corpus {
        let unique: BTreeSet<&str> = doc.iter().map(String::as_str).collect();
        for t in unique {
            *df.entry(t).or_default() += 1;
        }
    }
    if df.is_empty() {
        return Err(Error::InsufficientData("every document is empty".into()));
    }

    let mut ranked: Vec<(&str, usize)> = df.into_iter().collect();
    if let Some(cap) = max_terms {
        ranked.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));
        ranked.truncate(cap);
        ranked.sort_by(|a, b| a.0.cmp(b.0));
    }

    let n = corpus.len() as f64;
    let mut vocabulary = BTreeMap::new();
    let mut idf = Vec::with_capacity(ranked.len());
    for (i, (term, freq)) in ranked.into_iter().enumerate() {
        vocabulary.insert(term.to_string(), i);
        idf.push(((1.0 + n) / (1.0 + freq as f64)).ln() + 1.0);
    }
    Ok(TfidfModel {
        vocabulary,
        idf,
        max_terms,
        n_documents: corpus.len(),
    })
}

/// Raw term counts times idf, L2-normalized. Out-of-vocabulary terms are
/// ignored, so a document without known terms maps to the zero vector.
pub fn vectorize(doc: &[String], model: &TfidfModel) -> DocVector {
    let mut counts: BTreeMap<usize, f64> = BTreeMap::new();
    for t in doc {
        if let Some(&col) = model.vocabulary.get(t) {
            *counts.entry(col).or_default() += 1.0;
        }
    }
    let mut entries: Vec<(usize, f64)> = counts
        .into_iter()
        .map(|(col, tf)| (col, tf * model.idf[col]))
        .collect();
    let norm = entries.iter().map(|(_, w)| w * w).sum::<f64>().sqrt();
    if norm > 0.0 {
        for e in entries.iter_mut() {
            e.1 /= norm;
        }
    }
    DocVector { entries }
}
