//! Token streams over word-segmented sentences.
//!
//! Every transformation keeps the sentence's word structure: character,
//! radical and decomposed streams mark where each word starts (see
//! [`Boundary`]), and word and factored streams emit exactly one token per
//! word. Non-Han text (Latin, digits, punctuation) passes through unchanged.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::decompose::{DecompConfig, Decomposer};
use crate::han::{is_han, segments};
use crate::ids::{IdsDictionary, RegionTag};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorpusError {
    #[error("unknown granularity mode {0:?} (expected w, c, r, rxdN or a +-joined subset of w, c, r)")]
    UnknownMode(String),
    #[error("unknown boundary mode {0:?} (expected prefix, sep or none)")]
    UnknownBoundary(String),
    #[error("radical map line {line}: {reason}")]
    RadicalMap { line: usize, reason: String },
}

/// How words are separated in the input line.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum Delimiter {
    #[default]
    Whitespace,
    Literal(String),
}

impl Delimiter {
    pub fn literal(s: impl Into<String>) -> Self {
        let s = s.into();
        if s.is_empty() || s.chars().all(char::is_whitespace) {
            Delimiter::Whitespace
        } else {
            Delimiter::Literal(s)
        }
    }
}

/// A sentence as an ordered list of non-empty words.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SegmentedSentence {
    words: Vec<String>,
}

impl SegmentedSentence {
    /// Builds a sentence, dropping empty words.
    pub fn new<I, S>(words: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        SegmentedSentence {
            words: words
                .into_iter()
                .map(Into::into)
                .filter(|w: &String| !w.is_empty())
                .collect(),
        }
    }

    pub fn words(&self) -> &[String] {
        &self.words
    }

    pub fn word_count(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

/// Splits a line into words on runs of the delimiter; empty fields are
/// dropped.
pub fn parse_segmented(line: &str, delimiter: &Delimiter) -> SegmentedSentence {
    match delimiter {
        Delimiter::Whitespace => SegmentedSentence::new(line.split_whitespace()),
        Delimiter::Literal(d) => SegmentedSentence::new(line.split(d.as_str()).map(str::trim)),
    }
}

/// Word-boundary encoding for multi-token-per-word streams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Boundary {
    /// No marking; word structure is lost in the output.
    None,
    /// The marker is glued to the front of each word's first piece.
    Prefix(String),
    /// A standalone token between consecutive words.
    Separator(String),
}

impl Boundary {
    pub const DEFAULT_PREFIX: &'static str = "▁";
    pub const DEFAULT_SEPARATOR: &'static str = "<wb>";

    pub fn prefix() -> Self {
        Boundary::Prefix(Self::DEFAULT_PREFIX.to_string())
    }

    pub fn separator() -> Self {
        Boundary::Separator(Self::DEFAULT_SEPARATOR.to_string())
    }

    /// Number of word spans in a stream produced with this boundary, or
    /// None when the stream carries no boundary information.
    pub fn span_count<S: AsRef<str>>(&self, tokens: &[S]) -> Option<usize> {
        match self {
            Boundary::None => None,
            Boundary::Prefix(mark) => Some(tokens.iter().filter(|t| t.as_ref().starts_with(mark.as_str())).count()),
            Boundary::Separator(sep) => Some(if tokens.is_empty() {
                0
            } else {
                1 + tokens.iter().filter(|t| t.as_ref() == sep).count()
            }),
        }
    }

    /// Removes boundary markup, leaving bare pieces.
    pub fn strip<S: AsRef<str>>(&self, tokens: &[S]) -> Vec<String> {
        match self {
            Boundary::None => tokens.iter().map(|t| t.as_ref().to_string()).collect(),
            Boundary::Prefix(mark) => tokens
                .iter()
                .map(|t| {
                    let t = t.as_ref();
                    t.strip_prefix(mark.as_str()).unwrap_or(t).to_string()
                })
                .collect(),
            Boundary::Separator(sep) => tokens
                .iter()
                .map(AsRef::as_ref)
                .filter(|t| t != sep)
                .map(str::to_string)
                .collect(),
        }
    }

    fn assemble(&self, words: Vec<Vec<String>>) -> Vec<String> {
        let mut out = Vec::with_capacity(words.iter().map(Vec::len).sum::<usize>() + words.len());
        for (i, mut pieces) in words.into_iter().enumerate() {
            match self {
                Boundary::None => {}
                Boundary::Prefix(mark) => {
                    if let Some(first) = pieces.first_mut() {
                        first.insert_str(0, mark);
                    }
                }
                Boundary::Separator(sep) => {
                    if i > 0 {
                        out.push(sep.clone());
                    }
                }
            }
            out.extend(pieces);
        }
        out
    }
}

impl Default for Boundary {
    fn default() -> Self {
        Boundary::prefix()
    }
}

impl FromStr for Boundary {
    type Err = CorpusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "prefix" => Ok(Boundary::prefix()),
            "sep" | "separator" => Ok(Boundary::separator()),
            "none" => Ok(Boundary::None),
            other => Err(CorpusError::UnknownBoundary(other.to_string())),
        }
    }
}

/// One token per word.
pub fn to_word_stream(s: &SegmentedSentence) -> Vec<String> {
    s.words.clone()
}

fn char_pieces(word: &str) -> Vec<String> {
    segments(word).into_iter().map(str::to_string).collect()
}

/// Each word becomes its characters.
pub fn to_char_stream(s: &SegmentedSentence, boundary: &Boundary) -> Vec<String> {
    boundary.assemble(s.words.iter().map(|w| char_pieces(w)).collect())
}

/// Maps characters to radicals: an explicit table first, otherwise the first
/// piece of the level-1 decomposition, otherwise the character itself.
pub struct RadicalLookup<'d> {
    decomposer: Decomposer<'d>,
    map: HashMap<char, char>,
}

impl<'d> RadicalLookup<'d> {
    pub fn new(dict: &'d IdsDictionary, preference: &[RegionTag]) -> Self {
        let config = DecompConfig::new(1)
            .with_region_preference(dedup(preference))
            .expect("deduplicated preference");
        RadicalLookup {
            decomposer: Decomposer::new(dict, config),
            map: HashMap::new(),
        }
    }

    pub fn with_map(mut self, map: HashMap<char, char>) -> Self {
        self.map = map;
        self
    }

    pub fn radical_of(&self, c: char) -> char {
        if let Some(r) = self.map.get(&c) {
            return *r;
        }
        self.decomposer.decompose_char_at(c, 1).first().copied().unwrap_or(c)
    }

    fn radical_pieces(&self, word: &str) -> Vec<String> {
        segments(word)
            .into_iter()
            .map(|seg| match single_han(seg) {
                Some(c) => self.radical_of(c).to_string(),
                None => seg.to_string(),
            })
            .collect()
    }
}

fn dedup(tags: &[RegionTag]) -> Vec<RegionTag> {
    let mut out: Vec<RegionTag> = Vec::with_capacity(tags.len());
    for t in tags {
        if !out.contains(t) {
            out.push(*t);
        }
    }
    out
}

fn single_han(seg: &str) -> Option<char> {
    let mut chars = seg.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) if is_han(c) => Some(c),
        _ => None,
    }
}

/// Parses a `CHAR<TAB>RADICAL` table; `#` lines and blank lines are ignored.
pub fn parse_radical_map(text: &str) -> Result<HashMap<char, char>, CorpusError> {
    let mut map = HashMap::new();
    for (i, line) in text.lines().enumerate() {
        if line.starts_with('#') || line.trim().is_empty() {
            continue;
        }
        let err = |reason: &str| CorpusError::RadicalMap {
            line: i + 1,
            reason: reason.to_string(),
        };
        let (c, r) = line.split_once('\t').ok_or_else(|| err("expected CHAR<TAB>RADICAL"))?;
        let one = |s: &str| {
            let mut it = s.chars();
            match (it.next(), it.next()) {
                (Some(c), None) => Some(c),
                _ => None,
            }
        };
        let (Some(c), Some(r)) = (one(c), one(r.trim_end())) else {
            return Err(err("fields must be single characters"));
        };
        map.insert(c, r);
    }
    Ok(map)
}

/// One radical per character.
pub fn to_radical_stream(s: &SegmentedSentence, radicals: &RadicalLookup<'_>, boundary: &Boundary) -> Vec<String> {
    boundary.assemble(s.words.iter().map(|w| radicals.radical_pieces(w)).collect())
}

fn rxd_pieces(word: &str, decomposer: &Decomposer<'_>) -> Vec<String> {
    let mut out = Vec::new();
    for seg in segments(word) {
        match single_han(seg) {
            Some(c) => out.extend(decomposer.decompose_char(c).iter().map(char::to_string)),
            None => out.push(seg.to_string()),
        }
    }
    out
}

/// Each word's characters replaced by their decomposition pieces.
pub fn to_rxd_stream(s: &SegmentedSentence, decomposer: &Decomposer<'_>, boundary: &Boundary) -> Vec<String> {
    boundary.assemble(s.words.iter().map(|w| rxd_pieces(w, decomposer)).collect())
}

/// A component of a factored token.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Factor {
    Word,
    Char,
    Radical,
}

/// An ordered, duplicate-free subset of {W, C, R}, always in W, C, R order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FactorSet(Vec<Factor>);

impl FactorSet {
    pub fn new(mut factors: Vec<Factor>) -> Self {
        factors.sort();
        factors.dedup();
        FactorSet(factors)
    }

    pub fn factors(&self) -> &[Factor] {
        &self.0
    }

    pub fn needs_radicals(&self) -> bool {
        self.0.contains(&Factor::Radical)
    }
}

impl fmt::Display for FactorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self
            .0
            .iter()
            .map(|x| match x {
                Factor::Word => "w",
                Factor::Char => "c",
                Factor::Radical => "r",
            })
            .collect();
        f.write_str(&names.join("+"))
    }
}

/// One `|`-joined token per word, e.g. `橋樑|橋+樑|木+木` for W+C+R.
pub fn to_factored_stream(
    s: &SegmentedSentence,
    factors: &FactorSet,
    radicals: Option<&RadicalLookup<'_>>,
) -> Vec<String> {
    s.words
        .iter()
        .map(|word| {
            factors
                .0
                .iter()
                .map(|factor| match factor {
                    Factor::Word => word.clone(),
                    Factor::Char => char_pieces(word).join("+"),
                    Factor::Radical => radicals
                        .expect("radical factor requires a radical lookup")
                        .radical_pieces(word)
                        .join("+"),
                })
                .collect::<Vec<_>>()
                .join("|")
        })
        .collect()
}

/// Output granularity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GranularityMode {
    Word,
    Char,
    Radical,
    /// Level-L decomposition.
    Rxd(u32),
    Factored(FactorSet),
}

impl GranularityMode {
    /// True when the stream has one token per word.
    pub fn one_token_per_word(&self) -> bool {
        matches!(self, GranularityMode::Word | GranularityMode::Factored(_))
    }
}

impl FromStr for GranularityMode {
    type Err = CorpusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.to_ascii_lowercase();
        let err = || CorpusError::UnknownMode(s.to_string());
        match lower.as_str() {
            "w" | "word" => return Ok(GranularityMode::Word),
            "c" | "char" => return Ok(GranularityMode::Char),
            "r" | "radical" => return Ok(GranularityMode::Radical),
            "rxd" => return Ok(GranularityMode::Rxd(1)),
            _ => {}
        }
        if let Some(level) = lower.strip_prefix("rxd") {
            return level.parse().map(GranularityMode::Rxd).map_err(|_| err());
        }
        if lower.contains('+') {
            let factors = lower
                .split('+')
                .map(|f| match f {
                    "w" => Ok(Factor::Word),
                    "c" => Ok(Factor::Char),
                    "r" => Ok(Factor::Radical),
                    _ => Err(err()),
                })
                .collect::<Result<Vec<_>, _>>()?;
            let set = FactorSet::new(factors);
            if set.0.len() < 2 {
                return Err(err());
            }
            return Ok(GranularityMode::Factored(set));
        }
        Err(err())
    }
}

impl fmt::Display for GranularityMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GranularityMode::Word => f.write_str("w"),
            GranularityMode::Char => f.write_str("c"),
            GranularityMode::Radical => f.write_str("r"),
            GranularityMode::Rxd(level) => write!(f, "rxd{level}"),
            GranularityMode::Factored(set) => write!(f, "{set}"),
        }
    }
}

/// A configured stream transformation for one granularity mode.
pub struct Tokenizer<'d> {
    mode: GranularityMode,
    boundary: Boundary,
    decomposer: Decomposer<'d>,
    radicals: RadicalLookup<'d>,
}

impl<'d> Tokenizer<'d> {
    /// `config` supplies region preference and operator emission; for
    /// [`GranularityMode::Rxd`] its level is replaced by the mode's level.
    pub fn new(mode: GranularityMode, boundary: Boundary, dict: &'d IdsDictionary, config: DecompConfig) -> Self {
        let radicals = RadicalLookup::new(dict, config.region_preference());
        let level = match mode {
            GranularityMode::Rxd(level) => level,
            _ => config.level(),
        };
        Tokenizer {
            mode,
            boundary,
            decomposer: Decomposer::new(dict, config.with_level(level)),
            radicals,
        }
    }

    pub fn with_radical_map(mut self, map: HashMap<char, char>) -> Self {
        self.radicals = self.radicals.with_map(map);
        self
    }

    pub fn mode(&self) -> &GranularityMode {
        &self.mode
    }

    pub fn boundary(&self) -> &Boundary {
        &self.boundary
    }

    pub fn decomposer(&self) -> &Decomposer<'d> {
        &self.decomposer
    }

    pub fn tokenize(&self, s: &SegmentedSentence) -> Vec<String> {
        match &self.mode {
            GranularityMode::Word => to_word_stream(s),
            GranularityMode::Char => to_char_stream(s, &self.boundary),
            GranularityMode::Radical => to_radical_stream(s, &self.radicals, &self.boundary),
            GranularityMode::Rxd(_) => to_rxd_stream(s, &self.decomposer, &self.boundary),
            GranularityMode::Factored(set) => to_factored_stream(s, set, Some(&self.radicals)),
        }
    }

    /// Tokenizes one input line and joins the tokens with spaces.
    pub fn tokenize_line(&self, line: &str, delimiter: &Delimiter) -> String {
        self.tokenize(&parse_segmented(line, delimiter)).join(" ")
    }

    /// Number of word spans in a stream this tokenizer produced.
    pub fn span_count<S: AsRef<str>>(&self, tokens: &[S]) -> Option<usize> {
        if self.mode.one_token_per_word() {
            Some(tokens.len())
        } else {
            self.boundary.span_count(tokens)
        }
    }
}

/// Vocabulary size and top-N coverage of a token stream.
#[derive(Debug, Clone, PartialEq)]
pub struct VocabReport {
    pub vocab_size: usize,
    pub top_n: usize,
    pub total_tokens: usize,
    /// Fraction of token instances covered by the `top_n` most frequent types.
    pub coverage: f64,
}

impl fmt::Display for VocabReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vocab_size={}", self.vocab_size)?;
        writeln!(f, "top_n={}", self.top_n)?;
        write!(f, "coverage={:.4}", self.coverage)
    }
}

/// Default top-N for word, character and radical vocabularies.
pub const DEFAULT_TOP_N_WORD: usize = 30_000;
pub const DEFAULT_TOP_N_CHAR: usize = 2_500;
pub const DEFAULT_TOP_N_RADICAL: usize = 1_000;

/// Exact frequency counts; frequency ties are ranked by token order.
pub fn vocab_stats<I, S>(tokens: I, top_n: usize) -> VocabReport
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    let mut counts: HashMap<String, usize> = HashMap::new();
    let mut total = 0usize;
    for token in tokens {
        total += 1;
        let token = token.as_ref();
        match counts.get_mut(token) {
            Some(n) => *n += 1,
            None => {
                counts.insert(token.to_string(), 1);
            }
        }
    }
    let mut ranked: Vec<(&String, &usize)> = counts.iter().collect();
    ranked.sort_by(|a, b| b.1.cmp(a.1).then_with(|| a.0.cmp(b.0)));
    let covered: usize = ranked.iter().take(top_n).map(|(_, n)| **n).sum();
    VocabReport {
        vocab_size: counts.len(),
        top_n,
        total_tokens: total,
        coverage: if total == 0 { 0.0 } else { covered as f64 / total as f64 },
    }
}
