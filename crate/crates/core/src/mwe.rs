//! Multi-word expression extraction and bilingual pairing.
//!
//! Monolingual candidates come from POS-pattern matching over a tagged
//! corpus. Source and target candidates are then paired over a sentence
//! aligned corpus and scored with the Dice coefficient of their sentence
//! occurrence sets:
//!
//! ```text
//! dice(s, t) = 2 * |occ(s) ∩ occ(t)| / (|occ(s)| + |occ(t)|)
//! ```
//!
//! where `occ(x)` is the set of sentence-pair indices whose side contains
//! `x` as a contiguous word sequence.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

/// Default pruning threshold for bilingual pairs.
pub const DEFAULT_THRESHOLD: f64 = 0.85;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MweError {
    #[error("line {line}, column {column}: malformed token {token:?} (expected surface|POS or surface|POS|lemma)")]
    MalformedToken { line: usize, column: usize, token: String },
    #[error("pattern line {line}: {reason}")]
    MalformedPattern { line: usize, reason: String },
    #[error("parallel corpus sides differ in length: {source_lines} source vs {target_lines} target lines")]
    LengthMismatch { source_lines: usize, target_lines: usize },
    #[error("TSV line {line}: {reason}")]
    MalformedTsv { line: usize, reason: String },
}

/// A token with its POS tag and optional lemma.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TaggedToken {
    pub surface: String,
    pub pos: String,
    pub lemma: Option<String>,
}

impl TaggedToken {
    /// The lemma when present, otherwise the surface form.
    pub fn lemma_or_surface(&self) -> &str {
        self.lemma.as_deref().unwrap_or(&self.surface)
    }
}

pub type TaggedSentence = Vec<TaggedToken>;

/// Parses one `surface|POS[|lemma]` line. `line_no` is 1-based and only used
/// for error reporting; columns are 1-based character positions.
pub fn parse_tagged_line(line: &str, line_no: usize) -> Result<TaggedSentence, MweError> {
    let mut tokens = Vec::new();
    let mut column = 1;
    let mut rest = line;
    loop {
        let skipped = rest.len() - rest.trim_start().len();
        column += rest[..skipped].chars().count();
        rest = &rest[skipped..];
        if rest.is_empty() {
            break;
        }
        let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
        let raw = &rest[..end];
        let fields: Vec<&str> = raw.split('|').collect();
        let malformed = || MweError::MalformedToken {
            line: line_no,
            column,
            token: raw.to_string(),
        };
        if !(2..=3).contains(&fields.len()) || fields[0].is_empty() || fields[1].is_empty() {
            return Err(malformed());
        }
        tokens.push(TaggedToken {
            surface: fields[0].to_string(),
            pos: fields[1].to_string(),
            lemma: fields.get(2).filter(|l| !l.is_empty()).map(|l| l.to_string()),
        });
        column += raw.chars().count();
        rest = &rest[end..];
    }
    Ok(tokens)
}

/// One sentence per line.
pub fn parse_tagged_corpus(text: &str) -> Result<Vec<TaggedSentence>, MweError> {
    text.lines()
        .enumerate()
        .map(|(i, line)| parse_tagged_line(line, i + 1))
        .collect()
}

/// Which token field identifies a word when matching phrases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MatchKey {
    #[default]
    Surface,
    Lemma,
}

/// Words of a tagged sentence under the given key.
pub fn sentence_words(sentence: &[TaggedToken], key: MatchKey) -> Vec<String> {
    sentence
        .iter()
        .map(|t| match key {
            MatchKey::Surface => t.surface.clone(),
            MatchKey::Lemma => t.lemma_or_surface().to_string(),
        })
        .collect()
}

/// A POS tag test: exact match, or prefix match when written with a
/// trailing `*`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TagMatcher {
    Exact(String),
    Prefix(String),
}

impl TagMatcher {
    pub fn matches(&self, pos: &str) -> bool {
        match self {
            TagMatcher::Exact(tag) => pos == tag,
            TagMatcher::Prefix(prefix) => pos.starts_with(prefix.as_str()),
        }
    }
}

impl fmt::Display for TagMatcher {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TagMatcher::Exact(tag) => f.write_str(tag),
            TagMatcher::Prefix(prefix) => write!(f, "{prefix}*"),
        }
    }
}

/// A named sequence of tag matchers, e.g. `adj_noun: JJ+NN*`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MwePattern {
    pub name: String,
    pub tags: Vec<TagMatcher>,
}

impl MwePattern {
    pub fn len(&self) -> usize {
        self.tags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tags.is_empty()
    }

    pub fn matches(&self, window: &[TaggedToken]) -> bool {
        window.len() == self.tags.len() && self.tags.iter().zip(window).all(|(m, t)| m.matches(&t.pos))
    }
}

impl FromStr for MwePattern {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (name, body) = s.split_once(':').ok_or("expected `name: TAG+TAG...`")?;
        let name = name.trim();
        if name.is_empty() {
            return Err("empty pattern name".into());
        }
        let tags = body
            .trim()
            .split('+')
            .map(|t| {
                let t = t.trim();
                match t.strip_suffix('*') {
                    _ if t.is_empty() => Err("empty tag".to_string()),
                    Some(prefix) => Ok(TagMatcher::Prefix(prefix.to_string())),
                    None => Ok(TagMatcher::Exact(t.to_string())),
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        if tags.len() < 2 {
            return Err(format!("pattern {name:?} has fewer than 2 tags"));
        }
        Ok(MwePattern {
            name: name.to_string(),
            tags,
        })
    }
}

impl fmt::Display for MwePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.name)?;
        for (i, tag) in self.tags.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            write!(f, "{tag}")?;
        }
        Ok(())
    }
}

/// Parses a pattern file: one `name: TAG+TAG...` per line, `#` comments.
pub fn parse_patterns(text: &str) -> Result<Vec<MwePattern>, MweError> {
    text.lines()
        .enumerate()
        .filter(|(_, line)| !line.trim_start().starts_with('#') && !line.trim().is_empty())
        .map(|(i, line)| {
            line.parse()
                .map_err(|reason| MweError::MalformedPattern { line: i + 1, reason })
        })
        .collect()
}

/// A monolingual MWE candidate.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MweCandidate {
    pub words: Vec<String>,
    pub frequency: usize,
    /// The first pattern, in pattern-file order, that matched this phrase.
    pub pattern_name: String,
}

impl MweCandidate {
    pub fn surface(&self) -> String {
        self.words.join(" ")
    }
}

#[derive(Default)]
struct CandidateCounts {
    // words -> (frequency, lowest matching pattern index)
    map: HashMap<Vec<String>, (usize, usize)>,
}

impl CandidateCounts {
    fn add(&mut self, words: Vec<String>, pattern: usize) {
        let slot = self.map.entry(words).or_insert((0, pattern));
        slot.0 += 1;
        slot.1 = slot.1.min(pattern);
    }

    fn merge(mut self, other: CandidateCounts) -> CandidateCounts {
        for (words, (freq, pattern)) in other.map {
            let slot = self.map.entry(words).or_insert((0, pattern));
            slot.0 += freq;
            slot.1 = slot.1.min(pattern);
        }
        self
    }
}

fn count_sentence(sentence: &[TaggedToken], patterns: &[MwePattern], key: MatchKey) -> CandidateCounts {
    let mut counts = CandidateCounts::default();
    let words = sentence_words(sentence, key);
    let mut window_lengths: Vec<usize> = Vec::new();
    for start in 0..sentence.len() {
        window_lengths.clear();
        for (idx, pattern) in patterns.iter().enumerate() {
            let end = start + pattern.len();
            if end > sentence.len() || !pattern.matches(&sentence[start..end]) {
                continue;
            }
            // a window matched by several patterns is one occurrence
            if window_lengths.contains(&pattern.len()) {
                let slot = counts.map.get_mut(&words[start..end]).expect("window already counted");
                slot.1 = slot.1.min(idx);
                continue;
            }
            window_lengths.push(pattern.len());
            counts.add(words[start..end].to_vec(), idx);
        }
    }
    counts
}

/// Collects every window of every pattern, drops phrases seen fewer than
/// `min_freq` times, and sorts by frequency (descending) then surface.
pub fn extract_mwes(
    corpus: &[TaggedSentence],
    patterns: &[MwePattern],
    min_freq: usize,
    key: MatchKey,
) -> Vec<MweCandidate> {
    let counts = corpus
        .par_iter()
        .map(|sentence| count_sentence(sentence, patterns, key))
        .reduce(CandidateCounts::default, CandidateCounts::merge);
    let mut out: Vec<MweCandidate> = counts
        .map
        .into_iter()
        .filter(|(_, (freq, _))| *freq >= min_freq.max(1))
        .map(|(words, (frequency, pattern))| MweCandidate {
            words,
            frequency,
            pattern_name: patterns[pattern].name.clone(),
        })
        .collect();
    out.sort_by(|a, b| {
        b.frequency
            .cmp(&a.frequency)
            .then_with(|| a.surface().cmp(&b.surface()))
    });
    out
}

/// Writes candidates as `surface<TAB>frequency<TAB>pattern` lines.
pub fn write_candidates_tsv(cands: &[MweCandidate]) -> String {
    let mut out = String::new();
    for c in cands {
        out.push_str(&format!("{}\t{}\t{}\n", c.surface(), c.frequency, c.pattern_name));
    }
    out
}

/// Reads candidate TSV; the frequency and pattern columns are optional.
pub fn parse_candidates_tsv(text: &str) -> Result<Vec<MweCandidate>, MweError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let mut fields = line.split('\t');
        let surface = fields.next().unwrap_or_default();
        let words: Vec<String> = surface.split_whitespace().map(str::to_string).collect();
        if words.is_empty() {
            return Err(MweError::MalformedTsv {
                line: i + 1,
                reason: "empty phrase".into(),
            });
        }
        let frequency = match fields.next() {
            Some(f) => f.trim().parse().map_err(|_| MweError::MalformedTsv {
                line: i + 1,
                reason: format!("bad frequency {f:?}"),
            })?,
            None => 1,
        };
        let pattern_name = fields.next().unwrap_or_default().to_string();
        out.push(MweCandidate {
            words,
            frequency,
            pattern_name,
        });
    }
    Ok(out)
}

/// A scored source/target phrase pair.
#[derive(Debug, Clone, PartialEq)]
pub struct BiMwePair {
    pub source: String,
    pub target: String,
    pub score: f64,
}

/// Dice coefficient of two occurrence counts and their overlap.
pub fn dice(co: usize, occ_source: usize, occ_target: usize) -> f64 {
    if occ_source + occ_target == 0 {
        return 0.0;
    }
    2.0 * co as f64 / (occ_source + occ_target) as f64
}

/// Finds which phrases occur in each sentence.
struct PhraseIndex<'a> {
    ids: HashMap<&'a [String], usize>,
    lengths: Vec<usize>,
}

impl<'a> PhraseIndex<'a> {
    fn new(phrases: &'a [Vec<String>]) -> Self {
        let mut ids = HashMap::new();
        let mut lengths = Vec::new();
        for (i, p) in phrases.iter().enumerate() {
            ids.entry(p.as_slice()).or_insert(i);
            if !lengths.contains(&p.len()) {
                lengths.push(p.len());
            }
        }
        PhraseIndex { ids, lengths }
    }

    fn occurring(&self, sentence: &[String]) -> Vec<usize> {
        let mut found = Vec::new();
        for &n in &self.lengths {
            if n == 0 || n > sentence.len() {
                continue;
            }
            for window in sentence.windows(n) {
                if let Some(&id) = self.ids.get(window) {
                    found.push(id);
                }
            }
        }
        found.sort_unstable();
        found.dedup();
        found
    }
}

fn unique_phrases(cands: &[MweCandidate]) -> Vec<Vec<String>> {
    let mut seen = std::collections::HashSet::new();
    cands
        .iter()
        .filter(|c| seen.insert(c.words.clone()))
        .map(|c| c.words.clone())
        .collect()
}

struct Cooccurrence {
    occ_source: Vec<usize>,
    occ_target: Vec<usize>,
    co: HashMap<(usize, usize), usize>,
}

impl Cooccurrence {
    fn new(n_source: usize, n_target: usize) -> Self {
        Cooccurrence {
            occ_source: vec![0; n_source],
            occ_target: vec![0; n_target],
            co: HashMap::new(),
        }
    }

    fn merge(mut self, other: Cooccurrence) -> Cooccurrence {
        for (a, b) in self.occ_source.iter_mut().zip(other.occ_source) {
            *a += b;
        }
        for (a, b) in self.occ_target.iter_mut().zip(other.occ_target) {
            *a += b;
        }
        for (k, v) in other.co {
            *self.co.entry(k).or_insert(0) += v;
        }
        self
    }
}

/// Scores every co-occurring (source, target) candidate pair with Dice over
/// sentence occurrences. Pairs that never co-occur are omitted. Output is
/// sorted by score (descending), then source, then target.
pub fn pair_and_score<S: AsRef<[String]> + Sync>(
    source_cands: &[MweCandidate],
    target_cands: &[MweCandidate],
    source_corpus: &[S],
    target_corpus: &[S],
) -> Result<Vec<BiMwePair>, MweError> {
    if source_corpus.len() != target_corpus.len() {
        return Err(MweError::LengthMismatch {
            source_lines: source_corpus.len(),
            target_lines: target_corpus.len(),
        });
    }
    let source_phrases = unique_phrases(source_cands);
    let target_phrases = unique_phrases(target_cands);
    let source_index = PhraseIndex::new(&source_phrases);
    let target_index = PhraseIndex::new(&target_phrases);

    let stats = source_corpus
        .par_iter()
        .zip(target_corpus.par_iter())
        .fold(
            || Cooccurrence::new(source_phrases.len(), target_phrases.len()),
            |mut acc, (src, tgt)| {
                let s_ids = source_index.occurring(src.as_ref());
                let t_ids = target_index.occurring(tgt.as_ref());
                for &s in &s_ids {
                    acc.occ_source[s] += 1;
                }
                for &t in &t_ids {
                    acc.occ_target[t] += 1;
                }
                for &s in &s_ids {
                    for &t in &t_ids {
                        *acc.co.entry((s, t)).or_insert(0) += 1;
                    }
                }
                acc
            },
        )
        .reduce(
            || Cooccurrence::new(source_phrases.len(), target_phrases.len()),
            Cooccurrence::merge,
        );

    let mut pairs: Vec<BiMwePair> = stats
        .co
        .iter()
        .map(|(&(s, t), &co)| BiMwePair {
            source: source_phrases[s].join(" "),
            target: target_phrases[t].join(" "),
            score: dice(co, stats.occ_source[s], stats.occ_target[t]),
        })
        .collect();
    sort_pairs(&mut pairs);
    Ok(pairs)
}

/// Score descending, then source and target ascending.
pub fn sort_pairs(pairs: &mut [BiMwePair]) {
    pairs.sort_by(|a, b| {
        b.score
            .total_cmp(&a.score)
            .then_with(|| a.source.cmp(&b.source))
            .then_with(|| a.target.cmp(&b.target))
    });
}

/// Keeps exactly the pairs scoring at least `threshold`, in order.
pub fn prune(pairs: &[BiMwePair], threshold: f64) -> Vec<BiMwePair> {
    pairs.iter().filter(|p| p.score >= threshold).cloned().collect()
}

/// Writes `source<TAB>target<TAB>score` lines with 4-decimal scores.
pub fn write_pairs_tsv(pairs: &[BiMwePair]) -> String {
    let mut out = String::new();
    for p in pairs {
        out.push_str(&format!("{}\t{}\t{:.4}\n", p.source, p.target, p.score));
    }
    out
}

pub fn parse_pairs_tsv(text: &str) -> Result<Vec<BiMwePair>, MweError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let err = |reason: String| MweError::MalformedTsv { line: i + 1, reason };
        let fields: Vec<&str> = line.split('\t').collect();
        let [source, target, score] = fields[..] else {
            return Err(err(format!("expected 3 tab-separated fields, found {}", fields.len())));
        };
        let score: f64 = score.trim().parse().map_err(|_| err(format!("bad score {score:?}")))?;
        if !(0.0..=1.0).contains(&score) {
            return Err(err(format!("score {score} outside [0, 1]")));
        }
        if source.trim().is_empty() || target.trim().is_empty() {
            return Err(err("empty phrase".into()));
        }
        out.push(BiMwePair {
            source: source.to_string(),
            target: target.to_string(),
            score,
        });
    }
    Ok(out)
}
