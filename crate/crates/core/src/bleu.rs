//! Corpus-level BLEU with up to four references per hypothesis.
//!
//! Clipped n-gram matches use, for every n-gram, the maximum count found in
//! any single reference. The brevity penalty compares the total hypothesis
//! length with the summed lengths of the closest references (ties go to the
//! shorter reference). Scores are cumulative: BLEU-n is the brevity penalty
//! times the geometric mean of precisions 1..=n. There is no smoothing, so a
//! zero precision at any order up to n makes BLEU-n zero.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

pub const MAX_ORDER: usize = 4;
pub const MAX_REFERENCES: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BleuError {
    #[error("no hypotheses to score")]
    EmptyHypothesisSet,
    #[error("hypothesis {index} has {found} references (expected 1 to {MAX_REFERENCES})")]
    ReferenceCountMismatch { index: usize, found: usize },
    #[error("{hypotheses} hypotheses but {references} reference lines in reference set {set}")]
    ReferenceLengthMismatch {
        set: usize,
        hypotheses: usize,
        references: usize,
    },
    #[error("max order must be between 1 and {MAX_ORDER}, got {0}")]
    InvalidOrder(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BleuConfig {
    pub max_n: usize,
    pub case_insensitive: bool,
}

impl Default for BleuConfig {
    fn default() -> Self {
        BleuConfig {
            max_n: MAX_ORDER,
            case_insensitive: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BleuScore {
    /// Cumulative BLEU for orders 1..=max_n.
    pub per_n: Vec<f64>,
    pub brevity_penalty: f64,
    /// Clipped precision per order.
    pub precisions: Vec<f64>,
    pub matches: Vec<u64>,
    pub totals: Vec<u64>,
    pub hypothesis_length: u64,
    pub reference_length: u64,
}

impl BleuScore {
    /// Cumulative score at order `n` (1-based).
    pub fn at(&self, n: usize) -> f64 {
        self.per_n[n - 1]
    }
}

impl fmt::Display for BleuScore {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.per_n.iter().enumerate() {
            write!(f, "BLEU-{}={:.4} ", i + 1, s)?;
        }
        write!(f, "BP={:.4}", self.brevity_penalty)
    }
}

#[derive(Debug, Clone)]
struct Counts {
    matches: [u64; MAX_ORDER],
    totals: [u64; MAX_ORDER],
    hyp_len: u64,
    ref_len: u64,
}

impl Counts {
    fn zero() -> Self {
        Counts {
            matches: [0; MAX_ORDER],
            totals: [0; MAX_ORDER],
            hyp_len: 0,
            ref_len: 0,
        }
    }

    fn add(mut self, other: Counts) -> Counts {
        for n in 0..MAX_ORDER {
            self.matches[n] += other.matches[n];
            self.totals[n] += other.totals[n];
        }
        self.hyp_len += other.hyp_len;
        self.ref_len += other.ref_len;
        self
    }
}

fn ngram_counts<'a>(tokens: &'a [&'a str], n: usize) -> HashMap<&'a [&'a str], u64> {
    let mut counts = HashMap::new();
    if n <= tokens.len() {
        for gram in tokens.windows(n) {
            *counts.entry(gram).or_insert(0) += 1;
        }
    }
    counts
}

/// Length of the reference closest to `hyp_len`; ties go to the shorter one.
pub fn closest_reference_length(hyp_len: usize, ref_lens: &[usize]) -> usize {
    ref_lens
        .iter()
        .copied()
        .min_by_key(|&r| (r.abs_diff(hyp_len), r))
        .unwrap_or(0)
}

fn sentence_counts(hyp: &str, refs: &[&str], config: &BleuConfig) -> Counts {
    let lower = |s: &str| {
        if config.case_insensitive {
            s.to_lowercase()
        } else {
            s.to_string()
        }
    };
    let hyp = lower(hyp);
    let refs: Vec<String> = refs.iter().map(|r| lower(r)).collect();
    let hyp_tokens: Vec<&str> = hyp.split_whitespace().collect();
    let ref_tokens: Vec<Vec<&str>> = refs.iter().map(|r| r.split_whitespace().collect()).collect();

    let mut counts = Counts::zero();
    counts.hyp_len = hyp_tokens.len() as u64;
    let ref_lens: Vec<usize> = ref_tokens.iter().map(Vec::len).collect();
    counts.ref_len = closest_reference_length(hyp_tokens.len(), &ref_lens) as u64;

    for n in 1..=config.max_n {
        let hyp_grams = ngram_counts(&hyp_tokens, n);
        let mut max_ref: HashMap<&[&str], u64> = HashMap::new();
        for r in &ref_tokens {
            for (gram, c) in ngram_counts(r, n) {
                let slot = max_ref.entry(gram).or_insert(0);
                *slot = (*slot).max(c);
            }
        }
        counts.totals[n - 1] = hyp_tokens.len().saturating_sub(n - 1) as u64;
        counts.matches[n - 1] = hyp_grams
            .iter()
            .map(|(gram, c)| (*c).min(max_ref.get(gram).copied().unwrap_or(0)))
            .sum();
    }
    counts
}

/// Brevity penalty for total hypothesis length `c` and reference length `r`.
pub fn brevity_penalty(c: u64, r: u64) -> f64 {
    if c == 0 {
        0.0
    } else if c >= r {
        1.0
    } else {
        (1.0 - r as f64 / c as f64).exp()
    }
}

/// Scores hypotheses against their references. `references[i]` holds the
/// 1 to 4 references of `hypotheses[i]`.
pub fn bleu<H, R>(hypotheses: &[H], references: &[Vec<R>], config: &BleuConfig) -> Result<BleuScore, BleuError>
where
    H: AsRef<str> + Sync,
    R: AsRef<str> + Sync,
{
    if !(1..=MAX_ORDER).contains(&config.max_n) {
        return Err(BleuError::InvalidOrder(config.max_n));
    }
    if hypotheses.is_empty() {
        return Err(BleuError::EmptyHypothesisSet);
    }
    if references.len() != hypotheses.len() {
        return Err(BleuError::ReferenceCountMismatch {
            index: references.len().min(hypotheses.len()),
            found: 0,
        });
    }
    if let Some((index, refs)) = references
        .iter()
        .enumerate()
        .find(|(_, refs)| !(1..=MAX_REFERENCES).contains(&refs.len()))
    {
        return Err(BleuError::ReferenceCountMismatch {
            index,
            found: refs.len(),
        });
    }

    let counts = hypotheses
        .par_iter()
        .zip(references.par_iter())
        .map(|(hyp, refs)| {
            let refs: Vec<&str> = refs.iter().map(AsRef::as_ref).collect();
            sentence_counts(hyp.as_ref(), &refs, config)
        })
        .reduce(Counts::zero, Counts::add);

    let max_n = config.max_n;
    let precisions: Vec<f64> = (0..max_n)
        .map(|n| {
            if counts.totals[n] == 0 {
                0.0
            } else {
                counts.matches[n] as f64 / counts.totals[n] as f64
            }
        })
        .collect();
    let bp = brevity_penalty(counts.hyp_len, counts.ref_len);
    let mut per_n = Vec::with_capacity(max_n);
    let mut log_sum = 0.0;
    let mut zero = false;
    for (i, p) in precisions.iter().enumerate() {
        if *p == 0.0 {
            zero = true;
        } else {
            log_sum += p.ln();
        }
        per_n.push(if zero {
            0.0
        } else {
            (bp * (log_sum / (i + 1) as f64).exp()).min(1.0)
        });
    }

    Ok(BleuScore {
        per_n,
        brevity_penalty: bp,
        precisions,
        matches: counts.matches[..max_n].to_vec(),
        totals: counts.totals[..max_n].to_vec(),
        hypothesis_length: counts.hyp_len,
        reference_length: counts.ref_len,
    })
}

/// Turns per-file reference lists into per-hypothesis reference lists.
pub fn transpose_references<R: Clone>(sets: &[Vec<R>], hypotheses: usize) -> Result<Vec<Vec<R>>, BleuError> {
    if sets.is_empty() || sets.len() > MAX_REFERENCES {
        return Err(BleuError::ReferenceCountMismatch {
            index: 0,
            found: sets.len(),
        });
    }
    for (set, lines) in sets.iter().enumerate() {
        if lines.len() != hypotheses {
            return Err(BleuError::ReferenceLengthMismatch {
                set,
                hypotheses,
                references: lines.len(),
            });
        }
    }
    Ok((0..hypotheses)
        .map(|i| sets.iter().map(|set| set[i].clone()).collect())
        .collect())
}
