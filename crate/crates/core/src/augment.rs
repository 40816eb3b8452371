//! Appends bilingual MWE pairs to a parallel corpus as extra sentence pairs.

use std::io::{self, BufRead, Write};

use thiserror::Error;

use crate::corpus::{parse_segmented, to_rxd_stream, Boundary, Delimiter};
use crate::decompose::Decomposer;
use crate::mwe::BiMwePair;

#[derive(Debug, Error)]
pub enum AugmentError {
    #[error("parallel corpus sides differ in length: {source_lines} source vs {target_lines} target lines")]
    LengthMismatch { source_lines: usize, target_lines: usize },
    #[error("replication must be at least 1")]
    ZeroReplication,
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Which side of the corpus holds Chinese text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ChineseSide {
    #[default]
    Source,
    Target,
}

/// Decomposition applied to the Chinese side of appended pairs.
pub struct PairDecomposition<'a, 'd> {
    pub decomposer: &'a Decomposer<'d>,
    pub boundary: Boundary,
    /// Also append the undecomposed pair next to the decomposed one.
    pub keep_plain: bool,
}

pub struct AugmentPlan<'a, 'd> {
    pub pairs: Vec<BiMwePair>,
    pub replication: usize,
    pub chinese_side: ChineseSide,
    pub decomp: Option<PairDecomposition<'a, 'd>>,
}

impl<'a, 'd> AugmentPlan<'a, 'd> {
    pub fn new(pairs: Vec<BiMwePair>) -> Self {
        AugmentPlan {
            pairs,
            replication: 1,
            chinese_side: ChineseSide::Source,
            decomp: None,
        }
    }

    pub fn with_replication(mut self, replication: usize) -> Self {
        self.replication = replication;
        self
    }

    pub fn with_chinese_side(mut self, side: ChineseSide) -> Self {
        self.chinese_side = side;
        self
    }

    pub fn with_decomposition(mut self, decomp: PairDecomposition<'a, 'd>) -> Self {
        self.decomp = Some(decomp);
        self
    }

    fn active_decomp(&self) -> Option<&PairDecomposition<'a, 'd>> {
        // level 0 is the identity, so it means no decomposition at all
        self.decomp.as_ref().filter(|d| d.decomposer.config().level() > 0)
    }

    /// The (source, target) lines appended for one replication round.
    pub fn appended_lines(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        for pair in &self.pairs {
            let plain = (pair.source.clone(), pair.target.clone());
            match self.active_decomp() {
                None => out.push(plain),
                Some(d) => {
                    let decompose = |text: &str| {
                        let sentence = parse_segmented(text, &Delimiter::Whitespace);
                        to_rxd_stream(&sentence, d.decomposer, &d.boundary).join(" ")
                    };
                    let decomposed = match self.chinese_side {
                        ChineseSide::Source => (decompose(&pair.source), pair.target.clone()),
                        ChineseSide::Target => (pair.source.clone(), decompose(&pair.target)),
                    };
                    if d.keep_plain {
                        out.push(plain);
                    }
                    out.push(decomposed);
                }
            }
        }
        out
    }

    /// Number of lines appended to each side.
    pub fn appended_count(&self) -> usize {
        let per_pair = match self.active_decomp() {
            Some(d) if d.keep_plain => 2,
            _ => 1,
        };
        self.replication * self.pairs.len() * per_pair
    }
}

/// Returns the original lines followed by the appended pairs, `replication`
/// times over.
pub fn augment_corpus<S: AsRef<str>>(
    source: &[S],
    target: &[S],
    plan: &AugmentPlan<'_, '_>,
) -> Result<(Vec<String>, Vec<String>), AugmentError> {
    if plan.replication == 0 {
        return Err(AugmentError::ZeroReplication);
    }
    if source.len() != target.len() {
        return Err(AugmentError::LengthMismatch {
            source_lines: source.len(),
            target_lines: target.len(),
        });
    }
    let mut out_source: Vec<String> = source.iter().map(|s| s.as_ref().to_string()).collect();
    let mut out_target: Vec<String> = target.iter().map(|s| s.as_ref().to_string()).collect();
    let appended = plan.appended_lines();
    for _ in 0..plan.replication {
        for (s, t) in &appended {
            out_source.push(s.clone());
            out_target.push(t.clone());
        }
    }
    Ok((out_source, out_target))
}

/// Counts of a streamed augmentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AugmentSummary {
    pub original_lines: usize,
    pub appended_lines: usize,
}

/// Streaming form of [`augment_corpus`]: original bytes are copied through
/// unchanged, including a missing final newline when nothing is appended.
pub fn augment_streams<R1, R2, W1, W2>(
    mut source: R1,
    mut target: R2,
    mut out_source: W1,
    mut out_target: W2,
    plan: &AugmentPlan<'_, '_>,
) -> Result<AugmentSummary, AugmentError>
where
    R1: BufRead,
    R2: BufRead,
    W1: Write,
    W2: Write,
{
    if plan.replication == 0 {
        return Err(AugmentError::ZeroReplication);
    }
    let mut src_line = Vec::new();
    let mut tgt_line = Vec::new();
    let (mut n_source, mut n_target) = (0usize, 0usize);
    let (mut src_open, mut tgt_open) = (false, false);
    loop {
        src_line.clear();
        tgt_line.clear();
        let a = source.read_until(b'\n', &mut src_line)?;
        let b = target.read_until(b'\n', &mut tgt_line)?;
        n_source += usize::from(a > 0);
        n_target += usize::from(b > 0);
        if a == 0 || b == 0 {
            if a + b > 0 {
                // drain the longer side for an accurate count
                while source.read_until(b'\n', &mut src_line)? > 0 {
                    n_source += 1;
                }
                while target.read_until(b'\n', &mut tgt_line)? > 0 {
                    n_target += 1;
                }
            }
            break;
        }
        out_source.write_all(&src_line)?;
        out_target.write_all(&tgt_line)?;
        src_open = !src_line.ends_with(b"\n");
        tgt_open = !tgt_line.ends_with(b"\n");
    }
    if n_source != n_target {
        return Err(AugmentError::LengthMismatch {
            source_lines: n_source,
            target_lines: n_target,
        });
    }
    let appended = plan.appended_lines();
    if !appended.is_empty() {
        if src_open {
            out_source.write_all(b"\n")?;
        }
        if tgt_open {
            out_target.write_all(b"\n")?;
        }
    }
    for _ in 0..plan.replication {
        for (s, t) in &appended {
            writeln!(out_source, "{s}")?;
            writeln!(out_target, "{t}")?;
        }
    }
    out_source.flush()?;
    out_target.flush()?;
    Ok(AugmentSummary {
        original_lines: n_source,
        appended_lines: appended.len() * plan.replication,
    })
}
