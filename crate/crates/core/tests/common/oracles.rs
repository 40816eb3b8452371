//! Deliberately naive reference implementations used to cross-check the
//! production code. Nothing here shares logic with `rxd_core` beyond the
//! parsed dictionary data.

#![allow(dead_code)]

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::Rng;
use rxd_core::{IdsDictionary, IdsTree, RegionTag};

// ---------------------------------------------------------------- decomposition

fn tree_leaves(tree: &IdsTree, out: &mut Vec<char>) {
    match tree {
        IdsTree::Leaf(c) => out.push(*c),
        IdsTree::Node { children, .. } => children.iter().for_each(|ch| tree_leaves(ch, out)),
    }
}

/// One-step rewrite table: character -> pieces of its selected variant.
/// Selection: walk the preference list and take the first variant carrying
/// that tag; otherwise the first variant.
pub fn rewrite_table(dict: &IdsDictionary, preference: &[RegionTag]) -> HashMap<char, Vec<char>> {
    let mut table = HashMap::new();
    for entry in dict.entries() {
        let mut chosen = None;
        'pref: for tag in preference {
            for v in &entry.variants {
                if v.tags.contains(tag) {
                    chosen = Some(&v.tree);
                    break 'pref;
                }
            }
        }
        let tree = chosen.unwrap_or(&entry.variants[0].tree);
        let mut pieces = Vec::new();
        tree_leaves(tree, &mut pieces);
        table.insert(entry.character, pieces);
    }
    table
}

/// Rewrites the whole sequence `level` times. Only meaningful for acyclic
/// dictionaries.
pub fn naive_decompose(table: &HashMap<char, Vec<char>>, input: &[char], level: u32) -> Vec<char> {
    let mut seq = input.to_vec();
    for _ in 0..level {
        let mut next = Vec::new();
        for c in seq {
            match table.get(&c) {
                Some(pieces) => next.extend(pieces.iter().copied()),
                None => next.push(c),
            }
        }
        seq = next;
    }
    seq
}

// ---------------------------------------------------------------- synthetic dictionaries

const BINARY_OPS: [char; 10] = ['⿰', '⿱', '⿴', '⿵', '⿶', '⿷', '⿸', '⿹', '⿺', '⿻'];
const TERNARY_OPS: [char; 2] = ['⿲', '⿳'];
const TAGS: [char; 4] = ['G', 'T', 'J', 'K'];

fn random_expr<R: Rng>(rng: &mut R, leaves: &[char], depth: u32) -> String {
    if depth == 0 || rng.gen_bool(0.45) {
        return leaves.choose(rng).unwrap().to_string();
    }
    let (op, arity) = if rng.gen_bool(0.2) {
        (*TERNARY_OPS.choose(rng).unwrap(), 3)
    } else {
        (*BINARY_OPS.choose(rng).unwrap(), 2)
    };
    let mut s = op.to_string();
    for _ in 0..arity {
        s.push_str(&random_expr(rng, leaves, depth - 1));
    }
    s
}

/// Random acyclic IDS dictionary as file text. Entry `i` only refers to
/// entries with a larger index or to characters outside the dictionary, so
/// no cycles can form. Some entries are self-atomic; some carry region tags.
pub fn synthetic_dictionary<R: Rng>(rng: &mut R) -> String {
    let n = rng.gen_range(1..=24);
    let base = 0x4E00 + rng.gen_range(0..2000) * 8;
    let entry_char = |i: usize| char::from_u32(base + i as u32).unwrap();
    let atoms: Vec<char> = (0..6).map(|i| char::from_u32(0x2E80 + i).unwrap()).collect();

    let mut lines = Vec::new();
    for i in 0..n {
        let c = entry_char(i);
        let mut pool: Vec<char> = ((i + 1)..n).map(entry_char).collect();
        pool.extend(&atoms);
        let mut line = format!("U+{:04X}\t{c}", c as u32);
        if rng.gen_bool(0.1) {
            line.push('\t');
            line.push(c);
        } else {
            for _ in 0..rng.gen_range(1..=3) {
                line.push('\t');
                line.push_str(&random_expr(rng, &pool, 3));
                if rng.gen_bool(0.5) {
                    let k = rng.gen_range(1..=2);
                    let tags: String = TAGS.choose_multiple(rng, k).collect();
                    line.push_str(&format!("[{tags}]"));
                }
            }
        }
        lines.push(line);
    }
    lines.shuffle(rng);
    lines.join("\n") + "\n"
}

// ---------------------------------------------------------------- Dice

fn contains_phrase(sentence: &[String], phrase: &[String]) -> bool {
    if phrase.is_empty() || phrase.len() > sentence.len() {
        return false;
    }
    (0..=sentence.len() - phrase.len()).any(|i| (0..phrase.len()).all(|j| sentence[i + j] == phrase[j]))
}

/// Every (source, target) phrase combination scored by counting sentence
/// presence directly. Returns `(source, target, score)` for co-occurring
/// pairs, sorted by score desc, source, target.
pub fn brute_force_dice(
    source_phrases: &[Vec<String>],
    target_phrases: &[Vec<String>],
    source_corpus: &[Vec<String>],
    target_corpus: &[Vec<String>],
) -> Vec<(String, String, f64)> {
    let mut src: Vec<&Vec<String>> = source_phrases.iter().collect();
    src.sort();
    src.dedup();
    let mut tgt: Vec<&Vec<String>> = target_phrases.iter().collect();
    tgt.sort();
    tgt.dedup();
    let mut out = Vec::new();
    for s in &src {
        for t in &tgt {
            let (mut a, mut b, mut co) = (0usize, 0usize, 0usize);
            for k in 0..source_corpus.len() {
                let in_s = contains_phrase(&source_corpus[k], s);
                let in_t = contains_phrase(&target_corpus[k], t);
                a += in_s as usize;
                b += in_t as usize;
                co += (in_s && in_t) as usize;
            }
            if co > 0 {
                out.push((s.join(" "), t.join(" "), 2.0 * co as f64 / (a + b) as f64));
            }
        }
    }
    out.sort_by(|x, y| y.2.total_cmp(&x.2).then(x.0.cmp(&y.0)).then(x.1.cmp(&y.1)));
    out
}

// ---------------------------------------------------------------- BLEU

fn count_gram(tokens: &[String], gram: &[String]) -> u64 {
    if gram.len() > tokens.len() {
        return 0;
    }
    tokens.windows(gram.len()).filter(|w| *w == gram).count() as u64
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleBleu {
    pub matches: Vec<u64>,
    pub totals: Vec<u64>,
    pub hyp_len: u64,
    pub ref_len: u64,
    pub brevity_penalty: f64,
    pub per_n: Vec<f64>,
}

/// Corpus BLEU by enumerating each hypothesis n-gram position and clipping
/// against the best single reference.
pub fn brute_force_bleu(hyps: &[String], refs: &[Vec<String>], max_n: usize, lowercase: bool) -> OracleBleu {
    let tok = |s: &str| -> Vec<String> {
        s.split_whitespace()
            .map(|t| if lowercase { t.to_lowercase() } else { t.to_string() })
            .collect()
    };
    let mut matches = vec![0u64; max_n];
    let mut totals = vec![0u64; max_n];
    let (mut c, mut r) = (0u64, 0u64);
    for (h, rs) in hyps.iter().zip(refs) {
        let h = tok(h);
        let rs: Vec<Vec<String>> = rs.iter().map(|x| tok(x)).collect();
        c += h.len() as u64;
        let mut best: Option<usize> = None;
        for x in &rs {
            let d = x.len().abs_diff(h.len());
            best = match best {
                None => Some(x.len()),
                Some(b) if d < b.abs_diff(h.len()) || (d == b.abs_diff(h.len()) && x.len() < b) => Some(x.len()),
                keep => keep,
            };
        }
        r += best.unwrap_or(0) as u64;
        for n in 1..=max_n {
            if h.len() < n {
                continue;
            }
            let mut seen: Vec<&[String]> = Vec::new();
            for gram in h.windows(n) {
                totals[n - 1] += 1;
                if seen.contains(&gram) {
                    continue;
                }
                seen.push(gram);
                let in_hyp = count_gram(&h, gram);
                let in_refs = rs.iter().map(|x| count_gram(x, gram)).max().unwrap_or(0);
                matches[n - 1] += in_hyp.min(in_refs);
            }
        }
    }
    let bp = if c == 0 {
        0.0
    } else if c >= r {
        1.0
    } else {
        (1.0 - r as f64 / c as f64).exp()
    };
    let mut per_n = Vec::new();
    let mut logs = 0.0;
    let mut dead = false;
    for n in 0..max_n {
        let p = if totals[n] == 0 {
            0.0
        } else {
            matches[n] as f64 / totals[n] as f64
        };
        if p == 0.0 {
            dead = true;
        } else {
            logs += p.ln();
        }
        per_n.push(if dead { 0.0 } else { bp * (logs / (n + 1) as f64).exp() });
    }
    OracleBleu {
        matches,
        totals,
        hyp_len: c,
        ref_len: r,
        brevity_penalty: bp,
        per_n,
    }
}

/// A tiny random corpus over a six-word vocabulary (mixed case) with 1–4
/// references per hypothesis.
pub fn random_bleu_corpus<R: Rng>(rng: &mut R) -> (Vec<String>, Vec<Vec<String>>) {
    const WORDS: [&str; 7] = ["a", "b", "c", "A", "the", "cat", "The"];
    let sentence = |rng: &mut R| -> String {
        let len = rng.gen_range(0..8);
        (0..len)
            .map(|_| *WORDS.choose(rng).unwrap())
            .collect::<Vec<_>>()
            .join(" ")
    };
    let n = rng.gen_range(1..=12);
    let mut hyps = Vec::new();
    let mut refs = Vec::new();
    for _ in 0..n {
        hyps.push(sentence(rng));
        let k = rng.gen_range(1..=4);
        refs.push((0..k).map(|_| sentence(rng)).collect());
    }
    (hyps, refs)
}
