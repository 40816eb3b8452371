mod common;

use common::oracles::brute_force_dice;
use proptest::prelude::*;
use rxd_core::mwe::{parse_pairs_tsv, sentence_words, write_pairs_tsv, DEFAULT_THRESHOLD};
use rxd_core::{
    extract_mwes, pair_and_score, parse_patterns, parse_tagged_corpus, prune, BiMwePair, MatchKey, MweCandidate,
    MweError,
};

struct Side {
    words: Vec<Vec<String>>,
    cands: Vec<MweCandidate>,
}

fn side(tagged: &str, patterns: &str, min_freq: usize) -> Side {
    let corpus = parse_tagged_corpus(tagged).unwrap();
    let patterns = parse_patterns(patterns).unwrap();
    Side {
        words: corpus.iter().map(|s| sentence_words(s, MatchKey::Surface)).collect(),
        cands: extract_mwes(&corpus, &patterns, min_freq, MatchKey::Surface),
    }
}

fn toy() -> (Side, Side) {
    (
        side(
            &common::read_data("toy/zh.tag"),
            &common::read_data("patterns/zh.patterns"),
            1,
        ),
        side(
            &common::read_data("toy/en.tag"),
            &common::read_data("patterns/en.patterns"),
            1,
        ),
    )
}

fn oracle_tsv(src: &Side, tgt: &Side) -> String {
    let sp: Vec<Vec<String>> = src.cands.iter().map(|c| c.words.clone()).collect();
    let tp: Vec<Vec<String>> = tgt.cands.iter().map(|c| c.words.clone()).collect();
    brute_force_dice(&sp, &tp, &src.words, &tgt.words)
        .iter()
        .map(|(s, t, score)| format!("{s}\t{t}\t{score:.4}\n"))
        .collect()
}

#[test]
fn hand_counted_extraction() {
    let corpus = parse_tagged_corpus("golf|NN club|NN\ngolf|NN club|NN\ngolf|NN club|NN\n").unwrap();
    let nn = parse_patterns("nn: NN+NN").unwrap();
    let got = extract_mwes(&corpus, &nn, 2, MatchKey::Surface);
    assert_eq!(got.len(), 1);
    assert_eq!((got[0].surface(), got[0].frequency), ("golf club".to_string(), 3));
    assert!(extract_mwes(&corpus, &nn, 4, MatchKey::Surface).is_empty());
    let jj = parse_patterns("jj: JJ+NN").unwrap();
    assert!(extract_mwes(&corpus, &jj, 1, MatchKey::Surface).is_empty());
}

#[test]
fn toy_scores_match_brute_force() {
    let (zh, en) = toy();
    assert_eq!(zh.words.len(), 10);
    let pairs = pair_and_score(&zh.cands, &en.cands, &zh.words, &en.words).unwrap();
    assert!(!pairs.is_empty());
    assert_eq!(write_pairs_tsv(&pairs), oracle_tsv(&zh, &en));
    let golf = pairs
        .iter()
        .find(|p| p.source == "高尔夫球 俱乐部" && p.target == "golf club")
        .unwrap();
    // zh in 3 sentences, en in 2, together in 2
    assert!((golf.score - 0.8).abs() < 1e-12);
}

#[test]
fn dice_is_symmetric() {
    let (zh, en) = toy();
    let forward = pair_and_score(&zh.cands, &en.cands, &zh.words, &en.words).unwrap();
    let backward = pair_and_score(&en.cands, &zh.cands, &en.words, &zh.words).unwrap();
    assert_eq!(forward.len(), backward.len());
    for p in &forward {
        let q = backward
            .iter()
            .find(|q| q.source == p.target && q.target == p.source)
            .unwrap();
        assert_eq!(p.score, q.score);
    }
}

#[test]
fn perfect_association_scores_one() {
    let (zh, en) = toy();
    let pairs = pair_and_score(&zh.cands, &en.cands, &zh.words, &en.words).unwrap();
    let tennis = pairs
        .iter()
        .find(|p| p.source == "网球 比赛" && p.target == "tennis match")
        .unwrap();
    assert_eq!(tennis.score, 1.0);
    for p in &pairs {
        assert!(p.score > 0.0 && p.score <= 1.0);
    }
}

#[test]
fn unequal_sides_are_rejected() {
    let (zh, en) = toy();
    let err = pair_and_score(&zh.cands, &en.cands, &zh.words, &en.words[..9]).unwrap_err();
    assert!(matches!(
        err,
        MweError::LengthMismatch {
            source_lines: 10,
            target_lines: 9
        }
    ));
}

#[test]
fn prune_keeps_constructed_boundary_pairs() {
    let mk = |s: &str, t: &str, score| BiMwePair {
        source: s.into(),
        target: t.into(),
        score,
    };
    let pairs = vec![
        mk("高尔夫球 俱乐部", "golf club", 0.98),
        mk("数据 分析", "data analysis", 0.84),
        mk("机器 翻译", "machine translation", 0.85),
    ];
    let kept = prune(&pairs, DEFAULT_THRESHOLD);
    assert_eq!(kept, vec![pairs[0].clone(), pairs[2].clone()]);
    assert_eq!(prune(&pairs, 0.0), pairs);
}

#[test]
fn sample_pipeline_finds_the_golf_club() {
    let zh = side(
        &common::read_data("sample/zh.tag"),
        &common::read_data("patterns/zh.patterns"),
        5,
    );
    let en = side(
        &common::read_data("sample/en.tag"),
        &common::read_data("patterns/en.patterns"),
        5,
    );
    let pairs = pair_and_score(&zh.cands, &en.cands, &zh.words, &en.words).unwrap();
    let kept = prune(&pairs, DEFAULT_THRESHOLD);
    let has = |s: &str, t: &str| kept.iter().any(|p| p.source == s && p.target == t);
    assert!(has("高尔夫球 俱乐部", "golf club"));
    assert!(has("机器 翻译", "machine translation"));
    assert!(!has("数据 分析", "data analysis"));
    let tsv = write_pairs_tsv(&kept);
    assert_eq!(write_pairs_tsv(&parse_pairs_tsv(&tsv).unwrap()), tsv);
}

fn arb_pairs() -> impl Strategy<Value = Vec<BiMwePair>> {
    prop::collection::vec(("[a-c]{1,3}", "[x-z]{1,3}", 0.0f64..=1.0), 0..30).prop_map(|v| {
        v.into_iter()
            .map(|(source, target, score)| BiMwePair { source, target, score })
            .collect()
    })
}

proptest! {
    #[test]
    fn prune_properties(pairs in arb_pairs(), t in 0.0f64..=1.0) {
        let kept = prune(&pairs, t);
        prop_assert!(kept.len() <= pairs.len());
        prop_assert!(kept.iter().all(|p| p.score >= t));
        prop_assert_eq!(prune(&kept, t), kept.clone());
        let expected: Vec<BiMwePair> = pairs.iter().filter(|p| p.score >= t).cloned().collect();
        prop_assert_eq!(kept, expected);
    }

    #[test]
    fn min_freq_is_monotone(
        lines in prop::collection::vec(prop::collection::vec((0usize..4, 0usize..3), 1..8), 1..12),
        lo in 1usize..4,
        extra in 0usize..4,
    ) {
        const WORDS: [&str; 4] = ["golf", "club", "data", "tennis"];
        const TAGS: [&str; 3] = ["NN", "JJ", "VB"];
        let text: String = lines
            .iter()
            .map(|l| l.iter().map(|&(w, t)| format!("{}|{}", WORDS[w], TAGS[t])).collect::<Vec<_>>().join(" ") + "\n")
            .collect();
        let corpus = parse_tagged_corpus(&text).unwrap();
        let patterns = parse_patterns("a: NN+NN\nb: JJ+NN\nc: NN+NN+NN\nd: V*+NN").unwrap();
        let low = extract_mwes(&corpus, &patterns, lo, MatchKey::Surface);
        let high = extract_mwes(&corpus, &patterns, lo + extra, MatchKey::Surface);
        prop_assert!(high.len() <= low.len());
        for c in &high {
            prop_assert!(low.iter().any(|d| d.words == c.words));
        }
    }

    #[test]
    fn random_corpora_match_brute_force(
        src in prop::collection::vec(prop::collection::vec(0usize..4, 0..7), 1..10),
        tgt_seed in prop::collection::vec(prop::collection::vec(0usize..4, 0..7), 10),
    ) {
        let vocab = |i: usize, side: &str| format!("{side}{i}");
        let src_words: Vec<Vec<String>> = src.iter().map(|l| l.iter().map(|&i| vocab(i, "s")).collect()).collect();
        let tgt_words: Vec<Vec<String>> = tgt_seed[..src.len()]
            .iter()
            .map(|l| l.iter().map(|&i| vocab(i, "t")).collect())
            .collect();
        let cand = |words: Vec<&str>| MweCandidate {
            words: words.into_iter().map(String::from).collect(),
            frequency: 1,
            pattern_name: "p".into(),
        };
        let sc = vec![cand(vec!["s0", "s1"]), cand(vec!["s2"]), cand(vec!["s1", "s1", "s3"]), cand(vec!["s3", "s0"])];
        let tc = vec![cand(vec!["t0", "t1"]), cand(vec!["t3"]), cand(vec!["t2", "t2"])];
        let got = pair_and_score(&sc, &tc, &src_words, &tgt_words).unwrap();
        let sp: Vec<Vec<String>> = sc.iter().map(|c| c.words.clone()).collect();
        let tp: Vec<Vec<String>> = tc.iter().map(|c| c.words.clone()).collect();
        let expected = brute_force_dice(&sp, &tp, &src_words, &tgt_words);
        prop_assert_eq!(got.len(), expected.len());
        for (p, (s, t, score)) in got.iter().zip(&expected) {
            prop_assert_eq!((&p.source, &p.target, p.score), (s, t, *score));
        }
    }
}
