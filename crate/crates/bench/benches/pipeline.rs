use std::fs;
use std::path::PathBuf;

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use rxd_core::{
    bleu, parse_ids_file, parse_segmented, BleuConfig, Boundary, DecompConfig, Decomposer, Delimiter, MalformedPolicy,
    Tokenizer,
};

fn data(rel: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(rel);
    fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn ids_parse(c: &mut Criterion) {
    let text = data("ids_fixture.txt");
    let mut g = c.benchmark_group("ids");
    g.throughput(Throughput::Bytes(text.len() as u64));
    g.bench_function("parse_fixture", |b| {
        b.iter(|| parse_ids_file(black_box(text.as_bytes()), MalformedPolicy::Abort).unwrap())
    });
    g.finish();
}

fn decomposition(c: &mut Criterion) {
    let dict = parse_ids_file(data("ids_fixture.txt").as_bytes(), MalformedPolicy::Abort).unwrap();
    let sample = data("sample/zh.seg");
    let chars: Vec<char> = sample.chars().filter(|c| !c.is_whitespace()).collect();
    let mut g = c.benchmark_group("decompose");
    g.throughput(Throughput::Elements(chars.len() as u64));
    for level in [1u32, 3, 32] {
        // one decomposer per level so the memo is warm after the first pass
        let dec = Decomposer::new(&dict, DecompConfig::new(level));
        g.bench_with_input(BenchmarkId::new("sample_chars", level), &level, |b, _| {
            b.iter(|| dec.decompose_sequence(black_box(chars.iter().copied())))
        });
    }
    g.finish();

    let lines: Vec<_> = sample
        .lines()
        .map(|l| parse_segmented(l, &Delimiter::Whitespace))
        .collect();
    let mut g = c.benchmark_group("tokenize");
    g.throughput(Throughput::Elements(lines.len() as u64));
    for mode in ["c", "rxd3", "w+c+r"] {
        let tok = Tokenizer::new(
            mode.parse().unwrap(),
            Boundary::prefix(),
            &dict,
            DecompConfig::default(),
        );
        g.bench_function(BenchmarkId::new("sample_lines", mode), |b| {
            b.iter(|| lines.iter().map(|s| tok.tokenize(s).len()).sum::<usize>())
        });
    }
    g.finish();
}

fn bleu_corpus(c: &mut Criterion) {
    let refs_text = data("sample/en.tok");
    let refs: Vec<Vec<&str>> = refs_text.lines().map(|l| vec![l]).collect();
    // drop the last token of every line so the hypotheses differ from the references
    let hyps: Vec<String> = refs_text
        .lines()
        .map(|l| l.rsplit_once(' ').map_or(l, |(head, _)| head).to_string())
        .collect();
    let mut g = c.benchmark_group("bleu");
    g.throughput(Throughput::Elements(hyps.len() as u64));
    g.bench_function("sample_10k", |b| {
        b.iter(|| bleu(black_box(&hyps), black_box(&refs), &BleuConfig::default()).unwrap())
    });
    g.finish();
}

criterion_group!(benches, ids_parse, decomposition, bleu_corpus);
criterion_main!(benches);
