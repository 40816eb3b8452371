//! `rxd`: radical-level decomposition, MWE augmentation and BLEU scoring for
//! MT corpora. Every subcommand reads files or stdin and writes stdout, so
//! stages compose as a shell pipeline.

mod config;
mod error;

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use rxd_core::augment::augment_streams;
use rxd_core::corpus::{parse_radical_map, DEFAULT_TOP_N_CHAR, DEFAULT_TOP_N_RADICAL, DEFAULT_TOP_N_WORD};
use rxd_core::ids::parse_region_list;
use rxd_core::mwe::{
    parse_candidates_tsv, parse_pairs_tsv, sentence_words, write_candidates_tsv, write_pairs_tsv, DEFAULT_THRESHOLD,
};
use rxd_core::{
    bleu, extract_mwes, pair_and_score, parse_ids_file, parse_patterns, parse_tagged_corpus, prune, vocab_stats,
    AugmentPlan, BleuConfig, Boundary, ChineseSide, DecompConfig, Decomposer, Delimiter, GranularityMode,
    IdsDictionary, MalformedPolicy, MatchKey, PairDecomposition, RegionTag, Tokenizer,
};

use config::PipelineConfig;
use error::CliError;

#[derive(Parser, Debug)]
#[command(
    name = "rxd",
    version,
    about = "Chinese character decomposition and MWE augmentation for MT corpora"
)]
struct Cli {
    /// Optional key=value config file; flags override its values.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decompose every character of each input line into pieces.
    Decompose(DecomposeArgs),
    /// Turn a segmented corpus into word/char/radical/decomposed/factored tokens.
    Tokenize(TokenizeArgs),
    /// Extract monolingual MWE candidates from a POS-tagged corpus.
    ExtractMwe(ExtractArgs),
    /// Pair source and target candidates over a parallel corpus and score them.
    PairMwe(PairArgs),
    /// Keep scored pairs at or above a threshold.
    PruneMwe(PruneArgs),
    /// Append scored pairs to a parallel corpus.
    Augment(AugmentArgs),
    /// Vocabulary size and top-N coverage of a token stream.
    Stats(StatsArgs),
    /// Cumulative multi-reference BLEU.
    Bleu(BleuArgs),
}

#[derive(Args, Debug, Clone)]
struct DictArgs {
    /// IDS dictionary file.
    #[arg(long, value_name = "FILE")]
    ids: Option<PathBuf>,
    /// Region preference order, e.g. `G` or `T,G`.
    #[arg(long, value_name = "TAGS")]
    region: Option<String>,
    /// Emit structural operators along with component pieces.
    #[arg(long)]
    emit_operators: bool,
    /// Skip malformed dictionary lines instead of failing.
    #[arg(long)]
    skip_malformed: bool,
}

#[derive(Args, Debug)]
struct DecomposeArgs {
    /// Input file (default: stdin).
    input: Option<PathBuf>,
    #[command(flatten)]
    dict: DictArgs,
    /// Decomposition level.
    #[arg(long)]
    level: Option<u32>,
}

#[derive(Args, Debug)]
struct TokenizeArgs {
    /// Segmented input file (default: stdin).
    input: Option<PathBuf>,
    /// w, c, r, rxd1..rxdN, or a +-joined tuple such as w+c+r.
    #[arg(long, default_value = "c")]
    mode: String,
    #[command(flatten)]
    dict: DictArgs,
    /// Level for --mode rxd (overrides a level in the mode name).
    #[arg(long)]
    level: Option<u32>,
    /// Word boundary encoding: prefix (▁), sep (<wb>) or none.
    #[arg(long)]
    boundary: Option<String>,
    /// Word delimiter in the input (default: whitespace).
    #[arg(long)]
    delimiter: Option<String>,
    /// CHAR<TAB>RADICAL table consulted before the dictionary.
    #[arg(long, value_name = "FILE")]
    radical_map: Option<PathBuf>,
    /// Worker threads.
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args, Debug)]
struct ExtractArgs {
    /// Tagged corpus (default: stdin).
    input: Option<PathBuf>,
    /// Pattern file (`name: TAG+TAG`).
    #[arg(long, value_name = "FILE")]
    patterns: PathBuf,
    #[arg(long)]
    min_freq: Option<usize>,
    /// Match on lemmas instead of surface forms.
    #[arg(long)]
    lemma: bool,
}

#[derive(Args, Debug)]
struct PairArgs {
    /// Source-side candidate TSV.
    #[arg(long, value_name = "FILE")]
    src_cands: PathBuf,
    /// Target-side candidate TSV.
    #[arg(long, value_name = "FILE")]
    tgt_cands: PathBuf,
    /// Source side of the parallel corpus.
    #[arg(long, value_name = "FILE")]
    src: PathBuf,
    /// Target side of the parallel corpus.
    #[arg(long, value_name = "FILE")]
    tgt: PathBuf,
    /// Corpus tokens are `surface|POS[|lemma]`.
    #[arg(long)]
    tagged: bool,
    /// Match on lemmas (requires --tagged).
    #[arg(long, requires = "tagged")]
    lemma: bool,
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args, Debug)]
struct PruneArgs {
    /// Scored pair TSV (default: stdin).
    input: Option<PathBuf>,
    #[arg(long)]
    threshold: Option<f64>,
}

#[derive(Args, Debug)]
struct AugmentArgs {
    #[arg(long, value_name = "FILE")]
    src: PathBuf,
    #[arg(long, value_name = "FILE")]
    tgt: PathBuf,
    /// Scored pair TSV.
    #[arg(long, value_name = "FILE")]
    pairs: PathBuf,
    #[arg(long, value_name = "FILE")]
    out_src: PathBuf,
    #[arg(long, value_name = "FILE")]
    out_tgt: PathBuf,
    #[arg(long)]
    replication: Option<usize>,
    /// Decompose the Chinese side of appended pairs at this level.
    #[arg(long)]
    decomp_level: Option<u32>,
    /// Keep the plain pair next to its decomposed copy.
    #[arg(long, value_name = "BOOL")]
    keep_plain: Option<bool>,
    /// Which side is Chinese: src or tgt.
    #[arg(long)]
    zh_side: Option<String>,
    #[arg(long)]
    boundary: Option<String>,
    #[command(flatten)]
    dict: DictArgs,
}

#[derive(Args, Debug)]
struct StatsArgs {
    /// Token stream (default: stdin).
    input: Option<PathBuf>,
    #[arg(long)]
    top_n: Option<usize>,
    /// Picks the default top-N: word (30000), char (2500) or radical (1000).
    #[arg(long, default_value = "word")]
    granularity: String,
    /// Drop `▁` prefixes and `<wb>` tokens before counting.
    #[arg(long)]
    strip_boundary: bool,
}

#[derive(Args, Debug)]
struct BleuArgs {
    /// Hypothesis file.
    hypothesis: PathBuf,
    /// One to four reference files.
    #[arg(long, required = true, num_args = 1..=4, value_name = "FILE")]
    refs: Vec<PathBuf>,
    #[arg(long)]
    max_n: Option<usize>,
    /// Lowercase before scoring (the default).
    #[arg(long, conflicts_with = "cased")]
    lc: bool,
    /// Case-sensitive scoring.
    #[arg(long)]
    cased: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            // one line: clap's message up to its usage block
            let msg = e.to_string();
            let reason: Vec<&str> = msg
                .lines()
                .take_while(|l| !l.starts_with("Usage:"))
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with("tip:"))
                .collect();
            eprintln!("{}", reason.join(" "));
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("rxd: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let config = match &cli.config {
        Some(path) => PipelineConfig::load(path)?,
        None => PipelineConfig::default(),
    };
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    match cli.command {
        Command::Decompose(args) => decompose(args, &config, &mut out)?,
        Command::Tokenize(args) => tokenize(args, &config, &mut out)?,
        Command::ExtractMwe(args) => extract(args, &config, &mut out)?,
        Command::PairMwe(args) => pair(args, &config, &mut out)?,
        Command::PruneMwe(args) => prune_cmd(args, &config, &mut out)?,
        Command::Augment(args) => augment(args, &config)?,
        Command::Stats(args) => stats(args, &config, &mut out)?,
        Command::Bleu(args) => bleu_cmd(args, &config, &mut out)?,
    }
    out.flush()?;
    Ok(())
}

fn open_input(path: Option<&Path>) -> Result<Box<dyn BufRead>, CliError> {
    Ok(match path {
        Some(p) => Box::new(BufReader::new(
            File::open(p).map_err(|e| CliError::Data(format!("{}: {e}", p.display())))?,
        )),
        None => Box::new(BufReader::new(io::stdin())),
    })
}

fn read_text(path: Option<&Path>) -> Result<String, CliError> {
    let mut text = String::new();
    open_input(path)?.read_to_string(&mut text).map_err(|e| {
        CliError::Data(format!(
            "{}: {e}",
            path.map_or("stdin".into(), |p| p.display().to_string())
        ))
    })?;
    Ok(text)
}

fn thread_pool(jobs: Option<usize>, config: &PipelineConfig) -> Result<rayon::ThreadPool, CliError> {
    let jobs = config.resolve(jobs, "jobs", 0usize)?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {jobs} workers: {e}")))
}

fn load_dictionary(args: &DictArgs, config: &PipelineConfig, required: bool) -> Result<IdsDictionary, CliError> {
    let path = match (&args.ids, config.raw("ids")) {
        (Some(p), _) => Some(p.clone()),
        (None, Some(p)) => Some(PathBuf::from(p)),
        (None, None) if required => return Err(CliError::Usage("an IDS dictionary is required (--ids)".into())),
        (None, None) => None,
    };
    let Some(path) = path else {
        return Ok(IdsDictionary::default());
    };
    let skip = args.skip_malformed || config.get::<bool>("skip_malformed")?.unwrap_or(false);
    let policy = if skip {
        MalformedPolicy::Skip
    } else {
        MalformedPolicy::Abort
    };
    let file = File::open(&path).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
    let dict =
        parse_ids_file(BufReader::new(file), policy).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
    if dict.skipped_lines() > 0 {
        eprintln!("rxd: skipped {} malformed dictionary lines", dict.skipped_lines());
    }
    if dict.duplicate_lines() > 0 {
        eprintln!(
            "rxd: {} duplicate dictionary lines (last one kept)",
            dict.duplicate_lines()
        );
    }
    Ok(dict)
}

fn decomp_config(args: &DictArgs, config: &PipelineConfig, level: u32) -> Result<DecompConfig, CliError> {
    let region = match (&args.region, config.raw("region")) {
        (Some(r), _) => r.clone(),
        (None, Some(r)) => r.to_string(),
        (None, None) => "G".to_string(),
    };
    let preference: Vec<RegionTag> =
        parse_region_list(&region).ok_or_else(|| CliError::Usage(format!("invalid region list {region:?}")))?;
    let emit = args.emit_operators || config.get::<bool>("emit_operators")?.unwrap_or(false);
    DecompConfig::new(level)
        .with_region_preference(preference)
        .map(|c| c.with_operators(emit))
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn boundary(flag: Option<&str>, config: &PipelineConfig) -> Result<Boundary, CliError> {
    let raw = flag.or(config.raw("boundary")).unwrap_or("prefix");
    raw.parse()
        .map_err(|e: rxd_core::CorpusError| CliError::Usage(e.to_string()))
}

fn decompose(args: DecomposeArgs, config: &PipelineConfig, out: &mut impl Write) -> Result<(), CliError> {
    let dict = load_dictionary(&args.dict, config, true)?;
    let level = config.resolve(args.level, "level", 1)?;
    let decomposer = Decomposer::new(&dict, decomp_config(&args.dict, config, level)?);
    for line in open_input(args.input.as_deref())?.lines() {
        let line = line?;
        let pieces = decomposer.decompose_sequence(line.chars().filter(|c| !c.is_whitespace()));
        writeln!(out, "{}", pieces.to_spaced())?;
    }
    report_cycles(&decomposer);
    Ok(())
}

fn report_cycles(decomposer: &Decomposer<'_>) {
    if decomposer.cycle_warnings() > 0 {
        eprintln!(
            "rxd: decomposition stopped at {} cyclic dictionary references",
            decomposer.cycle_warnings()
        );
    }
}

const CHUNK_LINES: usize = 8192;

fn tokenize(args: TokenizeArgs, config: &PipelineConfig, out: &mut impl Write) -> Result<(), CliError> {
    let mut mode: GranularityMode = args
        .mode
        .parse()
        .map_err(|e: rxd_core::CorpusError| CliError::Usage(e.to_string()))?;
    // --level wins, then a level spelled in the mode (rxd3), then the config file
    if let GranularityMode::Rxd(named) = mode {
        let level = match args.level {
            Some(l) => l,
            None if args.mode.len() > 3 => named,
            None => config.resolve(None, "level", named)?,
        };
        mode = GranularityMode::Rxd(level);
    }
    let needs_dict = match &mode {
        GranularityMode::Rxd(_) => true,
        GranularityMode::Radical => args.radical_map.is_none(),
        GranularityMode::Factored(set) => set.needs_radicals() && args.radical_map.is_none(),
        _ => false,
    };
    let dict = load_dictionary(&args.dict, config, needs_dict)?;
    let boundary = boundary(args.boundary.as_deref(), config)?;
    let delimiter = match args.delimiter.as_deref().or(config.raw("delimiter")) {
        Some(d) => Delimiter::literal(d),
        None => Delimiter::Whitespace,
    };
    let level = config.resolve(args.level, "level", 1)?;
    let mut tokenizer = Tokenizer::new(mode, boundary, &dict, decomp_config(&args.dict, config, level)?);
    if let Some(path) = &args.radical_map {
        let map = parse_radical_map(&read_text(Some(path))?)?;
        tokenizer = tokenizer.with_radical_map(map);
    }
    let pool = thread_pool(args.jobs, config)?;

    let mut lines = open_input(args.input.as_deref())?.lines();
    let mut chunk: Vec<String> = Vec::with_capacity(CHUNK_LINES);
    loop {
        chunk.clear();
        for line in lines.by_ref().take(CHUNK_LINES) {
            chunk.push(line?);
        }
        if chunk.is_empty() {
            break;
        }
        let rendered: Vec<String> = pool.install(|| {
            chunk
                .par_iter()
                .map(|l| tokenizer.tokenize_line(l, &delimiter))
                .collect()
        });
        for line in rendered {
            writeln!(out, "{line}")?;
        }
    }
    report_cycles(tokenizer.decomposer());
    Ok(())
}

fn extract(args: ExtractArgs, config: &PipelineConfig, out: &mut impl Write) -> Result<(), CliError> {
    let patterns = parse_patterns(&read_text(Some(&args.patterns))?)?;
    if patterns.is_empty() {
        return Err(CliError::Usage("pattern file contains no patterns".into()));
    }
    let min_freq = config.resolve(args.min_freq, "min_freq", 1usize)?;
    if min_freq == 0 {
        return Err(CliError::Usage("--min-freq must be at least 1".into()));
    }
    let corpus = parse_tagged_corpus(&read_text(args.input.as_deref())?)?;
    let key = if args.lemma { MatchKey::Lemma } else { MatchKey::Surface };
    let cands = extract_mwes(&corpus, &patterns, min_freq, key);
    out.write_all(write_candidates_tsv(&cands).as_bytes())?;
    Ok(())
}

fn corpus_side(path: &Path, tagged: bool, key: MatchKey) -> Result<Vec<Vec<String>>, CliError> {
    let text = read_text(Some(path))?;
    if tagged {
        Ok(parse_tagged_corpus(&text)?
            .iter()
            .map(|s| sentence_words(s, key))
            .collect())
    } else {
        Ok(text
            .lines()
            .map(|l| l.split_whitespace().map(str::to_string).collect())
            .collect())
    }
}

fn pair(args: PairArgs, config: &PipelineConfig, out: &mut impl Write) -> Result<(), CliError> {
    let src_cands = parse_candidates_tsv(&read_text(Some(&args.src_cands))?)?;
    let tgt_cands = parse_candidates_tsv(&read_text(Some(&args.tgt_cands))?)?;
    let key = if args.lemma { MatchKey::Lemma } else { MatchKey::Surface };
    let src = corpus_side(&args.src, args.tagged, key)?;
    let tgt = corpus_side(&args.tgt, args.tagged, key)?;
    let pool = thread_pool(args.jobs, config)?;
    let pairs = pool.install(|| pair_and_score(&src_cands, &tgt_cands, &src, &tgt))?;
    out.write_all(write_pairs_tsv(&pairs).as_bytes())?;
    Ok(())
}

fn prune_cmd(args: PruneArgs, config: &PipelineConfig, out: &mut impl Write) -> Result<(), CliError> {
    let threshold = config.resolve(args.threshold, "threshold", DEFAULT_THRESHOLD)?;
    if !(0.0..=1.0).contains(&threshold) {
        return Err(CliError::Usage(format!(
            "--threshold must be in [0, 1], got {threshold}"
        )));
    }
    let pairs = parse_pairs_tsv(&read_text(args.input.as_deref())?)?;
    out.write_all(write_pairs_tsv(&prune(&pairs, threshold)).as_bytes())?;
    Ok(())
}

fn augment(args: AugmentArgs, config: &PipelineConfig) -> Result<(), CliError> {
    let replication = config.resolve(args.replication, "replication", 1usize)?;
    if replication == 0 {
        return Err(CliError::Usage("--replication must be at least 1".into()));
    }
    let side = match args.zh_side.as_deref().or(config.raw("zh_side")).unwrap_or("src") {
        "src" | "source" => ChineseSide::Source,
        "tgt" | "target" => ChineseSide::Target,
        other => return Err(CliError::Usage(format!("--zh-side must be src or tgt, got {other:?}"))),
    };
    let decomp_level = match args.decomp_level {
        Some(l) => Some(l),
        None => config.get::<u32>("decomp_level")?,
    };
    let keep_plain = config.resolve(args.keep_plain, "keep_plain", true)?;
    let boundary = boundary(args.boundary.as_deref(), config)?;
    let pairs = parse_pairs_tsv(&read_text(Some(&args.pairs))?)?;

    let dict = load_dictionary(&args.dict, config, decomp_level.is_some_and(|l| l > 0))?;
    let decomposer = match decomp_level {
        Some(level) => Some(Decomposer::new(&dict, decomp_config(&args.dict, config, level)?)),
        None => None,
    };
    let mut plan = AugmentPlan::new(pairs)
        .with_replication(replication)
        .with_chinese_side(side);
    if let Some(decomposer) = &decomposer {
        plan = plan.with_decomposition(PairDecomposition {
            decomposer,
            boundary,
            keep_plain,
        });
    }

    let create = |p: &Path| -> Result<BufWriter<File>, CliError> {
        Ok(BufWriter::new(
            File::create(p).map_err(|e| CliError::Data(format!("{}: {e}", p.display())))?,
        ))
    };
    augment_streams(
        open_input(Some(&args.src))?,
        open_input(Some(&args.tgt))?,
        create(&args.out_src)?,
        create(&args.out_tgt)?,
        &plan,
    )?;
    Ok(())
}

fn stats(args: StatsArgs, config: &PipelineConfig, out: &mut impl Write) -> Result<(), CliError> {
    let (key, default) = match args.granularity.as_str() {
        "word" | "w" => ("top_n_word", DEFAULT_TOP_N_WORD),
        "char" | "c" => ("top_n_char", DEFAULT_TOP_N_CHAR),
        "radical" | "r" => ("top_n_radical", DEFAULT_TOP_N_RADICAL),
        other => {
            return Err(CliError::Usage(format!(
                "--granularity must be word, char or radical, got {other:?}"
            )))
        }
    };
    let top_n = match args.top_n {
        Some(n) => n,
        None => match config.get::<usize>("top_n")? {
            Some(n) => n,
            None => config.resolve(None, key, default)?,
        },
    };
    let text = read_text(args.input.as_deref())?;
    let mut tokens: Vec<&str> = text.split_whitespace().collect();
    if args.strip_boundary {
        tokens = tokens
            .into_iter()
            .filter(|t| *t != Boundary::DEFAULT_SEPARATOR)
            .map(|t| t.strip_prefix(Boundary::DEFAULT_PREFIX).unwrap_or(t))
            .filter(|t| !t.is_empty())
            .collect();
    }
    writeln!(out, "{}", vocab_stats(tokens, top_n))?;
    Ok(())
}

fn bleu_cmd(args: BleuArgs, config: &PipelineConfig, out: &mut impl Write) -> Result<(), CliError> {
    let max_n = config.resolve(args.max_n, "max_n", 4usize)?;
    if !(1..=4).contains(&max_n) {
        return Err(CliError::Usage(format!("--max-n must be between 1 and 4, got {max_n}")));
    }
    let case_insensitive = if args.cased {
        false
    } else if args.lc {
        true
    } else {
        config.get::<bool>("lc")?.unwrap_or(true)
    };
    let hyps: Vec<String> = read_text(Some(&args.hypothesis))?.lines().map(str::to_string).collect();
    let sets = args
        .refs
        .iter()
        .map(|p| Ok(read_text(Some(p))?.lines().map(str::to_string).collect()))
        .collect::<Result<Vec<Vec<String>>, CliError>>()?;
    let refs = rxd_core::bleu::transpose_references(&sets, hyps.len())?;
    let score = bleu(
        &hyps,
        &refs,
        &BleuConfig {
            max_n,
            case_insensitive,
        },
    )?;
    writeln!(out, "{score}")?;
    Ok(())
}
