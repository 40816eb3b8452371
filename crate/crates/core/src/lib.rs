//! Corpus preprocessing for Chinese–English machine translation.
//!
//! * [`ids`] loads Ideographic Description Sequence dictionaries.
//! * [`decompose`] expands characters into radical/stroke pieces at a chosen
//!   depth.
//! * [`corpus`] turns segmented sentences into word, character, radical,
//!   decomposed or factored token streams, and reports vocabulary coverage.
//! * [`mwe`] extracts multi-word expressions by POS pattern and pairs them
//!   across languages.
//! * [`augment`] appends scored phrase pairs to a parallel corpus.
//! * [`bleu`] scores translations with cumulative multi-reference BLEU.
//!
//! ```
//! use rxd_core::{DecompConfig, Decomposer, IdsDictionary};
//!
//! let dict: IdsDictionary = "U+6A4B\t橋\t⿰木喬\n".parse().unwrap();
//! let decomposer = Decomposer::new(&dict, DecompConfig::new(1));
//! assert_eq!(decomposer.decompose_char('橋').to_spaced(), "木 喬");
//! ```

pub mod augment;
pub mod bleu;
pub mod corpus;
pub mod decompose;
pub mod han;
pub mod ids;
pub mod mwe;

pub use augment::{augment_corpus, augment_streams, AugmentError, AugmentPlan, ChineseSide, PairDecomposition};
pub use bleu::{bleu, BleuConfig, BleuError, BleuScore};
pub use corpus::{
    parse_segmented, to_char_stream, to_factored_stream, to_radical_stream, to_rxd_stream, to_word_stream, vocab_stats,
    Boundary, CorpusError, Delimiter, Factor, FactorSet, GranularityMode, RadicalLookup, SegmentedSentence, Tokenizer,
    VocabReport,
};
pub use decompose::{
    decompose_char, decompose_sequence, select_variant, ConfigError, DecompConfig, Decomposer, PieceSequence,
};
pub use ids::{
    parse_ids_expression, parse_ids_file, render_ids_expression, CodePoint, ExprError, IdsDictionary, IdsEntry,
    IdsError, IdsTree, MalformedPolicy, RegionTag, StructOperator, Variant,
};
pub use mwe::{
    extract_mwes, pair_and_score, parse_patterns, parse_tagged_corpus, prune, BiMwePair, MatchKey, MweCandidate,
    MweError, MwePattern, TagMatcher, TaggedToken,
};
