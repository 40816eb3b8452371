//! Level-L character decomposition.
//!
//! Level 0 is the character itself. Level L rewrites every piece of the
//! level L-1 sequence that has a dictionary entry by the leaves of its
//! selected variant. Characters without an entry, and entries whose selected
//! variant is the character itself, are atomic.

use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex, RwLock};

use thiserror::Error;

use crate::ids::{IdsDictionary, IdsEntry, IdsTree, RegionTag};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("region tag {0} listed more than once in preference order")]
    DuplicateRegion(RegionTag),
}

/// Decomposition settings.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DecompConfig {
    level: u32,
    region_preference: Vec<RegionTag>,
    emit_operators: bool,
}

impl Default for DecompConfig {
    fn default() -> Self {
        DecompConfig {
            level: 1,
            region_preference: vec![RegionTag::G],
            emit_operators: false,
        }
    }
}

impl DecompConfig {
    pub fn new(level: u32) -> Self {
        DecompConfig {
            level,
            ..Default::default()
        }
    }

    pub fn with_level(mut self, level: u32) -> Self {
        self.level = level;
        self
    }

    pub fn with_region_preference(mut self, preference: Vec<RegionTag>) -> Result<Self, ConfigError> {
        for (i, tag) in preference.iter().enumerate() {
            if preference[..i].contains(tag) {
                return Err(ConfigError::DuplicateRegion(*tag));
            }
        }
        self.region_preference = preference;
        Ok(self)
    }

    pub fn with_operators(mut self, emit: bool) -> Self {
        self.emit_operators = emit;
        self
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn region_preference(&self) -> &[RegionTag] {
        &self.region_preference
    }

    pub fn emit_operators(&self) -> bool {
        self.emit_operators
    }
}

/// An ordered run of component characters.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PieceSequence(pub Vec<char>);

impl PieceSequence {
    pub fn as_slice(&self) -> &[char] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_vec(self) -> Vec<char> {
        self.0
    }

    /// Pieces joined by single spaces.
    pub fn to_spaced(&self) -> String {
        let mut out = String::with_capacity(self.0.len() * 4);
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.push(*c);
        }
        out
    }
}

impl std::ops::Deref for PieceSequence {
    type Target = [char];

    fn deref(&self) -> &[char] {
        &self.0
    }
}

impl IntoIterator for PieceSequence {
    type Item = char;
    type IntoIter = std::vec::IntoIter<char>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

/// Picks the variant to expand: the first variant carrying the
/// highest-priority preferred tag present in the entry, otherwise the first
/// variant.
pub fn select_variant<'e>(entry: &'e IdsEntry, preference: &[RegionTag]) -> &'e IdsTree {
    &preference
        .iter()
        .find_map(|tag| entry.variants.iter().find(|v| v.has_tag(*tag)))
        .unwrap_or(&entry.variants[0])
        .tree
}

/// Expansion depth of a character under the selected-variant graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Reach {
    /// Every expansion path ends after at most this many levels.
    Finite(u32),
    /// Some expansion path runs into a cycle.
    Cyclic,
}

type Memo = HashMap<(char, u32), Arc<[char]>>;

/// A decomposer bound to one dictionary and configuration.
///
/// Results for characters that cannot reach a cycle are memoized by
/// (character, effective level), where the effective level is the requested
/// level clamped to the character's expansion depth. The memo is shared and
/// safe to use from several threads.
pub struct Decomposer<'d> {
    dict: &'d IdsDictionary,
    config: DecompConfig,
    reach: Mutex<HashMap<char, Reach>>,
    memo: RwLock<Memo>,
    cycle_warnings: AtomicUsize,
}

impl<'d> Decomposer<'d> {
    pub fn new(dict: &'d IdsDictionary, config: DecompConfig) -> Self {
        Decomposer {
            dict,
            config,
            reach: Mutex::new(HashMap::new()),
            memo: RwLock::new(HashMap::new()),
            cycle_warnings: AtomicUsize::new(0),
        }
    }

    pub fn config(&self) -> &DecompConfig {
        &self.config
    }

    pub fn dictionary(&self) -> &'d IdsDictionary {
        self.dict
    }

    /// How many times expansion stopped at a character already being
    /// expanded.
    pub fn cycle_warnings(&self) -> usize {
        self.cycle_warnings.load(Ordering::Relaxed)
    }

    /// The one-level expansion of `c`, or None when `c` is atomic.
    fn expansion(&self, c: char) -> Option<&'d IdsTree> {
        let entry = self.dict.get(c)?;
        let tree = select_variant(entry, &self.config.region_preference);
        match tree.as_leaf() {
            Some(leaf) if leaf == c => None,
            _ => Some(tree),
        }
    }

    fn step(&self, tree: &IdsTree) -> Vec<char> {
        if self.config.emit_operators {
            tree.pieces()
        } else {
            tree.leaves()
        }
    }

    fn reach(&self, c: char) -> Reach {
        let mut table = self.reach.lock().expect("reach table poisoned");
        if let Some(r) = table.get(&c) {
            return *r;
        }
        let mut on_path = Vec::new();
        self.compute_reach(c, &mut table, &mut on_path)
    }

    fn compute_reach(&self, c: char, table: &mut HashMap<char, Reach>, on_path: &mut Vec<char>) -> Reach {
        if let Some(r) = table.get(&c) {
            return *r;
        }
        if on_path.contains(&c) {
            return Reach::Cyclic;
        }
        let Some(tree) = self.expansion(c) else {
            table.insert(c, Reach::Finite(0));
            return Reach::Finite(0);
        };
        on_path.push(c);
        let mut result = Reach::Finite(1);
        for leaf in tree.leaves() {
            match (self.compute_reach(leaf, table, on_path), result) {
                (Reach::Cyclic, _) => result = Reach::Cyclic,
                (Reach::Finite(d), Reach::Finite(cur)) => result = Reach::Finite(cur.max(d + 1)),
                (Reach::Finite(_), Reach::Cyclic) => {}
            }
        }
        on_path.pop();
        table.insert(c, result);
        result
    }

    /// Decomposes one character at the configured level.
    pub fn decompose_char(&self, c: char) -> PieceSequence {
        self.decompose_char_at(c, self.config.level)
    }

    /// Decomposes one character at an explicit level, overriding the
    /// configured one.
    pub fn decompose_char_at(&self, c: char, level: u32) -> PieceSequence {
        let mut out = Vec::new();
        let mut path = Vec::new();
        self.expand_into(c, level, &mut path, &mut out);
        PieceSequence(out)
    }

    /// Decomposes a character sequence: the concatenation of the per
    /// character results.
    pub fn decompose_sequence<I: IntoIterator<Item = char>>(&self, chars: I) -> PieceSequence {
        let mut out = Vec::new();
        let mut path = Vec::new();
        for c in chars {
            self.expand_into(c, self.config.level, &mut path, &mut out);
        }
        PieceSequence(out)
    }

    pub fn decompose_str(&self, s: &str) -> PieceSequence {
        self.decompose_sequence(s.chars())
    }

    fn expand_into(&self, c: char, level: u32, path: &mut Vec<char>, out: &mut Vec<char>) {
        if level == 0 {
            out.push(c);
            return;
        }
        match self.reach(c) {
            Reach::Finite(0) => out.push(c),
            Reach::Finite(depth) => out.extend_from_slice(&self.memoized(c, level.min(depth))),
            Reach::Cyclic => self.expand_cyclic(c, level, path, out),
        }
    }

    fn memoized(&self, c: char, level: u32) -> Arc<[char]> {
        if let Some(hit) = self.memo.read().expect("memo poisoned").get(&(c, level)) {
            return Arc::clone(hit);
        }
        let tree = self.expansion(c).expect("finite reach > 0 implies an expansion");
        let mut out = Vec::new();
        for piece in self.step(tree) {
            if level == 1 {
                out.push(piece);
            } else {
                match self.reach(piece) {
                    Reach::Finite(0) => out.push(piece),
                    Reach::Finite(depth) => out.extend_from_slice(&self.memoized(piece, (level - 1).min(depth))),
                    Reach::Cyclic => unreachable!("a finite character only reaches finite ones"),
                }
            }
        }
        let value: Arc<[char]> = out.into();
        self.memo
            .write()
            .expect("memo poisoned")
            .entry((c, level))
            .or_insert(value)
            .clone()
    }

    /// Expansion along paths that may revisit a character. A piece already
    /// being expanded on the current path is emitted as-is.
    fn expand_cyclic(&self, c: char, level: u32, path: &mut Vec<char>, out: &mut Vec<char>) {
        if level == 0 {
            out.push(c);
            return;
        }
        if path.contains(&c) {
            self.cycle_warnings.fetch_add(1, Ordering::Relaxed);
            out.push(c);
            return;
        }
        let Some(tree) = self.expansion(c) else {
            out.push(c);
            return;
        };
        path.push(c);
        for piece in self.step(tree) {
            if level == 1 {
                out.push(piece);
                continue;
            }
            match self.reach(piece) {
                Reach::Cyclic => self.expand_cyclic(piece, level - 1, path, out),
                _ => self.expand_into(piece, level - 1, path, out),
            }
        }
        path.pop();
    }
}

/// Decomposes one character with a throwaway [`Decomposer`].
pub fn decompose_char(dict: &IdsDictionary, c: char, config: &DecompConfig) -> PieceSequence {
    Decomposer::new(dict, config.clone()).decompose_char(c)
}

/// Decomposes a character sequence with a throwaway [`Decomposer`].
pub fn decompose_sequence<I: IntoIterator<Item = char>>(
    dict: &IdsDictionary,
    chars: I,
    config: &DecompConfig,
) -> PieceSequence {
    Decomposer::new(dict, config.clone()).decompose_sequence(chars)
}
