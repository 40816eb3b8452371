//! Ideographic Description Sequence (IDS) dictionaries.
//!
//! An IDS expression describes the spatial composition of a CJK character in
//! prefix notation: a structural operator (one of the twelve Ideographic
//! Description Characters U+2FF0..U+2FFB) followed by the subtrees it
//! combines, e.g. `⿱双双` or `⿲氵木口`.
//!
//! Dictionary files are line oriented:
//!
//! ```text
//! ;; comment
//! # comment
//! U+53D5<TAB>叕<TAB>⿱双双<TAB>⿰㕛㕛
//! U+9AA8<TAB>骨<TAB>⿱⿵冂⿰丨𠃍月[T]<TAB>⿱⿵冂⿰𠃌丨月[G]
//! ```
//!
//! Fields are tab separated: the code point, the character itself, then one
//! or more decomposition variants. A variant may end in a bracketed list of
//! region tags (`[GTK]`).

use std::collections::HashMap;
use std::fmt;
use std::io::{self, BufRead, Write};
use std::str::FromStr;

use thiserror::Error;

/// Errors raised while parsing a single IDS expression.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    /// An operator is missing one or more of its operands.
    #[error("truncated expression: operator at byte {offset} lacks children")]
    TruncatedExpression { offset: usize },
    /// A complete tree was read but input remains.
    #[error("trailing characters after complete expression at byte {offset}")]
    TrailingGarbage { offset: usize },
    /// An Ideographic Description Character outside U+2FF0..U+2FFB.
    #[error("unsupported structural operator {symbol:?} at byte {offset}")]
    UnsupportedOperator { offset: usize, symbol: char },
}

/// Errors raised while loading an IDS dictionary file.
#[derive(Debug, Error)]
pub enum IdsError {
    #[error("line {line}: {reason}")]
    MalformedLine { line: usize, reason: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// What to do with a malformed data line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MalformedPolicy {
    /// Stop loading and return the error.
    #[default]
    Abort,
    /// Skip the line and count it in [`IdsDictionary::skipped_lines`].
    Skip,
}

/// A Unicode scalar value rendered as `U+XXXX`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CodePoint(pub char);

impl CodePoint {
    pub fn value(self) -> u32 {
        self.0 as u32
    }
}

impl fmt::Display for CodePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "U+{:04X}", self.0 as u32)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid code point {0:?}: expected U+ followed by 4-6 uppercase hex digits")]
pub struct CodePointError(pub String);

impl FromStr for CodePoint {
    type Err = CodePointError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || CodePointError(s.to_string());
        let hex = s.strip_prefix("U+").ok_or_else(err)?;
        if !(4..=6).contains(&hex.len()) || !hex.bytes().all(|b| b.is_ascii_digit() || (b'A'..=b'F').contains(&b)) {
            return Err(err());
        }
        let value = u32::from_str_radix(hex, 16).map_err(|_| err())?;
        char::from_u32(value).map(CodePoint).ok_or_else(err)
    }
}

/// One of the twelve classic Ideographic Description Characters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StructOperator {
    LeftToRight,
    AboveToBelow,
    LeftToMiddleAndRight,
    AboveToMiddleAndBelow,
    FullSurround,
    SurroundFromAbove,
    SurroundFromBelow,
    SurroundFromLeft,
    SurroundFromUpperLeft,
    SurroundFromUpperRight,
    SurroundFromLowerLeft,
    Overlaid,
}

impl StructOperator {
    pub const ALL: [StructOperator; 12] = [
        StructOperator::LeftToRight,
        StructOperator::AboveToBelow,
        StructOperator::LeftToMiddleAndRight,
        StructOperator::AboveToMiddleAndBelow,
        StructOperator::FullSurround,
        StructOperator::SurroundFromAbove,
        StructOperator::SurroundFromBelow,
        StructOperator::SurroundFromLeft,
        StructOperator::SurroundFromUpperLeft,
        StructOperator::SurroundFromUpperRight,
        StructOperator::SurroundFromLowerLeft,
        StructOperator::Overlaid,
    ];

    pub fn from_char(c: char) -> Option<Self> {
        match c as u32 {
            0x2FF0..=0x2FFB => Some(Self::ALL[(c as u32 - 0x2FF0) as usize]),
            _ => None,
        }
    }

    pub fn symbol(self) -> char {
        // Discriminants follow code point order.
        char::from_u32(0x2FF0 + self as u32).expect("IDC range is valid")
    }

    pub fn arity(self) -> usize {
        match self {
            Self::LeftToMiddleAndRight | Self::AboveToMiddleAndBelow => 3,
            _ => 2,
        }
    }
}

impl fmt::Display for StructOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// True for any character in the Ideographic Description block U+2FF0..U+2FFF,
/// including the operators this crate does not accept.
pub fn is_description_char(c: char) -> bool {
    ('\u{2FF0}'..='\u{2FFF}').contains(&c)
}

/// A parsed IDS expression.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum IdsTree {
    Leaf(char),
    Node { op: StructOperator, children: Vec<IdsTree> },
}

impl IdsTree {
    /// Leaf components in left-to-right (prefix) order.
    pub fn leaves(&self) -> Vec<char> {
        let mut out = Vec::new();
        self.walk(&mut |item| {
            if let Piece::Leaf(c) = item {
                out.push(c)
            }
        });
        out
    }

    /// Operators and leaves in prefix order; this is the rendered expression
    /// as a character sequence.
    pub fn pieces(&self) -> Vec<char> {
        let mut out = Vec::new();
        self.walk(&mut |item| match item {
            Piece::Leaf(c) => out.push(c),
            Piece::Op(op) => out.push(op.symbol()),
        });
        out
    }

    /// Some(c) if the tree is the single leaf `c`.
    pub fn as_leaf(&self) -> Option<char> {
        match self {
            IdsTree::Leaf(c) => Some(*c),
            IdsTree::Node { .. } => None,
        }
    }

    /// Checks that every node has exactly `arity` children and no leaf is an
    /// operator.
    pub fn is_well_formed(&self) -> bool {
        match self {
            IdsTree::Leaf(c) => !is_description_char(*c),
            IdsTree::Node { op, children } => {
                children.len() == op.arity() && children.iter().all(IdsTree::is_well_formed)
            }
        }
    }

    fn walk(&self, f: &mut impl FnMut(Piece)) {
        match self {
            IdsTree::Leaf(c) => f(Piece::Leaf(*c)),
            IdsTree::Node { op, children } => {
                f(Piece::Op(*op));
                for child in children {
                    child.walk(f);
                }
            }
        }
    }
}

enum Piece {
    Leaf(char),
    Op(StructOperator),
}

impl fmt::Display for IdsTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_ids_expression(self))
    }
}

impl FromStr for IdsTree {
    type Err = ExprError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_ids_expression(s)
    }
}

/// Parses a prefix-notation IDS expression.
///
/// The parser is iterative, so deeply nested input cannot overflow the stack.
pub fn parse_ids_expression(text: &str) -> Result<IdsTree, ExprError> {
    struct Frame {
        op: StructOperator,
        offset: usize,
        children: Vec<IdsTree>,
    }

    let mut stack: Vec<Frame> = Vec::new();
    let mut chars = text.char_indices();

    while let Some((offset, c)) = chars.next() {
        let mut done = match StructOperator::from_char(c) {
            Some(op) => {
                stack.push(Frame {
                    op,
                    offset,
                    children: Vec::with_capacity(op.arity()),
                });
                continue;
            }
            None if is_description_char(c) => return Err(ExprError::UnsupportedOperator { offset, symbol: c }),
            None => IdsTree::Leaf(c),
        };
        // Close every frame that just became complete.
        loop {
            match stack.last_mut() {
                None => {
                    return match chars.next() {
                        None => Ok(done),
                        Some((offset, _)) => Err(ExprError::TrailingGarbage { offset }),
                    };
                }
                Some(frame) => {
                    frame.children.push(done);
                    if frame.children.len() < frame.op.arity() {
                        break;
                    }
                    let frame = stack.pop().expect("non-empty stack");
                    done = IdsTree::Node {
                        op: frame.op,
                        children: frame.children,
                    };
                }
            }
        }
    }

    let offset = stack.last().map_or(0, |frame| frame.offset);
    Err(ExprError::TruncatedExpression { offset })
}

/// Renders a tree back to its prefix-notation text.
pub fn render_ids_expression(tree: &IdsTree) -> String {
    tree.pieces().into_iter().collect()
}

/// A region tag: a single uppercase Latin letter such as `G` (mainland
/// China), `H` (Hong Kong), `T` (Taiwan), `K` (Korea), `V` (Vietnam) or
/// `J` (Japan). Other letters are carried through unchanged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RegionTag(char);

impl RegionTag {
    pub const G: RegionTag = RegionTag('G');
    pub const H: RegionTag = RegionTag('H');
    pub const T: RegionTag = RegionTag('T');
    pub const K: RegionTag = RegionTag('K');
    pub const V: RegionTag = RegionTag('V');
    pub const J: RegionTag = RegionTag('J');

    pub fn new(code: char) -> Option<Self> {
        code.is_ascii_uppercase().then_some(RegionTag(code))
    }

    pub fn code(self) -> char {
        self.0
    }

    /// Human-readable region for the documented tags.
    pub fn region(self) -> Option<&'static str> {
        Some(match self.0 {
            'G' => "Chinese mainland",
            'H' => "Hong Kong",
            'T' => "Taiwan",
            'K' => "Korea",
            'V' => "Vietnam",
            'J' => "Japan",
            _ => return None,
        })
    }
}

impl fmt::Display for RegionTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Parses a tag list such as `G,T` or `GT`.
pub fn parse_region_list(s: &str) -> Option<Vec<RegionTag>> {
    s.chars()
        .filter(|c| *c != ',' && !c.is_whitespace())
        .map(RegionTag::new)
        .collect()
}

/// One decomposition variant together with its region tags in file order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Variant {
    pub tree: IdsTree,
    pub tags: Vec<RegionTag>,
}

impl Variant {
    pub fn has_tag(&self, tag: RegionTag) -> bool {
        self.tags.contains(&tag)
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tree)?;
        if !self.tags.is_empty() {
            f.write_str("[")?;
            for tag in &self.tags {
                write!(f, "{tag}")?;
            }
            f.write_str("]")?;
        }
        Ok(())
    }
}

/// A dictionary record: one character and its variants in file order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IdsEntry {
    pub character: char,
    pub variants: Vec<Variant>,
}

impl IdsEntry {
    pub fn codepoint(&self) -> CodePoint {
        CodePoint(self.character)
    }

    /// Renders the entry as a dictionary data line (without newline).
    pub fn to_line(&self) -> String {
        let mut line = format!("{}\t{}", self.codepoint(), self.character);
        for variant in &self.variants {
            line.push('\t');
            line.push_str(&variant.to_string());
        }
        line
    }
}

/// Parses one data line. Comment and blank lines are the caller's concern.
pub fn parse_ids_line(line: &str) -> Result<IdsEntry, String> {
    let mut fields = line.split('\t');
    let cp_field = fields.next().unwrap_or_default();
    let char_field = fields.next().ok_or("expected at least 3 tab-separated fields")?;
    let variant_fields: Vec<&str> = fields.collect();
    if variant_fields.is_empty() {
        return Err("expected at least 3 tab-separated fields".into());
    }

    let codepoint: CodePoint = cp_field.parse().map_err(|e: CodePointError| e.to_string())?;
    let mut chars = char_field.chars();
    let character = match (chars.next(), chars.next()) {
        (Some(c), None) => c,
        _ => return Err(format!("character field {char_field:?} is not a single character")),
    };
    if codepoint.0 != character {
        return Err(format!(
            "code point {codepoint} does not match character {character:?} ({})",
            CodePoint(character)
        ));
    }

    let variants = variant_fields
        .into_iter()
        .enumerate()
        .map(|(i, field)| parse_variant(field).map_err(|e| format!("variant {}: {e}", i + 1)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(IdsEntry { character, variants })
}

fn parse_variant(field: &str) -> Result<Variant, String> {
    let (expr, tags) = match field.strip_suffix(']') {
        Some(head) => {
            let open = head.rfind('[').ok_or("unbalanced ']' in variant")?;
            let tags = head[open + 1..]
                .chars()
                .map(|c| RegionTag::new(c).ok_or_else(|| format!("invalid region tag {c:?}")))
                .collect::<Result<Vec<_>, _>>()?;
            if tags.is_empty() {
                return Err("empty region tag list".into());
            }
            (&head[..open], tags)
        }
        None => (field, Vec::new()),
    };
    if expr.is_empty() {
        return Err("empty expression".into());
    }
    let tree = parse_ids_expression(expr).map_err(|e| e.to_string())?;
    Ok(Variant { tree, tags })
}

fn is_comment_or_blank(line: &str) -> bool {
    line.starts_with(";;") || line.starts_with('#') || line.trim().is_empty()
}

/// An immutable character → decomposition table.
///
/// Entries remember the order in which characters first appeared so the
/// table can be written back out line for line.
#[derive(Debug, Clone, Default)]
pub struct IdsDictionary {
    entries: HashMap<char, IdsEntry>,
    order: Vec<char>,
    source_count: usize,
    duplicate_lines: usize,
    skipped_lines: usize,
}

impl PartialEq for IdsDictionary {
    fn eq(&self, other: &Self) -> bool {
        self.entries == other.entries && self.source_count == other.source_count
    }
}

impl Eq for IdsDictionary {}

impl IdsDictionary {
    /// Builds a dictionary from entries; later duplicates replace earlier ones.
    pub fn from_entries(entries: impl IntoIterator<Item = IdsEntry>) -> Self {
        let mut dict = IdsDictionary::default();
        for entry in entries {
            dict.insert(entry);
        }
        dict
    }

    fn insert(&mut self, entry: IdsEntry) {
        self.source_count += 1;
        let character = entry.character;
        if self.entries.insert(character, entry).is_some() {
            self.duplicate_lines += 1;
        } else {
            self.order.push(character);
        }
    }

    pub fn get(&self, c: char) -> Option<&IdsEntry> {
        self.entries.get(&c)
    }

    pub fn contains(&self, c: char) -> bool {
        self.entries.contains_key(&c)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of data lines that produced an entry, duplicates included.
    pub fn source_count(&self) -> usize {
        self.source_count
    }

    /// Data lines that replaced an earlier entry for the same character.
    pub fn duplicate_lines(&self) -> usize {
        self.duplicate_lines
    }

    /// Malformed lines dropped under [`MalformedPolicy::Skip`].
    pub fn skipped_lines(&self) -> usize {
        self.skipped_lines
    }

    /// Entries in order of first appearance.
    pub fn entries(&self) -> impl Iterator<Item = &IdsEntry> {
        self.order.iter().map(|c| &self.entries[c])
    }

    pub fn characters(&self) -> impl Iterator<Item = char> + '_ {
        self.order.iter().copied()
    }

    /// Writes every entry as a data line, in order of first appearance.
    pub fn write_to<W: Write>(&self, mut out: W) -> io::Result<()> {
        for entry in self.entries() {
            writeln!(out, "{}", entry.to_line())?;
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut buf = Vec::new();
        self.write_to(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("entries render as UTF-8")
    }
}

impl FromStr for IdsDictionary {
    type Err = IdsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_ids_file(s.as_bytes(), MalformedPolicy::Abort)
    }
}

/// Loads a dictionary from a line stream.
pub fn parse_ids_file<R: BufRead>(reader: R, policy: MalformedPolicy) -> Result<IdsDictionary, IdsError> {
    let mut dict = IdsDictionary::default();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.strip_suffix('\r').unwrap_or(&line);
        if is_comment_or_blank(line) {
            continue;
        }
        match parse_ids_line(line) {
            Ok(entry) => dict.insert(entry),
            Err(reason) => match policy {
                MalformedPolicy::Abort => return Err(IdsError::MalformedLine { line: idx + 1, reason }),
                MalformedPolicy::Skip => dict.skipped_lines += 1,
            },
        }
    }
    Ok(dict)
}
