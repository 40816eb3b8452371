//! Script classification for splitting words into character pieces.

/// True for CJK ideographs, radicals, strokes and ideographic description
/// characters. Everything else (Latin, digits, punctuation) is treated as
/// opaque text.
pub fn is_han(c: char) -> bool {
    matches!(c as u32,
        0x2E80..=0x2EFF     // CJK Radicals Supplement
        | 0x2F00..=0x2FDF   // Kangxi Radicals
        | 0x2FF0..=0x2FFF   // Ideographic Description Characters
        | 0x3005..=0x3007   // 々 〆 〇
        | 0x31C0..=0x31EF   // CJK Strokes
        | 0x3400..=0x4DBF   // Extension A
        | 0x4E00..=0x9FFF   // Unified Ideographs
        | 0xF900..=0xFAFF   // Compatibility Ideographs
        | 0x20000..=0x323AF // Extensions B-H, Compatibility Supplement
    )
}

/// Splits a word into segments: each Han character on its own, and each
/// maximal run of non-Han characters as one segment.
///
/// ```
/// use rxd_core::han::segments;
/// assert_eq!(segments("3月AI"), vec!["3", "月", "AI"]);
/// ```
pub fn segments(word: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut run_start: Option<usize> = None;
    for (i, c) in word.char_indices() {
        if is_han(c) {
            if let Some(start) = run_start.take() {
                out.push(&word[start..i]);
            }
            out.push(&word[i..i + c.len_utf8()]);
        } else if run_start.is_none() {
            run_start = Some(i);
        }
    }
    if let Some(start) = run_start {
        out.push(&word[start..]);
    }
    out
}
