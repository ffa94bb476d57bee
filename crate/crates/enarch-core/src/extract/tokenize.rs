use alloc::vec::Vec;

/// A raw token: a word (letters/digits, internal hyphens kept) or a
/// punctuation break. Whitespace only separates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RawToken<'a> {
    Word(&'a str),
    Punct,
}

/// Apostrophes split (`robot's` → `robot`, `s`); hyphens between two word
/// characters join (`human-like`).
pub fn tokenize(text: &str) -> Vec<RawToken<'_>> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    for (k, &(i, c)) in chars.iter().enumerate() {
        let word_char = c.is_alphanumeric();
        let joining_hyphen = c == '-'
            && start.is_some()
            && chars.get(k + 1).is_some_and(|&(_, n)| n.is_alphanumeric());
        if word_char || joining_hyphen {
            if start.is_none() {
                start = Some(i);
            }
            continue;
        }
        if let Some(s) = start.take() {
            out.push(RawToken::Word(&text[s..i]));
        }
        if !c.is_whitespace() && !matches!(c, '\'' | '’') {
            out.push(RawToken::Punct);
        }
    }
    if let Some(s) = start {
        out.push(RawToken::Word(&text[s..]));
    }
    out
}
