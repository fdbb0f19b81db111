//! Mixed special/base encoding.
//!
//! The scan is greedy. At each position it tries a numeric literal (only in
//! numeric context), then the longest tag or attribute token. Anything else
//! accumulates into a span that is handed to the base tokenizer. Special
//! tokens only fire on base pre-token boundaries, which keeps every
//! replaced span at least as expensive under the base tokenizer as the
//! single special id that replaces it.

use crate::base::{boundaries, PieceTokenizer};
use crate::vocab::{Category, SpecialVocab};
use crate::Error;

pub type TokenSeq = Vec<u32>;

/// Attributes whose values are path data, where a command letter may
/// directly precede a number.
const PATH_ATTRS: &[&str] = &["d", "path"];

#[derive(Debug, Clone, Copy)]
pub struct Codec<'a> {
    pub base: &'a PieceTokenizer,
    pub vocab: &'a SpecialVocab,
}

fn is_path_command(b: u8) -> bool {
    b"MmLlHhVvCcSsQqTtAaZz".contains(&b)
}

/// Marks byte positions inside the value of a path-data attribute.
fn path_value_mask(text: &str) -> Vec<bool> {
    let bytes = text.as_bytes();
    let mut mask = vec![false; bytes.len()];
    let mut i = 0;
    while i + 1 < bytes.len() {
        if bytes[i] == b'=' && (bytes[i + 1] == b'"' || bytes[i + 1] == b'\'') {
            let quote = bytes[i + 1];
            let mut s = i;
            while s > 0 && (bytes[s - 1].is_ascii_alphanumeric() || bytes[s - 1] == b'-' || bytes[s - 1] == b':') {
                s -= 1;
            }
            let name = &text[s..i];
            let start = i + 2;
            let mut end = start;
            while end < bytes.len() && bytes[end] != quote {
                end += 1;
            }
            if PATH_ATTRS.contains(&name) {
                mask[start..end].iter_mut().for_each(|m| *m = true);
            }
            i = end.max(i + 1);
            continue;
        }
        i += 1;
    }
    mask
}

/// Whether a number starting at `pos` is standalone: at the start of the
/// text, after a separator or quote, or after a path command letter inside
/// path data.
fn numeric_context(bytes: &[u8], pos: usize, in_path: &[bool]) -> bool {
    if pos == 0 {
        return true;
    }
    let prev = bytes[pos - 1];
    matches!(prev, b' ' | b',' | b'"' | b'\'' | b'(' | b';' | b'\t' | b'\n' | b'\r') || (is_path_command(prev) && in_path[pos - 1])
}

/// Extent of a numeric literal `-?digits(.digits)?` or `-?.digits` at `pos`.
fn scan_literal(bytes: &[u8], pos: usize) -> Option<(usize, Option<usize>, usize)> {
    let mut i = pos;
    if bytes.get(i) == Some(&b'-') {
        i += 1;
    }
    let int_start = i;
    while i < bytes.len() && bytes[i].is_ascii_digit() {
        i += 1;
    }
    let int_end = i;
    let mut dot = None;
    if bytes.get(i) == Some(&b'.') && bytes.get(i + 1).is_some_and(u8::is_ascii_digit) {
        dot = Some(i);
        i += 1;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
    }
    if int_end == int_start && dot.is_none() {
        return None;
    }
    Some((int_end, dot, i))
}

impl<'a> Codec<'a> {
    pub fn new(base: &'a PieceTokenizer, vocab: &'a SpecialVocab) -> Self {
        Codec { base, vocab }
    }

    /// First special id; special token `i` has id `id_offset() + i`.
    pub fn id_offset(&self) -> u32 {
        self.base.vocab_size() as u32
    }

    pub fn vocab_size(&self) -> usize {
        self.base.vocab_size() + self.vocab.len()
    }

    /// Special ids for a numeric literal, or `None` when it must fall back.
    fn literal_ids(&self, text: &str, start: usize, int_end: usize, dot: Option<usize>, end: usize) -> Option<Vec<u32>> {
        let off = self.id_offset();
        let mut ids = Vec::with_capacity(2);
        let int_text = &text[start..int_end];
        if !int_text.is_empty() {
            ids.push(off + self.vocab.index_in(int_text, Category::Int)?);
        }
        if let Some(d) = dot {
            ids.push(off + self.vocab.index_in(&text[d..end], Category::Frac)?);
        }
        Some(ids)
    }

    pub fn encode(&self, text: &str) -> TokenSeq {
        let bytes = text.as_bytes();
        let bounds = boundaries(text);
        let in_path = path_value_mask(text);
        let off = self.id_offset();
        let mut out = Vec::with_capacity(text.len() / 3);
        let mut pending = 0;
        let mut i = 0;
        let flush = |out: &mut Vec<u32>, from: usize, to: usize| {
            if from < to {
                out.extend(self.base.encode_text(&text[from..to]));
            }
        };
        while i < bytes.len() {
            if !bounds[i] {
                i += 1;
                continue;
            }
            if numeric_context(bytes, i, &in_path) {
                if let Some((int_end, dot, end)) = scan_literal(bytes, i) {
                    if let Some(ids) = self.literal_ids(text, i, int_end, dot, end) {
                        flush(&mut out, pending, i);
                        out.extend(ids);
                        pending = end;
                    }
                    i = end;
                    continue;
                }
            }
            let rest = &bytes[i..];
            let hit = self.vocab.markup_candidates(bytes[i]).iter().copied().find(|&idx| {
                let t = self.vocab.get(idx).expect("candidate index").text.as_bytes();
                rest.starts_with(t) && bounds[i + t.len()]
            });
            match hit {
                Some(idx) => {
                    flush(&mut out, pending, i);
                    out.push(off + idx);
                    i += self.vocab.get(idx).expect("candidate index").text.len();
                    pending = i;
                }
                None => i += 1,
            }
        }
        flush(&mut out, pending, bytes.len());
        out
    }

    /// Text of a single id.
    pub fn token_text(&self, id: u32) -> Result<String, Error> {
        let off = self.id_offset();
        if id >= off {
            return self.vocab.get(id - off).map(|t| t.text.clone()).ok_or(Error::UnknownId(id));
        }
        let b = self.base.token_bytes(id).ok_or(Error::UnknownId(id))?;
        Ok(String::from_utf8_lossy(b).into_owned())
    }

    pub fn is_special(&self, id: u32) -> bool {
        id >= self.id_offset() && ((id - self.id_offset()) as usize) < self.vocab.len()
    }

    pub fn decode(&self, ids: &[u32]) -> Result<String, Error> {
        let off = self.id_offset();
        let mut bytes = Vec::with_capacity(ids.len() * 3);
        for &id in ids {
            if id >= off {
                let t = self.vocab.get(id - off).ok_or(Error::UnknownId(id))?;
                bytes.extend_from_slice(t.text.as_bytes());
            } else {
                bytes.extend_from_slice(self.base.token_bytes(id).ok_or(Error::UnknownId(id))?);
            }
        }
        String::from_utf8(bytes).map_err(|_| Error::InvalidUtf8)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vocab::build_vocab;

    fn texts(c: &Codec, s: &str) -> Vec<String> {
        c.encode(s).iter().map(|&id| c.token_text(id).unwrap()).collect()
    }

    #[test]
    fn numeric_literals() {
        let base = PieceTokenizer::synthetic();
        let vocab = build_vocab();
        let c = Codec::new(&base, &vocab);
        assert_eq!(texts(&c, "-128"), vec!["-128"]);
        assert_eq!(texts(&c, "64.25"), vec!["64", ".25"]);
        assert_eq!(texts(&c, " .5"), vec![" ", ".5"]);
        assert_eq!(texts(&c, "300"), vec!["3", "0", "0"]);
        assert_eq!(texts(&c, "1.125"), vec!["1", ".", "1", "2", "5"]);
        assert_eq!(texts(&c, "-0.5"), vec!["-", "0", ".", "5"]);
    }

    #[test]
    fn identifiers_keep_their_digits() {
        let base = PieceTokenizer::synthetic();
        let vocab = build_vocab();
        let c = Codec::new(&base, &vocab);
        let t = texts(&c, "id=\"g128\"");
        assert_eq!(t, vec!["id=\"", "g", "1", "2", "8", "\""]);
        let t = texts(&c, "class=\"a12\"");
        assert!(t.contains(&"a".to_string()) && t.contains(&"1".to_string()));
    }

    #[test]
    fn path_commands_precede_numbers() {
        let base = PieceTokenizer::synthetic();
        let vocab = build_vocab();
        let c = Codec::new(&base, &vocab);
        assert_eq!(texts(&c, "d=\"M12 3L5.5 7z\""), vec!["d=\"", "M", "12", " ", "3", "L", "5", ".5", " ", "7", "z", "\""]);
    }

    #[test]
    fn longest_tag_wins() {
        let base = PieceTokenizer::synthetic();
        let vocab = build_vocab();
        let c = Codec::new(&base, &vocab);
        assert_eq!(texts(&c, "<animateTransform ")[0], "<animateTransform");
        assert_eq!(texts(&c, "<animate ")[0], "<animate");
        assert_eq!(texts(&c, "<gradient")[0], "<");
        assert_eq!(texts(&c, "<path d=\"M0 0\"/>"), vec!["<path", " ", "d=\"", "M", "0", " ", "0", "\"", "/>"]);
    }

    #[test]
    fn decode_errors_and_empty() {
        let base = PieceTokenizer::synthetic();
        let vocab = build_vocab();
        let c = Codec::new(&base, &vocab);
        assert_eq!(c.decode(&[]).unwrap(), "");
        let bad = c.vocab_size() as u32;
        assert!(matches!(c.decode(&[bad]), Err(Error::UnknownId(_))));
        assert!(matches!(c.decode(&[0xC3]), Err(Error::InvalidUtf8)));
    }
}
