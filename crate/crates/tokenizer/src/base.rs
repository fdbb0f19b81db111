//! The base subword tokenizer the special vocabulary sits on top of.
//!
//! The view is a piece vocabulary (string → id) with SentencePiece-style
//! byte fallback (`<0xNN>` pieces) and a fixed pre-tokenizer: ASCII letter
//! runs, single digits, whitespace runs, and single characters otherwise.
//! Each pre-token chunk is encoded by greedy longest piece match, so the
//! encoding of a text is the concatenation of its chunks' encodings.

use std::collections::HashMap;
use std::ops::Range;

use crate::Error;

#[derive(Debug, Clone)]
pub struct PieceTokenizer {
    pieces: HashMap<String, u32>,
    byte_ids: [u32; 256],
    id_bytes: Vec<Vec<u8>>,
    id_piece: Vec<String>,
    max_piece_len: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Class {
    Letter,
    Digit,
    Space,
    Other,
}

fn class_of(c: char) -> Class {
    if c.is_ascii_alphabetic() {
        Class::Letter
    } else if c.is_ascii_digit() {
        Class::Digit
    } else if c.is_ascii_whitespace() {
        Class::Space
    } else {
        Class::Other
    }
}

/// Pre-token chunks as byte ranges.
pub fn chunks(text: &str) -> Vec<Range<usize>> {
    let mut out = Vec::new();
    let mut iter = text.char_indices().peekable();
    while let Some((start, c)) = iter.next() {
        let class = class_of(c);
        let mut end = start + c.len_utf8();
        if matches!(class, Class::Letter | Class::Space) {
            while let Some(&(i, n)) = iter.peek() {
                if class_of(n) != class {
                    break;
                }
                end = i + n.len_utf8();
                iter.next();
            }
        }
        out.push(start..end);
    }
    out
}

/// `true` at every byte offset where a chunk starts, and at the end.
pub fn boundaries(text: &str) -> Vec<bool> {
    let mut b = vec![false; text.len() + 1];
    for r in chunks(text) {
        b[r.start] = true;
    }
    b[text.len()] = true;
    b
}

fn byte_piece(b: u8) -> Option<u8> {
    (b.is_ascii_graphic() || b == b' ').then_some(b)
}

fn parse_byte_token(s: &str) -> Option<u8> {
    let hex = s.strip_prefix("<0x")?.strip_suffix('>')?;
    (hex.len() == 2).then(|| u8::from_str_radix(hex, 16).ok()).flatten()
}

const SYNTHETIC_WORDS: &[&str] = &[
    "svg",
    "path",
    "rect",
    "circle",
    "ellipse",
    "line",
    "poly",
    "polyline",
    "polygon",
    "gon",
    "text",
    "span",
    "defs",
    "use",
    "stop",
    "mask",
    "clip",
    "filter",
    "linear",
    "radial",
    "Gradient",
    "Path",
    "Motion",
    "Transform",
    "animate",
    "fe",
    "Gaussian",
    "Blur",
    "Color",
    "Matrix",
    "Composite",
    "Blend",
    "g",
    "fill",
    "stroke",
    "width",
    "height",
    "view",
    "Box",
    "cap",
    "join",
    "miter",
    "limit",
    "rule",
    "opacity",
    "transform",
    "translate",
    "rotate",
    "scale",
    "matrix",
    "skew",
    "font",
    "size",
    "family",
    "anchor",
    "gradient",
    "Units",
    "offset",
    "color",
    "begin",
    "dur",
    "repeat",
    "Count",
    "from",
    "to",
    "values",
    "attribute",
    "Name",
    "type",
    "id",
    "class",
    "href",
    "xlink",
    "xmlns",
    "http",
    "www",
    "org",
    "none",
    "round",
    "square",
    "butt",
    "bevel",
    "even",
    "odd",
    "nonzero",
    "evenodd",
    "indefinite",
    "freeze",
    "user",
    "Space",
    "On",
    "Use",
    "object",
    "Bounding",
    "key",
    "Times",
    "Splines",
    "calc",
    "Mode",
    "cx",
    "cy",
    "rx",
    "ry",
    "x",
    "y",
    "r",
    "d",
    "points",
    "version",
    "style",
    "white",
    "black",
    "red",
    "blue",
    "green",
    "the",
    "and",
    "of",
    "to",
    "in",
    "is",
    "it",
    "that",
    "for",
    "on",
    "with",
    "as",
    "this",
    "be",
    "are",
    "or",
    "an",
    "at",
    "by",
    "not",
    "from",
    "which",
    "a",
    "shape",
    "icon",
    "image",
    "question",
    "answer",
    "option",
    "color",
    "what",
    "how",
    "many",
    "edit",
    "move",
    "left",
    "right",
    "up",
    "down",
    "flip",
    "horizontal",
    "vertical",
    "degrees",
    "change",
    "set",
    "add",
    "remove",
];

const SYNTHETIC_SPACES: &[&str] = &["  ", "   ", "    ", "\n", "\n\n", "\t"];

impl PieceTokenizer {
    /// Builds a tokenizer from `(piece, id)` pairs. Every byte must be
    /// covered, either by a `<0xNN>` piece or, for printable ASCII, by the
    /// one-character piece.
    pub fn from_pieces<I, S>(pieces: I) -> Result<PieceTokenizer, Error>
    where
        I: IntoIterator<Item = (S, u32)>,
        S: Into<String>,
    {
        let mut map = HashMap::new();
        let mut byte_ids = [u32::MAX; 256];
        let mut id_bytes: Vec<Vec<u8>> = Vec::new();
        let mut id_piece: Vec<String> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for (piece, id) in pieces {
            let piece: String = piece.into();
            if !seen.insert(id) {
                return Err(Error::BaseVocab(format!("id {id} assigned twice")));
            }
            let idx = id as usize;
            if id_bytes.len() <= idx {
                id_bytes.resize(idx + 1, Vec::new());
                id_piece.resize(idx + 1, String::new());
            }
            id_piece[idx] = piece.clone();
            if let Some(b) = parse_byte_token(&piece) {
                byte_ids[b as usize] = id;
                id_bytes[idx] = vec![b];
                continue;
            }
            if piece.is_empty() {
                return Err(Error::BaseVocab(format!("empty piece for id {id}")));
            }
            if piece.len() == 1 {
                let b = piece.as_bytes()[0];
                if byte_ids[b as usize] == u32::MAX {
                    byte_ids[b as usize] = id;
                }
            }
            id_bytes[idx] = piece.as_bytes().to_vec();
            map.insert(piece, id);
        }
        if let Some(b) = byte_ids.iter().position(|&id| id == u32::MAX) {
            return Err(Error::BaseVocab(format!("no fallback piece for byte 0x{b:02X}")));
        }
        let max_piece_len = map.keys().map(String::len).max().unwrap_or(1);
        Ok(PieceTokenizer { pieces: map, byte_ids, id_bytes, id_piece, max_piece_len })
    }

    /// Loads a `{"piece": id, ...}` vocabulary.
    pub fn from_vocab_json(text: &str) -> Result<PieceTokenizer, Error> {
        let map: HashMap<String, u32> = serde_json::from_str(text).map_err(|e| Error::BaseVocab(e.to_string()))?;
        let mut pairs: Vec<(String, u32)> = map.into_iter().collect();
        pairs.sort_by_key(|p| p.1);
        PieceTokenizer::from_pieces(pairs)
    }

    /// A small deterministic vocabulary modeled on digit-splitting subword
    /// tokenizers: 256 byte pieces followed by common words and whitespace
    /// runs.
    pub fn synthetic() -> PieceTokenizer {
        let mut pairs: Vec<(String, u32)> = (0..=255u8)
            .map(|b| {
                let s = match byte_piece(b) {
                    Some(c) => (c as char).to_string(),
                    None => format!("<0x{b:02X}>"),
                };
                (s, b as u32)
            })
            .collect();
        let mut seen: std::collections::HashSet<String> = pairs.iter().map(|p| p.0.clone()).collect();
        for w in SYNTHETIC_WORDS.iter().chain(SYNTHETIC_SPACES) {
            if seen.insert(w.to_string()) {
                let id = pairs.len() as u32;
                pairs.push((w.to_string(), id));
            }
        }
        PieceTokenizer::from_pieces(pairs).expect("synthetic vocabulary covers all bytes")
    }

    /// Vocabulary as a `{"piece": id}` JSON object.
    pub fn to_vocab_json(&self) -> String {
        let map: serde_json::Map<String, serde_json::Value> = self
            .id_piece
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_empty())
            .map(|(id, p)| (p.clone(), serde_json::Value::from(id as u32)))
            .collect();
        serde_json::to_string(&map).expect("vocab serializes")
    }

    pub fn vocab_size(&self) -> usize {
        self.id_bytes.len()
    }

    /// Bytes of a base id; `None` for ids outside the vocabulary.
    pub fn token_bytes(&self, id: u32) -> Option<&[u8]> {
        self.id_bytes.get(id as usize).filter(|b| !b.is_empty()).map(Vec::as_slice)
    }

    fn encode_chunk(&self, chunk: &str, out: &mut Vec<u32>) {
        if let Some(&id) = self.pieces.get(chunk) {
            out.push(id);
            return;
        }
        let bytes = chunk.as_bytes();
        let mut pos = 0;
        while pos < bytes.len() {
            let mut matched = None;
            let longest = self.max_piece_len.min(bytes.len() - pos);
            for len in (2..=longest).rev() {
                if let Some(s) = chunk.get(pos..pos + len) {
                    if let Some(&id) = self.pieces.get(s) {
                        matched = Some((id, len));
                        break;
                    }
                }
            }
            match matched {
                Some((id, len)) => {
                    out.push(id);
                    pos += len;
                }
                None => {
                    out.push(self.byte_ids[bytes[pos] as usize]);
                    pos += 1;
                }
            }
        }
    }

    pub fn encode_text(&self, text: &str) -> Vec<u32> {
        let mut out = Vec::with_capacity(text.len() / 2);
        for r in chunks(text) {
            self.encode_chunk(&text[r], &mut out);
        }
        out
    }

    /// Concatenated bytes of base ids.
    pub fn decode_bytes(&self, ids: &[u32]) -> Result<Vec<u8>, Error> {
        let mut out = Vec::new();
        for &id in ids {
            out.extend_from_slice(self.token_bytes(id).ok_or(Error::UnknownId(id))?);
        }
        Ok(out)
    }
}
