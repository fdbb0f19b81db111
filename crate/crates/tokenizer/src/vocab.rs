//! The SVG-specific special-token inventory.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::Error;

/// Tag tokens, grouped as Root, Grouping, Shapes, Text, Gradients, Clipping,
/// Filters and Animation.
pub const TAG_TOKENS: [&str; 55] = [
    "<svg",
    "</svg>",
    "<defs",
    "</defs>",
    "<use",
    "</use>",
    "/>",
    "<g",
    "</g>",
    "<path",
    "</path>",
    "<rect",
    "</rect>",
    "<circle",
    "</circle>",
    "<ellipse",
    "</ellipse>",
    "<line",
    "</line>",
    "<polyline",
    "</polyline>",
    "<polygon",
    "</polygon>",
    "<text",
    "</text>",
    "<tspan",
    "</tspan>",
    "<textPath",
    "</textPath>",
    "<linearGradient",
    "</linearGradient>",
    "<radialGradient",
    "</radialGradient>",
    "<stop",
    "</stop>",
    "<clipPath",
    "</clipPath>",
    "<mask",
    "</mask>",
    "<filter",
    "</filter>",
    "<feGaussianBlur",
    "</feGaussianBlur>",
    "<feColorMatrix",
    "</feColorMatrix>",
    "<feComposite",
    "</feComposite>",
    "<feBlend",
    "</feBlend>",
    "<animate",
    "</animate>",
    "<animateMotion",
    "</animateMotion>",
    "<animateTransform",
    "</animateTransform>",
];

/// Attribute tokens, grouped as Geometry, Styling, Transform, Text,
/// Gradients, Animation and Identifiers.
pub const ATTR_TOKENS: [&str; 42] = [
    "width=\"",
    "height=\"",
    "viewBox=\"",
    "x=\"",
    "y=\"",
    "x1=\"",
    "y1=\"",
    "x2=\"",
    "y2=\"",
    "cx=\"",
    "cy=\"",
    "r=\"",
    "rx=\"",
    "ry=\"",
    "d=\"",
    "points=\"",
    "fill=\"",
    "stroke=\"",
    "stroke-width=\"",
    "stroke-linecap=\"",
    "stroke-linejoin=\"",
    "stroke-miterlimit=\"",
    "fill-rule=\"",
    "opacity=\"",
    "transform=\"",
    "font-size=\"",
    "font-family=\"",
    "text-anchor=\"",
    "gradientUnits=\"",
    "gradientTransform=\"",
    "offset=\"",
    "stop-color=\"",
    "begin=\"",
    "dur=\"",
    "repeatCount=\"",
    "from=\"",
    "to=\"",
    "rotate=\"",
    "path=\"",
    "id=\"",
    "class=\"",
    "clip-path=\"",
];

pub const DEFAULT_INT_RANGE: (i32, i32) = (-128, 128);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Category {
    Tag,
    Attr,
    Int,
    Frac,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialToken {
    /// Position in the special inventory; the token id is this plus the
    /// base vocabulary size.
    pub index: u32,
    pub category: Category,
    pub text: String,
}

/// Serialized form of a [`SpecialVocab`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub int_range: (i32, i32),
    pub counts: ManifestCounts,
    pub tokens: Vec<SpecialToken>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestCounts {
    pub tag: usize,
    pub attr: usize,
    pub int: usize,
    pub frac: usize,
    pub total: usize,
}

#[derive(Debug, Clone)]
pub struct SpecialVocab {
    tokens: Vec<SpecialToken>,
    int_range: (i32, i32),
    by_text: HashMap<String, u32>,
    /// Tag and attribute tokens bucketed by first byte, longest first.
    markup: HashMap<u8, Vec<u32>>,
}

fn frac_strings() -> Vec<String> {
    let one = (0..10).map(|d| format!(".{d}"));
    let two = (0..100).map(|d| format!(".{d:02}"));
    one.chain(two).collect()
}

impl Default for SpecialVocab {
    fn default() -> Self {
        build_vocab()
    }
}

/// The standard inventory: 55 tag, 42 attribute, 257 integer and 110
/// fractional tokens.
pub fn build_vocab() -> SpecialVocab {
    SpecialVocab::with_int_range(DEFAULT_INT_RANGE.0, DEFAULT_INT_RANGE.1)
}

impl SpecialVocab {
    pub fn with_int_range(lo: i32, hi: i32) -> SpecialVocab {
        let mut entries: Vec<(Category, String)> = Vec::new();
        entries.extend(TAG_TOKENS.iter().map(|t| (Category::Tag, t.to_string())));
        entries.extend(ATTR_TOKENS.iter().map(|t| (Category::Attr, t.to_string())));
        entries.extend((lo..=hi).map(|i| (Category::Int, i.to_string())));
        entries.extend(frac_strings().into_iter().map(|f| (Category::Frac, f)));
        let tokens =
            entries.into_iter().enumerate().map(|(i, (category, text))| SpecialToken { index: i as u32, category, text }).collect();
        SpecialVocab::from_tokens(tokens, (lo, hi)).expect("built-in inventory is consistent")
    }

    fn from_tokens(tokens: Vec<SpecialToken>, int_range: (i32, i32)) -> Result<SpecialVocab, Error> {
        let mut by_text = HashMap::new();
        let mut markup: HashMap<u8, Vec<u32>> = HashMap::new();
        for (i, t) in tokens.iter().enumerate() {
            if t.index as usize != i {
                return Err(Error::Manifest(format!("token {:?} has index {}, expected {i}", t.text, t.index)));
            }
            if t.text.is_empty() {
                return Err(Error::Manifest(format!("empty token at index {i}")));
            }
            let well_formed = match t.category {
                Category::Int => t.text.parse::<i32>().map(|v| v.to_string() == t.text).unwrap_or(false),
                Category::Frac => {
                    let digits = t.text.strip_prefix('.').unwrap_or("");
                    (1..=2).contains(&digits.len()) && digits.bytes().all(|b| b.is_ascii_digit())
                }
                Category::Tag | Category::Attr => true,
            };
            if !well_formed {
                return Err(Error::Manifest(format!("malformed {:?} token {:?}", t.category, t.text)));
            }
            if by_text.insert(t.text.clone(), t.index).is_some() {
                return Err(Error::Manifest(format!("duplicate token {:?}", t.text)));
            }
            if matches!(t.category, Category::Tag | Category::Attr) {
                markup.entry(t.text.as_bytes()[0]).or_default().push(t.index);
            }
        }
        for bucket in markup.values_mut() {
            bucket.sort_by_key(|&i| std::cmp::Reverse(tokens[i as usize].text.len()));
        }
        Ok(SpecialVocab { tokens, int_range, by_text, markup })
    }

    pub fn from_manifest(manifest: Manifest) -> Result<SpecialVocab, Error> {
        let vocab = SpecialVocab::from_tokens(manifest.tokens, manifest.int_range)?;
        let counts = vocab.counts();
        if counts != manifest.counts {
            return Err(Error::Manifest(format!("declared counts {:?} disagree with tokens {counts:?}", manifest.counts)));
        }
        Ok(vocab)
    }

    pub fn from_manifest_json(text: &str) -> Result<SpecialVocab, Error> {
        let m: Manifest = serde_json::from_str(text).map_err(|e| Error::Manifest(e.to_string()))?;
        SpecialVocab::from_manifest(m)
    }

    pub fn manifest(&self) -> Manifest {
        Manifest { int_range: self.int_range, counts: self.counts(), tokens: self.tokens.clone() }
    }

    pub fn manifest_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.manifest()).expect("manifest serializes");
        s.push('\n');
        s
    }

    pub fn counts(&self) -> ManifestCounts {
        let count = |c| self.tokens.iter().filter(|t| t.category == c).count();
        ManifestCounts {
            tag: count(Category::Tag),
            attr: count(Category::Attr),
            int: count(Category::Int),
            frac: count(Category::Frac),
            total: self.tokens.len(),
        }
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn tokens(&self) -> &[SpecialToken] {
        &self.tokens
    }

    pub fn of_category(&self, category: Category) -> impl Iterator<Item = &SpecialToken> {
        self.tokens.iter().filter(move |t| t.category == category)
    }

    pub fn get(&self, index: u32) -> Option<&SpecialToken> {
        self.tokens.get(index as usize)
    }

    pub fn index_of(&self, text: &str) -> Option<u32> {
        self.by_text.get(text).copied()
    }

    pub fn contains(&self, text: &str) -> bool {
        self.by_text.contains_key(text)
    }

    pub(crate) fn index_in(&self, text: &str, category: Category) -> Option<u32> {
        self.index_of(text).filter(|&i| self.tokens[i as usize].category == category)
    }

    /// Tag and attribute candidates starting with `first`, longest first.
    pub(crate) fn markup_candidates(&self, first: u8) -> &[u32] {
        self.markup.get(&first).map(Vec::as_slice).unwrap_or(&[])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn category_sizes() {
        let v = build_vocab();
        let c = v.counts();
        assert_eq!((c.tag, c.attr, c.int, c.frac, c.total), (55, 42, 257, 110, 464));
    }

    #[test]
    fn listed_tokens_present() {
        let v = build_vocab();
        for t in ["<animateTransform", "</animateTransform>", "viewBox=\"", "stroke-width=\"", "-128", "128", ".0", ".99", ".5", ".05"] {
            assert!(v.contains(t), "{t}");
        }
        assert!(!v.contains("129"));
        assert!(!v.contains("-0"));
    }

    #[test]
    fn longest_candidate_first() {
        let v = build_vocab();
        let c: Vec<&str> = v.markup_candidates(b'<').iter().map(|&i| v.get(i).unwrap().text.as_str()).collect();
        let a = c.iter().position(|t| *t == "<animateTransform").unwrap();
        let b = c.iter().position(|t| *t == "<animate").unwrap();
        assert!(a < b);
    }

    #[test]
    fn manifest_round_trip_and_validation() {
        let v = build_vocab();
        let back = SpecialVocab::from_manifest_json(&v.manifest_json()).unwrap();
        assert_eq!(back.tokens(), v.tokens());
        let mut m = v.manifest();
        m.tokens[3].text = "<svg".into();
        assert!(SpecialVocab::from_manifest(m).is_err());
        let narrow = SpecialVocab::with_int_range(-123, 123);
        assert_eq!(narrow.counts().int, 247);
    }
}
