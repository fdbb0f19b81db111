//! Decimal rounding and printing of SVG numeric literals.
//!
//! Rounding operates on the shortest decimal representation of an `f64`
//! (the one `Display` produces), so `1.005` rounds to `1.01` the way a reader
//! of the source text expects, rather than to `1` as binary rounding would.

/// Default number of fractional digits kept when printing.
pub const DEFAULT_PRECISION: u32 = 2;

/// Formats `value` with at most `precision` fractional digits, rounding half
/// away from zero and stripping trailing zeros. Negative zero prints as `0`.
pub fn format_number(value: f64, precision: u32) -> String {
    if !value.is_finite() {
        return "0".to_string();
    }
    let text = format!("{}", value.abs());
    let (int_part, frac_part) = match text.split_once('.') {
        Some((i, f)) => (i, f),
        None => (text.as_str(), ""),
    };
    let precision = precision as usize;

    let mut digits: Vec<u8> = int_part.bytes().map(|b| b - b'0').collect();
    let int_len = digits.len();
    let kept = frac_part.len().min(precision);
    digits.extend(frac_part.bytes().take(kept).map(|b| b - b'0'));

    let round_up = frac_part.as_bytes().get(precision).is_some_and(|&b| b >= b'5');
    let mut int_len = int_len;
    if round_up {
        let mut i = digits.len();
        loop {
            if i == 0 {
                digits.insert(0, 1);
                int_len += 1;
                break;
            }
            i -= 1;
            if digits[i] == 9 {
                digits[i] = 0;
            } else {
                digits[i] += 1;
                break;
            }
        }
    }

    let (int_digits, frac_digits) = digits.split_at(int_len);
    let mut frac_end = frac_digits.len();
    while frac_end > 0 && frac_digits[frac_end - 1] == 0 {
        frac_end -= 1;
    }
    let frac_digits = &frac_digits[..frac_end];

    let mut first_nonzero = 0;
    while first_nonzero + 1 < int_digits.len() && int_digits[first_nonzero] == 0 {
        first_nonzero += 1;
    }
    let int_digits = &int_digits[first_nonzero..];

    let is_zero = int_digits.iter().all(|&d| d == 0) && frac_digits.is_empty();
    let mut out = String::with_capacity(int_digits.len() + frac_digits.len() + 2);
    if value.is_sign_negative() && !is_zero {
        out.push('-');
    }
    for &d in int_digits {
        out.push((b'0' + d) as char);
    }
    if !frac_digits.is_empty() {
        out.push('.');
        for &d in frac_digits {
            out.push((b'0' + d) as char);
        }
    }
    out
}

/// Rounds `value` to `precision` decimals, half away from zero.
pub fn round_decimal(value: f64, precision: u32) -> f64 {
    format_number(value, precision).parse().expect("formatted number is always parseable")
}

/// True when `value` is already expressible with `precision` decimals.
pub fn is_quantized(value: f64, precision: u32) -> bool {
    round_decimal(value, precision) == value
}

/// Scans one SVG number starting at byte `pos`, returning the value and the
/// position just past it. Follows the SVG number grammar: optional sign,
/// digits with an optional fraction (or a bare fraction), optional exponent.
pub fn scan_number(bytes: &[u8], pos: usize) -> Option<(f64, usize)> {
    let mut i = pos;
    if i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') {
        i += 1;
    }
    let int_start = i;
    while i < bytes.len() && bytes[i].is_ascii_digit() {
        i += 1;
    }
    let mut has_digits = i > int_start;
    if i < bytes.len() && bytes[i] == b'.' {
        let frac_start = i + 1;
        let mut j = frac_start;
        while j < bytes.len() && bytes[j].is_ascii_digit() {
            j += 1;
        }
        if j > frac_start {
            has_digits = true;
            i = j;
        } else if has_digits {
            // "5." is a complete number
            i = frac_start;
        }
    }
    if !has_digits {
        return None;
    }
    if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
        let mut j = i + 1;
        if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
            j += 1;
        }
        let exp_start = j;
        while j < bytes.len() && bytes[j].is_ascii_digit() {
            j += 1;
        }
        // "1em" is a number followed by a unit, not an exponent
        if j > exp_start {
            i = j;
        }
    }
    let text = std::str::from_utf8(&bytes[pos..i]).ok()?;
    let value: f64 = text.parse().ok()?;
    value.is_finite().then_some((value, i))
}

/// Advances past whitespace and at most one comma.
pub fn skip_separators(bytes: &[u8], mut pos: usize) -> usize {
    while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
        pos += 1;
    }
    if pos < bytes.len() && bytes[pos] == b',' {
        pos += 1;
        while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
    }
    pos
}

/// Parses a whitespace/comma separated list of plain numbers.
pub fn parse_number_list(text: &str) -> Option<Vec<f64>> {
    let bytes = text.as_bytes();
    let mut pos = skip_ws(bytes, 0);
    let mut out = Vec::new();
    while pos < bytes.len() {
        let (v, next) = scan_number(bytes, pos)?;
        out.push(v);
        let after = skip_separators(bytes, next);
        if after == next && after < bytes.len() && !matches!(bytes[after], b'-' | b'+' | b'.') {
            return None;
        }
        pos = after;
    }
    Some(out)
}

pub(crate) fn skip_ws(bytes: &[u8], mut pos: usize) -> usize {
    while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
        pos += 1;
    }
    pos
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trailing_zeros_are_stripped() {
        assert_eq!(format_number(12.50, 2), "12.5");
        assert_eq!(format_number(12.00, 2), "12");
        assert_eq!(format_number(0.0, 2), "0");
        assert_eq!(format_number(-0.0, 2), "0");
    }

    #[test]
    fn rounds_half_away_from_zero() {
        assert_eq!(format_number(63.996, 2), "64");
        assert_eq!(format_number(-0.005, 2), "-0.01");
        assert_eq!(format_number(0.005, 2), "0.01");
        assert_eq!(format_number(1.005, 2), "1.01");
        assert_eq!(format_number(-1.004, 2), "-1");
        assert_eq!(format_number(99.995, 2), "100");
        assert_eq!(format_number(-0.004, 2), "0");
        assert_eq!(format_number(12.0, 2), "12");
        assert_eq!(format_number(2.5, 0), "3");
        assert_eq!(format_number(-2.5, 0), "-3");
    }

    #[test]
    fn tiny_and_large_values() {
        assert_eq!(format_number(1e-20, 2), "0");
        assert_eq!(format_number(1e21, 2), "1000000000000000000000");
        assert_eq!(format_number(0.1 + 0.2, 2), "0.3");
    }

    #[test]
    fn scans_svg_number_grammar() {
        assert_eq!(scan_number(b"-1.5e2x", 0), Some((-150.0, 6)));
        assert_eq!(scan_number(b".5.5", 0), Some((0.5, 2)));
        assert_eq!(scan_number(b"5.", 0), Some((5.0, 2)));
        assert_eq!(scan_number(b"1em", 0), Some((1.0, 1)));
        assert_eq!(scan_number(b"-", 0), None);
        assert_eq!(scan_number(b"abc", 0), None);
    }

    #[test]
    fn number_lists() {
        assert_eq!(parse_number_list("0 0,128 128"), Some(vec![0.0, 0.0, 128.0, 128.0]));
        assert_eq!(parse_number_list("1-2.5.5"), Some(vec![1.0, -2.5, 0.5]));
        assert_eq!(parse_number_list(" 3 "), Some(vec![3.0]));
        assert_eq!(parse_number_list(""), Some(vec![]));
        assert_eq!(parse_number_list("3px"), None);
        assert_eq!(parse_number_list("1,,2"), None);
    }
}
