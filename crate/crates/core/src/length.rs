//! Lengths with units, resolved to user units.

use crate::number::scan_number;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LengthUnit {
    None,
    Px,
    Percent,
    Em,
    Ex,
    In,
    Cm,
    Mm,
    Pt,
    Pc,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Length {
    pub value: f64,
    pub unit: LengthUnit,
}

/// Which viewport dimension a percentage refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Diagonal,
}

pub const DEFAULT_FONT_SIZE: f64 = 16.0;

impl Length {
    pub fn parse(text: &str) -> Option<Length> {
        let text = text.trim();
        let bytes = text.as_bytes();
        let (value, end) = scan_number(bytes, 0)?;
        let unit = match &text[end..] {
            "" => LengthUnit::None,
            "px" => LengthUnit::Px,
            "%" => LengthUnit::Percent,
            "em" => LengthUnit::Em,
            "ex" => LengthUnit::Ex,
            "in" => LengthUnit::In,
            "cm" => LengthUnit::Cm,
            "mm" => LengthUnit::Mm,
            "pt" => LengthUnit::Pt,
            "pc" => LengthUnit::Pc,
            _ => return None,
        };
        Some(Length { value, unit })
    }

    /// Converts to user units; percentages resolve against `viewport`
    /// (width, height) along `axis`.
    pub fn to_user(&self, viewport: (f64, f64), axis: Axis) -> f64 {
        let v = self.value;
        match self.unit {
            LengthUnit::None | LengthUnit::Px => v,
            LengthUnit::Percent => {
                let basis = match axis {
                    Axis::X => viewport.0,
                    Axis::Y => viewport.1,
                    Axis::Diagonal => ((viewport.0.powi(2) + viewport.1.powi(2)) / 2.0).sqrt(),
                };
                v / 100.0 * basis
            }
            LengthUnit::Em => v * DEFAULT_FONT_SIZE,
            LengthUnit::Ex => v * DEFAULT_FONT_SIZE / 2.0,
            LengthUnit::In => v * 96.0,
            LengthUnit::Cm => v * 96.0 / 2.54,
            LengthUnit::Mm => v * 96.0 / 25.4,
            LengthUnit::Pt => v * 96.0 / 72.0,
            LengthUnit::Pc => v * 16.0,
        }
    }
}

/// The percentage axis of a geometry attribute.
pub fn axis_of(attr: &str) -> Axis {
    match attr {
        "x" | "cx" | "x1" | "x2" | "fx" | "width" | "rx" | "dx" | "refX" => Axis::X,
        "y" | "cy" | "y1" | "y2" | "fy" | "height" | "ry" | "dy" | "refY" => Axis::Y,
        _ => Axis::Diagonal,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn units_resolve() {
        let vp = (200.0, 100.0);
        assert_eq!(Length::parse("50%").unwrap().to_user(vp, Axis::X), 100.0);
        assert_eq!(Length::parse("50%").unwrap().to_user(vp, Axis::Y), 50.0);
        assert_eq!(Length::parse("1in").unwrap().to_user(vp, Axis::X), 96.0);
        assert_eq!(Length::parse("12px").unwrap().to_user(vp, Axis::X), 12.0);
        assert_eq!(Length::parse("-3").unwrap().to_user(vp, Axis::X), -3.0);
        assert!(Length::parse("3 4").is_none());
        assert!(Length::parse("auto").is_none());
    }
}
