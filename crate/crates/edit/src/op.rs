use serde::{Deserialize, Serialize};
use svgbench_core::Color;

use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FlipAxis {
    /// Mirror left to right.
    Horizontal,
    /// Mirror top to bottom.
    Vertical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CropRegion {
    LeftHalf,
    RightHalf,
    TopHalf,
    BottomHalf,
}

impl CropRegion {
    pub const ALL: [CropRegion; 4] = [CropRegion::LeftHalf, CropRegion::RightHalf, CropRegion::TopHalf, CropRegion::BottomHalf];

    pub fn label(self) -> &'static str {
        match self {
            CropRegion::LeftHalf => "left half",
            CropRegion::RightHalf => "right half",
            CropRegion::TopHalf => "top half",
            CropRegion::BottomHalf => "bottom half",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EditKind {
    ColorEdit,
    AddStroke,
    Translate,
    Scale,
    Rotate,
    Flip,
    Transparency,
    Crop,
}

impl EditKind {
    pub const ALL: [EditKind; 8] = [
        EditKind::ColorEdit,
        EditKind::AddStroke,
        EditKind::Translate,
        EditKind::Scale,
        EditKind::Rotate,
        EditKind::Flip,
        EditKind::Transparency,
        EditKind::Crop,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EditKind::ColorEdit => "ColorEdit",
            EditKind::AddStroke => "AddStroke",
            EditKind::Translate => "Translate",
            EditKind::Scale => "Scale",
            EditKind::Rotate => "Rotate",
            EditKind::Flip => "Flip",
            EditKind::Transparency => "Transparency",
            EditKind::Crop => "Crop",
        }
    }
}

/// One low-level edit. Serialized as `{"op_kind": .., "params": {..}}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op_kind", content = "params")]
pub enum EditOp {
    ColorEdit {
        from_hex: String,
        to_hex: String,
    },
    AddStroke {
        color: String,
        width: f64,
    },
    /// Offset in user units. With `bounded`, the offset is clamped so that
    /// visible content stays on the canvas.
    Translate {
        dx: f64,
        dy: f64,
        #[serde(default)]
        bounded: bool,
    },
    /// Uniform scale about the canvas center.
    Scale {
        factor: f64,
    },
    /// Clockwise on screen about the canvas center.
    Rotate {
        degrees: f64,
    },
    Flip {
        axis: FlipAxis,
    },
    Transparency {
        opacity: f64,
    },
    Crop {
        region: CropRegion,
    },
}

fn parse_hex(text: &str) -> Result<Color, Error> {
    let hex = text.strip_prefix('#').ok_or_else(|| Error::InvalidParameter(format!("{text:?} is not a hex color")))?;
    if !matches!(hex.len(), 3 | 6) || !hex.bytes().all(|b| b.is_ascii_hexdigit()) {
        return Err(Error::InvalidParameter(format!("{text:?} is not a hex color")));
    }
    text.parse::<Color>().map_err(|e| Error::InvalidParameter(e.to_string()))
}

impl EditOp {
    pub fn kind(&self) -> EditKind {
        match self {
            EditOp::ColorEdit { .. } => EditKind::ColorEdit,
            EditOp::AddStroke { .. } => EditKind::AddStroke,
            EditOp::Translate { .. } => EditKind::Translate,
            EditOp::Scale { .. } => EditKind::Scale,
            EditOp::Rotate { .. } => EditKind::Rotate,
            EditOp::Flip { .. } => EditKind::Flip,
            EditOp::Transparency { .. } => EditKind::Transparency,
            EditOp::Crop { .. } => EditKind::Crop,
        }
    }

    pub fn validate(&self) -> Result<(), Error> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        match self {
            EditOp::ColorEdit { from_hex, to_hex } => {
                parse_hex(from_hex)?;
                parse_hex(to_hex)?;
            }
            EditOp::AddStroke { color, width } => {
                parse_hex(color)?;
                if !(width.is_finite() && *width > 0.0) {
                    return bad(format!("stroke width must be positive, got {width}"));
                }
            }
            EditOp::Translate { dx, dy, .. } => {
                if !(dx.is_finite() && dy.is_finite()) {
                    return bad(format!("translation ({dx}, {dy}) is not finite"));
                }
            }
            EditOp::Scale { factor } => {
                if !(factor.is_finite() && *factor > 0.0) {
                    return bad(format!("scale factor must be positive, got {factor}"));
                }
            }
            EditOp::Rotate { degrees } => {
                if degrees.is_nan() || degrees.abs() >= 360.0 {
                    return bad(format!("rotation must lie in (-360, 360), got {degrees}"));
                }
            }
            EditOp::Transparency { opacity } => {
                if !(0.0..=1.0).contains(opacity) {
                    return bad(format!("opacity must lie in [0, 1], got {opacity}"));
                }
            }
            EditOp::Flip { .. } | EditOp::Crop { .. } => {}
        }
        Ok(())
    }

    /// Whether the op leaves every document unchanged when rendered.
    pub fn is_identity(&self) -> bool {
        match self {
            EditOp::Translate { dx, dy, .. } => *dx == 0.0 && *dy == 0.0,
            EditOp::Scale { factor } => *factor == 1.0,
            EditOp::Rotate { degrees } => *degrees == 0.0,
            EditOp::Transparency { opacity } => *opacity == 1.0,
            EditOp::ColorEdit { from_hex, to_hex } => match (parse_hex(from_hex), parse_hex(to_hex)) {
                (Ok(a), Ok(b)) => a.same_color(&b),
                _ => false,
            },
            _ => false,
        }
    }
}

pub(crate) fn hex_color(text: &str) -> Result<Color, Error> {
    parse_hex(text).map(|c| c.with_text(text))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let op = EditOp::Crop { region: CropRegion::LeftHalf };
        let v = serde_json::to_value(&op).unwrap();
        assert_eq!(v, serde_json::json!({"op_kind": "Crop", "params": {"region": "left-half"}}));
        let back: EditOp = serde_json::from_value(serde_json::json!({"op_kind": "Translate", "params": {"dx": 3.0, "dy": -2.0}})).unwrap();
        assert_eq!(back, EditOp::Translate { dx: 3.0, dy: -2.0, bounded: false });
    }

    #[test]
    fn validation() {
        assert!(EditOp::Scale { factor: 0.0 }.validate().is_err());
        assert!(EditOp::Rotate { degrees: 360.0 }.validate().is_err());
        assert!(EditOp::Rotate { degrees: -359.0 }.validate().is_ok());
        assert!(EditOp::Transparency { opacity: 1.2 }.validate().is_err());
        assert!(EditOp::ColorEdit { from_hex: "red".into(), to_hex: "#fff".into() }.validate().is_err());
        assert!(EditOp::AddStroke { color: "#000".into(), width: -1.0 }.validate().is_err());
        assert!(EditOp::ColorEdit { from_hex: "#00ABff".into(), to_hex: "#D8BFD8".into() }.validate().is_ok());
    }
}
