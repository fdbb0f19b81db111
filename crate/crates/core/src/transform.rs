//! Affine matrices and the `transform="..."` attribute grammar.

use std::fmt;
use std::str::FromStr;

use crate::number::{format_number, scan_number, skip_separators, skip_ws};
use crate::Error;

/// A 2×3 affine matrix `[a c e; b d f]` mapping `(x, y)` to
/// `(a·x + c·y + e, b·x + d·y + f)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformMatrix {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
    pub f: f64,
}

impl Default for TransformMatrix {
    fn default() -> Self {
        Self::IDENTITY
    }
}

impl TransformMatrix {
    pub const IDENTITY: TransformMatrix = TransformMatrix { a: 1.0, b: 0.0, c: 0.0, d: 1.0, e: 0.0, f: 0.0 };

    pub fn new(a: f64, b: f64, c: f64, d: f64, e: f64, f: f64) -> Self {
        TransformMatrix { a, b, c, d, e, f }
    }

    pub fn translate(tx: f64, ty: f64) -> Self {
        Self::new(1.0, 0.0, 0.0, 1.0, tx, ty)
    }

    pub fn scale(sx: f64, sy: f64) -> Self {
        Self::new(sx, 0.0, 0.0, sy, 0.0, 0.0)
    }

    /// Rotation by `degrees` (clockwise on screen, since y points down).
    /// Multiples of 90° produce exact matrices.
    pub fn rotate(degrees: f64) -> Self {
        let (sin, cos) = sin_cos_degrees(degrees);
        Self::new(cos, sin, -sin, cos, 0.0, 0.0)
    }

    pub fn rotate_about(degrees: f64, cx: f64, cy: f64) -> Self {
        Self::translate(cx, cy).then(&Self::rotate(degrees)).then(&Self::translate(-cx, -cy))
    }

    pub fn skew_x(degrees: f64) -> Self {
        Self::new(1.0, 0.0, degrees.to_radians().tan(), 1.0, 0.0, 0.0)
    }

    pub fn skew_y(degrees: f64) -> Self {
        Self::new(1.0, degrees.to_radians().tan(), 0.0, 1.0, 0.0, 0.0)
    }

    /// `self ∘ other`: applies `other` first, then `self`.
    pub fn compose(&self, other: &TransformMatrix) -> TransformMatrix {
        TransformMatrix {
            a: self.a * other.a + self.c * other.b,
            b: self.b * other.a + self.d * other.b,
            c: self.a * other.c + self.c * other.d,
            d: self.b * other.c + self.d * other.d,
            e: self.a * other.e + self.c * other.f + self.e,
            f: self.b * other.e + self.d * other.f + self.f,
        }
    }

    /// Post-multiplies `other`, the order transform lists are read in:
    /// `A.then(B)` maps a point through `B` and then `A`.
    pub fn then(&self, other: &TransformMatrix) -> TransformMatrix {
        self.compose(other)
    }

    pub fn apply(&self, x: f64, y: f64) -> (f64, f64) {
        (self.a * x + self.c * y + self.e, self.b * x + self.d * y + self.f)
    }

    pub fn apply_vector(&self, x: f64, y: f64) -> (f64, f64) {
        (self.a * x + self.c * y, self.b * x + self.d * y)
    }

    pub fn determinant(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn inverse(&self) -> Option<TransformMatrix> {
        let det = self.determinant();
        if det == 0.0 || !det.is_finite() {
            return None;
        }
        let inv = 1.0 / det;
        Some(TransformMatrix {
            a: self.d * inv,
            b: -self.b * inv,
            c: -self.c * inv,
            d: self.a * inv,
            e: (self.c * self.f - self.d * self.e) * inv,
            f: (self.b * self.e - self.a * self.f) * inv,
        })
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }

    /// Geometric mean of the axis scale factors, used to scale stroke widths.
    pub fn mean_scale(&self) -> f64 {
        self.determinant().abs().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        [self.a, self.b, self.c, self.d, self.e, self.f].iter().all(|v| v.is_finite())
    }
}

/// `(sin, cos)` of an angle in degrees, exact at multiples of 90°.
pub fn sin_cos_degrees(degrees: f64) -> (f64, f64) {
    let turns = degrees / 90.0;
    if turns.fract() == 0.0 && turns.abs() < 1e15 {
        match (turns as i64).rem_euclid(4) {
            0 => (0.0, 1.0),
            1 => (1.0, 0.0),
            2 => (0.0, -1.0),
            _ => (-1.0, 0.0),
        }
    } else {
        degrees.to_radians().sin_cos()
    }
}

/// One function of a transform list, kept in source form so it can be
/// printed back the way it was written.
#[derive(Debug, Clone, PartialEq)]
pub enum TransformOp {
    Matrix([f64; 6]),
    Translate(f64, Option<f64>),
    Scale(f64, Option<f64>),
    Rotate(f64, Option<(f64, f64)>),
    SkewX(f64),
    SkewY(f64),
}

impl TransformOp {
    pub fn to_matrix(&self) -> TransformMatrix {
        match *self {
            TransformOp::Matrix([a, b, c, d, e, f]) => TransformMatrix::new(a, b, c, d, e, f),
            TransformOp::Translate(tx, ty) => TransformMatrix::translate(tx, ty.unwrap_or(0.0)),
            TransformOp::Scale(sx, sy) => TransformMatrix::scale(sx, sy.unwrap_or(sx)),
            TransformOp::Rotate(angle, None) => TransformMatrix::rotate(angle),
            TransformOp::Rotate(angle, Some((cx, cy))) => TransformMatrix::rotate_about(angle, cx, cy),
            TransformOp::SkewX(angle) => TransformMatrix::skew_x(angle),
            TransformOp::SkewY(angle) => TransformMatrix::skew_y(angle),
        }
    }

    pub fn numbers_mut(&mut self) -> Vec<&mut f64> {
        match self {
            TransformOp::Matrix(m) => m.iter_mut().collect(),
            TransformOp::Translate(x, y) | TransformOp::Scale(x, y) => {
                let mut v = vec![x];
                v.extend(y.as_mut());
                v
            }
            TransformOp::Rotate(a, c) => {
                let mut v = vec![a];
                if let Some((cx, cy)) = c {
                    v.push(cx);
                    v.push(cy);
                }
                v
            }
            TransformOp::SkewX(a) | TransformOp::SkewY(a) => vec![a],
        }
    }

    /// Conjugates the function by a uniform scale about the origin: the
    /// linear part is unchanged, translations and pivots scale by `factor`.
    pub fn scale_translation(&mut self, factor: f64) {
        match self {
            TransformOp::Matrix(m) => {
                m[4] *= factor;
                m[5] *= factor;
            }
            TransformOp::Translate(x, y) => {
                *x *= factor;
                if let Some(y) = y {
                    *y *= factor;
                }
            }
            TransformOp::Rotate(_, Some((cx, cy))) => {
                *cx *= factor;
                *cy *= factor;
            }
            _ => {}
        }
    }

    fn name(&self) -> &'static str {
        match self {
            TransformOp::Matrix(_) => "matrix",
            TransformOp::Translate(..) => "translate",
            TransformOp::Scale(..) => "scale",
            TransformOp::Rotate(..) => "rotate",
            TransformOp::SkewX(_) => "skewX",
            TransformOp::SkewY(_) => "skewY",
        }
    }

    fn args(&self) -> Vec<f64> {
        match *self {
            TransformOp::Matrix(m) => m.to_vec(),
            TransformOp::Translate(x, y) | TransformOp::Scale(x, y) => {
                let mut v = vec![x];
                v.extend(y);
                v
            }
            TransformOp::Rotate(a, c) => {
                let mut v = vec![a];
                if let Some((cx, cy)) = c {
                    v.extend([cx, cy]);
                }
                v
            }
            TransformOp::SkewX(a) | TransformOp::SkewY(a) => vec![a],
        }
    }

    pub fn to_svg_string(&self, precision: u32) -> String {
        let args: Vec<String> = self.args().iter().map(|v| format_number(*v, precision)).collect();
        format!("{}({})", self.name(), args.join(" "))
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct TransformList {
    pub ops: Vec<TransformOp>,
}

impl TransformList {
    pub fn new(ops: Vec<TransformOp>) -> Self {
        TransformList { ops }
    }

    pub fn to_matrix(&self) -> TransformMatrix {
        self.ops.iter().fold(TransformMatrix::IDENTITY, |acc, op| acc.then(&op.to_matrix()))
    }

    pub fn to_svg_string(&self, precision: u32) -> String {
        self.ops.iter().map(|op| op.to_svg_string(precision)).collect::<Vec<_>>().join(" ")
    }
}

impl fmt::Display for TransformList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_svg_string(crate::number::DEFAULT_PRECISION))
    }
}

impl FromStr for TransformList {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self, Error> {
        let bytes = text.as_bytes();
        let mut pos = skip_ws(bytes, 0);
        let mut ops = Vec::new();
        while pos < bytes.len() {
            let name_start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_alphabetic() {
                pos += 1;
            }
            let name = &text[name_start..pos];
            pos = skip_ws(bytes, pos);
            if bytes.get(pos) != Some(&b'(') {
                return Err(Error::Transform(format!("expected '(' after {name:?}")));
            }
            pos = skip_ws(bytes, pos + 1);
            let mut args = Vec::new();
            while pos < bytes.len() && bytes[pos] != b')' {
                let (v, next) = scan_number(bytes, pos).ok_or_else(|| Error::Transform(format!("malformed number in {name}()")))?;
                args.push(v);
                pos = skip_separators(bytes, next);
            }
            if pos >= bytes.len() {
                return Err(Error::Transform(format!("unterminated {name}()")));
            }
            pos += 1;
            let op = match (name, args.as_slice()) {
                ("matrix", &[a, b, c, d, e, f]) => TransformOp::Matrix([a, b, c, d, e, f]),
                ("translate", &[x]) => TransformOp::Translate(x, None),
                ("translate", &[x, y]) => TransformOp::Translate(x, Some(y)),
                ("scale", &[x]) => TransformOp::Scale(x, None),
                ("scale", &[x, y]) => TransformOp::Scale(x, Some(y)),
                ("rotate", &[a]) => TransformOp::Rotate(a, None),
                ("rotate", &[a, cx, cy]) => TransformOp::Rotate(a, Some((cx, cy))),
                ("skewX", &[a]) => TransformOp::SkewX(a),
                ("skewY", &[a]) => TransformOp::SkewY(a),
                _ => return Err(Error::Transform(format!("{name}() with {} arguments", args.len()))),
            };
            ops.push(op);
            pos = skip_separators(bytes, pos);
        }
        Ok(TransformList { ops })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: &TransformMatrix, b: &TransformMatrix) -> bool {
        [(a.a, b.a), (a.b, b.b), (a.c, b.c), (a.d, b.d), (a.e, b.e), (a.f, b.f)]
            .iter()
            .all(|(x, y)| (x - y).abs() <= 1e-9 * (1.0 + x.abs().max(y.abs())))
    }

    #[test]
    fn parses_function_lists() {
        let t: TransformList = "translate(10,20) rotate(45 5 5)scale(2)".parse().unwrap();
        assert_eq!(
            t.ops,
            vec![TransformOp::Translate(10.0, Some(20.0)), TransformOp::Rotate(45.0, Some((5.0, 5.0))), TransformOp::Scale(2.0, None),]
        );
        assert_eq!(t.to_string(), "translate(10 20) rotate(45 5 5) scale(2)");
        assert!("rotate(1 2)".parse::<TransformList>().is_err());
        assert!("translate(1".parse::<TransformList>().is_err());
        assert!("shear(1)".parse::<TransformList>().is_err());
    }

    #[test]
    fn right_angles_are_exact() {
        let m = TransformMatrix::rotate_about(90.0, 64.0, 64.0);
        assert_eq!(m.apply(0.0, 0.0), (128.0, 0.0));
        assert_eq!(m.apply(128.0, 0.0), (128.0, 128.0));
        let m = TransformMatrix::rotate(-270.0);
        assert_eq!(m, TransformMatrix::rotate(90.0));
    }

    #[test]
    fn list_order_applies_rightmost_first() {
        let t: TransformList = "translate(10 0) scale(2)".parse().unwrap();
        assert_eq!(t.to_matrix().apply(1.0, 1.0), (12.0, 2.0));
    }

    #[test]
    fn inverse_round_trips() {
        let m = TransformMatrix::new(2.0, 1.0, -1.0, 3.0, 5.0, -7.0);
        let inv = m.inverse().unwrap();
        assert!(close(&m.compose(&inv), &TransformMatrix::IDENTITY));
        assert!(TransformMatrix::scale(0.0, 1.0).inverse().is_none());
    }

    fn matrix() -> impl Strategy<Value = TransformMatrix> {
        proptest::array::uniform6(-10.0f64..10.0).prop_map(|[a, b, c, d, e, f]| TransformMatrix::new(a, b, c, d, e, f))
    }

    proptest! {
        #[test]
        fn identity_is_neutral(t in matrix()) {
            prop_assert_eq!(TransformMatrix::IDENTITY.compose(&t), t);
            prop_assert_eq!(t.compose(&TransformMatrix::IDENTITY), t);
        }

        #[test]
        fn compose_is_associative(x in matrix(), y in matrix(), z in matrix()) {
            let left = x.compose(&y).compose(&z);
            let right = x.compose(&y.compose(&z));
            prop_assert!(close(&left, &right), "{:?} vs {:?}", left, right);
        }
    }
}
