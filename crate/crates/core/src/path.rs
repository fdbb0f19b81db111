//! Path data (`d="..."`) grammar.

use std::fmt;
use std::str::FromStr;

use crate::number::{format_number, scan_number, skip_separators, skip_ws};
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PathOp {
    MoveTo,
    LineTo,
    HorizontalTo,
    VerticalTo,
    CubicTo,
    SmoothCubicTo,
    QuadTo,
    SmoothQuadTo,
    ArcTo,
    ClosePath,
}

impl PathOp {
    /// Number of arguments consumed by one repetition of the command.
    pub fn arity(self) -> usize {
        match self {
            PathOp::MoveTo | PathOp::LineTo | PathOp::SmoothQuadTo => 2,
            PathOp::HorizontalTo | PathOp::VerticalTo => 1,
            PathOp::CubicTo => 6,
            PathOp::SmoothCubicTo | PathOp::QuadTo => 4,
            PathOp::ArcTo => 7,
            PathOp::ClosePath => 0,
        }
    }

    pub fn from_letter(c: char) -> Option<(PathOp, bool)> {
        let op = match c.to_ascii_uppercase() {
            'M' => PathOp::MoveTo,
            'L' => PathOp::LineTo,
            'H' => PathOp::HorizontalTo,
            'V' => PathOp::VerticalTo,
            'C' => PathOp::CubicTo,
            'S' => PathOp::SmoothCubicTo,
            'Q' => PathOp::QuadTo,
            'T' => PathOp::SmoothQuadTo,
            'A' => PathOp::ArcTo,
            'Z' => PathOp::ClosePath,
            _ => return None,
        };
        Some((op, c.is_ascii_lowercase()))
    }

    pub fn letter(self, relative: bool) -> char {
        let c = match self {
            PathOp::MoveTo => 'M',
            PathOp::LineTo => 'L',
            PathOp::HorizontalTo => 'H',
            PathOp::VerticalTo => 'V',
            PathOp::CubicTo => 'C',
            PathOp::SmoothCubicTo => 'S',
            PathOp::QuadTo => 'Q',
            PathOp::SmoothQuadTo => 'T',
            PathOp::ArcTo => 'A',
            PathOp::ClosePath => 'Z',
        };
        if relative {
            c.to_ascii_lowercase()
        } else {
            c
        }
    }

    /// Whether argument `index` (within one repetition) is a coordinate or
    /// length, as opposed to an angle or flag.
    pub fn is_length_arg(self, index: usize) -> bool {
        match self {
            PathOp::ArcTo => !matches!(index % 7, 2..=4),
            _ => true,
        }
    }
}

/// One command letter with all of its (possibly repeated) arguments.
#[derive(Debug, Clone, PartialEq)]
pub struct PathCommand {
    pub op: PathOp,
    pub relative: bool,
    pub args: Vec<f64>,
}

impl PathCommand {
    pub fn new(op: PathOp, relative: bool, args: Vec<f64>) -> Self {
        PathCommand { op, relative, args }
    }

    pub fn letter(&self) -> char {
        self.op.letter(self.relative)
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct PathData {
    pub commands: Vec<PathCommand>,
}

impl PathData {
    pub fn new(commands: Vec<PathCommand>) -> Result<Self, Error> {
        let data = PathData { commands };
        data.validate()?;
        Ok(data)
    }

    pub fn is_empty(&self) -> bool {
        self.commands.is_empty()
    }

    /// Checks the two structural invariants: leading moveto and arity.
    pub fn validate(&self) -> Result<(), Error> {
        if let Some(first) = self.commands.first() {
            if first.op != PathOp::MoveTo {
                return Err(Error::path(0, "path data must start with a moveto"));
            }
        }
        for (i, cmd) in self.commands.iter().enumerate() {
            let arity = cmd.op.arity();
            let ok = if arity == 0 { cmd.args.is_empty() } else { !cmd.args.is_empty() && cmd.args.len() % arity == 0 };
            if !ok {
                return Err(Error::path(
                    i,
                    format!("command {} has {} arguments, expected a positive multiple of {}", cmd.letter(), cmd.args.len(), arity),
                ));
            }
        }
        Ok(())
    }

    pub fn numbers(&self) -> impl Iterator<Item = &f64> {
        self.commands.iter().flat_map(|c| c.args.iter())
    }

    pub fn numbers_mut(&mut self) -> impl Iterator<Item = &mut f64> {
        self.commands.iter_mut().flat_map(|c| c.args.iter_mut())
    }

    /// Multiplies every coordinate and length argument by `factor`, leaving
    /// arc rotation angles and flags alone.
    pub fn scale(&mut self, factor: f64) {
        for cmd in &mut self.commands {
            let op = cmd.op;
            for (i, v) in cmd.args.iter_mut().enumerate() {
                if op.is_length_arg(i) {
                    *v *= factor;
                }
            }
        }
    }

    pub fn to_svg_string(&self, precision: u32) -> String {
        let mut out = String::new();
        for cmd in &self.commands {
            out.push(cmd.letter());
            for (i, v) in cmd.args.iter().enumerate() {
                if i > 0 {
                    out.push(' ');
                }
                out.push_str(&format_number(*v, precision));
            }
        }
        out
    }
}

impl fmt::Display for PathData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_svg_string(crate::number::DEFAULT_PRECISION))
    }
}

impl FromStr for PathData {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self, Error> {
        let bytes = text.as_bytes();
        let mut pos = skip_ws(bytes, 0);
        let mut commands: Vec<PathCommand> = Vec::new();

        while pos < bytes.len() {
            let c = bytes[pos] as char;
            let (op, relative) =
                PathOp::from_letter(c).ok_or_else(|| Error::path(pos, format!("expected a command letter, found {c:?}")))?;
            if commands.is_empty() && op != PathOp::MoveTo {
                return Err(Error::path(pos, "path data must start with a moveto"));
            }
            pos = skip_ws(bytes, pos + 1);

            let arity = op.arity();
            let mut args = Vec::new();
            loop {
                if pos >= bytes.len() {
                    break;
                }
                let b = bytes[pos];
                if !(b.is_ascii_digit() || matches!(b, b'-' | b'+' | b'.')) {
                    break;
                }
                let slot = if arity == 0 { 0 } else { args.len() % arity };
                if op == PathOp::ArcTo && (slot == 3 || slot == 4) {
                    let flag = match b {
                        b'0' => 0.0,
                        b'1' => 1.0,
                        _ => return Err(Error::path(pos, "arc flag must be 0 or 1")),
                    };
                    args.push(flag);
                    pos = skip_separators(bytes, pos + 1);
                    continue;
                }
                let (v, next) = scan_number(bytes, pos).ok_or_else(|| Error::path(pos, "malformed number"))?;
                args.push(v);
                pos = skip_separators(bytes, next);
            }

            if arity == 0 {
                if !args.is_empty() {
                    return Err(Error::path(pos, "closepath takes no arguments"));
                }
            } else if args.is_empty() || args.len() % arity != 0 {
                return Err(Error::path(
                    pos,
                    format!("command {} has {} arguments, expected a positive multiple of {}", op.letter(relative), args.len(), arity),
                ));
            }
            commands.push(PathCommand { op, relative, args });
            pos = skip_ws(bytes, pos);
        }
        Ok(PathData { commands })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_simple_path() {
        let p: PathData = "M0 0L10 10".parse().unwrap();
        assert_eq!(
            p.commands,
            vec![PathCommand::new(PathOp::MoveTo, false, vec![0.0, 0.0]), PathCommand::new(PathOp::LineTo, false, vec![10.0, 10.0]),]
        );
    }

    #[test]
    fn dangling_command_is_rejected() {
        assert!("M0 0L".parse::<PathData>().is_err());
        assert!("M0 0L10".parse::<PathData>().is_err());
        assert!("L0 0".parse::<PathData>().is_err());
        assert!("M0 0Z5".parse::<PathData>().is_err());
        assert!("M0 0X".parse::<PathData>().is_err());
    }

    #[test]
    fn compact_forms() {
        let p: PathData = "m1-2.5.5.5l3,4z".parse().unwrap();
        assert_eq!(p.commands[0].args, vec![1.0, -2.5, 0.5, 0.5]);
        assert_eq!(p.commands.len(), 3);
        // odd number of moveto args is an arity error
        assert!("m1-2.5.5".parse::<PathData>().is_err());
        let p: PathData = "M0 0a10 10 0 1110 10".parse().unwrap();
        assert_eq!(p.commands[1].args, vec![10.0, 10.0, 0.0, 1.0, 1.0, 10.0, 10.0]);
    }

    #[test]
    fn serializes_with_two_decimals() {
        let p: PathData = "M 0.125 10 C 1 2 3 4 5 6 z".parse().unwrap();
        assert_eq!(p.to_string(), "M0.13 10C1 2 3 4 5 6z");
    }

    #[test]
    fn scaling_skips_arc_angles_and_flags() {
        let mut p: PathData = "M2 2A4 6 30 1 0 8 8".parse().unwrap();
        p.scale(0.5);
        assert_eq!(p.commands[1].args, vec![2.0, 3.0, 30.0, 1.0, 0.0, 4.0, 4.0]);
    }

    fn op_strategy() -> impl Strategy<Value = PathOp> {
        prop_oneof![
            Just(PathOp::LineTo),
            Just(PathOp::HorizontalTo),
            Just(PathOp::VerticalTo),
            Just(PathOp::CubicTo),
            Just(PathOp::SmoothCubicTo),
            Just(PathOp::QuadTo),
            Just(PathOp::SmoothQuadTo),
            Just(PathOp::ArcTo),
            Just(PathOp::ClosePath),
        ]
    }

    fn args_for(op: PathOp, reps: usize, extra: usize) -> Vec<f64> {
        (0..op.arity() * reps + extra)
            .map(|i| if op == PathOp::ArcTo && matches!(i % 7, 3 | 4) { (i % 2) as f64 } else { (i as f64) * 1.5 - 7.0 })
            .collect()
    }

    proptest! {
        #[test]
        fn correct_arity_always_parses(
            ops in proptest::collection::vec((op_strategy(), 1usize..3, any::<bool>()), 0..12)
        ) {
            let mut cmds = vec![PathCommand::new(PathOp::MoveTo, false, args_for(PathOp::MoveTo, 1, 0))];
            for (op, reps, rel) in ops {
                let reps = if op == PathOp::ClosePath { 0 } else { reps };
                cmds.push(PathCommand::new(op, rel, args_for(op, reps, 0)));
            }
            let data = PathData::new(cmds).unwrap();
            let text = data.to_string();
            let reparsed: PathData = text.parse().unwrap();
            prop_assert_eq!(reparsed, data);
        }

        #[test]
        fn off_by_one_arity_always_fails(op in op_strategy(), reps in 1usize..3, drop in any::<bool>()) {
            let text = if op == PathOp::ClosePath {
                "M0 0Z 1".to_string()
            } else {
                let mut args = args_for(op, reps, 0);
                if op.arity() == 1 {
                    args.clear();
                } else if drop {
                    args.pop();
                } else {
                    args.push(1.0);
                }
                let cmd = PathCommand::new(op, false, args);
                format!("M0 0{}{}", cmd.letter(), cmd.args.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "))
            };
            prop_assert!(text.parse::<PathData>().is_err(), "{} parsed", text);
        }
    }
}
