//! Random icon documents written the way editors and icon sets emit them:
//! assorted coordinate systems, inline styles, metadata, editor attributes,
//! defs with gradients and clip paths, and occasional SMIL animation.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use svgbench_core::number::format_number;

pub const PALETTE: [&str; 20] = [
    "#e53935", "#d81b60", "#8e24aa", "#5e35b1", "#3949ab", "#1e88e5", "#039be5", "#00acc1", "#00897b", "#43a047", "#7cb342", "#c0ca33",
    "#fdd835", "#ffb300", "#fb8c00", "#f4511e", "#6d4c41", "#757575", "#546e7a", "#212121",
];

const NAMED: [&str; 6] = ["red", "orange", "teal", "navy", "gold", "black"];

/// Square source sizes drawn for `viewBox` coordinate systems.
const SOURCE_SIZES: [f64; 12] = [16.0, 20.0, 24.0, 32.0, 48.0, 64.0, 100.0, 128.0, 200.0, 256.0, 512.0, 1024.0];

/// Maps design space `[0, 1]²` onto the source coordinate system.
struct Frame {
    x0: f64,
    y0: f64,
    w: f64,
    h: f64,
    step: f64,
}

impl Frame {
    fn snap(&self, v: f64) -> f64 {
        (v / self.step).round() * self.step
    }

    fn x(&self, u: f64) -> f64 {
        self.snap(self.x0 + u * self.w)
    }

    fn y(&self, u: f64) -> f64 {
        self.snap(self.y0 + u * self.h)
    }

    /// A length relative to the shorter side.
    fn len(&self, u: f64) -> f64 {
        self.snap(u * self.w.min(self.h)).max(self.step)
    }
}

fn n(v: f64) -> String {
    format_number(v, 3)
}

struct Writer<'a> {
    rng: &'a mut ChaCha8Rng,
    frame: Frame,
    out: String,
    defs: String,
    next_id: usize,
    animated: bool,
}

#[derive(Clone, Copy, PartialEq)]
enum Cmd {
    M(f64, f64),
    L(f64, f64),
    H(f64),
    V(f64),
    C(f64, f64, f64, f64, f64, f64),
    S(f64, f64, f64, f64),
    Q(f64, f64, f64, f64),
    T(f64, f64),
    A(f64, f64, f64, u8, u8, f64, f64),
    Z,
}

/// Path data text, optionally in relative form.
fn path_text(cmds: &[Cmd], relative: bool) -> String {
    let mut s = String::new();
    let (mut cx, mut cy) = (0.0, 0.0);
    let (mut sx, mut sy) = (0.0, 0.0);
    for (i, c) in cmds.iter().enumerate() {
        let rel = relative && i > 0;
        let (dx, dy) = if rel { (cx, cy) } else { (0.0, 0.0) };
        let letter = |l: char| if rel { l.to_ascii_lowercase() } else { l };
        let part = match *c {
            Cmd::M(x, y) => {
                (sx, sy) = (x, y);
                (cx, cy) = (x, y);
                format!("{}{} {}", letter('M'), n(x - dx), n(y - dy))
            }
            Cmd::L(x, y) => {
                (cx, cy) = (x, y);
                format!("{}{} {}", letter('L'), n(x - dx), n(y - dy))
            }
            Cmd::H(x) => {
                cx = x;
                format!("{}{}", letter('H'), n(x - dx))
            }
            Cmd::V(y) => {
                cy = y;
                format!("{}{}", letter('V'), n(y - dy))
            }
            Cmd::C(x1, y1, x2, y2, x, y) => {
                (cx, cy) = (x, y);
                format!("{}{} {} {} {} {} {}", letter('C'), n(x1 - dx), n(y1 - dy), n(x2 - dx), n(y2 - dy), n(x - dx), n(y - dy))
            }
            Cmd::S(x2, y2, x, y) => {
                (cx, cy) = (x, y);
                format!("{}{} {} {} {}", letter('S'), n(x2 - dx), n(y2 - dy), n(x - dx), n(y - dy))
            }
            Cmd::Q(x1, y1, x, y) => {
                (cx, cy) = (x, y);
                format!("{}{} {} {} {}", letter('Q'), n(x1 - dx), n(y1 - dy), n(x - dx), n(y - dy))
            }
            Cmd::T(x, y) => {
                (cx, cy) = (x, y);
                format!("{}{} {}", letter('T'), n(x - dx), n(y - dy))
            }
            Cmd::A(rx, ry, rot, large, sweep, x, y) => {
                (cx, cy) = (x, y);
                format!("{}{} {} {} {} {} {} {}", letter('A'), n(rx), n(ry), n(rot), large, sweep, n(x - dx), n(y - dy))
            }
            Cmd::Z => {
                (cx, cy) = (sx, sy);
                letter('Z').to_string()
            }
        };
        s.push_str(&part);
    }
    s
}

impl<'a> Writer<'a> {
    fn id(&mut self, prefix: &str) -> String {
        self.next_id += 1;
        format!("{prefix}{}", self.next_id)
    }

    fn color(&mut self) -> String {
        if self.rng.gen_bool(0.08) {
            NAMED.choose(self.rng).unwrap().to_string()
        } else if self.rng.gen_bool(0.1) {
            let c = PALETTE.choose(self.rng).unwrap();
            let v = |i: usize| u8::from_str_radix(&c[i..i + 2], 16).unwrap();
            format!("rgb({}, {}, {})", v(1), v(3), v(5))
        } else if self.rng.gen_bool(0.15) {
            PALETTE.choose(self.rng).unwrap().to_uppercase()
        } else {
            PALETTE.choose(self.rng).unwrap().to_string()
        }
    }

    fn gradient(&mut self) -> String {
        let id = self.id("grad");
        let stops: String = (0..self.rng.gen_range(2..=3))
            .map(|i| {
                let offset = [0.0, 1.0, 0.5][i];
                format!(r#"<stop offset="{}" stop-color="{}"/>"#, n(offset), PALETTE.choose(self.rng).unwrap())
            })
            .collect();
        if self.rng.gen_bool(0.6) {
            let (x1, y1, x2, y2) = if self.rng.gen_bool(0.5) { (0.0, 0.0, 1.0, 1.0) } else { (0.0, 0.0, 0.0, 1.0) };
            self.defs += &format!(r#"<linearGradient id="{id}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}">{stops}</linearGradient>"#);
        } else {
            let (cx, cy, r) = (self.frame.x(0.5), self.frame.y(0.5), self.frame.len(0.4));
            self.defs += &format!(
                r#"<radialGradient id="{id}" cx="{}" cy="{}" r="{}" gradientUnits="userSpaceOnUse">{stops}</radialGradient>"#,
                n(cx),
                n(cy),
                n(r)
            );
        }
        format!("url(#{id})")
    }

    /// Fill and stroke attributes, sometimes as an inline style.
    fn paint(&mut self, stroked_only: bool) -> String {
        let fill = if stroked_only {
            "none".to_string()
        } else if self.rng.gen_bool(0.12) {
            self.gradient()
        } else {
            self.color()
        };
        let stroke = (stroked_only || self.rng.gen_bool(0.3)).then(|| {
            let width = self.frame.len(self.rng.gen_range(0.015..0.06));
            (self.color(), width)
        });
        let mut extras = Vec::new();
        if let Some((c, w)) = &stroke {
            extras.push(("stroke", c.clone()));
            extras.push(("stroke-width", n(*w)));
            if self.rng.gen_bool(0.4) {
                extras.push(("stroke-linecap", ["round", "square", "butt"].choose(self.rng).unwrap().to_string()));
            }
            if self.rng.gen_bool(0.4) {
                extras.push(("stroke-linejoin", ["round", "bevel", "miter"].choose(self.rng).unwrap().to_string()));
            }
            if self.rng.gen_bool(0.1) {
                let d = self.frame.len(0.04);
                extras.push(("stroke-dasharray", format!("{} {}", n(d), n(d / 2.0))));
            }
        }
        if self.rng.gen_bool(0.1) {
            extras.push(("opacity", n(self.rng.gen_range(4..10) as f64 / 10.0)));
        }
        if self.rng.gen_bool(0.1) {
            extras.push(("fill-opacity", "1".to_string()));
        }
        if self.rng.gen_bool(0.2) {
            let mut style = format!("fill:{fill}");
            for (k, v) in &extras {
                style += &format!(";{k}:{v}");
            }
            format!(r#" style="{style}""#)
        } else {
            let mut s = format!(r#" fill="{fill}""#);
            for (k, v) in &extras {
                s += &format!(r#" {k}="{v}""#);
            }
            s
        }
    }

    fn maybe_id(&mut self) -> String {
        if self.rng.gen_bool(0.2) {
            format!(r#" id="{}""#, self.id("shape"))
        } else {
            String::new()
        }
    }

    fn editor_attr(&mut self) -> &'static str {
        if self.rng.gen_bool(0.05) {
            r#" inkscape:label="layer""#
        } else {
            ""
        }
    }

    fn point(&mut self, lo: f64, hi: f64) -> (f64, f64) {
        (self.frame.x(self.rng.gen_range(lo..hi)), self.frame.y(self.rng.gen_range(lo..hi)))
    }

    fn center_radius(&mut self) -> (f64, f64, f64) {
        let r = self.rng.gen_range(0.1..0.3);
        let cx = self.rng.gen_range(0.1 + r..0.9 - r);
        let cy = self.rng.gen_range(0.1 + r..0.9 - r);
        (cx, cy, r)
    }

    fn star(&mut self) -> Vec<Cmd> {
        let (cx, cy, r) = self.center_radius();
        let points = self.rng.gen_range(4..=7);
        let inner = self.rng.gen_range(0.4..0.6);
        let mut cmds = Vec::new();
        for i in 0..points * 2 {
            let a = std::f64::consts::PI * i as f64 / points as f64 - std::f64::consts::FRAC_PI_2;
            let rr = if i % 2 == 0 { r } else { r * inner };
            let (x, y) = (self.frame.x(cx + rr * a.cos()), self.frame.y(cy + rr * a.sin()));
            cmds.push(if i == 0 { Cmd::M(x, y) } else { Cmd::L(x, y) });
        }
        cmds.push(Cmd::Z);
        cmds
    }

    fn blob(&mut self) -> Vec<Cmd> {
        let (cx, cy, r) = self.center_radius();
        let k = 0.5523 * r;
        let jitter = |rng: &mut ChaCha8Rng| rng.gen_range(0.8..1.0);
        let (rt, rr, rb, rl) = (r * jitter(self.rng), r * jitter(self.rng), r * jitter(self.rng), r * jitter(self.rng));
        let f = &self.frame;
        let mut cmds = vec![
            Cmd::M(f.x(cx), f.y(cy - rt)),
            Cmd::C(f.x(cx + k), f.y(cy - rt), f.x(cx + rr), f.y(cy - k), f.x(cx + rr), f.y(cy)),
            Cmd::C(f.x(cx + rr), f.y(cy + k), f.x(cx + k), f.y(cy + rb), f.x(cx), f.y(cy + rb)),
        ];
        if self.rng.gen_bool(0.5) {
            cmds.push(Cmd::S(f.x(cx - rl), f.y(cy + k), f.x(cx - rl), f.y(cy)));
            cmds.push(Cmd::S(f.x(cx - k), f.y(cy - rt), f.x(cx), f.y(cy - rt)));
        } else {
            cmds.push(Cmd::C(f.x(cx - k), f.y(cy + rb), f.x(cx - rl), f.y(cy + k), f.x(cx - rl), f.y(cy)));
            cmds.push(Cmd::C(f.x(cx - rl), f.y(cy - k), f.x(cx - k), f.y(cy - rt), f.x(cx), f.y(cy - rt)));
        }
        cmds.push(Cmd::Z);
        cmds
    }

    fn arrow(&mut self) -> Vec<Cmd> {
        let (cx, cy, r) = self.center_radius();
        let f = &self.frame;
        let t = r * 0.35;
        let mut cmds = vec![
            Cmd::M(f.x(cx - r), f.y(cy - t)),
            Cmd::H(f.x(cx)),
            Cmd::V(f.y(cy - r)),
            Cmd::L(f.x(cx + r), f.y(cy)),
            Cmd::L(f.x(cx), f.y(cy + r)),
            Cmd::V(f.y(cy + t)),
            Cmd::H(f.x(cx - r)),
            Cmd::Z,
        ];
        if self.rng.gen_bool(0.5) {
            // mirror to point left
            for c in cmds.iter_mut() {
                let mx = |x: f64| f.snap(2.0 * f.x(cx) - x);
                *c = match *c {
                    Cmd::M(x, y) => Cmd::M(mx(x), y),
                    Cmd::L(x, y) => Cmd::L(mx(x), y),
                    Cmd::H(x) => Cmd::H(mx(x)),
                    other => other,
                };
            }
        }
        cmds
    }

    fn pie(&mut self) -> Vec<Cmd> {
        let (cx, cy, r) = self.center_radius();
        let f = &self.frame;
        let a0 = self.rng.gen_range(0.0..std::f64::consts::TAU);
        let sweep = self.rng.gen_range(0.6..5.6);
        let a1 = a0 + sweep;
        let rad = f.len(r);
        vec![
            Cmd::M(f.x(cx), f.y(cy)),
            Cmd::L(f.x(cx + r * a0.cos()), f.y(cy + r * a0.sin())),
            Cmd::A(rad, rad, 0.0, (sweep > std::f64::consts::PI) as u8, 1, f.x(cx + r * a1.cos()), f.y(cy + r * a1.sin())),
            Cmd::Z,
        ]
    }

    fn wave(&mut self) -> Vec<Cmd> {
        let f = &self.frame;
        let y = self.rng.gen_range(0.25..0.75);
        let amp = self.rng.gen_range(0.05..0.15);
        vec![
            Cmd::M(f.x(0.1), f.y(y)),
            Cmd::Q(f.x(0.2), f.y(y - amp), f.x(0.3), f.y(y)),
            Cmd::T(f.x(0.5), f.y(y)),
            Cmd::T(f.x(0.7), f.y(y)),
            Cmd::T(f.x(0.9), f.y(y)),
        ]
    }

    fn path(&mut self) {
        let (cmds, open) = match self.rng.gen_range(0..5) {
            0 => (self.star(), false),
            1 => (self.blob(), false),
            2 => (self.arrow(), false),
            3 => (self.pie(), false),
            _ => (self.wave(), true),
        };
        let d = path_text(&cmds, self.rng.gen_bool(0.3));
        let paint = self.paint(open);
        let id = self.maybe_id();
        let ed = self.editor_attr();
        self.out += &format!(r#"<path{id} d="{d}"{paint}{ed}/>"#);
    }

    fn rect(&mut self) {
        let (x, y) = self.point(0.05, 0.55);
        let w = self.frame.len(self.rng.gen_range(0.1..0.4));
        let h = self.frame.len(self.rng.gen_range(0.1..0.4));
        let rx = if self.rng.gen_bool(0.4) { format!(r#" rx="{}""#, n(self.frame.len(0.03))) } else { String::new() };
        let paint = self.paint(false);
        let id = self.maybe_id();
        let anim = self.animation_for("rect", x, y, w, h);
        self.emit("rect", &format!(r#"{id} x="{}" y="{}" width="{}" height="{}"{rx}{paint}"#, n(x), n(y), n(w), n(h)), anim);
    }

    fn circle(&mut self) {
        let (cx, cy, r) = self.center_radius();
        let (x, y, rad) = (self.frame.x(cx), self.frame.y(cy), self.frame.len(r));
        let paint = self.paint(false);
        let id = self.maybe_id();
        let anim = self.animation_for("circle", x, y, rad, rad);
        self.emit("circle", &format!(r#"{id} cx="{}" cy="{}" r="{}"{paint}"#, n(x), n(y), n(rad)), anim);
    }

    fn ellipse(&mut self) {
        let (cx, cy, r) = self.center_radius();
        let (x, y) = (self.frame.x(cx), self.frame.y(cy));
        let (rx, ry) = (self.frame.len(r), self.frame.len(r * self.rng.gen_range(0.4..0.9)));
        let paint = self.paint(false);
        self.out += &format!(r#"<ellipse cx="{}" cy="{}" rx="{}" ry="{}"{paint}/>"#, n(x), n(y), n(rx), n(ry));
    }

    fn line(&mut self) {
        let (x1, y1) = self.point(0.1, 0.9);
        let (x2, y2) = self.point(0.1, 0.9);
        let paint = self.paint(true);
        self.out += &format!(r#"<line x1="{}" y1="{}" x2="{}" y2="{}"{paint}/>"#, n(x1), n(y1), n(x2), n(y2));
    }

    fn poly(&mut self) {
        let count = self.rng.gen_range(3..=6);
        let pts: Vec<String> = (0..count)
            .map(|_| {
                let (x, y) = self.point(0.1, 0.9);
                format!("{},{}", n(x), n(y))
            })
            .collect();
        let closed = self.rng.gen_bool(0.6);
        let paint = self.paint(!closed);
        let tag = if closed { "polygon" } else { "polyline" };
        self.out += &format!(r#"<{tag} points="{}"{paint}/>"#, pts.join(" "));
    }

    fn emit(&mut self, tag: &str, attrs: &str, anim: Option<String>) {
        match anim {
            Some(a) => self.out += &format!("<{tag}{attrs}>{a}</{tag}>"),
            None => self.out += &format!("<{tag}{attrs}/>"),
        }
    }

    fn dur(&mut self) -> String {
        format!("{}s", n(self.rng.gen_range(2..=8) as f64 / 2.0))
    }

    /// A child animation for a rect or circle, when this icon is animated.
    fn animation_for(&mut self, tag: &str, x: f64, y: f64, w: f64, h: f64) -> Option<String> {
        if !self.animated || !self.rng.gen_bool(0.6) {
            return None;
        }
        let dur = self.dur();
        let repeat = if self.rng.gen_bool(0.6) { r#" repeatCount="indefinite""#.to_string() } else { r#" fill="freeze""#.to_string() };
        let (cx, cy) = if tag == "circle" { (x, y) } else { (x + w / 2.0, y + h / 2.0) };
        Some(match self.rng.gen_range(0..5) {
            0 => format!(r#"<animate attributeName="opacity" values="1;0.3;1" dur="{dur}"{repeat}/>"#),
            1 => format!(
                r#"<animateTransform attributeName="transform" type="rotate" from="0 {c}" to="360 {c}" dur="{dur}"{repeat}/>"#,
                c = format!("{} {}", n(cx), n(cy))
            ),
            2 => {
                let (a, b) = (PALETTE.choose(self.rng).unwrap(), PALETTE.choose(self.rng).unwrap());
                format!(r#"<animate attributeName="fill" values="{a};{b};{a}" dur="{dur}"{repeat}/>"#)
            }
            3 => {
                let dx = self.frame.len(0.1);
                if tag == "circle" {
                    format!(r#"<animate attributeName="cx" from="{}" to="{}" dur="{dur}"{repeat}/>"#, n(x), n(x + dx))
                } else {
                    format!(r#"<animate attributeName="x" from="{}" to="{}" dur="{dur}"{repeat}/>"#, n(x), n(x + dx))
                }
            }
            _ => {
                let d = self.frame.len(0.08);
                format!(r#"<animateMotion path="M0 0L{} 0L{} {}Z" dur="{dur}"{repeat}/>"#, n(d), n(d), n(d))
            }
        })
    }

    fn shape(&mut self) {
        match self.rng.gen_range(0..10) {
            0..=2 => self.path(),
            3 | 4 => self.rect(),
            5 | 6 => self.circle(),
            7 => self.ellipse(),
            8 => self.line(),
            _ => self.poly(),
        }
    }

    fn group(&mut self, depth: usize) {
        let mut attrs = String::new();
        match self.rng.gen_range(0..4) {
            0 => {
                let tx = self.frame.snap(self.rng.gen_range(-0.05..0.05) * self.frame.w);
                let ty = self.frame.snap(self.rng.gen_range(-0.05..0.05) * self.frame.h);
                attrs += &format!(r#" transform="translate({} {})""#, n(tx), n(ty));
            }
            1 => {
                let angle = self.rng.gen_range(-30..=30);
                attrs += &format!(r#" transform="rotate({angle} {} {})""#, n(self.frame.x(0.5)), n(self.frame.y(0.5)));
            }
            2 => {
                let c = self.color();
                attrs += &format!(r#" fill="{c}""#);
            }
            _ => {}
        }
        if self.rng.gen_bool(0.1) {
            attrs += r#" inkscape:groupmode="layer""#;
        }
        self.out += &format!("<g{attrs}>");
        for _ in 0..self.rng.gen_range(1..=3) {
            if depth < 2 && self.rng.gen_bool(0.15) {
                self.group(depth + 1);
            } else {
                self.shape();
            }
        }
        self.out += "</g>";
    }

    fn reused(&mut self) {
        let id = self.id("sym");
        let cmds = self.star();
        let color = self.color();
        self.defs += &format!(r#"<path id="{id}" d="{}" fill="{color}"/>"#, path_text(&cmds, false));
        let (dx, dy) = (self.frame.len(0.05), self.frame.len(0.05));
        self.out += &format!(r##"<use href="#{id}"/><use xlink:href="#{id}" x="{}" y="{}" opacity="0.5"/>"##, n(dx), n(dy));
    }

    fn clipped(&mut self) {
        let id = self.id("clip");
        let (cx, cy) = (self.frame.x(0.5), self.frame.y(0.5));
        let r = self.frame.len(0.3);
        self.defs += &format!(r#"<clipPath id="{id}"><circle cx="{}" cy="{}" r="{}"/></clipPath>"#, n(cx), n(cy), n(r));
        self.out += &format!(r#"<g clip-path="url(#{id})">"#);
        self.rect();
        self.shape();
        self.out += "</g>";
    }
}

/// Returns raw SVG source for one icon. `animated` forces at least some
/// elements to carry SMIL animation.
pub fn generate_icon(rng: &mut ChaCha8Rng, animated: bool) -> String {
    let size = *SOURCE_SIZES.choose(rng).unwrap();
    let step = if size <= 32.0 {
        0.25
    } else if size <= 128.0 {
        0.5
    } else {
        1.0
    };
    let (w, h) = if rng.gen_bool(0.1) { (size, size * 0.75) } else { (size, size) };
    let (x0, y0) = if rng.gen_bool(0.1) { (-size / 2.0, -size / 2.0) } else { (0.0, 0.0) };
    let frame = Frame { x0, y0, w, h, step };

    let mut root_attrs = String::from(r#" xmlns="http://www.w3.org/2000/svg""#);
    let mut writer = Writer { rng, frame, out: String::new(), defs: String::new(), next_id: 0, animated };
    let w_ = &mut writer;
    let body_shapes = w_.rng.gen_range(1..=6);
    for _ in 0..body_shapes {
        match w_.rng.gen_range(0..12) {
            0 | 1 => w_.group(0),
            2 if w_.defs.len() < 400 => w_.reused(),
            3 if w_.defs.len() < 400 => w_.clipped(),
            _ => w_.shape(),
        }
    }
    if animated && !w_.out.contains("<animate") {
        w_.animated = true;
        // guarantee at least one animation
        loop {
            let before = w_.out.len();
            w_.circle();
            if w_.out[before..].contains("<animate") {
                break;
            }
            w_.out.truncate(before);
        }
    }

    let uses_xlink = writer.out.contains("xlink:");
    let uses_inkscape = writer.out.contains("inkscape:");
    if uses_xlink {
        root_attrs += r#" xmlns:xlink="http://www.w3.org/1999/xlink""#;
    }
    if uses_inkscape {
        root_attrs += r#" xmlns:inkscape="http://www.inkscape.org/namespaces/inkscape""#;
    }
    let rng = &mut *writer.rng;
    if rng.gen_bool(0.3) {
        root_attrs += r#" version="1.1""#;
    }
    let extent = if rng.gen_bool(0.12) && x0 == 0.0 {
        format!(r#" width="{}" height="{}""#, n(w), n(h))
    } else if rng.gen_bool(0.3) {
        format!(r#" width="{}px" height="{}px" viewBox="{} {} {} {}""#, n(w), n(h), n(x0), n(y0), n(w), n(h))
    } else {
        format!(r#" viewBox="{} {} {} {}""#, n(x0), n(y0), n(w), n(h))
    };
    root_attrs += &extent;

    let mut s = String::new();
    if rng.gen_bool(0.4) {
        s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    }
    if rng.gen_bool(0.2) {
        s += "<!-- Generator: icon export -->\n";
    }
    s += &format!("<svg{root_attrs}>");
    if rng.gen_bool(0.25) {
        s += "<title>icon</title>";
    }
    if rng.gen_bool(0.1) {
        s += "<desc>Exported icon</desc>";
    }
    if rng.gen_bool(0.1) {
        s += "<metadata><rdf>export</rdf></metadata>";
    }
    if !writer.defs.is_empty() {
        s += &format!("<defs>{}</defs>", writer.defs);
    }
    if rng.gen_bool(0.1) {
        s += "<g/>";
    }
    s += &writer.out;
    s += "</svg>\n";
    s
}
