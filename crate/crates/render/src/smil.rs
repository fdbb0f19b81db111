//! SMIL timeline sampling.
//!
//! [`sample_at`] evaluates every animation element at a document time and
//! writes the animated values into the target attributes, producing a static
//! document the renderer can draw.

use svgbench_core::{AttrValue, Color, Document, Element, ElementKind, Node, PathData, TransformList, TransformOp};

use crate::geom::{dist, flatten_path, Point, Polyline};

const EPS: f64 = 1e-9;

/// Parses a SMIL clock value (`2s`, `150ms`, `1.5`, `00:01.5`, `1min`).
pub fn parse_clock(text: &str) -> Option<f64> {
    let t = text.trim();
    if t.is_empty() {
        return None;
    }
    if t.contains(':') {
        let parts: Vec<&str> = t.split(':').collect();
        let nums: Option<Vec<f64>> = parts.iter().map(|p| p.parse::<f64>().ok()).collect();
        let nums = nums?;
        return match nums[..] {
            [m, s] => Some(m * 60.0 + s),
            [h, m, s] => Some(h * 3600.0 + m * 60.0 + s),
            _ => None,
        };
    }
    let (num, scale) = if let Some(n) = t.strip_suffix("ms") {
        (n, 0.001)
    } else if let Some(n) = t.strip_suffix("min") {
        (n, 60.0)
    } else if let Some(n) = t.strip_suffix('h') {
        (n, 3600.0)
    } else if let Some(n) = t.strip_suffix('s') {
        (n, 1.0)
    } else {
        (t, 1.0)
    };
    let v: f64 = num.trim().parse().ok()?;
    v.is_finite().then_some(v * scale)
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Repeat {
    Once,
    Count(f64),
    Indefinite,
}

#[derive(Debug, Clone, PartialEq)]
struct Timing {
    begin: f64,
    dur: Option<f64>,
    repeat: Repeat,
    repeat_dur: Option<f64>,
    end: Option<f64>,
    freeze: bool,
}

fn raw(el: &Element, name: &str) -> Option<String> {
    el.attr(name).map(|v| match v {
        AttrValue::Numbers(n) => {
            n.groups.iter().map(|g| g.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")).collect::<Vec<_>>().join(";")
        }
        AttrValue::Opaque(s) => s.clone(),
        other => other.to_svg_string(9),
    })
}

impl Timing {
    fn of(el: &Element) -> Option<Timing> {
        let begin = match raw(el, "begin") {
            None => 0.0,
            Some(b) => b.split(';').filter_map(parse_clock).min_by(f64::total_cmp)?,
        };
        let dur = raw(el, "dur").and_then(|d| parse_clock(&d)).filter(|d| *d > 0.0);
        let repeat = match raw(el, "repeatCount").as_deref().map(str::trim) {
            Some("indefinite") => Repeat::Indefinite,
            Some(n) => n.parse::<f64>().ok().filter(|n| *n > 0.0 && n.is_finite()).map(Repeat::Count).unwrap_or(Repeat::Once),
            None => Repeat::Once,
        };
        let repeat_dur = match raw(el, "repeatDur").as_deref().map(str::trim) {
            Some("indefinite") => Some(f64::INFINITY),
            Some(d) => parse_clock(d).filter(|d| *d > 0.0),
            None => None,
        };
        let end = raw(el, "end").and_then(|e| e.split(';').filter_map(parse_clock).min_by(f64::total_cmp));
        let freeze = raw(el, "fill").as_deref().map(str::trim) == Some("freeze");
        Some(Timing { begin, dur, repeat, repeat_dur, end, freeze })
    }

    /// Length of the active interval; infinite for indefinite repetition.
    fn active_duration(&self) -> f64 {
        let d = self.dur.unwrap_or(f64::INFINITY);
        let by_count = match self.repeat {
            Repeat::Once => d,
            Repeat::Count(n) => d * n,
            Repeat::Indefinite => f64::INFINITY,
        };
        let mut ad = match (self.repeat_dur, self.repeat) {
            (Some(rd), Repeat::Once) => rd,
            (Some(rd), _) => rd.min(by_count),
            (None, _) => by_count,
        };
        if let Some(end) = self.end {
            ad = ad.min((end - self.begin).max(0.0));
        }
        ad
    }

    /// Finite time at which this animation stops contributing new values:
    /// the end of the active interval, or one simple duration when it
    /// repeats indefinitely.
    fn horizon(&self) -> Option<f64> {
        let d = self.dur?;
        let ad = self.active_duration();
        Some(self.begin + if ad.is_finite() { ad } else { d })
    }

    /// Simple-duration progress in `[0, 1]` at document time `t`, or `None`
    /// when the animation has no effect at `t`.
    fn progress(&self, t: f64) -> Option<f64> {
        if t < self.begin - EPS {
            return None;
        }
        let ad = self.active_duration();
        let local = t - self.begin;
        let Some(d) = self.dur else {
            // indefinite simple duration: frozen at the first value
            return (local <= ad + EPS || self.freeze).then_some(0.0);
        };
        if local > ad + EPS {
            if !self.freeze {
                return None;
            }
            return Some(end_progress(ad, d));
        }
        if (local - ad).abs() <= EPS {
            return Some(end_progress(ad, d));
        }
        let phase = local.max(0.0) % d;
        Some(phase / d)
    }
}

fn end_progress(ad: f64, d: f64) -> f64 {
    let iters = ad / d;
    let frac = iters - iters.floor();
    if frac.abs() < EPS || (1.0 - frac).abs() < EPS {
        1.0
    } else {
        frac
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Val {
    Nums(Vec<f64>),
    Text(String),
}

fn parse_nums(text: &str) -> Option<Vec<f64>> {
    let nums: Option<Vec<f64>> = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| s.strip_suffix("px").unwrap_or(s).parse::<f64>().ok())
        .collect();
    nums.filter(|n| !n.is_empty())
}

fn values_of(el: &Element, name: &str) -> Option<Vec<Val>> {
    match el.attr(name)? {
        AttrValue::Numbers(n) => Some(n.groups.iter().map(|g| Val::Nums(g.clone())).collect()),
        AttrValue::Path(p) => Some(vec![Val::Text(p.to_svg_string(9))]),
        other => {
            let text = match other {
                AttrValue::Opaque(s) => s.clone(),
                v => v.to_svg_string(9),
            };
            let parts: Vec<Val> = text
                .split(';')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| match parse_nums(s) {
                    Some(n) => Val::Nums(n),
                    None => Val::Text(s.to_string()),
                })
                .collect();
            (!parts.is_empty()).then_some(parts)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum CalcMode {
    Linear,
    Discrete,
}

#[derive(Debug, Clone, PartialEq)]
enum Keyframes {
    List(Vec<Val>),
    /// A `to` animation interpolating from the underlying value.
    To(Val),
    /// A `by` animation, added to the underlying value.
    By(Val),
}

fn keyframes(el: &Element) -> Option<Keyframes> {
    if let Some(v) = values_of(el, "values") {
        return Some(Keyframes::List(v));
    }
    let first = |name: &str| values_of(el, name).and_then(|v| v.into_iter().next());
    let from = first("from");
    let to = first("to");
    let by = first("by");
    match (from, to, by) {
        (Some(f), Some(t), _) => Some(Keyframes::List(vec![f, t])),
        (Some(f), None, Some(b)) => {
            let end = match (&f, &b) {
                (Val::Nums(a), Val::Nums(d)) if a.len() == d.len() => Val::Nums(a.iter().zip(d).map(|(x, y)| x + y).collect()),
                _ => b.clone(),
            };
            Some(Keyframes::List(vec![f, end]))
        }
        (None, Some(t), _) => Some(Keyframes::To(t)),
        (None, None, Some(b)) => Some(Keyframes::By(b)),
        (Some(f), None, None) => Some(Keyframes::List(vec![f])),
        (None, None, None) => None,
    }
}

/// Segment index and local fraction for progress `p` over `n` values.
fn locate(p: f64, n: usize, key_times: Option<&[f64]>, mode: CalcMode) -> (usize, f64) {
    if n == 1 {
        return (0, 0.0);
    }
    match mode {
        CalcMode::Discrete => {
            let idx = match key_times {
                Some(kt) => kt.iter().rposition(|k| *k <= p + EPS).unwrap_or(0),
                None => ((p * n as f64).floor() as usize).min(n - 1),
            };
            (idx, 0.0)
        }
        CalcMode::Linear => {
            let segs = n - 1;
            match key_times {
                Some(kt) => {
                    for i in 0..segs {
                        if p <= kt[i + 1] + EPS || i == segs - 1 {
                            let span = kt[i + 1] - kt[i];
                            let f = if span > 0.0 { ((p - kt[i]) / span).clamp(0.0, 1.0) } else { 1.0 };
                            return (i, f);
                        }
                    }
                    (segs - 1, 1.0)
                }
                None => {
                    let x = p * segs as f64;
                    let i = (x.floor() as usize).min(segs - 1);
                    (i, (x - i as f64).clamp(0.0, 1.0))
                }
            }
        }
    }
}

fn key_times(el: &Element, n: usize, mode: CalcMode) -> Option<Vec<f64>> {
    let kt: Vec<f64> = match el.attr("keyTimes")? {
        AttrValue::Numbers(list) => list.values().copied().collect(),
        other => other.to_string().split(';').map(|s| s.trim().parse::<f64>()).collect::<Result<_, _>>().ok()?,
    };
    let valid = kt.len() == n
        && kt.first() == Some(&0.0)
        && (mode == CalcMode::Discrete || kt.last() == Some(&1.0))
        && kt.windows(2).all(|w| w[0] <= w[1]);
    valid.then_some(kt)
}

fn lerp(a: f64, b: f64, f: f64) -> f64 {
    a + (b - a) * f
}

/// Interpolated value between two keyframes; `None` when the pair does not
/// interpolate and the caller should fall back to discrete stepping.
fn interpolate(a: &Val, b: &Val, f: f64) -> Option<AttrValue> {
    match (a, b) {
        (Val::Nums(x), Val::Nums(y)) if x.len() == y.len() => {
            Some(AttrValue::numbers(x.iter().zip(y).map(|(p, q)| lerp(*p, *q, f)).collect()))
        }
        (Val::Text(x), Val::Text(y)) => {
            if let (Ok(c0), Ok(c1)) = (x.parse::<Color>(), y.parse::<Color>()) {
                let ch = |p: u8, q: u8| lerp(p as f64, q as f64, f).round().clamp(0.0, 255.0) as u8;
                let mut c = Color::rgb(ch(c0.r, c1.r), ch(c0.g, c1.g), ch(c0.b, c1.b));
                c.alpha = lerp(c0.alpha, c1.alpha, f);
                return Some(AttrValue::Color(c));
            }
            let (p0, p1) = (x.parse::<PathData>().ok()?, y.parse::<PathData>().ok()?);
            let compatible = p0.commands.len() == p1.commands.len()
                && p0
                    .commands
                    .iter()
                    .zip(&p1.commands)
                    .all(|(c0, c1)| c0.op == c1.op && c0.relative == c1.relative && c0.args.len() == c1.args.len());
            if !compatible {
                return None;
            }
            let mut out = p0.clone();
            for (c, c1) in out.commands.iter_mut().zip(&p1.commands) {
                for (v, w) in c.args.iter_mut().zip(&c1.args) {
                    *v = lerp(*v, *w, f);
                }
            }
            Some(AttrValue::Path(out))
        }
        _ => None,
    }
}

fn to_attr(v: &Val) -> Result<AttrValue, String> {
    match v {
        Val::Nums(n) => Ok(AttrValue::numbers(n.clone())),
        Val::Text(t) => Err(t.clone()),
    }
}

fn underlying(target: &Element, attr: &str) -> Val {
    match target.attr(attr) {
        Some(AttrValue::Numbers(n)) => Val::Nums(n.values().copied().collect()),
        Some(AttrValue::Color(c)) => Val::Text(c.to_hex()),
        Some(AttrValue::Path(p)) => Val::Text(p.to_svg_string(9)),
        Some(other) => {
            let text = other.to_string();
            match parse_nums(&text) {
                Some(n) => Val::Nums(n),
                None => Val::Text(text),
            }
        }
        None => Val::Nums(vec![0.0]),
    }
}

/// Value of a keyframe list at progress `p`.
fn sample_list(vals: &[Val], p: f64, kt: Option<&[f64]>, mode: CalcMode) -> Result<AttrValue, String> {
    let n = vals.len();
    let interpolable = mode == CalcMode::Linear && vals.windows(2).all(|w| interpolate(&w[0], &w[1], 0.0).is_some());
    if !interpolable {
        let (i, _) = locate(p, n, kt.filter(|k| k.len() == n), CalcMode::Discrete);
        return to_attr(&vals[i]);
    }
    let (i, f) = locate(p, n, kt, CalcMode::Linear);
    if n == 1 {
        return to_attr(&vals[0]);
    }
    Ok(interpolate(&vals[i], &vals[i + 1], f).expect("checked interpolable"))
}

fn set_value(target: &mut Element, attr: &str, value: Result<AttrValue, String>) {
    match value {
        Ok(v) => target.set_attr(attr, v),
        Err(text) => target.set_attr_str(attr, &text),
    }
}

#[derive(Debug, Clone)]
struct Animation {
    kind: ElementKind,
    el: Element,
    target: Vec<usize>,
    timing: Timing,
    /// Flattened motion path for `animateMotion`.
    motion: Option<Vec<Polyline>>,
}

fn node_path_of(root: &Element, id: &str) -> Option<Vec<usize>> {
    fn walk(el: &Element, id: &str, path: &mut Vec<usize>) -> bool {
        if el.id() == Some(id) {
            return true;
        }
        for (i, node) in el.children.iter().enumerate() {
            if let Node::Element(child) = node {
                path.push(i);
                if walk(child, id, path) {
                    return true;
                }
                path.pop();
            }
        }
        false
    }
    let mut path = Vec::new();
    walk(root, id, &mut path).then_some(path)
}

fn element_at_mut<'a>(root: &'a mut Element, path: &[usize]) -> Option<&'a mut Element> {
    let mut el = root;
    for &i in path {
        el = match el.children.get_mut(i)? {
            Node::Element(e) => e,
            _ => return None,
        };
    }
    Some(el)
}

fn motion_path(anim: &Element, doc: &Document) -> Option<Vec<Polyline>> {
    const TOL: f64 = 0.01;
    for child in anim.child_elements().filter(|c| c.kind == ElementKind::Mpath) {
        let id = child.href().and_then(|h| h.trim().strip_prefix('#').map(str::to_string));
        if let Some(p) = id.and_then(|id| doc.find_by_id(&id)).and_then(|e| e.attr("d")).and_then(|d| d.as_path()) {
            return Some(flatten_path(p, TOL));
        }
    }
    if let Some(path) = anim.attr("path") {
        let parsed = match path {
            AttrValue::Path(p) => Some(p.clone()),
            other => other.to_string().parse::<PathData>().ok(),
        };
        return parsed.map(|p| flatten_path(&p, TOL));
    }
    let points: Vec<Point> = match keyframes(anim)? {
        Keyframes::List(vals) => vals
            .iter()
            .filter_map(|v| match v {
                Val::Nums(n) if n.len() == 2 => Some((n[0], n[1])),
                _ => None,
            })
            .collect(),
        Keyframes::To(Val::Nums(n)) | Keyframes::By(Val::Nums(n)) if n.len() == 2 => vec![(0.0, 0.0), (n[0], n[1])],
        _ => Vec::new(),
    };
    (!points.is_empty()).then(|| vec![Polyline { points, closed: false }])
}

/// Point and tangent angle (degrees) at arc-length fraction `p`.
fn point_along(lines: &[Polyline], p: f64) -> Option<(Point, f64)> {
    let segments: Vec<(Point, Point)> = lines
        .iter()
        .flat_map(|l| {
            let mut pts = l.points.clone();
            if l.closed && pts.len() > 1 {
                pts.push(pts[0]);
            }
            pts.windows(2).map(|w| (w[0], w[1])).collect::<Vec<_>>()
        })
        .filter(|(a, b)| dist(*a, *b) > 0.0)
        .collect();
    if segments.is_empty() {
        return lines.iter().find_map(|l| l.points.first().copied()).map(|pt| (pt, 0.0));
    }
    let total: f64 = segments.iter().map(|(a, b)| dist(*a, *b)).sum();
    let mut remaining = p.clamp(0.0, 1.0) * total;
    for (i, &(a, b)) in segments.iter().enumerate() {
        let len = dist(a, b);
        if remaining <= len || i == segments.len() - 1 {
            let f = (remaining / len).clamp(0.0, 1.0);
            let pt = (lerp(a.0, b.0, f), lerp(a.1, b.1, f));
            let angle = (b.1 - a.1).atan2(b.0 - a.0).to_degrees();
            return Some((pt, angle));
        }
        remaining -= len;
    }
    None
}

fn collect(doc: &Document) -> Vec<Animation> {
    fn walk(el: &Element, path: &mut Vec<usize>, doc: &Document, out: &mut Vec<Animation>) {
        for (i, node) in el.children.iter().enumerate() {
            let Node::Element(child) = node else { continue };
            if child.kind.is_animation() {
                let target = match child.href() {
                    Some(h) => h.trim().strip_prefix('#').and_then(|id| node_path_of(&doc.root, id)),
                    None => Some(path.clone()),
                };
                if let (Some(target), Some(timing)) = (target, Timing::of(child)) {
                    let motion = (child.kind == ElementKind::AnimateMotion).then(|| motion_path(child, doc)).flatten();
                    out.push(Animation { kind: child.kind, el: child.clone(), target, timing, motion });
                }
                continue;
            }
            path.push(i);
            walk(child, path, doc, out);
            path.pop();
        }
    }
    let mut out = Vec::new();
    walk(&doc.root, &mut Vec::new(), doc, &mut out);
    out
}

/// Whether the document contains any animation element.
pub fn is_animated(doc: &Document) -> bool {
    doc.root.descendants().any(|e| e.kind.is_animation())
}

/// Document duration: the latest finite end of any animation's active
/// interval, counting one simple duration for indefinite repetition.
/// `None` for documents without timed animations.
pub fn animation_duration(doc: &Document) -> Option<f64> {
    collect(doc).iter().filter_map(|a| a.timing.horizon()).filter(|h| h.is_finite() && *h > 0.0).max_by(f64::total_cmp)
}

/// Evenly spaced timestamps covering `[0, duration]`, both ends included.
pub fn frame_times(n_frames: usize, duration: f64) -> Vec<f64> {
    match n_frames {
        0 => Vec::new(),
        1 => vec![0.0],
        n => (0..n).map(|k| k as f64 * duration / (n - 1) as f64).collect(),
    }
}

/// Static snapshot of `doc` at time `t` seconds.
pub fn sample_at(doc: &Document, t: f64) -> Document {
    let anims = collect(doc);
    let mut out = doc.clone();
    for anim in &anims {
        let Some(p) = anim.timing.progress(t) else {
            continue;
        };
        let Some(target) = element_at_mut(&mut out.root, &anim.target) else {
            continue;
        };
        apply(anim, p, target);
    }
    out
}

fn calc_mode(el: &Element) -> CalcMode {
    match el.attr_text("calcMode").as_deref().map(str::trim) {
        Some("discrete") => CalcMode::Discrete,
        _ => CalcMode::Linear,
    }
}

fn apply(anim: &Animation, p: f64, target: &mut Element) {
    let el = &anim.el;
    match anim.kind {
        ElementKind::Set => {
            let (Some(name), Some(to)) = (el.attr_text("attributeName"), raw(el, "to")) else {
                return;
            };
            target.set_attr_str(name.trim(), &to);
        }
        ElementKind::Animate => {
            let Some(name) = el.attr_text("attributeName") else { return };
            let name = name.trim();
            let Some(frames) = keyframes(el) else { return };
            let mode = calc_mode(el);
            let value = match frames {
                Keyframes::List(vals) => {
                    let kt = key_times(el, vals.len(), mode);
                    sample_list(&vals, p, kt.as_deref(), mode)
                }
                Keyframes::To(to) => {
                    let base = underlying(target, name);
                    sample_list(&[base, to], p, None, mode)
                }
                Keyframes::By(by) => match (underlying(target, name), &by) {
                    (Val::Nums(b), Val::Nums(d)) if b.len() == d.len() => {
                        Ok(AttrValue::numbers(b.iter().zip(d).map(|(x, y)| x + y * p).collect()))
                    }
                    _ => return,
                },
            };
            set_value(target, name, value);
        }
        ElementKind::AnimateTransform => apply_transform(el, p, target),
        ElementKind::AnimateMotion => {
            let Some(lines) = &anim.motion else { return };
            let frac = match el.attr("keyPoints") {
                Some(AttrValue::Numbers(kp)) => {
                    let kp: Vec<f64> = kp.values().copied().collect();
                    let vals: Vec<Val> = kp.iter().map(|k| Val::Nums(vec![*k])).collect();
                    let kt = key_times(el, kp.len(), CalcMode::Linear);
                    match sample_list(&vals, p, kt.as_deref(), CalcMode::Linear) {
                        Ok(v) => v.as_number().unwrap_or(p),
                        Err(_) => p,
                    }
                }
                _ => p,
            };
            let Some(((x, y), tangent)) = point_along(lines, frac) else { return };
            let rotate = match el.attr_text("rotate").as_deref().map(str::trim) {
                Some("auto") => tangent,
                Some("auto-reverse") => tangent + 180.0,
                Some(a) => a.parse::<f64>().unwrap_or(0.0),
                None => 0.0,
            };
            let mut ops = vec![TransformOp::Translate(x, Some(y))];
            if rotate != 0.0 {
                ops.push(TransformOp::Rotate(rotate, None));
            }
            prepend_ops(target, ops);
        }
        _ => {}
    }
}

fn existing_ops(target: &Element) -> Vec<TransformOp> {
    match target.attr("transform") {
        Some(AttrValue::Transform(t)) => t.ops.clone(),
        _ => Vec::new(),
    }
}

fn prepend_ops(target: &mut Element, mut ops: Vec<TransformOp>) {
    ops.extend(existing_ops(target));
    target.set_attr("transform", AttrValue::Transform(TransformList::new(ops)));
}

fn apply_transform(el: &Element, p: f64, target: &mut Element) {
    let kind = el.attr_text("type").unwrap_or_else(|| "translate".into());
    let Some(frames) = keyframes(el) else { return };
    let mode = calc_mode(el);
    let nums = |v: &Val| match v {
        Val::Nums(n) => Some(n.clone()),
        Val::Text(_) => None,
    };
    let value: Vec<f64> = match frames {
        Keyframes::List(vals) => {
            let kt = key_times(el, vals.len(), mode);
            let Some(list) = vals.iter().map(nums).collect::<Option<Vec<_>>>() else { return };
            // pad shorter groups so that e.g. "0" and "10 5" interpolate
            let width = list.iter().map(Vec::len).max().unwrap_or(0);
            let padded: Vec<Val> = list
                .into_iter()
                .map(|mut v| {
                    let fill = if kind.trim() == "scale" && v.len() == 1 { v[0] } else { 0.0 };
                    v.resize(width, fill);
                    Val::Nums(v)
                })
                .collect();
            match sample_list(&padded, p, kt.as_deref(), mode) {
                Ok(AttrValue::Numbers(n)) => n.values().copied().collect(),
                _ => return,
            }
        }
        Keyframes::To(v) | Keyframes::By(v) => {
            let Some(to) = nums(&v) else { return };
            let from: Vec<f64> = match kind.trim() {
                "scale" => vec![1.0; to.len()],
                _ => vec![0.0; to.len()],
            };
            from.iter().zip(&to).map(|(a, b)| lerp(*a, *b, p)).collect()
        }
    };
    let at = |i: usize| value.get(i).copied();
    let op = match kind.trim() {
        "translate" => TransformOp::Translate(at(0).unwrap_or(0.0), at(1)),
        "scale" => TransformOp::Scale(at(0).unwrap_or(1.0), at(1)),
        "rotate" => TransformOp::Rotate(
            at(0).unwrap_or(0.0),
            match (at(1), at(2)) {
                (Some(cx), Some(cy)) => Some((cx, cy)),
                _ => None,
            },
        ),
        "skewX" => TransformOp::SkewX(at(0).unwrap_or(0.0)),
        "skewY" => TransformOp::SkewY(at(0).unwrap_or(0.0)),
        _ => return,
    };
    let additive = el.attr_text("additive").as_deref().map(str::trim) == Some("sum");
    let mut ops = if additive { existing_ops(target) } else { Vec::new() };
    ops.push(op);
    target.set_attr("transform", AttrValue::Transform(TransformList::new(ops)));
}
