//! Deterministic SVG output: histograms with uncertain bar heights, and
//! scatter plots of set-valued points with the fitted strip.

use std::fmt::Write as _;
use std::path::Path;

use neutrostat::regression::{LinearModel, ScatterKind, ScatterObject};
use neutrostat::SetValue;

const W: f64 = 640.0;
const H: f64 = 420.0;
const M: f64 = 50.0;

struct Axis {
    lo: f64,
    hi: f64,
    from: f64,
    to: f64,
}

impl Axis {
    fn new(lo: f64, hi: f64, from: f64, to: f64) -> Axis {
        let (lo, hi) = if hi > lo { (lo, hi) } else { (lo - 1.0, hi + 1.0) };
        Axis { lo, hi, from, to }
    }
    fn map(&self, v: f64) -> f64 {
        self.from + (v - self.lo) / (self.hi - self.lo) * (self.to - self.from)
    }
}

fn header(out: &mut String, title: &str) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#
    );
    out.push_str(
        r##"<defs><pattern id="hatch" width="6" height="6" patternUnits="userSpaceOnUse" patternTransform="rotate(45)"><line x1="0" y1="0" x2="0" y2="6" stroke="#4a6fa5" stroke-width="2"/></pattern></defs>
"##,
    );
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="24" text-anchor="middle" font-family="sans-serif" font-size="14">{}</text>"#,
        W / 2.0,
        escape(title)
    );
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn axes(out: &mut String) {
    let _ = writeln!(
        out,
        r#"<path d="M{M:.2} {:.2} H{:.2} M{M:.2} {:.2} V{M:.2}" stroke="black" fill="none"/>"#,
        H - M,
        W - M,
        H - M
    );
}

/// Bars are solid up to the lowest frequency and hatched up to the highest.
pub fn histogram_svg(title: &str, bars: &[(String, SetValue)]) -> String {
    let top = bars.iter().map(|b| b.1.supremum()).fold(0.0, f64::max);
    let y = Axis::new(0.0, top.max(1.0), H - M, M);
    let slot = (W - 2.0 * M) / bars.len().max(1) as f64;
    let mut out = String::new();
    header(&mut out, title);
    axes(&mut out);
    for (i, (label, f)) in bars.iter().enumerate() {
        let x = M + slot * i as f64 + slot * 0.15;
        let w = slot * 0.7;
        let (lo, hi) = (f.infimum().max(0.0), f.supremum().max(0.0));
        let _ = writeln!(
            out,
            r##"<rect x="{x:.2}" y="{:.2}" width="{w:.2}" height="{:.2}" fill="#4a6fa5"/>"##,
            y.map(lo),
            y.map(0.0) - y.map(lo)
        );
        if hi > lo {
            let _ = writeln!(
                out,
                r##"<rect x="{x:.2}" y="{:.2}" width="{w:.2}" height="{:.2}" fill="url(#hatch)" stroke="#4a6fa5"/>"##,
                y.map(hi),
                y.map(lo) - y.map(hi)
            );
        }
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" font-family="sans-serif" font-size="11">{}</text>"#,
            x + w / 2.0,
            H - M + 16.0,
            escape(label)
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" font-family="sans-serif" font-size="10">{}</text>"#,
            x + w / 2.0,
            y.map(hi) - 4.0,
            escape(&f.to_string())
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Points, segments and rectangles; the strip between the lowest and highest
/// fitted lines is drawn over the data's x-range with `x ≥ 0`.
pub fn scatter_svg(title: &str, objects: &[ScatterObject], model: Option<&LinearModel>) -> String {
    let xs = objects.iter().flat_map(|o| [o.x.infimum(), o.x.supremum()]);
    let (mut xlo, mut xhi) = xs.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
    let ys = objects.iter().flat_map(|o| [o.y.infimum(), o.y.supremum()]);
    let (mut ylo, mut yhi) = ys.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
    if objects.is_empty() {
        (xlo, xhi, ylo, yhi) = (0.0, 1.0, 0.0, 1.0);
    }
    let strip = model.and_then(|m| {
        let x0 = xlo.max(0.0);
        (xhi > x0).then(|| {
            let (a1, a2, b1, b2) = (
                m.intercept_a.infimum(),
                m.intercept_a.supremum(),
                m.slope_b.infimum(),
                m.slope_b.supremum(),
            );
            [
                (x0, a1 + b1 * x0),
                (xhi, a1 + b1 * xhi),
                (xhi, a2 + b2 * xhi),
                (x0, a2 + b2 * x0),
            ]
        })
    });
    if let Some(s) = &strip {
        for &(_, v) in s {
            ylo = ylo.min(v);
            yhi = yhi.max(v);
        }
    }
    let pad = |lo: f64, hi: f64| {
        let p = (hi - lo).max(1.0) * 0.05;
        (lo - p, hi + p)
    };
    let (xlo, xhi) = pad(xlo, xhi);
    let (ylo, yhi) = pad(ylo, yhi);
    let x = Axis::new(xlo, xhi, M, W - M);
    let y = Axis::new(ylo, yhi, H - M, M);

    let mut out = String::new();
    header(&mut out, title);
    axes(&mut out);
    if let Some(s) = strip {
        let pts: Vec<String> = s
            .iter()
            .map(|&(a, b)| format!("{:.2},{:.2}", x.map(a), y.map(b)))
            .collect();
        let _ = writeln!(
            out,
            r##"<polygon points="{}" fill="#f2c14e" fill-opacity="0.35" stroke="#c98f00"/>"##,
            pts.join(" ")
        );
    }
    for o in objects {
        let (x1, x2) = (x.map(o.x.infimum()), x.map(o.x.supremum()));
        let (y1, y2) = (y.map(o.y.infimum()), y.map(o.y.supremum()));
        let _ = match o.kind {
            ScatterKind::Point => writeln!(out, r#"<circle cx="{x1:.2}" cy="{y1:.2}" r="3.5" fill="black"/>"#),
            ScatterKind::SegmentX => writeln!(
                out,
                r#"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y1:.2}" stroke="black" stroke-width="2"/>"#
            ),
            ScatterKind::SegmentY => writeln!(
                out,
                r#"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x1:.2}" y2="{y2:.2}" stroke="black" stroke-width="2"/>"#
            ),
            ScatterKind::Rectangle => writeln!(
                out,
                r#"<rect x="{x1:.2}" y="{y2:.2}" width="{:.2}" height="{:.2}" fill="none" stroke="black"/>"#,
                x2 - x1,
                y1 - y2
            ),
        };
    }
    out.push_str("</svg>\n");
    out
}

pub fn write(path: &Path, svg: &str) -> Result<(), neutrostat::Error> {
    std::fs::write(path, svg).map_err(|e| neutrostat::Error::Io(format!("{}: {e}", path.display())))
}
