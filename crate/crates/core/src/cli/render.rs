//! Deterministic SVG output for resolved scenes.
//!
//! Coordinates are computed exactly and printed with six decimals (ties to
//! even, trailing zeros dropped), so the same scene always gives the same bytes.

use std::fmt::Write as _;

use num_traits::Zero;

use super::scene::{Item, ResolvedScene, Style};
use crate::error::Result;
use crate::plane::{PlanePoint, RayLabel, TropLine};
use crate::scalar::{format_decimal, rat, Rational};

/// Pixels per unit.
pub const UNIT: i64 = 32;
pub const MARGIN: i64 = 24;
const CAPTION_HEIGHT: i64 = 18;

fn num(q: &Rational) -> String {
    let s = format_decimal(q, 6);
    if !s.contains('.') {
        return s;
    }
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".into() } else { s.into() }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

struct Frame {
    xmin: Rational,
    xmax: Rational,
    ymin: Rational,
    ymax: Rational,
}

impl Frame {
    fn px(&self, x: &Rational) -> Rational {
        rat(MARGIN) + (x - &self.xmin) * rat(UNIT)
    }

    fn py(&self, y: &Rational) -> Rational {
        rat(MARGIN) + (&self.ymax - y) * rat(UNIT)
    }

    fn width(&self) -> Rational {
        (&self.xmax - &self.xmin) * rat(UNIT)
    }

    fn height(&self) -> Rational {
        (&self.ymax - &self.ymin) * rat(UNIT)
    }

    /// How far a ray from `v` travels before leaving the frame for good.
    fn exit(&self, v: &PlanePoint, ray: RayLabel) -> Rational {
        match ray {
            RayLabel::RayLeft => &v.x - &self.xmin,
            RayLabel::RayDown => &v.y - &self.ymin,
            RayLabel::RayDiag => (&self.xmax - &v.x).min(&self.ymax - &v.y),
            RayLabel::Vertex => Rational::zero(),
        }
    }

    fn segment(&self, out: &mut String, p: &PlanePoint, q: &PlanePoint, attrs: &str) {
        let _ = writeln!(
            out,
            r#"  <line x1="{}" y1="{}" x2="{}" y2="{}" {attrs}/>"#,
            num(&self.px(&p.x)),
            num(&self.py(&p.y)),
            num(&self.px(&q.x)),
            num(&self.py(&q.y)),
        );
    }
}

fn draw_line(out: &mut String, f: &Frame, line: &TropLine, style: Style, color: &str, label: Option<&str>) {
    let v = line.vertex();
    let dash = match style {
        Style::Solid => String::new(),
        Style::Dotted => r#" stroke-dasharray="4 3""#.into(),
    };
    let width = if style == Style::Solid { "2" } else { "1.5" };
    let attrs = format!(r#"stroke="{}" stroke-width="{width}"{dash} fill="none""#, escape(color));
    out.push_str("  <g>\n");
    for ray in RayLabel::RAYS {
        let t = f.exit(&v, ray);
        if t > Rational::zero() {
            f.segment(out, &v, &v.along(ray.direction(), &t), &attrs);
        }
    }
    if let Some(label) = label {
        let _ = writeln!(
            out,
            r#"    <text x="{}" y="{}" font-size="12" fill="{}">{}</text>"#,
            num(&(f.px(&v.x) + rat(6))),
            num(&(f.py(&v.y) + rat(14))),
            escape(color),
            escape(label)
        );
    }
    out.push_str("  </g>\n");
}

pub fn render_svg(scene: &ResolvedScene) -> Result<String> {
    let view = &scene.view;
    let e = &view.ray_extension;
    let frame = Frame { xmin: &view.xmin - e, xmax: &view.xmax + e, ymin: &view.ymin - e, ymax: &view.ymax + e };
    let captions: Vec<&str> = scene
        .items
        .iter()
        .filter_map(|i| match i {
            Item::Caption(c) => Some(c.as_str()),
            _ => None,
        })
        .chain(scene.title.as_deref())
        .collect();
    let w = frame.width() + rat(2 * MARGIN);
    let plot_h = frame.height() + rat(2 * MARGIN);
    let h = &plot_h + rat(CAPTION_HEIGHT * captions.len() as i64);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{0}" height="{1}" viewBox="0 0 {0} {1}">"#,
        num(&w),
        num(&h)
    );
    if let Some(title) = &scene.title {
        let _ = writeln!(out, "  <title>{}</title>", escape(title));
    }
    let _ = writeln!(
        out,
        r#"  <defs><clipPath id="view"><rect x="{m}" y="{m}" width="{}" height="{}"/></clipPath></defs>"#,
        num(&frame.width()),
        num(&frame.height()),
        m = MARGIN
    );
    let _ = writeln!(out, r#"  <rect x="0" y="0" width="{}" height="{}" fill="white"/>"#, num(&w), num(&h));
    out.push_str("  <g clip-path=\"url(#view)\">\n");

    let axis = r##"stroke="#bbbbbb" stroke-width="1""##;
    let zero = Rational::zero();
    if frame.ymin <= zero && zero <= frame.ymax {
        frame.segment(&mut out, &PlanePoint::new(frame.xmin.clone(), zero.clone()), &PlanePoint::new(frame.xmax.clone(), zero.clone()), axis);
    }
    if frame.xmin <= zero && zero <= frame.xmax {
        frame.segment(&mut out, &PlanePoint::new(zero.clone(), frame.ymin.clone()), &PlanePoint::new(zero.clone(), frame.ymax.clone()), axis);
    }

    for item in &scene.items {
        if let Item::Line { line, style, color, label } = item {
            draw_line(&mut out, &frame, line, *style, color, label.as_deref());
        }
    }
    for item in &scene.items {
        if let Item::Point { at, color, label } = item {
            let (x, y) = (frame.px(&at.x), frame.py(&at.y));
            let _ = writeln!(out, r#"  <circle cx="{}" cy="{}" r="3.5" fill="{}"/>"#, num(&x), num(&y), escape(color));
            let _ = writeln!(
                out,
                r#"  <text x="{}" y="{}" font-size="12" fill="{}">{}</text>"#,
                num(&(x + rat(5))),
                num(&(y - rat(5))),
                escape(color),
                escape(label)
            );
        }
    }
    out.push_str("  </g>\n");

    for (k, caption) in captions.iter().enumerate() {
        let y = &plot_h + rat(CAPTION_HEIGHT * k as i64) + rat(4);
        let _ = writeln!(out, r#"  <text x="{MARGIN}" y="{}" font-size="12" fill="black">{}</text>"#, num(&y), escape(caption));
    }
    out.push_str("</svg>\n");
    Ok(out)
}
