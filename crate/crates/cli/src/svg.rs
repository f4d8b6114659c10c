//! SVG drawings of the two Markov partitions of a window rule.
//!
//! Geometry stays exact until serialization; every coordinate is printed
//! with a fixed number of decimals, rounded half-to-even, so output is
//! byte-identical across runs and platforms. The fundamental domain
//! `R1 ∪ R2` has width 1 and height at most 1, and each panel is drawn in a
//! unit-height box.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use berg_core::berg::SubstitutionRule;
use berg_core::exactnum::QuadraticNumber;
use berg_core::render::{partition_geometry, strip_diagram, PartitionGeometry, RenderError, Segment};
use berg_core::spectral::AutomorphismMatrix;

pub const DEFAULT_PRECISION: usize = 8;
pub const MIN_PRECISION: usize = 4;
pub const MAX_PRECISION: usize = 30;
pub const DEFAULT_SIZE: u32 = 600;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Panel {
    /// `J^u` with `F⁻¹(J^s)`.
    Pre,
    /// `J^s` with `F(J^u)`.
    Post,
    Both,
}

impl Panel {
    pub fn as_str(self) -> &'static str {
        match self {
            Panel::Pre => "pre",
            Panel::Post => "post",
            Panel::Both => "both",
        }
    }
}

impl FromStr for Panel {
    type Err = SvgError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "pre" => Ok(Panel::Pre),
            "post" => Ok(Panel::Post),
            "both" => Ok(Panel::Both),
            _ => Err(SvgError::UnsupportedOption(format!("panel '{s}' (expected pre, post or both)"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SvgOptions {
    pub panel: Panel,
    /// Decimal digits after the point.
    pub precision: usize,
    /// Pixel height of the document.
    pub size: u32,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions { panel: Panel::Both, precision: DEFAULT_PRECISION, size: DEFAULT_SIZE }
    }
}

#[derive(Debug, PartialEq, Eq)]
pub enum SvgError {
    UnsupportedOption(String),
    Render(RenderError),
}

impl fmt::Display for SvgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SvgError::UnsupportedOption(what) => write!(f, "UnsupportedOption: {what}"),
            SvgError::Render(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for SvgError {}

impl From<RenderError> for SvgError {
    fn from(e: RenderError) -> Self {
        SvgError::Render(e)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SvgDocument {
    pub bytes: String,
    pub matrix: AutomorphismMatrix,
    pub offset: i64,
    pub precision: usize,
}

struct Writer {
    out: String,
    precision: usize,
}

impl Writer {
    fn num(&self, x: &QuadraticNumber) -> String {
        x.to_decimal(self.precision)
    }

    fn line(&mut self, from: (&QuadraticNumber, &QuadraticNumber), to: (&QuadraticNumber, &QuadraticNumber), class: &str) {
        let (x1, y1, x2, y2) = (self.num(from.0), self.num(from.1), self.num(to.0), self.num(to.1));
        let _ = writeln!(self.out, r#"    <line class="{class}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>"#);
    }

    fn segment(&mut self, s: &Segment, class: &str) {
        self.line((&s.from.0, &s.from.1), (&s.to.0, &s.to.1), class);
    }

    fn rect(&mut self, x: &QuadraticNumber, w: &QuadraticNumber, h: &QuadraticNumber, class: &str) {
        let (x, w, h) = (self.num(x), self.num(w), self.num(h));
        let _ = writeln!(self.out, r#"    <rect class="{class}" x="{x}" y="0" width="{w}" height="{h}"/>"#);
    }
}

fn draw_panel(w: &mut Writer, g: &PartitionGeometry, panel: Panel, shift: &QuadraticNumber) {
    let e = &g.eigen;
    let zero = QuadraticNumber::zero();
    let neg_s2 = -&e.s2;
    let _ = writeln!(
        w.out,
        r#"  <g class="panel-{}" transform="translate({} 1) scale(1 -1)">"#,
        panel.as_str(),
        w.num(shift)
    );
    w.rect(&zero, &e.s1, &e.u1, "r1");
    w.rect(&neg_s2, &e.s2, &e.u2, "r2");
    match panel {
        Panel::Pre => {
            // J^u runs up the left side of R1, then of R2.
            w.line((&zero, &zero), (&zero, &e.u1), "unstable");
            w.line((&neg_s2, &zero), (&neg_s2, &e.u2), "unstable");
            for s in &g.pre {
                w.segment(s, "cut");
            }
        }
        Panel::Post => {
            w.line((&neg_s2, &zero), (&e.s1, &zero), "stable");
            for s in &g.post {
                w.segment(s, "image");
            }
        }
        Panel::Both => unreachable!("panels are drawn one at a time"),
    }
    w.out.push_str("  </g>\n");
}

/// Draws `R1 ∪ R2` with `J^u ∪ F⁻¹(J^s)` (pre panel) and/or
/// `J^s ∪ F(J^u)` (post panel) for the window rule's fixed point.
pub fn emit_partition_svg(
    f: &AutomorphismMatrix,
    rule: &SubstitutionRule,
    options: &SvgOptions,
) -> Result<SvgDocument, SvgError> {
    if options.precision < MIN_PRECISION || options.precision > MAX_PRECISION {
        return Err(SvgError::UnsupportedOption(format!(
            "precision {} (expected {MIN_PRECISION}..={MAX_PRECISION})",
            options.precision
        )));
    }
    if options.size == 0 {
        return Err(SvgError::UnsupportedOption("size 0".into()));
    }
    let diagram = strip_diagram(f, rule)?;
    let g = partition_geometry(f, rule)?;
    let panels: &[Panel] = match options.panel {
        Panel::Both => &[Panel::Pre, Panel::Post],
        Panel::Pre => &[Panel::Pre],
        Panel::Post => &[Panel::Post],
    };

    // Panels are 1 wide with gaps of 0.1 and a margin of 0.05 all round,
    // so the view box is 1.1 high and 1.1 wide per panel.
    let count = panels.len() as u32;
    let view_w = format!("{}.{}", 11 * count / 10, 11 * count % 10);

    let mut w = Writer { out: String::new(), precision: options.precision };
    w.out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(w.out, "<!-- matrix {f} -->");
    let _ = writeln!(w.out, "<!-- offset {} -->", g.offset);
    let _ = writeln!(w.out, "<!-- rule {rule} -->");
    let _ = writeln!(w.out, "<!-- precision {} -->", options.precision);
    let _ = writeln!(w.out, "<!-- panel {} -->", options.panel.as_str());
    let [[k, l], [m, n]] = diagram.counts();
    let _ = writeln!(w.out, "<!-- strips R1 {k} a {m} b, R2 {l} a {n} b -->");
    let _ = writeln!(
        w.out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="-0.05 -0.05 {view_w} 1.1">"#,
        options.size * count,
        options.size,
    );
    w.out.push_str(concat!(
        "  <style>\n",
        "    rect { stroke: #000; stroke-width: 0.004; }\n",
        "    .r1 { fill: #f3e3c3; } .r2 { fill: #c9def0; }\n",
        "    line { stroke-width: 0.006; stroke-linecap: butt; }\n",
        "    .unstable, .stable { stroke: #000; } .cut { stroke: #c0392b; } .image { stroke: #1f5fa8; }\n",
        "  </style>\n",
    ));
    for (i, &p) in panels.iter().enumerate() {
        // Shift so that x = −s2 lands on the panel's left edge.
        let shift = &QuadraticNumber::from_ratio(11 * i as i64, 10) + &g.eigen.s2;
        draw_panel(&mut w, &g, p, &shift);
    }
    w.out.push_str("</svg>\n");
    Ok(SvgDocument { bytes: w.out, matrix: *f, offset: g.offset, precision: options.precision })
}
