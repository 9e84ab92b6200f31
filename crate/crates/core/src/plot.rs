//! P-position figures as SVG, binary PGM or CSV.
//!
//! Each P-position is one unit square with the origin at the lower left.
//! The optional overlay draws `y = φx` and `y = x/φ`; their endpoints are
//! computed with the exact integer floors of [`crate::golden`].

use std::fmt::Write as _;
use std::io::Write;
use std::str::FromStr;

use crate::golden::floor_div_phi;
use crate::oracle::OutcomeGrid;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlotFormat {
    Svg,
    Pgm,
    Csv,
}

impl PlotFormat {
    pub fn extension(self) -> &'static str {
        match self {
            PlotFormat::Svg => "svg",
            PlotFormat::Pgm => "pgm",
            PlotFormat::Csv => "csv",
        }
    }
}

impl FromStr for PlotFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "svg" => Ok(PlotFormat::Svg),
            "pgm" => Ok(PlotFormat::Pgm),
            "csv" => Ok(PlotFormat::Csv),
            _ => Err(Error::Parse(format!("unknown plot format {s:?}"))),
        }
    }
}

/// Pixels per cell in SVG output, so small grids remain legible.
fn cell_size(bound: usize) -> usize {
    (800 / bound.max(1)).clamp(1, 40)
}

/// Thousandths of a unit, formatted with three decimals.
fn milli(v: u64) -> String {
    format!("{}.{:03}", v / 1000, v % 1000)
}

pub fn render_svg(g: &OutcomeGrid, overlay_lines: bool) -> Result<String> {
    let n = g.bound();
    let s = cell_size(n);
    let side = n * s;
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{side}" height="{side}" viewBox="0 0 {side} {side}">"#
    )
    .unwrap();
    writeln!(out, r#"<title>P-positions of {} below {n}</title>"#, g.ruleset().id()).unwrap();
    writeln!(out, r#"<rect width="{side}" height="{side}" fill="white"/>"#).unwrap();
    writeln!(out, r#"<g fill="black">"#).unwrap();
    for p in g.p_positions() {
        let (x, y) = (p.x as usize, p.y as usize);
        writeln!(
            out,
            r#"<rect x="{}" y="{}" width="{s}" height="{s}"/>"#,
            x * s,
            side - (y + 1) * s
        )
        .unwrap();
    }
    writeln!(out, "</g>").unwrap();
    if overlay_lines {
        // y = φx leaves the square through the top at x = side/φ, and
        // y = x/φ through the right edge at y = side/φ
        let far = floor_div_phi(side as u64 * 1000)?;
        let top = milli(0);
        let bottom = milli(side as u64 * 1000);
        writeln!(
            out,
            r#"<line x1="0" y1="{bottom}" x2="{}" y2="{top}" stroke="red" stroke-width="1"/>"#,
            milli(far)
        )
        .unwrap();
        writeln!(
            out,
            r#"<line x1="0" y1="{bottom}" x2="{bottom}" y2="{}" stroke="red" stroke-width="1"/>"#,
            milli(side as u64 * 1000 - far)
        )
        .unwrap();
    }
    writeln!(out, "</svg>").unwrap();
    Ok(out)
}

/// Binary greymap, one pixel per cell: P black, the overlay grey, else white.
pub fn render_pgm(g: &OutcomeGrid, overlay_lines: bool) -> Result<Vec<u8>> {
    let n = g.bound();
    let mut px = vec![255u8; n * n];
    let mut set = |x: u64, y: u64, v: u8| {
        if (x as usize) < n && (y as usize) < n {
            let i = (n - 1 - y as usize) * n + x as usize;
            px[i] = px[i].min(v);
        }
    };
    if overlay_lines {
        for x in 0..n as u64 {
            set(x, crate::golden::floor_phi(x)?, 160);
            set(x, floor_div_phi(x)?, 160);
        }
    }
    for p in g.p_positions() {
        set(p.x, p.y, 0);
    }
    let mut out = format!("P5\n{n} {n}\n255\n").into_bytes();
    out.extend_from_slice(&px);
    Ok(out)
}

/// `x,y,game` rows for every P-position of every grid.
pub fn write_csv<W: Write>(grids: &[&OutcomeGrid], mut w: W) -> Result<()> {
    writeln!(w, "x,y,game")?;
    for g in grids {
        let id = g.ruleset().id();
        for p in g.p_positions() {
            writeln!(w, "{},{},{id}", p.x, p.y)?;
        }
    }
    Ok(())
}

/// A file-name friendly form of a ruleset id.
pub fn file_stem(id: &str) -> String {
    id.chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '-' })
        .collect()
}
