//! Permutation plots: a point at column `i`, height `p_i`.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::perm::Permutation;

pub const ASCII_MAX_LEN: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlotFormat {
    Svg,
    Ascii,
}

pub fn plot(p: &Permutation, format: PlotFormat) -> Result<String> {
    match format {
        PlotFormat::Svg => Ok(plot_svg(p)),
        PlotFormat::Ascii => plot_ascii(p),
    }
}

/// One line per value from `n` down to 1; `*` marks the point, `.` the rest.
pub fn plot_ascii(p: &Permutation) -> Result<String> {
    let n = p.len();
    if n > ASCII_MAX_LEN {
        return Err(Error::TooLong { len: n, cap: ASCII_MAX_LEN });
    }
    let mut out = String::with_capacity(n * (n + 1));
    for value in (1..=n as u32).rev() {
        out.extend(p.values().iter().map(|&v| if v == value { '*' } else { '.' }));
        out.push('\n');
    }
    Ok(out)
}

/// Square `n × n` plot with light gridlines and one dot per point, centred at
/// `(i - 1/2, n - p_i + 1/2)`.
pub fn plot_svg(p: &Permutation) -> String {
    let n = p.len();
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {n} {n}" width="{w}" height="{w}">"#,
        w = 20 * n
    )
    .unwrap();
    writeln!(out, r#"<rect x="0" y="0" width="{n}" height="{n}" fill="white"/>"#).unwrap();
    writeln!(out, r##"<g stroke="#dddddd" stroke-width="0.03">"##).unwrap();
    for k in 0..=n {
        writeln!(out, r#"<line x1="{k}" y1="0" x2="{k}" y2="{n}"/>"#).unwrap();
        writeln!(out, r#"<line x1="0" y1="{k}" x2="{n}" y2="{k}"/>"#).unwrap();
    }
    writeln!(out, "</g>").unwrap();
    writeln!(out, r#"<g fill="black">"#).unwrap();
    for (i, &v) in p.values().iter().enumerate() {
        let y = n - v as usize;
        writeln!(out, r#"<circle cx="{i}.5" cy="{y}.5" r="0.3"/>"#).unwrap();
    }
    writeln!(out, "</g>").unwrap();
    out.push_str("</svg>\n");
    out
}
