//! SVG figures drawn in the chart image of the disk: the identity for E²,
//! the Klein disk for H² and the gnomonic projection for S². Geodesics are
//! straight in all three charts, so polygons become ordinary paths.

use std::fmt::Write;

use polyperim_core::{Disk, GPoint, Result};

const SIZE: f64 = 500.0;
const MARGIN: f64 = 40.0;
const CAPTION: f64 = 40.0;

struct Frame<'a> {
    disk: &'a Disk,
    scale: f64,
}

impl Frame<'_> {
    fn new(disk: &Disk) -> Frame<'_> {
        Frame { disk, scale: (SIZE / 2.0 - MARGIN) / disk.chart_radius() }
    }

    fn px(&self, x: GPoint) -> Result<(f64, f64)> {
        let [u, v] = self.disk.to_local_chart(x)?;
        Ok((SIZE / 2.0 + self.scale * u, SIZE / 2.0 - self.scale * v))
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn open(out: &mut String, disk: &Disk, title: &str, caption: &str) {
    let g = disk.geometry();
    let h = SIZE + CAPTION;
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{h}" viewBox="0 0 {SIZE} {h}">"#
    );
    let _ = writeln!(out, "  <title>{}</title>", escape(title));
    let _ = writeln!(
        out,
        "  <desc>{} model, drawn in the {} with the disk center at the origin</desc>",
        g,
        g.chart_name()
    );
    let _ = writeln!(
        out,
        r#"  <circle cx="{c}" cy="{c}" r="{r:.6}" fill="none" stroke="black" stroke-width="1"/>"#,
        c = SIZE / 2.0,
        r = SIZE / 2.0 - MARGIN
    );
    let _ = writeln!(
        out,
        r#"  <text x="{x}" y="{y}" font-family="sans-serif" font-size="13" text-anchor="middle">{}</text>"#,
        escape(caption),
        x = SIZE / 2.0,
        y = SIZE + CAPTION / 2.0
    );
}

fn path_data(frame: &Frame, points: &[GPoint], closed: bool) -> Result<String> {
    let mut d = String::new();
    for (i, &x) in points.iter().enumerate() {
        let (u, v) = frame.px(x)?;
        let _ = write!(d, "{}{u:.6} {v:.6} ", if i == 0 { "M" } else { "L" });
    }
    if closed {
        d.push('Z');
    }
    Ok(d.trim_end().to_string())
}

/// A closed polygon inside its disk.
pub fn polygon(disk: &Disk, vertices: &[GPoint], caption: &str) -> Result<String> {
    let frame = Frame::new(disk);
    let mut out = String::new();
    open(&mut out, disk, &format!("{}-gon in a {} disk", vertices.len(), disk.geometry()), caption);
    let _ = writeln!(
        out,
        r#"  <path d="{}" fill="none" stroke="steelblue" stroke-width="1" stroke-linejoin="round"/>"#,
        path_data(&frame, vertices, true)?
    );
    out.push_str("</svg>\n");
    Ok(out)
}

/// Open polylines inside a disk.
pub fn chains(disk: &Disk, chains: &[(&str, Vec<GPoint>)], title: &str, caption: &str) -> Result<String> {
    let frame = Frame::new(disk);
    let mut out = String::new();
    open(&mut out, disk, title, caption);
    for (label, pts) in chains {
        let _ = writeln!(
            out,
            r#"  <path d="{}" fill="none" stroke="firebrick" stroke-width="1.5"><title>{}</title></path>"#,
            path_data(&frame, pts, false)?,
            escape(label)
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}
