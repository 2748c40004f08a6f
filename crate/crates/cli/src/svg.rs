//! Minimal SVG line plot of measure series with minima markers.

use corrsphere::{EventList64, MeasureKind, MeasureSeries64};
use std::fmt::Write;

const WIDTH: f64 = 960.0;
const HEIGHT: f64 = 360.0;
const MARGIN: f64 = 48.0;

fn colour(kind: MeasureKind) -> &'static str {
    match kind {
        MeasureKind::M1aDiameter => "#c0392b",
        MeasureKind::M2aMaxArea => "#2c6fbb",
        MeasureKind::M2HullArea => "#2e8b57",
    }
}

/// Plots every series on a shared vertical scale starting at zero. Gaps
/// break the lines; events are drawn as circles on their series.
pub fn render(series: &[MeasureSeries64], events: &[EventList64]) -> String {
    let len = series.iter().map(|s| s.len()).max().unwrap_or(0);
    let top = series.iter().flat_map(|s| s.values.iter().flatten()).fold(0.0f64, |a, &b| a.max(b));
    let top = if top > 0.0 { top } else { 1.0 };
    let x = |i: usize| MARGIN + (WIDTH - 2.0 * MARGIN) * i as f64 / (len.max(2) - 1) as f64;
    let y = |v: f64| HEIGHT - MARGIN - (HEIGHT - 2.0 * MARGIN) * v / top;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let (x0, x1, y0, y1) = (MARGIN, WIDTH - MARGIN, y(0.0), y(top));
    let _ = writeln!(svg, r#"<path d="M{x0:.1} {y1:.1} V{y0:.1} H{x1:.1}" stroke="black" fill="none"/>"#);
    let _ = writeln!(svg, r#"<text x="{:.1}" y="{:.1}" text-anchor="end">0</text>"#, x0 - 6.0, y0 + 4.0);
    let _ = writeln!(svg, r#"<text x="{:.1}" y="{:.1}" text-anchor="end">{top:.3}</text>"#, x0 - 6.0, y1 + 4.0);
    if let Some(s) = series.first() {
        if let (Some(&first), Some(&last)) = (s.timestamps.first(), s.timestamps.last()) {
            let _ = writeln!(svg, r#"<text x="{x0:.1}" y="{:.1}">{}</text>"#, y0 + 16.0, s.axis.label(first));
            let _ = writeln!(
                svg,
                r#"<text x="{x1:.1}" y="{:.1}" text-anchor="end">{}</text>"#,
                y0 + 16.0,
                s.axis.label(last)
            );
        }
    }
    for (k, s) in series.iter().enumerate() {
        let c = colour(s.kind);
        let mut run: Vec<String> = Vec::new();
        let flush = |run: &mut Vec<String>, svg: &mut String| {
            if run.len() > 1 {
                let _ = writeln!(
                    svg,
                    r#"<polyline fill="none" stroke="{c}" stroke-width="1.2" points="{}"/>"#,
                    run.join(" ")
                );
            }
            run.clear();
        };
        for (i, v) in s.values.iter().enumerate() {
            match v {
                Some(v) => run.push(format!("{:.1},{:.1}", x(i), y(*v))),
                None => flush(&mut run, &mut svg),
            }
        }
        flush(&mut run, &mut svg);
        let _ = writeln!(
            svg,
            r#"<text x="{:.1}" y="{:.1}" fill="{c}">{}</text>"#,
            x1 - 140.0,
            MARGIN - 20.0 + 14.0 * k as f64,
            s.kind
        );
    }
    for list in events {
        let c = colour(list.measure_kind);
        for e in &list.events {
            let _ = writeln!(
                svg,
                r#"<circle cx="{:.1}" cy="{:.1}" r="3.5" fill="none" stroke="{c}"><title>{} {}</title></circle>"#,
                x(e.index),
                y(e.value),
                list.measure_kind,
                e.timestamp
            );
        }
    }
    svg.push_str("</svg>\n");
    svg
}
