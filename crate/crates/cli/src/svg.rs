//! SVG 1.1 rendering of splinter trajectories.

use std::fmt::Write;

use hypcascade::cascade::Trajectory;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    HalfPlane,
    Disk,
}

impl Model {
    pub fn name(self) -> &'static str {
        match self {
            Model::HalfPlane => "halfplane",
            Model::Disk => "disk",
        }
    }
}

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];
const MARGIN: f64 = 30.0;

// maps model coordinates to pixels
struct Frame {
    width: f64,
    height: f64,
    scale: f64,
    x0: f64,
    y0: f64,
}

impl Frame {
    fn px(&self, x: f64, y: f64) -> (f64, f64) {
        (MARGIN + (x - self.x0) * self.scale, self.height - MARGIN - (y - self.y0) * self.scale)
    }
}

fn half_plane_frame(trajs: &[Trajectory]) -> Frame {
    let (mut xmin, mut xmax, mut ymax) = (-1.0_f64, 1.0_f64, 1.0_f64);
    for p in trajs.iter().flat_map(|t| &t.halfplane) {
        xmin = xmin.min(p.x);
        xmax = xmax.max(p.x);
        ymax = ymax.max(p.y);
    }
    let pad = 0.05 * (xmax - xmin).max(ymax);
    let (xmin, xmax, ymax) = (xmin - pad, xmax + pad, ymax + pad);
    let width = 900.0;
    let scale = (width - 2.0 * MARGIN) / (xmax - xmin);
    let height = (ymax * scale + 2.0 * MARGIN).clamp(200.0, 1400.0);
    // tall windows get squeezed to fit the height instead
    let scale = scale.min((height - 2.0 * MARGIN) / ymax);
    Frame { width, height, scale, x0: xmin, y0: 0.0 }
}

fn disk_frame() -> Frame {
    let side = 720.0;
    Frame {
        width: side,
        height: side,
        scale: (side - 2.0 * MARGIN) / 2.0,
        x0: -1.0,
        y0: -1.0,
    }
}

/// One polyline per splinter, drawn from its birth point; the root is drawn
/// in full.
pub fn render(trajs: &[Trajectory], model: Model, labels: bool, caption: &str) -> String {
    let frame = match model {
        Model::HalfPlane => half_plane_frame(trajs),
        Model::Disk => disk_frame(),
    };
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{:.0}" height="{:.0}" viewBox="0 0 {:.0} {:.0}">"#,
        frame.width, frame.height, frame.width, frame.height
    );
    let _ = writeln!(s, "<title>{}</title>", escape(caption));
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    match model {
        Model::HalfPlane => {
            let (x1, y) = frame.px(frame.x0, 0.0);
            let _ = writeln!(
                s,
                r##"<line x1="{x1:.3}" y1="{y:.3}" x2="{:.3}" y2="{y:.3}" stroke="#444" stroke-width="1"/>"##,
                frame.width - MARGIN
            );
            let (ox, oy) = frame.px(0.0, 1.0);
            let _ = writeln!(s, r##"<circle cx="{ox:.3}" cy="{oy:.3}" r="3" fill="#000"/>"##);
        }
        Model::Disk => {
            let (cx, cy) = frame.px(0.0, 0.0);
            let _ = writeln!(
                s,
                r##"<circle cx="{cx:.3}" cy="{cy:.3}" r="{:.3}" fill="none" stroke="#444" stroke-width="1"/>"##,
                frame.scale
            );
            let _ = writeln!(s, r##"<circle cx="{cx:.3}" cy="{cy:.3}" r="3" fill="#000"/>"##);
        }
    }
    for t in trajs {
        let pts: Vec<(f64, f64)> = match model {
            Model::HalfPlane => t.halfplane[t.own_start..].iter().map(|p| frame.px(p.x, p.y)).collect(),
            Model::Disk => t.disk[t.own_start..].iter().map(|p| frame.px(p.u, p.v)).collect(),
        };
        let mut points = String::new();
        for (i, (x, y)) in pts.iter().enumerate() {
            if i > 0 {
                points.push(' ');
            }
            let _ = write!(points, "{x:.3},{y:.3}");
        }
        let _ = writeln!(
            s,
            r#"<polyline fill="none" stroke="{}" stroke-width="1.2" points="{points}"/>"#,
            PALETTE[t.k % PALETTE.len()]
        );
        if labels {
            if let Some(&(x, y)) = pts.last() {
                let _ = writeln!(
                    s,
                    r#"<text x="{:.3}" y="{:.3}" font-size="10" font-family="sans-serif">{:?}</text>"#,
                    x + 3.0,
                    y - 3.0,
                    t.mass
                );
            }
        }
    }
    s.push_str("</svg>\n");
    s
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
