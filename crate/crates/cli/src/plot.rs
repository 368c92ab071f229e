//! Static decision-boundary rendering for 2-D datasets.

use std::fmt::Write as _;

use pinvnet::trainer::predict_class;
use pinvnet::{Dataset, Network};

const CANVAS: f64 = 600.0;
const POINT_RADIUS: f64 = 3.5;
const MAX_BACKGROUND_CELLS: usize = 80;
const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

/// Fraction of the data extent added to each side of the bounding box; the
/// box grows by 10% in each direction overall.
const MARGIN: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bounds {
    pub min_x: f64,
    pub max_x: f64,
    pub min_y: f64,
    pub max_y: f64,
}

impl Bounds {
    pub fn around(points: &[Vec<f64>]) -> Self {
        let (mut min_x, mut max_x) = (f64::INFINITY, f64::NEG_INFINITY);
        let (mut min_y, mut max_y) = (f64::INFINITY, f64::NEG_INFINITY);
        for p in points {
            min_x = min_x.min(p[0]);
            max_x = max_x.max(p[0]);
            min_y = min_y.min(p[1]);
            max_y = max_y.max(p[1]);
        }
        let pad = |lo: f64, hi: f64| {
            let m = if hi > lo { (hi - lo) * MARGIN } else { 0.5 };
            (lo - m, hi + m)
        };
        let (min_x, max_x) = pad(min_x, max_x);
        let (min_y, max_y) = pad(min_y, max_y);
        Self {
            min_x,
            max_x,
            min_y,
            max_y,
        }
    }

    fn axis(lo: f64, hi: f64, steps: usize, k: usize) -> f64 {
        if steps == 1 {
            (lo + hi) / 2.0
        } else {
            lo + (hi - lo) * k as f64 / (steps - 1) as f64
        }
    }

    fn to_canvas(self, x: f64, y: f64) -> (f64, f64) {
        let cx = (x - self.min_x) / (self.max_x - self.min_x) * CANVAS;
        let cy = CANVAS - (y - self.min_y) / (self.max_y - self.min_y) * CANVAS;
        (cx, cy)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPoint {
    pub x: f64,
    pub y: f64,
    pub class: usize,
}

/// `steps × steps` predictions, row by row from `min_y` upward.
pub fn predict_grid(net: &Network, bounds: Bounds, steps: usize) -> pinvnet::Result<Vec<GridPoint>> {
    let mut grid = Vec::with_capacity(steps * steps);
    for j in 0..steps {
        let y = Bounds::axis(bounds.min_y, bounds.max_y, steps, j);
        for i in 0..steps {
            let x = Bounds::axis(bounds.min_x, bounds.max_x, steps, i);
            let class = predict_class(&net.predict(&[x, y])?);
            grid.push(GridPoint { x, y, class });
        }
    }
    Ok(grid)
}

pub fn grid_csv(grid: &[GridPoint]) -> String {
    let mut out = String::from("x,y,predicted_class\n");
    for p in grid {
        let _ = writeln!(out, "{},{},{}", p.x, p.y, p.class);
    }
    out
}

fn color(class: usize) -> &'static str {
    PALETTE[class % PALETTE.len()]
}

/// Decision regions on a coarse grid underneath the dataset points, each
/// point filled with its predicted class and outlined with its true class.
pub fn render_svg(
    net: &Network,
    data: &Dataset,
    bounds: Bounds,
    grid: &[GridPoint],
) -> pinvnet::Result<String> {
    let steps = (grid.len() as f64).sqrt().round() as usize;
    let cells = steps.clamp(1, MAX_BACKGROUND_CELLS);
    let background = if cells == steps {
        grid.to_vec()
    } else {
        predict_grid(net, bounds, cells)?
    };
    let cell = CANVAS / cells as f64;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{CANVAS}" height="{CANVAS}" viewBox="0 0 {CANVAS} {CANVAS}">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(svg, r#"<g opacity="0.25">"#);
    for p in &background {
        let (cx, cy) = bounds.to_canvas(p.x, p.y);
        let _ = writeln!(
            svg,
            r#"<rect x="{:.2}" y="{:.2}" width="{cell:.2}" height="{cell:.2}" fill="{}"/>"#,
            cx - cell / 2.0,
            cy - cell / 2.0,
            color(p.class)
        );
    }
    let _ = writeln!(svg, "</g>");
    let _ = writeln!(svg, "<g>");
    for (row, label) in data.rows() {
        let predicted = predict_class(&net.predict(row)?);
        let (cx, cy) = bounds.to_canvas(row[0], row[1]);
        let _ = writeln!(
            svg,
            r#"<circle cx="{cx:.2}" cy="{cy:.2}" r="{POINT_RADIUS}" fill="{}" stroke="{}" stroke-width="1"/>"#,
            color(predicted),
            color(label)
        );
    }
    let _ = writeln!(svg, "</g>");
    svg.push_str("</svg>\n");
    Ok(svg)
}
