//! SVG pictures of tropical polytopes in the plane.
//!
//! A point `x` of TP² is drawn at `(x₂ - x₁, x₃ - x₁)`. Coordinates are
//! scaled to integers (by ten times the common denominator, y pointing up)
//! so the output is exact and byte-stable.

use std::fmt::Write;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use troprank::{enumerate_hull_cells_with, Config, HullCell, TropError, TropMatrix, TropScalar};

/// Element counts of a rendered picture.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Inventory {
    /// Input columns.
    pub points: usize,
    /// 0-cells.
    pub dots: usize,
    /// 1-cells.
    pub segments: usize,
    /// 2-cells.
    pub polygons: usize,
}

type Pt = (BigInt, BigInt);

fn project(x: &[TropScalar]) -> (BigRational, BigRational) {
    let base = x[0].as_rational();
    (x[1].as_rational() - base, x[2].as_rational() - base)
}

/// Counter-clockwise order around the vertex mean, exact.
fn sort_by_angle(pts: &mut [Pt]) {
    let n = BigInt::from(pts.len());
    let sx: BigInt = pts.iter().map(|p| &p.0).sum();
    let sy: BigInt = pts.iter().map(|p| &p.1).sum();
    // offsets from the mean, scaled by n to stay integral
    let rel = |p: &Pt| (&p.0 * &n - &sx, &p.1 * &n - &sy);
    let half = |(x, y): &(BigInt, BigInt)| y.is_negative() || (y.is_zero() && x.is_negative());
    pts.sort_by(|a, b| {
        let (ra, rb) = (rel(a), rel(b));
        half(&ra).cmp(&half(&rb)).then_with(|| {
            let cross = &ra.0 * &rb.1 - &ra.1 * &rb.0;
            BigInt::zero().cmp(&cross)
        })
    });
}

struct Canvas {
    scale: BigInt,
}

impl Canvas {
    fn new(points: &[(BigRational, BigRational)]) -> Canvas {
        let l = points
            .iter()
            .flat_map(|(x, y)| [x.denom(), y.denom()])
            .fold(BigInt::one(), |acc, d| acc.lcm(d));
        Canvas { scale: l * 10 }
    }

    fn place(&self, (x, y): &(BigRational, BigRational)) -> Pt {
        let s = BigRational::from_integer(self.scale.clone());
        ((x * &s).to_integer(), -(y * &s).to_integer())
    }
}

/// Draws the columns of a 3-row matrix and every bounded cell of their
/// tropical convex hull.
pub fn render_hull_svg(m: &TropMatrix, cfg: &Config) -> Result<(String, Inventory), TropError> {
    if m.rows() != 3 {
        return Err(TropError::Domain(format!(
            "pictures need 3 rows, got {}",
            m.rows()
        )));
    }
    let cells = enumerate_hull_cells_with(m, cfg)?;
    let columns: Vec<_> = (0..m.cols()).map(|j| project(&m.col(j))).collect();
    let vertices: Vec<&HullCell> = cells.iter().filter(|c| c.dim == 0).collect();
    let mut all: Vec<_> = columns.clone();
    all.extend(vertices.iter().map(|v| project(&v.witness)));
    let canvas = Canvas::new(&all);
    let placed: Vec<Pt> = all.iter().map(|p| canvas.place(p)).collect();

    let min_x = placed
        .iter()
        .map(|p| &p.0)
        .min()
        .expect("at least one column")
        .clone();
    let max_x = placed
        .iter()
        .map(|p| &p.0)
        .max()
        .expect("at least one column")
        .clone();
    let min_y = placed
        .iter()
        .map(|p| &p.1)
        .min()
        .expect("at least one column")
        .clone();
    let max_y = placed
        .iter()
        .map(|p| &p.1)
        .max()
        .expect("at least one column")
        .clone();
    let span = (&max_x - &min_x).max(&max_y - &min_y);
    let margin = (&span + 9u32) / 10u32;
    let margin = margin.max(BigInt::from(10));
    let dot = (&margin / 3u32).max(BigInt::one());
    let stroke = (&margin / 8u32).max(BigInt::one());
    let font = margin.clone();

    let faces_of = |cell: &HullCell| -> Vec<Pt> {
        vertices
            .iter()
            .zip(&placed[columns.len()..])
            .filter(|(v, _)| v.ty.is_face_of(&cell.ty))
            .map(|(_, p)| p.clone())
            .collect()
    };

    let mut body = String::new();
    let mut inv = Inventory {
        points: columns.len(),
        ..Inventory::default()
    };
    for cell in cells.iter().filter(|c| c.dim == 2) {
        let mut pts = faces_of(cell);
        sort_by_angle(&mut pts);
        let list: Vec<String> = pts.iter().map(|(x, y)| format!("{x},{y}")).collect();
        let _ = writeln!(
            body,
            r#"  <polygon class="cell2" points="{}"><title>{}</title></polygon>"#,
            list.join(" "),
            cell.ty
        );
        inv.polygons += 1;
    }
    for cell in cells.iter().filter(|c| c.dim == 1) {
        let ends = faces_of(cell);
        if ends.len() != 2 {
            return Err(TropError::Internal(format!(
                "edge {} has {} endpoints",
                cell.ty,
                ends.len()
            )));
        }
        let ((x1, y1), (x2, y2)) = (&ends[0], &ends[1]);
        let _ = writeln!(
            body,
            r#"  <line class="cell1" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"><title>{}</title></line>"#,
            cell.ty
        );
        inv.segments += 1;
    }
    for (v, (x, y)) in vertices.iter().zip(&placed[columns.len()..]) {
        let _ = writeln!(
            body,
            r#"  <circle class="cell0" cx="{x}" cy="{y}" r="{dot}"><title>{}</title></circle>"#,
            v.ty
        );
        inv.dots += 1;
    }
    for (j, (x, y)) in placed[..columns.len()].iter().enumerate() {
        let _ = writeln!(
            body,
            r#"  <rect class="point" x="{}" y="{}" width="{}" height="{}"><title>column {}</title></rect>"#,
            x - &dot,
            y - &dot,
            &dot * 2u32,
            &dot * 2u32,
            j + 1
        );
    }

    let mut legend = vec![format!(
        "{} points, {} vertices, {} edges, {} faces",
        inv.points, inv.dots, inv.segments, inv.polygons
    )];
    legend.extend(cells.iter().map(|c| format!("dim {}: {}", c.dim, c.ty)));
    let line = &font * 3u32 / 2u32;
    let legend_top = &max_y + &margin + &font;
    for (k, text) in legend.iter().enumerate() {
        let y = &legend_top + &line * BigInt::from(k);
        let _ = writeln!(
            body,
            r#"  <text class="legend" x="{}" y="{y}">{text}</text>"#,
            &min_x - &margin
        );
    }

    let vx = &min_x - &margin;
    let vy = &min_y - &margin;
    let width = &max_x - &min_x + &margin * 2u32;
    let height = &max_y - &min_y + &margin * 2u32 + &line * BigInt::from(legend.len());
    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{vx} {vy} {width} {height}">"#
    );
    let _ = writeln!(
        svg,
        "  <style>.cell2{{fill:#c6dbef;stroke:none}} .cell1{{stroke:#08306b;stroke-width:{stroke}}} \
         .cell0{{fill:#08306b}} .point{{fill:#cb181d}} .legend{{font-family:monospace;font-size:{font}px}}</style>"
    );
    svg.push_str(&body);
    svg.push_str("</svg>\n");
    Ok((svg, inv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use troprank::fixtures::example_matrix;

    fn count(svg: &str, class: &str) -> usize {
        svg.matches(&format!(r#"class="{class}""#)).count()
    }

    #[test]
    fn inventory_matches_markup() {
        let (svg, inv) = render_hull_svg(&example_matrix(), &Config::default()).unwrap();
        assert_eq!(inv.polygons, 0);
        assert_eq!(count(&svg, "cell0"), inv.dots);
        assert_eq!(count(&svg, "cell1"), inv.segments);
        assert_eq!(count(&svg, "point"), 3);
    }

    #[test]
    fn angle_sort_is_counter_clockwise() {
        let b = |x: i64, y: i64| (BigInt::from(x), BigInt::from(y));
        let mut pts = vec![b(0, 1), b(1, 0), b(-1, 0), b(0, -1)];
        sort_by_angle(&mut pts);
        assert_eq!(pts, vec![b(1, 0), b(0, 1), b(-1, 0), b(0, -1)]);
    }

    #[test]
    fn wrong_height_is_a_domain_error() {
        let m = TropMatrix::from_int_rows(&[[0, 1], [1, 0]]).unwrap();
        assert!(matches!(
            render_hull_svg(&m, &Config::default()),
            Err(TropError::Domain(_))
        ));
    }
}
