//! CSV and SVG emission for projected polylines. Decimals here are for
//! plotting only.

use std::fmt::Write as _;

use crate::rational::{int, one, to_decimal, Rational};

/// One block per polyline, rows `x,y[,z]`, blocks separated by a blank line.
pub fn render_csv(polylines: &[Vec<Vec<Rational>>], places: usize) -> String {
    let blocks: Vec<String> = polylines
        .iter()
        .map(|line| {
            line.iter()
                .map(|p| p.iter().map(|c| to_decimal(c, places)).collect::<Vec<_>>().join(","))
                .collect::<Vec<_>>()
                .join("\n")
        })
        .collect();
    let mut out = blocks.join("\n\n");
    out.push('\n');
    out
}

/// A 1000×1000 SVG of the first two coordinates, `y` pointing up.
pub fn render_svg(polylines: &[Vec<Vec<Rational>>]) -> String {
    let scale = int(1000);
    let mut out = String::from(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1000 1000\" width=\"1000\" height=\"1000\">\n",
    );
    for line in polylines {
        let pts: Vec<String> = line
            .iter()
            .map(|p| {
                let x = &p[0] * &scale;
                let y = (one() - &p[1]) * &scale;
                format!("{},{}", to_decimal(&x, 3), to_decimal(&y, 3))
            })
            .collect();
        writeln!(out, "  <polyline fill=\"none\" stroke=\"black\" stroke-width=\"2\" points=\"{}\"/>", pts.join(" "))
            .unwrap();
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn tent_lines() -> Vec<Vec<Vec<Rational>>> {
        vec![vec![vec![q(0, 1), q(0, 1)], vec![q(1, 2), q(1, 1)]], vec![vec![q(1, 2), q(1, 1)], vec![q(1, 1), q(0, 1)]]]
    }

    #[test]
    fn csv_blocks() {
        assert_eq!(render_csv(&tent_lines(), 2), "0.00,0.00\n0.50,1.00\n\n0.50,1.00\n1.00,0.00\n");
    }

    #[test]
    fn svg_flips_y() {
        let s = render_svg(&tent_lines());
        assert!(s.contains("viewBox=\"0 0 1000 1000\""));
        assert!(s.contains("points=\"0.000,1000.000 500.000,0.000\""));
        assert_eq!(s.matches("<polyline").count(), 2);
    }
}
