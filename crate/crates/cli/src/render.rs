//! Window parsing and deterministic text/PGM rendering for simulations.

use anyhow::{bail, Context, Result};
use gca::{Configuration, GroupContext, GroupElement, Symbol};

/// An inclusive coordinate box, one range per dimension.
#[derive(Clone, Debug)]
pub struct Window {
    pub ranges: Vec<(i64, i64)>,
}

/// Parses `lo..hi` (one dimension) or `x0..x1,y0..y1` (two dimensions),
/// both ends inclusive.
pub fn parse_window(spec: &str, rank: usize) -> Result<Window> {
    let mut ranges = Vec::new();
    for part in spec.split(',') {
        let (lo, hi) = part
            .split_once("..")
            .with_context(|| format!("bad window range {part:?} (expected lo..hi)"))?;
        let lo: i64 = lo.trim().parse().with_context(|| format!("bad bound {lo:?}"))?;
        let hi: i64 = hi.trim().parse().with_context(|| format!("bad bound {hi:?}"))?;
        if lo > hi {
            bail!("empty window range {part:?}");
        }
        ranges.push((lo, hi));
    }
    if ranges.len() != rank {
        bail!(
            "window has {} dimensions but the group has rank {rank}",
            ranges.len()
        );
    }
    Ok(Window { ranges })
}

/// Symbols over a one-dimensional window, left to right.
pub fn sample_row(
    ctx: &GroupContext,
    x: &Configuration,
    window: &Window,
) -> Result<Vec<Symbol>> {
    let (lo, hi) = window.ranges[0];
    let mut out = Vec::with_capacity((hi - lo + 1) as usize);
    for g in lo..=hi {
        out.push(x.eval(ctx, &GroupElement::Integers(vec![g]))?);
    }
    Ok(out)
}

/// Symbols over a two-dimensional window, row-major with y increasing
/// downward.
pub fn sample_grid(
    ctx: &GroupContext,
    x: &Configuration,
    window: &Window,
) -> Result<Vec<Vec<Symbol>>> {
    let (x0, x1) = window.ranges[0];
    let (y0, y1) = window.ranges[1];
    let mut rows = Vec::with_capacity((y1 - y0 + 1) as usize);
    for gy in y0..=y1 {
        let mut row = Vec::with_capacity((x1 - x0 + 1) as usize);
        for gx in x0..=x1 {
            row.push(x.eval(ctx, &GroupElement::Integers(vec![gx, gy]))?);
        }
        rows.push(row);
    }
    Ok(rows)
}

/// One text line per row: digits when the alphabet fits, decimal values
/// separated by spaces otherwise.
pub fn row_text(row: &[Symbol], k: usize) -> String {
    if k <= 10 {
        row.iter().map(|&v| char::from(b'0' + v)).collect()
    } else {
        row.iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// A plain (P2) PGM image with maxval `k-1`, one line per row.
pub fn pgm_text(rows: &[Vec<Symbol>], k: usize) -> String {
    let width = rows.first().map_or(0, Vec::len);
    let mut out = format!("P2\n{} {}\n{}\n", width, rows.len(), k - 1);
    for row in rows {
        let line = row
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        out.push_str(&line);
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_parsing() {
        let w = parse_window("-5..5", 1).unwrap();
        assert_eq!(w.ranges, vec![(-5, 5)]);
        let w = parse_window("0..3,-1..1", 2).unwrap();
        assert_eq!(w.ranges, vec![(0, 3), (-1, 1)]);
        assert!(parse_window("5..1", 1).is_err());
        assert!(parse_window("0..3", 2).is_err());
        assert!(parse_window("a..b", 1).is_err());
    }

    #[test]
    fn pgm_shape() {
        let img = pgm_text(&[vec![0, 1], vec![1, 0]], 2);
        assert_eq!(img, "P2\n2 2\n1\n0 1\n1 0\n");
    }

    #[test]
    fn row_rendering() {
        assert_eq!(row_text(&[0, 1, 2], 3), "012");
        assert_eq!(row_text(&[0, 12], 16), "0 12");
    }
}
