//! Geometric checkpoint grids.

/// Default growth factor between consecutive checkpoints.
pub const DEFAULT_RATIO: f64 = 1.1;

/// Strictly increasing integers from `start` to `end` (both included), each
/// at least `ratio` times the previous one rounded up, and at least one more.
pub fn geometric_grid(start: u64, end: u64, ratio: f64) -> Vec<u64> {
    assert!(ratio > 1.0, "grid ratio must exceed 1");
    let mut out = Vec::new();
    if start > end {
        return out;
    }
    let mut x = start.max(1);
    while x < end {
        out.push(x);
        x = ((x as f64 * ratio).ceil() as u64).max(x + 1);
    }
    out.push(end);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_shape() {
        assert_eq!(geometric_grid(1, 10, 1.1), (1..=10).collect::<Vec<_>>());
        let g = geometric_grid(8, 1_000_000, 1.1);
        assert_eq!(*g.first().unwrap(), 8);
        assert_eq!(*g.last().unwrap(), 1_000_000);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
        assert!(g.len() < 150);
        assert_eq!(geometric_grid(5, 5, 2.0), vec![5]);
        assert!(geometric_grid(6, 5, 2.0).is_empty());
    }
}
