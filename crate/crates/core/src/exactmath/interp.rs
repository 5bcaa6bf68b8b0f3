//! Exact two-variable interpolation by Newton forward differences.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::bivar::{binom_poly, BinomVar, BivarPoly};
use super::rational::{format_rat, Rat};
use crate::error::{Error, Result};

/// Values of a function on integer points `(s, t)`.
pub type Grid = BTreeMap<(u32, u32), Rat>;

/// Recovers the unique polynomial of total degree `<= bound` agreeing with
/// `values`.
///
/// The grid must contain every point of `[0, bound]^2`. Any extra points are
/// checked against the result. A nonzero mixed difference of order above
/// `bound`, or a mismatch at an extra point, is reported as an
/// interpolation failure: the data is not polynomial of that degree there.
pub fn interpolate_grid(values: &Grid, bound: u32) -> Result<BivarPoly> {
    let n = bound as usize + 1;
    let mut table = vec![vec![Rat::zero(); n]; n];
    for (s, row) in table.iter_mut().enumerate() {
        for (t, cell) in row.iter_mut().enumerate() {
            *cell = values
                .get(&(s as u32, t as u32))
                .cloned()
                .ok_or_else(|| Error::Interpolation(format!("grid is missing ({s}, {t})")))?;
        }
    }
    // Differences along s, then along t; afterwards table[i][j] holds
    // Delta_s^i Delta_t^j f(0, 0).
    for i in 1..n {
        for s in (i..n).rev() {
            let (lower, upper) = table.split_at_mut(s);
            for (cur, prev) in upper[0].iter_mut().zip(&lower[s - 1]) {
                *cur = &*cur - prev;
            }
        }
    }
    for j in 1..n {
        for t in (j..n).rev() {
            for row in table.iter_mut() {
                let d = &row[t] - &row[t - 1];
                row[t] = d;
            }
        }
    }

    let mut poly = BivarPoly::zero();
    for (i, row) in table.iter().enumerate() {
        for (j, delta) in row.iter().enumerate() {
            if delta.is_zero() {
                continue;
            }
            if i + j > bound as usize {
                return Err(Error::Interpolation(format!(
                    "difference of order ({i}, {j}) is {}; data exceeds total degree {bound}",
                    format_rat(delta)
                )));
            }
            let basis = &binom_poly(BinomVar::S, 0, i as u32) * &binom_poly(BinomVar::T, 0, j as u32);
            poly = &poly + &basis.scale(delta);
        }
    }

    for (&(s, t), expected) in values {
        let got = poly.eval_int(s.into(), t.into());
        if &got != expected {
            return Err(Error::Interpolation(format!(
                "value at ({s}, {t}) is {} but the interpolant gives {}",
                format_rat(expected),
                format_rat(&got)
            )));
        }
    }
    Ok(poly)
}

/// Samples `poly` on `[0, size]^2`.
pub fn sample_grid(poly: &BivarPoly, size: u32) -> Grid {
    let mut g = Grid::new();
    for s in 0..=size {
        for t in 0..=size {
            g.insert((s, t), poly.eval_int(s.into(), t.into()));
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::rat;

    #[test]
    fn linear_grid() {
        let mut g = Grid::new();
        for s in 0..=2u32 {
            for t in 0..=2u32 {
                g.insert((s, t), rat(i64::from(s + t + 1)));
            }
        }
        let p = interpolate_grid(&g, 1).unwrap();
        assert_eq!(p, BivarPoly::s() + BivarPoly::t() + BivarPoly::one());
    }

    #[test]
    fn constant_grid() {
        let mut g = Grid::new();
        for s in 0..=3u32 {
            for t in 0..=3u32 {
                g.insert((s, t), rat(1));
            }
        }
        assert_eq!(interpolate_grid(&g, 0).unwrap(), BivarPoly::one());
    }

    #[test]
    fn quadratic_binomial_roundtrip() {
        let target = binom_poly(BinomVar::SPlusT, 2, 2);
        let g = sample_grid(&target, 3);
        assert_eq!(interpolate_grid(&g, 2).unwrap(), target);
    }

    #[test]
    fn non_polynomial_data_fails() {
        // s*t has total degree 2; asking for degree 1 must fail.
        let g = sample_grid(&(BivarPoly::s() * BivarPoly::t()), 2);
        assert!(matches!(interpolate_grid(&g, 1), Err(Error::Interpolation(_))));
    }

    #[test]
    fn inconsistent_extra_point_fails() {
        let mut g = sample_grid(&BivarPoly::s(), 2);
        g.insert((1, 1), rat(5));
        assert!(interpolate_grid(&g, 1).is_err());
    }

    #[test]
    fn missing_point_fails() {
        let mut g = sample_grid(&BivarPoly::s(), 2);
        g.remove(&(0, 1));
        assert!(interpolate_grid(&g, 1).is_err());
    }
}
