//! Exact series built from "strings" of basis vectors.
//!
//! A string with jump `j` has one basis vector `g_i` at every level. `up`
//! moves it forward from level `j` on, `down` moves it backward up to level
//! `j`, and it vanishes on Y above `j` and on Z below `j`. Spanning `V` by
//! `r+1` strings gives an exact series whose diagonalization has exactly
//! those jumps. Extra strings outside `V` and a random change of basis at
//! every level hide the structure.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ExplicitLimitSeries;
use crate::error::{Error, Result};
use crate::exactmath::{rat, Mat, Subspace};

/// Largest ambient dimension the generator will build.
pub const MAX_AMBIENT: usize = 48;

/// Standard-basis series with one coordinate per string. `v[i]` lists the
/// strings spanning `V_i`.
fn from_strings(d: usize, r: usize, jumps: &[usize], v: &[Vec<usize>]) -> ExplicitLimitSeries {
    let n = jumps.len();
    let unit = |k: usize| {
        let mut e = vec![rat(0); n];
        e[k] = rat(1);
        e
    };
    let span = |ks: &mut dyn Iterator<Item = usize>| {
        Subspace::span(n, &ks.map(unit).collect::<Vec<_>>()).expect("unit vectors")
    };
    let mut up = Vec::new();
    let mut down = Vec::new();
    for i in 0..d {
        let mut u = Mat::zeros(n, n);
        let mut w = Mat::zeros(n, n);
        for (k, &j) in jumps.iter().enumerate() {
            if i >= j {
                u.set(k, k, rat(1));
            }
            if i < j {
                w.set(k, k, rat(1));
            }
        }
        up.push(u);
        down.push(w);
    }
    let y0 = (0..=d).map(|i| span(&mut (0..n).filter(|&k| jumps[k] < i))).collect();
    let z0 = (0..=d).map(|i| span(&mut (0..n).filter(|&k| jumps[k] > i))).collect();
    let vs = v.iter().map(|ks| span(&mut ks.iter().copied())).collect();
    ExplicitLimitSeries::new(d, r, vec![n; d + 1], up, down, y0, z0, vs).expect("consistent shapes")
}

fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> (Mat, Mat) {
    loop {
        let mut t = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                t.set(i, j, rat(rng.gen_range(-3..=3)));
            }
        }
        if let Ok(inv) = t.inverse() {
            return (t, inv);
        }
    }
}

/// A random exact series whose jump indices are `jumps`, deterministic in
/// `seed`.
pub fn generate_exact(seed: u64, r: usize, d: usize, jumps: &[usize]) -> Result<ExplicitLimitSeries> {
    if jumps.len() != r + 1 {
        return Err(Error::Generation(format!("{} jump indices given for r = {r}", jumps.len())));
    }
    if jumps.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Generation(format!("jump indices {jumps:?} are not nondecreasing")));
    }
    if let Some(&j) = jumps.iter().find(|&&j| j > d) {
        return Err(Error::Generation(format!("jump index {j} exceeds d = {d}")));
    }
    if r + 1 > MAX_AMBIENT {
        return Err(Error::Generation(format!("r = {r} needs more than {MAX_AMBIENT} ambient dimensions")));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let extra = rng.gen_range(0..=2).min(MAX_AMBIENT - (r + 1));
    let mut all: Vec<usize> = jumps.to_vec();
    all.extend((0..extra).map(|_| rng.gen_range(0..=d)));
    // Interleave chosen and extra strings so V is not a coordinate prefix.
    let mut order: Vec<usize> = (0..all.len()).collect();
    order.shuffle(&mut rng);
    let shuffled: Vec<usize> = order.iter().map(|&k| all[k]).collect();
    let chosen: Vec<usize> = (0..all.len()).filter(|&pos| order[pos] <= r).collect();
    let base = from_strings(d, r, &shuffled, &vec![chosen; d + 1]);

    let n = shuffled.len();
    let changes: Vec<(Mat, Mat)> = (0..=d).map(|_| random_invertible(&mut rng, n)).collect();
    let conj = |m: &Mat, to: usize, from: usize| {
        changes[to].0.mul(m).and_then(|x| x.mul(&changes[from].1)).expect("square")
    };
    let up = (0..d).map(|i| conj(base.up(i), i + 1, i)).collect();
    let down = (0..d).map(|i| conj(base.down(i), i, i + 1)).collect();
    let moved = |pick: fn(&ExplicitLimitSeries, usize) -> &Subspace| -> Vec<Subspace> {
        (0..=d).map(|i| pick(&base, i).image(&changes[i].0).expect("square")).collect()
    };
    ExplicitLimitSeries::new(
        d,
        r,
        vec![n; d + 1],
        up,
        down,
        moved(ExplicitLimitSeries::y0),
        moved(ExplicitLimitSeries::z0),
        moved(ExplicitLimitSeries::v),
    )
}

/// Degree 1, dimension 0: `Gamma_0 = <e1, e2>`, `Gamma_1 = <f1, f2>`,
/// `up: e1 -> f2, e2 -> 0`, `down: f1 -> e2, f2 -> 0`, `Z0_0 = <e2>`,
/// `Y0_1 = <f2>`, `Z0_1 = <f1>`, `V_0 = <e1>`, `V_1 = <f2>`.
pub fn minimal_fixture() -> ExplicitLimitSeries {
    let e = |a: i64, b: i64| vec![rat(a), rat(b)];
    let span = |vs: &[Vec<crate::exactmath::Rat>]| Subspace::span(2, vs).expect("length 2");
    ExplicitLimitSeries::new(
        1,
        0,
        vec![2, 2],
        vec![Mat::from_i64(&[&[0, 0], &[1, 0]])],
        vec![Mat::from_i64(&[&[0, 0], &[1, 0]])],
        vec![Subspace::zero(2), span(&[e(0, 1)])],
        vec![span(&[e(0, 1)]), span(&[e(1, 0)])],
        vec![span(&[e(1, 0)]), span(&[e(0, 1)])],
    )
    .expect("fixture shapes")
}

/// Valid but not exact: strings `g` (jump 0) and `h` (jump 1) with
/// `V_0 = <h_0>` and `V_1 = <g_1>`, so `V_1^{Y,0}` is all of `V_1` while
/// `up_0(V_0) = 0`.
pub fn non_exact_fixture() -> ExplicitLimitSeries {
    from_strings(1, 0, &[0, 1], &[vec![1], vec![0]])
}
