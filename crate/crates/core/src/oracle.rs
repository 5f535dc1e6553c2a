//! Independent checks that never touch the differential operator.
//!
//! [`freudenthal`] computes weight multiplicities with the classical
//! recursion over positive-root strings. [`torus_check`] evaluates a
//! candidate character polynomial at random torus points, substituting the
//! fundamental characters computed from their weight systems, and compares
//! with the weight sum of the target representation.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lie::{cartan_matrix, dominant_weights_below, weyl_dim, Weight, RANK};
use crate::poly::MultiPoly;

/// Representations with more than this many weights are refused.
pub const DEFAULT_CEILING: u64 = 1_000_000;

/// Default agreement threshold for [`torus_check`].
pub const TORUS_TOLERANCE: f64 = 1e-8;

/// Neumaier's variant of Kahan summation.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// Dominant weight multiplicities of one irreducible representation.
#[derive(Clone, Debug)]
pub struct WeightSystem {
    pub highest: Weight,
    pub mults: BTreeMap<Weight, u64>,
    pub orbit_sizes: BTreeMap<Weight, u64>,
}

impl WeightSystem {
    pub fn mult(&self, mu: &Weight) -> u64 {
        self.mults.get(&dominant_representative(mu)).copied().unwrap_or(0)
    }

    /// Orbit-weighted multiplicity sum, which is the dimension.
    pub fn total(&self) -> u64 {
        self.mults.iter().map(|(w, k)| k * self.orbit_sizes[w]).sum()
    }

    /// Every weight with its multiplicity.
    pub fn all_weights(&self) -> Vec<(Weight, u64)> {
        let mut out = Vec::new();
        for (w, &k) in &self.mults {
            out.extend(weyl_orbit(w).into_iter().map(|v| (v, k)));
        }
        out
    }
}

/// `s_i(μ) = μ − μ_i α_i`.
fn reflect(mu: &Weight, i: usize) -> Weight {
    let a = &cartan_matrix().a;
    let mut c = mu.0;
    let k = mu.0[i];
    for (cj, aij) in c.iter_mut().zip(a[i]) {
        *cj -= k * aij;
    }
    Weight(c)
}

/// The dominant weight in the Weyl orbit of `mu`.
pub fn dominant_representative(mu: &Weight) -> Weight {
    let mut w = *mu;
    while let Some(i) = w.0.iter().position(|&c| c < 0) {
        w = reflect(&w, i);
    }
    w
}

/// The Weyl orbit of `mu`, by closure under simple reflections.
pub fn weyl_orbit(mu: &Weight) -> Vec<Weight> {
    let mut seen = HashSet::from([*mu]);
    let mut stack = vec![*mu];
    while let Some(w) = stack.pop() {
        for i in 0..RANK {
            if w.0[i] != 0 {
                let v = reflect(&w, i);
                if seen.insert(v) {
                    stack.push(v);
                }
            }
        }
    }
    let mut v: Vec<Weight> = seen.into_iter().collect();
    v.sort();
    v
}

/// Freudenthal's multiplicity recursion, refusing representations larger
/// than [`DEFAULT_CEILING`].
pub fn freudenthal(m: &Weight) -> Result<WeightSystem> {
    freudenthal_with_ceiling(m, DEFAULT_CEILING)
}

pub fn freudenthal_with_ceiling(m: &Weight, ceiling: u64) -> Result<WeightSystem> {
    let dim = weyl_dim(m)?;
    if dim > ceiling.into() {
        return Err(Error::OracleRefusal {
            weight: *m,
            dim: BigInt::from(dim),
            ceiling,
        });
    }
    let cd = cartan_matrix();
    let rho = Weight([1; RANK]);
    let norm2 = |w: &Weight| cd.inner2(w, w);
    let top = norm2(&(*m + rho));
    let roots: Vec<(Weight, &crate::lie::RootVector)> = cd
        .positive_roots
        .iter()
        .map(|r| (r.to_weight(), r))
        .collect();

    let order = dominant_weights_below(m)?;
    let mut mults: BTreeMap<Weight, u64> = BTreeMap::new();
    mults.insert(*m, 1);
    for mu in order.iter().skip(1) {
        let mut acc: i64 = 0;
        for (aw, r) in &roots {
            let mut k = 1;
            loop {
                let nu = *mu + aw.scaled(k);
                let Some(&mult) = mults.get(&dominant_representative(&nu)) else {
                    break;
                };
                acc += r.pairing(&nu) * mult as i64;
                k += 1;
            }
        }
        // mult = 2Σ / ((m+ρ)² − (μ+ρ)²), with both norms doubled.
        let gap2 = top - norm2(&(*mu + rho));
        assert!(gap2 > 0 && (4 * acc) % gap2 == 0, "Freudenthal step not integral at {mu}");
        let mult = (4 * acc / gap2) as u64;
        assert!(mult > 0, "dominant weight {mu} below {m} must occur");
        mults.insert(*mu, mult);
    }
    let orbit_sizes = mults
        .keys()
        .map(|w| (*w, weyl_orbit(w).len() as u64))
        .collect();
    let ws = WeightSystem {
        highest: *m,
        mults,
        orbit_sizes,
    };
    debug_assert_eq!(BigInt::from(ws.total()), BigInt::from(dim));
    Ok(ws)
}

/// Character sum `Σ mult·cos(2(μ, q))` with `q` in simple-root coordinates.
/// Every representation is self-conjugate, so the sum is real.
fn torus_character(weights: &[(Weight, u64)], q: &[f64; RANK]) -> f64 {
    let mut s = CompensatedSum::default();
    for (w, k) in weights {
        let phase: f64 = w.0.iter().zip(q).map(|(&c, &x)| c as f64 * x).sum();
        s.add(*k as f64 * (2.0 * phase).cos());
    }
    s.value()
}

/// Largest `|χ(z(q)) − Σ_μ mult_μ e^{2i(μ,q)}|` over `trials` random points
/// `q` with simple-root coordinates uniform in `(0, π/20)`.
pub fn torus_check(m: &Weight, chi: &MultiPoly, trials: usize, seed: u64) -> Result<f64> {
    let target = freudenthal(m)?.all_weights();
    let fundamentals: Vec<Vec<(Weight, u64)>> = (1..=RANK)
        .map(|i| freudenthal(&Weight::fundamental(i)).map(|ws| ws.all_weights()))
        .collect::<Result<_>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let upper = std::f64::consts::PI / 20.0;
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let mut q = [0.0; RANK];
        for x in q.iter_mut() {
            // open interval: reject the endpoint 0
            *x = loop {
                let v: f64 = rng.gen_range(0.0..upper);
                if v > 0.0 {
                    break v;
                }
            };
        }
        let z: [f64; RANK] = std::array::from_fn(|i| torus_character(&fundamentals[i], &q));
        let lhs = chi.eval_f64(&z);
        let rhs = torus_character(&target, &q);
        worst = worst.max((lhs - rhs).abs());
    }
    Ok(worst)
}
