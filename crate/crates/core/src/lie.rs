//! Root and weight data for E7.
//!
//! Simple roots are labelled as in the Bourbaki-style diagram used
//! throughout the crate: α1–α3–α4–α5–α6–α7 form the long chain and α2
//! hangs off α4. Weights are stored in the fundamental-weight basis,
//! root-lattice elements in the simple-root basis. Since E7 is simply
//! laced, `(α_i, λ_j) = δ_ij`, so pairing a root with a weight is a plain
//! dot product of coordinates, and `(λ_i, λ_j)` is the inverse Cartan
//! matrix.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::Ratio;

use crate::error::{Error, Result};

/// Rank of E7.
pub const RANK: usize = 7;

const CARTAN: [[i64; RANK]; RANK] = [
    [2, 0, -1, 0, 0, 0, 0],
    [0, 2, 0, -1, 0, 0, 0],
    [-1, 0, 2, -1, 0, 0, 0],
    [0, -1, -1, 2, -1, 0, 0],
    [0, 0, 0, -1, 2, -1, 0],
    [0, 0, 0, 0, -1, 2, -1],
    [0, 0, 0, 0, 0, -1, 2],
];

/// A weight `Σ m_i λ_i`, stored by its fundamental-basis coordinates.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Weight(pub [i64; RANK]);

/// An element `Σ c_i α_i` of the root lattice.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct RootVector(pub [i64; RANK]);

impl Weight {
    pub const ZERO: Weight = Weight([0; RANK]);

    /// The fundamental weight `λ_i`, 1-indexed.
    pub fn fundamental(i: usize) -> Weight {
        assert!((1..=RANK).contains(&i), "fundamental index out of range: {i}");
        let mut c = [0; RANK];
        c[i - 1] = 1;
        Weight(c)
    }

    pub fn coords(&self) -> &[i64; RANK] {
        &self.0
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0 == [0; RANK]
    }

    /// Degree in the fundamental characters, `Σ m_i`.
    pub fn level(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn ensure_dominant(&self) -> Result<()> {
        if self.is_dominant() {
            Ok(())
        } else {
            Err(Error::NotDominant(*self))
        }
    }

    pub fn scaled(&self, k: i64) -> Weight {
        Weight(self.0.map(|c| c * k))
    }

    /// Subtract a root-lattice element, returning the result in the weight basis.
    pub fn minus_root(&self, beta: &RootVector) -> Weight {
        let b = beta.to_weight();
        *self - b
    }
}

impl std::ops::Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        let mut c = self.0;
        for (x, y) in c.iter_mut().zip(rhs.0) {
            *x += y;
        }
        Weight(c)
    }
}

impl std::ops::Sub for Weight {
    type Output = Weight;
    fn sub(self, rhs: Weight) -> Weight {
        let mut c = self.0;
        for (x, y) in c.iter_mut().zip(rhs.0) {
            *x -= y;
        }
        Weight(c)
    }
}

/// Writes the compact 7-digit form (`0000002`) when every coordinate is a
/// single digit, and the comma form otherwise.
impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|c| (0..10).contains(c)) {
            for c in self.0 {
                write!(f, "{c}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
            f.write_str(&parts.join(","))
        }
    }
}

impl FromStr for Weight {
    type Err = Error;

    /// Accepts `0000002` or `0,0,0,0,0,0,2`. Coordinates must be nonnegative.
    fn from_str(s: &str) -> Result<Weight> {
        let s = s.trim();
        let bad = |why: &str| Error::BadWeight {
            input: s.to_string(),
            reason: why.to_string(),
        };
        let coords: Vec<i64> = if s.contains(',') {
            s.split(',')
                .map(|t| t.trim().parse::<i64>().map_err(|_| bad("not an integer")))
                .collect::<Result<_>>()?
        } else {
            if !s.chars().all(|c| c.is_ascii_digit()) {
                return Err(bad("expected digits"));
            }
            s.chars().map(|c| c as i64 - '0' as i64).collect()
        };
        if coords.len() != RANK {
            return Err(bad("expected exactly 7 coordinates"));
        }
        if coords.iter().any(|&c| c < 0) {
            return Err(bad("coordinates must be nonnegative"));
        }
        let mut c = [0; RANK];
        c.copy_from_slice(&coords);
        Ok(Weight(c))
    }
}

impl RootVector {
    pub const ZERO: RootVector = RootVector([0; RANK]);

    pub fn simple(i: usize) -> RootVector {
        assert!((1..=RANK).contains(&i), "simple root index out of range: {i}");
        let mut c = [0; RANK];
        c[i - 1] = 1;
        RootVector(c)
    }

    pub fn coords(&self) -> &[i64; RANK] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0 == [0; RANK]
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    /// Fundamental-basis coordinates: `α_i = Σ_j A_ij λ_j`.
    pub fn to_weight(&self) -> Weight {
        let mut w = [0; RANK];
        for (i, ci) in self.0.iter().enumerate() {
            for (j, wj) in w.iter_mut().enumerate() {
                *wj += ci * CARTAN[i][j];
            }
        }
        Weight(w)
    }

    /// `(β, μ)` for `β` in the root lattice and `μ` a weight.
    pub fn pairing(&self, mu: &Weight) -> i64 {
        self.0.iter().zip(mu.0.iter()).map(|(c, m)| c * m).sum()
    }
}

impl std::ops::Add for RootVector {
    type Output = RootVector;
    fn add(self, rhs: RootVector) -> RootVector {
        let mut c = self.0;
        for (x, y) in c.iter_mut().zip(rhs.0) {
            *x += y;
        }
        RootVector(c)
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Height `Σ c_i` of a root-lattice element.
pub fn height_of(delta: &RootVector) -> i64 {
    delta.0.iter().sum()
}

/// Cartan matrix, its inverse, the positive roots and the Weyl vector.
#[derive(Debug, Clone)]
pub struct CartanData {
    pub a: [[i64; RANK]; RANK],
    pub a_inv: [[Ratio<i64>; RANK]; RANK],
    /// `2·A⁻¹`, which is integral.
    pub a_inv2: [[i64; RANK]; RANK],
    /// Sorted by height, then lexicographically.
    pub positive_roots: Vec<RootVector>,
    /// `ρ = ½ Σ_{α>0} α` in the simple-root basis.
    pub rho_alpha: [Ratio<i64>; RANK],
}

/// Shared, lazily built Cartan data.
pub fn cartan_matrix() -> &'static CartanData {
    static DATA: OnceLock<CartanData> = OnceLock::new();
    DATA.get_or_init(CartanData::build)
}

impl CartanData {
    fn build() -> CartanData {
        let a = CARTAN;
        let a_inv = invert(&a);
        let a_inv2 = a_inv.map(|row| {
            row.map(|x| {
                let d = x * 2;
                assert!(d.is_integer(), "2·A⁻¹ must be integral");
                *d.numer()
            })
        });
        let positive_roots = generate_positive_roots(&a);
        let mut rho_alpha = [Ratio::from_integer(0); RANK];
        for r in &positive_roots {
            for (acc, c) in rho_alpha.iter_mut().zip(r.0) {
                *acc += Ratio::new(c, 2);
            }
        }
        let data = CartanData {
            a,
            a_inv,
            a_inv2,
            positive_roots,
            rho_alpha,
        };
        assert_eq!(data.positive_roots.len(), 63);
        assert_eq!(data.height_histogram(), TABLE_HEIGHTS.to_vec());
        data
    }

    /// Number of positive roots at each height 1, 2, ….
    pub fn height_histogram(&self) -> Vec<usize> {
        let max = self.positive_roots.iter().map(height_of).max().unwrap_or(0);
        let mut h = vec![0; max as usize];
        for r in &self.positive_roots {
            h[height_of(r) as usize - 1] += 1;
        }
        h
    }

    /// The highest root.
    pub fn highest_root(&self) -> RootVector {
        *self.positive_roots.last().expect("roots generated")
    }

    /// `(ρ, ρ)` computed from the α-basis form `ρᵀ A ρ`.
    pub fn rho_norm(&self) -> Ratio<i64> {
        let mut s = Ratio::from_integer(0);
        for i in 0..RANK {
            for j in 0..RANK {
                s += self.rho_alpha[i] * self.a[i][j] * self.rho_alpha[j];
            }
        }
        s
    }

    /// Twice the inner product `(μ, ν)` of two weights.
    pub fn inner2(&self, mu: &Weight, nu: &Weight) -> i64 {
        let mut s = 0;
        for i in 0..RANK {
            for j in 0..RANK {
                s += mu.0[i] * self.a_inv2[i][j] * nu.0[j];
            }
        }
        s
    }

    /// Twice the α-coordinates of a weight, `2·A⁻¹·μ`.
    pub fn alpha_coords2(&self, mu: &Weight) -> [i64; RANK] {
        let mut c = [0; RANK];
        for (i, ci) in c.iter_mut().enumerate() {
            *ci = (0..RANK).map(|j| self.a_inv2[i][j] * mu.0[j]).sum();
        }
        c
    }
}

/// Positive-root counts per height for E7.
pub const TABLE_HEIGHTS: [usize; 17] = [7, 6, 6, 6, 6, 5, 5, 4, 4, 3, 3, 2, 2, 1, 1, 1, 1];

fn invert(a: &[[i64; RANK]; RANK]) -> [[Ratio<i64>; RANK]; RANK] {
    let zero = Ratio::from_integer(0);
    let one = Ratio::from_integer(1);
    let mut m = [[zero; 2 * RANK]; RANK];
    for i in 0..RANK {
        for j in 0..RANK {
            m[i][j] = Ratio::from_integer(a[i][j]);
        }
        m[i][RANK + i] = one;
    }
    for col in 0..RANK {
        let pivot = (col..RANK)
            .find(|&r| m[r][col] != zero)
            .expect("Cartan matrix is nonsingular");
        m.swap(col, pivot);
        let p = m[col][col];
        for x in m[col].iter_mut() {
            *x /= p;
        }
        for r in 0..RANK {
            if r != col && m[r][col] != zero {
                let f = m[r][col];
                for c in 0..2 * RANK {
                    let v = m[col][c];
                    m[r][c] -= f * v;
                }
            }
        }
    }
    let mut inv = [[zero; RANK]; RANK];
    for i in 0..RANK {
        inv[i].copy_from_slice(&m[i][RANK..]);
    }
    inv
}

/// Closure of the simple roots under `β ↦ β + α_i` whenever `(β, α_i) < 0`.
/// In a simply-laced system this reaches every positive root.
fn generate_positive_roots(a: &[[i64; RANK]; RANK]) -> Vec<RootVector> {
    let form = |x: &RootVector, i: usize| -> i64 { (0..RANK).map(|k| x.0[k] * a[k][i]).sum() };
    let mut roots: BTreeSet<RootVector> = (1..=RANK).map(RootVector::simple).collect();
    let mut frontier: Vec<RootVector> = roots.iter().copied().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for r in &frontier {
            for i in 0..RANK {
                if form(r, i) < 0 {
                    let s = *r + RootVector::simple(i + 1);
                    if roots.insert(s) {
                        next.push(s);
                    }
                }
            }
        }
        frontier = next;
    }
    let mut v: Vec<RootVector> = roots.into_iter().collect();
    v.sort_by_key(|r| (height_of(r), *r));
    v
}

/// Weyl dimension formula `∏_{α>0} (α, m+ρ)/(α, ρ)`.
pub fn weyl_dim(m: &Weight) -> Result<BigUint> {
    m.ensure_dominant()?;
    let cd = cartan_matrix();
    let mut num = BigUint::from(1u32);
    let mut den = BigUint::from(1u32);
    for r in &cd.positive_roots {
        // (α, ρ) = ht(α) because ρ = Σ λ_i.
        let h = height_of(r);
        num *= BigUint::from((h + r.pairing(m)) as u64);
        den *= BigUint::from(h as u64);
    }
    let (q, rem) = num.div_rem(&den);
    debug_assert!(rem == BigUint::from(0u32));
    Ok(q)
}

/// `ε_m(κ) = 2(μ, μ + 2κρ)`.
pub fn eigenvalue(m: &Weight, kappa: i64) -> i64 {
    let cd = cartan_matrix();
    let mut quad = 0;
    let mut lin = 0;
    for j in 0..RANK {
        for k in 0..RANK {
            quad += cd.a_inv2[j][k] * m.0[j] * m.0[k];
            lin += cd.a_inv2[j][k] * m.0[j];
        }
    }
    // a_inv2 already carries the factor 2.
    quad + 2 * kappa * lin
}

/// `A⁻¹(m − μ)` when it lies in the nonnegative root lattice, else `None`.
pub fn weight_diff_in_roots(m: &Weight, mu: &Weight) -> Option<RootVector> {
    let c2 = cartan_matrix().alpha_coords2(&(*m - *mu));
    if c2.iter().any(|&c| c < 0 || c % 2 != 0) {
        return None;
    }
    Some(RootVector(c2.map(|c| c / 2)))
}

/// All dominant `μ` with `m − μ` in the nonnegative root lattice.
///
/// The set is explored downward from `m` by subtracting positive roots while
/// staying dominant; every dominant weight below `m` is reachable that way
/// since each covering relation in the dominance order is a positive root.
/// Sorted by the height of `m − μ`, ties broken with the lexicographically
/// largest `μ` first.
pub fn dominant_weights_below(m: &Weight) -> Result<Vec<Weight>> {
    m.ensure_dominant()?;
    let cd = cartan_matrix();
    let root_weights: Vec<Weight> = cd.positive_roots.iter().map(RootVector::to_weight).collect();
    let mut seen: HashSet<Weight> = HashSet::from([*m]);
    let mut stack = vec![*m];
    while let Some(u) = stack.pop() {
        for r in &root_weights {
            let v = u - *r;
            if v.is_dominant() && seen.insert(v) {
                stack.push(v);
            }
        }
    }
    let mut out: Vec<(i64, Weight)> = seen
        .into_iter()
        .map(|mu| {
            let beta = weight_diff_in_roots(m, &mu).expect("reached by root subtraction");
            (height_of(&beta), mu)
        })
        .collect();
    out.sort_by(|(ha, a), (hb, b)| ha.cmp(hb).then(b.cmp(a)));
    Ok(out.into_iter().map(|(_, w)| w).collect())
}
