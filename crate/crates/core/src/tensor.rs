//! Clebsch–Gordan series by peeling irreducible characters off a product.
//!
//! Walking down the dominant weights below the top weight of a product in
//! order of increasing depth, the coefficient of `z^μ` left in the residual
//! is exactly the multiplicity of `R_μ`. Subtracting `N_μ χ_μ` and
//! continuing must leave a zero residual, so every decomposition checks
//! itself.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::charsolve::CharacterTable;
use crate::error::{Error, Result};
use crate::fixtures::QuadraticCorpus;
use crate::lie::{dominant_weights_below, weyl_dim, Weight, RANK};
use crate::poly::{Monomial, MultiPoly};

/// A multiset of irreducible representations, keyed by highest weight.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct CGSeries {
    terms: BTreeMap<Weight, u64>,
}

impl CGSeries {
    pub fn new() -> CGSeries {
        CGSeries::default()
    }

    /// Adds `mult` copies of `R_w`; zero is a no-op.
    pub fn add(&mut self, w: Weight, mult: u64) {
        if mult > 0 {
            *self.terms.entry(w).or_insert(0) += mult;
        }
    }

    pub fn get(&self, w: &Weight) -> u64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    /// Terms with the lexicographically largest weight first.
    pub fn iter(&self) -> impl Iterator<Item = (&Weight, u64)> + '_ {
        self.terms.iter().rev().map(|(w, n)| (w, *n))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_multiplicity(&self) -> u64 {
        self.terms.values().copied().max().unwrap_or(0)
    }

    /// `Σ N_μ dim R_μ`.
    pub fn dimension(&self) -> BigUint {
        self.terms
            .iter()
            .map(|(w, n)| weyl_dim(w).expect("series weights are dominant") * *n)
            .sum()
    }
}

impl FromIterator<(Weight, u64)> for CGSeries {
    fn from_iter<I: IntoIterator<Item = (Weight, u64)>>(iter: I) -> CGSeries {
        let mut s = CGSeries::new();
        for (w, n) in iter {
            s.add(w, n);
        }
        s
    }
}

/// `w:N w:N ...`, the right-hand side of a fixture line.
impl fmt::Display for CGSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (w, n)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{w}:{n}")?;
        }
        Ok(())
    }
}

/// Decomposes `product`, whose highest weight is `top`.
pub fn decompose_poly(
    table: &CharacterTable<'_>,
    product: &MultiPoly,
    top: &Weight,
    name: &str,
) -> Result<CGSeries> {
    let fail = |reason: String| Error::Decomposition {
        product: name.to_string(),
        reason,
    };
    let mut residual = product.clone();
    let mut series = CGSeries::new();
    for mu in dominant_weights_below(top)? {
        let n = residual.coefficient_of(&Monomial::from_weight(&mu)?);
        if n.is_zero() {
            continue;
        }
        if n.is_negative() {
            return Err(fail(format!("negative multiplicity {n} for {mu}")));
        }
        let chi = table.character(&mu)?;
        residual.add_scaled_shifted(&chi, &-&n, &Monomial::ONE);
        let mult = n
            .to_u64()
            .ok_or_else(|| fail(format!("multiplicity {n} overflows")))?;
        series.add(mu, mult);
    }
    if !residual.is_zero() {
        return Err(fail(format!("residual {residual} is not zero")));
    }
    Ok(series)
}

/// `R_m ⊗ R_n`.
pub fn cg_decompose(table: &CharacterTable<'_>, m: &Weight, n: &Weight) -> Result<CGSeries> {
    let product = &*table.character(m)? * &*table.character(n)?;
    decompose_poly(table, &product, &(*m + *n), &format!("{m} x {n}"))
}

/// `∏ R_{λ_i}^{⊗ n_i}`, the product of fundamental characters `z^n`.
pub fn monomial_decompose(table: &CharacterTable<'_>, n: &Monomial) -> Result<CGSeries> {
    decompose_poly(table, &MultiPoly::from(*n), &n.to_weight(), &n.to_string())
}

/// Whether `Σ N_μ dim R_μ` equals the dimension of the product.
pub fn dimension_identity(series: &CGSeries, factors: &[Weight]) -> Result<bool> {
    let mut expected = BigUint::from(1u32);
    for f in factors {
        expected *= weyl_dim(f)?;
    }
    Ok(series.dimension() == expected)
}

/// Offsets from `n λ_k` of the constituents of `z7 · χ_{nλ_k}`, written as
/// (plus, minus) lists of fundamental indices.
fn z7_family_offsets(k: usize) -> &'static [(&'static [usize], &'static [usize])] {
    match k {
        1 => &[(&[7], &[]), (&[2], &[1]), (&[7], &[1])],
        2 => &[(&[7], &[]), (&[3], &[2]), (&[6], &[2]), (&[1], &[2])],
        3 => &[
            (&[7], &[]),
            (&[1, 2], &[3]),
            (&[5], &[3]),
            (&[1, 7], &[3]),
            (&[2], &[3]),
        ],
        4 => &[
            (&[7], &[]),
            (&[2, 3], &[4]),
            (&[1, 5], &[4]),
            (&[2, 6], &[4]),
            (&[3, 7], &[4]),
            (&[1, 2], &[4]),
            (&[5], &[4]),
        ],
        5 => &[
            (&[7], &[]),
            (&[4], &[5]),
            (&[1, 6], &[5]),
            (&[2, 7], &[5]),
            (&[3], &[5]),
            (&[6], &[5]),
        ],
        6 => &[
            (&[7], &[]),
            (&[5], &[6]),
            (&[1, 7], &[6]),
            (&[2], &[6]),
            (&[7], &[6]),
        ],
        7 => &[(&[7], &[]), (&[6], &[7]), (&[1], &[7]), (&[], &[7])],
        _ => panic!("fundamental index out of range: {k}"),
    }
}

/// The closed form for `z7 · χ_{nλ_k}`, terms with equal weight merged.
pub fn z7_family_closed_form(k: usize, n: u32) -> CGSeries {
    assert!((1..=RANK).contains(&k) && n >= 1);
    let base = Weight::fundamental(k).scaled(i64::from(n));
    z7_family_offsets(k)
        .iter()
        .map(|(plus, minus)| {
            let mut w = base;
            for &i in *plus {
                w = w + Weight::fundamental(i);
            }
            for &i in *minus {
                w = w - Weight::fundamental(i);
            }
            (w, 1)
        })
        .collect()
}

/// A computed `z7 · χ_{nλ_k}` next to its closed form.
#[derive(Clone, Debug)]
pub struct FamilyCheck {
    pub k: usize,
    pub n: u32,
    pub computed: CGSeries,
    pub closed_form: CGSeries,
}

impl FamilyCheck {
    pub fn matches(&self) -> bool {
        self.computed == self.closed_form
    }
}

pub fn series_family_z7(table: &CharacterTable<'_>, k: usize, n: u32) -> Result<FamilyCheck> {
    let m = Weight::fundamental(k).scaled(i64::from(n));
    Ok(FamilyCheck {
        k,
        n,
        computed: cg_decompose(table, &Weight::fundamental(7), &m)?,
        closed_form: z7_family_closed_form(k, n),
    })
}

/// One pairwise product recomputed and compared with the corpus.
#[derive(Clone, Debug)]
pub struct RoundTrip {
    pub j: usize,
    pub k: usize,
    pub expected: CGSeries,
    pub computed: std::result::Result<CGSeries, String>,
}

impl RoundTrip {
    pub fn matches(&self) -> bool {
        self.computed.as_ref() == Ok(&self.expected)
    }
}

/// Recomputes all 28 pairwise products of fundamental representations.
pub fn verify_quadratic_roundtrip(
    table: &CharacterTable<'_>,
    corpus: &QuadraticCorpus,
) -> Vec<RoundTrip> {
    corpus
        .series
        .iter()
        .map(|(&(j, k), expected)| RoundTrip {
            j,
            k,
            expected: expected.clone(),
            computed: cg_decompose(table, &Weight::fundamental(j), &Weight::fundamental(k))
                .map_err(|e| e.to_string()),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::csmodel::Delta1Operator;

    fn w(s: &str) -> Weight {
        s.parse().unwrap()
    }

    fn series(s: &str) -> CGSeries {
        crate::fixtures::parse_series(s).unwrap()
    }

    fn table() -> CharacterTable<'static> {
        CharacterTable::new(Delta1Operator::embedded())
    }

    #[test]
    fn square_of_56() {
        let t = table();
        let s = cg_decompose(&t, &w("0000001"), &w("0000001")).unwrap();
        assert_eq!(s, series("0000002:1 1000000:1 0000010:1 0000000:1"));
        assert!(dimension_identity(&s, &[w("0000001"), w("0000001")]).unwrap());
    }

    #[test]
    fn trivial_factor() {
        let t = table();
        let m = w("0100010");
        assert_eq!(cg_decompose(&t, &m, &Weight::ZERO).unwrap(), series("0100010:1"));
    }

    #[test]
    fn cube_of_z7() {
        let t = table();
        let s = monomial_decompose(&t, &"z7^3".parse().unwrap()).unwrap();
        assert_eq!(
            s,
            series("0000003:1 0000011:2 0000100:1 1000001:3 0100000:2 0000001:4")
        );
        let nested: CGSeries = {
            let p = &*t.character(&w("0000002")).unwrap() * &MultiPoly::var(7);
            decompose_poly(&t, &p, &w("0000003"), "chi(0000002) z7").unwrap()
        };
        assert_eq!(nested.get(&w("0000003")), 1);
    }

    #[test]
    fn fundamental_monomial() {
        let t = table();
        assert_eq!(monomial_decompose(&t, &Monomial::var(1)).unwrap(), series("1000000:1"));
    }

    #[test]
    fn symmetric() {
        let t = table();
        let (a, b) = (w("1000000"), w("0000010"));
        assert_eq!(cg_decompose(&t, &a, &b).unwrap(), cg_decompose(&t, &b, &a).unwrap());
    }

    #[test]
    fn wrong_product_is_rejected() {
        let t = table();
        // z7^2 - 2 z1 would need R_{λ1} with multiplicity -1
        let p: MultiPoly = "z7^2 - 2*z1".parse().unwrap();
        assert!(decompose_poly(&t, &p, &w("0000002"), "bad").is_err());
    }

    #[test]
    fn closed_forms_at_n_one_collapse() {
        assert_eq!(
            z7_family_closed_form(7, 1),
            series("0000002:1 0000010:1 1000000:1 0000000:1")
        );
        assert_eq!(z7_family_closed_form(6, 1).get(&w("0000001")), 1);
        assert_eq!(z7_family_closed_form(2, 2), {
            series("0200001:1 0110000:1 0100010:1 1100000:1")
        });
    }

    #[test]
    fn family_k7_n2() {
        let t = table();
        let fc = series_family_z7(&t, 7, 2).unwrap();
        assert!(fc.matches(), "{} vs {}", fc.computed, fc.closed_form);
    }

    #[test]
    fn series_text() {
        let s = series("0000000:1 0000002:1");
        assert_eq!(s.to_string(), "0000002:1 0000000:1");
        assert_eq!(s.dimension(), BigUint::from(1464u32));
    }
}
