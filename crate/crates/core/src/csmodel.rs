//! The second-order operator `Δ¹` in the fundamental-character variables.
//!
//! ```text
//! Δ¹ = Σ_{j,k} a_jk(z) ∂_j ∂_k + Σ_j b_j(z) ∂_j
//! ```
//!
//! The first-order part is fixed by the Cartan matrix. The coefficients
//! `a_jk` come from the quadratic corpus: applying `Δ¹` to `z_j z_k` and
//! expanding the product into irreducibles gives
//!
//! ```text
//! 2 a_jk = Σ_μ N_{μ;jk} ε_μ χ_μ − b_j z_k − b_k z_j
//! ```
//!
//! Some pairwise products contain constituents whose characters are of
//! third order or higher. Those are computed on the fly from the entries
//! built so far, taking pairs in increasing height of `λ_j + λ_k`; every
//! coefficient such a character needs belongs to a strictly lower pair.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::charsolve;
use crate::error::{Error, Result};
use crate::fixtures::QuadraticCorpus;
use crate::lie::{cartan_matrix, eigenvalue, height_of, weight_diff_in_roots, RootVector, Weight, RANK};
use crate::poly::{Monomial, MultiPoly};

/// One term `S · z^{n−β}` of `Δ¹ z^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImageTerm {
    pub beta: RootVector,
    pub target: Monomial,
    pub coeff: BigInt,
}

/// Anything that maps a monomial to its image under `Δ¹`, expressed as
/// root-lattice offsets. Implemented by the full operator and by the
/// partially assembled one used while the `a_jk` are being built.
pub trait MonomialAction {
    fn monomial_image(&self, n: &Monomial) -> Result<Vec<ImageTerm>>;
}

/// `b_j = ε_{λ_j}(1) z_j`, from `2(A⁻¹_jj + 2 Σ_k A⁻¹_kj)`.
pub fn build_b() -> [MultiPoly; RANK] {
    let inv2 = &cartan_matrix().a_inv2;
    std::array::from_fn(|j| {
        let col: i64 = (0..RANK).map(|k| inv2[k][j]).sum();
        // inv2 already holds 2·A⁻¹
        let c = inv2[j][j] + 2 * col;
        debug_assert_eq!(c, eigenvalue(&Weight::fundamental(j + 1), 1));
        MultiPoly::term(Monomial::var(j + 1), c)
    })
}

fn b_coefficients(b: &[MultiPoly; RANK]) -> [BigInt; RANK] {
    std::array::from_fn(|j| b[j].coefficient_of(&Monomial::var(j + 1)))
}

/// `Δ¹ z^n` given an accessor for the `a_jk`.
fn image_poly<'a>(
    n: &Monomial,
    a: impl Fn(usize, usize) -> Option<&'a MultiPoly>,
    b: &[BigInt; RANK],
) -> Result<MultiPoly> {
    let e = n.exps();
    let mut out = MultiPoly::zero();
    let diag: BigInt = (0..RANK).map(|j| &b[j] * e[j]).sum();
    out.add_term(*n, diag);
    for j in 0..RANK {
        for k in 0..RANK {
            let f = i64::from(e[j]) * (i64::from(e[k]) - i64::from(j == k));
            if f == 0 {
                continue;
            }
            let coeff = a(j, k).ok_or_else(|| {
                Error::CorpusIncomplete(Weight::fundamental(j + 1) + Weight::fundamental(k + 1))
            })?;
            let mut shift = *n;
            shift.0[j] -= 1;
            shift.0[k] -= 1;
            out.add_scaled_shifted(coeff, &BigInt::from(f), &shift);
        }
    }
    Ok(out)
}

/// Splits `Δ¹ z^n` into root-lattice offsets, lowest height first.
fn to_image_terms(n: &Monomial, p: MultiPoly) -> Result<Vec<ImageTerm>> {
    let from = n.to_weight();
    let mut terms = Vec::with_capacity(p.len());
    for (t, c) in p.terms() {
        let beta = weight_diff_in_roots(&from, &t.to_weight()).ok_or(Error::StructuralViolation {
            from: *n,
            to: *t,
        })?;
        terms.push(ImageTerm {
            beta,
            target: *t,
            coeff: c.clone(),
        });
    }
    terms.sort_by(|x, y| {
        height_of(&x.beta)
            .cmp(&height_of(&y.beta))
            .then(y.target.cmp(&x.target))
    });
    Ok(terms)
}

/// The operator `Δ¹` with its full coefficient data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Delta1Operator {
    a: [[MultiPoly; RANK]; RANK],
    b: [MultiPoly; RANK],
    b_coeff: [BigInt; RANK],
}

impl Delta1Operator {
    /// Panics unless `a` is symmetric and each `b_j` is a multiple of `z_j`.
    pub fn new(a: [[MultiPoly; RANK]; RANK], b: [MultiPoly; RANK]) -> Delta1Operator {
        for j in 0..RANK {
            for k in 0..j {
                assert_eq!(a[j][k], a[k][j], "a must be symmetric");
            }
            assert!(
                b[j].support().all(|m| *m == Monomial::var(j + 1)),
                "b_{} must be a multiple of z_{}",
                j + 1,
                j + 1
            );
        }
        let b_coeff = b_coefficients(&b);
        Delta1Operator { a, b, b_coeff }
    }

    /// Rebuilds the operator from a quadratic corpus.
    pub fn from_corpus(corpus: &QuadraticCorpus) -> Result<Delta1Operator> {
        Ok(Delta1Operator::new(build_a(corpus)?, build_b()))
    }

    /// The operator rebuilt from the bundled corpus, shared process-wide.
    pub fn embedded() -> &'static Delta1Operator {
        static OP: OnceLock<Delta1Operator> = OnceLock::new();
        OP.get_or_init(|| {
            Delta1Operator::from_corpus(&QuadraticCorpus::embedded())
                .expect("bundled corpus reconstructs the operator")
        })
    }

    /// `a_jk`, 1-indexed.
    pub fn a(&self, j: usize, k: usize) -> &MultiPoly {
        &self.a[j - 1][k - 1]
    }

    /// `b_j`, 1-indexed.
    pub fn b(&self, j: usize) -> &MultiPoly {
        &self.b[j - 1]
    }

    /// A copy with `a_jk = a_kj = poly`.
    pub fn with_entry(&self, j: usize, k: usize, poly: MultiPoly) -> Delta1Operator {
        let mut a = self.a.clone();
        a[j - 1][k - 1] = poly.clone();
        a[k - 1][j - 1] = poly;
        Delta1Operator::new(a, self.b.clone())
    }

    /// `Δ¹ z^n` as a polynomial.
    pub fn apply_monomial(&self, n: &Monomial) -> MultiPoly {
        image_poly(n, |j, k| Some(&self.a[j][k]), &self.b_coeff).expect("operator is complete")
    }

    pub fn apply(&self, p: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (n, c) in p.terms() {
            out.add_scaled_shifted(&self.apply_monomial(n), c, &Monomial::ONE);
        }
        out
    }

    /// Whether `Δ¹ χ = ε_m(1) χ` holds exactly.
    pub fn is_eigenfunction(&self, m: &Weight, chi: &MultiPoly) -> bool {
        self.apply(chi) == chi.scale(&BigInt::from(eigenvalue(m, 1)))
    }
}

impl MonomialAction for Delta1Operator {
    fn monomial_image(&self, n: &Monomial) -> Result<Vec<ImageTerm>> {
        to_image_terms(n, self.apply_monomial(n))
    }
}

pub fn apply_delta1(op: &Delta1Operator, p: &MultiPoly) -> MultiPoly {
    op.apply(p)
}

pub fn monomial_image(op: &Delta1Operator, n: &Monomial) -> Result<Vec<ImageTerm>> {
    op.monomial_image(n)
}

/// The operator while it is being assembled: missing `a_jk` are `None`.
struct PartialOperator<'a> {
    a: &'a [[Option<MultiPoly>; RANK]; RANK],
    b: &'a [BigInt; RANK],
}

impl MonomialAction for PartialOperator<'_> {
    fn monomial_image(&self, n: &Monomial) -> Result<Vec<ImageTerm>> {
        to_image_terms(n, image_poly(n, |j, k| self.a[j][k].as_ref(), self.b)?)
    }
}

/// Twice the height of `λ_j + λ_k` (0-indexed), used to order the pairs.
fn pair_height2(j: usize, k: usize) -> i64 {
    let inv2 = &cartan_matrix().a_inv2;
    (0..RANK).map(|i| inv2[i][j] + inv2[i][k]).sum()
}

/// Reconstructs all `a_jk` from the corpus.
pub fn build_a(corpus: &QuadraticCorpus) -> Result<[[MultiPoly; RANK]; RANK]> {
    let b = build_b();
    let b_coeff = b_coefficients(&b);
    let mut a: [[Option<MultiPoly>; RANK]; RANK] = Default::default();
    let mut chars: HashMap<Weight, MultiPoly> = corpus
        .second_order_chars
        .iter()
        .map(|(w, p)| (*w, p.clone()))
        .collect();

    let mut pairs: Vec<(usize, usize)> = (0..RANK)
        .flat_map(|j| (j..RANK).map(move |k| (j, k)))
        .collect();
    pairs.sort_by_key(|&(j, k)| (pair_height2(j, k), j, k));

    for (j, k) in pairs {
        let top = Weight::fundamental(j + 1) + Weight::fundamental(k + 1);
        let series = corpus.get(j + 1, k + 1).ok_or(Error::CorpusIncomplete(top))?;
        let mut sum = MultiPoly::zero();
        for (mu, n) in series.iter() {
            if !chars.contains_key(mu) {
                let partial = PartialOperator { a: &a, b: &b_coeff };
                let chi = charsolve::method1_with(&partial, mu)?;
                chars.insert(*mu, chi);
            }
            let scale = BigInt::from(n) * eigenvalue(mu, 1);
            sum.add_scaled_shifted(&chars[mu], &scale, &Monomial::ONE);
        }
        sum -= &(&b[j] * &MultiPoly::var(k + 1));
        sum -= &(&b[k] * &MultiPoly::var(j + 1));
        let half = sum.div_exact(&BigInt::from(2)).ok_or_else(|| {
            let odd = sum
                .terms()
                .find(|(_, c)| !(*c % 2u32).is_zero())
                .map(|(m, _)| *m)
                .unwrap_or_default();
            Error::NonIntegral {
                weight: top,
                monomial: odd,
            }
        })?;
        a[j][k] = Some(half.clone());
        a[k][j] = Some(half);
    }
    Ok(a.map(|row| row.map(|e| e.expect("every pair assigned"))))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    ReconstructedWins,
    PrintedWins,
    /// Neither or both versions pass on the available characters.
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::ReconstructedWins => "reconstructed-wins",
            Verdict::PrintedWins => "printed-wins",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

impl FromStr for Verdict {
    type Err = Error;
    fn from_str(s: &str) -> Result<Verdict> {
        match s.trim() {
            "reconstructed-wins" => Ok(Verdict::ReconstructedWins),
            "printed-wins" => Ok(Verdict::PrintedWins),
            "inconclusive" => Ok(Verdict::Inconclusive),
            other => Err(Error::BadPolynomial {
                input: other.to_string(),
                reason: "unknown verdict".into(),
            }),
        }
    }
}

/// A published `a_jk` that disagrees with the reconstruction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Erratum {
    pub j: usize,
    pub k: usize,
    pub printed: MultiPoly,
    pub reconstructed: MultiPoly,
    pub verdict: Verdict,
}

impl fmt::Display for Erratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "a {}{} : printed {} ; reconstructed {} ; verdict {}",
            self.j, self.k, self.printed, self.reconstructed, self.verdict
        )
    }
}

impl FromStr for Erratum {
    type Err = Error;
    fn from_str(s: &str) -> Result<Erratum> {
        let bad = |why: &str| Error::BadPolynomial {
            input: s.to_string(),
            reason: why.to_string(),
        };
        let (head, rest) = s.split_once(':').ok_or_else(|| bad("missing ':'"))?;
        let jk = head.trim().strip_prefix("a ").ok_or_else(|| bad("expected 'a jk'"))?;
        let d: Vec<usize> = jk
            .trim()
            .chars()
            .filter_map(|c| c.to_digit(10).map(|d| d as usize))
            .collect();
        let [j, k] = d[..] else {
            return Err(bad("expected two indices"));
        };
        let parts: Vec<&str> = rest.split(';').map(str::trim).collect();
        let [p, r, v] = parts[..] else {
            return Err(bad("expected three ';'-separated fields"));
        };
        let field = |t: &str, key: &str| -> Result<String> {
            t.strip_prefix(key)
                .map(|x| x.trim().to_string())
                .ok_or_else(|| bad(key))
        };
        Ok(Erratum {
            j,
            k,
            printed: field(p, "printed")?.parse()?,
            reconstructed: field(r, "reconstructed")?.parse()?,
            verdict: field(v, "verdict")?.parse()?,
        })
    }
}

/// Parses an errata file; blank lines and `#` comments are skipped.
pub fn parse_errata(text: &str) -> Result<Vec<Erratum>> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(str::parse)
        .collect()
}

/// Whether `chi` has a monomial on which `∂_j ∂_k` acts nontrivially.
fn touches(chi: &MultiPoly, j: usize, k: usize) -> bool {
    chi.support().any(|m| {
        let e = m.exps();
        let (ej, ek) = (e[j - 1], e[k - 1]);
        if j == k {
            ej >= 2
        } else {
            ej >= 1 && ek >= 1
        }
    })
}

/// Compares the reconstruction with a published table. For every entry
/// that differs, each version is substituted into the operator and tested
/// against the eigenvalue equation on the `witnesses` it acts on.
pub fn compare_printed(
    op: &Delta1Operator,
    printed: &BTreeMap<(usize, usize), MultiPoly>,
    witnesses: &BTreeMap<Weight, MultiPoly>,
) -> Vec<Erratum> {
    let mut out = Vec::new();
    for (&(j, k), p) in printed {
        let r = op.a(j, k);
        if p == r {
            continue;
        }
        let passes = |candidate: &Delta1Operator| {
            witnesses
                .iter()
                .filter(|(_, chi)| touches(chi, j, k))
                .all(|(w, chi)| candidate.is_eigenfunction(w, chi))
        };
        let recon_ok = passes(op);
        let printed_ok = passes(&op.with_entry(j, k, p.clone()));
        let verdict = match (recon_ok, printed_ok) {
            (true, false) => Verdict::ReconstructedWins,
            (false, true) => Verdict::PrintedWins,
            _ => Verdict::Inconclusive,
        };
        out.push(Erratum {
            j,
            k,
            printed: p.clone(),
            reconstructed: r.clone(),
            verdict,
        });
    }
    out
}
