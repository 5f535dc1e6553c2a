//! Irreducible characters as polynomials in `z1..z7`.
//!
//! Write `χ_m = Σ_λ C_λ z^{m−λ}` over the dominant weights `m − λ` below
//! `m`. The eigenvalue equation `Δ¹ χ_m = ε_m χ_m` together with the
//! triangular action of `Δ¹` on monomials gives
//!
//! ```text
//! (ε_m − ε_{m−λ}) C_λ = Σ_{β ≠ 0} S_{β, m−λ+β} C_{λ−β}
//! ```
//!
//! which [`CharacterTable::character_m1`] solves in order of increasing
//! height. [`CharacterTable::character_m2`] instead applies the product of
//! `Δ¹ − ε_μ` over every lower dominant `μ` to `z^m`, which annihilates
//! all constituents except `χ_m`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::path::Path;
use std::sync::{Arc, RwLock};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::csmodel::{Delta1Operator, ImageTerm, MonomialAction};
use crate::error::{Error, Result};
use crate::fixtures::{dims_point, Fixture};
use crate::lie::{dominant_weights_below, eigenvalue, weyl_dim, Weight};
use crate::poly::{Monomial, MultiPoly};

type Image = Arc<Vec<ImageTerm>>;

/// Method 1 against any monomial action, with a memo local to the call.
pub fn method1_with<A: MonomialAction + ?Sized>(action: &A, m: &Weight) -> Result<MultiPoly> {
    let mut memo: HashMap<Monomial, Image> = HashMap::new();
    method1(m, |n| {
        if let Some(img) = memo.get(n) {
            return Ok(img.clone());
        }
        let img = Arc::new(action.monomial_image(n)?);
        memo.insert(*n, img.clone());
        Ok(img)
    })
}

fn method1(m: &Weight, mut image: impl FnMut(&Monomial) -> Result<Image>) -> Result<MultiPoly> {
    m.ensure_dominant()?;
    if m.is_zero() {
        return Ok(MultiPoly::one());
    }
    let below = dominant_weights_below(m)?;
    let monos: Vec<Monomial> = below
        .iter()
        .map(Monomial::from_weight)
        .collect::<Result<_>>()?;
    let index: HashMap<Monomial, usize> = monos.iter().enumerate().map(|(i, n)| (*n, i)).collect();
    let top = eigenvalue(m, 1);

    let mut acc = vec![BigInt::zero(); below.len()];
    let mut coeff = vec![BigInt::zero(); below.len()];
    coeff[0] = BigInt::one();
    for idx in 0..below.len() {
        if idx > 0 {
            let gap = top - eigenvalue(&below[idx], 1);
            if gap == 0 {
                return Err(Error::ZeroDenominator {
                    top: *m,
                    lower: below[idx],
                });
            }
            let (q, r) = acc[idx].div_rem(&BigInt::from(gap));
            if !r.is_zero() {
                return Err(Error::NonIntegral {
                    weight: *m,
                    monomial: monos[idx],
                });
            }
            coeff[idx] = q;
        }
        if coeff[idx].is_zero() {
            continue;
        }
        let c = coeff[idx].clone();
        for t in image(&monos[idx])?.iter().filter(|t| !t.beta.is_zero()) {
            let &ti = index.get(&t.target).ok_or(Error::StructuralViolation {
                from: monos[idx],
                to: t.target,
            })?;
            acc[ti] += &t.coeff * &c;
        }
    }
    let mut chi = MultiPoly::zero();
    for (n, c) in monos.into_iter().zip(coeff) {
        chi.add_term(n, c);
    }
    Ok(chi)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Method1,
    Method2,
    Fixture,
}

/// Memoised characters and monomial images for one operator.
///
/// Reads may run concurrently; insertions take a write lock briefly.
pub struct CharacterTable<'op> {
    op: &'op Delta1Operator,
    cache: RwLock<HashMap<Weight, (Arc<MultiPoly>, Provenance)>>,
    images: RwLock<HashMap<Monomial, Image>>,
}

impl<'op> CharacterTable<'op> {
    pub fn new(op: &'op Delta1Operator) -> CharacterTable<'op> {
        CharacterTable {
            op,
            cache: RwLock::default(),
            images: RwLock::default(),
        }
    }

    pub fn operator(&self) -> &'op Delta1Operator {
        self.op
    }

    fn image(&self, n: &Monomial) -> Result<Image> {
        if let Some(img) = self.images.read().unwrap().get(n) {
            return Ok(img.clone());
        }
        let img = Arc::new(self.op.monomial_image(n)?);
        self.images.write().unwrap().insert(*n, img.clone());
        Ok(img)
    }

    /// The cached character, computing it by Method 1 when absent.
    pub fn character(&self, m: &Weight) -> Result<Arc<MultiPoly>> {
        if let Some((chi, _)) = self.cache.read().unwrap().get(m) {
            return Ok(chi.clone());
        }
        let chi = Arc::new(self.character_m1(m)?);
        self.cache
            .write()
            .unwrap()
            .entry(*m)
            .or_insert_with(|| (chi.clone(), Provenance::Method1));
        Ok(chi)
    }

    pub fn provenance(&self, m: &Weight) -> Option<Provenance> {
        self.cache.read().unwrap().get(m).map(|(_, p)| *p)
    }

    pub fn len(&self) -> usize {
        self.cache.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Stores a character obtained elsewhere after checking it.
    pub fn insert(&self, m: Weight, chi: MultiPoly, provenance: Provenance) -> Result<bool> {
        let report = verify_character(self.op, &m, &chi)?;
        if !report.passed() {
            return Ok(false);
        }
        self.cache
            .write()
            .unwrap()
            .insert(m, (Arc::new(chi), provenance));
        Ok(true)
    }

    /// Method 1: the triangular recursion, always recomputed.
    pub fn character_m1(&self, m: &Weight) -> Result<MultiPoly> {
        method1(m, |n| self.image(n))
    }

    /// Method 2: the annihilator product, always recomputed.
    ///
    /// The product scales `χ_m` by the product of eigenvalue gaps, and is
    /// kept content-free along the way; the final division by the
    /// coefficient of `z^m` restores the unit leading coefficient.
    pub fn character_m2(&self, m: &Weight) -> Result<MultiPoly> {
        m.ensure_dominant()?;
        if m.is_zero() {
            return Ok(MultiPoly::one());
        }
        let below = dominant_weights_below(m)?;
        let zm = Monomial::from_weight(m)?;
        let mut p = MultiPoly::from(zm);
        for mu in below.iter().skip(1) {
            let eps = BigInt::from(eigenvalue(mu, 1));
            let mut next = p.scale(&-eps);
            for (n, c) in p.terms() {
                for t in self.image(n)?.iter() {
                    next.add_term(t.target, &t.coeff * c);
                }
            }
            let g = next.content();
            p = if g.is_zero() || g.is_one() {
                next
            } else {
                next.div_exact(&g).expect("content divides")
            };
        }
        let lead = p.coefficient_of(&zm);
        if lead.is_zero() {
            return Err(Error::ZeroDenominator {
                top: *m,
                lower: *m,
            });
        }
        p.div_exact(&lead).ok_or_else(|| {
            let odd = p
                .terms()
                .find(|(_, c)| !c.is_multiple_of(&lead))
                .map(|(n, _)| *n)
                .unwrap_or_default();
            Error::NonIntegral {
                weight: *m,
                monomial: odd,
            }
        })
    }

    /// Loads `chars.txt` from `dir`, keeping entries that verify.
    /// Returns the number of characters accepted.
    pub fn load_dir(&self, dir: &Path) -> Result<usize> {
        let path = dir.join(CACHE_FILE);
        if !path.exists() {
            return Ok(0);
        }
        let fx = Fixture::load(&path)?;
        let mut accepted = 0;
        for (w, chi) in fx.characters() {
            if self.insert(w, chi, Provenance::Method1)? {
                accepted += 1;
            }
        }
        Ok(accepted)
    }

    /// Writes every cached character to `chars.txt` in `dir`.
    pub fn save_dir(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir)?;
        let sorted: BTreeMap<Weight, Arc<MultiPoly>> = self
            .cache
            .read()
            .unwrap()
            .iter()
            .map(|(w, (c, _))| (*w, c.clone()))
            .collect();
        let mut text = String::from("# chi <weight> = <polynomial>\n");
        for (w, chi) in sorted {
            text.push_str(&format!("chi {w} = {chi}\n"));
        }
        let tmp = dir.join(format!("{CACHE_FILE}.tmp"));
        std::fs::write(&tmp, text)?;
        std::fs::rename(tmp, dir.join(CACHE_FILE))?;
        Ok(())
    }
}

pub const CACHE_FILE: &str = "chars.txt";

/// Outcome of [`verify_character`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterReport {
    pub weight: Weight,
    pub eigen_identity: bool,
    pub dimension: BigInt,
    pub expected_dimension: BigUint,
    pub leading_coefficient: BigInt,
}

impl CharacterReport {
    pub fn dimension_ok(&self) -> bool {
        !self.dimension.is_negative() && self.dimension.magnitude() == &self.expected_dimension
    }

    pub fn passed(&self) -> bool {
        self.eigen_identity && self.dimension_ok() && self.leading_coefficient.is_one()
    }
}

impl fmt::Display for CharacterReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = |ok: bool| if ok { "ok" } else { "FAIL" };
        write!(
            f,
            "{} eigen={} dim={} ({}) lead={} ({})",
            self.weight,
            mark(self.eigen_identity),
            self.dimension,
            mark(self.dimension_ok()),
            self.leading_coefficient,
            mark(self.leading_coefficient.is_one()),
        )
    }
}

/// Checks the eigenvalue equation, the dimension at the fundamental
/// dimensions point and the unit coefficient on `z^m`.
pub fn verify_character(op: &Delta1Operator, m: &Weight, chi: &MultiPoly) -> Result<CharacterReport> {
    let expected_dimension = weyl_dim(m)?;
    Ok(CharacterReport {
        weight: *m,
        eigen_identity: op.is_eigenfunction(m, chi),
        dimension: chi.eval_integer(&dims_point()),
        expected_dimension,
        leading_coefficient: chi.coefficient_of(&Monomial::from_weight(m)?),
    })
}
