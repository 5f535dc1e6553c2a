//! Sparse polynomials in the seven fundamental characters `z1..z7` with
//! arbitrary-precision integer coefficients.
//!
//! Terms are kept in a `BTreeMap` under a fixed graded order, so iteration,
//! equality and the text form are all canonical. The text form lists terms
//! from the leading monomial down, as `c*z1^a1*...*z7^a7` with unit
//! exponents written bare and zero exponents omitted:
//!
//! ```
//! use charkit::poly::MultiPoly;
//! let p: MultiPoly = "1*z7^2 -1*z6 -1*z1 -1".parse().unwrap();
//! assert_eq!(p.to_string(), "1*z7^2 -1*z6 -1*z1 -1");
//! ```

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lie::{Weight, RANK};

/// `z^n = ∏ z_i^{n_i}`.
///
/// Ordered by total degree, then by the exponent tuple read from `z1`
/// upward where the smaller exponent ranks higher. The greatest monomial
/// is the leading one.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(pub [u32; RANK]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; RANK]);

    pub fn var(i: usize) -> Monomial {
        assert!((1..=RANK).contains(&i), "variable index out of range: {i}");
        let mut e = [0; RANK];
        e[i - 1] = 1;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u32; RANK] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// The monomial `z^m` for a dominant weight `m`.
    pub fn from_weight(m: &Weight) -> Result<Monomial> {
        m.ensure_dominant()?;
        Ok(Monomial(m.0.map(|c| c as u32)))
    }

    pub fn to_weight(&self) -> Weight {
        Weight(self.0.map(i64::from))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (x, y) in e.iter_mut().zip(other.0) {
            *x += y;
        }
        Monomial(e)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| b.cmp(a))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "z{}", i + 1)?;
            } else {
                write!(f, "z{}^{}", i + 1, e)?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

impl FromStr for Monomial {
    type Err = Error;

    /// Parses `z1^2*z7`, or `1` for the constant monomial.
    fn from_str(s: &str) -> Result<Monomial> {
        let s = s.trim();
        let bad = |why: &str| Error::BadPolynomial {
            input: s.to_string(),
            reason: why.to_string(),
        };
        let mut e = [0u32; RANK];
        if s == "1" {
            return Ok(Monomial(e));
        }
        for factor in s.split('*') {
            let (var, exp) = match factor.split_once('^') {
                Some((v, x)) => (v, x.parse::<u32>().map_err(|_| bad("bad exponent"))?),
                None => (factor, 1),
            };
            let idx = var
                .strip_prefix('z')
                .and_then(|d| d.parse::<usize>().ok())
                .filter(|i| (1..=RANK).contains(i))
                .ok_or_else(|| bad("expected a variable z1..z7"))?;
            e[idx - 1] += exp;
        }
        Ok(Monomial(e))
    }
}

/// A polynomial in `z1..z7` in canonical form: no zero coefficients stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::term(Monomial::ONE, c)
    }

    /// The variable `z_i`, 1-indexed.
    pub fn var(i: usize) -> Self {
        Self::term(Monomial::var(i), 1)
    }

    pub fn term(m: Monomial, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c.into());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms from the leading monomial down.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> + '_ {
        self.terms.iter().rev()
    }

    pub fn support(&self) -> impl Iterator<Item = &Monomial> + '_ {
        self.terms.keys().rev()
    }

    pub fn leading(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn coefficient_of(&self, n: &Monomial) -> BigInt {
        self.terms.get(n).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += c · z^shift · p`.
    pub fn add_scaled_shifted(&mut self, p: &MultiPoly, c: &BigInt, shift: &Monomial) {
        if c.is_zero() {
            return;
        }
        for (m, a) in &p.terms {
            self.add_term(m.mul(shift), a * c);
        }
    }

    pub fn scale(&self, c: &BigInt) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    /// Divides every coefficient by `d`, or returns `None` if any division
    /// leaves a remainder.
    pub fn div_exact(&self, d: &BigInt) -> Option<MultiPoly> {
        let mut terms = BTreeMap::new();
        for (m, a) in &self.terms {
            let (q, r) = a.div_rem(d);
            if !r.is_zero() {
                return None;
            }
            terms.insert(*m, q);
        }
        Some(MultiPoly { terms })
    }

    /// Gcd of all coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for a in self.terms.values() {
            g = g.gcd(a);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Formal partial derivative `∂/∂z_i`, 1-indexed.
    pub fn partial(&self, i: usize) -> MultiPoly {
        assert!((1..=RANK).contains(&i), "variable index out of range: {i}");
        let k = i - 1;
        let mut out = MultiPoly::zero();
        for (m, a) in &self.terms {
            let e = m.0[k];
            if e == 0 {
                continue;
            }
            let mut d = *m;
            d.0[k] -= 1;
            out.add_term(d, a * BigInt::from(e));
        }
        out
    }

    /// Exact value at an integer point.
    pub fn eval_integer(&self, point: &[BigInt; RANK]) -> BigInt {
        let max_exp: Vec<u32> = (0..RANK)
            .map(|k| self.terms.keys().map(|m| m.0[k]).max().unwrap_or(0))
            .collect();
        let powers: Vec<Vec<BigInt>> = (0..RANK)
            .map(|k| {
                let mut v = vec![BigInt::one()];
                for e in 0..max_exp[k] as usize {
                    let next = &v[e] * &point[k];
                    v.push(next);
                }
                v
            })
            .collect();
        self.terms
            .iter()
            .map(|(m, a)| {
                m.0.iter()
                    .enumerate()
                    .fold(a.clone(), |acc, (k, &e)| acc * &powers[k][e as usize])
            })
            .sum()
    }

    /// Floating-point value, summed with Neumaier compensation.
    pub fn eval_f64(&self, point: &[f64; RANK]) -> f64 {
        let mut sum = crate::oracle::CompensatedSum::default();
        for (m, a) in &self.terms {
            let c = a.to_f64().unwrap_or(f64::NAN);
            let v = m
                .0
                .iter()
                .zip(point)
                .fold(c, |acc, (&e, &x)| acc * x.powi(e as i32));
            sum.add(v);
        }
        sum.value()
    }

    pub fn max_abs_coefficient(&self) -> BigInt {
        self.terms.values().map(|a| a.abs()).max().unwrap_or_default()
    }
}

impl From<Monomial> for MultiPoly {
    fn from(m: Monomial) -> Self {
        MultiPoly::term(m, 1)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, a)| (*m, -a)).collect(),
        }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(mut self) -> MultiPoly {
        for a in self.terms.values_mut() {
            *a = -std::mem::take(a);
        }
        self
    }
}

impl AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &MultiPoly) {
        for (m, a) in &rhs.terms {
            self.add_term(*m, a.clone());
        }
    }
}

impl SubAssign<&MultiPoly> for MultiPoly {
    fn sub_assign(&mut self, rhs: &MultiPoly) {
        for (m, a) in &rhs.terms {
            self.add_term(*m, -a);
        }
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(mut self, rhs: MultiPoly) -> MultiPoly {
        self += &rhs;
        self
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(mut self, rhs: MultiPoly) -> MultiPoly {
        self -= &rhs;
        self
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, a) in &self.terms {
            out.add_scaled_shifted(rhs, a, m);
        }
        out
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (m, a)) in self.terms().enumerate() {
            if idx > 0 {
                f.write_str(" ")?;
                if a.is_positive() {
                    f.write_str("+")?;
                }
            }
            if *m == Monomial::ONE {
                write!(f, "{a}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for MultiPoly {
    type Err = Error;

    /// Parses the canonical text form. Terms may appear in any order and a
    /// unit coefficient may be left out (`z7^2 -z6`).
    fn from_str(s: &str) -> Result<MultiPoly> {
        let bad = |why: String| Error::BadPolynomial {
            input: s.to_string(),
            reason: why,
        };
        let mut p = MultiPoly::zero();
        let mut pending_sign: Option<bool> = None;
        let tokens: Vec<&str> = s.split_whitespace().collect();
        if tokens.is_empty() {
            return Err(bad("empty input".into()));
        }
        for tok in tokens {
            if tok == "+" || tok == "-" {
                if pending_sign.is_some() {
                    return Err(bad("doubled sign".into()));
                }
                pending_sign = Some(tok == "-");
                continue;
            }
            let (neg, body) = match tok.as_bytes()[0] {
                b'-' => (true, &tok[1..]),
                b'+' => (false, &tok[1..]),
                _ => (false, tok),
            };
            let neg = neg ^ pending_sign.take().unwrap_or(false);
            if body.is_empty() {
                return Err(bad(format!("dangling sign in {tok:?}")));
            }
            let (coeff, mono) = match body.split_once('*') {
                Some((head, rest)) if head.chars().all(|c| c.is_ascii_digit()) => {
                    (head.parse::<BigInt>().map_err(|e| bad(e.to_string()))?, rest)
                }
                _ if body.chars().all(|c| c.is_ascii_digit()) => {
                    (body.parse::<BigInt>().map_err(|e| bad(e.to_string()))?, "1")
                }
                _ => (BigInt::one(), body),
            };
            let m: Monomial = mono.parse()?;
            p.add_term(m, if neg { -coeff } else { coeff });
        }
        if pending_sign.is_some() {
            return Err(bad("trailing sign".into()));
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    const CHI_0000002: &str = "1*z7^2 -1*z6 -1*z1 -1";

    #[test]
    fn addition() {
        assert_eq!(&p("z7^2 - z6") + &p("z6 - z1"), p("z7^2 - z1"));
        assert_eq!(&p(CHI_0000002) + &MultiPoly::zero(), p(CHI_0000002));
        assert_eq!(&p(CHI_0000002) + &p("z6 + z1 + 1"), p("z7^2"));
        let q = p(CHI_0000002);
        assert!((&q + &(-&q)).is_zero());
    }

    #[test]
    fn multiplication() {
        let z7 = MultiPoly::var(7);
        assert_eq!(&z7 * &z7, p("z7^2"));
        assert_eq!(&p(CHI_0000002) * &MultiPoly::one(), p(CHI_0000002));
        let cube = &(&z7 * &z7) * &z7;
        assert_eq!(cube.coefficient_of(&"z7^3".parse().unwrap()), BigInt::one());
    }

    #[test]
    fn derivatives() {
        let q = p("z7^2");
        assert_eq!(q.partial(7), p("2*z7"));
        assert!(q.partial(1).is_zero());
        assert_eq!(q.partial(7).partial(7), p("2"));
    }

    #[test]
    fn evaluation() {
        let dims = [133, 912, 8645, 365750, 27664, 1539, 56].map(BigInt::from);
        assert_eq!(p(CHI_0000002).eval_integer(&dims), BigInt::from(1463));
        let origin = [0; RANK].map(BigInt::from);
        assert_eq!(p("3*z1*z2 -5*z7 +4").eval_integer(&origin), BigInt::from(4));
        assert_eq!(MultiPoly::var(1).eval_integer(&dims), BigInt::from(133));
    }

    #[test]
    fn coefficients() {
        assert_eq!(p(CHI_0000002).coefficient_of(&Monomial::var(6)), BigInt::from(-1));
        assert!(p(CHI_0000002).coefficient_of(&Monomial::var(3)).is_zero());
        let chi = p("z1*z2 - z5 - z1*z7");
        assert_eq!(chi.coefficient_of(&"z1*z7".parse().unwrap()), BigInt::from(-1));
    }

    #[test]
    fn canonical_text() {
        assert_eq!(p("-1 - z1 - z6 + z7^2").to_string(), CHI_0000002);
        assert_eq!(MultiPoly::zero().to_string(), "0");
        assert_eq!(p("0").to_string(), "0");
        assert_eq!(p("2*z1*z3 -z1^3").to_string(), "-1*z1^3 +2*z1*z3");
        assert!("1*z8".parse::<MultiPoly>().is_err());
        assert!("".parse::<MultiPoly>().is_err());
        assert!("1*z1 -".parse::<MultiPoly>().is_err());
    }

    #[test]
    fn leading_term_is_highest_degree() {
        let q = p(CHI_0000002);
        assert_eq!(q.leading().unwrap().0, &"z7^2".parse::<Monomial>().unwrap());
        assert!(Monomial::var(6) > Monomial::var(1));
        assert!(Monomial::var(1) > Monomial::ONE);
    }

    fn arb_poly() -> impl Strategy<Value = MultiPoly> {
        prop::collection::vec((prop::array::uniform7(0u32..3), -5i64..=5), 0..6).prop_map(|ts| {
            let mut q = MultiPoly::zero();
            for (e, c) in ts {
                q.add_term(Monomial(e), BigInt::from(c));
            }
            q
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn leibniz(a in arb_poly(), b in arb_poly(), i in 1usize..=7) {
            let lhs = (&a * &b).partial(i);
            let rhs = &(&a.partial(i) * &b) + &(&a * &b.partial(i));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn text_round_trip(a in arb_poly()) {
            let back: MultiPoly = a.to_string().parse().unwrap();
            prop_assert_eq!(back, a);
        }
    }
}
