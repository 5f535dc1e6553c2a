//! Line-oriented corpus files.
//!
//! Four kinds of data line are recognised, and `#` starts a comment:
//!
//! ```text
//! cg 7 7 = 0000002:1 1000000:1 0000010:1 0000000:1
//! chi 0000002 = 1*z7^2 -1*z6 -1*z1 -1
//! mono z7^3 = 0000003:1 0000011:2 0000100:1 1000001:3 0100000:2 0000001:4
//! a 77 = 3*z7^2 -4*z6 -24*z1 -60
//! ```
//!
//! Every `cg` and `mono` line is checked on load against the dimension
//! identity, and every `chi` line against the Weyl dimension, so a
//! transcription slip surfaces as [`Error::FixtureCorruption`].

use std::collections::BTreeMap;
use std::path::Path;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::lie::{weyl_dim, Weight, RANK};
use crate::poly::{Monomial, MultiPoly};
use crate::tensor::CGSeries;

pub const QUADRATIC: &str = include_str!("../fixtures/quadratic.txt");
pub const APPENDIX_A: &str = include_str!("../fixtures/appendix_a.txt");
pub const APPENDIX_B: &str = include_str!("../fixtures/appendix_b.txt");
pub const PRINTED_A: &str = include_str!("../fixtures/printed_a.txt");
pub const ERRATA: &str = include_str!("../fixtures/errata.txt");

/// `(dim R_{λ_1}, …, dim R_{λ_7})`, the point at which a character
/// evaluates to its dimension.
pub fn dims_point() -> [BigInt; RANK] {
    std::array::from_fn(|i| BigInt::from(weyl_dim(&Weight::fundamental(i + 1)).unwrap()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Entry {
    Cg { j: usize, k: usize, series: CGSeries },
    Chi { weight: Weight, poly: MultiPoly },
    Mono { monomial: Monomial, series: CGSeries },
    A { j: usize, k: usize, poly: MultiPoly },
}

/// Parsed contents of one fixture file.
#[derive(Clone, Debug, Default)]
pub struct Fixture {
    pub entries: Vec<Entry>,
    pub warnings: Vec<String>,
}

impl Fixture {
    pub fn parse(text: &str, source_name: &str) -> Result<Fixture> {
        let mut entries = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |reason: String| Error::Parse {
                source_name: source_name.to_string(),
                line: no + 1,
                reason,
            };
            let (lhs, rhs) = line
                .split_once('=')
                .ok_or_else(|| err("missing '='".into()))?;
            let mut head = lhs.split_whitespace();
            let kind = head.next().unwrap_or("");
            let args: Vec<&str> = head.collect();
            let entry = match (kind, args.as_slice()) {
                ("cg", [j, k]) => {
                    let j = parse_index(j).ok_or_else(|| err(format!("bad index {j:?}")))?;
                    let k = parse_index(k).ok_or_else(|| err(format!("bad index {k:?}")))?;
                    let series = parse_series(rhs).map_err(|e| err(e.to_string()))?;
                    Entry::Cg { j, k, series }
                }
                ("chi", [w]) => {
                    let weight: Weight = w.parse().map_err(|e: Error| err(e.to_string()))?;
                    let poly: MultiPoly = rhs.parse().map_err(|e: Error| err(e.to_string()))?;
                    Entry::Chi { weight, poly }
                }
                ("mono", [m]) => {
                    let monomial: Monomial = m.parse().map_err(|e: Error| err(e.to_string()))?;
                    let series = parse_series(rhs).map_err(|e| err(e.to_string()))?;
                    Entry::Mono { monomial, series }
                }
                ("a", [jk]) => {
                    let mut digits = jk.chars().map(|c| c.to_digit(10).map(|d| d as usize));
                    let (j, k) = match (digits.next(), digits.next(), digits.next()) {
                        (Some(Some(j)), Some(Some(k)), None)
                            if (1..=RANK).contains(&j) && (1..=RANK).contains(&k) =>
                        {
                            (j, k)
                        }
                        _ => return Err(err(format!("bad index pair {jk:?}"))),
                    };
                    let poly: MultiPoly = rhs.parse().map_err(|e: Error| err(e.to_string()))?;
                    Entry::A { j, k, poly }
                }
                _ => return Err(err(format!("unrecognised line kind {kind:?}"))),
            };
            entries.push(entry);
        }
        let mut warnings = Vec::new();
        if entries.is_empty() {
            warnings.push(format!("{source_name}: no entries"));
        }
        let fx = Fixture { entries, warnings };
        fx.validate()?;
        Ok(fx)
    }

    pub fn load(path: &Path) -> Result<Fixture> {
        let text = std::fs::read_to_string(path)?;
        Fixture::parse(&text, &path.display().to_string())
    }

    /// Dimension checks for every entry that carries one.
    fn validate(&self) -> Result<()> {
        let dims = dims_point();
        for e in &self.entries {
            match e {
                Entry::Cg { j, k, series } => {
                    let expected = &dims[j - 1] * &dims[k - 1];
                    check_series(format!("cg {j} {k}"), expected, series)?;
                }
                Entry::Mono { monomial, series } => {
                    let expected = MultiPoly::from(*monomial).eval_integer(&dims);
                    check_series(format!("mono {monomial}"), expected, series)?;
                }
                Entry::Chi { weight, poly } => {
                    let expected = BigInt::from(weyl_dim(weight)?);
                    let found = poly.eval_integer(&dims);
                    if found != expected {
                        return Err(Error::FixtureCorruption {
                            series: format!("chi {weight}"),
                            expected,
                            found,
                        });
                    }
                }
                Entry::A { .. } => {}
            }
        }
        Ok(())
    }

    pub fn characters(&self) -> BTreeMap<Weight, MultiPoly> {
        self.entries
            .iter()
            .filter_map(|e| match e {
                Entry::Chi { weight, poly } => Some((*weight, poly.clone())),
                _ => None,
            })
            .collect()
    }

    pub fn monomial_series(&self) -> Vec<(Monomial, CGSeries)> {
        self.entries
            .iter()
            .filter_map(|e| match e {
                Entry::Mono { monomial, series } => Some((*monomial, series.clone())),
                _ => None,
            })
            .collect()
    }

    pub fn pair_series(&self) -> BTreeMap<(usize, usize), CGSeries> {
        self.entries
            .iter()
            .filter_map(|e| match e {
                Entry::Cg { j, k, series } => Some(((*j.min(k), *j.max(k)), series.clone())),
                _ => None,
            })
            .collect()
    }

    pub fn a_table(&self) -> BTreeMap<(usize, usize), MultiPoly> {
        self.entries
            .iter()
            .filter_map(|e| match e {
                Entry::A { j, k, poly } => Some(((*j.min(k), *j.max(k)), poly.clone())),
                _ => None,
            })
            .collect()
    }
}

fn check_series(name: String, expected: BigInt, series: &CGSeries) -> Result<()> {
    let found = BigInt::from(series.dimension());
    if found != expected {
        return Err(Error::FixtureCorruption {
            series: name,
            expected,
            found,
        });
    }
    Ok(())
}

fn parse_index(s: &str) -> Option<usize> {
    s.parse().ok().filter(|i| (1..=RANK).contains(i))
}

/// `w:N w:N ...`; zero multiplicities are accepted and dropped.
pub fn parse_series(s: &str) -> Result<CGSeries> {
    let bad = |why: String| Error::Decomposition {
        product: s.trim().to_string(),
        reason: why,
    };
    let mut series = CGSeries::new();
    for tok in s.split_whitespace() {
        let (w, n) = tok
            .split_once(':')
            .ok_or_else(|| bad(format!("expected weight:mult, got {tok:?}")))?;
        let weight: Weight = w.parse()?;
        let mult: u64 = n
            .parse()
            .map_err(|_| bad(format!("bad multiplicity in {tok:?}")))?;
        series.add(weight, mult);
    }
    Ok(series)
}

/// The second-order corpus: the 28 pairwise products of fundamental
/// representations together with the characters they mention.
#[derive(Clone, Debug)]
pub struct QuadraticCorpus {
    pub series: BTreeMap<(usize, usize), CGSeries>,
    /// Second-order characters, plus the implicit `z_i` and `1`.
    pub second_order_chars: BTreeMap<Weight, MultiPoly>,
}

impl QuadraticCorpus {
    pub fn from_fixture(fx: &Fixture) -> QuadraticCorpus {
        let mut chars = fx.characters();
        chars.insert(Weight::ZERO, MultiPoly::one());
        for i in 1..=RANK {
            chars.insert(Weight::fundamental(i), MultiPoly::var(i));
        }
        QuadraticCorpus {
            series: fx.pair_series(),
            second_order_chars: chars,
        }
    }

    pub fn embedded() -> QuadraticCorpus {
        let fx = Fixture::parse(QUADRATIC, "quadratic.txt").expect("embedded corpus is valid");
        QuadraticCorpus::from_fixture(&fx)
    }

    pub fn load(path: &Path) -> Result<QuadraticCorpus> {
        Ok(QuadraticCorpus::from_fixture(&Fixture::load(path)?))
    }

    /// The series for `R_{λ_j} ⊗ R_{λ_k}`, in either index order.
    pub fn get(&self, j: usize, k: usize) -> Option<&CGSeries> {
        self.series.get(&(j.min(k), j.max(k)))
    }
}

pub fn appendix_a() -> Fixture {
    Fixture::parse(APPENDIX_A, "appendix_a.txt").expect("embedded corpus is valid")
}

pub fn appendix_b() -> Fixture {
    Fixture::parse(APPENDIX_B, "appendix_b.txt").expect("embedded corpus is valid")
}

pub fn printed_a() -> Fixture {
    Fixture::parse(PRINTED_A, "printed_a.txt").expect("embedded table is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_corpora_load() {
        let q = QuadraticCorpus::embedded();
        assert_eq!(q.series.len(), 28);
        assert_eq!(q.second_order_chars.len(), 28 + 8);
        assert_eq!(appendix_a().characters().len(), 84);
        let b = appendix_b().monomial_series();
        assert_eq!(b.len(), 84);
        assert!(b.iter().any(|(m, _)| m.to_string() == "z4^3"));
        assert_eq!(printed_a().a_table().len(), 28);
    }

    #[test]
    fn every_leading_multiplicity_is_one() {
        let q = QuadraticCorpus::embedded();
        for ((j, k), s) in &q.series {
            let top = Weight::fundamental(*j) + Weight::fundamental(*k);
            assert_eq!(s.get(&top), 1, "cg {j} {k}");
        }
    }

    #[test]
    fn corpus_covers_its_low_level_weights() {
        // Higher constituents such as 1100001 are left to the operator build.
        let q = QuadraticCorpus::embedded();
        let mut higher = 0;
        for s in q.series.values() {
            for (w, _) in s.iter() {
                if w.level() <= 2 {
                    assert!(q.second_order_chars.contains_key(w), "missing {w}");
                } else {
                    higher += 1;
                }
            }
        }
        assert!(higher > 0);
    }

    #[test]
    fn empty_file_warns() {
        let fx = Fixture::parse("# nothing here\n\n", "empty.txt").unwrap();
        assert!(fx.entries.is_empty());
        assert_eq!(fx.warnings.len(), 1);
    }

    #[test]
    fn corrupted_series_is_rejected() {
        let err = Fixture::parse("cg 7 7 = 0000002:1 1000000:1 0000010:1\n", "t").unwrap_err();
        match err {
            Error::FixtureCorruption { series, expected, found } => {
                assert_eq!(series, "cg 7 7");
                assert_eq!(expected, BigInt::from(3136));
                assert_eq!(found, BigInt::from(3135));
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn malformed_line_reports_position() {
        let err = Fixture::parse("# header\nchi 0000002 1*z7\n", "bad.txt").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        let err = Fixture::parse("cg 9 1 = 0000000:1\n", "bad.txt").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn zero_multiplicity_is_dropped() {
        let s = parse_series("0000001:2 1000000:0").unwrap();
        assert_eq!(s.len(), 1);
    }
}
