//! Entropy vectors: one value per nonempty party subset.
//!
//! Model-derived vectors are exact rationals; oracle-derived vectors are
//! floats carrying the oracle tolerance.  Both use the same text format,
//! one line per subset in ascending bitmask order:
//!
//! ```text
//! {1}: 1/2
//! {2}: 1/2
//! {1,2}: 0
//! ```

use std::fmt;

use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::lines::tokenized_lines;
use crate::party::{fmt_subset, parse_subset, PartySet};
use crate::rational::{fmt_f64_sig12, parse_rational, Rational};

/// Exact entropy vector over `2^n - 1` subsets, values in bits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntropyVector {
    parties: PartySet,
    values: Vec<Rational>,
}

impl EntropyVector {
    /// `values[mask - 1]` is the entropy of `mask`.  Every value must be
    /// nonnegative and all `2^n - 1` must be present.
    pub fn new(parties: PartySet, values: Vec<Rational>) -> Result<Self> {
        if values.len() != parties.subset_count() {
            return Err(Error::Parse {
                line: 0,
                msg: format!(
                    "expected {} subset values, got {}",
                    parties.subset_count(),
                    values.len()
                ),
            });
        }
        for (idx, v) in values.iter().enumerate() {
            if v.is_negative() {
                return Err(Error::NegativeValue {
                    what: format!("entropy of {}", fmt_subset(idx as u64 + 1)),
                    value: v.to_string(),
                });
            }
        }
        Ok(EntropyVector { parties, values })
    }

    pub fn parties(&self) -> PartySet {
        self.parties
    }

    pub fn get(&self, mask: u64) -> Result<&Rational> {
        self.parties.check_subset(mask)?;
        Ok(&self.values[mask as usize - 1])
    }

    /// All `(mask, value)` pairs in ascending mask order.
    pub fn iter(&self) -> impl Iterator<Item = (u64, &Rational)> {
        self.values.iter().enumerate().map(|(i, v)| (i as u64 + 1, v))
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// `I(A:B) = S_A + S_B - S_{A u B}` for disjoint nonempty subsets.
    pub fn mutual_information(&self, a: u64, b: u64) -> Result<Rational> {
        self.parties.check_subset(a)?;
        self.parties.check_subset(b)?;
        if a & b != 0 {
            return Err(Error::OverlappingSubsets { a: fmt_subset(a), b: fmt_subset(b) });
        }
        Ok(self.get(a)? + self.get(b)? - self.get(a | b)?)
    }

    /// Float view of the same vector (exact to f64 rounding).
    pub fn to_float(&self, tolerance: f64) -> FloatEntropyVector {
        let values = self
            .values
            .iter()
            .map(|v| v.to_f64().expect("rational fits f64"))
            .collect();
        FloatEntropyVector { parties: self.parties, values, tolerance }
    }

    pub fn parse(text: &str) -> Result<Self> {
        match parse_vector_file(text)? {
            VectorFile::Exact(v) => Ok(v),
            VectorFile::Float(_) => Err(Error::Parse {
                line: 0,
                msg: "vector has float values; parse as FloatEntropyVector".into(),
            }),
        }
    }
}

impl fmt::Display for EntropyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (mask, v) in self.iter() {
            writeln!(f, "{}: {}", fmt_subset(mask), v)?;
        }
        Ok(())
    }
}

/// Float-valued entropy vector produced by the quantum oracle.
#[derive(Debug, Clone, PartialEq)]
pub struct FloatEntropyVector {
    parties: PartySet,
    values: Vec<f64>,
    tolerance: f64,
}

impl FloatEntropyVector {
    pub fn new(parties: PartySet, values: Vec<f64>, tolerance: f64) -> Result<Self> {
        if values.len() != parties.subset_count() {
            return Err(Error::Parse {
                line: 0,
                msg: format!(
                    "expected {} subset values, got {}",
                    parties.subset_count(),
                    values.len()
                ),
            });
        }
        Ok(FloatEntropyVector { parties, values, tolerance })
    }

    pub fn parties(&self) -> PartySet {
        self.parties
    }

    /// Tolerance (in bits) the producer attaches to each component.
    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn get(&self, mask: u64) -> Result<f64> {
        self.parties.check_subset(mask)?;
        Ok(self.values[mask as usize - 1])
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, f64)> + '_ {
        self.values.iter().enumerate().map(|(i, &v)| (i as u64 + 1, v))
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn mutual_information(&self, a: u64, b: u64) -> Result<f64> {
        self.parties.check_subset(a)?;
        self.parties.check_subset(b)?;
        if a & b != 0 {
            return Err(Error::OverlappingSubsets { a: fmt_subset(a), b: fmt_subset(b) });
        }
        Ok(self.get(a)? + self.get(b)? - self.get(a | b)?)
    }
}

impl fmt::Display for FloatEntropyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (mask, v) in self.iter() {
            writeln!(f, "{}: {}", fmt_subset(mask), fmt_f64_sig12(v))?;
        }
        Ok(())
    }
}

/// A parsed vector file: exact when every value is an integer or `p/q`,
/// float as soon as any value uses decimal or exponent notation.
#[derive(Debug, Clone)]
pub enum VectorFile {
    Exact(EntropyVector),
    Float(FloatEntropyVector),
}

/// Default tolerance attached to float vectors read from files.
pub const DEFAULT_FILE_TOLERANCE: f64 = 1e-9;

enum RawValue {
    Exact(Rational),
    Float(f64),
}

/// Parses the vector text format.  Requires every nonempty subset exactly
/// once; the party count is the largest party mentioned.
pub fn parse_vector_file(text: &str) -> Result<VectorFile> {
    let mut entries: Vec<(usize, u64, RawValue)> = Vec::new();
    for (line, tokens) in tokenized_lines(text) {
        let joined = tokens.join(" ");
        let (subset_str, value_str) = joined
            .split_once(':')
            .ok_or_else(|| Error::parse(line, "expected `{i,j,...}: <value>`"))?;
        let mask = parse_subset(subset_str).map_err(|e| Error::parse(line, e))?;
        let value_str = value_str.trim();
        let value = match parse_rational(value_str) {
            Ok(r) => RawValue::Exact(r),
            Err(_) => {
                let f: f64 = value_str.parse().map_err(|_| {
                    Error::parse(line, format!("bad value `{value_str}`"))
                })?;
                RawValue::Float(f)
            }
        };
        entries.push((line, mask, value));
    }
    if entries.is_empty() {
        return Err(Error::parse(1, "empty vector file"));
    }
    let max_party = entries
        .iter()
        .map(|(_, m, _)| 64 - m.leading_zeros() as u32)
        .max()
        .unwrap();
    let parties = PartySet::new(max_party)?;
    let count = parties.subset_count();
    let mut seen: Vec<Option<(usize, RawValue)>> = (0..count).map(|_| None).collect();
    for (line, mask, value) in entries {
        let slot = &mut seen[mask as usize - 1];
        if slot.is_some() {
            return Err(Error::parse(line, format!("duplicate subset {}", fmt_subset(mask))));
        }
        *slot = Some((line, value));
    }
    for (idx, slot) in seen.iter().enumerate() {
        if slot.is_none() {
            return Err(Error::Parse {
                line: 0,
                msg: format!("missing subset {}", fmt_subset(idx as u64 + 1)),
            });
        }
    }
    let any_float = seen
        .iter()
        .any(|s| matches!(s, Some((_, RawValue::Float(_)))));
    if any_float {
        let values = seen
            .into_iter()
            .map(|s| match s.unwrap().1 {
                RawValue::Exact(r) => r.to_f64().expect("rational fits f64"),
                RawValue::Float(f) => f,
            })
            .collect();
        Ok(VectorFile::Float(FloatEntropyVector::new(
            parties,
            values,
            DEFAULT_FILE_TOLERANCE,
        )?))
    } else {
        let values: Vec<Rational> = seen
            .into_iter()
            .map(|s| match s.unwrap().1 {
                RawValue::Exact(r) => r,
                RawValue::Float(_) => unreachable!(),
            })
            .collect();
        Ok(VectorFile::Exact(EntropyVector::new(parties, values)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::EprGraph;
    use crate::rational::{rat, rat_int};

    fn pair_graph(w: i64) -> EprGraph {
        let parties = PartySet::new(2).unwrap();
        let mut g = EprGraph::new(parties);
        g.set_pair(1, 2, rat_int(w)).unwrap();
        g
    }

    #[test]
    fn mutual_information_counts_shared_pairs() {
        let v = pair_graph(3).entropy_vector();
        assert_eq!(v.mutual_information(0b01, 0b10).unwrap(), rat_int(6));
    }

    #[test]
    fn mutual_information_zero_without_shared_pairs() {
        let parties = PartySet::new(2).unwrap();
        let mut g = EprGraph::new(parties);
        g.set_env(1, rat_int(1)).unwrap();
        g.set_env(2, rat_int(1)).unwrap();
        let v = g.entropy_vector();
        assert_eq!(v.mutual_information(0b01, 0b10).unwrap(), rat_int(0));
    }

    #[test]
    fn mutual_information_rejects_bad_masks() {
        let v = pair_graph(1).entropy_vector();
        assert!(v.mutual_information(0b01, 0b01).is_err());
        assert!(v.mutual_information(0b01, 0).is_err());
        assert!(v.mutual_information(0b01, 0b100).is_err());
    }

    #[test]
    fn rejects_negative_values() {
        let parties = PartySet::new(1).unwrap();
        assert!(EntropyVector::new(parties, vec![rat_int(-1)]).is_err());
    }

    #[test]
    fn exact_text_round_trip() {
        let parties = PartySet::new(2).unwrap();
        let v = EntropyVector::new(parties, vec![rat(1, 2), rat(1, 2), rat_int(0)]).unwrap();
        let text = v.to_string();
        assert_eq!(text, "{1}: 1/2\n{2}: 1/2\n{1,2}: 0\n");
        match parse_vector_file(&text).unwrap() {
            VectorFile::Exact(parsed) => assert_eq!(parsed, v),
            VectorFile::Float(_) => panic!("expected exact"),
        }
    }

    #[test]
    fn float_detection_and_round_trip() {
        let text = "{1}: 0.9999999\n{2}: 1\n{1,2}: 0\n";
        match parse_vector_file(text).unwrap() {
            VectorFile::Float(v) => {
                assert!((v.get(0b01).unwrap() - 0.9999999).abs() < 1e-12);
                assert_eq!(v.get(0b10).unwrap(), 1.0);
            }
            VectorFile::Exact(_) => panic!("expected float"),
        }
    }

    #[test]
    fn missing_and_duplicate_subsets_are_errors() {
        assert!(parse_vector_file("{1}: 1\n{2}: 1\n").is_err());
        assert!(parse_vector_file("{1}: 1\n{1}: 2\n{1,2}: 0\n{2}: 1\n").is_err());
    }
}
