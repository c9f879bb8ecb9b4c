//! Linear entropy inequalities and their cone certificates.
//!
//! An [`Inequality`] asserts `sum_m c_m * S_m >= 0` (or `= 0`) over the
//! subset entropies of an `n`-party system.  Because every representable
//! entropy vector is a nonnegative combination of the unit generator
//! graphs, a linear form holds on the whole cone exactly when it is
//! nonnegative on each generator — that evaluation is the
//! [`Certificate`].
//!
//! Built-in families: subadditivity, the two triangle forms, the two
//! strong-subadditivity forms, and monogamy of mutual information.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graph::{generator_graphs, generators, Generator};
use crate::linalg::{canonicalize_integer, Matrix};
use crate::lines::tokenized_lines;
use crate::party::{fmt_subset, parse_subset, PartySet};
use crate::rational::{parse_rational, Rational};
use crate::vector::{EntropyVector, FloatEntropyVector};

/// What the linear form asserts about its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    /// `>= 0`
    GeqZero,
    /// `= 0` (used by the span equalities)
    EqZero,
}

/// Linear form over subset entropies.  Only nonzero coefficients are
/// stored, keyed by subset mask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inequality {
    parties: PartySet,
    coeffs: BTreeMap<u64, Rational>,
    sense: Sense,
    name: Option<String>,
}

impl Inequality {
    pub fn new(
        parties: PartySet,
        coeffs: impl IntoIterator<Item = (u64, Rational)>,
        sense: Sense,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (mask, c) in coeffs {
            parties.check_subset(mask)?;
            if c.is_zero() {
                continue;
            }
            *map.entry(mask).or_insert_with(Rational::zero) += c;
            if map[&mask].is_zero() {
                map.remove(&mask);
            }
        }
        if map.is_empty() {
            return Err(Error::EmptyInequality);
        }
        Ok(Inequality { parties, coeffs: map, sense, name: None })
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn parties(&self) -> PartySet {
        self.parties
    }

    pub fn sense(&self) -> Sense {
        self.sense
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// Coefficient of a subset (zero when absent).
    pub fn coefficient(&self, mask: u64) -> Rational {
        self.coeffs.get(&mask).cloned().unwrap_or_else(Rational::zero)
    }

    /// Nonzero coefficients in ascending mask order.
    pub fn coefficients(&self) -> impl Iterator<Item = (u64, &Rational)> {
        self.coeffs.iter().map(|(&m, c)| (m, c))
    }

    /// Exact value of the form on an exact vector.
    pub fn evaluate(&self, v: &EntropyVector) -> Result<Rational> {
        if v.parties() != self.parties {
            return Err(Error::PartyCountMismatch {
                left: self.parties.n(),
                right: v.parties().n(),
            });
        }
        let mut total = Rational::zero();
        for (&mask, c) in &self.coeffs {
            total += c * v.get(mask)?;
        }
        Ok(total)
    }

    /// Float value of the form on an oracle vector.
    pub fn evaluate_f64(&self, v: &FloatEntropyVector) -> Result<f64> {
        if v.parties() != self.parties {
            return Err(Error::PartyCountMismatch {
                left: self.parties.n(),
                right: v.parties().n(),
            });
        }
        let mut total = 0.0;
        for (&mask, c) in &self.coeffs {
            total += c.to_f64().expect("coefficient fits f64") * v.get(mask)?;
        }
        Ok(total)
    }

    /// Human-readable form, e.g. `S{1} + S{2} - S{1,2}`.
    pub fn expression(&self) -> String {
        let mut out = String::new();
        for (idx, (&mask, c)) in self.coeffs.iter().enumerate() {
            let mag = c.abs();
            if idx == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            if !mag.is_one() {
                out.push_str(&format!("{mag}*"));
            }
            out.push_str(&format!("S{}", fmt_subset(mask)));
        }
        out
    }

    /// Parses one or more blocks of the inequality text format:
    ///
    /// ```text
    /// parties 3
    /// term 1 {1,3}
    /// term -1 {1}
    /// sense >=0
    /// ```
    pub fn parse_all(text: &str) -> Result<Vec<Inequality>> {
        let mut out = Vec::new();
        let mut parties: Option<PartySet> = None;
        let mut terms: Vec<(u64, Rational)> = Vec::new();
        let mut block_line = 1;
        for (line, tokens) in tokenized_lines(text) {
            match tokens[0] {
                "parties" => {
                    if parties.is_some() {
                        return Err(Error::parse(
                            block_line,
                            "block is missing its `sense` line",
                        ));
                    }
                    if tokens.len() != 2 {
                        return Err(Error::parse(line, "expected `parties <n>`"));
                    }
                    let n: u32 = tokens[1].parse().map_err(|_| {
                        Error::parse(line, format!("bad party count `{}`", tokens[1]))
                    })?;
                    parties = Some(PartySet::new(n).map_err(|e| Error::parse(line, e.to_string()))?);
                    block_line = line;
                }
                "term" => {
                    let Some(p) = parties else {
                        return Err(Error::parse(line, "`term` before `parties`"));
                    };
                    if tokens.len() != 3 {
                        return Err(Error::parse(line, "expected `term <coeff> {i,j,...}`"));
                    }
                    let c = parse_rational(tokens[1]).map_err(|e| Error::parse(line, e))?;
                    let mask = parse_subset(tokens[2]).map_err(|e| Error::parse(line, e))?;
                    p.check_subset(mask).map_err(|e| Error::parse(line, e.to_string()))?;
                    terms.push((mask, c));
                }
                "sense" => {
                    let Some(p) = parties.take() else {
                        return Err(Error::parse(line, "`sense` before `parties`"));
                    };
                    if tokens.len() != 2 {
                        return Err(Error::parse(line, "expected `sense >=0` or `sense =0`"));
                    }
                    let sense = match tokens[1] {
                        ">=0" => Sense::GeqZero,
                        "=0" => Sense::EqZero,
                        other => {
                            return Err(Error::parse(line, format!("bad sense `{other}`")));
                        }
                    };
                    let ineq = Inequality::new(p, terms.drain(..), sense)
                        .map_err(|e| Error::parse(block_line, e.to_string()))?;
                    out.push(ineq);
                }
                other => {
                    return Err(Error::parse(line, format!("unknown directive `{other}`")));
                }
            }
        }
        if parties.is_some() {
            return Err(Error::parse(block_line, "block is missing its `sense` line"));
        }
        if out.is_empty() {
            return Err(Error::parse(1, "no inequality blocks found"));
        }
        Ok(out)
    }
}

impl fmt::Display for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "parties {}", self.parties.n())?;
        for (&mask, c) in &self.coeffs {
            writeln!(f, "term {} {}", c, fmt_subset(mask))?;
        }
        match self.sense {
            Sense::GeqZero => writeln!(f, "sense >=0"),
            Sense::EqZero => writeln!(f, "sense =0"),
        }
    }
}

/// The built-in inequality families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuiltinFamily {
    /// `S_A + S_B - S_{AB} >= 0`
    Subadditivity,
    /// `S_{AB} >= |S_A - S_B|`, emitted as two linear forms.
    Triangle,
    /// `S_{AC} + S_{BC} - S_A - S_B >= 0`
    Ssa1,
    /// `S_{AB} + S_{BC} - S_B - S_{ABC} >= 0`
    Ssa2,
    /// `I(A:BC) - I(A:B) - I(A:C) >= 0`
    Mmi,
}

impl BuiltinFamily {
    pub const ALL: [BuiltinFamily; 5] = [
        BuiltinFamily::Subadditivity,
        BuiltinFamily::Triangle,
        BuiltinFamily::Ssa1,
        BuiltinFamily::Ssa2,
        BuiltinFamily::Mmi,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            BuiltinFamily::Subadditivity => "subadditivity",
            BuiltinFamily::Triangle => "triangle",
            BuiltinFamily::Ssa1 => "ssa1",
            BuiltinFamily::Ssa2 => "ssa2",
            BuiltinFamily::Mmi => "mmi",
        }
    }

    /// Number of role subsets the family takes.
    pub fn slots(&self) -> usize {
        match self {
            BuiltinFamily::Subadditivity | BuiltinFamily::Triangle => 2,
            _ => 3,
        }
    }

    /// Default roles: the first singletons, `A={1}, B={2}(, C={3})`.
    pub fn default_roles(&self, parties: PartySet) -> Result<Vec<u64>> {
        if (parties.n() as usize) < self.slots() {
            return Err(Error::RoleCount {
                family: self.name().into(),
                expected: self.slots(),
                got: parties.n() as usize,
            });
        }
        Ok((0..self.slots()).map(|i| 1u64 << i).collect())
    }
}

impl std::str::FromStr for BuiltinFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BuiltinFamily::ALL
            .iter()
            .copied()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Parse {
                line: 0,
                msg: format!(
                    "unknown family `{s}` (expected one of subadditivity, triangle, ssa1, ssa2, mmi)"
                ),
            })
    }
}

/// Parses a role spec like `1;2,3;4`: slots separated by `;`, each slot a
/// comma-separated party list (braces optional).
pub fn parse_roles(s: &str) -> std::result::Result<Vec<u64>, String> {
    s.split(';').map(|slot| parse_subset(slot.trim())).collect()
}

/// Builds a family instance for the given disjoint nonempty role subsets.
/// Most families yield one inequality; `triangle` yields its two forms.
pub fn builtin_family(
    family: BuiltinFamily,
    parties: PartySet,
    roles: &[u64],
) -> Result<Vec<Inequality>> {
    if roles.len() != family.slots() {
        return Err(Error::RoleCount {
            family: family.name().into(),
            expected: family.slots(),
            got: roles.len(),
        });
    }
    for (idx, &r) in roles.iter().enumerate() {
        parties.check_subset(r)?;
        for &other in &roles[idx + 1..] {
            if r & other != 0 {
                return Err(Error::OverlappingSubsets {
                    a: fmt_subset(r),
                    b: fmt_subset(other),
                });
            }
        }
    }
    let one = Rational::one;
    let neg = || -Rational::one();
    let make = |terms: Vec<(u64, Rational)>, name: String| -> Result<Inequality> {
        Ok(Inequality::new(parties, terms, Sense::GeqZero)?.named(name))
    };
    match family {
        BuiltinFamily::Subadditivity => {
            let (a, b) = (roles[0], roles[1]);
            Ok(vec![make(
                vec![(a, one()), (b, one()), (a | b, neg())],
                "subadditivity".into(),
            )?])
        }
        BuiltinFamily::Triangle => {
            let (a, b) = (roles[0], roles[1]);
            Ok(vec![
                make(vec![(a | b, one()), (a, neg()), (b, one())], "triangle_1".into())?,
                make(vec![(a | b, one()), (a, one()), (b, neg())], "triangle_2".into())?,
            ])
        }
        BuiltinFamily::Ssa1 => {
            let (a, b, c) = (roles[0], roles[1], roles[2]);
            Ok(vec![make(
                vec![(a | c, one()), (b | c, one()), (a, neg()), (b, neg())],
                "ssa1".into(),
            )?])
        }
        BuiltinFamily::Ssa2 => {
            let (a, b, c) = (roles[0], roles[1], roles[2]);
            Ok(vec![make(
                vec![(a | b, one()), (b | c, one()), (b, neg()), (a | b | c, neg())],
                "ssa2".into(),
            )?])
        }
        BuiltinFamily::Mmi => {
            let (a, b, c) = (roles[0], roles[1], roles[2]);
            Ok(vec![make(
                vec![
                    (a | b, one()),
                    (a | c, one()),
                    (b | c, one()),
                    (a, neg()),
                    (b, neg()),
                    (c, neg()),
                    (a | b | c, neg()),
                ],
                "mmi".into(),
            )?])
        }
    }
}

/// Evaluation of an inequality on every cone generator.
#[derive(Debug, Clone)]
pub struct Certificate {
    pub inequality: Inequality,
    /// One exact value per generator, canonical order.
    pub generator_values: Vec<Rational>,
    /// For `>= 0` forms: every entry nonnegative.  For `= 0` forms: every
    /// entry zero.  Either way this is equivalent to the form holding on
    /// the entire cone.
    pub valid: bool,
}

/// Evaluates the form on each generator graph.  Nonnegativity of all
/// entries proves the inequality for every EPR-pair graph, since those
/// are exactly the nonnegative combinations of the generators.
pub fn certify(ineq: &Inequality) -> Certificate {
    let values: Vec<Rational> = generator_graphs(ineq.parties())
        .iter()
        .map(|g| ineq.evaluate(&g.entropy_vector()).expect("party counts match"))
        .collect();
    let valid = match ineq.sense() {
        Sense::GeqZero => values.iter().all(|v| !v.is_negative()),
        Sense::EqZero => values.iter().all(|v| v.is_zero()),
    };
    Certificate { inequality: ineq.clone(), generator_values: values, valid }
}

/// Basis of the linear equalities satisfied by every representable
/// entropy vector: the kernel of the generator matrix, canonicalized to
/// coprime integer coefficients with the first nonzero (lowest mask)
/// positive.  `2^n - 1 - C(n,2) - n` equalities.
pub fn span_constraints(parties: PartySet) -> Vec<Inequality> {
    let gens = generator_graphs(parties);
    let masks: Vec<u64> = parties.subsets().collect();
    // rows = generators, cols = subsets; kernel vectors are functionals
    // vanishing on every generator.
    let matrix = Matrix::from_fn(gens.len(), masks.len(), |r, c| {
        gens[r].subset_entropy(masks[c]).expect("mask in range")
    });
    matrix
        .kernel_basis()
        .into_iter()
        .enumerate()
        .map(|(idx, vec)| {
            let canon = canonicalize_integer(&vec);
            let terms = masks.iter().copied().zip(canon);
            Inequality::new(parties, terms, Sense::EqZero)
                .expect("kernel vectors are nonzero")
                .named(format!("span_{}", idx + 1))
        })
        .collect()
}
