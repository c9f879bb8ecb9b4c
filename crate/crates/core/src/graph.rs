//! Weighted EPR-pair graphs and their cut entropies.
//!
//! An [`EprGraph`] over `n` parties carries a nonnegative rational weight
//! `n_ij` for each unordered party pair and `N_i` for each
//! party-environment link.  Each unit of pair weight contributes one bit
//! of entropy to every subset whose cut separates the pair's halves, and
//! each unit of environment weight contributes one bit to every subset
//! containing its party, so
//!
//! ```text
//! S_A = sum over i in A, j not in A of n_ij  +  sum over i in A of N_i
//! ```
//!
//! The unit graphs (one pair weight set to 1, or one environment weight
//! set to 1) generate every representable entropy vector by nonnegative
//! combination; [`generator_graphs`] lists them in the canonical order
//! used throughout: all pairs `{i,j}` lexicographically, then
//! environments ascending.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lines::tokenized_lines;
use crate::party::{mask_contains, PartySet};
use crate::rational::{parse_rational, rat_int, Rational};
use crate::vector::EntropyVector;

/// Weighted EPR-pair graph.  Absent weights are zero; stored weights are
/// strictly positive, which makes equality structural.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EprGraph {
    parties: PartySet,
    pair_weights: BTreeMap<(u32, u32), Rational>,
    env_weights: BTreeMap<u32, Rational>,
}

impl EprGraph {
    /// The empty graph: every entropy is zero.
    pub fn new(parties: PartySet) -> Self {
        EprGraph { parties, pair_weights: BTreeMap::new(), env_weights: BTreeMap::new() }
    }

    pub fn parties(&self) -> PartySet {
        self.parties
    }

    /// Sets the weight `n_ij`.  Order of `i`, `j` is irrelevant; a zero
    /// weight removes the entry.
    pub fn set_pair(&mut self, i: u32, j: u32, weight: Rational) -> Result<()> {
        self.parties.check_party(i)?;
        self.parties.check_party(j)?;
        if i == j {
            return Err(Error::OverlappingSubsets {
                a: format!("{{{i}}}"),
                b: format!("{{{j}}}"),
            });
        }
        if weight.is_negative() {
            return Err(Error::NegativeValue {
                what: format!("pair weight n_{i}{j}"),
                value: weight.to_string(),
            });
        }
        let key = (i.min(j), i.max(j));
        if weight.is_zero() {
            self.pair_weights.remove(&key);
        } else {
            self.pair_weights.insert(key, weight);
        }
        Ok(())
    }

    /// Sets the environment weight `N_i`.  A zero weight removes the entry.
    pub fn set_env(&mut self, i: u32, weight: Rational) -> Result<()> {
        self.parties.check_party(i)?;
        if weight.is_negative() {
            return Err(Error::NegativeValue {
                what: format!("environment weight N_{i}"),
                value: weight.to_string(),
            });
        }
        if weight.is_zero() {
            self.env_weights.remove(&i);
        } else {
            self.env_weights.insert(i, weight);
        }
        Ok(())
    }

    /// The weight `n_ij` (zero when absent).
    pub fn pair_weight(&self, i: u32, j: u32) -> Rational {
        let key = (i.min(j), i.max(j));
        self.pair_weights.get(&key).cloned().unwrap_or_else(Rational::zero)
    }

    /// The weight `N_i` (zero when absent).
    pub fn env_weight(&self, i: u32) -> Rational {
        self.env_weights.get(&i).cloned().unwrap_or_else(Rational::zero)
    }

    /// Stored (nonzero) pair weights, keys `(i, j)` with `i < j`, ascending.
    pub fn pair_weights(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.pair_weights.iter()
    }

    /// Stored (nonzero) environment weights, ascending party.
    pub fn env_weights(&self) -> impl Iterator<Item = (&u32, &Rational)> {
        self.env_weights.iter()
    }

    /// The cut entropy of a nonempty party subset, in bits.
    pub fn subset_entropy(&self, subset: u64) -> Result<Rational> {
        self.parties.check_subset(subset)?;
        let mut total = Rational::zero();
        for (&(i, j), w) in &self.pair_weights {
            if mask_contains(subset, i) != mask_contains(subset, j) {
                total += w;
            }
        }
        for (&i, w) in &self.env_weights {
            if mask_contains(subset, i) {
                total += w;
            }
        }
        Ok(total)
    }

    /// The full entropy vector: one exact value per nonempty subset.
    pub fn entropy_vector(&self) -> EntropyVector {
        let values = self
            .parties
            .subsets()
            .map(|m| self.subset_entropy(m).expect("mask in range"))
            .collect();
        EntropyVector::new(self.parties, values).expect("cut entropies are nonnegative")
    }

    /// Weight-wise sum of two graphs over the same parties.
    pub fn combined(&self, other: &EprGraph) -> Result<EprGraph> {
        if self.parties != other.parties {
            return Err(Error::PartyCountMismatch {
                left: self.parties.n(),
                right: other.parties.n(),
            });
        }
        let mut out = self.clone();
        for (&(i, j), w) in &other.pair_weights {
            out.set_pair(i, j, out.pair_weight(i, j) + w)?;
        }
        for (&i, w) in &other.env_weights {
            out.set_env(i, out.env_weight(i) + w)?;
        }
        Ok(out)
    }

    /// The graph with every weight multiplied by `factor >= 0`.
    pub fn scaled(&self, factor: &Rational) -> Result<EprGraph> {
        if factor.is_negative() {
            return Err(Error::NegativeValue {
                what: "scale factor".into(),
                value: factor.to_string(),
            });
        }
        let mut out = EprGraph::new(self.parties);
        for (&(i, j), w) in &self.pair_weights {
            out.set_pair(i, j, w * factor)?;
        }
        for (&i, w) in &self.env_weights {
            out.set_env(i, w * factor)?;
        }
        Ok(out)
    }

    /// Parses the graph text format:
    ///
    /// ```text
    /// parties 3
    /// pair 1 2 1/2    # n_12
    /// env 3 5         # N_3
    /// ```
    pub fn parse(text: &str) -> Result<EprGraph> {
        let lines = tokenized_lines(text);
        let mut iter = lines.into_iter();
        let (first_line, first) = iter
            .next()
            .ok_or_else(|| Error::parse(1, "empty graph file".to_string()))?;
        if first[0] != "parties" || first.len() != 2 {
            return Err(Error::parse(first_line, "expected `parties <n>` first"));
        }
        let n: u32 = first[1]
            .parse()
            .map_err(|_| Error::parse(first_line, format!("bad party count `{}`", first[1])))?;
        let parties = PartySet::new(n).map_err(|e| Error::parse(first_line, e.to_string()))?;
        let mut graph = EprGraph::new(parties);
        for (line, tokens) in iter {
            match tokens[0] {
                "pair" => {
                    if tokens.len() != 4 {
                        return Err(Error::parse(line, "expected `pair <i> <j> <w>`"));
                    }
                    let i = parse_party(tokens[1], line)?;
                    let j = parse_party(tokens[2], line)?;
                    let w = parse_rational(tokens[3]).map_err(|e| Error::parse(line, e))?;
                    let key = (i.min(j), i.max(j));
                    if graph.pair_weights.contains_key(&key) {
                        return Err(Error::parse(line, format!("duplicate pair {i} {j}")));
                    }
                    graph.set_pair(i, j, w).map_err(|e| Error::parse(line, e.to_string()))?;
                }
                "env" => {
                    if tokens.len() != 3 {
                        return Err(Error::parse(line, "expected `env <i> <w>`"));
                    }
                    let i = parse_party(tokens[1], line)?;
                    let w = parse_rational(tokens[2]).map_err(|e| Error::parse(line, e))?;
                    if graph.env_weights.contains_key(&i) {
                        return Err(Error::parse(line, format!("duplicate env {i}")));
                    }
                    graph.set_env(i, w).map_err(|e| Error::parse(line, e.to_string()))?;
                }
                other => {
                    return Err(Error::parse(line, format!("unknown directive `{other}`")));
                }
            }
        }
        Ok(graph)
    }
}

fn parse_party(tok: &str, line: usize) -> Result<u32> {
    tok.parse()
        .map_err(|_| Error::parse(line, format!("bad party index `{tok}`")))
}

impl fmt::Display for EprGraph {
    /// Canonical text form: `parties`, then pairs lexicographically, then
    /// environments ascending; zero weights are omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "parties {}", self.parties.n())?;
        for (&(i, j), w) in &self.pair_weights {
            writeln!(f, "pair {i} {j} {w}")?;
        }
        for (&i, w) in &self.env_weights {
            writeln!(f, "env {i} {w}")?;
        }
        Ok(())
    }
}

/// A unit graph: one pair weight or one environment weight equal to 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    /// `n_ij = 1`, everything else zero.
    Pair(u32, u32),
    /// `N_i = 1`, everything else zero.
    Env(u32),
}

impl Generator {
    /// The unit graph this generator denotes.
    pub fn graph(&self, parties: PartySet) -> EprGraph {
        let mut g = EprGraph::new(parties);
        match *self {
            Generator::Pair(i, j) => g.set_pair(i, j, rat_int(1)).expect("valid generator"),
            Generator::Env(i) => g.set_env(i, rat_int(1)).expect("valid generator"),
        }
        g
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Generator::Pair(i, j) => write!(f, "e_{i}_{j}"),
            Generator::Env(i) => write!(f, "f_{i}"),
        }
    }
}

/// The cone generators in canonical order: pairs `{i,j}` lexicographic,
/// then environments ascending.  `C(n,2) + n` entries.
pub fn generators(parties: PartySet) -> Vec<Generator> {
    let n = parties.n();
    let mut out = Vec::with_capacity((n * (n - 1) / 2 + n) as usize);
    for i in 1..=n {
        for j in (i + 1)..=n {
            out.push(Generator::Pair(i, j));
        }
    }
    for i in 1..=n {
        out.push(Generator::Env(i));
    }
    out
}

/// The unit graphs for [`generators`], in the same order.
pub fn generator_graphs(parties: PartySet) -> Vec<EprGraph> {
    generators(parties).iter().map(|g| g.graph(parties)).collect()
}
