//! Parties and subset bitmasks.
//!
//! Parties are 1-based.  A subset of parties is a bitmask with party `i`
//! at bit `i - 1`, so the masks of an `n`-party system run over
//! `1..=2^n - 1`.  This indexing is fixed — the text formats depend on it.

use crate::error::{Error, Result};

/// Hard cap on party count; keeps the dense 2^n - 1 subset tables small.
pub const MAX_PARTIES: u32 = 16;

/// The set of parties `1..=n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PartySet {
    n: u32,
}

impl PartySet {
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 || n > MAX_PARTIES {
            return Err(Error::PartyCount { n, max: MAX_PARTIES });
        }
        Ok(PartySet { n })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Mask of the full party set, `2^n - 1`.
    pub fn full_mask(&self) -> u64 {
        (1u64 << self.n) - 1
    }

    /// Number of nonempty subsets, `2^n - 1`.
    pub fn subset_count(&self) -> usize {
        self.full_mask() as usize
    }

    /// All nonempty subset masks in ascending order.
    pub fn subsets(&self) -> impl Iterator<Item = u64> {
        1..=self.full_mask()
    }

    pub fn check_party(&self, party: u32) -> Result<()> {
        if party == 0 || party > self.n {
            return Err(Error::PartyOutOfRange { party, n: self.n });
        }
        Ok(())
    }

    pub fn check_subset(&self, mask: u64) -> Result<()> {
        if mask == 0 {
            return Err(Error::EmptySubset);
        }
        if mask > self.full_mask() {
            return Err(Error::SubsetOutOfRange { mask, n: self.n, max: self.full_mask() });
        }
        Ok(())
    }

    /// Mask for an explicit party list.
    pub fn subset_of(&self, parties: &[u32]) -> Result<u64> {
        let mut mask = 0u64;
        for &p in parties {
            self.check_party(p)?;
            mask |= 1 << (p - 1);
        }
        if mask == 0 {
            return Err(Error::EmptySubset);
        }
        Ok(mask)
    }
}

/// Parties of a mask, ascending.
pub fn parties_of_mask(mask: u64) -> impl Iterator<Item = u32> {
    (0..64).filter(move |b| mask >> b & 1 == 1).map(|b| b + 1)
}

/// True when party `i` is in the subset.
pub fn mask_contains(mask: u64, party: u32) -> bool {
    party >= 1 && mask >> (party - 1) & 1 == 1
}

/// Renders a mask as `{1,3}`.
pub fn fmt_subset(mask: u64) -> String {
    let parts: Vec<String> = parties_of_mask(mask).map(|p| p.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

/// Parses `{1,3}` or `1,3` into a mask.  Range checking against a
/// [`PartySet`] is the caller's job.
pub fn parse_subset(s: &str) -> std::result::Result<u64, String> {
    let s = s.trim();
    let inner = match s.strip_prefix('{') {
        Some(rest) => rest
            .strip_suffix('}')
            .ok_or_else(|| format!("unclosed subset `{s}`"))?,
        None => s,
    };
    let mut mask = 0u64;
    for tok in inner.split(',') {
        let tok = tok.trim();
        if tok.is_empty() {
            return Err(format!("empty party index in `{s}`"));
        }
        let p: u32 = tok
            .parse()
            .map_err(|_| format!("bad party index `{tok}`"))?;
        if p == 0 {
            return Err("party indices are 1-based".into());
        }
        if p > 64 {
            return Err(format!("party index {p} too large"));
        }
        mask |= 1 << (p - 1);
    }
    if mask == 0 {
        return Err(format!("empty subset `{s}`"));
    }
    Ok(mask)
}
