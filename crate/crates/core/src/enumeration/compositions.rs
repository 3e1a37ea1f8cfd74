// SPDX-License-Identifier: Apache-2.0

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

/// Upper bound on part sizes (the x-run cap `v`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RunCap {
    Finite(usize),
    Infinite,
}

impl RunCap {
    pub fn admits(self, part: usize) -> bool {
        match self {
            RunCap::Finite(v) => part <= v,
            RunCap::Infinite => true,
        }
    }

    /// The largest admissible part not exceeding `m`.
    pub fn clamp(self, m: usize) -> usize {
        match self {
            RunCap::Finite(v) => v.min(m),
            RunCap::Infinite => m,
        }
    }
}

impl fmt::Display for RunCap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunCap::Finite(v) => write!(f, "{v}"),
            RunCap::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for RunCap {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            RunCap::Finite(v) => s.serialize_u64(*v as u64),
            RunCap::Infinite => s.serialize_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("run cap must be a positive integer or \"inf\", got {0:?}")]
pub struct RunCapError(String);

impl FromStr for RunCap {
    type Err = RunCapError;
    fn from_str(s: &str) -> Result<Self, RunCapError> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(RunCap::Infinite),
            t => match t.parse::<usize>() {
                Ok(v) if v >= 1 => Ok(RunCap::Finite(v)),
                _ => Err(RunCapError(s.to_string())),
            },
        }
    }
}

/// A composition of an integer into positive parts, each at most `cap`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    parts: Vec<usize>,
    cap: RunCap,
}

impl Composition {
    /// `None` if `parts` is empty or violates the cap.
    pub fn new(parts: Vec<usize>, cap: RunCap) -> Option<Self> {
        if parts.is_empty() || parts.iter().any(|&p| p == 0 || !cap.admits(p)) {
            return None;
        }
        Some(Composition { parts, cap })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn cap(&self) -> RunCap {
        self.cap
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

/// All compositions of `m` into exactly `k` parts bounded by `cap`, in
/// lexicographic order.
pub fn compositions(m: usize, k: usize, cap: RunCap) -> Vec<Composition> {
    let mut out = Vec::new();
    if k == 0 {
        return out;
    }
    let mut parts = Vec::with_capacity(k);
    fill(m, k, cap, &mut parts, &mut out);
    out
}

fn fill(rest: usize, k: usize, cap: RunCap, parts: &mut Vec<usize>, out: &mut Vec<Composition>) {
    if k == 0 {
        if rest == 0 {
            out.push(Composition { parts: parts.clone(), cap });
        }
        return;
    }
    // each remaining part is at least 1
    if rest < k {
        return;
    }
    for p in 1..=cap.clamp(rest - (k - 1)) {
        parts.push(p);
        fill(rest - p, k - 1, cap, parts, out);
        parts.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn listed(m: usize, k: usize, cap: RunCap) -> Vec<Vec<usize>> {
        compositions(m, k, cap).into_iter().map(|c| c.parts).collect()
    }

    #[test]
    fn examples() {
        assert_eq!(listed(3, 2, RunCap::Infinite), vec![vec![1, 2], vec![2, 1]]);
        for k in 1..6 {
            assert_eq!(listed(k, k, RunCap::Finite(1)), vec![vec![1; k]]);
        }
        assert_eq!(listed(4, 2, RunCap::Finite(2)), vec![vec![2, 2]]);
        assert!(listed(1, 2, RunCap::Infinite).is_empty());
        assert!(listed(0, 0, RunCap::Infinite).is_empty());
    }

    #[test]
    fn run_cap_parsing() {
        assert_eq!("inf".parse::<RunCap>().unwrap(), RunCap::Infinite);
        assert_eq!("3".parse::<RunCap>().unwrap(), RunCap::Finite(3));
        assert!("0".parse::<RunCap>().is_err());
        assert!("x".parse::<RunCap>().is_err());
    }
}
