//! Truncated Magnus expansions: decision procedures for nilpotent quotients,
//! Johnson-filtration depth, and Johnson homomorphisms in tensor coordinates.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::words::{Endomorphism, Word};

/// Element of the free associative ring Z<X_1..X_n> truncated below degree
/// `cap`: monomials are generator-index sequences of length < cap.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    rank: u16,
    cap: usize,
    terms: BTreeMap<Vec<u16>, i64>,
}

impl TruncatedSeries {
    pub fn zero(rank: u16, cap: usize) -> Self {
        TruncatedSeries { rank, cap, terms: BTreeMap::new() }
    }

    pub fn constant(rank: u16, cap: usize, c: i64) -> Self {
        let mut s = Self::zero(rank, cap);
        s.add_term(Vec::new(), c);
        s
    }

    pub fn one(rank: u16, cap: usize) -> Self {
        Self::constant(rank, cap, 1)
    }

    pub fn rank(&self) -> u16 {
        self.rank
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u16], i64)> {
        self.terms.iter().map(|(m, &c)| (m.as_slice(), c))
    }

    pub fn add_term(&mut self, monomial: Vec<u16>, c: i64) {
        if c == 0 || monomial.len() >= self.cap {
            return;
        }
        debug_assert!(monomial.iter().all(|&i| i >= 1 && i <= self.rank));
        match self.terms.entry(monomial) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if *e.get() == 0 {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rank, self.cap), (other.rank, other.cap), "shape mismatch");
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.to_vec(), c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(m, &c)| (m.clone(), -c)).collect();
        TruncatedSeries { rank: self.rank, cap: self.cap, terms }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!((self.rank, self.cap), (other.rank, other.cap), "shape mismatch");
        let mut out = Self::zero(self.rank, self.cap);
        for (m1, c1) in self.terms() {
            for (m2, c2) in other.terms() {
                if m1.len() + m2.len() >= self.cap {
                    continue;
                }
                let mut m = Vec::with_capacity(m1.len() + m2.len());
                m.extend_from_slice(m1);
                m.extend_from_slice(m2);
                out.add_term(m, c1 * c2);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Vec::new()).copied() == Some(1)
    }

    /// The homogeneous part of the given degree (same cap).
    pub fn homogeneous_part(&self, degree: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.len() == degree)
            .map(|(m, &c)| (m.clone(), c))
            .collect();
        TruncatedSeries { rank: self.rank, cap: self.cap, terms }
    }

    /// Smallest degree >= 1 carrying a nonzero term, if any.
    pub fn lowest_positive_degree(&self) -> Option<usize> {
        self.terms
            .iter()
            .filter(|(m, _)| !m.is_empty())
            .map(|(m, _)| m.len())
            .min()
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<&Vec<u16>> = self.terms.keys().collect();
        keys.sort_by_key(|m| (m.len(), m.as_slice()));
        let parts: Vec<String> = keys
            .iter()
            .map(|m| {
                let c = self.terms[*m];
                if m.is_empty() {
                    return c.to_string();
                }
                let body =
                    m.iter().map(|i| format!("X{i}")).collect::<Vec<_>>().join("*");
                match c {
                    1 => body,
                    -1 => format!("-{body}"),
                    _ => format!("{c}*{body}"),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedSeries({})", self)
    }
}

/// The Magnus expansion of a word at the given cap: gamma_i maps to 1 + X_i,
/// its inverse to the truncated geometric series 1 - X_i + X_i^2 - ...
pub fn expansion(w: &Word, cap: usize) -> TruncatedSeries {
    assert!(cap >= 1, "cap must be at least 1");
    let rank = w.rank();
    let mut out = TruncatedSeries::one(rank, cap);
    for &l in w.letters() {
        let i = l.unsigned_abs() as u16;
        let mut factor = TruncatedSeries::one(rank, cap);
        if l > 0 {
            factor.add_term(alloc::vec![i], 1);
        } else {
            let mut sign = -1i64;
            let mut mono = alloc::vec![i];
            while mono.len() < cap {
                factor.add_term(mono.clone(), sign);
                mono.push(i);
                sign = -sign;
            }
        }
        out = out.mul(&factor);
    }
    out
}

/// Equality in the nilpotent quotient N_k = F/Γ^k: a == b iff the expansion
/// of a·b^-1 at cap k is the constant 1.
pub fn nilpotent_equal(a: &Word, b: &Word, k: usize) -> Result<bool> {
    if a.rank() != b.rank() {
        return Err(Error::RankMismatch { left: a.rank(), right: b.rank() });
    }
    let diff = a.mul(&b.inverse())?;
    Ok(expansion(&diff, k).is_one())
}

/// Johnson-filtration depth, capped: the largest k ≤ cap with
/// phi(gamma_i)·gamma_i^-1 ∈ Γ^k for every i. Always ≥ 1.
pub fn filtration_depth(phi: &Endomorphism, cap: usize) -> Result<usize> {
    assert!(cap >= 1);
    let rank = phi.rank();
    let mut depth = cap;
    for i in 1..=rank as usize {
        let diff = phi.image(i).mul(&Word::gen(rank, i)?.inverse())?;
        let series = expansion(&diff, cap);
        let d = series.lowest_positive_degree().unwrap_or(cap);
        depth = depth.min(d);
    }
    Ok(depth)
}

/// The k-th Johnson homomorphism in tensor coordinates: for phi of depth
/// ≥ k+1, the degree-(k+1) homogeneous part of expansion(phi(gamma_i) ·
/// gamma_i^-1) for each generator. All parts vanish iff depth ≥ k+2.
pub fn johnson_tau(phi: &Endomorphism, k: usize) -> Result<Vec<TruncatedSeries>> {
    assert!(k >= 1);
    let need = k + 1;
    let depth = filtration_depth(phi, need)?;
    if depth < need {
        return Err(Error::DepthTooShallow { depth, need });
    }
    let rank = phi.rank();
    let cap = k + 2;
    let mut out = Vec::with_capacity(rank as usize);
    for i in 1..=rank as usize {
        let diff = phi.image(i).mul(&Word::gen(rank, i)?.inverse())?;
        out.push(expansion(&diff, cap).homogeneous_part(k + 1));
    }
    Ok(out)
}
