//! The noncommutative group ring Z[F_n].

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::ring::{laurent::LaurentPolynomial, RingElem};
use crate::words::{parse_word, Endomorphism, Word};

/// A finite integer combination of reduced words; terms iterate in shortlex
/// order and never carry zero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct FreeRingElement {
    rank: u16,
    terms: BTreeMap<Word, i64>,
}

impl FreeRingElement {
    pub fn new(rank: u16) -> Self {
        FreeRingElement { rank, terms: BTreeMap::new() }
    }

    pub fn from_word(w: Word) -> Self {
        let mut terms = BTreeMap::new();
        let rank = w.rank();
        terms.insert(w, 1);
        FreeRingElement { rank, terms }
    }

    pub fn monomial(w: Word, c: i64) -> Self {
        let mut e = FreeRingElement::new(w.rank());
        e.add_term(w, c);
        e
    }

    pub fn constant(rank: u16, c: i64) -> Self {
        Self::monomial(Word::identity(rank), c)
    }

    pub fn add_term(&mut self, w: Word, c: i64) {
        debug_assert_eq!(w.rank(), self.rank);
        if c == 0 {
            return;
        }
        match self.terms.entry(w) {
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

    pub fn rank_of(&self) -> u16 {
        self.rank
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, i64)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, w: &Word) -> i64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn scale(&self, c: i64) -> Self {
        if c == 0 {
            return FreeRingElement::new(self.rank);
        }
        let terms = self.terms.iter().map(|(w, &v)| (w.clone(), v * c)).collect();
        FreeRingElement { rank: self.rank, terms }
    }

    /// The bar involution: sum c_w w maps to sum c_w w^-1 (anti-automorphism).
    pub fn bar(&self) -> Self {
        let mut out = FreeRingElement::new(self.rank);
        for (w, c) in self.terms() {
            out.add_term(w.inverse(), c);
        }
        out
    }

    /// The trivializer (augmentation) t: sum of coefficients.
    pub fn trivializer(&self) -> i64 {
        self.terms.values().sum()
    }

    /// Push through the abelianization a: Z[F_n] -> Z[H].
    pub fn abelianize(&self) -> LaurentPolynomial {
        let mut out = LaurentPolynomial::zero(self.rank);
        for (w, c) in self.terms() {
            let exps: Vec<i32> = w.exponent_vector().iter().map(|&e| e as i32).collect();
            out.add_monomial(&exps, c);
        }
        out
    }

    /// The ring map induced by a group endomorphism: w -> phi(w).
    pub fn apply_endo(&self, phi: &Endomorphism) -> Result<Self> {
        let mut out = FreeRingElement::new(self.rank);
        for (w, c) in self.terms() {
            out.add_term(phi.apply(w)?, c);
        }
        Ok(out)
    }

    /// Push words through an arbitrary word map (e.g. a marking).
    pub fn map_words<F: Fn(&Word) -> Word>(&self, rank: u16, f: F) -> Self {
        let mut out = FreeRingElement::new(rank);
        for (w, c) in self.terms() {
            out.add_term(f(w), c);
        }
        out
    }
}

impl RingElem for FreeRingElement {
    fn rank(&self) -> u16 {
        self.rank
    }

    fn zero(rank: u16) -> Self {
        FreeRingElement::new(rank)
    }

    fn one(rank: u16) -> Self {
        FreeRingElement::from_word(Word::identity(rank))
    }

    fn add(&self, other: &Self) -> Self {
        assert_eq!(self.rank, other.rank, "rank mismatch");
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w.clone(), c);
        }
        out
    }

    fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.rank, other.rank, "rank mismatch");
        let mut out = FreeRingElement::new(self.rank);
        for (w1, c1) in self.terms() {
            for (w2, c2) in other.terms() {
                out.add_term(w1.mul(w2).expect("same rank"), c1 * c2);
            }
        }
        out
    }

    fn neg(&self) -> Self {
        self.scale(-1)
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for FreeRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(w, c)| {
                if w.is_identity() {
                    c.to_string()
                } else {
                    match c {
                        1 => format!("{w}"),
                        -1 => format!("-{w}"),
                        _ => format!("{c}*{w}"),
                    }
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for FreeRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FreeRingElement({})", self)
    }
}

/// Parse the printed form: terms joined by ` + `, each `c*<word>`, `c`, or a
/// bare word with optional leading `-`.
pub fn parse_free_ring(text: &str, rank: u16) -> Result<FreeRingElement> {
    let text = text.trim();
    let mut out = FreeRingElement::new(rank);
    if text.is_empty() || text == "0" {
        return Ok(out);
    }
    for part in text.split(" + ") {
        let part = part.trim();
        let (sign, body) = match part.strip_prefix('-') {
            Some(rest) => (-1i64, rest.trim()),
            None => (1i64, part),
        };
        let (coef, word_text) = match body.split_once('*') {
            Some((c, w)) => {
                let c: i64 = c.trim().parse().map_err(|_| Error::Parse {
                    pos: 0,
                    msg: format!("bad coefficient in `{part}`"),
                })?;
                (c, w.trim())
            }
            None => {
                if let Ok(c) = body.parse::<i64>() {
                    (c, "")
                } else {
                    (1, body)
                }
            }
        };
        let w = parse_word(word_text, rank)?;
        out.add_term(w, sign * coef);
    }
    Ok(out)
}
