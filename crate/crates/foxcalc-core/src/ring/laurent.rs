//! The commutative Laurent-polynomial ring Z[H] = Z[g1^±1, ..., gn^±1].

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{Error, Result};
use crate::ring::{gcd_i64, RingElem};

/// An exponent vector, ordered by total degree then lexicographically, so the
/// maximum key of a term map is the graded-lex leading monomial.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Expo(pub Vec<i32>);

impl Expo {
    fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }
}

impl Ord for Expo {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Expo {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A finite integer combination of monomials in commuting invertible
/// variables; terms never carry zero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPolynomial {
    rank: u16,
    terms: BTreeMap<Expo, i64>,
}

impl LaurentPolynomial {
    pub fn new(rank: u16) -> Self {
        LaurentPolynomial { rank, terms: BTreeMap::new() }
    }

    pub fn constant(rank: u16, c: i64) -> Self {
        Self::from_exps(rank, &vec![0; rank as usize], c)
    }

    pub fn from_exps(rank: u16, exps: &[i32], c: i64) -> Self {
        let mut p = LaurentPolynomial::new(rank);
        p.add_monomial(exps, c);
        p
    }

    /// The generator g_i (1-based).
    pub fn gen(rank: u16, i: u16) -> Self {
        Self::gen_pow(rank, i, 1)
    }

    /// The monomial g_i^e (1-based).
    pub fn gen_pow(rank: u16, i: u16, e: i32) -> Self {
        assert!(i >= 1 && i <= rank, "generator index out of range");
        let mut exps = vec![0i32; rank as usize];
        exps[(i - 1) as usize] = e;
        Self::from_exps(rank, &exps, 1)
    }

    pub fn add_monomial(&mut self, exps: &[i32], c: i64) {
        debug_assert_eq!(exps.len(), self.rank as usize);
        if c == 0 {
            return;
        }
        match self.terms.entry(Expo(exps.to_vec())) {
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

    pub fn terms(&self) -> impl Iterator<Item = (&[i32], i64)> {
        self.terms.iter().map(|(e, &c)| (e.0.as_slice(), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, exps: &[i32]) -> i64 {
        self.terms.get(&Expo(exps.to_vec())).copied().unwrap_or(0)
    }

    pub fn scale(&self, c: i64) -> Self {
        if c == 0 {
            return LaurentPolynomial::new(self.rank);
        }
        let terms = self.terms.iter().map(|(e, &v)| (e.clone(), v * c)).collect();
        LaurentPolynomial { rank: self.rank, terms }
    }

    /// Divide every coefficient by `c`, which must divide the content.
    pub fn exact_scalar_div(&self, c: i64) -> Self {
        assert!(c != 0, "division by zero");
        let terms = self
            .terms
            .iter()
            .map(|(e, &v)| {
                debug_assert_eq!(v % c, 0);
                (e.clone(), v / c)
            })
            .collect();
        LaurentPolynomial { rank: self.rank, terms }
    }

    /// The bar involution: g^e maps to g^-e.
    pub fn bar(&self) -> Self {
        let mut out = LaurentPolynomial::new(self.rank);
        for (e, c) in self.terms() {
            let neg: Vec<i32> = e.iter().map(|&x| -x).collect();
            out.add_monomial(&neg, c);
        }
        out
    }

    /// The trivializer (augmentation): sum of coefficients.
    pub fn trivializer(&self) -> i64 {
        self.terms.values().sum()
    }

    /// Nonnegative gcd of the coefficients (0 for the zero polynomial).
    pub fn content(&self) -> i64 {
        self.terms.values().fold(0, |g, &c| gcd_i64(g, c))
    }

    /// Graded-lex leading term, if any.
    pub fn leading(&self) -> Option<(&[i32], i64)> {
        self.terms.last_key_value().map(|(e, &c)| (e.0.as_slice(), c))
    }

    /// Componentwise minimum exponent over all terms (None for zero).
    pub fn min_exponents(&self) -> Option<Vec<i32>> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let mut m = first.0.clone();
        for e in it {
            for (mi, &ei) in m.iter_mut().zip(e.0.iter()) {
                if ei < *mi {
                    *mi = ei;
                }
            }
        }
        Some(m)
    }

    /// Multiply by the monomial g^shift.
    pub fn shifted_by(&self, shift: &[i32]) -> Self {
        assert_eq!(shift.len(), self.rank as usize);
        let terms = self
            .terms
            .iter()
            .map(|(e, &c)| {
                let moved: Vec<i32> =
                    e.0.iter().zip(shift.iter()).map(|(&a, &b)| a + b).collect();
                (Expo(moved), c)
            })
            .collect();
        LaurentPolynomial { rank: self.rank, terms }
    }

    /// Some((sign, exps)) iff the polynomial is ±(one monomial).
    pub fn monomial_unit(&self) -> Option<(i8, Vec<i32>)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, &c) = self.terms.iter().next().unwrap();
        match c {
            1 => Some((1, e.0.clone())),
            -1 => Some((-1, e.0.clone())),
            _ => None,
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// The ring map sending g_i to the monomial with exponent vector
    /// `images[i]` (length `target_rank`). Collisions merge and may cancel.
    pub fn substitute(&self, images: &[Vec<i32>], target_rank: u16) -> Self {
        assert_eq!(images.len(), self.rank as usize);
        for im in images {
            assert_eq!(im.len(), target_rank as usize);
        }
        let mut out = LaurentPolynomial::new(target_rank);
        for (e, c) in self.terms() {
            let mut new_exps = vec![0i64; target_rank as usize];
            for (i, &ei) in e.iter().enumerate() {
                for (j, &mij) in images[i].iter().enumerate() {
                    new_exps[j] += ei as i64 * mij as i64;
                }
            }
            let new_exps: Vec<i32> = new_exps
                .iter()
                .map(|&x| i32::try_from(x).expect("exponent overflow"))
                .collect();
            out.add_monomial(&new_exps, c);
        }
        out
    }

    /// View in a larger ring: pad exponent vectors with trailing zeros.
    pub fn extend_rank(&self, new_rank: u16) -> Self {
        assert!(new_rank >= self.rank);
        let terms = self
            .terms
            .iter()
            .map(|(e, &c)| {
                let mut v = e.0.clone();
                v.resize(new_rank as usize, 0);
                (Expo(v), c)
            })
            .collect();
        LaurentPolynomial { rank: new_rank, terms }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = LaurentPolynomial::one(self.rank);
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Exact division in the Laurent ring: Some(q) with self == q*d, if such
    /// a q exists. Shifts both operands to nonnegative exponents, then runs
    /// graded-lex leading-term division over Z.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        assert_eq!(self.rank, d.rank, "rank mismatch");
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(LaurentPolynomial::new(self.rank));
        }
        let mp = self.min_exponents().unwrap();
        let md = d.min_exponents().unwrap();
        let neg = |v: &[i32]| -> Vec<i32> { v.iter().map(|&x| -x).collect() };
        let mut r = self.shifted_by(&neg(&mp));
        let dd = d.shifted_by(&neg(&md));
        let (lde, ldc) = {
            let (e, c) = dd.leading().unwrap();
            (e.to_vec(), c)
        };
        let mut q = LaurentPolynomial::new(self.rank);
        while !r.is_zero() {
            let (lre, lrc) = {
                let (e, c) = r.leading().unwrap();
                (e.to_vec(), c)
            };
            if lrc % ldc != 0 {
                return None;
            }
            let mut e = Vec::with_capacity(lre.len());
            for (&a, &b) in lre.iter().zip(lde.iter()) {
                if a < b {
                    return None;
                }
                e.push(a - b);
            }
            let c = lrc / ldc;
            q.add_monomial(&e, c);
            let t = LaurentPolynomial::from_exps(self.rank, &e, c);
            r = r.sub(&t.mul(&dd));
        }
        // self = g^mp * r0 and d = g^md * dd, so self/d = g^(mp-md) * q.
        let shift: Vec<i32> = mp.iter().zip(md.iter()).map(|(&a, &b)| a - b).collect();
        Some(q.shifted_by(&shift))
    }

    /// Canonical representative of the ±(monomial)·p orbit: divide by the
    /// graded-lex leading monomial and make the leading coefficient positive.
    pub fn unit_normal_form(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some((e, c)) => {
                let shift: Vec<i32> = e.iter().map(|&x| -x).collect();
                let sign = if c < 0 { -1 } else { 1 };
                self.shifted_by(&shift).scale(sign)
            }
        }
    }

    pub fn display_with(&self, name: &dyn Fn(u16) -> String) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(e, c)| {
                let mut factors: Vec<String> = Vec::new();
                for (i, &ei) in e.iter().enumerate() {
                    if ei == 0 {
                        continue;
                    }
                    let n = name(i as u16 + 1);
                    if ei == 1 {
                        factors.push(n);
                    } else {
                        factors.push(format!("{n}^{ei}"));
                    }
                }
                if factors.is_empty() {
                    c.to_string()
                } else {
                    let body = factors.join("*");
                    match c {
                        1 => body,
                        -1 => format!("-{body}"),
                        _ => format!("{c}*{body}"),
                    }
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl RingElem for LaurentPolynomial {
    fn rank(&self) -> u16 {
        self.rank
    }

    fn zero(rank: u16) -> Self {
        LaurentPolynomial::new(rank)
    }

    fn one(rank: u16) -> Self {
        LaurentPolynomial::constant(rank, 1)
    }

    fn add(&self, other: &Self) -> Self {
        assert_eq!(self.rank, other.rank, "rank mismatch");
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_monomial(e, c);
        }
        out
    }

    fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.rank, other.rank, "rank mismatch");
        let mut out = LaurentPolynomial::new(self.rank);
        for (e1, c1) in self.terms() {
            for (e2, c2) in other.terms() {
                let e: Vec<i32> = e1.iter().zip(e2.iter()).map(|(&a, &b)| a + b).collect();
                out.add_monomial(&e, c1 * c2);
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

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&|i| format!("g{i}")))
    }
}

impl fmt::Debug for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPolynomial({})", self)
    }
}

/// Parse the printed form: terms joined by ` + `, each a `*`-joined product of
/// an optional integer and factors `g<k>` or `g<k>^<e>`.
pub fn parse_laurent(text: &str, rank: u16) -> Result<LaurentPolynomial> {
    let text = text.trim();
    let mut out = LaurentPolynomial::new(rank);
    if text.is_empty() || text == "0" {
        return Ok(out);
    }
    for part in text.split(" + ") {
        let part = part.trim();
        let (mut coef, body) = match part.strip_prefix('-') {
            Some(rest) => (-1i64, rest.trim()),
            None => (1i64, part),
        };
        let mut exps = vec![0i32; rank as usize];
        for factor in body.split('*') {
            let factor = factor.trim();
            if factor.is_empty() {
                return Err(Error::Parse { pos: 0, msg: format!("empty factor in `{part}`") });
            }
            if let Some(rest) = factor.strip_prefix('g') {
                let (idx_text, exp) = match rest.split_once('^') {
                    Some((i, e)) => {
                        let e: i32 = e.trim().parse().map_err(|_| Error::Parse {
                            pos: 0,
                            msg: format!("bad exponent in `{factor}`"),
                        })?;
                        (i.trim(), e)
                    }
                    None => (rest.trim(), 1),
                };
                let idx: u16 = idx_text.parse().map_err(|_| Error::Parse {
                    pos: 0,
                    msg: format!("bad generator in `{factor}`"),
                })?;
                if idx < 1 || idx > rank {
                    return Err(Error::IndexOutOfRange { index: idx as i64, rank });
                }
                exps[(idx - 1) as usize] += exp;
            } else {
                let c: i64 = factor.parse().map_err(|_| Error::Parse {
                    pos: 0,
                    msg: format!("bad factor `{factor}`"),
                })?;
                coef *= c;
            }
        }
        out.add_monomial(&exps, coef);
    }
    Ok(out)
}
