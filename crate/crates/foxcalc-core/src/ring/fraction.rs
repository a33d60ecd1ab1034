//! The fraction field K_H of Z[H], with exact cross-multiplication equality.

use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::ring::laurent::{parse_laurent, LaurentPolynomial};
use crate::ring::RingElem;

/// num/den with den nonzero. Normalization divides out the common monomial
/// shift and integer content and makes den's graded-lex-leading coefficient
/// positive; full polynomial gcd is not attempted, so equality goes through
/// cross-multiplication.
#[derive(Clone, Eq)]
pub struct LaurentFraction {
    num: LaurentPolynomial,
    den: LaurentPolynomial,
}

impl LaurentFraction {
    pub fn new(num: LaurentPolynomial, den: LaurentPolynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroInversion);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: LaurentPolynomial, den: LaurentPolynomial) -> Self {
        debug_assert!(!den.is_zero());
        let rank = den.rank();
        if num.is_zero() {
            return LaurentFraction { num, den: LaurentPolynomial::one(rank) };
        }
        // When the denominator divides exactly, reduce to a polynomial.
        let (num, den) = match num.exact_div(&den) {
            Some(q) => (q, LaurentPolynomial::one(rank)),
            None => (num, den),
        };
        // Joint monomial shift: componentwise min over both supports.
        let mn = num.min_exponents().unwrap();
        let md = den.min_exponents().unwrap();
        let shift: Vec<i32> = mn.iter().zip(md.iter()).map(|(&a, &b)| -a.min(b)).collect();
        let mut num = num.shifted_by(&shift);
        let mut den = den.shifted_by(&shift);
        // Common integer content.
        let g = super::gcd_i64(num.content(), den.content());
        if g > 1 {
            num = num.exact_scalar_div(g);
            den = den.exact_scalar_div(g);
        }
        if den.leading().map(|(_, c)| c < 0).unwrap_or(false) {
            num = num.neg();
            den = den.neg();
        }
        LaurentFraction { num, den }
    }

    pub fn from_poly(p: LaurentPolynomial) -> Self {
        let rank = p.rank();
        Self::normalized(p, LaurentPolynomial::one(rank))
    }

    pub fn constant(rank: u16, c: i64) -> Self {
        Self::from_poly(LaurentPolynomial::constant(rank, c))
    }

    pub fn num(&self) -> &LaurentPolynomial {
        &self.num
    }

    pub fn den(&self) -> &LaurentPolynomial {
        &self.den
    }

    pub fn inv(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::ZeroInversion);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    /// The bar involution, applied to numerator and denominator.
    pub fn bar(&self) -> Self {
        Self::normalized(self.num.bar(), self.den.bar())
    }

    /// Push through the monomial substitution g_i -> g^images[i]. Fails if the
    /// denominator collapses to zero (never for invertible substitutions).
    pub fn twist(&self, images: &[Vec<i32>], target_rank: u16) -> Result<Self> {
        let den = self.den.substitute(images, target_rank);
        if den.is_zero() {
            return Err(Error::ZeroInversion);
        }
        Ok(Self::normalized(self.num.substitute(images, target_rank), den))
    }

    /// Some(p) iff the fraction is a genuine Laurent polynomial.
    pub fn to_polynomial(&self) -> Option<LaurentPolynomial> {
        self.num.exact_div(&self.den)
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    /// Decide self == sign * g^m * other; returns the witness (sign, m).
    pub fn eq_up_to_unit(&self, other: &Self) -> Option<(i8, Vec<i32>)> {
        let rank = self.num.rank();
        let p = self.num.mul(&other.den);
        let q = other.num.mul(&self.den);
        match (p.leading(), q.leading()) {
            (None, None) => Some((1, alloc::vec![0; rank as usize])),
            (Some((pe, pc)), Some((qe, qc))) => {
                let sign: i8 = if pc == qc {
                    1
                } else if pc == -qc {
                    -1
                } else {
                    return None;
                };
                let m: Vec<i32> = pe.iter().zip(qe.iter()).map(|(&a, &b)| a - b).collect();
                if p == q.shifted_by(&m).scale(sign as i64) {
                    Some((sign, m))
                } else {
                    None
                }
            }
            _ => None,
        }
    }
}

impl PartialEq for LaurentFraction {
    fn eq(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl RingElem for LaurentFraction {
    fn rank(&self) -> u16 {
        self.num.rank()
    }

    fn zero(rank: u16) -> Self {
        LaurentFraction {
            num: LaurentPolynomial::zero(rank),
            den: LaurentPolynomial::one(rank),
        }
    }

    fn one(rank: u16) -> Self {
        LaurentFraction {
            num: LaurentPolynomial::one(rank),
            den: LaurentPolynomial::one(rank),
        }
    }

    fn add(&self, other: &Self) -> Self {
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        Self::normalized(num, self.den.mul(&other.den))
    }

    fn mul(&self, other: &Self) -> Self {
        Self::normalized(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    fn neg(&self) -> Self {
        LaurentFraction { num: self.num.neg(), den: self.den.clone() }
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl fmt::Display for LaurentFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.num, self.den)
    }
}

impl fmt::Debug for LaurentFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentFraction({})", self)
    }
}

/// Parse `(<num>)/(<den>)` or a bare polynomial.
pub fn parse_fraction(text: &str, rank: u16) -> Result<LaurentFraction> {
    let text = text.trim();
    if let Some(rest) = text.strip_prefix('(') {
        if let Some(split) = rest.rfind(")/(") {
            let num_text = &rest[..split];
            let den_text = rest[split + 3..].strip_suffix(')').ok_or(Error::Parse {
                pos: text.len(),
                msg: "fraction must end with `)`".to_string(),
            })?;
            return LaurentFraction::new(
                parse_laurent(num_text, rank)?,
                parse_laurent(den_text, rank)?,
            );
        }
    }
    Ok(LaurentFraction::from_poly(parse_laurent(text, rank)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn rand_poly(rng: &mut StdRng, rank: u16, nterms: usize) -> LaurentPolynomial {
        let mut p = LaurentPolynomial::new(rank);
        for _ in 0..rng.random_range(0..=nterms) {
            let exps: Vec<i32> = (0..rank).map(|_| rng.random_range(-2..=2)).collect();
            p.add_monomial(&exps, rng.random_range(-3..=3));
        }
        p
    }

    fn rand_frac(rng: &mut StdRng, rank: u16) -> LaurentFraction {
        let num = rand_poly(rng, rank, 3);
        let mut den = rand_poly(rng, rank, 2);
        while den.is_zero() {
            den = rand_poly(rng, rank, 2);
        }
        LaurentFraction::new(num, den).unwrap()
    }

    #[test]
    fn construction_and_zero_den() {
        let one = LaurentPolynomial::one(2);
        assert!(LaurentFraction::new(one.clone(), LaurentPolynomial::zero(2)).is_err());
        let f = LaurentFraction::new(one.clone(), one).unwrap();
        assert!(f.is_one());
    }

    #[test]
    fn field_axioms() {
        let mut rng = StdRng::seed_from_u64(41);
        for _ in 0..100 {
            let (a, b, c) = (
                rand_frac(&mut rng, 2),
                rand_frac(&mut rng, 2),
                rand_frac(&mut rng, 2),
            );
            assert_eq!(a.add(&b), b.add(&a));
            assert_eq!(a.mul(&b), b.mul(&a));
            assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            assert!(a.sub(&a).is_zero());
            if !a.is_zero() {
                assert!(a.mul(&a.inv().unwrap()).is_one());
            }
        }
    }

    #[test]
    fn equality_is_equivalence_and_cross_multiplied() {
        let mut rng = StdRng::seed_from_u64(42);
        for _ in 0..100 {
            let a = rand_frac(&mut rng, 2);
            let mut s = rand_poly(&mut rng, 2, 2);
            while s.is_zero() {
                s = rand_poly(&mut rng, 2, 2);
            }
            // a == (a.num*s)/(a.den*s) without any gcd computation.
            let b = LaurentFraction::new(a.num().mul(&s), a.den().mul(&s)).unwrap();
            assert_eq!(a, b);
            assert_eq!(b, a);
            let c = LaurentFraction::new(b.num().clone(), b.den().clone()).unwrap();
            assert_eq!(a, c);
        }
        // (g1+g2-1)/(g1^-1+g2^-1-1) == (g1+g2-1)*g1*g2/(g1+g2-g1*g2).
        let f = parse_fraction("(g1 + g2 + -1)/(g1^-1 + g2^-1 + -1)", 2).unwrap();
        let lhs_num = parse_laurent("g1 + g2 + -1", 2).unwrap();
        let g1g2 = LaurentPolynomial::from_exps(2, &[1, 1], 1);
        let den2 = parse_laurent("g1 + g2 + -1*g1*g2", 2).unwrap();
        let g = LaurentFraction::new(lhs_num.mul(&g1g2), den2).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn normalization_invariants() {
        let mut rng = StdRng::seed_from_u64(43);
        for _ in 0..200 {
            let a = rand_frac(&mut rng, 3);
            let (_, dc) = a.den().leading().unwrap();
            assert!(dc > 0, "den leading coefficient positive");
            let g = crate::ring::gcd_i64(a.num().content(), a.den().content());
            assert!(g <= 1, "no common content");
            if !a.is_zero() {
                let mn = a.num().min_exponents().unwrap();
                let md = a.den().min_exponents().unwrap();
                assert!(
                    mn.iter().zip(md.iter()).all(|(&x, &y)| x.min(y) == 0),
                    "joint monomial shift removed"
                );
            }
        }
    }

    #[test]
    fn bar_involution() {
        let mut rng = StdRng::seed_from_u64(44);
        for _ in 0..100 {
            let (a, b) = (rand_frac(&mut rng, 2), rand_frac(&mut rng, 2));
            assert_eq!(a.bar().bar(), a);
            assert_eq!(a.mul(&b).bar(), a.bar().mul(&b.bar()));
        }
    }

    #[test]
    fn twist_is_homomorphism() {
        let mut rng = StdRng::seed_from_u64(45);
        // An invertible substitution: g1 -> g1*g2, g2 -> g2.
        let images = alloc::vec![alloc::vec![1, 1], alloc::vec![0, 1]];
        for _ in 0..100 {
            let (a, b) = (rand_frac(&mut rng, 2), rand_frac(&mut rng, 2));
            let t = |f: &LaurentFraction| f.twist(&images, 2).unwrap();
            assert_eq!(t(&a.mul(&b)), t(&a).mul(&t(&b)));
            assert_eq!(t(&a.add(&b)), t(&a).add(&t(&b)));
        }
    }

    #[test]
    fn unit_comparison() {
        let mut rng = StdRng::seed_from_u64(46);
        for _ in 0..200 {
            let a = rand_frac(&mut rng, 2);
            if a.is_zero() {
                continue;
            }
            let m = alloc::vec![rng.random_range(-3..=3), rng.random_range(-3..=3)];
            let sign: i64 = if rng.random_bool(0.5) { 1 } else { -1 };
            let unit = LaurentFraction::from_poly(LaurentPolynomial::from_exps(2, &m, sign));
            let b = a.mul(&unit);
            let (s, shift) = b.eq_up_to_unit(&a).expect("unit multiple must compare equal");
            assert_eq!(s as i64, sign);
            assert_eq!(shift, m);
            let two = LaurentFraction::constant(2, 2);
            assert_eq!(a.mul(&two).eq_up_to_unit(&a), None);
            let bumped = a.add(&LaurentFraction::one(2));
            if bumped.eq_up_to_unit(&a).is_some() {
                // Only possible when a and a+1 genuinely differ by a unit;
                // verify the witness rather than forbidding it.
                let (s, shift) = bumped.eq_up_to_unit(&a).unwrap();
                let unit =
                    LaurentFraction::from_poly(LaurentPolynomial::from_exps(2, &shift, s as i64));
                assert_eq!(bumped, a.mul(&unit));
            }
        }
        let zero = LaurentFraction::zero(2);
        assert_eq!(zero.eq_up_to_unit(&zero), Some((1, alloc::vec![0, 0])));
        assert_eq!(zero.eq_up_to_unit(&LaurentFraction::one(2)), None);
    }

    #[test]
    fn polynomial_extraction() {
        // (g1^2 - 1)/(g1 - 1) is the polynomial g1 + 1.
        let num = parse_laurent("g1^2 + -1", 1).unwrap();
        let den = parse_laurent("g1 + -1", 1).unwrap();
        let f = LaurentFraction::new(num, den).unwrap();
        let p = f.to_polynomial().unwrap();
        assert_eq!(p, parse_laurent("g1 + 1", 1).unwrap());
        let g = parse_fraction("(g1)/(g1 + 1)", 1).unwrap();
        assert!(g.to_polynomial().is_none());
    }

    #[test]
    fn print_parse_roundtrip() {
        let mut rng = StdRng::seed_from_u64(47);
        for _ in 0..200 {
            let a = rand_frac(&mut rng, 2);
            let text = format!("{a}");
            assert_eq!(parse_fraction(&text, 2).unwrap(), a, "text was `{text}`");
        }
    }
}
