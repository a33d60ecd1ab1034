//! Fox free differential calculus on Z[F_n].

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::ring::{FreeRingElement, RingElem};
use crate::words::{Endomorphism, Word};

/// The Fox derivative d(w)/d(gamma_j), 1-indexed, by a single left-to-right
/// scan: on letter gamma_j add the preceding prefix, on letter gamma_j^-1
/// subtract the prefix including that letter.
pub fn fox_word(w: &Word, j: usize) -> Result<FreeRingElement> {
    let rank = w.rank();
    if j < 1 || j > rank as usize {
        return Err(Error::IndexOutOfRange { index: j as i64, rank });
    }
    let mut out = FreeRingElement::new(rank);
    let mut prefix = Word::identity(rank);
    for &l in w.letters() {
        if l == j as i32 {
            out.add_term(prefix.clone(), 1);
        }
        prefix.push(l);
        if l == -(j as i32) {
            out.add_term(prefix.clone(), -1);
        }
    }
    Ok(out)
}

/// Additive extension of `fox_word` to the group ring.
pub fn fox_ring(e: &FreeRingElement, j: usize) -> Result<FreeRingElement> {
    let mut out = FreeRingElement::new(e.rank_of());
    for (w, c) in e.terms() {
        out = out.add(&fox_word(w, j)?.scale(c));
    }
    Ok(out)
}

/// The column (dw/dgamma_1, ..., dw/dgamma_n).
pub fn fox_gradient(w: &Word) -> Vec<FreeRingElement> {
    (1..=w.rank() as usize)
        .map(|j| fox_word(w, j).expect("index in range"))
        .collect()
}

/// Verify the chain rule d(phi(w))/dgamma_j == sum_k phi(dw/dgamma_k) *
/// d(phi(gamma_k))/dgamma_j for every j.
pub fn chain_rule_check(phi: &Endomorphism, w: &Word) -> Result<bool> {
    let rank = phi.rank();
    if w.rank() != rank {
        return Err(Error::RankMismatch { left: w.rank(), right: rank });
    }
    let phi_w = phi.apply(w)?;
    for j in 1..=rank as usize {
        let lhs = fox_word(&phi_w, j)?;
        let mut rhs = FreeRingElement::new(rank);
        for k in 1..=rank as usize {
            let pushed = fox_word(w, k)?.apply_endo(phi)?;
            rhs = rhs.add(&pushed.mul(&fox_word(phi.image(k), j)?));
        }
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// For rho: F_n -> <t> sending gamma_i to t^exponents[i], test whether every
/// Fox derivative of `v` dies under the induced ring map. Words in the second
/// derived subgroup [Ker rho, Ker rho] always pass; single kernel generators
/// generally do not.
pub fn derivative_vanishing_commutator_check(exponents: &[i32], v: &Word) -> Result<bool> {
    let rank = v.rank();
    if exponents.len() != rank as usize {
        return Err(Error::RankMismatch { left: exponents.len() as u16, right: rank });
    }
    let images: Vec<Vec<i32>> = exponents.iter().map(|&e| alloc::vec![e]).collect();
    for j in 1..=rank as usize {
        let image = fox_word(v, j)?.abelianize().substitute(&images, 1);
        if !image.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}
