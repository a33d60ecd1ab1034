//! Magnus matrices of free-group endomorphisms, their reductions (Burau,
//! Gassner), twisted symplecticity against the J-tilde matrix, the
//! determinant cocycle, and the intersection-pairing cup product.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fox::{fox_gradient, fox_word};
use crate::matrix::Matrix;
use crate::ring::{FreeRingElement, LaurentPolynomial, RingElem};
use crate::words::{boundary_word, braid_endomorphism, fixes_boundary, is_pure_braid, Endomorphism, Word};

/// The Magnus matrix r(phi): entry (i, j) is bar(d phi(gamma_j) / d gamma_i).
pub fn magnus(phi: &Endomorphism) -> Result<Matrix<FreeRingElement>> {
    let n = phi.rank() as usize;
    let mut m = Matrix::zero(n, n, phi.rank());
    for j in 1..=n {
        for i in 1..=n {
            m.set(i - 1, j - 1, fox_word(phi.image(j), i)?.bar());
        }
    }
    Ok(m)
}

/// Entrywise ring reductions of a Magnus matrix.
pub enum Reduction {
    /// All group elements to 1; lands in Z (rank-0 Laurent ring).
    Trivializer,
    /// Z[F_n] -> Z[H], H = Z^n.
    Abelianize,
    /// Abelianize, then gamma_i -> t^{e_i}; lands in Z[t^±].
    Specialize(Vec<i32>),
}

pub fn reduce_matrix(m: &Matrix<FreeRingElement>, r: &Reduction) -> Matrix<LaurentPolynomial> {
    match r {
        Reduction::Trivializer => {
            m.map(0, |e| LaurentPolynomial::constant(0, e.trivializer()))
        }
        Reduction::Abelianize => m.map(m.ring_rank(), |e| e.abelianize()),
        Reduction::Specialize(exps) => {
            assert_eq!(exps.len(), m.ring_rank() as usize, "one exponent per generator");
            let images: Vec<Vec<i32>> = exps.iter().map(|&e| vec![e]).collect();
            m.map(1, |e| e.abelianize().substitute(&images, 1))
        }
    }
}

/// Abelianized Magnus matrix r_a(phi) over Z[H].
pub fn magnus_abelian(phi: &Endomorphism) -> Result<Matrix<LaurentPolynomial>> {
    Ok(reduce_matrix(&magnus(phi)?, &Reduction::Abelianize))
}

/// The homology action sigma(phi): column j is the exponent vector of
/// phi(gamma_j); equals the trivializer reduction of the Magnus matrix.
pub fn sigma_matrix(phi: &Endomorphism) -> Vec<Vec<i64>> {
    let n = phi.rank() as usize;
    let mut s = vec![vec![0i64; n]; n];
    for j in 1..=n {
        let ev = phi.image(j).exponent_vector();
        for (i, row) in s.iter_mut().enumerate() {
            row[j - 1] = ev[i];
        }
    }
    s
}

/// Substitution images realizing the H-automorphism induced by sigma:
/// g_i maps to the monomial with exponents (column i of sigma).
pub fn sigma_substitution(sigma: &[Vec<i64>]) -> Vec<Vec<i32>> {
    let n = sigma.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| i32::try_from(sigma[j][i]).expect("exponent overflow"))
                .collect()
        })
        .collect()
}

/// The standard symplectic form J = [[0, I_g], [-I_g, 0]].
pub fn symplectic_j(g: u16) -> Vec<Vec<i64>> {
    let n = 2 * g as usize;
    let mut j = vec![vec![0i64; n]; n];
    for i in 0..g as usize {
        j[i][g as usize + i] = 1;
        j[g as usize + i][i] = -1;
    }
    j
}

/// X^T J X == J over Z.
pub fn is_symplectic_int(m: &[Vec<i64>], g: u16) -> bool {
    let n = 2 * g as usize;
    if m.len() != n || m.iter().any(|r| r.len() != n) {
        return false;
    }
    let j = symplectic_j(g);
    let mt: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|k| m[k][i]).collect()).collect();
    crate::matrix::mat_mul_i64(&crate::matrix::mat_mul_i64(&mt, &j), m) == j
}

/// The twisted symplectic form J-tilde over Z[F_2g]: block rows/columns
/// (1..g | g+1..2g), lower-triangular blocks following the product patterns
/// of the boundary relator, trivializing to J.
pub fn jtilde(g: u16) -> Matrix<FreeRingElement> {
    let n = 2 * g as usize;
    let rank = 2 * g;
    let gu = g as usize;
    let one = FreeRingElement::one(rank);
    let gam = |i: usize| FreeRingElement::from_word(Word::gen(rank, i).expect("in range"));
    let gam_inv =
        |i: usize| FreeRingElement::from_word(Word::gen(rank, i).expect("in range").inverse());
    let mut m = Matrix::zero(n, n, rank);
    for i in 1..=gu {
        for j in 1..=gu {
            // J1: rows/cols in the first block.
            if i == j {
                m.set(i - 1, j - 1, one.sub(&gam(i)));
            } else if i > j {
                m.set(i - 1, j - 1, one.sub(&gam(i)).mul(&one.sub(&gam_inv(j))));
            }
            // J2: first-block rows, second-block columns.
            if i == j {
                m.set(i - 1, gu + j - 1, gam(i).mul(&gam_inv(gu + i)));
            } else if i > j {
                m.set(i - 1, gu + j - 1, one.sub(&gam(i)).mul(&one.sub(&gam_inv(gu + j))));
            }
            // J3: second-block rows, first-block columns.
            if i == j {
                m.set(gu + i - 1, j - 1, one.sub(&gam_inv(i)).sub(&gam(gu + i)));
            } else if i > j {
                m.set(gu + i - 1, j - 1, one.sub(&gam(gu + i)).mul(&one.sub(&gam_inv(j))));
            }
            // J4: both in the second block.
            if i == j {
                m.set(gu + i - 1, gu + j - 1, one.sub(&gam_inv(gu + i)));
            } else if i > j {
                m.set(
                    gu + i - 1,
                    gu + j - 1,
                    one.sub(&gam(gu + i)).mul(&one.sub(&gam_inv(gu + j))),
                );
            }
        }
    }
    m
}

/// Exact check of bar(r(phi))^T · J-tilde · r(phi) == phi(J-tilde) in Z[F_2g].
pub fn check_symplectic(phi: &Endomorphism, g: u16) -> Result<bool> {
    if phi.rank() != 2 * g {
        return Err(Error::RankMismatch { left: phi.rank(), right: 2 * g });
    }
    let r = magnus(phi)?;
    let jt = jtilde(g);
    let lhs = r.map(r.ring_rank(), |e| e.bar()).transpose().mul(&jt).mul(&r);
    let rhs = jt.try_map(jt.ring_rank(), |e| e.apply_endo(phi))?;
    Ok(lhs == rhs)
}

/// Named boundary-fixing automorphisms: transvection twists t_i along the
/// gamma_i handles, s_i along the dual handles, adjacent handle swaps, and
/// the boundary twist (conjugation by the boundary word). Every entry is
/// validated to fix the boundary word and act symplectically on homology.
pub fn twist_catalogue(g: u16) -> Result<Vec<(String, Endomorphism)>> {
    assert!(g >= 1);
    let rank = 2 * g;
    let gu = g as usize;
    let gen = |i: usize| Word::gen(rank, i).expect("in range");
    let mut out: Vec<(String, Endomorphism)> = Vec::new();
    for i in 1..=gu {
        // t_i: gamma_{g+i} -> gamma_{g+i} gamma_i.
        let mut images: Vec<Word> = (1..=rank as usize).map(gen).collect();
        images[gu + i - 1] = gen(gu + i).mul(&gen(i))?;
        out.push((format!("t{i}"), Endomorphism::new(rank, images)?));
        // s_i: gamma_i -> gamma_i gamma_{g+i}^-1.
        let mut images: Vec<Word> = (1..=rank as usize).map(gen).collect();
        images[i - 1] = gen(i).mul(&gen(gu + i).inverse())?;
        out.push((format!("s{i}"), Endomorphism::new(rank, images)?));
    }
    for i in 1..gu {
        // Swap of handles i and i+1, corrected by conjugation to fix zeta.
        let c = Word::commutator(&gen(i), &gen(gu + i))?;
        let conj = |w: &Word| c.mul(w).unwrap().mul(&c.inverse()).unwrap();
        let mut images: Vec<Word> = (1..=rank as usize).map(gen).collect();
        images[i - 1] = conj(&gen(i + 1));
        images[i] = conj(&gen(i));
        images[gu + i - 1] = conj(&gen(gu + i + 1));
        images[gu + i] = conj(&gen(gu + i));
        out.push((format!("swap{i}"), Endomorphism::new(rank, images)?));
    }
    let zeta = boundary_word(g);
    let images: Vec<Word> = (1..=rank as usize)
        .map(|i| zeta.mul(&gen(i)).unwrap().mul(&zeta.inverse()).unwrap())
        .collect();
    out.push((String::from("boundary"), Endomorphism::new(rank, images)?));
    for (name, phi) in &out {
        assert!(
            fixes_boundary(phi, g)?,
            "catalogue entry {name} must fix the boundary word"
        );
        assert!(
            is_symplectic_int(&sigma_matrix(phi), g),
            "catalogue entry {name} must act symplectically"
        );
    }
    Ok(out)
}

/// The determinant cocycle k(phi) = det r_a(phi), asserted to be a single
/// monomial with coefficient ±1; returned as (sign, exponent vector).
pub fn earle_det(phi: &Endomorphism, g: u16) -> Result<(i8, Vec<i32>)> {
    if phi.rank() != 2 * g {
        return Err(Error::RankMismatch { left: phi.rank(), right: 2 * g });
    }
    let det = magnus_abelian(phi)?.det();
    det.monomial_unit().ok_or(Error::NonMonomialDeterminant)
}

/// Intersection pairing on H = Z^2g with mu(gamma_i, gamma_{g+j}) = delta_ij.
pub fn mu_pairing(a: &[i64], b: &[i64], g: u16) -> i64 {
    let gu = g as usize;
    assert_eq!(a.len(), 2 * gu);
    assert_eq!(b.len(), 2 * gu);
    (0..gu).map(|i| a[i] * b[gu + i] - a[gu + i] * b[i]).sum()
}

/// mu(k cup k) evaluated on the pair [phi | psi]: mu(k(phi), phi(k(psi))),
/// pairing the H-parts of the determinant cocycle values.
pub fn mu_k_cup_k(phi: &Endomorphism, psi: &Endomorphism, g: u16) -> Result<i64> {
    let (_, k_phi) = earle_det(phi, g)?;
    let (_, k_psi) = earle_det(psi, g)?;
    let sigma = sigma_matrix(phi);
    let n = 2 * g as usize;
    let twisted: Vec<i64> = (0..n)
        .map(|i| (0..n).map(|j| sigma[i][j] * k_psi[j] as i64).sum())
        .collect();
    let k_phi: Vec<i64> = k_phi.iter().map(|&x| x as i64).collect();
    Ok(mu_pairing(&k_phi, &twisted, g))
}

/// The abelianized bar Fox gradient of the boundary word: the vector fixed
/// by r_a(phi) for boundary-fixing phi with trivial homology action.
pub fn invariant_vector(g: u16) -> Vec<LaurentPolynomial> {
    fox_gradient(&boundary_word(g))
        .iter()
        .map(|d| d.bar().abelianize())
        .collect()
}

/// sum_i (gamma_i^-1 - 1) a_ij == gamma_j^-1 - 1 for every column j.
pub fn check_g_condition(m: &Matrix<LaurentPolynomial>) -> bool {
    assert!(m.is_square());
    let n = m.rows();
    let rank = m.ring_rank();
    assert_eq!(rank as usize, n, "square matrix over Z[H] with H-rank = size");
    let basis_term = |i: usize| {
        LaurentPolynomial::gen_pow(rank, i as u16, -1).sub(&LaurentPolynomial::one(rank))
    };
    for j in 0..n {
        let mut acc = LaurentPolynomial::zero(rank);
        for i in 0..n {
            acc = acc.add(&basis_term(i + 1).mul(m.get(i, j)));
        }
        if acc != basis_term(j + 1) {
            return false;
        }
    }
    true
}

/// The (unreduced) Burau matrix of a braid word on n strands: the Magnus
/// matrix with every strand generator specialized to the single variable t.
pub fn burau(strands: u16, word: &[i32]) -> Result<Matrix<LaurentPolynomial>> {
    let phi = braid_endomorphism(strands, word)?;
    let m = magnus(&phi)?;
    Ok(reduce_matrix(&m, &Reduction::Specialize(vec![1; strands as usize])))
}

/// The Gassner representation of a pure braid, over Z[H_1].
pub fn gassner(strands: u16, word: &[i32]) -> Result<Matrix<LaurentPolynomial>> {
    if !is_pure_braid(strands, word)? {
        return Err(Error::NonPureBraid);
    }
    let phi = braid_endomorphism(strands, word)?;
    magnus_abelian(&phi)
}
