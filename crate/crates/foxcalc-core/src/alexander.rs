//! Alexander polynomials: Wirtinger knot inputs, mapping-torus and
//! open-book presentations of boundary-fixing automorphisms, the fibered
//! formula det(I - t sigma), and the Seifert-cylinder factorization check.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::cylinder::{magnus_from_blocks, AdmissiblePresentation};
use crate::error::{Error, Result};
use crate::fox::fox_word;
use crate::magnus::{magnus_abelian, sigma_matrix};
use crate::matrix::Matrix;
use crate::ring::{LaurentFraction, LaurentPolynomial, RingElem};
use crate::words::{boundary_word, fixes_boundary, Endomorphism, GroupPresentation, Word};

/// A knot group presentation with one redundant Wirtinger relator already
/// discarded: k+1 generators, k relators, every relator degree-balanced
/// (all meridians specialize to the same variable t).
#[derive(Clone, Debug)]
pub struct WirtingerInput {
    presentation: GroupPresentation,
}

impl WirtingerInput {
    pub fn new(presentation: GroupPresentation) -> Result<Self> {
        let n = presentation.rank as usize;
        if presentation.relators.len() + 1 != n {
            return Err(Error::DegeneratePresentation(format!(
                "need {} relators for {} generators, got {}",
                n - 1,
                n,
                presentation.relators.len()
            )));
        }
        for (j, r) in presentation.relators.iter().enumerate() {
            let total: i64 = r.exponent_vector().iter().sum();
            if total != 0 {
                return Err(Error::DegeneratePresentation(format!(
                    "relator {} is not degree-balanced",
                    j + 1
                )));
            }
        }
        Ok(WirtingerInput { presentation })
    }

    pub fn presentation(&self) -> &GroupPresentation {
        &self.presentation
    }
}

/// Canonical knot-polynomial representative: lowest exponent zero, positive
/// leading coefficient.
fn knot_normal_form(p: &LaurentPolynomial) -> LaurentPolynomial {
    match p.min_exponents() {
        None => p.clone(),
        Some(min) => {
            let shift: Vec<i32> = min.iter().map(|&x| -x).collect();
            let shifted = p.shifted_by(&shift);
            match shifted.leading() {
                Some((_, c)) if c < 0 => shifted.neg(),
                _ => shifted,
            }
        }
    }
}

/// The Alexander polynomial from a Wirtinger input: determinant of the
/// k×k matrix of bar Fox derivatives (last generator row dropped),
/// specialized at every generator -> t.
pub fn alexander_knot(input: &WirtingerInput) -> Result<LaurentPolynomial> {
    let p = input.presentation();
    let n = p.rank as usize;
    let k = n - 1;
    let all_t: Vec<Vec<i32>> = vec![vec![1]; n];
    let mut m = Matrix::zero(k, k, 1);
    for (j, r) in p.relators.iter().enumerate() {
        for i in 1..=k {
            m.set(i - 1, j, fox_word(r, i)?.bar().abelianize().substitute(&all_t, 1));
        }
    }
    let d = m.det();
    if d.is_zero() {
        return Err(Error::DegeneratePresentation(String::from(
            "Alexander determinant vanishes",
        )));
    }
    let canon = knot_normal_form(&d);
    if canon.trivializer().abs() != 1 {
        return Err(Error::DegeneratePresentation(String::from(
            "determinant does not evaluate to ±1 at t = 1",
        )));
    }
    Ok(canon)
}

/// pi_1 of the mapping torus of (Sigma, phi) rel boundary: generators
/// gamma_1..gamma_2g and the suspension lambda (index 2g+1), relators
/// gamma_i lambda phi(gamma_i)^-1 lambda^-1.
pub fn mapping_torus_boundary_presentation(
    phi: &Endomorphism,
    g: u16,
) -> Result<GroupPresentation> {
    if !fixes_boundary(phi, g)? {
        return Err(Error::BoundaryNotFixed);
    }
    let rank = 2 * g + 1;
    let lam = Word::gen(rank, rank as usize)?;
    let mut relators = Vec::with_capacity(2 * g as usize);
    for j in 1..=2 * g as usize {
        let gj = Word::gen(rank, j)?;
        let img = phi.image(j).extend_rank(rank)?;
        relators.push(gj.mul(&lam)?.mul(&img.inverse())?.mul(&lam.inverse())?);
    }
    GroupPresentation::new(rank, relators)
}

/// The closed mapping torus: the boundary presentation plus the boundary
/// relator.
pub fn mapping_torus_closed_presentation(
    phi: &Endomorphism,
    g: u16,
) -> Result<GroupPresentation> {
    let open = mapping_torus_boundary_presentation(phi, g)?;
    let rank = 2 * g + 1;
    let mut relators = open.relators.to_vec();
    relators.push(boundary_word(g).extend_rank(rank)?);
    GroupPresentation::new(rank, relators)
}

/// pi_1 of the open-book closure: relators gamma_i phi(gamma_i)^-1.
pub fn closure_presentation(phi: &Endomorphism, g: u16) -> Result<GroupPresentation> {
    if !fixes_boundary(phi, g)? {
        return Err(Error::BoundaryNotFixed);
    }
    let rank = 2 * g;
    let mut relators = Vec::with_capacity(2 * g as usize);
    for j in 1..=2 * g as usize {
        relators.push(Word::gen(rank, j)?.mul(&phi.image(j).inverse())?);
    }
    GroupPresentation::new(rank, relators)
}

/// Alexander fraction of the mapping torus of a homologically trivial
/// automorphism: det(lambda I - bar r(phi)) / (1 - lambda)^2 over
/// Z[gamma_1^±..gamma_2g^±, lambda^±].
pub fn mapping_torus_alexander(phi: &Endomorphism, g: u16) -> Result<LaurentFraction> {
    if phi.rank() != 2 * g {
        return Err(Error::RankMismatch { left: phi.rank(), right: 2 * g });
    }
    let n = 2 * g as usize;
    let sigma = sigma_matrix(phi);
    for (i, row) in sigma.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            if v != i64::from(i == j) {
                return Err(Error::HomologyActionNontrivial);
            }
        }
    }
    let r = magnus_abelian(phi)?;
    let rank = 2 * g + 1;
    let lam = LaurentPolynomial::gen(rank, rank);
    let mut m = Matrix::zero(n, n, rank);
    for i in 0..n {
        for j in 0..n {
            let mut e = r.get(i, j).bar().extend_rank(rank).neg();
            if i == j {
                e = e.add(&lam);
            }
            m.set(i, j, e);
        }
    }
    let det = m.det();
    let one_minus_lam = LaurentPolynomial::one(rank).sub(&lam);
    LaurentFraction::new(det, one_minus_lam.pow(2))
}

/// Alexander polynomial of the fibered open book: det(I - t sigma(phi)).
pub fn fibered_alexander(phi: &Endomorphism, g: u16) -> Result<LaurentPolynomial> {
    if !fixes_boundary(phi, g)? {
        return Err(Error::BoundaryNotFixed);
    }
    let sigma = sigma_matrix(phi);
    let n = 2 * g as usize;
    let mut m = Matrix::zero(n, n, 1);
    for i in 0..n {
        for j in 0..n {
            let mut e = LaurentPolynomial::from_exps(1, &[1], -sigma[i][j]);
            if i == j {
                e = e.add(&LaurentPolynomial::one(1));
            }
            m.set(i, j, e);
        }
    }
    Ok(m.det())
}

/// A cylinder over a Seifert surface together with the linking numbers of
/// its generators with the knot (the exponents of the abelian cover map).
#[derive(Clone, Debug)]
pub struct SeifertCylinderInput {
    cylinder: AdmissiblePresentation,
    rho1: Vec<i64>,
}

impl SeifertCylinderInput {
    pub fn new(cylinder: AdmissiblePresentation, rho1: Vec<i64>) -> Result<Self> {
        if rho1.len() != cylinder.rank() as usize {
            return Err(Error::RankMismatch {
                left: rho1.len() as u16,
                right: cylinder.rank(),
            });
        }
        if !cylinder.validate().passed() {
            return Err(Error::NotACylinder(String::from(
                "Seifert cylinder fails validation",
            )));
        }
        for (j, r) in cylinder.relators().iter().enumerate() {
            let total: i64 = r
                .exponent_vector()
                .iter()
                .zip(rho1.iter())
                .map(|(e, w)| e * w)
                .sum();
            if total != 0 {
                return Err(Error::Rho1Inconsistent { relator: j });
            }
        }
        Ok(SeifertCylinderInput { cylinder, rho1 })
    }

    pub fn cylinder(&self) -> &AdmissiblePresentation {
        &self.cylinder
    }

    pub fn rho1(&self) -> &[i64] {
        &self.rho1
    }
}

/// The abelian-cover factorization of the knot polynomial:
/// delta ≐ det((A;B) at rho1) · det(I - t · r_rho1(M)).
pub fn factorization_check(s: &SeifertCylinderInput, delta: &LaurentPolynomial) -> Result<bool> {
    assert_eq!(delta.rank_of(), 1, "knot polynomial lives in one variable");
    let cyl = s.cylinder();
    let g2 = 2 * cyl.genus() as usize;
    let n = g2 + cyl.extra_count() as usize;
    let raw = cyl.fox_rows_abelian()?;
    let images: Vec<Vec<i32>> = s
        .rho1()
        .iter()
        .map(|&e| vec![i32::try_from(e).expect("exponent overflow")])
        .collect();
    let specialized = raw.map(1, |p| p.substitute(&images, 1));
    let mut ab = Matrix::zero(n, n, 1);
    let mut c = Matrix::zero(g2, n, 1);
    for j in 0..n {
        for i in 0..n {
            ab.set(i, j, specialized.get(i, j).clone());
        }
        for i in 0..g2 {
            c.set(i, j, specialized.get(n + i, j).clone());
        }
    }
    let det_ab = ab.det();
    if det_ab.is_zero() {
        return Err(Error::DegeneratePresentation(String::from(
            "rho1-image of the relator Jacobian is singular",
        )));
    }
    let r = magnus_from_blocks(&ab, &c, g2)?;
    let t = LaurentFraction::from_poly(LaurentPolynomial::gen(1, 1));
    let mut m = Matrix::zero(g2, g2, 1);
    for i in 0..g2 {
        for j in 0..g2 {
            let mut e = t.mul(r.get(i, j)).neg();
            if i == j {
                e = e.add(&LaurentFraction::constant(1, 1));
            }
            m.set(i, j, e);
        }
    }
    let rhs = LaurentFraction::from_poly(det_ab).mul(&m.det());
    let lhs = LaurentFraction::from_poly(delta.clone());
    Ok(lhs.eq_up_to_unit(&rhs).is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::magnus::twist_catalogue;
    use crate::ring::{parse_fraction, parse_laurent};
    use crate::words::{braid_endomorphism, parse_word};

    fn w(text: &str, rank: u16) -> Word {
        parse_word(text, rank).unwrap()
    }

    fn lp(text: &str, rank: u16) -> LaurentPolynomial {
        parse_laurent(text, rank).unwrap()
    }

    fn wirtinger(rank: u16, relators: &[&str]) -> WirtingerInput {
        let rels = relators.iter().map(|t| w(t, rank)).collect();
        WirtingerInput::new(GroupPresentation::new(rank, rels).unwrap()).unwrap()
    }

    fn trefoil() -> WirtingerInput {
        wirtinger(3, &["x1 x2 x1^-1 x3^-1", "x2 x3 x2^-1 x1^-1"])
    }

    fn figure_eight() -> WirtingerInput {
        let phi = braid_endomorphism(3, &[1, -2, 1, -2]).unwrap();
        let rels = (1..=2)
            .map(|i| Word::gen(3, i).unwrap().mul(&phi.image(i).inverse()).unwrap())
            .collect();
        WirtingerInput::new(GroupPresentation::new(3, rels).unwrap()).unwrap()
    }

    fn eq_up_to_unit_1var(a: &LaurentPolynomial, b: &LaurentPolynomial) -> bool {
        LaurentFraction::from_poly(a.clone())
            .eq_up_to_unit(&LaurentFraction::from_poly(b.clone()))
            .is_some()
    }

    #[test]
    fn unknot_and_trefoil() {
        let unknot = WirtingerInput::new(GroupPresentation::new(1, vec![]).unwrap()).unwrap();
        assert_eq!(alexander_knot(&unknot).unwrap(), LaurentPolynomial::one(1));
        let delta = alexander_knot(&trefoil()).unwrap();
        assert_eq!(delta, lp("g1^2 + -1*g1 + 1", 1));
        // Symmetry under t -> t^-1.
        assert!(eq_up_to_unit_1var(&delta, &delta.bar()));
    }

    #[test]
    fn figure_eight_polynomial() {
        let delta = alexander_knot(&figure_eight()).unwrap();
        assert_eq!(delta, lp("g1^2 + -3*g1 + 1", 1));
        assert!(eq_up_to_unit_1var(&delta, &delta.bar()));
    }

    #[test]
    fn wirtinger_invariances() {
        // Relator order.
        let reordered = wirtinger(3, &["x2 x3 x2^-1 x1^-1", "x1 x2 x1^-1 x3^-1"]);
        assert!(eq_up_to_unit_1var(
            &alexander_knot(&trefoil()).unwrap(),
            &alexander_knot(&reordered).unwrap()
        ));
        // Generator relabeling (cyclic x1 -> x2 -> x3 -> x1).
        let relabeled = {
            let map = [2usize, 3, 1];
            let rels = trefoil()
                .presentation()
                .relators
                .iter()
                .map(|r| r.relabel(3, &map).unwrap())
                .collect();
            WirtingerInput::new(GroupPresentation::new(3, rels).unwrap()).unwrap()
        };
        assert!(eq_up_to_unit_1var(
            &alexander_knot(&trefoil()).unwrap(),
            &alexander_knot(&relabeled).unwrap()
        ));
        // Structural rejections.
        assert!(matches!(
            WirtingerInput::new(GroupPresentation::new(3, vec![w("x1 x2 x1^-1 x3^-1", 3)]).unwrap()),
            Err(Error::DegeneratePresentation(_))
        ));
        assert!(matches!(
            WirtingerInput::new(
                GroupPresentation::new(2, vec![w("x1 x2", 2)]).unwrap()
            ),
            Err(Error::DegeneratePresentation(_))
        ));
    }

    #[test]
    fn mapping_torus_presentations() {
        let id = Endomorphism::identity(2);
        let closure = closure_presentation(&id, 1).unwrap();
        for r in &closure.relators {
            assert!(r.is_identity());
        }
        let cat = twist_catalogue(1).unwrap();
        let t1 = &cat[0].1;
        let open = mapping_torus_boundary_presentation(t1, 1).unwrap();
        assert_eq!(open.rank, 3);
        assert_eq!(open.relators.len(), 2);
        for (j, r) in open.relators.iter().enumerate() {
            let expect = 1 + t1.image(j + 1).len() + 2;
            assert_eq!(r.len(), expect, "relator length |gamma| + |phi(gamma)| + 2");
        }
        let positive_lambda: usize = open
            .relators
            .iter()
            .map(|r| r.letters().iter().filter(|&&l| l == 3).count())
            .sum();
        assert_eq!(positive_lambda, 2, "lambda appears once per relator");
        let closed = mapping_torus_closed_presentation(t1, 1).unwrap();
        assert_eq!(closed.relators.len(), 3);
        assert_eq!(*closed.relators.last().unwrap(), boundary_word(1).extend_rank(3).unwrap());
        let swap = Endomorphism::new(2, vec![w("x2", 2), w("x1", 2)]).unwrap();
        assert!(matches!(
            mapping_torus_boundary_presentation(&swap, 1),
            Err(Error::BoundaryNotFixed)
        ));
    }

    #[test]
    fn mapping_torus_alexander_values() {
        // Identity: (lambda - 1)^2g / (1 - lambda)^2 ≐ (1 - lambda)^(2g-2).
        for g in 1..=3u16 {
            let f = mapping_torus_alexander(&Endomorphism::identity(2 * g), g).unwrap();
            let rank = 2 * g + 1;
            let one_minus = LaurentPolynomial::one(rank)
                .sub(&LaurentPolynomial::gen(rank, rank))
                .pow(2 * g as u32 - 2);
            assert!(f.eq_up_to_unit(&LaurentFraction::from_poly(one_minus)).is_some());
        }
        assert!(mapping_torus_alexander(&Endomorphism::identity(2), 1)
            .unwrap()
            .is_one());
        // Nontrivial homology action is rejected.
        let cat = twist_catalogue(1).unwrap();
        assert!(matches!(
            mapping_torus_alexander(&cat[0].1, 1),
            Err(Error::HomologyActionNontrivial)
        ));
        // Direct 2x2 expansion oracle for two Torelli-type automorphisms.
        let deep = Endomorphism::new(2, vec![w("x1 x1 x2 x1^-1 x2^-1", 2), w("x2", 2)]).unwrap();
        let boundary = cat.last().unwrap().1.clone();
        for phi in [deep, boundary] {
            let f = mapping_torus_alexander(&phi, 1).unwrap();
            let r = magnus_abelian(&phi).unwrap();
            let lam = LaurentPolynomial::gen(3, 3);
            let e = |i: usize, j: usize| r.get(i, j).bar().extend_rank(3);
            let det = lam
                .sub(&e(0, 0))
                .mul(&lam.sub(&e(1, 1)))
                .sub(&e(0, 1).mul(&e(1, 0)));
            let den = LaurentPolynomial::one(3).sub(&lam).pow(2);
            assert_eq!(f, LaurentFraction::new(det, den).unwrap());
        }
    }

    #[test]
    fn fibered_formula() {
        assert_eq!(
            fibered_alexander(&Endomorphism::identity(2), 1).unwrap(),
            lp("1 + -2*g1 + g1^2", 1)
        );
        assert_eq!(
            fibered_alexander(&Endomorphism::identity(4), 2).unwrap(),
            lp("1 + -1*g1", 1).pow(4)
        );
        let cat = twist_catalogue(1).unwrap();
        let t1 = &cat[0].1;
        let s1 = &cat[1].1;
        let monodromy = t1.compose(s1).unwrap();
        let delta = fibered_alexander(&monodromy, 1).unwrap();
        assert!(eq_up_to_unit_1var(&delta, &lp("g1^2 + -1*g1 + 1", 1)));
        assert!(eq_up_to_unit_1var(&delta, &alexander_knot(&trefoil()).unwrap()));
        // Characteristic-polynomial conjugation invariance.
        let ab = t1.compose(s1).unwrap();
        let ba = s1.compose(t1).unwrap();
        assert_eq!(
            fibered_alexander(&ab, 1).unwrap(),
            fibered_alexander(&ba, 1).unwrap()
        );
        let swap = Endomorphism::new(2, vec![w("x2", 2), w("x1", 2)]).unwrap();
        assert!(matches!(fibered_alexander(&swap, 1), Err(Error::BoundaryNotFixed)));
    }

    /// Genus-1 Seifert cylinder of the trefoil fiber surface:
    /// m1 m2 | z1 z2 z3 | p1 p2 at indices 1..7.
    fn fiber_cylinder() -> AdmissiblePresentation {
        let rank = 7;
        let relators = vec![
            Word::from_letters(rank, &[3, 4, 5]).unwrap(),
            Word::from_letters(rank, &[1, -5]).unwrap(),
            Word::from_letters(rank, &[2, -5, -3]).unwrap(),
            Word::from_letters(rank, &[6, 4]).unwrap(),
            Word::from_letters(rank, &[7, -3]).unwrap(),
        ];
        AdmissiblePresentation::new(1, 3, relators).unwrap()
    }

    /// Genus-1 Seifert cylinder of a non-fiber Seifert surface of the same
    /// knot: m1 m2 | z1..z9 | p1 p2 at indices 1..13.
    fn nonfiber_cylinder() -> AdmissiblePresentation {
        let rank = 13;
        let relators = vec![
            Word::from_letters(rank, &[3, 4, 5]).unwrap(),
            Word::from_letters(rank, &[3, 11, 10]).unwrap(),
            Word::from_letters(rank, &[6, 7, -6, -4]).unwrap(),
            Word::from_letters(rank, &[-6, 7, -5, -7]).unwrap(),
            Word::from_letters(rank, &[5, 8, -5, 6]).unwrap(),
            Word::from_letters(rank, &[9, 7, 10, -7]).unwrap(),
            Word::from_letters(rank, &[-9, 11, 9, -7]).unwrap(),
            Word::from_letters(rank, &[1, 3, 9, -6, 4, -7, 5, -10, 7]).unwrap(),
            Word::from_letters(rank, &[2, -10, 9, -6, -3]).unwrap(),
            Word::from_letters(rank, &[12, 9, -6, 4, -7, 5, -10, 7]).unwrap(),
            Word::from_letters(rank, &[13, 9, -6, -3]).unwrap(),
        ];
        AdmissiblePresentation::new(1, 9, relators).unwrap()
    }

    #[test]
    fn seifert_cylinder_goldens() {
        let expected_r = [
            ["1", "g2^-1"],
            ["-g1^-1*g2", "1 + -1*g1^-1"],
        ];
        for p in [fiber_cylinder(), nonfiber_cylinder()] {
            assert!(p.validate().passed());
            let r = p.magnus_cylinder().unwrap();
            for (i, row) in expected_r.iter().enumerate() {
                for (j, text) in row.iter().enumerate() {
                    assert_eq!(*r.get(i, j), parse_fraction(text, 2).unwrap(), "r[{i}][{j}]");
                }
            }
            assert!(p.rhat_relation_check().unwrap());
            assert!(p.check_symplectic_cylinder().unwrap());
        }
        // The fiber cylinder has unit torsion; the other does not.
        assert_eq!(fiber_cylinder().torsion_plus().unwrap(), LaurentPolynomial::one(2));
        let tau = nonfiber_cylinder().torsion_plus().unwrap();
        let display = lp(
            "3 + -1*g1^-1 + -1*g1 + -1*g1*g2^-1 + g1^2*g2^-1 + g1^-2*g2 + -1*g1^-1*g2",
            2,
        );
        assert!(LaurentFraction::from_poly(tau)
            .eq_up_to_unit(&LaurentFraction::from_poly(display))
            .is_some());
    }

    #[test]
    fn factorization() {
        let delta = alexander_knot(&trefoil()).unwrap();
        for p in [fiber_cylinder(), nonfiber_cylinder()] {
            let rho = vec![0i64; p.rank() as usize];
            let input = SeifertCylinderInput::new(p, rho).unwrap();
            assert!(factorization_check(&input, &delta).unwrap());
            let wrong = alexander_knot(&figure_eight()).unwrap();
            assert!(!factorization_check(&input, &wrong).unwrap());
        }
        // Inconsistent linking exponents are rejected.
        let mut rho = vec![0i64; 7];
        rho[2] = 1;
        assert!(matches!(
            SeifertCylinderInput::new(fiber_cylinder(), rho),
            Err(Error::Rho1Inconsistent { relator: 0 })
        ));
        // Degenerate genus-0 inputs cannot be constructed.
        assert!(matches!(
            AdmissiblePresentation::new(0, 0, vec![]),
            Err(Error::DegeneratePresentation(_))
        ));
    }
}
