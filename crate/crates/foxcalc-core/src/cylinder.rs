//! Homology cylinders given by admissible presentations: validation, the
//! abelian marking, the A/B/C Fox-Jacobian blocks, the Magnus matrix over
//! the fraction field, the torsion determinant, and composition.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fox::fox_word;
use crate::magnus::{jtilde, sigma_substitution};
use crate::matrix::{det_i64, inverse_unimodular, mat_mul_i64, smith_normal_form, Matrix};
use crate::ring::{LaurentFraction, LaurentPolynomial, RingElem};
use crate::words::{fixes_boundary, Endomorphism, Word};

/// A deficiency-2g presentation of a cylinder over a genus-g surface.
/// Generators are ordered: bottom boundary images m1..m2g, auxiliary
/// generators z1..zl, top boundary images p1..p2g.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissiblePresentation {
    genus: u16,
    extra: u16,
    relators: Vec<Word>,
}

#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub checks: Vec<(String, bool)>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

impl AdmissiblePresentation {
    pub fn new(genus: u16, extra: u16, relators: Vec<Word>) -> Result<Self> {
        if genus == 0 {
            return Err(Error::DegeneratePresentation(String::from("genus must be positive")));
        }
        let rank = 4 * genus + extra;
        let expected = (2 * genus + extra) as usize;
        if relators.len() != expected {
            return Err(Error::DegeneratePresentation(format!(
                "expected {expected} relators, got {}",
                relators.len()
            )));
        }
        for r in &relators {
            if r.rank() != rank {
                return Err(Error::RankMismatch { left: r.rank(), right: rank });
            }
        }
        Ok(AdmissiblePresentation { genus, extra, relators })
    }

    pub fn genus(&self) -> u16 {
        self.genus
    }

    pub fn extra_count(&self) -> u16 {
        self.extra
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// Total generator count 4g + l; words live at this rank.
    pub fn rank(&self) -> u16 {
        4 * self.genus + self.extra
    }

    /// 1-based generator index of the j-th bottom generator (j in 1..=2g).
    pub fn minus_index(&self, j: usize) -> usize {
        j
    }

    /// 1-based generator index of the i-th auxiliary generator (i in 1..=l).
    pub fn extra_index(&self, i: usize) -> usize {
        2 * self.genus as usize + i
    }

    /// 1-based generator index of the j-th top generator (j in 1..=2g).
    pub fn plus_index(&self, j: usize) -> usize {
        2 * self.genus as usize + self.extra as usize + j
    }

    pub fn generator_name(&self, index: usize) -> String {
        let g2 = 2 * self.genus as usize;
        let l = self.extra as usize;
        if index <= g2 {
            format!("m{index}")
        } else if index <= g2 + l {
            format!("z{}", index - g2)
        } else {
            format!("p{}", index - g2 - l)
        }
    }

    /// Exponent sums of every generator in every relator:
    /// rows = generators (4g+l), columns = relators (2g+l).
    fn exponent_rows(&self) -> Vec<Vec<i64>> {
        let ngen = self.rank() as usize;
        let mut rows = vec![vec![0i64; self.relators.len()]; ngen];
        for (j, r) in self.relators.iter().enumerate() {
            for (i, e) in r.exponent_vector().into_iter().enumerate() {
                rows[i][j] = e;
            }
        }
        rows
    }

    /// The abelian marking: for each generator, its first-homology class in
    /// the basis of the top generators. Top generators map to the standard
    /// basis; the rest are solved from the abelianized relators.
    pub fn marking_q2(&self) -> Result<Vec<Vec<i64>>> {
        let g2 = 2 * self.genus as usize;
        let l = self.extra as usize;
        let n = g2 + l;
        let rows = self.exponent_rows();
        // S: bottom∪auxiliary rows; P: top rows.
        let s: Vec<Vec<i64>> = rows[..n].to_vec();
        let p: Vec<Vec<i64>> = rows[n..].to_vec();
        let st: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|k| s[k][i]).collect()).collect();
        let inv = inverse_unimodular(&st).ok_or_else(|| {
            Error::DegeneratePresentation(String::from(
                "trivialized relator matrix is not unimodular",
            ))
        })?;
        let rhs: Vec<Vec<i64>> = (0..n).map(|r| (0..g2).map(|c| -p[c][r]).collect()).collect();
        let v = mat_mul_i64(&inv, &rhs);
        let mut marking = v;
        for j in 0..g2 {
            let mut e = vec![0i64; g2];
            e[j] = 1;
            marking.push(e);
        }
        Ok(marking)
    }

    /// The homology action: column j is the class of the j-th bottom
    /// generator in the top basis.
    pub fn sigma2(&self) -> Result<Vec<Vec<i64>>> {
        let g2 = 2 * self.genus as usize;
        let marking = self.marking_q2()?;
        Ok((0..g2).map(|i| (0..g2).map(|j| marking[j][i]).collect()).collect())
    }

    pub fn validate(&self) -> ValidationReport {
        let g2 = 2 * self.genus as usize;
        let l = self.extra as usize;
        let n = g2 + l;
        let mut checks = Vec::new();
        let rows = self.exponent_rows();
        let s: Vec<Vec<i64>> = rows[..n].to_vec();
        let unimodular = det_i64(&s).abs() == 1;
        checks.push((String::from("trivialized relator matrix unimodular"), unimodular));
        let snf = smith_normal_form(&rows);
        let free = snf.len() == n && snf.iter().all(|&f| f == 1);
        checks.push((String::from("first homology free of rank 2g"), free));
        let minus_basis = match self.sigma2() {
            Ok(sig) => det_i64(&sig).abs() == 1,
            Err(_) => false,
        };
        checks.push((String::from("bottom classes form a homology basis"), minus_basis));
        ValidationReport { checks }
    }

    /// Bar Fox derivatives of all relators over the free group ring,
    /// abelianized but not yet pushed through the marking: rows = all
    /// generators (4g+l), columns = relators.
    pub fn fox_rows_abelian(&self) -> Result<Matrix<LaurentPolynomial>> {
        let ngen = self.rank() as usize;
        let ncols = self.relators.len();
        let mut m = Matrix::zero(ngen, ncols, self.rank());
        for (j, r) in self.relators.iter().enumerate() {
            for i in 1..=ngen {
                m.set(i - 1, j, fox_word(r, i)?.bar().abelianize());
            }
        }
        Ok(m)
    }

    /// The A (bottom rows), B (auxiliary rows), C (top rows) blocks of the
    /// marked Fox Jacobian over Z[H].
    pub fn abc_matrices(
        &self,
    ) -> Result<(Matrix<LaurentPolynomial>, Matrix<LaurentPolynomial>, Matrix<LaurentPolynomial>)>
    {
        let g2 = 2 * self.genus as usize;
        let l = self.extra as usize;
        let marking = self.marking_q2()?;
        let images: Vec<Vec<i32>> = marking
            .iter()
            .map(|v| v.iter().map(|&x| i32::try_from(x).expect("exponent overflow")).collect())
            .collect();
        let raw = self.fox_rows_abelian()?;
        let marked = raw.map(2 * self.genus, |e| e.substitute(&images, 2 * self.genus));
        let ncols = self.relators.len();
        let mut a = Matrix::zero(g2, ncols, 2 * self.genus);
        let mut b = Matrix::zero(l, ncols, 2 * self.genus);
        let mut c = Matrix::zero(g2, ncols, 2 * self.genus);
        for j in 0..ncols {
            for i in 0..g2 {
                a.set(i, j, marked.get(i, j).clone());
                c.set(i, j, marked.get(g2 + l + i, j).clone());
            }
            for i in 0..l {
                b.set(i, j, marked.get(g2 + i, j).clone());
            }
        }
        Ok((a, b, c))
    }

    /// The Magnus matrix r(M) = -C · (A;B)^-1 · (I_2g; 0) over the fraction
    /// field of Z[H].
    pub fn magnus_cylinder(&self) -> Result<Matrix<LaurentFraction>> {
        let (a, b, c) = self.abc_matrices()?;
        let ab = a.vstack(&b);
        magnus_from_blocks(&ab, &c, 2 * self.genus as usize)
    }

    /// det(A;B) in canonical unit-normal form; the torsion class up to ±H.
    pub fn torsion_plus(&self) -> Result<LaurentPolynomial> {
        Ok(self.stacked_det()?.unit_normal_form())
    }

    /// det(A;B) as computed, with no unit normalization.
    pub fn stacked_det(&self) -> Result<LaurentPolynomial> {
        let (a, b, _) = self.abc_matrices()?;
        let d = a.vstack(&b).det();
        if d.is_zero() {
            return Err(Error::DegeneratePresentation(String::from(
                "relator Jacobian is singular",
            )));
        }
        Ok(d)
    }

    /// det r(M) == bar(tau) / tau up to ±H, tau = det(A;B).
    pub fn rhat_relation_check(&self) -> Result<bool> {
        let tau = self.stacked_det()?;
        let det_r = self.magnus_cylinder()?.det();
        let rhs = LaurentFraction::new(tau.bar(), tau)?;
        Ok(det_r.eq_up_to_unit(&rhs).is_some())
    }

    /// Twisted symplecticity over the fraction field:
    /// bar(r)^T · J-tilde · r == sigma2-image of J-tilde.
    pub fn check_symplectic_cylinder(&self) -> Result<bool> {
        let g = self.genus;
        let r = self.magnus_cylinder()?;
        let jt = jtilde(g).map(2 * g, |e| e.abelianize()).map(2 * g, |e| {
            LaurentFraction::from_poly(e.clone())
        });
        let lhs = r.map(2 * g, |e| e.bar()).transpose().mul(&jt).mul(&r);
        let images = sigma_substitution(&self.sigma2()?);
        let rhs = jt.try_map(2 * g, |e| e.twist(&images, 2 * g))?;
        Ok(lhs == rhs)
    }
}

/// r = -C · (A;B)^-1 · (I_k; 0) with k = 2g, over any coefficient rank;
/// the inverse columns are produced by Cramer's rule so that every entry
/// shares the single denominator det(A;B).
pub(crate) fn magnus_from_blocks(
    ab: &Matrix<LaurentPolynomial>,
    c: &Matrix<LaurentPolynomial>,
    k: usize,
) -> Result<Matrix<LaurentFraction>> {
    let n = ab.rows();
    let rank = ab.ring_rank();
    let d = ab.det();
    if d.is_zero() {
        return Err(Error::SingularMatrix);
    }
    // y[m][cc] = ((A;B)^-1)[m][cc] * d = (-1)^(m+cc) det(minor del row cc, col m).
    let mut y = vec![vec![LaurentPolynomial::zero(rank); k]; n];
    for (m, row) in y.iter_mut().enumerate() {
        for (cc, slot) in row.iter_mut().enumerate() {
            let minor = ab.minor(cc, m).det();
            *slot = if (m + cc) % 2 == 0 { minor } else { minor.neg() };
        }
    }
    let mut r = Matrix::zero(c.rows(), k, rank);
    for i in 0..c.rows() {
        for cc in 0..k {
            let mut acc = LaurentPolynomial::zero(rank);
            for (m, row) in y.iter().enumerate() {
                acc = acc.add(&c.get(i, m).mul(&row[cc]));
            }
            r.set(i, cc, LaurentFraction::new(acc.neg(), d.clone())?);
        }
    }
    Ok(r)
}

/// The mapping cylinder of a boundary-fixing automorphism: no auxiliary
/// generators, relators m_j · (phi(gamma_j) written in the top letters)^-1.
pub fn from_mapping_class(phi: &Endomorphism, g: u16) -> Result<AdmissiblePresentation> {
    if phi.rank() != 2 * g {
        return Err(Error::RankMismatch { left: phi.rank(), right: 2 * g });
    }
    if !fixes_boundary(phi, g)? {
        return Err(Error::BoundaryNotFixed);
    }
    let g2 = 2 * g as usize;
    let rank = 4 * g;
    let plus_map: Vec<usize> = (1..=g2).map(|i| g2 + i).collect();
    let mut relators = Vec::with_capacity(g2);
    for j in 1..=g2 {
        let m = Word::gen(rank, j)?;
        let image_plus = phi.image(j).relabel(rank, &plus_map)?;
        relators.push(m.mul(&image_plus.inverse())?);
    }
    AdmissiblePresentation::new(g, 0, relators)
}

pub fn trivial_cylinder(g: u16) -> AdmissiblePresentation {
    from_mapping_class(&Endomorphism::identity(2 * g), g).expect("identity fixes the boundary")
}

/// Stack p1 on top of p2 by identifying the bottom of p1 with the top of p2,
/// then greedily eliminate auxiliary generators that occur exactly once in
/// some relator.
pub fn compose(
    p1: &AdmissiblePresentation,
    p2: &AdmissiblePresentation,
) -> Result<AdmissiblePresentation> {
    if p1.genus() != p2.genus() {
        return Err(Error::RankMismatch { left: p1.genus(), right: p2.genus() });
    }
    let g = p1.genus();
    let g2 = 2 * g as usize;
    let l1 = p1.extra_count() as usize;
    let l2 = p2.extra_count() as usize;
    let big_l = l1 + l2 + g2;
    let rank = 4 * g + big_l as u16;
    // p1: bottom -> middle, auxiliary -> first auxiliary block, top -> top.
    let mut map1 = vec![0usize; (4 * g) as usize + l1];
    for j in 1..=g2 {
        map1[j - 1] = g2 + l1 + l2 + j;
        map1[g2 + l1 + j - 1] = g2 + big_l + j;
    }
    for i in 1..=l1 {
        map1[g2 + i - 1] = g2 + i;
    }
    // p2: bottom -> bottom, auxiliary -> second auxiliary block, top -> middle.
    let mut map2 = vec![0usize; (4 * g) as usize + l2];
    for j in 1..=g2 {
        map2[j - 1] = j;
        map2[g2 + l2 + j - 1] = g2 + l1 + l2 + j;
    }
    for i in 1..=l2 {
        map2[g2 + i - 1] = g2 + l1 + i;
    }
    let mut relators = Vec::with_capacity(2 * g2 + l1 + l2);
    for r in p1.relators() {
        relators.push(r.relabel(rank, &map1)?);
    }
    for r in p2.relators() {
        relators.push(r.relabel(rank, &map2)?);
    }
    let glued = eliminate_extras(g, big_l as u16, relators)?;
    let report = glued.validate();
    if !report.passed() {
        let failing: Vec<&str> = report
            .checks
            .iter()
            .filter(|(_, ok)| !ok)
            .map(|(name, _)| name.as_str())
            .collect();
        return Err(Error::NotACylinder(format!(
            "composition failed validation: {}",
            failing.join(", ")
        )));
    }
    Ok(glued)
}

/// Repeatedly remove (relator, auxiliary generator) pairs where the
/// generator occurs exactly once in the relator, substituting the solved
/// expression into the remaining relators.
fn eliminate_extras(g: u16, mut l: u16, mut relators: Vec<Word>) -> Result<AdmissiblePresentation> {
    let g2 = 2 * g as usize;
    'outer: loop {
        let rank = 4 * g + l;
        let lo = g2 + 1;
        let hi = g2 + l as usize;
        for (rel_idx, r) in relators.iter().enumerate() {
            for (pos, &letter) in r.letters().iter().enumerate() {
                let gen = letter.unsigned_abs() as usize;
                if gen < lo || gen > hi {
                    continue;
                }
                let occurrences = r
                    .letters()
                    .iter()
                    .filter(|&&x| x.unsigned_abs() as usize == gen)
                    .count();
                if occurrences != 1 {
                    continue;
                }
                // r = u e^s v = 1: e = u^-1 v^-1 if s = +1, e = v u if s = -1.
                let u = Word::from_letters(rank, &r.letters()[..pos])?;
                let v = Word::from_letters(rank, &r.letters()[pos + 1..])?;
                let expr = if letter > 0 {
                    u.inverse().mul(&v.inverse())?
                } else {
                    v.mul(&u)?
                };
                let mut images: Vec<Word> = (1..=rank as usize)
                    .map(|i| Word::gen(rank, i))
                    .collect::<Result<_>>()?;
                images[gen - 1] = expr;
                let subst = Endomorphism::new(rank, images)?;
                let mut relabel = vec![0usize; rank as usize];
                for (old, slot) in relabel.iter_mut().enumerate() {
                    let old1 = old + 1;
                    *slot = match old1.cmp(&gen) {
                        core::cmp::Ordering::Less => old1,
                        core::cmp::Ordering::Equal => 0,
                        core::cmp::Ordering::Greater => old1 - 1,
                    };
                }
                let mut next = Vec::with_capacity(relators.len() - 1);
                for (k, other) in relators.iter().enumerate() {
                    if k == rel_idx {
                        continue;
                    }
                    next.push(subst.apply(other)?.relabel(rank - 1, &relabel)?);
                }
                relators = next;
                l -= 1;
                continue 'outer;
            }
        }
        break;
    }
    AdmissiblePresentation::new(g, l, relators)
}

fn cylinder_generator_index(token: &str, g: u16, l: u16, pos: usize) -> Result<usize> {
    let g2 = 2 * g as usize;
    let err = |msg: String| Error::Parse { pos, msg };
    let (kind, digits) = if let Some(rest) = token.strip_prefix("i-(g") {
        ('m', rest.strip_suffix(')').ok_or_else(|| err(format!("malformed alias `{token}`")))?)
    } else if let Some(rest) = token.strip_prefix("i+(g") {
        ('p', rest.strip_suffix(')').ok_or_else(|| err(format!("malformed alias `{token}`")))?)
    } else {
        let mut chars = token.chars();
        let kind = chars.next().ok_or_else(|| err(String::from("empty generator name")))?;
        (kind, chars.as_str())
    };
    let n: usize = digits
        .parse()
        .map_err(|_| err(format!("bad generator index in `{token}`")))?;
    let (base, limit) = match kind {
        'm' => (0, g2),
        'z' => (g2, l as usize),
        'p' => (g2 + l as usize, g2),
        _ => return Err(err(format!("unknown generator `{token}`"))),
    };
    if n == 0 || n > limit {
        return Err(err(format!("generator index out of range in `{token}`")));
    }
    Ok(base + n)
}

fn parse_cylinder_word(text: &str, g: u16, l: u16, pos: usize) -> Result<Word> {
    let rank = 4 * g + l;
    let mut letters = Vec::new();
    for token in text.split_whitespace() {
        let (name, exp) = match token.rsplit_once('^') {
            Some((name, e)) => {
                let e: i64 = e.parse().map_err(|_| Error::Parse {
                    pos,
                    msg: format!("bad exponent in `{token}`"),
                })?;
                (name, e)
            }
            None => (token, 1),
        };
        let idx = cylinder_generator_index(name, g, l, pos)? as i32;
        let letter = if exp < 0 { -idx } else { idx };
        for _ in 0..exp.unsigned_abs() {
            letters.push(letter);
        }
    }
    Word::from_letters(rank, &letters)
}

/// Parse a cylinder file: a `genus <g>` line, an `extra <l>` line, then one
/// `rel <word>` line per relator over the generator names m1..m2g, z1..zl,
/// p1..p2g (with aliases i-(gk) for mk and i+(gk) for pk), and an optional
/// `rho1 <4g+l integers>` line of abelian-cover exponents.
pub fn parse_cylinder(text: &str) -> Result<(AdmissiblePresentation, Option<Vec<i64>>)> {
    let mut genus: Option<u16> = None;
    let mut extra: Option<u16> = None;
    let mut relators = Vec::new();
    let mut rho1: Option<Vec<i64>> = None;
    let mut offset = 0usize;
    for line in text.lines() {
        let pos = offset;
        offset += line.len() + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("genus") {
            genus = Some(rest.trim().parse().map_err(|_| Error::Parse {
                pos,
                msg: String::from("bad genus"),
            })?);
        } else if let Some(rest) = line.strip_prefix("extra") {
            extra = Some(rest.trim().parse().map_err(|_| Error::Parse {
                pos,
                msg: String::from("bad extra count"),
            })?);
        } else if let Some(rest) = line.strip_prefix("rho1") {
            let exps = rest
                .split_whitespace()
                .map(|t| {
                    t.parse().map_err(|_| Error::Parse {
                        pos,
                        msg: format!("bad rho1 exponent `{t}`"),
                    })
                })
                .collect::<Result<Vec<i64>>>()?;
            rho1 = Some(exps);
        } else if let Some(rest) = line.strip_prefix("rel") {
            let (g, l) = match (genus, extra) {
                (Some(g), Some(l)) => (g, l),
                _ => {
                    return Err(Error::Parse {
                        pos,
                        msg: String::from("genus and extra must precede rel lines"),
                    })
                }
            };
            relators.push(parse_cylinder_word(rest.trim(), g, l, pos)?);
        } else {
            return Err(Error::Parse { pos, msg: format!("unrecognized line `{line}`") });
        }
    }
    let g = genus.ok_or(Error::Parse { pos: 0, msg: String::from("missing genus line") })?;
    let l = extra.ok_or(Error::Parse { pos: 0, msg: String::from("missing extra line") })?;
    let p = AdmissiblePresentation::new(g, l, relators)?;
    if let Some(r) = &rho1 {
        if r.len() != p.rank() as usize {
            return Err(Error::Parse {
                pos: 0,
                msg: format!("rho1 needs {} exponents, got {}", p.rank(), r.len()),
            });
        }
    }
    Ok((p, rho1))
}

impl core::fmt::Display for AdmissiblePresentation {
    /// The canonical file form; `parse_cylinder` inverts it.
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        writeln!(f, "genus {}", self.genus)?;
        writeln!(f, "extra {}", self.extra)?;
        for r in &self.relators {
            writeln!(f, "rel {}", r.display_with(&|i| self.generator_name(i)))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::magnus::{magnus_abelian, check_symplectic, sigma_matrix, twist_catalogue};
    use crate::ring::{parse_fraction, parse_laurent};
    use crate::words::parse_word;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn rel(rank: u16, letters: &[i32]) -> Word {
        Word::from_letters(rank, letters).unwrap()
    }

    fn lp(text: &str, rank: u16) -> LaurentPolynomial {
        parse_laurent(text, rank).unwrap()
    }

    fn fr(text: &str, rank: u16) -> LaurentFraction {
        parse_fraction(text, rank).unwrap()
    }

    fn frac_matrix(m: &Matrix<LaurentPolynomial>) -> Matrix<LaurentFraction> {
        m.map(m.ring_rank(), |e| LaurentFraction::from_poly(e.clone()))
    }

    /// The string-link genus-2, one-auxiliary-generator example: generators
    /// m1..m4, z (index 5), p1..p4 (indices 6..9).
    fn example_presentation() -> AdmissiblePresentation {
        let rank = 9;
        let relators = vec![
            rel(rank, &[6, -3, 9, -1]),
            rel(rank, &[6, 8, -6, -8, 7, 5, -2, 3, 1, -3, -1]),
            rel(rank, &[9, 3, -9, -5]),
            rel(rank, &[3, -8, -3, 5]),
            rel(rank, &[4, -5, -9, 5]),
        ];
        AdmissiblePresentation::new(2, 1, relators).unwrap()
    }

    #[test]
    fn trivial_cylinder_basics() {
        for g in 1..=2u16 {
            let p = trivial_cylinder(g);
            assert!(p.validate().passed());
            let g2 = 2 * g as usize;
            let marking = p.marking_q2().unwrap();
            for j in 0..g2 {
                let mut e = vec![0i64; g2];
                e[j] = 1;
                assert_eq!(marking[j], e, "bottom generator {j} is marked trivially");
            }
            let (a, b, c) = p.abc_matrices().unwrap();
            assert_eq!(a, Matrix::identity(g2, 2 * g));
            assert_eq!(b.rows(), 0);
            assert_eq!(c, Matrix::<LaurentPolynomial>::identity(g2, 2 * g).neg());
            assert_eq!(p.magnus_cylinder().unwrap(), Matrix::identity(g2, 2 * g));
            assert_eq!(p.torsion_plus().unwrap(), LaurentPolynomial::one(2 * g));
            assert!(p.rhat_relation_check().unwrap());
            assert!(p.check_symplectic_cylinder().unwrap());
        }
    }

    #[test]
    fn mapping_class_cylinders_reduce_to_magnus() {
        for g in 1..=2u16 {
            for (name, phi) in twist_catalogue(g).unwrap() {
                let p = from_mapping_class(&phi, g).unwrap();
                assert!(p.validate().passed(), "{name}");
                assert_eq!(p.sigma2().unwrap(), sigma_matrix(&phi), "{name}");
                let expected = frac_matrix(&magnus_abelian(&phi).unwrap());
                assert_eq!(p.magnus_cylinder().unwrap(), expected, "{name}");
                assert_eq!(
                    p.torsion_plus().unwrap(),
                    LaurentPolynomial::one(2 * g),
                    "{name}: mapping cylinders have unit torsion"
                );
                assert!(p.rhat_relation_check().unwrap(), "{name}");
                assert!(p.check_symplectic_cylinder().unwrap(), "{name}");
                assert!(check_symplectic(&phi, g).unwrap(), "{name}");
            }
        }
    }

    #[test]
    fn boundary_violation_is_rejected() {
        let swap = Endomorphism::new(
            2,
            vec![parse_word("x2", 2).unwrap(), parse_word("x1", 2).unwrap()],
        )
        .unwrap();
        assert!(matches!(from_mapping_class(&swap, 1), Err(Error::BoundaryNotFixed)));
    }

    #[test]
    fn example_marking_and_blocks() {
        let p = example_presentation();
        assert!(p.validate().passed());
        let marking = p.marking_q2().unwrap();
        assert_eq!(marking[0], vec![1, 0, -1, 1], "m1 -> g1 g3^-1 g4");
        assert_eq!(marking[1], vec![0, 1, 1, 0], "m2 -> g2 g3");
        assert_eq!(marking[2], vec![0, 0, 1, 0], "m3 -> g3");
        assert_eq!(marking[3], vec![0, 0, 0, 1], "m4 -> g4");
        assert_eq!(marking[4], vec![0, 0, 1, 0], "z -> g3");

        let (a, b, c) = p.abc_matrices().unwrap();
        let ab = a.vstack(&b);
        let expected_ab = [
            ["-1", "g3^-1 + -1", "0", "0", "0"],
            ["0", "-1", "0", "0", "0"],
            ["-g1^-1*g3", "1 + -1*g1^-1*g3*g4^-1", "g4^-1", "1 + -1*g3", "0"],
            ["0", "0", "0", "0", "1"],
            ["0", "g2^-1", "-1", "g3", "g3 + -1*g3*g4^-1"],
        ];
        for (i, row) in expected_ab.iter().enumerate() {
            for (j, text) in row.iter().enumerate() {
                assert_eq!(*ab.get(i, j), lp(text, 4), "(A;B)[{i}][{j}]");
            }
        }
        let expected_c = [
            ["1", "1 + -1*g3^-1", "0", "0", "0"],
            ["0", "1", "0", "0", "0"],
            ["0", "g1^-1 + -1", "0", "-1", "0"],
            ["g1^-1*g3", "0", "1 + -1*g3^-1", "0", "-g3"],
        ];
        for (i, row) in expected_c.iter().enumerate() {
            for (j, text) in row.iter().enumerate() {
                assert_eq!(*c.get(i, j), lp(text, 4), "C[{i}][{j}]");
            }
        }
    }

    #[test]
    fn example_magnus_and_torsion_goldens() {
        let p = example_presentation();
        let r = p.magnus_cylinder().unwrap();
        let den = "g3^-1 + g4^-1 + -1";
        let expected = [
            ["1", "0", "0", "0"],
            ["0", "1", "0", "0"],
            [
                "(-g1^-1)/(DEN)",
                "(g2^-1*g3^-1*g4^-1 + -1*g4^-1 + 1)/(DEN)",
                "(g3^-1)/(DEN)",
                "(g4^-2 + -1*g4^-1)/(DEN)",
            ],
            [
                "(g1^-1*g3*g4^-1)/(DEN)",
                "(2*g2^-1*g3^-1 + -1*g2^-1 + -1 + -1*g2^-1*g3^-2 + g3^-1)/(DEN)",
                "(g3^-1 + -1)/(DEN)",
                "(-g3^-1*g4^-1 + g3^-1 + 2*g4^-1 + -1)/(DEN)",
            ],
        ];
        for (i, row) in expected.iter().enumerate() {
            for (j, text) in row.iter().enumerate() {
                let want = fr(&text.replace("DEN", den), 4);
                assert_eq!(*r.get(i, j), want, "r[{i}][{j}]");
            }
        }
        let want_det = fr(
            &format!("(g3^-1 + g4^-1 + -1*g3^-1*g4^-1)/({den})"),
            4,
        );
        assert_eq!(r.det(), want_det);

        let raw = p.stacked_det().unwrap();
        assert_eq!(raw, lp("g3 + -1 + -1*g3*g4^-1", 4));
        let tau = p.torsion_plus().unwrap();
        let display = lp("g3 + -1 + -1*g3*g4^-1", 4);
        assert!(LaurentFraction::from_poly(tau.clone())
            .eq_up_to_unit(&LaurentFraction::from_poly(display))
            .is_some());
        assert_eq!(tau, lp("1 + -1*g3^-1 + -1*g4^-1", 4));

        assert!(p.rhat_relation_check().unwrap());
        assert!(p.check_symplectic_cylinder().unwrap());
    }

    #[test]
    fn relator_permutation_leaves_magnus_invariant() {
        let p = example_presentation();
        let mut relators = p.relators().to_vec();
        relators.swap(0, 1);
        let q = AdmissiblePresentation::new(2, 1, relators).unwrap();
        assert_eq!(q.magnus_cylinder().unwrap(), p.magnus_cylinder().unwrap());
        assert_eq!(q.stacked_det().unwrap(), p.stacked_det().unwrap().neg());
        assert_eq!(q.torsion_plus().unwrap(), p.torsion_plus().unwrap());
    }

    #[test]
    fn composition_units_and_mapping_classes() {
        let t = trivial_cylinder(1);
        let tt = compose(&t, &t).unwrap();
        assert!(tt.validate().passed());
        assert_eq!(tt.magnus_cylinder().unwrap(), Matrix::identity(2, 2));
        assert_eq!(tt, t, "gluing two trivial cylinders reduces to one");

        let cat = twist_catalogue(1).unwrap();
        let phi = &cat[0].1;
        let psi = &cat[1].1;
        let left = compose(&from_mapping_class(phi, 1).unwrap(), &from_mapping_class(psi, 1).unwrap())
            .unwrap();
        let direct = from_mapping_class(&phi.compose(psi).unwrap(), 1).unwrap();
        assert_eq!(left, direct, "mapping cylinders compose to the composed class");

        let e = example_presentation();
        let t2 = trivial_cylinder(2);
        let right_unit = compose(&e, &t2).unwrap();
        assert_eq!(right_unit.magnus_cylinder().unwrap(), e.magnus_cylinder().unwrap());
        let left_unit = compose(&t2, &e).unwrap();
        assert_eq!(left_unit.magnus_cylinder().unwrap(), e.magnus_cylinder().unwrap());

        assert!(matches!(
            compose(&trivial_cylinder(1), &trivial_cylinder(2)),
            Err(Error::RankMismatch { .. })
        ));
    }

    fn twisted(
        r: &Matrix<LaurentFraction>,
        sigma: &[Vec<i64>],
    ) -> Matrix<LaurentFraction> {
        let images = sigma_substitution(sigma);
        r.try_map(r.ring_rank(), |e| e.twist(&images, r.ring_rank())).unwrap()
    }

    #[test]
    fn functoriality_of_magnus_and_torsion() {
        let mut rng = StdRng::seed_from_u64(91);
        let cat = twist_catalogue(1).unwrap();
        let mut pool: Vec<AdmissiblePresentation> = Vec::new();
        for _ in 0..6 {
            let mut phi = Endomorphism::identity(2);
            for _ in 0..rng.random_range(1..=3) {
                let pick = rng.random_range(0..cat.len());
                phi = phi.compose(&cat[pick].1).unwrap();
            }
            pool.push(from_mapping_class(&phi, 1).unwrap());
        }
        let mut pairs: Vec<(AdmissiblePresentation, AdmissiblePresentation)> = Vec::new();
        for _ in 0..20 {
            let a = pool[rng.random_range(0..pool.len())].clone();
            let b = pool[rng.random_range(0..pool.len())].clone();
            pairs.push((a, b));
        }
        let e = example_presentation();
        let cat2 = twist_catalogue(2).unwrap();
        let c2 = from_mapping_class(&cat2[0].1, 2).unwrap();
        pairs.push((e.clone(), c2.clone()));
        pairs.push((c2, e.clone()));
        pairs.push((e.clone(), e));
        for (m, n) in pairs {
            let mn = compose(&m, &n).unwrap();
            let rm = m.magnus_cylinder().unwrap();
            let rn = n.magnus_cylinder().unwrap();
            let sigma = m.sigma2().unwrap();
            assert_eq!(
                mn.magnus_cylinder().unwrap(),
                rm.mul(&twisted(&rn, &sigma)),
                "Magnus functoriality"
            );
            let tau_mn = mn.stacked_det().unwrap();
            let tau_m = m.stacked_det().unwrap();
            let tau_n = n.stacked_det().unwrap();
            let images = sigma_substitution(&sigma);
            let rhs = tau_m.mul(&tau_n.substitute(&images, tau_n.rank_of()));
            assert!(
                LaurentFraction::from_poly(tau_mn)
                    .eq_up_to_unit(&LaurentFraction::from_poly(rhs))
                    .is_some(),
                "torsion functoriality"
            );
            assert!(mn.rhat_relation_check().unwrap());
            assert!(mn.check_symplectic_cylinder().unwrap());
        }
    }

    #[test]
    fn validation_failures() {
        // Doubled relator: trivialized matrix is singular.
        let rank = 4;
        let relators = vec![rel(rank, &[1, -3]), rel(rank, &[1, -3])];
        let p = AdmissiblePresentation::new(1, 0, relators).unwrap();
        let report = p.validate();
        assert!(!report.passed());
        assert!(!report.checks[0].1, "unimodularity check fails");
        assert!(matches!(p.marking_q2(), Err(Error::DegeneratePresentation(_))));

        // Torsion in H1: m1^2 p1^-2 forces an invariant factor of 2.
        let relators = vec![rel(rank, &[1, 1, -3, -3]), rel(rank, &[2, -4])];
        let p = AdmissiblePresentation::new(1, 0, relators).unwrap();
        let report = p.validate();
        assert!(!report.checks[0].1);
        assert!(!report.checks[1].1, "H1 has torsion");

        // Bottom classes fail to span: m1 -> 2 g1.
        let relators = vec![rel(rank, &[1, -3, -3]), rel(rank, &[2, -4])];
        let p = AdmissiblePresentation::new(1, 0, relators).unwrap();
        let report = p.validate();
        assert!(report.checks[0].1, "trivialized matrix is unimodular");
        assert!(report.checks[1].1, "H1 is free");
        assert!(!report.checks[2].1, "bottom marking is not a basis");

        // Structural rejection: wrong relator count.
        assert!(matches!(
            AdmissiblePresentation::new(1, 0, vec![rel(4, &[1, -3])]),
            Err(Error::DegeneratePresentation(_))
        ));
    }

    #[test]
    fn string_link_shape() {
        // Top rows of the example Magnus matrix are identity rows.
        let r = example_presentation().magnus_cylinder().unwrap();
        for j in 0..4 {
            let want = if j == 0 { LaurentFraction::constant(4, 1) } else { LaurentFraction::zero(4) };
            assert_eq!(*r.get(0, j), want);
        }
        for j in 0..4 {
            let want = if j == 1 { LaurentFraction::constant(4, 1) } else { LaurentFraction::zero(4) };
            assert_eq!(*r.get(1, j), want);
        }
    }

    #[test]
    fn file_format_roundtrip() {
        let ex = example_presentation();
        let (parsed, rho) = parse_cylinder(&ex.to_string()).unwrap();
        assert_eq!(parsed, ex);
        assert!(rho.is_none());

        // Alias names, exponents, comments, and a rho1 line.
        let text = "# string link\ngenus 1\nextra 1\nrel z1^2 p1^-1\nrel i-(g1) z1^-2\nrel i-(g2) i+(g2)^-1\nrho1 0 0 0 0 0\n";
        let (p, rho) = parse_cylinder(text).unwrap();
        assert_eq!(p.genus(), 1);
        assert_eq!(p.extra_count(), 1);
        assert_eq!(p.relators()[0], rel(5, &[3, 3, -4]));
        assert_eq!(p.relators()[1], rel(5, &[1, -3, -3]));
        assert_eq!(p.relators()[2], rel(5, &[2, -5]));
        assert_eq!(rho, Some(vec![0; 5]));
        let (again, _) = parse_cylinder(&p.to_string()).unwrap();
        assert_eq!(again, p);

        // Parse failures carry positions.
        assert!(matches!(
            parse_cylinder("genus 1\nextra 0\nrel q1\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_cylinder("rel m1\ngenus 1\nextra 0\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_cylinder("genus 1\nextra 0\nrel m1 p1^-1\nrel m2 p2^-1\nrho1 1 2 3\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_cylinder("genus 1\nextra 0\nrel m3 p1^-1\nrel m2 p2^-1\n"),
            Err(Error::Parse { .. })
        ));
    }
}
