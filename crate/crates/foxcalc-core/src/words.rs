//! Freely reduced words, endomorphisms of free groups, and presentations.
//!
//! Generators are 1-indexed to match the usual gamma_1..gamma_2g conventions;
//! the letter `+k` is the k-th generator, `-k` its inverse. Words are reduced
//! eagerly, so every downstream computation may assume reduced input.

use alloc::borrow::ToOwned;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{Error, Result};

/// A freely reduced word in the free group of the given rank.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word {
    rank: u16,
    letters: Vec<i32>,
}

impl Word {
    /// The empty word.
    pub fn identity(rank: u16) -> Self {
        Word { rank, letters: Vec::new() }
    }

    /// The generator gamma_i (1-indexed).
    pub fn gen(rank: u16, i: usize) -> Result<Self> {
        Self::from_letters(rank, &[i as i32])
    }

    /// Build from raw signed letters, validating indices and reducing.
    pub fn from_letters(rank: u16, letters: &[i32]) -> Result<Self> {
        let mut v: Vec<i32> = Vec::with_capacity(letters.len());
        for &l in letters {
            if l == 0 || l.unsigned_abs() as u16 > rank {
                return Err(Error::IndexOutOfRange { index: l as i64, rank });
            }
            push_reduced(&mut v, l);
        }
        Ok(Word { rank, letters: v })
    }

    pub fn rank(&self) -> u16 {
        self.rank
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Freely reduced concatenation.
    pub fn mul(&self, other: &Word) -> Result<Word> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch { left: self.rank, right: other.rank });
        }
        let mut v = self.letters.clone();
        for &l in &other.letters {
            push_reduced(&mut v, l);
        }
        Ok(Word { rank: self.rank, letters: v })
    }

    pub fn inverse(&self) -> Word {
        let letters = self.letters.iter().rev().map(|&l| -l).collect();
        Word { rank: self.rank, letters }
    }

    /// Append a single letter (used by scanning algorithms).
    pub fn push(&mut self, letter: i32) {
        debug_assert!(letter != 0 && letter.unsigned_abs() as u16 <= self.rank);
        push_reduced(&mut self.letters, letter);
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut acc = Word::identity(self.rank);
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul(&base).expect("same rank");
        }
        acc
    }

    /// [a, b] = a b a^-1 b^-1.
    pub fn commutator(a: &Word, b: &Word) -> Result<Word> {
        a.mul(b)?.mul(&a.inverse())?.mul(&b.inverse())
    }

    /// Exponent sum of generator i (1-indexed).
    pub fn exponent_sum(&self, i: usize) -> i64 {
        self.letters
            .iter()
            .map(|&l| {
                if l.unsigned_abs() as usize == i {
                    l.signum() as i64
                } else {
                    0
                }
            })
            .sum()
    }

    /// The image in H = Z^rank.
    pub fn exponent_vector(&self) -> Vec<i64> {
        let mut v = vec![0i64; self.rank as usize];
        for &l in &self.letters {
            v[l.unsigned_abs() as usize - 1] += l.signum() as i64;
        }
        v
    }

    /// Reinterpret in a larger free group (indices unchanged).
    pub fn extend_rank(&self, rank: u16) -> Result<Word> {
        if rank < self.rank {
            return Err(Error::RankMismatch { left: self.rank, right: rank });
        }
        Ok(Word { rank, letters: self.letters.clone() })
    }

    /// Relabel letters through `map` (1-indexed old -> 1-indexed new).
    pub fn relabel(&self, rank: u16, map: &[usize]) -> Result<Word> {
        let mut letters = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            let new = map[(l.unsigned_abs() as usize) - 1] as i32;
            letters.push(l.signum() * new);
        }
        Word::from_letters(rank, &letters)
    }

    /// Print letters through `name`, collapsing runs to `name^m`.
    pub fn display_with(&self, name: &dyn Fn(usize) -> String) -> String {
        if self.letters.is_empty() {
            return String::new();
        }
        let mut out: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut run = 1usize;
            while i + run < self.letters.len() && self.letters[i + run] == l {
                run += 1;
            }
            let n = name(l.unsigned_abs() as usize);
            let e = (l.signum() as i64) * run as i64;
            if e == 1 {
                out.push(n);
            } else {
                out.push(format!("{n}^{e}"));
            }
            i += run;
        }
        out.join(" ")
    }
}

fn push_reduced(v: &mut Vec<i32>, l: i32) {
    if v.last() == Some(&-l) {
        v.pop();
    } else {
        v.push(l);
    }
}

/// Shortlex order: by length, then lexicographically on letters.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.letters
            .len()
            .cmp(&other.letters.len())
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&|i| format!("x{i}")))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({})", self)
    }
}

/// One token of the word grammar: `name`, `name^-1`, `name^<m>`.
fn split_token(tok: &str) -> (&str, core::result::Result<i64, ()>) {
    match tok.split_once('^') {
        None => (tok, Ok(1)),
        Some((base, exp)) => (base, exp.parse::<i64>().map_err(|_| ())),
    }
}

/// Parse a word over arbitrary generator names. `resolve` maps a name to a
/// 1-indexed generator. The empty string is the identity.
pub fn parse_word_with(
    text: &str,
    rank: u16,
    resolve: &dyn Fn(&str) -> Option<usize>,
) -> Result<Word> {
    let mut letters: Vec<i32> = Vec::new();
    let mut offset = 0usize;
    for tok in text.split_whitespace() {
        let pos = offset + text[offset..].find(tok).unwrap_or(0);
        offset = pos + tok.len();
        let (base, exp) = split_token(tok);
        let exp = exp.map_err(|_| Error::Parse {
            pos,
            msg: format!("bad exponent in token `{tok}`"),
        })?;
        let idx = resolve(base).ok_or_else(|| Error::Parse {
            pos,
            msg: format!("unknown generator `{base}`"),
        })?;
        if idx == 0 || idx > rank as usize {
            return Err(Error::IndexOutOfRange { index: idx as i64, rank });
        }
        let letter = idx as i32;
        for _ in 0..exp.unsigned_abs() {
            letters.push(if exp < 0 { -letter } else { letter });
        }
    }
    Word::from_letters(rank, &letters)
}

/// Resolve names of the form `x<k>`.
pub fn x_name(name: &str) -> Option<usize> {
    let rest = name.strip_prefix('x')?;
    let k: usize = rest.parse().ok()?;
    if k == 0 {
        None
    } else {
        Some(k)
    }
}

/// Parse a word in the standard `x<k>` grammar.
pub fn parse_word(text: &str, rank: u16) -> Result<Word> {
    parse_word_with(text, rank, &x_name)
}

/// An endomorphism of a free group, given by generator images.
#[derive(Clone, PartialEq, Eq)]
pub struct Endomorphism {
    rank: u16,
    images: Vec<Word>,
}

impl Endomorphism {
    pub fn new(rank: u16, images: Vec<Word>) -> Result<Self> {
        if images.len() != rank as usize {
            return Err(Error::RankMismatch { left: images.len() as u16, right: rank });
        }
        for im in &images {
            if im.rank() != rank {
                return Err(Error::RankMismatch { left: im.rank(), right: rank });
            }
        }
        Ok(Endomorphism { rank, images })
    }

    pub fn identity(rank: u16) -> Self {
        let images = (1..=rank as usize)
            .map(|i| Word::gen(rank, i).expect("index in range"))
            .collect();
        Endomorphism { rank, images }
    }

    pub fn rank(&self) -> u16 {
        self.rank
    }

    /// Image of gamma_j (1-indexed).
    pub fn image(&self, j: usize) -> &Word {
        &self.images[j - 1]
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    /// Substitution homomorphism.
    pub fn apply(&self, w: &Word) -> Result<Word> {
        if w.rank() != self.rank {
            return Err(Error::RankMismatch { left: w.rank(), right: self.rank });
        }
        let mut out = Word::identity(self.rank);
        for &l in w.letters() {
            let im = &self.images[(l.unsigned_abs() as usize) - 1];
            if l > 0 {
                out = out.mul(im)?;
            } else {
                out = out.mul(&im.inverse())?;
            }
        }
        Ok(out)
    }

    /// Composition phi . psi (phi applied after psi; maps act from the left).
    pub fn compose(&self, psi: &Endomorphism) -> Result<Endomorphism> {
        if self.rank != psi.rank {
            return Err(Error::RankMismatch { left: self.rank, right: psi.rank });
        }
        let images = psi
            .images
            .iter()
            .map(|w| self.apply(w))
            .collect::<Result<Vec<_>>>()?;
        Ok(Endomorphism { rank: self.rank, images })
    }

    pub fn is_identity(&self) -> bool {
        self == &Endomorphism::identity(self.rank)
    }
}

impl fmt::Debug for Endomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Endomorphism(rank {})", self.rank)?;
        for (j, im) in self.images.iter().enumerate() {
            writeln!(f, "  x{} -> {}", j + 1, im)?;
        }
        Ok(())
    }
}

/// Parse an endomorphism file: one `x<k> -> <word>` line per generator,
/// `#`-comments and blank lines ignored. The rank is the largest k on the
/// left-hand sides, and all of 1..=rank must be present exactly once.
pub fn parse_endomorphism(text: &str) -> Result<Endomorphism> {
    let mut entries: Vec<(usize, &str)> = Vec::new();
    let mut offset = 0usize;
    for line in text.lines() {
        let pos = offset;
        offset += line.len() + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (lhs, rhs) = line.split_once("->").ok_or_else(|| Error::Parse {
            pos,
            msg: "expected `x<k> -> <word>`".to_owned(),
        })?;
        let idx = x_name(lhs.trim()).ok_or_else(|| Error::Parse {
            pos,
            msg: format!("bad generator `{}`", lhs.trim()),
        })?;
        entries.push((idx, rhs.trim()));
    }
    if entries.is_empty() {
        return Err(Error::Parse { pos: 0, msg: "empty endomorphism".to_owned() });
    }
    let rank = entries.iter().map(|&(i, _)| i).max().unwrap();
    let mut images: Vec<Option<Word>> = vec![None; rank];
    for (idx, rhs) in entries {
        if images[idx - 1].is_some() {
            return Err(Error::Parse {
                pos: 0,
                msg: format!("duplicate image for x{idx}"),
            });
        }
        images[idx - 1] = Some(parse_word(rhs, rank as u16)?);
    }
    let images = images
        .into_iter()
        .enumerate()
        .map(|(i, w)| {
            w.ok_or_else(|| Error::Parse {
                pos: 0,
                msg: format!("missing image for x{}", i + 1),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Endomorphism::new(rank as u16, images)
}

/// A finite presentation < x_1..x_rank | relators >.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupPresentation {
    pub rank: u16,
    pub relators: Vec<Word>,
    /// Optional display names, one per generator.
    pub labels: Option<Vec<String>>,
}

impl GroupPresentation {
    pub fn new(rank: u16, relators: Vec<Word>) -> Result<Self> {
        for r in &relators {
            if r.rank() != rank {
                return Err(Error::RankMismatch { left: r.rank(), right: rank });
            }
        }
        Ok(GroupPresentation { rank, relators, labels: None })
    }

    pub fn name(&self, i: usize) -> String {
        match &self.labels {
            Some(ls) => ls[i - 1].clone(),
            None => format!("x{i}"),
        }
    }
}

/// Parse a presentation file: `rank <n>` header, then `rel <word>` lines.
pub fn parse_presentation(text: &str) -> Result<GroupPresentation> {
    let mut rank: Option<u16> = None;
    let mut relators = Vec::new();
    let mut offset = 0usize;
    for line in text.lines() {
        let pos = offset;
        offset += line.len() + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("rank") {
            let n: u16 = rest.trim().parse().map_err(|_| Error::Parse {
                pos,
                msg: "bad rank".to_owned(),
            })?;
            rank = Some(n);
        } else if let Some(rest) = line.strip_prefix("rel") {
            let n = rank.ok_or_else(|| Error::Parse {
                pos,
                msg: "`rel` before `rank`".to_owned(),
            })?;
            relators.push(parse_word(rest.trim(), n)?);
        } else {
            return Err(Error::Parse {
                pos,
                msg: format!("unrecognized line `{line}`"),
            });
        }
    }
    let rank = rank.ok_or_else(|| Error::Parse { pos: 0, msg: "missing `rank`".to_owned() })?;
    GroupPresentation::new(rank, relators)
}

/// The boundary word zeta = [gamma_1, gamma_{g+1}] ... [gamma_g, gamma_2g]
/// in rank 2g.
pub fn boundary_word(g: u16) -> Word {
    let rank = 2 * g;
    let mut z = Word::identity(rank);
    for i in 1..=g as usize {
        let a = Word::gen(rank, i).expect("in range");
        let b = Word::gen(rank, g as usize + i).expect("in range");
        z = z
            .mul(&Word::commutator(&a, &b).expect("same rank"))
            .expect("same rank");
    }
    z
}

/// Does phi fix the boundary word of the genus-g surface?
pub fn fixes_boundary(phi: &Endomorphism, g: u16) -> Result<bool> {
    if phi.rank() != 2 * g {
        return Err(Error::RankMismatch { left: phi.rank(), right: 2 * g });
    }
    let z = boundary_word(g);
    Ok(phi.apply(&z)? == z)
}

/// Artin generator sigma_i (1 <= i < n) or its inverse on the free group of
/// rank n: sigma_i sends x_i -> x_i x_{i+1} x_i^-1, x_{i+1} -> x_i.
pub fn artin_generator(strands: u16, i: usize, inverse: bool) -> Result<Endomorphism> {
    if i == 0 || i + 1 > strands as usize {
        return Err(Error::IndexOutOfRange { index: i as i64, rank: strands });
    }
    let n = strands;
    let mut images: Vec<Word> = (1..=n as usize)
        .map(|j| Word::gen(n, j).expect("in range"))
        .collect();
    let xi = Word::gen(n, i)?;
    let xi1 = Word::gen(n, i + 1)?;
    if !inverse {
        images[i - 1] = xi.mul(&xi1)?.mul(&xi.inverse())?;
        images[i] = xi;
    } else {
        images[i - 1] = xi1.clone();
        images[i] = xi1.inverse().mul(&xi)?.mul(&xi1)?;
    }
    Endomorphism::new(n, images)
}

/// Compose Artin generators for a braid word (left-to-right letters compose
/// left-to-right: the word `[1, -2]` is sigma_1 . sigma_2^-1). Letters are
/// signed crossing indices.
pub fn braid_endomorphism(strands: u16, word: &[i32]) -> Result<Endomorphism> {
    let mut acc = Endomorphism::identity(strands);
    for &c in word {
        if c == 0 {
            return Err(Error::IndexOutOfRange { index: 0, rank: strands });
        }
        let gen = artin_generator(strands, c.unsigned_abs() as usize, c < 0)?;
        acc = acc.compose(&gen)?;
    }
    Ok(acc)
}

/// The permutation underlying a braid word (0-indexed images).
pub fn braid_permutation(strands: u16, word: &[i32]) -> Result<Vec<usize>> {
    let n = strands as usize;
    let mut perm: Vec<usize> = (0..n).collect();
    for &c in word {
        let i = c.unsigned_abs() as usize;
        if i == 0 || i >= n {
            return Err(Error::IndexOutOfRange { index: c as i64, rank: strands });
        }
        perm.swap(i - 1, i);
    }
    Ok(perm)
}

pub fn is_pure_braid(strands: u16, word: &[i32]) -> Result<bool> {
    let perm = braid_permutation(strands, word)?;
    Ok(perm.iter().enumerate().all(|(i, &p)| i == p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn w(text: &str, rank: u16) -> Word {
        parse_word(text, rank).unwrap()
    }

    #[test]
    fn parse_and_reduce() {
        assert_eq!(w("x1 x2 x1^-1", 2).letters(), &[1, 2, -1]);
        assert!(w("x1 x1^-1", 2).is_identity());
        assert_eq!(w("x1 x2 x2^-1 x1", 2).letters(), &[1, 1]);
        assert_eq!(w("x1^3", 2).letters(), &[1, 1, 1]);
        assert_eq!(w("x2^-2", 2).letters(), &[-2, -2]);
        assert!(w("", 2).is_identity());
        assert!(matches!(
            parse_word("x3", 2),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(matches!(parse_word("y1", 2), Err(Error::Parse { .. })));
        assert!(matches!(parse_word("x1^a", 2), Err(Error::Parse { .. })));
    }

    #[test]
    fn multiply_invert() {
        let a = w("x1 x2", 3);
        let b = w("x2^-1 x3", 3);
        assert_eq!(a.mul(&b).unwrap(), w("x1 x3", 3));
        assert_eq!(a.mul(&Word::identity(3)).unwrap(), a);
        assert!(a.mul(&a.inverse()).unwrap().is_identity());
        assert_eq!(w("x1 x2", 2).inverse(), w("x2^-1 x1^-1", 2));
        assert_eq!(w("x1^-1", 2).inverse(), w("x1", 2));
        assert!(a.mul(&w("x1", 2)).is_err());
    }

    fn random_word(rng: &mut StdRng, rank: u16, len: usize) -> Word {
        let letters: Vec<i32> = (0..len)
            .map(|_| {
                let i = rng.random_range(1..=rank as i32);
                if rng.random_bool(0.5) {
                    i
                } else {
                    -i
                }
            })
            .collect();
        Word::from_letters(rank, &letters).unwrap()
    }

    #[test]
    fn reduction_confluence() {
        // Reducing in arbitrary interleavings equals the stack reduction:
        // multiply random splits of the same letter sequence.
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..500 {
            let rank = rng.random_range(1..=6) as u16;
            let len = rng.random_range(0..=40);
            let letters: Vec<i32> = (0..len)
                .map(|_| {
                    let i = rng.random_range(1..=rank as i32);
                    if rng.random_bool(0.5) {
                        i
                    } else {
                        -i
                    }
                })
                .collect();
            let whole = Word::from_letters(rank, &letters).unwrap();
            let cut = rng.random_range(0..=len);
            let left = Word::from_letters(rank, &letters[..cut]).unwrap();
            let right = Word::from_letters(rank, &letters[cut..]).unwrap();
            assert_eq!(left.mul(&right).unwrap(), whole);
            assert!(whole.mul(&whole.inverse()).unwrap().is_identity());
        }
    }

    #[test]
    fn endo_application() {
        let phi = Endomorphism::new(2, vec![w("x1 x2", 2), w("x2", 2)]).unwrap();
        assert_eq!(phi.apply(&w("x1 x2^-1", 2)).unwrap(), w("x1", 2));
        let id = Endomorphism::identity(2);
        let v = w("x1 x2 x1^-1", 2);
        assert_eq!(id.apply(&v).unwrap(), v);
        // Artin sigma_1 applied to x1 x2.
        let s1 = artin_generator(2, 1, false).unwrap();
        assert_eq!(s1.apply(&w("x1 x2", 2)).unwrap(), w("x1 x2", 2));
    }

    #[test]
    fn endo_composition() {
        let s1 = artin_generator(2, 1, false).unwrap();
        let sq = s1.compose(&s1).unwrap();
        assert_eq!(sq.image(1), &w("x1 x2 x1 x2^-1 x1^-1", 2));
        assert_eq!(sq.image(2), &w("x1 x2 x1^-1", 2));
        let id = Endomorphism::identity(2);
        assert_eq!(id.compose(&s1).unwrap(), s1);
        assert_eq!(s1.compose(&id).unwrap(), s1);
        // sigma sigma^-1 = id
        let s1i = artin_generator(2, 1, true).unwrap();
        assert!(s1.compose(&s1i).unwrap().is_identity());
        assert!(s1i.compose(&s1).unwrap().is_identity());
    }

    #[test]
    fn endo_homomorphism_props() {
        let mut rng = StdRng::seed_from_u64(12);
        for _ in 0..200 {
            let rank = rng.random_range(1..=4) as u16;
            let phi = Endomorphism::new(
                rank,
                (0..rank).map(|_| random_word(&mut rng, rank, 6)).collect(),
            )
            .unwrap();
            let a = random_word(&mut rng, rank, 12);
            let b = random_word(&mut rng, rank, 12);
            let lhs = phi.apply(&a.mul(&b).unwrap()).unwrap();
            let rhs = phi.apply(&a).unwrap().mul(&phi.apply(&b).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn compose_associative() {
        let mut rng = StdRng::seed_from_u64(13);
        for _ in 0..100 {
            let rank = rng.random_range(1..=3) as u16;
            let mk = |rng: &mut StdRng| {
                Endomorphism::new(
                    rank,
                    (0..rank).map(|_| random_word(rng, rank, 4)).collect(),
                )
                .unwrap()
            };
            let (f, g, h) = (mk(&mut rng), mk(&mut rng), mk(&mut rng));
            assert_eq!(
                f.compose(&g).unwrap().compose(&h).unwrap(),
                f.compose(&g.compose(&h).unwrap()).unwrap()
            );
        }
    }

    #[test]
    fn print_parse_roundtrip() {
        let mut rng = StdRng::seed_from_u64(14);
        for _ in 0..300 {
            let rank = rng.random_range(1..=6) as u16;
            let len = rng.random_range(0..=64);
            let word = random_word(&mut rng, rank, len);
            let text = format!("{word}");
            assert_eq!(parse_word(&text, rank).unwrap(), word);
        }
    }

    #[test]
    fn boundary_words() {
        assert_eq!(boundary_word(1), w("x1 x2 x1^-1 x2^-1", 2));
        assert_eq!(
            boundary_word(2),
            w("x1 x3 x1^-1 x3^-1 x2 x4 x2^-1 x4^-1", 4)
        );
        let z = boundary_word(3);
        assert_eq!(z.len(), 12);
        assert!(z.exponent_vector().iter().all(|&e| e == 0));
    }

    #[test]
    fn boundary_fixing() {
        assert!(fixes_boundary(&Endomorphism::identity(2), 1).unwrap());
        let swap = Endomorphism::new(2, vec![w("x2", 2), w("x1", 2)]).unwrap();
        assert!(!fixes_boundary(&swap, 1).unwrap());
    }

    #[test]
    fn braid_basics() {
        assert!(is_pure_braid(3, &[1, 1]).unwrap());
        assert!(!is_pure_braid(3, &[1]).unwrap());
        // closure of (s1 s2^-1)^2 is a knot: the permutation is a 3-cycle
        let p = braid_permutation(3, &[1, -2, 1, -2]).unwrap();
        assert!(p.iter().enumerate().all(|(i, &x)| i != x));
        let e = braid_endomorphism(2, &[1, -1]).unwrap();
        assert!(e.is_identity());
    }

    #[test]
    fn endo_file_roundtrip() {
        let text = "# a twist\nx1 -> x1\nx2 -> x2 x1\n";
        let phi = parse_endomorphism(text).unwrap();
        assert_eq!(phi.image(2), &w("x2 x1", 2));
        assert!(parse_endomorphism("x1 -> x1\nx3 -> x1").is_err());
        assert!(parse_endomorphism("x1 -> x1\nx1 -> x2\nx2 -> x2").is_err());
    }

    #[test]
    fn presentation_parse() {
        let p = parse_presentation("rank 3\nrel x1 x2 x1^-1 x3^-1\nrel x2 x3 x2^-1 x1^-1\n")
            .unwrap();
        assert_eq!(p.rank, 3);
        assert_eq!(p.relators.len(), 2);
        assert!(parse_presentation("rel x1\nrank 2").is_err());
    }
}
