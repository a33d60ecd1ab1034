//! Seeded randomized invariant suite behind the `selftest` subcommand.
//! Every law checked here is exact; a failure indicates a real defect.

use foxcalc_core::cylinder::{compose, from_mapping_class};
use foxcalc_core::fox::fox_word;
use foxcalc_core::magnus::{
    check_symplectic, earle_det, magnus, sigma_matrix, sigma_substitution, twist_catalogue,
};
use foxcalc_core::nilpotent::nilpotent_equal;
use foxcalc_core::ring::{FreeRingElement, LaurentFraction, RingElem};
use foxcalc_core::words::{fixes_boundary, Endomorphism, Word};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub struct Suite {
    pub name: &'static str,
    pub cases: usize,
    pub ok: bool,
}

fn random_word(rng: &mut ChaCha8Rng, rank: u16, max_len: usize) -> Word {
    let len = rng.random_range(0..=max_len);
    let letters: Vec<i32> = (0..len)
        .map(|_| {
            let i = rng.random_range(1..=i32::from(rank));
            if rng.random_bool(0.5) {
                i
            } else {
                -i
            }
        })
        .collect();
    Word::from_letters(rank, &letters).unwrap()
}

fn random_endo(rng: &mut ChaCha8Rng, rank: u16, max_len: usize) -> Endomorphism {
    let images = (0..rank).map(|_| random_word(rng, rank, max_len)).collect();
    Endomorphism::new(rank, images).unwrap()
}

fn fox_product_rule(rng: &mut ChaCha8Rng) -> Suite {
    let cases = 200;
    let mut ok = true;
    for _ in 0..cases {
        let rank = rng.random_range(2..=4u16);
        let g = random_word(rng, rank, 20);
        let h = random_word(rng, rank, 20);
        let j = rng.random_range(1..=rank as usize);
        let lhs = fox_word(&g.mul(&h).unwrap(), j).unwrap();
        let rhs = fox_word(&g, j)
            .unwrap()
            .add(&FreeRingElement::from_word(g.clone()).mul(&fox_word(&h, j).unwrap()));
        ok &= lhs == rhs;
    }
    Suite { name: "fox_product_rule", cases, ok }
}

fn fox_fundamental_formula(rng: &mut ChaCha8Rng) -> Suite {
    let cases = 200;
    let mut ok = true;
    for _ in 0..cases {
        let rank = rng.random_range(2..=4u16);
        let w = random_word(rng, rank, 20);
        let mut lhs = FreeRingElement::zero(rank);
        for j in 1..=rank as usize {
            let gen_minus_one = FreeRingElement::from_word(Word::gen(rank, j).unwrap())
                .sub(&FreeRingElement::one(rank));
            lhs = lhs.add(&fox_word(&w, j).unwrap().mul(&gen_minus_one));
        }
        let rhs = FreeRingElement::from_word(w.clone()).sub(&FreeRingElement::one(rank));
        ok &= lhs == rhs;
    }
    Suite { name: "fox_fundamental_formula", cases, ok }
}

fn fox_inverse_rule(rng: &mut ChaCha8Rng) -> Suite {
    let cases = 200;
    let mut ok = true;
    for _ in 0..cases {
        let rank = rng.random_range(2..=4u16);
        let w = random_word(rng, rank, 20);
        let j = rng.random_range(1..=rank as usize);
        let lhs = fox_word(&w.inverse(), j).unwrap();
        let rhs = FreeRingElement::from_word(w.inverse())
            .neg()
            .mul(&fox_word(&w, j).unwrap());
        ok &= lhs == rhs;
    }
    Suite { name: "fox_inverse_rule", cases, ok }
}

fn magnus_crossed_law(rng: &mut ChaCha8Rng) -> Suite {
    let cases = 50;
    let mut ok = true;
    for _ in 0..cases {
        let rank = 3u16;
        let phi = random_endo(rng, rank, 8);
        let psi = random_endo(rng, rank, 8);
        let lhs = magnus(&phi.compose(&psi).unwrap()).unwrap();
        let twisted = magnus(&psi)
            .unwrap()
            .try_map(rank, |e| e.apply_endo(&phi))
            .unwrap();
        let rhs = magnus(&phi).unwrap().mul(&twisted);
        ok &= lhs == rhs;
    }
    Suite { name: "magnus_crossed_law", cases, ok }
}

fn injectivity_witness(rng: &mut ChaCha8Rng) -> Suite {
    let cases = 25;
    let mut ok = true;
    for _ in 0..cases {
        let rank = 3u16;
        let phi = random_endo(rng, rank, 8);
        let r = magnus(&phi).unwrap();
        for j in 1..=rank as usize {
            let mut sum = FreeRingElement::zero(rank);
            for i in 1..=rank as usize {
                let gen_minus_one = FreeRingElement::from_word(Word::gen(rank, i).unwrap())
                    .sub(&FreeRingElement::one(rank));
                sum = sum.add(&r.get(i - 1, j - 1).bar().mul(&gen_minus_one));
            }
            let direct = FreeRingElement::from_word(phi.image(j).clone())
                .sub(&FreeRingElement::one(rank));
            ok &= sum == direct;
        }
    }
    Suite { name: "injectivity_witness", cases, ok }
}

fn catalogue_product(rng: &mut ChaCha8Rng, g: u16, factors: usize) -> Endomorphism {
    let cat = twist_catalogue(g).unwrap();
    let mut phi = Endomorphism::identity(2 * g);
    for _ in 0..factors {
        let pick = rng.random_range(0..cat.len());
        phi = phi.compose(&cat[pick].1).unwrap();
    }
    phi
}

fn symplectic_products(rng: &mut ChaCha8Rng) -> Suite {
    let cases = 20;
    let mut ok = true;
    for n in 0..cases {
        let g = 1 + (n % 2) as u16;
        let factors = rng.random_range(1..=4);
        let phi = catalogue_product(rng, g, factors);
        ok &= fixes_boundary(&phi, g).unwrap();
        ok &= check_symplectic(&phi, g).unwrap();
    }
    Suite { name: "symplectic_catalogue_products", cases, ok }
}

fn nilpotent_depth(rng: &mut ChaCha8Rng) -> Suite {
    let cases = 50;
    let mut ok = true;
    for _ in 0..cases {
        let a = random_word(rng, 2, 10);
        let b = random_word(rng, 2, 10);
        // Degree-2 agreement is exactly abelianization.
        ok &= nilpotent_equal(&a, &b, 2).unwrap()
            == (a.exponent_vector() == b.exponent_vector());
        // Weight-3 commutators vanish in the class-3 quotient.
        let x = random_word(rng, 2, 6);
        let y = random_word(rng, 2, 6);
        let z = random_word(rng, 2, 6);
        let c = Word::commutator(&Word::commutator(&x, &y).unwrap(), &z).unwrap();
        ok &= nilpotent_equal(&a.mul(&c).unwrap(), &a, 3).unwrap();
    }
    Suite { name: "nilpotent_depth", cases, ok }
}

fn earle_cocycle(rng: &mut ChaCha8Rng) -> Suite {
    let cases = 20;
    let mut ok = true;
    let nielsen1 = Endomorphism::new(
        2,
        vec![
            Word::from_letters(2, &[2, 1]).unwrap(),
            Word::gen(2, 2).unwrap(),
        ],
    )
    .unwrap();
    let nielsen2 = Endomorphism::new(
        2,
        vec![
            Word::gen(2, 1).unwrap(),
            Word::from_letters(2, &[1, 2]).unwrap(),
        ],
    )
    .unwrap();
    let cat = twist_catalogue(1).unwrap();
    let pool: Vec<Endomorphism> = cat
        .iter()
        .map(|(_, e)| e.clone())
        .chain([nielsen1, nielsen2])
        .collect();
    for _ in 0..cases {
        let phi = &pool[rng.random_range(0..pool.len())];
        let psi = &pool[rng.random_range(0..pool.len())];
        let (s1, e1) = earle_det(phi, 1).unwrap();
        let (s2, e2) = earle_det(psi, 1).unwrap();
        let (s12, e12) = earle_det(&phi.compose(psi).unwrap(), 1).unwrap();
        ok &= s12 == s1 * s2;
        let sigma = sigma_matrix(phi);
        let expect: Vec<i32> = (0..2)
            .map(|i| {
                e1[i]
                    + (0..2)
                        .map(|j| i32::try_from(sigma[i][j]).unwrap() * e2[j])
                        .sum::<i32>()
            })
            .collect();
        ok &= e12 == expect;
    }
    Suite { name: "earle_cocycle", cases, ok }
}

fn cylinder_functoriality(rng: &mut ChaCha8Rng) -> Suite {
    let cases = 5;
    let mut ok = true;
    for _ in 0..cases {
        let f1 = rng.random_range(1..=3);
        let phi = catalogue_product(rng, 1, f1);
        let f2 = rng.random_range(1..=3);
        let psi = catalogue_product(rng, 1, f2);
        let m1 = from_mapping_class(&phi, 1).unwrap();
        let m2 = from_mapping_class(&psi, 1).unwrap();
        let stacked = compose(&m1, &m2).unwrap();
        let direct = from_mapping_class(&phi.compose(&psi).unwrap(), 1).unwrap();
        ok &= stacked == direct;
        // r(MN) = r(M) · twist of r(N) by sigma2(M).
        let images = sigma_substitution(&m1.sigma2().unwrap());
        let twisted = m2
            .magnus_cylinder()
            .unwrap()
            .try_map(2, |e: &LaurentFraction| e.twist(&images, 2))
            .unwrap();
        let rhs = m1.magnus_cylinder().unwrap().mul(&twisted);
        ok &= stacked.magnus_cylinder().unwrap() == rhs;
        // Torsion is multiplicative up to ±H under the same twist.
        let t1 = LaurentFraction::from_poly(m1.torsion_plus().unwrap());
        let t2 = LaurentFraction::from_poly(m2.torsion_plus().unwrap())
            .twist(&images, 2)
            .unwrap();
        let t12 = LaurentFraction::from_poly(stacked.torsion_plus().unwrap());
        ok &= t12.eq_up_to_unit(&t1.mul(&t2)).is_some();
    }
    Suite { name: "cylinder_functoriality", cases, ok }
}

pub fn run(seed: u64) -> Vec<Suite> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    vec![
        fox_product_rule(&mut rng),
        fox_fundamental_formula(&mut rng),
        fox_inverse_rule(&mut rng),
        magnus_crossed_law(&mut rng),
        injectivity_witness(&mut rng),
        symplectic_products(&mut rng),
        nilpotent_depth(&mut rng),
        earle_cocycle(&mut rng),
        cylinder_functoriality(&mut rng),
    ]
}
