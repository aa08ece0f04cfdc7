mod common;

use proptest::prelude::*;

use subsys_core::cyclotomic::{cosets, DefiningSet, Flavor};
use subsys_core::galois::{Elem, FieldSpec};
use subsys_core::lincode::LinearCode;
use subsys_core::symplectic::{AdditiveCode, SympVector};

const ORDERS: [u32; 9] = [2, 3, 4, 5, 7, 8, 9, 16, 27];

/// Schoolbook product of packed elements reduced by the field's modulus.
fn slow_mul(f: &FieldSpec, a: Elem, b: Elem) -> Elem {
    let p = f.p();
    let m = f.m() as usize;
    let (ca, cb) = (f.coeffs(a), f.coeffs(b));
    let mut prod = vec![0u32; 2 * m];
    for i in 0..m {
        for j in 0..m {
            prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p;
        }
    }
    let modulus = f.modulus();
    for top in (m..2 * m).rev() {
        let c = prod[top];
        if c != 0 {
            for (k, &mc) in modulus.iter().enumerate() {
                let idx = top - m + k;
                prod[idx] = (prod[idx] + p * p - c * mc % p) % p;
            }
        }
    }
    f.from_coeffs(&prod[..m]).unwrap()
}

fn field_and_elems() -> impl Strategy<Value = (u32, u32, u32, u32)> {
    proptest::sample::select(ORDERS.to_vec())
        .prop_flat_map(|q| (Just(q), 0..q, 0..q, 0..q))
}

proptest! {
    #[test]
    fn field_axioms((q, a, b, c) in field_and_elems()) {
        let f = FieldSpec::of_order(q).unwrap();
        prop_assert_eq!(f.mul(a, b), slow_mul(&f, a, b));
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), 0);
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            prop_assert_eq!(f.pow(a, (q - 1) as u64), 1);
        }
        prop_assert!(f.trace_prime(a) < f.p());
        prop_assert_eq!(f.trace_prime(a), common::trace(&f, a));
    }

    #[test]
    fn cosets_partition(n in 2usize..80, qi in 0usize..4) {
        let q = [2u32, 3, 4, 5][qi];
        prop_assume!(subsys_core::arith::gcd(n as u64, q as u64) == 1);
        let cs = cosets(n, q).unwrap();
        let mut seen = vec![false; n];
        for c in &cs {
            for &x in c {
                prop_assert!(!seen[x]);
                seen[x] = true;
                prop_assert!(c.contains(&(x * q as usize % n)));
            }
        }
        prop_assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn defining_set_duals(n in 3usize..40, delta in 2usize..12, b in 0usize..5) {
        for (q, flavor) in [(2u32, Flavor::Euclidean), (4, Flavor::Hermitian), (3, Flavor::Euclidean)] {
            if subsys_core::arith::gcd(n as u64, q as u64) != 1 {
                continue;
            }
            let t = DefiningSet::bch(n, q, delta.min(n), b % n).unwrap();
            let dual = t.dual(flavor).unwrap();
            prop_assert_eq!(dual.dual(flavor).unwrap(), t.clone());
            prop_assert_eq!(t.len() + dual.len(), n);
            prop_assert_eq!(t.scale(q as i64).unwrap(), t.clone());
        }
    }

    #[test]
    fn linear_dual_involution(seed in any::<u64>(), qi in 0usize..4) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let q = [2u32, 3, 4, 9][qi];
        let f = FieldSpec::of_order(q).unwrap();
        let n = rng.gen_range(1..=7);
        let k = rng.gen_range(0..=n);
        let rows: Vec<Vec<Elem>> = (0..k).map(|_| (0..n).map(|_| rng.gen_range(0..q)).collect()).collect();
        let c = LinearCode::new(&f, n, rows).unwrap();
        prop_assert_eq!(c.k() + c.dual().k(), n);
        prop_assert_eq!(c.dual().dual(), c.clone());
        if f.m().is_multiple_of(2) {
            prop_assert_eq!(c.hermitian_dual().unwrap().hermitian_dual().unwrap(), c.clone());
        }
    }

    #[test]
    fn gram_schmidt_relations(seed in any::<u64>(), qi in 0usize..3) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let q = [2u32, 3, 4][qi];
        let f = FieldSpec::of_order(q).unwrap();
        let n = rng.gen_range(1..=4);
        let g = rng.gen_range(1..=2 * n);
        let gens: Vec<SympVector> = (0..g).map(|_| common::random_vector(&mut rng, &f, n)).collect();
        let c = AdditiveCode::new(&f, n, &gens).unwrap();
        let hb = c.symp_gram_schmidt();
        prop_assert_eq!(hb.isotropic.len() + 2 * hb.pairs.len(), c.dim_p());
        prop_assert_eq!(hb.isotropic.len(), c.radical().dim_p());
        for (i, (x, z)) in hb.pairs.iter().enumerate() {
            prop_assert_eq!(common::form(&f, x, z), 1);
            for v in &hb.isotropic {
                prop_assert_eq!(common::form(&f, v, x), 0);
                prop_assert_eq!(common::form(&f, v, z), 0);
            }
            for (x2, z2) in &hb.pairs[i + 1..] {
                for (u, w) in [(x, x2), (x, z2), (z, x2), (z, z2)] {
                    prop_assert_eq!(common::form(&f, u, w), 0);
                }
            }
        }
        let dual = c.symp_dual();
        prop_assert_eq!(dual.dim_p() + c.dim_p(), 2 * n * f.m() as usize);
        prop_assert_eq!(dual.symp_dual(), c.clone());
        for v in &gens {
            for w in dual.gens() {
                prop_assert_eq!(common::form(&f, v, &w), 0);
            }
        }
    }
}

#[test]
fn generator_polynomial_divides() {
    let f = FieldSpec::prime(2).unwrap();
    let t = DefiningSet::bch(15, 2, 3, 1).unwrap();
    let c = LinearCode::from_defining_set(&f, &t).unwrap();
    assert_eq!(c.k(), 11);
    assert!(c.is_cyclic());
}
