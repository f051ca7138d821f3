use num_bigint::BigUint;
use num_traits::ToPrimitive;
use proptest::prelude::*;

use nucleus_core::exlin::{dot_codes, rowspace, Matrix, Subspace};
use nucleus_core::gf::Field;
use nucleus_core::mono::{self, ExponentTuple};
use nucleus_core::vero::VeroContext;

fn factorial(n: u32) -> BigUint {
    (1..=n).fold(BigUint::from(1u32), |acc, i| acc * BigUint::from(i))
}

fn small_field() -> impl Strategy<Value = Field> {
    prop::sample::select(vec![(2u32, 1u32), (3, 1), (5, 1), (7, 1), (2, 2), (2, 3), (3, 2)])
        .prop_map(|(p, k)| Field::new(p, k, None).unwrap())
}

/// Field paired with a `rows x cols` matrix of codes.
fn field_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Matrix> {
    (small_field(), 1..=max_rows, 1..=max_cols).prop_flat_map(|(f, r, c)| {
        prop::collection::vec(0..f.order(), r * c).prop_map(move |d| Matrix::from_codes(&f, r, c, d).unwrap())
    })
}

fn tuple(m: usize, t: u32) -> impl Strategy<Value = ExponentTuple> {
    prop::collection::vec(0..=t, m).prop_map(move |mut cuts| {
        cuts.sort_unstable();
        let mut e = Vec::with_capacity(m + 1);
        let mut prev = 0;
        for c in cuts.into_iter().chain([t]) {
            e.push(c - prev);
            prev = c;
        }
        ExponentTuple::new(e)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lucas_matches_factorial_oracle(
        (t, e) in (0u32..=200, 0usize..=5).prop_flat_map(|(t, m)| (Just(t), tuple(m, t))),
        p in prop::sample::select(vec![2u32, 3, 5, 7, 11]),
    ) {
        let denom = e.exps().iter().fold(BigUint::from(1u32), |a, &x| a * factorial(x));
        let exact = factorial(t) / denom;
        prop_assert_eq!(&mono::multinomial_exact(t, &e), &exact);
        let residue = (exact % BigUint::from(p)).to_u32().unwrap();
        prop_assert_eq!(mono::multinomial_mod_p(t, &e, p), residue);
        prop_assert_eq!(mono::carry_free(t, &e, p), residue != 0);
    }

    #[test]
    fn rank_unrank_roundtrip(m in 0usize..=5, t in 0u32..=9, seed in any::<u64>()) {
        let len = mono::num_exponents(m, t) as u64;
        let idx = seed % len;
        let e = mono::unrank(m, t, idx).unwrap();
        prop_assert_eq!(e.degree(), t);
        prop_assert_eq!(mono::rank(&e), idx);
        prop_assert!(mono::unrank(m, t, len).is_err());
    }

    #[test]
    fn row_rank_equals_column_rank(a in field_matrix(6, 6)) {
        prop_assert_eq!(a.rank(), a.transpose().rank());
        let ns = nucleus_core::exlin::nullspace(&a);
        prop_assert_eq!(ns.dim() + a.rank(), a.cols());
        for i in 0..ns.dim() {
            prop_assert!(a.mul_vec(ns.basis().row(i)).unwrap().iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn rowspace_invariant_under_invertible_row_ops(a in field_matrix(5, 6), seed in any::<u64>()) {
        let f = a.field().clone();
        let n = a.rows();
        // Unit lower-triangular, hence invertible.
        let mut p = Matrix::identity(&f, n);
        let mut s = seed;
        for i in 0..n {
            for j in 0..i {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                p.set_code(i, j, ((s >> 33) % u64::from(f.order())) as u32);
            }
        }
        prop_assert_eq!(rowspace(&p.mul(&a).unwrap()), rowspace(&a));
    }

    #[test]
    fn grassmann_and_double_annihilator(a in field_matrix(4, 5), b_seed in prop::collection::vec(any::<u32>(), 20)) {
        let f = a.field().clone();
        let n = a.cols();
        let u = rowspace(&a);
        let rows: Vec<Vec<u32>> = b_seed.chunks(n).filter(|c| c.len() == n)
            .map(|c| c.iter().map(|x| x % f.order()).collect()).collect();
        let w = Subspace::span(&f, n, rows.iter().map(Vec::as_slice));
        prop_assert_eq!(u.sum(&w).unwrap().dim() + u.intersect(&w).unwrap().dim(), u.dim() + w.dim());
        prop_assert_eq!(u.annihilator().annihilator(), u.clone());
        prop_assert!(u.intersect(&w).unwrap().is_subspace_of(&u).unwrap());
    }

    #[test]
    fn pairing_is_power_of_dot_product(f in small_field(), m in 1usize..=3, t in 1u32..=5, seed in any::<u64>()) {
        let c = VeroContext::new(&f, m, t).unwrap();
        let q = u64::from(f.order());
        let coords = |s: u64| (0..=m).map(|i| ((s >> (8 * i)) % q) as u32).collect::<Vec<_>>();
        let (a, x) = (coords(seed), coords(seed.rotate_left(29)));
        let lhs = dot_codes(&f, &c.dual_power_codes(&a), &c.veronese_codes(&x));
        prop_assert_eq!(lhs, f.pow_code(dot_codes(&f, &a, &x), u64::from(t)));
    }

    #[test]
    fn functoriality(f in small_field(), m in 1usize..=2, t in 1u32..=3, d in prop::collection::vec(any::<u32>(), 18)) {
        let c = VeroContext::new(&f, m, t).unwrap();
        let n = m + 1;
        let mk = |off: usize| Matrix::from_codes(&f, n, n, d[off..off + n * n].iter().map(|x| x % f.order()).collect()).unwrap();
        let (a, b) = (mk(0), mk(9));
        let lhs = c.symmetric_power_map(&a.mul(&b).unwrap()).unwrap();
        let rhs = c.symmetric_power_map(&a).unwrap().mul(&c.symmetric_power_map(&b).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(c.symmetric_power_map(&Matrix::identity(&f, n)).unwrap(), Matrix::identity(&f, c.n()));
    }

    #[test]
    fn parallel_span_is_sequential_span(f in small_field(), m in 1usize..=2, t in 2u32..=4) {
        let c = VeroContext::new(&f, m, t).unwrap();
        let pts: Vec<Vec<u32>> = c.source_points().unwrap().iter().collect();
        let rows: Vec<Vec<u32>> = pts.iter().map(|a| c.dual_power_codes(a)).collect();
        let seq = Subspace::span(&f, c.n(), rows.iter().map(Vec::as_slice));
        prop_assert_eq!(c.dual_power_span().unwrap(), seq);
    }
}

#[test]
fn osculating_chain_and_nucleus_containment() {
    for (p, k, m, t) in [(2, 2, 2, 3), (3, 1, 2, 3), (5, 1, 1, 4), (2, 3, 2, 4)] {
        let f = Field::new(p, k, None).unwrap();
        let c = VeroContext::new(&f, m, t).unwrap();
        let nucleus = c.nucleus_bruteforce().unwrap();
        for r in 0..m {
            let mut prev = Subspace::zero(&f, c.n());
            for kk in -1..i64::from(t) {
                let s = c.osculating_subspace(r, kk).unwrap();
                assert!(prev.is_subspace_of(&s).unwrap(), "chain breaks at r={r} k={kk}");
                prev = s;
            }
            // Top of the chain for a hyperplane is an osculating hyperplane.
            if r + 1 == m {
                assert_eq!(prev.dim(), c.n() - 1);
                assert!(nucleus.is_subspace_of(&prev).unwrap());
            }
        }
    }
}

#[test]
fn every_osculating_hyperplane_contains_the_nucleus() {
    let f = Field::new(3, 1, None).unwrap();
    let c = VeroContext::new(&f, 2, 3).unwrap();
    let nucleus = c.nucleus_bruteforce().unwrap();
    let pts: Vec<Vec<u32>> = c.source_points().unwrap().iter().collect();
    // Every pair of independent points spans a line of P(X), i.e. a hyperplane U.
    for a in &pts {
        for b in &pts {
            let u = Matrix::from_code_rows(&f, 3, &[a.clone(), b.clone()]).unwrap();
            if u.rank() < 2 {
                continue;
            }
            let h = c.osculating_subspace_of(&u, 2).unwrap();
            assert_eq!(h.dim(), c.n() - 1);
            assert!(nucleus.is_subspace_of(&h).unwrap());
        }
    }
}
