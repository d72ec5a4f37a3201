//! Algebraic invariants on random inputs, each checked against a naive oracle.

use std::collections::BTreeMap;

use proptest::prelude::*;

use hermod_core::arith::{legendre, Prime, Rat};
use hermod_core::genio::{parse, write, Expansion, ExpansionFile};
use hermod_core::hjf::{average, HJForm, HalfGauss, Parity};
use hermod_core::hmf::HMForm;
use hermod_core::modp::linalg::convolve;
use hermod_core::qexp::QSeries;

const PRIMES: [u64; 6] = [5, 7, 11, 13, 17, 19];

fn rat() -> impl Strategy<Value = Rat> {
    (-30i64..30, 1i64..6).prop_map(|(a, b)| Rat::new(a, b))
}

/// Rationals with denominators prime to every prime in PRIMES.
fn integral_rat() -> impl Strategy<Value = Rat> {
    (-300i64..300, prop::sample::select(vec![1i64, 2, 3, 4, 8, 9])).prop_map(|(a, b)| Rat::new(a, b))
}

fn qseries(weight: i64) -> impl Strategy<Value = QSeries> {
    prop::collection::vec(integral_rat(), 1..12).prop_map(move |v| {
        let trunc = v.len() as i64 - 1;
        let coeffs = v.into_iter().enumerate().map(|(n, c)| (n as i64, c)).collect();
        QSeries::new(weight, false, trunc, coeffs).unwrap()
    })
}

/// Every admissible key with n <= trunc for the given index.
fn keys(index: i64, trunc: i64) -> Vec<(i64, HalfGauss)> {
    let mut out = Vec::new();
    for n in 0..=trunc {
        let b = 4 * index * n;
        let side = (b as f64).sqrt() as i64 + 1;
        for a1 in -side..=side {
            for a2 in -side..=side {
                if a1 * a1 + a2 * a2 <= b {
                    out.push((n, HalfGauss::new(a1, a2)));
                }
            }
        }
    }
    out
}

fn hjform(index: i64, trunc: i64) -> impl Strategy<Value = HJForm> {
    let ks = keys(index, trunc);
    let len = ks.len();
    (prop::collection::vec(prop::option::weighted(0.4, rat()), len), prop::bool::ANY).prop_map(move |(vals, plus)| {
        let coeffs: BTreeMap<_, _> = ks.iter().zip(vals).filter_map(|(k, v)| v.map(|c| (*k, c))).collect();
        let parity = if plus { Parity::Plus } else { Parity::Minus };
        HJForm::new(4, index, parity, trunc, coeffs).unwrap()
    })
}

fn hmform(trunc: i64) -> impl Strategy<Value = HMForm> {
    let ks: Vec<(i64, HalfGauss, i64)> =
        (0..=trunc).flat_map(|m| keys(m, trunc - m).into_iter().map(move |(n, r)| (n, r, m))).collect();
    let len = ks.len();
    prop::collection::vec(prop::option::weighted(0.3, integral_rat()), len).prop_map(move |vals| {
        let coeffs = ks.iter().zip(vals).filter_map(|(k, v)| v.map(|c| (*k, c))).collect();
        HMForm::from_coeffs(4, trunc, coeffs).unwrap()
    })
}

fn schoolbook(a: &QSeries, b: &QSeries) -> Vec<Rat> {
    let t = a.trunc().min(b.trunc()) as usize;
    let (da, db) = (a.dense(), b.dense());
    let mut out = vec![Rat::zero(); t + 1];
    for (i, slot) in out.iter_mut().enumerate() {
        for j in 0..=i {
            *slot = &*slot + &(&da[j] * &db[i - j]);
        }
    }
    out
}

fn euler_criterion(b: i64, p: u64) -> i8 {
    let x = b.rem_euclid(p as i64) as u64;
    if x == 0 {
        return 0;
    }
    let mut acc = 1u64;
    for _ in 0..(p - 1) / 2 {
        acc = acc * x % p;
    }
    if acc == 1 {
        1
    } else {
        -1
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cauchy_product_matches_schoolbook(a in qseries(4), b in qseries(6)) {
        let prod = a.mul(&b);
        let oracle = schoolbook(&a, &b);
        prop_assert_eq!(prod.trunc() as usize + 1, oracle.len());
        for (n, c) in oracle.iter().enumerate() {
            prop_assert_eq!(&prod.coeff(n as i64), c);
        }
    }

    #[test]
    fn reduction_mod_p_is_a_ring_homomorphism(a in qseries(4), b in qseries(4), pi in 0..PRIMES.len()) {
        let p = Prime::new(PRIMES[pi]).unwrap();
        let (ra, rb) = (a.reduce(p).unwrap(), b.reduce(p).unwrap());
        prop_assert_eq!(a.mul(&b).reduce(p).unwrap(), convolve(p, &ra, &rb));
        let sum = a.add(&b).unwrap().reduce(p).unwrap();
        let oracle: Vec<u64> = ra.iter().zip(&rb).map(|(x, y)| (x + y) % p.get()).collect();
        prop_assert_eq!(&sum[..oracle.len()], &oracle[..]);
    }

    #[test]
    fn rational_reduction_respects_products(x in integral_rat(), y in integral_rat(), pi in 0..PRIMES.len()) {
        let p = Prime::new(PRIMES[pi]).unwrap();
        let lhs = (&x * &y).reduce_mod_p(p).unwrap();
        let rhs = x.reduce_mod_p(p).unwrap() * y.reduce_mod_p(p).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn legendre_is_multiplicative(a in -2000i64..2000, b in -2000i64..2000, pi in 0..PRIMES.len()) {
        let p = Prime::new(PRIMES[pi]).unwrap();
        prop_assert_eq!(legendre(a * b, p), legendre(a, p) * legendre(b, p));
        prop_assert_eq!(legendre(a, p), euler_criterion(a, p.get()));
    }

    #[test]
    fn hjf_product_matches_pairwise_oracle(f in hjform(1, 2), g in hjform(1, 2)) {
        let prod = f.mul(&g);
        let mut oracle: BTreeMap<(i64, HalfGauss), Rat> = BTreeMap::new();
        for (&(n1, r1), a) in f.coeffs() {
            for (&(n2, r2), b) in g.coeffs() {
                if n1 + n2 <= 2 {
                    let r = HalfGauss::new(r1.a1 + r2.a1, r1.a2 + r2.a2);
                    let slot = oracle.entry((n1 + n2, r)).or_default();
                    *slot = &*slot + &(a * b);
                }
            }
        }
        oracle.retain(|_, c| !c.is_zero());
        prop_assert_eq!(prod.coeffs(), &oracle);
        prop_assert_eq!(prod.index(), 2);
    }

    #[test]
    fn up_commutes_with_heat(f in hjform(2, 2), pi in 0..PRIMES.len()) {
        let p = Prime::new(PRIMES[pi]).unwrap();
        prop_assert_eq!(f.heat().u_p(p), f.u_p(p).heat());
    }

    #[test]
    fn hmf_up_commutes_with_d(f in hmform(3), pi in 0..PRIMES.len()) {
        let p = Prime::new(PRIMES[pi]).unwrap();
        prop_assert_eq!(f.d_op().u_p(p).to_map(), f.u_p(p).d_op().to_map());
    }

    #[test]
    fn fourier_jacobi_slices_intertwine_d_and_heat(f in hmform(3)) {
        let d = f.d_op();
        for m in 0..=3 {
            let lhs = d.fj_coefficient(m).unwrap();
            let rhs = f.fj_coefficient(m).unwrap().heat();
            prop_assert_eq!(lhs.coeffs(), rhs.coeffs());
        }
    }

    #[test]
    fn unit_average_is_idempotent(f in hjform(1, 2), k in prop::sample::select(vec![4i64, 6, 8, 10]), plus in prop::bool::ANY) {
        let parity = if plus { Parity::Plus } else { Parity::Minus };
        let once = average(&f, k, 1, parity).unwrap();
        let twice = average(&once, k, 1, parity).unwrap();
        prop_assert_eq!(&once, &twice);
        prop_assert!(once.unit_rule_violations().is_empty());
    }

    #[test]
    fn matrix_index_round_trip(f in hjform(2, 2)) {
        let g = f.to_matrix_index();
        prop_assert!(g.check_support());
        prop_assert_eq!(HJForm::from_matrix_index(&g, f.parity()).unwrap(), f);
    }

    #[test]
    fn qexp_files_round_trip(a in qseries(12)) {
        let file = ExpansionFile { comments: vec!["random".into()], body: Expansion::Q(a) };
        let text = write(&file);
        let back = parse(&text, "mem").unwrap();
        prop_assert_eq!(write(&back), text);
        prop_assert_eq!(back, file);
    }
}
