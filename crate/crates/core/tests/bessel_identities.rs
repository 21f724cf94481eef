mod common;

use freebessel::bessel::{
    bessel_truncated, bgf_atomic, corner_restrict, log_bgf_coeffs, theta_add, Atom, AtomicMeasure,
};
use freebessel::dunkl::{moment_extract, pk_apply, DunklContext};
use freebessel::symcore::rational::{factorial, pow};
use freebessel::symcore::{rat, Partition, Rat};
use num_traits::{One, Zero};
use proptest::prelude::*;

use common::{derivative_at_zero, log_truncated, positive_rat, small_rat};

fn measure(points: Vec<Vec<Rat>>) -> AtomicMeasure {
    let n = points[0].len();
    let w = rat(1, points.len() as i64);
    let mut atoms: Vec<Atom> = points
        .into_iter()
        .map(|mut p| {
            p.sort();
            Atom { weight: w.clone(), point: p }
        })
        .collect();
    atoms.dedup_by(|a, b| {
        if a.point == b.point {
            b.weight += a.weight.clone();
            true
        } else {
            false
        }
    });
    AtomicMeasure::new(n, atoms).unwrap()
}

fn arb_measure(n: usize) -> impl Strategy<Value = AtomicMeasure> {
    prop::collection::vec(prop::collection::vec(small_rat(), n), 1..=3).prop_map(measure)
}

fn part(v: &[u32]) -> Partition {
    Partition::new(v.to_vec()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    /// Taylor-derivative formulas for the size-2 and size-3 coefficients,
    /// each carrying the factor 1/z_λ.
    #[test]
    fn coefficients_match_derivative_formulas(mu in arb_measure(3), theta in positive_rat()) {
        let g = bgf_atomic(&mu, &theta, 3).unwrap();
        let coeffs = log_bgf_coeffs(&g, &theta, 3).unwrap();
        let lg = log_truncated(&g, 3);
        let d = |e: &[u32]| derivative_at_zero(&lg, e);
        let half = rat(1, 2);
        let three_halves = rat(3, 2);
        let cases = [
            (part(&[2]), d(&[2, 0, 0]) - d(&[1, 1, 0])),
            (part(&[1, 1]), d(&[1, 1, 0])),
            (part(&[3]), &half * d(&[3, 0, 0]) - &three_halves * d(&[2, 1, 0]) + d(&[1, 1, 1])),
            (part(&[2, 1]), d(&[2, 1, 0]) - d(&[1, 1, 1])),
            (part(&[1, 1, 1]), d(&[1, 1, 1])),
        ];
        for (lam, value) in cases {
            let z = Rat::from_integer(lam.z());
            prop_assert_eq!(coeffs.a(&lam), value / z, "lambda = {}", lam);
        }
    }

    #[test]
    fn theta_addition_adds_first_moments(
        m1 in arb_measure(2),
        m2 in arb_measure(2),
        theta in positive_rat(),
    ) {
        let g1 = log_bgf_coeffs(&bgf_atomic(&m1, &theta, 2).unwrap(), &theta, 2).unwrap();
        let g2 = log_bgf_coeffs(&bgf_atomic(&m2, &theta, 2).unwrap(), &theta, 2).unwrap();
        let sum = theta_add(&g1, &g2).unwrap().to_bgf();
        let ctx = DunklContext::new(2, theta).unwrap();
        let p1 = part(&[1]);
        prop_assert_eq!(
            moment_extract(&ctx, &sum, 2, &p1).unwrap(),
            m1.expectation(&p1) + m2.expectation(&p1)
        );
    }

    /// The 1×1 corner of a point mass a is Σ w_i a_i with w ~ Dirichlet(θ, …, θ).
    #[test]
    fn one_by_one_corner_is_a_dirichlet_average(
        a in prop::collection::vec(small_rat(), 2..=3),
        theta in positive_rat(),
    ) {
        let mut a = a;
        a.sort();
        let n = a.len();
        let deg = 4;
        let corner = corner_restrict(&bgf_atomic(&AtomicMeasure::point_mass(a.clone()).unwrap(), &theta, deg).unwrap(), 1).unwrap();
        let rising = |x: &Rat, k: u32| (0..k).map(|j| x + rat(j as i64, 1)).product::<Rat>();
        let total = &theta * rat(n as i64, 1);
        for k in 0..=deg as u32 {
            // E y^k = Σ_{|m|=k} k!/Π m_i! Π a_i^{m_i} Π (θ)_{m_i} / (Nθ)_k
            let mut moment = Rat::zero();
            let mut stack = vec![(0usize, k, Rat::one())];
            while let Some((i, left, acc)) = stack.pop() {
                if i == n - 1 {
                    let c = acc * pow(&a[i], left) * rising(&theta, left) / Rat::from_integer(factorial(left));
                    moment += c;
                    continue;
                }
                for m in 0..=left {
                    let c = &acc * pow(&a[i], m) * rising(&theta, m) / Rat::from_integer(factorial(m));
                    stack.push((i + 1, left - m, c));
                }
            }
            moment = moment * Rat::from_integer(factorial(k)) / rising(&total, k);
            prop_assert_eq!(corner.coeff(&[k]), moment / Rat::from_integer(factorial(k)), "k = {}", k);
        }
    }

    #[test]
    fn bessel_function_is_a_joint_eigenfunction(
        a in prop::collection::vec(small_rat(), 2..=3),
        theta in positive_rat(),
    ) {
        let n = 5;
        let b = bessel_truncated(&a, &theta, n).unwrap();
        let ctx = DunklContext::new(a.len(), theta).unwrap();
        for k in 1..=3u32 {
            let pk: Rat = a.iter().map(|x| pow(x, k)).sum();
            prop_assert_eq!(
                pk_apply(&ctx, k, &b).unwrap().truncate(n - k as usize),
                b.truncate(n - k as usize).scale(&pk)
            );
        }
    }
}

#[test]
fn corner_of_larger_point_masses_restricts_the_bessel_function() {
    let theta = rat(1, 2);
    let a = vec![rat(-1, 1), rat(0, 1), rat(2, 1), rat(3, 1)];
    let full = bessel_truncated(&a, &theta, 3).unwrap();
    for m in 1..4 {
        let c = corner_restrict(&full, m).unwrap();
        assert_eq!(c.num_vars(), m);
        for (e, coeff) in c.terms() {
            let mut padded = e.clone();
            padded.resize(4, 0);
            assert_eq!(&full.coeff(&padded), coeff);
        }
    }
}
