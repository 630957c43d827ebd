use num_bigint::BigInt;
use proptest::prelude::*;

use grkappa::crystal::{apply_path, f_tilde, good_node_path, is_restricted, restricted_of_size};
use grkappa::decomp::solve_basic_task;
use grkappa::laurent::quantum_int;
use grkappa::multipartition::{multipartitions, partitions};
use grkappa::{specht_qcharacter, standard_tableaux, LaurentPoly, Multipartition, Params};

fn factorial(n: usize) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// Hook length formula for the number of standard tableaux of a partition.
fn hook_count(p: &[usize]) -> BigInt {
    let n: usize = p.iter().sum();
    let mut hooks = BigInt::from(1);
    for (a, &row) in p.iter().enumerate() {
        for b in 0..row {
            let leg = p[a + 1..].iter().filter(|&&r| r > b).count();
            hooks *= BigInt::from(row - b + leg);
        }
    }
    factorial(n) / hooks
}

/// Number of partitions of `d` in which no part occurs `e` or more times.
fn count_e_regular(d: usize, e: usize) -> usize {
    partitions(d)
        .iter()
        .filter(|p| p.iter().all(|x| p.iter().filter(|y| *y == x).count() < e))
        .count()
}

#[test]
fn specht_dimension_is_hook_formula() {
    for e in [0, 2, 3] {
        let p = Params::new(e, &[0]).unwrap();
        for d in 1..=7 {
            for parts in partitions(d) {
                let mu = Multipartition::single(&parts);
                assert_eq!(specht_qcharacter(&mu, &p).unwrap().mass(), hook_count(&parts), "{mu}");
            }
        }
    }
}

#[test]
fn level_two_dimension_is_binomial_times_hooks() {
    let p = Params::new(3, &[0, 2]).unwrap();
    for d in 1..=6 {
        for mu in multipartitions(d, 2) {
            let [a, b] = mu.components() else { unreachable!() };
            let k: usize = a.iter().sum();
            let expected = factorial(d) / (factorial(k) * factorial(d - k)) * hook_count(a) * hook_count(b);
            assert_eq!(specht_qcharacter(&mu, &p).unwrap().mass(), expected, "{mu}");
            assert_eq!(BigInt::from(standard_tableaux(&mu).len()), expected);
        }
    }
}

#[test]
fn restricted_counts_match_regular_counts() {
    for e in [2, 3, 4] {
        let p = Params::new(e, &[0]).unwrap();
        for d in 0..=10 {
            assert_eq!(restricted_of_size(d, &p).len(), count_e_regular(d, e as usize), "e={e} d={d}");
        }
    }
}

fn partition() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(1usize..5, 0..5).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    })
}

fn bi_nonneg() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec(0u32..3, 0..4).prop_map(|cs| {
        let mut m = LaurentPoly::zero();
        for (k, c) in cs.into_iter().enumerate() {
            let c = BigInt::from(c);
            let k = k as i64;
            m.add_term(k, c.clone());
            if k != 0 {
                m.add_term(-k, c);
            }
        }
        m
    })
}

proptest! {
    #[test]
    fn specht_character_supported_on_content(parts in partition(), e in prop::sample::select(vec![0u32, 2, 3, 4])) {
        let p = Params::new(e, &[0]).unwrap();
        let mu = Multipartition::single(&parts);
        let ch = specht_qcharacter(&mu, &p).unwrap();
        prop_assert!(ch.supported_on(&mu.content(&p)));
        prop_assert!(ch.is_nonnegative());
        if e == 0 {
            prop_assert!(ch.iter().all(|(_, c)| c.is_one()));
        }
    }

    #[test]
    fn good_node_path_rebuilds(path in prop::collection::vec(0i64..3, 0..8), two in any::<bool>()) {
        let p = if two { Params::new(3, &[0, 1]).unwrap() } else { Params::new(3, &[0]).unwrap() };
        let mut mu = Multipartition::empty(p.level());
        for i in path {
            if let Some(nu) = f_tilde(&mu, &p, i) {
                mu = nu;
            }
        }
        prop_assert!(is_restricted(&mu, &p));
        let rebuilt = apply_path(&good_node_path(&mu, &p).unwrap(), &p).unwrap();
        prop_assert_eq!(rebuilt, mu);
    }

    #[test]
    fn basic_task_recovers_split(
        d in prop::collection::vec(0u32..3, 0..4),
        m in bi_nonneg(),
        ns in prop::collection::vec(1u32..4, 0..3),
    ) {
        let r = ns.iter().fold(LaurentPoly::one(), |acc, &n| &acc * &quantum_int(n));
        let d = LaurentPoly::from_terms(d.into_iter().enumerate().map(|(k, c)| (k as i64 + 1, BigInt::from(c))));
        let t = &(&d * &r) + &m;
        let (d2, m2) = solve_basic_task(&t, &r).unwrap();
        prop_assert_eq!(d2, d);
        prop_assert_eq!(m2, m);
    }
}
