use num_bigint::BigUint;
use proptest::prelude::*;

use super::*;
use crate::Params;

// ---- independent oracle: exact big-integer binomials, logs from bit length ----

fn big_binomial(n: u64, r: u64) -> BigUint {
    let r = r.min(n - r);
    let mut acc = BigUint::from(1u32);
    for i in 0..r {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

fn big_ln(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 60 {
        let small: u64 = x.try_into().unwrap();
        return (small as f64).ln();
    }
    let shift = bits - 60;
    let top: u64 = (x >> shift).try_into().unwrap();
    (top as f64).ln() + shift as f64 * std::f64::consts::LN_2
}

fn oracle_union(t: usize, k: usize, v: u64, m: u64) -> f64 {
    let full = v.pow(t as u32);
    let num = big_ln(&(big_binomial(k as u64, t as u64) * big_binomial(full, m - 1)));
    num / ((full as f64).ln() - ((m - 1) as f64).ln())
}

fn oracle_lll(t: usize, k: usize, v: u64, m: u64) -> f64 {
    let full = v.pow(t as u32);
    let prod = BigUint::from(t) * big_binomial(k as u64, t as u64 - 1) * big_binomial(full, m - 1);
    (1.0 + big_ln(&prod)) / ((full as f64).ln() - ((m - 1) as f64).ln())
}

fn oracle_apca(t: usize, v: u64, m: u64, eps: f64) -> f64 {
    let full = v.pow(t as u32);
    (big_ln(&big_binomial(full, m - 1)) - eps.ln())
        / ((full as f64).ln() - ((m - 1) as f64).ln())
}

/// Exact check of `C(k,t) C(v^t, r) (m−1)^N < v^{tN}`.
fn union_holds(t: usize, k: usize, v: u64, m: u64, n: u32) -> bool {
    let full = v.pow(t as u32);
    let lhs = big_binomial(k as u64, t as u64)
        * big_binomial(full, m - 1)
        * BigUint::from(m - 1).pow(n);
    lhs < BigUint::from(full).pow(n)
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

fn p(t: usize, k: usize, v: u64, m: u64, eps: f64) -> Params {
    Params::new(t, k, v, m, eps, 0).unwrap()
}

// ---- frozen high-precision values (50-digit evaluation) ----

#[test]
fn frozen_reference_values() {
    let cases: [(f64, f64); 8] = [
        (bound_pca_union(&p(2, 4, 2, 4, 0.0)).unwrap().real_bound, 11.047104198266045),
        (bound_pca_lll(&p(2, 4, 2, 4, 0.0)).unwrap().real_bound, 15.523163695048252),
        (bound_apca(&p(2, 4, 2, 4, 0.01)).unwrap().real_bound, 20.826687238608605),
        (bound_apca_markov(&p(2, 10, 2, 4, 0.01)).unwrap().real_bound, 23.236108078261814),
        (bound_pca_lll(&p(6, 20, 4, 4096, 0.0)).unwrap().real_bound, 85015.94064957237),
        (bound_pca_lll(&p(6, 20, 4, 4092, 0.0)).unwrap().real_bound, 40312.38149212907),
        (bound_pca_union(&p(6, 20, 4, 4096, 0.0)).unwrap().real_bound, 77334.95847390064),
        (
            bound_pca_cyclic(&p(6, 20, 4, 4092, 0.0), CyclicVariant::WithT).unwrap().real_bound,
            52396.88158052994,
        ),
    ];
    for (got, want) in cases {
        assert!(rel(got, want) < 1e-10, "{got} vs {want}");
    }
}

#[test]
fn union_examples() {
    let b = bound_pca_union(&p(2, 4, 2, 4, 0.0)).unwrap();
    assert!(rel(b.real_bound, 24f64.ln() / (4.0f64 / 3.0).ln()) < 1e-12);
    assert_eq!(b.n_rows, 12);
    assert!(!union_holds(2, 4, 2, 4, 11));
    assert!(union_holds(2, 4, 2, 4, 12));

    // expectation 4 (1/4)^N equals 1 at N = 1, so strictness forces 2
    let b = bound_pca_union(&p(2, 2, 2, 2, 0.0)).unwrap();
    assert_eq!(b.real_bound, 1.0);
    assert_eq!(b.n_rows, 2);
    assert!(!union_holds(2, 2, 2, 2, 1));
    assert!(union_holds(2, 2, 2, 2, 2));

    let b = bound_pca_union(&p(3, 7, 3, 1, 0.0)).unwrap();
    assert_eq!((b.real_bound, b.n_rows), (0.0, 1));
}

#[test]
fn union_rows_are_minimal_under_exact_arithmetic() {
    for t in 2..=3 {
        for v in 2..=3u64 {
            let full = v.pow(t as u32);
            for k in t..=9 {
                for m in 2..=full {
                    let b = bound_pca_union(&p(t, k, v, m, 0.0)).unwrap();
                    assert!(rel(b.real_bound, oracle_union(t, k, v, m)) < 1e-9);
                    let n = b.n_rows as u32;
                    assert!(union_holds(t, k, v, m, n), "t={t} k={k} v={v} m={m}");
                    assert!(!union_holds(t, k, v, m, n - 1), "t={t} k={k} v={v} m={m}");
                }
            }
        }
    }
}

#[test]
fn lll_examples() {
    let b = bound_pca_lll(&p(2, 4, 2, 4, 0.0)).unwrap();
    assert!(rel(b.real_bound, (1.0 + 32f64.ln()) / (4.0f64 / 3.0).ln()) < 1e-12);
    assert_eq!(b.n_rows, 16);
    assert!(matches!(
        bound_pca_lll(&p(2, 3, 2, 4, 0.0)),
        Err(Error::KTooSmallForLll { k: 3, t: 2 })
    ));
    let b = bound_pca_lll(&p(6, 20, 4, 4096, 0.0)).unwrap();
    let want = oracle_lll(6, 20, 4, 4096);
    assert!(rel(b.real_bound, want) < 1e-9);
    assert_eq!(b.n_rows, want.ceil() as u64);
    assert_eq!(b.n_rows, 85016);
}

#[test]
fn lll_matches_oracle_on_grid() {
    for (t, v) in [(2, 2u64), (2, 5), (3, 3), (4, 2), (6, 4)] {
        let full = v.pow(t as u32);
        for k in [2 * t, 2 * t + 3, 40] {
            for m in [2, full / 2 + 1, full - 1, full] {
                let b = bound_pca_lll(&p(t, k, v, m, 0.0)).unwrap();
                let want = oracle_lll(t, k, v, m);
                assert!(rel(b.real_bound, want) < 1e-9, "t={t} v={v} k={k} m={m}");
                assert_eq!(b.n_rows, want.ceil() as u64);
            }
        }
    }
}

#[test]
fn lll_full_coverage_identity() {
    // real_bound · ln(v^t/(v^t−1)) = 1 + ln(t C(k,t−1) v^t)
    for (t, k, v) in [(2, 4, 2u64), (3, 9, 3), (4, 10, 2), (6, 20, 4)] {
        let params = Params::covering(t, k, v, 0.0, 0).unwrap();
        let full = params.full() as f64;
        let b = bound_pca_lll(&params).unwrap();
        let lhs = b.real_bound * -(-1.0 / full).ln_1p();
        let binom = big_ln(&big_binomial(k as u64, t as u64 - 1));
        let rhs = 1.0 + (t as f64).ln() + binom + full.ln();
        assert!(rel(lhs, rhs) < 1e-12);
    }
}

#[test]
fn asymptotic_examples() {
    let got: f64 = pca_asymptotic(6, 4, 1024.0, 20).unwrap();
    let want = 4096.0 * 5.0 * 1024f64.ln() / 20.0 * (1.0 - 20f64.ln() / 1024f64.ln());
    assert!(rel(got, want) < 1e-14);
    let got: f64 = pca_asymptotic(3, 2, 50.0, 1).unwrap();
    assert!(rel(got, 8.0 * 2.0 * 50f64.ln()) < 1e-14);
    let got: f64 = pca_asymptotic(2, 2, std::f64::consts::E, 1).unwrap();
    assert!((got - 4.0).abs() < 1e-12);
    assert!(matches!(pca_asymptotic(2, 2, 1.0f64, 1), Err(Error::Domain(_))));
    let via_params = bound_pca_asymptotic(&p(6, 1024, 4, 4096 - 20 + 1, 0.0)).unwrap();
    assert!(rel(via_params, want) < 1e-12);
}

#[test]
fn apca_examples() {
    let b = bound_apca(&p(2, 4, 2, 4, 0.01)).unwrap();
    assert!(rel(b.real_bound, 400f64.ln() / (4.0f64 / 3.0).ln()) < 1e-12);
    assert!(rel(b.real_bound, oracle_apca(2, 2, 4, 0.01)) < 1e-9);
    assert_eq!(b.n_rows, 21);

    let markov = bound_apca_markov(&p(2, 10, 2, 4, 0.01)).unwrap();
    assert!(rel(markov.real_bound, oracle_apca(2, 2, 4, 0.005)) < 1e-9);
    assert_eq!(markov.n_rows, 24);
    assert_eq!(markov.n_rows, (800f64.ln() / (4.0f64 / 3.0).ln()).ceil() as u64);

    assert!(matches!(bound_apca(&p(2, 4, 2, 4, 0.0)), Err(Error::EpsilonZero)));
}

#[test]
fn apca_recovers_union_below_one_over_tsets() {
    let union = bound_pca_union(&p(2, 4, 2, 4, 0.0)).unwrap();
    let apca = bound_apca(&p(2, 4, 2, 4, 0.1 / 6.0)).unwrap();
    assert!(apca.n_rows >= union.n_rows);
    // at ε = 1/C(k,t) the two real bounds coincide: ln(C(k,t) X) = ln C(k,t) + ln X
    for (t, k, v, m) in [(2, 4, 2u64, 4u64), (3, 8, 3, 20), (2, 30, 5, 17)] {
        let tsets = big_binomial(k as u64, t as u64);
        let eps = 1.0 / tsets.to_string().parse::<f64>().unwrap();
        let a = bound_apca(&p(t, k, v, m, eps)).unwrap();
        let u = bound_pca_union(&p(t, k, v, m, 0.0)).unwrap();
        assert!(rel(a.real_bound, u.real_bound) < 1e-12);
    }
}

#[test]
fn apca_full_coverage_within_closed_form() {
    for (t, v) in [(2, 2u64), (3, 3), (4, 2), (6, 4)] {
        for eps in [0.5, 0.1, 0.001] {
            let params = Params::covering(t, 10, v, eps, 0).unwrap();
            let full = params.full() as f64;
            let b = bound_apca(&params).unwrap();
            assert!(b.real_bound <= full * (full / eps).ln());
        }
    }
}

#[test]
fn cyclic_examples() {
    let b = bound_apca_cyclic(&Params::covering(2, 5, 2, 0.01, 0).unwrap()).unwrap();
    assert_eq!(b.n_rows, 16);
    assert!(rel(b.real_bound, 4.0 * 200f64.ln()) < 1e-12);
    assert_eq!(cyclic_base_rows(2, 2, 0.01f64).unwrap(), 8);

    let b = bound_apca_cyclic(&Params::covering(2, 5, 2, 1.0, 0).unwrap()).unwrap();
    assert_eq!(b.n_rows, 2);

    let b = bound_apca_cyclic(&Params::covering(6, 20, 4, 0.01, 0).unwrap()).unwrap();
    assert!((b.n_rows as f64) <= b.real_bound);

    assert!(matches!(
        bound_apca_cyclic(&p(2, 5, 2, 3, 0.1)),
        Err(Error::MNotFull { m: 3, full: 4 })
    ));
    assert!(matches!(
        bound_apca_cyclic(&Params::covering(2, 5, 2, 0.0, 0).unwrap()),
        Err(Error::EpsilonZero)
    ));
}

#[test]
fn frobenius_examples() {
    assert!(matches!(
        bound_apca_frobenius(&Params::covering(2, 5, 6, 0.1, 0).unwrap()),
        Err(Error::NotPrimePower(6))
    ));
    // one full orbit, 1·(1/3)^n ≤ 0.01 → n = 5
    let b = bound_apca_frobenius(&Params::covering(2, 5, 3, 0.01, 0).unwrap()).unwrap();
    assert_eq!(b.n_rows, 6 * 5 + 3);
    assert!(rel(b.real_bound, 9.0 * (2.0f64 / 0.01).ln() + 3.0) < 1e-12);
}

#[test]
fn exact_rows_never_exceed_closed_forms() {
    for t in 2..=4 {
        for v in 2..=5u64 {
            for eps in [0.1, 0.01] {
                let params = Params::covering(t, 8, v, eps, 0).unwrap();
                let c = bound_apca_cyclic(&params).unwrap();
                assert!((c.n_rows as f64) <= c.real_bound, "cyclic t={t} v={v} eps={eps}");
                if is_prime_power(v) {
                    let f = bound_apca_frobenius(&params).unwrap();
                    assert!((f.n_rows as f64) <= f.real_bound, "frobenius t={t} v={v} eps={eps}");
                }
            }
        }
    }
}

#[test]
fn pca_cyclic_examples() {
    assert_eq!(cyclic_missing_orbits(4096, 4092, 4), 2);
    assert_eq!(cyclic_missing_orbits(4096, 4096, 4), 1);
    let lll_4092 = bound_pca_lll(&p(6, 20, 4, 4092, 0.0)).unwrap();
    let cyc_4092 = bound_pca_cyclic(&p(6, 20, 4, 4092, 0.0), CyclicVariant::AsPrinted).unwrap();
    assert!(cyc_4092.real_bound > lll_4092.real_bound);
    assert!(rel(cyc_4092.real_bound, 48730.94287413999) < 1e-10);
    let lll_full = bound_pca_lll(&p(6, 20, 4, 4096, 0.0)).unwrap();
    let cyc_full = bound_pca_cyclic(&p(6, 20, 4, 4096, 0.0), CyclicVariant::AsPrinted).unwrap();
    assert!(cyc_full.real_bound < lll_full.real_bound);
    assert!(rel(cyc_full.real_bound, 71973.84539649649) < 1e-10);
    assert_eq!(cyc_full.n_rows % 4, 0);
    // s = v^{t−1} once m ≤ v
    assert!(matches!(
        bound_pca_cyclic(&p(2, 6, 3, 3, 0.0), CyclicVariant::AsPrinted),
        Err(Error::SOutOfRange { s: 3, max: 3 })
    ));
}

#[test]
fn concat_examples() {
    // ε = v^{t−1}/k^{1/v} makes r = v(t−1) exactly
    let eps = 4.0 / 64f64.powf(0.5);
    let params = p(3, 64, 2, 5, eps);
    let plan = bound_concat(&params).unwrap();
    assert_eq!(plan.r, 4);
    assert_eq!(plan.pca_m, 8 + 1 - 2 * 2);
    assert_eq!(plan.total.n_rows, plan.pca.n_rows + plan.apca.n_rows);
    assert!(plan.total.real_bound.is_finite());
    let scale = 4.0 * 64f64.ln();
    for part in [plan.pca.n_rows, plan.apca.n_rows] {
        assert!((part as f64) < 40.0 * scale, "{part}");
    }

    assert!(matches!(concat_r(2, 8, 2, 4.0f64), Err(Error::RNonPositive(_))));
    assert!(matches!(
        bound_concat(&p(3, 64, 2, 6, eps)),
        Err(Error::MConditionViolated { m: 6, .. })
    ));
    assert!(matches!(
        bound_concat(&p(2, 8, 2, 4, 0.0)),
        Err(Error::RNonPositive(_))
    ));
}

#[test]
fn reference_examples() {
    let (u, l): (f64, f64) = bound_can_reference(2, 4, 2);
    assert_eq!((u, l), (8.0, 4.0));
    let (u, l): (f64, f64) = bound_can_reference(3, 8, 2);
    assert!((u - 48.0).abs() < 1e-12 && (l - 12.0).abs() < 1e-12);
    let mut prev = 0.0;
    for k in 3..200 {
        let (u, _): (f64, f64) = bound_can_reference(3, k, 3);
        assert!(u > prev);
        prev = u;
    }
}

#[test]
fn single_precision_tracks_double() {
    let d = bound_pca_lll(&p(3, 12, 3, 20, 0.0)).unwrap();
    let s = bound_pca_lll(&crate::Params32::new(3, 12, 3, 20, 0.0, 0).unwrap()).unwrap();
    assert!(rel(s.real_bound as f64, d.real_bound) < 1e-5);
    assert_eq!(s.n_rows, d.n_rows);
}

#[test]
fn formula_names_round_trip() {
    for f in Formula::ALL {
        assert_eq!(f.label().parse::<Formula>().unwrap(), f);
    }
    assert_eq!("eq6".parse::<Formula>().unwrap(), Formula::Lll);
    assert_eq!(
        "eq8".parse::<Formula>().unwrap(),
        Formula::PcaCyclic(CyclicVariant::AsPrinted)
    );
}

proptest! {
    #[test]
    fn apca_monotone_in_epsilon(t in 2usize..4, v in 2u64..4, k in 4usize..12, mfrac in 0.0f64..1.0,
                                e1 in 0.001f64..1.0, e2 in 0.001f64..1.0) {
        let full = v.pow(t as u32);
        let m = 2 + ((full - 2) as f64 * mfrac) as u64;
        let (lo, hi) = if e1 <= e2 { (e1, e2) } else { (e2, e1) };
        let a = bound_apca(&p(t, k.max(t), v, m, lo)).unwrap();
        let b = bound_apca(&p(t, k.max(t), v, m, hi)).unwrap();
        prop_assert!(a.real_bound >= b.real_bound);
        prop_assert!(a.n_rows >= b.n_rows);
    }

    #[test]
    fn pca_bounds_monotone_in_m_and_k(t in 2usize..4, v in 2u64..5, k in 6usize..20, mfrac in 0.0f64..1.0) {
        let full = v.pow(t as u32);
        let m = 2 + ((full - 2) as f64 * mfrac) as u64;
        let here = p(t, k, v, m, 0.0);
        let u = bound_pca_union(&here).unwrap();
        let l = bound_pca_lll(&here).unwrap();
        if m < full {
            let up = here.with_m(m + 1).unwrap();
            prop_assert!(bound_pca_union(&up).unwrap().real_bound >= u.real_bound);
            prop_assert!(bound_pca_lll(&up).unwrap().real_bound >= l.real_bound);
        }
        let wider = here.with_k(k + 1).unwrap();
        prop_assert!(bound_pca_union(&wider).unwrap().real_bound >= u.real_bound);
        prop_assert!(bound_pca_lll(&wider).unwrap().real_bound >= l.real_bound);
    }

    #[test]
    fn log_binomial_symmetric(n in 0u64..20000, frac in 0.0f64..=1.0) {
        let r = ((n as f64) * frac) as u64;
        let a: f64 = log_binomial(n, r).unwrap();
        let b: f64 = log_binomial(n, n - r).unwrap();
        prop_assert!((a - b).abs() <= 1e-10 * a.abs().max(1.0));
    }

    #[test]
    fn log_binomial_matches_exact(n in 1u64..3000, frac in 0.0f64..=1.0) {
        let r = ((n as f64) * frac) as u64;
        let got: f64 = log_binomial(n, r).unwrap();
        let want = big_ln(&big_binomial(n, r));
        prop_assert!((got - want).abs() <= 1e-12 * want.max(1.0));
    }

    #[test]
    fn single_stage_rows_track_real_bound(t in 2usize..4, v in 2u64..4, k in 6usize..14, mfrac in 0.0f64..1.0, eps in 0.01f64..1.0) {
        let full = v.pow(t as u32);
        let m = 2 + ((full - 2) as f64 * mfrac) as u64;
        let params = p(t, k, v, m, eps);
        for b in [bound_pca_union(&params).unwrap(), bound_pca_lll(&params).unwrap(), bound_apca(&params).unwrap()] {
            let c = b.real_bound.ceil();
            prop_assert!(b.n_rows as f64 >= c - 1.0 && b.n_rows as f64 <= c + 1.0);
        }
    }
}
