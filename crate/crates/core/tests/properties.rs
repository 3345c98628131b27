mod common;

use std::sync::OnceLock;

use airpocket::bijections::{elevate, lower, mu, mu_inv, psi, psi_inv, refurl, unfurl};
use airpocket::enumeration::{air_paths, meanders};
use airpocket::path::is_in_s;
use airpocket::series::{gf, GfId, Marker, MultiSeries, TruncatedSeries};
use airpocket::statistics::air_stat;
use airpocket::{parse_path, AirPocketPath, MeanderWord, StatId};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use proptest::sample::Index;

const MAX_N: usize = 12;

fn cached_paths() -> &'static [Vec<AirPocketPath>] {
    static CACHE: OnceLock<Vec<Vec<AirPocketPath>>> = OnceLock::new();
    CACHE.get_or_init(|| (0..=MAX_N).map(air_paths).collect())
}

fn cached_meanders() -> &'static [Vec<MeanderWord>] {
    static CACHE: OnceLock<Vec<Vec<MeanderWord>>> = OnceLock::new();
    CACHE.get_or_init(|| (0..=8).map(meanders).collect())
}

fn any_path() -> impl Strategy<Value = AirPocketPath> {
    (2..=MAX_N, any::<Index>()).prop_map(|(n, i)| {
        let all = &cached_paths()[n];
        all[i.index(all.len())].clone()
    })
}

fn any_prime() -> impl Strategy<Value = AirPocketPath> {
    any_path().prop_filter("prime", |p| p.is_prime())
}

fn any_meander() -> impl Strategy<Value = MeanderWord> {
    (1..=8usize, any::<Index>()).prop_map(|(n, i)| {
        let all = &cached_meanders()[n];
        all[i.index(all.len())].clone()
    })
}

const ORDER: usize = 10;

fn uni(coeffs: Vec<i64>) -> TruncatedSeries {
    TruncatedSeries::from_ints(&coeffs, ORDER)
}

fn any_series() -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec(-20i64..=20, ORDER + 1).prop_map(uni)
}

fn unit_series() -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec(-20i64..=20, ORDER).prop_map(|mut c| {
        c.insert(0, 1);
        uni(c)
    })
}

fn any_multi() -> impl Strategy<Value = MultiSeries> {
    prop::collection::vec((-9i64..=9, 0..=6usize, 0..=3u32, 0..=3u32), 0..12)
        .prop_map(|terms| MultiSeries::monomials(&terms, 6))
}

proptest! {
    #[test]
    fn path_text_round_trips(p in any_path()) {
        prop_assert_eq!(parse_path(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn psi_is_inverted(p in any_path()) {
        let m = psi(&p);
        prop_assert_eq!(m.len(), p.len() - 1);
        prop_assert!(m.is_peakless());
        prop_assert_eq!(psi_inv(&m).unwrap(), p);
    }

    #[test]
    fn lowering_inverts_elevation(p in any_path()) {
        let up = elevate(&p);
        prop_assert!(up.is_prime());
        prop_assert_eq!(lower(&up).unwrap(), p);
    }

    #[test]
    fn elevation_inverts_lowering(p in any_prime()) {
        prop_assert_eq!(elevate(&lower(&p).unwrap()), p);
    }

    #[test]
    fn unfurling_keeps_peaks(p in any_path()) {
        let w = unfurl(&p);
        prop_assert_eq!(w.peaks() as u64, air_stat(&p, StatId::Peak).unwrap());
        prop_assert_eq!(refurl(&w).unwrap(), p);
    }

    #[test]
    fn meander_coding_round_trips(w in any_meander()) {
        let m = mu(&w);
        prop_assert!(is_in_s(&m));
        prop_assert_eq!(m.len() * 2, w.len());
        prop_assert_eq!(mu_inv(&m).unwrap(), w);
    }

    #[test]
    fn first_pyramids_are_d1_steps(p in any_path()) {
        prop_assert_eq!(
            air_stat(&p, StatId::Delta(1)).unwrap(),
            air_stat(&p, StatId::D1Count).unwrap()
        );
    }

    #[test]
    fn pyramid_ranges_partition(p in any_path(), k in 1u32..6) {
        let le = air_stat(&p, StatId::DeltaLe(k)).unwrap();
        let ge = air_stat(&p, StatId::DeltaGe(k + 1)).unwrap();
        prop_assert_eq!(le + ge, air_stat(&p, StatId::DeltaGe(1)).unwrap());
    }

    #[test]
    fn motzkin_identities_hold(p in any_path()) {
        for c in common::identities::checks(&p, 4) {
            prop_assert_eq!(c.lhs, c.rhs, "{} on {}", c.name, p);
        }
    }

    #[test]
    fn division_undoes_multiplication(a in any_series(), b in unit_series()) {
        prop_assert_eq!((&a * &b).div(&b).unwrap(), a);
    }

    #[test]
    fn square_root_undoes_squaring(a in unit_series()) {
        prop_assert_eq!((&a * &a).sqrt().unwrap(), a);
    }

    #[test]
    fn shifts_cancel(a in any_series(), k in 0usize..5) {
        let back = a.mul_x_pow(k).shift_div_x(k).unwrap();
        prop_assert_eq!(back, a.with_order(ORDER - k));
    }

    #[test]
    fn erasing_markers_is_multiplicative(a in any_multi(), b in any_multi()) {
        prop_assert_eq!((&a * &b).erase_markers(), &a.erase_markers() * &b.erase_markers());
    }

    #[test]
    fn marker_derivative_obeys_leibniz(a in any_multi(), b in any_multi()) {
        let lhs = (&a * &b).marker_popularity(Marker::Y);
        let rhs = &(&a.marker_popularity(Marker::Y) * &b.erase_markers())
            + &(&a.erase_markers() * &b.marker_popularity(Marker::Y));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn multi_division_undoes_multiplication(a in any_multi(), b in any_multi()) {
        let unit = &b.mul_x_pow(1) + &MultiSeries::one(6);
        prop_assert_eq!((&a * &unit).div(&unit).unwrap(), a);
    }
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn pyramid_series_split_at_k(k in 1u32..5) {
        let order = 18;
        let all = gf(GfId::YGeq(1), order).unwrap().erased();
        let le = gf(GfId::YLeq(k), order).unwrap().erased();
        let ge = gf(GfId::YGeq(k + 1), order).unwrap().erased();
        prop_assert_eq!(&le + &ge, all);
    }

    #[test]
    fn pyramid_popularity_shifts_with_size(k in 1u32..5) {
        let order = 20;
        let y1 = gf(GfId::Y(1), order).unwrap().erased();
        let yk = gf(GfId::Y(k), order).unwrap().erased();
        for n in 0..=order + 1 - k as usize {
            prop_assert_eq!(y1.coeff(n), yk.coeff(n + k as usize - 1), "n={}", n);
        }
    }

    #[test]
    fn inc_pyramid_popularity_shifts_with_size(k in 1u32..5) {
        let order = 20;
        let w1 = gf(GfId::Wk(1), order).unwrap().erased();
        let wk = gf(GfId::Wk(k), order).unwrap().erased();
        for n in 0..=order + 1 - k as usize {
            prop_assert_eq!(w1.coeff(n), wk.coeff(n + k as usize - 1), "n={}", n);
        }
    }
}

#[test]
fn meanders_are_partial_sums_of_d1_popularity() {
    let order = 24;
    let y1 = gf(GfId::Y(1), order).unwrap().erased();
    let s = gf(GfId::S, order).unwrap().erased();
    let one_minus_x = TruncatedSeries::from_ints(&[1, -1], order);
    let lhs = y1.shift_div_x(2).unwrap().div(&one_minus_x).unwrap();
    let lhs = &lhs - &TruncatedSeries::constant_value(int(1), order);
    assert_eq!(lhs, s.with_order(order - 2));
}
