mod common;

use std::collections::BTreeMap;

use airpocket::enumeration::{meanders, motzkin_words};
use airpocket::series::{gf, GfId, MultiSeries};
use airpocket::statistics::air_stat;
use airpocket::{count_family, enum_family, popularity, FamilyId, StatId, Step};
use num_bigint::BigUint;
use num_rational::BigRational;

fn paths(family: FamilyId, n: usize) -> Vec<Vec<Step>> {
    enum_family(family, n)
        .iter()
        .map(|m| m.as_air().unwrap().steps().to_vec())
        .collect()
}

fn sorted(mut v: Vec<Vec<Step>>) -> Vec<Vec<Step>> {
    v.sort();
    v
}

#[test]
fn air_families_match_brute_force() {
    for n in 0..=12 {
        let all = common::air(n);
        assert_eq!(paths(FamilyId::Air, n), sorted(all.clone()), "AIR n={n}");
        let inc: Vec<_> = all.iter().filter(|p| common::nondecreasing(p)).cloned().collect();
        assert_eq!(paths(FamilyId::AirInc, n), inc, "AIR_INC n={n}");
        let zero: Vec<_> = all.iter().filter(|p| common::valleys_at_zero(p)).cloned().collect();
        assert_eq!(paths(FamilyId::ValleysAtZero, n), zero, "VALLEYS_AT_ZERO n={n}");
        let prime: Vec<_> = all
            .iter()
            .filter(|p| {
                let mut h = 0i64;
                let touches = p.iter().filter(|s| {
                    h += match s {
                        Step::Up => 1,
                        Step::Down(k) => -(*k as i64),
                    };
                    h == 0
                });
                touches.count() == 1 && matches!(p.last(), Some(Step::Down(k)) if *k >= 2)
            })
            .cloned()
            .collect();
        assert_eq!(paths(FamilyId::Prime, n), prime, "PRIME n={n}");
        for f in [FamilyId::Air, FamilyId::AirInc, FamilyId::ValleysAtZero, FamilyId::Prime] {
            assert_eq!(
                count_family(f, n),
                BigUint::from(enum_family(f, n).len()),
                "{} n={n}",
                f.tag()
            );
        }
    }
}

#[test]
fn meanders_match_brute_force() {
    for n in 1..=8 {
        let ours: Vec<String> = meanders(n).iter().map(|w| w.to_string()).collect();
        assert_eq!(ours, common::meanders(n), "n={n}");
        assert_eq!(count_family(FamilyId::Meander, n), BigUint::from(ours.len()));
    }
}

#[test]
fn motzkin_counts_match_stream_lengths() {
    for f in FamilyId::ALL.into_iter().filter(|f| f.is_motzkin()) {
        for n in 0..=10 {
            let words = motzkin_words(f, n);
            assert_eq!(count_family(f, n), BigUint::from(words.len()), "{} n={n}", f.tag());
        }
    }
}

#[test]
fn statistics_match_naive_counts() {
    type Naive = fn(&[Step]) -> u64;
    let table: [(StatId, Naive); 8] = [
        (StatId::UCount, common::ups),
        (StatId::D1Count, common::d1),
        (StatId::Peak, common::peaks),
        (StatId::Ret, common::returns),
        (StatId::Cat, common::catastrophes),
        (StatId::Delta(1), |p| common::pyramids(p, 1)),
        (StatId::Delta(2), |p| common::pyramids(p, 2)),
        (StatId::Delta(3), |p| common::pyramids(p, 3)),
    ];
    for n in 2..=11 {
        for p in enum_family(FamilyId::Air, n) {
            let path = p.as_air().unwrap();
            for (id, naive) in table {
                assert_eq!(air_stat(path, id).unwrap(), naive(path.steps()), "{id} on {path}");
            }
            let ge2: u64 = (2..=n as u32).map(|k| common::pyramids(path.steps(), k)).sum();
            assert_eq!(air_stat(path, StatId::DeltaGe(2)).unwrap(), ge2);
            let le2 = common::pyramids(path.steps(), 1) + common::pyramids(path.steps(), 2);
            assert_eq!(air_stat(path, StatId::DeltaLe(2)).unwrap(), le2);
        }
    }
}

fn natural(q: &BigRational) -> u64 {
    assert!(q.is_integer(), "non-integral coefficient {q}");
    q.to_integer().try_into().unwrap()
}

/// Nonzero coefficients of `x^n` as `(y, z) -> value`.
fn row(s: &MultiSeries, n: usize) -> BTreeMap<(u64, u64), u64> {
    s.coeffs()[n]
        .iter()
        .map(|((j, k), c)| ((*j as u64, *k as u64), natural(c)))
        .collect()
}

type Stat = Box<dyn Fn(&[Step]) -> u64>;

fn zero() -> Stat {
    Box::new(|_| 0)
}

fn check_multi(id: GfId, family: impl Fn(&[Step]) -> bool, y: Stat, z: Stat, max_n: usize) {
    let s = gf(id, max_n).unwrap();
    let s = s.as_multi().unwrap();
    for n in 0..=max_n {
        let members: Vec<_> = common::air(n).into_iter().filter(|p| family(p)).collect();
        assert_eq!(row(s, n), common::joint(&members, &y, &z), "{id} at x^{n}");
    }
}

fn any(_: &[Step]) -> bool {
    true
}

#[test]
fn multivariate_series_match_joint_distributions() {
    let n = 12;
    let inc = common::nondecreasing;
    let zero_v = common::valleys_at_zero;
    check_multi(GfId::AXyz, any, Box::new(common::ups), Box::new(common::d1), n);
    check_multi(GfId::PXy, any, Box::new(common::peaks), zero(), n);
    check_multi(GfId::RXy, any, Box::new(common::returns), zero(), n);
    check_multi(GfId::CXy, any, Box::new(common::catastrophes), zero(), n);
    check_multi(GfId::AIncXyz, inc, Box::new(common::ups), Box::new(common::d1), n);
    check_multi(GfId::ZXyz, zero_v, Box::new(common::ups), Box::new(common::d1), n);
    check_multi(GfId::BXy, inc, Box::new(common::peaks), zero(), n);
    check_multi(GfId::RIncXy, inc, Box::new(common::returns), zero(), n);
    check_multi(GfId::CIncXy, inc, Box::new(common::catastrophes), zero(), n);
    check_multi(GfId::UXy, zero_v, Box::new(common::catastrophes), zero(), n);
    for k in 1..=3 {
        let pyr = move |p: &[Step]| common::pyramids(p, k);
        check_multi(GfId::PkXy(k), any, Box::new(pyr), zero(), n);
        check_multi(GfId::PkIncXy(k), inc, Box::new(pyr), zero(), n);
        check_multi(GfId::ZkXy(k), zero_v, Box::new(pyr), zero(), n);
    }
}

fn coeff(id: GfId, order: usize, n: usize) -> u64 {
    natural(&gf(id, order).unwrap().as_uni().unwrap().coeff(n))
}

#[test]
fn counting_series_match_enumeration() {
    let order = 14;
    for n in 0..=order {
        let count = |f| count_family(f, n);
        let c = |id| BigUint::from(coeff(id, order, n));
        assert_eq!(c(GfId::A), count(FamilyId::Air), "A n={n}");
        assert_eq!(c(GfId::AInc), count(FamilyId::AirInc), "A_INC n={n}");
        assert_eq!(c(GfId::A0), count(FamilyId::ValleysAtZero), "A0 n={n}");
        if n >= 1 {
            assert_eq!(c(GfId::P), count_family(FamilyId::Air, n - 1), "P n={n}");
            assert_eq!(c(GfId::S), count(FamilyId::SFamily), "S n={n}");
            assert_eq!(c(GfId::N), count(FamilyId::GrandPeaklessStartd), "N n={n}");
        }
        assert_eq!(c(GfId::G), count(FamilyId::GrandPeakless), "G n={n}");
    }
}

#[test]
fn popularity_series_match_brute_force() {
    let order = 13;
    let air_ids: [(GfId, StatId); 8] = [
        (GfId::PopU, StatId::UCount),
        (GfId::PopD, StatId::D1Count),
        (GfId::PopPeak, StatId::Peak),
        (GfId::PopRet, StatId::Ret),
        (GfId::PopCat, StatId::Cat),
        (GfId::Y(2), StatId::Delta(2)),
        (GfId::YGeq(2), StatId::DeltaGe(2)),
        (GfId::YLeq(3), StatId::DeltaLe(3)),
    ];
    let inc_ids: [(GfId, StatId); 8] = [
        (GfId::PopIncU, StatId::UCount),
        (GfId::PopIncD, StatId::D1Count),
        (GfId::PopIncPeak, StatId::Peak),
        (GfId::PopIncRet, StatId::Ret),
        (GfId::PopIncCat, StatId::Cat),
        (GfId::Wk(2), StatId::Delta(2)),
        (GfId::WGeq(2), StatId::DeltaGe(2)),
        (GfId::WLeq(3), StatId::DeltaLe(3)),
    ];
    for (family, ids) in [(FamilyId::Air, air_ids), (FamilyId::AirInc, inc_ids)] {
        for (id, s) in ids {
            let series = gf(id, order).unwrap();
            let series = series.as_uni().unwrap();
            for n in 2..=order {
                let brute = popularity(family, n, s).unwrap();
                assert_eq!(
                    BigUint::from(natural(&series.coeff(n))),
                    brute,
                    "{id} vs {s} at n={n}"
                );
            }
        }
    }
}
