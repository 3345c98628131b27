//! Brute-force oracles. Nothing here uses the library's generators or
//! statistic code; paths are raw step vectors checked with plain loops.

#![allow(dead_code)]

use std::collections::BTreeMap;

use airpocket::Step;

pub mod identities;

/// Every step sequence of length `n` over `U, D1..Dn` that stays
/// nonnegative, ends at 0 and has no two adjacent downs.
pub fn air(n: usize) -> Vec<Vec<Step>> {
    fn rec(n: usize, buf: &mut Vec<Step>, h: i64, out: &mut Vec<Vec<Step>>) {
        if buf.len() == n {
            if h == 0 {
                out.push(buf.clone());
            }
            return;
        }
        buf.push(Step::Up);
        rec(n, buf, h + 1, out);
        buf.pop();
        for k in 1..=n as u32 {
            if h - k as i64 >= 0 {
                buf.push(Step::Down(k));
                rec(n, buf, h - k as i64, out);
                buf.pop();
            }
        }
    }
    let mut raw = Vec::new();
    rec(n, &mut Vec::new(), 0, &mut raw);
    raw.into_iter()
        .filter(|p| !p.is_empty() && p.windows(2).all(|w| !(is_down(w[0]) && is_down(w[1]))))
        .collect()
}

/// Counts of paths with exactly `m` up steps: all of them, and those with
/// no `D1`. Plain DFS; the only pruning is on the number of ups.
pub fn count_by_ups(m: usize) -> (u64, u64) {
    fn rec(m: usize, ups: usize, h: usize, last_down: bool, has_d1: bool, out: &mut (u64, u64)) {
        if h == 0 && ups == m && m > 0 {
            out.0 += 1;
            out.1 += u64::from(!has_d1);
        }
        if ups < m {
            rec(m, ups + 1, h + 1, false, has_d1, out);
        }
        if !last_down {
            for k in 1..=h {
                rec(m, ups, h - k, true, has_d1 || k == 1, out);
            }
        }
    }
    let mut out = (0, 0);
    rec(m, 0, 0, false, false, &mut out);
    out
}

pub fn is_down(s: Step) -> bool {
    s != Step::Up
}

fn heights(p: &[Step]) -> Vec<i64> {
    let mut h = 0;
    p.iter()
        .map(|s| {
            h += match s {
                Step::Up => 1,
                Step::Down(k) => -(*k as i64),
            };
            h
        })
        .collect()
}

pub fn ups(p: &[Step]) -> u64 {
    p.iter().filter(|s| **s == Step::Up).count() as u64
}

pub fn d1(p: &[Step]) -> u64 {
    p.iter().filter(|s| **s == Step::Down(1)).count() as u64
}

pub fn peaks(p: &[Step]) -> u64 {
    p.windows(2)
        .filter(|w| w[0] == Step::Up && is_down(w[1]))
        .count() as u64
}

pub fn returns(p: &[Step]) -> u64 {
    heights(p).iter().filter(|h| **h == 0).count() as u64
}

pub fn catastrophes(p: &[Step]) -> u64 {
    heights(p)
        .iter()
        .zip(p)
        .filter(|(h, s)| **h == 0 && matches!(s, Step::Down(k) if *k >= 2))
        .count() as u64
}

/// Occurrences of `U^k D_k` as a factor.
pub fn pyramids(p: &[Step], k: u32) -> u64 {
    let k = k as usize;
    (k..p.len())
        .filter(|&i| p[i] == Step::Down(k as u32) && p[i - k..i].iter().all(|s| *s == Step::Up))
        .count() as u64
}

/// Heights of the valleys, i.e. between a down step and the next up step.
pub fn valleys(p: &[Step]) -> Vec<i64> {
    let h = heights(p);
    (0..p.len().saturating_sub(1))
        .filter(|&i| is_down(p[i]) && p[i + 1] == Step::Up)
        .map(|i| h[i])
        .collect()
}

pub fn nondecreasing(p: &[Step]) -> bool {
    valleys(p).windows(2).all(|w| w[0] <= w[1])
}

pub fn valleys_at_zero(p: &[Step]) -> bool {
    valleys(p).iter().all(|h| *h == 0)
}

pub fn popularity(paths: &[Vec<Step>], f: impl Fn(&[Step]) -> u64) -> u64 {
    paths.iter().map(|p| f(p)).sum()
}

/// Joint histogram of two statistics: `(a, b) -> count`.
pub fn joint(
    paths: &[Vec<Step>],
    a: impl Fn(&[Step]) -> u64,
    b: impl Fn(&[Step]) -> u64,
) -> BTreeMap<(u64, u64), u64> {
    let mut out = BTreeMap::new();
    for p in paths {
        *out.entry((a(p), b(p))).or_insert(0) += 1;
    }
    out
}

/// Words over `{L, R}` of length `2n` satisfying the meander rules, by
/// exhaustive filtering of all `4^n` words.
pub fn meanders(n: usize) -> Vec<String> {
    let mut out = Vec::new();
    for bits in 0u64..(1 << (2 * n)) {
        let w: String = (0..2 * n)
            .map(|i| if bits >> (2 * n - 1 - i) & 1 == 0 { 'L' } else { 'R' })
            .collect();
        if is_meander(&w) {
            out.push(w);
        }
    }
    out
}

/// Starts with `L`; `LL` only inside the initial run of `L`s; pairs read as
/// `LL`/`RR` flats, `RL` up, `LR` down must end at height 0 and, after the
/// wavy prefix, never follow a trailing `L` with another `L`.
fn is_meander(w: &str) -> bool {
    let b = w.as_bytes();
    if b.is_empty() || b[0] != b'L' {
        return false;
    }
    let run = b.iter().take_while(|c| **c == b'L').count();
    for i in run..b.len().saturating_sub(1) {
        if b[i] == b'L' && b[i + 1] == b'L' {
            return false;
        }
    }
    let mut h = 0i64;
    let mut prefix = true;
    for pair in b.chunks(2) {
        match (pair[0], pair[1]) {
            (b'L', b'L') => {
                if !prefix {
                    return false;
                }
            }
            (b'R', b'L') => {
                prefix = false;
                h += 1
            }
            (b'L', b'R') => {
                prefix = false;
                h -= 1
            }
            _ => prefix = false,
        }
    }
    h == 0
}

pub fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
