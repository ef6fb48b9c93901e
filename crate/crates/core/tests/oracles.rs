//! Exhaustive sweeps against a naive enumerator written independently of
//! the library: all perfect matchings that pair complementary letters, then
//! a plain crossing scan.

use std::collections::BTreeMap;

use fuss_narayana::partitions::{
    build_word, count_adapted, enumerate_adapted, leg_profile, profile_histogram, WordSpec,
    DEFAULT_BUDGET,
};
use fuss_narayana::scalar::int;
use fuss_narayana::{
    closed_form_pk, fuss_catalan, lagrange_coefficient, solve_functional_equation, MultiPoly,
};

/// Letters as signed integers: `l` is `+l`, `l*` is `-l`.
fn naive_word(p: i32, shift: usize, k: usize) -> Vec<i32> {
    let base: Vec<i32> = (1..=p).chain((1..=p).rev().map(|l| -l)).collect();
    let len = base.len();
    let rotated: Vec<i32> = (0..len).map(|i| base[(i + len - shift) % len]).collect();
    rotated.iter().copied().cycle().take(len * k).collect()
}

fn matchings(word: &[i32]) -> Vec<Vec<(usize, usize)>> {
    fn go(
        word: &[i32],
        free: &mut Vec<usize>,
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if free.is_empty() {
            out.push(cur.clone());
            return;
        }
        let a = free.remove(0);
        for idx in 0..free.len() {
            let b = free[idx];
            if word[a] == -word[b] {
                free.remove(idx);
                cur.push((a, b));
                go(word, free, cur, out);
                cur.pop();
                free.insert(idx, b);
            }
        }
        free.insert(0, a);
    }
    let mut out = Vec::new();
    go(
        word,
        &mut (0..word.len()).collect(),
        &mut Vec::new(),
        &mut out,
    );
    out
}

fn crosses(x: (usize, usize), y: (usize, usize)) -> bool {
    (x.0 < y.0 && y.0 < x.1 && x.1 < y.1) || (y.0 < x.0 && x.0 < y.1 && y.1 < x.1)
}

fn naive_histogram(p: usize, shift: usize, k: usize) -> BTreeMap<Vec<u32>, u64> {
    let word = naive_word(p as i32, shift, k);
    let mut hist = BTreeMap::new();
    for m in matchings(&word) {
        if m.iter()
            .enumerate()
            .any(|(i, x)| m[i + 1..].iter().any(|y| crosses(*x, *y)))
        {
            continue;
        }
        let mut j = vec![0u32; p + 1];
        for &(a, b) in &m {
            let right = word[a.max(b)];
            if right < 0 {
                j[(-right) as usize] += 1;
            } else {
                j[right as usize - 1] += 1;
            }
        }
        *hist.entry(j).or_insert(0) += 1;
    }
    hist
}

fn cases(max_points: usize) -> Vec<(usize, usize)> {
    (1..=3)
        .flat_map(|p| (0..=max_points / (2 * p)).map(move |k| (p, k)))
        .collect()
}

#[test]
fn naive_word_matches_printed_examples() {
    assert_eq!(naive_word(2, 0, 1), vec![1, 2, -2, -1]);
    assert_eq!(naive_word(2, 1, 1), vec![-1, 1, 2, -2]);
    assert_eq!(naive_word(2, 2, 1), vec![-2, -1, 1, 2]);
}

#[test]
fn words_agree_with_naive_construction() {
    for p in 1..=3 {
        for shift in 0..=p {
            let spec = WordSpec::new(p, shift, 2).unwrap();
            let got: Vec<i32> = build_word(&spec)
                .iter()
                .map(|l| {
                    if l.starred {
                        -(l.index as i32)
                    } else {
                        l.index as i32
                    }
                })
                .collect();
            assert_eq!(got, naive_word(p as i32, shift, 2), "p={p} shift={shift}");
        }
    }
}

#[test]
fn profile_histograms_match_naive_enumeration() {
    for (p, k) in cases(DEFAULT_BUDGET) {
        for shift in 0..=p {
            let spec = WordSpec::new(p, shift, k).unwrap();
            let lib = profile_histogram(&spec, DEFAULT_BUDGET).unwrap();
            let naive = if k == 0 {
                BTreeMap::from([(vec![0; p + 1], 1)])
            } else {
                naive_histogram(p, shift, k)
            };
            assert_eq!(lib, naive, "p={p} k={k} shift={shift}");
        }
    }
}

#[test]
fn counts_are_fuss_catalan_for_every_shift() {
    for (p, k) in cases(DEFAULT_BUDGET) {
        if k == 0 {
            continue;
        }
        let c = fuss_catalan(p as u64, k as u64).unwrap();
        for shift in 0..=p {
            let n = count_adapted(&WordSpec::new(p, shift, k).unwrap(), DEFAULT_BUDGET).unwrap();
            assert_eq!(int(n), c, "p={p} k={k} shift={shift}");
        }
    }
}

#[test]
fn enumerated_partitions_are_adapted_noncrossing_and_distinct() {
    for (p, k) in cases(12) {
        let spec = WordSpec::new(p, 0, k).unwrap();
        let word = build_word(&spec);
        let all = enumerate_adapted(&spec);
        let unique: std::collections::BTreeSet<_> = all.iter().cloned().collect();
        assert_eq!(unique.len(), all.len());
        for pi in &all {
            assert!(pi.is_noncrossing() && pi.is_adapted_to(&word));
            assert_eq!(leg_profile(pi, &word).unwrap().total() as usize, p * k);
        }
    }
}

#[test]
fn closed_form_matches_naive_counts() {
    for (p, k) in cases(DEFAULT_BUDGET) {
        if k == 0 {
            continue;
        }
        let naive = MultiPoly::from_terms(
            p + 1,
            naive_histogram(p, 0, k)
                .into_iter()
                .map(|(j, c)| (j, int(c))),
        )
        .unwrap();
        assert_eq!(closed_form_pk(p, k), naive, "p={p} k={k}");
    }
}

#[test]
fn series_routes_match_closed_form() {
    for p in 1..=3 {
        let k_max = DEFAULT_BUDGET / (2 * p);
        let g = solve_functional_equation(p, k_max).unwrap();
        for k in 1..=k_max {
            let closed = closed_form_pk(p, k);
            let d0 = MultiPoly::var(p + 1, 0);
            assert_eq!(*g.coeff(k), &d0 * &closed, "fixed point p={p} k={k}");
            assert_eq!(
                lagrange_coefficient(p, k).unwrap(),
                &d0 * &closed,
                "Lagrange p={p} k={k}"
            );
        }
    }
}

#[test]
fn closed_form_degree_and_variable_bounds() {
    for p in 1..=4 {
        for k in 1..=6 {
            let poly = closed_form_pk(p, k);
            assert!(poly.is_homogeneous_of((p * k) as u32));
            for (e, c) in poly.terms() {
                assert!(c.is_integer());
                // d_0 appears at most k - 1 times, every other d_i at least once and at most k times.
                assert!(e[0] < k as u32);
                assert!(e[1..].iter().all(|&x| x >= 1 && x <= k as u32), "{e:?}");
            }
        }
    }
}
