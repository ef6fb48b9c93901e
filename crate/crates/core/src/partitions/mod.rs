//! Noncrossing pair partitions adapted to the words `W_i^k`.
//!
//! The word `W_0 = 1 2 ... p p* ... 2* 1*` has `2p` letters; `W_i` is its
//! cyclic shift to the right by `i` positions and `W_i^k` its `k`-fold
//! concatenation. A pair partition is adapted to a word when every block
//! joins a letter `l` with its partner `l*`.
//!
//! This module is the brute-force side of every polynomial identity in the
//! crate: it enumerates the adapted partitions explicitly and reads monomials
//! off their right legs.

mod diagram;
mod lemmas;

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::poly::MultiPoly;
use crate::scalar::ExactScalar;

pub use diagram::render_svg;
pub use lemmas::{verify_product_lemma, verify_shift_lemma};

/// Default cap on the word length `2pk` for exhaustive enumeration.
pub const DEFAULT_BUDGET: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub index: u32,
    pub starred: bool,
}

impl Letter {
    pub fn plain(index: u32) -> Self {
        Self {
            index,
            starred: false,
        }
    }

    pub fn star(index: u32) -> Self {
        Self {
            index,
            starred: true,
        }
    }

    pub fn complements(&self, other: &Letter) -> bool {
        self.index == other.index && self.starred != other.starred
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.starred {
            write!(f, "{}*", self.index)
        } else {
            write!(f, "{}", self.index)
        }
    }
}

/// Parameters of the word `W_shift^k` over the alphabet `{1..p, 1*..p*}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WordSpec {
    p: usize,
    shift: usize,
    k: usize,
}

impl WordSpec {
    pub fn new(p: usize, shift: usize, k: usize) -> Result<Self> {
        if p == 0 {
            return Err(Error::InvalidParameter("p must be >= 1".into()));
        }
        if shift > p {
            return Err(Error::InvalidParameter(format!(
                "shift {shift} outside 0..={p}"
            )));
        }
        Ok(Self { p, shift, k })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn shift(&self) -> usize {
        self.shift
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        2 * self.p * self.k
    }

    pub fn is_empty(&self) -> bool {
        self.k == 0
    }
}

/// The letter sequence of `W_shift^k`.
pub fn build_word(spec: &WordSpec) -> Vec<Letter> {
    let p = spec.p as u32;
    let base: Vec<Letter> = (1..=p)
        .map(Letter::plain)
        .chain((1..=p).rev().map(Letter::star))
        .collect();
    let n = base.len();
    let shifted: Vec<Letter> = (0..n).map(|x| base[(x + n - spec.shift) % n]).collect();
    shifted.iter().copied().cycle().take(n * spec.k).collect()
}

/// A perfect matching stored as an involution on `0..size` (positions are
/// 1-based in every textual form).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairPartition {
    partner: Vec<usize>,
}

impl PairPartition {
    pub fn empty() -> Self {
        Self {
            partner: Vec::new(),
        }
    }

    /// From a fixed-point-free involution given as 0-based partner indices.
    pub fn from_partners(partner: Vec<usize>) -> Result<Self> {
        let n = partner.len();
        for (a, &b) in partner.iter().enumerate() {
            if b >= n || b == a || partner[b] != a {
                return Err(Error::InvalidPartition(format!(
                    "position {} has invalid partner {}",
                    a + 1,
                    b + 1
                )));
            }
        }
        Ok(Self { partner })
    }

    /// From 1-based blocks covering `1..=size` exactly once.
    pub fn from_blocks(size: usize, blocks: &[(usize, usize)]) -> Result<Self> {
        let mut partner = vec![usize::MAX; size];
        for &(a, b) in blocks {
            if a == 0 || b == 0 || a > size || b > size || a == b {
                return Err(Error::InvalidPartition(format!("bad block ({a}, {b})")));
            }
            if partner[a - 1] != usize::MAX || partner[b - 1] != usize::MAX {
                return Err(Error::InvalidPartition(format!(
                    "block ({a}, {b}) overlaps"
                )));
            }
            partner[a - 1] = b - 1;
            partner[b - 1] = a - 1;
        }
        if partner.contains(&usize::MAX) {
            return Err(Error::InvalidPartition(
                "blocks do not cover every point".into(),
            ));
        }
        Ok(Self { partner })
    }

    pub fn size(&self) -> usize {
        self.partner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.partner.is_empty()
    }

    /// 0-based partner of 0-based position `a`.
    pub fn partner(&self, a: usize) -> usize {
        self.partner[a]
    }

    pub fn partners(&self) -> &[usize] {
        &self.partner
    }

    /// 1-based blocks `(left, right)` sorted by left leg.
    pub fn blocks(&self) -> Vec<(usize, usize)> {
        self.partner
            .iter()
            .enumerate()
            .filter(|&(a, &b)| a < b)
            .map(|(a, &b)| (a + 1, b + 1))
            .collect()
    }

    pub fn is_noncrossing(&self) -> bool {
        let blocks = self.blocks();
        for (x, &(i, j)) in blocks.iter().enumerate() {
            for &(q, r) in &blocks[x + 1..] {
                if (i < q && q < j && j < r) || (q < i && i < r && r < j) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_adapted_to(&self, word: &[Letter]) -> bool {
        word.len() == self.size()
            && self
                .partner
                .iter()
                .enumerate()
                .all(|(a, &b)| word[a].complements(&word[b]))
    }

    /// Arch height of each block keyed by 0-based left leg: innermost arches
    /// have height 1, an arch is one higher than the tallest arch it covers.
    pub fn heights(&self) -> BTreeMap<usize, usize> {
        fn height(pi: &PairPartition, a: usize, memo: &mut BTreeMap<usize, usize>) -> usize {
            if let Some(&h) = memo.get(&a) {
                return h;
            }
            let b = pi.partner[a];
            let mut inner = 0;
            let mut x = a + 1;
            while x < b {
                inner = inner.max(height(pi, x, memo));
                x = pi.partner[x] + 1;
            }
            memo.insert(a, inner + 1);
            inner + 1
        }
        let mut memo = BTreeMap::new();
        for (a, &b) in self.partner.iter().enumerate() {
            if a < b {
                height(self, a, &mut memo);
            }
        }
        memo
    }
}

impl fmt::Display for PairPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, b) in self.blocks() {
            write!(f, "({a},{b})")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for PairPartition {
    type Err = Error;

    /// Parses the line format `(1,4)(2,3)`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("not a partition line: {s:?}"));
        let mut blocks = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let inner = rest.strip_prefix('(').ok_or_else(bad)?;
            let close = inner.find(')').ok_or_else(bad)?;
            let (a, b) = inner[..close].split_once(',').ok_or_else(bad)?;
            let a: usize = a.trim().parse().map_err(|_| bad())?;
            let b: usize = b.trim().parse().map_err(|_| bad())?;
            blocks.push((a.min(b), a.max(b)));
            rest = inner[close + 1..].trim_start();
        }
        let size = 2 * blocks.len();
        Self::from_blocks(size, &blocks)
    }
}

/// Leg profile `(j_0, ..., j_p)`: a right leg labelled `l*` counts toward
/// `j_l`, a right leg labelled `l` toward `j_(l-1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LegProfile(pub Vec<u32>);

impl LegProfile {
    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl fmt::Display for LegProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub fn leg_profile(pi: &PairPartition, word: &[Letter]) -> Result<LegProfile> {
    if word.len() != pi.size() {
        return Err(Error::InvalidPartition(format!(
            "partition of {} points does not fit a word of length {}",
            pi.size(),
            word.len()
        )));
    }
    let p = word.iter().map(|l| l.index).max().unwrap_or(0) as usize;
    let mut profile = vec![0u32; p + 1];
    for (a, b) in pi.blocks() {
        let (left, right) = (word[a - 1], word[b - 1]);
        if !left.complements(&right) {
            return Err(Error::NotAdapted(a, b));
        }
        let slot = if right.starred {
            right.index
        } else {
            right.index - 1
        };
        profile[slot as usize] += 1;
    }
    Ok(LegProfile(profile))
}

fn check_budget(points: usize, budget: usize) -> Result<()> {
    if points > budget {
        return Err(Error::BudgetExceeded { points, budget });
    }
    Ok(())
}

/// Calls `visit` for every noncrossing pair partition adapted to `word`.
///
/// Order is deterministic: the leftmost unmatched position takes its
/// admissible partners from left to right, with the interval it encloses
/// resolved before the interval after it. An interval is only opened when
/// every letter index is balanced inside it, which is necessary for it to
/// admit an adapted matching.
pub fn visit_adapted<F: FnMut(&PairPartition)>(word: &[Letter], mut visit: F) {
    let n = word.len();
    if n % 2 == 1 {
        return;
    }
    let p = word.iter().map(|l| l.index as usize).max().unwrap_or(0);
    // balance[l][x] = (#l - #l*) among word[..x]
    let mut balance = vec![vec![0i32; n + 1]; p + 1];
    for (x, letter) in word.iter().enumerate() {
        for (l, row) in balance.iter_mut().enumerate() {
            let delta = if l == letter.index as usize {
                if letter.starred {
                    -1
                } else {
                    1
                }
            } else {
                0
            };
            row[x + 1] = row[x] + delta;
        }
    }
    let balanced = |lo: usize, hi: usize| balance.iter().all(|row| row[hi] == row[lo]);
    if !balanced(0, n) {
        return;
    }

    struct Ctx<'a, F> {
        word: &'a [Letter],
        partner: Vec<usize>,
        visit: F,
    }

    fn go<F: FnMut(&PairPartition)>(
        ctx: &mut Ctx<'_, F>,
        pending: &mut Vec<(usize, usize)>,
        balanced: &dyn Fn(usize, usize) -> bool,
    ) {
        let Some((lo, hi)) = pending.pop() else {
            let pi = PairPartition {
                partner: ctx.partner.clone(),
            };
            (ctx.visit)(&pi);
            return;
        };
        if lo == hi {
            go(ctx, pending, balanced);
        } else {
            let mut b = lo + 1;
            while b < hi {
                if ctx.word[lo].complements(&ctx.word[b]) && balanced(lo + 1, b) {
                    ctx.partner[lo] = b;
                    ctx.partner[b] = lo;
                    pending.push((b + 1, hi));
                    pending.push((lo + 1, b));
                    go(ctx, pending, balanced);
                    pending.pop();
                    pending.pop();
                }
                b += 2;
            }
        }
        pending.push((lo, hi));
    }

    let mut ctx = Ctx {
        word,
        partner: vec![0; n],
        visit: &mut visit,
    };
    let mut pending = vec![(0, n)];
    go(&mut ctx, &mut pending, &balanced);
}

/// All partitions adapted to `W_shift^k`, in enumeration order. `k = 0`
/// yields exactly the empty partition.
pub fn enumerate_adapted(spec: &WordSpec) -> Vec<PairPartition> {
    let word = build_word(spec);
    let mut out = Vec::new();
    visit_adapted(&word, |pi| out.push(pi.clone()));
    out
}

pub fn count_adapted(spec: &WordSpec, budget: usize) -> Result<u64> {
    check_budget(spec.len(), budget)?;
    let word = build_word(spec);
    let mut count = 0u64;
    visit_adapted(&word, |_| count += 1);
    Ok(count)
}

/// Number of adapted partitions of `W_shift^k` per leg profile.
pub fn profile_histogram(spec: &WordSpec, budget: usize) -> Result<BTreeMap<Vec<u32>, u64>> {
    check_budget(spec.len(), budget)?;
    let word = build_word(spec);
    let mut hist = BTreeMap::new();
    visit_adapted(&word, |pi| {
        let profile = leg_profile(pi, &word).expect("enumerated partitions are adapted");
        *hist.entry(profile.0).or_insert(0u64) += 1;
    });
    if spec.k() == 0 {
        // The empty partition has the all-zero profile of length p + 1.
        hist.clear();
        hist.insert(vec![0; spec.p() + 1], 1);
    }
    Ok(hist)
}

/// `P_k` as the sum of `d^profile` over partitions adapted to `W_0^k`.
pub fn brute_force_pk(p: usize, k: usize, budget: usize) -> Result<MultiPoly> {
    shifted_moment_poly(&WordSpec::new(p, 0, k)?, budget)
}

/// Profile-generating polynomial of `W_shift^k`: the coefficient of `x^k`
/// in the generating series `N_shift(x, d)`.
pub fn shifted_moment_poly(spec: &WordSpec, budget: usize) -> Result<MultiPoly> {
    let hist = profile_histogram(spec, budget)?;
    MultiPoly::from_terms(
        spec.p() + 1,
        hist.into_iter()
            .map(|(j, c)| (j, ExactScalar::from_integer(c.into()))),
    )
}

/// `N_shift(k, j)`, the number of partitions adapted to `W_shift^k` with leg
/// profile exactly `j`.
pub fn count_ni(p: usize, k: usize, shift: usize, j: &[u32], budget: usize) -> Result<u64> {
    let spec = WordSpec::new(p, shift, k)?;
    if j.len() != p + 1 {
        return Err(Error::InvalidParameter(format!(
            "profile {j:?} must have {} entries",
            p + 1
        )));
    }
    let hist = profile_histogram(&spec, budget)?;
    Ok(hist.get(j).copied().unwrap_or(0))
}

/// The bijection of `NC^2_m` that moves the block of position 1 from
/// enclosing the first stretch `sigma_1` to enclosing the second stretch
/// `sigma_2`: `sigma_1` slides one step left out from under it and the block
/// now spans from just after `sigma_1` to the last point. On positions this
/// is the cyclic rotation `x -> x - 1 (mod m)`.
pub fn phi(pi: &PairPartition) -> Result<PairPartition> {
    rotate(pi, 1)
}

pub fn phi_inverse(pi: &PairPartition) -> Result<PairPartition> {
    let n = pi.size();
    rotate(pi, n.saturating_sub(1))
}

pub fn phi_pow(pi: &PairPartition, times: usize) -> Result<PairPartition> {
    rotate(pi, times)
}

fn rotate(pi: &PairPartition, by: usize) -> Result<PairPartition> {
    let n = pi.size();
    if n == 0 {
        return Err(Error::InvalidPartition(
            "phi is undefined on the empty partition".into(),
        ));
    }
    let by = by % n;
    let mut partner = vec![0; n];
    for (a, &b) in pi.partner.iter().enumerate() {
        partner[(a + n - by) % n] = (b + n - by) % n;
    }
    Ok(PairPartition { partner })
}
