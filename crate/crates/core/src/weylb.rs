//! The hyperoctahedral Weyl group `W(B_m)`: signed permutations in window
//! notation, Coxeter lengths, weight functions, parabolic cosets and Bruhat
//! order.
//!
//! Conventions: `s_0` negates the first window entry under the right action on
//! positions; `s_i` (i >= 1) swaps entries i, i+1. All actions elsewhere in the
//! crate are right actions, matching the right action on index words.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum WeylError {
    #[error("weight function with m = 1 must have L(s1) = 1 (use `unconventional` to bypass)")]
    ConventionViolated,
    #[error("generator index {0} out of range for B_{1}")]
    BadGenerator(usize, usize),
}

/// A signed permutation in window notation `[w(1), ..., w(m)]`, where the
/// absolute values are a permutation of `1..=m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPerm {
    window: Vec<i64>,
}

impl SignedPerm {
    pub fn identity(m: usize) -> Self {
        SignedPerm { window: (1..=m as i64).collect() }
    }

    pub fn from_window(window: Vec<i64>) -> Self {
        let mut seen = BTreeSet::new();
        for &x in &window {
            assert!(x != 0 && x.unsigned_abs() as usize <= window.len(), "bad window entry");
            assert!(seen.insert(x.abs()), "repeated absolute value");
        }
        SignedPerm { window }
    }

    /// The simple reflection `s_i` of `W(B_m)`; `s_0` is the sign change.
    pub fn gen(m: usize, i: usize) -> Self {
        assert!(i < m, "generator index out of range");
        let mut w = Self::identity(m);
        if i == 0 {
            w.window[0] = -1;
        } else {
            w.window.swap(i - 1, i);
        }
        w
    }

    pub fn rank(&self) -> usize {
        self.window.len()
    }

    pub fn window(&self) -> &[i64] {
        &self.window
    }

    /// Value of the underlying signed bijection at `v` (sign-equivariant).
    pub fn apply(&self, v: i64) -> i64 {
        debug_assert!(v != 0 && v.unsigned_abs() as usize <= self.rank());
        let w = self.window[(v.abs() - 1) as usize];
        if v > 0 {
            w
        } else {
            -w
        }
    }

    /// Group product: `(xy)(v) = x(y(v))`.
    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.rank(), other.rank());
        let window = (1..=self.rank() as i64).map(|v| self.apply(other.apply(v))).collect();
        SignedPerm { window }
    }

    pub fn inv(&self) -> Self {
        let mut window = vec![0; self.rank()];
        for (i, &w) in self.window.iter().enumerate() {
            let pos = (w.abs() - 1) as usize;
            window[pos] = if w > 0 { i as i64 + 1 } else { -(i as i64 + 1) };
        }
        SignedPerm { window }
    }

    /// Right multiplication by `s_i`: acts on window positions.
    pub fn apply_gen(&self, i: usize) -> Self {
        assert!(i < self.rank(), "generator index out of range");
        let mut w = self.clone();
        if i == 0 {
            w.window[0] = -w.window[0];
        } else {
            w.window.swap(i - 1, i);
        }
        w
    }

    pub fn is_identity(&self) -> bool {
        self.window.iter().enumerate().all(|(i, &w)| w == i as i64 + 1)
    }

    /// Coxeter length: inversions + negatives + negative-sum pairs.
    pub fn length(&self) -> usize {
        let w = &self.window;
        let m = w.len();
        let mut len = 0usize;
        for i in 0..m {
            if w[i] < 0 {
                len += 1;
            }
            for j in (i + 1)..m {
                if w[i] > w[j] {
                    len += 1;
                }
                if w[i] + w[j] < 0 {
                    len += 1;
                }
            }
        }
        len
    }

    /// Right descent: `l(w s_i) < l(w)`.
    pub fn has_right_descent(&self, i: usize) -> bool {
        if i == 0 {
            self.window[0] < 0
        } else {
            self.window[i - 1] > self.window[i]
        }
    }

    /// Left descent: `l(s_i w) < l(w)`.
    pub fn has_left_descent(&self, i: usize) -> bool {
        SignedPerm::gen(self.rank(), i).mul(self).length() < self.length()
    }

    /// A deterministic reduced word: repeatedly strip the smallest right
    /// descent. Applying the word to the identity reproduces `self`.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut rev = Vec::with_capacity(w.length());
        while !w.is_identity() {
            let i = (0..w.rank()).find(|&i| w.has_right_descent(i)).expect("non-identity has a descent");
            rev.push(i);
            w = w.apply_gen(i);
        }
        rev.reverse();
        rev
    }

    /// Number of sign changes; equals the number of `s_0` letters in any
    /// reduced word.
    pub fn neg_count(&self) -> usize {
        self.window.iter().filter(|&&x| x < 0).count()
    }
}

impl fmt::Display for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, w) in self.window.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", w)?;
        }
        write!(f, "]")
    }
}

/// Render a generator word as `s0 s1 s0`; the empty word is `e`.
pub fn word_string(word: &[usize]) -> String {
    if word.is_empty() {
        return "e".to_string();
    }
    word.iter().map(|i| format!("s{}", i)).collect::<Vec<_>>().join(" ")
}

/// Apply a generator word to the identity.
pub fn perm_from_word(m: usize, word: &[usize]) -> SignedPerm {
    word.iter().fold(SignedPerm::identity(m), |w, &i| w.apply_gen(i))
}

/// All `2^m m!` elements of `W(B_m)`, sorted by (length, window lex).
pub fn enumerate_group(m: usize) -> Vec<SignedPerm> {
    let mut out = vec![SignedPerm::identity(m)];
    let mut seen: BTreeSet<SignedPerm> = out.iter().cloned().collect();
    let mut queue: VecDeque<SignedPerm> = out.iter().cloned().collect();
    while let Some(w) = queue.pop_front() {
        for i in 0..m {
            let x = w.apply_gen(i);
            if seen.insert(x.clone()) {
                out.push(x.clone());
                queue.push_back(x);
            }
        }
    }
    sort_by_length_lex(&mut out);
    out
}

pub fn sort_by_length_lex(elts: &mut [SignedPerm]) {
    elts.sort_by(|a, b| (a.length(), a.window()).cmp(&(b.length(), b.window())));
}

/// A weight function on `W(B_m)`, determined by `L(s_0)` and `L(s_1)`.
///
/// For `m = 1` the paper's convention pins `L(s_1) = 1` (the group does not
/// see `s_1`, but the quantum-group side still reads `q = v^{L(s_1)}`);
/// [`WeightFunction::unconventional`] bypasses the check for cross-parameter
/// verification grids.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WeightFunction {
    pub l0: i64,
    pub l1: i64,
    pub m: usize,
}

impl WeightFunction {
    pub fn new(l0: i64, l1: i64, m: usize) -> Result<Self, WeylError> {
        if m == 1 && l1 != 1 {
            return Err(WeylError::ConventionViolated);
        }
        Ok(WeightFunction { l0, l1, m })
    }

    pub fn unconventional(l0: i64, l1: i64, m: usize) -> Self {
        WeightFunction { l0, l1, m }
    }

    pub fn gen_value(&self, i: usize) -> i64 {
        if i == 0 {
            self.l0
        } else {
            self.l1
        }
    }

    /// `L(w)`, additive over any reduced word.
    pub fn value(&self, w: &SignedPerm) -> i64 {
        let n0 = w.neg_count() as i64;
        let total = w.length() as i64;
        let quick = self.l0 * n0 + self.l1 * (total - n0);
        debug_assert_eq!(quick, w.reduced_word().iter().map(|&i| self.gen_value(i)).sum::<i64>());
        quick
    }
}

/// A subset `J` of the simple reflections `{0, ..., m-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ParabolicSubset {
    gens: BTreeSet<usize>,
}

impl ParabolicSubset {
    pub fn new<I: IntoIterator<Item = usize>>(gens: I) -> Self {
        ParabolicSubset { gens: gens.into_iter().collect() }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn full(m: usize) -> Self {
        Self::new(0..m)
    }

    pub fn contains(&self, i: usize) -> bool {
        self.gens.contains(&i)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.gens.iter().copied()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }
}

impl fmt::Display for ParabolicSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, j) in self.gens.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", j)?;
        }
        write!(f, "}}")
    }
}

/// Minimal-length coset representatives for `W_J \ W` together with the
/// longest element of `W_J`.
#[derive(Debug, Clone)]
pub struct CosetData {
    /// `{ w : l(s_j w) > l(w) for all j in J }`, sorted by (length, lex).
    pub reps: Vec<SignedPerm>,
    /// Longest element of the parabolic subgroup `W_J`.
    pub longest_in_wj: SignedPerm,
    /// All of `W_J`.
    pub subgroup: Vec<SignedPerm>,
}

pub fn coset_data(j: &ParabolicSubset, m: usize) -> CosetData {
    // BFS closure of the subgroup.
    let mut subgroup = vec![SignedPerm::identity(m)];
    let mut seen: BTreeSet<SignedPerm> = subgroup.iter().cloned().collect();
    let mut queue: VecDeque<SignedPerm> = subgroup.iter().cloned().collect();
    while let Some(w) = queue.pop_front() {
        for i in j.iter() {
            let x = w.apply_gen(i);
            if seen.insert(x.clone()) {
                subgroup.push(x.clone());
                queue.push_back(x);
            }
        }
    }
    sort_by_length_lex(&mut subgroup);
    let longest_in_wj = subgroup.last().expect("subgroup nonempty").clone();

    let mut reps: Vec<SignedPerm> = enumerate_group(m)
        .into_iter()
        .filter(|w| j.iter().all(|i| !w.has_left_descent(i)))
        .collect();
    sort_by_length_lex(&mut reps);
    CosetData { reps, longest_in_wj, subgroup }
}

/// Bruhat order via the subword criterion: `y <= w` iff some subsequence of a
/// fixed reduced word of `w` is a reduced expression for `y`.
pub fn bruhat_leq(y: &SignedPerm, w: &SignedPerm) -> bool {
    debug_assert_eq!(y.rank(), w.rank());
    let ly = y.length();
    let lw = w.length();
    if ly > lw {
        return false;
    }
    if y == w {
        return true;
    }
    let word = w.reduced_word();
    // Scan the word left to right, tracking every element reachable as the
    // product of a reduced subsequence of the prefix.
    let mut reachable: BTreeSet<SignedPerm> = BTreeSet::new();
    reachable.insert(SignedPerm::identity(y.rank()));
    for &i in &word {
        let mut next = reachable.clone();
        for z in &reachable {
            let zl = z.length();
            if zl >= ly {
                continue;
            }
            let zs = z.apply_gen(i);
            if zs.length() == zl + 1 {
                next.insert(zs);
            }
        }
        reachable = next;
        if reachable.contains(y) {
            return true;
        }
    }
    false
}

/// Memoized all-pairs Bruhat order over a fixed list of elements.
pub struct BruhatTable {
    index: HashMap<SignedPerm, usize>,
    leq: Vec<Vec<bool>>,
}

impl BruhatTable {
    pub fn new(elts: &[SignedPerm]) -> Self {
        let index: HashMap<SignedPerm, usize> = elts.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        let leq = elts
            .iter()
            .map(|y| elts.iter().map(|w| bruhat_leq(y, w)).collect())
            .collect();
        BruhatTable { index, leq }
    }

    pub fn leq(&self, y: &SignedPerm, w: &SignedPerm) -> bool {
        self.leq[self.index[y]][self.index[w]]
    }
}
