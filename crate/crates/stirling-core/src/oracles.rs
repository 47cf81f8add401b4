//! Brute-force enumerators used as ground truth for the triangle recurrences:
//! derangements by cycle count, marked Stirling permutations of every order,
//! increasing ternary and ordered trees with the bijections between them, and
//! phylogenetic trees in three flavors.
//!
//! Every enumerator checks an explicit size guard and streams its objects
//! through a callback or iterator; nothing above a few thousand objects is
//! materialized.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::{self, Write};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::arith::binomial;
use crate::mpoly::MPoly;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("{what} = {value} exceeds the enumeration guard {limit}")]
    GuardExceeded { what: &'static str, value: usize, limit: usize },
    #[error("invalid input: {0}")]
    InvalidInput(&'static str),
}

fn guard(what: &'static str, value: usize, limit: usize) -> Result<(), OracleError> {
    if value > limit {
        Err(OracleError::GuardExceeded { what, value, limit })
    } else {
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Derangements

pub const DERANGEMENT_GUARD: usize = 12;

/// Number of fixed-point-free permutations of `[big_n]` with exactly `k`
/// cycles, by depth-first construction of every derangement.
pub fn count_derangements_by_cycles(big_n: usize, k: usize) -> Result<u64, OracleError> {
    Ok(derangement_cycle_histogram(big_n)?.get(k).copied().unwrap_or(0))
}

/// `hist[k]` = derangements of `[big_n]` with `k` cycles.
pub fn derangement_cycle_histogram(big_n: usize) -> Result<Vec<u64>, OracleError> {
    guard("N", big_n, DERANGEMENT_GUARD)?;
    let mut hist = vec![0u64; big_n + 1];
    let mut image = vec![usize::MAX; big_n];
    let mut used = vec![false; big_n];
    fn rec(i: usize, image: &mut [usize], used: &mut [bool], hist: &mut [u64]) {
        let n = image.len();
        if i == n {
            let mut seen = vec![false; n];
            let mut cycles = 0;
            for s in 0..n {
                if !seen[s] {
                    cycles += 1;
                    let mut j = s;
                    while !seen[j] {
                        seen[j] = true;
                        j = image[j];
                    }
                }
            }
            hist[cycles] += 1;
            return;
        }
        for v in 0..n {
            if v != i && !used[v] {
                used[v] = true;
                image[i] = v;
                rec(i + 1, image, used, hist);
                used[v] = false;
            }
        }
    }
    rec(0, &mut image, &mut used, &mut hist);
    Ok(hist)
}

// ---------------------------------------------------------------------------
// Stirling permutations

pub const STIRLING_WORD_GUARD: usize = 14;

/// A word over positive letters with dots; `marks` lists, in increasing
/// order, the positions `p` such that a dot sits between `letters[p]` and
/// `letters[p + 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StirlingWord {
    pub letters: Vec<u32>,
    pub marks: Vec<usize>,
}

impl StirlingWord {
    pub fn new(letters: Vec<u32>) -> Self {
        Self { letters, marks: Vec::new() }
    }

    /// Every letter occurring twice has only larger letters between its
    /// occurrences, and every dot sits on an ascent.
    pub fn is_stirling(&self) -> bool {
        let mut first: BTreeMap<u32, usize> = BTreeMap::new();
        for (i, &a) in self.letters.iter().enumerate() {
            if let Some(&j) = first.get(&a) {
                if self.letters[j + 1..i].iter().any(|&b| b <= a) {
                    return false;
                }
            } else {
                first.insert(a, i);
            }
        }
        self.marks.iter().all(|&p| p + 1 < self.letters.len() && self.letters[p] < self.letters[p + 1])
    }
}

impl fmt::Display for StirlingWord {
    /// Letters separated by spaces with a `.` token for each dot, e.g.
    /// `1 2 2 . 3 . 4 4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_char(' ')?;
            }
            write!(f, "{a}")?;
            if self.marks.binary_search(&i).is_ok() {
                f.write_str(" .")?;
            }
        }
        Ok(())
    }
}

/// Multiplicity of each letter `1..=(r-1)n` in the multiset `M_n^(r)`: two at
/// multiples of `r - 1`, one elsewhere. Index 0 is unused.
pub fn stirling_multiset(r: u32, n: usize) -> Vec<u8> {
    assert!(r >= 2, "order at least 2");
    let step = (r - 1) as usize;
    let mut m = vec![0u8; step * n + 1];
    for (a, slot) in m.iter_mut().enumerate().skip(1) {
        *slot = if a % step == 0 { 2 } else { 1 };
    }
    m
}

/// Streaming enumeration of the Stirling permutations of `M_n^(r)` in
/// lexicographic order. Letters whose first copy has been placed but not the
/// second form an increasing stack; a new letter must exceed its top and a
/// second copy is allowed only for the top.
pub struct StirlingPerms {
    copies: Vec<u8>,
    left: Vec<u8>,
    open: Vec<u32>,
    word: Vec<u32>,
    total: usize,
    cursor: u32,
    pending: bool,
    done: bool,
}

impl StirlingPerms {
    fn valid(&self, a: u32) -> bool {
        let ai = a as usize;
        if self.left[ai] == 0 {
            return false;
        }
        let top = self.open.last().copied();
        if self.left[ai] == self.copies[ai] {
            top.is_none_or(|t| a > t)
        } else {
            top == Some(a)
        }
    }

    fn place(&mut self, a: u32) {
        let ai = a as usize;
        if self.copies[ai] == 2 {
            if self.left[ai] == 2 {
                self.open.push(a);
            } else {
                self.open.pop();
            }
        }
        self.left[ai] -= 1;
        self.word.push(a);
    }

    fn unplace(&mut self) -> u32 {
        let a = self.word.pop().unwrap();
        let ai = a as usize;
        self.left[ai] += 1;
        if self.copies[ai] == 2 {
            if self.left[ai] == 2 {
                self.open.pop();
            } else {
                self.open.push(a);
            }
        }
        a
    }
}

impl Iterator for StirlingPerms {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        if self.done {
            return None;
        }
        if self.pending {
            self.pending = false;
            if self.word.is_empty() {
                self.done = true;
                return None;
            }
            self.cursor = self.unplace() + 1;
        }
        let max = self.copies.len() as u32;
        loop {
            if self.word.len() == self.total {
                self.pending = true;
                return Some(self.word.clone());
            }
            match (self.cursor.max(1)..max).find(|&a| self.valid(a)) {
                Some(a) => {
                    self.place(a);
                    self.cursor = 1;
                }
                None => {
                    if self.word.is_empty() {
                        self.done = true;
                        return None;
                    }
                    self.cursor = self.unplace() + 1;
                }
            }
        }
    }
}

/// All Stirling permutations of `M_n^(r)`; there are `(rn)!/(r^n n!)`.
pub fn enumerate_stirling_perms(r: u32, n: usize) -> Result<StirlingPerms, OracleError> {
    if r < 2 {
        return Err(OracleError::InvalidInput("order must be at least 2"));
    }
    guard("r*n", r as usize * n, STIRLING_WORD_GUARD)?;
    let copies = stirling_multiset(r, n);
    let total = copies.iter().map(|&c| c as usize).sum();
    Ok(StirlingPerms {
        left: copies.clone(),
        copies,
        open: Vec::new(),
        word: Vec::new(),
        total,
        cursor: 1,
        pending: false,
        done: false,
    })
}

/// Consecutive ascents of a word over `M_n^(r)`: block `i` in `1..=n` is the
/// run `(r-1)(i-1)+1, ..., (r-1)(i-1)+(r-2)` followed by the first copy of
/// `(r-1)i`, and counts when it occurs contiguously right after a smaller
/// letter. For `r = 2` these are the ordinary ascents, indexed by the letter
/// that ends them.
pub fn consecutive_ascents(w: &[u32], r: u32) -> Vec<usize> {
    assert!(r >= 2, "order at least 2");
    let step = r - 1;
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (p, &a) in w.iter().enumerate() {
        let first = seen.insert(a);
        if !first || a % step != 0 || p < step as usize {
            continue;
        }
        let i = a / step;
        let start = p + 1 - step as usize;
        let run_ok = (0..step).all(|j| w[start + j as usize] == step * (i - 1) + 1 + j);
        if run_ok && w[start - 1] < w[start] {
            out.push(i as usize);
        }
    }
    out
}

/// Dot positions marking the consecutive ascent of block `i`: one dot before
/// each letter of the block run.
pub fn ascent_mark_positions(w: &[u32], r: u32, i: usize) -> Vec<usize> {
    let step = (r - 1) as usize;
    let target = (step * i) as u32;
    let p = w.iter().position(|&a| a == target).expect("block letter present");
    (p + 1 - step..=p).map(|q| q - 1).collect()
}

/// Marked-word counts of order `r` and size `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedWordCounts {
    /// `b[k]` = words with exactly `k` consecutive ascents.
    pub by_ascents: Vec<u64>,
    /// `v[k]` = (word, marked set) pairs with `k` marked consecutive ascents.
    pub by_marks: Vec<u64>,
}

/// Enumerates every word and every subset of its consecutive ascents.
pub fn marked_word_counts(r: u32, n: usize) -> Result<MarkedWordCounts, OracleError> {
    let mut by_ascents = vec![0u64; n + 1];
    let mut by_marks = vec![0u64; n + 1];
    for w in enumerate_stirling_perms(r, n)? {
        let asc = consecutive_ascents(&w, r);
        by_ascents[asc.len()] += 1;
        for subset in 0u32..(1 << asc.len()) {
            by_marks[subset.count_ones() as usize] += 1;
        }
    }
    Ok(MarkedWordCounts { by_ascents, by_marks })
}

/// `|V^(r)_{n,k}|`.
pub fn count_marked_words(r: u32, n: usize, k: usize) -> Result<u64, OracleError> {
    Ok(marked_word_counts(r, n)?.by_marks.get(k).copied().unwrap_or(0))
}

/// The marked words with exactly `k` dots, for display.
pub fn marked_words(r: u32, n: usize, k: usize) -> Result<Vec<StirlingWord>, OracleError> {
    guard("r*n", r as usize * n, 10)?;
    let mut out = Vec::new();
    for w in enumerate_stirling_perms(r, n)? {
        let asc = consecutive_ascents(&w, r);
        for subset in 0u32..(1 << asc.len()) {
            if subset.count_ones() as usize != k {
                continue;
            }
            let mut marks: Vec<usize> = asc
                .iter()
                .enumerate()
                .filter(|(j, _)| subset >> j & 1 == 1)
                .flat_map(|(_, &i)| ascent_mark_positions(&w, r, i))
                .collect();
            marks.sort_unstable();
            out.push(StirlingWord { letters: w.clone(), marks });
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Ternary trees

pub const TREE_GUARD: usize = 9;

pub const LEFT: usize = 0;
pub const MIDDLE: usize = 1;
pub const RIGHT: usize = 2;

/// Labeled ternary tree. `marks` holds the child labels whose incoming edge
/// is marked; only middle and right edges may be marked.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TernaryTree {
    pub root: Option<u32>,
    pub kids: BTreeMap<u32, [Option<u32>; 3]>,
    pub marks: BTreeSet<u32>,
}

impl TernaryTree {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn singleton(v: u32) -> Self {
        let mut t = Self::default();
        t.root = Some(v);
        t.kids.insert(v, [None; 3]);
        t
    }

    pub fn len(&self) -> usize {
        self.kids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kids.is_empty()
    }

    pub fn child(&self, v: u32, slot: usize) -> Option<u32> {
        self.kids.get(&v).and_then(|c| c[slot])
    }

    fn attach(&mut self, parent: u32, slot: usize, sub: TernaryTree) {
        if let Some(c) = sub.root {
            self.kids.get_mut(&parent).expect("parent present")[slot] = Some(c);
            self.kids.extend(sub.kids);
            self.marks.extend(sub.marks);
        }
    }

    /// Parent and slot of every non-root vertex.
    pub fn parents(&self) -> BTreeMap<u32, (u32, usize)> {
        let mut out = BTreeMap::new();
        for (&v, c) in &self.kids {
            for (s, ch) in c.iter().enumerate() {
                if let Some(ch) = ch {
                    out.insert(*ch, (v, s));
                }
            }
        }
        out
    }

    pub fn edge_count(&self, slot: usize) -> usize {
        self.kids.values().filter(|c| c[slot].is_some()).count()
    }

    /// Labels increase along every edge.
    pub fn is_increasing(&self) -> bool {
        self.kids.iter().all(|(&v, c)| c.iter().flatten().all(|&ch| ch > v))
    }
}

impl fmt::Display for TernaryTree {
    /// Bracketed form `v[L,M,R]` with `-` for a missing child, a bare label
    /// for a leaf, and `*` before a child whose edge is marked.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(t: &TernaryTree, v: u32, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            if t.marks.contains(&v) {
                f.write_char('*')?;
            }
            write!(f, "{v}")?;
            let c = t.kids[&v];
            if c.iter().all(Option::is_none) {
                return Ok(());
            }
            f.write_char('[')?;
            for (s, ch) in c.iter().enumerate() {
                if s > 0 {
                    f.write_char(',')?;
                }
                match ch {
                    Some(ch) => go(t, *ch, f)?,
                    None => f.write_char('-')?,
                }
            }
            f.write_char(']')
        }
        match self.root {
            Some(r) => go(self, r, f),
            None => f.write_str("()"),
        }
    }
}

/// Stirling permutation of `{1,1,...,n,n}` to increasing ternary tree:
/// `w = w0 a w1 a w2` with `a` the least letter becomes root `a` with
/// subtrees of `w0`, `w1`, `w2` on the left, middle and right.
pub fn word_to_ternary(w: &[u32]) -> Result<TernaryTree, OracleError> {
    let mut count: BTreeMap<u32, usize> = BTreeMap::new();
    for &a in w {
        *count.entry(a).or_default() += 1;
    }
    if count.values().any(|&c| c != 2) || !StirlingWord::new(w.to_vec()).is_stirling() {
        return Err(OracleError::InvalidInput("not a Stirling permutation with every letter doubled"));
    }
    fn build(w: &[u32]) -> TernaryTree {
        let Some(&a) = w.iter().min() else {
            return TernaryTree::empty();
        };
        let i = w.iter().position(|&b| b == a).unwrap();
        let j = i + 1 + w[i + 1..].iter().position(|&b| b == a).unwrap();
        let mut t = TernaryTree::singleton(a);
        t.attach(a, LEFT, build(&w[..i]));
        t.attach(a, MIDDLE, build(&w[i + 1..j]));
        t.attach(a, RIGHT, build(&w[j + 1..]));
        t
    }
    Ok(build(w))
}

/// Inverse of [`word_to_ternary`]: `Word(L) a Word(M) a Word(R)`.
pub fn ternary_to_word(t: &TernaryTree) -> Vec<u32> {
    fn go(t: &TernaryTree, v: Option<u32>, out: &mut Vec<u32>) {
        let Some(v) = v else { return };
        let c = t.kids[&v];
        go(t, c[LEFT], out);
        out.push(v);
        go(t, c[MIDDLE], out);
        out.push(v);
        go(t, c[RIGHT], out);
    }
    let mut out = Vec::new();
    go(t, t.root, &mut out);
    out
}

/// Tree of a word with distinct letters, using middle and right edges only:
/// `u i v` with `i` least becomes root `i` with middle `Tree(u)` and right
/// `Tree(v)`.
pub fn word_tree(w: &[u32]) -> Result<TernaryTree, OracleError> {
    if w.iter().collect::<BTreeSet<_>>().len() != w.len() {
        return Err(OracleError::InvalidInput("repeated letter"));
    }
    fn build(w: &[u32]) -> TernaryTree {
        let Some(&a) = w.iter().min() else {
            return TernaryTree::empty();
        };
        let i = w.iter().position(|&b| b == a).unwrap();
        let mut t = TernaryTree::singleton(a);
        t.attach(a, MIDDLE, build(&w[..i]));
        t.attach(a, RIGHT, build(&w[i + 1..]));
        t
    }
    Ok(build(w))
}

/// `Word(M) i Word(R)` from vertex `v` down, ignoring left children below.
fn mr_word(t: &TernaryTree, v: Option<u32>, out: &mut Vec<u32>) {
    let Some(v) = v else { return };
    let c = t.kids[&v];
    mr_word(t, c[MIDDLE], out);
    out.push(v);
    mr_word(t, c[RIGHT], out);
}

/// Inverse of [`word_tree`] on trees without left edges.
pub fn tree_word(t: &TernaryTree) -> Result<Vec<u32>, OracleError> {
    if t.edge_count(LEFT) > 0 {
        return Err(OracleError::InvalidInput("tree has a left edge"));
    }
    let mut out = Vec::new();
    mr_word(t, t.root, &mut out);
    Ok(out)
}

/// Parent of the nearest left-child ancestor of `j` (inclusive): climb while
/// the incoming edge is middle or right, then step over the left edge.
pub fn lanc(t: &TernaryTree, j: u32) -> Option<u32> {
    let parents = t.parents();
    let mut v = j;
    loop {
        let &(p, s) = parents.get(&v)?;
        if s == LEFT {
            return Some(p);
        }
        v = p;
    }
}

// ---------------------------------------------------------------------------
// Increasing trees by insertion

/// Calls `f` on every increasing `arity`-ary tree on `{0,...,n}` rooted at
/// `0`, given as child slots per vertex. With `restricted`, the root may use
/// slot 0 only.
pub fn for_each_increasing_tree(arity: usize, n: usize, restricted: bool, mut f: impl FnMut(&[Vec<Option<u32>>])) {
    let mut kids = vec![vec![None; arity]; n + 1];
    fn rec(j: usize, arity: usize, restricted: bool, kids: &mut Vec<Vec<Option<u32>>>, f: &mut dyn FnMut(&[Vec<Option<u32>>])) {
        if j == kids.len() {
            f(kids);
            return;
        }
        for v in 0..j {
            let slots = if restricted && v == 0 { 1 } else { arity };
            for s in 0..slots {
                if kids[v][s].is_none() {
                    kids[v][s] = Some(j as u32);
                    rec(j + 1, arity, restricted, kids, f);
                    kids[v][s] = None;
                }
            }
        }
    }
    rec(1, arity, restricted, &mut kids, &mut f);
}

fn ternary_from_slots(kids: &[Vec<Option<u32>>], offset: u32) -> TernaryTree {
    let mut t = TernaryTree::empty();
    if kids.is_empty() {
        return t;
    }
    t.root = Some(offset);
    for (v, c) in kids.iter().enumerate() {
        t.kids.insert(v as u32 + offset, [c[0].map(|x| x + offset), c[1].map(|x| x + offset), c[2].map(|x| x + offset)]);
    }
    t
}

/// Calls `f` on every increasing ternary tree: on `[n] ∪ {0}` with the root
/// having only a left child when `primed`, on `[n]` otherwise.
pub fn for_each_increasing_ternary(n: usize, primed: bool, mut f: impl FnMut(&TernaryTree)) -> Result<(), OracleError> {
    guard("n", n, TREE_GUARD)?;
    if primed {
        for_each_increasing_tree(3, n, true, |k| f(&ternary_from_slots(k, 0)));
    } else if n == 0 {
        f(&TernaryTree::empty());
    } else {
        for_each_increasing_tree(3, n - 1, false, |k| f(&ternary_from_slots(k, 1)));
    }
    Ok(())
}

/// `hist[k]` = increasing ternary trees with `k` left edges.
pub fn enumerate_increasing_ternary(n: usize, primed: bool) -> Result<Vec<u64>, OracleError> {
    let mut hist = vec![0u64; n + 1];
    for_each_increasing_ternary(n, primed, |t| hist[t.edge_count(LEFT)] += 1)?;
    Ok(hist)
}

/// `hist[k]` = trees of `T'_n` with middle and right edges optionally marked
/// and exactly `k` unmarked edges, every marking listed explicitly.
pub fn edge_marked_ternary_counts(n: usize) -> Result<Vec<u64>, OracleError> {
    let mut hist = vec![0u64; n + 1];
    for_each_increasing_ternary(n, true, |t| {
        let markable: Vec<u32> = t
            .kids
            .values()
            .flat_map(|c| [c[MIDDLE], c[RIGHT]])
            .flatten()
            .collect();
        for mask in 0u32..(1 << markable.len()) {
            let mut marked = t.clone();
            marked.marks = markable.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect();
            hist[n - marked.marks.len()] += 1;
        }
    })?;
    Ok(hist)
}

// ---------------------------------------------------------------------------
// Ordered trees

/// Labeled rooted tree with ordered children; `marks` holds marked vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrderedTree {
    pub root: u32,
    pub children: BTreeMap<u32, Vec<u32>>,
    pub marks: BTreeSet<u32>,
}

impl OrderedTree {
    pub fn singleton(v: u32) -> Self {
        Self { root: v, children: BTreeMap::from([(v, Vec::new())]), marks: BTreeSet::new() }
    }

    pub fn len(&self) -> usize {
        self.children.len()
    }

    pub fn is_empty(&self) -> bool {
        self.children.is_empty()
    }

    pub fn ch(&self, v: u32) -> &[u32] {
        self.children.get(&v).map_or(&[], Vec::as_slice)
    }

    pub fn internal_count(&self) -> usize {
        self.children.values().filter(|c| !c.is_empty()).count()
    }

    pub fn leaves(&self) -> Vec<u32> {
        self.children.iter().filter(|(_, c)| c.is_empty()).map(|(&v, _)| v).collect()
    }

    pub fn parent(&self, j: u32) -> Option<u32> {
        self.children.iter().find(|(_, c)| c.contains(&j)).map(|(&v, _)| v)
    }
}

impl fmt::Display for OrderedTree {
    /// Bracketed form `v(c1,c2,...)`, a bare label for a leaf, `*` before a
    /// marked vertex.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(t: &OrderedTree, v: u32, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            if t.marks.contains(&v) {
                f.write_char('*')?;
            }
            write!(f, "{v}")?;
            let c = t.ch(v);
            if c.is_empty() {
                return Ok(());
            }
            f.write_char('(')?;
            for (i, &ch) in c.iter().enumerate() {
                if i > 0 {
                    f.write_char(',')?;
                }
                go(t, ch, f)?;
            }
            f.write_char(')')
        }
        go(self, self.root, f)
    }
}

/// Calls `f` on every increasing ordered tree on `{0,...,n}`: vertex `j` is
/// inserted at any of the `2j - 1` child positions among earlier vertices.
pub fn for_each_increasing_ordered(n: usize, mut f: impl FnMut(&OrderedTree)) -> Result<(), OracleError> {
    guard("n", n, TREE_GUARD)?;
    let mut t = OrderedTree::singleton(0);
    fn rec(j: u32, n: u32, t: &mut OrderedTree, f: &mut dyn FnMut(&OrderedTree)) {
        if j > n {
            f(t);
            return;
        }
        t.children.insert(j, Vec::new());
        for v in 0..j {
            for pos in 0..=t.children[&v].len() {
                t.children.get_mut(&v).unwrap().insert(pos, j);
                rec(j + 1, n, t, f);
                t.children.get_mut(&v).unwrap().remove(pos);
            }
        }
        t.children.remove(&j);
    }
    rec(1, n as u32, &mut t, &mut f);
    Ok(())
}

/// `hist[k]` = increasing ordered trees on `{0,...,n}` with `k` internal
/// vertices.
pub fn enumerate_increasing_ordered(n: usize) -> Result<Vec<u64>, OracleError> {
    let mut hist = vec![0u64; n + 1];
    for_each_increasing_ordered(n, |t| hist[t.internal_count()] += 1)?;
    Ok(hist)
}

/// Which leaves of a vertex-marked ordered tree are free to carry a mark.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LeafMarking {
    /// Every leaf optional; for `n = 0` the lone vertex is marked.
    AllLeaves,
    /// The largest label `n`, always a leaf, is always marked; every other
    /// leaf optional. For `n = 0` this is the same rule as above.
    MaxLeafForced,
}

/// `hist[k]` = vertex-marked increasing ordered trees on `{0,...,n}` with `k`
/// unmarked vertices, every marking listed explicitly.
pub fn vertex_marked_ordered_counts(n: usize, rule: LeafMarking) -> Result<Vec<u64>, OracleError> {
    let mut hist = vec![0u64; n + 2];
    for_each_increasing_ordered(n, |t| {
        let free: Vec<u32> = match rule {
            _ if n == 0 => Vec::new(),
            LeafMarking::AllLeaves => t.leaves(),
            LeafMarking::MaxLeafForced => t.leaves().into_iter().filter(|&v| v != n as u32).collect(),
        };
        let forced: BTreeSet<u32> = if n == 0 || rule == LeafMarking::MaxLeafForced { BTreeSet::from([n as u32]) } else { BTreeSet::new() };
        for mask in 0u32..(1 << free.len()) {
            let mut marked = t.clone();
            marked.marks = forced.clone();
            marked.marks.extend(free.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v));
            hist[t.len() - marked.marks.len()] += 1;
        }
    })?;
    Ok(hist)
}

// ---------------------------------------------------------------------------
// The bijection between T'_n and increasing ordered trees

/// `ch_S(j)` = `Word(left_T(j))`, the middle/right word hanging from the
/// left child of `j`.
pub fn phi(t: &TernaryTree) -> Result<OrderedTree, OracleError> {
    if t.root != Some(0) || t.child(0, MIDDLE).is_some() || t.child(0, RIGHT).is_some() {
        return Err(OracleError::InvalidInput("root must be 0 with at most a left child"));
    }
    if !t.is_increasing() {
        return Err(OracleError::InvalidInput("labels must increase away from the root"));
    }
    let mut s = OrderedTree::singleton(0);
    for &v in t.kids.keys() {
        let mut w = Vec::new();
        mr_word(t, t.child(v, LEFT), &mut w);
        s.children.insert(v, w);
    }
    Ok(s)
}

/// `left_T(i)` = `Tree(ch_S(i))`.
pub fn psi(s: &OrderedTree) -> Result<TernaryTree, OracleError> {
    if s.root != 0 {
        return Err(OracleError::InvalidInput("root must be 0"));
    }
    if s.children.iter().any(|(&v, c)| c.iter().any(|&x| x <= v)) {
        return Err(OracleError::InvalidInput("labels must increase away from the root"));
    }
    let mut t = TernaryTree::singleton(0);
    for &v in s.children.keys() {
        t.kids.entry(v).or_insert([None; 3]);
    }
    for (&v, c) in &s.children {
        let sub = word_tree(c)?;
        if let Some(r) = sub.root {
            t.kids.get_mut(&v).unwrap()[LEFT] = Some(r);
            for (u, k) in sub.kids {
                let slot = t.kids.get_mut(&u).unwrap();
                slot[MIDDLE] = k[MIDDLE];
                slot[RIGHT] = k[RIGHT];
            }
        }
    }
    Ok(t)
}

// ---------------------------------------------------------------------------
// Phylogenetic trees

pub const PHYLO_GUARD: usize = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PhyloFlavor {
    Unordered,
    Cyclic,
    Ordered,
}

/// Leaf-labeled tree; every internal vertex has at least two children.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PhyloNode {
    Leaf(u32),
    Internal(Vec<PhyloNode>),
}

impl PhyloNode {
    pub fn min_leaf(&self) -> u32 {
        match self {
            PhyloNode::Leaf(a) => *a,
            PhyloNode::Internal(c) => c.iter().map(PhyloNode::min_leaf).min().expect("nonempty"),
        }
    }

    pub fn internal_count(&self) -> usize {
        match self {
            PhyloNode::Leaf(_) => 0,
            PhyloNode::Internal(c) => 1 + c.iter().map(PhyloNode::internal_count).sum::<usize>(),
        }
    }

    /// Out-degrees of the internal vertices.
    pub fn degrees(&self, out: &mut Vec<usize>) {
        if let PhyloNode::Internal(c) = self {
            out.push(c.len());
            for ch in c {
                ch.degrees(out);
            }
        }
    }

    pub fn leaves(&self, out: &mut Vec<u32>) {
        match self {
            PhyloNode::Leaf(a) => out.push(*a),
            PhyloNode::Internal(c) => c.iter().for_each(|ch| ch.leaves(out)),
        }
    }

    /// Representative of the equivalence class under the flavor: children
    /// sorted by least leaf when unordered, rotated so the child with the
    /// least leaf comes first when cyclic, unchanged when ordered.
    pub fn canonical(&self, flavor: PhyloFlavor) -> PhyloNode {
        match self {
            PhyloNode::Leaf(a) => PhyloNode::Leaf(*a),
            PhyloNode::Internal(c) => {
                let mut c: Vec<PhyloNode> = c.iter().map(|ch| ch.canonical(flavor)).collect();
                match flavor {
                    PhyloFlavor::Unordered => c.sort_by_key(PhyloNode::min_leaf),
                    PhyloFlavor::Cyclic => {
                        let i = (0..c.len()).min_by_key(|&i| c[i].min_leaf()).unwrap();
                        c.rotate_left(i);
                    }
                    PhyloFlavor::Ordered => {}
                }
                PhyloNode::Internal(c)
            }
        }
    }

    /// Internal vertices have at least two children and no leaf repeats.
    pub fn is_valid(&self) -> bool {
        fn deg_ok(t: &PhyloNode) -> bool {
            match t {
                PhyloNode::Leaf(_) => true,
                PhyloNode::Internal(c) => c.len() >= 2 && c.iter().all(deg_ok),
            }
        }
        let mut l = Vec::new();
        self.leaves(&mut l);
        let n = l.len();
        l.sort_unstable();
        l.dedup();
        deg_ok(self) && l.len() == n
    }
}

impl fmt::Display for PhyloNode {
    /// Nested parentheses, e.g. `((1,3),2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PhyloNode::Leaf(a) => write!(f, "{a}"),
            PhyloNode::Internal(c) => {
                f.write_char('(')?;
                for (i, ch) in c.iter().enumerate() {
                    if i > 0 {
                        f.write_char(',')?;
                    }
                    write!(f, "{ch}")?;
                }
                f.write_char(')')
            }
        }
    }
}

/// A phylogenetic tree together with how its child lists are read.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PhyloTree {
    pub flavor: PhyloFlavor,
    pub root: PhyloNode,
}

/// Calls `f` on every set partition of `items` into at least two blocks,
/// blocks ordered by least element.
fn for_each_partition(items: &[u32], f: &mut dyn FnMut(&[Vec<u32>])) {
    fn rec(i: usize, items: &[u32], blocks: &mut Vec<Vec<u32>>, f: &mut dyn FnMut(&[Vec<u32>])) {
        if i == items.len() {
            if blocks.len() >= 2 {
                f(blocks);
            }
            return;
        }
        for b in 0..blocks.len() {
            blocks[b].push(items[i]);
            rec(i + 1, items, blocks, f);
            blocks[b].pop();
        }
        blocks.push(vec![items[i]]);
        rec(i + 1, items, blocks, f);
        blocks.pop();
    }
    rec(0, items, &mut Vec::new(), f);
}

/// Calls `f` on every choice of one element from each list.
fn for_each_product<T: Clone>(lists: &[Vec<T>], f: &mut dyn FnMut(Vec<T>)) {
    let mut idx = vec![0usize; lists.len()];
    if lists.iter().any(Vec::is_empty) {
        return;
    }
    loop {
        f(idx.iter().zip(lists).map(|(&i, l)| l[i].clone()).collect());
        let mut k = lists.len();
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < lists[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// Unordered trees on the leaf set, children sorted by least leaf.
fn for_each_unordered(leaves: &[u32], f: &mut dyn FnMut(PhyloNode)) {
    if leaves.len() == 1 {
        f(PhyloNode::Leaf(leaves[0]));
        return;
    }
    for_each_partition(leaves, &mut |blocks| {
        let lists: Vec<Vec<PhyloNode>> = blocks
            .iter()
            .map(|b| {
                let mut l = Vec::new();
                for_each_unordered(b, &mut |t| l.push(t));
                l
            })
            .collect();
        for_each_product(&lists, &mut |c| f(PhyloNode::Internal(c)));
    });
}

/// Every permutation of `items`, by Heap's algorithm.
fn permutations<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    let mut a = items.to_vec();
    let mut out = vec![a.clone()];
    let mut c = vec![0usize; a.len()];
    let mut i = 1;
    while i < a.len() {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            out.push(a.clone());
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// Every arrangement of the child lists of an unordered tree that is its own
/// canonical form under `flavor`.
fn for_each_arrangement(t: &PhyloNode, flavor: PhyloFlavor, f: &mut dyn FnMut(PhyloNode)) {
    match t {
        PhyloNode::Leaf(_) => f(t.clone()),
        PhyloNode::Internal(c) => {
            let lists: Vec<Vec<PhyloNode>> = c
                .iter()
                .map(|ch| {
                    let mut l = Vec::new();
                    for_each_arrangement(ch, flavor, &mut |x| l.push(x));
                    l
                })
                .collect();
            let orders = if flavor == PhyloFlavor::Unordered { vec![(0..c.len()).collect()] } else { permutations(&(0..c.len()).collect::<Vec<_>>()) };
            for ord in orders {
                let node_lists: Vec<Vec<PhyloNode>> = ord.iter().map(|&i| lists[i].clone()).collect();
                for_each_product(&node_lists, &mut |kids| {
                    let node = PhyloNode::Internal(kids);
                    // Distinct orders with one canonical form are the same tree.
                    if node.canonical(flavor) == node {
                        f(node);
                    }
                });
            }
        }
    }
}

/// Calls `f` on every phylogenetic tree of the flavor on leaves `1..=n+1`.
pub fn for_each_phylo(n: usize, flavor: PhyloFlavor, mut f: impl FnMut(&PhyloTree)) -> Result<(), OracleError> {
    guard("n", n, PHYLO_GUARD)?;
    let leaves: Vec<u32> = (1..=n as u32 + 1).collect();
    for_each_unordered(&leaves, &mut |t| {
        for_each_arrangement(&t, flavor, &mut |root| f(&PhyloTree { flavor, root }));
    });
    Ok(())
}

/// `hist[k]` = trees of the flavor on `n + 1` leaves with `k` internal
/// vertices.
pub fn enumerate_phylo(n: usize, flavor: PhyloFlavor) -> Result<Vec<u64>, OracleError> {
    let mut hist = vec![0u64; n + 1];
    for_each_phylo(n, flavor, |t| hist[t.root.internal_count()] += 1)?;
    Ok(hist)
}

fn mpoly_from_counts(nvars: usize, counts: BTreeMap<Vec<u32>, u64>) -> MPoly {
    let mut p = MPoly::zero(nvars);
    for (e, c) in counts {
        p.add_term(e, BigRational::from_integer(BigInt::from(c)));
    }
    p
}

/// Sum over unordered phylogenetic trees on `n + 1` leaves of the product of
/// `x_{d-1}` over internal vertices with `d` children; variable `i - 1` of the
/// result is `x_i`.
pub fn multivariate_ward(n: usize) -> Result<MPoly, OracleError> {
    guard("n", n, PHYLO_GUARD)?;
    if n == 0 {
        return Ok(MPoly::one(0));
    }
    let mut counts: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
    for_each_phylo(n, PhyloFlavor::Unordered, |t| {
        let mut degs = Vec::new();
        t.root.degrees(&mut degs);
        let mut e = vec![0u32; n];
        for d in degs {
            e[d - 2] += 1;
        }
        *counts.entry(e).or_default() += 1;
    })?;
    Ok(mpoly_from_counts(n, counts))
}

pub const EULERIAN_TREE_GUARD: usize = 8;
pub const EULERIAN_ARITY_GUARD: usize = 3;

fn edge_type_counts(arity: usize, n: usize, restricted: bool) -> BTreeMap<Vec<u32>, u64> {
    let mut counts: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
    for_each_increasing_tree(arity, n, restricted, |kids| {
        let mut e = vec![0u32; arity];
        for c in kids {
            for (s, ch) in c.iter().enumerate() {
                if ch.is_some() {
                    e[s] += 1;
                }
            }
        }
        *counts.entry(e).or_default() += 1;
    });
    counts
}

/// Sum over increasing `(m+1)`-ary trees on `[n] ∪ {0}` whose root has at
/// most a 0-child, of the product of `x_i` over `i`-edges.
pub fn multivariate_eulerian(m: usize, n: usize) -> Result<MPoly, OracleError> {
    guard("m", m, EULERIAN_ARITY_GUARD)?;
    guard("n", n, EULERIAN_TREE_GUARD)?;
    Ok(mpoly_from_counts(m + 1, edge_type_counts(m + 1, n, true)))
}

/// The same sum without the root restriction.
pub fn multivariate_eulerian_unrestricted(m: usize, n: usize) -> Result<MPoly, OracleError> {
    guard("m", m, EULERIAN_ARITY_GUARD)?;
    guard("n", n, EULERIAN_TREE_GUARD)?;
    Ok(mpoly_from_counts(m + 1, edge_type_counts(m + 1, n, false)))
}

/// `Σ_i hist[i] binom(i, k)` for every `k`: number of ways to mark `k` of the
/// counted features.
pub fn binomial_refine(hist: &[u64]) -> Vec<BigInt> {
    (0..hist.len())
        .map(|k| hist.iter().enumerate().map(|(i, &h)| BigInt::from(h) * binomial(i, k)).fold(BigInt::zero(), |a, b| a + b))
        .collect()
}

/// Formats a count row as `[a,b,...]`.
pub fn format_row(row: &[u64]) -> String {
    let mut s = String::from("[");
    for (i, x) in row.iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        let _ = write!(s, "{x}");
    }
    s.push(']');
    s
}

/// Trees of `T'_n` paired with their images, for debug dumps.
pub fn phi_pairs(n: usize) -> Result<Vec<(TernaryTree, OrderedTree)>, OracleError> {
    guard("n", n, 4)?;
    let mut out = Vec::new();
    let mut err = None;
    for_each_increasing_ternary(n, true, |t| match phi(t) {
        Ok(s) => out.push((t.clone(), s)),
        Err(e) => err = Some(e),
    })?;
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derangement_small_cases() {
        assert_eq!(count_derangements_by_cycles(4, 2).unwrap(), 3);
        assert_eq!(count_derangements_by_cycles(3, 2).unwrap(), 0);
        assert!(count_derangements_by_cycles(13, 2).is_err());
    }

    #[test]
    fn stirling_words_small() {
        let w: Vec<Vec<u32>> = enumerate_stirling_perms(2, 2).unwrap().collect();
        assert_eq!(w, vec![vec![1, 1, 2, 2], vec![1, 2, 2, 1], vec![2, 2, 1, 1]]);
        assert_eq!(enumerate_stirling_perms(3, 2).unwrap().count(), 40);
        assert_eq!(enumerate_stirling_perms(2, 0).unwrap().collect::<Vec<_>>(), vec![Vec::<u32>::new()]);
        assert!(enumerate_stirling_perms(3, 5).is_err());
    }

    #[test]
    fn ascents() {
        assert!(consecutive_ascents(&[2, 2, 1, 1], 2).is_empty());
        assert_eq!(consecutive_ascents(&[1, 1, 2, 2], 2), vec![2]);
        assert_eq!(consecutive_ascents(&[1, 2, 2, 3, 4, 4], 3), vec![2]);
        let shown: Vec<String> = marked_words(2, 2, 1).unwrap().iter().map(|w| alloc::format!("{w}")).collect();
        assert_eq!(shown, vec!["1 1 . 2 2", "1 . 2 2 1"]);
    }

    #[test]
    fn small_trees() {
        let t = word_to_ternary(&[1, 2, 2, 1]).unwrap();
        assert_eq!(t.child(1, MIDDLE), Some(2));
        assert_eq!(alloc::format!("{t}"), "1[-,2,-]");
        let t = word_tree(&[8, 4, 9]).unwrap();
        assert_eq!(t.root, Some(4));
        assert_eq!((t.child(4, MIDDLE), t.child(4, RIGHT)), (Some(8), Some(9)));
        assert!(word_tree(&[1, 1]).is_err());
        assert!(word_to_ternary(&[2, 1, 1, 2, 3]).is_err());
    }

    #[test]
    fn phylo_canonical_forms() {
        let t = PhyloNode::Internal(vec![PhyloNode::Leaf(3), PhyloNode::Leaf(1), PhyloNode::Leaf(2)]);
        assert_eq!(alloc::format!("{}", t.canonical(PhyloFlavor::Cyclic)), "(1,2,3)");
        assert_eq!(alloc::format!("{}", t.canonical(PhyloFlavor::Unordered)), "(1,2,3)");
        assert_eq!(t.canonical(PhyloFlavor::Ordered), t);
        assert!(t.is_valid());
        assert_eq!(permutations(&[1, 2, 3]).len(), 6);
    }
}
