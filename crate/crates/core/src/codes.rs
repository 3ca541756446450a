//! Binary codes as shadows of abelian subgroups of `{±e_I}` in `Spin(n)`.
//!
//! A codeword is a `u32` whose bit `i` is coordinate `i + 1`, so the word
//! `I` stands for the blade `e_I`.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::clifford::{CliffElt, CliffError};
use crate::fingrp::{closure, Ambient, FinSubgroup, GroupError, GrpElt};
use crate::perm::{self, Perm, PermGroup};

/// Largest length accepted by [`enumerate`].
pub const MAX_ENUM_N: usize = 16;
/// Largest length of a code (words are `u32`).
pub const MAX_N: usize = 32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error("code length {0} out of range")]
    Length(usize),
    #[error("generator rows are linearly dependent")]
    Dependent,
    #[error("row {0} has odd weight")]
    OddWord(String),
    #[error("row {0} does not fit in length {1}")]
    TooLong(String, usize),
    #[error("code is not admissible: {0}")]
    NotAdmissible(&'static str),
    #[error("cannot parse code {0:?}")]
    Parse(String),
    #[error(transparent)]
    Cliff(#[from] CliffError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

fn mask(n: usize) -> u32 {
    if n == 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Row-reduce to the unique reduced echelon basis (pivot = highest bit), sorted descending.
fn rref(rows: &[u32]) -> Vec<u32> {
    let mut basis: Vec<u32> = Vec::new();
    for &r in rows {
        let mut v = r;
        for &b in &basis {
            if v & (1 << (31 - b.leading_zeros())) != 0 {
                v ^= b;
            }
        }
        if v == 0 {
            continue;
        }
        let p = 1 << (31 - v.leading_zeros());
        for b in basis.iter_mut() {
            if *b & p != 0 {
                *b ^= v;
            }
        }
        basis.push(v);
    }
    basis.sort_unstable_by(|a, b| b.cmp(a));
    basis
}

fn reduce(v: u32, basis: &[u32]) -> u32 {
    let mut v = v;
    for &b in basis {
        if v & (1 << (31 - b.leading_zeros())) != 0 {
            v ^= b;
        }
    }
    v
}

/// Length-`n` binary linear code with even codewords, given by independent rows.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct BinCode {
    n: usize,
    rows: Vec<u32>,
}

impl BinCode {
    pub fn new(n: usize, rows: Vec<u32>) -> Result<Self, CodeError> {
        if n == 0 || n > MAX_N {
            return Err(CodeError::Length(n));
        }
        for &r in &rows {
            if r & !mask(n) != 0 {
                return Err(CodeError::TooLong(word_string(r, MAX_N), n));
            }
            if r.count_ones() % 2 == 1 {
                return Err(CodeError::OddWord(word_string(r, n)));
            }
        }
        if rref(&rows).len() != rows.len() {
            return Err(CodeError::Dependent);
        }
        Ok(BinCode { n, rows })
    }

    /// Rows as `0/1` strings, coordinate 1 first.
    pub fn from_strs<S: AsRef<str>>(rows: &[S]) -> Result<Self, CodeError> {
        let n = rows.first().map(|r| r.as_ref().trim().len()).ok_or_else(|| CodeError::Parse(String::new()))?;
        let mut out = Vec::new();
        for r in rows {
            let r = r.as_ref().trim();
            if r.len() != n || !r.chars().all(|c| c == '0' || c == '1') {
                return Err(CodeError::Parse(r.to_string()));
            }
            out.push(r.chars().enumerate().fold(0u32, |m, (i, c)| if c == '1' { m | 1 << i } else { m }));
        }
        BinCode::new(n, out)
    }

    /// The code generated by the given supports (1-based coordinates).
    pub fn from_supports(n: usize, supports: &[Vec<u32>]) -> Result<Self, CodeError> {
        let rows = supports.iter().map(|s| s.iter().fold(0u32, |m, &i| m | 1 << (i - 1))).collect();
        BinCode::new(n, rows)
    }

    pub fn zero(n: usize) -> Result<Self, CodeError> {
        BinCode::new(n, Vec::new())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    pub fn all_ones(&self) -> u32 {
        mask(self.n)
    }

    pub fn codewords(&self) -> Vec<u32> {
        let mut words = vec![0u32];
        for &r in &self.rows {
            let more: Vec<u32> = words.iter().map(|w| w ^ r).collect();
            words.extend(more);
        }
        words
    }

    pub fn contains(&self, w: u32) -> bool {
        reduce(w, &rref(&self.rows)) == 0
    }

    pub fn contains_all_ones(&self) -> bool {
        self.contains(self.all_ones())
    }

    /// Column `j` as a `dim`-bit vector (bit `k` = row `k`).
    pub fn columns(&self) -> Vec<u32> {
        (0..self.n)
            .map(|j| self.rows.iter().enumerate().fold(0u32, |c, (k, r)| c | ((r >> j) & 1) << k))
            .collect()
    }

    pub fn has_distinct_columns(&self) -> bool {
        let cols = self.columns();
        let set: HashSet<u32> = cols.iter().copied().collect();
        set.len() == cols.len()
    }

    pub fn is_self_orthogonal(&self) -> bool {
        self.rows.iter().all(|a| self.rows.iter().all(|b| (a & b).count_ones() % 2 == 0))
    }

    pub fn weight_distribution(&self) -> Vec<usize> {
        let mut out = vec![0; self.n + 1];
        for w in self.codewords() {
            out[w.count_ones() as usize] += 1;
        }
        out
    }

    /// Image under the column permutation sending coordinate `i` to `p[i]`.
    pub fn permute(&self, p: &[usize]) -> BinCode {
        let rows = self.rows.iter().map(|&r| permute_word(r, p)).collect();
        BinCode { n: self.n, rows }
    }

    /// Same code, reduced echelon basis.
    pub fn echelon(&self) -> BinCode {
        BinCode { n: self.n, rows: rref(&self.rows) }
    }

    /// Same code, another basis: `rows[k] ^= rows[j]` style changes are invisible to every invariant here.
    pub fn with_rows(&self, rows: Vec<u32>) -> Result<BinCode, CodeError> {
        let c = BinCode::new(self.n, rows)?;
        if c.echelon() != self.echelon() {
            return Err(CodeError::Dependent);
        }
        Ok(c)
    }

    /// Two disjoint weight-4 words.
    pub fn has_disjoint_quads(&self) -> bool {
        let quads: Vec<u32> = self.codewords().into_iter().filter(|w| w.count_ones() == 4).collect();
        quads.iter().enumerate().any(|(i, a)| quads[i + 1..].iter().any(|b| a & b == 0))
    }

    pub fn has_weight(&self, w: u32) -> bool {
        self.codewords().iter().any(|x| x.count_ones() == w)
    }
}

fn permute_word(w: u32, p: &[usize]) -> u32 {
    let mut out = 0;
    for (i, &t) in p.iter().enumerate() {
        if w >> i & 1 == 1 {
            out |= 1 << t;
        }
    }
    out
}

fn word_string(w: u32, n: usize) -> String {
    (0..n).map(|i| if w >> i & 1 == 1 { '1' } else { '0' }).collect()
}

impl BinCode {
    pub fn row_strings(&self) -> Vec<String> {
        self.rows.iter().map(|&r| word_string(r, self.n)).collect()
    }
}

impl fmt::Display for BinCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows.is_empty() {
            return write!(f, "<0 of length {}>", self.n);
        }
        write!(f, "<{}>", self.row_strings().join(", "))
    }
}

impl FromStr for BinCode {
    type Err = CodeError;

    /// `<1111000, 1100110>` or the bare comma/space separated rows.
    fn from_str(s: &str) -> Result<Self, CodeError> {
        let inner = s.trim().trim_start_matches('<').trim_end_matches('>');
        if let Some(n) = inner.strip_prefix("0 of length ") {
            return BinCode::zero(n.trim().parse().map_err(|_| CodeError::Parse(s.into()))?);
        }
        let rows: Vec<&str> = inner.split(|c: char| c == ',' || c.is_whitespace()).filter(|r| !r.is_empty()).collect();
        BinCode::from_strs(&rows)
    }
}

impl Serialize for BinCode {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            n: usize,
            rows: Vec<String>,
        }
        Repr { n: self.n, rows: self.row_strings() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for BinCode {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            n: usize,
            rows: Vec<String>,
        }
        let r = Repr::deserialize(d)?;
        if r.rows.is_empty() {
            return BinCode::zero(r.n).map_err(serde::de::Error::custom);
        }
        let c = BinCode::from_strs(&r.rows).map_err(serde::de::Error::custom)?;
        if c.n != r.n {
            return Err(serde::de::Error::custom("row length differs from n"));
        }
        Ok(c)
    }
}

/// Self-orthogonal, all words even, pairwise distinct columns, and all-ones
/// present when required.
pub fn is_admissible(c: &BinCode, require_allones: bool) -> bool {
    c.is_self_orthogonal() && c.has_distinct_columns() && (!require_allones || c.contains_all_ones())
}

/// `log2 n <= r <= (n - 1) / 2` with `r` the rank modulo `<-1, c>`.
pub fn rank_bounds_check(c: &BinCode) -> bool {
    let r = c.dim() - usize::from(c.n.is_multiple_of(2) && c.contains_all_ones());
    (1usize << r) >= c.n && r <= (c.n - 1) / 2
}

// ---------------------------------------------------------------------------
// canonical form: partition refinement with individualization

struct Structure {
    vertex: Vec<u32>,
    words: Vec<u32>,
}

/// Rank the distinct keys so the labels depend only on the keys themselves.
fn label_by_rank<K: Ord + Clone>(keys: &[K]) -> Vec<u32> {
    let sorted: BTreeSet<K> = keys.iter().cloned().collect();
    let sorted: Vec<K> = sorted.into_iter().collect();
    keys.iter().map(|k| sorted.binary_search(k).expect("present") as u32).collect()
}

impl Structure {
    fn new(c: &BinCode) -> Structure {
        let n = c.n;
        let words: Vec<u32> = c.codewords().into_iter().filter(|&w| w != 0).collect();
        let mut vk = vec![vec![0u16; n + 1]; n];
        for w in &words {
            let wt = w.count_ones() as usize;
            for (i, row) in vk.iter_mut().enumerate() {
                if w >> i & 1 == 1 {
                    row[wt] += 1;
                }
            }
        }
        Structure { vertex: label_by_rank(&vk), words }
    }

    /// Split cells until stable. A column's signature is the multiset of
    /// cell-intersection profiles of the codewords through it.
    fn refine(&self, cells: &mut Vec<Vec<usize>>) {
        loop {
            let masks: Vec<u32> = cells.iter().map(|c| c.iter().fold(0u32, |m, &v| m | 1 << v)).collect();
            let profiles: Vec<Vec<u8>> = self
                .words
                .iter()
                .map(|&w| masks.iter().map(|&m| (w & m).count_ones() as u8).collect())
                .collect();
            let labels = label_by_rank(&profiles);
            let mut next: Vec<Vec<usize>> = Vec::with_capacity(cells.len());
            for cell in cells.iter() {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut sigs: Vec<(Vec<u32>, usize)> = cell
                    .iter()
                    .map(|&v| {
                        let mut s: Vec<u32> =
                            self.words.iter().zip(&labels).filter(|(w, _)| *w >> v & 1 == 1).map(|(_, &l)| l).collect();
                        s.sort_unstable();
                        (s, v)
                    })
                    .collect();
                sigs.sort();
                let mut start = 0;
                for k in 1..=sigs.len() {
                    if k == sigs.len() || sigs[k].0 != sigs[start].0 {
                        let mut part: Vec<usize> = sigs[start..k].iter().map(|x| x.1).collect();
                        part.sort_unstable();
                        next.push(part);
                        start = k;
                    }
                }
            }
            if next.len() == cells.len() {
                return;
            }
            *cells = next;
        }
    }
}

struct Search<'a> {
    code: &'a BinCode,
    st: Structure,
    best: Option<Vec<u32>>,
    leaves: HashMap<Vec<u32>, Vec<usize>>,
    autos: Vec<Perm>,
}

impl Search<'_> {
    fn certificate(&self, order: &[usize]) -> Vec<u32> {
        // old column order[p] becomes column p
        let mut target = vec![0usize; self.code.n];
        for (p, &v) in order.iter().enumerate() {
            target[v] = p;
        }
        rref(&self.code.rows.iter().map(|&r| permute_word(r, &target)).collect::<Vec<_>>())
    }

    fn dfs(&mut self, mut cells: Vec<Vec<usize>>, prefix: &mut Vec<usize>) {
        self.st.refine(&mut cells);
        let Some(k) = cells.iter().position(|c| c.len() > 1) else {
            let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
            let cert = self.certificate(&order);
            // equal certificates differ by an automorphism
            if let Some(first) = self.leaves.get(&cert) {
                let mut g = vec![0u32; self.code.n];
                for (p, &v) in first.iter().enumerate() {
                    g[v] = order[p] as u32;
                }
                if !perm::is_identity(&g) {
                    self.autos.push(g);
                }
                return;
            }
            if self.best.as_ref().is_none_or(|b| cert < *b) {
                self.best = Some(cert.clone());
            }
            self.leaves.insert(cert, order);
            return;
        };
        let cell = cells[k].clone();
        let mut tried: Vec<usize> = Vec::new();
        for &v in &cell {
            let stab: Vec<&Perm> = self.autos.iter().filter(|g| prefix.iter().all(|&p| g[p] as usize == p)).collect();
            if tried.iter().any(|&u| same_orbit(&stab, u, v, self.code.n)) {
                continue;
            }
            tried.push(v);
            let mut next = cells.clone();
            let rest: Vec<usize> = cell.iter().copied().filter(|&u| u != v).collect();
            next.splice(k..=k, [vec![v], rest]);
            prefix.push(v);
            self.dfs(next, prefix);
            prefix.pop();
        }
    }
}

fn same_orbit(gens: &[&Perm], a: usize, b: usize, n: usize) -> bool {
    let mut seen = vec![false; n];
    let mut stack = vec![a];
    seen[a] = true;
    while let Some(x) = stack.pop() {
        if x == b {
            return true;
        }
        for g in gens {
            let y = g[x] as usize;
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    false
}

/// Canonical representative together with generators of the column automorphism group.
#[derive(Debug, Clone)]
pub struct Canonical {
    pub code: BinCode,
    pub automorphisms: Vec<Perm>,
}

pub fn canonical_search(c: &BinCode) -> Canonical {
    let st = Structure::new(c);
    let n = c.n;
    // twin columns are interchangeable
    let cols = c.columns();
    let mut autos = Vec::new();
    for i in 0..n {
        if let Some(j) = (i + 1..n).find(|&j| cols[j] == cols[i]) {
            let mut g = perm::identity(n);
            g.swap(i, j);
            autos.push(g);
        }
    }
    let initial = {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| (st.vertex[v], v));
        let mut cells: Vec<Vec<usize>> = Vec::new();
        for v in order {
            match cells.last_mut() {
                Some(last) if st.vertex[last[0]] == st.vertex[v] => last.push(v),
                _ => cells.push(vec![v]),
            }
        }
        cells
    };
    let mut s = Search { code: c, st, best: None, leaves: HashMap::new(), autos };
    s.dfs(initial, &mut Vec::new());
    let cert = s.best.expect("at least one leaf");
    Canonical { code: BinCode { n, rows: cert }, automorphisms: s.autos }
}

/// Representative of the column-permutation class of `c`.
pub fn canonical_form(c: &BinCode) -> BinCode {
    canonical_search(c).code
}

/// Column permutations preserving the code.
pub fn automorphism_group(c: &BinCode) -> PermGroup {
    PermGroup::new(c.n, &canonical_search(c).automorphisms)
}

// ---------------------------------------------------------------------------
// enumeration

/// Basis of the even words orthogonal to `rows`.
fn even_dual(n: usize, rows: &[u32]) -> Vec<u32> {
    let mut cons: Vec<u32> = rows.to_vec();
    cons.push(mask(n));
    // nullspace of the constraint matrix over F2
    let cons = rref(&cons);
    let pivots: Vec<u32> = cons.iter().map(|r| 31 - r.leading_zeros()).collect();
    (0..n as u32)
        .filter(|b| !pivots.contains(b))
        .map(|free| {
            let mut v = 1u32 << free;
            for (r, &p) in cons.iter().zip(&pivots) {
                if r >> free & 1 == 1 {
                    v |= 1 << p;
                }
            }
            v
        })
        .collect()
}

fn column_classes_fit(c: &BinCode, spare_dims: usize) -> bool {
    let mut cols = c.columns();
    cols.sort_unstable();
    let cap = 1usize << spare_dims.min(31);
    let mut run = 1;
    for k in 1..cols.len() {
        if cols[k] == cols[k - 1] {
            run += 1;
            if run > cap {
                return false;
            }
        } else {
            run = 1;
        }
    }
    true
}

fn children(c: &BinCode, max_dim: usize) -> Vec<BinCode> {
    if c.dim() >= max_dim {
        return Vec::new();
    }
    // complement of the code inside its even dual
    let mut span = rref(&c.rows);
    let mut ext: Vec<u32> = Vec::new();
    for v in even_dual(c.n, &c.rows) {
        if reduce(v, &span) != 0 {
            ext.push(v);
            span.push(v);
            span = rref(&span);
        }
    }
    let words = c.codewords();
    let spare = max_dim - c.dim() - 1;
    let mut out = Vec::new();
    for s in 1u64..(1u64 << ext.len()) {
        let w = ext.iter().enumerate().filter(|(k, _)| s >> k & 1 == 1).fold(0u32, |a, (_, &e)| a ^ e);
        if words.iter().any(|x| (x ^ w).count_ones() == 2) {
            continue;
        }
        let mut rows = c.rows.clone();
        rows.push(w);
        let child = BinCode { n: c.n, rows };
        if column_classes_fit(&child, spare) {
            out.push(canonical_form(&child));
        }
    }
    out
}

/// Admissible codes of length `n` up to column permutation, sorted.
///
/// With `require_allones` and even `n` only codes containing the all-ones
/// word are kept; for odd `n` the flag is ignored (that word is odd).
pub fn enumerate(n: usize, require_allones: bool) -> Result<Vec<BinCode>, CodeError> {
    enumerate_seeded(n, require_allones, 0)
}

/// As [`enumerate`]; a nonzero `seed` scrambles columns and bases of every
/// intermediate code before extending it. The output does not depend on it.
pub fn enumerate_seeded(n: usize, require_allones: bool, seed: u64) -> Result<Vec<BinCode>, CodeError> {
    if !(2..=MAX_ENUM_N).contains(&n) {
        return Err(CodeError::Length(n));
    }
    let allones = require_allones && n.is_multiple_of(2);
    let start = if allones { BinCode::new(n, vec![mask(n)])? } else { BinCode::zero(n)? };
    let max_dim = n / 2;
    let mut results = BTreeSet::new();
    let mut level: BTreeSet<BinCode> = BTreeSet::from([canonical_form(&start)]);
    let mut depth = 0u64;
    while !level.is_empty() {
        for c in &level {
            if is_admissible(c, allones) {
                results.insert(c.clone());
            }
        }
        let codes: Vec<BinCode> = if seed == 0 {
            level.into_iter().collect()
        } else {
            level.into_iter().enumerate().map(|(k, c)| scramble(&c, seed ^ (depth << 32) ^ k as u64)).collect()
        };
        level = codes.par_iter().flat_map_iter(|c| children(c, max_dim)).collect();
        depth += 1;
    }
    Ok(results.into_iter().collect())
}

/// Random column permutation and basis change.
pub fn scramble(c: &BinCode, seed: u64) -> BinCode {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut p: Vec<usize> = (0..c.n).collect();
    p.shuffle(&mut rng);
    let mut rows = c.permute(&p).rows;
    rows.shuffle(&mut rng);
    for k in 1..rows.len() {
        if rand::Rng::gen_bool(&mut rng, 0.5) {
            rows[k] ^= rows[k - 1];
        }
    }
    BinCode { n: c.n, rows }
}

/// Enumeration output with the classes whose realized groups share a fingerprint profile.
#[derive(Debug, Clone, Serialize)]
pub struct Enumeration {
    pub n: usize,
    pub require_allones: bool,
    pub classes: Vec<BinCode>,
    /// Index groups of classes with identical profiles; these may be one `Spin(n)` class.
    pub merge_candidates: Vec<Vec<usize>>,
}

pub fn enumerate_with_profiles(n: usize, require_allones: bool) -> Result<Enumeration, CodeError> {
    let classes = enumerate(n, require_allones)?;
    let profiles = classes
        .par_iter()
        .map(|c| realize(c).map(|f| f.profile()))
        .collect::<Result<Vec<_>, _>>()?;
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for i in 0..classes.len() {
        match groups.iter_mut().find(|g| profiles[g[0]] == profiles[i]) {
            Some(g) => g.push(i),
            None => groups.push(vec![i]),
        }
    }
    groups.retain(|g| g.len() > 1);
    Ok(Enumeration { n, require_allones, classes, merge_candidates: groups })
}

// ---------------------------------------------------------------------------
// realization in Spin(n)

pub fn blade_of_word(n: usize, w: u32) -> CliffElt {
    CliffElt::blade(n as u32, w)
}

/// `<-1, e_I : I a row>` inside `Spin(n)`.
pub fn realize(c: &BinCode) -> Result<FinSubgroup, CodeError> {
    if !c.is_self_orthogonal() {
        return Err(CodeError::NotAdmissible("codewords meet oddly"));
    }
    let n = c.n as u32;
    let mut gens = vec![GrpElt::Cliff(CliffElt::scalar(n, crate::CycloElt::from_int(-1)))];
    gens.extend(c.rows.iter().map(|&r| GrpElt::Cliff(blade_of_word(c.n, r))));
    let cap = 1usize << (c.dim() + 1);
    Ok(closure(&Ambient::Spin(n), &gens, &[], cap)?)
}

/// Generators `e_I` of the realized group (without `-1`).
pub fn realize_generators(c: &BinCode) -> Vec<CliffElt> {
    c.rows.iter().map(|&r| blade_of_word(c.n, r)).collect()
}

/// A `Spin(n)` element conjugating `e_i` to `±e_{p(i)}`.
pub fn lift_permutation(n: usize, p: &[u32]) -> CliffElt {
    let nn = n as u32;
    let try_order = |rev: bool| -> CliffElt {
        let mut g = CliffElt::one(nn);
        let mut seen = vec![false; n];
        let mut factors = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut cyc = vec![s];
            seen[s] = true;
            let mut x = p[s] as usize;
            while x != s {
                seen[x] = true;
                cyc.push(x);
                x = p[x] as usize;
            }
            for w in cyc.windows(2) {
                factors.push((w[0] as u32 + 1, w[1] as u32 + 1));
            }
        }
        if rev {
            factors.reverse();
        }
        for (a, b) in factors {
            g = &g * &CliffElt::r(nn, a, b);
        }
        g
    };
    for rev in [false, true] {
        let g = try_order(rev);
        if underlying_perm(&g).as_deref() == Some(p) {
            return g;
        }
    }
    unreachable!("one product order realizes the permutation")
}

fn underlying_perm(g: &CliffElt) -> Option<Vec<u32>> {
    let m = g.vector_rep().ok()?;
    if !m.is_monomial() {
        return None;
    }
    // column i holds the image of e_i
    (0..m.cols()).map(|i| (0..m.rows()).find(|&r| !m.get(r, i).is_zero()).map(|r| r as u32)).collect()
}

/// Monomial normalizer candidates: lifts of column automorphisms and the sign changes `e_1 e_j`.
pub fn monomial_normalizer_candidates(c: &BinCode) -> Vec<CliffElt> {
    let n = c.n as u32;
    let mut out: Vec<CliffElt> = canonical_search(c).automorphisms.iter().map(|p| lift_permutation(c.n, p)).collect();
    for j in 2..=n {
        out.push(CliffElt::blade_of(n, &[1, j]));
    }
    if n % 2 == 1 {
        out.push(CliffElt::blade_of(n, &[1]));
    }
    out
}

/// Which of the structural cases a length-12 or 14 code falls in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StructureCase {
    Weight6,
    DisjointQuads,
    Neither,
}

pub fn structure_case(c: &BinCode) -> StructureCase {
    if c.has_weight(6) {
        StructureCase::Weight6
    } else if c.has_disjoint_quads() {
        StructureCase::DisjointQuads
    } else {
        StructureCase::Neither
    }
}

/// For `n = 12`: a weight-6 word or two disjoint quads; for `n = 14`: two disjoint quads.
pub fn trichotomy_holds(c: &BinCode) -> bool {
    match c.n {
        12 => structure_case(c) != StructureCase::Neither,
        14 => c.has_disjoint_quads(),
        _ => true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::ad_fixed_dim;

    fn next_perm(p: &mut [usize]) -> bool {
        let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else { return false };
        let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
        true
    }

    fn f7() -> BinCode {
        BinCode::from_strs(&["1111000", "1100110", "1010101"]).unwrap()
    }

    #[test]
    fn admissibility() {
        assert!(is_admissible(&f7(), false));
        assert!(!is_admissible(&BinCode::from_strs(&["1111"]).unwrap(), false));
        let f8 = BinCode::from_strs(&["11110000", "11001100", "10101010", "11111111"]).unwrap();
        assert!(is_admissible(&f8, true));
        assert!(BinCode::from_strs(&["1110000"]).is_err());
        assert!(BinCode::from_strs(&["1100", "1100"]).is_err());
        assert!(rank_bounds_check(&f7()) && rank_bounds_check(&f8));
    }

    #[test]
    fn parse_round_trip() {
        let c = f7();
        assert_eq!(c.to_string().parse::<BinCode>().unwrap(), c);
        let json = serde_json::to_string(&c).unwrap();
        assert_eq!(serde_json::from_str::<BinCode>(&json).unwrap(), c);
        let z = BinCode::zero(5).unwrap();
        assert_eq!(z.to_string().parse::<BinCode>().unwrap(), z);
    }

    #[test]
    fn canonical_is_invariant() {
        let c = f7();
        let canon = canonical_form(&c);
        for seed in 0..50 {
            assert_eq!(canonical_form(&scramble(&c, seed)), canon);
        }
        assert_eq!(canonical_form(&canon), canon);
        assert_eq!(automorphism_group(&c).order(), 168);
        let f8 = BinCode::from_strs(&["11110000", "11001100", "10101010", "11111111"]).unwrap();
        assert_eq!(automorphism_group(&f8).order(), 1344);
        // brute force over all column permutations
        let mut p: Vec<usize> = (0..7).collect();
        let target = c.echelon();
        let mut count = 0;
        loop {
            if c.permute(&p).echelon() == target {
                count += 1;
            }
            if !next_perm(&mut p) {
                break;
            }
        }
        assert_eq!(count, 168);
        let twins = BinCode::from_strs(&["111100"]).unwrap();
        assert_eq!(automorphism_group(&twins).order(), 48);
    }

    #[test]
    fn small_enumerations() {
        for n in 2..=6 {
            assert!(enumerate(n, false).unwrap().is_empty(), "n={n}");
        }
        let seven = enumerate(7, false).unwrap();
        assert_eq!(seven.len(), 1);
        assert_eq!(seven[0], canonical_form(&f7()));
        assert_eq!(enumerate(8, true).unwrap().len(), 1);
        assert_eq!(enumerate_seeded(8, true, 7).unwrap(), enumerate(8, true).unwrap());
        assert!(enumerate(1, false).is_err());
        let e = enumerate_with_profiles(12, false).unwrap();
        assert_eq!(e.classes.len(), 3);
        assert!(e.merge_candidates.is_empty());
    }

    #[test]
    fn realization() {
        let f = realize(&f7()).unwrap();
        assert_eq!(f.order(), 16);
        assert!(f.is_abelian());
        assert_eq!(ad_fixed_dim(&realize_generators(&f7()), 7).unwrap(), 0);
        let cands: Vec<GrpElt> = monomial_normalizer_candidates(&f7()).into_iter().map(GrpElt::Cliff).collect();
        assert_eq!(f.weyl_lower(&cands).order, 1344);
        let z = realize(&BinCode::zero(4).unwrap()).unwrap();
        assert_eq!(z.order(), 2);
    }

    #[test]
    fn lifts_realize_permutations() {
        let p: Vec<u32> = vec![2, 0, 1, 4, 3, 5];
        let g = lift_permutation(6, &p);
        assert_eq!(underlying_perm(&g).unwrap(), p);
        assert!(g.is_even());
    }
}
