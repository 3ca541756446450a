//! Root systems of types A-D, F4, G2 in simple-root coordinates.
//!
//! Roots are integer vectors over the simple roots (Bourbaki numbering); the
//! inner product is a rational Gram matrix stored as `gram / scale` with long
//! roots of squared length 2. Torus elements `exp(2 pi i t)` are rational
//! vectors `t` in the same coordinates, identified with `h` through the inner
//! product, so a long root is its own coroot.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::snf::{smith, torsion};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error("unsupported root system {0:?}")]
    Unsupported(String),
    #[error("vector is not a root")]
    NotARoot,
    #[error("coweight has {0} coordinates, rank is {1}")]
    Rank(usize, usize),
    #[error("simple root index {0} out of range")]
    Index(usize),
    #[error("cannot parse subsystem type {0:?}")]
    ParseType(String),
}

pub type Root = Vec<i64>;

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: i64, b: i64) -> i64 {
    a / gcd(a, b) * b
}

/// `exp(2 pi i t)` with `t = num / den` in simple-root coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoweightElt {
    pub num: Vec<i64>,
    pub den: i64,
}

impl CoweightElt {
    pub fn new(num: Vec<i64>, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let g = num.iter().fold(den, |g, &x| gcd(g, x));
        let s = if den < 0 { -g } else { g };
        CoweightElt { num: num.iter().map(|x| x / s).collect(), den: den / s }
    }

    pub fn zero(rank: usize) -> Self {
        CoweightElt { num: vec![0; rank], den: 1 }
    }

    pub fn add(&self, other: &CoweightElt) -> Self {
        let d = lcm(self.den, other.den);
        let num = self.num.iter().zip(&other.num).map(|(a, b)| a * (d / self.den) + b * (d / other.den)).collect();
        CoweightElt::new(num, d)
    }

    pub fn scale(&self, p: i64, q: i64) -> Self {
        CoweightElt::new(self.num.iter().map(|x| x * p).collect(), self.den * q)
    }
}

impl fmt::Display for CoweightElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.num.iter().map(|x| x.to_string()).collect();
        write!(f, "({})/{}", parts.join(","), self.den)
    }
}

/// Length class of a simply laced component inside an ambient with two root lengths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LenTag {
    L,
    S,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Component {
    pub kind: char,
    pub rank: usize,
    pub tag: Option<LenTag>,
}

impl Component {
    fn sort_key(&self) -> (std::cmp::Reverse<usize>, char, Option<LenTag>) {
        (std::cmp::Reverse(self.rank), self.kind, self.tag)
    }
}

impl PartialOrd for Component {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Component {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind, self.rank)?;
        match self.tag {
            Some(LenTag::L) => write!(f, "L"),
            Some(LenTag::S) => write!(f, "S"),
            None => Ok(()),
        }
    }
}

/// Type of a (semisimple) root subsystem: sorted simple components.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SubsystemType(pub Vec<Component>);

impl SubsystemType {
    pub fn new(mut comps: Vec<Component>) -> Self {
        comps.sort();
        SubsystemType(comps)
    }

    pub fn rank(&self) -> usize {
        self.0.iter().map(|c| c.rank).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Parse labels such as `A2L+A2S`, `4A1`, `C2+2A1` or `A_2^{L}+A_2^{S}`.
    /// An untagged simply laced component means long when `two_lengths` is set.
    pub fn parse(s: &str, two_lengths: bool) -> Result<Self, RootError> {
        let err = || RootError::ParseType(s.to_string());
        let clean: String = s.chars().filter(|c| !matches!(c, '_' | '^' | '{' | '}' | ' ')).collect();
        if clean.is_empty() || clean == "0" || clean == "empty" {
            return Ok(SubsystemType::default());
        }
        let mut comps = Vec::new();
        for part in clean.split('+') {
            let digits: String = part.chars().take_while(|c| c.is_ascii_digit()).collect();
            let mult: usize = if digits.is_empty() { 1 } else { digits.parse().map_err(|_| err())? };
            let rest = &part[digits.len()..];
            let mut chars = rest.chars();
            let kind = chars.next().ok_or_else(err)?;
            let rest: String = chars.collect();
            let rank_str: String = rest.chars().take_while(|c| c.is_ascii_digit()).collect();
            let rank: usize = rank_str.parse().map_err(|_| err())?;
            let tag_str = &rest[rank_str.len()..];
            let mut comp = normalize(kind, rank).ok_or_else(err)?;
            let simply_laced = matches!(comp.kind, 'A' | 'D' | 'E');
            comp.tag = match (tag_str, simply_laced && two_lengths) {
                ("L", true) | ("", true) => Some(LenTag::L),
                ("S", true) => Some(LenTag::S),
                ("", false) => None,
                _ => return Err(err()),
            };
            comps.extend(std::iter::repeat_n(comp, mult));
        }
        Ok(SubsystemType::new(comps))
    }
}

/// Canonical names for small coincidences (`B2 = C2`, `D3 = A3`, `B1 = C1 = A1`).
fn normalize(kind: char, rank: usize) -> Option<Component> {
    let (kind, rank) = match (kind, rank) {
        (_, 0) => return None,
        ('A', r) => ('A', r),
        ('B' | 'C', 1) => ('A', 1),
        ('C', 2) => ('B', 2),
        ('B' | 'C', r) => (kind, r),
        ('D', 2) => return None,
        ('D', 3) => ('A', 3),
        ('D', r) => ('D', r),
        ('E', r @ 6..=8) => ('E', r),
        ('F', 4) => ('F', 4),
        ('G', 2) => ('G', 2),
        _ => return None,
    };
    Some(Component { kind, rank, tag: None })
}

impl fmt::Display for SubsystemType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let mut j = i;
            while j < self.0.len() && self.0[j] == self.0[i] {
                j += 1;
            }
            let m = j - i;
            parts.push(if m == 1 { self.0[i].to_string() } else { format!("{m}{}", self.0[i]) });
            i = j;
        }
        write!(f, "{}", parts.join("+"))
    }
}

impl Serialize for SubsystemType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    label: String,
    /// Gram matrix of the simple roots times `scale`.
    gram: Vec<Vec<i64>>,
    scale: i64,
    roots: Vec<Root>,
}

impl FromStr for RootSystem {
    type Err = RootError;

    fn from_str(s: &str) -> Result<Self, RootError> {
        let s = s.trim();
        let mut chars = s.chars();
        let kind = chars.next().ok_or_else(|| RootError::Unsupported(s.into()))?.to_ascii_uppercase();
        let rank: usize = chars.as_str().parse().map_err(|_| RootError::Unsupported(s.into()))?;
        RootSystem::new(kind, rank)
    }
}

impl RootSystem {
    pub fn new(kind: char, rank: usize) -> Result<Self, RootError> {
        let bad = || RootError::Unsupported(format!("{kind}{rank}"));
        let n = rank;
        // (scale, gram) with long roots of squared length 2 * scale / scale
        let (scale, gram) = match (kind, n) {
            ('A', n) if n >= 1 => (1, chain(n, &vec![2; n], &vec![-1; n.saturating_sub(1)])),
            ('B', n) if n >= 2 => {
                let mut d = vec![4; n];
                d[n - 1] = 2;
                (2, chain(n, &d, &vec![-2; n - 1]))
            }
            ('C', n) if n >= 2 => {
                let mut d = vec![2; n];
                d[n - 1] = 4;
                let mut off = vec![-1; n - 1];
                off[n - 2] = -2;
                (2, chain(n, &d, &off))
            }
            ('D', n) if n >= 3 => {
                let mut g = chain(n, &vec![2; n], &vec![-1; n - 1]);
                g[n - 2][n - 1] = 0;
                g[n - 1][n - 2] = 0;
                g[n - 3][n - 1] = -1;
                g[n - 1][n - 3] = -1;
                (1, g)
            }
            ('F', 4) => (2, chain(4, &[4, 4, 2, 2], &[-2, -2, -1])),
            ('G', 2) => (6, chain(2, &[4, 12], &[-6])),
            _ => return Err(bad()),
        };
        let mut rs = RootSystem { label: format!("{kind}{n}"), gram, scale, roots: Vec::new() };
        let simple: Vec<Root> = (0..n).map(|i| unit(n, i)).collect();
        rs.roots = rs.generate(&simple);
        Ok(rs)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn positive_roots(&self) -> Vec<Root> {
        self.roots.iter().filter(|r| is_positive(r)).cloned().collect()
    }

    pub fn simple_roots(&self) -> Vec<Root> {
        (0..self.rank()).map(|i| unit(self.rank(), i)).collect()
    }

    /// `(a, b) * scale`.
    fn ip(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s = 0;
        for (i, x) in a.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                s += x * self.gram[i][j] * y;
            }
        }
        s
    }

    /// Inner product as a reduced fraction `(p, q)`.
    pub fn inner(&self, a: &[i64], b: &[i64]) -> (i64, i64) {
        let p = self.ip(a, b);
        let g = gcd(p, self.scale);
        (p / g, self.scale / g)
    }

    pub fn is_long(&self, a: &[i64]) -> bool {
        self.ip(a, a) == 2 * self.scale
    }

    pub fn has_two_lengths(&self) -> bool {
        let l0 = self.ip(&self.roots[0], &self.roots[0]);
        self.roots.iter().any(|r| self.ip(r, r) != l0)
    }

    /// `<b, a^vee> = 2 (b, a) / (a, a)`.
    pub fn cartan_int(&self, b: &[i64], a: &[i64]) -> i64 {
        2 * self.ip(b, a) / self.ip(a, a)
    }

    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let s = self.simple_roots();
        s.iter().map(|a| s.iter().map(|b| self.cartan_int(b, a)).collect()).collect()
    }

    pub fn reflect(&self, a: &[i64], b: &[i64]) -> Root {
        let c = self.cartan_int(b, a);
        b.iter().zip(a).map(|(x, y)| x - c * y).collect()
    }

    /// Closure of `gens` (and negatives) under the reflections in `gens`; sorted.
    fn generate(&self, gens: &[Root]) -> Vec<Root> {
        let mut seen: HashSet<Root> = HashSet::new();
        let mut list: Vec<Root> = Vec::new();
        for g in gens {
            for r in [g.clone(), g.iter().map(|x| -x).collect()] {
                if seen.insert(r.clone()) {
                    list.push(r);
                }
            }
        }
        let mut i = 0;
        while i < list.len() {
            for g in gens {
                let r = self.reflect(g, &list[i]);
                if seen.insert(r.clone()) {
                    list.push(r);
                }
            }
            i += 1;
        }
        list.sort();
        list
    }

    pub fn is_root(&self, a: &[i64]) -> bool {
        self.roots.binary_search(&a.to_vec()).is_ok()
    }

    pub fn highest_root(&self) -> Root {
        highest(&self.positive_roots(), &self.simple_roots())
    }

    /// Weyl-invariance spot check: `(s_i x, s_i y) = (x, y)` for all simple reflections.
    pub fn check_weyl_invariance(&self, x: &[i64], y: &[i64]) -> bool {
        self.simple_roots().iter().all(|a| self.ip(&self.reflect(a, x), &self.reflect(a, y)) == self.ip(x, y))
    }

    /// `H'_a = 2a / (a, a)`.
    pub fn coroot(&self, a: &[i64]) -> Result<CoweightElt, RootError> {
        if !self.is_root(a) {
            return Err(RootError::NotARoot);
        }
        let l = self.ip(a, a);
        Ok(CoweightElt::new(a.iter().map(|x| 2 * x * self.scale).collect(), l))
    }

    /// `sum_i c_i H'_{alpha_i} / den`, the coordinates used on the command line.
    pub fn coweight_from_coroots(&self, coeffs: &[i64], den: i64) -> Result<CoweightElt, RootError> {
        if coeffs.len() != self.rank() {
            return Err(RootError::Rank(coeffs.len(), self.rank()));
        }
        let mut t = CoweightElt::zero(self.rank());
        for (i, &c) in coeffs.iter().enumerate() {
            t = t.add(&self.coroot(&unit(self.rank(), i))?.scale(c, 1));
        }
        Ok(t.scale(1, den))
    }

    /// `<a, t>` as a reduced fraction.
    pub fn pairing(&self, a: &[i64], t: &CoweightElt) -> (i64, i64) {
        let p = self.ip(a, &t.num);
        let q = self.scale * t.den;
        let g = gcd(p, q);
        (p / g, q / g)
    }

    fn pairing_is_integral(&self, a: &[i64], t: &CoweightElt) -> bool {
        self.ip(a, &t.num) % (self.scale * t.den) == 0
    }

    /// Roots of the centralizer of `exp(2 pi i t)`.
    pub fn centralizer_roots(&self, t: &CoweightElt) -> Result<Vec<Root>, RootError> {
        if t.num.len() != self.rank() {
            return Err(RootError::Rank(t.num.len(), self.rank()));
        }
        Ok(self.roots.iter().filter(|a| self.pairing_is_integral(a, t)).cloned().collect())
    }

    pub fn centralizer_subsystem(&self, t: &CoweightElt) -> Result<SubsystemType, RootError> {
        Ok(self.subsystem_type(&self.centralizer_roots(t)?))
    }

    /// Simple system of a closed subsystem, w.r.t. the ambient positive roots.
    pub fn subsystem_simple(&self, roots: &[Root]) -> Vec<Root> {
        let pos: Vec<&Root> = roots.iter().filter(|r| is_positive(r)).collect();
        let set: HashSet<&Root> = pos.iter().copied().collect();
        pos.iter()
            .filter(|r| {
                !pos.iter().any(|a| {
                    let b: Root = r.iter().zip(a.iter()).map(|(x, y)| x - y).collect();
                    set.contains(&b)
                })
            })
            .map(|r| (*r).clone())
            .collect()
    }

    /// Connected components of a simple system.
    fn components(&self, simple: &[Root]) -> Vec<Vec<Root>> {
        let k = simple.len();
        let mut comp = vec![usize::MAX; k];
        let mut out = Vec::new();
        for s in 0..k {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![s];
            comp[s] = id;
            let mut members = Vec::new();
            while let Some(x) = stack.pop() {
                members.push(x);
                for y in 0..k {
                    if comp[y] == usize::MAX && self.ip(&simple[x], &simple[y]) != 0 {
                        comp[y] = id;
                        stack.push(y);
                    }
                }
            }
            members.sort_unstable();
            out.push(members.into_iter().map(|m| simple[m].clone()).collect());
        }
        out
    }

    fn classify(&self, comp: &[Root]) -> Component {
        let k = comp.len();
        let two = self.has_two_lengths();
        let mut deg = vec![0; k];
        let mut max_bond = 1;
        let mut bond_ends = (0, 0);
        for i in 0..k {
            for j in 0..k {
                if i != j && self.ip(&comp[i], &comp[j]) != 0 {
                    deg[i] += 1;
                    let b = self.cartan_int(&comp[i], &comp[j]) * self.cartan_int(&comp[j], &comp[i]);
                    if b > max_bond {
                        max_bond = b;
                        bond_ends = (i, j);
                    }
                }
            }
        }
        let lengths: BTreeSet<i64> = comp.iter().map(|r| self.ip(r, r)).collect();
        let simply_laced = lengths.len() == 1;
        let tag = (simply_laced && two).then(|| if self.is_long(&comp[0]) { LenTag::L } else { LenTag::S });
        let (kind, rank) = if max_bond == 3 {
            ('G', 2)
        } else if max_bond == 2 {
            if k == 4 && deg[bond_ends.0] == 2 && deg[bond_ends.1] == 2 {
                ('F', 4)
            } else if k == 2 {
                ('B', 2)
            } else {
                // the double bond sits at an end of the chain; the end node's length decides
                let (a, b) = bond_ends;
                let end = if deg[a] == 1 { a } else { b };
                if self.is_long(&comp[end]) {
                    ('C', k)
                } else {
                    ('B', k)
                }
            }
        } else if deg.contains(&3) {
            // no E-type subsystems occur in B, D, F4, G2
            ('D', k)
        } else {
            ('A', k)
        };
        Component { kind, rank, tag }
    }

    /// Type of the subsystem with the given roots.
    pub fn subsystem_type(&self, roots: &[Root]) -> SubsystemType {
        let simple = self.subsystem_simple(roots);
        SubsystemType::new(self.components(&simple).iter().map(|c| self.classify(c)).collect())
    }

    /// Iterated Borel-de Siebenthal closure: full-rank subsystems obtained by
    /// deleting a node from a component's extended diagram, repeatedly.
    pub fn bds_closure(&self) -> BTreeSet<SubsystemType> {
        let mut seen: HashSet<Vec<Root>> = HashSet::new();
        let mut queue = vec![self.roots.clone()];
        seen.insert(self.roots.clone());
        let mut types = BTreeSet::new();
        while let Some(sub) = queue.pop() {
            types.insert(self.subsystem_type(&sub));
            let simple = self.subsystem_simple(&sub);
            let comps = self.components(&simple);
            for (ci, comp) in comps.iter().enumerate() {
                let comp_roots = self.generate(comp);
                let pos: Vec<Root> = comp_roots.iter().filter(|r| is_positive(r)).cloned().collect();
                let theta = highest(&pos, comp);
                let mut extended = comp.clone();
                extended.push(theta.iter().map(|x| -x).collect());
                for drop in 0..extended.len() {
                    let mut gens: Vec<Root> = comps.iter().enumerate().filter(|(j, _)| *j != ci).flat_map(|(_, c)| c.clone()).collect();
                    gens.extend(extended.iter().enumerate().filter(|(j, _)| *j != drop).map(|(_, r)| r.clone()));
                    let new = self.generate(&gens);
                    if seen.insert(new.clone()) {
                        queue.push(new);
                    }
                }
            }
        }
        types
    }

    fn check_subset(&self, s: &[usize]) -> Result<Vec<usize>, RootError> {
        let mut idx: Vec<usize> = Vec::new();
        for &i in s {
            if i == 0 || i > self.rank() {
                return Err(RootError::Index(i));
            }
            idx.push(i - 1);
        }
        idx.sort_unstable();
        idx.dedup();
        Ok(idx)
    }

    /// Cyclic orders of the center of the simply connected group with simple roots `s` (1-based).
    pub fn levi_center(&self, s: &[usize]) -> Result<Vec<i64>, RootError> {
        let idx = self.check_subset(s)?;
        let a = self.cartan_matrix();
        let sub: Vec<Vec<i128>> = idx.iter().map(|&i| idx.iter().map(|&j| a[i][j] as i128).collect()).collect();
        Ok(torsion(&sub).into_iter().map(|x| x as i64).collect())
    }

    /// Checks for the Levi subgroup with simple roots `s` (1-based):
    /// its derived group is simply connected, and each central element
    /// `exp(2 pi i H')` lies in `Z(G) Z(L)_0`.
    pub fn levi_lemma_checks(&self, s: &[usize]) -> Result<(bool, bool), RootError> {
        let idx = self.check_subset(s)?;
        let r = self.rank();
        let a = self.cartan_matrix();
        // the S-coroots in the basis of all simple coroots (the kernel lattice of exp)
        let rows: Vec<Vec<i128>> = idx.iter().map(|&i| (0..r).map(|j| i128::from(i == j)).collect()).collect();
        let simply_connected = smith(&rows).invariants.iter().all(|&d| d == 1);
        // fundamental coweights of S: H' = sum_{i in S} c_i H'_i with <a_k, H'> = delta on S
        let k = idx.len();
        let m: Vec<Vec<i128>> = idx.iter().map(|&kk| idx.iter().map(|&i| a[i][kk] as i128).collect()).collect();
        let mut containment = true;
        for target in 0..k {
            let Some((c, den)) = solve_rational(&m, &(0..k).map(|x| i128::from(x == target)).collect::<Vec<_>>()) else {
                containment = false;
                break;
            };
            // pairings <a_j, H'> * den for every simple root of G
            let pair: Vec<i128> = (0..r).map(|j| idx.iter().zip(&c).map(|(&i, ci)| ci * a[i][j] as i128).sum()).collect();
            // H = sum_{j not in S} t_j w_j with w_j the fundamental coweights of G; t_j = <a_j, H'>
            for (j, p) in pair.iter().enumerate() {
                let t_j = if idx.contains(&j) { 0 } else { *p };
                if (p - t_j) % den != 0 {
                    containment = false;
                }
            }
        }
        Ok((simply_connected, containment))
    }
}

fn unit(n: usize, i: usize) -> Root {
    (0..n).map(|j| i64::from(i == j)).collect()
}

fn is_positive(r: &[i64]) -> bool {
    r.iter().all(|&x| x >= 0)
}

fn chain(n: usize, diag: &[i64], off: &[i64]) -> Vec<Vec<i64>> {
    let mut g = vec![vec![0; n]; n];
    for i in 0..n {
        g[i][i] = diag[i];
        if i + 1 < n {
            g[i][i + 1] = off[i];
            g[i + 1][i] = off[i];
        }
    }
    g
}

/// The positive root `theta` with `theta + s` not a root for every simple `s`.
fn highest(pos: &[Root], simple: &[Root]) -> Root {
    let set: HashSet<&Root> = pos.iter().collect();
    pos.iter()
        .filter(|r| {
            simple.iter().all(|s| {
                let sum: Root = r.iter().zip(s).map(|(x, y)| x + y).collect();
                !set.contains(&sum)
            })
        })
        .max_by_key(|r| r.iter().sum::<i64>())
        .expect("nonempty irreducible system")
        .clone()
}

/// Solve `m x = b` over `Q`; returns `(numerators, common denominator)`.
fn solve_rational(m: &[Vec<i128>], b: &[i128]) -> Option<(Vec<i128>, i128)> {
    let n = m.len();
    if n == 0 {
        return Some((Vec::new(), 1));
    }
    // fraction-free Gauss-Jordan on the augmented matrix
    let mut a: Vec<Vec<i128>> = m.iter().zip(b).map(|(r, &x)| r.iter().copied().chain([x]).collect()).collect();
    for col in 0..n {
        let p = (col..n).find(|&r| a[r][col] != 0)?;
        a.swap(col, p);
        for r in 0..n {
            if r != col && a[r][col] != 0 {
                let (f, g) = (a[col][col], a[r][col]);
                for c in 0..=n {
                    a[r][c] = a[r][c] * f - a[col][c] * g;
                }
                let h = a[r].iter().fold(0i128, |h, &x| gcd128(h, x));
                if h > 1 {
                    a[r].iter_mut().for_each(|x| *x /= h);
                }
            }
        }
    }
    let den = (0..n).fold(1i128, |l, i| l / gcd128(l, a[i][i]) * a[i][i].abs());
    Some(((0..n).map(|i| a[i][n] * (den / a[i][i])).collect(), den))
}

fn gcd128(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd128(b, a % b)
    }
}

/// Every subset of `1..=rank` except the full set.
pub fn proper_subsets(rank: usize) -> Vec<Vec<usize>> {
    (0u32..(1 << rank) - 1).map(|m| (0..rank).filter(|i| m >> i & 1 == 1).map(|i| i + 1).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        s.parse().unwrap()
    }

    #[test]
    fn root_counts() {
        for (t, n) in [("G2", 12), ("F4", 48), ("D4", 24), ("B3", 18), ("A1", 2), ("C3", 18), ("B7", 98)] {
            assert_eq!(rs(t).roots().len(), n, "{t}");
        }
        assert_eq!(rs("F4").highest_root(), vec![2, 3, 4, 2]);
        assert!("E9".parse::<RootSystem>().is_err());
    }

    #[test]
    fn coroots() {
        let f4 = rs("F4");
        let long = vec![1, 0, 0, 0];
        assert_eq!(f4.coroot(&long).unwrap(), CoweightElt::new(long.clone(), 1));
        assert_eq!(f4.coroot(&[0, 0, 0, 1]).unwrap(), CoweightElt::new(vec![0, 0, 0, 2], 1));
        for a in f4.roots() {
            assert_eq!(f4.pairing(a, &f4.coroot(a).unwrap()), (2, 1));
            assert!(f4.check_weyl_invariance(a, &[1, 2, 3, 1]));
        }
        assert!(f4.coroot(&[1, 1, 1, 7]).is_err());
    }

    #[test]
    fn theta_centralizer() {
        let f4 = rs("F4");
        let t = f4.coweight_from_coroots(&[0, 0, 2, 1], 3).unwrap();
        assert_eq!(f4.centralizer_subsystem(&t).unwrap().to_string(), "A2L+A2S");
        let shifted = t.add(&f4.coroot(&[0, 1, 2, 2]).unwrap());
        assert_eq!(f4.centralizer_subsystem(&shifted).unwrap(), f4.centralizer_subsystem(&t).unwrap());
        assert_eq!(f4.centralizer_subsystem(&CoweightElt::zero(4)).unwrap().to_string(), "F4");
        let generic = CoweightElt::new(vec![1, 3, 7, 11], 97);
        assert!(f4.centralizer_subsystem(&generic).unwrap().is_empty());
    }

    #[test]
    fn type_labels() {
        let t = SubsystemType::parse("A_2^{L}+A_2^{S}", true).unwrap();
        assert_eq!(t.to_string(), "A2L+A2S");
        assert_eq!(SubsystemType::parse("C2+2A1", true).unwrap(), SubsystemType::parse("B2+2A1", true).unwrap());
        assert_eq!(SubsystemType::parse("4A1", true).unwrap().to_string(), "4A1L");
        assert_eq!(SubsystemType::parse("D4", false).unwrap().to_string(), "D4");
        assert!(SubsystemType::parse("Q3", false).is_err());
        assert_eq!(rs("D5").subsystem_type(rs("D5").roots()).to_string(), "D5");
        assert_eq!(rs("C3").subsystem_type(rs("C3").roots()).to_string(), "C3");
        assert_eq!(rs("B3").subsystem_type(rs("B3").roots()).to_string(), "B3");
    }

    #[test]
    fn closures() {
        let g2 = rs("G2").bds_closure();
        for l in ["A2L", "A1L+A1S", "G2"] {
            assert!(g2.contains(&SubsystemType::parse(l, true).unwrap()), "{l}");
        }
        let f4 = rs("F4").bds_closure();
        for l in ["A2L+A2S", "A3L+A1S", "B4", "D4", "B2+2A1", "4A1", "C3+A1", "C2+2A1"] {
            assert!(f4.contains(&SubsystemType::parse(l, true).unwrap()), "{l}");
        }
        let a1 = rs("A1").bds_closure();
        assert_eq!(a1.len(), 1);
    }

    #[test]
    fn levi_centers() {
        assert_eq!(rs("F4").levi_center(&[1, 2, 3]).unwrap(), vec![2]);
        assert!(rs("F4").levi_center(&[]).unwrap().is_empty());
        assert_eq!(rs("D4").levi_center(&[1, 2, 3, 4]).unwrap(), vec![2, 2]);
        assert_eq!(rs("B5").levi_center(&[1, 2, 3, 4, 5]).unwrap(), vec![2]);
        for s in proper_subsets(4) {
            assert_eq!(rs("F4").levi_lemma_checks(&s).unwrap(), (true, true), "{s:?}");
        }
        assert!(rs("F4").levi_center(&[5]).is_err());
    }
}
