//! The Clifford algebra `Cl(n)` with `e_i^2 = 1`, coefficients in `Q(z48)`.
//!
//! Basis blades are bit masks: bit `i - 1` stands for `e_i`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclo::CycloElt;
use crate::linalg::{Mat, Vector};

/// Largest supported ambient dimension (masks are `u32`).
pub const MAX_DIM: u32 = 32;

pub type Blade = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliffError {
    #[error("ambient dimensions differ: {0} vs {1}")]
    DimMismatch(u32, u32),
    #[error("ambient dimension {0} outside 1..={MAX_DIM}")]
    DimOutOfRange(u32),
    #[error("generator e{0} does not exist in dimension {1}")]
    IndexOutOfRange(u32, u32),
    #[error("element is not in Pin(n)")]
    NotInPin,
    #[error("element is not in Spin(n)")]
    NotInSpin,
    #[error("cannot parse element word {0:?}: {1}")]
    Parse(String, String),
}

/// True when reordering `e_A e_B` into ascending blade order gives a minus sign.
#[inline]
pub fn blade_sign(a: Blade, b: Blade) -> bool {
    let mut count = 0u32;
    let mut bb = b;
    while bb != 0 {
        let j = bb.trailing_zeros();
        count += ((a as u64) >> (j + 1)).count_ones();
        bb &= bb - 1;
    }
    count & 1 == 1
}

pub fn mask_from_indices(idx: &[u32]) -> Blade {
    idx.iter().fold(0, |m, &i| m | (1 << (i - 1)))
}

pub fn mask_indices(mask: Blade) -> Vec<u32> {
    (0..32).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect()
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CliffElt {
    n: u32,
    terms: Vec<(Blade, CycloElt)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PinClass {
    NotInGroup,
    PinOdd,
    Spin,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Involution {
    Reverse,
    Grade,
}

fn check_dim(n: u32) -> Result<(), CliffError> {
    if n == 0 || n > MAX_DIM {
        return Err(CliffError::DimOutOfRange(n));
    }
    Ok(())
}

impl CliffElt {
    fn from_map(n: u32, map: BTreeMap<Blade, CycloElt>) -> Self {
        CliffElt { n, terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn from_terms(n: u32, terms: impl IntoIterator<Item = (Blade, CycloElt)>) -> Self {
        let mut map: BTreeMap<Blade, CycloElt> = BTreeMap::new();
        for (m, c) in terms {
            assert!(n == 32 || m >> n == 0, "blade outside ambient dimension");
            let e = map.entry(m).or_insert_with(CycloElt::zero);
            *e = &*e + &c;
        }
        Self::from_map(n, map)
    }

    pub fn zero(n: u32) -> Self {
        CliffElt { n, terms: Vec::new() }
    }

    pub fn scalar(n: u32, c: CycloElt) -> Self {
        Self::from_terms(n, [(0, c)])
    }

    pub fn one(n: u32) -> Self {
        Self::scalar(n, CycloElt::one())
    }

    pub fn blade(n: u32, mask: Blade) -> Self {
        Self::from_terms(n, [(mask, CycloElt::one())])
    }

    pub fn blade_of(n: u32, idx: &[u32]) -> Self {
        let mut g = Self::one(n);
        for &i in idx {
            g = &g * &Self::blade(n, 1 << (i - 1));
        }
        g
    }

    /// The volume element `c_n = e_1 e_2 ... e_n`.
    pub fn volume(n: u32) -> Self {
        Self::blade(n, full_mask(n))
    }

    /// `(1 + e_i e_j) / sqrt(2)`; for `i > j` this is the inverse rotation.
    pub fn r(n: u32, i: u32, j: u32) -> Self {
        let b = Self::blade_of(n, &[i, j]);
        (&Self::one(n) + &b).scale(&CycloElt::inv_sqrt2())
    }

    /// `cos(k pi/8) + sin(k pi/8) e_i e_j`.
    pub fn rot(n: u32, i: u32, j: u32, k: i64) -> Self {
        let b = Self::blade_of(n, &[i, j]);
        &Self::scalar(n, CycloElt::cos_pi8(k)) + &b.scale(&CycloElt::sin_pi8(k))
    }

    pub fn dim(&self) -> u32 {
        self.n
    }

    pub fn terms(&self) -> &[(Blade, CycloElt)] {
        &self.terms
    }

    pub fn coeff(&self, mask: Blade) -> CycloElt {
        self.terms
            .binary_search_by_key(&mask, |t| t.0)
            .map(|k| self.terms[k].1.clone())
            .unwrap_or_default()
    }

    pub fn scalar_part(&self) -> CycloElt {
        self.coeff(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    /// `Some(c)` when the element is a scalar `c`.
    pub fn as_scalar(&self) -> Option<CycloElt> {
        match self.terms.as_slice() {
            [] => Some(CycloElt::zero()),
            [(0, c)] => Some(c.clone()),
            _ => None,
        }
    }

    /// `Some((mask, c))` for a single term `c e_mask`.
    pub fn as_blade(&self) -> Option<(Blade, &CycloElt)> {
        match self.terms.as_slice() {
            [(m, c)] => Some((*m, c)),
            _ => None,
        }
    }

    pub fn is_even(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.count_ones() % 2 == 0)
    }

    pub fn is_odd(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.count_ones() % 2 == 1)
    }

    pub fn geo_product(&self, other: &CliffElt) -> Result<CliffElt, CliffError> {
        if self.n != other.n {
            return Err(CliffError::DimMismatch(self.n, other.n));
        }
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &CliffElt) -> CliffElt {
        if self.terms.len() == 1 && other.terms.len() == 1 {
            let ((a, x), (b, y)) = (&self.terms[0], &other.terms[0]);
            let c = x * y;
            let c = if blade_sign(*a, *b) { -c } else { c };
            return CliffElt { n: self.n, terms: vec![(a ^ b, c)] };
        }
        let mut map: BTreeMap<Blade, CycloElt> = BTreeMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let p = x * y;
                let e = map.entry(a ^ b).or_insert_with(CycloElt::zero);
                *e = if blade_sign(*a, *b) { &*e - &p } else { &*e + &p };
            }
        }
        Self::from_map(self.n, map)
    }

    pub fn scale(&self, c: &CycloElt) -> CliffElt {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        CliffElt { n: self.n, terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect() }
    }

    fn map_signs(&self, neg: impl Fn(u32) -> bool) -> CliffElt {
        CliffElt {
            n: self.n,
            terms: self.terms.iter().map(|(m, c)| (*m, if neg(m.count_ones()) { -c } else { c.clone() })).collect(),
        }
    }

    /// Reverse the factor order of every blade: grade `k` picks up `(-1)^{k(k-1)/2}`.
    pub fn reverse(&self) -> CliffElt {
        self.map_signs(|k| (k * k.saturating_sub(1) / 2) % 2 == 1)
    }

    pub fn grade_involution(&self) -> CliffElt {
        self.map_signs(|k| k % 2 == 1)
    }

    pub fn involution(&self, kind: Involution) -> CliffElt {
        match kind {
            Involution::Reverse => self.reverse(),
            Involution::Grade => self.grade_involution(),
        }
    }

    /// `g * reverse(g)`.
    pub fn norm(&self) -> CliffElt {
        self * &self.reverse()
    }

    /// Images `alpha(g) e_i g^-1` of the basis vectors, if every image is a vector.
    fn vector_images(&self) -> Option<Vec<CliffElt>> {
        let inv = self.reverse();
        let twisted = if self.is_odd() { -self } else { self.clone() };
        let mut out = Vec::with_capacity(self.n as usize);
        for i in 1..=self.n {
            let img = &(&twisted * &Self::blade(self.n, 1 << (i - 1))) * &inv;
            if img.terms.iter().any(|(m, _)| m.count_ones() != 1) {
                return None;
            }
            out.push(img);
        }
        Some(out)
    }

    pub fn pin_check(&self) -> PinClass {
        let even = self.is_even();
        if !(even || self.is_odd()) || self.is_zero() || !self.norm().is_one() {
            return PinClass::NotInGroup;
        }
        match self.vector_images() {
            None => PinClass::NotInGroup,
            Some(_) if even => PinClass::Spin,
            Some(_) => PinClass::PinOdd,
        }
    }

    /// Inverse of a Pin element (its reverse).
    pub fn pin_inverse(&self) -> Result<CliffElt, CliffError> {
        if self.pin_check() == PinClass::NotInGroup {
            return Err(CliffError::NotInPin);
        }
        Ok(self.reverse())
    }

    /// The matrix of `v -> alpha(g) v g^-1` on `span(e_1..e_n)`; column `i` is the image of `e_i`.
    pub fn vector_rep(&self) -> Result<Mat, CliffError> {
        let even = self.is_even();
        if !(even || self.is_odd()) || self.is_zero() || !self.norm().is_one() {
            return Err(CliffError::NotInPin);
        }
        let imgs = self.vector_images().ok_or(CliffError::NotInPin)?;
        let n = self.n as usize;
        let cols: Vec<Vector> = imgs
            .iter()
            .map(|img| (0..n).map(|r| img.coeff(1 << r)).collect())
            .collect();
        Ok(Mat::from_columns(&cols))
    }

    /// `(sc(g), sc(g c_n))`; the second entry only for even `n`.
    pub fn scalar_invariants(&self) -> (CycloElt, Option<CycloElt>) {
        let sc = self.scalar_part();
        if self.n % 2 == 1 {
            return (sc, None);
        }
        let full = full_mask(self.n);
        let c = self.coeff(full);
        let c = if blade_sign(full, full) { -c } else { c };
        (sc, Some(c))
    }

    /// `h x h^-1` for `h` in Pin (no twist).
    pub fn conjugate_by(&self, h: &CliffElt) -> CliffElt {
        &(h * self) * &h.reverse()
    }

    /// Matrix of `Ad(g)` on the bivectors `e_i e_j` (`i < j`, lexicographic).
    pub fn ad_bivector_matrix(&self) -> Mat {
        let basis = bivector_basis(self.n);
        let index: BTreeMap<Blade, usize> = basis.iter().enumerate().map(|(k, &m)| (m, k)).collect();
        let inv = self.reverse();
        let mut cols = Vec::with_capacity(basis.len());
        for &m in &basis {
            let img = &(self * &Self::blade(self.n, m)) * &inv;
            let mut col = vec![CycloElt::zero(); basis.len()];
            for (bm, c) in img.terms() {
                let k = index.get(bm).expect("Ad(g) preserves bivectors");
                col[*k] = c.clone();
            }
            cols.push(col);
        }
        Mat::from_columns(&cols)
    }
}

pub fn full_mask(n: u32) -> Blade {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Bivector masks `e_i e_j`, `i < j`, in lexicographic order of `(i, j)`.
pub fn bivector_basis(n: u32) -> Vec<Blade> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            out.push((1 << i) | (1 << j));
        }
    }
    out
}

pub fn geo_product(a: &CliffElt, b: &CliffElt) -> Result<CliffElt, CliffError> {
    a.geo_product(b)
}

/// Dimension of the subspace of bivectors fixed by `Ad(g)` for every generator.
pub fn ad_fixed_dim(gens: &[CliffElt], n: u32) -> Result<usize, CliffError> {
    check_dim(n)?;
    for g in gens {
        if g.n != n {
            return Err(CliffError::DimMismatch(g.n, n));
        }
        if g.pin_check() != PinClass::Spin {
            return Err(CliffError::NotInSpin);
        }
    }
    let dim = bivector_basis(n).len();
    // Single-term generators act diagonally; handling them first shrinks the space cheaply.
    let mut order: Vec<&CliffElt> = gens.iter().collect();
    order.sort_by_key(|g| g.terms.len());
    let mut space: Vec<Vector> = (0..dim)
        .map(|k| (0..dim).map(|j| if j == k { CycloElt::one() } else { CycloElt::zero() }).collect())
        .collect();
    for g in order {
        if space.is_empty() {
            break;
        }
        let a = g.ad_bivector_matrix();
        let diffs: Vec<Vector> = space
            .iter()
            .map(|v| a.mul_vec(v).iter().zip(v).map(|(x, y)| x - y).collect())
            .collect();
        let combos = Mat::from_columns(&diffs).nullspace();
        space = combos
            .iter()
            .map(|c| {
                let mut w = vec![CycloElt::zero(); dim];
                for (coef, v) in c.iter().zip(&space) {
                    if coef.is_zero() {
                        continue;
                    }
                    for (acc, x) in w.iter_mut().zip(v) {
                        if !x.is_zero() {
                            *acc = &*acc + &(coef * x);
                        }
                    }
                }
                w
            })
            .collect();
    }
    Ok(space.len())
}

impl<'a> std::ops::Mul<&'a CliffElt> for &'a CliffElt {
    type Output = CliffElt;
    fn mul(self, rhs: &CliffElt) -> CliffElt {
        assert_eq!(self.n, rhs.n, "Clifford ambient dimension mismatch");
        self.mul_unchecked(rhs)
    }
}

impl<'a> std::ops::Add<&'a CliffElt> for &'a CliffElt {
    type Output = CliffElt;
    fn add(self, rhs: &CliffElt) -> CliffElt {
        assert_eq!(self.n, rhs.n, "Clifford ambient dimension mismatch");
        CliffElt::from_terms(self.n, self.terms.iter().chain(&rhs.terms).cloned())
    }
}

impl<'a> std::ops::Sub<&'a CliffElt> for &'a CliffElt {
    type Output = CliffElt;
    fn sub(self, rhs: &CliffElt) -> CliffElt {
        self + &(-rhs)
    }
}

impl std::ops::Neg for &CliffElt {
    type Output = CliffElt;
    fn neg(self) -> CliffElt {
        CliffElt { n: self.n, terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

impl fmt::Display for CliffElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for i in mask_indices(*m) {
                write!(f, "e{i}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CliffElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cl{}[{}]", self.n, self)
    }
}

/// One factor of an element word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Factor {
    Neg,
    E(u32),
    R(u32, u32),
    Rot(u32, u32, i64),
    /// The volume element `c_n`.
    C,
}

/// A product of factors, e.g. `-e1 e2 r(3,4) rot(5,6,1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Word(pub Vec<Factor>);

impl Word {
    pub fn eval(&self, n: u32) -> Result<CliffElt, CliffError> {
        check_dim(n)?;
        let idx = |i: u32| if i == 0 || i > n { Err(CliffError::IndexOutOfRange(i, n)) } else { Ok(i) };
        let mut g = CliffElt::one(n);
        for f in &self.0 {
            let x = match *f {
                Factor::Neg => CliffElt::scalar(n, CycloElt::from_int(-1)),
                Factor::E(i) => CliffElt::blade(n, 1 << (idx(i)? - 1)),
                Factor::R(i, j) | Factor::Rot(i, j, _) if i == j => {
                    return Err(CliffError::Parse(self.to_string(), "repeated index in rotation".into()))
                }
                Factor::R(i, j) => CliffElt::r(n, idx(i)?, idx(j)?),
                Factor::Rot(i, j, k) => CliffElt::rot(n, idx(i)?, idx(j)?, k),
                Factor::C => CliffElt::volume(n),
            };
            g = &g * &x;
        }
        Ok(g)
    }

    /// Word for the blade `e_I` (ascending indices).
    pub fn blade(idx: &[u32]) -> Word {
        Word(idx.iter().map(|&i| Factor::E(i)).collect())
    }

    /// Largest generator index mentioned.
    pub fn max_index(&self) -> u32 {
        self.0
            .iter()
            .map(|f| match *f {
                Factor::E(i) => i,
                Factor::R(i, j) | Factor::Rot(i, j, _) => i.max(j),
                _ => 0,
            })
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for fac in &self.0 {
            if !out.is_empty() && !out.ends_with('-') {
                out.push(' ');
            }
            match fac {
                Factor::Neg => out.push('-'),
                Factor::E(i) => out.push_str(&format!("e{i}")),
                Factor::R(i, j) => out.push_str(&format!("r({i},{j})")),
                Factor::Rot(i, j, k) => out.push_str(&format!("rot({i},{j},{k})")),
                Factor::C => out.push('c'),
            }
        }
        if out.is_empty() || out.ends_with('-') {
            out.push('1');
        }
        write!(f, "{out}")
    }
}

impl FromStr for Word {
    type Err = CliffError;

    fn from_str(s: &str) -> Result<Self, CliffError> {
        let err = |m: &str| CliffError::Parse(s.to_string(), m.to_string());
        let chars: Vec<char> = s.chars().collect();
        let mut pos = 0;
        let mut out = Vec::new();
        let read_int = |pos: &mut usize| -> Option<i64> {
            let start = *pos;
            if *pos < chars.len() && chars[*pos] == '-' {
                *pos += 1;
            }
            while *pos < chars.len() && chars[*pos].is_ascii_digit() {
                *pos += 1;
            }
            chars[start..*pos].iter().collect::<String>().parse().ok()
        };
        let args = |pos: &mut usize, count: usize| -> Option<Vec<i64>> {
            if chars.get(*pos) != Some(&'(') {
                return None;
            }
            *pos += 1;
            let mut v = Vec::new();
            for k in 0..count {
                while chars.get(*pos).is_some_and(|c| c.is_whitespace()) {
                    *pos += 1;
                }
                v.push(read_int(pos)?);
                while chars.get(*pos).is_some_and(|c| c.is_whitespace()) {
                    *pos += 1;
                }
                let want = if k + 1 == count { ')' } else { ',' };
                if chars.get(*pos) != Some(&want) {
                    return None;
                }
                *pos += 1;
            }
            Some(v)
        };
        while pos < chars.len() {
            let c = chars[pos];
            if c.is_whitespace() || c == '*' {
                pos += 1;
            } else if c == '-' {
                out.push(Factor::Neg);
                pos += 1;
            } else if c == 'c' {
                out.push(Factor::C);
                pos += 1;
            } else if c == 'e' {
                pos += 1;
                let start = pos;
                while pos < chars.len() && chars[pos].is_ascii_digit() {
                    pos += 1;
                }
                let i: u32 = chars[start..pos].iter().collect::<String>().parse().map_err(|_| err("bad e index"))?;
                out.push(Factor::E(i));
            } else if chars[pos..].starts_with(&['r', 'o', 't']) {
                pos += 3;
                let v = args(&mut pos, 3).ok_or_else(|| err("bad rot(i,j,k)"))?;
                if v[0] <= 0 || v[1] <= 0 {
                    return Err(err("indices must be positive"));
                }
                out.push(Factor::Rot(v[0] as u32, v[1] as u32, v[2]));
            } else if c == 'r' {
                pos += 1;
                let v = args(&mut pos, 2).ok_or_else(|| err("bad r(i,j)"))?;
                if v[0] <= 0 || v[1] <= 0 {
                    return Err(err("indices must be positive"));
                }
                out.push(Factor::R(v[0] as u32, v[1] as u32));
            } else if c == '1' && !chars.get(pos + 1).is_some_and(|d| d.is_ascii_digit()) {
                pos += 1;
            } else {
                return Err(err(&format!("unexpected character {c:?}")));
            }
        }
        Ok(Word(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str, n: u32) -> CliffElt {
        s.parse::<Word>().unwrap().eval(n).unwrap()
    }

    #[test]
    fn blade_products() {
        assert_eq!(&w("e1e2", 4) * &w("e1e3", 4), w("-e2e3", 4));
        assert_eq!(&w("e1e2", 4) * &w("e1e2", 4), w("-1", 4));
        let pi = w("r(1,2) r(3,4) r(5,6) r(7,8)", 8);
        assert_eq!(&pi * &pi, CliffElt::volume(8));
    }

    #[test]
    fn involutions() {
        assert_eq!(w("e1e2", 4).reverse(), w("-e1e2", 4));
        assert_eq!(w("e1e2e3e4", 4).reverse(), w("e1e2e3e4", 4));
        assert_eq!(w("e1", 4).grade_involution(), w("-e1", 4));
    }

    #[test]
    fn pin_classes() {
        assert_eq!(w("r(1,2)", 3).pin_check(), PinClass::Spin);
        assert_eq!(w("e1", 3).pin_check(), PinClass::PinOdd);
        let not = &CliffElt::one(3) + &w("e1e2", 3);
        assert_eq!(not.pin_check(), PinClass::NotInGroup);
    }

    #[test]
    fn vector_rep_examples() {
        let m = w("e1e2", 4).vector_rep().unwrap();
        let d: Vec<CycloElt> = [-1, -1, 1, 1].iter().map(|&v| CycloElt::from_int(v)).collect();
        assert_eq!(m, Mat::diag(&d));
        // quarter turn in the (1,2) plane
        let q = w("r(1,2)", 3).vector_rep().unwrap();
        let expect = Mat::from_int_rows(&[vec![0, 1, 0], vec![-1, 0, 0], vec![0, 0, 1]]);
        assert!(q == expect || q == expect.transpose());
        assert_eq!(q.pow(4), Mat::identity(3));
        assert_eq!(q.pow(2), Mat::diag(&[-1, -1, 1].map(CycloElt::from_int)));
        let pi = w("r(1,2) r(3,4) r(5,6) r(7,8)", 8).vector_rep().unwrap();
        assert_eq!(pi.mul(&pi), Mat::scalar(8, CycloElt::from_int(-1)));
    }

    #[test]
    fn scalar_invariant_examples() {
        let pi = w("r(1,2) r(3,4) r(5,6) r(7,8)", 8);
        assert_eq!(pi.scalar_invariants().0, CycloElt::from_ratio(1, 4));
        assert!(w("e1e2", 8).scalar_invariants().0.is_zero());
        assert_eq!(w("-1", 8).scalar_invariants().0, CycloElt::from_int(-1));
        assert_eq!(CliffElt::volume(8).scalar_invariants().1, Some(CycloElt::one()));
    }

    #[test]
    fn fixed_dims() {
        let g = w("e1e2e3e4", 4);
        assert_eq!(ad_fixed_dim(&[g], 4).unwrap(), 6);
        let f7: Vec<CliffElt> = ["-1", "e1e2e3e4", "e1e2e5e6", "e1e3e5e7"].iter().map(|s| w(s, 7)).collect();
        assert_eq!(ad_fixed_dim(&f7, 7).unwrap(), 0);
        assert_eq!(ad_fixed_dim(&[], 5).unwrap(), 10);
        assert_eq!(ad_fixed_dim(&[w("e1", 3)], 3), Err(CliffError::NotInSpin));
    }

    #[test]
    fn rot_is_spin() {
        for k in 0..16 {
            let g = w(&format!("rot(2,5,{k})"), 6);
            assert_eq!(g.pin_check(), PinClass::Spin);
        }
        assert_eq!(w("rot(1,2,2)", 3), w("r(1,2)", 3));
    }

    #[test]
    fn word_round_trip() {
        for s in ["-e1 e2 r(3,4) rot(5,6,-1) c", "1", "-1", "r(2,1)"] {
            let word: Word = s.parse().unwrap();
            assert_eq!(word.to_string().parse::<Word>().unwrap(), word);
        }
        assert_eq!("e1e2e9e10".parse::<Word>().unwrap(), Word::blade(&[1, 2, 9, 10]));
        assert!("e1 x".parse::<Word>().is_err());
        assert!("e9".parse::<Word>().unwrap().eval(8).is_err());
    }
}
