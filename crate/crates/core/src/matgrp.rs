//! Matrix groups: named matrices, a small expression language for them,
//! centralizers in compact Lie algebras, projective involution labels in
//! `O(8)/<-I>`, and monomial normalizer searches.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclo::CycloElt;
use crate::fingrp::{FinSubgroup, GrpElt};
use crate::linalg::Mat;
use crate::perm::PermGroup;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatError {
    #[error("cannot parse matrix expression {0:?}: {1}")]
    Parse(String, String),
    #[error("dimension mismatch: {0}")]
    Dim(String),
    #[error("not a projective involution")]
    NotInvolution,
    #[error("group is not given by signed permutation matrices")]
    NotMonomial,
    #[error("unsupported size {0} for exhaustive search")]
    TooLarge(usize),
}

/// `I_{p,q} = diag(-I_p, I_q)`.
pub fn i_pq(p: usize, q: usize) -> Mat {
    let mut d = vec![CycloElt::from_int(-1); p];
    d.extend(vec![CycloElt::one(); q]);
    Mat::diag(&d)
}

fn block2(n: usize, upper: i64, lower: i64) -> Mat {
    let mut m = Mat::zeros(2 * n, 2 * n);
    for i in 0..n {
        m.set(i, n + i, CycloElt::from_int(upper));
        m.set(n + i, i, CycloElt::from_int(lower));
    }
    m
}

/// `J_n = [[0, I_n], [-I_n, 0]]`.
pub fn j_n(n: usize) -> Mat {
    block2(n, 1, -1)
}

/// `J'_n = [[0, I_n], [I_n, 0]]`.
pub fn jp_n(n: usize) -> Mat {
    block2(n, 1, 1)
}

/// Complex-pair embedding of `Z + W j` (quaternionic `m x m`) as `[[Z, W], [-conj W, conj Z]]`.
pub fn quaternion_embed(z: &Mat, w: &Mat) -> Mat {
    let top = [z.clone(), w.clone()];
    let bottom = [w.conj().neg(), z.conj()];
    let n = z.rows();
    let mut out = Mat::zeros(2 * n, 2 * n);
    for (bi, blocks) in [top, bottom].iter().enumerate() {
        for (bj, b) in blocks.iter().enumerate() {
            for r in 0..n {
                for c in 0..n {
                    out.set(bi * n + r, bj * n + c, b.get(r, c).clone());
                }
            }
        }
    }
    out
}

/// Matrix expressions, the textual form of catalog matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatExpr {
    Ipq(usize, usize),
    J(usize),
    Jp(usize),
    Id(usize),
    Scal(CycloElt, usize),
    Dmat(Vec<CycloElt>),
    /// Permutation matrix sending `e_j` to `e_{img[j]}` (1-based).
    Pmat(Vec<usize>),
    Rows(Vec<Vec<CycloElt>>),
    /// Quaternion units times `I_m`, complex-pair embedded.
    Qi(usize),
    Qj(usize),
    Qk(usize),
    /// `M` viewed as a quaternionic matrix: `diag(M, conj M)`.
    Cpx(Box<MatExpr>),
    Diag(Vec<MatExpr>),
    Neg(Box<MatExpr>),
    Prod(Vec<MatExpr>),
}

impl MatExpr {
    pub fn eval(&self) -> Result<Mat, MatError> {
        Ok(match self {
            MatExpr::Ipq(p, q) => i_pq(*p, *q),
            MatExpr::J(n) => j_n(*n),
            MatExpr::Jp(n) => jp_n(*n),
            MatExpr::Id(n) => Mat::identity(*n),
            MatExpr::Scal(c, n) => Mat::scalar(*n, c.clone()),
            MatExpr::Dmat(d) => Mat::diag(d),
            MatExpr::Pmat(img) => {
                let n = img.len();
                let mut m = Mat::zeros(n, n);
                let mut seen = vec![false; n];
                for (j, &i) in img.iter().enumerate() {
                    if i == 0 || i > n || std::mem::replace(&mut seen[i - 1], true) {
                        return Err(MatError::Dim(format!("pmat image {i} invalid")));
                    }
                    m.set(i - 1, j, CycloElt::one());
                }
                m
            }
            MatExpr::Rows(rows) => {
                if rows.iter().any(|r| r.len() != rows.len()) {
                    return Err(MatError::Dim("rows must form a square matrix".into()));
                }
                Mat::from_rows(rows.clone())
            }
            MatExpr::Qi(m) => quaternion_embed(&Mat::scalar(*m, CycloElt::i()), &Mat::zeros(*m, *m)),
            MatExpr::Qj(m) => quaternion_embed(&Mat::zeros(*m, *m), &Mat::identity(*m)),
            MatExpr::Qk(m) => quaternion_embed(&Mat::zeros(*m, *m), &Mat::scalar(*m, CycloElt::i())),
            MatExpr::Cpx(e) => {
                let m = e.eval()?;
                Mat::block_diag(&[m.clone(), m.conj()])
            }
            MatExpr::Diag(blocks) => Mat::block_diag(&blocks.iter().map(|b| b.eval()).collect::<Result<Vec<_>, _>>()?),
            MatExpr::Neg(e) => e.eval()?.neg(),
            MatExpr::Prod(fs) => {
                let mut it = fs.iter();
                let mut acc = it.next().ok_or_else(|| MatError::Dim("empty product".into()))?.eval()?;
                for f in it {
                    let m = f.eval()?;
                    if m.rows() != acc.cols() {
                        return Err(MatError::Dim(format!("{}x{} times {}x{}", acc.rows(), acc.cols(), m.rows(), m.cols())));
                    }
                    acc = acc.mul(&m);
                }
                acc
            }
        })
    }
}

fn join<T: fmt::Display>(xs: &[T], sep: &str) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

impl fmt::Display for MatExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatExpr::Ipq(p, q) => write!(f, "I({p},{q})"),
            MatExpr::J(n) => write!(f, "J({n})"),
            MatExpr::Jp(n) => write!(f, "Jp({n})"),
            MatExpr::Id(n) => write!(f, "Id({n})"),
            MatExpr::Scal(c, n) => write!(f, "scal({c},{n})"),
            MatExpr::Dmat(d) => write!(f, "dmat({})", join(d, ",")),
            MatExpr::Pmat(p) => write!(f, "pmat({})", join(p, ",")),
            MatExpr::Rows(rows) => {
                let rs: Vec<String> = rows.iter().map(|r| join(r, ",")).collect();
                write!(f, "rows({})", rs.join(";"))
            }
            MatExpr::Qi(m) => write!(f, "qi({m})"),
            MatExpr::Qj(m) => write!(f, "qj({m})"),
            MatExpr::Qk(m) => write!(f, "qk({m})"),
            MatExpr::Cpx(e) => write!(f, "cpx({e})"),
            MatExpr::Diag(bs) => write!(f, "diag({})", join(bs, ",")),
            MatExpr::Neg(e) => match **e {
                MatExpr::Prod(_) => write!(f, "-({e})"),
                _ => write!(f, "-{e}"),
            },
            MatExpr::Prod(fs) => write!(f, "{}", join(fs, "*")),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    s: Vec<char>,
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> MatError {
        MatError::Parse(self.src.to_string(), format!("{msg} at offset {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<(), MatError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected {c:?}")))
        }
    }

    fn ident(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_alphanumeric() {
            self.pos += 1;
        }
        self.s[start..self.pos].iter().collect()
    }

    /// Raw argument text up to a top-level `,`, `;` or `)`.
    fn raw_arg(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        let mut depth = 0;
        while self.pos < self.s.len() {
            match self.s[self.pos] {
                '(' => depth += 1,
                ')' if depth == 0 => break,
                ')' => depth -= 1,
                ',' | ';' if depth == 0 => break,
                _ => {}
            }
            self.pos += 1;
        }
        self.s[start..self.pos].iter().collect::<String>().trim().to_string()
    }

    fn number(&mut self) -> Result<usize, MatError> {
        let a = self.raw_arg();
        a.parse().map_err(|_| self.err(&format!("expected a number, got {a:?}")))
    }

    fn scalar(&mut self) -> Result<CycloElt, MatError> {
        let a = self.raw_arg();
        let named = match a.strip_prefix('-') {
            Some(rest) => CycloElt::named(rest).map(|c| -c),
            None => CycloElt::named(&a),
        };
        named.or_else(|_| a.parse()).map_err(|_| self.err(&format!("bad scalar {a:?}")))
    }

    fn list<T>(&mut self, mut item: impl FnMut(&mut Self) -> Result<T, MatError>) -> Result<Vec<T>, MatError> {
        let mut out = vec![item(self)?];
        while self.peek() == Some(',') {
            self.pos += 1;
            out.push(item(self)?);
        }
        Ok(out)
    }

    fn product(&mut self) -> Result<MatExpr, MatError> {
        let mut fs = vec![self.factor()?];
        while self.peek() == Some('*') {
            self.pos += 1;
            fs.push(self.factor()?);
        }
        Ok(if fs.len() == 1 { fs.pop().unwrap() } else { MatExpr::Prod(fs) })
    }

    fn factor(&mut self) -> Result<MatExpr, MatError> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(MatExpr::Neg(Box::new(self.factor()?)))
            }
            Some('(') => {
                self.pos += 1;
                let e = self.product()?;
                self.expect(')')?;
                Ok(e)
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<MatExpr, MatError> {
        let name = self.ident();
        self.expect('(')?;
        let e = match name.as_str() {
            "I" => {
                let p = self.number()?;
                self.expect(',')?;
                MatExpr::Ipq(p, self.number()?)
            }
            "J" => MatExpr::J(self.number()?),
            "Jp" => MatExpr::Jp(self.number()?),
            "Id" => MatExpr::Id(self.number()?),
            "scal" => {
                let c = self.scalar()?;
                self.expect(',')?;
                MatExpr::Scal(c, self.number()?)
            }
            "dmat" => MatExpr::Dmat(self.list(|p| p.scalar())?),
            "pmat" => MatExpr::Pmat(self.list(|p| p.number())?),
            "rows" => {
                let mut rows = vec![self.list(|p| p.scalar())?];
                while self.peek() == Some(';') {
                    self.pos += 1;
                    rows.push(self.list(|p| p.scalar())?);
                }
                MatExpr::Rows(rows)
            }
            "qi" => MatExpr::Qi(self.number()?),
            "qj" => MatExpr::Qj(self.number()?),
            "qk" => MatExpr::Qk(self.number()?),
            "cpx" => MatExpr::Cpx(Box::new(self.product()?)),
            "diag" => MatExpr::Diag(self.list(|p| p.product())?),
            "" => return Err(self.err("expected a matrix name")),
            other => return Err(self.err(&format!("unknown matrix {other:?}"))),
        };
        self.expect(')')?;
        Ok(e)
    }
}

impl FromStr for MatExpr {
    type Err = MatError;

    fn from_str(src: &str) -> Result<Self, MatError> {
        let mut p = Parser { src, s: src.chars().collect(), pos: 0 };
        let e = p.product()?;
        if p.peek().is_some() {
            return Err(p.err("trailing input"));
        }
        Ok(e)
    }
}

impl Serialize for MatExpr {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for MatExpr {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A simple factor of a compact Lie algebra, acting on a diagonal block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LieFactor {
    /// `so(m)` on an `m`-block.
    So(usize),
    /// `su(m)` on an `m`-block.
    Su(usize),
    /// `sp(m)` on a `2m`-block in the complex-pair model.
    Sp(usize),
}

impl LieFactor {
    pub fn block(&self) -> usize {
        match *self {
            LieFactor::So(m) | LieFactor::Su(m) => m,
            LieFactor::Sp(m) => 2 * m,
        }
    }

    /// Basis of the complexification, as block matrices.
    fn complex_basis(&self) -> Vec<Mat> {
        let one = CycloElt::one;
        let unit = |n: usize, entries: &[(usize, usize, i64)]| {
            let mut m = Mat::zeros(n, n);
            for &(i, j, v) in entries {
                let cur = m.get(i, j).clone();
                m.set(i, j, &cur + &CycloElt::from_int(v));
            }
            m
        };
        match *self {
            LieFactor::So(m) => {
                let mut out = Vec::new();
                for i in 0..m {
                    for j in i + 1..m {
                        out.push(unit(m, &[(i, j, 1), (j, i, -1)]));
                    }
                }
                out
            }
            LieFactor::Su(m) => {
                let mut out = Vec::new();
                for i in 0..m {
                    for j in 0..m {
                        if i != j {
                            let mut e = Mat::zeros(m, m);
                            e.set(i, j, one());
                            out.push(e);
                        }
                    }
                }
                for i in 0..m.saturating_sub(1) {
                    out.push(unit(m, &[(i, i, 1), (i + 1, i + 1, -1)]));
                }
                out
            }
            LieFactor::Sp(m) => {
                // [[A, B], [C, -A^T]] with B, C symmetric
                let n = 2 * m;
                let mut out = Vec::new();
                for i in 0..m {
                    for j in 0..m {
                        out.push(unit(n, &[(i, j, 1), (m + j, m + i, -1)]));
                    }
                }
                for i in 0..m {
                    for j in i..m {
                        out.push(unit(n, &[(i, m + j, 1), (j, m + i, 1)]));
                        out.push(unit(n, &[(m + i, j, 1), (m + j, i, 1)]));
                    }
                }
                out
            }
        }
    }

    pub fn dim(&self) -> usize {
        match *self {
            LieFactor::So(m) => m * (m - 1) / 2,
            LieFactor::Su(m) => m * m - 1,
            LieFactor::Sp(m) => m * (2 * m + 1),
        }
    }
}

/// Basis of the subspace of `span(basis)` fixed by conjugation with every generator.
pub fn fixed_subspace(mut basis: Vec<Mat>, gens: &[Mat]) -> Result<Vec<Mat>, MatError> {
    let Some(first) = basis.first() else { return Ok(basis) };
    let n = first.rows();
    for g in gens {
        if basis.is_empty() {
            break;
        }
        let ginv = g.inverse().ok_or_else(|| MatError::Dim("singular generator".into()))?;
        // columns: vec(g B g^-1 - B) for each current basis element
        let diffs: Vec<Vec<CycloElt>> = basis.iter().map(|b| g.mul(b).mul(&ginv).sub(b).entries().cloned().collect()).collect();
        let kernel = Mat::from_columns(&diffs).nullspace();
        basis = kernel
            .iter()
            .map(|c| {
                c.iter().zip(&basis).filter(|(x, _)| !x.is_zero()).fold(Mat::zeros(n, n), |acc, (x, b)| acc.add(&b.scale(x)))
            })
            .collect();
    }
    Ok(basis)
}

/// Real dimension of the centralizer of `gens` in the direct sum of `factors`.
pub fn lie_centralizer_dim(gens: &[Mat], factors: &[LieFactor]) -> Result<usize, MatError> {
    let n: usize = factors.iter().map(|f| f.block()).sum();
    let mut basis: Vec<Mat> = Vec::new();
    let mut off = 0;
    for f in factors {
        for b in f.complex_basis() {
            let mut blocks = Vec::new();
            if off > 0 {
                blocks.push(Mat::zeros(off, off));
            }
            blocks.push(b);
            let rest = n - off - f.block();
            if rest > 0 {
                blocks.push(Mat::zeros(rest, rest));
            }
            basis.push(Mat::block_diag(&blocks));
        }
        off += f.block();
    }
    for g in gens {
        if g.rows() != n || !g.is_square() {
            return Err(MatError::Dim(format!("generator of size {} in a {n}-dimensional ambient", g.rows())));
        }
    }
    let basis = fixed_subspace(basis, gens)?;
    Ok(basis.len())
}

/// Label of a projective involution of `O(m)/<-I>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum InvLabel {
    /// `[I_{p,q}]` with `p <= q`.
    Pq(usize, usize),
    /// Lifts square to `-I`, Pfaffian `+1` (the class of `J`).
    J,
    /// Lifts square to `-I`, Pfaffian `-1` (the class of `I_{1,m-1} J I_{1,m-1}^-1`).
    JMirror,
}

impl InvLabel {
    /// Identify `J` with its mirror, as conjugation by `O(m)` does.
    pub fn merged(self) -> InvLabel {
        match self {
            InvLabel::JMirror => InvLabel::J,
            other => other,
        }
    }
}

impl fmt::Display for InvLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvLabel::Pq(p, q) => write!(f, "I({p},{q})"),
            InvLabel::J => write!(f, "J"),
            InvLabel::JMirror => write!(f, "J'"),
        }
    }
}

/// Pfaffian of a skew-symmetric matrix, by expansion along the first row.
pub fn pfaffian(a: &Mat) -> CycloElt {
    fn rec(a: &Mat, idx: &[usize]) -> CycloElt {
        if idx.is_empty() {
            return CycloElt::one();
        }
        let first = idx[0];
        let mut acc = CycloElt::zero();
        for k in 1..idx.len() {
            let v = a.get(first, idx[k]);
            if v.is_zero() {
                continue;
            }
            let rest: Vec<usize> = idx[1..].iter().copied().filter(|&x| x != idx[k]).collect();
            let term = v * &rec(a, &rest);
            acc = if k % 2 == 1 { &acc + &term } else { &acc - &term };
        }
        acc
    }
    let idx: Vec<usize> = (0..a.rows()).collect();
    if idx.len() % 2 == 1 {
        return CycloElt::zero();
    }
    rec(a, &idx)
}

/// Classify `[x]` with `x^2 = +-I`.
pub fn proj_involution_class(x: &Mat) -> Result<InvLabel, MatError> {
    let m = x.rows();
    let sq = x.mul(x);
    let s = sq.scalar_value().ok_or(MatError::NotInvolution)?;
    if s.is_one() {
        let tr = x.trace().as_integer().ok_or(MatError::NotInvolution)?;
        let p = ((m as i128 - tr) / 2) as usize;
        Ok(InvLabel::Pq(p.min(m - p), p.max(m - p)))
    } else if s == CycloElt::from_int(-1) {
        let pf = pfaffian(x);
        if pf.is_one() {
            Ok(InvLabel::J)
        } else if pf == CycloElt::from_int(-1) {
            Ok(InvLabel::JMirror)
        } else {
            Err(MatError::NotInvolution)
        }
    } else {
        Err(MatError::NotInvolution)
    }
}

/// Per-element D4 label: order in the quotient and the class of the involution power.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct D4Label {
    pub order: u32,
    pub involution: Option<InvLabel>,
}

impl fmt::Display for D4Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.involution {
            Some(l) => write!(f, "{}:{}", self.order, l),
            None => write!(f, "{}", self.order),
        }
    }
}

/// Multiset of [`D4Label`]s of a subgroup of `O(8)/<-I>`. `J` and its mirror
/// stay apart: they are distinct classes in `PSO(8)`.
pub fn d4_profile(f: &FinSubgroup) -> Result<Vec<(D4Label, usize)>, MatError> {
    let mut counts: BTreeMap<D4Label, usize> = BTreeMap::new();
    for x in 0..f.order() {
        let order = f.elem_order(x);
        let involution = if order.is_multiple_of(2) {
            let y = f.pow_idx(x, order / 2);
            let m = f.elements()[y].as_mat().ok_or(MatError::NotMonomial)?;
            Some(proj_involution_class(m)?)
        } else {
            None
        };
        *counts.entry(D4Label { order, involution }).or_default() += 1;
    }
    Ok(counts.into_iter().collect())
}

fn relabel_with(profile: &[(D4Label, usize)], map: impl Fn(InvLabel) -> InvLabel) -> Vec<(D4Label, usize)> {
    let mut counts: BTreeMap<D4Label, usize> = BTreeMap::new();
    for &(l, c) in profile {
        let l = D4Label { order: l.order, involution: l.involution.map(&map) };
        *counts.entry(l).or_default() += c;
    }
    counts.into_iter().collect()
}

/// Apply the triality identification `[I_{2,6}] <-> [J]` to a D4 profile.
pub fn triality_relabel(profile: &[(D4Label, usize)]) -> Vec<(D4Label, usize)> {
    relabel_with(profile, |l| match l {
        InvLabel::Pq(2, 6) => InvLabel::J,
        InvLabel::J => InvLabel::Pq(2, 6),
        other => other,
    })
}

/// All images of a profile under permutations of the three classes
/// `[I_{2,6}]`, `[J]`, `[J']` (outer automorphisms of `so(8)`).
pub fn outer_images(profile: &[(D4Label, usize)]) -> Vec<Vec<(D4Label, usize)>> {
    let three = [InvLabel::Pq(2, 6), InvLabel::J, InvLabel::JMirror];
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut out: Vec<Vec<(D4Label, usize)>> = perms
        .iter()
        .map(|p| {
            relabel_with(profile, |l| match three.iter().position(|&t| t == l) {
                Some(k) => three[p[k]],
                None => l,
            })
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Signed permutation: `e_j -> (-1)^{neg_j} e_{perm[j]}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedPerm {
    pub perm: Vec<u8>,
    pub neg: u32,
}

impl SignedPerm {
    pub fn from_mat(m: &Mat) -> Option<SignedPerm> {
        if !m.is_monomial() || m.rows() > 32 {
            return None;
        }
        let n = m.rows();
        let mut perm = vec![0u8; n];
        let mut neg = 0u32;
        for j in 0..n {
            let i = (0..n).find(|&i| !m.get(i, j).is_zero())?;
            let v = m.get(i, j);
            if *v == CycloElt::from_int(-1) {
                neg |= 1 << j;
            } else if !v.is_one() {
                return None;
            }
            perm[j] = i as u8;
        }
        Some(SignedPerm { perm, neg })
    }

    pub fn to_mat(&self) -> Mat {
        let n = self.perm.len();
        let mut m = Mat::zeros(n, n);
        for j in 0..n {
            let v = if self.neg >> j & 1 == 1 { -1 } else { 1 };
            m.set(self.perm[j] as usize, j, CycloElt::from_int(v));
        }
        m
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &SignedPerm) -> SignedPerm {
        let n = self.perm.len();
        let mut perm = vec![0u8; n];
        let mut neg = 0u32;
        for j in 0..n {
            let k = other.perm[j] as usize;
            perm[j] = self.perm[k];
            if (other.neg >> j ^ self.neg >> k) & 1 == 1 {
                neg |= 1 << j;
            }
        }
        SignedPerm { perm, neg }
    }

    pub fn inv(&self) -> SignedPerm {
        let n = self.perm.len();
        let mut perm = vec![0u8; n];
        let mut neg = 0u32;
        for j in 0..n {
            let i = self.perm[j] as usize;
            perm[i] = j as u8;
            if self.neg >> j & 1 == 1 {
                neg |= 1 << i;
            }
        }
        SignedPerm { perm, neg }
    }

    /// Representative modulo `-I`: the image of `e_1` has a positive sign.
    fn mod_sign(mut self) -> SignedPerm {
        if self.neg & 1 == 1 {
            let n = self.perm.len();
            self.neg ^= if n == 32 { u32::MAX } else { (1 << n) - 1 };
        }
        self
    }
}

/// Advance to the next permutation in lexicographic order.
fn next_permutation(p: &mut [u8]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Signed permutation matrices normalizing a group of signed permutation
/// matrices (modulo `-I` when `-I` lies in the central subgroup), reduced to a
/// list that generates the same induced automorphism group.
pub fn signed_perm_normalizer(f: &FinSubgroup) -> Result<Vec<Mat>, MatError> {
    signed_perm_normalizer_filtered(f, None)
}

/// As [`signed_perm_normalizer`], restricted to signed permutations accepted by `accept`.
pub fn signed_perm_normalizer_filtered(
    f: &FinSubgroup,
    accept: Option<&dyn Fn(&SignedPerm) -> bool>,
) -> Result<Vec<Mat>, MatError> {
    let m = f.elements()[0].as_mat().ok_or(MatError::NotMonomial)?.rows();
    if m > 10 {
        return Err(MatError::TooLarge(m));
    }
    let minus = Mat::scalar(m, CycloElt::from_int(-1));
    let projective = f.center().iter().any(|z| z.as_mat() == Some(&minus));
    let norm = |s: SignedPerm| if projective { s.mod_sign() } else { s };
    let mut index: HashMap<SignedPerm, usize> = HashMap::new();
    let mut perm_parts: HashSet<Vec<u8>> = HashSet::new();
    for (k, e) in f.elements().iter().enumerate() {
        let sp = SignedPerm::from_mat(e.as_mat().ok_or(MatError::NotMonomial)?).ok_or(MatError::NotMonomial)?;
        perm_parts.insert(sp.perm.clone());
        index.insert(norm(sp), k);
    }
    let gens: Vec<SignedPerm> = f
        .generators()
        .iter()
        .map(|g| g.as_mat().and_then(SignedPerm::from_mat).ok_or(MatError::NotMonomial))
        .collect::<Result<_, _>>()?;
    let images = |h: &SignedPerm| -> Option<Vec<usize>> {
        let hi = h.inv();
        gens.iter().map(|g| index.get(&norm(h.mul(g).mul(&hi))).copied()).collect()
    };
    let mut kept: Vec<SignedPerm> = Vec::new();
    let mut perms = Vec::new();
    let mut group = PermGroup::new(f.order(), &[]);
    let mut consider = |h: SignedPerm, imgs: Vec<usize>| {
        if let Some(p) = f.extend_hom(&imgs) {
            if !group.contains(&p) {
                perms.push(p);
                group = PermGroup::new(f.order(), &perms);
                kept.push(h);
            }
        }
    };
    // valid signs for a fixed underlying permutation form a coset of the sign
    // subgroup `s0`; testing one sign per coset suffices
    let s0: Vec<u32> = (0..(1u32 << m))
        .filter(|&neg| images(&SignedPerm { perm: (0..m as u8).collect(), neg }).is_some())
        .collect();
    let mut pivots: Vec<u32> = Vec::new();
    let mut basis: Vec<u32> = Vec::new();
    for &v in &s0 {
        let mut v = v;
        for (&b, &p) in basis.iter().zip(&pivots) {
            if v & p != 0 {
                v ^= b;
            }
        }
        if v != 0 {
            let p = 1 << v.trailing_zeros();
            for b in basis.iter_mut() {
                if *b & p != 0 {
                    *b ^= v;
                }
            }
            basis.push(v);
            pivots.push(p);
        }
    }
    let pivot_mask = pivots.iter().fold(0, |a, &p| a | p);
    // with a filter the valid signs no longer form a coset, so all are tried
    let coset_reps: Vec<u32> = match accept {
        None => (0..(1u32 << m)).filter(|s| s & pivot_mask == 0).collect(),
        Some(_) => (0..(1u32 << m)).collect(),
    };
    let accepted = |h: &SignedPerm| accept.is_none_or(|a| a(h));
    for &neg in &s0 {
        let h = SignedPerm { perm: (0..m as u8).collect(), neg };
        if accepted(&h) {
            let imgs = images(&h).expect("normalizing sign");
            consider(h, imgs);
        }
    }
    let mut sigma: Vec<u8> = (0..m as u8).collect();
    while next_permutation(&mut sigma) {
        let sp0 = SignedPerm { perm: sigma.clone(), neg: 0 };
        let si = sp0.inv();
        if !gens.iter().all(|g| perm_parts.contains(&sp0.mul(g).mul(&si).perm)) {
            continue;
        }
        for &neg in &coset_reps {
            let h = SignedPerm { perm: sigma.clone(), neg };
            if !accepted(&h) {
                continue;
            }
            if let Some(imgs) = images(&h) {
                consider(h, imgs);
                if accept.is_none() {
                    break;
                }
            }
        }
    }
    Ok(kept.iter().map(|h| h.to_mat()).collect())
}

/// `H = (1/sqrt2) [[1, 1], [1, -1]]` on each coordinate pair `(2i, 2i+1)` with bit `i` of `mask` set.
pub fn pair_hadamard(m: usize, mask: u32) -> Mat {
    let mut out = Mat::identity(m);
    let h = CycloElt::inv_sqrt2();
    for i in 0..m / 2 {
        if mask >> i & 1 == 1 {
            let (a, b) = (2 * i, 2 * i + 1);
            out.set(a, a, h.clone());
            out.set(a, b, h.clone());
            out.set(b, a, h.clone());
            out.set(b, b, -&h);
        }
    }
    out
}

/// Wrap matrices as group elements.
pub fn as_elts(ms: Vec<Mat>) -> Vec<GrpElt> {
    ms.into_iter().map(GrpElt::Mat).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fingrp::{closure, Ambient};

    fn ev(s: &str) -> Mat {
        s.parse::<MatExpr>().unwrap().eval().unwrap()
    }

    #[test]
    fn named_matrices() {
        assert_eq!(j_n(1).mul(&j_n(1)), Mat::scalar(2, CycloElt::from_int(-1)));
        assert!(jp_n(2).mul(&jp_n(2)).is_identity());
        assert_eq!(i_pq(4, 4).trace(), CycloElt::zero());
        assert_eq!(i_pq(4, 4).get(3, 3), &CycloElt::from_int(-1));
        assert_eq!(i_pq(4, 4).get(4, 4), &CycloElt::one());
    }

    #[test]
    fn expression_round_trip() {
        for s in [
            "I(4,4)",
            "diag(Jp(1),Jp(1),J(1),J(1))",
            "diag(scal(omega,3),Id(3))",
            "diag(dmat(1,omega,omega2),dmat(1,omega,omega2))",
            "diag(pmat(2,3,1),pmat(2,3,1))",
            "-J(4)*I(1,7)",
            "diag(qi(3),qi(1))",
            "rows(0,1;-1,0)",
            "cpx(dmat(i,1,-i))",
        ] {
            let e: MatExpr = s.parse().unwrap();
            let printed = e.to_string();
            let again: MatExpr = printed.parse().unwrap();
            assert_eq!(e, again, "{s}");
            assert_eq!(e.eval().unwrap(), again.eval().unwrap());
        }
        assert!("I(4)".parse::<MatExpr>().is_err());
        assert!("foo(1)".parse::<MatExpr>().is_err());
        assert!("pmat(1,1)".parse::<MatExpr>().unwrap().eval().is_err());
    }

    #[test]
    fn quaternion_units() {
        let (i, j, k) = (ev("qi(1)"), ev("qj(1)"), ev("qk(1)"));
        let minus = Mat::scalar(2, CycloElt::from_int(-1));
        assert_eq!(i.mul(&i), minus);
        assert_eq!(j.mul(&j), minus);
        assert_eq!(i.mul(&j), k);
        assert_eq!(ev("qj(3)"), j_n(3));
    }

    #[test]
    fn centralizer_dims() {
        let full = [LieFactor::So(4)];
        assert_eq!(lie_centralizer_dim(&[], &full).unwrap(), 6);
        assert_eq!(lie_centralizer_dim(&[i_pq(2, 2)], &full).unwrap(), 2);
        assert_eq!(lie_centralizer_dim(&[], &[LieFactor::Su(3), LieFactor::Sp(2)]).unwrap(), 8 + 10);
        // a torus element of SU(2) keeps a circle
        assert_eq!(lie_centralizer_dim(&[ev("dmat(i,-i)")], &[LieFactor::Su(2)]).unwrap(), 1);
        assert_eq!(lie_centralizer_dim(&[ev("qi(1)"), ev("qj(1)")], &[LieFactor::Sp(1)]).unwrap(), 0);
    }

    #[test]
    fn involution_labels() {
        assert_eq!(proj_involution_class(&i_pq(2, 6)).unwrap(), InvLabel::Pq(2, 6));
        assert_eq!(proj_involution_class(&i_pq(6, 2)).unwrap(), InvLabel::Pq(2, 6));
        assert_eq!(proj_involution_class(&i_pq(4, 4)).unwrap(), InvLabel::Pq(4, 4));
        assert_eq!(proj_involution_class(&j_n(4)).unwrap(), InvLabel::J);
        assert_eq!(proj_involution_class(&j_n(4).neg()).unwrap(), InvLabel::J);
        let mirror = i_pq(1, 7).mul(&j_n(4)).mul(&i_pq(1, 7));
        assert_eq!(proj_involution_class(&mirror).unwrap(), InvLabel::JMirror);
        assert!(proj_involution_class(&ev("diag(dmat(i,1),Id(6))")).is_err());
    }

    #[test]
    fn relabel_swaps_and_fixes() {
        let p = vec![(D4Label { order: 2, involution: Some(InvLabel::Pq(4, 4)) }, 3)];
        assert_eq!(triality_relabel(&p), p);
        let q = vec![(D4Label { order: 2, involution: Some(InvLabel::Pq(2, 6)) }, 1)];
        assert_eq!(triality_relabel(&triality_relabel(&q)), q);
    }

    #[test]
    fn signed_perm_algebra() {
        let a = SignedPerm::from_mat(&ev("diag(J(1),Jp(1),Id(4))")).unwrap();
        let b = SignedPerm::from_mat(&ev("I(3,5)*diag(Id(2),pmat(2,3,4,5,6,1))")).unwrap();
        assert_eq!(a.mul(&b).to_mat(), a.to_mat().mul(&b.to_mat()));
        assert!(a.mul(&a.inv()).to_mat().is_identity());
    }

    #[test]
    fn diagonal_group_normalizer() {
        // diagonal sign matrices in O(4) modulo -I: Weyl group S4
        let gens: Vec<GrpElt> = (1..=3).map(|k| GrpElt::Mat(i_pq(k, 4 - k))).collect();
        let z = [GrpElt::Mat(Mat::scalar(4, CycloElt::from_int(-1)))];
        let f = closure(&Ambient::matrix(4), &gens, &z, 64).unwrap();
        assert_eq!(f.order(), 8);
        let cands = as_elts(signed_perm_normalizer(&f).unwrap());
        assert_eq!(f.weyl_lower(&cands).order, 24);
        assert_eq!(f.aut_upper().unwrap(), 24);
    }
}
