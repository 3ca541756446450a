//! Octonions over `Q` with the Fano table on lines
//! `123, 145, 176, 246, 257, 347, 365` (cyclic order gives `+`).
//! `G2 = Aut(O)` acts on the imaginary part by 7x7 matrices.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::cyclo::CycloElt;
use crate::fingrp::FinSubgroup;
use crate::linalg::{Mat, Vector};
use crate::matgrp::{fixed_subspace, signed_perm_normalizer_filtered, MatError, SignedPerm};

pub const FANO_LINES: [[usize; 3]; 7] = [[1, 2, 3], [1, 4, 5], [1, 7, 6], [2, 4, 6], [2, 5, 7], [3, 4, 7], [3, 6, 5]];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OctError {
    #[error("matrix is not an octonion automorphism")]
    NotAutomorphism,
    #[error("expected a 7x7 matrix")]
    Shape,
    #[error(transparent)]
    Mat(#[from] MatError),
}

/// `e_a e_b = sign * e_c` for distinct imaginary units (`c = 0` means the real unit).
fn unit_product(a: usize, b: usize) -> (i64, usize) {
    match (a, b) {
        (0, b) => (1, b),
        (a, 0) => (1, a),
        (a, b) if a == b => (-1, 0),
        _ => {
            for l in FANO_LINES {
                for r in 0..3 {
                    if l[r] == a && l[(r + 1) % 3] == b {
                        return (1, l[(r + 2) % 3]);
                    }
                    if l[r] == b && l[(r + 1) % 3] == a {
                        return (-1, l[(r + 2) % 3]);
                    }
                }
            }
            unreachable!("every pair of points lies on a line")
        }
    }
}

/// Octonion with coordinates on `1, e1, ..., e7`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Oct(pub [CycloElt; 8]);

impl Oct {
    pub fn zero() -> Oct {
        Oct(std::array::from_fn(|_| CycloElt::zero()))
    }

    /// Basis element: `0` is the real unit, `1..=7` the imaginary units.
    pub fn unit(k: usize) -> Oct {
        let mut o = Oct::zero();
        o.0[k] = CycloElt::one();
        o
    }

    pub fn from_ints(c: [i64; 8]) -> Oct {
        Oct(c.map(CycloElt::from_int))
    }

    pub fn conj(&self) -> Oct {
        let mut o = self.clone();
        for k in 1..8 {
            o.0[k] = -&o.0[k];
        }
        o
    }

    /// Squared norm `x conj(x)`.
    pub fn norm(&self) -> CycloElt {
        self.0.iter().fold(CycloElt::zero(), |acc, c| &acc + &(c * c))
    }

    pub fn scale(&self, s: &CycloElt) -> Oct {
        Oct(std::array::from_fn(|k| &self.0[k] * s))
    }

    pub fn imag(&self) -> Vector {
        self.0[1..].to_vec()
    }

    pub fn from_imag(v: &[CycloElt]) -> Oct {
        let mut o = Oct::zero();
        o.0[1..].clone_from_slice(v);
        o
    }
}

pub fn oct_mul(a: &Oct, b: &Oct) -> Oct {
    let mut out = Oct::zero();
    for i in 0..8 {
        if a.0[i].is_zero() {
            continue;
        }
        for j in 0..8 {
            if b.0[j].is_zero() {
                continue;
            }
            let (s, k) = unit_product(i, j);
            let t = (&a.0[i] * &b.0[j]).scale_int(s);
            out.0[k] = &out.0[k] + &t;
        }
    }
    out
}

pub fn associator(a: &Oct, b: &Oct, c: &Oct) -> Oct {
    &(&(a * b) * c) - &(a * &(b * c))
}

impl Mul for &Oct {
    type Output = Oct;
    fn mul(self, o: &Oct) -> Oct {
        oct_mul(self, o)
    }
}

impl Add for &Oct {
    type Output = Oct;
    fn add(self, o: &Oct) -> Oct {
        Oct(std::array::from_fn(|k| &self.0[k] + &o.0[k]))
    }
}

impl Sub for &Oct {
    type Output = Oct;
    fn sub(self, o: &Oct) -> Oct {
        Oct(std::array::from_fn(|k| &self.0[k] - &o.0[k]))
    }
}

impl Neg for &Oct {
    type Output = Oct;
    fn neg(self) -> Oct {
        Oct(std::array::from_fn(|k| -&self.0[k]))
    }
}

impl fmt::Debug for Oct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "Oct[{}]", parts.join(", "))
    }
}

fn apply(g: &Mat, x: &Oct) -> Oct {
    let mut o = Oct::from_imag(&g.mul_vec(&x.imag()));
    o.0[0] = x.0[0].clone();
    o
}

/// `g(e_a e_b) = g(e_a) g(e_b)` for all imaginary units.
pub fn is_automorphism(g: &Mat) -> bool {
    if g.rows() != 7 || g.cols() != 7 {
        return false;
    }
    let images: Vec<Oct> = (1..8).map(|k| apply(g, &Oct::unit(k))).collect();
    (1..8).all(|a| (1..8).all(|b| apply(g, &oct_mul(&Oct::unit(a), &Oct::unit(b))) == oct_mul(&images[a - 1], &images[b - 1])))
}

fn signed_perm_is_automorphism(h: &SignedPerm) -> bool {
    let img = |k: usize| -> (i64, usize) {
        if k == 0 {
            return (1, 0);
        }
        let s = if h.neg >> (k - 1) & 1 == 1 { -1 } else { 1 };
        (s, h.perm[k - 1] as usize + 1)
    };
    (1..8).all(|a| {
        (1..8).all(|b| {
            let (s, c) = unit_product(a, b);
            let (sc, gc) = img(c);
            let ((sa, ga), (sb, gb)) = (img(a), img(b));
            let (sp, p) = unit_product(ga, gb);
            gc == p && s * sc == sa * sb * sp
        })
    })
}

/// Basis of `Der(O)` as 7x7 matrices on the imaginary part, from an exact kernel.
pub fn derivation_basis() -> Vec<Mat> {
    // unknown D_{ij} at column 7 * i + j; D e_j = sum_i D_ij e_i
    let var = |i: usize, j: usize| 7 * i + j;
    let mut rows: Vec<Vector> = Vec::new();
    for a in 1..8 {
        for b in 1..8 {
            let mut eq = vec![vec![CycloElt::zero(); 49]; 8];
            let mut add = |k: usize, v: usize, s: i64| {
                eq[k][v] = &eq[k][v] + &CycloElt::from_int(s);
            };
            // D(e_a e_b)
            let (s, c) = unit_product(a, b);
            if c != 0 {
                for i in 1..8 {
                    add(i, var(i - 1, c - 1), s);
                }
            }
            // - (D e_a) e_b - e_a (D e_b)
            for i in 1..8 {
                let (s1, k1) = unit_product(i, b);
                add(k1, var(i - 1, a - 1), -s1);
                let (s2, k2) = unit_product(a, i);
                add(k2, var(i - 1, b - 1), -s2);
            }
            rows.extend(eq);
        }
    }
    let sys = Mat::from_rows(rows);
    sys.nullspace()
        .into_iter()
        .map(|v| Mat::from_rows((0..7).map(|i| v[7 * i..7 * i + 7].to_vec()).collect()))
        .collect()
}

/// Dimension of the subalgebra of `Der(O)` fixed by the generators.
pub fn g2_fixed_dim(gens: &[Mat]) -> Result<usize, OctError> {
    for g in gens {
        if g.rows() != 7 || g.cols() != 7 {
            return Err(OctError::Shape);
        }
        if !is_automorphism(g) {
            return Err(OctError::NotAutomorphism);
        }
    }
    Ok(fixed_subspace(derivation_basis(), gens)?.len())
}

/// Diagonal sign automorphisms: for a functional `bit` on the Fano points
/// (point `k` read as a vector of `F_2^3`), `e_k -> -e_k` iff bit `bit` of `k` is set.
pub fn sign_automorphism(bit: u32) -> Mat {
    Mat::diag(&(1..8).map(|k: u32| CycloElt::from_int(if k >> bit & 1 == 1 { -1 } else { 1 })).collect::<Vec<_>>())
}

/// Signed permutation automorphisms normalizing `f`, reduced to generators of
/// the induced automorphism group.
pub fn monomial_normalizer_search(f: &FinSubgroup) -> Result<Vec<Mat>, OctError> {
    let accept: &dyn Fn(&SignedPerm) -> bool = &signed_perm_is_automorphism;
    Ok(signed_perm_normalizer_filtered(f, Some(accept))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fingrp::{closure, Ambient, GrpElt};

    #[test]
    fn table_basics() {
        let e = Oct::unit;
        assert_eq!(&e(1) * &e(1), Oct::from_ints([-1, 0, 0, 0, 0, 0, 0, 0]));
        assert_eq!(&e(1) * &e(2), e(3));
        assert_eq!(&e(2) * &e(1), -&e(3));
        assert_ne!(associator(&e(1), &e(2), &e(4)), Oct::zero());
    }

    #[test]
    fn norm_is_multiplicative() {
        let xs = [
            Oct::from_ints([1, 2, -1, 0, 3, 1, -2, 1]),
            Oct::from_ints([0, 1, 1, -3, 2, 0, 1, -1]),
            Oct::from_ints([2, 0, -1, 1, 1, -1, 0, 4]),
        ];
        for a in &xs {
            for b in &xs {
                assert_eq!((a * b).norm(), &a.norm() * &b.norm());
                // alternativity
                assert_eq!(associator(a, a, b), Oct::zero());
            }
        }
    }

    #[test]
    fn derivations() {
        let basis = derivation_basis();
        assert_eq!(basis.len(), 14);
        for d in &basis {
            assert_eq!(d.transpose(), d.neg());
        }
        let span = Mat::from_columns(&basis.iter().map(|d| d.entries().cloned().collect()).collect::<Vec<_>>());
        let r = span.rank();
        let bracket = basis[0].mul(&basis[5]).sub(&basis[5].mul(&basis[0]));
        let mut cols: Vec<Vector> = basis.iter().map(|d| d.entries().cloned().collect()).collect();
        cols.push(bracket.entries().cloned().collect());
        assert_eq!(Mat::from_columns(&cols).rank(), r);
    }

    #[test]
    fn sign_patterns() {
        for bit in 0..3 {
            assert!(is_automorphism(&sign_automorphism(bit)));
        }
        let odd = Mat::diag(&[-1, 1, 1, 1, 1, 1, 1].map(CycloElt::from_int));
        assert!(!is_automorphism(&odd));
    }

    #[test]
    fn fixed_dims_and_weyl() {
        let f1: Vec<Mat> = (0..3).map(sign_automorphism).collect();
        assert_eq!(g2_fixed_dim(&f1).unwrap(), 0);
        assert_eq!(g2_fixed_dim(&[]).unwrap(), 14);
        assert_eq!(g2_fixed_dim(&f1[..1]).unwrap(), 6);
        let gens: Vec<GrpElt> = f1.into_iter().map(GrpElt::Mat).collect();
        let f = closure(&Ambient::G2, &gens, &[], 16).unwrap();
        let cands: Vec<GrpElt> = monomial_normalizer_search(&f).unwrap().into_iter().map(GrpElt::Mat).collect();
        assert_eq!(f.weyl_lower(&cands).order, 168);
        assert_eq!(f.aut_upper().unwrap(), 168);
    }
}
