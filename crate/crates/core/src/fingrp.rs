//! Finite groups given by generators in one of the exact backends.
//!
//! A [`FinSubgroup`] stores canonical coset representatives modulo a central
//! subgroup `Z`, the right action of the generators, and a BFS spanning tree,
//! from which the full multiplication table is derived on demand.

use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::clifford::CliffElt;
use crate::cyclo::CycloElt;
use crate::linalg::Mat;
use crate::perm::{Perm, PermGroup};

pub const DEFAULT_CAP: usize = 1 << 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("group closure exceeded the cap of {0} elements")]
    CapExceeded(usize),
    #[error("central subgroup element does not commute with generator {0}")]
    NotCentral(usize),
    #[error("element does not belong to the ambient {0}")]
    WrongBackend(String),
    #[error("element is not invertible")]
    NotInvertible,
    #[error("commutator is not a sign: {0}")]
    NotASign(String),
    #[error("automorphism search needs an abelian group")]
    NotAbelian,
    #[error("automorphism search bound exceeded ({0} elements)")]
    SearchBound(usize),
    #[error("projection is not a homomorphism on this group: {0}")]
    BadProjection(String),
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum GrpElt {
    Cliff(CliffElt),
    Mat(Mat),
}

impl GrpElt {
    pub fn mul(&self, other: &GrpElt) -> GrpElt {
        match (self, other) {
            (GrpElt::Cliff(a), GrpElt::Cliff(b)) => GrpElt::Cliff(a * b),
            (GrpElt::Mat(a), GrpElt::Mat(b)) => GrpElt::Mat(a.mul(b)),
            _ => panic!("mixed backends in group product"),
        }
    }

    /// Inverse; Clifford elements may be unnormalized Lipschitz elements.
    pub fn inv(&self) -> Result<GrpElt, GroupError> {
        match self {
            GrpElt::Cliff(g) => {
                let rev = g.reverse();
                let norm = (g * &rev).as_scalar().ok_or(GroupError::NotInvertible)?;
                let inv = norm.inv().map_err(|_| GroupError::NotInvertible)?;
                Ok(GrpElt::Cliff(rev.scale(&inv)))
            }
            GrpElt::Mat(m) => {
                let adj = m.adjoint();
                if m.mul(&adj).is_identity() {
                    return Ok(GrpElt::Mat(adj));
                }
                m.inverse().map(GrpElt::Mat).ok_or(GroupError::NotInvertible)
            }
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            GrpElt::Cliff(g) => g.is_one(),
            GrpElt::Mat(m) => m.is_identity(),
        }
    }

    pub fn as_cliff(&self) -> Option<&CliffElt> {
        match self {
            GrpElt::Cliff(g) => Some(g),
            _ => None,
        }
    }

    pub fn as_mat(&self) -> Option<&Mat> {
        match self {
            GrpElt::Mat(m) => Some(m),
            _ => None,
        }
    }

    /// `Some(s)` when the element is the scalar `s` (times the identity).
    pub fn as_scalar(&self) -> Option<CycloElt> {
        match self {
            GrpElt::Cliff(g) => g.as_scalar(),
            GrpElt::Mat(m) => m.scalar_value(),
        }
    }

    pub fn conj_by(&self, g: &GrpElt) -> Result<GrpElt, GroupError> {
        Ok(g.mul(self).mul(&g.inv()?))
    }

    pub fn pow(&self, e: u32) -> GrpElt {
        let mut acc = self.identity_like();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn identity_like(&self) -> GrpElt {
        match self {
            GrpElt::Cliff(g) => GrpElt::Cliff(CliffElt::one(g.dim())),
            GrpElt::Mat(m) => GrpElt::Mat(Mat::identity(m.rows())),
        }
    }

    /// Order, searching up to `bound`.
    pub fn order(&self, bound: u32) -> Option<u32> {
        let mut acc = self.clone();
        for k in 1..=bound {
            if acc.is_identity() {
                return Some(k);
            }
            acc = acc.mul(self);
        }
        None
    }
}

impl From<CliffElt> for GrpElt {
    fn from(g: CliffElt) -> Self {
        GrpElt::Cliff(g)
    }
}

impl From<Mat> for GrpElt {
    fn from(m: Mat) -> Self {
        GrpElt::Mat(m)
    }
}

/// The ambient group, which fixes the backend and the conjugacy fingerprint.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Ambient {
    /// `Spin(n)` inside `Cl(n)`.
    Spin(u32),
    /// Block-diagonal matrices; conjugacy inside the product of the blocks'
    /// groups, so each block's characteristic polynomial is invariant.
    Matrix { blocks: Vec<usize> },
    /// `(SU(3) x SU(3))` inside `F4`; fingerprints use the 52-dimensional
    /// adjoint character `(8,1) + (1,8) + (3,6) + (3*,6*)`.
    F4A2A2,
    /// 7x7 automorphisms of the octonions (`G2`).
    G2,
}

impl Ambient {
    pub fn identity(&self) -> GrpElt {
        match self {
            Ambient::Spin(n) => GrpElt::Cliff(CliffElt::one(*n)),
            Ambient::Matrix { blocks } => GrpElt::Mat(Mat::identity(blocks.iter().sum())),
            Ambient::F4A2A2 => GrpElt::Mat(Mat::identity(6)),
            Ambient::G2 => GrpElt::Mat(Mat::identity(7)),
        }
    }

    pub fn matrix(size: usize) -> Self {
        Ambient::Matrix { blocks: vec![size] }
    }

    fn check(&self, g: &GrpElt) -> Result<(), GroupError> {
        let ok = match (self, g) {
            (Ambient::Spin(n), GrpElt::Cliff(x)) => x.dim() == *n,
            (Ambient::Matrix { blocks }, GrpElt::Mat(m)) => m.rows() == blocks.iter().sum::<usize>() && m.is_square(),
            (Ambient::F4A2A2, GrpElt::Mat(m)) => m.rows() == 6 && m.is_square(),
            (Ambient::G2, GrpElt::Mat(m)) => m.rows() == 7 && m.is_square(),
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(GroupError::WrongBackend(format!("{self:?}")))
        }
    }

    /// Conjugation-invariant data of a single (lifted) element.
    pub fn lift_invariants(&self, g: &GrpElt) -> Vec<CycloElt> {
        let order = g.order(4096).expect("element of finite order");
        let mut out = vec![CycloElt::from_int(order as i64)];
        match (self, g) {
            (Ambient::Spin(_), GrpElt::Cliff(x)) => {
                let rep = x.vector_rep().expect("spin element");
                out.extend(rep.charpoly());
                let (a, b) = x.scalar_invariants();
                out.push(a);
                out.extend(b);
            }
            (Ambient::Matrix { blocks }, GrpElt::Mat(m)) => {
                let mut r0 = 0;
                for &b in blocks {
                    out.extend(m.submatrix(r0, r0, b, b).charpoly());
                    r0 += b;
                }
            }
            (Ambient::F4A2A2, GrpElt::Mat(m)) => {
                let mut p = m.clone();
                for _ in 0..order {
                    out.push(f4_adjoint_character(&p));
                    p = p.mul(m);
                }
            }
            (Ambient::G2, GrpElt::Mat(m)) => out.extend(m.charpoly()),
            _ => panic!("backend mismatch"),
        }
        out
    }
}

/// Character of the adjoint representation of `F4` on `(a, b) in SU(3) x SU(3)`.
pub fn f4_adjoint_character(m: &Mat) -> CycloElt {
    let a = m.submatrix(0, 0, 3, 3);
    let b = m.submatrix(3, 3, 3, 3);
    let (ta, tb) = (a.trace(), b.trace());
    let two = CycloElt::from_int(2);
    let abs2 = |t: &CycloElt| t * &t.conj();
    let adj = &(&abs2(&ta) + &abs2(&tb)) - &two;
    // Sym^2 character: (tr(b)^2 + tr(b^2)) / 2
    let sym2 = (&(&tb * &tb) + &b.mul(&b).trace()).mul_ratio(1, 2);
    let cross = &ta * &sym2;
    &adj + &(&cross + &cross.conj())
}

/// Conjugacy fingerprint of an element of a (possibly quotient) group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Fingerprint {
    /// Order in the quotient group.
    pub order: u32,
    /// Sorted invariants of all lifts modulo the central subgroup.
    pub lifts: Vec<Vec<CycloElt>>,
}

#[derive(Debug)]
pub struct FinSubgroup {
    ambient: Ambient,
    gens: Vec<GrpElt>,
    center: Vec<GrpElt>,
    elements: Vec<GrpElt>,
    index: HashMap<GrpElt, u32>,
    right: Vec<Vec<u32>>,
    parent: Vec<(u32, u32)>,
    table: OnceLock<Vec<u32>>,
    fingerprints: OnceLock<Vec<Fingerprint>>,
}

impl Clone for FinSubgroup {
    fn clone(&self) -> Self {
        FinSubgroup {
            ambient: self.ambient.clone(),
            gens: self.gens.clone(),
            center: self.center.clone(),
            elements: self.elements.clone(),
            index: self.index.clone(),
            right: self.right.clone(),
            parent: self.parent.clone(),
            table: self.table.clone(),
            fingerprints: self.fingerprints.clone(),
        }
    }
}

/// Close a set of elements under multiplication (no quotient).
fn close_plain(identity: GrpElt, gens: &[GrpElt], cap: usize) -> Result<Vec<GrpElt>, GroupError> {
    let mut seen: HashMap<GrpElt, ()> = HashMap::new();
    let mut out = vec![identity.clone()];
    seen.insert(identity, ());
    let mut i = 0;
    while i < out.len() {
        for g in gens {
            let y = out[i].mul(g);
            if !seen.contains_key(&y) {
                if out.len() >= cap {
                    return Err(GroupError::CapExceeded(cap));
                }
                seen.insert(y.clone(), ());
                out.push(y);
            }
        }
        i += 1;
    }
    Ok(out)
}

/// Breadth-first closure of `gens` modulo the central subgroup generated by `z_gens`.
pub fn closure(ambient: &Ambient, gens: &[GrpElt], z_gens: &[GrpElt], cap: usize) -> Result<FinSubgroup, GroupError> {
    FinSubgroup::generate(ambient.clone(), gens.to_vec(), z_gens, cap)
}

impl FinSubgroup {
    pub fn generate(ambient: Ambient, gens: Vec<GrpElt>, z_gens: &[GrpElt], cap: usize) -> Result<Self, GroupError> {
        assert!(cap >= 1);
        for g in gens.iter().chain(z_gens) {
            ambient.check(g)?;
        }
        for z in z_gens {
            for (k, g) in gens.iter().enumerate() {
                if z.mul(g) != g.mul(z) {
                    return Err(GroupError::NotCentral(k));
                }
            }
        }
        let identity = ambient.identity();
        let mut center = close_plain(identity.clone(), z_gens, 64)?;
        center.sort();
        let canon = |x: GrpElt| -> GrpElt {
            if center.len() == 1 {
                return x;
            }
            center.iter().map(|z| z.mul(&x)).min().unwrap()
        };
        let mut elements = vec![canon(identity)];
        let mut index: HashMap<GrpElt, u32> = HashMap::new();
        index.insert(elements[0].clone(), 0);
        let mut right: Vec<Vec<u32>> = Vec::new();
        let mut parent = vec![(0u32, 0u32)];
        let mut i = 0;
        while i < elements.len() {
            let mut row = Vec::with_capacity(gens.len());
            for (k, g) in gens.iter().enumerate() {
                let y = canon(elements[i].mul(g));
                let idx = match index.get(&y) {
                    Some(&j) => j,
                    None => {
                        if elements.len() >= cap {
                            return Err(GroupError::CapExceeded(cap));
                        }
                        let j = elements.len() as u32;
                        index.insert(y.clone(), j);
                        elements.push(y);
                        parent.push((i as u32, k as u32));
                        j
                    }
                };
                row.push(idx);
            }
            right.push(row);
            i += 1;
        }
        Ok(FinSubgroup {
            ambient,
            gens,
            center,
            elements,
            index,
            right,
            parent,
            table: OnceLock::new(),
            fingerprints: OnceLock::new(),
        })
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn generators(&self) -> &[GrpElt] {
        &self.gens
    }

    /// Elements of the central subgroup `Z`.
    pub fn center(&self) -> &[GrpElt] {
        &self.center
    }

    pub fn elements(&self) -> &[GrpElt] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Order of the preimage in the ambient group (`|F| * |Z|`).
    pub fn lifted_order(&self) -> usize {
        self.elements.len() * self.center.len()
    }

    pub fn canonical(&self, x: &GrpElt) -> GrpElt {
        if self.center.len() == 1 {
            return x.clone();
        }
        self.center.iter().map(|z| z.mul(x)).min().unwrap()
    }

    /// Index of the coset of `x`, if it lies in the group.
    pub fn index_of(&self, x: &GrpElt) -> Option<usize> {
        self.index.get(&self.canonical(x)).map(|&i| i as usize)
    }

    /// Index of the `k`-th generator's coset.
    pub fn generator_index(&self, k: usize) -> usize {
        self.right[0][k] as usize
    }

    fn table(&self) -> &[u32] {
        self.table.get_or_init(|| {
            let n = self.elements.len();
            let mut t = vec![0u32; n * n];
            for x in 0..n {
                t[x * n] = x as u32;
                for y in 1..n {
                    let (p, k) = self.parent[y];
                    let xp = t[x * n + p as usize];
                    t[x * n + y] = self.right[xp as usize][k as usize];
                }
            }
            t
        })
    }

    /// Index of the product of the elements with indices `x` and `y`.
    pub fn mul_idx(&self, x: usize, y: usize) -> usize {
        self.table()[x * self.elements.len() + y] as usize
    }

    pub fn inv_idx(&self, x: usize) -> usize {
        (0..self.order()).find(|&y| self.mul_idx(x, y) == 0).expect("group inverse")
    }

    pub fn pow_idx(&self, x: usize, e: u32) -> usize {
        (0..e).fold(0, |acc, _| self.mul_idx(acc, x))
    }

    pub fn elem_order(&self, x: usize) -> u32 {
        let mut acc = x;
        let mut k = 1;
        while acc != 0 {
            acc = self.mul_idx(acc, x);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> u32 {
        (0..self.order()).map(|x| self.elem_order(x)).fold(1, lcm)
    }

    pub fn is_abelian(&self) -> bool {
        let k = self.gens.len();
        (0..k).all(|a| {
            (a + 1..k).all(|b| {
                let (x, y) = (self.generator_index(a), self.generator_index(b));
                self.mul_idx(x, y) == self.mul_idx(y, x)
            })
        })
    }

    /// Number of elements with `x^2 = 1` (the identity included).
    pub fn count_square_roots_of_one(&self) -> usize {
        (0..self.order()).filter(|&x| self.mul_idx(x, x) == 0).count()
    }

    pub fn fingerprints(&self) -> &[Fingerprint] {
        self.fingerprints.get_or_init(|| {
            let orders: Vec<u32> = (0..self.order()).map(|x| self.elem_order(x)).collect();
            self.elements
                .par_iter()
                .zip(orders.par_iter())
                .map(|(x, &order)| {
                    let mut lifts: Vec<Vec<CycloElt>> =
                        self.center.iter().map(|z| self.ambient.lift_invariants(&z.mul(x))).collect();
                    lifts.sort();
                    Fingerprint { order, lifts }
                })
                .collect()
        })
    }

    /// Class id per element: equal ids iff equal fingerprints. Ids follow first appearance.
    pub fn classes(&self) -> Vec<usize> {
        let mut ids: HashMap<&Fingerprint, usize> = HashMap::new();
        self.fingerprints()
            .iter()
            .map(|f| {
                let next = ids.len();
                *ids.entry(f).or_insert(next)
            })
            .collect()
    }

    /// Multiset of fingerprints, as sorted `(fingerprint, multiplicity)` pairs.
    pub fn profile(&self) -> Vec<(Fingerprint, usize)> {
        let mut counts: BTreeMap<Fingerprint, usize> = BTreeMap::new();
        for f in self.fingerprints() {
            *counts.entry(f.clone()).or_default() += 1;
        }
        counts.into_iter().collect()
    }

    /// The subgroup generated by the elements with the given indices.
    pub fn subgroup(&self, idx: &[usize]) -> FinSubgroup {
        let gens: Vec<GrpElt> = idx.iter().map(|&i| self.elements[i].clone()).collect();
        let z: Vec<GrpElt> = self.center.clone();
        FinSubgroup::generate(self.ambient.clone(), gens, &z, self.order().max(1)).expect("subgroup of a finite group")
    }

    /// Subgroup generated by all squares.
    pub fn squares_subgroup(&self) -> FinSubgroup {
        let mut sq: Vec<usize> = (0..self.order()).map(|x| self.mul_idx(x, x)).filter(|&s| s != 0).collect();
        sq.sort_unstable();
        sq.dedup();
        self.subgroup(&sq)
    }

    /// Indices of elements of the subgroup generated by `idx`, as a sorted list.
    pub fn span(&self, idx: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut list = vec![0];
        let mut i = 0;
        while i < list.len() {
            for &g in idx {
                let y = self.mul_idx(list[i], g);
                if !seen[y] {
                    seen[y] = true;
                    list.push(y);
                }
            }
            i += 1;
        }
        list.sort_unstable();
        list
    }

    /// Permutation of element indices induced by `x -> g x g^-1`, if `g` normalizes the group.
    pub fn conjugation_perm(&self, g: &GrpElt) -> Option<Perm> {
        let g = self.admissible_conjugator(g)?;
        let ginv = g.inv().ok()?;
        let images: Vec<usize> = self
            .gens
            .iter()
            .map(|x| self.index_of(&g.mul(x).mul(&ginv)))
            .collect::<Option<Vec<_>>>()?;
        self.extend_hom(&images)
    }

    /// Extend generator images (as element indices) to a map on all elements,
    /// returning it when it is a bijection.
    pub fn extend_hom(&self, images: &[usize]) -> Option<Perm> {
        let n = self.order();
        let mut phi = vec![0u32; n];
        for y in 1..n {
            let (p, k) = self.parent[y];
            phi[y] = self.mul_idx(phi[p as usize] as usize, images[k as usize]) as u32;
        }
        let mut hit = vec![false; n];
        for &v in &phi {
            if std::mem::replace(&mut hit[v as usize], true) {
                return None;
            }
        }
        Some(phi)
    }

    /// Spin conjugators must be even for even `n`; odd ones are multiplied by
    /// the central volume element when `n` is odd.
    fn admissible_conjugator(&self, g: &GrpElt) -> Option<GrpElt> {
        self.ambient.check(g).ok()?;
        match (&self.ambient, g) {
            (Ambient::Spin(n), GrpElt::Cliff(x)) => {
                if x.is_even() {
                    Some(g.clone())
                } else if x.is_odd() && n % 2 == 1 {
                    Some(GrpElt::Cliff(x * &CliffElt::volume(*n)))
                } else {
                    None
                }
            }
            _ => Some(g.clone()),
        }
    }

    /// Order of the group of automorphisms induced by those candidates that normalize the group.
    pub fn weyl_lower(&self, candidates: &[GrpElt]) -> WeylLower {
        let perms: Vec<Option<Perm>> = candidates.par_iter().map(|g| self.conjugation_perm(g)).collect();
        let normalizing = perms.iter().filter(|p| p.is_some()).count();
        let perms: Vec<Perm> = perms.into_iter().flatten().collect();
        WeylLower {
            order: PermGroup::new(self.order(), &perms).order(),
            normalizing,
            skipped: candidates.len() - normalizing,
        }
    }

    /// Group of automorphisms induced by the given element permutations.
    pub fn induced_group(&self, perms: &[Perm]) -> PermGroup {
        PermGroup::new(self.order(), perms)
    }

    /// Order of the group of fingerprint-preserving automorphisms.
    pub fn aut_upper(&self) -> Result<u128, GroupError> {
        Ok(self.aut_search()?.order)
    }

    pub fn aut_search(&self) -> Result<AutSearch, GroupError> {
        if self.order() > DEFAULT_CAP {
            return Err(GroupError::SearchBound(self.order()));
        }
        if !self.is_abelian() {
            return Err(GroupError::NotAbelian);
        }
        let classes = self.classes();
        Ok(abelian_automorphisms(self, &classes))
    }

    /// Commutator sign `x y x^-1 y^-1` for lifts in the ambient group.
    pub fn pairing_m(x: &GrpElt, y: &GrpElt) -> Result<i8, GroupError> {
        pairing_m(x, y)
    }
}

fn lcm(a: u32, b: u32) -> u32 {
    fn gcd(a: u32, b: u32) -> u32 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeylLower {
    pub order: u128,
    pub normalizing: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone)]
pub struct AutSearch {
    pub order: u128,
    /// Orbit lengths along the generating sequence.
    pub orbit_lengths: Vec<usize>,
    /// Automorphisms (as element permutations) generating the whole group.
    pub generators: Vec<Perm>,
}

/// A diagonal block of a block-diagonal matrix group: `(offset, size)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Projection {
    pub offset: usize,
    pub size: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Consistent,
    Contradiction,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    pub verdict: Verdict,
    /// Per component: `(|image|, rank of image / ker m)`.
    pub components: Vec<(usize, u32)>,
}

/// Rank of `S / ker m` for each block image `S` (taken modulo the block's
/// `+-I`). For an abelian group modulo the diagonal `-I` these ranks agree;
/// differing ranks rule the configuration out.
pub fn pairing_rank_obstruction(f: &FinSubgroup, projections: &[Projection]) -> Result<ObstructionReport, GroupError> {
    let mut components = Vec::new();
    for pr in projections {
        let block = |g: &GrpElt| -> Result<Mat, GroupError> {
            let m = g.as_mat().ok_or_else(|| GroupError::BadProjection("not a matrix group".into()))?;
            let end = pr.offset + pr.size;
            if end > m.rows() {
                return Err(GroupError::BadProjection(format!("block {}..{end} outside {}", pr.offset, m.rows())));
            }
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    let inside_i = (pr.offset..end).contains(&i);
                    let inside_j = (pr.offset..end).contains(&j);
                    if inside_i != inside_j && !m.get(i, j).is_zero() {
                        return Err(GroupError::BadProjection("generator does not preserve the block".into()));
                    }
                }
            }
            Ok(m.submatrix(pr.offset, pr.offset, pr.size, pr.size))
        };
        for z in f.center() {
            let b = block(z)?;
            let ok = b.scalar_value().is_some_and(|s| s.is_one() || s == CycloElt::from_int(-1));
            if !ok {
                return Err(GroupError::BadProjection("central subgroup does not map into +-I".into()));
            }
        }
        let gens: Vec<GrpElt> = f.generators().iter().map(|g| block(g).map(GrpElt::Mat)).collect::<Result<_, _>>()?;
        let minus = GrpElt::Mat(Mat::scalar(pr.size, CycloElt::from_int(-1)));
        let img = FinSubgroup::generate(Ambient::matrix(pr.size), gens.clone(), &[minus], DEFAULT_CAP)?;
        let mut kernel = 0;
        for x in img.elements() {
            let mut central = true;
            for g in &gens {
                if pairing_m(x, g)? != 1 {
                    central = false;
                    break;
                }
            }
            if central {
                kernel += 1;
            }
        }
        let quotient = img.order() / kernel;
        if !quotient.is_power_of_two() || img.order() % kernel != 0 {
            return Err(GroupError::BadProjection(format!("index {}/{kernel} is not a power of two", img.order())));
        }
        components.push((img.order(), quotient.trailing_zeros()));
    }
    let verdict = if components.windows(2).all(|w| w[0].1 == w[1].1) { Verdict::Consistent } else { Verdict::Contradiction };
    Ok(ObstructionReport { verdict, components })
}

/// `x y x^-1 y^-1` as a sign.
pub fn pairing_m(x: &GrpElt, y: &GrpElt) -> Result<i8, GroupError> {
    let c = x.mul(y).mul(&x.inv()?).mul(&y.inv()?);
    let s = c.as_scalar().ok_or_else(|| GroupError::NotASign(format!("{c:?}")))?;
    if s.is_one() {
        Ok(1)
    } else if s == CycloElt::from_int(-1) {
        Ok(-1)
    } else {
        Err(GroupError::NotASign(s.to_string()))
    }
}

/// Abstract automorphism interface used by the search: a finite abelian group
/// with element colouring.
pub trait ColouredGroup: Sync {
    fn size(&self) -> usize;
    fn op(&self, x: usize, y: usize) -> usize;
}

impl ColouredGroup for FinSubgroup {
    fn size(&self) -> usize {
        self.order()
    }
    fn op(&self, x: usize, y: usize) -> usize {
        self.mul_idx(x, y)
    }
}

struct Level {
    gen: usize,
    /// Smallest `m > 0` with `gen^m` in the previous subgroup.
    rel: usize,
    /// Elements of the previous subgroup, in a fixed order.
    prev: Vec<usize>,
}

/// Colour-preserving automorphisms of a finite abelian group: orbit lengths of
/// a stabilizer chain along an irredundant generating sequence.
pub fn abelian_automorphisms<G: ColouredGroup>(g: &G, colour: &[usize]) -> AutSearch {
    let n = g.size();
    let pow = |x: usize, e: usize| (0..e).fold(0, |acc, _| g.op(acc, x));
    let order_of = |x: usize| {
        let mut k = 1;
        let mut acc = x;
        while acc != 0 {
            acc = g.op(acc, x);
            k += 1;
        }
        k
    };
    let orders: Vec<usize> = (0..n).map(order_of).collect();
    // irredundant generating sequence, largest orders first
    let mut in_h = vec![false; n];
    in_h[0] = true;
    let mut h_list = vec![0usize];
    let mut levels: Vec<Level> = Vec::new();
    while h_list.len() < n {
        let b = (0..n).filter(|&x| !in_h[x]).max_by_key(|&x| (orders[x], std::cmp::Reverse(x))).unwrap();
        let mut m = 1;
        while !in_h[pow(b, m)] {
            m += 1;
        }
        let prev = h_list.clone();
        let mut new = Vec::new();
        for k in 1..m {
            let bk = pow(b, k);
            for &h in &prev {
                new.push(g.op(h, bk));
            }
        }
        for &x in &new {
            in_h[x] = true;
        }
        h_list.extend(new);
        levels.push(Level { gen: b, rel: m, prev });
    }

    struct Ctx<'a, G: ColouredGroup> {
        g: &'a G,
        colour: &'a [usize],
        orders: &'a [usize],
        levels: &'a [Level],
    }

    impl<G: ColouredGroup> Ctx<'_, G> {
        fn pow(&self, x: usize, e: usize) -> usize {
            (0..e).fold(0, |acc, _| self.g.op(acc, x))
        }

        /// Try `phi(gen_j) = y`; on success returns the newly assigned elements.
        fn extend(&self, phi: &mut [usize], used: &mut [bool], j: usize, y: usize) -> Option<Vec<usize>> {
            let lv = &self.levels[j];
            let b = lv.gen;
            if self.colour[y] != self.colour[b] || self.orders[y] != self.orders[b] {
                return None;
            }
            let bm = self.pow(b, lv.rel);
            if self.pow(y, lv.rel) != phi[bm] {
                return None;
            }
            let mut assigned = Vec::new();
            let mut ok = true;
            'outer: for k in 1..lv.rel {
                let (bk, yk) = (self.pow(b, k), self.pow(y, k));
                for &h in &lv.prev {
                    let x = self.g.op(h, bk);
                    let img = self.g.op(phi[h], yk);
                    if used[img] || self.colour[img] != self.colour[x] {
                        ok = false;
                        break 'outer;
                    }
                    phi[x] = img;
                    used[img] = true;
                    assigned.push(x);
                }
            }
            if !ok {
                for &x in &assigned {
                    used[phi[x]] = false;
                    phi[x] = usize::MAX;
                }
                return None;
            }
            Some(assigned)
        }

        fn undo(&self, phi: &mut [usize], used: &mut [bool], assigned: &[usize]) {
            for &x in assigned {
                used[phi[x]] = false;
                phi[x] = usize::MAX;
            }
        }

        fn complete(&self, phi: &mut Vec<usize>, used: &mut Vec<bool>, j: usize) -> bool {
            if j == self.levels.len() {
                return true;
            }
            for y in 0..phi.len() {
                if let Some(a) = self.extend(phi, used, j, y) {
                    if self.complete(phi, used, j + 1) {
                        return true;
                    }
                    self.undo(phi, used, &a);
                }
            }
            false
        }
    }

    let ctx = Ctx { g, colour, orders: &orders, levels: &levels };
    let mut orbit_lengths = Vec::new();
    let mut generators = Vec::new();
    let mut order: u128 = 1;
    for j in 0..levels.len() {
        // pointwise stabilizer of gen_0..gen_{j-1}: identity on the previous subgroup
        let base_phi = {
            let mut phi = vec![usize::MAX; n];
            let mut used = vec![false; n];
            for &h in &levels[j].prev {
                phi[h] = h;
                used[h] = true;
            }
            (phi, used)
        };
        let found: Vec<Option<Vec<usize>>> = (0..n)
            .into_par_iter()
            .map(|y| {
                let (mut phi, mut used) = base_phi.clone();
                ctx.extend(&mut phi, &mut used, j, y)?;
                ctx.complete(&mut phi, &mut used, j + 1).then_some(phi)
            })
            .collect();
        let b = levels[j].gen;
        let mut len = 0;
        for (y, f) in found.into_iter().enumerate() {
            if let Some(phi) = f {
                len += 1;
                if y != b {
                    generators.push(phi.into_iter().map(|v| v as u32).collect());
                }
            }
        }
        orbit_lengths.push(len);
        order *= len as u128;
    }
    AutSearch { order, orbit_lengths, generators }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::Word;

    fn spin(n: u32, words: &[&str]) -> Vec<GrpElt> {
        words.iter().map(|w| GrpElt::Cliff(w.parse::<Word>().unwrap().eval(n).unwrap())).collect()
    }

    fn f7() -> FinSubgroup {
        closure(&Ambient::Spin(7), &spin(7, &["-1", "e1e2e3e4", "e1e2e5e6", "e1e3e5e7"]), &[], DEFAULT_CAP).unwrap()
    }

    #[test]
    fn small_closures() {
        let g = closure(&Ambient::Spin(4), &spin(4, &["e1e2"]), &[], 16).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(f7().order(), 16);
        assert!(f7().is_abelian());
        let na = closure(&Ambient::Spin(3), &spin(3, &["e1e2", "e2e3"]), &[], 64).unwrap();
        assert!(!na.is_abelian());
        assert!(matches!(
            closure(&Ambient::Spin(3), &spin(3, &["r(1,2)", "rot(1,3,1)"]), &[], 100),
            Err(GroupError::CapExceeded(100))
        ));
    }

    #[test]
    fn f7_profile_and_aut() {
        let f = f7();
        let prof = f.profile();
        let counts: Vec<usize> = prof.iter().map(|(_, c)| *c).collect();
        assert_eq!(counts.iter().sum::<usize>(), 16);
        assert!(counts.contains(&14));
        assert_eq!(prof.len(), 3);
        assert_eq!(f.aut_upper().unwrap(), 1344);
    }

    #[test]
    fn aut_generators_generate() {
        let f = f7();
        let s = f.aut_search().unwrap();
        assert_eq!(PermGroup::new(f.order(), &s.generators).order(), s.order);
    }

    #[test]
    fn quotient_by_volume_element() {
        let n = 12;
        let c = GrpElt::Cliff(CliffElt::volume(n));
        let g = closure(&Ambient::Spin(n), &spin(n, &["e1e2e3e4e5e6"]), &[c], 64).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.lifted_order(), 8);
    }

    #[test]
    fn pairing_signs() {
        let e = spin(6, &["e1e2e3e4", "e1e2e5e6", "e1e2", "e2e3"]);
        assert_eq!(pairing_m(&e[0], &e[1]).unwrap(), 1);
        assert_eq!(pairing_m(&e[2], &e[3]).unwrap(), -1);
        let r = spin(3, &["r(1,2)", "r(2,3)"]);
        assert!(pairing_m(&r[0], &r[1]).is_err());
    }

    fn mat(s: &str) -> GrpElt {
        GrpElt::Mat(s.parse::<crate::matgrp::MatExpr>().unwrap().eval().unwrap())
    }

    #[test]
    fn obstruction_verdicts() {
        let z = [mat("scal(-1,8)")];
        let blocks = [Projection { offset: 0, size: 2 }, Projection { offset: 2, size: 2 }, Projection { offset: 4, size: 4 }];
        let e = ["Jp(2)", "I(2,2)", "diag(Jp(1),Jp(1))", "diag(I(1,1),I(1,1))"];
        let spin10: Vec<GrpElt> = [
            format!("diag(qi(1),qi(1),{})", e[0]),
            format!("diag(qj(1),qj(1),{})", e[1]),
            format!("diag(Id(2),Id(2),{})", e[2]),
            format!("diag(Id(2),Id(2),{})", e[3]),
        ]
        .iter()
        .map(|s| mat(s))
        .collect();
        let f = closure(&Ambient::matrix(8), &spin10, &z, DEFAULT_CAP).unwrap();
        let r = pairing_rank_obstruction(&f, &blocks).unwrap();
        assert_eq!(r.verdict, Verdict::Contradiction);
        assert_eq!(r.components.iter().map(|c| c.1).collect::<Vec<_>>(), vec![2, 2, 4]);
        let ok = closure(&Ambient::matrix(8), &spin10[..2], &z, DEFAULT_CAP).unwrap();
        assert_eq!(pairing_rank_obstruction(&ok, &blocks).unwrap().verdict, Verdict::Consistent);
        let bad = [Projection { offset: 1, size: 2 }];
        assert!(pairing_rank_obstruction(&ok, &bad).is_err());
    }

    #[test]
    fn trivial_group() {
        let g = closure(&Ambient::Spin(5), &[], &[], 4).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.profile().len(), 1);
        assert_eq!(g.aut_upper().unwrap(), 1);
        assert_eq!(g.weyl_lower(&[]).order, 1);
    }

    #[test]
    fn odd_conjugators_in_odd_dimension() {
        let f = f7();
        let e1 = GrpElt::Cliff(CliffElt::blade_of(7, &[1]));
        assert!(f.conjugation_perm(&e1).is_some());
        let g = closure(&Ambient::Spin(8), &spin(8, &["e1e2e3e4"]), &[], 8).unwrap();
        assert!(g.conjugation_perm(&GrpElt::Cliff(CliffElt::blade_of(8, &[1]))).is_none());
    }
}
