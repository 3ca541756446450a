//! Named subgroups as plain-text data.
//!
//! One entry per block:
//!
//! ```text
//! entry spin.F7
//!   ambient spin 7
//!   gen -1
//!   gen e1 e2 e3 e4
//!   search code
//!   claim verify weyl 1344
//! end
//! ```
//!
//! Directives, in printing order: `ambient`, `center`, `gen`, `named <name>`,
//! `lie`, `project <offset> <size>`, `weyl` (a Weyl candidate), `search`
//! (`code`, `signed-perm`, `hadamard`, `octonion`), `claim <scope> <key> <value>`.
//! Elements use the Clifford word grammar in `spin` ambients and the matrix
//! expression grammar otherwise. Entries are separated by one blank line.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::clifford::{ad_fixed_dim, CliffError, Word};
use crate::codes::{self, BinCode, CodeError};
use crate::fingrp::{closure, Ambient, FinSubgroup, GroupError, GrpElt, Projection, WeylLower};
use crate::matgrp::{lie_centralizer_dim, pair_hadamard, signed_perm_normalizer, LieFactor, MatError, MatExpr};
use crate::octonion::{g2_fixed_dim, monomial_normalizer_search, OctError};

const SHIPPED: &str = include_str!("../data/catalog.txt");

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown catalog id {0:?}")]
    UnknownId(String),
    #[error("no family member for n = {0} (supported: 16, 20, 22, 24, 26)")]
    UnsupportedFamily(usize),
    #[error("entry has no element named {0:?}")]
    UnknownName(String),
    #[error("entry does not define {0}")]
    Missing(&'static str),
    #[error(transparent)]
    Cliff(#[from] CliffError),
    #[error(transparent)]
    Mat(#[from] MatError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Oct(#[from] OctError),
    #[error(transparent)]
    Code(#[from] CodeError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Backend {
    Spin(u32),
    Matrix(Vec<usize>),
    F4A2A2,
    G2,
}

impl Backend {
    pub fn ambient(&self) -> Ambient {
        match self {
            Backend::Spin(n) => Ambient::Spin(*n),
            Backend::Matrix(b) => Ambient::Matrix { blocks: b.clone() },
            Backend::F4A2A2 => Ambient::F4A2A2,
            Backend::G2 => Ambient::G2,
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Backend::Spin(n) => write!(f, "spin {n}"),
            Backend::Matrix(b) => {
                let parts: Vec<String> = b.iter().map(|x| x.to_string()).collect();
                write!(f, "matrix {}", parts.join(","))
            }
            Backend::F4A2A2 => write!(f, "f4-a2a2"),
            Backend::G2 => write!(f, "g2"),
        }
    }
}

impl FromStr for Backend {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let mut it = s.split_whitespace();
        let b = match (it.next(), it.next()) {
            (Some("spin"), Some(n)) => Backend::Spin(n.parse().map_err(|_| format!("bad dimension {n:?}"))?),
            (Some("matrix"), Some(b)) => {
                let blocks: Result<Vec<usize>, _> = b.split(',').map(str::parse).collect();
                Backend::Matrix(blocks.map_err(|_| format!("bad blocks {b:?}"))?)
            }
            (Some("f4-a2a2"), None) => Backend::F4A2A2,
            (Some("g2"), None) => Backend::G2,
            _ => return Err(format!("unknown ambient {s:?}")),
        };
        if it.next().is_some() {
            return Err(format!("trailing text in ambient {s:?}"));
        }
        Ok(b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Expr {
    Word(Word),
    Mat(MatExpr),
}

/// An element in the entry's grammar; the source text is kept verbatim.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element {
    text: String,
    expr: Expr,
}

impl Element {
    pub fn parse(backend: &Backend, text: &str) -> Result<Element, String> {
        let text = text.trim();
        let expr = match backend {
            Backend::Spin(_) => Expr::Word(text.parse().map_err(|e: CliffError| e.to_string())?),
            _ => Expr::Mat(text.parse().map_err(|e: MatError| e.to_string())?),
        };
        Ok(Element { text: text.to_string(), expr })
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    pub fn eval(&self, backend: &Backend) -> Result<GrpElt, CatalogError> {
        Ok(match (&self.expr, backend) {
            (Expr::Word(w), Backend::Spin(n)) => GrpElt::Cliff(w.eval(*n)?),
            (Expr::Mat(m), _) => GrpElt::Mat(m.eval()?),
            _ => return Err(CatalogError::Missing("an element of the right backend")),
        })
    }
}

impl Serialize for Element {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.text)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Scope {
    Verify,
    Metadata,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub scope: Scope,
    pub key: String,
    pub value: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WeylSearch {
    /// Lifts of code automorphisms plus `e1 e_j` (Clifford ambients).
    Code,
    /// Signed permutation matrices normalizing the group.
    SignedPerm,
    /// Block Hadamard rotations on coordinate pairs.
    Hadamard,
    /// Signed permutations that are octonion automorphisms.
    Octonion,
}

impl WeylSearch {
    fn name(self) -> &'static str {
        match self {
            WeylSearch::Code => "code",
            WeylSearch::SignedPerm => "signed-perm",
            WeylSearch::Hadamard => "hadamard",
            WeylSearch::Octonion => "octonion",
        }
    }
}

fn lie_text(l: &LieFactor) -> String {
    match l {
        LieFactor::So(m) => format!("so({m})"),
        LieFactor::Su(m) => format!("su({m})"),
        LieFactor::Sp(m) => format!("sp({m})"),
    }
}

fn parse_lie(s: &str) -> Result<LieFactor, String> {
    let bad = || format!("bad Lie factor {s:?}");
    let (kind, rest) = s.split_once('(').ok_or_else(bad)?;
    let m: usize = rest.strip_suffix(')').ok_or_else(bad)?.parse().map_err(|_| bad())?;
    match kind {
        "so" => Ok(LieFactor::So(m)),
        "su" => Ok(LieFactor::Su(m)),
        "sp" => Ok(LieFactor::Sp(m)),
        _ => Err(bad()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub id: String,
    pub backend: Backend,
    pub center: Vec<Element>,
    pub gens: Vec<Element>,
    pub named: Vec<(String, Element)>,
    #[serde(serialize_with = "ser_lie")]
    pub lie: Vec<LieFactor>,
    pub projections: Vec<Projection>,
    pub weyl: Vec<Element>,
    pub search: Vec<WeylSearch>,
    pub claims: Vec<Claim>,
}

fn ser_lie<S: serde::Serializer>(lie: &[LieFactor], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(lie.iter().map(lie_text))
}

/// Two-sided Weyl group bound: lower from explicit normalizer elements, upper
/// from fingerprint-preserving automorphisms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeylBounds {
    pub lower: WeylLower,
    pub upper: u128,
}

impl WeylBounds {
    pub fn exact(&self) -> Option<u128> {
        (self.lower.order == self.upper).then_some(self.upper)
    }
}

impl fmt::Display for WeylBounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exact() {
            Some(v) => write!(f, "{v}"),
            None => write!(f, "[{}, {}]", self.lower.order, self.upper),
        }
    }
}

impl CatalogEntry {
    fn empty(id: &str, backend: Backend) -> Self {
        CatalogEntry {
            id: id.to_string(),
            backend,
            center: Vec::new(),
            gens: Vec::new(),
            named: Vec::new(),
            lie: Vec::new(),
            projections: Vec::new(),
            weyl: Vec::new(),
            search: Vec::new(),
            claims: Vec::new(),
        }
    }

    pub fn ambient(&self) -> Ambient {
        self.backend.ambient()
    }

    fn eval_all(&self, xs: &[Element]) -> Result<Vec<GrpElt>, CatalogError> {
        xs.iter().map(|x| x.eval(&self.backend)).collect()
    }

    pub fn generators(&self) -> Result<Vec<GrpElt>, CatalogError> {
        self.eval_all(&self.gens)
    }

    pub fn center_elements(&self) -> Result<Vec<GrpElt>, CatalogError> {
        self.eval_all(&self.center)
    }

    pub fn named(&self, name: &str) -> Result<GrpElt, CatalogError> {
        let (_, e) = self.named.iter().find(|(n, _)| n == name).ok_or_else(|| CatalogError::UnknownName(name.to_string()))?;
        e.eval(&self.backend)
    }

    pub fn group(&self, cap: usize) -> Result<FinSubgroup, CatalogError> {
        Ok(closure(&self.ambient(), &self.generators()?, &self.center_elements()?, cap)?)
    }

    /// Dimension of the fixed subalgebra of the generators in the ambient Lie algebra.
    pub fn fixed_dim(&self) -> Result<usize, CatalogError> {
        let gens = self.generators()?;
        match &self.backend {
            Backend::Spin(n) => {
                let cl: Vec<_> = gens.iter().filter_map(|g| g.as_cliff().cloned()).collect();
                Ok(ad_fixed_dim(&cl, *n)?)
            }
            Backend::G2 => {
                let ms: Vec<_> = gens.iter().filter_map(|g| g.as_mat().cloned()).collect();
                Ok(g2_fixed_dim(&ms)?)
            }
            _ => {
                if self.lie.is_empty() {
                    return Err(CatalogError::Missing("lie factors"));
                }
                let ms: Vec<_> = gens.iter().filter_map(|g| g.as_mat().cloned()).collect();
                Ok(lie_centralizer_dim(&ms, &self.lie)?)
            }
        }
    }

    /// The binary code of the generators that are signed blades.
    pub fn code(&self) -> Result<BinCode, CatalogError> {
        let Backend::Spin(n) = self.backend else {
            return Err(CatalogError::Missing("a Clifford ambient"));
        };
        let mut code = BinCode::zero(n as usize)?;
        for g in self.generators()? {
            let Some((mask, _)) = g.as_cliff().and_then(|x| x.as_blade()) else {
                continue;
            };
            if mask == 0 {
                continue;
            }
            let mut rows = code.rows().to_vec();
            rows.push(mask);
            match BinCode::new(n as usize, rows) {
                Ok(c) => code = c,
                Err(CodeError::Dependent) => {}
                Err(e) => return Err(e.into()),
            }
        }
        Ok(code)
    }

    pub fn weyl_candidates(&self, f: &FinSubgroup) -> Result<Vec<GrpElt>, CatalogError> {
        let mut out = self.eval_all(&self.weyl)?;
        for s in &self.search {
            match s {
                WeylSearch::Code => out.extend(codes::monomial_normalizer_candidates(&self.code()?).into_iter().map(GrpElt::Cliff)),
                WeylSearch::SignedPerm => out.extend(signed_perm_normalizer(f)?.into_iter().map(GrpElt::Mat)),
                WeylSearch::Hadamard => {
                    let Backend::Matrix(blocks) = &self.backend else {
                        return Err(CatalogError::Missing("a matrix ambient"));
                    };
                    let size: usize = blocks.iter().sum();
                    out.extend((1..1u32 << (size / 2)).map(|mask| GrpElt::Mat(pair_hadamard(size, mask))));
                }
                WeylSearch::Octonion => out.extend(monomial_normalizer_search(f)?.into_iter().map(GrpElt::Mat)),
            }
        }
        Ok(out)
    }

    pub fn weyl_bounds(&self, cap: usize) -> Result<WeylBounds, CatalogError> {
        let f = self.group(cap)?;
        self.weyl_bounds_of(&f)
    }

    pub fn weyl_bounds_of(&self, f: &FinSubgroup) -> Result<WeylBounds, CatalogError> {
        let cands = self.weyl_candidates(f)?;
        Ok(WeylBounds { lower: f.weyl_lower(&cands), upper: f.aut_upper()? })
    }

    pub fn claims(&self, scope: Scope) -> impl Iterator<Item = &Claim> {
        self.claims.iter().filter(move |c| c.scope == scope)
    }
}

impl fmt::Display for CatalogEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "entry {}", self.id)?;
        writeln!(f, "  ambient {}", self.backend)?;
        for c in &self.center {
            writeln!(f, "  center {}", c.text)?;
        }
        for g in &self.gens {
            writeln!(f, "  gen {}", g.text)?;
        }
        for (n, e) in &self.named {
            writeln!(f, "  named {n} {}", e.text)?;
        }
        for l in &self.lie {
            writeln!(f, "  lie {}", lie_text(l))?;
        }
        for p in &self.projections {
            writeln!(f, "  project {} {}", p.offset, p.size)?;
        }
        for w in &self.weyl {
            writeln!(f, "  weyl {}", w.text)?;
        }
        for s in &self.search {
            writeln!(f, "  search {}", s.name())?;
        }
        for c in &self.claims {
            let scope = match c.scope {
                Scope::Verify => "verify",
                Scope::Metadata => "metadata",
            };
            writeln!(f, "  claim {scope} {} {}", c.key, c.value)?;
        }
        writeln!(f, "end")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Catalog {
    pub entries: Vec<CatalogEntry>,
}

impl Catalog {
    /// The catalog compiled into the library.
    pub fn shipped() -> Catalog {
        SHIPPED.parse().expect("shipped catalog parses")
    }

    pub fn shipped_text() -> &'static str {
        SHIPPED
    }

    pub fn get(&self, id: &str) -> Result<&CatalogEntry, CatalogError> {
        self.entries.iter().find(|e| e.id == id).ok_or_else(|| CatalogError::UnknownId(id.to_string()))
    }

    /// Shipped entry or family member (`family.<n>` also accepted).
    pub fn lookup(&self, id: &str) -> Result<CatalogEntry, CatalogError> {
        if let Ok(e) = self.get(id) {
            return Ok(e.clone());
        }
        if let Some(n) = id.strip_prefix("family.").and_then(|s| s.parse::<usize>().ok()) {
            return family(n);
        }
        for n in FAMILY_SIZES {
            let e = family(n)?;
            if e.id == id {
                return Ok(e);
            }
        }
        Err(CatalogError::UnknownId(id.to_string()))
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|e| e.id.as_str())
    }
}

impl fmt::Display for Catalog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl FromStr for Catalog {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, CatalogError> {
        let mut entries = Vec::new();
        let mut cur: Option<CatalogEntry> = None;
        for (k, raw) in s.lines().enumerate() {
            let line = k + 1;
            let err = |msg: String| CatalogError::Parse { line, msg };
            let text = raw.trim();
            if text.is_empty() || text.starts_with('#') {
                continue;
            }
            let (head, rest) = text.split_once(' ').map_or((text, ""), |(h, r)| (h, r.trim()));
            match (head, cur.as_mut()) {
                ("entry", None) => {
                    if rest.is_empty() {
                        return Err(err("entry needs an id".into()));
                    }
                    // the backend is fixed by the following `ambient` line
                    cur = Some(CatalogEntry::empty(rest, Backend::G2));
                    let next = s.lines().nth(k + 1).map(str::trim).unwrap_or("");
                    let amb = next.strip_prefix("ambient ").ok_or_else(|| err("ambient must follow entry".into()))?;
                    cur.as_mut().unwrap().backend = amb.parse().map_err(err)?;
                }
                ("entry", Some(_)) => return Err(err("missing end".into())),
                (_, None) => return Err(err(format!("{head:?} outside an entry"))),
                ("end", Some(_)) => entries.push(cur.take().unwrap()),
                ("ambient", Some(_)) => {}
                (_, Some(e)) => {
                    let elem = |t: &str| Element::parse(&e.backend, t).map_err(err);
                    match head {
                        "center" => e.center.push(elem(rest)?),
                        "gen" => e.gens.push(elem(rest)?),
                        "weyl" => e.weyl.push(elem(rest)?),
                        "named" => {
                            let (n, t) = rest.split_once(' ').ok_or_else(|| err("named needs a name and an element".into()))?;
                            e.named.push((n.to_string(), elem(t)?));
                        }
                        "lie" => e.lie.push(parse_lie(rest).map_err(err)?),
                        "project" => {
                            let v: Vec<usize> = rest.split_whitespace().map(str::parse).collect::<Result<_, _>>().map_err(|_| err("bad projection".into()))?;
                            let [offset, size] = v[..] else {
                                return Err(err("project needs offset and size".into()));
                            };
                            e.projections.push(Projection { offset, size });
                        }
                        "search" => e.search.push(match rest {
                            "code" => WeylSearch::Code,
                            "signed-perm" => WeylSearch::SignedPerm,
                            "hadamard" => WeylSearch::Hadamard,
                            "octonion" => WeylSearch::Octonion,
                            _ => return Err(err(format!("unknown search {rest:?}"))),
                        }),
                        "claim" => {
                            let mut parts = rest.splitn(3, ' ');
                            let scope = match parts.next() {
                                Some("verify") => Scope::Verify,
                                Some("metadata") => Scope::Metadata,
                                _ => return Err(err("claim scope must be verify or metadata".into())),
                            };
                            let (Some(key), Some(value)) = (parts.next(), parts.next()) else {
                                return Err(err("claim needs a key and a value".into()));
                            };
                            e.claims.push(Claim { scope, key: key.to_string(), value: value.trim().to_string() });
                        }
                        _ => return Err(err(format!("unknown directive {head:?}"))),
                    }
                }
            }
        }
        if cur.is_some() {
            return Err(CatalogError::Parse { line: s.lines().count(), msg: "missing end".into() });
        }
        Ok(Catalog { entries })
    }
}

pub const FAMILY_SIZES: [usize; 5] = [16, 20, 22, 24, 26];

fn blade_text(idx: &[u32]) -> String {
    Word::blade(idx).to_string()
}

/// The four quads on the block `8i+1 .. 8i+8`.
fn octet(i: u32) -> Vec<Vec<u32>> {
    let b = 8 * i;
    vec![vec![b + 1, b + 2, b + 3, b + 4], vec![b + 1, b + 2, b + 5, b + 6], vec![b + 1, b + 3, b + 5, b + 7], vec![b + 5, b + 6, b + 7, b + 8]]
}

/// Member of the infinite families in `Spin(n)` for `n` in [`FAMILY_SIZES`].
pub fn family(n: usize) -> Result<CatalogEntry, CatalogError> {
    let (id, supports): (String, Vec<Vec<u32>>) = match n {
        16 | 20 | 24 => {
            let m = (n / 4) as u32;
            let mut s = vec![(0..2 * m).map(|k| 2 * k + 1).collect::<Vec<_>>()];
            s.extend((1..2 * m).map(|i| vec![1, 2, 2 * i + 1, 2 * i + 2]));
            (format!("family.F4m({m})"), s)
        }
        22 => {
            let b = 8;
            let mut s = vec![
                vec![b + 1, b + 2, b + 3, b + 4],
                vec![b + 1, b + 2, b + 5, b + 6],
                vec![b + 1, b + 3, b + 5, b + 7],
                vec![b + 8, b + 9, b + 10, b + 11],
                vec![b + 8, b + 9, b + 12, b + 13],
                vec![b + 8, b + 10, b + 12, b + 14],
            ];
            s.extend(octet(0));
            ("family.F14+8m(1)".to_string(), s)
        }
        26 => {
            let b = 8;
            let mut s = vec![
                vec![b + 1, b + 3, b + 5, b + 7, b + 9, b + 11],
                vec![b + 1, b + 2, b + 3, b + 4],
                vec![b + 1, b + 2, b + 5, b + 6],
                vec![b + 1, b + 2, b + 7, b + 8],
                vec![b + 1, b + 2, b + 9, b + 10],
                vec![b + 12, b + 13, b + 14, b + 15],
                vec![b + 12, b + 13, b + 16, b + 17],
                vec![b + 12, b + 14, b + 16, b + 18],
            ];
            s.extend(octet(0));
            ("family.F18+8m(1)".to_string(), s)
        }
        _ => return Err(CatalogError::UnsupportedFamily(n)),
    };
    let backend = Backend::Spin(n as u32);
    let mut e = CatalogEntry::empty(&id, backend.clone());
    for s in &supports {
        e.gens.push(Element::parse(&backend, &blade_text(s)).expect("blade words parse"));
    }
    e.claims.push(Claim { scope: Scope::Verify, key: "commuting".into(), value: "true".into() });
    e.claims.push(Claim { scope: Scope::Verify, key: "fixed-dim".into(), value: "0".into() });
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_round_trip() {
        let cat = Catalog::shipped();
        assert_eq!(cat.to_string(), Catalog::shipped_text());
        assert_eq!(cat.to_string().parse::<Catalog>().unwrap(), cat);
        let mut ids: Vec<&str> = cat.ids().collect();
        let total = ids.len();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), total);
    }

    #[test]
    fn parse_errors() {
        assert!("entry x\n  ambient spin 4\n  gen q7\nend\n".parse::<Catalog>().is_err());
        assert!("entry x\n  ambient spin 4\n".parse::<Catalog>().is_err());
        assert!("gen e1\n".parse::<Catalog>().is_err());
        assert!("entry x\n  gen e1\nend\n".parse::<Catalog>().is_err());
        assert!("entry x\n  ambient spin 4\n  claim maybe order 2\nend\n".parse::<Catalog>().is_err());
        let ok: Catalog = "entry x\n  ambient matrix 2,2\n  gen diag(I(1,1),Id(2))\n  lie so(2)\n  project 0 2\nend\n".parse().unwrap();
        assert_eq!(ok.entries[0].backend, Backend::Matrix(vec![2, 2]));
    }

    #[test]
    fn families() {
        let f16 = family(16).unwrap();
        assert_eq!(f16.id, "family.F4m(4)");
        assert_eq!(f16.gens.len(), 8);
        assert_eq!(f16.gens[0].text(), "e1 e3 e5 e7 e9 e11 e13 e15");
        for n in FAMILY_SIZES {
            let e = family(n).unwrap();
            let gens = e.generators().unwrap();
            for a in &gens {
                for b in &gens {
                    assert_eq!(a.mul(b), b.mul(a), "{n}");
                }
            }
            assert_eq!(Catalog::shipped().lookup(&e.id).unwrap(), e);
        }
        assert_eq!(family(22).unwrap().gens.len(), 10);
        assert_eq!(family(26).unwrap().gens.len(), 12);
        assert!(matches!(family(18), Err(CatalogError::UnsupportedFamily(18))));
    }
}
