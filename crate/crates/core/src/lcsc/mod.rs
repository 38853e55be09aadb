//! Concrete left cancellative small categories.
//!
//! Three backends are supported: finite composition tables, the monoid
//! `ℕ× ⋉ ℤ/nℤ` with product `(a,[k])(b,[l]) = (ab,[kb+l])`, and the monoid
//! `ℤ ⋊ ℕ×` with product `(k,a)(l,b) = (k+al, ab)`. Arrows are plain values;
//! every operation goes through the [`Category`] that owns them.

mod arith;
mod table;

pub use arith::{NxZmod, ZNx};
pub use table::{ArrowSpec, FiniteCategory, TableError, TableSpec};

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default bound on multiplicative components for bounded searches.
pub const DEFAULT_MULT_BOUND: u64 = 1000;
/// Default bound on `|additive component|` for bounded searches in `ℤ ⋊ ℕ×`.
pub const DEFAULT_ADDITIVE_BOUND: u64 = 1000;

/// An object of a category, identified with its identity arrow.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ObjectId(pub usize);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Arrow {
    /// Index into a finite composition table.
    Table(usize),
    /// `(mult, [residue])` in `ℕ× ⋉ ℤ/nℤ`; the residue is always reduced.
    NxZmod { mult: BigUint, residue: BigUint },
    /// `(shift, mult)` in `ℤ ⋊ ℕ×`.
    ZNx { shift: BigInt, mult: BigUint },
}

impl Arrow {
    fn order_key(&self) -> (u8, Option<&BigUint>, ArrowTail<'_>) {
        match self {
            Arrow::Table(i) => (0, None, ArrowTail::Index(*i)),
            Arrow::NxZmod { mult, residue } => (1, Some(mult), ArrowTail::Unsigned(residue)),
            Arrow::ZNx { shift, mult } => (2, Some(mult), ArrowTail::Signed(shift)),
        }
    }
}

#[derive(PartialEq, Eq, PartialOrd, Ord)]
enum ArrowTail<'a> {
    Index(usize),
    Unsigned(&'a BigUint),
    Signed(&'a BigInt),
}

// Multiplicative component first, then residue / integer.
impl Ord for Arrow {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order_key().cmp(&other.order_key())
    }
}

impl PartialOrd for Arrow {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

// Compact string form: `#i`, `(a,k)` and `[k,a]`.
impl Serialize for Arrow {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Arrow::Table(i) => s.serialize_str(&format!("#{i}")),
            Arrow::NxZmod { mult, residue } => s.serialize_str(&format!("({mult},{residue})")),
            Arrow::ZNx { shift, mult } => s.serialize_str(&format!("[{shift},{mult}]")),
        }
    }
}

impl<'de> Deserialize<'de> for Arrow {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error;
        let s = String::deserialize(d)?;
        let bad = || D::Error::custom(format!("bad arrow `{s}`"));
        if let Some(i) = s.strip_prefix('#') {
            return i.parse().map(Arrow::Table).map_err(|_| bad());
        }
        let (open, close) = (s.chars().next().ok_or_else(bad)?, s.chars().last().ok_or_else(bad)?);
        let inner = s.get(1..s.len() - 1).ok_or_else(bad)?;
        let (x, y) = inner.split_once(',').ok_or_else(bad)?;
        match (open, close) {
            ('(', ')') => Ok(Arrow::NxZmod {
                mult: x.parse().map_err(|_| bad())?,
                residue: y.parse().map_err(|_| bad())?,
            }),
            ('[', ']') => Ok(Arrow::ZNx { shift: x.parse().map_err(|_| bad())?, mult: y.parse().map_err(|_| bad())? }),
            _ => Err(bad()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum LcscError {
    #[error("composition undefined: source of left factor differs from target of right factor")]
    Undefined,
    #[error("arrow does not belong to backend {0}")]
    BackendMismatch(String),
    #[error("no solution: the arrow is not in the principal right ideal")]
    NoSolution,
    #[error("backend is not right LCM: {0}")]
    NotRightLcm(String),
    #[error("operation needs a monoid backend")]
    NotMonoid,
    #[error("invalid arrow: {0}")]
    InvalidArrow(String),
}

pub type Result<T> = std::result::Result<T, LcscError>;

/// Outcome of a left cancellation check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CancellationVerdict {
    Proven,
    VerifiedUpTo(u64),
    /// `x·y = x·z` with `y ≠ z`.
    Counterexample(Arrow, Arrow, Arrow),
}

/// `aC ∩ bC = wC` with `w = a·alpha = b·beta`, or the intersection is empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LcmWitness {
    Meet { w: Arrow, alpha: Arrow, beta: Arrow },
    Empty,
}

impl LcmWitness {
    pub fn generator(&self) -> Option<&Arrow> {
        match self {
            LcmWitness::Meet { w, .. } => Some(w),
            LcmWitness::Empty => None,
        }
    }
}

/// Description of the groupoid of invertibles `C*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Invertibles {
    Finite(Vec<Arrow>),
    /// Infinite (or too large to list): a generating set.
    Generated(Vec<Arrow>),
}

impl Invertibles {
    pub fn generators(&self) -> &[Arrow] {
        match self {
            Invertibles::Finite(v) | Invertibles::Generated(v) => v,
        }
    }
}

/// `{c : a·c = b·c}` as computed by bounded search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EqualizerOutcome {
    Generator(Arrow),
    Empty,
    /// Two equalizing elements with no common generator inside the box.
    NotPrincipal(Arrow, Arrow),
}

/// Explicit search budgets for infinite backends.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub mult: u64,
    pub additive: u64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { mult: DEFAULT_MULT_BOUND, additive: DEFAULT_ADDITIVE_BOUND }
    }
}

impl Bounds {
    pub fn new(mult: u64, additive: u64) -> Self {
        Bounds { mult, additive }
    }

    pub fn uniform(bound: u64) -> Self {
        Bounds { mult: bound, additive: bound }
    }
}

#[derive(Clone, Debug)]
pub enum Category {
    Table(FiniteCategory),
    NxZmod(NxZmod),
    ZNx(ZNx),
}

impl From<FiniteCategory> for Category {
    fn from(t: FiniteCategory) -> Self {
        Category::Table(t)
    }
}

impl From<NxZmod> for Category {
    fn from(m: NxZmod) -> Self {
        Category::NxZmod(m)
    }
}

impl From<ZNx> for Category {
    fn from(m: ZNx) -> Self {
        Category::ZNx(m)
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Category::Table(t) => write!(f, "table({} objects, {} arrows)", t.object_count(), t.len()),
            Category::NxZmod(m) => write!(f, "N^x ⋉ Z/{}Z", m.modulus()),
            Category::ZNx(_) => write!(f, "Z ⋊ N^x"),
        }
    }
}

impl Category {
    pub fn nx_zmod(n: u64) -> Self {
        Category::NxZmod(NxZmod::new(n))
    }

    pub fn z_nx() -> Self {
        Category::ZNx(ZNx)
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Category::Table(_))
    }

    pub fn is_monoid(&self) -> bool {
        match self {
            Category::Table(t) => t.object_count() == 1,
            _ => true,
        }
    }

    pub fn is_right_lcm(&self) -> bool {
        match self {
            Category::Table(t) => t.is_right_lcm(),
            _ => true,
        }
    }

    pub fn as_table(&self) -> Option<&FiniteCategory> {
        match self {
            Category::Table(t) => Some(t),
            _ => None,
        }
    }

    /// Builds the arrow written `(x,y)`: `(a,[k])` in `ℕ× ⋉ ℤ/nℤ`, `(k,a)` in `ℤ ⋊ ℕ×`.
    pub fn pair(&self, x: i64, y: i64) -> Result<Arrow> {
        match self {
            Category::NxZmod(m) => {
                let a = u64::try_from(x)
                    .ok()
                    .filter(|a| *a >= 1)
                    .ok_or_else(|| LcscError::InvalidArrow(format!("multiplicative part {x} must be ≥ 1")))?;
                Ok(m.arrow(a, y))
            }
            Category::ZNx(z) => {
                let a = u64::try_from(y)
                    .ok()
                    .filter(|a| *a >= 1)
                    .ok_or_else(|| LcscError::InvalidArrow(format!("multiplicative part {y} must be ≥ 1")))?;
                Ok(z.arrow(x, a))
            }
            Category::Table(_) => Err(LcscError::InvalidArrow("table arrows are named, not pairs".into())),
        }
    }

    /// Membership check of an arrow in this backend.
    pub fn check(&self, a: &Arrow) -> Result<()> {
        match (self, a) {
            (Category::Table(t), Arrow::Table(i)) if *i < t.len() => Ok(()),
            (Category::NxZmod(m), Arrow::NxZmod { mult, residue }) if m.is_valid(mult, residue) => Ok(()),
            (Category::ZNx(_), Arrow::ZNx { mult, .. }) if *mult >= BigUint::from(1u8) => Ok(()),
            _ => Err(LcscError::BackendMismatch(self.to_string())),
        }
    }

    pub fn object_count(&self) -> usize {
        match self {
            Category::Table(t) => t.object_count(),
            _ => 1,
        }
    }

    pub fn objects(&self) -> Vec<ObjectId> {
        (0..self.object_count()).map(ObjectId).collect()
    }

    pub fn source(&self, a: &Arrow) -> ObjectId {
        match (self, a) {
            (Category::Table(t), Arrow::Table(i)) => t.source(*i),
            _ => ObjectId(0),
        }
    }

    pub fn target(&self, a: &Arrow) -> ObjectId {
        match (self, a) {
            (Category::Table(t), Arrow::Table(i)) => t.target(*i),
            _ => ObjectId(0),
        }
    }

    pub fn identity(&self, obj: ObjectId) -> Arrow {
        match self {
            Category::Table(t) => Arrow::Table(t.identity(obj)),
            Category::NxZmod(m) => m.arrow(1, 0),
            Category::ZNx(z) => z.arrow(0, 1),
        }
    }

    /// The identity of a monoid backend.
    pub fn one(&self) -> Result<Arrow> {
        if !self.is_monoid() {
            return Err(LcscError::NotMonoid);
        }
        Ok(self.identity(ObjectId(0)))
    }

    pub fn is_identity(&self, a: &Arrow) -> bool {
        *a == self.identity(self.target(a))
    }

    /// `a·b`, defined iff `source(a) = target(b)`.
    pub fn compose(&self, a: &Arrow, b: &Arrow) -> Result<Arrow> {
        self.check(a)?;
        self.check(b)?;
        match (self, a, b) {
            (Category::Table(t), Arrow::Table(x), Arrow::Table(y)) => {
                t.compose(*x, *y).map(Arrow::Table).ok_or(LcscError::Undefined)
            }
            (Category::NxZmod(m), _, _) => Ok(m.compose(a, b)),
            (Category::ZNx(z), _, _) => Ok(z.compose(a, b)),
            _ => Err(LcscError::BackendMismatch(self.to_string())),
        }
    }

    /// The unique `r` with `p = q·r`.
    pub fn divide_left(&self, q: &Arrow, p: &Arrow) -> Result<Arrow> {
        self.check(q)?;
        self.check(p)?;
        let r = match (self, q, p) {
            (Category::Table(t), Arrow::Table(x), Arrow::Table(y)) => t.divide_left(*x, *y).map(Arrow::Table),
            (Category::NxZmod(m), _, _) => m.divide_left(q, p),
            (Category::ZNx(z), _, _) => z.divide_left(q, p),
            _ => return Err(LcscError::BackendMismatch(self.to_string())),
        };
        r.ok_or(LcscError::NoSolution)
    }

    /// `p ∈ qC`.
    pub fn divides(&self, q: &Arrow, p: &Arrow) -> bool {
        self.divide_left(q, p).is_ok()
    }

    /// `pC = qC`, equivalently `q = p·u` for an invertible `u`.
    pub fn same_ideal(&self, p: &Arrow, q: &Arrow) -> bool {
        self.divides(p, q) && self.divides(q, p)
    }

    pub fn is_unit(&self, a: &Arrow) -> bool {
        match (self, a) {
            (Category::Table(t), Arrow::Table(i)) => t.is_unit(*i),
            (_, Arrow::NxZmod { mult, .. }) | (_, Arrow::ZNx { mult, .. }) => *mult == BigUint::from(1u8),
            _ => false,
        }
    }

    pub fn invertibles(&self) -> Invertibles {
        match self {
            Category::Table(t) => Invertibles::Finite(t.units().into_iter().map(Arrow::Table).collect()),
            Category::NxZmod(m) => m.invertibles(),
            Category::ZNx(z) => Invertibles::Generated(vec![z.arrow(1, 1), z.arrow(-1, 1)]),
        }
    }

    /// Invertibles `u` with `source(u) = target(u) = obj`, when finitely many.
    pub fn units_at(&self, obj: ObjectId) -> Option<Vec<Arrow>> {
        match self {
            Category::Table(t) => Some(t.units_at(obj).into_iter().map(Arrow::Table).collect()),
            _ => match self.invertibles() {
                Invertibles::Finite(v) => Some(v),
                Invertibles::Generated(_) => None,
            },
        }
    }

    /// Generators of the invertibles at `obj` (all of them when finite).
    pub fn unit_generators_at(&self, obj: ObjectId) -> Vec<Arrow> {
        match self.units_at(obj) {
            Some(v) => v,
            None => self.invertibles().generators().to_vec(),
        }
    }

    /// The invertible `u` with `u·c = v`, if one exists.
    pub fn solve_unit(&self, c: &Arrow, v: &Arrow) -> Option<Arrow> {
        match self {
            Category::Table(t) => match (c, v) {
                (Arrow::Table(x), Arrow::Table(y)) => t.solve_unit(*x, *y).map(Arrow::Table),
                _ => None,
            },
            Category::NxZmod(m) => m.solve_unit(c, v),
            Category::ZNx(z) => z.solve_unit(c, v),
        }
    }

    /// Least unit translate `c·u` of `c`; generates the same right ideal.
    pub fn canonical(&self, c: &Arrow) -> Arrow {
        match self {
            Category::Table(t) => match c {
                Arrow::Table(i) => Arrow::Table(t.canonical(*i)),
                _ => c.clone(),
            },
            Category::NxZmod(m) => m.canonical(c),
            Category::ZNx(z) => z.canonical(c),
        }
    }

    /// Generator of `aC ∩ bC` with factorization witnesses.
    pub fn right_lcm(&self, a: &Arrow, b: &Arrow) -> Result<LcmWitness> {
        self.check(a)?;
        self.check(b)?;
        let w = match self {
            Category::Table(t) => match (a, b) {
                (Arrow::Table(x), Arrow::Table(y)) => return t.right_lcm(*x, *y),
                _ => unreachable!("checked above"),
            },
            Category::NxZmod(m) => Some(m.lcm_generator(a, b)),
            Category::ZNx(z) => z.lcm_generator(a, b),
        };
        Ok(match w {
            None => LcmWitness::Empty,
            Some(w) => {
                let alpha = self.divide_left(a, &w)?;
                let beta = self.divide_left(b, &w)?;
                LcmWitness::Meet { w, alpha, beta }
            }
        })
    }

    /// A finite generating set of `aC ∩ bC` (at most one element on right LCM backends).
    pub fn meet_generators(&self, a: &Arrow, b: &Arrow) -> Vec<Arrow> {
        match (self, a, b) {
            (Category::Table(t), Arrow::Table(x), Arrow::Table(y)) => {
                t.meet_generators(*x, *y).into_iter().map(Arrow::Table).collect()
            }
            _ => match self.right_lcm(a, b) {
                Ok(LcmWitness::Meet { w, .. }) => vec![self.canonical(&w)],
                _ => Vec::new(),
            },
        }
    }

    /// Arrows inside a truncation box, in ascending order. Finite backends ignore the bounds.
    pub fn arrows_in_box(&self, bounds: Bounds) -> Vec<Arrow> {
        match self {
            Category::Table(t) => (0..t.len()).map(Arrow::Table).collect(),
            Category::NxZmod(m) => m.box_arrows(bounds.mult),
            Category::ZNx(z) => z.box_arrows(bounds.mult, bounds.additive),
        }
    }

    /// Left cancellation: exhaustive on tables, closed form plus bounded confirmation otherwise.
    pub fn validate_left_cancellative(&self, bound: u64) -> CancellationVerdict {
        let arrows = match self {
            Category::Table(t) => {
                return match t.left_cancellation_counterexample() {
                    Some((x, y, z)) => {
                        CancellationVerdict::Counterexample(Arrow::Table(x), Arrow::Table(y), Arrow::Table(z))
                    }
                    None => CancellationVerdict::Proven,
                };
            }
            _ => self.arrows_in_box(Bounds::uniform(bound)),
        };
        for x in &arrows {
            let mut seen = std::collections::HashMap::with_capacity(arrows.len());
            for y in &arrows {
                let Ok(p) = self.compose(x, y) else { continue };
                if let Some(prev) = seen.insert(p, y.clone()) {
                    return CancellationVerdict::Counterexample(x.clone(), prev, y.clone());
                }
            }
        }
        // (a,[k])(b,[l]) = (a,[k])(c,[m]) forces b = c then [l] = [m]; (k,a)(l,b) = (k,a)(m,c)
        // forces b = c then al = am. Both arguments are uniform in the bound.
        CancellationVerdict::Proven
    }

    /// `{c : a·c = b·c}` by exhaustive search in the box; the result is tested for principality.
    pub fn equalizer_ideal(&self, a: &Arrow, b: &Arrow, bounds: Bounds) -> Result<EqualizerOutcome> {
        if !self.is_monoid() {
            return Err(LcscError::NotMonoid);
        }
        self.check(a)?;
        self.check(b)?;
        let equalizing: Vec<Arrow> = self
            .arrows_in_box(bounds)
            .into_iter()
            .filter(|c| self.compose(a, c).ok() == self.compose(b, c).ok())
            .collect();
        // ascending order puts a least-multiplicative element first
        let Some(d) = equalizing.first() else {
            return Ok(EqualizerOutcome::Empty);
        };
        if let Some(bad) = equalizing.iter().find(|c| !self.divides(d, c)) {
            return Ok(EqualizerOutcome::NotPrincipal(d.clone(), bad.clone()));
        }
        Ok(EqualizerOutcome::Generator(self.canonical(d)))
    }

    /// Renders an arrow in the textual syntax accepted by the parser.
    pub fn show(&self, a: &Arrow) -> String {
        match (self, a) {
            (Category::Table(t), Arrow::Table(i)) => t.name(*i).to_string(),
            (_, Arrow::NxZmod { mult, residue }) => format!("({mult},{residue})"),
            (_, Arrow::ZNx { shift, mult }) => format!("({shift},{mult})"),
            (_, Arrow::Table(i)) => format!("#{i}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nx(n: u64) -> Category {
        Category::nx_zmod(n)
    }

    #[test]
    fn compose_follows_product_law() {
        let c = nx(6);
        let p = |a, k| c.pair(a, k).unwrap();
        assert_eq!(c.compose(&p(2, 1), &p(3, 2)).unwrap(), p(6, 5));
        assert_eq!(c.compose(&p(1, 2), &p(6, 0)).unwrap(), p(6, 0));
        assert_eq!(c.compose(&p(1, 0), &p(4, 5)).unwrap(), p(4, 5));
    }

    #[test]
    fn divide_left_examples() {
        let c = nx(6);
        let p = |a, k| c.pair(a, k).unwrap();
        assert_eq!(c.divide_left(&p(2, 0), &p(6, 3)).unwrap(), p(3, 3));
        assert_eq!(c.divide_left(&p(4, 1), &p(2, 0)), Err(LcscError::NoSolution));
        let q = p(5, 4);
        assert_eq!(c.divide_left(&q, &q).unwrap(), c.one().unwrap());
    }

    #[test]
    fn divide_left_brute_force_agrees() {
        let c = nx(6);
        let q = c.pair(2, 0).unwrap();
        let target = c.pair(6, 3).unwrap();
        let hits: Vec<Arrow> = c
            .arrows_in_box(Bounds::uniform(6))
            .into_iter()
            .filter(|r| c.compose(&q, r).unwrap() == target)
            .collect();
        assert_eq!(hits, vec![c.pair(3, 3).unwrap()]);
    }

    #[test]
    fn backend_mismatch_is_reported() {
        let a = nx(6).pair(2, 1).unwrap();
        let z = Category::z_nx();
        assert!(matches!(z.compose(&a, &a), Err(LcscError::BackendMismatch(_))));
        let b = nx(5).pair(2, 5).unwrap();
        assert!(nx(6).check(&b).is_ok());
        let c = nx(4).pair(1, 3).unwrap();
        assert!(matches!(nx(3).check(&c), Err(LcscError::BackendMismatch(_))));
    }

    #[test]
    fn invertibles_of_families() {
        let Invertibles::Finite(units) = nx(6).invertibles() else { panic!() };
        assert_eq!(units.len(), 6);
        assert!(units.iter().all(|u| matches!(u, Arrow::NxZmod { mult, .. } if *mult == 1u8.into())));
        let z = Category::z_nx();
        assert_eq!(
            z.invertibles(),
            Invertibles::Generated(vec![z.pair(1, 1).unwrap(), z.pair(-1, 1).unwrap()])
        );
    }

    #[test]
    fn right_lcm_examples() {
        let c = nx(6);
        let p = |a, k| c.pair(a, k).unwrap();
        let w = c.right_lcm(&p(4, 1), &p(6, 2)).unwrap();
        let LcmWitness::Meet { w, alpha, beta } = w else { panic!() };
        assert_eq!(w, p(12, 0));
        assert_eq!(c.compose(&p(4, 1), &alpha).unwrap(), w);
        assert_eq!(c.compose(&p(6, 2), &beta).unwrap(), w);
        let x = p(5, 3);
        assert!(c.same_ideal(c.right_lcm(&x, &x).unwrap().generator().unwrap(), &x));

        let z = Category::z_nx();
        let zp = |k, a| z.pair(k, a).unwrap();
        assert_eq!(z.right_lcm(&zp(0, 2), &zp(1, 2)).unwrap(), LcmWitness::Empty);
        let LcmWitness::Meet { w, .. } = z.right_lcm(&zp(1, 2), &zp(2, 3)).unwrap() else { panic!() };
        // m ≡ 1 mod 2, m ≡ 2 mod 3 → m ≡ 5 mod 6
        assert_eq!(w, zp(5, 6));
    }

    #[test]
    fn equalizer_examples() {
        let c = nx(6);
        let p = |a, k| c.pair(a, k).unwrap();
        let b = Bounds::uniform(200);
        assert_eq!(c.equalizer_ideal(&p(5, 3), &p(5, 1), b).unwrap(), EqualizerOutcome::Generator(p(3, 0)));
        assert_eq!(c.equalizer_ideal(&p(5, 3), &p(5, 3), b).unwrap(), EqualizerOutcome::Generator(p(1, 0)));
        assert_eq!(c.equalizer_ideal(&p(2, 0), &p(3, 0), b).unwrap(), EqualizerOutcome::Empty);
    }

    #[test]
    fn principal_ideal_ignores_residue() {
        let c = nx(6);
        for k in 0..6 {
            for l in 0..6 {
                assert!(c.same_ideal(&c.pair(4, k).unwrap(), &c.pair(4, l).unwrap()));
            }
        }
    }

    #[test]
    fn left_cancellative_families() {
        assert_eq!(nx(6).validate_left_cancellative(12), CancellationVerdict::Proven);
        assert_eq!(Category::z_nx().validate_left_cancellative(6), CancellationVerdict::Proven);
    }

    #[test]
    fn solve_unit_matches_enumeration() {
        let c = nx(6);
        let units = c.units_at(ObjectId(0)).unwrap();
        for (a, k) in [(1, 0), (2, 3), (3, 1), (5, 2)] {
            let x = c.pair(a, k).unwrap();
            for v in c.arrows_in_box(Bounds::uniform(6)) {
                let brute = units.iter().find(|u| c.compose(u, &x).unwrap() == v).cloned();
                assert_eq!(c.solve_unit(&x, &v).is_some(), brute.is_some());
                if let Some(u) = c.solve_unit(&x, &v) {
                    assert_eq!(c.compose(&u, &x).unwrap(), v);
                }
            }
        }
    }

    #[test]
    fn ordering_is_multiplicative_first() {
        let z = Category::z_nx();
        assert!(z.pair(100, 1).unwrap() < z.pair(-5, 2).unwrap());
        let c = nx(6);
        assert!(c.pair(2, 5).unwrap() < c.pair(3, 0).unwrap());
        assert_eq!(z.canonical(&z.pair(-3, 4).unwrap()), z.pair(1, 4).unwrap());
    }
}
