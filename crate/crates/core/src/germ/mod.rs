//! The groupoid of germs at principal characters: germs, bisections,
//! isotropy, interior-of-isotropy tests and relative topological principality.

pub mod discrete;

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::characters::{char_eq, BasicOpen, PrincipalCharacter};
use crate::hull::{image, BooleanIdeal, ExtendedHullElement, HullElement, HullError, Letter};
use crate::lcsc::{Arrow, Bounds, Category};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GermError {
    #[error("the character is outside the domain of the element")]
    OutsideDomain,
    #[error("source of the left germ differs from target of the right germ")]
    NotComposable,
    #[error("character outside the bisection")]
    OutsideBisection,
    #[error(transparent)]
    Hull(#[from] HullError),
}

pub type Result<T> = std::result::Result<T, GermError>;

/// `[s, χ_c]` with `c ∈ dom(s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Germ {
    pub s: ExtendedHullElement,
    pub chi: PrincipalCharacter,
}

impl Germ {
    pub fn new(cat: &Category, s: ExtendedHullElement, chi: PrincipalCharacter) -> Result<Self> {
        if s.apply(cat, &chi.c).is_none() {
            return Err(GermError::OutsideDomain);
        }
        Ok(Germ { s, chi })
    }

    pub fn of_hull(cat: &Category, s: HullElement, chi: PrincipalCharacter) -> Result<Self> {
        Germ::new(cat, ExtendedHullElement::from_hull(cat, s), chi)
    }

    /// `[id, χ_c]`.
    pub fn unit(cat: &Category, chi: &PrincipalCharacter) -> Self {
        let id = HullElement::identity(cat, cat.target(&chi.c));
        Germ { s: ExtendedHullElement::from_hull(cat, id), chi: chi.clone() }
    }

    /// `[c u c⁻¹, χ_c]`.
    pub fn conjugate(cat: &Category, c: &Arrow, u: &Arrow) -> Result<Self> {
        let word = vec![Letter::Mul(c.clone()), Letter::Mul(u.clone()), Letter::Inv(c.clone())];
        Germ::of_hull(cat, HullElement::from_word(cat, word)?, PrincipalCharacter::new(c.clone()))
    }

    pub fn source(&self) -> &PrincipalCharacter {
        &self.chi
    }

    pub fn target(&self, cat: &Category) -> PrincipalCharacter {
        PrincipalCharacter::new(self.value(cat))
    }

    /// `s(c)` for the stored representative `c`.
    pub fn value(&self, cat: &Category) -> Arrow {
        self.s.apply(cat, &self.chi.c).expect("checked at construction")
    }

    /// A complete invariant: germs are equal iff their keys are.
    pub fn key(&self, cat: &Category) -> (Arrow, Arrow) {
        let c = cat.canonical(&self.chi.c);
        let v = self.s.apply(cat, &c).expect("domains are closed under unit translation");
        (c, v)
    }

    pub fn is_isotropy(&self, cat: &Category) -> bool {
        char_eq(cat, &self.chi, &self.target(cat))
    }

    pub fn show(&self, cat: &Category) -> String {
        format!("germ({}; {})", self.s.s.show(cat), self.chi.show(cat))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GermEq {
    /// The two elements agree on this neighborhood of the character.
    Equal(BooleanIdeal),
    Distinct(Arrow),
}

/// Exact germ equality.
///
/// Domains are right ideals and `s(cx) = s(c)x`, so `s` and `t` agree on
/// `cC ∩ dom s ∩ dom t` as soon as they agree at `c`.
pub fn germ_eq(cat: &Category, g1: &Germ, g2: &Germ) -> GermEq {
    if !char_eq(cat, &g1.chi, &g2.chi) {
        return GermEq::Distinct(g1.chi.c.clone());
    }
    let c = &g1.chi.c;
    if g1.s.apply(cat, c) != g2.s.apply(cat, c) {
        return GermEq::Distinct(c.clone());
    }
    let e = BooleanIdeal::principal(cat, c).intersect(cat, g1.s.domain()).intersect(cat, g2.s.domain());
    GermEq::Equal(e)
}

pub fn germ_equal(cat: &Category, g1: &Germ, g2: &Germ) -> bool {
    matches!(germ_eq(cat, g1, g2), GermEq::Equal(_))
}

/// `[s, t·χ]·[t, χ] = [st, χ]`.
pub fn germ_compose(cat: &Category, g1: &Germ, g2: &Germ) -> Result<Germ> {
    if !char_eq(cat, &g1.chi, &g2.target(cat)) {
        return Err(GermError::NotComposable);
    }
    let s = g1.s.compose(cat, &g2.s)?;
    Germ::new(cat, s, g2.chi.clone())
}

/// `[s, χ]⁻¹ = [s⁻¹, s·χ]`.
pub fn germ_inverse(cat: &Category, g: &Germ) -> Germ {
    Germ { s: g.s.invert(cat), chi: g.target(cat) }
}

#[derive(Clone, Debug)]
pub struct IsotropyGroup {
    pub base: PrincipalCharacter,
    /// Units `u` at the source of the base arrow, one per generator.
    pub units: Vec<Arrow>,
    pub generators: Vec<Germ>,
    /// All elements, when the unit group is finite.
    pub elements: Option<Vec<Germ>>,
    /// `table[i][j]` is the index of `elements[i]·elements[j]`.
    pub table: Option<Vec<Vec<usize>>>,
}

impl IsotropyGroup {
    pub fn order(&self) -> Option<usize> {
        self.elements.as_ref().map(Vec::len)
    }

    /// Element orders from the multiplication table.
    pub fn element_orders(&self) -> Option<Vec<usize>> {
        let table = self.table.as_ref()?;
        let id = (0..table.len()).find(|&i| (0..table.len()).all(|j| table[i][j] == j))?;
        Some(
            (0..table.len())
                .map(|i| {
                    let mut k = 1;
                    let mut x = i;
                    while x != id {
                        x = table[x][i];
                        k += 1;
                    }
                    k
                })
                .collect(),
        )
    }

    pub fn is_cyclic(&self) -> Option<bool> {
        let n = self.order()?;
        Some(self.element_orders()?.contains(&n))
    }
}

/// The isotropy `{[cuc⁻¹, χ_c]}` at `χ_c`; fully enumerated when the units are finite.
pub fn isotropy_at(cat: &Category, chi: &PrincipalCharacter) -> Result<IsotropyGroup> {
    let c = &chi.c;
    let obj = cat.source(c);
    let finite = cat.units_at(obj);
    let units = finite.clone().unwrap_or_else(|| cat.unit_generators_at(obj));
    let generators = units.iter().map(|u| Germ::conjugate(cat, c, u)).collect::<Result<Vec<_>>>()?;
    let (elements, table) = match finite {
        None => (None, None),
        Some(_) => {
            let index: HashMap<(Arrow, Arrow), usize> =
                generators.iter().enumerate().map(|(i, g)| (g.key(cat), i)).collect();
            debug_assert_eq!(index.len(), generators.len());
            let mut table = vec![vec![0; generators.len()]; generators.len()];
            for (i, a) in generators.iter().enumerate() {
                for (j, b) in generators.iter().enumerate() {
                    let ab = germ_compose(cat, a, b)?;
                    table[i][j] = *index.get(&ab.key(cat)).expect("isotropy is closed under products");
                }
            }
            (Some(generators.clone()), Some(table))
        }
    };
    Ok(IsotropyGroup { base: chi.clone(), units, generators, elements, table })
}

/// `[s, U]`: the germs of `s` at the characters in `U`.
#[derive(Clone, Debug)]
pub struct Bisection {
    pub s: ExtendedHullElement,
    pub open: BasicOpen,
}

impl Bisection {
    /// `[c, Ω(c⁻¹c)]⁻¹ = [c⁻¹, {χ : χ(cc⁻¹) = 1}]`.
    pub fn canonical(cat: &Category, c: &Arrow) -> Self {
        let s = ExtendedHullElement::from_hull(cat, HullElement::inv(cat, c));
        Bisection { s, open: BasicOpen::of(BooleanIdeal::principal(cat, c)) }
    }

    pub fn unit(cat: &Category, chi: &PrincipalCharacter) -> Self {
        let obj = cat.target(&chi.c);
        let s = ExtendedHullElement::from_hull(cat, HullElement::identity(cat, obj));
        Bisection { s, open: BasicOpen::of(BooleanIdeal::at_object(cat, obj)) }
    }

    pub fn contains(&self, cat: &Category, chi: &PrincipalCharacter) -> bool {
        self.open.contains(cat, chi) && self.s.apply(cat, &chi.c).is_some()
    }

    pub fn germ_at(&self, cat: &Category, chi: &PrincipalCharacter) -> Result<Germ> {
        if !self.contains(cat, chi) {
            return Err(GermError::OutsideBisection);
        }
        Germ::new(cat, self.s.clone(), chi.clone())
    }

    pub fn inverse(&self, cat: &Category) -> Bisection {
        let img = |b: &BooleanIdeal| image(cat, &self.s.s, &b.intersect(cat, self.s.domain()));
        Bisection {
            s: self.s.invert(cat),
            open: BasicOpen::new(img(&self.open.e), self.open.forbidden.iter().map(img).collect()),
        }
    }

    pub fn show(&self, cat: &Category) -> String {
        format!("[{}, {}]", self.s.s.show(cat), self.open.show(cat))
    }
}

/// `Ad_Γ(g) = Γ g Γ⁻¹`.
pub fn ad_bisection(cat: &Category, gamma: &Bisection, g: &Germ) -> Result<Germ> {
    let at_target = gamma.germ_at(cat, &g.target(cat))?;
    let at_source = gamma.germ_at(cat, g.source())?;
    let left = germ_compose(cat, &at_target, g)?;
    germ_compose(cat, &left, &germ_inverse(cat, &at_source))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum NoCertificate {
    /// The germ moves its source character.
    NotIsotropy { from: Arrow, to: Arrow },
    /// Points `d` with `χ_d ≠ χ_{s(d)}`; `rule` describes the family hitting every neighborhood.
    MovedPoints { rule: String, examples: Vec<(Arrow, Arrow)> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoVerdict {
    /// Every principal character in the neighborhood is fixed.
    Yes(BooleanIdeal),
    No(NoCertificate),
    Unknown(String),
}

/// Membership of a germ in the interior of the isotropy.
pub fn in_iso_interior(cat: &Category, g: &Germ, budget: u64) -> IsoVerdict {
    let c = &g.chi.c;
    let v = g.value(cat);
    if !cat.same_ideal(c, &v) {
        return IsoVerdict::No(NoCertificate::NotIsotropy { from: c.clone(), to: v });
    }
    let u0 = cat.divide_left(c, &v).expect("same ideal");
    let e = BooleanIdeal::principal(cat, c).intersect(cat, g.s.domain());
    let moved = |d: &Arrow| g.s.apply(cat, d).filter(|sd| !cat.same_ideal(d, sd)).map(|sd| (d.clone(), sd));
    match cat {
        Category::NxZmod(_) => {
            // ideals only see the multiplicative part, which s(cy) = c·u0·y shares with cy
            let bound = budget.clamp(1, 64);
            for y in cat.arrows_in_box(Bounds::uniform(bound)) {
                let d = cat.compose(c, &y).expect("monoid");
                if e.contains(cat, &d) {
                    if let Some(m) = moved(&d) {
                        return IsoVerdict::No(NoCertificate::MovedPoints {
                            rule: "bounded scan".into(),
                            examples: vec![m],
                        });
                    }
                }
            }
            IsoVerdict::Yes(e)
        }
        Category::ZNx(_) => {
            let Arrow::ZNx { shift: j, .. } = &u0 else { unreachable!() };
            if j.is_zero() {
                return IsoVerdict::Yes(e);
            }
            // c·(0,p) ∈ e for all but finitely many primes p, and is moved when p ∤ j
            let mut examples = Vec::new();
            for p in primes_up_to(budget) {
                let big = num_bigint::BigInt::from(p);
                if j.is_multiple_of(&big) {
                    continue;
                }
                let d = cat.compose(c, &cat.pair(0, p as i64).expect("valid")).expect("monoid");
                if !e.contains(cat, &d) {
                    continue;
                }
                if let Some(m) = moved(&d) {
                    examples.push(m);
                    if examples.len() == 3 {
                        break;
                    }
                }
            }
            if examples.is_empty() {
                return IsoVerdict::Unknown(format!("no moved point found with primes ≤ {budget}"));
            }
            let shift = j.abs();
            IsoVerdict::No(NoCertificate::MovedPoints {
                rule: format!("c·(0,p) is moved for every prime p not dividing {shift}"),
                examples,
            })
        }
        Category::Table(t) => {
            let Arrow::Table(ci) = c else { unreachable!() };
            let all: Vec<Arrow> = (0..t.len()).map(Arrow::Table).filter(|d| e.contains(cat, d)).collect();
            if all.iter().all(|d| moved(d).is_none()) {
                return IsoVerdict::Yes(e);
            }
            // the smallest neighborhood of χ_c is the set of unit translates of c
            let orbit = t.units_at(t.source(*ci)).into_iter().filter_map(|u| t.compose(*ci, u)).collect();
            let small = BooleanIdeal::from_finite_set(cat, &orbit).expect("unit orbits are closed");
            if orbit.iter().all(|&d| moved(&Arrow::Table(d)).is_none()) {
                IsoVerdict::Yes(small.intersect(cat, &e))
            } else {
                let examples = orbit.iter().filter_map(|&d| moved(&Arrow::Table(d))).collect();
                IsoVerdict::No(NoCertificate::MovedPoints { rule: "smallest neighborhood".into(), examples })
            }
        }
    }
}

fn primes_up_to(n: u64) -> impl Iterator<Item = u64> {
    (2..=n.max(2)).filter(|&k| (2..).take_while(|d| d * d <= k).all(|d| k % d != 0))
}

#[derive(Clone, Debug)]
pub enum SubgroupoidSpec {
    UnitSpace,
    /// Germs of global invertibles.
    InvertiblesAction,
    IsoInterior,
    GeneratedBy(Vec<Germ>),
}

impl fmt::Display for SubgroupoidSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubgroupoidSpec::UnitSpace => write!(f, "units"),
            SubgroupoidSpec::InvertiblesAction => write!(f, "invertibles"),
            SubgroupoidSpec::IsoInterior => write!(f, "iso-interior"),
            SubgroupoidSpec::GeneratedBy(g) => write!(f, "generated({})", g.len()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Tri {
    Yes,
    No,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    pub verdict: Tri,
    pub detail: String,
}

impl Membership {
    fn new(verdict: Tri, detail: impl Into<String>) -> Self {
        Membership { verdict, detail: detail.into() }
    }
}

pub fn in_subgroupoid(cat: &Category, g: &Germ, h: &SubgroupoidSpec, budget: u64) -> Membership {
    let c = &g.chi.c;
    let v = g.value(cat);
    match h {
        SubgroupoidSpec::UnitSpace => {
            if v == *c {
                Membership::new(Tri::Yes, "s(c) = c")
            } else {
                Membership::new(Tri::No, format!("s(c) = {} ≠ {}", cat.show(&v), cat.show(c)))
            }
        }
        SubgroupoidSpec::InvertiblesAction => match cat.solve_unit(c, &v) {
            Some(u) => Membership::new(Tri::Yes, format!("equals the germ of {}", cat.show(&u))),
            None => Membership::new(Tri::No, format!("no invertible u with u·{} = {}", cat.show(c), cat.show(&v))),
        },
        SubgroupoidSpec::IsoInterior => match in_iso_interior(cat, g, budget) {
            IsoVerdict::Yes(e) => Membership::new(Tri::Yes, format!("fixes every character of {}", e.show(cat))),
            IsoVerdict::No(NoCertificate::NotIsotropy { from, to }) => {
                Membership::new(Tri::No, format!("moves chi{} to chi{}", cat.show(&from), cat.show(&to)))
            }
            IsoVerdict::No(NoCertificate::MovedPoints { rule, .. }) => Membership::new(Tri::No, rule),
            IsoVerdict::Unknown(why) => Membership::new(Tri::Unknown, why),
        },
        SubgroupoidSpec::GeneratedBy(gens) => generated_membership(cat, g, gens, budget as usize),
    }
}

fn generated_membership(cat: &Category, g: &Germ, gens: &[Germ], budget: usize) -> Membership {
    let target = g.key(cat);
    let mut letters: Vec<Germ> = gens.to_vec();
    letters.extend(gens.iter().map(|x| germ_inverse(cat, x)));
    let mut seen: BTreeMap<(Arrow, Arrow), Germ> = BTreeMap::new();
    let mut queue = VecDeque::new();
    for x in &letters {
        for y in [x.clone(), germ_compose(cat, &germ_inverse(cat, x), x).expect("composable")] {
            if seen.insert(y.key(cat), y.clone()).is_none() {
                queue.push_back(y);
            }
        }
    }
    while let Some(x) = queue.pop_front() {
        if seen.len() > budget {
            return Membership::new(Tri::Unknown, format!("closure exceeded {budget} germs"));
        }
        for l in &letters {
            if let Ok(y) = germ_compose(cat, l, &x) {
                if seen.insert(y.key(cat), y.clone()).is_none() {
                    queue.push_back(y);
                }
            }
        }
    }
    if seen.contains_key(&target) {
        Membership::new(Tri::Yes, "found in the generated closure")
    } else {
        Membership::new(Tri::No, format!("closure has {} germs, none equal", seen.len()))
    }
}

#[derive(Clone, Debug)]
pub struct RtpCertificate {
    pub bisection: Bisection,
    pub subgroupoid: usize,
    /// Isotropy elements and their images under `Ad_Γ`.
    pub checked: Vec<(Germ, Germ)>,
}

#[derive(Clone, Debug)]
pub struct RtpFailure {
    /// `(family index, isotropy element, reason)` for the first miss in each candidate.
    pub misses: Vec<(usize, Germ, String)>,
}

/// Certificate that `Ad_Γ` carries the isotropy at `χ` into a member of the family,
/// with `Γ` the canonical bisection.
pub fn rtp_witness(
    cat: &Category,
    chi: &PrincipalCharacter,
    family: &[SubgroupoidSpec],
    budget: u64,
) -> std::result::Result<RtpCertificate, RtpFailure> {
    rtp_witness_with(cat, chi, &Bisection::canonical(cat, &chi.c), family, budget)
}

pub fn rtp_witness_with(
    cat: &Category,
    chi: &PrincipalCharacter,
    gamma: &Bisection,
    family: &[SubgroupoidSpec],
    budget: u64,
) -> std::result::Result<RtpCertificate, RtpFailure> {
    let iso = match isotropy_at(cat, chi) {
        Ok(iso) => iso,
        Err(e) => return Err(RtpFailure { misses: vec![(0, Germ::unit(cat, chi), e.to_string())] }),
    };
    let elements = iso.elements.unwrap_or(iso.generators);
    let mut misses = Vec::new();
    'family: for (k, h) in family.iter().enumerate() {
        let mut checked = Vec::new();
        for g in &elements {
            let image = match ad_bisection(cat, gamma, g) {
                Ok(x) => x,
                Err(e) => {
                    misses.push((k, g.clone(), e.to_string()));
                    continue 'family;
                }
            };
            let m = in_subgroupoid(cat, &image, h, budget);
            if m.verdict != Tri::Yes {
                misses.push((k, g.clone(), m.detail));
                continue 'family;
            }
            checked.push((g.clone(), image));
        }
        return Ok(RtpCertificate { bisection: gamma.clone(), subgroupoid: k, checked });
    }
    Err(RtpFailure { misses })
}

/// `(k,1)·χ_p = χ_p` iff the multiplicative part of `p` divides `k`.
pub fn znx_unit_fixes(cat: &Category, k: i64, p: &Arrow) -> bool {
    let Arrow::ZNx { mult, .. } = p else { return false };
    let u = cat.pair(k, 1).expect("valid");
    let moved = cat.compose(&u, p).expect("monoid");
    let fixed = cat.same_ideal(&moved, p);
    debug_assert_eq!(fixed, num_bigint::BigInt::from(k).is_multiple_of(&num_bigint::BigInt::from(mult.clone())));
    fixed
}
