//! The Boolean closure of the constructible domains: finite unions of
//! differences `gC \ (f₁C ∪ … ∪ f_kC)`.

use std::collections::BTreeSet;

use super::{HullElement, HullError, NormalForm, Result};
use crate::lcsc::{Arrow, Category, ObjectId};

/// `generator·C` minus the union of `excluded·C`; each excluded ideal lies inside the generator's.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    pub generator: Arrow,
    pub excluded: Vec<Arrow>,
}

impl Term {
    pub fn contains(&self, cat: &Category, x: &Arrow) -> bool {
        cat.divides(&self.generator, x) && !self.excluded.iter().any(|f| cat.divides(f, x))
    }

    /// A term is empty iff its generator is excluded.
    pub fn is_empty(&self, cat: &Category) -> bool {
        self.excluded.iter().any(|f| cat.divides(f, &self.generator))
    }

    fn minus_principal(&self, cat: &Category, g: &Arrow) -> Term {
        let mut excluded = self.excluded.clone();
        excluded.extend(cat.meet_generators(&self.generator, g));
        Term { generator: self.generator.clone(), excluded }
    }

    fn meet(&self, cat: &Category, other: &Term) -> Vec<Term> {
        cat.meet_generators(&self.generator, &other.generator)
            .into_iter()
            .map(|w| {
                let excluded = self
                    .excluded
                    .iter()
                    .chain(&other.excluded)
                    .flat_map(|f| cat.meet_generators(&w, f))
                    .collect();
                Term { generator: w, excluded }
            })
            .collect()
    }

    /// Exact test of `self ⊆ other`.
    fn is_subset(&self, cat: &Category, other: &Term) -> bool {
        if !self.minus_principal(cat, &other.generator).is_empty(cat) {
            return false;
        }
        other.excluded.iter().all(|k| {
            cat.meet_generators(&self.generator, k)
                .iter()
                .all(|w| self.excluded.iter().any(|f| cat.divides(f, w)))
        })
    }

    fn tidy(&self, cat: &Category) -> Term {
        let generator = cat.canonical(&self.generator);
        let mut excluded: Vec<Arrow> = self
            .excluded
            .iter()
            .flat_map(|f| cat.meet_generators(&generator, f))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        // drop f when fC ⊆ f′C for another kept f′
        let mut keep = vec![true; excluded.len()];
        for i in 0..excluded.len() {
            for j in 0..excluded.len() {
                if i != j && keep[j] && cat.divides(&excluded[j], &excluded[i]) {
                    keep[i] = false;
                    break;
                }
            }
        }
        let mut it = keep.into_iter();
        excluded.retain(|_| it.next().unwrap_or(true));
        Term { generator, excluded }
    }
}

/// An element of the Boolean closure, kept as a union of differences.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BooleanIdeal {
    terms: Vec<Term>,
}

impl BooleanIdeal {
    pub fn empty() -> Self {
        BooleanIdeal::default()
    }

    pub fn principal(cat: &Category, g: &Arrow) -> Self {
        BooleanIdeal { terms: vec![Term { generator: cat.canonical(g), excluded: Vec::new() }] }
    }

    /// All arrows of the category.
    pub fn full(cat: &Category) -> Self {
        let terms = cat
            .objects()
            .into_iter()
            .map(|o| Term { generator: cat.identity(o), excluded: Vec::new() })
            .collect();
        BooleanIdeal { terms }
    }

    /// Arrows with target `obj`.
    pub fn at_object(cat: &Category, obj: ObjectId) -> Self {
        BooleanIdeal::principal(cat, &cat.identity(obj))
    }

    pub fn difference_of(cat: &Category, g: &Arrow, excluded: &[Arrow]) -> Self {
        let t = Term { generator: g.clone(), excluded: excluded.to_vec() };
        BooleanIdeal { terms: vec![t] }.renormalized(cat)
    }

    pub fn from_terms(cat: &Category, terms: Vec<Term>) -> Self {
        BooleanIdeal { terms }.renormalized(cat)
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn contains(&self, cat: &Category, x: &Arrow) -> bool {
        self.terms.iter().any(|t| t.contains(cat, x))
    }

    pub fn is_empty(&self, cat: &Category) -> bool {
        self.terms.iter().all(|t| t.is_empty(cat))
    }

    /// The generator of some nonempty term; a member of the set.
    pub fn some_element(&self, cat: &Category) -> Option<Arrow> {
        self.terms.iter().find(|t| !t.is_empty(cat)).map(|t| t.generator.clone())
    }

    pub fn union(&self, cat: &Category, other: &BooleanIdeal) -> BooleanIdeal {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        BooleanIdeal { terms }.renormalized(cat)
    }

    pub fn intersect(&self, cat: &Category, other: &BooleanIdeal) -> BooleanIdeal {
        let terms = self
            .terms
            .iter()
            .flat_map(|a| other.terms.iter().flat_map(move |b| a.meet(cat, b)))
            .collect();
        BooleanIdeal { terms }.renormalized(cat)
    }

    fn minus_principal(&self, cat: &Category, g: &Arrow) -> BooleanIdeal {
        BooleanIdeal { terms: self.terms.iter().map(|t| t.minus_principal(cat, g)).collect() }
    }

    /// `A \ (g \ G) = (A \ gC) ∪ ⋃_{h∈G} (A ∩ hC)`, term by term.
    pub fn difference(&self, cat: &Category, other: &BooleanIdeal) -> BooleanIdeal {
        let mut acc = self.clone();
        for t in &other.terms {
            let mut next = acc.minus_principal(cat, &t.generator);
            for h in &t.excluded {
                next.terms.extend(acc.intersect(cat, &BooleanIdeal::principal(cat, h)).terms);
            }
            acc = next.renormalized(cat);
        }
        acc
    }

    pub fn is_subset(&self, cat: &Category, other: &BooleanIdeal) -> bool {
        self.difference(cat, other).is_empty(cat)
    }

    pub fn set_eq(&self, cat: &Category, other: &BooleanIdeal) -> bool {
        self.is_subset(cat, other) && other.is_subset(cat, self)
    }

    /// A point of the symmetric difference, if any.
    pub fn distinguishing_point(&self, cat: &Category, other: &BooleanIdeal) -> Option<Arrow> {
        self.difference(cat, other)
            .some_element(cat)
            .or_else(|| other.difference(cat, self).some_element(cat))
    }

    /// Drops empty terms, redundant exclusions and terms absorbed by another term.
    pub fn renormalized(self, cat: &Category) -> BooleanIdeal {
        let terms: BTreeSet<Term> = self.terms.iter().map(|t| t.tidy(cat)).filter(|t| !t.is_empty(cat)).collect();
        let terms: Vec<Term> = terms.into_iter().collect();
        let mut keep = vec![true; terms.len()];
        for i in 0..terms.len() {
            for j in 0..terms.len() {
                if i != j && keep[j] && terms[i].is_subset(cat, &terms[j]) {
                    keep[i] = false;
                    break;
                }
            }
        }
        BooleanIdeal { terms: terms.into_iter().zip(keep).filter_map(|(t, k)| k.then_some(t)).collect() }
    }

    /// A finite set of table arrows as a Boolean ideal; `None` unless the set is closed under
    /// right multiplication by invertibles (every element of the closure is).
    pub fn from_finite_set(cat: &Category, set: &BTreeSet<usize>) -> Option<BooleanIdeal> {
        let t = cat.as_table()?;
        for &x in set {
            for u in t.units_at(t.source(x)) {
                if !set.contains(&t.compose(x, u)?) {
                    return None;
                }
            }
        }
        let terms = set
            .iter()
            .map(|&x| {
                let excluded = t
                    .ideal(x)
                    .into_iter()
                    .enumerate()
                    .filter(|&(y, m)| m && !set.contains(&y))
                    .map(|(y, _)| Arrow::Table(y))
                    .collect();
                Term { generator: Arrow::Table(x), excluded }
            })
            .collect();
        Some(BooleanIdeal { terms }.renormalized(cat))
    }

    /// Members among the arrows of a finite backend.
    pub fn members(&self, cat: &Category) -> Option<BTreeSet<usize>> {
        let t = cat.as_table()?;
        Some((0..t.len()).filter(|&i| self.contains(cat, &Arrow::Table(i))).collect())
    }

    pub fn show(&self, cat: &Category) -> String {
        if self.terms.is_empty() {
            return "empty".into();
        }
        self.terms
            .iter()
            .map(|t| {
                let mut s = format!("{}C", cat.show(&t.generator));
                for f in &t.excluded {
                    s.push_str(&format!(" \\ {}C", cat.show(f)));
                }
                s
            })
            .collect::<Vec<_>>()
            .join(" | ")
    }
}

pub(super) fn domain_of(cat: &Category, s: &HullElement) -> BooleanIdeal {
    match s.normal() {
        Some(NormalForm::Zero) => BooleanIdeal::empty(),
        Some(NormalForm::Span { domain, .. }) => BooleanIdeal::principal(cat, domain),
        None => {
            let t = cat.as_table().expect("elements without normal form only arise on tables");
            let set = (0..t.len()).filter(|&i| s.apply(cat, &Arrow::Table(i)).is_some()).collect();
            BooleanIdeal::from_finite_set(cat, &set).expect("domains are right ideals")
        }
    }
}

/// `{x ∈ dom s : s(x) ∈ B}`.
pub fn preimage(cat: &Category, s: &HullElement, b: &BooleanIdeal) -> BooleanIdeal {
    match s.normal() {
        Some(NormalForm::Zero) => BooleanIdeal::empty(),
        Some(NormalForm::Span { range, domain }) => {
            // s⁻¹(gC) = ⋃ (d·α)C over cC ∩ gC = ⋃ (c·α)C
            let pre = |g: &Arrow| {
                let terms = cat
                    .meet_generators(range, g)
                    .into_iter()
                    .map(|w| {
                        let alpha = cat.divide_left(range, &w).expect("w ∈ cC");
                        Term { generator: cat.compose(domain, &alpha).expect("composable"), excluded: Vec::new() }
                    })
                    .collect();
                BooleanIdeal { terms }.renormalized(cat)
            };
            let mut acc = BooleanIdeal::empty();
            for t in b.terms() {
                let mut piece = pre(&t.generator);
                for f in &t.excluded {
                    piece = piece.difference(cat, &pre(f));
                }
                acc = acc.union(cat, &piece);
            }
            acc
        }
        None => {
            let t = cat.as_table().expect("elements without normal form only arise on tables");
            let set = (0..t.len())
                .filter(|&i| s.apply(cat, &Arrow::Table(i)).is_some_and(|y| b.contains(cat, &y)))
                .collect();
            BooleanIdeal::from_finite_set(cat, &set).expect("preimages stay in the Boolean closure")
        }
    }
}

/// `s(B ∩ dom s)`.
pub fn image(cat: &Category, s: &HullElement, b: &BooleanIdeal) -> BooleanIdeal {
    preimage(cat, &s.invert(cat), b)
}

/// `s·e`: a hull element restricted to a Boolean ideal inside its domain.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtendedHullElement {
    pub s: HullElement,
    pub e: BooleanIdeal,
}

impl ExtendedHullElement {
    pub fn new(cat: &Category, s: HullElement, e: &BooleanIdeal) -> Self {
        let e = e.intersect(cat, &s.domain(cat));
        ExtendedHullElement { s, e }
    }

    pub fn from_hull(cat: &Category, s: HullElement) -> Self {
        let e = s.domain(cat);
        ExtendedHullElement { s, e }
    }

    pub fn domain(&self) -> &BooleanIdeal {
        &self.e
    }

    pub fn range(&self, cat: &Category) -> BooleanIdeal {
        image(cat, &self.s, &self.e)
    }

    pub fn apply(&self, cat: &Category, x: &Arrow) -> Option<Arrow> {
        if !self.e.contains(cat, x) {
            return None;
        }
        self.s.apply(cat, x)
    }

    pub fn try_apply(&self, cat: &Category, x: &Arrow) -> Result<Arrow> {
        self.apply(cat, x).ok_or(HullError::OutsideDomain)
    }

    pub fn restrict(&self, cat: &Category, b: &BooleanIdeal) -> Self {
        ExtendedHullElement { s: self.s.clone(), e: self.e.intersect(cat, b) }
    }

    /// `self ∘ other`, defined on `other.e ∩ other⁻¹(self.e)`.
    pub fn compose(&self, cat: &Category, other: &ExtendedHullElement) -> Result<Self> {
        let st = self.s.compose(cat, &other.s)?;
        let e = other.e.intersect(cat, &preimage(cat, &other.s, &self.e));
        Ok(ExtendedHullElement::new(cat, st, &e))
    }

    pub fn invert(&self, cat: &Category) -> Self {
        ExtendedHullElement { s: self.s.invert(cat), e: self.range(cat) }
    }

    /// Exact equality: same domain, and agreement at each term generator (domains are right ideals
    /// and `s(pq) = s(p)q`, so agreement at `h` gives agreement on `hC`).
    pub fn eq_witness(&self, cat: &Category, other: &ExtendedHullElement) -> Option<Arrow> {
        if let Some(x) = self.e.distinguishing_point(cat, &other.e) {
            return Some(x);
        }
        self.e
            .terms()
            .iter()
            .map(|t| &t.generator)
            .find(|h| self.s.apply(cat, h) != other.s.apply(cat, h))
            .cloned()
    }

    pub fn show(&self, cat: &Category) -> String {
        format!("{} on {}", self.s.show(cat), self.e.show(cat))
    }
}
