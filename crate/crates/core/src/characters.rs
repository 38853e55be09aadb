//! Principal semicharacters `χ_c`, basic open sets, and join preservation.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hull::{BooleanIdeal, HullElement, PartialMap};
use crate::lcsc::{Arrow, Category};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CharacterError {
    #[error("the representative lies outside the domain of the acting element")]
    OutsideDomain,
    #[error("relation {0} does not hold set-theoretically")]
    BadRelation(usize),
}

/// `χ_c(B) = 1` iff `c ∈ B`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrincipalCharacter {
    pub c: Arrow,
}

impl PrincipalCharacter {
    pub fn new(c: Arrow) -> Self {
        PrincipalCharacter { c }
    }

    /// The least unit translate of the representative.
    pub fn canonical(&self, cat: &Category) -> PrincipalCharacter {
        PrincipalCharacter { c: cat.canonical(&self.c) }
    }

    pub fn show(&self, cat: &Category) -> String {
        format!("chi{}", wrap(&cat.show(&self.c)))
    }
}

fn wrap(s: &str) -> String {
    if s.starts_with('(') {
        s.to_string()
    } else {
        format!("({s})")
    }
}

pub fn char_eval(cat: &Category, chi: &PrincipalCharacter, b: &BooleanIdeal) -> bool {
    b.contains(cat, &chi.c)
}

/// `s·χ_c = χ_{s(c)}`.
pub fn char_act(cat: &Category, s: &impl PartialMap, chi: &PrincipalCharacter) -> Result<PrincipalCharacter, CharacterError> {
    s.apply_to(cat, &chi.c).map(PrincipalCharacter::new).ok_or(CharacterError::OutsideDomain)
}

/// Mutual divisibility of the representatives.
pub fn char_eq(cat: &Category, p: &PrincipalCharacter, q: &PrincipalCharacter) -> bool {
    cat.same_ideal(&p.c, &q.c)
}

/// `{χ : χ(e) = 1, χ(f) = 0 for f ∈ forbidden}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasicOpen {
    pub e: BooleanIdeal,
    pub forbidden: Vec<BooleanIdeal>,
}

impl BasicOpen {
    pub fn new(e: BooleanIdeal, forbidden: Vec<BooleanIdeal>) -> Self {
        BasicOpen { e, forbidden }
    }

    pub fn of(e: BooleanIdeal) -> Self {
        BasicOpen { e, forbidden: Vec::new() }
    }

    pub fn contains(&self, cat: &Category, chi: &PrincipalCharacter) -> bool {
        char_eval(cat, chi, &self.e) && !self.forbidden.iter().any(|f| char_eval(cat, chi, f))
    }

    /// The principal characters in the set are the points of `e \ ∪F`.
    pub fn principal_points(&self, cat: &Category) -> BooleanIdeal {
        self.forbidden.iter().fold(self.e.clone(), |acc, f| acc.difference(cat, f))
    }

    pub fn show(&self, cat: &Category) -> String {
        let mut s = format!("in: {}", self.e.show(cat));
        if !self.forbidden.is_empty() {
            let parts: Vec<String> = self.forbidden.iter().map(|f| f.show(cat)).collect();
            s.push_str(&format!(", not: [{}]", parts.join(", ")));
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FindOutcome {
    Found(PrincipalCharacter),
    /// `e \ ∪F` is empty; decided exactly by the term emptiness test.
    EmptyVerified,
}

/// A principal character inside a basic open set, when there is one.
pub fn find_principal_in(cat: &Category, u: &BasicOpen) -> FindOutcome {
    match u.principal_points(cat).some_element(cat) {
        Some(c) => FindOutcome::Found(PrincipalCharacter::new(c)),
        None => FindOutcome::EmptyVerified,
    }
}

/// A {0,1}-valued function on idempotents, each idempotent given by its domain.
pub trait Semicharacter {
    fn value(&self, cat: &Category, e: &BooleanIdeal) -> bool;
}

impl Semicharacter for PrincipalCharacter {
    fn value(&self, cat: &Category, e: &BooleanIdeal) -> bool {
        char_eval(cat, self, e)
    }
}

/// `χ(e) = [f ⊆ e]`.
#[derive(Clone, Debug)]
pub struct FilterSemicharacter {
    pub f: BooleanIdeal,
}

impl Semicharacter for FilterSemicharacter {
    fn value(&self, cat: &Category, e: &BooleanIdeal) -> bool {
        self.f.is_subset(cat, e)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ConstantSemicharacter(pub bool);

impl Semicharacter for ConstantSemicharacter {
    fn value(&self, _: &Category, _: &BooleanIdeal) -> bool {
        self.0
    }
}

/// `join = parts[0] ∨ … ∨ parts[k-1]` among idempotents.
#[derive(Clone, Debug)]
pub struct JoinRelation {
    pub join: BooleanIdeal,
    pub parts: Vec<BooleanIdeal>,
}

impl JoinRelation {
    pub fn holds(&self, cat: &Category) -> bool {
        let union = self.parts.iter().fold(BooleanIdeal::empty(), |acc, p| acc.union(cat, p));
        union.set_eq(cat, &self.join)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum JoinVerdict {
    Pass,
    /// Index of the first relation with `χ(f) ≠ max χ(e_i)`.
    Fail(usize),
}

pub fn joins_preserved_check(
    cat: &Category,
    chi: &dyn Semicharacter,
    relations: &[JoinRelation],
) -> Result<JoinVerdict, CharacterError> {
    for (i, r) in relations.iter().enumerate() {
        if !r.holds(cat) {
            return Err(CharacterError::BadRelation(i));
        }
    }
    for (i, r) in relations.iter().enumerate() {
        let rhs = r.parts.iter().any(|p| chi.value(cat, p));
        if chi.value(cat, &r.join) != rhs {
            return Ok(JoinVerdict::Fail(i));
        }
    }
    Ok(JoinVerdict::Pass)
}

/// Join relations among the idempotents `cc⁻¹·dd⁻¹` of a finite table: every product domain
/// that is a union of principal ideals gives one relation.
pub fn table_join_relations(cat: &Category) -> Vec<JoinRelation> {
    let Some(t) = cat.as_table() else { return Vec::new() };
    let mut out = Vec::new();
    for a in 0..t.len() {
        for b in a..t.len() {
            let gens = t.meet_generators(a, b);
            let join = BooleanIdeal::principal(cat, &Arrow::Table(a))
                .intersect(cat, &BooleanIdeal::principal(cat, &Arrow::Table(b)));
            let parts = gens.iter().map(|g| BooleanIdeal::principal(cat, &Arrow::Table(*g))).collect();
            out.push(JoinRelation { join, parts });
        }
    }
    out
}

/// `χ(s⁻¹es)` as a set: `s⁻¹es` is the identity on the preimage of `e`.
pub fn conjugate_idempotent(cat: &Category, s: &HullElement, e: &BooleanIdeal) -> BooleanIdeal {
    crate::hull::preimage(cat, s, e)
}
