//! The left inverse hull: zigzag words of left multiplications and their inverses,
//! their partial-bijection semantics, and lcm normal forms.

mod boolean;

pub use boolean::{image, preimage, BooleanIdeal, ExtendedHullElement, Term};

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lcsc::{Arrow, Bounds, Category, LcscError, ObjectId};

/// Longest word kept verbatim; longer products are stored via their normal form.
pub const MAX_WORD_LEN: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum HullError {
    #[error("point outside the domain")]
    OutsideDomain,
    #[error("word of length {0} exceeds the cap of {MAX_WORD_LEN} and has no normal form")]
    WordTooLong(usize),
    #[error("no lcm normal form: some intersection of principal ideals is not principal")]
    NoNormalForm,
    #[error("letters {0} and {1} are not composable")]
    NotComposable(usize, usize),
    #[error(transparent)]
    Lcsc(#[from] LcscError),
}

pub type Result<T> = std::result::Result<T, HullError>;

/// `Mul(c)` is `x ↦ cx`; `Inv(d)` is its inverse `dx ↦ x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    Mul(Arrow),
    Inv(Arrow),
}

impl Letter {
    fn input(&self, cat: &Category) -> ObjectId {
        match self {
            Letter::Mul(c) => cat.source(c),
            Letter::Inv(d) => cat.target(d),
        }
    }

    fn output(&self, cat: &Category) -> ObjectId {
        match self {
            Letter::Mul(c) => cat.target(c),
            Letter::Inv(d) => cat.source(d),
        }
    }

    fn apply(&self, cat: &Category, x: &Arrow) -> Option<Arrow> {
        match self {
            Letter::Mul(c) => cat.compose(c, x).ok(),
            Letter::Inv(d) => cat.divide_left(d, x).ok(),
        }
    }

    fn inverse(&self) -> Letter {
        match self {
            Letter::Mul(c) => Letter::Inv(c.clone()),
            Letter::Inv(d) => Letter::Mul(d.clone()),
        }
    }
}

/// `Span { range: c, domain: d }` is `c∘d⁻¹ : dx ↦ cx`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum NormalForm {
    Span { range: Arrow, domain: Arrow },
    Zero,
}

impl NormalForm {
    pub fn apply(&self, cat: &Category, x: &Arrow) -> Option<Arrow> {
        match self {
            NormalForm::Zero => None,
            NormalForm::Span { range, domain } => {
                let r = cat.divide_left(domain, x).ok()?;
                cat.compose(range, &r).ok()
            }
        }
    }

    fn inverse(&self, cat: &Category) -> NormalForm {
        match self {
            NormalForm::Zero => NormalForm::Zero,
            NormalForm::Span { range, domain } => span(cat, domain.clone(), range.clone()),
        }
    }

    fn word(&self) -> Vec<Letter> {
        match self {
            NormalForm::Zero => Vec::new(),
            NormalForm::Span { range, domain } => vec![Letter::Mul(range.clone()), Letter::Inv(domain.clone())],
        }
    }
}

/// `(c, d)` with `d` replaced by its canonical unit translate.
fn span(cat: &Category, range: Arrow, domain: Arrow) -> NormalForm {
    let canon = cat.canonical(&domain);
    let u = cat.divide_left(&domain, &canon).expect("canonical generates the same ideal");
    let range = cat.compose(&range, &u).expect("source(range) = source(domain)");
    NormalForm::Span { range, domain: canon }
}

/// `(c,d)∘(c′,d′) = (cα, d′β)` where `dC ∩ c′C = wC`, `w = dα = c′β`.
/// `Err` when the intersection needs several generators, `Ok(zero_witness)` alongside.
fn compose_normal(cat: &Category, s: &NormalForm, t: &NormalForm) -> Result<(NormalForm, Option<Vec<Letter>>)> {
    let (NormalForm::Span { range: c, domain: d }, NormalForm::Span { range: c2, domain: d2 }) = (s, t) else {
        return Ok((NormalForm::Zero, None));
    };
    let gens = cat.meet_generators(d, c2);
    match gens.as_slice() {
        [] => Ok((NormalForm::Zero, Some(vec![Letter::Inv(d.clone()), Letter::Mul(c2.clone())]))),
        [w] => {
            let alpha = cat.divide_left(d, w)?;
            let beta = cat.divide_left(c2, w)?;
            Ok((span(cat, cat.compose(c, &alpha)?, cat.compose(d2, &beta)?), None))
        }
        _ => Err(HullError::NoNormalForm),
    }
}

/// An element of the left inverse hull.
///
/// `word` is read right to left: `[Mul(a), Inv(b)]` is `a∘b⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HullElement {
    word: Vec<Letter>,
    normal: Option<NormalForm>,
}

impl HullElement {
    pub fn mul(cat: &Category, c: &Arrow) -> Self {
        HullElement {
            word: vec![Letter::Mul(c.clone())],
            normal: Some(span(cat, c.clone(), cat.identity(cat.source(c)))),
        }
    }

    pub fn inv(cat: &Category, d: &Arrow) -> Self {
        HullElement::mul(cat, d).invert(cat)
    }

    pub fn identity(cat: &Category, obj: ObjectId) -> Self {
        HullElement::mul(cat, &cat.identity(obj))
    }

    /// The idempotent `cc⁻¹`, identity on `cC`.
    pub fn idempotent(cat: &Category, c: &Arrow) -> Self {
        HullElement::from_normal(cat, &span(cat, c.clone(), c.clone()))
    }

    pub fn zero() -> Self {
        HullElement { word: Vec::new(), normal: Some(NormalForm::Zero) }
    }

    pub fn from_normal(cat: &Category, n: &NormalForm) -> Self {
        let n = match n {
            NormalForm::Span { range, domain } => span(cat, range.clone(), domain.clone()),
            NormalForm::Zero => NormalForm::Zero,
        };
        HullElement { word: n.word(), normal: Some(n) }
    }

    /// Builds an element from a word, checking that adjacent letters meet at a common object.
    pub fn from_word(cat: &Category, word: Vec<Letter>) -> Result<Self> {
        if word.is_empty() {
            return Ok(HullElement::identity(cat, ObjectId(0)));
        }
        for (i, l) in word.iter().enumerate() {
            let a = match l {
                Letter::Mul(a) | Letter::Inv(a) => a,
            };
            cat.check(a)?;
            if i > 0 && word[i - 1].input(cat) != l.output(cat) {
                return Err(HullError::NotComposable(i - 1, i));
            }
        }
        let mut acc: Option<HullElement> = None;
        for l in word.iter().rev() {
            let h = match l {
                Letter::Mul(c) => HullElement::mul(cat, c),
                Letter::Inv(d) => HullElement::inv(cat, d),
            };
            acc = Some(match acc {
                None => h,
                Some(t) => h.compose_unbounded(cat, &t),
            });
        }
        let mut out = acc.expect("nonempty word");
        if word.len() <= MAX_WORD_LEN {
            out.word = word;
        } else if out.normal.is_some() {
            out.word = out.compressed_word();
        } else {
            return Err(HullError::WordTooLong(word.len()));
        }
        Ok(out)
    }

    pub fn word(&self) -> &[Letter] {
        &self.word
    }

    pub fn normal(&self) -> Option<&NormalForm> {
        self.normal.as_ref()
    }

    /// Zero-ness; exact whenever a normal form exists or the backend is finite.
    pub fn is_zero(&self, cat: &Category) -> bool {
        match &self.normal {
            Some(n) => *n == NormalForm::Zero,
            None => cat.as_table().is_some_and(|t| (0..t.len()).all(|i| self.apply(cat, &Arrow::Table(i)).is_none())),
        }
    }

    pub fn apply(&self, cat: &Category, x: &Arrow) -> Option<Arrow> {
        if let Some(n) = &self.normal {
            return n.apply(cat, x);
        }
        self.apply_word(cat, x)
    }

    /// Letter-by-letter evaluation, ignoring the normal form.
    pub fn apply_word(&self, cat: &Category, x: &Arrow) -> Option<Arrow> {
        let mut y = x.clone();
        for l in self.word.iter().rev() {
            y = l.apply(cat, &y)?;
        }
        Some(y)
    }

    pub fn try_apply(&self, cat: &Category, x: &Arrow) -> Result<Arrow> {
        self.apply(cat, x).ok_or(HullError::OutsideDomain)
    }

    pub fn invert(&self, cat: &Category) -> Self {
        HullElement {
            word: self.word.iter().rev().map(Letter::inverse).collect(),
            normal: self.normal.as_ref().map(|n| n.inverse(cat)),
        }
    }

    fn compressed_word(&self) -> Vec<Letter> {
        match &self.normal {
            Some(n) => n.word(),
            None => self.word.clone(),
        }
    }

    fn compose_unbounded(&self, cat: &Category, t: &HullElement) -> HullElement {
        let mut word = self.word.clone();
        word.extend(t.word.iter().cloned());
        let normal = match (&self.normal, &t.normal) {
            (Some(NormalForm::Zero), _) => return self.clone(),
            (_, Some(NormalForm::Zero)) => return t.clone(),
            (Some(a), Some(b)) => match compose_normal(cat, a, b) {
                Ok((n, witness)) => {
                    if let Some(w) = witness {
                        return HullElement { word: w, normal: Some(n) };
                    }
                    Some(n)
                }
                Err(_) => None,
            },
            _ => None,
        };
        HullElement { word, normal }
    }

    /// `self ∘ t`.
    pub fn compose(&self, cat: &Category, t: &HullElement) -> Result<HullElement> {
        let mut out = self.compose_unbounded(cat, t);
        if out.word.len() > MAX_WORD_LEN {
            if out.normal.is_none() {
                return Err(HullError::WordTooLong(out.word.len()));
            }
            out.word = out.compressed_word();
        }
        Ok(out)
    }

    /// The normal form, recomputed from the word.
    pub fn normalize(&self, cat: &Category) -> Result<NormalForm> {
        let mut acc = span(cat, cat.identity(ObjectId(0)), cat.identity(ObjectId(0)));
        let mut first = true;
        for l in self.word.iter().rev() {
            let n = match l {
                Letter::Mul(c) => span(cat, c.clone(), cat.identity(cat.source(c))),
                Letter::Inv(d) => span(cat, cat.identity(cat.source(d)), d.clone()),
            };
            acc = if first { n } else { compose_normal(cat, &n, &acc)?.0 };
            first = false;
        }
        if first {
            return self.normal.clone().ok_or(HullError::NoNormalForm);
        }
        Ok(acc)
    }

    /// The domain `s⁻¹s` as a set.
    pub fn domain(&self, cat: &Category) -> BooleanIdeal {
        boolean::domain_of(cat, self)
    }

    /// `s∘s = s`.
    pub fn is_idempotent(&self, cat: &Category, bound: u64) -> bool {
        match self.compose(cat, self) {
            Ok(ss) => hull_eq(cat, &ss, self, Bounds::uniform(bound)).is_equal(),
            Err(_) => false,
        }
    }

    pub fn show(&self, cat: &Category) -> String {
        if self.word.is_empty() {
            return "0".to_string();
        }
        show_word(cat, &self.word)
    }
}

pub fn show_letter(cat: &Category, l: &Letter) -> String {
    match l {
        Letter::Mul(c) => cat.show(c),
        Letter::Inv(d) => format!("inv({})", cat.show(d)),
    }
}

pub fn show_word(cat: &Category, word: &[Letter]) -> String {
    let mut out = String::new();
    for (i, l) in word.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{}", show_letter(cat, l));
    }
    out
}

pub fn show_normal(cat: &Category, n: &NormalForm) -> String {
    match n {
        NormalForm::Zero => "0".to_string(),
        NormalForm::Span { range, domain } => format!("{} inv({})", cat.show(range), cat.show(domain)),
    }
}

/// Anything that acts as a partial bijection of the arrows.
pub trait PartialMap {
    fn apply_to(&self, cat: &Category, x: &Arrow) -> Option<Arrow>;
}

impl PartialMap for HullElement {
    fn apply_to(&self, cat: &Category, x: &Arrow) -> Option<Arrow> {
        self.apply(cat, x)
    }
}

impl PartialMap for ExtendedHullElement {
    fn apply_to(&self, cat: &Category, x: &Arrow) -> Option<Arrow> {
        self.apply(cat, x)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum HullEq {
    Equal,
    /// A point where the two maps differ, including definedness.
    Distinct(Arrow),
    VerifiedUpTo(u64),
}

impl HullEq {
    pub fn is_equal(&self) -> bool {
        matches!(self, HullEq::Equal)
    }
}

/// Semantic equality of partial bijections.
///
/// Exact when both sides carry normal forms or the backend is finite; otherwise compared on the box.
pub fn hull_eq(cat: &Category, s: &HullElement, t: &HullElement, bounds: Bounds) -> HullEq {
    match (&s.normal, &t.normal) {
        (Some(a), Some(b)) => normal_eq(cat, a, b),
        _ => {
            let finite = cat.is_finite();
            for x in cat.arrows_in_box(bounds) {
                if s.apply(cat, &x) != t.apply(cat, &x) {
                    return HullEq::Distinct(x);
                }
            }
            if finite {
                HullEq::Equal
            } else {
                HullEq::VerifiedUpTo(bounds.mult)
            }
        }
    }
}

/// `(c,d) = (c′,d′)` iff `u = d\d′` is invertible and `c′ = cu`.
fn normal_eq(cat: &Category, a: &NormalForm, b: &NormalForm) -> HullEq {
    match (a, b) {
        (NormalForm::Zero, NormalForm::Zero) => HullEq::Equal,
        (NormalForm::Zero, NormalForm::Span { domain, .. }) | (NormalForm::Span { domain, .. }, NormalForm::Zero) => {
            HullEq::Distinct(domain.clone())
        }
        (NormalForm::Span { range: c, domain: d }, NormalForm::Span { range: c2, domain: d2 }) => {
            if let Ok(u) = cat.divide_left(d, d2) {
                if cat.is_unit(&u) {
                    return if cat.compose(c, &u).ok().as_ref() == Some(c2) {
                        HullEq::Equal
                    } else {
                        HullEq::Distinct(d2.clone())
                    };
                }
                return HullEq::Distinct(d.clone());
            }
            HullEq::Distinct(d2.clone())
        }
    }
}

/// `e∧f` for principal idempotents: the generator of `eC ∩ fC`, `None` for zero.
pub fn idempotent_meet(cat: &Category, e: &Arrow, f: &Arrow) -> Result<Option<Arrow>> {
    let gens = cat.meet_generators(e, f);
    match gens.len() {
        0 => Ok(None),
        1 => Ok(gens.into_iter().next()),
        _ => Err(HullError::NoNormalForm),
    }
}

/// `e ≤ f` for principal idempotents, i.e. `eC ⊆ fC`.
pub fn idempotent_le(cat: &Category, e: &Arrow, f: &Arrow) -> bool {
    cat.divides(f, e)
}
