//! Brute-force reference implementations used as ground truth.
//!
//! Nothing here goes through normal forms or Boolean ideal algebra: words are
//! evaluated letter by letter, finite hulls are closed by enumeration, and
//! neighborhoods are scanned point by point.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hull::Letter;
use crate::lcsc::{Arrow, Bounds, Category, FiniteCategory};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("hull closure exceeded {0} elements")]
    SizeLimit(usize),
}

/// A partial injection on the arrows of a finite table, `map[x] = Some(y)` meaning `x ↦ y`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialBijectionTable {
    pub map: Vec<Option<usize>>,
}

impl PartialBijectionTable {
    pub fn left_multiplication(t: &FiniteCategory, c: usize) -> Self {
        PartialBijectionTable { map: (0..t.len()).map(|x| t.compose(c, x)).collect() }
    }

    pub fn from_fn(t: &FiniteCategory, f: impl Fn(usize) -> Option<usize>) -> Self {
        PartialBijectionTable { map: (0..t.len()).map(f).collect() }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        PartialBijectionTable { map: other.map.iter().map(|y| y.and_then(|y| self.map[y])).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut map = vec![None; self.map.len()];
        for (x, y) in self.map.iter().enumerate() {
            if let Some(y) = y {
                map[*y] = Some(x);
            }
        }
        PartialBijectionTable { map }
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.map.iter().flatten().all(|y| seen.insert(*y))
    }

    pub fn is_zero(&self) -> bool {
        self.map.iter().all(Option::is_none)
    }

    pub fn is_idempotent(&self) -> bool {
        self.map.iter().enumerate().all(|(x, y)| y.is_none_or(|y| y == x))
    }

    pub fn domain(&self) -> BTreeSet<usize> {
        self.map.iter().enumerate().filter_map(|(x, y)| y.map(|_| x)).collect()
    }
}

/// The closure of the left multiplications and their inverses under composition.
pub fn enumerate_hull_finite(t: &FiniteCategory, limit: usize) -> Result<Vec<PartialBijectionTable>, OracleError> {
    let mut gens = Vec::new();
    for c in 0..t.len() {
        let l = PartialBijectionTable::left_multiplication(t, c);
        gens.push(l.inverse());
        gens.push(l);
    }
    let mut seen: BTreeSet<PartialBijectionTable> = gens.iter().cloned().collect();
    let mut queue: VecDeque<PartialBijectionTable> = seen.iter().cloned().collect();
    while let Some(s) = queue.pop_front() {
        for g in &gens {
            let gs = g.compose(&s);
            if seen.insert(gs.clone()) {
                if seen.len() > limit {
                    return Err(OracleError::SizeLimit(limit));
                }
                queue.push_back(gs);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// Arrows enumerated for a bounded comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncationBox {
    pub bounds: Bounds,
    pub arrows: Vec<Arrow>,
}

impl TruncationBox {
    pub fn new(cat: &Category, bounds: Bounds) -> Self {
        TruncationBox { bounds, arrows: cat.arrows_in_box(bounds) }
    }
}

/// Letter-by-letter evaluation; table division is a linear scan.
pub fn eval_word(cat: &Category, word: &[Letter], x: &Arrow) -> Option<Arrow> {
    let mut y = x.clone();
    for l in word.iter().rev() {
        y = match l {
            Letter::Mul(c) => cat.compose(c, &y).ok()?,
            Letter::Inv(d) => match (cat.as_table(), d, &y) {
                (Some(t), Arrow::Table(d), Arrow::Table(p)) => {
                    Arrow::Table((0..t.len()).find(|&r| t.compose(*d, r) == Some(*p))?)
                }
                _ => cat.divide_left(d, &y).ok()?,
            },
        };
    }
    Some(y)
}

pub fn word_table(t: &FiniteCategory, cat: &Category, word: &[Letter]) -> PartialBijectionTable {
    PartialBijectionTable::from_fn(t, |x| match eval_word(cat, word, &Arrow::Table(x)) {
        Some(Arrow::Table(y)) => Some(y),
        _ => None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExtensionalVerdict {
    AgreeOnBox,
    Witness(Arrow),
}

/// Compares two partial maps on every arrow of the box, definedness included.
pub fn bounded_extensional_eq(
    bx: &TruncationBox,
    s: impl Fn(&Arrow) -> Option<Arrow>,
    t: impl Fn(&Arrow) -> Option<Arrow>,
) -> ExtensionalVerdict {
    match bx.arrows.iter().find(|x| s(x) != t(x)) {
        Some(x) => ExtensionalVerdict::Witness(x.clone()),
        None => ExtensionalVerdict::AgreeOnBox,
    }
}

/// `generator·C` minus the union of `excluded·C`, tested by division.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Neighborhood {
    pub generator: Arrow,
    pub excluded: Vec<Arrow>,
}

impl Neighborhood {
    pub fn contains(&self, cat: &Category, x: &Arrow) -> bool {
        cat.divides(&self.generator, x) && !self.excluded.iter().any(|f| cat.divides(f, x))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GermOracleVerdict {
    AgreeOnNeighborhood(Neighborhood),
    Distinct(Arrow),
    Inconclusive,
}

/// Searches neighborhoods `dC \ fC` of `c` inside the box on which `s` and `t` agree.
///
/// Disagreement at `c` itself separates the germs, as `c` lies in every neighborhood of `χ_c`.
pub fn bounded_germ_eq(
    cat: &Category,
    bx: &TruncationBox,
    s: impl Fn(&Arrow) -> Option<Arrow>,
    t: impl Fn(&Arrow) -> Option<Arrow>,
    c: &Arrow,
    max_exclusions: usize,
) -> GermOracleVerdict {
    if s(c).is_none() || s(c) != t(c) {
        return GermOracleVerdict::Distinct(c.clone());
    }
    let mut divisors: Vec<Arrow> = bx.arrows.iter().filter(|d| cat.divides(d, c)).cloned().collect();
    if !divisors.iter().any(|d| cat.same_ideal(d, c)) {
        divisors.push(c.clone());
    }
    // smallest neighborhoods first
    divisors.sort_by_cached_key(|d| bx.arrows.iter().filter(|x| cat.divides(d, x)).count());
    let agrees = |n: &Neighborhood| bx.arrows.iter().filter(|x| n.contains(cat, x)).all(|x| s(x) == t(x));
    for d in &divisors {
        let n = Neighborhood { generator: d.clone(), excluded: Vec::new() };
        if agrees(&n) {
            return GermOracleVerdict::AgreeOnNeighborhood(n);
        }
        let exclusions = bx.arrows.iter().filter(|f| cat.divides(d, f) && !cat.divides(f, c)).take(max_exclusions);
        for f in exclusions {
            let n = Neighborhood { generator: d.clone(), excluded: vec![f.clone()] };
            if agrees(&n) {
                return GermOracleVerdict::AgreeOnNeighborhood(n);
            }
        }
    }
    GermOracleVerdict::Inconclusive
}

/// Cross-checks hull operations on random words against letter-by-letter evaluation and,
/// on finite tables, against the enumerated hull. Returns the discrepancies found.
pub fn hull_agreement(cat: &Category, samples: usize, bounds: Bounds, seed: u64) -> Vec<String> {
    use crate::hull::{hull_eq, HullElement, HullEq};
    let mut rng = crate::sample::rng(seed);
    let mut out = Vec::new();
    let enumerated = cat.as_table().map(|t| enumerate_hull_finite(t, 100_000));
    let bx = TruncationBox::new(cat, bounds);
    let table_of = |s: &HullElement| {
        let t = cat.as_table().expect("finite");
        PartialBijectionTable::from_fn(t, |x| match s.apply(cat, &Arrow::Table(x)) {
            Some(Arrow::Table(y)) => Some(y),
            _ => None,
        })
    };
    for i in 0..samples {
        let len1 = rand::Rng::gen_range(&mut rng, 1..=4);
        let len2 = rand::Rng::gen_range(&mut rng, 1..=4);
        let w1 = crate::sample::word(cat, &mut rng, len1, 6);
        let w2 = crate::sample::word(cat, &mut rng, len2, 6);
        let (Ok(s), Ok(t)) = (HullElement::from_word(cat, w1.clone()), HullElement::from_word(cat, w2.clone())) else {
            out.push(format!("sample {i}: sampled word rejected"));
            continue;
        };
        let st = match s.compose(cat, &t) {
            Ok(x) => x,
            Err(e) => {
                out.push(format!("sample {i}: compose failed: {e}"));
                continue;
            }
        };
        let inv = s.invert(cat);
        let mut w12 = w1.clone();
        w12.extend(w2.iter().cloned());
        let w1inv = crate::syntax::invert_word(&w1);
        match (cat.as_table(), &enumerated) {
            (Some(tab), Some(Ok(hull))) => {
                let (os, ot) = (word_table(tab, cat, &w1), word_table(tab, cat, &w2));
                if table_of(&s) != os {
                    out.push(format!("sample {i}: apply differs for {}", s.show(cat)));
                }
                if !hull.contains(&os) {
                    out.push(format!("sample {i}: {} missing from the enumerated hull", s.show(cat)));
                }
                if table_of(&st) != os.compose(&ot) {
                    out.push(format!("sample {i}: compose differs"));
                }
                if table_of(&inv) != os.inverse() {
                    out.push(format!("sample {i}: invert differs"));
                }
                if s.is_idempotent(cat, bounds.mult) != os.is_idempotent() {
                    out.push(format!("sample {i}: idempotent test differs"));
                }
                if hull_eq(cat, &s, &t, bounds).is_equal() != (os == ot) {
                    out.push(format!("sample {i}: equality differs"));
                }
            }
            (Some(_), _) => out.push("hull enumeration exceeded its limit".into()),
            (None, _) => {
                let cases: [(&HullElement, &[Letter]); 3] = [(&s, &w1), (&st, &w12), (&inv, &w1inv)];
                for (h, w) in cases {
                    if let ExtensionalVerdict::Witness(x) =
                        bounded_extensional_eq(&bx, |x| h.apply(cat, x), |x| eval_word(cat, w, x))
                    {
                        out.push(format!("sample {i}: {} differs at {}", h.show(cat), cat.show(&x)));
                    }
                }
                let oracle = bounded_extensional_eq(&bx, |x| eval_word(cat, &w1, x), |x| eval_word(cat, &w2, x));
                let agree = match (hull_eq(cat, &s, &t, bounds), oracle) {
                    (HullEq::Distinct(_), ExtensionalVerdict::Witness(_)) => true,
                    (HullEq::Equal | HullEq::VerifiedUpTo(_), ExtensionalVerdict::AgreeOnBox) => true,
                    // a separating point outside the box
                    (HullEq::Distinct(x), ExtensionalVerdict::AgreeOnBox) => eval_word(cat, &w1, &x) != eval_word(cat, &w2, &x),
                    _ => false,
                };
                if !agree {
                    out.push(format!("sample {i}: equality differs"));
                }
            }
        }
    }
    out
}
