#![allow(dead_code)]

use germforge::characters::{char_eval, conjugate_idempotent, joins_preserved_check, JoinRelation, JoinVerdict, PrincipalCharacter, Semicharacter};
use germforge::germ::{ad_bisection, germ_compose, germ_equal, Bisection, Germ};
use germforge::hull::{hull_eq, HullEq};
use germforge::sample::{self, SampleRng};
use germforge::{Arrow, BooleanIdeal, Bounds, Category, FiniteCategory, HullElement};
use rand::seq::SliceRandom;
use rand::Rng;

pub type Check = Result<(), String>;

/// One of the supported backends, chosen by the seed.
pub fn backend(rng: &mut SampleRng) -> Category {
    match rng.gen_range(0..4) {
        0 => Category::nx_zmod(rng.gen_range(1..=12)),
        1 => Category::z_nx(),
        2 => Category::Table(sample::small_table(rng, 6)),
        _ => Category::Table(FiniteCategory::prefix_tree(2, 2)),
    }
}

pub fn element(cat: &Category, rng: &mut SampleRng) -> HullElement {
    let len = rng.gen_range(1..=4);
    HullElement::from_word(cat, sample::word(cat, rng, len, 6)).expect("sampled words are composable")
}

pub fn arrow(cat: &Category, rng: &mut SampleRng) -> Arrow {
    sample::arrow(cat, rng, 8, 8)
}

/// A point of `b`, when one is found.
pub fn point_in(cat: &Category, rng: &mut SampleRng, b: &BooleanIdeal) -> Option<Arrow> {
    if let Some(t) = cat.as_table() {
        let pts: Vec<Arrow> = (0..t.len()).map(Arrow::Table).filter(|x| b.contains(cat, x)).collect();
        return pts.choose(rng).cloned();
    }
    let g = b.some_element(cat)?;
    for _ in 0..10 {
        let y = arrow(cat, rng);
        if let Ok(p) = cat.compose(&g, &y) {
            if b.contains(cat, &p) {
                return Some(p);
            }
        }
    }
    Some(g)
}

fn box_for(cat: &Category) -> Vec<Arrow> {
    match cat {
        Category::ZNx(_) => cat.arrows_in_box(Bounds::new(8, 8)),
        _ => cat.arrows_in_box(Bounds::uniform(12)),
    }
}

/// Exact equality where available, otherwise agreement on a box.
pub fn same_map(cat: &Category, s: &HullElement, t: &HullElement) -> Check {
    if let HullEq::Distinct(x) = hull_eq(cat, s, t, Bounds::uniform(8)) {
        return Err(format!("{} ≠ {} at {}", s.show(cat), t.show(cat), cat.show(&x)));
    }
    for x in box_for(cat) {
        if s.apply(cat, &x) != t.apply(cat, &x) {
            return Err(format!("{} ≠ {} at {} (pointwise)", s.show(cat), t.show(cat), cat.show(&x)));
        }
    }
    Ok(())
}

/// `ss⁻¹s = s`, `(st)⁻¹ = t⁻¹s⁻¹`, associativity, commuting idempotents.
pub fn inverse_semigroup_laws(cat: &Category, rng: &mut SampleRng) -> Check {
    let (s, t, u) = (element(cat, rng), element(cat, rng), element(cat, rng));
    let c = |a: &HullElement, b: &HullElement| a.compose(cat, b).map_err(|e| e.to_string());
    let si = s.invert(cat);
    same_map(cat, &c(&c(&s, &si)?, &s)?, &s)?;
    same_map(cat, &c(&c(&si, &s)?, &si)?, &si)?;
    same_map(cat, &c(&s, &t)?.invert(cat), &c(&t.invert(cat), &si)?)?;
    same_map(cat, &c(&c(&s, &t)?, &u)?, &c(&s, &c(&t, &u)?)?)?;
    let e = c(&si, &s)?;
    let f = c(&t.invert(cat), &t)?;
    same_map(cat, &c(&e, &f)?, &c(&f, &e)?)?;
    if !e.is_idempotent(cat, 8) {
        return Err(format!("{} is not idempotent", e.show(cat)));
    }
    Ok(())
}

/// `s(pq) = s(p)q` for `p ∈ dom s`.
pub fn translation_identity(cat: &Category, rng: &mut SampleRng) -> Check {
    let s = element(cat, rng);
    let Some(p) = point_in(cat, rng, &s.domain(cat)) else { return Ok(()) };
    let q = sample::arrow_from(cat, rng, cat.source(&p), 8);
    let q = if cat.target(&q) == cat.source(&p) { q } else { cat.identity(cat.source(&p)) };
    let pq = cat.compose(&p, &q).map_err(|e| e.to_string())?;
    let lhs = s.apply(cat, &pq);
    let rhs = s.apply(cat, &p).and_then(|sp| cat.compose(&sp, &q).ok());
    if lhs != rhs || lhs.is_none() {
        return Err(format!("s = {}, p = {}, q = {}", s.show(cat), cat.show(&p), cat.show(&q)));
    }
    Ok(())
}

pub fn random_ideal(cat: &Category, rng: &mut SampleRng) -> BooleanIdeal {
    let g = arrow(cat, rng);
    let k = rng.gen_range(0..=2);
    let excluded: Vec<Arrow> = (0..k).map(|_| arrow(cat, rng)).collect();
    let b = BooleanIdeal::difference_of(cat, &g, &excluded);
    if rng.gen_bool(0.3) {
        b.union(cat, &BooleanIdeal::principal(cat, &arrow(cat, rng)))
    } else {
        b
    }
}

/// `χ_c(s⁻¹es) = (s·χ_c)(e)` on the domain of `s`, and `0` off it.
pub fn action_compatibility(cat: &Category, rng: &mut SampleRng) -> Check {
    let s = element(cat, rng);
    let e = random_ideal(cat, rng);
    let conj = conjugate_idempotent(cat, &s, &e);
    let c = if rng.gen_bool(0.8) { point_in(cat, rng, &s.domain(cat)) } else { Some(arrow(cat, rng)) };
    let Some(c) = c else { return Ok(()) };
    let chi = PrincipalCharacter::new(c.clone());
    let lhs = char_eval(cat, &chi, &conj);
    let rhs = match s.apply(cat, &c) {
        Some(sc) => char_eval(cat, &PrincipalCharacter::new(sc), &e),
        None => false,
    };
    if lhs != rhs {
        return Err(format!("s = {}, e = {}, c = {}", s.show(cat), e.show(cat), cat.show(&c)));
    }
    Ok(())
}

/// A base arrow with non-trivial units at its source, in an arithmetic backend or a group-like table.
fn isotropy_backend(rng: &mut SampleRng) -> Category {
    match rng.gen_range(0..3) {
        0 => Category::nx_zmod(rng.gen_range(2..=12)),
        1 => Category::z_nx(),
        _ => Category::Table(FiniteCategory::product(&FiniteCategory::cyclic_group(rng.gen_range(2..=4)), &FiniteCategory::prefix_tree(1, 2))),
    }
}

fn random_unit(cat: &Category, rng: &mut SampleRng, c: &Arrow) -> Arrow {
    let obj = cat.source(c);
    match cat.units_at(obj) {
        Some(us) => us.choose(rng).expect("identity is a unit").clone(),
        None => {
            // ℤ ⋊ ℕ×: units are (j, 1)
            cat.pair(rng.gen_range(-6..=6), 1).expect("valid")
        }
    }
}

/// `Ad_Γ(gh) = Ad_Γ(g) Ad_Γ(h)` on isotropy at `χ_c`, `Γ` the canonical bisection.
pub fn ad_multiplicative(rng: &mut SampleRng) -> Check {
    let cat = isotropy_backend(rng);
    let c = arrow(&cat, rng);
    let gamma = Bisection::canonical(&cat, &c);
    let g = Germ::conjugate(&cat, &c, &random_unit(&cat, rng, &c)).map_err(|e| e.to_string())?;
    let h = Germ::conjugate(&cat, &c, &random_unit(&cat, rng, &c)).map_err(|e| e.to_string())?;
    let gh = germ_compose(&cat, &g, &h).map_err(|e| e.to_string())?;
    let ad = |x: &Germ| ad_bisection(&cat, &gamma, x).map_err(|e| e.to_string());
    let rhs = germ_compose(&cat, &ad(&g)?, &ad(&h)?).map_err(|e| e.to_string())?;
    if !germ_equal(&cat, &ad(&gh)?, &rhs) {
        return Err(format!("{cat}: g = {}, h = {}", g.show(&cat), h.show(&cat)));
    }
    Ok(())
}

/// `ψ(e) = χ(s⁻¹es)`, the action of `s` on a semicharacter.
struct Moved<'a> {
    s: &'a HullElement,
    chi: &'a PrincipalCharacter,
}

impl Semicharacter for Moved<'_> {
    fn value(&self, cat: &Category, e: &BooleanIdeal) -> bool {
        char_eval(cat, self.chi, &conjugate_idempotent(cat, &self.s.invert(cat), e))
    }
}

/// Principal characters and their translates preserve the join relations `aC ∩ bC = ∪ meets`.
pub fn joins_preserved(cat: &Category, rng: &mut SampleRng) -> Check {
    let relations: Vec<JoinRelation> = (0..6)
        .filter_map(|_| {
            let (a, b) = (arrow(cat, rng), arrow(cat, rng));
            if cat.target(&a) != cat.target(&b) {
                return None;
            }
            let join = BooleanIdeal::principal(cat, &a).intersect(cat, &BooleanIdeal::principal(cat, &b));
            let parts = cat.meet_generators(&a, &b).iter().map(|g| BooleanIdeal::principal(cat, g)).collect();
            Some(JoinRelation { join, parts })
        })
        .collect();
    let s = element(cat, rng);
    let Some(c) = point_in(cat, rng, &s.invert(cat).domain(cat)) else { return Ok(()) };
    let chi = PrincipalCharacter::new(c.clone());
    let moved = Moved { s: &s, chi: &chi };
    for (name, x) in [("chi", &chi as &dyn Semicharacter), ("s·chi", &moved as &dyn Semicharacter)] {
        match joins_preserved_check(cat, x, &relations) {
            Ok(JoinVerdict::Pass) => {}
            other => return Err(format!("{name} at {}: {other:?}", cat.show(&c))),
        }
    }
    Ok(())
}
