//! Closed forms and proposition suites for `ℕ× ⋉ ℤ/nℤ` and `ℤ ⋊ ℕ×`.

use num_integer::Integer;
use rand::Rng;

use crate::characters::PrincipalCharacter;
use crate::germ::{in_iso_interior, in_subgroupoid, Germ, IsoVerdict, NoCertificate, SubgroupoidSpec, Tri};
use crate::hull::{HullElement, Letter};
use crate::lcsc::{Arrow, Bounds, CancellationVerdict, Category, EqualizerOutcome, LcmWitness};
use crate::oracle::{bounded_germ_eq, eval_word, GermOracleVerdict, TruncationBox};
use crate::report::{PropositionReport, Status};
use crate::sample;

/// Budgets for [`paper_witness_suite`]; all of them end up in the report bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteOptions {
    /// Multiplicative bound for brute-force searches.
    pub bound: u64,
    /// Search budget for the interior and subgroupoid deciders.
    pub budget: u64,
    pub samples: usize,
    pub seed: u64,
    pub oracle: bool,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { bound: 200, budget: 1000, samples: 50, seed: 0, oracle: true }
    }
}

/// Generator of `{c : (a,[k])c = (b,[l])c}`: empty unless `a = b`, else `(n / gcd(k-l, n), [0])`.
pub fn equalizer_closed_form(n: u64, a: u64, k: i64, b: u64, l: i64) -> EqualizerOutcome {
    assert!(n >= 1);
    if a != b {
        return EqualizerOutcome::Empty;
    }
    let d = (k - l).rem_euclid(n as i64) as u64;
    let g = n / d.gcd(&n);
    EqualizerOutcome::Generator(crate::lcsc::NxZmod::new(n).arrow(g, 0))
}

/// `(1,[2])·(n,[0]) = (1,[1])·(n,[0])`, checked by composition.
pub fn right_cancel_failure_witness(n: u64) -> Option<(Arrow, Arrow, Arrow)> {
    if n < 2 {
        return None;
    }
    let cat = Category::nx_zmod(n);
    let p = |a, k| cat.pair(a, k).expect("valid");
    let (x, y, z) = (p(1, 2), p(1, 1), p(n as i64, 0));
    let ok = x != y && cat.compose(&x, &z).ok() == cat.compose(&y, &z).ok();
    ok.then_some((x, y, z))
}

/// First `(x, y, z)` in the box with `x ≠ y`, `xz = yz`, ordered by `z`.
pub fn least_right_cancel_failure(cat: &Category, bound: u64) -> Option<(Arrow, Arrow, Arrow)> {
    let arrows = cat.arrows_in_box(Bounds::uniform(bound));
    for z in &arrows {
        let mut seen = std::collections::HashMap::new();
        for x in &arrows {
            let Ok(xz) = cat.compose(x, z) else { continue };
            if let Some(prev) = seen.insert(xz, x.clone()) {
                return Some((prev, x.clone(), z.clone()));
            }
        }
    }
    None
}

/// Elements of `ℕ× ⋉ ℤ/nℤ` as bare integer pairs, for brute-force cross-checks.
#[derive(Clone, Copy, Debug)]
pub struct RawNx {
    pub n: u64,
}

impl RawNx {
    pub fn mul(&self, (a, k): (u64, u64), (b, l): (u64, u64)) -> (u64, u64) {
        (a * b, (k * (b % self.n) + l) % self.n)
    }

    /// `x ∈ p·C` by trying every cofactor.
    pub fn in_ideal(&self, p: (u64, u64), x: (u64, u64)) -> bool {
        x.0 % p.0 == 0 && (0..self.n).any(|r| self.mul(p, (x.0 / p.0, r)) == x)
    }
}

fn raw(a: &Arrow) -> (u64, u64) {
    use num_traits::ToPrimitive;
    match a {
        Arrow::NxZmod { mult, residue } => (mult.to_u64().expect("small"), residue.to_u64().expect("small")),
        _ => panic!("not an element of N^x ⋉ Z/nZ"),
    }
}

fn left_cancellation_report(cat: &Category, opts: &SuiteOptions) -> PropositionReport {
    let bound = opts.bound.min(40);
    let v = cat.validate_left_cancellative(bound);
    let r = match &v {
        CancellationVerdict::Proven => PropositionReport::new("left-cancellative", Status::Pass, "Proven"),
        CancellationVerdict::VerifiedUpTo(b) => {
            PropositionReport::new("left-cancellative", Status::Unknown, format!("verified up to {b}"))
        }
        CancellationVerdict::Counterexample(x, y, z) => PropositionReport::new("left-cancellative", Status::Fail, "counterexample")
            .witness("x", cat.show(x))
            .witness("y", cat.show(y))
            .witness("z", cat.show(z)),
    };
    let r = r.bound("mult", bound);
    match (cat, opts.oracle) {
        (Category::NxZmod(m), true) => {
            use num_traits::ToPrimitive;
            let n = m.modulus().to_u64().expect("small modulus");
            let rn = RawNx { n };
            let elems: Vec<(u64, u64)> = (1..=bound).flat_map(|a| (0..n).map(move |k| (a, k))).collect();
            let injective = elems.iter().all(|&x| {
                let mut seen = std::collections::HashSet::new();
                elems.iter().all(|&y| seen.insert(rn.mul(x, y)))
            });
            r.oracle(injective == (v == CancellationVerdict::Proven))
        }
        _ => r,
    }
}

fn right_cancel_report(n: u64, cat: &Category, opts: &SuiteOptions) -> PropositionReport {
    let id = "right-cancellation-failure";
    let bound = opts.bound.min(24);
    if n < 2 {
        let found = least_right_cancel_failure(cat, bound);
        return PropositionReport::new(id, Status::NotApplicable, "n = 1: the monoid is N^x and right cancellative")
            .witness("bounded_search", if found.is_none() { "no failure" } else { "failure found" })
            .bound("mult", bound);
    }
    let Some((x, y, z)) = right_cancel_failure_witness(n) else {
        return PropositionReport::new(id, Status::Fail, "witness does not validate");
    };
    let mut r = PropositionReport::new(id, Status::Pass, "x·z = y·z with x ≠ y")
        .witness("x", cat.show(&x))
        .witness("y", cat.show(&y))
        .witness("z", cat.show(&z))
        .witness("xz", cat.show(&cat.compose(&x, &z).expect("monoid")))
        .bound("mult", bound);
    if let Some((_, _, zmin)) = least_right_cancel_failure(cat, bound) {
        r = r.witness("least_z", cat.show(&zmin));
    }
    if opts.oracle {
        let rn = RawNx { n };
        let agrees = rn.mul(raw(&x), raw(&z)) == rn.mul(raw(&y), raw(&z)) && raw(&x) != raw(&y);
        r = r.oracle(agrees);
    }
    r
}

/// Right LCM formula on random pairs, with a brute-force membership scan of `aC ∩ bC`.
pub fn right_lcm_sampling(n: u64, pairs: usize, member_bound: u64, seed: u64, max_mult: u64) -> PropositionReport {
    let id = "right-lcm";
    let cat = Category::nx_zmod(n);
    let rn = RawNx { n };
    let mut rng = sample::rng(seed);
    let mut discrepancies = Vec::new();
    for _ in 0..pairs {
        let p = (rng.gen_range(1..=max_mult), rng.gen_range(0..n));
        let q = (rng.gen_range(1..=max_mult), rng.gen_range(0..n));
        let (a, b) = (cat.pair(p.0 as i64, p.1 as i64).unwrap(), cat.pair(q.0 as i64, q.1 as i64).unwrap());
        let w = match cat.right_lcm(&a, &b) {
            Ok(LcmWitness::Meet { w, .. }) => w,
            _ => {
                discrepancies.push(format!("{} ∧ {}: no meet", cat.show(&a), cat.show(&b)));
                continue;
            }
        };
        let expected = cat.pair(p.0.lcm(&q.0) as i64, 0).unwrap();
        if !cat.same_ideal(&w, &expected) {
            discrepancies.push(format!("{} ∧ {} = {}", cat.show(&a), cat.show(&b), cat.show(&w)));
            continue;
        }
        let wr = raw(&w);
        let l = p.0.lcm(&q.0);
        let mut m = l;
        'scan: while m <= member_bound {
            for r in 0..n {
                let x = (m, r);
                if rn.in_ideal(p, x) && rn.in_ideal(q, x) && !rn.in_ideal(wr, x) {
                    discrepancies.push(format!("({m},{r}) escapes {}", cat.show(&w)));
                    break 'scan;
                }
            }
            m += l;
        }
    }
    let status = if discrepancies.is_empty() { Status::Pass } else { Status::Fail };
    let mut r = PropositionReport::new(id, status, format!("{pairs} pairs, {} discrepancies", discrepancies.len()))
        .bound("pairs", pairs as u64)
        .bound("member_mult", member_bound)
        .bound("seed", seed);
    if let Some(d) = discrepancies.first() {
        r = r.witness("discrepancy", d.clone());
    }
    r.oracle(discrepancies.is_empty())
}

/// The closed-form equalizer against brute force, for every residue pair.
pub fn equalizer_check(n: u64, bound: u64) -> PropositionReport {
    let id = "equalizer";
    let cat = Category::nx_zmod(n);
    let bounds = Bounds::new(bound, bound);
    let mut mismatches = Vec::new();
    let mults: &[(u64, u64)] = &[(1, 1), (2, 2), (1, 2), (3, 1)];
    for &(a, b) in mults {
        for k in 0..n as i64 {
            for l in 0..n as i64 {
                if a != b && (k, l) != (0, 0) {
                    continue;
                }
                let closed = equalizer_closed_form(n, a, k, b, l);
                let brute = cat
                    .equalizer_ideal(&cat.pair(a as i64, k).unwrap(), &cat.pair(b as i64, l).unwrap(), bounds)
                    .expect("monoid");
                let same = match (&closed, &brute) {
                    (EqualizerOutcome::Generator(x), EqualizerOutcome::Generator(y)) => cat.same_ideal(x, y),
                    (EqualizerOutcome::Empty, EqualizerOutcome::Empty) => true,
                    _ => false,
                };
                if !same {
                    mismatches.push(format!("(a,k,b,l)=({a},{k},{b},{l}): {closed:?} vs {brute:?}"));
                }
            }
        }
    }
    let status = if mismatches.is_empty() { Status::Pass } else { Status::Fail };
    let mut r = PropositionReport::new(id, status, "principal, generated by (n/gcd(k-l,n),[0])").bound("mult", bound);
    if n >= 4 {
        if let EqualizerOutcome::Generator(g) = equalizer_closed_form(n, 1, 3, 1, 1) {
            r = r.witness("k=3,l=1", cat.show(&g));
        }
    }
    if let Some(m) = mismatches.first() {
        r = r.witness("mismatch", m.clone());
    }
    r.oracle(mismatches.is_empty())
}

/// `[(n,[0])(1,[1])(n,[0])⁻¹, χ_(n,[0])]`.
pub fn containment_witness(cat: &Category, n: u64) -> Germ {
    let p = |a: u64, k| cat.pair(a as i64, k).expect("valid");
    let word = vec![Letter::Mul(p(n, 0)), Letter::Mul(p(1, 1)), Letter::Inv(p(n, 0))];
    let s = HullElement::from_word(cat, word).expect("composable");
    Germ::of_hull(cat, s, PrincipalCharacter::new(p(n, 0))).expect("(n,[0]) is in the domain")
}

fn containment_report(n: u64, cat: &Category, opts: &SuiteOptions) -> PropositionReport {
    let id = "strict-containment";
    if n < 2 {
        return PropositionReport::new(id, Status::NotApplicable, "n = 1: no non-trivial units");
    }
    let g = containment_witness(cat, n);
    let e = crate::hull::BooleanIdeal::principal(cat, &g.chi.c);
    let iso = in_iso_interior(cat, &g, opts.budget);
    let inv = in_subgroupoid(cat, &g, &SubgroupoidSpec::InvertiblesAction, opts.budget);
    let iso_ok = matches!(&iso, IsoVerdict::Yes(w) if w.set_eq(cat, &e));
    let status = if iso_ok && inv.verdict == Tri::No { Status::Pass } else { Status::Fail };
    let p = |a: u64, k| cat.pair(a as i64, k).expect("valid");
    let mut r = PropositionReport::new(id, status, "InvertiblesAction ⊊ IsoInterior")
        .witness("germ", g.show(cat))
        .witness("iso_interior", match &iso {
            IsoVerdict::Yes(w) => format!("Yes on {}", w.show(cat)),
            IsoVerdict::No(_) => "No".into(),
            IsoVerdict::Unknown(why) => format!("Unknown: {why}"),
        })
        .witness("invertibles", inv.detail.clone())
        .witness(
            "action",
            format!("({}b,[x]) -> ({}b,[x+b])", n, n),
        )
        .bound("budget", opts.budget);
    if opts.oracle {
        let bx = TruncationBox::new(cat, Bounds::uniform(opts.bound.min(60)));
        let word = g.s.s.word().to_vec();
        let s_fn = |x: &Arrow| eval_word(cat, &word, x);
        let mut agrees = true;
        // distinct from every unit germ at the base point
        for k in 0..n {
            let u = [Letter::Mul(p(1, k as i64))];
            let v = bounded_germ_eq(cat, &bx, s_fn, |x| eval_word(cat, &u, x), &g.chi.c, 4);
            agrees &= matches!(v, GermOracleVerdict::Distinct(_));
        }
        // every point of (n,[0])C in the box is fixed as a character
        let rn = RawNx { n };
        for x in bx.arrows.iter().filter(|x| e.contains(cat, x)) {
            let sx = s_fn(x);
            agrees &= sx.is_some_and(|y| rn.in_ideal(raw(x), raw(&y)) && rn.in_ideal(raw(&y), raw(x)));
        }
        r = r.bound("oracle_mult", opts.bound.min(60)).oracle(agrees);
    }
    r
}

/// Evidence for the reverse containment in `ℤ ⋊ ℕ×`.
pub fn znx_reverse_report(opts: &SuiteOptions) -> PropositionReport {
    let id = "z-nx-reverse";
    let z = Category::z_nx();
    let p = |k, a| z.pair(k, a).expect("valid");
    let mut failures = Vec::new();

    let g = Germ::of_hull(&z, HullElement::mul(&z, &p(1, 1)), PrincipalCharacter::new(p(0, 2))).expect("monoid");
    let moved = in_iso_interior(&z, &g, opts.budget);
    let expected = NoCertificate::NotIsotropy { from: p(0, 2), to: p(1, 2) };
    if moved != IsoVerdict::No(expected) {
        failures.push(format!("(1,1) at chi(0,2): {moved:?}"));
    }

    let mut rng = sample::rng(opts.seed);
    let mut yes = 0;
    for _ in 0..opts.samples {
        let c = p(rng.gen_range(-20..=20), rng.gen_range(1..=12));
        let j = loop {
            let j: i64 = rng.gen_range(-12..=12);
            if j != 0 {
                break j;
            }
        };
        let h = Germ::conjugate(&z, &c, &p(j, 1)).expect("monoid");
        if matches!(in_iso_interior(&z, &h, opts.budget), IsoVerdict::Yes(_)) {
            yes += 1;
            failures.push(format!("interior accepted {}", h.show(&z)));
        }
    }

    // unit germs [(k,1), χ_p]: isotropy iff the multiplicative part of p divides k
    let mut fixing_mismatch = 0;
    for _ in 0..opts.samples {
        let k: i64 = rng.gen_range(-30..=30);
        let (l, b): (i64, i64) = (rng.gen_range(-20..=20), rng.gen_range(1..=12));
        let u = Germ::of_hull(&z, HullElement::mul(&z, &p(k, 1)), PrincipalCharacter::new(p(l, b))).expect("monoid");
        let oracle_fixed = k.rem_euclid(b) == 0;
        if u.is_isotropy(&z) != oracle_fixed || crate::germ::znx_unit_fixes(&z, k, &p(l, b)) != oracle_fixed {
            fixing_mismatch += 1;
        }
    }
    if fixing_mismatch > 0 {
        failures.push(format!("{fixing_mismatch} unit germs disagree with the divisibility criterion"));
    }

    let status = if failures.is_empty() { Status::Pass } else { Status::Fail };
    let mut r = PropositionReport::new(id, status, "(1,1)·chi(0,2) = chi(1,2); sampled non-unit germs are not interior")
        .witness("move", "chi(0,2) -> chi(1,2)")
        .witness("interior_accepted", yes.to_string())
        .bound("samples", opts.samples as u64)
        .bound("budget", opts.budget)
        .bound("seed", opts.seed);
    if let Some(f) = failures.first() {
        r = r.witness("failure", f.clone());
    }
    if opts.oracle {
        // (k,a)(l,b) = (k+al, ab) by hand
        let (k, a, l, b) = (1i64, 1i64, 0i64, 2i64);
        let prod = (k + a * l, a * b);
        let same_ideal = |x: (i64, i64), y: (i64, i64)| x.1 == y.1 && (x.0 - y.0).rem_euclid(x.1) == 0;
        r = r.oracle(prod == (1, 2) && !same_ideal(prod, (0, 2)) && fixing_mismatch == 0);
    }
    r
}

type Check = fn(u64, &SuiteOptions) -> PropositionReport;

const CHECKS: [Check; 6] = [
    |n, o| left_cancellation_report(&Category::nx_zmod(n), o),
    |n, o| right_cancel_report(n, &Category::nx_zmod(n), o),
    |n, o| right_lcm_sampling(n, o.samples, o.bound, o.seed, 30),
    |n, o| equalizer_check(n, o.bound),
    |n, o| containment_report(n, &Category::nx_zmod(n), o),
    |_, o| znx_reverse_report(o),
];

/// The six checks for modulus `n`.
pub fn paper_witness_suite(n: u64, opts: &SuiteOptions) -> Vec<PropositionReport> {
    paper_witness_suite_jobs(n, opts, 1)
}

/// As [`paper_witness_suite`], running up to `jobs` checks at a time. Report order is fixed.
pub fn paper_witness_suite_jobs(n: u64, opts: &SuiteOptions, jobs: usize) -> Vec<PropositionReport> {
    let n = n.max(1);
    let mut out = Vec::with_capacity(CHECKS.len());
    for batch in CHECKS.chunks(jobs.max(1)) {
        std::thread::scope(|scope| {
            let handles: Vec<_> = batch.iter().map(|check| scope.spawn(move || check(n, opts))).collect();
            out.extend(handles.into_iter().map(|h| h.join().expect("check panicked")));
        });
    }
    out
}
