//! Seeded random sampling of arrows, words and small categories.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::hull::Letter;
use crate::lcsc::{Arrow, Category, FiniteCategory, ObjectId};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// An arrow with multiplicative part in `1..=max_mult`; additive parts in `-max_shift..=max_shift`
/// for `ℤ ⋊ ℕ×`. Tables ignore the bounds.
pub fn arrow(cat: &Category, rng: &mut impl Rng, max_mult: u64, max_shift: i64) -> Arrow {
    match cat {
        Category::Table(t) => Arrow::Table(rng.gen_range(0..t.len())),
        Category::NxZmod(m) => {
            let n = m.modulus().to_string().parse::<i64>().unwrap_or(i64::MAX);
            cat.pair(rng.gen_range(1..=max_mult) as i64, rng.gen_range(0..n)).expect("valid")
        }
        Category::ZNx(_) => cat.pair(rng.gen_range(-max_shift..=max_shift), rng.gen_range(1..=max_mult) as i64).expect("valid"),
    }
}

/// An arrow with the given source.
pub fn arrow_from(cat: &Category, rng: &mut impl Rng, source: ObjectId, max_mult: u64) -> Arrow {
    match cat.as_table() {
        Some(t) => {
            let options: Vec<usize> = (0..t.len()).filter(|&i| t.source(i) == source).collect();
            Arrow::Table(*options.choose(rng).expect("identities exist"))
        }
        None => arrow(cat, rng, max_mult, 8),
    }
}

/// A composable zigzag word with `len` letters.
pub fn word(cat: &Category, rng: &mut impl Rng, len: usize, max_mult: u64) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(len);
    for _ in 0..len {
        // the new letter is applied after the previous ones, so its input meets their output
        let letter = match out.first() {
            None => {
                let a = arrow(cat, rng, max_mult, 8);
                if rng.gen_bool(0.5) {
                    Letter::Mul(a)
                } else {
                    Letter::Inv(a)
                }
            }
            Some(prev) => {
                let obj = match prev {
                    Letter::Mul(c) => cat.target(c),
                    Letter::Inv(d) => cat.source(d),
                };
                let pick = |rng: &mut _, want_source: bool| match cat.as_table() {
                    Some(t) => {
                        let options: Vec<usize> = (0..t.len())
                            .filter(|&i| if want_source { t.source(i) == obj } else { t.target(i) == obj })
                            .collect();
                        Arrow::Table(*options.choose(rng).expect("identities exist"))
                    }
                    None => arrow(cat, rng, max_mult, 8),
                };
                if rng.gen_bool(0.5) {
                    Letter::Mul(pick(rng, true))
                } else {
                    Letter::Inv(pick(rng, false))
                }
            }
        };
        out.insert(0, letter);
    }
    out
}

/// A small left cancellative category with at most `max_arrows` arrows.
pub fn small_table(rng: &mut impl Rng, max_arrows: usize) -> FiniteCategory {
    loop {
        let t = match rng.gen_range(0..6) {
            0 => FiniteCategory::cyclic_group(rng.gen_range(1..=max_arrows.max(1))),
            1 => {
                let k = rng.gen_range(1..=3);
                let rels: Vec<(usize, usize)> = (0..k)
                    .flat_map(|a| (0..k).map(move |b| (a, b)))
                    .filter(|(a, b)| a < b)
                    .filter(|_| rng.gen_bool(0.5))
                    .collect::<Vec<_>>();
                FiniteCategory::preorder(k, &rels)
            }
            2 => FiniteCategory::prefix_tree(rng.gen_range(1..=2), rng.gen_range(1..=2)),
            3 => {
                let a = FiniteCategory::cyclic_group(rng.gen_range(1..=3));
                let b = match rng.gen_range(1..=2) {
                    1 => FiniteCategory::trivial(),
                    _ => FiniteCategory::preorder(2, &[(0, 1)]),
                };
                FiniteCategory::product(&a, &b)
            }
            4 => {
                let a = FiniteCategory::cyclic_group(rng.gen_range(1..=3));
                let b = FiniteCategory::prefix_tree(1, rng.gen_range(1..=2));
                FiniteCategory::disjoint_union(&a, &b)
            }
            _ => {
                let a = FiniteCategory::cyclic_group(rng.gen_range(2..=3));
                let b = FiniteCategory::cyclic_group(2);
                FiniteCategory::product(&a, &b)
            }
        };
        if t.len() <= max_arrows {
            return t;
        }
    }
}
