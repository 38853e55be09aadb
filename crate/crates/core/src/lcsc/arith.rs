use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::{Arrow, Invertibles};

/// Above this modulus the unit group is reported by a generator rather than listed.
const MAX_LISTED_UNITS: u64 = 1 << 16;

/// The monoid `ℕ× ⋉ ℤ/nℤ`, `(a,[k])(b,[l]) = (ab,[kb+l])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NxZmod {
    n: BigUint,
}

impl NxZmod {
    pub fn new(n: u64) -> Self {
        assert!(n >= 1, "modulus must be positive");
        NxZmod { n: BigUint::from(n) }
    }

    pub fn modulus(&self) -> &BigUint {
        &self.n
    }

    pub fn arrow(&self, a: u64, k: i64) -> Arrow {
        self.arrow_big(BigUint::from(a), &BigInt::from(k))
    }

    pub fn arrow_big(&self, mult: BigUint, k: &BigInt) -> Arrow {
        let n = BigInt::from(self.n.clone());
        let residue = k.mod_floor(&n).to_biguint().expect("non-negative after mod_floor");
        Arrow::NxZmod { mult, residue }
    }

    pub(super) fn is_valid(&self, mult: &BigUint, residue: &BigUint) -> bool {
        !mult.is_zero() && *residue < self.n
    }

    fn parts(a: &Arrow) -> (&BigUint, &BigUint) {
        match a {
            Arrow::NxZmod { mult, residue } => (mult, residue),
            _ => unreachable!("backend checked by caller"),
        }
    }

    pub(super) fn compose(&self, x: &Arrow, y: &Arrow) -> Arrow {
        let (a, k) = Self::parts(x);
        let (b, l) = Self::parts(y);
        Arrow::NxZmod { mult: a * b, residue: (k * b + l) % &self.n }
    }

    pub(super) fn divide_left(&self, q: &Arrow, p: &Arrow) -> Option<Arrow> {
        let (a, k) = Self::parts(q);
        let (b, l) = Self::parts(p);
        let (c, rem) = b.div_rem(a);
        if !rem.is_zero() {
            return None;
        }
        // l = k·c + m  (mod n)
        let kc = (k * &c) % &self.n;
        let m = (l + &self.n - kc) % &self.n;
        Some(Arrow::NxZmod { mult: c, residue: m })
    }

    pub(super) fn invertibles(&self) -> Invertibles {
        match self.n.to_u64() {
            Some(n) if n <= MAX_LISTED_UNITS => Invertibles::Finite((0..n).map(|k| self.arrow(1, k as i64)).collect()),
            _ => Invertibles::Generated(vec![self.arrow(1, 1)]),
        }
    }

    /// `(1,[j])(a,[k]) = (a,[ja+k])`; solves `ja ≡ Δ (mod n)`.
    pub(super) fn solve_unit(&self, c: &Arrow, v: &Arrow) -> Option<Arrow> {
        let (a, k) = Self::parts(c);
        let (b, l) = Self::parts(v);
        if a != b {
            return None;
        }
        let n = BigInt::from(self.n.clone());
        let delta = (BigInt::from(l.clone()) - BigInt::from(k.clone())).mod_floor(&n);
        let a_mod = BigInt::from(a % &self.n);
        let g = a_mod.gcd(&n);
        if !(&delta % &g).is_zero() {
            return None;
        }
        let n_red = &n / &g;
        let j = if n_red.is_one() {
            BigInt::zero()
        } else {
            let inv = mod_inverse(&(&a_mod / &g), &n_red)?;
            ((&delta / &g) * inv).mod_floor(&n_red)
        };
        Some(self.arrow_big(BigUint::one(), &j))
    }

    pub(super) fn canonical(&self, c: &Arrow) -> Arrow {
        let (a, _) = Self::parts(c);
        Arrow::NxZmod { mult: a.clone(), residue: BigUint::zero() }
    }

    /// `(a,[k])C ∩ (b,[l])C = (lcm(a,b),[0])C`.
    pub(super) fn lcm_generator(&self, x: &Arrow, y: &Arrow) -> Arrow {
        let (a, _) = Self::parts(x);
        let (b, _) = Self::parts(y);
        Arrow::NxZmod { mult: a.lcm(b), residue: BigUint::zero() }
    }

    pub(super) fn box_arrows(&self, mult_bound: u64) -> Vec<Arrow> {
        let n = self.n.to_u64().expect("box enumeration needs a machine-size modulus");
        (1..=mult_bound)
            .flat_map(|a| (0..n).map(move |k| (a, k)))
            .map(|(a, k)| Arrow::NxZmod { mult: BigUint::from(a), residue: BigUint::from(k) })
            .collect()
    }
}

/// The monoid `ℤ ⋊ ℕ×`, `(k,a)(l,b) = (k+al, ab)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ZNx;

impl ZNx {
    pub fn arrow(&self, k: i64, a: u64) -> Arrow {
        assert!(a >= 1, "multiplicative part must be positive");
        Arrow::ZNx { shift: BigInt::from(k), mult: BigUint::from(a) }
    }

    fn parts(a: &Arrow) -> (&BigInt, &BigUint) {
        match a {
            Arrow::ZNx { shift, mult } => (shift, mult),
            _ => unreachable!("backend checked by caller"),
        }
    }

    pub(super) fn compose(&self, x: &Arrow, y: &Arrow) -> Arrow {
        let (k, a) = Self::parts(x);
        let (l, b) = Self::parts(y);
        let a_int = BigInt::from(a.clone());
        Arrow::ZNx { shift: k + a_int * l, mult: a * b }
    }

    pub(super) fn divide_left(&self, q: &Arrow, p: &Arrow) -> Option<Arrow> {
        let (k, a) = Self::parts(q);
        let (m, c) = Self::parts(p);
        let (b, rem) = c.div_rem(a);
        if !rem.is_zero() {
            return None;
        }
        let (l, rem) = (m - k).div_rem(&BigInt::from(a.clone()));
        if !rem.is_zero() {
            return None;
        }
        Some(Arrow::ZNx { shift: l, mult: b })
    }

    /// `(j,1)(k,a) = (j+k, a)`.
    pub(super) fn solve_unit(&self, c: &Arrow, v: &Arrow) -> Option<Arrow> {
        let (k, a) = Self::parts(c);
        let (m, b) = Self::parts(v);
        (a == b).then(|| Arrow::ZNx { shift: m - k, mult: BigUint::one() })
    }

    pub(super) fn canonical(&self, c: &Arrow) -> Arrow {
        let (k, a) = Self::parts(c);
        let a_int = BigInt::from(a.clone());
        Arrow::ZNx { shift: k.mod_floor(&a_int), mult: a.clone() }
    }

    /// `(k,a)C = {(m,c) : a | c, m ≡ k mod a}`; two such sets meet iff the congruences are compatible.
    pub(super) fn lcm_generator(&self, x: &Arrow, y: &Arrow) -> Option<Arrow> {
        let (k, a) = Self::parts(x);
        let (l, b) = Self::parts(y);
        let a_int = BigInt::from(a.clone());
        let b_int = BigInt::from(b.clone());
        let g = a_int.gcd(&b_int);
        let diff = l - k;
        if !(&diff % &g).is_zero() {
            return None;
        }
        let lcm = a_int.lcm(&b_int);
        let b_red = &b_int / &g;
        let t = if b_red.is_one() {
            BigInt::zero()
        } else {
            let inv = mod_inverse(&((&a_int / &g).mod_floor(&b_red)), &b_red)?;
            ((&diff / &g) * inv).mod_floor(&b_red)
        };
        let m = (k + &a_int * t).mod_floor(&lcm);
        Some(Arrow::ZNx { shift: m, mult: lcm.to_biguint().expect("positive") })
    }

    pub(super) fn box_arrows(&self, mult_bound: u64, additive_bound: u64) -> Vec<Arrow> {
        let r = additive_bound as i64;
        (1..=mult_bound)
            .flat_map(|a| (-r..=r).map(move |k| (k, a)))
            .map(|(k, a)| self.arrow(k, a))
            .collect()
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}
