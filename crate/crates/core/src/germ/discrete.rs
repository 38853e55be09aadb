//! Transformation groupoids `G ⋉ X` of finite groups acting on finite sets.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error("multiplication table is not a group: {0}")]
    NotAGroup(String),
    #[error("action law fails: {0}")]
    NotAnAction(String),
}

/// A finite group as a multiplication table on `0..order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    mul: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    pub fn from_table(mul: Vec<Vec<usize>>) -> Result<Self, ActionError> {
        let n = mul.len();
        if n == 0 || mul.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(ActionError::NotAGroup("table must be square with entries in range".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| mul[e][g] == g && mul[g][e] == g))
            .ok_or_else(|| ActionError::NotAGroup("no identity".into()))?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return Err(ActionError::NotAGroup(format!("({a}{b}){c} ≠ {a}({b}{c})")));
                    }
                }
            }
        }
        let inverses = (0..n)
            .map(|g| (0..n).find(|&h| mul[g][h] == identity).ok_or_else(|| ActionError::NotAGroup(format!("{g} has no inverse"))))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FiniteGroup { mul, identity, inverses })
    }

    pub fn cyclic(n: usize) -> Self {
        let mul = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        FiniteGroup::from_table(mul).expect("cyclic groups are groups")
    }

    pub fn order(&self) -> usize {
        self.mul.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.inverses[g]
    }
}

/// Arrows are pairs `(g, x)` from `x` to `g·x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscreteActionGroupoid {
    pub group: FiniteGroup,
    action: Vec<Vec<usize>>,
}

impl DiscreteActionGroupoid {
    /// `action[g][x] = g·x`.
    pub fn new(group: FiniteGroup, action: Vec<Vec<usize>>) -> Result<Self, ActionError> {
        let n = group.order();
        if action.len() != n {
            return Err(ActionError::NotAnAction("one row per group element".into()));
        }
        let points = action[0].len();
        if action.iter().any(|row| row.len() != points || row.iter().any(|&y| y >= points)) {
            return Err(ActionError::NotAnAction("rows must map points to points".into()));
        }
        for x in 0..points {
            if action[group.identity()][x] != x {
                return Err(ActionError::NotAnAction(format!("e·{x} ≠ {x}")));
            }
            for g in 0..n {
                for h in 0..n {
                    if action[g][action[h][x]] != action[group.mul(g, h)][x] {
                        return Err(ActionError::NotAnAction(format!("{g}·({h}·{x}) ≠ ({g}{h})·{x}")));
                    }
                }
            }
        }
        Ok(DiscreteActionGroupoid { group, action })
    }

    /// Left translation of a group on itself.
    pub fn on_itself(group: FiniteGroup) -> Self {
        let n = group.order();
        let action = (0..n).map(|g| (0..n).map(|x| group.mul(g, x)).collect()).collect();
        DiscreteActionGroupoid::new(group, action).expect("translation is an action")
    }

    pub fn trivial(group: FiniteGroup, points: usize) -> Self {
        let action = (0..group.order()).map(|_| (0..points).collect()).collect();
        DiscreteActionGroupoid::new(group, action).expect("trivial action")
    }

    pub fn points(&self) -> usize {
        self.action[0].len()
    }

    pub fn act(&self, g: usize, x: usize) -> usize {
        self.action[g][x]
    }

    /// `G^u_u = {h : h·u = u}`.
    pub fn stabilizer(&self, u: usize) -> Vec<usize> {
        (0..self.group.order()).filter(|&h| self.act(h, u) == u).collect()
    }

    pub fn unit_space(&self) -> BTreeSet<(usize, usize)> {
        (0..self.points()).map(|x| (self.group.identity(), x)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum XhVerdict {
    /// Conjugating by the bisection through `(g, u)` lands in `H`.
    In { g: usize },
    NotIn,
    Unknown,
}

/// `u ∈ X_H` iff some `g` has `(g h g⁻¹, g·u) ∈ H` for every `h` in the stabilizer of `u`.
///
/// In a discrete groupoid the bisection `{(g, u)}` is open, and only its arrow at `u` matters.
pub fn xh_membership(
    gx: &DiscreteActionGroupoid,
    h: &BTreeSet<(usize, usize)>,
    u: usize,
    budget: usize,
) -> XhVerdict {
    let grp = &gx.group;
    let stab = gx.stabilizer(u);
    for g in (0..grp.order()).take(budget) {
        let gu = gx.act(g, u);
        let inside = stab.iter().all(|&s| h.contains(&(grp.mul(grp.mul(g, s), grp.inverse(g)), gu)));
        if inside {
            return XhVerdict::In { g };
        }
    }
    if budget < grp.order() {
        XhVerdict::Unknown
    } else {
        XhVerdict::NotIn
    }
}

pub fn xh_set(gx: &DiscreteActionGroupoid, h: &BTreeSet<(usize, usize)>) -> BTreeSet<usize> {
    (0..gx.points())
        .filter(|&u| matches!(xh_membership(gx, h, u, gx.group.order()), XhVerdict::In { .. }))
        .collect()
}
