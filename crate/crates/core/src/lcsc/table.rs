use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Arrow, CancellationVerdict, LcmWitness, LcscError, ObjectId};

/// On-disk description of a finite category.
///
/// Identity arrows carry the name of their object and may be omitted from
/// `arrows`; compositions with identities may be omitted from `compose`.
/// Pairs absent from `compose` are undefined, so every composable pair of
/// non-identity arrows must be listed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableSpec {
    pub objects: Vec<String>,
    #[serde(default)]
    pub arrows: Vec<ArrowSpec>,
    #[serde(default)]
    pub compose: Vec<[String; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowSpec {
    pub name: String,
    pub source: String,
    pub target: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("duplicate name `{0}`")]
    Duplicate(String),
    #[error("arrow `{0}` shares its name with an object but is not an endomorphism of it")]
    BadIdentity(String),
    #[error("`{left}`·`{right}` is listed but source(`{left}`) ≠ target(`{right}`)")]
    NotComposable { left: String, right: String },
    #[error("`{left}`·`{right}` = `{result}` has the wrong source or target")]
    WrongEndpoints { left: String, right: String, result: String },
    #[error("conflicting entries for `{left}`·`{right}`")]
    Conflict { left: String, right: String },
    #[error("composable pair `{left}`·`{right}` has no entry")]
    Missing { left: String, right: String },
    #[error("identity law fails at `{0}`")]
    IdentityLaw(String),
    #[error("not associative at (`{0}`, `{1}`, `{2}`)")]
    NotAssociative(String, String, String),
    #[error("not left cancellative: `{0}`·`{1}` = `{0}`·`{2}`")]
    NotLeftCancellative(String, String, String),
    #[error("malformed table file: {0}")]
    Parse(String),
}

/// A validated finite left cancellative small category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCategory {
    names: Vec<String>,
    object_names: Vec<String>,
    identities: Vec<usize>,
    src: Vec<usize>,
    tgt: Vec<usize>,
    table: Vec<Option<usize>>,
    units: Vec<bool>,
    right_lcm: bool,
}

impl FiniteCategory {
    pub fn from_spec(spec: &TableSpec) -> Result<Self, TableError> {
        let cat = Self::assemble(spec)?;
        if let Some((x, y, z)) = cat.left_cancellation_counterexample() {
            return Err(TableError::NotLeftCancellative(
                cat.names[x].clone(),
                cat.names[y].clone(),
                cat.names[z].clone(),
            ));
        }
        Ok(cat)
    }

    pub fn from_json(text: &str) -> Result<Self, TableError> {
        let spec: TableSpec = serde_json::from_str(text).map_err(|e| TableError::Parse(e.to_string()))?;
        Self::from_spec(&spec)
    }

    /// Structural checks only; used by [`validate_spec`] to report cancellation failures as verdicts.
    fn assemble(spec: &TableSpec) -> Result<Self, TableError> {
        let mut object_index = HashMap::new();
        for (i, o) in spec.objects.iter().enumerate() {
            if object_index.insert(o.clone(), i).is_some() {
                return Err(TableError::Duplicate(o.clone()));
            }
        }
        let mut names: Vec<String> = spec.objects.clone();
        let mut src: Vec<usize> = (0..names.len()).collect();
        let mut tgt = src.clone();
        let mut arrow_index: HashMap<String, usize> = object_index.clone();
        for a in &spec.arrows {
            let s = *object_index.get(&a.source).ok_or_else(|| TableError::UnknownObject(a.source.clone()))?;
            let t = *object_index.get(&a.target).ok_or_else(|| TableError::UnknownObject(a.target.clone()))?;
            if let Some(&o) = object_index.get(&a.name) {
                if s != o || t != o {
                    return Err(TableError::BadIdentity(a.name.clone()));
                }
                continue;
            }
            if arrow_index.insert(a.name.clone(), names.len()).is_some() {
                return Err(TableError::Duplicate(a.name.clone()));
            }
            names.push(a.name.clone());
            src.push(s);
            tgt.push(t);
        }
        let n = names.len();
        let mut table: Vec<Option<usize>> = vec![None; n * n];
        let lookup = |name: &String| arrow_index.get(name).copied().ok_or_else(|| TableError::UnknownArrow(name.clone()));
        for [l, r, p] in &spec.compose {
            let (x, y, z) = (lookup(l)?, lookup(r)?, lookup(p)?);
            if src[x] != tgt[y] {
                return Err(TableError::NotComposable { left: l.clone(), right: r.clone() });
            }
            if src[z] != src[y] || tgt[z] != tgt[x] {
                return Err(TableError::WrongEndpoints { left: l.clone(), right: r.clone(), result: p.clone() });
            }
            match table[x * n + y] {
                Some(prev) if prev != z => return Err(TableError::Conflict { left: l.clone(), right: r.clone() }),
                _ => table[x * n + y] = Some(z),
            }
        }
        let identities: Vec<usize> = (0..spec.objects.len()).collect();
        for a in 0..n {
            let (it, is) = (identities[tgt[a]], identities[src[a]]);
            for (slot, expected) in [(it * n + a, a), (a * n + is, a)] {
                match table[slot] {
                    None => table[slot] = Some(expected),
                    Some(v) if v != expected => return Err(TableError::IdentityLaw(names[a].clone())),
                    Some(_) => {}
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                if src[x] == tgt[y] && table[x * n + y].is_none() {
                    return Err(TableError::Missing { left: names[x].clone(), right: names[y].clone() });
                }
            }
        }
        let mut cat = FiniteCategory {
            names,
            object_names: spec.objects.clone(),
            identities,
            src,
            tgt,
            table,
            units: Vec::new(),
            right_lcm: false,
        };
        for a in 0..n {
            for b in 0..n {
                let Some(ab) = cat.compose(a, b) else { continue };
                for c in 0..n {
                    let Some(bc) = cat.compose(b, c) else { continue };
                    if cat.compose(ab, c) != cat.compose(a, bc) {
                        return Err(TableError::NotAssociative(
                            cat.names[a].clone(),
                            cat.names[b].clone(),
                            cat.names[c].clone(),
                        ));
                    }
                }
            }
        }
        cat.units = (0..n)
            .map(|a| {
                (0..n).any(|b| {
                    cat.compose(a, b) == Some(cat.identities[cat.tgt[a]])
                        && cat.compose(b, a) == Some(cat.identities[cat.src[a]])
                })
            })
            .collect();
        cat.right_lcm = cat.check_right_lcm();
        Ok(cat)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn object_count(&self) -> usize {
        self.object_names.len()
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn object_name(&self, o: ObjectId) -> &str {
        &self.object_names[o.0]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn arrow(&self, name: &str) -> Option<Arrow> {
        self.index_of(name).map(Arrow::Table)
    }

    pub fn source(&self, a: usize) -> ObjectId {
        ObjectId(self.src[a])
    }

    pub fn target(&self, a: usize) -> ObjectId {
        ObjectId(self.tgt[a])
    }

    pub fn identity(&self, o: ObjectId) -> usize {
        self.identities[o.0]
    }

    pub fn compose(&self, a: usize, b: usize) -> Option<usize> {
        self.table[a * self.len() + b]
    }

    pub fn divide_left(&self, q: usize, p: usize) -> Option<usize> {
        (0..self.len()).find(|&r| self.compose(q, r) == Some(p))
    }

    /// Indicator of the principal right ideal `aC`.
    pub fn ideal(&self, a: usize) -> Vec<bool> {
        let mut out = vec![false; self.len()];
        for r in 0..self.len() {
            if let Some(p) = self.compose(a, r) {
                out[p] = true;
            }
        }
        out
    }

    pub fn is_unit(&self, a: usize) -> bool {
        self.units[a]
    }

    pub fn units(&self) -> Vec<usize> {
        (0..self.len()).filter(|&a| self.units[a]).collect()
    }

    pub fn units_at(&self, o: ObjectId) -> Vec<usize> {
        (0..self.len()).filter(|&a| self.units[a] && self.src[a] == o.0 && self.tgt[a] == o.0).collect()
    }

    pub fn solve_unit(&self, c: usize, v: usize) -> Option<usize> {
        self.units_at(self.target(c)).into_iter().find(|&u| self.compose(u, c) == Some(v))
    }

    pub fn canonical(&self, c: usize) -> usize {
        self.units_at(self.source(c))
            .into_iter()
            .filter_map(|u| self.compose(c, u))
            .min()
            .unwrap_or(c)
    }

    pub fn is_right_lcm(&self) -> bool {
        self.right_lcm
    }

    /// A generating set of `aC ∩ bC`: larger ideals are chosen first, covered elements skipped.
    pub fn meet_generators(&self, a: usize, b: usize) -> Vec<usize> {
        if self.tgt[a] != self.tgt[b] {
            return Vec::new();
        }
        let (ia, ib) = (self.ideal(a), self.ideal(b));
        let mut members: Vec<usize> = (0..self.len()).filter(|&x| ia[x] && ib[x]).collect();
        let sizes: Vec<usize> = (0..self.len()).map(|x| self.ideal(x).iter().filter(|&&m| m).count()).collect();
        members.sort_by_key(|&x| (std::cmp::Reverse(sizes[x]), x));
        let mut covered = vec![false; self.len()];
        let mut gens = Vec::new();
        for x in members {
            if covered[x] {
                continue;
            }
            for (y, m) in self.ideal(x).into_iter().enumerate() {
                covered[y] |= m;
            }
            gens.push(self.canonical(x));
        }
        gens.sort_unstable();
        gens.dedup();
        gens
    }

    pub fn right_lcm(&self, a: usize, b: usize) -> Result<LcmWitness, LcscError> {
        let gens = self.meet_generators(a, b);
        match gens.as_slice() {
            [] => Ok(LcmWitness::Empty),
            [w] => Ok(LcmWitness::Meet {
                w: Arrow::Table(*w),
                alpha: Arrow::Table(self.divide_left(a, *w).expect("w ∈ aC")),
                beta: Arrow::Table(self.divide_left(b, *w).expect("w ∈ bC")),
            }),
            _ => Err(LcscError::NotRightLcm(format!(
                "{}C ∩ {}C needs {} generators",
                self.names[a],
                self.names[b],
                gens.len()
            ))),
        }
    }

    fn check_right_lcm(&self) -> bool {
        (0..self.len()).all(|a| (a..self.len()).all(|b| self.meet_generators(a, b).len() <= 1))
    }

    /// `(x, y, z)` with `x·y = x·z` and `y ≠ z`.
    pub fn left_cancellation_counterexample(&self) -> Option<(usize, usize, usize)> {
        for x in 0..self.len() {
            let mut seen: HashMap<usize, usize> = HashMap::new();
            for y in 0..self.len() {
                if let Some(p) = self.compose(x, y) {
                    if let Some(prev) = seen.insert(p, y) {
                        return Some((x, prev, y));
                    }
                }
            }
        }
        None
    }

    pub fn to_spec(&self) -> TableSpec {
        let n = self.len();
        let arrows = (self.object_count()..n)
            .map(|a| ArrowSpec {
                name: self.names[a].clone(),
                source: self.object_names[self.src[a]].clone(),
                target: self.object_names[self.tgt[a]].clone(),
            })
            .collect();
        let mut compose = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if let Some(z) = self.compose(x, y) {
                    compose.push([self.names[x].clone(), self.names[y].clone(), self.names[z].clone()]);
                }
            }
        }
        TableSpec { objects: self.object_names.clone(), arrows, compose }
    }

    /// One object, one arrow.
    pub fn trivial() -> Self {
        Self::from_spec(&TableSpec { objects: vec!["*".into()], ..Default::default() }).expect("valid")
    }

    /// `ℤ/mℤ` as a one-object category; `g{i}·g{j} = g{i+j mod m}`, `g0` is written `e`.
    pub fn cyclic_group(m: usize) -> Self {
        assert!(m >= 1);
        let name = |i: usize| if i == 0 { "e".to_string() } else { format!("g{i}") };
        let spec = TableSpec {
            objects: vec!["e".into()],
            arrows: (1..m).map(|i| ArrowSpec { name: name(i), source: "e".into(), target: "e".into() }).collect(),
            compose: (1..m)
                .flat_map(|i| (1..m).map(move |j| (i, j)))
                .map(|(i, j)| [name(i), name(j), name((i + j) % m)])
                .collect(),
        };
        Self::from_spec(&spec).expect("cyclic group table is valid")
    }

    /// The category of a preorder on `0..objects`: one arrow `t<s` (target t, source s) for each
    /// `t ≤ s` in the reflexive-transitive closure of `relations`.
    pub fn preorder(objects: usize, relations: &[(usize, usize)]) -> Self {
        let mut le = vec![vec![false; objects]; objects];
        for (i, row) in le.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in relations {
            le[a][b] = true;
        }
        for k in 0..objects {
            for i in 0..objects {
                for j in 0..objects {
                    if le[i][k] && le[k][j] {
                        le[i][j] = true;
                    }
                }
            }
        }
        let obj = |i: usize| format!("o{i}");
        let arrow = |t: usize, s: usize| if t == s { obj(t) } else { format!("o{t}<o{s}") };
        let mut arrows = Vec::new();
        let mut compose = Vec::new();
        for t in 0..objects {
            for s in 0..objects {
                if t != s && le[t][s] {
                    arrows.push(ArrowSpec { name: arrow(t, s), source: obj(s), target: obj(t) });
                }
            }
        }
        for t in 0..objects {
            for s in 0..objects {
                for u in 0..objects {
                    if le[t][s] && le[s][u] && t != s && s != u {
                        compose.push([arrow(t, s), arrow(s, u), arrow(t, u)]);
                    }
                }
            }
        }
        let spec = TableSpec { objects: (0..objects).map(obj).collect(), arrows, compose };
        Self::from_spec(&spec).expect("preorder categories are left cancellative")
    }

    /// Paths in the complete `alphabet`-ary tree of depth `depth`: the free monoid on
    /// `alphabet` generators with words truncated at `depth`, as a category whose objects
    /// are the tree nodes. Arrow `q|w` has target `q` and source `qw`.
    pub fn prefix_tree(alphabet: usize, depth: usize) -> Self {
        assert!((1..=26).contains(&alphabet));
        let letters: Vec<char> = (0..alphabet).map(|i| (b'a' + i as u8) as char).collect();
        let mut words = vec![String::new()];
        let mut frontier = vec![String::new()];
        for _ in 0..depth {
            frontier = frontier
                .iter()
                .flat_map(|w| letters.iter().map(move |c| format!("{w}{c}")))
                .collect();
            words.extend(frontier.iter().cloned());
        }
        let obj = |w: &str| if w.is_empty() { "ε".to_string() } else { w.to_string() };
        let arrow = |q: &str, w: &str| if w.is_empty() { obj(q) } else { format!("{}|{}", obj(q), w) };
        let mut arrows = Vec::new();
        let mut compose = Vec::new();
        for q in &words {
            for w in &words {
                if w.is_empty() || q.len() + w.len() > depth {
                    continue;
                }
                let qw = format!("{q}{w}");
                arrows.push(ArrowSpec { name: arrow(q, w), source: obj(&qw), target: obj(q) });
                for v in &words {
                    if !v.is_empty() && qw.len() + v.len() <= depth {
                        compose.push([arrow(q, w), arrow(&qw, v), arrow(q, &format!("{w}{v}"))]);
                    }
                }
            }
        }
        let spec = TableSpec { objects: words.iter().map(|w| obj(w)).collect(), arrows, compose };
        Self::from_spec(&spec).expect("prefix trees are left cancellative")
    }

    /// Componentwise product; arrow names are `left×right`.
    pub fn product(a: &Self, b: &Self) -> Self {
        let oname = |x: usize, y: usize| format!("{}×{}", a.object_names[x], b.object_names[y]);
        let aname = |x: usize, y: usize| {
            if a.identities.contains(&x) && b.identities.contains(&y) {
                oname(a.src[x], b.src[y])
            } else {
                format!("{}×{}", a.names[x], b.names[y])
            }
        };
        let mut objects = Vec::new();
        for x in 0..a.object_count() {
            for y in 0..b.object_count() {
                objects.push(oname(x, y));
            }
        }
        let mut arrows = Vec::new();
        let mut compose = Vec::new();
        for x in 0..a.len() {
            for y in 0..b.len() {
                arrows.push(ArrowSpec {
                    name: aname(x, y),
                    source: oname(a.src[x], b.src[y]),
                    target: oname(a.tgt[x], b.tgt[y]),
                });
                for x2 in 0..a.len() {
                    for y2 in 0..b.len() {
                        if let (Some(p), Some(q)) = (a.compose(x, x2), b.compose(y, y2)) {
                            compose.push([aname(x, y), aname(x2, y2), aname(p, q)]);
                        }
                    }
                }
            }
        }
        Self::from_spec(&TableSpec { objects, arrows, compose }).expect("products of LCSCs are LCSCs")
    }

    /// Disjoint union; names get `L.` / `R.` prefixes.
    pub fn disjoint_union(a: &Self, b: &Self) -> Self {
        let mut spec = TableSpec::default();
        for (prefix, c) in [("L.", a), ("R.", b)] {
            let sub = c.to_spec();
            let p = |s: &String| format!("{prefix}{s}");
            spec.objects.extend(sub.objects.iter().map(p));
            spec.arrows.extend(sub.arrows.iter().map(|x| ArrowSpec {
                name: p(&x.name),
                source: p(&x.source),
                target: p(&x.target),
            }));
            spec.compose.extend(sub.compose.iter().map(|[x, y, z]| [p(x), p(y), p(z)]));
        }
        Self::from_spec(&spec).expect("disjoint unions of LCSCs are LCSCs")
    }
}

/// Structural validation of a table followed by an exhaustive left cancellation check.
pub fn validate_spec(spec: &TableSpec) -> Result<(Vec<String>, CancellationVerdict), TableError> {
    let cat = FiniteCategory::assemble(spec)?;
    let verdict = match cat.left_cancellation_counterexample() {
        Some((x, y, z)) => CancellationVerdict::Counterexample(Arrow::Table(x), Arrow::Table(y), Arrow::Table(z)),
        None => CancellationVerdict::Proven,
    };
    Ok((cat.names, verdict))
}

impl TableSpec {
    pub fn validate_left_cancellative(&self) -> Result<CancellationVerdict, TableError> {
        validate_spec(self).map(|(_, v)| v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_object(names: &[&str], products: &[(&str, &str, &str)]) -> TableSpec {
        TableSpec {
            objects: vec!["1".into()],
            arrows: names
                .iter()
                .map(|n| ArrowSpec { name: n.to_string(), source: "1".into(), target: "1".into() })
                .collect(),
            compose: products.iter().map(|(a, b, c)| [a.to_string(), b.to_string(), c.to_string()]).collect(),
        }
    }

    #[test]
    fn right_zero_table_fails_left_cancellation() {
        // {x, y} with uv = v, identity adjoined: x·1 = x = x·x
        let spec = one_object(
            &["x", "y"],
            &[("x", "x", "x"), ("x", "y", "y"), ("y", "x", "x"), ("y", "y", "y")],
        );
        let (names, verdict) = validate_spec(&spec).unwrap();
        let CancellationVerdict::Counterexample(Arrow::Table(x), Arrow::Table(y), Arrow::Table(z)) = verdict else {
            panic!("expected counterexample, got {verdict:?}");
        };
        assert_eq!(names[x], "x");
        assert_ne!(y, z);
        assert!(matches!(FiniteCategory::from_spec(&spec), Err(TableError::NotLeftCancellative(..))));
    }

    #[test]
    fn free_monoid_depth_five_is_left_cancellative() {
        let c = FiniteCategory::prefix_tree(1, 5);
        assert_eq!(c.object_count(), 6);
        assert_eq!(c.len(), 21);
        assert_eq!(c.to_spec().validate_left_cancellative().unwrap(), CancellationVerdict::Proven);
        assert!(c.is_right_lcm());
    }

    #[test]
    fn structural_errors() {
        let mut spec = one_object(&["x"], &[]);
        assert!(matches!(FiniteCategory::from_spec(&spec), Err(TableError::Missing { .. })));
        spec.compose.push(["x".into(), "x".into(), "x".into()]);
        spec.compose.push(["x".into(), "x".into(), "1".into()]);
        assert!(matches!(FiniteCategory::from_spec(&spec), Err(TableError::Conflict { .. })));
        let bad = one_object(&["x"], &[("x", "z", "x")]);
        assert!(matches!(FiniteCategory::from_spec(&bad), Err(TableError::UnknownArrow(_))));
        // x² = 1 makes Z/2; valid
        let z2 = one_object(&["x"], &[("x", "x", "1")]);
        let c = FiniteCategory::from_spec(&z2).unwrap();
        assert_eq!(c.units().len(), 2);
    }

    #[test]
    fn non_associative_table_is_rejected() {
        // x·x = y, x·y = 1, y·x = y, y·y = x: (xx)x = yx = y, x(xx) = xy = 1
        let spec = one_object(&["x", "y"], &[("x", "x", "y"), ("x", "y", "1"), ("y", "x", "y"), ("y", "y", "x")]);
        assert!(matches!(FiniteCategory::from_spec(&spec), Err(TableError::NotAssociative(..))));
    }

    #[test]
    fn json_round_trip() {
        let c = FiniteCategory::preorder(3, &[(0, 1), (0, 2)]);
        let text = serde_json::to_string(&c.to_spec()).unwrap();
        assert_eq!(FiniteCategory::from_json(&text).unwrap(), c);
    }

    #[test]
    fn diamond_is_not_right_lcm() {
        // 0 ≤ 1, 2 ≤ 3, 4 with two minimal upper bounds
        let c = FiniteCategory::preorder(5, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 3), (2, 4)]);
        assert!(!c.is_right_lcm());
        let a = c.index_of("o0<o1").unwrap();
        let b = c.index_of("o0<o2").unwrap();
        assert_eq!(c.meet_generators(a, b).len(), 2);
        assert!(c.right_lcm(a, b).is_err());
    }

    #[test]
    fn products_and_unions() {
        let g = FiniteCategory::cyclic_group(2);
        let p = FiniteCategory::preorder(2, &[(0, 1)]);
        let prod = FiniteCategory::product(&p, &g);
        assert_eq!(prod.len(), 6);
        assert_eq!(prod.object_count(), 2);
        let u = FiniteCategory::disjoint_union(&g, &p);
        assert_eq!(u.len(), 5);
        assert_eq!(u.units().len(), 4);
    }
}
