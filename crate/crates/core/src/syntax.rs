//! Parser for arrows, hull words, ideals, characters and germs.
//!
//! See `docs/grammar.ebnf`. Juxtaposition is composition and words act
//! right to left: `(6,0)(1,1)inv((6,0))` first divides by `(6,0)`.

use std::fmt;

use thiserror::Error;

use crate::characters::PrincipalCharacter;
use crate::germ::Germ;
use crate::hull::{BooleanIdeal, HullElement, Letter};
use crate::lcsc::{Arrow, Category, ObjectId};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("column {}: expected {expected}, found {found}", .pos + 1)]
pub struct ParseError {
    pub pos: usize,
    pub expected: String,
    pub found: String,
}

pub type Result<T> = std::result::Result<T, ParseError>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HullExpr {
    Zero,
    Word(Vec<Letter>),
}

struct Parser<'a> {
    cat: &'a Category,
    chars: Vec<char>,
    pos: usize,
}

fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || "_.<>×'+-".contains(c)
}

impl<'a> Parser<'a> {
    fn new(cat: &'a Category, src: &str) -> Self {
        Parser { cat, chars: src.chars().collect(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn rest_starts_with(&mut self, s: &str) -> bool {
        self.skip_ws();
        let want: Vec<char> = s.chars().collect();
        self.chars.get(self.pos..self.pos + want.len()) == Some(&want[..])
    }

    fn found(&mut self) -> String {
        match self.peek() {
            Some(c) => format!("`{c}`"),
            None => "end of input".into(),
        }
    }

    fn err<T>(&mut self, expected: impl fmt::Display) -> Result<T> {
        let found = self.found();
        Err(ParseError { pos: self.pos, expected: expected.to_string(), found })
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("`{c}`"))
        }
    }

    fn keyword(&mut self, kw: &str) -> bool {
        if !self.rest_starts_with(kw) {
            return false;
        }
        let end = self.pos + kw.chars().count();
        if self.chars.get(end).is_some_and(|&c| is_name_char(c)) {
            return false;
        }
        self.pos = end;
        true
    }

    fn finish(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(_) => self.err("end of input"),
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.chars.get(self.pos), Some('-') | Some('+')) {
            self.pos += 1;
        }
        while self.chars.get(self.pos).is_some_and(char::is_ascii_digit) {
            self.pos += 1;
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse().or_else(|_| {
            self.pos = start;
            self.err("integer")
        })
    }

    fn arrow(&mut self) -> Result<Arrow> {
        let start = self.pos;
        let cat = self.cat;
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let x = self.integer()?;
                self.expect(',')?;
                let y = self.integer()?;
                self.expect(')')?;
                cat.pair(x, y).or_else(|e| {
                    self.pos = start;
                    self.err(format!("valid pair ({e})"))
                })
            }
            Some('#') => {
                self.pos += 1;
                let i = self.integer()?;
                match cat.as_table() {
                    Some(t) if i >= 0 && (i as usize) < t.len() => Ok(Arrow::Table(i as usize)),
                    _ => {
                        self.pos = start;
                        self.err("arrow index inside the table")
                    }
                }
            }
            Some('{') => {
                self.pos += 1;
                let from = self.pos;
                while self.chars.get(self.pos).is_some_and(|&c| c != '}') {
                    self.pos += 1;
                }
                let name: String = self.chars[from..self.pos].iter().collect();
                self.expect('}')?;
                self.named(start, &name)
            }
            Some(c) if is_name_char(c) => {
                let from = self.pos;
                while self.chars.get(self.pos).is_some_and(|&c| is_name_char(c)) {
                    self.pos += 1;
                }
                let name: String = self.chars[from..self.pos].iter().collect();
                self.named(start, &name)
            }
            _ => self.err("arrow `(x,y)`, `#i`, a name or `id`"),
        }
    }

    fn named(&mut self, start: usize, name: &str) -> Result<Arrow> {
        if name == "id" || name == "1" {
            return match self.cat {
                Category::Table(_) => Ok(self.cat.identity(ObjectId(0))),
                _ => Ok(self.cat.one().expect("monoid")),
            };
        }
        match self.cat.as_table().and_then(|t| t.arrow(name)) {
            Some(a) => Ok(a),
            None => {
                self.pos = start;
                self.err(format!("known arrow name (no arrow `{name}`)"))
            }
        }
    }

    fn word(&mut self) -> Result<Vec<Letter>> {
        let mut out = Vec::new();
        loop {
            match self.peek() {
                None | Some(')') | Some(';') => break,
                _ => {}
            }
            if self.keyword("inv") {
                self.expect('(')?;
                let inner = self.word()?;
                self.expect(')')?;
                if inner.is_empty() {
                    return self.err("word inside `inv(...)`");
                }
                out.extend(invert_word(&inner));
            } else {
                out.push(Letter::Mul(self.arrow()?));
            }
        }
        Ok(out)
    }

    fn hull(&mut self) -> Result<HullExpr> {
        if self.keyword("zero") {
            return Ok(HullExpr::Zero);
        }
        let start = self.pos;
        let w = self.word()?;
        if w.is_empty() {
            self.pos = start;
            return self.err("hull element");
        }
        Ok(HullExpr::Word(w))
    }

    fn term(&mut self) -> Result<BooleanIdeal> {
        let g = self.arrow()?;
        let mut excluded = Vec::new();
        while self.peek() == Some('\\') {
            self.pos += 1;
            excluded.push(self.arrow()?);
        }
        Ok(BooleanIdeal::difference_of(self.cat, &g, &excluded))
    }

    fn ideal(&mut self) -> Result<BooleanIdeal> {
        if self.keyword("empty") {
            return Ok(BooleanIdeal::empty());
        }
        if self.keyword("all") {
            return Ok(BooleanIdeal::full(self.cat));
        }
        let mut acc = self.term()?;
        while self.peek() == Some('|') {
            self.pos += 1;
            let t = self.term()?;
            acc = acc.union(self.cat, &t);
        }
        Ok(acc)
    }

    fn character(&mut self) -> Result<PrincipalCharacter> {
        if !self.keyword("chi") {
            return self.err("`chi(...)`");
        }
        self.expect('(')?;
        // `chi(a,k)` abbreviates `chi((a,k))`
        let c = if self.peek() == Some('(') || !self.looks_like_pair() {
            self.arrow()?
        } else {
            let start = self.pos;
            let x = self.integer()?;
            self.expect(',')?;
            let y = self.integer()?;
            self.cat.pair(x, y).or_else(|e| {
                self.pos = start;
                self.err(format!("valid pair ({e})"))
            })?
        };
        self.expect(')')?;
        Ok(PrincipalCharacter::new(c))
    }

    fn looks_like_pair(&mut self) -> bool {
        self.skip_ws();
        let mut i = self.pos;
        if matches!(self.chars.get(i), Some('-') | Some('+')) {
            i += 1;
        }
        let digits = i;
        while self.chars.get(i).is_some_and(char::is_ascii_digit) {
            i += 1;
        }
        while self.chars.get(i).is_some_and(|c| c.is_whitespace()) {
            i += 1;
        }
        i > digits && self.chars.get(i) == Some(&',')
    }
}

/// `inv(l1 … lk) = inv(lk) … inv(l1)`.
pub fn invert_word(word: &[Letter]) -> Vec<Letter> {
    word.iter()
        .rev()
        .map(|l| match l {
            Letter::Mul(a) => Letter::Inv(a.clone()),
            Letter::Inv(a) => Letter::Mul(a.clone()),
        })
        .collect()
}

fn whole<'a, T>(cat: &'a Category, src: &str, f: impl FnOnce(&mut Parser<'a>) -> Result<T>) -> Result<T> {
    let mut p = Parser::new(cat, src);
    let out = f(&mut p)?;
    p.finish()?;
    Ok(out)
}

pub fn parse_arrow(cat: &Category, src: &str) -> Result<Arrow> {
    whole(cat, src, |p| p.arrow())
}

pub fn parse_hull_expr(cat: &Category, src: &str) -> Result<HullExpr> {
    whole(cat, src, |p| p.hull())
}

/// Parses and builds a hull element; composability errors are reported at column 1.
pub fn parse_hull(cat: &Category, src: &str) -> Result<HullElement> {
    match parse_hull_expr(cat, src)? {
        HullExpr::Zero => Ok(HullElement::zero()),
        HullExpr::Word(w) => HullElement::from_word(cat, w).map_err(|e| ParseError {
            pos: 0,
            expected: "composable word".into(),
            found: e.to_string(),
        }),
    }
}

pub fn parse_ideal(cat: &Category, src: &str) -> Result<BooleanIdeal> {
    whole(cat, src, |p| p.ideal())
}

pub fn parse_character(cat: &Category, src: &str) -> Result<PrincipalCharacter> {
    whole(cat, src, |p| p.character())
}

/// `germ(<hull>; chi(...))`.
pub fn parse_germ(cat: &Category, src: &str) -> Result<Germ> {
    let mut p = Parser::new(cat, src);
    if !p.keyword("germ") {
        return p.err("`germ(`");
    }
    p.expect('(')?;
    let start = p.pos;
    let h = p.hull()?;
    p.expect(';')?;
    let chi = p.character()?;
    p.expect(')')?;
    p.finish()?;
    let s = match h {
        HullExpr::Zero => HullElement::zero(),
        HullExpr::Word(w) => HullElement::from_word(cat, w).map_err(|e| ParseError {
            pos: start,
            expected: "composable word".into(),
            found: e.to_string(),
        })?,
    };
    Germ::of_hull(cat, s, chi).map_err(|e| ParseError { pos: start, expected: "germ defined at the character".into(), found: e.to_string() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lcsc::FiniteCategory;

    #[test]
    fn arrows_and_words() {
        let c = Category::nx_zmod(6);
        assert_eq!(parse_arrow(&c, " (2, 7) ").unwrap(), c.pair(2, 1).unwrap());
        assert_eq!(parse_arrow(&c, "id").unwrap(), c.one().unwrap());
        let s = parse_hull(&c, "(6,0)(1,1)inv((6,0))").unwrap();
        assert_eq!(s.apply(&c, &c.pair(12, 3).unwrap()), Some(c.pair(12, 5).unwrap()));
        let t = parse_hull(&c, "inv((2,1)(3,0))").unwrap();
        assert_eq!(t.word(), &[Letter::Inv(c.pair(3, 0).unwrap()), Letter::Inv(c.pair(2, 1).unwrap())]);
        assert_eq!(parse_hull_expr(&c, "zero").unwrap(), HullExpr::Zero);
    }

    #[test]
    fn errors_carry_positions() {
        let c = Category::nx_zmod(6);
        let e = parse_arrow(&c, "(2,x)").unwrap_err();
        assert_eq!(e.pos, 3);
        assert_eq!(e.to_string(), "column 4: expected integer, found `x`");
        let e = parse_hull(&c, "(1,1)inv(").unwrap_err();
        assert_eq!(e.pos, 9);
        assert!(parse_arrow(&c, "(0,1)").is_err());
        assert!(parse_hull(&c, "(1,1) )").is_err());
    }

    #[test]
    fn ideals_characters_germs() {
        let c = Category::nx_zmod(6);
        let p = |a, k| c.pair(a, k).unwrap();
        let b = parse_ideal(&c, r"(2,0) \ (4,0) | (3,1)").unwrap();
        assert!(b.contains(&c, &p(2, 5)));
        assert!(!b.contains(&c, &p(8, 0)));
        assert!(b.contains(&c, &p(3, 4)));
        assert_eq!(parse_character(&c, "chi(6,0)").unwrap().c, p(6, 0));
        assert_eq!(parse_character(&c, "chi((6,0))").unwrap().c, p(6, 0));
        let g = parse_germ(&c, "germ((6,0)(1,1)inv((6,0)); chi(6,0))").unwrap();
        assert_eq!(g.value(&c), p(6, 1));
        assert!(parse_germ(&c, "germ(inv((4,0)); chi(6,0))").is_err());
    }

    #[test]
    fn table_names() {
        let t = Category::Table(FiniteCategory::prefix_tree(2, 2));
        let a = parse_arrow(&t, "{ε|ab}").unwrap();
        assert_eq!(t.as_table().unwrap().name(a_index(&a)), "ε|ab");
        let g = Category::Table(FiniteCategory::cyclic_group(3));
        assert_eq!(parse_arrow(&g, "g1").unwrap(), Arrow::Table(1));
        assert_eq!(parse_arrow(&g, "#2").unwrap(), Arrow::Table(2));
        assert!(parse_arrow(&g, "#7").is_err());
    }

    fn a_index(a: &Arrow) -> usize {
        match a {
            Arrow::Table(i) => *i,
            _ => panic!(),
        }
    }
}
