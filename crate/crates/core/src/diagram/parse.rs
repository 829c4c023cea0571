//! Text input: PD codes with optional component and color blocks.
//!
//! ```text
//! # Hopf link
//! X[1,3,2,4] X[3,1,4,2]
//! components: [[1,2],[3,4]]
//! colors: [1,2]
//! ```
//!
//! `X[a,b,c,d]` lists arcs counterclockwise from the incoming under-arc.
//! `Xp[..]` and `Xm[..]` additionally fix the sign (and so the over-arc
//! direction); `S[..]` (and `Sp`, `Sm`) is a marked double point whose
//! slot-0 arc is incoming; `O[a]` is a crossing-free component.

use std::collections::BTreeMap;

use super::braid::{braid_closure, parse_braid};
use super::raw::{Raw, RawCrossing};
use super::{LinkDiagram, Port};
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Plain,
    Positive,
    Negative,
}

struct Lexer<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer { s: text.as_bytes(), pos: 0 }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() {
            let c = self.s[self.pos];
            if c == b'#' {
                while self.pos < self.s.len() && self.s[self.pos] != b'\n' {
                    self.pos += 1;
                }
            } else if c.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.s.len()
    }

    fn peek_word(&mut self) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        let mut end = start;
        while end < self.s.len() && (self.s[end].is_ascii_alphanumeric() || self.s[end] == b'_') {
            end += 1;
        }
        std::str::from_utf8(&self.s[start..end]).unwrap_or("")
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        self.skip_ws();
        if self.pos < self.s.len() && self.s[self.pos] == c {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected `{}`", c as char))
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.pos < self.s.len() && self.s[self.pos] == c {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a non-negative integer");
        }
        let t = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        t.parse().or_else(|_| {
            self.pos = start;
            self.err("integer out of range")
        })
    }

    /// `[n, n, ...]`, possibly empty.
    fn list(&mut self) -> Result<Vec<usize>> {
        self.expect(b'[')?;
        let mut out = Vec::new();
        if self.eat(b']') {
            return Ok(out);
        }
        loop {
            out.push(self.number()?);
            if self.eat(b']') {
                return Ok(out);
            }
            self.expect(b',')?;
        }
    }

    fn nested_list(&mut self) -> Result<Vec<Vec<usize>>> {
        self.expect(b'[')?;
        let mut out = Vec::new();
        if self.eat(b']') {
            return Ok(out);
        }
        loop {
            out.push(self.list()?);
            if self.eat(b']') {
                return Ok(out);
            }
            self.expect(b',')?;
        }
    }
}

/// Parses either a PD code or a braid word (text starting with `braid`).
pub fn parse_diagram(text: &str) -> Result<LinkDiagram> {
    let mut lx = Lexer::new(text);
    if lx.peek_word() == "braid" {
        let (word_part, colors) = split_colors_line(text);
        let b = parse_braid(word_part)?;
        let colors = match colors {
            Some(c) => {
                let mut l = Lexer::new(c);
                Some(l.list()?.into_iter().map(|x| x as u32).collect::<Vec<_>>())
            }
            None => None,
        };
        return braid_closure(&b, colors.as_deref());
    }
    parse_pd(text)
}

fn split_colors_line(text: &str) -> (&str, Option<&str>) {
    match text.find("colors:") {
        Some(i) => (&text[..i], Some(&text[i + "colors:".len()..])),
        None => (text, None),
    }
}

/// Parses PD text into a validated diagram.
pub fn parse_pd(text: &str) -> Result<LinkDiagram> {
    let mut lx = Lexer::new(text);
    let mut raw = Raw::default();
    let mut kinds = Vec::new();
    let mut components: Option<Vec<Vec<usize>>> = None;
    let mut colors: Option<Vec<usize>> = None;
    let mut loops_at = Vec::new();
    let mut first_pos: BTreeMap<usize, usize> = BTreeMap::new();

    while !lx.at_end() {
        let word_pos = lx.pos;
        let word = lx.peek_word();
        lx.pos += word.len();
        match word {
            "X" | "Xp" | "Xm" | "S" | "Sp" | "Sm" => {
                let kind = match &word[1..] {
                    "p" => Kind::Positive,
                    "m" => Kind::Negative,
                    _ => Kind::Plain,
                };
                let singular = word.starts_with('S');
                let l = lx.list()?;
                if l.len() != 4 {
                    lx.pos = word_pos;
                    return lx.err(format!("{} needs exactly 4 arcs", word));
                }
                for &a in &l {
                    first_pos.entry(a).or_insert(word_pos);
                }
                raw.crossings.push(RawCrossing { slots: [l[0], l[1], l[2], l[3]], singular });
                kinds.push(kind);
            }
            "O" => {
                let l = lx.list()?;
                if l.len() != 1 {
                    lx.pos = word_pos;
                    return lx.err("O needs exactly 1 arc");
                }
                first_pos.entry(l[0]).or_insert(word_pos);
                raw.loops.push(l[0]);
                loops_at.push(word_pos);
            }
            "components" => {
                lx.expect(b':')?;
                if components.is_some() {
                    lx.pos = word_pos;
                    return lx.err("duplicate components block");
                }
                components = Some(lx.nested_list()?);
            }
            "colors" => {
                lx.expect(b':')?;
                if colors.is_some() {
                    lx.pos = word_pos;
                    return lx.err("duplicate colors block");
                }
                colors = Some(lx.list()?);
            }
            "" => return lx.err("unexpected character"),
            w => {
                lx.pos = word_pos;
                return lx.err(format!("unknown token `{}`", w));
            }
        }
    }

    // arc usage counts, reported with a position
    let mut count: BTreeMap<usize, usize> = BTreeMap::new();
    for x in &raw.crossings {
        for &a in &x.slots {
            *count.entry(a).or_default() += 1;
        }
    }
    for &a in &raw.loops {
        *count.entry(a).or_default() += 2;
    }
    for (&a, &k) in &count {
        if k != 2 {
            return Err(Error::Parse {
                pos: first_pos[&a],
                msg: format!("arc {} is used {} times (expected exactly 2)", a, if raw.loops.contains(&a) { k - 1 } else { k }),
            });
        }
    }

    for (ci, (x, kind)) in raw.crossings.iter().zip(&kinds).enumerate() {
        let p = |slot| Port { crossing: ci, slot };
        raw.forced.push((x.slots[0], p(0), true));
        raw.forced.push((x.slots[2], p(2), false));
        match kind {
            Kind::Positive => {
                raw.forced.push((x.slots[3], p(3), true));
                raw.forced.push((x.slots[1], p(1), false));
            }
            Kind::Negative => {
                raw.forced.push((x.slots[1], p(1), true));
                raw.forced.push((x.slots[3], p(3), false));
            }
            _ => {
                // label heuristic for the over-strand direction
                let (b, d) = (x.slots[1], x.slots[3]);
                if b == d + 1 || (d > b + 1) {
                    raw.prefer_head.entry(d).or_insert(p(3));
                } else if d == b + 1 || (b > d + 1) {
                    raw.prefer_head.entry(b).or_insert(p(1));
                }
            }
        }
    }

    match &components {
        Some(list) => {
            let mut seen = BTreeMap::new();
            for (ci, comp) in list.iter().enumerate() {
                if comp.is_empty() {
                    return Err(Error::InvalidDiagram(format!("component {} lists no arcs", ci + 1)));
                }
                for (pi, &a) in comp.iter().enumerate() {
                    if !count.contains_key(&a) {
                        return Err(Error::InvalidDiagram(format!("component list names unknown arc {}", a)));
                    }
                    if seen.insert(a, ci).is_some() {
                        return Err(Error::InvalidDiagram(format!("arc {} listed in two components", a)));
                    }
                    raw.key.insert(a, (ci, pi));
                }
            }
            if let Some((&a, _)) = count.iter().find(|(a, _)| !seen.contains_key(a)) {
                return Err(Error::InvalidDiagram(format!("arc {} missing from the component list", a)));
            }
            raw.hints = list.clone();
        }
        None => {
            for &a in count.keys() {
                raw.key.insert(a, (a, 0));
            }
        }
    }

    let d = raw.build()?;
    match colors {
        Some(c) => {
            let c: Vec<u32> = c.into_iter().map(|x| x as u32).collect();
            d.recolor(&c)
        }
        None => Ok(d),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hopf_parses_with_two_components() {
        let d = parse_pd("X[1,3,2,4] X[3,1,4,2]").unwrap();
        assert_eq!(d.component_count(), 2);
        assert_eq!(d.crossing_count(), 2);
        let s: i32 = d.crossings().iter().map(|x| x.sign as i32).sum();
        assert_eq!(s.abs(), 2);
    }

    #[test]
    fn overused_arc_reports_position() {
        match parse_pd("X[1,1,1,1]") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 0),
            other => panic!("unexpected {:?}", other),
        }
    }

    #[test]
    fn unknown_token_is_rejected() {
        assert!(matches!(parse_pd("X[1,2,3,4] Y[1]"), Err(Error::Parse { pos: 11, .. })));
    }

    #[test]
    fn inconsistent_orientation_is_rejected() {
        // both under-strands claim to enter along arc 1
        let r = parse_pd("X[1,3,2,4] X[1,4,2,3]");
        assert!(matches!(r, Err(Error::InvalidDiagram(_))), "{:?}", r);
    }

    #[test]
    fn coloring_must_match_arity_and_be_onto() {
        assert!(matches!(
            parse_pd("X[1,3,2,4] X[3,1,4,2] colors: [1]"),
            Err(Error::ColoringArity { expected: 2, got: 1 })
        ));
        assert!(parse_pd("X[1,3,2,4] X[3,1,4,2] colors: [1,3]").is_err());
        let d = parse_pd("X[1,3,2,4] X[3,1,4,2] colors: [2,1]").unwrap();
        assert_eq!(d.coloring(), vec![2, 1]);
    }

    #[test]
    fn free_loop_and_comments() {
        let d = parse_pd("# two unknots\nO[1]\nO[2]").unwrap();
        assert_eq!(d.component_count(), 2);
        assert_eq!(d.crossing_count(), 0);
    }
}
