//! Braid words and their closures.

use super::raw::{Raw, RawCrossing};
use super::{check_onto, LinkDiagram, Port};
use crate::error::{Error, Result};

/// A braid on `strands` strands; `+i` is the generator `s_i`, `-i` its
/// inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidWord {
    pub strands: usize,
    pub word: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, word: Vec<i32>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::InvalidDiagram("a braid needs at least one strand".into()));
        }
        for &g in &word {
            if g == 0 || g.unsigned_abs() as usize >= strands {
                return Err(Error::InvalidDiagram(format!("generator {} out of range for {} strands", g, strands)));
            }
        }
        Ok(BraidWord { strands, word })
    }

    /// The strand permutation: position `i` at the bottom ends at `perm[i]`.
    pub fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strands).collect();
        for &g in &self.word {
            let i = g.unsigned_abs() as usize - 1;
            at.swap(i, i + 1);
        }
        let mut perm = vec![0; self.strands];
        for (pos, &s) in at.iter().enumerate() {
            perm[s] = pos;
        }
        perm
    }

    pub fn render(&self) -> String {
        let gens: Vec<String> = self
            .word
            .iter()
            .map(|&g| if g > 0 { format!("s{}", g) } else { format!("-s{}", -g) })
            .collect();
        format!("braid({}): {}", self.strands, gens.join(" "))
    }
}

/// Parses `braid(n): s1 s1 -s2 ...`.
pub fn parse_braid(text: &str) -> Result<BraidWord> {
    let t = text.trim_start();
    let offset = text.len() - t.len();
    let perr = |pos: usize, msg: &str| Error::Parse { pos: offset + pos, msg: msg.to_string() };
    let rest = t.strip_prefix("braid(").ok_or_else(|| perr(0, "expected `braid(`"))?;
    let close = rest.find(')').ok_or_else(|| perr(6, "expected `)`"))?;
    let strands: usize = rest[..close].trim().parse().map_err(|_| perr(6, "bad strand count"))?;
    let after = &rest[close + 1..];
    let body = after.trim_start().strip_prefix(':').ok_or_else(|| perr(7 + close, "expected `:`"))?;
    let body_start = offset + t.len() - body.len();
    let mut word = Vec::new();
    let mut pos = 0;
    for tok in body.split_whitespace() {
        let tpos = body[pos..].find(tok).unwrap() + pos;
        pos = tpos + tok.len();
        let (neg, g) = match tok.strip_prefix('-') {
            Some(r) => (true, r),
            None => (false, tok),
        };
        let idx: i32 = g
            .strip_prefix('s')
            .and_then(|n| n.parse().ok())
            .ok_or(Error::Parse { pos: body_start + tpos, msg: format!("bad generator `{}`", tok) })?;
        word.push(if neg { -idx } else { idx });
    }
    BraidWord::new(strands, word)
}

/// Closure of a braid drawn upward; strands close up on the right.
///
/// For `s_i` the strand at position `i` crosses over the strand at `i+1`
/// from lower left to upper right, giving a positive crossing.
pub fn braid_closure(b: &BraidWord, coloring: Option<&[u32]>) -> Result<LinkDiagram> {
    let n = b.strands;
    let mut raw = Raw::default();
    let mut current: Vec<usize> = (0..n).collect();
    let mut next = n;
    let mut joins = Vec::new();
    for &g in &b.word {
        let i = g.unsigned_abs() as usize - 1;
        let (sw, se) = (current[i], current[i + 1]);
        let (nw, ne) = (next, next + 1);
        next += 2;
        let ci = raw.crossings.len();
        let p = |slot| Port { crossing: ci, slot };
        if g > 0 {
            // under SE -> NW, over SW -> NE
            raw.crossings.push(RawCrossing { slots: [se, ne, nw, sw], singular: false });
            raw.forced.extend([(se, p(0), true), (nw, p(2), false), (sw, p(3), true), (ne, p(1), false)]);
        } else {
            // under SW -> NE, over SE -> NW
            raw.crossings.push(RawCrossing { slots: [sw, se, ne, nw], singular: false });
            raw.forced.extend([(sw, p(0), true), (ne, p(2), false), (se, p(1), true), (nw, p(3), false)]);
        }
        current[i] = nw;
        current[i + 1] = ne;
    }
    for pos in 0..n {
        joins.push((current[pos], pos));
    }
    // identify top and bottom labels
    let mut rep: Vec<usize> = (0..next).collect();
    fn find(rep: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while rep[r] != r {
            r = rep[r];
        }
        rep[x] = r;
        r
    }
    for (a, b) in joins {
        let (ra, rb) = (find(&mut rep, a), find(&mut rep, b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            rep[hi] = lo;
        }
    }
    let map: Vec<usize> = (0..next).map(|x| find(&mut rep, x)).collect();
    for x in &mut raw.crossings {
        x.slots = x.slots.map(|l| map[l]);
    }
    for f in &mut raw.forced {
        f.0 = map[f.0];
    }
    let mut labels: Vec<usize> = map.clone();
    labels.sort();
    labels.dedup();
    let used: std::collections::BTreeSet<usize> = raw.crossings.iter().flat_map(|x| x.slots).collect();
    for &l in &labels {
        raw.key.insert(l, (l, 0));
        raw.color.insert(l, 1);
        if !used.contains(&l) {
            raw.loops.push(l);
        }
    }
    let d = raw.build()?;
    match coloring {
        Some(c) => {
            check_onto(c)?;
            d.recolor(c)
        }
        None => Ok(d),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render() {
        let b = parse_braid("braid(3): s1 -s2 s1").unwrap();
        assert_eq!(b.word, vec![1, -2, 1]);
        assert_eq!(b.render(), "braid(3): s1 -s2 s1");
        assert!(parse_braid("braid(2): s2").is_err());
        assert!(matches!(parse_braid("braid(2): s1 t1"), Err(Error::Parse { pos: 13, .. })));
    }

    #[test]
    fn trefoil_closure_is_a_knot() {
        let d = braid_closure(&parse_braid("braid(2): s1 s1 s1").unwrap(), None).unwrap();
        assert_eq!(d.component_count(), 1);
        assert_eq!(d.crossing_count(), 3);
        assert!(d.crossings().iter().all(|x| x.sign == 1));
    }

    #[test]
    fn empty_word_gives_free_loops() {
        let d = braid_closure(&BraidWord::new(1, vec![]).unwrap(), None).unwrap();
        assert_eq!(d.component_count(), 1);
        assert!(d.is_free_loop(0));
        let d = braid_closure(&BraidWord::new(3, vec![1, 1]).unwrap(), None).unwrap();
        assert_eq!(d.component_count(), 3);
    }
}
