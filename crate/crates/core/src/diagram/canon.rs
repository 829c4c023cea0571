//! Relabeling-invariant keys for diagrams.

use std::fmt::Write;

use super::LinkDiagram;

/// A string that depends only on the diagram up to relabeling of edges,
/// crossings and components. With `colored`, component colors are part
/// of the key.
pub fn canonical_code(d: &LinkDiagram, colored: bool) -> String {
    let m = d.components.len();
    // connected pieces of the crossing graph
    let mut piece = vec![usize::MAX; m];
    let mut pieces: Vec<Vec<usize>> = Vec::new();
    for c in 0..m {
        if piece[c] != usize::MAX || d.is_free_loop(d.components[c].edges[0]) {
            continue;
        }
        let id = pieces.len();
        let mut stack = vec![c];
        let mut members = Vec::new();
        piece[c] = id;
        while let Some(k) = stack.pop() {
            members.push(k);
            for &e in &d.components[k].edges {
                let h = d.edges[e].head.unwrap();
                for &f in &d.crossings[h.crossing].slots {
                    let o = d.edges[f].component;
                    if piece[o] == usize::MAX {
                        piece[o] = id;
                        stack.push(o);
                    }
                }
            }
        }
        pieces.push(members);
    }

    let mut codes: Vec<String> = pieces
        .iter()
        .map(|members| {
            members
                .iter()
                .flat_map(|&k| d.components[k].edges.iter().copied())
                .map(|start| piece_code(d, start, colored))
                .min()
                .unwrap()
        })
        .collect();
    codes.sort();
    let mut loops: Vec<u32> = (0..m)
        .filter(|&c| d.is_free_loop(d.components[c].edges[0]))
        .map(|c| if colored { d.components[c].color } else { 0 })
        .collect();
    loops.sort();
    let mut out = codes.join("|");
    for c in loops {
        if colored {
            let _ = write!(out, "|O{}", c);
        } else {
            out.push_str("|O");
        }
    }
    out
}

fn piece_code(d: &LinkDiagram, start: usize, colored: bool) -> String {
    let mut label = vec![usize::MAX; d.edges.len()];
    let mut order: Vec<usize> = Vec::new();
    let mut seen = vec![false; d.crossings.len()];
    let mut comp_colors = Vec::new();
    let mut next = 0;
    let mut s = start;
    loop {
        comp_colors.push(d.components[d.edges[s].component].color);
        let mut cur = s;
        loop {
            label[cur] = next;
            next += 1;
            let h = d.edges[cur].head.unwrap();
            if !seen[h.crossing] {
                seen[h.crossing] = true;
                order.push(h.crossing);
            }
            cur = d.crossings[h.crossing].slots[(h.slot + 2) % 4];
            if cur == s {
                break;
            }
        }
        let found = order.iter().flat_map(|&x| d.crossings[x].slots).find(|&e| label[e] == usize::MAX);
        match found {
            Some(e) => s = e,
            None => break,
        }
    }
    let mut out = String::new();
    for &x in &order {
        let c = &d.crossings[x];
        let mark = if c.singular {
            if c.sign > 0 {
                'S'
            } else {
                's'
            }
        } else if c.sign > 0 {
            '+'
        } else {
            '-'
        };
        let _ = write!(out, "{}.{}.{}.{}{}", label[c.slots[0]], label[c.slots[1]], label[c.slots[2]], label[c.slots[3]], mark);
    }
    if colored {
        let _ = write!(out, "/{:?}", comp_colors);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::parse_pd;
    use super::*;

    #[test]
    fn relabeling_invariance() {
        let a = parse_pd("X[1,3,2,4] X[3,1,4,2]").unwrap();
        let b = parse_pd("X[7,5,8,6] X[5,7,6,8]").unwrap();
        assert_eq!(canonical_code(&a, false), canonical_code(&b, false));
        let c = parse_pd("X[3,1,4,2] X[1,3,2,4]").unwrap();
        assert_eq!(canonical_code(&a, true), canonical_code(&c, true));
    }

    #[test]
    fn distinguishes_simple_cases() {
        let h = parse_pd("X[1,3,2,4] X[3,1,4,2]").unwrap();
        let u = LinkDiagram::unlink(2);
        assert_ne!(canonical_code(&h, false), canonical_code(&u, false));
        assert_ne!(canonical_code(&h, false), canonical_code(&h.switch(0).unwrap(), false));
        let h2 = h.recolor(&[1, 2]).unwrap();
        assert_eq!(canonical_code(&h, false), canonical_code(&h2, false));
        assert_ne!(canonical_code(&h, true), canonical_code(&h2, true));
    }
}
