//! Assembly of normalized diagrams from loosely labeled crossing data.
//!
//! Every constructor (parser, braid closure, surgery) produces a [`Raw`]
//! description: crossings referring to arbitrary edge labels, orientation
//! constraints, and ordering keys. [`Raw::build`] traces components,
//! fixes orientations, rotates crossings so slot 0 is the incoming
//! under-strand, computes signs, and renumbers edges.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::{Component, Crossing, Edge, LinkDiagram, Port};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub(crate) struct RawCrossing {
    pub slots: [usize; 4],
    pub singular: bool,
}

#[derive(Clone, Debug, Default)]
pub(crate) struct Raw {
    pub crossings: Vec<RawCrossing>,
    pub loops: Vec<usize>,
    pub color: BTreeMap<usize, u32>,
    pub key: BTreeMap<usize, (usize, usize)>,
    /// Hard constraints: the label's head is (true) or tail is (false) at
    /// the port.
    pub forced: Vec<(usize, Port, bool)>,
    /// Soft preference for the head port of a label.
    pub prefer_head: BTreeMap<usize, Port>,
    /// Cyclic traversal orders supplied by the input.
    pub hints: Vec<Vec<usize>>,
}

struct Step {
    label: usize,
    tail: Port,
    head: Port,
}

impl Raw {
    pub fn from_diagram(d: &LinkDiagram, reversed: &BTreeSet<usize>) -> Raw {
        let mut r = Raw {
            crossings: d
                .crossings
                .iter()
                .map(|x| RawCrossing { slots: x.slots, singular: x.singular })
                .collect(),
            ..Raw::default()
        };
        for (i, e) in d.edges.iter().enumerate() {
            r.color.insert(i, d.components[e.component].color);
            r.key.insert(i, (i, 0));
            match (e.head, e.tail) {
                (Some(h), Some(t)) => {
                    let p = if reversed.contains(&e.component) { t } else { h };
                    r.prefer_head.insert(i, p);
                }
                _ => r.loops.push(i),
            }
        }
        r
    }

    /// Deletes crossings and identifies labels. Labels in `drop` vanish
    /// entirely (all their crossings must be in `remove`).
    pub fn surgery(self, remove: &BTreeSet<usize>, joins: &[(usize, usize)], drop: &BTreeSet<usize>) -> Raw {
        let mut parent: BTreeMap<usize, usize> = self.key.keys().map(|&l| (l, l)).collect();
        fn find(p: &mut BTreeMap<usize, usize>, x: usize) -> usize {
            let mut r = x;
            while p[&r] != r {
                r = p[&r];
            }
            let mut y = x;
            while p[&y] != r {
                let n = p[&y];
                p.insert(y, r);
                y = n;
            }
            r
        }
        for &(a, b) in joins {
            let ra = find(&mut parent, a);
            let rb = find(&mut parent, b);
            if ra != rb {
                let (lo, hi) = if self.key[&ra] <= self.key[&rb] { (ra, rb) } else { (rb, ra) };
                parent.insert(hi, lo);
            }
        }
        let labels: Vec<usize> = self.key.keys().copied().collect();
        let rep: BTreeMap<usize, usize> = labels.iter().map(|&l| (l, find(&mut parent, l))).collect();

        // crossing index remap
        let mut new_index = BTreeMap::new();
        let mut crossings = Vec::new();
        for (i, x) in self.crossings.iter().enumerate() {
            if remove.contains(&i) {
                continue;
            }
            new_index.insert(i, crossings.len());
            crossings.push(RawCrossing { slots: x.slots.map(|l| rep[&l]), singular: x.singular });
        }

        let mut candidates: BTreeMap<usize, Vec<Port>> = BTreeMap::new();
        for (&l, p) in &self.prefer_head {
            if let Some(&ni) = new_index.get(&p.crossing) {
                candidates.entry(rep[&l]).or_default().push(Port { crossing: ni, slot: p.slot });
            }
        }

        let mut out = Raw { crossings, ..Raw::default() };
        let used: BTreeSet<usize> = out.crossings.iter().flat_map(|x| x.slots).collect();
        let mut seen = BTreeSet::new();
        for &l in &labels {
            let r = rep[&l];
            if drop.contains(&l) || !seen.insert(r) {
                continue;
            }
            out.key.insert(r, self.key[&r]);
            out.color.insert(r, self.color[&r]);
            if !used.contains(&r) {
                out.loops.push(r);
            } else if let Some(c) = candidates.get(&r) {
                if c.len() == 1 {
                    out.prefer_head.insert(r, c[0]);
                }
            }
        }
        out
    }

    pub fn build(self) -> Result<LinkDiagram> {
        let n = self.crossings.len();
        let mut occ: HashMap<usize, Vec<Port>> = HashMap::new();
        for (ci, x) in self.crossings.iter().enumerate() {
            for (s, &l) in x.slots.iter().enumerate() {
                occ.entry(l).or_default().push(Port { crossing: ci, slot: s });
            }
        }
        for (l, ports) in &occ {
            if ports.len() != 2 {
                return Err(Error::InvalidDiagram(format!("arc {} is used {} times", l, ports.len())));
            }
            if self.loops.contains(l) {
                return Err(Error::InvalidDiagram(format!("loop arc {} also appears at a crossing", l)));
            }
        }
        for x in &self.crossings {
            if x.slots[0] == x.slots[2] && x.slots[1] == x.slots[3] {
                return Err(Error::InvalidDiagram("crossing with both strands closed on themselves".into()));
            }
        }
        let mut loop_set = BTreeSet::new();
        for &l in &self.loops {
            if !loop_set.insert(l) {
                return Err(Error::InvalidDiagram(format!("loop arc {} listed twice", l)));
            }
        }
        let key_of = |l: usize| self.key.get(&l).copied().unwrap_or((l, 0));

        // trace unoriented cycles, starting from labels in key order
        let mut labels: Vec<usize> = occ.keys().copied().collect();
        labels.sort_by_key(|&l| (key_of(l), l));
        let mut visited = BTreeSet::new();
        let mut cycles: Vec<Vec<Step>> = Vec::new();
        for &start in &labels {
            if visited.contains(&start) {
                continue;
            }
            let ports = &occ[&start];
            let mut steps = Vec::new();
            let (mut label, mut tail, mut head) = (start, ports[0], ports[1]);
            loop {
                visited.insert(label);
                steps.push(Step { label, tail, head });
                let next_slot = (head.slot + 2) % 4;
                let next_tail = Port { crossing: head.crossing, slot: next_slot };
                let next_label = self.crossings[head.crossing].slots[next_slot];
                let p = &occ[&next_label];
                let next_head = if p[0] == next_tail { p[1] } else { p[0] };
                if next_label == start && next_tail == steps[0].tail {
                    break;
                }
                if steps.len() > 4 * n + 4 {
                    return Err(Error::InvalidDiagram("component trace does not close".into()));
                }
                label = next_label;
                tail = next_tail;
                head = next_head;
            }
            cycles.push(steps);
        }

        // orientation per cycle: +1 keep traced direction, -1 reverse
        let mut forced_by_label: HashMap<usize, Vec<(Port, bool)>> = HashMap::new();
        for &(l, p, is_head) in &self.forced {
            forced_by_label.entry(l).or_default().push((p, is_head));
        }
        let mut dirs = Vec::with_capacity(cycles.len());
        for cyc in &cycles {
            let mut dir: Option<i8> = None;
            for st in cyc {
                for &(p, is_head) in forced_by_label.get(&st.label).map(|v| v.as_slice()).unwrap_or(&[]) {
                    let at_head = p == st.head;
                    let at_tail = p == st.tail;
                    if !at_head && !at_tail {
                        return Err(Error::InvalidDiagram(format!("arc {} constraint at foreign port", st.label)));
                    }
                    let vote = if at_head == is_head { 1 } else { -1 };
                    match dir {
                        None => dir = Some(vote),
                        Some(d) if d != vote => {
                            return Err(Error::InvalidDiagram(format!(
                                "inconsistent orientation along the component of arc {}",
                                st.label
                            )))
                        }
                        _ => {}
                    }
                }
            }
            let cyc_labels: Vec<usize> = cyc.iter().map(|s| s.label).collect();
            let cyc_set: BTreeSet<usize> = cyc_labels.iter().copied().collect();
            for hint in &self.hints {
                if !hint.iter().any(|l| cyc_set.contains(l)) {
                    continue;
                }
                let hint_set: BTreeSet<usize> = hint.iter().copied().collect();
                if hint_set != cyc_set || hint.len() != cyc_labels.len() {
                    return Err(Error::InvalidDiagram(format!("component list {:?} does not match the diagram", hint)));
                }
                if hint.len() >= 3 {
                    let vote = cyclic_direction(&cyc_labels, hint).ok_or_else(|| {
                        Error::InvalidDiagram(format!("component list {:?} is not a traversal order", hint))
                    })?;
                    match dir {
                        None => dir = Some(vote),
                        Some(d) if d != vote => {
                            return Err(Error::InvalidDiagram(format!(
                                "component list {:?} disagrees with crossing orientations",
                                hint
                            )))
                        }
                        _ => {}
                    }
                }
            }
            if dir.is_none() {
                let mut ordered: Vec<&Step> = cyc.iter().collect();
                ordered.sort_by_key(|s| (key_of(s.label), s.label));
                for st in ordered {
                    if let Some(p) = self.prefer_head.get(&st.label) {
                        if *p == st.head {
                            dir = Some(1);
                            break;
                        }
                        if *p == st.tail {
                            dir = Some(-1);
                            break;
                        }
                    }
                }
            }
            dirs.push(dir.unwrap_or(1));
        }

        // head/tail per label
        let mut head_of: HashMap<usize, Port> = HashMap::new();
        let mut tail_of: HashMap<usize, Port> = HashMap::new();
        for (cyc, &d) in cycles.iter().zip(&dirs) {
            for st in cyc {
                let (t, h) = if d > 0 { (st.tail, st.head) } else { (st.head, st.tail) };
                head_of.insert(st.label, h);
                tail_of.insert(st.label, t);
            }
        }

        // normalize crossings
        let mut rotated = vec![false; n];
        let mut crossings = Vec::with_capacity(n);
        for (ci, x) in self.crossings.iter().enumerate() {
            let under_in = head_of[&x.slots[0]] == (Port { crossing: ci, slot: 0 });
            let slots = if under_in {
                x.slots
            } else {
                rotated[ci] = true;
                [x.slots[2], x.slots[3], x.slots[0], x.slots[1]]
            };
            let over_slot3 = if under_in { 3 } else { 1 };
            let sign = if head_of[&slots[3]] == (Port { crossing: ci, slot: over_slot3 }) { 1 } else { -1 };
            crossings.push(Crossing { slots, sign, singular: x.singular });
        }
        let fix = |p: Port| -> Port {
            if rotated[p.crossing] {
                Port { crossing: p.crossing, slot: (p.slot + 2) % 4 }
            } else {
                p
            }
        };

        // components: each cycle listed from its min-key label, plus loops
        struct Comp {
            key: (usize, usize),
            labels: Vec<usize>,
        }
        let mut comps: Vec<Comp> = Vec::new();
        for (cyc, &d) in cycles.iter().zip(&dirs) {
            let mut seq: Vec<usize> = cyc.iter().map(|s| s.label).collect();
            if d < 0 {
                seq.reverse();
            }
            let start = (0..seq.len()).min_by_key(|&i| (key_of(seq[i]), seq[i])).unwrap();
            seq.rotate_left(start);
            comps.push(Comp { key: key_of(seq[0]), labels: seq });
        }
        for &l in &self.loops {
            comps.push(Comp { key: key_of(l), labels: vec![l] });
        }
        comps.sort_by_key(|c| (c.key, c.labels[0]));

        let mut id: HashMap<usize, usize> = HashMap::new();
        let mut edges = Vec::new();
        let mut components = Vec::new();
        for (ci, c) in comps.iter().enumerate() {
            let mut ids = Vec::with_capacity(c.labels.len());
            for &l in &c.labels {
                id.insert(l, edges.len());
                ids.push(edges.len());
                edges.push(Edge {
                    tail: tail_of.get(&l).map(|&p| fix(p)),
                    head: head_of.get(&l).map(|&p| fix(p)),
                    component: ci,
                });
            }
            components.push(Component { edges: ids, color: self.color.get(&c.labels[0]).copied().unwrap_or(1) });
        }
        for x in &mut crossings {
            x.slots = x.slots.map(|l| id[&l]);
        }
        Ok(LinkDiagram { crossings, edges, components, name: None })
    }
}

/// +1 if `hint` lists `seq` in the same cyclic order, -1 if reversed.
fn cyclic_direction(seq: &[usize], hint: &[usize]) -> Option<i8> {
    let n = seq.len();
    let pos = seq.iter().position(|&l| l == hint[0])?;
    if (0..n).all(|i| seq[(pos + i) % n] == hint[i]) {
        return Some(1);
    }
    if (0..n).all(|i| seq[(pos + n - i) % n] == hint[i]) {
        return Some(-1);
    }
    None
}
