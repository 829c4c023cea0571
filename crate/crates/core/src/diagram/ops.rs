//! Crossing surgery and diagram-level constructions.

use std::collections::BTreeSet;

use super::raw::Raw;
use super::{LinkDiagram, Port};
use crate::error::{Error, Result};

impl LinkDiagram {
    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|x| x.sign as i64).sum()
    }

    /// Symmetric matrix of pairwise linking numbers.
    pub fn linking_matrix(&self) -> Vec<Vec<i64>> {
        let m = self.components.len();
        let mut acc = vec![vec![0i64; m]; m];
        for (i, x) in self.crossings.iter().enumerate() {
            if x.singular {
                continue;
            }
            let (u, o) = self.strand_components(i);
            if u != o {
                acc[u][o] += x.sign as i64;
                acc[o][u] += x.sign as i64;
            }
        }
        for row in &mut acc {
            for v in row.iter_mut() {
                debug_assert!(*v % 2 == 0, "odd crossing count between two components");
                *v /= 2;
            }
        }
        acc
    }

    /// Sum of the linking numbers of component `i` with components of a
    /// different color.
    pub fn cross_color_linking(&self, i: usize) -> i64 {
        let lk = self.linking_matrix();
        let ci = self.components[i].color;
        (0..self.components.len()).filter(|&j| self.components[j].color != ci).map(|j| lk[i][j]).sum()
    }

    /// Crossing change. Edge numbering is preserved.
    pub fn switch(&self, crossing: usize) -> Result<Self> {
        self.check_crossing(crossing)?;
        let mut d = self.clone();
        let x = &mut d.crossings[crossing];
        let shift = if x.sign > 0 { 1 } else { 3 };
        let old = x.slots;
        for s in 0..4 {
            x.slots[(s + shift) % 4] = old[s];
        }
        x.sign = -x.sign;
        for &e in &old {
            let mut fixed = [None, None];
            for (s, &l) in d.crossings[crossing].slots.iter().enumerate() {
                if l == e {
                    let incoming = d.crossings[crossing].is_incoming(s);
                    fixed[incoming as usize] = Some(Port { crossing, slot: s });
                }
            }
            if let Some(p) = fixed[1] {
                d.edges[e].head = Some(p);
            }
            if let Some(p) = fixed[0] {
                d.edges[e].tail = Some(p);
            }
        }
        Ok(d)
    }

    /// Oriented smoothing; the crossing disappears.
    pub fn smooth_oriented(&self, crossing: usize) -> Result<Self> {
        self.check_crossing(crossing)?;
        let pairs = if self.crossings[crossing].sign > 0 { [(0, 1), (3, 2)] } else { [(0, 3), (1, 2)] };
        self.splice(crossing, pairs)
    }

    /// The other smoothing, which does not respect orientation. The
    /// result is reoriented component by component.
    pub fn smooth_infinity(&self, crossing: usize) -> Result<Self> {
        self.check_crossing(crossing)?;
        let pairs = if self.crossings[crossing].sign > 0 { [(0, 3), (1, 2)] } else { [(0, 1), (3, 2)] };
        self.splice(crossing, pairs)
    }

    fn splice(&self, crossing: usize, pairs: [(usize, usize); 2]) -> Result<Self> {
        let x = &self.crossings[crossing];
        let joins: Vec<(usize, usize)> = pairs.iter().map(|&(a, b)| (x.slots[a], x.slots[b])).collect();
        let raw = Raw::from_diagram(self, &BTreeSet::new()).surgery(&BTreeSet::from([crossing]), &joins, &BTreeSet::new());
        Ok(raw.build()?.with_name_of(self))
    }

    fn with_name_of(mut self, other: &LinkDiagram) -> Self {
        self.name = other.name.clone();
        self
    }

    pub fn reverse_component(&self, i: usize) -> Result<Self> {
        self.check_component(i)?;
        let raw = Raw::from_diagram(self, &BTreeSet::from([i]));
        Ok(raw.build()?.with_name_of(self))
    }

    /// Removes a component; crossings it took part in are healed.
    pub fn delete_component(&self, i: usize) -> Result<Self> {
        self.check_component(i)?;
        self.delete_components(&BTreeSet::from([i]))
    }

    /// The sublink formed by the listed components (kept in their order).
    pub fn sublink(&self, keep: &[usize]) -> Result<Self> {
        for &i in keep {
            self.check_component(i)?;
        }
        let drop: BTreeSet<usize> = (0..self.components.len()).filter(|i| !keep.contains(i)).collect();
        self.delete_components(&drop)
    }

    fn delete_components(&self, comps: &BTreeSet<usize>) -> Result<Self> {
        let mut remove = BTreeSet::new();
        let mut joins = Vec::new();
        for (ci, x) in self.crossings.iter().enumerate() {
            let (u, o) = self.strand_components(ci);
            let (du, dov) = (comps.contains(&u), comps.contains(&o));
            if !du && !dov {
                continue;
            }
            remove.insert(ci);
            if du && !dov {
                joins.push((x.slots[x.over_in()], x.slots[x.over_out()]));
            } else if dov && !du {
                joins.push((x.slots[0], x.slots[2]));
            }
        }
        let drop: BTreeSet<usize> =
            comps.iter().flat_map(|&c| self.components[c].edges.iter().copied()).collect();
        let raw = Raw::from_diagram(self, &BTreeSet::new()).surgery(&remove, &joins, &drop);
        Ok(raw.build()?.with_name_of(self))
    }

    /// True iff the diagram (as a graph, free loops included) is
    /// disconnected.
    pub fn is_split(&self) -> bool {
        let m = self.components.len();
        if m <= 1 {
            return false;
        }
        let mut parent: Vec<usize> = (0..m).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for ci in 0..self.crossings.len() {
            let (u, o) = self.strand_components(ci);
            let (a, b) = (find(&mut parent, u), find(&mut parent, o));
            parent[a] = b;
        }
        let r0 = find(&mut parent, 0);
        (1..m).any(|i| find(&mut parent, i) != r0)
    }

    /// Components of `other` follow those of `self`.
    pub fn disjoint_union(&self, other: &LinkDiagram) -> LinkDiagram {
        let (nx, ne, nc) = (self.crossings.len(), self.edges.len(), self.components.len());
        let mut d = self.clone();
        for x in &other.crossings {
            let mut x = x.clone();
            x.slots = x.slots.map(|e| e + ne);
            d.crossings.push(x);
        }
        let shift = |p: Option<Port>| p.map(|p| Port { crossing: p.crossing + nx, slot: p.slot });
        for e in &other.edges {
            let mut e = e.clone();
            e.tail = shift(e.tail);
            e.head = shift(e.head);
            e.component += nc;
            d.edges.push(e);
        }
        for c in &other.components {
            let mut c = c.clone();
            c.edges = c.edges.iter().map(|e| e + ne).collect();
            d.components.push(c);
        }
        d
    }

    /// Band sum of component `i` of `self` with component `j` of `other`,
    /// made at the first edge of each. The merged component keeps the
    /// color of component `i`.
    pub fn connected_sum(&self, other: &LinkDiagram, i: usize, j: usize) -> Result<Self> {
        self.check_component(i)?;
        other.check_component(j)?;
        let other = {
            let mut o = other.clone();
            o.components[j].color = self.components[i].color;
            o
        };
        let u = self.disjoint_union(&other);
        let e = self.components[i].edges[0];
        let f = u.components[self.components.len() + j].edges[0];
        let mut raw = Raw::from_diagram(&u, &BTreeSet::new());
        let (he, hf) = (u.edges[e].head, u.edges[f].head);
        let mut drop = BTreeSet::new();
        match (he, hf) {
            (Some(he), Some(hf)) => {
                raw.crossings[he.crossing].slots[he.slot] = f;
                raw.crossings[hf.crossing].slots[hf.slot] = e;
                raw.prefer_head.insert(e, hf);
                raw.prefer_head.insert(f, he);
            }
            (None, _) => {
                drop.insert(e);
                raw.key.insert(f, (e, 0));
            }
            (_, None) => {
                drop.insert(f);
            }
        }
        if !drop.is_empty() {
            raw.loops.retain(|l| !drop.contains(l));
            raw.key.retain(|l, _| !drop.contains(l));
            raw.color.retain(|l, _| !drop.contains(l));
        }
        Ok(raw.build()?.with_name_of(self))
    }

    /// Ties `knot` into component `i` as a local knot.
    pub fn tie_local_knot(&self, i: usize, knot: &LinkDiagram) -> Result<Self> {
        if knot.component_count() != 1 {
            return Err(Error::Precondition("local knot must have one component".into()));
        }
        self.connected_sum(knot, i, 0)
    }

    /// Mirror image: every crossing switched.
    pub fn mirror(&self) -> Self {
        let mut d = self.clone();
        for c in 0..d.crossings.len() {
            d = d.switch(c).expect("valid crossing");
        }
        d
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse_pd;
    use super::*;

    fn hopf() -> LinkDiagram {
        parse_pd("X[1,3,2,4] X[3,1,4,2]").unwrap()
    }

    #[test]
    fn hopf_linking_and_writhe() {
        let h = hopf();
        assert_eq!(h.linking_matrix(), vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(h.writhe(), 2);
        let r = h.reverse_component(1).unwrap();
        assert_eq!(r.linking_matrix(), vec![vec![0, -1], vec![-1, 0]]);
        assert_eq!(r.writhe(), -2);
    }

    #[test]
    fn switch_is_an_involution() {
        let h = hopf();
        let s = h.switch(0).unwrap();
        assert_eq!(s.writhe(), 0);
        assert_eq!(s.linking_matrix(), vec![vec![0, 0], vec![0, 0]]);
        assert_eq!(s.switch(0).unwrap(), h);
    }

    #[test]
    fn smoothing_hopf_merges_components() {
        let h = hopf();
        let s = h.smooth_oriented(0).unwrap();
        assert_eq!(s.component_count(), 1);
        assert_eq!(s.crossing_count(), 1);
        let t = h.smooth_infinity(0).unwrap();
        assert_eq!(t.component_count(), 1);
    }

    #[test]
    fn delete_and_split() {
        let h = hopf();
        let k = h.delete_component(0).unwrap();
        assert_eq!(k.component_count(), 1);
        assert_eq!(k.crossing_count(), 0);
        let u = h.disjoint_union(&LinkDiagram::unknot());
        assert!(u.is_split());
        assert!(!h.is_split());
    }

    #[test]
    fn connected_sum_of_hopf_links() {
        let h = hopf();
        let s = h.connected_sum(&h, 0, 0).unwrap();
        assert_eq!(s.component_count(), 3);
        assert_eq!(s.crossing_count(), 4);
        let lk = s.linking_matrix();
        assert_eq!(lk[0][1] + lk[0][2], 2);
        let t = h.connected_sum(&LinkDiagram::unknot(), 1, 0).unwrap();
        assert_eq!(t, h);
    }
}
