//! Oriented link diagrams in planar-diagram form.
//!
//! A crossing lists its four incident edges counterclockwise, starting
//! with the incoming under-strand, so slots 0 and 2 carry the under-strand
//! (in, out) and slots 1 and 3 the over-strand. The crossing is positive
//! when the over-strand enters at slot 3 and negative when it enters at
//! slot 1. Edges are numbered consecutively along components.

mod braid;
mod canon;
mod ops;
mod parse;
mod raw;
mod render;

use std::collections::BTreeSet;

use crate::error::{Error, Result};

pub use braid::{braid_closure, parse_braid, BraidWord};
pub use canon::canonical_code;
pub use parse::{parse_diagram, parse_pd};
pub use render::DiagramJson;

/// A position on a crossing: crossing index and slot `0..4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Port {
    pub crossing: usize,
    pub slot: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    /// Edge ids in counterclockwise order from the incoming under-strand.
    pub slots: [usize; 4],
    /// +1 or -1. For a marked double point this is the sign of the
    /// crossing obtained by putting the slot-0 strand underneath.
    pub sign: i8,
    /// Marked double point of a singular link.
    pub singular: bool,
}

impl Crossing {
    /// Slot where the over-strand enters.
    pub fn over_in(&self) -> usize {
        if self.sign > 0 {
            3
        } else {
            1
        }
    }

    pub fn over_out(&self) -> usize {
        if self.sign > 0 {
            1
        } else {
            3
        }
    }

    pub fn is_incoming(&self, slot: usize) -> bool {
        slot == 0 || slot == self.over_in()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    /// Where the edge starts; `None` only for a crossing-free loop.
    pub tail: Option<Port>,
    /// Where the edge ends; `None` only for a crossing-free loop.
    pub head: Option<Port>,
    pub component: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Component {
    /// Edge ids in traversal order.
    pub edges: Vec<usize>,
    /// Color label (colors are positive integers).
    pub color: u32,
}

/// An oriented, colored link diagram.
#[derive(Clone, Debug)]
pub struct LinkDiagram {
    crossings: Vec<Crossing>,
    edges: Vec<Edge>,
    components: Vec<Component>,
    name: Option<String>,
}

impl PartialEq for LinkDiagram {
    /// Structural equality; the name is ignored.
    fn eq(&self, other: &Self) -> bool {
        self.crossings == other.crossings && self.edges == other.edges && self.components == other.components
    }
}

impl Eq for LinkDiagram {}

impl LinkDiagram {
    /// The crossing-free unknot.
    pub fn unknot() -> Self {
        Self::unlink(1)
    }

    /// The crossing-free `m`-component unlink, all components color 1.
    pub fn unlink(m: usize) -> Self {
        LinkDiagram {
            crossings: Vec::new(),
            edges: (0..m).map(|i| Edge { tail: None, head: None, component: i }).collect(),
            components: (0..m).map(|i| Component { edges: vec![i], color: 1 }).collect(),
            name: None,
        }
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = Some(name.to_string());
        self
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    /// Color of each component, in component order.
    pub fn coloring(&self) -> Vec<u32> {
        self.components.iter().map(|c| c.color).collect()
    }

    /// Distinct colors in increasing order.
    pub fn colors(&self) -> Vec<u32> {
        self.components.iter().map(|c| c.color).collect::<BTreeSet<_>>().into_iter().collect()
    }

    pub fn color_count(&self) -> usize {
        self.colors().len()
    }

    /// Replaces the coloring. The new coloring must have one entry per
    /// component and use exactly the colors `1..=n` for some `n`.
    pub fn recolor(&self, coloring: &[u32]) -> Result<Self> {
        if coloring.len() != self.components.len() {
            return Err(Error::ColoringArity { expected: self.components.len(), got: coloring.len() });
        }
        check_onto(coloring)?;
        Ok(self.relabel_colors(coloring))
    }

    /// Replaces the coloring without the surjectivity check (used for
    /// sublinks, which keep the labels of the parent link).
    pub fn relabel_colors(&self, coloring: &[u32]) -> Self {
        assert_eq!(coloring.len(), self.components.len(), "coloring arity");
        let mut d = self.clone();
        for (c, &k) in d.components.iter_mut().zip(coloring) {
            c.color = k;
        }
        d
    }

    /// Every component colored 1.
    pub fn monochromatic(&self) -> Self {
        self.relabel_colors(&vec![1; self.components.len()])
    }

    /// Components of the under- and over-strand at a crossing.
    pub fn strand_components(&self, crossing: usize) -> (usize, usize) {
        let x = &self.crossings[crossing];
        (self.edges[x.slots[0]].component, self.edges[x.slots[1]].component)
    }

    pub fn is_free_loop(&self, edge: usize) -> bool {
        self.edges[edge].head.is_none()
    }

    pub fn singular_crossings(&self) -> Vec<usize> {
        (0..self.crossings.len()).filter(|&i| self.crossings[i].singular).collect()
    }

    pub(crate) fn check_crossing(&self, crossing: usize) -> Result<()> {
        if crossing >= self.crossings.len() {
            return Err(Error::IndexOutOfRange { index: crossing, limit: self.crossings.len() });
        }
        Ok(())
    }

    pub(crate) fn check_component(&self, i: usize) -> Result<()> {
        if i >= self.components.len() {
            return Err(Error::IndexOutOfRange { index: i, limit: self.components.len() });
        }
        Ok(())
    }

    /// Fails if the diagram has marked double points.
    pub fn require_classical(&self) -> Result<()> {
        if self.crossings.iter().any(|x| x.singular) {
            return Err(Error::Precondition("diagram has marked double points".into()));
        }
        Ok(())
    }
}

pub(crate) fn check_onto(coloring: &[u32]) -> Result<()> {
    let set: BTreeSet<u32> = coloring.iter().copied().collect();
    let n = set.len() as u32;
    if set.iter().copied().ne(1..=n) {
        return Err(Error::InvalidDiagram(format!("coloring {:?} is not onto 1..{}", coloring, n)));
    }
    Ok(())
}

/// A diagram with marked double points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularLink {
    base: LinkDiagram,
    singular: Vec<usize>,
}

impl SingularLink {
    /// Wraps a diagram whose marked crossings are the double points.
    pub fn new(base: LinkDiagram) -> Self {
        let singular = base.singular_crossings();
        SingularLink { base, singular }
    }

    /// Marks the given crossings of a classical diagram as double points.
    pub fn mark(base: &LinkDiagram, points: &[usize]) -> Result<Self> {
        let mut d = base.clone();
        for &p in points {
            d.check_crossing(p)?;
            d.crossings[p].singular = true;
        }
        Ok(Self::new(d))
    }

    pub fn base(&self) -> &LinkDiagram {
        &self.base
    }

    pub fn points(&self) -> &[usize] {
        &self.singular
    }

    /// Checks that every double point joins two strands of one color.
    pub fn check_colors(&self) -> Result<()> {
        for &p in &self.singular {
            let (u, o) = self.base.strand_components(p);
            if self.base.components[u].color != self.base.components[o].color {
                return Err(Error::ColorViolation(p));
            }
        }
        Ok(())
    }

    /// Resolves every double point with the sign in `signs`.
    pub fn resolve(&self, signs: &[i8]) -> LinkDiagram {
        assert_eq!(signs.len(), self.singular.len(), "one sign per double point");
        let mut d = self.base.clone();
        for (&p, &s) in self.singular.iter().zip(signs) {
            d.crossings[p].singular = false;
            if d.crossings[p].sign != s {
                d = d.switch(p).expect("crossing index is valid");
            }
        }
        d
    }
}
