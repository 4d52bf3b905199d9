//! Shore bookkeeping for the component-bipartition colorers.
//!
//! A union-find over the revealed vertices carries, per vertex, a parity bit
//! relative to its component root; an edge forces opposite parities, so a
//! same-parity union is exactly an odd cycle. Each root additionally owns a
//! pair of color sets: the colors used so far on each (relative) shore of
//! its component. Union is by size with path compression; the smaller
//! component's color sets are folded into the larger's, aligned by the
//! parity offset of the link.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::graph::Vertex;
use crate::reveal::{Color, ColorerError};

/// Set of colors stored as a bitset; color `c` maps to bit `c - 1`.
#[derive(Clone, Debug, Default)]
pub(crate) struct ColorSet {
    words: Vec<u64>,
}

impl ColorSet {
    fn insert(&mut self, color: Color) {
        debug_assert!(color >= 1);
        let bit = (color - 1) as usize;
        let word = bit / 64;
        if word >= self.words.len() {
            self.words.resize(word + 1, 0);
        }
        self.words[word] |= 1 << (bit % 64);
    }

    /// Smallest positive color not in the set.
    fn smallest_absent(&self) -> Color {
        for (i, &w) in self.words.iter().enumerate() {
            if w != u64::MAX {
                return (i * 64) as Color + w.trailing_ones() + 1;
            }
        }
        (self.words.len() * 64) as Color + 1
    }

    fn union_with(&mut self, other: &ColorSet) {
        if other.words.len() > self.words.len() {
            self.words.resize(other.words.len(), 0);
        }
        for (w, &o) in self.words.iter_mut().zip(&other.words) {
            *w |= o;
        }
    }
}

/// Union-find with parity plus per-root shore color sets.
///
/// Vertices are registered lazily: algorithms know nothing about the graph's
/// size, so slots grow as vertices are revealed.
#[derive(Debug, Default)]
pub(crate) struct ShoreState {
    slot_of: BTreeMap<Vertex, u32>,
    parent: Vec<u32>,
    parity: Vec<u8>,
    size: Vec<u32>,
    shores: Vec<[ColorSet; 2]>,
    path_scratch: Vec<u32>,
}

impl ShoreState {
    #[cfg(test)]
    pub fn new() -> Self {
        Self::default()
    }

    pub fn clear(&mut self) {
        self.slot_of.clear();
        self.parent.clear();
        self.parity.clear();
        self.size.clear();
        self.shores.clear();
    }

    /// Slot of `v`, registering it as a fresh singleton if unseen.
    pub fn ensure(&mut self, v: Vertex) -> u32 {
        if let Some(&slot) = self.slot_of.get(&v) {
            return slot;
        }
        let slot = self.parent.len() as u32;
        self.slot_of.insert(v, slot);
        self.parent.push(slot);
        self.parity.push(0);
        self.size.push(1);
        self.shores.push([ColorSet::default(), ColorSet::default()]);
        slot
    }

    /// Root of `slot` and the parity of `slot` relative to it, with path
    /// compression.
    fn find(&mut self, slot: u32) -> (u32, u8) {
        let mut root = slot;
        while self.parent[root as usize] != root {
            self.path_scratch.push(root);
            root = self.parent[root as usize];
        }
        // The scratch stack pops root-side first, so `acc` accumulates each
        // slot's parity relative to the root as we rewrite parent pointers.
        let mut acc = 0u8;
        while let Some(s) = self.path_scratch.pop() {
            acc ^= self.parity[s as usize];
            self.parent[s as usize] = root;
            self.parity[s as usize] = acc;
        }
        (root, acc)
    }

    /// Records that `slot`'s vertex received `color` on its shore.
    pub fn record_color(&mut self, slot: u32, color: Color) {
        let (root, p) = self.find(slot);
        self.shores[root as usize][p as usize].insert(color);
    }

    /// Smallest color absent from the shore opposite `slot`'s vertex.
    pub fn opposite_smallest_absent(&mut self, slot: u32) -> Color {
        let (root, p) = self.find(slot);
        self.shores[root as usize][(p ^ 1) as usize].smallest_absent()
    }

    /// Merges the components of `a` and `b`, constraining them to opposite
    /// shores. A same-shore conflict means the revealed subgraph contains an
    /// odd cycle.
    pub fn join_opposite(&mut self, a: u32, b: u32) -> Result<(), ColorerError> {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            if pa == pb {
                return Err(ColorerError::NonBipartiteInput);
            }
            return Ok(());
        }
        let offset = pa ^ pb ^ 1;
        let (big, small) = if self.size[ra as usize] >= self.size[rb as usize] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[small as usize] = big;
        self.parity[small as usize] = offset;
        self.size[big as usize] += self.size[small as usize];
        let [s0, s1] = core::mem::take(&mut self.shores[small as usize]);
        self.shores[big as usize][offset as usize].union_with(&s0);
        self.shores[big as usize][(offset ^ 1) as usize].union_with(&s1);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn color_set_mex() {
        let mut s = ColorSet::default();
        assert_eq!(s.smallest_absent(), 1);
        s.insert(1);
        s.insert(2);
        s.insert(4);
        assert_eq!(s.smallest_absent(), 3);
        for c in 1..=64 {
            s.insert(c);
        }
        assert_eq!(s.smallest_absent(), 65);
    }

    #[test]
    fn parity_tracks_shores() {
        let mut st = ShoreState::new();
        let a = st.ensure(10);
        let b = st.ensure(20);
        let c = st.ensure(30);
        st.record_color(a, 1);
        st.join_opposite(a, b).unwrap();
        st.record_color(b, 2);
        st.join_opposite(b, c).unwrap();
        // c is on a's shore: the opposite shore holds {2}.
        assert_eq!(st.opposite_smallest_absent(c), 1);
        assert_eq!(st.opposite_smallest_absent(b), 2);
    }

    #[test]
    fn odd_cycle_detected() {
        let mut st = ShoreState::new();
        let a = st.ensure(0);
        let b = st.ensure(1);
        let c = st.ensure(2);
        st.join_opposite(a, b).unwrap();
        st.join_opposite(b, c).unwrap();
        assert_eq!(st.join_opposite(a, c), Err(ColorerError::NonBipartiteInput));
    }

    #[test]
    fn merge_aligns_color_sets() {
        let mut st = ShoreState::new();
        // Component 1: a(1) - b(2); component 2: c(1) - d(2).
        let a = st.ensure(0);
        let b = st.ensure(1);
        let c = st.ensure(2);
        let d = st.ensure(3);
        st.record_color(a, 1);
        st.join_opposite(a, b).unwrap();
        st.record_color(b, 2);
        st.record_color(c, 1);
        st.join_opposite(c, d).unwrap();
        st.record_color(d, 2);
        // Joining b-d merges into the path a-b-d-c with shores {a, d} and
        // {b, c}; both shores then hold colors {1, 2}.
        st.join_opposite(b, d).unwrap();
        assert_eq!(st.opposite_smallest_absent(a), 3);
        assert_eq!(st.opposite_smallest_absent(b), 3);
        assert_eq!(st.opposite_smallest_absent(c), 3);
        assert_eq!(st.opposite_smallest_absent(d), 3);
    }

    #[test]
    fn long_chain_parities_survive_compression() {
        let mut st = ShoreState::new();
        let slots: Vec<u32> = (0..50).map(|v| st.ensure(v)).collect();
        for w in slots.windows(2) {
            st.join_opposite(w[0], w[1]).unwrap();
        }
        for (i, &s) in slots.iter().enumerate() {
            let (_, p) = st.find(s);
            let (_, p0) = st.find(slots[0]);
            assert_eq!((p ^ p0) as usize, i % 2);
        }
        // Closing an even cycle is fine; closing an odd one is not.
        assert!(st.join_opposite(slots[0], slots[49]).is_ok());
        assert_eq!(
            st.join_opposite(slots[0], slots[48]),
            Err(ColorerError::NonBipartiteInput)
        );
    }
}
