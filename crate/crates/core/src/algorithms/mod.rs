//! The online coloring algorithms, all behind [`OnlineColorer`].
//!
//! * [`FirstFit`] — the greedy rule: smallest color unused by revealed
//!   neighbors.
//! * [`CBip`] — smallest color absent from the opposite shore of the
//!   vertex's revealed component; refuses non-bipartite input.
//! * [`AdviceFirstFit`] — trusts the advice bit for isolated vertices
//!   (bit 1 → color 1, bit 0 → color 2), first-fit otherwise.
//! * [`AdviceCBip`] — like CBip but isolated vertices are colored by their
//!   advice bit.
//! * [`ParityFirstFit`] — smallest color of the advised parity (bit 1 → odd,
//!   bit 0 → even) unused by revealed neighbors.
//!
//! Every algorithm is deterministic, single-run, and cheap to construct;
//! create a fresh instance (or call `reset`) per run.

mod shore;

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;

use crate::graph::Vertex;
use crate::reveal::{Color, ColorerError, OnlineColorer};

use shore::ShoreState;

/// Smallest positive color not used by any revealed neighbor.
///
/// At most `neighbors.len()` colors can be blocked, so the answer is in
/// `1..=neighbors.len() + 1`.
fn smallest_missing(neighbors: &[(Vertex, Color)], scratch: &mut Vec<bool>) -> Color {
    let cap = neighbors.len() + 2;
    scratch.clear();
    scratch.resize(cap, false);
    for &(_, c) in neighbors {
        if (c as usize) < cap {
            scratch[c as usize] = true;
        }
    }
    (1..cap).find(|&i| !scratch[i]).expect("pigeonhole") as Color
}

/// Smallest color of the given parity (odd iff `odd`) not used by any
/// revealed neighbor.
fn smallest_missing_with_parity(
    neighbors: &[(Vertex, Color)],
    odd: bool,
    scratch: &mut Vec<bool>,
) -> Color {
    let cap = 2 * neighbors.len() + 3;
    scratch.clear();
    scratch.resize(cap, false);
    for &(_, c) in neighbors {
        if (c as usize) < cap {
            scratch[c as usize] = true;
        }
    }
    let start = if odd { 1 } else { 2 };
    (start..cap)
        .step_by(2)
        .find(|&i| !scratch[i])
        .expect("pigeonhole") as Color
}

/// Greedy first-fit; ignores advice.
#[derive(Debug, Default)]
pub struct FirstFit {
    scratch: Vec<bool>,
}

impl FirstFit {
    pub fn new() -> Self {
        Self::default()
    }
}

impl OnlineColorer for FirstFit {
    fn reset(&mut self) {}

    fn color_next(
        &mut self,
        _vertex: Vertex,
        revealed_neighbors: &[(Vertex, Color)],
        _advice: Option<bool>,
    ) -> Result<Color, ColorerError> {
        Ok(smallest_missing(revealed_neighbors, &mut self.scratch))
    }
}

/// First-fit that colors isolated vertices by their advice bit
/// (1 → color 1, 0 → color 2) and ignores advice otherwise.
#[derive(Debug, Default)]
pub struct AdviceFirstFit {
    scratch: Vec<bool>,
}

impl AdviceFirstFit {
    pub fn new() -> Self {
        Self::default()
    }
}

impl OnlineColorer for AdviceFirstFit {
    fn reset(&mut self) {}

    fn color_next(
        &mut self,
        _vertex: Vertex,
        revealed_neighbors: &[(Vertex, Color)],
        advice: Option<bool>,
    ) -> Result<Color, ColorerError> {
        if revealed_neighbors.is_empty() {
            let bit = advice.ok_or(ColorerError::MissingAdvice)?;
            return Ok(if bit { 1 } else { 2 });
        }
        Ok(smallest_missing(revealed_neighbors, &mut self.scratch))
    }
}

/// Smallest color of the advised parity unused by revealed neighbors
/// (bit 1 → odd colors, bit 0 → even colors).
#[derive(Debug, Default)]
pub struct ParityFirstFit {
    scratch: Vec<bool>,
}

impl ParityFirstFit {
    pub fn new() -> Self {
        Self::default()
    }
}

impl OnlineColorer for ParityFirstFit {
    fn reset(&mut self) {}

    fn color_next(
        &mut self,
        _vertex: Vertex,
        revealed_neighbors: &[(Vertex, Color)],
        advice: Option<bool>,
    ) -> Result<Color, ColorerError> {
        let bit = advice.ok_or(ColorerError::MissingAdvice)?;
        Ok(smallest_missing_with_parity(
            revealed_neighbors,
            bit,
            &mut self.scratch,
        ))
    }
}

/// Component-bipartition rule: color with the smallest color not present on
/// the opposite shore of the vertex's revealed component. Isolated vertices
/// get color 1. Raises [`ColorerError::NonBipartiteInput`] on odd cycles.
#[derive(Debug, Default)]
pub struct CBip {
    state: ShoreState,
}

impl CBip {
    pub fn new() -> Self {
        Self::default()
    }
}

impl OnlineColorer for CBip {
    fn reset(&mut self) {
        self.state.clear();
    }

    fn color_next(
        &mut self,
        vertex: Vertex,
        revealed_neighbors: &[(Vertex, Color)],
        _advice: Option<bool>,
    ) -> Result<Color, ColorerError> {
        let slot = self.state.ensure(vertex);
        for &(u, _) in revealed_neighbors {
            let u_slot = self.state.ensure(u);
            self.state.join_opposite(slot, u_slot)?;
        }
        let color = self.state.opposite_smallest_absent(slot);
        self.state.record_color(slot, color);
        Ok(color)
    }
}

/// [`CBip`] with advice: isolated vertices are colored by the advice bit
/// (1 → color 1, 0 → color 2); otherwise the CBip rule applies and the
/// advice is ignored.
#[derive(Debug, Default)]
pub struct AdviceCBip {
    state: ShoreState,
}

impl AdviceCBip {
    pub fn new() -> Self {
        Self::default()
    }
}

impl OnlineColorer for AdviceCBip {
    fn reset(&mut self) {
        self.state.clear();
    }

    fn color_next(
        &mut self,
        vertex: Vertex,
        revealed_neighbors: &[(Vertex, Color)],
        advice: Option<bool>,
    ) -> Result<Color, ColorerError> {
        let slot = self.state.ensure(vertex);
        if revealed_neighbors.is_empty() {
            let bit = advice.ok_or(ColorerError::MissingAdvice)?;
            let color = if bit { 1 } else { 2 };
            self.state.record_color(slot, color);
            return Ok(color);
        }
        for &(u, _) in revealed_neighbors {
            let u_slot = self.state.ensure(u);
            self.state.join_opposite(slot, u_slot)?;
        }
        let color = self.state.opposite_smallest_absent(slot);
        self.state.record_color(slot, color);
        Ok(color)
    }
}

/// Stable registry names, used by the CLI and config files.
pub const FIRST_FIT: &str = "first-fit";
pub const CBIP: &str = "cbip";
pub const ADVICE_FIRST_FIT: &str = "advice-first-fit";
pub const ADVICE_CBIP: &str = "advice-cbip";
pub const PARITY_FIRST_FIT: &str = "parity-first-fit";

/// All registered algorithm names in a stable order.
pub const ALGORITHM_NAMES: [&str; 5] = [
    FIRST_FIT,
    CBIP,
    ADVICE_FIRST_FIT,
    ADVICE_CBIP,
    PARITY_FIRST_FIT,
];

type Factory = Box<dyn Fn() -> Box<dyn OnlineColorer> + Send + Sync>;

struct RegistryEntry {
    name: String,
    requires_advice: bool,
    factory: Factory,
}

/// Name-keyed algorithm factory.
///
/// The standard registry holds the five algorithms above; entries can be
/// replaced (e.g. with deliberately broken variants) to check that the
/// verification machinery catches mutations.
pub struct Registry {
    entries: Vec<RegistryEntry>,
}

impl Registry {
    pub fn standard() -> Self {
        let mut r = Registry { entries: Vec::new() };
        r.register(FIRST_FIT, false, Box::new(|| Box::new(FirstFit::new())));
        r.register(CBIP, false, Box::new(|| Box::new(CBip::new())));
        r.register(
            ADVICE_FIRST_FIT,
            true,
            Box::new(|| Box::new(AdviceFirstFit::new())),
        );
        r.register(ADVICE_CBIP, true, Box::new(|| Box::new(AdviceCBip::new())));
        r.register(
            PARITY_FIRST_FIT,
            true,
            Box::new(|| Box::new(ParityFirstFit::new())),
        );
        r
    }

    /// Adds or replaces an entry.
    pub fn register(&mut self, name: &str, requires_advice: bool, factory: Factory) {
        if let Some(e) = self.entries.iter_mut().find(|e| e.name == name) {
            e.requires_advice = requires_advice;
            e.factory = factory;
        } else {
            self.entries.push(RegistryEntry {
                name: String::from(name),
                requires_advice,
                factory,
            });
        }
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|e| e.name.as_str())
    }

    pub fn requires_advice(&self, name: &str) -> Option<bool> {
        self.entries
            .iter()
            .find(|e| e.name == name)
            .map(|e| e.requires_advice)
    }

    pub fn create(&self, name: &str) -> Option<Box<dyn OnlineColorer>> {
        self.entries
            .iter()
            .find(|e| e.name == name)
            .map(|e| (e.factory)())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{bipartition, Graph};
    use crate::reveal::{make_predictions, run, ArrivalOrder, ErrorMode};
    use alloc::vec;

    #[test]
    fn first_fit_rule() {
        let mut ff = FirstFit::new();
        assert_eq!(ff.color_next(0, &[], None).unwrap(), 1);
        assert_eq!(
            ff.color_next(1, &[(0, 1), (2, 2), (3, 4)], None).unwrap(),
            3
        );
    }

    #[test]
    fn advice_first_fit_isolated_follows_advice() {
        let mut a = AdviceFirstFit::new();
        assert_eq!(a.color_next(0, &[], Some(true)).unwrap(), 1);
        assert_eq!(a.color_next(1, &[], Some(false)).unwrap(), 2);
        // Non-isolated: advice ignored.
        assert_eq!(
            a.color_next(2, &[(0, 1), (1, 2)], Some(false)).unwrap(),
            3
        );
        assert_eq!(
            a.color_next(3, &[], None),
            Err(ColorerError::MissingAdvice)
        );
    }

    #[test]
    fn parity_first_fit_rule() {
        let mut p = ParityFirstFit::new();
        assert_eq!(p.color_next(0, &[], Some(true)).unwrap(), 1);
        assert_eq!(p.color_next(1, &[], Some(false)).unwrap(), 2);
        // Neighbor colored 1 and advised odd: forced to 3.
        assert_eq!(p.color_next(2, &[(0, 1)], Some(true)).unwrap(), 3);
        assert_eq!(p.color_next(3, &[], None), Err(ColorerError::MissingAdvice));
    }

    #[test]
    fn cbip_isolated_gets_one() {
        let mut c = CBip::new();
        assert_eq!(c.color_next(5, &[], None).unwrap(), 1);
    }

    #[test]
    fn cbip_merge_example_forces_three() {
        // Tree edges a-b, e-b, e-c with order (a, b, c, e): merging the
        // components of b and c puts colors {2, 1} on e's opposite shore.
        let mut c = CBip::new();
        assert_eq!(c.color_next(0, &[], None).unwrap(), 1); // a
        assert_eq!(c.color_next(1, &[(0, 1)], None).unwrap(), 2); // b
        assert_eq!(c.color_next(2, &[], None).unwrap(), 1); // c
        assert_eq!(c.color_next(3, &[(1, 2), (2, 1)], None).unwrap(), 3); // e
    }

    #[test]
    fn cbip_merge_example_reuses_one() {
        // Edges a-b, c-d, e-b, e-d with order (a, b, c, d, e): e's opposite
        // shore is {b, d} with colors {2, 2}, so e gets 1.
        let mut c = CBip::new();
        assert_eq!(c.color_next(0, &[], None).unwrap(), 1);
        assert_eq!(c.color_next(1, &[(0, 1)], None).unwrap(), 2);
        assert_eq!(c.color_next(2, &[], None).unwrap(), 1);
        assert_eq!(c.color_next(3, &[(2, 1)], None).unwrap(), 2);
        assert_eq!(c.color_next(4, &[(1, 2), (3, 2)], None).unwrap(), 1);
    }

    #[test]
    fn cbip_rejects_odd_cycle() {
        let mut c = CBip::new();
        c.color_next(0, &[], None).unwrap();
        c.color_next(1, &[(0, 1)], None).unwrap();
        let err = c.color_next(2, &[(0, 1), (1, 2)], None);
        assert_eq!(err, Err(ColorerError::NonBipartiteInput));
    }

    #[test]
    fn advice_cbip_keeps_two_colors_with_correct_advice() {
        // Same tree as the three-color CBip example, but the two isolated
        // reveals carry correct advice, which prevents the 1/1 collision.
        let g = Graph::from_edges(4, [(0, 1), (1, 3), (2, 3)]).unwrap();
        let b = bipartition(&g).unwrap();
        let p = make_predictions(&b, &ErrorMode::None).unwrap();
        let order = ArrivalOrder::given(vec![0, 1, 2, 3]).unwrap();
        let mut alg = AdviceCBip::new();
        let t = run(&g, &order, Some(&p), &mut alg).unwrap();
        assert_eq!(t.colors_used(), 2);
    }

    #[test]
    fn advice_cbip_isolated_follows_advice() {
        let mut a = AdviceCBip::new();
        assert_eq!(a.color_next(0, &[], Some(false)).unwrap(), 2);
        assert_eq!(a.color_next(1, &[], Some(true)).unwrap(), 1);
        assert_eq!(a.color_next(2, &[], None), Err(ColorerError::MissingAdvice));
    }

    #[test]
    fn registry_exposes_all_algorithms() {
        let r = Registry::standard();
        for name in ALGORITHM_NAMES {
            assert!(r.create(name).is_some(), "{name} missing");
        }
        assert_eq!(r.requires_advice(FIRST_FIT), Some(false));
        assert_eq!(r.requires_advice(ADVICE_CBIP), Some(true));
        assert!(r.create("no-such-algorithm").is_none());
    }
}
