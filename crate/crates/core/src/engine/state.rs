//! Tri-state constraint store over pierce variables, with propagation to a
//! fixed point and a replayable rule trace.
//!
//! Constraints in force:
//!   - box rule: each box has exactly 0 or 2 circled labels;
//!   - per-edge parity variables y_e tied to the pierce bits of the edge;
//!   - one parity equation per fundamental cycle (odd for reversing cycles);
//!   - the even shadow of the box rule (0 and 2 are both even).
//! Per-box forcing enumerates completions; everything linear goes through a
//! full GF(2) elimination, so coupled edges and cross-box chains resolve
//! without bespoke rules.

use std::collections::BTreeSet;

use crate::cycles::{fundamental_cycle_basis, CycleBasis, EdgeCycle};
use crate::model::{IntersectionModel, TriState};
use crate::surface::{surface_info, SimplicialSurface, SurfaceInfo};

use super::gf2::{Gf2Outcome, Gf2System};

/// A fact asserted by a decision (as opposed to derived by propagation).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Fact {
    EdgeParity { edge: usize, odd: bool },
    Pierce { var: usize, yes: bool },
}

/// One recorded rule application. Box-rule names follow the tracing
/// vocabulary: shading excludes an intersection, circling asserts one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    /// Edge has no candidate triangles at all (recorded once at start).
    NoCandidateEdge { edge: usize },
    /// Only one unshaded label left in the box: it gets shaded.
    SingleLabelShading { box_id: usize, var: usize },
    /// Two labels are circled: every other label in the box gets shaded.
    TwoYesClosure { box_id: usize, var: usize },
    /// One label circled and exactly one unshaded partner left: circle it.
    OneYesForcing { box_id: usize, var: usize },
    /// GF(2) elimination forced a pierce variable.
    ParityForcedPierce { var: usize, yes: bool },
    /// GF(2) elimination forced an edge parity.
    ParityForcedEdge { edge: usize, odd: bool },
    /// Hull rule does not apply (surface not neighborly).
    HullSkippedNotNeighborly,
}

/// Why a state is contradictory, with the violated witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Contradiction {
    /// More than two circled labels in one box.
    BoxOverfull { box_id: usize, yes_vars: Vec<usize> },
    /// A box stuck at exactly one circled label with nothing left to circle.
    BoxUnderfull { box_id: usize, lone_var: usize },
    /// The parity system is infeasible. When a short witness exists it is an
    /// orientation-reversing simple cycle whose parity sum is forced even.
    ParityInfeasible { cycle: Option<Vec<usize>> },
    /// No vertex can sit on the convex hull.
    HullNoVertex { failures: Vec<HullVertexFailure> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HullVertexFailure {
    pub vertex: usize,
    pub free_neighbors: Vec<usize>,
    pub free_edges: Vec<[usize; 2]>,
}

/// Value-semantics constraint state; branching clones it.
#[derive(Debug, Clone)]
pub struct ObstructionState {
    pub(crate) assign: Vec<TriState>,
    /// known parity per edge (decided or derived)
    pub(crate) parity: Vec<Option<bool>>,
    /// decisions asserted on the path to this state
    pub(crate) decisions: Vec<Fact>,
    /// rule applications recorded since the last `take_trace`
    pub(crate) trace: Vec<Rule>,
}

impl ObstructionState {
    pub fn assignment(&self) -> &[TriState] {
        &self.assign
    }

    pub fn var(&self, var: usize) -> TriState {
        self.assign[var]
    }

    pub fn parity(&self, edge: usize) -> Option<bool> {
        self.parity[edge]
    }

    pub fn decisions(&self) -> &[Fact] {
        &self.decisions
    }

    pub fn trace(&self) -> &[Rule] {
        &self.trace
    }

    pub fn take_trace(&mut self) -> Vec<Rule> {
        std::mem::take(&mut self.trace)
    }

    pub fn unknown_count(&self) -> usize {
        self.assign.iter().filter(|s| matches!(s, TriState::Unknown)).count()
    }
}

/// The immutable problem context a state lives against: intersection model,
/// cycle basis and the fixed GF(2) rows.
#[derive(Debug)]
pub struct ObstructionProblem<'a> {
    pub surface: &'a SimplicialSurface,
    pub info: SurfaceInfo,
    pub model: IntersectionModel,
    pub basis: CycleBasis,
    base_rows: Vec<(Vec<usize>, bool)>,
}

/// Derived integer bounds on an edge's intersection count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountBounds {
    pub min: usize,
    pub max: usize,
}

impl<'a> ObstructionProblem<'a> {
    pub fn new(surface: &'a SimplicialSurface) -> Self {
        let info = surface_info(surface);
        let model = IntersectionModel::build(surface);
        let basis = fundamental_cycle_basis(surface);
        let nvars = model.var_count();
        let mut base_rows = Vec::new();
        // y_e = sum of the edge's pierce bits
        for e in 0..surface.edges().len() {
            let mut cols = vec![nvars + e];
            cols.extend_from_slice(model.edge_vars(e));
            base_rows.push((cols, false));
        }
        // sum of y over each fundamental cycle = its orientation character
        for fc in basis.cycles() {
            let cols: Vec<usize> = fc.edge_set.iter().map(|&e| nvars + e).collect();
            base_rows.push((cols, fc.reversing));
        }
        // even shadow of the box rule
        for bx in model.boxes() {
            if !bx.labels.is_empty() {
                base_rows.push((bx.labels.clone(), false));
            }
        }
        ObstructionProblem { surface, info, model, basis, base_rows }
    }

    /// Column index of the parity variable y_e.
    pub fn y_col(&self, edge: usize) -> usize {
        self.model.var_count() + edge
    }

    pub fn column_count(&self) -> usize {
        self.model.var_count() + self.surface.edges().len()
    }

    /// Fresh state: all candidates unknown, parity rows installed, and the
    /// zero-candidate edges recorded as forced facts.
    pub fn init_state(&self) -> ObstructionState {
        let mut st = ObstructionState {
            assign: vec![TriState::Unknown; self.model.var_count()],
            parity: vec![None; self.surface.edges().len()],
            decisions: Vec::new(),
            trace: Vec::new(),
        };
        for e in 0..self.surface.edges().len() {
            if self.model.edge_vars(e).is_empty() {
                st.trace.push(Rule::NoCandidateEdge { edge: e });
            }
        }
        st
    }

    /// The GF(2) system for a state: fixed rows plus unit rows for the
    /// current assignment and the decided parities.
    pub fn system_for(&self, st: &ObstructionState) -> Gf2System {
        let mut sys = Gf2System::new(self.column_count());
        for (cols, rhs) in &self.base_rows {
            sys.add_row(cols.iter().copied(), *rhs);
        }
        for (v, s) in st.assign.iter().enumerate() {
            match s {
                TriState::Yes => {
                    sys.add_row([v], true);
                }
                TriState::No => {
                    sys.add_row([v], false);
                }
                TriState::Unknown => {}
            }
        }
        for d in &st.decisions {
            if let Fact::EdgeParity { edge, odd } = d {
                sys.add_row([self.y_col(*edge)], *odd);
            }
        }
        sys
    }

    pub fn bounds(&self, st: &ObstructionState, edge: usize) -> CountBounds {
        let vars = self.model.edge_vars(edge);
        let min = vars.iter().filter(|&&v| st.assign[v] == TriState::Yes).count();
        let max = vars.len() - vars.iter().filter(|&&v| st.assign[v] == TriState::No).count();
        CountBounds { min, max }
    }

    /// An edge is forced to meet the singular set if it has a circled label
    /// or an odd derived parity.
    pub fn forced_positive(&self, st: &ObstructionState, edge: usize) -> bool {
        self.bounds(st, edge).min >= 1 || st.parity[edge] == Some(true)
    }

    /// Record and apply an edge-parity decision, then propagate.
    pub fn assert_parity(
        &self,
        st: &ObstructionState,
        edge: usize,
        odd: bool,
    ) -> Result<ObstructionState, Contradiction> {
        let mut next = st.clone();
        if next.parity[edge] == Some(odd)
            && next.decisions.contains(&Fact::EdgeParity { edge, odd })
        {
            return Ok(next); // idempotent
        }
        next.decisions.push(Fact::EdgeParity { edge, odd });
        next.parity[edge] = Some(odd);
        self.propagate(&mut next)?;
        Ok(next)
    }

    /// Record and apply a pierce decision, then propagate.
    pub fn assert_pierce(
        &self,
        st: &ObstructionState,
        var: usize,
        yes: bool,
    ) -> Result<ObstructionState, Contradiction> {
        let want = if yes { TriState::Yes } else { TriState::No };
        let mut next = st.clone();
        if next.assign[var] == want && next.decisions.contains(&Fact::Pierce { var, yes }) {
            return Ok(next); // idempotent
        }
        next.decisions.push(Fact::Pierce { var, yes });
        next.assign[var] = want;
        self.propagate(&mut next)?;
        Ok(next)
    }

    /// Propagate to a fixed point. Box forcings and the GF(2) elimination are
    /// interleaved until neither adds anything.
    pub fn propagate(&self, st: &mut ObstructionState) -> Result<(), Contradiction> {
        self.propagate_ordered(st, None)
    }

    /// Same fixed point, but boxes processed in a caller-supplied order.
    /// Exists to let tests demonstrate confluence under rule reordering.
    pub fn propagate_ordered(
        &self,
        st: &mut ObstructionState,
        box_order: Option<&[usize]>,
    ) -> Result<(), Contradiction> {
        let default_order: Vec<usize> = (0..self.model.boxes().len()).collect();
        let order = box_order.unwrap_or(&default_order);
        loop {
            let mut changed = false;
            for &bi in order {
                changed |= self.apply_box_rule(st, bi)?;
            }
            changed |= self.apply_parity_rules(st)?;
            if !changed {
                return Ok(());
            }
        }
    }

    /// Enumerate the completions of one box (total circled must be 0 or 2)
    /// and force any label that is constant across them.
    fn apply_box_rule(
        &self,
        st: &mut ObstructionState,
        box_id: usize,
    ) -> Result<bool, Contradiction> {
        let bx = &self.model.boxes()[box_id];
        let mut yes_vars = Vec::new();
        let mut unknowns = Vec::new();
        for &v in &bx.labels {
            match st.assign[v] {
                TriState::Yes => yes_vars.push(v),
                TriState::Unknown => unknowns.push(v),
                TriState::No => {}
            }
        }
        match (yes_vars.len(), unknowns.len()) {
            (y, _) if y > 2 => Err(Contradiction::BoxOverfull { box_id, yes_vars }),
            (1, 0) => Err(Contradiction::BoxUnderfull { box_id, lone_var: yes_vars[0] }),
            (2, n) if n > 0 => {
                for v in unknowns {
                    st.assign[v] = TriState::No;
                    st.trace.push(Rule::TwoYesClosure { box_id, var: v });
                }
                Ok(true)
            }
            (1, 1) => {
                let v = unknowns[0];
                st.assign[v] = TriState::Yes;
                st.trace.push(Rule::OneYesForcing { box_id, var: v });
                Ok(true)
            }
            (0, 1) => {
                let v = unknowns[0];
                st.assign[v] = TriState::No;
                st.trace.push(Rule::SingleLabelShading { box_id, var: v });
                Ok(true)
            }
            _ => Ok(false),
        }
    }

    /// Full GF(2) elimination; fold forced bits back into the state.
    fn apply_parity_rules(&self, st: &mut ObstructionState) -> Result<bool, Contradiction> {
        let sys = self.system_for(st);
        match sys.solve() {
            Gf2Outcome::Infeasible { .. } => {
                let cycle = self.parity_witness(st, &sys);
                Err(Contradiction::ParityInfeasible { cycle })
            }
            Gf2Outcome::Feasible { forced } => {
                let nvars = self.model.var_count();
                let mut changed = false;
                for (col, val) in forced {
                    if col < nvars {
                        if st.assign[col] == TriState::Unknown {
                            st.assign[col] = if val { TriState::Yes } else { TriState::No };
                            st.trace.push(Rule::ParityForcedPierce { var: col, yes: val });
                            changed = true;
                        }
                    } else {
                        let edge = col - nvars;
                        if st.parity[edge].is_none() {
                            st.parity[edge] = Some(val);
                            st.trace.push(Rule::ParityForcedEdge { edge, odd: val });
                            changed = true;
                        }
                    }
                }
                Ok(changed)
            }
        }
    }

    /// The fundamental-basis support of a cycle-space element: the non-tree
    /// edges it contains. Basis-combinatorial, hence reproducible by the
    /// verifier without trusting any w1 value.
    pub fn basis_support(&self, edge_set: &BTreeSet<usize>) -> Vec<usize> {
        edge_set
            .iter()
            .copied()
            .filter(|e| self.basis.fundamental_for(*e).is_some())
            .collect()
    }

    /// The system for a state with one fundamental-cycle row removed: all
    /// structural rows and constants, plus every fundamental-cycle row except
    /// the one for `drop_edge`. Entailing a cycle's parity sum from this
    /// reduced system localizes a contradiction at that cycle.
    pub fn reduced_system(&self, st: &ObstructionState, drop_edge: usize) -> Gf2System {
        let nvars = self.model.var_count();
        let mut s = Gf2System::new(self.column_count());
        for e in 0..self.surface.edges().len() {
            let mut cols = vec![nvars + e];
            cols.extend_from_slice(self.model.edge_vars(e));
            s.add_row(cols, false);
        }
        for fc in self.basis.cycles() {
            if fc.nontree_edge == drop_edge {
                continue;
            }
            let cols: Vec<usize> = fc.edge_set.iter().map(|&e| nvars + e).collect();
            s.add_row(cols, fc.reversing);
        }
        for bx in self.model.boxes() {
            if !bx.labels.is_empty() {
                s.add_row(bx.labels.iter().copied(), false);
            }
        }
        for (v, a) in st.assign.iter().enumerate() {
            match a {
                TriState::Yes => {
                    s.add_row([v], true);
                }
                TriState::No => {
                    s.add_row([v], false);
                }
                TriState::Unknown => {}
            }
        }
        for d in &st.decisions {
            if let Fact::EdgeParity { edge, odd } = d {
                s.add_row([self.y_col(*edge)], *odd);
            }
        }
        s
    }

    /// Is `cycle` a valid infeasibility witness in this state: reversing,
    /// with its parity sum entailed even once its own parity requirement is
    /// set aside?
    pub fn witness_holds(&self, st: &ObstructionState, cycle: &EdgeCycle, w1: bool) -> bool {
        if !w1 {
            return false;
        }
        let edge_set: BTreeSet<usize> = cycle.edge_ids(self.surface).into_iter().collect();
        let support = self.basis_support(&edge_set);
        let Some(&drop_edge) = support.first() else {
            return false;
        };
        let sys = self.reduced_system(st, drop_edge);
        let cols: Vec<usize> = edge_set.iter().map(|&e| self.y_col(e)).collect();
        let mut probe = sys;
        probe.add_row(cols, true);
        matches!(probe.solve(), Gf2Outcome::Infeasible { .. })
    }

    /// Find a human-readable infeasibility witness: the first short
    /// orientation-reversing simple cycle whose parity sum is forced even.
    /// Preference order: cycles whose every candidate is already shaded, then
    /// any entailed-even reversing cycle, shortest first.
    fn parity_witness(&self, st: &ObstructionState, _sys: &Gf2System) -> Option<Vec<usize>> {
        for max_len in 3..=5 {
            let cycles = match crate::cycles::enumerate_simple_cycles(self.surface, max_len) {
                Ok(c) => c,
                Err(_) => return None,
            };
            let reversing: Vec<&(EdgeCycle, bool)> = cycles
                .iter()
                .filter(|(c, w1)| *w1 && c.len() == max_len)
                .collect();
            // pass 1: every candidate of every cycle edge already shaded
            for (c, _) in &reversing {
                let all_shaded = c.edge_ids(self.surface).iter().all(|&e| {
                    self.model
                        .edge_vars(e)
                        .iter()
                        .all(|&v| st.assign[v] == TriState::No)
                });
                if all_shaded && self.witness_holds(st, c, true) {
                    return Some(c.vertices().to_vec());
                }
            }
            // pass 2: any entailed-even reversing cycle
            for (c, _) in &reversing {
                if self.witness_holds(st, c, true) {
                    return Some(c.vertices().to_vec());
                }
            }
        }
        None
    }

    /// Does a full assignment satisfy every box, the parity system, and hull
    /// feasibility? Used to validate residual models.
    pub fn model_satisfied(&self, assign: &[TriState]) -> bool {
        if assign.iter().any(|s| matches!(s, TriState::Unknown)) {
            return false;
        }
        for bx in self.model.boxes() {
            let yes = bx.labels.iter().filter(|&&v| assign[v] == TriState::Yes).count();
            if yes != 0 && yes != 2 {
                return false;
            }
        }
        let st = ObstructionState {
            assign: assign.to_vec(),
            parity: vec![None; self.surface.edges().len()],
            decisions: Vec::new(),
            trace: Vec::new(),
        };
        if matches!(self.system_for(&st).solve(), Gf2Outcome::Infeasible { .. }) {
            return false;
        }
        if self.info.neighborly {
            let mut full = st;
            for e in 0..self.surface.edges().len() {
                let b = self.bounds(&full, e);
                full.parity[e] = Some(b.min % 2 == 1);
            }
            if super::hull::hull_check(self, &full).is_err() {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{build_surface, parse_lutz};

    fn tetrahedron_problem(
        s: &SimplicialSurface,
    ) -> ObstructionProblem<'_> {
        ObstructionProblem::new(s)
    }

    #[test]
    fn tetrahedron_is_trivially_consistent() {
        let s = build_surface(&parse_lutz("[[1,2,3],[1,2,4],[1,3,4],[2,3,4]]").unwrap()).unwrap();
        let p = tetrahedron_problem(&s);
        assert_eq!(p.model.var_count(), 0);
        let mut st = p.init_state();
        // all six edges have no candidates
        assert_eq!(st.trace.len(), 6);
        p.propagate(&mut st).unwrap();
        assert!(p.model_satisfied(&st.assign));
    }
}
