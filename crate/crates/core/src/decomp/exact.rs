//! Exact search for minimum cograph partitions and covers.
//!
//! Every (edge, class) pair is a boolean "edge is in class" variable. Each
//! length-3 path `a-b-c-d` of the host yields, per class, the clause "some
//! path edge is out of the class, or some host chord is in it". Partitions
//! add "exactly one class per edge", covers "at least one". Clauses are
//! propagated whenever a single literal is left open, so a monochromatic path
//! is only rejected once its chords are decided.
//!
//! Edges are branched in a fixed order (pinned edges first, then by
//! descending degree sum). Classes are interchangeable, so a branch may only
//! open the lowest-numbered classes not used by earlier edges.

use crate::graph::{edge, Edge, Graph};

use super::constraints::{p4_constraints, P4Constraint};
use super::{DecompError, Decomposition, Mode};

/// Largest class count the solver accepts.
pub const MAX_CLASSES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverOptions {
    pub mode: Mode,
    pub k_max: usize,
    /// Search nodes (branching decisions) allowed across all tried `k`.
    pub budget_nodes: u64,
    /// Edges pinned to a set of classes before the search starts. In
    /// partition mode each set must hold exactly one class.
    pub fixed: Vec<(Edge, Vec<usize>)>,
}

impl SolverOptions {
    pub fn new(mode: Mode, k_max: usize, budget_nodes: u64) -> Self {
        SolverOptions {
            mode,
            k_max,
            budget_nodes,
            fixed: Vec::new(),
        }
    }

    pub fn pin(mut self, e: Edge, classes: Vec<usize>) -> Self {
        self.fixed.push((e, classes));
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    /// A decomposition with the least feasible number of classes.
    Found(Decomposition),
    /// No decomposition with at most `k_max` classes exists.
    Infeasible { k_max: usize },
    /// The node budget ran out while searching with `searching_k` classes.
    /// `best_known_k` is the proper-edge-coloring bound, which is always
    /// attainable without pins.
    Timeout { searching_k: usize, best_known_k: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveReport {
    pub outcome: SolveOutcome,
    pub nodes: u64,
}

/// Minimum cograph partition with at most `k_max` classes.
pub fn exact_min_partition(g: &Graph, k_max: usize, budget_nodes: u64) -> SolveReport {
    solve(g, &SolverOptions::new(Mode::Partition, k_max.min(MAX_CLASSES), budget_nodes))
        .expect("options without pins are valid")
}

/// Minimum cograph cover (classes may overlap) with at most `k_max` classes.
pub fn exact_min_cover(g: &Graph, k_max: usize, budget_nodes: u64) -> SolveReport {
    solve(g, &SolverOptions::new(Mode::Cover, k_max.min(MAX_CLASSES), budget_nodes))
        .expect("options without pins are valid")
}

/// Tries `k = 1, 2, ..., k_max` and returns the first decomposition found.
pub fn solve(g: &Graph, options: &SolverOptions) -> Result<SolveReport, DecompError> {
    if options.k_max > MAX_CLASSES {
        return Err(DecompError::TooManyClasses {
            k: options.k_max,
            max: MAX_CLASSES,
        });
    }
    let pins = resolve_pins(g, options.mode, &options.fixed)?;
    let problem = Problem::new(g, options.mode, &pins);
    let best_known_k = if g.edge_count() == 0 { 1 } else { g.max_degree() + 1 };
    let mut nodes = 0;
    for k in 1..=options.k_max {
        if problem.pinned_classes.checked_shr(k as u32).unwrap_or(0) != 0 {
            continue;
        }
        let mut search = Search::new(&problem, k, options.budget_nodes - nodes, true, false);
        let flow = search.run();
        nodes += search.nodes;
        match flow {
            Flow::Stop => {
                let masks = search.solutions.pop().expect("a stopped search recorded its solution");
                let d = problem.decomposition(g, &masks, k, true);
                debug_assert_eq!(d.validate(), Ok(()));
                return Ok(SolveReport {
                    outcome: SolveOutcome::Found(d),
                    nodes,
                });
            }
            Flow::OutOfBudget => {
                return Ok(SolveReport {
                    outcome: SolveOutcome::Timeout {
                        searching_k: k,
                        best_known_k,
                    },
                    nodes,
                })
            }
            Flow::Continue => {}
        }
    }
    Ok(SolveReport {
        outcome: SolveOutcome::Infeasible { k_max: options.k_max },
        nodes,
    })
}

/// All decompositions with exactly `k` labeled classes (no symmetry
/// breaking; class swaps count as distinct solutions).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    pub solutions: Vec<Decomposition>,
    pub nodes: u64,
    /// `false` if the node budget ran out before the search finished.
    pub complete: bool,
}

pub fn enumerate_decompositions(
    g: &Graph,
    mode: Mode,
    k: usize,
    budget_nodes: u64,
) -> Result<Enumeration, DecompError> {
    if k > MAX_CLASSES {
        return Err(DecompError::TooManyClasses { k, max: MAX_CLASSES });
    }
    let problem = Problem::new(g, mode, &[]);
    let mut search = Search::new(&problem, k, budget_nodes, false, true);
    let flow = search.run();
    let solutions = search
        .solutions
        .iter()
        .map(|masks| problem.decomposition(g, masks, k, false))
        .collect();
    Ok(Enumeration {
        solutions,
        nodes: search.nodes,
        complete: flow != Flow::OutOfBudget,
    })
}

fn resolve_pins(g: &Graph, mode: Mode, fixed: &[(Edge, Vec<usize>)]) -> Result<Vec<(usize, u64)>, DecompError> {
    let mut pins: Vec<(usize, u64)> = Vec::with_capacity(fixed.len());
    for &((u, v), ref classes) in fixed {
        let e = edge(u, v);
        let bad = |reason: &str| DecompError::BadFixedAssignment {
            edge: e,
            reason: reason.to_string(),
        };
        let id = g.edge_index(u, v).ok_or_else(|| bad("not a host edge"))?;
        if classes.is_empty() {
            return Err(bad("empty class set"));
        }
        if mode == Mode::Partition && classes.len() != 1 {
            return Err(bad("a partition pins exactly one class"));
        }
        if let Some(&c) = classes.iter().find(|&&c| c >= MAX_CLASSES) {
            return Err(bad(&format!("class {c} exceeds the solver limit")));
        }
        if pins.iter().any(|&(other, _)| other == id) {
            return Err(bad("pinned twice"));
        }
        pins.push((id, classes.iter().fold(0, |m, &c| m | 1 << c)));
    }
    Ok(pins)
}

const UNKNOWN: u8 = 0;
const IN: u8 = 1;
const OUT: u8 = 2;

struct Problem {
    mode: Mode,
    edges: usize,
    constraints: Vec<P4Constraint>,
    /// Constraint ids mentioning each edge (as path edge or chord).
    touching: Vec<Vec<usize>>,
    order: Vec<usize>,
    pins: Vec<Option<u64>>,
    pinned_classes: u64,
}

impl Problem {
    fn new(g: &Graph, mode: Mode, pins: &[(usize, u64)]) -> Self {
        let constraints = p4_constraints(g);
        let mut touching = vec![Vec::new(); g.edge_count()];
        for (i, c) in constraints.iter().enumerate() {
            for &e in c.path_edges.iter().chain(&c.chord_edges) {
                touching[e].push(i);
            }
        }
        let mut pin_of = vec![None; g.edge_count()];
        for &(e, mask) in pins {
            pin_of[e] = Some(mask);
        }
        let degree_sum = |e: usize| {
            let (u, v) = g.edges()[e];
            g.degree(u) + g.degree(v)
        };
        let mut order: Vec<usize> = (0..g.edge_count()).collect();
        order.sort_by_key(|&e| (pin_of[e].is_none(), std::cmp::Reverse(degree_sum(e)), e));
        Problem {
            mode,
            edges: g.edge_count(),
            constraints,
            touching,
            order,
            pinned_classes: pins.iter().fold(0, |m, &(_, mask)| m | mask),
            pins: pin_of,
        }
    }

    fn decomposition(&self, g: &Graph, masks: &[u64], k: usize, drop_empty: bool) -> Decomposition {
        let mut classes = vec![Vec::new(); k];
        for (e, &mask) in masks.iter().enumerate() {
            for (c, class) in classes.iter_mut().enumerate() {
                if mask >> c & 1 == 1 {
                    class.push(g.edges()[e]);
                }
            }
        }
        if drop_empty {
            classes.retain(|c| !c.is_empty());
            if classes.is_empty() {
                classes.push(Vec::new());
            }
        }
        Decomposition::new(g.clone(), classes, self.mode)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Flow {
    Continue,
    Stop,
    OutOfBudget,
}

struct Search<'p> {
    p: &'p Problem,
    k: usize,
    state: Vec<u8>,
    trail: Vec<usize>,
    queue: Vec<usize>,
    nodes: u64,
    budget: u64,
    symmetry: bool,
    collect_all: bool,
    solutions: Vec<Vec<u64>>,
}

impl<'p> Search<'p> {
    fn new(p: &'p Problem, k: usize, budget: u64, symmetry: bool, collect_all: bool) -> Self {
        Search {
            p,
            k,
            state: vec![UNKNOWN; p.edges * k],
            trail: Vec::new(),
            queue: Vec::new(),
            nodes: 0,
            budget,
            symmetry,
            collect_all,
            solutions: Vec::new(),
        }
    }

    fn run(&mut self) -> Flow {
        for e in 0..self.p.edges {
            if let Some(mask) = self.p.pins[e] {
                if !self.assign(e, mask) {
                    return Flow::Continue;
                }
            }
        }
        self.queue.extend(0..self.p.edges);
        if !self.propagate() {
            return Flow::Continue;
        }
        let used = if self.symmetry { self.p.pinned_classes } else { 0 };
        self.dfs(0, used)
    }

    fn all_classes(&self) -> u64 {
        if self.k == 64 {
            u64::MAX
        } else {
            (1 << self.k) - 1
        }
    }

    fn masks_of(&self, e: usize) -> (u64, u64) {
        let (mut must, mut may) = (0, 0);
        for c in 0..self.k {
            match self.state[e * self.k + c] {
                IN => {
                    must |= 1 << c;
                    may |= 1 << c;
                }
                UNKNOWN => may |= 1 << c,
                _ => {}
            }
        }
        (must, may)
    }

    /// Class sets `e` may take, ascending: supersets of `must` within
    /// `may`, one class in partition mode, and with symmetry breaking only
    /// opening the lowest classes not in `used`.
    fn choices(&self, must: u64, may: u64, used: u64) -> Vec<u64> {
        let free = may & !must;
        let mut out = Vec::new();
        match self.p.mode {
            Mode::Partition if must != 0 => out.push(must),
            Mode::Partition => out.extend((0..self.k).map(|c| 1u64 << c).filter(|&b| may & b != 0)),
            Mode::Cover if !self.symmetry => {
                let mut sub = 0u64;
                loop {
                    if must | sub != 0 {
                        out.push(must | sub);
                    }
                    if sub == free {
                        break;
                    }
                    sub = sub.wrapping_sub(free) & free;
                }
            }
            Mode::Cover => {
                // Opened classes are a prefix of the unused ones; reused
                // classes are any subset of the used ones.
                let mut available = self.all_classes() & !used;
                let reusable = free & used;
                let mut opened = 0u64;
                loop {
                    if must & !used & !opened == 0 {
                        let mut sub = 0u64;
                        loop {
                            let choice = must | opened | sub;
                            if choice != 0 {
                                out.push(choice);
                            }
                            if sub == reusable {
                                break;
                            }
                            sub = sub.wrapping_sub(reusable) & reusable;
                        }
                    }
                    let lowest = available & available.wrapping_neg();
                    if lowest == 0 || may & lowest == 0 {
                        break;
                    }
                    opened |= lowest;
                    available &= !lowest;
                }
            }
        }
        if self.symmetry && self.p.mode == Mode::Partition {
            let first_unused = self.all_classes() & !used;
            let first_unused = first_unused & first_unused.wrapping_neg();
            out.retain(|&c| c & used != 0 || c == first_unused);
        }
        out.sort_unstable();
        out
    }

    fn dfs(&mut self, pos: usize, used: u64) -> Flow {
        if pos == self.p.order.len() {
            let masks = (0..self.p.edges).map(|e| self.masks_of(e).0).collect();
            self.solutions.push(masks);
            return if self.collect_all { Flow::Continue } else { Flow::Stop };
        }
        let e = self.p.order[pos];
        let (must, may) = self.masks_of(e);
        for choice in self.choices(must, may, used) {
            if self.nodes >= self.budget {
                return Flow::OutOfBudget;
            }
            self.nodes += 1;
            let mark = self.trail.len();
            if self.assign(e, choice) && self.propagate() {
                let flow = self.dfs(pos + 1, used | choice);
                if flow != Flow::Continue {
                    self.undo(mark);
                    return flow;
                }
            }
            self.undo(mark);
        }
        Flow::Continue
    }

    /// Sets every class bit of `e` according to `mask`.
    fn assign(&mut self, e: usize, mask: u64) -> bool {
        (0..self.k).all(|c| self.set(e, c, if mask >> c & 1 == 1 { IN } else { OUT }))
    }

    fn set(&mut self, e: usize, c: usize, value: u8) -> bool {
        let idx = e * self.k + c;
        match self.state[idx] {
            UNKNOWN => {
                self.state[idx] = value;
                self.trail.push(idx);
                self.queue.push(e);
                true
            }
            current => current == value,
        }
    }

    fn undo(&mut self, mark: usize) {
        for idx in self.trail.drain(mark..) {
            self.state[idx] = UNKNOWN;
        }
        self.queue.clear();
    }

    fn propagate(&mut self) -> bool {
        while let Some(e) = self.queue.pop() {
            if !self.edge_rule(e) {
                self.queue.clear();
                return false;
            }
            for i in 0..self.p.touching[e].len() {
                let ci = self.p.touching[e][i];
                if !self.constraint_rule(ci) {
                    self.queue.clear();
                    return false;
                }
            }
        }
        true
    }

    fn edge_rule(&mut self, e: usize) -> bool {
        let k = self.k;
        let row = &self.state[e * k..(e + 1) * k];
        let inside = row.iter().filter(|&&s| s == IN).count();
        let open: Vec<usize> = (0..k).filter(|&c| row[c] == UNKNOWN).collect();
        match self.p.mode {
            Mode::Partition if inside > 1 => false,
            Mode::Partition if inside == 1 => open.into_iter().all(|c| self.set(e, c, OUT)),
            _ if inside >= 1 => true,
            _ => match open.as_slice() {
                [] => false,
                [c] => self.set(e, *c, IN),
                _ => true,
            },
        }
    }

    fn constraint_rule(&mut self, ci: usize) -> bool {
        let k = self.k;
        for c in 0..k {
            let constraint = &self.p.constraints[ci];
            let mut open = 0;
            let mut last = (0, UNKNOWN);
            let mut satisfied = false;
            for &pe in &constraint.path_edges {
                match self.state[pe * k + c] {
                    OUT => {
                        satisfied = true;
                        break;
                    }
                    UNKNOWN => {
                        open += 1;
                        last = (pe, OUT);
                    }
                    _ => {}
                }
            }
            if !satisfied {
                for &ch in &constraint.chord_edges {
                    match self.state[ch * k + c] {
                        IN => {
                            satisfied = true;
                            break;
                        }
                        UNKNOWN => {
                            open += 1;
                            last = (ch, IN);
                        }
                        _ => {}
                    }
                }
            }
            if satisfied {
                continue;
            }
            match open {
                0 => return false,
                1 if !self.set(last.0, c, last.1) => return false,
                _ => {}
            }
        }
        true
    }
}
