//! Counting homomorphisms from the fundamental GL-rack of a front code into a
//! finite GL-rack, i.e. colorings of the arcs satisfying every relation.
//!
//! Engines:
//! * [`count_bruteforce`]: scans all `|X|^n` assignments; the oracle
//! * [`count`]: depth-first search with forward and backward propagation
//! * [`count_by_blocks`]: sum over the groups of the `Δ`-decomposition
//! * [`count_via_lifts`]: colorings of the quotient GL-quandle, each lifted
//! * [`count_permutation`]: fixed points of `u^up d^down σ^w`

use std::fmt;

use thiserror::Error;

use crate::decomposition::{self, DecompositionError, GroupKind, QuotientQuandle};
use crate::diagram::{FrontCode, Sign};
use crate::glrack::GlRack;
use crate::permutation::Permutation;

/// Default cap on the number of assignments the brute-force oracle scans.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Environment variable overriding [`DEFAULT_BUDGET`].
pub const BUDGET_ENV: &str = "GLRACK_BUDGET";

pub fn budget_from_env() -> u64 {
    std::env::var(BUDGET_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("brute force needs {required} evaluations, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u64 },
    #[error("not a block GL-rack (Δ cycle type {0:?})")]
    NotBlock(Vec<usize>),
    #[error("not a permutation GL-rack: x ∗ y depends on y")]
    NotPermutationRack,
    #[error("quotient coloring has {got} arcs, code has {expected}")]
    ArcMismatch { got: usize, expected: usize },
    #[error("quotient coloring violates relation {relation}")]
    InvalidQuotientColoring { relation: usize },
    #[error("lift count {count} is neither 0 nor the block size {block_size}")]
    LiftDichotomy { count: u64, block_size: usize },
}

impl From<DecompositionError> for ColoringError {
    fn from(e: DecompositionError) -> Self {
        match e {
            DecompositionError::NotBlock(t) => ColoringError::NotBlock(t),
            other => panic!("decomposition of a valid GL-rack failed: {other}"),
        }
    }
}

/// An assignment of rack elements to arcs, `0`-based on both sides.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coloring(pub Vec<usize>);

impl Coloring {
    pub fn get(&self, arc: usize) -> usize {
        self.0[arc]
    }
}

impl fmt::Display for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| (x + 1).to_string()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Auto,
    Brute,
    Backtrack,
    Blocks,
    Lifts,
    Perm,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Auto => "auto",
            Method::Brute => "brute",
            Method::Backtrack => "backtrack",
            Method::Blocks => "blocks",
            Method::Lifts => "lifts",
            Method::Perm => "perm",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "auto" => Method::Auto,
            "brute" => Method::Brute,
            "backtrack" => Method::Backtrack,
            "blocks" => Method::Blocks,
            "lifts" => Method::Lifts,
            "perm" => Method::Perm,
            other => return Err(format!("unknown method '{other}'")),
        })
    }
}

/// Per-quotient-coloring lift counts of a block GL-rack.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftTable {
    pub block_size: usize,
    /// supports `A_i` in the labels of the rack that was lifted into
    pub supports: Vec<Vec<usize>>,
    pub lifts: Vec<(Coloring, u64)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockCount {
    /// elements of `B_j` in the labels of the input rack
    pub elements: Vec<usize>,
    pub cycle_length: usize,
    pub kind: GroupKind,
    pub count: u64,
    pub method: Method,
    pub lifts: Option<LiftTable>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoringReport {
    pub total: u64,
    pub method: Method,
    pub per_block: Option<Vec<BlockCount>>,
    pub lifts: Option<LiftTable>,
}

impl ColoringReport {
    fn plain(total: u64, method: Method) -> Self {
        Self {
            total,
            method,
            per_block: None,
            lifts: None,
        }
    }

    /// Checks the internal sums: blocks add up to the total and every lift
    /// count is `0` or `c`, summing to the total.
    pub fn is_consistent(&self) -> bool {
        let lift_ok = |t: &LiftTable, total: u64| {
            t.lifts
                .iter()
                .all(|&(_, k)| k == 0 || k == t.block_size as u64)
                && t.lifts.iter().map(|&(_, k)| k).sum::<u64>() == total
        };
        let blocks_ok = self.per_block.as_ref().is_none_or(|b| {
            b.iter().map(|b| b.count).sum::<u64>() == self.total
                && b.iter()
                    .all(|b| b.lifts.as_ref().is_none_or(|t| lift_ok(t, b.count)))
        });
        blocks_ok && self.lifts.as_ref().is_none_or(|t| lift_ok(t, self.total))
    }
}

/// A front code specialised to one rack: each relation's cusp map
/// `u^p d^q` is precomputed.
struct Compiled<'a> {
    rack: &'a GlRack,
    cusp: Vec<Permutation>,
    cusp_inv: Vec<Permutation>,
    crossing: Vec<Option<(Sign, usize)>>,
}

impl<'a> Compiled<'a> {
    fn new(code: &FrontCode, rack: &'a GlRack) -> Self {
        let mut cusp = Vec::with_capacity(code.arcs());
        let mut crossing = Vec::with_capacity(code.arcs());
        for r in code.relations() {
            let m = rack
                .u()
                .pow(i64::from(r.up))
                .compose_unchecked(&rack.d().pow(i64::from(r.down)));
            cusp.push(m);
            crossing.push(r.crossing.map(|c| (c.sign, c.over)));
        }
        let cusp_inv = cusp.iter().map(Permutation::inverse).collect();
        Self {
            rack,
            cusp,
            cusp_inv,
            crossing,
        }
    }

    fn arcs(&self) -> usize {
        self.cusp.len()
    }

    /// The value relation `i` forces on arc `i+1`.
    #[inline]
    fn forward(&self, i: usize, xi: usize, over: usize) -> usize {
        let v = self.cusp[i].apply(xi);
        match self.crossing[i] {
            Some((Sign::Positive, _)) => self.rack.op(v, over),
            Some((Sign::Negative, _)) => self.rack.star_inverse(v, over),
            None => v,
        }
    }

    /// The value relation `i` forces on arc `i` given arc `i+1`.
    #[inline]
    fn backward(&self, i: usize, next: usize, over: usize) -> usize {
        let v = match self.crossing[i] {
            Some((Sign::Positive, _)) => self.rack.star_inverse(next, over),
            Some((Sign::Negative, _)) => self.rack.op(next, over),
            None => next,
        };
        self.cusp_inv[i].apply(v)
    }

    fn over_arc(&self, i: usize) -> Option<usize> {
        self.crossing[i].map(|(_, k)| k)
    }

    fn satisfied(&self, a: &[usize]) -> Option<usize> {
        let n = self.arcs();
        (0..n).find(|&i| {
            let over = self.over_arc(i).map_or(0, |k| a[k]);
            self.forward(i, a[i], over) != a[(i + 1) % n]
        })
    }
}

fn required_evaluations(order: usize, arcs: usize) -> u128 {
    (order as u128).saturating_pow(arcs.min(u32::MAX as usize) as u32)
}

/// Scans every assignment in `X^n`. Refuses when `|X|^n` exceeds `budget`.
pub fn count_bruteforce(code: &FrontCode, rack: &GlRack, budget: u64) -> Result<u64, ColoringError> {
    let mut count = 0;
    bruteforce(code, rack, budget, |_| count += 1)?;
    Ok(count)
}

fn bruteforce(
    code: &FrontCode,
    rack: &GlRack,
    budget: u64,
    mut visit: impl FnMut(&[usize]),
) -> Result<(), ColoringError> {
    let required = required_evaluations(rack.order(), code.arcs());
    if required > u128::from(budget) {
        return Err(ColoringError::BudgetExceeded { required, budget });
    }
    let compiled = Compiled::new(code, rack);
    let n = code.arcs();
    let m = rack.order();
    let mut a = vec![0; n];
    loop {
        if compiled.satisfied(&a).is_none() {
            visit(&a);
        }
        // odometer, last arc fastest
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(());
            }
            i -= 1;
            a[i] += 1;
            if a[i] < m {
                break;
            }
            a[i] = 0;
        }
    }
}

/// Depth-first search over arc values. Assigning an arc and its over-arc
/// forces the next arc; contradictions prune.
struct Search<'c, 'r> {
    compiled: &'c Compiled<'r>,
    /// allowed values per arc; `None` means all
    domains: Option<Vec<Vec<bool>>>,
    order: Vec<usize>,
    assign: Vec<Option<usize>>,
    trail: Vec<usize>,
}

impl<'c, 'r> Search<'c, 'r> {
    fn new(compiled: &'c Compiled<'r>, domains: Option<Vec<Vec<bool>>>) -> Self {
        let n = compiled.arcs();
        // arcs used early as over-arcs first: they unlock forced values
        let mut first_use = vec![usize::MAX; n];
        for i in 0..n {
            if let Some(k) = compiled.over_arc(i) {
                first_use[k] = first_use[k].min(i);
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&x| (first_use[x], x));
        Self {
            compiled,
            domains,
            order,
            assign: vec![None; n],
            trail: Vec::new(),
        }
    }

    fn allowed(&self, arc: usize, v: usize) -> bool {
        self.domains.as_ref().is_none_or(|d| d[arc][v])
    }

    fn set(&mut self, arc: usize, v: usize) -> bool {
        match self.assign[arc] {
            Some(w) => w == v,
            None => {
                if !self.allowed(arc, v) {
                    return false;
                }
                self.assign[arc] = Some(v);
                self.trail.push(arc);
                true
            }
        }
    }

    /// Propagates forced values to a fixpoint. Returns false on contradiction.
    fn propagate(&mut self) -> bool {
        let n = self.compiled.arcs();
        loop {
            let mut changed = false;
            for i in 0..n {
                let j = (i + 1) % n;
                let over = match self.compiled.over_arc(i) {
                    Some(k) => match self.assign[k] {
                        Some(v) => v,
                        None => continue,
                    },
                    None => 0,
                };
                match (self.assign[i], self.assign[j]) {
                    (Some(a), b) => {
                        let f = self.compiled.forward(i, a, over);
                        if b.is_none() {
                            changed = true;
                        }
                        if !self.set(j, f) {
                            return false;
                        }
                    }
                    (None, Some(b)) => {
                        let back = self.compiled.backward(i, b, over);
                        changed = true;
                        if !self.set(i, back) {
                            return false;
                        }
                    }
                    (None, None) => {}
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let arc = self.trail.pop().unwrap();
            self.assign[arc] = None;
        }
    }

    fn run(&mut self, visit: &mut impl FnMut(&[Option<usize>])) {
        if !self.propagate() {
            return;
        }
        let Some(&arc) = self.order.iter().find(|&&x| self.assign[x].is_none()) else {
            debug_assert!({
                let a: Vec<usize> = self.assign.iter().map(|v| v.unwrap()).collect();
                self.compiled.satisfied(&a).is_none()
            });
            visit(&self.assign);
            return;
        };
        let m = self.compiled.rack.order();
        for v in 0..m {
            if !self.allowed(arc, v) {
                continue;
            }
            let mark = self.trail.len();
            self.set(arc, v);
            self.run(visit);
            self.undo_to(mark);
        }
    }
}

fn search_count(code: &FrontCode, rack: &GlRack, domains: Option<Vec<Vec<bool>>>) -> u64 {
    let compiled = Compiled::new(code, rack);
    let mut search = Search::new(&compiled, domains);
    let mut count = 0;
    search.run(&mut |_| count += 1);
    count
}

/// Counts colorings by propagation-driven backtracking.
pub fn count(code: &FrontCode, rack: &GlRack) -> u64 {
    search_count(code, rack, None)
}

/// All colorings in lexicographic order. Refuses when more than `budget`
/// colorings exist.
pub fn enumerate(code: &FrontCode, rack: &GlRack, budget: u64) -> Result<Vec<Coloring>, ColoringError> {
    let compiled = Compiled::new(code, rack);
    let mut search = Search::new(&compiled, None);
    let mut out = Vec::new();
    let mut overflow = false;
    search.run(&mut |a| {
        if out.len() as u64 >= budget {
            overflow = true;
            return;
        }
        out.push(Coloring(a.iter().map(|v| v.unwrap()).collect()));
    });
    if overflow {
        return Err(ColoringError::BudgetExceeded {
            required: u128::from(budget) + 1,
            budget,
        });
    }
    out.sort();
    Ok(out)
}

/// Is `coloring` a homomorphism, i.e. does it satisfy every relation?
pub fn is_coloring(code: &FrontCode, rack: &GlRack, coloring: &Coloring) -> bool {
    coloring.0.len() == code.arcs()
        && coloring.0.iter().all(|&x| x < rack.order())
        && Compiled::new(code, rack).satisfied(&coloring.0).is_none()
}

/// Sums the counts over the groups `B_j` of the decomposition. Every
/// coloring of a knot lands in a single group.
pub fn count_by_blocks(code: &FrontCode, rack: &GlRack) -> ColoringReport {
    block_report(code, rack, Method::Blocks, |_, sub| {
        (count(code, sub), Method::Backtrack, None)
    })
}

fn block_report(
    code: &FrontCode,
    rack: &GlRack,
    method: Method,
    mut per_block: impl FnMut(GroupKind, &GlRack) -> (u64, Method, Option<LiftTable>),
) -> ColoringReport {
    let dec = decomposition::decompose(rack);
    let mut blocks = Vec::with_capacity(dec.groups.len());
    for g in &dec.groups {
        let sub = decomposition::restrict(rack, g.elements.clone())
            .expect("groups of the decomposition are closed");
        let (count, m, lifts) = per_block(g.kind, &sub.rack);
        let lifts = lifts.map(|mut t| {
            for s in &mut t.supports {
                for x in s.iter_mut() {
                    *x = sub.labels[*x];
                }
            }
            t
        });
        blocks.push(BlockCount {
            elements: g.elements.clone(),
            cycle_length: g.cycle_length,
            kind: g.kind,
            count,
            method: m,
            lifts,
        });
    }
    let _ = code;
    ColoringReport {
        total: blocks.iter().map(|b| b.count).sum(),
        method,
        per_block: Some(blocks),
        lifts: None,
    }
}

fn check_quotient_coloring(
    code: &FrontCode,
    q: &QuotientQuandle,
    psi: &Coloring,
) -> Result<(), ColoringError> {
    if psi.0.len() != code.arcs() {
        return Err(ColoringError::ArcMismatch {
            got: psi.0.len(),
            expected: code.arcs(),
        });
    }
    if let Some(&x) = psi.0.iter().find(|&&x| x >= q.base.order()) {
        return Err(ColoringError::InvalidQuotientColoring { relation: x });
    }
    if let Some(i) = Compiled::new(code, &q.base).satisfied(&psi.0) {
        return Err(ColoringError::InvalidQuotientColoring { relation: i });
    }
    Ok(())
}

fn lifts_of(code: &FrontCode, rack: &GlRack, q: &QuotientQuandle, psi: &Coloring) -> u64 {
    let domains = psi
        .0
        .iter()
        .map(|&a| (0..rack.order()).map(|x| q.project(x) == a).collect())
        .collect();
    search_count(code, rack, Some(domains))
}

/// Number of colorings `φ` into the block GL-rack with `π∘φ = ψ`. Always `0`
/// or the block size `c`.
pub fn count_lifts(code: &FrontCode, rack: &GlRack, psi: &Coloring) -> Result<u64, ColoringError> {
    let q = decomposition::quotient(rack)?;
    count_lifts_with(code, rack, &q, psi)
}

pub fn count_lifts_with(
    code: &FrontCode,
    rack: &GlRack,
    q: &QuotientQuandle,
    psi: &Coloring,
) -> Result<u64, ColoringError> {
    check_quotient_coloring(code, q, psi)?;
    let count = lifts_of(code, rack, q, psi);
    if count != 0 && count != q.block_size() as u64 {
        return Err(ColoringError::LiftDichotomy {
            count,
            block_size: q.block_size(),
        });
    }
    Ok(count)
}

/// Per-`ψ` lift counts over all colorings `ψ` of the quotient GL-quandle.
pub fn lift_table(code: &FrontCode, rack: &GlRack) -> Result<LiftTable, ColoringError> {
    let q = decomposition::quotient(rack)?;
    let psis = enumerate(code, &q.base, u64::MAX)?;
    let lifts = psis
        .into_iter()
        .map(|psi| {
            let k = count_lifts_with(code, rack, &q, &psi)?;
            Ok((psi, k))
        })
        .collect::<Result<Vec<_>, ColoringError>>()?;
    Ok(LiftTable {
        block_size: q.block_size(),
        supports: q.supports.clone(),
        lifts,
    })
}

/// Counts colorings of a block GL-rack as `Σ_ψ |Lift(ψ)|`.
pub fn count_via_lifts(code: &FrontCode, rack: &GlRack) -> Result<ColoringReport, ColoringError> {
    let table = lift_table(code, rack)?;
    Ok(ColoringReport {
        total: table.lifts.iter().map(|&(_, k)| k).sum(),
        method: Method::Lifts,
        per_block: None,
        lifts: Some(table),
    })
}

/// Closed form for permutation GL-racks: a coloring is determined by the
/// value on one arc, which must be fixed by `u^up d^down σ^w`.
pub fn count_permutation(code: &FrontCode, rack: &GlRack) -> Result<u64, ColoringError> {
    if !rack.is_permutation_rack() {
        return Err(ColoringError::NotPermutationRack);
    }
    Ok(permutation_chain(code, rack).fixed_points().len() as u64)
}

/// `u^up d^down σ^w` with `σ = Δ`, all mutually commuting.
pub fn permutation_chain(code: &FrontCode, rack: &GlRack) -> Permutation {
    let inv = code.invariants();
    rack.u()
        .pow(inv.up as i64)
        .compose_unchecked(&rack.d().pow(inv.down as i64))
        .compose_unchecked(&rack.delta().pow(inv.writhe))
}

/// Runs the requested engine and wraps its result in a report.
///
/// `Auto` uses the closed form for permutation GL-racks and otherwise sums
/// over blocks, counting each block by the closed form, by lifts (when the
/// quotient is smaller than the block) or by search.
pub fn color(
    code: &FrontCode,
    rack: &GlRack,
    method: Method,
    budget: u64,
) -> Result<ColoringReport, ColoringError> {
    Ok(match method {
        Method::Brute => ColoringReport::plain(count_bruteforce(code, rack, budget)?, Method::Brute),
        Method::Backtrack => ColoringReport::plain(count(code, rack), Method::Backtrack),
        Method::Perm => ColoringReport::plain(count_permutation(code, rack)?, Method::Perm),
        Method::Blocks => count_by_blocks(code, rack),
        Method::Lifts => count_via_lifts(code, rack)?,
        Method::Auto => {
            if rack.is_permutation_rack() {
                ColoringReport::plain(count_permutation(code, rack)?, Method::Perm)
            } else {
                let mut err = None;
                let report = block_report(code, rack, Method::Auto, |kind, sub| {
                    if sub.is_permutation_rack() {
                        let c = count_permutation(code, sub).expect("checked permutation rack");
                        (c, Method::Perm, None)
                    } else if kind == GroupKind::Block && !sub.is_quandle() {
                        match lift_table(code, sub) {
                            Ok(t) => (t.lifts.iter().map(|&(_, k)| k).sum(), Method::Lifts, Some(t)),
                            Err(e) => {
                                err.get_or_insert(e);
                                (0, Method::Lifts, None)
                            }
                        }
                    } else {
                        (count(code, sub), Method::Backtrack, None)
                    }
                });
                if let Some(e) = err {
                    return Err(e);
                }
                report
            }
        }
    })
}
