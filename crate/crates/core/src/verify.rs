//! Executable checks of the coloring theorems over a grid of racks and knot
//! presentations.
//!
//! Every suite is deterministic. Cases are evaluated in parallel and gathered
//! back in input order, and each failure carries the rack and the code it was
//! computed from so it can be replayed through the CLI.
//!
//! Legendrian isotopy is not decided anywhere in this crate. The isotopy
//! suites therefore only compare presentations that are isotopic by
//! construction: the same stabilizations applied at different arcs or in a
//! different order.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::census::{self, CensusError};
use crate::coloring;
use crate::decomposition;
use crate::diagram::{FrontCode, Relation, Sign, StabilizationKind};
use crate::examples;
use crate::glrack::{self, derive_d, GlRack};
use crate::permutation::Permutation;

/// Codes with more brute-force evaluations than this are skipped by the
/// oracle comparison.
pub const ORACLE_LIMIT: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("{name} is not a GL-quandle")]
    NotGlQuandle { name: String },
    #[error("{name} is not a block GL-rack")]
    NotBlock { name: String },
    #[error("{name} is not a permutation GL-rack")]
    NotPermutation { name: String },
    #[error(transparent)]
    Census(#[from] CensusError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedRack {
    pub name: String,
    pub rack: GlRack,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedCode {
    pub name: String,
    pub code: FrontCode,
}

fn named_rack(name: impl Into<String>, rack: GlRack) -> NamedRack {
    NamedRack {
        name: name.into(),
        rack,
    }
}

fn named_code(name: impl Into<String>, code: FrontCode) -> NamedCode {
    NamedCode {
        name: name.into(),
        code,
    }
}

/// One failing case, with everything needed to recompute it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub case: String,
    pub detail: String,
    pub rack: Option<GlRack>,
    pub code: Option<FrontCode>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteResult {
    pub id: &'static str,
    pub cases: usize,
    pub failures: Vec<Failure>,
    /// named counters describing what the cases exercised
    pub coverage: BTreeMap<String, usize>,
}

impl SuiteResult {
    fn new(id: &'static str) -> Self {
        Self {
            id,
            cases: 0,
            failures: Vec::new(),
            coverage: BTreeMap::new(),
        }
    }

    pub fn status(&self) -> Status {
        if self.failures.is_empty() {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn passed(&self) -> bool {
        self.status() == Status::Pass
    }

    fn absorb(&mut self, part: Partial) {
        self.cases += part.cases;
        self.failures.extend(part.failures);
        for (k, v) in part.coverage {
            *self.coverage.entry(k).or_default() += v;
        }
    }

    fn collect(id: &'static str, parts: Vec<Partial>) -> Self {
        let mut out = Self::new(id);
        for p in parts {
            out.absorb(p);
        }
        out
    }

    pub fn summary(&self) -> String {
        format!(
            "{}: {} ({} cases, {} failures)",
            self.id,
            self.status(),
            self.cases,
            self.failures.len()
        )
    }
}

/// Results of one unit of parallel work.
#[derive(Default)]
struct Partial {
    cases: usize,
    failures: Vec<Failure>,
    coverage: BTreeMap<String, usize>,
}

impl Partial {
    fn check(&mut self, ok: bool, f: impl FnOnce() -> Failure) {
        self.cases += 1;
        if !ok {
            self.failures.push(f());
        }
    }

    fn cover(&mut self, key: impl Into<String>) {
        *self.coverage.entry(key.into()).or_default() += 1;
    }
}

fn failure(case: String, detail: String, rack: &GlRack, code: Option<&FrontCode>) -> Failure {
    Failure {
        case,
        detail,
        rack: Some(rack.clone()),
        code: code.cloned(),
    }
}

fn per_rack(racks: &[NamedRack], f: impl Fn(&NamedRack) -> Partial + Sync + Send) -> Vec<Partial> {
    racks.par_iter().map(f).collect()
}

/// The knot corpus: unknot, trefoil, `S_+^N`, `S_-^N` and `S_+^N S_-^N` at
/// each arc for `N ≤ 3`, and the smoothed variants.
pub fn corpus() -> Vec<NamedCode> {
    let mut out = Vec::new();
    let mut smoothed = Vec::new();
    for (base_name, base) in [("unknot", examples::unknot()), ("trefoil", examples::trefoil())] {
        out.push(named_code(base_name, base.clone()));
        for at in 0..base.arcs() {
            for n in 1..=3 {
                let plus = base.stabilize(StabilizationKind::Plus, at, n).unwrap();
                let minus = base.stabilize(StabilizationKind::Minus, at, n).unwrap();
                let both = plus.stabilize(StabilizationKind::Minus, at, n).unwrap();
                let arc = at + 1;
                out.push(named_code(format!("{base_name} S+^{n}@{arc}"), plus));
                out.push(named_code(format!("{base_name} S-^{n}@{arc}"), minus));
                out.push(named_code(format!("{base_name} S+^{n}S-^{n}@{arc}"), both));
            }
        }
        smoothed.push(named_code(format!("{base_name} smoothed"), base.smooth().code));
    }
    out.extend(smoothed);
    out
}

/// The five base codes used where the full corpus would be redundant.
pub fn small_corpus() -> Vec<NamedCode> {
    let u = examples::unknot();
    let t = examples::trefoil();
    vec![
        named_code("unknot", u.clone()),
        named_code("trefoil", t.clone()),
        named_code("trefoil S+^1@1", t.stabilize(StabilizationKind::Plus, 0, 1).unwrap()),
        named_code("trefoil S-^1@2", t.stabilize(StabilizationKind::Minus, 1, 1).unwrap()),
        named_code("trefoil smoothed", t.smooth().code),
    ]
}

/// The worked GL-racks.
pub fn example_racks() -> Vec<NamedRack> {
    vec![
        named_rack("permutation rack on 3 points", examples::permutation3()),
        named_rack("6-element block rack", examples::block6()),
        named_rack("6-element rack with two groups", examples::mixed6()),
        named_rack("3-element quotient quandle", examples::block6_quotient()),
    ]
}

/// Every census GL-rack of order `1..=max_order`, named by order and index.
pub fn census_racks(max_order: usize) -> Result<Vec<NamedRack>, CensusError> {
    let mut out = Vec::new();
    for n in 1..=max_order {
        for (i, e) in census::enumerate_glracks(n)?.into_iter().enumerate() {
            out.push(named_rack(format!("census n={n} #{}", i + 1), e.rack));
        }
    }
    Ok(out)
}

/// Census racks of order at most 4 followed by the worked examples.
pub fn default_racks() -> Vec<NamedRack> {
    let mut racks = census_racks(4).expect("order 4 is within the census cap");
    racks.extend(example_racks());
    racks
}

fn case(r: &NamedRack, c: &NamedCode) -> String {
    format!("{} / {}", r.name, c.name)
}

/// Propagation search against the brute-force oracle, and the automatic
/// method against both, wherever `|X|^n ≤ ORACLE_LIMIT`.
pub fn suite_oracle(racks: &[NamedRack], codes: &[NamedCode]) -> SuiteResult {
    let parts = per_rack(racks, |r| {
        let mut p = Partial::default();
        for c in codes {
            let Ok(oracle) = coloring::count_bruteforce(&c.code, &r.rack, ORACLE_LIMIT) else {
                p.cover("skipped over limit");
                continue;
            };
            let fast = coloring::count(&c.code, &r.rack);
            let auto = coloring::color(&c.code, &r.rack, coloring::Method::Auto, ORACLE_LIMIT)
                .map(|rep| rep.total);
            p.check(fast == oracle && auto == Ok(oracle), || {
                failure(
                    case(r, c),
                    format!("oracle {oracle}, search {fast}, auto {auto:?}"),
                    &r.rack,
                    Some(&c.code),
                )
            });
        }
        p
    });
    SuiteResult::collect("oracle", parts)
}

/// The count equals the sum of the counts over the groups `B_j`.
pub fn suite_block_sum(racks: &[NamedRack], codes: &[NamedCode]) -> SuiteResult {
    let parts = per_rack(racks, |r| {
        let mut p = Partial::default();
        for c in codes {
            let total = coloring::count(&c.code, &r.rack);
            let blocks = coloring::count_by_blocks(&c.code, &r.rack);
            p.check(total == blocks.total && blocks.is_consistent(), || {
                let split: Vec<u64> = blocks
                    .per_block
                    .iter()
                    .flatten()
                    .map(|b| b.count)
                    .collect();
                failure(
                    case(r, c),
                    format!("count {total}, block split {split:?}"),
                    &r.rack,
                    Some(&c.code),
                )
            });
        }
        p
    });
    SuiteResult::collect("block-sum", parts)
}

/// For every group `B_j` of every rack: lift counts are `0` or `c`, sum to
/// the count of `B_j`, and `c` divides that count.
pub fn suite_lift_dichotomy(racks: &[NamedRack], codes: &[NamedCode]) -> SuiteResult {
    let parts = per_rack(racks, |r| {
        let mut p = Partial::default();
        let dec = decomposition::decompose(&r.rack);
        for g in &dec.groups {
            let sub = decomposition::subrack(&r.rack, &g.elements).expect("groups are closed");
            let c = g.cycle_length as u64;
            for code in codes {
                let label = format!("{} / B(c={}) / {}", r.name, c, code.name);
                let expected = coloring::count(&code.code, &sub.rack);
                match coloring::lift_table(&code.code, &sub.rack) {
                    Ok(t) => {
                        let sum: u64 = t.lifts.iter().map(|&(_, k)| k).sum();
                        let ok = t.lifts.iter().all(|&(_, k)| k == 0 || k == c)
                            && sum == expected
                            && expected.is_multiple_of(c);
                        if ok && t.lifts.iter().any(|&(_, k)| k > 0) {
                            p.cover(format!("nonzero lifts c={c}"));
                        }
                        p.check(ok, || {
                            let ks: Vec<u64> = t.lifts.iter().map(|l| l.1).collect();
                            failure(
                                label,
                                format!("lifts {ks:?}, count {expected}"),
                                &sub.rack,
                                Some(&code.code),
                            )
                        });
                    }
                    Err(e) => p.check(false, || {
                        failure(label, e.to_string(), &sub.rack, Some(&code.code))
                    }),
                }
            }
        }
        p
    });
    SuiteResult::collect("lift-dichotomy", parts)
}

/// The closed form `|Fix(u^up d^down σ^w)|` against the brute-force oracle
/// on every permutation GL-rack of the grid.
pub fn suite_permutation_closed_form(racks: &[NamedRack], codes: &[NamedCode]) -> SuiteResult {
    let parts = per_rack(racks, |r| {
        let mut p = Partial::default();
        if !r.rack.is_permutation_rack() {
            return p;
        }
        p.cover("permutation racks");
        for c in codes {
            let Ok(oracle) = coloring::count_bruteforce(&c.code, &r.rack, ORACLE_LIMIT) else {
                continue;
            };
            let closed = coloring::count_permutation(&c.code, &r.rack);
            p.check(closed == Ok(oracle), || {
                failure(
                    case(r, c),
                    format!("closed form {closed:?}, oracle {oracle}"),
                    &r.rack,
                    Some(&c.code),
                )
            });
        }
        p
    });
    SuiteResult::collect("permutation-closed-form", parts)
}

/// `tb` drops by `N` and `rot` moves by `±N` under `S_±^N`, at every arc.
pub fn suite_stabilization_metadata(codes: &[NamedCode], max_n: u32) -> SuiteResult {
    let mut p = Partial::default();
    for c in codes {
        let before = c.code.invariants();
        for at in 0..c.code.arcs() {
            for n in 1..=max_n {
                for (kind, sign) in [(StabilizationKind::Plus, 1), (StabilizationKind::Minus, -1)] {
                    let after = c.code.stabilize(kind, at, n).unwrap().invariants();
                    let n = i64::from(n);
                    p.check(
                        after.tb == before.tb - n && after.rot == before.rot + sign * n,
                        || Failure {
                            case: format!("{} {:?}^{n}@{}", c.name, kind, at + 1),
                            detail: format!("before {before:?}, after {after:?}"),
                            rack: None,
                            code: Some(c.code.clone()),
                        },
                    );
                }
            }
        }
    }
    SuiteResult::collect("stabilization-metadata", vec![p])
}

/// Stabilization patterns `(plus count, minus count)` whose placements form
/// the isotopy families.
const FAMILY_PATTERNS: [(u32, u32); 7] = [(1, 0), (0, 1), (1, 1), (2, 1), (1, 2), (2, 2), (3, 3)];

/// All placements of `plus` positive and `minus` negative stabilizations,
/// applied in both orders. Every member is Legendrian isotopic to every
/// other by construction.
pub fn isotopy_family(code: &FrontCode, plus: u32, minus: u32) -> Vec<(String, FrontCode)> {
    let mut out = Vec::new();
    let n = code.arcs();
    for a in 0..n {
        for b in 0..n {
            let plus_first = code
                .stabilize(StabilizationKind::Plus, a, plus)
                .and_then(|k| k.stabilize(StabilizationKind::Minus, b, minus))
                .unwrap();
            let minus_first = code
                .stabilize(StabilizationKind::Minus, b, minus)
                .and_then(|k| k.stabilize(StabilizationKind::Plus, a, plus))
                .unwrap();
            out.push((format!("S+^{plus}@{} S-^{minus}@{}", a + 1, b + 1), plus_first));
            out.push((format!("S-^{minus}@{} S+^{plus}@{}", b + 1, a + 1), minus_first));
        }
    }
    out
}

/// Equal coloring counts across every isotopy family of every code.
pub fn suite_isotopy_family(racks: &[NamedRack], codes: &[NamedCode]) -> SuiteResult {
    let parts = per_rack(racks, |r| {
        let mut p = Partial::default();
        // both application orders give the same code, so counts repeat
        let mut memo: HashMap<FrontCode, u64> = HashMap::new();
        for c in codes {
            for (plus, minus) in FAMILY_PATTERNS {
                let family = isotopy_family(&c.code, plus, minus);
                let counts: Vec<u64> = family
                    .iter()
                    .map(|(_, k)| {
                        *memo
                            .entry(k.clone())
                            .or_insert_with(|| coloring::count(k, &r.rack))
                    })
                    .collect();
                if c.code.arcs() > 1 {
                    p.cover("location families");
                }
                for ((label, k), &count) in family.iter().zip(&counts).skip(1) {
                    p.check(count == counts[0], || {
                        failure(
                            format!("{} / {} vs {}", case(r, c), family[0].0, label),
                            format!("{} vs {count}", counts[0]),
                            &r.rack,
                            Some(k),
                        )
                    });
                }
            }
        }
        p
    });
    SuiteResult::collect("isotopy-family", parts)
}

fn require_glquandles(racks: &[NamedRack]) -> Result<(), VerifyError> {
    match racks.iter().find(|r| !r.rack.is_gl_quandle()) {
        Some(r) => Err(VerifyError::NotGlQuandle { name: r.name.clone() }),
        None => Ok(()),
    }
}

/// Under a GL-quandle, `S_+^N S_-^N` does not change the count, `N ≤ max_n`.
pub fn suite_glquandle_stabilization(
    quandles: &[NamedRack],
    codes: &[NamedCode],
    max_n: u32,
) -> Result<SuiteResult, VerifyError> {
    require_glquandles(quandles)?;
    let parts = per_rack(quandles, |r| {
        let mut p = Partial::default();
        for c in codes {
            let base = coloring::count(&c.code, &r.rack);
            for n in 1..=max_n {
                let k = c
                    .code
                    .stabilize(StabilizationKind::Plus, 0, n)
                    .and_then(|k| k.stabilize(StabilizationKind::Minus, 0, n))
                    .unwrap();
                let count = coloring::count(&k, &r.rack);
                p.check(count == base, || {
                    failure(
                        format!("{} / S+^{n}S-^{n}", case(r, c)),
                        format!("{base} before, {count} after"),
                        &r.rack,
                        Some(&k),
                    )
                });
            }
        }
        p
    });
    Ok(SuiteResult::collect("glquandle-stabilization", parts))
}

/// A presentation with `tb = t` and `rot = r`: `w = max(0, t + |r|)` positive
/// self-crossings, with all cusps on the first relation.
pub fn realized_code(t: i64, r: i64) -> FrontCode {
    let w = (t + r.abs()).max(0);
    let up = u32::try_from(w - t - r).expect("nonnegative by choice of w");
    let down = u32::try_from(w - t + r).expect("nonnegative by choice of w");
    let relations = if w == 0 {
        vec![Relation::cusps(up, down)]
    } else {
        (0..w as usize)
            .map(|i| {
                let (p, q) = if i == 0 { (up, down) } else { (0, 0) };
                Relation::crossing(p, q, Sign::Positive, i)
            })
            .collect()
    };
    let code = FrontCode::new(relations).expect("cusp total is even");
    debug_assert_eq!((code.invariants().tb, code.invariants().rot), (t, r));
    code
}

/// Range of `t` and `r` in the opposite-invariants grid.
pub const INVARIANT_GRID: std::ops::RangeInclusive<i64> = -3..=3;

/// For permutation GL-racks, the fixed-point counts of
/// `u^{-r-t} d^{r-t}` and `u^{r+t} d^{t-r}` agree, and so do the counts of
/// presentations realizing `(t, r)` and `(-t, -r)`.
pub fn suite_opposite_invariants(racks: &[NamedRack]) -> Result<SuiteResult, VerifyError> {
    if let Some(r) = racks.iter().find(|r| !r.rack.is_permutation_rack()) {
        return Err(VerifyError::NotPermutation { name: r.name.clone() });
    }
    let parts = per_rack(racks, |r| {
        let mut p = Partial::default();
        for t in INVARIANT_GRID {
            for rot in INVARIANT_GRID {
                let (left, right) = opposite_chain_fixed_points(r.rack.u(), r.rack.d(), t, rot);
                p.check(left == right, || {
                    failure(
                        format!("{} / (t, r) = ({t}, {rot})", r.name),
                        format!("fixed points {left} vs {right}"),
                        &r.rack,
                        None,
                    )
                });
                let k = realized_code(t, rot);
                let mirror = realized_code(-t, -rot);
                let a = coloring::count_permutation(&k, &r.rack);
                let b = coloring::count_permutation(&mirror, &r.rack);
                let searched = coloring::count(&k, &r.rack);
                p.check(a == b && a == Ok(searched), || {
                    failure(
                        format!("{} / realized ({t}, {rot}) vs ({}, {})", r.name, -t, -rot),
                        format!("{a:?} vs {b:?}, search {searched}"),
                        &r.rack,
                        Some(&k),
                    )
                });
            }
        }
        p
    });
    Ok(SuiteResult::collect("opposite-invariants", parts))
}

/// Applies `|rot|` stabilizations of the kind that brings `rot` to zero.
pub fn cancel_rotation(code: &FrontCode) -> FrontCode {
    let rot = code.invariants().rot;
    let times = u32::try_from(rot.unsigned_abs()).expect("rotation fits in u32");
    match rot.signum() {
        1 => code.stabilize(StabilizationKind::Minus, 0, times).unwrap(),
        -1 => code.stabilize(StabilizationKind::Plus, 0, times).unwrap(),
        _ => code.clone(),
    }
}

/// Under a GL-quandle the count of a code with its rotation cancelled by
/// stabilizations equals the quandle count of its smoothing. Codes with
/// `|rot| > max_rot` are skipped.
pub fn suite_rotation_smoothing(
    quandles: &[NamedRack],
    codes: &[NamedCode],
    max_rot: i64,
) -> Result<SuiteResult, VerifyError> {
    require_glquandles(quandles)?;
    let parts = per_rack(quandles, |r| {
        let mut p = Partial::default();
        for c in codes {
            let rot = c.code.invariants().rot;
            if rot.abs() > max_rot {
                continue;
            }
            p.cover(format!("rot={rot}"));
            let stabilized = cancel_rotation(&c.code);
            let smoothed = c.code.smooth().code;
            let left = coloring::count(&stabilized, &r.rack);
            let right = coloring::count(&smoothed, &r.rack);
            p.check(left == right, || {
                failure(
                    case(r, c),
                    format!("stabilized {left}, smoothed {right}"),
                    &r.rack,
                    Some(&stabilized),
                )
            });
        }
        p
    });
    Ok(SuiteResult::collect("rotation-smoothing", parts))
}

/// For each quotient coloring `ψ` with lifts, the lifts on
/// `S_+^N S_-^N(code)` are nonzero exactly when `c | 2N`.
pub fn suite_stabilized_lifts(
    racks: &[NamedRack],
    codes: &[NamedCode],
    ns: std::ops::RangeInclusive<u32>,
) -> Result<SuiteResult, VerifyError> {
    if let Some(r) = racks.iter().find(|r| !decomposition::is_block_rack(&r.rack)) {
        return Err(VerifyError::NotBlock { name: r.name.clone() });
    }
    let parts = per_rack(racks, |r| {
        let mut p = Partial::default();
        let q = decomposition::quotient(&r.rack).expect("block rack");
        let c = q.block_size() as u32;
        for code in codes {
            let psis = coloring::enumerate(&code.code, &q.base, u64::MAX).expect("no budget");
            for psi in psis {
                let base = coloring::count_lifts_with(&code.code, &r.rack, &q, &psi);
                if base.as_ref().is_ok_and(|&k| k == 0) {
                    continue;
                }
                for n in ns.clone() {
                    let k = code
                        .code
                        .stabilize(StabilizationKind::Plus, 0, n)
                        .and_then(|k| k.stabilize(StabilizationKind::Minus, 0, n))
                        .unwrap();
                    let lifts = coloring::count_lifts_with(&k, &r.rack, &q, &psi);
                    let expect_nonzero = (2 * n) % c == 0;
                    let ok = base.is_ok()
                        && lifts
                            .as_ref()
                            .is_ok_and(|&l| (l != 0) == expect_nonzero);
                    if ok {
                        p.cover(format!("c={c} N={n} {}", if expect_nonzero { "kept" } else { "vanished" }));
                    }
                    p.check(ok, || {
                        failure(
                            format!("{} / {} / psi {psi} / N={n}", r.name, code.name),
                            format!("lifts before {base:?}, after {lifts:?}, c={c}"),
                            &r.rack,
                            Some(&k),
                        )
                    });
                }
            }
        }
        p
    });
    Ok(SuiteResult::collect("stabilized-lifts", parts))
}

/// `Δ = (ud)⁻¹`, `ud = du`, `Δ` commutes with `u` and `d`, `u` and `d` are
/// automorphisms, and `d` is recovered from `(∗, u)`.
pub fn suite_derived_maps(racks: &[NamedRack]) -> SuiteResult {
    let parts = per_rack(racks, |r| {
        let mut p = Partial::default();
        let (u, d, delta) = (r.rack.u(), r.rack.d(), r.rack.delta());
        let ud = u.compose_unchecked(d);
        let checks = [
            ("delta = (ud)^-1", delta == ud.inverse()),
            ("ud = du", ud == d.compose_unchecked(u)),
            ("delta u = u delta", delta.commutes_with(u)),
            ("delta d = d delta", delta.commutes_with(d)),
            ("u automorphism", r.rack.is_automorphism(u)),
            ("d automorphism", r.rack.is_automorphism(d)),
            (
                "derived d",
                derive_d(&r.rack.rows(), u).as_ref() == Ok(d),
            ),
        ];
        for (what, ok) in checks {
            p.check(ok, || failure(format!("{} / {what}", r.name), String::new(), &r.rack, None));
        }
        p
    });
    SuiteResult::collect("derived-maps", parts)
}

/// Direct quantifier loops over the axioms, independent of the validator.
pub fn axioms_hold_naive(table: &[Vec<usize>], u: &[usize], d: &[usize]) -> bool {
    let n = table.len();
    let bijective = |f: &dyn Fn(usize) -> usize| {
        let mut hit = vec![false; n];
        (0..n).all(|x| f(x) < n && !std::mem::replace(&mut hit[f(x)], true))
    };
    if u.len() != n || d.len() != n || table.iter().any(|row| row.len() != n) {
        return false;
    }
    if !bijective(&|x| u[x]) || !bijective(&|x| d[x]) {
        return false;
    }
    if !(0..n).all(|y| bijective(&|x| table[x][y])) {
        return false;
    }
    for x in 0..n {
        let s = table[x][x];
        if u[d[s]] != x || d[u[s]] != x {
            return false;
        }
        for y in 0..n {
            let xy = table[x][y];
            if u[xy] != table[u[x]][y] || d[xy] != table[d[x]][y] {
                return false;
            }
            if table[x][u[y]] != xy || table[x][d[y]] != xy {
                return false;
            }
            for z in 0..n {
                if table[xy][z] != table[table[x][z]][table[y][z]] {
                    return false;
                }
            }
        }
    }
    true
}

/// Every single-cell corruption of each table: the validator's verdict
/// matches [`axioms_hold_naive`].
pub fn suite_axiom_corruption(racks: &[NamedRack]) -> SuiteResult {
    let parts = per_rack(racks, |r| {
        let mut p = Partial::default();
        let (u, d) = (r.rack.u().images(), r.rack.d().images());
        let rows = r.rack.rows();
        p.check(
            axioms_hold_naive(&rows, u, d)
                && glrack::validate(&rows, u, d).is_ok_and(|rep| rep.is_valid()),
            || failure(format!("{} / original", r.name), String::new(), &r.rack, None),
        );
        let n = rows.len();
        for x in 0..n {
            for y in 0..n {
                for v in (0..n).filter(|&v| v != rows[x][y]) {
                    let mut t = rows.clone();
                    t[x][y] = v;
                    let oracle = axioms_hold_naive(&t, u, d);
                    let verdict = glrack::validate(&t, u, d).map(|rep| rep.is_valid());
                    if oracle {
                        p.cover("corruption still valid");
                    }
                    p.check(verdict == Ok(oracle), || {
                        failure(
                            format!("{} / cell ({}, {}) := {}", r.name, x + 1, y + 1, v + 1),
                            format!("validator {verdict:?}, oracle {oracle}"),
                            &r.rack,
                            None,
                        )
                    });
                }
            }
        }
        p
    });
    SuiteResult::collect("axiom-corruption", parts)
}

/// The production census against the naive triple enumerator: same
/// GL-racks, and every naive `d` is the derived one.
pub fn suite_census_cross_check(max_order: usize) -> Result<SuiteResult, VerifyError> {
    let mut p = Partial::default();
    for n in 1..=max_order {
        let key = |r: &GlRack| (r.flat_table().to_vec(), r.u().images().to_vec(), r.d().images().to_vec());
        let mut fast: Vec<_> = census::enumerate_glracks(n)?.iter().map(|e| key(&e.rack)).collect();
        let naive_racks = census::enumerate_glracks_naive(n)?;
        let mut naive: Vec<_> = naive_racks.iter().map(key).collect();
        fast.sort();
        naive.sort();
        p.cover(format!("order {n}: {} gl-racks", naive.len()));
        p.check(fast == naive, || Failure {
            case: format!("order {n}"),
            detail: format!("{} from the census, {} from the naive scan", fast.len(), naive.len()),
            rack: None,
            code: None,
        });
        for r in &naive_racks {
            let derived = derive_d(&r.rows(), r.u());
            p.check(derived.as_ref() == Ok(r.d()), || {
                failure(
                    format!("order {n} / derived d"),
                    format!("{derived:?} vs {}", r.d()),
                    r,
                    None,
                )
            });
        }
    }
    Ok(SuiteResult::collect("census-cross-check", vec![p]))
}

/// A pair of presentations with opposite `(tb, rot)` whose counts differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Observation {
    pub rack: String,
    pub tb: i64,
    pub rot: i64,
    pub count: u64,
    pub mirror_count: u64,
}

/// Exploratory: compares realized presentations of `(t, r)` and `(-t, -r)`
/// on racks that are not permutation racks, reporting every difference.
/// Nothing is asserted.
pub fn explore_opposite_invariants(racks: &[NamedRack]) -> Vec<Observation> {
    racks
        .par_iter()
        .filter(|r| !r.rack.is_permutation_rack())
        .map(|r| {
            let mut out = Vec::new();
            for t in INVARIANT_GRID {
                for rot in INVARIANT_GRID {
                    let a = coloring::count(&realized_code(t, rot), &r.rack);
                    let b = coloring::count(&realized_code(-t, -rot), &r.rack);
                    if a != b {
                        out.push(Observation {
                            rack: r.name.clone(),
                            tb: t,
                            rot,
                            count: a,
                            mirror_count: b,
                        });
                    }
                }
            }
            out
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

/// Every suite name accepted by [`run_suite`], in run order.
pub const SUITES: [&str; 13] = [
    "axiom-corruption",
    "derived-maps",
    "census-cross-check",
    "oracle",
    "block-sum",
    "lift-dichotomy",
    "permutation-closed-form",
    "stabilization-metadata",
    "isotopy-family",
    "glquandle-stabilization",
    "opposite-invariants",
    "stabilized-lifts",
    "rotation-smoothing",
];

/// Runs one suite over the given racks and codes. Suites that need GL-quandles,
/// permutation racks or block racks select them from `racks`.
pub fn run_suite(
    name: &str,
    racks: &[NamedRack],
    codes: &[NamedCode],
) -> Option<Result<SuiteResult, VerifyError>> {
    let select = |f: fn(&GlRack) -> bool| -> Vec<NamedRack> {
        racks.iter().filter(|r| f(&r.rack)).cloned().collect()
    };
    let small: Vec<NamedRack> = racks.iter().filter(|r| r.rack.order() <= 4).cloned().collect();
    Some(match name {
        "axiom-corruption" => Ok(suite_axiom_corruption(&small)),
        "derived-maps" => Ok(suite_derived_maps(racks)),
        "census-cross-check" => suite_census_cross_check(census::NAIVE_ORDER_CAP),
        "oracle" => Ok(suite_oracle(racks, codes)),
        "block-sum" => Ok(suite_block_sum(racks, codes)),
        "lift-dichotomy" => Ok(suite_lift_dichotomy(racks, codes)),
        "permutation-closed-form" => Ok(suite_permutation_closed_form(racks, codes)),
        "stabilization-metadata" => Ok(suite_stabilization_metadata(codes, 10)),
        "isotopy-family" => Ok(suite_isotopy_family(racks, codes)),
        "glquandle-stabilization" => {
            suite_glquandle_stabilization(&select(GlRack::is_gl_quandle), codes, 5)
        }
        "opposite-invariants" => suite_opposite_invariants(&select(GlRack::is_permutation_rack)),
        "stabilized-lifts" => {
            suite_stabilized_lifts(&select(decomposition::is_block_rack), codes, 1..=3)
        }
        "rotation-smoothing" => suite_rotation_smoothing(&select(GlRack::is_gl_quandle), codes, 2),
        _ => return None,
    })
}

/// Block racks with block size `c` among `racks`.
pub fn block_racks_with(racks: &[NamedRack], c: usize) -> Vec<NamedRack> {
    racks
        .iter()
        .filter(|r| {
            let dec = decomposition::decompose(&r.rack);
            dec.groups.len() == 1 && dec.groups[0].cycle_length == c
        })
        .cloned()
        .collect()
}

/// Fixed-point counts of `u^{-r-t} d^{r-t}` and `u^{r+t} d^{t-r}`.
pub fn opposite_chain_fixed_points(u: &Permutation, d: &Permutation, t: i64, r: i64) -> (usize, usize) {
    let chain = |a: i64, b: i64| u.pow(a).compose_unchecked(&d.pow(b)).fixed_points().len();
    (chain(-r - t, r - t), chain(r + t, t - r))
}
