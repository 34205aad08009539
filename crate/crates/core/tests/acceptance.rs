//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero when any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use glrack_core::coloring::{self, Coloring, DEFAULT_BUDGET};
use glrack_core::decomposition;
use glrack_core::examples;
use glrack_core::glrack::{derive_d, validate};
use glrack_core::verify::{self, NamedCode, NamedRack, SuiteResult};
use glrack_core::{GlRack, Permutation};

type Outcome = Result<String, String>;

struct Grid {
    /// census GL-racks of order at most 4 and the three worked racks
    racks: Vec<NamedRack>,
    census: Vec<NamedRack>,
    corpus: Vec<NamedCode>,
}

fn suite(result: SuiteResult) -> Outcome {
    if result.passed() {
        Ok(format!("{} cases", result.cases))
    } else {
        let first = &result.failures[0];
        Err(format!(
            "{} of {} cases failed; first: {} ({})",
            result.failures.len(),
            result.cases,
            first.case,
            first.detail
        ))
    }
}

fn ensure(ok: bool, what: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed <= limit, format!("took {elapsed:?}, limit {limit:?}"))
}

fn unknot_under_permutation_rack(_: &Grid) -> Outcome {
    let t = Instant::now();
    let rack = examples::permutation3();
    let code = examples::unknot();
    let fast = coloring::count(&code, &rack);
    let oracle = coloring::count_bruteforce(&code, &rack, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    ensure(fast == 0 && oracle == 0, format!("search {fast}, oracle {oracle}"))?;
    within(t.elapsed(), Duration::from_secs(1))?;
    Ok("0 colorings".into())
}

fn trefoil_goldens(_: &Grid) -> Outcome {
    let t = Instant::now();
    let trefoil = examples::trefoil();

    let split = coloring::count_by_blocks(&trefoil, &examples::mixed6());
    let counts: Vec<u64> = split.per_block.iter().flatten().map(|b| b.count).collect();
    ensure(
        split.total == 2 && counts == [2, 0],
        format!("two-group rack: total {}, split {counts:?}", split.total),
    )?;

    let block = examples::block6();
    let total = coloring::count(&trefoil, &block);
    ensure(total == 0, format!("block rack total {total}"))?;

    let quotient = decomposition::quotient(&block).map_err(|e| e.to_string())?;
    ensure(
        quotient.base == examples::block6_quotient(),
        "computed quotient differs from the worked table",
    )?;
    let q_total = coloring::count(&trefoil, &quotient.base);
    ensure(q_total == 3, format!("quotient total {q_total}"))?;
    let lifts = coloring::count_via_lifts(&trefoil, &block).map_err(|e| e.to_string())?;
    let table = lifts.lifts.expect("lift method reports a table");
    let psis: Vec<Coloring> = table.lifts.iter().map(|(p, _)| p.clone()).collect();
    let ks: Vec<u64> = table.lifts.iter().map(|&(_, k)| k).collect();
    ensure(
        psis.len() == 3 && ks == [0, 0, 0],
        format!("lifts {ks:?} over {} quotient colorings", psis.len()),
    )?;
    within(t.elapsed(), Duration::from_secs(1))?;
    Ok("2 = 2 + 0; 0; 3 with lifts (0, 0, 0)".into())
}

fn axiom_validation(_: &Grid) -> Outcome {
    for r in [examples::permutation3(), examples::block6(), examples::mixed6()] {
        let rep = validate(&r.rows(), r.u().images(), r.d().images()).map_err(|e| e.to_string())?;
        ensure(rep.is_valid(), format!("worked rack rejected: {rep}"))?;
    }
    let racks = vec![NamedRack {
        name: "3-point permutation rack".into(),
        rack: examples::permutation3(),
    }];
    suite(verify::suite_axiom_corruption(&racks))
}

fn derived_maps(grid: &Grid) -> Outcome {
    let t = Instant::now();
    let id = Permutation::identity(6);
    for r in [examples::block6(), examples::mixed6()] {
        let d = derive_d(&r.rows(), r.u()).map_err(|e| e.to_string())?;
        ensure(d == id, format!("derived d = {d}"))?;
    }
    let out = suite(verify::suite_derived_maps(&grid.racks))?;
    within(t.elapsed(), Duration::from_secs(60))?;
    Ok(out)
}

fn oracle_equivalence(grid: &Grid) -> Outcome {
    let t = Instant::now();
    let out = suite(verify::suite_oracle(&grid.racks, &grid.corpus))?;
    within(t.elapsed(), Duration::from_secs(600))?;
    Ok(out)
}

fn block_sum(grid: &Grid) -> Outcome {
    suite(verify::suite_block_sum(&grid.racks, &grid.corpus))
}

fn lift_dichotomy(grid: &Grid) -> Outcome {
    suite(verify::suite_lift_dichotomy(&grid.racks, &grid.corpus))
}

fn permutation_closed_form(grid: &Grid) -> Outcome {
    let perm: Vec<NamedRack> = grid
        .census
        .iter()
        .filter(|r| r.rack.is_permutation_rack())
        .cloned()
        .chain([NamedRack {
            name: "3-point permutation rack".into(),
            rack: examples::permutation3(),
        }])
        .collect();
    let n = perm.len();
    suite(verify::suite_permutation_closed_form(&perm, &grid.corpus))
        .map(|s| format!("{s} over {n} permutation racks"))
}

fn stabilization_metadata(grid: &Grid) -> Outcome {
    suite(verify::suite_stabilization_metadata(&grid.corpus, 10))
}

fn isotopy_families(grid: &Grid) -> Outcome {
    suite(verify::suite_isotopy_family(&grid.racks, &grid.corpus))
}

fn stabilized_lifts(grid: &Grid) -> Outcome {
    let mut racks = verify::block_racks_with(&grid.census, 2);
    racks.extend(verify::block_racks_with(&grid.census, 3));
    let result = verify::suite_stabilized_lifts(&racks, &grid.corpus, 1..=3).map_err(|e| e.to_string())?;
    let covered = |k: &str| result.coverage.keys().any(|key| key.starts_with(k));
    let summary = suite(result.clone())?;
    for key in ["c=2 N=1 kept", "c=3 N=1 vanished", "c=3 N=2 vanished", "c=3 N=3 kept"] {
        ensure(covered(key), format!("no nonvacuous case for '{key}'"))?;
    }
    Ok(format!("{summary} over {} block racks", racks.len()))
}

fn rotation_smoothing(grid: &Grid) -> Outcome {
    let quandles: Vec<NamedRack> = grid
        .census
        .iter()
        .filter(|r| r.rack.is_gl_quandle())
        .cloned()
        .collect();
    let result = verify::suite_rotation_smoothing(&quandles, &grid.corpus, 2).map_err(|e| e.to_string())?;
    for rot in -2..=2 {
        ensure(
            result.coverage.contains_key(&format!("rot={rot}")),
            format!("no code with rot={rot}"),
        )?;
    }
    suite(result).map(|s| format!("{s} over {} GL-quandles", quandles.len()))
}

fn census_cross_check(_: &Grid) -> Outcome {
    let t = Instant::now();
    let result = verify::suite_census_cross_check(3).map_err(|e| e.to_string())?;
    let sizes: Vec<String> = result.coverage.keys().cloned().collect();
    let out = suite(result)?;
    within(t.elapsed(), Duration::from_secs(600))?;
    Ok(format!("{out}; {}", sizes.join(", ")))
}

type Criterion = (&'static str, fn(&Grid) -> Outcome);

const CRITERIA: [Criterion; 13] = [
    ("unknot under the 3-point permutation rack", unknot_under_permutation_rack),
    ("trefoil goldens", trefoil_goldens),
    ("axiom validation and corruptions", axiom_validation),
    ("derived-map identities", derived_maps),
    ("search agrees with brute force", oracle_equivalence),
    ("block sum", block_sum),
    ("lift dichotomy", lift_dichotomy),
    ("permutation closed form", permutation_closed_form),
    ("stabilization shifts tb and rot", stabilization_metadata),
    ("isotopy families", isotopy_families),
    ("stabilized lifts vanish unless c | 2N", stabilized_lifts),
    ("rotation cancellation matches smoothing", rotation_smoothing),
    ("census against the naive enumerator", census_cross_check),
];

fn main() -> ExitCode {
    let start = Instant::now();
    let census = verify::census_racks(4).expect("order 4 is within the census cap");
    let mut racks = census.clone();
    racks.extend(
        [
            ("3-point permutation rack", examples::permutation3()),
            ("6-element block rack", examples::block6()),
            ("6-element rack with two groups", examples::mixed6()),
        ]
        .into_iter()
        .map(|(name, rack): (&str, GlRack)| NamedRack {
            name: name.into(),
            rack,
        }),
    );
    let grid = Grid {
        racks,
        census,
        corpus: verify::corpus(),
    };
    println!(
        "grid: {} racks ({} from the census), {} codes, built in {:?}",
        grid.racks.len(),
        grid.census.len(),
        grid.corpus.len(),
        start.elapsed()
    );

    let mut failed = 0;
    for (i, (name, check)) in CRITERIA.iter().enumerate() {
        let t = Instant::now();
        let outcome = check(&grid);
        let elapsed = t.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{elapsed:.2?}]", i + 1),
            Err(reason) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {reason} [{elapsed:.2?}]", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed in {:.2?}",
        CRITERIA.len() - failed,
        CRITERIA.len(),
        start.elapsed()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
