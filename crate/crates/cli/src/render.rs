//! Text and JSON rendering. All elements and arcs are printed 1-based.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::Path;

use anyhow::{Context, Result};
use glrack_core::census::Census;
use glrack_core::coloring::{ColoringReport, LiftTable};
use glrack_core::decomposition::{self, DeltaDecomposition};
use glrack_core::glrack::text;
use glrack_core::verify::{Observation, SuiteResult};
use glrack_core::{FrontCode, GlRack, ValidationReport};
use serde_json::{json, Value};

/// Version tag carried by every JSON document.
pub const FORMAT: &str = "glrack/1";

fn one(xs: &[usize]) -> Vec<usize> {
    xs.iter().map(|x| x + 1).collect()
}

fn set(xs: &[usize]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| (x + 1).to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

fn table_text(rows: &[Vec<usize>]) -> String {
    let width = rows.len().to_string().len();
    let mut s = String::new();
    for row in rows {
        let cells: Vec<String> = row.iter().map(|v| format!("{:>width$}", v + 1)).collect();
        let _ = writeln!(s, "  {}", cells.join(" "));
    }
    s
}

fn doc(kind: &str, body: Value) -> Value {
    let mut map = serde_json::Map::new();
    map.insert("format".into(), json!(FORMAT));
    map.insert("kind".into(), json!(kind));
    if let Value::Object(fields) = body {
        map.extend(fields);
    }
    Value::Object(map)
}

pub struct Output {
    json: bool,
}

impl Output {
    pub fn new(json: bool) -> Self {
        Self { json }
    }

    fn emit(&self, kind: &str, body: Value, text: impl FnOnce() -> String) {
        let rendered = if self.json {
            let mut s = serde_json::to_string_pretty(&doc(kind, body)).expect("values serialize");
            s.push('\n');
            s
        } else {
            text()
        };
        // a closed pipe (e.g. `| head`) is not an error worth reporting
        let _ = std::io::stdout().lock().write_all(rendered.as_bytes());
    }

    pub fn validation(&self, report: &ValidationReport) {
        let violations: Vec<Value> = report
            .violations()
            .iter()
            .map(|v| json!({"check": v.check.id(), "witness": one(&v.witness)}))
            .collect();
        self.emit(
            "validation",
            json!({"valid": report.is_valid(), "violations": violations}),
            || {
                if report.is_valid() {
                    "valid\n".into()
                } else {
                    let mut s = String::from("invalid\n");
                    for v in report.violations() {
                        let _ = writeln!(s, "  {v}");
                    }
                    s
                }
            },
        );
    }

    pub fn decomposition(&self, rack: &GlRack) {
        let dec = decomposition::decompose(rack);
        let classification = classify(rack, &dec);
        let groups: Vec<(Value, String)> = dec
            .groups
            .iter()
            .enumerate()
            .map(|(j, g)| {
                let sub = decomposition::subrack(rack, &g.elements).expect("groups are closed");
                let q = decomposition::quotient(&sub.rack).expect("groups are block racks");
                let labels = |s: &Vec<usize>| -> Vec<usize> { s.iter().map(|&x| sub.original(x)).collect() };
                let supports: Vec<Vec<usize>> = q.supports.iter().map(labels).collect();
                let value = json!({
                    "index": j + 1,
                    "elements": one(&g.elements),
                    "cycle_length": g.cycle_length,
                    "kind": g.kind.to_string(),
                    "supports": g.supports.iter().map(|&i| i + 1).collect::<Vec<_>>(),
                    "quotient": {
                        "points": supports.iter().map(|s| one(s)).collect::<Vec<_>>(),
                        "table": q.base.rows().iter().map(|r| one(r)).collect::<Vec<_>>(),
                    },
                });
                let mut s = String::new();
                let _ = writeln!(
                    s,
                    "B_{} = {}  cycle length {}, {}",
                    j + 1,
                    set(&g.elements),
                    g.cycle_length,
                    g.kind
                );
                let points: Vec<String> = supports.iter().map(|p| set(p)).collect();
                let _ = writeln!(s, "  quotient points: {}", points.join(" "));
                s.push_str(&table_text(&q.base.rows()));
                (value, s)
            })
            .collect();
        let supports: Vec<Vec<usize>> = dec.supports.iter().map(|c| one(c)).collect();
        self.emit(
            "decomposition",
            json!({
                "order": rack.order(),
                "delta": rack.delta().cycle_notation(),
                "supports": supports,
                "groups": groups.iter().map(|g| g.0.clone()).collect::<Vec<_>>(),
                "classification": classification,
            }),
            || {
                let mut s = String::new();
                let _ = writeln!(s, "order {}", rack.order());
                let _ = writeln!(s, "delta {}", rack.delta().cycle_notation());
                let _ = writeln!(s, "classification {classification}");
                for (i, c) in dec.supports.iter().enumerate() {
                    let _ = writeln!(s, "A_{} = {}", i + 1, set(c));
                }
                for (_, t) in &groups {
                    s.push_str(t);
                }
                s
            },
        );
    }

    pub fn invariants(&self, code: &FrontCode) {
        let inv = code.invariants();
        self.emit(
            "invariants",
            json!({
                "arcs": code.arcs(),
                "tb": inv.tb,
                "rot": inv.rot,
                "writhe": inv.writhe,
                "up_cusps": inv.up,
                "down_cusps": inv.down,
            }),
            || {
                format!(
                    "arcs {}\ntb {}\nrot {}\nwrithe {}\nup cusps {}\ndown cusps {}\n",
                    code.arcs(),
                    inv.tb,
                    inv.rot,
                    inv.writhe,
                    inv.up,
                    inv.down
                )
            },
        );
    }

    pub fn coloring(&self, report: &ColoringReport) {
        let lifts_json = |t: &LiftTable| {
            json!({
                "block_size": t.block_size,
                "points": t.supports.iter().map(|s| one(s)).collect::<Vec<_>>(),
                "lifts": t.lifts.iter().map(|(psi, k)| json!({"psi": one(&psi.0), "count": k})).collect::<Vec<_>>(),
            })
        };
        let blocks: Option<Vec<Value>> = report.per_block.as_ref().map(|bs| {
            bs.iter()
                .map(|b| {
                    let mut v = json!({
                        "elements": one(&b.elements),
                        "cycle_length": b.cycle_length,
                        "kind": b.kind.to_string(),
                        "count": b.count,
                        "method": b.method.name(),
                    });
                    if let Some(t) = &b.lifts {
                        v["lifts"] = lifts_json(t);
                    }
                    v
                })
                .collect()
        });
        let mut body = json!({"total": report.total, "method": report.method.name()});
        if let Some(b) = blocks {
            body["blocks"] = Value::Array(b);
        }
        if let Some(t) = &report.lifts {
            body["lifts"] = lifts_json(t);
        }
        self.emit("coloring", body, || {
            let mut s = String::new();
            let _ = writeln!(s, "total {}", report.total);
            let _ = writeln!(s, "method {}", report.method);
            if let Some(bs) = &report.per_block {
                let _ = writeln!(s, "blocks");
                for (j, b) in bs.iter().enumerate() {
                    let _ = writeln!(
                        s,
                        "  B_{} {} c={} {}: {} ({})",
                        j + 1,
                        set(&b.elements),
                        b.cycle_length,
                        b.kind,
                        b.count,
                        b.method
                    );
                    if let Some(t) = &b.lifts {
                        lift_text(&mut s, t, "    ");
                    }
                }
            }
            if let Some(t) = &report.lifts {
                lift_text(&mut s, t, "  ");
            }
            s
        });
    }

    pub fn code(&self, code: &FrontCode) {
        self.emit("front", json!({"code": code.serialize()}), || code.serialize());
    }

    pub fn census(&self, census: &Census, up_to_iso: bool) {
        let entries: Vec<Value> = if up_to_iso {
            census
                .classes
                .iter()
                .map(|c| json!({"rack": rack_json(&c.representative.rack), "class_size": c.count}))
                .collect()
        } else {
            census.entries.iter().map(|e| json!({"rack": rack_json(&e.rack)})).collect()
        };
        self.emit(
            "census",
            json!({
                "order": census.order,
                "racks": census.rack_count,
                "gl_racks": census.entries.len(),
                "classes": census.classes.len(),
                "up_to_iso": up_to_iso,
                "entries": entries,
            }),
            || census.dump(up_to_iso),
        );
    }

    pub fn suites(&self, results: &[SuiteResult], observations: Option<&[Observation]>) {
        let suites: Vec<Value> = results
            .iter()
            .map(|r| {
                json!({
                    "id": r.id,
                    "status": r.status().to_string(),
                    "cases": r.cases,
                    "coverage": r.coverage,
                    "failures": r.failures.iter().map(|f| json!({
                        "case": f.case,
                        "detail": f.detail,
                        "rack": f.rack.as_ref().map(text::serialize),
                        "code": f.code.as_ref().map(FrontCode::serialize),
                    })).collect::<Vec<_>>(),
                })
            })
            .collect();
        let mut body = json!({"suites": suites});
        if let Some(obs) = observations {
            body["exploratory"] = Value::Array(
                obs.iter()
                    .map(|o| json!({"rack": o.rack, "tb": o.tb, "rot": o.rot, "count": o.count, "mirror_count": o.mirror_count}))
                    .collect(),
            );
        }
        self.emit("check", body, || {
            let mut s = String::new();
            for r in results {
                let _ = writeln!(s, "{}", r.summary());
                for f in r.failures.iter().take(5) {
                    let _ = writeln!(s, "  {}: {}", f.case, f.detail);
                }
            }
            if let Some(obs) = observations {
                let _ = writeln!(
                    s,
                    "exploratory: {} opposite-invariant pairs with different counts",
                    obs.len()
                );
                for o in obs {
                    let _ = writeln!(
                        s,
                        "  {} (tb, rot) = ({}, {}): {} vs {}",
                        o.rack, o.tb, o.rot, o.count, o.mirror_count
                    );
                }
            }
            s
        });
    }
}

fn lift_text(s: &mut String, t: &LiftTable, indent: &str) {
    let points: Vec<String> = t.supports.iter().map(|p| set(p)).collect();
    let _ = writeln!(s, "{indent}lifts (c={}) over points {}", t.block_size, points.join(" "));
    for (psi, k) in &t.lifts {
        let _ = writeln!(s, "{indent}  psi {psi}: {k}");
    }
}

fn rack_json(rack: &GlRack) -> Value {
    json!({
        "n": rack.order(),
        "star": rack.rows().iter().map(|r| one(r)).collect::<Vec<_>>(),
        "u": rack.u().one_based(),
        "d": rack.d().one_based(),
    })
}

fn classify(rack: &GlRack, dec: &DeltaDecomposition) -> &'static str {
    if rack.is_permutation_rack() {
        "permutation GL-rack"
    } else if rack.is_gl_quandle() {
        "GL-quandle"
    } else if dec.groups.len() == 1 {
        "block GL-rack"
    } else {
        "sum of block GL-racks"
    }
}

/// Writes each failure as `<suite>-<k>.glrack` and `<suite>-<k>.front`,
/// plus a `<suite>-<k>.txt` note naming the case.
pub fn dump_failures(dir: &Path, results: &[SuiteResult]) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    for r in results {
        for (k, f) in r.failures.iter().enumerate() {
            let stem = dir.join(format!("{}-{}", r.id, k + 1));
            let write = |ext: &str, body: String| {
                let path = stem.with_extension(ext);
                fs::write(&path, body).with_context(|| format!("cannot write {}", path.display()))
            };
            write("txt", format!("{}\n{}\n", f.case, f.detail))?;
            if let Some(rack) = &f.rack {
                write("glrack", text::serialize(rack))?;
            }
            if let Some(code) = &f.code {
                write("front", code.serialize())?;
            }
        }
    }
    Ok(())
}
