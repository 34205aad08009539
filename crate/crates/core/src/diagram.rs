//! Front-code presentations of oriented Legendrian knots.
//!
//! A front code lists, in cyclic order along the knot, one relation per arc
//! `x_i`:
//!
//! ```text
//! u^{p_i} d^{q_i}(x_i) ∗^{ε_i} x_{k_i} = x_{i+1}        (x_{n+1} = x_1)
//! ```
//!
//! where `p_i`/`q_i` count the up/down cusps between `x_i` and `x_{i+1}`,
//! `ε_i` is the sign of the crossing that ends `x_i` and `x_{k_i}` is its over
//! arc. A relation without a crossing reads `u^{p_i} d^{q_i}(x_i) = x_{i+1}`.
//!
//! Text format:
//!
//! ```text
//! front
//! arcs 3
//! rel 1 1 + 3
//! rel 0 0 + 1
//! rel 1 1 + 2
//! ```
//!
//! `rel <p> <q> <sign> <over>` with sign in `+`, `-`, `.` (no crossing, over
//! must then be `-`). Arc indices are 1-based.

use std::fmt;
use std::fmt::Write as _;

use thiserror::Error;

use crate::glrack::text::{tokens, TokenLine};
use crate::ParseError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Crossing {
    pub sign: Sign,
    /// 0-based over-arc index
    pub over: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Relation {
    /// up cusps
    pub up: u32,
    /// down cusps
    pub down: u32,
    pub crossing: Option<Crossing>,
}

impl Relation {
    pub fn cusps(up: u32, down: u32) -> Self {
        Self {
            up,
            down,
            crossing: None,
        }
    }

    pub fn crossing(up: u32, down: u32, sign: Sign, over: usize) -> Self {
        Self {
            up,
            down,
            crossing: Some(Crossing { sign, over }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("a front code needs at least one relation")]
    Empty,
    #[error("relation {relation}: over-arc {over} out of range 1..={n}")]
    OverArcOutOfRange {
        relation: usize,
        over: usize,
        n: usize,
    },
    #[error("total cusp count {0} is odd")]
    OddCusps(u64),
    #[error("arc {at} out of range 1..={n}")]
    ArcOutOfRange { at: usize, n: usize },
}

/// A validated front code: at least one relation, over-arcs in range and an
/// even total number of cusps.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FrontCode {
    relations: Vec<Relation>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassicalInvariants {
    pub tb: i64,
    pub rot: i64,
    pub writhe: i64,
    pub up: u64,
    pub down: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StabilizationKind {
    /// adds two down cusps; `rot` increases by one
    Plus,
    /// adds two up cusps; `rot` decreases by one
    Minus,
}

/// Result of smoothing every cusp.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Smoothing {
    pub code: FrontCode,
    /// `generator_map[i]` is the new arc carrying old arc `i`
    pub generator_map: Vec<usize>,
}

impl FrontCode {
    pub fn new(relations: Vec<Relation>) -> Result<Self, DiagramError> {
        let n = relations.len();
        if n == 0 {
            return Err(DiagramError::Empty);
        }
        for (i, r) in relations.iter().enumerate() {
            if let Some(c) = r.crossing {
                if c.over >= n {
                    return Err(DiagramError::OverArcOutOfRange {
                        relation: i + 1,
                        over: c.over + 1,
                        n,
                    });
                }
            }
        }
        let cusps: u64 = relations
            .iter()
            .map(|r| u64::from(r.up) + u64::from(r.down))
            .sum();
        if !cusps.is_multiple_of(2) {
            return Err(DiagramError::OddCusps(cusps));
        }
        Ok(Self { relations })
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    /// Number of arcs (generators), equal to the number of relations.
    pub fn arcs(&self) -> usize {
        self.relations.len()
    }

    pub fn invariants(&self) -> ClassicalInvariants {
        let writhe = self
            .relations
            .iter()
            .filter_map(|r| r.crossing.map(|c| c.sign.value()))
            .sum();
        let up: u64 = self.relations.iter().map(|r| u64::from(r.up)).sum();
        let down: u64 = self.relations.iter().map(|r| u64::from(r.down)).sum();
        let (upi, downi) = (up as i64, down as i64);
        ClassicalInvariants {
            tb: writhe - (upi + downi) / 2,
            rot: (downi - upi) / 2,
            writhe,
            up,
            down,
        }
    }

    /// Applies `times` stabilizations of one kind on arc `at` (0-based).
    pub fn stabilize(
        &self,
        kind: StabilizationKind,
        at: usize,
        times: u32,
    ) -> Result<FrontCode, DiagramError> {
        let n = self.arcs();
        if at >= n {
            return Err(DiagramError::ArcOutOfRange { at: at + 1, n });
        }
        let mut relations = self.relations.clone();
        let r = &mut relations[at];
        match kind {
            StabilizationKind::Plus => r.down += 2 * times,
            StabilizationKind::Minus => r.up += 2 * times,
        }
        let out = FrontCode { relations };
        let (before, after) = (self.invariants(), out.invariants());
        let t = i64::from(times);
        debug_assert_eq!(after.tb, before.tb - t);
        debug_assert_eq!(
            after.rot,
            before.rot
                + match kind {
                    StabilizationKind::Plus => t,
                    StabilizationKind::Minus => -t,
                }
        );
        Ok(out)
    }

    /// Removes every cusp and contracts the crossing-free relations
    /// `x_i = x_{i+1}`. A code without crossings smooths to the one-arc
    /// trivial code `x_1 = x_1`.
    pub fn smooth(&self) -> Smoothing {
        let n = self.arcs();
        // arcs i and i+1 merge when relation i has no crossing
        let mut generator_map = vec![usize::MAX; n];
        let crossings = self.relations.iter().filter(|r| r.crossing.is_some()).count();
        if crossings == 0 {
            return Smoothing {
                code: FrontCode {
                    relations: vec![Relation::cusps(0, 0)],
                },
                generator_map: vec![0; n],
            };
        }
        // Runs end at crossing relations. Arc 0 belongs to run 0, which also
        // absorbs any crossing-free tail wrapping around to arc 0.
        let mut run = 0;
        for (slot, rel) in generator_map.iter_mut().zip(&self.relations) {
            *slot = run;
            if rel.crossing.is_some() {
                run += 1;
            }
        }
        // the tail after the last crossing wraps into run 0
        let last_crossing = (0..n).rev().find(|&i| self.relations[i].crossing.is_some()).unwrap();
        for slot in generator_map.iter_mut().skip(last_crossing + 1) {
            *slot = 0;
        }
        let m = crossings;
        let relations = self
            .relations
            .iter()
            .filter_map(|r| {
                r.crossing.map(|c| Relation {
                    up: 0,
                    down: 0,
                    crossing: Some(Crossing {
                        sign: c.sign,
                        over: generator_map[c.over],
                    }),
                })
            })
            .collect::<Vec<_>>();
        debug_assert_eq!(relations.len(), m);
        Smoothing {
            code: FrontCode { relations },
            generator_map,
        }
    }

    pub fn parse(text: &str) -> Result<FrontCode, ParseError> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l)).filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        });
        let mut last = 1;
        let mut next = |what: &str| -> Result<TokenLine<'_>, ParseError> {
            match lines.next() {
                Some((line, l)) => {
                    last = line;
                    Ok((line, tokens(l)))
                }
                None => Err(ParseError::new(
                    last,
                    1,
                    format!("unexpected end of input, expected {what}"),
                )),
            }
        };
        let (line, toks) = next("'front'")?;
        expect_word(line, &toks, "front")?;
        let (line, toks) = next("'arcs <n>'")?;
        expect_word(line, &toks, "arcs")?;
        let n = match toks.get(1) {
            Some(&(col, t)) => match t.parse::<usize>() {
                Ok(n) if n > 0 => n,
                _ => return Err(ParseError::new(line, col, format!("bad arc count '{t}'"))),
            },
            None => return Err(ParseError::new(line, 1, "missing arc count")),
        };
        let mut relations = Vec::with_capacity(n);
        let mut first_rel_line = 0;
        for i in 0..n {
            let (line, toks) = next(&format!("relation {}", i + 1))?;
            if i == 0 {
                first_rel_line = line;
            }
            expect_word(line, &toks, "rel")?;
            if toks.len() != 5 {
                return Err(ParseError::new(
                    line,
                    1,
                    format!("'rel' takes 4 fields, found {}", toks.len() - 1),
                ));
            }
            let count = |(col, t): (usize, &str)| {
                t.parse::<u32>()
                    .map_err(|_| ParseError::new(line, col, format!("bad cusp count '{t}'")))
            };
            let up = count(toks[1])?;
            let down = count(toks[2])?;
            let (scol, sign) = toks[3];
            let (ocol, over) = toks[4];
            let crossing = match sign {
                "." => {
                    if over != "-" {
                        return Err(ParseError::new(
                            line,
                            ocol,
                            "a relation without a crossing takes '-' as over-arc",
                        ));
                    }
                    None
                }
                "+" | "-" => {
                    let k: usize = over.parse().map_err(|_| {
                        ParseError::new(line, ocol, format!("bad over-arc '{over}'"))
                    })?;
                    if k == 0 || k > n {
                        return Err(ParseError::new(
                            line,
                            ocol,
                            format!("over-arc {k} out of range 1..={n}"),
                        ));
                    }
                    Some(Crossing {
                        sign: if sign == "+" {
                            Sign::Positive
                        } else {
                            Sign::Negative
                        },
                        over: k - 1,
                    })
                }
                other => {
                    return Err(ParseError::new(
                        line,
                        scol,
                        format!("bad sign '{other}', expected +, - or ."),
                    ))
                }
            };
            relations.push(Relation { up, down, crossing });
        }
        if let Some((line, _)) = lines.next() {
            return Err(ParseError::new(line, 1, "trailing content after relations"));
        }
        FrontCode::new(relations).map_err(|e| ParseError::new(first_rel_line, 1, e.to_string()))
    }

    pub fn serialize(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "front");
        let _ = writeln!(s, "arcs {}", self.arcs());
        for r in &self.relations {
            match r.crossing {
                Some(c) => {
                    let sign = match c.sign {
                        Sign::Positive => '+',
                        Sign::Negative => '-',
                    };
                    let _ = writeln!(s, "rel {} {} {} {}", r.up, r.down, sign, c.over + 1);
                }
                None => {
                    let _ = writeln!(s, "rel {} {} . -", r.up, r.down);
                }
            }
        }
        s
    }
}

fn expect_word(line: usize, toks: &[(usize, &str)], word: &str) -> Result<(), ParseError> {
    match toks.first() {
        Some(&(_, t)) if t == word => Ok(()),
        Some(&(col, t)) => Err(ParseError::new(
            line,
            col,
            format!("expected '{word}', found '{t}'"),
        )),
        None => Err(ParseError::new(line, 1, format!("expected '{word}'"))),
    }
}

impl fmt::Display for FrontCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::{trefoil, unknot, TREFOIL_TEXT, UNKNOT_TEXT};
    use proptest::prelude::*;

    fn inv(c: &FrontCode) -> (i64, i64) {
        let i = c.invariants();
        (i.tb, i.rot)
    }

    #[test]
    fn classical_invariants() {
        assert_eq!(inv(&unknot()), (-1, 0));
        let t = trefoil().invariants();
        assert_eq!((t.tb, t.rot, t.writhe, t.up, t.down), (1, 0, 3, 2, 2));
        let c = FrontCode::new(vec![Relation::cusps(3, 1)]).unwrap();
        assert_eq!(inv(&c), (-2, -1));
    }

    #[test]
    fn stabilizations() {
        let s = unknot().stabilize(StabilizationKind::Plus, 0, 1).unwrap();
        assert_eq!(s.relations()[0], Relation::cusps(1, 3));
        assert_eq!(inv(&s), (-2, 1));

        let t = trefoil()
            .stabilize(StabilizationKind::Plus, 0, 1)
            .unwrap()
            .stabilize(StabilizationKind::Minus, 0, 1)
            .unwrap();
        assert_eq!(t.relations()[0], Relation::crossing(3, 3, Sign::Positive, 2));
        assert_eq!(inv(&t), (-1, 0));

        assert_eq!(trefoil().stabilize(StabilizationKind::Minus, 2, 0).unwrap(), trefoil());
        assert!(matches!(
            trefoil().stabilize(StabilizationKind::Plus, 3, 1),
            Err(DiagramError::ArcOutOfRange { at: 4, n: 3 })
        ));
    }

    #[test]
    fn smoothing() {
        let s = trefoil().smooth();
        assert_eq!(s.generator_map, vec![0, 1, 2]);
        assert_eq!(
            s.code.relations(),
            &[
                Relation::crossing(0, 0, Sign::Positive, 2),
                Relation::crossing(0, 0, Sign::Positive, 0),
                Relation::crossing(0, 0, Sign::Positive, 1),
            ]
        );
        let u = unknot().smooth();
        assert_eq!(u.code.relations(), &[Relation::cusps(0, 0)]);
        assert_eq!(u.code.smooth().code, u.code);
    }

    #[test]
    fn smoothing_contracts_crossing_free_relations() {
        // x1 -> (cusps) -> x2 -> crossing over x4 -> x3 -> (cusps) -> x4 -> crossing over x2 -> x1
        let code = FrontCode::new(vec![
            Relation::cusps(1, 0),
            Relation::crossing(0, 0, Sign::Negative, 3),
            Relation::cusps(0, 1),
            Relation::crossing(0, 0, Sign::Positive, 1),
        ])
        .unwrap();
        let s = code.smooth();
        assert_eq!(s.generator_map, vec![0, 0, 1, 1]);
        assert_eq!(
            s.code.relations(),
            &[
                Relation::crossing(0, 0, Sign::Negative, 1),
                Relation::crossing(0, 0, Sign::Positive, 0),
            ]
        );
        // wrap-around tail
        let code = FrontCode::new(vec![
            Relation::crossing(0, 0, Sign::Positive, 1),
            Relation::cusps(1, 1),
        ])
        .unwrap();
        let s = code.smooth();
        assert_eq!(s.generator_map, vec![0, 0]);
        assert_eq!(s.code.relations(), &[Relation::crossing(0, 0, Sign::Positive, 0)]);
    }

    #[test]
    fn parse_and_serialize() {
        assert_eq!(FrontCode::parse(UNKNOT_TEXT).unwrap(), unknot());
        assert_eq!(unknot().relations(), &[Relation::cusps(1, 1)]);
        let t = FrontCode::parse(TREFOIL_TEXT).unwrap();
        assert_eq!(t.arcs(), 3);
        assert_eq!(t.serialize(), TREFOIL_TEXT);
        assert_eq!(FrontCode::parse(&t.serialize()).unwrap(), t);
    }

    #[test]
    fn parse_errors() {
        let e = FrontCode::parse("front\narcs 3\nrel 1 0 + 5\n").unwrap_err();
        assert_eq!((e.line, e.column), (3, 11));
        assert!(e.message.contains("out of range"));

        let e = FrontCode::parse("front\narcs 1\nrel 1 1 * 1\n").unwrap_err();
        assert_eq!((e.line, e.column), (3, 9));

        let e = FrontCode::parse("front\narcs 1\nrel 1 0 . -\n").unwrap_err();
        assert!(e.message.contains("odd"));

        let e = FrontCode::parse("front\narcs 2\nrel 1 1 . -\n").unwrap_err();
        assert!(e.message.contains("end of input"));

        let e = FrontCode::parse("front\narcs 1\nrel 1 1 . 1\n").unwrap_err();
        assert_eq!(e.column, 11);
    }

    fn arb_code() -> impl Strategy<Value = FrontCode> {
        (1usize..5)
            .prop_flat_map(|n| {
                prop::collection::vec((0u32..4, 0u32..4, 0u8..3, 0..n), n)
            })
            .prop_filter_map("odd cusp total", |rels| {
                let relations = rels
                    .into_iter()
                    .map(|(p, q, s, k)| match s {
                        0 => Relation::cusps(p, q),
                        1 => Relation::crossing(p, q, Sign::Positive, k),
                        _ => Relation::crossing(p, q, Sign::Negative, k),
                    })
                    .collect();
                FrontCode::new(relations).ok()
            })
    }

    proptest! {
        #[test]
        fn serialize_parse_round_trip(code in arb_code()) {
            prop_assert_eq!(FrontCode::parse(&code.serialize()).unwrap(), code);
        }

        #[test]
        fn tb_plus_rot_is_writhe_minus_up(code in arb_code()) {
            let i = code.invariants();
            prop_assert_eq!(i.tb + i.rot, i.writhe - i.up as i64);
        }

        #[test]
        fn stabilization_shifts_invariants(code in arb_code(), at in 0usize..5, n in 0u32..=10) {
            let at = at % code.arcs();
            let base = code.invariants();
            let p = code.stabilize(StabilizationKind::Plus, at, n).unwrap().invariants();
            let m = code.stabilize(StabilizationKind::Minus, at, n).unwrap().invariants();
            prop_assert_eq!((p.tb, p.rot), (base.tb - i64::from(n), base.rot + i64::from(n)));
            prop_assert_eq!((m.tb, m.rot), (base.tb - i64::from(n), base.rot - i64::from(n)));
        }

        #[test]
        fn stabilizations_commute(code in arb_code(), at in 0usize..5) {
            let at = at % code.arcs();
            let pm = code.stabilize(StabilizationKind::Plus, at, 1).unwrap()
                .stabilize(StabilizationKind::Minus, at, 1).unwrap();
            let mp = code.stabilize(StabilizationKind::Minus, at, 1).unwrap()
                .stabilize(StabilizationKind::Plus, at, 1).unwrap();
            prop_assert_eq!(pm, mp);
        }

        #[test]
        fn smoothing_is_idempotent(code in arb_code()) {
            let once = code.smooth().code;
            prop_assert_eq!(once.smooth().code, once.clone());
            prop_assert!(once.relations().iter().all(|r| r.up == 0 && r.down == 0));
        }
    }
}
