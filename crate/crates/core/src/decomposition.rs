//! Canonical decomposition of a finite GL-rack along the cycles of its
//! diagonal map `Δ(x) = x∗x`.
//!
//! The cycle supports `A_i` of `Δ` are grouped by cardinality into groups
//! `B_j`. Each group is closed under `∗`, `u` and `d`, so it is a GL-rack in its
//! own right: a *permutation* GL-rack when it holds a single support, a
//! *block* GL-rack otherwise. A block GL-rack collapses onto a GL-quandle by
//! identifying each support with a point.

use std::fmt;

use thiserror::Error;

use crate::glrack::{Check, GlRack, ValidationReport, Violation};
use crate::permutation::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompositionError {
    #[error("elements {0:?} are not a union of supports of one cycle length")]
    NotAGroup(Vec<usize>),
    #[error("subset is not closed: {check} at {witness:?}")]
    NotClosed { check: Check, witness: Vec<usize> },
    #[error("not a block GL-rack: Δ has cycle type {0:?}")]
    NotBlock(Vec<usize>),
    #[error("block structure broken at x={x}, y={y}: {reason}")]
    Inconsistent {
        x: usize,
        y: usize,
        reason: &'static str,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupKind {
    Permutation,
    Block,
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupKind::Permutation => "permutation",
            GroupKind::Block => "block",
        })
    }
}

/// A group `B_j`: all supports of one cycle length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Group {
    /// sorted elements
    pub elements: Vec<usize>,
    pub cycle_length: usize,
    /// indices into [`DeltaDecomposition::supports`]
    pub supports: Vec<usize>,
    pub kind: GroupKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaDecomposition {
    /// cycles of `Δ` in canonical order (each starts at its minimum, sorted by it)
    pub supports: Vec<Vec<usize>>,
    /// groups ordered by their smallest element
    pub groups: Vec<Group>,
}

impl DeltaDecomposition {
    pub fn support_sets(&self) -> Vec<Vec<usize>> {
        self.supports
            .iter()
            .map(|c| {
                let mut s = c.clone();
                s.sort_unstable();
                s
            })
            .collect()
    }

    /// Index of the group containing `x`.
    pub fn group_of(&self, x: usize) -> usize {
        self.groups
            .iter()
            .position(|g| g.elements.binary_search(&x).is_ok())
            .expect("groups partition the carrier")
    }
}

pub fn decompose(rack: &GlRack) -> DeltaDecomposition {
    let supports = rack.delta().cycles();
    let mut groups: Vec<Group> = Vec::new();
    for (i, cycle) in supports.iter().enumerate() {
        match groups.iter_mut().find(|g| g.cycle_length == cycle.len()) {
            Some(g) => {
                g.supports.push(i);
                g.elements.extend(cycle.iter().copied());
            }
            None => groups.push(Group {
                elements: cycle.clone(),
                cycle_length: cycle.len(),
                supports: vec![i],
                kind: GroupKind::Permutation,
            }),
        }
    }
    for g in &mut groups {
        g.elements.sort_unstable();
        g.kind = if g.supports.len() == 1 {
            GroupKind::Permutation
        } else {
            GroupKind::Block
        };
    }
    DeltaDecomposition { supports, groups }
}

/// All cycles of `Δ` share one length. Permutation GL-racks qualify, with a
/// single support.
pub fn is_block_rack(rack: &GlRack) -> bool {
    let t = rack.delta().cycle_type();
    t.iter().all(|&c| c == t[0])
}

/// A GL-rack carried by a subset, relabeled onto `{0..m}` by increasing
/// original element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subrack {
    pub rack: GlRack,
    /// `labels[i]` is the original element carried by `i`
    pub labels: Vec<usize>,
}

impl Subrack {
    pub fn original(&self, x: usize) -> usize {
        self.labels[x]
    }
}

/// Restricts `∗`, `u`, `d` to a group of the decomposition.
pub fn subrack(rack: &GlRack, elements: &[usize]) -> Result<Subrack, DecompositionError> {
    let dec = decompose(rack);
    let mut labels = elements.to_vec();
    labels.sort_unstable();
    labels.dedup();
    if !dec.groups.iter().any(|g| g.elements == labels) {
        return Err(DecompositionError::NotAGroup(labels));
    }
    restrict(rack, labels)
}

pub(crate) fn restrict(rack: &GlRack, labels: Vec<usize>) -> Result<Subrack, DecompositionError> {
    let n = rack.order();
    let m = labels.len();
    let mut index = vec![usize::MAX; n];
    for (i, &x) in labels.iter().enumerate() {
        index[x] = i;
    }
    let closed = |x: usize, check: Check, witness: Vec<usize>| {
        if index[x] == usize::MAX {
            Err(DecompositionError::NotClosed { check, witness })
        } else {
            Ok(index[x])
        }
    };
    let mut table = vec![0; m * m];
    for (i, &x) in labels.iter().enumerate() {
        for (j, &y) in labels.iter().enumerate() {
            table[i * m + j] = closed(rack.op(x, y), Check::Absorption, vec![x, y])?;
        }
    }
    let mut u = Vec::with_capacity(m);
    let mut d = Vec::with_capacity(m);
    for &x in &labels {
        u.push(closed(rack.u().apply(x), Check::UBijective, vec![x])?);
        d.push(closed(rack.d().apply(x), Check::DBijective, vec![x])?);
    }
    let u = Permutation::from_images(u).expect("restriction of a bijection to an invariant set");
    let d = Permutation::from_images(d).expect("restriction of a bijection to an invariant set");
    let sub = GlRack::from_parts(m, table, u, d);
    debug_assert!(crate::glrack::validate(&sub.rows(), sub.u().images(), sub.d().images())
        .unwrap()
        .is_valid());
    Ok(Subrack { rack: sub, labels })
}

/// Checks `B_j ∗ X = B_j` for every group: each `b ∗ x` stays in `B_j` and
/// every right translation maps `B_j` onto itself.
pub fn check_absorption(rack: &GlRack, dec: &DeltaDecomposition) -> ValidationReport {
    let n = rack.order();
    let mut violations = Vec::new();
    for g in &dec.groups {
        let mut inside = vec![false; n];
        for &b in &g.elements {
            inside[b] = true;
        }
        'group: for x in 0..n {
            let mut hit = vec![false; n];
            for &b in &g.elements {
                let z = rack.op(b, x);
                if !inside[z] {
                    violations.push(Violation {
                        check: Check::Absorption,
                        witness: vec![b, x],
                    });
                    break 'group;
                }
                hit[z] = true;
            }
            if let Some(&missing) = g.elements.iter().find(|&&b| !hit[b]) {
                violations.push(Violation {
                    check: Check::TranslationSurjective,
                    witness: vec![missing, x],
                });
                break 'group;
            }
        }
    }
    ValidationReport::from_violations(violations)
}

/// How supports of a block GL-rack act on each other: `table[i][j] = k`
/// with `A_i ∗ A_j = A_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockAction {
    pub supports: Vec<Vec<usize>>,
    pub table: Vec<Vec<usize>>,
}

pub fn block_action(rack: &GlRack) -> Result<BlockAction, DecompositionError> {
    if !is_block_rack(rack) {
        return Err(DecompositionError::NotBlock(rack.delta().cycle_type()));
    }
    let supports = rack.delta().cycles();
    let n = rack.order();
    let mut owner = vec![0; n];
    for (i, s) in supports.iter().enumerate() {
        for &x in s {
            owner[x] = i;
        }
    }
    let m = supports.len();
    let mut table = vec![vec![0; m]; m];
    for (i, ai) in supports.iter().enumerate() {
        for (j, aj) in supports.iter().enumerate() {
            // x ∗ y does not depend on y within A_j
            for &x in ai {
                let z = rack.op(x, aj[0]);
                if let Some(&y) = aj.iter().find(|&&y| rack.op(x, y) != z) {
                    return Err(DecompositionError::Inconsistent {
                        x,
                        y,
                        reason: "x ∗ y varies over y in one support",
                    });
                }
            }
            let images: Vec<usize> = ai.iter().map(|&x| rack.op(x, aj[0])).collect();
            let mut sorted = images.clone();
            sorted.sort_unstable();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(DecompositionError::Inconsistent {
                    x: ai[0],
                    y: aj[0],
                    reason: "x ↦ x ∗ y not injective on a support",
                });
            }
            let k = owner[images[0]];
            let mut target = supports[k].clone();
            target.sort_unstable();
            if sorted != target {
                return Err(DecompositionError::Inconsistent {
                    x: ai[0],
                    y: aj[0],
                    reason: "A_i ∗ A_j is not a support",
                });
            }
            if i == j && k != i {
                return Err(DecompositionError::Inconsistent {
                    x: ai[0],
                    y: aj[0],
                    reason: "A_i ∗ A_i ≠ A_i",
                });
            }
            table[i][j] = k;
        }
    }
    Ok(BlockAction { supports, table })
}

/// The GL-quandle obtained from a block GL-rack by collapsing each support
/// `A_i` to a point `a_i`. Points are numbered by increasing minimal element
/// of their support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientQuandle {
    pub base: GlRack,
    /// `projection[x] = i` when `x ∈ A_i`
    pub projection: Vec<usize>,
    pub supports: Vec<Vec<usize>>,
}

impl QuotientQuandle {
    /// The common support size `c`.
    pub fn block_size(&self) -> usize {
        self.supports[0].len()
    }

    pub fn project(&self, x: usize) -> usize {
        self.projection[x]
    }
}

pub fn quotient(rack: &GlRack) -> Result<QuotientQuandle, DecompositionError> {
    let action = block_action(rack)?;
    let m = action.supports.len();
    let mut projection = vec![0; rack.order()];
    for (i, s) in action.supports.iter().enumerate() {
        for &x in s {
            projection[x] = i;
        }
    }
    let induced = |f: &Permutation| -> Vec<usize> {
        action
            .supports
            .iter()
            .map(|s| projection[f.apply(s[0])])
            .collect()
    };
    let u = induced(rack.u());
    let d = induced(rack.d());
    let table: Vec<usize> = action.table.iter().flatten().copied().collect();
    let u = Permutation::from_images(u).expect("u permutes supports");
    let d = Permutation::from_images(d).expect("d permutes supports");
    let base = GlRack::from_parts(m, table, u, d);
    debug_assert!(crate::glrack::validate(&base.rows(), base.u().images(), base.d().images())
        .unwrap()
        .is_valid());
    assert!(base.is_gl_quandle(), "quotient of a block GL-rack is a GL-quandle");
    Ok(QuotientQuandle {
        base,
        projection,
        supports: action.supports,
    })
}

/// The permutation rack `(A_i, ∗|A_i)` on one support. This carries no
/// GL-rack structure in general: `u` and `d` need not preserve `A_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportRack {
    pub elements: Vec<usize>,
    /// `table[i][j]` indexes into `elements`
    pub table: Vec<Vec<usize>>,
}

pub fn support_rack(rack: &GlRack, support: &[usize]) -> Result<SupportRack, DecompositionError> {
    let mut elements = support.to_vec();
    elements.sort_unstable();
    let pos = |z: usize| elements.binary_search(&z).ok();
    let mut table = Vec::with_capacity(elements.len());
    for &x in &elements {
        let mut row = Vec::with_capacity(elements.len());
        for &y in &elements {
            match pos(rack.op(x, y)) {
                Some(k) => row.push(k),
                None => {
                    return Err(DecompositionError::NotClosed {
                        check: Check::Absorption,
                        witness: vec![x, y],
                    })
                }
            }
        }
        table.push(row);
    }
    Ok(SupportRack { elements, table })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples;
    use crate::glrack::{permutation_glrack, validate};

    fn one(v: &[usize]) -> Vec<usize> {
        v.iter().map(|x| x - 1).collect()
    }

    #[test]
    fn decompose_mixed6() {
        let dec = decompose(&examples::mixed6());
        assert_eq!(
            dec.support_sets(),
            vec![one(&[1]), one(&[2]), one(&[3, 5]), one(&[4, 6])]
        );
        assert_eq!(dec.groups.len(), 2);
        assert_eq!(dec.groups[0].elements, one(&[1, 2]));
        assert_eq!(dec.groups[0].cycle_length, 1);
        assert_eq!(dec.groups[0].kind, GroupKind::Block);
        assert_eq!(dec.groups[1].elements, one(&[3, 4, 5, 6]));
        assert_eq!(dec.groups[1].cycle_length, 2);
        assert_eq!(dec.groups[1].kind, GroupKind::Block);
    }

    #[test]
    fn decompose_block6_and_permutation3() {
        let dec = decompose(&examples::block6());
        assert_eq!(
            dec.support_sets(),
            vec![one(&[1, 2]), one(&[3, 5]), one(&[4, 6])]
        );
        assert_eq!(dec.groups.len(), 1);
        assert_eq!(dec.groups[0].elements, (0..6).collect::<Vec<_>>());
        assert_eq!(dec.groups[0].kind, GroupKind::Block);

        let dec = decompose(&examples::permutation3());
        assert_eq!(dec.supports, vec![vec![0, 1, 2]]);
        assert_eq!(dec.groups[0].cycle_length, 3);
        assert_eq!(dec.groups[0].kind, GroupKind::Permutation);
    }

    #[test]
    fn single_point_quandle_is_a_permutation_group() {
        let r = permutation_glrack(&Permutation::identity(1), &Permutation::identity(1)).unwrap();
        assert_eq!(decompose(&r).groups[0].kind, GroupKind::Permutation);
        let r = permutation_glrack(&Permutation::identity(3), &Permutation::identity(3)).unwrap();
        let dec = decompose(&r);
        assert_eq!(dec.groups.len(), 1);
        assert_eq!(dec.groups[0].kind, GroupKind::Block);
    }

    #[test]
    fn subracks_of_mixed6() {
        let r = examples::mixed6();
        let b1 = subrack(&r, &one(&[1, 2])).unwrap();
        assert_eq!(b1.rack.rows(), vec![vec![0, 0], vec![1, 1]]);
        assert!(b1.rack.u().is_identity() && b1.rack.d().is_identity());
        assert_eq!(b1.labels, vec![0, 1]);

        let b2 = subrack(&r, &one(&[3, 4, 5, 6])).unwrap();
        assert_eq!(b2.labels, one(&[3, 4, 5, 6]));
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(b2.labels[b2.rack.op(i, j)], r.op(b2.labels[i], b2.labels[j]));
            }
        }
        let s = &b2.rack;
        assert!(validate(&s.rows(), s.u().images(), s.d().images()).unwrap().is_valid());

        let whole = subrack(&examples::block6(), &(0..6).collect::<Vec<_>>()).unwrap();
        assert_eq!(whole.rack, examples::block6());

        assert!(matches!(
            subrack(&r, &one(&[1, 3])),
            Err(DecompositionError::NotAGroup(_))
        ));
    }

    #[test]
    fn absorption_holds_on_examples() {
        for r in [examples::mixed6(), examples::block6(), examples::block6_quotient()] {
            assert!(check_absorption(&r, &decompose(&r)).is_valid());
        }
    }

    #[test]
    fn block_action_of_block6() {
        let action = block_action(&examples::block6()).unwrap();
        for i in 0..3 {
            assert_eq!(action.table[i][i], i);
        }
        // 3 ∗ 1 = 4 ∈ A_3, 4 ∗ 1 = 5 ∈ A_2
        assert_eq!(action.table[1][0], 2);
        assert_eq!(action.table[2][0], 1);
        assert_eq!(action.table[0], vec![0, 0, 0]);
    }

    #[test]
    fn block_action_on_subrack_and_full_cycle() {
        let b2 = subrack(&examples::mixed6(), &one(&[3, 4, 5, 6])).unwrap();
        let action = block_action(&b2.rack).unwrap();
        assert_eq!(action.table.len(), 2);
        assert_eq!(action.table[0][0], 0);
        assert_eq!(action.table[1][1], 1);

        let action = block_action(&examples::permutation3()).unwrap();
        assert_eq!(action.table, vec![vec![0]]);

        assert!(matches!(
            block_action(&examples::mixed6()),
            Err(DecompositionError::NotBlock(_))
        ));
    }

    #[test]
    fn quotient_of_block6_matches_worked_table() {
        let q = quotient(&examples::block6()).unwrap();
        assert_eq!(q.base, examples::block6_quotient());
        assert!(q.base.u().is_identity() && q.base.d().is_identity());
        assert_eq!(q.block_size(), 2);
        assert_eq!(q.projection, vec![0, 0, 1, 2, 1, 2]);
    }

    #[test]
    fn quotients_of_mixed6_blocks() {
        let r = examples::mixed6();
        let b1 = subrack(&r, &one(&[1, 2])).unwrap();
        let q1 = quotient(&b1.rack).unwrap();
        assert_eq!(q1.base, b1.rack);
        assert_eq!(q1.projection, vec![0, 1]);

        let b2 = subrack(&r, &one(&[3, 4, 5, 6])).unwrap();
        let q2 = quotient(&b2.rack).unwrap();
        assert_eq!(q2.base.order(), 2);
        assert!(q2.base.is_gl_quandle());
        let s = &q2.base;
        assert!(validate(&s.rows(), s.u().images(), s.d().images()).unwrap().is_valid());
        // projection is a homomorphism
        for x in 0..4 {
            assert_eq!(q2.project(b2.rack.u().apply(x)), q2.base.u().apply(q2.project(x)));
            assert_eq!(q2.project(b2.rack.d().apply(x)), q2.base.d().apply(q2.project(x)));
            for y in 0..4 {
                assert_eq!(
                    q2.project(b2.rack.op(x, y)),
                    q2.base.op(q2.project(x), q2.project(y))
                );
            }
        }
        assert!(matches!(quotient(&r), Err(DecompositionError::NotBlock(_))));
    }

    #[test]
    fn support_racks_are_permutation_racks() {
        let r = examples::block6();
        let s = support_rack(&r, &[2, 4]).unwrap();
        assert_eq!(s.elements, vec![2, 4]);
        for row in &s.table {
            assert!(row.iter().all(|&v| v == row[0]));
        }
        assert!(support_rack(&examples::mixed6(), &[0, 2]).is_err());
    }
}
