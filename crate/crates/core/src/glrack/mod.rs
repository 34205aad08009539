//! Finite GL-racks: a rack `(X, ∗)` with two maps `u`, `d` satisfying
//!
//! * `ud(x∗x) = du(x∗x) = x`
//! * `u(x∗y) = u(x)∗y` and `d(x∗y) = d(x)∗y`
//! * `x∗u(y) = x∗d(y) = x∗y`
//!
//! Tables are row = left operand, column = right operand. Elements are
//! 0-based in the API and 1-based in every text form.

mod iso;
pub mod text;
mod validate;

use thiserror::Error;

use crate::permutation::{Permutation, PermutationError};

pub use iso::{are_isomorphic, ISOMORPHISM_ORDER_CAP};
pub use validate::{validate, Check, InputError, ValidationReport, Violation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RackError {
    #[error(transparent)]
    Input(#[from] InputError),
    #[error("axioms violated: {0}")]
    Invalid(ValidationReport),
    #[error("u and sigma do not commute at element {element} (GL2 fails for a permutation rack)")]
    NotCommuting { element: usize },
    #[error("precondition for deriving d fails: {check} at {witness:?}")]
    DerivePrecondition { check: Check, witness: Vec<usize> },
    #[error("order {n} exceeds the isomorphism search cap of {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error(transparent)]
    Permutation(#[from] PermutationError),
}

/// A validated finite GL-rack.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GlRack {
    n: usize,
    table: Vec<usize>,
    // inverse[b * n + a] = the unique c with c ∗ b = a
    inverse: Vec<usize>,
    u: Permutation,
    d: Permutation,
}

impl GlRack {
    /// Validates `(table, u, d)` against every axiom and builds the rack.
    pub fn new(table: Vec<Vec<usize>>, u: Permutation, d: Permutation) -> Result<Self, RackError> {
        let report = validate(&table, u.images(), d.images())?;
        if !report.is_valid() {
            return Err(RackError::Invalid(report));
        }
        Ok(Self::from_parts(
            table.len(),
            table.into_iter().flatten().collect(),
            u,
            d,
        ))
    }

    /// Same as [`GlRack::new`] with 1-based rows and image lists, i.e. the
    /// layout of a printed operation table.
    pub fn from_one_based(
        rows: &[&[usize]],
        u: &[usize],
        d: &[usize],
    ) -> Result<Self, RackError> {
        let n = rows.len();
        let table = rows
            .iter()
            .enumerate()
            .map(|(x, row)| {
                row.iter()
                    .enumerate()
                    .map(|(y, &v)| {
                        if v == 0 || v > n {
                            Err(InputError::OutOfRange {
                                row: x + 1,
                                column: y + 1,
                                value: v,
                                n,
                            })
                        } else {
                            Ok(v - 1)
                        }
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let u = Permutation::from_one_based(u)?;
        let d = Permutation::from_one_based(d)?;
        Self::new(table, u, d)
    }

    /// Builds without validation. Callers must have established the axioms.
    pub(crate) fn from_parts(n: usize, table: Vec<usize>, u: Permutation, d: Permutation) -> Self {
        let mut inverse = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                inverse[y * n + table[x * n + y]] = x;
            }
        }
        Self {
            n,
            table,
            inverse,
            u,
            d,
        }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    /// `x ∗ y`
    #[inline]
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.table[x * self.n + y]
    }

    /// The unique `c` with `c ∗ b = a`.
    #[inline]
    pub fn star_inverse(&self, a: usize, b: usize) -> usize {
        self.inverse[b * self.n + a]
    }

    pub fn u(&self) -> &Permutation {
        &self.u
    }

    pub fn d(&self) -> &Permutation {
        &self.d
    }

    pub fn row(&self, x: usize) -> &[usize] {
        &self.table[x * self.n..(x + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|x| self.row(x).to_vec()).collect()
    }

    /// Row-major flattened table.
    pub fn flat_table(&self) -> &[usize] {
        &self.table
    }

    /// The right translation `x ↦ x ∗ y` as a permutation.
    pub fn right_translation(&self, y: usize) -> Permutation {
        Permutation::from_images((0..self.n).map(|x| self.op(x, y)).collect())
            .expect("right translations of a rack are bijective")
    }

    /// The diagonal map `Δ(x) = x ∗ x`, which equals `(ud)^{-1}`.
    pub fn delta(&self) -> Permutation {
        let delta = Permutation::from_images((0..self.n).map(|x| self.op(x, x)).collect())
            .expect("diagonal of a GL-rack is bijective");
        debug_assert_eq!(delta, self.u.compose_unchecked(&self.d).inverse());
        delta
    }

    pub fn is_quandle(&self) -> bool {
        (0..self.n).all(|x| self.op(x, x) == x)
    }

    /// A quandle whose `u` and `d` are mutually inverse. In a valid GL-rack the
    /// second condition follows from the first; both are checked.
    pub fn is_gl_quandle(&self) -> bool {
        let quandle = self.is_quandle();
        if quandle {
            assert!(
                self.u.compose_unchecked(&self.d).is_identity()
                    && self.d.compose_unchecked(&self.u).is_identity(),
                "GL-quandle with ud != id"
            );
        }
        quandle
    }

    /// True when `x ∗ y` does not depend on `y`, i.e. `x ∗ y = σ(x)`.
    pub fn is_permutation_rack(&self) -> bool {
        (0..self.n).all(|x| self.row(x).iter().all(|&v| v == self.op(x, 0)))
    }

    /// Is `f` a rack automorphism of `(X, ∗)`?
    pub fn is_automorphism(&self, f: &Permutation) -> bool {
        f.len() == self.n
            && (0..self.n).all(|x| {
                (0..self.n).all(|y| f.apply(self.op(x, y)) == self.op(f.apply(x), f.apply(y)))
            })
    }

    /// The isomorphic rack obtained by renaming every element `x` to `h(x)`.
    pub fn relabel(&self, h: &Permutation) -> GlRack {
        assert_eq!(h.len(), self.n, "relabeling size mismatch");
        let n = self.n;
        let mut table = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                table[h.apply(x) * n + h.apply(y)] = h.apply(self.op(x, y));
            }
        }
        let hinv = h.inverse();
        let u = h.compose_unchecked(&self.u).compose_unchecked(&hinv);
        let d = h.compose_unchecked(&self.d).compose_unchecked(&hinv);
        GlRack::from_parts(n, table, u, d)
    }
}

impl std::fmt::Debug for GlRack {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GlRack")
            .field("rows", &text::one_based_rows(self))
            .field("u", &self.u)
            .field("d", &self.d)
            .finish()
    }
}

/// The permutation GL-rack `x ∗ y = σ(x)` with the given `u` and
/// `d = u^{-1} σ^{-1}`.
pub fn permutation_glrack(sigma: &Permutation, u: &Permutation) -> Result<GlRack, RackError> {
    if sigma.len() != u.len() {
        return Err(PermutationError::SizeMismatch {
            left: sigma.len(),
            right: u.len(),
        }
        .into());
    }
    if let Some(x) = (0..sigma.len()).find(|&x| u.apply(sigma.apply(x)) != sigma.apply(u.apply(x))) {
        return Err(RackError::NotCommuting { element: x });
    }
    let n = sigma.len();
    let table = (0..n)
        .flat_map(|x| std::iter::repeat_n(sigma.apply(x), n))
        .collect();
    let d = u.inverse().compose_unchecked(&sigma.inverse());
    let rack = GlRack::from_parts(n, table, u.clone(), d);
    debug_assert!(validate(&rack.rows(), rack.u.images(), rack.d.images())
        .map(|r| r.is_valid())
        .unwrap_or(false));
    Ok(rack)
}

/// Recovers `d` from a rack and `u` via `d(x) = u^{-1}(x) ∗^{-1} u^{-1}(x)`.
///
/// Requires `(X, ∗)` to be a rack and `u` a bijection with
/// `u(x∗y) = u(x)∗y`. The resulting triple is checked against every axiom.
pub fn derive_d(table: &[Vec<usize>], u: &Permutation) -> Result<Permutation, RackError> {
    let n = validate::check_shape(table)?;
    if u.len() != n {
        return Err(PermutationError::SizeMismatch {
            left: n,
            right: u.len(),
        }
        .into());
    }
    if let Some(violation) = validate::rack_violations(table).into_iter().next() {
        return Err(RackError::DerivePrecondition {
            check: violation.check,
            witness: violation.witness,
        });
    }
    for (x, row) in table.iter().enumerate() {
        for (y, &xy) in row.iter().enumerate() {
            if u.apply(xy) != table[u.apply(x)][y] {
                return Err(RackError::DerivePrecondition {
                    check: Check::Gl2,
                    witness: vec![x, y],
                });
            }
        }
    }
    let uinv = u.inverse();
    let images: Vec<usize> = (0..n)
        .map(|x| {
            let b = uinv.apply(x);
            (0..n)
                .find(|&c| table[c][b] == b)
                .expect("right translation is bijective")
        })
        .collect();
    let d = Permutation::from_images(images).map_err(|_| RackError::DerivePrecondition {
        check: Check::DBijective,
        witness: vec![],
    })?;
    let report = validate(table, u.images(), d.images())?;
    if !report.is_valid() {
        return Err(RackError::Invalid(report));
    }
    Ok(d)
}
