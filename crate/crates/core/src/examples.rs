//! The worked GL-racks and knot presentations used throughout the tests.

use crate::diagram::FrontCode;
use crate::glrack::GlRack;

/// Permutation GL-rack on `{1,2,3}` with `σ = (1 2 3)`, `u = id`, `d = (1 3 2)`.
pub const PERMUTATION3_ROWS: [[usize; 3]; 3] = [[2, 2, 2], [3, 3, 3], [1, 1, 1]];

/// Block GL-rack with `u = (1 2)(3 5)(4 6)`, `d = id`, `Δ = (1 2)(3 5)(4 6)`.
pub const BLOCK6_ROWS: [[usize; 6]; 6] = [
    [2, 2, 2, 2, 2, 2],
    [1, 1, 1, 1, 1, 1],
    [4, 4, 5, 5, 5, 5],
    [5, 5, 6, 6, 6, 6],
    [6, 6, 3, 3, 3, 3],
    [3, 3, 4, 4, 4, 4],
];

/// GL-rack with `u = (3 5)(4 6)`, `d = id`, `Δ = (3 5)(4 6)`, splitting into
/// two block GL-racks on `{1,2}` and `{3,4,5,6}`.
pub const MIXED6_ROWS: [[usize; 6]; 6] = [
    [1, 1, 2, 2, 2, 2],
    [2, 2, 1, 1, 1, 1],
    [4, 4, 5, 5, 5, 5],
    [5, 5, 6, 6, 6, 6],
    [6, 6, 3, 3, 3, 3],
    [3, 3, 4, 4, 4, 4],
];

/// The 3-element GL-quandle obtained by collapsing the supports
/// `{1,2}, {3,5}, {4,6}` of the 6-element block rack.
pub const BLOCK6_QUOTIENT_ROWS: [[usize; 3]; 3] = [[1, 1, 1], [3, 2, 2], [2, 3, 3]];

fn build<const N: usize>(rows: &[[usize; N]; N], u: &[usize], d: &[usize]) -> GlRack {
    let rows: Vec<&[usize]> = rows.iter().map(|r| r.as_slice()).collect();
    GlRack::from_one_based(&rows, u, d).expect("worked example is a GL-rack")
}

pub fn permutation3() -> GlRack {
    build(&PERMUTATION3_ROWS, &[1, 2, 3], &[3, 1, 2])
}

pub fn block6() -> GlRack {
    build(&BLOCK6_ROWS, &[2, 1, 5, 6, 3, 4], &[1, 2, 3, 4, 5, 6])
}

pub fn mixed6() -> GlRack {
    build(&MIXED6_ROWS, &[1, 2, 5, 6, 3, 4], &[1, 2, 3, 4, 5, 6])
}

pub fn block6_quotient() -> GlRack {
    build(&BLOCK6_QUOTIENT_ROWS, &[1, 2, 3], &[1, 2, 3])
}

/// Front code of the Legendrian unknot with one up and one down cusp:
/// the single relation `ud(x_1) = x_1`.
pub fn unknot() -> FrontCode {
    FrontCode::parse("front\narcs 1\nrel 1 1 . -\n").expect("unknot code")
}

/// Front code of the reference Legendrian trefoil:
/// `ud(x_1) ∗ x_3 = x_2`, `x_2 ∗ x_1 = x_3`, `ud(x_3) ∗ x_2 = x_1`.
pub fn trefoil() -> FrontCode {
    FrontCode::parse(TREFOIL_TEXT).expect("trefoil code")
}

pub const TREFOIL_TEXT: &str = "front\narcs 3\nrel 1 1 + 3\nrel 0 0 + 1\nrel 1 1 + 2\n";
pub const UNKNOT_TEXT: &str = "front\narcs 1\nrel 1 1 . -\n";
