use std::fmt;

use thiserror::Error;

/// Structural problems with a candidate table; these are not axiom violations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InputError {
    #[error("empty table")]
    Empty,
    #[error("row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },
    #[error("entry {value} at row {row}, column {column} is out of range 1..={n}")]
    OutOfRange {
        row: usize,
        column: usize,
        value: usize,
        n: usize,
    },
    #[error("{map} has {len} images, expected {n}")]
    MapLength { map: char, len: usize, n: usize },
    #[error("{map} image {value} at position {position} is out of range 1..={n}")]
    MapOutOfRange {
        map: char,
        position: usize,
        value: usize,
        n: usize,
    },
}

/// The individual conditions checked by [`validate`] and by the absorption
/// check of the decomposition module.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Check {
    UBijective,
    DBijective,
    /// right translations are bijective
    R1,
    /// right self-distributivity
    R2,
    /// `ud(x∗x) = du(x∗x) = x`
    Gl1,
    /// `u(x∗y) = u(x)∗y`, `d(x∗y) = d(x)∗y`
    Gl2,
    /// `x∗u(y) = x∗d(y) = x∗y`
    Gl3,
    /// `b ∗ x ∈ B_j` for `b ∈ B_j`
    Absorption,
    /// `b ↦ b ∗ x` maps `B_j` onto `B_j`
    TranslationSurjective,
}

impl Check {
    pub fn id(self) -> &'static str {
        match self {
            Check::UBijective => "u-bijective",
            Check::DBijective => "d-bijective",
            Check::R1 => "R1",
            Check::R2 => "R2",
            Check::Gl1 => "GL1",
            Check::Gl2 => "GL2",
            Check::Gl3 => "GL3",
            Check::Absorption => "absorption",
            Check::TranslationSurjective => "translation-surjective",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// A failed check with the 0-based elements that witness it.
///
/// Witness layouts:
/// * `UBijective`/`DBijective`: `[a, b]` with equal images
/// * `R1`: `[x1, x2, y]` with `x1 ∗ y = x2 ∗ y`
/// * `R2`: `[x, y, z]`
/// * `Gl1`: `[x]`
/// * `Gl2`, `Gl3`: `[x, y]`
/// * `Absorption`, `TranslationSurjective`: `[b, x]` resp. `[missing, x]`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub check: Check,
    pub witness: Vec<usize>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w: Vec<String> = self.witness.iter().map(|x| (x + 1).to_string()).collect();
        write!(f, "{} at ({})", self.check, w.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn from_violations(violations: Vec<Violation>) -> Self {
        Self { violations }
    }

    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }

    pub fn violates(&self, check: Check) -> bool {
        self.violations.iter().any(|v| v.check == check)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return f.write_str("valid");
        }
        let parts: Vec<String> = self.violations.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join("; "))
    }
}

pub(crate) fn check_shape(table: &[Vec<usize>]) -> Result<usize, InputError> {
    let n = table.len();
    if n == 0 {
        return Err(InputError::Empty);
    }
    for (x, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(InputError::NotSquare {
                row: x + 1,
                len: row.len(),
                n,
            });
        }
        for (y, &v) in row.iter().enumerate() {
            if v >= n {
                return Err(InputError::OutOfRange {
                    row: x + 1,
                    column: y + 1,
                    value: v + 1,
                    n,
                });
            }
        }
    }
    Ok(n)
}

fn check_map(map: char, images: &[usize], n: usize) -> Result<(), InputError> {
    if images.len() != n {
        return Err(InputError::MapLength {
            map,
            len: images.len(),
            n,
        });
    }
    if let Some((i, &v)) = images.iter().enumerate().find(|(_, &v)| v >= n) {
        return Err(InputError::MapOutOfRange {
            map,
            position: i + 1,
            value: v + 1,
            n,
        });
    }
    Ok(())
}

fn bijectivity_witness(images: &[usize]) -> Option<Vec<usize>> {
    let mut first = vec![None; images.len()];
    for (a, &v) in images.iter().enumerate() {
        match first[v] {
            Some(b) => return Some(vec![b, a]),
            None => first[v] = Some(a),
        }
    }
    None
}

/// First R1 and R2 witnesses, if any.
pub(crate) fn rack_violations(table: &[Vec<usize>]) -> Vec<Violation> {
    let n = table.len();
    let mut out = Vec::new();
    'r1: for y in 0..n {
        let mut first = vec![None; n];
        for (x, row) in table.iter().enumerate() {
            let z = row[y];
            if let Some(x1) = first[z] {
                out.push(Violation {
                    check: Check::R1,
                    witness: vec![x1, x, y],
                });
                break 'r1;
            }
            first[z] = Some(x);
        }
    }
    'r2: for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let lhs = table[table[x][y]][z];
                let rhs = table[table[x][z]][table[y][z]];
                if lhs != rhs {
                    out.push(Violation {
                        check: Check::R2,
                        witness: vec![x, y, z],
                    });
                    break 'r2;
                }
            }
        }
    }
    out
}

/// Checks a candidate `(table, u, d)` exhaustively against the rack and
/// GL-rack axioms plus bijectivity of `u` and `d`. Reports the first witness
/// for each violated condition. Inputs are 0-based.
pub fn validate(table: &[Vec<usize>], u: &[usize], d: &[usize]) -> Result<ValidationReport, InputError> {
    let n = check_shape(table)?;
    check_map('u', u, n)?;
    check_map('d', d, n)?;

    let mut violations = Vec::new();
    if let Some(w) = bijectivity_witness(u) {
        violations.push(Violation {
            check: Check::UBijective,
            witness: w,
        });
    }
    if let Some(w) = bijectivity_witness(d) {
        violations.push(Violation {
            check: Check::DBijective,
            witness: w,
        });
    }
    violations.extend(rack_violations(table));

    if let Some(x) = (0..n).find(|&x| {
        let s = table[x][x];
        u[d[s]] != x || d[u[s]] != x
    }) {
        violations.push(Violation {
            check: Check::Gl1,
            witness: vec![x],
        });
    }

    let pairs = || (0..n).flat_map(move |x| (0..n).map(move |y| (x, y)));
    if let Some((x, y)) = pairs().find(|&(x, y)| {
        let s = table[x][y];
        u[s] != table[u[x]][y] || d[s] != table[d[x]][y]
    }) {
        violations.push(Violation {
            check: Check::Gl2,
            witness: vec![x, y],
        });
    }
    if let Some((x, y)) = pairs().find(|&(x, y)| {
        let s = table[x][y];
        table[x][u[y]] != s || table[x][d[y]] != s
    }) {
        violations.push(Violation {
            check: Check::Gl3,
            witness: vec![x, y],
        });
    }
    Ok(ValidationReport { violations })
}
