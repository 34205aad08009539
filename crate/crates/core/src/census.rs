//! Exhaustive enumeration of racks and GL-racks of small order.
//!
//! Racks are generated column by column. Each right translation `σ_y` is a
//! permutation, and self-distributivity is exactly
//! `σ_z σ_y σ_z⁻¹ = σ_{σ_z(y)}`, so choosing a few columns forces many others.
//! GL-racks are racks paired with every compatible `u`, with `d` derived
//! from `(∗, u)`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use thiserror::Error;

use crate::decomposition::{self, GroupKind};
use crate::glrack::{self, derive_d, text, GlRack, ISOMORPHISM_ORDER_CAP};
use crate::permutation::Permutation;

/// Largest order the enumerators accept.
pub const CENSUS_ORDER_CAP: usize = 5;

/// Largest order the naive triple enumerator accepts.
pub const NAIVE_ORDER_CAP: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error("order {n} exceeds the census cap of {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("order must be at least 1")]
    Empty,
}

fn check_order(n: usize, cap: usize) -> Result<(), CensusError> {
    if n == 0 {
        Err(CensusError::Empty)
    } else if n > cap {
        Err(CensusError::TooLarge { n, cap })
    } else {
        Ok(())
    }
}

/// All permutations of `0..n` in lexicographic order of their images.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    fn go(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
        if cur.len() == n {
            out.push(Permutation::from_images(cur.clone()).expect("built as a bijection"));
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                go(n, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(n, &mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}

struct RackSearch<'p> {
    n: usize,
    perms: &'p [Permutation],
    cols: Vec<Option<Permutation>>,
    trail: Vec<usize>,
    out: Vec<Vec<Vec<usize>>>,
}

impl RackSearch<'_> {
    fn assign(&mut self, y: usize, p: Permutation) -> bool {
        match &self.cols[y] {
            Some(q) => *q == p,
            None => {
                self.cols[y] = Some(p);
                self.trail.push(y);
                true
            }
        }
    }

    /// Forces `σ_{σ_z(y)} = σ_z σ_y σ_z⁻¹` over assigned pairs until stable.
    fn propagate(&mut self) -> bool {
        loop {
            let mut changed = false;
            for z in 0..self.n {
                for y in 0..self.n {
                    let (Some(sz), Some(sy)) = (&self.cols[z], &self.cols[y]) else {
                        continue;
                    };
                    let target = sz.apply(y);
                    let forced = sz
                        .compose_unchecked(sy)
                        .compose_unchecked(&sz.inverse());
                    if self.cols[target].is_none() {
                        changed = true;
                    }
                    if !self.assign(target, forced) {
                        return false;
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn run(&mut self) {
        if !self.propagate() {
            return;
        }
        let Some(y) = self.cols.iter().position(Option::is_none) else {
            let n = self.n;
            let table = (0..n)
                .map(|x| (0..n).map(|y| self.cols[y].as_ref().unwrap().apply(x)).collect())
                .collect();
            self.out.push(table);
            return;
        };
        for p in self.perms {
            let mark = self.trail.len();
            self.assign(y, p.clone());
            self.run();
            while self.trail.len() > mark {
                let c = self.trail.pop().unwrap();
                self.cols[c] = None;
            }
        }
    }
}

/// Every rack table of order `n` (rows = left operand), sorted
/// lexicographically in row-major order.
pub fn enumerate_racks(n: usize) -> Result<Vec<Vec<Vec<usize>>>, CensusError> {
    check_order(n, CENSUS_ORDER_CAP)?;
    let perms = all_permutations(n);
    let mut search = RackSearch {
        n,
        perms: &perms,
        cols: vec![None; n],
        trail: Vec::new(),
        out: Vec::new(),
    };
    search.run();
    let mut out = search.out;
    out.sort();
    Ok(out)
}

/// One GL-rack of the census with precomputed tags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusEntry {
    pub rack: GlRack,
    pub is_quandle: bool,
    pub is_gl_quandle: bool,
    pub is_permutation: bool,
    pub is_block: bool,
    pub delta_cycle_type: Vec<usize>,
    /// `(cycle length, kind, number of elements)` for each group `B_j`
    pub groups: Vec<(usize, GroupKind, usize)>,
}

impl CensusEntry {
    pub fn new(rack: GlRack) -> Self {
        let dec = decomposition::decompose(&rack);
        Self {
            is_quandle: rack.is_quandle(),
            is_gl_quandle: rack.is_gl_quandle(),
            is_permutation: rack.is_permutation_rack(),
            is_block: dec.groups.len() == 1,
            delta_cycle_type: rack.delta().cycle_type(),
            groups: dec
                .groups
                .iter()
                .map(|g| (g.cycle_length, g.kind, g.elements.len()))
                .collect(),
            rack,
        }
    }

    /// Block size `c` when this is a block GL-rack.
    pub fn block_size(&self) -> Option<usize> {
        self.is_block.then(|| self.groups[0].0)
    }

    pub fn classification(&self) -> String {
        let parts: Vec<String> = self
            .groups
            .iter()
            .map(|(c, k, m)| format!("{k}(c={c}, {m} elements)"))
            .collect();
        parts.join(" + ")
    }
}

/// `u` is compatible with the rack when it commutes with every right
/// translation and is a rack automorphism.
fn compatible_u(table: &[Vec<usize>], u: &Permutation) -> bool {
    let n = table.len();
    (0..n).all(|x| {
        (0..n).all(|y| {
            let uxy = u.apply(table[x][y]);
            uxy == table[u.apply(x)][y] && uxy == table[u.apply(x)][u.apply(y)]
        })
    })
}

/// GL-racks over one rack table, in order of `u`.
pub fn glracks_over(table: &[Vec<usize>]) -> Vec<CensusEntry> {
    let n = table.len();
    let flat: Vec<usize> = table.iter().flatten().copied().collect();
    all_permutations(n)
        .into_iter()
        .filter(|u| compatible_u(table, u))
        .filter_map(|u| {
            let d = derive_d(table, &u).ok()?;
            Some(CensusEntry::new(GlRack::from_parts(n, flat.clone(), u, d)))
        })
        .collect()
}

/// Every GL-rack of order `n`, ordered by (table, u).
pub fn enumerate_glracks(n: usize) -> Result<Vec<CensusEntry>, CensusError> {
    let racks = enumerate_racks(n)?;
    Ok(racks
        .par_iter()
        .map(|t| glracks_over(t))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect())
}

/// Oracle enumerator: every `(table, u, d)` passing the full axiom check,
/// found by scanning all `n^(n²)` tables and all pairs of bijections.
pub fn enumerate_glracks_naive(n: usize) -> Result<Vec<GlRack>, CensusError> {
    check_order(n, NAIVE_ORDER_CAP)?;
    let perms = all_permutations(n);
    let cells = n * n;
    let total = n.pow(cells as u32);
    let found: Vec<Vec<GlRack>> = (0..total)
        .into_par_iter()
        .map(|code| {
            let mut flat = vec![0; cells];
            let mut c = code;
            for cell in flat.iter_mut().rev() {
                *cell = c % n;
                c /= n;
            }
            let table: Vec<Vec<usize>> = flat.chunks(n).map(<[usize]>::to_vec).collect();
            let mut out = Vec::new();
            for u in &perms {
                for d in &perms {
                    let ok = glrack::validate(&table, u.images(), d.images())
                        .map(|r| r.is_valid())
                        .unwrap_or(false);
                    if ok {
                        out.push(GlRack::from_parts(n, flat.clone(), u.clone(), d.clone()));
                    }
                }
            }
            out
        })
        .collect();
    Ok(found.into_iter().flatten().collect())
}

fn canonical_key(rack: &GlRack, relabelings: &[Permutation]) -> (Vec<usize>, Vec<usize>, Permutation) {
    relabelings
        .iter()
        .map(|h| {
            let r = rack.relabel(h);
            (r.flat_table().to_vec(), r.u().images().to_vec(), h.clone())
        })
        .min()
        .expect("at least the identity relabeling")
}

/// An isomorphism class: its canonical representative and how many census
/// entries fall into it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoClass {
    pub representative: CensusEntry,
    pub count: usize,
}

/// Groups entries into isomorphism classes. The representative of each
/// class is its lexicographically minimal relabeling by (table, u); classes
/// come out sorted by that key.
pub fn dedupe(entries: &[CensusEntry]) -> Result<Vec<IsoClass>, CensusError> {
    let Some(first) = entries.first() else {
        return Ok(Vec::new());
    };
    let n = first.rack.order();
    check_order(n, ISOMORPHISM_ORDER_CAP)?;
    let relabelings = all_permutations(n);
    let keyed: Vec<_> = entries
        .par_iter()
        .map(|e| {
            assert_eq!(e.rack.order(), n, "dedupe expects entries of one order");
            canonical_key(&e.rack, &relabelings)
        })
        .collect();
    let mut classes: BTreeMap<(Vec<usize>, Vec<usize>), (GlRack, usize)> = BTreeMap::new();
    for (e, (table, u, h)) in entries.iter().zip(keyed) {
        classes
            .entry((table, u))
            .or_insert_with(|| (e.rack.relabel(&h), 0))
            .1 += 1;
    }
    Ok(classes
        .into_values()
        .map(|(rack, count)| IsoClass {
            representative: CensusEntry::new(rack),
            count,
        })
        .collect())
}

/// The census of one order.
#[derive(Debug, Clone)]
pub struct Census {
    pub order: usize,
    pub rack_count: usize,
    pub entries: Vec<CensusEntry>,
    pub classes: Vec<IsoClass>,
}

impl Census {
    pub fn build(n: usize) -> Result<Self, CensusError> {
        let rack_count = enumerate_racks(n)?.len();
        let entries = enumerate_glracks(n)?;
        let classes = dedupe(&entries)?;
        Ok(Self {
            order: n,
            rack_count,
            entries,
            classes,
        })
    }

    pub fn summary(&self) -> String {
        format!(
            "order {}: {} racks, {} gl-racks, {} classes",
            self.order,
            self.rack_count,
            self.entries.len(),
            self.classes.len()
        )
    }

    /// Records in the GL-rack text format separated by `---`, then the
    /// summary line. With `up_to_iso` only class representatives are listed.
    pub fn dump(&self, up_to_iso: bool) -> String {
        let racks: Vec<&GlRack> = if up_to_iso {
            self.classes.iter().map(|c| &c.representative.rack).collect()
        } else {
            self.entries.iter().map(|e| &e.rack).collect()
        };
        let mut s = String::new();
        for r in racks {
            s.push_str(&text::serialize(r));
            let _ = writeln!(s, "{}", text::SEPARATOR);
        }
        let _ = writeln!(s, "{}", self.summary());
        s
    }
}

/// All GL-racks of orders `1..=n`, concatenated in order.
pub fn census_up_to(n: usize) -> Result<Vec<CensusEntry>, CensusError> {
    let mut out = Vec::new();
    for k in 1..=n {
        out.extend(enumerate_glracks(k)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples;
    use crate::glrack::are_isomorphic;

    fn is_rack(t: &[Vec<usize>]) -> bool {
        let n = t.len();
        let columns_bijective = (0..n).all(|y| {
            let mut seen = vec![false; n];
            (0..n).all(|x| !std::mem::replace(&mut seen[t[x][y]], true))
        });
        columns_bijective
            && (0..n).all(|x| {
                (0..n).all(|y| (0..n).all(|z| t[t[x][y]][z] == t[t[x][z]][t[y][z]]))
            })
    }

    #[test]
    fn small_rack_counts_match_brute_force() {
        assert_eq!(enumerate_racks(1).unwrap().len(), 1);
        assert_eq!(enumerate_racks(2).unwrap().len(), 2);
        // independent count: filter every table by the rack axioms
        for n in 1..=3usize {
            let cells = n * n;
            let mut count = 0;
            for code in 0..n.pow(cells as u32) {
                let mut c = code;
                let mut t = vec![vec![0; n]; n];
                for cell in (0..cells).rev() {
                    t[cell / n][cell % n] = c % n;
                    c /= n;
                }
                if is_rack(&t) {
                    count += 1;
                }
            }
            assert_eq!(enumerate_racks(n).unwrap().len(), count, "order {n}");
        }
    }

    #[test]
    fn racks_are_sorted_and_valid() {
        let racks = enumerate_racks(4).unwrap();
        assert!(racks.windows(2).all(|w| w[0] < w[1]));
        for t in &racks {
            assert!(is_rack(t));
        }
        let perm3: Vec<Vec<usize>> = examples::permutation3().rows();
        assert!(enumerate_racks(3).unwrap().contains(&perm3));
    }

    #[test]
    fn refuses_large_orders() {
        assert_eq!(enumerate_racks(6), Err(CensusError::TooLarge { n: 6, cap: 5 }));
        assert!(enumerate_glracks(6).is_err());
        assert!(enumerate_glracks_naive(4).is_err());
        assert_eq!(enumerate_racks(0), Err(CensusError::Empty));
    }

    #[test]
    fn order_three_contains_permutation3() {
        let all = enumerate_glracks(3).unwrap();
        assert!(all.iter().any(|e| e.rack == examples::permutation3()));
        for e in &all {
            if e.delta_cycle_type.iter().all(|&l| l == 1) {
                assert!(e.is_gl_quandle);
            }
        }
    }

    #[test]
    fn naive_enumerator_agrees() {
        for n in 1..=2 {
            let mut fast: Vec<GlRack> = enumerate_glracks(n).unwrap().into_iter().map(|e| e.rack).collect();
            let mut naive = enumerate_glracks_naive(n).unwrap();
            let key = |r: &GlRack| (r.flat_table().to_vec(), r.u().images().to_vec(), r.d().images().to_vec());
            fast.sort_by_key(key);
            naive.sort_by_key(key);
            assert_eq!(fast, naive);
        }
    }

    #[test]
    fn dedupe_merges_relabelings() {
        let r = examples::permutation3();
        let h = Permutation::from_cycles(3, &[&[1, 2]]).unwrap();
        let entries = vec![CensusEntry::new(r.clone()), CensusEntry::new(r.relabel(&h))];
        let classes = dedupe(&entries).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].count, 2);

        let one = dedupe(&enumerate_glracks(1).unwrap()).unwrap();
        assert_eq!(one.len(), 1);
    }

    #[test]
    fn dedupe_matches_isomorphism_search() {
        let entries = enumerate_glracks(3).unwrap();
        let classes = dedupe(&entries).unwrap();
        assert_eq!(classes.iter().map(|c| c.count).sum::<usize>(), entries.len());
        for (i, a) in classes.iter().enumerate() {
            for b in &classes[i + 1..] {
                assert!(are_isomorphic(&a.representative.rack, &b.representative.rack)
                    .unwrap()
                    .is_none());
            }
        }
        for e in &entries {
            let hits = classes
                .iter()
                .filter(|c| are_isomorphic(&e.rack, &c.representative.rack).unwrap().is_some())
                .count();
            assert_eq!(hits, 1);
        }
    }

    #[test]
    fn dump_round_trips() {
        let c = Census::build(2).unwrap();
        let dump = c.dump(false);
        assert!(dump.ends_with(&format!("{}\n", c.summary())));
        let parsed = text::parse_many(&dump).unwrap();
        assert_eq!(parsed.len(), c.entries.len());
        for (p, e) in parsed.into_iter().zip(&c.entries) {
            assert_eq!(p.into_rack().unwrap(), e.rack);
        }
        let iso = c.dump(true);
        assert_eq!(text::parse_many(&iso).unwrap().len(), c.classes.len());
    }
}
