use super::{GlRack, RackError};
use crate::permutation::Permutation;

/// Largest order accepted by [`are_isomorphic`].
pub const ISOMORPHISM_ORDER_CAP: usize = 8;

/// Searches for a bijection `h` with `h(x∗y) = h(x)∗'h(y)`, `h∘u = u'∘h` and
/// `h∘d = d'∘h`. Returns `Ok(None)` when the racks are not isomorphic.
///
/// Backtracking with pruning on the length of each element's `Δ`-cycle,
/// refusing orders above [`ISOMORPHISM_ORDER_CAP`].
pub fn are_isomorphic(a: &GlRack, b: &GlRack) -> Result<Option<Permutation>, RackError> {
    let n = a.order();
    for r in [a, b] {
        if r.order() > ISOMORPHISM_ORDER_CAP {
            return Err(RackError::TooLarge {
                n: r.order(),
                cap: ISOMORPHISM_ORDER_CAP,
            });
        }
    }
    if n != b.order() {
        return Ok(None);
    }
    let (da, db) = (a.delta(), b.delta());
    if da.cycle_type() != db.cycle_type()
        || a.u().cycle_type() != b.u().cycle_type()
        || a.d().cycle_type() != b.d().cycle_type()
    {
        return Ok(None);
    }
    let orbit_len = |delta: &Permutation| {
        let mut len = vec![0; n];
        for c in delta.cycles() {
            for &x in &c {
                len[x] = c.len();
            }
        }
        len
    };
    let search = Search {
        a,
        b,
        la: orbit_len(&da),
        lb: orbit_len(&db),
        map: vec![None; n],
        used: vec![false; n],
    };
    Ok(search.run())
}

struct Search<'r> {
    a: &'r GlRack,
    b: &'r GlRack,
    la: Vec<usize>,
    lb: Vec<usize>,
    map: Vec<Option<usize>>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn run(mut self) -> Option<Permutation> {
        if self.extend(0) {
            let images = self.map.iter().map(|m| m.unwrap()).collect();
            Some(Permutation::from_images(images).expect("search builds a bijection"))
        } else {
            None
        }
    }

    fn consistent(&self, x: usize) -> bool {
        let hx = self.map[x].unwrap();
        let (a, b) = (self.a, self.b);
        for y in 0..self.map.len() {
            let Some(hy) = self.map[y] else { continue };
            for (fa, fb) in [(a.u(), b.u()), (a.d(), b.d())] {
                if let Some(h) = self.map[fa.apply(y)] {
                    if h != fb.apply(hy) {
                        return false;
                    }
                }
            }
        }
        for y in 0..self.map.len() {
            let Some(hy) = self.map[y] else { continue };
            for (p, q, hp, hq) in [(x, y, hx, hy), (y, x, hy, hx)] {
                if let Some(hz) = self.map[a.op(p, q)] {
                    if hz != b.op(hp, hq) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn extend(&mut self, x: usize) -> bool {
        let n = self.map.len();
        if x == n {
            return true;
        }
        for t in 0..n {
            if self.used[t] || self.la[x] != self.lb[t] {
                continue;
            }
            self.map[x] = Some(t);
            self.used[t] = true;
            if self.consistent(x) && self.extend(x + 1) {
                return true;
            }
            self.map[x] = None;
            self.used[t] = false;
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples;

    fn check_iso(a: &GlRack, b: &GlRack, h: &Permutation) {
        let n = a.order();
        for x in 0..n {
            assert_eq!(h.apply(a.u().apply(x)), b.u().apply(h.apply(x)));
            assert_eq!(h.apply(a.d().apply(x)), b.d().apply(h.apply(x)));
            for y in 0..n {
                assert_eq!(h.apply(a.op(x, y)), b.op(h.apply(x), h.apply(y)));
            }
        }
    }

    #[test]
    fn self_isomorphism() {
        let r = examples::mixed6();
        let h = are_isomorphic(&r, &r).unwrap().unwrap();
        check_iso(&r, &r, &h);
    }

    #[test]
    fn relabeled_copy_is_found() {
        let r = examples::permutation3();
        let t = Permutation::from_cycles(3, &[&[1, 2]]).unwrap();
        let s = r.relabel(&t);
        assert_ne!(r, s);
        let h = are_isomorphic(&r, &s).unwrap().unwrap();
        check_iso(&r, &s, &h);
    }

    #[test]
    fn different_delta_types_are_not_isomorphic() {
        assert!(are_isomorphic(&examples::block6(), &examples::mixed6())
            .unwrap()
            .is_none());
    }

    #[test]
    fn refuses_large_orders() {
        let big = crate::glrack::permutation_glrack(
            &Permutation::identity(9),
            &Permutation::identity(9),
        )
        .unwrap();
        assert!(matches!(
            are_isomorphic(&big, &big),
            Err(RackError::TooLarge { n: 9, cap: 8 })
        ));
    }
}
