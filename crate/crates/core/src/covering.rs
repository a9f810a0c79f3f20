//! AR-quivers of m-mod for cyclic Nakayama algebras, obtained by folding a
//! knitted component of a long linear algebra Λ(d,l) along `Z -> Z/nZ`.
//!
//! Far from both ends of Λ(d,l) the component repeats itself under the column
//! shift by `n`; one stripe of that repetition, with labels pushed down to
//! `Z/nZ`, is the cyclic AR-quiver.

use std::collections::HashMap;
use std::fmt;

use crate::algebra::{AlgebraDesc, Interval, Shape};
use crate::classify::{closed_form, FiniteType};
use crate::dimvec::DimVec;
use crate::error::{Error, Result};
use crate::knitting::{compare, knit_dimvec, ARQuiver, Direction, KnitReport, Node};

/// Push a DimVec over `d` columns down to `n` columns by summing fibres.
pub fn fold_dimvec(dv: &DimVec, n: usize) -> DimVec {
    assert!(n >= 1 && n <= dv.n().max(1), "fold needs 1 <= n <= d");
    let mut out = DimVec::zero(dv.m(), n);
    for i in 0..dv.m() {
        for v in 0..dv.n() {
            out.set(i, v % n, out.get(i, v % n) + dv.get(i, v));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclicLabel {
    pub start: usize,
    pub length: usize,
    /// The dimension vector over `Z/nZ`.
    pub vector: Vec<i64>,
}

impl fmt::Display for CyclicLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C{}:{}", self.start, self.length)
    }
}

pub fn fold_interval(x: Interval, n: usize) -> CyclicLabel {
    assert!(n >= 1);
    let mut vector = vec![0; n];
    for v in x.a..=x.b {
        vector[v % n] += 1;
    }
    CyclicLabel { start: x.a % n, length: x.len(), vector }
}

/// `B = m(l-1)+1` bounds the spread of nonzero columns of any DimVec.
pub fn spread_bound(l: usize, m: usize) -> usize {
    m * (l - 1) + 1
}

/// Default size of the linear cover.
pub fn default_cover_size(n: usize, l: usize, m: usize) -> usize {
    let d = 2 * (spread_bound(l, m) + m * l) + 3 * n + 2 * l;
    d.max(n + 2 * l + 1)
}

/// Column range `[B+ml, d-B-ml-1]` where the component no longer sees either
/// end of Λ(d,l).
pub fn window(d: usize, l: usize, m: usize) -> Option<(usize, usize)> {
    let margin = spread_bound(l, m) + m * l;
    (d > 2 * margin).then(|| (margin, d - margin - 1))
}

/// First nonzero column of a DimVec.
fn position(dv: &DimVec) -> usize {
    dv.support_columns().first().copied().unwrap_or(0)
}

struct Index<'a> {
    q: &'a ARQuiver,
    by_dv: HashMap<&'a DimVec, Vec<usize>>,
}

impl<'a> Index<'a> {
    fn new(q: &'a ARQuiver) -> Self {
        let mut by_dv: HashMap<&DimVec, Vec<usize>> = HashMap::new();
        for x in &q.nodes {
            by_dv.entry(&x.dimvec).or_default().push(x.id);
        }
        Index { q, by_dv }
    }

    /// The unique node with this DimVec; `None` if absent, an error if the
    /// label is ambiguous.
    fn lookup(&self, dv: &DimVec) -> Result<Option<usize>> {
        match self.by_dv.get(dv).map(|v| v.as_slice()) {
            None | Some([]) => Ok(None),
            Some([id]) => Ok(Some(*id)),
            Some(_) => Err(Error::Covering(format!("several nodes carry {dv}; cannot identify by label"))),
        }
    }

    fn shifted(&self, id: usize, k: isize) -> Result<Option<usize>> {
        match self.q.nodes[id].dimvec.shift_columns(k) {
            Some(dv) => self.lookup(&dv),
            None => Ok(None),
        }
    }
}

/// The column shift by `n` as a map between nodes positioned in the window,
/// provided it preserves arrows and τ-pairs there. Domain nodes are those
/// whose first nonzero column lies in `[lo, hi-n]`.
pub fn find_repetition(q: &ARQuiver, n: usize) -> Result<Option<HashMap<usize, usize>>> {
    let (lo, hi) = window(q.alg.n, q.alg.l, q.m)
        .filter(|&(lo, hi)| hi >= lo + n)
        .ok_or_else(|| Error::Covering(format!("Λ({},{}) is too short for a repetition window", q.alg.n, q.alg.l)))?;
    let idx = Index::new(q);
    let in_domain = |id: usize| (lo..=hi - n).contains(&position(&q.nodes[id].dimvec));
    let mut sigma = HashMap::new();
    for x in &q.nodes {
        if in_domain(x.id) {
            match idx.shifted(x.id, n as isize)? {
                Some(y) => {
                    sigma.insert(x.id, y);
                }
                None => return Ok(None),
            }
        }
    }
    let preserved = |edges: &[(usize, usize)]| {
        let mut set: HashMap<(usize, usize), usize> = HashMap::new();
        for &e in edges {
            *set.entry(e).or_default() += 1;
        }
        set.iter().all(|(&(u, v), &c)| match (sigma.get(&u), sigma.get(&v)) {
            (Some(&su), Some(&sv)) => set.get(&(su, sv)) == Some(&c),
            _ => true,
        })
    };
    if preserved(&q.arrows) && preserved(&q.tau_pairs) {
        Ok(Some(sigma))
    } else {
        Ok(None)
    }
}

/// Identify a stripe of width `n` in the repetition window.
fn quotient(lin: &KnitReport, target: AlgebraDesc) -> Result<ARQuiver> {
    let q = &lin.quiver;
    let n = target.n;
    if find_repetition(q, n)?.is_none() {
        return Err(Error::Covering(format!("no shift-by-{n} repetition in the window of {}", q.alg)));
    }
    let (lo, hi) = window(q.alg.n, q.alg.l, q.m).expect("checked by find_repetition");
    let s = lo + (hi + 1 - lo - n) / 2;
    let s = s - s % n;
    let idx = Index::new(q);
    let mut class: HashMap<usize, usize> = HashMap::new();
    let mut nodes = Vec::new();
    for x in &q.nodes {
        let p = position(&x.dimvec);
        if (s..s + n).contains(&p) {
            let id = nodes.len();
            class.insert(x.id, id);
            let label = x.dimvec.as_interval_stalk().map(|(row, a, b)| {
                let c = fold_interval(Interval::new(a, b), n);
                if row == 0 {
                    c.to_string()
                } else {
                    format!("{c}[{row}]")
                }
            });
            nodes.push(Node {
                id,
                dimvec: fold_dimvec(&x.dimvec, n),
                object: None,
                flags: x.flags,
                level: x.level,
                label,
            });
        }
    }
    // representative in the stripe of any node
    let rep = |id: usize| -> Result<usize> {
        let p = position(&q.nodes[id].dimvec) as isize;
        let k = (p - s as isize).div_euclid(n as isize);
        let r = idx
            .shifted(id, -k * n as isize)?
            .ok_or_else(|| Error::Covering(format!("node {id} has no translate in the stripe")))?;
        class
            .get(&r)
            .copied()
            .ok_or_else(|| Error::Internal(format!("translate of node {id} fell outside the stripe")))
    };
    let mut arrows = Vec::new();
    for &(u, v) in &q.arrows {
        if let Some(&cu) = class.get(&u) {
            arrows.push((cu, rep(v)?));
        }
    }
    let mut tau_pairs = Vec::new();
    for &(c, a) in &q.tau_pairs {
        if let Some(&cc) = class.get(&c) {
            tau_pairs.push((cc, rep(a)?));
        }
    }
    arrows.sort_unstable();
    tau_pairs.sort_unstable();
    let out = ARQuiver { alg: target, m: q.m, direction: Direction::Forward, nodes, arrows, tau_pairs };
    out.check_translation_property()?;
    let (np, ni) = (out.projective_count(), out.injective_count());
    if np != n || ni != n {
        return Err(Error::Covering(format!("quotient has {np} projective and {ni} injective nodes, expected {n} of each")));
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug)]
pub struct CoveringOptions {
    /// Size of the linear cover; the default formula when `None`.
    pub d: Option<usize>,
    pub budget: usize,
}

impl Default for CoveringOptions {
    fn default() -> Self {
        CoveringOptions { d: None, budget: crate::knitting::DEFAULT_BUDGET }
    }
}

#[derive(Clone, Debug)]
pub struct StabilityReport {
    pub d: usize,
    pub d_alt: usize,
    pub nodes: usize,
    pub nodes_alt: usize,
    pub isomorphic: bool,
}

#[derive(Clone, Debug)]
pub struct CyclicReport {
    pub quiver: ARQuiver,
    pub stability: StabilityReport,
}

fn fold_at(target: AlgebraDesc, d: usize, m: usize, budget: usize) -> Result<ARQuiver> {
    let lin = knit_dimvec(&AlgebraDesc::linear(d, target.l)?, m, budget, Direction::Forward)?;
    if !lin.closed {
        return Err(Error::Covering(format!("component of Λ({d},{}) did not close within {budget} nodes", target.l)));
    }
    quotient(&lin, target)
}

/// The AR-quiver of m-mod Δ(n,l) for finite parameters. The fold is computed
/// from covers of size `d` and `d+n`; the two must agree.
pub fn cyclic_ar(n: usize, l: usize, m: usize, opts: CoveringOptions) -> Result<CyclicReport> {
    let target = AlgebraDesc::cyclic(n, l)?;
    if m == 0 {
        return Err(Error::Parameter("m must be at least 1".into()));
    }
    if closed_form(Shape::Cyclic, n, l, m) == FiniteType::Infinite {
        return Err(Error::Refused(format!(
            "{m}-mod {target} is of infinite type: finite only for l=2, l=3 with m<=4, l in {{4,5}} with m<=2, or m=1"
        )));
    }
    let d = opts.d.unwrap_or_else(|| default_cover_size(n, l, m));
    if d <= n + 2 * l {
        return Err(Error::Parameter(format!("cover size d={d} must exceed n+2l={}", n + 2 * l)));
    }
    let a = fold_at(target, d, m, opts.budget)?;
    let b = fold_at(target, d + n, m, opts.budget)?;
    let wrap = |q: ARQuiver| KnitReport { nodes_created: q.len(), budget_used: q.len(), quiver: q, closed: true };
    let (ra, rb) = (wrap(a), wrap(b));
    let stability = StabilityReport {
        d,
        d_alt: d + n,
        nodes: ra.quiver.len(),
        nodes_alt: rb.quiver.len(),
        isomorphic: compare(&ra, &rb),
    };
    if !stability.isomorphic {
        return Err(Error::Internal(format!(
            "folds from d={d} and d={} differ ({} vs {} nodes)",
            d + n,
            stability.nodes,
            stability.nodes_alt
        )));
    }
    Ok(CyclicReport { quiver: ra.quiver, stability })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn folds() {
        let p4 = DimVec::stalk(1, 6, 0, 3, 4);
        assert_eq!(fold_dimvec(&p4, 3), DimVec::from_rows(vec![vec![1, 1, 0]]));
        assert_eq!(fold_dimvec(&p4, 6), p4);
        assert!(fold_dimvec(&DimVec::zero(2, 6), 3).is_zero());
        let c = fold_interval(Interval::new(3, 4), 3);
        assert_eq!((c.start, c.length, c.vector.clone()), (0, 2, vec![1, 1, 0]));
        assert_eq!(c.to_string(), "C0:2");
        assert_eq!(fold_interval(Interval::new(0, 1), 1).vector, vec![2]);
    }

    #[test]
    fn loop_with_square_zero() {
        let r = cyclic_ar(1, 2, 2, CoveringOptions::default()).unwrap();
        let labels: Vec<String> = r.quiver.nodes.iter().filter_map(|x| x.label.clone()).collect();
        for want in ["C0:2", "C0:1", "C0:1[1]", "C0:2[1]"] {
            assert!(labels.iter().any(|x| x == want), "{want} missing from {labels:?}");
        }
        assert!(r.stability.isomorphic);
        let r1 = cyclic_ar(1, 2, 1, CoveringOptions::default()).unwrap();
        assert_eq!(r1.quiver.len(), 2);
    }

    #[test]
    fn refuses_infinite_and_short_covers() {
        assert!(matches!(cyclic_ar(2, 3, 5, CoveringOptions::default()), Err(Error::Refused(_))));
        let q = knit_dimvec(&AlgebraDesc::linear(6, 2).unwrap(), 2, 1000, Direction::Forward).unwrap();
        assert!(matches!(find_repetition(&q.quiver, 1), Err(Error::Covering(_))));
    }

    #[test]
    fn repetition_commutes_with_tau() {
        let a = AlgebraDesc::linear(default_cover_size(2, 3, 2), 3).unwrap();
        let q = knit_dimvec(&a, 2, 100_000, Direction::Forward).unwrap().quiver;
        let sigma = find_repetition(&q, 2).unwrap().expect("repetition");
        for (&x, &y) in &sigma {
            if let (Some(tx), Some(ty)) = (q.tau_of(x), q.tau_of(y)) {
                if let Some(&stx) = sigma.get(&tx) {
                    assert_eq!(stx, ty);
                }
            }
        }
    }
}
