//! Knitting postprojective and preinjective components of the AR-quiver,
//! either on cohomological dimension vectors alone or on explicit complexes.
//!
//! Both knitters follow the same level structure: level 0 holds the simple
//! projective `P_0`; level `k` holds `τ⁻M` for the level `k-2` nodes `M` that
//! are not injective objects, together with every projective `P` whose radical
//! is a node of level `k-1`. Arrows always go from level `i` to level `i+1`.
//! The preinjective component is obtained from the postprojective one through
//! the duality `X ↦ D(X)[m-1]`, which reverses rows, columns and arrows.

mod exact;
mod export;

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraDesc, Interval};
use crate::complex::Complex;
use crate::dimvec::DimVec;
use crate::error::{Error, Result};
pub use crate::translate::Direction;

pub use exact::knit_exact;
pub use export::{to_dot, to_json, to_value};

pub const DEFAULT_BUDGET: usize = 100_000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeFlags {
    pub projective: bool,
    pub injective: bool,
    /// `Some(j)` when the DimVec is that of a shifted injective `I[j]`.
    pub inj_level: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct Node {
    pub id: usize,
    pub dimvec: DimVec,
    pub object: Option<Complex>,
    pub flags: NodeFlags,
    pub level: usize,
    /// Free-form name, used for folded cyclic labels.
    pub label: Option<String>,
}

#[derive(Clone, Debug)]
pub struct ARQuiver {
    pub alg: AlgebraDesc,
    pub m: usize,
    pub direction: Direction,
    pub nodes: Vec<Node>,
    pub arrows: Vec<(usize, usize)>,
    /// Pairs `(C, τC)`.
    pub tau_pairs: Vec<(usize, usize)>,
}

impl ARQuiver {
    pub(crate) fn new(alg: AlgebraDesc, m: usize, direction: Direction) -> Self {
        ARQuiver { alg, m, direction, nodes: Vec::new(), arrows: Vec::new(), tau_pairs: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn successors(&self, id: usize) -> Vec<usize> {
        self.arrows.iter().filter(|(s, _)| *s == id).map(|&(_, t)| t).collect()
    }

    pub fn predecessors(&self, id: usize) -> Vec<usize> {
        self.arrows.iter().filter(|(_, t)| *t == id).map(|&(s, _)| s).collect()
    }

    /// `τ` of a node, if recorded.
    pub fn tau_of(&self, id: usize) -> Option<usize> {
        self.tau_pairs.iter().find(|(c, _)| *c == id).map(|&(_, a)| a)
    }

    /// `τ⁻` of a node, if recorded.
    pub fn tau_inv_of(&self, id: usize) -> Option<usize> {
        self.tau_pairs.iter().find(|(_, a)| *a == id).map(|&(c, _)| c)
    }

    pub fn find_dimvec(&self, d: &DimVec) -> Vec<usize> {
        self.nodes.iter().filter(|x| &x.dimvec == d).map(|x| x.id).collect()
    }

    pub fn projective_count(&self) -> usize {
        self.nodes.iter().filter(|x| x.flags.projective).count()
    }

    pub fn injective_count(&self) -> usize {
        self.nodes.iter().filter(|x| x.flags.injective).count()
    }

    /// The translation-quiver property: for each pair `(C, τC)` the arrows out
    /// of `τC` and into `C` have the same middle terms.
    pub fn check_translation_property(&self) -> Result<()> {
        for &(c, a) in &self.tau_pairs {
            let mut out = self.successors(a);
            let mut inc = self.predecessors(c);
            out.sort_unstable();
            inc.sort_unstable();
            if out != inc {
                return Err(Error::KnitInvariant(format!(
                    "mesh at node {c} does not match arrows out of its translate {a}"
                )));
            }
        }
        Ok(())
    }

    /// Kahn's algorithm; false if some arrow lies on a cycle.
    pub fn is_acyclic(&self) -> bool {
        let mut indeg = vec![0usize; self.nodes.len()];
        for &(_, t) in &self.arrows {
            indeg[t] += 1;
        }
        let mut stack: Vec<usize> = (0..self.nodes.len()).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for &(s, t) in &self.arrows {
                if s == v {
                    indeg[t] -= 1;
                    if indeg[t] == 0 {
                        stack.push(t);
                    }
                }
            }
        }
        seen == self.nodes.len()
    }
}

#[derive(Clone, Debug)]
pub struct KnitReport {
    pub quiver: ARQuiver,
    pub closed: bool,
    pub nodes_created: usize,
    pub budget_used: usize,
}

pub(crate) fn require_knittable(alg: &AlgebraDesc, m: usize, budget: usize) -> Result<()> {
    alg.require_linear()?;
    if m == 0 {
        return Err(Error::Parameter("m must be at least 1".into()));
    }
    if budget == 0 {
        return Err(Error::Parameter("budget must be at least 1".into()));
    }
    Ok(())
}

/// Flags derived from a DimVec: stalk projective in row 0, stalk injective
/// `I[j]` in row `j`.
pub fn flags_of(alg: &AlgebraDesc, m: usize, d: &DimVec) -> NodeFlags {
    let mut f = NodeFlags::default();
    if let Some((row, a, b)) = d.as_interval_stalk() {
        let iv = Interval::new(a, b);
        if row == 0 && alg.is_projective(iv) {
            f.projective = true;
        }
        if alg.is_injective(iv) {
            f.inj_level = Some(row);
            f.injective = row + 1 == m;
        }
    }
    f
}

/// DimVec of `rad P_i`, or `None` when `P_i` is simple.
pub fn radical_dimvec(alg: &AlgebraDesc, m: usize, i: usize) -> Option<DimVec> {
    let p = alg.projective(i);
    (p.b > p.a).then(|| DimVec::stalk(m, alg.n, 0, p.a, p.b - 1))
}

/// One knitting step: the DimVec of `τ⁻M` from `M` and its successors `M⁺`.
///
/// When `M` is `I[j]` with `j < m-1` the result is concentrated in row `j+1`;
/// otherwise it is `-M + ΣN`.
pub fn step_tau_inv_dimvec(m_vec: &DimVec, inj_level: Option<usize>, successors: &[DimVec]) -> Result<DimVec> {
    let out = match inj_level {
        Some(j) => {
            if j + 1 >= m_vec.m() {
                return Err(Error::Precondition(format!("injective level {j} has no τ⁻ in {}-mod", m_vec.m())));
            }
            let mut out = DimVec::zero(m_vec.m(), m_vec.n());
            for v in 0..m_vec.n() {
                let s: i64 = successors.iter().map(|x| x.get(j + 1, v) - x.get(j, v)).sum();
                out.set(j + 1, v, m_vec.get(j, v) + s);
            }
            out
        }
        None => successors.iter().fold(DimVec::zero(m_vec.m(), m_vec.n()).sub(m_vec), |acc, x| acc.add(x)),
    };
    out.check_nonnegative()?;
    if out.is_zero() {
        return Err(Error::KnitInvariant(format!("τ⁻ of {m_vec} came out zero")));
    }
    Ok(out)
}

/// What the shared level traversal needs from a knitter.
pub(crate) trait Engine {
    fn start(&mut self) -> Result<(DimVec, Option<Complex>)>;
    /// Whether the node is `rad P_i`.
    fn is_radical_of(&mut self, node: &Node, i: usize) -> Result<bool>;
    fn projective(&mut self, i: usize) -> Result<(DimVec, Option<Complex>)>;
    fn tau_inv(&mut self, q: &ARQuiver, node: usize, succ: &[usize]) -> Result<(DimVec, Option<Complex>)>;
}

pub(crate) fn knit_forward<E: Engine>(
    engine: &mut E,
    alg: AlgebraDesc,
    m: usize,
    budget: usize,
) -> Result<KnitReport> {
    let n = alg.n;
    let mut q = ARQuiver::new(alg, m, Direction::Forward);
    let mut attached = vec![false; n];
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    let add = |q: &mut ARQuiver, d: DimVec, obj: Option<Complex>, level: usize| -> usize {
        let id = q.nodes.len();
        let flags = flags_of(&q.alg, m, &d);
        q.nodes.push(Node { id, dimvec: d, object: obj, flags, level, label: None });
        id
    };
    let (d0, o0) = engine.start()?;
    add(&mut q, d0, o0, 0);
    attached[0] = true;
    let mut levels: Vec<Vec<usize>> = vec![vec![0]];
    let mut k = 1;
    let mut closed = false;
    loop {
        let mut fresh = Vec::new();
        // τ⁻ of the level k-2 nodes
        if k >= 2 {
            for &id in &levels[k - 2] {
                if q.nodes[id].flags.injective {
                    continue;
                }
                if q.nodes.len() >= budget {
                    break;
                }
                let succ = out[id].clone();
                let (d, obj) = engine.tau_inv(&q, id, &succ)?;
                let c = add(&mut q, d, obj, k);
                out.push(Vec::new());
                for s in succ {
                    q.arrows.push((s, c));
                    out[s].push(c);
                }
                q.tau_pairs.push((c, id));
                fresh.push(c);
            }
        }
        // projectives whose radical sits on level k-1
        for &id in &levels[k - 1] {
            let mut found = Vec::new();
            for i in 1..n {
                if !attached[i] && engine.is_radical_of(&q.nodes[id], i)? {
                    found.push(i);
                }
            }
            for i in found {
                if q.nodes.len() >= budget {
                    break;
                }
                attached[i] = true;
                let (d, obj) = engine.projective(i)?;
                let p = add(&mut q, d, obj, k);
                out.push(Vec::new());
                q.arrows.push((id, p));
                out[id].push(p);
                fresh.push(p);
            }
        }
        if q.nodes.len() >= budget {
            levels.push(fresh);
            break;
        }
        let prev_empty = levels[k - 1].is_empty();
        levels.push(fresh);
        if levels[k].is_empty() && prev_empty {
            closed = true;
            break;
        }
        k += 1;
    }
    let count = q.nodes.len();
    Ok(KnitReport { quiver: q, closed, nodes_created: count, budget_used: count })
}

/// The image of a forward knit under `X ↦ D(X)[m-1]`: rows and columns of
/// every DimVec reversed, arrows reversed, and τ-pairs swapped.
pub(crate) fn dualize_report(r: KnitReport, map_obj: impl Fn(&Complex) -> Result<Complex>) -> Result<KnitReport> {
    let q = r.quiver;
    let m = q.m;
    let mut nodes = Vec::with_capacity(q.nodes.len());
    for x in q.nodes {
        let d = x.dimvec.dualized();
        let object = x.object.as_ref().map(&map_obj).transpose()?;
        let flags = flags_of(&q.alg, m, &d);
        nodes.push(Node { id: x.id, dimvec: d, object, flags, level: x.level, label: x.label });
    }
    let quiver = ARQuiver {
        alg: q.alg,
        m,
        direction: Direction::Backward,
        nodes,
        arrows: q.arrows.iter().map(|&(s, t)| (t, s)).collect(),
        tau_pairs: q.tau_pairs.iter().map(|&(c, a)| (a, c)).collect(),
    };
    Ok(KnitReport { quiver, ..r })
}

struct DimvecEngine {
    alg: AlgebraDesc,
    m: usize,
}

impl Engine for DimvecEngine {
    fn start(&mut self) -> Result<(DimVec, Option<Complex>)> {
        self.projective(0)
    }

    fn is_radical_of(&mut self, node: &Node, i: usize) -> Result<bool> {
        Ok(radical_dimvec(&self.alg, self.m, i).as_ref() == Some(&node.dimvec))
    }

    fn projective(&mut self, i: usize) -> Result<(DimVec, Option<Complex>)> {
        let p = self.alg.projective(i);
        Ok((DimVec::stalk(self.m, self.alg.n, 0, p.a, p.b), None))
    }

    fn tau_inv(&mut self, q: &ARQuiver, node: usize, succ: &[usize]) -> Result<(DimVec, Option<Complex>)> {
        let x = &q.nodes[node];
        let s: Vec<DimVec> = succ.iter().map(|&i| q.nodes[i].dimvec.clone()).collect();
        Ok((step_tau_inv_dimvec(&x.dimvec, x.flags.inj_level, &s)?, None))
    }
}

/// Knit on DimVec labels only.
pub fn knit_dimvec(alg: &AlgebraDesc, m: usize, budget: usize, direction: Direction) -> Result<KnitReport> {
    require_knittable(alg, m, budget)?;
    let mut engine = DimvecEngine { alg: *alg, m };
    let r = knit_forward(&mut engine, *alg, m, budget)?;
    match direction {
        Direction::Forward => Ok(r),
        Direction::Backward => dualize_report(r, |x| Ok(x.clone())),
    }
}

/// Whether two knits describe the same translation quiver: a bijection of
/// nodes preserving DimVecs, arrows (with multiplicity) and τ-pairs.
pub fn compare(a: &KnitReport, b: &KnitReport) -> bool {
    let (qa, qb) = (&a.quiver, &b.quiver);
    if qa.alg != qb.alg || qa.m != qb.m || qa.direction != qb.direction || qa.len() != qb.len() {
        return false;
    }
    if qa.arrows.len() != qb.arrows.len() || qa.tau_pairs.len() != qb.tau_pairs.len() {
        return false;
    }
    let mut by_dv: HashMap<&DimVec, Vec<usize>> = HashMap::new();
    for x in &qb.nodes {
        by_dv.entry(&x.dimvec).or_default().push(x.id);
    }
    let mut cands = Vec::with_capacity(qa.len());
    for x in &qa.nodes {
        match by_dv.get(&x.dimvec) {
            Some(c) => cands.push(c.clone()),
            None => return false,
        }
    }
    let count = |arrows: &[(usize, usize)]| {
        let mut m: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for &e in arrows {
            *m.entry(e).or_default() += 1;
        }
        m
    };
    let (ea, eb) = (count(&qa.arrows), count(&qb.arrows));
    let (ta, tb) = (count(&qa.tau_pairs), count(&qb.tau_pairs));
    let mut order: Vec<usize> = (0..qa.len()).collect();
    order.sort_by_key(|&i| cands[i].len());
    let mut map = vec![usize::MAX; qa.len()];
    let mut used = vec![false; qb.len()];
    search(&order, 0, &cands, &mut map, &mut used, &[(&ea, &eb), (&ta, &tb)])
}

type EdgeCounts = BTreeMap<(usize, usize), usize>;

fn consistent(map: &[usize], v: usize, edges: &[(&EdgeCounts, &EdgeCounts)]) -> bool {
    edges.iter().all(|(ea, eb)| {
        ea.iter().filter(|((s, t), _)| *s == v || *t == v).all(|(&(s, t), &c)| {
            let (ms, mt) = (map[s], map[t]);
            ms == usize::MAX || mt == usize::MAX || eb.get(&(ms, mt)) == Some(&c)
        })
    })
}

fn search(
    order: &[usize],
    pos: usize,
    cands: &[Vec<usize>],
    map: &mut [usize],
    used: &mut [bool],
    edges: &[(&EdgeCounts, &EdgeCounts)],
) -> bool {
    let Some(&v) = order.get(pos) else {
        return true;
    };
    for &w in &cands[v] {
        if used[w] {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if consistent(map, v, edges) && search(order, pos + 1, cands, map, used, edges) {
            return true;
        }
        map[v] = usize::MAX;
        used[w] = false;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dv(rows: &[&[i64]]) -> DimVec {
        DimVec::from_rows(rows.iter().map(|r| r.to_vec()).collect())
    }

    #[test]
    fn knitting_step_examples() {
        // 0 -> S_0 -> P_1 -> S_1 -> 0 over Λ(3,2)
        let s1 = step_tau_inv_dimvec(&dv(&[&[1, 0, 0]]), None, &[dv(&[&[1, 1, 0]])]).unwrap();
        assert_eq!(s1, dv(&[&[0, 1, 0]]));
        // P_2 = I_1 in 2-mod Λ(3,2)
        let p = dv(&[&[0, 1, 1], &[0, 0, 0]]);
        let succ = [dv(&[&[0, 0, 1], &[0, 0, 0]]), dv(&[&[0, 0, 0], &[1, 0, 0]])];
        assert_eq!(step_tau_inv_dimvec(&p, Some(0), &succ).unwrap(), dv(&[&[0, 0, 0], &[1, 1, 0]]));
        let x = dv(&[&[0, 1, 0], &[1, 0, 0]]);
        assert!(step_tau_inv_dimvec(&x, None, std::slice::from_ref(&x)).is_err());
        assert!(matches!(
            step_tau_inv_dimvec(&x, None, &[]),
            Err(Error::KnitInvariant(_))
        ));
    }

    #[test]
    fn small_components() {
        let a = AlgebraDesc::linear(3, 2).unwrap();
        let r = knit_dimvec(&a, 1, 100, Direction::Forward).unwrap();
        assert!(r.closed);
        assert_eq!(r.quiver.len(), 5);
        let r = knit_dimvec(&a, 2, 100, Direction::Forward).unwrap();
        assert!(r.closed);
        assert_eq!(r.quiver.len(), 11);
        assert_eq!(r.quiver.projective_count(), 3);
        assert_eq!(r.quiver.injective_count(), 3);
        r.quiver.check_translation_property().unwrap();
        assert!(r.quiver.is_acyclic());
        let b = knit_dimvec(&a, 2, 100, Direction::Backward).unwrap();
        assert!(b.closed && b.quiver.len() == 11);
        assert!(compare(&r, &r));
        assert!(!compare(&r, &knit_dimvec(&a, 1, 100, Direction::Forward).unwrap()));
    }

    #[test]
    fn infinite_case_exhausts_budget() {
        let a = AlgebraDesc::linear(9, 6).unwrap();
        let r = knit_dimvec(&a, 2, 5000, Direction::Forward).unwrap();
        assert!(!r.closed);
        assert!(r.nodes_created >= 5000);
    }

    #[test]
    fn compare_sees_through_relabelling() {
        let a = AlgebraDesc::linear(4, 3).unwrap();
        let r = knit_dimvec(&a, 2, 1000, Direction::Forward).unwrap();
        let mut s = r.clone();
        let n = s.quiver.len();
        let perm: Vec<usize> = (0..n).rev().collect();
        for x in &mut s.quiver.nodes {
            x.id = perm[x.id];
        }
        s.quiver.nodes.sort_by_key(|x| x.id);
        s.quiver.arrows = s.quiver.arrows.iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        s.quiver.tau_pairs = s.quiver.tau_pairs.iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        assert!(compare(&r, &s));
        s.quiver.arrows.pop();
        assert!(!compare(&r, &s));
    }
}
