//! Finite-type decisions for m-mod of Nakayama algebras with homogeneous
//! relations: closed-form predicates, empirical verdicts from knitting and
//! τ-periodicity, and the comparison grid between the two.

use serde::{Serialize, Serializer};

use crate::algebra::{hom_exists, AlgebraDesc, ModMorphism, ModuleObject, Shape};
use crate::complex::Complex;
use crate::error::Result;
use crate::knitting::{knit_dimvec, knit_exact, Direction};
use crate::literal::print_object;
use crate::translate::{classify_object, orbit, ObjectKind, Terminal};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum FiniteType {
    Finite,
    Infinite,
}

/// Whether m-mod of the Nakayama algebra with `n` vertices and relations of
/// length `l` has finitely many indecomposables.
pub fn closed_form(shape: Shape, n: usize, l: usize, m: usize) -> FiniteType {
    let finite = match shape {
        Shape::Linear => {
            l >= n
                || m == 1
                || l == 2
                || l + 1 == n
                || n <= 7
                || (n == 8 && l != 4)
                || (l == 3 && m <= 4)
                || ((l == 4 || l == 5) && m <= 2)
        }
        Shape::Cyclic => l == 2 || (l == 3 && m <= 4) || ((l == 4 || l == 5) && m <= 2) || m == 1,
    };
    if finite {
        FiniteType::Finite
    } else {
        FiniteType::Infinite
    }
}

#[derive(Clone, Debug)]
pub enum Verdict {
    /// `node_count` is the size of a closed knit, when one was produced.
    Finite { node_count: Option<usize> },
    Infinite { witness: Complex, period: usize },
    Inconclusive { budget_used: usize },
}

impl Verdict {
    pub fn kind(&self) -> Option<FiniteType> {
        match self {
            Verdict::Finite { .. } => Some(FiniteType::Finite),
            Verdict::Infinite { .. } => Some(FiniteType::Infinite),
            Verdict::Inconclusive { .. } => None,
        }
    }

    pub fn agrees_with(&self, t: FiniteType) -> bool {
        self.kind().is_none_or(|k| k == t)
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Finite { node_count: Some(c) } => write!(f, "Finite({c})"),
            Verdict::Finite { node_count: None } => write!(f, "Finite"),
            Verdict::Infinite { witness, period } => {
                let w = print_object(witness).unwrap_or_else(|_| "?".into());
                write!(f, "Infinite({w}, period {period})")
            }
            Verdict::Inconclusive { budget_used } => write!(f, "Inconclusive({budget_used})"),
        }
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = s.serialize_map(None)?;
        match self {
            Verdict::Finite { node_count } => {
                map.serialize_entry("verdict", "finite")?;
                map.serialize_entry("node_count", node_count)?;
            }
            Verdict::Infinite { witness, period } => {
                map.serialize_entry("verdict", "infinite")?;
                map.serialize_entry("witness", &print_object(witness).map_err(serde::ser::Error::custom)?)?;
                map.serialize_entry("period", period)?;
            }
            Verdict::Inconclusive { budget_used } => {
                map.serialize_entry("verdict", "inconclusive")?;
                map.serialize_entry("budget_used", budget_used)?;
            }
        }
        map.end()
    }
}

/// Candidate objects for a periodicity search: stalks `M_{a,b}[k]` and the
/// two-term complexes `[P_i -> P_j][k]` with the canonical map, restricted to
/// those lying in m-mod and not projective or injective objects.
pub fn periodicity_candidates(alg: &AlgebraDesc, m: usize) -> Vec<Complex> {
    let mut out = Vec::new();
    let keep = |x: &Complex| {
        x.dimvec(m).is_ok() && matches!(classify_object(x, m), Ok(ObjectKind::Neither))
    };
    for k in 0..m as i32 {
        for iv in alg.intervals() {
            let x = Complex::stalk_interval(*alg, iv, -k);
            if keep(&x) {
                out.push(x);
            }
        }
    }
    for k in 0..m as i32 {
        for i in 0..alg.n {
            for j in i + 1..alg.n {
                let (p, q) = (alg.projective(i), alg.projective(j));
                if !hom_exists(p, q) {
                    continue;
                }
                let d = ModMorphism::canonical(p, q).expect("hom exists");
                let x = Complex::new(*alg, -1, vec![ModuleObject::single(p), ModuleObject::single(q)], vec![d])
                    .expect("two-term complex")
                    .shift(k);
                if keep(&x) {
                    out.push(x);
                }
            }
        }
    }
    out
}

/// Search τ⁻-orbits of the candidates for a periodic object, with step
/// limits doubling up to `orbit_budget` so that short periods are found
/// before long orbits get expensive.
pub fn find_periodic(alg: &AlgebraDesc, m: usize, orbit_budget: usize) -> Result<Option<(Complex, usize)>> {
    let mut live = periodicity_candidates(alg, m);
    let mut limit = orbit_budget.min(6);
    loop {
        let mut next = Vec::new();
        for x in live {
            let o = orbit(&x, m, Direction::Forward, limit)?;
            match o.terminal {
                Terminal::Periodic { period, entry } => return Ok(Some((o.steps[entry].clone(), period))),
                Terminal::BudgetExhausted => next.push(x),
                _ => {}
            }
        }
        if limit >= orbit_budget || next.is_empty() {
            return Ok(None);
        }
        live = next;
        limit = (limit * 2).min(orbit_budget);
    }
}

/// Decide finiteness by computation: a closed knit proves finiteness, a
/// τ-periodic object proves infiniteness.
///
/// The DimVec knit runs first; the exact knit is attempted only when it
/// closes, since both follow the same mesh recursion.
pub fn empirical(alg: &AlgebraDesc, m: usize, knit_budget: usize, orbit_budget: usize) -> Result<Verdict> {
    alg.require_linear()?;
    let screen = knit_dimvec(alg, m, knit_budget, Direction::Forward);
    let mut used = knit_budget;
    if let Ok(r) = &screen {
        used = r.budget_used;
        if r.closed {
            let e = knit_exact(alg, m, knit_budget, Direction::Forward)?;
            if e.closed {
                return Ok(Verdict::Finite { node_count: Some(e.nodes_created) });
            }
        }
    }
    if let Some((witness, period)) = find_periodic(alg, m, orbit_budget)? {
        return Ok(Verdict::Infinite { witness, period });
    }
    Ok(Verdict::Inconclusive { budget_used: used })
}

#[derive(Clone, Copy, Debug)]
pub struct Budgets {
    pub knit: usize,
    pub orbit: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets { knit: 50_000, orbit: 40 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Cell {
    pub n: usize,
    pub l: usize,
    pub m: usize,
    pub closed_form: FiniteType,
    pub empirical: Option<Verdict>,
    pub agree: bool,
}

/// Evaluate every `(n, l, m)` with `2 <= l <= n - 1`. Empirical verdicts are
/// computed only when `budgets` is given.
pub fn table(
    ns: impl IntoIterator<Item = usize> + Clone,
    ls: impl IntoIterator<Item = usize> + Clone,
    ms: impl IntoIterator<Item = usize> + Clone,
    budgets: Option<Budgets>,
) -> Result<Vec<Cell>> {
    let mut out = Vec::new();
    for n in ns {
        for l in ls.clone() {
            if l < 2 || l >= n {
                continue;
            }
            let alg = AlgebraDesc::linear(n, l)?;
            for m in ms.clone() {
                let cf = closed_form(Shape::Linear, n, l, m);
                let emp = budgets.map(|b| empirical(&alg, m, b.knit, b.orbit)).transpose()?;
                let agree = emp.as_ref().is_none_or(|v| v.agrees_with(cf));
                out.push(Cell { n, l, m, closed_form: cf, empirical: emp, agree });
            }
        }
    }
    Ok(out)
}

/// For each `(n, l)` the finite range of `m`: `All`, `=1` or `≤k`. A `!`
/// marks cells where an empirical verdict disagreed.
pub fn render_table(cells: &[Cell]) -> String {
    let mut ns: Vec<usize> = cells.iter().map(|c| c.n).collect();
    let mut ls: Vec<usize> = cells.iter().map(|c| c.l).collect();
    ns.sort_unstable();
    ns.dedup();
    ls.sort_unstable();
    ls.dedup();
    let mut s = format!("{:>4}", "l\\n");
    for n in &ns {
        s.push_str(&format!("{n:>6}"));
    }
    s.push('\n');
    for &l in &ls {
        s.push_str(&format!("{l:>4}"));
        for &n in &ns {
            let row: Vec<&Cell> = cells.iter().filter(|c| c.n == n && c.l == l).collect();
            let text = if row.is_empty() {
                String::new()
            } else {
                let mark = if row.iter().all(|c| c.agree) { "" } else { "!" };
                match row.iter().find(|c| c.closed_form == FiniteType::Infinite) {
                    None => format!("All{mark}"),
                    Some(c) if c.m == 2 => format!("=1{mark}"),
                    Some(c) => format!("≤{}{mark}", c.m - 1),
                }
            };
            s.push_str(&format!("{text:>6}"));
        }
        s.push('\n');
    }
    s
}
