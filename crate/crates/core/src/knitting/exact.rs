//! Knitting with explicit complexes attached to every node.

use super::{dualize_report, knit_forward, radical_dimvec, require_knittable, step_tau_inv_dimvec, ARQuiver, Engine, KnitReport, Node};
use crate::algebra::AlgebraDesc;
use crate::complex::Complex;
use crate::dimvec::DimVec;
use crate::error::{Error, Result};
use crate::homotopy::{minimal_isomorphic, seed};
use crate::resolve::projective_form;
use crate::translate::{tau, Direction};

struct ExactEngine {
    alg: AlgebraDesc,
    m: usize,
}

impl ExactEngine {
    fn stalk(&self, iv: crate::algebra::Interval) -> Result<Complex> {
        projective_form(&Complex::stalk_interval(self.alg, iv, 0))
    }
}

impl Engine for ExactEngine {
    fn start(&mut self) -> Result<(DimVec, Option<Complex>)> {
        self.projective(0)
    }

    fn is_radical_of(&mut self, node: &Node, i: usize) -> Result<bool> {
        let Some(rd) = radical_dimvec(&self.alg, self.m, i) else {
            return Ok(false);
        };
        if rd != node.dimvec {
            return Ok(false);
        }
        let p = self.alg.projective(i);
        let rad = self.stalk(crate::algebra::Interval::new(p.a, p.b - 1))?;
        let obj = node.object.as_ref().ok_or_else(|| Error::Internal("exact node without object".into()))?;
        Ok(minimal_isomorphic(obj, &rad, seed()))
    }

    fn projective(&mut self, i: usize) -> Result<(DimVec, Option<Complex>)> {
        let x = self.stalk(self.alg.projective(i))?;
        Ok((x.dimvec(self.m)?, Some(x)))
    }

    fn tau_inv(&mut self, q: &ARQuiver, node: usize, succ: &[usize]) -> Result<(DimVec, Option<Complex>)> {
        let x = &q.nodes[node];
        let obj = x.object.as_ref().ok_or_else(|| Error::Internal("exact node without object".into()))?;
        let t = tau(obj, self.m, Direction::Forward)?;
        if t.is_zero() {
            return Err(Error::KnitInvariant(format!("τ⁻ vanished on non-injective node {}", x.id)));
        }
        let d = t.dimvec(self.m)?;
        let s: Vec<DimVec> = succ.iter().map(|&i| q.nodes[i].dimvec.clone()).collect();
        let predicted = step_tau_inv_dimvec(&x.dimvec, x.flags.inj_level, &s)?;
        if d != predicted {
            return Err(Error::KnitInvariant(format!(
                "τ⁻ of node {} has dimension vector {d}, the mesh predicts {predicted}",
                x.id
            )));
        }
        if let Some(prev) = q.nodes.iter().find(|y| {
            y.dimvec == d && y.object.as_ref().is_some_and(|o| minimal_isomorphic(o, &t, seed()))
        }) {
            return Err(Error::KnitInvariant(format!("τ⁻ of node {} repeats node {}: the component has a cycle", x.id, prev.id)));
        }
        Ok((d, Some(t)))
    }
}

/// Knit with explicit objects, checking every DimVec against the mesh
/// formula. Backward knitting transports the forward knit through
/// `X ↦ D(X)[m-1]`.
pub fn knit_exact(alg: &AlgebraDesc, m: usize, budget: usize, direction: Direction) -> Result<KnitReport> {
    require_knittable(alg, m, budget)?;
    let mut engine = ExactEngine { alg: *alg, m };
    let r = knit_forward(&mut engine, *alg, m, budget)?;
    match direction {
        Direction::Forward => Ok(r),
        Direction::Backward => {
            let shift = (m - 1) as i32;
            dualize_report(r, |x| projective_form(&x.dual().shift(shift)))
        }
    }
}
