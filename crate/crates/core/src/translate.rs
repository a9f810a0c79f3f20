//! The AR-translates τ_[m] and τ_[m]⁻ on explicit complexes, and τ-orbits.

use serde::{Deserialize, Serialize};

use crate::algebra::{Interval, NakayamaDir};
use crate::complex::{Complex, Truncation};
use crate::dimvec::DimVec;
use crate::error::{Error, Result};
use crate::homotopy::{minimal_isomorphic, seed};
use crate::resolve::{projective_form, resolve, Side};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// τ⁻, towards the injectives.
    Forward,
    /// τ, towards the projectives.
    Backward,
}

/// One application of τ_[m] (backward) or τ_[m]⁻ (forward).
///
/// The input must be an indecomposable object of m-mod. The result is in
/// minimal projective form and is zero exactly on projective objects (τ)
/// resp. injective objects (τ⁻).
pub fn tau(x: &Complex, m: usize, dir: Direction) -> Result<Complex> {
    if m == 0 {
        return Err(Error::Parameter("m must be at least 1".into()));
    }
    let px = projective_form(x)?;
    if px.is_zero() {
        return Ok(px);
    }
    px.dimvec(m)?;
    if px.split().len() > 1 {
        return Err(Error::Precondition("τ needs an indecomposable object; split it first".into()));
    }
    let m = m as i32;
    let out = match dir {
        Direction::Backward => {
            let pm = px.truncate(Truncation::BrutalGe, -m)?;
            let nu = pm.apply_nakayama(NakayamaDir::Nu)?.shift(-1);
            nu.truncate(Truncation::SoftLe, 0)?
        }
        Direction::Forward => {
            let inj = resolve(&px, Side::Injective)?;
            let im = inj.truncate(Truncation::BrutalLe, 1)?;
            let nu = im.apply_nakayama(NakayamaDir::NuInv)?.shift(1);
            nu.truncate(Truncation::SoftGe, -(m - 1))?
        }
    };
    projective_form(&out)
}

/// Apply τ^k for `k > 0`, or (τ⁻)^{|k|} for `k < 0`, stopping at zero.
pub fn tau_power(x: &Complex, m: usize, k: i32) -> Result<Complex> {
    let dir = if k >= 0 { Direction::Backward } else { Direction::Forward };
    let mut cur = projective_form(x)?;
    for _ in 0..k.unsigned_abs() {
        if cur.is_zero() {
            break;
        }
        cur = tau(&cur, m, dir)?;
    }
    Ok(cur)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Terminal {
    ReachedProjective,
    ReachedInjective,
    Periodic { period: usize, entry: usize },
    BudgetExhausted,
}

#[derive(Clone, Debug)]
pub struct OrbitResult {
    /// `steps[0]` is the starting object, `steps[k+1]` is τ^{±}(steps[k]).
    pub steps: Vec<Complex>,
    pub terminal: Terminal,
}

/// Iterate τ (or τ⁻) until a projective (injective) object is reached, an
/// object repeats up to isomorphism, or `max_steps` applications were made.
pub fn orbit(x: &Complex, m: usize, dir: Direction, max_steps: usize) -> Result<OrbitResult> {
    let start = projective_form(x)?;
    let mut steps = vec![start];
    let mut dims = vec![steps[0].dimvec(m)?];
    loop {
        let cur = steps.last().unwrap();
        let kind = classify_object(cur, m)?;
        match (dir, kind) {
            (Direction::Forward, ObjectKind::InjectiveObject) => {
                return Ok(OrbitResult { steps, terminal: Terminal::ReachedInjective });
            }
            (Direction::Backward, ObjectKind::ProjectiveObject) => {
                return Ok(OrbitResult { steps, terminal: Terminal::ReachedProjective });
            }
            _ => {}
        }
        if steps.len() > max_steps {
            return Ok(OrbitResult { steps, terminal: Terminal::BudgetExhausted });
        }
        let next = tau(cur, m, dir)?;
        if next.is_zero() {
            return Err(Error::Internal("τ vanished on a non-boundary object".into()));
        }
        let d = next.dimvec(m)?;
        let hit = (0..steps.len())
            .find(|&j| dims[j] == d && minimal_isomorphic(&steps[j], &next, seed()));
        if let Some(j) = hit {
            let period = steps.len() - j;
            steps.push(next);
            return Ok(OrbitResult { steps, terminal: Terminal::Periodic { period, entry: j } });
        }
        steps.push(next);
        dims.push(d);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ObjectKind {
    ProjectiveObject,
    InjectiveObject,
    Neither,
}

/// If `x` has cohomology in a single degree given by one interval module,
/// returns that interval and the shift `k` with `x ≅ M[k]`.
pub fn as_stalk(x: &Complex, m: usize) -> Result<Option<(Interval, usize)>> {
    let d = x.dimvec(m)?;
    Ok(stalk_of_dimvec(&d))
}

pub fn stalk_of_dimvec(d: &DimVec) -> Option<(Interval, usize)> {
    d.as_interval_stalk().map(|(row, a, b)| (Interval::new(a, b), row))
}

/// Projective objects of m-mod are the stalk projectives in degree 0; the
/// injective objects are `I[m-1]`. Assumes `x` is indecomposable.
pub fn classify_object(x: &Complex, m: usize) -> Result<ObjectKind> {
    let alg = *x.alg();
    Ok(match as_stalk(x, m)? {
        Some((iv, 0)) if alg.is_projective(iv) => ObjectKind::ProjectiveObject,
        Some((iv, k)) if k + 1 == m && alg.is_injective(iv) => ObjectKind::InjectiveObject,
        _ => ObjectKind::Neither,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{AlgebraDesc, ModMorphism};
    use crate::homotopy::is_isomorphic;

    fn lin(n: usize, l: usize) -> AlgebraDesc {
        AlgebraDesc::linear(n, l).unwrap()
    }

    fn stalk(alg: AlgebraDesc, x: Interval, shift: i32) -> Complex {
        Complex::stalk_interval(alg, x, 0).shift(shift)
    }

    fn two_term(alg: AlgebraDesc, x: Interval, y: Interval) -> Complex {
        let d = ModMorphism::canonical(x, y).unwrap();
        Complex::new(alg, -1, vec![d.source.clone(), d.target.clone()], vec![d]).unwrap()
    }

    #[test]
    fn tau_inverse_of_simple() {
        let a = lin(9, 4);
        let s3 = stalk(a, Interval::new(3, 3), 0);
        let t = tau(&s3, 2, Direction::Forward).unwrap();
        assert!(is_isomorphic(&t, &two_term(a, a.projective(3), a.projective(4))).unwrap());
        let back = tau(&t, 2, Direction::Backward).unwrap();
        assert!(is_isomorphic(&back, &s3).unwrap());
        let p0 = stalk(a, a.projective(0), 0);
        let t3 = tau_power(&p0, 2, -3).unwrap();
        assert!(is_isomorphic(&t3, &s3).unwrap());
    }

    #[test]
    fn tau_vanishes_on_boundary_objects() {
        let a = lin(9, 3);
        for i in 0..9 {
            let p = stalk(a, a.projective(i), 0);
            assert!(tau(&p, 3, Direction::Backward).unwrap().is_zero());
            let q = stalk(a, a.injective(i), 2);
            assert!(tau(&q, 3, Direction::Forward).unwrap().is_zero());
        }
    }

    #[test]
    fn classification() {
        let a = lin(9, 3);
        assert_eq!(classify_object(&stalk(a, a.projective(5), 0), 2).unwrap(), ObjectKind::ProjectiveObject);
        assert_eq!(classify_object(&stalk(a, a.injective(2), 1), 2).unwrap(), ObjectKind::InjectiveObject);
        let b = lin(3, 2);
        let x = two_term(b, b.projective(1), b.projective(2));
        assert_eq!(classify_object(&x, 2).unwrap(), ObjectKind::Neither);
    }

    fn chain(alg: AlgebraDesc, xs: &[Interval], lo: i32) -> Complex {
        let terms = xs.iter().map(|&x| crate::algebra::ModuleObject::single(x)).collect();
        let diffs = xs.windows(2).map(|w| ModMorphism::canonical(w[0], w[1]).unwrap()).collect();
        Complex::new(alg, lo, terms, diffs).unwrap()
    }

    #[test]
    fn period_two_orbit() {
        let a = lin(8, 4);
        let x = stalk(a, Interval::new(3, 4), 1);
        let y = chain(a, &[a.projective(3), a.projective(5), a.projective(7)], -2);
        assert!(is_isomorphic(&tau(&x, 3, Direction::Backward).unwrap(), &y).unwrap());
        assert!(is_isomorphic(&tau(&y, 3, Direction::Backward).unwrap(), &x).unwrap());
        let o = orbit(&x, 3, Direction::Forward, 10).unwrap();
        assert_eq!(o.terminal, Terminal::Periodic { period: 2, entry: 0 });
    }

    #[test]
    fn neighbouring_stalk_is_preinjective() {
        // M_{4,5}[1] is not on the periodic orbit above: τ⁻ reaches I_3[2]
        let a = lin(8, 4);
        let x = stalk(a, Interval::new(4, 5), 1);
        let o = orbit(&x, 3, Direction::Forward, 40).unwrap();
        assert_eq!(o.terminal, Terminal::ReachedInjective);
        assert_eq!(o.steps.len(), 8);
        assert_eq!(as_stalk(o.steps.last().unwrap(), 3).unwrap(), Some((a.injective(3), 2)));
    }

    #[test]
    fn p0_orbit_ends_at_last_injective() {
        let a = lin(9, 4);
        let o = orbit(&stalk(a, a.projective(0), 0), 2, Direction::Forward, 100).unwrap();
        assert_eq!(o.terminal, Terminal::ReachedInjective);
        assert_eq!(o.steps.len(), 3 * 6 + 2 + 1);
        assert_eq!(as_stalk(&o.steps[20], 2).unwrap(), Some((a.injective(8), 1)));
    }

    #[test]
    fn decomposable_input_is_rejected() {
        let a = lin(3, 2);
        let x = stalk(a, Interval::new(0, 0), 0).direct_sum(&stalk(a, Interval::new(2, 2), 0));
        assert!(matches!(tau(&x, 1, Direction::Forward), Err(Error::Precondition(_))));
    }
}
