//! Minimal projective and injective resolutions of bounded complexes.
//!
//! The projective resolution is built from the top degree down as a mapping
//! cone: at degree `p` the new projective term covers the cocycles of the
//! partial cone modulo the boundaries coming from `X^{p-1}`. Injective
//! resolutions are obtained through the duality.

use crate::algebra::{support_positions, ModMorphism, ModuleObject};
use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::linalg::{Echelon, Mat};
use crate::rep::{to_rep, vertexwise};
use crate::scalar::Q;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Projective,
    Injective,
}

pub fn resolve(x: &Complex, side: Side) -> Result<Complex> {
    match side {
        Side::Projective => projective_resolution(x),
        Side::Injective => Ok(projective_resolution(&x.dual())?.dual()),
    }
}

/// The minimal complex of projectives in the homotopy class of `x`, with a
/// shortcut when `x` already has projective terms.
pub fn projective_form(x: &Complex) -> Result<Complex> {
    if x.is_projective_complex() {
        Ok(x.minimalize())
    } else {
        projective_resolution(x)
    }
}

fn block(rows: &[&Mat], cols_per: &[usize], rows_per: &[usize]) -> Mat {
    // assemble a 2x2 block matrix from row-major blocks
    let r: usize = rows_per.iter().sum();
    let c: usize = cols_per.iter().sum();
    let mut m = Mat::zeros(r, c);
    let mut ro = 0;
    for (bi, &rh) in rows_per.iter().enumerate() {
        let mut co = 0;
        for (bj, &cw) in cols_per.iter().enumerate() {
            let b = rows[bi * cols_per.len() + bj];
            for i in 0..rh {
                for j in 0..cw {
                    m[(ro + i, co + j)] = b[(i, j)].clone();
                }
            }
            co += cw;
        }
        ro += rh;
    }
    m
}

fn projective_resolution(x: &Complex) -> Result<Complex> {
    let alg = *x.alg();
    alg.require_linear()?;
    if x.is_zero() {
        return Ok(x.clone());
    }
    let n = alg.n;
    let (lo, hi) = (x.lo(), x.hi());
    let floor = lo - (n as i32 + 2);

    // resolution terms from the top: (P^p, d_P^p : P^p -> P^{p+1}, φ^p : P^p -> X^p)
    let mut terms: Vec<ModuleObject> = Vec::new();
    let mut diffs: Vec<ModMorphism> = Vec::new();
    let mut phis: Vec<ModMorphism> = Vec::new();
    let mut p = hi;
    loop {
        if p < floor {
            return Err(Error::Internal(format!(
                "projective resolution did not terminate within {} degrees below {}",
                n + 2,
                lo
            )));
        }
        let p_up = terms.last().cloned().unwrap_or_default();
        let xp = x.term(p);
        // C^p = P^{p+1} ⊕ X^p, C^{p+1} = P^{p+2} ⊕ X^{p+1}
        let cp = p_up.concat(&xp);
        let p_up2 = if terms.len() >= 2 { terms[terms.len() - 2].clone() } else { ModuleObject::zero() };
        let xp1 = x.term(p + 1);

        let dc: Vec<Mat> = {
            let dp = diffs.last().map(vertexwise_of(&alg));
            let ph = phis.last().map(vertexwise_of(&alg));
            let dx = vertexwise(&alg, &x.diff(p));
            (0..n)
                .map(|v| {
                    let (a, b) = (p_up.dim_at(v), xp.dim_at(v));
                    let (c, d) = (p_up2.dim_at(v), xp1.dim_at(v));
                    let neg_dp = dp.as_ref().map_or_else(|| Mat::zeros(c, a), |m| m[v].scale(-Q::one()));
                    let phv = ph.as_ref().map_or_else(|| Mat::zeros(d, a), |m| m[v].clone());
                    let z = Mat::zeros(c, b);
                    block(&[&neg_dp, &z, &phv, &dx[v]], &[a, b], &[c, d])
                })
                .collect()
        };
        let boundary: Vec<Mat> = {
            let dxm = vertexwise(&alg, &x.diff(p - 1));
            (0..n)
                .map(|v| {
                    let a = p_up.dim_at(v);
                    let src = x.term(p - 1).dim_at(v);
                    block(&[&Mat::zeros(a, src), &dxm[v]], &[src], &[a, xp.dim_at(v)])
                })
                .collect()
        };

        let crep = to_rep(&alg, &cp);
        let cocycles: Vec<Mat> = dc.iter().map(|m| m.nullspace()).collect();
        // generators: per vertex from the top, vectors of Z_v outside α(Z_{v+1}) + D_v
        let mut gens: Vec<(usize, Vec<Q>)> = Vec::new();
        for v in (0..n).rev() {
            let dim = cp.dim_at(v);
            let mut ech = Echelon::new(dim);
            if v + 1 < n {
                let img = crep.arrow(v + 1).mul(&cocycles[v + 1]);
                for j in 0..img.cols() {
                    ech.insert(&img.col(j));
                }
            }
            for j in 0..boundary[v].cols() {
                ech.insert(&boundary[v].col(j));
            }
            for j in 0..cocycles[v].cols() {
                let z = cocycles[v].col(j);
                if ech.insert(&z) {
                    gens.push((v, z));
                }
            }
        }

        if p < lo && gens.is_empty() {
            break;
        }

        let new_term = ModuleObject::raw(gens.iter().map(|(v, _)| alg.projective(*v)).collect());
        let (g_up, g_x) = generator_maps(&new_term, &gens, &p_up, &xp);
        terms.push(new_term);
        diffs.push(g_up.scale(-Q::one()));
        phis.push(g_x);
        p -= 1;
    }

    // Both lists were filled from degree `hi` downwards. The first pushed
    // differential maps P^hi into the zero term above it and is dropped.
    terms.reverse();
    diffs.reverse();
    diffs.pop();
    let lo_p = hi - terms.len() as i32 + 1;
    Ok(Complex::from_parts_unchecked(alg, lo_p, terms, diffs).minimalize())
}

fn vertexwise_of(alg: &crate::algebra::AlgebraDesc) -> impl Fn(&ModMorphism) -> Vec<Mat> + '_ {
    move |f| vertexwise(alg, f)
}

/// Splits the map `⊕ P_v -> P^{p+1} ⊕ X^p` sending each top generator to the
/// chosen vector into its two components.
fn generator_maps(
    src: &ModuleObject,
    gens: &[(usize, Vec<Q>)],
    p_up: &ModuleObject,
    xp: &ModuleObject,
) -> (ModMorphism, ModMorphism) {
    let mut e_up = Mat::zeros(p_up.len(), src.len());
    let mut e_x = Mat::zeros(xp.len(), src.len());
    for (s, (v, z)) in gens.iter().enumerate() {
        let pos_up = support_positions(p_up, *v);
        let off = p_up.dim_at(*v);
        let pos_x = support_positions(xp, *v);
        for (t, &pos) in pos_up.iter().enumerate() {
            if pos != usize::MAX {
                e_up[(t, s)] = z[pos].clone();
            }
        }
        for (t, &pos) in pos_x.iter().enumerate() {
            if pos != usize::MAX {
                e_x[(t, s)] = z[off + pos].clone();
            }
        }
    }
    (
        ModMorphism::new_unchecked(src.clone(), p_up.clone(), e_up),
        ModMorphism::new_unchecked(src.clone(), xp.clone(), e_x),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{AlgebraDesc, Interval};

    fn lin(n: usize, l: usize) -> AlgebraDesc {
        AlgebraDesc::linear(n, l).unwrap()
    }

    fn chain(alg: AlgebraDesc, xs: &[Interval], signs: &[i64]) -> Complex {
        let terms: Vec<ModuleObject> = xs.iter().map(|&x| ModuleObject::single(x)).collect();
        let diffs = (0..xs.len() - 1)
            .map(|k| ModMorphism::canonical(xs[k], xs[k + 1]).unwrap().scale(Q::from_int(signs[k])))
            .collect();
        Complex::new(alg, -(xs.len() as i32) + 1, terms, diffs).unwrap()
    }

    #[test]
    fn resolution_of_interval_module() {
        let a = lin(9, 3);
        let m = Complex::stalk_interval(a, Interval::new(4, 5), 0);
        let p = resolve(&m, Side::Projective).unwrap();
        let shape: Vec<ModuleObject> = p.terms().to_vec();
        let want: Vec<ModuleObject> =
            [0, 2, 3, 5].iter().map(|&i| ModuleObject::single(a.projective(i))).collect();
        assert_eq!(shape, want);
        assert_eq!(p.lo(), -3);
        for q in -3..=0 {
            assert_eq!(p.cohomology(q).unwrap(), m.cohomology(q).unwrap());
        }

        let i = resolve(&m, Side::Injective).unwrap();
        let want: Vec<ModuleObject> =
            [4, 6, 7].iter().map(|&k| ModuleObject::single(a.injective(k))).collect();
        assert_eq!(i.terms().to_vec(), want);
        assert_eq!(i.lo(), 0);
    }

    #[test]
    fn projectives_resolve_to_themselves() {
        let a = lin(9, 3);
        for k in 0..9 {
            let p = Complex::stalk_interval(a, a.projective(k), 0);
            assert_eq!(resolve(&p, Side::Projective).unwrap(), p);
        }
        let x = chain(a, &[a.projective(3), a.projective(5)], &[1]);
        assert_eq!(resolve(&x, Side::Projective).unwrap(), x);
    }

    #[test]
    fn resolution_of_mixed_complex() {
        // [I_0 -> P_8] over Λ(9,6)
        let a = lin(9, 6);
        let x = chain(a, &[a.injective(0), a.projective(8)], &[1]);
        let p = resolve(&x, Side::Projective).unwrap();
        assert!(p.is_projective_complex() && p.is_minimal());
        for q in -4..=1 {
            assert_eq!(p.cohomology_dims(q), x.cohomology_dims(q), "degree {q}");
        }
    }
}
