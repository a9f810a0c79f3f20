//! Explicit representations of Λ(n,l) and the vertexwise linear algebra used
//! to compute kernels, images and cokernels of module maps.

use crate::algebra::{support_positions, AlgebraDesc, Interval, ModMorphism, ModuleObject};
use crate::error::{Error, Result};
use crate::linalg::{Echelon, Mat};
use crate::scalar::Q;

/// A representation: a vector space at each vertex and a matrix for each
/// arrow `v -> v-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepForm {
    pub dims: Vec<usize>,
    /// `arrows[v - 1]` is the map at vertex `v` into vertex `v - 1`,
    /// a `dims[v-1] × dims[v]` matrix.
    pub arrows: Vec<Mat>,
}

impl RepForm {
    pub fn new(dims: Vec<usize>, arrows: Vec<Mat>) -> Result<Self> {
        if dims.is_empty() || arrows.len() + 1 != dims.len() {
            return Err(Error::MalformedRep(format!(
                "{} vertices need {} arrow matrices, got {}",
                dims.len(),
                dims.len().saturating_sub(1),
                arrows.len()
            )));
        }
        for (k, a) in arrows.iter().enumerate() {
            if a.rows() != dims[k] || a.cols() != dims[k + 1] {
                return Err(Error::MalformedRep(format!(
                    "arrow {} -> {} is {}x{}, expected {}x{}",
                    k + 1,
                    k,
                    a.rows(),
                    a.cols(),
                    dims[k],
                    dims[k + 1]
                )));
            }
        }
        Ok(RepForm { dims, arrows })
    }

    pub fn n(&self) -> usize {
        self.dims.len()
    }

    /// The arrow out of vertex `v >= 1`.
    pub fn arrow(&self, v: usize) -> &Mat {
        &self.arrows[v - 1]
    }

    /// The path of length `k` starting at `v`, landing in `v - k`.
    pub fn path(&self, v: usize, k: usize) -> Mat {
        let mut m = Mat::identity(self.dims[v]);
        for j in 0..k {
            m = self.arrow(v - j).mul(&m);
        }
        m
    }

    pub fn check_relations(&self, l: usize) -> Result<()> {
        let n = self.n();
        if l >= n {
            return Ok(());
        }
        for v in l..n {
            if !self.path(v, l).is_zero() {
                return Err(Error::MalformedRep(format!(
                    "path of length {l} from vertex {v} is nonzero"
                )));
            }
        }
        Ok(())
    }
}

/// The canonical representation of a direct sum of intervals: at each vertex
/// the basis is the summands containing it, in summand order.
pub fn to_rep(desc: &AlgebraDesc, x: &ModuleObject) -> RepForm {
    let n = desc.n;
    let dims: Vec<usize> = (0..n).map(|v| x.dim_at(v)).collect();
    let pos: Vec<Vec<usize>> = (0..n).map(|v| support_positions(x, v)).collect();
    let mut arrows = Vec::with_capacity(n.saturating_sub(1));
    for v in 1..n {
        let mut a = Mat::zeros(dims[v - 1], dims[v]);
        for (i, s) in x.summands().iter().enumerate() {
            if s.contains(v) && s.contains(v - 1) {
                a[(pos[v - 1][i], pos[v][i])] = Q::one();
            }
        }
        arrows.push(a);
    }
    RepForm { dims, arrows }
}

/// A decomposition into intervals together with an explicit isomorphism.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub object: ModuleObject,
    /// `basis[v]`: columns are the images of the canonical basis of `object`
    /// at `v`, written in the coordinates of the input representation.
    pub basis: Vec<Mat>,
}

impl Decomposition {
    pub fn multiplicities(&self) -> Vec<(Interval, usize)> {
        let mut out: Vec<(Interval, usize)> = Vec::new();
        for &s in self.object.summands() {
            match out.last_mut() {
                Some((x, c)) if *x == s => *c += 1,
                _ => out.push((s, 1)),
            }
        }
        out
    }

    /// Inverse isomorphism, input coordinates to canonical coordinates.
    pub fn inverse(&self) -> Vec<Mat> {
        self.basis
            .iter()
            .map(|b| b.inverse().expect("decomposition basis is invertible"))
            .collect()
    }
}

/// Splits a representation into interval modules.
///
/// Vertices are processed from the top down. Chains started at higher
/// vertices arrive as images; new generators at `v` are chosen so that the
/// full basis at `v` is adapted to the flag `ker α ⊂ ker α² ⊂ …`, which makes
/// the images of the long chains independent at the next vertex.
pub fn decompose(desc: &AlgebraDesc, r: &RepForm) -> Result<Decomposition> {
    let n = r.n();
    if n != desc.n {
        return Err(Error::MalformedRep(format!("{} vertices for {}", n, desc)));
    }
    r.check_relations(desc.l)?;

    // intervals[id] = (a, b); chains[v] = (vector, id)
    let mut intervals: Vec<Interval> = Vec::new();
    let mut chains: Vec<Vec<(Vec<Q>, usize)>> = vec![Vec::new(); n];
    for v in (0..n).rev() {
        let dim = r.dims[v];
        let mut incoming: Vec<(Vec<Q>, usize, usize)> = Vec::new();
        if v + 1 < n {
            let a = r.arrow(v + 1);
            for (x, id) in &chains[v + 1] {
                let iv = intervals[*id];
                if iv.a <= v {
                    incoming.push((a.mul_vec(x), *id, v - iv.a + 1));
                }
            }
        }
        let maxk = desc.l.min(v + 1);
        let mut ech = Echelon::new(dim);
        let mut here: Vec<(Vec<Q>, usize)> = Vec::new();
        for k in 1..=maxk {
            for (x, id, len) in &incoming {
                if *len == k {
                    if !ech.insert(x) {
                        return Err(Error::Internal(format!(
                            "chain images dependent at vertex {v}"
                        )));
                    }
                    here.push((x.clone(), *id));
                }
            }
            if ech.len() == dim {
                continue;
            }
            let kernel = if k > v { Mat::identity(dim) } else { r.path(v, k).nullspace() };
            for j in 0..kernel.cols() {
                let x = kernel.col(j);
                if ech.insert(&x) {
                    intervals.push(Interval::new(v + 1 - k, v));
                    here.push((x, intervals.len() - 1));
                }
            }
        }
        if incoming.iter().any(|(_, _, len)| *len > maxk) || here.len() != dim {
            return Err(Error::MalformedRep(format!(
                "vertex {v}: found {} basis vectors for dimension {dim}",
                here.len()
            )));
        }
        chains[v] = here;
    }

    let mut order: Vec<usize> = (0..intervals.len()).collect();
    order.sort_by_key(|&id| (intervals[id], id));
    let mut rank_of = vec![0; intervals.len()];
    for (k, &id) in order.iter().enumerate() {
        rank_of[id] = k;
    }
    let object = ModuleObject::new(order.iter().map(|&id| intervals[id]).collect());
    let basis = (0..n)
        .map(|v| {
            let mut cols: Vec<(usize, Vec<Q>)> =
                chains[v].iter().map(|(x, id)| (rank_of[*id], x.clone())).collect();
            cols.sort_by_key(|(k, _)| *k);
            let cols: Vec<Vec<Q>> = cols.into_iter().map(|(_, x)| x).collect();
            Mat::from_cols(r.dims[v], &cols)
        })
        .collect();
    Ok(Decomposition { object, basis })
}

/// Vertexwise matrices of a module map.
pub fn vertexwise(desc: &AlgebraDesc, f: &ModMorphism) -> Vec<Mat> {
    (0..desc.n).map(|v| f.at_vertex(v)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Which {
    Kernel,
    Cokernel,
    Image,
}

/// Kernel (with inclusion), image (with inclusion into the target) or
/// cokernel (with projection), in canonical interval form.
pub fn kernel_cokernel(
    desc: &AlgebraDesc,
    f: &ModMorphism,
    which: Which,
) -> Result<(ModuleObject, ModMorphism)> {
    desc.require_linear()?;
    let n = desc.n;
    let fv = vertexwise(desc, f);
    match which {
        Which::Kernel => {
            let xr = to_rep(desc, &f.source);
            let sub: Vec<Mat> = fv.iter().map(|m| m.nullspace()).collect();
            let (obj, incl) = subrep(desc, &xr, &sub)?;
            Ok((obj.clone(), ModMorphism::from_vertexwise(obj, f.source.clone(), &incl)))
        }
        Which::Image => {
            let yr = to_rep(desc, &f.target);
            let sub: Vec<Mat> = fv.iter().map(|m| m.colspace()).collect();
            let (obj, incl) = subrep(desc, &yr, &sub)?;
            Ok((obj.clone(), ModMorphism::from_vertexwise(obj, f.target.clone(), &incl)))
        }
        Which::Cokernel => {
            let yr = to_rep(desc, &f.target);
            let sub: Vec<Mat> = fv.iter().map(|m| m.colspace()).collect();
            let mut comp = Vec::with_capacity(n);
            let mut proj = Vec::with_capacity(n);
            for v in 0..n {
                let (c, p) = complement(&sub[v], yr.dims[v]);
                comp.push(c);
                proj.push(p);
            }
            let dims: Vec<usize> = comp.iter().map(|c| c.cols()).collect();
            let arrows: Vec<Mat> =
                (1..n).map(|v| proj[v - 1].mul(&yr.arrow(v).mul(&comp[v]))).collect();
            let q = RepForm::new(dims, arrows)?;
            let dec = decompose(desc, &q)?;
            let inv = dec.inverse();
            let mats: Vec<Mat> = (0..n).map(|v| inv[v].mul(&proj[v])).collect();
            let obj = dec.object.clone();
            Ok((obj.clone(), ModMorphism::from_vertexwise(f.target.clone(), obj, &mats)))
        }
    }
}

/// Restricts `r` to the subspaces spanned by the columns of `sub[v]`, which
/// must form a subrepresentation. Returns the canonical form and the
/// vertexwise inclusion matrices.
pub(crate) fn subrep(
    desc: &AlgebraDesc,
    r: &RepForm,
    sub: &[Mat],
) -> Result<(ModuleObject, Vec<Mat>)> {
    let n = r.n();
    let dims: Vec<usize> = sub.iter().map(|s| s.cols()).collect();
    let mut arrows = Vec::with_capacity(n.saturating_sub(1));
    for v in 1..n {
        let img = r.arrow(v).mul(&sub[v]);
        let c = sub[v - 1]
            .solve(&img)
            .ok_or_else(|| Error::Internal(format!("subspace not closed under arrow at {v}")))?;
        arrows.push(c);
    }
    let s = RepForm::new(dims, arrows)?;
    let dec = decompose(desc, &s)?;
    let incl: Vec<Mat> = (0..n).map(|v| sub[v].mul(&dec.basis[v])).collect();
    Ok((dec.object, incl))
}

/// Complement of the column space of `s` in `Q^dim` spanned by standard
/// basis vectors, and the quotient coordinate map `Q^dim -> Q^dim / span(s)`.
fn complement(s: &Mat, dim: usize) -> (Mat, Mat) {
    let mut ech = Echelon::new(dim);
    for j in 0..s.cols() {
        ech.insert(&s.col(j));
    }
    let mut picked = Vec::new();
    for i in 0..dim {
        let mut e = vec![Q::zero(); dim];
        e[i] = Q::one();
        if ech.insert(&e) {
            picked.push(i);
        }
    }
    let c = Mat::identity(dim).select_cols(&picked);
    let full = s.hstack(&c);
    let inv = full.inverse().expect("basis plus complement is invertible");
    let rows: Vec<usize> = (s.cols()..dim).collect();
    (c, inv.select_rows(&rows))
}

/// `h` with `incl ∘ h = g`, assuming the image of `g` lies in that of `incl`.
pub fn lift_through_mono(
    desc: &AlgebraDesc,
    incl: &ModMorphism,
    g: &ModMorphism,
) -> Result<ModMorphism> {
    let iv = vertexwise(desc, incl);
    let gv = vertexwise(desc, g);
    let mut h = Vec::with_capacity(desc.n);
    for v in 0..desc.n {
        h.push(
            iv[v]
                .solve(&gv[v])
                .ok_or_else(|| Error::Internal(format!("map does not factor at vertex {v}")))?,
        );
    }
    Ok(ModMorphism::from_vertexwise(g.source.clone(), incl.source.clone(), &h))
}

/// `h` with `h ∘ proj = g`, assuming `g` vanishes on the kernel of `proj`.
pub fn factor_through_epi(
    desc: &AlgebraDesc,
    proj: &ModMorphism,
    g: &ModMorphism,
) -> Result<ModMorphism> {
    let pv = vertexwise(desc, proj);
    let gv = vertexwise(desc, g);
    let mut h = Vec::with_capacity(desc.n);
    for v in 0..desc.n {
        let p = &pv[v];
        let right = p
            .solve(&Mat::identity(p.rows()))
            .ok_or_else(|| Error::Internal(format!("projection not onto at vertex {v}")))?;
        let hv = gv[v].mul(&right);
        if hv.mul(p) != gv[v] {
            return Err(Error::Internal(format!("map does not vanish on kernel at vertex {v}")));
        }
        h.push(hv);
    }
    Ok(ModMorphism::from_vertexwise(proj.target.clone(), g.target.clone(), &h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{compose, hom_exists};
    use proptest::prelude::*;

    fn lin(n: usize, l: usize) -> AlgebraDesc {
        AlgebraDesc::linear(n, l).unwrap()
    }

    fn iv(a: usize, b: usize) -> Interval {
        Interval::new(a, b)
    }

    /// Dimension of the space of vertexwise maps between two canonical
    /// representations that commute with the arrows.
    fn brute_hom_dim(desc: &AlgebraDesc, x: &ModuleObject, y: &ModuleObject) -> usize {
        let xr = to_rep(desc, x);
        let yr = to_rep(desc, y);
        let n = desc.n;
        let mut offs = vec![0];
        for v in 0..n {
            offs.push(offs[v] + xr.dims[v] * yr.dims[v]);
        }
        let nvars = offs[n];
        let mut eqs: Vec<Vec<Q>> = Vec::new();
        for v in 1..n {
            // φ_{v-1} α_x = α_y φ_v
            let (ax, ay) = (xr.arrow(v), yr.arrow(v));
            for i in 0..yr.dims[v - 1] {
                for j in 0..xr.dims[v] {
                    let mut row = vec![Q::zero(); nvars];
                    for k in 0..xr.dims[v - 1] {
                        row[offs[v - 1] + i * xr.dims[v - 1] + k] += &ax[(k, j)];
                    }
                    for k in 0..yr.dims[v] {
                        row[offs[v] + k * xr.dims[v] + j] -= &ay[(i, k)];
                    }
                    eqs.push(row);
                }
            }
        }
        if eqs.is_empty() {
            return nvars;
        }
        nvars - Mat::from_rows(&eqs).rank()
    }

    #[test]
    fn hom_criterion_matches_brute_force() {
        for n in 2..=6 {
            for l in 2..=n + 1 {
                let d = lin(n, l);
                for &x in &d.intervals() {
                    for &y in &d.intervals() {
                        let dim = brute_hom_dim(&d, &ModuleObject::single(x), &ModuleObject::single(y));
                        assert!(dim <= 1);
                        assert_eq!(dim == 1, hom_exists(x, y), "{x} -> {y} over {d}");
                    }
                }
            }
        }
    }

    #[test]
    fn decompose_two_intervals() {
        let d = lin(3, 2);
        // dims (1,2,1): α_1 = [1 0], α_2 = [0;1]
        let r = RepForm::new(
            vec![1, 2, 1],
            vec![Mat::from_ints(1, 2, &[1, 0]), Mat::from_ints(2, 1, &[0, 1])],
        )
        .unwrap();
        let dec = decompose(&d, &r).unwrap();
        assert_eq!(dec.object, ModuleObject::new(vec![iv(0, 1), iv(1, 2)]));
        // rank-formula oracle
        assert_eq!(rank_formula(&r, 3), vec![(iv(0, 1), 1), (iv(1, 2), 1)]);
    }

    #[test]
    fn decompose_simples_and_single() {
        let d = lin(3, 2);
        let r = RepForm::new(vec![1, 1, 0], vec![Mat::zeros(1, 1), Mat::zeros(1, 0)]).unwrap();
        let dec = decompose(&d, &r).unwrap();
        assert_eq!(dec.object, ModuleObject::new(vec![iv(0, 0), iv(1, 1)]));
        let x = ModuleObject::single(iv(1, 2));
        let dec = decompose(&d, &to_rep(&d, &x)).unwrap();
        assert_eq!(dec.multiplicities(), vec![(iv(1, 2), 1)]);
    }

    #[test]
    fn decompose_rejects_relation_violation() {
        let d = lin(3, 2);
        let r = RepForm::new(
            vec![1, 1, 1],
            vec![Mat::from_ints(1, 1, &[1]), Mat::from_ints(1, 1, &[1])],
        )
        .unwrap();
        assert!(matches!(decompose(&d, &r), Err(Error::MalformedRep(_))));
    }

    #[test]
    fn kernel_image_cokernel_examples() {
        let d = lin(3, 2);
        let f = ModMorphism::canonical(iv(0, 1), iv(1, 2)).unwrap();
        let (k, _) = kernel_cokernel(&d, &f, Which::Kernel).unwrap();
        let (i, _) = kernel_cokernel(&d, &f, Which::Image).unwrap();
        let (c, _) = kernel_cokernel(&d, &f, Which::Cokernel).unwrap();
        assert_eq!(k, ModuleObject::single(iv(0, 0)));
        assert_eq!(i, ModuleObject::single(iv(1, 1)));
        assert_eq!(c, ModuleObject::single(iv(2, 2)));

        let id = ModMorphism::identity(ModuleObject::single(iv(0, 1)));
        assert!(kernel_cokernel(&d, &id, Which::Kernel).unwrap().0.is_zero());

        let d = lin(9, 3);
        let epi = ModMorphism::canonical(iv(3, 5), iv(4, 5)).unwrap();
        let (k, incl) = kernel_cokernel(&d, &epi, Which::Kernel).unwrap();
        assert_eq!(k, ModuleObject::single(iv(3, 3)));
        assert!(compose(&epi, &incl).unwrap().is_zero());
    }

    /// Multiplicities of intervals from ranks of path maps:
    /// m_{a,b} = r_{a,b} − r_{a−1,b} − r_{a,b+1} + r_{a−1,b+1}, where r_{a,b}
    /// is the rank of the path from b down to a.
    fn rank_formula(r: &RepForm, l: usize) -> Vec<(Interval, usize)> {
        let n = r.n();
        let rk = |a: isize, b: isize| -> i64 {
            if a < 0 || b >= n as isize || a > b {
                return 0;
            }
            let (a, b) = (a as usize, b as usize);
            r.path(b, b - a).rank() as i64
        };
        let mut out = Vec::new();
        for a in 0..n as isize {
            for b in a..(n as isize).min(a + l as isize) {
                let m = rk(a, b) - rk(a - 1, b) - rk(a, b + 1) + rk(a - 1, b + 1);
                if m > 0 {
                    out.push((iv(a as usize, b as usize), m as usize));
                }
            }
        }
        out
    }

    fn random_rep(n: usize, l: usize) -> impl Strategy<Value = (usize, RepForm)> {
        // random direct sum of intervals, then a random change of basis
        let d = lin(n, l);
        let ints = d.intervals();
        let k = ints.len();
        (proptest::collection::vec(0..k, 0..6), proptest::collection::vec(-2i64..=2, 64))
            .prop_map(move |(picks, noise)| {
                let obj = ModuleObject::new(picks.iter().map(|&i| ints[i]).collect());
                let r = to_rep(&d, &obj);
                let mut it = noise.into_iter().cycle();
                let changes: Vec<Mat> = r
                    .dims
                    .iter()
                    .map(|&dim| {
                        // unitriangular, hence invertible
                        let mut m = Mat::identity(dim);
                        for i in 0..dim {
                            for j in (i + 1)..dim {
                                m[(i, j)] = Q::from_int(it.next().unwrap());
                            }
                        }
                        m
                    })
                    .collect();
                let arrows = (1..n)
                    .map(|v| {
                        let inv = changes[v].inverse().unwrap();
                        changes[v - 1].mul(&r.arrow(v).mul(&inv))
                    })
                    .collect();
                (l, RepForm::new(r.dims.clone(), arrows).unwrap())
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn decompose_agrees_with_rank_formula((l, r) in (2usize..6, 2usize..4).prop_flat_map(|(n, l)| random_rep(n, l))) {
            let n = r.n();
            let d = lin(n, l);
            let dec = decompose(&d, &r).unwrap();
            prop_assert_eq!(dec.multiplicities(), rank_formula(&r, l));
            // explicit iso: the basis carries canonical arrows to the given ones
            let c = to_rep(&d, &dec.object);
            for v in 1..n {
                prop_assert_eq!(r.arrow(v).mul(&dec.basis[v]), dec.basis[v - 1].mul(c.arrow(v)));
            }
        }

        #[test]
        fn kernel_image_cokernel_dimensions(
            (n, picks_x, picks_y, coeffs) in (3usize..6).prop_flat_map(|n| (
                Just(n),
                proptest::collection::vec(0usize..100, 1..4),
                proptest::collection::vec(0usize..100, 1..4),
                proptest::collection::vec(-2i64..=2, 16),
            ))
        ) {
            let d = lin(n, 3);
            let ints = d.intervals();
            let x = ModuleObject::new(picks_x.iter().map(|&i| ints[i % ints.len()]).collect());
            let y = ModuleObject::new(picks_y.iter().map(|&i| ints[i % ints.len()]).collect());
            let mut e = Mat::zeros(y.len(), x.len());
            let mut it = coeffs.into_iter().cycle();
            for t in 0..y.len() {
                for s in 0..x.len() {
                    if hom_exists(x.summands()[s], y.summands()[t]) {
                        e[(t, s)] = Q::from_int(it.next().unwrap());
                    }
                }
            }
            let f = ModMorphism::new(x.clone(), y.clone(), e).unwrap();
            let (k, ki) = kernel_cokernel(&d, &f, Which::Kernel).unwrap();
            let (i, _) = kernel_cokernel(&d, &f, Which::Image).unwrap();
            let (c, cp) = kernel_cokernel(&d, &f, Which::Cokernel).unwrap();
            for v in 0..n {
                prop_assert_eq!(k.dim_at(v) + i.dim_at(v), x.dim_at(v));
                prop_assert_eq!(i.dim_at(v) + c.dim_at(v), y.dim_at(v));
            }
            prop_assert!(compose(&f, &ki).unwrap().is_zero());
            prop_assert!(compose(&cp, &f).unwrap().is_zero());
            prop_assert_eq!(decompose(&d, &to_rep(&d, &x)).unwrap().object, x);
        }
    }
}
