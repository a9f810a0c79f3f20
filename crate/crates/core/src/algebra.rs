//! Interval combinatorics for the linear algebras Λ(n,l) and descriptors for
//! their cyclic cousins Δ(n,l).
//!
//! Vertices of Λ(n,l) are `0..n`, arrows go `i -> i-1`, and every path of
//! length `l` is zero. Indecomposable modules are intervals `M_{a,b}` with
//! socle at `a`, top at `b` and `b - a + 1 <= l`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::scalar::Q;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    Linear,
    Cyclic,
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::Linear => write!(f, "linear"),
            Shape::Cyclic => write!(f, "cyclic"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AlgebraDesc {
    pub shape: Shape,
    pub n: usize,
    pub l: usize,
}

pub fn make_algebra(shape: Shape, n: usize, l: usize) -> Result<AlgebraDesc> {
    if l < 2 {
        return Err(Error::Parameter(format!("relation length l={l} must be at least 2")));
    }
    match shape {
        Shape::Linear if n < 2 => {
            Err(Error::Parameter(format!("linear algebra needs n >= 2 vertices, got {n}")))
        }
        Shape::Cyclic if n < 1 => Err(Error::Parameter("cyclic algebra needs n >= 1".into())),
        _ => Ok(AlgebraDesc { shape, n, l }),
    }
}

impl AlgebraDesc {
    pub fn linear(n: usize, l: usize) -> Result<Self> {
        make_algebra(Shape::Linear, n, l)
    }

    pub fn cyclic(n: usize, l: usize) -> Result<Self> {
        make_algebra(Shape::Cyclic, n, l)
    }

    /// No path of length `l` exists, so the algebra is the path algebra of A_n.
    pub fn is_hereditary(&self) -> bool {
        self.shape == Shape::Linear && self.l >= self.n
    }

    pub(crate) fn require_linear(&self) -> Result<()> {
        if self.shape == Shape::Linear {
            Ok(())
        } else {
            Err(Error::Precondition("operation needs a linear Nakayama algebra".into()))
        }
    }

    fn check_vertex(&self, i: usize) -> Result<()> {
        if i < self.n {
            Ok(())
        } else {
            Err(Error::OutOfRange { what: "vertex", index: i as i64 })
        }
    }

    pub fn projective(&self, i: usize) -> Interval {
        debug_assert!(i < self.n);
        Interval::new((i + 1).saturating_sub(self.l), i)
    }

    pub fn injective(&self, i: usize) -> Interval {
        debug_assert!(i < self.n);
        Interval::new(i, (i + self.l - 1).min(self.n - 1))
    }

    pub fn simple(&self, i: usize) -> Interval {
        Interval::new(i, i)
    }

    pub fn is_projective(&self, x: Interval) -> bool {
        self.projective(x.b) == x
    }

    pub fn is_injective(&self, x: Interval) -> bool {
        self.injective(x.a) == x
    }

    pub fn is_valid(&self, x: Interval) -> bool {
        x.a <= x.b && x.b < self.n && x.len() <= self.l
    }

    /// All indecomposable modules, in canonical order.
    pub fn intervals(&self) -> Vec<Interval> {
        let mut v = Vec::new();
        for a in 0..self.n {
            for b in a..self.n.min(a + self.l) {
                v.push(Interval::new(a, b));
            }
        }
        v
    }

    /// Duality onto the opposite algebra, which is again Λ(n,l) after
    /// reversing the vertex order.
    pub fn dual(&self, x: Interval) -> Interval {
        Interval::new(self.n - 1 - x.b, self.n - 1 - x.a)
    }
}

impl fmt::Display for AlgebraDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.shape {
            Shape::Linear => write!(f, "Λ({},{})", self.n, self.l),
            Shape::Cyclic => write!(f, "Δ({},{})", self.n, self.l),
        }
    }
}

/// The interval module `M_{a,b}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Interval {
    pub a: usize,
    pub b: usize,
}

impl Interval {
    pub const fn new(a: usize, b: usize) -> Self {
        Interval { a, b }
    }

    pub fn len(&self) -> usize {
        self.b - self.a + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, v: usize) -> bool {
        self.a <= v && v <= self.b
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M{},{}", self.a, self.b)
    }
}

/// Whether `Hom(x, y)` is nonzero. It is then one-dimensional, spanned by the
/// map that is the identity on the vertices `y.a..=x.b`.
#[inline]
pub fn hom_exists(x: Interval, y: Interval) -> bool {
    x.a <= y.a && y.a <= x.b && x.b <= y.b
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BasisHom {
    pub source: Interval,
    pub target: Interval,
}

impl BasisHom {
    pub fn image(&self) -> Interval {
        Interval::new(self.target.a, self.source.b)
    }
}

pub fn hom_basis(x: Interval, y: Interval) -> Option<BasisHom> {
    hom_exists(x, y).then_some(BasisHom { source: x, target: y })
}

/// A finite direct sum of interval modules.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModuleObject {
    summands: Vec<Interval>,
}

impl ModuleObject {
    pub fn zero() -> Self {
        ModuleObject { summands: Vec::new() }
    }

    pub fn new(mut summands: Vec<Interval>) -> Self {
        summands.sort();
        ModuleObject { summands }
    }

    pub fn single(x: Interval) -> Self {
        ModuleObject { summands: vec![x] }
    }

    /// Keeps the given order. Used for intermediate objects whose summand
    /// order is tied to an existing matrix layout.
    pub(crate) fn raw(summands: Vec<Interval>) -> Self {
        ModuleObject { summands }
    }

    /// Sorted copy together with `perm[old] = new` positions.
    pub fn canonical(&self) -> (ModuleObject, Vec<usize>) {
        let mut idx: Vec<usize> = (0..self.summands.len()).collect();
        idx.sort_by_key(|&i| (self.summands[i], i));
        let mut perm = vec![0; idx.len()];
        for (new, &old) in idx.iter().enumerate() {
            perm[old] = new;
        }
        let summands = idx.iter().map(|&i| self.summands[i]).collect();
        (ModuleObject { summands }, perm)
    }

    pub fn is_canonical(&self) -> bool {
        self.summands.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn summands(&self) -> &[Interval] {
        &self.summands
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_zero(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn dimvec(&self, n: usize) -> Vec<usize> {
        let mut d = vec![0; n];
        for s in &self.summands {
            for v in s.a..=s.b {
                d[v] += 1;
            }
        }
        d
    }

    pub fn dim_at(&self, v: usize) -> usize {
        self.summands.iter().filter(|s| s.contains(v)).count()
    }

    pub fn total_dim(&self) -> usize {
        self.summands.iter().map(|s| s.len()).sum()
    }

    /// Direct sum keeping `self` summands first.
    pub fn concat(&self, other: &ModuleObject) -> ModuleObject {
        let mut s = self.summands.clone();
        s.extend_from_slice(&other.summands);
        ModuleObject { summands: s }
    }

    pub fn direct_sum(&self, other: &ModuleObject) -> ModuleObject {
        ModuleObject::new(self.concat(other).summands)
    }
}

impl fmt::Display for ModuleObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return write!(f, "0");
        }
        for (i, s) in self.summands.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// A morphism between direct sums, written in the canonical hom bases.
/// `entries[(t, s)]` is the coefficient of the basis map `source[s] -> target[t]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModMorphism {
    pub source: ModuleObject,
    pub target: ModuleObject,
    pub entries: Mat,
}

impl ModMorphism {
    pub fn zero(source: ModuleObject, target: ModuleObject) -> Self {
        let entries = Mat::zeros(target.len(), source.len());
        ModMorphism { source, target, entries }
    }

    pub fn identity(x: ModuleObject) -> Self {
        let entries = Mat::identity(x.len());
        ModMorphism { source: x.clone(), target: x, entries }
    }

    /// Builds a morphism, rejecting entries where no basis hom exists.
    pub fn new(source: ModuleObject, target: ModuleObject, entries: Mat) -> Result<Self> {
        if entries.rows() != target.len() || entries.cols() != source.len() {
            return Err(Error::Shape(format!(
                "{}x{} matrix for {} -> {}",
                entries.rows(),
                entries.cols(),
                source,
                target
            )));
        }
        let f = ModMorphism { source, target, entries };
        f.check_support()?;
        Ok(f)
    }

    pub(crate) fn new_unchecked(source: ModuleObject, target: ModuleObject, entries: Mat) -> Self {
        debug_assert_eq!(entries.rows(), target.len());
        debug_assert_eq!(entries.cols(), source.len());
        ModMorphism { source, target, entries }
    }

    fn check_support(&self) -> Result<()> {
        for (t, &y) in self.target.summands().iter().enumerate() {
            for (s, &x) in self.source.summands().iter().enumerate() {
                if !self.entries[(t, s)].is_zero() && !hom_exists(x, y) {
                    return Err(Error::Shape(format!("nonzero entry for {x} -> {y} with no hom")));
                }
            }
        }
        Ok(())
    }

    /// The single canonical basis map between two intervals.
    pub fn canonical(x: Interval, y: Interval) -> Option<Self> {
        hom_exists(x, y).then(|| ModMorphism {
            source: ModuleObject::single(x),
            target: ModuleObject::single(y),
            entries: Mat::from_ints(1, 1, &[1]),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_zero()
    }

    pub fn get(&self, t: usize, s: usize) -> Q {
        self.entries[(t, s)].clone()
    }

    pub fn scale(&self, c: Q) -> ModMorphism {
        ModMorphism { entries: self.entries.scale(c), ..self.clone() }
    }

    pub fn add(&self, other: &ModMorphism) -> Result<ModMorphism> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::Shape("sum of morphisms with different endpoints".into()));
        }
        Ok(ModMorphism { entries: self.entries.add(&other.entries), ..self.clone() })
    }

    /// Re-express this morphism after putting source and target in canonical
    /// summand order.
    pub fn canonicalized(&self) -> ModMorphism {
        let (src, sp) = self.source.canonical();
        let (tgt, tp) = self.target.canonical();
        let mut e = Mat::zeros(tgt.len(), src.len());
        for t in 0..self.target.len() {
            for s in 0..self.source.len() {
                e[(tp[t], sp[s])] = self.entries[(t, s)].clone();
            }
        }
        ModMorphism { source: src, target: tgt, entries: e }
    }

    /// Vertexwise matrix at `v`: rows index target summands containing `v`,
    /// columns source summands containing `v`, both in summand order.
    pub fn at_vertex(&self, v: usize) -> Mat {
        let src: Vec<usize> = support_indices(&self.source, v);
        let tgt: Vec<usize> = support_indices(&self.target, v);
        let mut m = Mat::zeros(tgt.len(), src.len());
        for (i, &t) in tgt.iter().enumerate() {
            for (j, &s) in src.iter().enumerate() {
                // the canonical map is the identity on y.a..=x.b, which contains v
                // whenever the hom exists and v lies in both supports
                m[(i, j)] = self.entries[(t, s)].clone();
            }
        }
        m
    }

    /// Inverse of [`ModMorphism::at_vertex`]: recovers hom-basis coefficients
    /// from a family of vertexwise matrices describing a module map.
    pub fn from_vertexwise(source: ModuleObject, target: ModuleObject, mats: &[Mat]) -> Self {
        let mut e = Mat::zeros(target.len(), source.len());
        let n = mats.len();
        let pos_src: Vec<Vec<usize>> = (0..n).map(|v| support_positions(&source, v)).collect();
        let pos_tgt: Vec<Vec<usize>> = (0..n).map(|v| support_positions(&target, v)).collect();
        for (t, &y) in target.summands().iter().enumerate() {
            for (s, &x) in source.summands().iter().enumerate() {
                if hom_exists(x, y) {
                    let v = x.b;
                    e[(t, s)] = mats[v][(pos_tgt[v][t], pos_src[v][s])].clone();
                }
            }
        }
        ModMorphism { source, target, entries: e }
    }
}

pub(crate) fn support_indices(x: &ModuleObject, v: usize) -> Vec<usize> {
    x.summands().iter().enumerate().filter(|(_, s)| s.contains(v)).map(|(i, _)| i).collect()
}

/// `pos[i]` = row of summand `i` in the vertexwise basis at `v`, or `usize::MAX`.
pub(crate) fn support_positions(x: &ModuleObject, v: usize) -> Vec<usize> {
    let mut k = 0;
    x.summands()
        .iter()
        .map(|s| {
            if s.contains(v) {
                k += 1;
                k - 1
            } else {
                usize::MAX
            }
        })
        .collect()
}

/// `g ∘ f`, using that a composite of basis maps is the basis map when the
/// composite hom exists and zero otherwise.
pub fn compose(g: &ModMorphism, f: &ModMorphism) -> Result<ModMorphism> {
    if g.source.summands() != f.target.summands() {
        return Err(Error::Shape(format!(
            "cannot compose: {} is not {}",
            g.source, f.target
        )));
    }
    Ok(compose_unchecked(g, f))
}

pub(crate) fn compose_unchecked(g: &ModMorphism, f: &ModMorphism) -> ModMorphism {
    let src = f.source.summands();
    let mid = f.target.summands();
    let tgt = g.target.summands();
    let mut e = Mat::zeros(tgt.len(), src.len());
    for (s, &x) in src.iter().enumerate() {
        for (k, _) in mid.iter().enumerate() {
            let fk = f.entries[(k, s)].clone();
            if fk.is_zero() {
                continue;
            }
            for (t, &z) in tgt.iter().enumerate() {
                let gk = g.entries[(t, k)].clone();
                if !gk.is_zero() && hom_exists(x, z) {
                    e[(t, s)] += gk * &fk;
                }
            }
        }
    }
    ModMorphism::new_unchecked(f.source.clone(), g.target.clone(), e)
}

/// Block-diagonal direct sum of two morphisms, summands of `f` first.
pub fn direct_sum_morphism(f: &ModMorphism, g: &ModMorphism) -> ModMorphism {
    let src = f.source.concat(&g.source);
    let tgt = f.target.concat(&g.target);
    let mut e = Mat::zeros(tgt.len(), src.len());
    for t in 0..f.target.len() {
        for s in 0..f.source.len() {
            e[(t, s)] = f.entries[(t, s)].clone();
        }
    }
    for t in 0..g.target.len() {
        for s in 0..g.source.len() {
            e[(f.target.len() + t, f.source.len() + s)] = g.entries[(t, s)].clone();
        }
    }
    ModMorphism::new_unchecked(src, tgt, e)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SpecialKind {
    Simple,
    Projective,
    Injective,
    RadOfProjective,
    SocQuotOfInjective,
}

pub fn special_module(desc: &AlgebraDesc, kind: SpecialKind, i: usize) -> Result<ModuleObject> {
    desc.require_linear()?;
    desc.check_vertex(i)?;
    Ok(match kind {
        SpecialKind::Simple => ModuleObject::single(desc.simple(i)),
        SpecialKind::Projective => ModuleObject::single(desc.projective(i)),
        SpecialKind::Injective => ModuleObject::single(desc.injective(i)),
        SpecialKind::RadOfProjective => {
            let p = desc.projective(i);
            if p.a == p.b {
                ModuleObject::zero()
            } else {
                ModuleObject::single(Interval::new(p.a, p.b - 1))
            }
        }
        SpecialKind::SocQuotOfInjective => {
            let q = desc.injective(i);
            if q.a == q.b {
                ModuleObject::zero()
            } else {
                ModuleObject::single(Interval::new(q.a + 1, q.b))
            }
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NakayamaDir {
    /// ν, projectives to injectives.
    Nu,
    /// ν⁻, injectives to projectives.
    NuInv,
}

/// `ν P_i = I_i` and `ν⁻ I_i = P_i`.
pub fn nakayama(desc: &AlgebraDesc, i: usize, dir: NakayamaDir) -> Result<Interval> {
    desc.require_linear()?;
    desc.check_vertex(i)?;
    Ok(match dir {
        NakayamaDir::Nu => desc.injective(i),
        NakayamaDir::NuInv => desc.projective(i),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoverSide {
    ProjectiveCover,
    InjectiveEnvelope,
}

/// Summandwise projective cover `P_b ↠ M_{a,b}` or injective envelope
/// `M_{a,b} ↪ I_a`.
pub fn cover_envelope(
    desc: &AlgebraDesc,
    m: &ModuleObject,
    side: CoverSide,
) -> Result<(ModuleObject, ModMorphism)> {
    desc.require_linear()?;
    let outer: Vec<Interval> = m
        .summands()
        .iter()
        .map(|s| match side {
            CoverSide::ProjectiveCover => desc.projective(s.b),
            CoverSide::InjectiveEnvelope => desc.injective(s.a),
        })
        .collect();
    let outer = ModuleObject::raw(outer);
    let k = m.len();
    let map = match side {
        CoverSide::ProjectiveCover => ModMorphism::new_unchecked(outer.clone(), m.clone(), Mat::identity(k)),
        CoverSide::InjectiveEnvelope => ModMorphism::new_unchecked(m.clone(), outer.clone(), Mat::identity(k)),
    };
    let map = map.canonicalized();
    let obj = match side {
        CoverSide::ProjectiveCover => map.source.clone(),
        CoverSide::InjectiveEnvelope => map.target.clone(),
    };
    Ok((obj, map))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lin(n: usize, l: usize) -> AlgebraDesc {
        AlgebraDesc::linear(n, l).unwrap()
    }

    #[test]
    fn parameters_are_validated() {
        assert!(make_algebra(Shape::Linear, 1, 2).is_err());
        assert!(make_algebra(Shape::Linear, 3, 1).is_err());
        assert!(make_algebra(Shape::Cyclic, 0, 2).is_err());
        assert!(make_algebra(Shape::Cyclic, 1, 2).is_ok());
        assert!(lin(3, 5).is_hereditary());
        assert!(!lin(5, 3).is_hereditary());
    }

    #[test]
    fn special_modules() {
        let a = lin(3, 2);
        assert_eq!(a.projective(0), Interval::new(0, 0));
        assert_eq!(a.projective(1), Interval::new(0, 1));
        assert_eq!(a.projective(2), Interval::new(1, 2));
        let b = lin(9, 3);
        assert_eq!(b.projective(7), Interval::new(5, 7));
        assert_eq!(
            special_module(&b, SpecialKind::Injective, 2).unwrap(),
            ModuleObject::single(Interval::new(2, 4))
        );
        assert!(special_module(&b, SpecialKind::RadOfProjective, 0).unwrap().is_zero());
        assert!(special_module(&b, SpecialKind::SocQuotOfInjective, 8).unwrap().is_zero());
        assert_eq!(
            special_module(&lin(9, 4), SpecialKind::Simple, 3).unwrap(),
            ModuleObject::single(Interval::new(3, 3))
        );
        assert!(special_module(&b, SpecialKind::Simple, 9).is_err());
    }

    #[test]
    fn nakayama_pairs() {
        let b = lin(9, 3);
        assert_eq!(nakayama(&b, 2, NakayamaDir::Nu).unwrap(), Interval::new(2, 4));
        assert_eq!(nakayama(&b, 8, NakayamaDir::Nu).unwrap(), Interval::new(8, 8));
        for i in 0..9 {
            let inj = nakayama(&b, i, NakayamaDir::Nu).unwrap();
            assert_eq!(nakayama(&b, inj.a, NakayamaDir::NuInv).unwrap(), b.projective(i));
        }
    }

    #[test]
    fn compose_examples() {
        let f = ModMorphism::canonical(Interval::new(0, 0), Interval::new(0, 1)).unwrap();
        let g = ModMorphism::canonical(Interval::new(0, 1), Interval::new(1, 2)).unwrap();
        assert!(compose(&g, &f).unwrap().is_zero());

        let f = ModMorphism::canonical(Interval::new(0, 2), Interval::new(1, 3)).unwrap();
        let g = ModMorphism::canonical(Interval::new(1, 3), Interval::new(2, 4)).unwrap();
        assert_eq!(
            compose(&g, &f).unwrap(),
            ModMorphism::canonical(Interval::new(0, 2), Interval::new(2, 4)).unwrap()
        );
        let id = ModMorphism::identity(f.target.clone());
        assert_eq!(compose(&id, &f).unwrap(), f);
        assert!(compose(&f, &f).is_err());
    }

    #[test]
    fn covers_and_envelopes() {
        let b = lin(9, 3);
        let m = ModuleObject::single(Interval::new(4, 5));
        let (p, e) = cover_envelope(&b, &m, CoverSide::ProjectiveCover).unwrap();
        assert_eq!(p, ModuleObject::single(Interval::new(3, 5)));
        assert_eq!(e.get(0, 0), Q::one());
        let (i, _) = cover_envelope(&b, &m, CoverSide::InjectiveEnvelope).unwrap();
        assert_eq!(i, ModuleObject::single(Interval::new(4, 6)));
        let (z, zm) = cover_envelope(&b, &ModuleObject::zero(), CoverSide::ProjectiveCover).unwrap();
        assert!(z.is_zero() && zm.is_zero());
    }

    #[test]
    fn vertexwise_round_trip() {
        let x = ModuleObject::new(vec![Interval::new(0, 1), Interval::new(1, 2)]);
        let y = ModuleObject::new(vec![Interval::new(1, 2), Interval::new(1, 1)]);
        let e = Mat::from_ints(2, 2, &[1, 0, 2, 0]);
        let f = ModMorphism::new(x.clone(), y.clone(), e.clone());
        // M0,1 -> M1,1 and M0,1 -> M1,2 both exist; M1,2 -> M1,1 does not.
        let f = f.unwrap();
        let mats: Vec<Mat> = (0..3).map(|v| f.at_vertex(v)).collect();
        assert_eq!(ModMorphism::from_vertexwise(x, y, &mats), f);
    }
}
