//! Bounded complexes of interval-module direct sums.
//!
//! Degrees follow the cohomological convention with the rightmost term of a
//! written complex `[A -> B]` in degree 0. The shift `X[k]` has
//! `X[k]^p = X^{p+k}`, so it moves content to lower degrees.

use std::fmt;

use crate::algebra::{
    compose_unchecked, hom_exists, AlgebraDesc, Interval, ModMorphism, ModuleObject, NakayamaDir,
};
use crate::dimvec::DimVec;
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::rep::{
    factor_through_epi, kernel_cokernel, lift_through_mono, vertexwise, Which,
};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Complex {
    alg: AlgebraDesc,
    lo: i32,
    terms: Vec<ModuleObject>,
    /// `diffs[k]` maps `terms[k]` to `terms[k + 1]`.
    diffs: Vec<ModMorphism>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Truncation {
    /// σ^{≤p}
    SoftLe,
    /// σ^{≥p}
    SoftGe,
    /// β^{≤p}
    BrutalLe,
    /// β^{≥p}
    BrutalGe,
}

impl Complex {
    pub fn zero(alg: AlgebraDesc) -> Self {
        Complex { alg, lo: 0, terms: Vec::new(), diffs: Vec::new() }
    }

    pub fn stalk(alg: AlgebraDesc, m: ModuleObject, degree: i32) -> Self {
        let m = ModuleObject::new(m.summands().to_vec());
        Complex { alg, lo: degree, terms: vec![m], diffs: Vec::new() }.trimmed()
    }

    pub fn stalk_interval(alg: AlgebraDesc, x: Interval, degree: i32) -> Self {
        Complex::stalk(alg, ModuleObject::single(x), degree)
    }

    /// Builds a complex from consecutive terms starting at degree `lo`,
    /// checking shapes and `d ∘ d = 0`.
    pub fn new(
        alg: AlgebraDesc,
        lo: i32,
        terms: Vec<ModuleObject>,
        diffs: Vec<ModMorphism>,
    ) -> Result<Self> {
        alg.require_linear()?;
        if terms.is_empty() {
            return Ok(Complex::zero(alg));
        }
        if diffs.len() + 1 != terms.len() {
            return Err(Error::Shape(format!(
                "{} terms need {} differentials",
                terms.len(),
                terms.len() - 1
            )));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.source.summands() != terms[k].summands()
                || d.target.summands() != terms[k + 1].summands()
            {
                return Err(Error::Shape(format!("differential {k} has wrong endpoints")));
            }
            for s in terms[k].summands().iter().chain(terms[k + 1].summands()) {
                if !alg.is_valid(*s) {
                    return Err(Error::Parameter(format!("{s} is not a module over {alg}")));
                }
            }
            let checked = ModMorphism::new(d.source.clone(), d.target.clone(), d.entries.clone())?;
            drop(checked);
        }
        for k in 1..diffs.len() {
            if !compose_unchecked(&diffs[k], &diffs[k - 1]).is_zero() {
                return Err(Error::Precondition(format!(
                    "d∘d ≠ 0 at degree {}",
                    lo + k as i32 - 1
                )));
            }
        }
        Ok(Complex { alg, lo, terms, diffs }.normalized())
    }

    pub(crate) fn from_parts_unchecked(
        alg: AlgebraDesc,
        lo: i32,
        terms: Vec<ModuleObject>,
        diffs: Vec<ModMorphism>,
    ) -> Self {
        debug_assert!(terms.is_empty() || diffs.len() + 1 == terms.len());
        Complex { alg, lo, terms, diffs }.normalized()
    }

    pub fn alg(&self) -> &AlgebraDesc {
        &self.alg
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowest degree with a nonzero term (0 for the zero complex).
    pub fn lo(&self) -> i32 {
        self.lo
    }

    /// Highest degree with a nonzero term (-1 for the zero complex).
    pub fn hi(&self) -> i32 {
        self.lo + self.terms.len() as i32 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i32> {
        self.lo..=self.hi()
    }

    pub fn term(&self, p: i32) -> ModuleObject {
        self.index(p).map_or_else(ModuleObject::zero, |k| self.terms[k].clone())
    }

    pub fn term_ref(&self, p: i32) -> Option<&ModuleObject> {
        self.index(p).map(|k| &self.terms[k])
    }

    /// `d^p : X^p -> X^{p+1}`.
    pub fn diff(&self, p: i32) -> ModMorphism {
        match (self.index(p), self.index(p + 1)) {
            (Some(k), Some(_)) => self.diffs[k].clone(),
            _ => ModMorphism::zero(self.term(p), self.term(p + 1)),
        }
    }

    fn index(&self, p: i32) -> Option<usize> {
        if self.terms.is_empty() || p < self.lo || p > self.hi() {
            None
        } else {
            Some((p - self.lo) as usize)
        }
    }

    pub fn terms(&self) -> &[ModuleObject] {
        &self.terms
    }

    pub fn total_summands(&self) -> usize {
        self.terms.iter().map(|t| t.len()).sum()
    }

    /// Sorted summands in every term, zero end terms removed.
    fn normalized(self) -> Self {
        let Complex { alg, lo, terms, diffs } = self;
        let mut perms = Vec::with_capacity(terms.len());
        let mut new_terms = Vec::with_capacity(terms.len());
        for t in &terms {
            let (c, p) = t.canonical();
            new_terms.push(c);
            perms.push(p);
        }
        let mut new_diffs = Vec::with_capacity(diffs.len());
        for (k, d) in diffs.iter().enumerate() {
            let mut e = Mat::zeros(new_terms[k + 1].len(), new_terms[k].len());
            for t in 0..d.target.len() {
                for s in 0..d.source.len() {
                    e[(perms[k + 1][t], perms[k][s])] = d.entries[(t, s)].clone();
                }
            }
            new_diffs.push(ModMorphism::new_unchecked(
                new_terms[k].clone(),
                new_terms[k + 1].clone(),
                e,
            ));
        }
        Complex { alg, lo, terms: new_terms, diffs: new_diffs }.trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.terms.last().is_some_and(|t| t.is_zero()) {
            self.terms.pop();
            self.diffs.pop();
        }
        let lead = self.terms.iter().take_while(|t| t.is_zero()).count();
        if lead == self.terms.len() {
            return Complex::zero(self.alg);
        }
        if lead > 0 {
            self.terms.drain(..lead);
            self.diffs.drain(..lead);
            self.lo += lead as i32;
        }
        self
    }

    pub fn shift(&self, k: i32) -> Complex {
        if self.is_zero() {
            return self.clone();
        }
        Complex { lo: self.lo - k, ..self.clone() }
    }

    pub fn direct_sum(&self, other: &Complex) -> Complex {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        let terms: Vec<ModuleObject> =
            (lo..=hi).map(|p| self.term(p).concat(&other.term(p))).collect();
        let diffs = (lo..hi)
            .map(|p| crate::algebra::direct_sum_morphism(&self.diff(p), &other.diff(p)))
            .collect();
        Complex::from_parts_unchecked(self.alg, lo, terms, diffs)
    }

    pub fn truncate(&self, mode: Truncation, p: i32) -> Result<Complex> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        let (lo, hi) = (self.lo, self.hi());
        match mode {
            Truncation::BrutalGe => Ok(self.restrict(p.max(lo), hi)),
            Truncation::BrutalLe => Ok(self.restrict(lo, p.min(hi))),
            Truncation::SoftLe => {
                if p >= hi {
                    return Ok(self.clone());
                }
                if p < lo {
                    return Ok(Complex::zero(self.alg));
                }
                let (k, incl) = kernel_cokernel(&self.alg, &self.diff(p), Which::Kernel)?;
                let mut terms: Vec<ModuleObject> = (lo..p).map(|q| self.term(q)).collect();
                let mut diffs: Vec<ModMorphism> = (lo..p - 1).map(|q| self.diff(q)).collect();
                if p > lo {
                    diffs.push(lift_through_mono(&self.alg, &incl, &self.diff(p - 1))?);
                }
                terms.push(k);
                Ok(Complex::from_parts_unchecked(self.alg, lo, terms, diffs))
            }
            Truncation::SoftGe => {
                if p <= lo {
                    return Ok(self.clone());
                }
                if p > hi {
                    return Ok(Complex::zero(self.alg));
                }
                let (c, proj) = kernel_cokernel(&self.alg, &self.diff(p - 1), Which::Cokernel)?;
                let mut terms = vec![c];
                let mut diffs = Vec::new();
                if p < hi {
                    diffs.push(factor_through_epi(&self.alg, &proj, &self.diff(p))?);
                }
                terms.extend((p + 1..=hi).map(|q| self.term(q)));
                diffs.extend((p + 1..hi).map(|q| self.diff(q)));
                Ok(Complex::from_parts_unchecked(self.alg, p, terms, diffs))
            }
        }
    }

    fn restrict(&self, from: i32, to: i32) -> Complex {
        if from > to {
            return Complex::zero(self.alg);
        }
        let terms = (from..=to).map(|q| self.term(q)).collect();
        let diffs = (from..to).map(|q| self.diff(q)).collect();
        Complex::from_parts_unchecked(self.alg, from, terms, diffs)
    }

    /// `H^i`, in canonical interval form.
    pub fn cohomology(&self, i: i32) -> Result<ModuleObject> {
        if self.term(i).is_zero() {
            return Ok(ModuleObject::zero());
        }
        let (_, incl) = kernel_cokernel(&self.alg, &self.diff(i), Which::Kernel)?;
        let into_ker = lift_through_mono(&self.alg, &incl, &self.diff(i - 1))?;
        Ok(kernel_cokernel(&self.alg, &into_ker, Which::Cokernel)?.0)
    }

    /// Dimension vector of `H^i`, from vertexwise ranks only.
    pub fn cohomology_dims(&self, i: i32) -> Vec<usize> {
        let n = self.alg.n;
        if self.term(i).is_zero() {
            return vec![0; n];
        }
        let out = vertexwise(&self.alg, &self.diff(i));
        let inc = vertexwise(&self.alg, &self.diff(i - 1));
        (0..n).map(|v| out[v].cols() - out[v].rank() - inc[v].rank()).collect()
    }

    /// Degrees with nonzero cohomology.
    pub fn cohomology_support(&self) -> Vec<i32> {
        self.degrees().filter(|&p| self.cohomology_dims(p).iter().any(|&d| d > 0)).collect()
    }

    pub fn dimvec(&self, m: usize) -> Result<DimVec> {
        let n = self.alg.n;
        let mut d = DimVec::zero(m, n);
        for p in self.degrees() {
            let h = self.cohomology_dims(p);
            if h.iter().all(|&x| x == 0) {
                continue;
            }
            if p > 0 || p < -(m as i32 - 1) {
                return Err(Error::NotInWindow { m, degree: p });
            }
            let row = (-p) as usize;
            for (v, &x) in h.iter().enumerate() {
                d.set(row, v, x as i64);
            }
        }
        Ok(d)
    }

    /// Gaussian elimination of every differential entry that is an
    /// isomorphism between equal intervals. Preserves the homotopy type.
    pub fn minimalize(&self) -> Complex {
        let mut c = self.clone();
        while let Some((k, t, s)) = c.find_iso_entry() {
            c = c.eliminate(k, t, s);
        }
        let mut c = c.trimmed();
        c.normalize_scales();
        c
    }

    /// Rescale summands, left to right, so the first nonzero entry of each
    /// incoming row (or failing that, outgoing column) is 1. Keeps entries
    /// from growing across repeated constructions.
    fn normalize_scales(&mut self) {
        for k in 0..self.terms.len() {
            for s in 0..self.terms[k].len() {
                let incoming = if k > 0 {
                    let e = &self.diffs[k - 1].entries;
                    (0..e.cols()).map(|j| e[(s, j)].clone()).find(|q| !q.is_zero())
                } else {
                    None
                };
                let pivot = incoming.clone().or_else(|| {
                    self.diffs.get(k).and_then(|d| {
                        let e = &d.entries;
                        (0..e.rows()).map(|i| e[(i, s)].clone()).find(|q| !q.is_zero())
                    })
                });
                let Some(p) = pivot else { continue };
                if p.is_one() {
                    continue;
                }
                // new basis vector = old / λ with λ chosen so the pivot becomes 1
                let lam = if incoming.is_some() { p.recip() } else { p };
                if k > 0 {
                    let e = &mut self.diffs[k - 1].entries;
                    for j in 0..e.cols() {
                        let v = e[(s, j)].clone();
                        e[(s, j)] = v * &lam;
                    }
                }
                if let Some(d) = self.diffs.get_mut(k) {
                    let e = &mut d.entries;
                    let inv = lam.recip();
                    for i in 0..e.rows() {
                        let v = e[(i, s)].clone();
                        e[(i, s)] = v * &inv;
                    }
                }
            }
        }
    }

    fn find_iso_entry(&self) -> Option<(usize, usize, usize)> {
        for (k, d) in self.diffs.iter().enumerate() {
            for (s, x) in d.source.summands().iter().enumerate() {
                for (t, y) in d.target.summands().iter().enumerate() {
                    if x == y && !d.entries[(t, s)].is_zero() {
                        return Some((k, t, s));
                    }
                }
            }
        }
        None
    }

    fn eliminate(&self, k: usize, t: usize, s: usize) -> Complex {
        let d = &self.diffs[k];
        let a = d.entries[(t, s)].clone();
        let src_keep: Vec<usize> = (0..d.source.len()).filter(|&i| i != s).collect();
        let tgt_keep: Vec<usize> = (0..d.target.len()).filter(|&i| i != t).collect();
        let src = ModuleObject::raw(src_keep.iter().map(|&i| d.source.summands()[i]).collect());
        let tgt = ModuleObject::raw(tgt_keep.iter().map(|&i| d.target.summands()[i]).collect());
        let mut e = Mat::zeros(tgt.len(), src.len());
        for (ti, &tt) in tgt_keep.iter().enumerate() {
            for (si, &ss) in src_keep.iter().enumerate() {
                let mut v = d.entries[(tt, ss)].clone();
                let c = d.entries[(tt, s)].clone();
                let b = d.entries[(t, ss)].clone();
                if !c.is_zero() && !b.is_zero() && hom_exists(src.summands()[si], tgt.summands()[ti]) {
                    v -= c * b / &a;
                }
                e[(ti, si)] = v;
            }
        }
        let mut terms = self.terms.clone();
        let mut diffs = self.diffs.clone();
        terms[k] = src.clone();
        terms[k + 1] = tgt.clone();
        diffs[k] = ModMorphism::new_unchecked(src.clone(), tgt.clone(), e);
        if k > 0 {
            let prev = &self.diffs[k - 1];
            diffs[k - 1] = ModMorphism::new_unchecked(
                prev.source.clone(),
                src,
                prev.entries.select_rows(&src_keep),
            );
        }
        if k + 1 < self.diffs.len() {
            let next = &self.diffs[k + 1];
            diffs[k + 1] = ModMorphism::new_unchecked(
                tgt,
                next.target.clone(),
                next.entries.select_cols(&tgt_keep),
            );
        }
        Complex { alg: self.alg, lo: self.lo, terms, diffs }
    }

    pub fn is_minimal(&self) -> bool {
        self.find_iso_entry().is_none()
    }

    /// Connected components of the graph on summand occurrences whose edges
    /// are the nonzero differential entries.
    pub fn split(&self) -> Vec<Complex> {
        if self.is_zero() {
            return Vec::new();
        }
        let mut offs = vec![0];
        for t in &self.terms {
            offs.push(offs.last().unwrap() + t.len());
        }
        let total = *offs.last().unwrap();
        let mut parent: Vec<usize> = (0..total).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for (k, d) in self.diffs.iter().enumerate() {
            for t in 0..d.target.len() {
                for s in 0..d.source.len() {
                    if !d.entries[(t, s)].is_zero() {
                        let (x, y) = (find(&mut parent, offs[k] + s), find(&mut parent, offs[k + 1] + t));
                        if x != y {
                            parent[x.max(y)] = x.min(y);
                        }
                    }
                }
            }
        }
        let mut roots: Vec<usize> = Vec::new();
        for i in 0..total {
            let r = find(&mut parent, i);
            if !roots.contains(&r) {
                roots.push(r);
            }
        }
        roots
            .into_iter()
            .map(|r| {
                let pick: Vec<Vec<usize>> = (0..self.terms.len())
                    .map(|k| (0..self.terms[k].len()).filter(|&i| find(&mut parent, offs[k] + i) == r).collect())
                    .collect();
                self.select(&pick)
            })
            .collect()
    }

    fn select(&self, pick: &[Vec<usize>]) -> Complex {
        let terms: Vec<ModuleObject> = (0..self.terms.len())
            .map(|k| ModuleObject::raw(pick[k].iter().map(|&i| self.terms[k].summands()[i]).collect()))
            .collect();
        let diffs = (0..self.diffs.len())
            .map(|k| {
                let e = self.diffs[k].entries.select_rows(&pick[k + 1]).select_cols(&pick[k]);
                ModMorphism::new_unchecked(terms[k].clone(), terms[k + 1].clone(), e)
            })
            .collect();
        Complex::from_parts_unchecked(self.alg, self.lo, terms, diffs)
    }

    pub fn is_projective_complex(&self) -> bool {
        self.terms.iter().all(|t| t.summands().iter().all(|&x| self.alg.is_projective(x)))
    }

    pub fn is_injective_complex(&self) -> bool {
        self.terms.iter().all(|t| t.summands().iter().all(|&x| self.alg.is_injective(x)))
    }

    /// Termwise ν (projectives to injectives) or ν⁻ (injectives to projectives).
    pub fn apply_nakayama(&self, dir: NakayamaDir) -> Result<Complex> {
        let alg = self.alg;
        let map = |x: Interval| -> Result<Interval> {
            match dir {
                NakayamaDir::Nu if alg.is_projective(x) => Ok(alg.injective(x.b)),
                NakayamaDir::NuInv if alg.is_injective(x) => Ok(alg.projective(x.a)),
                NakayamaDir::Nu => Err(Error::Precondition(format!("ν needs projective terms, found {x}"))),
                NakayamaDir::NuInv => {
                    Err(Error::Precondition(format!("ν⁻ needs injective terms, found {x}")))
                }
            }
        };
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let s: Result<Vec<Interval>> = t.summands().iter().map(|&x| map(x)).collect();
            terms.push(ModuleObject::raw(s?));
        }
        let diffs = self
            .diffs
            .iter()
            .enumerate()
            .map(|(k, d)| ModMorphism::new_unchecked(terms[k].clone(), terms[k + 1].clone(), d.entries.clone()))
            .collect();
        Ok(Complex::from_parts_unchecked(alg, self.lo, terms, diffs))
    }

    /// The duality `D = Hom_k(-, k)`, landing again in complexes over Λ(n,l)
    /// after reversing the vertex order: `(DX)^p = D(X^{-p})`.
    pub fn dual(&self) -> Complex {
        if self.is_zero() {
            return self.clone();
        }
        let alg = self.alg;
        let hi = self.hi();
        let terms: Vec<ModuleObject> = (0..self.terms.len())
            .rev()
            .map(|k| ModuleObject::raw(self.terms[k].summands().iter().map(|&x| alg.dual(x)).collect()))
            .collect();
        let len = terms.len();
        let diffs = (0..len.saturating_sub(1))
            .map(|j| {
                // new diff j goes from new term j (old k = len-1-j) to new term j+1 (old k-1)
                let old = &self.diffs[len - 2 - j];
                ModMorphism::new_unchecked(terms[j].clone(), terms[j + 1].clone(), old.entries.transpose())
            })
            .collect();
        Complex::from_parts_unchecked(alg, -hi, terms, diffs)
    }

    pub fn check_d_squared(&self) -> bool {
        (1..self.diffs.len()).all(|k| compose_unchecked(&self.diffs[k], &self.diffs[k - 1]).is_zero())
    }
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        write!(f, "[")?;
        for (k, t) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " -{:?}-> ", self.diffs[k - 1].entries)?;
            }
            write!(f, "{t}")?;
        }
        write!(f, "] @ {}..{}", self.lo, self.hi())
    }
}
