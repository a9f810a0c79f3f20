//! Text literals for objects of the derived category.
//!
//! ```text
//! object := body shift?
//! body   := sum | '[' sum (arrow sum)* ']'
//! arrow  := '->' ('{' row (';' row)* '}')?
//! row    := rational (',' rational)*
//! sum    := '0' | iv (('+' | '⊕') iv)*
//! iv     := 'M' a ',' b | 'P' i | 'I' i | 'S' i
//! shift  := '[' int ']'
//! ```
//!
//! The rightmost term of a bracketed complex sits in degree 0, and `[k]` is
//! the shift `X[k]^p = X^{p+k}`. An arrow without a matrix stands for the
//! canonical basis map with coefficient 1 between every pair of summands
//! admitting a morphism; a matrix lists target rows, one column per source
//! summand.

use crate::algebra::{hom_exists, AlgebraDesc, Interval, ModMorphism, ModuleObject};
use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::resolve::projective_form;
use crate::scalar::Q;

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    alg: AlgebraDesc,
}

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.s[self.pos..].starts_with(tok.as_bytes()) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(perr(format!("expected `{tok}` at offset {}", self.pos)))
        }
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some(b'-') {
            self.pos += 1;
        }
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .ok()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| perr(format!("expected an integer at offset {start}")))
    }

    fn vertex(&mut self) -> Result<usize> {
        let v = self.int()?;
        if v < 0 || v as usize >= self.alg.n {
            return Err(Error::OutOfRange { what: "vertex", index: v });
        }
        Ok(v as usize)
    }

    fn interval(&mut self) -> Result<Interval> {
        let alg = self.alg;
        let iv = match self.peek() {
            Some(b'M') => {
                self.pos += 1;
                let a = self.vertex()?;
                self.expect(",")?;
                let b = self.vertex()?;
                Interval::new(a, b)
            }
            Some(b'P') => {
                self.pos += 1;
                alg.projective(self.vertex()?)
            }
            Some(b'I') => {
                self.pos += 1;
                alg.injective(self.vertex()?)
            }
            Some(b'S') => {
                self.pos += 1;
                alg.simple(self.vertex()?)
            }
            _ => return Err(perr(format!("expected a module name at offset {}", self.pos))),
        };
        if !alg.is_valid(iv) {
            return Err(perr(format!("{iv} is not a module over {alg}")));
        }
        Ok(iv)
    }

    fn sum(&mut self) -> Result<Vec<Interval>> {
        if self.peek() == Some(b'0') {
            self.pos += 1;
            return Ok(Vec::new());
        }
        let mut v = vec![self.interval()?];
        while self.eat("+") || self.eat("⊕") {
            v.push(self.interval()?);
        }
        Ok(v)
    }

    fn rational(&mut self) -> Result<Q> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && matches!(self.s[self.pos], b'-' | b'/' | b'0'..=b'9') {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .ok()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| perr(format!("expected a rational at offset {start}")))
    }

    fn matrix(&mut self) -> Result<Vec<Vec<Q>>> {
        let mut rows = vec![vec![self.rational()?]];
        loop {
            if self.eat(",") {
                rows.last_mut().unwrap().push(self.rational()?);
            } else if self.eat(";") {
                rows.push(vec![self.rational()?]);
            } else {
                self.expect("}")?;
                return Ok(rows);
            }
        }
    }

    fn shift(&mut self) -> Result<i32> {
        if self.eat("[") {
            let k = self.int()?;
            self.expect("]")?;
            i32::try_from(k).map_err(|_| perr("shift out of range"))
        } else {
            Ok(0)
        }
    }

    fn object(&mut self) -> Result<Complex> {
        let mut terms = Vec::new();
        let mut mats: Vec<Option<Vec<Vec<Q>>>> = Vec::new();
        if self.eat("[") {
            terms.push(self.sum()?);
            while self.eat("->") {
                mats.push(if self.eat("{") { Some(self.matrix()?) } else { None });
                terms.push(self.sum()?);
            }
            self.expect("]")?;
        } else {
            terms.push(self.sum()?);
        }
        let k = self.shift()?;
        if self.peek().is_some() {
            return Err(perr(format!("trailing input at offset {}", self.pos)));
        }
        let mut diffs = Vec::with_capacity(mats.len());
        for (j, mat) in mats.into_iter().enumerate() {
            let (src, tgt) = (&terms[j], &terms[j + 1]);
            let entries = match mat {
                Some(rows) => {
                    if rows.len() != tgt.len().max(1) || rows.iter().any(|r| r.len() != src.len().max(1)) {
                        return Err(perr(format!("matrix {j} must be {}x{}", tgt.len(), src.len())));
                    }
                    if src.is_empty() || tgt.is_empty() {
                        Mat::zeros(tgt.len(), src.len())
                    } else {
                        Mat::from_rows(&rows)
                    }
                }
                None => {
                    let mut e = Mat::zeros(tgt.len(), src.len());
                    for (t, &y) in tgt.iter().enumerate() {
                        for (s, &x) in src.iter().enumerate() {
                            if hom_exists(x, y) {
                                e[(t, s)] = Q::one();
                            }
                        }
                    }
                    e
                }
            };
            let f = ModMorphism::new(ModuleObject::raw(src.clone()), ModuleObject::raw(tgt.clone()), entries)
                .map_err(|e| perr(e.to_string()))?;
            diffs.push(f);
        }
        let lo = 1 - terms.len() as i32;
        let terms = terms.into_iter().map(ModuleObject::raw).collect();
        let c = Complex::new(self.alg, lo, terms, diffs).map_err(|e| perr(e.to_string()))?;
        Ok(c.shift(k))
    }
}

/// Parse an object literal over a linear algebra.
pub fn parse_object(alg: &AlgebraDesc, s: &str) -> Result<Complex> {
    alg.require_linear()?;
    Parser { s: s.as_bytes(), pos: 0, alg: *alg }.object()
}

/// The shortest name of an interval module: `P`, `I` or `S` when it is one
/// of those, else `M<a>,<b>`.
pub fn interval_name(alg: &AlgebraDesc, x: Interval) -> String {
    if alg.is_projective(x) {
        format!("P{}", x.b)
    } else if alg.is_injective(x) {
        format!("I{}", x.a)
    } else if x.a == x.b {
        format!("S{}", x.a)
    } else {
        format!("M{},{}", x.a, x.b)
    }
}

fn shift_suffix(k: i32) -> String {
    if k == 0 {
        String::new()
    } else {
        format!("[{k}]")
    }
}

fn sum_name(alg: &AlgebraDesc, x: &ModuleObject) -> String {
    if x.is_zero() {
        return "0".into();
    }
    x.summands().iter().map(|&s| interval_name(alg, s)).collect::<Vec<_>>().join("+")
}

/// Print an object: a stalk name with shift when its cohomology is a single
/// interval module, otherwise its minimal projective complex.
pub fn print_object(x: &Complex) -> Result<String> {
    let alg = *x.alg();
    let px = projective_form(x)?;
    if px.is_zero() {
        return Ok("0".into());
    }
    let support = px.cohomology_support();
    if let [p] = support[..] {
        let h = px.cohomology(p)?;
        if let [iv] = h.summands() {
            return Ok(format!("{}{}", interval_name(&alg, *iv), shift_suffix(-p)));
        }
    }
    let mut out = String::from("[");
    for p in px.degrees() {
        if p > px.lo() {
            let d = px.diff(p - 1);
            let canonical = (0..d.target.len()).all(|t| {
                (0..d.source.len()).all(|s| {
                    let want = hom_exists(d.source.summands()[s], d.target.summands()[t]);
                    d.entries[(t, s)] == if want { Q::one() } else { Q::zero() }
                })
            });
            out.push_str("->");
            if !canonical {
                let rows: Vec<String> = (0..d.target.len())
                    .map(|t| (0..d.source.len()).map(|s| d.entries[(t, s)].to_string()).collect::<Vec<_>>().join(","))
                    .collect();
                out.push('{');
                out.push_str(&rows.join(";"));
                out.push('}');
            }
        }
        out.push_str(&sum_name(&alg, &px.term(p)));
    }
    out.push(']');
    out.push_str(&shift_suffix(-px.hi()));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homotopy::is_isomorphic;
    use crate::translate::{tau, Direction};

    fn lin(n: usize, l: usize) -> AlgebraDesc {
        AlgebraDesc::linear(n, l).unwrap()
    }

    #[test]
    fn stalks() {
        let a = lin(9, 4);
        let x = parse_object(&a, "M3,4[1]").unwrap();
        assert_eq!(x, Complex::stalk_interval(a, Interval::new(3, 4), -1));
        assert_eq!(parse_object(&a, "P0").unwrap(), Complex::stalk_interval(a, Interval::new(0, 0), 0));
        assert_eq!(parse_object(&a, " I 2 [ 2 ] ").unwrap(), Complex::stalk_interval(a, Interval::new(2, 5), -2));
        assert_eq!(print_object(&x).unwrap(), "M3,4[1]");
        assert_eq!(print_object(&parse_object(&a, "S3").unwrap()).unwrap(), "S3");
        assert_eq!(print_object(&parse_object(&a, "M6,8").unwrap()).unwrap(), "I6");
        assert_eq!(print_object(&parse_object(&a, "M5,8").unwrap()).unwrap(), "P8");
    }

    #[test]
    fn complexes() {
        let a = lin(8, 4);
        let y = parse_object(&a, "[P3->P5->P7]").unwrap();
        assert_eq!((y.lo(), y.hi()), (-2, 0));
        assert_eq!(print_object(&y).unwrap(), "[P3->P5->P7]");
        let z = parse_object(&a, "[P3->{2}P5][1]").unwrap();
        assert_eq!(print_object(&z).unwrap(), "[P3->P5][1]");
        assert!(matches!(parse_object(&a, "[P3->P4->P5]"), Err(Error::Parse(_))));
        assert!(matches!(parse_object(&a, "M0,5"), Err(Error::Parse(_))));
        assert!(matches!(parse_object(&a, "Q1"), Err(Error::Parse(_))));
        assert!(parse_object(&a, "P9").is_err());
    }

    #[test]
    fn printed_literals_reparse() {
        let a = lin(9, 4);
        let mut x = parse_object(&a, "P0").unwrap();
        for _ in 0..12 {
            x = tau(&x, 2, Direction::Forward).unwrap();
            let s = print_object(&x).unwrap();
            let y = parse_object(&a, &s).unwrap();
            assert!(is_isomorphic(&x, &y).unwrap(), "{s}");
        }
    }
}
