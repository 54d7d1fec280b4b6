//! Twisted shift operators `g -> sum_v P_v * sigma^v(g)`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactpoly::{qi, same_ctx, Ctx, MultiPoly, Rational, VarKind};

/// Finite sum of polynomial coefficients times shift automorphisms.
///
/// Shift vectors have one entry per context variable; entries for
/// variables that are not `Cartan` are always zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedOp {
    ctx: Ctx,
    terms: BTreeMap<Vec<i64>, MultiPoly>,
}

impl TwistedOp {
    pub fn zero(ctx: &Ctx) -> Self {
        TwistedOp { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn identity(ctx: &Ctx) -> Self {
        Self::multiplication(&MultiPoly::one(ctx))
    }

    /// Multiplication by `p` (shift zero).
    pub fn multiplication(p: &MultiPoly) -> Self {
        let ctx = p.ctx().clone();
        let v = vec![0; ctx.len()];
        Self::term(p.clone(), v).expect("zero shift is always valid")
    }

    /// The single term `p * sigma^v`.
    pub fn term(p: MultiPoly, v: Vec<i64>) -> Result<Self> {
        let ctx = p.ctx().clone();
        check_shift(&ctx, &v)?;
        let mut t = TwistedOp::zero(&ctx);
        if !p.is_zero() {
            t.terms.insert(v, p);
        }
        Ok(t)
    }

    /// `p * sigma_i^k` for a single variable.
    pub fn shifted(p: MultiPoly, i: usize, k: i64) -> Result<Self> {
        p.ctx().check_index(i)?;
        let mut v = vec![0; p.ctx().len()];
        v[i] = k;
        Self::term(p, v)
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }
    pub fn terms(&self) -> &BTreeMap<Vec<i64>, MultiPoly> {
        &self.terms
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }
    pub fn coefficient(&self, v: &[i64]) -> MultiPoly {
        self.terms.get(v).cloned().unwrap_or_else(|| MultiPoly::zero(&self.ctx))
    }

    fn check(&self, o: &TwistedOp) -> Result<()> {
        if same_ctx(&self.ctx, &o.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    fn add_term(&mut self, v: Vec<i64>, p: MultiPoly) {
        if p.is_zero() {
            return;
        }
        match self.terms.remove(&v) {
            Some(old) => {
                let s = &old + &p;
                if !s.is_zero() {
                    self.terms.insert(v, s);
                }
            }
            None => {
                self.terms.insert(v, p);
            }
        }
    }

    pub fn try_add(&self, o: &TwistedOp) -> Result<TwistedOp> {
        self.check(o)?;
        let mut r = self.clone();
        for (v, p) in &o.terms {
            r.add_term(v.clone(), p.clone());
        }
        Ok(r)
    }

    pub fn try_sub(&self, o: &TwistedOp) -> Result<TwistedOp> {
        self.try_add(&o.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> TwistedOp {
        if c.is_zero() {
            return TwistedOp::zero(&self.ctx);
        }
        TwistedOp { ctx: self.ctx.clone(), terms: self.terms.iter().map(|(v, p)| (v.clone(), p.scale(c))).collect() }
    }

    /// Left multiplication by a polynomial.
    pub fn premul(&self, p: &MultiPoly) -> Result<TwistedOp> {
        TwistedOp::multiplication(p).compose(self)
    }

    /// `(self o o)(g) = self(o(g))`, via `(P s^u)(Q s^v) = P s^u(Q) s^(u+v)`.
    pub fn compose(&self, o: &TwistedOp) -> Result<TwistedOp> {
        self.check(o)?;
        let mut r = TwistedOp::zero(&self.ctx);
        for (u, p) in &self.terms {
            for (v, qq) in &o.terms {
                let coef = p.try_mul(&qq.shift_vec(u)?)?;
                let w: Vec<i64> = u.iter().zip(v).map(|(a, b)| a + b).collect();
                r.add_term(w, coef);
            }
        }
        Ok(r)
    }

    /// Commutator `self o o - o o self`.
    pub fn bracket(&self, o: &TwistedOp) -> Result<TwistedOp> {
        self.compose(o)?.try_sub(&o.compose(self)?)
    }

    /// `(ad self)^n (y)`.
    pub fn ad_power(&self, n: u32, y: &TwistedOp) -> Result<TwistedOp> {
        let mut r = y.clone();
        for _ in 0..n {
            if r.is_zero() {
                break;
            }
            r = self.bracket(&r)?;
        }
        Ok(r)
    }

    pub fn apply(&self, g: &MultiPoly) -> Result<MultiPoly> {
        if !same_ctx(&self.ctx, g.ctx()) {
            return Err(Error::ContextMismatch);
        }
        let mut r = MultiPoly::zero(&self.ctx);
        for (v, p) in &self.terms {
            r = &r + &(p * &g.shift_vec(v)?);
        }
        Ok(r)
    }

    /// Zero test by evaluation: applies the operator to powers of a linear form
    /// that separates all shift vectors. With `m` distinct shifts the values on
    /// `L^0..L^(m-1)` form a Vandermonde system, so they all vanish only when
    /// every coefficient does.
    pub fn vanishes_on_probes(&self) -> Result<bool> {
        if self.terms.is_empty() {
            return Ok(true);
        }
        let width = self.terms.keys().flat_map(|v| v.iter()).map(|x| x.unsigned_abs()).max().unwrap_or(0);
        let base = 2 * width as i64 + 1;
        let mut l = MultiPoly::zero(&self.ctx);
        let mut w = 1i64;
        for i in 0..self.ctx.len() {
            if self.ctx.kind(i) == VarKind::Cartan {
                l = &l + &MultiPoly::var(&self.ctx, i).scale(&qi(w));
                w = w.saturating_mul(base);
            }
        }
        let mut probe = MultiPoly::one(&self.ctx);
        for _ in 0..self.terms.len() {
            if !self.apply(&probe)?.is_zero() {
                return Ok(false);
            }
            probe = &probe * &l;
        }
        Ok(true)
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .rev()
            .map(|(v, p)| {
                let sv: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                format!("({}) * S({})", p.render(), sv.join(","))
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Parses the form produced by [`render`](Self::render). A bare polynomial
    /// (no `S(...)` factor) is read as a multiplication operator.
    pub fn parse(ctx: &Ctx, text: &str) -> Result<TwistedOp> {
        let t = text.trim();
        if t == "0" {
            return Ok(TwistedOp::zero(ctx));
        }
        if !t.contains("S(") {
            return Ok(TwistedOp::multiplication(&MultiPoly::parse(ctx, t)?));
        }
        let b = t.as_bytes();
        let mut pos = 0;
        let mut r = TwistedOp::zero(ctx);
        let perr = |pos: usize, m: &str| Error::Parse { offset: pos, message: m.to_string() };
        loop {
            while pos < b.len() && b[pos].is_ascii_whitespace() {
                pos += 1;
            }
            if pos >= b.len() || b[pos] != b'(' {
                return Err(perr(pos, "expected `(`"));
            }
            let mut depth = 0;
            let start = pos + 1;
            let mut end = None;
            for (k, &c) in b.iter().enumerate().skip(pos) {
                match c {
                    b'(' => depth += 1,
                    b')' => {
                        depth -= 1;
                        if depth == 0 {
                            end = Some(k);
                            break;
                        }
                    }
                    _ => {}
                }
            }
            let end = end.ok_or_else(|| perr(pos, "unbalanced parentheses"))?;
            let p = MultiPoly::parse(ctx, &t[start..end])?;
            pos = end + 1;
            let rest = t[pos..].trim_start();
            pos = t.len() - rest.len();
            let shift = if let Some(r2) = rest.strip_prefix('*') {
                let r2 = r2.trim_start();
                let r3 = r2.strip_prefix("S(").ok_or_else(|| perr(pos, "expected `S(`"))?;
                let close = r3.find(')').ok_or_else(|| perr(pos, "expected `)`"))?;
                let v: Vec<i64> = r3[..close]
                    .split(',')
                    .map(|s| s.trim().parse::<i64>().map_err(|_| perr(pos, "bad shift entry")))
                    .collect::<Result<_>>()?;
                pos = t.len() - r3[close + 1..].len();
                v
            } else {
                vec![0; ctx.len()]
            };
            if shift.len() != ctx.len() {
                return Err(perr(pos, "shift vector length differs from the context"));
            }
            check_shift(ctx, &shift)?;
            r.add_term(shift, p);
            let rest = t[pos..].trim_start();
            if rest.is_empty() {
                return Ok(r);
            }
            let r2 = rest.strip_prefix('+').ok_or_else(|| perr(pos, "expected `+`"))?;
            pos = t.len() - r2.len();
        }
    }
}

fn check_shift(ctx: &Ctx, v: &[i64]) -> Result<()> {
    if v.len() != ctx.len() {
        return Err(Error::Input("shift vector length differs from the context".into()));
    }
    for (i, &k) in v.iter().enumerate() {
        if k != 0 && ctx.kind(i) != VarKind::Cartan {
            return Err(Error::Input(format!("variable `{}` cannot be shifted", ctx.name(i))));
        }
    }
    Ok(())
}

impl fmt::Display for TwistedOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
