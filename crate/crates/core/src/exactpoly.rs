//! Multivariate polynomials over the rationals with named variables.
//!
//! Terms are kept in a `BTreeMap` ordered by graded reverse lexicographic
//! order, so the leading term is always the last entry.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Builds a rational from a small numerator and denominator.
pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Renders a rational as `n` or `n/d`.
pub fn render_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `n` or `n/d` (optionally signed).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse { offset: 0, message: format!("not a rational: `{s}`") };
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::Parse { offset: 0, message: "zero denominator".into() });
    }
    Ok(Rational::new(n, d))
}

/// Role of a variable; only `Cartan` variables may be shifted by twisted operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VarKind {
    Cartan,
    Central,
    Unit,
    Unknown,
}

/// Ordered list of distinct variable names.
#[derive(Clone, Debug)]
pub struct VarContext {
    names: Vec<String>,
    kinds: Vec<VarKind>,
    unit_pairs: Vec<(usize, usize)>,
    index: HashMap<String, usize>,
}

pub type Ctx = Arc<VarContext>;

impl PartialEq for VarContext {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.kinds == other.kinds && self.unit_pairs == other.unit_pairs
    }
}
impl Eq for VarContext {}

impl VarContext {
    pub fn new<S: AsRef<str>>(names: &[S], kinds: &[VarKind], unit_pairs: &[(usize, usize)]) -> Result<Ctx> {
        if names.len() != kinds.len() {
            return Err(Error::Input("names and kinds differ in length".into()));
        }
        let mut index = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            let n = n.as_ref();
            if n.is_empty() || !n.chars().next().unwrap().is_ascii_alphabetic() {
                return Err(Error::Input(format!("bad variable name `{n}`")));
            }
            if index.insert(n.to_string(), i).is_some() {
                return Err(Error::Input(format!("duplicate variable `{n}`")));
            }
        }
        for &(a, b) in unit_pairs {
            if a >= names.len() || b >= names.len() || a == b {
                return Err(Error::Input("bad unit pair".into()));
            }
        }
        Ok(Arc::new(VarContext {
            names: names.iter().map(|s| s.as_ref().to_string()).collect(),
            kinds: kinds.to_vec(),
            unit_pairs: unit_pairs.to_vec(),
            index,
        }))
    }

    /// Context whose variables are all of one kind.
    pub fn uniform<S: AsRef<str>>(names: &[S], kind: VarKind) -> Ctx {
        Self::new(names, &vec![kind; names.len()], &[]).expect("valid uniform context")
    }

    /// `H_1..H_n`, all Cartan.
    pub fn cartan(n: usize) -> Ctx {
        let names: Vec<String> = (1..=n).map(|i| format!("H_{i}")).collect();
        Self::uniform(&names, VarKind::Cartan)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }
    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
    pub fn names(&self) -> &[String] {
        &self.names
    }
    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }
    pub fn kind(&self, i: usize) -> VarKind {
        self.kinds[i]
    }
    pub fn kinds(&self) -> &[VarKind] {
        &self.kinds
    }
    pub fn unit_pairs(&self) -> &[(usize, usize)] {
        &self.unit_pairs
    }
    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index.get(name).copied().ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }
    pub fn check_index(&self, i: usize) -> Result<()> {
        if i < self.names.len() {
            Ok(())
        } else {
            Err(Error::VariableIndex(i))
        }
    }
}

/// Exponent vector ordered by graded reverse lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Box<[u32]>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n].into_boxed_slice())
    }
    pub fn var(n: usize, i: usize, e: u32) -> Self {
        let mut v = vec![0; n];
        v[i] = e;
        Monomial(v.into_boxed_slice())
    }
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(o.0.iter()).map(|(a, b)| a + b).collect())
    }
    pub fn divides(&self, o: &Monomial) -> bool {
        self.0.iter().zip(o.0.iter()).all(|(a, b)| a <= b)
    }
    /// `o / self`, assuming `self` divides `o`.
    pub fn quotient_of(&self, o: &Monomial) -> Monomial {
        Monomial(o.0.iter().zip(self.0.iter()).map(|(a, b)| a - b).collect())
    }
    pub fn lcm(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(o.0.iter()).map(|(a, b)| *a.max(b)).collect())
    }
    pub fn coprime(&self, o: &Monomial) -> bool {
        self.0.iter().zip(o.0.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let (da, db) = (self.degree(), other.degree());
        if da != db {
            return da.cmp(&db);
        }
        for (a, b) in self.0.iter().rev().zip(other.0.iter().rev()) {
            if a != b {
                return b.cmp(a);
            }
        }
        Ordering::Equal
    }
}
impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial with nonzero rational coefficients.
#[derive(Clone, Debug)]
pub struct MultiPoly {
    ctx: Ctx,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        same_ctx(&self.ctx, &other.ctx) && self.terms == other.terms
    }
}
impl Eq for MultiPoly {}

pub fn same_ctx(a: &Ctx, b: &Ctx) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn binomial_row(n: u32) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for k in 0..n {
        let next = &row[k as usize] * BigInt::from(n - k) / BigInt::from(k + 1);
        row.push(next);
    }
    row
}

impl MultiPoly {
    pub fn zero(ctx: &Ctx) -> Self {
        MultiPoly { ctx: ctx.clone(), terms: BTreeMap::new() }
    }
    pub fn constant(ctx: &Ctx, c: Rational) -> Self {
        let mut p = Self::zero(ctx);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(ctx.len()), c);
        }
        p
    }
    pub fn one(ctx: &Ctx) -> Self {
        Self::constant(ctx, Rational::one())
    }
    pub fn var(ctx: &Ctx, i: usize) -> Self {
        let mut p = Self::zero(ctx);
        p.terms.insert(Monomial::var(ctx.len(), i, 1), Rational::one());
        p.normalize_units();
        p
    }
    pub fn var_named(ctx: &Ctx, name: &str) -> Result<Self> {
        Ok(Self::var(ctx, ctx.index_of(name)?))
    }
    pub fn monomial(ctx: &Ctx, m: Monomial, c: Rational) -> Self {
        let mut p = Self::zero(ctx);
        p.add_term(m, c);
        p.normalize_units();
        p
    }
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(ctx: &Ctx, it: I) -> Self {
        let mut p = Self::zero(ctx);
        for (m, c) in it {
            assert_eq!(m.0.len(), ctx.len(), "exponent vector length must match the context");
            p.add_term(m, c);
        }
        p.normalize_units();
        p
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }
    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }
    /// Value of a constant polynomial.
    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_zero() {
            Some(Rational::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }
    pub fn constant_term(&self) -> Rational {
        self.terms.get(&Monomial::one(self.ctx.len())).cloned().unwrap_or_else(Rational::zero)
    }
    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }
    pub fn total_degree(&self) -> i64 {
        self.terms.keys().map(|m| m.degree() as i64).max().unwrap_or(-1)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn normalize_units(&mut self) {
        if self.ctx.unit_pairs.is_empty() {
            return;
        }
        let needs = self.terms.keys().any(|m| self.ctx.unit_pairs.iter().any(|&(a, b)| m.0[a] > 0 && m.0[b] > 0));
        if !needs {
            return;
        }
        let old = std::mem::take(&mut self.terms);
        for (mut m, c) in old {
            for &(a, b) in &self.ctx.unit_pairs {
                let k = m.0[a].min(m.0[b]);
                m.0[a] -= k;
                m.0[b] -= k;
            }
            self.add_term(m, c);
        }
    }

    fn check(&self, o: &MultiPoly) -> Result<()> {
        if same_ctx(&self.ctx, &o.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn try_add(&self, o: &MultiPoly) -> Result<MultiPoly> {
        self.check(o)?;
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        Ok(r)
    }
    pub fn try_sub(&self, o: &MultiPoly) -> Result<MultiPoly> {
        self.check(o)?;
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), -c.clone());
        }
        Ok(r)
    }
    pub fn try_mul(&self, o: &MultiPoly) -> Result<MultiPoly> {
        self.check(o)?;
        let mut r = MultiPoly::zero(&self.ctx);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                r.add_term(ma.mul(mb), ca * cb);
            }
        }
        r.normalize_units();
        Ok(r)
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.ctx);
        }
        MultiPoly { ctx: self.ctx.clone(), terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    /// `c * x^m * self`.
    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> MultiPoly {
        let mut r = MultiPoly {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect(),
        };
        r.terms.retain(|_, v| !v.is_zero());
        r.normalize_units();
        r
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut r = MultiPoly::one(&self.ctx);
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    /// Degree in variable `i`; the zero polynomial has degree -1.
    pub fn degree_in(&self, i: usize) -> Result<i64> {
        self.ctx.check_index(i)?;
        Ok(self.terms.keys().map(|m| m.0[i] as i64).max().unwrap_or(-1))
    }

    /// Substitutes `x_i -> x_i - k`, i.e. applies the k-th power of the shift in variable `i`.
    pub fn shift(&self, i: usize, k: i64) -> Result<MultiPoly> {
        self.ctx.check_index(i)?;
        if k == 0 || self.terms.keys().all(|m| m.0[i] == 0) {
            return Ok(self.clone());
        }
        let neg_k = BigInt::from(-k);
        let mut r = MultiPoly::zero(&self.ctx);
        let mut rows: HashMap<u32, Vec<BigInt>> = HashMap::new();
        for (m, c) in &self.terms {
            let n = m.0[i];
            if n == 0 {
                r.add_term(m.clone(), c.clone());
                continue;
            }
            let row = rows.entry(n).or_insert_with(|| binomial_row(n));
            let mut pw = BigInt::one();
            // sum_j C(n,j) x^(n-j) (-k)^j
            for j in 0..=n {
                let mut mm = m.clone();
                mm.0[i] = n - j;
                let coef = c * Rational::from_integer(&row[j as usize] * &pw);
                r.add_term(mm, coef);
                pw *= &neg_k;
            }
        }
        Ok(r)
    }

    /// Applies shifts in several variables at once (`shifts[i]` for variable `i`).
    pub fn shift_vec(&self, shifts: &[i64]) -> Result<MultiPoly> {
        let mut r = self.clone();
        for (i, &k) in shifts.iter().enumerate() {
            if k != 0 {
                r = r.shift(i, k)?;
            }
        }
        Ok(r)
    }

    /// Replaces each variable `i` by `images[i]` (a polynomial in `target`).
    pub fn substitute(&self, target: &Ctx, images: &[MultiPoly]) -> Result<MultiPoly> {
        if images.len() != self.ctx.len() {
            return Err(Error::Input("substitution needs one image per variable".into()));
        }
        for im in images {
            if !same_ctx(im.ctx(), target) {
                return Err(Error::ContextMismatch);
            }
        }
        let mut powers: Vec<Vec<MultiPoly>> = vec![vec![MultiPoly::one(target)]; images.len()];
        let mut r = MultiPoly::zero(target);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
            }
            r = &r + &t;
        }
        Ok(r)
    }

    /// Re-expresses the polynomial in another context containing all variables that occur.
    pub fn embed(&self, target: &Ctx) -> Result<MultiPoly> {
        let map: Vec<Option<usize>> = self.ctx.names.iter().map(|n| target.index.get(n).copied()).collect();
        let mut r = MultiPoly::zero(target);
        for (m, c) in &self.terms {
            let mut mm = Monomial::one(target.len());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    let j = map[i].ok_or_else(|| Error::UnknownVariable(self.ctx.names[i].clone()))?;
                    mm.0[j] += e;
                }
            }
            r.add_term(mm, c.clone());
        }
        r.normalize_units();
        Ok(r)
    }

    /// Splits by the exponents of the variables in `vars`: returns the map
    /// from exponent pattern (over `vars`) to the coefficient polynomial in `rest`.
    pub fn coefficients_in(&self, vars: &[usize], rest: &Ctx) -> Result<BTreeMap<Vec<u32>, MultiPoly>> {
        let keep: Vec<(usize, usize)> = (0..self.ctx.len())
            .filter(|i| !vars.contains(i))
            .map(|i| rest.index_of(&self.ctx.names[i]).map(|j| (i, j)))
            .collect::<Result<_>>()?;
        let mut out: BTreeMap<Vec<u32>, MultiPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let key: Vec<u32> = vars.iter().map(|&v| m.0[v]).collect();
            let mut mm = Monomial::one(rest.len());
            for &(i, j) in &keep {
                mm.0[j] = m.0[i];
            }
            out.entry(key).or_insert_with(|| MultiPoly::zero(rest)).add_term(mm, c.clone());
        }
        out.retain(|_, p| !p.is_zero());
        Ok(out)
    }

    /// Makes the leading coefficient one (zero stays zero).
    pub fn monic(&self) -> MultiPoly {
        match self.leading() {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    /// Multiplies by the positive rational that makes all coefficients coprime integers.
    pub fn primitive(&self) -> MultiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
            num = num.gcd(c.numer());
        }
        self.scale(&Rational::new(den, num.abs()))
    }

    pub fn variables(&self) -> Vec<usize> {
        (0..self.ctx.len()).filter(|&i| self.terms.keys().any(|m| m.0[i] > 0)).collect()
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = render_monomial(&self.ctx, m);
            if mono.is_empty() {
                out.push_str(&render_rational(&a));
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&render_rational(&a));
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }

    pub fn parse(ctx: &Ctx, text: &str) -> Result<MultiPoly> {
        Parser { ctx, src: text.as_bytes(), pos: 0 }.parse_all()
    }
}

fn render_monomial(ctx: &VarContext, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(ctx.names[i].clone()),
            _ => parts.push(format!("{}^{}", ctx.names[i], e)),
        }
    }
    parts.join("*")
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $m(self, o: &MultiPoly) -> MultiPoly {
                self.$f(o).expect("polynomial operands must share a context")
            }
        }
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, o: MultiPoly) -> MultiPoly {
                (&self).$f(&o).expect("polynomial operands must share a context")
            }
        }
    };
}
binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rational::one())
    }
}
impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        (&self).neg()
    }
}

struct Parser<'a> {
    ctx: &'a Ctx,
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse { offset: self.pos, message: msg.to_string() })
    }
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }
    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }
    fn parse_all(mut self) -> Result<MultiPoly> {
        if self.peek().is_none() {
            return self.err("empty polynomial");
        }
        let p = self.sum()?;
        if self.peek().is_some() {
            return self.err("unexpected trailing input");
        }
        Ok(p)
    }
    fn sum(&mut self) -> Result<MultiPoly> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -self.product()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.product()?
            }
            _ => self.product()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.product()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.product()?;
                }
                _ => return Ok(acc),
            }
        }
    }
    fn product(&mut self) -> Result<MultiPoly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.power()?;
                    match d.constant_value() {
                        Some(c) if !c.is_zero() => acc = acc.scale(&c.recip()),
                        _ => return self.err("division only by a nonzero constant"),
                    }
                }
                _ => return Ok(acc),
            }
        }
    }
    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return self.err("expected exponent");
            }
            let e: u32 = std::str::from_utf8(&self.src[start..self.pos]).unwrap().parse().map_err(|_| Error::Parse {
                offset: start,
                message: "exponent too large".into(),
            })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }
    fn atom(&mut self) -> Result<MultiPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let p = self.sum()?;
                if self.peek() != Some(b')') {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(p)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.power()?)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let n: BigInt = std::str::from_utf8(&self.src[start..self.pos]).unwrap().parse().unwrap();
                Ok(MultiPoly::constant(self.ctx, Rational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match self.ctx.index_of(name) {
                    Ok(i) => Ok(MultiPoly::var(self.ctx, i)),
                    Err(_) => {
                        self.pos = start;
                        self.err(&format!("unknown variable `{name}`"))
                    }
                }
            }
            Some(_) => self.err("unexpected character"),
            None => self.err("unexpected end of input"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx2() -> Ctx {
        VarContext::cartan(2)
    }
    fn p(c: &Ctx, s: &str) -> MultiPoly {
        MultiPoly::parse(c, s).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let c = ctx2();
        assert_eq!(&p(&c, "H_1 + 1") * &p(&c, "H_1 - 1"), p(&c, "H_1^2 - 1"));
        assert!((&p(&c, "H_1 + 3") * &MultiPoly::zero(&c)).is_zero());
    }

    #[test]
    fn quadratic_factor_expansion() {
        let c = ctx2();
        let a = p(&c, "H_1 - 1/2*H_2 + 3/4");
        let b = p(&c, "H_1 - 1/2*H_2 + 1/4");
        let want = p(&c, "H_1^2 - H_1*H_2 + 1/4*H_2^2 + H_1 - 1/2*H_2 + 3/16");
        assert_eq!(&a * &b, want);
    }

    #[test]
    fn shift_examples() {
        let c = ctx2();
        assert_eq!(p(&c, "H_1").shift(0, 1).unwrap(), p(&c, "H_1 - 1"));
        assert_eq!(p(&c, "H_2").shift(0, -1).unwrap(), p(&c, "H_2"));
        assert_eq!(p(&c, "H_1^2*H_2").shift(0, 1).unwrap(), p(&c, "H_1^2*H_2 - 2*H_1*H_2 + H_2"));
        assert!(p(&c, "H_1").shift(5, 1).is_err());
    }

    #[test]
    fn degree_examples() {
        let c = ctx2();
        assert_eq!(p(&c, "H_1^3*H_2 + H_1").degree_in(0).unwrap(), 3);
        assert_eq!(MultiPoly::zero(&c).degree_in(0).unwrap(), -1);
        let g = p(&c, "H_1^2*H_2");
        assert_eq!((&g.shift(0, 1).unwrap() - &g).degree_in(0).unwrap(), 1);
        assert!(g.degree_in(2).is_err());
    }

    #[test]
    fn render_canonical() {
        let c = ctx2();
        let f = p(&c, "5 - 3*H_1 + H_2*H_1^2/2");
        assert_eq!(f.render(), "1/2*H_1^2*H_2 - 3*H_1 + 5");
        assert_eq!(MultiPoly::zero(&c).render(), "0");
        assert_eq!(p(&c, "-H_2").render(), "-H_2");
    }

    #[test]
    fn grevlex_order() {
        // x1^2 > x1 x2 > x2^2 > x1 > x2 > 1 with x1 > x2
        let mons = ["H_2", "H_1*H_2", "1", "H_1^2", "H_2^2", "H_1"];
        let c = ctx2();
        let mut ms: Vec<Monomial> = mons.iter().map(|s| p(&c, s).leading().unwrap().0.clone()).collect();
        ms.sort();
        let names: Vec<String> = ms.iter().map(|m| MultiPoly::monomial(&c, m.clone(), qi(1)).render()).collect();
        assert_eq!(names, ["1", "H_2", "H_1", "H_2^2", "H_1*H_2", "H_1^2"]);
        // degree-3 tie break in three variables: x1 x3^2 < x2^3 under grevlex
        let c3 = VarContext::cartan(3);
        let a = p(&c3, "H_1*H_3^2").leading().unwrap().0.clone();
        let b = p(&c3, "H_2^3").leading().unwrap().0.clone();
        assert!(a < b);
    }

    #[test]
    fn context_mismatch() {
        let a = MultiPoly::one(&VarContext::cartan(1));
        let b = MultiPoly::one(&VarContext::cartan(2));
        assert_eq!(a.try_mul(&b), Err(Error::ContextMismatch));
    }

    #[test]
    fn unit_pairs_cancel() {
        let c = VarContext::new(&["H_1", "a_1", "abar_1"], &[VarKind::Cartan, VarKind::Unit, VarKind::Unit], &[(1, 2)]).unwrap();
        let x = p(&c, "a_1*H_1 + 2");
        let y = p(&c, "abar_1");
        assert_eq!(&x * &y, p(&c, "H_1 + 2*abar_1"));
        assert_eq!(p(&c, "a_1^2*abar_1^3"), p(&c, "abar_1"));
    }

    #[test]
    fn parse_errors() {
        let c = ctx2();
        assert!(MultiPoly::parse(&c, "H_3").is_err());
        assert!(MultiPoly::parse(&c, "H_1 +").is_err());
        assert!(MultiPoly::parse(&c, "").is_err());
        assert!(MultiPoly::parse(&c, "H_1/H_2").is_err());
        assert_eq!(p(&c, " ( H_1 + 1 ) ^ 2 "), p(&c, "H_1^2+2*H_1+1"));
    }

    #[test]
    fn substitution_and_coefficients() {
        let c = ctx2();
        let f = p(&c, "H_1^2 + H_2");
        let g = f.substitute(&c, &[p(&c, "H_2 + 1"), p(&c, "H_1")]).unwrap();
        assert_eq!(g, p(&c, "H_2^2 + 2*H_2 + 1 + H_1"));
        let rest = VarContext::uniform(&["H_2"], VarKind::Cartan);
        let co = p(&c, "3*H_1^2*H_2 + H_1^2 - H_2").coefficients_in(&[0], &rest).unwrap();
        assert_eq!(co[&vec![2]], MultiPoly::parse(&rest, "3*H_2 + 1").unwrap());
        assert_eq!(co[&vec![0]], MultiPoly::parse(&rest, "-H_2").unwrap());
    }
}
