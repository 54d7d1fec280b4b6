//! Buchberger's algorithm under grevlex, normal forms, and refutation of
//! polynomial systems with nonvanishing constraints.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactpoly::{same_ctx, Ctx, Monomial, MultiPoly, Rational, VarContext, VarKind};

/// Reduced Gröbner basis, monic, sorted by leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    pub ctx: Ctx,
    pub generators: Vec<MultiPoly>,
}

impl GroebnerBasis {
    pub fn is_unit_ideal(&self) -> bool {
        self.generators.iter().any(|g| g.is_constant() && !g.is_zero())
    }

    pub fn contains(&self, p: &MultiPoly) -> Result<bool> {
        Ok(normal_form(p, self)?.is_zero())
    }

    pub fn render(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.render()).collect()
    }

    /// Values forced by generators of the form `x - c`.
    pub fn solved_values(&self) -> BTreeMap<String, Rational> {
        let mut out = BTreeMap::new();
        for g in &self.generators {
            let (lm, _) = match g.leading() {
                Some(t) => t,
                None => continue,
            };
            if lm.degree() != 1 || g.num_terms() > 2 {
                continue;
            }
            let rest = g.num_terms() == 1 || g.terms().keys().next().unwrap().is_one();
            if rest {
                let v = lm.0.iter().position(|&e| e == 1).unwrap();
                out.insert(self.ctx.name(v).to_string(), -g.constant_term());
            }
        }
        out
    }
}

/// Tuning knobs for [`buchberger_with`].
#[derive(Clone, Copy, Debug)]
pub struct BuchbergerOptions {
    /// Stop as soon as a nonzero constant appears (the ideal is then the unit ideal).
    pub stop_on_unit: bool,
    /// Abort after this many S-pair reductions.
    pub max_pairs: usize,
}

impl Default for BuchbergerOptions {
    fn default() -> Self {
        BuchbergerOptions { stop_on_unit: true, max_pairs: 200_000 }
    }
}

struct Entry {
    poly: MultiPoly,
    lm: Monomial,
    sugar: u32,
    live: bool,
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn buchberger(gens: &[MultiPoly]) -> Result<GroebnerBasis> {
    buchberger_with(gens, BuchbergerOptions::default())
}

pub fn buchberger_with(gens: &[MultiPoly], opts: BuchbergerOptions) -> Result<GroebnerBasis> {
    let ctx = match gens.first() {
        Some(g) => g.ctx().clone(),
        None => return Err(Error::Input("empty generator list".into())),
    };
    for g in gens {
        if !same_ctx(g.ctx(), &ctx) {
            return Err(Error::ContextMismatch);
        }
    }
    if !ctx.unit_pairs().is_empty() {
        return Err(Error::Unsupported("Gröbner bases over contexts with unit pairs; move them into equations first".into()));
    }
    let unit = || GroebnerBasis { ctx: ctx.clone(), generators: vec![MultiPoly::one(&ctx)] };

    let mut basis: Vec<Entry> = Vec::new();
    // pairs keyed by (lcm, sugar, i, j): normal selection, sugar breaks ties
    let mut pairs: BTreeSet<(Monomial, u32, usize, usize)> = BTreeSet::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();

    let mut input: Vec<MultiPoly> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.monic()).collect();
    input.sort_by(|a, b| a.leading().unwrap().0.cmp(b.leading().unwrap().0));
    for g in input {
        let sugar = g.total_degree() as u32;
        let r = reduce_full(&g, &basis, false);
        if r.is_zero() {
            continue;
        }
        if r.is_constant() && opts.stop_on_unit {
            return Ok(unit());
        }
        add_to_basis(&mut basis, &mut pairs, &mut pending, r.monic(), sugar);
    }

    let mut processed = 0usize;
    while let Some(key) = pairs.iter().next().cloned() {
        pairs.remove(&key);
        let (lcm, sugar, i, j) = key;
        pending.remove(&(i, j));
        if chain_criterion(&basis, &pending, &lcm, i, j) {
            continue;
        }
        processed += 1;
        if processed > opts.max_pairs {
            return Err(Error::Unsupported(format!("Gröbner computation exceeded {} pair reductions", opts.max_pairs)));
        }
        let s = s_poly(&basis[i], &basis[j], &lcm);
        let r = reduce_full(&s, &basis, false);
        if r.is_zero() {
            continue;
        }
        if r.is_constant() && opts.stop_on_unit {
            return Ok(unit());
        }
        add_to_basis(&mut basis, &mut pairs, &mut pending, r.monic(), sugar);
    }
    Ok(GroebnerBasis { ctx: ctx.clone(), generators: interreduce(basis.into_iter().map(|e| e.poly).collect()) })
}

fn add_to_basis(
    basis: &mut Vec<Entry>,
    pairs: &mut BTreeSet<(Monomial, u32, usize, usize)>,
    pending: &mut HashSet<(usize, usize)>,
    p: MultiPoly,
    sugar: u32,
) {
    let lm = p.leading().unwrap().0.clone();
    let k = basis.len();
    for (i, e) in basis.iter_mut().enumerate() {
        // elements whose leading monomial is divisible by the new one become redundant for
        // reduction; they stay as pair partners so the pair set remains complete
        if lm.divides(&e.lm) {
            e.live = false;
        }
        if lm.coprime(&e.lm) {
            continue; // product criterion
        }
        let l = lm.lcm(&e.lm);
        let s = (sugar + (l.degree() - lm.degree())).max(e.sugar + (l.degree() - e.lm.degree()));
        pairs.insert((l, s, i, k));
        pending.insert((i, k));
    }
    basis.push(Entry { poly: p, lm, sugar, live: true });
}

/// Buchberger's second criterion: some `k` with `lm_k | lcm(i, j)` whose pairs with
/// `i` and `j` have both been treated already.
fn chain_criterion(basis: &[Entry], pending: &HashSet<(usize, usize)>, lcm: &Monomial, i: usize, j: usize) -> bool {
    let is_pending = |a: usize, b: usize| pending.contains(&(a.min(b), a.max(b)));
    for (k, e) in basis.iter().enumerate() {
        if k == i || k == j || !e.lm.divides(lcm) {
            continue;
        }
        if lcm == &e.lm.lcm(&basis[i].lm) || lcm == &e.lm.lcm(&basis[j].lm) {
            continue; // keep the criterion safe when lcms coincide
        }
        if !is_pending(i, k) && !is_pending(j, k) {
            return true;
        }
    }
    false
}

fn s_poly(a: &Entry, b: &Entry, lcm: &Monomial) -> MultiPoly {
    let ca = a.poly.leading().unwrap().1.recip();
    let cb = b.poly.leading().unwrap().1.recip();
    let pa = a.poly.mul_term(&a.lm.quotient_of(lcm), &ca);
    let pb = b.poly.mul_term(&b.lm.quotient_of(lcm), &cb);
    &pa - &pb
}

/// Reduces `p` by the live basis elements; with `tail` also reduces non-leading terms.
fn reduce_full(p: &MultiPoly, basis: &[Entry], tail: bool) -> MultiPoly {
    let ctx = p.ctx().clone();
    let mut terms: BTreeMap<Monomial, Rational> = p.terms().clone();
    let mut done: BTreeMap<Monomial, Rational> = BTreeMap::new();
    while let Some((m, c)) = terms.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
        let divisor = basis.iter().find(|e| e.live && e.lm.divides(&m));
        match divisor {
            Some(e) => {
                let q = e.lm.quotient_of(&m);
                let f = &c / e.poly.leading().unwrap().1;
                for (gm, gc) in e.poly.terms() {
                    let mm = gm.mul(&q);
                    let v = terms.entry(mm.clone()).or_insert_with(Rational::zero);
                    *v -= &f * gc;
                    if v.is_zero() {
                        terms.remove(&mm);
                    }
                }
            }
            None => {
                terms.remove(&m);
                if !tail && done.is_empty() {
                    done.insert(m, c);
                    // leading term is irreducible: the rest is left as is
                    for (k, v) in std::mem::take(&mut terms) {
                        done.insert(k, v);
                    }
                    break;
                }
                done.insert(m, c);
            }
        }
    }
    MultiPoly::from_terms(&ctx, done)
}

fn interreduce(mut polys: Vec<MultiPoly>) -> Vec<MultiPoly> {
    // drop elements whose leading monomial is divisible by another's, then tail-reduce
    polys.sort_by(|a, b| a.leading().unwrap().0.cmp(b.leading().unwrap().0));
    let mut minimal: Vec<MultiPoly> = Vec::new();
    for p in polys {
        let lm = p.leading().unwrap().0.clone();
        if minimal.iter().any(|q| q.leading().unwrap().0.divides(&lm)) {
            continue;
        }
        minimal.push(p);
    }
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<Entry> = minimal
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != k)
            .map(|(_, q)| Entry { poly: q.clone(), lm: q.leading().unwrap().0.clone(), sugar: 0, live: true })
            .collect();
        out.push(reduce_full(&minimal[k], &others, true).monic());
    }
    out.sort_by(|a, b| a.leading().unwrap().0.cmp(b.leading().unwrap().0));
    out
}

/// Complete division remainder of `p` by `b`.
pub fn normal_form(p: &MultiPoly, b: &GroebnerBasis) -> Result<MultiPoly> {
    if !same_ctx(p.ctx(), &b.ctx) {
        return Err(Error::ContextMismatch);
    }
    let entries: Vec<Entry> =
        b.generators.iter().map(|g| Entry { poly: g.clone(), lm: g.leading().unwrap().0.clone(), sugar: 0, live: true }).collect();
    Ok(reduce_full(p, &entries, true))
}

/// Equations that must vanish plus polynomials that must not.
#[derive(Clone, Debug)]
pub struct PolySystem {
    pub ctx: Ctx,
    pub equations: Vec<MultiPoly>,
    pub nonzero: Vec<MultiPoly>,
}

#[derive(Serialize, Deserialize)]
struct PolySystemFile {
    unknowns: Vec<String>,
    equations: Vec<String>,
    #[serde(default)]
    nonzero: Vec<String>,
}

impl PolySystem {
    pub fn new(ctx: &Ctx) -> Self {
        PolySystem { ctx: ctx.clone(), equations: Vec::new(), nonzero: Vec::new() }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let f: PolySystemFile = serde_json::from_str(text).map_err(|e| Error::Input(format!("system file: {e}")))?;
        let ctx = VarContext::new(&f.unknowns, &vec![VarKind::Unknown; f.unknowns.len()], &[])?;
        let parse_all = |v: &[String], field: &str| -> Result<Vec<MultiPoly>> {
            v.iter()
                .enumerate()
                .map(|(k, s)| MultiPoly::parse(&ctx, s).map_err(|e| Error::Input(format!("{field}[{k}]: {e}"))))
                .collect()
        };
        Ok(PolySystem { equations: parse_all(&f.equations, "equations")?, nonzero: parse_all(&f.nonzero, "nonzero")?, ctx: ctx.clone() })
    }

    pub fn to_json(&self) -> String {
        let f = PolySystemFile {
            unknowns: self.ctx.names().to_vec(),
            equations: self.equations.iter().map(|p| p.render()).collect(),
            nonzero: self.nonzero.iter().map(|p| p.render()).collect(),
        };
        serde_json::to_string_pretty(&f).expect("serializable")
    }

    /// Adds one fresh variable per nonzero constraint with `q * t - 1 = 0`.
    /// The returned context has no unit pairs.
    pub fn rabinowitsch(&self) -> Result<(Ctx, Vec<MultiPoly>)> {
        let mut names: Vec<String> = self.ctx.names().to_vec();
        let mut kinds: Vec<VarKind> = self.ctx.kinds().to_vec();
        for k in 0..self.nonzero.len() {
            let mut n = format!("t_{}", k + 1);
            while names.contains(&n) {
                n.push('_');
            }
            names.push(n);
            kinds.push(VarKind::Unknown);
        }
        // unit pairs become explicit equations a * abar - 1 so that reduction needs no normalization
        let ctx = VarContext::new(&names, &kinds, &[])?;
        let mut eqs: Vec<MultiPoly> = self.equations.iter().map(|e| e.embed(&ctx)).collect::<Result<_>>()?;
        for &(a, b) in self.ctx.unit_pairs() {
            eqs.push(&(&MultiPoly::var(&ctx, a) * &MultiPoly::var(&ctx, b)) - &MultiPoly::one(&ctx));
        }
        for (k, q) in self.nonzero.iter().enumerate() {
            let t = MultiPoly::var(&ctx, self.ctx.len() + k);
            eqs.push(&(&q.embed(&ctx)? * &t) - &MultiPoly::one(&ctx));
        }
        Ok((ctx, eqs))
    }
}

#[derive(Clone, Debug)]
pub enum Satisfiability {
    Unsat,
    PossiblySat(GroebnerBasis),
}

impl Satisfiability {
    pub fn is_unsat(&self) -> bool {
        matches!(self, Satisfiability::Unsat)
    }
}

/// No common zero over the algebraic closure iff the augmented basis is `{1}`.
pub fn is_unsat(s: &PolySystem) -> Result<Satisfiability> {
    let (ctx, eqs) = s.rabinowitsch()?;
    if eqs.iter().all(|e| e.is_zero()) {
        return Ok(Satisfiability::PossiblySat(GroebnerBasis { ctx, generators: Vec::new() }));
    }
    let gb = buchberger(&eqs)?;
    if gb.is_unit_ideal() {
        Ok(Satisfiability::Unsat)
    } else {
        Ok(Satisfiability::PossiblySat(gb))
    }
}

/// Linear forms only: whether `p` lies in the span of `gens` (Gaussian elimination, no Gröbner machinery).
pub fn linear_span_contains(gens: &[MultiPoly], p: &MultiPoly) -> bool {
    let n = p.ctx().len();
    let row = |q: &MultiPoly| -> Vec<Rational> {
        let mut r = vec![Rational::zero(); n + 1];
        for (m, c) in q.terms() {
            match m.0.iter().position(|&e| e > 0) {
                Some(i) => r[i] = c.clone(),
                None => r[n] = c.clone(),
            }
        }
        r
    };
    let mut rows: Vec<Vec<Rational>> = gens.iter().map(row).collect();
    let rank = |rows: &mut Vec<Vec<Rational>>| {
        let mut rk = 0;
        for c in 0..=n {
            if let Some(p) = (rk..rows.len()).find(|&r| !rows[r][c].is_zero()) {
                rows.swap(rk, p);
                let piv = rows[rk].clone();
                for r in 0..rows.len() {
                    if r != rk && !rows[r][c].is_zero() {
                        let f = &rows[r][c] / &piv[c];
                        for (x, y) in rows[r].iter_mut().zip(&piv) {
                            *x = &*x - &f * y;
                        }
                    }
                }
                rk += 1;
            }
        }
        rk
    };
    let r0 = rank(&mut rows.clone());
    rows.push(row(p));
    rank(&mut rows) == r0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::VarKind;

    fn ctx(names: &[&str]) -> Ctx {
        VarContext::uniform(names, VarKind::Unknown)
    }
    fn ps(c: &Ctx, v: &[&str]) -> Vec<MultiPoly> {
        v.iter().map(|s| MultiPoly::parse(c, s).unwrap()).collect()
    }

    #[test]
    fn small_bases() {
        let c = ctx(&["x", "y"]);
        let gb = buchberger(&ps(&c, &["x - 1", "x*y - 2"])).unwrap();
        assert_eq!(gb.render(), vec!["y - 2", "x - 1"]);
        let gb = buchberger(&ps(&c, &["x", "x - 1"])).unwrap();
        assert_eq!(gb.render(), vec!["1"]);
        let gb = buchberger(&ps(&c, &["x^2 - y", "y^2 - x"])).unwrap();
        assert!(normal_form(&MultiPoly::parse(&c, "x^4 - x").unwrap(), &gb).unwrap().is_zero());
        let gb = buchberger(&ps(&c, &["0"])).unwrap();
        assert!(gb.generators.is_empty());
    }

    #[test]
    fn normal_forms() {
        let c = ctx(&["x", "y", "z"]);
        let gb = buchberger(&ps(&c, &["x - 1", "y - 2"])).unwrap();
        assert!(normal_form(&MultiPoly::parse(&c, "x - 1").unwrap(), &gb).unwrap().is_zero());
        assert_eq!(normal_form(&MultiPoly::parse(&c, "y").unwrap(), &gb).unwrap().render(), "2");
        assert_eq!(normal_form(&MultiPoly::parse(&c, "z").unwrap(), &gb).unwrap().render(), "z");
        assert_eq!(gb.solved_values()["y"], Rational::from_integer(2.into()));
    }

    #[test]
    fn unsat_examples() {
        let c = ctx(&["a", "x"]);
        let mut s = PolySystem::new(&c);
        s.equations = ps(&c, &["a"]);
        s.nonzero = ps(&c, &["a"]);
        assert!(is_unsat(&s).unwrap().is_unsat());
        let c = ctx(&["x"]);
        let mut s = PolySystem::new(&c);
        s.equations = ps(&c, &["x^2 + 1"]);
        assert!(!is_unsat(&s).unwrap().is_unsat());
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"unknowns":["x","y"],"equations":["x*y - 1","x"],"nonzero":[]}"#;
        let s = PolySystem::from_json(text).unwrap();
        let back = PolySystem::from_json(&s.to_json()).unwrap();
        assert_eq!(back.equations, s.equations);
        assert!(is_unsat(&s).unwrap().is_unsat());
        assert!(PolySystem::from_json(r#"{"unknowns":["x"],"equations":["q"]}"#).is_err());
    }
}
