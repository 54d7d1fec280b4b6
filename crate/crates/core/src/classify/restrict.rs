//! Restriction of a module to the subalgebra generated by a subset of the
//! Chevalley generators, and the degree signatures that restriction forces.
//!
//! Removing the vertex set `K` leaves a sub-matrix `A'`. On the subalgebra, the
//! dual basis is `Hbar_v = H_v + sum_(k in K) beta_vk H_k` with
//! `beta_vk = sum_(w kept) (A'^-1)_vw a_wk`, and the variables `H_k` are central.
//! When `A'` is of type `A_m` or `B_2`, every generator pair of the restricted
//! module matches one row of the corresponding family, written in `Hbar` with
//! the family parameter `b` a polynomial in the `H_k`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::cartan::{finite_matrix, isomorphism, Gcm};
use crate::error::{Error, Result};
use crate::exactpoly::{qi, Ctx, Monomial, MultiPoly, Rational, VarContext, VarKind};
use crate::exec::Exec;
use crate::idealsolve::{buchberger, normal_form, PolySystem};
use crate::modfam::{all_subsets, build_a, build_b2, Param};

/// Degree of the parameter polynomial `b` allowed during unification.
pub const UNIFY_DEGREE: u32 = 2;

/// Restriction to the generators outside `removed` (0-based), optionally with
/// the family parameter `b` fixed to a polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Restriction {
    pub removed: Vec<usize>,
    pub pin: Option<MultiPoly>,
}

impl Restriction {
    pub fn remove(k: usize) -> Self {
        Restriction { removed: vec![k], pin: None }
    }
    pub fn with_pin(mut self, b: MultiPoly) -> Self {
        self.pin = Some(b);
        self
    }
    /// `M_k` naming, 1-based.
    pub fn name(&self) -> String {
        let ks: Vec<String> = self.removed.iter().map(|k| (k + 1).to_string()).collect();
        match &self.pin {
            None => format!("M_{}", ks.join("+")),
            Some(b) => format!("M_{}[b = {}]", ks.join("+"), b.render()),
        }
    }
}

impl fmt::Display for Restriction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// One family member on the subalgebra: local subset `S` and the pairs `(E_v, F_v)` of kept vertices.
#[derive(Clone, Debug)]
pub struct TemplateRow {
    pub s: Vec<usize>,
    pub pairs: BTreeMap<usize, (MultiPoly, MultiPoly)>,
}

/// All family rows of a restriction, in the ambient variables.
#[derive(Clone, Debug)]
pub struct Templates {
    pub restriction: Restriction,
    /// `A_m` or `B_2`.
    pub label: String,
    /// `H_1..H_n`, then `b` when the family has a free parameter, then pin parameters.
    pub ctx: Ctx,
    pub has_b: bool,
    /// `Hbar_v` for every kept vertex `v`.
    pub embedding: BTreeMap<usize, MultiPoly>,
    pub rows: Vec<TemplateRow>,
}

impl Templates {
    /// Distinct `(E_i, F_i)` over all rows.
    pub fn generator_rows(&self, i: usize) -> Vec<(MultiPoly, MultiPoly)> {
        let mut seen = BTreeMap::new();
        for r in &self.rows {
            if let Some((e, f)) = r.pairs.get(&i) {
                seen.entry((e.render(), f.render())).or_insert_with(|| (e.clone(), f.clone()));
            }
        }
        seen.into_values().collect()
    }
}

fn hnames(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("H_{i}")).collect()
}

/// Builds the family rows of `r` in ambient coordinates.
pub fn restriction_templates(g: &Gcm, r: &Restriction) -> Result<Templates> {
    let n = g.size();
    let removed: BTreeSet<usize> = r.removed.iter().copied().collect();
    if removed.is_empty() || removed.iter().any(|&k| k >= n) || removed.len() >= n {
        return Err(Error::Parameter(format!("restriction {r}: removed vertices must be a proper nonempty subset of 1..={n}")));
    }
    let kept: Vec<usize> = (0..n).filter(|v| !removed.contains(v)).collect();
    let sub = g.submatrix(&kept);
    let m = kept.len();
    // local vertex of kept[idx] is perm[idx]
    let (label, perm, is_a) = if let Some(p) = isomorphism(&sub, &finite_matrix('A', m)?) {
        (format!("A_{m}"), p, true)
    } else if let Some(p) = (m == 2).then(|| isomorphism(&sub, &Gcm::rank2(1, 2).ok()?)).flatten() {
        ("B_2".to_string(), p, false)
    } else {
        return Err(Error::Unsupported(format!("restriction {r}: sub-matrix {sub} has no cataloged family (need A_m or B_2)")));
    };
    let inv = sub.inverse().ok_or(Error::Singular)?;

    let mut names = hnames(n);
    let mut kinds = vec![VarKind::Cartan; n];
    if is_a && r.pin.is_none() {
        names.push("b".into());
        kinds.push(VarKind::Central);
    }
    if let Some(pin) = &r.pin {
        for (v, name) in pin.ctx().names().iter().enumerate() {
            if !pin.variables().contains(&v) || names.contains(name) {
                continue;
            }
            names.push(name.clone());
            kinds.push(VarKind::Central);
        }
    }
    let ctx = VarContext::new(&names, &kinds, &[])?;
    let mut embedding = BTreeMap::new();
    for (x, &v) in kept.iter().enumerate() {
        let mut p = MultiPoly::var(&ctx, v);
        for &k in &removed {
            let beta: Rational = (0..m).map(|w| &inv[x][w] * qi(g.entry(kept[w], k))).sum();
            if !beta.is_zero() {
                p = &p + &MultiPoly::var(&ctx, k).scale(&beta);
            }
        }
        embedding.insert(v, p);
    }
    let b_image = if !is_a {
        None
    } else {
        Some(match &r.pin {
            Some(pin) => {
                let stray: Vec<String> =
                    pin.variables().into_iter().map(|v| pin.ctx().name(v).to_string()).filter(|nm| nm.starts_with("H_") && !removed.iter().any(|k| *nm == format!("H_{}", k + 1))).collect();
                if !stray.is_empty() {
                    return Err(Error::Parameter(format!("restriction {r}: b may only involve the removed variables, found {}", stray.join(", "))));
                }
                pin.embed(&ctx)?
            }
            None => MultiPoly::var_named(&ctx, "b")?,
        })
    };
    // kept vertex for each local index
    let mut local_to_v = vec![0; m];
    for (x, &p) in perm.iter().enumerate() {
        local_to_v[p] = kept[x];
    }
    let subsets = if is_a { all_subsets(m + 1) } else { all_subsets(2) };
    let mut rows = Vec::new();
    for s in subsets {
        let local = if is_a { build_a(m, &Param::ones(m), &["b"], "b", &s)? } else { build_b2(&Param::ones(2), &s)? };
        let lctx = local.ctx().clone();
        let mut images = Vec::with_capacity(lctx.len());
        for v in 0..lctx.len() {
            images.push(if v < m { embedding[&local_to_v[v]].clone() } else { b_image.clone().expect("b only in type A") });
        }
        let mut pairs = BTreeMap::new();
        for (loc, &v) in local_to_v.iter().enumerate() {
            let e = local.e_poly(loc).substitute(&ctx, &images)?;
            let f = local.f_poly(loc).substitute(&ctx, &images)?;
            pairs.insert(v, (e, f));
        }
        rows.push(TemplateRow { s, pairs });
    }
    Ok(Templates { restriction: r.clone(), label, ctx, has_b: is_a && r.pin.is_none(), embedding, rows })
}

/// Exact `deg_j p`, or `None` when the value depends on the unknown parameter.
fn exact_degree(p: &MultiPoly, j: usize, removed: &[usize]) -> Option<i64> {
    let ctx = p.ctx();
    let non_h: Vec<usize> = (0..ctx.len()).filter(|&v| ctx.kind(v) != VarKind::Cartan).collect();
    let b = ctx.index_of("b").ok();
    let d = p.degree_in(j).ok()?;
    if removed.contains(&j) && b.is_some_and(|b| p.variables().contains(&b)) {
        return None;
    }
    // The leading coefficient in H_j, written over the kept variables, has
    // coefficients in Q[H_removed, b]. It cannot vanish for any b as long as one
    // of those coefficients is free of b and of pin parameters.
    let kept: Vec<usize> = (0..ctx.len()).filter(|&v| ctx.kind(v) == VarKind::Cartan && v != j && !removed.contains(&v)).collect();
    let mut groups: BTreeMap<Vec<u32>, bool> = BTreeMap::new();
    for m in p.terms().keys().filter(|m| m.0[j] as i64 == d) {
        let key: Vec<u32> = kept.iter().map(|&v| m.0[v]).collect();
        let free = non_h.iter().all(|&v| m.0[v] == 0);
        *groups.entry(key).or_insert(true) &= free;
    }
    groups.values().any(|&f| f).then_some(d)
}

/// Degree pairs `(deg_j E_i, deg_j F_i)` allowed by a restriction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignatureSet {
    pub restriction: String,
    pub label: String,
    pub generator: usize,
    pub var: usize,
    pub pairs: BTreeSet<(i64, i64)>,
    /// `Hbar_v = ...` lines.
    pub embedding: Vec<String>,
}

impl SignatureSet {
    pub fn to_json(&self) -> Value {
        json!({
            "restriction": self.restriction,
            "family": self.label,
            "generator": self.generator + 1,
            "variable": format!("H_{}", self.var + 1),
            "pairs": self.pairs.iter().map(|(a, b)| [a, b]).collect::<Vec<_>>(),
            "embedding": self.embedding,
        })
    }
    pub fn render_pairs(&self) -> String {
        let v: Vec<String> = self.pairs.iter().map(|(a, b)| format!("({a},{b})")).collect();
        format!("{{{}}}", v.join(","))
    }
}

fn signatures_of(t: &Templates, i: usize, j: usize) -> Result<SignatureSet> {
    let mut pairs = BTreeSet::new();
    for (e, f) in t.generator_rows(i) {
        let de = exact_degree(&e, j, &t.restriction.removed);
        let df = exact_degree(&f, j, &t.restriction.removed);
        match (de, df) {
            (Some(a), Some(b)) => {
                pairs.insert((a, b));
            }
            _ => return Err(Error::Ambiguous { restriction: t.restriction.name(), var: format!("H_{}", j + 1) }),
        }
    }
    let embedding = t.embedding.iter().map(|(v, p)| format!("Hbar_{} = {}", v + 1, p.render())).collect();
    Ok(SignatureSet { restriction: t.restriction.name(), label: t.label.clone(), generator: i, var: j, pairs, embedding })
}

/// Degree signature of generator `i` in variable `j` (0-based) under restriction `r`.
pub fn degree_signatures(g: &Gcm, r: &Restriction, i: usize, j: usize) -> Result<SignatureSet> {
    let n = g.size();
    if i >= n || j >= n {
        return Err(Error::Parameter(format!("generator and variable must lie in 1..={n}")));
    }
    if r.removed.contains(&i) {
        return Err(Error::Parameter(format!("generator {} is removed by {r}", i + 1)));
    }
    signatures_of(&restriction_templates(g, r)?, i, j)
}

/// Parameter values for which two restrictions assign the same `(E_i, F_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unifier {
    /// Rows (local subsets) that were matched.
    pub rows: (usize, usize),
    /// Forced `b` of each restriction; `None` for families without a parameter.
    pub b: [Option<MultiPoly>; 2],
}

impl Unifier {
    pub fn to_json(&self) -> Value {
        json!({
            "b": self.b.iter().map(|b| b.as_ref().map(|p| p.render())).collect::<Vec<_>>(),
        })
    }
}

/// Equates `(E_i, F_i)` from a row of each restriction, with `b` polynomials of
/// degree at most [`UNIFY_DEGREE`] in the removed variables and unit factors
/// related by an unknown nonzero `lam`. Returns the forced parameters, or `None`
/// if the rows cannot agree.
fn unify_rows(t: [&Templates; 2], rows: [&(MultiPoly, MultiPoly); 2]) -> Result<Option<[Option<MultiPoly>; 2]>> {
    let n = t[0].embedding.len() + t[0].restriction.removed.len();
    // unknowns: lam first, then the second side, then the first side with constant terms last
    let mut unknowns: Vec<String> = vec!["lam".into()];
    let mut coeffs: [Vec<(String, Vec<u32>)>; 2] = [Vec::new(), Vec::new()];
    for side in [1, 0] {
        if !t[side].has_b {
            continue;
        }
        let removed = &t[side].restriction.removed;
        let mut exps = super::affine::monomials(removed.len(), UNIFY_DEGREE);
        exps.sort_by_key(|e| std::cmp::Reverse((e.iter().sum::<u32>(), e.clone())));
        let letter = if side == 0 { "beta" } else { "gamma" };
        for e in exps {
            let name = format!("{letter}_{}", e.iter().map(|x| x.to_string()).collect::<String>());
            unknowns.push(name.clone());
            coeffs[side].push((name, e));
        }
    }
    let mut names = hnames(n);
    let mut kinds = vec![VarKind::Cartan; n];
    names.extend(unknowns.iter().cloned());
    kinds.extend(std::iter::repeat_n(VarKind::Unknown, unknowns.len()));
    let ctx = VarContext::new(&names, &kinds, &[])?;
    let uctx = VarContext::uniform(&unknowns, VarKind::Unknown);
    let mut bpoly: [Option<MultiPoly>; 2] = [None, None];
    for side in 0..2 {
        if !t[side].has_b {
            continue;
        }
        let removed = &t[side].restriction.removed;
        let mut p = MultiPoly::zero(&ctx);
        for (name, e) in &coeffs[side] {
            let mut mono = Monomial::one(ctx.len());
            for (x, &k) in removed.iter().enumerate() {
                mono.0[k] = e[x];
            }
            p = &p + &(&MultiPoly::monomial(&ctx, mono, qi(1)) * &MultiPoly::var_named(&ctx, name)?);
        }
        bpoly[side] = Some(p);
    }
    let lift = |side: usize, p: &MultiPoly| -> Result<MultiPoly> {
        let tctx = &t[side].ctx;
        let images: Vec<MultiPoly> = (0..tctx.len())
            .map(|v| if v < n { Ok(MultiPoly::var(&ctx, v)) } else if tctx.name(v) == "b" { Ok(bpoly[side].clone().expect("b present")) } else { MultiPoly::var_named(&ctx, tctx.name(v)) })
            .collect::<Result<_>>()?;
        p.substitute(&ctx, &images)
    };
    let lam = MultiPoly::var_named(&ctx, "lam")?;
    let (e1, f1) = (lift(0, &rows[0].0)?, lift(0, &rows[0].1)?);
    let (e2, f2) = (lift(1, &rows[1].0)?, lift(1, &rows[1].1)?);
    // a1 P1 = a2 P2 and Q1 / a1 = Q2 / a2 with lam = a2 / a1
    let residuals = [&e1 - &(&lam * &e2), &(&lam * &f1) - &f2];
    let hv: Vec<usize> = (0..n).collect();
    let mut sys = PolySystem::new(&uctx);
    for r in &residuals {
        for (_, c) in r.coefficients_in(&hv, &uctx)? {
            sys.equations.push(c);
        }
    }
    sys.equations = super::rank2::dedup(sys.equations);
    sys.nonzero.push(MultiPoly::var_named(&uctx, "lam")?);
    let (rctx, eqs) = sys.rabinowitsch()?;
    if eqs.iter().all(|e| e.is_zero()) {
        return Err(Error::Unsupported("degenerate unification system".into()));
    }
    let gb = buchberger(&eqs)?;
    if gb.is_unit_ideal() {
        return Ok(None);
    }
    // b = sum NF(coefficient) * monomial, written over H and the surviving unknowns
    let mut out: [Option<MultiPoly>; 2] = [None, None];
    for side in 0..2 {
        if !t[side].has_b {
            continue;
        }
        let removed = &t[side].restriction.removed;
        let mut wn = hnames(n);
        let mut wk = vec![VarKind::Cartan; n];
        wn.extend(rctx.names().iter().cloned());
        wk.extend(std::iter::repeat_n(VarKind::Central, rctx.len()));
        let wctx = VarContext::new(&wn, &wk, &[])?;
        let mut b = MultiPoly::zero(&wctx);
        for (name, e) in &coeffs[side] {
            let nf = normal_form(&MultiPoly::var_named(&rctx, name)?, &gb)?.embed(&wctx)?;
            let mut mono = Monomial::one(wctx.len());
            for (x, &k) in removed.iter().enumerate() {
                mono.0[k] = e[x];
            }
            b = &b + &(&nf * &MultiPoly::monomial(&wctx, mono, qi(1)));
        }
        // shrink to the variables that occur
        let used = b.variables();
        let keep: Vec<usize> = (0..wctx.len()).filter(|&v| v < n || used.contains(&v)).collect();
        let fctx = VarContext::new(&keep.iter().map(|&v| wctx.name(v).to_string()).collect::<Vec<_>>(), &keep.iter().map(|&v| wctx.kind(v)).collect::<Vec<_>>(), &[])?;
        out[side] = Some(b.embed(&fctx)?);
    }
    Ok(Some(out))
}

/// Unifiers over all row pairs of generator `i`; `filter` restricts to pairs whose
/// degree pairs in variable `j` coincide and lie in the given set.
fn unify(t: [&Templates; 2], i: usize, filter: Option<(usize, &BTreeSet<(i64, i64)>)>, exec: Exec) -> Result<Vec<Unifier>> {
    let rows = [t[0].generator_rows(i), t[1].generator_rows(i)];
    let mut jobs = Vec::new();
    for (x, r1) in rows[0].iter().enumerate() {
        for (y, r2) in rows[1].iter().enumerate() {
            if let Some((j, set)) = filter {
                let d1 = (exact_degree(&r1.0, j, &t[0].restriction.removed), exact_degree(&r1.1, j, &t[0].restriction.removed));
                let d2 = (exact_degree(&r2.0, j, &t[1].restriction.removed), exact_degree(&r2.1, j, &t[1].restriction.removed));
                match (d1, d2) {
                    ((Some(a), Some(b)), (Some(c), Some(d))) if (a, b) == (c, d) && set.contains(&(a, b)) => {}
                    _ => continue,
                }
            }
            jobs.push((x, y));
        }
    }
    let results = exec.map(&jobs, |&(x, y)| unify_rows(t, [&rows[0][x], &rows[1][y]]).map(|u| u.map(|b| Unifier { rows: (x, y), b })));
    let mut out: Vec<Unifier> = Vec::new();
    for r in results {
        if let Some(u) = r? {
            out.push(u);
        }
    }
    Ok(out)
}

/// Distinct forced parameters of one side.
fn distinct_b(us: &[Unifier], side: usize) -> Vec<MultiPoly> {
    let mut seen = BTreeMap::new();
    for u in us {
        if let Some(b) = &u.b[side] {
            seen.entry(b.render()).or_insert_with(|| b.clone());
        }
    }
    seen.into_values().collect()
}

/// How an ambiguous restriction had its parameter fixed.
#[derive(Clone, Debug)]
pub struct PinReport {
    pub restriction: String,
    /// Generator whose degrees in the ambiguous variable are all zero under `source`.
    pub generator: usize,
    pub source: String,
    /// Every value of `b` compatible with `source` on that generator.
    pub values: Vec<MultiPoly>,
}

impl PinReport {
    pub fn to_json(&self) -> Value {
        json!({
            "restriction": self.restriction,
            "generator": self.generator + 1,
            "source": self.source,
            "b": self.values.iter().map(|b| b.render()).collect::<Vec<_>>(),
        })
    }
}

/// Fixes `b` of an A-type restriction `r` whose signature in variable `j` is
/// ambiguous. Looks for a generator `p != i` and a single-vertex restriction
/// `M_q` under which `p` has signature exactly `{(0,0)}` in `H_j`. Every row
/// of `r` carries `b` linearly inside factors `(linear form +- b + const)`, so
/// degree zero in `H_j` forces `deg b <= 1` and unification at degree
/// [`UNIFY_DEGREE`] sees every solution.
fn auto_pin(g: &Gcm, r: &Restriction, i: usize, j: usize, exec: Exec) -> Result<Option<PinReport>> {
    let t = restriction_templates(g, r)?;
    if !t.has_b {
        return Ok(None);
    }
    let n = g.size();
    for p in (0..n).filter(|&p| p != i && !r.removed.contains(&p)) {
        for q in (0..n).filter(|&q| q != p && q != j) {
            let src = Restriction::remove(q);
            let Ok(st) = restriction_templates(g, &src) else { continue };
            let Ok(sig) = signatures_of(&st, p, j) else { continue };
            if sig.pairs != BTreeSet::from([(0, 0)]) {
                continue;
            }
            let us = unify([&t, &st], p, None, exec)?;
            return Ok(Some(PinReport { restriction: r.name(), generator: p, source: src.name(), values: distinct_b(&us, 0) }));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug)]
pub enum ObstructionOutcome {
    /// The signature sets do not meet.
    Obstructed { reason: String },
    /// Shared pairs and the parameter values that make the rows agree.
    Compatible { intersection: BTreeSet<(i64, i64)>, unifiers: Vec<Unifier> },
}

/// One side of an obstruction check.
#[derive(Clone, Debug)]
pub struct SideReport {
    pub restriction: Restriction,
    pub pin: Option<PinReport>,
    /// One set per pinned value (a single set when no pin was needed).
    pub signatures: Vec<SignatureSet>,
    pub pairs: BTreeSet<(i64, i64)>,
}

impl SideReport {
    pub fn to_json(&self) -> Value {
        json!({
            "restriction": self.restriction.name(),
            "pin": self.pin.as_ref().map(|p| p.to_json()),
            "signatures": self.signatures.iter().map(|s| s.to_json()).collect::<Vec<_>>(),
            "pairs": self.pairs.iter().map(|(a, b)| [a, b]).collect::<Vec<_>>(),
        })
    }
}

#[derive(Clone, Debug)]
pub struct ObstructionReport {
    pub generator: usize,
    pub var: usize,
    pub sides: [SideReport; 2],
    pub outcome: ObstructionOutcome,
}

impl ObstructionReport {
    pub fn obstructed(&self) -> bool {
        matches!(self.outcome, ObstructionOutcome::Obstructed { .. })
    }
    /// Unifier values of `b` for side `side`.
    pub fn unified_b(&self, side: usize) -> Vec<MultiPoly> {
        match &self.outcome {
            ObstructionOutcome::Compatible { unifiers, .. } => distinct_b(unifiers, side),
            _ => Vec::new(),
        }
    }
    pub fn to_json(&self) -> Value {
        let outcome = match &self.outcome {
            ObstructionOutcome::Obstructed { reason } => json!({"verdict": "Obstructed", "reason": reason}),
            ObstructionOutcome::Compatible { intersection, unifiers } => json!({
                "verdict": "Compatible",
                "intersection": intersection.iter().map(|(a, b)| [a, b]).collect::<Vec<_>>(),
                "unifiers": unifiers.iter().map(|u| u.to_json()).collect::<Vec<_>>(),
                "b": ([0usize, 1]).iter().map(|&s| distinct_b(unifiers, s).iter().map(|b| b.render()).collect::<Vec<_>>()).collect::<Vec<_>>(),
            }),
        };
        json!({
            "version": crate::VERSION,
            "generator": self.generator + 1,
            "variable": format!("H_{}", self.var + 1),
            "sides": self.sides.iter().map(|s| s.to_json()).collect::<Vec<_>>(),
            "outcome": outcome,
        })
    }
}

fn side_report(g: &Gcm, r: &Restriction, i: usize, j: usize, exec: Exec) -> Result<SideReport> {
    match degree_signatures(g, r, i, j) {
        Ok(s) => Ok(SideReport { restriction: r.clone(), pin: None, pairs: s.pairs.clone(), signatures: vec![s] }),
        Err(Error::Ambiguous { restriction, var }) => {
            let pin = auto_pin(g, r, i, j, exec)?.ok_or(Error::Ambiguous { restriction, var })?;
            let mut signatures = Vec::new();
            let mut pairs = BTreeSet::new();
            for b in &pin.values {
                let s = degree_signatures(g, &r.clone().with_pin(b.clone()), i, j)?;
                pairs.extend(s.pairs.iter().copied());
                signatures.push(s);
            }
            Ok(SideReport { restriction: r.clone(), pin: Some(pin), signatures, pairs })
        }
        Err(e) => Err(e),
    }
}

/// Compares the signatures of generator `i` in variable `j` (0-based) under two restrictions.
pub fn restriction_obstruction(g: &Gcm, i: usize, j: usize, restrictions: [Restriction; 2], exec: Exec) -> Result<ObstructionReport> {
    let [r1, r2] = restrictions;
    let s1 = side_report(g, &r1, i, j, exec)?;
    let s2 = side_report(g, &r2, i, j, exec)?;
    let inter: BTreeSet<(i64, i64)> = s1.pairs.intersection(&s2.pairs).copied().collect();
    let outcome = if inter.is_empty() {
        let pinned = if s1.pin.as_ref().is_some_and(|p| p.values.is_empty()) || s2.pin.as_ref().is_some_and(|p| p.values.is_empty()) {
            " (no value of b survives the pin)"
        } else {
            ""
        };
        ObstructionOutcome::Obstructed {
            reason: format!("{} ∩ {} = ∅ for (deg_{j1} E_{i1}, deg_{j1} F_{i1}){pinned}", render(&s1.pairs), render(&s2.pairs), i1 = i + 1, j1 = j + 1),
        }
    } else {
        let t1 = restriction_templates(g, &pinned_or_plain(&s1))?;
        let t2 = restriction_templates(g, &pinned_or_plain(&s2))?;
        let unifiers = unify([&t1, &t2], i, Some((j, &inter)), exec)?;
        if unifiers.is_empty() {
            ObstructionOutcome::Obstructed { reason: format!("degree pairs {} are shared but no rows with those pairs agree", render(&inter)) }
        } else {
            ObstructionOutcome::Compatible { intersection: inter, unifiers }
        }
    };
    Ok(ObstructionReport { generator: i, var: j, sides: [s1, s2], outcome })
}

/// A pinned side with a single value keeps its pin for unification.
fn pinned_or_plain(s: &SideReport) -> Restriction {
    match &s.pin {
        Some(p) if p.values.len() == 1 => s.restriction.clone().with_pin(p.values[0].clone()),
        _ => s.restriction.clone(),
    }
}

fn render(s: &BTreeSet<(i64, i64)>) -> String {
    let v: Vec<String> = s.iter().map(|(a, b)| format!("({a},{b})")).collect();
    format!("{{{}}}", v.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[(i64, i64)]) -> BTreeSet<(i64, i64)> {
        v.iter().copied().collect()
    }

    #[test]
    fn b3_embedding_and_signatures() {
        let g = finite_matrix('B', 3).unwrap();
        let t = restriction_templates(&g, &Restriction::remove(2)).unwrap();
        assert_eq!(t.embedding[&0].render(), "H_1 - 1/3*H_3");
        assert_eq!(t.embedding[&1].render(), "H_2 - 2/3*H_3");
        assert_eq!(degree_signatures(&g, &Restriction::remove(2), 1, 0).unwrap().pairs, set(&[(0, 1), (1, 0)]));
        assert_eq!(degree_signatures(&g, &Restriction::remove(0), 1, 0).unwrap().pairs, set(&[(0, 2), (2, 0)]));
    }

    #[test]
    fn ambiguous_variable_refused() {
        let g = finite_matrix('B', 3).unwrap();
        assert!(matches!(degree_signatures(&g, &Restriction::remove(2), 1, 2), Err(Error::Ambiguous { .. })));
    }

    #[test]
    fn uncataloged_restriction_refused() {
        let g = finite_matrix('D', 4).unwrap();
        // removing the branch vertex leaves three isolated vertices
        assert!(matches!(degree_signatures(&g, &Restriction::remove(1), 0, 2), Err(Error::Unsupported(_))));
    }
}
