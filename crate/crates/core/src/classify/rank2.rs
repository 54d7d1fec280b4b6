//! Bounded-degree search over the rank-2 matrices `A(r,s) = [[2,-r],[-s,2]]`.
//!
//! Each generator pair `(e_i, f_i, alpha_i)` is an sl_2 acting on the polynomial
//! ring, so `(E_i, F_i)` takes one of three shapes in `X_i = alpha_i / 2` with a
//! parameter polynomial in the variables `sigma_i` leaves fixed. Every
//! relation residual is homogeneous in the unit factors `a_i`, so the units are
//! set to 1 before the coefficient system is formed.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::cartan::Gcm;
use crate::error::{Error, Result};
use crate::exactpoly::{q, qi, Ctx, Monomial, MultiPoly, Rational, VarContext, VarKind};
use crate::exec::Exec;
use crate::idealsolve::{is_unsat, PolySystem, Satisfiability};
use crate::modfam::{build_a, build_b2, HFreeModule, Param};
use crate::twistop::TwistedOp;
use crate::verify::relation_residuals;

/// The three sl_2 shapes of `(E, F)`:
/// 1: `(X + b, -X + b)`, 2: `(1, -(X^2 + X + b))`, 3: `(-X^2 + X + b, 1)`.
pub const SHAPES: [u8; 3] = [1, 2, 3];

/// Outcome of one shape combination.
#[derive(Clone, Debug)]
pub struct ComboReport {
    pub shapes: (u8, u8),
    /// Unsatisfiable already without the Serre relations.
    pub unsat_without_serre: bool,
    /// `None` when Serre relations were not needed.
    pub unsat_with_serre: Option<bool>,
    pub equations: usize,
    /// Parameters forced by the Gröbner basis when the system survives.
    pub b: Option<String>,
    pub c: Option<String>,
}

impl ComboReport {
    pub fn unsat(&self) -> bool {
        self.unsat_without_serre || self.unsat_with_serre == Some(true)
    }
    pub fn to_json(&self) -> Value {
        json!({
            "shapes": [self.shapes.0, self.shapes.1],
            "unsat": self.unsat(),
            "unsat_without_serre": self.unsat_without_serre,
            "unsat_with_serre": self.unsat_with_serre,
            "equations": self.equations,
            "b": self.b,
            "c": self.c,
        })
    }
}

#[derive(Clone, Debug)]
pub enum Rank2Verdict {
    /// Every shape combination is refuted.
    Unsat,
    /// A known family exists; the module has been verified.
    SatKnownFamily(Box<HFreeModule>),
    /// Some combination survives and no verified family is available.
    Unknown,
}

#[derive(Clone, Debug)]
pub struct Rank2Search {
    pub r: i64,
    pub s: i64,
    pub bound: u32,
    pub verdict: Rank2Verdict,
    pub combos: Vec<ComboReport>,
}

impl Rank2Search {
    pub fn verdict_name(&self) -> &'static str {
        match self.verdict {
            Rank2Verdict::Unsat => "Unsat",
            Rank2Verdict::SatKnownFamily(_) => "SatKnownFamily",
            Rank2Verdict::Unknown => "Unknown",
        }
    }

    /// The `(b, c)` pairs forced in surviving combinations.
    pub fn witnesses(&self) -> Vec<(u8, u8, String, String)> {
        self.combos
            .iter()
            .filter(|c| !c.unsat())
            .filter_map(|c| Some((c.shapes.0, c.shapes.1, c.b.clone()?, c.c.clone()?)))
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let module = match &self.verdict {
            Rank2Verdict::SatKnownFamily(m) => m.to_json(),
            _ => Value::Null,
        };
        json!({
            "version": crate::VERSION,
            "r": self.r,
            "s": self.s,
            "bound": self.bound,
            "verdict": self.verdict_name(),
            "module": module,
            "combinations": self.combos.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
        })
    }
}

/// Polynomial ring of the search: Cartan variables, an extra central one when
/// `rs = 4`, and the parameter coefficients as unknowns.
struct Model {
    ctx: Ctx,
    unknowns: Ctx,
    /// Indices of the `H` variables in `ctx`.
    hvars: Vec<usize>,
    coroots: [MultiPoly; 2],
    /// Generic parameter polynomials for generators 1 and 2.
    params: [MultiPoly; 2],
    /// Unknown names with the `H`-monomial each one multiplies.
    coeff_monomials: [Vec<(String, MultiPoly)>; 2],
}

fn exponents(nvars: usize, bound: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..nvars {
        out = out.into_iter().flat_map(|p: Vec<u32>| (0..=bound).map(move |e| [p.clone(), vec![e]].concat())).collect();
    }
    out.retain(|e| e.iter().sum::<u32>() <= bound);
    out.sort_by_key(|e| (e.iter().sum::<u32>(), e.clone()));
    out
}

fn build_model(r: i64, s: i64, bound: u32) -> Result<Model> {
    let singular = r * s == 4;
    let mut names: Vec<String> = vec!["H_1".into(), "H_2".into()];
    let mut kinds = vec![VarKind::Cartan, VarKind::Cartan];
    if singular {
        names.push("H_3".into());
        kinds.push(VarKind::Central);
    }
    let nh = names.len();
    // parameter of generator 1 lives in the variables other than H_1, of generator 2 other than H_2
    let free: [Vec<usize>; 2] = if singular { [vec![1, 2], vec![0, 2]] } else { [vec![1], vec![0]] };
    let mut specs: [Vec<(String, Vec<u32>)>; 2] = [Vec::new(), Vec::new()];
    for (g, letter) in ["b", "c"].iter().enumerate() {
        for e in exponents(free[g].len(), bound) {
            let tag = e.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("_");
            specs[g].push((format!("{letter}_{tag}"), e));
        }
    }
    let unknown_names: Vec<String> = specs.iter().flatten().map(|(n, _)| n.clone()).collect();
    names.extend(unknown_names.iter().cloned());
    kinds.extend(std::iter::repeat_n(VarKind::Unknown, unknown_names.len()));
    let ctx = VarContext::new(&names, &kinds, &[])?;
    let unknowns = VarContext::uniform(&unknown_names, VarKind::Unknown);
    let h = |i: usize| MultiPoly::var(&ctx, i);
    let mut coroot1 = &h(0).scale(&qi(2)) - &h(1).scale(&qi(r));
    let coroot2 = &h(0).scale(&qi(-s)) + &h(1).scale(&qi(2));
    if singular {
        coroot1 = &coroot1 + &h(2);
    }
    let mut params = [MultiPoly::zero(&ctx), MultiPoly::zero(&ctx)];
    let mut coeff_monomials: [Vec<(String, MultiPoly)>; 2] = [Vec::new(), Vec::new()];
    for g in 0..2 {
        for (name, e) in &specs[g] {
            let mut m = Monomial::one(ctx.len());
            for (k, &v) in free[g].iter().enumerate() {
                m.0[v] = e[k];
            }
            let mono = MultiPoly::monomial(&ctx, m, qi(1));
            let u = MultiPoly::var_named(&ctx, name)?;
            params[g] = &params[g] + &(&u * &mono);
            coeff_monomials[g].push((name.clone(), mono));
        }
    }
    Ok(Model { ctx, unknowns, hvars: (0..nh).collect(), coroots: [coroot1, coroot2], params, coeff_monomials })
}

fn shape_polys(x: &MultiPoly, b: &MultiPoly, shape: u8) -> (MultiPoly, MultiPoly) {
    let one = MultiPoly::one(x.ctx());
    let x2 = x * x;
    match shape {
        1 => (x + b, b - x),
        2 => (one, -(&(&x2 + x) + b)),
        _ => (&(x - &x2) + b, one),
    }
}

/// `[e_i, f_j] - delta_ij alpha_i` for all `i, j`.
fn bracket_residuals(e: &[TwistedOp; 2], f: &[TwistedOp; 2], coroots: &[MultiPoly; 2]) -> Result<Vec<TwistedOp>> {
    let mut out = Vec::new();
    for i in 0..2 {
        for j in 0..2 {
            let mut r = e[i].bracket(&f[j])?;
            if i == j {
                r = r.try_sub(&TwistedOp::multiplication(&coroots[i]))?;
            }
            out.push(r);
        }
    }
    Ok(out)
}

fn serre_residuals(e: &[TwistedOp; 2], f: &[TwistedOp; 2], r: i64, s: i64) -> Result<Vec<TwistedOp>> {
    let n = [(1 + r) as u32, (1 + s) as u32];
    Ok(vec![e[0].ad_power(n[0], &e[1])?, e[1].ad_power(n[1], &e[0])?, f[0].ad_power(n[0], &f[1])?, f[1].ad_power(n[1], &f[0])?])
}

/// Coefficients of every `H`-monomial of every shift component.
fn coefficient_equations(model: &Model, residuals: &[TwistedOp]) -> Result<Vec<MultiPoly>> {
    let mut eqs = Vec::new();
    for res in residuals {
        for p in res.terms().values() {
            for (_, c) in p.coefficients_in(&model.hvars, &model.unknowns)? {
                eqs.push(c.primitive());
            }
        }
    }
    Ok(dedup(eqs))
}

/// Drops zero and repeated equations, keeping a canonical order.
pub(crate) fn dedup(eqs: Vec<MultiPoly>) -> Vec<MultiPoly> {
    let mut seen = BTreeMap::new();
    for e in eqs.into_iter().filter(|e| !e.is_zero()) {
        seen.entry(e.render()).or_insert(e);
    }
    seen.into_values().collect()
}

fn forced_parameter(model: &Model, g: usize, values: &BTreeMap<String, Rational>) -> Option<String> {
    let hctx = VarContext::new(&model.ctx.names()[..model.hvars.len()], &model.ctx.kinds()[..model.hvars.len()], &[]).ok()?;
    let mut p = MultiPoly::zero(&model.ctx);
    for (name, mono) in &model.coeff_monomials[g] {
        p = &p + &mono.scale(values.get(name)?);
    }
    Some(p.embed(&hctx).ok()?.render())
}

fn run_combo(model: &Model, r: i64, s: i64, shapes: (u8, u8)) -> Result<ComboReport> {
    let half = q(1, 2);
    let x = [model.coroots[0].scale(&half), model.coroots[1].scale(&half)];
    let (e1, f1) = shape_polys(&x[0], &model.params[0], shapes.0);
    let (e2, f2) = shape_polys(&x[1], &model.params[1], shapes.1);
    let e = [TwistedOp::shifted(e1, 0, 1)?, TwistedOp::shifted(e2, 1, 1)?];
    let f = [TwistedOp::shifted(f1, 0, -1)?, TwistedOp::shifted(f2, 1, -1)?];
    let mut sys = PolySystem::new(&model.unknowns);
    sys.equations = coefficient_equations(model, &bracket_residuals(&e, &f, &model.coroots)?)?;
    let mut report = ComboReport { shapes, unsat_without_serre: false, unsat_with_serre: None, equations: sys.equations.len(), b: None, c: None };
    let gb = match is_unsat(&sys)? {
        Satisfiability::Unsat => {
            report.unsat_without_serre = true;
            return Ok(report);
        }
        Satisfiability::PossiblySat(_) => {
            sys.equations.extend(coefficient_equations(model, &serre_residuals(&e, &f, r, s)?)?);
            sys.equations = dedup(std::mem::take(&mut sys.equations));
            report.equations = sys.equations.len();
            match is_unsat(&sys)? {
                Satisfiability::Unsat => {
                    report.unsat_with_serre = Some(true);
                    return Ok(report);
                }
                Satisfiability::PossiblySat(gb) => {
                    report.unsat_with_serre = Some(false);
                    gb
                }
            }
        }
    };
    let values = gb.solved_values();
    report.b = forced_parameter(model, 0, &values);
    report.c = forced_parameter(model, 1, &values);
    Ok(report)
}

/// The verified family member for `rs <= 2`.
fn known_family(r: i64, s: i64) -> Result<Option<HFreeModule>> {
    let m = match (r, s) {
        (1, 1) => build_a(2, &Param::symbolic(2), &[], "0", &[1, 2, 3])?,
        (1, 2) => build_b2(&Param::symbolic(2), &[1, 2])?,
        (2, 1) => build_b2(&Param::symbolic(2), &[1, 2])?.relabel(&[1, 0])?,
        _ => return Ok(None),
    };
    debug_assert_eq!(m.gcm, Gcm::rank2(r, s)?);
    if relation_residuals(&m, Exec::Sequential)?.holds() {
        Ok(Some(m))
    } else {
        Err(Error::Unsupported(format!("family module for A({r},{s}) failed verification")))
    }
}

/// Enumerates the 3x3 shape combinations for `A(r,s)` with parameter degree at most `bound`.
pub fn search_rank2(r: i64, s: i64, bound: u32, exec: Exec) -> Result<Rank2Search> {
    if r < 1 || s < 1 {
        return Err(Error::Parameter(format!("r and s must be positive, got ({r},{s})")));
    }
    if bound < 2 {
        return Err(Error::Parameter(format!("degree bound {bound} is below 2, the smallest bound that covers the known families")));
    }
    let model = build_model(r, s, bound)?;
    let combos: Vec<(u8, u8)> = SHAPES.iter().flat_map(|&a| SHAPES.iter().map(move |&b| (a, b))).collect();
    let reports = exec.map(&combos, |&c| run_combo(&model, r, s, c)).into_iter().collect::<Result<Vec<_>>>()?;
    let verdict = if reports.iter().all(|c| c.unsat()) {
        Rank2Verdict::Unsat
    } else {
        match known_family(r, s)? {
            Some(m) => Rank2Verdict::SatKnownFamily(Box::new(m)),
            None => Rank2Verdict::Unknown,
        }
    };
    Ok(Rank2Search { r, s, bound, verdict, combos: reports })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_small_bound() {
        assert!(search_rank2(1, 3, 1, Exec::Sequential).is_err());
        assert!(search_rank2(0, 3, 2, Exec::Sequential).is_err());
    }

    #[test]
    fn a2_survives() {
        let res = search_rank2(1, 1, 2, Exec::Parallel).unwrap();
        assert!(matches!(res.verdict, Rank2Verdict::SatKnownFamily(_)));
    }
}
