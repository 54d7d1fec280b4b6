//! Relation checking for candidate modules and an operational simplicity probe.

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactpoly::{qi, Monomial, MultiPoly, VarKind};
use crate::exec::Exec;
use crate::modfam::HFreeModule;
use crate::twistop::TwistedOp;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RelationKind {
    CartanE,
    CartanF,
    Bracket,
    SerreE,
    SerreF,
}

#[derive(Clone, Debug)]
pub struct Residual {
    pub kind: RelationKind,
    pub name: String,
    pub residual: TwistedOp,
    /// Serre relations of a non-symmetrizable matrix are reported but not required.
    pub advisory: bool,
}

impl Residual {
    pub fn holds(&self) -> bool {
        self.residual.is_zero()
    }
}

#[derive(Clone, Debug)]
pub struct RelationReport {
    pub residuals: Vec<Residual>,
}

impl RelationReport {
    /// All required relations hold.
    pub fn holds(&self) -> bool {
        self.residuals.iter().all(|r| r.advisory || r.holds())
    }
    pub fn failures(&self) -> Vec<&Residual> {
        self.residuals.iter().filter(|r| !r.holds()).collect()
    }
    pub fn to_json(&self) -> Value {
        json!({
            "holds": self.holds(),
            "relations": self.residuals.iter().map(|r| json!({
                "relation": r.name,
                "kind": r.kind,
                "holds": r.holds(),
                "advisory": r.advisory,
                "residual": r.residual.render(),
            })).collect::<Vec<_>>(),
        })
    }
}

#[derive(Clone, Debug)]
enum Task {
    CartanE(usize, usize),
    CartanF(usize, usize),
    Bracket(usize, usize),
    SerreE(usize, usize),
    SerreF(usize, usize),
}

fn run_task(m: &HFreeModule, t: &Task, advisory_serre: bool) -> Result<Residual> {
    let ctx = m.ctx();
    let name = |v: usize| ctx.name(v).to_string();
    Ok(match *t {
        Task::CartanE(v, j) => {
            let h = TwistedOp::multiplication(&MultiPoly::var(ctx, v));
            let want = if v == j { m.e[j].clone() } else { TwistedOp::zero(ctx) };
            Residual { kind: RelationKind::CartanE, name: format!("[{}, e_{}]", name(v), j + 1), residual: h.bracket(&m.e[j])?.try_sub(&want)?, advisory: false }
        }
        Task::CartanF(v, j) => {
            let h = TwistedOp::multiplication(&MultiPoly::var(ctx, v));
            let want = if v == j { m.f[j].scale(&qi(-1)) } else { TwistedOp::zero(ctx) };
            Residual { kind: RelationKind::CartanF, name: format!("[{}, f_{}]", name(v), j + 1), residual: h.bracket(&m.f[j])?.try_sub(&want)?, advisory: false }
        }
        Task::Bracket(i, j) => {
            let want = if i == j { TwistedOp::multiplication(&m.basis.coroots[i]) } else { TwistedOp::zero(ctx) };
            Residual { kind: RelationKind::Bracket, name: format!("[e_{}, f_{}]", i + 1, j + 1), residual: m.e[i].bracket(&m.f[j])?.try_sub(&want)?, advisory: false }
        }
        Task::SerreE(i, j) => {
            let n = serre_power(m, i, j);
            Residual { kind: RelationKind::SerreE, name: format!("(ad e_{})^{}(e_{})", i + 1, n, j + 1), residual: m.e[i].ad_power(n, &m.e[j])?, advisory: advisory_serre }
        }
        Task::SerreF(i, j) => {
            let n = serre_power(m, i, j);
            Residual { kind: RelationKind::SerreF, name: format!("(ad f_{})^{}(f_{})", i + 1, n, j + 1), residual: m.f[i].ad_power(n, &m.f[j])?, advisory: advisory_serre }
        }
    })
}

fn serre_power(m: &HFreeModule, i: usize, j: usize) -> u32 {
    (1 - m.gcm.entry(i, j)) as u32
}

/// Residuals of every defining relation; empty residual means the relation holds.
pub fn relation_residuals(m: &HFreeModule, exec: Exec) -> Result<RelationReport> {
    let l = m.rank();
    let ctx = m.ctx();
    let cartan: Vec<usize> = (0..ctx.len()).filter(|&v| ctx.kind(v) == VarKind::Cartan).collect();
    let mut tasks = Vec::new();
    for &v in &cartan {
        for j in 0..l {
            tasks.push(Task::CartanE(v, j));
            tasks.push(Task::CartanF(v, j));
        }
    }
    for i in 0..l {
        for j in 0..l {
            tasks.push(Task::Bracket(i, j));
        }
    }
    for i in 0..l {
        for j in 0..l {
            if i != j {
                tasks.push(Task::SerreE(i, j));
                tasks.push(Task::SerreF(i, j));
            }
        }
    }
    let advisory = !m.gcm.is_symmetrizable();
    let residuals = exec.map(&tasks, |t| run_task(m, t, advisory)).into_iter().collect::<Result<Vec<_>>>()?;
    Ok(RelationReport { residuals })
}

/// `(ad e_i)^(1-a_ij)(e_j)` and `(ad f_i)^(1-a_ij)(f_j)`, 0-based indices.
pub fn verify_serre(m: &HFreeModule, i: usize, j: usize) -> Result<(TwistedOp, TwistedOp)> {
    let l = m.rank();
    if i >= l || j >= l {
        return Err(Error::Parameter(format!("generator index out of range 1..={l}")));
    }
    if i == j {
        return Err(Error::Parameter("Serre relations need i != j".into()));
    }
    let n = serre_power(m, i, j);
    Ok((m.e[i].ad_power(n, &m.e[j])?, m.f[i].ad_power(n, &m.f[j])?))
}

/// Rebuilds a module from JSON and checks every relation.
pub fn load_verified(v: &Value, exec: Exec) -> Result<(HFreeModule, RelationReport)> {
    let m = HFreeModule::from_json(v)?;
    let r = relation_residuals(&m, exec)?;
    Ok((m, r))
}

/// One reduction step: `output = op(input)`.
#[derive(Clone, Debug)]
pub struct ReductionStep {
    pub operator: String,
    pub op: TwistedOp,
    pub input: MultiPoly,
    pub output: MultiPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProbeOutcome {
    /// The submodule generated by the input contains this nonzero constant (a rational
    /// times a monomial in unit parameters), hence equals the module.
    Constant(MultiPoly),
    Inconclusive(String),
}

#[derive(Clone, Debug)]
pub struct ReductionTrace {
    /// Definitions of the shift operators `T_i` as words in the generators.
    pub shift_ops: Vec<String>,
    pub steps: Vec<ReductionStep>,
    pub terminal: MultiPoly,
    pub outcome: ProbeOutcome,
}

impl ReductionTrace {
    pub fn succeeded(&self) -> bool {
        matches!(self.outcome, ProbeOutcome::Constant(_))
    }

    /// Re-applies every recorded operator and checks that the chain is consistent.
    pub fn replay(&self, start: &MultiPoly) -> Result<bool> {
        let mut cur = start.clone();
        for s in &self.steps {
            if s.input != cur || s.op.apply(&cur)? != s.output {
                return Ok(false);
            }
            cur = s.output.clone();
        }
        Ok(cur == self.terminal)
    }

    pub fn to_json(&self) -> Value {
        let outcome = match &self.outcome {
            ProbeOutcome::Constant(c) => json!({"result": "constant", "value": c.render()}),
            ProbeOutcome::Inconclusive(r) => json!({"result": "inconclusive", "reason": r}),
        };
        json!({
            "outcome": outcome,
            "shift_operators": self.shift_ops,
            "steps": self.steps.iter().map(|s| json!({"operator": s.operator, "input": s.input.render(), "output": s.output.render()})).collect::<Vec<_>>(),
            "terminal": self.terminal.render(),
        })
    }
}

/// Inverse of a nonzero rational times a monomial in unit variables.
fn unit_inverse(p: &MultiPoly) -> Option<MultiPoly> {
    if p.num_terms() != 1 {
        return None;
    }
    let (m, c) = p.leading()?;
    let ctx = p.ctx();
    let mut inv = Monomial::one(ctx.len());
    for (v, &e) in m.0.iter().enumerate() {
        if e == 0 {
            continue;
        }
        let partner = ctx.unit_pairs().iter().find_map(|&(a, b)| if a == v { Some(b) } else if b == v { Some(a) } else { None })?;
        inv.0[partner] += e;
    }
    Some(MultiPoly::monomial(ctx, inv, c.recip()))
}

/// A realization of `sigma_i^{dir}` valid on polynomials free of `forbid`.
struct ShiftCap {
    op: TwistedOp,
    dir: i64,
    forbid: Vec<usize>,
    word: String,
}

fn mentions(p: &MultiPoly, vars: &[usize]) -> bool {
    vars.iter().any(|&v| p.degree_in(v).unwrap_or(-1) > 0)
}

fn shift_capability(m: &HFreeModule, i: usize, next: Option<&ShiftCap>) -> Option<ShiftCap> {
    let ctx = m.ctx();
    for (gen, poly, dir, name) in [(&m.e[i], m.e_poly(i), 1, "e"), (&m.f[i], m.f_poly(i), -1, "f")] {
        if let Some(inv) = unit_inverse(&poly) {
            return Some(ShiftCap {
                op: gen.premul(&inv).ok()?,
                dir,
                forbid: Vec::new(),
                word: format!("T_{} = ({})*{}_{}", i + 1, inv.render(), name, i + 1),
            });
        }
    }
    let nx = next?;
    let j = i + 1;
    if j >= m.rank() {
        return None;
    }
    // T_{i+1} acts as sigma_{i+1}^{dir'}; if that shift changes the generator polynomial
    // by a unit, then (T_{i+1} - 1) o gen isolates sigma_i^{+-1}
    for (gen, poly, dir, name) in [(&m.e[i], m.e_poly(i), 1, "e"), (&m.f[i], m.f_poly(i), -1, "f")] {
        if mentions(&poly, &nx.forbid) {
            continue;
        }
        let delta = &poly.shift(j, nx.dir).ok()? - &poly;
        let inv = match unit_inverse(&delta) {
            Some(x) => x,
            None => continue,
        };
        let t_minus_1 = nx.op.try_sub(&TwistedOp::identity(ctx)).ok()?;
        let op = t_minus_1.compose(gen).ok()?.premul(&inv).ok()?;
        let mut forbid = nx.forbid.clone();
        forbid.push(j);
        return Some(ShiftCap { op, dir, forbid, word: format!("T_{} = ({})*(T_{} - 1)*{}_{}", i + 1, inv.render(), j + 1, name, i + 1) });
    }
    None
}

/// Reduces `g` to a nonzero constant with operators from the module, recording each step.
///
/// For `i = l..1` it builds `T_i` acting as `sigma_i^{+-1}` (directly from a unit `E_i`
/// or `F_i`, or as `(T_{i+1} - 1)` composed with a generator whose polynomial changes by a
/// unit under `T_{i+1}`), then applies `T_i - 1` until `H_i` disappears.
pub fn simplicity_probe(m: &HFreeModule, g: &MultiPoly, max_steps: usize) -> Result<ReductionTrace> {
    if g.is_zero() {
        return Err(Error::Input("probe polynomial must be nonzero".into()));
    }
    if !crate::exactpoly::same_ctx(g.ctx(), m.ctx()) {
        return Err(Error::ContextMismatch);
    }
    let l = m.rank();
    let ctx = m.ctx();
    let mut trace = ReductionTrace { shift_ops: Vec::new(), steps: Vec::new(), terminal: g.clone(), outcome: ProbeOutcome::Inconclusive(String::new()) };
    let degs = |p: &MultiPoly| -> Vec<i64> { (0..l).rev().map(|v| p.degree_in(v).unwrap()).collect() };
    let mut caps: Vec<Option<ShiftCap>> = (0..l).map(|_| None).collect();
    for i in (0..l).rev() {
        let next = if i + 1 < l { caps[i + 1].as_ref() } else { None };
        caps[i] = shift_capability(m, i, next);
    }
    let mut cur = g.clone();
    for i in (0..l).rev() {
        if cur.degree_in(i)? <= 0 {
            continue;
        }
        let cap = match &caps[i] {
            Some(c) => c,
            None => {
                trace.terminal = cur;
                trace.outcome = ProbeOutcome::Inconclusive(format!("no shift operator found for {}", ctx.name(i)));
                return Ok(trace);
            }
        };
        trace.shift_ops.push(cap.word.clone());
        let step_op = cap.op.try_sub(&TwistedOp::identity(ctx))?;
        while cur.degree_in(i)? > 0 {
            if trace.steps.len() >= max_steps {
                trace.terminal = cur;
                trace.outcome = ProbeOutcome::Inconclusive(format!("step budget {max_steps} exhausted"));
                return Ok(trace);
            }
            let out = step_op.apply(&cur)?;
            if out.is_zero() || degs(&out) >= degs(&cur) {
                trace.terminal = cur;
                trace.outcome = ProbeOutcome::Inconclusive(format!("T_{} - 1 failed to lower the degree vector", i + 1));
                return Ok(trace);
            }
            trace.steps.push(ReductionStep { operator: format!("T_{} - 1", i + 1), op: step_op.clone(), input: cur.clone(), output: out.clone() });
            cur = out;
        }
    }
    trace.outcome = match unit_inverse(&cur) {
        Some(_) => ProbeOutcome::Constant(cur.clone()),
        None => ProbeOutcome::Inconclusive("terminal polynomial is not a nonzero constant".into()),
    };
    trace.terminal = cur;
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modfam::{build_a, build_b2, build_c, Param};

    #[test]
    fn b2_module_holds() {
        let m = build_b2(&Param::ones(2), &[1, 2]).unwrap();
        let r = relation_residuals(&m, Exec::Sequential).unwrap();
        assert!(r.holds(), "{:?}", r.failures().iter().map(|x| &x.name).collect::<Vec<_>>());
        let (e, f) = verify_serre(&m, 1, 0).unwrap();
        assert!(e.is_zero() && f.is_zero());
        assert!(verify_serre(&m, 0, 0).is_err());
    }

    #[test]
    fn a2_module_holds() {
        let m = build_a(2, &Param::ones(2), &[], "1/3", &[1]).unwrap();
        assert!(relation_residuals(&m, Exec::Parallel).unwrap().holds());
        let (_, f) = verify_serre(&m, 0, 1).unwrap();
        assert!(f.is_zero());
    }

    #[test]
    fn sabotage_breaks_bracket() {
        let m = build_b2(&Param::ones(2), &[1, 2]).unwrap();
        let mut v = m.to_json();
        let e2 = v["E"][1].as_str().unwrap().to_string();
        v["E"][1] = Value::String(format!("{e2} + 1"));
        let (_, r) = load_verified(&v, Exec::Sequential).unwrap();
        assert!(!r.holds());
        assert!(r.failures().iter().any(|x| x.name == "[e_2, f_2]"));
    }

    #[test]
    fn decomposable_commuting_actions() {
        let g = crate::cartan::Gcm::new(vec![vec![2, 0], vec![0, 2]]).unwrap();
        let ctx = crate::exactpoly::VarContext::cartan(2);
        let basis = crate::cartan::CartanBasis::in_context(&g, &ctx).unwrap();
        let p = |s: &str| MultiPoly::parse(&ctx, s).unwrap();
        let m = HFreeModule::from_polys(g, basis, vec![p("-H_1"), p("-H_2")], vec![p("H_1"), p("H_2")], "custom", Value::Null).unwrap();
        let (e, _) = verify_serre(&m, 0, 1).unwrap();
        assert!(e.is_zero());
        assert!(relation_residuals(&m, Exec::Sequential).unwrap().holds());
    }

    #[test]
    fn probe_examples() {
        let m = build_c(2, &Param::ones(2), &[1, 2]).unwrap();
        let g = MultiPoly::parse(m.ctx(), "H_2").unwrap();
        let t = simplicity_probe(&m, &g, 200).unwrap();
        assert!(t.succeeded(), "{:?}", t.outcome);
        assert!(t.replay(&g).unwrap());
        let five = MultiPoly::parse(m.ctx(), "5").unwrap();
        let t = simplicity_probe(&m, &five, 200).unwrap();
        assert!(t.succeeded() && t.steps.is_empty());
        let m3 = build_c(3, &Param::ones(3), &[1, 2, 3]).unwrap();
        let g = MultiPoly::parse(m3.ctx(), "H_1^2*H_3").unwrap();
        let t = simplicity_probe(&m3, &g, 200).unwrap();
        assert!(t.succeeded(), "{:?}", t.outcome);
        assert!(t.replay(&g).unwrap());
        assert!(simplicity_probe(&m3, &MultiPoly::zero(m3.ctx()), 10).is_err());
    }

    #[test]
    fn probe_symbolic_units() {
        let m = build_c(3, &Param::symbolic(3), &[2]).unwrap();
        let g = MultiPoly::parse(m.ctx(), "H_1*H_2*H_3 + H_2^2").unwrap();
        let t = simplicity_probe(&m, &g, 200).unwrap();
        assert!(t.succeeded(), "{:?}", t.outcome);
    }

    #[test]
    fn probe_inconclusive_for_full_a() {
        let m = build_a(2, &Param::ones(2), &[], "0", &[1, 2, 3]).unwrap();
        let g = MultiPoly::parse(m.ctx(), "H_2").unwrap();
        let t = simplicity_probe(&m, &g, 50).unwrap();
        assert!(!t.succeeded());
    }
}
