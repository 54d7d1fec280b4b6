//! Bounded-degree refutation for loop algebras.
//!
//! On a module free of rank one over `C[h_1, K, d]`, the loop element
//! `h_1 (x) t^k` acts as `g -> tau^k(g) R_k` with `R_k = (h_1 (x) t^k) . 1` and
//! `tau: d -> d - 1`. The brackets `[h_1 t^m, h_1 t^n] = 2m delta_(m,-n) K`
//! become polynomial identities in the unknown `R`s.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactpoly::{qi, Ctx, Monomial, MultiPoly, VarContext, VarKind};
use crate::idealsolve::{is_unsat, PolySystem, Satisfiability};

/// How the loop variables `h_1, K` enter the unknown polynomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LoopModel {
    /// `R_m` ranges over all polynomials in `h_1, K, d` of total degree at most the bound.
    Full,
    /// `h_1 = 0`, `K = 1`: `R_m` ranges over polynomials in `d` alone. Any solution of
    /// the full system specializes to one of this system, so refuting it refutes the full one.
    Specialized,
}

#[derive(Clone, Debug)]
pub struct AffineRefutation {
    pub k: i64,
    pub j: i64,
    pub bound: u32,
    pub model: LoopModel,
    pub unknowns: usize,
    pub equations: usize,
    pub unsat: bool,
}

impl AffineRefutation {
    pub fn verdict_name(&self) -> &'static str {
        if self.unsat {
            "Unsat"
        } else {
            "Unknown"
        }
    }
    pub fn to_json(&self) -> Value {
        json!({
            "version": crate::VERSION,
            "k": self.k,
            "j": self.j,
            "bound": self.bound,
            "model": match self.model { LoopModel::Full => "full", LoopModel::Specialized => "specialized" },
            "unknowns": self.unknowns,
            "equations": self.equations,
            "verdict": self.verdict_name(),
        })
    }
}

pub(crate) fn monomials(nvars: usize, bound: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..nvars {
        out = out.into_iter().flat_map(|p: Vec<u32>| (0..=bound).map(move |e| [p.clone(), vec![e]].concat())).collect();
    }
    out.retain(|e| e.iter().sum::<u32>() <= bound);
    out
}

/// The bracket identities for loop degrees `k, -k, j, -j`, with unknown `R`s of degree at most `bound`.
pub fn loop_system(k: i64, j: i64, bound: u32, model: LoopModel) -> Result<PolySystem> {
    check(k, j, bound)?;
    let degrees = [k, -k, j, -j];
    let base: Vec<&str> = match model {
        LoopModel::Full => vec!["h_1", "K", "d"],
        LoopModel::Specialized => vec!["d"],
    };
    let exps = monomials(base.len(), bound);
    let rname = |m: i64| if m < 0 { format!("Rm{}", -m) } else { format!("R{m}") };
    let mut names: Vec<String> = base.iter().map(|s| s.to_string()).collect();
    let mut kinds = vec![VarKind::Central; base.len()];
    let dvar = base.len() - 1;
    kinds[dvar] = VarKind::Cartan;
    let mut unknown_names = Vec::new();
    for &m in &degrees {
        for e in &exps {
            unknown_names.push(format!("{}_{}", rname(m), e.iter().map(|x| x.to_string()).collect::<String>()));
        }
    }
    names.extend(unknown_names.iter().cloned());
    kinds.extend(std::iter::repeat_n(VarKind::Unknown, unknown_names.len()));
    let ctx: Ctx = VarContext::new(&names, &kinds, &[])?;
    let unknowns = VarContext::uniform(&unknown_names, VarKind::Unknown);
    let mut r = Vec::new();
    for (t, _) in degrees.iter().enumerate() {
        let mut p = MultiPoly::zero(&ctx);
        for (n, e) in exps.iter().enumerate() {
            let mut mono = Monomial::one(ctx.len());
            mono.0[..e.len()].copy_from_slice(e);
            mono.0[base.len() + t * exps.len() + n] = 1;
            p = &p + &MultiPoly::monomial(&ctx, mono, qi(1));
        }
        r.push(p);
    }
    let kk = match model {
        LoopModel::Full => MultiPoly::var(&ctx, 1),
        LoopModel::Specialized => MultiPoly::one(&ctx),
    };
    // [x_m, x_n] . 1 = R_m tau^m(R_n) - R_n tau^n(R_m)
    let bracket = |a: usize, b: usize| -> Result<MultiPoly> {
        let lhs = &r[a] * &r[b].shift(dvar, degrees[a])?;
        let rhs = &r[b] * &r[a].shift(dvar, degrees[b])?;
        Ok(&lhs - &rhs)
    };
    let mut residuals = vec![&bracket(0, 1)? - &kk.scale(&qi(2 * k)), &bracket(2, 3)? - &kk.scale(&qi(2 * j))];
    for a in [0, 1] {
        for b in [2, 3] {
            residuals.push(bracket(a, b)?);
        }
    }
    let hvars: Vec<usize> = (0..base.len()).collect();
    let mut eqs = Vec::new();
    for res in &residuals {
        for (_, c) in res.coefficients_in(&hvars, &unknowns)? {
            eqs.push(c);
        }
    }
    let mut sys = PolySystem::new(&unknowns);
    sys.equations = super::rank2::dedup(eqs);
    Ok(sys)
}

fn check(k: i64, j: i64, bound: u32) -> Result<()> {
    if k == 0 || j == 0 {
        return Err(Error::Parameter("k and j must be nonzero".into()));
    }
    if k == j {
        return Err(Error::Parameter("k and j must differ".into()));
    }
    if k + j == 0 {
        return Err(Error::Parameter("k + j must be nonzero".into()));
    }
    if bound < 2 {
        return Err(Error::Parameter(format!("degree bound {bound} is below 2")));
    }
    Ok(())
}

/// Refutes the loop-bracket identities at degrees `k, j` with `R`s of degree at most `bound`.
pub fn refute_affine_loop(k: i64, j: i64, bound: u32, model: LoopModel) -> Result<AffineRefutation> {
    let sys = loop_system(k, j, bound, model)?;
    let unsat = matches!(is_unsat(&sys)?, Satisfiability::Unsat);
    Ok(AffineRefutation { k, j, bound, model, unknowns: sys.ctx.len(), equations: sys.equations.len(), unsat })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hypotheses_enforced() {
        assert!(refute_affine_loop(1, -1, 2, LoopModel::Specialized).is_err());
        assert!(refute_affine_loop(2, 2, 2, LoopModel::Specialized).is_err());
        assert!(refute_affine_loop(0, 2, 2, LoopModel::Specialized).is_err());
        assert!(refute_affine_loop(1, 2, 1, LoopModel::Specialized).is_err());
    }

    #[test]
    fn specialized_refutes() {
        assert!(refute_affine_loop(1, 2, 2, LoopModel::Specialized).unwrap().unsat);
    }

    #[test]
    fn dropping_the_central_identity_is_satisfiable() {
        // without 2kK on the right the zero solution survives
        let mut sys = loop_system(1, 2, 2, LoopModel::Specialized).unwrap();
        sys.equations.retain(|e| e.constant_term() == num_traits::Zero::zero());
        assert!(!is_unsat(&sys).unwrap().is_unsat());
    }
}
