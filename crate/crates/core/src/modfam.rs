//! Constructors for the explicit module families: type A (with an optional
//! central parameter), sl_2 with a central extension, B_2 and C_l.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cartan::{finite_matrix, CartanBasis, Gcm};
use crate::error::{Error, Result};
use crate::exactpoly::{parse_rational, q, qi, render_rational, Ctx, MultiPoly, Rational, VarContext, VarKind};
use crate::twistop::TwistedOp;

/// A unit parameter `a_i`: a fixed nonzero rational or a symbolic unit with inverse `abar_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Param {
    Value(Rational),
    Symbolic,
}

impl Param {
    pub fn int(n: i64) -> Param {
        Param::Value(qi(n))
    }
    pub fn ones(l: usize) -> Vec<Param> {
        vec![Param::int(1); l]
    }
    pub fn symbolic(l: usize) -> Vec<Param> {
        vec![Param::Symbolic; l]
    }
    fn render(&self) -> Value {
        match self {
            Param::Value(r) => Value::String(render_rational(r)),
            Param::Symbolic => Value::String("symbolic".into()),
        }
    }
}

/// A module on `U(h)` (possibly with spectator central variables) given by
/// `e_i = E_i sigma_i` and `f_i = F_i sigma_i^{-1}`.
#[derive(Clone, Debug)]
pub struct HFreeModule {
    pub gcm: Gcm,
    pub basis: CartanBasis,
    pub e: Vec<TwistedOp>,
    pub f: Vec<TwistedOp>,
    pub family: String,
    pub parameters: Value,
}

impl HFreeModule {
    /// Assembles a module from `E_i`, `F_i`; generator `i` shifts variable `i`.
    pub fn from_polys(gcm: Gcm, basis: CartanBasis, es: Vec<MultiPoly>, fs: Vec<MultiPoly>, family: &str, parameters: Value) -> Result<Self> {
        let l = gcm.size();
        if es.len() != l || fs.len() != l || basis.coroots.len() != l {
            return Err(Error::Input(format!("expected {l} generator polynomials and coroots")));
        }
        let mut e = Vec::with_capacity(l);
        let mut f = Vec::with_capacity(l);
        for i in 0..l {
            if es[i].is_zero() || fs[i].is_zero() {
                return Err(Error::Input(format!("E_{0} and F_{0} must be nonzero", i + 1)));
            }
            if basis.ctx.kind(i) != VarKind::Cartan {
                return Err(Error::Input(format!("variable `{}` is not a Cartan variable", basis.ctx.name(i))));
            }
            e.push(TwistedOp::shifted(es[i].clone(), i, 1)?);
            f.push(TwistedOp::shifted(fs[i].clone(), i, -1)?);
        }
        Ok(HFreeModule { gcm, basis, e, f, family: family.into(), parameters })
    }

    pub fn ctx(&self) -> &Ctx {
        &self.basis.ctx
    }
    pub fn rank(&self) -> usize {
        self.gcm.size()
    }
    /// `E_i = e_i . 1` (0-based `i`).
    pub fn e_poly(&self, i: usize) -> MultiPoly {
        self.e[i].apply(&MultiPoly::one(self.ctx())).expect("same context")
    }
    pub fn f_poly(&self, i: usize) -> MultiPoly {
        self.f[i].apply(&MultiPoly::one(self.ctx())).expect("same context")
    }

    /// Renames vertices: new vertex `k` is old vertex `p[k]`. Variables `H_i` follow their vertex.
    pub fn relabel(&self, p: &[usize]) -> Result<HFreeModule> {
        let l = self.rank();
        let mut seen = p.to_vec();
        seen.sort_unstable();
        if seen != (0..l).collect::<Vec<_>>() {
            return Err(Error::Input("not a permutation".into()));
        }
        let ctx = self.ctx();
        let n = ctx.len();
        // old H_{p[k]} becomes new H_k; everything else stays
        let mut images: Vec<MultiPoly> = (0..n).map(|v| MultiPoly::var(ctx, v)).collect();
        for (k, &old) in p.iter().enumerate() {
            images[old] = MultiPoly::var(ctx, k);
        }
        let sub = |x: &MultiPoly| x.substitute(ctx, &images);
        let es = p.iter().map(|&o| sub(&self.e_poly(o))).collect::<Result<Vec<_>>>()?;
        let fs = p.iter().map(|&o| sub(&self.f_poly(o))).collect::<Result<Vec<_>>>()?;
        let coroots = p.iter().map(|&o| sub(&self.basis.coroots[o])).collect::<Result<Vec<_>>>()?;
        let basis = CartanBasis { ctx: ctx.clone(), coroots };
        let mut params = self.parameters.clone();
        if let Value::Object(m) = &mut params {
            m.insert("relabel".into(), json!(p.iter().map(|x| x + 1).collect::<Vec<_>>()));
        }
        HFreeModule::from_polys(self.gcm.permuted(p), basis, es, fs, &self.family, params)
    }

    /// Same generator operators (and matrix), compared term by term.
    pub fn same_action(&self, o: &HFreeModule) -> bool {
        self.gcm == o.gcm && self.e == o.e && self.f == o.f
    }

    pub fn to_json(&self) -> Value {
        let ctx = self.ctx();
        let variables: Vec<Value> = (0..ctx.len())
            .map(|i| {
                let kind = match ctx.kind(i) {
                    VarKind::Cartan => "cartan",
                    VarKind::Central => "central",
                    VarKind::Unit => "unit",
                    VarKind::Unknown => "unknown",
                };
                json!({"name": ctx.name(i), "kind": kind})
            })
            .collect();
        let units: Vec<Value> = ctx.unit_pairs().iter().map(|&(a, b)| json!([ctx.name(a), ctx.name(b)])).collect();
        json!({
            "version": crate::VERSION,
            "gcm": self.gcm,
            "family": self.family,
            "parameters": self.parameters,
            "variables": variables,
            "units": units,
            "coroots": self.basis.coroots.iter().map(|c| c.render()).collect::<Vec<_>>(),
            "E": (0..self.rank()).map(|i| self.e_poly(i).render()).collect::<Vec<_>>(),
            "F": (0..self.rank()).map(|i| self.f_poly(i).render()).collect::<Vec<_>>(),
        })
    }

    /// Rebuilds a module from its JSON form. Relations are not checked here.
    pub fn from_json(v: &Value) -> Result<HFreeModule> {
        #[derive(Deserialize)]
        struct Var {
            name: String,
            kind: String,
        }
        #[derive(Deserialize)]
        struct File {
            gcm: Gcm,
            #[serde(default)]
            family: String,
            #[serde(default)]
            parameters: Value,
            variables: Option<Vec<Var>>,
            #[serde(default)]
            units: Vec<(String, String)>,
            coroots: Option<Vec<String>>,
            #[serde(rename = "E")]
            e: Vec<String>,
            #[serde(rename = "F")]
            f: Vec<String>,
        }
        let file: File = serde_json::from_value(v.clone()).map_err(|e| Error::Input(format!("module file: {e}")))?;
        let l = file.gcm.size();
        let vars = file.variables.unwrap_or_else(|| (1..=l).map(|i| Var { name: format!("H_{i}"), kind: "cartan".into() }).collect());
        let names: Vec<String> = vars.iter().map(|v| v.name.clone()).collect();
        let kinds = vars
            .iter()
            .map(|v| match v.kind.as_str() {
                "cartan" => Ok(VarKind::Cartan),
                "central" => Ok(VarKind::Central),
                "unit" => Ok(VarKind::Unit),
                "unknown" => Ok(VarKind::Unknown),
                k => Err(Error::Input(format!("variables: unknown kind `{k}`"))),
            })
            .collect::<Result<Vec<_>>>()?;
        let pos = |n: &str| names.iter().position(|x| x == n).ok_or_else(|| Error::Input(format!("units: unknown variable `{n}`")));
        let pairs = file.units.iter().map(|(a, b)| Ok((pos(a)?, pos(b)?))).collect::<Result<Vec<_>>>()?;
        let ctx = VarContext::new(&names, &kinds, &pairs)?;
        let parse = |field: &str, v: &[String]| -> Result<Vec<MultiPoly>> {
            v.iter()
                .enumerate()
                .map(|(k, s)| MultiPoly::parse(&ctx, s).map_err(|e| Error::Input(format!("{field}[{k}]: {e}"))))
                .collect()
        };
        let basis = match &file.coroots {
            Some(c) => CartanBasis { ctx: ctx.clone(), coroots: parse("coroots", c)? },
            None => CartanBasis::in_context(&file.gcm, &ctx)?,
        };
        let es = parse("E", &file.e)?;
        let fs = parse("F", &file.f)?;
        HFreeModule::from_polys(file.gcm, basis, es, fs, &file.family, file.parameters)
    }
}

/// Context `H_1..H_l`, then central names, then `a_i, abar_i` for symbolic units.
fn family_context(l: usize, central: &[&str], a: &[Param]) -> Result<Ctx> {
    let mut names: Vec<String> = (1..=l).map(|i| format!("H_{i}")).collect();
    let mut kinds = vec![VarKind::Cartan; l];
    for c in central {
        names.push(c.to_string());
        kinds.push(VarKind::Central);
    }
    let mut pairs = Vec::new();
    for (i, p) in a.iter().enumerate() {
        if *p == Param::Symbolic {
            pairs.push((names.len(), names.len() + 1));
            names.push(format!("a_{}", i + 1));
            names.push(format!("abar_{}", i + 1));
            kinds.push(VarKind::Unit);
            kinds.push(VarKind::Unit);
        }
    }
    VarContext::new(&names, &kinds, &pairs)
}

/// `(a_i, a_i^{-1})` as polynomials.
fn unit_polys(ctx: &Ctx, a: &[Param]) -> Result<Vec<(MultiPoly, MultiPoly)>> {
    a.iter()
        .enumerate()
        .map(|(i, p)| match p {
            Param::Value(v) if v.is_zero() => Err(Error::Parameter(format!("a_{} must be nonzero", i + 1))),
            Param::Value(v) => Ok((MultiPoly::constant(ctx, v.clone()), MultiPoly::constant(ctx, v.recip()))),
            Param::Symbolic => Ok((MultiPoly::var_named(ctx, &format!("a_{}", i + 1))?, MultiPoly::var_named(ctx, &format!("abar_{}", i + 1))?)),
        })
        .collect()
}

fn check_subset(s: &[usize], max: usize, what: &str) -> Result<BTreeSet<usize>> {
    let set: BTreeSet<usize> = s.iter().copied().collect();
    if set.len() != s.len() {
        return Err(Error::Parameter(format!("{what}: repeated element")));
    }
    if let Some(bad) = set.iter().find(|&&x| x == 0 || x > max) {
        return Err(Error::Parameter(format!("{what}: element {bad} outside 1..={max}")));
    }
    Ok(set)
}

/// Parses `b` over the central variables only, then embeds it.
fn central_poly(ctx: &Ctx, central: &[&str], b: &str) -> Result<MultiPoly> {
    let cctx = VarContext::uniform(central, VarKind::Central);
    MultiPoly::parse(&cctx, b).map_err(|e| Error::Parameter(format!("b must be a polynomial in the central variables: {e}")))?.embed(ctx)
}

fn s_json(s: &BTreeSet<usize>) -> Value {
    json!(s.iter().collect::<Vec<_>>())
}

/// Type `A_l` family with parameter `b` (a rational, or a polynomial in `central`)
/// and `S` a subset of `1..=l+1`. Uses `H_0 = H_(l+1) = 0`.
pub fn build_a(l: usize, a: &[Param], central: &[&str], b: &str, s: &[usize]) -> Result<HFreeModule> {
    if l == 0 || a.len() != l {
        return Err(Error::Parameter(format!("need l >= 1 and {l} unit parameters")));
    }
    let set = check_subset(s, l + 1, "S")?;
    let ctx = family_context(l, central, a)?;
    let units = unit_polys(&ctx, a)?;
    let b = central_poly(&ctx, central, b)?;
    let one = MultiPoly::one(&ctx);
    let h = |k: usize| if k == 0 || k > l { MultiPoly::zero(&ctx) } else { MultiPoly::var(&ctx, k - 1) };
    let mut es = Vec::new();
    let mut fs = Vec::new();
    for i in 1..=l {
        let (ai, ai_inv) = &units[i - 1];
        let up = &(&h(i + 1) - &h(i)) - &b; // H_{i+1} - H_i - b
        let down = &(&h(i) - &h(i - 1)) - &b; // H_i - H_{i-1} - b
        let (e, f) = match (set.contains(&i), set.contains(&(i + 1))) {
            (true, true) => (ai * &up, ai_inv * &down),
            (true, false) => (ai.clone(), &(ai_inv * &down) * &(&up - &one)),
            (false, true) => (&(ai * &(&down - &one)) * &up, ai_inv.clone()),
            (false, false) => (ai * &(&down - &one), ai_inv * &(&up - &one)),
        };
        es.push(e);
        fs.push(f);
    }
    let gcm = finite_matrix('A', l)?;
    let basis = CartanBasis::in_context(&gcm, &ctx)?;
    let params = json!({"l": l, "a": a.iter().map(Param::render).collect::<Vec<_>>(), "central": central, "b": b.render(), "S": s_json(&set)});
    HFreeModule::from_polys(gcm, basis, es, fs, "A", params)
}

/// sl_2 with central variables: the three-case table in `S` (a subset of {1,2}).
pub fn build_sl2_central(central: &[&str], a: Param, b: &str, s: &[usize]) -> Result<HFreeModule> {
    let set = check_subset(s, 2, "S")?;
    let a = vec![a];
    let ctx = family_context(1, central, &a)?;
    let (av, ainv) = unit_polys(&ctx, &a)?.remove(0);
    let b = central_poly(&ctx, central, b)?;
    let hh = MultiPoly::var(&ctx, 0);
    let (e, f) = match (set.contains(&1), set.contains(&2)) {
        (true, false) => (av.clone(), -(&ainv * &(&(&(&hh * &hh) + &hh) + &b))),
        (false, true) => (&av * &(&(&hh - &(&hh * &hh)) + &b), ainv.clone()),
        _ => (&av * &(&hh + &b), &ainv * &(&b - &hh)),
    };
    let gcm = finite_matrix('A', 1)?;
    let basis = CartanBasis::in_context(&gcm, &ctx)?;
    let params = json!({"a": a[0].render(), "central": central, "b": b.render(), "S": s_json(&set)});
    HFreeModule::from_polys(gcm, basis, vec![e], vec![f], "sl2z", params)
}

fn lin(ctx: &Ctx, coeffs: &[(usize, Rational)], c: Rational) -> MultiPoly {
    let mut p = MultiPoly::constant(ctx, c);
    for (v, k) in coeffs {
        p = &p + &MultiPoly::var(ctx, *v).scale(k);
    }
    p
}

/// B_2 family on `[[2,-1],[-2,2]]`, `S` a subset of {1,2}.
pub fn build_b2(a: &[Param], s: &[usize]) -> Result<HFreeModule> {
    if a.len() != 2 {
        return Err(Error::Parameter("B_2 needs two unit parameters".into()));
    }
    let set = check_subset(s, 2, "S")?;
    let ctx = family_context(2, &[], a)?;
    let units = unit_polys(&ctx, a)?;
    let (a1, a1i) = &units[0];
    let (a2, a2i) = &units[1];
    let half = q(1, 2);
    // H_1 - H_2/2 + c
    let x = |c: Rational| lin(&ctx, &[(0, qi(1)), (1, -half.clone())], c);
    let (in1, in2) = (set.contains(&1), set.contains(&2));
    let (e1, f1) = if in1 {
        (a1.clone(), -(&(a1i * &x(q(3, 4))) * &x(q(1, 4))))
    } else {
        (-(&(a1 * &x(q(-3, 4))) * &x(q(-1, 4))), a1i.clone())
    };
    let h2 = |c: Rational| lin(&ctx, &[(1, qi(1))], c);
    let t = |c: Rational| lin(&ctx, &[(0, qi(2)), (1, qi(-1))], c); // 2H_1 - H_2 + c
    let (e2, f2) = match (in1, in2) {
        (true, true) => (a2 * &lin(&ctx, &[(0, qi(-2)), (1, qi(1))], -half.clone()), -(a2i * &h2(half.clone()))),
        (true, false) => (&(a2 * &h2(-half.clone())) * &t(half.clone()), a2i.clone()),
        (false, false) => (a2 * &h2(-half.clone()), a2i * &t(-half.clone())),
        (false, true) => (a2.clone(), &(a2i * &h2(half.clone())) * &t(-half.clone())),
    };
    let gcm = Gcm::rank2(1, 2)?;
    let basis = CartanBasis::in_context(&gcm, &ctx)?;
    let params = json!({"a": a.iter().map(Param::render).collect::<Vec<_>>(), "S": s_json(&set)});
    HFreeModule::from_polys(gcm, basis, vec![e1, e2], vec![f1, f2], "B2", params)
}

/// C_l family (`a_(l-1,l) = -2`), `S` a subset of `1..=l`, `H_0 = 0`.
pub fn build_c(l: usize, a: &[Param], s: &[usize]) -> Result<HFreeModule> {
    if l < 2 || a.len() != l {
        return Err(Error::Parameter(format!("need l >= 2 and {l} unit parameters")));
    }
    let set = check_subset(s, l, "S")?;
    let ctx = family_context(l, &[], a)?;
    let units = unit_polys(&ctx, a)?;
    let half = q(1, 2);
    let h = |k: usize| if k == 0 { MultiPoly::zero(&ctx) } else { MultiPoly::var(&ctx, k - 1) };
    let cst = |c: Rational| MultiPoly::constant(&ctx, c);
    let mut es = Vec::new();
    let mut fs = Vec::new();
    for k in 1..l {
        let (ak, aki) = &units[k - 1];
        // next = H_{k+1} - H_k for k <= l-2, 2H_l - H_{l-1} for k = l-1
        let next = if k == l - 1 { &h(l).scale(&qi(2)) - &h(l - 1) } else { &h(k + 1) - &h(k) };
        let prev = &h(k) - &h(k - 1);
        let (e, f) = match (set.contains(&k), set.contains(&(k + 1))) {
            (true, true) => (ak * &(&next + &cst(half.clone())), aki * &(&prev + &cst(half.clone()))),
            (true, false) => (ak.clone(), &(aki * &(&prev + &cst(half.clone()))) * &(&next - &cst(half.clone()))),
            (false, true) => (&(ak * &(&prev - &cst(half.clone()))) * &(&next + &cst(half.clone())), aki.clone()),
            (false, false) => (ak * &(&prev - &cst(half.clone())), aki * &(&next - &cst(half.clone()))),
        };
        es.push(e);
        fs.push(f);
    }
    let (al, ali) = &units[l - 1];
    let y = |c: Rational| &(&h(l) - &h(l - 1).scale(&half)) + &cst(c); // H_l - H_{l-1}/2 + c
    let (e, f) = if set.contains(&l) {
        (al.clone(), -(&(ali * &y(q(3, 4))) * &y(q(1, 4))))
    } else {
        (-(&(al * &y(q(-3, 4))) * &y(q(-1, 4))), ali.clone())
    };
    es.push(e);
    fs.push(f);
    let gcm = finite_matrix('C', l)?;
    let basis = CartanBasis::in_context(&gcm, &ctx)?;
    let params = json!({"l": l, "a": a.iter().map(Param::render).collect::<Vec<_>>(), "S": s_json(&set)});
    HFreeModule::from_polys(gcm, basis, es, fs, "C", params)
}

/// Parameters of the B_2 module equal (after swapping vertices 1 and 2) to `build_c(2, a, S)`.
/// Values only: the sign flip of `a_2` needs a concrete unit.
pub fn b2_params_for_c2(a: &[Rational], s: &[usize]) -> Result<(Vec<Rational>, Vec<usize>)> {
    if a.len() != 2 {
        return Err(Error::Parameter("C_2 needs two unit parameters".into()));
    }
    let set = check_subset(s, 2, "S")?;
    let eps = if set.len() == 2 { -Rational::one() } else { Rational::one() };
    let sb: Vec<usize> = set.iter().map(|&x| 3 - x).rev().collect();
    Ok((vec![a[1].clone(), eps * &a[0]], sb))
}

/// Parameters `(a', b', S')` of `build_sl2_central` equal to `build_a(1, a, b, S)`.
pub fn sl2_params_for_a1(a: &Rational, b: &Rational, s: &[usize]) -> Result<(Rational, Rational, Vec<usize>)> {
    let set = check_subset(s, 2, "S")?;
    let one = Rational::one();
    let (a2, b2) = match (set.contains(&1), set.contains(&2)) {
        (true, true) => (-a.clone(), b.clone()),
        (true, false) => (a.clone(), -(b * b) - b),
        (false, true) => (a.clone(), b * b + b),
        (false, false) => (a.clone(), -b - one),
    };
    Ok((a2, b2, set.into_iter().collect()))
}

/// Parameter file for [`build_from_params`]: `l`, `a` (rationals as strings or numbers,
/// or "symbolic"), `b`, `central`, `S`.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct FamilyParams {
    pub l: Option<usize>,
    #[serde(default)]
    pub a: Vec<Value>,
    pub b: Option<Value>,
    #[serde(default)]
    pub central: Vec<String>,
    #[serde(rename = "S", default)]
    pub s: Vec<usize>,
}

fn param_of(v: &Value, k: usize) -> Result<Param> {
    match v {
        Value::String(s) if s == "symbolic" => Ok(Param::Symbolic),
        Value::String(s) => Ok(Param::Value(parse_rational(s).map_err(|e| Error::Parameter(format!("a[{k}]: {e}")))?)),
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(Param::int(i)),
            None => Err(Error::Parameter(format!("a[{k}]: use an integer or a \"num/den\" string"))),
        },
        _ => Err(Error::Parameter(format!("a[{k}]: expected a rational or \"symbolic\""))),
    }
}

fn text_of(v: &Option<Value>) -> Result<String> {
    match v {
        None => Ok("0".into()),
        Some(Value::String(s)) => Ok(s.clone()),
        Some(Value::Number(n)) if n.is_i64() => Ok(n.to_string()),
        Some(_) => Err(Error::Parameter("b: expected a polynomial string or an integer".into())),
    }
}

/// Builds a family member from a family name (`A`, `B2`, `C`, `sl2z`) and parameters.
pub fn build_from_params(family: &str, p: &FamilyParams) -> Result<HFreeModule> {
    let a: Vec<Param> = p.a.iter().enumerate().map(|(k, v)| param_of(v, k)).collect::<Result<_>>()?;
    let central: Vec<&str> = p.central.iter().map(|s| s.as_str()).collect();
    let need_l = || p.l.ok_or_else(|| Error::Parameter("l: missing".into()));
    match family {
        "A" => build_a(need_l()?, &a, &central, &text_of(&p.b)?, &p.s),
        "B2" => build_b2(&a, &p.s),
        "C" => build_c(need_l()?, &a, &p.s),
        "sl2z" => {
            if a.len() != 1 {
                return Err(Error::Parameter("a: sl2z takes exactly one unit parameter".into()));
            }
            build_sl2_central(&central, a[0].clone(), &text_of(&p.b)?, &p.s)
        }
        f => Err(Error::Parameter(format!("family: unknown family `{f}` (expected A, B2, C or sl2z)"))),
    }
}

/// All subsets of `1..=n`, in order of their bitmask.
pub fn all_subsets(n: usize) -> Vec<Vec<usize>> {
    (0u32..(1 << n)).map(|m| (1..=n).filter(|i| m >> (i - 1) & 1 == 1).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(m: &HFreeModule, s: &str) -> MultiPoly {
        MultiPoly::parse(m.ctx(), s).unwrap()
    }

    #[test]
    fn a1_example() {
        let m = build_a(1, &Param::ones(1), &[], "0", &[1, 2]).unwrap();
        assert_eq!(m.e_poly(0), p(&m, "-H_1"));
        assert_eq!(m.f_poly(0), p(&m, "H_1"));
        let br = m.e[0].bracket(&m.f[0]).unwrap();
        assert_eq!(br.apply(&MultiPoly::one(m.ctx())).unwrap(), p(&m, "2*H_1"));
    }

    #[test]
    fn constant_e_when_i_in_s_only() {
        let m = build_a(3, &[Param::int(2), Param::int(3), Param::int(5)], &[], "1/3", &[2]).unwrap();
        assert_eq!(m.e_poly(1), p(&m, "3"));
    }

    #[test]
    fn sl2_tables() {
        let m = build_sl2_central(&[], Param::int(1), "0", &[1, 2]).unwrap();
        assert_eq!(m.e_poly(0), p(&m, "H_1"));
        assert_eq!(m.f_poly(0), p(&m, "-H_1"));
        let m = build_sl2_central(&["z"], Param::Symbolic, "z", &[1]).unwrap();
        assert_eq!(m.f_poly(0), p(&m, "-abar_1*H_1^2 - abar_1*H_1 - abar_1*z"));
        let m = build_sl2_central(&[], Param::int(2), "0", &[2]).unwrap();
        assert_eq!(m.f_poly(0), p(&m, "1/2"));
        assert!(build_sl2_central(&["z"], Param::int(1), "H_1", &[1]).is_err());
    }

    #[test]
    fn b2_table() {
        let m = build_b2(&Param::ones(2), &[1, 2]).unwrap();
        assert_eq!(m.e_poly(0), p(&m, "1"));
        assert_eq!(m.f_poly(0), p(&m, "-(H_1 - 1/2*H_2 + 3/4)*(H_1 - 1/2*H_2 + 1/4)"));
        assert_eq!(m.e_poly(1), p(&m, "-2*H_1 + H_2 - 1/2"));
        assert_eq!(m.f_poly(1), p(&m, "-H_2 - 1/2"));
        let br = m.e[1].bracket(&m.f[1]).unwrap();
        assert_eq!(br.apply(&MultiPoly::one(m.ctx())).unwrap(), p(&m, "-2*H_1 + 2*H_2"));
        let m = build_b2(&Param::ones(2), &[]).unwrap();
        assert_eq!(m.e_poly(1), p(&m, "H_2 - 1/2"));
        let m = build_b2(&Param::ones(2), &[1]).unwrap();
        assert_eq!(m.e_poly(1), p(&m, "(H_2 - 1/2)*(2*H_1 - H_2 + 1/2)"));
    }

    #[test]
    fn c3_table() {
        let m = build_c(3, &Param::ones(3), &[]).unwrap();
        assert_eq!(m.e_poly(2), p(&m, "-(H_3 - 1/2*H_2 - 3/4)*(H_3 - 1/2*H_2 - 1/4)"));
        let m = build_c(3, &Param::ones(3), &[1, 2, 3]).unwrap();
        assert_eq!(m.f_poly(2), p(&m, "-(H_3 - 1/2*H_2 + 3/4)*(H_3 - 1/2*H_2 + 1/4)"));
        assert!(build_c(3, &Param::ones(3), &[4]).is_err());
        assert!(build_c(3, &[Param::int(1), Param::int(0), Param::int(1)], &[]).is_err());
    }

    #[test]
    fn b2_matches_c2_after_swap() {
        let vals = [qi(2), q(-3, 5)];
        for s in all_subsets(2) {
            let c = build_c(2, &vals.iter().cloned().map(Param::Value).collect::<Vec<_>>(), &s).unwrap();
            let (ab, sb) = b2_params_for_c2(&vals, &s).unwrap();
            let b = build_b2(&ab.into_iter().map(Param::Value).collect::<Vec<_>>(), &sb).unwrap();
            let swapped = c.relabel(&[1, 0]).unwrap();
            assert!(swapped.same_action(&b), "S = {s:?}");
        }
    }

    #[test]
    fn a1_matches_sl2() {
        let (a, b) = (q(7, 3), q(-2, 5));
        for s in all_subsets(2) {
            let m = build_a(1, &[Param::Value(a.clone())], &[], &render_rational(&b), &s).unwrap();
            let (a2, b2, s2) = sl2_params_for_a1(&a, &b, &s).unwrap();
            let n = build_sl2_central(&[], Param::Value(a2), &render_rational(&b2), &s2).unwrap();
            assert!(m.same_action(&n), "S = {s:?}");
        }
    }

    #[test]
    fn json_round_trip() {
        let m = build_c(3, &Param::symbolic(3), &[1, 3]).unwrap();
        let back = HFreeModule::from_json(&m.to_json()).unwrap();
        assert!(back.same_action(&m));
        let m = build_a(2, &Param::ones(2), &["z"], "z^2 - 1/3", &[1, 3]).unwrap();
        let back = HFreeModule::from_json(&m.to_json()).unwrap();
        assert!(back.same_action(&m));
    }
}
