//! The emptiness decision: `H(g)` is nonempty exactly for types `A_l` and `C_l`
//! (`B_2` counted as `C_2`). Every `Empty` verdict names the structural reason
//! and, where the library can check it, attaches the computation.

use serde_json::{json, Value};

use crate::cartan::{affine_catalog, classify_type, find_subdiagram, finite_matrix, CartanType, Gcm, TypeLabel};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::modfam::{build_a, build_c, HFreeModule, Param};
use crate::verify::relation_residuals;

use super::affine::{refute_affine_loop, LoopModel};
use super::rank2::search_rank2;
use super::restrict::{restriction_obstruction, Restriction};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Nonempty,
    Empty,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Nonempty => "Nonempty",
            Verdict::Empty => "Empty",
        }
    }
}

/// One reason behind a verdict.
#[derive(Clone, Debug)]
pub struct Evidence {
    pub rule: &'static str,
    pub citation: String,
    pub data: Value,
}

impl Evidence {
    pub fn to_json(&self) -> Value {
        json!({"rule": self.rule, "citation": self.citation, "data": self.data})
    }
}

#[derive(Clone, Debug)]
pub struct Decision {
    pub verdict: Verdict,
    pub cartan_type: String,
    /// `A` or `C` when nonempty.
    pub family: Option<String>,
    pub parameters: Option<Value>,
    /// A verified member, in the input numbering.
    pub module: Option<Box<HFreeModule>>,
    pub evidence: Vec<Evidence>,
}

impl Decision {
    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "version": crate::VERSION,
            "verdict": self.verdict.name(),
            "type": self.cartan_type,
            "evidence": self.evidence.iter().map(Evidence::to_json).collect::<Vec<_>>(),
        });
        if let Some(f) = &self.family {
            v["family"] = json!(f);
        }
        if let Some(p) = &self.parameters {
            v["parameters"] = p.clone();
        }
        if let Some(m) = &self.module {
            v["module"] = m.to_json();
        }
        v
    }
}

#[derive(Clone, Copy, Debug)]
pub struct DecideOptions {
    /// Run the supporting computations (rank-2 search, loop refutation) and attach them.
    pub certify: bool,
    pub exec: Exec,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions { certify: true, exec: Exec::best() }
    }
}

fn verts(v: &[usize]) -> Vec<usize> {
    v.iter().map(|x| x + 1).collect()
}

fn nonempty(g: &Gcm, label: &TypeLabel, perm: &[usize], exec: Exec) -> Result<Option<Decision>> {
    let l = label.rank;
    let (family, m) = match (label.series.as_str(), l) {
        ("A", _) => ("A", build_a(l, &Param::ones(l), &[], "0", &[])?),
        ("C", _) | ("B", 2) => ("C", build_c(l, &Param::ones(l), &[])?),
        _ => return Ok(None),
    };
    let to_family = perm.to_vec();
    let m = m.relabel(&to_family)?;
    if m.gcm != *g {
        return Err(Error::Unsupported(format!("constructor matrix {} does not match the input", m.gcm)));
    }
    let report = relation_residuals(&m, exec)?;
    if !report.holds() {
        return Err(Error::Unsupported("constructed module fails its relations".into()));
    }
    let parameters = m.parameters.clone();
    Ok(Some(Decision {
        verdict: Verdict::Nonempty,
        cartan_type: format!("finite {label}"),
        family: Some(family.into()),
        parameters: Some(parameters),
        evidence: vec![Evidence {
            rule: "construction",
            citation: format!("explicit {family}_{l} family member, all relations verified"),
            data: json!({"relations": report.residuals.len(), "holds": true, "vertex_map": verts(&to_family)}),
        }],
        module: Some(Box::new(m)),
    }))
}

/// The rank-3 cycles with a double edge, with the generator, variable and
/// restriction pair (0-based) that separate their signatures.
pub fn double_edge_cycles() -> Vec<(Gcm, usize, usize, [usize; 2])> {
    let ms: [[[i64; 3]; 3]; 6] = [
        [[2, -1, -1], [-1, 2, -1], [-1, -2, 2]],
        [[2, -1, -1], [-2, 2, -1], [-1, -2, 2]],
        [[2, -1, -1], [-2, 2, -2], [-1, -1, 2]],
        [[2, -2, -1], [-1, 2, -1], [-1, -2, 2]],
        [[2, -1, -2], [-2, 2, -1], [-1, -2, 2]],
        [[2, -1, -1], [-2, 2, -1], [-2, -2, 2]],
    ];
    ms.iter()
        .enumerate()
        .map(|(c, m)| {
            let g = Gcm::new(m.iter().map(|r| r.to_vec()).collect()).expect("valid matrix");
            let (i, j, r) = match c {
                0 => (1, 0, [2, 0]),
                5 => (1, 0, [0, 2]),
                _ => (0, 2, [2, 1]),
            };
            (g, i, j, r)
        })
        .collect()
}

fn rank2_evidence(g: &Gcm, pair: [usize; 2], whole: bool, opts: DecideOptions) -> Result<Evidence> {
    let (r, s) = (-g.entry(pair[0], pair[1]), -g.entry(pair[1], pair[0]));
    let mut data = json!({"vertices": verts(&pair), "r": r, "s": s, "rs": r * s});
    if opts.certify && r * s <= 16 {
        let search = search_rank2(r, s, 2, opts.exec)?;
        data["search"] = json!({"bound": 2, "verdict": search.verdict_name()});
    }
    let citation = if whole {
        format!("rank-2 criterion: a_12 a_21 = {} >= 3 leaves no module", r * s)
    } else {
        format!("rank-2 criterion on the pair {{{}, {}}}: a_ij a_ji = {} >= 3", pair[0] + 1, pair[1] + 1, r * s)
    };
    Ok(Evidence { rule: "rank2-criterion", citation, data })
}

fn empty(cartan_type: String, e: Evidence) -> Decision {
    Decision { verdict: Verdict::Empty, cartan_type, family: None, parameters: None, module: None, evidence: vec![e] }
}

/// Decides whether `H(g)` is empty, for an indecomposable matrix.
pub fn decide(g: &Gcm, opts: DecideOptions) -> Result<Decision> {
    let exec = opts.exec;
    let ty = classify_type(g)?;
    let n = g.size();
    let tname = ty.describe();
    if let CartanType::Finite { label, perm } = &ty {
        if let Some(d) = nonempty(g, label, perm, exec)? {
            return Ok(d);
        }
    }
    if let CartanType::Affine { label, .. } = &ty {
        let mut data = json!({"type": label.as_ref().map(|l| l.to_string())});
        if opts.certify {
            let r = refute_affine_loop(1, 2, 2, LoopModel::Specialized)?;
            data["loop_refutation"] = r.to_json();
        }
        return Ok(empty(
            tname,
            Evidence { rule: "affine-emptiness", citation: "affine type: the loop-bracket identities admit no polynomial solution".into(), data },
        ));
    }
    // a pair with a_ij a_ji >= 3
    for i in 0..n {
        for j in i + 1..n {
            if g.entry(i, j) * g.entry(j, i) >= 3 {
                return Ok(empty(tname, rank2_evidence(g, [i, j], n == 2, opts)?));
            }
        }
    }
    let d4 = finite_matrix('D', 4)?;
    if let Some(v) = find_subdiagram(g, &d4.diagram(), exec) {
        let data = subdiagram_obstruction(g, &v, &d4, 0, 3, [2, 3], exec)?;
        return Ok(empty(tname, Evidence { rule: "d4-subdiagram", citation: "contains a D_4 sub-diagram, whose restrictions disagree".into(), data }));
    }
    let b3 = finite_matrix('B', 3)?;
    if let Some(v) = find_subdiagram(g, &b3.diagram(), exec) {
        let data = subdiagram_obstruction(g, &v, &b3, 1, 0, [2, 0], exec)?;
        return Ok(empty(tname, Evidence { rule: "b3-subdiagram", citation: "contains a B_3 sub-diagram, whose restrictions disagree".into(), data }));
    }
    for k in 2..n {
        for (label, cat) in affine_catalog(k) {
            if let Some(v) = find_subdiagram(g, &cat.diagram(), exec) {
                let cycle = label.series == "A" && label.twist == Some(1);
                let citation = if cycle {
                    format!("contains a chordless simply-laced cycle of length {k} (affine {label})")
                } else {
                    format!("contains an affine sub-diagram of type {label}")
                };
                return Ok(empty(tname, Evidence { rule: "affine-subdiagram", citation, data: json!({"type": label.to_string(), "vertices": verts(&v)}) }));
            }
        }
    }
    for (c, (cat, i, j, r)) in double_edge_cycles().into_iter().enumerate() {
        if let Some(v) = find_subdiagram(g, &cat.diagram(), exec) {
            let mut data = subdiagram_obstruction(g, &v, &cat, i, j, r, exec)?;
            data["case"] = json!(c + 1);
            return Ok(empty(
                tname,
                Evidence { rule: "three-cycle-double-edge", citation: "contains a three-cycle with a double edge, whose restrictions disagree".into(), data },
            ));
        }
    }
    Ok(empty(
        tname,
        Evidence { rule: "classification", citation: "not of type A_l or C_l; no module exists outside those types".into(), data: json!({"type": ty.describe()}) },
    ))
}

/// Runs the restriction check on the catalog matrix and maps its vertices to the input.
fn subdiagram_obstruction(g: &Gcm, v: &[usize], cat: &Gcm, i: usize, j: usize, r: [usize; 2], exec: Exec) -> Result<Value> {
    let sub = g.submatrix(v);
    debug_assert_eq!(&sub, cat);
    let rep = restriction_obstruction(cat, i, j, [Restriction::remove(r[0]), Restriction::remove(r[1])], exec)?;
    Ok(json!({
        "vertices": verts(v),
        "generator": v[i] + 1,
        "variable": format!("H_{}", v[j] + 1),
        "restrictions": [format!("M_{}", v[r[0]] + 1), format!("M_{}", v[r[1]] + 1)],
        "obstructed": rep.obstructed(),
        "check": rep.to_json(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dec(m: Vec<Vec<i64>>) -> Decision {
        decide(&Gcm::new(m).unwrap(), DecideOptions { certify: false, exec: Exec::Sequential }).unwrap()
    }

    #[test]
    fn types_a_and_c_are_nonempty() {
        assert_eq!(dec(vec![vec![2]]).verdict, Verdict::Nonempty);
        assert_eq!(dec(vec![vec![2, -1], vec![-2, 2]]).family.as_deref(), Some("C"));
        assert_eq!(dec(vec![vec![2, -2], vec![-1, 2]]).family.as_deref(), Some("C"));
        let d = dec(vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]);
        assert_eq!(d.family.as_deref(), Some("A"));
    }

    #[test]
    fn rules_in_order() {
        assert_eq!(dec(vec![vec![2, -1], vec![-3, 2]]).evidence[0].rule, "rank2-criterion");
        assert_eq!(dec(vec![vec![2, -2], vec![-2, 2]]).evidence[0].rule, "affine-emptiness");
        assert_eq!(dec(finite_matrix('B', 3).unwrap().rows().to_vec()).evidence[0].rule, "b3-subdiagram");
        assert_eq!(dec(finite_matrix('D', 4).unwrap().rows().to_vec()).evidence[0].rule, "d4-subdiagram");
    }

    #[test]
    fn decomposable_refused() {
        assert!(decide(&Gcm::new(vec![vec![2, 0], vec![0, 2]]).unwrap(), DecideOptions::default()).is_err());
    }
}
