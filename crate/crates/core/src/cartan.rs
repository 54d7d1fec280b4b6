//! Generalized Cartan matrices, Dynkin diagrams, type classification and
//! the coroot bookkeeping `alpha_i = sum_j a_ij H_j`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactpoly::{qi, Ctx, MultiPoly, Rational, VarContext};
use crate::exec::Exec;

/// A validated generalized Cartan matrix. Vertices are 0-based internally.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GcmFile", into = "GcmFile")]
pub struct Gcm {
    a: Vec<Vec<i64>>,
}

#[derive(Serialize, Deserialize)]
struct GcmFile {
    matrix: Vec<Vec<i64>>,
}

impl TryFrom<GcmFile> for Gcm {
    type Error = Error;
    fn try_from(f: GcmFile) -> Result<Gcm> {
        Gcm::new(f.matrix)
    }
}
impl From<Gcm> for GcmFile {
    fn from(g: Gcm) -> GcmFile {
        GcmFile { matrix: g.a }
    }
}

impl Gcm {
    /// Validates the three axioms: diagonal 2, nonpositive off-diagonal, symmetric zero pattern.
    pub fn new(a: Vec<Vec<i64>>) -> Result<Self> {
        let n = a.len();
        if n == 0 {
            return Err(Error::Axiom("matrix is empty".into()));
        }
        for (i, row) in a.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Axiom(format!("row {} has {} entries, expected {n}", i + 1, row.len())));
            }
        }
        for i in 0..n {
            if a[i][i] != 2 {
                return Err(Error::Axiom(format!("diagonal entry a_{0}{0} = {1}, must be 2", i + 1, a[i][i])));
            }
            for j in 0..n {
                if i == j {
                    continue;
                }
                if a[i][j] > 0 {
                    return Err(Error::Axiom(format!("off-diagonal entry a_{}{} = {} is positive", i + 1, j + 1, a[i][j])));
                }
                if (a[i][j] == 0) != (a[j][i] == 0) {
                    return Err(Error::Axiom(format!(
                        "a_{}{} = {} but a_{}{} = {}; zero pattern must be symmetric",
                        i + 1,
                        j + 1,
                        a[i][j],
                        j + 1,
                        i + 1,
                        a[j][i]
                    )));
                }
            }
        }
        Ok(Gcm { a })
    }

    /// The rank-2 matrix `[[2, -r], [-s, 2]]`.
    pub fn rank2(r: i64, s: i64) -> Result<Self> {
        Gcm::new(vec![vec![2, -r], vec![-s, 2]])
    }

    pub fn size(&self) -> usize {
        self.a.len()
    }
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.a[i][j]
    }
    pub fn rows(&self) -> &[Vec<i64>] {
        &self.a
    }

    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        (0..self.size()).filter(|&j| j != i && self.a[i][j] != 0).collect()
    }

    /// Connected components of the Dynkin diagram.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.size();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut k = 0;
            while k < comp.len() {
                for j in self.neighbors(comp[k]) {
                    if !seen[j] {
                        seen[j] = true;
                        comp.push(j);
                    }
                }
                k += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_indecomposable(&self) -> bool {
        self.components().len() == 1
    }

    /// Principal submatrix on `keep` (in the given order).
    pub fn submatrix(&self, keep: &[usize]) -> Gcm {
        Gcm { a: keep.iter().map(|&i| keep.iter().map(|&j| self.a[i][j]).collect()).collect() }
    }

    /// Relabels vertices: the result has entry `a[p[i]][p[j]]` at `(i, j)`.
    pub fn permuted(&self, p: &[usize]) -> Gcm {
        self.submatrix(p)
    }

    pub fn transpose(&self) -> Gcm {
        let n = self.size();
        Gcm { a: (0..n).map(|i| (0..n).map(|j| self.a[j][i]).collect()).collect() }
    }

    pub fn det(&self) -> BigInt {
        let all: Vec<usize> = (0..self.size()).collect();
        minor(&self.a, &all)
    }

    /// Inverse over the rationals, or `None` when singular.
    pub fn inverse(&self) -> Option<Vec<Vec<Rational>>> {
        let m: Vec<Vec<Rational>> = self.a.iter().map(|r| r.iter().map(|&x| qi(x)).collect()).collect();
        rational_inverse(&m)
    }

    /// Whether some positive diagonal `D` makes `D A` symmetric.
    pub fn is_symmetrizable(&self) -> bool {
        let n = self.size();
        let mut d: Vec<Option<Rational>> = vec![None; n];
        for comp in self.components() {
            d[comp[0]] = Some(Rational::one());
            let mut stack = vec![comp[0]];
            while let Some(i) = stack.pop() {
                let di = d[i].clone().unwrap();
                for j in self.neighbors(i) {
                    // d_i a_ij = d_j a_ji
                    let want = &di * qi(self.a[i][j]) / qi(self.a[j][i]);
                    match &d[j] {
                        Some(dj) if *dj != want => return false,
                        Some(_) => {}
                        None => {
                            d[j] = Some(want);
                            stack.push(j);
                        }
                    }
                }
            }
        }
        true
    }

    pub fn diagram(&self) -> DynkinDiagram {
        DynkinDiagram::from_gcm(self)
    }
}

impl fmt::Display for Gcm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .a
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

/// Determinant of the principal minor on `idx` by fraction-free elimination.
fn minor(a: &[Vec<i64>], idx: &[usize]) -> BigInt {
    let n = idx.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Vec<Vec<BigInt>> = idx.iter().map(|&i| idx.iter().map(|&j| BigInt::from(a[i][j])).collect()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

pub(crate) fn rational_inverse(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, p);
        let inv = a[c][c].recip();
        for x in a[c].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                let pivot = a[c].clone();
                for (x, y) in a[r].iter_mut().zip(pivot.iter()) {
                    *x = &*x - &f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Labeled graph of a GCM; edge `(i, j, |a_ij|, |a_ji|)` with `i < j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DynkinDiagram {
    pub vertices: usize,
    pub edges: Vec<(usize, usize, u64, u64)>,
}

impl DynkinDiagram {
    pub fn from_gcm(g: &Gcm) -> Self {
        let n = g.size();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if g.a[i][j] != 0 {
                    edges.push((i, j, g.a[i][j].unsigned_abs(), g.a[j][i].unsigned_abs()));
                }
            }
        }
        DynkinDiagram { vertices: n, edges }
    }

    pub fn to_gcm(&self) -> Gcm {
        let n = self.vertices;
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        for &(i, j, p, q) in &self.edges {
            a[i][j] = -(p as i64);
            a[j][i] = -(q as i64);
        }
        Gcm { a }
    }

    /// Edge list as `i -(p,q)- j` with 1-based vertices.
    pub fn render(&self) -> String {
        self.edges.iter().map(|&(i, j, p, q)| format!("{} -({},{})- {}", i + 1, p, q, j + 1)).collect::<Vec<_>>().join("\n")
    }
}

/// Finite or affine type label, e.g. `C_3`, `A_4^(1)`, `D_4^(3)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TypeLabel {
    pub series: String,
    pub rank: usize,
    /// 1 for finite and untwisted affine, 2 or 3 for twisted affine.
    pub twist: Option<u8>,
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.twist {
            None => write!(f, "{}_{}", self.series, self.rank),
            Some(t) => write!(f, "{}_{}^({})", self.series, self.rank, t),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum CartanType {
    /// `perm[i]` is the catalog vertex matched by input vertex `i`.
    Finite { label: TypeLabel, perm: Vec<usize> },
    Affine { label: Option<TypeLabel>, perm: Option<Vec<usize>> },
    Indefinite,
}

impl CartanType {
    pub fn finite_label(&self) -> Option<&TypeLabel> {
        match self {
            CartanType::Finite { label, .. } => Some(label),
            _ => None,
        }
    }
    pub fn describe(&self) -> String {
        match self {
            CartanType::Finite { label, .. } => format!("finite {label}"),
            CartanType::Affine { label: Some(l), .. } => format!("affine {l}"),
            CartanType::Affine { label: None, .. } => "affine".into(),
            CartanType::Indefinite => "indefinite".into(),
        }
    }
}

fn path_edges(n: usize) -> Vec<(usize, usize, u64, u64)> {
    (0..n.saturating_sub(1)).map(|i| (i, i + 1, 1, 1)).collect()
}

fn from_edges(n: usize, edges: Vec<(usize, usize, u64, u64)>) -> Gcm {
    DynkinDiagram { vertices: n, edges }.to_gcm()
}

fn set_pair(g: &mut Gcm, i: usize, j: usize, aij: i64, aji: i64) {
    g.a[i][j] = aij;
    g.a[j][i] = aji;
}

/// Catalog matrix of a finite type, vertices `0..l`.
///
/// `B_l` has `a_(l,l-1) = -2`; `C_l` has `a_(l-1,l) = -2`.
pub fn finite_matrix(series: char, l: usize) -> Result<Gcm> {
    let bad = || Error::Parameter(format!("no finite type {series}_{l}"));
    let mut g = from_edges(l, path_edges(l));
    match series {
        'A' if l >= 1 => {}
        'B' if l >= 2 => set_pair(&mut g, l - 1, l - 2, -2, -1),
        'C' if l >= 2 => set_pair(&mut g, l - 2, l - 1, -2, -1),
        'D' if l >= 4 => {
            set_pair(&mut g, l - 2, l - 1, 0, 0);
            set_pair(&mut g, l - 3, l - 1, -1, -1);
        }
        'E' if (6..=8).contains(&l) => {
            // 1-3-4-5-..., 2 attached to 4
            let mut e = vec![(0, 2, 1, 1), (1, 3, 1, 1)];
            for k in 2..l - 1 {
                e.push((k, k + 1, 1, 1));
            }
            g = from_edges(l, e);
        }
        'F' if l == 4 => set_pair(&mut g, 2, 1, -2, -1),
        'G' if l == 2 => set_pair(&mut g, 1, 0, -3, -1),
        _ => return Err(bad()),
    }
    Ok(g)
}

/// Catalog matrix of an affine type with `rank + 1` vertices (vertex 0 is the added node).
pub fn affine_matrix(series: char, rank: usize, twist: u8) -> Result<Gcm> {
    let bad = || Error::Parameter(format!("no affine type {series}_{rank}^({twist})"));
    let l = rank;
    let n = l + 1;
    let g = match (series, twist) {
        ('A', 1) if l == 1 => Gcm { a: vec![vec![2, -2], vec![-2, 2]] },
        ('A', 1) if l >= 2 => {
            let mut e = path_edges(n);
            e.push((0, l, 1, 1));
            from_edges(n, e)
        }
        ('B', 1) if l >= 3 => embed_with_node(&finite_matrix('B', l)?, &[(1, 1, 1)]),
        ('C', 1) if l >= 2 => {
            let mut g = embed_with_node(&finite_matrix('C', l)?, &[(0, 1, 1)]);
            set_pair(&mut g, 1, 0, -2, -1);
            g
        }
        ('D', 1) if l >= 4 => embed_with_node(&finite_matrix('D', l)?, &[(1, 1, 1)]),
        ('E', 1) if l == 6 => embed_with_node(&finite_matrix('E', 6)?, &[(1, 1, 1)]),
        ('E', 1) if l == 7 => embed_with_node(&finite_matrix('E', 7)?, &[(0, 1, 1)]),
        ('E', 1) if l == 8 => embed_with_node(&finite_matrix('E', 8)?, &[(7, 1, 1)]),
        ('F', 1) if l == 4 => embed_with_node(&finite_matrix('F', 4)?, &[(0, 1, 1)]),
        ('G', 1) if l == 2 => embed_with_node(&finite_matrix('G', 2)?, &[(0, 1, 1)]),
        ('A', 2) if l == 2 => Gcm { a: vec![vec![2, -4], vec![-1, 2]] },
        ('A', 2) if l >= 4 && l.is_multiple_of(2) => {
            let m = l / 2;
            let mut g = from_edges(m + 1, path_edges(m + 1));
            set_pair(&mut g, 0, 1, -2, -1);
            set_pair(&mut g, m - 1, m, -2, -1);
            return Ok(g);
        }
        ('A', 2) if l >= 5 && l % 2 == 1 => {
            let m = l.div_ceil(2);
            // fork 0,1 -> 2, path 2..m, double edge a_(m-1,m) = -2
            let mut e = vec![(0, 2, 1, 1), (1, 2, 1, 1)];
            for k in 2..m {
                e.push((k, k + 1, 1, 1));
            }
            let mut g = from_edges(m + 1, e);
            set_pair(&mut g, m - 1, m, -2, -1);
            return Ok(g);
        }
        ('D', 2) if l >= 3 => {
            let m = l - 1;
            let mut g = from_edges(m + 1, path_edges(m + 1));
            set_pair(&mut g, 0, 1, -2, -1);
            set_pair(&mut g, m, m - 1, -2, -1);
            return Ok(g);
        }
        ('E', 2) if l == 6 => {
            let mut g = from_edges(5, path_edges(5));
            set_pair(&mut g, 2, 3, -2, -1);
            return Ok(g);
        }
        ('D', 3) if l == 4 => {
            let mut g = from_edges(3, path_edges(3));
            set_pair(&mut g, 1, 2, -3, -1);
            return Ok(g);
        }
        _ => return Err(bad()),
    };
    Ok(g)
}

/// Prepends a vertex 0 joined to finite vertices by `(vertex, |a_0v|, |a_v0|)`.
fn embed_with_node(g: &Gcm, joins: &[(usize, u64, u64)]) -> Gcm {
    let n = g.size() + 1;
    let mut a = vec![vec![0i64; n]; n];
    a[0][0] = 2;
    for i in 0..g.size() {
        for j in 0..g.size() {
            a[i + 1][j + 1] = g.a[i][j];
        }
    }
    for &(v, p, q) in joins {
        a[0][v + 1] = -(p as i64);
        a[v + 1][0] = -(q as i64);
    }
    Gcm { a }
}

/// Finite catalog entries with `n` vertices.
pub fn finite_catalog(n: usize) -> Vec<(TypeLabel, Gcm)> {
    let mut out = Vec::new();
    let mut push = |s: char, l: usize| {
        if let Ok(g) = finite_matrix(s, l) {
            out.push((TypeLabel { series: s.to_string(), rank: l, twist: None }, g));
        }
    };
    push('A', n);
    if n >= 3 {
        push('B', n);
    }
    push('C', n);
    push('D', n);
    push('E', n);
    push('F', n);
    push('G', n);
    out
}

/// Affine catalog entries with `n` vertices.
pub fn affine_catalog(n: usize) -> Vec<(TypeLabel, Gcm)> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    let l = n - 1;
    let mut push = |s: char, rank: usize, t: u8| {
        if let Ok(g) = affine_matrix(s, rank, t) {
            if g.size() == n {
                out.push((TypeLabel { series: s.to_string(), rank, twist: Some(t) }, g));
            }
        }
    };
    for s in ['A', 'B', 'C', 'D', 'E', 'F', 'G'] {
        push(s, l, 1);
    }
    push('A', 2 * l, 2);
    push('A', 2 * l - 1, 2);
    push('D', l + 1, 2);
    push('E', 6, 2);
    push('D', 4, 3);
    out
}

/// Finds `perm` with `g[i][j] == pattern[perm[i]][perm[j]]` for all `i, j`.
pub fn isomorphism(g: &Gcm, pattern: &Gcm) -> Option<Vec<usize>> {
    let n = g.size();
    if pattern.size() != n {
        return None;
    }
    let sig = |m: &Gcm, i: usize| {
        let mut s: Vec<(i64, i64)> = m.neighbors(i).into_iter().map(|j| (m.a[i][j], m.a[j][i])).collect();
        s.sort_unstable();
        s
    };
    let sg: Vec<_> = (0..n).map(|i| sig(g, i)).collect();
    let sp: Vec<_> = (0..n).map(|i| sig(pattern, i)).collect();
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(
        k: usize,
        g: &Gcm,
        p: &Gcm,
        sg: &[Vec<(i64, i64)>],
        sp: &[Vec<(i64, i64)>],
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let n = g.size();
        if k == n {
            return true;
        }
        for c in 0..n {
            if used[c] || sg[k] != sp[c] {
                continue;
            }
            if (0..k).all(|i| g.a[k][i] == p.a[c][perm[i]] && g.a[i][k] == p.a[perm[i]][c]) {
                perm[k] = c;
                used[c] = true;
                if go(k + 1, g, p, sg, sp, perm, used) {
                    return true;
                }
                used[c] = false;
            }
        }
        false
    }
    if go(0, g, pattern, &sg, &sp, &mut perm, &mut used) {
        Some(perm)
    } else {
        None
    }
}

/// Finite / affine / indefinite by principal minors, labeled against the catalogs.
pub fn classify_type(g: &Gcm) -> Result<CartanType> {
    if !g.is_indecomposable() {
        return Err(Error::Decomposable);
    }
    let n = g.size();
    let mut proper_positive = true;
    for mask in 1u64..(1u64 << n) - 1 {
        let idx: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        if !minor(&g.a, &idx).is_positive() {
            proper_positive = false;
            break;
        }
    }
    let d = g.det();
    if proper_positive && d.is_positive() {
        for (label, cat) in finite_catalog(n) {
            if let Some(perm) = isomorphism(g, &cat) {
                return Ok(CartanType::Finite { label, perm });
            }
        }
        return Err(Error::Unsupported(format!("finite matrix {g} not matched by the catalog")));
    }
    if proper_positive && d.is_zero() {
        for (label, cat) in affine_catalog(n) {
            if let Some(perm) = isomorphism(g, &cat) {
                return Ok(CartanType::Affine { label: Some(label), perm: Some(perm) });
            }
        }
        return Ok(CartanType::Affine { label: None, perm: None });
    }
    Ok(CartanType::Indefinite)
}

/// Vertex subset of `g` whose induced labeled subgraph is isomorphic to `pattern`.
/// Entry `k` of the result is the vertex of `g` matched by pattern vertex `k`.
pub fn find_subdiagram(g: &Gcm, pattern: &DynkinDiagram, exec: Exec) -> Option<Vec<usize>> {
    let pg = pattern.to_gcm();
    let k = pattern.vertices;
    let n = g.size();
    if k > n {
        return None;
    }
    let subsets = combinations(n, k);
    let hits = exec.map(&subsets, |s| {
        let sub = g.submatrix(s);
        isomorphism(&pg, &sub).map(|perm| perm.iter().map(|&p| s[p]).collect::<Vec<usize>>())
    });
    hits.into_iter().flatten().next()
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Polynomial context for U(h) with coroots `alpha_i = sum_j a_ij H_j`.
#[derive(Clone, Debug)]
pub struct CartanBasis {
    pub ctx: Ctx,
    pub coroots: Vec<MultiPoly>,
}

impl CartanBasis {
    /// Basis `H_1..H_l` of an invertible matrix.
    pub fn invertible(g: &Gcm) -> Result<Self> {
        Self::in_context(g, &VarContext::cartan(g.size()))
    }

    /// Uses the first `l` variables of `ctx` as `H_1..H_l`; any further variables are spectators.
    pub fn in_context(g: &Gcm, ctx: &Ctx) -> Result<Self> {
        if g.det().is_zero() {
            return Err(Error::Singular);
        }
        if ctx.len() < g.size() {
            return Err(Error::Input("context has fewer variables than the matrix".into()));
        }
        let coroots = (0..g.size()).map(|i| coroot_in(g, ctx, i)).collect();
        Ok(CartanBasis { ctx: ctx.clone(), coroots })
    }
}

fn coroot_in(g: &Gcm, ctx: &Ctx, i: usize) -> MultiPoly {
    let mut p = MultiPoly::zero(ctx);
    for j in 0..g.size() {
        if g.a[i][j] != 0 {
            p = &p + &MultiPoly::var(ctx, j).scale(&qi(g.a[i][j]));
        }
    }
    p
}

/// `alpha_i = sum_j a_ij H_j` (0-based `i`).
pub fn coroot_polynomial(g: &Gcm, basis: &CartanBasis, i: usize) -> Result<MultiPoly> {
    if g.det().is_zero() {
        return Err(Error::Singular);
    }
    if i >= g.size() {
        return Err(Error::VariableIndex(i));
    }
    Ok(coroot_in(g, &basis.ctx, i))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Gcm {
        Gcm::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn validation() {
        assert!(m(&[&[2, -1], &[-1, 2]]).is_indecomposable());
        let e = Gcm::new(vec![vec![2, -1], vec![0, 2]]).unwrap_err();
        assert!(e.to_string().contains("a_12 = -1 but a_21 = 0"), "{e}");
        assert!(!m(&[&[2, 0], &[0, 2]]).is_indecomposable());
        assert!(Gcm::new(vec![vec![3]]).is_err());
        assert!(Gcm::new(vec![vec![2, 1], vec![1, 2]]).is_err());
    }

    #[test]
    fn type_examples() {
        let b2 = classify_type(&m(&[&[2, -1], &[-2, 2]])).unwrap();
        assert_eq!(b2.finite_label().unwrap().to_string(), "C_2");
        match classify_type(&m(&[&[2, -2], &[-2, 2]])).unwrap() {
            CartanType::Affine { label: Some(l), .. } => assert_eq!(l.to_string(), "A_1^(1)"),
            t => panic!("{t:?}"),
        }
        assert_eq!(classify_type(&m(&[&[2, -1], &[-3, 2]])).unwrap().finite_label().unwrap().to_string(), "G_2");
        assert_eq!(classify_type(&m(&[&[2, -1], &[-5, 2]])).unwrap(), CartanType::Indefinite);
        assert_eq!(classify_type(&m(&[&[2, 0], &[0, 2]])), Err(Error::Decomposable));
    }

    #[test]
    fn catalog_round_trip() {
        for n in 1..=8 {
            for (label, g) in finite_catalog(n) {
                let t = classify_type(&g).unwrap();
                assert_eq!(t.finite_label(), Some(&label), "{label}");
            }
            for (label, g) in affine_catalog(n) {
                match classify_type(&g).unwrap() {
                    CartanType::Affine { label: Some(l), .. } => assert_eq!(l, label),
                    t => panic!("{label}: {t:?}"),
                }
            }
        }
    }

    #[test]
    fn orientation_of_b_and_c() {
        assert_eq!(finite_matrix('B', 3).unwrap().rows(), &[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -2, 2]]);
        assert_eq!(finite_matrix('C', 3).unwrap().rows(), &[vec![2, -1, 0], vec![-1, 2, -2], vec![0, -1, 2]]);
        assert_eq!(finite_matrix('C', 2).unwrap().rows(), &[vec![2, -2], vec![-1, 2]]);
    }

    #[test]
    fn subdiagrams() {
        let d5 = finite_matrix('D', 5).unwrap();
        let d4 = finite_matrix('D', 4).unwrap().diagram();
        let hit = find_subdiagram(&d5, &d4, Exec::Sequential).unwrap();
        let mut s = hit.clone();
        s.sort();
        assert_eq!(s, vec![1, 2, 3, 4]);
        let b4 = finite_matrix('B', 4).unwrap();
        let mut s = find_subdiagram(&b4, &finite_matrix('B', 3).unwrap().diagram(), Exec::Parallel).unwrap();
        s.sort();
        assert_eq!(s, vec![1, 2, 3]);
        assert!(find_subdiagram(&finite_matrix('A', 5).unwrap(), &d4, Exec::Sequential).is_none());
        // induced semantics: a triangle never contains A_3
        let tri = m(&[&[2, -1, -1], &[-1, 2, -1], &[-1, -1, 2]]);
        assert!(find_subdiagram(&tri, &finite_matrix('A', 3).unwrap().diagram(), Exec::Sequential).is_none());
    }

    #[test]
    fn coroots() {
        let g = Gcm::rank2(3, 2).unwrap();
        let b = CartanBasis::invertible(&g).unwrap();
        assert_eq!(b.coroots[0].render(), "2*H_1 - 3*H_2");
        assert_eq!(b.coroots[1].render(), "-2*H_1 + 2*H_2");
        assert!(matches!(CartanBasis::invertible(&Gcm::rank2(2, 2).unwrap()), Err(Error::Singular)));
    }

    #[test]
    fn symmetrizable() {
        assert!(finite_matrix('G', 2).unwrap().is_symmetrizable());
        let t = m(&[&[2, -1, -1], &[-2, 2, -1], &[-1, -1, 2]]);
        assert!(!t.is_symmetrizable());
    }

    #[test]
    fn inverse_of_a2() {
        let inv = finite_matrix('A', 2).unwrap().inverse().unwrap();
        assert_eq!(inv[0][0], Rational::new(2.into(), 3.into()));
        assert_eq!(inv[0][1], Rational::new(1.into(), 3.into()));
    }
}
