//! Verification suites. Each suite returns one [`Case`] per checked
//! identity, in a fixed parameter order, so reports are reproducible.

use std::fmt;
use std::str::FromStr;

use crate::bgg_ops::{build_S_dagger, build_S_p};
use crate::bubbles::{
    bubble_basis, bubble_dim, bubble_dim_formula, bubble_w_dim, dagger_rank_on_bubbles, definitional_bubbles,
    vanishes_on_boundary,
};
use crate::catalog::{check_catalog_3d, check_proxies, check_table, dimension_tables, named_conformity, named_elements};
use crate::elements::{
    build_element, conformity_check, face_count, unisolvency_check, ElementParams, Family, Patch, SpaceKind,
};
use crate::exterior::{binom, c, s_dagger_double_block_matrix, s_dagger_matrix, s_double_block_matrix, s_matrix, y_blocks};
use crate::geometry::Simplex;
use crate::linalg::span_contains;
use crate::linalg::{span_rank, Q};
use crate::meshcomplex::{
    cross_polytope_boundary, dehn_sommerville_audit, euler_audit, euler_meshes, euler_parameters, simplex_boundary,
};
use crate::polyspaces::{dim_poly, full_basis, kernel_space_prw_on, PolyForm, PolyKind};

/// One checked identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Case {
    pub suite: &'static str,
    pub name: String,
    pub detail: String,
    pub pass: bool,
}

impl Case {
    fn new(suite: &'static str, name: impl Into<String>, detail: impl Into<String>, pass: bool) -> Self {
        Case { suite, name: name.into(), detail: detail.into(), pass }
    }

    /// Tab-separated report line.
    pub fn tsv(&self) -> String {
        format!("{}\t{}\t{}\t{}", self.suite, self.name, self.detail, if self.pass { "PASS" } else { "FAIL" })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Dimensions,
    AppendixA,
    Adjoint,
    Bubbles,
    Tables,
    Unisolvency,
    Conformity,
    Euler,
    DehnSommerville,
    Regge,
    Worked,
    Koszul,
    Catalog,
    All,
}

impl Suite {
    pub const EACH: [Suite; 13] = [
        Suite::Dimensions,
        Suite::AppendixA,
        Suite::Adjoint,
        Suite::Bubbles,
        Suite::Tables,
        Suite::Unisolvency,
        Suite::Conformity,
        Suite::Euler,
        Suite::DehnSommerville,
        Suite::Regge,
        Suite::Worked,
        Suite::Koszul,
        Suite::Catalog,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Dimensions => "dimensions",
            Suite::AppendixA => "appendixA",
            Suite::Adjoint => "adjoint",
            Suite::Bubbles => "bubbles",
            Suite::Tables => "tables",
            Suite::Unisolvency => "unisolvency",
            Suite::Conformity => "conformity",
            Suite::Euler => "euler",
            Suite::DehnSommerville => "dehn_sommerville",
            Suite::Regge => "regge",
            Suite::Worked => "worked",
            Suite::Koszul => "koszul",
            Suite::Catalog => "catalog",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

/// Size limits of a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub nmax: usize,
    pub rmax: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { nmax: 3, rmax: 2 }
    }
}

pub fn run(suite: Suite, lim: Limits) -> Vec<Case> {
    match suite {
        Suite::Dimensions => dimension_formulas(lim.nmax.min(4), lim.rmax.min(3)),
        Suite::AppendixA => appendix_a(lim.nmax.min(6)),
        Suite::Adjoint => adjointness(lim.nmax.min(6)),
        Suite::Bubbles => bubble_checks(lim.nmax, lim.rmax),
        Suite::Tables => dimension_table_checks(),
        Suite::Unisolvency => unisolvency(lim.nmax, lim.rmax),
        Suite::Conformity => conformity(lim.nmax, 1),
        Suite::Euler => euler(lim.nmax.min(4)),
        Suite::DehnSommerville => dehn_sommerville(lim.nmax.min(4)),
        Suite::Regge => regge_identity(lim.nmax.min(4), 5),
        Suite::Worked => worked_dimensions(lim.rmax.max(3)),
        Suite::Koszul => koszul_commutation(2),
        Suite::Catalog => catalog(),
        Suite::All => Suite::EACH.iter().flat_map(|&s| run(s, lim)).collect(),
    }
}

fn rank_of(forms: &[PolyForm]) -> usize {
    span_rank(&forms.iter().map(|f| f.coeffs.clone()).collect::<Vec<_>>())
}

/// dim P_r⁻Λ^{k,ℓ} and dim P_rΛ^{k,ℓ}: closed forms against the rank of the
/// constructed bases on the reference simplex.
pub fn dimension_formulas(nmax: usize, rmax: usize) -> Vec<Case> {
    let mut out = Vec::new();
    for n in 1..=nmax {
        let cell = Simplex::reference(n);
        for r in 1..=rmax {
            for kind in [PolyKind::PrMinus, PolyKind::Pr] {
                for k in 0..=n {
                    let (ni, ri, ki) = (n as i64, r as i64, k as i64);
                    let scalar_basis = full_basis(&cell, kind, r, k, 0);
                    let scalar_rank = rank_of(&scalar_basis);
                    for l in 0..=n {
                        let formula = match kind {
                            PolyKind::PrMinus => binom(ni + ri, ki + ri) * binom(ri + ki - 1, ki) * binom(ni, l as i64),
                            PolyKind::Pr => binom(ni + ri, ni) * binom(ni, ki) * binom(ni, l as i64),
                        } as usize;
                        let basis = full_basis(&cell, kind, r, k, l);
                        // the tensor basis is block diagonal in the ℓ-slot
                        let blocks = basis.len() == scalar_basis.len() * c(n, l);
                        let rank = if blocks { scalar_rank * c(n, l) } else { rank_of(&basis) };
                        let pass = blocks && basis.len() == formula && rank == formula && dim_poly(kind, n, r, k, l) == formula;
                        out.push(Case::new(
                            "dimensions",
                            format!("{} n={n} r={r} k={k} l={l}", kind.name()),
                            format!("formula={formula} basis={} rank={rank}", basis.len()),
                            pass,
                        ));
                    }
                }
            }
        }
    }
    out
}

/// Injectivity and surjectivity thresholds of s_{[p]} and of the block
/// restrictions of the double-index maps.
pub fn appendix_a(nmax: usize) -> Vec<Case> {
    let mut out = Vec::new();
    for n in 1..=nmax {
        for k in 0..=n {
            for p in 1..=(n - k) {
                let m = s_matrix(n, k, p);
                let rank = m.rank();
                let inj = rank == m.cols;
                let surj = rank == m.rows;
                let pass = inj == (n >= 2 * k + p) && surj == (n <= 2 * k + p);
                out.push(Case::new(
                    "appendixA",
                    format!("s n={n} k={k} p={p}"),
                    format!("{}x{} rank={rank} injective={inj} surjective={surj}", m.rows, m.cols),
                    pass,
                ));
            }
        }
    }
    for n in 1..=nmax {
        for k in 0..=n {
            for l in 0..=n {
                for p in 1..=l.min(n - k) {
                    let mut blocks = 0;
                    let mut pass = true;
                    for (f, g) in y_blocks(n, k, l) {
                        let s = s_double_block_matrix(n, k, l, p, f, g);
                        let sd = s_dagger_double_block_matrix(n, k + p, l - p, p, f, g);
                        let (rs, rd) = (s.rank(), sd.rank());
                        if k + p <= l {
                            pass &= rs == s.cols && rd == sd.rows;
                        }
                        if k + p >= l {
                            pass &= rs == s.rows && rd == sd.cols;
                        }
                        blocks += 1;
                    }
                    out.push(Case::new(
                        "appendixA",
                        format!("blocks n={n} k={k} l={l} p={p}"),
                        format!("{blocks} blocks"),
                        pass,
                    ));
                }
            }
        }
    }
    out
}

/// Matrices of S and S† are transposes of each other, single- and double-index.
pub fn adjointness(nmax: usize) -> Vec<Case> {
    let mut out = Vec::new();
    for n in 1..=nmax {
        for k in 0..=n {
            for p in 1..=(n - k) {
                let pass = s_matrix(n, k, p).transpose() == s_dagger_matrix(n, k + p, p);
                out.push(Case::new("adjoint", format!("s n={n} k={k} p={p}"), "single index", pass));
            }
        }
        for k in 0..=n {
            for l in 0..=n {
                for p in 1..=l.min(n - k) {
                    let s = build_S_p(n, k, l, p);
                    let sd = build_S_dagger(n, k + p, l - p, p);
                    let pass = s.matrix.transpose() == sd.matrix;
                    out.push(Case::new(
                        "adjoint",
                        format!("S n={n} k={k} l={l} p={p}"),
                        format!("{}x{}", s.matrix.rows, s.matrix.cols),
                        pass,
                    ));
                }
            }
        }
    }
    out
}

/// Per-face alternating bubble sum Ψ for lowest-order P⁻ bubbles.
pub fn bubble_alternating_sum(m: usize, l: usize, p: usize) -> i64 {
    let kind = PolyKind::PrMinus;
    (0..l + p)
        .map(|t| {
            let a = bubble_dim(m, kind, 1, t, l) as i64;
            let b = if t >= p { bubble_dim(m, kind, 1, t - p, l + p) as i64 } else { 0 };
            if t % 2 == 0 {
                a - b
            } else {
                b - a
            }
        })
        .sum()
}

pub fn bubble_checks(nmax: usize, rmax: usize) -> Vec<Case> {
    let mut out = Vec::new();
    let kinds = [PolyKind::PrMinus, PolyKind::Pr];
    for kind in kinds {
        for m in 1..=nmax.min(3) {
            for r in 1..=rmax.min(2) {
                for k in 0..=m {
                    for l in 0..=m {
                        let s = bubble_basis(m, kind, r, k, l);
                        let d = definitional_bubbles(m, kind, r, k, l);
                        let vs: Vec<Vec<Q>> = s.forms.iter().map(|f| f.coeffs.clone()).collect();
                        let vd: Vec<Vec<Q>> = d.iter().map(|f| f.coeffs.clone()).collect();
                        let pass = s.dim() == d.len()
                            && (d.is_empty() || span_contains(&vd, &vs))
                            && vanishes_on_boundary(m, &s.forms);
                        out.push(Case::new(
                            "bubbles",
                            format!("structural {} m={m} r={r} k={k} l={l}", kind.name()),
                            format!("structural={} definitional={}", s.dim(), d.len()),
                            pass,
                        ));
                    }
                }
            }
        }
    }
    for kind in kinds {
        for m in 0..=nmax {
            for r in 1..=rmax {
                let mut pass = true;
                for k in 0..=m {
                    for l in 0..=m {
                        pass &= bubble_dim(m, kind, r, k, l) == bubble_dim_formula(m, kind, r, k, l);
                    }
                }
                out.push(Case::new("bubbles", format!("formula {} m={m} r={r}", kind.name()), "all (k,l)", pass));
            }
        }
    }
    for kind in kinds {
        for m in 1..=nmax.min(3) {
            for r in 1..=rmax.min(2) {
                for k in 0..=m {
                    for l in 0..=m {
                        for p in 1..=k {
                            let ok = match kind {
                                PolyKind::PrMinus => k < l + p,
                                PolyKind::Pr => k <= l + p,
                            };
                            if !ok || l + p > m {
                                continue;
                            }
                            let b = bubble_basis(m, kind, r, k, l);
                            let rank = dagger_rank_on_bubbles(&b, p);
                            let target = bubble_dim(m, kind, r, k - p, l + p);
                            out.push(Case::new(
                                "bubbles",
                                format!("dagger onto {} m={m} r={r} k={k} l={l} p={p}", kind.name()),
                                format!("rank={rank} target={target}"),
                                rank == target,
                            ));
                        }
                    }
                }
            }
        }
    }
    for m in 0..=nmax {
        for l in 0..=m {
            for p in 1..=(m + 1) {
                let psi = bubble_alternating_sum(m, l, p);
                let skeletal = l <= m && m < l + p;
                let expect = if skeletal { if (m - l) % 2 == 0 { 1 } else { -1 } } else { 0 };
                out.push(Case::new(
                    "bubbles",
                    format!("alternating sum m={m} l={l} p={p}"),
                    format!("psi={psi} expected={expect}"),
                    psi == expect,
                ));
            }
        }
    }
    out
}

pub fn dimension_table_checks() -> Vec<Case> {
    let mut out = Vec::new();
    for table in dimension_tables() {
        for row in check_table(&table) {
            let expected: Vec<String> = row.expected.iter().map(|c| c.to_string()).collect();
            let computed: Vec<String> = row.computed.iter().map(|c| c.to_string()).collect();
            out.push(Case::new(
                "tables",
                format!("{} {}", row.table, row.label),
                format!("expected={} computed={}", expected.join(" "), computed.join(" ")),
                row.pass,
            ));
        }
    }
    out
}

/// Every valid family instance in dimension n and degree r.
pub fn instances(n: usize, r: usize) -> Vec<ElementParams> {
    let spaces = if r == 1 { [SpaceKind::Pminus, SpaceKind::Pr] } else { [SpaceKind::PrMinus, SpaceKind::Pr] };
    let mut out = Vec::new();
    for space in spaces {
        for k in 0..=n {
            for l in 0..=n {
                for f in [Family::IiAlt, Family::IiW, Family::IjAlt, Family::IjW] {
                    out.push(ElementParams::new(f, n, k, l, 1, r).with_space(space));
                }
                for p in 2..=n {
                    for f in [Family::IjpAlt, Family::IjpW, Family::IiWp] {
                        out.push(ElementParams::new(f, n, k, l, p, r).with_space(space));
                    }
                    for q in 1..p {
                        out.push(ElementParams::new(Family::IjqW, n, k, l, p, r).with_space(space).with_q(q));
                    }
                }
                if space == SpaceKind::Pminus {
                    for p in 1..=n {
                        out.push(ElementParams::new(Family::ConstW, n, k, l, p, r));
                    }
                }
            }
        }
    }
    out.retain(|p| p.validate().is_ok());
    out
}

fn unisolvency_case(name: String, params: &ElementParams) -> Case {
    match build_element(params) {
        Ok(spec) => {
            let rep = unisolvency_check(&spec);
            let det = rep.det.as_ref().map_or("-".to_string(), |d| d.to_string());
            Case::new(
                "unisolvency",
                name,
                format!(
                    "expected={} shape={} dofs={} rank={} det={det}",
                    rep.expected_dim, rep.shape_dim, rep.dof_count, rep.rank
                ),
                rep.pass,
            )
        }
        Err(e) => Case::new("unisolvency", name, e.to_string(), false),
    }
}

/// Unisolvency of every instance with n ≤ nmax and r ≤ rmax (r = 1 only for
/// n = 4 and above), followed by the named elements.
pub fn unisolvency(nmax: usize, rmax: usize) -> Vec<Case> {
    let mut out = Vec::new();
    for n in 1..=nmax {
        let rtop = if n >= 4 { 1 } else { rmax };
        for r in 1..=rtop {
            for params in instances(n, r) {
                out.push(unisolvency_case(params.to_string(), &params));
            }
        }
    }
    for (name, params, dim) in named_elements() {
        if params.n > nmax {
            continue;
        }
        let mut case = unisolvency_case(format!("{name} ({params})"), &params);
        case.pass &= params.expected_dim() == dim;
        case.detail = format!("named dim={dim} {}", case.detail);
        out.push(case);
    }
    out
}

fn conformity_case(name: String, params: &ElementParams) -> Case {
    match conformity_check(params, &Patch::two_cell(params.n)) {
        Ok(rep) => {
            let bad: Vec<String> = rep
                .faces
                .iter()
                .filter(|f| !(f.single_valued && f.local))
                .map(|f| format!("{:?}", f.face))
                .collect();
            Case::new(
                "conformity",
                name,
                format!("shared faces={} failing=[{}] unisolvent={}", rep.faces.len(), bad.join(","), rep.unisolvent),
                rep.pass,
            )
        }
        Err(e) => Case::new("conformity", name, e.to_string(), false),
    }
}

/// Two-cell patch tests for every instance with 2 ≤ n ≤ nmax and r ≤ rmax,
/// then the named trace checks in 3D.
pub fn conformity(nmax: usize, rmax: usize) -> Vec<Case> {
    let mut out = Vec::new();
    for n in 2..=nmax {
        for r in 1..=rmax {
            for params in instances(n, r) {
                out.push(conformity_case(params.to_string(), &params));
            }
        }
    }
    for (name, params) in named_conformity() {
        if params.n <= nmax {
            out.push(conformity_case(format!("{name} ({params})"), &params));
        }
    }
    out
}

pub fn euler(nmax: usize) -> Vec<Case> {
    let mut out = Vec::new();
    for n in 1..=nmax {
        for (mesh, cx) in euler_meshes(n) {
            let f = cx.f_vector();
            let fb = cx.boundary_f_vector();
            let cone_ok = cx.lattice.cone().is_some_and(|cone| {
                let fc = cone.f_vector();
                (0..=n).all(|i| fc[i] == f[i] + if i == 0 { 1 } else { fb[i - 1] })
            });
            out.push(Case::new("euler", format!("cone relation n={n} {mesh}"), format!("f={f:?}"), cone_ok));
            for (l, p) in euler_parameters(n) {
                match euler_audit(&cx, l, p) {
                    Ok(a) => out.push(Case::new(
                        "euler",
                        format!("n={n} {mesh} l={l} p={p}"),
                        format!(
                            "lhs={} rhs={} residual={} skeletal_residual={}",
                            a.lhs, a.rhs, a.residual, a.skeletal_residual
                        ),
                        a.pass(),
                    )),
                    Err(e) => out.push(Case::new("euler", format!("n={n} {mesh} l={l} p={p}"), e.to_string(), false)),
                }
            }
        }
    }
    out
}

pub fn dehn_sommerville(dmax: usize) -> Vec<Case> {
    let mut spheres = Vec::new();
    for d in 1..=dmax {
        spheres.push((format!("simplex boundary d={d}"), simplex_boundary(d)));
    }
    spheres.push(("octahedron".to_string(), cross_polytope_boundary(2)));
    spheres.push(("cross-polytope boundary d=3".to_string(), cross_polytope_boundary(3)));
    for n in 2..=dmax.min(3) {
        for (mesh, cx) in euler_meshes(n) {
            if let Some(cone) = cx.lattice.cone() {
                spheres.push((format!("cone n={n} {mesh}"), cone));
            }
        }
    }
    spheres
        .into_iter()
        .flat_map(|(name, s)| {
            dehn_sommerville_audit(&s).into_iter().map(move |(p, res)| {
                Case::new("dehn_sommerville", format!("{name} p={p}"), format!("residual={res}"), res == 0)
            })
        })
        .collect()
}

/// dim B_rΛ^{1,1} − dim B_rΛ^{0,2} = C(n+1,2)·C(r+1,n), with the difference also
/// computed as the kernel dimension of S† on the bubbles.
pub fn regge_identity(nmax: usize, rmax: usize) -> Vec<Case> {
    let mut out = Vec::new();
    for n in 1..=nmax {
        for r in 1..=rmax {
            let diff = bubble_dim(n, PolyKind::Pr, r, 1, 1) as i64 - bubble_dim(n, PolyKind::Pr, r, 0, 2) as i64;
            let kernel = bubble_w_dim(n, PolyKind::Pr, r, 1, 1, 1) as i64;
            let rhs = (c(n + 1, 2) * c(r + 1, n)) as i64;
            out.push(Case::new(
                "regge",
                format!("n={n} r={r}"),
                format!("difference={diff} kernel={kernel} formula={rhs}"),
                diff == rhs && kernel == rhs,
            ));
        }
    }
    out
}

/// A worked high-order example: family, space, per-face DoF formulas and the
/// shape dimension as a function of r.
struct Worked {
    name: &'static str,
    family: Family,
    n: usize,
    k: usize,
    l: usize,
    p: usize,
    pr: bool,
    shape: fn(i64) -> i64,
    /// (face dimension, count formula).
    faces: Vec<(usize, fn(i64) -> i64)>,
}

fn worked_examples() -> Vec<Worked> {
    vec![
        Worked {
            name: "P_r W(1,1) 2D",
            family: Family::IiW,
            n: 2,
            k: 1,
            l: 1,
            p: 1,
            pr: true,
            shape: |r| 3 * (r + 2) * (r + 1) / 2,
            faces: vec![(1, |r| r + 1), (2, |r| 3 * (r + 1) * r / 2)],
        },
        Worked {
            name: "P_r W(1,1)",
            family: Family::IiW,
            n: 3,
            k: 1,
            l: 1,
            p: 1,
            pr: true,
            shape: |r| (r + 3) * (r + 2) * (r + 1),
            faces: vec![(1, |r| r + 1), (2, |r| 3 * (r + 1) * r / 2), (3, |r| (r + 1) * r * (r - 1))],
        },
        Worked {
            name: "P_r- W(1,1) 2D",
            family: Family::IiW,
            n: 2,
            k: 1,
            l: 1,
            p: 1,
            pr: false,
            shape: |r| (r + 2) * (3 * r - 1) / 2,
            faces: vec![(1, |r| r), (2, |r| (3 * r + 2) * (r - 1) / 2)],
        },
        Worked {
            name: "P_r- W(1,1)",
            family: Family::IiW,
            n: 3,
            k: 1,
            l: 1,
            p: 1,
            pr: false,
            shape: |r| (r + 2) * (r + 3) * (2 * r - 1) / 2,
            faces: vec![(1, |r| r), (2, |r| (3 * r + 2) * (r - 1) / 2), (3, |r| (r - 1) * (2 * r * r - r - 2) / 2)],
        },
        Worked {
            name: "P_r W(1,2)",
            family: Family::IjW,
            n: 3,
            k: 1,
            l: 2,
            p: 1,
            pr: true,
            shape: |r| 4 * (r + 3) * (r + 2) * (r + 1) / 3,
            faces: vec![(1, |r| 2 * (r + 1)), (2, |r| r * r - 1), (3, |r| 4 * (r + 1) * (r + 2) * r / 3)],
        },
        Worked {
            name: "P_r- W(1,2)",
            family: Family::IjW,
            n: 3,
            k: 1,
            l: 2,
            p: 1,
            pr: false,
            shape: |r| (r + 2) * (r + 3) * (8 * r - 1) / 6,
            faces: vec![(1, |r| 2 * r), (2, |r| r * (r - 1)), (3, |r| (r + 2) * (8 * r * r - r - 3) / 6)],
        },
        Worked {
            name: "P_r W(2,2)",
            family: Family::IiW,
            n: 3,
            k: 2,
            l: 2,
            p: 1,
            pr: true,
            shape: |r| (r + 3) * (r + 2) * (r + 1),
            faces: vec![(2, |r| (r + 2) * (r + 1) / 2), (3, |r| (r + 1) * (r + 1) * (r + 2))],
        },
        Worked {
            name: "P_r- W(2,2)",
            family: Family::IiW,
            n: 3,
            k: 2,
            l: 2,
            p: 1,
            pr: false,
            shape: |r| r * (r + 3) * (2 * r + 1) / 2,
            faces: vec![(2, |r| (r + 1) * r / 2), (3, |r| r * (2 * r * r + 3 * r - 1) / 2)],
        },
        Worked {
            name: "P_r W[2](2,1)",
            family: Family::IjpW,
            n: 3,
            k: 2,
            l: 1,
            p: 2,
            pr: true,
            shape: |r| 4 * (r + 3) * (r + 2) * (r + 1) / 3,
            faces: vec![(2, |r| (r + 2) * (r + 1)), (3, |r| 4 * (r + 1) * (r + 2) * r / 3)],
        },
        Worked {
            name: "P_r- W[2](2,1)",
            family: Family::IjpW,
            n: 3,
            k: 2,
            l: 1,
            p: 2,
            pr: false,
            shape: |r| (4 * r - 1) * (r + 1) * (r + 3) / 3,
            faces: vec![(2, |r| (r + 1) * r), (3, |r| (r + 1) * (4 * r + 3) * (r - 1) / 3)],
        },
    ]
}

/// Tabulated shape dimensions for r = 1, 2, 3 of the 3D worked examples.
const WORKED_VALUES: [(&str, [usize; 3]); 8] = [
    ("P_r W(1,1)", [24, 60, 120]),
    ("P_r- W(1,1)", [6, 30, 75]),
    ("P_r W(1,2)", [32, 80, 160]),
    ("P_r- W(1,2)", [14, 50, 115]),
    ("P_r W(2,2)", [24, 60, 120]),
    ("P_r- W(2,2)", [6, 25, 63]),
    ("P_r W[2](2,1)", [32, 80, 160]),
    ("P_r- W[2](2,1)", [8, 35, 88]),
];

/// Lowest-order four-dimensional shape dimensions.
fn four_d_values() -> Vec<(&'static str, ElementParams, usize)> {
    vec![
        ("W(2,2) 4D", ElementParams::new(Family::IiW, 4, 2, 2, 1, 1), 20),
        ("W(1,2) 4D", ElementParams::new(Family::IjW, 4, 1, 2, 1, 1), 40),
        ("W(1,3) 4D", ElementParams::new(Family::IjW, 4, 1, 3, 1, 1), 35),
        ("W(2,3) 4D", ElementParams::new(Family::IjW, 4, 2, 3, 1, 1), 30),
        ("W(3,3) 4D", ElementParams::new(Family::IjW, 4, 3, 3, 1, 1), 10),
    ]
}

/// High-order worked examples: shape dimension from the kernel computation,
/// the closed form and the tabulated values, plus per-face DoF counts.
pub fn worked_dimensions(rmax: usize) -> Vec<Case> {
    let mut out = Vec::new();
    for w in worked_examples() {
        let kind = if w.pr { PolyKind::Pr } else { PolyKind::PrMinus };
        let space = if w.pr { SpaceKind::Pr } else { SpaceKind::PrMinus };
        for r in 1..=rmax {
            let params = ElementParams::new(w.family, w.n, w.k, w.l, w.p, r).with_space(space);
            let shape = kernel_space_prw_on(&Simplex::reference(w.n), kind, r, w.k, w.l, w.p).len();
            let closed = (w.shape)(r as i64) as usize;
            let listed = WORKED_VALUES.iter().find(|(name, _)| *name == w.name).and_then(|(_, v)| v.get(r - 1).copied());
            let mut pass = shape == closed && params.expected_dim() == closed && listed.is_none_or(|v| v == shape);
            let mut faces = Vec::new();
            for &(m, formula) in &w.faces {
                let got = face_count(&params, m);
                let want = formula(r as i64) as usize;
                pass &= got == want;
                faces.push(format!("{m}:{got}/{want}"));
            }
            let total: usize = (0..=w.n).map(|m| c(w.n + 1, m + 1) * face_count(&params, m)).sum();
            pass &= total == shape;
            out.push(Case::new(
                "worked",
                format!("{} r={r}", w.name),
                format!(
                    "shape={shape} closed={closed} listed={} dofs={total} faces={}",
                    listed.map_or("-".into(), |v| v.to_string()),
                    faces.join(",")
                ),
                pass,
            ));
        }
    }
    for (name, params, dim) in four_d_values() {
        let shape =
            kernel_space_prw_on(&Simplex::reference(4), PolyKind::PrMinus, 1, params.k, params.l, params.order()).len();
        out.push(Case::new(
            "worked",
            name,
            format!("shape={shape} expected={dim}"),
            shape == dim && params.expected_dim() == dim,
        ));
    }
    out
}

/// κ S† = −S† κ on every basis element of P_rΛ^{k,ℓ}(ℝ³).
pub fn koszul_commutation(r: usize) -> Vec<Case> {
    let n = 3;
    let cell = Simplex::reference(n);
    let mut out = Vec::new();
    for k in 0..=n {
        for l in 0..=n {
            let basis = full_basis(&cell, PolyKind::Pr, r, k, l);
            let pass = if k == 0 || l == n {
                // S† vanishes on (0,ℓ) and (k,n)
                true
            } else {
                let sd = build_S_dagger(n, k, l, 1);
                let sd_after = if k >= 2 { Some(build_S_dagger(n, k - 1, l, 1)) } else { None };
                basis.iter().all(|u| {
                    let left = u.apply_pair_map(&sd).koszul();
                    match &sd_after {
                        Some(m) => {
                            let right = u.koszul().apply_pair_map(m);
                            left.coeffs.iter().zip(&right.coeffs).all(|(a, b)| (a + b) == Q::from_integer(0.into()))
                        }
                        None => left.is_zero(),
                    }
                })
            };
            out.push(Case::new(
                "koszul",
                format!("P{r} k={k} l={l}"),
                format!("{} basis forms", basis.len()),
                pass,
            ));
        }
    }
    out
}

pub fn catalog() -> Vec<Case> {
    let mut out = Vec::new();
    for c in check_catalog_3d() {
        out.push(Case::new(
            "catalog",
            format!("{} k={} l={}", c.grid, c.k, c.l),
            format!(
                "{} shape={} proxy={}",
                c.name,
                c.shape_dim.map_or("-".into(), |d| d.to_string()),
                c.proxy_dim.map_or("-".into(), |d| d.to_string())
            ),
            c.pass,
        ));
    }
    for p in check_proxies() {
        out.push(Case::new(
            "catalog",
            format!("{} k={} l={}", p.grid, p.k, p.l),
            format!("{} proxy={:?} space={}", p.label, p.proxy_dim, p.space_dim),
            p.pass,
        ));
    }
    out
}

/// Counts of (passed, failed) cases.
pub fn tally(cases: &[Case]) -> (usize, usize) {
    let passed = cases.iter().filter(|c| c.pass).count();
    (passed, cases.len() - passed)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_pass(cases: &[Case]) {
        assert!(!cases.is_empty());
        for c in cases {
            assert!(c.pass, "{}", c.tsv());
        }
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::EACH.into_iter().chain([Suite::All]) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn small_suites() {
        all_pass(&dimension_formulas(2, 2));
        all_pass(&appendix_a(4));
        all_pass(&adjointness(3));
        all_pass(&bubble_checks(2, 1));
        all_pass(&regge_identity(3, 3));
        all_pass(&koszul_commutation(1));
    }

    #[test]
    fn instance_counts_grow() {
        assert!(instances(2, 1).len() < instances(3, 1).len());
        assert!(instances(3, 1).iter().all(|p| p.validate().is_ok()));
    }

    #[test]
    fn alternating_sum_oracle() {
        // outside the skeletal band every face sum vanishes
        assert_eq!(bubble_alternating_sum(3, 1, 1), 0);
        assert_eq!(bubble_alternating_sum(1, 1, 1), 1);
        assert_eq!(bubble_alternating_sum(2, 1, 2), -1);
    }
}
