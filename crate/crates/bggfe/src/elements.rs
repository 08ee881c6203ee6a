//! Element families: shape spaces, degrees of freedom, unisolvency and
//! two-cell conformity checks.
//!
//! Every DoF pairs a trace of the argument on a face σ with a test form
//! written in σ's frame (tangent slots first, then normals). Test forms only
//! depend on the face dimension, so they are built once per dimension on the
//! reference simplex and shared by all faces of that dimension.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::Zero;
use thiserror::Error;

use crate::bgg_ops::{build_S_dagger, build_S_p, symmetric_space, w_dim};
use crate::bubbles::{bubble_basis, bubble_dim, bubble_w_basis, bubble_w_dim, scalar_bubble_basis, scalar_bubble_dim};
use crate::exterior::{bits, c, popcount, tuple_masks, Mask, Tuples};
use crate::geometry::{restrict_with, GeometryError, Simplex, TraceKind};
use crate::linalg::{dot, Mat, Q};
use crate::polyspaces::{
    coeff_matrix, dim_poly, embed_dim, full_basis, kernel_in_span, pairing_weights, unit_value, Layout, PolyForm,
    PolyKind,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ElementError {
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("unknown space kind `{0}` (expected Pminus, Pr_minus or Pr)")]
    UnknownKind(String),
    #[error("invalid parameters for {family}: {constraint}")]
    Constraint { family: &'static str, constraint: String },
    #[error("patch: {0}")]
    Patch(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// The element families. `IjpW` covers `ij_Wp` as an alias.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    IiAlt,
    IiW,
    IjAlt,
    IjW,
    IjpAlt,
    IjpW,
    IiWp,
    ConstW,
    /// ȷ*_{[q]} skeleton with a W_{[p]} shape space, q < p.
    IjqW,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::IiAlt,
        Family::IiW,
        Family::IjAlt,
        Family::IjW,
        Family::IjpAlt,
        Family::IjpW,
        Family::IiWp,
        Family::ConstW,
        Family::IjqW,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::IiAlt => "ii_alt",
            Family::IiW => "ii_W",
            Family::IjAlt => "ij_alt",
            Family::IjW => "ij_W",
            Family::IjpAlt => "ijp_alt",
            Family::IjpW => "ijp_W",
            Family::IiWp => "ii_Wp",
            Family::ConstW => "const_W",
            Family::IjqW => "ijq_W",
        }
    }

    /// Shape space is a symmetry-reduced kernel of S_{†,[p]}.
    pub fn is_w(self) -> bool {
        !matches!(self, Family::IiAlt | Family::IjAlt | Family::IjpAlt)
    }

    /// Families with the full ι*ι* trace on every face.
    pub fn is_ii(self) -> bool {
        matches!(self, Family::IiAlt | Family::IiW | Family::IiWp | Family::ConstW)
    }

    pub fn fixed_p(self) -> Option<usize> {
        match self {
            Family::IiW | Family::IjAlt | Family::IjW => Some(1),
            _ => None,
        }
    }
}

impl FromStr for Family {
    type Err = ElementError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "ii_alt" => Family::IiAlt,
            "ii_W" => Family::IiW,
            "ij_alt" => Family::IjAlt,
            "ij_W" => Family::IjW,
            "ijp_alt" => Family::IjpAlt,
            "ijp_W" | "ij_Wp" => Family::IjpW,
            "ii_Wp" => Family::IiWp,
            "const_W" => Family::ConstW,
            "ijq_W" => Family::IjqW,
            _ => return Err(ElementError::UnknownFamily(s.to_string())),
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Polynomial space selector: `Pminus` is the lowest order P_1⁻.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpaceKind {
    Pminus,
    PrMinus,
    Pr,
}

impl SpaceKind {
    pub fn name(self) -> &'static str {
        match self {
            SpaceKind::Pminus => "Pminus",
            SpaceKind::PrMinus => "Pr_minus",
            SpaceKind::Pr => "Pr",
        }
    }

    pub fn poly_kind(self) -> PolyKind {
        match self {
            SpaceKind::Pr => PolyKind::Pr,
            _ => PolyKind::PrMinus,
        }
    }
}

impl FromStr for SpaceKind {
    type Err = ElementError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "Pminus" => Ok(SpaceKind::Pminus),
            "Pr_minus" => Ok(SpaceKind::PrMinus),
            "Pr" => Ok(SpaceKind::Pr),
            _ => Err(ElementError::UnknownKind(s.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementParams {
    pub family: Family,
    pub space: SpaceKind,
    pub n: usize,
    pub k: usize,
    pub l: usize,
    pub p: usize,
    pub r: usize,
    /// Skeletal order of the mixed family; unused elsewhere.
    pub q: usize,
}

impl ElementParams {
    /// Parameters with the space kind picked from r (r = 1 → `Pminus`).
    pub fn new(family: Family, n: usize, k: usize, l: usize, p: usize, r: usize) -> Self {
        let space = if r == 1 { SpaceKind::Pminus } else { SpaceKind::PrMinus };
        ElementParams { family, space, n, k, l, p, r, q: 0 }
    }

    pub fn with_space(mut self, space: SpaceKind) -> Self {
        self.space = space;
        self
    }

    pub fn with_q(mut self, q: usize) -> Self {
        self.q = q;
        self
    }

    pub fn kind(&self) -> PolyKind {
        self.space.poly_kind()
    }

    /// Polynomial degree; `Pminus` always means r = 1.
    pub fn degree(&self) -> usize {
        if self.space == SpaceKind::Pminus {
            1
        } else {
            self.r
        }
    }

    /// Order of the symmetry reduction and of the ȷ* skeleton.
    pub fn order(&self) -> usize {
        self.family.fixed_p().unwrap_or(self.p)
    }

    /// Order of the generalized trace on the skeleton (q for the mixed family).
    pub fn skeletal_order(&self) -> usize {
        match self.family {
            Family::IjqW => self.q,
            f if f.is_ii() => 0,
            _ => self.order(),
        }
    }

    pub fn validate(&self) -> Result<(), ElementError> {
        let family = self.family.name();
        let err = |constraint: String| Err(ElementError::Constraint { family, constraint });
        let (n, k, l, p) = (self.n, self.k, self.l, self.order());
        if n == 0 || n > 8 {
            return err(format!("need 1 ≤ n ≤ 8, got n = {n}"));
        }
        if k > n || l > n {
            return err(format!("need k ≤ n and ℓ ≤ n, got (k, ℓ, n) = ({k}, {l}, {n})"));
        }
        if self.degree() == 0 {
            return err("need r ≥ 1".into());
        }
        if let Some(fp) = self.family.fixed_p() {
            if self.p != fp {
                return err(format!("this family has p = {fp}; got p = {}", self.p));
            }
        }
        match self.family {
            Family::IiAlt => {}
            Family::ConstW => {
                if !(p >= 1 && p <= k && k <= l && l + p <= n) {
                    return err(format!("need p ≤ k ≤ ℓ ≤ n − p with p ≥ 1, got (k, ℓ, p, n) = ({k}, {l}, {p}, {n})"));
                }
            }
            Family::IjpAlt => {
                if p == 0 {
                    return err("need p ≥ 1".into());
                }
            }
            _ => {
                if p == 0 {
                    return err("need p ≥ 1".into());
                }
                if k + 1 > l + p {
                    return err(format!("W families need k ≤ ℓ + p − 1, got (k, ℓ, p) = ({k}, {l}, {p})"));
                }
                if self.family == Family::IjqW && !(self.q >= 1 && self.q < p) {
                    return err(format!("need 1 ≤ q < p, got (q, p) = ({}, {p})", self.q));
                }
            }
        }
        Ok(())
    }

    /// Closed-form dimension of the shape space.
    pub fn expected_dim(&self) -> usize {
        let (n, k, l, p, r) = (self.n, self.k, self.l, self.order(), self.degree());
        let kind = self.kind();
        match self.family {
            Family::ConstW => w_dim(n, k, l, p),
            f if f.is_w() => {
                let minus = if k >= p && l + p <= n { dim_poly(kind, n, r, k - p, l + p) } else { 0 };
                dim_poly(kind, n, r, k, l) - minus
            }
            _ => dim_poly(kind, n, r, k, l),
        }
    }

    /// Traces claimed single-valued on a shared m-face.
    pub fn conforming_trace(&self, m: usize) -> TraceKind {
        let q = self.skeletal_order();
        if q > 0 && m + 1 <= self.l + q {
            TraceKind::IJ(q)
        } else {
            TraceKind::II
        }
    }
}

impl fmt::Display for ElementParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} n={} k={} l={} p={} r={}",
            self.family,
            self.space.name(),
            self.n,
            self.k,
            self.l,
            self.order(),
            self.degree()
        )?;
        if self.family == Family::IjqW {
            write!(f, " q={}", self.q)?;
        }
        Ok(())
    }
}

/// Where a DoF comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DofKind {
    /// ι*ι* against a (possibly symmetry-reduced) bubble of the face.
    Bubble,
    /// ι*ϑ*_{σ,m−s} against a scalar bubble times a frame component.
    Skeletal { s: usize },
    /// ι*ι* against a pulled-back mirror bubble of the constant construction.
    Mirror { s: usize },
}

#[derive(Clone, Debug)]
pub struct DofFunctional {
    /// Local vertex mask of the face.
    pub face: Mask,
    pub m: usize,
    pub kind: DofKind,
    pub trace: TraceKind,
    /// Position among the DoFs of this face.
    pub index: usize,
    /// Test form over the face barycentrics, form slots in the face frame.
    pub test: Arc<PolyForm>,
}

impl DofFunctional {
    pub fn evaluate(&self, cell: &Simplex, u: &PolyForm) -> Q {
        let tv = restrict_with(&cell.frame(self.face), self.face, u);
        let w = pairing_weights(&self.test, &tv.form.layout);
        dot(&w, &tv.form.coeffs)
    }
}

/// One test form with its provenance, on a face of dimension m.
#[derive(Clone, Debug)]
pub struct FaceTest {
    pub kind: DofKind,
    pub form: Arc<PolyForm>,
}

#[derive(Clone, Debug)]
pub struct ElementSpec {
    pub params: ElementParams,
    pub cell: Simplex,
    pub shape: Vec<PolyForm>,
    pub dofs: Vec<DofFunctional>,
    pub expected_dim: usize,
    pub notes: Vec<String>,
}

impl ElementSpec {
    /// DoFs on one face of each dimension, m = 0..n.
    pub fn face_counts(&self) -> Vec<usize> {
        let mut out = vec![0; self.params.n + 1];
        for m in 0..=self.params.n {
            let first = self.cell.faces(m)[0];
            out[m] = self.dofs.iter().filter(|d| d.face == first).count();
        }
        out
    }
}

/// Skeletal components at face dimension m for order s: masks E over the
/// n frame slots with m − s tangents and ℓ − m + s normals.
fn skeletal_components(n: usize, m: usize, l: usize, s: usize) -> Option<Vec<Mask>> {
    let qq = m.checked_sub(s)?;
    if qq > l || l - qq > n - m {
        return None;
    }
    let mut out = Vec::new();
    for t in tuple_masks(m, qq) {
        for nm in tuple_masks(n - m, l - qq) {
            out.push(t | nm << m);
        }
    }
    out.sort_by_key(|&e| Tuples::new(n, l).index(e));
    Some(out)
}

/// How the DoFs on an m-face are organized for the given parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum FaceRule {
    /// Skeletal ϑ-components for s < order.
    Skeletal(usize),
    /// Bubbles of the full alternating space.
    BubbleAlt,
    /// Bubbles reduced by S_{†,[p]}.
    BubbleW(usize),
    /// Mirror bubbles of the constant construction.
    Mirror,
}

fn face_rule(params: &ElementParams, m: usize) -> FaceRule {
    let (k, l, p) = (params.k, params.l, params.order());
    match params.family {
        Family::IiAlt => FaceRule::BubbleAlt,
        Family::IiW | Family::IiWp => FaceRule::BubbleW(p),
        Family::ConstW => FaceRule::Mirror,
        Family::IjAlt | Family::IjpAlt => {
            if m >= k && m + 1 <= l + p {
                FaceRule::Skeletal(p)
            } else {
                FaceRule::BubbleAlt
            }
        }
        Family::IjW | Family::IjpW => {
            if m >= k && m + 1 <= l + p {
                FaceRule::Skeletal(p)
            } else {
                FaceRule::BubbleW(p)
            }
        }
        Family::IjqW => {
            let q = params.q;
            if m >= k && m + 1 <= l + q {
                FaceRule::Skeletal(q)
            } else if m < l + p {
                FaceRule::BubbleAlt
            } else {
                FaceRule::BubbleW(p)
            }
        }
    }
}

/// Test forms for the DoFs on an m-face, embedded in the n-dimensional
/// frame, plus notes on dropped degenerate components.
pub fn face_tests(params: &ElementParams, m: usize) -> (Vec<FaceTest>, Vec<String>) {
    let (n, k, l) = (params.n, params.k, params.l);
    let (kind, r) = (params.kind(), params.degree());
    let mut out = Vec::new();
    let mut notes = Vec::new();
    let wrap = |kind: DofKind, f: PolyForm| FaceTest { kind, form: Arc::new(embed_dim(&f, n)) };
    match face_rule(params, m) {
        FaceRule::BubbleAlt => {
            out.extend(bubble_basis(m, kind, r, k, l).forms.into_iter().map(|f| wrap(DofKind::Bubble, f)));
        }
        FaceRule::BubbleW(p) => {
            out.extend(bubble_w_basis(m, kind, r, k, l, p).forms.into_iter().map(|f| wrap(DofKind::Bubble, f)));
        }
        FaceRule::Skeletal(order) => {
            let psi = scalar_bubble_basis(m, kind, r, k);
            for s in 0..order {
                let Some(comps) = skeletal_components(n, m, l, s) else {
                    notes.push(format!("m={m}: component s={s} is degenerate and dropped"));
                    continue;
                };
                let tl = Tuples::new(n, l);
                for scalar in &psi {
                    let scalar = embed_dim(scalar, n);
                    for &e in &comps {
                        let f = PolyForm::tensor_const(&scalar, &unit_value(n, l, tl.index(e)), l);
                        out.push(FaceTest { kind: DofKind::Skeletal { s }, form: Arc::new(f) });
                    }
                }
            }
        }
        FaceRule::Mirror => {
            for (s, forms) in mirror_tests(m, k, l, params.order()).into_iter().enumerate() {
                out.extend(forms.into_iter().map(|f| wrap(DofKind::Mirror { s }, f)));
            }
        }
    }
    (out, notes)
}

/// ⊕_{s<p} S_{[s]} S_{†,[ℓ−k+2s]} B⁻W^{ℓ+s,k−s}_{[ℓ−k+2s+1]} on the
/// reference m-simplex, one independent family per s.
pub fn mirror_tests(m: usize, k: usize, l: usize, p: usize) -> Vec<Vec<PolyForm>> {
    let mut out = Vec::new();
    for s in 0..p {
        let (a, b) = (l + s, k - s);
        let pp = l - k + 2 * s;
        if a > m || b > m {
            out.push(Vec::new());
            continue;
        }
        let bw = bubble_w_basis(m, PolyKind::PrMinus, 1, a, b, pp + 1);
        if bw.forms.is_empty() {
            out.push(Vec::new());
            continue;
        }
        let map = build_S_p(m, k - s, l + s, s).after(&build_S_dagger(m, a, b, pp));
        let imgs: Vec<PolyForm> = bw.forms.iter().map(|f| f.apply_pair_map(&map)).collect();
        let keep = coeff_matrix(&imgs).independent_cols();
        out.push(keep.into_iter().map(|i| imgs[i].clone()).collect());
    }
    out
}

/// Number of DoFs on a single m-face, without building shape functions.
pub fn face_count(params: &ElementParams, m: usize) -> usize {
    let (n, k, l) = (params.n, params.k, params.l);
    let (kind, r) = (params.kind(), params.degree());
    if m > n {
        return 0;
    }
    match face_rule(params, m) {
        FaceRule::BubbleAlt => bubble_dim(m, kind, r, k, l),
        FaceRule::BubbleW(p) => bubble_w_dim(m, kind, r, k, l, p),
        FaceRule::Skeletal(order) => {
            let comps: usize =
                (0..order).filter_map(|s| skeletal_components(n, m, l, s)).map(|v| v.len()).sum();
            scalar_bubble_dim(m, kind, r, k) * comps
        }
        FaceRule::Mirror => mirror_tests(m, k, l, params.order()).iter().map(Vec::len).sum(),
    }
}

/// Per-face DoF counts for face dimensions 0..=n.
pub fn dof_table(params: &ElementParams) -> Vec<usize> {
    (0..=params.n).map(|m| face_count(params, m)).collect()
}

/// Σ_m C(n+1, m+1) · (DoFs per m-face).
pub fn total_dofs(params: &ElementParams) -> usize {
    dof_table(params).iter().enumerate().map(|(m, &x)| c(params.n + 1, m + 1) * x).sum()
}

fn shape_basis(cell: &Simplex, params: &ElementParams) -> Vec<PolyForm> {
    let (k, l, p) = (params.k, params.l, params.order());
    let (kind, r) = (params.kind(), params.degree());
    match params.family {
        Family::ConstW => {
            let n = cell.n;
            let layout = Arc::new(Layout::new(n + 1, n, k, l, 0));
            symmetric_space(n, k, l, p)
                .basis
                .into_iter()
                .map(|f| PolyForm { layout: layout.clone(), coeffs: f.coeffs })
                .collect()
        }
        f if f.is_w() => kernel_in_span(&full_basis(cell, kind, r, k, l), p),
        _ => full_basis(cell, kind, r, k, l),
    }
}

pub fn build_element(params: &ElementParams) -> Result<ElementSpec, ElementError> {
    build_element_on(&Simplex::reference(params.n), params)
}

/// Shape basis and DoFs on a given cell, faces ordered by dimension then lexicographically.
pub fn build_element_on(cell: &Simplex, params: &ElementParams) -> Result<ElementSpec, ElementError> {
    params.validate()?;
    if cell.n != params.n {
        return Err(ElementError::Constraint {
            family: params.family.name(),
            constraint: format!("cell dimension {} differs from n = {}", cell.n, params.n),
        });
    }
    let shape = shape_basis(cell, params);
    let mut dofs = Vec::new();
    let mut notes = Vec::new();
    for m in 0..=params.n {
        let (tests, nm) = face_tests(params, m);
        notes.extend(nm);
        let trace = match face_rule(params, m) {
            FaceRule::Skeletal(q) => TraceKind::IJ(q),
            _ => TraceKind::II,
        };
        for face in cell.faces(m) {
            for (index, t) in tests.iter().enumerate() {
                dofs.push(DofFunctional { face, m, kind: t.kind, trace, index, test: t.form.clone() });
            }
        }
    }
    Ok(ElementSpec { params: *params, cell: cell.clone(), shape, dofs, expected_dim: params.expected_dim(), notes })
}

/// Frame traces of every shape function on one face.
fn shape_traces(spec: &ElementSpec, face: Mask) -> Vec<PolyForm> {
    let fr = spec.cell.frame(face);
    spec.shape.iter().map(|u| restrict_with(&fr, face, u).form).collect()
}

/// Rows of DoF values for the given DoFs (all on `face`) against the shape basis.
fn dof_rows(dofs: &[&DofFunctional], traces: &[PolyForm]) -> Vec<Vec<Q>> {
    let Some(first) = traces.first() else { return vec![Vec::new(); dofs.len()] };
    let layout = first.layout.clone();
    dofs.iter()
        .map(|d| {
            let w = pairing_weights(&d.test, &layout);
            traces.iter().map(|t| dot(&w, &t.coeffs)).collect()
        })
        .collect()
}

/// M[i][j] = dof_i(shape_j).
pub fn dof_matrix(spec: &ElementSpec) -> Mat {
    let mut by_face: BTreeMap<(usize, Mask), Vec<usize>> = BTreeMap::new();
    for (i, d) in spec.dofs.iter().enumerate() {
        by_face.entry((d.m, d.face)).or_default().push(i);
    }
    let mut mat = Mat::zeros(spec.dofs.len(), spec.shape.len());
    for ((_, face), idx) in by_face {
        let traces = shape_traces(spec, face);
        let dofs: Vec<&DofFunctional> = idx.iter().map(|&i| &spec.dofs[i]).collect();
        for (row, &i) in dof_rows(&dofs, &traces).into_iter().zip(&idx) {
            for (j, v) in row.into_iter().enumerate() {
                mat.set(i, j, v);
            }
        }
    }
    mat
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnisolvencyReport {
    pub expected_dim: usize,
    pub shape_dim: usize,
    pub dof_count: usize,
    pub rank: usize,
    /// Exact determinant, computed for matrices up to 60×60.
    pub det: Option<Q>,
    /// Set when the counts disagree and no rank test was run.
    pub structural_failure: Option<String>,
    pub pass: bool,
}

pub fn unisolvency_check(spec: &ElementSpec) -> UnisolvencyReport {
    let (e, s, d) = (spec.expected_dim, spec.shape.len(), spec.dofs.len());
    let mut report = UnisolvencyReport {
        expected_dim: e,
        shape_dim: s,
        dof_count: d,
        rank: 0,
        det: None,
        structural_failure: None,
        pass: false,
    };
    if e != s || s != d {
        report.structural_failure = Some(format!("expected {e}, shape basis {s}, DoFs {d}"));
        return report;
    }
    let m = dof_matrix(spec);
    report.rank = m.rank();
    if d <= 60 {
        report.det = Some(m.det());
    }
    report.pass = report.rank == e && report.det.as_ref().is_none_or(|x| !x.is_zero());
    report
}

/// Two n-simplices sharing an (n−1)-face; cell vertex lists are kept sorted.
#[derive(Clone, Debug)]
pub struct Patch {
    pub vertices: Vec<Vec<Q>>,
    pub cells: [Vec<usize>; 2],
}

impl Patch {
    pub fn new(vertices: Vec<Vec<Q>>, cells: [Vec<usize>; 2]) -> Result<Self, ElementError> {
        let n = vertices.first().map_or(0, Vec::len);
        let mut cells = cells;
        for cell in cells.iter_mut() {
            cell.sort_unstable();
            if cell.len() != n + 1 || cell.windows(2).any(|w| w[0] == w[1]) {
                return Err(ElementError::Patch(format!("cell {cell:?} is not an {n}-simplex")));
            }
            if cell.iter().any(|&v| v >= vertices.len()) {
                return Err(ElementError::Patch(format!("cell {cell:?} references a missing vertex")));
            }
        }
        let shared = cells[0].iter().filter(|v| cells[1].contains(v)).count();
        if shared != n {
            return Err(ElementError::Patch(format!("cells share {shared} vertices, expected {n}")));
        }
        let patch = Patch { vertices, cells };
        patch.simplex(0)?;
        patch.simplex(1)?;
        Ok(patch)
    }

    /// Reference simplex glued to a second simplex across the facet opposite the origin.
    pub fn two_cell(n: usize) -> Self {
        let mut vertices = Simplex::reference(n).verts;
        vertices.push((0..n).map(|i| Q::new(1.into(), 1.into()) + Q::new(1.into(), ((i + 2) as i64).into())).collect());
        Patch::new(vertices, [(0..=n).collect(), (1..=n + 1).collect()]).expect("standard patch is valid")
    }

    pub fn simplex(&self, c: usize) -> Result<Simplex, ElementError> {
        Ok(Simplex::new(self.cells[c].iter().map(|&v| self.vertices[v].clone()).collect())?)
    }

    fn local_mask(&self, c: usize, global: &[usize]) -> Mask {
        global.iter().fold(0, |acc, g| acc | 1 << self.cells[c].iter().position(|x| x == g).unwrap())
    }

    fn global_face(&self, c: usize, mask: Mask) -> Vec<usize> {
        bits(mask).map(|i| self.cells[c][i]).collect()
    }

    /// Vertex sets of all faces of the shared facet.
    pub fn shared_faces(&self) -> Vec<Vec<usize>> {
        let shared: Vec<usize> = self.cells[0].iter().copied().filter(|v| self.cells[1].contains(v)).collect();
        let mut out: Vec<Vec<usize>> = (1..(1u32 << shared.len()))
            .map(|s| bits(s).map(|i| shared[i]).collect())
            .collect();
        out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceCheck {
    pub face: Vec<usize>,
    pub trace: TraceKind,
    /// Glued basis functions have equal traces from both sides.
    pub single_valued: bool,
    /// On each cell the trace is determined by the DoFs on the closed face.
    pub local: bool,
}

#[derive(Clone, Debug)]
pub struct ConformityReport {
    pub params: ElementParams,
    pub faces: Vec<FaceCheck>,
    pub unisolvent: bool,
    pub pass: bool,
}

/// Glue the two local elements by (global face, index). On each shared face
/// the trace must be a function of the DoFs on the closed face, and that
/// function must be the same seen from either cell.
pub fn conformity_check(params: &ElementParams, patch: &Patch) -> Result<ConformityReport, ElementError> {
    let mut specs = Vec::new();
    let mut mats = Vec::new();
    for cidx in 0..2 {
        let spec = build_element_on(&patch.simplex(cidx)?, params)?;
        mats.push(dof_matrix(&spec));
        specs.push(spec);
    }
    let unisolvent = mats.iter().all(|d| d.rows == d.cols && d.rank() == d.rows);
    let mut faces = Vec::new();
    if unisolvent {
        for face in patch.shared_faces() {
            let trace = params.conforming_trace(face.len() - 1);
            let mut maps = Vec::new();
            let mut local = true;
            for cidx in 0..2 {
                let spec = &specs[cidx];
                let mask = patch.local_mask(cidx, &face);
                let fr = spec.cell.frame(mask);
                let traces: Vec<Vec<Q>> =
                    spec.shape.iter().map(|u| restrict_with(&fr, mask, u).select(trace).coeffs).collect();
                let tmat = Mat::from_cols(traces.first().map_or(0, Vec::len), &traces);
                let mut closed: Vec<(Vec<usize>, usize, usize)> = (0..spec.dofs.len())
                    .filter(|&i| spec.dofs[i].face & !mask == 0)
                    .map(|i| (patch.global_face(cidx, spec.dofs[i].face), spec.dofs[i].index, i))
                    .collect();
                closed.sort();
                let rows: Vec<usize> = closed.iter().map(|x| x.2).collect();
                let dcl = mats[cidx].select_rows(&rows);
                local &= tmat.rows == 0 || dcl.vstack(&tmat).rank() == dcl.rank();
                let keys: Vec<(Vec<usize>, usize)> = closed.into_iter().map(|(f, i, _)| (f, i)).collect();
                maps.push((keys, trace_map(&dcl, &tmat)));
            }
            let single_valued = maps[0] == maps[1];
            faces.push(FaceCheck { face, trace, single_valued, local });
        }
    }
    let pass = unisolvent && faces.iter().all(|f| f.single_valued && f.local);
    Ok(ConformityReport { params: *params, faces, unisolvent, pass })
}

/// L with L·D = T on the shape space, where D has full row rank; the
/// trace as a function of the DoF values.
fn trace_map(d: &Mat, t: &Mat) -> Option<Mat> {
    if d.rows == 0 {
        return Some(Mat::zeros(t.rows, 0));
    }
    let cols = d.independent_cols();
    if cols.len() != d.rows {
        return None;
    }
    let inv = d.select_cols(&cols).inverse()?;
    Some(t.select_cols(&cols).mul(&inv))
}

/// Constant W^{k,ℓ}_{[p]} element with mirror DoFs on every face.
pub fn constant_element(n: usize, k: usize, l: usize, p: usize) -> Result<ElementSpec, ElementError> {
    build_element(&ElementParams::new(Family::ConstW, n, k, l, p, 1))
}

/// Face dimensions on which two families' per-face counts differ.
pub fn count_differences(a: &ElementParams, b: &ElementParams) -> BTreeSet<usize> {
    let (ta, tb) = (dof_table(a), dof_table(b));
    (0..ta.len().max(tb.len()))
        .filter(|&m| ta.get(m).copied().unwrap_or(0) != tb.get(m).copied().unwrap_or(0))
        .collect()
}

/// Faces of the reference n-simplex grouped by dimension (for reports).
pub fn face_numbers(n: usize) -> Vec<usize> {
    (0..=n).map(|m| c(n + 1, m + 1)).collect()
}

pub fn face_dim(mask: Mask) -> usize {
    popcount(mask) - 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(f: Family, n: usize, k: usize, l: usize, pp: usize, r: usize) -> ElementParams {
        ElementParams::new(f, n, k, l, pp, r)
    }

    fn unisolvent(params: &ElementParams) -> UnisolvencyReport {
        let spec = build_element(params).unwrap();
        unisolvency_check(&spec)
    }

    #[test]
    fn parse_names() {
        assert_eq!("ij_Wp".parse::<Family>().unwrap(), Family::IjpW);
        assert_eq!("Pr_minus".parse::<SpaceKind>().unwrap(), SpaceKind::PrMinus);
        assert!("ij_X".parse::<Family>().is_err());
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
    }

    #[test]
    fn constraint_errors() {
        let e = p(Family::IiW, 3, 2, 0, 1, 1).validate().unwrap_err();
        assert!(e.to_string().contains("k ≤ ℓ + p − 1"));
        assert!(p(Family::ConstW, 3, 2, 2, 2, 1).validate().is_err());
        assert!(p(Family::IjW, 3, 1, 1, 2, 1).validate().is_err());
        assert!(p(Family::IjqW, 3, 1, 1, 2, 1).with_q(2).validate().is_err());
    }

    #[test]
    fn regge_counts() {
        let regge = p(Family::IiW, 3, 1, 1, 1, 1);
        assert_eq!(dof_table(&regge), vec![0, 1, 0, 0]);
        let r = unisolvent(&regge);
        assert!(r.pass && r.rank == 6, "{r:?}");
        assert!(!r.det.unwrap().is_zero());
    }

    #[test]
    fn full_regge_and_hhj() {
        let full = p(Family::IiAlt, 3, 1, 1, 1, 1);
        assert_eq!(dof_table(&full), vec![0, 1, 3, 0]);
        assert!(unisolvent(&full).pass);
        let hhj = p(Family::IiW, 3, 2, 2, 1, 1);
        let r = unisolvent(&hhj);
        assert!(r.pass && r.rank == 6);
        let hhj_ij = p(Family::IjW, 3, 2, 2, 1, 1);
        assert_eq!(dof_table(&hhj_ij), vec![0, 0, 1, 2]);
        assert!(unisolvent(&hhj_ij).pass);
    }

    #[test]
    fn mcs_and_hlz() {
        let mcs = p(Family::IjpW, 3, 2, 1, 2, 1);
        assert_eq!(dof_table(&mcs), vec![0, 0, 2, 0]);
        assert!(unisolvent(&mcs).pass);
        let hlz = p(Family::IjW, 3, 1, 2, 1, 1);
        let r = unisolvent(&hlz);
        assert!(r.pass && r.rank == 14, "{r:?}");
    }

    #[test]
    fn constant_elements() {
        let mcs_t = constant_element(3, 1, 2, 1).unwrap();
        let r = unisolvency_check(&mcs_t);
        assert!(r.pass && r.rank == 8, "{r:?}");
        let regge = constant_element(3, 1, 1, 1).unwrap();
        assert_eq!(regge.face_counts(), vec![0, 1, 0, 0]);
        assert!(unisolvency_check(&regge).pass);
    }

    #[test]
    fn moving_dofs_conserve_totals() {
        for n in 2..=4 {
            for k in 0..=n {
                for l in 0..=n {
                    for pp in 1..=2 {
                        let ii = p(Family::IiWp, n, k, l, pp, 1);
                        let ij = p(Family::IjpW, n, k, l, pp, 1);
                        if ii.validate().is_ok() {
                            assert_eq!(total_dofs(&ii), total_dofs(&ij), "{ii}");
                            assert_eq!(total_dofs(&ii), ii.expected_dim(), "{ii}");
                        }
                        let a = p(Family::IjpAlt, n, k, l, pp, 1);
                        assert_eq!(total_dofs(&a), a.expected_dim(), "{a}");
                    }
                }
            }
        }
    }

    #[test]
    fn symmetry_reduction_is_local_to_high_faces() {
        for n in 2..=4 {
            for k in 1..=n {
                for l in (k - 1)..=n {
                    let w = p(Family::IiW, n, k, l, 1, 1);
                    if w.validate().is_err() {
                        continue;
                    }
                    let alt = p(Family::IiAlt, n, k, l, 1, 1);
                    assert!(count_differences(&w, &alt).iter().all(|&m| m >= l + 1), "{w}");
                }
            }
        }
    }

    #[test]
    fn regge_patch_is_tt_conforming() {
        let rep = conformity_check(&p(Family::IiW, 3, 1, 1, 1, 1), &Patch::two_cell(3)).unwrap();
        assert!(rep.pass, "{:?}", rep.faces);
        assert_eq!(rep.faces.len(), 7);
    }

    #[test]
    fn patch_rejects_bad_geometry() {
        let v = Simplex::reference(2).verts;
        assert!(Patch::new(v.clone(), [vec![0, 1, 2], vec![0, 1, 2]]).is_err());
        let mut w = v;
        w.push(vec![Q::from_integer(2.into()), Q::from_integer((-1).into())]);
        assert!(Patch::new(w, [vec![0, 1, 2], vec![1, 2, 3]]).is_err());
    }
}
