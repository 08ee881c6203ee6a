//! Embedded reference data: per-face DoF tables, the three-dimensional
//! element catalog and the vector-proxy grids, with routines that recompute
//! every entry and report differences.

use std::collections::BTreeMap;

use serde::Deserialize;
use thiserror::Error;

use crate::bgg_ops::{alt_dim, symmetric_space};
use crate::elements::{face_count, ElementParams, Family, SpaceKind};

const DIMENSION_TABLES: &str = include_str!("../data/dimension_tables.toml");
const CATALOG_3D: &str = include_str!("../data/catalog3d.toml");
const PROXIES: &str = include_str!("../data/proxies.toml");

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CatalogError {
    #[error("unknown proxy atom `{0}`")]
    UnknownAtom(String),
    #[error("empty proxy expression")]
    EmptyProxy,
    #[error("unknown table `{0}`")]
    UnknownTable(String),
}

/// An expected per-face count; the symbol `n` means "equal to the ambient dimension".
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum Count {
    Value(usize),
    Symbol(String),
}

impl Count {
    pub fn resolve(&self, n: usize) -> Option<usize> {
        match self {
            Count::Value(v) => Some(*v),
            Count::Symbol(s) if s == "n" => Some(n),
            Count::Symbol(_) => None,
        }
    }

    pub fn is_ambient(&self) -> bool {
        matches!(self, Count::Symbol(s) if s == "n")
    }
}

impl std::fmt::Display for Count {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Count::Value(v) => write!(f, "{v}"),
            Count::Symbol(s) => write!(f, "{s}"),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
pub struct DimensionRow {
    pub label: String,
    pub family: String,
    pub k: usize,
    pub l: usize,
    pub p: usize,
    #[serde(default)]
    pub q: usize,
    /// Counts on faces of dimension 1, 2, ….
    pub counts: Vec<Count>,
}

impl DimensionRow {
    pub fn params(&self, n: usize) -> ElementParams {
        let family: Family = self.family.parse().expect("catalog families are valid");
        ElementParams::new(family, n, self.k, self.l, self.p, 1).with_q(self.q)
    }

    /// Recomputed counts on faces of dimension 1..=counts.len() in ambient n.
    pub fn computed(&self, n: usize) -> Vec<usize> {
        let params = self.params(n);
        (1..=self.counts.len()).map(|m| face_count(&params, m)).collect()
    }
}

#[derive(Clone, Debug, Deserialize)]
pub struct DimensionTable {
    pub name: String,
    pub ambient: usize,
    pub rows: Vec<DimensionRow>,
}

#[derive(Deserialize)]
struct TablesDoc {
    table: Vec<DimensionTable>,
}

pub fn dimension_tables() -> Vec<DimensionTable> {
    let doc: TablesDoc = toml::from_str(DIMENSION_TABLES).expect("embedded tables parse");
    doc.table
}

pub fn dimension_table(name: &str) -> Result<DimensionTable, CatalogError> {
    dimension_tables().into_iter().find(|t| t.name == name).ok_or_else(|| CatalogError::UnknownTable(name.into()))
}

/// Result of recomputing one row of a dimension table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowCheck {
    pub table: String,
    pub label: String,
    pub expected: Vec<Count>,
    pub computed: Vec<usize>,
    /// Ambient dimensions at which an "n" entry was checked.
    pub ambient_checks: Vec<usize>,
    pub pass: bool,
}

/// Ambient dimensions used to check "n" entries, beyond the table's own.
const AMBIENT_SWEEP: std::ops::RangeInclusive<usize> = 2..=6;

pub fn check_row(table: &DimensionTable, row: &DimensionRow) -> RowCheck {
    let computed = row.computed(table.ambient);
    let mut pass = row.params(table.ambient).validate().is_ok()
        && row.counts.iter().zip(&computed).all(|(e, &c)| e.resolve(table.ambient) == Some(c));
    let mut ambient_checks = Vec::new();
    if row.counts.iter().any(Count::is_ambient) {
        for n in AMBIENT_SWEEP {
            if row.params(n).validate().is_err() {
                continue;
            }
            let at_n = row.computed(n);
            for (e, &c) in row.counts.iter().zip(&at_n) {
                if e.is_ambient() {
                    pass &= c == n;
                }
            }
            ambient_checks.push(n);
        }
    }
    RowCheck {
        table: table.name.clone(),
        label: row.label.clone(),
        expected: row.counts.clone(),
        computed,
        ambient_checks,
        pass,
    }
}

pub fn check_table(table: &DimensionTable) -> Vec<RowCheck> {
    table.rows.iter().map(|r| check_row(table, r)).collect()
}

/// Dimension of a proxy expression such as `T+x*S`, `P1 V` or `K⊗V`.
pub fn proxy_dim(expr: &str, atoms: &BTreeMap<String, usize>) -> Result<usize, CatalogError> {
    let mut total = 0;
    let mut any = false;
    for term in expr.split('+') {
        let term = term.trim();
        let term = term.strip_prefix("x*").or_else(|| term.strip_prefix('x')).unwrap_or(term);
        let mut product = 1;
        let mut factors = 0;
        for factor in term.split(|c: char| c.is_whitespace() || c == '⊗').filter(|f| !f.is_empty()) {
            product *= atoms.get(factor).ok_or_else(|| CatalogError::UnknownAtom(factor.into()))?;
            factors += 1;
        }
        if factors == 0 {
            return Err(CatalogError::EmptyProxy);
        }
        total += product;
        any = true;
    }
    if any {
        Ok(total)
    } else {
        Err(CatalogError::EmptyProxy)
    }
}

/// Proxy atoms for three-dimensional element shape spaces.
pub fn atoms_3d() -> BTreeMap<String, usize> {
    [("R", 1), ("V", 3), ("M", 9), ("S", 6), ("T", 8), ("P1", 4)].into_iter().map(|(a, d)| (a.to_string(), d)).collect()
}

/// One named element of the three-dimensional catalog.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub grid: String,
    pub k: usize,
    pub l: usize,
    pub name: String,
    pub conformity: String,
    pub proxy: String,
}

#[derive(Clone, Debug)]
pub struct CatalogGrid {
    pub name: String,
    pub family: Family,
    pub p: usize,
    /// `entries[l][k]`; `None` where the family is undefined.
    pub entries: Vec<Vec<Option<CatalogEntry>>>,
}

#[derive(Deserialize)]
struct RawGrid {
    name: String,
    family: String,
    p: usize,
    rows: Vec<Vec<String>>,
}

#[derive(Deserialize)]
struct CatalogDoc {
    grid: Vec<RawGrid>,
}

pub fn catalog_3d() -> Vec<CatalogGrid> {
    let doc: CatalogDoc = toml::from_str(CATALOG_3D).expect("embedded catalog parses");
    doc.grid
        .into_iter()
        .map(|g| {
            let entries = g
                .rows
                .iter()
                .enumerate()
                .map(|(l, row)| {
                    row.iter()
                        .enumerate()
                        .map(|(k, cell)| {
                            if cell.trim() == "-" {
                                return None;
                            }
                            let parts: Vec<&str> = cell.split('|').map(str::trim).collect();
                            Some(CatalogEntry {
                                grid: g.name.clone(),
                                k,
                                l,
                                name: parts[0].to_string(),
                                conformity: parts.get(1).unwrap_or(&"").to_string(),
                                proxy: parts.get(2).unwrap_or(&"").to_string(),
                            })
                        })
                        .collect()
                })
                .collect();
            CatalogGrid { name: g.name, family: g.family.parse().expect("catalog families are valid"), p: g.p, entries }
        })
        .collect()
}

/// Checks of one catalog cell: validity matches the data and the shape
/// dimension equals the proxy dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogCheck {
    pub grid: String,
    pub k: usize,
    pub l: usize,
    pub name: String,
    pub valid: bool,
    pub listed: bool,
    pub shape_dim: Option<usize>,
    pub proxy_dim: Option<usize>,
    pub pass: bool,
}

pub fn check_catalog_3d() -> Vec<CatalogCheck> {
    let atoms = atoms_3d();
    let mut out = Vec::new();
    for grid in catalog_3d() {
        for (l, row) in grid.entries.iter().enumerate() {
            for (k, entry) in row.iter().enumerate() {
                let params = ElementParams::new(grid.family, 3, k, l, grid.p, 1);
                let valid = params.validate().is_ok();
                let shape_dim = valid.then(|| params.expected_dim());
                let proxy = entry.as_ref().and_then(|e| proxy_dim(&e.proxy, &atoms).ok());
                let pass = valid == entry.is_some() && shape_dim == proxy;
                out.push(CatalogCheck {
                    grid: grid.name.clone(),
                    k,
                    l,
                    name: entry.as_ref().map_or("-".into(), |e| e.name.clone()),
                    valid,
                    listed: entry.is_some(),
                    shape_dim,
                    proxy_dim: proxy,
                    pass,
                });
            }
        }
    }
    out
}

/// Family and order after folding aliases (`ijp_W` with p = 1 is `ij_W`, …).
fn canonical(family: Family, p: usize) -> (Family, usize) {
    match (family, p) {
        (Family::IjpW, 1) => (Family::IjW, 1),
        (Family::IiWp, 1) => (Family::IiW, 1),
        (Family::IjpAlt, 1) => (Family::IjAlt, 1),
        (f, _) if f.fixed_p().is_some() => (f, f.fixed_p().unwrap()),
        (f, p) => (f, p),
    }
}

/// Catalog name of a lowest-order element in three dimensions.
pub fn element_name(params: &ElementParams) -> Option<CatalogEntry> {
    if params.n != 3 || params.space != SpaceKind::Pminus {
        return None;
    }
    let key = canonical(params.family, params.order());
    catalog_3d()
        .into_iter()
        .find(|g| canonical(g.family, g.p) == key)
        .and_then(|g| g.entries.get(params.l)?.get(params.k)?.clone())
}

/// A grid of constant-space proxies.
#[derive(Clone, Debug)]
pub struct ProxyGrid {
    pub name: String,
    pub n: usize,
    /// "alt" or "W".
    pub space: String,
    pub atoms: BTreeMap<String, usize>,
    /// `rows[k][l]`.
    pub rows: Vec<Vec<String>>,
}

#[derive(Deserialize)]
struct ProxyDoc {
    grid: Vec<ProxyGridRaw>,
}

#[derive(Deserialize)]
struct ProxyGridRaw {
    name: String,
    n: usize,
    space: String,
    atoms: BTreeMap<String, usize>,
    rows: Vec<Vec<String>>,
}

pub fn proxy_grids() -> Vec<ProxyGrid> {
    let doc: ProxyDoc = toml::from_str(PROXIES).expect("embedded proxies parse");
    doc.grid
        .into_iter()
        .map(|g| ProxyGrid { name: g.name, n: g.n, space: g.space, atoms: g.atoms, rows: g.rows })
        .collect()
}

/// Proxy label of Alt^{k,ℓ} (`w = false`) or W^{k,ℓ} in dimension n, if tabulated.
pub fn proxy_label(n: usize, w: bool, k: usize, l: usize) -> Option<String> {
    let space = if w { "W" } else { "alt" };
    proxy_grids().into_iter().find(|g| g.n == n && g.space == space).and_then(|g| g.rows.get(k)?.get(l).cloned())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProxyCheck {
    pub grid: String,
    pub k: usize,
    pub l: usize,
    pub label: String,
    pub proxy_dim: Option<usize>,
    pub space_dim: usize,
    pub pass: bool,
}

/// Compares every proxy dimension with the dimension of the constant space
/// (for W, the p = 1 kernel; the tilde variant when k > ℓ).
pub fn check_proxies() -> Vec<ProxyCheck> {
    let mut out = Vec::new();
    for g in proxy_grids() {
        for (k, row) in g.rows.iter().enumerate() {
            for (l, label) in row.iter().enumerate() {
                let space_dim = if g.space == "W" { symmetric_space(g.n, k, l, 1).dim() } else { alt_dim(g.n, k, l) };
                let pd = proxy_dim(label, &g.atoms).ok();
                out.push(ProxyCheck {
                    grid: g.name.clone(),
                    k,
                    l,
                    label: label.clone(),
                    proxy_dim: pd,
                    space_dim,
                    pass: pd == Some(space_dim),
                });
            }
        }
    }
    out
}

/// Elements referred to by name, with their shape dimensions.
pub fn named_elements() -> Vec<(&'static str, ElementParams, usize)> {
    vec![
        ("Regge", ElementParams::new(Family::IiW, 3, 1, 1, 1, 1), 6),
        ("full Regge", ElementParams::new(Family::IiAlt, 3, 1, 1, 0, 1), 18),
        ("HHJ", ElementParams::new(Family::IjW, 3, 2, 2, 1, 1), 6),
        ("MCS", ElementParams::new(Family::IjpW, 3, 2, 1, 2, 1), 8),
        ("HLZ", ElementParams::new(Family::IjW, 3, 1, 2, 1, 1), 14),
        ("4D HHJ", ElementParams::new(Family::IjW, 4, 3, 3, 1, 1), 10),
        ("4D W(2,2)", ElementParams::new(Family::IiW, 4, 2, 2, 1, 1), 20),
        ("constant W[2](2,2)", ElementParams::new(Family::ConstW, 4, 2, 2, 2, 1), 35),
    ]
}

/// Two-cell conformity checks referred to by the trace they certify.
pub fn named_conformity() -> Vec<(&'static str, ElementParams)> {
    vec![
        ("Regge tt", ElementParams::new(Family::IiW, 3, 1, 1, 1, 1)),
        ("HHJ nn", ElementParams::new(Family::IjW, 3, 2, 2, 1, 1)),
        ("MCS nt", ElementParams::new(Family::IjpW, 3, 2, 1, 2, 1)),
        ("HLZ edge tn", ElementParams::new(Family::IjW, 3, 1, 2, 1, 1)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn proxy_expressions() {
        let a = atoms_3d();
        assert_eq!(proxy_dim("T+x*S", &a), Ok(14));
        assert_eq!(proxy_dim("P1 V", &a), Ok(12));
        assert_eq!(proxy_dim("P1⊗V", &a), Ok(12));
        assert_eq!(proxy_dim("M+xV", &a), Ok(12));
        assert_eq!(proxy_dim("V+xR", &a), Ok(4));
        assert_eq!(proxy_dim("Q", &a), Err(CatalogError::UnknownAtom("Q".into())));
        assert_eq!(proxy_dim("", &a), Err(CatalogError::EmptyProxy));
    }

    #[test]
    fn tables_load() {
        let names: Vec<String> = dimension_tables().into_iter().map(|t| t.name).collect();
        assert_eq!(names, ["dim11", "dim22", "dim33", "dim22j", "dim33j"]);
        assert!(dimension_table("nope").is_err());
    }

    #[test]
    fn tables_reproduce() {
        for name in ["dim11", "dim22", "dim33", "dim22j", "dim33j"] {
            for check in check_table(&dimension_table(name).unwrap()) {
                assert!(check.pass, "{check:?}");
            }
        }
    }

    #[test]
    fn catalog_shape() {
        let grids = catalog_3d();
        assert_eq!(grids.len(), 5);
        for g in &grids {
            assert_eq!(g.entries.len(), 4);
            assert!(g.entries.iter().all(|r| r.len() == 4));
        }
    }

    #[test]
    fn names() {
        let hhj = element_name(&ElementParams::new(Family::IjW, 3, 2, 2, 1, 1)).unwrap();
        assert_eq!((hhj.name.as_str(), hhj.conformity.as_str()), ("HHJ", "nn"));
        let mcs = element_name(&ElementParams::new(Family::IjpW, 3, 2, 1, 2, 1)).unwrap();
        assert_eq!(mcs.name, "MCS");
        let regge = element_name(&ElementParams::new(Family::IjpW, 3, 1, 1, 1, 1)).unwrap();
        assert_eq!(regge.name, "Regge");
        assert_eq!(proxy_label(4, true, 2, 2).as_deref(), Some("AC"));
        assert!(element_name(&ElementParams::new(Family::IjW, 2, 1, 1, 1, 1)).is_none());
    }

    #[test]
    fn proxy_grids_match_spaces() {
        for c in check_proxies() {
            assert!(c.pass, "{c:?}");
        }
    }

    #[test]
    fn catalog_matches() {
        for c in check_catalog_3d() {
            assert!(c.pass, "{c:?}");
        }
    }
}
