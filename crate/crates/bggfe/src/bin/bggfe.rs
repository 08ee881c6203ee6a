//! Command-line front end for the bggfe library.

use std::io::Write;
use std::process::ExitCode;

use bggfe::catalog::{
    catalog_3d, check_catalog_3d, check_proxies, check_table, dimension_table, element_name, named_elements,
    proxy_grids, proxy_label,
};
use bggfe::elements::{build_element, unisolvency_check, ElementParams, Family, SpaceKind};
use bggfe::meshcomplex::{euler_audit, euler_parameters, load_complex};
use bggfe::report::{Format, Sheet};
use bggfe::verify::{run, tally, Limits, Suite};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "bggfe", version, about = "Finite elements for form-valued forms, in exact arithmetic")]
struct Cli {
    /// Output format: text, tsv or markdown.
    #[arg(long, global = true, default_value = "text")]
    format: Format,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Dim11,
    Dim22,
    Dim33,
    Dim22j,
    Dim33j,
    #[value(name = "threeD")]
    ThreeD,
    #[value(name = "fourD")]
    FourD,
}

#[derive(Subcommand)]
enum Verb {
    /// Build one element and check unisolvency.
    Element {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        #[arg(long, default_value_t = 1)]
        p: usize,
        #[arg(long, default_value_t = 1)]
        r: usize,
        /// Skeletal order of the mixed family.
        #[arg(long, default_value_t = 0)]
        q: usize,
        /// Pminus, Pr_minus or Pr; defaults to Pminus for r = 1 and Pr_minus otherwise.
        #[arg(long)]
        space: Option<SpaceKind>,
    },
    /// Print a dimension table or catalog grid.
    Table {
        #[arg(long)]
        which: Which,
        /// Compare with the embedded expected values.
        #[arg(long)]
        check: bool,
    },
    /// Run verification suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 3)]
        nmax: usize,
        #[arg(long, default_value_t = 2)]
        rmax: usize,
    },
    /// Euler characteristic audit on a mesh file.
    Euler {
        #[arg(long)]
        mesh: std::path::PathBuf,
        /// Omit both l and p to audit every admissible pair.
        #[arg(long)]
        l: Option<usize>,
        #[arg(long)]
        p: Option<usize>,
    },
    /// Constant-space proxies with their dimensions.
    Proxies,
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn face_word(n: usize, m: usize) -> String {
    match m {
        _ if m == n => "cell".into(),
        0 => "vertex".into(),
        1 => "edge".into(),
        2 => "face".into(),
        _ => format!("{m}-face"),
    }
}

fn element(o: &mut String, params: ElementParams, format: Format) -> Result<bool, String> {
    params.validate().map_err(|e| e.to_string())?;
    let spec = build_element(&params).map_err(|e| e.to_string())?;
    let rep = unisolvency_check(&spec);
    let counts = spec.face_counts();
    let entry = element_name(&params);
    let name = entry
        .as_ref()
        .map(|e| e.name.clone())
        .or_else(|| named_elements().into_iter().find(|(_, q, _)| *q == params).map(|(n, _, _)| n.to_string()))
        .unwrap_or_else(|| params.family.to_string());
    let lowest = counts.iter().position(|&c| c > 0);
    let conformity = entry.as_ref().map(|e| e.conformity.clone()).filter(|c| c != "-1");
    let mut summary = format!("{name}: dim {}", rep.shape_dim);
    if let (Some(m), Some(conf)) = (lowest, conformity) {
        summary += &format!(", {conf} DoF {}/{}", counts[m], face_word(params.n, m));
    }
    summary += &format!(", {}", verdict(rep.pass));
    o.push_str(&summary);
    o.push('\n');

    let mut sheet = Sheet::new(params.to_string(), &["face dim", "DoFs per face"]);
    for (m, c) in counts.iter().enumerate() {
        sheet.push([m.to_string(), c.to_string()]);
    }
    o.push_str(&sheet.render(format));
    let mut info = Sheet::new("", &["quantity", "value"]);
    info.push(["expected dim".to_string(), rep.expected_dim.to_string()]);
    info.push(["DoFs".to_string(), rep.dof_count.to_string()]);
    info.push(["rank".to_string(), rep.rank.to_string()]);
    info.push(["det".to_string(), rep.det.as_ref().map_or("-".into(), |d| d.to_string())]);
    if let Some(e) = &entry {
        info.push(["proxy".to_string(), e.proxy.clone()]);
    }
    if params.n == 4 && params.k <= 4 && params.l <= 4 {
        let w = params.family.is_w();
        if let Some(label) = proxy_label(4, w, params.k, params.l) {
            info.push(["constant proxy".to_string(), label]);
        }
    }
    o.push_str(&info.render(format));
    Ok(rep.pass)
}

fn table(o: &mut String, which: Which, check: bool, format: Format) -> Result<bool, String> {
    let mut ok = true;
    let name = match which {
        Which::Dim11 => "dim11",
        Which::Dim22 => "dim22",
        Which::Dim33 => "dim33",
        Which::Dim22j => "dim22j",
        Which::Dim33j => "dim33j",
        Which::ThreeD => {
            let checks = check_catalog_3d();
            for grid in catalog_3d() {
                let mut header = vec!["l \\ k".to_string()];
                header.extend((0..grid.entries[0].len()).map(|k| k.to_string()));
                let mut sheet = Sheet { title: grid.name.clone(), header, rows: Vec::new() };
                for (l, row) in grid.entries.iter().enumerate() {
                    let mut cells = vec![l.to_string()];
                    for (k, e) in row.iter().enumerate() {
                        let mut cell = e.as_ref().map_or("-".into(), |e| format!("{} ({})", e.name, e.proxy));
                        if check {
                            let c = checks.iter().find(|c| c.grid == grid.name && c.k == k && c.l == l).unwrap();
                            ok &= c.pass;
                            cell += &format!(" {}", verdict(c.pass));
                        }
                        cells.push(cell);
                    }
                    sheet.rows.push(cells);
                }
                o.push_str(&sheet.render(format));
            }
            return Ok(ok);
        }
        Which::FourD => return Ok(proxies(o, Some(4), check, format)),
    };
    let table = dimension_table(name).map_err(|e| e.to_string())?;
    let width = table.rows.iter().map(|r| r.counts.len()).max().unwrap_or(0);
    let mut header = vec!["row", "family", "k", "l", "p"];
    let dims: Vec<String> = (1..=width).map(|m| format!("m={m}")).collect();
    header.extend(dims.iter().map(String::as_str));
    if check {
        header.extend(["expected", "check"]);
    }
    let mut sheet = Sheet::new(format!("{name} (n = {})", table.ambient), &header);
    for row in check_table(&table) {
        let src = table.rows.iter().find(|r| r.label == row.label).unwrap();
        let mut cells =
            vec![row.label.clone(), src.family.clone(), src.k.to_string(), src.l.to_string(), src.p.to_string()];
        cells.extend(row.computed.iter().map(usize::to_string));
        cells.resize(5 + width, String::new());
        if check {
            cells.push(row.expected.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" "));
            cells.push(verdict(row.pass).into());
            ok &= row.pass;
        }
        sheet.rows.push(cells);
    }
    o.push_str(&sheet.render(format));
    Ok(ok)
}

fn proxies(o: &mut String, only_n: Option<usize>, check: bool, format: Format) -> bool {
    let checks = check_proxies();
    let mut ok = true;
    for g in proxy_grids().into_iter().filter(|g| only_n.is_none_or(|n| n == g.n)) {
        let mut header = vec!["k \\ l".to_string()];
        header.extend((0..g.rows[0].len()).map(|l| l.to_string()));
        let mut sheet = Sheet { title: format!("{} (n = {})", g.name, g.n), header, rows: Vec::new() };
        for (k, row) in g.rows.iter().enumerate() {
            let mut cells = vec![k.to_string()];
            for (l, label) in row.iter().enumerate() {
                let c = checks.iter().find(|c| c.grid == g.name && c.k == k && c.l == l).unwrap();
                ok &= c.pass;
                let mut cell = format!("{label} [{}]", c.space_dim);
                if check {
                    cell += &format!(" {}", verdict(c.pass));
                }
                cells.push(cell);
            }
            sheet.rows.push(cells);
        }
        o.push_str(&sheet.render(format));
    }
    ok
}

fn verify(o: &mut String, suite: Suite, lim: Limits, format: Format) -> bool {
    let cases = run(suite, lim);
    let mut sheet = Sheet::new(format!("suite {suite}"), &["suite", "case", "certificate", "verdict"]);
    for c in &cases {
        sheet.push([c.suite.to_string(), c.name.clone(), c.detail.clone(), verdict(c.pass).to_string()]);
    }
    o.push_str(&sheet.render(format));
    let (passed, failed) = tally(&cases);
    o.push_str(&format!("{passed} passed, {failed} failed: {}\n", verdict(failed == 0)));
    failed == 0
}

fn euler(o: &mut String, path: &std::path::Path, l: Option<usize>, p: Option<usize>, format: Format) -> Result<bool, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let cx = load_complex(&text).map_err(|e| e.to_string())?;
    let pairs = match (l, p) {
        (Some(l), Some(p)) => vec![(l, p)],
        (None, None) => euler_parameters(cx.n),
        _ => return Err("give both --l and --p, or neither".into()),
    };
    let mut sheet = Sheet::new(
        format!("{} (n = {}, f = {:?})", path.display(), cx.n, cx.f_vector()),
        &["l", "p", "element dims", "distribution dims", "lhs", "rhs", "residual", "skeletal residual", "verdict"],
    );
    let mut ok = true;
    for (l, p) in pairs {
        let a = euler_audit(&cx, l, p).map_err(|e| e.to_string())?;
        let join = |v: &[(usize, usize)]| v.iter().map(|(_, d)| d.to_string()).collect::<Vec<_>>().join(",");
        ok &= a.pass();
        sheet.push([
            l.to_string(),
            p.to_string(),
            join(&a.fe_terms),
            join(&a.d_terms),
            a.lhs.to_string(),
            a.rhs.to_string(),
            a.residual.to_string(),
            a.skeletal_residual.to_string(),
            verdict(a.pass()).to_string(),
        ]);
    }
    o.push_str(&sheet.render(format));
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let result = match cli.verb {
        Verb::Element { family, n, k, l, p, r, q, space } => {
            let mut params = ElementParams::new(family, n, k, l, p, r).with_q(q);
            if let Some(s) = space {
                params = params.with_space(s);
            }
            element(&mut out, params, cli.format)
        }
        Verb::Table { which, check } => table(&mut out, which, check, cli.format),
        Verb::Verify { suite, nmax, rmax } => Ok(verify(&mut out, suite, Limits { nmax, rmax }, cli.format)),
        Verb::Euler { mesh, l, p } => euler(&mut out, &mesh, l, p, cli.format),
        Verb::Proxies => Ok(proxies(&mut out, None, true, cli.format)),
    };
    // a closed pipe downstream is not an error
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
