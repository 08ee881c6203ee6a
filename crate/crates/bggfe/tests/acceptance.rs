//! One PASS/FAIL line per acceptance criterion, with case counts and timing.
//! Runs without the libtest harness; exits non-zero if any line fails.

use std::time::{Duration, Instant};

use bggfe::catalog::named_elements;
use bggfe::verify::{self, Case};

struct Criterion {
    id: usize,
    name: &'static str,
    budget: Duration,
    run: fn() -> Vec<Case>,
}

fn named_dims_ok() -> Vec<Case> {
    named_elements()
        .into_iter()
        .map(|(name, params, dim)| Case {
            suite: "named",
            name: name.to_string(),
            detail: format!("expected {dim}"),
            pass: params.expected_dim() == dim,
        })
        .collect()
}

fn criteria() -> Vec<Criterion> {
    let secs = Duration::from_secs;
    vec![
        Criterion {
            id: 1,
            name: "dimension formulas n<=4 r<=3",
            budget: secs(60),
            run: || verify::dimension_formulas(4, 3),
        },
        Criterion { id: 2, name: "single and double index rank thresholds n<=6", budget: secs(60), run: || verify::appendix_a(6) },
        Criterion { id: 3, name: "S and S-dagger matrices are transposes n<=6", budget: secs(30), run: || verify::adjointness(6) },
        Criterion { id: 4, name: "bubble dimension tables", budget: secs(120), run: verify::dimension_table_checks },
        Criterion {
            id: 5,
            name: "unisolvency n<=4 r=1, n<=3 r<=2, named elements",
            budget: secs(600),
            run: || {
                let mut cases = verify::unisolvency(4, 2);
                cases.extend(named_dims_ok());
                cases
            },
        },
        Criterion { id: 6, name: "two-cell conformity n=2,3,4", budget: secs(300), run: || verify::conformity(4, 1) },
        Criterion {
            id: 7,
            name: "Euler characteristic on contractible meshes n<=4",
            budget: secs(300),
            run: || verify::euler(4),
        },
        Criterion {
            id: 8,
            name: "Dehn-Sommerville on simplex boundaries and octahedron",
            budget: secs(10),
            run: || verify::dehn_sommerville(4),
        },
        Criterion { id: 9, name: "high-order Regge bubble identity n<=4 r<=5", budget: secs(60), run: || verify::regge_identity(4, 5) },
        Criterion { id: 10, name: "worked high-order dimensions", budget: secs(60), run: || verify::worked_dimensions(3) },
        Criterion { id: 11, name: "Koszul commutation on P2 forms in 3D", budget: secs(60), run: || verify::koszul_commutation(2) },
    ]
}

fn main() {
    let filter: Option<usize> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let mut failed = 0;
    for c in criteria().into_iter().filter(|c| filter.is_none_or(|f| f == c.id)) {
        let start = Instant::now();
        let cases = (c.run)();
        let elapsed = start.elapsed();
        let bad: Vec<&Case> = cases.iter().filter(|x| !x.pass).collect();
        let pass = !cases.is_empty() && bad.is_empty() && elapsed <= c.budget;
        println!(
            "criterion {:>2} {}: {} ({} cases, {} failing, {:.1}s of {}s)",
            c.id,
            c.name,
            if pass { "PASS" } else { "FAIL" },
            cases.len(),
            bad.len(),
            elapsed.as_secs_f64(),
            c.budget.as_secs()
        );
        for b in bad.iter().take(10) {
            println!("    {}", b.tsv());
        }
        failed += usize::from(!pass);
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
