//! Recomputes the per-face dimension tables and the 3D catalog.

use bggfe::catalog::{check_catalog_3d, check_table, dimension_tables};

fn main() {
    for table in dimension_tables() {
        println!("{} (n = {})", table.name, table.ambient);
        for row in check_table(&table) {
            println!("    {:<18} {:?} {}", row.label, row.computed, if row.pass { "ok" } else { "MISMATCH" });
        }
    }
    let bad = check_catalog_3d().into_iter().filter(|c| !c.pass).count();
    println!("3D catalog mismatches: {bad}");
}
