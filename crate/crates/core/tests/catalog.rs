use ccybe_core::ybe::{check_catalog, EquationCatalog};

#[test]
fn stock_catalog_rederives() {
    let checks = check_catalog(&EquationCatalog::stock());
    for c in &checks {
        println!("{:<14} scale={:?} diff={:?} err={:?}", c.name, c.scale, c.diff, c.error);
    }
    assert!(checks.iter().all(|c| c.ok()));
}
