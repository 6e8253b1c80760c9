//! The built-in catalog as a JSON document: validate, serialize, reload and
//! use a record.

use donaldson::cli::{cmd_series, Catalog, Format};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let catalog = Catalog::builtin();
    let issues = catalog.validate();
    println!(
        "{} manifolds, {} fibrations, {} models; {} issues",
        catalog.manifolds.len(),
        catalog.fibrations.len(),
        catalog.floer_models.len(),
        issues.len()
    );

    let text = catalog.to_json();
    let reloaded = Catalog::parse(&text)?;
    assert_eq!(reloaded.to_json(), text);
    println!("round trip of {} bytes is exact", text.len());

    let k3 = reloaded.manifold("E(2)")?;
    println!("E(2): b+ = {}, b- = {}, spin = {}", k3.b_plus, k3.b_minus, k3.spin);
    let outcome = cmd_series(&reloaded, "pencil-base", "[1,0,1,0]", "[2,1,0,1]")?;
    print!("{}", outcome.render(Format::Text));
    Ok(())
}
