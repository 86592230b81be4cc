//! Insert three ordered circles into the edges of θ in every possible way
//! and compare the classes.

use std::collections::BTreeSet;

use jacobi::generators::{insert_circles, insertion_classes, insertion_space_spec, insertion_specs, theta_n, InsertionSpec};
use jacobi::space::build_space;
use jacobi::text::format_diagram;

fn main() -> jacobi::Result<()> {
    let theta = theta_n(1)?;
    let d = insert_circles(&theta, &InsertionSpec::one_per_edge(3))?;
    println!("one circle per edge:\n{}", format_diagram(&d));
    let specs = insertion_specs(&theta);
    let space = build_space(&insertion_space_spec(&theta))?;
    let classes = insertion_classes(&space, &theta, &specs)?;
    let distinct: BTreeSet<_> = classes.iter().collect();
    println!("{} specs, space rank {}, {} distinct class(es)", specs.len(), space.rank(), distinct.len());
    Ok(())
}
