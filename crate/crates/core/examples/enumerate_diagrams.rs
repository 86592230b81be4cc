//! Count trivalent diagram classes by degree, with and without filters.

use jacobi::enumerate::{enumerate_classes, EnumSpec};

fn main() -> jacobi::Result<()> {
    for k in 1..=4 {
        let all = enumerate_classes(&EnumSpec::new(k, 0))?;
        let conn = enumerate_classes(&EnumSpec::new(k, 0).connected(true))?;
        let loops = enumerate_classes(&EnumSpec::new(k, 0).self_loops(true))?;
        println!("degree {k}: {} classes, {} connected, {} allowing self-loops", all.len(), conn.len(), loops.len());
    }
    // diagrams on two circles with two legs on each
    let two = enumerate_classes(&EnumSpec::new(2, 2).legs(vec![2, 2]))?;
    println!("degree 2 on two circles, legs (2,2): {} classes", two.len());
    for c in two.iter().take(3) {
        println!("  {}", c.rep);
    }
    Ok(())
}
