//! Rewrite a branched tree as a sum of linear trees by IHX, and confirm the
//! identity in the tree space.

use jacobi::formal::FormalSum;
use jacobi::generators::{is_linear, linearize, tree_space_spec};
use jacobi::space::build_space;
use jacobi::text::parse_diagram;

const TREE: &str = "\
# a centre with three branches, each branch carrying two legs
deg 5 circles 6
t0: e0 e1 e2
t1: e0 e3 e4
t2: e1 e5 e6
t3: e2 e7 e8
c0: l0
c1: l1
c2: l2
c3: l3
c4: l4
c5: l5
e0: t0.0 t1.0
e1: t0.1 t2.0
e2: t0.2 t3.0
e3: t1.1 l0
e4: t1.2 l1
e5: t2.1 l2
e6: t2.2 l3
e7: t3.1 l4
e8: t3.2 l5
";

fn main() -> jacobi::Result<()> {
    let tree = parse_diagram(TREE)?;
    println!("linear with ends l0, l5: {}", is_linear(&tree, 0, 5)?);
    let sum = linearize(&tree, 0, 5)?;
    println!("{} linear terms: {sum}", sum.len());
    let space = build_space(&tree_space_spec(4))?;
    let same = space.reduces_to_zero(&(FormalSum::from_diagram(&tree) - sum))?;
    println!("equal in the quotient: {same}");
    Ok(())
}
