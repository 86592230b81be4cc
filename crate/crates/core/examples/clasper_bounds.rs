//! Y_k-equivalence levels for clasper surgery, and a crossing change.

use jacobi::bounds::*;

fn main() -> jacobi::Result<()> {
    println!("special leaves, n=4:");
    for l in 0..=6 {
        println!("  l={l}: {}", bound_special_leaves(4, l)?);
    }
    for n in 2..=5 {
        println!("Brunnian n={n}: {}", bound_brunnian_surgery(n, &[])?);
    }
    println!("{}", bound_brunnian_surgery(3, &[1, 0, -1, 2])?);
    println!("{}", bound_link_homotopic(3, false)?);
    println!("{}", bound_link_homotopic(3, true)?);
    println!("{}", bound_one_special(2, 0)?);
    let lin = bound_linear_all_minus_one(3, false)?;
    println!("{} ({} vertices)", lin.guarantee, lin.target.num_vertices());

    let r = crossing_change_residual(&AbstractTree::generic(2), &AbstractTree::generic(3), Site::Edge(1), Site::Leaf(0))?;
    println!("crossing change: C={}, {}, {}, residual degree {}", r.edges_involved, r.plain, r.refined, r.residual.degree);
    Ok(())
}
