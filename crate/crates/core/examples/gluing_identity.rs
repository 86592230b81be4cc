//! Γ_σ drawn directly agrees with T_id glued to T_σ.

use jacobi::generators::{gamma_sigma, glue_trees, permutations, t_sigma};
use jacobi::text::format_diagram;
use jacobi::{canonical_form, is_isomorphic};

fn main() -> jacobi::Result<()> {
    let t = t_sigma(3, &[2, 1])?;
    println!("T_(2,1) for n=3:\n{}", format_diagram(t.diagram()));
    for n in 2..=5 {
        let id = t_sigma(n, &(1..n).collect::<Vec<_>>())?;
        let mut agree = 0;
        let perms = permutations(n - 1);
        for s in &perms {
            let glued = glue_trees(&id, &t_sigma(n, s)?)?;
            if is_isomorphic(&glued, &gamma_sigma(n, s)?) {
                agree += 1;
            }
        }
        println!("n={n}: {agree}/{} permutations agree", perms.len());
    }
    println!("Γ_(1,2,3) = {}", canonical_form(&gamma_sigma(4, &[1, 2, 3])?));
    Ok(())
}
