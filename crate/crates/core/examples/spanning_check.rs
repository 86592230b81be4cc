//! The diagrams Γ_σ for σ in S_{n-1} span the connected closed space of
//! degree n-1.

use jacobi::cli::spanning;
use jacobi::enumerate::default_max_classes;

fn main() -> jacobi::Result<()> {
    for n in 2..=5 {
        let (span, rank, count) = spanning(n, default_max_classes())?;
        let verdict = if span == rank { "spans" } else { "does not span" };
        println!("n={n}: {count} generators, span rank {span}, space rank {rank}: {verdict}");
    }
    Ok(())
}
