//! The sparse pipeline against the dense brute-force oracle.

use jacobi::oracle::oracle_reports;
use jacobi::space::{build_space, SpaceSpec};

fn main() -> jacobi::Result<()> {
    for k in 1..=2 {
        for o in oracle_reports(k)? {
            let s = build_space(&SpaceSpec::closed(k).connected(o.connected_only).self_loops(o.self_loops))?;
            println!(
                "k={k} loops={:5} connected={:5}: oracle {} classes rank {}, pipeline {} classes rank {}",
                o.self_loops,
                o.connected_only,
                o.classes,
                o.rank,
                s.classes().len(),
                s.rank()
            );
        }
    }
    Ok(())
}
