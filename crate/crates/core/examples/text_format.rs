//! Read, validate and write diagrams in the text format.

use jacobi::text::{format_diagram, parse_diagram};
use jacobi::{canonical_form, class_form};

fn main() {
    let text = "\
deg 1 circles 0
t0: e1 e2 e3
t1: e1 e2 e3
e1: t0.0 t1.0
e2: t0.1 t1.1
e3: t0.2 t1.2
";
    let theta = parse_diagram(text).unwrap();
    println!("{}", format_diagram(&theta));
    println!("code {}", canonical_form(&theta));
    let f = class_form(&theta.flip(0));
    println!("flipped: class {} sign {}", f.code, f.sign);

    let broken = "deg 1 circles 0\nt0: e1 e2\nt1: e1 e2 e3\ne1: t0.0 t1.0\ne2: t0.1 t1.1\ne3: t1.2 t1.2\n";
    match parse_diagram(broken) {
        Ok(_) => println!("unexpectedly valid"),
        Err(e) => println!("rejected: {e}"),
    }
}
