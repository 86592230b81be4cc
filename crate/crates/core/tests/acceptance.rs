//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Criteria 1-8 are run on pools of 1, 2 and 8 threads and their
//! reports compared for criterion 9.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::time::Instant;

use jacobi::bounds::{
    bound_brunnian_surgery, bound_linear_all_minus_one, bound_link_homotopic, bound_one_special,
    bound_special_leaves, crossing_change_residual, AbstractTree, Leaf, ResidualShape, Site,
};
use jacobi::enumerate::enumerate_classes;
use jacobi::error::Error;
use jacobi::formal::FormalSum;
use jacobi::generators::{
    gamma_sigma, glue_trees, insertion_classes, insertion_space_spec, insertion_specs, is_linear, linearize,
    permutations, t_sigma, theta_n, tree_space_spec,
};
use jacobi::oracle::oracle_reports;
use jacobi::space::{build_space, QuotientSpace, SpaceSpec};
use jacobi::{canonical_form, Diagram};

struct Outcome {
    pass: bool,
    summary: String,
    report: String,
}

/// Spaces built along the way, for the relation check.
#[derive(Default)]
struct Built {
    spaces: Vec<(String, QuotientSpace)>,
}

fn criterion_1(built: &mut Built) -> Outcome {
    let mut pass = true;
    let mut report = String::new();
    for n in 2..=5 {
        let space = build_space(&SpaceSpec::connected_closed(n - 1)).unwrap();
        let gens: Vec<FormalSum> =
            permutations(n - 1).iter().map(|s| FormalSum::from_diagram(&gamma_sigma(n, s).unwrap())).collect();
        let span = space.subspace_rank(&gens).unwrap();
        pass &= span == space.rank();
        writeln!(report, "n={n} generators={} span={span} rank={}", gens.len(), space.rank()).unwrap();
        built.spaces.push((format!("connected closed degree {}", n - 1), space));
    }
    Outcome { pass, summary: report.trim().replace('\n', "; "), report }
}

fn criterion_2() -> Outcome {
    let mut pass = true;
    let mut report = String::new();
    let mut checked = 0;
    for n in 2..=5 {
        let base = t_sigma(n, &(1..n).collect::<Vec<_>>()).unwrap();
        for s in permutations(n - 1) {
            let g = canonical_form(&gamma_sigma(n, &s).unwrap());
            let glued = canonical_form(&glue_trees(&base, &t_sigma(n, &s).unwrap()).unwrap());
            pass &= g == glued;
            checked += 1;
            writeln!(report, "n={n} sigma={s:?} {g}").unwrap();
        }
    }
    Outcome { pass, summary: format!("{checked} permutations, n=2..5"), report }
}

fn criterion_3(built: &mut Built) -> Outcome {
    let theta = theta_n(1).unwrap();
    let specs = insertion_specs(&theta);
    let space = build_space(&insertion_space_spec(&theta)).unwrap();
    let classes = insertion_classes(&space, &theta, &specs).unwrap();
    let distinct: BTreeSet<String> =
        classes.iter().map(|c| c.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")).collect();
    let pass = specs.len() == 60 && distinct.len() == 1;
    let report = format!("specs={} distinct={} class={:?}\n", specs.len(), distinct.len(), distinct);
    built.spaces.push(("degree 4 on 3 circles".into(), space));
    Outcome { pass, summary: format!("{} specs, {} distinct class(es)", specs.len(), distinct.len()), report }
}

/// Oriented diagrams in the classes of `space`: every orientation of each
/// representative, up to isomorphism.
fn oriented_count(space: &QuotientSpace) -> usize {
    let mut seen = BTreeSet::new();
    for c in space.classes() {
        let d = &c.diagram;
        for mask in 0u32..1 << d.num_vertices() {
            let mut e = d.clone();
            for v in 0..d.num_vertices() {
                if mask >> v & 1 == 1 {
                    e = e.flip(v);
                }
            }
            seen.insert(canonical_form(&e));
        }
    }
    seen.len()
}

fn criterion_4(built: &mut Built) -> Outcome {
    let mut pass = true;
    let mut report = String::new();
    for k in 1..=3 {
        for o in oracle_reports(k).unwrap() {
            let spec = SpaceSpec::closed(k).connected(o.connected_only).self_loops(o.self_loops);
            let space = build_space(&spec).unwrap();
            let oriented = oriented_count(&space);
            let ok = o.rank == space.rank() && o.classes == space.classes().len() && o.oriented_classes == oriented;
            pass &= ok;
            writeln!(
                report,
                "k={k} loops={} connected={} oracle rank={} classes={} oriented={} pipeline rank={} classes={} oriented={oriented}",
                o.self_loops,
                o.connected_only,
                o.rank,
                o.classes,
                o.oriented_classes,
                space.rank(),
                space.classes().len()
            )
            .unwrap();
            built.spaces.push((format!("closed degree {k} loops={} connected={}", o.self_loops, o.connected_only), space));
        }
    }
    Outcome { pass, summary: "degrees 1..3, four filter combinations each".into(), report }
}

fn criterion_5() -> Outcome {
    let mut pass = true;
    let mut cases = 0;
    for n in 2..=20usize {
        for l in 0..=n + 2 {
            let want = if l < n { n + l } else if l == n { 2 * n - 1 } else { 2 * n };
            pass &= bound_special_leaves(n, l).unwrap().level == want;
            cases += 1;
        }
        pass &= bound_special_leaves(n, n - 1).unwrap().level == 2 * n - 1;
        pass &= bound_special_leaves(n, n + 3) == Err(Error::TooManyLeaves { leaves: n + 3, max: n + 2 });
        pass &= bound_brunnian_surgery(n, &[]).unwrap().level == if n == 2 { 1 } else { 2 * n - 2 };
        pass &= bound_link_homotopic(n, false).unwrap().level == 2 * n - 1;
        pass &= bound_link_homotopic(n, true).unwrap().level == 2 * n;
        for m in -5..=5 {
            pass &= bound_one_special(n, m).unwrap().level == n + 1;
        }
        let lin = bound_linear_all_minus_one(n, false).unwrap();
        pass &= lin.guarantee.level == 2 * n + 1 && lin.target == theta_n(n).unwrap();
        pass &= bound_linear_all_minus_one(n, true).unwrap().guarantee.level == 2 * n + 2;
        cases += 17;
    }
    for n in 0..2 {
        pass &= bound_special_leaves(n, 0).is_err() && bound_brunnian_surgery(n, &[]).is_err();
        pass &= bound_link_homotopic(n, false).is_err() && bound_one_special(n, 1).is_err();
        pass &= bound_linear_all_minus_one(n, false).is_err();
    }
    pass &= bound_one_special(2, 0).unwrap().notes.iter().any(|s| s.contains("diffeomorphic"));
    pass &= bound_brunnian_surgery(3, &[1, 0, 1, 1]).unwrap().notes.iter().any(|s| s.contains("vacuous"));
    Outcome { pass, summary: format!("{cases} table entries, n=2..20"), report: format!("{cases} {pass}\n") }
}

fn criterion_6() -> Outcome {
    let mut pass = true;
    let mut cases = 0;
    for k1 in 1..=5usize {
        for k2 in 1..=5usize {
            let t1 = AbstractTree::new(k1, (0..k1 + 2).map(Leaf::Disk).collect(), false).unwrap();
            let t2 = AbstractTree::new(k2, (0..k2 + 2).map(|i| Leaf::Disk(100 + i)).collect(), false).unwrap();
            let sites = |t: &AbstractTree| -> Vec<Site> {
                (0..t.num_edges()).map(Site::Edge).chain((0..t.leaves.len()).map(Site::Leaf)).collect()
            };
            for &s1 in &sites(&t1) {
                for &s2 in &sites(&t2) {
                    let r = crossing_change_residual(&t1, &t2, s1, s2).unwrap();
                    let c = matches!(s1, Site::Edge(_)) as usize + matches!(s2, Site::Edge(_)) as usize;
                    let mut leaves: Vec<Leaf> = t1.leaves.iter().chain(&t2.leaves).copied().collect();
                    if let Site::Leaf(f) = s1 {
                        leaves.retain(|&l| l != Leaf::Disk(f));
                    }
                    if let Site::Leaf(f) = s2 {
                        leaves.retain(|&l| l != Leaf::Disk(100 + f));
                    }
                    let shape_ok = match (s1, s2, &r.shape) {
                        (Site::Edge(a), Site::Edge(b), ResidualShape::JoinedNodes { edge1, edge2 }) => (a, b) == (*edge1, *edge2),
                        (Site::Edge(e), Site::Leaf(f), ResidualShape::NodeToStem { on_tree: 1, edge, leaf }) => (e, f) == (*edge, *leaf),
                        (Site::Leaf(f), Site::Edge(e), ResidualShape::NodeToStem { on_tree: 2, edge, leaf }) => (e, f) == (*edge, *leaf),
                        (Site::Leaf(a), Site::Leaf(b), ResidualShape::FusedStems { leaf1, leaf2 }) => (a, b) == (*leaf1, *leaf2),
                        _ => false,
                    };
                    pass &= r.edges_involved == c
                        && r.plain.level == k1 + k2 + c
                        && r.residual.degree == k1 + k2 + c
                        && r.refined.level == r.plain.level + 1
                        && r.residual.leaves == leaves
                        && shape_ok;
                    cases += 1;
                }
            }
            let t1e = t1.num_edges();
            pass &= crossing_change_residual(&t1, &t2, Site::Edge(t1e), Site::Leaf(0)).is_err();
        }
    }
    Outcome { pass, summary: format!("{cases} site pairs, k1,k2=1..5"), report: format!("{cases} {pass}\n") }
}

fn criterion_7(built: &Built) -> Outcome {
    let mut pass = true;
    let mut report = String::new();
    let mut total = 0;
    for (name, space) in &built.spaces {
        let bad = space.relation_failures().unwrap();
        total += space.relations().len();
        pass &= bad == 0;
        writeln!(report, "{name}: relations={} failures={bad}", space.relations().len()).unwrap();
    }
    Outcome { pass, summary: format!("{total} relations in {} spaces", built.spaces.len()), report }
}

/// The leg of `d` on `circle` (trees here carry one leg per circle).
fn leg_on(d: &Diagram, circle: usize) -> usize {
    d.circles()[circle][0] as usize
}

fn criterion_8(built: &mut Built) -> Outcome {
    let mut pass = true;
    let mut report = String::new();
    let mut checked = 0;
    for nodes in 1..=4 {
        let spec = tree_space_spec(nodes);
        let space = build_space(&spec).unwrap();
        let mut terms = 0;
        for class in space.classes() {
            let d = &class.diagram;
            for c1 in 0..d.num_circles() {
                for c2 in 0..d.num_circles() {
                    if c1 == c2 {
                        continue;
                    }
                    let (e1, e2) = (leg_on(d, c1), leg_on(d, c2));
                    let out = linearize(d, e1, e2).unwrap();
                    terms += out.len();
                    pass &= !out.is_empty();
                    for (code, _) in out.iter() {
                        let t = code.decode().unwrap();
                        pass &= t.degree() == d.degree() && is_linear(&t, leg_on(&t, c1), leg_on(&t, c2)).unwrap();
                    }
                    pass &= space.reduces_to_zero(&(FormalSum::from_diagram(d) - out)).unwrap();
                    checked += 1;
                }
            }
        }
        // every enumerated class is a tree
        pass &= enumerate_classes(&jacobi::enumerate::EnumSpec::new(nodes + 1, nodes + 2).connected(true).legs(vec![1; nodes + 2]))
            .unwrap()
            .iter()
            .all(|c| jacobi::generators::check_tree(&c.diagram).is_ok());
        writeln!(report, "nodes={nodes} trees={} rank={} output terms={terms}", space.classes().len(), space.rank()).unwrap();
        built.spaces.push((format!("trees with {nodes} nodes"), space));
    }
    Outcome { pass, summary: format!("{checked} (tree, ends) pairs, up to 4 nodes"), report }
}

fn run_all() -> Vec<Outcome> {
    let mut built = Built::default();
    let c1 = criterion_1(&mut built);
    let c2 = criterion_2();
    let c3 = criterion_3(&mut built);
    let c4 = criterion_4(&mut built);
    let c5 = criterion_5();
    let c6 = criterion_6();
    let c8 = criterion_8(&mut built);
    let c7 = criterion_7(&built);
    vec![c1, c2, c3, c4, c5, c6, c7, c8]
}

const NAMES: [&str; 9] = [
    "spanning by the Γ_σ",
    "gluing identity",
    "insertion independence",
    "oracle rank equivalence",
    "degree tables",
    "crossing-change combinator",
    "relation self-consistency",
    "linearization",
    "determinism across thread counts",
];

fn main() {
    let mut runs = Vec::new();
    for threads in [1, 2, 8] {
        let start = Instant::now();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        runs.push(pool.install(run_all));
        eprintln!("acceptance run on {threads} thread(s): {:.1?}", start.elapsed());
    }
    let mut failed = false;
    for (i, o) in runs[0].iter().enumerate() {
        let line = format!("criterion {} [{}]: {} ({})", i + 1, NAMES[i], if o.pass { "PASS" } else { "FAIL" }, o.summary);
        println!("{line}");
        failed |= !o.pass;
        if !o.pass {
            eprint!("{}", o.report);
        }
    }
    let same = runs.iter().all(|r| r.iter().zip(&runs[0]).all(|(a, b)| a.report == b.report && a.pass == b.pass));
    println!(
        "criterion 9 [{}]: {} (reports at 1, 2 and 8 threads {})",
        NAMES[8],
        if same { "PASS" } else { "FAIL" },
        if same { "are byte-identical" } else { "differ" }
    );
    failed |= !same;
    if failed {
        std::process::exit(1);
    }
}
