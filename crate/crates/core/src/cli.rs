//! The `jacobi` command line: argument model, dispatch and report output.
//!
//! Every command builds a [`Report`], printed as `key: value` lines or as a
//! JSON object carrying `schema: 1`. Exit status is 0 on success, 2 for
//! invalid input and 3 when a resource ceiling is hit.

use std::fs;
use std::io::Read as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::bounds::{self, AbstractTree, Site};
use crate::diagram::Diagram;
use crate::enumerate::{enumerate_classes, EnumSpec};
use crate::error::{Error, Result};
use crate::formal::FormalSum;
use crate::generators::{self, InsertionSpec, TreeDiagram};
use crate::oracle::{oracle_reports, MAX_ORACLE_DEGREE};
use crate::relations::RelationSelector;
use crate::space::{build_space, SpaceSpec};
use crate::text::{format_diagram, format_diagrams, parse_diagram, parse_diagrams};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// Diagram spaces modulo AS/IHX/STU, generator families and clasper bounds.
#[derive(Clone, Debug, Parser)]
#[command(name = "jacobi", version)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Worker threads. Never changes the output.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    pub threads: Option<u32>,

    /// Ceiling on enumerated classes (default: $JACOBI_MAX_CLASSES, else 10^6).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_classes: Option<u64>,

    /// Add wall-clock time to the report. Reports stop being reproducible.
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// List the diagram classes of a degree and skeleton.
    Enumerate {
        #[command(flatten)]
        space: SpaceArgs,
        /// Print every representative in the diagram text format.
        #[arg(long)]
        diagrams: bool,
    },
    /// Rank of a quotient space, with its basis.
    Rank {
        #[command(flatten)]
        space: SpaceArgs,
        /// Also compute the invariant factors of the relation matrix.
        #[arg(long)]
        integral: bool,
        /// Write the relation matrix in triplet format.
        #[arg(long)]
        export_matrix: Option<PathBuf>,
    },
    /// Coordinates of diagrams over the basis of their quotient space.
    Reduce {
        /// Diagram file, or `-` for standard input.
        #[arg(long)]
        input: String,
        #[command(flatten)]
        space: SpaceArgs,
    },
    /// Check that the diagrams Γ_σ, σ in S_{n-1}, span the connected closed
    /// space of degree n-1.
    VerifySpanning {
        #[arg(long)]
        n: usize,
    },
    /// Glue two trees leg by leg (the second is turned over).
    Glue {
        #[arg(long)]
        n: Option<usize>,
        /// σ for the first tree T_σ, e.g. `1,2,3`.
        #[arg(long, value_delimiter = ',')]
        sigma: Vec<usize>,
        /// σ for the second tree.
        #[arg(long, value_delimiter = ',')]
        tau: Vec<usize>,
        /// Read the first tree from a file instead.
        #[arg(long)]
        left: Option<String>,
        #[arg(long)]
        right: Option<String>,
    },
    /// Insert ordered circles into the edges of a closed connected diagram.
    Insert {
        /// Closed diagram file (default θ).
        #[arg(long)]
        input: Option<String>,
        /// `edge:ordinal` per circle, in circle order.
        #[arg(long, value_delimiter = ',')]
        place: Vec<String>,
    },
    /// Check that insertions give one class in the AS+IHX+STU quotient.
    CheckInsertion {
        /// Closed diagram file (default θ).
        #[arg(long)]
        input: Option<String>,
        /// A spec as `edge:ordinal,...`; repeat for several.
        #[arg(long)]
        spec: Vec<String>,
        /// Check every complete spec.
        #[arg(long)]
        all: bool,
    },
    /// The diagram Γ_σ.
    Gamma {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',')]
        sigma: Vec<usize>,
    },
    /// The linear tree T_σ.
    Tsigma {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',')]
        sigma: Vec<usize>,
    },
    /// The doubled linear tree Θ_n.
    Theta {
        #[arg(long)]
        n: usize,
        /// Also report its coordinates in the connected closed space.
        #[arg(long)]
        reduce: bool,
    },
    /// Rewrite a tree as a sum of linear trees with the given ends.
    Linearize {
        #[arg(long)]
        input: String,
        #[arg(long)]
        end1: usize,
        #[arg(long)]
        end2: usize,
        /// Also check the identity in the tree space.
        #[arg(long)]
        verify: bool,
    },
    /// Y_k-equivalence guarantees.
    Bound {
        #[command(subcommand)]
        which: BoundCommand,
    },
    /// Compare the sparse pipeline with the dense brute-force oracle.
    OracleCompare {
        #[arg(long)]
        degree: usize,
    },
}

#[derive(Clone, Debug, Subcommand)]
pub enum BoundCommand {
    /// A Y_n-tree with l special leaves.
    Table {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        l: usize,
    },
    /// Surgery along an (n+1)-component Brunnian link.
    Brunnian {
        #[arg(long)]
        n: usize,
        /// The framing indices m_i, if known.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        framings: Vec<i64>,
    },
    /// Surgeries along two link-homotopic Brunnian links.
    LinkHomotopy {
        #[arg(long)]
        n: usize,
        /// The manifolds are integral homology spheres.
        #[arg(long)]
        homology_sphere: bool,
    },
    /// A Y_n-tree with one m-special leaf.
    OneSpecial {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
    },
    /// A linear Y_n-tree whose leaves are all (-1)-special.
    LinearSpecial {
        #[arg(long)]
        n: usize,
        /// Use the level available for homology balls.
        #[arg(long)]
        refined: bool,
    },
    /// A crossing change between two trees with generic leaves.
    Crossing {
        #[arg(long)]
        k1: usize,
        #[arg(long)]
        k2: usize,
        /// `edge:i` or `leaf:i`.
        #[arg(long)]
        site1: String,
        #[arg(long)]
        site2: String,
    },
}

/// Which space a command works in.
#[derive(Clone, Debug, Args)]
pub struct SpaceArgs {
    /// `A` for all diagrams, `Ac` for connected ones only.
    #[arg(long, default_value = "A")]
    pub space: String,
    #[arg(long)]
    pub degree: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub circles: usize,
    /// `as-ihx` or `as-ihx-stu` (default: STU exactly when there are circles).
    #[arg(long)]
    pub relations: Option<RelationSelector>,
    #[arg(long)]
    pub connected: bool,
    #[arg(long)]
    pub self_loops: bool,
    /// Exact number of legs on each circle, e.g. `2,2,1`.
    #[arg(long, value_delimiter = ',')]
    pub legs: Vec<usize>,
}

impl SpaceArgs {
    fn spec(&self, degree: usize, circles: usize, max_classes: usize) -> Result<SpaceSpec> {
        let connected = match self.space.as_str() {
            "A" | "a" => self.connected,
            "Ac" | "ac" | "AC" => true,
            other => return Err(Error::InvalidArgument(format!("unknown space {other:?}, expected A or Ac"))),
        };
        let mut spec = if circles == 0 { SpaceSpec::closed(degree) } else { SpaceSpec::on_circles(degree, circles) };
        spec = spec.connected(connected).self_loops(self.self_loops).ceiling(max_classes);
        if let Some(sel) = self.relations {
            spec = spec.selector(sel);
        }
        if !self.legs.is_empty() {
            if self.legs.len() != circles {
                return Err(Error::InvalidArgument(format!("{} leg counts for {circles} circles", self.legs.len())));
            }
            spec = spec.legs(self.legs.clone());
        }
        Ok(spec)
    }

    fn flagged_spec(&self, max_classes: usize) -> Result<SpaceSpec> {
        let degree = self.degree.ok_or_else(|| Error::InvalidArgument("--degree is required".into()))?;
        self.spec(degree, self.circles, max_classes)
    }
}

/// A report under construction: ordered text lines and a JSON object.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    lines: Vec<String>,
    json: Map<String, Value>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        let mut json = Map::new();
        json.insert("schema".into(), json!(SCHEMA_VERSION));
        json.insert("command".into(), json!(command));
        Report { lines: Vec::new(), json }
    }

    pub fn field(&mut self, key: &str, value: impl Serialize + ToString) -> &mut Self {
        self.lines.push(format!("{key}: {}", value.to_string()));
        self.json.insert(key.into(), json!(value));
        self
    }

    pub fn list<T: Serialize + ToString>(&mut self, key: &str, items: &[T]) -> &mut Self {
        self.lines.push(format!("{key}:"));
        self.lines.extend(items.iter().map(|i| format!("  {}", i.to_string())));
        self.json.insert(key.into(), json!(items));
        self
    }

    /// Multi-line text, printed verbatim.
    pub fn block(&mut self, key: &str, text: &str) -> &mut Self {
        self.lines.push(format!("{key}:"));
        self.lines.extend(text.lines().map(|l| format!("  {l}")));
        self.json.insert(key.into(), json!(text));
        self
    }

    /// Structured data shown in JSON only, except for a one-line summary.
    pub fn data(&mut self, key: &str, summary: &str, value: Value) -> &mut Self {
        self.lines.push(format!("{key}: {summary}"));
        self.json.insert(key.into(), value);
        self
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.json.get(key)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.lines.iter().map(|l| format!("{l}\n")).collect(),
            Format::Json => {
                serde_json::to_string_pretty(&Value::Object(self.json.clone())).expect("report serializes") + "\n"
            }
        }
    }
}

/// Exit status for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ResourceLimit(_) => 3,
        _ => 2,
    }
}

/// Run a command on a pool of `config.threads` workers.
pub fn run(config: &RunConfig) -> Result<Report> {
    let start = Instant::now();
    let mut report = match config.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t as usize)
            .build()
            .map_err(|e| Error::InvalidArgument(e.to_string()))?
            .install(|| dispatch(config)),
        None => dispatch(config),
    }?;
    if config.timing {
        report.field("elapsed_ms", start.elapsed().as_millis() as u64);
    }
    Ok(report)
}

/// Run, render and deliver the report; returns the exit status.
pub fn execute(config: &RunConfig) -> i32 {
    match run(config) {
        Ok(report) => {
            let text = report.render(config.format);
            match &config.output {
                Some(p) => {
                    if let Err(e) = fs::write(p, text) {
                        eprintln!("error: cannot write {}: {e}", p.display());
                        return 2;
                    }
                }
                None => print!("{text}"),
            }
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Error::InvalidArgument(format!("stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("cannot read {path}: {e}")))
}

fn closed_input(path: &Option<String>) -> Result<Diagram> {
    match path {
        Some(p) => parse_diagram(&read_input(p)?),
        None => generators::theta_n(1),
    }
}

fn parse_spec(s: &str) -> Result<InsertionSpec> {
    let placements = s
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(parse_placement)
        .collect::<Result<Vec<_>>>()?;
    Ok(InsertionSpec::new(placements))
}

fn parse_placement(t: &str) -> Result<(usize, usize)> {
    let bad = || Error::InvalidArgument(format!("placement {t:?} is not edge:ordinal"));
    let (e, o) = t.trim().split_once(':').ok_or_else(bad)?;
    Ok((e.parse().map_err(|_| bad())?, o.parse().map_err(|_| bad())?))
}

fn parse_site(s: &str) -> Result<Site> {
    let bad = || Error::BadSite(format!("{s:?} is not edge:i or leaf:i"));
    let (kind, i) = s.split_once(':').ok_or_else(bad)?;
    let i = i.parse().map_err(|_| bad())?;
    match kind {
        "edge" => Ok(Site::Edge(i)),
        "leaf" => Ok(Site::Leaf(i)),
        _ => Err(bad()),
    }
}

fn identity(k: usize) -> Vec<usize> {
    (1..=k).collect()
}

fn or_identity(sigma: &[usize], n: usize) -> Vec<usize> {
    if sigma.is_empty() {
        identity(n.saturating_sub(1))
    } else {
        sigma.to_vec()
    }
}

fn dispatch(config: &RunConfig) -> Result<Report> {
    let max_classes = match config.max_classes {
        Some(m) => m as usize,
        None => crate::enumerate::default_max_classes(),
    };
    match &config.command {
        Command::Enumerate { space, diagrams } => {
            let spec = space.flagged_spec(max_classes)?;
            let mut es = EnumSpec::new(spec.degree, spec.circles)
                .connected(spec.connected_only)
                .self_loops(spec.allow_self_loops)
                .ceiling(max_classes);
            if let Some(p) = spec.leg_profile {
                es = es.legs(p);
            }
            let classes = enumerate_classes(&es)?;
            let mut r = Report::new("enumerate");
            r.field("degree", es.degree).field("circles", es.circles);
            r.field("connected_only", es.connected_only).field("self_loops", es.allow_self_loops);
            r.field("classes", classes.len());
            r.field("zero_classes", classes.iter().filter(|c| c.zero).count());
            let codes: Vec<String> = classes.iter().map(|c| c.rep.to_string()).collect();
            r.list("representatives", &codes);
            if *diagrams {
                r.block("diagrams", &format_diagrams(classes.iter().map(|c| &c.diagram)));
            }
            Ok(r)
        }
        Command::Rank { space, integral, export_matrix } => {
            let q = build_space(&space.flagged_spec(max_classes)?)?;
            let mut r = Report::new("rank");
            let rep = q.report();
            r.field("degree", rep.degree).field("circles", rep.circles);
            r.field("relations_used", &rep.relations_used);
            r.field("connected_only", rep.connected_only).field("self_loops", rep.self_loops);
            if let Some(p) = &rep.leg_profile {
                r.list("leg_profile", p);
            }
            r.field("classes", rep.classes).field("zero_classes", rep.zero_classes);
            r.field("relations", rep.relations).field("rank", rep.rank);
            r.list("basis", &rep.basis);
            if *integral {
                let factors: Vec<String> = q.integral_factors()?.iter().map(ToString::to_string).collect();
                r.list("invariant_factors", &factors);
            }
            if let Some(p) = export_matrix {
                fs::write(p, q.export_triplets())
                    .map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", p.display())))?;
                r.field("matrix_file", p.display().to_string());
            }
            Ok(r)
        }
        Command::Reduce { input, space } => {
            let ds = parse_diagrams(&read_input(input)?)?;
            let first = ds.first().ok_or_else(|| Error::InvalidArgument("no diagram in input".into()))?;
            let degree = space.degree.unwrap_or(first.degree());
            let circles = if space.circles > 0 { space.circles } else { first.num_circles() };
            let q = build_space(&space.spec(degree, circles, max_classes)?)?;
            let mut r = Report::new("reduce");
            r.field("degree", degree).field("circles", circles).field("rank", q.rank());
            r.list("basis", &q.report().basis);
            let mut coords = Vec::new();
            for d in &ds {
                let v = q.reduce(&FormalSum::from_diagram(d))?;
                coords.push(v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "));
            }
            r.list("coordinates", &coords);
            Ok(r)
        }
        Command::VerifySpanning { n } => {
            let (span, rank, count) = spanning(*n, max_classes)?;
            let mut r = Report::new("verify-spanning");
            r.field("result", if span == rank { "PASS" } else { "FAIL" });
            r.field("n", n).field("degree", n - 1).field("generators", count);
            r.field("span_rank", span).field("space_rank", rank);
            Ok(r)
        }
        Command::Glue { n, sigma, tau, left, right } => {
            let tree = |file: &Option<String>, s: &[usize]| -> Result<TreeDiagram> {
                match file {
                    Some(p) => TreeDiagram::new(parse_diagram(&read_input(p)?)?),
                    None => {
                        let n = n.ok_or_else(|| Error::InvalidArgument("--n is required without tree files".into()))?;
                        generators::t_sigma(n, &or_identity(s, n))
                    }
                }
            };
            let g = generators::glue_trees(&tree(left, sigma)?, &tree(right, tau)?)?;
            Ok(diagram_report("glue", &g))
        }
        Command::Insert { input, place } => {
            let gamma = closed_input(input)?;
            let spec = InsertionSpec::new(place.iter().map(|p| parse_placement(p)).collect::<Result<_>>()?);
            Ok(diagram_report("insert", &generators::insert_circles(&gamma, &spec)?))
        }
        Command::CheckInsertion { input, spec, all } => {
            let gamma = closed_input(input)?;
            let mut specs: Vec<InsertionSpec> = spec.iter().map(|s| parse_spec(s)).collect::<Result<_>>()?;
            if *all {
                specs.extend(generators::insertion_specs(&gamma));
            }
            for s in &specs {
                generators::insert_circles(&gamma, s)?;
            }
            let q = build_space(&generators::insertion_space_spec(&gamma).ceiling(max_classes))?;
            let classes = generators::insertion_classes(&q, &gamma, &specs)?;
            let mut distinct: Vec<&Vec<_>> = classes.iter().collect();
            distinct.sort();
            distinct.dedup();
            let mut r = Report::new("check-insertion");
            r.field("result", if distinct.len() <= 1 { "PASS" } else { "FAIL" });
            r.field("specs", specs.len()).field("distinct_classes", distinct.len());
            r.field("space_rank", q.rank());
            if let Some(c) = distinct.first() {
                r.field("class", c.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "));
            }
            Ok(r)
        }
        Command::Gamma { n, sigma } => {
            Ok(diagram_report("gamma", &generators::gamma_sigma(*n, &or_identity(sigma, *n))?))
        }
        Command::Tsigma { n, sigma } => {
            let t = generators::t_sigma(*n, &or_identity(sigma, *n))?;
            let mut r = diagram_report("tsigma", t.diagram());
            if let Some((a, b)) = t.ends() {
                r.list("ends", &[format!("l{a}"), format!("l{b}")]);
            }
            Ok(r)
        }
        Command::Theta { n, reduce } => {
            let t = generators::theta_n(*n)?;
            let mut r = diagram_report("theta", &t);
            if *reduce {
                let q = build_space(&SpaceSpec::connected_closed(*n).ceiling(max_classes))?;
                let v = q.reduce(&FormalSum::from_diagram(&t))?;
                r.list("basis", &q.report().basis);
                r.field("coordinates", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "));
            }
            Ok(r)
        }
        Command::Linearize { input, end1, end2, verify } => {
            let d = parse_diagram(&read_input(input)?)?;
            let out = generators::linearize(&d, *end1, *end2)?;
            let mut r = Report::new("linearize");
            r.field("terms", out.len());
            r.field("sum", out.to_string());
            let mut terms = Vec::new();
            for (code, _) in out.iter() {
                terms.push(code.decode()?);
            }
            r.block("diagrams", &format_diagrams(&terms));
            if *verify {
                let spec = SpaceSpec::on_circles(d.degree(), d.num_circles())
                    .selector(RelationSelector::AsIhx)
                    .connected(true)
                    .legs(d.leg_profile())
                    .ceiling(max_classes);
                let q = build_space(&spec)?;
                let ok = q.reduces_to_zero(&(FormalSum::from_diagram(&d) - out))?;
                r.field("identity", if ok { "PASS" } else { "FAIL" });
            }
            Ok(r)
        }
        Command::Bound { which } => bound_report(which),
        Command::OracleCompare { degree } => {
            if *degree > MAX_ORACLE_DEGREE {
                return Err(Error::InvalidArgument(format!("the oracle stops at degree {MAX_ORACLE_DEGREE}")));
            }
            let mut r = Report::new("oracle-compare");
            let mut rows = Vec::new();
            let mut lines = Vec::new();
            let mut all = true;
            for o in oracle_reports(*degree)? {
                let (loops, conn) = (o.self_loops, o.connected_only);
                let q = build_space(&SpaceSpec::closed(*degree).connected(conn).self_loops(loops).ceiling(max_classes))?;
                let ok = o.rank == q.rank() && o.classes == q.classes().len();
                all &= ok;
                lines.push(format!(
                    "self_loops={loops} connected={conn} oracle_classes={} classes={} oracle_rank={} rank={} {}",
                    o.classes,
                    q.classes().len(),
                    o.rank,
                    q.rank(),
                    if ok { "ok" } else { "MISMATCH" }
                ));
                rows.push(json!({"oracle": o, "classes": q.classes().len(), "rank": q.rank(), "agree": ok}));
            }
            r.field("result", if all { "PASS" } else { "FAIL" }).field("degree", degree);
            r.list("cases", &lines);
            r.data("details", &format!("{} cases", rows.len()), Value::Array(rows));
            Ok(r)
        }
    }
}

/// Span rank of the Γ_σ, the rank of the connected closed space of degree
/// `n - 1`, and the number of generators.
pub fn spanning(n: usize, max_classes: usize) -> Result<(usize, usize, usize)> {
    if n < 2 {
        return Err(Error::DegreeTooSmall { n, min: 2 });
    }
    let q = build_space(&SpaceSpec::connected_closed(n - 1).ceiling(max_classes))?;
    let gens = generators::permutations(n - 1)
        .iter()
        .map(|s| Ok(FormalSum::from_diagram(&generators::gamma_sigma(n, s)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok((q.subspace_rank(&gens)?, q.rank(), gens.len()))
}

fn diagram_report(command: &str, d: &Diagram) -> Report {
    let mut r = Report::new(command);
    r.field("degree", d.degree()).field("vertices", d.num_vertices()).field("legs", d.num_legs());
    r.field("code", crate::canon::canonical_form(d).to_string());
    r.block("diagram", &format_diagram(d));
    r
}

fn guarantee_report(r: &mut Report, g: &bounds::EquivalenceGuarantee) {
    r.field("guarantee", g).field("level", g.level).field("provenance", &g.provenance);
    r.list("notes", &g.notes);
}

fn bound_report(which: &BoundCommand) -> Result<Report> {
    let mut r = Report::new("bound");
    match which {
        BoundCommand::Table { n, l } => guarantee_report(&mut r, &bounds::bound_special_leaves(*n, *l)?),
        BoundCommand::Brunnian { n, framings } => {
            guarantee_report(&mut r, &bounds::bound_brunnian_surgery(*n, framings)?)
        }
        BoundCommand::LinkHomotopy { n, homology_sphere } => {
            guarantee_report(&mut r, &bounds::bound_link_homotopic(*n, *homology_sphere)?)
        }
        BoundCommand::OneSpecial { n, m } => guarantee_report(&mut r, &bounds::bound_one_special(*n, *m)?),
        BoundCommand::LinearSpecial { n, refined } => {
            let b = bounds::bound_linear_all_minus_one(*n, *refined)?;
            guarantee_report(&mut r, &b.guarantee);
            r.field("target_code", crate::canon::canonical_form(&b.target).to_string());
            r.block("target", &format_diagram(&b.target));
        }
        BoundCommand::Crossing { k1, k2, site1, site2 } => {
            let (s1, s2) = (parse_site(site1)?, parse_site(site2)?);
            let res = bounds::crossing_change_residual(&AbstractTree::generic(*k1), &AbstractTree::generic(*k2), s1, s2)?;
            r.field("edges_involved", res.edges_involved);
            r.field("plain", &res.plain).field("refined", &res.refined);
            r.field("residual_degree", res.residual.degree);
            r.field("residual_leaves", res.residual.leaves.len());
            r.data("shape", &format!("{:?}", res.shape), json!(res.shape));
        }
    }
    Ok(r)
}
