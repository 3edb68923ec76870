//! Command-line front end. Every verb reads JSON files and prints one JSON
//! document (DOT for `dot`) on stdout.
//!
//! Exit codes: 0 on success (a property that fails to hold is still a
//! success), 1 on a domain error (with `{"error": ...}` on stdout), 2 on
//! usage errors and unreadable or malformed input.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::axioms;
use crate::closures::{self, ClosureResult, Step, TraceStep};
use crate::dot;
use crate::error::Error;
use crate::fraisse;
use crate::io::{parse, ClosureDoc, MapDoc, OrderDoc, RelationDoc, RoadDoc};
use crate::orderlat::{self, BoundWitness, FiniteLattice};
use crate::relation::{Carrier, RelMap, TernaryRelation};
use crate::report::Axiom;
use crate::rlattice::{self, Cone, RelationFilter, DEFAULT_MAX_CARRIER};
use crate::roads;

/// Environment variable overriding the enumeration guard.
pub const MAX_CARRIER_VAR: &str = "BETWEENNESS_MAX_CARRIER";

#[derive(Debug, Parser)]
#[command(name = "betweenness", version, about = "Finite betweenness relations and lattices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CloseOp {
    L12,
    L3,
    L4,
    L,
    AntisymStep,
    Antisym,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check R1–R4 on a relation, or validate a road system.
    Validate {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Decide one axiom (R1, R2, R3, R4, ANTISYM, DISJ).
    Check {
        #[arg(long)]
        axiom: Axiom,
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Apply a closure operator.
    Close {
        #[arg(long, value_enum)]
        op: CloseOp,
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Meet (intersection) of two R-relations.
    Meet {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "in2")]
        input2: PathBuf,
    },
    /// Join (closure of the union) of two R-relations.
    Join {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "in2")]
        input2: PathBuf,
    },
    /// Pull an R-relation back along a map whose keys form the source carrier.
    Pullback {
        #[arg(long)]
        map: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Initial lift of a cone `{"elements", "legs": [{"map", "target"}]}`.
    Lift {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Enumerate relations on `size` numbered points.
    Enumerate {
        #[arg(long)]
        size: usize,
        #[arg(long, default_value = "ALL_R")]
        filter: RelationFilter,
    },
    /// Betweenness of a lattice.
    FromLattice {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Order recovered from a relation and a base point.
    RecoverOrder {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        beta: String,
    },
    /// Every bound witness of a relation.
    DetectBounds {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Classify a relation (or a lattice's betweenness) from betweenness alone.
    Classify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        beta: Option<String>,
    },
    /// Classify a lattice order-theoretically.
    ClassifyOracle {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Distributive reflection of a lattice.
    Reflect {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Dedekind–MacNeille completion of a poset.
    Dm {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Betweenness preservation report for the completion of a poset.
    DmReport {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// All strong embeddings of one relation into another.
    Embed {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "in2")]
        input2: PathBuf,
    },
    /// Joint embedding (disjoint union).
    Jep {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "in2")]
        input2: PathBuf,
    },
    /// Free amalgam of two relations over a common one. Without maps, the
    /// base is included by label.
    Amalgamate {
        #[arg(long)]
        over: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "in2")]
        input2: PathBuf,
        #[arg(long)]
        map: Option<PathBuf>,
        #[arg(long)]
        map2: Option<PathBuf>,
    },
    /// Finite approximation chain of the Fraïssé limit.
    Chain {
        #[arg(long, default_value_t = 3)]
        size_bound: usize,
        #[arg(long, default_value_t = 2)]
        rounds: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Extension-property audit.
    Audit {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 3)]
        k: usize,
    },
    /// One-step back-and-forth check for small partial isomorphisms.
    Homogeneity {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
    /// Graphviz export: Hasse diagram for orders, interval graph for relations.
    Dot {
        #[arg(long = "in")]
        input: PathBuf,
        /// Highlight the interval `[a,b]`, given as `a,b`.
        #[arg(long)]
        pair: Option<String>,
    },
}

/// Failure modes, mapped to exit codes.
enum Failure {
    Domain(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

enum Output {
    Json(Value),
    Text(String),
}

type Outcome = std::result::Result<Output, Failure>;

fn read(path: &Path) -> std::result::Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn value(path: &Path) -> std::result::Result<Value, Failure> {
    parse(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn doc<T: for<'de> serde::Deserialize<'de>>(path: &Path) -> std::result::Result<T, Failure> {
    parse(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn relation(path: &Path) -> std::result::Result<TernaryRelation, Failure> {
    Ok(doc::<RelationDoc>(path)?.to_relation()?)
}

fn lattice(path: &Path) -> std::result::Result<FiniteLattice, Failure> {
    Ok(doc::<OrderDoc>(path)?.to_lattice()?)
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("output types serialise")
}

fn rel_json(rel: &TernaryRelation) -> Value {
    to_json(&RelationDoc::from_relation(rel))
}

fn max_carrier() -> std::result::Result<usize, Failure> {
    match std::env::var(MAX_CARRIER_VAR) {
        Ok(v) => v
            .parse()
            .map_err(|_| Failure::Usage(format!("{MAX_CARRIER_VAR} must be a number, got `{v}`"))),
        Err(_) => Ok(DEFAULT_MAX_CARRIER),
    }
}

fn closure_output(res: &ClosureResult) -> Output {
    Output::Json(to_json(&ClosureDoc::from_result(res)))
}

fn plain_closure(input: &TernaryRelation, out: TernaryRelation, step: Step) -> ClosureResult {
    let identity = out == *input;
    let trace = vec![TraceStep {
        step,
        carrier: out.size(),
        triples: out.len(),
        identity,
    }];
    ClosureResult {
        quotient: RelMap::identity(out.carrier()),
        relation: out,
        trace,
    }
}

fn close(op: CloseOp, rel: &TernaryRelation) -> std::result::Result<ClosureResult, Failure> {
    Ok(match op {
        CloseOp::L12 => plain_closure(rel, closures::l12(rel), Step::L12),
        CloseOp::L4 => plain_closure(rel, closures::l4(rel), Step::L4),
        CloseOp::L3 => closures::l3(rel),
        CloseOp::L => closures::r_closure(rel),
        CloseOp::AntisymStep => closures::antisym_step(rel),
        CloseOp::Antisym => closures::antisymmetric_closure(rel)?,
    })
}

fn map_in(path: &Path, target: &Carrier) -> std::result::Result<RelMap, Failure> {
    Ok(doc::<MapDoc>(path)?.to_map(target)?)
}

fn execute(command: Command) -> Outcome {
    use Command::*;
    let json = |v: Value| Ok(Output::Json(v));
    match command {
        Validate { input } => {
            let v = value(&input)?;
            if v.get("roads").is_some() {
                let rs = doc::<RoadDoc>(&input)?.to_roads()?;
                let report = roads::validate_road_system(&rs);
                let rel = if report.holds {
                    Some(rel_json(&roads::relation_from_roads(&rs)?))
                } else {
                    None
                };
                json(json!({"valid": report.holds, "witnesses": report.witnesses, "relation": rel}))
            } else {
                let rel = relation(&input)?;
                let reports = axioms::r_reports(&rel);
                json(json!({
                    "r_relation": reports.iter().all(|r| r.holds),
                    "reports": reports,
                }))
            }
        }
        Check { axiom, input } => json(to_json(&axioms::check_axiom(&relation(&input)?, axiom))),
        Close { op, input } => Ok(closure_output(&close(op, &relation(&input)?)?)),
        Meet { input, input2 } => json(rel_json(&rlattice::meet(&[relation(&input)?, relation(&input2)?])?)),
        Join { input, input2 } => json(rel_json(&rlattice::join(&[relation(&input)?, relation(&input2)?])?)),
        Pullback { map, input } => {
            let target = relation(&input)?;
            let f = map_in(&map, target.carrier())?;
            json(rel_json(&rlattice::pullback(&f, &target)?))
        }
        Lift { input } => {
            #[derive(serde::Deserialize)]
            struct Leg {
                map: BTreeMap<String, String>,
                target: RelationDoc,
            }
            #[derive(serde::Deserialize)]
            struct ConeDoc {
                elements: Vec<String>,
                legs: Vec<Leg>,
            }
            let cone: ConeDoc = doc(&input)?;
            let apex = Carrier::new(cone.elements)?;
            let legs = cone
                .legs
                .into_iter()
                .map(|leg| {
                    let target = leg.target.to_relation()?;
                    let f = RelMap::from_labels(&apex, target.carrier(), &leg.map)?;
                    Ok((f, target))
                })
                .collect::<crate::error::Result<Vec<_>>>()?;
            json(rel_json(&rlattice::initial_lift(&Cone { apex, legs })?))
        }
        Enumerate { size, filter } => {
            let rels = rlattice::enumerate_relations(&Carrier::numbered(size), filter, max_carrier()?)?;
            json(json!({
                "count": rels.len(),
                "relations": rels.iter().map(rel_json).collect::<Vec<_>>(),
            }))
        }
        FromLattice { input } => json(rel_json(&orderlat::betweenness_from_lattice(&lattice(&input)?))),
        RecoverOrder { input, beta } => {
            let order = orderlat::recover_order(&relation(&input)?, &beta)?;
            json(to_json(&OrderDoc::from_poset(&order)))
        }
        DetectBounds { input } => json(to_json(&orderlat::detect_bounds(&relation(&input)?))),
        Classify { input, beta } => {
            let v = value(&input)?;
            let (rel, default) = if v.get("leq").is_some() {
                let l = lattice(&input)?;
                let w = BoundWitness::new(l.label(l.bottom()), l.label(l.top()));
                (orderlat::betweenness_from_lattice(&l), Some(w))
            } else {
                (relation(&input)?, None)
            };
            let witness = match (beta, default) {
                (None, Some(w)) => w,
                (beta, _) => {
                    let bounds = orderlat::detect_bounds(&rel);
                    let found = bounds
                        .into_iter()
                        .find(|w| beta.as_ref().is_none_or(|b| &w.beta == b));
                    found.ok_or_else(|| Error::InvalidBoundWitness {
                        alpha: "?".into(),
                        beta: beta.clone().unwrap_or_else(|| "?".into()),
                        reason: "no bound witness with this beta".into(),
                    })?
                }
            };
            let report = orderlat::classify_via_betweenness(&rel, &witness)?;
            json(json!({"witness": witness, "report": report}))
        }
        ClassifyOracle { input } => json(to_json(&orderlat::classify_direct(&lattice(&input)?))),
        Reflect { input } => {
            let r = orderlat::distributive_reflection(&lattice(&input)?)?;
            json(json!({
                "lattice": OrderDoc::from_poset(r.lattice.poset()),
                "map": r.map.label_map(),
                "glued": r.closure.glued(),
                "trace": r.closure.trace,
            }))
        }
        Dm { input } => {
            let p = doc::<OrderDoc>(&input)?.to_poset()?;
            let c = orderlat::dm_completion(&p)?;
            let cuts: BTreeMap<&str, &Vec<String>> = c.lattice.carrier().iter().zip(&c.cuts).collect();
            json(json!({
                "lattice": OrderDoc::from_poset(c.lattice.poset()),
                "embedding": c.embedding.label_map(),
                "cuts": cuts,
                "embedding_report": orderlat::dm_embedding_report(&p, &c),
            }))
        }
        DmReport { input } => {
            let p = doc::<OrderDoc>(&input)?.to_poset()?;
            json(to_json(&orderlat::dm_betweenness_report(&p)?))
        }
        Embed { input, input2 } => {
            let embeddings = fraisse::find_embeddings(&relation(&input)?, &relation(&input2)?);
            json(json!({"count": embeddings.len(), "embeddings": embeddings}))
        }
        Jep { input, input2 } => json(to_json(&fraisse::jep(&relation(&input)?, &relation(&input2)?)?)),
        Amalgamate {
            over,
            input,
            input2,
            map,
            map2,
        } => {
            let (a, b1, b2) = (relation(&over)?, relation(&input)?, relation(&input2)?);
            let leg = |m: Option<PathBuf>, b: &TernaryRelation| match m {
                Some(path) => {
                    let f = map_in(&path, b.carrier())?;
                    a.carrier().check_same(f.source(), "map source")?;
                    Ok::<_, Failure>(f)
                }
                None => Ok(RelMap::inclusion(a.carrier(), b.carrier())?),
            };
            let f1 = leg(map, &b1)?;
            let f2 = leg(map2, &b2)?;
            json(to_json(&fraisse::amalgamate(&a, &b1, &b2, &f1, &f2)?))
        }
        Chain {
            size_bound,
            rounds,
            seed,
        } => json(to_json(&fraisse::fraisse_chain(size_bound, rounds, seed)?)),
        Audit { input, k } => json(to_json(&fraisse::audit_extension_property(&relation(&input)?, k)?)),
        Homogeneity { input, k } => json(to_json(&fraisse::check_partial_homogeneity(&relation(&input)?, k)?)),
        Dot { input, pair } => {
            let v = value(&input)?;
            if v.get("leq").is_some() {
                Ok(Output::Text(dot::poset_dot(&doc::<OrderDoc>(&input)?.to_poset()?)))
            } else {
                let rel = relation(&input)?;
                let pair = match &pair {
                    Some(p) => Some(
                        p.split_once(',')
                            .ok_or_else(|| Failure::Usage(format!("--pair expects `a,b`, got `{p}`")))?,
                    ),
                    None => None,
                };
                Ok(Output::Text(dot::relation_dot(&rel, pair)?))
            }
        }
    }
}

fn emit(text: &str, out: Option<&Path>) -> i32 {
    match out {
        Some(path) => match std::fs::write(path, text) {
            Ok(()) => 0,
            Err(e) => {
                eprintln!("cannot write {}: {e}", path.display());
                2
            }
        },
        None => {
            print!("{text}");
            0
        }
    }
}

/// Runs the command line `argv` (program name first) and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let out = cli.out.clone();
    match execute(cli.command) {
        Ok(Output::Json(v)) => {
            let text = serde_json::to_string_pretty(&v).expect("values serialise") + "\n";
            emit(&text, out.as_deref())
        }
        Ok(Output::Text(t)) => emit(&t, out.as_deref()),
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            let text = serde_json::to_string_pretty(&json!({"error": e.to_string()})).expect("string") + "\n";
            let code = emit(&text, out.as_deref());
            if code == 0 {
                1
            } else {
                code
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    }
}
