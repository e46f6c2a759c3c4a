use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use grpd::bracketing::{enumerate_bracketings, parse_bracketing};
use grpd::catalog::Catalog;
use grpd::clone::{
    binary_clone_part, binary_term_op, f2_table, find_relational_witness, minimality_proxy_for,
};
use grpd::clone::{MinimalityVerdict, RelationPayload};
use grpd::harness::{verify_paper, Status};
use grpd::iso::find_isomorphism;
use grpd::nonassoc::{check_sh_factor_property, ns_index};
use grpd::partition::{congruences, quotient, Partition};
use grpd::search::{cmd_search, SearchSpec};
use grpd::spectrum::{spectrum, DEFAULT_BUDGET};
use grpd::term::{parse_identity, parse_term, Scheme};
use grpd::variety::Variety;
use grpd::{Error, Groupoid};

const SCHEMA_VERSION: u32 = 1;

/// Analyses finite groupoids given as `.gpd` tables. Wherever a FILE is
/// expected, `@NAME` names a catalog entry instead.
#[derive(Parser)]
#[command(name = "grpd", version)]
struct Cli {
    /// Emit a single JSON document on standard output.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for parallel scans (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Largest bracketing size for spectrum computations.
    #[arg(long, global = true, default_value_t = 7)]
    max_n: usize,
    /// Table entries evaluated per size before a spectrum computation stops.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Associative spectrum s(1), ..., s(max-n).
    Spectrum {
        file: String,
        /// List the bracketings in each class.
        #[arg(long)]
        classes: bool,
    },
    /// Index of nonassociativity.
    Ns {
        file: String,
        /// List the nonassociative triples.
        #[arg(long)]
        triples: bool,
    },
    /// Type of the unique nonassociative triple; fails unless exactly one exists.
    ShType { file: String },
    /// Binary part of the clone generated by the operation.
    Clone {
        file: String,
        /// Print the two-generated free algebra as a table.
        #[arg(long)]
        f2: bool,
        /// Run the binary minimality check; fails when the clone is not minimal.
        #[arg(long)]
        proxy: bool,
        /// Search for a relation preserved by TERM but not by the product.
        #[arg(long, value_name = "TERM")]
        witness: Option<String>,
    },
    /// Membership in a named variety, e.g. B, Cp:3, D, B^d.
    Variety { file: String, name: String },
    /// Whether an identity such as "(x (y z)) = ((x y) z)" holds.
    Check { file: String, identity: String },
    /// Built-in groupoids.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Exhaustive scan over tables of a given size.
    Search {
        #[arg(long)]
        size: usize,
        /// Scan every table instead of only idempotent ones.
        #[arg(long)]
        all_tables: bool,
        /// Scheme identity to filter by, as SCHEME:N (repeatable).
        #[arg(long, value_name = "SCHEME:N", value_parser = parse_scheme_arg)]
        satisfy: Vec<(Scheme, usize)>,
        /// Variety each surviving table must belong to.
        #[arg(long, default_value = "semigroup")]
        check: String,
    },
    /// Recomputes every stored claim about the catalog groupoids.
    VerifyPaper {
        /// Skip slow claims.
        #[arg(long)]
        fast: bool,
    },
    /// The dual table, x*y = y.x.
    Dual { file: String },
    /// All congruences, finest first.
    Congruences { file: String },
    /// Quotient by a partition written as blocks of names, e.g. "a | b c".
    Quotient { file: String, partition: String },
    /// Isomorphism between two groupoids.
    Iso {
        first: String,
        second: String,
        /// Also accept an isomorphism onto the dual of the second.
        #[arg(long)]
        allow_dual: bool,
    },
    /// Bracketings of size N in enumeration order.
    Bracketings { n: usize },
    /// Left depth of each variable of a bracketing such as "((x1 x2) x3)".
    LeftDepth { bracketing: String },
    /// Evaluates a term under bindings such as x=a y=b.
    Eval {
        file: String,
        term: String,
        bindings: Vec<String>,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    /// Print an entry as a .gpd table.
    Show {
        name: String,
    },
    /// Write every entry to DIR/NAME.gpd.
    Export {
        dir: PathBuf,
    },
}

/// Result of a command: `ok` selects exit code 0 or 1.
struct Report {
    ok: bool,
    text: String,
    data: Value,
}

impl Report {
    fn info(text: String, data: Value) -> Self {
        Report {
            ok: true,
            text,
            data,
        }
    }

    fn verdict(ok: bool, text: String, data: Value) -> Self {
        Report { ok, text, data }
    }
}

fn parse_scheme_arg(s: &str) -> Result<(Scheme, usize), String> {
    let (scheme, n) = s.split_once(':').ok_or("expected SCHEME:N")?;
    let scheme = scheme.parse::<Scheme>().map_err(|e| e.to_string())?;
    let n = n.parse::<usize>().map_err(|e| e.to_string())?;
    Ok((scheme, n))
}

fn load(spec: &str) -> Result<Groupoid, Error> {
    match spec.strip_prefix('@') {
        Some(name) => Catalog::builtin().groupoid(name),
        None => {
            let text = fs::read_to_string(spec)
                .map_err(|e| Error::Invalid(format!("cannot read {spec}: {e}")))?;
            Groupoid::parse_gpd(&text)
        }
    }
}

fn names(g: &Groupoid, xs: &[usize]) -> Vec<String> {
    xs.iter().map(|&x| g.name(x).to_owned()).collect()
}

fn run(cli: &Cli) -> Result<Report, Error> {
    Ok(match &cli.command {
        Command::Spectrum { file, classes } => {
            let g = load(file)?;
            let r = spectrum(&g, cli.max_n, cli.budget)?;
            let mut text = String::new();
            let mut class_names = Vec::new();
            for (i, &s) in r.values.iter().enumerate() {
                let n = i + 1;
                text.push_str(&format!("s({n}) = {s}\n"));
                if *classes {
                    let all = enumerate_bracketings(n)?;
                    let named: Vec<Vec<String>> = r.classes[i]
                        .iter()
                        .map(|c| c.iter().map(|&b| all[b].to_string()).collect())
                        .collect();
                    for c in &named {
                        text.push_str(&format!("  {{{}}}\n", c.join(", ")));
                    }
                    class_names.push(named);
                }
            }
            let mut data = json!({ "values": r.values });
            if *classes {
                data["classes"] = json!(class_names);
            }
            Report::info(text, data)
        }
        Command::Ns { file, triples } => {
            let g = load(file)?;
            let r = ns_index(&g);
            let named: Vec<Vec<String>> = r.triples.iter().map(|t| names(&g, t)).collect();
            let mut text = format!("ns = {}\n", r.ns_count);
            if *triples {
                for t in &named {
                    text.push_str(&format!("  ({})\n", t.join(",")));
                }
            }
            let mut data = json!({ "nsCount": r.ns_count });
            if *triples {
                data["triples"] = json!(named);
            }
            Report::info(text, data)
        }
        Command::ShType { file } => {
            let g = load(file)?;
            let r = ns_index(&g);
            match (r.sh_type, r.minimal_sh) {
                (Some(t), Some(minimal)) => {
                    let triple = names(&g, &r.triples[0]);
                    let factor = check_sh_factor_property(&g)?;
                    Report::info(
                        format!(
                            "type {t}, triple ({}), {}minimal, factor property {}\n",
                            triple.join(","),
                            if minimal { "" } else { "not " },
                            if factor { "holds" } else { "fails" }
                        ),
                        json!({ "shType": t, "triple": triple, "minimalSh": minimal, "factorProperty": factor }),
                    )
                }
                _ => Report::verdict(
                    false,
                    format!("not an SH groupoid: ns = {}\n", r.ns_count),
                    json!({ "shType": null, "nsCount": r.ns_count }),
                ),
            }
        }
        Command::Clone {
            file,
            f2,
            proxy,
            witness,
        } => clone_report(&load(file)?, *f2, *proxy, witness.as_deref())?,
        Command::Variety { file, name } => {
            let g = load(file)?;
            let v: Variety = name.parse()?;
            match v.violation(&g)? {
                None => Report::verdict(
                    true,
                    format!("in {v}\n"),
                    json!({ "variety": v.to_string(), "member": true }),
                ),
                Some(w) => {
                    let at: Vec<String> = w
                        .vars
                        .iter()
                        .zip(names(&g, &w.assignment))
                        .map(|(var, val)| format!("{var}={val}"))
                        .collect();
                    Report::verdict(
                        false,
                        format!("not in {v}: {} fails at {}\n", w.identity, at.join(", ")),
                        json!({
                            "variety": v.to_string(),
                            "member": false,
                            "identity": w.identity,
                            "vars": w.vars,
                            "assignment": names(&g, &w.assignment),
                        }),
                    )
                }
            }
        }
        Command::Check { file, identity } => {
            let g = load(file)?;
            let id = parse_identity(identity)?;
            match id.counterexample(&g)? {
                None => Report::verdict(
                    true,
                    format!("holds: {id}\n"),
                    json!({ "identity": id.to_string(), "holds": true }),
                ),
                Some(a) => {
                    let values = names(&g, &a);
                    Report::verdict(
                        false,
                        format!("fails: {id}\nwitness {}\n", values.join(",")),
                        json!({ "identity": id.to_string(), "holds": false, "vars": id.vars(), "witness": values }),
                    )
                }
            }
        }
        Command::Catalog { action } => catalog_report(action)?,
        Command::Search {
            size,
            all_tables,
            satisfy,
            check,
        } => {
            let spec = SearchSpec {
                size: *size,
                idempotent_only: !all_tables,
                satisfy: satisfy.clone(),
                check: check.parse()?,
            };
            let s = cmd_search(&spec)?;
            let mut text = format!(
                "{} tables, {} satisfying, {} outside {}\n",
                s.tables, s.satisfying, s.violations, spec.check
            );
            if let Some(w) = &s.first_witness {
                text.push_str("first witness:\n");
                text.push_str(&w.to_gpd());
            }
            Report::verdict(s.violations == 0, text, json!(s))
        }
        Command::VerifyPaper { fast } => {
            let results = verify_paper(&Catalog::builtin(), *fast);
            let failed = results.iter().filter(|r| r.status == Status::Fail).count();
            let mut text = grpd::render_results(&results);
            text.push_str(&format!("{} claims, {failed} failed\n", results.len()));
            Report::verdict(
                failed == 0,
                text,
                json!({ "claims": results, "failed": failed }),
            )
        }
        Command::Dual { file } => {
            let d = load(file)?.dual();
            Report::info(d.to_gpd(), json!({ "groupoid": d }))
        }
        Command::Congruences { file } => {
            let g = load(file)?;
            let cs = congruences(&g)?;
            let shown: Vec<String> = cs.iter().map(|p| p.display_with(&g).to_string()).collect();
            let blocks: Vec<Vec<Vec<String>>> = cs
                .iter()
                .map(|p| p.blocks().iter().map(|b| names(&g, b)).collect())
                .collect();
            Report::info(shown.join("\n") + "\n", json!({ "congruences": blocks }))
        }
        Command::Quotient { file, partition } => {
            let g = load(file)?;
            let q = quotient(&g, &Partition::parse_named(&g, partition)?)?;
            Report::info(q.to_gpd(), json!({ "groupoid": q }))
        }
        Command::Iso {
            first,
            second,
            allow_dual,
        } => {
            let (g, h) = (load(first)?, load(second)?);
            match find_isomorphism(&g, &h, *allow_dual)? {
                Some(iso) => {
                    let map: Vec<String> = (0..g.order())
                        .map(|x| format!("{}->{}", g.name(x), h.name(iso.map[x])))
                        .collect();
                    Report::verdict(
                        true,
                        format!(
                            "{}isomorphic: {}\n",
                            if iso.dual { "dually " } else { "" },
                            map.join(" ")
                        ),
                        json!({ "isomorphic": true, "dual": iso.dual, "map": names(&h, &iso.map) }),
                    )
                }
                None => Report::verdict(
                    false,
                    "not isomorphic\n".into(),
                    json!({ "isomorphic": false }),
                ),
            }
        }
        Command::Bracketings { n } => {
            let all: Vec<String> = enumerate_bracketings(*n)?
                .iter()
                .map(|b| b.to_string())
                .collect();
            Report::info(all.join("\n") + "\n", json!({ "bracketings": all }))
        }
        Command::LeftDepth { bracketing } => {
            let d = parse_bracketing(bracketing)?.left_depths();
            let shown: Vec<String> = d.iter().map(|x| x.to_string()).collect();
            Report::info(shown.join(" ") + "\n", json!({ "leftDepths": d }))
        }
        Command::Eval {
            file,
            term,
            bindings,
        } => {
            let g = load(file)?;
            let t = parse_term(term)?;
            let mut env = Vec::new();
            for b in bindings {
                let (var, val) = b
                    .split_once('=')
                    .ok_or_else(|| Error::Invalid(format!("binding `{b}` is not VAR=ELEMENT")))?;
                let x = g
                    .index_of(val)
                    .ok_or_else(|| Error::Invalid(format!("unknown element `{val}`")))?;
                env.push((var, x));
            }
            let v = t.evaluate_named(&g, &env)?;
            Report::info(format!("{}\n", g.name(v)), json!({ "value": g.name(v) }))
        }
    })
}

fn clone_report(
    g: &Groupoid,
    f2: bool,
    proxy: bool,
    witness: Option<&str>,
) -> Result<Report, Error> {
    let part = binary_clone_part(g)?;
    let terms = part.names();
    let mut ok = true;
    let mut text = format!("{} binary operations: {}\n", part.len(), terms.join(", "));
    let mut data = json!({ "size": part.len(), "terms": terms });
    if f2 {
        let t = f2_table(g)?;
        text.push_str(&t.to_gpd());
        data["f2"] = json!(t);
    }
    if proxy {
        let verdict = minimality_proxy_for(g, &part)?;
        match &verdict {
            MinimalityVerdict::Passes => text.push_str("binary minimality check passes\n"),
            MinimalityVerdict::FailsWithWitness { ops } => {
                ok = false;
                let failing: Vec<&str> = ops.iter().map(|&i| terms[i].as_str()).collect();
                text.push_str(&format!(
                    "not minimal: the product is not generated by {}\n",
                    failing.join(", ")
                ));
            }
        }
        data["proxy"] = json!(verdict);
    }
    if let Some(term) = witness {
        let op = binary_term_op(g, term)?;
        match find_relational_witness(g, &op, term)? {
            Some(w) => {
                let shown = match &w.relation {
                    RelationPayload::Partition(p) => format!("partition {}", p.display_with(g)),
                    RelationPayload::Subset(s) => format!("subset {{{}}}", names(g, s).join(",")),
                };
                text.push_str(&format!(
                    "{shown} is preserved by {term} but not by the product\n"
                ));
                data["witness"] = json!(w);
            }
            None => {
                ok = false;
                text.push_str(&format!("no relation separates {term} from the product\n"));
                data["witness"] = Value::Null;
            }
        }
    }
    Ok(Report::verdict(ok, text, data))
}

fn catalog_report(action: &CatalogAction) -> Result<Report, Error> {
    let cat = Catalog::builtin();
    Ok(match action {
        CatalogAction::List => {
            let mut text = String::new();
            let mut rows = Vec::new();
            for e in cat.entries() {
                let tags: Vec<String> = e.tags.iter().map(|t| t.to_string()).collect();
                text.push_str(&format!(
                    "{:<12} {:>2}  {}\n",
                    e.name,
                    e.groupoid.order(),
                    tags.join(" ")
                ));
                rows.push(json!({ "name": e.name, "order": e.groupoid.order(), "tags": tags, "provenance": e.provenance }));
            }
            Report::info(text, json!({ "entries": rows }))
        }
        CatalogAction::Show { name } => {
            let e = cat.get(name)?;
            Report::info(e.groupoid.to_gpd(), json!({ "entry": e }))
        }
        CatalogAction::Export { dir } => {
            fs::create_dir_all(dir).map_err(|e| io_error(dir, e))?;
            let mut written = Vec::new();
            for e in cat.entries() {
                let path = dir.join(format!("{}.gpd", e.name));
                fs::write(&path, e.groupoid.to_gpd()).map_err(|err| io_error(&path, err))?;
                written.push(path.display().to_string());
            }
            Report::info(
                format!("wrote {} files to {}\n", written.len(), dir.display()),
                json!({ "written": written }),
            )
        }
    })
}

fn io_error(path: &Path, e: std::io::Error) -> Error {
    Error::Invalid(format!("{}: {e}", path.display()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("grpd: cannot configure threads: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(report) => {
            if cli.json {
                let mut doc = json!({ "schemaVersion": SCHEMA_VERSION, "ok": report.ok });
                if let (Value::Object(doc), Value::Object(data)) = (&mut doc, report.data) {
                    doc.extend(data);
                }
                println!("{doc}");
            } else {
                print!("{}", report.text);
            }
            ExitCode::from(if report.ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("grpd: {e}");
            if cli.json {
                let mut doc = json!({ "schemaVersion": SCHEMA_VERSION, "error": e.to_string() });
                if let Error::BudgetExceeded { completed, .. } = &e {
                    doc["completed"] = json!(completed);
                }
                println!("{doc}");
            }
            ExitCode::from(2)
        }
    }
}
