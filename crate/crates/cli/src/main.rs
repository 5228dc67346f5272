use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use nilpair::checks;
use nilpair::decompose::{is_indecomposable, Verdict};
use nilpair::document::render_matrix;
use nilpair::oracle::{crosscheck, exhaustively_checked, orbit_partition, CrosscheckOptions};
use nilpair::{
    canonicalize_with, commutant::commutant_report, similar, CanonOptions, Canonical, Error,
    FieldSpec, JordanType, MatrixPair, PairDocument,
};

mod output;

use output::{error_json, exit_code, Outcome};

#[derive(Parser)]
#[command(
    name = "nilpair",
    version,
    about = "Canonical forms of commuting nilpotent matrix pairs up to 4x4"
)]
struct Cli {
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    /// Field for documents without one: Q, GF(p) or GF(p^2).
    #[arg(long, global = true)]
    field: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Canonical form and witness of a pair.
    Canon {
        input: Option<PathBuf>,
        /// Over GF(p), resolve non-split pairs over GF(p^2).
        #[arg(long)]
        allow_extension: bool,
    },
    /// Decide similarity of two pairs: two files, or one JSON array of two documents.
    Similar {
        #[arg(num_args = 0..=2)]
        inputs: Vec<PathBuf>,
    },
    /// Validate a document.
    Check { input: Option<PathBuf> },
    /// Commutant of A and of the pair.
    Commutant { input: Option<PathBuf> },
    /// Decomposability from the pair commutant alone.
    Indecomposable { input: Option<PathBuf> },
    /// All commuting nilpotent pairs over GF(2) or GF(3) and their orbits.
    Enumerate {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        crosscheck: bool,
        /// Allow GF(3) with n = 4 (hours of work).
        #[arg(long)]
        deep: bool,
    },
    /// Supported fields.
    Fields {
        /// Include the GF(p^2) minimal polynomial table.
        #[arg(long)]
        show: bool,
    },
    /// Run the built-in check suites.
    Selftest,
}

fn read_input(path: Option<&PathBuf>) -> Result<String, Error> {
    let mut text = String::new();
    match path {
        Some(p) if p.as_os_str() != "-" => {
            text = std::fs::read_to_string(p)
                .map_err(|e| Error::Document(format!("{}: {e}", p.display())))?;
        }
        _ => {
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| Error::Document(format!("stdin: {e}")))?;
        }
    }
    Ok(text)
}

fn fallback_field(cli: &Cli) -> Result<Option<FieldSpec>, Error> {
    cli.field.as_deref().map(str::parse).transpose()
}

fn read_pair(cli: &Cli, path: Option<&PathBuf>) -> Result<MatrixPair, Error> {
    let doc = PairDocument::from_json(&read_input(path)?)?;
    doc.parse(fallback_field(cli)?)
}

fn canon_view(c: &Canonical, base: FieldSpec) -> Value {
    let pair = nilpair::build_canonical(&c.form, c.spec()).expect("verified form");
    json!({
        "field": c.spec().to_string(),
        "canon_form": c.form,
        "witness": render_matrix(&c.witness),
        "indecomposable_blocks": c.form.blocks().len(),
        "canonical_pair": PairDocument::from_pair(&pair),
        "uniqueness_verified": exhaustively_checked(base, pair.n()),
    })
}

fn cmd_canon(cli: &Cli, input: Option<&PathBuf>, allow_extension: bool) -> Outcome {
    let pair = read_pair(cli, input)?;
    match canonicalize_with(&pair, CanonOptions { allow_extension }) {
        Ok(c) => Ok(canon_view(&c, pair.spec())),
        Err(Error::NotSplit(ns)) if ns.extension.is_some() => {
            let c = ns.extension.as_deref().expect("checked");
            let mut v = canon_view(c, ns.field);
            v["field"] = json!(ns.field.to_string());
            v["extension_field"] = json!(c.spec().to_string());
            v["charpoly"] = json!(ns.charpoly);
            Ok(v)
        }
        Err(e) => Err(e),
    }
}

fn cmd_similar(cli: &Cli, inputs: &[PathBuf]) -> Outcome {
    let field = fallback_field(cli)?;
    let docs: Vec<PairDocument> = if inputs.len() == 2 {
        inputs
            .iter()
            .map(|p| PairDocument::from_json(&read_input(Some(p))?))
            .collect::<Result<_, _>>()?
    } else {
        let text = read_input(inputs.first())?;
        serde_json::from_str(&text).map_err(|e| {
            Error::Document(format!("expected a JSON array of two documents: {e}"))
        })?
    };
    let [d1, d2] = docs.as_slice() else {
        return Err(Error::Document(format!(
            "expected two documents, got {}",
            docs.len()
        )));
    };
    let (p1, p2) = (d1.parse(field)?, d2.parse(field)?);
    Ok(match similar(&p1, &p2)? {
        Some(x) => json!({ "similar": true, "witness": render_matrix(&x) }),
        None => json!({ "similar": false }),
    })
}

fn cmd_check(cli: &Cli, input: Option<&PathBuf>) -> Outcome {
    let pair = read_pair(cli, input)?;
    Ok(json!({
        "valid": true,
        "field": pair.spec().to_string(),
        "n": pair.n(),
        "jordan_type_A": JordanType::from_rank_sequence(pair.a())?,
        "jordan_type_B": JordanType::from_rank_sequence(pair.b())?,
    }))
}

fn cmd_commutant(cli: &Cli, input: Option<&PathBuf>) -> Outcome {
    let pair = read_pair(cli, input)?;
    Ok(serde_json::to_value(commutant_report(&pair)?).expect("serializable"))
}

fn cmd_indecomposable(cli: &Cli, input: Option<&PathBuf>) -> Outcome {
    let pair = read_pair(cli, input)?;
    let field = pair.spec().to_string();
    match is_indecomposable(&pair) {
        Ok(cert) => Ok(match &cert.verdict {
            Verdict::Indecomposable => json!({
                "field": field,
                "indecomposable": true,
                "method": cert.method,
            }),
            Verdict::Decomposable { p, sizes } => json!({
                "field": field,
                "indecomposable": false,
                "method": cert.method,
                "sizes": sizes,
                "witness": render_matrix(p),
            }),
        }),
        Err(Error::Inconclusive(msg)) => Ok(json!({
            "field": field,
            "indecomposable": null,
            "method": "inconclusive",
            "message": msg,
        })),
        Err(e) => Err(e),
    }
}

fn cmd_enumerate(p: u32, n: usize, with_crosscheck: bool, deep: bool) -> Outcome {
    if with_crosscheck {
        let report = crosscheck(p, n, CrosscheckOptions { deep })?;
        return Ok(serde_json::to_value(report).expect("serializable"));
    }
    if p == 3 && n == 4 && !deep {
        return Err(Error::Unsupported("GF(3) with n = 4 needs --deep".into()));
    }
    let table = orbit_partition(p, n)?;
    let codec = table.codec();
    let orbits: Vec<Value> = table
        .orbits()
        .iter()
        .map(|o| json!({ "representative": codec.residue_pair(o.representative), "size": o.size }))
        .collect();
    Ok(json!({
        "field": codec.spec().to_string(),
        "n": n,
        "total_pairs": table.total_pairs(),
        "orbit_count": orbits.len(),
        "orbits": orbits,
    }))
}

fn cmd_fields(show: bool) -> Outcome {
    let mut v = json!({
        "fields": ["Q", "GF(p)", "GF(p^2)"],
        "max_prime": nilpair::field::MAX_PRIME,
        "scalar_format": {
            "Q": "n or n/d",
            "GF(p)": "residue 0..p-1",
            "GF(p^2)": "[a,b] meaning a*t+b",
        },
    });
    if show {
        let table: Vec<Value> = (2..=nilpair::field::MAX_PRIME)
            .filter_map(|p| {
                FieldSpec::minimal_polynomial(p)
                    .ok()
                    .map(|poly| json!({ "p": p, "minimal_polynomial": poly }))
            })
            .collect();
        v["minimal_polynomials"] = json!(table);
    }
    Ok(v)
}

fn cmd_selftest() -> (Value, bool) {
    let q = FieldSpec::Rationals;
    let f2 = FieldSpec::prime(2).expect("prime");
    let f3 = FieldSpec::prime(3).expect("prime");
    let mut suites = vec![
        checks::commutant_dimensions(q, 1),
        checks::commutant_dimensions(f2, 1),
        checks::commutant_dimensions(f3, 1),
        checks::gf2_crosscheck(4).0,
    ];
    for f in [q, f3] {
        suites.extend(checks::formula_fidelity(f, 200, 2));
        suites.push(checks::family_instances(f, 6));
        suites.push(checks::witness_exactness(f, 500, 3));
        suites.push(checks::conjugation_invariance(f, 100, 4));
    }
    suites.push(checks::exhaustive_agreement(2, 3));
    suites.push(checks::random_agreement(200, 5));
    let passed = suites.iter().all(|s| s.passed);
    (json!({ "passed": passed, "suites": suites }), passed)
}

fn emit(v: &Value, pretty: bool) {
    let text = if pretty {
        serde_json::to_string_pretty(v)
    } else {
        serde_json::to_string(v)
    }
    .expect("values serialize");
    // a closed pipe is the reader's choice, not an error
    let _ = writeln!(std::io::stdout(), "{text}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            // help and version
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let v = json!({ "error": { "kind": "usage", "message": e.kind().to_string() } });
            emit(&v, false);
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    let result = match &cli.command {
        Command::Canon {
            input,
            allow_extension,
        } => cmd_canon(&cli, input.as_ref(), *allow_extension),
        Command::Similar { inputs } => cmd_similar(&cli, inputs),
        Command::Check { input } => cmd_check(&cli, input.as_ref()),
        Command::Commutant { input } => cmd_commutant(&cli, input.as_ref()),
        Command::Indecomposable { input } => cmd_indecomposable(&cli, input.as_ref()),
        Command::Enumerate {
            p,
            n,
            crosscheck,
            deep,
        } => cmd_enumerate(*p, *n, *crosscheck, *deep),
        Command::Fields { show } => cmd_fields(*show),
        Command::Selftest => {
            let (v, passed) = cmd_selftest();
            emit(&v, cli.pretty);
            return if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            };
        }
    };
    match result {
        Ok(v) => {
            emit(&v, cli.pretty);
            ExitCode::SUCCESS
        }
        Err(e) => {
            emit(&error_json(&e), cli.pretty);
            ExitCode::from(exit_code(&e))
        }
    }
}
