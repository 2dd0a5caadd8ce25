//! Command-line front end for the regular-paths library.
//!
//! Every subcommand wraps one library operation. Machine output is JSON on
//! stdout with `--json` (byte-identical across identical invocations once
//! `--deterministic` drops the timestamp); otherwise the output is a short
//! human-readable rendering. Exit status 0 means every requested check
//! passed, 1 is a domain error or failed check, 2 a usage error.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use regular_paths::error::Error;
use regular_paths::oracle::{
    enumerate_signatures, verify_census_vs_diagrams, verify_ck3, verify_envelope_theorems,
    verify_pach_toth_construction, EnumerationBudget, Report,
};
use regular_paths::signature::Signature;
use regular_paths::sweep::{
    envelopes, has_valid_matching, is_geometric, render_svg, subsystem_envelope_scan,
    RenderOptions, WiringDiagram,
};
use regular_paths::tableau::{phi_tableau, word_of_regular_tableau, Tableau};
use regular_paths::word::{
    block_string, caret_string, classify_language, factor_blocks, is_well_balanced, parse_word,
    BStarClass, Word, ABCD,
};

#[derive(Parser)]
#[command(
    name = "regpaths",
    version,
    about = "Regular systems of paths: words, signatures, tableaux, sweeps and envelopes"
)]
struct Cli {
    /// Emit machine-readable JSON on stdout
    #[arg(long, global = true)]
    json: bool,

    /// Omit the timestamp field from JSON output
    #[arg(long, global = true)]
    deterministic: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a word (caret syntax allowed) and echo its forms
    Parse {
        /// Word text, e.g. "(a^2b^2)(ba)"
        word: Option<String>,
        /// Read one word per line from a file instead
        #[arg(long = "in", value_name = "PATH")]
        input: Option<PathBuf>,
    },
    /// Check balancedness of a word over {a,b} and list its blocks
    Balanced {
        word: Option<String>,
        #[arg(long = "in", value_name = "PATH")]
        input: Option<PathBuf>,
    },
    /// Factor a word over {a,b,c,d} into balanced blocks and classify it
    Blocks {
        word: Option<String>,
        #[arg(long = "in", value_name = "PATH")]
        input: Option<PathBuf>,
    },
    /// Check the signature parity rules for a word over {x,y,z}
    #[command(name = "signature-check")]
    SignatureCheck {
        signature: Option<String>,
        #[arg(long = "in", value_name = "PATH")]
        input: Option<PathBuf>,
    },
    /// Split a signature with equal letter counts into irreducible factors
    Factor {
        signature: Option<String>,
        #[arg(long = "in", value_name = "PATH")]
        input: Option<PathBuf>,
    },
    /// Compute the associated word over {a,b,c,d} of a signature
    #[command(name = "associated-word")]
    AssociatedWord {
        signature: Option<String>,
        #[arg(long = "in", value_name = "PATH")]
        input: Option<PathBuf>,
    },
    /// Decide extendability of an irreducible signature
    Extendable {
        signature: Option<String>,
        #[arg(long = "in", value_name = "PATH")]
        input: Option<PathBuf>,
    },
    /// Classify an extendable signature as odd, even or mixed
    Classify {
        signature: Option<String>,
        #[arg(long = "in", value_name = "PATH")]
        input: Option<PathBuf>,
    },
    /// Build the canonical tableau of a word on n paths
    Phi {
        #[arg(long)]
        word: String,
        #[arg(long)]
        n: usize,
        /// Additionally check a property of the resulting tableau
        #[arg(long, value_enum)]
        check: Option<PhiCheck>,
    },
    /// Check a tableau (JSON) for regularity and recover its word
    #[command(name = "tableau-check")]
    TableauCheck {
        /// Tableau as JSON: {"ground": [...], "rows": [[...]]}
        tableau: Option<String>,
        #[arg(long = "in", value_name = "PATH")]
        input: Option<PathBuf>,
    },
    /// Decide whether a tableau is realizable as a system of paths
    Geometric {
        #[arg(long, requires = "n")]
        word: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long = "in", value_name = "PATH")]
        input: Option<PathBuf>,
    },
    /// Run the relaxed pairing procedure on a tableau
    Matching {
        #[arg(long, requires = "n")]
        word: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long = "in", value_name = "PATH")]
        input: Option<PathBuf>,
    },
    /// Compute upper/lower envelope membership of a tableau
    Envelopes {
        #[arg(long, requires = "n")]
        word: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long = "in", value_name = "PATH")]
        input: Option<PathBuf>,
    },
    /// Envelope reports for every m-subset restriction
    Subsets {
        #[arg(long)]
        m: usize,
        #[arg(long, requires = "n")]
        word: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long = "in", value_name = "PATH")]
        input: Option<PathBuf>,
    },
    /// Render a wiring diagram as SVG
    Render {
        /// Build the diagram from a word's tableau (requires --n)
        #[arg(long, requires = "n")]
        word: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        /// Read a wiring diagram as JSON: {"n": 3, "events": [1,2]}
        #[arg(long = "in", value_name = "PATH")]
        input: Option<PathBuf>,
        /// Output path; stdout when omitted
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        /// Overwrite an existing output file
        #[arg(long)]
        force: bool,
        /// Label the permutation under each column
        #[arg(long)]
        snapshots: bool,
    },
    /// Enumerate the signature census for k
    Census {
        #[arg(long)]
        k: usize,
        /// Override the candidate budget
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Run the verification suites
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long)]
        budget: Option<u64>,
        /// Largest system size for the envelope suite (default 8)
        #[arg(long)]
        n: Option<usize>,
        /// Crossing bound: census depth and envelope factor bound (default 3)
        #[arg(long)]
        k: Option<usize>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PhiCheck {
    Geometric,
    Regular,
    Pangrammatic,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    #[value(name = "pach-toth")]
    PachToth,
    Envelopes,
    Ck3,
    Census,
    All,
}

/// Samples drawn by `verify --suite envelopes`.
const VERIFY_SAMPLES: usize = 1000;

struct Outcome {
    json: Value,
    human: String,
    passed: bool,
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

type CmdResult = Result<Outcome, Failure>;

/// Runs the CLI against `argv`, writing to the given sinks. Returns the
/// process exit status.
pub fn run<O: Write, E: Write>(
    argv: impl IntoIterator<Item = String>,
    out: &mut O,
    err: &mut E,
) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders its own help/version output on "error"
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    let command_name = command_name(&cli.command);
    match dispatch(&cli.command) {
        Ok(outcome) => {
            if cli.json {
                let mut envelope = serde_json::Map::new();
                envelope.insert("command".into(), json!(command_name));
                if !cli.deterministic {
                    let now = SystemTime::now()
                        .duration_since(UNIX_EPOCH)
                        .map(|d| d.as_secs())
                        .unwrap_or(0);
                    envelope.insert("timestamp".into(), json!(now));
                }
                envelope.insert("passed".into(), json!(outcome.passed));
                envelope.insert("result".into(), outcome.json);
                let text = serde_json::to_string_pretty(&Value::Object(envelope))
                    .expect("JSON rendering cannot fail");
                let _ = writeln!(out, "{text}");
            } else {
                let _ = write!(out, "{}", outcome.human);
            }
            if outcome.passed {
                0
            } else {
                1
            }
        }
        Err(Failure::Usage(message)) => {
            let _ = writeln!(err, "error: {message}");
            2
        }
        Err(Failure::Domain(message)) => {
            let _ = writeln!(err, "error: {message}");
            1
        }
    }
}

fn command_name(command: &Command) -> &'static str {
    match command {
        Command::Parse { .. } => "parse",
        Command::Balanced { .. } => "balanced",
        Command::Blocks { .. } => "blocks",
        Command::SignatureCheck { .. } => "signature-check",
        Command::Factor { .. } => "factor",
        Command::AssociatedWord { .. } => "associated-word",
        Command::Extendable { .. } => "extendable",
        Command::Classify { .. } => "classify",
        Command::Phi { .. } => "phi",
        Command::TableauCheck { .. } => "tableau-check",
        Command::Geometric { .. } => "geometric",
        Command::Matching { .. } => "matching",
        Command::Envelopes { .. } => "envelopes",
        Command::Subsets { .. } => "subsets",
        Command::Render { .. } => "render",
        Command::Census { .. } => "census",
        Command::Verify { .. } => "verify",
    }
}

fn dispatch(command: &Command) -> CmdResult {
    match command {
        Command::Parse { word, input } => for_each_input(word, input, handle_parse),
        Command::Balanced { word, input } => for_each_input(word, input, handle_balanced),
        Command::Blocks { word, input } => for_each_input(word, input, handle_blocks),
        Command::SignatureCheck { signature, input } => {
            for_each_input(signature, input, handle_signature_check)
        }
        Command::Factor { signature, input } => for_each_input(signature, input, handle_factor),
        Command::AssociatedWord { signature, input } => {
            for_each_input(signature, input, handle_associated_word)
        }
        Command::Extendable { signature, input } => {
            for_each_input(signature, input, handle_extendable)
        }
        Command::Classify { signature, input } => for_each_input(signature, input, handle_classify),
        Command::Phi { word, n, check } => handle_phi(word, *n, *check),
        Command::TableauCheck { tableau, input } => {
            for_each_input(tableau, input, handle_tableau_check)
        }
        Command::Geometric { word, n, input } => {
            let t = load_tableau(word, *n, input)?;
            Ok(handle_geometric(&t))
        }
        Command::Matching { word, n, input } => {
            let t = load_tableau(word, *n, input)?;
            Ok(handle_matching(&t))
        }
        Command::Envelopes { word, n, input } => {
            let t = load_tableau(word, *n, input)?;
            Ok(handle_envelopes(&t))
        }
        Command::Subsets { m, word, n, input } => {
            let t = load_tableau(word, *n, input)?;
            handle_subsets(&t, *m)
        }
        Command::Render {
            word,
            n,
            input,
            out,
            force,
            snapshots,
        } => handle_render(word, *n, input, out, *force, *snapshots),
        Command::Census { k, budget } => handle_census(*k, *budget),
        Command::Verify {
            suite,
            seed,
            budget,
            n,
            k,
        } => handle_verify(*suite, *seed, *budget, *n, *k),
    }
}

fn gather_inputs(positional: &Option<String>, file: &Option<PathBuf>) -> Result<Vec<String>, Failure> {
    match (positional, file) {
        (Some(_), Some(_)) => Err(Failure::Usage(
            "provide either a positional value or --in, not both".into(),
        )),
        (Some(value), None) => Ok(vec![value.clone()]),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                Failure::Usage(format!("cannot read {}: {e}", path.display()))
            })?;
            let lines: Vec<String> = text
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty())
                .map(str::to_string)
                .collect();
            if lines.is_empty() {
                return Err(Failure::Usage(format!("{} holds no input", path.display())));
            }
            Ok(lines)
        }
        (None, None) => Err(Failure::Usage(
            "provide a value or --in <path> with one entry per line".into(),
        )),
    }
}

/// Applies a per-line handler and aggregates: single input yields the
/// handler's outcome, several inputs an array.
fn for_each_input(
    positional: &Option<String>,
    file: &Option<PathBuf>,
    handler: impl Fn(&str) -> CmdResult,
) -> CmdResult {
    let inputs = gather_inputs(positional, file)?;
    if inputs.len() == 1 {
        return handler(&inputs[0]);
    }
    let mut values = Vec::new();
    let mut human = String::new();
    let mut passed = true;
    for line in &inputs {
        let outcome = handler(line)?;
        values.push(outcome.json);
        human.push_str(&outcome.human);
        passed &= outcome.passed;
    }
    Ok(Outcome {
        json: Value::Array(values),
        human,
        passed,
    })
}

fn parse_signature(text: &str) -> Result<Signature, Failure> {
    Signature::parse(text).map_err(Failure::from)
}

fn handle_parse(text: &str) -> CmdResult {
    let lowercase: Vec<char> = ('a'..='z').collect();
    let parsed = parse_word(text, &lowercase)?;
    let word = Word::from_letters(parsed.letters().to_vec());
    let expanded: String = word.letters().iter().collect();
    let json = json!({
        "word": expanded,
        "caret": caret_string(&word),
        "length": word.len(),
        "alphabet": word.alphabet().iter().collect::<String>(),
        "normalized": word.normalize(),
    });
    let human = format!(
        "word      {expanded}\ncaret     {}\nlength    {}\nalphabet  {}\nnormal    {:?}\n",
        caret_string(&word),
        word.len(),
        word.alphabet().iter().collect::<String>(),
        word.normalize(),
    );
    Ok(Outcome {
        json,
        human,
        passed: true,
    })
}

fn handle_balanced(text: &str) -> CmdResult {
    let word = parse_word(text, &['a', 'b'])?;
    match factor_blocks(&word, ('a', 'b')) {
        Ok(factored) => {
            let sizes = factored.sizes();
            let blocks = factored.blocks.clone();
            let json = json!({
                "balanced": true,
                "sizes": sizes,
                "blocks": blocks,
            });
            Ok(Outcome {
                json,
                human: format!("balanced; block sizes {sizes:?}\n"),
                passed: true,
            })
        }
        Err(Error::Unbalanced { position }) => Ok(Outcome {
            json: json!({"balanced": false, "position": position}),
            human: format!("not balanced (fails at position {position})\n"),
            passed: false,
        }),
        Err(e) => Err(e.into()),
    }
}

fn handle_blocks(text: &str) -> CmdResult {
    let word = parse_word(text, &ABCD)?;
    match classify_language(&word) {
        Ok(classification) => {
            let class = match classification.class {
                BStarClass::W => "w",
                BStarClass::AbOnly => "bstar_ab_only",
                BStarClass::CdOnly => "bstar_cd_only",
                BStarClass::Empty => "empty",
            };
            let witness = if classification.in_w() {
                is_well_balanced(&word)?
            } else {
                None
            };
            let json = json!({
                "class": class,
                "in_u": classification.in_u(),
                "blocks": block_string(&classification.blocks),
                "well_balanced": if classification.in_w() { json!(witness.is_some()) } else { Value::Null },
                "witness": witness,
            });
            let human = format!(
                "class {class}; in U: {}; blocks {}\n",
                classification.in_u(),
                block_string(&classification.blocks),
            );
            Ok(Outcome {
                json,
                human,
                passed: true,
            })
        }
        Err(Error::Unbalanced { position }) => Ok(Outcome {
            json: json!({"class": "not_in_bstar", "position": position}),
            human: format!("not in the block language (fails at position {position})\n"),
            passed: false,
        }),
        Err(e) => Err(e.into()),
    }
}

fn handle_signature_check(text: &str) -> CmdResult {
    let sigma = parse_signature(text)?;
    match sigma.validate() {
        Ok(()) => Ok(Outcome {
            json: json!({"valid": true, "signature": caret_string(sigma.word())}),
            human: format!("{sigma}: valid signature\n"),
            passed: true,
        }),
        Err(Error::InvalidSignature { position }) => Ok(Outcome {
            json: json!({"valid": false, "violation": position}),
            human: format!("{sigma}: not a signature (violation at position {position})\n"),
            passed: false,
        }),
        Err(e) => Err(e.into()),
    }
}

fn handle_factor(text: &str) -> CmdResult {
    let sigma = parse_signature(text)?;
    let factors = sigma.irreducible_factorization()?;
    let rendered: Vec<String> = factors.iter().map(|f| caret_string(f.word())).collect();
    Ok(Outcome {
        json: json!({"factors": rendered}),
        human: format!("{}\n", rendered.join(" | ")),
        passed: true,
    })
}

fn handle_associated_word(text: &str) -> CmdResult {
    let sigma = parse_signature(text)?;
    match sigma.associated_word() {
        Ok(omega) => {
            let blocks = classify_language(&omega).expect("associated word is in B*");
            let rendered = block_string(&blocks.blocks);
            Ok(Outcome {
                json: json!({"ok": true, "word": rendered}),
                human: format!("{rendered}\n"),
                passed: true,
            })
        }
        Err(e @ Error::Condition1Unbalanced { .. }) | Err(e @ Error::Condition1Refinement { .. }) => {
            Ok(Outcome {
                json: json!({"ok": false, "error": e.to_string()}),
                human: format!("{e}\n"),
                passed: false,
            })
        }
        Err(e) => Err(e.into()),
    }
}

fn handle_extendable(text: &str) -> CmdResult {
    let sigma = parse_signature(text)?;
    if sigma.is_extendable()? {
        let class = sigma.classify()?;
        Ok(Outcome {
            json: json!({"extendable": true, "class": class}),
            human: format!(
                "extendable ({:?}, r={}, p={}, q={})\n",
                class.kind, class.r, class.p, class.q
            ),
            passed: true,
        })
    } else {
        let reason = if sigma.associated_word().is_err() {
            "condition 1"
        } else {
            "condition 2"
        };
        Ok(Outcome {
            json: json!({"extendable": false, "reason": reason}),
            human: format!("not extendable ({reason})\n"),
            passed: false,
        })
    }
}

fn handle_classify(text: &str) -> CmdResult {
    let sigma = parse_signature(text)?;
    let class = sigma.classify()?;
    Ok(Outcome {
        json: serde_json::to_value(class).expect("class serializes"),
        human: format!(
            "{:?} (r={}, p={}, q={})\n",
            class.kind, class.r, class.p, class.q
        ),
        passed: true,
    })
}

fn handle_phi(word: &str, n: usize, check: Option<PhiCheck>) -> CmdResult {
    let omega = parse_word(word, &ABCD)?;
    let tableau = phi_tableau(&omega, n)?;
    let mut json = json!({"tableau": tableau});
    let mut human = tableau.render_text();
    let mut passed = true;
    match check {
        Some(PhiCheck::Geometric) => {
            let realizable = is_geometric(&tableau).is_some();
            json["geometric"] = json!(realizable);
            human.push_str(&format!("geometric: {realizable}\n"));
            passed = realizable;
        }
        Some(PhiCheck::Regular) => {
            let regular = tableau.is_regular();
            json["regular"] = json!(regular);
            human.push_str(&format!("regular: {regular}\n"));
            passed = regular;
        }
        Some(PhiCheck::Pangrammatic) => {
            let pangrammatic = tableau.is_pangrammatic();
            json["pangrammatic"] = json!(pangrammatic);
            human.push_str(&format!("pangrammatic: {pangrammatic}\n"));
            passed = pangrammatic;
        }
        None => {}
    }
    Ok(Outcome {
        json,
        human,
        passed,
    })
}

fn parse_tableau_json(text: &str) -> Result<Tableau, Failure> {
    serde_json::from_str::<Tableau>(text)
        .map_err(|e| Failure::Domain(format!("invalid tableau JSON: {e}")))
}

fn handle_tableau_check(text: &str) -> CmdResult {
    let tableau = parse_tableau_json(text)?;
    let regular = tableau.is_regular();
    let pangrammatic = tableau.is_pangrammatic();
    let word = if regular && pangrammatic {
        word_of_regular_tableau(&tableau).ok()
    } else {
        None
    };
    let rendered = word.as_ref().map(|w| {
        let blocks = classify_language(w).expect("recovered word is in B*");
        block_string(&blocks.blocks)
    });
    let human = format!(
        "regular: {regular}; pangrammatic: {pangrammatic}{}\n",
        rendered
            .as_deref()
            .map(|w| format!("; word: {w}"))
            .unwrap_or_default()
    );
    Ok(Outcome {
        json: json!({
            "regular": regular,
            "pangrammatic": pangrammatic,
            "word": rendered,
        }),
        human,
        passed: regular,
    })
}

/// Builds the subject tableau from either `--word`/`--n` or a JSON file.
fn load_tableau(
    word: &Option<String>,
    n: Option<usize>,
    input: &Option<PathBuf>,
) -> Result<Tableau, Failure> {
    match (word, input) {
        (Some(_), Some(_)) => Err(Failure::Usage(
            "provide either --word with --n, or --in, not both".into(),
        )),
        (Some(w), None) => {
            let n = n.ok_or_else(|| Failure::Usage("--word requires --n".into()))?;
            let omega = parse_word(w, &ABCD)?;
            Ok(phi_tableau(&omega, n)?)
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            parse_tableau_json(text.trim())
        }
        (None, None) => Err(Failure::Usage(
            "provide --word with --n, or --in <path>".into(),
        )),
    }
}

fn handle_geometric(tableau: &Tableau) -> Outcome {
    match is_geometric(tableau) {
        Some(diagram) => Outcome {
            json: json!({"geometric": true, "diagram": diagram}),
            human: format!(
                "geometric: true\nevents: {:?}\n",
                diagram.events()
            ),
            passed: true,
        },
        None => Outcome {
            json: json!({"geometric": false}),
            human: "geometric: false\n".into(),
            passed: false,
        },
    }
}

fn handle_matching(tableau: &Tableau) -> Outcome {
    let ok = has_valid_matching(tableau);
    Outcome {
        json: json!({"valid_matching": ok}),
        human: format!("valid matching: {ok}\n"),
        passed: ok,
    }
}

fn handle_envelopes(tableau: &Tableau) -> Outcome {
    let report = envelopes(tableau);
    let human = format!(
        "upper: {:?} (convex: {})\nlower: {:?} (convex: {})\n",
        report.upper.iter().collect::<Vec<_>>(),
        report.upper_convex,
        report.lower.iter().collect::<Vec<_>>(),
        report.lower_convex,
    );
    Outcome {
        json: serde_json::to_value(&report).expect("report serializes"),
        human,
        passed: true,
    }
}

fn handle_subsets(tableau: &Tableau, m: usize) -> CmdResult {
    let scans = subsystem_envelope_scan(tableau, m)?;
    let upper_convex = scans.iter().filter(|s| s.report.upper_convex).count();
    let lower_convex = scans.iter().filter(|s| s.report.lower_convex).count();
    let mut human = String::new();
    for scan in &scans {
        human.push_str(&format!(
            "{:?}: upper {:?} (convex: {}), lower {:?} (convex: {})\n",
            scan.labels,
            scan.report.upper.iter().collect::<Vec<_>>(),
            scan.report.upper_convex,
            scan.report.lower.iter().collect::<Vec<_>>(),
            scan.report.lower_convex,
        ));
    }
    human.push_str(&format!(
        "{} subsets; {upper_convex} upper convex, {lower_convex} lower convex\n",
        scans.len()
    ));
    Ok(Outcome {
        json: json!({
            "m": m,
            "subsets": scans,
            "upper_convex_count": upper_convex,
            "lower_convex_count": lower_convex,
        }),
        human,
        passed: true,
    })
}

fn handle_render(
    word: &Option<String>,
    n: Option<usize>,
    input: &Option<PathBuf>,
    out_path: &Option<PathBuf>,
    force: bool,
    snapshots: bool,
) -> CmdResult {
    let diagram = match (word, input) {
        (Some(_), Some(_)) => {
            return Err(Failure::Usage(
                "provide either --word with --n, or --in, not both".into(),
            ))
        }
        (Some(w), None) => {
            let n = n.ok_or_else(|| Failure::Usage("--word requires --n".into()))?;
            let omega = parse_word(w, &ABCD)?;
            let tableau = phi_tableau(&omega, n)?;
            is_geometric(&tableau).ok_or_else(|| {
                Failure::Domain("the word's tableau is not realizable as a system".into())
            })?
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            serde_json::from_str::<WiringDiagram>(text.trim())
                .map_err(|e| Failure::Domain(format!("invalid wiring-diagram JSON: {e}")))?
        }
        (None, None) => {
            return Err(Failure::Usage(
                "provide --word with --n, or --in <path>".into(),
            ))
        }
    };
    let options = RenderOptions {
        show_snapshots: snapshots,
        ..RenderOptions::default()
    };
    let svg = render_svg(&diagram, &options);
    match out_path {
        Some(path) => {
            if path.exists() && !force {
                return Err(Failure::Domain(Error::RefusingToOverwrite.to_string()));
            }
            write_file(path, &svg)?;
            Ok(Outcome {
                json: json!({"wrote": path.display().to_string(), "bytes": svg.len()}),
                human: format!("wrote {} ({} bytes)\n", path.display(), svg.len()),
                passed: true,
            })
        }
        None => Ok(Outcome {
            json: json!({"svg": svg}),
            human: svg,
            passed: true,
        }),
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    std::fs::write(path, contents)
        .map_err(|e| Failure::Domain(format!("cannot write {}: {e}", path.display())))
}

fn budget_from(override_candidates: Option<u64>) -> EnumerationBudget {
    match override_candidates {
        Some(limit) => EnumerationBudget::with_max_candidates(limit),
        None => EnumerationBudget::default(),
    }
}

fn handle_census(k: usize, budget: Option<u64>) -> CmdResult {
    let census = enumerate_signatures(k, &budget_from(budget))?;
    let rendered: Vec<String> = census
        .signatures
        .iter()
        .map(|s| caret_string(s.word()))
        .collect();
    let mut human = format!("k={k}: {} signatures\n", census.count);
    for s in &rendered {
        human.push_str(s);
        human.push('\n');
    }
    Ok(Outcome {
        json: json!({"k": k, "count": census.count, "signatures": rendered}),
        human,
        passed: true,
    })
}

fn handle_verify(
    suite: Suite,
    seed: u64,
    budget: Option<u64>,
    n: Option<usize>,
    k: Option<usize>,
) -> CmdResult {
    let budget = budget_from(budget);
    let n_max = n.unwrap_or(8);
    let r_max = k.unwrap_or(3);
    let mut reports: Vec<Report> = Vec::new();
    if matches!(suite, Suite::PachToth | Suite::All) {
        reports.push(verify_pach_toth_construction()?);
    }
    if matches!(suite, Suite::Envelopes | Suite::All) {
        reports.push(verify_envelope_theorems(
            r_max,
            n_max,
            VERIFY_SAMPLES,
            seed,
            &budget,
        )?);
    }
    if matches!(suite, Suite::Ck3 | Suite::All) {
        reports.push(verify_ck3(&budget)?);
    }
    if matches!(suite, Suite::Census | Suite::All) {
        reports.push(verify_census_vs_diagrams(r_max.min(2), &budget)?);
    }
    let passed = reports.iter().all(|r| r.passed);
    let mut human = String::new();
    for report in &reports {
        human.push_str(&format!(
            "{}: {}{}\n",
            report.check,
            if report.passed { "PASS" } else { "FAIL" },
            report
                .counterexample
                .as_deref()
                .map(|c| format!(" ({c})"))
                .unwrap_or_default(),
        ));
    }
    Ok(Outcome {
        json: serde_json::to_value(&reports).expect("reports serialize"),
        human,
        passed,
    })
}
