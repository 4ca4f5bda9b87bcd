//! Batch front end: parse block files, dispatch to the library, render
//! results in text or JSON.
//!
//! Exit codes: 0 definitive positive, 1 definitive negative, 2 unknown or
//! budget exhausted, 64 usage error, 65 parse or validation error.

mod json;
mod workspace;

use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde_json::Value;

use tietze::calculus::{
    apply_step, expand_trel, search_equivalence, theorem1_cospan, CospanOutcome,
};
use tietze::core::canon::canonical_form;
use tietze::core::monoid::MonoidTable;
use tietze::core::presentation::Presentation;
use tietze::error::Error as LibError;
use tietze::model::{
    certify_weak_equivalence, is_cofibration, is_pseudo_fibrant, is_pseudo_fibration,
    pseudo_fibrant_replacement, solve_lifting, trivial_fibration_failure, Bounded, WeqRefutation,
    WeqVerdict,
};
use tietze::rewriting::kb::KbBudget;
use tietze::rewriting::verdict::{SearchBudget, Verdict};
use tietze::rewriting::{count_elements, equivalent, knuth_bendix, normal_form, separate_with};
use tietze::text::{self, FORMAT_HEADER};

use workspace::{WsError, Workspace};

#[derive(Parser)]
#[command(name = "tietze", version, about = "Monoid presentations and the transformations between them", disable_help_subcommand = true)]
struct Cli {
    /// Extra block files loaded into the workspace.
    #[arg(long = "with", global = true)]
    with: Vec<String>,
    /// Mirror every output block as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<String>,
    /// Maximum search expansions (default from TIETZE_BUDGET or 10000).
    #[arg(long, global = true)]
    budget: Option<usize>,
    /// Maximum intermediate word length.
    #[arg(long = "max-len", global = true)]
    max_len: Option<usize>,
    /// Largest separating monoid table tried.
    #[arg(long = "max-size", global = true)]
    max_size: Option<usize>,
    /// Rule cap for completion.
    #[arg(long = "max-rules", global = true)]
    max_rules: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Re-render every block of the given files canonically.
    Show { files: Vec<String> },
    /// Canonical form of a presentation.
    Canon {
        file: String,
        name: Option<String>,
    },
    /// Coproduct of two presentations.
    Coproduct {
        file: String,
        left: String,
        right: String,
    },
    /// Pushout of two morphisms out of a common source.
    Pushout {
        file: String,
        left: String,
        right: String,
    },
    /// Product of two presentations against a materialization bound.
    Product {
        file: String,
        left: String,
        right: String,
    },
    /// Equalizer of a parallel pair of morphisms.
    Equalizer {
        file: String,
        left: String,
        right: String,
    },
    /// Coequalizer of a parallel pair of morphisms.
    Coequalizer {
        file: String,
        left: String,
        right: String,
    },
    /// Check a predicate of a morphism (or presentation for pfib-obj).
    Check {
        predicate: String,
        file: String,
        name: Option<String>,
    },
    /// Solve a lifting problem i/p/f/g.
    Lift {
        file: String,
        #[arg(long)]
        i: String,
        #[arg(long)]
        p: String,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// Factor a morphism as a mono followed by a trivial fibration.
    Factor {
        file: String,
        name: Option<String>,
    },
    /// Ken Brown cospan of a morphism.
    Kenbrown {
        file: String,
        name: Option<String>,
    },
    /// Truncated pseudo-fibrant replacement.
    Replace {
        file: String,
        name: Option<String>,
        #[arg(long)]
        words: usize,
        #[arg(long)]
        close: usize,
    },
    /// Knuth-Bendix completion with its transformation zig-zag.
    Kb {
        file: String,
        name: Option<String>,
    },
    /// Normal form of a word under the completed system.
    Nf {
        file: String,
        word: String,
        #[arg(long)]
        name: Option<String>,
    },
    /// Number of irreducible words up to a length.
    Count {
        file: String,
        len: usize,
        #[arg(long)]
        name: Option<String>,
    },
    /// Decide congruence of two words within a budget.
    #[command(name = "equiv-words")]
    EquivWords {
        file: String,
        left: String,
        right: String,
        #[arg(long)]
        name: Option<String>,
    },
    /// Search a separating finite-quotient certificate.
    Separate {
        file: String,
        left: String,
        right: String,
        #[arg(long)]
        name: Option<String>,
    },
    /// Apply the traces of a file, printing every intermediate.
    Apply { file: String },
    /// Expand derivable-relation steps into atomic ones.
    Expand { file: String },
    /// Build the completeness cospan between two presentations.
    Cospan {
        file: String,
        left: String,
        right: String,
    },
    /// Search a zig-zag of elementary transformations.
    Equiv {
        file: String,
        left: String,
        right: String,
    },
    /// Print the built-in fixture corpus.
    Fixtures,
}

/// Collected output: text blocks and their JSON mirrors.
struct Output {
    text: String,
    json: Vec<Value>,
    use_json: bool,
}

impl Output {
    fn new(use_json: bool) -> Self {
        let mut o = Output {
            text: String::new(),
            json: Vec::new(),
            use_json,
        };
        o.text.push_str(FORMAT_HEADER);
        o.text.push('\n');
        o
    }

    fn comment(&mut self, line: &str) {
        self.text.push_str("# ");
        self.text.push_str(line);
        self.text.push('\n');
        if self.use_json {
            self.json.push(serde_json::json!({"kind": "note", "text": line}));
        }
    }

    fn block(&mut self, text: String, json: Value) {
        self.text.push_str(&text);
        if self.use_json {
            self.json.push(json);
        }
    }

    fn emit(self, out: Option<&str>) -> std::io::Result<()> {
        let content = if self.use_json {
            let doc = serde_json::json!({"format": 1, "blocks": self.json});
            format!("{}\n", serde_json::to_string_pretty(&doc).expect("serializable"))
        } else {
            self.text
        };
        match out {
            Some(path) => std::fs::write(path, content),
            None => {
                print!("{content}");
                Ok(())
            }
        }
    }
}

#[derive(Clone, Copy)]
enum Exit {
    Positive = 0,
    Negative = 1,
    Unknown = 2,
}

enum AppError {
    Ws(WsError),
    Lib(LibError),
    Usage(String),
    Io(std::io::Error),
}

impl From<WsError> for AppError {
    fn from(e: WsError) -> Self {
        AppError::Ws(e)
    }
}

impl From<LibError> for AppError {
    fn from(e: LibError) -> Self {
        AppError::Lib(e)
    }
}

impl From<std::io::Error> for AppError {
    fn from(e: std::io::Error) -> Self {
        AppError::Io(e)
    }
}

struct Budgets {
    search: SearchBudget,
    kb: KbBudget,
    defaulted: Vec<&'static str>,
}

fn budgets(cli: &Cli) -> Budgets {
    let mut defaulted = Vec::new();
    let env_budget = std::env::var("TIETZE_BUDGET")
        .ok()
        .and_then(|v| v.parse().ok());
    let budget = match cli.budget.or(env_budget) {
        Some(b) => b,
        None => {
            defaulted.push("budget");
            10_000
        }
    };
    let max_len = match cli.max_len {
        Some(l) => l,
        None => {
            defaulted.push("max-len");
            12
        }
    };
    let max_size = match cli.max_size {
        Some(s) => s,
        None => {
            defaulted.push("max-size");
            4
        }
    };
    let max_rules = match cli.max_rules {
        Some(r) => r,
        None => {
            defaulted.push("max-rules");
            200
        }
    };
    let mut search = SearchBudget::new(budget, max_len);
    search.max_table_size = max_size;
    Budgets {
        search,
        kb: KbBudget::new(max_rules, budget),
        defaulted,
    }
}

fn budget_header(b: &Budgets) -> String {
    let mark = |name: &str| {
        if b.defaulted.contains(&name) {
            " (default)"
        } else {
            ""
        }
    };
    format!(
        "budget={}{} max-len={}{} max-size={}{} max-rules={}{}",
        b.search.max_expansions,
        mark("budget"),
        b.search.max_word_len,
        mark("max-len"),
        b.search.max_table_size,
        mark("max-size"),
        b.kb.max_rules,
        mark("max-rules"),
    )
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are not usage errors.
            use clap::error::ErrorKind;
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 64,
            };
        }
    };
    match execute(&cli) {
        Ok(exit) => exit as i32,
        Err(AppError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            64
        }
        Err(AppError::Ws(e)) => {
            eprintln!("error: {e}");
            65
        }
        Err(AppError::Lib(e)) => {
            eprintln!("error: {e}");
            65
        }
        Err(AppError::Io(e)) => {
            eprintln!("io error: {e}");
            65
        }
    }
}

fn load(cli: &Cli, primary: &str) -> Result<Workspace, AppError> {
    let mut files = vec![primary.to_string()];
    files.extend(cli.with.iter().cloned());
    Ok(Workspace::load(&files)?)
}

fn pres_block(out: &mut Output, name: &str, p: &Presentation) {
    pres_block_with(out, name, p, &[]);
}

fn pres_block_with(out: &mut Output, name: &str, p: &Presentation, pullbacks: &[String]) {
    out.block(
        text::render_presentation_block_with(name, p, pullbacks),
        json::presentation_json(name, p),
    );
}

fn morph_block(out: &mut Output, name: &str, from: &str, to: &str, m: &tietze::core::Morphism) {
    out.block(
        text::render_morphism_block(name, from, to, m),
        json::morphism_json(name, from, to, m),
    );
}

fn execute(cli: &Cli) -> Result<Exit, AppError> {
    let b = budgets(cli);
    let mut out = Output::new(cli.json);
    let exit = dispatch(cli, &b, &mut out)?;
    out.emit(cli.out.as_deref())?;
    Ok(exit)
}

fn dispatch(cli: &Cli, b: &Budgets, out: &mut Output) -> Result<Exit, AppError> {
    match &cli.command {
        Command::Show { files } => {
            if files.is_empty() {
                return Err(AppError::Usage("show needs at least one file".into()));
            }
            let mut all = files.clone();
            all.extend(cli.with.iter().cloned());
            let ws = Workspace::load(&all)?;
            for (name, p) in &ws.presentations {
                pres_block_with(out, name, p, &ws.pullback_names(p));
            }
            for (name, m) in &ws.morphisms {
                let from = ws.presentation_name(m.src());
                let to = ws.presentation_name(m.tgt());
                morph_block(out, name, &from, &to, m);
            }
            for (_, table) in &ws.monoids {
                out.block(text::render_monoid_block(table), json::monoid_json(table));
            }
            for raw in &ws.traces {
                let trace = ws.resolve_trace(raw)?;
                out.block(
                    text::render_trace_blocks("t", &raw.from, &trace),
                    json::trace_json(&raw.from, &trace),
                );
            }
            for raw in &ws.zigzags {
                let z = ws.resolve_zigzag(raw)?;
                out.block(
                    text::render_zigzag_blocks("z", &raw.from, &raw.to, &z),
                    json::zigzag_json(&raw.from, &raw.to, &z),
                );
            }
            // Standalone derivations (trace witnesses are re-emitted by the
            // trace renderer), rules and refutations pass through.
            let referenced = ws.referenced_witnesses();
            for (name, raw) in &ws.derivations {
                if !referenced.contains(name) {
                    out.block(render_raw_derivation(raw), raw_derivation_json(raw));
                }
            }
            for raw in &ws.rules {
                out.block(render_raw_rules(raw), raw_rules_json(raw));
            }
            for raw in &ws.refutations {
                out.block(render_raw_refutation(raw), raw_refutation_json(raw));
            }
            Ok(Exit::Positive)
        }
        Command::Canon { file, name } => {
            let ws = load(cli, file)?;
            let p = ws.presentation(name.as_deref())?;
            let c = canonical_form(p)?;
            pres_block(out, "canonical", &c);
            Ok(Exit::Positive)
        }
        Command::Coproduct { file, left, right } => {
            let ws = load(cli, file)?;
            let p = ws.presentation(Some(left))?;
            let q = ws.presentation(Some(right))?;
            let c = tietze::category::coproduct(p, q)?;
            pres_block(out, "sum", &c.presentation);
            morph_block(out, "inj0", left, "sum", &c.left);
            morph_block(out, "inj1", right, "sum", &c.right);
            Ok(Exit::Positive)
        }
        Command::Pushout { file, left, right } => {
            let ws = load(cli, file)?;
            let f = ws.morphism(Some(left))?;
            let g = ws.morphism(Some(right))?;
            let po = tietze::category::pushout(f, g)?;
            pres_block(out, "apex", &po.presentation);
            morph_block(
                out,
                "cocone0",
                &ws.presentation_name(f.tgt()),
                "apex",
                &po.left,
            );
            morph_block(
                out,
                "cocone1",
                &ws.presentation_name(g.tgt()),
                "apex",
                &po.right,
            );
            Ok(Exit::Positive)
        }
        Command::Product { file, left, right } => {
            let ws = load(cli, file)?;
            out.comment(&budget_header(b));
            let p = ws.presentation(Some(left))?;
            let q = ws.presentation(Some(right))?;
            let prod = tietze::category::product(p, q, b.search.max_word_len)?;
            if let Some(bound) = prod.truncated_at {
                out.comment(&format!("truncated at {bound}"));
            }
            pres_block(out, "product", &prod.presentation);
            morph_block(out, "proj0", "product", left, &prod.left);
            morph_block(out, "proj1", "product", right, &prod.right);
            Ok(Exit::Positive)
        }
        Command::Equalizer { file, left, right } => {
            let ws = load(cli, file)?;
            let f = ws.morphism(Some(left))?;
            let g = ws.morphism(Some(right))?;
            let eq = tietze::category::equalizer(f, g)?;
            pres_block(out, "equalizer", &eq.presentation);
            morph_block(
                out,
                "include",
                "equalizer",
                &ws.presentation_name(f.src()),
                &eq.inclusion,
            );
            Ok(Exit::Positive)
        }
        Command::Coequalizer { file, left, right } => {
            let ws = load(cli, file)?;
            let f = ws.morphism(Some(left))?;
            let g = ws.morphism(Some(right))?;
            let ce = tietze::category::coequalizer(f, g)?;
            pres_block(out, "coequalizer", &ce.presentation);
            morph_block(
                out,
                "project",
                &ws.presentation_name(f.tgt()),
                "coequalizer",
                &ce.projection,
            );
            Ok(Exit::Positive)
        }
        Command::Check {
            predicate,
            file,
            name,
        } => check(cli, b, out, predicate, file, name.as_deref()),
        Command::Lift { file, i, p, f, g } => {
            let ws = load(cli, file)?;
            let i = ws.morphism(Some(i))?;
            let p = ws.morphism(Some(p))?;
            let f = ws.morphism(Some(f))?;
            let g = ws.morphism(Some(g))?;
            out.comment(&budget_header(b));
            match solve_lifting(i, p, f, g, b.search.max_word_len)? {
                Some(h) => {
                    out.comment("filler found");
                    morph_block(
                        out,
                        "filler",
                        &ws.presentation_name(i.tgt()),
                        &ws.presentation_name(p.src()),
                        &h,
                    );
                    Ok(Exit::Positive)
                }
                None => {
                    out.comment("no filler exists");
                    Ok(Exit::Negative)
                }
            }
        }
        Command::Factor { file, name } => {
            let ws = load(cli, file)?;
            let w = ws.morphism(name.as_deref())?;
            let fact = tietze::model::factor_mono_tfib(w)?;
            let src = ws.presentation_name(w.src());
            let tgt = ws.presentation_name(w.tgt());
            pres_block(out, &src, w.src());
            if tgt != src {
                pres_block(out, &tgt, w.tgt());
            }
            pres_block_with(out, "mid", &fact.mid, &["p".to_string()]);
            morph_block(out, "i", &src, "mid", &fact.cofibration);
            morph_block(out, "p", "mid", &tgt, &fact.fibration);
            Ok(Exit::Positive)
        }
        Command::Kenbrown { file, name } => {
            let ws = load(cli, file)?;
            let w = ws.morphism(name.as_deref())?;
            let kb = tietze::model::ken_brown_cospan(w)?;
            let src = ws.presentation_name(w.src());
            let tgt = ws.presentation_name(w.tgt());
            pres_block(out, &src, w.src());
            if tgt != src {
                pres_block(out, &tgt, w.tgt());
            }
            pres_block_with(out, "mid", &kb.mid, &["p".to_string()]);
            morph_block(out, "i", &src, "mid", &kb.section_left);
            morph_block(out, "j", &tgt, "mid", &kb.section_right);
            morph_block(out, "p", "mid", &tgt, &kb.fibration);
            Ok(Exit::Positive)
        }
        Command::Replace {
            file,
            name,
            words,
            close,
        } => {
            let ws = load(cli, file)?;
            let p = ws.presentation(name.as_deref())?;
            let r = pseudo_fibrant_replacement(p, *words, *close)?;
            out.comment(&format!("truncated words={words} close={close}"));
            pres_block(out, &ws.presentation_name(p), p);
            pres_block(out, "replacement", &r.presentation);
            // The cell trace replays as a trace of elementary steps.
            let trace = cells_as_trace(&r.trace)?;
            out.block(
                text::render_trace_blocks("r", &ws.presentation_name(p), &trace),
                json::trace_json(&ws.presentation_name(p), &trace),
            );
            Ok(Exit::Positive)
        }
        Command::Kb { file, name } => {
            let ws = load(cli, file)?;
            let p = ws.presentation(name.as_deref())?;
            out.comment(&budget_header(b));
            match knuth_bendix(p, &b.kb)? {
                Some(completion) => {
                    let pname = ws.presentation_name(p);
                    pres_block(out, &pname, p);
                    out.block(
                        text::render_rules_block(&pname, p, &completion.system),
                        json::rules_json(&pname, p, &completion.system),
                    );
                    pres_block(out, "completed", &completion.completed);
                    out.block(
                        text::render_zigzag_blocks("kb", &pname, "completed", &completion.zigzag),
                        json::zigzag_json(&pname, "completed", &completion.zigzag),
                    );
                    Ok(Exit::Positive)
                }
                None => {
                    out.comment("budget exhausted before convergence");
                    Ok(Exit::Unknown)
                }
            }
        }
        Command::Nf { file, word, name } => {
            let ws = load(cli, file)?;
            let p = ws.presentation(name.as_deref())?;
            out.comment(&budget_header(b));
            let w = p.parse_word(word)?;
            match knuth_bendix(p, &b.kb)? {
                Some(completion) => {
                    let nf = normal_form(&completion.system, &w)?;
                    out.comment(&format!("nf = {}", p.render_word(&nf)));
                    Ok(Exit::Positive)
                }
                None => {
                    out.comment("budget exhausted before convergence");
                    Ok(Exit::Unknown)
                }
            }
        }
        Command::Count { file, len, name } => {
            let ws = load(cli, file)?;
            let p = ws.presentation(name.as_deref())?;
            out.comment(&budget_header(b));
            match knuth_bendix(p, &b.kb)? {
                Some(completion) => {
                    let n = count_elements(&completion.system, p.gen_count(), *len)?;
                    out.comment(&format!("count = {n}"));
                    Ok(Exit::Positive)
                }
                None => {
                    out.comment("budget exhausted before convergence");
                    Ok(Exit::Unknown)
                }
            }
        }
        Command::EquivWords {
            file,
            left,
            right,
            name,
        } => {
            let ws = load(cli, file)?;
            let p = ws.presentation(name.as_deref())?;
            let pname = ws.presentation_name(p);
            out.comment(&budget_header(b));
            let u = p.parse_word(left)?;
            let v = p.parse_word(right)?;
            pres_block(out, &pname, p);
            match equivalent(p, &u, &v, &b.search)? {
                Verdict::Proved(d) => {
                    out.comment("proved");
                    out.block(
                        text::render_derivation_block("proof", Some(&pname), p, &d),
                        json::derivation_json("proof", p, &d),
                    );
                    Ok(Exit::Positive)
                }
                Verdict::Refuted(cert) => {
                    out.comment("refuted");
                    out.block(
                        text::render_refutation_block("witness", Some(&pname), p, &cert),
                        json::refutation_json("witness", p, &cert),
                    );
                    Ok(Exit::Negative)
                }
                Verdict::Unknown(report) => {
                    out.comment(&format!(
                        "unknown: exhausted {} after {} expansions (length {})",
                        report.exhausted, report.expansions_used, report.max_len_reached
                    ));
                    Ok(Exit::Unknown)
                }
            }
        }
        Command::Separate {
            file,
            left,
            right,
            name,
        } => {
            let ws = load(cli, file)?;
            let p = ws.presentation(name.as_deref())?;
            let pname = ws.presentation_name(p);
            out.comment(&budget_header(b));
            let u = p.parse_word(left)?;
            let v = p.parse_word(right)?;
            let extra: Vec<MonoidTable> = ws.monoids.values().cloned().collect();
            pres_block(out, &pname, p);
            match separate_with(p, &u, &v, b.search.max_table_size, &extra)? {
                Some(cert) => {
                    out.block(
                        text::render_refutation_block("witness", Some(&pname), p, &cert),
                        json::refutation_json("witness", p, &cert),
                    );
                    Ok(Exit::Positive)
                }
                None => {
                    out.comment("no separating homomorphism within the size bound");
                    Ok(Exit::Unknown)
                }
            }
        }
        Command::Apply { file } => {
            let ws = load(cli, file)?;
            if ws.traces.is_empty() {
                return Err(AppError::Usage("no trace blocks in the file".into()));
            }
            for raw in &ws.traces {
                let trace = ws.resolve_trace(raw)?;
                for (i, state) in trace.intermediates()?.iter().enumerate() {
                    pres_block(out, &format!("step{i}"), state);
                }
            }
            Ok(Exit::Positive)
        }
        Command::Expand { file } => {
            let ws = load(cli, file)?;
            if ws.traces.is_empty() {
                return Err(AppError::Usage("no trace blocks in the file".into()));
            }
            for raw in &ws.traces {
                let trace = ws.resolve_trace(raw)?;
                pres_block(out, &raw.from, trace.start());
                let expanded = expand_trel(&trace)?;
                out.comment(&format!("exact {}", expanded.exact));
                out.block(
                    text::render_trace_blocks("x", &raw.from, &expanded.trace),
                    json::trace_json(&raw.from, &expanded.trace),
                );
            }
            Ok(Exit::Positive)
        }
        Command::Cospan { file, left, right } => {
            let ws = load(cli, file)?;
            let p = ws.presentation(Some(left))?;
            let q = ws.presentation(Some(right))?;
            out.comment(&budget_header(b));
            match theorem1_cospan(p, q, None, &b.search)? {
                CospanOutcome::Built(cospan) => {
                    pres_block(out, left, p);
                    pres_block(out, right, q);
                    pres_block(out, "apex", &cospan.apex);
                    morph_block(out, "leg0", left, "apex", &cospan.leg_left);
                    morph_block(out, "leg1", right, "apex", &cospan.leg_right);
                    out.block(
                        text::render_trace_blocks("c0", left, &cospan.trace_left),
                        json::trace_json(left, &cospan.trace_left),
                    );
                    out.block(
                        text::render_trace_blocks("c1", right, &cospan.trace_right),
                        json::trace_json(right, &cospan.trace_right),
                    );
                    Ok(Exit::Positive)
                }
                CospanOutcome::Unknown { reason } => {
                    out.comment(&format!("unknown: {reason}"));
                    Ok(Exit::Unknown)
                }
            }
        }
        Command::Equiv { file, left, right } => {
            let ws = load(cli, file)?;
            let p = ws.presentation(Some(left))?;
            let q = ws.presentation(Some(right))?;
            out.comment(&budget_header(b));
            pres_block(out, left, p);
            pres_block(out, right, q);
            match search_equivalence(p, q, &b.search)? {
                Some(z) => {
                    out.block(
                        text::render_zigzag_blocks("e", left, right, &z),
                        json::zigzag_json(left, right, &z),
                    );
                    Ok(Exit::Positive)
                }
                None => {
                    out.comment("no zig-zag found within the budget");
                    Ok(Exit::Unknown)
                }
            }
        }
        Command::Fixtures => {
            for (name, p) in tietze::calculus::fixtures::all() {
                pres_block(out, name, &p);
            }
            let pair = tietze::calculus::fixtures::n_pair();
            let (_, forward) = &pair.zigzag.segments()[0];
            out.block(
                text::render_trace_blocks("npair-fwd", "npair-small", forward),
                json::trace_json("npair-small", forward),
            );
            out.block(
                text::render_zigzag_blocks("npair", "npair-small", "npair-big", &pair.zigzag),
                json::zigzag_json("npair-small", "npair-big", &pair.zigzag),
            );
            out.comment("task: separate chain3-cut \"a b0\" \"b0 a\"");
            out.comment("task: equiv-words chain3 \"a\" \"b0\"");
            Ok(Exit::Positive)
        }
    }
}

/// Renders a pseudo-cell decomposition as the trace of its elementary
/// steps.
fn cells_as_trace(
    cd: &tietze::model::CellularDecomposition,
) -> Result<tietze::calculus::TietzeTrace, AppError> {
    let mut steps = Vec::with_capacity(cd.cells.len());
    let mut state = (*cd.source).clone();
    for cell in &cd.cells {
        let arc = Arc::new(state.clone());
        let attach = cell.attaching_morphism(&arc)?;
        let step = match &cell.kind {
            tietze::model::CellKind::Pseudo(j) => {
                tietze::calculus::j_to_step(j, &attach, cell.fresh.first().map(|s| s.as_str()))?
            }
            tietze::model::CellKind::Cofibration(_) => {
                return Err(AppError::Usage(
                    "cofibration cells have no step rendering".into(),
                ))
            }
        };
        state = apply_step(&state, &step)?;
        steps.push(step);
    }
    Ok(tietze::calculus::TietzeTrace::new(cd.source.clone(), steps)?)
}

fn check(
    cli: &Cli,
    b: &Budgets,
    out: &mut Output,
    predicate: &str,
    file: &str,
    name: Option<&str>,
) -> Result<Exit, AppError> {
    let ws = load(cli, file)?;
    match predicate {
        "mono" | "epi" | "cof" => {
            let m = ws.morphism(name)?;
            let holds = match predicate {
                "mono" => m.is_mono(),
                "epi" => m.is_epi(),
                _ => is_cofibration(m),
            };
            out.comment(&format!("{predicate}: {holds}"));
            Ok(if holds { Exit::Positive } else { Exit::Negative })
        }
        "tfib" => {
            let m = ws.morphism(name)?;
            match trivial_fibration_failure(m)? {
                None => {
                    out.comment("tfib: true");
                    Ok(Exit::Positive)
                }
                Some(reason) => {
                    out.comment("tfib: false");
                    out.comment(&format!("reason: {reason}"));
                    Ok(Exit::Negative)
                }
            }
        }
        "pfib" => {
            let m = ws.morphism(name)?;
            let holds = is_pseudo_fibration(m)?;
            out.comment(&format!("pfib: {holds}"));
            Ok(if holds { Exit::Positive } else { Exit::Negative })
        }
        "weq" => {
            let m = ws.morphism(name)?;
            out.comment(&budget_header(b));
            match certify_weak_equivalence(m, &b.search)? {
                WeqVerdict::Proved(cert) => {
                    out.comment("weq: proved");
                    let tgt = m.tgt();
                    let src = m.src();
                    for bgen in tgt.gen_ids() {
                        out.comment(&format!(
                            "dict {} -> {}",
                            tgt.gen_name(bgen),
                            src.render_word(&cert.dictionary[bgen.index()])
                        ));
                    }
                    for (i, d) in cert.target_derivations.iter().enumerate() {
                        out.block(
                            text::render_derivation_block(&format!("tgt{i}"), None, tgt, d),
                            json::derivation_json(&format!("tgt{i}"), tgt, d),
                        );
                    }
                    for (i, d) in cert.source_derivations.iter().enumerate() {
                        out.block(
                            text::render_derivation_block(&format!("src{i}"), None, src, d),
                            json::derivation_json(&format!("src{i}"), src, d),
                        );
                    }
                    Ok(Exit::Positive)
                }
                WeqVerdict::Refuted(refutation) => {
                    out.comment("weq: refuted");
                    match &refutation {
                        WeqRefutation::NotInjective { separation, .. } => {
                            out.block(
                                text::render_refutation_block(
                                    "separation",
                                    None,
                                    m.src(),
                                    separation,
                                ),
                                json::refutation_json("separation", m.src(), separation),
                            );
                        }
                        WeqRefutation::NotSurjective { generator, table, .. } => {
                            out.comment(&format!(
                                "generator {} misses the image submonoid in {}",
                                m.tgt().gen_name(*generator),
                                table.name
                            ));
                            out.block(text::render_monoid_block(table), json::monoid_json(table));
                        }
                    }
                    Ok(Exit::Negative)
                }
                WeqVerdict::Unknown(report) => {
                    out.comment(&format!(
                        "weq: unknown (exhausted {} after {} expansions)",
                        report.exhausted, report.expansions_used
                    ));
                    Ok(Exit::Unknown)
                }
            }
        }
        "pfib-obj" => {
            let p = ws.presentation(name)?;
            out.comment(&budget_header(b));
            match is_pseudo_fibrant(p, b.search.max_word_len) {
                Bounded::HoldsUpTo(l) => {
                    out.comment(&format!("pfib-obj: holds up to length {l}"));
                    Ok(Exit::Positive)
                }
                Bounded::Fails { witness } => {
                    out.comment(&format!("pfib-obj: fails ({witness})"));
                    Ok(Exit::Negative)
                }
            }
        }
        other => Err(AppError::Usage(format!(
            "unknown predicate `{other}` (mono|epi|cof|tfib|pfib|weq|pfib-obj)"
        ))),
    }
}

fn raw_word_text(w: &tietze::text::RawWord) -> String {
    if w.0.is_empty() {
        "1".to_string()
    } else {
        w.0.join(" ")
    }
}

fn render_raw_derivation(d: &tietze::text::RawDerivation) -> String {
    let mut out = format!("derivation {}\n", d.name);
    if let Some(over) = &d.over {
        out.push_str(&format!("over {over}\n"));
    }
    out.push_str(&format!("from {}\n", raw_word_text(&d.from)));
    out.push_str(&format!("to {}\n", raw_word_text(&d.to)));
    for s in &d.steps {
        out.push_str(&format!(
            "step {} | {} -> {} | {} {}\n",
            raw_word_text(&s.left),
            raw_word_text(&s.lhs),
            raw_word_text(&s.rhs),
            raw_word_text(&s.right),
            if s.forward { "fwd" } else { "bwd" }
        ));
    }
    out.push_str("end\n");
    out
}

fn raw_derivation_json(d: &tietze::text::RawDerivation) -> serde_json::Value {
    let word = |w: &tietze::text::RawWord| serde_json::Value::Array(
        w.0.iter().map(|s| serde_json::Value::String(s.clone())).collect(),
    );
    serde_json::json!({
        "kind": "derivation",
        "name": d.name,
        "over": d.over,
        "from": word(&d.from),
        "to": word(&d.to),
        "steps": d.steps.iter().map(|s| serde_json::json!({
            "left": word(&s.left),
            "lhs": word(&s.lhs),
            "rhs": word(&s.rhs),
            "right": word(&s.right),
            "direction": if s.forward { "fwd" } else { "bwd" },
        })).collect::<Vec<_>>(),
    })
}

fn render_raw_rules(r: &tietze::text::RawRules) -> String {
    let mut out = format!("rules for {}\n", r.over);
    for (l, rr) in &r.rules {
        out.push_str(&format!("rule {} -> {}\n", raw_word_text(l), raw_word_text(rr)));
    }
    if r.convergent {
        out.push_str("convergent\n");
    }
    out.push_str("end\n");
    out
}

fn raw_rules_json(r: &tietze::text::RawRules) -> serde_json::Value {
    let word = |w: &tietze::text::RawWord| serde_json::Value::Array(
        w.0.iter().map(|s| serde_json::Value::String(s.clone())).collect(),
    );
    serde_json::json!({
        "kind": "rules",
        "for": r.over,
        "rules": r.rules.iter().map(|(l, rr)| serde_json::json!({
            "lhs": word(l),
            "rhs": word(rr),
        })).collect::<Vec<_>>(),
        "convergent": r.convergent,
    })
}

fn render_raw_refutation(r: &tietze::text::RawRefutation) -> String {
    let mut out = format!("refutation {}\n", r.name);
    if let Some(over) = &r.over {
        out.push_str(&format!("over {over}\n"));
    }
    out.push_str(&format!("size {}\n", r.size));
    out.push_str(&format!("unit {}\n", r.unit));
    for (i, row) in r.mul.iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        out.push_str(&format!("mul {i}: {}\n", cells.join(" ")));
    }
    for (gen, elem) in &r.assign {
        out.push_str(&format!("assign {gen} -> {elem}\n"));
    }
    out.push_str(&format!("left {}\n", raw_word_text(&r.left)));
    out.push_str(&format!("right {}\n", raw_word_text(&r.right)));
    out.push_str("end\n");
    out
}

fn raw_refutation_json(r: &tietze::text::RawRefutation) -> serde_json::Value {
    serde_json::json!({
        "kind": "refutation",
        "name": r.name,
        "size": r.size,
        "unit": r.unit,
        "mul": r.mul,
        "assign": r.assign.iter().map(|(g, e)| serde_json::json!({
            "gen": g,
            "element": e,
        })).collect::<Vec<_>>(),
        "left": serde_json::Value::Array(r.left.0.iter().map(|s| serde_json::Value::String(s.clone())).collect()),
        "right": serde_json::Value::Array(r.right.0.iter().map(|s| serde_json::Value::String(s.clone())).collect()),
    })
}
