use std::fmt::Write as _;

use braidforge_core::braiding::braid_from_grid;
use braidforge_core::diagram::{braid_closure_to_pd, grid_to_pd, parse_braid, parse_object};
use braidforge_core::fuzz::{run_fuzz, FuzzConfig, FuzzReport};
use braidforge_core::markov::{
    apply_with, bounded_equivalence_search, random_markov_sequence, MoveCaps, SearchCaps,
};
use braidforge_core::{
    invariant_record, BraidWord, Error, Invariants, LMoveSignTable, MarkovMove, Object,
    OracleConfig, PdCode,
};
use serde::Serialize;
use serde_json::{json, Value};

use crate::input;
use crate::{Cli, Command, MarkovAction, OracleArgs, Target};

pub const OK: u8 = 0;
pub const VERIFY_FAILED: u8 = 1;
pub const INPUT_ERROR: u8 = 2;
pub const CAP_ERROR: u8 = 3;

/// Buffered result of one command.
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Input(String),
    Cap(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_resource() {
            Failure::Cap(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

impl From<String> for Failure {
    fn from(s: String) -> Self {
        Failure::Input(s)
    }
}

type Res<T> = Result<T, Failure>;

/// Output of a successful run: payload in both renderings plus exit code.
struct Report {
    code: u8,
    text: String,
    json: Value,
}

pub fn run(cli: &Cli) -> Outcome {
    let result = match &cli.command {
        Command::Validate { input } => validate(input.as_deref()),
        Command::Braid {
            input,
            trace,
            check,
            oracle,
        } => braid(input.as_deref(), *trace, *check, oracle),
        Command::Invariants {
            input,
            jones_t,
            oracle,
        } => invariants(input.as_deref(), *jones_t, oracle),
        Command::Markov { action } => match action {
            MarkovAction::Apply {
                word,
                moves,
                random,
                seed,
                max_strands,
                max_length,
                sign_table,
                oracle,
            } => markov_apply(
                word.as_deref(),
                moves.as_deref(),
                *random,
                *seed,
                MoveCaps {
                    max_strands: *max_strands,
                    max_length: *max_length,
                },
                sign_table.as_deref(),
                oracle,
            ),
        },
        Command::Fuzz {
            cases,
            seed,
            steps,
            max_strands,
            max_length,
            sign_table,
            oracle,
        } => fuzz(
            FuzzConfig {
                cases: *cases,
                seed: *seed,
                caps: MoveCaps {
                    max_strands: *max_strands,
                    max_length: *max_length,
                },
                steps: *steps,
                sign_table: LMoveSignTable::STANDARD,
                oracle: oracle_config(oracle),
            },
            sign_table.as_deref(),
        ),
        Command::Search {
            from,
            to,
            depth,
            max_strands,
            max_length,
            max_states,
        } => search(from, to, *depth, *max_strands, *max_length, *max_states),
        Command::Convert { input, to } => convert(input.as_deref(), *to),
    };
    match result {
        Ok(r) => Outcome {
            code: r.code,
            stdout: if cli.json {
                let mut s = serde_json::to_string_pretty(&r.json).expect("JSON output");
                s.push('\n');
                s
            } else {
                r.text
            },
            stderr: String::new(),
        },
        Err(f) => {
            let (code, msg) = match f {
                Failure::Input(m) => (INPUT_ERROR, m),
                Failure::Cap(m) => (CAP_ERROR, m),
            };
            Outcome {
                code,
                stdout: if cli.json {
                    format!("{}\n", json!({ "error": msg, "exit_code": code }))
                } else {
                    String::new()
                },
                stderr: format!("error: {msg}\n"),
            }
        }
    }
}

fn oracle_config(o: &OracleArgs) -> OracleConfig {
    OracleConfig {
        state_sum_cap: o.cap,
        method: o.method.into(),
    }
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn load_object(arg: Option<&str>) -> Res<Object> {
    let text = input::read(arg)?;
    Ok(parse_object(&text)?)
}

fn load_braid(arg: Option<&str>) -> Res<BraidWord> {
    let text = input::read(arg)?;
    Ok(parse_braid(&text)?)
}

fn load_sign_table(path: Option<&str>) -> Res<LMoveSignTable> {
    match path {
        None => Ok(LMoveSignTable::STANDARD),
        Some(p) => {
            let text = input::read_file(p)?;
            serde_json::from_str(&text).map_err(|e| Failure::Input(format!("sign table {p}: {e}")))
        }
    }
}

fn pd_of(obj: &Object) -> PdCode {
    match obj {
        Object::Grid(g) => grid_to_pd(g),
        Object::Braid(w) => braid_closure_to_pd(w),
        Object::Pd(pd) => pd.clone(),
    }
}

fn record_text(r: &Invariants) -> String {
    let rows: Vec<String> = r
        .linking_matrix
        .rows()
        .iter()
        .map(|row| {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            format!("[{}]", cells.join(", "))
        })
        .collect();
    format!(
        "components:         {}\nwrithe:             {}\nnormalized bracket: {}\nlinking matrix:     [{}]\nseifert circles:    {}\n",
        r.components,
        r.writhe,
        r.normalized_bracket,
        rows.join(", "),
        r.seifert_circles
    )
}

fn validate(arg: Option<&str>) -> Res<Report> {
    let obj = load_object(arg)?;
    let (summary, details) = match &obj {
        Object::Grid(g) => (
            format!(
                "valid grid: size {}, components {}, crossings {}",
                g.size(),
                g.components(),
                g.crossing_count()
            ),
            json!({ "size": g.size(), "components": g.components(), "crossings": g.crossing_count() }),
        ),
        Object::Braid(w) => (
            format!(
                "valid braid word: strands {}, letters {}, closure components {}",
                w.strands(),
                w.len(),
                w.closure_component_count()
            ),
            json!({ "strands": w.strands(), "letters": w.len(), "closure_components": w.closure_component_count() }),
        ),
        Object::Pd(pd) => (
            format!(
                "valid PD code: crossings {}, components {}",
                pd.crossing_count(),
                pd.component_count()
            ),
            json!({ "crossings": pd.crossing_count(), "components": pd.component_count() }),
        ),
    };
    Ok(Report {
        code: OK,
        text: summary + "\n",
        json: json!({ "valid": true, "kind": obj.kind(), "details": details }),
    })
}

fn braid(arg: Option<&str>, trace: bool, check: bool, oracle: &OracleArgs) -> Res<Report> {
    let grid = match load_object(arg)? {
        Object::Grid(g) => g,
        other => {
            return Err(Failure::Input(format!(
                "braid expects a grid, got a {}",
                other.kind()
            )))
        }
    };
    let (word, tr) = braid_from_grid(&grid);
    let mut text = format!("{word}\n");
    let mut out = json!({ "braid": to_json(&word), "text": word.to_string() });
    let mut code = OK;
    if trace {
        text.push_str(&serde_json::to_string_pretty(&tr).expect("trace JSON"));
        text.push('\n');
        out["trace"] = to_json(&tr);
    }
    if check {
        let cfg = oracle_config(oracle);
        let a: Invariants = invariant_record(&grid_to_pd(&grid), &cfg)?;
        let b: Invariants = invariant_record(&braid_closure_to_pd(&word), &cfg)?;
        let mismatches = a.mismatches(&b);
        if mismatches.is_empty() {
            text.push_str("check: ok\n");
        } else {
            code = VERIFY_FAILED;
            let _ = writeln!(text, "check: FAILED ({})", mismatches.join(", "));
        }
        out["check"] = json!({
            "ok": mismatches.is_empty(),
            "mismatches": mismatches,
            "grid": to_json(&a),
            "closure": to_json(&b),
        });
    }
    Ok(Report {
        code,
        text,
        json: out,
    })
}

fn invariants(arg: Option<&str>, jones_t: bool, oracle: &OracleArgs) -> Res<Report> {
    let obj = load_object(arg)?;
    let rec: Invariants = invariant_record(&pd_of(&obj), &oracle_config(oracle))?;
    let mut text = record_text(&rec);
    let mut out = to_json(&rec);
    if jones_t {
        let jones = rec.normalized_bracket.to_jones_string();
        let _ = writeln!(text, "jones (t):          {jones}");
        out["jones_t"] = json!(jones);
    }
    Ok(Report {
        code: OK,
        text,
        json: out,
    })
}

#[derive(Serialize)]
struct Step {
    #[serde(rename = "move")]
    mv: MarkovMove,
    word: String,
    preserved: bool,
    mismatches: Vec<&'static str>,
}

fn markov_apply(
    word: Option<&str>,
    moves: Option<&str>,
    random: Option<usize>,
    seed: u64,
    caps: MoveCaps,
    sign_table: Option<&str>,
    oracle: &OracleArgs,
) -> Res<Report> {
    let start = load_braid(word)?;
    let table = load_sign_table(sign_table)?;
    let path: Vec<MarkovMove> = match (moves, random) {
        (Some(file), _) => {
            let text = input::read_file(file)?;
            serde_json::from_str(&text).map_err(|e| Failure::Input(format!("moves {file}: {e}")))?
        }
        (None, Some(n)) => random_markov_sequence(&start, n, &caps, seed).1,
        (None, None) => return Err(Failure::Input("need --moves or --random".into())),
    };
    let cfg = oracle_config(oracle);
    let base: Invariants = invariant_record(&braid_closure_to_pd(&start), &cfg)?;
    let mut cur = start.clone();
    let mut steps = Vec::with_capacity(path.len());
    let mut text = format!("start:  {start}\n");
    for (k, mv) in path.iter().enumerate() {
        cur = apply_with(&cur, mv, &table)
            .map_err(|e| Failure::Input(format!("move {} ({}): {e}", k + 1, mv.name())))?;
        let rec: Invariants = invariant_record(&braid_closure_to_pd(&cur), &cfg)?;
        let mismatches = base.mismatches(&rec);
        let _ = writeln!(
            text,
            "{:>4}. {:<44} -> {}{}",
            k + 1,
            serde_json::to_string(mv).expect("move JSON"),
            cur,
            if mismatches.is_empty() {
                String::new()
            } else {
                format!("  [changed: {}]", mismatches.join(", "))
            }
        );
        steps.push(Step {
            mv: *mv,
            word: cur.to_string(),
            preserved: mismatches.is_empty(),
            mismatches,
        });
    }
    let preserved = steps.iter().all(|s| s.preserved);
    let _ = writeln!(text, "result: {cur}");
    text.push_str(if preserved {
        "invariants preserved\n"
    } else {
        "invariants CHANGED\n"
    });
    Ok(Report {
        code: if preserved { OK } else { VERIFY_FAILED },
        text,
        json: json!({
            "start": start.to_string(),
            "steps": to_json(&steps),
            "result": cur.to_string(),
            "result_word": to_json(&cur),
            "preserved": preserved,
        }),
    })
}

fn fuzz(mut cfg: FuzzConfig, sign_table: Option<&str>) -> Res<Report> {
    cfg.sign_table = load_sign_table(sign_table)?;
    let report: FuzzReport = run_fuzz(&cfg)?;
    let mut text = String::new();
    match &report.counterexample {
        None => {
            let _ = writeln!(
                text,
                "fuzz: {} cases, {} moves, seed {}: all invariants preserved",
                report.cases, report.moves_checked, cfg.seed
            );
        }
        Some(c) => {
            let _ = writeln!(text, "fuzz: counterexample in case {} (minimized)", c.case);
            let _ = writeln!(text, "  word:    {}", c.word);
            let _ = writeln!(
                text,
                "  move:    {}",
                serde_json::to_string(&c.mv).expect("move JSON")
            );
            let _ = writeln!(text, "  result:  {}", c.result);
            let _ = writeln!(text, "  changed: {}", c.mismatches.join(", "));
        }
    }
    Ok(Report {
        code: if report.passed() { OK } else { VERIFY_FAILED },
        text,
        json: to_json(&report),
    })
}

fn search(
    from: &str,
    to: &str,
    depth: usize,
    max_strands: Option<usize>,
    max_length: Option<usize>,
    max_states: usize,
) -> Res<Report> {
    let a = load_braid(Some(from))?;
    let b = load_braid(Some(to))?;
    let caps = SearchCaps {
        depth,
        strands: max_strands.unwrap_or_else(|| 4.max(a.strands()).max(b.strands())),
        length: max_length.unwrap_or_else(|| 8.max(a.len()).max(b.len())),
        max_states,
    };
    let outcome = bounded_equivalence_search(&a, &b, &caps);
    let mut text = String::new();
    match &outcome.path {
        Some(path) => {
            let _ = writeln!(
                text,
                "path found: length {}, {} words explored",
                path.len(),
                outcome.explored
            );
            for (k, m) in path.iter().enumerate() {
                let _ = writeln!(
                    text,
                    "{:>4}. {}",
                    k + 1,
                    serde_json::to_string(m).expect("move JSON")
                );
            }
        }
        None => {
            let _ = writeln!(
                text,
                "not found within caps: {} words explored{}",
                outcome.explored,
                if outcome.truncated {
                    ", state cap reached"
                } else {
                    ""
                }
            );
        }
    }
    Ok(Report {
        code: OK,
        text,
        json: json!({ "found": outcome.path.is_some(), "caps": to_json(&caps), "outcome": to_json(&outcome) }),
    })
}

fn convert(arg: Option<&str>, to: Target) -> Res<Report> {
    let obj = load_object(arg)?;
    let unsupported = |obj: &Object| {
        Failure::Input(format!(
            "cannot convert a {} to {}",
            obj.kind(),
            match to {
                Target::Grid => "a grid",
                Target::Pd => "a PD code",
                Target::BraidClosurePd => "a braid closure PD code",
            }
        ))
    };
    let pd_report = |pd: PdCode| {
        let v = to_json(&pd);
        Report {
            code: OK,
            text: format!("{}\n", serde_json::to_string(&v).expect("PD JSON")),
            json: v,
        }
    };
    match (to, &obj) {
        (Target::Grid, Object::Grid(g)) => Ok(Report {
            code: OK,
            text: format!("{g}\n"),
            json: to_json(g),
        }),
        (Target::Pd, Object::Grid(g)) => Ok(pd_report(grid_to_pd(g))),
        (Target::Pd, Object::Pd(pd)) => Ok(pd_report(pd.clone())),
        (Target::Pd | Target::BraidClosurePd, Object::Braid(w)) => {
            Ok(pd_report(braid_closure_to_pd(w)))
        }
        _ => Err(unsupported(&obj)),
    }
}
