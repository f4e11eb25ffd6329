//! Command-line front end.
//!
//! Every command yields an [`Output`]: the text to print, a JSON value
//! carrying the same outcome, and the exit code (0 success, 1 type, parse
//! or law failure, 2 fuel exhaustion).

use std::io::Read;

use clap::{Parser, Subcommand};
use num_traits::ToPrimitive;
use serde_json::{json, Value as Json};

use crate::chains::{comprehension_laws, levels_table, number_chain_squares, TableEntry};
use crate::coerce::{apply_mor, apply_obj, CoercionOp};
use crate::eval::{eval_u64, normalize_point, EvalError, Fuel};
use crate::omega::{enumerate_monoid, generate_cells, generator_words, ChainIndex, CoercionKind};
use crate::props::{run_suite, Ctx, Outcome, DEFAULT_BOUND, SUITES};
use crate::terms::syntax::{print_obj, Reader};
use crate::terms::{infer_type, species_signature, strict_check, typecheck, MorTerm, MIN_CHAIN};

#[derive(Debug, Parser)]
#[command(name = "ramified", version, about = "Level-stratified recursion calculus: check, run and verify terms")]
pub struct Cli {
    /// Number of levels.
    #[arg(long, global = true, default_value_t = 4)]
    pub n: usize,
    /// Recursion unfoldings allowed per evaluation.
    #[arg(long, global = true)]
    pub fuel: Option<u64>,
    /// Largest argument value used by law checks.
    #[arg(long, global = true)]
    pub bound: Option<u64>,
    /// Reject definitions containing explicit T-images.
    #[arg(long, global = true)]
    pub strict: bool,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Type-check every definition in a file (`-` for stdin).
    Check { file: String },
    /// Evaluate a named morphism on naturals, highest level first.
    Eval {
        name: String,
        args: Vec<u64>,
        #[arg(long)]
        file: Option<String>,
    },
    /// Reduce a closed point to its numeral.
    Normalize {
        expr: String,
        #[arg(long)]
        file: Option<String>,
    },
    /// Species signature of a named morphism.
    Species {
        name: String,
        #[arg(long)]
        file: Option<String>,
    },
    /// Apply a coercion such as `T1` or `G0` to a term or object.
    Coerce {
        op: String,
        target: String,
        #[arg(long)]
        file: Option<String>,
    },
    /// Enumerate the coercion monoid on `n` levels.
    Enumerate {
        levels: usize,
        #[arg(long)]
        list: bool,
    },
    /// Run a law suite: comonoid, cartesian, derived, recursion, coercion,
    /// squares, morphisms or all.
    Verify { suite: String },
    /// Levels table and comprehension laws of the chain models.
    Model {
        levels: usize,
        /// Largest set size of the enumerated chains.
        #[arg(value_name = "BOUND")]
        max_size: usize,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub text: String,
    pub json: Json,
    pub code: i32,
}

impl Output {
    fn ok(text: String, json: Json) -> Self {
        Output { text, json, code: 0 }
    }

    fn fail(code: i32, msg: String) -> Self {
        Output {
            json: json!({ "error": msg }),
            text: msg,
            code,
        }
    }

    pub fn rendered(&self, as_json: bool) -> String {
        if as_json {
            serde_json::to_string_pretty(&self.json).expect("serialisable")
        } else {
            self.text.clone()
        }
    }
}

fn eval_failure(e: EvalError) -> Output {
    let code = if matches!(e, EvalError::FuelExhausted { .. }) { 2 } else { 1 };
    Output::fail(code, e.to_string())
}

/// Definitions, options and chain size shared by the commands.
pub struct Workspace {
    pub n: usize,
    pub reader: Reader,
    pub definitions: Vec<(String, MorTerm)>,
    pub fuel: Fuel,
    pub bound: u64,
    pub strict: bool,
}

impl Workspace {
    pub fn new(cli: &Cli) -> Self {
        Workspace {
            n: cli.n,
            reader: Reader::new(cli.n),
            definitions: Vec::new(),
            fuel: cli.fuel.map(Fuel::new).unwrap_or_default(),
            bound: cli.bound.unwrap_or(DEFAULT_BOUND),
            strict: cli.strict,
        }
    }

    /// Reads definitions; every one must type-check (and pass the strict
    /// check when requested).
    pub fn load(&mut self, src: &str) -> Result<(), String> {
        let defs = self.reader.read_program(src).map_err(|e| format!("parse error at {e}"))?;
        for (name, t) in &defs {
            typecheck(t, self.n).map_err(|e| format!("{name}: {e}"))?;
            if self.strict && !strict_check(t) {
                return Err(format!("{name}: explicit T-image rejected in strict mode"));
            }
        }
        self.definitions.extend(defs);
        Ok(())
    }

    fn lookup(&self, name: &str) -> Result<MorTerm, String> {
        self.reader
            .lookup(name)
            .cloned()
            .ok_or_else(|| format!("unknown name `{name}`"))
    }
}

fn read_source(path: &str, stdin: &mut dyn Read) -> Result<String, String> {
    if path == "-" {
        let mut s = String::new();
        stdin.read_to_string(&mut s).map_err(|e| format!("stdin: {e}"))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))
    }
}

/// Runs one command.
pub fn run(cli: &Cli, stdin: &mut dyn Read) -> Output {
    if cli.n < MIN_CHAIN {
        return Output::fail(1, format!("--n must be at least {MIN_CHAIN}"));
    }
    let mut ws = Workspace::new(cli);
    let file = match &cli.command {
        Command::Check { file } => Some(file.clone()),
        Command::Eval { file, .. }
        | Command::Normalize { file, .. }
        | Command::Species { file, .. }
        | Command::Coerce { file, .. } => file.clone(),
        _ => None,
    };
    if let Some(path) = file {
        let loaded = read_source(&path, stdin).and_then(|src| ws.load(&src));
        if let Err(e) = loaded {
            return Output::fail(1, e);
        }
    }
    match &cli.command {
        Command::Check { .. } => cmd_check(&ws),
        Command::Eval { name, args, .. } => cmd_eval(&ws, name, args),
        Command::Normalize { expr, .. } => cmd_normalize(&ws, expr),
        Command::Species { name, .. } => cmd_species(&ws, name),
        Command::Coerce { op, target, .. } => cmd_coerce(&ws, op, target),
        Command::Enumerate { levels, list } => cmd_enumerate(*levels, *list),
        Command::Verify { suite } => cmd_verify(&ws, suite),
        Command::Model { levels, max_size } => cmd_model(*levels, *max_size),
    }
}

pub fn cmd_check(ws: &Workspace) -> Output {
    let mut lines = Vec::new();
    let mut entries = Vec::new();
    for (name, t) in &ws.definitions {
        let ty = infer_type(t, ws.n).expect("checked on load");
        let species = species_signature(t, ws.n).ok().map(|s| s.to_string());
        let mut line = format!("{name} : {} -> {}", ty.dom, ty.cod);
        if let Some(s) = &species {
            line.push_str(&format!("  {s}"));
        }
        lines.push(line);
        entries.push(json!({
            "name": name,
            "dom": ty.dom.to_string(),
            "cod": ty.cod.to_string(),
            "species": species,
        }));
    }
    lines.push(format!("{} definitions ok", ws.definitions.len()));
    Output::ok(lines.join("\n"), json!({ "definitions": entries, "ok": true }))
}

pub fn cmd_eval(ws: &Workspace, name: &str, args: &[u64]) -> Output {
    let t = match ws.lookup(name) {
        Ok(t) => t,
        Err(e) => return Output::fail(1, e),
    };
    match eval_u64(&t, ws.n, args, ws.fuel) {
        Ok(vals) => {
            let strs: Vec<String> = vals.iter().map(ToString::to_string).collect();
            Output::ok(strs.join(" "), json!({ "name": name, "args": args, "values": strs }))
        }
        Err(e) => eval_failure(e),
    }
}

pub fn cmd_normalize(ws: &Workspace, expr: &str) -> Output {
    let t = match ws.reader.read_term(expr) {
        Ok(t) => t,
        Err(e) => return Output::fail(1, format!("parse error at {e}")),
    };
    match normalize_point(&t, ws.n, ws.fuel) {
        Ok(nf) => {
            let json = json!({ "level": nf.level, "index": nf.index, "numeral": nf.to_string() });
            Output::ok(nf.to_string(), json)
        }
        Err(e) => eval_failure(e),
    }
}

pub fn cmd_species(ws: &Workspace, name: &str) -> Output {
    let sig = ws.lookup(name).and_then(|t| species_signature(&t, ws.n).map_err(|e| e.to_string()));
    match sig {
        Ok(s) => Output::ok(
            s.to_string(),
            json!({ "name": name, "signature": s.to_string(), "args": s.arg_species(), "out": s.out_level }),
        ),
        Err(e) => Output::fail(1, e),
    }
}

pub fn cmd_coerce(ws: &Workspace, op: &str, target: &str) -> Output {
    let Some(c) = CoercionOp::parse(op) else {
        return Output::fail(1, format!("`{op}` is not a coercion such as T0 or G1"));
    };
    let term = ws.lookup(target).or_else(|_| ws.reader.read_term(target).map_err(|e| e.to_string()));
    if let Ok(t) = term {
        return match apply_mor(c, &t, ws.n).and_then(|img| Ok((infer_type(&img, ws.n)?, img))) {
            Ok((ty, img)) => Output::ok(
                format!("{img}\n  : {} -> {}", ty.dom, ty.cod),
                json!({ "op": c.to_string(), "term": img.to_string(), "dom": ty.dom.to_string(), "cod": ty.cod.to_string() }),
            ),
            Err(e) => Output::fail(1, e.to_string()),
        };
    }
    match ws.reader.read_obj(target) {
        Ok(x) => match apply_obj(c, &x) {
            Ok(y) => Output::ok(
                format!("{} = {}", print_obj(&y), y),
                json!({ "op": c.to_string(), "object": y.to_string() }),
            ),
            Err(e) => Output::fail(1, e.to_string()),
        },
        Err(e) => Output::fail(1, format!("`{target}` is neither a term nor an object: {e}")),
    }
}

fn word_text(w: &[(CoercionKind, usize)]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter().map(|(kind, k)| format!("{kind}{k}")).collect::<Vec<_>>().join("·")
}

pub fn cmd_enumerate(levels: usize, list: bool) -> Output {
    let idx = match ChainIndex::new(levels) {
        Ok(i) if levels >= 2 => i,
        _ => return Output::fail(1, format!("cannot enumerate on {levels} levels")),
    };
    let maps = enumerate_monoid(idx);
    let cells = generate_cells(idx);
    let mut text = format!("{} maps\n{} cells", maps.len(), cells.len());
    let words = generator_words(idx);
    let listing: Vec<Json> = maps
        .iter()
        .map(|m| json!({ "images": m.images(), "word": word_text(&words[m]) }))
        .collect();
    if list {
        for m in &maps {
            text.push_str(&format!("\n{:?}  {}", m.images(), word_text(&words[m])));
        }
    }
    Output::ok(text, json!({ "maps": maps.len(), "cells": cells.len(), "listing": listing }))
}

pub fn cmd_verify(ws: &Workspace, suite: &str) -> Output {
    let ctx = Ctx {
        n: ws.n,
        bound: ws.bound,
        fuel: ws.fuel,
    };
    let Some(report) = run_suite(suite, ctx) else {
        return Output::fail(1, format!("unknown suite `{suite}`; expected one of {} or all", SUITES.join(", ")));
    };
    let mut lines = Vec::new();
    for law in &report.laws {
        let status = if law.passed() { "PASS" } else { "FAIL" };
        let detail = match (&law.error, &law.check) {
            (Some(e), _) => format!(": {e}"),
            (None, Some(c)) => match &c.outcome {
                Outcome::Pass => format!(" ({} tuples{})", c.tuples, if c.sampled { ", sampled" } else { "" }),
                Outcome::Counterexample { input, lhs, rhs } => {
                    format!(": at ({}) {} ≠ {}", input.join(","), lhs.join(","), rhs.join(","))
                }
                Outcome::Exhausted { input, detail } => format!(": at ({}) {detail}", input.join(",")),
            },
            (None, None) => String::new(),
        };
        lines.push(format!("{status} {}{detail}", law.law));
    }
    for s in &report.skipped {
        lines.push(format!("SKIP {s}"));
    }
    let failed = report.failures().count();
    lines.push(format!("{}: {} laws, {} failed", report.suite, report.laws.len(), failed));
    let code = match (report.passed(), report.exhausted()) {
        (true, _) => 0,
        (false, true) => 2,
        (false, false) => 1,
    };
    Output {
        text: lines.join("\n"),
        json: serde_json::to_value(&report).expect("serialisable"),
        code,
    }
}

pub fn cmd_model(levels: usize, bound: usize) -> Output {
    if levels < 2 {
        return Output::fail(1, "the chain models need at least 2 levels".into());
    }
    let table = levels_table(levels);
    let mut lines = Vec::new();
    let header: Vec<String> = (0..levels).map(|j| format!("X^{j}")).collect();
    lines.push(format!("{:>6} | {}", "", header.join(" | ")));
    let mut rows = Vec::new();
    for (op, row) in &table {
        let cells: Vec<String> = row
            .iter()
            .map(|e| e.map_or_else(|| "?".to_string(), |e: TableEntry| e.to_string()))
            .collect();
        lines.push(format!("{:>6} | {}", format!("{op}^e"), cells.join(" | ")));
        rows.push(json!({ "op": op.to_string(), "row": cells }));
    }
    let report = comprehension_laws(levels, bound);
    let squares = number_chain_squares(levels, bound.max(2));
    lines.push(format!("{} chains with sets of at most {} tokens", report.objects, bound));
    for law in report.laws.iter().chain(std::iter::once(&squares)) {
        let status = if law.failures == 0 && law.instances > 0 { "PASS" } else { "FAIL" };
        lines.push(format!("{status} {} ({} instances)", law.law, law.instances));
        if let Some(ex) = &law.example {
            lines.push(format!("     first failure: {ex}"));
        }
    }
    let ok = report.passed() && squares.failures == 0;
    Output {
        text: lines.join("\n"),
        json: json!({ "table": rows, "laws": report, "number_squares": squares }),
        code: if ok { 0 } else { 1 },
    }
}

/// Parses arguments, runs, prints; returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let out = run(&cli, &mut std::io::stdin());
    let s = out.rendered(cli.json);
    if out.code == 0 || cli.json {
        println!("{s}");
    } else {
        eprintln!("{s}");
    }
    out.code
}

/// Small integer form of a value, used in tests of the front end.
pub fn first_value(out: &Output) -> Option<u64> {
    out.json["values"][0].as_str()?.parse::<num_bigint::BigUint>().ok()?.to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Output {
        let cli = Cli::try_parse_from(std::iter::once("ramified").chain(args.iter().copied())).unwrap();
        run(&cli, &mut std::io::empty())
    }

    #[test]
    fn argument_definitions() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn eval_and_species() {
        let out = run_args(&["eval", "plus", "2", "3"]);
        assert_eq!((out.text.as_str(), out.code), ("5", 0));
        assert_eq!(first_value(&out), Some(5));
        assert_eq!(run_args(&["species", "exp"]).text, "(2,1;1)");
        assert_eq!(run_args(&["eval", "nope"]).code, 1);
    }

    #[test]
    fn enumerate_and_normalize() {
        assert!(run_args(&["enumerate", "3"]).text.starts_with("10 maps"));
        let out = run_args(&["normalize", "(comp plus (tensor (num 1 2) (num 0 3)))"]);
        assert_eq!(out.text, "s^5 0 : N0");
    }

    #[test]
    fn fuel_exit_code() {
        let out = run_args(&["--fuel", "10", "eval", "times", "50", "50"]);
        assert_eq!(out.code, 2);
    }

    #[test]
    fn coerce_objects_and_terms() {
        let out = run_args(&["coerce", "G0", "(N 0)"]);
        assert_eq!(out.code, 0, "{}", out.text);
        assert!(out.text.ends_with("N1"), "{}", out.text);
        let out = run_args(&["coerce", "G0", "(succ 0)"]);
        assert_eq!(out.code, 0, "{}", out.text);
        assert!(out.text.ends_with("N1 -> N1"), "{}", out.text);
        assert_eq!(run_args(&["coerce", "G0", "succ0"]).code, 1);
        let out = run_args(&["coerce", "X0", "plus"]);
        assert_eq!(out.code, 1);
    }
}
