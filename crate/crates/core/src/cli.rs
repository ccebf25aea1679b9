//! The `rws-lab` command line.
//!
//! Every subcommand produces a [`Report`] printed either as text or JSON.
//! Exit codes: 0 success or property holds, 1 property fails or a
//! counterexample was found, 2 inconclusive (cap, radius or resource
//! bound), 3 usage or parse error.

use std::ffi::OsString;
use std::io::Write;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::alphabet::Word;
use crate::automata::{
    combine_dfa, count_words, dfa_equivalent, enumerate_words, factor_free_dfa, parse_regex,
    regex_to_dfa, Dfa, SetOp,
};
use crate::builtin;
use crate::congruence::{
    build_ball, congruence_closure, default_radius, probe_all_pairs, scenario_suite,
    ClosureStrategy,
};
use crate::coset::{monoid_to_group_presentation, todd_coxeter, CosetError, DEFAULT_MAX_COSETS};
use crate::greens::{
    check_invertible_languages, j_one_witness, left_inverse_witness, product_avoidance_probe,
    right_inverse_witness, Witness, WitnessReport,
};
use crate::rewriting::{parse_system, CompleteSystem, OverlapKind, RewritingSystem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Inconclusive => 2,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

pub const USAGE_EXIT: i32 = 3;

/// Machine-readable result of one invocation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub system: String,
    pub verdict: Verdict,
    pub data: Value,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Parser)]
#[command(name = "rws-lab", version, about = "String-rewriting workbench")]
struct Cli {
    /// System file to load.
    #[arg(long, global = true, value_name = "FILE")]
    system: Option<String>,
    /// Built-in system name (`cm-monoid`).
    #[arg(long, global = true, value_name = "NAME")]
    builtin: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for parallel searches.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Print elapsed time on standard error.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Completeness report.
    Check,
    Normalize {
        #[arg(long)]
        word: String,
    },
    Equal {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// List normal forms in shortlex order.
    NfEnum {
        #[arg(long)]
        max_len: usize,
    },
    /// Count normal forms by length.
    NfCount {
        #[arg(long)]
        max_len: usize,
    },
    /// Verify the normal-form language (and, for the builtin, the
    /// one-sided-unit languages).
    LangVerify {
        /// Regex the normal forms should match (after removing `e e e` for
        /// the builtin).
        #[arg(long)]
        regex: Option<String>,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
        #[arg(long, default_value_t = 10)]
        cap: usize,
    },
    Inverse {
        #[arg(long, value_enum)]
        side: Side,
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = 10)]
        cap: usize,
    },
    JWitness {
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = 10)]
        cap: usize,
    },
    BisimpleProbe {
        #[arg(long)]
        target: String,
        #[arg(long, default_value_t = 8)]
        cap: usize,
        /// Left-invertible language (required for non-builtin systems).
        #[arg(long)]
        left_regex: Option<String>,
        /// Right-invertible language (required for non-builtin systems).
        #[arg(long)]
        right_regex: Option<String>,
    },
    CongClose {
        /// Generating pairs, `U=V;U=V;...`.
        #[arg(long)]
        pairs: String,
        #[arg(long)]
        radius: usize,
    },
    CongProbe {
        #[arg(long)]
        sum_bound: usize,
        /// Defaults to sum bound + 6.
        #[arg(long)]
        radius: Option<usize>,
    },
    /// Closure scenarios for each case of the congruence-freeness argument.
    Scenarios,
    /// Todd–Coxeter enumeration of the group image.
    Tc {
        #[arg(long, default_value_t = DEFAULT_MAX_COSETS)]
        max_cosets: usize,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Check => "check",
            Command::Normalize { .. } => "normalize",
            Command::Equal { .. } => "equal",
            Command::NfEnum { .. } => "nf-enum",
            Command::NfCount { .. } => "nf-count",
            Command::LangVerify { .. } => "lang-verify",
            Command::Inverse { .. } => "inverse",
            Command::JWitness { .. } => "j-witness",
            Command::BisimpleProbe { .. } => "bisimple-probe",
            Command::CongClose { .. } => "cong-close",
            Command::CongProbe { .. } => "cong-probe",
            Command::Scenarios => "scenarios",
            Command::Tc { .. } => "tc",
        }
    }
}

/// A usage, parse or precondition error, reported with exit code 3.
#[derive(Debug)]
pub struct UsageError(pub String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

struct Loaded {
    name: String,
    sys: RewritingSystem,
    is_builtin: bool,
}

impl Loaded {
    fn word(&self, text: &str) -> Result<Word, UsageError> {
        Ok(self.sys.parse_word(text)?)
    }

    fn fmt(&self, w: &Word) -> String {
        self.sys.format(w)
    }

    fn complete(&self) -> Result<CompleteSystem, UsageError> {
        CompleteSystem::certify(self.sys.clone())
            .map_err(|_| UsageError("system is not complete; run `check` for details".into()))
    }

    fn regex_dfa(&self, text: &str) -> Result<Dfa, UsageError> {
        Ok(regex_to_dfa(&parse_regex(text, self.sys.alphabet())?))
    }
}

fn load(cli: &Cli) -> Result<Loaded, UsageError> {
    match (&cli.system, &cli.builtin) {
        (Some(_), Some(_)) => Err(UsageError("use only one of --system and --builtin".into())),
        (None, None) => Err(UsageError("a system is required: --system FILE or --builtin cm-monoid".into())),
        (None, Some(name)) if name == builtin::CM_MONOID_NAME => Ok(Loaded {
            name: name.clone(),
            sys: builtin::cm_monoid(),
            is_builtin: true,
        }),
        (None, Some(name)) => Err(UsageError(format!("unknown builtin `{name}`"))),
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| UsageError(format!("cannot read {path}: {e}")))?;
            let sys = parse_system(&text).map_err(|e| UsageError(format!("{path}: {e}")))?;
            Ok(Loaded {
                name: path.clone(),
                sys,
                is_builtin: false,
            })
        }
    }
}

struct Outcome {
    verdict: Verdict,
    data: Value,
    lines: Vec<String>,
}

fn outcome(verdict: Verdict, data: Value, lines: Vec<String>) -> Result<Outcome, UsageError> {
    Ok(Outcome {
        verdict,
        data,
        lines,
    })
}

fn pass_if(ok: bool, otherwise: Verdict) -> Verdict {
    if ok {
        Verdict::Pass
    } else {
        otherwise
    }
}

fn witness_json(l: &Loaded, r: &WitnessReport) -> Value {
    let witness = match &r.witness {
        None => Value::Null,
        Some(Witness::Single(v)) => json!(l.fmt(v)),
        Some(Witness::Pair(p, q)) => json!({ "p": l.fmt(p), "q": l.fmt(q) }),
    };
    json!({
        "subject": l.fmt(&r.subject),
        "witness": witness,
        "search_cap": r.search_cap,
        "found": r.found(),
        "verified": r.verify(&l.sys),
    })
}

fn cmd_check(l: &Loaded) -> Result<Outcome, UsageError> {
    let report = l.sys.check_complete();
    let complete = report.complete();
    let nontrivial = report.nontrivial_pairs().count();
    let mut lines = vec![
        format!(
            "{}; critical pairs: {nontrivial}",
            if complete { "complete" } else { "incomplete" },
        ),
        format!(
            "superpositions: {} ({} trivial)",
            report.critical_pairs.len(),
            report.critical_pairs.len() - nontrivial
        ),
    ];
    let mut rules = Vec::new();
    for (rule, verdict) in l.sys.rules().iter().zip(&report.order.verdicts) {
        let text = format!("{} -> {}", l.fmt(&rule.lhs), l.fmt(&rule.rhs));
        lines.push(format!("rule {text} : {}", verdict.as_str()));
        rules.push(json!({ "rule": text, "order": verdict.as_str() }));
    }
    let pair_json = |p: &crate::rewriting::CriticalPair| {
        json!({
            "superposition": l.fmt(&p.superposition),
            "left": l.fmt(&p.left_result),
            "right": l.fmt(&p.right_result),
            "kind": match p.kind { OverlapKind::Overlap => "overlap", OverlapKind::Containment => "containment" },
            "trivial": p.is_trivial(),
        })
    };
    for p in &report.unjoinable {
        lines.push(format!(
            "unjoinable {} -> {} | {}",
            l.fmt(&p.superposition),
            l.fmt(&p.left_result),
            l.fmt(&p.right_result)
        ));
    }
    outcome(
        pass_if(complete, Verdict::Fail),
        json!({
            "complete": complete,
            "rules": rules,
            "critical_pairs": nontrivial,
            "superpositions": report.critical_pairs.iter().map(pair_json).collect::<Vec<_>>(),
            "unjoinable": report.unjoinable.iter().map(pair_json).collect::<Vec<_>>(),
        }),
        lines,
    )
}

fn cmd_lang_verify(
    l: &Loaded,
    regex: Option<&str>,
    max_len: usize,
    cap: usize,
) -> Result<Outcome, UsageError> {
    let nf = factor_free_dfa(l.sys.alphabet(), &l.sys.left_hand_sides()).minimize();
    let mut lines = Vec::new();
    let mut checks = Vec::new();
    let mut ok = true;

    let regex = regex.or(if l.is_builtin {
        Some(builtin::NORMAL_FORM_REGEX)
    } else {
        None
    });
    match regex {
        Some(text) => {
            let mut other = l.regex_dfa(text)?;
            if l.is_builtin {
                let eee = factor_free_dfa(l.sys.alphabet(), &[l.word("e e e")?]);
                other = combine_dfa(SetOp::Intersect, &other, &eee)?;
            }
            let other = other.minimize();
            let eq = dfa_equivalent(&nf, &other)?;
            ok &= eq.equivalent;
            let cx = eq.counterexample.as_ref().map(|w| l.fmt(w));
            lines.push(format!(
                "normal forms vs regex: {}{}",
                if eq.equivalent { "equivalent" } else { "different" },
                cx.as_ref().map(|c| format!(" (counterexample {c})")).unwrap_or_default()
            ));
            lines.push(format!("states: {} vs {}", nf.num_states(), other.num_states()));
            checks.push(json!({
                "check": "normal-form-regex",
                "regex": text,
                "equivalent": eq.equivalent,
                "identical_minimal": nf == other,
                "states": [nf.num_states(), other.num_states()],
                "counterexample": cx,
            }));
        }
        None => {
            let counts = count_words(&nf, max_len)?;
            let mut brute = vec![0u64; max_len + 1];
            for w in l.sys.normal_forms(max_len) {
                brute[w.len()] += 1;
            }
            let same = counts == brute;
            ok &= same;
            lines.push(format!(
                "normal-form automaton vs rewriting, lengths 0..={max_len}: {}",
                if same { "agree" } else { "disagree" }
            ));
            checks.push(json!({
                "check": "normal-form-counts",
                "max_len": max_len,
                "agree": same,
                "dfa_counts": counts,
                "rewriting_counts": brute,
            }));
        }
    }

    if l.is_builtin {
        let sys = l.complete()?;
        let right = builtin::right_invertible_language(&sys);
        let left = builtin::left_invertible_language(&sys);
        let inv = check_invertible_languages(&sys, max_len, cap, &right, &left);
        ok &= inv.passed();
        lines.push(format!(
            "one-sided units on {} normal forms (length <= {max_len}, cap {cap}): right {} left {} disagreements {}",
            inv.words_checked, inv.right_found, inv.left_found, inv.disagreements.len()
        ));
        for d in &inv.disagreements {
            lines.push(format!(
                "disagreement {} side={:?} in_language={} found={}",
                l.fmt(&d.word),
                d.side,
                d.in_language,
                d.found
            ));
        }
        checks.push(json!({
            "check": "invertible-languages",
            "max_len": max_len,
            "cap": cap,
            "words": inv.words_checked,
            "right_found": inv.right_found,
            "left_found": inv.left_found,
            "disagreements": inv.disagreements.iter().map(|d| l.fmt(&d.word)).collect::<Vec<_>>(),
        }));
    }
    outcome(pass_if(ok, Verdict::Fail), json!({ "checks": checks }), lines)
}

fn cmd_inverse(l: &Loaded, side: Side, word: &str, cap: usize) -> Result<Outcome, UsageError> {
    let sys = l.complete()?;
    let w = l.word(word)?;
    let r = match side {
        Side::Right => right_inverse_witness(&sys, &w, cap),
        Side::Left => left_inverse_witness(&sys, &w, cap),
    };
    let line = match &r.witness {
        Some(Witness::Single(v)) => format!("{} inverse of {}: {}", side_name(side), l.fmt(&w), l.fmt(v)),
        _ => format!("{} inverse of {}: not found within cap {cap}", side_name(side), l.fmt(&w)),
    };
    let mut data = witness_json(l, &r);
    data["side"] = json!(side_name(side));
    outcome(pass_if(r.found(), Verdict::Inconclusive), data, vec![line])
}

fn side_name(side: Side) -> &'static str {
    match side {
        Side::Left => "left",
        Side::Right => "right",
    }
}

fn cmd_j_witness(l: &Loaded, word: &str, cap: usize) -> Result<Outcome, UsageError> {
    let sys = l.complete()?;
    let w = l.word(word)?;
    let r = j_one_witness(&sys, &w, cap);
    let line = match &r.witness {
        Some(Witness::Pair(p, q)) => format!("p = {}, q = {} : p w q = 1", l.fmt(p), l.fmt(q)),
        _ => format!("no (p, q) within cap {cap}"),
    };
    outcome(pass_if(r.found(), Verdict::Inconclusive), witness_json(l, &r), vec![line])
}

fn cmd_bisimple(
    l: &Loaded,
    target: &str,
    cap: usize,
    left: Option<&str>,
    right: Option<&str>,
) -> Result<Outcome, UsageError> {
    let sys = l.complete()?;
    let target = l.word(target)?;
    let (left, right) = match (left, right) {
        (Some(a), Some(b)) => (l.regex_dfa(a)?.minimize(), l.regex_dfa(b)?.minimize()),
        (None, None) if l.is_builtin => (
            builtin::left_invertible_language(&sys),
            builtin::right_invertible_language(&sys),
        ),
        _ => {
            return Err(UsageError(
                "--left-regex and --right-regex are required for this system".into(),
            ))
        }
    };
    let probe = product_avoidance_probe(&sys, &target, &left, &right, cap);
    let mut lines = vec![format!(
        "target {} : {} left x {} right candidates, {} pairs checked",
        l.fmt(&probe.target),
        probe.left_count,
        probe.right_count,
        probe.pairs_checked
    )];
    let violation = probe.violation.as_ref().map(|(p, q)| {
        lines.push(format!("violation p = {}, q = {}", l.fmt(p), l.fmt(q)));
        json!({ "p": l.fmt(p), "q": l.fmt(q) })
    });
    outcome(
        pass_if(probe.passed(), Verdict::Fail),
        json!({
            "target": l.fmt(&probe.target),
            "cap": cap,
            "left_count": probe.left_count,
            "right_count": probe.right_count,
            "pairs_checked": probe.pairs_checked,
            "violation": violation,
        }),
        lines,
    )
}

fn parse_pairs(l: &Loaded, text: &str) -> Result<Vec<(Word, Word)>, UsageError> {
    let mut out = Vec::new();
    for part in text.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let (u, v) = part
            .split_once('=')
            .ok_or_else(|| UsageError(format!("pair `{part}` is not of the form U=V")))?;
        out.push((l.word(u)?, l.word(v)?));
    }
    Ok(out)
}

fn cmd_cong_close(l: &Loaded, pairs: &str, radius: usize) -> Result<Outcome, UsageError> {
    let sys = l.complete()?;
    let pairs = parse_pairs(l, pairs)?;
    let ball = build_ball(&sys, radius)?;
    let partition = congruence_closure(&ball, &pairs, ClosureStrategy::default())?;
    let collapsed = ball
        .generator_indices()
        .is_some_and(|g| partition.all_same(&g));
    let classes: Vec<Vec<String>> = partition
        .nontrivial_classes()
        .iter()
        .map(|c| c.iter().map(|&i| l.fmt(ball.element(i))).collect())
        .collect();
    let mut lines = vec![format!(
        "ball radius {radius}: {} elements, {} classes, passes={}",
        ball.len(),
        partition.class_count(),
        partition.passes()
    )];
    lines.push(format!(
        "generators {}",
        if collapsed { "collapsed" } else { "not collapsed" }
    ));
    for c in &classes {
        let shown: Vec<&str> = c.iter().take(8).map(String::as_str).collect();
        let more = if c.len() > 8 { format!(" ... ({} total)", c.len()) } else { String::new() };
        lines.push(format!("class {}{more}", shown.join(" | ")));
    }
    outcome(
        Verdict::Pass,
        json!({
            "radius": radius,
            "ball_size": ball.len(),
            "classes": partition.class_count(),
            "passes": partition.passes(),
            "generators_collapsed": collapsed,
            "nontrivial_classes": classes,
        }),
        lines,
    )
}

fn cmd_cong_probe(l: &Loaded, sum_bound: usize, radius: Option<usize>) -> Result<Outcome, UsageError> {
    let sys = l.complete()?;
    let radius = radius.unwrap_or_else(|| default_radius(sum_bound));
    let report = probe_all_pairs(&sys, sum_bound, radius)?;
    let mut lines = Vec::new();
    let mut pairs = Vec::new();
    for p in &report.pairs {
        lines.push(format!(
            "pair {} | {} : {} passes={}",
            l.fmt(&p.u),
            l.fmt(&p.v),
            p.verdict.as_str(),
            p.passes
        ));
        pairs.push(json!({ "u": l.fmt(&p.u), "v": l.fmt(&p.v), "verdict": p.verdict, "passes": p.passes }));
    }
    lines.push(format!(
        "tested={} collapsed={} inconclusive={}",
        report.tested(),
        report.collapsed(),
        report.inconclusive()
    ));
    outcome(
        pass_if(report.all_collapsed(), Verdict::Inconclusive),
        json!({
            "sum_bound": sum_bound,
            "radius": radius,
            "ball_size": report.ball_size,
            "tested": report.tested(),
            "collapsed": report.collapsed(),
            "inconclusive": report.inconclusive(),
            "max_passes": report.max_passes(),
            "pairs": pairs,
        }),
        lines,
    )
}

fn cmd_scenarios(l: &Loaded) -> Result<Outcome, UsageError> {
    let sys = l.complete()?;
    let report = scenario_suite(&sys)?;
    let mut lines = Vec::new();
    let mut rows = Vec::new();
    for o in &report.outcomes {
        lines.push(format!(
            "case {} [{}] {} | {} radius={} : {} passes={}",
            o.case.name,
            o.case.description,
            l.fmt(&o.case.u),
            l.fmt(&o.case.v),
            o.radius,
            o.verdict.as_str(),
            o.passes
        ));
        rows.push(json!({
            "name": o.case.name,
            "u": l.fmt(&o.case.u),
            "v": l.fmt(&o.case.v),
            "alpha": o.case.alpha,
            "beta": o.case.beta,
            "gamma": o.case.gamma,
            "radius": o.radius,
            "verdict": o.verdict,
            "passes": o.passes,
        }));
    }
    outcome(
        pass_if(report.all_collapsed(), Verdict::Inconclusive),
        json!({ "scenarios": rows }),
        lines,
    )
}

fn cmd_tc(l: &Loaded, max_cosets: usize) -> Result<Outcome, UsageError> {
    let pres = monoid_to_group_presentation(&l.sys);
    let relators: Vec<String> = pres.relators().iter().map(|r| pres.format_relator(r)).collect();
    match todd_coxeter(&pres, max_cosets) {
        Ok(table) => {
            let index = table.index();
            let lines = vec![
                format!("relators: {}", relators.join(", ")),
                format!(
                    "index {index} ({} cosets defined); group image {}",
                    table.cosets_defined(),
                    if index == 1 { "trivial" } else { "nontrivial" }
                ),
                table.to_text().trim_end().to_string(),
            ];
            outcome(
                pass_if(index == 1, Verdict::Fail),
                json!({
                    "relators": relators,
                    "index": index,
                    "cosets_defined": table.cosets_defined(),
                    "verified": table.verify(),
                    "table": table.to_text(),
                }),
                lines,
            )
        }
        Err(CosetError::ResourceExhausted { max_cosets }) => outcome(
            Verdict::Inconclusive,
            json!({ "relators": relators, "exhausted": true, "max_cosets": max_cosets }),
            vec![format!("enumeration exceeded {max_cosets} cosets")],
        ),
        Err(e) => Err(e.into()),
    }
}

fn dispatch(l: &Loaded, command: &Command) -> Result<Outcome, UsageError> {
    match command {
        Command::Check => cmd_check(l),
        Command::Normalize { word } => {
            let w = l.word(word)?;
            let (nf, steps) = l.sys.normalize_counting(&w);
            outcome(
                Verdict::Pass,
                json!({ "word": l.fmt(&w), "normal_form": l.fmt(&nf), "steps": steps }),
                vec![l.fmt(&nf)],
            )
        }
        Command::Equal { left, right } => {
            let (u, v) = (l.word(left)?, l.word(right)?);
            let eq = l.sys.words_equal(&u, &v);
            // equal normal forms prove equality even without certification
            let verdict = match (eq.equal, eq.certified) {
                (true, _) => Verdict::Pass,
                (false, true) => Verdict::Fail,
                (false, false) => Verdict::Inconclusive,
            };
            let line = format!(
                "{} {} {}{}",
                l.fmt(&u),
                if eq.equal { "=" } else { "!=" },
                l.fmt(&v),
                if eq.certified { "" } else { " (not certified)" }
            );
            outcome(
                verdict,
                json!({
                    "left": l.fmt(&l.sys.normalize(&u)),
                    "right": l.fmt(&l.sys.normalize(&v)),
                    "equal": eq.equal,
                    "certified": eq.certified,
                }),
                vec![line],
            )
        }
        Command::NfEnum { max_len } => {
            let dfa = factor_free_dfa(l.sys.alphabet(), &l.sys.left_hand_sides());
            let words: Vec<String> = enumerate_words(&dfa, *max_len).iter().map(|w| l.fmt(w)).collect();
            outcome(
                Verdict::Pass,
                json!({ "max_len": max_len, "count": words.len(), "words": words }),
                words.clone(),
            )
        }
        Command::NfCount { max_len } => {
            let dfa = factor_free_dfa(l.sys.alphabet(), &l.sys.left_hand_sides());
            let counts = count_words(&dfa, *max_len)?;
            let lines = counts
                .iter()
                .enumerate()
                .map(|(k, c)| format!("{k} {c}"))
                .collect();
            outcome(Verdict::Pass, json!({ "max_len": max_len, "counts": counts }), lines)
        }
        Command::LangVerify {
            regex,
            max_len,
            cap,
        } => cmd_lang_verify(l, regex.as_deref(), *max_len, *cap),
        Command::Inverse { side, word, cap } => cmd_inverse(l, *side, word, *cap),
        Command::JWitness { word, cap } => cmd_j_witness(l, word, *cap),
        Command::BisimpleProbe {
            target,
            cap,
            left_regex,
            right_regex,
        } => cmd_bisimple(l, target, *cap, left_regex.as_deref(), right_regex.as_deref()),
        Command::CongClose { pairs, radius } => cmd_cong_close(l, pairs, *radius),
        Command::CongProbe { sum_bound, radius } => cmd_cong_probe(l, *sum_bound, *radius),
        Command::Scenarios => {
            if !l.is_builtin {
                return Err(UsageError("scenarios require --builtin cm-monoid".into()));
            }
            cmd_scenarios(l)
        }
        Command::Tc { max_cosets } => cmd_tc(l, *max_cosets),
    }
}

/// Renders a report as text: the command's lines, then `verdict: <v>`.
pub fn render_text(lines: &[String], verdict: Verdict) -> String {
    let mut s = String::new();
    for line in lines {
        s.push_str(line);
        s.push('\n');
    }
    s.push_str("verdict: ");
    s.push_str(verdict.as_str());
    s.push('\n');
    s
}

/// Runs one invocation, writing the report to `out` and diagnostics to
/// `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("invalid arguments");
            let first = first.strip_prefix("error: ").unwrap_or(first);
            let _ = writeln!(err, "error: {first}");
            return USAGE_EXIT;
        }
    };
    let started = Instant::now();
    let result = (|| {
        let loaded = load(&cli)?;
        let o = match cli.jobs {
            Some(n) => rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| UsageError(e.to_string()))?
                .install(|| dispatch(&loaded, &cli.command))?,
            None => dispatch(&loaded, &cli.command)?,
        };
        Ok::<_, UsageError>((loaded.name, o))
    })();
    let code = match result {
        Ok((system, o)) => {
            let report = Report {
                command: cli.command.name().to_string(),
                system,
                verdict: o.verdict,
                data: o.data,
            };
            let text = match cli.format {
                Format::Text => render_text(&o.lines, report.verdict),
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&report).expect("json");
                    s.push('\n');
                    s
                }
            };
            let _ = out.write_all(text.as_bytes());
            report.verdict.exit_code()
        }
        Err(UsageError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            USAGE_EXIT
        }
    };
    if cli.timing {
        let _ = writeln!(err, "timing: {} ms", started.elapsed().as_millis());
    }
    code
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("rws-lab").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn check_builtin() {
        let (code, out, _) = call(&["check", "--builtin", "cm-monoid"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("complete; critical pairs: 0\n"));
    }

    #[test]
    fn normalize_builtin() {
        let (code, out, _) = call(&["normalize", "--builtin", "cm-monoid", "--word", "x e e y y"]);
        assert_eq!(code, 0);
        assert_eq!(out, "1\nverdict: pass\n");
    }

    #[test]
    fn usage_errors() {
        let (code, _, err) = call(&["check"]);
        assert_eq!(code, 3);
        assert!(err.starts_with("error: "));
        let (code, _, err) = call(&["bogus", "--builtin", "cm-monoid"]);
        assert_eq!(code, 3);
        assert!(err.starts_with("error: "));
        let (code, _, err) = call(&["normalize", "--builtin", "cm-monoid", "--word", "z"]);
        assert_eq!(code, 3);
        assert_eq!(err, "error: unknown symbol `z`\n");
        let (code, _, _) = call(&["check", "--builtin", "nope"]);
        assert_eq!(code, 3);
    }

    #[test]
    fn inconclusive_inverse() {
        let (code, out, _) = call(&["inverse", "--builtin", "cm-monoid", "--side", "right", "--word", "e", "--cap", "6"]);
        assert_eq!(code, 2);
        assert!(out.contains("not found within cap 6"));
    }

    #[test]
    fn json_report_round_trips() {
        let (code, out, _) = call(&["j-witness", "--builtin", "cm-monoid", "--word", "y x", "--format", "json"]);
        assert_eq!(code, 0);
        let report: Report = serde_json::from_str(&out).unwrap();
        assert_eq!(report.command, "j-witness");
        assert_eq!(report.verdict, Verdict::Pass);
        assert_eq!(report.data["witness"], json!({ "p": "x", "q": "y" }));
        let again = serde_json::to_string_pretty(&report).unwrap();
        assert_eq!(serde_json::from_str::<Report>(&again).unwrap(), report);
    }
}
