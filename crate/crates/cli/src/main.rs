//! `skeinx`: batch frontend for skein-core.
//!
//! Exit codes: 0 success, 1 failing self-test, 2 invalid input, 3 internal
//! contract violation.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use skein_core::coeff::Variant;
use skein_core::formal::{expand_formal, FormalError, GroupoidPresentation};
use skein_core::framed::{
    decomposition_json, framed_expand, specialize_v_to_one, specialize_v_to_q, torus_decomposition,
    FramedError, TorusData, TotallyFramedLink,
};
use skein_core::jonesq::{
    a_q_eval, a_q_functorial, a_q_running, delta_prime, eps_of, i_q, jones_monodromy, p_q,
    random_word, JonesqError, Normalization,
};
use skein_core::loops::{LinClass, LoopError, SingularSum, TransversalLoop};
use skein_core::selftest::{report_json, run, scope_ids, Corpus, KNOWN_UNATTAINABLE};
use skein_core::skein::{expand_vassiliev, Engine, Mode, PotentialSpec, SkeinError, VassilievForm};
use skein_core::Presentation;

#[derive(Parser)]
#[command(name = "skeinx", version, about = "Exact skein expansions of links")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Ambient of the input; inferred from the input when omitted.
    #[arg(long, value_enum)]
    ambient: Option<AmbientArg>,
    #[arg(long, value_enum, default_value = "oriented")]
    variant: VariantArg,
    /// `exact`, `trunc` or `truncN`.
    #[arg(long, default_value = "exact")]
    mode: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the result here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Copy, Clone, ValueEnum)]
enum AmbientArg {
    Disk,
    Annulus,
}

#[derive(Copy, Clone, ValueEnum)]
enum VariantArg {
    Oriented,
    Framed,
}

impl VariantArg {
    fn variant(self) -> Variant {
        match self {
            VariantArg::Oriented => Variant::Oriented,
            VariantArg::Framed => Variant::Framed,
        }
    }
}

#[derive(Copy, Clone, ValueEnum)]
enum FormArg {
    Conway,
    Jones,
}

#[derive(Subcommand)]
enum Command {
    /// Expand a diagram file, braid file or inline braid text.
    Expand {
        input: String,
        #[command(flatten)]
        common: Common,
    },
    /// Singular expansion of a disk diagram up to a number of double points.
    Vassiliev {
        input: String,
        #[arg(long)]
        order: usize,
        #[arg(long, value_enum, default_value = "conway")]
        form: FormArg,
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate a loop file: mu, weighted variants, consistency and lin.
    LoopEval {
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Deformed evaluation of paths in a groupoid file.
    Deform {
        input: PathBuf,
        /// Path to evaluate, e.g. "s t^-1"; random words when omitted.
        #[arg(long)]
        path: Option<String>,
        #[arg(long, default_value_t = 20)]
        words: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Level-by-level formal expansion of the objects of a groupoid file.
    Formal {
        input: PathBuf,
        #[arg(long)]
        level: usize,
        #[arg(long)]
        bound: usize,
        /// Only this object.
        #[arg(long)]
        object: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Framed expansion with extra twists on the first component.
    Framed {
        input: String,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        twist: i64,
        #[command(flatten)]
        common: Common,
    },
    /// Torsion decomposition from torus intersection data.
    TorusDecomp {
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Run the acceptance suite over a corpus.
    Selftest {
        /// all, values, invariance, models, loops, jones, formal, rees,
        /// framed, vassiliev, or a comma list of criterion numbers.
        #[arg(long, default_value = "all")]
        scope: String,
        #[arg(long)]
        corpus: Option<PathBuf>,
        /// Exit 0 when only criteria known to be unattainable fail.
        #[arg(long)]
        allow_known: bool,
        /// Include wall-clock times in the JSON report.
        #[arg(long)]
        timings: bool,
        #[command(flatten)]
        common: Common,
    },
}

struct Failure {
    code: u8,
    message: String,
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn contract(message: impl Into<String>) -> Failure {
    Failure {
        code: 3,
        message: message.into(),
    }
}

impl From<SkeinError> for Failure {
    fn from(e: SkeinError) -> Self {
        match e {
            SkeinError::Contract(_) => contract(e.to_string()),
            _ => invalid(e.to_string()),
        }
    }
}

impl From<LoopError> for Failure {
    fn from(e: LoopError) -> Self {
        match e {
            LoopError::Skein(s) => s.into(),
            _ => invalid(e.to_string()),
        }
    }
}

impl From<FramedError> for Failure {
    fn from(e: FramedError) -> Self {
        match e {
            FramedError::Skein(s) => s.into(),
            _ => invalid(e.to_string()),
        }
    }
}

impl From<FormalError> for Failure {
    fn from(e: FormalError) -> Self {
        invalid(e.to_string())
    }
}

impl From<JonesqError> for Failure {
    fn from(e: JonesqError) -> Self {
        invalid(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| invalid(format!("{}: {}", path.display(), e)))
}

fn looks_like_braid(s: &str) -> bool {
    let s = s.trim();
    s.starts_with('B') && s.contains(':')
}

/// A diagram or braid from a file, or braid text given inline.
fn load_link(input: &str, ambient: Option<AmbientArg>) -> Result<Presentation, Failure> {
    let path = Path::new(input);
    let (text, origin) = if path.is_file() {
        (read(path)?, path.display().to_string())
    } else if looks_like_braid(input) {
        (input.to_string(), "inline braid".to_string())
    } else {
        return Err(invalid(format!("{}: no such file", input)));
    };
    let trimmed = text.trim();
    let value = if trimmed.starts_with('{') {
        serde_json::from_str(trimmed).map_err(|e| invalid(format!("{}: {}", origin, e)))?
    } else {
        Value::String(trimmed.to_string())
    };
    let x =
        Presentation::from_json_value(&value).map_err(|e| invalid(format!("{}: {}", origin, e)))?;
    match (ambient, x) {
        (Some(AmbientArg::Disk), Presentation::Annulus(w)) => {
            Ok(Presentation::Disk(w.to_diagram()))
        }
        (Some(AmbientArg::Annulus), Presentation::Disk(_)) => Err(invalid(format!(
            "{}: a planar diagram has no annulus presentation; give a braid",
            origin
        ))),
        (_, x) => Ok(x),
    }
}

fn parse_mode(s: &str) -> Result<Mode, Failure> {
    s.parse::<Mode>().map_err(invalid)
}

fn emit(common: &Common, v: &Value) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(v).expect("json values serialize") + "\n";
    match &common.output {
        Some(p) => fs::write(p, text).map_err(|e| invalid(format!("{}: {}", p.display(), e))),
        None => {
            print!("{}", text);
            Ok(())
        }
    }
}

fn expression_json(s: &SingularSum) -> Value {
    Value::Array(
        s.terms()
            .map(|(c, x)| json!({"coeff": c.to_string(), "link": x.to_json_value()}))
            .collect(),
    )
}

fn classes_json(m: &BTreeMap<LinClass, i64>) -> Value {
    Value::Object(m.iter().map(|(k, v)| (k.to_string(), json!(v))).collect())
}

fn cmd_expand(input: &str, common: &Common) -> Result<Value, Failure> {
    let x = load_link(input, common.ambient)?;
    let engine = Engine::new(PotentialSpec::conway(common.variant.variant()))?;
    Ok(engine.expand_mode(&x, parse_mode(&common.mode)?)?.to_json())
}

fn cmd_vassiliev(
    input: &str,
    order: usize,
    form: FormArg,
    common: &Common,
) -> Result<Value, Failure> {
    let x = load_link(input, common.ambient.or(Some(AmbientArg::Disk)))?;
    let form = match form {
        FormArg::Conway => VassilievForm::Conway,
        FormArg::Jones => VassilievForm::Jones,
    };
    let (e, report) = expand_vassiliev(&x, order, form)?;
    Ok(json!({
        "order": order,
        "form": form,
        "expansion": e.to_json(),
        "relations": report,
    }))
}

fn cmd_loop_eval(input: &Path, common: &Common) -> Result<Value, Failure> {
    let text = read(input)?;
    let l = TransversalLoop::from_json(&text)
        .map_err(|e| invalid(format!("{}: {}", input.display(), e)))?;
    l.validate()
        .map_err(|e| invalid(format!("{}: {}", input.display(), e)))?;
    let pot = PotentialSpec::conway(common.variant.variant());
    let engine = Engine::new(pot.clone())?;
    let mu = l.mu()?;
    let consistency = if l.base.singular_count() == 0 {
        let c = l.skein_consistency(&pot)?;
        json!({"residual": c.to_json(), "zero": c.is_zero()})
    } else {
        Value::Null
    };
    let lin = l.lin_and_j()?;
    Ok(json!({
        "events": l.events.len(),
        "switches": l.switch_terms()?.len(),
        "delta_prime": delta_prime(&l)?,
        "jones_monodromy": jones_monodromy(&l)?.to_string(),
        "framed_monodromy": l.framed_monodromy()?,
        "mu": expression_json(&mu),
        "mu_expanded": engine.expand_expression(&mu)?.to_json(),
        "mu_tilde": expression_json(&l.mu_tilde()?),
        "mu_framed": expression_json(&l.mu_framed()?),
        "consistency": consistency,
        "lin": {
            "j_self": classes_json(&lin.j.0),
            "j_mixed": classes_json(&lin.j.1),
            "agree": lin.agree,
        },
    }))
}

fn cmd_deform(
    input: &Path,
    path: Option<&str>,
    words: usize,
    common: &Common,
) -> Result<Value, Failure> {
    let text = read(input)?;
    let p = GroupoidPresentation::from_json(&text)
        .map_err(|e| invalid(format!("{}: {}", input.display(), e)))?;
    let ws = match path {
        Some(s) => vec![p.parse_path(s)?],
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(common.seed);
            (0..words)
                .map(|k| {
                    let start = &p.objects[k % p.objects.len()];
                    random_word(&p, start, 1 + k % 6, &mut rng)
                })
                .collect()
        }
    };
    let mut rows = Vec::new();
    let (mut round_trip, mut closed, mut running) = (0, 0, 0);
    for w in &ws {
        let q = i_q(&p, w)?;
        let functorial = a_q_functorial(&p, w, Normalization::Midpoint)?;
        let formula = a_q_eval(&p, w);
        let run = a_q_running(&p, w);
        let back = p_q(&q) == *w;
        round_trip += back as usize;
        closed += (formula == functorial) as usize;
        running += (run == functorial) as usize;
        rows.push(json!({
            "word": p.format_path(w),
            "twist": eps_of(&p, w),
            "i_q": {"start_power": q.start, "target_power": q.target_power(&p)},
            "p_q_i_q_is_identity": back,
            "closed_formula": formula.to_json(),
            "running_formula": run.to_json(),
            "functorial": functorial.to_json(),
            "functorial_source": a_q_functorial(&p, w, Normalization::Source)?.to_json(),
        }));
    }
    Ok(json!({
        "words": rows,
        "summary": {
            "count": ws.len(),
            "p_q_i_q_identity": round_trip,
            "closed_formula_functorial": closed,
            "running_formula_functorial": running,
        },
    }))
}

fn cmd_formal(
    input: &Path,
    level: usize,
    bound: usize,
    object: Option<&str>,
    common: &Common,
) -> Result<Value, Failure> {
    let text = read(input)?;
    let p = GroupoidPresentation::from_json(&text)
        .map_err(|e| invalid(format!("{}: {}", input.display(), e)))?;
    let objects: Vec<String> = match object {
        Some(x) => vec![x.to_string()],
        None => p.objects.clone(),
    };
    let out = objects
        .iter()
        .map(|x| {
            let e = expand_formal(&p, x, level, bound, common.seed)?;
            let mut v = e.to_json();
            v["well_defined"] = json!(e.well_defined());
            Ok(v)
        })
        .collect::<Result<Vec<_>, Failure>>()?;
    Ok(Value::Array(out))
}

fn cmd_framed(input: &str, twist: i64, common: &Common) -> Result<Value, Failure> {
    let x = load_link(input, common.ambient)?;
    let k = TotallyFramedLink::blackboard(x).twisted(twist);
    let e = framed_expand(&k)?;
    let plus = framed_expand(&k.plus())?;
    Ok(json!({
        "framing": k.framing,
        "total_framing": k.total(),
        "expansion": e.to_json(),
        "plus": plus.to_json(),
        "at_v_q": specialize_v_to_q(&e).to_json(),
        "at_v_1": specialize_v_to_one(&e).to_json(),
    }))
}

fn cmd_torus(input: &Path) -> Result<Value, Failure> {
    let text = read(input)?;
    let data =
        TorusData::from_json(&text).map_err(|e| invalid(format!("{}: {}", input.display(), e)))?;
    Ok(decomposition_json(&torus_decomposition(&data)?))
}

fn cmd_selftest(
    scope: &str,
    corpus: Option<&Path>,
    allow_known: bool,
    timings: bool,
    common: &Common,
) -> Result<u8, Failure> {
    let ids = scope_ids(scope).map_err(invalid)?;
    let dir = corpus
        .map(Path::to_path_buf)
        .unwrap_or_else(Corpus::default_dir);
    let corpus = Corpus::load(&dir).map_err(|e| invalid(e.to_string()))?;
    let reports = run(&corpus, &ids, common.seed);
    for r in &reports {
        eprintln!("{}", r);
    }
    let mut v = report_json(&reports);
    if !timings {
        for r in v.as_array_mut().into_iter().flatten() {
            r.as_object_mut().map(|o| o.remove("seconds"));
        }
    }
    emit(common, &v)?;
    let failed = reports
        .iter()
        .any(|r| !r.passed && !(allow_known && KNOWN_UNATTAINABLE.contains(&r.id)));
    Ok(failed as u8)
}

fn dispatch(cli: Cli) -> Result<u8, Failure> {
    let (value, common) = match &cli.command {
        Command::Expand { input, common } => (cmd_expand(input, common)?, common),
        Command::Vassiliev {
            input,
            order,
            form,
            common,
        } => (cmd_vassiliev(input, *order, *form, common)?, common),
        Command::LoopEval { input, common } => (cmd_loop_eval(input, common)?, common),
        Command::Deform {
            input,
            path,
            words,
            common,
        } => (cmd_deform(input, path.as_deref(), *words, common)?, common),
        Command::Formal {
            input,
            level,
            bound,
            object,
            common,
        } => (
            cmd_formal(input, *level, *bound, object.as_deref(), common)?,
            common,
        ),
        Command::Framed {
            input,
            twist,
            common,
        } => (cmd_framed(input, *twist, common)?, common),
        Command::TorusDecomp { input, common } => (cmd_torus(input)?, common),
        Command::Selftest {
            scope,
            corpus,
            allow_known,
            timings,
            common,
        } => {
            return cmd_selftest(scope, corpus.as_deref(), *allow_known, *timings, common);
        }
    };
    emit(common, &value)?;
    Ok(0)
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("skeinx: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn braid_text_is_recognized() {
        assert!(looks_like_braid("B2: -s1"));
        assert!(!looks_like_braid("trefoil.json"));
    }

    #[test]
    fn disk_ambient_closes_braids_in_the_ball() {
        let x = load_link("B2: s1 s1", Some(AmbientArg::Disk)).ok().unwrap();
        assert!(x.as_disk().is_some());
        let f = load_link("nonexistent.json", None).err().unwrap();
        assert_eq!(f.code, 2);
    }
}
