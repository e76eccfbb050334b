use std::path::Path;

use serde::Serialize;
use serde_json::json;

use super::output::{emit, write_json, Table};
use super::spec::{read_spec, SpecFile};
use super::{
    hash_input, ClassName, CliError, Command, ExperimentArgs, ExperimentName, Format, InputHash, LearnArgs, ModeName,
    RunManifest, SuiteName, EXIT_FAILURE, EXIT_PASS,
};
use crate::analysis::{
    census_experiment, corpus::submodular_corpus, hockey_tail_experiment, lipschitz_sum_experiment, run_suite,
    talagrand_experiment, DegreeRule, Suite, SuiteConfig,
};
use crate::hypercube::CubeFunction;
use crate::learner::{learn, LearnMode, LearnerConfig};
use crate::zoo::{is_monotone, is_self_bounding, is_subadditive, is_submodular, is_xos, Witness};

type CmdResult = Result<i32, CliError>;

const DEFAULT_LIPSCHITZ_ALPHAS: [f64; 4] = [0.05, 0.1, 0.2, 0.4];
const DEFAULT_CENSUS_EPS: [f64; 4] = [0.05, 0.1, 0.2, 0.3];
const DEFAULT_HOCKEY_KS: [usize; 5] = [2, 8, 12, 16, 20];

pub(crate) fn dispatch(command: &Command, argv: &[String]) -> CmdResult {
    let name = argv.iter().skip(1).find(|a| !a.starts_with('-')).cloned().unwrap_or_default();
    let label = argv.join(" ");
    match command {
        Command::Spectrum { spec, eps, output } => {
            let (file, input) = load(spec)?;
            let f = file.function.build()?;
            let s = f.transform();
            let levels = s.level_weights();
            let tails = s.tail_weights();
            let degrees = eps
                .iter()
                .map(|&e| Ok(json!({ "eps": e, "degree": s.l2_degree(e)? })))
                .collect::<Result<Vec<_>, crate::Error>>()?;
            let report = json!({
                "n": f.n(),
                "total_weight": s.total_weight(),
                "levels": levels.iter().zip(&tails).enumerate()
                    .map(|(d, (w, t))| json!({ "level": d, "weight": w, "tail": t }))
                    .collect::<Vec<_>>(),
                "degrees": degrees,
            });
            let manifest = manifest(&name, &label, json!({ "eps": eps }), file.function.seeds(), vec![input]);
            emit(output, Format::Json, &manifest, &report, || {
                let mut t = Table::new(vec!["level", "weight", "tail"]);
                for (d, (w, tail)) in levels.iter().zip(&tails).enumerate() {
                    t.push(vec![d.into(), (*w).into(), (*tail).into()]);
                }
                t
            })?;
            Ok(EXIT_PASS)
        }
        Command::Check { spec, classes, a, output } => {
            let (file, input) = load(spec)?;
            let f = file.function.build()?;
            let classes = if classes.is_empty() {
                vec![ClassName::Monotone, ClassName::Submodular, ClassName::Subadditive, ClassName::SelfBounding, ClassName::Xos]
            } else {
                classes.clone()
            };
            let results = classes.iter().map(|&c| check_class(&f, c, *a)).collect::<Result<Vec<_>, _>>()?;
            let passed = results.iter().all(|r| r.holds);
            let report = json!({ "n": f.n(), "passed": passed, "results": results });
            let config = json!({ "classes": results.iter().map(|r| r.class).collect::<Vec<_>>(), "a": a });
            let manifest = manifest(&name, &label, config, file.function.seeds(), vec![input]);
            emit(output, Format::Json, &manifest, &report, || {
                let mut t = Table::new(vec!["class", "holds", "witness"]);
                for r in &results {
                    t.push(vec![r.class.into(), r.holds.into(), r.witness.as_ref().map(|w| w.summary.clone()).into()]);
                }
                t
            })?;
            Ok(if passed { EXIT_PASS } else { EXIT_FAILURE })
        }
        Command::Verify { suite, count, seed, max_n, output } => {
            let suite = match suite {
                SuiteName::Core => Suite::Core,
                SuiteName::Xos => Suite::Xos,
                SuiteName::Submodular => Suite::Submodular,
            };
            let mut config = SuiteConfig::new(suite, *count, *seed);
            if let Some(m) = max_n {
                config.max_n = *m;
            }
            let report = run_suite(&config)?;
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
            let cfg = serde_json::to_value(&config).unwrap_or_default();
            let manifest = manifest(&name, &label, cfg, vec![*seed], Vec::new());
            emit(output, Format::Json, &manifest, &report, || {
                let mut t = Table::new(vec![
                    "bound", "evaluated", "failures", "worst_lhs", "worst_rhs", "worst_slack", "worst_member",
                    "worst_witness", "max_ratio",
                ]);
                for c in &report.checks {
                    let w = c.worst.as_ref();
                    t.push(vec![
                        c.bound.as_str().into(),
                        c.evaluated.into(),
                        c.failures.into(),
                        w.map(|r| r.lhs).into(),
                        w.map(|r| r.rhs).into(),
                        w.map(|r| r.slack).into(),
                        c.worst_member.into(),
                        w.and_then(|r| r.witness.as_ref()).map(|l| l.to_string()).into(),
                        c.max_ratio.into(),
                    ]);
                }
                t
            })?;
            Ok(if report.passed() { EXIT_PASS } else { EXIT_FAILURE })
        }
        Command::Learn(args) => learn_command(args, &name, &label),
        Command::Experiment(args) => experiment_command(args, &label),
    }
}

fn load(path: &Path) -> Result<(SpecFile, InputHash), CliError> {
    let (file, bytes) = read_spec(path)?;
    Ok((file, hash_input(&path.display().to_string(), &bytes)))
}

fn manifest(name: &str, label: &str, config: serde_json::Value, seeds: Vec<u64>, inputs: Vec<InputHash>) -> RunManifest {
    let mut config = config;
    if let Some(map) = config.as_object_mut() {
        map.insert("argv".into(), json!(label));
        map.insert("threads".into(), json!(rayon::current_num_threads()));
    }
    RunManifest::new(name, config, seeds, inputs)
}

fn ones(mask: usize) -> Vec<usize> {
    (0..usize::BITS as usize).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect()
}

fn braces(mask: usize) -> String {
    let list: Vec<String> = ones(mask).iter().map(|c| c.to_string()).collect();
    format!("{{{}}}", list.join(" "))
}

#[derive(Debug, Serialize)]
struct WitnessView {
    summary: String,
    #[serde(flatten)]
    detail: serde_json::Value,
}

#[derive(Debug, Serialize)]
struct ClassResult {
    class: &'static str,
    holds: bool,
    witness: Option<WitnessView>,
}

fn witness_view(w: &Witness) -> WitnessView {
    match *w {
        Witness::Derivative { point, coord, value } => WitnessView {
            summary: format!("x={} i={} d_i f={value}", braces(point), coord + 1),
            detail: json!({ "kind": "derivative", "point": ones(point), "coord": coord + 1, "value": value }),
        },
        Witness::SecondDerivative { point, i, j, value } => WitnessView {
            summary: format!("x={} i={} j={} d_ij f={value}", braces(point), i + 1, j + 1),
            detail: json!({ "kind": "second_derivative", "point": ones(point), "i": i + 1, "j": j + 1, "value": value }),
        },
        Witness::SetPair { a, b, lhs, rhs } => WitnessView {
            summary: format!("A={} B={} lhs={lhs} rhs={rhs}", braces(a), braces(b)),
            detail: json!({ "kind": "set_pair", "a": ones(a), "b": ones(b), "lhs": lhs, "rhs": rhs }),
        },
        Witness::Point { point, lhs, rhs } => WitnessView {
            summary: format!("x={} lhs={lhs} rhs={rhs}", braces(point)),
            detail: json!({ "kind": "point", "point": ones(point), "lhs": lhs, "rhs": rhs }),
        },
    }
}

fn check_class(f: &CubeFunction, class: ClassName, a: f64) -> Result<ClassResult, CliError> {
    let (name, outcome) = match class {
        ClassName::Monotone => ("monotone", is_monotone(f)?),
        ClassName::Submodular => ("submodular", is_submodular(f)?),
        ClassName::Subadditive => ("subadditive", is_subadditive(f)?),
        ClassName::SelfBounding => ("self-bounding", is_self_bounding(f, a)?),
        ClassName::Xos => {
            let out = match is_xos(f) {
                Ok(out) => out,
                Err(crate::Error::NotInXosDomain(reason)) => {
                    return Ok(ClassResult {
                        class: "xos",
                        holds: false,
                        witness: Some(WitnessView {
                            summary: format!("outside domain: {reason}"),
                            detail: json!({ "kind": "domain", "reason": reason }),
                        }),
                    })
                }
                Err(e) => return Err(e.into()),
            };
            let witness = out.violating_set.map(|set| {
                let target = f.value(set);
                let best = out.best_support.unwrap_or(0.0);
                WitnessView {
                    summary: format!("A={} best support {best} < f(A)={target}", braces(set)),
                    detail: json!({ "kind": "unsupported_set", "set": ones(set), "best_support": best, "value": target }),
                }
            });
            return Ok(ClassResult { class: "xos", holds: witness.is_none(), witness });
        }
    };
    Ok(ClassResult { class: name, holds: outcome.holds(), witness: outcome.witness.as_ref().map(witness_view) })
}

fn learn_command(args: &LearnArgs, name: &str, label: &str) -> CmdResult {
    let (file, input) = load(&args.spec)?;
    let f = file.function.build()?;
    let mode = match args.mode {
        ModeName::Submodular => LearnMode::Submodular,
        ModeName::Xos => LearnMode::Xos,
    };
    let config = LearnerConfig {
        s: args.s,
        degree: args.degree,
        samples: args.samples,
        sample_constant: args.sample_constant,
        max_samples: args.max_samples,
        feature_cap: args.feature_cap,
        clip: !args.no_clip,
        ..LearnerConfig::new(args.eps, args.seed)
    };
    let (model, report) = learn(&f, &config, mode)?;
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    if let Some(path) = &args.model_out {
        write_json(path, &model)?;
    }
    let cfg = serde_json::to_value(&config).unwrap_or_default();
    let mut seeds = vec![args.seed];
    seeds.extend(file.function.seeds());
    let manifest = manifest(name, label, cfg, seeds, vec![input]);
    emit(&args.output, Format::Json, &manifest, &report, || {
        let mut t = Table::new(vec![
            "n", "eps", "seed", "samples", "junta", "degree", "features", "solver", "exact_error", "within_target",
        ]);
        let junta: Vec<String> = model.junta.iter().map(|c| c.to_string()).collect();
        t.push(vec![
            report.n.into(),
            report.eps.into(),
            report.seed.into(),
            report.samples.into(),
            junta.join(" ").into(),
            report.degree_effective.into(),
            report.features.into(),
            format!("{:?}", report.fit.solver).to_lowercase().into(),
            report.exact_error.into(),
            report.within_target().into(),
        ]);
        t
    })?;
    Ok(if report.within_target() { EXIT_PASS } else { EXIT_FAILURE })
}

fn degree_rule(text: &str) -> Result<DegreeRule, CliError> {
    if text == "half" {
        return Ok(DegreeRule::HalfK);
    }
    text.parse()
        .map(DegreeRule::Fixed)
        .map_err(|_| CliError::usage(format!("--d-rule must be `half` or an integer, got `{text}`")))
}

type NamedCorpus = (Vec<(String, CubeFunction)>, Vec<InputHash>, Vec<u64>);

fn named_corpus(args: &ExperimentArgs) -> Result<NamedCorpus, CliError> {
    if let Some(path) = &args.spec {
        let (file, input) = load(path)?;
        let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        return Ok((vec![(name, file.function.build()?)], vec![input], file.function.seeds()));
    }
    let corpus = submodular_corpus(args.count, 8, args.seed)?
        .into_iter()
        .enumerate()
        .map(|(i, m)| (format!("{}-{i}", m.kind.as_str()), m.function))
        .collect();
    Ok((corpus, Vec::new(), vec![args.seed]))
}

fn experiment_command(args: &ExperimentArgs, label: &str) -> CmdResult {
    let out = &args.output;
    match args.name {
        ExperimentName::HockeyTail => {
            let ks = if args.k.is_empty() { DEFAULT_HOCKEY_KS.to_vec() } else { args.k.clone() };
            let rule = degree_rule(&args.d_rule)?;
            let rows = hockey_tail_experiment(&ks, rule)?;
            let manifest = manifest("hockey-tail", label, json!({ "k": ks, "d_rule": args.d_rule }), Vec::new(), Vec::new());
            emit(out, Format::Csv, &manifest, &rows, || {
                let mut t = Table::new(vec!["k", "d", "tail", "scaled"]);
                for r in &rows {
                    t.push(vec![r.k.into(), r.d.into(), r.tail.into(), r.scaled.into()]);
                }
                t
            })?;
            Ok(EXIT_PASS)
        }
        ExperimentName::TalagrandNs => {
            let k = args.k.first().copied().unwrap_or(16);
            let alpha = args.alpha.first().copied();
            let (rows, summary) = talagrand_experiment(k, args.seeds, args.seed, alpha)?;
            let cfg = json!({ "k": k, "seeds": args.seeds, "alpha": summary.alpha, "rows": args.rows });
            let manifest = manifest("talagrand-ns", label, cfg, vec![args.seed], Vec::new());
            let code = if summary.chain_failures == 0 { EXIT_PASS } else { EXIT_FAILURE };
            if args.rows {
                emit(out, Format::Csv, &manifest, &json!({ "summary": summary, "rows": rows }), || {
                    let mut t = Table::new(vec!["index", "seed", "ns", "d", "tail", "tail_pm1", "chain_rhs", "chain_pass"]);
                    for r in &rows {
                        t.push(vec![
                            r.index.into(),
                            r.seed.into(),
                            r.ns.into(),
                            r.d.into(),
                            r.tail.into(),
                            r.tail_pm1.into(),
                            r.chain_rhs.into(),
                            r.chain_pass.into(),
                        ]);
                    }
                    t
                })?;
            } else {
                emit(out, Format::Csv, &manifest, &summary, || {
                    let mut t = Table::new(vec![
                        "k", "seeds", "alpha", "term_count", "term_size", "ns_min", "ns_mean", "ns_max", "tail_min",
                        "tail_mean", "tail_max", "chain_failures",
                    ]);
                    let ns = summary.ns.as_ref();
                    let tail = summary.tail.as_ref();
                    t.push(vec![
                        summary.k.into(),
                        summary.seeds.into(),
                        summary.alpha.into(),
                        summary.term_count.into(),
                        summary.term_size.into(),
                        ns.map(|s| s.min).into(),
                        ns.map(|s| s.mean).into(),
                        ns.map(|s| s.max).into(),
                        tail.map(|s| s.min).into(),
                        tail.map(|s| s.mean).into(),
                        tail.map(|s| s.max).into(),
                        summary.chain_failures.into(),
                    ]);
                    t
                })?;
            }
            Ok(code)
        }
        ExperimentName::LipschitzSum => {
            let alphas = if args.alpha.is_empty() { DEFAULT_LIPSCHITZ_ALPHAS.to_vec() } else { args.alpha.clone() };
            let (corpus, inputs, seeds) = named_corpus(args)?;
            let rows = lipschitz_sum_experiment(&corpus, &alphas)?;
            let cfg = json!({ "alpha": alphas, "count": corpus.len() });
            let manifest = manifest("lipschitz-sum", label, cfg, seeds, inputs);
            emit(out, Format::Csv, &manifest, &rows, || {
                let mut t = Table::new(vec!["name", "alpha", "set", "numerator", "denominator", "ratio"]);
                for r in &rows {
                    let set: Vec<String> = r.set.iter().map(|c| c.to_string()).collect();
                    t.push(vec![
                        r.name.clone().into(),
                        r.alpha.into(),
                        set.join(" ").into(),
                        r.numerator.into(),
                        r.denominator.into(),
                        r.ratio.into(),
                    ]);
                }
                t
            })?;
            Ok(EXIT_PASS)
        }
        ExperimentName::Census => {
            let eps = if args.eps.is_empty() { DEFAULT_CENSUS_EPS.to_vec() } else { args.eps.clone() };
            let (corpus, inputs, seeds) = named_corpus(args)?;
            let rows = census_experiment(&corpus, &eps, args.delta)?;
            let cfg = json!({ "eps": eps, "delta": args.delta, "count": corpus.len() });
            let manifest = manifest("census", label, cfg, seeds, inputs);
            emit(out, Format::Csv, &manifest, &rows, || {
                let mut t = Table::new(vec!["name", "eps", "delta", "large_derivatives", "threshold", "statistic"]);
                let join = |v: &[usize]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ");
                for r in &rows {
                    t.push(vec![
                        r.name.clone().into(),
                        r.eps.into(),
                        r.delta.into(),
                        join(&r.large_derivatives).into(),
                        join(&r.threshold).into(),
                        r.statistic.into(),
                    ]);
                }
                t
            })?;
            Ok(EXIT_PASS)
        }
    }
}
