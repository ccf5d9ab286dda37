use std::fs;
use std::io::Write;

use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::{json, Map, Value};

use wreathchar::congruence::{mash_canonical, sim_p_equivalent};
use wreathchar::partitions::count_multipartitions;
use wreathchar::stats::{
    asymptotic_check, certificate_census, concentration_check, exact_census, format_big_ratio,
    ln_biguint, parse_rational, sampled_census, CensusReport, IntervalMethod, SampleSpec,
};
use wreathchar::weyl_d::{dn_restricted_census, DnMode};
use wreathchar::wreath_chars::character_table;
use wreathchar::{CharacterEngine, Error, GroupData, MultiPartition, VERSION};

use crate::{Cli, Command, DnModeArg, GroupSource, Interval, ReportFormat, Sampling, TextFormat};

pub struct Failure {
    pub code: u8,
    pub message: String,
    /// Written like a normal result before exiting with `code`.
    pub output: Option<String>,
    violations: Vec<String>,
}

pub const EXIT_USAGE: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;
pub const EXIT_VALIDATION: u8 = 4;

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::BudgetExceeded { .. } => EXIT_BUDGET,
            Error::InvalidGroup(_) | Error::MalformedGroup(_) => EXIT_VALIDATION,
            Error::Io(_) => 1,
            _ => EXIT_USAGE,
        };
        let violations = match &e {
            Error::InvalidGroup(report) => {
                report.violations.iter().map(ToString::to_string).collect()
            }
            Error::MalformedGroup(msg) => vec![msg.clone()],
            _ => Vec::new(),
        };
        Failure {
            code,
            message: e.to_string(),
            output: None,
            violations,
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
        output: None,
        violations: Vec::new(),
    }
}

/// Everything that determines a run's output. The worker count is left out
/// on purpose: it never changes results.
#[derive(Serialize, Default)]
struct RunConfig {
    command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    group: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    group_file: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    p: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lambda: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    mu: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    nu: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    mode: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    samples: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    confidence: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    interval: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    delta: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    budget: Option<u64>,
    format: &'static str,
}

impl RunConfig {
    fn with_group(mut self, src: &GroupSource) -> Self {
        self.group = src.group.clone();
        self.group_file = src.group_file.as_ref().map(|p| p.display().to_string());
        self
    }

    fn with_sampling(mut self, spec: &SampleSpec) -> Self {
        self.samples = Some(spec.samples);
        self.seed = Some(spec.seed);
        self.confidence = Some(spec.confidence);
        self.interval = Some(match spec.method {
            IntervalMethod::Wilson => "wilson",
            IntervalMethod::Wald => "wald",
        });
        self
    }
}

fn report_format(f: ReportFormat) -> &'static str {
    match f {
        ReportFormat::Json => "json",
        ReportFormat::Csv => "csv",
    }
}

fn text_format(f: TextFormat) -> &'static str {
    match f {
        TextFormat::Text => "text",
        TextFormat::Json => "json",
    }
}

fn load_group(src: &GroupSource) -> Result<GroupData, Failure> {
    match (&src.group, &src.group_file) {
        (Some(name), None) => Ok(GroupData::builtin(name)?),
        (None, Some(path)) => {
            let text = fs::read_to_string(path)
                .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
            Ok(GroupData::load_str(&text)?)
        }
        _ => Err(usage("give exactly one of --group and --group-file")),
    }
}

fn parse_label(text: &str, what: &str) -> Result<MultiPartition, Failure> {
    serde_json::from_str(text).map_err(|e| usage(format!("cannot parse {what} {text:?}: {e}")))
}

fn sample_spec(s: &Sampling) -> Result<SampleSpec, Failure> {
    if !(s.confidence > 0.0 && s.confidence < 1.0) {
        return Err(usage(format!("confidence {} not in (0, 1)", s.confidence)));
    }
    if s.samples == 0 {
        return Err(usage("samples must be at least 1"));
    }
    Ok(SampleSpec {
        samples: s.samples,
        seed: s.seed.unwrap_or_else(rand::random),
        confidence: s.confidence,
        method: match s.interval {
            Interval::Wilson => IntervalMethod::Wilson,
            Interval::Wald => IntervalMethod::Wald,
        },
    })
}

/// `{version, config, ...body}` as pretty JSON.
fn envelope(config: &RunConfig, body: Value) -> String {
    let mut obj = Map::new();
    obj.insert("version".into(), Value::from(VERSION));
    obj.insert(
        "config".into(),
        serde_json::to_value(config).expect("config serializes"),
    );
    if let Value::Object(fields) = body {
        obj.extend(fields);
    }
    let mut s = serde_json::to_string_pretty(&Value::Object(obj)).expect("json");
    s.push('\n');
    s
}

/// CSV with a leading `#` provenance line.
fn csv_document(config: &RunConfig, header: &str, rows: &[String]) -> String {
    let mut s = format!(
        "# wreathchar {VERSION} {}\n{header}\n",
        serde_json::to_string(config).expect("config serializes")
    );
    for row in rows {
        s.push_str(row);
        s.push('\n');
    }
    s
}

fn census_output(config: &RunConfig, report: &CensusReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => envelope(config, json!({ "report": report })),
        ReportFormat::Csv => {
            csv_document(config, &CensusReport::csv_header(), &[report.to_csv_row()])
        }
    }
}

pub fn execute(cli: &Cli) -> Result<(), Failure> {
    let result = match cli.workers {
        Some(0) => return Err(usage("--workers must be at least 1")),
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .map_err(|e| usage(format!("cannot start {w} workers: {e}")))?
            .install(|| dispatch(&cli.command)),
        None => dispatch(&cli.command),
    };
    let (output, failure) = match result {
        Ok(text) => (Some(text), None),
        Err(mut f) => (f.output.take(), Some(f)),
    };
    if let Some(text) = output {
        write_output(cli, &text)?;
    }
    failure.map_or(Ok(()), Err)
}

fn write_output(cli: &Cli, text: &str) -> Result<(), Failure> {
    match &cli.out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::from(Error::Io(e))),
        None => {
            // A closed pipe is not worth a failure exit.
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn dispatch(command: &Command) -> Result<String, Failure> {
    match command {
        Command::Entry {
            group,
            lambda,
            mu,
            format,
        } => {
            let g = load_group(group)?;
            let (l, m) = (parse_label(lambda, "lambda")?, parse_label(mu, "mu")?);
            let engine = CharacterEngine::new(g);
            let chi = engine.mn_character(&l, &m)?;
            let perm = engine.perm_character(&l, &m)?;
            Ok(match format {
                TextFormat::Text => format!("chi={chi}\nperm={perm}\n"),
                TextFormat::Json => {
                    let config = RunConfig {
                        command: "entry",
                        lambda: Some(l.to_string()),
                        mu: Some(m.to_string()),
                        format: text_format(*format),
                        ..Default::default()
                    }
                    .with_group(group);
                    envelope(
                        &config,
                        json!({ "chi": chi.to_string(), "perm": perm.to_string() }),
                    )
                }
            })
        }
        Command::Table {
            group,
            n,
            format,
            budget,
        } => {
            let g = load_group(group)?;
            let table = character_table(&CharacterEngine::new(g), *n, *budget)?;
            let config = RunConfig {
                command: "table",
                n: Some(*n),
                budget: Some(*budget),
                format: report_format(*format),
                ..Default::default()
            }
            .with_group(group);
            Ok(match format {
                ReportFormat::Json => {
                    envelope(&config, serde_json::to_value(&table).expect("table"))
                }
                ReportFormat::Csv => {
                    let body = table.to_csv();
                    let mut lines = body.lines();
                    let header = lines.next().unwrap_or_default().to_string();
                    let rows: Vec<String> = lines.map(str::to_string).collect();
                    csv_document(&config, &header, &rows)
                }
            })
        }
        Command::Mash { mu, p, format } => {
            let m = parse_label(mu, "mu")?;
            let mashed = mash_canonical(&m, *p)?;
            Ok(match format {
                TextFormat::Text => format!("{}\n", mashed.canonical),
                TextFormat::Json => {
                    let config = RunConfig {
                        command: "mash",
                        mu: Some(m.to_string()),
                        p: Some(*p),
                        format: text_format(*format),
                        ..Default::default()
                    };
                    envelope(&config, json!({ "result": mashed }))
                }
            })
        }
        Command::Equiv { mu, nu, p, format } => {
            let (a, b) = (parse_label(mu, "mu")?, parse_label(nu, "nu")?);
            let same = sim_p_equivalent(&a, &b, *p)?;
            Ok(match format {
                TextFormat::Text => format!("{same}\n"),
                TextFormat::Json => {
                    let config = RunConfig {
                        command: "equiv",
                        mu: Some(a.to_string()),
                        nu: Some(b.to_string()),
                        p: Some(*p),
                        format: text_format(*format),
                        ..Default::default()
                    };
                    envelope(&config, json!({ "equivalent": same }))
                }
            })
        }
        Command::Census {
            group,
            n,
            p,
            budget,
            format,
        } => {
            let g = load_group(group)?;
            let report = exact_census(&CharacterEngine::new(g), *n, *p, *budget)?;
            let config = RunConfig {
                command: "census",
                n: Some(*n),
                p: Some(*p),
                mode: Some("exact"),
                budget: Some(*budget),
                format: report_format(*format),
                ..Default::default()
            }
            .with_group(group);
            Ok(census_output(&config, &report, *format))
        }
        Command::SampleCensus {
            group,
            n,
            p,
            sampling,
            format,
        } => {
            let g = load_group(group)?;
            let spec = sample_spec(sampling)?;
            let report = sampled_census(&CharacterEngine::new(g), *n, *p, spec)?;
            let config = RunConfig {
                command: "sample-census",
                n: Some(*n),
                p: Some(*p),
                mode: Some("sampled"),
                format: report_format(*format),
                ..Default::default()
            }
            .with_group(group)
            .with_sampling(&spec);
            Ok(census_output(&config, &report, *format))
        }
        Command::CertCensus {
            k,
            n,
            p,
            sampling,
            format,
        } => {
            let spec = sample_spec(sampling)?;
            let report = certificate_census(*k, *n, *p, spec)?;
            let config = RunConfig {
                command: "cert-census",
                k: Some(*k),
                n: Some(*n),
                p: Some(*p),
                mode: Some("certificate"),
                format: report_format(*format),
                ..Default::default()
            }
            .with_sampling(&spec);
            Ok(census_output(&config, &report, *format))
        }
        Command::Asym { k, n, format } => {
            let ratio = asymptotic_check(*k, *n)?;
            let ln = ln_biguint(&count_multipartitions(*n, *k));
            let config = RunConfig {
                command: "asym",
                k: Some(*k),
                n: Some(*n),
                format: report_format(*format),
                ..Default::default()
            };
            Ok(match format {
                ReportFormat::Json => envelope(
                    &config,
                    json!({ "result": { "k": k, "n": n, "ln_count": ln, "ratio": ratio } }),
                ),
                ReportFormat::Csv => csv_document(
                    &config,
                    "k,n,ln_count,ratio",
                    &[format!("{k},{n},{ln},{ratio}")],
                ),
            })
        }
        Command::Concentration {
            k,
            n,
            delta,
            format,
        } => {
            let d = parse_rational(delta)?;
            let share = concentration_check(*k, *n, &d)?;
            let decimal = share.to_f64().unwrap_or(f64::NAN);
            let exact = format_big_ratio(&share);
            let config = RunConfig {
                command: "concentration",
                k: Some(*k),
                n: Some(*n),
                delta: Some(format_big_ratio(&d)),
                format: report_format(*format),
                ..Default::default()
            };
            Ok(match format {
                ReportFormat::Json => envelope(
                    &config,
                    json!({ "result": { "k": k, "n": n, "delta": format_big_ratio(&d), "proportion": exact, "proportion_decimal": decimal } }),
                ),
                ReportFormat::Csv => csv_document(
                    &config,
                    "k,n,delta,proportion,proportion_decimal",
                    &[format!(
                        "{k},{n},{},{exact},{decimal}",
                        format_big_ratio(&d)
                    )],
                ),
            })
        }
        Command::DnCensus {
            n,
            p,
            mode,
            budget,
            sampling,
            format,
        } => {
            let engine = CharacterEngine::new(GroupData::builtin("Z2")?);
            let mut config = RunConfig {
                command: "dn-census",
                n: Some(*n),
                p: Some(*p),
                format: report_format(*format),
                ..Default::default()
            };
            let dn_mode = match mode {
                DnModeArg::Exact => {
                    config.mode = Some("exact");
                    config.budget = Some(*budget);
                    DnMode::Exact { budget: *budget }
                }
                DnModeArg::Sampled => {
                    let spec = sample_spec(sampling)?;
                    config = config.with_sampling(&spec);
                    config.mode = Some("sampled");
                    DnMode::Sampled(spec)
                }
            };
            let report = dn_restricted_census(&engine, *n, *p, dn_mode)?;
            Ok(census_output(&config, &report, *format))
        }
        Command::GroupValidate { group } => {
            let config = RunConfig {
                command: "group-validate",
                format: "json",
                ..Default::default()
            }
            .with_group(group);
            match load_group(group) {
                Ok(g) => Ok(envelope(
                    &config,
                    json!({ "valid": true, "name": g.name, "order": g.order().to_string(), "classes": g.k() }),
                )),
                Err(mut f) if f.code == EXIT_VALIDATION => {
                    f.output = Some(envelope(
                        &config,
                        json!({ "valid": false, "violations": f.violations.clone() }),
                    ));
                    Err(f)
                }
                Err(f) => Err(f),
            }
        }
    }
}
