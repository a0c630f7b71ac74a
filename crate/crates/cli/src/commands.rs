use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use polyforge_core::capacity::fleet_estimate;
use polyforge_core::codegen::{render_application, Target};
use polyforge_core::dl::resolve::resolve;
use polyforge_core::ml::{parse_ml, MlModel};
use polyforge_core::transform::{ml_to_dl, DbmsCatalog, DeploymentAnswers};
use polyforge_core::{parse_dl, print_dl, validate, DlModel};
use serde_json::json;

use crate::failure::{Exit, Failure};
use crate::wizard::{complete, Prompter};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

pub struct Context {
    pub format: Format,
    pub quiet: bool,
    pub catalog: DbmsCatalog,
}

impl Context {
    pub fn load(format: Format, quiet: bool, catalog: Option<&Path>) -> Result<Self, Failure> {
        let catalog = match catalog {
            None => DbmsCatalog::embedded(),
            Some(path) => {
                DbmsCatalog::parse(&read(path)?).map_err(|e| Failure::catalog(path, &e))?
            }
        };
        Ok(Context {
            format,
            quiet,
            catalog,
        })
    }

    fn note(&self, text: &str) {
        if !self.quiet {
            eprintln!("{text}");
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::io(path, e))
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| Failure::io(dir, e))?;
    }
    fs::write(path, contents).map_err(|e| Failure::io(path, e))
}

fn stdout(text: &str) -> Result<(), Failure> {
    io::stdout()
        .write_all(text.as_bytes())
        .map_err(|e| Failure::usage(format!("writing output: {e}")))
}

fn load_dl(path: &Path) -> Result<DlModel, Failure> {
    parse_dl(&read(path)?).map_err(|e| Failure::parse(path, &e))
}

fn load_ml(path: &Path) -> Result<MlModel, Failure> {
    parse_ml(&read(path)?).map_err(|e| Failure::ml(path, &e))
}

fn load_answers(path: &Path) -> Result<DeploymentAnswers, Failure> {
    DeploymentAnswers::parse(&read(path)?).map_err(|e| Failure::answers(path, &e))
}

pub fn check(ctx: &Context, path: &Path) -> Result<Exit, Failure> {
    let model = load_dl(path)?;
    let report = validate(&model);
    match ctx.format {
        Format::Json => stdout(&format!(
            "{}\n",
            serde_json::to_string_pretty(&report).unwrap()
        ))?,
        Format::Text if !(ctx.quiet && report.is_valid()) => stdout(&format!("{report}\n"))?,
        Format::Text => {}
    }
    Ok(if report.is_valid() {
        Exit::Ok
    } else {
        Exit::Invalid
    })
}

pub fn transform(
    ctx: &Context,
    ml_path: &Path,
    answers_path: &Path,
    out: Option<&Path>,
) -> Result<Exit, Failure> {
    let ml = load_ml(ml_path)?;
    let answers = load_answers(answers_path)?;
    let dl = ml_to_dl(&ml, &answers, &ctx.catalog).map_err(|e| Failure::transform(&e))?;
    let text = print_dl(&dl);
    match out {
        Some(path) => {
            write(path, &text)?;
            ctx.note(&format!("wrote {}", path.display()));
        }
        None => stdout(&text)?,
    }
    Ok(Exit::Ok)
}

pub fn generate(
    ctx: &Context,
    path: &Path,
    target: Target,
    outdir: &Path,
    only: Option<&str>,
) -> Result<Exit, Failure> {
    let model = load_dl(path)?;
    let resolved = resolve(&model).map_err(|_| Failure::invalid_model(path, &validate(&model)))?;
    let mut names: Vec<&str> = Vec::new();
    for (_, _, app) in resolved.applications() {
        if !names.contains(&app.decl.name.as_str()) {
            names.push(&app.decl.name);
        }
    }
    if let Some(only) = only {
        names = vec![only];
    }
    if names.is_empty() {
        ctx.note("notice: the model declares no applications, nothing to generate");
        if ctx.format == Format::Json {
            stdout(&format!("{}\n", json!({ "written": [], "warnings": [] })))?;
        }
        return Ok(Exit::Ok);
    }

    // render everything before touching the file system
    let mut files = Vec::new();
    let mut warnings = Vec::new();
    for name in names {
        let rendered = render_application(&resolved, name, target, &ctx.catalog)
            .map_err(|e| Failure::new(Exit::Generate, e.code(), e.to_string()))?;
        files.extend(rendered.files);
        warnings.extend(rendered.warnings);
    }
    let mut written = Vec::new();
    for f in &files {
        let dest: PathBuf = outdir.join(&f.path);
        write(&dest, &f.contents)?;
        written.push(dest.display().to_string());
    }
    for w in &warnings {
        ctx.note(&format!("warning: {w}"));
    }
    match ctx.format {
        Format::Json => stdout(&format!(
            "{}\n",
            serde_json::to_string_pretty(&json!({ "written": written, "warnings": warnings }))
                .unwrap()
        ))?,
        Format::Text if !ctx.quiet => {
            stdout(&written.iter().map(|w| format!("{w}\n")).collect::<String>())?
        }
        Format::Text => {}
    }
    Ok(Exit::Ok)
}

pub fn init(
    ctx: &Context,
    ml_path: &Path,
    out: &Path,
    defaults: bool,
    preset: Option<&Path>,
) -> Result<Exit, Failure> {
    let ml = load_ml(ml_path)?;
    let answers = match preset {
        Some(path) => load_answers(path)?,
        None => DeploymentAnswers::default(),
    };
    let stdin = io::stdin();
    let mut prompter = Prompter::new(stdin.lock(), io::stderr(), defaults);
    let answers = complete(&ml, answers, &ctx.catalog, &mut prompter)?;
    write(out, &answers.to_text())?;
    ctx.note(&format!("wrote {}", out.display()));
    Ok(Exit::Ok)
}

pub fn fmt(ctx: &Context, paths: &[PathBuf], check: bool) -> Result<Exit, Failure> {
    let mut unformatted = Vec::new();
    for path in paths {
        let text = read(path)?;
        let model = parse_dl(&text).map_err(|e| Failure::parse(path, &e))?;
        let canonical = print_dl(&model);
        if canonical == text {
            continue;
        }
        if check {
            unformatted.push(path.display().to_string());
        } else {
            write(path, &canonical)?;
            ctx.note(&format!("formatted {}", path.display()));
        }
    }
    if unformatted.is_empty() {
        return Ok(Exit::Ok);
    }
    let message = format!("not canonically formatted: {}", unformatted.join(", "));
    Err(Failure::new(Exit::Invalid, "UNFORMATTED", message))
}

pub fn estimate(ctx: &Context, fleet: u64, csv: bool) -> Result<Exit, Failure> {
    let estimate = fleet_estimate(fleet);
    let text = if csv {
        estimate.to_csv()
    } else if ctx.format == Format::Json {
        format!("{}\n", serde_json::to_string_pretty(&estimate).unwrap())
    } else {
        estimate.to_table()
    };
    stdout(&text)?;
    Ok(Exit::Ok)
}
