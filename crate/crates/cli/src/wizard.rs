//! Terminal prompt flow that completes a polystore model into a set of
//! deployment answers.

use std::io::{BufRead, Write};

use polyforge_core::dl::is_identifier;
use polyforge_core::ml::{required_databases, MlModel};
use polyforge_core::transform::answers::{CONTAINER_TYPES, PLATFORM_TYPES, TECHNOLOGIES};
use polyforge_core::transform::{DbmsCatalog, DeploymentAnswers};

use crate::failure::{Exit, Failure};

pub const DEFAULT_PLATFORM_NAME: &str = "myPlatform";
pub const DEFAULT_CLUSTER_NAME: &str = "myCluster";
pub const DEFAULT_APPLICATION_NAME: &str = "myApplication";

pub struct Prompter<R, W> {
    input: R,
    output: W,
    /// Take the first choice everywhere instead of asking.
    defaults: bool,
}

impl<R: BufRead, W: Write> Prompter<R, W> {
    pub fn new(input: R, output: W, defaults: bool) -> Self {
        Prompter {
            input,
            output,
            defaults,
        }
    }

    fn read_line(&mut self) -> Result<String, Failure> {
        let mut line = String::new();
        let n = self
            .input
            .read_line(&mut line)
            .map_err(|e| Failure::usage(format!("reading answers: {e}")))?;
        if n == 0 {
            return Err(Failure::usage(
                "input ended before every question was answered",
            ));
        }
        Ok(line.trim().to_string())
    }

    fn say(&mut self, text: &str) {
        // prompts are best-effort; a closed stderr must not abort the flow
        let _ = write!(self.output, "{text}");
        let _ = self.output.flush();
    }

    /// Picks one of `options`, by number or name. `free` also accepts any
    /// other identifier.
    fn choose(&mut self, question: &str, options: &[&str], free: bool) -> Result<String, Failure> {
        if self.defaults {
            return Ok(options[0].to_string());
        }
        let mut menu = format!("{question}\n");
        for (i, o) in options.iter().enumerate() {
            menu.push_str(&format!("  {}) {o}\n", i + 1));
        }
        self.say(&menu);
        loop {
            self.say(&format!("choice [{}]: ", options[0]));
            let line = self.read_line()?;
            if line.is_empty() {
                return Ok(options[0].to_string());
            }
            if let Ok(n) = line.parse::<usize>() {
                if (1..=options.len()).contains(&n) {
                    return Ok(options[n - 1].to_string());
                }
            }
            if let Some(o) = options.iter().find(|o| o.eq_ignore_ascii_case(&line)) {
                return Ok(o.to_string());
            }
            if free && is_identifier(&line) {
                return Ok(line);
            }
            self.say(&format!("`{line}` is not one of the listed choices\n"));
        }
    }

    fn name(&mut self, question: &str, default: &str) -> Result<String, Failure> {
        if self.defaults {
            return Ok(default.to_string());
        }
        loop {
            self.say(&format!("{question} [{default}]: "));
            let line = self.read_line()?;
            if line.is_empty() {
                return Ok(default.to_string());
            }
            if is_identifier(&line) {
                return Ok(line);
            }
            self.say(&format!("`{line}` is not a valid name\n"));
        }
    }
}

fn fill<R: BufRead, W: Write>(
    slot: &mut Option<String>,
    ask: impl FnOnce(&mut Prompter<R, W>) -> Result<String, Failure>,
    p: &mut Prompter<R, W>,
) -> Result<(), Failure> {
    if slot.is_none() {
        *slot = Some(ask(p)?);
    }
    Ok(())
}

/// Completes `preset` by asking for every missing answer.
pub fn complete<R: BufRead, W: Write>(
    ml: &MlModel,
    mut answers: DeploymentAnswers,
    catalog: &DbmsCatalog,
    p: &mut Prompter<R, W>,
) -> Result<DeploymentAnswers, Failure> {
    let required = required_databases(ml);
    if let Some(extra) = answers
        .databases
        .iter()
        .find(|d| !required.iter().any(|(name, _)| *name == d.name))
    {
        return Err(Failure::new(
            Exit::Invalid,
            "UNKNOWN_DATABASE",
            format!(
                "answers mention database `{}`, which the model does not declare",
                extra.name
            ),
        ));
    }

    fill(
        &mut answers.platform_type,
        |p| p.choose("Platform type:", &PLATFORM_TYPES, true),
        p,
    )?;
    fill(
        &mut answers.platform_name,
        |p| p.name("Platform name", DEFAULT_PLATFORM_NAME),
        p,
    )?;
    fill(
        &mut answers.cluster_name,
        |p| p.name("Cluster name", DEFAULT_CLUSTER_NAME),
        p,
    )?;
    fill(
        &mut answers.application_name,
        |p| p.name("Application name", DEFAULT_APPLICATION_NAME),
        p,
    )?;
    fill(
        &mut answers.container_type,
        |p| p.choose("Container type:", &CONTAINER_TYPES, false),
        p,
    )?;
    fill(
        &mut answers.technology,
        |p| p.choose("Deployment technology:", &TECHNOLOGIES, false),
        p,
    )?;

    for (name, kind) in required {
        let options: Vec<&str> = catalog.for_kind(kind).map(|i| i.name.as_str()).collect();
        let db = answers.database_mut(&name);
        match &db.dbms {
            Some(dbms) if !options.contains(&dbms.as_str()) => {
                return Err(Failure::new(
                    Exit::Invalid,
                    "UNKNOWN_DBMS",
                    format!(
                        "`{dbms}` is not a catalog DBMS for {kind} databases (choices: {})",
                        options.join(", ")
                    ),
                ));
            }
            Some(_) => {}
            None => {
                let choice = p.choose(
                    &format!("DBMS for {kind} database `{name}`:"),
                    &options,
                    false,
                )?;
                answers.database_mut(&name).dbms = Some(choice);
            }
        }
    }
    Ok(answers)
}

#[cfg(test)]
mod tests {
    use super::*;
    use polyforge_core::ml::parse_ml;

    fn run(ml: &str, input: &str, defaults: bool) -> Result<DeploymentAnswers, Failure> {
        let ml = parse_ml(ml).unwrap();
        let mut p = Prompter::new(input.as_bytes(), Vec::new(), defaults);
        complete(
            &ml,
            DeploymentAnswers::default(),
            &DbmsCatalog::embedded(),
            &mut p,
        )
    }

    #[test]
    fn defaults_pick_first_entries() {
        let a = run("database locmandb : relational {\n}\n", "", true).unwrap();
        assert_eq!(a.platform_type.as_deref(), Some("AWS"));
        assert_eq!(
            a.database("locmandb").unwrap().dbms.as_deref(),
            Some("MariaDB")
        );
    }

    #[test]
    fn scripted_selection() {
        let input = "\nplat\n\n\n1\n2\nMongoDB\n";
        let a = run("database docs : document {\n}\n", input, false).unwrap();
        assert_eq!(a.platform_name.as_deref(), Some("plat"));
        assert_eq!(a.technology.as_deref(), Some("kubernetes"));
        assert_eq!(a.database("docs").unwrap().dbms.as_deref(), Some("MongoDB"));
    }

    #[test]
    fn bad_choices_are_asked_again() {
        let input = "\n\n\n\n\n\nPostgres\n9\n2\n";
        let a = run("database r : relational {\n}\n", input, false).unwrap();
        assert_eq!(a.database("r").unwrap().dbms.as_deref(), Some("MySQL"));
    }

    #[test]
    fn running_out_of_input() {
        let err = run("database r : relational {\n}\n", "\n\n", false).unwrap_err();
        assert_eq!(err.exit, Exit::Io);
    }
}
