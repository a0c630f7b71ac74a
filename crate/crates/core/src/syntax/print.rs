use std::fmt::Write;

use crate::dl::*;

const INDENT: &str = "    ";

/// Canonical text of a model: type declarations first, then databases,
/// then platforms, with a blank line before every top-level block.
pub fn print_dl(model: &DlModel) -> String {
    let mut out = String::new();
    for t in &model.types {
        let _ = writeln!(out, "{} {}", t.category.keyword(), t.name);
    }
    for db in &model.databases {
        separate(&mut out);
        let _ = writeln!(out, "database {} : {} {{", db.name, db.db_type);
        for p in &db.properties {
            line(&mut out, 1, &print_property(p));
        }
        out.push_str("}\n");
    }
    for platform in &model.platforms {
        separate(&mut out);
        let _ = writeln!(
            out,
            "platform {} : {} {{",
            platform.name, platform.platform_type
        );
        for cluster in &platform.clusters {
            line(&mut out, 1, &format!("cluster {} {{", cluster.name));
            for app in &cluster.applications {
                line(&mut out, 2, &format!("application {} {{", app.name));
                for c in &app.containers {
                    line(
                        &mut out,
                        3,
                        &format!("container {} : {} {{", c.name, c.container_type),
                    );
                    if let Some(db) = &c.deploys {
                        line(&mut out, 4, &format!("deploys {db}"));
                    }
                    for p in &c.properties {
                        line(&mut out, 4, &print_property(p));
                    }
                    line(&mut out, 3, "}");
                }
                line(&mut out, 2, "}");
            }
            line(&mut out, 1, "}");
        }
        out.push_str("}\n");
    }
    out
}

/// `key = value`, `key = a, b` or `key = [a, b]`.
pub fn print_property(p: &Property) -> String {
    match &p.value {
        PropertyValue::Scalar(s) => format!("{} = {}", p.key, s),
        PropertyValue::List(items) => format!("{} = {}", p.key, items.join(", ")),
        PropertyValue::Array(items) => format!("{} = [{}]", p.key, items.join(", ")),
    }
}

fn separate(out: &mut String) {
    if !out.is_empty() {
        out.push('\n');
    }
}

fn line(out: &mut String, depth: usize, text: &str) {
    for _ in 0..depth {
        out.push_str(INDENT);
    }
    out.push_str(text);
    out.push('\n');
}
