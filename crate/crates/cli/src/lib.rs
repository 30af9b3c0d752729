//! Problem-file frontend for the syzlab engine: parsing, task orchestration,
//! report rendering and a result cache.

pub mod cache;
pub mod error;
pub mod problem;
pub mod report;
pub mod run;

use std::fs;
use std::path::{Path, PathBuf};

use serde_json::json;

pub use cache::{Cache, Lookup};
pub use error::{CliError, Result};
pub use report::Format;
pub use run::{Budget, BudgetLevel, Overrides, Task};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone)]
pub struct Options {
    /// Overrides the document's `task`.
    pub task: Option<Task>,
    pub input: PathBuf,
    pub overrides: Overrides,
    pub format: Format,
    pub cache_dir: Option<PathBuf>,
    pub no_cache: bool,
    pub budget: BudgetLevel,
}

impl Options {
    pub fn new(input: impl Into<PathBuf>) -> Self {
        Options {
            task: None,
            input: input.into(),
            overrides: Overrides::default(),
            format: Format::Json,
            cache_dir: None,
            no_cache: false,
            budget: BudgetLevel::Default,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Execution {
    pub output: String,
    pub findings_path: Option<PathBuf>,
    /// `None` when caching is disabled.
    pub cache: Option<Lookup>,
    pub warnings: Vec<String>,
}

fn findings_path(input: &Path) -> PathBuf {
    input.with_file_name("findings.json")
}

pub fn execute(opts: &Options) -> Result<Execution> {
    let text = fs::read_to_string(&opts.input).map_err(|e| CliError::io(&opts.input, e))?;
    let budget = Budget::new(opts.budget);
    let problem = problem::parse_problem(&text, &budget.limits)?;
    let task = match (opts.task, &problem.doc.task) {
        (Some(t), _) => t,
        (None, Some(name)) => Task::parse(name)?,
        (None, None) => return Err(CliError::Usage("no task: give a subcommand or a \"task\" field".into())),
    };
    let params = run::resolve_parameters(task, &problem, &opts.overrides, budget)?;
    let problem_hash = cache::sha256_hex(&[&problem.canonical]);
    let params_json = serde_json::to_string(&params).expect("parameters serialize");
    let key = cache::sha256_hex(&[VERSION, &cache::CACHE_FORMAT.to_string(), &problem.canonical, &params_json]);

    let mut warnings = Vec::new();
    let store = (!opts.no_cache).then(|| {
        let env = std::env::var("SYZLAB_CACHE_DIR").ok();
        Cache::new(cache::resolve_cache_dir(opts.cache_dir.as_deref(), env.as_deref()), VERSION)
    });
    let (lookup, cached) = match &store {
        Some(c) => {
            let (l, v) = c.get(&key);
            if l == Lookup::Corrupt {
                warnings.push(format!("removed corrupt cache entry {key}"));
            }
            (Some(l), v)
        }
        None => (None, None),
    };
    let body = match cached {
        Some(v) => v,
        None => {
            let v = run::run_task(&problem, &params)?;
            if let Some(c) = &store {
                if let Err(e) = c.put(&key, &v) {
                    warnings.push(format!("cache write failed: {e}"));
                }
            }
            v
        }
    };

    let report = report::assemble(report::header(&problem_hash, &params), body);
    let found = report::findings(&report);
    let findings_path = if found.is_empty() {
        None
    } else {
        let path = findings_path(&opts.input);
        let doc = json!({"header": report["header"], "findings": found});
        let text = serde_json::to_string_pretty(&doc).expect("findings serialize") + "\n";
        fs::write(&path, text).map_err(|e| CliError::io(&path, e))?;
        Some(path)
    };
    let output = report::emit(&report, task, opts.format)?;
    Ok(Execution { output, findings_path, cache: lookup, warnings })
}
