use rayon::prelude::*;

use super::config::Job;
use crate::indices::{report, IndexError, IndexReport, Prepared};

/// A library error together with the task that raised it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunError {
    pub task: String,
    pub error: IndexError,
}

impl std::fmt::Display for RunError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "task {}: {}", self.task, self.error)
    }
}

impl std::error::Error for RunError {}

/// One report per task, in task order. Tasks run in parallel.
pub fn run(job: &Job) -> Result<Vec<IndexReport>, RunError> {
    if job.tasks.is_empty() {
        return Ok(Vec::new());
    }
    let prepared = Prepared::new(&job.root_system, &job.lattice, &job.weights)
        .map_err(|error| RunError { task: "prepare".into(), error })?;
    job.tasks
        .par_iter()
        .map(|t| {
            report(&prepared, &job.lattice, t, &job.options).map_err(|error| RunError { task: t.name(), error })
        })
        .collect()
}
