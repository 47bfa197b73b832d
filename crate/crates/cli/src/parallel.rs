//! Multi-threaded Monte-Carlo driver. Partitions are fixed by the
//! configuration, so the result is bit-identical for any worker count.

use casimir_friction::numerics::{mc_integrate_partition, DomainSampler, McConfig, McResult};
use rayon::prelude::*;

use crate::error::{CliError, CliResult};

pub fn mc_integrate_parallel<S, F>(f: F, sampler: &S, cfg: McConfig, workers: usize) -> CliResult<McResult>
where
    S: DomainSampler + Sync,
    F: Fn(&S::Point) -> f64 + Sync,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| CliError::Io(e.to_string()))?;
    let partials = pool.install(|| {
        (0..cfg.partitions.max(1))
            .into_par_iter()
            .map(|p| mc_integrate_partition(&f, sampler, cfg, p))
            .collect::<Result<Vec<_>, _>>()
    })?;
    Ok(McResult::from_partials(&partials, cfg.seed))
}
