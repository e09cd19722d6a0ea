//! Data-parallel helpers. With the `parallel` feature these run on the rayon
//! pool; without it they are plain sequential loops with identical results.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Order-preserving map over a slice.
#[cfg(feature = "parallel")]
pub fn par_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn par_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    seq_map(items, f)
}

/// Sequential reference for [`par_map`].
pub fn seq_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

pub fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}

use crate::error::Result;
use crate::homology::is_homologically_trivial;
use crate::invariants::{count_fibers, report, InvariantReport};
use crate::library::family;

/// One family instance to check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Job {
    pub family: String,
    pub genus: u32,
    pub n: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Checked {
    pub job: Job,
    pub letters: usize,
    pub trivial: bool,
    pub report: Option<InvariantReport>,
}

/// Every `(family, g)` with `1 <= g <= max_genus`; `torus_elliptic` only at
/// genus 1.
pub fn jobs(families: &[&str], max_genus: u32, n: u32) -> Vec<Job> {
    let mut out = Vec::new();
    for &f in families {
        for genus in 1..=max_genus {
            if f == "torus_elliptic" && genus != 1 {
                continue;
            }
            out.push(Job {
                family: f.to_string(),
                genus,
                n,
            });
        }
    }
    out
}

fn check(job: &Job) -> Result<Checked> {
    let r = family(&job.family, job.genus, job.n)?;
    let trivial = is_homologically_trivial(&r)?.trivial;
    let report = if trivial {
        Some(report(job.genus, &count_fibers(&r)?, false)?)
    } else {
        None
    };
    Ok(Checked {
        job: job.clone(),
        letters: r.word.len(),
        trivial,
        report,
    })
}

/// Checks every job; runs on the rayon pool when `parallel` is set and the
/// feature is enabled.
pub fn verify_jobs(jobs: &[Job], parallel: bool) -> Result<Vec<Checked>> {
    if parallel {
        par_map(jobs, check).into_iter().collect()
    } else {
        seq_map(jobs, check).into_iter().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seq_and_par_agree() {
        let js = jobs(&["A", "B", "C", "D", "GSR_capped", "torus_elliptic", "C_printed"], 3, 1);
        assert_eq!(js.len(), 6 * 3 + 1);
        let a = verify_jobs(&js, false).unwrap();
        let b = verify_jobs(&js, true).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().filter(|c| c.job.family != "C_printed").all(|c| c.trivial));
        assert!(a.iter().filter(|c| c.job.family == "C_printed").all(|c| !c.trivial));
    }
}
