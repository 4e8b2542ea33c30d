//! Per-solve timings of the formula routes against the matrix route.

use std::time::Instant;

use serde::Serialize;

use super::{Method, SolverContext};
use crate::field::FieldElement;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BenchRow {
    pub method: Method,
    pub p: u32,
    pub n: usize,
    /// p-degree of `L`.
    pub deg: usize,
    pub median_ns: u128,
}

impl BenchRow {
    pub fn csv_header() -> &'static str {
        "method,p,n,deg,median_ns"
    }

    pub fn to_csv(&self) -> String {
        format!("{},{},{},{},{}", self.method, self.p, self.n, self.deg, self.median_ns)
    }
}

/// Median wall time of one `solve` per method over the given right-hand
/// sides. Methods that do not apply to the context are skipped; an empty
/// input yields no rows.
pub fn bench_rows(ctx: &SolverContext, rhs: &[FieldElement]) -> Vec<BenchRow> {
    if rhs.is_empty() {
        return Vec::new();
    }
    let mut methods = vec![Method::Thm1];
    if ctx.thm2_applicable() {
        methods.push(Method::Thm2);
    }
    methods.push(Method::Matrix);
    methods
        .into_iter()
        .map(|method| {
            let mut samples: Vec<u128> = rhs
                .iter()
                .map(|a| {
                    let start = Instant::now();
                    let out = ctx.solve(a, method);
                    let ns = start.elapsed().as_nanos();
                    std::hint::black_box(out).expect("bench solve failed");
                    ns
                })
                .collect();
            samples.sort_unstable();
            BenchRow {
                method,
                p: ctx.p(),
                n: ctx.n(),
                deg: ctx.original.p_degree().unwrap_or(0),
                median_ns: samples[samples.len() / 2],
            }
        })
        .collect()
}
