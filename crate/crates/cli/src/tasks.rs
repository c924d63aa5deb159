//! One function per subcommand; each returns the artifact text.

use std::fmt::Write as _;

use num_complex::Complex64;
use serde::Serialize;
use szego_core::format::{num, to_json};
use szego_core::measures::{moments, schur_from_measure};
use szego_core::para::rule_from_nodes;
use szego_core::sof::{augmented_zeros, f_sequence, interlace_check, sof_f1, sof_family, trajectory_csv, SofContext, SofFamilySpec, SofMode};
use szego_core::support::support_estimate;
use szego_core::{cis, Result};

use crate::config::{ExperimentConfig, Format, Task};

pub fn run(cfg: &ExperimentConfig) -> Result<String> {
    match cfg.task {
        Task::Moments => run_moments(cfg),
        Task::Schur => run_schur(cfg),
        Task::Rule => run_rule(cfg),
        Task::Zeros => run_zeros(cfg),
        Task::Interlace => run_interlace(cfg),
        Task::Fsequence => run_fsequence(cfg),
        Task::Support => run_support(cfg),
    }
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

fn context(cfg: &ExperimentConfig, order: usize) -> Result<SofContext> {
    SofContext::new(&schur_from_measure(&cfg.measure, order)?, order)
}

fn run_moments(cfg: &ExperimentConfig) -> Result<String> {
    let n = cfg.n.unwrap_or(0);
    let m = moments(&cfg.measure, n)?;
    Ok(match cfg.format {
        Format::Csv => {
            let mut out = String::from("k,re,im\n");
            for (k, c) in m.as_slice().iter().enumerate() {
                let _ = writeln!(out, "{k},{},{}", num(c.re), num(c.im));
            }
            out
        }
        Format::Json => {
            let c: Vec<[f64; 2]> = m.as_slice().iter().map(|&c| pair(c)).collect();
            to_json(&serde_json::json!({ "moments": c }))
        }
    })
}

fn run_schur(cfg: &ExperimentConfig) -> Result<String> {
    let n = cfg.n.unwrap_or(0);
    let s = schur_from_measure(&cfg.measure, n)?;
    Ok(match cfg.format {
        Format::Csv => {
            let mut out = String::from("n,re,im,modulus\n");
            for (k, a) in s.as_slice().iter().enumerate() {
                let _ = writeln!(out, "{},{},{},{}", k + 1, num(a.re), num(a.im), num(a.norm()));
            }
            out
        }
        Format::Json => {
            let a: Vec<[f64; 2]> = s.as_slice().iter().map(|&a| pair(a)).collect();
            to_json(&serde_json::json!({ "schur": a }))
        }
    })
}

fn run_rule(cfg: &ExperimentConfig) -> Result<String> {
    let n = cfg.n.unwrap_or(0);
    let ctx = context(cfg, n)?;
    let w = cfg.anchor();
    let f = sof_f1(ctx.table(), n, cis(w), cfg.omega0)?;
    let rule = rule_from_nodes(ctx.table(), f.zeros, cfg.omega0, format!("f1 anchored at {}", num(w)))?;
    Ok(match cfg.format {
        Format::Csv => rule.to_csv(),
        Format::Json => rule.to_json(),
    })
}

fn family(cfg: &ExperimentConfig) -> SofFamilySpec {
    SofFamilySpec {
        omega0: cfg.omega0,
        anchor: cis(cfg.anchor()),
        mode: cfg.mode(),
    }
}

fn order_range(cfg: &ExperimentConfig) -> std::ops::RangeInclusive<usize> {
    match (cfg.n_max, cfg.n) {
        (Some(top), _) => cfg.n_min.unwrap_or(1).max(1)..=top,
        (None, n) => {
            let n = n.unwrap_or(1);
            n..=n
        }
    }
}

#[derive(Serialize)]
struct ZeroSet {
    n: usize,
    zeros: Vec<f64>,
}

fn run_zeros(cfg: &ExperimentConfig) -> Result<String> {
    let orders = order_range(cfg);
    let ctx = context(cfg, *orders.end())?;
    let fam = sof_family(&ctx, &family(cfg), orders)?;
    Ok(match cfg.format {
        Format::Csv => trajectory_csv(&fam),
        Format::Json => {
            let sets: Vec<ZeroSet> = fam
                .into_iter()
                .map(|f| ZeroSet {
                    n: f.order,
                    zeros: f.zeros,
                })
                .collect();
            to_json(&sets)
        }
    })
}

#[derive(Serialize)]
struct PairReport {
    n: usize,
    next: usize,
    result: &'static str,
    witness: Option<String>,
}

fn run_interlace(cfg: &ExperimentConfig) -> Result<String> {
    let orders = order_range(cfg);
    let ctx = context(cfg, *orders.end())?;
    let spec = family(cfg);
    let exclude = match spec.mode {
        SofMode::F1 => Some(cfg.anchor()),
        _ => None,
    };
    let fam = sof_family(&ctx, &spec, orders)?;
    let reports: Vec<PairReport> = fam
        .windows(2)
        .map(|p| {
            let r = interlace_check(&p[0].zeros, &p[1].zeros, cfg.omega0, exclude);
            PairReport {
                n: p[0].order,
                next: p[1].order,
                result: if r.ok { "pass" } else { "fail" },
                witness: r.witness,
            }
        })
        .collect();
    Ok(match cfg.format {
        Format::Csv => {
            let mut out = String::from("n,next,result,witness\n");
            for r in &reports {
                let _ = writeln!(out, "{},{},{},{}", r.n, r.next, r.result, r.witness.as_deref().unwrap_or(""));
            }
            out
        }
        Format::Json => to_json(&reports),
    })
}

#[derive(Serialize)]
struct FRule {
    n: usize,
    theta: Vec<f64>,
    weight: Vec<f64>,
}

fn run_fsequence(cfg: &ExperimentConfig) -> Result<String> {
    let count = cfg.n.unwrap_or(0);
    let ctx = context(cfg, count)?;
    let anchors: Vec<Complex64> = if cfg.anchor_angles.len() >= count {
        cfg.anchor_angles.iter().map(|&t| cis(t)).collect()
    } else {
        vec![cis(cfg.anchor()); count]
    };
    let seq = f_sequence(ctx.table(), &anchors, count, cfg.omega0)?;
    let rules = seq
        .iter()
        .map(|f| {
            let nodes = augmented_zeros(f);
            let r = rule_from_nodes(ctx.table(), nodes, cfg.omega0, String::new())?;
            Ok(FRule {
                n: f.order,
                theta: r.node_angles,
                weight: r.weights,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(match cfg.format {
        Format::Csv => {
            let mut out = String::from("n,k,theta,weight\n");
            for r in &rules {
                for (k, (t, h)) in r.theta.iter().zip(&r.weight).enumerate() {
                    let _ = writeln!(out, "{},{},{},{}", r.n, k + 1, num(*t), num(*h));
                }
            }
            out
        }
        Format::Json => to_json(&rules),
    })
}

fn run_support(cfg: &ExperimentConfig) -> Result<String> {
    let est = support_estimate(
        &cfg.measure,
        &cfg.anchor_angles,
        cfg.n_max.unwrap_or(0),
        cfg.epsilon.unwrap_or(0.0),
        cfg.n_min,
    )?;
    Ok(match cfg.format {
        Format::Csv => {
            let mut out = String::from("lo,hi\n");
            for (lo, hi) in &est.arcs {
                let _ = writeln!(out, "{},{}", num(*lo), num(*hi));
            }
            out
        }
        Format::Json => est.to_json(),
    })
}
