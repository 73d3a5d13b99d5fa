//! Dispatcher: classify the instance and route it to the cheapest solver
//! whose preconditions hold, falling back down a fixed priority order.

use crate::bitset::VertexSet;
use crate::config::Budgets;
use crate::dag::ShapeTag;
use crate::error::{Error, Result};
use crate::model::{Allocation, Instance, SolveResult};
use crate::modular;
use crate::oracle;
use crate::solvers;

#[derive(Clone, Debug)]
pub struct DispatchReport {
    pub tags: Vec<ShapeTag>,
    pub chosen: String,
    /// Solvers considered before the chosen one, with why they passed.
    pub fallbacks: Vec<String>,
    pub notes: Vec<String>,
}

pub fn dispatch_solve(inst: &Instance) -> Result<(SolveResult, DispatchReport)> {
    dispatch_solve_with(inst, &Budgets::default())
}

pub fn dispatch_solve_with(
    inst: &Instance,
    budgets: &Budgets,
) -> Result<(SolveResult, DispatchReport)> {
    let g = &inst.graph;
    let n = g.n();
    let k = inst.k;
    let mut report = DispatchReport {
        tags: g.classify_shape(),
        chosen: String::new(),
        fallbacks: Vec::new(),
        notes: Vec::new(),
    };

    // More agents than items: handing each of the first n agents one item
    // is optimal regardless of the graph, so no solver runs at all.
    if k > n {
        let alloc = oracle::canonical_k_gt_n(inst);
        let result = SolveResult::checked(inst, alloc, n, "canonical_k_gt_n", None)?;
        report.chosen = "canonical_k_gt_n".into();
        report.notes.push(format!(
            "k = {k} > n = {n}: canonical answer, no solver invoked"
        ));
        return Ok((result, report));
    }

    if k == 1 {
        // One agent takes every source and thereby covers the whole graph.
        let sources = VertexSet::from_iter(n, g.sources());
        let result = SolveResult::checked(
            inst,
            Allocation::from_sets(vec![sources]),
            0,
            "single_agent",
            None,
        )?;
        report.chosen = "single_agent".into();
        return Ok((result, report));
    }

    let note_pass = |report: &mut DispatchReport, name: &str, why: String| {
        report.fallbacks.push(format!("{name}: {why}"));
    };

    if k == 2 {
        let result = solvers::solve_two_agents(inst)?;
        report.chosen = result.solver.into();
        return Ok((result, report));
    }

    if report.tags.contains(&ShapeTag::OutStarCollection) {
        match solvers::solve_out_stars(inst) {
            Ok(result) => {
                report.chosen = result.solver.into();
                return Ok((result, report));
            }
            Err(e) => note_pass(&mut report, "out_stars", e.to_string()),
        }
    }

    if report.tags.contains(&ShapeTag::WidthLeTwo) {
        match solvers::solve_width_two(inst) {
            Ok(result) => {
                report.chosen = result.solver.into();
                return Ok((result, report));
            }
            Err(e) => note_pass(&mut report, "width_two", e.to_string()),
        }
    }

    if report.tags.contains(&ShapeTag::OutForest) {
        if k <= budgets.dp_k_cap {
            match solvers::solve_out_forest_with(inst, budgets, true) {
                Ok(result) => {
                    report.chosen = result.solver.into();
                    return Ok((result, report));
                }
                Err(e) => note_pass(&mut report, "out_forest", e.to_string()),
            }
        } else {
            note_pass(
                &mut report,
                "out_forest",
                format!("k = {k} above DP cap {}", budgets.dp_k_cap),
            );
        }
    }

    let mp = modular::modular_partition(g);
    report
        .notes
        .push(format!("modular partition: {} modules", mp.d()));
    if mp.all_independent_sets() {
        match modular::assignable_sets(g, &mp.vertex_lists())
            .and_then(|fam| modular::solve_is_modules_with(inst, &fam, budgets))
        {
            Ok(result) => {
                report.chosen = result.solver.into();
                return Ok((result, report));
            }
            Err(e) => note_pass(&mut report, "is_modules", e.to_string()),
        }
    } else {
        note_pass(&mut report, "is_modules", "partition is not all-IS".into());
    }

    match modular::solve_modular_fpt_with(inst, &mp, budgets) {
        Ok(result) => {
            report.chosen = result.solver.into();
            return Ok((result, report));
        }
        Err(e) => note_pass(&mut report, "modular_fpt", e.to_string()),
    }

    match oracle::brute_force_optimum_with(inst, budgets) {
        Ok(result) => {
            report.chosen = result.solver.into();
            return Ok((result, report));
        }
        Err(e) => note_pass(&mut report, "oracle", e.to_string()),
    }

    Err(Error::UnsolvableWithinBudget(format!(
        "no solver applies within budget; attempts: {}",
        report.fallbacks.join("; ")
    )))
}
