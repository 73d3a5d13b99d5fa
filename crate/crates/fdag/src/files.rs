//! Text formats: the `.fdag` instance format, allocation files, and the
//! result rendering (key-value or JSON).
//!
//! Instance files are line oriented: `fdag 1`, then `n <n> k <k> [d <t>]`,
//! then one `a <u> <v>` line per arc. `#` starts a comment anywhere.

use crate::dag::PreferenceGraph;
use crate::error::{Error, Result};
use crate::model::{dissatisfaction_profile, Allocation, Instance, SolveResult};
use std::fmt::Write as _;

pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut lines = meaningful_lines(text);
    match lines.next() {
        Some("fdag 1") => {}
        Some(l) => return Err(Error::Parse(format!("expected `fdag 1` header, got `{l}`"))),
        None => return Err(Error::Parse("empty instance file".into())),
    }
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("missing `n ... k ...` line".into()))?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    let (n, k, threshold) = match tokens.as_slice() {
        ["n", n, "k", k] => (parse_num(n)?, parse_num(k)?, None),
        ["n", n, "k", k, "d", d] => (parse_num(n)?, parse_num(k)?, Some(parse_num(d)?)),
        _ => {
            return Err(Error::Parse(format!(
                "bad size line `{header}`, expected `n <n> k <k> [d <t>]`"
            )))
        }
    };
    let mut arcs = Vec::new();
    for line in lines {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.as_slice() {
            ["a", u, v] => arcs.push((parse_num(u)?, parse_num(v)?)),
            _ => return Err(Error::Parse(format!("bad arc line `{line}`"))),
        }
    }
    let g = PreferenceGraph::build(n, &arcs)?;
    Ok(match threshold {
        Some(d) => Instance::with_threshold(g, k, d),
        None => Instance::new(g, k),
    })
}

pub fn serialize_instance(inst: &Instance, comment: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(c) = comment {
        for line in c.lines() {
            let _ = writeln!(out, "# {line}");
        }
    }
    out.push_str("fdag 1\n");
    match inst.threshold {
        Some(d) => {
            let _ = writeln!(out, "n {} k {} d {}", inst.n(), inst.k, d);
        }
        None => {
            let _ = writeln!(out, "n {} k {}", inst.n(), inst.k);
        }
    }
    for &(u, v) in inst.graph.arcs() {
        let _ = writeln!(out, "a {u} {v}");
    }
    out
}

pub fn parse_allocation(text: &str, inst: &Instance) -> Result<Allocation> {
    let mut lists = vec![Vec::new(); inst.k];
    for line in meaningful_lines(text) {
        let (head, rest) = line
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("bad allocation line `{line}`")))?;
        let agent = match head.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["agent", i] => parse_num(i)?,
            _ => return Err(Error::Parse(format!("bad allocation line `{line}`"))),
        };
        if agent >= inst.k {
            return Err(Error::Parse(format!(
                "agent {agent} out of range, instance has k = {}",
                inst.k
            )));
        }
        for tok in rest.split_whitespace() {
            let v = parse_num(tok)?;
            if v >= inst.n() {
                return Err(Error::InvalidVertex { vertex: v, n: inst.n() });
            }
            lists[agent].push(v);
        }
    }
    let alloc = Allocation::from_lists(inst.n(), &lists);
    alloc.validate(inst)?;
    Ok(alloc)
}

pub fn serialize_allocation(alloc: &Allocation) -> String {
    let mut out = String::new();
    for i in 0..alloc.k() {
        let items: Vec<String> = alloc.items_of(i).iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "agent {i}: {}", items.join(" "));
    }
    out
}

pub fn render_result(inst: &Instance, result: &SolveResult, json: bool) -> String {
    if json {
        let agents: Vec<Vec<usize>> = (0..inst.k).map(|i| result.allocation.items_of(i)).collect();
        let doc = serde_json::json!({
            "optimum": result.optimum,
            "solver": result.solver,
            "agents": agents,
            "dissatisfaction": result.profile.values,
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("plain data serializes");
        s.push('\n');
        s
    } else {
        let mut out = String::new();
        let _ = writeln!(out, "optimum: {}", result.optimum);
        let _ = writeln!(out, "solver: {}", result.solver);
        for i in 0..inst.k {
            let items: Vec<String> = result
                .allocation
                .items_of(i)
                .iter()
                .map(|v| v.to_string())
                .collect();
            let _ = writeln!(out, "agent {i}: {}", items.join(" "));
            let _ = writeln!(out, "dissatisfaction {i}: {}", result.profile.values[i]);
        }
        out
    }
}

/// Verification report for an instance/allocation pair.
pub fn render_verdict(inst: &Instance, alloc: &Allocation, json: bool) -> Result<(String, bool)> {
    let profile = dissatisfaction_profile(inst, alloc)?;
    let ok = match inst.threshold {
        Some(d) => profile.max() <= d,
        None => true,
    };
    let text = if json {
        let doc = serde_json::json!({
            "max_dissatisfaction": profile.max(),
            "dissatisfaction": profile.values,
            "threshold": inst.threshold,
            "satisfied": ok,
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("plain data serializes");
        s.push('\n');
        s
    } else {
        let mut out = String::new();
        let _ = writeln!(out, "max_dissatisfaction: {}", profile.max());
        for (i, d) in profile.values.iter().enumerate() {
            let _ = writeln!(out, "dissatisfaction {i}: {d}");
        }
        if let Some(d) = inst.threshold {
            let _ = writeln!(out, "threshold: {d}");
            let _ = writeln!(out, "satisfied: {ok}");
        }
        out
    };
    Ok((text, ok))
}

fn parse_num(tok: &str) -> Result<usize> {
    tok.parse()
        .map_err(|_| Error::Parse(format!("expected a number, got `{tok}`")))
}

fn meaningful_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
}
