//! Browser bindings: graph analysis, hat guessing numbers and one
//! adversary run, each returning plain text for the demo page.

use std::fmt::Write;

use hatcheck::constructions::block_oracle;
use hatcheck::graph::{block_decomposition, circumference, greedy_proper_coloring, parse_graph};
use hatcheck::rng::SplitMix64;
use hatcheck::solver::hat_guessing_number;
use hatcheck::{GuessCount, Guards, Strategy};
use wasm_bindgen::prelude::*;

/// Smaller than the command-line defaults so a click never stalls the tab
/// for long.
fn browser_guards() -> Guards {
    Guards { solver_assignments: 50_000, search_nodes: 2_000_000, cycle_vertices: 16, ..Guards::default() }
}

fn join(vs: &[usize]) -> String {
    vs.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

pub fn analyze_text(text: &str) -> Result<String, String> {
    let g = parse_graph(text).map_err(|e| e.to_string())?;
    let dec = block_decomposition(&g);
    let mut out = String::new();
    let _ = writeln!(out, "vertices: {}", g.vertex_count());
    let _ = writeln!(out, "edges: {}", g.edge_count());
    let _ = writeln!(out, "connected: {}", g.is_connected());
    for b in &dec.blocks {
        let _ = writeln!(out, "block: [{}]", join(b));
    }
    let _ = writeln!(out, "cut-vertices: [{}]", join(&dec.cut_vertices));
    let classes: Vec<String> = greedy_proper_coloring(&g).classes.iter().map(|c| format!("[{}]", join(c))).collect();
    let _ = writeln!(out, "colour-classes: {}", classes.join(" "));
    match circumference(&g, browser_guards().cycle_vertices) {
        Ok(c) => {
            let _ = writeln!(out, "circumference: {c}");
        }
        Err(e) => {
            let _ = writeln!(out, "circumference: {e}");
        }
    }
    Ok(out)
}

pub fn hat_number_text(text: &str, guesses: u32) -> Result<String, String> {
    let g = parse_graph(text).map_err(|e| e.to_string())?;
    let gc = match guesses {
        1 => GuessCount::One,
        2 => GuessCount::Two,
        _ => return Err("guesses must be 1 or 2".into()),
    };
    let sweep = hat_guessing_number(&g, gc, &browser_guards()).map_err(|e| e.to_string())?;
    let mut out = format!("hat guessing number ({guesses} guess): {}\n", sweep.value);
    for (q, o) in &sweep.outcomes {
        let _ = writeln!(out, "q={q}: winner {} ({} search nodes)", o.winner, o.nodes);
    }
    if let Some((q, o)) = sweep.outcomes.iter().rev().find(|(_, o)| o.certificate.is_some()) {
        let _ = write!(out, "\nwinning strategy at q={q}:\n{}", o.certificate.as_ref().map(Strategy::to_text).unwrap_or_default());
    }
    Ok(out)
}

pub fn defeat_text(text: &str, ell: u32, seed: u32) -> Result<String, String> {
    let g = parse_graph(text).map_err(|e| e.to_string())?;
    let oracle = block_oracle(&g, ell, &browser_guards()).map_err(|e| e.to_string())?;
    let s = Strategy::random(oracle.graph(), oracle.budget(), oracle.guess_count(), &mut SplitMix64::new(seed as u64))
        .map_err(|e| e.to_string())?;
    let (a, trace) = oracle.defeat_traced(&s).map_err(|e| e.to_string())?;
    let mut out = format!("budget: {}\nassignment: {a}\n", oracle.budget());
    let _ = writeln!(out, "every guess wrong: {}\n\ntrace:", s.is_defeating(&a));
    for line in trace {
        let _ = writeln!(out, "{line}");
    }
    let _ = write!(out, "\nrandom strategy (seed {seed}):\n{}", s.to_text());
    Ok(out)
}

/// Blocks, cut vertices, greedy colouring and circumference.
#[wasm_bindgen]
pub fn analyze(text: &str) -> Result<String, JsValue> {
    analyze_text(text).map_err(|e| JsValue::from_str(&e))
}

/// Exact hat guessing number with one or two guesses per player.
#[wasm_bindgen]
pub fn hat_number(text: &str, guesses: u32) -> Result<String, JsValue> {
    hat_number_text(text, guesses).map_err(|e| JsValue::from_str(&e))
}

/// Draws a random strategy at `ell + 1` colours and lets the block
/// adversary defeat it.
#[wasm_bindgen]
pub fn defeat(text: &str, ell: u32, seed: u32) -> Result<String, JsValue> {
    defeat_text(text, ell, seed).map_err(|e| JsValue::from_str(&e))
}
