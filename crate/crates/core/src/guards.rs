//! Instance-size limits for the exponential searches.

use std::fmt;
use std::str::FromStr;

/// Limits every exhaustive search checks before it starts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Guards {
    /// Hat assignments the exact solver may track.
    pub solver_assignments: u128,
    /// Total guess-table entries the exact solver may branch on.
    pub solver_tables: u128,
    /// Assignments a defeating-assignment enumeration may visit.
    pub enumeration: u128,
    /// Vertex limit for circumference and longest-path search.
    pub cycle_vertices: usize,
    /// Vertex limit of the t-ary tree searched for.
    pub tree_vertices: usize,
    /// Search nodes the exact solver may expand.
    pub search_nodes: u64,
}

impl Default for Guards {
    fn default() -> Self {
        Guards {
            solver_assignments: 1_000_000,
            solver_tables: 100_000,
            enumeration: 10_000_000,
            cycle_vertices: 20,
            tree_vertices: 64,
            search_nodes: 50_000_000,
        }
    }
}

const KEYS: [&str; 6] = ["assignments", "tables", "enumeration", "vertices", "tree", "nodes"];

impl FromStr for Guards {
    type Err = String;

    /// Comma-separated limits, either positional in the order
    /// `assignments,tables,enumeration,vertices,tree,nodes` (empty fields keep
    /// the default) or as `key=value` pairs using those names.
    fn from_str(s: &str) -> Result<Self, String> {
        let mut g = Guards::default();
        for (pos, field) in s.split(',').map(str::trim).enumerate() {
            if field.is_empty() {
                continue;
            }
            let (key, value) = match field.split_once('=') {
                Some((k, v)) => (k.trim(), v.trim()),
                None => (*KEYS.get(pos).ok_or_else(|| format!("too many guard fields in `{s}`"))?, field),
            };
            let value: u128 = value.replace('_', "").parse().map_err(|_| format!("bad guard value `{value}`"))?;
            match key {
                "assignments" => g.solver_assignments = value,
                "tables" => g.solver_tables = value,
                "enumeration" => g.enumeration = value,
                "vertices" => g.cycle_vertices = value as usize,
                "tree" => g.tree_vertices = value as usize,
                "nodes" => g.search_nodes = value as u64,
                other => return Err(format!("unknown guard `{other}`")),
            }
        }
        Ok(g)
    }
}

impl fmt::Display for Guards {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "assignments={},tables={},enumeration={},vertices={},tree={},nodes={}",
            self.solver_assignments,
            self.solver_tables,
            self.enumeration,
            self.cycle_vertices,
            self.tree_vertices,
            self.search_nodes
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        let g: Guards = "10,,30".parse().unwrap();
        assert_eq!(g.solver_assignments, 10);
        assert_eq!(g.solver_tables, Guards::default().solver_tables);
        assert_eq!(g.enumeration, 30);
        let g: Guards = "nodes=5, vertices=8".parse().unwrap();
        assert_eq!((g.search_nodes, g.cycle_vertices), (5, 8));
        assert!("bogus=1".parse::<Guards>().is_err());
        assert!("1,2,3,4,5,6,7".parse::<Guards>().is_err());
        let d = Guards::default();
        assert_eq!(d.to_string().parse::<Guards>().unwrap(), d);
    }
}
