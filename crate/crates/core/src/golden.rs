//! The worked five-element poset and ten-vertex graph, replayed end to end.

use crate::chain::{solve_table, ChoicePolicy, WorkTable};
use crate::fixtures;
use crate::oracle::{brute_force_alpha, enumerate_max_antichains, ALPHA_LIMIT, ENUMERATE_LIMIT};
use crate::saturator::{saturate, SaturatorCaps};
use crate::solver::{solve_mmis, SolverConfig};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldenCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, got: String, want: &str) -> GoldenCheck {
    GoldenCheck {
        name,
        passed: got == want,
        detail: if got == want {
            got
        } else {
            format!("got {got}, want {want}")
        },
    }
}

fn pairs(cells: &[(usize, usize)]) -> String {
    let parts: Vec<String> = cells
        .iter()
        .map(|&(a, b)| format!("({},{})", a + 1, b + 1))
        .collect();
    parts.join(" ")
}

pub fn run_golden() -> Vec<GoldenCheck> {
    let mut out = Vec::new();

    let p5 = fixtures::p5().transitive_closure();
    let mut t = WorkTable::from_closure(&p5, ChoicePolicy::AllComparable);
    t.initial_partition();
    out.push(check("poset initial partition", pairs(&t.chosen_cells()), "(1,2)"));
    t.ff_optimize();
    out.push(check(
        "poset chains",
        format!("{:?}", t.chains().map(|p| p.labels()).unwrap_or_default()),
        "[[1, 3], [4, 2], [5]]",
    ));
    out.push(check(
        "poset antichain",
        format!("{:?}", t.general_antichain().map(|a| a.labels()).unwrap_or_default()),
        "[3, 4, 5]",
    ));
    let absent = [0, 1]
        .iter()
        .all(|&v| matches!(t.antichain_for_vertex(v), Ok(None)));
    let none_contain = enumerate_max_antichains(&p5, ENUMERATE_LIMIT)
        .map(|all| all.iter().all(|a| !a.contains(0) && !a.contains(1)))
        .unwrap_or(false);
    out.push(check(
        "poset: no maximum antichain through a1, a2",
        format!("{}", absent && none_contain),
        "true",
    ));

    let d10 = fixtures::d10();
    let c10 = d10.transitive_closure();
    out.push(check("graph fictitious cells", pairs(&c10.fictitious_cells()), "(2,8) (3,10)"));
    let (t, _) = solve_table(&c10, ChoicePolicy::EssentialOnly);
    out.push(check(
        "graph general antichain",
        format!("{:?}", t.general_antichain().map(|a| a.labels()).unwrap_or_default()),
        "[5, 7, 8, 10]",
    ));
    for (v, want) in [
        (1, "[1, 3, 4, 6]"),
        (2, "[1, 2, 3, 4]"),
        (3, "[3, 4, 5, 8]"),
        (4, "[4, 5, 8, 9]"),
        (6, "[3, 4, 5, 6]"),
    ] {
        let got = match t.antichain_for_vertex(v - 1) {
            Ok(Some(a)) => format!("{:?}", a.labels()),
            other => format!("{other:?}"),
        };
        out.push(check("graph per-vertex antichain", got, want));
    }
    let saturated = saturate(&d10, &SaturatorCaps::default()).map(|(d, _)| d);
    out.push(check(
        "graph saturated orientation",
        match &saturated {
            Ok(d) => {
                let mut arcs = d.arcs();
                arcs.sort_unstable();
                pairs(&arcs)
            }
            Err(e) => e.to_string(),
        },
        "(1,5) (1,8) (2,5) (2,6) (2,9) (2,10) (3,7) (3,9) (4,7) (4,10) (6,9) (8,6) (10,6) (10,9)",
    ));
    out.push(check(
        "graph saturated layers",
        match &saturated {
            Ok(d) => format!("{:?}", d.layers().iter().map(|l| l.labels()).collect::<Vec<_>>()),
            Err(e) => e.to_string(),
        },
        "[[1, 2, 3, 4], [5, 7, 8, 10], [6], [9]]",
    ));
    let g = fixtures::g10();
    let alpha = brute_force_alpha(&g, ALPHA_LIMIT).map(|a| a.0).unwrap_or(0);
    let solved = solve_mmis(&g, &SolverConfig::quiet())
        .map(|r| g.is_mis(&r.claimed_mmis) && r.size() == alpha && alpha == 4)
        .unwrap_or(false);
    out.push(check("graph maximum independent set", solved.to_string(), "true"));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_golden_check_passes() {
        for c in run_golden() {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
    }
}
