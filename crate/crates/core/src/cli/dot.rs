use std::fmt::Write;

use crate::amalgam::AmalgamSpace;
use crate::topology::specialization;

fn quote(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// DOT source for the Hasse diagram of the specialization order. Each
/// cover `x < y` becomes an edge `y -> x`, pointing at the specialization;
/// each pair of indistinguishable points becomes one two-headed edge.
/// Nodes are labelled `base point | member=factor point, ...`.
pub fn hasse_dot(a: &AmalgamSpace) -> String {
    let space = a.space();
    let (covers, equivalent) = specialization(space).hasse_edges();
    let mut dot = String::from("digraph amalgam {\n  rankdir=BT;\n");
    for x in space.points() {
        writeln!(dot, "  n{x} [label=\"{}\"];", quote(&space.label(x))).unwrap();
    }
    for (x, y) in covers {
        writeln!(dot, "  n{y} -> n{x};").unwrap();
    }
    for (x, y) in equivalent {
        writeln!(dot, "  n{x} -> n{y} [dir=both];").unwrap();
    }
    dot.push_str("}\n");
    dot
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::amalgam::{build_amalgam, FactorAssignment, SubbaseSel};
    use crate::constructions::{discrete, pseudo_cone};
    use crate::pointset::PointSet;

    fn edges(dot: &str) -> Vec<&str> {
        dot.lines().filter(|l| l.contains("->")).collect()
    }

    #[test]
    fn cone_edges_point_at_apex() {
        let a = pseudo_cone(&discrete(2)).unwrap();
        let dot = hasse_dot(&a);
        let apex = a.fiber_range(0).start;
        let e = edges(&dot);
        assert_eq!(e.len(), 2);
        assert!(e.iter().all(|l| l.trim_end().ends_with(&format!("-> n{apex};"))));
    }

    #[test]
    fn discrete_has_no_edges() {
        let sel = SubbaseSel::new(discrete(1), vec![PointSet::full(1)]).unwrap();
        let a = build_amalgam(&sel, &FactorAssignment::uniform(&discrete(3), 1).unwrap()).unwrap();
        assert!(edges(&hasse_dot(&a)).is_empty());
        assert_eq!(hasse_dot(&a).matches("[label=").count(), 3);
    }
}
