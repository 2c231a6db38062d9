use super::{
    greedy_maximal_independent, is_dominating, is_independent, undominated, AdjGraph, Breach, ClassPartition, DomError,
    DominationResult, Method,
};
use crate::coloring::{require_proper, Coloring};
use crate::plane_graph::PlaneGraph;
use crate::vertex_set::VertexSet;

/// Independent dominating set from a proper coloring.
///
/// When exactly three classes are nonempty and every vertex lies in a
/// triangle, each nonempty class already dominates and the smallest one is
/// returned. Otherwise, for each class `i`, `U_i = V \ N[C_i]` and `S_i` is
/// the greedy maximal independent set of `G[U_i]`; the smallest `C_i ∪ S_i`
/// wins, ties going to the lowest class.
///
/// For a 4-coloring with no empty class on a near triangulation, the sets
/// `U_i` must also satisfy `N[U_i] ∩ U_j = ∅` for `i != j` and the union of
/// the `S_i` must be independent; violations are reported as breaches.
pub fn class_combinator(g: &PlaneGraph, c: &Coloring) -> Result<DominationResult, DomError> {
    require_proper(g, c)?;
    let classes = c.classes();
    let sizes = c.class_sizes();
    let nonempty: Vec<usize> = (0..c.k()).filter(|&i| sizes[i] > 0).collect();

    if nonempty.len() == 3 && c.k() > 3 && g.every_vertex_in_triangle() {
        let i = *nonempty.iter().min_by_key(|&&i| (sizes[i], i)).expect("three classes");
        let result = DominationResult {
            witness_class: Some(i),
            per_class: sizes,
            ..DominationResult::plain(classes[i].clone(), Method::Combinator)
        };
        return confirm(g, c, result);
    }

    let undominated: Vec<VertexSet> = (0..c.k()).map(|i| undominated(g, c, i)).collect();
    let selected: Vec<VertexSet> =
        undominated.iter().map(|u| greedy_maximal_independent(&AdjGraph::induced(g, u), None)).collect();
    let candidates: Vec<VertexSet> = classes.iter().zip(&selected).map(|(ci, si)| ci.union(si)).collect();
    let partition = ClassPartition { undominated, selected };

    if c.k() == 4 && nonempty.len() == 4 && g.classify().is_near_triangulation() {
        check_separation(g, c, &partition)?;
    }

    let per_class: Vec<usize> = candidates.iter().map(VertexSet::len).collect();
    let i = (0..c.k()).min_by_key(|&i| (per_class[i], i)).expect("k >= 1");
    let result = DominationResult {
        witness_class: Some(i),
        per_class,
        partition: Some(partition),
        ..DominationResult::plain(candidates[i].clone(), Method::Combinator)
    };
    confirm(g, c, result)
}

/// Ordered pairs `(i, j)`, `i != j`, with `N[U_i] ∩ U_j` nonempty.
pub fn separation_violations(g: &PlaneGraph, p: &ClassPartition) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for (i, ui) in p.undominated.iter().enumerate() {
        let closed = g.closed_neighborhood(ui).expect("U_i holds vertices of g");
        for (j, uj) in p.undominated.iter().enumerate() {
            if i != j && !closed.is_disjoint(uj) {
                pairs.push((i, j));
            }
        }
    }
    pairs
}

fn check_separation(g: &PlaneGraph, c: &Coloring, p: &ClassPartition) -> Result<(), DomError> {
    if let Some(&(i, j)) = separation_violations(g, p).first() {
        return Err(Breach::new(format!("N[U_{i}] meets U_{j}"), g, Some(c))
            .with_set(&format!("U_{i}"), &p.undominated[i])
            .with_set(&format!("U_{j}"), &p.undominated[j])
            .into_error());
    }
    let joint = p.joint();
    if !is_independent(g, &joint) {
        return Err(Breach::new("union of the S_i is not independent", g, Some(c)).with_set("S", &joint).into_error());
    }
    Ok(())
}

fn confirm(g: &PlaneGraph, c: &Coloring, result: DominationResult) -> Result<DominationResult, DomError> {
    if !is_dominating(g, &result.set) || !is_independent(g, &result.set) {
        return Err(Breach::new("combinator output is not an independent dominating set", g, Some(c))
            .with_set("result", &result.set)
            .into_error());
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{four_coloring, rec_eulerian_six_coloring};
    use crate::generators::{diamond_chain, k4, recursive_eulerian, triangle};

    #[test]
    fn k4_rainbow_gives_a_singleton() {
        let c = Coloring::new(4, vec![0, 1, 2, 3]).unwrap();
        let r = class_combinator(&k4(), &c).unwrap();
        assert_eq!(r.size, 1);
        assert_eq!(r.per_class, vec![1; 4]);
        assert!(r.partition.unwrap().undominated.iter().all(VertexSet::is_empty));
    }

    #[test]
    fn triangle_uses_empty_class_shortcut() {
        let g = triangle();
        let r = class_combinator(&g, &four_coloring(&g).unwrap()).unwrap();
        assert_eq!(r.size, 1);
        assert!(r.partition.is_none());
    }

    #[test]
    fn diamond_chain_two() {
        let g = diamond_chain(2).unwrap();
        let r = class_combinator(&g, &four_coloring(&g).unwrap()).unwrap();
        assert!(r.size <= 3 * 14 / 8 && r.size >= 4, "size {}", r.size);
    }

    #[test]
    fn eulerian_six_coloring_bound() {
        for seed in 0..5 {
            let (g, trace) = recursive_eulerian(5, seed).unwrap();
            let c = rec_eulerian_six_coloring(&g, &trace).unwrap();
            let r = class_combinator(&g, &c).unwrap();
            let v4 = g.degrees().iter().filter(|&&d| d == 4).count();
            assert!(6 * r.size <= g.vertex_count() + v4);
        }
    }

    #[test]
    fn improper_coloring_is_rejected() {
        let c = Coloring::new(4, vec![0, 0, 1, 2]).unwrap();
        assert!(matches!(class_combinator(&k4(), &c), Err(DomError::Coloring(_))));
    }
}
