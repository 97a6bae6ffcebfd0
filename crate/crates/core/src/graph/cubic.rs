use std::collections::VecDeque;

use super::graph::Graph;

/// The two colour classes of a bipartite graph, `U` containing vertex 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartition {
    pub u: Vec<usize>,
    pub w: Vec<usize>,
}

/// Checks that `g` is cubic and bipartite with balanced sides and
/// `|E| = 3|U|`. On failure the reason names the first violated property.
pub fn validate_cubic_bipartite(g: &Graph) -> Result<Bipartition, String> {
    if g.is_empty() {
        return Err("empty graph".into());
    }
    if let Some(v) = (0..g.len()).find(|&v| g.degree(v) != 3) {
        return Err(format!(
            "not cubic: vertex {:?} has degree {}",
            g.label(v),
            g.degree(v)
        ));
    }
    let mut color = vec![u8::MAX; g.len()];
    for start in 0..g.len() {
        if color[start] != u8::MAX {
            continue;
        }
        color[start] = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v) {
                if color[w] == u8::MAX {
                    color[w] = 1 - color[v];
                    queue.push_back(w);
                } else if color[w] == color[v] {
                    return Err(format!(
                        "not bipartite: odd cycle through {:?}-{:?}",
                        g.label(v),
                        g.label(w)
                    ));
                }
            }
        }
    }
    let (u, w): (Vec<usize>, Vec<usize>) = (0..g.len()).partition(|&v| color[v] == 0);
    if u.len() != w.len() {
        return Err(format!("unbalanced bipartition {} vs {}", u.len(), w.len()));
    }
    if g.edges().len() != 3 * u.len() {
        return Err(format!("|E| = {} but 3n = {}", g.edges().len(), 3 * u.len()));
    }
    Ok(Bipartition { u, w })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::test_graphs::{k4, q3};

    #[test]
    fn cube_is_cubic_bipartite() {
        let b = validate_cubic_bipartite(&q3()).unwrap();
        assert_eq!((b.u.len(), b.w.len()), (4, 4));
        assert_eq!(q3().edges().len(), 12);
    }

    #[test]
    fn failures_name_the_reason() {
        let c4 = Graph::with_size(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(validate_cubic_bipartite(&c4).unwrap_err().starts_with("not cubic"));
        assert!(validate_cubic_bipartite(&k4()).unwrap_err().starts_with("not bipartite"));
    }
}
