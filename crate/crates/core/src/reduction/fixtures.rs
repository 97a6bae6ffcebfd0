//! Source graphs with hand-made orthogonal drawings, shipped as data files.

use super::source::OrthoDrawing;
use crate::graph::Graph;
use crate::io::{parse_drawing, parse_graph};

pub const Q3_GRAPH: &str = include_str!("../../fixtures/q3.graph.json");
pub const Q3_DRAWING: &str = include_str!("../../fixtures/q3.drawing.json");
pub const PRISM6_GRAPH: &str = include_str!("../../fixtures/prism6.graph.json");
pub const PRISM6_DRAWING: &str = include_str!("../../fixtures/prism6.drawing.json");

/// The 3-cube drawn as two nested squares joined by spokes, at unit
/// parallel separation.
pub fn q3_fixture() -> (Graph, OrthoDrawing) {
    (
        parse_graph(Q3_GRAPH).expect("fixture graph"),
        parse_drawing(Q3_DRAWING).expect("fixture drawing"),
    )
}

/// The hexagonal prism `C6 × K2`, drawn as two rows joined by spokes.
pub fn prism6_fixture() -> (Graph, OrthoDrawing) {
    (
        parse_graph(PRISM6_GRAPH).expect("fixture graph"),
        parse_drawing(PRISM6_DRAWING).expect("fixture drawing"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::test_graphs::prism;
    use crate::reduction::source::validate_source;

    #[test]
    fn fixtures_validate() {
        for (g, d) in [q3_fixture(), prism6_fixture()] {
            let r = validate_source(&g, &d);
            assert!(r.ok, "{:?}", r.reasons);
        }
        assert_eq!(prism6_fixture().0, prism(6));
    }
}
