//! Small graphs shared across unit tests.

use crate::graph::Graph;

/// Path a-b-c.
pub fn p3() -> Graph {
    Graph::parse("vertices a b c\nedges a-b b-c").unwrap()
}

/// Path a-b-c-d.
pub fn p4() -> Graph {
    Graph::parse("vertices a b c d\nedges a-b b-c c-d").unwrap()
}

/// Path v-a-x-b-z (used by the relation checks).
pub fn p5() -> Graph {
    Graph::parse("vertices y a x b z\nedges y-a a-x x-b b-z").unwrap()
}

/// Three isolated vertices.
pub fn d3() -> Graph {
    Graph::parse("vertices x y z\nedges").unwrap()
}

/// Two isolated vertices.
pub fn d2() -> Graph {
    Graph::parse("vertices x y\nedges").unwrap()
}

/// Triangle.
pub fn k3() -> Graph {
    Graph::parse("vertices u v w\nedges u-v u-w v-w").unwrap()
}

/// Single edge.
pub fn k2() -> Graph {
    Graph::parse("vertices u v\nedges u-v").unwrap()
}

/// Star with center c and leaves x, y, z.
pub fn star() -> Graph {
    Graph::parse("vertices c x y z\nedges c-x c-y c-z").unwrap()
}

/// All-abelian graph with a special SIL (x1,y|z) whose menu hits case 1:
/// X = {x1,x2} is an abelian class of size 2 and st(z) separates X from Y.
pub fn case1_graph() -> Graph {
    Graph::parse("vertices x1 x2 y z p q\nedges x1-x2 p-x1 p-x2 p-y p-z q-y").unwrap()
}

/// All-abelian graph with a special SIL (x,y|z), y <= x, and st(z) not
/// separating x from y: largeness case 2, HNN side.
pub fn hnn_graph() -> Graph {
    Graph::parse("vertices x y z p q w\nedges p-x p-y p-z q-x w-x w-y").unwrap()
}

/// All-abelian graph with a special SIL (x,y|z), x and y incomparable, and
/// st(z) not separating x from y: largeness case 2, amalgam side.
pub fn amalgam_graph() -> Graph {
    Graph::parse("vertices x y z p q w1 w2\nedges p-x p-y p-z q-x w1-x w2-y w1-w2").unwrap()
}
