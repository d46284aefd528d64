//! The homology representation of the outer automorphisms of a free product
//! of three free abelian groups, computed two independent ways: the closed
//! form matrices, and a from-first-principles chain-complex oracle on the
//! double cover of the wedge of tori.

use std::sync::Arc;

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::autos::{make_generator, GeneratorKind};
use crate::error::{RaagError, Result};
use crate::graph::{Graph, VertexSet};

use super::matrix::IntMatrix;

type Q = Ratio<i64>;

/// Size cap for the oracle's chain complex.
pub const DEFAULT_ORACLE_LIMIT: usize = 5;

/// The three partial-conjugation families on Z^a * Z^b * Z^c. Indices are
/// 1-based into the class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum HomologyGenerator {
    /// Conjugate the X class by y_j.
    ConjugateXByY { j: usize },
    /// Conjugate the Y class by z_k.
    ConjugateYByZ { k: usize },
    /// Conjugate the Z class by x_i.
    ConjugateZByX { i: usize },
}

/// Class sizes plus a generator to represent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HomologyRepInput {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub generator: HomologyGenerator,
}

impl HomologyRepInput {
    fn check_sizes(&self) -> Result<()> {
        if self.a == 0 || self.b == 0 || self.c == 0 {
            return Err(RaagError::Other("class sizes must be positive".into()));
        }
        let ok = match self.generator {
            HomologyGenerator::ConjugateXByY { j } => 1 <= j && j <= self.b,
            HomologyGenerator::ConjugateYByZ { k } => 1 <= k && k <= self.c,
            HomologyGenerator::ConjugateZByX { i } => 1 <= i && i <= self.a,
        };
        if ok {
            Ok(())
        } else {
            Err(RaagError::Other("generator index out of range".into()))
        }
    }
}

/// Dimensions reported by the oracle as it builds the quotient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleDims {
    /// dim of the (-1)-eigenspace of 1-chains: a + b + c.
    pub chain_dim: usize,
    /// dim of the cycle subspace: a + b + c - 1.
    pub kernel_dim: usize,
    /// dim of the 2-boundary image: a + b + c - 3.
    pub boundary_dim: usize,
    /// dim of the quotient: always 2.
    pub quotient_dim: usize,
}

/// The closed-form matrices in the basis (ê1, ê2), independent of class
/// sizes and of the index within the class.
pub fn homology_matrix_closed_form(inp: &HomologyRepInput) -> Result<IntMatrix> {
    inp.check_sizes()?;
    let rows: [[i64; 2]; 2] = match inp.generator {
        HomologyGenerator::ConjugateXByY { .. } => [[-1, 0], [2, 1]],
        HomologyGenerator::ConjugateYByZ { .. } => [[1, 0], [0, -1]],
        HomologyGenerator::ConjugateZByX { .. } => [[-1, -2], [0, 1]],
    };
    IntMatrix::from_rows(&[&rows[0], &rows[1]])
}

/// The free product Z^a * Z^b * Z^c as the graph of three disjoint cliques,
/// with vertices x1..xa, y1..yb, z1..zc.
pub fn free_product_graph(a: usize, b: usize, c: usize) -> Graph {
    let mut names = Vec::new();
    for i in 1..=a {
        names.push(format!("x{i}"));
    }
    for j in 1..=b {
        names.push(format!("y{j}"));
    }
    for k in 1..=c {
        names.push(format!("z{k}"));
    }
    let mut edges = Vec::new();
    let clique = |edges: &mut Vec<(String, String)>, lo: usize, hi: usize, names: &[String]| {
        for i in lo..hi {
            for j in i + 1..hi {
                edges.push((names[i].clone(), names[j].clone()));
            }
        }
    };
    clique(&mut edges, 0, a, &names);
    clique(&mut edges, a, a + b, &names);
    clique(&mut edges, a + b, a + b + c, &names);
    Graph::new(&names, &edges).expect("clique union is simplicial")
}

fn generator_on_free_product(
    g: &Arc<Graph>,
    inp: &HomologyRepInput,
) -> Result<crate::autos::Automorphism> {
    let (a, b, _c) = (inp.a, inp.b, inp.c);
    let range_set = |lo: usize, hi: usize| {
        VertexSet::from_iter((lo..hi).map(|i| crate::graph::VertexId(i as u32)))
    };
    let (multiplier, support) = match inp.generator {
        HomologyGenerator::ConjugateXByY { j } => {
            (crate::graph::VertexId((a + j - 1) as u32), range_set(0, a))
        }
        HomologyGenerator::ConjugateYByZ { k } => (
            crate::graph::VertexId((a + b + k - 1) as u32),
            range_set(a, a + b),
        ),
        HomologyGenerator::ConjugateZByX { i } => (
            crate::graph::VertexId((i - 1) as u32),
            range_set(a + b, a + b + inp.c),
        ),
    };
    make_generator(
        g,
        &GeneratorKind::PartialConjugation {
            multiplier,
            support,
        },
    )
}

fn rank(mut rows: Vec<Vec<Q>>) -> usize {
    let mut r = 0;
    let cols = rows.first().map(|x| x.len()).unwrap_or(0);
    for c in 0..cols {
        let pivot = (r..rows.len()).find(|&i| !rows[i][c].is_zero());
        let Some(p) = pivot else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c];
                for j in 0..cols {
                    let sub = factor * rows[r][j];
                    rows[i][j] -= sub;
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// Solve `cols * coeffs = target` where the columns are linearly
/// independent; returns the unique coefficient vector, or None if the target
/// is outside the span.
fn solve(cols: &[Vec<Q>], target: &[Q]) -> Option<Vec<Q>> {
    let n = target.len();
    let m = cols.len();
    let mut aug: Vec<Vec<Q>> = (0..n)
        .map(|i| {
            let mut row: Vec<Q> = cols.iter().map(|c| c[i]).collect();
            row.push(target[i]);
            row
        })
        .collect();
    let mut pivot_row_of_col = vec![usize::MAX; m];
    let mut r = 0;
    for c in 0..m {
        let pivot = (r..n).find(|&i| !aug[i][c].is_zero())?;
        aug.swap(r, pivot);
        let inv = aug[r][c].recip();
        for x in aug[r].iter_mut() {
            *x *= inv;
        }
        for i in 0..n {
            if i != r && !aug[i][c].is_zero() {
                let factor = aug[i][c];
                for j in 0..=m {
                    let sub = factor * aug[r][j];
                    aug[i][j] -= sub;
                }
            }
        }
        pivot_row_of_col[c] = r;
        r += 1;
    }
    // consistency: rows past the pivots must have zero target entries
    for row in aug.iter().skip(r) {
        if !row[m].is_zero() {
            return None;
        }
    }
    Some((0..m).map(|c| aug[pivot_row_of_col[c]][m]).collect())
}

/// Compute the generator's matrix on the 2-dimensional quotient from first
/// principles: lift the image words through the double cover, restrict to
/// the (-1)-eigenspace of chains, and express the action on the quotient of
/// cycles by torus boundaries in the basis (ê1, ê2).
pub fn homology_matrix_oracle(inp: &HomologyRepInput) -> Result<(IntMatrix, OracleDims)> {
    homology_matrix_oracle_with_limit(inp, DEFAULT_ORACLE_LIMIT)
}

pub fn homology_matrix_oracle_with_limit(
    inp: &HomologyRepInput,
    limit: usize,
) -> Result<(IntMatrix, OracleDims)> {
    inp.check_sizes()?;
    let (a, b, c) = (inp.a, inp.b, inp.c);
    if a > limit || b > limit || c > limit {
        return Err(RaagError::LimitExceeded(format!(
            "oracle class sizes capped at {limit}"
        )));
    }
    let n = a + b + c;
    let graph = Arc::new(free_product_graph(a, b, c));
    let f = generator_on_free_product(&graph, inp)?;

    // image of the basis chain (1-g)e_u under the lifted map, in
    // f_w = (1-g)e_w coordinates
    let lift = |u: usize| -> Vec<Q> {
        let mut even = vec![Q::zero(); n]; // coefficients on e_w
        let mut odd = vec![Q::zero(); n]; // coefficients on g e_w
        let mut parity = 0usize;
        for l in f.image_of(crate::graph::VertexId(u as u32)).letters() {
            let w = l.vertex.idx();
            if !l.inverse {
                if parity == 0 {
                    even[w] += Q::one();
                } else {
                    odd[w] += Q::one();
                }
                parity ^= 1;
            } else {
                parity ^= 1;
                if parity == 0 {
                    even[w] -= Q::one();
                } else {
                    odd[w] -= Q::one();
                }
            }
        }
        debug_assert_eq!(parity, 1, "image words must map to the nontrivial coset");
        (0..n).map(|w| even[w] - odd[w]).collect()
    };
    let images: Vec<Vec<Q>> = (0..n).map(lift).collect();

    // boundaries of the 2-cells: f_u - f_v for u, v in one class
    let mut boundary_basis: Vec<Vec<Q>> = Vec::new();
    let mut push_class = |lo: usize, hi: usize| {
        for i in lo + 1..hi {
            let mut v = vec![Q::zero(); n];
            v[i] = Q::one();
            v[lo] = -Q::one();
            boundary_basis.push(v);
        }
    };
    push_class(0, a);
    push_class(a, a + b);
    push_class(a + b, n);

    let boundary_dim = rank(boundary_basis.clone());
    let kernel_dim = n - 1;
    let dims = OracleDims {
        chain_dim: n,
        kernel_dim,
        boundary_dim,
        quotient_dim: kernel_dim - boundary_dim,
    };
    if dims.boundary_dim != n - 3 || dims.quotient_dim != 2 {
        return Err(RaagError::Other(format!(
            "chain complex dimensions are off: {dims:?}"
        )));
    }

    // ê1 = f_x1 - f_z1, ê2 = f_y1 - f_z1
    let unit = |i: usize, j: usize| {
        let mut v = vec![Q::zero(); n];
        v[i] = Q::one();
        v[j] = -Q::one();
        v
    };
    let e1 = unit(0, a + b);
    let e2 = unit(a, a + b);

    let mut span = vec![e1.clone(), e2.clone()];
    span.extend(boundary_basis.iter().cloned());
    if rank(span.clone()) != kernel_dim {
        return Err(RaagError::Other(
            "ê1, ê2 do not complete the boundary space to the cycles".into(),
        ));
    }

    let apply = |v: &[Q]| -> Vec<Q> {
        let mut out = vec![Q::zero(); n];
        for (u, coeff) in v.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            for w in 0..n {
                let add = *coeff * images[u][w];
                out[w] += add;
            }
        }
        out
    };

    let cols: Vec<Vec<Q>> = std::iter::once(e1.clone())
        .chain(std::iter::once(e2.clone()))
        .chain(boundary_basis.iter().cloned())
        .collect();
    let mut entries = [[0i64; 2]; 2];
    for (col, basis_vec) in [e1, e2].iter().enumerate() {
        let image = apply(basis_vec);
        // cycles map to cycles: coordinates sum to zero
        let total: Q = image.iter().copied().sum();
        if !total.is_zero() {
            return Err(RaagError::Other("image of a cycle is not a cycle".into()));
        }
        let coeffs = solve(&cols, &image)
            .ok_or_else(|| RaagError::Other("cycle image escapes the cycle space".into()))?;
        for row in 0..2 {
            let q = coeffs[row];
            if !q.is_integer() {
                return Err(RaagError::Other(
                    "non-integral entry; the lattice was not preserved".into(),
                ));
            }
            entries[row][col] = *q.numer() / *q.denom();
        }
    }
    Ok((
        IntMatrix::from_rows(&[&entries[0], &entries[1]])?,
        dims,
    ))
}

/// Canonical representative of the projective class: flip the sign so the
/// first nonzero entry in row-major order is positive.
pub fn projective_normalize(m: &IntMatrix) -> IntMatrix {
    let n = m.dim();
    for i in 0..n {
        for j in 0..n {
            let x = m.get(i, j);
            if x != 0 {
                return if x < 0 { m.neg() } else { m.clone() };
            }
        }
    }
    m.clone()
}

/// Result of the rank-2 freeness check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FreeCertificate {
    /// Projectively an elementary pair [[1,0],[s,1]], [[1,t],[0,1]] with
    /// |s|, |t| >= 2; free by the ping-pong argument.
    SanovPair,
    /// No nontrivial reduced word up to the bound is projectively trivial.
    /// Weaker than a freeness proof; reported as such.
    NoRelationUpTo { bound: usize },
    /// A projective relation was found; the pair is certainly not free of
    /// rank 2 with these generators.
    RelationFound { word: String },
}

impl FreeCertificate {
    pub fn certifies_free(&self) -> bool {
        matches!(self, FreeCertificate::SanovPair)
    }

    pub fn passes(&self) -> bool {
        !matches!(self, FreeCertificate::RelationFound { .. })
    }
}

fn is_lower_elementary(m: &IntMatrix) -> bool {
    m.get(0, 0) == 1 && m.get(1, 1) == 1 && m.get(0, 1) == 0 && m.get(1, 0).abs() >= 2
}

fn is_upper_elementary(m: &IntMatrix) -> bool {
    m.get(0, 0) == 1 && m.get(1, 1) == 1 && m.get(1, 0) == 0 && m.get(0, 1).abs() >= 2
}

fn inverse2(m: &IntMatrix) -> Result<IntMatrix> {
    let det = m.det()?;
    if det != 1 && det != -1 {
        return Err(RaagError::NotUnimodular);
    }
    let (a, b, c, d) = (m.get(0, 0), m.get(0, 1), m.get(1, 0), m.get(1, 1));
    let adj = IntMatrix::from_rows(&[&[d, -b], &[-c, a]])?;
    Ok(if det == 1 { adj } else { adj.neg() })
}

fn plus_minus_identity(m: &IntMatrix) -> bool {
    m.is_identity() || m.neg().is_identity()
}

/// Certify that two 2x2 integer matrices generate a rank-2 free group in the
/// projective group, or find a short relation. The strong certificate is the
/// elementary (ping-pong) form; otherwise all nontrivial reduced words up to
/// `word_bound` are tested against ±identity.
pub fn ping_pong_free_check(
    m1: &IntMatrix,
    m2: &IntMatrix,
    word_bound: usize,
) -> Result<FreeCertificate> {
    if m1.dim() != 2 || m2.dim() != 2 {
        return Err(RaagError::DimensionMismatch);
    }
    if m1.det()?.abs() != 1 || m2.det()?.abs() != 1 {
        return Err(RaagError::NotUnimodular);
    }
    let a = projective_normalize(m1);
    let b = projective_normalize(m2);
    if (is_lower_elementary(&a) && is_upper_elementary(&b))
        || (is_upper_elementary(&a) && is_lower_elementary(&b))
    {
        return Ok(FreeCertificate::SanovPair);
    }

    // letters: m1, m1^-1, m2, m2^-1
    let letters = [m1.clone(), inverse2(m1)?, m2.clone(), inverse2(m2)?];
    let names = ["A", "A^-1", "B", "B^-1"];
    let cancels = |x: usize, y: usize| (x ^ 1) == y;
    let mut frontier: Vec<(IntMatrix, Vec<usize>)> = vec![(IntMatrix::identity(2), Vec::new())];
    for _ in 1..=word_bound {
        let mut next = Vec::new();
        for (m, word) in &frontier {
            for (li, l) in letters.iter().enumerate() {
                if let Some(&last) = word.last() {
                    if cancels(last, li) {
                        continue;
                    }
                }
                let prod = m.mul(l)?;
                let mut w = word.clone();
                w.push(li);
                if plus_minus_identity(&prod) {
                    let text = w.iter().map(|&i| names[i]).collect::<Vec<_>>().join(" ");
                    return Ok(FreeCertificate::RelationFound { word: text });
                }
                next.push((prod, w));
            }
        }
        frontier = next;
    }
    Ok(FreeCertificate::NoRelationUpTo { bound: word_bound })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: [[i64; 2]; 2]) -> IntMatrix {
        IntMatrix::from_rows(&[&rows[0], &rows[1]]).unwrap()
    }

    #[test]
    fn closed_form_paper_matrices() {
        let base = |gen| HomologyRepInput {
            a: 1,
            b: 1,
            c: 1,
            generator: gen,
        };
        assert_eq!(
            homology_matrix_closed_form(&base(HomologyGenerator::ConjugateXByY { j: 1 })).unwrap(),
            m([[-1, 0], [2, 1]])
        );
        assert_eq!(
            homology_matrix_closed_form(&base(HomologyGenerator::ConjugateYByZ { k: 1 })).unwrap(),
            m([[1, 0], [0, -1]])
        );
        assert_eq!(
            homology_matrix_closed_form(&base(HomologyGenerator::ConjugateZByX { i: 1 })).unwrap(),
            m([[-1, -2], [0, 1]])
        );
    }

    #[test]
    fn closed_form_products_match_paper() {
        let cxy = m([[-1, 0], [2, 1]]);
        let cyz = m([[1, 0], [0, -1]]);
        let czx = m([[-1, -2], [0, 1]]);
        assert_eq!(cxy.mul(&cyz).unwrap(), m([[-1, 0], [2, -1]]));
        assert_eq!(cyz.mul(&czx).unwrap(), m([[-1, -2], [0, -1]]));
    }

    #[test]
    fn oracle_matches_closed_form_on_unit_sizes() {
        for gen in [
            HomologyGenerator::ConjugateXByY { j: 1 },
            HomologyGenerator::ConjugateYByZ { k: 1 },
            HomologyGenerator::ConjugateZByX { i: 1 },
        ] {
            let inp = HomologyRepInput {
                a: 1,
                b: 1,
                c: 1,
                generator: gen,
            };
            let (oracle, dims) = homology_matrix_oracle(&inp).unwrap();
            assert_eq!(dims.quotient_dim, 2);
            assert_eq!(oracle, homology_matrix_closed_form(&inp).unwrap());
        }
    }

    #[test]
    fn oracle_dims_and_agreement_on_mixed_sizes() {
        let inp = HomologyRepInput {
            a: 2,
            b: 3,
            c: 1,
            generator: HomologyGenerator::ConjugateXByY { j: 2 },
        };
        let (oracle, dims) = homology_matrix_oracle(&inp).unwrap();
        assert_eq!(dims.chain_dim, 6);
        assert_eq!(dims.kernel_dim, 5);
        assert_eq!(dims.boundary_dim, 3);
        assert_eq!(dims.quotient_dim, 2);
        assert_eq!(
            projective_normalize(&oracle),
            projective_normalize(&homology_matrix_closed_form(&inp).unwrap())
        );
    }

    #[test]
    fn oracle_respects_limit() {
        let inp = HomologyRepInput {
            a: 6,
            b: 1,
            c: 1,
            generator: HomologyGenerator::ConjugateXByY { j: 1 },
        };
        assert!(matches!(
            homology_matrix_oracle(&inp),
            Err(RaagError::LimitExceeded(_))
        ));
    }

    #[test]
    fn normalization_flips_sign() {
        assert_eq!(
            projective_normalize(&m([[-1, 0], [2, 1]])),
            m([[1, 0], [-2, -1]])
        );
        assert_eq!(projective_normalize(&m([[1, 0], [0, 1]])), m([[1, 0], [0, 1]]));
    }

    #[test]
    fn ping_pong_on_paper_pair() {
        let p1 = m([[-1, 0], [2, -1]]);
        let p2 = m([[-1, -2], [0, -1]]);
        assert_eq!(
            ping_pong_free_check(&p1, &p2, 4).unwrap(),
            FreeCertificate::SanovPair
        );
    }

    #[test]
    fn ping_pong_rejects_equal_and_commuting_pairs() {
        let a = m([[-1, 0], [2, -1]]);
        match ping_pong_free_check(&a, &a, 4).unwrap() {
            FreeCertificate::RelationFound { .. } => {}
            other => panic!("expected a relation, got {other:?}"),
        }
        let u1 = m([[1, 1], [0, 1]]);
        let u2 = m([[1, 2], [0, 1]]);
        match ping_pong_free_check(&u1, &u2, 4).unwrap() {
            FreeCertificate::RelationFound { .. } => {}
            other => panic!("expected a relation, got {other:?}"),
        }
    }

    #[test]
    fn ping_pong_rejects_singular_input() {
        let s = m([[2, 0], [0, 1]]);
        assert!(matches!(
            ping_pong_free_check(&s, &s, 3),
            Err(RaagError::NotUnimodular)
        ));
    }
}
