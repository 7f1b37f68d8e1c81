//! The Deligne groupoid of a simplicial arrangement, presented by its
//! oriented chamber graph and the relation pairs at codimension-two walls:
//! positive minimal paths, relation extraction by localization, checking of
//! arrow-valued representations, and vertex-group presentations.

use crate::arrangement::{codim2_walls, signs_string, Arrangement, Codim2Wall, Sign};
use crate::linalg::{self, Mat};
use crate::tracking::ChamberAtlas;
use crate::Error;
use num::Zero;
use serde::Serialize;
use std::collections::{HashMap, VecDeque};

/// A directed wall crossing between adjacent chambers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub src: usize,
    pub dst: usize,
    /// Local wall index (1-based) crossed at the source chamber.
    pub wall: usize,
    /// Global hyperplane whose sign flips.
    pub hyperplane: usize,
}

/// The oriented graph on chambers: one arrow per ordered pair of adjacent
/// chambers, in atlas edge order (arrows come in opposite-direction pairs).
#[derive(Debug, Clone)]
pub struct X1Graph {
    pub chamber_count: usize,
    pub arrows: Vec<Arrow>,
    /// Chamber sign vectors, indexed like the atlas.
    pub signs: Vec<Vec<Sign>>,
    by_endpoints: HashMap<(usize, usize), usize>,
}

impl X1Graph {
    pub fn from_atlas(atlas: &ChamberAtlas) -> Self {
        let arrows: Vec<Arrow> = atlas
            .edges
            .iter()
            .map(|e| Arrow {
                src: e.from,
                dst: e.to,
                wall: e.wall,
                hyperplane: e.hyperplane,
            })
            .collect();
        let by_endpoints = arrows
            .iter()
            .enumerate()
            .map(|(i, a)| ((a.src, a.dst), i))
            .collect();
        X1Graph {
            chamber_count: atlas.chambers.len(),
            arrows,
            signs: atlas.chambers.iter().map(|c| c.signs.clone()).collect(),
            by_endpoints,
        }
    }

    pub fn arrow_between(&self, src: usize, dst: usize) -> Option<usize> {
        self.by_endpoints.get(&(src, dst)).copied()
    }

    /// The arrow in the opposite direction.
    pub fn reverse_of(&self, arrow: usize) -> usize {
        let a = &self.arrows[arrow];
        self.by_endpoints[&(a.dst, a.src)]
    }

    pub fn arrows_from(&self, src: usize) -> impl Iterator<Item = (usize, &Arrow)> {
        self.arrows
            .iter()
            .enumerate()
            .filter(move |(_, a)| a.src == src)
    }
}

/// Builds the oriented chamber graph of an arrangement.
pub fn build_x1(arr: &Arrangement) -> Result<X1Graph, Error> {
    Ok(X1Graph::from_atlas(&crate::tracking::explore(arr)?))
}

/// A positive path: composable forward arrows, recorded by arrow index.
pub type PositivePath = Vec<usize>;

fn separating(signs_a: &[Sign], signs_b: &[Sign]) -> Vec<usize> {
    signs_a
        .iter()
        .zip(signs_b)
        .enumerate()
        .filter(|(_, (x, y))| x != y)
        .map(|(i, _)| i)
        .collect()
}

/// All positive paths from `c1` to `c2` of length equal to the number of
/// separating hyperplanes, crossing each of them exactly once.
pub fn minimal_positive_paths(x1: &X1Graph, c1: usize, c2: usize) -> Vec<PositivePath> {
    let target = &x1.signs[c2];
    let mut paths = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    fn dfs(
        x1: &X1Graph,
        at: usize,
        target: &[Sign],
        stack: &mut Vec<usize>,
        paths: &mut Vec<PositivePath>,
    ) {
        let remaining = separating(&x1.signs[at], target);
        if remaining.is_empty() {
            paths.push(stack.clone());
            return;
        }
        for (ai, a) in x1.arrows_from(at) {
            if remaining.contains(&a.hyperplane) {
                stack.push(ai);
                dfs(x1, a.dst, target, stack, paths);
                stack.pop();
            }
        }
    }
    dfs(x1, c1, target, &mut stack, &mut paths);
    paths
}

/// Two positive minimal galleries with equal endpoints, arising from a
/// codimension-two wall.
#[derive(Debug, Clone)]
pub struct RelationPair {
    /// Index into the wall list this relation localizes at.
    pub wall: usize,
    pub left: PositivePath,
    pub right: PositivePath,
}

impl RelationPair {
    pub fn length(&self) -> usize {
        self.left.len()
    }
}

/// Extracts, for every codimension-two wall `w` and every chamber whose
/// closure meets `w` in full wall dimension, the pair of alternating
/// positive galleries of length `m(w)` around `w`.
///
/// Only the hyperplanes containing `w` participate: near a generic point of
/// the wall the arrangement looks like a rank-2 fan with `2 m(w)` sectors,
/// and the two galleries are its two arcs.
pub fn codim2_relations(
    arr: &Arrangement,
    x1: &X1Graph,
    walls: &[Codim2Wall],
) -> Result<Vec<RelationPair>, Error> {
    let n = arr.dim();
    let mut relations = Vec::new();
    for (wi, wall) in walls.iter().enumerate() {
        let m = wall.multiplicity();
        let member_rows: Vec<Vec<i64>> = wall
            .members
            .iter()
            .map(|&k| arr.hyperplanes()[k].coeffs().to_vec())
            .collect();
        let basis = linalg::nullspace(&member_rows, n);
        debug_assert_eq!(basis.len(), n - 2);
        // Chambers touching the wall: the strict non-member constraints must
        // be satisfiable on the wall stratum.
        let mut touching: Vec<usize> = Vec::new();
        for (ci, signs) in x1.signs.iter().enumerate() {
            let rows: Vec<Vec<i64>> = (0..arr.len())
                .filter(|k| !wall.members.contains(k))
                .map(|k| {
                    let mut row = arr.hyperplanes()[k].coeffs().to_vec();
                    if signs[k] == Sign::Minus {
                        for x in &mut row {
                            *x = -*x;
                        }
                    }
                    (0..basis.len())
                        .map(|c| row.iter().zip(&basis[c]).map(|(&a, &b)| a * b).sum())
                        .collect()
                })
                .collect();
            if linalg::strict_feasible(basis.len(), &rows).is_some() {
                touching.push(ci);
            }
        }
        // Group by the non-member sign pattern (one group per side of the wall).
        let mut groups: HashMap<Vec<Sign>, Vec<usize>> = HashMap::new();
        for &ci in &touching {
            let key: Vec<Sign> = (0..arr.len())
                .filter(|k| !wall.members.contains(k))
                .map(|k| x1.signs[ci][k])
                .collect();
            groups.entry(key).or_default().push(ci);
        }
        let mut group_list: Vec<Vec<usize>> = groups.into_values().collect();
        group_list.sort();
        for group in group_list {
            if group.len() != 2 * m {
                return Err(Error::Groupoid(format!(
                    "wall {wi}: localized fan has {} chambers, expected {}",
                    group.len(),
                    2 * m
                )));
            }
            let in_group = |c: usize| group.contains(&c);
            // Walk the 2m-cycle in both directions from each start chamber.
            for &start in &group {
                let mut nbrs: Vec<usize> = x1
                    .arrows_from(start)
                    .filter(|(_, a)| in_group(a.dst) && wall.members.contains(&a.hyperplane))
                    .map(|(_, a)| a.dst)
                    .collect();
                nbrs.sort_unstable();
                if nbrs.len() != 2 {
                    return Err(Error::Groupoid(format!(
                        "wall {wi}: chamber {start} has {} wall neighbours",
                        nbrs.len()
                    )));
                }
                let walk = |mut prev: usize, mut at: usize| -> Result<PositivePath, Error> {
                    let mut path =
                        vec![x1.arrow_between(prev, at).expect("adjacent chambers")];
                    for _ in 1..m {
                        let next = x1
                            .arrows_from(at)
                            .filter(|(_, a)| {
                                in_group(a.dst)
                                    && a.dst != prev
                                    && wall.members.contains(&a.hyperplane)
                            })
                            .map(|(_, a)| a.dst)
                            .min()
                            .ok_or_else(|| {
                                Error::Groupoid(format!("wall {wi}: broken gallery cycle"))
                            })?;
                        path.push(x1.arrow_between(at, next).expect("adjacent chambers"));
                        prev = at;
                        at = next;
                    }
                    Ok(path)
                };
                let left = walk(start, nbrs[0])?;
                let right = walk(start, nbrs[1])?;
                let end_of = |p: &PositivePath| x1.arrows[*p.last().unwrap()].dst;
                if end_of(&left) != end_of(&right) {
                    return Err(Error::Groupoid(format!(
                        "wall {wi}: galleries from {start} end at different chambers"
                    )));
                }
                relations.push(RelationPair {
                    wall: wi,
                    left,
                    right,
                });
            }
        }
    }
    Ok(relations)
}

/// Convenience: walls plus relations for an arrangement.
pub fn relations_for(arr: &Arrangement, x1: &X1Graph) -> Result<(Vec<Codim2Wall>, Vec<RelationPair>), Error> {
    let walls = codim2_walls(arr);
    let relations = codim2_relations(arr, x1, &walls)?;
    Ok((walls, relations))
}

/// The wall-crossing matrices of the atlas as an arrow assignment, in arrow
/// order. Each value is an integer involution acting on the base frame.
pub fn tracking_assignment(atlas: &ChamberAtlas) -> Vec<Mat> {
    atlas.edges.iter().map(|e| e.step.clone()).collect()
}

fn compose_path(assign: &[Mat], path: &PositivePath, n: usize) -> Mat {
    let mut acc = Mat::identity(n);
    for &a in path {
        acc = assign[a].mul(&acc);
    }
    acc
}

/// Checks that an arrow-indexed assignment of invertible matrices satisfies
/// every relation pair. Errors on a non-invertible value.
pub fn check_representation(
    x1: &X1Graph,
    relations: &[RelationPair],
    assign: &[Mat],
) -> Result<bool, Error> {
    if assign.len() != x1.arrows.len() {
        return Err(Error::Groupoid(format!(
            "assignment has {} values for {} arrows",
            assign.len(),
            x1.arrows.len()
        )));
    }
    for (i, m) in assign.iter().enumerate() {
        if m.det().is_zero() {
            return Err(Error::Groupoid(format!("arrow {i} maps to a singular matrix")));
        }
    }
    let n = assign.first().map(|m| m.n()).unwrap_or(0);
    Ok(relations.iter().all(|r| {
        compose_path(assign, &r.left, n) == compose_path(assign, &r.right, n)
    }))
}

/// A finite presentation of the vertex group at a base chamber.
#[derive(Debug, Clone)]
pub struct Presentation {
    /// Arrow indices serving as generators (everything off the spanning tree).
    pub generators: Vec<usize>,
    /// Relators as (generator position, exponent) sequences.
    pub relators: Vec<Vec<(usize, i8)>>,
    /// Rank of the abelianized group.
    pub abelianization_rank: usize,
}

/// Presentation of the vertex group: arrows outside a breadth-first spanning
/// tree generate, tree arrows are trivialized, and every relation pair
/// contributes the relator `left * right^{-1}`.
pub fn vertex_group_presentation(
    x1: &X1Graph,
    relations: &[RelationPair],
    base: usize,
) -> Presentation {
    // BFS spanning tree: one discovery arrow per chamber (except the base).
    let mut tree_arrows: Vec<bool> = vec![false; x1.arrows.len()];
    let mut visited = vec![false; x1.chamber_count];
    visited[base] = true;
    let mut queue = VecDeque::from([base]);
    while let Some(u) = queue.pop_front() {
        for (ai, a) in x1.arrows_from(u) {
            if !visited[a.dst] {
                visited[a.dst] = true;
                tree_arrows[ai] = true;
                queue.push_back(a.dst);
            }
        }
    }
    let generators: Vec<usize> = (0..x1.arrows.len())
        .filter(|&i| !tree_arrows[i])
        .collect();
    let gen_pos: HashMap<usize, usize> = generators
        .iter()
        .enumerate()
        .map(|(pos, &ai)| (ai, pos))
        .collect();
    let mut relators = Vec::new();
    for r in relations {
        let mut word: Vec<(usize, i8)> = Vec::new();
        for &a in &r.left {
            if let Some(&g) = gen_pos.get(&a) {
                word.push((g, 1));
            }
        }
        for &a in r.right.iter().rev() {
            if let Some(&g) = gen_pos.get(&a) {
                word.push((g, -1));
            }
        }
        relators.push(word);
    }
    // Abelianization rank: generators minus the rank of the exponent matrix.
    let rows: Vec<Vec<i64>> = relators
        .iter()
        .map(|w| {
            let mut row = vec![0i64; generators.len()];
            for &(g, e) in w {
                row[g] += e as i64;
            }
            row
        })
        .collect();
    let rel_rank = if rows.is_empty() { 0 } else { linalg::rank(&rows) };
    Presentation {
        abelianization_rank: generators.len() - rel_rank,
        generators,
        relators,
    }
}

/// DOT rendering of the oriented chamber graph; vertices are labelled by
/// crossing word and sign string, arrows by the local wall crossed.
pub fn to_dot(atlas: &ChamberAtlas, x1: &X1Graph) -> String {
    let mut out = String::from("digraph x1 {\n");
    for (i, c) in atlas.chambers.iter().enumerate() {
        let word = c
            .word
            .iter()
            .map(|w| w.to_string())
            .collect::<Vec<_>>()
            .join(",");
        out.push_str(&format!(
            "  c{i} [label=\"[{word}] {}\"];\n",
            signs_string(&c.signs)
        ));
    }
    for a in &x1.arrows {
        out.push_str(&format!(
            "  c{} -> c{} [label=\"{}\"];\n",
            a.src, a.dst, a.wall
        ));
    }
    out.push_str("}\n");
    out
}

/// Wire form of a relation pair: arrow index sequences.
#[derive(Serialize)]
pub struct RelationDoc {
    pub wall: usize,
    pub members: Vec<usize>,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

pub fn relation_docs(walls: &[Codim2Wall], relations: &[RelationPair]) -> Vec<RelationDoc> {
    relations
        .iter()
        .map(|r| RelationDoc {
            wall: r.wall,
            members: walls[r.wall].members.clone(),
            left: r.left.clone(),
            right: r.right.clone(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{build_arrangement, chambers};
    use crate::contraction::parse_spec;
    use crate::tracking::explore;

    fn setup(doc: &str) -> (Arrangement, ChamberAtlas, X1Graph) {
        let arr = build_arrangement(&parse_spec(doc).unwrap());
        let atlas = explore(&arr).unwrap();
        let x1 = X1Graph::from_atlas(&atlas);
        (arr, atlas, x1)
    }

    fn rank2(d: usize) -> Arrangement {
        let mut covs: Vec<Vec<i64>> = vec![vec![1, 0], vec![0, 1]];
        for k in 1..d - 1 {
            covs.push(vec![1, k as i64]);
        }
        Arrangement::new(2, covs).unwrap()
    }

    const CROSS2: &str = r#"{"points":[{"type":"A1","white":[0]},{"type":"A1","white":[0]}]}"#;
    const A2: &str = r#"{"points":[{"type":"A2","white":[0,1]}]}"#;
    const E6_PAIR: &str = r#"{"points":[{"type":"E6","white":[0,2]}]}"#;
    const D4_TRIPLE: &str = r#"{"points":[{"type":"D4","white":[0,2,3]}]}"#;

    #[test]
    fn x1_counts() {
        let (_, _, x1) = setup(CROSS2);
        assert_eq!(x1.chamber_count, 4);
        assert_eq!(x1.arrows.len(), 8);

        for d in 2..=5 {
            let x1 = build_x1(&rank2(d)).unwrap();
            assert_eq!(x1.chamber_count, 2 * d);
            assert_eq!(x1.arrows.len(), 4 * d);
        }

        let (arr, atlas, x1) = setup(D4_TRIPLE);
        assert_eq!(x1.chamber_count, 32);
        let undirected = crate::arrangement::adjacency(&chambers(&arr).unwrap());
        assert_eq!(x1.arrows.len(), 2 * undirected.len());
        // Arrows pair up with their reverses.
        for i in 0..x1.arrows.len() {
            let r = x1.reverse_of(i);
            assert_eq!(x1.arrows[r].src, x1.arrows[i].dst);
            assert_eq!(x1.reverse_of(r), i);
        }
        let _ = atlas;
    }

    #[test]
    fn minimal_paths() {
        let (_, _, x1) = setup(E6_PAIR);
        // Adjacent chambers: exactly one path of length 1.
        let a0 = &x1.arrows[0];
        let paths = minimal_positive_paths(&x1, a0.src, a0.dst);
        assert_eq!(paths.len(), 1);
        assert_eq!(paths[0].len(), 1);
        // Same chamber: one empty path.
        assert_eq!(minimal_positive_paths(&x1, 0, 0), vec![Vec::<usize>::new()]);
        // C+ to the antipode: exactly the two arcs, each of length d.
        let antipode = x1
            .signs
            .iter()
            .position(|s| s.iter().all(|&x| x == Sign::Minus))
            .unwrap();
        let paths = minimal_positive_paths(&x1, 0, antipode);
        assert_eq!(paths.len(), 2);
        assert!(paths.iter().all(|p| p.len() == 5));
    }

    #[test]
    fn minimal_path_length_equals_separation() {
        let (_, _, x1) = setup(E6_PAIR);
        // Graph distance by BFS equals the sign-vector Hamming distance.
        for c1 in 0..x1.chamber_count {
            let mut dist = vec![usize::MAX; x1.chamber_count];
            dist[c1] = 0;
            let mut q = VecDeque::from([c1]);
            while let Some(u) = q.pop_front() {
                for (_, a) in x1.arrows_from(u) {
                    if dist[a.dst] == usize::MAX {
                        dist[a.dst] = dist[u] + 1;
                        q.push_back(a.dst);
                    }
                }
            }
            for c2 in 0..x1.chamber_count {
                let sep = separating(&x1.signs[c1], &x1.signs[c2]).len();
                assert_eq!(dist[c2], sep);
                let paths = minimal_positive_paths(&x1, c1, c2);
                assert!(!paths.is_empty());
                assert!(paths.iter().all(|p| p.len() == sep));
            }
        }
    }

    #[test]
    fn relation_counts() {
        // Rank-2 with d lines: exactly 2d relation pairs, all of length d.
        for d in 2..=5 {
            let arr = rank2(d);
            let x1 = build_x1(&arr).unwrap();
            let (_, rels) = relations_for(&arr, &x1).unwrap();
            assert_eq!(rels.len(), 2 * d);
            assert!(rels.iter().all(|r| r.length() == d));
        }
        // Coordinate cross in R^3: all relations are commuting squares.
        let spec = parse_spec(
            r#"{"points":[{"type":"A1","white":[0]},{"type":"A1","white":[0]},{"type":"A1","white":[0]}]}"#,
        )
        .unwrap();
        let arr = build_arrangement(&spec);
        let x1 = build_x1(&arr).unwrap();
        let (_, rels) = relations_for(&arr, &x1).unwrap();
        assert_eq!(rels.len(), 24);
        assert!(rels.iter().all(|r| r.length() == 2));
        // D4 three-curve: the multiplicity-3 walls give hexagon relations of
        // length 3, the multiplicity-2 walls give squares.
        let (arr, _, x1) = setup(D4_TRIPLE);
        let (walls, rels) = relations_for(&arr, &x1).unwrap();
        for r in &rels {
            assert_eq!(r.length(), walls[r.wall].multiplicity());
        }
        assert!(rels.iter().any(|r| r.length() == 3));
        assert!(rels.iter().any(|r| r.length() == 2));
    }

    #[test]
    fn relation_pairs_share_endpoints_and_length() {
        let (arr, _, x1) = setup(D4_TRIPLE);
        let (walls, rels) = relations_for(&arr, &x1).unwrap();
        for r in &rels {
            assert_eq!(r.left.len(), r.right.len());
            assert_eq!(r.length(), walls[r.wall].multiplicity());
            assert_eq!(x1.arrows[r.left[0]].src, x1.arrows[r.right[0]].src);
            assert_eq!(
                x1.arrows[*r.left.last().unwrap()].dst,
                x1.arrows[*r.right.last().unwrap()].dst
            );
        }
    }

    #[test]
    fn representation_checks() {
        for doc in [CROSS2, A2, E6_PAIR, D4_TRIPLE] {
            let (arr, atlas, x1) = setup(doc);
            let (_, rels) = relations_for(&arr, &x1).unwrap();
            let assign = tracking_assignment(&atlas);
            assert!(check_representation(&x1, &rels, &assign).unwrap(), "{doc}");
            // All-identity assignment is trivially a representation.
            let ids = vec![Mat::identity(arr.dim()); x1.arrows.len()];
            assert!(check_representation(&x1, &rels, &ids).unwrap());
        }
        // A deliberately scrambled arrow breaks a relation.
        let (arr, atlas, x1) = setup(A2);
        let (_, rels) = relations_for(&arr, &x1).unwrap();
        let mut assign = tracking_assignment(&atlas);
        assign[0] = Mat::from_rows(vec![vec![1, 1], vec![0, 1]]);
        assert!(!check_representation(&x1, &rels, &assign).unwrap());
        // Singular values are rejected.
        assign[0] = Mat::from_rows(vec![vec![0, 0], vec![0, 0]]);
        assert!(check_representation(&x1, &rels, &assign).is_err());
        let _ = arr;
    }

    #[test]
    fn presentation_ranks() {
        // Abelianization rank equals the number of hyperplanes.
        let cases: Vec<(Arrangement, usize)> = vec![
            (rank2(2), 2),
            (rank2(3), 3),
            (
                build_arrangement(&parse_spec(E6_PAIR).unwrap()),
                5,
            ),
        ];
        for (arr, expected) in cases {
            let x1 = build_x1(&arr).unwrap();
            let (_, rels) = relations_for(&arr, &x1).unwrap();
            let p = vertex_group_presentation(&x1, &rels, 0);
            assert_eq!(p.abelianization_rank, expected);
            assert_eq!(p.generators.len(), x1.arrows.len() - (x1.chamber_count - 1));
        }
    }

    #[test]
    fn dot_export_is_deterministic() {
        let (_, atlas, x1) = setup(A2);
        let a = to_dot(&atlas, &x1);
        let b = to_dot(&atlas, &x1);
        assert_eq!(a, b);
        assert!(a.starts_with("digraph x1 {"));
        assert!(a.contains("c0 [label=\"[] ++"));
    }
}
