//! Wall-crossing tracking: the integer involutions describing how stability
//! parameters transform when a wall is crossed, exchange data derived
//! geometrically from the local chamber structure, and the breadth-first
//! atlas of all chambers reachable from the positive chamber.
//!
//! Conventions. Curves (and hence coordinate walls) are numbered 1..n in
//! crossing words and exchange data. Each chamber carries the composite map
//! `M` from its local frame back to the base frame: the chamber body is
//! `M(C+)` for `C+` the open positive orthant. Crossing local wall `j` from a
//! chamber with composite `M` multiplies on the right by the tracking
//! involution derived in that chamber's local arrangement, reproducing the
//! knitted two-curve example maps `(-t1, t1+t2)` and `(t1+2t2, -t2)` exactly.

use crate::arrangement::{
    self, chamber_facets, pullback, Arrangement, Chamber, Functional, Sign,
};
use crate::contraction::{ContractionPoint, ContractionSpec};
use crate::linalg::Mat;
use crate::rootsys::{DynkinDiagram, Family};
use crate::Error;
use num::rational::BigRational;
use num::One;
use serde::Serialize;
use std::collections::{BTreeMap, HashMap, VecDeque};

/// Exchange data for crossing the walls in `j_set` (1-based curve indices):
/// nonnegative multiplicities `b[(j, i)]` for `j` in the set and `i` outside.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExchangeData {
    pub j_set: Vec<usize>,
    pub b: BTreeMap<(usize, usize), i64>,
}

impl ExchangeData {
    pub fn single(j: usize, b_values: impl IntoIterator<Item = (usize, i64)>) -> Self {
        ExchangeData {
            j_set: vec![j],
            b: b_values.into_iter().map(|(i, b)| ((j, i), b)).collect(),
        }
    }
}

/// The linear involution of the tracking formula: coordinates in `J` are
/// negated, coordinate `i` outside `J` gains `sum_j b[(j,i)] * t_j`.
pub fn tracking_map(data: &ExchangeData, n: usize) -> Mat {
    let mut rows = Vec::with_capacity(n);
    for i in 1..=n {
        let mut row = vec![0i64; n];
        if data.j_set.contains(&i) {
            row[i - 1] = -1;
        } else {
            row[i - 1] = 1;
            for &j in &data.j_set {
                if let Some(&b) = data.b.get(&(j, i)) {
                    debug_assert!(b >= 0);
                    row[j - 1] += b;
                }
            }
        }
        rows.push(row);
    }
    Mat::from_rows(rows)
}

fn coordinate_functional(n: usize, j: usize) -> Functional {
    let mut e = vec![0i64; n];
    e[j - 1] = 1;
    Functional::new(&e).unwrap()
}

/// Derives the unique nonnegative integer exchange data whose tracking map
/// carries the local positive orthant onto the chamber across `t_j = 0`.
///
/// The adjacent chamber's facets must consist of `t_j` together with one
/// functional `t_i + b*t_j` per coordinate `i != j`; those `b` are the data.
/// Anything else is a hard error: the local chamber structure is not of
/// tracking shape.
pub fn derive_exchange_data(local: &Arrangement, j: usize) -> Result<ExchangeData, Error> {
    let n = local.dim();
    if j == 0 || j > n {
        return Err(Error::Tracking(format!(
            "wall index {j} out of range 1..={n}"
        )));
    }
    let ej = coordinate_functional(n, j);
    let ej_idx = local
        .index_of(&ej)
        .ok_or_else(|| Error::Tracking(format!("local arrangement misses coordinate wall t{j}")))?;
    // Adjacent chamber across t_j = 0: all signs positive except t_j.
    let signs: Vec<Sign> = (0..local.len())
        .map(|k| if k == ej_idx { Sign::Minus } else { Sign::Plus })
        .collect();
    let facets = chamber_facets(local, &signs);
    if facets.len() != n {
        return Err(Error::Tracking(format!(
            "chamber across t{j} has {} facets, expected {n}",
            facets.len()
        )));
    }
    let mut b_by_i: BTreeMap<usize, i64> = BTreeMap::new();
    let mut saw_ej = false;
    for &fi in &facets {
        let coeffs = local.hyperplanes()[fi].coeffs();
        if fi == ej_idx {
            saw_ej = true;
            continue;
        }
        // Must be t_i + b t_j with b >= 0.
        let mut i_coord = None;
        let mut b = 0i64;
        let mut ok = true;
        for (k, &c) in coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if k == j - 1 {
                b = c;
            } else if c == 1 && i_coord.is_none() {
                i_coord = Some(k + 1);
            } else {
                ok = false;
            }
        }
        match (ok && b >= 0, i_coord) {
            (true, Some(i)) => {
                if b_by_i.insert(i, b).is_some() {
                    return Err(Error::Tracking(format!(
                        "two facets in direction t{i} across wall t{j}"
                    )));
                }
            }
            _ => {
                return Err(Error::Tracking(format!(
                    "facet {} across wall t{j} admits no nonnegative integral exchange data",
                    local.hyperplanes()[fi]
                )));
            }
        }
    }
    if !saw_ej || b_by_i.len() != n - 1 {
        return Err(Error::Tracking(format!(
            "facets across wall t{j} do not cover all coordinate directions"
        )));
    }
    Ok(ExchangeData::single(j, b_by_i))
}

/// One chamber of the atlas.
#[derive(Debug, Clone)]
pub struct AtlasChamber {
    /// Crossing word from the positive chamber (1-based wall indices).
    pub word: Vec<usize>,
    /// Composite tracking map, local frame -> base frame.
    pub matrix: Mat,
    /// Signs per arrangement hyperplane.
    pub signs: Vec<Sign>,
    /// Rational interior point (image of the all-ones vector).
    pub witness: Vec<BigRational>,
}

/// One directed wall crossing.
#[derive(Debug, Clone)]
pub struct AtlasEdge {
    pub from: usize,
    pub to: usize,
    /// Local wall crossed, 1-based.
    pub wall: usize,
    /// Index of the global hyperplane whose sign flips.
    pub hyperplane: usize,
    pub exchange: ExchangeData,
    /// Crossing map conjugated into the base frame; an integer involution.
    pub step: Mat,
}

/// The chamber graph explored from `C+`, with composite maps and per-edge
/// exchange data. Chambers are in breadth-first discovery order (walls
/// ascending), chamber 0 being `C+` itself.
#[derive(Debug, Clone)]
pub struct ChamberAtlas {
    pub arrangement: Arrangement,
    pub chambers: Vec<AtlasChamber>,
    pub edges: Vec<AtlasEdge>,
    sign_index: HashMap<Vec<Sign>, usize>,
}

impl ChamberAtlas {
    pub fn chamber_by_signs(&self, signs: &[Sign]) -> Option<usize> {
        self.sign_index.get(signs).copied()
    }

    /// Edges leaving `chamber`, one per wall, walls ascending.
    pub fn edges_from(&self, chamber: usize) -> Vec<&AtlasEdge> {
        self.edges.iter().filter(|e| e.from == chamber).collect()
    }
}

fn ones(n: usize) -> Vec<BigRational> {
    vec![BigRational::one(); n]
}

/// Sign pattern of the chamber `M(C+)`: the pullback of each functional is
/// sign-definite on the positive orthant, and its sign is the chamber's sign
/// on that functional. Errors if some pullback is not sign-definite, which
/// would mean `M(C+)` is not a chamber of the arrangement.
fn chamber_signs(arr: &Arrangement, m: &Mat) -> Result<Vec<Sign>, Error> {
    arr.hyperplanes()
        .iter()
        .map(|f| {
            let v = m.pullback(f.coeffs());
            let pos = v.iter().any(|&c| c > 0);
            let neg = v.iter().any(|&c| c < 0);
            match (pos, neg) {
                (true, false) => Ok(Sign::Plus),
                (false, true) => Ok(Sign::Minus),
                _ => Err(Error::Tracking(format!(
                    "pullback of {f} is not sign-definite on the positive orthant"
                ))),
            }
        })
        .collect()
}

/// Consistency checks on a local (pulled-back) arrangement: same hyperplane
/// count as the base arrangement, every coordinate functional present, all
/// functionals nonnegative (so the positive orthant is again a chamber whose
/// walls are the coordinate hyperplanes).
fn check_local(base: &Arrangement, local: &Arrangement) -> Result<(), Error> {
    if local.len() != base.len() {
        return Err(Error::Tracking(format!(
            "local arrangement has {} hyperplanes, base has {}",
            local.len(),
            base.len()
        )));
    }
    if !local.has_positive_chamber() {
        return Err(Error::Tracking(
            "local arrangement lost the positive chamber structure".into(),
        ));
    }
    Ok(())
}

/// Breadth-first exploration of the chamber structure from `C+`, crossing
/// coordinate walls in each local frame. Verifies that composites are
/// path-independent, that every local frame keeps the positive-chamber
/// structure, that every step is an involution, and that the reached chamber
/// set agrees with direct enumeration.
pub fn explore(arr: &Arrangement) -> Result<ChamberAtlas, Error> {
    let n = arr.dim();
    if !arr.has_positive_chamber() {
        return Err(Error::Tracking(
            "arrangement has no positive chamber; not contraction-shaped".into(),
        ));
    }
    let enumerated = arrangement::chambers(arr)?;
    let expected: HashMap<Vec<Sign>, usize> = enumerated
        .iter()
        .enumerate()
        .map(|(i, c)| (c.signs.clone(), i))
        .collect();

    let mut chambers: Vec<AtlasChamber> = Vec::new();
    let mut edges: Vec<AtlasEdge> = Vec::new();
    let mut sign_index: HashMap<Vec<Sign>, usize> = HashMap::new();

    let start_signs = vec![Sign::Plus; arr.len()];
    if !expected.contains_key(&start_signs) {
        return Err(Error::Tracking("positive orthant is not a chamber".into()));
    }
    let id = Mat::identity(n);
    chambers.push(AtlasChamber {
        word: Vec::new(),
        matrix: id.clone(),
        signs: start_signs.clone(),
        witness: ones(n),
    });
    sign_index.insert(start_signs, 0);

    let mut queue: VecDeque<usize> = VecDeque::from([0]);
    while let Some(ci) = queue.pop_front() {
        let m = chambers[ci].matrix.clone();
        let word = chambers[ci].word.clone();
        let local = pullback(arr, &m);
        check_local(arr, &local)?;
        let m_inv = m
            .inverse_unimodular()
            .ok_or_else(|| Error::Tracking("composite map is not unimodular".into()))?;
        for j in 1..=n {
            let exchange = derive_exchange_data(&local, j)?;
            let t = tracking_map(&exchange, n);
            if !t.mul(&t).is_identity() {
                return Err(Error::Tracking(format!(
                    "tracking map for wall t{j} is not an involution"
                )));
            }
            let next_m = m.mul(&t);
            let next_signs = chamber_signs(arr, &next_m)?;
            // Exactly one global hyperplane flips.
            let flips: Vec<usize> = next_signs
                .iter()
                .zip(&chambers[ci].signs)
                .enumerate()
                .filter(|(_, (a, b))| a != b)
                .map(|(k, _)| k)
                .collect();
            if flips.len() != 1 {
                return Err(Error::Tracking(format!(
                    "crossing wall t{j} flipped {} hyperplanes",
                    flips.len()
                )));
            }
            if !expected.contains_key(&next_signs) {
                return Err(Error::Tracking(
                    "tracking reached a sign vector that is not a chamber".into(),
                ));
            }
            let to = match sign_index.get(&next_signs) {
                Some(&existing) => {
                    // Path independence: the composite is a function of the
                    // chamber alone.
                    if chambers[existing].matrix != next_m {
                        return Err(Error::Tracking(format!(
                            "path-dependent composite at chamber {existing}"
                        )));
                    }
                    existing
                }
                None => {
                    let mut w = word.clone();
                    w.push(j);
                    let witness = next_m.apply(&ones(n));
                    let idx = chambers.len();
                    chambers.push(AtlasChamber {
                        word: w,
                        matrix: next_m.clone(),
                        signs: next_signs.clone(),
                        witness,
                    });
                    sign_index.insert(next_signs.clone(), idx);
                    queue.push_back(idx);
                    idx
                }
            };
            edges.push(AtlasEdge {
                from: ci,
                to,
                wall: j,
                hyperplane: flips[0],
                exchange,
                step: next_m.mul(&m_inv),
            });
        }
    }

    if chambers.len() != enumerated.len() {
        return Err(Error::Tracking(format!(
            "exploration found {} chambers, enumeration found {}",
            chambers.len(),
            enumerated.len()
        )));
    }
    Ok(ChamberAtlas {
        arrangement: arr.clone(),
        chambers,
        edges,
        sign_index,
    })
}

/// Walks a crossing word from `C+`, re-deriving exchange data in every local
/// frame, and returns the composite map. Rejects out-of-range wall letters.
pub fn compose_and_check(atlas: &ChamberAtlas, word: &[usize]) -> Result<Mat, Error> {
    let arr = &atlas.arrangement;
    let n = arr.dim();
    let mut m = Mat::identity(n);
    for &j in word {
        if j == 0 || j > n {
            return Err(Error::Tracking(format!(
                "invalid crossing word: wall {j} is not a coordinate wall of the local frame"
            )));
        }
        let local = pullback(arr, &m);
        check_local(arr, &local)?;
        let exchange = derive_exchange_data(&local, j)?;
        m = m.mul(&tracking_map(&exchange, n));
    }
    Ok(m)
}

/// Braid length carried by a codimension-two wall: the number of hyperplanes
/// containing it.
pub fn braid_length(wall: &arrangement::Codim2Wall) -> usize {
    wall.multiplicity()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TwoCurveKind {
    /// Coordinate cross, d = 2: the curves do not interact.
    Product,
    /// d >= 3.
    Intersecting,
}

/// Summary of the two-curve braiding data.
#[derive(Debug, Clone, Serialize)]
pub struct TwoCurveReport {
    pub d: usize,
    /// Alternating word starting with wall 1, length d.
    pub word_a: Vec<usize>,
    /// Alternating word starting with wall 2, length d.
    pub word_b: Vec<usize>,
    pub kind: TwoCurveKind,
    /// Both alternating words land in the same chamber with equal composites.
    pub relation_holds: bool,
}

fn alternating(first: usize, second: usize, len: usize) -> Vec<usize> {
    (0..len)
        .map(|k| if k % 2 == 0 { first } else { second })
        .collect()
}

/// Braid data for a contraction with exactly two curves in total (one
/// two-curve point, or two single-curve points).
pub fn two_curve_report(spec: &ContractionSpec) -> Result<TwoCurveReport, Error> {
    if spec.curve_count() != 2 {
        return Err(Error::Tracking(format!(
            "two-curve report needs exactly 2 curves, spec has {}",
            spec.curve_count()
        )));
    }
    let arr = arrangement::build_arrangement(spec);
    let atlas = explore(&arr)?;
    let d = arr.len();
    let word_a = alternating(1, 2, d);
    let word_b = alternating(2, 1, d);
    let ma = compose_and_check(&atlas, &word_a)?;
    let mb = compose_and_check(&atlas, &word_b)?;
    let relation_holds = ma == mb;
    Ok(TwoCurveReport {
        d,
        word_a,
        word_b,
        kind: if d == 2 {
            TwoCurveKind::Product
        } else {
            TwoCurveKind::Intersecting
        },
        relation_holds,
    })
}

/// One entry of the two-curve scan.
#[derive(Debug, Clone, Serialize)]
pub struct DBoundEntry {
    pub diagram: String,
    pub white: Vec<usize>,
    pub d: usize,
}

/// Result of scanning every 2-element white subset of every ADE diagram up
/// to a rank bound.
#[derive(Debug, Clone, Serialize)]
pub struct DBoundReport {
    pub entries: Vec<DBoundEntry>,
    pub max_d: usize,
    pub max_cases: Vec<DBoundEntry>,
    /// Entries with d > 8, counterexamples to the expected bound.
    pub violations: Vec<DBoundEntry>,
}

/// Computes the braid length d for every ADE diagram of rank <= `max_rank`
/// and every 2-element white subset, and reports the maximum and any entry
/// exceeding 8.
pub fn d_bound_scan(max_rank: usize) -> Result<DBoundReport, Error> {
    if max_rank > 8 {
        return Err(Error::Tracking("scan rank bound is 8".into()));
    }
    let mut diagrams = Vec::new();
    for r in 1..=max_rank {
        diagrams.push(DynkinDiagram::new(Family::A, r).unwrap());
    }
    for r in 4..=max_rank.min(8) {
        if r >= 4 {
            diagrams.push(DynkinDiagram::new(Family::D, r).unwrap());
        }
    }
    for r in 6..=max_rank.min(8) {
        diagrams.push(DynkinDiagram::new(Family::E, r).unwrap());
    }
    let mut entries = Vec::new();
    for diagram in &diagrams {
        let rank = diagram.rank();
        for v in 0..rank {
            for w in v + 1..rank {
                let point = ContractionPoint {
                    diagram: diagram.clone(),
                    white: vec![v, w],
                    black: (0..rank).filter(|&x| x != v && x != w).collect(),
                    label: None,
                    multiplicities: None,
                };
                let d = arrangement::restrict_roots(&point).len();
                entries.push(DBoundEntry {
                    diagram: diagram.name(),
                    white: vec![v, w],
                    d,
                });
            }
        }
    }
    let max_d = entries.iter().map(|e| e.d).max().unwrap_or(0);
    let max_cases = entries.iter().filter(|e| e.d == max_d).cloned().collect();
    let violations = entries.iter().filter(|e| e.d > 8).cloned().collect();
    Ok(DBoundReport {
        entries,
        max_d,
        max_cases,
        violations,
    })
}

/// The witness-bearing chamber list seen by the atlas, in enumeration order.
pub fn enumerated_chambers(atlas: &ChamberAtlas) -> Result<Vec<Chamber>, Error> {
    arrangement::chambers(&atlas.arrangement)
}

// --- serialization ---

#[derive(Serialize)]
pub struct ExchangeDoc {
    pub j: Vec<usize>,
    /// Triples (j, i, b).
    pub b: Vec<(usize, usize, i64)>,
}

impl From<&ExchangeData> for ExchangeDoc {
    fn from(e: &ExchangeData) -> Self {
        ExchangeDoc {
            j: e.j_set.clone(),
            b: e.b.iter().map(|(&(j, i), &b)| (j, i, b)).collect(),
        }
    }
}

#[derive(Serialize)]
pub struct AtlasChamberDoc {
    pub id: usize,
    pub word: Vec<usize>,
    pub signs: String,
    pub witness: Vec<String>,
    /// Row-major composite matrix.
    pub matrix: Vec<i64>,
}

#[derive(Serialize)]
pub struct AtlasEdgeDoc {
    pub from: usize,
    pub to: usize,
    pub wall: usize,
    pub hyperplane: usize,
    pub exchange: ExchangeDoc,
    pub step: Vec<i64>,
}

#[derive(Serialize)]
pub struct AtlasDoc {
    pub dim: usize,
    pub hyperplanes: Vec<Vec<i64>>,
    pub chambers: Vec<AtlasChamberDoc>,
    pub edges: Vec<AtlasEdgeDoc>,
}

impl From<&ChamberAtlas> for AtlasDoc {
    fn from(atlas: &ChamberAtlas) -> Self {
        AtlasDoc {
            dim: atlas.arrangement.dim(),
            hyperplanes: atlas
                .arrangement
                .hyperplanes()
                .iter()
                .map(|f| f.coeffs().to_vec())
                .collect(),
            chambers: atlas
                .chambers
                .iter()
                .enumerate()
                .map(|(id, c)| AtlasChamberDoc {
                    id,
                    word: c.word.clone(),
                    signs: arrangement::signs_string(&c.signs),
                    witness: c.witness.iter().map(|w| w.to_string()).collect(),
                    matrix: c.matrix.entries().to_vec(),
                })
                .collect(),
            edges: atlas
                .edges
                .iter()
                .map(|e| AtlasEdgeDoc {
                    from: e.from,
                    to: e.to,
                    wall: e.wall,
                    hyperplane: e.hyperplane,
                    exchange: ExchangeDoc::from(&e.exchange),
                    step: e.step.entries().to_vec(),
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::build_arrangement;
    use crate::contraction::parse_spec;
    use proptest::prelude::*;

    fn spec_atlas(doc: &str) -> ChamberAtlas {
        explore(&build_arrangement(&parse_spec(doc).unwrap())).unwrap()
    }

    const KATZ: &str = r#"{"points":[{"type":"D4","white":[0,1]}]}"#;
    const E6_PAIR: &str = r#"{"points":[{"type":"E6","white":[0,2]}]}"#;
    const D4_TRIPLE: &str = r#"{"points":[{"type":"D4","white":[0,2,3]}]}"#;

    #[test]
    fn tracking_map_formula() {
        let t = tracking_map(&ExchangeData::single(1, [(2, 1)]), 2);
        assert_eq!(t.rows(), vec![vec![-1, 0], vec![1, 1]]);
        let t = tracking_map(&ExchangeData::single(2, [(1, 2)]), 2);
        assert_eq!(t.rows(), vec![vec![1, 2], vec![0, -1]]);
        let t = tracking_map(
            &ExchangeData {
                j_set: vec![1, 2],
                b: BTreeMap::new(),
            },
            2,
        );
        assert_eq!(t.rows(), vec![vec![-1, 0], vec![0, -1]]);
    }

    #[test]
    fn knitted_exchange_data() {
        // Two-curve cD4: crossing wall 1 has b_{1,2} = 1, wall 2 has b_{2,1} = 2.
        let arr = build_arrangement(&parse_spec(KATZ).unwrap());
        let b1 = derive_exchange_data(&arr, 1).unwrap();
        assert_eq!(b1, ExchangeData::single(1, [(2, 1)]));
        let b2 = derive_exchange_data(&arr, 2).unwrap();
        assert_eq!(b2, ExchangeData::single(2, [(1, 2)]));
    }

    #[test]
    fn three_curve_exchange_data() {
        let arr = build_arrangement(&parse_spec(D4_TRIPLE).unwrap());
        let b1 = derive_exchange_data(&arr, 1).unwrap();
        assert_eq!(b1, ExchangeData::single(1, [(2, 1), (3, 1)]));
    }

    #[test]
    fn katz_atlas_words_and_maps() {
        let atlas = spec_atlas(KATZ);
        assert_eq!(atlas.chambers.len(), 8);
        let words: Vec<Vec<usize>> = atlas.chambers.iter().map(|c| c.word.clone()).collect();
        assert_eq!(
            words,
            vec![
                vec![],
                vec![1],
                vec![2],
                vec![1, 2],
                vec![2, 1],
                vec![1, 2, 1],
                vec![2, 1, 2],
                vec![1, 2, 1, 2],
            ]
        );
        // The displayed maps: crossing wall 1 sends (t1,t2) to (-t1, t1+t2);
        // the word [1,2] composite sends it to (-t1-2t2, t1+t2).
        assert_eq!(atlas.chambers[1].matrix.rows(), vec![vec![-1, 0], vec![1, 1]]);
        assert_eq!(
            atlas.chambers[3].matrix.rows(),
            vec![vec![-1, -2], vec![1, 1]]
        );
        // Antipodal composite for even d is minus the identity.
        assert_eq!(
            atlas.chambers[7].matrix.rows(),
            vec![vec![-1, 0], vec![0, -1]]
        );
    }

    #[test]
    fn full_cycle_composes_to_identity() {
        let atlas = spec_atlas(KATZ);
        let full = compose_and_check(&atlas, &[2, 1, 2, 1, 1, 2, 1, 2]).unwrap();
        assert!(full.is_identity());
        assert!(compose_and_check(&atlas, &[]).unwrap().is_identity());
        assert!(compose_and_check(&atlas, &[3]).is_err());
    }

    #[test]
    fn e6_alternating_words_agree() {
        let atlas = spec_atlas(E6_PAIR);
        assert_eq!(atlas.chambers.len(), 10);
        let ma = compose_and_check(&atlas, &[1, 2, 1, 2, 1]).unwrap();
        let mb = compose_and_check(&atlas, &[2, 1, 2, 1, 2]).unwrap();
        assert_eq!(ma, mb);
        // Odd length swaps the two curves on top of the antipodal flip.
        assert_eq!(ma.rows(), vec![vec![0, -1], vec![-1, 0]]);
    }

    #[test]
    fn e6_local_exchange_sequence() {
        // The per-step multiplicities along [1,2,1,2,1] are 1,2,2,1,3.
        let atlas = spec_atlas(E6_PAIR);
        let arr = &atlas.arrangement;
        let mut m = Mat::identity(2);
        let mut seen = Vec::new();
        for (step, &j) in [1usize, 2, 1, 2, 1].iter().enumerate() {
            let local = pullback(arr, &m);
            let e = derive_exchange_data(&local, j).unwrap();
            let other = 3 - j;
            seen.push(*e.b.get(&(j, other)).unwrap());
            m = m.mul(&tracking_map(&e, 2));
            let _ = step;
        }
        assert_eq!(seen, vec![1, 2, 2, 1, 3]);
    }

    #[test]
    fn atlas_counts() {
        assert_eq!(spec_atlas(E6_PAIR).chambers.len(), 10);
        assert_eq!(spec_atlas(D4_TRIPLE).chambers.len(), 32);
        let disjoint =
            spec_atlas(r#"{"points":[{"type":"A1","white":[0]},{"type":"A1","white":[0]}]}"#);
        assert_eq!(disjoint.chambers.len(), 4);
    }

    #[test]
    fn steps_are_involutions() {
        for doc in [KATZ, E6_PAIR, D4_TRIPLE] {
            let atlas = spec_atlas(doc);
            for e in &atlas.edges {
                assert!(e.step.mul(&e.step).is_identity());
                let t = tracking_map(&e.exchange, atlas.arrangement.dim());
                assert!(t.mul(&t).is_identity());
            }
        }
    }

    #[test]
    fn codim2_alternating_composites_agree() {
        // Around every codimension-two wall of the local positive chamber,
        // the two alternating words of length m agree, from every chamber.
        for doc in [KATZ, E6_PAIR, D4_TRIPLE] {
            let atlas = spec_atlas(doc);
            let n = atlas.arrangement.dim();
            for c in &atlas.chambers {
                let local = pullback(&atlas.arrangement, &c.matrix);
                for j1 in 1..=n {
                    for j2 in j1 + 1..=n {
                        let m = local
                            .hyperplanes()
                            .iter()
                            .filter(|f| {
                                f.coeffs()
                                    .iter()
                                    .enumerate()
                                    .all(|(k, &x)| x == 0 || k == j1 - 1 || k == j2 - 1)
                            })
                            .count();
                        let mut wa = c.word.clone();
                        wa.extend(alternating(j1, j2, m));
                        let mut wb = c.word.clone();
                        wb.extend(alternating(j2, j1, m));
                        let ma = compose_and_check(&atlas, &wa).unwrap();
                        let mb = compose_and_check(&atlas, &wb).unwrap();
                        assert_eq!(ma, mb, "{doc} word {:?} vs {:?}", wa, wb);
                    }
                }
            }
        }
    }

    #[test]
    fn two_curve_reports() {
        let e6 = two_curve_report(&parse_spec(E6_PAIR).unwrap()).unwrap();
        assert_eq!(e6.d, 5);
        assert_eq!(e6.kind, TwoCurveKind::Intersecting);
        assert_eq!(e6.word_a, vec![1, 2, 1, 2, 1]);
        assert!(e6.relation_holds);

        let katz = two_curve_report(&parse_spec(KATZ).unwrap()).unwrap();
        assert_eq!(katz.d, 4);
        assert!(katz.relation_holds);

        let a2 = two_curve_report(
            &parse_spec(r#"{"points":[{"type":"A2","white":[0,1]}]}"#).unwrap(),
        )
        .unwrap();
        assert_eq!(a2.d, 3);

        let disjoint = two_curve_report(
            &parse_spec(r#"{"points":[{"type":"A1","white":[0]},{"type":"A1","white":[0]}]}"#)
                .unwrap(),
        )
        .unwrap();
        assert_eq!(disjoint.d, 2);
        assert_eq!(disjoint.kind, TwoCurveKind::Product);
        assert!(disjoint.relation_holds);
    }

    #[test]
    fn d_scan_entries() {
        let report = d_bound_scan(6).unwrap();
        let e6 = report
            .entries
            .iter()
            .find(|e| e.diagram == "E6" && e.white == vec![0, 2])
            .unwrap();
        assert_eq!(e6.d, 5);
        assert!(report
            .entries
            .iter()
            .filter(|e| e.diagram.starts_with('A'))
            .all(|e| e.d <= 3));
        assert!(report.violations.is_empty());
    }

    #[test]
    fn generic_parameters_stay_generic() {
        // l(x) != 0 for all hyperplanes implies l(Mx) != 0 for every
        // composite M, because pullbacks of hyperplanes are again walls of
        // the local frame.
        let atlas = spec_atlas(E6_PAIR);
        let x = vec![
            BigRational::new(7.into(), 3.into()),
            BigRational::new((-5).into(), 2.into()),
        ];
        let generic = |y: &[BigRational]| {
            atlas
                .arrangement
                .hyperplanes()
                .iter()
                .all(|f| !num::Zero::is_zero(&f.eval(y)))
        };
        assert!(generic(&x));
        for c in &atlas.chambers {
            assert!(generic(&c.matrix.apply(&x)));
        }
    }

    proptest! {
        /// The tracking formula always yields an involution, for any J and
        /// any nonnegative data.
        #[test]
        fn involution_property(
            n in 1usize..5,
            j_mask in 1u8..31,
            values in proptest::collection::vec(0i64..5, 16),
        ) {
            let j_set: Vec<usize> = (1..=n).filter(|i| j_mask & (1 << (i - 1)) != 0).collect();
            prop_assume!(!j_set.is_empty());
            let mut b = BTreeMap::new();
            let mut vi = 0;
            for &j in &j_set {
                for i in 1..=n {
                    if !j_set.contains(&i) {
                        b.insert((j, i), values[vi % values.len()]);
                        vi += 1;
                    }
                }
            }
            let t = tracking_map(&ExchangeData { j_set, b }, n);
            prop_assert!(t.mul(&t).is_identity());
        }
    }
}
