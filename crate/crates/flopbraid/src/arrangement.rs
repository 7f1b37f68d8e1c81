//! Central hyperplane arrangements with exact arithmetic: construction from
//! contraction data by root restriction, products, chamber enumeration with
//! rational interior witnesses, adjacency, codimension-two walls,
//! simpliciality, and an independent chamber-count oracle via the
//! intersection lattice.

use crate::contraction::{ContractionPoint, ContractionSpec};
use crate::linalg::{self, Mat};
use crate::rootsys::positive_roots;
use crate::{par, Error};
use num::rational::BigRational;
use num::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

/// A linear functional through the origin: primitive integer covector,
/// normalized so the first nonzero entry is positive. `l` and `-2l` cut the
/// same wall and normalize identically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Functional {
    coeffs: Vec<i64>,
}

impl Functional {
    /// Returns `None` for the zero vector.
    pub fn new(coeffs: &[i64]) -> Option<Self> {
        linalg::primitive_normalized(coeffs).map(|coeffs| Functional { coeffs })
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn eval(&self, x: &[BigRational]) -> BigRational {
        linalg::eval_at(&self.coeffs, x)
    }

    pub fn eval_i64(&self, x: &[i64]) -> i64 {
        self.coeffs.iter().zip(x).map(|(&c, &v)| c * v).sum()
    }
}

impl std::fmt::Display for Functional {
    /// Renders like `t1+2t2` over coordinates t1..tn.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else if c < 0 {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let a = c.abs();
            if a != 1 {
                write!(f, "{a}")?;
            }
            write!(f, "t{}", i + 1)?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Side of a hyperplane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

pub fn signs_string(signs: &[Sign]) -> String {
    signs.iter().map(|s| s.as_char()).collect()
}

/// A finite central arrangement in `R^dim`: deduplicated normalized
/// functionals in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    dim: usize,
    hyperplanes: Vec<Functional>,
}

impl Arrangement {
    /// Normalizes, deduplicates and sorts. Zero vectors are rejected.
    pub fn new(dim: usize, covectors: Vec<Vec<i64>>) -> Result<Self, Error> {
        let mut set = BTreeSet::new();
        for v in covectors {
            if v.len() != dim {
                return Err(Error::Arrangement(format!(
                    "covector length {} does not match dimension {dim}",
                    v.len()
                )));
            }
            match Functional::new(&v) {
                Some(f) => {
                    set.insert(f);
                }
                None => {
                    return Err(Error::Arrangement("zero covector".into()));
                }
            }
        }
        Ok(Arrangement {
            dim,
            hyperplanes: set.into_iter().collect(),
        })
    }

    pub fn empty(dim: usize) -> Self {
        Arrangement {
            dim,
            hyperplanes: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn hyperplanes(&self) -> &[Functional] {
        &self.hyperplanes
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn index_of(&self, f: &Functional) -> Option<usize> {
        self.hyperplanes.binary_search(f).ok()
    }

    /// True when every functional has nonnegative entries and every
    /// coordinate functional is present; contraction-derived arrangements
    /// satisfy both, making the positive orthant a chamber.
    pub fn has_positive_chamber(&self) -> bool {
        let coords = (0..self.dim).all(|i| {
            let mut e = vec![0; self.dim];
            e[i] = 1;
            self.index_of(&Functional::new(&e).unwrap()).is_some()
        });
        coords
            && self
                .hyperplanes
                .iter()
                .all(|f| f.coeffs().iter().all(|&c| c >= 0))
    }

    fn covector_rows(&self) -> Vec<Vec<i64>> {
        self.hyperplanes.iter().map(|f| f.coeffs().to_vec()).collect()
    }
}

/// Restriction of the positive roots of a marked diagram to its white
/// coordinates: project each root's coefficient vector to the white vertices
/// (listed order), drop zeros, normalize, deduplicate.
pub fn restrict_roots(point: &ContractionPoint) -> Arrangement {
    let covectors: Vec<Vec<i64>> = positive_roots(&point.diagram)
        .iter()
        .filter_map(|root| {
            let v: Vec<i64> = point.white.iter().map(|&w| root.coeffs()[w]).collect();
            if v.iter().all(|&c| c == 0) {
                None
            } else {
                Some(v)
            }
        })
        .collect();
    Arrangement::new(point.curve_count(), covectors).expect("root restriction is well formed")
}

/// Product arrangement: each functional of `a` extended by zeros on `b`'s
/// coordinates and vice versa.
pub fn product(a: &Arrangement, b: &Arrangement) -> Arrangement {
    let dim = a.dim + b.dim;
    let mut covectors = Vec::with_capacity(a.len() + b.len());
    for f in a.hyperplanes() {
        let mut v = f.coeffs().to_vec();
        v.extend(std::iter::repeat(0).take(b.dim));
        covectors.push(v);
    }
    for f in b.hyperplanes() {
        let mut v = vec![0; a.dim];
        v.extend_from_slice(f.coeffs());
        covectors.push(v);
    }
    Arrangement::new(dim, covectors).expect("product is well formed")
}

/// The arrangement of a whole contraction: product of per-point restrictions,
/// coordinates ordered by the global curve index map.
pub fn build_arrangement(spec: &ContractionSpec) -> Arrangement {
    spec.points
        .iter()
        .map(restrict_roots)
        .fold(Arrangement::empty(0), |acc, a| product(&acc, &a))
}

/// An open chamber: sign per hyperplane plus a rational interior point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chamber {
    pub signs: Vec<Sign>,
    pub witness: Vec<BigRational>,
}

impl Chamber {
    pub fn signs_string(&self) -> String {
        signs_string(&self.signs)
    }
}

fn signed_rows(arr: &Arrangement, signs: &[Sign], upto: usize) -> Vec<Vec<i64>> {
    signs[..upto]
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let mut row = arr.hyperplanes[i].coeffs().to_vec();
            if *s == Sign::Minus {
                for x in &mut row {
                    *x = -*x;
                }
            }
            row
        })
        .collect()
}

/// Enumerates every chamber exactly once by incremental hyperplane insertion,
/// returning them sorted by sign string. Exact rational witnesses throughout.
pub fn chambers(arr: &Arrangement) -> Result<Vec<Chamber>, Error> {
    let n = arr.dim;
    let spanned = linalg::rank(&arr.covector_rows());
    if spanned < n {
        return Err(Error::Degenerate {
            dim: n,
            rank: spanned,
        });
    }
    // Region list for the first k hyperplanes; splitting preserves order, so
    // the construction is deterministic.
    let mut regions: Vec<Chamber> = vec![Chamber {
        signs: Vec::new(),
        witness: vec![BigRational::zero(); n],
    }];
    for k in 0..arr.len() {
        let f = &arr.hyperplanes[k];
        let split = par::map_vec(std::mem::take(&mut regions), |region| {
            let value = f.eval(&region.witness);
            let mut out: Vec<Chamber> = Vec::with_capacity(2);
            let mut try_side = |sign: Sign, keep_witness: bool| {
                if keep_witness {
                    let mut signs = region.signs.clone();
                    signs.push(sign);
                    out.push(Chamber {
                        signs,
                        witness: region.witness.clone(),
                    });
                    return;
                }
                let mut rows = signed_rows(arr, &region.signs, k);
                let mut row = f.coeffs().to_vec();
                if sign == Sign::Minus {
                    for x in &mut row {
                        *x = -*x;
                    }
                }
                rows.push(row);
                if let Some(witness) = linalg::strict_feasible(n, &rows) {
                    let mut signs = region.signs.clone();
                    signs.push(sign);
                    out.push(Chamber { signs, witness });
                }
            };
            if value.is_positive() {
                try_side(Sign::Plus, true);
                try_side(Sign::Minus, false);
            } else if value.is_negative() {
                try_side(Sign::Minus, true);
                try_side(Sign::Plus, false);
            } else {
                // Witness sits on the new hyperplane; re-derive both sides.
                try_side(Sign::Plus, false);
                try_side(Sign::Minus, false);
            }
            out
        });
        regions = split.into_iter().flatten().collect();
    }
    regions.sort_by(|a, b| a.signs.cmp(&b.signs));
    Ok(regions)
}

/// Undirected adjacency between chambers. Two chambers of a central
/// arrangement are adjacent exactly when their sign vectors differ in one
/// functional: the zero crossing of that functional on a segment between
/// witnesses lies interior to a shared facet.
pub fn adjacency(chams: &[Chamber]) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for i in 0..chams.len() {
        for j in i + 1..chams.len() {
            let diff = chams[i]
                .signs
                .iter()
                .zip(&chams[j].signs)
                .filter(|(a, b)| a != b)
                .count();
            if diff == 1 {
                edges.push((i, j));
            }
        }
    }
    edges
}

/// Hyperplane indices supporting facets of the chamber with the given signs:
/// those `j` where `{l_j = 0}` meets the chamber closure in dimension n-1.
pub fn chamber_facets(arr: &Arrangement, signs: &[Sign]) -> Vec<usize> {
    let n = arr.dim;
    let mut facets = Vec::new();
    for j in 0..arr.len() {
        let basis = linalg::nullspace(&[arr.hyperplanes[j].coeffs().to_vec()], n);
        // Substitute x = B y and require the remaining strict inequalities.
        let rows: Vec<Vec<i64>> = (0..arr.len())
            .filter(|&i| i != j)
            .map(|i| {
                let mut row = arr.hyperplanes[i].coeffs().to_vec();
                if signs[i] == Sign::Minus {
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
            facets.push(j);
        }
    }
    facets
}

/// True iff the hyperplanes intersect only in the origin and every chamber is
/// an open simplicial cone (n facets with linearly independent normals).
pub fn is_simplicial(arr: &Arrangement) -> bool {
    let n = arr.dim;
    if linalg::rank(&arr.covector_rows()) < n {
        return false;
    }
    let chams = match chambers(arr) {
        Ok(c) => c,
        Err(_) => return false,
    };
    chams.iter().all(|c| {
        let facets = chamber_facets(arr, &c.signs);
        facets.len() == n
            && linalg::rank(
                &facets
                    .iter()
                    .map(|&j| arr.hyperplanes[j].coeffs().to_vec())
                    .collect::<Vec<_>>(),
            ) == n
    })
}

/// A flat of the intersection lattice, identified by the set of hyperplanes
/// containing it.
struct Flat {
    members: BTreeSet<usize>,
    codim: usize,
}

fn intersection_lattice(arr: &Arrangement) -> Vec<Flat> {
    let rows = arr.covector_rows();
    let mut flats: Vec<Flat> = vec![Flat {
        members: BTreeSet::new(),
        codim: 0,
    }];
    let mut seen: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    seen.insert(BTreeSet::new());
    let mut frontier: Vec<usize> = vec![0];
    while let Some(fi) = frontier.pop() {
        let (base_members, base_codim) = {
            let f = &flats[fi];
            (f.members.clone(), f.codim)
        };
        let base_rows: Vec<Vec<i64>> = base_members.iter().map(|&i| rows[i].clone()).collect();
        for h in 0..arr.len() {
            if base_members.contains(&h) {
                continue;
            }
            let mut span = base_rows.clone();
            span.push(rows[h].clone());
            // Closure: every hyperplane whose covector lies in the span.
            let members: BTreeSet<usize> = (0..arr.len())
                .filter(|&i| linalg::in_rowspan(&span, &rows[i]))
                .collect();
            if seen.insert(members.clone()) {
                flats.push(Flat {
                    members,
                    codim: base_codim + 1,
                });
                frontier.push(flats.len() - 1);
            }
        }
    }
    flats
}

/// Chamber count through the intersection lattice and its Moebius function:
/// the region count is the sum of |mu| over all flats. Entirely independent
/// of the incremental insertion in [`chambers`].
pub fn chamber_count_zaslavsky(arr: &Arrangement) -> u64 {
    let mut flats = intersection_lattice(arr);
    flats.sort_by(|a, b| (a.codim, a.members.clone()).cmp(&(b.codim, b.members.clone())));
    let mut mu: Vec<i64> = vec![0; flats.len()];
    for i in 0..flats.len() {
        if flats[i].members.is_empty() {
            mu[i] = 1;
            continue;
        }
        let mut m = 0i64;
        for j in 0..flats.len() {
            if j != i && flats[j].members.is_subset(&flats[i].members) {
                m -= mu[j];
            }
        }
        mu[i] = m;
    }
    mu.iter().map(|&m| m.unsigned_abs()).sum()
}

/// A codimension-two intersection stratum with the full set of hyperplanes
/// containing it; the multiplicity `m` is the member count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codim2Wall {
    /// Integer basis of the (n-2)-dimensional stratum.
    pub stratum: Vec<Vec<i64>>,
    /// Indices into the arrangement's hyperplane list, ascending.
    pub members: Vec<usize>,
}

impl Codim2Wall {
    pub fn multiplicity(&self) -> usize {
        self.members.len()
    }
}

/// All distinct codimension-two walls. Empty when `dim < 2`.
pub fn codim2_walls(arr: &Arrangement) -> Vec<Codim2Wall> {
    if arr.dim < 2 {
        return Vec::new();
    }
    let rows = arr.covector_rows();
    let mut walls: BTreeMap<Vec<usize>, Vec<Vec<i64>>> = BTreeMap::new();
    for i in 0..arr.len() {
        for j in i + 1..arr.len() {
            let pair = vec![rows[i].clone(), rows[j].clone()];
            let members: Vec<usize> = (0..arr.len())
                .filter(|&k| linalg::in_rowspan(&pair, &rows[k]))
                .collect();
            walls
                .entry(members)
                .or_insert_with(|| linalg::nullspace(&pair, arr.dim));
        }
    }
    walls
        .into_iter()
        .map(|(members, stratum)| Codim2Wall { stratum, members })
        .collect()
}

/// Pullback of the arrangement along an invertible matrix: the arrangement
/// with functionals `l . M`, renormalized.
pub fn pullback(arr: &Arrangement, m: &Mat) -> Arrangement {
    let covectors: Vec<Vec<i64>> = arr
        .hyperplanes
        .iter()
        .map(|f| m.pullback(f.coeffs()))
        .collect();
    Arrangement::new(arr.dim, covectors).expect("pullback along invertible map is well formed")
}

// --- serialization ---

/// Wire form of an arrangement: `{"dim":n,"hyperplanes":[[c1..cn],...]}` with
/// normalized covectors in lexicographic order.
#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ArrangementDoc {
    pub dim: usize,
    pub hyperplanes: Vec<Vec<i64>>,
}

impl From<&Arrangement> for ArrangementDoc {
    fn from(a: &Arrangement) -> Self {
        ArrangementDoc {
            dim: a.dim,
            hyperplanes: a.covector_rows(),
        }
    }
}

/// Wire form of a chamber: signs in hyperplane order, witness as exact
/// rationals rendered `p/q` (denominator omitted when 1).
#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ChamberDoc {
    pub signs: String,
    pub witness: Vec<String>,
}

impl From<&Chamber> for ChamberDoc {
    fn from(c: &Chamber) -> Self {
        ChamberDoc {
            signs: c.signs_string(),
            witness: c.witness.iter().map(|w| w.to_string()).collect(),
        }
    }
}
