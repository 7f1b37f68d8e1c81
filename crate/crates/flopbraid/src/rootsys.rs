//! ADE Dynkin diagrams and their finite root systems, with exact integer
//! arithmetic throughout.
//!
//! Vertex numbering convention (fixed across the crate):
//!
//! ```text
//! A_n:  0 - 1 - 2 - ... - (n-1)
//!
//! D_n:  0 - 1 - ... - (n-3) - (n-2)        E_n:  0 - 1 - 2 - 3 - ... - (n-2)
//!                         |                              |
//!                       (n-1)                            5 -> attach (n-1) to 2
//! ```
//!
//! so D4 is the star with centre 1 and leaves {0, 2, 3}, and E6 is the path
//! 0-1-2-3-4 with vertex 5 attached to the trivalent vertex 2.

use crate::Error;
use serde::{Deserialize, Serialize};

/// Simply-laced family letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    D,
    E,
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Family::A => write!(f, "A"),
            Family::D => write!(f, "D"),
            Family::E => write!(f, "E"),
        }
    }
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "A" => Ok(Family::A),
            "D" => Ok(Family::D),
            "E" => Ok(Family::E),
            other => Err(Error::Diagram(format!("unknown family {other:?}"))),
        }
    }
}

/// A Dynkin diagram of type A, D or E with the crate's fixed numbering.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DynkinDiagram {
    family: Family,
    rank: usize,
    edges: Vec<(usize, usize)>,
}

impl DynkinDiagram {
    /// Builds the canonical diagram for an admissible `(family, rank)` pair.
    pub fn new(family: Family, rank: usize) -> Result<Self, Error> {
        let admissible = match family {
            Family::A => rank >= 1,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
        };
        if !admissible {
            return Err(Error::Diagram(format!(
                "inadmissible diagram {family}{rank}"
            )));
        }
        let mut edges: Vec<(usize, usize)> = match family {
            Family::A => (0..rank.saturating_sub(1)).map(|i| (i, i + 1)).collect(),
            Family::D => {
                let mut e: Vec<(usize, usize)> = (0..rank - 2).map(|i| (i, i + 1)).collect();
                e.push((rank - 3, rank - 1));
                e
            }
            Family::E => {
                let mut e: Vec<(usize, usize)> = (0..rank - 2).map(|i| (i, i + 1)).collect();
                e.push((2, rank - 1));
                e
            }
        };
        edges.sort_unstable();
        Ok(DynkinDiagram {
            family,
            rank,
            edges,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        self.edges.binary_search(&(a, b)).is_ok()
    }

    /// "E6", "D4", ...
    pub fn name(&self) -> String {
        format!("{}{}", self.family, self.rank)
    }

    /// Parses "A3", "D5", "E7" style names.
    pub fn parse(name: &str) -> Result<Self, Error> {
        let (fam, digits) = name.split_at(1);
        let family: Family = fam.parse()?;
        let rank: usize = digits
            .parse()
            .map_err(|_| Error::Diagram(format!("bad rank in diagram name {name:?}")))?;
        DynkinDiagram::new(family, rank)
    }
}

/// A root written in coordinates over the simple roots.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    coeffs: Vec<i64>,
}

impl Root {
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_positive(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0) && self.coeffs.iter().any(|&c| c > 0)
    }

    /// Sum of coefficients.
    pub fn height(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    /// Coefficientwise dominance.
    pub fn dominates(&self, other: &Root) -> bool {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .all(|(a, b)| a >= b)
    }
}

/// Simple reflection s_i in simple-root coordinates: only coefficient `i`
/// changes, to `-a_i + sum over neighbours of a_j`.
fn reflect(diagram: &DynkinDiagram, root: &Root, i: usize) -> Root {
    let mut coeffs = root.coeffs.clone();
    let mut neighbour_sum = 0;
    for j in 0..diagram.rank() {
        if diagram.adjacent(i, j) {
            neighbour_sum += root.coeffs[j];
        }
    }
    coeffs[i] = -root.coeffs[i] + neighbour_sum;
    Root { coeffs }
}

/// All positive roots, by closing the simple roots under simple reflections
/// and keeping the nonnegative vectors. Deduplicated, sorted.
pub fn positive_roots(diagram: &DynkinDiagram) -> Vec<Root> {
    let n = diagram.rank();
    let mut found: std::collections::BTreeSet<Root> = (0..n)
        .map(|i| {
            let mut c = vec![0; n];
            c[i] = 1;
            Root { coeffs: c }
        })
        .collect();
    let mut frontier: Vec<Root> = found.iter().cloned().collect();
    while let Some(root) = frontier.pop() {
        for i in 0..n {
            let next = reflect(diagram, &root, i);
            if next.is_positive() && found.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    found.into_iter().collect()
}

/// The unique positive root dominating all others coefficientwise.
pub fn highest_root(diagram: &DynkinDiagram) -> Root {
    let roots = positive_roots(diagram);
    let top = roots
        .iter()
        .max_by_key(|r| (r.height(), r.coeffs.clone()))
        .expect("nonempty root system")
        .clone();
    debug_assert!(roots.iter().all(|r| top.dominates(r)));
    top
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(family: Family, rank: usize) -> DynkinDiagram {
        DynkinDiagram::new(family, rank).unwrap()
    }

    #[test]
    fn canonical_shapes() {
        assert_eq!(diag(Family::A, 2).edges(), &[(0, 1)]);
        assert_eq!(diag(Family::D, 4).edges(), &[(0, 1), (1, 2), (1, 3)]);
        assert_eq!(
            diag(Family::E, 6).edges(),
            &[(0, 1), (1, 2), (2, 3), (2, 5), (3, 4)]
        );
        assert!(DynkinDiagram::new(Family::D, 3).is_err());
        assert!(DynkinDiagram::new(Family::E, 9).is_err());
        assert!(DynkinDiagram::parse("B2").is_err());
        assert_eq!(DynkinDiagram::parse("E7").unwrap().rank(), 7);
    }

    #[test]
    fn a2_roots() {
        let roots = positive_roots(&diag(Family::A, 2));
        let coeffs: Vec<&[i64]> = roots.iter().map(|r| r.coeffs()).collect();
        assert_eq!(coeffs, vec![&[0, 1][..], &[1, 0], &[1, 1]]);
        assert_eq!(highest_root(&diag(Family::A, 2)).coeffs(), &[1, 1]);
    }

    #[test]
    fn root_counts() {
        // |Phi+(A_n)| = n(n+1)/2, |Phi+(D_n)| = n(n-1), E6/E7/E8 = 36/63/120.
        for n in 1..=8 {
            assert_eq!(positive_roots(&diag(Family::A, n)).len(), n * (n + 1) / 2);
        }
        for n in 4..=8 {
            assert_eq!(positive_roots(&diag(Family::D, n)).len(), n * (n - 1));
        }
        assert_eq!(positive_roots(&diag(Family::E, 6)).len(), 36);
        assert_eq!(positive_roots(&diag(Family::E, 7)).len(), 63);
        assert_eq!(positive_roots(&diag(Family::E, 8)).len(), 120);
    }

    #[test]
    fn highest_roots() {
        // D4: coefficient 2 at the centre (vertex 1), 1 at each leaf.
        assert_eq!(highest_root(&diag(Family::D, 4)).coeffs(), &[1, 2, 1, 1]);
        // E6: coefficient 3 at the trivalent vertex (vertex 2).
        assert_eq!(
            highest_root(&diag(Family::E, 6)).coeffs(),
            &[1, 2, 3, 2, 1, 2]
        );
    }

    #[test]
    fn partial_sums_property() {
        // Every positive root of height >= 2 is a positive root plus a simple root.
        for (family, ranks) in [
            (Family::A, 1..=8usize),
            (Family::D, 4..=8),
            (Family::E, 6..=8),
        ] {
            for rank in ranks {
                let d = diag(family, rank);
                let roots = positive_roots(&d);
                let set: std::collections::HashSet<&[i64]> =
                    roots.iter().map(|r| r.coeffs()).collect();
                for r in &roots {
                    if r.height() < 2 {
                        continue;
                    }
                    let found = (0..rank).any(|i| {
                        if r.coeffs()[i] == 0 {
                            return false;
                        }
                        let mut c = r.coeffs().to_vec();
                        c[i] -= 1;
                        set.contains(&c[..])
                    });
                    assert!(found, "{}: {:?} has no simple-root predecessor", d.name(), r);
                }
            }
        }
    }

    /// Independent oracle: in a simply-laced root lattice the roots are
    /// exactly the vectors of squared length 2, so positive roots are the
    /// nonnegative solutions of x^T C x = 2 with C the Cartan matrix.
    fn norm2_vectors(diagram: &DynkinDiagram, bound: i64) -> usize {
        let n = diagram.rank();
        let mut count = 0usize;
        let mut v = vec![0i64; n];
        loop {
            let mut q = 0i64;
            for i in 0..n {
                q += 2 * v[i] * v[i];
                for j in i + 1..n {
                    if diagram.adjacent(i, j) {
                        q -= 2 * v[i] * v[j];
                    }
                }
            }
            if q == 2 {
                count += 1;
            }
            // next vector in the box [0, bound]^n
            let mut k = 0;
            loop {
                if k == n {
                    return count;
                }
                v[k] += 1;
                if v[k] > bound {
                    v[k] = 0;
                    k += 1;
                } else {
                    break;
                }
            }
        }
    }

    #[test]
    fn quadratic_form_oracle() {
        // Coefficients of any positive root are bounded by the highest root,
        // so a per-family box suffices: A -> 1, D -> 2, E6 -> 3, E7 -> 4, E8 -> 6.
        for (d, bound) in [
            (diag(Family::A, 4), 1),
            (diag(Family::D, 4), 2),
            (diag(Family::D, 6), 2),
            (diag(Family::E, 6), 3),
            (diag(Family::E, 7), 4),
        ] {
            assert_eq!(
                positive_roots(&d).len(),
                norm2_vectors(&d, bound),
                "count mismatch for {}",
                d.name()
            );
        }
    }
}
