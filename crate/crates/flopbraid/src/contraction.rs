//! Input data for a flopping contraction: per singular point, an ADE diagram
//! with a marked subset of vertices. The "white" vertices index the contracted
//! curves (in listed order), the complementary "black" vertices are the curves
//! blown down in the partial resolution slice.
//!
//! Wire format:
//!
//! ```json
//! {"points":[{"type":"E6","white":[0,2],"label":"p1"}]}
//! ```
//!
//! `type` is family+rank, `white` lists vertex indices under the numbering
//! convention documented in [`crate::rootsys`]. Curve `k` (1-based, global)
//! is the k-th white vertex across all points in listed order. An optional
//! `multiplicities` field (one entry per white vertex) is carried as metadata
//! and used by no computation.

use crate::rootsys::DynkinDiagram;
use crate::Error;
use serde::{Deserialize, Serialize};

/// One singular point of the contraction: a marked ADE diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionPoint {
    pub diagram: DynkinDiagram,
    /// Ordered white vertices; position k (0-based) is local curve k+1.
    pub white: Vec<usize>,
    /// Complement of `white`, ascending.
    pub black: Vec<usize>,
    pub label: Option<String>,
    /// Optional scheme-theoretic multiplicities, metadata only.
    pub multiplicities: Option<Vec<u64>>,
}

impl ContractionPoint {
    pub fn curve_count(&self) -> usize {
        self.white.len()
    }
}

/// A full contraction: one marked diagram per singular point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionSpec {
    pub points: Vec<ContractionPoint>,
}

impl ContractionSpec {
    /// Total number of contracted curves.
    pub fn curve_count(&self) -> usize {
        self.points.iter().map(|p| p.curve_count()).sum()
    }

    /// Global curve index (0-based) -> (point index, local curve index).
    pub fn curve_index_map(&self) -> Vec<(usize, usize)> {
        let mut map = Vec::with_capacity(self.curve_count());
        for (pi, p) in self.points.iter().enumerate() {
            for li in 0..p.curve_count() {
                map.push((pi, li));
            }
        }
        map
    }
}

#[derive(Serialize, Deserialize)]
struct SpecDoc {
    points: Vec<PointDoc>,
}

#[derive(Serialize, Deserialize)]
struct PointDoc {
    #[serde(rename = "type")]
    ty: String,
    white: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    label: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    multiplicities: Option<Vec<u64>>,
}

fn spec_err(point: usize, field: &str, message: impl Into<String>) -> Error {
    Error::Spec {
        point,
        field: field.to_string(),
        message: message.into(),
    }
}

/// Parses and validates a JSON contraction document. Errors carry the point
/// index and field they refer to.
pub fn parse_spec(document: &str) -> Result<ContractionSpec, Error> {
    let doc: SpecDoc = serde_json::from_str(document)?;
    if doc.points.is_empty() {
        return Err(spec_err(0, "points", "at least one point is required"));
    }
    let mut points = Vec::with_capacity(doc.points.len());
    for (pi, p) in doc.points.into_iter().enumerate() {
        let diagram = DynkinDiagram::parse(&p.ty)
            .map_err(|e| spec_err(pi, "type", e.to_string()))?;
        if p.white.is_empty() {
            return Err(spec_err(pi, "white", "white set must be nonempty"));
        }
        let mut seen = vec![false; diagram.rank()];
        for &v in &p.white {
            if v >= diagram.rank() {
                return Err(spec_err(
                    pi,
                    "white",
                    format!("vertex {v} out of range for {}", diagram.name()),
                ));
            }
            if seen[v] {
                return Err(spec_err(pi, "white", format!("duplicate vertex {v}")));
            }
            seen[v] = true;
        }
        if let Some(m) = &p.multiplicities {
            if m.len() != p.white.len() {
                return Err(spec_err(
                    pi,
                    "multiplicities",
                    "one multiplicity per white vertex",
                ));
            }
        }
        let black: Vec<usize> = (0..diagram.rank()).filter(|v| !seen[*v]).collect();
        points.push(ContractionPoint {
            diagram,
            white: p.white,
            black,
            label: p.label,
            multiplicities: p.multiplicities,
        });
    }
    Ok(ContractionSpec { points })
}

/// Serializes back to the wire format; `parse_spec(serialize(s)) == s`.
pub fn serialize(spec: &ContractionSpec) -> String {
    let doc = SpecDoc {
        points: spec
            .points
            .iter()
            .map(|p| PointDoc {
                ty: p.diagram.name(),
                white: p.white.clone(),
                label: p.label.clone(),
                multiplicities: p.multiplicities.clone(),
            })
            .collect(),
    };
    serde_json::to_string(&doc).expect("spec serialization cannot fail")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::Family;
    use proptest::prelude::*;

    #[test]
    fn parses_paper_examples() {
        let s = parse_spec(r#"{"points":[{"type":"E6","white":[0,2]}]}"#).unwrap();
        assert_eq!(s.curve_count(), 2);
        assert_eq!(s.points[0].diagram.name(), "E6");
        assert_eq!(s.points[0].white, vec![0, 2]);
        assert_eq!(s.points[0].black, vec![1, 3, 4, 5]);

        // Katz-style cD4 labelling with curve 1 at the centre.
        let s = parse_spec(r#"{"points":[{"type":"D4","white":[1,0],"label":"katz"}]}"#).unwrap();
        assert_eq!(s.points[0].white, vec![1, 0]);
        assert_eq!(s.points[0].black, vec![2, 3]);
    }

    #[test]
    fn rejects_invalid_documents() {
        let empty_white = parse_spec(r#"{"points":[{"type":"A1","white":[]}]}"#);
        assert!(matches!(empty_white, Err(Error::Spec { point: 0, .. })));

        let bad_family = parse_spec(r#"{"points":[{"type":"F4","white":[0]}]}"#);
        assert!(bad_family.is_err());

        let out_of_range =
            parse_spec(r#"{"points":[{"type":"A2","white":[0]},{"type":"A2","white":[5]}]}"#);
        match out_of_range {
            Err(Error::Spec { point, field, .. }) => {
                assert_eq!(point, 1);
                assert_eq!(field, "white");
            }
            other => panic!("expected positional error, got {other:?}"),
        }

        let dup = parse_spec(r#"{"points":[{"type":"A3","white":[2,2]}]}"#);
        assert!(dup.is_err());
    }

    #[test]
    fn curve_index_map_examples() {
        let one = parse_spec(r#"{"points":[{"type":"A2","white":[0,1]}]}"#).unwrap();
        assert_eq!(one.curve_index_map(), vec![(0, 0), (0, 1)]);

        let two = parse_spec(
            r#"{"points":[{"type":"A1","white":[0]},{"type":"A1","white":[0]}]}"#,
        )
        .unwrap();
        assert_eq!(two.curve_index_map(), vec![(0, 0), (1, 0)]);

        let d4 = parse_spec(r#"{"points":[{"type":"D4","white":[0,2,3]}]}"#).unwrap();
        assert_eq!(d4.curve_index_map(), vec![(0, 0), (0, 1), (0, 2)]);
    }

    fn arb_point() -> impl Strategy<Value = (String, Vec<usize>, Option<String>)> {
        let family_rank = prop_oneof![
            (Just(Family::A), 1..=8usize),
            (Just(Family::D), 4..=8usize),
            (Just(Family::E), 6..=8usize),
        ];
        family_rank.prop_flat_map(|(f, r)| {
            let name = format!("{f}{r}");
            (
                Just(name),
                proptest::sample::subsequence((0..r).collect::<Vec<_>>(), 1..=r)
                    .prop_shuffle(),
                proptest::option::of("[a-z]{1,6}"),
            )
        })
    }

    proptest! {
        #[test]
        fn serialize_roundtrip(points in proptest::collection::vec(arb_point(), 1..4)) {
            let doc = SpecDoc {
                points: points
                    .into_iter()
                    .map(|(ty, white, label)| PointDoc { ty, white, label, multiplicities: None })
                    .collect(),
            };
            let text = serde_json::to_string(&doc).unwrap();
            let spec = parse_spec(&text).unwrap();
            let again = parse_spec(&serialize(&spec)).unwrap();
            prop_assert_eq!(spec, again);
        }
    }
}
