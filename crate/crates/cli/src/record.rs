//! JSON form of a snub with its analysis.

use serde::{Deserialize, Serialize};
use skelsnub::analysis::{fvector, orientable, uniformity_residual, vertex_symbols_constant, FVector};
use skelsnub::snub::{Edge, Face, Source};
use skelsnub::{SkeletalPolyhedron, TypeSet, Vector3};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub a: usize,
    pub b: usize,
    #[serde(rename = "type")]
    pub kind: u8,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FaceRecord {
    pub cycle: Vec<usize>,
    #[serde(rename = "type")]
    pub kind: u8,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FVectorRecord {
    pub f0: usize,
    pub f1: [Option<usize>; 3],
    pub f2: [Option<usize>; 3],
}

impl From<FVector> for FVectorRecord {
    fn from(f: FVector) -> Self {
        Self {
            f0: f.f0,
            f1: f.f1,
            f2: f.f2,
        }
    }
}

impl From<&FVectorRecord> for FVector {
    fn from(f: &FVectorRecord) -> Self {
        FVector {
            f0: f.f0,
            f1: f.f1,
            f2: f.f2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisRecord {
    pub fvector: FVectorRecord,
    pub euler: i64,
    pub symbol: Option<String>,
    pub orientable: Option<bool>,
    /// Uniformity residuals at the initial vertex, when the source is a
    /// catalog entry.
    pub residuals: Option<[f64; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SnubRecord {
    pub name: Option<String>,
    pub vertex: Option<[f64; 3]>,
    #[serde(rename = "typeSet")]
    pub type_set: Option<Vec<usize>>,
    pub vertices: Vec<[f64; 3]>,
    pub edges: Vec<EdgeRecord>,
    pub faces: Vec<FaceRecord>,
    pub analysis: AnalysisRecord,
}

fn arr(p: &Vector3) -> [f64; 3] {
    [p.x, p.y, p.z]
}

pub fn analyze(poly: &SkeletalPolyhedron) -> AnalysisRecord {
    let residuals = poly
        .source
        .as_ref()
        .and_then(|s| skelsnub::lookup(&s.name).ok().map(|e| uniformity_residual(&e.gens, &s.vertex)))
        .map(|(a, b)| [a, b]);
    AnalysisRecord {
        fvector: fvector(poly).into(),
        euler: skelsnub::analysis::euler(poly),
        symbol: vertex_symbols_constant(poly).ok().flatten().map(|s| s.to_string()),
        orientable: orientable(poly).ok(),
        residuals,
    }
}

impl SnubRecord {
    pub fn new(poly: &SkeletalPolyhedron) -> Self {
        Self {
            name: poly.source.as_ref().map(|s| s.name.clone()),
            vertex: poly.source.as_ref().map(|s| arr(&s.vertex)),
            type_set: poly.source.as_ref().map(|s| s.type_set.members()),
            vertices: poly.vertices.iter().map(arr).collect(),
            edges: poly
                .edges
                .iter()
                .map(|e| EdgeRecord {
                    a: e.a,
                    b: e.b,
                    kind: e.kind,
                })
                .collect(),
            faces: poly
                .faces
                .iter()
                .map(|f| FaceRecord {
                    cycle: f.cycle.clone(),
                    kind: f.kind,
                })
                .collect(),
            analysis: analyze(poly),
        }
    }

    pub fn polyhedron(&self) -> SkeletalPolyhedron {
        let source = match (&self.name, self.vertex, &self.type_set) {
            (Some(name), Some(v), Some(t)) => TypeSet::from_members(t).map(|type_set| Source {
                name: name.clone(),
                vertex: Vector3::from(v),
                type_set,
            }),
            _ => None,
        };
        SkeletalPolyhedron {
            vertices: self.vertices.iter().map(|&p| Vector3::from(p)).collect(),
            vertex_group_element: None,
            edges: self
                .edges
                .iter()
                .map(|e| Edge {
                    a: e.a,
                    b: e.b,
                    kind: e.kind,
                })
                .collect(),
            faces: self
                .faces
                .iter()
                .map(|f| Face {
                    cycle: f.cycle.clone(),
                    kind: f.kind,
                })
                .collect(),
            source,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("record serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use skelsnub::group::DEFAULT_CAP;
    use skelsnub::snub::build_catalog_snub;
    use skelsnub::FiniteGroup;

    fn record(name: &str) -> SnubRecord {
        let e = skelsnub::lookup(name).unwrap();
        let g = FiniteGroup::close(&e.gens, DEFAULT_CAP).unwrap();
        SnubRecord::new(&build_catalog_snub(e, &g, e.cone.seed).unwrap())
    }

    #[test]
    fn json_round_trip() {
        let r = record("{6,4}_3");
        let back = SnubRecord::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert_eq!(SnubRecord::new(&back.polyhedron()), r);
    }

    #[test]
    fn schema_keys() {
        let v: serde_json::Value = serde_json::from_str(&record("{4,3}_3").to_json()).unwrap();
        for key in ["name", "vertex", "typeSet", "vertices", "edges", "faces", "analysis"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert!(v["edges"][0].get("type").is_some());
        assert!(v["faces"][0].get("cycle").is_some());
        for key in ["fvector", "euler", "symbol", "orientable", "residuals"] {
            assert!(v["analysis"].get(key).is_some(), "{key}");
        }
        assert_eq!(v["typeSet"], serde_json::json!([0, 1, 2]));
    }
}
