//! Wavefront OBJ export.

use std::fmt::Write;

use skelsnub::analysis::{classify_polygon, PolygonKind};
use skelsnub::SkeletalPolyhedron;

fn number(x: f64) -> String {
    let s = format!("{:.16e}", x);
    if x == 0.0 {
        "0".into()
    } else {
        s
    }
}

/// Vertex lines with 17 significant digits, then one face record per face
/// in stored cyclic order; skew faces are preceded by `# skew`.
pub fn export_obj(poly: &SkeletalPolyhedron) -> String {
    let mut out = String::new();
    for p in &poly.vertices {
        writeln!(out, "v {} {} {}", number(p.x), number(p.y), number(p.z)).unwrap();
    }
    for (f, face) in poly.faces.iter().enumerate() {
        let skew = classify_polygon(&poly.face_points(f)).is_ok_and(|c| c.kind == PolygonKind::Skew);
        if skew {
            out.push_str("# skew\n");
        }
        let ids: Vec<String> = face.cycle.iter().map(|i| (i + 1).to_string()).collect();
        writeln!(out, "f {}", ids.join(" ")).unwrap();
    }
    out
}
