//! The body file format.
//!
//! One JSON object per body:
//!
//! ```json
//! {"kind": "polygon2",  "vertices": [[x, y], ...]}
//! {"kind": "polytope3", "vertices": [[x, y, z], ...], "faces": [[i, j, k], ...]}
//! {"kind": "support2",  "a0": 1.0, "coeffs": [[a_k, b_k], ...]}
//! ```
//!
//! Parsing validates the body, so a successful read always yields a usable
//! convex body. This is the single untrusted-input surface of the crate.

use nalgebra::{Point2, Point3};
use serde::{Deserialize, Serialize};

use super::{support_body, Body, BodyError, Polygon2, Polytope3};

#[derive(Serialize, Deserialize)]
struct BodyFile {
    kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    vertices: Option<Vec<Vec<f64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    faces: Option<Vec<[usize; 3]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    a0: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    coeffs: Option<Vec<[f64; 2]>>,
}

/// Parse and validate a body from JSON bytes.
pub fn body_from_json(data: &[u8]) -> Result<Body, BodyError> {
    let file: BodyFile =
        serde_json::from_slice(data).map_err(|e| BodyError::Json(e.to_string()))?;
    match file.kind.as_str() {
        "polygon2" => {
            let raw = file
                .vertices
                .ok_or_else(|| BodyError::Json("polygon2 requires \"vertices\"".into()))?;
            let mut verts = Vec::with_capacity(raw.len());
            for v in &raw {
                if v.len() != 2 {
                    return Err(BodyError::Json("polygon2 vertices must be [x, y]".into()));
                }
                verts.push(Point2::new(v[0], v[1]));
            }
            Polygon2::new(verts).map(Body::Polygon2)
        }
        "polytope3" => {
            let raw = file
                .vertices
                .ok_or_else(|| BodyError::Json("polytope3 requires \"vertices\"".into()))?;
            let faces = file
                .faces
                .ok_or_else(|| BodyError::Json("polytope3 requires \"faces\"".into()))?;
            let mut verts = Vec::with_capacity(raw.len());
            for v in &raw {
                if v.len() != 3 {
                    return Err(BodyError::Json("polytope3 vertices must be [x, y, z]".into()));
                }
                verts.push(Point3::new(v[0], v[1], v[2]));
            }
            Polytope3::new(verts, faces).map(Body::Polytope3)
        }
        "support2" => {
            let a0 = file
                .a0
                .ok_or_else(|| BodyError::Json("support2 requires \"a0\"".into()))?;
            let coeffs = file
                .coeffs
                .unwrap_or_default()
                .iter()
                .map(|c| (c[0], c[1]))
                .collect();
            support_body(a0, coeffs).map(Body::Support2)
        }
        other => Err(BodyError::Json(format!(
            "unknown body kind {other:?}, expected polygon2 | polytope3 | support2"
        ))),
    }
}

/// Serialize a body to the JSON file format.
pub fn body_to_json(body: &Body) -> String {
    let file = match body {
        Body::Polygon2(p) => BodyFile {
            kind: "polygon2".into(),
            vertices: Some(p.vertices().iter().map(|v| vec![v.x, v.y]).collect()),
            faces: None,
            a0: None,
            coeffs: None,
        },
        Body::Polytope3(p) => BodyFile {
            kind: "polytope3".into(),
            vertices: Some(p.vertices().iter().map(|v| vec![v.x, v.y, v.z]).collect()),
            faces: Some(p.faces().to_vec()),
            a0: None,
            coeffs: None,
        },
        Body::Support2(b) => BodyFile {
            kind: "support2".into(),
            vertices: None,
            faces: None,
            a0: Some(b.a0()),
            coeffs: Some(b.coeffs().iter().map(|&(a, b)| [a, b]).collect()),
        },
    };
    serde_json::to_string_pretty(&file).expect("body serialization cannot fail")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polygon_roundtrip() {
        let body = body_from_json(
            br#"{"kind":"polygon2","vertices":[[1,1],[-1,1],[-1,-1],[1,-1]]}"#,
        )
        .unwrap();
        let json = body_to_json(&body);
        let again = body_from_json(json.as_bytes()).unwrap();
        match (&body, &again) {
            (Body::Polygon2(a), Body::Polygon2(b)) => assert_eq!(a.vertices(), b.vertices()),
            _ => panic!("kind changed in roundtrip"),
        }
    }

    #[test]
    fn support_roundtrip() {
        let body =
            body_from_json(br#"{"kind":"support2","a0":1.0,"coeffs":[[0.0,0.0],[0.1,0.0]]}"#)
                .unwrap();
        match &body {
            Body::Support2(b) => assert_eq!(b.coeffs()[1], (0.1, 0.0)),
            _ => panic!("wrong kind"),
        }
    }

    #[test]
    fn invalid_inputs_are_rejected_not_repaired() {
        // malformed JSON
        assert!(matches!(body_from_json(b"{"), Err(BodyError::Json(_))));
        // unknown kind
        assert!(matches!(
            body_from_json(br#"{"kind":"blob"}"#),
            Err(BodyError::Json(_))
        ));
        // nonconvex polygon is a validation error, not a parse error
        let r = body_from_json(
            br#"{"kind":"polygon2","vertices":[[0,0],[2,0],[2,2],[0.9,0.9],[0,2]]}"#,
        );
        assert!(matches!(r, Err(BodyError::NotConvexPolygon(_))));
        // nonconvex support function
        let r = body_from_json(br#"{"kind":"support2","a0":1.0,"coeffs":[[0,0],[0.4,0]]}"#);
        assert!(matches!(r, Err(BodyError::NotConvex(_, _))));
    }
}
