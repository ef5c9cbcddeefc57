//! Patch persistence: a versioned JSON document with enough redundancy to be
//! human-auditable. Face vertex cycles are the source of truth; the half-edge
//! structure is rebuilt from them on decode and cross-checked against the
//! stored vertex words and interior flags.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclic::CyclicType;
use crate::patch::{Patch, Vid};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DocError {
    #[error("unsupported format_version {0} (this build reads {FORMAT_VERSION})")]
    Version(u32),
    #[error("bad type tuple: {0}")]
    BadType(String),
    #[error("{locus}: {message}")]
    Malformed { locus: String, message: String },
    #[error("decoded patch fails validation: {0}")]
    Invalid(String),
    #[error("json: {0}")]
    Json(String),
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct VertexDoc {
    pub id: u32,
    pub word: Vec<u32>,
    pub interior: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct FaceDoc {
    pub id: u32,
    pub size: u32,
    pub layer: u32,
    /// Vertex ids counterclockwise around the face.
    pub vertices: Vec<u32>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct PatchDocument {
    pub format_version: u32,
    #[serde(rename = "type")]
    pub tuple: Vec<u32>,
    pub origin: Option<u32>,
    pub completed_layers: u32,
    pub vertices: Vec<VertexDoc>,
    pub faces: Vec<FaceDoc>,
}

pub fn encode_patch(p: &Patch) -> PatchDocument {
    PatchDocument {
        format_version: FORMAT_VERSION,
        tuple: p.ctype().entries().to_vec(),
        origin: p.origin_vertex(),
        completed_layers: p.completed_layers(),
        vertices: p
            .all_vertices()
            .map(|v| {
                let interior = p.is_interior_vertex(v);
                let word = p.corner_word(v);
                VertexDoc {
                    id: v,
                    // interior words are cyclic; store the canonical rotation
                    // so re-encoding a decoded document is byte-stable
                    word: if interior {
                        crate::cyclic::canonical_entries(&word)
                    } else {
                        word
                    },
                    interior,
                }
            })
            .collect(),
        faces: p
            .all_faces()
            .map(|f| FaceDoc {
                id: f,
                size: p.face_size(f),
                layer: p.face_layer(f),
                vertices: p.face_vertices(f),
            })
            .collect(),
    }
}

pub fn to_json(doc: &PatchDocument) -> String {
    serde_json::to_string_pretty(doc).expect("document serializes")
}

pub fn from_json(text: &str) -> Result<PatchDocument, DocError> {
    serde_json::from_str(text).map_err(|e| DocError::Json(e.to_string()))
}

/// Rebuilds the half-edge map from the face cycles and validates everything.
pub fn decode_patch(doc: &PatchDocument) -> Result<Patch, DocError> {
    if doc.format_version != FORMAT_VERSION {
        return Err(DocError::Version(doc.format_version));
    }
    let ctype = CyclicType::new(doc.tuple.clone()).map_err(|e| DocError::BadType(e.to_string()))?;

    // vertex ids must be unique; remap to dense indices
    let mut vmap: BTreeMap<u32, Vid> = BTreeMap::new();
    for (i, v) in doc.vertices.iter().enumerate() {
        if vmap.insert(v.id, i as Vid).is_some() {
            return Err(DocError::Malformed {
                locus: format!("/vertices/{i}"),
                message: format!("duplicate vertex id {}", v.id),
            });
        }
    }
    let mut fseen = std::collections::BTreeSet::new();
    for (i, f) in doc.faces.iter().enumerate() {
        if !fseen.insert(f.id) {
            return Err(DocError::Malformed {
                locus: format!("/faces/{i}"),
                message: format!("duplicate face id {}", f.id),
            });
        }
        if f.vertices.len() != f.size as usize {
            return Err(DocError::Malformed {
                locus: format!("/faces/{i}/vertices"),
                message: format!(
                    "cycle length {} does not match size {}",
                    f.vertices.len(),
                    f.size
                ),
            });
        }
        for (j, vid) in f.vertices.iter().enumerate() {
            if !vmap.contains_key(vid) {
                return Err(DocError::Malformed {
                    locus: format!("/faces/{i}/vertices/{j}"),
                    message: format!("unknown vertex id {vid}"),
                });
            }
        }
    }
    let origin = match doc.origin {
        Some(o) => Some(*vmap.get(&o).ok_or_else(|| DocError::Malformed {
            locus: "/origin".into(),
            message: format!("unknown vertex id {o}"),
        })?),
        None => None,
    };

    let cycles: Vec<(u32, u32, Vec<Vid>)> = doc
        .faces
        .iter()
        .map(|f| {
            (
                f.size,
                f.layer,
                f.vertices.iter().map(|v| vmap[v]).collect::<Vec<_>>(),
            )
        })
        .collect();
    let p = Patch::from_face_cycles(ctype, doc.vertices.len(), origin, doc.completed_layers, &cycles)
        .map_err(|e| DocError::Malformed {
            locus: "/faces".into(),
            message: e,
        })?;

    let violations = p.validate();
    if !violations.is_empty() {
        return Err(DocError::Invalid(violations[0].0.clone()));
    }
    // cross-check the stored redundancy
    for (i, v) in doc.vertices.iter().enumerate() {
        let dense = vmap[&v.id];
        if p.is_interior_vertex(dense) != v.interior {
            return Err(DocError::Malformed {
                locus: format!("/vertices/{i}/interior"),
                message: "interior flag disagrees with the reconstruction".into(),
            });
        }
        let word = p.corner_word(dense);
        let matches = if v.interior {
            crate::cyclic::canonical_entries(&word) == crate::cyclic::canonical_entries(&v.word)
        } else {
            word == v.word
        };
        if !matches {
            return Err(DocError::Malformed {
                locus: format!("/vertices/{i}/word"),
                message: format!("stored word {:?} disagrees with derived {:?}", v.word, word),
            });
        }
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patch::close_layer_backtracking;

    fn two_layer_4545() -> Patch {
        let t: CyclicType = "[4,5,4,5]".parse().unwrap();
        let mut p = Patch::new_fan(&t, 0, false).unwrap();
        let mut budget = u64::MAX;
        assert!(close_layer_backtracking(&mut p, &mut budget));
        p
    }

    #[test]
    fn round_trip_preserves_everything() {
        let p = two_layer_4545();
        let doc = encode_patch(&p);
        let q = decode_patch(&doc).unwrap();
        assert!(q.validate().is_empty());
        assert_eq!(q.completed_layers(), p.completed_layers());
        assert_eq!(q.face_count(), p.face_count());
        assert_eq!(q.vertex_count(), p.vertex_count());
        assert_eq!(q.boundary_len(), p.boundary_len());
        for f in p.all_faces() {
            assert_eq!(p.face_layer(f), q.face_layer(f));
            assert_eq!(p.face_size(f), q.face_size(f));
        }
        assert_eq!(
            crate::patch::canonical_code(&p),
            crate::patch::canonical_code(&q)
        );
    }

    #[test]
    fn json_re_encode_is_byte_identical() {
        let p = two_layer_4545();
        let doc = encode_patch(&p);
        let text = to_json(&doc);
        let doc2 = from_json(&text).unwrap();
        let q = decode_patch(&doc2).unwrap();
        let text2 = to_json(&encode_patch(&q));
        assert_eq!(text, text2);
    }

    #[test]
    fn duplicate_face_id_is_reported() {
        let p = two_layer_4545();
        let mut doc = encode_patch(&p);
        let id = doc.faces[0].id;
        doc.faces[1].id = id;
        match decode_patch(&doc) {
            Err(DocError::Malformed { locus, message }) => {
                assert_eq!(locus, "/faces/1");
                assert!(message.contains(&id.to_string()));
            }
            other => panic!("expected duplicate-face error, got {other:?}"),
        }
    }

    #[test]
    fn future_version_fails_loudly() {
        let p = two_layer_4545();
        let mut doc = encode_patch(&p);
        doc.format_version = 2;
        assert!(matches!(decode_patch(&doc), Err(DocError::Version(2))));
    }

    #[test]
    fn tampered_word_is_caught() {
        let p = two_layer_4545();
        let mut doc = encode_patch(&p);
        doc.vertices[0].word = vec![4, 4, 4, 4];
        assert!(matches!(
            decode_patch(&doc),
            Err(DocError::Malformed { .. })
        ));
    }

    #[test]
    fn empty_patch_round_trips() {
        let t: CyclicType = "[4,5,4,5]".parse().unwrap();
        let p = Patch::empty(t);
        let doc = encode_patch(&p);
        let q = decode_patch(&doc).unwrap();
        assert_eq!(q.face_count(), 0);
    }
}
