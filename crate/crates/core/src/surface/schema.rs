//! JSON input format for surfaces and curve-arc triples.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::minimal::FaceComplex;
use super::{CurveArcTriple, Dart, EdgeWalk, Surface};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexSpec {
    pub id: i64,
    pub rotation: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeSpec {
    pub id: i64,
    pub darts: [i64; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FaceSpec {
    pub walk: Vec<i64>,
    #[serde(default)]
    pub genus: u32,
    #[serde(default)]
    pub boundary: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurvesSpec {
    pub alpha: Vec<i64>,
    pub beta: Vec<i64>,
    #[serde(default)]
    pub tau: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasepointSpec {
    pub v: i64,
    pub w: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub vertices: Vec<VertexSpec>,
    pub edges: Vec<EdgeSpec>,
    #[serde(default)]
    pub faces: Vec<FaceSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curves: Option<CurvesSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basepoints: Option<BasepointSpec>,
}

impl InputSpec {
    pub fn from_json(text: &str) -> Result<InputSpec> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("input spec serializes")
    }

    /// Describe a surface (and optionally a triple) with internal dart indices as ids.
    pub fn describe(name: Option<String>, s: &Surface, curves: Option<(&EdgeWalk, &EdgeWalk, &EdgeWalk)>) -> InputSpec {
        let id = |d: &Dart| d.0 as i64;
        InputSpec {
            name,
            vertices: (0..s.num_vertices())
                .map(|v| VertexSpec {
                    id: v as i64,
                    rotation: s.rotation(v).iter().map(id).collect(),
                })
                .collect(),
            edges: (0..s.num_edges())
                .map(|e| EdgeSpec {
                    id: e as i64,
                    darts: [2 * e as i64, 2 * e as i64 + 1],
                })
                .collect(),
            faces: (0..s.num_faces())
                .map(|f| FaceSpec {
                    walk: s.face(f).iter().map(id).collect(),
                    genus: 0,
                    boundary: s.is_boundary_face(f),
                })
                .collect(),
            curves: curves.map(|(a, b, t)| CurvesSpec {
                alpha: a.darts().iter().map(id).collect(),
                beta: b.darts().iter().map(id).collect(),
                tau: t.darts().iter().map(id).collect(),
            }),
            basepoints: curves.map(|(a, b, _)| BasepointSpec {
                v: a.start() as i64,
                w: b.start() as i64,
            }),
        }
    }
}

/// A validated input: the surface and, when curves are given, the triple.
#[derive(Clone, Debug)]
pub struct BuiltInput {
    pub name: Option<String>,
    pub surface: Surface,
    pub triple: Option<CurveArcTriple>,
    /// Input dart id for each internal dart of the original edges.
    pub dart_ids: Vec<i64>,
}

fn invalid(path: String, msg: impl std::fmt::Display) -> Error {
    Error::InvalidSurface(format!("{path}: {msg}"))
}

pub fn build_surface(spec: &InputSpec) -> Result<BuiltInput> {
    let mut dart_of: HashMap<i64, Dart> = HashMap::new();
    let mut dart_ids = Vec::new();
    let mut edge_ids = std::collections::HashSet::new();
    for (e, edge) in spec.edges.iter().enumerate() {
        if !edge_ids.insert(edge.id) {
            return Err(invalid(
                format!("edges[{e}].id"),
                format!("duplicate edge id {}", edge.id),
            ));
        }
        for (k, &d) in edge.darts.iter().enumerate() {
            if dart_of.insert(d, Dart(2 * e + k)).is_some() {
                return Err(invalid(format!("edges[{e}].darts[{k}]"), format!("dart {d} reused")));
            }
            dart_ids.push(d);
        }
    }
    let mut vertex_of: HashMap<i64, usize> = HashMap::new();
    let mut rotations = Vec::with_capacity(spec.vertices.len());
    for (i, v) in spec.vertices.iter().enumerate() {
        if vertex_of.insert(v.id, i).is_some() {
            return Err(invalid(
                format!("vertices[{i}].id"),
                format!("duplicate vertex id {}", v.id),
            ));
        }
        let mut rot = Vec::with_capacity(v.rotation.len());
        for (k, d) in v.rotation.iter().enumerate() {
            let dart = dart_of
                .get(d)
                .ok_or_else(|| invalid(format!("vertices[{i}].rotation[{k}]"), format!("unknown dart {d}")))?;
            rot.push(*dart);
        }
        rotations.push(rot);
    }
    let traced = Surface::from_rotations(rotations, |_| false)?;

    // match listed faces against the traced ones
    let mut genus = vec![0u32; traced.num_faces()];
    let mut boundary = vec![false; traced.num_faces()];
    if !spec.faces.is_empty() {
        let mut listed = vec![false; traced.num_faces()];
        for (i, f) in spec.faces.iter().enumerate() {
            let path = format!("faces[{i}].walk");
            let walk: Vec<Dart> = f
                .walk
                .iter()
                .enumerate()
                .map(|(k, d)| {
                    dart_of
                        .get(d)
                        .copied()
                        .ok_or_else(|| invalid(format!("{path}[{k}]"), format!("unknown dart {d}")))
                })
                .collect::<Result<_>>()?;
            let first = *walk.first().ok_or_else(|| invalid(path.clone(), "empty face"))?;
            let t = traced.face_of(first);
            let tw = traced.face(t);
            let offset = tw.iter().position(|&d| d == first).unwrap();
            let matches = tw.len() == walk.len() && (0..walk.len()).all(|k| tw[(offset + k) % tw.len()] == walk[k]);
            if !matches {
                return Err(invalid(
                    path,
                    "walk does not match the faces traced from the rotations (inconsistent orientation or gluing)",
                ));
            }
            if listed[t] {
                return Err(invalid(path, "face listed twice"));
            }
            listed[t] = true;
            if f.boundary && f.genus > 0 {
                return Err(invalid(
                    format!("faces[{i}].genus"),
                    "a boundary face cannot carry genus",
                ));
            }
            genus[t] = f.genus;
            boundary[t] = f.boundary;
        }
        if let Some(t) = listed.iter().position(|&l| !l) {
            return Err(invalid("faces".into(), format!("traced face {t} is not listed")));
        }
    }

    // attach handles to faces with genus
    let mut cx = FaceComplex::of(&traced);
    cx.boundary = boundary;
    for (f, &h) in genus.iter().enumerate() {
        for _ in 0..h {
            let a = Dart(2 * cx.n_edges);
            let b = Dart(2 * cx.n_edges + 2);
            cx.n_edges += 2;
            cx.faces[f].extend([a, b, a.partner(), b.partner()]);
        }
    }
    let surface = cx.build()?;

    let triple = match (&spec.curves, &spec.basepoints) {
        (None, None) => None,
        (Some(c), Some(bp)) => Some(build_triple(&surface, &dart_of, &vertex_of, c, bp)?),
        _ => {
            return Err(Error::InvalidSurface(
                "curves and basepoints must be given together".into(),
            ))
        }
    };
    Ok(BuiltInput {
        name: spec.name.clone(),
        surface,
        triple,
        dart_ids,
    })
}

fn build_triple(
    s: &Surface,
    dart_of: &HashMap<i64, Dart>,
    vertex_of: &HashMap<i64, usize>,
    c: &CurvesSpec,
    bp: &BasepointSpec,
) -> Result<CurveArcTriple> {
    let darts = |list: &[i64], name: &str| -> Result<Vec<Dart>> {
        list.iter()
            .enumerate()
            .map(|(k, d)| {
                dart_of
                    .get(d)
                    .copied()
                    .ok_or_else(|| invalid(format!("curves.{name}[{k}]"), format!("unknown dart {d}")))
            })
            .collect()
    };
    let vertex = |id: i64, name: &str| -> Result<usize> {
        vertex_of
            .get(&id)
            .copied()
            .ok_or_else(|| invalid(format!("basepoints.{name}"), format!("unknown vertex {id}")))
    };
    let v = vertex(bp.v, "v")?;
    let w = vertex(bp.w, "w")?;
    let based = |list: Vec<Dart>, at: usize, name: &str| -> Result<EdgeWalk> {
        let walk = EdgeWalk::closed(s, list).map_err(|e| invalid(format!("curves.{name}"), e))?;
        let i = walk
            .vertices(s)
            .iter()
            .position(|&x| x == at)
            .ok_or_else(|| invalid(format!("curves.{name}"), "does not pass through its basepoint"))?;
        Ok(walk.rotated(s, i))
    };
    let alpha = based(darts(&c.alpha, "alpha")?, v, "alpha")?;
    let beta = based(darts(&c.beta, "beta")?, w, "beta")?;
    let tau = EdgeWalk::path(s, v, darts(&c.tau, "tau")?).map_err(|e| invalid("curves.tau".into(), e))?;
    CurveArcTriple::new(s.clone(), alpha, beta, tau)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn octagon_rotation_matches_face() {
        let s = crate::surface::standard_polygon(2);
        let spec = InputSpec::describe(None, &s, None);
        let built = build_surface(&spec).unwrap();
        assert_eq!(built.surface.genus(), 2);
        assert_eq!(built.surface.num_faces(), 1);
    }

    #[test]
    fn mismatched_face_is_rejected() {
        let s = crate::surface::standard_polygon(2);
        let mut spec = InputSpec::describe(None, &s, None);
        spec.faces[0].walk.swap(0, 1);
        let err = build_surface(&spec).unwrap_err().to_string();
        assert!(err.contains("faces[0].walk"), "{err}");
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = InputSpec::from_json("{\n  \"vertices\": [\n  oops")
            .unwrap_err()
            .to_string();
        assert!(err.contains("line 3"), "{err}");
    }

    #[test]
    fn face_genus_adds_handles() {
        let s = crate::surface::standard_polygon(2);
        let mut spec = InputSpec::describe(None, &s, None);
        spec.faces[0].genus = 1;
        let built = build_surface(&spec).unwrap();
        assert_eq!(built.surface.genus(), 3);
    }
}
