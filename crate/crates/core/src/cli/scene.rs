//! Scene documents for `render`.
//!
//! ```json
//! {
//!   "schema": 1,
//!   "view": {"xmin": "-4", "xmax": "4", "ymin": "-4", "ymax": "4", "ray_extension": "1/2"},
//!   "objects": [
//!     {"kind": "point", "id": "A", "at": ["-2", "0"]},
//!     {"kind": "line", "id": "l", "vertex": ["0", "0"]}
//!   ]
//! }
//! ```
//!
//! Objects may refer to earlier objects by id: a line `through` two points,
//! a point at the stable `intersect`ion of two lines, a pencil on a line,
//! perspectivities and projectivities between lines and pencils.

use std::collections::HashMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{CliError, CliResult};
use crate::error::Error;
use crate::linalg::{TropMatrix, TropVector};
use crate::pencil::{construct_projectivity_for_triples, construct_projectivity_nth, make_pencil, LineMap, Perspectivity, ReducedPencil};
use crate::plane::{line_from_coeffs, stable_intersect, stable_line, PlanePoint, RayLabel, TropLine};
use crate::scalar::{serde_rational, Convention, Rational, TropScalar};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct View {
    #[serde(with = "serde_rational")]
    pub xmin: Rational,
    #[serde(with = "serde_rational")]
    pub xmax: Rational,
    #[serde(with = "serde_rational")]
    pub ymin: Rational,
    #[serde(with = "serde_rational")]
    pub ymax: Rational,
    #[serde(with = "serde_rational", default = "Rational::zero")]
    pub ray_extension: Rational,
}

impl View {
    fn validate(&self) -> crate::Result<()> {
        if self.xmin >= self.xmax || self.ymin >= self.ymax || self.ray_extension < Rational::zero() {
            return Err(Error::EmptyView);
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Style {
    #[default]
    Solid,
    Dotted,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointObject {
    pub id: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub at: Option<PlanePoint>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub intersect: Option<[String; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub color: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LineObject {
    pub id: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertex: Option<PlanePoint>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<TropScalar>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<TropScalar>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<TropScalar>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub through: Option<[String; 2]>,
    #[serde(default)]
    pub style: Style,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub color: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PencilObject {
    pub id: String,
    pub line: String,
    pub points: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PerspectivityObject {
    pub id: String,
    pub center: String,
    pub source: String,
    pub target: String,
    #[serde(default)]
    pub points: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub color: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProjectivityObject {
    pub id: String,
    pub source: String,
    pub target: String,
    #[serde(default)]
    pub choice: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadrupleObject {
    pub id: String,
    pub vectors: [TropVector; 4],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<[String; 4]>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixObject {
    pub id: String,
    pub rows: TropMatrix,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SceneObject {
    Point(PointObject),
    Line(LineObject),
    Pencil(PencilObject),
    Perspectivity(PerspectivityObject),
    Projectivity(ProjectivityObject),
    Quadruple(QuadrupleObject),
    Matrix(MatrixObject),
}

impl SceneObject {
    pub fn id(&self) -> &str {
        match self {
            SceneObject::Point(o) => &o.id,
            SceneObject::Line(o) => &o.id,
            SceneObject::Pencil(o) => &o.id,
            SceneObject::Perspectivity(o) => &o.id,
            SceneObject::Projectivity(o) => &o.id,
            SceneObject::Quadruple(o) => &o.id,
            SceneObject::Matrix(o) => &o.id,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Scene {
    pub schema: u32,
    #[serde(default)]
    pub convention: Convention,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub title: Option<String>,
    pub view: View,
    #[serde(default)]
    pub objects: Vec<SceneObject>,
}

/// Something to draw, with every reference resolved to exact geometry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Item {
    Line { line: TropLine, style: Style, color: String, label: Option<String> },
    Point { at: PlanePoint, color: String, label: String },
    Caption(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolvedScene {
    pub title: Option<String>,
    pub view: View,
    pub items: Vec<Item>,
}

#[derive(Clone)]
enum Entry {
    Point(PlanePoint, String),
    Line(TropLine),
    Pencil(TropLine, Vec<(PlanePoint, String)>),
    Other,
}

fn ray_color(ray: Option<RayLabel>) -> &'static str {
    match ray {
        Some(RayLabel::RayLeft) => "blue",
        Some(RayLabel::RayDown) => "green",
        Some(RayLabel::RayDiag) => "red",
        _ => "black",
    }
}

struct Resolver {
    entries: HashMap<String, Entry>,
    items: Vec<Item>,
}

impl Resolver {
    fn get(&self, id: &str) -> CliResult<&Entry> {
        self.entries.get(id).ok_or_else(|| CliError::Malformed(format!("unresolved reference `{id}`")))
    }

    fn point(&self, id: &str) -> CliResult<(PlanePoint, String)> {
        match self.get(id)? {
            Entry::Point(p, label) => Ok((p.clone(), label.clone())),
            _ => Err(CliError::Malformed(format!("`{id}` is not a point"))),
        }
    }

    fn line(&self, id: &str) -> CliResult<TropLine> {
        match self.get(id)? {
            Entry::Line(l) => Ok(l.clone()),
            _ => Err(CliError::Malformed(format!("`{id}` is not a line"))),
        }
    }

    fn pencil(&self, id: &str) -> CliResult<(TropLine, Vec<(PlanePoint, String)>)> {
        match self.get(id)? {
            Entry::Pencil(l, pts) => Ok((l.clone(), pts.clone())),
            _ => Err(CliError::Malformed(format!("`{id}` is not a pencil"))),
        }
    }

    fn dotted(&mut self, line: TropLine, color: &str) {
        self.items.push(Item::Line { line, style: Style::Dotted, color: color.into(), label: None });
    }

    fn mark(&mut self, at: PlanePoint, color: &str, label: String) {
        self.items.push(Item::Point { at, color: color.into(), label });
    }

    fn add(&mut self, obj: &SceneObject) -> CliResult<Entry> {
        Ok(match obj {
            SceneObject::Point(o) => {
                let at = match (&o.at, &o.intersect) {
                    (Some(p), None) => p.clone(),
                    (None, Some([l1, l2])) => stable_intersect(&self.line(l1)?, &self.line(l2)?)?,
                    _ => return Err(CliError::Malformed(format!("point `{}` needs exactly one of at, intersect", o.id))),
                };
                let label = o.label.clone().unwrap_or_else(|| o.id.clone());
                self.mark(at.clone(), o.color.as_deref().unwrap_or("black"), label.clone());
                Entry::Point(at, label)
            }
            SceneObject::Line(o) => {
                let line = match (&o.vertex, (&o.a, &o.b, &o.c), &o.through) {
                    (Some(v), (None, None, None), None) => TropLine::with_vertex(v),
                    (None, (Some(a), Some(b), Some(c)), None) => line_from_coeffs(a, b, c)?,
                    (None, (None, None, None), Some([p, q])) => stable_line(&self.point(p)?.0, &self.point(q)?.0)?,
                    _ => {
                        return Err(CliError::Malformed(format!(
                            "line `{}` needs exactly one of vertex, a/b/c, through",
                            o.id
                        )))
                    }
                };
                let color = o.color.clone().unwrap_or_else(|| if o.style == Style::Dotted { "blue" } else { "black" }.into());
                self.items.push(Item::Line { line: line.clone(), style: o.style, color, label: o.label.clone() });
                Entry::Line(line)
            }
            SceneObject::Pencil(o) => {
                let line = self.line(&o.line)?;
                let pts = o.points.iter().map(|id| self.point(id)).collect::<CliResult<Vec<_>>>()?;
                let coords: Vec<PlanePoint> = pts.iter().map(|(p, _)| p.clone()).collect();
                make_pencil(&line, &coords)?;
                // Recolor the marked points by ray, as pencils are usually drawn.
                for (p, label) in &pts {
                    let color = ray_color(line.label_of(p));
                    let existing = self.items.iter_mut().find_map(|i| match i {
                        Item::Point { at, color, label: l } if at == p && l == label => Some(color),
                        _ => None,
                    });
                    match existing {
                        Some(c) => *c = color.into(),
                        None => self.mark(p.clone(), color, label.clone()),
                    }
                }
                Entry::Pencil(line, pts)
            }
            SceneObject::Perspectivity(o) => {
                let (center, _) = self.point(&o.center)?;
                let f = Perspectivity::new(center.clone(), self.line(&o.source)?, self.line(&o.target)?)?;
                let color = o.color.clone().unwrap_or_else(|| "orange".into());
                for id in &o.points {
                    let (x, label) = self.point(id)?;
                    let y = f.apply(&x)?;
                    self.dotted(stable_line(&center, &x)?, &color);
                    self.mark(y.clone(), ray_color(f.target().label_of(&y)), format!("{label}′"));
                }
                Entry::Other
            }
            SceneObject::Projectivity(o) => {
                let (l1, src) = self.pencil(&o.source)?;
                let (l2, dst) = self.pencil(&o.target)?;
                let triple = |pts: &[(PlanePoint, String)], id: &str| -> CliResult<[PlanePoint; 3]> {
                    let coords: Vec<PlanePoint> = pts.iter().map(|(p, _)| p.clone()).collect();
                    coords.try_into().map_err(|_| CliError::Malformed(format!("pencil `{id}` needs exactly three points")))
                };
                let (s, t) = (triple(&src, &o.source)?, triple(&dst, &o.target)?);
                let built = match (ReducedPencil::new(&l1, &s), ReducedPencil::new(&l2, &t)) {
                    (Ok(r1), Ok(r2)) if r1.triple().is_some() && r2.triple().is_some() => construct_projectivity_nth(&r1, &r2, o.choice)?,
                    _ => construct_projectivity_for_triples(&l1, &s, &l2, &t, o.choice)?,
                };
                let [stage1, stage2] = built.projectivity.stages() else {
                    return Err(Error::PreconditionViolated("construction has two stages".into()).into());
                };
                self.items.push(Item::Line { line: built.l_prime.clone(), style: Style::Solid, color: "black".into(), label: Some("l′".into()) });
                let mut mids = Vec::new();
                for (x, label) in &src {
                    self.dotted(stable_line(&built.p_prime, x)?, "blue");
                    mids.push((stage1.apply(x)?, label.clone()));
                }
                for (x, label) in &mids {
                    if let Ok(l) = stable_line(&built.p_double_prime, x) {
                        self.dotted(l, "red");
                    }
                    if !dst.iter().any(|(p, _)| p == x) {
                        self.mark(x.clone(), "gray", format!("{label}₁"));
                    }
                    let _ = stage2.apply(x)?;
                }
                self.mark(built.p_prime.clone(), "black", "p′".into());
                self.mark(built.p_double_prime.clone(), "black", "p″".into());
                Entry::Other
            }
            SceneObject::Quadruple(o) => {
                let default = ["a", "b", "c", "d"].map(String::from);
                let labels = o.labels.clone().unwrap_or(default);
                for (v, label) in o.vectors.iter().zip(labels) {
                    let [TropScalar::Finite(x), TropScalar::Finite(y)] = v.coords() else {
                        return Err(Error::PreconditionViolated(format!("quadruple vector {v} is not a finite point of R²")).into());
                    };
                    self.mark(PlanePoint::new(x.clone(), y.clone()), "black", label);
                }
                Entry::Other
            }
            SceneObject::Matrix(o) => {
                let rows: Vec<String> = o
                    .rows
                    .rows()
                    .iter()
                    .map(|r| format!("[{}]", r.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")))
                    .collect();
                self.items.push(Item::Caption(format!("{} = [{}]", o.id, rows.join(", "))));
                Entry::Other
            }
        })
    }
}

impl Scene {
    /// Checks the header, resolves references in document order and
    /// computes every derived object exactly.
    pub fn resolve(&self) -> CliResult<ResolvedScene> {
        if self.schema != SCHEMA_VERSION {
            return Err(CliError::Malformed(format!("unsupported schema version {}", self.schema)));
        }
        self.view.validate()?;
        let mut r = Resolver { entries: HashMap::new(), items: Vec::new() };
        for obj in &self.objects {
            if r.entries.contains_key(obj.id()) {
                return Err(CliError::Malformed(format!("duplicate id `{}`", obj.id())));
            }
            let entry = r.add(obj)?;
            r.entries.insert(obj.id().to_string(), entry);
        }
        Ok(ResolvedScene { title: self.title.clone(), view: self.view.clone(), items: r.items })
    }
}
