//! Instances and the shared JSON instance format
//! `{"kind": "circle"|"planar", "points": [{"color": "R"|"B", "x": "num/den", "y": "num/den"}]}`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::geometry::{circle_point_from_parameter, Color, ColoredPoint};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Circle,
    Planar,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub kind: Kind,
    pub points: Vec<ColoredPoint>,
}

#[derive(Serialize, Deserialize)]
struct PointJson {
    color: Color,
    x: String,
    y: String,
}

#[derive(Serialize, Deserialize)]
struct InstanceJson {
    kind: Kind,
    points: Vec<PointJson>,
}

impl Instance {
    /// Validates and numbers the points `0..n` in the given order.
    pub fn new(kind: Kind, points: Vec<(Color, Rational, Rational)>) -> Result<Instance> {
        let points: Vec<ColoredPoint> = points
            .into_iter()
            .enumerate()
            .map(|(id, (c, x, y))| ColoredPoint::new(id, c, x, y))
            .collect();
        let mut seen: HashMap<(&Rational, &Rational), usize> = HashMap::new();
        for p in &points {
            if let Some(&other) = seen.get(&(&p.x, &p.y)) {
                return Err(Error::DuplicatePoint(other, p.id));
            }
            seen.insert((&p.x, &p.y), p.id);
            if kind == Kind::Circle && !p.on_unit_circle() {
                return Err(Error::PointOffCircle(p.id));
            }
        }
        Ok(Instance { kind, points })
    }

    pub fn circle(points: Vec<(Color, Rational, Rational)>) -> Result<Instance> {
        Instance::new(Kind::Circle, points)
    }

    pub fn planar(points: Vec<(Color, Rational, Rational)>) -> Result<Instance> {
        Instance::new(Kind::Planar, points)
    }

    /// Circle instance from rational parameters (see [`circle_point_from_parameter`]).
    pub fn circle_from_parameters(points: &[(Color, Rational)]) -> Result<Instance> {
        Instance::circle(
            points
                .iter()
                .map(|(c, t)| {
                    let (x, y) = circle_point_from_parameter(t);
                    (*c, x, y)
                })
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn reds(&self) -> impl Iterator<Item = &ColoredPoint> {
        self.points.iter().filter(|p| p.color == Color::Red)
    }

    pub fn blues(&self) -> impl Iterator<Item = &ColoredPoint> {
        self.points.iter().filter(|p| p.color == Color::Blue)
    }

    pub fn is_bichromatic(&self) -> bool {
        self.reds().next().is_some() && self.blues().next().is_some()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let doc = InstanceJson {
            kind: self.kind,
            points: self
                .points
                .iter()
                .map(|p| PointJson { color: p.color, x: rational::format(&p.x), y: rational::format(&p.y) })
                .collect(),
        };
        serde_json::to_value(doc).expect("instance serializes")
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("instance serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Instance> {
        let doc: InstanceJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let pts = doc
            .points
            .into_iter()
            .map(|p| Ok((p.color, rational::parse(&p.x)?, rational::parse(&p.y)?)))
            .collect::<Result<Vec<_>>>()?;
        Instance::new(doc.kind, pts)
    }

    /// Hex SHA-256 of the canonical JSON serialization.
    pub fn digest(&self) -> String {
        let bytes = serde_json::to_vec(&self.to_json()).expect("instance serializes");
        Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
    }
}
