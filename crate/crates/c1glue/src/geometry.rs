//! Two-element quadratic Bézier meshes sharing one interface edge.
//!
//! A mesh is a pair of elements, each a (bi-)quadratic Bézier patch over the
//! reference triangle or square. Control points are stored row-major by
//! `(i, j)` with `j` fastest; the interface is the parameter edge `u = 0`,
//! which both elements must parameterize with identical control points
//! `C0, C1, C2`.
//!
//! The JSON form is
//!
//! ```json
//! {
//!   "degree_geometry": 2,
//!   "elements": [
//!     {"kind": "triangle", "control_points": [[x, y], ...]},
//!     {"kind": "quadrilateral", "control_points": [[x, y], ...]}
//!   ]
//! }
//! ```
//!
//! with coordinates given either as JSON numbers (read exactly, including
//! decimals) or as rational strings like `"-7/10"`.

use serde_json::Value;

use crate::error::{Error, Result};
use crate::polyalg::{from_bernstein, net_len, unit_sign, BiPoly, Domain, Poly};
use crate::rat::{parse_rational, rat_int, rational_string, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElementKind {
    Triangle,
    Quadrilateral,
}

impl ElementKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ElementKind::Triangle => "triangle",
            ElementKind::Quadrilateral => "quadrilateral",
        }
    }

    pub fn from_str(s: &str) -> Option<Self> {
        match s {
            "triangle" => Some(ElementKind::Triangle),
            "quadrilateral" => Some(ElementKind::Quadrilateral),
            _ => None,
        }
    }

    pub fn domain(self) -> Domain {
        match self {
            ElementKind::Triangle => Domain::Triangle,
            ElementKind::Quadrilateral => Domain::Square,
        }
    }

    /// Degree offset entering the transversal degree bounds: 0 for the
    /// triangle, 1 for the quadrilateral.
    pub fn sigma(self) -> usize {
        match self {
            ElementKind::Triangle => 0,
            ElementKind::Quadrilateral => 1,
        }
    }
}

/// One quadratic Bézier element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element {
    pub kind: ElementKind,
    /// Control points in row-major `(i, j)` order, `j` fastest.
    pub points: Vec<[Rational; 2]>,
}

pub const GEOMETRY_DEGREE: usize = 2;

impl Element {
    pub fn new(kind: ElementKind, points: Vec<[Rational; 2]>) -> Result<Self> {
        let expect = net_len(kind.domain(), GEOMETRY_DEGREE);
        if points.len() != expect {
            return Err(Error::Parse(format!(
                "{} needs {} control points, got {}",
                kind.as_str(),
                expect,
                points.len()
            )));
        }
        Ok(Element { kind, points })
    }

    /// Flat index of control point `(i, j)` for the quadratic net.
    fn idx(&self, i: usize, j: usize) -> usize {
        match self.kind {
            // rows of length 3, 2, 1
            ElementKind::Triangle => match i {
                0 => j,
                1 => 3 + j,
                _ => 5,
            },
            ElementKind::Quadrilateral => 3 * i + j,
        }
    }

    pub fn point(&self, i: usize, j: usize) -> &[Rational; 2] {
        &self.points[self.idx(i, j)]
    }

    /// Transversal edge derivative dF/du restricted to u = 0, one polynomial
    /// in v per coordinate.
    pub fn du_edge(&self) -> [Poly; 2] {
        let two = rat_int(2);
        match self.kind {
            ElementKind::Triangle => std::array::from_fn(|t| {
                let a = (&self.point(1, 0)[t] - &self.point(0, 0)[t]) * &two;
                let b = (&self.point(1, 1)[t] - &self.point(0, 1)[t]) * &two;
                Poly::new(vec![a.clone(), b - a])
            }),
            ElementKind::Quadrilateral => std::array::from_fn(|t| {
                let coeffs: Vec<Rational> = (0..3)
                    .map(|j| (&self.point(1, j)[t] - &self.point(0, j)[t]) * &two)
                    .collect();
                from_bernstein(&coeffs)
            }),
        }
    }

    /// Tangential edge derivative dF/dv along u = 0.
    pub fn dv_edge(&self) -> [Poly; 2] {
        let two = rat_int(2);
        std::array::from_fn(|t| {
            let a = (&self.point(0, 1)[t] - &self.point(0, 0)[t]) * &two;
            let b = (&self.point(0, 2)[t] - &self.point(0, 1)[t]) * &two;
            Poly::new(vec![a.clone(), b - a])
        })
    }

    /// Geometry coordinate map component as a monomial bivariate polynomial.
    pub fn coordinate_poly(&self, t: usize) -> BiPoly {
        let net: Vec<Rational> = self.points.iter().map(|p| p[t].clone()).collect();
        BiPoly::from_bernstein_net(self.kind.domain(), GEOMETRY_DEGREE, &net)
    }

    /// Jacobian determinant of the geometry map over the whole element.
    pub fn jacobian_det(&self) -> BiPoly {
        let x = self.coordinate_poly(0);
        let y = self.coordinate_poly(1);
        let a = x.partial_u().mul(&y.partial_v());
        let b = x.partial_v().mul(&y.partial_u());
        a.sub(&b)
    }

    /// Jacobian determinant restricted to the interface, det[dF/du, dF/dv]
    /// at u = 0.
    pub fn interface_jacobian(&self) -> Poly {
        let du = self.du_edge();
        let dv = self.dv_edge();
        &(&du[0] * &dv[1]) - &(&du[1] * &dv[0])
    }
}

/// Two elements glued along `u = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeshPair {
    pub elements: [Element; 2],
}

impl MeshPair {
    pub fn new(first: Element, second: Element) -> Self {
        MeshPair {
            elements: [first, second],
        }
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let value: Value =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
        Self::from_json_value(&value)
    }

    pub fn from_json_value(value: &Value) -> Result<Self> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Parse("mesh must be a JSON object".into()))?;
        let degree = obj
            .get("degree_geometry")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("missing integer field degree_geometry".into()))?;
        if degree as usize != GEOMETRY_DEGREE {
            return Err(Error::DegreeMismatch(format!(
                "degree_geometry must be {GEOMETRY_DEGREE}, got {degree}"
            )));
        }
        let elements = obj
            .get("elements")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing array field elements".into()))?;
        if elements.len() != 2 {
            return Err(Error::Parse(format!(
                "exactly 2 elements required, got {}",
                elements.len()
            )));
        }
        let parsed: Vec<Element> = elements.iter().map(parse_element).collect::<Result<_>>()?;
        let mut it = parsed.into_iter();
        Ok(MeshPair::new(it.next().unwrap(), it.next().unwrap()))
    }

    pub fn to_json_value(&self) -> Value {
        let elems: Vec<Value> = self
            .elements
            .iter()
            .map(|e| {
                serde_json::json!({
                    "kind": e.kind.as_str(),
                    "control_points": e
                        .points
                        .iter()
                        .map(|p| vec![rational_string(&p[0]), rational_string(&p[1])])
                        .collect::<Vec<_>>(),
                })
            })
            .collect();
        serde_json::json!({
            "degree_geometry": GEOMETRY_DEGREE,
            "elements": elems,
        })
    }

    /// Shared interface control points C0, C1, C2 (of the first element).
    pub fn edge_points(&self) -> [&[Rational; 2]; 3] {
        let e = &self.elements[0];
        [e.point(0, 0), e.point(0, 1), e.point(0, 2)]
    }

    /// Checks mesh admissibility: matching interface nets, a non-collapsed
    /// edge, and interface-regular geometry maps.
    pub fn validate(&self) -> Result<()> {
        let [e1, e2] = &self.elements;
        for j in 0..3 {
            if e1.point(0, j) != e2.point(0, j) {
                return Err(Error::EdgeMismatch(format!(
                    "interface control point C{j} differs between elements"
                )));
            }
        }
        let [c0, _, c2] = self.edge_points();
        if c0 == c2 {
            return Err(Error::DegenerateEdge(
                "interface endpoints C0 and C2 coincide".into(),
            ));
        }
        // squared norm of the edge tangent; a zero means a cusp on the edge
        let dv = e1.dv_edge();
        let beta = &(&dv[0] * &dv[0]) + &(&dv[1] * &dv[1]);
        if !unit_sign(&beta).is_nonzero_constant() {
            return Err(Error::IrregularGluing(
                "edge tangent vanishes on the interface".into(),
            ));
        }
        for (l, e) in self.elements.iter().enumerate() {
            if !unit_sign(&e.interface_jacobian()).is_nonzero_constant() {
                return Err(Error::IrregularOnInterface(format!(
                    "element {} Jacobian vanishes on the interface",
                    l + 1
                )));
            }
        }
        Ok(())
    }
}

fn parse_element(value: &Value) -> Result<Element> {
    let obj = value
        .as_object()
        .ok_or_else(|| Error::Parse("element must be a JSON object".into()))?;
    let kind_str = obj
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Parse("missing string field kind".into()))?;
    let kind = ElementKind::from_str(kind_str)
        .ok_or_else(|| Error::Parse(format!("unknown element kind {kind_str:?}")))?;
    let pts = obj
        .get("control_points")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing array field control_points".into()))?;
    let points: Vec<[Rational; 2]> = pts.iter().map(parse_point).collect::<Result<_>>()?;
    Element::new(kind, points)
}

fn parse_point(value: &Value) -> Result<[Rational; 2]> {
    let arr = value
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| Error::Parse("control point must be a [x, y] pair".into()))?;
    let x = parse_coordinate(&arr[0])?;
    let y = parse_coordinate(&arr[1])?;
    Ok([x, y])
}

fn parse_coordinate(value: &Value) -> Result<Rational> {
    match value {
        // arbitrary-precision numbers keep the literal text, so this is exact
        Value::Number(n) => parse_rational(&n.to_string()),
        Value::String(s) => parse_rational(s),
        other => Err(Error::Parse(format!(
            "coordinate must be a number or rational string, got {other}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn tri_json() -> String {
        r#"{
            "degree_geometry": 2,
            "elements": [
                {"kind": "triangle",
                 "control_points": [[0,0],["1/4","0.5"],[0,1],["1/2","-1/5"],["3/4",1],["6/5","3/4"]]},
                {"kind": "quadrilateral",
                 "control_points": [[0,0],["1/4","1/2"],[0,1],["-2/3","-0.2"],["-1/2","2/3"],["-7/10","1.2"],[-1,0],["-5/4","1/2"],[-1,1]]}
            ]
        }"#
        .to_string()
    }

    #[test]
    fn parses_numbers_and_strings_exactly() {
        let mesh = MeshPair::from_json_str(&tri_json()).unwrap();
        assert_eq!(mesh.elements[0].kind, ElementKind::Triangle);
        assert_eq!(mesh.elements[0].point(0, 1), &[rat(1, 4), rat(1, 2)]);
        assert_eq!(mesh.elements[1].point(1, 0), &[rat(-2, 3), rat(-1, 5)]);
        mesh.validate().unwrap();
    }

    #[test]
    fn json_roundtrip_preserves_points() {
        let mesh = MeshPair::from_json_str(&tri_json()).unwrap();
        let text = serde_json::to_string(&mesh.to_json_value()).unwrap();
        let back = MeshPair::from_json_str(&text).unwrap();
        assert_eq!(mesh, back);
    }

    #[test]
    fn rejects_schema_violations() {
        let cases = [
            ("{}", "missing"),
            (r#"{"degree_geometry": 2, "elements": []}"#, "2 elements"),
            (
                r#"{"degree_geometry": 2, "elements": [{"kind": "pentagon", "control_points": []}, {}]}"#,
                "kind",
            ),
        ];
        for (text, _why) in cases {
            match MeshPair::from_json_str(text) {
                Err(Error::Parse(_)) => {}
                other => panic!("expected parse error for {text}: {other:?}"),
            }
        }
    }

    #[test]
    fn rejects_wrong_geometry_degree() {
        let text = tri_json().replace("\"degree_geometry\": 2", "\"degree_geometry\": 3");
        assert!(matches!(
            MeshPair::from_json_str(&text),
            Err(Error::DegreeMismatch(_))
        ));
    }

    #[test]
    fn detects_edge_mismatch() {
        let text = tri_json().replace("[0,0],[\"1/4\",\"1/2\"]", "[0,0],[\"1/3\",\"1/2\"]");
        let mesh = MeshPair::from_json_str(&text).unwrap();
        assert!(matches!(mesh.validate(), Err(Error::EdgeMismatch(_))));
    }

    #[test]
    fn detects_degenerate_edge() {
        let text = tri_json().replace("[0,1],[\"1/2\"", "[0,0],[\"1/2\"");
        // both elements need the same collapsed edge to get past the match check
        let text = text.replace("[0,1],[\"-2/3\"", "[0,0],[\"-2/3\"");
        let mesh = MeshPair::from_json_str(&text).unwrap();
        assert!(matches!(mesh.validate(), Err(Error::DegenerateEdge(_))));
    }

    #[test]
    fn edge_derivative_formulas() {
        let mesh = MeshPair::from_json_str(&tri_json()).unwrap();
        let tri = &mesh.elements[0];
        let du = tri.du_edge();
        // 2(C10 - C00) at v=0 and 2(C11 - C01) at v=1
        assert_eq!(du[0].eval(&rat_int(0)), rat_int(1));
        assert_eq!(du[0].eval(&rat_int(1)), rat_int(1));
        assert_eq!(du[1].eval(&rat_int(0)), rat(-2, 5));
        assert_eq!(du[1].eval(&rat_int(1)), rat_int(1));
        let dv = tri.dv_edge();
        assert_eq!(dv[0].eval(&rat_int(0)), rat(1, 2));
        assert_eq!(dv[1].eval(&rat_int(1)), rat_int(1));
    }

    #[test]
    fn interface_jacobian_matches_det() {
        let mesh = MeshPair::from_json_str(&tri_json()).unwrap();
        for e in &mesh.elements {
            let full = e.jacobian_det();
            let on_edge = full.restrict_u0();
            assert_eq!(on_edge, e.interface_jacobian());
        }
    }
}
