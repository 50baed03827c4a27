//! Built-in example meshes covering every construction branch.
//!
//! All ten meshes share the same triangle/quadrilateral pair and differ only
//! in a handful of control points: the second edge point `C1`, the triangle
//! point adjacent to the edge start, and the matching quadrilateral point.
//! Varying those walks the construction through every edge shape and branch.

use crate::error::{Error, Result};
use crate::geometry::{Element, ElementKind, MeshPair};
use crate::rat::{rat, rat_int, Rational};

/// Names accepted by [`example_mesh`], in presentation order.
pub const EXAMPLE_NAMES: [&str; 10] = [
    "ex1-generic",
    "ex1-special-c",
    "ex1-special-c1",
    "ex1-gamma-quadratic",
    "ex1-gamma-beta",
    "ex2-generic",
    "ex2-case2",
    "ex2-choice3",
    "ex2-choice4",
    "ex3",
];

fn pt(x: Rational, y: Rational) -> [Rational; 2] {
    [x, y]
}

/// The shared two-element mesh, parameterized by the free control points.
///
/// `c1` is the middle interface control point; `(x1, y1)` sits in the
/// triangle next to the edge start; `(x2, y2)` is its counterpart in the
/// quadrilateral.
pub fn pair_mesh(
    x1: Rational,
    y1: Rational,
    x2: Rational,
    y2: Rational,
    c1: [Rational; 2],
) -> MeshPair {
    let tri = Element::new(
        ElementKind::Triangle,
        vec![
            pt(rat_int(0), rat_int(0)),
            c1.clone(),
            pt(rat_int(0), rat_int(1)),
            pt(x1, y1),
            pt(rat(3, 4), rat_int(1)),
            pt(rat(6, 5), rat(3, 4)),
        ],
    )
    .expect("triangle net has 6 points");
    let quad = Element::new(
        ElementKind::Quadrilateral,
        vec![
            pt(rat_int(0), rat_int(0)),
            c1,
            pt(rat_int(0), rat_int(1)),
            pt(rat(-2, 3), rat(-1, 5)),
            pt(x2, y2),
            pt(rat(-7, 10), rat(6, 5)),
            pt(rat_int(-1), rat_int(0)),
            pt(rat(-5, 4), rat(1, 2)),
            pt(rat_int(-1), rat_int(1)),
        ],
    )
    .expect("quadrilateral net has 9 points");
    MeshPair::new(tri, quad)
}

/// Quadrilateral point `(x2, y2)` that forces a quadratic gluing gcd for a
/// given triangle point `(x1, y1)`.
pub fn matched_quad_point(x1: &Rational, y1: &Rational) -> (Rational, Rational) {
    let den = rat_int(60) * (rat_int(2) * x1 - y1);
    let x2 = (rat_int(24) * x1 * y1 - rat_int(48) * x1 * x1 + rat_int(54) * x1
        - rat_int(44) * y1
        - rat_int(17))
        / &den;
    let y2 = (rat_int(-48) * x1 * y1 + rat_int(84) * x1 + rat_int(24) * y1 * y1
        - rat_int(8) * y1
        - rat_int(17))
        / &den;
    (x2, y2)
}

/// Builds one of the named example meshes.
pub fn example_mesh(name: &str) -> Result<MeshPair> {
    let c1_quarter = [rat(1, 4), rat(1, 2)];
    let c1_third = [rat_int(0), rat(1, 3)];
    let mesh = match name {
        "ex1-generic" => pair_mesh(rat(1, 2), rat(-1, 5), rat(-1, 2), rat(2, 3), c1_quarter),
        "ex1-special-c" => pair_mesh(
            rat(9, 10),
            rat(14, 25),
            rat(-1, 2),
            rat(41, 100),
            c1_quarter,
        ),
        "ex1-special-c1" => pair_mesh(
            rat(9, 10),
            rat(14, 25),
            rat(-19, 45),
            rat(397, 900),
            c1_quarter,
        ),
        "ex1-gamma-quadratic" => {
            let (x1, y1) = (rat(1, 2), rat(-1, 5));
            let (x2, y2) = matched_quad_point(&x1, &y1);
            pair_mesh(x1, y1, x2, y2, c1_quarter)
        }
        "ex1-gamma-beta" => {
            let (x1, y1) = (rat(7, 10), rat(-1, 10));
            let (x2, y2) = matched_quad_point(&x1, &y1);
            pair_mesh(x1, y1, x2, y2, c1_quarter)
        }
        "ex2-generic" => pair_mesh(rat(1, 2), rat(-1, 5), rat(-1, 2), rat(2, 3), c1_third),
        "ex2-case2" => pair_mesh(rat(1, 2), rat(-1, 5), rat(-17, 20), rat(197, 900), c1_third),
        "ex2-choice3" => pair_mesh(rat(3, 8), rat(-1, 5), rat(-101, 120), rat(2, 3), c1_third),
        "ex2-choice4" => pair_mesh(rat(3, 8), rat(1, 3), rat(-101, 120), rat(11, 60), c1_third),
        "ex3" => pair_mesh(
            rat(1, 2),
            rat(-1, 5),
            rat(-1, 2),
            rat(2, 3),
            [rat_int(0), rat(1, 2)],
        ),
        other => {
            return Err(Error::Parse(format!(
                "unknown example {other:?}; expected one of {}",
                EXAMPLE_NAMES.join(", ")
            )))
        }
    };
    Ok(mesh)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_examples_validate() {
        for name in EXAMPLE_NAMES {
            let mesh = example_mesh(name).unwrap();
            mesh.validate().unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }

    #[test]
    fn unknown_example_is_a_parse_error() {
        let err = example_mesh("ex99").unwrap_err();
        assert!(matches!(err, Error::Parse(_)));
    }

    #[test]
    fn matched_point_reproduces_corpus_values() {
        let (x2, y2) = matched_quad_point(&rat(1, 2), &rat(-1, 5));
        assert_eq!(x2, rat(11, 180));
        assert_eq!(y2, rat(809, 1800));
        let (x2, y2) = matched_quad_point(&rat(7, 10), &rat(-1, 10));
        assert_eq!(x2, rat_int(0));
        assert_eq!(y2, rat(77, 150));
    }
}
