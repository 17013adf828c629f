//! Piecewise-linear membership functions.

use serde::{Deserialize, Serialize};

use super::FuzzyError;

/// A triangular or trapezoidal membership function.
///
/// Breakpoints are validated on construction, so evaluation never fails.
/// Degenerate edges are allowed (`a == b` gives a vertical rising edge),
/// which is how shouldered terms at the ends of a universe are expressed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MembershipDoc", into = "MembershipDoc")]
pub enum MembershipFunction {
    Triangular { a: f64, b: f64, c: f64 },
    Trapezoidal { a: f64, b: f64, c: f64, d: f64 },
}

impl MembershipFunction {
    pub fn triangular(a: f64, b: f64, c: f64) -> Result<Self, FuzzyError> {
        check_breakpoints(&[a, b, c])?;
        Ok(Self::Triangular { a, b, c })
    }

    pub fn trapezoidal(a: f64, b: f64, c: f64, d: f64) -> Result<Self, FuzzyError> {
        check_breakpoints(&[a, b, c, d])?;
        Ok(Self::Trapezoidal { a, b, c, d })
    }

    /// Breakpoints in order.
    pub fn breakpoints(&self) -> Vec<f64> {
        match *self {
            Self::Triangular { a, b, c } => vec![a, b, c],
            Self::Trapezoidal { a, b, c, d } => vec![a, b, c, d],
        }
    }

    /// Closed support `[first breakpoint, last breakpoint]`.
    pub fn support(&self) -> (f64, f64) {
        match *self {
            Self::Triangular { a, c, .. } => (a, c),
            Self::Trapezoidal { a, d, .. } => (a, d),
        }
    }

    /// Degree of membership of `x`, always in `[0, 1]`.
    pub fn degree(&self, x: f64) -> f64 {
        // A triangle is a trapezoid with a single-point plateau.
        let (a, b, c, d) = match *self {
            Self::Triangular { a, b, c } => (a, b, b, c),
            Self::Trapezoidal { a, b, c, d } => (a, b, c, d),
        };
        if x >= b && x <= c {
            1.0
        } else if x <= a || x >= d {
            0.0
        } else if x < b {
            ((x - a) / (b - a)).clamp(0.0, 1.0)
        } else {
            ((d - x) / (d - c)).clamp(0.0, 1.0)
        }
    }

    /// The same function with every breakpoint moved by `delta`.
    pub fn translated(&self, delta: f64) -> Self {
        match *self {
            Self::Triangular { a, b, c } => Self::Triangular {
                a: a + delta,
                b: b + delta,
                c: c + delta,
            },
            Self::Trapezoidal { a, b, c, d } => Self::Trapezoidal {
                a: a + delta,
                b: b + delta,
                c: c + delta,
                d: d + delta,
            },
        }
    }
}

fn check_breakpoints(points: &[f64]) -> Result<(), FuzzyError> {
    if points.iter().any(|p| !p.is_finite()) {
        return Err(FuzzyError::Breakpoints(format!(
            "non-finite breakpoint in {points:?}"
        )));
    }
    if points.windows(2).any(|w| w[0] > w[1]) {
        return Err(FuzzyError::Breakpoints(format!(
            "breakpoints {points:?} are not non-decreasing"
        )));
    }
    Ok(())
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum ShapeKind {
    Triangular,
    Trapezoidal,
}

/// Wire form: `{"kind": "triangular", "points": [a, b, c]}`.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MembershipDoc {
    kind: ShapeKind,
    points: Vec<f64>,
}

impl TryFrom<MembershipDoc> for MembershipFunction {
    type Error = FuzzyError;

    fn try_from(doc: MembershipDoc) -> Result<Self, Self::Error> {
        match (doc.kind, doc.points.as_slice()) {
            (ShapeKind::Triangular, &[a, b, c]) => Self::triangular(a, b, c),
            (ShapeKind::Trapezoidal, &[a, b, c, d]) => Self::trapezoidal(a, b, c, d),
            (ShapeKind::Triangular, p) => Err(FuzzyError::Breakpoints(format!(
                "triangular needs 3 breakpoints, got {}",
                p.len()
            ))),
            (ShapeKind::Trapezoidal, p) => Err(FuzzyError::Breakpoints(format!(
                "trapezoidal needs 4 breakpoints, got {}",
                p.len()
            ))),
        }
    }
}

impl From<MembershipFunction> for MembershipDoc {
    fn from(mf: MembershipFunction) -> Self {
        let kind = match mf {
            MembershipFunction::Triangular { .. } => ShapeKind::Triangular,
            MembershipFunction::Trapezoidal { .. } => ShapeKind::Trapezoidal,
        };
        MembershipDoc {
            kind,
            points: mf.breakpoints(),
        }
    }
}
