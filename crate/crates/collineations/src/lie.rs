//! Three-dimensional Lie algebras in a pseudo-orthonormal frame
//! `(e1, e2, e3)` with `e3` timelike: structure-constant tables, the seven
//! parameter families, and the Jacobi gate that every table must pass before
//! any geometry is computed.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::{Rational, Scalar, ScalarError, Var};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LieError {
    #[error("family {family} requires parameter {var}")]
    MissingParameter { family: Family, var: Var },
    #[error("family {family} constraint violated: {constraint}")]
    ConstraintViolated { family: Family, constraint: String },
    #[error("structure constants fail the Jacobi identity (residual {residual})")]
    JacobiFailed { residual: String },
    #[error("scalar error: {0}")]
    Scalar(#[from] ScalarError),
    #[error("bad structure-constant JSON: {0}")]
    BadJson(String),
}

/// Left-invariant vector field expressed in the frame: `x1 e1 + x2 e2 + x3 e3`.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameVector(pub [Scalar; 3]);

impl FrameVector {
    pub fn zero() -> FrameVector {
        FrameVector([Scalar::zero(), Scalar::zero(), Scalar::zero()])
    }

    /// The frame vector `e_{i+1}` (zero-based index).
    pub fn basis(i: usize) -> FrameVector {
        let mut v = FrameVector::zero();
        v.0[i] = Scalar::one();
        v
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, other: &FrameVector) -> FrameVector {
        FrameVector(std::array::from_fn(|k| self.0[k].add(&other.0[k])))
    }

    pub fn sub(&self, other: &FrameVector) -> FrameVector {
        FrameVector(std::array::from_fn(|k| self.0[k].sub(&other.0[k])))
    }

    pub fn neg(&self) -> FrameVector {
        FrameVector(std::array::from_fn(|k| self.0[k].neg()))
    }

    pub fn scale(&self, s: &Scalar) -> FrameVector {
        FrameVector(std::array::from_fn(|k| self.0[k].mul(s)))
    }
}

impl fmt::Display for FrameVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}

/// The bracket table `c^k_{ij}` with `[e_i, e_j] = sum_k c^k_{ij} e_k`.
/// Only the pairs `i < j` are stored; antisymmetry is structural.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureConstants {
    pub c12: FrameVector,
    pub c13: FrameVector,
    pub c23: FrameVector,
}

impl StructureConstants {
    pub fn abelian() -> StructureConstants {
        StructureConstants {
            c12: FrameVector::zero(),
            c13: FrameVector::zero(),
            c23: FrameVector::zero(),
        }
    }

    /// `[e_i, e_j]` for zero-based frame indices, any order of `i, j`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> FrameVector {
        match (i, j) {
            (0, 1) => self.c12.clone(),
            (0, 2) => self.c13.clone(),
            (1, 2) => self.c23.clone(),
            (1, 0) => self.c12.neg(),
            (2, 0) => self.c13.neg(),
            (2, 1) => self.c23.neg(),
            _ => FrameVector::zero(),
        }
    }

    /// Substitute a rational assignment into every entry.
    pub fn eval(&self, assignment: &BTreeMap<Var, Rational>) -> Result<StructureConstants, ScalarError> {
        let ev = |v: &FrameVector| -> Result<FrameVector, ScalarError> {
            Ok(FrameVector([
                Scalar::Rat(v.0[0].eval(assignment)?),
                Scalar::Rat(v.0[1].eval(assignment)?),
                Scalar::Rat(v.0[2].eval(assignment)?),
            ]))
        };
        Ok(StructureConstants {
            c12: ev(&self.c12)?,
            c13: ev(&self.c13)?,
            c23: ev(&self.c23)?,
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let arr = |v: &FrameVector| {
            serde_json::Value::Array(v.0.iter().map(|s| s.to_string().into()).collect())
        };
        serde_json::json!({
            "c12": arr(&self.c12),
            "c13": arr(&self.c13),
            "c23": arr(&self.c23),
        })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<StructureConstants, LieError> {
        let get = |key: &str| -> Result<FrameVector, LieError> {
            let arr = value
                .get(key)
                .and_then(|v| v.as_array())
                .ok_or_else(|| LieError::BadJson(format!("missing 3-array `{}`", key)))?;
            if arr.len() != 3 {
                return Err(LieError::BadJson(format!("`{}` must have 3 entries", key)));
            }
            let mut out = FrameVector::zero();
            for (k, entry) in arr.iter().enumerate() {
                let s = entry
                    .as_str()
                    .ok_or_else(|| LieError::BadJson(format!("`{}[{}]` must be a string", key, k)))?;
                out.0[k] = s.parse()?;
            }
            Ok(out)
        };
        Ok(StructureConstants {
            c12: get("c12")?,
            c13: get("c13")?,
            c23: get("c23")?,
        })
    }
}

/// Bilinear antisymmetric extension of the frame brackets:
/// `[x, y]^k = sum_{i<j} (x^i y^j - x^j y^i) c^k_{ij}`.
pub fn bracket(x: &FrameVector, y: &FrameVector, c: &StructureConstants) -> FrameVector {
    let mut out = FrameVector::zero();
    for (i, j, table) in [(0, 1, &c.c12), (0, 2, &c.c13), (1, 2, &c.c23)] {
        let coeff = x.0[i].mul(&y.0[j]).sub(&x.0[j].mul(&y.0[i]));
        out = out.add(&table.scale(&coeff));
    }
    out
}

/// The Jacobiator `[e1,[e2,e3]] + [e2,[e3,e1]] + [e3,[e1,e2]]` — the single
/// cyclic sum for the unordered triple `{1,2,3}`. Zero iff the table defines
/// a Lie algebra.
pub fn jacobi_residual(c: &StructureConstants) -> FrameVector {
    jacobi_terms(c)
        .iter()
        .fold(FrameVector::zero(), |acc, t| acc.add(t))
}

/// The three nested brackets of the cyclic sum, in order
/// `[e1,[e2,e3]], [e2,[e3,e1]], [e3,[e1,e2]]`.
pub fn jacobi_terms(c: &StructureConstants) -> [FrameVector; 3] {
    let e: [FrameVector; 3] = std::array::from_fn(FrameVector::basis);
    [
        bracket(&e[0], &bracket(&e[1], &e[2], c), c),
        bracket(&e[1], &bracket(&e[2], &e[0], c), c),
        bracket(&e[2], &bracket(&e[0], &e[1], c), c),
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    G1,
    G2,
    G3,
    G4,
    G5,
    G6,
    G7,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::G1,
        Family::G2,
        Family::G3,
        Family::G4,
        Family::G5,
        Family::G6,
        Family::G7,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::G1 => "G1",
            Family::G2 => "G2",
            Family::G3 => "G3",
            Family::G4 => "G4",
            Family::G5 => "G5",
            Family::G6 => "G6",
            Family::G7 => "G7",
        }
    }

    pub fn from_name(s: &str) -> Option<Family> {
        Family::ALL.iter().copied().find(|f| f.name() == s)
    }

    /// The parameters the family's bracket table mentions.
    pub fn vars(self) -> &'static [Var] {
        match self {
            Family::G1 => &[Var::M, Var::N],
            Family::G2 | Family::G3 => &[Var::M, Var::N, Var::U],
            Family::G4 => &[Var::M, Var::N, Var::V],
            Family::G5 | Family::G6 | Family::G7 => &[Var::M, Var::N, Var::U, Var::V],
        }
    }

    /// The family's bracket table with parameters left symbolic.
    ///
    /// Two printed tables are normalized here. `G2` as printed fails the
    /// Jacobi identity (see [`g2_as_printed`]); the implemented table is the
    /// standard unimodular form `[e1,e2] = n e2 - u e3`,
    /// `[e1,e3] = -u e2 - n e3`, `[e2,e3] = m e1`. `G4`'s `[e1,e2]`
    /// coefficient on `e3` is taken as `n - 2v`: that reading passes Jacobi
    /// and is the only one consistent with the published Ricci tensor of the
    /// family's Yano connection.
    pub fn symbolic_table(self) -> StructureConstants {
        let m = Scalar::var(Var::M);
        let n = Scalar::var(Var::N);
        let u = Scalar::var(Var::U);
        let v = Scalar::var(Var::V);
        let z = Scalar::zero;
        let vec = |a: Scalar, b: Scalar, c: Scalar| FrameVector([a, b, c]);
        match self {
            Family::G1 => StructureConstants {
                c12: vec(m.clone(), z(), n.neg()),
                c13: vec(m.neg(), n.neg(), z()),
                c23: vec(n.clone(), m.clone(), m.clone()),
            },
            Family::G2 => StructureConstants {
                c12: vec(z(), n.clone(), u.neg()),
                c13: vec(z(), u.neg(), n.neg()),
                c23: vec(m.clone(), z(), z()),
            },
            Family::G3 => StructureConstants {
                c12: vec(z(), z(), u.neg()),
                c13: vec(z(), n.neg(), z()),
                c23: vec(m.clone(), z(), z()),
            },
            Family::G4 => StructureConstants {
                c12: vec(z(), Scalar::from_int(-1), n.sub(&v.scale(&Rational::from_int(2)))),
                c13: vec(z(), n.neg(), Scalar::one()),
                c23: vec(m.clone(), z(), z()),
            },
            Family::G5 => StructureConstants {
                c12: FrameVector::zero(),
                c13: vec(m.clone(), n.clone(), z()),
                c23: vec(u.clone(), v.clone(), z()),
            },
            Family::G6 => StructureConstants {
                c12: vec(z(), m.clone(), n.clone()),
                c13: vec(z(), u.clone(), v.clone()),
                c23: FrameVector::zero(),
            },
            Family::G7 => StructureConstants {
                c12: vec(m.neg(), n.neg(), n.neg()),
                c13: vec(m.clone(), n.clone(), n.clone()),
                c23: vec(u.clone(), v.clone(), v.clone()),
            },
        }
    }

    /// Check the family's inequality/equality constraints at a rational
    /// parameter point. Returns the violated constraint's text on failure.
    pub fn check_constraints(self, p: &BTreeMap<Var, Rational>) -> Result<(), String> {
        let get = |v: Var| p.get(&v).cloned().unwrap_or_else(Rational::zero);
        let m = get(Var::M);
        let n = get(Var::N);
        let u = get(Var::U);
        let v = get(Var::V);
        match self {
            Family::G1 => {
                if m.is_zero() {
                    return Err("m != 0".into());
                }
            }
            Family::G2 => {
                if n.is_zero() {
                    return Err("n != 0".into());
                }
            }
            Family::G3 => {}
            Family::G4 => {
                if v != Rational::from_int(1) && v != Rational::from_int(-1) {
                    return Err("v in {+1, -1}".into());
                }
            }
            Family::G5 => {
                if (&m + &v).is_zero() {
                    return Err("m + v != 0".into());
                }
                if !(&(&m * &u) + &(&n * &v)).is_zero() {
                    return Err("m*u + n*v = 0".into());
                }
            }
            Family::G6 => {
                if (&m + &v).is_zero() {
                    return Err("m + v != 0".into());
                }
                if !(&(&m * &u) - &(&n * &v)).is_zero() {
                    return Err("m*u - n*v = 0".into());
                }
            }
            Family::G7 => {
                if (&m + &v).is_zero() {
                    return Err("m + v != 0".into());
                }
                if !(&m * &u).is_zero() {
                    return Err("m*u = 0".into());
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Numeric,
    Symbolic,
}

#[derive(Debug, Clone)]
pub struct FamilySpec {
    pub family: Family,
    pub params: BTreeMap<Var, Rational>,
    pub mode: Mode,
}

/// Construct a family's structure constants.
///
/// Numeric mode substitutes the parameters and enforces the family's
/// constraints strictly; symbolic mode leaves the parameters as polynomial
/// variables (inequality constraints are undecidable there and skipped).
/// Every constructed table is passed through the Jacobi gate.
pub fn make_family(spec: &FamilySpec) -> Result<StructureConstants, LieError> {
    let table = spec.family.symbolic_table();
    match spec.mode {
        Mode::Symbolic => {
            gate_jacobi(&table)?;
            Ok(table)
        }
        Mode::Numeric => {
            for &var in spec.family.vars() {
                if !spec.params.contains_key(&var) {
                    return Err(LieError::MissingParameter {
                        family: spec.family,
                        var,
                    });
                }
            }
            spec.family
                .check_constraints(&spec.params)
                .map_err(|constraint| LieError::ConstraintViolated {
                    family: spec.family,
                    constraint,
                })?;
            let numeric = table.eval(&spec.params)?;
            gate_jacobi(&numeric)?;
            Ok(numeric)
        }
    }
}

/// Like [`make_family`] but skipping the family's parameter constraints
/// (the Jacobi gate still applies). Used to probe what happens off the
/// classification's constraint variety.
pub fn make_family_unchecked(
    family: Family,
    params: &BTreeMap<Var, Rational>,
) -> Result<StructureConstants, LieError> {
    let numeric = family.symbolic_table().eval(params)?;
    gate_jacobi(&numeric)?;
    Ok(numeric)
}

fn gate_jacobi(c: &StructureConstants) -> Result<(), LieError> {
    let residual = jacobi_residual(c);
    if residual.is_zero() {
        Ok(())
    } else {
        Err(LieError::JacobiFailed {
            residual: residual.to_string(),
        })
    }
}

/// The `G2` table exactly as printed in the source classification, with the
/// undefined symbol in `[e1,e3]`'s `e3` coefficient read as `n` and
/// `[e2,e3] = m e2`. This table fails the Jacobi identity with residual
/// `m*n e2 - m*u e3` and is retained only as a rejected fixture.
pub fn g2_as_printed() -> StructureConstants {
    let m = Scalar::var(Var::M);
    let n = Scalar::var(Var::N);
    let u = Scalar::var(Var::U);
    let z = Scalar::zero;
    StructureConstants {
        c12: FrameVector([z(), n.clone(), u.neg()]),
        c13: FrameVector([z(), u.neg(), n.neg()]),
        c23: FrameVector([z(), m.clone(), z()]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn params(pairs: &[(Var, &str)]) -> BTreeMap<Var, Rational> {
        pairs.iter().map(|&(v, s)| (v, rat(s))).collect()
    }

    #[test]
    fn g3_frame_bracket() {
        let c = make_family(&FamilySpec {
            family: Family::G3,
            params: BTreeMap::new(),
            mode: Mode::Symbolic,
        })
        .unwrap();
        let b = bracket(&FrameVector::basis(1), &FrameVector::basis(2), &c);
        assert_eq!(b.0[0], Scalar::var(Var::M));
        assert!(b.0[1].is_zero() && b.0[2].is_zero());
    }

    #[test]
    fn bracket_of_x_with_itself_vanishes() {
        let c = Family::G7.symbolic_table();
        let x = FrameVector([
            Scalar::var(Var::M),
            Scalar::from_int(3),
            Scalar::var(Var::U),
        ]);
        assert!(bracket(&x, &x, &c).is_zero());
    }

    #[test]
    fn g1_numeric_bracket() {
        let c = make_family(&FamilySpec {
            family: Family::G1,
            params: params(&[(Var::M, "1"), (Var::N, "2")]),
            mode: Mode::Numeric,
        })
        .unwrap();
        let b = bracket(&FrameVector::basis(0), &FrameVector::basis(1), &c);
        assert_eq!(b.0[0], Scalar::from_int(1));
        assert!(b.0[1].is_zero());
        assert_eq!(b.0[2], Scalar::from_int(-2));
    }

    #[test]
    fn all_families_pass_jacobi_symbolically() {
        for family in Family::ALL {
            let c = family.symbolic_table();
            assert!(
                jacobi_residual(&c).is_zero(),
                "{} fails Jacobi",
                family
            );
        }
    }

    #[test]
    fn g2_as_printed_fails_jacobi() {
        let residual = jacobi_residual(&g2_as_printed());
        assert!(residual.0[0].is_zero());
        assert_eq!(residual.0[1].to_string(), "m*n");
        assert_eq!(residual.0[2].to_string(), "-m*u");
    }

    #[test]
    fn abelian_passes_jacobi() {
        assert!(jacobi_residual(&StructureConstants::abelian()).is_zero());
    }

    #[test]
    fn g5_constraint_rejection() {
        // m+v = 0 violates the family constraint even though m*u + n*v = 0.
        let err = make_family(&FamilySpec {
            family: Family::G5,
            params: params(&[(Var::M, "1"), (Var::N, "1"), (Var::U, "1"), (Var::V, "-1")]),
            mode: Mode::Numeric,
        })
        .unwrap_err();
        assert!(matches!(err, LieError::ConstraintViolated { .. }));
        assert!(err.to_string().contains("m + v != 0"));
    }

    #[test]
    fn g4_table_at_point() {
        let c = make_family(&FamilySpec {
            family: Family::G4,
            params: params(&[(Var::M, "1"), (Var::N, "0"), (Var::V, "1")]),
            mode: Mode::Numeric,
        })
        .unwrap();
        // [e1,e2] = -e2 - 2 e3 under the (n - 2v) reading, [e1,e3] = e3, [e2,e3] = e1
        assert_eq!(c.c12.0[1], Scalar::from_int(-1));
        assert_eq!(c.c12.0[2], Scalar::from_int(-2));
        assert_eq!(c.c13.0[2], Scalar::from_int(1));
        assert_eq!(c.c23.0[0], Scalar::from_int(1));
    }

    #[test]
    fn json_round_trip() {
        let c = Family::G6.symbolic_table();
        let json = c.to_json();
        let back = StructureConstants::from_json(&json).unwrap();
        assert_eq!(c, back);
    }
}
