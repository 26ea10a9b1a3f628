//! Exact geometry of a left-invariant Lorentzian metric `diag(1,1,-1)` and
//! the product structure `J = diag(1,1,-1)` on a 3-dimensional Lie group:
//! Levi-Civita connection (Koszul), the covariant derivative of `J`, the Yano
//! connection, its curvature, the (generally non-symmetric) Ricci tensor and
//! its symmetrization.
//!
//! For left-invariant fields the metric coefficients are constant, so the
//! six-term Koszul formula collapses to its three bracket terms:
//! `2 eps_k G^k_ij = g([e_i,e_j], e_k) - g([e_j,e_k], e_i) + g([e_k,e_i], e_j)`.

use std::collections::BTreeMap;
use std::sync::LazyLock;

use crate::lie::{Family, FrameVector, StructureConstants};
use crate::scalar::{Rational, Scalar, ScalarError, Var};

/// Metric signs `eps_k = g(e_k, e_k)`; `e3` is the timelike direction.
pub const EPSILON: [i64; 3] = [1, 1, -1];

/// Eigenvalues of the product structure: `J e1 = e1, J e2 = e2, J e3 = -e3`.
pub const J_SIGNS: [i64; 3] = [1, 1, -1];

/// `g(x, y)` in the frame.
pub fn metric(x: &FrameVector, y: &FrameVector) -> Scalar {
    let mut acc = Scalar::zero();
    for k in 0..3 {
        let term = x.0[k].mul(&y.0[k]).scale(&Rational::from_int(EPSILON[k]));
        acc = acc.add(&term);
    }
    acc
}

/// Connection coefficients `G^k_ij`, meaning `nabla_{e_i} e_j = sum_k G^k_ij e_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConnectionTable {
    /// `gamma[i][j]` is the frame vector `nabla_{e_i} e_j`.
    pub gamma: [[FrameVector; 3]; 3],
}

impl ConnectionTable {
    pub fn zero() -> ConnectionTable {
        ConnectionTable {
            gamma: std::array::from_fn(|_| std::array::from_fn(|_| FrameVector::zero())),
        }
    }

    pub fn coeff(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.gamma[i][j].0[k]
    }

    /// `G^k_ij - G^k_ji - c^k_ij` for all indices; all-zero iff torsion-free.
    pub fn torsion_residuals(&self, c: &StructureConstants) -> Vec<Scalar> {
        let mut out = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                let br = c.bracket_basis(i, j);
                for k in 0..3 {
                    out.push(self.coeff(i, j, k).sub(self.coeff(j, i, k)).sub(&br.0[k]));
                }
            }
        }
        out
    }

    /// `eps_j G^j_ik + eps_k G^k_ij` (no sum) for all indices; all-zero iff
    /// the connection is compatible with the constant-coefficient metric.
    pub fn metric_compatibility_residuals(&self) -> Vec<Scalar> {
        let mut out = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let a = self.coeff(i, k, j).scale(&Rational::from_int(EPSILON[j]));
                    let b = self.coeff(i, j, k).scale(&Rational::from_int(EPSILON[k]));
                    out.push(a.add(&b));
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        for i in 0..3 {
            for j in 0..3 {
                map.insert(
                    format!("G[{}][{}]", i + 1, j + 1),
                    serde_json::Value::Array(
                        self.gamma[i][j]
                            .0
                            .iter()
                            .map(|s| s.to_string().into())
                            .collect(),
                    ),
                );
            }
        }
        serde_json::Value::Object(map)
    }
}

/// Curvature coefficients `R^l_ijk`, meaning `R(e_i,e_j) e_k = sum_l R^l_ijk e_l`.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureTable {
    /// `r[i][j][k]` is the frame vector `R(e_i, e_j) e_k`.
    pub r: [[[FrameVector; 3]; 3]; 3],
}

impl CurvatureTable {
    pub fn coeff(&self, i: usize, j: usize, k: usize, l: usize) -> &Scalar {
        &self.r[i][j][k].0[l]
    }
}

/// A (0,2)-tensor in the frame: `entries[i][j] = T(e_i, e_j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BilinearForm {
    pub entries: [[Scalar; 3]; 3],
}

impl BilinearForm {
    pub fn zero() -> BilinearForm {
        BilinearForm {
            entries: std::array::from_fn(|_| std::array::from_fn(|_| Scalar::zero())),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        (0..3).all(|i| (0..3).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Scalar::is_zero)
    }

    pub fn eval(&self, assignment: &BTreeMap<Var, Rational>) -> Result<BilinearForm, ScalarError> {
        let mut out = BilinearForm::zero();
        for i in 0..3 {
            for j in 0..3 {
                out.entries[i][j] = Scalar::Rat(self.entries[i][j].eval(assignment)?);
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.entries
                .iter()
                .map(|row| {
                    serde_json::Value::Array(row.iter().map(|s| s.to_string().into()).collect())
                })
                .collect(),
        )
    }
}

/// Levi-Civita connection of the left-invariant metric via the collapsed
/// Koszul formula. Defined for every bracket table.
pub fn levi_civita(c: &StructureConstants) -> ConnectionTable {
    let mut table = ConnectionTable::zero();
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                let ei = FrameVector::basis(i);
                let ej = FrameVector::basis(j);
                let ek = FrameVector::basis(k);
                let term = metric(&c.bracket_basis(i, j), &ek)
                    .sub(&metric(&c.bracket_basis(j, k), &ei))
                    .add(&metric(&c.bracket_basis(k, i), &ej));
                // 2 eps_k G^k_ij = term, eps_k = +-1
                table.gamma[i][j].0[k] =
                    term.scale(&Rational::new(EPSILON[k], 2).expect("nonzero"));
            }
        }
    }
    table
}

/// `(nabla_{e_i} J) e_j = nabla_{e_i}(J e_j) - J(nabla_{e_i} e_j)`.
///
/// `J` is frame-diagonal, so component `k` is `(s_j - s_k) G^k_ij`: the
/// derivative vanishes between frame directions in the same `J`-eigenspace.
pub fn nabla_j(lc: &ConnectionTable) -> [[FrameVector; 3]; 3] {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            FrameVector(std::array::from_fn(|k| {
                lc.coeff(i, j, k)
                    .scale(&Rational::from_int(J_SIGNS[j] - J_SIGNS[k]))
            }))
        })
    })
}

/// The Yano connection
/// `Y_X Z = LC_X Z - 1/2 (LC_Z J) J X - 1/4 [ (LC_X J) J Z - (LC_{JX} J) Z ]`
/// with `X = e_i, Z = e_j`. Note the middle correction differentiates `J`
/// along the second argument.
pub fn yano(lc: &ConnectionTable) -> ConnectionTable {
    let nj = nabla_j(lc);
    let mut table = ConnectionTable::zero();
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                let si = Rational::from_int(J_SIGNS[i]);
                let sj = Rational::from_int(J_SIGNS[j]);
                let middle = nj[j][i].0[k].scale(&si);
                let bracket_term = nj[i][j].0[k]
                    .scale(&sj)
                    .sub(&nj[i][j].0[k].scale(&si));
                table.gamma[i][j].0[k] = lc
                    .coeff(i, j, k)
                    .sub(&middle.scale(&Rational::new(1, 2).unwrap()))
                    .sub(&bracket_term.scale(&Rational::new(1, 4).unwrap()));
            }
        }
    }
    table
}

/// Curvature of an affine connection on left-invariant fields:
/// `R^l_ijk = sum_p (G^p_jk G^l_ip - G^p_ik G^l_jp) - sum_p c^p_ij G^l_pk`.
pub fn curvature(conn: &ConnectionTable, c: &StructureConstants) -> CurvatureTable {
    let mut out = CurvatureTable {
        r: std::array::from_fn(|_| {
            std::array::from_fn(|_| std::array::from_fn(|_| FrameVector::zero()))
        }),
    };
    for i in 0..3 {
        for j in 0..3 {
            let br = c.bracket_basis(i, j);
            for k in 0..3 {
                for l in 0..3 {
                    let mut acc = Scalar::zero();
                    for p in 0..3 {
                        acc = acc
                            .add(&conn.coeff(j, k, p).mul(conn.coeff(i, p, l)))
                            .sub(&conn.coeff(i, k, p).mul(conn.coeff(j, p, l)));
                        acc = acc.sub(&br.0[p].mul(conn.coeff(p, k, l)));
                    }
                    out.r[i][j][k].0[l] = acc;
                }
            }
        }
    }
    out
}

/// Ricci tensor with the classification's convention
/// `Ric(X,Y) = -g(R(X,e1)Y,e1) - g(R(X,e2)Y,e2) + g(R(X,e3)Y,e3)`.
/// With `eps = (1,1,-1)` the weights collapse to `Ric_ij = -sum_a R^a_{i a j}`.
/// The result is generally not symmetric for the Yano connection.
pub fn ricci(curv: &CurvatureTable) -> BilinearForm {
    let mut out = BilinearForm::zero();
    for i in 0..3 {
        for j in 0..3 {
            let mut acc = Scalar::zero();
            for a in 0..3 {
                acc = acc.sub(curv.coeff(i, a, j, a));
            }
            out.entries[i][j] = acc;
        }
    }
    out
}

/// Entry-wise symmetrization `(T_ij + T_ji) / 2`.
pub fn symmetrize(form: &BilinearForm) -> BilinearForm {
    let half = Rational::new(1, 2).unwrap();
    let mut out = BilinearForm::zero();
    for i in 0..3 {
        for j in 0..3 {
            out.entries[i][j] = form.entries[i][j]
                .add(&form.entries[j][i])
                .scale(&half);
        }
    }
    out
}

/// The full symbolic geometry of one family, derived once and cached.
#[derive(Debug, Clone)]
pub struct FamilyGeometry {
    pub structure: StructureConstants,
    pub levi_civita: ConnectionTable,
    pub yano: ConnectionTable,
    pub ricci: BilinearForm,
    pub ricci_symmetrized: BilinearForm,
}

fn derive_family(family: Family) -> FamilyGeometry {
    let structure = family.symbolic_table();
    let lc = levi_civita(&structure);
    let yano_conn = yano(&lc);
    let curv = curvature(&yano_conn, &structure);
    let ric = ricci(&curv);
    let ric_sym = symmetrize(&ric);
    FamilyGeometry {
        structure,
        levi_civita: lc,
        yano: yano_conn,
        ricci: ric,
        ricci_symmetrized: ric_sym,
    }
}

static CACHE: LazyLock<BTreeMap<Family, FamilyGeometry>> = LazyLock::new(|| {
    Family::ALL
        .iter()
        .map(|&f| (f, derive_family(f)))
        .collect()
});

/// Cached symbolic geometry for a family. Numeric queries substitute the
/// parameters into these tables instead of re-deriving the geometry.
pub fn family_geometry(family: Family) -> &'static FamilyGeometry {
    &CACHE[&family]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::jacobi_residual;

    fn sc(s: &str) -> Scalar {
        s.parse().unwrap()
    }

    #[test]
    fn abelian_geometry_is_flat() {
        let c = StructureConstants::abelian();
        let lc = levi_civita(&c);
        assert_eq!(lc, ConnectionTable::zero());
        let y = yano(&lc);
        assert_eq!(y, ConnectionTable::zero());
        let curv = curvature(&y, &c);
        assert!(ricci(&curv).is_zero());
        // nabla J = 0, so Yano reduces to Levi-Civita
        assert!(nabla_j(&lc).iter().flatten().all(FrameVector::is_zero));
    }

    #[test]
    fn g3_koszul_by_hand() {
        // Hand evaluation of the collapsed Koszul formula for G3.
        let g = family_geometry(Family::G3);
        let lc = &g.levi_civita;
        assert_eq!(lc.coeff(0, 1, 2), &sc("1/2*m - 1/2*n - 1/2*u"));
        assert!(lc.coeff(0, 1, 0).is_zero() && lc.coeff(0, 1, 1).is_zero());
        assert_eq!(lc.coeff(1, 0, 2), &sc("1/2*m - 1/2*n + 1/2*u"));
        // torsion identity: G^3_12 - G^3_21 = c^3_12 = -u
        assert_eq!(
            lc.coeff(0, 1, 2).sub(lc.coeff(1, 0, 2)),
            sc("-u")
        );
    }

    #[test]
    fn g3_nabla_j_spot_value() {
        let g = family_geometry(Family::G3);
        let nj = nabla_j(&g.levi_civita);
        // (nabla_{e1} J) e2 = (m - n - u) e3
        assert!(nj[0][1].0[0].is_zero() && nj[0][1].0[1].is_zero());
        assert_eq!(nj[0][1].0[2], sc("m - n - u"));
    }

    #[test]
    fn nabla_j_vanishes_within_eigenspaces() {
        for family in Family::ALL {
            let nj = nabla_j(&family_geometry(family).levi_civita);
            for i in 0..3 {
                // J fixes e1, e2: no e1/e2 component mixes into each other's slot
                assert!(nj[i][0].0[0].is_zero());
                assert!(nj[i][0].0[1].is_zero());
                assert!(nj[i][1].0[0].is_zero());
                assert!(nj[i][1].0[1].is_zero());
                assert!(nj[i][2].0[2].is_zero());
            }
        }
    }

    #[test]
    fn levi_civita_identities_all_families() {
        for family in Family::ALL {
            let g = family_geometry(family);
            assert!(jacobi_residual(&g.structure).is_zero());
            assert!(
                g.levi_civita
                    .torsion_residuals(&g.structure)
                    .iter()
                    .all(Scalar::is_zero),
                "{} torsion",
                family
            );
            assert!(
                g.levi_civita
                    .metric_compatibility_residuals()
                    .iter()
                    .all(Scalar::is_zero),
                "{} metric compatibility",
                family
            );
        }
    }

    #[test]
    fn curvature_antisymmetry() {
        for family in Family::ALL {
            let g = family_geometry(family);
            let curv = curvature(&g.yano, &g.structure);
            for i in 0..3 {
                for j in 0..3 {
                    for k in 0..3 {
                        for l in 0..3 {
                            assert_eq!(
                                curv.coeff(i, j, k, l).add(curv.coeff(j, i, k, l)),
                                Scalar::zero()
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn symmetrized_ricci_is_symmetric() {
        for family in Family::ALL {
            let g = family_geometry(family);
            assert!(g.ricci_symmetrized.is_symmetric(), "{}", family);
        }
    }

    #[test]
    fn symmetrize_idempotent_on_symmetric_input() {
        let g = family_geometry(Family::G1);
        assert_eq!(symmetrize(&g.ricci_symmetrized), g.ricci_symmetrized);
    }

    #[test]
    fn g1_symmetrized_ricci_entries() {
        let t = &family_geometry(Family::G1).ricci_symmetrized;
        assert_eq!(t.entries[0][0], sc("-m^2 - n^2"));
        assert_eq!(t.entries[1][1], sc("-m^2 - n^2"));
        assert_eq!(t.entries[2][2], Scalar::zero());
        assert_eq!(t.entries[0][1], sc("m*n"));
        assert_eq!(t.entries[0][2], sc("-1/2*m*n"));
        assert_eq!(t.entries[1][2], sc("1/2*m^2"));
    }

    #[test]
    fn g3_symmetrized_ricci_diagonal() {
        let t = &family_geometry(Family::G3).ricci_symmetrized;
        assert_eq!(t.entries[0][0], sc("-n*u"));
        assert_eq!(t.entries[1][1], sc("-m*u"));
        assert!(t.entries[2][2].is_zero());
        assert!(t.entries[0][1].is_zero());
    }

    #[test]
    fn g4_symmetrized_ricci() {
        let t = &family_geometry(Family::G4).ricci_symmetrized;
        assert_eq!(t.entries[0][0], sc("n^2 - 2*n*v - 1"));
        assert_eq!(t.entries[1][1], sc("m*n - 2*m*v - 1"));
        assert_eq!(t.entries[1][2], sc("1/2*m"));
        assert!(t.entries[0][1].is_zero() && t.entries[0][2].is_zero());
    }

    #[test]
    fn g5_symmetrized_ricci_vanishes() {
        assert!(family_geometry(Family::G5).ricci_symmetrized.is_zero());
    }

    #[test]
    fn g6_curvature_diagonal_at_point() {
        // G6 at m=1, n=0, u=0, v=1: symmetrized Ricci diag(-1, -1, 0)
        let g = family_geometry(Family::G6);
        let mut a = BTreeMap::new();
        a.insert(Var::M, Rational::from_int(1));
        a.insert(Var::N, Rational::from_int(0));
        a.insert(Var::U, Rational::from_int(0));
        a.insert(Var::V, Rational::from_int(1));
        let t = g.ricci_symmetrized.eval(&a).unwrap();
        assert_eq!(t.entries[0][0], Scalar::from_int(-1));
        assert_eq!(t.entries[1][1], Scalar::from_int(-1));
        assert!(t.entries[2][2].is_zero());
    }

    #[test]
    fn g7_symmetrized_ricci_corner() {
        let t = &family_geometry(Family::G7).ricci_symmetrized;
        assert_eq!(t.entries[0][2], sc("m*n + n*v"));
        assert_eq!(t.entries[0][0], sc("-m^2"));
    }
}
