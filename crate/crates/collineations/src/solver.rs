//! Classification of left-invariant Ricci collineations: vector fields
//! `xi = a e1 + b e2 + c e3` with constant frame coefficients such that
//! `L_xi T = 0` for the symmetrized Ricci tensor `T`.
//!
//! For a left-invariant (0,2)-tensor with constant frame coefficients the Lie
//! derivative reduces to `(L_xi T)(e_i, e_j) = -T([xi,e_i], e_j) - T(e_i, [xi,e_j])`.
//! The condition `L_xi T = 0` is linear in `(a,b,c)`; listing the six
//! independent symmetric components gives a 6x3 linear system whose exact
//! nullspace is the collineation algebra.

use rand::Rng;
use thiserror::Error;

use crate::field::Field;
use crate::geometry::BilinearForm;
use crate::lie::{bracket, FrameVector, StructureConstants};
use crate::scalar::{Rational, Scalar};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolverError {
    #[error("tensor entry T[{i}][{j}] = {entry} is not constant; substitute parameters first")]
    NonConstant { i: usize, j: usize, entry: String },
}

/// Row order of the 6x3 system: the independent components of a symmetric
/// (0,2)-tensor, upper triangle by rows.
pub const ROW_PAIRS: [(usize, usize); 6] = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)];

/// Symbolic `L_xi T` for constant-coefficient `xi` and `T`.
pub fn lie_derivative(
    xi: &FrameVector,
    t: &BilinearForm,
    c: &StructureConstants,
) -> BilinearForm {
    let apply = |x: &FrameVector, y: &FrameVector| {
        let mut acc = Scalar::zero();
        for i in 0..3 {
            for j in 0..3 {
                acc = acc.add(&x.0[i].mul(&y.0[j]).mul(&t.entries[i][j]));
            }
        }
        acc
    };
    let mut out = BilinearForm::zero();
    for i in 0..3 {
        for j in 0..3 {
            let ei = FrameVector::basis(i);
            let ej = FrameVector::basis(j);
            out.entries[i][j] = apply(&bracket(xi, &ei, c), &ej)
                .add(&apply(&ei, &bracket(xi, &ej, c)))
                .neg();
        }
    }
    out
}

/// Structure constants with entries in an arbitrary field: `c[i][j]` is the
/// coefficient vector of `[e_i, e_j]`.
#[derive(Debug, Clone, PartialEq)]
pub struct NumericStructure<F: Field> {
    pub c: [[[F; 3]; 3]; 3],
}

impl<F: Field> NumericStructure<F> {
    pub fn from_table(
        table: &StructureConstants,
        assignment: &std::collections::BTreeMap<crate::scalar::Var, F>,
    ) -> Result<NumericStructure<F>, crate::scalar::ScalarError> {
        let mut c: [[[F; 3]; 3]; 3] =
            std::array::from_fn(|_| std::array::from_fn(|_| std::array::from_fn(|_| F::zero())));
        for i in 0..3 {
            for j in 0..3 {
                let br = table.bracket_basis(i, j);
                for k in 0..3 {
                    c[i][j][k] = br.0[k].eval_in(assignment)?;
                }
            }
        }
        Ok(NumericStructure { c })
    }
}

/// A numeric (0,2)-tensor over a field.
pub type NumericForm<F> = [[F; 3]; 3];

/// Convert a fully evaluated [`BilinearForm`] into rational entries.
pub fn numeric_form(t: &BilinearForm) -> Result<NumericForm<Rational>, SolverError> {
    let mut out: NumericForm<Rational> =
        std::array::from_fn(|_| std::array::from_fn(|_| Rational::zero()));
    for i in 0..3 {
        for j in 0..3 {
            match &t.entries[i][j] {
                Scalar::Rat(r) => out[i][j] = r.clone(),
                other => {
                    return Err(SolverError::NonConstant {
                        i: i + 1,
                        j: j + 1,
                        entry: other.to_string(),
                    })
                }
            }
        }
    }
    Ok(out)
}

/// `(L_xi T)(e_i, e_j)` over a field, for `xi` given by frame coefficients.
pub fn lie_derivative_numeric<F: Field>(
    xi: &[F; 3],
    t: &NumericForm<F>,
    ns: &NumericStructure<F>,
) -> NumericForm<F> {
    // [xi, e_i] = sum_k xi_k [e_k, e_i]
    let ad = |i: usize| -> [F; 3] {
        std::array::from_fn(|p| {
            let mut acc = F::zero();
            for k in 0..3 {
                acc = acc.add(&xi[k].mul(&ns.c[k][i][p]));
            }
            acc
        })
    };
    let mut out: NumericForm<F> =
        std::array::from_fn(|_| std::array::from_fn(|_| F::zero()));
    for i in 0..3 {
        let adi = ad(i);
        for j in 0..3 {
            let adj = ad(j);
            let mut acc = F::zero();
            for p in 0..3 {
                acc = acc.add(&adi[p].mul(&t[p][j]));
                acc = acc.add(&adj[p].mul(&t[i][p]));
            }
            out[i][j] = acc.neg();
        }
    }
    out
}

/// The 6x3 coefficient matrix: row `(i,j)` from [`ROW_PAIRS`], column `k`
/// holding `(L_{e_k} T)(e_i, e_j)`.
pub fn collineation_system<F: Field>(
    t: &NumericForm<F>,
    ns: &NumericStructure<F>,
) -> [[F; 3]; 6] {
    let derivs: [NumericForm<F>; 3] = std::array::from_fn(|k| {
        let ek: [F; 3] = std::array::from_fn(|p| if p == k { F::one() } else { F::zero() });
        lie_derivative_numeric(&ek, t, ns)
    });
    std::array::from_fn(|row| {
        let (i, j) = ROW_PAIRS[row];
        std::array::from_fn(|k| derivs[k][i][j].clone())
    })
}

/// Reduced row echelon form in place; returns the pivot columns. Pivoting is
/// deterministic: scan rows top-down, take the first nonzero entry in the
/// current column.
pub fn rref<F: Field>(m: &mut Vec<Vec<F>>) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("nonzero pivot");
        for x in m[r].iter_mut() {
            *x = x.mul(&inv);
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                for cc in 0..cols {
                    let sub = factor.mul(&m[r][cc]);
                    m[i][cc] = m[i][cc].sub(&sub);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

/// Exact nullspace basis of a matrix: one vector per free column, with the
/// free variable set to 1, in ascending column order.
pub fn nullspace<F: Field>(matrix: &[[F; 3]; 6]) -> Vec<[F; 3]> {
    let mut m: Vec<Vec<F>> = matrix.iter().map(|row| row.to_vec()).collect();
    let pivots = rref(&mut m);
    let mut basis = Vec::new();
    for free in 0..3 {
        if pivots.contains(&free) {
            continue;
        }
        let mut vec: [F; 3] = std::array::from_fn(|_| F::zero());
        vec[free] = F::one();
        for (row, &pc) in pivots.iter().enumerate() {
            vec[pc] = m[row][free].neg();
        }
        basis.push(vec);
    }
    basis
}

/// The classified collineation algebra of one numeric tensor.
#[derive(Debug, Clone, PartialEq)]
pub struct CollineationBasis<F: Field> {
    pub basis: Vec<[F; 3]>,
}

impl<F: Field> CollineationBasis<F> {
    pub fn solve(t: &NumericForm<F>, ns: &NumericStructure<F>) -> CollineationBasis<F> {
        CollineationBasis {
            basis: nullspace(&collineation_system(t, ns)),
        }
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "dimension": self.dimension(),
            "basis": self.basis.iter().map(|v| {
                serde_json::Value::Array(v.iter().map(|x| x.to_string().into()).collect())
            }).collect::<Vec<_>>(),
        })
    }

    /// Is `xi` in the span of the basis?
    pub fn contains(&self, xi: &[F; 3]) -> bool {
        let mut without: Vec<Vec<F>> = self.basis.iter().map(|v| v.to_vec()).collect();
        let mut with = without.clone();
        with.push(xi.to_vec());
        rref(&mut with).len() == rref(&mut without).len()
    }
}

/// Row-reduced normal form of a span, for comparing two bases of the same
/// subspace independent of presentation.
pub fn span_normal_form<F: Field>(basis: &[[F; 3]]) -> Vec<Vec<F>> {
    let mut m: Vec<Vec<F>> = basis.iter().map(|v| v.to_vec()).collect();
    rref(&mut m);
    m.retain(|row| row.iter().any(|x| !x.is_zero()));
    m
}

/// Independent confirmation of a solved basis, by direct substitution rather
/// than by the elimination that produced it:
///
/// 1. soundness: `L_xi T = 0` for every basis vector;
/// 2. maximality: `rank(system) + dim(basis) = 3`;
/// 3. separation: random vectors outside the span have `L_xi T != 0`.
pub fn oracle_check<F: Field, R: Rng>(
    t: &NumericForm<F>,
    ns: &NumericStructure<F>,
    sol: &CollineationBasis<F>,
    rng: &mut R,
    random_trials: usize,
) -> Result<(), String> {
    for (idx, xi) in sol.basis.iter().enumerate() {
        let d = lie_derivative_numeric(xi, t, ns);
        if d.iter().flatten().any(|x| !x.is_zero()) {
            return Err(format!("basis vector {idx} is not a collineation"));
        }
    }
    if !sol.basis.is_empty() {
        for _ in 0..random_trials {
            let mut xi: [F; 3] = std::array::from_fn(|_| F::zero());
            for basis_vec in &sol.basis {
                let coeff = F::from_rational(
                    &Rational::new(rng.gen_range(-9i64..=9), rng.gen_range(1i64..=9))
                        .expect("nonzero denominator"),
                );
                for k in 0..3 {
                    xi[k] = xi[k].add(&coeff.mul(&basis_vec[k]));
                }
            }
            let d = lie_derivative_numeric(&xi, t, ns);
            if d.iter().flatten().any(|x| !x.is_zero()) {
                return Err(format!(
                    "combination ({}, {}, {}) of basis vectors is not a collineation",
                    xi[0], xi[1], xi[2]
                ));
            }
        }
    }
    let system = collineation_system(t, ns);
    let rank = {
        let mut m: Vec<Vec<F>> = system.iter().map(|r| r.to_vec()).collect();
        rref(&mut m).len()
    };
    if rank + sol.dimension() != 3 {
        return Err(format!(
            "rank {rank} + dimension {} != 3: basis is not maximal",
            sol.dimension()
        ));
    }
    if sol.dimension() == 3 {
        return Ok(()); // every vector is in the span; nothing to separate
    }
    for _ in 0..random_trials {
        let xi: [F; 3] = std::array::from_fn(|_| {
            let num = rng.gen_range(-9i64..=9);
            let den = rng.gen_range(1i64..=9);
            F::from_rational(&Rational::new(num, den).expect("nonzero denominator"))
        });
        if sol.contains(&xi) {
            continue;
        }
        let d = lie_derivative_numeric(&xi, t, ns);
        if d.iter().flatten().all(|x| x.is_zero()) {
            return Err(format!(
                "vector outside the span annihilates the tensor: ({}, {}, {})",
                xi[0], xi[1], xi[2]
            ));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::family_geometry;
    use crate::lie::{make_family, Family, FamilySpec, Mode};
    use crate::scalar::Var;
    use rand::SeedableRng;
    use std::collections::BTreeMap;

    fn rational_assignment(pairs: &[(Var, i64)]) -> BTreeMap<Var, Rational> {
        pairs
            .iter()
            .map(|&(v, x)| (v, Rational::from_int(x)))
            .collect()
    }

    fn solve_at(
        family: Family,
        pairs: &[(Var, i64)],
    ) -> (
        CollineationBasis<Rational>,
        NumericForm<Rational>,
        NumericStructure<Rational>,
    ) {
        let assignment = rational_assignment(pairs);
        let geo = family_geometry(family);
        let t = numeric_form(&geo.ricci_symmetrized.eval(&assignment).unwrap()).unwrap();
        let ns = NumericStructure::from_table(&geo.structure, &assignment).unwrap();
        (CollineationBasis::solve(&t, &ns), t, ns)
    }

    #[test]
    fn symbolic_and_numeric_lie_derivative_agree() {
        let geo = family_geometry(Family::G1);
        let assignment = rational_assignment(&[(Var::M, 2), (Var::N, 3)]);
        let sym = lie_derivative(
            &FrameVector::basis(1),
            &geo.ricci_symmetrized,
            &geo.structure,
        );
        let t = numeric_form(&geo.ricci_symmetrized.eval(&assignment).unwrap()).unwrap();
        let ns = NumericStructure::from_table(&geo.structure, &assignment).unwrap();
        let e2 = [Rational::zero(), Rational::from_int(1), Rational::zero()];
        let num = lie_derivative_numeric(&e2, &t, &ns);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(sym.entries[i][j].eval(&assignment).unwrap(), num[i][j]);
            }
        }
    }

    #[test]
    fn g1_generic_has_no_collineations() {
        let (sol, t, ns) = solve_at(Family::G1, &[(Var::M, 1), (Var::N, 2)]);
        assert_eq!(sol.dimension(), 0);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        oracle_check(&t, &ns, &sol, &mut rng, 20).unwrap();
    }

    #[test]
    fn g3_one_parameter_zero_gives_three_dimensions() {
        // With u = 0 the symmetrized Ricci tensor of G3 vanishes identically,
        // so every left-invariant field is a collineation.
        let (sol, t, ns) = solve_at(Family::G3, &[(Var::M, 2), (Var::N, 5), (Var::U, 0)]);
        assert_eq!(sol.dimension(), 3);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        oracle_check(&t, &ns, &sol, &mut rng, 20).unwrap();
    }

    #[test]
    fn g3_generic_collineations_are_spanned_by_e3() {
        let (sol, t, ns) = solve_at(Family::G3, &[(Var::M, 1), (Var::N, 2), (Var::U, 3)]);
        assert_eq!(sol.dimension(), 1);
        assert_eq!(
            sol.basis[0],
            [Rational::zero(), Rational::zero(), Rational::from_int(1)]
        );
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        oracle_check(&t, &ns, &sol, &mut rng, 20).unwrap();
    }

    #[test]
    fn g6_ricci_flat_case_full_algebra() {
        // G6 with m = 0, n = 0, v != 0 is Ricci-flat for the Yano connection.
        let assignment = rational_assignment(&[(Var::M, 0), (Var::N, 0), (Var::U, 0), (Var::V, 2)]);
        let numeric = make_family(&FamilySpec {
            family: Family::G6,
            params: assignment.clone(),
            mode: Mode::Numeric,
        })
        .unwrap();
        let geo = family_geometry(Family::G6);
        let t = numeric_form(&geo.ricci_symmetrized.eval(&assignment).unwrap()).unwrap();
        assert!(t.iter().flatten().all(Rational::is_zero));
        let ns = NumericStructure::from_table(&numeric, &assignment).unwrap();
        let sol = CollineationBasis::solve(&t, &ns);
        assert_eq!(sol.dimension(), 3);
    }

    #[test]
    fn numeric_form_rejects_symbolic_entries() {
        let geo = family_geometry(Family::G1);
        assert!(matches!(
            numeric_form(&geo.ricci_symmetrized),
            Err(SolverError::NonConstant { .. })
        ));
    }

    #[test]
    fn rref_and_nullspace_consistency() {
        // a rank-2 system with known kernel (1, -2, 1)
        let one = |x: i64| Rational::from_int(x);
        let m: [[Rational; 3]; 6] = [
            [one(1), one(0), one(-1)],
            [one(0), one(1), one(2)],
            [one(1), one(1), one(1)],
            [one(2), one(1), one(0)],
            [one(0), one(0), one(0)],
            [one(1), one(2), one(3)],
        ];
        let ns = nullspace(&m);
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0], [one(1), one(-2), one(1)]);
    }

    #[test]
    fn span_normal_form_ignores_presentation() {
        let one = |x: i64| Rational::from_int(x);
        let a = vec![[one(1), one(1), one(0)], [one(0), one(0), one(1)]];
        let b = vec![[one(2), one(2), one(6)], [one(0), one(0), one(-3)]];
        assert_eq!(span_normal_form(&a), span_normal_form(&b));
    }
}
