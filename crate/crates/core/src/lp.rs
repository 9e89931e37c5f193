//! Thin wrappers over `minilp` for the feasibility and optimization problems
//! the geometry kernel needs.

use minilp::{ComparisonOp, OptimizationDirection, Problem};

use crate::linalg::Vector;

/// Outcome of a linear program `max c·x s.t. A x ≤ b`.
#[derive(Clone, Debug)]
pub enum LpOutcome {
    Optimal { value: f64, x: Vector },
    Infeasible,
    Unbounded,
}

/// Maximize `c·x` subject to `rows[i]·x ≤ rhs[i]` and `eqs[i]·x = eq_rhs[i]`.
pub fn maximize(c: &[f64], rows: &[Vec<f64>], rhs: &[f64], eqs: &[Vec<f64>], eq_rhs: &[f64]) -> LpOutcome {
    let dim = c.len();
    let mut p = Problem::new(OptimizationDirection::Maximize);
    let vars: Vec<_> = c.iter().map(|&ci| p.add_var(ci, (f64::NEG_INFINITY, f64::INFINITY))).collect();
    for (a, b) in rows.iter().zip(rhs) {
        p.add_constraint(terms(&vars, a), ComparisonOp::Le, *b);
    }
    for (a, b) in eqs.iter().zip(eq_rhs) {
        p.add_constraint(terms(&vars, a), ComparisonOp::Eq, *b);
    }
    match p.solve() {
        // minilp may report an unbounded objective as an infinite optimum.
        Ok(sol) if !sol.objective().is_finite() => LpOutcome::Unbounded,
        Ok(sol) => LpOutcome::Optimal {
            value: sol.objective(),
            x: Vector::from_iterator(dim, vars.iter().map(|v| sol[*v])),
        },
        Err(minilp::Error::Infeasible) => LpOutcome::Infeasible,
        Err(minilp::Error::Unbounded) => LpOutcome::Unbounded,
    }
}

fn terms(vars: &[minilp::Variable], a: &[f64]) -> Vec<(minilp::Variable, f64)> {
    vars.iter().zip(a).filter(|(_, c)| **c != 0.0).map(|(v, c)| (*v, *c)).collect()
}

/// Largest `t ≤ cap` such that some `x` satisfies `rows[i]·x + t·‖rows[i]‖ ≤ rhs[i]`,
/// optionally restricted to the box `|x_k − center_k| ≤ radius`.
///
/// For a polyhedron this is the inradius of the Chebyshev ball (capped), and a
/// negative value measures how far the system is from feasible.
pub fn chebyshev_margin(rows: &[Vec<f64>], rhs: &[f64], dim: usize, cap: f64, ball: Option<(&Vector, f64)>) -> (f64, Vector) {
    let mut p = Problem::new(OptimizationDirection::Maximize);
    let vars: Vec<_> = (0..dim)
        .map(|k| match ball {
            Some((c, r)) => p.add_var(0.0, (c[k] - r, c[k] + r)),
            None => p.add_var(0.0, (f64::NEG_INFINITY, f64::INFINITY)),
        })
        .collect();
    let t = p.add_var(1.0, (f64::NEG_INFINITY, cap));
    for (a, b) in rows.iter().zip(rhs) {
        let norm = a.iter().map(|x| x * x).sum::<f64>().sqrt();
        let mut lhs = terms(&vars, a);
        lhs.push((t, norm));
        p.add_constraint(lhs, ComparisonOp::Le, *b);
    }
    match p.solve() {
        Ok(sol) => (sol[t], Vector::from_iterator(dim, vars.iter().map(|v| sol[*v]))),
        // Only possible with an empty variable box, which callers never pass.
        Err(_) => (f64::NEG_INFINITY, Vector::zeros(dim)),
    }
}

/// Is `{x : rows·x ≤ rhs}` (assumed nonempty) bounded?
///
/// The recession cone `{v : rows·v ≤ 0}` is trivial iff the normals
/// positively span the space; checked coordinate-wise by maximizing `±e_k·v`
/// over the recession cone intersected with a unit box. Returns an escape
/// direction when unbounded.
pub fn recession_direction(rows: &[Vec<f64>], dim: usize) -> Option<Vector> {
    for k in 0..dim {
        for sign in [1.0, -1.0] {
            let mut p = Problem::new(OptimizationDirection::Maximize);
            let vars: Vec<_> = (0..dim)
                .map(|i| p.add_var(if i == k { sign } else { 0.0 }, (-1.0, 1.0)))
                .collect();
            for a in rows {
                p.add_constraint(terms(&vars, a), ComparisonOp::Le, 0.0);
            }
            if let Ok(sol) = p.solve() {
                if sol.objective() > 1e-7 {
                    return Some(Vector::from_iterator(dim, vars.iter().map(|v| sol[*v])));
                }
            }
        }
    }
    None
}
