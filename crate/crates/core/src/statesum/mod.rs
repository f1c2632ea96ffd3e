//! The quantum trace engine.
//!
//! `trace_simple` evaluates curves that meet each triangle in at most one
//! arc: the trace is the sum, over admissible sign vectors, of the glued
//! Weyl monomials with coefficient one. `trace_embedded` handles arbitrary
//! embedded multicurves by working in the tensor product of per-triangle
//! quantum tori: above each triangle the arc contributions are multiplied
//! in elevation order (highest first), the state sum runs over all sign
//! assignments, and each resulting tensor monomial is descended to the
//! glued algebra by matching it against the image of the edge embedding
//! Z_e -> Z_{e,left} (x) Z_{e,right}.
//!
//! Both paths accept a sign magnitude: magnitude 1 computes the plain
//! quantum trace, magnitude N computes the all-(+-N) state sum that the
//! T_N-threading collapses to at suitable roots of unity.

pub mod biangle;

use crate::scalar::{Scalar, ScalarContext};
use crate::surface::{triangle_sigma, CrossRef, CurveDiagram, Triangulation, Turn};
use crate::torus::{torus_context, SigmaMatrix, TorusContext, TorusElement};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StateSumError {
    #[error("curve is not lambda-simple")]
    NotLambdaSimple,
    #[error("descent failure: {0}")]
    DescentFailure(String),
    #[error("malformed tangle: {0}")]
    MalformedTangle(String),
}

/// The Chekhov-Fock algebra of a triangulation over the given scalars,
/// with commutation parameter w^param_exp.
pub fn glued_context(
    tri: &Triangulation,
    scalars: &ScalarContext,
    param_exp: i64,
) -> TorusContext {
    torus_context(
        tri.sigma_matrix(),
        tri.edge_names().to_vec(),
        scalars.clone(),
        param_exp,
    )
}

/// The tensor product of the per-triangle tori: three generators per
/// triangle, block-diagonal pairing.
fn tensor_context(tri: &Triangulation, scalars: &ScalarContext, param_exp: i64) -> TorusContext {
    let t = tri.triangle_count();
    let local = triangle_sigma();
    let mut sigma = SigmaMatrix::zero(3 * t);
    for b in 0..t {
        for p in 0..3 {
            for q in 0..3 {
                sigma.set(3 * b + p, 3 * b + q, local.get(p, q));
            }
        }
    }
    let names = (0..3 * t)
        .map(|i| format!("t{}s{}", i / 3, i % 3))
        .collect();
    torus_context(sigma, names, scalars.clone(), param_exp)
}

/// Flattened crossing list in component order.
pub fn flatten(curve: &CurveDiagram) -> Vec<CrossRef> {
    curve
        .components()
        .iter()
        .enumerate()
        .flat_map(|(ci, comp)| (0..comp.len()).map(move |i| (ci, i)))
        .collect()
}

/// Index of a crossing in the flattened order.
pub fn sign_index(curve: &CurveDiagram, r: CrossRef) -> usize {
    let mut idx = 0;
    for c in 0..r.0 {
        idx += curve.components()[c].len();
    }
    idx + r.1
}

/// A visit's admissibility: left turns require the entering sign to be at
/// most the exiting sign, right turns the reverse. This is the forbidden-
/// pair rule of the elementary triangle case, expressed through the turn.
fn visit_allowed(turn: Turn, sign_in: i64, sign_out: i64) -> bool {
    match turn {
        Turn::Left => sign_in <= sign_out,
        Turn::Right => sign_in >= sign_out,
    }
}

/// Enumerates admissible sign vectors (entries +-1) with DFS pruning and
/// calls the consumer with each.
fn for_each_admissible(curve: &CurveDiagram, mut consume: impl FnMut(&[i64])) {
    let order = flatten(curve);
    let k = order.len();
    let mut signs = vec![0i64; k];
    // constraints checkable once both endpoint signs are assigned: for the
    // visit starting at (c,i), endpoints are (c,i) and (c,i+1 mod len)
    fn rec(
        curve: &CurveDiagram,
        order: &[CrossRef],
        signs: &mut Vec<i64>,
        pos: usize,
        consume: &mut impl FnMut(&[i64]),
    ) {
        if pos == order.len() {
            consume(signs);
            return;
        }
        let (c, i) = order[pos];
        'next: for s in [-1i64, 1] {
            signs[pos] = s;
            // check every visit whose endpoints are now both assigned and
            // involve this crossing
            let len = curve.components()[c].len();
            let checks = [(c, (i + len - 1) % len), (c, i)];
            for &(vc, vi) in &checks {
                let v = curve.visit_at((vc, vi));
                let a = sign_index(curve, (vc, vi));
                let b = sign_index(curve, (vc, (vi + 1) % len));
                if a <= pos && b <= pos {
                    let ok = visit_allowed(v.turn, signs[a], signs[b]);
                    if !ok {
                        continue 'next;
                    }
                }
            }
            rec(curve, order, signs, pos + 1, consume);
        }
        signs[pos] = 0;
    }
    rec(curve, &order, &mut signs, 0, &mut consume);
}

/// Quantum trace of a lambda-simple curve: the sum over admissible sign
/// vectors of the glued Weyl monomials, each with coefficient one,
/// exponents scaled by `magnitude`.
pub fn state_sum_simple(
    tri: &Triangulation,
    curve: &CurveDiagram,
    scalars: &ScalarContext,
    param_exp: i64,
    magnitude: i64,
) -> Result<TorusElement, StateSumError> {
    if !curve.is_lambda_simple() {
        return Err(StateSumError::NotLambdaSimple);
    }
    let ctx = glued_context(tri, scalars, param_exp);
    let order = flatten(curve);
    let mut out = TorusElement::zero(&ctx);
    for_each_admissible(curve, |signs| {
        let mut exps = vec![0i64; tri.edge_count()];
        for (pos, &(c, i)) in order.iter().enumerate() {
            exps[curve.components()[c][i].edge] += signs[pos] * magnitude;
        }
        out.add_term(exps, Scalar::one(scalars));
    });
    Ok(out)
}

pub fn trace_simple(
    tri: &Triangulation,
    curve: &CurveDiagram,
    scalars: &ScalarContext,
    param_exp: i64,
) -> Result<TorusElement, StateSumError> {
    state_sum_simple(tri, curve, scalars, param_exp, 1)
}

/// One term of the embedded state sum: for a fixed assignment of integer
/// exponents to the crossings (flattened order), computes the ordered
/// product of the visit brackets in the tensor of per-triangle tori,
/// matches it against the image of the edge embedding, and returns the
/// glued monomial with its descent scalar.
pub fn embedded_term(
    tri: &Triangulation,
    curve: &CurveDiagram,
    scalars: &ScalarContext,
    param_exp: i64,
    exps: &[i64],
) -> Result<(Vec<i64>, Scalar), StateSumError> {
    let glued = glued_context(tri, scalars, param_exp);
    let tensor = tensor_context(tri, scalars, param_exp);
    let order = flatten(curve);
    let exp_of = |r: CrossRef| exps[sign_index(curve, r)];

    // ordered product of visit brackets, triangle by triangle (factors of
    // distinct triangles commute: the pairing is block diagonal)
    let mut tensor_exps = vec![0i64; 3 * tri.triangle_count()];
    let mut omega_exp = 0i64;
    for (t, visit_order) in curve.tri_visit_order().iter().enumerate() {
        for &vi in visit_order {
            let v = &curve.visits()[vi];
            debug_assert_eq!(v.triangle, t);
            let (c, i) = v.start;
            let len = curve.components()[c].len();
            let mut bracket = vec![0i64; 3 * tri.triangle_count()];
            bracket[3 * t + v.in_pos] += exp_of((c, i));
            bracket[3 * t + v.out_pos] += exp_of((c, (i + 1) % len));
            omega_exp += param_exp * tensor.sigma.pairing(&tensor_exps, &bracket);
            for (acc, b) in tensor_exps.iter_mut().zip(bracket.iter()) {
                *acc += b;
            }
        }
    }

    // glued monomial: one exponent per edge
    let mut m = vec![0i64; tri.edge_count()];
    for &(c, i) in &order {
        m[curve.components()[c][i].edge] += exp_of((c, i));
    }

    // image of [Z^m] under the edge embedding, computed in the tensor
    // torus: w^(e * weyl exponent) times the ordered product of the
    // two-slot edge monomials
    let mut phi = TorusElement::monomial(
        &tensor,
        vec![0i64; 3 * tri.triangle_count()],
        Scalar::omega_pow(scalars, param_exp * glued.sigma.weyl_exponent(&m)),
    );
    for (e, &me) in m.iter().enumerate() {
        if me == 0 {
            continue;
        }
        let mut g = vec![0i64; 3 * tri.triangle_count()];
        for (t, p) in tri.appearances(e) {
            g[3 * t + p] += me;
        }
        phi = phi.mul(&TorusElement::monomial(&tensor, g, Scalar::one(scalars)));
    }
    let (phi_exps, phi_coeff) = match phi.terms().next() {
        Some((e, c)) => (e.clone(), c.clone()),
        None => {
            return Err(StateSumError::DescentFailure(
                "embedding image vanished".into(),
            ))
        }
    };
    if phi_exps != tensor_exps {
        return Err(StateSumError::DescentFailure(format!(
            "tensor monomial {tensor_exps:?} is not the image of a glued monomial {m:?}"
        )));
    }
    let coeff = Scalar::omega_pow(scalars, omega_exp)
        .div(&phi_coeff)
        .map_err(|_| StateSumError::DescentFailure("non-invertible descent prefactor".into()))?;
    Ok((m, coeff))
}

/// Quantum trace of an embedded multicurve through the per-triangle tensor
/// computation and descent to the glued algebra.
pub fn state_sum_embedded(
    tri: &Triangulation,
    curve: &CurveDiagram,
    scalars: &ScalarContext,
    param_exp: i64,
    magnitude: i64,
) -> Result<TorusElement, StateSumError> {
    let glued = glued_context(tri, scalars, param_exp);
    let mut out = TorusElement::zero(&glued);
    let mut failure: Option<StateSumError> = None;
    for_each_admissible(curve, |signs| {
        if failure.is_some() {
            return;
        }
        let exps: Vec<i64> = signs.iter().map(|s| s * magnitude).collect();
        match embedded_term(tri, curve, scalars, param_exp, &exps) {
            Ok((m, coeff)) => out.add_term(m, coeff),
            Err(e) => failure = Some(e),
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

pub fn trace_embedded(
    tri: &Triangulation,
    curve: &CurveDiagram,
    scalars: &ScalarContext,
    param_exp: i64,
) -> Result<TorusElement, StateSumError> {
    state_sum_embedded(tri, curve, scalars, param_exp, 1)
}
