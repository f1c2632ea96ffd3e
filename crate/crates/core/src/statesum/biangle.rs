//! Stated-skein evaluation in the biangle: the Kauffman bracket of planar
//! tangles with boundary states.
//!
//! Tangles are built from left-to-right slices: caps (two adjacent strands
//! turn back leftward), cups (two new strands open rightward), and
//! crossings, which are resolved by the skein relation
//! [K_1] = A^-1 [K_0] + A [K_infty]. Boundary points on each side are
//! indexed bottom to top. Elementary values, with the upper endpoint
//! listed first:
//!
//! - through strand: 1 if the states agree, else 0;
//! - both endpoints on the left side: (+,-) -> -w^-5, (-,+) -> w^-1;
//! - both endpoints on the right side: (+,-) -> w, (-,+) -> -w^5;
//! - every closed loop contributes a factor -A^2 - A^-2.

use super::StateSumError;
use crate::cheb::SignState;
use crate::scalar::{Scalar, ScalarContext};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SliceKind {
    /// join strands at positions (at, at+1) into a leftward U-turn
    Cap(usize),
    /// open two new strands at position at
    Cup(usize),
    /// crossing of strands (at, at+1); `positive` selects which resolution
    /// carries A^-1 on the identity smoothing
    Cross { at: usize, positive: bool },
}

/// A tangle in the biangle: `inputs` strands enter on the left, slices are
/// applied left to right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tangle {
    pub inputs: usize,
    pub slices: Vec<SliceKind>,
}

impl Tangle {
    pub fn identity(n: usize) -> Self {
        Tangle {
            inputs: n,
            slices: Vec::new(),
        }
    }

    pub fn outputs(&self) -> Result<usize, StateSumError> {
        let mut n = self.inputs as i64;
        for s in &self.slices {
            match s {
                SliceKind::Cap(at) => {
                    if (*at as i64) + 1 >= n {
                        return Err(StateSumError::MalformedTangle(format!(
                            "cap at {at} with {n} strands"
                        )));
                    }
                    n -= 2;
                }
                SliceKind::Cup(at) => {
                    if *at as i64 > n {
                        return Err(StateSumError::MalformedTangle(format!(
                            "cup at {at} with {n} strands"
                        )));
                    }
                    n += 2;
                }
                SliceKind::Cross { at, .. } => {
                    if (*at as i64) + 1 >= n {
                        return Err(StateSumError::MalformedTangle(format!(
                            "crossing at {at} with {n} strands"
                        )));
                    }
                }
            }
        }
        Ok(n as usize)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bnd {
    Left(usize),
    Right(usize),
}

/// A crossingless tangle reduced to its boundary matching and loop count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarMatching {
    pub left: usize,
    pub right: usize,
    pub pairs: Vec<(Bnd, Bnd)>,
    pub loops: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum End {
    Left(usize),
    Right(usize),
    Open(usize),
}

/// Chases strands through cap/cup slices.
fn reduce_planar(inputs: usize, slices: &[SliceKind]) -> Result<PlanarMatching, StateSumError> {
    // other_end[node] = what the far side of the path with open end `node`
    // is attached to
    let mut other_end: Vec<End> = (0..inputs).map(End::Left).collect();
    let mut open: Vec<usize> = (0..inputs).collect();
    let mut pairs: Vec<(Bnd, Bnd)> = Vec::new();
    let mut loops = 0usize;

    let bnd = |e: End| -> Bnd {
        match e {
            End::Left(i) => Bnd::Left(i),
            End::Right(i) => Bnd::Right(i),
            End::Open(_) => unreachable!(),
        }
    };

    for s in slices {
        match *s {
            SliceKind::Cup(at) => {
                if at > open.len() {
                    return Err(StateSumError::MalformedTangle(format!(
                        "cup at {at} with {} strands",
                        open.len()
                    )));
                }
                let a = other_end.len();
                let b = a + 1;
                other_end.push(End::Open(b));
                other_end.push(End::Open(a));
                open.insert(at, b);
                open.insert(at, a);
            }
            SliceKind::Cap(at) => {
                if at + 1 >= open.len() {
                    return Err(StateSumError::MalformedTangle(format!(
                        "cap at {at} with {} strands",
                        open.len()
                    )));
                }
                let x = open.remove(at);
                let y = open.remove(at);
                if other_end[x] == End::Open(y) {
                    debug_assert_eq!(other_end[y], End::Open(x));
                    loops += 1;
                    continue;
                }
                let ex = other_end[x];
                let ey = other_end[y];
                match (ex, ey) {
                    (End::Open(p), End::Open(q)) => {
                        other_end[p] = End::Open(q);
                        other_end[q] = End::Open(p);
                    }
                    (End::Open(p), e) => other_end[p] = e,
                    (e, End::Open(q)) => other_end[q] = e,
                    (a, b) => pairs.push((bnd(a), bnd(b))),
                }
            }
            SliceKind::Cross { .. } => {
                return Err(StateSumError::MalformedTangle(
                    "unresolved crossing in planar reduction".into(),
                ));
            }
        }
    }

    let right = open.len();
    for (j, &x) in open.iter().enumerate() {
        match other_end[x] {
            End::Open(p) => {
                other_end[p] = End::Right(j);
                other_end[x] = End::Right(j); // mark as consumed
            }
            e => {
                pairs.push((bnd(e), Bnd::Right(j)));
            }
        }
    }

    Ok(PlanarMatching {
        left: inputs,
        right,
        pairs,
        loops,
    })
}

/// Resolves all crossings by the skein relation, returning weighted planar
/// matchings; the weight is an exponent of w (A = w^-2).
pub fn resolve_tangle(tangle: &Tangle) -> Result<Vec<(i64, PlanarMatching)>, StateSumError> {
    tangle.outputs()?; // validate slice arithmetic up front
    let mut work: Vec<(i64, Vec<SliceKind>)> = vec![(0, tangle.slices.clone())];
    let mut done: Vec<(i64, PlanarMatching)> = Vec::new();
    while let Some((w_exp, slices)) = work.pop() {
        match slices
            .iter()
            .position(|s| matches!(s, SliceKind::Cross { .. }))
        {
            None => {
                done.push((w_exp, reduce_planar(tangle.inputs, &slices)?));
            }
            Some(i) => {
                let (at, positive) = match slices[i] {
                    SliceKind::Cross { at, positive } => (at, positive),
                    _ => unreachable!(),
                };
                // identity smoothing
                let mut id_slices = slices.clone();
                id_slices.remove(i);
                // turn-back smoothing: cap then cup at the same position
                let mut tb_slices = slices.clone();
                tb_slices.splice(i..=i, [SliceKind::Cap(at), SliceKind::Cup(at)]);
                // A = w^-2: A^-1 = w^2
                let (id_w, tb_w) = if positive { (2, -2) } else { (-2, 2) };
                work.push((w_exp + id_w, id_slices));
                work.push((w_exp + tb_w, tb_slices));
            }
        }
    }
    Ok(done)
}

/// Value of one stated arc. Point indices are bottom-to-top; sign true = +.
fn arc_value(
    scalars: &ScalarContext,
    a: Bnd,
    b: Bnd,
    s_left: &[bool],
    s_right: &[bool],
) -> Scalar {
    let state = |p: Bnd| -> bool {
        match p {
            Bnd::Left(i) => s_left[i],
            Bnd::Right(i) => s_right[i],
        }
    };
    match (a, b) {
        (Bnd::Left(_), Bnd::Right(_)) | (Bnd::Right(_), Bnd::Left(_)) => {
            if state(a) == state(b) {
                Scalar::one(scalars)
            } else {
                Scalar::zero(scalars)
            }
        }
        (Bnd::Left(i), Bnd::Left(j)) => {
            let (up, dn) = if i > j { (a, b) } else { (b, a) };
            match (state(up), state(dn)) {
                (true, false) => Scalar::omega_pow(scalars, -5).neg(),
                (false, true) => Scalar::omega_pow(scalars, -1),
                _ => Scalar::zero(scalars),
            }
        }
        (Bnd::Right(i), Bnd::Right(j)) => {
            let (up, dn) = if i > j { (a, b) } else { (b, a) };
            match (state(up), state(dn)) {
                (true, false) => Scalar::omega_pow(scalars, 1),
                (false, true) => Scalar::omega_pow(scalars, 5).neg(),
                _ => Scalar::zero(scalars),
            }
        }
    }
}

/// Kauffman bracket value of a stated planar matching: the product of the
/// per-arc elementary values times the loop factor.
pub fn eval_matching(
    scalars: &ScalarContext,
    m: &PlanarMatching,
    s_left: &SignState,
    s_right: &SignState,
) -> Result<Scalar, StateSumError> {
    if s_left.len() != m.left || s_right.len() != m.right {
        return Err(StateSumError::MalformedTangle(format!(
            "state lengths ({}, {}) do not match boundary ({}, {})",
            s_left.len(),
            s_right.len(),
            m.left,
            m.right
        )));
    }
    let loop_factor = Scalar::omega_pow(scalars, -4)
        .add(&Scalar::omega_pow(scalars, 4))
        .neg(); // -A^2 - A^-2
    let mut acc = loop_factor.pow(m.loops as i64).expect("nonzero loop value");
    for &(a, b) in &m.pairs {
        let v = arc_value(scalars, a, b, &s_left.0, &s_right.0);
        if v.is_zero() {
            return Ok(Scalar::zero(scalars));
        }
        acc = acc.mul(&v);
    }
    Ok(acc)
}

/// Exact stated value of a biangle tangle: crossings resolved by the skein
/// relation, then each planar resolution scored against the states.
pub fn biangle_eval(
    scalars: &ScalarContext,
    tangle: &Tangle,
    s_left: &SignState,
    s_right: &SignState,
) -> Result<Scalar, StateSumError> {
    let mut acc = Scalar::zero(scalars);
    for (w_exp, m) in resolve_tangle(tangle)? {
        let v = eval_matching(scalars, &m, s_left, s_right)?;
        acc = acc.add(&v.mul(&Scalar::omega_pow(scalars, w_exp)));
    }
    Ok(acc)
}
