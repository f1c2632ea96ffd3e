//! Jones-Wenzl idempotents in the Temperley-Lieb algebra of the biangle,
//! their diagram expansion by the Wenzl recurrence, and the closed-form
//! quantum traces of a Jones-Wenzl box in the biangle and in the triangle.
//!
//! Diagrams are planar perfect matchings of boundary points (left and
//! right side of a rectangle, points indexed bottom to top). Composition
//! is diagrammatic concatenation; every closed loop formed contributes a
//! factor -A^2 - A^-2.

use crate::cheb::{quantum_factorial, quantum_int, SignState, QIntKind};
use crate::scalar::{Scalar, ScalarContext};
use crate::statesum::biangle::{Bnd, PlanarMatching};
use crate::surface::triangle_sigma;
use crate::torus::{torus_context, TorusContext, TorusElement};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum JwError {
    #[error("strand count mismatch")]
    StrandMismatch,
    #[error("JW_{0} is undefined at this root of unity ([[{1}]] vanishes)")]
    UndefinedAtRoot(u64, u64),
    #[error("vanishing quantum binomial: trace undefined at this root")]
    DivisionByZero,
    #[error("diagram is not planar")]
    NotPlanar,
}

/// A planar non-crossing perfect matching of `left + right` boundary
/// points. Point indices: 0..left on the left side (bottom to top), then
/// left..left+right on the right side (bottom to top).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TLDiagram {
    left: usize,
    right: usize,
    /// pairs (a, b) with a < b, sorted
    pairs: Vec<(usize, usize)>,
}

impl TLDiagram {
    pub fn new(left: usize, right: usize, mut pairs: Vec<(usize, usize)>) -> Result<Self, JwError> {
        if (left + right) % 2 != 0 || pairs.len() * 2 != left + right {
            return Err(JwError::StrandMismatch);
        }
        for p in pairs.iter_mut() {
            if p.0 > p.1 {
                *p = (p.1, p.0);
            }
        }
        pairs.sort_unstable();
        let mut seen = vec![false; left + right];
        for &(a, b) in &pairs {
            if b >= left + right || seen[a] || seen[b] || a == b {
                return Err(JwError::StrandMismatch);
            }
            seen[a] = true;
            seen[b] = true;
        }
        let d = TLDiagram { left, right, pairs };
        if !d.is_planar() {
            return Err(JwError::NotPlanar);
        }
        Ok(d)
    }

    pub fn identity(n: usize) -> Self {
        TLDiagram {
            left: n,
            right: n,
            pairs: (0..n).map(|i| (i, n + i)).collect(),
        }
    }

    /// The hook generator e_i on n strands: left points (i, i+1) joined,
    /// right points (i, i+1) joined, all other strands through.
    pub fn hook(n: usize, i: usize) -> Self {
        assert!(i + 1 < n);
        let mut pairs = vec![(i, i + 1), (n + i, n + i + 1)];
        for j in 0..n {
            if j != i && j != i + 1 {
                pairs.push((j, n + j));
            }
        }
        TLDiagram::new(n, n, pairs).expect("hook is planar")
    }

    pub fn left_points(&self) -> usize {
        self.left
    }

    pub fn right_points(&self) -> usize {
        self.right
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Position of a point on the boundary circle, walking the left side
    /// bottom to top and the right side top to bottom.
    fn circle_pos(&self, p: usize) -> usize {
        if p < self.left {
            p
        } else {
            self.left + (self.right - 1 - (p - self.left))
        }
    }

    fn is_planar(&self) -> bool {
        let chords: Vec<(usize, usize)> = self
            .pairs
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (self.circle_pos(a), self.circle_pos(b));
                if x < y {
                    (x, y)
                } else {
                    (y, x)
                }
            })
            .collect();
        for i in 0..chords.len() {
            for j in (i + 1)..chords.len() {
                let (a, b) = chords[i];
                let (c, d) = chords[j];
                let inside_c = a < c && c < b;
                let inside_d = a < d && d < b;
                if inside_c != inside_d {
                    return false;
                }
            }
        }
        true
    }

    /// The partner of a point.
    pub fn partner(&self, p: usize) -> usize {
        for &(a, b) in &self.pairs {
            if a == p {
                return b;
            }
            if b == p {
                return a;
            }
        }
        unreachable!("perfect matching")
    }

    /// Diagrammatic concatenation; returns the glued diagram and the
    /// number of closed loops formed.
    pub fn compose(&self, other: &TLDiagram) -> Result<(TLDiagram, usize), JwError> {
        if self.right != other.left {
            return Err(JwError::StrandMismatch);
        }
        let (l, m, r) = (self.left, self.right, other.right);
        // node space: 0..l (our left), l..l+m (junctions), l+m.. (their right)
        let mut adj_x: BTreeMap<usize, usize> = BTreeMap::new();
        let mut adj_y: BTreeMap<usize, usize> = BTreeMap::new();
        for &(a, b) in &self.pairs {
            adj_x.insert(a, b);
            adj_x.insert(b, a);
        }
        for &(a, b) in &other.pairs {
            adj_y.insert(l + a, l + b);
            adj_y.insert(l + b, l + a);
        }
        let endpoint = |n: usize| n < l || n >= l + m;
        let mut visited = vec![false; l + m + r];
        let mut pairs = Vec::new();
        for start in (0..l).chain(l + m..l + m + r) {
            if visited[start] {
                continue;
            }
            visited[start] = true;
            let mut cur = start;
            // endpoints below l carry x-edges, endpoints above l+m y-edges
            let mut use_x = cur < l;
            loop {
                let next = if use_x { adj_x[&cur] } else { adj_y[&cur] };
                visited[next] = true;
                if endpoint(next) {
                    pairs.push((start, next));
                    break;
                }
                cur = next;
                use_x = !use_x;
            }
        }
        let mut loops = 0;
        for j in l..l + m {
            if visited[j] {
                continue;
            }
            loops += 1;
            let mut cur = j;
            let mut use_x = true;
            while !visited[cur] {
                visited[cur] = true;
                cur = if use_x { adj_x[&cur] } else { adj_y[&cur] };
                use_x = !use_x;
            }
        }
        let remap = |n: usize| if n < l { n } else { n - m };
        let pairs = pairs.iter().map(|&(a, b)| (remap(a), remap(b))).collect();
        let d = TLDiagram::new(l, r, pairs)?;
        Ok((d, loops))
    }

    /// Adds one through strand on top.
    pub fn extend_top(&self) -> TLDiagram {
        let (l, r) = (self.left, self.right);
        let mut pairs: Vec<(usize, usize)> = self
            .pairs
            .iter()
            .map(|&(a, b)| {
                let sh = |p: usize| if p < l { p } else { p + 1 };
                (sh(a), sh(b))
            })
            .collect();
        pairs.push((l, l + 1 + r));
        TLDiagram::new(l + 1, r + 1, pairs).expect("extension stays planar")
    }
}

/// A linear combination of diagrams with exact coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TLElement {
    scalars: ScalarContext,
    left: usize,
    right: usize,
    terms: BTreeMap<TLDiagram, Scalar>,
}

impl TLElement {
    pub fn zero(scalars: &ScalarContext, left: usize, right: usize) -> Self {
        TLElement {
            scalars: scalars.clone(),
            left,
            right,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_diagram(scalars: &ScalarContext, d: TLDiagram) -> Self {
        let mut e = TLElement::zero(scalars, d.left_points(), d.right_points());
        e.add_term(d, Scalar::one(scalars));
        e
    }

    pub fn identity(scalars: &ScalarContext, n: usize) -> Self {
        TLElement::from_diagram(scalars, TLDiagram::identity(n))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TLDiagram, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, d: &TLDiagram) -> Scalar {
        self.terms
            .get(d)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(&self.scalars))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, d: TLDiagram, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(d) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &TLElement) -> TLElement {
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(d.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> TLElement {
        let mut out = TLElement::zero(&self.scalars, self.left, self.right);
        for (d, c) in &self.terms {
            out.add_term(d.clone(), c.mul(s));
        }
        out
    }

    /// Loop value -A^2 - A^-2.
    pub fn loop_value(scalars: &ScalarContext) -> Scalar {
        Scalar::omega_pow(scalars, -4)
            .add(&Scalar::omega_pow(scalars, 4))
            .neg()
    }

    pub fn compose(&self, other: &TLElement) -> Result<TLElement, JwError> {
        if self.right != other.left {
            return Err(JwError::StrandMismatch);
        }
        let delta = TLElement::loop_value(&self.scalars);
        let mut out = TLElement::zero(&self.scalars, self.left, other.right);
        for (da, ca) in &self.terms {
            for (db, cb) in &other.terms {
                let (d, loops) = da.compose(db)?;
                let mut c = ca.mul(cb);
                for _ in 0..loops {
                    c = c.mul(&delta);
                }
                out.add_term(d, c);
            }
        }
        Ok(out)
    }

    /// Tensor with one extra through strand on top.
    pub fn extend_top(&self) -> TLElement {
        let mut out = TLElement::zero(&self.scalars, self.left + 1, self.right + 1);
        for (d, c) in &self.terms {
            out.add_term(d.extend_top(), c.clone());
        }
        out
    }
}

/// [[k]]_{A^2} with A = w^-2.
fn balanced_qint(scalars: &ScalarContext, k: u64) -> Scalar {
    quantum_int(k, QIntKind::Balanced, &Scalar::omega_pow(scalars, -4))
}

/// Expands JW_n as a diagram combination by the Wenzl recurrence
/// JW_n = JW_{n-1}x1 + ([[n-1]]/[[n]]) (JW_{n-1}x1) e_{n-1} (JW_{n-1}x1).
/// Defined as long as [[k]]_{A^2} is nonzero for all k <= n.
pub fn jw_expand(n: u64, scalars: &ScalarContext) -> Result<TLElement, JwError> {
    assert!(n >= 1);
    for k in 1..=n {
        if balanced_qint(scalars, k).is_zero() {
            return Err(JwError::UndefinedAtRoot(n, k));
        }
    }
    let mut jw = TLElement::identity(scalars, 1);
    for m in 2..=n {
        let prev = jw.extend_top();
        let coeff = balanced_qint(scalars, m - 1)
            .div(&balanced_qint(scalars, m))
            .expect("checked nonzero");
        let hook = TLElement::from_diagram(scalars, TLDiagram::hook(m as usize, m as usize - 2));
        let correction = prev.compose(&hook)?.compose(&prev)?.scale(&coeff);
        jw = prev.add(&correction);
    }
    Ok(jw)
}

/// Attach a leftward cap joining left points (i, i+1): composes with the
/// (n-2, n) cap diagram.
pub fn cap_left(x: &TLElement, i: usize) -> Result<TLElement, JwError> {
    let n = x.left;
    assert!(i + 1 < n);
    let mut pairs = vec![(n - 2 + i, n - 2 + i + 1)];
    for j in 0..n - 2 {
        let target = if j < i { j } else { j + 2 };
        pairs.push((j, n - 2 + target));
    }
    let cap = TLDiagram::new(n - 2, n, pairs)?;
    TLElement::from_diagram(&x.scalars, cap).compose(x)
}

/// Attach a rightward cap joining right points (i, i+1).
pub fn cap_right(x: &TLElement, i: usize) -> Result<TLElement, JwError> {
    let n = x.right;
    assert!(i + 1 < n);
    let mut pairs = vec![(i, i + 1)];
    for j in 0..n - 2 {
        let source = if j < i { j } else { j + 2 };
        pairs.push((source, n + j));
    }
    let cup = TLDiagram::new(n, n - 2, pairs)?;
    x.compose(&TLElement::from_diagram(&x.scalars, cup))
}

/// Closes the top strand around the back: joins left point n-1 to right
/// point n-1, yielding an element on n-1 strands.
pub fn close_top(x: &TLElement) -> Result<TLElement, JwError> {
    if x.left != x.right || x.left == 0 {
        return Err(JwError::StrandMismatch);
    }
    let n = x.left;
    let delta = TLElement::loop_value(&x.scalars);
    let mut out = TLElement::zero(&x.scalars, n - 1, n - 1);
    for (d, c) in &x.terms {
        let lt = n - 1; // left top point
        let rt = 2 * n - 1; // right top point
        let pl = d.partner(lt);
        let pr = d.partner(rt);
        let mut pairs: Vec<(usize, usize)> = d
            .pairs
            .iter()
            .filter(|&&(a, b)| a != lt && a != rt && b != lt && b != rt)
            .cloned()
            .collect();
        let mut coeff = c.clone();
        if pl == rt {
            // the top strand was a through strand: closing it makes a loop
            coeff = coeff.mul(&delta);
        } else {
            pairs.push((pl.min(pr), pl.max(pr)));
        }
        let remap = |p: usize| if p < lt { p } else { p - 1 };
        let pairs = pairs.iter().map(|&(a, b)| (remap(a), remap(b))).collect();
        out.add_term(TLDiagram::new(n - 1, n - 1, pairs)?, coeff);
    }
    Ok(out)
}

/// Closes all strands around an annulus; returns the resulting polynomial
/// in the core curve as a coefficient vector (index = power of the core).
pub fn annulus_closure(x: &TLElement) -> Result<Vec<Scalar>, JwError> {
    if x.left != x.right {
        return Err(JwError::StrandMismatch);
    }
    let n = x.left;
    let delta = TLElement::loop_value(&x.scalars);
    let mut coeffs = vec![Scalar::zero(&x.scalars); n + 1];
    for (d, c) in &x.terms {
        // each closed loop alternates diagram arcs with seam arcs
        // R(i) ~ L(i); its winding number is the signed count of seam
        // crossings (forward when traversed right-to-left), and an
        // embedded loop in the annulus is contractible iff it is zero
        let mut visited = vec![false; 2 * n];
        let mut trivial = 0usize;
        let mut wrapping = 0usize;
        for start in 0..2 * n {
            if visited[start] {
                continue;
            }
            let mut winding = 0i64;
            let mut cur = start;
            let mut use_diagram = true;
            loop {
                visited[cur] = true;
                let next = if use_diagram {
                    d.partner(cur)
                } else if cur >= n {
                    winding += 1;
                    cur - n
                } else {
                    winding -= 1;
                    cur + n
                };
                use_diagram = !use_diagram;
                cur = next;
                if cur == start && use_diagram {
                    break;
                }
            }
            if winding == 0 {
                trivial += 1;
            } else {
                wrapping += 1;
            }
        }
        let mut coeff = c.clone();
        for _ in 0..trivial {
            coeff = coeff.mul(&delta);
        }
        coeffs[wrapping] = coeffs[wrapping].add(&coeff);
    }
    Ok(coeffs)
}

/// Converts a diagram to a biangle matching for stated evaluation.
pub fn diagram_matching(d: &TLDiagram) -> PlanarMatching {
    let pairs = d
        .pairs
        .iter()
        .map(|&(a, b)| {
            let f = |p: usize| {
                if p < d.left {
                    Bnd::Left(p)
                } else {
                    Bnd::Right(p - d.left)
                }
            };
            (f(a), f(b))
        })
        .collect();
    PlanarMatching {
        left: d.left,
        right: d.right,
        pairs,
        loops: 0,
    }
}

/// Closed-form biangle trace of a stated Jones-Wenzl box:
/// 0 when |s1| != |s2|, else A^(2 iota(s1) + 2 iota(s2)) / [n choose p]_{A^4}.
pub fn jw_biangle_trace(
    n: u64,
    s1: &SignState,
    s2: &SignState,
    scalars: &ScalarContext,
) -> Result<Scalar, JwError> {
    assert_eq!(s1.len(), n as usize);
    assert_eq!(s2.len(), n as usize);
    if s1.plus_count() != s2.plus_count() {
        return Ok(Scalar::zero(scalars));
    }
    let p = s1.plus_count() as i64;
    let a4 = Scalar::omega_pow(scalars, -8);
    let binom = crate::cheb::quantum_binom(n, p, &a4);
    if binom.is_zero() {
        return Err(JwError::DivisionByZero);
    }
    // A^(2 iota(s1) + 2 iota(s2)) with A = w^-2
    let val = Scalar::omega_pow(scalars, -4 * (s1.inversions() as i64 + s2.inversions() as i64));
    Ok(val.div(&binom).expect("nonzero binomial"))
}

/// The standard triangle context: three generators with the single-corner
/// pairing, sides named 1, 2, 3.
pub fn triangle_context(scalars: &ScalarContext, param_exp: i64) -> TorusContext {
    torus_context(
        triangle_sigma(),
        vec!["1".into(), "2".into(), "3".into()],
        scalars.clone(),
        param_exp,
    )
}

/// Closed-form triangle trace of a stated Jones-Wenzl box spanning sides
/// 1 and 2 of the triangle: zero when p2 > p1, otherwise
/// A^(2 iota(s1) + 2 iota(s2)) ([n-p2]! [p1]! / ([n]! [p1-p2]!))_{A^4}
/// A^(-(p1-p2)(n-p1+p2)) [Z1^(2 p1 - n) Z2^(2 p2 - n)].
pub fn jw_triangle_trace(
    n: u64,
    s1: &SignState,
    s2: &SignState,
    scalars: &ScalarContext,
) -> Result<TorusElement, JwError> {
    assert_eq!(s1.len(), n as usize);
    assert_eq!(s2.len(), n as usize);
    let ctx = triangle_context(scalars, 1);
    let p1 = s1.plus_count() as i64;
    let p2 = s2.plus_count() as i64;
    if p2 > p1 {
        return Ok(TorusElement::zero(&ctx));
    }
    let a4 = Scalar::omega_pow(scalars, -8);
    let num = quantum_factorial((n as i64 - p2) as u64, &a4)
        .mul(&quantum_factorial(p1 as u64, &a4));
    let den = quantum_factorial(n, &a4).mul(&quantum_factorial((p1 - p2) as u64, &a4));
    if den.is_zero() {
        return Err(JwError::DivisionByZero);
    }
    let inv_part = Scalar::omega_pow(
        scalars,
        -4 * (s1.inversions() as i64 + s2.inversions() as i64),
    );
    let a_pow = Scalar::omega_pow(scalars, 2 * (p1 - p2) * (n as i64 - p1 + p2));
    let coeff = inv_part
        .mul(&num.div(&den).expect("nonzero denominator"))
        .mul(&a_pow);
    Ok(TorusElement::monomial(
        &ctx,
        vec![2 * p1 - n as i64, 2 * p2 - n as i64, 0],
        coeff,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cheb::{cheb_poly, ChebKind};
    use crate::scalar::choose_modulus;
    use crate::statesum::biangle::eval_matching;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gen() -> ScalarContext {
        ScalarContext::generic()
    }

    #[test]
    fn compose_examples() {
        let ctx = gen();
        let id = TLElement::identity(&ctx, 2);
        assert_eq!(id.compose(&id).unwrap(), id);
        // e1 . e1 = delta e1
        let e1 = TLElement::from_diagram(&ctx, TLDiagram::hook(2, 0));
        let sq = e1.compose(&e1).unwrap();
        assert_eq!(sq, e1.scale(&TLElement::loop_value(&ctx)));
        // unit law on random elements
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..10 {
            let mut x = TLElement::zero(&ctx, 3, 3);
            // random combination of the five TL_3 diagrams
            let diagrams = [
                TLDiagram::identity(3),
                TLDiagram::hook(3, 0),
                TLDiagram::hook(3, 1),
                TLDiagram::hook(3, 0).compose(&TLDiagram::hook(3, 1)).unwrap().0,
                TLDiagram::hook(3, 1).compose(&TLDiagram::hook(3, 0)).unwrap().0,
            ];
            for d in &diagrams {
                x.add_term(d.clone(), Scalar::omega_pow(&ctx, rng.gen_range(-4..5)));
            }
            let id3 = TLElement::identity(&ctx, 3);
            assert_eq!(x.compose(&id3).unwrap(), x);
            assert_eq!(id3.compose(&x).unwrap(), x);
        }
    }

    #[test]
    fn strand_mismatch() {
        let ctx = gen();
        let a = TLElement::identity(&ctx, 2);
        let b = TLElement::identity(&ctx, 3);
        assert_eq!(a.compose(&b), Err(JwError::StrandMismatch));
    }

    #[test]
    fn jw_one_and_two() {
        let ctx = gen();
        let jw1 = jw_expand(1, &ctx).unwrap();
        assert_eq!(jw1, TLElement::identity(&ctx, 1));
        // JW_2 = id + c e with c = [[1]]/[[2]] = 1/(A^2 + A^-2)
        let jw2 = jw_expand(2, &ctx).unwrap();
        assert_eq!(jw2.term_count(), 2);
        assert!(jw2.coeff(&TLDiagram::identity(2)).is_one());
        let c = jw2.coeff(&TLDiagram::hook(2, 0));
        let expected = Scalar::one(&ctx)
            .div(&Scalar::omega_pow(&ctx, -4).add(&Scalar::omega_pow(&ctx, 4)))
            .unwrap();
        assert_eq!(c, expected);
    }

    #[test]
    fn idempotency_up_to_five() {
        let ctx = gen();
        for n in 1..=5 {
            let jw = jw_expand(n, &ctx).unwrap();
            let sq = jw.compose(&jw).unwrap();
            assert_eq!(sq, jw, "JW_{n} not idempotent");
        }
    }

    #[test]
    fn capping_kills_jw() {
        let ctx = gen();
        for n in 2..=5u64 {
            let jw = jw_expand(n, &ctx).unwrap();
            for i in 0..(n as usize - 1) {
                assert!(cap_left(&jw, i).unwrap().is_zero(), "left cap {i} on JW_{n}");
                assert!(cap_right(&jw, i).unwrap().is_zero(), "right cap {i} on JW_{n}");
            }
        }
    }

    #[test]
    fn partial_closure() {
        let ctx = gen();
        for n in 2..=4u64 {
            let jw = jw_expand(n, &ctx).unwrap();
            let closed = close_top(&jw).unwrap();
            let ratio = balanced_qint(&ctx, n + 1)
                .div(&balanced_qint(&ctx, n))
                .unwrap()
                .neg();
            let expected = jw_expand(n - 1, &ctx).unwrap().scale(&ratio);
            assert_eq!(closed, expected, "closing one strand of JW_{n}");
        }
    }

    #[test]
    fn annulus_closure_is_second_chebyshev() {
        let ctx = gen();
        for n in 1..=5u64 {
            let jw = jw_expand(n, &ctx).unwrap();
            let closure = annulus_closure(&jw).unwrap();
            let s_n = cheb_poly(ChebKind::Second, n as usize);
            for (k, c) in closure.iter().enumerate() {
                let expected = Scalar::rational(
                    &ctx,
                    num::BigRational::from_integer(s_n.coeff(k)),
                );
                assert_eq!(*c, expected, "closure of JW_{n}, coefficient of x^{k}");
            }
        }
    }

    #[test]
    fn undefined_at_root() {
        let n = 3i64;
        let ctx = choose_modulus(n, -1).unwrap();
        match jw_expand(n as u64, &ctx) {
            Err(JwError::UndefinedAtRoot(3, 3)) => {}
            other => panic!("expected UndefinedAtRoot, got {other:?}"),
        }
        // JW_2 still defined there
        assert!(jw_expand(2, &ctx).is_ok());
    }

    /// Diagram-expansion oracle for the biangle trace: expand JW_n and
    /// evaluate each stated diagram with the elementary Kauffman values.
    fn biangle_oracle(n: u64, s1: &SignState, s2: &SignState, ctx: &ScalarContext) -> Scalar {
        let jw = jw_expand(n, ctx).unwrap();
        let mut acc = Scalar::zero(ctx);
        for (d, c) in jw.terms() {
            let m = diagram_matching(d);
            let v = eval_matching(ctx, &m, s1, s2).unwrap();
            acc = acc.add(&c.mul(&v));
        }
        acc
    }

    #[test]
    fn biangle_trace_examples() {
        let ctx = gen();
        let s = |x: &str| SignState::from_str_signs(x).unwrap();
        assert!(jw_biangle_trace(1, &s("+"), &s("+"), &ctx).unwrap().is_one());
        assert!(jw_biangle_trace(2, &s("+-"), &s("--"), &ctx).unwrap().is_zero());
        // (+,-),(-,+): A^2 / (1 + A^4)
        let v = jw_biangle_trace(2, &s("+-"), &s("-+"), &ctx).unwrap();
        let a = Scalar::omega_pow(&ctx, -2);
        let expected = a
            .pow(2)
            .unwrap()
            .div(&Scalar::one(&ctx).add(&a.pow(4).unwrap()))
            .unwrap();
        assert_eq!(v, expected);
    }

    #[test]
    fn biangle_trace_matches_oracle() {
        let ctx = gen();
        for n in 1..=4u64 {
            let states: Vec<SignState> = (0..(1u32 << n))
                .map(|mask| {
                    SignState((0..n).map(|i| mask & (1 << i) != 0).collect())
                })
                .collect();
            for s1 in &states {
                for s2 in &states {
                    let closed = jw_biangle_trace(n, s1, s2, &ctx).unwrap();
                    let oracle = biangle_oracle(n, s1, s2, &ctx);
                    assert_eq!(closed, oracle, "JW_{n} biangle trace mismatch");
                }
            }
        }
    }

    #[test]
    fn root_mode_binomial_vanishes() {
        // at A^4 a primitive N-th root, [N choose p] vanishes for 0<p<N
        let ctx = choose_modulus(3, -1).unwrap();
        let s = |x: &str| SignState::from_str_signs(x).unwrap();
        assert_eq!(
            jw_biangle_trace(3, &s("++-"), &s("-++"), &ctx),
            Err(JwError::DivisionByZero)
        );
        // but the |s1| != |s2| case is still zero, not an error
        assert!(jw_biangle_trace(3, &s("++-"), &s("---"), &ctx).unwrap().is_zero());
    }

    /// Split-state-sum oracle for the triangle: glue a biangle carrying
    /// JW_n to a triangle crossed by n parallel strands and sum over the
    /// states of the middle edge.
    fn triangle_oracle(
        n: u64,
        s1: &SignState,
        s2: &SignState,
        ctx: &ScalarContext,
    ) -> TorusElement {
        let tctx = triangle_context(ctx, 1);
        let mut acc = TorusElement::zero(&tctx);
        for mask in 0..(1u32 << n) {
            let s0 = SignState((0..n).map(|i| mask & (1 << i) != 0).collect());
            let b = match jw_biangle_trace(n, s1, &s0, ctx) {
                Ok(v) => v,
                Err(_) => continue,
            };
            if b.is_zero() {
                continue;
            }
            // product over strands in index order of [Z1^(s0 i) Z2^(s2 i)],
            // zero when (s0 i, s2 i) = (-, +)
            let mut strands = TorusElement::one(&tctx);
            let mut dead = false;
            for i in 0..n as usize {
                let e1 = if s0.0[i] { 1 } else { -1 };
                let e2 = if s2.0[i] { 1 } else { -1 };
                if e1 == -1 && e2 == 1 {
                    dead = true;
                    break;
                }
                strands = strands.mul(&TorusElement::monomial(
                    &tctx,
                    vec![e1, e2, 0],
                    Scalar::one(ctx),
                ));
            }
            if dead {
                continue;
            }
            acc = acc.add(&strands.scale(&b));
        }
        acc
    }

    #[test]
    fn triangle_trace_examples() {
        let ctx = gen();
        let s = |x: &str| SignState::from_str_signs(x).unwrap();
        // p2 > p1 vanishes
        assert!(jw_triangle_trace(2, &s("--"), &s("++"), &ctx).unwrap().is_zero());
        // n = 1, both +: the plain corner bracket [Z1 Z2]
        let v = jw_triangle_trace(1, &s("+"), &s("+"), &ctx).unwrap();
        let tctx = triangle_context(&ctx, 1);
        assert_eq!(
            v,
            TorusElement::monomial(&tctx, vec![1, 1, 0], Scalar::one(&ctx))
        );
    }

    #[test]
    fn triangle_trace_matches_split_oracle() {
        let ctx = gen();
        for n in 1..=3u64 {
            let states: Vec<SignState> = (0..(1u32 << n))
                .map(|mask| SignState((0..n).map(|i| mask & (1 << i) != 0).collect()))
                .collect();
            for s1 in &states {
                for s2 in &states {
                    let closed = jw_triangle_trace(n, s1, s2, &ctx).unwrap();
                    let oracle = triangle_oracle(n, s1, s2, &ctx);
                    assert_eq!(closed, oracle, "JW_{n} triangle trace mismatch");
                }
            }
        }
    }
}
