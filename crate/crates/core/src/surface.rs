//! Ideal triangulation combinatorics and embedded multicurve diagrams.
//!
//! A triangulation is a list of triangles, each a counterclockwise-ordered
//! triple of edge identifiers; every edge appears on exactly two triangle
//! sides. The commutation matrix sigma is derived by iterating triangle
//! corners: each corner contributes one counterclockwise succession of one
//! side's end by the next side's end around a puncture.
//!
//! Curves are recorded combinatorially: cyclic sequences of edge crossings
//! (each tagged with which of the edge's two triangle sides is entered
//! next), together with elevation data: a top-to-bottom order of the
//! crossing points on each edge and of the arcs above each triangle. Turn
//! directions are derived, not stored. The orientation conventions here
//! (which cyclic step counts as a left turn, and the corner orientation of
//! sigma) are the ones calibrated against the fixture trace polynomials.

use crate::torus::SigmaMatrix;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SurfaceError {
    #[error("invalid triangulation: {0}")]
    InvalidTriangulation(String),
    #[error("unknown fixture: {0}")]
    UnknownFixture(String),
    #[error("empty curve")]
    EmptyCurve,
    #[error("inconsistent crossing: {0}")]
    InconsistentCrossing(String),
    #[error("bad elevation data: {0}")]
    BadElevation(String),
    #[error("bad input: {0}")]
    BadInput(String),
}

/// An ideal triangulation of a closed punctured surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangulation {
    edge_names: Vec<String>,
    triangles: Vec<[usize; 3]>,
    /// per edge: its two (triangle, side position) appearances, ordered by
    /// triangle index then position
    appearances: Vec<[(usize, usize); 2]>,
    punctures: usize,
}

impl Triangulation {
    pub fn new(edge_names: Vec<String>, triangles: Vec<[usize; 3]>) -> Result<Self, SurfaceError> {
        let n = edge_names.len();
        if 3 * triangles.len() != 2 * n {
            return Err(SurfaceError::InvalidTriangulation(format!(
                "side count mismatch: 3*{} triangles != 2*{} edges",
                triangles.len(),
                n
            )));
        }
        {
            let mut seen = std::collections::BTreeSet::new();
            for name in &edge_names {
                if !seen.insert(name) {
                    return Err(SurfaceError::InvalidTriangulation(format!(
                        "duplicate edge name {name:?}"
                    )));
                }
            }
        }
        let mut apps: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for (t, tri) in triangles.iter().enumerate() {
            if tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2] {
                return Err(SurfaceError::InvalidTriangulation(format!(
                    "self-folded triangle {t} is not supported"
                )));
            }
            for (pos, &e) in tri.iter().enumerate() {
                if e >= n {
                    return Err(SurfaceError::InvalidTriangulation(format!(
                        "edge index {e} out of range"
                    )));
                }
                apps[e].push((t, pos));
            }
        }
        let mut appearances = Vec::with_capacity(n);
        for (e, a) in apps.into_iter().enumerate() {
            if a.len() != 2 {
                return Err(SurfaceError::InvalidTriangulation(format!(
                    "edge {} appears {} times (expected 2)",
                    edge_names[e],
                    a.len()
                )));
            }
            appearances.push([a[0], a[1]]);
        }
        let mut tri = Triangulation {
            edge_names,
            triangles,
            appearances,
            punctures: 0,
        };
        tri.punctures = tri.count_punctures();
        Ok(tri)
    }

    pub fn edge_count(&self) -> usize {
        self.edge_names.len()
    }

    pub fn triangle_count(&self) -> usize {
        self.triangles.len()
    }

    pub fn punctures(&self) -> usize {
        self.punctures
    }

    pub fn edge_names(&self) -> &[String] {
        &self.edge_names
    }

    pub fn edge_name(&self, e: usize) -> &str {
        &self.edge_names[e]
    }

    pub fn edge_index(&self, name: &str) -> Option<usize> {
        self.edge_names.iter().position(|n| n == name)
    }

    pub fn triangle(&self, t: usize) -> [usize; 3] {
        self.triangles[t]
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    /// The two (triangle, position) side slots of an edge.
    pub fn appearances(&self, e: usize) -> [(usize, usize); 2] {
        self.appearances[e]
    }

    /// The appearance of an edge other than the given one.
    pub fn other_appearance(&self, e: usize, app: (usize, usize)) -> (usize, usize) {
        let [a, b] = self.appearances[e];
        if a == app {
            b
        } else {
            debug_assert_eq!(b, app);
            a
        }
    }

    /// Walks the corner cycles around punctures. From the corner of
    /// triangle t between sides u and u+1 the walk crosses the end of side
    /// u+1 and continues at the corresponding corner of the triangle on
    /// the other side of that edge.
    fn count_punctures(&self) -> usize {
        let total = 3 * self.triangles.len();
        let mut seen = vec![false; total];
        let mut cycles = 0;
        for start in 0..total {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                let (t, u) = (cur / 3, cur % 3);
                let next_edge = self.triangles[t][(u + 1) % 3];
                let (t2, p2) = self.other_appearance(next_edge, (t, (u + 1) % 3));
                cur = 3 * t2 + p2;
            }
        }
        cycles
    }

    /// The commutation matrix sigma = a - a^T, where a_ij counts the
    /// corners at which an end of edge j immediately succeeds an end of
    /// edge i counterclockwise around a puncture: each triangle corner
    /// (s_u, s_{u+1}) contributes one succession in its cyclic side order.
    pub fn sigma_matrix(&self) -> SigmaMatrix {
        let n = self.edge_count();
        let mut a = vec![vec![0i64; n]; n];
        for tri in &self.triangles {
            for u in 0..3 {
                let i = tri[u];
                let j = tri[(u + 1) % 3];
                a[i][j] += 1;
            }
        }
        let mut sigma = SigmaMatrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                sigma.set(i, j, a[i][j] - a[j][i]);
            }
        }
        sigma
    }
}

/// The 3x3 sigma matrix of a lone triangle: one corner succession per
/// cyclically adjacent side pair, so sigma_{u,u+1} = +1.
pub fn triangle_sigma() -> SigmaMatrix {
    SigmaMatrix::from_rows(&[vec![0, 1, -1], vec![-1, 0, 1], vec![1, -1, 0]])
}

/// One crossing of the curve through an edge; `slot` selects which of the
/// edge's two triangle sides the curve enters next.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Crossing {
    pub edge: usize,
    pub slot: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Turn {
    /// exit side is the cyclic predecessor of the entry side
    Left,
    /// exit side is the cyclic successor of the entry side
    Right,
}

/// A reference to a crossing: (component, index within component).
pub type CrossRef = (usize, usize);

/// One arc of the curve above a triangle, from crossing `start` to the
/// next crossing of the same component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Visit {
    pub start: CrossRef,
    pub triangle: usize,
    pub in_pos: usize,
    pub out_pos: usize,
    pub turn: Turn,
}

/// Validated embedded multicurve transverse to the triangulation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveDiagram {
    components: Vec<Vec<Crossing>>,
    /// all visits, indexed by flattened crossing order
    visits: Vec<Visit>,
    /// per triangle: visit indices ordered by elevation, highest first
    tri_visit_order: Vec<Vec<usize>>,
    /// per edge: crossing refs ordered by elevation, highest first
    edge_point_order: Vec<Vec<CrossRef>>,
    lambda_simple: bool,
    /// whether the projection to the surface is embedded (no double
    /// points); threading commutes with polynomial evaluation only then
    projection_embedded: bool,
}

impl CurveDiagram {
    pub fn components(&self) -> &[Vec<Crossing>] {
        &self.components
    }

    pub fn crossing(&self, r: CrossRef) -> Crossing {
        self.components[r.0][r.1]
    }

    pub fn total_crossings(&self) -> usize {
        self.components.iter().map(|c| c.len()).sum()
    }

    pub fn visits(&self) -> &[Visit] {
        &self.visits
    }

    /// The visit starting at a crossing ref.
    pub fn visit_at(&self, r: CrossRef) -> &Visit {
        self.visits.iter().find(|v| v.start == r).expect("visit exists")
    }

    pub fn tri_visit_order(&self) -> &[Vec<usize>] {
        &self.tri_visit_order
    }

    pub fn edge_point_order(&self) -> &[Vec<CrossRef>] {
        &self.edge_point_order
    }

    pub fn is_lambda_simple(&self) -> bool {
        self.lambda_simple
    }

    pub fn is_projection_embedded(&self) -> bool {
        self.projection_embedded
    }

    /// True when every component separately meets each triangle in at
    /// most one arc (the union may still share triangles across
    /// components, as a multicurve does).
    pub fn components_lambda_simple(&self) -> bool {
        let mut seen = std::collections::BTreeSet::new();
        for v in &self.visits {
            if !seen.insert((v.start.0, v.triangle)) {
                return false;
            }
        }
        true
    }

    /// The turn of the arc arriving at crossing (c, i), i.e. the visit
    /// starting at the previous crossing of the same component.
    pub fn turn_into(&self, c: usize, i: usize) -> Turn {
        let k = self.components[c].len();
        let prev = (i + k - 1) % k;
        self.visit_at((c, prev)).turn
    }
}

/// Validates raw crossing and elevation data into a curve diagram; the
/// projection is taken to be embedded.
pub fn build_curve(
    tri: &Triangulation,
    components: Vec<Vec<Crossing>>,
    edge_elevations: Vec<Vec<CrossRef>>,
    tri_elevations: Vec<Vec<CrossRef>>,
) -> Result<CurveDiagram, SurfaceError> {
    build_curve_with_projection(tri, components, edge_elevations, tri_elevations, true)
}

/// As `build_curve`, with an explicit flag recording whether the diagram
/// projects to an embedded multicurve in the surface.
pub fn build_curve_with_projection(
    tri: &Triangulation,
    components: Vec<Vec<Crossing>>,
    edge_elevations: Vec<Vec<CrossRef>>,
    tri_elevations: Vec<Vec<CrossRef>>,
    projection_embedded: bool,
) -> Result<CurveDiagram, SurfaceError> {
    if components.is_empty() || components.iter().all(|c| c.is_empty()) {
        return Err(SurfaceError::EmptyCurve);
    }
    if components.iter().any(|c| c.is_empty()) {
        return Err(SurfaceError::EmptyCurve);
    }
    // derive the visit list, checking cyclic consistency
    let mut visits = Vec::new();
    for (ci, comp) in components.iter().enumerate() {
        for (i, x) in comp.iter().enumerate() {
            if x.edge >= tri.edge_count() || x.slot >= 2 {
                return Err(SurfaceError::InconsistentCrossing(format!(
                    "crossing ({ci},{i}) out of range"
                )));
            }
            let entered = tri.appearances(x.edge)[x.slot];
            let next = comp[(i + 1) % comp.len()];
            if next.edge >= tri.edge_count() || next.slot >= 2 {
                return Err(SurfaceError::InconsistentCrossing(format!(
                    "crossing ({ci},{})",
                    (i + 1) % comp.len()
                )));
            }
            // the arc after x lives in the triangle x enters and must exit
            // through the side of that triangle carrying the next crossing
            let next_other = tri.other_appearance(next.edge, tri.appearances(next.edge)[next.slot]);
            if next_other.0 != entered.0 {
                return Err(SurfaceError::InconsistentCrossing(format!(
                    "crossings ({ci},{i}) -> ({ci},{}) do not cobound triangle {}",
                    (i + 1) % comp.len(),
                    entered.0
                )));
            }
            let in_pos = entered.1;
            let out_pos = next_other.1;
            if in_pos == out_pos {
                return Err(SurfaceError::InconsistentCrossing(format!(
                    "arc after ({ci},{i}) enters and exits the same side"
                )));
            }
            let turn = if (in_pos + 1) % 3 == out_pos {
                Turn::Right
            } else {
                Turn::Left
            };
            visits.push(Visit {
                start: (ci, i),
                triangle: entered.0,
                in_pos,
                out_pos,
                turn,
            });
        }
    }

    // crossing points per edge, visits per triangle
    let mut edge_points: Vec<Vec<CrossRef>> = vec![Vec::new(); tri.edge_count()];
    for (ci, comp) in components.iter().enumerate() {
        for (i, x) in comp.iter().enumerate() {
            edge_points[x.edge].push((ci, i));
        }
    }
    let mut tri_visits: Vec<Vec<usize>> = vec![Vec::new(); tri.triangle_count()];
    for (vi, v) in visits.iter().enumerate() {
        tri_visits[v.triangle].push(vi);
    }

    // elevation lists must be permutations of the actual points / visits
    if edge_elevations.len() != tri.edge_count() {
        return Err(SurfaceError::BadElevation(format!(
            "expected {} edge elevation lists, got {}",
            tri.edge_count(),
            edge_elevations.len()
        )));
    }
    for (e, order) in edge_elevations.iter().enumerate() {
        let mut sorted = order.clone();
        sorted.sort_unstable();
        let mut expected = edge_points[e].clone();
        expected.sort_unstable();
        if sorted != expected {
            return Err(SurfaceError::BadElevation(format!(
                "edge {} elevation list is not a permutation of its crossing points",
                tri.edge_name(e)
            )));
        }
    }
    if tri_elevations.len() != tri.triangle_count() {
        return Err(SurfaceError::BadElevation(format!(
            "expected {} triangle elevation lists, got {}",
            tri.triangle_count(),
            tri_elevations.len()
        )));
    }
    let mut tri_visit_order: Vec<Vec<usize>> = Vec::with_capacity(tri.triangle_count());
    for (t, order) in tri_elevations.iter().enumerate() {
        let mut indices = Vec::with_capacity(order.len());
        for r in order {
            let vi = visits
                .iter()
                .position(|v| v.start == *r && v.triangle == t)
                .ok_or_else(|| {
                    SurfaceError::BadElevation(format!(
                        "triangle {t} elevation entry ({},{}) is not a visit of that triangle",
                        r.0, r.1
                    ))
                })?;
            if indices.contains(&vi) {
                return Err(SurfaceError::BadElevation(format!(
                    "triangle {t} elevation entry repeated"
                )));
            }
            indices.push(vi);
        }
        if indices.len() != tri_visits[t].len() {
            return Err(SurfaceError::BadElevation(format!(
                "triangle {t} elevation list is not a permutation of its visits"
            )));
        }
        tri_visit_order.push(indices);
    }

    // cross-consistency: two visits of a triangle incident to the same
    // side must be ordered like their crossing points on that edge; this
    // is what keeps the biangle neighborhoods free of crossings
    for (t, order) in tri_visit_order.iter().enumerate() {
        for a in 0..order.len() {
            for b in (a + 1)..order.len() {
                let va = &visits[order[a]];
                let vb = &visits[order[b]];
                for pos in 0..3 {
                    let pa = visit_point_on_side(&components, va, pos);
                    let pb = visit_point_on_side(&components, vb, pos);
                    if let (Some(pa), Some(pb)) = (pa, pb) {
                        let e = tri.triangle(t)[pos];
                        let order_e = &edge_elevations[e];
                        let ia = order_e.iter().position(|r| *r == pa).unwrap();
                        let ib = order_e.iter().position(|r| *r == pb).unwrap();
                        if ia >= ib {
                            return Err(SurfaceError::BadElevation(format!(
                                "triangle {t} visit order conflicts with edge {} point order",
                                tri.edge_name(e)
                            )));
                        }
                    }
                }
            }
        }
    }

    let lambda_simple = tri_visits.iter().all(|v| v.len() <= 1);
    Ok(CurveDiagram {
        components,
        visits,
        tri_visit_order,
        edge_point_order: edge_elevations,
        lambda_simple,
        projection_embedded,
    })
}

/// The crossing point of a visit lying on the given side position of its
/// triangle, if any: the entry point, the exit point, or none.
fn visit_point_on_side(
    components: &[Vec<Crossing>],
    v: &Visit,
    pos: usize,
) -> Option<CrossRef> {
    if v.in_pos == pos {
        return Some(v.start);
    }
    if v.out_pos == pos {
        let (c, i) = v.start;
        return Some((c, (i + 1) % components[c].len()));
    }
    None
}

// ---- JSON schema ----

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EdgesField {
    Count(usize),
    Names(Vec<String>),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EdgeRef {
    Index(usize),
    Name(String),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CrossingData {
    pub edge: EdgeRef,
    pub slot: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ComponentsField {
    One(Vec<CrossingData>),
    Many(Vec<Vec<CrossingData>>),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ElevationData {
    #[serde(default)]
    pub edges: BTreeMap<String, Vec<(usize, usize)>>,
    #[serde(default)]
    pub triangles: BTreeMap<String, Vec<(usize, usize)>>,
}

fn default_true() -> bool {
    true
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CurveData {
    pub crossings: ComponentsField,
    pub elevations: ElevationData,
    /// whether the projection to the surface is embedded; curves drawn
    /// with a double point in the surface (resolved by elevation) set this
    /// to false
    #[serde(default = "default_true")]
    pub embedded_projection: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SurfaceData {
    pub edges: EdgesField,
    pub triangles: Vec<[EdgeRef; 3]>,
    #[serde(default)]
    pub curves: BTreeMap<String, CurveData>,
}

impl SurfaceData {
    pub fn parse(json: &str) -> Result<SurfaceData, SurfaceError> {
        serde_json::from_str(json).map_err(|e| SurfaceError::BadInput(e.to_string()))
    }

    pub fn triangulation(&self) -> Result<Triangulation, SurfaceError> {
        let edge_names: Vec<String> = match &self.edges {
            EdgesField::Count(n) => (1..=*n).map(|i| i.to_string()).collect(),
            EdgesField::Names(names) => names.clone(),
        };
        let resolve = |r: &EdgeRef| -> Result<usize, SurfaceError> {
            match r {
                EdgeRef::Index(i) => {
                    if *i < edge_names.len() {
                        Ok(*i)
                    } else {
                        Err(SurfaceError::BadInput(format!("edge index {i} out of range")))
                    }
                }
                EdgeRef::Name(n) => edge_names
                    .iter()
                    .position(|x| x == n)
                    .ok_or_else(|| SurfaceError::BadInput(format!("unknown edge {n:?}"))),
            }
        };
        let mut triangles = Vec::with_capacity(self.triangles.len());
        for t in &self.triangles {
            triangles.push([resolve(&t[0])?, resolve(&t[1])?, resolve(&t[2])?]);
        }
        Triangulation::new(edge_names, triangles)
    }

    pub fn curve(&self, tri: &Triangulation, name: &str) -> Result<CurveDiagram, SurfaceError> {
        let data = self
            .curves
            .get(name)
            .ok_or_else(|| SurfaceError::BadInput(format!("no curve named {name:?}")))?;
        build_curve_from_data(tri, data)
    }

    pub fn curve_names(&self) -> Vec<String> {
        self.curves.keys().cloned().collect()
    }
}

pub fn build_curve_from_data(
    tri: &Triangulation,
    data: &CurveData,
) -> Result<CurveDiagram, SurfaceError> {
    let raw_components = match &data.crossings {
        ComponentsField::One(v) => vec![v.clone()],
        ComponentsField::Many(vs) => vs.clone(),
    };
    let mut components = Vec::with_capacity(raw_components.len());
    for comp in &raw_components {
        let mut out = Vec::with_capacity(comp.len());
        for c in comp {
            let edge = match &c.edge {
                EdgeRef::Index(i) => *i,
                EdgeRef::Name(n) => tri
                    .edge_index(n)
                    .ok_or_else(|| SurfaceError::BadInput(format!("unknown edge {n:?}")))?,
            };
            out.push(Crossing { edge, slot: c.slot });
        }
        components.push(out);
    }
    let mut edge_elevations: Vec<Vec<CrossRef>> = vec![Vec::new(); tri.edge_count()];
    for (name, order) in &data.elevations.edges {
        let e = tri
            .edge_index(name)
            .ok_or_else(|| SurfaceError::BadInput(format!("unknown edge {name:?}")))?;
        edge_elevations[e] = order.clone();
    }
    let mut tri_elevations: Vec<Vec<CrossRef>> = vec![Vec::new(); tri.triangle_count()];
    for (key, order) in &data.elevations.triangles {
        let t: usize = key
            .parse()
            .map_err(|_| SurfaceError::BadInput(format!("bad triangle key {key:?}")))?;
        if t >= tri.triangle_count() {
            return Err(SurfaceError::BadInput(format!("triangle {t} out of range")));
        }
        tri_elevations[t] = order.clone();
    }
    build_curve_with_projection(
        tri,
        components,
        edge_elevations,
        tri_elevations,
        data.embedded_projection,
    )
}

/// Re-encodes a validated diagram in the input schema.
pub fn curve_to_data(tri: &Triangulation, c: &CurveDiagram) -> CurveData {
    let components: Vec<Vec<CrossingData>> = c
        .components()
        .iter()
        .map(|comp| {
            comp.iter()
                .map(|x| CrossingData {
                    edge: EdgeRef::Name(tri.edge_name(x.edge).to_string()),
                    slot: x.slot,
                })
                .collect()
        })
        .collect();
    let mut edges = BTreeMap::new();
    for (e, order) in c.edge_point_order().iter().enumerate() {
        if !order.is_empty() {
            edges.insert(tri.edge_name(e).to_string(), order.clone());
        }
    }
    let mut triangles = BTreeMap::new();
    for (t, order) in c.tri_visit_order().iter().enumerate() {
        if !order.is_empty() {
            triangles.insert(
                t.to_string(),
                order.iter().map(|&vi| c.visits()[vi].start).collect(),
            );
        }
    }
    CurveData {
        crossings: ComponentsField::Many(components),
        elevations: ElevationData { edges, triangles },
        embedded_projection: c.is_projection_embedded(),
    }
}

// ---- fixtures ----

pub const FIXTURE_NAMES: [&str; 2] = ["punctured_torus", "twice_punctured_plane"];

pub fn fixture_json(name: &str) -> Result<&'static str, SurfaceError> {
    match name {
        "punctured_torus" => Ok(include_str!("../fixtures/punctured_torus.json")),
        "twice_punctured_plane" => Ok(include_str!("../fixtures/twice_punctured_plane.json")),
        other => Err(SurfaceError::UnknownFixture(other.to_string())),
    }
}

/// A fixture surface together with its named curves.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: String,
    pub triangulation: Triangulation,
    pub curves: BTreeMap<String, CurveDiagram>,
}

pub fn fixture(name: &str) -> Result<Fixture, SurfaceError> {
    let data = SurfaceData::parse(fixture_json(name)?)?;
    let triangulation = data.triangulation()?;
    let mut curves = BTreeMap::new();
    for curve_name in data.curve_names() {
        curves.insert(curve_name.clone(), data.curve(&triangulation, &curve_name)?);
    }
    Ok(Fixture {
        name: name.to_string(),
        triangulation,
        curves,
    })
}
