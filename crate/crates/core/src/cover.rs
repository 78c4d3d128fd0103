//! Degree bookkeeping for admissible double covers of stable curves.
//!
//! A stable curve `C` is modelled by its dual graph: components with their genera and one edge
//! per node (self-loops are nodes of a single component). For a line bundle `L` on the cover
//! with norm `omega_C`, the degree on the component over `C_i` is `2 p_i - 2 + b_i`, where `p_i`
//! is the arithmetic genus of `C_i` and `b_i` counts its intersections with the other
//! components.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `deg(L|C_i) = 2 p - 2 + b`.
pub fn degree_on_component(genus: i64, b: i64) -> i64 {
    2 * genus - 2 + b
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct UpstairsGenus {
    pub genus: i64,
    /// Set when `b < 4`, outside the range where the cover has at least 4 branch points.
    pub few_branch_points: bool,
}

/// Genus of the double cover of a component of genus `genus` meeting the rest in `b` points:
/// `2 genus - 1 + b/2`.
pub fn genus_upstairs(genus: i64, b: i64) -> Result<UpstairsGenus> {
    if b % 2 != 0 {
        return Err(Error::InvalidArgument(format!("branch count {b} is odd")));
    }
    let g = 2 * genus - 1 + b / 2;
    if b >= 4 {
        debug_assert!(g >= 1);
    }
    Ok(UpstairsGenus { genus: g, few_branch_points: b < 4 })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub id: i64,
    pub genus: u32,
}

/// Dual graph of a nodal curve, as read from JSON:
/// `{"components":[{"id":0,"genus":1}],"edges":[[0,0]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverGraph {
    pub components: Vec<Component>,
    pub edges: Vec<[i64; 2]>,
}

impl CoverGraph {
    fn index(&self) -> Result<BTreeMap<i64, usize>> {
        let mut idx = BTreeMap::new();
        for (i, c) in self.components.iter().enumerate() {
            if idx.insert(c.id, i).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate component id {}", c.id)));
            }
        }
        if idx.is_empty() {
            return Err(Error::InvalidGraph("no components".into()));
        }
        for e in &self.edges {
            for end in e {
                if !idx.contains_key(end) {
                    return Err(Error::InvalidGraph(format!("edge refers to unknown component {end}")));
                }
            }
        }
        Ok(idx)
    }

    /// Edges as pairs of component positions.
    fn resolved_edges(&self) -> Result<Vec<(usize, usize)>> {
        let idx = self.index()?;
        Ok(self.edges.iter().map(|[a, b]| (idx[a], idx[b])).collect())
    }

    pub fn is_connected(&self) -> Result<bool> {
        let edges = self.resolved_edges()?;
        let n = self.components.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        for (a, b) in edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
        let root = find(&mut parent, 0);
        Ok((0..n).all(|i| find(&mut parent, i) == root))
    }

    /// `sum genus + #edges - #components + 1`.
    pub fn arithmetic_genus(&self) -> i64 {
        self.components.iter().map(|c| c.genus as i64).sum::<i64>() + self.edges.len() as i64
            - self.components.len() as i64
            + 1
    }

    /// Number of nodes joining the component set `side` (a bitmask) to its complement.
    pub fn crossing_count(&self, side: u64) -> Result<usize> {
        let edges = self.resolved_edges()?;
        Ok(edges
            .iter()
            .filter(|(a, b)| ((side >> a) & 1) != ((side >> b) & 1))
            .count())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentReport {
    pub id: i64,
    /// Arithmetic genus of the component (graph genus plus self-loops).
    pub genus: i64,
    /// Intersections with the other components.
    pub b: i64,
    pub degree: i64,
    pub genus_upstairs: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CoverViolation {
    GenusNotSix { genus: i64 },
    /// A split `C = C1 + C2` meeting in fewer than 4 points.
    CrossingBelowFour { side: Vec<i64>, crossing: usize },
    OddCrossing { side: Vec<i64>, crossing: usize },
    OddDegree { id: i64, degree: i64 },
    DegreeBelowBound { id: i64, degree: i64, bound: i64 },
}

impl fmt::Display for CoverViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoverViolation::GenusNotSix { genus } => write!(f, "arithmetic genus {genus}, expected 6"),
            CoverViolation::CrossingBelowFour { side, crossing } => {
                write!(f, "crossing < 4: components {side:?} meet the rest in {crossing} points")
            }
            CoverViolation::OddCrossing { side, crossing } => {
                write!(f, "odd crossing: components {side:?} meet the rest in {crossing} points")
            }
            CoverViolation::OddDegree { id, degree } => write!(f, "component {id}: odd degree {degree}"),
            CoverViolation::DegreeBelowBound { id, degree, bound } => {
                write!(f, "component {id}: degree {degree} below 2p + 2 = {bound}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverReport {
    pub arithmetic_genus: i64,
    pub components: Vec<ComponentReport>,
    pub violations: Vec<CoverViolation>,
}

impl CoverReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// Violations other than the genus requirement.
    pub fn structural_violations(&self) -> impl Iterator<Item = &CoverViolation> {
        self.violations.iter().filter(|v| !matches!(v, CoverViolation::GenusNotSix { .. }))
    }
}

/// Largest graph whose splits are enumerated exhaustively.
pub const MAX_SPLIT_COMPONENTS: usize = 24;

/// Checks the admissible-cover constraints on a dual graph.
///
/// (a) `p_a(C) = 6` when `require_genus_six`; (b) every split into two nonempty unions of
/// components meets in an even number of points, at least 4; (c) each component degree is
/// even and, for reducible curves, at least `2 p_i + 2`.
pub fn check_cover_graph(graph: &CoverGraph, require_genus_six: bool) -> Result<CoverReport> {
    let edges = graph.resolved_edges()?;
    if !graph.is_connected()? {
        return Err(Error::Disconnected);
    }
    let n = graph.components.len();
    if n > MAX_SPLIT_COMPONENTS {
        return Err(Error::InvalidGraph(format!("{n} components exceed the split enumeration limit")));
    }
    let mut violations = Vec::new();
    let pa = graph.arithmetic_genus();
    if require_genus_six && pa != 6 {
        violations.push(CoverViolation::GenusNotSix { genus: pa });
    }

    // component 0 always stays on the complementary side, so each split is seen once
    for mask in 1u64..(1 << (n - 1)) {
        let side = mask << 1;
        let crossing = edges.iter().filter(|(a, b)| ((side >> a) & 1) != ((side >> b) & 1)).count();
        let ids = || (0..n).filter(|i| (side >> i) & 1 == 1).map(|i| graph.components[i].id).collect();
        if crossing < 4 {
            violations.push(CoverViolation::CrossingBelowFour { side: ids(), crossing });
        } else if crossing % 2 == 1 {
            violations.push(CoverViolation::OddCrossing { side: ids(), crossing });
        }
    }

    let mut components = Vec::with_capacity(n);
    for (i, c) in graph.components.iter().enumerate() {
        let loops = edges.iter().filter(|&&(a, b)| a == i && b == i).count() as i64;
        let b = edges.iter().filter(|&&(a, b)| (a == i) != (b == i)).count() as i64;
        let genus = c.genus as i64 + loops;
        let degree = degree_on_component(genus, b);
        if degree % 2 != 0 {
            violations.push(CoverViolation::OddDegree { id: c.id, degree });
        } else if n > 1 && degree < 2 * genus + 2 {
            violations.push(CoverViolation::DegreeBelowBound { id: c.id, degree, bound: 2 * genus + 2 });
        }
        components.push(ComponentReport {
            id: c.id,
            genus,
            b,
            degree,
            genus_upstairs: 2 * genus - 1 + b.div_euclid(2),
        });
    }
    Ok(CoverReport { arithmetic_genus: pa, components, violations })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CliffordVerdict {
    pub bound: i64,
    pub allowed: bool,
    /// `h0 = d/2 + 1`: only the trivial bundle, the dualizing sheaf, or a nonsingular `g^1_2`.
    pub equality: bool,
}

/// `h0 <= floor(d/2) + 1`.
pub fn clifford_bound(d: u32, claimed_h0: u32) -> CliffordVerdict {
    let bound = d as i64 / 2 + 1;
    CliffordVerdict {
        bound,
        allowed: claimed_h0 as i64 <= bound,
        equality: claimed_h0 as i64 == bound,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseClassification {
    /// `h0(L) = 6`: the curve is hyperelliptic and the singular locus is positive dimensional.
    Hyperelliptic,
    /// `(4, 0)` does not occur.
    Impossible,
    /// `(3, 1)`: a plane quintic with `L` pulled back from its `g^2_5`, or a positive
    /// dimensional singular locus.
    PlaneQuinticOrPositiveDimensional,
    /// `(2, 2)` and `(2, 0)`.
    MultiplicityTwo,
    /// `(1, 1)`.
    SmoothPoint,
}

impl fmt::Display for CaseClassification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseClassification::Hyperelliptic => "hyperelliptic; dim Xi_sing >= 1",
            CaseClassification::Impossible => "impossible",
            CaseClassification::PlaneQuinticOrPositiveDimensional => {
                "plane quintic or dim Xi_sing >= 1"
            }
            CaseClassification::MultiplicityTwo => "multiplicity 2",
            CaseClassification::SmoothPoint => "smooth point",
        })
    }
}

/// Classifies a split `h0(L) = n1 + n2` of an invariant line bundle's sections.
pub fn classify_case(n1: u32, n2: u32) -> Result<CaseClassification> {
    if n1 < n2 {
        return Err(Error::InvalidArgument(format!("expected n1 >= n2, got ({n1}, {n2})")));
    }
    Ok(match (n1 + n2, n1, n2) {
        (6, _, _) => CaseClassification::Hyperelliptic,
        (4, 4, 0) => CaseClassification::Impossible,
        (4, 3, 1) => CaseClassification::PlaneQuinticOrPositiveDimensional,
        (4, 2, 2) | (2, 2, 0) => CaseClassification::MultiplicityTwo,
        (2, 1, 1) => CaseClassification::SmoothPoint,
        (total, _, _) => {
            return Err(Error::InvalidArgument(format!("h0 total {total} is not one of 2, 4, 6")));
        }
    })
}

/// Partitions of `total` into at least two parts, each at least `part_min`, parts in
/// descending order and partitions listed in reverse lexicographic order.
pub fn case3_partitions(total: u32, part_min: u32) -> Result<Vec<Vec<u32>>> {
    if total < 2 {
        return Err(Error::InvalidArgument(format!("total {total} < 2")));
    }
    if part_min == 0 {
        return Err(Error::InvalidArgument("parts must be positive".into()));
    }
    fn rec(rest: u32, max: u32, min: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (min..=max.min(rest)).rev() {
            cur.push(part);
            rec(rest - part, part, min, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, total, part_min, &mut Vec::new(), &mut out);
    out.retain(|p| p.len() >= 2);
    Ok(out)
}
