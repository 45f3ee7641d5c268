//! Degenerations of double covers of the 4-pointed line in characteristic 2.
//!
//! A geometric point `(λ_s, j_s)` of the special fiber is sent to one of four
//! admissible-cover shapes, given as a [`StableMapType`] together with the
//! arithmetic witnesses that pin it down.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::elliptic::{weierstrass_j, EllipticError, WeierstrassCurve};
use crate::field::{Field, FieldElem, FieldError, P1Point};
use crate::graph::RawGraph;
use crate::legendre::{
    char2_singular_point, singularity_type, Boundary, LegendreCurve, LegendreError, OrbitMap,
    SingularityKind,
};
use crate::stable_map::{
    riemann_hurwitz_genus, Behavior, EdgeImage, FinitenessAttributes, MapViolation,
    RawStableMap, StableMapType, VertexImage,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("(λ = {lambda}, j = {j}) is not on the characteristic-2 fiber: λ ∉ {{0, 1, ∞}} needs j = 0")]
    NotOnFiber { lambda: String, j: String },
    #[error("the classifier works over fields of characteristic 2, not {0}")]
    WrongCharacteristic(String),
    #[error("bad relabeling: {0}")]
    Relabeling(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Legendre(#[from] LegendreError),
    #[error(transparent)]
    Elliptic(#[from] EllipticError),
}

/// One of the four marked points `0, 1, ∞, λ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Marking {
    Zero,
    One,
    Infinity,
    Lambda,
}

impl Marking {
    pub const ALL: [Marking; 4] = [Marking::Zero, Marking::One, Marking::Infinity, Marking::Lambda];

    pub fn label(self) -> &'static str {
        match self {
            Marking::Zero => "0",
            Marking::One => "1",
            Marking::Infinity => "∞",
            Marking::Lambda => "λ",
        }
    }

    fn index(self) -> usize {
        self as usize
    }

    fn boundary(self) -> Option<Boundary> {
        match self {
            Marking::Zero => Some(Boundary::Zero),
            Marking::One => Some(Boundary::One),
            Marking::Infinity => Some(Boundary::Infinity),
            Marking::Lambda => None,
        }
    }

    fn from_boundary(b: Boundary) -> Marking {
        match b {
            Boundary::Zero => Marking::Zero,
            Boundary::One => Marking::One,
            Boundary::Infinity => Marking::Infinity,
        }
    }
}

impl fmt::Display for Marking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Marking {
    type Err = ClassifyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "0" => Ok(Marking::Zero),
            "1" => Ok(Marking::One),
            "∞" | "inf" | "infinity" => Ok(Marking::Infinity),
            "λ" | "lambda" | "l" => Ok(Marking::Lambda),
            other => Err(ClassifyError::Relabeling(format!("unknown marking {other:?}"))),
        }
    }
}

/// A permutation of the four markings; a leg labeled `m` is relabeled `σ(m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Relabeling([Marking; 4]);

impl Relabeling {
    pub fn identity() -> Self {
        Relabeling(Marking::ALL)
    }

    pub fn from_images(images: [Marking; 4]) -> Result<Self, ClassifyError> {
        let mut seen = [false; 4];
        for m in images {
            if std::mem::replace(&mut seen[m.index()], true) {
                return Err(ClassifyError::Relabeling(format!("{m} appears twice")));
            }
        }
        Ok(Relabeling(images))
    }

    pub fn transposition(a: Marking, b: Marking) -> Self {
        let mut images = Marking::ALL;
        images.swap(a.index(), b.index());
        Relabeling(images)
    }

    /// All 24 relabelings, in lexicographic order of image tuples.
    pub fn all() -> Vec<Relabeling> {
        let mut out = Vec::with_capacity(24);
        for a in Marking::ALL {
            for b in Marking::ALL {
                for c in Marking::ALL {
                    for d in Marking::ALL {
                        if let Ok(r) = Relabeling::from_images([a, b, c, d]) {
                            out.push(r);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, m: Marking) -> Marking {
        self.0[m.index()]
    }

    /// Relabels a marking string; unknown labels pass through.
    pub fn apply_label(&self, label: &str) -> String {
        match label.parse::<Marking>() {
            Ok(m) => self.apply(m).label().to_string(),
            Err(_) => label.to_string(),
        }
    }

    pub fn inverse(&self) -> Relabeling {
        let mut images = Marking::ALL;
        for m in Marking::ALL {
            images[self.apply(m).index()] = m;
        }
        Relabeling(images)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Relabeling) -> Relabeling {
        Relabeling(Marking::ALL.map(|m| self.apply(other.apply(m))))
    }

    /// The induced map on the λ-line. Each boundary value `b` of λ is the
    /// collision of `λ` with `b`; after relabeling, `λ` collides with the
    /// image pair's other member.
    pub fn orbit_map(&self) -> OrbitMap {
        let images = Boundary::ALL.map(|b| {
            let pair = [self.apply(Marking::from_boundary(b)), self.apply(Marking::Lambda)];
            let partner = if pair.contains(&Marking::Lambda) {
                pair.into_iter().find(|&m| m != Marking::Lambda)
            } else {
                // the complementary pair holds λ
                Marking::ALL
                    .into_iter()
                    .find(|m| !pair.contains(m) && *m != Marking::Lambda)
            };
            partner
                .and_then(Marking::boundary)
                .expect("a pair through λ has one boundary marking")
        });
        OrbitMap::from_action_on_boundary(images).expect("every relabeling induces an orbit map")
    }
}

impl fmt::Display for Relabeling {
    /// Cycle notation, `()` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = [false; 4];
        let mut any = false;
        for start in Marking::ALL {
            if seen[start.index()] || self.apply(start) == start {
                continue;
            }
            any = true;
            write!(f, "({start}")?;
            seen[start.index()] = true;
            let mut m = self.apply(start);
            while m != start {
                write!(f, " {m}")?;
                seen[m.index()] = true;
                m = self.apply(m);
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

impl FromStr for Relabeling {
    type Err = ClassifyError;

    /// Cycle notation such as `(0 1)(λ ∞)`; the empty string and `()` are the identity.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut result = Relabeling::identity();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let body_end = rest
                .find(')')
                .filter(|_| rest.starts_with('('))
                .ok_or_else(|| ClassifyError::Relabeling(format!("malformed cycle in {s:?}")))?;
            let cycle: Vec<Marking> = rest[1..body_end]
                .split([' ', ','])
                .filter(|t| !t.is_empty())
                .map(str::parse)
                .collect::<Result<_, _>>()?;
            let mut distinct = cycle.clone();
            distinct.sort();
            distinct.dedup();
            if distinct.len() != cycle.len() {
                return Err(ClassifyError::Relabeling(format!("repeated marking in {s:?}")));
            }
            let mut images = Marking::ALL;
            for (i, &m) in cycle.iter().enumerate() {
                images[m.index()] = cycle[(i + 1) % cycle.len()];
            }
            let cycle_perm = Relabeling::from_images(images)?;
            // cycles are composed right to left
            result = result.compose(&cycle_perm);
            rest = rest[body_end + 1..].trim_start();
        }
        Ok(result)
    }
}

impl Serialize for Relabeling {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A geometric point `(λ_s, j_s)` over a field of characteristic 2.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct H24Point {
    #[serde(skip)]
    field: Field,
    lambda_s: P1Point,
    j_s: P1Point,
}

impl H24Point {
    pub fn new(field: Field, lambda_s: P1Point, j_s: P1Point) -> Result<Self, ClassifyError> {
        if field.characteristic() != 2 {
            return Err(ClassifyError::WrongCharacteristic(field.to_string()));
        }
        for v in [&lambda_s, &j_s].into_iter().filter_map(P1Point::finite) {
            if v.field() != field {
                return Err(FieldError::FieldMismatch(field.to_string(), v.field().to_string()).into());
            }
        }
        Ok(H24Point {
            field,
            lambda_s,
            j_s,
        })
    }

    pub fn parse(field: Field, lambda: &str, j: &str) -> Result<Self, ClassifyError> {
        Self::new(field, field.parse_p1(lambda)?, field.parse_p1(j)?)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn lambda_s(&self) -> &P1Point {
        &self.lambda_s
    }

    pub fn j_s(&self) -> &P1Point {
        &self.j_s
    }

    /// The same point with its markings relabeled by `σ`.
    pub fn relabel(&self, sigma: &Relabeling) -> H24Point {
        H24Point {
            field: self.field,
            lambda_s: sigma.orbit_map().apply(self.field, &self.lambda_s),
            j_s: self.j_s.clone(),
        }
    }

    /// Every point of `P¹(F) × P¹(F)`.
    pub fn all(field: Field) -> Result<Vec<H24Point>, ClassifyError> {
        let line: Vec<P1Point> = field
            .elements()?
            .map(P1Point::Finite)
            .chain([P1Point::Infinity])
            .collect();
        let mut out = Vec::with_capacity(line.len() * line.len());
        for l in &line {
            for j in &line {
                out.push(H24Point::new(field, l.clone(), j.clone())?);
            }
        }
        Ok(out)
    }
}

/// The four irreducible components of the special fiber.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Component {
    /// `j = 0`.
    J0,
    #[serde(rename = "Λ0")]
    Lambda0,
    #[serde(rename = "Λ1")]
    Lambda1,
    #[serde(rename = "Λ∞")]
    LambdaInf,
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Component::J0 => "J0",
            Component::Lambda0 => "Λ0",
            Component::Lambda1 => "Λ1",
            Component::LambdaInf => "Λ∞",
        })
    }
}

/// Components through `p`; empty off the fiber.
pub fn component_membership(p: &H24Point) -> Vec<Component> {
    let mut out = Vec::new();
    if p.j_s.is_value(0) {
        out.push(Component::J0);
    }
    match Boundary::of(&p.lambda_s) {
        Some(Boundary::Zero) => out.push(Component::Lambda0),
        Some(Boundary::One) => out.push(Component::Lambda1),
        Some(Boundary::Infinity) => out.push(Component::LambdaInf),
        None => {}
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Case {
    Case1,
    Case2,
    Case3,
    Case4,
}

impl Case {
    /// Number of source components.
    pub fn component_count(self) -> usize {
        match self {
            Case::Case1 => 2,
            Case::Case2 => 3,
            Case::Case3 | Case::Case4 => 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenusCheck {
    pub source: i64,
    pub target: i64,
    /// Genus of a double cover of P¹ branched at 4 points.
    pub riemann_hurwitz: i64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabilityCheck {
    pub map: bool,
    pub source_pointed: bool,
    pub target_pointed: bool,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeCheck {
    pub total_degree: u32,
    pub conserved: bool,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificates {
    pub genus_check: GenusCheck,
    pub stability_check: StabilityCheck,
    pub degree_check: DegreeCheck,
    pub finiteness_attributes: FinitenessAttributes,
}

impl Certificates {
    pub fn of(map: &StableMapType) -> Certificates {
        let rh = riemann_hurwitz_genus(2, 0, 4).expect("double cover branched at 4 points");
        let source = map.source().arithmetic_genus();
        let target = map.target().arithmetic_genus();
        let map_stable = map.map_stability().stable;
        let source_pointed = map.source().pointed_stability().stable;
        let target_pointed = map.target().pointed_stability().stable;
        let conserved = map.degree_conservation();
        Certificates {
            genus_check: GenusCheck {
                source,
                target,
                riemann_hurwitz: rh,
                holds: source == 1 && target == 0 && source == rh,
            },
            stability_check: StabilityCheck {
                map: map_stable,
                source_pointed,
                target_pointed,
                holds: map_stable && source_pointed && target_pointed,
            },
            degree_check: DegreeCheck {
                total_degree: map.total_degree(),
                conserved,
                holds: conserved && map.total_degree() == 2,
            },
            finiteness_attributes: map.finiteness_attributes(),
        }
    }

    pub fn holds(&self) -> bool {
        self.genus_check.holds
            && self.stability_check.holds
            && self.degree_check.holds
            && !self.finiteness_attributes.is_finite
            && self.finiteness_attributes.has_inseparable_part
    }
}

/// Where the elliptic tail meets the inseparable component in case 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Attachment {
    pub x: FieldElem,
    pub y: FieldElem,
    pub singularity: SingularityKind,
    pub certified: bool,
}

/// An explicit elliptic curve with the tail's `j`-invariant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TailWitness {
    /// `a1, a2, a3, a4, a6`.
    pub coefficients: [FieldElem; 5],
    pub j: FieldElem,
    pub supersingular: bool,
    pub two_torsion: u64,
}

impl TailWitness {
    fn new(curve: WeierstrassCurve) -> Result<Self, ClassifyError> {
        Ok(TailWitness {
            j: weierstrass_j(&curve),
            supersingular: curve.is_supersingular()?,
            two_torsion: curve.two_torsion_count()?,
            coefficients: curve.coefficients().clone(),
        })
    }

    /// `y² + y = x³`, the supersingular curve with `j = 0`.
    fn supersingular(field: Field) -> Result<Self, ClassifyError> {
        let z = field.zero();
        let o = field.one();
        Self::new(WeierstrassCurve::new([z.clone(), z.clone(), o, z.clone(), z])?)
    }

    /// `y² + xy = x³ + 1/j`, ordinary with invariant `j ≠ 0`.
    fn ordinary(j: &FieldElem) -> Result<Self, ClassifyError> {
        let f = j.field();
        let z = f.zero();
        Self::new(WeierstrassCurve::new([f.one(), z.clone(), z.clone(), z, j.inv()?])?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationResult {
    pub case: Case,
    pub point: H24Point,
    pub components: Vec<Component>,
    pub map_type: StableMapType,
    pub certificates: Certificates,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub attachment: Option<Attachment>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tail: Option<TailWitness>,
}

impl ClassificationResult {
    pub fn source_component_count(&self) -> usize {
        self.map_type.source().vertices().len()
    }
}

fn strings<const N: usize>(pairs: [(&str, VertexImage); N]) -> BTreeMap<String, VertexImage> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn keyed<T: Copy, const N: usize>(pairs: [(&str, T); N]) -> BTreeMap<String, T> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn identity_legs() -> BTreeMap<String, String> {
    Marking::ALL
        .iter()
        .map(|m| (m.label().to_string(), m.label().to_string()))
        .collect()
}

const INSEP: Behavior = Behavior::Inseparable { degree: 2 };

/// Target for cases 2 to 4: two lines joined at one node, `0, λ` on `D0`.
fn split_target() -> RawGraph {
    RawGraph::default()
        .vertex("D0", 0)
        .vertex("D1", 0)
        .edge("D0", "D1")
        .leg("0", "D0")
        .leg("λ", "D0")
        .leg("1", "D1")
        .leg("∞", "D1")
}

fn case_map(case: Case) -> RawStableMap {
    let node = || VertexImage::Node { node: 0 };
    let d0 = || VertexImage::vertex("D0");
    let d1 = || VertexImage::vertex("D1");
    let over_node = EdgeImage::Edge(0);
    match case {
        Case::Case1 => RawStableMap {
            source: RawGraph::default()
                .vertex("C0", 0)
                .vertex("C1", 1)
                .edge("C0", "C1")
                .leg("0", "C0")
                .leg("1", "C0")
                .leg("∞", "C0")
                .leg("λ", "C0"),
            target: RawGraph::default()
                .vertex("D", 0)
                .leg("0", "D")
                .leg("1", "D")
                .leg("∞", "D")
                .leg("λ", "D"),
            vertex_map: strings([("C0", VertexImage::vertex("D")), ("C1", VertexImage::vertex("D"))]),
            edge_map: vec![EdgeImage::Vertex("D".into())],
            leg_map: identity_legs(),
            degree: keyed([("C0", 2), ("C1", 0)]),
            behavior: keyed([("C0", INSEP), ("C1", Behavior::Contracted)]),
            total_degree: 2,
            genus: Some(1),
        },
        Case::Case2 => RawStableMap {
            source: RawGraph::default()
                .vertex("C0_1", 0)
                .vertex("C1", 1)
                .vertex("C0_2", 0)
                .edge("C0_1", "C1")
                .edge("C1", "C0_2")
                .leg("0", "C0_1")
                .leg("λ", "C0_1")
                .leg("1", "C0_2")
                .leg("∞", "C0_2"),
            target: split_target(),
            vertex_map: strings([("C0_1", d0()), ("C1", node()), ("C0_2", d1())]),
            edge_map: vec![over_node.clone(), over_node],
            leg_map: identity_legs(),
            degree: keyed([("C0_1", 2), ("C1", 0), ("C0_2", 2)]),
            behavior: keyed([("C0_1", INSEP), ("C1", Behavior::Contracted), ("C0_2", INSEP)]),
            total_degree: 2,
            genus: Some(1),
        },
        Case::Case3 => RawStableMap {
            source: RawGraph::default()
                .vertex("C0_1", 0)
                .vertex("C1_1", 0)
                .vertex("C1_2", 0)
                .vertex("C0_2", 0)
                .edge("C0_1", "C1_1")
                .edge("C1_1", "C1_2")
                .edge("C1_1", "C1_2")
                .edge("C1_2", "C0_2")
                .leg("0", "C0_1")
                .leg("λ", "C0_1")
                .leg("1", "C0_2")
                .leg("∞", "C0_2"),
            target: split_target(),
            vertex_map: strings([
                ("C0_1", d0()),
                ("C1_1", node()),
                ("C1_2", node()),
                ("C0_2", d1()),
            ]),
            edge_map: vec![over_node; 4],
            leg_map: identity_legs(),
            degree: keyed([("C0_1", 2), ("C1_1", 0), ("C1_2", 0), ("C0_2", 2)]),
            behavior: keyed([
                ("C0_1", INSEP),
                ("C1_1", Behavior::Contracted),
                ("C1_2", Behavior::Contracted),
                ("C0_2", INSEP),
            ]),
            total_degree: 2,
            genus: Some(1),
        },
        Case::Case4 => RawStableMap {
            source: RawGraph::default()
                .vertex("C1", 1)
                .vertex("C0'", 0)
                .vertex("C0_1", 0)
                .vertex("C0_2", 0)
                .edge("C1", "C0'")
                .edge("C0'", "C0_1")
                .edge("C0'", "C0_2")
                .leg("0", "C0_1")
                .leg("λ", "C0_1")
                .leg("1", "C0_2")
                .leg("∞", "C0_2"),
            target: split_target(),
            vertex_map: strings([
                ("C1", node()),
                ("C0'", node()),
                ("C0_1", d0()),
                ("C0_2", d1()),
            ]),
            edge_map: vec![over_node; 3],
            leg_map: identity_legs(),
            degree: keyed([("C1", 0), ("C0'", 0), ("C0_1", 2), ("C0_2", 2)]),
            behavior: keyed([
                ("C1", Behavior::Contracted),
                ("C0'", Behavior::Contracted),
                ("C0_1", INSEP),
                ("C0_2", INSEP),
            ]),
            total_degree: 2,
            genus: Some(1),
        },
    }
}

/// The validated map type of a case with the standard labeling
/// (`λ` colliding with `0` in cases 2 to 4).
pub fn canonical_map_type(case: Case) -> StableMapType {
    case_map(case)
        .validate()
        .unwrap_or_else(|v| panic!("{case:?} map type is invalid: {v:?}"))
}

fn attachment(lambda: &FieldElem) -> Result<Attachment, ClassifyError> {
    let curve = LegendreCurve::new(lambda.clone())?;
    let point = char2_singular_point(&curve)?;
    let kind = singularity_type(&curve)?.kind;
    Ok(Attachment {
        certified: point.certificate.holds() && kind == SingularityKind::NonNode,
        x: point.x,
        y: point.y,
        singularity: kind,
    })
}

/// Relabeling taking a boundary value of `λ` to `0`.
fn to_zero(b: Boundary) -> Relabeling {
    match b {
        Boundary::Zero => Relabeling::identity(),
        Boundary::One => Relabeling::transposition(Marking::Zero, Marking::One),
        Boundary::Infinity => Relabeling::transposition(Marking::Zero, Marking::Infinity),
    }
}

fn relabel_map(map: &StableMapType, sigma: &Relabeling) -> StableMapType {
    map.relabel(
        |v| v.to_string(),
        |v| v.to_string(),
        |m| sigma.apply_label(m),
    )
    .unwrap_or_else(|v: Vec<MapViolation>| panic!("relabeling broke a valid map: {v:?}"))
}

pub fn classify(p: &H24Point) -> Result<ClassificationResult, ClassifyError> {
    let field = p.field;
    let j_zero = p.j_s.is_value(0);
    let (case, map_type, attachment, tail) = match (Boundary::of(&p.lambda_s), &p.lambda_s) {
        (None, P1Point::Finite(lambda)) if j_zero => (
            Case::Case1,
            canonical_map_type(Case::Case1),
            Some(attachment(lambda)?),
            Some(TailWitness::supersingular(field)?),
        ),
        (None, _) => {
            return Err(ClassifyError::NotOnFiber {
                lambda: p.lambda_s.to_string(),
                j: p.j_s.to_string(),
            })
        }
        (Some(b), _) => {
            let (case, tail) = match &p.j_s {
                P1Point::Infinity => (Case::Case3, None),
                _ if j_zero => (Case::Case4, Some(TailWitness::supersingular(field)?)),
                P1Point::Finite(j) => (Case::Case2, Some(TailWitness::ordinary(j)?)),
            };
            // σ is an involution, so it also carries the λ = 0 shape back to b
            let sigma = to_zero(b);
            (case, relabel_map(&canonical_map_type(case), &sigma), None, tail)
        }
    };
    Ok(ClassificationResult {
        case,
        point: p.clone(),
        components: component_membership(p),
        certificates: Certificates::of(&map_type),
        map_type,
        attachment,
        tail,
    })
}

/// Applies `σ` to the markings of a classification and recomputes all
/// derived data for the relabeled point.
pub fn s4_relabel(r: &ClassificationResult, sigma: &Relabeling) -> Result<ClassificationResult, ClassifyError> {
    let point = r.point.relabel(sigma);
    let map_type = relabel_map(&r.map_type, sigma);
    let attachment = match (&r.attachment, point.lambda_s.finite()) {
        (Some(old), Some(lambda)) => {
            let mut new = attachment(lambda)?;
            // the coordinate change on the x-line has coefficients in GF(2),
            // so it commutes with square roots
            let moved = sigma
                .orbit_map()
                .apply(point.field, &P1Point::Finite(old.x.clone()));
            new.certified &= moved == P1Point::Finite(new.x.clone());
            Some(new)
        }
        _ => None,
    };
    Ok(ClassificationResult {
        case: r.case,
        components: component_membership(&point),
        certificates: Certificates::of(&map_type),
        point,
        map_type,
        attachment,
        tail: r.tail.clone(),
    })
}

/// DOT string literal; `\n` escapes in labels are kept as line breaks.
fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\\\""))
}

/// Graphviz rendering: source cluster above the target cluster, dashed
/// arrows for the map.
pub fn render_dot(r: &ClassificationResult) -> String {
    let m = &r.map_type;
    let mut out = String::new();
    let _ = writeln!(out, "digraph {} {{", quote(&format!("{:?}", r.case)));
    out.push_str("  rankdir=TB;\n  node [shape=circle];\n");

    let legs_of = |g: &crate::graph::DualGraph, v: &str| {
        let mut labels: Vec<String> = g.legs_on(v).map(|l| l.label.clone()).collect();
        labels.sort_by_key(|l| l.parse::<Marking>().map(Marking::index).unwrap_or(usize::MAX));
        labels.join(",")
    };

    out.push_str("  subgraph cluster_source {\n    label=\"source\";\n");
    for v in m.source().vertices() {
        let mut label = format!("{}\\ng={}", v.id, v.genus);
        let legs = legs_of(m.source(), &v.id);
        if !legs.is_empty() {
            let _ = write!(label, "\\n{legs}");
        }
        let shape = match m.behavior(&v.id) {
            Behavior::Contracted => "doublecircle",
            Behavior::Inseparable { degree } => {
                let _ = write!(label, "\\nF{}", if degree == 2 { "²".to_string() } else { format!("^{degree}") });
                "circle"
            }
            Behavior::Separable => "circle",
        };
        let _ = writeln!(
            out,
            "    {} [label={}, shape={shape}];",
            quote(&format!("s:{}", v.id)),
            quote(&label)
        );
    }
    for [a, b] in m.source().edges() {
        let _ = writeln!(
            out,
            "    {} -> {} [dir=none];",
            quote(&format!("s:{a}")),
            quote(&format!("s:{b}"))
        );
    }
    out.push_str("  }\n");

    out.push_str("  subgraph cluster_target {\n    label=\"target\";\n");
    for v in m.target().vertices() {
        let mut label = format!("{}\\ng={}", v.id, v.genus);
        let legs = legs_of(m.target(), &v.id);
        if !legs.is_empty() {
            let _ = write!(label, "\\n{legs}");
        }
        let _ = writeln!(out, "    {} [label={}];", quote(&format!("t:{}", v.id)), quote(&label));
    }
    let used_nodes: std::collections::BTreeSet<usize> = m
        .source()
        .vertices()
        .iter()
        .filter_map(|v| match m.image(&v.id) {
            VertexImage::Node { node } => Some(*node),
            VertexImage::Vertex(_) => None,
        })
        .collect();
    for (i, [a, b]) in m.target().edges().iter().enumerate() {
        if used_nodes.contains(&i) {
            let node = quote(&format!("t:node{i}"));
            let _ = writeln!(out, "    {node} [shape=point, label=\"\"];");
            let _ = writeln!(out, "    {} -> {node} [dir=none];", quote(&format!("t:{a}")));
            let _ = writeln!(out, "    {node} -> {} [dir=none];", quote(&format!("t:{b}")));
        } else {
            let _ = writeln!(
                out,
                "    {} -> {} [dir=none];",
                quote(&format!("t:{a}")),
                quote(&format!("t:{b}"))
            );
        }
    }
    out.push_str("  }\n");

    for v in m.source().vertices() {
        let to = match m.image(&v.id) {
            VertexImage::Vertex(w) => format!("t:{w}"),
            VertexImage::Node { node } => format!("t:node{node}"),
        };
        let _ = writeln!(
            out,
            "  {} -> {} [style=dashed];",
            quote(&format!("s:{}", v.id)),
            quote(&to)
        );
    }
    out.push_str("}\n");
    out
}
