//! Local monodromy data and formal local systems on the punctured line.
//!
//! A [`FormalLocalSystem`] records, for each finite singular point and for
//! `∞`, the decomposition of local monodromy into pieces `χ ⊗ J(n)`. The
//! numerology here (rank, rigidity index, Euler characteristic) is evaluated
//! for any valid data; it carries its geometric meaning only when the data
//! come from an irreducible middle extension sheaf, which the data alone
//! cannot certify. [`Provenance`] records whether a system was produced by
//! the convolution pipeline.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::character::Character;
use crate::error::{Error, Result, Violation};
use crate::partition::Partition;

/// Finite map `character -> Jordan partition` with positive total degree.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawMonodromy", into = "RawMonodromy")]
pub struct LocalMonodromy {
    parts: BTreeMap<Character, Partition>,
}

impl LocalMonodromy {
    pub fn new(parts: BTreeMap<Character, Partition>) -> Option<Self> {
        if parts.is_empty() {
            None
        } else {
            Some(LocalMonodromy { parts })
        }
    }

    /// Builds a monodromy from a list of single blocks `(χ, n)` meaning `χ ⊗ J(n)`.
    /// Blocks for the same character are merged.
    pub fn from_blocks<I: IntoIterator<Item = (Character, u32)>>(blocks: I) -> Option<Self> {
        let mut raw: BTreeMap<Character, Vec<u32>> = BTreeMap::new();
        for (c, n) in blocks {
            if n == 0 {
                return None;
            }
            raw.entry(c).or_default().push(n);
        }
        let parts = raw
            .into_iter()
            .map(|(c, b)| Partition::new(b).map(|p| (c, p)))
            .collect::<Option<BTreeMap<_, _>>>()?;
        Self::new(parts)
    }

    /// `U(n, χ) = χ ⊗ J(n)`.
    pub fn single(chi: Character, n: u32) -> Self {
        Self::from_blocks([(chi, n)]).expect("n > 0")
    }

    /// The identity of rank `n`.
    pub fn identity(n: u32) -> Self {
        Self::new(BTreeMap::from([(
            Character::TRIVIAL,
            Partition::semisimple(n),
        )]))
        .expect("nonempty")
    }

    pub fn parts(&self) -> &BTreeMap<Character, Partition> {
        &self.parts
    }

    pub fn characters(&self) -> impl Iterator<Item = Character> + '_ {
        self.parts.keys().copied()
    }

    pub fn partition(&self, chi: Character) -> Option<&Partition> {
        self.parts.get(&chi)
    }

    pub fn degree(&self) -> u32 {
        self.parts.values().map(Partition::degree).sum()
    }

    /// `e_i(ρ)`: blocks with eigen-character `ρ` of length `>= i`.
    pub fn e(&self, rho: Character, i: u32) -> u32 {
        self.parts.get(&rho).map_or(0, |p| p.e(i))
    }

    /// Total block length carried by `ρ`.
    pub fn multiplicity(&self, rho: Character) -> u32 {
        self.parts.get(&rho).map_or(0, Partition::degree)
    }

    /// `Σ_{i,χ} e_i(χ)²`, the dimension of the centralizer in `GL_n`.
    pub fn centralizer_dim_gl(&self) -> u32 {
        self.parts.values().map(Partition::centralizer_dim).sum()
    }

    /// `Σ_χ (total block length at χ)·χ`.
    pub fn determinant(&self) -> Character {
        self.parts.iter().fold(Character::TRIVIAL, |acc, (c, p)| {
            acc.mul(c.pow(i64::from(p.degree())))
        })
    }

    pub fn is_identity(&self) -> bool {
        self.parts.len() == 1
            && self
                .parts
                .get(&Character::TRIVIAL)
                .is_some_and(|p| p.largest() == 1)
    }

    /// Multiplies every character label by `chi`.
    pub fn twist(&self, chi: Character) -> Self {
        LocalMonodromy {
            parts: self
                .parts
                .iter()
                .map(|(c, p)| (c.mul(chi), p.clone()))
                .collect(),
        }
    }

    /// Inverts every character label.
    pub fn dual(&self) -> Self {
        LocalMonodromy {
            parts: self
                .parts
                .iter()
                .map(|(c, p)| (c.inv(), p.clone()))
                .collect(),
        }
    }

    /// Direct sum.
    pub fn sum(&self, other: &LocalMonodromy) -> Self {
        let mut parts = self.parts.clone();
        for (c, p) in &other.parts {
            let merged = match parts.get(c) {
                Some(q) => q.merge(p),
                None => p.clone(),
            };
            parts.insert(*c, merged);
        }
        LocalMonodromy { parts }
    }

    /// Every block as `(χ, n)`, characters increasing, lengths decreasing.
    pub fn blocks(&self) -> Vec<(Character, u32)> {
        self.parts
            .iter()
            .flat_map(|(c, p)| p.blocks().iter().map(move |&n| (*c, n)))
            .collect()
    }
}

fn char_label(c: Character) -> String {
    if c.is_trivial() {
        "1".into()
    } else if c == Character::QUADRATIC {
        "-1".into()
    } else {
        c.to_string()
    }
}

impl fmt::Display for LocalMonodromy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut items = Vec::new();
        for (c, p) in &self.parts {
            for (len, mult) in p.multiplicities() {
                let mut s = match (len, *c) {
                    (1, c) => char_label(c),
                    (n, c) if c.is_trivial() => format!("U({n})"),
                    (n, c) if c == Character::QUADRATIC => format!("-U({n})"),
                    (n, c) => format!("U({n},{c})"),
                };
                if mult > 1 {
                    s.push_str(&format!("^{mult}"));
                }
                items.push(s);
            }
        }
        write!(f, "{}", items.join(" + "))
    }
}

impl fmt::Debug for LocalMonodromy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

/// JSON form of a local monodromy: `{"parts":[{"char":"1/2","blocks":[1,1]}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawMonodromy {
    pub parts: Vec<RawPart>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawPart {
    #[serde(rename = "char")]
    pub character: Character,
    pub blocks: Vec<u32>,
}

impl RawMonodromy {
    fn violations(&self, point: &str) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.parts.is_empty() {
            out.push(Violation::EmptyMonodromy {
                point: point.into(),
            });
        }
        for part in &self.parts {
            if part.blocks.is_empty() || part.blocks.contains(&0) {
                out.push(Violation::EmptyPartition {
                    point: point.into(),
                    character: part.character,
                });
            }
        }
        out
    }

    fn build(&self) -> Option<LocalMonodromy> {
        LocalMonodromy::from_blocks(
            self.parts
                .iter()
                .flat_map(|p| p.blocks.iter().map(move |&n| (p.character, n))),
        )
    }

    fn degree(&self) -> u32 {
        self.parts.iter().flat_map(|p| p.blocks.iter()).sum()
    }
}

impl TryFrom<RawMonodromy> for LocalMonodromy {
    type Error = Error;

    fn try_from(raw: RawMonodromy) -> Result<Self> {
        let v = raw.violations("monodromy");
        if !v.is_empty() {
            return Err(Error::Invalid(v));
        }
        raw.build().ok_or_else(|| {
            Error::Invalid(vec![Violation::EmptyMonodromy {
                point: "monodromy".into(),
            }])
        })
    }
}

impl From<LocalMonodromy> for RawMonodromy {
    fn from(m: LocalMonodromy) -> Self {
        RawMonodromy {
            parts: m
                .parts
                .into_iter()
                .map(|(c, p)| RawPart {
                    character: c,
                    blocks: p.blocks().to_vec(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Constructed,
    #[default]
    UserSupplied,
}

/// A singular point: a labeled finite point or `∞`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Point {
    Finite(String),
    Infinity,
}

impl FromStr for Point {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inf" | "infinity" | "∞" => Ok(Point::Infinity),
            other => Ok(Point::Finite(other.to_string())),
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Finite(l) => f.write_str(l),
            Point::Infinity => f.write_str("infinity"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinitePoint {
    pub label: String,
    pub monodromy: LocalMonodromy,
}

/// Local data at the finite singular points and at `∞`.
///
/// Invariants (checked on construction): every local monodromy has the same
/// degree, no finite point carries the identity, labels are distinct, there
/// are at least two finite points, and `Σ_s det_s = det_∞` in ℚ/ℤ.
#[derive(Clone, Serialize, Deserialize)]
#[serde(try_from = "RawLocalSystem", into = "RawLocalSystem")]
pub struct FormalLocalSystem {
    finite: Vec<FinitePoint>,
    infinity: LocalMonodromy,
    provenance: Provenance,
}

impl PartialEq for FormalLocalSystem {
    /// Compares local data only; provenance is ignored.
    fn eq(&self, other: &Self) -> bool {
        self.finite == other.finite && self.infinity == other.infinity
    }
}

impl Eq for FormalLocalSystem {}

/// Collects every invariant violation of the given local data.
pub fn validate_parts(finite: &[FinitePoint], infinity: &LocalMonodromy) -> Vec<Violation> {
    let mut out = Vec::new();
    if finite.len() < 2 {
        out.push(Violation::TooFewFinitePoints {
            count: finite.len(),
        });
    }
    let mut seen = BTreeSet::new();
    for p in finite {
        if !seen.insert(p.label.as_str()) {
            out.push(Violation::DuplicateLabel {
                label: p.label.clone(),
            });
        }
    }
    let expected = finite
        .first()
        .map_or(infinity.degree(), |p| p.monodromy.degree());
    for p in finite {
        if p.monodromy.degree() != expected {
            out.push(Violation::DegreeMismatch {
                point: p.label.clone(),
                expected,
                found: p.monodromy.degree(),
            });
        }
        if p.monodromy.is_identity() {
            out.push(Violation::TrivialAtFinitePoint {
                point: p.label.clone(),
            });
        }
    }
    if infinity.degree() != expected {
        out.push(Violation::DegreeMismatch {
            point: "infinity".into(),
            expected,
            found: infinity.degree(),
        });
    }
    let finite_sum = finite.iter().fold(Character::TRIVIAL, |acc, p| {
        acc.mul(p.monodromy.determinant())
    });
    let det_inf = infinity.determinant();
    if finite_sum != det_inf {
        out.push(Violation::Determinant {
            finite_sum,
            infinity: det_inf,
        });
    }
    out
}

impl FormalLocalSystem {
    pub fn new(
        finite: Vec<FinitePoint>,
        infinity: LocalMonodromy,
        provenance: Provenance,
    ) -> Result<Self> {
        let v = validate_parts(&finite, &infinity);
        if !v.is_empty() {
            return Err(Error::Invalid(v));
        }
        Ok(FormalLocalSystem {
            finite,
            infinity,
            provenance,
        })
    }

    /// Convenience constructor from `(label, monodromy)` pairs.
    pub fn from_points<S: Into<String>>(
        finite: Vec<(S, LocalMonodromy)>,
        infinity: LocalMonodromy,
    ) -> Result<Self> {
        let finite = finite
            .into_iter()
            .map(|(label, monodromy)| FinitePoint {
                label: label.into(),
                monodromy,
            })
            .collect();
        Self::new(finite, infinity, Provenance::UserSupplied)
    }

    pub fn finite_points(&self) -> &[FinitePoint] {
        &self.finite
    }

    pub fn infinity(&self) -> &LocalMonodromy {
        &self.infinity
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = provenance;
        self
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.finite.iter().map(|p| p.label.as_str())
    }

    pub fn monodromy_at(&self, point: &Point) -> Result<&LocalMonodromy> {
        match point {
            Point::Infinity => Ok(&self.infinity),
            Point::Finite(label) => self
                .finite
                .iter()
                .find(|p| &p.label == label)
                .map(|p| &p.monodromy)
                .ok_or_else(|| Error::UnknownPoint(label.clone())),
        }
    }

    /// Generic rank.
    pub fn rank(&self) -> u32 {
        self.infinity.degree()
    }

    /// `e_i(s, ρ, F)`; zero when `ρ` is absent or `i` exceeds the largest block.
    pub fn e(&self, point: &Point, rho: Character, i: u32) -> Result<u32> {
        Ok(self.monodromy_at(point)?.e(rho, i))
    }

    /// Centralizer dimensions at the finite points (in order) followed by `∞`.
    pub fn centralizer_dims(&self) -> Vec<u32> {
        self.finite
            .iter()
            .map(|p| p.monodromy.centralizer_dim_gl())
            .chain(std::iter::once(self.infinity.centralizer_dim_gl()))
            .collect()
    }

    /// `(1 - #D)·n² + Σ_{s ∈ D ∪ ∞} dim C_GL(s)`.
    pub fn rigidity_index(&self) -> i64 {
        let n = i64::from(self.rank());
        let d = self.finite.len() as i64;
        (1 - d) * n * n
            + self
                .centralizer_dims()
                .iter()
                .map(|&x| i64::from(x))
                .sum::<i64>()
    }

    /// `(1 - #D)·n + Σ_{s ∈ D ∪ ∞} e_1(s, 𝟙)`; irreducibility requires `<= 0`.
    pub fn euler_characteristic(&self) -> i64 {
        let n = i64::from(self.rank());
        let d = self.finite.len() as i64;
        let inv: i64 = self
            .finite
            .iter()
            .map(|p| &p.monodromy)
            .chain(std::iter::once(&self.infinity))
            .map(|m| i64::from(m.e(Character::TRIVIAL, 1)))
            .sum();
        (1 - d) * n + inv
    }

    /// Twists every local monodromy by the given characters: finite point `s`
    /// by `chars[s]`, `∞` by their product. No validation is performed.
    pub(crate) fn twist_unchecked(
        &self,
        chars: &[Character],
    ) -> (Vec<FinitePoint>, LocalMonodromy) {
        let finite: Vec<FinitePoint> = self
            .finite
            .iter()
            .zip(chars)
            .map(|(p, c)| FinitePoint {
                label: p.label.clone(),
                monodromy: p.monodromy.twist(*c),
            })
            .collect();
        let total = chars.iter().fold(Character::TRIVIAL, |a, c| a.mul(*c));
        (finite, self.infinity.twist(total))
    }

    /// Same local data with the finite points reordered by `perm`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let finite = perm.iter().map(|&i| self.finite[i].clone()).collect();
        Self::new(finite, self.infinity.clone(), self.provenance)
    }

    /// Same local data with the finite points relabeled `alpha1, alpha2, ...`.
    pub fn relabeled(&self) -> Self {
        let finite = self
            .finite
            .iter()
            .enumerate()
            .map(|(i, p)| FinitePoint {
                label: format!("alpha{}", i + 1),
                monodromy: p.monodromy.clone(),
            })
            .collect();
        FormalLocalSystem {
            finite,
            infinity: self.infinity.clone(),
            provenance: self.provenance,
        }
    }
}

impl fmt::Debug for FormalLocalSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.finite {
            write!(f, "{}: [{}]; ", p.label, p.monodromy)?;
        }
        write!(f, "infinity: [{}]", self.infinity)
    }
}

/// JSON schema of a formal local system.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawLocalSystem {
    pub finite_points: Vec<RawFinitePoint>,
    pub infinity: RawMonodromy,
    #[serde(default)]
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawFinitePoint {
    pub label: String,
    pub parts: Vec<RawPart>,
}

impl RawLocalSystem {
    /// Every violated invariant, naming the offending point.
    pub fn validate(&self) -> std::result::Result<(), Vec<Violation>> {
        let mut out = Vec::new();
        let mut finite = Vec::new();
        for p in &self.finite_points {
            let raw = RawMonodromy {
                parts: p.parts.clone(),
            };
            out.extend(raw.violations(&p.label));
            if let Some(m) = raw.build() {
                finite.push(FinitePoint {
                    label: p.label.clone(),
                    monodromy: m,
                });
            }
        }
        out.extend(self.infinity.violations("infinity"));
        if out.is_empty() {
            let inf = self.infinity.build().expect("checked above");
            out.extend(validate_parts(&finite, &inf));
        } else if finite.len() == self.finite_points.len() {
            // infinity is malformed; still report the finite-point checks
            let degree = self.infinity.degree();
            if degree > 0 {
                out.extend(
                    validate_parts(&finite, &LocalMonodromy::identity(degree))
                        .into_iter()
                        .filter(|v| !matches!(v, Violation::Determinant { .. })),
                );
            }
        }
        if out.is_empty() {
            Ok(())
        } else {
            Err(out)
        }
    }
}

impl TryFrom<RawLocalSystem> for FormalLocalSystem {
    type Error = Error;

    fn try_from(raw: RawLocalSystem) -> Result<Self> {
        raw.validate().map_err(Error::Invalid)?;
        let finite = raw
            .finite_points
            .iter()
            .map(|p| FinitePoint {
                label: p.label.clone(),
                monodromy: RawMonodromy {
                    parts: p.parts.clone(),
                }
                .build()
                .expect("validated"),
            })
            .collect();
        let infinity = raw.infinity.build().expect("validated");
        FormalLocalSystem::new(finite, infinity, raw.provenance)
    }
}

impl From<FormalLocalSystem> for RawLocalSystem {
    fn from(f: FormalLocalSystem) -> Self {
        RawLocalSystem {
            finite_points: f
                .finite
                .into_iter()
                .map(|p| RawFinitePoint {
                    label: p.label,
                    parts: RawMonodromy::from(p.monodromy).parts,
                })
                .collect(),
            infinity: f.infinity.into(),
            provenance: f.provenance,
        }
    }
}

/// Rank-one local data `⊗_s L_{χ_s(x - s)}`; the character at `∞` is the
/// product of the finite characters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankOneSystem {
    pub finite_chars: Vec<(String, Character)>,
}

impl RankOneSystem {
    pub fn new<S: Into<String>>(chars: Vec<(S, Character)>) -> Self {
        RankOneSystem {
            finite_chars: chars.into_iter().map(|(l, c)| (l.into(), c)).collect(),
        }
    }

    /// `L(χ₁, χ₂)` on the points `alpha1`, `alpha2`.
    pub fn pair(chi1: Character, chi2: Character) -> Self {
        Self::new(vec![("alpha1", chi1), ("alpha2", chi2)])
    }

    pub fn at_infinity(&self) -> Character {
        self.finite_chars
            .iter()
            .fold(Character::TRIVIAL, |a, (_, c)| a.mul(*c))
    }

    pub fn char_at(&self, label: &str) -> Character {
        self.finite_chars
            .iter()
            .find(|(l, _)| l == label)
            .map_or(Character::TRIVIAL, |(_, c)| *c)
    }

    pub fn is_trivial(&self) -> bool {
        self.finite_chars.iter().all(|(_, c)| c.is_trivial())
    }

    pub fn dual(&self) -> Self {
        RankOneSystem {
            finite_chars: self
                .finite_chars
                .iter()
                .map(|(l, c)| (l.clone(), c.inv()))
                .collect(),
        }
    }

    /// The rank-one system as formal local data; fails unless at least two
    /// finite characters are nontrivial.
    pub fn to_local_system(&self) -> Result<FormalLocalSystem> {
        FormalLocalSystem::from_points(
            self.finite_chars
                .iter()
                .map(|(l, c)| (l.clone(), LocalMonodromy::single(*c, 1)))
                .collect(),
            LocalMonodromy::single(self.at_infinity(), 1),
        )
    }
}
