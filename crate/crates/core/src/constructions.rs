//! Generators for the known perfect and quasi-perfect code constructions.
//!
//! Every generator returns the code, the claim the construction is expected
//! to satisfy and the parameters that produced it. Generators check the
//! hypotheses they are handed (a base code must really be perfect), but never
//! check their own output: that is [`check_claim`]'s job, so a construction
//! whose claim is false shows up as a failed verdict rather than an error.
//!
//! All coordinates are 0-based. Constructions on meshes whose classical
//! statement is 1-based are shifted down by one on every axis.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{FactorSpec, ProductGraph, Vertex};
use crate::metrics::{check_claim, classify, Claim, Code, Label};

/// Tags addressing each construction from the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremId {
    T31,
    T32,
    C33,
    N34,
    T35,
    T36,
    T37,
    N41,
    T42,
    T43a,
    T43b,
    T43c,
    T44a,
    T44b,
    T51a,
    T51b,
    TrivPn,
    O52,
    T53,
}

impl TheoremId {
    pub const ALL: [TheoremId; 19] = [
        TheoremId::T31,
        TheoremId::T32,
        TheoremId::C33,
        TheoremId::N34,
        TheoremId::T35,
        TheoremId::T36,
        TheoremId::T37,
        TheoremId::N41,
        TheoremId::T42,
        TheoremId::T43a,
        TheoremId::T43b,
        TheoremId::T43c,
        TheoremId::T44a,
        TheoremId::T44b,
        TheoremId::T51a,
        TheoremId::T51b,
        TheoremId::TrivPn,
        TheoremId::O52,
        TheoremId::T53,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            TheoremId::T31 => "T3_1",
            TheoremId::T32 => "T3_2",
            TheoremId::C33 => "C3_3",
            TheoremId::N34 => "N3_4",
            TheoremId::T35 => "T3_5",
            TheoremId::T36 => "T3_6",
            TheoremId::T37 => "T3_7",
            TheoremId::N41 => "N4_1",
            TheoremId::T42 => "T4_2",
            TheoremId::T43a => "T4_3a",
            TheoremId::T43b => "T4_3b",
            TheoremId::T43c => "T4_3c",
            TheoremId::T44a => "T4_4a",
            TheoremId::T44b => "T4_4b",
            TheoremId::T51a => "T5_1a",
            TheoremId::T51b => "T5_1b",
            TheoremId::TrivPn => "TRIV_PN",
            TheoremId::O52 => "O5_2",
            TheoremId::T53 => "T5_3",
        }
    }

    /// Whether the construction starts from a caller-supplied code.
    pub fn needs_input(self) -> bool {
        matches!(
            self,
            TheoremId::T31 | TheoremId::T32 | TheoremId::C33 | TheoremId::T36 | TheoremId::T37
        )
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.tag().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::ParameterOutOfRange(format!("unknown construction tag `{s}`")))
    }
}

impl Serialize for TheoremId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.tag())
    }
}

impl<'de> Deserialize<'de> for TheoremId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// Named parameters as strings, e.g. `k=2`, `ext=cycle`.
pub type Params = BTreeMap<String, String>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub theorem: TheoremId,
    pub params: Params,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Provenance {
    fn new(theorem: TheoremId) -> Self {
        Provenance {
            theorem,
            params: Params::new(),
            notes: Vec::new(),
        }
    }

    fn param(mut self, name: &str, value: impl ToString) -> Self {
        self.params.insert(name.to_string(), value.to_string());
        self
    }

    fn note(mut self, note: &str) -> Self {
        self.notes.push(note.to_string());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionResult {
    pub code: Code,
    pub claim: Claim,
    pub provenance: Provenance,
}

impl ConstructionResult {
    pub fn graph(&self) -> &ProductGraph {
        self.code.graph()
    }

    /// Distinct values of the last coordinate, ascending.
    pub fn levels(&self) -> Vec<usize> {
        let mut levels: Vec<usize> = self
            .code
            .codewords()
            .iter()
            .filter_map(|c| c.coords().last().copied())
            .collect();
        levels.sort_unstable();
        levels.dedup();
        levels
    }
}

/// Kind of factor appended by the layering constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Extension {
    Path,
    Cycle,
}

impl FromStr for Extension {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "path" | "P" => Ok(Extension::Path),
            "cycle" | "C" => Ok(Extension::Cycle),
            other => Err(Error::ParameterOutOfRange(format!(
                "ext must be `path` or `cycle`, got `{other}`"
            ))),
        }
    }
}

impl fmt::Display for Extension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Extension::Path => "path",
            Extension::Cycle => "cycle",
        })
    }
}

fn graph(spec: &str) -> ProductGraph {
    ProductGraph::parse(spec).expect("generator specs are well formed")
}

fn cycles(orders: &[usize]) -> Result<ProductGraph> {
    ProductGraph::new(
        orders
            .iter()
            .map(|&n| FactorSpec::cycle(n))
            .collect::<Result<_>>()?,
    )
}

fn require_perfect(code: &Code, e: u32, what: &str) -> Result<()> {
    let verdict = check_claim(code, Claim::perfect(e))?;
    if verdict.holds {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "{what} must be a perfect {e}-code, classifier says {}",
            verdict.report.label
        )))
    }
}

fn require_positive(name: &str, value: usize) -> Result<()> {
    if value == 0 {
        Err(Error::ParameterOutOfRange(format!(
            "{name} must be at least 1"
        )))
    } else {
        Ok(())
    }
}

fn points(pairs: &[(usize, usize)]) -> Vec<Vertex> {
    pairs
        .iter()
        .map(|&(a, b)| Vertex::new(vec![a, b]))
        .collect()
}

/// Stacks layers `(set, level)` over a base graph with an appended factor.
fn layered(base: &ProductGraph, factor: FactorSpec, layers: &[(&[Vertex], usize)]) -> Result<Code> {
    let mut words = Vec::new();
    for &(set, level) in layers {
        let (_, lifted) = base.direct_sum(set, &[level], factor.clone())?;
        words.extend(lifted);
    }
    Code::new(base.extend(factor)?, words)
}

/// Copies of a perfect `e`-code on levels `3i + 1` of `G □ P_3k` or `G □ C_3k`.
pub fn build_t31(base: &Code, e: u32, k: usize, ext: Extension) -> Result<ConstructionResult> {
    require_positive("e", e as usize)?;
    require_positive("k", k)?;
    if e >= 2 && k != 1 {
        return Err(Error::ParameterOutOfRange(
            "the layered extension only holds for k = 1 when e >= 2".into(),
        ));
    }
    require_perfect(base, e, "base code")?;
    let factor = match ext {
        Extension::Path => FactorSpec::path(3 * k)?,
        Extension::Cycle => FactorSpec::cycle(3 * k)?,
    };
    let levels: Vec<usize> = (0..k).map(|i| 3 * i + 1).collect();
    let (g, words) = base.graph().direct_sum(base.codewords(), &levels, factor)?;
    Ok(ConstructionResult {
        code: Code::new(g, words)?,
        claim: Claim::quasi_perfect(e),
        provenance: Provenance::new(TheoremId::T31)
            .param("base", base.graph())
            .param("e", e)
            .param("k", k)
            .param("ext", ext),
    })
}

/// Levels used by the mesh layering: the base code on `6i`, its shifted
/// copy on `6i + 3`, for `i < k`.
pub fn mesh_layer_levels(k: usize) -> (Vec<usize>, Vec<usize>) {
    (
        (0..k).map(|i| 6 * i).collect(),
        (0..k).map(|i| 6 * i + 3).collect(),
    )
}

fn two_layer_period_six(
    theorem: TheoremId,
    d1: &Code,
    k: usize,
    cyclic: bool,
) -> Result<ConstructionResult> {
    require_positive("k", k)?;
    let g = d1.graph();
    let ok_shape = g.dimension() == 2
        && g.factors().iter().all(|f| {
            f.order() >= 3
                && if cyclic {
                    matches!(f, FactorSpec::Cycle(_))
                } else {
                    matches!(f, FactorSpec::Path(_))
                }
        });
    if !ok_shape {
        return Err(Error::Precondition(format!(
            "input must live in a product of two {} of order at least 3, got {g}",
            if cyclic { "cycles" } else { "paths" }
        )));
    }
    require_perfect(d1, 2, "input code")?;
    let d2 = g.translate(&[0, 3], d1.codewords())?;
    let (low, high) = mesh_layer_levels(k);
    let factor = if cyclic {
        FactorSpec::cycle(6 * k)?
    } else {
        FactorSpec::path(6 * k - 2)?
    };
    let mut layers: Vec<(&[Vertex], usize)> = Vec::new();
    for (&a, &b) in low.iter().zip(&high) {
        layers.push((d1.codewords(), a));
        layers.push((&d2, b));
    }
    Ok(ConstructionResult {
        code: layered(g, factor, &layers)?,
        claim: Claim::quasi_perfect(2),
        provenance: Provenance::new(theorem).param("base", g).param("k", k),
    })
}

/// A perfect 2-code `D1` in `P_m □ P_n` and its shift `(0,3) + D1`, stacked
/// on levels `6i` and `6i + 3` of `P_{6k-2}`. Fails when the shifted copy
/// leaves the mesh.
pub fn build_t32(d1: &Code, k: usize) -> Result<ConstructionResult> {
    two_layer_period_six(TheoremId::T32, d1, k, false)
}

/// The cyclic counterpart of [`build_t32`] in `C_m □ C_n □ C_{6k}`.
pub fn build_c33(d1: &Code, k: usize) -> Result<ConstructionResult> {
    two_layer_period_six(TheoremId::C33, d1, k, true)
}

/// The six-word perfect 1-code of `C3 □ C6 □ C2`.
pub fn block_code() -> Vec<Vertex> {
    [
        [0, 0, 0],
        [1, 2, 0],
        [2, 4, 0],
        [2, 1, 1],
        [0, 3, 1],
        [1, 5, 1],
    ]
    .into_iter()
    .map(Vertex::from)
    .collect()
}

/// Periodic tiling of the six-word block over `C_{3p} □ C_{6q} □ C2`.
pub fn build_n34_tile(p: usize, q: usize) -> Result<ConstructionResult> {
    require_positive("p", p)?;
    require_positive("q", q)?;
    let block = block_code();
    let mut words = Vec::with_capacity(6 * p * q);
    for s in 0..p {
        for t in 0..q {
            for b in &block {
                let c = b.coords();
                words.push(Vertex::new(vec![c[0] + 3 * s, c[1] + 6 * t, c[2]]));
            }
        }
    }
    Ok(ConstructionResult {
        code: Code::new(cycles(&[3 * p, 6 * q, 2])?, words)?,
        claim: Claim::perfect(1),
        provenance: Provenance::new(TheoremId::N34).param("p", p).param("q", q),
    })
}

/// `{(0,0),(1,2),(2,4)}` on levels `4i` and `{(2,1),(0,3),(1,5)}` on levels
/// `4i + 2` of `C3 □ C6 □ C_{4k}`.
pub fn build_t35(k: usize) -> Result<ConstructionResult> {
    require_positive("k", k)?;
    let d0 = points(&[(0, 0), (1, 2), (2, 4)]);
    let d1 = points(&[(2, 1), (0, 3), (1, 5)]);
    let mut layers: Vec<(&[Vertex], usize)> = Vec::new();
    for i in 0..k {
        layers.push((&d0, 4 * i));
        layers.push((&d1, 4 * i + 2));
    }
    Ok(ConstructionResult {
        code: layered(&graph("C3xC6"), FactorSpec::cycle(4 * k)?, &layers)?,
        claim: Claim::quasi_perfect(1),
        provenance: Provenance::new(TheoremId::T35).param("k", k),
    })
}

/// Splits a code of `G □ F` by its last coordinate into the per-level sets.
fn split_layers(code: &Code, levels: usize) -> Vec<Vec<Vertex>> {
    let mut out = vec![Vec::new(); levels];
    for c in code.codewords() {
        let (&level, rest) = c.coords().split_last().expect("three factors");
        out[level].push(Vertex::new(rest.to_vec()));
    }
    out
}

/// Re-spaces the two layers of a perfect 1-code in `C_m □ C_n □ C2` onto
/// levels `4i` and `4i + 2` of `C_{4k}`.
pub fn build_t36(d: &Code, k: usize) -> Result<ConstructionResult> {
    require_positive("k", k)?;
    let g = d.graph();
    let orders = g.orders();
    if g.dimension() != 3 || !g.is_all_cycles() || orders[2] != 2 || orders[0] < 2 || orders[1] < 2
    {
        return Err(Error::Precondition(format!(
            "input must live in C_m x C_n x C2 with m, n >= 2, got {g}"
        )));
    }
    require_perfect(d, 1, "input code")?;
    let split = split_layers(d, 2);
    let plane = cycles(&orders[..2])?;
    let mut layers: Vec<(&[Vertex], usize)> = Vec::new();
    for i in 0..k {
        layers.push((&split[0], 4 * i));
        layers.push((&split[1], 4 * i + 2));
    }
    Ok(ConstructionResult {
        code: layered(&plane, FactorSpec::cycle(4 * k)?, &layers)?,
        claim: Claim::quasi_perfect(1),
        provenance: Provenance::new(TheoremId::T36)
            .param("base", g)
            .param("k", k),
    })
}

/// Options for [`build_t37`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct T37Params {
    /// Number of layers of the input, 1 or 2.
    pub k: usize,
    pub add_row: bool,
    pub add_col: bool,
    /// Number of layers of the target, 1 to 4.
    pub layers: usize,
}

/// Keeps the codewords of a perfect `e`-code in `C_m □ C_n □ C_k` and moves
/// them into a graph with one more row and/or column and `i` layers.
///
/// Supported: `k = 1` with `i` in 1..=3, `k = 2` with `i` in 2..=4. For
/// `k = 2, i = 4` the second layer moves to level 2. The unchanged graph
/// (`i = k`, no added row or column) is rejected since the input is
/// returned as is.
pub fn build_t37(base: &Code, params: T37Params) -> Result<ConstructionResult> {
    let T37Params {
        k,
        add_row,
        add_col,
        layers,
    } = params;
    let supported = match k {
        1 => (1..=3).contains(&layers),
        2 => (2..=4).contains(&layers),
        _ => false,
    };
    if !supported {
        return Err(Error::Unsupported(format!(
            "k = {k} with i = {layers}: only k = 1, i in 1..=3 and k = 2, i in 2..=4 are established"
        )));
    }
    if layers == k && !add_row && !add_col {
        return Err(Error::Unsupported(
            "i = k without an added row or column leaves the perfect input unchanged".into(),
        ));
    }

    let g = base.graph();
    let orders = g.orders();
    let input_layers = if g.dimension() == 2 {
        1
    } else {
        orders.get(2).copied().unwrap_or(0)
    };
    if !g.is_all_cycles() || !(2..=3).contains(&g.dimension()) || input_layers != k {
        return Err(Error::Precondition(format!(
            "input must live in C_m x C_n x C{k} (or C_m x C_n when k = 1), got {g}"
        )));
    }
    if orders[0] < 2 || orders[1] < 2 {
        return Err(Error::Precondition("m and n must be at least 2".into()));
    }
    let e = match classify(base)?.label {
        Label::Perfect(e) if e >= 1 => e,
        other => {
            return Err(Error::Precondition(format!(
                "input must be a perfect e-code with e >= 1, classifier says {other}"
            )))
        }
    };

    let m = orders[0] + add_row as usize;
    let n = orders[1] + add_col as usize;
    let mut target = vec![m, n];
    if layers > 1 {
        target.push(layers);
    }
    let words = base
        .codewords()
        .iter()
        .map(|c| {
            let c = c.coords();
            let mut coords = vec![c[0], c[1]];
            if layers > 1 {
                let level = c.get(2).copied().unwrap_or(0);
                coords.push(if k == 2 && layers == 4 {
                    2 * level
                } else {
                    level
                });
            }
            Vertex::new(coords)
        })
        .collect();
    Ok(ConstructionResult {
        code: Code::new(cycles(&target)?, words)?,
        claim: Claim::quasi_perfect(e),
        provenance: Provenance::new(TheoremId::T37)
            .param("base", g)
            .param("k", k)
            .param("add_row", add_row)
            .param("add_col", add_col)
            .param("i", layers),
    })
}

/// Slope `(a, b)` of the diagonal code `{(a·i, b·i) mod n}` in `C_n □ C_n`.
pub fn diagonal_slope(n: usize) -> Option<(usize, usize)> {
    match n {
        8..=9 => Some((1, 2)),
        10..=12 | 14..=19 => Some((2, 3)),
        20..=24 => Some((3, 4)),
        _ => None,
    }
}

pub fn diagonal_points(n: usize, (a, b): (usize, usize)) -> Vec<Vertex> {
    (0..n)
        .map(|i| Vertex::new(vec![(a * i) % n, (b * i) % n]))
        .collect()
}

fn diagonal_base(n: usize) -> Result<Vec<Vertex>> {
    diagonal_slope(n)
        .map(|s| diagonal_points(n, s))
        .ok_or_else(|| Error::ParameterOutOfRange(format!("n = {n} is outside 8..=12 and 14..=24")))
}

/// Diagonal code in `C_n □ C_n`; 1-quasi-perfect for `n` in 8..=12 and
/// 2-quasi-perfect for `n` in 14..=24.
pub fn build_n41(n: usize) -> Result<ConstructionResult> {
    let words = diagonal_base(n)?;
    let (a, b) = diagonal_slope(n).expect("checked");
    Ok(ConstructionResult {
        code: Code::new(cycles(&[n, n])?, words)?,
        claim: Claim::quasi_perfect(if n <= 12 { 1 } else { 2 }),
        provenance: Provenance::new(TheoremId::N41)
            .param("n", n)
            .param("slope", format!("({a},{b})")),
    })
}

const SIX_BASE_NOTE: &str = "D0 = {(i, 2i mod 6)} in C6xC6";

/// `{(i, 2i mod 6)}` on level 0 and its `(0,3)` shift on level 1 of
/// `C6 □ C6 □ C2`.
pub fn build_t42() -> Result<ConstructionResult> {
    let plane = graph("C6xC6");
    let d0 = diagonal_points(6, (1, 2));
    let d1 = plane.translate(&[0, 3], &d0)?;
    Ok(ConstructionResult {
        code: layered(&plane, FactorSpec::cycle(2)?, &[(&d0, 0), (&d1, 1)])?,
        claim: Claim::perfect(1),
        provenance: Provenance::new(TheoremId::T42).note(SIX_BASE_NOTE),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    A,
    B,
    C,
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "a" | "A" => Ok(Variant::A),
            "b" | "B" => Ok(Variant::B),
            "c" | "C" => Ok(Variant::C),
            other => Err(Error::ParameterOutOfRange(format!(
                "unknown variant `{other}`"
            ))),
        }
    }
}

fn period_three(plane: &ProductGraph, sets: [&[Vertex]; 3], k: usize) -> Result<Code> {
    let mut layers: Vec<(&[Vertex], usize)> = Vec::new();
    for i in 0..k {
        for (j, set) in sets.iter().enumerate() {
            layers.push((set, 3 * i + j));
        }
    }
    layered(plane, FactorSpec::cycle(3 * k)?, &layers)
}

/// Three-layer 1-quasi-perfect codes built from a diagonal base `D0`:
///
/// - `A`: `C6 □ C6 □ C_{3k}` with two fixed three-word layers,
/// - `B`: `C_n □ C_n □ C_{3k}` with the shifts `(0,3)` and `(0,n-3)`,
/// - `C`: `C_n □ C_n □ C_n` with `(0,3i) + D0` on level `i` (`k` unused).
pub fn build_t43(variant: Variant, n: usize, k: usize) -> Result<ConstructionResult> {
    require_positive("k", k)?;
    let plane = cycles(&[n, n])?;
    match variant {
        Variant::A => {
            if n != 6 {
                return Err(Error::ParameterOutOfRange(format!(
                    "variant a needs n = 6, got {n}"
                )));
            }
            let d0 = diagonal_points(6, (1, 2));
            let d1 = points(&[(0, 3), (2, 1), (4, 5)]);
            let d2 = points(&[(1, 5), (3, 3), (5, 1)]);
            Ok(ConstructionResult {
                code: period_three(&plane, [&d0, &d1, &d2], k)?,
                claim: Claim::quasi_perfect(1),
                provenance: Provenance::new(TheoremId::T43a)
                    .param("n", n)
                    .param("k", k)
                    .note(SIX_BASE_NOTE),
            })
        }
        Variant::B => {
            if !(8..=12).contains(&n) {
                return Err(Error::ParameterOutOfRange(format!(
                    "variant b needs 8 <= n <= 12, got {n}"
                )));
            }
            let d0 = diagonal_base(n)?;
            let d1 = plane.translate(&[0, 3], &d0)?;
            let d2 = plane.translate(&[0, n as i64 - 3], &d0)?;
            Ok(ConstructionResult {
                code: period_three(&plane, [&d0, &d1, &d2], k)?,
                claim: Claim::quasi_perfect(1),
                provenance: Provenance::new(TheoremId::T43b).param("n", n).param("k", k),
            })
        }
        Variant::C => {
            if !(8..=12).contains(&n) {
                return Err(Error::ParameterOutOfRange(format!(
                    "variant c needs 8 <= n <= 12, got {n}"
                )));
            }
            let d0 = diagonal_base(n)?;
            let shifted: Vec<Vec<Vertex>> = (0..n)
                .map(|i| plane.translate(&[0, 3 * i as i64], &d0))
                .collect::<Result<_>>()?;
            let layers: Vec<(&[Vertex], usize)> = shifted
                .iter()
                .enumerate()
                .map(|(i, s)| (s.as_slice(), i))
                .collect();
            Ok(ConstructionResult {
                code: layered(&plane, FactorSpec::cycle(n)?, &layers)?,
                claim: Claim::quasi_perfect(1),
                provenance: Provenance::new(TheoremId::T43c)
                    .param("n", n)
                    .note("layer (0,3i) + D0 placed at level i"),
            })
        }
    }
}

/// Layered 2-quasi-perfect codes from the diagonal base of `C_n □ C_n`:
///
/// - `A`: `n = 14`, `D0` on levels `4i` and `(1,12) + D0` on `4i + 2` of
///   `C_{4k}`,
/// - `B`: `n` in 14..=19, `D0`, `(1,5) + D0`, `(3,1) + D0` on levels `6i`,
///   `6i + 2`, `6i + 4` of `C_{6k}`.
pub fn build_t44(variant: Variant, n: usize, k: usize) -> Result<ConstructionResult> {
    require_positive("k", k)?;
    let plane = cycles(&[n, n])?;
    match variant {
        Variant::A => {
            if n != 14 {
                return Err(Error::ParameterOutOfRange(format!(
                    "variant a needs n = 14, got {n}"
                )));
            }
            let d0 = diagonal_base(n)?;
            let d1 = plane.translate(&[1, n as i64 - 2], &d0)?;
            let mut layers: Vec<(&[Vertex], usize)> = Vec::new();
            for i in 0..k {
                layers.push((&d0, 4 * i));
                layers.push((&d1, 4 * i + 2));
            }
            Ok(ConstructionResult {
                code: layered(&plane, FactorSpec::cycle(4 * k)?, &layers)?,
                claim: Claim::quasi_perfect(2),
                provenance: Provenance::new(TheoremId::T44a).param("n", n).param("k", k),
            })
        }
        Variant::B => {
            if !(14..=19).contains(&n) {
                return Err(Error::ParameterOutOfRange(format!(
                    "variant b needs 14 <= n <= 19, got {n}"
                )));
            }
            let d0 = diagonal_base(n)?;
            let d1 = plane.translate(&[1, 5], &d0)?;
            let d2 = plane.translate(&[3, 1], &d0)?;
            let mut layers: Vec<(&[Vertex], usize)> = Vec::new();
            for i in 0..k {
                layers.push((&d0, 6 * i));
                layers.push((&d1, 6 * i + 2));
                layers.push((&d2, 6 * i + 4));
            }
            Ok(ConstructionResult {
                code: layered(&plane, FactorSpec::cycle(6 * k)?, &layers)?,
                claim: Claim::quasi_perfect(2),
                provenance: Provenance::new(TheoremId::T44b).param("n", n).param("k", k),
            })
        }
        Variant::C => Err(Error::ParameterOutOfRange(
            "only variants a and b exist".into(),
        )),
    }
}

fn paths(orders: &[usize]) -> Result<ProductGraph> {
    ProductGraph::new(
        orders
            .iter()
            .map(|&n| FactorSpec::path(n))
            .collect::<Result<_>>()?,
    )
}

fn words(list: &[&[usize]]) -> Vec<Vertex> {
    list.iter().map(|c| Vertex::new(c.to_vec())).collect()
}

/// `e`-quasi-perfect codes in two-dimensional meshes.
///
/// - case 1: corners plus centre of `P_n □ P_n`, `n = 2e + 3`,
/// - case 2: `{(0,0), (m-1, n-2)}` in `P_m □ P_n`, `m = e + 1`, `n = e + 3`.
pub fn build_t51(e: u32, case: u8) -> Result<ConstructionResult> {
    require_positive("e", e as usize)?;
    let e = e as usize;
    let (tag, code) = match case {
        1 => {
            let n = 2 * e + 3;
            let w = words(&[
                &[0, 0],
                &[e + 1, e + 1],
                &[n - 1, n - 1],
                &[0, n - 1],
                &[n - 1, 0],
            ]);
            (TheoremId::T51a, Code::new(paths(&[n, n])?, w)?)
        }
        2 => {
            let (m, n) = (e + 1, e + 3);
            (
                TheoremId::T51b,
                Code::new(paths(&[m, n])?, words(&[&[0, 0], &[m - 1, n - 2]]))?,
            )
        }
        other => {
            return Err(Error::ParameterOutOfRange(format!(
                "case must be 1 or 2, got {other}"
            )))
        }
    };
    Ok(ConstructionResult {
        code,
        claim: Claim::quasi_perfect(e as u32),
        provenance: Provenance::new(tag)
            .param("e", e)
            .note("1-based coordinates shifted to 0-based"),
    })
}

fn require_at_least_two(n: usize) -> Result<()> {
    if n < 2 {
        Err(Error::ParameterOutOfRange(format!(
            "n must be at least 2, got {n}"
        )))
    } else {
        Ok(())
    }
}

/// Opposite corners of `P_n □ P_n`, an `(n-2)`-quasi-perfect code.
pub fn build_triv_pn(n: usize) -> Result<ConstructionResult> {
    require_at_least_two(n)?;
    Ok(ConstructionResult {
        code: Code::new(paths(&[n, n])?, words(&[&[0, 0], &[n - 1, n - 1]]))?,
        claim: Claim::quasi_perfect(n as u32 - 2),
        provenance: Provenance::new(TheoremId::TrivPn).param("n", n),
    })
}

/// Opposite corners of `P_n □ P_n □ P_2`, a perfect `(n-1)`-code.
pub fn build_o52(n: usize) -> Result<ConstructionResult> {
    require_at_least_two(n)?;
    Ok(ConstructionResult {
        code: Code::new(paths(&[n, n, 2])?, words(&[&[0, 0, 0], &[n - 1, n - 1, 1]]))?,
        claim: Claim::perfect(n as u32 - 1),
        provenance: Provenance::new(TheoremId::O52).param("n", n),
    })
}

/// Two far corners of `P_n □ P_n □ P_l`, `l` in {3, 4}, an
/// `(n-1)`-quasi-perfect code.
pub fn build_t53(n: usize, l: usize) -> Result<ConstructionResult> {
    require_at_least_two(n)?;
    let w = match l {
        4 => words(&[&[0, 0, 1], &[n - 1, n - 1, 2]]),
        3 => words(&[&[0, 0, 0], &[n - 1, n - 1, 2]]),
        other => {
            return Err(Error::ParameterOutOfRange(format!(
                "l must be 3 or 4, got {other}"
            )))
        }
    };
    Ok(ConstructionResult {
        code: Code::new(paths(&[n, n, l])?, w)?,
        claim: Claim::quasi_perfect(n as u32 - 1),
        provenance: Provenance::new(TheoremId::T53).param("n", n).param("l", l),
    })
}

fn get<T: FromStr>(params: &Params, name: &str, default: Option<T>) -> Result<T> {
    match params.get(name) {
        Some(raw) => raw
            .parse()
            .map_err(|_| Error::ParameterOutOfRange(format!("cannot parse {name} = `{raw}`"))),
        None => {
            default.ok_or_else(|| Error::ParameterOutOfRange(format!("missing parameter `{name}`")))
        }
    }
}

fn get_flag(params: &Params, name: &str) -> Result<bool> {
    match params.get(name).map(String::as_str) {
        None | Some("0") | Some("false") | Some("no") => Ok(false),
        Some("1") | Some("true") | Some("yes") => Ok(true),
        Some(other) => Err(Error::ParameterOutOfRange(format!(
            "{name} must be a boolean, got `{other}`"
        ))),
    }
}

/// Runs a generator by tag. Constructions that start from an existing code
/// ([`TheoremId::needs_input`]) take it from `input`; `k` defaults to 1.
pub fn build(tag: TheoremId, params: &Params, input: Option<&Code>) -> Result<ConstructionResult> {
    let input = || input.ok_or_else(|| Error::Precondition(format!("{tag} needs an input code")));
    let k = || get(params, "k", Some(1usize));
    match tag {
        TheoremId::T31 => build_t31(
            input()?,
            get(params, "e", None)?,
            k()?,
            get(params, "ext", Some(Extension::Path))?,
        ),
        TheoremId::T32 => build_t32(input()?, k()?),
        TheoremId::C33 => build_c33(input()?, k()?),
        TheoremId::N34 => build_n34_tile(get(params, "p", Some(1))?, get(params, "q", Some(1))?),
        TheoremId::T35 => build_t35(k()?),
        TheoremId::T36 => build_t36(input()?, k()?),
        TheoremId::T37 => {
            let base = input()?;
            let inferred = if base.graph().dimension() == 2 {
                1
            } else {
                base.graph().factor(2).order()
            };
            build_t37(
                base,
                T37Params {
                    k: get(params, "k", Some(inferred))?,
                    add_row: get_flag(params, "add_row")?,
                    add_col: get_flag(params, "add_col")?,
                    layers: get(params, "i", None)?,
                },
            )
        }
        TheoremId::N41 => build_n41(get(params, "n", None)?),
        TheoremId::T42 => build_t42(),
        TheoremId::T43a => build_t43(Variant::A, get(params, "n", Some(6))?, k()?),
        TheoremId::T43b => build_t43(Variant::B, get(params, "n", None)?, k()?),
        TheoremId::T43c => build_t43(Variant::C, get(params, "n", None)?, k()?),
        TheoremId::T44a => build_t44(Variant::A, get(params, "n", Some(14))?, k()?),
        TheoremId::T44b => build_t44(Variant::B, get(params, "n", None)?, k()?),
        TheoremId::T51a => build_t51(get(params, "e", None)?, 1),
        TheoremId::T51b => build_t51(get(params, "e", None)?, 2),
        TheoremId::TrivPn => build_triv_pn(get(params, "n", None)?),
        TheoremId::O52 => build_o52(get(params, "n", None)?),
        TheoremId::T53 => build_t53(get(params, "n", None)?, get(params, "l", None)?),
    }
}
