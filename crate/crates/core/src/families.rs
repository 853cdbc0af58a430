//! Toroidal families: `{6,3}_(b,c)` maps, `(3,3,3)_(b,c)` hypermaps, the
//! rank-four groups `G⁺(p,a,b)` and the polytopes `{{6,3}_(b,c),{3,p}}`,
//! with the table reproduction harness.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cgroups::{CGroup, CPlusGroup};
use crate::checks::{classify, ClassificationReport, ClassifyOptions, Verdict};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::fp::{FiniteQuotient, Presentation, Word};
use crate::geometry::CosetGeometry;
use crate::Caps;

fn toroidal_relator(b: u32, c: u32) -> String {
    format!("(r1r2(r1r0)^2)^{b}(r2r1(r0r1)^2)^{c}")
}

fn check_bc(b: u32, c: u32) -> Result<()> {
    if b == 0 && c == 0 {
        return Err(Error::Invalid(
            "(b,c) = (0,0) gives an empty relator".into(),
        ));
    }
    Ok(())
}

/// Regular iff `bc(b-c) = 0`.
pub fn toroidal_is_regular(b: u32, c: u32) -> bool {
    b == 0 || c == 0 || b == c
}

/// `[6,3]` with the toroidal relator `(ρ1ρ2(ρ1ρ0)²)^b (ρ2ρ1(ρ0ρ1)²)^c`.
pub fn presentation_map63(b: u32, c: u32) -> Result<Presentation> {
    check_bc(b, c)?;
    Presentation::from_strs(
        &["r0", "r1", "r2"],
        &[
            "r0^2",
            "r1^2",
            "r2^2",
            "(r0r1)^6",
            "(r1r2)^3",
            "(r0r2)^2",
            &toroidal_relator(b, c),
        ],
    )
}

/// `[6,3,p]` with the toroidal relator.
pub fn presentation_poly63p(p: u32, b: u32, c: u32) -> Result<Presentation> {
    check_bc(b, c)?;
    if p < 2 {
        return Err(Error::Invalid(format!("p must be at least 2, got {p}")));
    }
    Presentation::from_strs(
        &["r0", "r1", "r2", "r3"],
        &[
            "r0^2",
            "r1^2",
            "r2^2",
            "r3^2",
            "(r0r1)^6",
            "(r1r2)^3",
            &format!("(r2r3)^{p}"),
            "(r0r2)^2",
            "(r0r3)^2",
            "(r1r3)^2",
            &toroidal_relator(b, c),
        ],
    )
}

/// Rotation group of the `(3,3,3)_(b,c)` hypermap:
/// `⟨x, y | x³, y³, (x⁻¹y)³, (xy⁻¹x)^b (xy)^c⟩`.
pub fn presentation_hyper333(b: u32, c: u32) -> Result<Presentation> {
    check_bc(b, c)?;
    Presentation::from_strs(
        &["x", "y"],
        &["x^3", "y^3", "(x^-1y)^3", &format!("(xy^-1x)^{b}(xy)^{c}")],
    )
}

/// `G⁺(p,a,b) = ⟨x,y,z | x³, y³, z^p, (x⁻¹z)², (y⁻¹z)², (x⁻¹y)³, (xy⁻¹x)^a(xy)^b⟩`.
pub fn gplus_pab(p: u32, a: u32, b: u32) -> Result<Presentation> {
    if p < 2 {
        return Err(Error::Invalid(format!("p must be at least 2, got {p}")));
    }
    if a == 0 && b == 0 {
        return Err(Error::Invalid(
            "(a,b) = (0,0) gives an empty relator".into(),
        ));
    }
    Presentation::from_strs(
        &["x", "y", "z"],
        &[
            "x^3",
            "y^3",
            &format!("z^{p}"),
            "(x^-1z)^2",
            "(y^-1z)^2",
            "(x^-1y)^3",
            &format!("(xy^-1x)^{a}(xy)^{b}"),
        ],
    )
}

/// Rewrites an even-length word in `ρ_0..ρ_{r-1}` as a word in
/// `α_1..α_{r-1}` (generators `0..r-2`) using `ρ_iρ_j = α_i⁻¹α_j`, `α_0 = 1`.
/// Inverse letters are read as the involutions themselves.
pub fn rotational_rewrite(word: &Word) -> Result<Word> {
    let letters = word.letters();
    if !letters.len().is_multiple_of(2) {
        return Err(Error::Invalid(format!(
            "only even words lie in the rotation subgroup; this one has length {}",
            letters.len()
        )));
    }
    let alpha = |i: usize| {
        if i == 0 {
            Word::empty()
        } else {
            Word::generator(i - 1)
        }
    };
    Ok(letters.chunks(2).fold(Word::empty(), |acc, pair| {
        acc.mul(&alpha(pair[0].gen).inverse())
            .mul(&alpha(pair[1].gen))
    }))
}

/// Presentation of the rotation group obtained by rewriting every relator of
/// a presentation on involutions; relators that rewrite to the empty word are
/// dropped. Generators are named `a1..a{r-1}`.
pub fn rotation_presentation(p: &Presentation) -> Result<Presentation> {
    let r = p.generator_count();
    if r < 2 {
        return Err(Error::Invalid(
            "a rotation group needs at least two involutions".into(),
        ));
    }
    let names: Vec<String> = (1..r).map(|i| format!("a{i}")).collect();
    let mut relators = Vec::new();
    for w in p.relators() {
        let rw = rotational_rewrite(w)?;
        if !rw.is_empty() && !relators.contains(&rw) {
            relators.push(rw);
        }
    }
    Presentation::new(names, relators)
}

/// Rotation presentation of `{{6,3}_(b,c),{3,p}}`.
pub fn presentation_poly63p_rotations(p: u32, b: u32, c: u32) -> Result<Presentation> {
    rotation_presentation(&presentation_poly63p(p, b, c)?)
}

/// Coset geometry of the rotation construction on `c`.
pub fn build_hypertope_from_cplus(c: &CPlusGroup, caps: &Caps) -> Result<CosetGeometry> {
    CosetGeometry::from_cplus(c, caps)
}

fn quotient_cgroup(p: &Presentation, caps: &Caps) -> Result<CGroup> {
    let q = FiniteQuotient::enumerate(p, caps.max_cosets)?;
    CGroup::with_group(q.group().clone(), q.generator_images().to_vec())
}

fn quotient_cplus(p: &Presentation, caps: &Caps) -> Result<CPlusGroup> {
    let q = FiniteQuotient::enumerate(p, caps.max_cosets)?;
    CPlusGroup::with_group(q.group().clone(), q.generator_images().to_vec())
}

/// The hypertope `(3,3,3)_(b,c)`.
#[derive(Debug, Clone)]
pub struct Hyper333 {
    pub rotations: CPlusGroup,
    /// Geometry of the rotation construction.
    pub geometry: CosetGeometry,
    /// `⟨ρ_1^{ρ_0}, ρ_1, ρ_2⟩` inside the `{6,3}_(b,c)` quotient, when that
    /// quotient does not collapse (its order is twice the rotation group's).
    pub cgroup: Option<CGroup>,
}

pub fn hypertope_333(b: u32, c: u32, caps: &Caps) -> Result<Hyper333> {
    let rotations = quotient_cplus(&presentation_hyper333(b, c)?, caps)?;
    let geometry = CosetGeometry::from_cplus(&rotations, caps)?;
    let map = quotient_cgroup(&presentation_map63(b, c)?, caps)?;
    let r = map.generators();
    let gens = vec![r[1].conjugate_by(&r[0]), r[1].clone(), r[2].clone()];
    let triangle = CGroup::new(gens)?;
    let cgroup = (triangle.group().order() == 2 * rotations.group().order()).then_some(triangle);
    Ok(Hyper333 {
        rotations,
        geometry,
        cgroup,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilySpec {
    Map63 { b: u32, c: u32 },
    Hyper333 { b: u32, c: u32 },
    GplusPab { p: u32, a: u32, b: u32 },
    Poly63p { p: u32, b: u32, c: u32 },
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilySpec::Map63 { b, c } => write!(f, "map63 ({b},{c})"),
            FamilySpec::Hyper333 { b, c } => write!(f, "hyper333 ({b},{c})"),
            FamilySpec::GplusPab { p, a, b } => write!(f, "gplus_pab p={p} ({a},{b})"),
            FamilySpec::Poly63p { p, b, c } => write!(f, "poly63p p={p} ({b},{c})"),
        }
    }
}

/// A family member built as a geometry under its group.
#[derive(Debug, Clone)]
pub struct FamilyGeometry {
    pub spec: FamilySpec,
    pub presentation: Presentation,
    pub presented_order: u128,
    pub geometry: CosetGeometry,
}

impl FamilySpec {
    pub fn parse(
        family: &str,
        p: Option<u32>,
        a: Option<u32>,
        b: Option<u32>,
        c: Option<u32>,
    ) -> Result<Self> {
        let need = |v: Option<u32>, name: &str| {
            v.ok_or_else(|| Error::Invalid(format!("family {family} needs parameter {name}")))
        };
        Ok(match family {
            "map63" => FamilySpec::Map63 {
                b: need(b, "b")?,
                c: need(c, "c")?,
            },
            "hyper333" => FamilySpec::Hyper333 {
                b: need(b, "b")?,
                c: need(c, "c")?,
            },
            "gplus_pab" => FamilySpec::GplusPab {
                p: need(p, "p")?,
                a: need(a, "a")?,
                b: need(b, "b")?,
            },
            "poly63p" => FamilySpec::Poly63p {
                p: need(p, "p")?,
                b: need(b, "b")?,
                c: need(c, "c")?,
            },
            other => {
                return Err(Error::Invalid(format!(
                    "unknown family {other:?}; expected map63, hyper333, gplus_pab or poly63p"
                )))
            }
        })
    }

    /// `(b,c)` with `b²+bc+c² ≤ 3`, where the quotient is too small to be
    /// thin: `(1,1)`, and `(1,0)`, `(0,1)` where every family collapses.
    /// For `{6,3}_(b,c)` only the latter two.
    pub fn is_degenerate(&self) -> bool {
        let norm = |b: u32, c: u32| b * b + b * c + c * c;
        match *self {
            FamilySpec::Hyper333 { b, c } | FamilySpec::Poly63p { b, c, .. } => norm(b, c) <= 3,
            FamilySpec::GplusPab { a, b, .. } => norm(a, b) <= 3,
            FamilySpec::Map63 { b, c } => norm(b, c) <= 1,
        }
    }

    /// `p = 6` lies outside the tabulated range and is not classified here.
    pub fn is_deferred(&self) -> bool {
        matches!(
            *self,
            FamilySpec::GplusPab { p: 6, .. } | FamilySpec::Poly63p { p: 6, .. }
        )
    }

    /// The presentation whose quotient carries the geometry.
    pub fn presentation(&self) -> Result<Presentation> {
        match *self {
            FamilySpec::Map63 { b, c } => presentation_map63(b, c),
            FamilySpec::Hyper333 { b, c } => presentation_hyper333(b, c),
            FamilySpec::GplusPab { p, a, b } => gplus_pab(p, a, b),
            FamilySpec::Poly63p { p, b, c } if toroidal_is_regular(b, c) => {
                presentation_poly63p(p, b, c)
            }
            FamilySpec::Poly63p { p, b, c } => presentation_poly63p_rotations(p, b, c),
        }
    }

    /// Enumerates the group and builds the geometry: C-group geometries for
    /// maps and regular polytopes, the rotation construction otherwise.
    pub fn build(&self, caps: &Caps) -> Result<FamilyGeometry> {
        let presentation = self.presentation()?;
        let q = FiniteQuotient::enumerate(&presentation, caps.max_cosets)?;
        let gens = q.generator_images().to_vec();
        let rotation_route = match *self {
            FamilySpec::Map63 { .. } => false,
            FamilySpec::Poly63p { b, c, .. } => !toroidal_is_regular(b, c),
            _ => true,
        };
        let geometry = if rotation_route {
            CosetGeometry::from_cplus(&CPlusGroup::with_group(q.group().clone(), gens)?, caps)?
        } else {
            CosetGeometry::from_cgroup(&CGroup::with_group(q.group().clone(), gens)?, caps)?
        };
        Ok(FamilyGeometry {
            spec: *self,
            presented_order: q.order() as u128,
            presentation,
            geometry,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TableKind {
    /// `{{6,3}_s,{3,p}}` polytopes.
    Polytope,
    /// `{(3,3,3)_s,p}` hypertopes.
    Hypertope,
}

impl fmt::Display for TableKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TableKind::Polytope => "polytope",
            TableKind::Hypertope => "hypertope",
        })
    }
}

/// One row of the published tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub table: TableKind,
    pub p: u32,
    pub s: (u32, u32),
    pub g: u128,
    pub group: &'static str,
    pub regular: bool,
}

const fn row(
    table: TableKind,
    p: u32,
    s: (u32, u32),
    g: u128,
    group: &'static str,
    regular: bool,
) -> TableRow {
    TableRow {
        table,
        p,
        s,
        g,
        group,
        regular,
    }
}

pub const POLYTOPE_TABLE: [TableRow; 12] = [
    row(TableKind::Polytope, 3, (2, 0), 240, "S_5 x C_2", true),
    row(TableKind::Polytope, 3, (3, 0), 1296, "[1 1 2]^3 : C_2", true),
    row(TableKind::Polytope, 3, (4, 0), 15360, "[1 1 2]^4 : C_2", true),
    row(TableKind::Polytope, 3, (1, 2), 336, "PGL_2(7)", false),
    row(TableKind::Polytope, 3, (1, 3), 2184, "PSL_2(13) x C_2", false),
    row(TableKind::Polytope, 3, (1, 4), 8064, "SL_2(7) : A_4 : C_2", false),
    row(TableKind::Polytope, 3, (2, 2), 2880, "S_5 x S_4", true),
    row(TableKind::Polytope, 3, (2, 3), 6840, "PGL_2(19)", false),
    row(TableKind::Polytope, 4, (1, 1), 288, "S_3 : [3,4]", true),
    row(TableKind::Polytope, 4, (2, 0), 768, "[3,3,4] x C_2", true),
    row(TableKind::Polytope, 4, (1, 2), 2016, "PGL_2(7) x S_3", false),
    row(TableKind::Polytope, 5, (2, 0), 28800, "[3,3,5] x C_2", true),
];

pub const HYPERTOPE_TABLE: [TableRow; 11] = [
    row(TableKind::Hypertope, 3, (2, 0), 120, "S_5", true),
    row(TableKind::Hypertope, 3, (3, 0), 648, "[1 1 2]^3", true),
    row(TableKind::Hypertope, 3, (4, 0), 7680, "[1 1 2]^4", true),
    row(TableKind::Hypertope, 3, (1, 2), 168, "PSL_2(7)", false),
    row(TableKind::Hypertope, 3, (1, 3), 1092, "PSL_2(13)", false),
    row(TableKind::Hypertope, 3, (1, 4), 4032, "SL_2(7) : A_4", false),
    row(TableKind::Hypertope, 3, (2, 2), 1440, "A_5 x S_4", true),
    row(TableKind::Hypertope, 3, (2, 3), 3420, "PSL_2(19)", false),
    row(TableKind::Hypertope, 4, (1, 2), 1008, "PSL_2(7) x S_3", false),
    row(TableKind::Hypertope, 4, (2, 0), 384, "[3,3,4]", true),
    row(TableKind::Hypertope, 5, (2, 0), 14400, "[3,3,5]", true),
];

impl TableRow {
    pub fn spec(&self) -> FamilySpec {
        let (b, c) = self.s;
        if self.table == TableKind::Polytope {
            FamilySpec::Poly63p { p: self.p, b, c }
        } else {
            FamilySpec::GplusPab {
                p: self.p,
                a: b,
                b: c,
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    Match,
    Mismatch,
    Inconclusive,
}

impl fmt::Display for RowStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RowStatus::Match => "MATCH",
            RowStatus::Mismatch => "MISMATCH",
            RowStatus::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RowOutcome {
    pub row: TableRow,
    pub status: RowStatus,
    /// Order of the enumerated presentation (`W`, `W⁺` or `G⁺`).
    pub presented_order: Option<u128>,
    /// Order of the type-preserving automorphism group, found by classification.
    pub automorphism_order: Option<u128>,
    pub chamber_count: Option<usize>,
    pub verdict: Option<Verdict>,
    pub mismatches: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip)]
    pub report: Option<Box<ClassificationReport>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PairOutcome {
    pub p: u32,
    pub s: (u32, u32),
    pub polytope_g: u128,
    pub hypertope_g: u128,
    pub measured_polytope: Option<u128>,
    pub measured_hypertope: Option<u128>,
    /// Both the published and the measured orders satisfy `polytope = 2·hypertope`.
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct TableReport {
    pub rows: Vec<RowOutcome>,
    pub pairs: Vec<PairOutcome>,
    pub unpaired: Vec<TableRow>,
    pub informational: Vec<String>,
}

/// Classifies one row. The published `g` is compared with the order of the
/// automorphism group, and the enumerated order with `g` (rotation groups of
/// regular hypertopes have index two).
pub fn reproduce_row(row: &TableRow, opts: &ClassifyOptions) -> RowOutcome {
    let mut out = RowOutcome {
        row: *row,
        status: RowStatus::Inconclusive,
        presented_order: None,
        automorphism_order: None,
        chamber_count: None,
        verdict: None,
        mismatches: Vec::new(),
        error: None,
        report: None,
    };
    let built = row.spec().build(&opts.caps);
    let result = built.and_then(|fg| Ok((fg.presented_order, classify(&fg.geometry, opts)?)));
    let (order, report) = match result {
        Ok(x) => x,
        Err(e) => {
            if !e.is_inconclusive() {
                out.status = RowStatus::Mismatch;
            }
            out.error = Some(e.to_string());
            return out;
        }
    };
    out.presented_order = Some(order);
    out.chamber_count = Some(report.chamber_count);
    out.verdict = Some(report.verdict);
    out.automorphism_order = report.automorphisms.as_ref().map(|a| a.group_order);
    let expected_verdict = if row.regular {
        Verdict::RegularHypertope
    } else {
        Verdict::ChiralHypertope
    };
    if report.verdict != expected_verdict {
        out.mismatches.push(format!(
            "verdict {} but the table says {}",
            report.verdict, expected_verdict
        ));
    }
    if out.automorphism_order != Some(row.g) {
        out.mismatches.push(format!(
            "automorphism group order {:?} but g = {}",
            out.automorphism_order, row.g
        ));
    }
    let factor = if row.table == TableKind::Hypertope && row.regular { 2 } else { 1 };
    if order * factor != row.g {
        out.mismatches.push(format!(
            "enumerated order {order} (x{factor}) but g = {}",
            row.g
        ));
    }
    out.status = if out.mismatches.is_empty() {
        RowStatus::Match
    } else {
        RowStatus::Mismatch
    };
    out.report = Some(Box::new(report));
    out
}

/// Reproduces both tables, one independent job per row.
pub fn reproduce_tables(opts: &ClassifyOptions) -> TableReport {
    let rows: Vec<TableRow> = POLYTOPE_TABLE.iter().chain(HYPERTOPE_TABLE.iter()).copied().collect();
    let inner = ClassifyOptions {
        exec: Exec::Sequential,
        ..*opts
    };
    let outcomes = opts.exec.map(&rows, |r| reproduce_row(r, &inner));
    let measured = |table: TableKind, p: u32, s: (u32, u32)| {
        outcomes
            .iter()
            .find(|o| o.row.table == table && o.row.p == p && o.row.s == s)
            .and_then(|o| o.automorphism_order)
    };
    let mut pairs = Vec::new();
    let mut unpaired = Vec::new();
    for t1 in &POLYTOPE_TABLE {
        match HYPERTOPE_TABLE.iter().find(|t2| t2.p == t1.p && t2.s == t1.s) {
            Some(t2) => {
                let (m1, m2) = (measured(TableKind::Polytope, t1.p, t1.s), measured(TableKind::Hypertope, t2.p, t2.s));
                pairs.push(PairOutcome {
                    p: t1.p,
                    s: t1.s,
                    polytope_g: t1.g,
                    hypertope_g: t2.g,
                    measured_polytope: m1,
                    measured_hypertope: m2,
                    holds: t1.g == 2 * t2.g && matches!((m1, m2), (Some(a), Some(b)) if a == 2 * b),
                });
            }
            None => unpaired.push(*t1),
        }
    }
    let informational = vec![
        "completeness of the tables is conjectural and not checked".to_string(),
        "captions count g flags; measured chamber counts are listed and not asserted".to_string(),
    ];
    TableReport {
        rows: outcomes,
        pairs,
        unpaired,
        informational,
    }
}

impl TableReport {
    pub fn all_match(&self) -> bool {
        self.rows.iter().all(|r| r.status == RowStatus::Match) && self.pairs.iter().all(|p| p.holds)
    }

    pub fn any_inconclusive(&self) -> bool {
        self.rows
            .iter()
            .any(|r| r.status == RowStatus::Inconclusive)
    }

    /// Aligned side-by-side listing.
    pub fn to_text(&self) -> String {
        let opt = |v: Option<u128>| v.map_or("-".to_string(), |x| x.to_string());
        let mut out = format!(
            "{:<9} {:>2} {:<7} {:>6} {:>10} {:>8} {:>8} {:>9} {:<9} {:<19} {}\n",
            "table",
            "p",
            "s",
            "g",
            "aut",
            "presented",
            "chambers",
            "published",
            "measured",
            "group",
            "status"
        );
        for r in &self.rows {
            let measured = match r.verdict {
                Some(Verdict::RegularHypertope) => "regular".to_string(),
                Some(Verdict::ChiralHypertope) => "chiral".to_string(),
                Some(v) => v.to_string(),
                None => "-".to_string(),
            };
            out.push_str(&format!(
                "{:<9} {:>2} {:<7} {:>6} {:>10} {:>8} {:>8} {:>9} {:<9} {:<19} {}\n",
                r.row.table,
                r.row.p,
                format!("({},{})", r.row.s.0, r.row.s.1),
                r.row.g,
                opt(r.automorphism_order),
                opt(r.presented_order),
                r.chamber_count.map_or("-".to_string(), |c| c.to_string()),
                if r.row.regular { "regular" } else { "chiral" },
                measured,
                r.row.group,
                r.status
            ));
            for m in &r.mismatches {
                out.push_str(&format!("      {m}\n"));
            }
            if let Some(e) = &r.error {
                out.push_str(&format!("      {e}\n"));
            }
        }
        out.push('\n');
        for p in &self.pairs {
            out.push_str(&format!(
                "double cover p={} ({},{}): {} = 2 x {}, measured {} / {}: {}\n",
                p.p,
                p.s.0,
                p.s.1,
                p.polytope_g,
                p.hypertope_g,
                opt(p.measured_polytope),
                opt(p.measured_hypertope),
                if p.holds { "MATCH" } else { "MISMATCH" }
            ));
        }
        for u in &self.unpaired {
            out.push_str(&format!(
                "unpaired {} row p={} ({},{})\n",
                u.table, u.p, u.s.0, u.s.1
            ));
        }
        for note in &self.informational {
            out.push_str(&format!("note: {note}\n"));
        }
        out
    }
}

/// Parameter grid for sweeps, read from `families.toml`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FamiliesConfig {
    pub caps: Caps,
    pub sweep: Vec<SweepGrid>,
}

/// Inclusive ranges `[lo, hi]` for the parameters a family uses.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepGrid {
    pub family: String,
    pub p: Option<[u32; 2]>,
    pub a: Option<[u32; 2]>,
    pub b: Option<[u32; 2]>,
    pub c: Option<[u32; 2]>,
    #[serde(default)]
    pub skip_degenerate: bool,
}

impl FamiliesConfig {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse {
            line: e
                .span()
                .map_or(0, |s| text[..s.start].lines().count().max(1)),
            message: e.message().to_string(),
        })
    }
}

impl SweepGrid {
    pub fn specs(&self) -> Result<Vec<FamilySpec>> {
        let range = |r: Option<[u32; 2]>| -> Vec<Option<u32>> {
            match r {
                Some([lo, hi]) => (lo..=hi).map(Some).collect(),
                None => vec![None],
            }
        };
        let mut out = Vec::new();
        for p in range(self.p) {
            for a in range(self.a) {
                for b in range(self.b) {
                    for c in range(self.c) {
                        let uses_a = self.family == "gplus_pab";
                        let (a0, b0) = if uses_a { (a, b) } else { (None, b) };
                        if uses_a && a == Some(0) && b == Some(0) {
                            continue;
                        }
                        if !uses_a && b == Some(0) && c == Some(0) {
                            continue;
                        }
                        let spec = FamilySpec::parse(&self.family, p, a0, b0, c)?;
                        if !(self.skip_degenerate && spec.is_degenerate()) {
                            out.push(spec);
                        }
                    }
                }
            }
        }
        out.dedup();
        Ok(out)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepOutcome {
    pub spec: FamilySpec,
    pub presented_order: Option<u128>,
    pub verdict: Option<Verdict>,
    pub automorphism_order: Option<u128>,
    /// Set for `(3,3,3)_(b,c)` and `{6,3}_(b,c)`: the verdict agrees with `bc(b-c) = 0`.
    pub toroidal_rule_holds: Option<bool>,
    pub deferred: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Builds and classifies every family member; `p = 6` is reported as
/// deferred.
pub fn sweep(specs: &[FamilySpec], opts: &ClassifyOptions) -> Vec<SweepOutcome> {
    let inner = ClassifyOptions {
        exec: Exec::Sequential,
        ..*opts
    };
    opts.exec.map(specs, |spec| {
        let mut out = SweepOutcome {
            spec: *spec,
            presented_order: None,
            verdict: None,
            automorphism_order: None,
            toroidal_rule_holds: None,
            deferred: spec.is_deferred(),
            error: None,
        };
        if out.deferred {
            return out;
        }
        match spec
            .build(&inner.caps)
            .and_then(|fg| Ok((fg.presented_order, classify(&fg.geometry, &inner)?)))
        {
            Ok((order, report)) => {
                out.presented_order = Some(order);
                out.verdict = Some(report.verdict);
                out.automorphism_order = report.automorphisms.as_ref().map(|a| a.group_order);
                if let FamilySpec::Hyper333 { b, c } | FamilySpec::Map63 { b, c } = *spec {
                    if !spec.is_degenerate() {
                        let want = if toroidal_is_regular(b, c) {
                            Verdict::RegularHypertope
                        } else {
                            Verdict::ChiralHypertope
                        };
                        out.toroidal_rule_holds = Some(report.verdict == want);
                    }
                }
            }
            Err(e) => out.error = Some(e.to_string()),
        }
        out
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::group_order;

    #[test]
    fn map_orders() {
        assert_eq!(
            group_order(&presentation_map63(2, 0).unwrap(), 10_000).unwrap(),
            48
        );
        assert_eq!(
            group_order(&presentation_map63(1, 1).unwrap(), 10_000).unwrap(),
            36
        );
        assert!(presentation_map63(0, 0).is_err());
    }

    #[test]
    fn hyper333_orders() {
        for (b, c) in [(1, 1), (2, 0), (2, 1), (3, 2)] {
            let n = group_order(&presentation_hyper333(b, c).unwrap(), 10_000).unwrap();
            assert_eq!(n as u32, 3 * (b * b + b * c + c * c));
        }
    }

    #[test]
    fn rewrite_pairs() {
        let names: Vec<String> = ["r0", "r1", "r2"].iter().map(|s| s.to_string()).collect();
        let w = Word::parse("r1r2r1r0r1r0", &names).unwrap();
        let a = rotational_rewrite(&w).unwrap();
        assert_eq!(a.format(&["a1".into(), "a2".into()]), "a1^-1 a2 a1^-2");
        assert!(rotational_rewrite(&Word::parse("r0r1r2", &names).unwrap()).is_err());
    }

    #[test]
    fn config_round_trip() {
        let cfg = FamiliesConfig::parse(
            "[caps]\nmax_cosets = 1000\n\n[[sweep]]\nfamily = \"hyper333\"\nb = [1, 2]\nc = [1, 2]\nskip_degenerate = true\n",
        )
        .unwrap();
        assert_eq!(cfg.caps.max_cosets, 1000);
        assert_eq!(cfg.caps.index, Caps::default().index);
        let specs = cfg.sweep[0].specs().unwrap();
        assert_eq!(specs.len(), 3);
        assert!(FamiliesConfig::parse("[caps]\nbogus = 1\n").is_err());
    }
}
