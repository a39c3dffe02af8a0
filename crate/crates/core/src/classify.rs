//! Which groups admit an n-PDR, and building verified ones.

use serde::{Deserialize, Serialize};

use crate::aut::{automorphisms_with, AutOptions, OrderedPartition, PermGroup};
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::group::{parse_group, Group};
use crate::ncayley::{build_ncayley, translation_generators, ConnectionFamily, FamilyJson, NCayleyDigraph};
use crate::recipes::{self, Construction, RecipeOutput};
use crate::search::{self, NonExistenceCertificate, SearchBudget};

/// The groups that appear in the exception lists, told apart by cheap
/// invariants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SmallGroup {
    Z1,
    Z2,
    Z3,
    Z2_2,
    Z2_3,
    Z2_4,
    Q8,
    Z3_2,
    Other,
}

impl SmallGroup {
    pub fn name(self) -> &'static str {
        match self {
            SmallGroup::Z1 => "Z1",
            SmallGroup::Z2 => "Z2",
            SmallGroup::Z3 => "Z3",
            SmallGroup::Z2_2 => "Z2^2",
            SmallGroup::Z2_3 => "Z2^3",
            SmallGroup::Z2_4 => "Z2^4",
            SmallGroup::Q8 => "Q8",
            SmallGroup::Z3_2 => "Z3^2",
            SmallGroup::Other => "other",
        }
    }

    /// Groups of order at least 4 with no DRR.
    pub fn lacks_drr(self) -> bool {
        matches!(
            self,
            SmallGroup::Z2_2 | SmallGroup::Z2_3 | SmallGroup::Z2_4 | SmallGroup::Q8 | SmallGroup::Z3_2
        )
    }

    /// Groups with no 2-PDR.
    pub fn lacks_haar(self) -> bool {
        matches!(
            self,
            SmallGroup::Z1 | SmallGroup::Z2 | SmallGroup::Z3 | SmallGroup::Z2_2 | SmallGroup::Z2_3
        )
    }
}

/// Order plus exponent separate the elementary abelian groups from the
/// other groups of their order; `Q8` is the non-abelian group of order 8
/// with a single involution.
pub fn identify_small(g: &Group) -> SmallGroup {
    match g.order() {
        1 => SmallGroup::Z1,
        2 => SmallGroup::Z2,
        3 => SmallGroup::Z3,
        4 if g.exponent() == 2 => SmallGroup::Z2_2,
        8 if g.exponent() == 2 => SmallGroup::Z2_3,
        16 if g.exponent() == 2 => SmallGroup::Z2_4,
        8 if !g.is_abelian() && g.exponent() == 4 && g.involution_count() == 1 => SmallGroup::Q8,
        9 if g.exponent() == 3 => SmallGroup::Z3_2,
        _ => SmallGroup::Other,
    }
}

/// Which negative condition rules an instance out.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum NegativeClause {
    /// `n = 1` and `|G| ≥ 3`.
    OnePart,
    /// `n = 2` and `G` is `Z1`, `Z2`, `Z3`, `Z2^2` or `Z2^3`.
    TwoParts,
    /// `3 ≤ n ≤ 5` and `G` is trivial.
    TrivialGroup,
}

impl NegativeClause {
    pub fn number(self) -> usize {
        match self {
            NegativeClause::OnePart => 1,
            NegativeClause::TwoParts => 2,
            NegativeClause::TrivialGroup => 3,
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            NegativeClause::OnePart => "n = 1 and |G| >= 3",
            NegativeClause::TwoParts => "n = 2 and G is one of Z1, Z2, Z3, Z2^2, Z2^3",
            NegativeClause::TrivialGroup => "3 <= n <= 5 and G is trivial",
        }
    }
}

pub fn negative_clause(g: &Group, n: usize) -> Option<NegativeClause> {
    let kind = identify_small(g);
    if n == 1 && g.order() >= 3 {
        Some(NegativeClause::OnePart)
    } else if n == 2 && kind.lacks_haar() {
        Some(NegativeClause::TwoParts)
    } else if (3..=5).contains(&n) && kind == SmallGroup::Z1 {
        Some(NegativeClause::TrivialGroup)
    } else {
        None
    }
}

/// True iff `g` admits an n-PDR (`n ≥ 1`).
pub fn admits_npdr(g: &Group, n: usize) -> bool {
    n >= 1 && negative_clause(g, n).is_none()
}

pub const CERTIFICATE_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checks {
    pub regular: bool,
    pub contains_rn_action: bool,
    pub aut_order_equals_group_order: bool,
    pub parts_are_orbits: bool,
    pub parts_independent: bool,
}

impl Checks {
    pub fn all(&self) -> bool {
        self.regular
            && self.contains_rn_action
            && self.aut_order_equals_group_order
            && self.parts_are_orbits
            && self.parts_independent
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Exists,
    NotExists,
    /// A supplied digraph failed at least one check.
    Rejected,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DigraphStats {
    pub vertex_count: usize,
    pub arc_count: usize,
    pub valency: Option<usize>,
}

/// Machine-checkable record of a positive or negative answer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub version: u32,
    pub tool_version: String,
    pub group: String,
    pub n: usize,
    pub outcome: Outcome,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub construction: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilyJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub digraph: Option<DigraphStats>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub aut_order: Option<serde_json::Value>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub aut_generators: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checks: Option<Checks>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nonexistence: Option<NonExistenceCertificate>,
}

impl Certificate {
    fn blank(g: &Group, n: usize, outcome: Outcome, seed: u64) -> Certificate {
        Certificate {
            version: CERTIFICATE_VERSION,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            group: g.spec().to_string(),
            n,
            outcome,
            seed,
            construction: None,
            family: None,
            digraph: None,
            aut_order: None,
            aut_generators: Vec::new(),
            checks: None,
            nonexistence: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Certificate> {
        let value: serde_json::Value = serde_json::from_str(text)?;
        let inner = value.get("certificate").cloned().unwrap_or(value);
        Ok(serde_json::from_value(inner)?)
    }

    /// Rebuilds the digraph from the stored family and runs every check
    /// again. Only meaningful for positive certificates.
    pub fn reverify(&self) -> Result<Certificate> {
        let family = self
            .family
            .as_ref()
            .ok_or_else(|| Error::Precondition("certificate carries no connection family".into()))?;
        let g = parse_group(&family.group)?;
        let f = ConnectionFamily::from_json_value(family, g.order())?;
        let x = build_ncayley(&g, &f)?;
        let mut cert = verify_npdr(&g, &x)?;
        cert.seed = self.seed;
        cert.construction = self.construction.clone();
        Ok(cert)
    }
}

/// The automorphism group of an n-Cayley digraph of `g`, with the
/// translations supplied as known automorphisms.
fn full_automorphisms(g: &Group, d: &Digraph, translations_valid: bool) -> PermGroup {
    let known = if translations_valid {
        translation_generators(g, d.vertex_count() / g.order())
    } else {
        Vec::new()
    };
    let opts = AutOptions { known, cap: None };
    automorphisms_with(d, &OrderedPartition::unit(d.vertex_count()), &opts)
        .group()
        .expect("no cap")
}

fn check_digraph(g: &Group, d: &Digraph, n: usize, cert: &mut Certificate) -> Result<()> {
    let m = g.order();
    if d.vertex_count() != n * m {
        return Err(Error::Precondition(format!(
            "digraph has {} vertices, expected n·|G| = {}",
            d.vertex_count(),
            n * m
        )));
    }
    let parts: Vec<Vec<usize>> = (0..n).map(|i| (i * m..(i + 1) * m).collect()).collect();
    let translations = translation_generators(g, n);
    let contains_rn_action = translations.iter().all(|t| t.is_automorphism_of(d));
    let aut = full_automorphisms(g, d, contains_rn_action);
    let mut orbits = aut.orbits();
    orbits.sort();
    let checks = Checks {
        regular: d.is_regular().is_some(),
        contains_rn_action,
        aut_order_equals_group_order: aut.order() == &num_bigint::BigUint::from(m),
        parts_are_orbits: orbits == parts,
        parts_independent: parts.iter().all(|p| d.is_empty_on(p)),
    };
    let json = aut.to_json_value();
    cert.aut_order = Some(json.order);
    cert.aut_generators = json.generators;
    cert.digraph = Some(DigraphStats {
        vertex_count: d.vertex_count(),
        arc_count: d.arc_count(),
        valency: d.is_regular(),
    });
    cert.outcome = if checks.all() { Outcome::Exists } else { Outcome::Rejected };
    cert.checks = Some(checks);
    Ok(())
}

/// Runs the five n-PDR checks on an n-Cayley digraph.
pub fn verify_npdr(g: &Group, x: &NCayleyDigraph) -> Result<Certificate> {
    if x.group().order() != g.order() || x.group() != g {
        return Err(Error::Precondition("digraph was built over a different group".into()));
    }
    let mut cert = Certificate::blank(g, x.n(), Outcome::Rejected, 0);
    cert.family = Some(x.family().to_json_value(g.spec()));
    check_digraph(g, x.digraph(), x.n(), &mut cert)?;
    Ok(cert)
}

/// Runs the checks on a bare digraph whose vertex `v` is read as
/// `g_i` with `i = v / |G|`, `g = v mod |G|`.
pub fn verify_digraph(g: &Group, d: &Digraph) -> Result<Certificate> {
    let m = g.order();
    if d.vertex_count() == 0 || !d.vertex_count().is_multiple_of(m) {
        return Err(Error::Precondition(format!(
            "{} vertices is not a positive multiple of |G| = {m}",
            d.vertex_count()
        )));
    }
    let n = d.vertex_count() / m;
    let mut cert = Certificate::blank(g, n, Outcome::Rejected, 0);
    cert.family = ConnectionFamily::from_digraph(g, d).ok().map(|f| f.to_json_value(g.spec()));
    check_digraph(g, d, n, &mut cert)?;
    Ok(cert)
}

/// Picks the construction for a positive instance and runs any searches
/// it needs.
pub fn construct(g: &Group, n: usize, budget: &SearchBudget) -> Result<RecipeOutput> {
    if !admits_npdr(g, n) {
        return Err(Error::Precondition(format!("{} admits no {n}-PDR", g.spec())));
    }
    let kind = identify_small(g);
    if n == 1 {
        return recipes::recipe_empty(g);
    }
    match kind {
        SmallGroup::Z1 => {
            let found = search::find_trivial_group_npdr(n, budget)?;
            let family = ConnectionFamily::from_digraph(g, &found.value)?;
            return Ok(RecipeOutput {
                family,
                construction: Construction::TrivialGroupSearch,
                params: Default::default(),
            });
        }
        SmallGroup::Z2 | SmallGroup::Z3 => return recipes::recipe_small_cyclic(g, n),
        SmallGroup::Z2_2 => return recipes::recipe_klein(g, n),
        SmallGroup::Z2_3 => return recipes::recipe_z2_cubed(g, n),
        SmallGroup::Z2_4 | SmallGroup::Q8 | SmallGroup::Z3_2 => {
            return if n == 2 {
                recipes::recipe_exceptional_haar(g)
            } else {
                recipes::recipe_exceptional(g, n)
            };
        }
        SmallGroup::Other => {}
    }
    let r = search::find_drr(g, budget)?
        .ok_or_else(|| Error::Internal(format!("no DRR connection set for {} within the size bound", g.spec())))?
        .value;
    let l = search::find_hdr_companion(g, &r, budget)?.value;
    if n == 2 {
        recipes::recipe_hdr2(g, &r, &l)
    } else if g.is_elementary_abelian_2() {
        let b = recipes::default_extra_element(g, &r)
            .ok_or_else(|| Error::Internal("no element outside R".into()))?;
        recipes::recipe_case11(g, n, &r, &l, b)
    } else {
        let a = recipes::default_long_element(g)
            .ok_or_else(|| Error::Internal("no element of order at least 3".into()))?;
        recipes::recipe_case12(g, n, &r, &l, a)
    }
}

/// A verified n-PDR certificate, or a nonexistence certificate.
pub fn build_npdr(g: &Group, n: usize, budget: &SearchBudget) -> Result<Certificate> {
    if n == 0 {
        return Err(Error::Precondition("n must be positive".into()));
    }
    if let Some(clause) = negative_clause(g, n) {
        let mut cert = Certificate::blank(g, n, Outcome::NotExists, budget.seed);
        let proof = match search::prove_nonexistence(g, n, budget.threads) {
            Ok(p) => p,
            Err(Error::TooLarge(_)) => NonExistenceCertificate {
                group: g.spec().to_string(),
                n,
                candidates_enumerated: 0,
                claim: "no n-PDR exists".into(),
                method: "classification-cited".into(),
                basis: Some(format!("negative clause {}: {}", clause.number(), clause.describe())),
            },
            Err(e) => return Err(e),
        };
        cert.nonexistence = Some(proof);
        return Ok(cert);
    }
    let out = construct(g, n, budget)?;
    let x = build_ncayley(g, &out.family)?;
    let mut cert = verify_npdr(g, &x)?;
    if cert.outcome != Outcome::Exists {
        return Err(Error::Internal(format!(
            "{} construction for {} with n = {n} failed verification: {:?}",
            out.construction.name(),
            g.spec(),
            cert.checks
        )));
    }
    cert.seed = budget.seed;
    cert.construction = Some(out.construction.name().to_string());
    Ok(cert)
}

/// `build_npdr` together with the digraph it certifies.
pub fn build_npdr_with_digraph(
    g: &Group,
    n: usize,
    budget: &SearchBudget,
) -> Result<(Certificate, Option<NCayleyDigraph>)> {
    let cert = build_npdr(g, n, budget)?;
    let x = match &cert.family {
        Some(f) => Some(build_ncayley(g, &ConnectionFamily::from_json_value(f, g.order())?)?),
        None => None,
    };
    Ok((cert, x))
}
