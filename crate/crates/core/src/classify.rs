//! Decision procedures over module descriptors: isomorphism up to
//! tail equivalence, nonzero annihilator, highest-weight detection,
//! boundedness, and annihilator tags.
//!
//! Tags are quadruples (r, g, X, Y) extracted from the ambient weight
//! alone. The extraction functions are not pinned down by the
//! classification theorems, which only constrain equality, shape and
//! vanishing of tags; the default recipe here (finite-multiplicity value
//! count, head-to-tail gap, discrepancy partitions) satisfies those
//! constraints and sits behind a trait so a different recipe can be swapped
//! in without touching call sites. Every produced tag records the recipe
//! name.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::finrep;
use crate::modmodel::ModuleDescriptor;
use crate::orders::OrderKind;
use crate::weights::{Partition, WeightProfile};

/// Which classification case produced a quadruple tag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TagCase {
    LeftInfinite,
    RightInfinite,
    TwoSided,
    SymLimit,
}

/// The annihilator up to the quadruple parametrization: either the zero
/// ideal (infinite image) or a quadruple with its case of origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnnihilatorTag {
    ZeroIdeal,
    Quad {
        case: TagCase,
        r: u64,
        g: u64,
        x: Partition,
        y: Partition,
        recipe: String,
    },
}

impl AnnihilatorTag {
    /// Structural shape constraints per case.
    pub fn shape_ok(&self) -> bool {
        match self {
            AnnihilatorTag::ZeroIdeal => true,
            AnnihilatorTag::Quad { case, r, g, x, y, .. } => match case {
                TagCase::LeftInfinite => *g == 0 && x.is_empty(),
                TagCase::RightInfinite => *g == 0 && y.is_empty(),
                TagCase::TwoSided => x.is_empty() && y.is_empty(),
                TagCase::SymLimit => *r == 1 && *g == 0 && x.is_empty() && y.is_empty(),
            },
        }
    }
}

impl Serialize for AnnihilatorTag {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            AnnihilatorTag::ZeroIdeal => s.serialize_str("zero"),
            AnnihilatorTag::Quad {
                case,
                r,
                g,
                x,
                y,
                recipe,
            } => {
                let mut st = s.serialize_struct("tag", 6)?;
                st.serialize_field("case", case)?;
                st.serialize_field("r", r)?;
                st.serialize_field("g", g)?;
                st.serialize_field("x", x.parts())?;
                st.serialize_field("y", y.parts())?;
                st.serialize_field("recipe", recipe)?;
                st.end()
            }
        }
    }
}

impl std::fmt::Display for AnnihilatorTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AnnihilatorTag::ZeroIdeal => write!(f, "zero"),
            AnnihilatorTag::Quad { case, r, g, x, y, recipe } => write!(
                f,
                "I(r={r}, g={g}, X={:?}, Y={:?}) [{case:?}, recipe: {recipe}]",
                x.parts(),
                y.parts()
            ),
        }
    }
}

/// Pluggable extraction of the quadruple components from an ambient
/// dominant finite-image weight profile.
pub trait TagRecipe {
    fn name(&self) -> &str;
    /// Number of values the weight takes with finite multiplicity.
    fn r(&self, profile: &WeightProfile) -> Result<u64>;
    /// Gap between the two infinite value plateaus of a two-sided profile.
    fn g(&self, profile: &WeightProfile) -> Result<u64>;
    /// Young diagram of the finitely many deviations from the tail value.
    fn discrepancy(&self, profile: &WeightProfile) -> Result<Partition>;
}

/// The documented default recipe.
pub struct DefaultRecipe;

impl TagRecipe for DefaultRecipe {
    fn name(&self) -> &str {
        "default"
    }

    fn r(&self, profile: &WeightProfile) -> Result<u64> {
        // canonical profiles absorb tail values out of the middle, so the
        // middle values are exactly the finite-multiplicity ones
        Ok(profile.finite_value_counts().len() as u64)
    }

    fn g(&self, profile: &WeightProfile) -> Result<u64> {
        let (Some(l), Some(r)) = (profile.left_tail(), profile.right_tail()) else {
            return Err(Error::Domain("gap needs a two-sided profile".into()));
        };
        if !l.is_constant() || !r.is_constant() {
            return Err(Error::Domain("gap needs constant plateaus".into()));
        }
        let g = l.value_at(0) - r.value_at(0);
        u64::try_from(g).map_err(|_| Error::Domain("negative plateau gap".into()))
    }

    fn discrepancy(&self, profile: &WeightProfile) -> Result<Partition> {
        profile.discrepancy_partition()
    }
}

/// Isomorphism verdict; the note explains a `false` that was decided on
/// grounds outside the tail-equivalence criterion.
#[derive(Clone, Debug, Serialize)]
pub struct IsoVerdict {
    pub isomorphic: bool,
    pub note: Option<String>,
}

fn iso(b: bool) -> IsoVerdict {
    IsoVerdict {
        isomorphic: b,
        note: None,
    }
}

fn iso_note(note: &str) -> IsoVerdict {
    IsoVerdict {
        isomorphic: false,
        note: Some(note.into()),
    }
}

/// Two descriptors present isomorphic modules exactly when their ambient
/// weights agree and their support choices agree at all but finitely many
/// positions. Descriptors with different ambient weights or orders are
/// reported non-isomorphic with a note (that comparison is outside the
/// tail-equivalence criterion).
pub fn is_isomorphic(d1: &ModuleDescriptor, d2: &ModuleDescriptor) -> Result<IsoVerdict> {
    match (d1, d2) {
        (ModuleDescriptor::Vp { .. }, ModuleDescriptor::Vp { .. }) => {
            let l1 = d1.limit_weight()?;
            let l2 = d2.limit_weight()?;
            if l1.order() != l2.order() {
                return Ok(iso_note("different orders"));
            }
            if l1 != l2 {
                return Ok(iso_note("different lambda"));
            }
            let m1 = d1.limit_mu()?;
            let m2 = d2.limit_mu()?;
            Ok(iso(m1.tail_equivalent(&m2)?))
        }
        (
            ModuleDescriptor::SymLimit {
                prefix: p1,
                tail_start: s1,
                tail_step: t1,
            },
            ModuleDescriptor::SymLimit {
                prefix: p2,
                tail_start: s2,
                tail_step: t2,
            },
        ) => {
            // sequences are eventually equal iff the affine tail laws
            // coincide as functions of the index
            let law1 = (*t1, *s1 - (p1.len() as i64) * *t1);
            let law2 = (*t2, *s2 - (p2.len() as i64) * *t2);
            Ok(iso(law1 == law2))
        }
        _ => Ok(iso_note("different descriptor variants")),
    }
}

/// Whether the annihilator is nonzero: finite ambient image for the
/// parabolic-induction variant, always for the symmetric-power limit.
pub fn annihilator_nonzero(d: &ModuleDescriptor) -> Result<bool> {
    match d {
        ModuleDescriptor::Vp { .. } => Ok(d.limit_weight()?.image_is_finite()),
        ModuleDescriptor::SymLimit { .. } => Ok(true),
    }
}

/// Highest-weight verdict; when true, `k0` is the least step index from
/// which the exhaustion weights stay in the orbit of the ambient weight.
#[derive(Clone, Debug, Serialize)]
pub struct HighestWeightVerdict {
    pub highest_weight: bool,
    pub k0: Option<usize>,
    pub witness: Option<String>,
}

/// Highest-weight detection. The module is a highest weight module exactly
/// when each support weight lies in the orbit of its block weight for all
/// but finitely many blocks: orbit membership is coordinate-multiset
/// equality, blocks concatenate, and a failing block past any candidate
/// step contributes a discrepancy that never cancels.
pub fn is_highest_weight(d: &ModuleDescriptor) -> Result<HighestWeightVerdict> {
    let ModuleDescriptor::Vp { blocks, .. } = d else {
        return Err(Error::Unsupported(
            "highest-weight analysis applies to parabolic-induction descriptors".into(),
        ));
    };
    let orbit_match = |b: &crate::modmodel::Block, label: &str| -> Result<bool> {
        let mu = b
            .mu()
            .ok_or_else(|| Error::Validation(format!("mu unset in block {label}")))?;
        finrep::orbit_equivalent(mu, b.lam())
    };
    // every periodic block must match (orbit equivalence is shift
    // invariant, so one period decides all repetitions)
    for (group, side) in [(blocks.left_group(), "left"), (blocks.right_group(), "right")] {
        if let Some(g) = group {
            for (i, b) in g.pattern().iter().enumerate() {
                let label = format!("{side} period[{i}]");
                if !orbit_match(b, &label)? {
                    return Ok(HighestWeightVerdict {
                        highest_weight: false,
                        k0: None,
                        witness: Some(label),
                    });
                }
            }
        }
    }
    // finitely many prefix blocks: the least valid k0 is one past the last
    // failing block in exhaustion order
    let scan = 2 * blocks.prefix().len() + 2;
    let mut k0 = 0usize;
    for k in 0..scan {
        let (b, _) = d.exhaustion_block(k)?;
        if !orbit_match(&b, &format!("exhaustion block {}", k + 1))? {
            k0 = k + 1;
        }
    }
    Ok(HighestWeightVerdict {
        highest_weight: true,
        k0: Some(k0),
        witness: None,
    })
}

/// Boundedness verdict with the matched case: 1 for a partition against a
/// constant tail at the right-infinite end, 2 for the mirrored
/// left-infinite shape, 3 for the two-plateau two-sided shape with gap 1.
#[derive(Clone, Debug, Serialize)]
pub struct BoundedVerdict {
    pub bounded: bool,
    pub case: Option<u8>,
}

pub fn is_bounded(d: &ModuleDescriptor) -> Result<BoundedVerdict> {
    let ModuleDescriptor::Vp { order, .. } = d else {
        return Err(Error::Unsupported(
            "boundedness analysis applies to parabolic-induction descriptors".into(),
        ));
    };
    let lam = d.limit_weight()?.normalize_shift();
    let verdict = |case: Option<u8>| BoundedVerdict {
        bounded: case.is_some(),
        case,
    };
    match order.kind() {
        OrderKind::RightInfinite => {
            // finitely many positive entries, then the zero plateau
            Ok(verdict(lam.image_is_finite().then_some(1)))
        }
        OrderKind::LeftInfinite => Ok(verdict(lam.image_is_finite().then_some(2))),
        OrderKind::TwoSided => {
            let one_plateau = lam.mid().is_empty()
                && lam.left_tail().is_some_and(|t| t.is_constant() && t.value_at(0) == 1)
                && lam.right_tail().is_some_and(|t| t.is_constant() && t.value_at(0) == 0);
            Ok(verdict(one_plateau.then_some(3)))
        }
    }
}

/// The annihilator tag under the default recipe.
pub fn annihilator_tag(d: &ModuleDescriptor) -> Result<AnnihilatorTag> {
    annihilator_tag_with(d, &DefaultRecipe)
}

/// The annihilator tag: the zero ideal for infinite-image ambient weights,
/// otherwise a quadruple extracted by the recipe and dispatched on the
/// order kind. Right-infinite profiles are tagged through their reflection
/// onto the left-infinite order.
pub fn annihilator_tag_with(d: &ModuleDescriptor, recipe: &dyn TagRecipe) -> Result<AnnihilatorTag> {
    let order = match d {
        ModuleDescriptor::SymLimit { .. } => {
            return Ok(AnnihilatorTag::Quad {
                case: TagCase::SymLimit,
                r: 1,
                g: 0,
                x: Partition::empty(),
                y: Partition::empty(),
                recipe: recipe.name().to_string(),
            });
        }
        ModuleDescriptor::Vp { order, .. } => order.clone(),
    };
    let lam = d.limit_weight()?;
    if !lam.image_is_finite() {
        return Ok(AnnihilatorTag::ZeroIdeal);
    }
    let quad = |case, r, g, x, y| AnnihilatorTag::Quad {
        case,
        r,
        g,
        x,
        y,
        recipe: recipe.name().to_string(),
    };
    match order.kind() {
        OrderKind::LeftInfinite => Ok(quad(
            TagCase::LeftInfinite,
            recipe.r(&lam)?,
            0,
            Partition::empty(),
            recipe.discrepancy(&lam)?,
        )),
        OrderKind::RightInfinite => {
            let star = lam.star()?;
            Ok(quad(
                TagCase::RightInfinite,
                recipe.r(&star)?,
                0,
                recipe.discrepancy(&star)?,
                Partition::empty(),
            ))
        }
        OrderKind::TwoSided => Ok(quad(
            TagCase::TwoSided,
            recipe.r(&lam)?,
            recipe.g(&lam)?,
            Partition::empty(),
            Partition::empty(),
        )),
    }
}
