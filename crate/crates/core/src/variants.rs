//! The graph families built from `Sp(2ν, 2)`: the base graph, four switches
//! with respect to orbit partitions, and the two-cell `{S, V ∖ S}` switch.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{build_symplectic, SympGraph};
use crate::orbits::{
    orbit_partition_e, orbit_partition_s, two_cell_partition, SCell, SpecialQuadruple,
};
use crate::partition::VertexPartition;
use crate::switching::{apply_switch, SwitchRecord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Variant {
    #[serde(rename = "base")]
    Base,
    /// Designated cell `S` of the `S`-stabiliser partition.
    S,
    /// Designated cell `O(0,ν,0)` of the basis-stabiliser partition.
    O,
    S4,
    S0MinusST,
    /// Two-cell partition `{S, V ∖ S}` with designated cell `V ∖ S`.
    AH2cell,
}

impl Variant {
    pub const ALL: [Variant; 6] = [
        Variant::Base,
        Variant::S,
        Variant::O,
        Variant::S4,
        Variant::S0MinusST,
        Variant::AH2cell,
    ];

    /// The five families compared by the triple invariant.
    pub const FAMILIES: [Variant; 5] = [
        Variant::Base,
        Variant::S,
        Variant::O,
        Variant::S4,
        Variant::S0MinusST,
    ];

    /// The four orbit-partition switches.
    pub const SWITCHED: [Variant; 4] = [Variant::S, Variant::O, Variant::S4, Variant::S0MinusST];

    pub fn name(&self) -> &'static str {
        match self {
            Variant::Base => "base",
            Variant::S => "S",
            Variant::O => "O",
            Variant::S4 => "S4",
            Variant::S0MinusST => "S0MinusST",
            Variant::AH2cell => "AH2cell",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Variant::ALL
            .iter()
            .copied()
            .find(|v| v.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                format!(
                    "unknown variant {s:?}; expected one of {}",
                    Variant::ALL.map(|v| v.name()).join(", ")
                )
            })
    }
}

/// A graph of one family together with how it was obtained.
#[derive(Clone, Debug)]
pub struct VariantGraph {
    pub variant: Variant,
    pub nu: usize,
    pub graph: SympGraph,
    /// Partition used for switching; `None` for the base graph.
    pub partition: Option<VertexPartition>,
    pub record: SwitchRecord,
    pub warnings: Vec<String>,
}

impl VariantGraph {
    /// The designated cell, when it is nonempty.
    pub fn designated(&self) -> Option<usize> {
        self.partition.as_ref().and_then(|p| p.designated())
    }
}

/// The partition a variant switches on, with its designated cell set (unset
/// when that cell is empty).
pub fn variant_partition(
    base: &SympGraph,
    variant: Variant,
    q: &SpecialQuadruple,
) -> Result<Option<VertexPartition>> {
    Ok(match variant {
        Variant::Base => None,
        Variant::S => Some(orbit_partition_s(base, q, Some(SCell::S))?),
        Variant::S4 => Some(orbit_partition_s(base, q, Some(SCell::S4))?),
        Variant::S0MinusST => Some(orbit_partition_s(base, q, Some(SCell::S0MinusST))?),
        Variant::O => Some(orbit_partition_e(base)?),
        Variant::AH2cell => Some(two_cell_partition(base, q)?),
    })
}

fn designated_label(variant: Variant, nu: usize) -> Option<String> {
    match variant {
        Variant::Base => None,
        Variant::S => Some(SCell::S.label().into()),
        Variant::S4 => Some(SCell::S4.label().into()),
        Variant::S0MinusST => Some(SCell::S0MinusST.label().into()),
        Variant::O => Some(crate::orbits::cell_label_e(0, nu, 0)),
        Variant::AH2cell => Some("V-minus-S".into()),
    }
}

/// Switches an already built base graph.
pub fn switch_variant(
    base: &SympGraph,
    variant: Variant,
    q: &SpecialQuadruple,
) -> Result<VariantGraph> {
    let nu = base.nu();
    if nu == 0 {
        return Err(Error::Unlabelled);
    }
    let partition = variant_partition(base, variant, q)?;
    let mut warnings = Vec::new();
    let (graph, record) = match partition
        .as_ref()
        .and_then(|p| p.designated().map(|d| (p, d)))
    {
        Some((p, d)) => apply_switch(base, p, d)?,
        None => {
            if variant != Variant::Base {
                warnings.push("empty designated cell; output equals base".to_string());
            }
            (
                base.clone(),
                SwitchRecord::noop(designated_label(variant, nu)),
            )
        }
    };
    Ok(VariantGraph {
        variant,
        nu,
        graph,
        partition,
        record,
        warnings,
    })
}

/// Builds `Sp(2ν, 2)` and switches it.
pub fn build_variant(nu: usize, variant: Variant, q: &SpecialQuadruple) -> Result<VariantGraph> {
    let base = build_symplectic(nu)?;
    switch_variant(&base, variant, q)
}
