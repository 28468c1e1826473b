//! The JSON document format for module descriptors.
//!
//! A document carries a format version and exactly one of two payloads:
//! an `order` plus `blocks` pair for the parabolic-induction variant, or a
//! `symlimit` object for the symmetric-power limit. Unknown fields are
//! rejected so that typos in hand-written fixtures fail loudly.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modmodel::{Block, BlockSequence, ModuleDescriptor, PeriodicBlocks};
use crate::orders::{OrderKind, OrderSpec};
use crate::weights::FiniteWeight;

/// The only format version this build reads and writes.
pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockDoc {
    pub lam: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<Vec<i64>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PeriodDoc {
    pub pattern: Vec<BlockDoc>,
    #[serde(default)]
    pub offset: i64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlocksDoc {
    #[serde(default)]
    pub prefix: Vec<BlockDoc>,
    /// Order coordinate of the first prefix position; only meaningful for
    /// two-sided orders, where it defaults to 1.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prefix_start: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub left_period: Option<PeriodDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right_period: Option<PeriodDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymLimitDoc {
    #[serde(default)]
    pub prefix: Vec<i64>,
    pub tail_start: i64,
    pub tail_step: i64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DescriptorDocument {
    pub version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<OrderSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blocks: Option<BlocksDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symlimit: Option<SymLimitDoc>,
}

fn block_from_doc(doc: &BlockDoc) -> Result<Block> {
    let lam = FiniteWeight::new(doc.lam.clone())?;
    let mu = doc
        .mu
        .as_ref()
        .map(|m| FiniteWeight::new(m.clone()))
        .transpose()?;
    Block::new(lam, mu)
}

fn period_from_doc(doc: &PeriodDoc) -> Result<PeriodicBlocks> {
    let pattern: Vec<Block> = doc.pattern.iter().map(block_from_doc).collect::<Result<_>>()?;
    PeriodicBlocks::new(pattern, doc.offset)
}

fn block_to_doc(b: &Block) -> BlockDoc {
    BlockDoc {
        lam: b.lam().coords().to_vec(),
        mu: b.mu().map(|m| m.coords().to_vec()),
    }
}

fn period_to_doc(p: &PeriodicBlocks) -> PeriodDoc {
    PeriodDoc {
        pattern: p.pattern().iter().map(block_to_doc).collect(),
        offset: p.offset(),
    }
}

impl DescriptorDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: DescriptorDocument =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("descriptor documents serialize")
    }

    /// Interprets the document, checking the version and the payload
    /// exclusivity rules.
    pub fn to_descriptor(&self) -> Result<ModuleDescriptor> {
        if self.version != FORMAT_VERSION {
            return Err(Error::Parse(format!(
                "unsupported format version {} (this build reads {FORMAT_VERSION})",
                self.version
            )));
        }
        match (&self.order, &self.blocks, &self.symlimit) {
            (Some(order), Some(blocks), None) => {
                let prefix: Vec<Block> = blocks
                    .prefix
                    .iter()
                    .map(block_from_doc)
                    .collect::<Result<_>>()?;
                let left = blocks.left_period.as_ref().map(period_from_doc).transpose()?;
                let right = blocks
                    .right_period
                    .as_ref()
                    .map(period_from_doc)
                    .transpose()?;
                let seq = match order.kind() {
                    OrderKind::RightInfinite => {
                        if blocks.prefix_start.is_some_and(|s| s != 1) {
                            return Err(Error::Parse(
                                "right-infinite prefixes start at coordinate 1".into(),
                            ));
                        }
                        BlockSequence::right_infinite(
                            prefix,
                            right.ok_or_else(|| {
                                Error::Parse("right-infinite orders need a right_period".into())
                            })?,
                        )
                    }
                    OrderKind::LeftInfinite => {
                        let seq = BlockSequence::left_infinite(
                            left.ok_or_else(|| {
                                Error::Parse("left-infinite orders need a left_period".into())
                            })?,
                            prefix,
                        );
                        if blocks
                            .prefix_start
                            .is_some_and(|s| s != seq.prefix_start())
                        {
                            return Err(Error::Parse(
                                "left-infinite prefixes end at coordinate -1".into(),
                            ));
                        }
                        seq
                    }
                    OrderKind::TwoSided => BlockSequence::two_sided(
                        left.ok_or_else(|| {
                            Error::Parse("two-sided orders need a left_period".into())
                        })?,
                        prefix,
                        blocks.prefix_start.unwrap_or(1),
                        right.ok_or_else(|| {
                            Error::Parse("two-sided orders need a right_period".into())
                        })?,
                    )?,
                };
                ModuleDescriptor::vp(order.clone(), seq)
            }
            (None, None, Some(s)) => {
                ModuleDescriptor::sym_limit(s.prefix.clone(), s.tail_start, s.tail_step)
            }
            _ => Err(Error::Parse(
                "a document carries either order+blocks or symlimit, exactly once".into(),
            )),
        }
    }

    pub fn from_descriptor(d: &ModuleDescriptor) -> Self {
        match d {
            ModuleDescriptor::Vp { order, blocks } => DescriptorDocument {
                version: FORMAT_VERSION,
                order: Some(order.clone()),
                blocks: Some(BlocksDoc {
                    prefix: blocks.prefix().iter().map(block_to_doc).collect(),
                    prefix_start: (order.kind() == OrderKind::TwoSided)
                        .then_some(blocks.prefix_start()),
                    left_period: blocks.left_group().map(period_to_doc),
                    right_period: blocks.right_group().map(period_to_doc),
                }),
                symlimit: None,
            },
            ModuleDescriptor::SymLimit {
                prefix,
                tail_start,
                tail_step,
            } => DescriptorDocument {
                version: FORMAT_VERSION,
                order: None,
                blocks: None,
                symlimit: Some(SymLimitDoc {
                    prefix: prefix.clone(),
                    tail_start: *tail_start,
                    tail_step: *tail_step,
                }),
            },
        }
    }
}
