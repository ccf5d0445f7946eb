//! Bundled knot diagrams.

use crate::diagram::{parse_morse, parse_pd, MorseTangle, PdCode};
use crate::error::{Error, Result};

struct Entry {
    name: &'static str,
    morse: &'static str,
    pd: Option<&'static str>,
}

const ENTRIES: &[Entry] = &[
    Entry { name: "0_1", morse: include_str!("../corpus/0_1.morse"), pd: Some(include_str!("../corpus/0_1.pd")) },
    Entry { name: "0_1_kink_pos", morse: include_str!("../corpus/0_1_kink_pos.morse"), pd: None },
    Entry { name: "0_1_kink_neg", morse: include_str!("../corpus/0_1_kink_neg.morse"), pd: None },
    Entry { name: "3_1", morse: include_str!("../corpus/3_1.morse"), pd: Some(include_str!("../corpus/3_1.pd")) },
    Entry { name: "4_1", morse: include_str!("../corpus/4_1.morse"), pd: Some(include_str!("../corpus/4_1.pd")) },
    Entry { name: "5_2", morse: include_str!("../corpus/5_2.morse"), pd: Some(include_str!("../corpus/5_2.pd")) },
    Entry { name: "6_1", morse: include_str!("../corpus/6_1.morse"), pd: Some(include_str!("../corpus/6_1.pd")) },
];

/// Knot names in the corpus; the three unknot diagrams come first.
pub fn names() -> impl Iterator<Item = &'static str> {
    ENTRIES.iter().map(|e| e.name)
}

/// The proper knots (at least three crossings).
pub const KNOTS: [&str; 4] = ["3_1", "4_1", "5_2", "6_1"];

/// The unknot diagrams: no crossings, one positive kink, one negative kink.
pub const UNKNOTS: [&str; 3] = ["0_1", "0_1_kink_pos", "0_1_kink_neg"];

fn entry(name: &str) -> Result<&'static Entry> {
    let name = if name == "unknot" { "0_1" } else { name };
    ENTRIES
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::OutOfRange(alloc::format!("no corpus knot named `{name}`")))
}

pub fn morse_text(name: &str) -> Result<&'static str> {
    Ok(entry(name)?.morse)
}

pub fn pd_text(name: &str) -> Result<&'static str> {
    entry(name)?
        .pd
        .ok_or_else(|| Error::OutOfRange(alloc::format!("corpus knot `{name}` has no PD code")))
}

/// The curated Morse word of a corpus knot (`unknot` is an alias of `0_1`).
pub fn knot(name: &str) -> Result<MorseTangle> {
    parse_morse(morse_text(name)?)
}

pub fn pd(name: &str) -> Result<PdCode> {
    parse_pd(pd_text(name)?)
}
