//! Bundled example diagrams from `diagrams/`, parsed on demand. Names
//! follow the usual virtual knot census numbering where one exists.

use crate::pd::{parse_pd, PdCode};

pub const VIRTUAL_TREFOIL: &str = include_str!("../../../diagrams/virtual_trefoil.pd");
pub const V3_2: &str = include_str!("../../../diagrams/v3_2.pd");
pub const V3_5: &str = include_str!("../../../diagrams/v3_5.pd");
pub const V3_7: &str = include_str!("../../../diagrams/v3_7.pd");
pub const V4_33: &str = include_str!("../../../diagrams/v4_33.pd");
pub const V4_44: &str = include_str!("../../../diagrams/v4_44.pd");
pub const V4_72: &str = include_str!("../../../diagrams/v4_72.pd");
pub const V4_105: &str = include_str!("../../../diagrams/v4_105.pd");
pub const V5_632: &str = include_str!("../../../diagrams/v5_632.pd");
pub const KISHINO: &str = include_str!("../../../diagrams/kishino.pd");
pub const VIRTUAL_HOPF: &str = include_str!("../../../diagrams/virtual_hopf.pd");
pub const FOUR_CROSSING_LINK: &str = include_str!("../../../diagrams/four_crossing_link.pd");
pub const TREFOIL: &str = include_str!("../../../diagrams/trefoil.pd");
pub const FIGURE_EIGHT: &str = include_str!("../../../diagrams/figure8.pd");

/// Every bundled diagram with its name, in census-ish order.
pub fn all() -> Vec<(&'static str, PdCode)> {
    [
        ("virtual_trefoil", VIRTUAL_TREFOIL),
        ("v3_2", V3_2),
        ("v3_5", V3_5),
        ("v3_7", V3_7),
        ("v4_33", V4_33),
        ("v4_44", V4_44),
        ("v4_72", V4_72),
        ("v4_105", V4_105),
        ("v5_632", V5_632),
        ("kishino", KISHINO),
        ("virtual_hopf", VIRTUAL_HOPF),
        ("four_crossing_link", FOUR_CROSSING_LINK),
        ("trefoil", TREFOIL),
        ("figure8", FIGURE_EIGHT),
    ]
    .into_iter()
    .map(|(name, text)| (name, parse_pd(text).expect("bundled diagrams parse")))
    .collect()
}

/// The knots among the bundled diagrams (single component).
pub fn knots() -> Vec<(&'static str, PdCode)> {
    all()
        .into_iter()
        .filter(|(_, pd)| pd.components().len() == 1)
        .collect()
}
