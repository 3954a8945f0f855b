//! Frozen `c1…c4` for the cases whose coefficients are not fixed in advance.

use crate::model::CaseName;
use crate::pipeline::CubicSurface;

pub fn golden_text(name: CaseName) -> Option<&'static str> {
    match name {
        CaseName::JKTVI => Some(include_str!("../../golden/JKTVI.txt")),
        CaseName::JKTV => Some(include_str!("../../golden/JKTV.txt")),
        CaseName::JKTIVa => Some(include_str!("../../golden/JKTIVa.txt")),
        _ => None,
    }
}

/// One `ck = <polynomial>` line per free coefficient.
pub fn render_golden(cubic: &CubicSurface) -> String {
    cubic
        .free_coefficients()
        .iter()
        .enumerate()
        .map(|(k, c)| format!("c{} = {c}\n", k + 1))
        .collect()
}

/// `None` for cases without a golden file.
pub fn golden_matches(name: CaseName, cubic: &CubicSurface) -> Option<bool> {
    golden_text(name).map(|text| text == render_golden(cubic))
}
