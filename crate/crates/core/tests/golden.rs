use std::path::PathBuf;

use wcv_core::pipeline::golden::{golden_text, render_golden};
use wcv_core::{derive_case, CaseName};

fn golden_path(name: CaseName) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("golden").join(format!("{name}.txt"))
}

/// Set `UPDATE_GOLDEN=1` to rewrite the files, then rebuild.
#[test]
fn free_coefficients_match_golden_files() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    for name in [CaseName::JKTVI, CaseName::JKTV, CaseName::JKTIVa] {
        let rendered = render_golden(&derive_case(name).unwrap().cubic);
        if update {
            std::fs::write(golden_path(name), &rendered).unwrap();
            continue;
        }
        assert_eq!(golden_text(name).unwrap(), rendered, "{name} drifted from its golden file");
    }
}

#[test]
fn fixed_cases_have_no_golden_file() {
    for name in [CaseName::JKTIVb, CaseName::JKTII, CaseName::JKTI] {
        assert!(golden_text(name).is_none());
    }
}
