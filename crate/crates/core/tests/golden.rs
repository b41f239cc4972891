//! Frozen program encodings. Set `UPDATE_GOLDEN=1` to rewrite the files.

use std::fs;
use std::path::PathBuf;

use problema::expr::{Alphabet, Expression};
use problema::machine::{
    constant_machine, delta_machine, identity_machine, never_halting_machine, symbol_map_machine,
    Program, TMachine,
};

fn fixtures() -> Vec<(&'static str, TMachine)> {
    let xyz = Alphabet::of("xyz").unwrap();
    let ab = Alphabet::of("ab").unwrap();
    let digits = Alphabet::of("012").unwrap();
    vec![
        ("identity_xyz", identity_machine(&xyz)),
        (
            "sweep_x",
            never_halting_machine(&Alphabet::of("x").unwrap()),
        ),
        ("delta_ab_ab", delta_machine(&ab, &"ab".into()).unwrap()),
        (
            "delta_ab_empty",
            delta_machine(&ab, &Expression::empty()).unwrap(),
        ),
        (
            "constant_012_21",
            constant_machine(&digits, &"21".into()).unwrap(),
        ),
        (
            "successor_012",
            symbol_map_machine(&digits, |c| match c {
                '0' => '1',
                '1' => '2',
                _ => '0',
            })
            .unwrap(),
        ),
    ]
}

fn path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{name}.prog"))
}

#[test]
fn encodings_match_golden_files() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    for (name, m) in fixtures() {
        let text = m.encode().expression().render();
        if update {
            fs::write(path(name), format!("{text}\n")).unwrap();
            continue;
        }
        let golden = fs::read_to_string(path(name)).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(text, golden.trim_end_matches('\n'), "{name}");
    }
}

#[test]
fn golden_files_decode_to_their_machines() {
    for (name, m) in fixtures() {
        let golden = fs::read_to_string(path(name)).unwrap();
        let e = Expression::from(golden.trim_end_matches('\n'));
        assert_eq!(Program::decode(&e).unwrap(), m, "{name}");
    }
}

#[test]
fn identity_encoding_is_pinned() {
    let m = identity_machine(&Alphabet::of("xyz").unwrap());
    assert_eq!(
        m.encode().expression().render(),
        "1|0|_|xyz;0|_|h;0|x|h;0|y|h;0|z|h;"
    );
}
