//! Built-in scenario presets, compiled into the binary.

pub const PRESET_NAMES: [&str; 6] = [
    "fbar",
    "sheet-ghz",
    "cube-scalar",
    "cube-em",
    "cyl-te111",
    "moore-q4",
];

/// Scenario text for a built-in preset name.
pub fn preset(name: &str) -> Option<&'static str> {
    Some(match name {
        "fbar" => include_str!("../../presets/fbar.json"),
        "sheet-ghz" => include_str!("../../presets/sheet-ghz.json"),
        "cube-scalar" => include_str!("../../presets/cube-scalar.json"),
        "cube-em" => include_str!("../../presets/cube-em.json"),
        "cyl-te111" => include_str!("../../presets/cyl-te111.json"),
        "moore-q4" => include_str!("../../presets/moore-q4.json"),
        _ => return None,
    })
}
