#![no_main]

use libfuzzer_sys::fuzz_target;
use pirho::config::{parse_config, RunConfig};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(file) = parse_config(text) {
        let mut rc = RunConfig::default();
        rc.apply(&file);
        assert!(!rc.universe.is_empty());
    }
});
