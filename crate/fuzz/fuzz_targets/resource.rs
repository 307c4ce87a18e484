#![no_main]

use libfuzzer_sys::fuzz_target;
use pirho::resources::parse_resource;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(r) = parse_resource(text) {
        assert_eq!(parse_resource(&r.to_string()), Ok(r));
    }
});
