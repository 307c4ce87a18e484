#![no_main]

use libfuzzer_sys::fuzz_target;
use pirho::logic::parse_assertion;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(a) = parse_assertion(text) {
        let printed = a.to_string();
        assert_eq!(parse_assertion(&printed).as_ref(), Ok(&a), "{printed}");
    }
});
