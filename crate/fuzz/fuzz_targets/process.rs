#![no_main]

use libfuzzer_sys::fuzz_target;
use pirho::syntax::{parse, print};

// Any accepted process prints to text that parses back to the same tree.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(p) = parse(text) {
        let printed = print(&p);
        assert_eq!(parse(&printed).as_ref(), Ok(&p), "{printed}");
    }
});
