#![no_main]

use flagtriad::ExactVector;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(v) = ExactVector::parse(text) {
        let back = ExactVector::parse(&v.to_strings().join(",")).expect("printed list parses");
        assert_eq!(back, v);
    }
});
