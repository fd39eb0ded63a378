#![no_main]

use flagtriad::triads::exchange::{emit_triad, parse_triad};
use flagtriad::triads::check_axioms;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(t) = parse_triad(text) {
        // anything accepted must survive a round trip
        let again = parse_triad(&emit_triad(&t)).expect("emitted document parses");
        assert_eq!(again, t);
        if t.sigma_tilde().len() <= 64 {
            let _ = check_axioms(&t);
        }
    }
});
