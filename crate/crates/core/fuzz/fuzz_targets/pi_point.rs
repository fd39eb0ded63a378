#![no_main]

use flagtriad::flags::catalogue::{self, SU2N_SO_SP};
use flagtriad::flags::BasePoint;
use flagtriad::triads::{gamma_contains, is_regular, PiPoint};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let _ = BasePoint::parse(text);
    let Ok(h) = PiPoint::parse(text) else { return };
    if h.dim() == 3 {
        let entry = catalogue::lookup(SU2N_SO_SP, Some(3)).expect("builtin pair");
        let t = entry.triad().expect("triad");
        let _ = is_regular(t, &h);
        let _ = gamma_contains(t, &h);
    }
});
