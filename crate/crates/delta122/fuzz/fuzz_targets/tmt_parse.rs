//! Fuzzes the `.tmt` parser: arbitrary bytes must either fail with a parse
//! error or produce a tournament that round-trips through its own encoder.

#![no_main]

use delta122::Tournament;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if data.len() > 1 << 16 {
        return;
    }
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(t) = Tournament::from_tmt(text) {
        let round = Tournament::from_tmt(&t.to_tmt()).expect("own encoding parses");
        assert_eq!(round, t, "round-trip changed the tournament");
    }
});
