#![no_main]

use birep_probe::parse_problem;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        // grids are capped, so resolving a valid document stays cheap
        let _ = parse_problem(s);
    }
});
