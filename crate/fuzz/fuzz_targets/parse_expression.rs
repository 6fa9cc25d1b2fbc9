#![no_main]

use birep_probe::parse_expression;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(e) = parse_expression(s) {
            let _ = e.eval(0.5, -1.5);
        }
    }
});
