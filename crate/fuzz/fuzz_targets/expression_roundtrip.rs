#![no_main]

use birep_probe::parse_expression;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let Ok(e) = parse_expression(s) else { return };
    let printed = e.to_string();
    let back = parse_expression(&printed).expect("printed expressions reparse");
    assert_eq!(back, e, "{s:?} printed as {printed:?}");
});
