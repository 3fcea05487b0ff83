#![no_main]

use libfuzzer_sys::fuzz_target;

use coulomb_core::suites::{parse_range, Suite};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(r) = parse_range(s) {
        let again = parse_range(&format!("{}..{}", r.start(), r.end())).unwrap();
        assert_eq!(again, r);
    }
    if let Ok(suite) = s.parse::<Suite>() {
        assert_eq!(suite.name().parse::<Suite>().unwrap(), suite);
    }
});
