#![no_main]

use libfuzzer_sys::fuzz_target;

use coulomb_core::gauge::{parse_spec, TheorySpec};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(spec) = parse_spec(s) {
        // Whatever parsed must survive a trip through the file format.
        let text = serde_json::to_string(&spec.theory.to_json()).expect("encode");
        let back = TheorySpec::from_json_str(&text).expect("re-decode");
        assert_eq!(back, spec.theory);
        if let Some(preset) = spec.preset {
            assert_eq!(parse_spec(&preset.to_string()).unwrap().theory, spec.theory);
        }
    }
});
