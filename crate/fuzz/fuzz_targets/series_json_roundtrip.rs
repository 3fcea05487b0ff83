#![no_main]

use libfuzzer_sys::fuzz_target;

use coulomb_core::TruncatedSeries;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(series) = TruncatedSeries::from_json_str(s) {
        let text = serde_json::to_string(&series.to_json()).expect("encode");
        let back = TruncatedSeries::from_json_str(&text).expect("re-decode");
        assert_eq!(back, series);
        let _ = series.to_text();
    }
});
