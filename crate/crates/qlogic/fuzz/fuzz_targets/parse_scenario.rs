#![no_main]

use libfuzzer_sys::fuzz_target;
use qlogic::scenarios::{build_double_slit, parse_scenario_file};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(cfg) = parse_scenario_file(text) else {
        return;
    };
    // Keep grids small so the fuzzer exercises validation and
    // construction rather than large FFT allocations.
    if cfg.n_points <= 512 && cfg.validate().is_ok() {
        let _ = build_double_slit(&cfg);
    }
});
