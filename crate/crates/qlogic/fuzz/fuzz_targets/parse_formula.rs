#![no_main]

use libfuzzer_sys::fuzz_target;
use qlogic::formula::Formula;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(formula) = Formula::parse(text) else {
        return;
    };
    // The canonical rendering must reparse to the same tree.
    let rendered = formula.to_string();
    match Formula::parse(&rendered) {
        Ok(reparsed) => assert_eq!(formula, reparsed, "round-trip changed the tree"),
        Err(e) => panic!("canonical rendering `{rendered}` failed to parse: {e}"),
    }
    let _ = formula.atoms();
});
