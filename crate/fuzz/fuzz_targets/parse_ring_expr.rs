#![no_main]

use std::sync::Arc;

use libfuzzer_sys::fuzz_target;

use coulomb_core::gauge::TheorySpec;
use coulomb_core::ring::expr::ExprContext;
use coulomb_core::ring::two_node::TwoNode;
use coulomb_core::ring::AbelianRing;

fuzz_target!(|data: &[u8]| {
    // First byte picks the ring; the rest is the expression.
    let Some((&sel, rest)) = data.split_first() else {
        return;
    };
    let Ok(expr) = std::str::from_utf8(rest) else {
        return;
    };
    let formal = sel & 0x80 != 0;
    let ctx = if sel & 0x40 != 0 {
        let n = usize::from(sel & 0x3) + 1;
        let ring = AbelianRing::new(TheorySpec::sqed(n).unwrap(), formal).unwrap();
        ExprContext::new(Arc::new(ring))
    } else {
        let wj = usize::from(sel & 0x3);
        let wi = usize::from((sel >> 2) & 0x3);
        ExprContext::two_node(TwoNode::with_flavor(wj, wi, formal).unwrap())
    };
    if let Ok(el) = ctx.parse(expr) {
        let _ = el.render();
        let _ = el.to_json();
        // Multiplying by the unit changes nothing.
        let one = ctx.parse("r0").unwrap();
        assert_eq!(el.multiply(&one).unwrap(), el);
    }
});
