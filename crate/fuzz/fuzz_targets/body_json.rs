#![no_main]
//! The body file parser is the crate's untrusted-input surface: arbitrary
//! bytes must either parse into a validated convex body or return an error,
//! never panic. A successful parse must yield a body whose basic functionals
//! evaluate without panicking.

use libfuzzer_sys::fuzz_target;

use weinstock_lab::bodies::body_from_json;
use weinstock_lab::functionals;

fuzz_target!(|data: &[u8]| {
    if let Ok(body) = body_from_json(data) {
        let v = functionals::volume(&body);
        let p = functionals::perimeter(&body);
        let w = functionals::boundary_momentum(&body);
        // validated bodies have positive functionals whenever the arithmetic
        // stays in range; overflow to infinity is allowed, NaN is not
        if v.is_finite() && p.is_finite() && w.is_finite() {
            assert!(v > 0.0 && p > 0.0 && w >= 0.0);
            let _ = functionals::r_max_and_excess(&body);
            let _ = body.normalized();
        }
        let _ = weinstock_lab::bodies::body_to_json(&body);
    }
});
