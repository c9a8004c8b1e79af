#![no_main]
//! Support-function validation from arbitrary Fourier data: never panic, and
//! accepted bodies satisfy the positivity chain of the gap decomposition.

use arbitrary::Arbitrary;
use libfuzzer_sys::fuzz_target;

use weinstock_lab::bodies::support_body;
use weinstock_lab::support2d::{laj_from_support, weinstock_gap};

#[derive(Arbitrary, Debug)]
struct Input {
    a0: f64,
    coeffs: Vec<(f64, f64)>,
}

fuzz_target!(|input: Input| {
    if input.coeffs.len() > 96 {
        return;
    }
    if let Ok(body) = support_body(input.a0, input.coeffs) {
        let triple = laj_from_support(&body);
        // Positivity and the gap chain only make sense away from the
        // under/overflow edges of f64 (A ~ a0², J ~ a0³ leave the normal
        // range long before L does).
        if !(triple.l > 1e-100 && triple.l < 1e100) {
            return;
        }
        assert!(triple.a > 0.0 && triple.j > 0.0);
        let gap = weinstock_gap(&body);
        let scale = (std::f64::consts::PI * triple.j)
            .abs()
            .max((triple.l * triple.a).abs());
        assert!(gap.gap >= gap.lower_bound - 1e-9 * scale);
        assert!(gap.lower_bound >= 0.0);
        let (r_max, _) = body.r_max();
        assert!(r_max > 0.0);
    }
});
