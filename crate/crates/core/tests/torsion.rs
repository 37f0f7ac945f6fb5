use cusped_spectra::constants::*;
use cusped_spectra::torsion::*;
use cusped_spectra::Error;
use proptest::prelude::*;

fn sig(g: u32, m: u32) -> SurfaceSignature {
    SurfaceSignature::new(g, m)
}

#[test]
fn n_zero_uses_e_factor_and_derivative() {
    let req = TorsionRequest::new(sig(0, 3), TwistPower::new(0).unwrap(), ZetaInput::DerivativeAtOne(2.5)).unwrap();
    let t = tz_torsion(&req).unwrap();
    let want = e_factor(sig(0, 3)) * b_factor(0, sig(0, 3)) * 2.5;
    assert!((t.value - want).abs() < 1e-14 * want);
    assert!(t.warnings.is_empty());
}

#[test]
fn negative_twist_uses_zeta_value() {
    let req = TorsionRequest::new(sig(2, 1), TwistPower::new(-2).unwrap(), ZetaInput::ValueAt(0.9)).unwrap();
    let t = tz_torsion(&req).unwrap();
    let want = b_factor(2, sig(2, 1)) * 0.9;
    assert!((t.value - want).abs() < 1e-13 * want);
}

#[test]
fn large_signatures_keep_a_finite_log() {
    let req = TorsionRequest::new(sig(400, 0), TwistPower::new(-30).unwrap(), ZetaInput::ValueAt(0.5)).unwrap();
    let t = tz_torsion(&req).unwrap();
    assert!(t.log_value.is_finite());
    assert!((t.log_value - (log_b_factor(30, sig(400, 0)) + 0.5f64.ln())).abs() < 1e-9);
}

#[test]
fn rejections() {
    let z = TwistPower::new(0).unwrap();
    assert!(matches!(
        TorsionRequest::new(sig(0, 2), z, ZetaInput::DerivativeAtOne(1.0)),
        Err(Error::Unstable { .. })
    ));
    let r = TorsionRequest::new_allow_unstable(sig(1, 0), z, ZetaInput::DerivativeAtOne(1.0)).unwrap();
    assert_eq!(tz_torsion(&r).unwrap().warnings.len(), 1);
    assert!(TorsionRequest::new(sig(0, 3), z, ZetaInput::ValueAt(0.5)).is_err());
    let r = TorsionRequest::new(sig(0, 3), z, ZetaInput::DerivativeAtOne(-1.0)).unwrap();
    assert!(matches!(tz_torsion(&r), Err(Error::Nonpositive(_))));
    let r = TorsionRequest::new(sig(0, 3), TwistPower::new(-1).unwrap(), ZetaInput::ValueAt(1.5)).unwrap();
    assert!(tz_torsion(&r).is_err());
    assert!(TwistPower::new(1).is_err());
}

#[test]
fn restriction_holds_for_small_twists() {
    for n in 0..=10 {
        let r = restriction_constant_check(TwistPower::new(-n).unwrap());
        assert!(r.holds, "{r:?}");
        assert_eq!(r.bismut_const, bismut_const());
    }
}

#[test]
fn log_quillen_examples() {
    assert!((log_quillen(1.0, 0.0).unwrap()).abs() < 1e-16);
    assert!((log_quillen(4.0, 1.0).unwrap() - (2f64.ln() + 1.0)).abs() < 1e-15);
    assert!(log_quillen(0.0, 0.0).is_err());
}

proptest! {
    /// `T(g+m, 0) = T(g, m) B_k(1,1)^m` for the same zeta datum.
    #[test]
    fn torsion_exponent_additivity(k in 1u32..15, g in 0u32..15, m in 0u32..15, z in 0.01f64..1.0) {
        prop_assume!(sig(g, m).is_stable());
        let n = TwistPower::new(-(k as i32)).unwrap();
        let a = tz_torsion(&TorsionRequest::new(sig(g + m, 0), n, ZetaInput::ValueAt(z)).unwrap()).unwrap();
        let b = tz_torsion(&TorsionRequest::new(sig(g, m), n, ZetaInput::ValueAt(z)).unwrap()).unwrap();
        let want = b.log_value + m as f64 * log_b_factor(k, sig(1, 1));
        prop_assert!((a.log_value - want).abs() < 1e-11);
    }

    #[test]
    fn torsion_is_linear_in_zeta(g in 0u32..8, m in 0u32..8, w in 0.1f64..10.0, c in 0.1f64..10.0) {
        prop_assume!(sig(g, m).is_stable());
        let z = TwistPower::new(0).unwrap();
        let a = tz_torsion(&TorsionRequest::new(sig(g, m), z, ZetaInput::DerivativeAtOne(w)).unwrap()).unwrap();
        let b = tz_torsion(&TorsionRequest::new(sig(g, m), z, ZetaInput::DerivativeAtOne(w * c)).unwrap()).unwrap();
        prop_assert!((b.log_value - a.log_value - c.ln()).abs() < 1e-12);
    }
}
