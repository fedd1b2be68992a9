//! Values frozen from an independent 40-digit mpmath evaluation of the
//! defining products, and bridges evaluated through separate code paths.

#![allow(clippy::excessive_precision)]

use approx::assert_relative_eq;
use elliptic_lax::correspondence::{special_gamma_check, Correspondence, CorrespondenceConfig, GridSpec};
use elliptic_lax::lax::{derive_lax_params, LaxSide, RMode};
use elliptic_lax::theta::{
    bracket, elliptic_gamma_g, elliptic_gamma_pq, eta_const, r_minus, r_plus, rho_const, ModularParams, C64, I,
};
use elliptic_lax::vandiejen::{shift_v, vb, vb_residues, Couplings};

fn mp() -> ModularParams {
    ModularParams::new(1.0, 0.9, 0.52).unwrap()
}

fn cp() -> Couplings {
    Couplings::from_real([0.11, 0.17, 0.23, 0.29, 0.31, 0.37, 0.41, 0.43], -0.05)
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn rel(a: C64, b: C64) -> f64 {
    (a - b).norm() / b.norm()
}

#[test]
fn r_plus_matches_high_precision_product() {
    let mp = mp();
    assert!(rel(r_plus(&mp, c(0.3, 0.0)).unwrap(), c(0.43198067028049912869, 0.0)) < 1e-14);
    let v = r_plus(&mp, c(0.3, 0.2)).unwrap();
    assert!(rel(v, c(0.37301338275980040988, 0.17863209189858002917)) < 1e-14);
    let v = r_minus(&mp, c(0.3, 0.2)).unwrap();
    assert!(rel(v, c(0.12674120851323028337, 0.18084105090034445901)) < 1e-14);
}

#[test]
fn bracket_and_gammas_match_high_precision_products() {
    let mp = mp();
    let v = bracket(&mp, c(0.3, 0.2)).unwrap();
    assert!(rel(v, c(0.42141203502334026773, 0.052371755463977066636)) < 1e-14);
    let v = elliptic_gamma_pq(&mp, c(0.5, 0.1)).unwrap();
    assert!(rel(v, c(2.3375829443746015686, 0.8212808001681560104)) < 1e-13);
    let v = elliptic_gamma_g(&mp, c(0.2, 0.1)).unwrap();
    assert!(rel(v, c(0.75583084703918225496, 0.34014212897778702218)) < 1e-13);
}

#[test]
fn rho_and_eta_constants() {
    let mp = mp();
    assert!(rel(rho_const(&mp).unwrap(), c(0.0, -0.76679709004599441004)) < 1e-15);
    assert!(rel(eta_const(&mp).unwrap(), c(0.0, 0.4656071767872468124)) < 1e-14);
}

#[test]
fn rho_is_richardson_limit() {
    let mp = mp();
    let f = |h: f64| c(h, 0.0) / r_plus(&mp, c(h, 0.5 * mp.a_plus())).unwrap();
    let h = 1e-3;
    let first = |h: f64| 2.0 * f(0.5 * h) - f(h);
    let extrap = (4.0 * first(0.5 * h) - first(h)) / 3.0;
    assert!(rel(extrap, rho_const(&mp).unwrap()) < 1e-9);
}

#[test]
fn gamma_reflection_and_additive_bridge() {
    let mp = mp();
    for z in [c(0.5, 0.1), c(-0.7, 0.4), c(1.3, -0.2)] {
        let v = elliptic_gamma_pq(&mp, z).unwrap() * elliptic_gamma_pq(&mp, mp.p() * mp.q() / z).unwrap();
        assert!((v - 1.0).norm() < 1e-13);
    }
    for x in [c(0.2, 0.1), c(0.9, -0.15), c(-0.4, 0.05)] {
        let g = elliptic_gamma_g(&mp, x).unwrap();
        assert!(rel(elliptic_gamma_pq(&mp, mp.z_of_x(x)).unwrap(), g) < 1e-12);
    }
}

#[test]
fn difference_equations_of_g_both_steps() {
    let mp = mp();
    for x in [c(0.2, 0.1), c(0.7, -0.05)] {
        let hp = 0.5 * I * mp.a_plus();
        let hm = 0.5 * I * mp.a_minus();
        let plus = elliptic_gamma_g(&mp, x + hp).unwrap() / elliptic_gamma_g(&mp, x - hp).unwrap();
        let minus = elliptic_gamma_g(&mp, x + hm).unwrap() / elliptic_gamma_g(&mp, x - hm).unwrap();
        assert!(rel(plus, r_minus(&mp, x).unwrap()) < 1e-12);
        assert!(rel(minus, r_plus(&mp, x).unwrap()) < 1e-12);
    }
}

#[test]
fn shift_coefficient_and_potential_values() {
    let mp = mp();
    let cp = cp();
    let v = shift_v(&mp, &cp.gamma, c(0.4, 0.0)).unwrap();
    assert!(rel(v, c(0.028187335773584922095, 0.0063473022325382484412)) < 1e-13);
    let gt = cp.tilde(&mp).gamma_tilde;
    let v = vb(&mp, &gt, c(0.7, 0.0)).unwrap();
    assert_relative_eq!(v.re, 228.33375076305073658, max_relative = 1e-13);
    let res = vb_residues(&mp, &gt).unwrap().residues;
    let want = [
        c(0.0, 2.7187552821343218215e-7),
        c(0.0, 734.22616979929078022),
        c(0.0, -1.861844530644261327e-6),
        c(0.0, 734.2738029929451281),
    ];
    for (a, b) in res.iter().zip(want.iter()) {
        assert!(rel(*a, *b) < 1e-13);
    }
}

#[test]
fn lax_side_values() {
    let mp = mp();
    let side = LaxSide::from_couplings(&mp, &cp()).unwrap();
    assert!(rel(side.c_n(1).unwrap(), c(6.5289271756336402277e-5, 0.0)) < 1e-13);
    assert!(rel(side.c_n(2).unwrap(), c(1.7053910943457983956e-4, 0.0)) < 1e-13);
    let z0 = c(0.3, 0.2);
    let want = c(1.8999082478499256939e-5, -5.782790043653422483e-5);
    assert!(rel(side.r_of_z(z0, RMode::SSum).unwrap(), want) < 1e-10);
    assert!(rel(side.r_of_z(z0, RMode::Eliminated).unwrap(), want) < 1e-10);
    assert!(rel(side.p_of_z(z0).unwrap(), c(0.17516163993851501515, 0.2696165165543218505)) < 1e-13);
    assert_relative_eq!(side.z_fn(c(0.7, 0.0)).unwrap().re, -0.051977258758295193009, max_relative = 1e-11);
    assert_relative_eq!(side.z_at_xs_closed().unwrap().re, -5.207910131349715e-5, max_relative = 1e-12);
}

#[test]
fn eigenvalue_value() {
    let cfg = CorrespondenceConfig::default();
    let corr = Correspondence::new(&cfg).unwrap();
    let k = corr.additive_constancy().unwrap();
    assert_relative_eq!(k.e_extracted.re, 228.38572802180903177, max_relative = 1e-12);
    let xs = corr.energy_from_xs().unwrap();
    assert_relative_eq!(xs.energy.re, 228.38572802180903177, max_relative = 1e-12);
}

#[test]
fn special_gamma_value() {
    let mp = mp();
    let rest = [0.31, 0.37, 0.41, 0.43].map(|g| c(g, 0.0));
    let s = special_gamma_check(&mp, rest, c(-0.05, 0.0), &GridSpec::default(), 0.0).unwrap();
    assert_relative_eq!(s.z_xs.re, -5.68029176749715e-4, max_relative = 1e-12);
}

/// `c_n` from the multiplicative form of the evolution requirement,
/// `G(k/xi) G(k/q xi) U(xi) / (xi F(xi) [k/xi^2][k/q xi^2])`.
#[test]
fn c_n_matches_multiplicative_assembly() {
    let mp = mp();
    let cp = cp();
    let lp = derive_lax_params(&mp, &cp).unwrap();
    let side = LaxSide::new(&mp, &cp, lp).unwrap();
    let br = |z: C64| bracket(&mp, z).unwrap();
    let q = mp.q();
    let k = lp.k;
    let g = |z: C64| z * br(z / lp.xi1) * br(z / lp.xi2);
    let f = |z: C64| lp.c * z * br(z / lp.lambda) * br(k / (z * lp.lambda));
    let u = |z: C64| lp.a.iter().chain(lp.b.iter()).map(|v| br(z / v)).product::<C64>();
    for (n, xi) in [(1, lp.xi1), (2, lp.xi2)] {
        let want = g(k / xi) * g(k / (q * xi)) * u(xi) / (xi * f(xi) * br(k / (xi * xi)) * br(k / (q * xi * xi)));
        assert!(rel(side.c_n(n).unwrap(), want) < 1e-11, "c_{n}");
    }
}

/// `[k/q z^2]`, `[k/q^2 z^2]`, `[k/z^2]` against `R+(2x + i a+/2 + {0, i a-, -i a-})`
/// and `U(z)` against `prod R+(x - i gamma - i a-/2)`.
#[test]
fn multiplicative_additive_bridges() {
    let mp = mp();
    let cp = cp();
    let lp = derive_lax_params(&mp, &cp).unwrap();
    let side = LaxSide::new(&mp, &cp, lp).unwrap();
    let q = mp.q();
    let k = lp.k;
    for x in [c(0.3, 0.0), c(0.8, 0.1), c(-0.2, -0.05)] {
        let z = mp.z_of_x(x);
        let base = 2.0 * x + 0.5 * I * mp.a_plus();
        let am = I * mp.a_minus();
        assert!(rel(bracket(&mp, k / (q * z * z)).unwrap(), r_plus(&mp, base).unwrap()) < 1e-12);
        assert!(rel(bracket(&mp, k / (q * q * z * z)).unwrap(), r_plus(&mp, base + am).unwrap()) < 1e-12);
        assert!(rel(bracket(&mp, k / (z * z)).unwrap(), r_plus(&mp, base - am).unwrap()) < 1e-12);
        let additive: C64 = cp.gamma.iter().map(|g| r_plus(&mp, x - I * g - 0.5 * am).unwrap()).product();
        assert!(rel(side.u_fn(z).unwrap(), additive) < 1e-12);
    }
}

#[test]
fn lax_constraints() {
    let mp = mp();
    let cp = cp();
    let lp = derive_lax_params(&mp, &cp).unwrap();
    let prod: C64 = lp.a.iter().chain(lp.b.iter()).product();
    assert!(rel(lp.k * lp.k * lp.ell * lp.ell, mp.q() * prod) < 1e-12);
    assert!(rel(lp.xi1 * lp.xi2, lp.ell) < 1e-12);
    assert!(rel(lp.k, c(mp.p() * mp.q() * mp.q(), 0.0)) < 1e-15);
}
