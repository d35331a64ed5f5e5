//! Agreement between the recursion, the closed forms and dense spectra.

use coherence_core::exact::{
    closed_coeffs, family_exact, psfw_closed_form, psfw_exact, raw_polyquad_at,
    sierpinski_closed_form, to_f64, ExactMethod, CLOSED_MAX_GENERATION,
};
use coherence_core::generators::{psfw_iterative, psfw_selfsimilar, sierpinski};
use coherence_core::spectral::{dense_coherence, spectrum};
use coherence_core::{Error, Family};

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn recursion_matches_closed_form_through_n15() {
    for n in 1..=15 {
        let rec = psfw_exact(n).unwrap();
        let (fo, so) = psfw_closed_form(n).unwrap();
        assert_eq!(rec.h_fo, fo, "first order n={n}");
        assert_eq!(rec.h_so, so, "second order n={n}");
    }
}

#[test]
fn closed_coefficients_match_raw_chain() {
    for n in 0..=10 {
        let raw = raw_polyquad_at(n).unwrap();
        let c = closed_coeffs(n).unwrap();
        for i in 0..3 {
            assert_eq!(raw.p.coeff(i), &c.p[i], "p{i} n={n}");
            assert_eq!(raw.q.coeff(i), &c.q[i], "q{i} n={n}");
            assert_eq!(raw.r.coeff(i), &c.r[i], "r{i} n={n}");
            assert_eq!(raw.x.coeff(i), &c.x[i], "x{i} n={n}");
        }
    }
    assert!(closed_coeffs(CLOSED_MAX_GENERATION + 1).is_err());
}

#[test]
fn psfw_spectra_match_closed_form() {
    for n in 1..=6 {
        let (fo, so) = psfw_closed_form(n).unwrap();
        for g in [
            psfw_iterative(n).unwrap().graph,
            psfw_selfsimilar(n).unwrap().graph,
        ] {
            let d = dense_coherence(&g).unwrap();
            assert!(rel(d.h_fo, to_f64(&fo)) < 1e-8, "n={n}");
            assert!(rel(d.h_so, to_f64(&so)) < 1e-8, "n={n}");
        }
    }
}

#[test]
fn sierpinski_spectra_match_closed_form() {
    for n in 1..=6 {
        let (fo, so) = sierpinski_closed_form(n).unwrap();
        let d = dense_coherence(&sierpinski(n).unwrap().graph).unwrap();
        assert!(rel(d.h_fo, to_f64(&fo)) < 1e-8, "n={n}");
        assert!(rel(d.h_so, to_f64(&so)) < 1e-8, "n={n}");
    }
}

#[test]
fn first_generations_are_isomorphic() {
    let a = spectrum(&psfw_iterative(1).unwrap().graph, false)
        .unwrap()
        .eigenvalues;
    let b = spectrum(&sierpinski(1).unwrap().graph, false)
        .unwrap()
        .eigenvalues;
    assert_eq!(a.len(), b.len());
    for (x, y) in a.iter().zip(&b) {
        assert!((x - y).abs() < 1e-10);
    }
    assert_eq!(
        psfw_closed_form(1).unwrap(),
        sierpinski_closed_form(1).unwrap()
    );
}

#[test]
fn generation_zero_is_outside_closed_forms() {
    assert!(matches!(
        psfw_closed_form(0),
        Err(Error::OutsideTheoremDomain { n: 0 })
    ));
    assert!(matches!(
        sierpinski_closed_form(0),
        Err(Error::OutsideTheoremDomain { n: 0 })
    ));
    assert!(family_exact(Family::Sierpinski, 3, ExactMethod::Recursion).is_err());
}

#[test]
fn both_psfw_routes_agree() {
    for n in 1..=12 {
        let a = family_exact(Family::Psfw, n, ExactMethod::Recursion).unwrap();
        let b = family_exact(Family::Psfw, n, ExactMethod::Closed).unwrap();
        assert_eq!(a, b, "n={n}");
    }
}
