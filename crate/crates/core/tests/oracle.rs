//! Values frozen from the independent numpy oracle in `tests/oracle/`.

use std::f64::consts::{FRAC_PI_2, PI};

use ferro_core::convolution::Engine;
use ferro_core::measures::{self, CltVariant};
use ferro_core::operator::{DenseOperator, PauliMonomial};
use ferro_core::{clifford, convolution, states, testing};
use serde_json::Value;

const TOL: f64 = 1e-8;

fn oracle() -> Value {
    let text = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/tests/data/oracle_values.json"
    ))
    .unwrap();
    serde_json::from_str(&text).unwrap()
}

fn num(v: &Value, key: &str) -> f64 {
    v[key].as_f64().unwrap_or_else(|| panic!("missing {key}"))
}

fn list(v: &Value, key: &str) -> Vec<f64> {
    v[key]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect()
}

fn close(a: f64, b: f64, what: &str) {
    assert!((a - b).abs() <= TOL, "{what}: got {a}, oracle {b}");
}

#[test]
fn psi_pi_relative_entropy_and_acceptance() {
    let o = oracle();
    let psi = states::psi_phi(PI);
    close(
        measures::ng_relative_entropy(&psi).unwrap(),
        num(&o, "psi_pi_ng_relative_entropy"),
        "NG_R",
    );
    close(
        testing::gaussian_state_test(&psi).unwrap().p_accept,
        num(&o, "psi_pi_p_accept"),
        "p_accept",
    );
}

#[test]
fn psi_pi_cumulant_weights() {
    let o = oracle();
    let w = measures::cumulant_weights(&states::psi_phi(PI)).unwrap();
    for (got, want) in w.by_degree.iter().zip(list(&o, "psi_pi_cumulant_weights")) {
        close(*got, want, "K_j");
    }
    close(w.non_gaussian, num(&o, "psi_pi_k_nongaussian"), "K_M");
    close(w.gaussian, num(&o, "psi_pi_k_gaussian"), "K_G");
    close(w.total, num(&o, "psi_pi_k_total"), "K");
}

#[test]
fn psi_pi_clt_distances_both_engines() {
    let o = oracle();
    let psi = states::psi_phi(PI);
    let want = list(&o, "psi_pi_clt_distance");
    for engine in [Engine::Cumulant, Engine::Dense] {
        let got = measures::clt_distances(&psi, 5, engine).unwrap();
        for (k, (g, w)) in got.iter().zip(&want).enumerate() {
            close(*g, *w, &format!("{engine:?} distance k={k}"));
            assert!(*g <= measures::clt_bound(&psi, k as u32, CltVariant::Doubling).unwrap());
        }
    }
}

#[test]
fn psi_pi_ng_entropy_series() {
    let o = oracle();
    let psi = states::psi_phi(PI);
    let want = list(&o, "psi_pi_ng_entropy_k1_to_k4");
    for engine in [Engine::Cumulant, Engine::Dense] {
        let got = measures::ng_entropy_series(&psi, 4, 1.0, engine).unwrap();
        for (g, w) in got.iter().zip(&want) {
            close(*g, *w, "NG^(k)(psi_pi)");
        }
    }
}

#[test]
fn psi_half_pi_values() {
    let o = oracle();
    let psi = states::psi_phi(FRAC_PI_2);
    let got = measures::ng_entropy_series(&psi, 3, 1.0, Engine::Cumulant).unwrap();
    for (g, w) in got.iter().zip(list(&o, "psi_half_pi_ng_entropy_k1_to_k3")) {
        close(*g, w, "NG^(k)(psi_half_pi)");
    }
    close(
        measures::ng_relative_entropy(&psi).unwrap(),
        num(&o, "psi_half_pi_ng_relative_entropy"),
        "NG_R",
    );
    let w = measures::cumulant_weights(&psi).unwrap();
    for (g, w) in w
        .by_degree
        .iter()
        .zip(list(&o, "psi_half_pi_cumulant_weights"))
    {
        close(*g, w, "K_j(psi_half_pi)");
    }
    let once = convolution::iterate_conv(&psi, 1, Engine::Dense).unwrap();
    close(
        clifford::entropy(&once, 2.0).unwrap(),
        num(&o, "psi_half_pi_renyi2_k1"),
        "Renyi-2",
    );
    close(
        clifford::entropy(&once, f64::INFINITY).unwrap(),
        num(&o, "psi_half_pi_renyi_inf_k1"),
        "Renyi-inf",
    );
}

#[test]
fn cz_choi_acceptance() {
    let o = oracle();
    let r = testing::gaussian_unitary_test(&testing::cz()).unwrap();
    close(
        r.choi_p_accept.unwrap(),
        num(&o, "cz_choi_p_accept"),
        "CZ Choi p_accept",
    );
}

#[test]
fn vacuum_quadratic_moment() {
    let o = oracle();
    let want = o["ket0_moment_12"].as_array().unwrap();
    let m = PauliMonomial::majorana_product(0b11, 1).overlap(&DenseOperator::basis_projector(1, 0));
    close(m.re, want[0].as_f64().unwrap(), "Re rho_12");
    close(m.im, want[1].as_f64().unwrap(), "Im rho_12");
}
