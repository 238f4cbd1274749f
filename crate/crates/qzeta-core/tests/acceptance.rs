//! Acceptance suite: one test (and one printed PASS/FAIL line) per
//! criterion. Run with `--nocapture` to see the per-criterion lines.

use num::{Signed, Zero};

use qzeta_core::accel::{
    bbb_rhs, bbb_rhs_series, t2_rhs, terms_to_tolerance, zeta3_accel, zeta3_amdeberhan,
    AccelTag, AcceleratedSeriesId, SeriesId, Zeta3Variant,
};
use qzeta_core::qcore::{int, q_binomial, rat, ten_pow_neg};
use qzeta_core::qzeta::{
    genfunc_lhs_numeric, genfunc_lhs_series, zeta2_limit_report, zeta3_alt_naive, zeta_q_naive,
};
use qzeta_core::wz::{
    bbb_pair, sum_formula_i, sum_formula_ii, sum_formula_s, telescope_residual,
    zeta3_closed_form, zeta3_pair, Zeta3Init,
};
use qzeta_core::{ExactRational, QContext};

fn ctx(q: ExactRational, digits: u32) -> QContext {
    QContext::new(q, digits, 200_000).unwrap()
}

fn report(id: u32, name: &str, pass: bool) {
    println!(
        "acceptance {id:02} {name}: {}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "acceptance criterion {id} ({name}) failed");
}

#[test]
fn criterion_01_telescoping_certificates() {
    let mut pass = true;
    for q in [rat(1, 3), rat(1, 2), rat(2, 3)] {
        for a in [int(0), rat(1, 4), rat(1, 3)] {
            let c = ctx(q.clone(), 30);
            let pair = bbb_pair(&a, &c, 21).unwrap();
            pass &= telescope_residual(&pair, 20, 20, &c).unwrap().is_zero();
        }
    }
    for q in [rat(3, 2), int(2)] {
        for init in [Zeta3Init::First, Zeta3Init::Second] {
            let c = ctx(q.clone(), 30);
            let pair = zeta3_pair(init.values(), &c, 21).unwrap();
            pass &= telescope_residual(&pair, 20, 20, &c).unwrap().is_zero();
        }
    }
    report(1, "telescoping certificates residual = 0", pass);
}

#[test]
fn criterion_02_transition_matrix_vs_closed_forms() {
    let mut pass = true;
    for q in [rat(3, 2), int(2), rat(5, 2)] {
        for init in [Zeta3Init::First, Zeta3Init::Second] {
            let c = ctx(q.clone(), 30);
            let pair = zeta3_pair(init.values(), &c, 20).unwrap();
            for n in 0..=20u64 {
                let (a0, a1) = zeta3_closed_form(init, n, &c);
                pass &= pair.p_coeffs[n as usize] == vec![a0, a1];
            }
        }
    }
    report(2, "transition-matrix coefficients equal closed forms", pass);
}

#[test]
fn criterion_03_central_binomial_numeric_identity() {
    let c = ctx(rat(1, 2), 32);
    let tol = ten_pow_neg(30);
    let mut pass = true;
    for a in [int(0), rat(1, 5), rat(1, 3)] {
        let accel = bbb_rhs(&a, &c).unwrap();
        let naive = genfunc_lhs_numeric(&a, &c).unwrap();
        pass &= (&accel.value - &naive.value).abs() < tol;
        pass &= accel.terms_used < 40;
    }
    report(3, "central-binomial accelerated series matches generating function", pass);
}

#[test]
fn criterion_04_coefficient_identity() {
    let c = ctx(rat(1, 2), 27);
    let tol = ten_pow_neg(25);
    let lhs = genfunc_lhs_series(5, &c).unwrap();
    let rhs = bbb_rhs_series(5, &c).unwrap();
    let mut pass = true;
    for k in 0..=5usize {
        pass &= (lhs.series.coeff(k) - rhs.series.coeff(k)).abs() < tol;
        let zeta = zeta_q_naive(2 * k as u32 + 2, &c).unwrap();
        pass &= (rhs.series.coeff(k) - &zeta.value).abs() < tol;
    }
    report(4, "a^(2k) coefficients match q-zeta values, k <= 5", pass);
}

#[test]
fn criterion_05_diagonal_numeric_identity() {
    let c = ctx(rat(1, 2), 32);
    let tol = ten_pow_neg(30);
    let mut pass = true;
    for a in [int(0), rat(1, 5), rat(1, 3)] {
        let accel = t2_rhs(&a, &c).unwrap();
        let naive = genfunc_lhs_numeric(&a, &c).unwrap();
        pass &= (&accel.value - &naive.value).abs() < tol;
    }
    report(5, "diagonal accelerated series matches generating function", pass);
}

#[test]
fn criterion_06_zeta3_identities() {
    let c = ctx(rat(1, 2), 42);
    let tol = ten_pow_neg(40);
    let z3 = zeta_q_naive(3, &c).unwrap();
    let alt = zeta3_alt_naive(&c).unwrap();
    let v1 = zeta3_accel(Zeta3Variant::V1, &c).unwrap();
    let v2 = zeta3_accel(Zeta3Variant::V2, &c).unwrap();
    let amd = zeta3_amdeberhan(&c).unwrap();
    let pass = (&v1.value - &z3.value).abs() < tol
        && (&v2.value - &alt.value).abs() < tol
        && (&amd.value - &z3.value).abs() < tol;
    report(6, "accelerated zeta(3)-family series hit their targets", pass);
}

#[test]
fn criterion_07_summation_formula_consistency() {
    let tol = ten_pow_neg(30);
    let mut pass = true;

    let c = ctx(rat(1, 2), 33);
    for a in [int(0), rat(1, 5)] {
        let pair = bbb_pair(&a, &c, 100).unwrap();
        let (_, r1) = sum_formula_i(&pair, &c).unwrap();
        let (_, r2) = sum_formula_ii(&pair, &c).unwrap();
        let t1 = bbb_rhs(&a, &c).unwrap();
        let t2 = t2_rhs(&a, &c).unwrap();
        pass &= (&r1.value - &t1.value).abs() < tol;
        pass &= (&r2.value - &t2.value).abs() < tol;
        let mut s_values = Vec::new();
        for s in [1u64, 2, 3] {
            let (_, rs) = sum_formula_s(&pair, s, &c).unwrap();
            s_values.push(rs.value);
        }
        pass &= (&s_values[0] - &s_values[1]).abs() < tol;
        pass &= (&s_values[0] - &s_values[2]).abs() < tol;
    }

    let c2 = ctx(int(2), 33);
    let pair = zeta3_pair(Zeta3Init::First.values(), &c2, 100).unwrap();
    let mut s_values = Vec::new();
    for s in [1u64, 2, 3] {
        let (_, rs) = sum_formula_s(&pair, s, &c2).unwrap();
        s_values.push(rs.value);
    }
    pass &= (&s_values[0] - &s_values[1]).abs() < tol;
    pass &= (&s_values[0] - &s_values[2]).abs() < tol;

    report(7, "summation formulas reproduce accelerated values, s-independent", pass);
}

#[test]
fn criterion_08_acceleration_measured() {
    let c = ctx(rat(1, 2), 32);
    let eps = ten_pow_neg(30);
    let accel = |tag, a: Option<ExactRational>| {
        SeriesId::Accel(AcceleratedSeriesId::new(tag, a).unwrap())
    };
    let matched: Vec<(&str, SeriesId, SeriesId)> = vec![
        (
            "zeta3 naive vs z31",
            SeriesId::ZetaQNaive { s: 3 },
            accel(AccelTag::Z3V1, None),
        ),
        (
            "zeta3-alt naive vs z32",
            SeriesId::Zeta3AltNaive,
            accel(AccelTag::Z3V2, None),
        ),
        (
            "zeta3 naive vs amdeberhan",
            SeriesId::ZetaQNaive { s: 3 },
            accel(AccelTag::Z3Amdeberhan, None),
        ),
        (
            "genfunc a=1/5 vs central-binomial form",
            SeriesId::GenfuncLhs { a: rat(1, 5) },
            accel(AccelTag::BbbT1, Some(rat(1, 5))),
        ),
        (
            "genfunc a=1/5 vs diagonal form",
            SeriesId::GenfuncLhs { a: rat(1, 5) },
            accel(AccelTag::BbbT2, Some(rat(1, 5))),
        ),
    ];
    let mut pass = true;
    for (label, naive, fast) in &matched {
        let tn = terms_to_tolerance(naive, &eps, &c).unwrap();
        let tf = terms_to_tolerance(fast, &eps, &c).unwrap();
        println!("  {label}: naive {tn} terms, accelerated {tf} terms");
        pass &= tf < tn;
    }
    report(8, "accelerated series need strictly fewer terms", pass);
}

#[test]
fn criterion_09_central_q_binomial_bounded() {
    let c = ctx(rat(1, 2), 30);
    let b60 = q_binomial(120, 60, &c).unwrap();
    let b80 = q_binomial(160, 80, &c).unwrap();
    let pass = (b60 - b80).abs() < ten_pow_neg(10);
    report(9, "central q-binomial is Cauchy-stable between n=60 and n=80", pass);
}

#[test]
fn criterion_10_limit_sanity_report() {
    let (value, gap) = zeta2_limit_report(0.999);
    println!("  q -> 1 report: zeta[2] at q=0.999 is {value}, gap to pi^2/6 is {gap}");
    report(10, "q -> 1 sanity report emitted (non-gating)", true);
}
