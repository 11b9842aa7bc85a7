//! Acceptance suite: one test per criterion, run at the stated bounds.
//! Each test prints a single PASS line (visible with --nocapture) and
//! asserts the stated time budget.

use std::time::Instant;

use tlzero::checks::*;

fn criterion(
    number: usize,
    budget_secs: f64,
    description: &str,
    parts: &[Result<String, String>],
) {
    let failures: Vec<&String> = parts.iter().filter_map(|r| r.as_ref().err()).collect();
    assert!(
        failures.is_empty(),
        "criterion {number} FAILED: {failures:?}"
    );
    println!("PASS criterion {number:2}: {description}");
    assert!(
        budget_secs > 0.0,
        "criterion {number} has a positive budget"
    );
}

fn timed<T>(budget_secs: f64, number: usize, f: impl FnOnce() -> T) -> T {
    let start = Instant::now();
    let out = f();
    let elapsed = start.elapsed().as_secs_f64();
    assert!(
        elapsed < budget_secs,
        "criterion {number} exceeded its {budget_secs}s budget: {elapsed:.2}s"
    );
    out
}

#[test]
fn criterion_01_catalan_dimensions() {
    let parts = timed(5.0, 1, || vec![check_catalan_dims(12)]);
    criterion(1, 5.0, "|hom(m,n)| = C_{(m+n)/2} for all even m+n <= 12", &parts);
}

#[test]
fn criterion_02_jones_wenzl_suite() {
    let parts = timed(10.0, 2, || {
        vec![check_jw_properties(8), check_jw4_closed_form()]
    });
    criterion(
        2,
        10.0,
        "jw(n)^2 = jw(n), basic cap/cup annihilation, closed form = recursion (n <= 8), jw(4) five-term sum",
        &parts,
    );
}

#[test]
fn criterion_03_end_algebra_blocks() {
    let parts = timed(30.0, 3, || {
        vec![
            check_end4_blocks(),
            check_cap_profile(8),
            check_structure_constants(5),
        ]
    });
    criterion(
        3,
        30.0,
        "End(4) = Mat_2 x Mat_3 x Mat_1, sum r_k^2 = C_m (m <= 8), structure constants vs matrix units (m <= 5)",
        &parts,
    );
}

#[test]
fn criterion_04_mobius_equals_hat() {
    let parts = timed(30.0, 4, || vec![check_mobius_is_hat(6)]);
    criterion(4, 30.0, "mobius_bracket(x) = hat(x) on T_n \\ {*}, n <= 6", &parts);
}

#[test]
fn criterion_05_inverse_monoid() {
    let parts = timed(10.0, 5, || vec![check_inverse_monoid(4)]);
    criterion(
        5,
        10.0,
        "unique inverse equals bar(x) for all x in T_n, n <= 4, exhaustively",
        &parts,
    );
}

#[test]
fn criterion_06_commutor_axioms() {
    let parts = timed(60.0, 6, || {
        vec![
            check_sigma_symmetry(7),
            check_cactus_axiom(6),
            check_sigma_unit(7),
        ]
    });
    criterion(
        6,
        60.0,
        "commutor symmetry (m+n <= 7), cactus axiom square (r+s+t <= 6), unit axiom",
        &parts,
    );
}

#[test]
fn criterion_07_cactus_relations() {
    let parts = timed(60.0, 7, || vec![check_cactus_relations(5)]);
    criterion(
        7,
        60.0,
        "cactus group relations (1)(2)(3), including nested conjugation, n <= 5",
        &parts,
    );
}

#[test]
fn criterion_08_coboundary_equivalence() {
    let parts = timed(60.0, 8, || vec![check_coboundary_functor(6)]);
    criterion(
        8,
        60.0,
        "F(sigma(m,n)) equals the crystal commutor permutation matrix, m+n <= 6",
        &parts,
    );
}

#[test]
fn criterion_09_crystal_oracle() {
    let parts = timed(10.0, 9, || vec![check_crystal_oracle(8)]);
    criterion(
        9,
        10.0,
        "B_2 (x) B_3 = B_5 + B_3 + B_1; component multiplicities match r_k for n <= 8",
        &parts,
    );
}

#[test]
fn criterion_10_projection_embedding() {
    let parts = timed(60.0, 10, || vec![check_projections(6)]);
    criterion(
        10,
        60.0,
        "F(j_k . x) projects onto the component named by x, for all x in D_n, n <= 6",
        &parts,
    );
}

#[test]
fn criterion_11_faithfulness_rank() {
    let parts = timed(60.0, 11, || vec![check_rank_faithfulness(8)]);
    criterion(
        11,
        60.0,
        "rank of span{F(d)} equals C_{(m+n)/2} for m+n <= 8",
        &parts,
    );
}

#[test]
fn criterion_12_nonrigidity_witness() {
    let parts = timed(1.0, 12, || vec![check_nonrigidity()]);
    criterion(
        12,
        1.0,
        "(id (x) cap).(cup (x) id) = 0 at q = 0 and q.id generically",
        &parts,
    );
}

#[test]
fn criterion_13_renormalization() {
    let parts = timed(5.0, 13, || {
        vec![check_renormalization(8, &[(1, 1), (2, 1), (-3, 1)])]
    });
    criterion(
        13,
        5.0,
        "D_a . N_a = id on hom(m,n), m+n <= 8, a in {1, 2, -3}",
        &parts,
    );
}

#[test]
fn criterion_14_fiber_suite() {
    let parts = timed(30.0, 14, || {
        vec![
            check_fiber_validation(),
            check_fiber_functorial(200, 11),
            check_inflation_morphism(),
            check_orbit_invariant(50, 13, 3),
        ]
    });
    criterion(
        14,
        30.0,
        "J_2 triple validates; 200 functorial pairs; non-invertible inflation projection; 50 GL-orbit samples with Tr(A) = 1",
        &parts,
    );
}

#[test]
fn criterion_15_sigma13_expansion() {
    // The spec text says nine terms (six +1, three -1); the paper's
    // displayed expansion and the definitional recomputation both give
    // seven terms (four +1, three -1). The oracle-computed values are the
    // frozen ones; see the project notes for the discrepancy analysis.
    let parts = timed(1.0, 15, || vec![check_sigma13_expansion()]);
    criterion(
        15,
        1.0,
        "sigma(1,3) expands to 7 signed basis diagrams (4 positive, 3 negative), all coefficients +-1, matching the recomputed display",
        &parts,
    );
}
