//! Acceptance suite: the exit gate. One test per criterion, each printing a
//! single PASS/FAIL line (visible with `--nocapture`) and asserting exactness.
//! Every identity is checked in exact arithmetic; there are no tolerances
//! anywhere.

use mirhecke::cellular::{self, ExpansionOutcome};
use mirhecke::combinatorics::{
    binomial, mirabolic_dimension, tableau_count, Bipartition, Partition,
};
use mirhecke::context::AlgebraContext;
use mirhecke::convolution;
use mirhecke::seminormal::{all_irreps, verify_defining_relations, verify_jm_diagonal};
use mirhecke::suites;

fn bip(a: &[usize], b: &[usize]) -> Bipartition {
    Bipartition::new(
        Partition::new(a.to_vec()).unwrap(),
        Partition::new(b.to_vec()).unwrap(),
    )
}

fn verdict(criterion: &str, pass: bool, detail: &str) {
    println!(
        "criterion {}: {} - {}",
        criterion,
        if pass { "PASS" } else { "FAIL" },
        detail
    );
    assert!(pass, "criterion {}: {}", criterion, detail);
}

#[test]
fn criterion_01_dimension_formula() {
    let started = std::time::Instant::now();
    let mut ok = true;
    let mut counts = Vec::new();
    for (n, q, expect) in [(2usize, 2u32, 7usize), (3, 2, 34), (4, 2, 209)] {
        let atlas = convolution::build_atlas(n, q).expect("within budget");
        counts.push(atlas.n_orbits());
        ok &= atlas.n_orbits() == expect && mirabolic_dimension(n) == expect;
    }
    let elapsed = started.elapsed();
    ok &= elapsed.as_secs() < 120;
    verdict(
        "1 (dimension formula)",
        ok,
        &format!("orbit counts {:?} in {:?}", counts, elapsed),
    );
}

#[test]
fn criterion_02_presentation() {
    // rel1..rel6 in the convolution model, n <= 3, q in {2, 3}
    let mut ok = true;
    let mut checked = 0usize;
    for n in 1..=3usize {
        for q in [2u32, 3] {
            let atlas = convolution::build_atlas(n, q).expect("within budget");
            for a in convolution::verify_presentation(&atlas, false) {
                ok &= a.passed();
                checked += 1;
            }
        }
    }
    // nrel1..nrel7 as exact matrix identities on every mirabolic irreducible,
    // n <= 5
    for n in 1..=5usize {
        for rep in all_irreps(AlgebraContext::mirabolic(n)) {
            for a in verify_defining_relations(&rep) {
                ok &= a.passed();
                checked += 1;
            }
        }
    }
    verdict(
        "2 (presentation)",
        ok,
        &format!("{} exact relation instances", checked),
    );
}

#[test]
fn criterion_03_idempotents() {
    let report = suites::idempotents_suite();
    verdict(
        "3 (idempotents)",
        report.all_passed(),
        &format!(
            "{} orthogonality/centrality/sum checks",
            report.summary.total
        ),
    );
}

#[test]
fn criterion_04_irreducible_dimensions() {
    let mut ok = true;
    for n in 0..=5usize {
        let ctx = AlgebraContext::mirabolic(n);
        for label in ctx.labels() {
            let k = label.first.size();
            ok &= ctx.irrep_dimension(&label) == binomial(n, k) * tableau_count(&label.first);
        }
    }
    let cy = AlgebraContext::cyclotomic(2);
    let dims: Vec<usize> = cy.labels().iter().map(|l| cy.irrep_dimension(l)).collect();
    ok &= dims == vec![1, 1, 2, 1, 1];
    verdict(
        "4 (irreducible dimensions)",
        ok,
        &format!("C(n,k) f_theta for n <= 5; rank-2 list {:?}", dims),
    );
}

#[test]
fn criterion_05_jm_spectra_and_center() {
    let mut ok = true;
    // exact diagonality with the predicted eigenvalues, n <= 5
    for n in 1..=5usize {
        for rep in all_irreps(AlgebraContext::mirabolic(n)) {
            for a in verify_jm_diagonal(&rep) {
                ok &= a.passed();
            }
        }
    }
    // scalar action, separation, commutation, and spectrum recovery, n <= 4
    for n in 1..=4usize {
        let report = suites::center_suite(n);
        ok &= report.all_passed();
    }
    verdict(
        "5 (JM spectra and center)",
        ok,
        "diagonal JM action n <= 5; separation and recovery n <= 4",
    );
}

#[test]
fn criterion_06_branching() {
    let mut ok = true;
    for n in 1..=5usize {
        let report = suites::branching_suite(n);
        if !report.all_passed() {
            ok = false;
            if let Some(bad) = report.assertions.iter().find(|a| !a.passed()) {
                println!("  branching failure at {}: {}", bad.id, bad.detail);
            }
        }
    }
    verdict(
        "6 (branching)",
        ok,
        "restriction/induction decompositions, n <= 5, exact label multisets",
    );
}

#[test]
fn criterion_07_fock_categorification() {
    let report = suites::fock_suite(6);
    for a in &report.assertions {
        if !a.passed() {
            println!("  fock failure at {}: {}", a.id, a.detail);
        }
    }
    verdict(
        "7 (fock categorification)",
        report.all_passed(),
        &format!(
            "commutators and column inverses on the truncation interior; {}",
            report
                .assertions
                .iter()
                .find(|a| a.id == "fock/diagonal-pairs")
                .map(|a| a.detail.as_str())
                .unwrap_or("")
        ),
    );
}

#[test]
fn criterion_08_cellularity_rank2() {
    let verify = suites::cellular_verify_suite(2);
    let mut ok = verify.all_passed();
    // the expansion of the excluded rank-2 shape with the exact coefficients
    let outcome = cellular::expand_in_higher(&bip(&[], &[2]), 2);
    let detail = match &outcome {
        ExpansionOutcome::Solved(cert) => {
            let mut ones = 0usize;
            let mut minus = 0usize;
            for (shape, _, _, c) in &cert.entries {
                if *shape == bip(&[1], &[1]) && c == "1" {
                    ones += 1;
                } else if *shape == bip(&[2], &[]) && c == "-1" {
                    minus += 1;
                } else {
                    ok = false;
                }
            }
            ok &= ones == 4 && minus == 1 && cert.q_independent;
            format!(
                "coefficients (1,1,1,1,-1), q-independent: {}",
                cert.q_independent
            )
        }
        ExpansionOutcome::NoSolution => {
            ok = false;
            "NO_SOLUTION".to_string()
        }
    };
    verdict(
        "8 (cellularity rank 2)",
        ok,
        &format!("basis rank 7, star and straightening axioms; {}", detail),
    );
}

#[test]
fn criterion_09_cellularity_rank3_search() {
    // the pushed shape must inherit the rank-2 certificate
    let lower = cellular::expand_in_higher(&bip(&[], &[2]), 2);
    let ExpansionOutcome::Solved(lower_cert) = lower else {
        verdict(
            "9 (cellularity rank 3 search)",
            false,
            "rank-2 solve failed",
        );
        return;
    };
    let pushed = cellular::push_certificate(&lower_cert, 2);
    let mut ok = matches!(&pushed, Some(cert) if cert.shape == bip(&[], &[2, 1]));
    // definitive verdicts for the two open shapes; re-substitution of any
    // solved certificate is asserted inside the solver
    let mut details = vec![format!(
        "[[],[2,1]]: {}",
        if ok {
            "SOLVED via rank push"
        } else {
            "push failed"
        }
    )];
    for shape in [bip(&[1], &[2]), bip(&[], &[3])] {
        let outcome = cellular::expand_in_higher(&shape, 3);
        let text = match &outcome {
            ExpansionOutcome::Solved(cert) => format!(
                "{}: SOLVED ({} terms, solution space dim {}, q-independent: {})",
                shape,
                cert.entries.len(),
                cert.solution_space_dim,
                cert.q_independent
            ),
            ExpansionOutcome::NoSolution => format!("{}: NO_SOLUTION", shape),
        };
        details.push(text);
    }
    // the verdict must be definitive for both open shapes; either answer is a
    // deliverable (the solver asserts exact re-substitution on success)
    ok &= details.len() == 3;
    verdict("9 (cellularity rank 3 search)", ok, &details.join("; "));
}

#[test]
fn criterion_10_cross_model_traces() {
    let mut ok = true;
    for n in 1..=3usize {
        for q in [2u32, 3] {
            let atlas = convolution::build_atlas(n, q).expect("within budget");
            for a in convolution::cross_validate(&atlas, 50, 0x5eed_cafe) {
                ok &= a.passed();
            }
        }
    }
    verdict(
        "10 (cross-model traces)",
        ok,
        "50 seeded words per (n, q), n <= 3, q in {2, 3}, exact equality",
    );
}

#[test]
fn criterion_11_anti_involution() {
    let mut ok = true;
    let mut orbits = 0usize;
    for n in 1..=3usize {
        for q in [2u32, 3] {
            let atlas = convolution::build_atlas(n, q).expect("within budget");
            orbits += atlas.n_orbits();
            for a in convolution::verify_star(&atlas) {
                ok &= a.passed();
            }
        }
    }
    verdict(
        "11 (anti-involution)",
        ok,
        &format!(
            "flag swap matches (w, beta) -> (w^-1, w(beta)) on {} orbits",
            orbits
        ),
    );
}

#[test]
fn criterion_12_alpha_automorphism() {
    let report = suites::alpha_suite();
    verdict(
        "12 (alpha automorphism)",
        report.all_passed(),
        "relation preservation and both idempotent swaps, exact at rank 2",
    );
}
