//! Murphy-type cellular basis machinery for the cyclotomic algebra and its
//! image in the mirabolic quotient: the elements m = x * u built from row
//! stabilizers and Jucys-Murphy products, the full basis C_{s,t} =
//! star(T_{d(s)}) m T_{d(t)}, exact verification of the basis and straightening
//! axioms at small rank, and the linear solver that searches for expansions of
//! excluded-shape elements as combinations over strictly dominating shapes.

use crate::combinatorics::{
    d_perm, standard_bitableaux, superstandard, Bipartition, Partition, Permutation, StdBiTableau,
};
use crate::context::AlgebraContext;
use crate::linalg::{rank_of_rows, solve_affine, RowSpace};
use crate::report::Assertion;
use crate::scalar::{Rat, Scalar};
use crate::wordalg::{AlgElement, Evaluator};
use num::Zero;
use serde::Serialize;
use sha2::{Digest, Sha256};

/// All elements of the Young subgroup stabilizing the rows of the
/// superstandard tableau of the shape.
pub fn row_stabilizer(shape: &Bipartition) -> Vec<Permutation> {
    let n = shape.size();
    let t = superstandard(shape);
    // rows as entry intervals
    let mut rows: Vec<Vec<usize>> = Vec::new();
    for comp in 0..2 {
        for row in &t.rows()[comp] {
            rows.push(row.clone());
        }
    }
    // cartesian product of the permutations of each row
    let mut out = vec![Permutation::identity(n)];
    for row in rows {
        if row.len() <= 1 {
            continue;
        }
        let perms_of_row = Permutation::all(row.len());
        let mut next = Vec::with_capacity(out.len() * perms_of_row.len());
        for base in &out {
            for p in &perms_of_row {
                let mut images: Vec<usize> = base.images().to_vec();
                for (pos, &entry) in row.iter().enumerate() {
                    images[entry - 1] = base.apply(row[p.apply(pos + 1) - 1]);
                }
                next.push(Permutation::from_images(images));
            }
        }
        out = next;
    }
    out.sort();
    out.dedup();
    out
}

/// x = sum of T_w over the row stabilizer.
pub fn murphy_x(context: AlgebraContext, shape: &Bipartition) -> AlgElement {
    row_stabilizer(shape)
        .iter()
        .fold(AlgElement::zero(context), |acc, w| {
            acc.add(&AlgElement::t_word(context, w))
        })
}

/// u = product of the first |lambda^1| Jucys-Murphy elements.
pub fn murphy_u(context: AlgebraContext, shape: &Bipartition) -> AlgElement {
    (1..=shape.first.size()).fold(AlgElement::one(context), |acc, i| {
        acc.mul(&AlgElement::jm(context, i))
    })
}

/// m = x * u (equal to u * x; the equality is verified in the suites).
pub fn murphy_m(context: AlgebraContext, shape: &Bipartition) -> AlgElement {
    murphy_x(context, shape).mul(&murphy_u(context, shape))
}

/// One basis element C_{s,t} = star(T_{d(s)}) m T_{d(t)}.
#[derive(Debug, Clone)]
pub struct CellularElement {
    pub shape: Bipartition,
    pub s_index: usize,
    pub t_index: usize,
    pub element: AlgElement,
}

/// T_{d(t)}: the product of letters along a reduced word of d(t) taken in
/// entry-action order (apply the first letter first). With the function
/// composition used by `Permutation` that is a reduced word of the inverse;
/// the other order fails to give a basis already at rank 3.
fn t_d(context: AlgebraContext, tab: &StdBiTableau) -> AlgElement {
    AlgElement::t_word(context, &d_perm(tab).inverse())
}

fn cell_element(
    context: AlgebraContext,
    m: &AlgElement,
    s: &StdBiTableau,
    t: &StdBiTableau,
) -> AlgElement {
    t_d(context, s).star().mul(m).mul(&t_d(context, t))
}

/// The full family over the context's labels (all bipartitions for the
/// cyclotomic algebra, the column family for the mirabolic quotient).
pub fn cellular_basis(context: AlgebraContext) -> Vec<CellularElement> {
    let mut out = Vec::new();
    for shape in context.labels() {
        let m = murphy_m(context, &shape);
        let tabs = standard_bitableaux(&shape);
        for (si, s) in tabs.iter().enumerate() {
            for (ti, t) in tabs.iter().enumerate() {
                out.push(CellularElement {
                    shape: shape.clone(),
                    s_index: si,
                    t_index: ti,
                    element: cell_element(context, &m, s, t),
                });
            }
        }
    }
    out
}

/// Verify at rank n that the mirabolic images of the column-family elements
/// are a basis, that star permutes them by (s,t) -> (t,s), and that left
/// multiplication by each generator is triangular with coefficients
/// independent of t (the straightening axiom).
pub fn verify_basis_and_c2(n: usize) -> Vec<Assertion> {
    let ctx = AlgebraContext::mirabolic(n);
    let ev = Evaluator::new(ctx);
    let basis = cellular_basis(ctx);
    let dim = ctx.dimension();
    let mut out = Vec::new();

    let vectors: Vec<Vec<Scalar>> = basis
        .iter()
        .map(|c| ev.eval(&c.element).to_vector())
        .collect();
    let rank = rank_of_rows(vectors.clone());
    out.push(Assertion::new(
        format!("cellular/n{}/basis-rank", n),
        "the column-family images span: rank equals the algebra dimension",
        rank == dim && basis.len() == dim,
        format!(
            "rank {} of {} elements, dimension {}",
            rank,
            basis.len(),
            dim
        ),
    ));
    if rank != dim {
        return out;
    }

    // (C1): star hits the transposed pair
    let mut star_ok = true;
    for c in &basis {
        let partner = basis
            .iter()
            .find(|d| d.shape == c.shape && d.s_index == c.t_index && d.t_index == c.s_index)
            .expect("full pair grid");
        if !ev.equals(&c.element.star(), &partner.element) {
            star_ok = false;
        }
    }
    out.push(Assertion::new(
        format!("cellular/n{}/c1", n),
        "star(C_(s,t)) = C_(t,s)",
        star_ok,
        format!("{} elements", basis.len()),
    ));

    // (C2): expand a * C_(s,t) in the basis; the support must stay inside the
    // same shape (same t) plus strictly dominating shapes, with same-shape
    // coefficients independent of t.
    let columns: Vec<Vec<Scalar>> = vectors;
    let mut gens = vec![AlgElement::e(ctx)];
    for i in 1..n {
        gens.push(AlgElement::t(ctx, i));
    }
    let mut support_ok = true;
    let mut independence_ok = true;
    let mut detail_fail = String::new();
    for (gi, g) in gens.iter().enumerate() {
        // r_a(s', s) coefficients per shape, collected across t for comparison
        let mut same_shape_coeffs: Vec<(usize, usize, usize, Vec<Scalar>)> = Vec::new();
        for (ci, c) in basis.iter().enumerate() {
            let target = ev.eval(&g.mul(&c.element)).to_vector();
            let sol = solve_affine(&columns, &target).expect("full-rank basis always expands");
            debug_assert!(sol.nullspace.is_empty());
            let tabs_count = standard_bitableaux(&c.shape).len();
            let mut same_shape = vec![Scalar::zero(); tabs_count];
            for (bi, coeff) in sol.particular.iter().enumerate() {
                if coeff.is_zero() {
                    continue;
                }
                let b = &basis[bi];
                if b.shape == c.shape {
                    if b.t_index == c.t_index {
                        same_shape[b.s_index] = coeff.clone();
                    } else {
                        support_ok = false;
                        detail_fail = format!(
                            "generator {} times C[{} s{} t{}] hits same-shape column t{}",
                            gi, c.shape, c.s_index, c.t_index, b.t_index
                        );
                    }
                } else if !b.shape.dominates_strictly(&c.shape) {
                    support_ok = false;
                    detail_fail = format!(
                        "generator {} times C[{} s{} t{}] hits non-dominating shape {}",
                        gi, c.shape, c.s_index, c.t_index, b.shape
                    );
                }
            }
            same_shape_coeffs.push((gi, ci, c.s_index, same_shape));
            let _ = ci;
        }
        // coefficients r_a(s', s) must not depend on t
        for (a_idx, ci, _, coeffs) in &same_shape_coeffs {
            let c = &basis[*ci];
            for (b_idx, cj, _, other) in &same_shape_coeffs {
                if a_idx == b_idx
                    && basis[*cj].shape == c.shape
                    && basis[*cj].s_index == c.s_index
                    && coeffs != other
                {
                    independence_ok = false;
                }
            }
        }
    }
    out.push(Assertion::new(
        format!("cellular/n{}/c2-support", n),
        "a * C_(s,t) is triangular: same shape (same t) plus dominating shapes",
        support_ok,
        if support_ok {
            format!("{} expansions checked", basis.len() * gens.len())
        } else {
            detail_fail
        },
    ));
    out.push(Assertion::new(
        format!("cellular/n{}/c2-independence", n),
        "same-shape coefficients r_a(s', s) do not depend on t",
        independence_ok,
        "compared across all column indices",
    ));
    out
}

/// A solved expansion of m for an excluded shape as a combination of basis
/// elements over strictly dominating shapes.
#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub shape: Bipartition,
    /// (shape, s index, t index, coefficient rendered as a scalar string)
    pub entries: Vec<(Bipartition, usize, usize, String)>,
    pub solution_space_dim: usize,
    pub q_independent: bool,
    /// hex SHA-256 over the canonical certificate text, stamped only after the
    /// exact re-substitution check passed
    pub verification_hash: String,
}

#[derive(Debug, Clone, Serialize)]
pub enum ExpansionOutcome {
    Solved(Certificate),
    NoSolution,
}

impl ExpansionOutcome {
    pub fn is_solved(&self) -> bool {
        matches!(self, ExpansionOutcome::Solved(_))
    }
}

struct Candidate {
    shape: Bipartition,
    s_index: usize,
    t_index: usize,
    element: AlgElement,
    vector: Vec<Scalar>,
}

fn candidates_above(ev: &Evaluator, shape: &Bipartition) -> Vec<Candidate> {
    let ctx = ev.context;
    let mut out = Vec::new();
    for mu in Bipartition::enumerate(ctx.n, false) {
        if !mu.dominates_strictly(shape) {
            continue;
        }
        let m = murphy_m(ctx, &mu);
        let tabs = standard_bitableaux(&mu);
        for (si, s) in tabs.iter().enumerate() {
            for (ti, t) in tabs.iter().enumerate() {
                let element = cell_element(ctx, &m, s, t);
                let vector = ev.eval(&element).to_vector();
                out.push(Candidate {
                    shape: mu.clone(),
                    s_index: si,
                    t_index: ti,
                    element,
                    vector,
                });
            }
        }
    }
    out
}

fn certificate_hash(
    shape: &Bipartition,
    entries: &[(Bipartition, usize, usize, String)],
) -> String {
    let mut hasher = Sha256::new();
    hasher.update(shape.to_string().as_bytes());
    for (s, a, b, c) in entries {
        hasher.update(format!("|{}:{}:{}:{}", s, a, b, c).as_bytes());
    }
    format!("{:x}", hasher.finalize())
}

/// Search for an expansion of m for a shape outside the column family, over
/// the rational function field. The candidate set is every basis element of a
/// strictly dominating shape. On success the solution is sparsified greedily,
/// checked by exact re-substitution, and tested for q-independence.
pub fn expand_in_higher(shape: &Bipartition, n: usize) -> ExpansionOutcome {
    assert_eq!(shape.size(), n);
    assert!(
        !shape.is_second_column(),
        "only excluded shapes need expansion"
    );
    let ctx = AlgebraContext::mirabolic(n);
    let ev = Evaluator::new(ctx);
    let target_elem = murphy_m(ctx, shape);
    let target = ev.eval(&target_elem).to_vector();
    let cands = candidates_above(&ev, shape);
    let columns: Vec<Vec<Scalar>> = cands.iter().map(|c| c.vector.clone()).collect();

    let Some(first) = solve_affine(&columns, &target) else {
        return ExpansionOutcome::NoSolution;
    };
    let solution_space_dim = first.nullspace.len();

    // Prefer a witness with constant coefficients when the affine solution
    // set contains one; the conjecture under test asks for exactly that.
    let (solution, q_independent) = match constant_solution(&columns, &target) {
        Some(consts) => (
            sparsify(
                &columns,
                &target,
                consts.iter().map(|c| Scalar::from_rat(c.clone())).collect(),
                true,
            ),
            true,
        ),
        None => (sparsify(&columns, &target, first.particular, false), false),
    };

    let entries: Vec<(Bipartition, usize, usize, String)> = solution
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| {
            (
                cands[i].shape.clone(),
                cands[i].s_index,
                cands[i].t_index,
                c.to_string(),
            )
        })
        .collect();

    // exact re-substitution at the word level
    let mut combo = AlgElement::zero(ctx);
    for (i, c) in solution.iter().enumerate() {
        if !c.is_zero() {
            combo = combo.add(&cands[i].element.scale(c));
        }
    }
    assert!(
        ev.equals(&combo, &target_elem),
        "solver output failed exact re-substitution"
    );

    ExpansionOutcome::Solved(Certificate {
        shape: shape.clone(),
        verification_hash: certificate_hash(shape, &entries),
        entries,
        solution_space_dim,
        q_independent,
    })
}

/// Greedy support minimization: drop one candidate at a time and re-solve,
/// keeping removals that stay solvable (within constant solutions when the
/// starting witness is constant). Returns a full-length coefficient vector.
fn sparsify(
    columns: &[Vec<Scalar>],
    target: &[Scalar],
    start: Vec<Scalar>,
    constants_only: bool,
) -> Vec<Scalar> {
    let m = columns.len();
    let mut active: Vec<usize> = (0..m).filter(|&i| !start[i].is_zero()).collect();
    let mut coeffs: Vec<Scalar> = active.iter().map(|&i| start[i].clone()).collect();
    for drop in 0..m {
        let Some(pos) = active.iter().position(|&i| i == drop) else {
            continue;
        };
        if coeffs[pos].is_zero() {
            active.remove(pos);
            coeffs.remove(pos);
            continue;
        }
        let reduced: Vec<usize> = active.iter().copied().filter(|&i| i != drop).collect();
        let reduced_cols: Vec<Vec<Scalar>> = reduced.iter().map(|&i| columns[i].clone()).collect();
        let attempt: Option<Vec<Scalar>> = if constants_only {
            constant_solution(&reduced_cols, target)
                .map(|xs| xs.iter().map(|c| Scalar::from_rat(c.clone())).collect())
        } else {
            solve_affine(&reduced_cols, target).map(|s| s.particular)
        };
        if let Some(sol) = attempt {
            active = reduced;
            coeffs = sol;
        }
    }
    let mut full = vec![Scalar::zero(); m];
    for (&i, c) in active.iter().zip(&coeffs) {
        full[i] = c.clone();
    }
    full
}

/// A solution with all coefficients in Q, if one exists. Each Q(q) equation
/// is expanded into one Q-equation per power of q after clearing denominators.
fn constant_solution(columns: &[Vec<Scalar>], target: &[Scalar]) -> Option<Vec<Rat>> {
    let m = columns.len();
    let rows = target.len();
    let mut q_rows: Vec<Vec<Rat>> = Vec::new();
    let mut q_rhs: Vec<Rat> = Vec::new();
    for r in 0..rows {
        // common denominator across the row
        let mut den = crate::scalar::LaurentPoly::one();
        for c in columns.iter().map(|col| &col[r]).chain([&target[r]]) {
            den = den.mul(c.den());
        }
        let cleared: Vec<crate::scalar::LaurentPoly> = columns
            .iter()
            .map(|col| &col[r])
            .chain([&target[r]])
            .map(|c| {
                let scaled = Scalar::from_poly(den.clone()).mul(c);
                debug_assert!(scaled.den().as_monomial().is_some());
                // after clearing, the denominator is 1
                scaled.num().clone()
            })
            .collect();
        let lo = cleared
            .iter()
            .filter_map(|p| p.min_exp())
            .min()
            .unwrap_or(0);
        let hi = cleared
            .iter()
            .filter_map(|p| p.max_exp())
            .max()
            .unwrap_or(0);
        for e in lo..=hi {
            let row: Vec<Rat> = (0..m).map(|j| cleared[j].coeff(e)).collect();
            let rhs = cleared[m].coeff(e);
            if row.iter().all(|x| x.is_zero()) && rhs.is_zero() {
                continue;
            }
            q_rows.push(row);
            q_rhs.push(rhs);
        }
    }
    let q_cols: Vec<Vec<Rat>> = (0..m)
        .map(|j| q_rows.iter().map(|r| r[j].clone()).collect())
        .collect();
    solve_affine(&q_cols, &q_rhs).map(|s| s.particular)
}

/// Push a certificate one rank up: the shape map appends a length-1 row to the
/// second component, the m elements are word-identical under the inclusion,
/// and each basis label extends by placing n+1 in the new box.
pub fn push_certificate(cert: &Certificate, n: usize) -> Option<Certificate> {
    let big_n = n + 1;
    let phi = |s: &Bipartition| -> Bipartition {
        let mut parts = s.second.parts().to_vec();
        parts.push(1);
        Bipartition::new(s.first.clone(), Partition::new(parts).unwrap())
    };
    let big_shape = phi(&cert.shape);
    let ctx = AlgebraContext::mirabolic(big_n);
    let ev = Evaluator::new(ctx);

    let mut entries = Vec::new();
    let mut combo = AlgElement::zero(ctx);
    for (mu, si, ti, coeff) in &cert.entries {
        let big_mu = phi(mu);
        if !big_mu.dominates_strictly(&big_shape) {
            return None;
        }
        let small_tabs = standard_bitableaux(mu);
        let big_tabs = standard_bitableaux(&big_mu);
        // extend a tableau by the new box holding n+1
        let extend = |t: &StdBiTableau| -> StdBiTableau {
            let mut rows = t.rows().clone();
            rows[1].push(vec![big_n]);
            StdBiTableau::from_rows(big_mu.clone(), rows).expect("extension stays standard")
        };
        let find = |t: &StdBiTableau| big_tabs.iter().position(|u| u == t).expect("present");
        let s_big = find(&extend(&small_tabs[*si]));
        let t_big = find(&extend(&small_tabs[*ti]));
        let coeff_scalar: Scalar = coeff.parse().expect("stored coefficients parse back");
        let m = murphy_m(ctx, &big_mu);
        let element = cell_element(ctx, &m, &big_tabs[s_big], &big_tabs[t_big]);
        combo = combo.add(&element.scale(&coeff_scalar));
        entries.push((big_mu.clone(), s_big, t_big, coeff.clone()));
    }
    let target = murphy_m(ctx, &big_shape);
    if !ev.equals(&combo, &target) {
        return None;
    }
    let q_independent = entries
        .iter()
        .all(|(_, _, _, c)| c.parse::<Scalar>().map(|s| s.as_constant().is_some()) == Ok(true));
    Some(Certificate {
        shape: big_shape.clone(),
        verification_hash: certificate_hash(&big_shape, &entries),
        entries,
        solution_space_dim: cert.solution_space_dim,
        q_independent,
    })
}

/// Rank growth of products of generators under evaluation, specialized at a
/// semisimple rational point: reaching the algebra dimension certifies that
/// the generic rank is full, i.e. the evaluation is faithful.
/// Returns (rank reached, words tried).
pub fn faithfulness_rank(context: AlgebraContext, q0: i64, max_len: usize) -> (usize, usize) {
    use crate::linalg::Matrix;
    use crate::wordalg::Gen;
    let ev = Evaluator::new(context);
    let dims: Vec<usize> = ev.reps.iter().map(|r| r.dim()).collect();
    let total: usize = dims.iter().map(|d| d * d).sum();
    let q0 = crate::scalar::rat(q0);

    let mut letters: Vec<Gen> = Vec::new();
    if context.has_e() {
        letters.push(Gen::E);
    }
    for i in 1..context.n {
        letters.push(Gen::T(i));
    }
    let gen_matrices: Vec<Vec<Matrix<Rat>>> = letters
        .iter()
        .map(|g| {
            ev.reps
                .iter()
                .map(|rep| {
                    let m = match g {
                        Gen::E => rep.e_mat(),
                        Gen::T(i) => rep.t_mat(*i),
                    };
                    m.map(|s| s.specialize(&q0).expect("semisimple specialization"))
                })
                .collect()
        })
        .collect();

    let flatten = |blocks: &[Matrix<Rat>]| -> Vec<Rat> {
        blocks.iter().flat_map(|m| m.entries().to_vec()).collect()
    };
    let identity: Vec<Matrix<Rat>> = dims.iter().map(|&d| Matrix::identity(d)).collect();
    let mut space = RowSpace::new(total);
    space.insert(flatten(&identity));
    let mut frontier = vec![identity];
    let mut words = 1usize;
    'outer: for _len in 1..=max_len {
        let mut next = Vec::new();
        for word in &frontier {
            for gen in &gen_matrices {
                let product: Vec<Matrix<Rat>> =
                    word.iter().zip(gen).map(|(a, b)| b.mul(a)).collect();
                words += 1;
                let grew = space.insert(flatten(&product));
                if grew {
                    next.push(product);
                }
                if space.rank() == total {
                    break 'outer;
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    (space.rank(), words)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wordalg::parse_element;

    fn bip(a: &[usize], b: &[usize]) -> Bipartition {
        Bipartition::new(
            Partition::new(a.to_vec()).unwrap(),
            Partition::new(b.to_vec()).unwrap(),
        )
    }

    #[test]
    fn murphy_table_n2() {
        let ctx = AlgebraContext::cyclotomic(2);
        let ev = Evaluator::new(ctx);
        let l1l2 = AlgElement::jm(ctx, 1).mul(&AlgElement::jm(ctx, 2));
        let cases = vec![
            (
                bip(&[2], &[]),
                parse_element(ctx, "1 + T1").unwrap().mul(&l1l2),
            ),
            (bip(&[1, 1], &[]), l1l2.clone()),
            (bip(&[1], &[1]), AlgElement::e(ctx)),
            (bip(&[], &[2]), parse_element(ctx, "1 + T1").unwrap()),
            (bip(&[], &[1, 1]), AlgElement::one(ctx)),
        ];
        for (shape, expect) in cases {
            let m = murphy_m(ctx, &shape);
            assert!(ev.equals(&m, &expect), "m for {}", shape);
        }
    }

    #[test]
    fn murphy_m_commutes() {
        for n in 2..=4usize {
            let ctx = AlgebraContext::cyclotomic(n);
            let ev = Evaluator::new(ctx);
            for shape in ctx.labels() {
                let x = murphy_x(ctx, &shape);
                let u = murphy_u(ctx, &shape);
                assert!(ev.equals(&x.mul(&u), &u.mul(&x)), "shape {}", shape);
            }
        }
    }

    #[test]
    fn murphy_m_star_invariant() {
        for n in 2..=4usize {
            let ctx = AlgebraContext::cyclotomic(n);
            let ev = Evaluator::new(ctx);
            for shape in ctx.labels() {
                let m = murphy_m(ctx, &shape);
                assert!(ev.equals(&m.star(), &m), "shape {}", shape);
            }
        }
    }

    #[test]
    fn t_word_well_defined() {
        // two different reduced words of the same permutation give equal
        // elements under evaluation
        let ctx = AlgebraContext::hecke(4);
        let ev = Evaluator::new(ctx);
        for w in Permutation::all(4) {
            let word1 = w.reduced_word();
            // alternative: strip rightmost descents instead
            let mut imgs = w.images().to_vec();
            let mut word2 = Vec::new();
            loop {
                let descent = (0..imgs.len() - 1).rev().find(|&i| imgs[i] > imgs[i + 1]);
                match descent {
                    Some(i) => {
                        imgs.swap(i, i + 1);
                        word2.push(i + 1);
                    }
                    None => break,
                }
            }
            word2.reverse();
            assert_eq!(word1.len(), word2.len());
            let a =
                AlgElement::from_word(ctx, word1.into_iter().map(crate::wordalg::Gen::T).collect());
            let b =
                AlgElement::from_word(ctx, word2.into_iter().map(crate::wordalg::Gen::T).collect());
            assert!(ev.equals(&a, &b), "w = {}", w);
        }
    }

    #[test]
    fn cellular_counts() {
        for n in 1..=3usize {
            let cy = cellular_basis(AlgebraContext::cyclotomic(n));
            assert_eq!(cy.len(), AlgebraContext::cyclotomic(n).dimension());
            let mi = cellular_basis(AlgebraContext::mirabolic(n));
            assert_eq!(mi.len(), AlgebraContext::mirabolic(n).dimension());
        }
    }

    #[test]
    fn cellular_basis_n2_paper_table() {
        let ctx = AlgebraContext::cyclotomic(2);
        let ev = Evaluator::new(ctx);
        let basis = cellular_basis(ctx);
        // C_(1,1) elements are X, X T1, T1 X, T1 X T1
        let shape = bip(&[1], &[1]);
        let grab = |s: usize, t: usize| -> &AlgElement {
            &basis
                .iter()
                .find(|c| c.shape == shape && c.s_index == s && c.t_index == t)
                .unwrap()
                .element
        };
        assert!(ev.equals(grab(0, 0), &parse_element(ctx, "e").unwrap()));
        assert!(ev.equals(grab(0, 1), &parse_element(ctx, "e T1").unwrap()));
        assert!(ev.equals(grab(1, 0), &parse_element(ctx, "T1 e").unwrap()));
        assert!(ev.equals(grab(1, 1), &parse_element(ctx, "T1 e T1").unwrap()));
    }

    #[test]
    fn verify_pipeline_n2() {
        for a in verify_basis_and_c2(2) {
            assert!(a.passed(), "{}: {}", a.id, a.detail);
        }
    }

    #[test]
    fn expansion_n2_matches_known_certificate() {
        let outcome = expand_in_higher(&bip(&[], &[2]), 2);
        let ExpansionOutcome::Solved(cert) = outcome else {
            panic!("expansion must solve at rank 2");
        };
        assert!(cert.q_independent);
        // coefficients (1,1,1,1,-1) on the four (1,1) pairs and (2,-)
        let mut ones = 0;
        let mut minus = 0;
        for (shape, _, _, c) in &cert.entries {
            if *shape == bip(&[1], &[1]) {
                assert_eq!(c, "1");
                ones += 1;
            } else {
                assert_eq!(*shape, bip(&[2], &[]));
                assert_eq!(c, "-1");
                minus += 1;
            }
        }
        assert_eq!((ones, minus), (4, 1));
    }

    #[test]
    fn push_certificate_to_n3() {
        let ExpansionOutcome::Solved(cert) = expand_in_higher(&bip(&[], &[2]), 2) else {
            panic!("rank-2 expansion solves");
        };
        let pushed = push_certificate(&cert, 2).expect("push succeeds");
        assert_eq!(pushed.shape, bip(&[], &[2, 1]));
        assert_eq!(pushed.entries.len(), cert.entries.len());
    }

    #[test]
    fn rank_push_is_word_identity() {
        // m for (l1, l2) at rank n and for (l1, (l2,1)) at rank n+1 are the
        // same formal words
        let small = murphy_m(AlgebraContext::cyclotomic(2), &bip(&[], &[2]));
        let big = murphy_m(AlgebraContext::cyclotomic(3), &bip(&[], &[2, 1]));
        let small_terms: Vec<_> = small.terms().collect();
        let big_terms: Vec<_> = big.terms().collect();
        assert_eq!(small_terms.len(), big_terms.len());
        for ((w1, c1), (w2, c2)) in small_terms.iter().zip(big_terms.iter()) {
            assert_eq!(w1, w2);
            assert_eq!(c1, c2);
        }
    }

    #[test]
    fn faithfulness_small() {
        for n in 1..=3usize {
            for ctx in [
                AlgebraContext::hecke(n),
                AlgebraContext::cyclotomic(n),
                AlgebraContext::mirabolic(n),
            ] {
                let (rank, _) = faithfulness_rank(ctx, 2, 12);
                assert_eq!(rank, ctx.dimension(), "{}", ctx);
            }
        }
    }
}
