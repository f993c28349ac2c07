//! Acceptance run: one PASS/FAIL line per criterion, exit status nonzero if any fails.
//! Every check is exact; the only tolerances are the wall-time budgets below.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use freecurve::generator::linear::{
    jordan_block_field, linear_syzygy_solution_space, span_echelon, split_block_field, split_block_resonances,
};
use freecurve::generator::ploski::{segment_solution, PloskiSegment};
use freecurve::generator::table1::{admissible_cases, random_factor_spec};
use freecurve::generator::{ploski_coefficient_solve, ploski_curve, table1_curve, CurveCertificate};
use freecurve::grid::oracle::per_l_pair_count;
use freecurve::grid::{build_grids, count_components, enumerate_components, hred, ComponentKind};
use freecurve::poly::{int, ExponentTriple, HomogeneousPolynomial, Scalar, Var};
use freecurve::syzygy::system::{four_family_system, satisfies, six_family_system};
use freecurve::syzygy::{
    abc_scalars, assemble_matrix, curl, g_from_matrix, g_h_formula, minors, normalize_triple, phi_maps,
    random_assignment, random_rational, solve_abc,
};
use freecurve::univariate::squarefree_test;
use freecurve::verify::{
    buchweitz_conca_column, qh_rank_at_point, rational_singular_points, syzygy_dimension, tjurina_number,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BUDGET_COUNTS: Duration = Duration::from_secs(10);
const BUDGET_COMPONENTS: Duration = Duration::from_secs(10);
const BUDGET_IDENTITIES: Duration = Duration::from_secs(120);
const BUDGET_SYSTEMS: Duration = Duration::from_secs(60);
const BUDGET_FREENESS: Duration = Duration::from_secs(300);
const BUDGET_PLOSKI: Duration = Duration::from_secs(30);
const BUDGET_LEMMA: Duration = Duration::from_secs(30);
const BUDGET_QH: Duration = Duration::from_secs(60);
const BUDGET_BC: Duration = Duration::from_secs(60);
const BUDGET_NEGATIVE: Duration = Duration::from_secs(10);

const SEED: u64 = 20240611;
const ASSIGNMENTS_PER_SEGMENT: usize = 3;
const CURVES_PER_DEGREE: usize = 10;

type Criterion = (&'static str, Duration, fn() -> Outcome);

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn rng(stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(SEED);
    r.set_stream(stream);
    r
}

/// `dim` of degree-`d` forms in three variables, zero for negative `d`.
fn forms(d: i64) -> u64 {
    if d < 0 {
        0
    } else {
        ((d + 1) * (d + 2) / 2) as u64
    }
}

fn counting() -> Outcome {
    for n in 4..=30u32 {
        let total = hred(n).unwrap().len() as u64;
        let want = 6 * (3 * n as u64 - 8);
        if total != want {
            return outcome(false, format!("n = {n}: |H_red| = {total}, expected {want}"));
        }
        for l in 0..3 {
            let per = per_l_pair_count(n, l).unwrap();
            if per != 6 * n as u64 - 11 {
                return outcome(false, format!("n = {n}, pair {l}: {per}, expected {}", 6 * n - 11));
            }
        }
    }
    outcome(true, "n = 4..30, totals 6(3n-8), per pair 6n-11")
}

fn components() -> Outcome {
    for n in 3..=20u32 {
        let listed = enumerate_components(n).unwrap().len() as u64;
        let formula = count_components(n).unwrap();
        if listed != formula {
            return outcome(false, format!("n = {n}: enumerated {listed}, formula {formula}"));
        }
    }
    outcome(true, "n = 3..20")
}

fn diagonal_field_applied(g: &HomogeneousPolynomial, abc: &[Scalar; 3]) -> HomogeneousPolynomial {
    let mut acc = HomogeneousPolynomial::zero(g.degree());
    for v in Var::ALL {
        let term = (&HomogeneousPolynomial::var(v) * &g.partial(v)).scale(&abc[v.index()]);
        acc = &acc + &term;
    }
    acc
}

fn identities() -> Outcome {
    let mut checked = 0;
    let mut skipped = 0;
    for n in 4..=8u32 {
        for (idx, h) in hred(n).unwrap().iter().enumerate() {
            let Ok(abc) = solve_abc(h) else {
                skipped += 1;
                continue;
            };
            let abc = abc_scalars(abc);
            let mut r = rng(((n as u64) << 32) | idx as u64);
            for t in 0..ASSIGNMENTS_PER_SEGMENT {
                let asg = random_assignment(h.points(), n, abc.clone(), &mut r).unwrap();
                let m = match assemble_matrix(h, &asg) {
                    Ok(m) => m,
                    Err(e) => return outcome(false, format!("n = {n}, segment {idx}, draw {t}: {e}")),
                };
                let g = g_from_matrix(&m);
                let fail = |what: &str| outcome(false, format!("n = {n}, segment {idx}, draw {t}: {what}"));
                if !diagonal_field_applied(&g, &abc).is_zero() {
                    return fail("(i) diagonal syzygy");
                }
                if !curl(&minors(&m)).is_zero() {
                    return fail("(ii) curl of minors");
                }
                if g != g_h_formula(h, &asg).unwrap() {
                    return fail("(iii) determinant vs closed formula");
                }
                if let Some(e) = g.support().find(|&e| !h.points().contains(&e)) {
                    return fail(&format!("(iv) monomial {e} off the segment"));
                }
                checked += 1;
            }
        }
    }
    outcome(
        true,
        format!("{checked} assignments, {skipped} segments through (n,0,0) have no abc and were skipped"),
    )
}

fn orthogonal_to(p: ExponentTriple) -> [i64; 3] {
    let q = p.as_i64();
    for probe in [[1, 2, 3], [3, 1, 2], [2, 3, 1]] {
        let v = [
            q[1] * probe[2] - q[2] * probe[1],
            q[2] * probe[0] - q[0] * probe[2],
            q[0] * probe[1] - q[1] * probe[0],
        ];
        if v.iter().any(|&c| c != 0) {
            return normalize_triple(v);
        }
    }
    unreachable!("a nonzero point is parallel to at most one probe")
}

fn systems() -> Outcome {
    let mut satisfied = 0;
    let mut violated = 0;
    for n in 3..=7u32 {
        let six = six_family_system(n);
        let four = four_family_system(n).unwrap();
        let punctured = build_grids(n).unwrap().punctured;
        for (idx, comp) in enumerate_components(n).unwrap().iter().enumerate() {
            let (points, abc) = match &comp.kind {
                ComponentKind::Trivial => continue,
                ComponentKind::Singleton { point } => (vec![*point], orthogonal_to(*point)),
                ComponentKind::Segment { segment } => (segment.points().to_vec(), solve_abc(segment).unwrap()),
            };
            let mut r = rng(((n as u64) << 40) | idx as u64);
            let abc = abc_scalars(abc);
            let mut asg = random_assignment(&points, n, abc.clone(), &mut r).unwrap();
            if !satisfies(&six, &asg) || !satisfies(&four, &asg) {
                return outcome(false, format!("n = {n}, component {idx}: assignment rejected"));
            }
            satisfied += 1;
            // a coefficient tied to a point off the component, set to a nonzero value
            let off: Vec<_> = punctured
                .iter()
                .filter(|q| {
                    let v = q.as_i64();
                    (0..3).map(|s| &abc[s] * int(v[s])).sum::<Scalar>() != int(0)
                })
                .filter_map(|&q| {
                    let img = phi_maps(q, n).ok()?;
                    [img.d, img.e, img.f].into_iter().flatten().next()
                })
                .collect();
            let c = off[r.gen_range(0..off.len())];
            asg.set(c, random_rational(&mut r));
            if satisfies(&six, &asg) || satisfies(&four, &asg) {
                return outcome(false, format!("n = {n}, component {idx}: perturbation of {c} accepted"));
            }
            violated += 1;
        }
    }
    outcome(true, format!("n = 3..7, {satisfied} assignments accepted, {violated} perturbations rejected"))
}

/// Squarefree classification-table curves of degree `n`, cycling through the admissible cases.
fn table1_corpus(n: u32, count: usize) -> Vec<CurveCertificate> {
    let cases = admissible_cases(n);
    let mut out = Vec::new();
    let mut attempt = 0u64;
    while out.len() < count {
        let (row, i) = cases[attempt as usize % cases.len()];
        let mut r = rng((1 << 48) | ((n as u64) << 32) | attempt);
        attempt += 1;
        let spec = random_factor_spec(row, i, n, &mut r).unwrap();
        let c = table1_curve(&spec, n, true).unwrap();
        if squarefree_test(&c.g, 16).unwrap() {
            out.push(c);
        }
        assert!(attempt < 100 * count as u64, "too few squarefree curves for n = {n}");
    }
    out
}

fn freeness() -> Outcome {
    let mut checked = 0;
    for n in 4..=6u32 {
        for c in table1_corpus(n, CURVES_PER_DEGREE) {
            for k in 0..=n + 1 {
                let got = syzygy_dimension(&c.g, k) as u64;
                let want = forms(k as i64 - 1) + forms(k as i64 - n as i64 + 2);
                if got != want {
                    return outcome(false, format!("{}: dim Syz_{k} = {got}, expected {want}", c.g));
                }
            }
            let want = (n * n - 3 * n + 3) as u64;
            match tjurina_number(&c.g) {
                Ok(t) if t == want => {}
                other => return outcome(false, format!("{}: tau = {other:?}, expected {want}", c.g)),
            }
            checked += 1;
        }
    }
    outcome(true, format!("{checked} curves, n = 4, 5, 6"))
}

fn ploski_suite() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for n in [4u32, 6, 8] {
        let ours = ploski_coefficient_solve(n);
        let [a, b, c] = [
            HomogeneousPolynomial::y(),
            HomogeneousPolynomial::z(),
            HomogeneousPolynomial::zero(1),
        ];
        let reference = linear_syzygy_solution_space(&a, &b, &c, n).unwrap();
        if span_echelon(&ours, n) != span_echelon(&reference, n) {
            return outcome(false, format!("n = {n}: spans differ"));
        }
        let dim = span_echelon(&ours, n).len();
        if dim != n as usize / 2 {
            ok = false;
            notes.push(format!("n = {n}: dimension {dim}, expected {}", n / 2));
        }
    }
    let rows: [&[i64]; 4] = [&[1, -2], &[1, -4, 4], &[1, -6, 12, -8], &[1, -8, 24, -32, 16]];
    for (t, want) in rows.iter().enumerate() {
        let j = 2 * t as u32 + 1;
        let (_, sol) = segment_solution(8, PloskiSegment::A(j));
        let want: Vec<Scalar> = want.iter().map(|&c| int(c)).collect();
        if sol != vec![want] {
            ok = false;
            notes.push(format!("row j = {j} differs"));
        }
    }
    if ok {
        outcome(true, "n = 4, 6, 8: equal echelon forms, dimension n/2, rows j = 1, 3, 5, 7")
    } else {
        outcome(false, format!("echelon forms agree; {}", notes.join("; ")))
    }
}

fn lemma_suite() -> Outcome {
    for n in 4..=8u32 {
        for a in [int(1), int(-2), Scalar::new(3.into(), 2.into())] {
            let [f1, f2, f3] = jordan_block_field(&a);
            let basis = linear_syzygy_solution_space(&f1, &f2, &f3, n).unwrap();
            if !basis.is_empty() {
                return outcome(false, format!("n = {n}, a = {a}: Jordan block kernel has dimension {}", basis.len()));
            }
        }
        // resonant: a(n−k) + ck = 0 for k = 1
        let (a, c) = (int(1), int(-(n as i64 - 1)));
        if split_block_resonances(&a, &c, n) != vec![1] {
            return outcome(false, format!("n = {n}: resonance set"));
        }
        let [f1, f2, f3] = split_block_field(&a, &c);
        let basis = linear_syzygy_solution_space(&f1, &f2, &f3, n).unwrap();
        let mono = HomogeneousPolynomial::monomial(ExponentTriple::new(0, n - 1, 1), int(1));
        if span_echelon(&basis, n) != span_echelon(&[mono], n) {
            return outcome(false, format!("n = {n}: resonant split block kernel is not y^{}z", n - 1));
        }
        let (a, c) = (int(1), int(1));
        let [f1, f2, f3] = split_block_field(&a, &c);
        if !split_block_resonances(&a, &c, n).is_empty()
            || !linear_syzygy_solution_space(&f1, &f2, &f3, n).unwrap().is_empty()
        {
            return outcome(false, format!("n = {n}: non-resonant split block kernel is nonzero"));
        }
    }
    outcome(true, "n = 4..8: Jordan block zero, resonant split one monomial, non-resonant zero")
}

fn qh_suite() -> Outcome {
    let origin = [int(1), int(0), int(0)];
    let mut notes = Vec::new();
    for n in 4..=8u32 {
        let mut r = rng((2 << 48) | n as u64);
        let lambdas: Vec<Scalar> = (0..n / 2).map(|_| random_rational(&mut r)).collect();
        let c = ploski_curve(n, &lambdas).unwrap();
        let (rank, _) = qh_rank_at_point(&c.matrix, &origin).unwrap();
        if rank != 0 {
            notes.push(format!("Ploski n = {n}: rank {rank} at (1:0:0)"));
        }
    }
    let mut points = 0;
    for n in 4..=6u32 {
        for c in table1_corpus(n, CURVES_PER_DEGREE) {
            for p in rational_singular_points(&c.g, &c.factors) {
                let (rank, _) = qh_rank_at_point(&c.matrix, &p).unwrap();
                if rank == 0 {
                    notes.push(format!("{} has rank 0 at {p:?}", c.g));
                }
                points += 1;
            }
        }
    }
    if notes.is_empty() {
        outcome(true, format!("Ploski n = 4..8 rank 0; {points} corpus singular points rank >= 1"))
    } else {
        outcome(false, format!("{points} corpus singular points checked; {}", notes.join("; ")))
    }
}

fn bc_suite() -> Outcome {
    let mut checked = 0;
    for n in 4..=6u32 {
        for c in table1_corpus(n, CURVES_PER_DEGREE) {
            let abc = c.abc.unwrap();
            if abc.contains(&0) {
                continue;
            }
            let col = buchweitz_conca_column(&c.g, &abc_scalars(abc)).unwrap();
            if col.is_zero() || !col.apply_to_gradient(&c.g).is_zero() {
                return outcome(false, format!("{}: mixed-partials column is not a syzygy", c.g));
            }
            checked += 1;
        }
    }
    outcome(checked > 0, format!("{checked} corpus curves with abc all nonzero"))
}

fn negative_controls() -> Outcome {
    let fermat: HomogeneousPolynomial = "x^4 + y^4 + z^4".parse().unwrap();
    let got = syzygy_dimension(&fermat, 1) as u64;
    let predicted = forms(0) + forms(1 - 4 + 2);
    if got == predicted {
        return outcome(false, "Fermat quartic matched the free profile at k = 1");
    }
    let l: HomogeneousPolynomial = "x + 2*y - z".parse().unwrap();
    let q: HomogeneousPolynomial = "x*y - z^2".parse().unwrap();
    let squared = &(&l * &l) * &q;
    if squarefree_test(&squared, 16).unwrap() {
        return outcome(false, "squared factor passed the squarefree test");
    }
    let mut c = table1_corpus(4, 1).remove(0);
    let var = ["x", "y", "z"][c.abc.unwrap().iter().position(|&v| v != 0).unwrap()];
    c.g = &c.g + &format!("{var}^4").parse::<HomogeneousPolynomial>().unwrap();
    let line = serde_json::to_string(&c).unwrap() + "\n";
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = freecurve_cli::run(
        ["freecurve", "verify", "--checks", "syzygy,curl,route"],
        &mut line.as_bytes(),
        &mut out,
        &mut err,
    );
    if code != 1 {
        return outcome(false, format!("corrupted certificate: exit {code}"));
    }
    outcome(true, format!("Fermat dim Syz_1 = {got} vs {predicted}; squarefree rejected; verify exit 1"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("1 reduced segment counts", BUDGET_COUNTS, counting),
        ("2 component formula", BUDGET_COMPONENTS, components),
        ("3 identity suite", BUDGET_IDENTITIES, identities),
        ("4 system equivalence", BUDGET_SYSTEMS, systems),
        ("5 freeness and Tjurina", BUDGET_FREENESS, freeness),
        ("6 Ploski coefficients", BUDGET_PLOSKI, ploski_suite),
        ("7 linear field kernels", BUDGET_LEMMA, lemma_suite),
        ("8 quasi-homogeneity", BUDGET_QH, qh_suite),
        ("9 mixed-partials syzygy", BUDGET_BC, bc_suite),
        ("10 negative controls", BUDGET_NEGATIVE, negative_controls),
    ];
    let mut failed = 0;
    for (name, budget, f) in criteria {
        let start = Instant::now();
        let o = f();
        let elapsed = start.elapsed();
        let in_time = elapsed <= budget;
        let ok = o.ok && in_time;
        if !ok {
            failed += 1;
        }
        let timing = format!("{:.2}s of {}s", elapsed.as_secs_f64(), budget.as_secs());
        let late = if in_time { "" } else { " (over budget)" };
        println!(
            "{} criterion {name}: {} [{timing}{late}]",
            if ok { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    println!("{} of 10 criteria passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
