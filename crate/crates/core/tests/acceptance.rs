//! Acceptance suite. Prints one `PASS`/`FAIL` line per criterion and exits
//! non-zero when any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use simplex_design::algebra::{decomposition_table_for, in_span, power_sum_basis, symmetrized_monomial};
use simplex_design::construct::{
    discriminant_exact, restriction_bound, solve_three_value_family, table_rows, triangle_cubic_roots,
    uniform_excess_family,
};
use simplex_design::index::partitions;
use simplex_design::moments::{monomial_average, simplex_moment};
use simplex_design::scalar::{exact, exact_to_f64};
use simplex_design::verify::{
    cross_validate, g_invariant_indices, verify_brute_force, verify_g_restricted, verify_power_sum_criterion,
    BruteForceOptions,
};
use simplex_design::{DesignSet, Exact, MultiIndex, PermGroup, PointVector};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn idx(e: &[u32]) -> MultiIndex {
    MultiIndex::new(e.to_vec())
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn exact_moments() -> Outcome {
    let m110 = simplex_moment(&idx(&[1, 1, 0]));
    let m111 = simplex_moment(&idx(&[1, 1, 1]));
    ensure(m110 == exact(1, 12), format!("M(1,1,0) = {m110}, expected 1/12"))?;
    ensure(m111 == exact(1, 60), format!("M(1,1,1) = {m111}, expected 1/60"))?;
    let pt = PointVector::exact(vec![exact(1, 2), exact(1, 3), exact(1, 6)]).map_err(err)?;
    let x = DesignSet::orbit(vec![pt], PermGroup::symmetric(3)).map_err(err)?;
    let r = verify_brute_force(&x, 2, BruteForceOptions::default()).map_err(err)?;
    ensure(r.tolerance == 0.0, "exact design evaluated with a non-zero tolerance")?;
    Ok(format!("M(1,1,0) = {m110}, M(1,1,1) = {m111}; exact verification tolerance {}", r.tolerance))
}

fn cubic_orbit(group: PermGroup) -> Result<DesignSet, String> {
    DesignSet::orbit(vec![triangle_cubic_roots().map_err(err)?], group).map_err(err)
}

fn cyclic_residual() -> Outcome {
    let k = idx(&[1, 2, 0]);
    let target = exact_to_f64(&simplex_moment(&k));
    let cyc = monomial_average(&cubic_orbit(PermGroup::cyclic(3))?, &k).map_err(err)?.to_f64();
    let mirrored = monomial_average(&cubic_orbit(PermGroup::symmetric(3))?, &k).map_err(err)?.to_f64();
    let residual = (cyc - target).abs();
    ensure((residual - 0.00481).abs() <= 5e-5, format!("cyclic residual {residual:.6}, expected 0.00481 ± 5e-5"))?;
    let mirror_residual = (mirrored - target).abs();
    ensure(mirror_residual <= 1e-9, format!("mirror-averaged residual {mirror_residual:e} > 1e-9"))?;
    Ok(format!("|<x1 x2^2> - 1/30| = {residual:.6}; mirror-averaged residual {mirror_residual:.1e}"))
}

fn symmetric_repair() -> Outcome {
    let x = cubic_orbit(PermGroup::symmetric(3))?;
    ensure(x.size() == 6, format!("orbit has {} points", x.size()))?;
    let t3 = verify_brute_force(&x, 3, BruteForceOptions::default()).map_err(err)?;
    ensure(t3.is_design && t3.max_abs_residual <= 1e-9, format!("t=3 max residual {:e}", t3.max_abs_residual))?;
    let t4 = verify_brute_force(&x, 4, BruteForceOptions::default()).map_err(err)?;
    ensure(!t4.is_design, "6-point orbit unexpectedly passes t=4")?;
    let worst = t4.worst(1)[0];
    Ok(format!(
        "t=3 max residual {:.1e}; t=4 observed verdict: not a design (worst {} residual {:.3e})",
        t3.max_abs_residual, worst.index, worst.abs_residual
    ))
}

fn span_counterexamples() -> Outcome {
    let c3 = PermGroup::cyclic(3);
    let c3_basis = (1..=3)
        .map(|j| symmetrized_monomial(&c3, &MultiIndex::leading(3, j)))
        .collect::<Result<Vec<_>, _>>()
        .map_err(err)?;
    let c3_cand = symmetrized_monomial(&c3, &idx(&[2, 1, 0])).map_err(err)?;
    ensure(!in_span(&c3_cand, &c3_basis).map_err(err)?.in_span, "F_C3(2,1,0) reported in span")?;

    let c4 = PermGroup::cyclic(4);
    let c4_basis = (1..=2)
        .map(|j| symmetrized_monomial(&c4, &MultiIndex::leading(4, j)))
        .collect::<Result<Vec<_>, _>>()
        .map_err(err)?;
    let c4_cand = symmetrized_monomial(&c4, &idx(&[1, 0, 1, 0])).map_err(err)?;
    ensure(!in_span(&c4_cand, &c4_basis).map_err(err)?.in_span, "F_C4(1,0,1,0) reported in span")?;

    let s3 = PermGroup::symmetric(3);
    let s3_basis = (1..=3)
        .map(|j| symmetrized_monomial(&s3, &MultiIndex::leading(3, j)))
        .collect::<Result<Vec<_>, _>>()
        .map_err(err)?;
    let s3_cand = symmetrized_monomial(&s3, &idx(&[2, 1, 0])).map_err(err)?;
    let s3_span = in_span(&s3_cand, &s3_basis).map_err(err)?;
    ensure(s3_span.in_span, "F_S3(2,1,0) reported outside the S3 span")?;
    let coeffs: Vec<String> = s3_span.coefficients.unwrap_or_default().iter().map(|c| c.to_string()).collect();
    Ok(format!("F_C3(2,1,0) NOT IN SPAN; F_C4(1,0,1,0) NOT IN SPAN; F_S3(2,1,0) IN SPAN with [{}]", coeffs.join(", ")))
}

fn symmetric_span_suite() -> Outcome {
    let mut failures = Vec::new();
    for d in 3..=5usize {
        let g = PermGroup::symmetric(d);
        for t in 1..=4u32 {
            let basis = power_sum_basis(&g, t).map_err(err)?;
            for lambda in partitions(t, d) {
                let cand = symmetrized_monomial(&g, &lambda).map_err(err)?;
                if !in_span(&cand, &basis).map_err(err)?.in_span {
                    failures.push(format!("d={d} {}", lambda.partition_label()));
                }
            }
        }
    }

    // Columns reversed to (1111), (211), (22), (31), (4).
    let g4 = PermGroup::symmetric(4);
    let rows: Vec<MultiIndex> = [&[1u32][..], &[1, 1], &[2], &[1, 1, 1], &[2, 1], &[3], &[1, 1, 1, 1]]
        .iter()
        .map(|p| {
            let mut e = p.to_vec();
            e.resize(4, 0);
            MultiIndex::new(e)
        })
        .collect();
    let table = decomposition_table_for(&rows, 4, &g4).map_err(err)?;
    let first: Vec<Exact> = match table.row_for(&[1]) {
        Some(Some(r)) => r.iter().rev().cloned().collect(),
        _ => return Err("F(1) row missing from the d=4 table".into()),
    };
    let expected: Vec<Exact> = [1, 3, 2, 3, 1].iter().map(|&n| exact(n, 1)).collect();
    let first_s: Vec<String> = first.iter().map(|c| c.to_string()).collect();

    let mut problems = Vec::new();
    if !failures.is_empty() {
        problems.push(format!("not in power-sum span: {}", failures.join(", ")));
    }
    if first != expected {
        problems.push(format!("F(1) row is ({}), expected (1,3,2,3,1)", first_s.join(",")));
    }
    if table.rank != 4 {
        problems.push(format!("7-row system has rank {}, expected 4", table.rank));
    }
    if problems.is_empty() {
        Ok(format!("all partitions in span; F(1) row ({}); rank {}", first_s.join(","), table.rank))
    } else {
        Err(problems.join("; "))
    }
}

const PROPER_TABLE: [(&str, f64, f64, f64); 9] = [
    ("3", 0.659, 0.232, 0.109),
    ("4_1", 0.376, 0.571, 0.052),
    ("4_2", 0.190, 0.569, 0.241),
    ("5_1", 0.475, 0.508, 0.017),
    ("5_2", 0.252, 0.502, 0.246),
    ("6", 0.303, 0.448, 0.249),
    ("7", 0.345, 0.404, 0.252),
    ("8", 0.380, 0.365, 0.255),
    ("9", 0.410, 0.328, 0.262),
];

const IMPROPER_TABLE: [(&str, f64, f64, f64); 7] = [
    ("6", 0.546, 0.459, -0.006),
    ("7", 0.601, 0.421, -0.022),
    ("8", 0.644, 0.390, -0.034),
    ("9", 0.678, 0.364, -0.042),
    ("16", 0.808, 0.258, -0.066),
    ("25", 0.874, 0.197, -0.070),
    ("100", 0.967, 0.086, -0.053),
];

fn table_reproduction() -> Outcome {
    let rows = table_rows().map_err(err)?;
    let mut worst = 0.0f64;
    for (table, expected, proper) in [(1u8, &PROPER_TABLE[..], true), (2, &IMPROPER_TABLE[..], false)] {
        let got: Vec<_> = rows.iter().filter(|r| r.table == table).collect();
        ensure(got.len() == expected.len(), format!("table {table}: {} rows, expected {}", got.len(), expected.len()))?;
        for (row, &(label, a, b, c)) in got.iter().zip(expected) {
            ensure(row.label == label, format!("table {table}: label {} where {label} expected", row.label))?;
            ensure(row.proper == proper, format!("table {table} d={label}: properness {}", row.proper))?;
            for (name, v, e) in [("a", row.a, a), ("b", row.b, b), ("1-a-b", row.c, c)] {
                let dev = (v - e).abs();
                worst = worst.max(dev);
                ensure(dev <= 5e-4, format!("table {table} d={label}: {name} = {v:.5}, expected {e}"))?;
            }
        }
    }
    Ok(format!("{} entries within 5e-4 (worst deviation {worst:.1e})", rows.len() * 3))
}

fn random_point(rng: &mut ChaCha8Rng, d: usize, exact_mode: bool) -> PointVector {
    if exact_mode {
        let w: Vec<i64> = (0..d).map(|_| rng.random_range(0..20)).collect();
        let total: i64 = w.iter().sum::<i64>().max(1);
        let mut coords: Vec<Exact> = w.iter().map(|&v| exact(v, total)).collect();
        if w.iter().all(|&v| v == 0) {
            coords = vec![exact(1, d as i64); d];
        }
        PointVector::exact(coords).expect("exact weights sum to one")
    } else {
        let w: Vec<f64> = (0..d).map(|_| -rng.random::<f64>().max(1e-12).ln()).collect();
        let total: f64 = w.iter().sum();
        let mut coords: Vec<f64> = w.iter().map(|v| v / total).collect();
        let head: f64 = coords[..d - 1].iter().sum();
        coords[d - 1] = 1.0 - head;
        PointVector::float(coords).expect("normalized weights sum to one")
    }
}

fn known_design_point(rng: &mut ChaCha8Rng, d: usize) -> PointVector {
    if d >= 3 && rng.random_bool(0.5) {
        let sols = solve_three_value_family(d).expect("family solvable for small d");
        sols[rng.random_range(0..sols.len())].base_point.clone()
    } else if d >= 2 {
        let sols = uniform_excess_family(d, 2).expect("uniform excess solvable");
        sols[rng.random_range(0..sols.len())].base_point.clone()
    } else {
        PointVector::centroid(d)
    }
}

fn criterion_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    let cases = 160;
    let (mut passes, mut fails) = (0, 0);
    for case in 0..cases {
        let d = rng.random_range(2..=5usize);
        let s = rng.random_range(1..=2usize);
        let t = rng.random_range(1..=3u32);
        let exact_mode = rng.random_bool(0.3);
        let base: Vec<PointVector> = (0..s)
            .map(|_| {
                if !exact_mode && rng.random_bool(0.4) {
                    known_design_point(&mut rng, d)
                } else {
                    random_point(&mut rng, d, exact_mode)
                }
            })
            .collect();
        let cv = cross_validate(&base, t, 1e-9).map_err(err)?;
        ensure(
            cv.agree,
            format!(
                "case {case} (d={d}, s={s}, t={t}): criterion {} vs brute force {}",
                cv.criterion.is_design, cv.brute_force.is_design
            ),
        )?;
        if cv.criterion.is_design {
            passes += 1;
        } else {
            fails += 1;
        }
    }
    Ok(format!("{cases} seeded cases agree ({passes} designs, {fails} non-designs)"))
}

fn restricted_classification() -> Outcome {
    let c3 = PermGroup::cyclic(3);
    let x = cubic_orbit(c3.clone())?;
    ensure(x.size() == 3, format!("cyclic set has {} points", x.size()))?;
    let restricted = verify_g_restricted(&x, 3, &c3, 1e-9).map_err(err)?;
    ensure(restricted.is_design, format!("C3-restricted check fails, residual {:e}", restricted.max_abs_residual))?;
    let brute = verify_brute_force(&x, 3, BruteForceOptions::default()).map_err(err)?;
    ensure(!brute.is_design, "cyclic set passes the unrestricted check")?;
    let checked: Vec<Vec<u32>> = g_invariant_indices(&c3, 3).map_err(err)?.iter().map(|k| k.partition()).collect();
    ensure(
        checked == vec![vec![3], vec![1, 1, 1]],
        format!("degree-3 invariant indices {checked:?}, expected [[3], [1, 1, 1]]"),
    )?;
    Ok(format!("C3-restricted pass, brute force fail; degree-3 indices {checked:?}"))
}

fn restriction_equivalence() -> Outcome {
    let mut checked = 0usize;
    for d in 3..=20usize {
        // Dyadic grid on [-1, 2] plus the float neighbourhood of both boundary points.
        let mut grid: Vec<f64> = (-1024..=2048).map(|i| i as f64 / 1024.0).collect();
        let df = d as f64;
        let half_width = (2.0 * (df - 1.0) * (df - 2.0) / (df + 1.0)).sqrt() / df;
        for edge in [1.0 - 2.0 / df - half_width, 1.0 - 2.0 / df + half_width] {
            let mut below = edge;
            let mut above = edge;
            grid.push(edge);
            for _ in 0..4 {
                below = below.next_down();
                above = above.next_up();
                grid.extend([below, above]);
            }
        }
        for a in grid {
            let bound = restriction_bound(d, a).map_err(err)?;
            let disc = discriminant_exact(d, a).map_err(err)? >= Exact::zero();
            ensure(bound == disc, format!("d={d}, a={a}: restriction {bound}, disc>=0 {disc}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} grid points, no counterexample"))
}

fn pseudodesigns_at_scale() -> Outcome {
    let mut proper = 0;
    let mut pseudo = 0;
    for d in 2..=100usize {
        let sols = solve_three_value_family(d).map_err(err)?;
        let mut found = false;
        for s in &sols {
            let r = verify_power_sum_criterion(std::slice::from_ref(&s.base_point), 3, 1e-9).map_err(err)?;
            if r.is_design {
                found = true;
                let expected_size = (d * (d - 1)) as u128;
                ensure(s.orbit_size == expected_size, format!("d={d}: orbit size {} != {expected_size}", s.orbit_size))?;
                if s.proper {
                    proper += 1;
                } else {
                    pseudo += 1;
                }
            }
        }
        ensure(found, format!("d={d}: no solution passes the power-sum criterion at t=3"))?;
    }
    Ok(format!("d = 2..100 all solvable ({proper} proper, {pseudo} pseudo solutions)"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("exact simplex moments", exact_moments),
        ("cyclic-orbit residual and mirror recovery", cyclic_residual),
        ("S3 orbit is a 3-design, not a 4-design", symmetric_repair),
        ("exact span counterexamples", span_counterexamples),
        ("symmetric power-sum span for d=3..5, t<=4", symmetric_span_suite),
        ("solution tables", table_reproduction),
        ("power-sum criterion matches brute force", criterion_equivalence),
        ("C3-restricted classification", restricted_classification),
        ("restriction bound equals disc >= 0", restriction_equivalence),
        ("3-pseudodesigns for d=2..100", pseudodesigns_at_scale),
    ];
    let mut failed = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("criterion {:>2}: PASS  {name} ({ms} ms): {detail}", n + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name} ({ms} ms): {detail}", n + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
