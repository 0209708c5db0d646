//! The ten acceptance criteria, one PASS/FAIL line each.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use motzkin::circle::{
    cosine_lp, delsarte_for_support, fejer_bound, half_parity_check, half_parity_report, kappa_rational, CosinePolynomial,
};
use motzkin::density::{
    check_tiling_complement, corank1_exact, integer_tiling_complement, max_independent_set_adjacency, rank1_construction,
    rank1_density, rank1_problem, rank1_report, verify_avoiding,
};
use motzkin::group::{
    basis_images, induced_cayley_graph, problem_from_integer_vectors, problem_from_rational_circle, quotient_of,
    DifferenceProblem, GroupElement, QuotientGroup,
};
use motzkin::lattice::{smith_normal_form, IntMatrix, Lattice};
use motzkin::report::Method;
use motzkin::solve::{bounds, density};
use motzkin::{BigInt, BigRational, Error, SolverOptions};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn integers(ds: &[i64]) -> DifferenceProblem {
    let vs: Vec<Vec<BigInt>> = ds.iter().map(|&d| vec![d.into()]).collect();
    problem_from_integer_vectors(&vs).unwrap()
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    check(elapsed < limit, || format!("took {elapsed:?}, limit {limit:?}"))
}

/// Independence number by trying every subset; `adjacency` as bitmasks.
fn brute_alpha(adjacency: &[u64]) -> usize {
    let n = adjacency.len();
    (0u64..1 << n)
        .filter(|&s| (0..n).all(|v| s >> v & 1 == 0 || adjacency[v] & s == 0))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

fn masks(adjacency: &[Vec<usize>]) -> Vec<u64> {
    adjacency.iter().map(|nb| nb.iter().fold(0u64, |m, &w| m | 1 << w)).collect()
}

fn c1() -> Outcome {
    let start = Instant::now();
    let opts = SolverOptions::default();
    let p = problem_from_rational_circle(&[q(1, 13), q(3, 13), q(4, 13)]).map_err(|e| e.to_string())?;
    let d = density(&p, &opts).map_err(|e| e.to_string())?;
    let kappa = kappa_rational(&[q(1, 13), q(3, 13), q(4, 13)], opts.enumeration_cap).map_err(|e| e.to_string())?;
    let b = bounds(&p, &opts).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    check(d.exact == Some(q(3, 13)), || format!("Md = {:?}", d.exact))?;
    check(kappa.value == q(2, 13), || format!("kappa = {}", kappa.value))?;
    check(
        b.entries.iter().any(|e| e.method == Method::KappaCyclic && e.value == q(2, 13)),
        || "bounds lack the kappa entry".into(),
    )?;
    within(elapsed, Duration::from_secs(1))?;
    Ok(format!("Md = 3/13, kappa = 2/13 in {elapsed:?}"))
}

fn c2() -> Outcome {
    let start = Instant::now();
    let s = corank1_exact(&integers(&[1, 3, 8]), &SolverOptions::default()).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    check(s.density == q(4, 11), || format!("Md = {}", s.density))?;
    check(s.states <= 256, || format!("{} states", s.states))?;
    within(elapsed, Duration::from_secs(10))?;
    Ok(format!("Md = 4/11 with {} states, cycle length {}, in {elapsed:?}", s.states, s.period))
}

fn compositions(total: i64, parts: usize) -> Vec<Vec<i64>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    (1..=total - parts as i64 + 1)
        .flat_map(|first| {
            compositions(total - first, parts - 1).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

fn c3() -> Outcome {
    let start = Instant::now();
    let opts = SolverOptions::default();
    let mut count = 0;
    for r in 1..=3usize {
        for k in r as i64..=13 {
            for m in compositions(k, r) {
                let mb: Vec<BigInt> = m.iter().map(|&x| BigInt::from(x)).collect();
                let want = BigRational::new(BigInt::from(k / 2), BigInt::from(k));
                let formula = rank1_density(&mb).map_err(|e| e.to_string())?;
                check(formula == want, || format!("{m:?}: formula {formula}"))?;
                count += 1;
                if k == 1 {
                    // e_1 lies in Λ, so the only avoiding set is empty
                    check(
                        matches!(rank1_problem(&mb), Err(Error::IdentityDifference { .. })),
                        || format!("{m:?}: identity difference not detected"),
                    )?;
                    continue;
                }
                let rep = rank1_report(&mb, &opts).map_err(|e| format!("{m:?}: {e}"))?;
                let tile = rep
                    .entries
                    .iter()
                    .find(|e| matches!(e.method, Method::Tile { verified: true, .. }))
                    .ok_or_else(|| format!("{m:?}: no verified tile bound"))?;
                check(tile.value == want, || format!("{m:?}: tile bound {}", tile.value))?;
                let s = rank1_construction(&mb).map_err(|e| format!("{m:?}: {e}"))?;
                check(s.density() == want, || format!("{m:?}: construction {}", s.density()))?;
                let p = rank1_problem(&mb).map_err(|e| e.to_string())?;
                check(verify_avoiding(&s, &p), || format!("{m:?}: construction not avoiding"))?;
                if r == 2 {
                    let w = corank1_exact(&p, &opts).map_err(|e| format!("{m:?}: {e}"))?;
                    check(w.density == want, || format!("{m:?}: window solver {}", w.density))?;
                }
            }
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(60))?;
    Ok(format!("{count} vectors m two-sided in {elapsed:?}"))
}

fn c4() -> Outcome {
    let opts = SolverOptions::default();
    for n in 1..=6u64 {
        let ds: Vec<i64> = (1..=n as i64).collect();
        let s = corank1_exact(&integers(&ds), &opts).map_err(|e| e.to_string())?;
        let want = q(1, n as i64 + 1);
        check(s.density == want, || format!("N = {n}: window solver {}", s.density))?;
        let support: Vec<u64> = (1..=n).collect();
        let lp = cosine_lp(&support, 512 * n as u32, &opts.lp_margin).map_err(|e| e.to_string())?;
        let c0 = lp.value_at_zero().to_f64().unwrap_or(f64::NAN);
        check((c0 - (n + 1) as f64).abs() < 1e-3, || format!("N = {n}: LP C(0) = {c0}"))?;
        let (bound, kernel) = fejer_bound(n).map_err(|e| e.to_string())?;
        check(bound == want, || format!("N = {n}: Fejér bound {bound}"))?;
        for (k, c) in kernel.terms() {
            let expected = q(2 * (n + 1 - k) as i64, n as i64 + 1);
            check(*c == expected, || format!("N = {n}: c_{k} = {c}"))?;
        }
        let d = delsarte_for_support(&support, &opts).map_err(|e| e.to_string())?;
        check(d.bound == want && d.grid.is_none(), || format!("N = {n}: certified {}", d.bound))?;
    }
    Ok("N = 1..6: window solver, LP and Fejér all give 1/(N+1)".into())
}

fn c5() -> Outcome {
    let coeffs = [(1u64, q(1553, 6048)), (3, q(209, 252)), (8, q(9, 28))];
    let c = CosinePolynomial::new(coeffs.to_vec()).map_err(|e| e.to_string())?;
    let cert = c.sturm_certify();
    check(cert.is_nonnegative(), || format!("certificate {cert:?}"))?;
    let c0 = coeffs.iter().fold(BigRational::one(), |acc, (_, x)| acc + x);
    check(c0 == q(14561, 6048), || format!("1 + Σ c_k = {c0}"))?;
    check(c.value_at_zero() == c0, || format!("C(0) = {}", c.value_at_zero()))?;
    let bound = motzkin::circle::certified_bound(&c).map_err(|e| e.to_string())?;
    check(bound == q(6048, 14561), || format!("bound {bound}"))?;
    Ok("C(0) = 14561/6048, certified bound 6048/14561".into())
}

fn c6() -> Outcome {
    let opts = SolverOptions::default();
    let mut detail = Vec::new();
    for grid in [4096u32, 8192] {
        let lp = cosine_lp(&[1, 3, 8], grid, &opts.lp_margin).map_err(|e| e.to_string())?;
        let c0 = lp.value_at_zero().to_f64().unwrap_or(f64::NAN);
        check((2.40..2.4088).contains(&c0), || format!("grid {grid}: C(0) = {c0}"))?;
        detail.push(format!("grid {grid}: {c0:.6}"));
    }
    Ok(detail.join(", "))
}

/// Whether `f` covers `Z_t` exactly with some translate set, by trying every subset.
fn brute_tiles_cyclic(f: &[i64], t: usize) -> bool {
    if !t.is_multiple_of(f.len()) || t > 20 {
        return false;
    }
    (0u32..1 << t).filter(|s| s.count_ones() as usize * f.len() == t).any(|s| {
        let mut hit = vec![0u8; t];
        for c in (0..t).filter(|&c| s >> c & 1 == 1) {
            for &x in f {
                hit[(c as i64 + x).rem_euclid(t as i64) as usize] += 1;
            }
        }
        hit.iter().all(|&h| h == 1)
    })
}

fn c7() -> Outcome {
    let opts = SolverOptions::default();
    let z = QuotientGroup::of(&Lattice::zero(1));
    let mut detail = Vec::new();
    for f in [&[0i64, 1, 2][..], &[0, 2], &[0, 1, 3]] {
        let mut ds: Vec<i64> = f.iter().flat_map(|a| f.iter().map(move |b| a - b)).filter(|&d| d > 0).collect();
        ds.sort_unstable();
        ds.dedup();
        let s = corank1_exact(&integers(&ds), &opts).map_err(|e| e.to_string())?;
        let inv = q(1, f.len() as i64);
        let diam = (f.iter().max().unwrap() - f.iter().min().unwrap()) as u32;
        let brute = (1..=1usize << diam).any(|t| brute_tiles_cyclic(f, t));
        match integer_tiling_complement(f).map_err(|e| e.to_string())? {
            Some(c) => {
                let tile: Vec<GroupElement> = f.iter().map(|&x| z.canonical(&[BigInt::from(x)])).collect();
                let ok = check_tiling_complement(&tile, &c, opts.enumeration_cap).map_err(|e| e.to_string())?;
                check(ok && brute, || format!("{f:?}: complement {c} does not tile"))?;
                check(s.density == inv, || format!("{f:?}: Md = {}", s.density))?;
                detail.push(format!("{f:?} tiles, Md = {}", s.density));
            }
            None => {
                check(!brute, || format!("{f:?}: checker missed a tiling"))?;
                check(s.density <= inv, || format!("{f:?}: Md = {} above 1/|F|", s.density))?;
                detail.push(format!("{f:?} does not tile, Md = {}", s.density));
            }
        }
    }
    Ok(detail.join("; "))
}

fn c8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for trial in 0..200 {
        let torsion: Vec<BigInt> = (0..rng.gen_range(0..=2)).map(|_| BigInt::from(rng.gen_range(2..=7))).collect();
        let free = if torsion.is_empty() { 1 } else { rng.gen_range(0..=1) };
        let g = QuotientGroup::product(&torsion, free).map_err(|e| e.to_string())?;
        let dim = g.ambient_dim();
        let random = |rng: &mut ChaCha8Rng| -> Vec<BigInt> { (0..dim).map(|_| BigInt::from(rng.gen_range(-6..=6))).collect() };
        let mut ds = Vec::new();
        while ds.len() < rng.gen_range(1..=3) {
            let d = g.canonical(&random(&mut rng));
            if !d.is_zero() {
                ds.push(d);
            }
        }
        let p = DifferenceProblem::new(g.clone(), ds, motzkin::group::Source::ExplicitLattice).map_err(|e| e.to_string())?;
        let n = rng.gen_range(1..=20);
        let mut vertices: Vec<GroupElement> = Vec::new();
        let mut tries = 0;
        while vertices.len() < n && tries < 1000 {
            tries += 1;
            let v = g.canonical(&random(&mut rng));
            if !vertices.contains(&v) {
                vertices.push(v);
            }
        }
        let graph = induced_cayley_graph(&p, vertices).map_err(|e| e.to_string())?;
        let mis = max_independent_set_adjacency(&graph.adjacency, 64).map_err(|e| e.to_string())?;
        let m = masks(&graph.adjacency);
        let alpha = brute_alpha(&m);
        check(mis.size == alpha, || format!("trial {trial}: solver {} vs exhaustive {alpha}", mis.size))?;
        check(mis.vertices.len() == mis.size && graph.is_independent(&mis.vertices), || {
            format!("trial {trial}: witness {:?} not independent", mis.vertices)
        })?;
    }
    Ok("200 graphs agree with exhaustive search".into())
}

fn c9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for trial in 0..500 {
        let (rows, cols) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let data: Vec<BigInt> = (0..rows * cols).map(|_| BigInt::from(rng.gen_range(-9..=9))).collect();
        let m = IntMatrix::new(rows, cols, data).map_err(|e| e.to_string())?;
        let snf = smith_normal_form(&m);
        let product = snf.u.mul(&snf.s).and_then(|us| us.mul(&snf.v)).map_err(|e| e.to_string())?;
        check(product == m, || format!("trial {trial}: U·S·V ≠ input for {m}"))?;
        for (name, t) in [("U", &snf.u), ("V", &snf.v)] {
            let det = t.determinant().map_err(|e| e.to_string())?;
            check(det.abs().is_one(), || format!("trial {trial}: det {name} = {det}"))?;
        }
        let diag: Vec<BigInt> = (0..rows.min(cols)).map(|i| snf.s[(i, i)].clone()).collect();
        let off_diagonal_zero = (0..rows).all(|i| (0..cols).all(|j| i == j || snf.s[(i, j)].is_zero()));
        check(off_diagonal_zero, || format!("trial {trial}: S not diagonal"))?;
        check(diag.iter().all(|x| !x.is_negative()), || format!("trial {trial}: negative diagonal"))?;
        let chain = diag.windows(2).all(|w| if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() });
        check(chain, || format!("trial {trial}: divisibility fails on {diag:?}"))?;
    }
    Ok("500 decompositions valid".into())
}

fn c10() -> Outcome {
    let opts = SolverOptions::default();
    let fractions = [q(1, 2), q(1, 6)];
    let p = problem_from_rational_circle(&fractions).map_err(|e| e.to_string())?;
    let kappa = kappa_rational(&fractions, opts.enumeration_cap).map_err(|e| e.to_string())?;
    check(kappa.value == q(1, 2), || format!("kappa = {}", kappa.value))?;
    check(p.group.invariant_factors() == [BigInt::from(6)], || format!("group {}", p.group.describe()))?;
    let mut residues: Vec<i64> = p.differences.iter().map(|d| d.torsion[0].to_i64().unwrap()).collect();
    residues.sort_unstable();
    check(residues == [1, 3], || format!("differences {residues:?}"))?;
    let m: Vec<u64> = (0..6)
        .map(|x: i64| {
            [1i64, 3].iter().fold(0u64, |acc, d| acc | 1 << (x + d).rem_euclid(6) | 1 << (x - d).rem_euclid(6))
        })
        .collect();
    let alpha = brute_alpha(&m);
    check(alpha == 3, || format!("exhaustive alpha = {alpha}"))?;
    let d = density(&p, &opts).map_err(|e| e.to_string())?;
    check(d.exact == Some(q(1, 2)), || format!("Md = {:?}", d.exact))?;

    let l = Lattice::from_i64(2, &[&[1, 1]]).map_err(|e| e.to_string())?;
    check(half_parity_check(&l), || "Z(1,1) not in V_0".into())?;
    let realized = basis_images(&quotient_of(&l)).map_err(|e| e.to_string())?;
    let hp = half_parity_report(&realized, &opts)
        .map_err(|e| e.to_string())?
        .ok_or("half-parity did not apply")?;
    check(hp.exact == Some(q(1, 2)), || format!("half-parity gives {:?}", hp.exact))?;
    let w = corank1_exact(&realized, &opts).map_err(|e| e.to_string())?;
    check(w.density == q(1, 2), || format!("window solver {}", w.density))?;
    Ok("kappa = Md = 1/2 on Z_6; Z(1,1) half-parity 1/2 = window solver".into())
}

type Criterion = fn() -> Outcome;

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 10] = [
        ("1 thirteen-element circle", c1),
        ("2 corank-1 {1,3,8}", c2),
        ("3 rank-1 suite", c3),
        ("4 Fejér family", c4),
        ("5 published cosine coefficients", c5),
        ("6 LP ceiling for {1,3,8}", c6),
        ("7 tiles", c7),
        ("8 independent sets vs exhaustive", c8),
        ("9 Smith normal form", c9),
        ("10 half-parity and Z_6", c10),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("PASS  criterion {name} ({ms} ms): {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {name} ({ms} ms): {why}");
            }
        }
    }
    println!("{} of 10 criteria passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
