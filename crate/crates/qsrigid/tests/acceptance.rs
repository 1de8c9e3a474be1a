//! One pass/fail line per acceptance criterion. Criteria run concurrently and
//! are reported in order.

use num_integer::Integer;
use qsrigid::alcove::{galois_tm, AlcovePoint, LineBundleData, Weight};
use qsrigid::classical::{hypergeom_katz_lower, hypergeom_unitary, HypergeomData};
use qsrigid::divisors::{build_daj, divisor_class, passes_practical, CycleData, FaceData};
use qsrigid::fusion::{h0, level_rank_dual, witten_rank};
use qsrigid::induction::{face_decompose, induce, LeviBundle, LeviSide};
use qsrigid::kz::kz_match_report;
use qsrigid::par::{self, Exec};
use qsrigid::partitions::{complement_in_box, subsets, transpose_in_box, BoxPartition, Partition, SchubertIndex};
use qsrigid::polytope::{dd_vertex_enumeration, f_vertex_orbits, f_vertices, symmetry_orbit, trivial_vertices};
use qsrigid::qschubert::{gw_generalized, gw_invariant, quantum_product, shift_index, unshift_index};
use qsrigid::qschubert::{GrassmannianRing, GwQuery, QClass};
use qsrigid::strangedual::{classify, from_bundle, galois_test, rigid_catalog, rigidity_numerics, v_of_a};
use qsrigid::Rational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn lib<T>(r: qsrigid::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn q(p: i64, d: i64) -> Rational {
    Rational::new(p, d)
}

fn point(xs: &[(i64, i64)]) -> AlcovePoint {
    AlcovePoint::new(xs.iter().map(|&(p, d)| q(p, d)).collect()).unwrap()
}

fn fund(c: &[i64]) -> Weight {
    Weight::from_fund(c)
}

fn c1_lines() -> Outcome {
    let start = Instant::now();
    let query = lib(GwQuery::from_sets(2, 4, 0, 0, &[[2, 4]; 4]))?;
    let v = lib(gw_invariant(&query))?;
    ensure!(v == 2, "got {v}");
    ensure!(start.elapsed() < Duration::from_secs(1), "took {:?}", start.elapsed());
    Ok("⟨σ_1⁴⟩_0 on Gr(2,4) = 2".into())
}

fn rank_one_queries(r: usize, n: usize, s: usize) -> Vec<GwQuery> {
    let idx = subsets(n, r);
    let mut out = Vec::new();
    let mut pick = vec![0usize; s];
    let dim = (r * (n - r)) as i64;
    loop {
        let total: i64 = pick.iter().map(|&i| idx[i].codim() as i64).sum();
        if total >= dim && (total - dim) % n as i64 == 0 {
            let d = (total - dim) / n as i64;
            let indices = pick.iter().map(|&i| idx[i].clone()).collect();
            out.push(GwQuery::new(r, n, d, 0, indices).unwrap());
        }
        let Some(pos) = pick.iter().position(|&x| x + 1 < idx.len()) else { break };
        pick[pos] += 1;
        pick[..pos].iter_mut().for_each(|x| *x = 0);
    }
    out
}

fn c2_oracle() -> Outcome {
    let mut queries = Vec::new();
    for n in 3..=7 {
        for r in 2..n {
            queries.extend(rank_one_queries(r, n, 3));
        }
    }
    let exhaustive = queries.len();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut random = 0;
    while random < 500 {
        let n = rng.gen_range(3..=7);
        let r = rng.gen_range(2..n);
        let idx = subsets(n, r);
        let indices: Vec<SchubertIndex> = (0..4).map(|_| idx[rng.gen_range(0..idx.len())].clone()).collect();
        let total: i64 = indices.iter().map(|i| i.codim() as i64).sum();
        let dim = (r * (n - r)) as i64;
        if total < dim || (total - dim) % n as i64 != 0 {
            continue;
        }
        queries.push(GwQuery::new(r, n, (total - dim) / n as i64, 0, indices).unwrap());
        random += 1;
    }
    let bad: Vec<String> = par::flat_map(Exec::Parallel, queries, |query| {
        match (gw_generalized(&query), witten_rank(&query)) {
            (Ok(a), Ok(b)) if a == b => vec![],
            (a, b) => vec![format!("{query:?}: {a:?} vs {b:?}")],
        }
    });
    ensure!(bad.is_empty(), "{} disagreements, first {}", bad.len(), bad[0]);
    Ok(format!("{exhaustive} exhaustive 3-point and 500 random 4-point queries agree"))
}

fn c3_oldie_class() -> Outcome {
    let c = lib(CycleData::from_sets(1, 2, 4, 0, &[[1, 3]; 3]))?;
    let class = lib(divisor_class(&c))?;
    let want = lib(LineBundleData::new(4, 0, 2, vec![fund(&[1, 0, 1]); 3]))?;
    ensure!(class.bundle == want, "got {:?}", class.bundle);
    Ok("ℓ = 2, λ = (ω_1+ω_3)³".into())
}

fn c4_thaddeus() -> Outcome {
    let f = lib(FaceData::from_sets(2, 4, 8, 0, &[[2, 3, 4, 7], [1, 3, 4, 7], [1, 3, 4, 7]]))?;
    let gw = lib(gw_invariant(&f.query()))?;
    ensure!(gw == 1, "gw = {gw}");
    let (_, l) = lib(build_daj(&f, 2, 1))?;
    let want = lib(LineBundleData::new(8, 0, 4, vec![fund(&[1, 0, 0, 2, 0, 0, 1]); 3]))?;
    ensure!(l == want, "D(2,1) = {l:?}");
    let a = point(&[(1, 2), (1, 4), (1, 4), (1, 4), (-1, 4), (-1, 4), (-1, 4), (-1, 2)]);
    let k = lib(l.kappa_points())?;
    ensure!(k == vec![a; 3], "κ/ℓ = {k:?}");
    Ok("gw = 1, ℓ = 4, λ = (ω_1+2ω_4+ω_7)³, κ/4 exact".into())
}

fn c5_wilson() -> Outcome {
    let c = lib(CycleData::from_sets(0, 3, 9, 0, &[&[2, 6, 9][..], &[3, 6, 9], &[3, 6, 9]]))?;
    let class = lib(divisor_class(&c))?;
    let want = vec![fund(&[0, 3, 0, 0, 0, 2, 0, 0]), fund(&[0, 0, 2, 0, 0, 2, 0, 0]), fund(&[0, 0, 2, 0, 0, 2, 0, 0])];
    ensure!(class.level == 6 && class.bundle.weights == want, "got {:?}", class.bundle);
    ensure!(passes_practical(&c, &class.bundle), "fails the practical test");
    let rn = rigidity_numerics(&lib(from_bundle(&class.bundle))?);
    ensure!(rn == (38, 38, true), "rigidity {rn:?}");
    Ok("ℓ = 6, practical, rigidity (38, 38, true)".into())
}

fn c6_ko() -> Outcome {
    let mut levels = Vec::new();
    for k in 2..=5usize {
        let n = 3 * k - 1;
        let i1: Vec<usize> = (0..k).map(|t| 2 + 3 * t).collect();
        let i2: Vec<usize> = std::iter::once(k).chain(2 * k + 1..=n).collect();
        let f = lib(FaceData::from_sets(0, k, n, 0, &[i1.clone(), i2, i1]))?;
        let (_, l) = lib(build_daj(&f, 2 * k + 1, 2))?;
        let level = ((k - 1) * (k - 1) + 1) as i64;
        let mut outer = vec![0i64; n - 1];
        for b in (2..=3 * k - 4).step_by(3) {
            outer[b - 1] = k as i64 - 1;
        }
        let mut middle = vec![0i64; n - 1];
        middle[k - 1] = k as i64 - 1;
        middle[2 * k - 1] += 1;
        let want = lib(LineBundleData::new(n, 0, level, vec![fund(&outer), fund(&middle), fund(&outer)]))?;
        ensure!(l == want, "k = {k}: {l:?}");
        let (lhs, rhs, bound) = rigidity_numerics(&lib(from_bundle(&l))?);
        ensure!(lhs == rhs && bound, "k = {k}: rigidity {lhs} vs {rhs}, bound {bound}");
        levels.push(level);
    }
    Ok(format!("levels {levels:?}, rigidity equation holds"))
}

fn c7_small_n() -> Outcome {
    let mut counts = Vec::new();
    for n in 2..=6 {
        let orbits = lib(f_vertex_orbits(n, 3))?;
        counts.push(orbits.iter().filter(|o| o.level() > 1).count());
        let catalog = lib(rigid_catalog(n, 3, Exec::Parallel))?;
        ensure!(catalog.len() == orbits.len(), "n = {n}: {} entries vs {} orbits", catalog.len(), orbits.len());
        let certs = lib(f_vertices(n, 3))?;
        let points: BTreeSet<&Vec<AlcovePoint>> = certs.iter().map(|c| &c.point).collect();
        for (e, o) in catalog.iter().zip(&orbits) {
            let v = lib(v_of_a(&e.tuple))?;
            ensure!(v == o.representative.point && points.contains(&v), "n = {n}: v(A) mismatch for {:?}", e.tuple);
        }
        let flags: Vec<bool> = catalog.iter().filter(|e| e.tuple.rank > 1).map(|e| e.finite_monodromy).collect();
        let expected = match n {
            4 => vec![true],
            5 => vec![false],
            6 => vec![true; 3],
            _ => vec![],
        };
        ensure!(flags == expected, "n = {n}: finite flags {flags:?}");
    }
    ensure!(counts == vec![0, 0, 1, 1, 3], "level > 1 orbit counts {counts:?}");
    Ok(format!("level > 1 orbits {counts:?}, finite flags as expected, v(A) bijection"))
}

fn c8_katz() -> Outcome {
    let mut checked = Vec::new();
    for n in [5, 7] {
        let catalog = lib(rigid_catalog(n, 3, Exec::Parallel))?;
        let big: Vec<_> = catalog.iter().filter(|e| e.tuple.rank > 1).collect();
        for e in &big {
            ensure!(!lib(galois_test(&e.tuple))?, "n = {n}: {:?} passes", e.tuple);
        }
        checked.push(big.len());
    }
    Ok(format!("no finite monodromy in rank > 1 ({checked:?} orbits checked for n = 5, 7)"))
}

fn level_weights(n: usize, level: i64) -> Vec<Weight> {
    let mut out = Vec::new();
    let mut rows = vec![0i64; n];
    loop {
        if rows.windows(2).all(|w| w[0] >= w[1]) {
            out.push(Weight::from_rows(&rows).unwrap());
        }
        let Some(pos) = rows[..n - 1].iter().position(|&x| x < level) else { break };
        rows[pos] += 1;
        rows[..pos].iter_mut().for_each(|x| *x = 0);
    }
    out
}

fn c9_strange_duality() -> Outcome {
    let mut bundles = Vec::new();
    for n in 2..=4 {
        for level in 1..=3 {
            let ws = level_weights(n, level);
            for a in &ws {
                for b in &ws {
                    for c in &ws {
                        let l = LineBundleData::new(n, 0, level, vec![a.clone(), b.clone(), c.clone()]).unwrap();
                        if l.grade() == 0 {
                            bundles.push(l);
                        }
                    }
                }
            }
        }
    }
    let total = bundles.len();
    let bad: Vec<String> = par::flat_map(Exec::Parallel, bundles, |l| {
        let dual = level_rank_dual(&l).and_then(|d| h0(&d));
        match (h0(&l), dual) {
            (Ok(a), Ok(b)) if a == b => vec![],
            (a, b) => vec![format!("{l:?}: {a:?} vs {b:?}")],
        }
    });
    ensure!(bad.is_empty(), "{} failures, first {}", bad.len(), bad[0]);
    Ok(format!("{total} grade-zero tuples agree"))
}

fn c10_dd_oracle() -> Outcome {
    let mut sizes = Vec::new();
    for n in 2..=4 {
        let dd: BTreeSet<Vec<AlcovePoint>> = lib(dd_vertex_enumeration(n, 3))?.into_iter().collect();
        let mut expected = trivial_vertices(n, 3);
        expected.extend(lib(f_vertices(n, 3))?.iter().map(|c| c.point.clone()));
        ensure!(dd == expected, "n = {n}: {} DD vertices vs {} expected", dd.len(), expected.len());
        sizes.push(dd.len());
    }
    let orbits = lib(f_vertex_orbits(4, 3))?;
    let big: Vec<_> = orbits.iter().filter(|o| o.level() > 1).collect();
    let a = point(&[(1, 2), (0, 1), (0, 1), (-1, 2)]);
    ensure!(big.len() == 1, "{} nontrivial orbits", big.len());
    let orbit = lib(symmetry_orbit(&big[0].representative.point))?;
    ensure!(orbit.contains(&vec![a; 3]), "orbit misses ((1/2,0,0,−1/2))³");
    Ok(format!("vertex counts {sizes:?} match; n = 4 orbit contains ((1/2,0,0,−1/2))³"))
}

fn c11_kz() -> Outcome {
    let cycles = [
        (lib(CycleData::from_sets(1, 2, 4, 0, &[[1, 3]; 3]))?, 2),
        (lib(CycleData::from_sets(2, 4, 8, 0, &[[1, 3, 4, 7]; 3]))?, 4),
        (lib(CycleData::from_sets(0, 3, 9, 0, &[&[2, 6, 9][..], &[3, 6, 9], &[3, 6, 9]]))?, 6),
    ];
    for (c, rank) in &cycles {
        let rep = lib(kz_match_report(c))?;
        ensure!(rep.kz_rank == *rank, "{c:?}: rank {}", rep.kz_rank);
        ensure!(rep.points.iter().all(|p| p.multiplicity_identity), "{c:?}: multiplicity identity fails");
        ensure!(rep.matches(), "{c:?}: {rep:?}");
    }
    Ok("ranks 2, 4, 6 match the strange duals pointwise".into())
}

fn c12_hypergeom() -> Outcome {
    let items = [
        (vec![q(1, 6), q(5, 6)], vec![q(0, 1), q(4, 6)]),
        (vec![q(1, 6), q(5, 6)], vec![q(0, 1), q(3, 6)]),
        (vec![q(1, 6), q(3, 6), q(5, 6)], vec![q(0, 1), q(2, 6), q(4, 6)]),
    ];
    for (alpha, beta) in items {
        let h = lib(HypergeomData::new(alpha, beta))?;
        ensure!(hypergeom_unitary(&h), "{h:?} not unitary");
        let rep = lib(classify(&lib(h.to_conj_classes(6))?))?;
        ensure!(rep.rigid_unitary && rep.finite_monodromy, "{h:?}: {rep:?}");
    }
    let e1_low = lib(HypergeomData::new(vec![q(3, 8), q(4, 8)], vec![q(0, 1), q(2, 8)]))?;
    ensure!(!hypergeom_unitary(&e1_low), "rank-2 reduction is unitary");
    let e1 = lib(HypergeomData::from_eigenvalues(8, &[7, 3, 1], &[6, 4, 0]))?;
    ensure!(e1.alpha == vec![q(6, 8), q(4, 8), q(0, 1)] && e1.beta == vec![q(1, 8), q(5, 8), q(7, 8)], "{e1:?}");
    ensure!(hypergeom_unitary(&e1), "rank-3 system not unitary");
    let low = lib(hypergeom_katz_lower(&e1))?;
    ensure!(low.rank() == 2 && hypergeom_unitary(&low), "lowered {low:?}");
    Ok("n = 6 items unitary and finite, rank-2 reduction fails, rank-3 lowers to unitary rank 2".into())
}

fn c13_properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut rings = 0;
    for n in 2..=7 {
        for r in 1..n {
            let ring = lib(GrassmannianRing::new(r, n))?;
            let basis = ring.basis();
            for _ in 0..200 {
                let mut pick = || lib(QClass::schubert(ring, basis[rng.gen_range(0..basis.len())].clone()));
                let (a, b, c) = (pick()?, pick()?, pick()?);
                let left = lib(quantum_product(&lib(quantum_product(&a, &b))?, &c))?;
                let right = lib(quantum_product(&a, &lib(quantum_product(&b, &c))?))?;
                ensure!(left.terms == right.terms, "Gr({r},{n}): associativity fails");
            }
            rings += 1;
        }
    }
    for _ in 0..10_000 {
        let (rows, cols) = (rng.gen_range(1..=8), rng.gen_range(1..=8));
        let mut parts: Vec<usize> = (0..rows).map(|_| rng.gen_range(0..=cols)).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let p = lib(BoxPartition::new(lib(Partition::new(parts))?, rows, cols))?;
        ensure!(transpose_in_box(&transpose_in_box(&p)) == p, "transpose of {p:?}");
        ensure!(complement_in_box(&complement_in_box(&p)) == p, "complement of {p:?}");
    }
    for n in 2..=9 {
        for r in 1..n {
            for idx in subsets(n, r) {
                let (s, ds) = shift_index(&idx);
                let (back, du) = unshift_index(&s);
                ensure!(back == idx && ds + du == 0, "shift round trip at {idx:?}");
            }
        }
    }
    for n in 2..=10usize {
        let units: Vec<i64> = (1..n as i64).filter(|m| m.gcd(&(n as i64)) == 1).collect();
        for _ in 0..50 {
            let w = fund(&(0..n - 1).map(|_| rng.gen_range(0..4)).collect::<Vec<_>>());
            for &m1 in &units {
                for &m2 in &units {
                    let lhs = lib(galois_tm(&lib(galois_tm(&w, m1))?, m2))?;
                    ensure!(lhs == lib(galois_tm(&w, (m1 * m2) % n as i64))?, "T_{m2}T_{m1} ≠ T_{{m1 m2}} for n = {n}");
                }
            }
        }
    }
    Ok(format!("associativity on {rings} rings × 200, 10⁴ box involutions, shifts, T_m group law"))
}

fn c14_rex() -> Outcome {
    let f = lib(FaceData::from_sets(0, 3, 9, 0, &[[3, 7, 8], [3, 6, 9], [3, 6, 9]]))?;
    let levi = LeviBundle {
        sub: LeviSide { rank: 3, deg_n: 0, level: 1, weights: vec![vec![1, 1, 0]; 3] },
        quot: LeviSide::trivial(6, 0, 3),
    };
    let got = lib(lib(induce(&levi, &f))?.to_line_bundle())?;
    let lam = fund(&[0, 0, 1, 0, 0, 0, 1, 1]);
    let mu = fund(&[0, 0, 1, 0, 0, 1, 0, 0]);
    let want = lib(LineBundleData::new(9, 0, 3, vec![lam, mu.clone(), mu]))?;
    ensure!(got == want, "induced {got:?}");
    let dec = lib(face_decompose(&got, &f))?;
    ensure!(dec.coefficients.iter().all(|c| *c == q(0, 1)) && dec.f2_part == want, "decomposition {dec:?}");
    Ok("(ω_8+ω_7+ω_3, ω_6+ω_3, ω_6+ω_3; level 3), pure f2 part".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 14] = [
        ("GW count of lines", c1_lines),
        ("GW vs Verlinde oracle", c2_oracle),
        ("divisor class, Gr(2,4)", c3_oldie_class),
        ("Gr(4,8) face and its ray", c4_thaddeus),
        ("rank-6 Gr(3,9) cycle", c5_wilson),
        ("Gr(k,3k−1) family", c6_ko),
        ("classification n ≤ 6", c7_small_n),
        ("Katz question n = 5, 7", c8_katz),
        ("numerical strange duality", c9_strange_duality),
        ("double description oracle", c10_dd_oracle),
        ("KZ local exponents", c11_kz),
        ("hypergeometric suite", c12_hypergeom),
        ("property suites", c13_properties),
        ("induction reconstruction", c14_rex),
    ];
    let results: Vec<(Outcome, Duration)> = std::thread::scope(|scope| {
        let handles: Vec<_> = criteria
            .iter()
            .map(|(_, f)| {
                scope.spawn(move || {
                    let start = Instant::now();
                    let out = std::panic::catch_unwind(f).unwrap_or_else(|e| {
                        let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
                        Err(format!("panicked: {}", msg.unwrap_or_default()))
                    });
                    (out, start.elapsed())
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("joined")).collect()
    });
    let mut failed = 0;
    for (i, ((name, _), (out, took))) in criteria.iter().zip(results).enumerate() {
        match out {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({:.2}s)", i + 1, took.as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} ({:.2}s)", i + 1, took.as_secs_f64());
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
