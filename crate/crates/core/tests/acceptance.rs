//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use holant_core::classes::{is_affine, is_m_hat, is_matchgate, is_product, TractableClass};
use holant_core::dichotomy::{classify_pl_csp, Category};
use holant_core::fkt::{count_pm_fkt, enumerate_pm, evaluate_matchgate_grid, realize_grid, PlanarGraph, WeightedEdge};
use holant_core::gen::{self, GenRng};
use holant_core::grid::{brute_force_csp, eval_affine_csp, eval_product_csp, vandermonde_interpolate, GridVertex, SignatureGrid};
use holant_core::holographic::transform_grid;
use holant_core::transform::hadamard;
use holant_core::{Scalar, Signature, SymmetricSignature};
use rand::Rng;
use rayon::prelude::*;

type Outcome = Result<String, String>;

fn sym(e: &[i64]) -> Signature {
    SymmetricSignature::from_ints(e).unwrap().to_signature()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn bits(f: &Signature, s: &str) -> Scalar {
    let b: Vec<u8> = s.bytes().map(|c| c - b'0').collect();
    f.at(&b).clone()
}

fn mgi_arity4() -> Outcome {
    let mut rng = gen::rng(0x4d47);
    let pool = gen::small_pool();
    let (mut yes, mut no) = (0, 0);
    for t in 0..500 {
        // half the draws are resampled until the identity holds so both
        // outcomes are exercised
        let want_identity = t % 2 == 0;
        let mut tries = 0;
        let (f, identity) = loop {
            let f = Signature::from_fn(4, |x| {
                if x.count_ones() % 2 == 1 || rng.random_bool(0.4) {
                    Scalar::zero()
                } else {
                    gen::pick(&mut rng, &pool)
                }
            })
            .unwrap();
            let d = bits(&f, "0000") * bits(&f, "1111") - bits(&f, "1100") * bits(&f, "0011")
                + bits(&f, "1010") * bits(&f, "0101")
                - bits(&f, "1001") * bits(&f, "0110");
            tries += 1;
            if !want_identity || d.is_zero() || tries > 1000 {
                break (f, d.is_zero());
            }
        };
        if identity {
            yes += 1;
        } else {
            no += 1;
        }
        ensure(is_matchgate(&f) == identity, || format!("disagreement on {f:?}"))?;
    }
    Ok(format!("500 signatures, {yes} satisfy the identity, {no} do not"))
}

fn has_parity(f: &Signature) -> bool {
    let odd = (0..1usize << f.arity()).filter(|x| x.count_ones() % 2 == 1);
    let even = (0..1usize << f.arity()).filter(|x| x.count_ones() % 2 == 0);
    odd.clone().all(|x| f.value(x).is_zero()) || even.clone().all(|x| f.value(x).is_zero())
}

fn small_matchgates_are_parity() -> Outcome {
    let vals = [Scalar::zero(), Scalar::one(), -Scalar::one()];
    let mut total = 0;
    for n in 0..=3usize {
        let len = 1usize << n;
        let count = 3usize.pow(len as u32);
        let bad = (0..count).into_par_iter().find_any(|&code| {
            let f = Signature::from_fn(n, |x| vals[code / 3usize.pow(x as u32) % 3].clone()).unwrap();
            is_matchgate(&f) != has_parity(&f)
        });
        ensure(bad.is_none(), || format!("arity {n}, code {bad:?}"))?;
        total += count;
    }
    Ok(format!("{total} signatures"))
}

/// Every `χ_{x ∈ S} i^{k + Q(x)}` with `S` a nonempty affine subspace and
/// `Q` of ℤ₄-linear part and even cross terms, encoded as exponents of `i`
/// plus one (0 for outside the support).
fn affine_representations(n: usize) -> HashSet<Vec<u8>> {
    let size = 1usize << n;
    let is_affine_set = |mask: u32| {
        let pts: Vec<usize> = (0..size).filter(|&x| mask >> x & 1 == 1).collect();
        pts.iter().all(|&a| pts.iter().all(|&b| pts.iter().all(|&c| mask >> (a ^ b ^ c) & 1 == 1)))
    };
    let supports: Vec<u32> = (1u32..1 << size).filter(|&m| is_affine_set(m)).collect();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let mut out = HashSet::new();
    for &s in &supports {
        for lin in 0..4usize.pow(n as u32) {
            for cross in 0..1usize << pairs.len() {
                for k in 0..4 {
                    let f: Vec<u8> = (0..size)
                        .map(|x| {
                            if s >> x & 1 == 0 {
                                return 0;
                            }
                            let bit = |v: usize| x >> (n - 1 - v) & 1;
                            let mut q = k;
                            for v in 0..n {
                                q += bit(v) * (lin / 4usize.pow(v as u32) % 4);
                            }
                            for (p, &(a, b)) in pairs.iter().enumerate() {
                                q += 2 * (cross >> p & 1) * bit(a) * bit(b);
                            }
                            (q % 4) as u8 + 1
                        })
                        .collect();
                    out.insert(f);
                }
            }
        }
    }
    out
}

fn affine_oracle() -> Outcome {
    let mut total = 0;
    for n in 0..=3usize {
        let reps = affine_representations(n);
        let len = 1usize << n;
        let count = 5usize.pow(len as u32);
        let bad = (0..count).into_par_iter().find_any(|&code| {
            let digits: Vec<u8> = (0..len).map(|x| (code / 5usize.pow(x as u32) % 5) as u8).collect();
            let f = Signature::from_fn(n, |x| match digits[x] {
                0 => Scalar::zero(),
                d => Scalar::i_pow(d as i64 - 1),
            })
            .unwrap();
            let expected = digits.iter().all(|&d| d == 0) || reps.contains(&digits);
            is_affine(&f) != expected
        });
        ensure(bad.is_none(), || format!("arity {n}, code {bad:?}"))?;
        total += count;
    }
    Ok(format!("{total} signatures"))
}

fn valiant_invariance() -> Outcome {
    let mut rng = gen::rng(0x7661);
    let pool = gen::small_pool();
    let mut nontrivial = 0;
    for _ in 0..100 {
        let grid = gen::random_bipartite_grid(&mut rng, 8, &pool).map_err(|e| e.to_string())?;
        let t = gen::random_invertible_transform(&mut rng);
        let moved = transform_grid(&grid, &t).map_err(|e| e.to_string())?;
        let lhs = grid.brute_force_holant().map_err(|e| e.to_string())?;
        let rhs = moved.brute_force_holant().map_err(|e| e.to_string())?;
        ensure(lhs == rhs, || format!("{lhs} != {rhs} under {t:?}"))?;
        if moved != grid {
            nontrivial += 1;
        }
    }
    Ok(format!("100 grids, {nontrivial} with changed signatures"))
}

fn k4() -> PlanarGraph {
    // center 0 inside the triangle 1, 2, 3
    let e = [(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (3, 1)];
    PlanarGraph::new(
        4,
        e.iter().map(|&(u, v)| WeightedEdge::unit(u, v)).collect(),
        vec![vec![0, 1, 2], vec![3, 0, 5], vec![4, 1, 3], vec![5, 2, 4]],
    )
    .unwrap()
}

fn fkt_correctness() -> Outcome {
    let check = |g: &PlanarGraph| -> Result<(), String> {
        let fkt = count_pm_fkt(g).map_err(|e| e.to_string())?;
        let brute = enumerate_pm(g.num_vertices(), g.edges()).map_err(|e| e.to_string())?;
        ensure(fkt == brute, || format!("{fkt} != {brute} on {g:?}"))
    };
    let mut graphs = 0;
    let m = gen::lattice_edge_count(2, 3);
    for mask in 0..1u32 << m {
        let g = gen::lattice_subgraph(2, 3, |k| mask >> k & 1 == 1);
        if g.is_connected() {
            check(&g.weighted(|_| Scalar::one()).unwrap())?;
            graphs += 1;
        }
    }
    let mut rng = gen::rng(0x666b);
    let pool = gen::weight_pool();
    let mut random = 0;
    while random < 400 {
        let (r, c) = [(2, 4), (2, 5), (3, 3)][random % 3];
        let g = gen::random_lattice_graph(&mut rng, r, c, 0.6);
        if !g.is_connected() {
            continue;
        }
        let weighted = g.weighted(|_| gen::pick(&mut rng, &pool)).unwrap();
        check(&weighted)?;
        random += 1;
    }
    let k4 = count_pm_fkt(&k4()).map_err(|e| e.to_string())?;
    ensure(k4 == Scalar::from_int(3), || format!("K4 gives {k4}"))?;
    let c4 = gen::lattice_subgraph(2, 2, |k| k != 1).weighted(|_| Scalar::one()).unwrap();
    ensure(c4.edges().len() == 4, || "C4 construction".into())?;
    let c4 = count_pm_fkt(&c4).map_err(|e| e.to_string())?;
    ensure(c4 == Scalar::from_int(2), || format!("C4 gives {c4}"))?;
    Ok(format!("{} graphs plus K4 = 3 and C4 = 2", graphs + random))
}

fn matchgate_pipeline() -> Outcome {
    let mut rng = gen::rng(0x6d67);
    for _ in 0..100 {
        let grid = gen::random_matchgate_grid(&mut rng, 3, 3, 12).map_err(|e| e.to_string())?;
        let r = realize_grid(&grid).map_err(|e| e.to_string())?;
        let fkt = evaluate_matchgate_grid(&grid, &r).map_err(|e| e.to_string())?;
        let brute = grid.brute_force_holant().map_err(|e| e.to_string())?;
        ensure(fkt == brute, || format!("{fkt} != {brute}"))?;
    }
    Ok("100 grids".into())
}

fn random_instances(
    seed: u64,
    sig: fn(&mut GenRng, usize) -> Signature,
    eval: fn(&holant_core::grid::CspInstance) -> holant_core::Result<Scalar>,
) -> Outcome {
    let mut rng = gen::rng(seed);
    let mut nonzero = 0;
    for _ in 0..200 {
        let n = rng.random_range(1..=16);
        let m = rng.random_range(1..=12);
        let inst = gen::random_csp(&mut rng, n, m, 3, sig).map_err(|e| e.to_string())?;
        let fast = eval(&inst).map_err(|e| e.to_string())?;
        let brute = brute_force_csp(&inst).map_err(|e| e.to_string())?;
        ensure(fast == brute, || format!("{fast} != {brute} on {inst:?}"))?;
        if !brute.is_zero() {
            nonzero += 1;
        }
    }
    Ok(format!("200 instances, {nonzero} with nonzero value"))
}

fn affine_evaluator() -> Outcome {
    random_instances(0x6166, gen::random_affine_signature, eval_affine_csp)
}

fn product_evaluator() -> Outcome {
    random_instances(0x7072, |r, k| gen::random_product_signature(r, k, &gen::small_pool()), eval_product_csp)
}

fn classifier_table() -> Outcome {
    let table: [(Vec<Signature>, Category); 4] = [
        (vec![Signature::equality(2).unwrap(), sym(&[1, 0, 1, 0])], Category::PTime),
        (vec![sym(&[0, 1, 1, 1])], Category::SharpPHard),
        (vec![sym(&[4, 2, 0, -2, -4])], Category::PlanarPTimeOnly),
        (vec![sym(&[1, 0]), sym(&[0, 1]), sym(&[0, 1, 0])], Category::PTime),
    ];
    let oracle = |class: TractableClass, f: &Signature| match class {
        TractableClass::Affine => is_affine(f),
        TractableClass::Product => is_product(f),
        TractableClass::MatchgateHat => is_m_hat(f),
        other => unreachable!("{other:?} is not tested for Pl-#CSP"),
    };
    for (set, want) in &table {
        let v = classify_pl_csp(set);
        ensure(v.category == *want, || format!("{set:?}: {:?}, expected {want:?}", v.category))?;
        for &class in &v.holding {
            ensure(set.iter().all(|f| oracle(class, f)), || format!("{set:?}: claimed {class:?} fails"))?;
        }
        for w in &v.witnesses {
            ensure(!oracle(w.class, &set[w.index]), || format!("{set:?}: witness for {:?} is a member", w.class))?;
        }
    }
    Ok("4 sets".into())
}

fn fixed_points() -> Outcome {
    let x = Signature::crossover();
    ensure(hadamard(&x) == x.scale(&Scalar::from_int(4)), || "H2 on the crossover".into())?;
    let d = sym(&[1, 0, 1, 0]).derivative(&sym(&[0, 1]), 1).map_err(|e| e.to_string())?;
    ensure(d == sym(&[0, 1, 0]), || format!("derivative gives {d:?}"))?;
    for x in [Scalar::from_int(2), Scalar::i()] {
        for k in 1..=5usize {
            let g = Signature::unary(Scalar::one(), x.clone());
            let d = Signature::equality(k + 1).unwrap().derivative_repeated(&g, k).map_err(|e| e.to_string())?;
            let want = Signature::unary(Scalar::one(), x.pow(k as i64).unwrap());
            ensure(d == want, || format!("k = {k}, x = {x}: {d:?}"))?;
        }
    }
    Ok("crossover, pinning, 10 repeated derivatives".into())
}

fn parity_shortcut() -> Outcome {
    let mut rng = gen::rng(0x4132);
    let pool = [Scalar::zero(), Scalar::one(), -Scalar::one(), Scalar::i(), -Scalar::i()];
    let mut found = 0;
    let mut attempts = 0;
    while found < 200 {
        attempts += 1;
        ensure(attempts < 2_000_000, || format!("only {found} samples"))?;
        let n = rng.random_range(1..=4);
        let f = gen::random_product_signature(&mut rng, n, &pool);
        if !has_parity(&hadamard(&f)) {
            continue;
        }
        found += 1;
        ensure(is_product(&f), || format!("generator left the class: {f:?}"))?;
        ensure(is_affine(&f), || format!("{f:?} is not affine"))?;
    }
    Ok(format!("200 signatures from {attempts} draws"))
}

fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, j| acc * (n - j) as i64 / (j + 1) as i64)
}

/// A star: the center carries entries `c_k / C(n, k)` and each of the `n`
/// leaves carries `[1, x]`, so the Holant is `Σ c_k x^k`.
fn planted_grid(coeffs: &[Scalar], x: &Scalar) -> SignatureGrid {
    let n = coeffs.len() - 1;
    let entries = coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| c.checked_div(&Scalar::from_int(binomial(n, k))).unwrap())
        .collect();
    let mut vertices = vec![GridVertex::new(SymmetricSignature::new(entries).unwrap().to_signature(), (0..n).collect())];
    vertices.extend((0..n).map(|e| GridVertex::new(Signature::unary(Scalar::one(), x.clone()), vec![e])));
    SignatureGrid::new(vertices, n, vec![]).unwrap()
}

fn interpolation_harness() -> Outcome {
    let mut rng = gen::rng(0x696e);
    let pool = gen::small_pool();
    let base = Scalar::from_int(2);
    for len in 1..=8usize {
        for _ in 0..3 {
            let coeffs: Vec<Scalar> = (0..len).map(|_| gen::pick(&mut rng, &pool)).collect();
            let xs: Vec<Scalar> = (1..=len as i64).map(|j| base.pow(j).unwrap()).collect();
            let ys = xs
                .iter()
                .map(|x| planted_grid(&coeffs, x).brute_force_holant())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| e.to_string())?;
            let got = vandermonde_interpolate(&xs, &ys).map_err(|e| e.to_string())?;
            ensure(got == coeffs, || format!("{got:?} != {coeffs:?}"))?;
        }
    }
    Ok("24 planted vectors of length 1 to 8".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, u64); 12] = [
        ("arity-4 MGI criterion", mgi_arity4, 1),
        ("arity <= 3 matchgate = parity", small_matchgates_are_parity, 10),
        ("affine oracle equivalence", affine_oracle, 60),
        ("Valiant invariance", valiant_invariance, 30),
        ("FKT correctness", fkt_correctness, 60),
        ("matchgate-grid pipeline", matchgate_pipeline, 60),
        ("affine evaluator", affine_evaluator, 60),
        ("product evaluator", product_evaluator, 60),
        ("classifier table", classifier_table, 5),
        ("fixed points and identities", fixed_points, 1),
        ("H2 parity on P implies A", parity_shortcut, 10),
        ("interpolation harness", interpolation_harness, 1),
    ];
    let mut failed = 0;
    for (name, run, budget) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let over = elapsed > Duration::from_secs(budget);
        match (&outcome, over) {
            (Ok(detail), false) => println!("PASS  {name}: {detail} ({elapsed:.2?})"),
            (Ok(detail), true) => {
                failed += 1;
                println!("FAIL  {name}: {detail}, but took {elapsed:.2?} (budget {budget} s)");
            }
            (Err(why), _) => {
                failed += 1;
                println!("FAIL  {name}: {why} ({elapsed:.2?})");
            }
        }
    }
    println!("{} of {} criteria passed", 12 - failed, 12);
    if failed > 0 {
        std::process::exit(1);
    }
}
