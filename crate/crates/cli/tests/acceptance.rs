//! End-to-end acceptance battery. Prints one PASS/FAIL line per criterion and
//! exits non-zero when any criterion fails.

use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rigiditylab::framework::{
    affine_span_dim, embed_real_as_complex, embed_s_valued, Configuration, Framework, Graph, SpaceDescriptor,
};
use rigiditylab::gram::{configuration_from_real_gmatrix, gmatrix_signature, gram, pi_k, GMatrix};
use rigiditylab::hyperbolic::{
    cone_to_minkowski_seeded, cone_verdict_transfer, hyperbolic_congruent, hyperbolic_witness, is_upper_coned,
    is_upper_cylindrical, minkowski_to_hyperbolic, pogorelov_preserves_cylindrical, sample_cylindrical_coned,
    sample_hyperbolic_framework,
};
use rigiditylab::io::{graph_to_json, hyperbolic_to_json};
use rigiditylab::linalg::{InertiaSignature, Matrix};
use rigiditylab::oracle::{enumerate_1d, enumerate_2d_heuristic, HeuristicOptions};
use rigiditylab::pogorelov::{
    build_noncongruent_equivalent_pair, complex_pogorelov, coordinate_swap, pogorelov, reflection_pair, FrameworkPair,
};
use rigiditylab::random::{derive_seed, random_orthogonal, random_rational_vector, GenericityPolicy, DEFAULT_BOUND};
use rigiditylab::rigidity::{ggr_test, sample_framework, VerdictKind};
use rigiditylab::scalar::{int, rational_to_f64, Field, Rational};

struct Check {
    ok: bool,
    detail: String,
}

impl Check {
    fn new(ok: bool, detail: impl Into<String>) -> Self {
        Self { ok, detail: detail.into() }
    }
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Check) -> (Check, Duration) {
    let start = Instant::now();
    let mut c = f();
    let took = start.elapsed();
    if let Some(limit) = limit {
        if took > limit {
            c.ok = false;
            c.detail = format!("{}; over time limit {:?}", c.detail, limit);
        }
    }
    (c, took)
}

fn plus_vertex(g: &Graph, neighbors: &[usize]) -> Graph {
    g.with_vertex(neighbors).expect("valid augmentation")
}

fn battery_2d() -> Vec<(&'static str, Graph)> {
    let k4 = Graph::complete(4);
    vec![
        ("K3", Graph::complete(3)),
        ("K4", k4.clone()),
        ("K5", Graph::complete(5)),
        ("K4+deg2", plus_vertex(&k4, &[0, 1])),
        ("K4+deg3", plus_vertex(&k4, &[0, 1, 2])),
        ("K4-e", Graph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap()),
        ("W4", Graph::wheel(4)),
        ("W5", Graph::wheel(5)),
        ("prism", Graph::triangular_prism()),
        ("K3,3", Graph::complete_bipartite(3, 3)),
        ("C4", Graph::cycle(4)),
        ("P3", Graph::path(3)),
    ]
}

fn battery_1d() -> Vec<(&'static str, Graph)> {
    vec![
        ("K2", Graph::complete(2)),
        ("P3", Graph::path(3)),
        ("P4", Graph::path(4)),
        ("C3", Graph::cycle(3)),
        ("C4", Graph::cycle(4)),
        ("K4", Graph::complete(4)),
        ("C3+pendant", plus_vertex(&Graph::cycle(3), &[0])),
    ]
}

fn criterion_1() -> Check {
    let policy = GenericityPolicy::default();
    let mut cases: Vec<(String, Graph, usize, VerdictKind)> = (1..=3)
        .map(|d| (format!("K{} d={d}", d + 2), Graph::complete(d + 2), d, VerdictKind::Ggr))
        .collect();
    cases.push(("K4+deg2 d=2".into(), plus_vertex(&Graph::complete(4), &[0, 1]), 2, VerdictKind::Ggf));
    cases.push(("K5+deg3 d=3".into(), plus_vertex(&Graph::complete(5), &[0, 1, 2]), 3, VerdictKind::Ggf));
    let mut bad = Vec::new();
    for (name, g, d, want) in &cases {
        let hits = (0..20u64).filter(|&seed| ggr_test(g, *d, Field::Real, seed, &policy).verdict == *want).count();
        if hits != 20 {
            bad.push(format!("{name}: {hits}/20"));
        }
    }
    Check::new(bad.is_empty(), if bad.is_empty() { "5 graphs x 20 seeds stable".into() } else { bad.join(", ") })
}

fn criterion_2() -> Check {
    let policy = GenericityPolicy::default();
    let mut cases: Vec<(String, Graph, usize)> = battery_2d().into_iter().map(|(n, g)| (n.to_string(), g, 2)).collect();
    cases.push(("K5 d=3".into(), Graph::complete(5), 3));
    cases.push(("K5+deg3 d=3".into(), plus_vertex(&Graph::complete(5), &[0, 1, 2]), 3));
    cases.push(("C4 d=1".into(), Graph::cycle(4), 1));
    let mut runs = 0;
    let mut bad = Vec::new();
    for (name, g, d) in &cases {
        for seed in 0..5u64 {
            let real = ggr_test(g, *d, Field::Real, seed, &policy);
            let cplx = ggr_test(g, *d, Field::Complex, seed, &policy);
            runs += 1;
            if real.is_globally_rigid() != cplx.is_globally_rigid() {
                bad.push(format!("{name} seed {seed}"));
            }
        }
    }
    Check::new(bad.is_empty(), format!("{} graphs, {runs} seeded runs, disagreements: {:?}", cases.len(), bad))
}

/// Literal averaging construction: `(a + f̃, a − f̃)` with `f̃` negated in the first `s` coordinates.
fn pogorelov_by_definition(rho: &Configuration<Rational>, sigma: &Configuration<Rational>, s: usize) -> [Vec<Vec<Rational>>; 2] {
    let half = Rational::new(1.into(), 2.into());
    let mut first = Vec::new();
    let mut second = Vec::new();
    for (p, q) in rho.points().iter().zip(sigma.points()) {
        let a: Vec<Rational> = p.iter().zip(q).map(|(x, y)| (x + y) * &half).collect();
        let f: Vec<Rational> =
            p.iter().zip(q).enumerate().map(|(i, (x, y))| if i < s { -(x - y) * &half } else { (x - y) * &half }).collect();
        first.push(a.iter().zip(&f).map(|(x, y)| x + y).collect());
        second.push(a.iter().zip(&f).map(|(x, y)| x - y).collect());
    }
    [first, second]
}

fn criterion_3() -> Check {
    let k4 = Graph::complete(4);
    let k5 = Graph::complete(5);
    let graphs2 = [plus_vertex(&k4, &[0, 1]), plus_vertex(&Graph::wheel(4), &[1, 2]), plus_vertex(&Graph::triangular_prism(), &[0, 3])];
    let graphs3 = [plus_vertex(&k5, &[0, 1, 2]), plus_vertex(&k5, &[0, 1])];
    let mut failures = Vec::new();
    let mut congruent_cases = 0;
    for k in 0..200u64 {
        let d = 2 + (k % 2) as usize;
        let s = 1 + ((k / 2) as usize % d);
        let g = if d == 2 { &graphs2[(k / 2) as usize % 3] } else { &graphs3[(k / 2) as usize % 2] };
        let pair = match build_noncongruent_equivalent_pair(g, d, k) {
            Ok(p) => p,
            Err(e) => {
                failures.push(format!("pair {k}: {e}"));
                continue;
            }
        };
        let out = pogorelov(&pair, s).unwrap();
        let want = pogorelov_by_definition(pair.first().config(), pair.second().config(), s);
        if out.first().config().points() != want[0].as_slice() || out.second().config().points() != want[1].as_slice() {
            failures.push(format!("pair {k}: map differs from averaging construction"));
        }
        if !out.is_equivalent().unwrap() {
            failures.push(format!("pair {k}: outputs not equivalent"));
        }
        if pair.is_congruent().unwrap() != out.is_congruent().unwrap() {
            failures.push(format!("pair {k}: congruence not preserved"));
        }
        if coordinate_swap(&pair, s).unwrap() != out {
            failures.push(format!("pair {k}: coordinate swap differs"));
        }
        let lifted = FrameworkPair::new(
            embed_real_as_complex(pair.first()).unwrap(),
            embed_real_as_complex(pair.second()).unwrap(),
            false,
        )
        .unwrap();
        let square = complex_pogorelov(&lifted, s).unwrap();
        if square.first() != &embed_s_valued(out.first()).unwrap() || square.second() != &embed_s_valued(out.second()).unwrap() {
            failures.push(format!("pair {k}: commuting square fails"));
        }

        // congruent input built from an isometry and translation
        if k % 4 == 0 {
            let rho = pair.first();
            let o = random_orthogonal(derive_seed(k, 0x0C), d, 0).unwrap();
            let tau = random_rational_vector(d, 1000, derive_seed(k, 0x7A));
            let moved = rho.config().transform(&o).translate(&tau);
            let cpair = FrameworkPair::new(rho.clone(), rho.with_config(moved).unwrap(), false).unwrap();
            let cout = pogorelov(&cpair, s).unwrap();
            congruent_cases += 1;
            if !cpair.is_congruent().unwrap() || !cout.is_congruent().unwrap() || !cout.is_equivalent().unwrap() {
                failures.push(format!("congruent input {k}: output not congruent"));
            }
        }
    }
    Check::new(
        failures.is_empty(),
        format!("200 builder pairs, {congruent_cases} congruent inputs, failures: {:?}", &failures[..failures.len().min(5)]),
    )
}

fn random_symmetric(side: usize, seed: u64) -> Matrix<Rational> {
    let raw = random_rational_vector(side * side, 50, seed);
    let mut m = Matrix::<Rational>::zeros(side, side);
    for t in 0..side {
        for u in t..side {
            m[(t, u)] = raw[t * side + u].clone();
            m[(u, t)] = raw[t * side + u].clone();
        }
    }
    m
}

fn random_config(v: usize, d: usize, seed: u64) -> Configuration<Rational> {
    Configuration::from_flat(&random_rational_vector(v * d, DEFAULT_BOUND, seed), d)
}

fn criterion_4() -> Check {
    let mut failures = Vec::new();

    // π_K is injective: m is recovered from π_K(m) alone.
    for k in 0..500u64 {
        let side = 1 + (k % 8) as usize;
        let m = if k == 0 { Matrix::zeros(side, side) } else { random_symmetric(side, derive_seed(k, 0x6B)) };
        let g = GMatrix::new(m.clone()).unwrap();
        let kk = pi_k(&g);
        let n = kk.rows();
        let half = Rational::new(1.into(), 2.into());
        let mut back = Matrix::<Rational>::zeros(side, side);
        for t in 0..side {
            for u in 0..side {
                back[(t, u)] = (kk[(0, t + 1)].clone() + kk[(0, u + 1)].clone() - kk[(t + 1, u + 1)].clone()) * &half;
            }
        }
        if n != side + 1 || back != m || (kk.is_zero() != m.is_zero()) {
            failures.push(format!("pi_K sample {k}"));
        }
    }

    // Congruence classification through g-matrices.
    let mut misclassified = 0;
    for k in 0..200u64 {
        let d = 1 + (k % 3) as usize;
        let s = (k / 3) as usize % (d + 1);
        let space = SpaceDescriptor::pseudo(d, s);
        let v = d + 2 + (k % 2) as usize;
        let p = random_config(v, d, derive_seed(k, 0xC1));
        let o = random_orthogonal(derive_seed(k, 0xC2), d, s).unwrap();
        let q = p.transform(&o).translate(&random_rational_vector(d, 1000, derive_seed(k, 0xC3)));
        if gram(&p, &space) != gram(&q, &space) {
            misclassified += 1;
        }
        let mut bumped = q.point(v - 1).to_vec();
        bumped[0] = bumped[0].clone() + Rational::new(1.into(), 7.into());
        let r = q.with_point(v - 1, bumped);
        if gram(&p, &space) == gram(&r, &space) {
            misclassified += 1;
        }
    }
    if misclassified > 0 {
        failures.push(format!("{misclassified} congruence misclassifications"));
    }

    // Signature laws and the real g-matrix round trip.
    let mut sig_checks = 0;
    for d in 1..=3usize {
        for s in 0..=d {
            for k in 0..100u64 {
                let v = d + 2 + (k % 3) as usize;
                let seed = derive_seed((d * 10 + s) as u64, k);
                let p = random_config(v, d, seed);
                if affine_span_dim(&p) != d {
                    continue;
                }
                let real = Framework::new(Graph::complete(v), p.clone(), SpaceDescriptor::pseudo(d, s)).unwrap();
                let c = embed_s_valued(&real).unwrap();
                let cg = gram(c.config(), &SpaceDescriptor::complex(d));
                let Some(real_entries) = cg.entries().as_real() else {
                    failures.push(format!("({d},{s}) sample {k}: complex g-matrix not real"));
                    continue;
                };
                let m = GMatrix::new(real_entries).unwrap();
                if m != gram(&p, &SpaceDescriptor::pseudo(d, s)) {
                    failures.push(format!("({d},{s}) sample {k}: pseudo and complex g-matrices differ"));
                }
                if gmatrix_signature(&m).unwrap() != InertiaSignature::new(s, d - s, v - 1 - d) {
                    failures.push(format!("({d},{s}) sample {k}: signature"));
                }
                let sc = configuration_from_real_gmatrix(&m, d).unwrap();
                if sc.gram() != m || sc.s != s || !sc.is_s_valued() || sc.rank_deficient {
                    failures.push(format!("({d},{s}) sample {k}: round trip"));
                }
                sig_checks += 1;
            }
        }
    }
    Check::new(
        failures.is_empty(),
        format!("500 pi_K samples, 400 congruence cases, {sig_checks} signature checks, failures: {:?}", &failures[..failures.len().min(5)]),
    )
}

fn criterion_5() -> Check {
    let policy = GenericityPolicy::default();
    let mut bad = Vec::new();
    let mut runs = 0;
    for (d, battery) in [(1, battery_1d()), (2, battery_2d())] {
        for (name, g) in battery {
            for seed in 0..3u64 {
                runs += 1;
                if !cone_verdict_transfer(&g, d, seed, &policy).agrees() {
                    bad.push(format!("{name} d={d} seed {seed}"));
                }
            }
        }
    }
    Check::new(bad.is_empty(), format!("{runs} transfers, disagreements: {bad:?}"))
}

fn criterion_6() -> Check {
    let g = plus_vertex(&Graph::complete(4), &[0, 1]);
    let mut failures = Vec::new();
    let (mut pair_cases, mut upper_cases) = (0, 0);
    for k in 0..50u64 {
        let h = sample_hyperbolic_framework(&g, 2, k, 1000);
        if h.points().iter().any(|p| p.scale_sq() != int(1)) {
            failures.push(format!("sample {k}: off the locus"));
        }
        match cone_to_minkowski_seeded(&h, derive_seed(k, 1), 1000) {
            Ok(m) => {
                if is_upper_cylindrical(&m) {
                    upper_cases += 1;
                    if !is_upper_coned(&m) {
                        failures.push(format!("sample {k}: cylindrical but not coned"));
                    }
                }
                match minkowski_to_hyperbolic(&m) {
                    Ok(back) if hyperbolic_congruent(&h, &back).unwrap_or(false) => {}
                    _ => failures.push(format!("sample {k}: round trip not congruent")),
                }
            }
            Err(e) => failures.push(format!("sample {k}: coning failed: {e}")),
        }

        let rho = sample_cylindrical_coned(&g, 2, derive_seed(k, 2), DEFAULT_BOUND);
        let mink = rho.with_space(SpaceDescriptor::minkowski(3)).unwrap();
        if is_upper_cylindrical(&mink) {
            upper_cases += 1;
            if !is_upper_coned(&mink) {
                failures.push(format!("sample {k}: cylindrical sample not coned"));
            }
        }
        if let Ok(pair) = reflection_pair(&rho, derive_seed(k, 3)) {
            if is_upper_cylindrical(pair.first()) && is_upper_cylindrical(pair.second()) {
                pair_cases += 1;
                match pogorelov_preserves_cylindrical(&pair) {
                    Ok((_, true)) => {}
                    _ => failures.push(format!("sample {k}: image not cylindrical")),
                }
            }
        }

        match hyperbolic_witness(&g, 2, derive_seed(k, 4), DEFAULT_BOUND) {
            Ok(w) if w.equivalent && !w.congruent => {}
            Ok(_) => failures.push(format!("witness {k}: not an equivalent non-congruent pair")),
            Err(e) => failures.push(format!("witness {k}: {e}")),
        }
    }
    if pair_cases == 0 || upper_cases == 0 {
        failures.push("no cylindrical cases exercised".into());
    }
    Check::new(
        failures.is_empty(),
        format!(
            "50 frameworks, {upper_cases} cylindrical, {pair_cases} cylindrical pairs, failures: {:?}",
            &failures[..failures.len().min(5)]
        ),
    )
}

fn criterion_7() -> Check {
    let mut failures = Vec::new();
    for (name, g, want) in [("P3", Graph::path(3), 2), ("P4", Graph::path(4), 4), ("C3", Graph::cycle(3), 1)] {
        let base = sample_framework::<Rational>(&g, SpaceDescriptor::euclidean(1), 5, DEFAULT_BOUND);
        let got = enumerate_1d(&g, base.config()).unwrap().classes();
        if got != want {
            failures.push(format!("{name}: {got} classes, want {want}"));
        }
    }
    for (name, g, want) in [("K4", Graph::complete(4), 1), ("K4+deg2", plus_vertex(&Graph::complete(4), &[0, 1]), 2)] {
        let base = sample_framework::<Rational>(&g, SpaceDescriptor::euclidean(2), 11, DEFAULT_BOUND);
        let m: Vec<f64> = rigiditylab::framework::edge_measurements(&base).iter().map(rational_to_f64).collect();
        for reseed in 0..5u64 {
            let opts = HeuristicOptions { seed: reseed, ..Default::default() };
            let rs = enumerate_2d_heuristic(&g, &m, &opts).unwrap();
            if rs.classes() != want || rs.residual_max.map_or(true, |r| r > 1e-8) {
                failures.push(format!("{name} reseed {reseed}: {} classes, residual {:?}", rs.classes(), rs.residual_max));
            }
        }
    }
    Check::new(failures.is_empty(), if failures.is_empty() { "1D exact 2/4/1, planar 1/2 over 5 reseedings".into() } else { failures.join(", ") })
}

fn write_json(dir: &Path, name: &str, value: serde_json::Value) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, serde_json::to_string(&value).unwrap()).unwrap();
    path
}

fn criterion_8() -> Check {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("acceptance-determinism");
    std::fs::create_dir_all(&dir).unwrap();
    let k4 = Graph::complete(4);
    let k4p = plus_vertex(&k4, &[0, 1]);
    let k4_path = write_json(&dir, "k4.json", graph_to_json(&k4));
    let k4p_path = write_json(&dir, "k4p.json", graph_to_json(&k4p));
    let p4_path = write_json(&dir, "p4.json", graph_to_json(&Graph::path(4)));
    let hyp_path = write_json(&dir, "hyp.json", hyperbolic_to_json(&sample_hyperbolic_framework(&k4p, 2, 3, 1000)));
    let p = |p: &PathBuf| p.display().to_string();
    let runs: Vec<Vec<String>> = vec![
        vec!["analyze".into(), p(&k4_path), "--d".into(), "2".into()],
        vec!["analyze".into(), p(&k4p_path), "--d".into(), "2".into(), "--space".into(), "pseudo".into(), "--s".into(), "1".into(), "--witness".into()],
        vec!["analyze".into(), p(&k4p_path), "--d".into(), "2".into(), "--space".into(), "hyperbolic".into(), "--witness".into()],
        vec!["build-pair".into(), p(&k4p_path), "--d".into(), "2".into(), "--seed".into(), "4".into()],
        vec!["enumerate".into(), p(&k4p_path), "--d".into(), "2".into(), "--mode".into(), "float".into(), "--starts".into(), "300".into()],
        vec!["enumerate".into(), p(&p4_path), "--d".into(), "1".into()],
        vec!["transfer".into(), p(&hyp_path)],
    ];
    let bin = env!("CARGO_BIN_EXE_rigiditylab");
    let mut failures = Vec::new();
    for args in &runs {
        let outs: Vec<_> = (0..2).map(|_| Command::new(bin).args(args).env_remove("RIGIDITYLAB_SEED").output().unwrap()).collect();
        if outs[0].status.code().map_or(true, |c| c >= 2) {
            failures.push(format!("{}: exit {:?}", args[0], outs[0].status.code()));
        }
        if outs[0].stdout != outs[1].stdout || outs[0].status.code() != outs[1].status.code() || outs[0].stdout.is_empty() {
            failures.push(format!("{} {}: output differs between runs", args[0], args[1]));
        }
    }
    Check::new(failures.is_empty(), format!("{} commands run twice, failures: {failures:?}", runs.len()))
}

fn main() -> ExitCode {
    let criteria: Vec<(&str, Option<Duration>, fn() -> Check)> = vec![
        ("1 GGR battery", Some(Duration::from_secs(60)), criterion_1),
        ("2 real/complex agreement", None, criterion_2),
        ("3 Pogorelov suite", Some(Duration::from_secs(30)), criterion_3),
        ("4 g-matrix suite", None, criterion_4),
        ("5 cone transfer", None, criterion_5),
        ("6 hyperbolic suite", None, criterion_6),
        ("7 parity", None, criterion_7),
        ("8 determinism", None, criterion_8),
    ];
    let mut all = true;
    for (name, limit, f) in criteria {
        let (c, took) = timed(limit, f);
        all &= c.ok;
        println!("{} criterion {name} ({:.1}s): {}", if c.ok { "PASS" } else { "FAIL" }, took.as_secs_f64(), c.detail);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
