//! Acceptance criteria, one PASS/FAIL line each.

use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use subdiv::analysis::{
    degree_of_generation, degree_of_precision, holder_regularity, smoothing_factorization,
    DEFAULT_MAX_DEGREE,
};
use subdiv::conversion::{convert_even, convert_odd, convert_via_symbol, Parity};
use subdiv::numeric::{rat, LaurentPolynomial, Rational};
use subdiv::refinement::{refine_once, Polygon, Topology};
use subdiv::scheme::catalog::builtin_pairs;
use subdiv::scheme::{Catalog, Mask, SubdivisionScheme};
use subdiv::verify::{DEGREE_TABLE, HOLDER_TABLE, HOLDER_TOLERANCE};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn get(name: &str) -> SubdivisionScheme {
    Catalog::builtin().get(name).expect("catalog entry")
}

fn rats(v: &[(i64, i64)]) -> Vec<Rational> {
    v.iter().map(|&(n, d)| rat(n, d)).collect()
}

fn parse(v: &[&str]) -> Vec<Rational> {
    v.iter().map(|t| t.parse().unwrap()).collect()
}

/// Trimmed weights of the rules for phases -2, -1, 0, 1.
fn rules(s: &SubdivisionScheme) -> Vec<Vec<Rational>> {
    s.stencils()
        .iter()
        .map(|st| st.trimmed_weights().to_vec())
        .collect()
}

fn published_rules(outer: Vec<Rational>, inner: Vec<Rational>) -> Vec<Vec<Rational>> {
    let rev = |v: &Vec<Rational>| v.iter().rev().cloned().collect::<Vec<_>>();
    vec![outer.clone(), rev(&outer), inner.clone(), rev(&inner)]
}

fn criterion_1() -> Check {
    // Two tables in full, first and last entries of each row for the rest.
    let chaikin = published_rules(rats(&[(3, 16), (3, 4), (1, 16)]), rats(&[(5, 8), (3, 8)]));
    let four = published_rules(
        parse(&["241/36864", "1189/4608", "1209/2048", "83/576", "37/36864"]),
        parse(&[
            "3/16384",
            "9733/147456",
            "38119/73728",
            "3213/8192",
            "3623/147456",
            "1/147456",
        ]),
    );
    let corners: [(&str, bool, [&str; 4]); 5] = [
        (
            "binary-siddiqi-6pt",
            false,
            [
                "27/1677721600",
                "1/15099494400",
                "37199/7549747200",
                "1681/7549747200",
            ],
        ),
        (
            "binary-siddiqi-8pt",
            true,
            [
                "698627/852336259891200",
                "239/20293720473600",
                "27/84181359001600",
                "1/6818690079129600",
            ],
        ),
        (
            "binary-binomial-10pt",
            false,
            [
                "165125675/1125899906842624",
                "147744025/1125899906842624",
                "-879424975/562949953421312",
                "-759578105/562949953421312",
            ],
        ),
        (
            "binary-siddiqi-10pt",
            false,
            [
                "3/1379227385882214400",
                "1/9049110878773208678400",
                "213788633/4524555439386604339200",
                "986399/4524555439386604339200",
            ],
        ),
        (
            "binary-siddiqi-12pt",
            true,
            [
                "170185003/143012887031060669399040000",
                "2450263/1401526292904394560110592000",
                "27/4272294750508747325440000",
                "1/28030525858087891202211840000",
            ],
        ),
    ];
    let mut slowest = Duration::ZERO;
    let mut timed = |f: &dyn Fn() -> Result<SubdivisionScheme, String>| {
        let t = Instant::now();
        let r = f();
        slowest = slowest.max(t.elapsed());
        r
    };

    let q = timed(&|| {
        convert_odd(&get("binary-chaikin-2pt"), None)
            .map(|r| r.quaternary)
            .map_err(|e| e.to_string())
    })?;
    ensure(rules(&q) == chaikin, || {
        "2-point conversion differs from its table".into()
    })?;
    let q = timed(&|| {
        convert_even(&get("binary-siddiqi-4pt"), None)
            .map(|r| r.quaternary)
            .map_err(|e| e.to_string())
    })?;
    ensure(rules(&q) == four, || {
        "4-point conversion differs from its table".into()
    })?;

    let pairs = builtin_pairs();
    for (binary, even, corner) in corners {
        let b = get(binary);
        let q = timed(&|| {
            let r = if even {
                convert_even(&b, None)
            } else {
                convert_odd(&b, None)
            };
            r.map(|r| r.quaternary).map_err(|e| e.to_string())
        })?;
        let table = get(pairs.iter().find(|p| p.0 == binary).unwrap().1);
        ensure(rules(&q) == rules(&table), || {
            format!("{binary}: conversion differs from its table")
        })?;
        let r = rules(&q);
        let expect = parse(&corner);
        let got = [
            &r[0][0],
            r[0].last().unwrap(),
            &r[2][0],
            r[2].last().unwrap(),
        ];
        ensure(got.iter().zip(&expect).all(|(a, b)| *a == b), || {
            format!("{binary}: row ends {got:?} expected {expect:?}")
        })?;
    }
    ensure(slowest < Duration::from_secs(1), || {
        format!("slowest conversion took {slowest:?}")
    })?;
    Ok(format!("7 conversions exact, slowest {slowest:.2?}"))
}

fn random_rational(rng: &mut impl Rng) -> Rational {
    let n: i64 = rng.gen_range(-1_000_000..=1_000_000);
    let d: i64 = rng.gen_range(1..=1_000_000);
    rat(n, d)
}

fn random_dual_scheme(rng: &mut impl Rng, count: usize) -> SubdivisionScheme {
    let mut w: Vec<Rational> = (0..count).map(|_| random_rational(rng)).collect();
    while w[0].is_zero() {
        w[0] = random_rational(rng);
    }
    SubdivisionScheme::new("random", "fuzz", Mask::from_dual_weights(&w).unwrap())
}

fn criterion_2() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut schemes: Vec<SubdivisionScheme> = builtin_pairs().iter().map(|(b, _)| get(b)).collect();
    let counts = [4, 8, 12, 2, 6, 10, 14];
    for k in 0..105 {
        schemes.push(random_dual_scheme(&mut rng, counts[k % counts.len()]));
    }
    for s in &schemes {
        let count = s.mask.dual_weights().unwrap().len();
        let theorem = match Parity::of_count(count).unwrap() {
            Parity::Even(_) => convert_even(s, None),
            Parity::Odd(_) => convert_odd(s, None),
        }
        .map_err(|e| e.to_string())?;
        let symbol = convert_via_symbol(s).map_err(|e| e.to_string())?;
        ensure(theorem.quaternary.mask == symbol.mask, || {
            format!(
                "{} ({count} weights): closed form differs from symbol product",
                s.name
            )
        })?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(10), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!("{} masks agree, {elapsed:.2?}", schemes.len()))
}

fn random_polygon(rng: &mut impl Rng) -> Polygon {
    let n = rng.gen_range(3..=12);
    let points = (0..n)
        .map(|_| {
            (0..2)
                .map(|_| rat(rng.gen_range(-50..=50), rng.gen_range(1..=9)))
                .collect()
        })
        .collect();
    Polygon::new(points, Topology::Closed).unwrap()
}

fn criterion_3() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut count = 0;
    for (b, q) in builtin_pairs() {
        let (b, q) = (get(b), get(q));
        for _ in 0..20 {
            let p = random_polygon(&mut rng);
            let two = refine_once(&refine_once(&p, &b).unwrap(), &b).unwrap();
            let one = refine_once(&p, &q).unwrap();
            ensure(one == two, || {
                format!(
                    "{} on {} points: one quaternary step differs",
                    q.name,
                    p.len()
                )
            })?;
            count += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(10), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "{count} polygons agree point for point, {elapsed:.2?}"
    ))
}

fn criterion_4() -> Check {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for (b, q, rb, rq) in HOLDER_TABLE {
        for (name, published) in [(b, rb), (q, rq)] {
            let r = holder_regularity(&get(name)).map_err(|e| e.to_string())?;
            ensure(r.r_lower <= r.r_mid && r.r_mid <= r.r_upper, || {
                format!(
                    "{name}: bounds out of order {} {} {}",
                    r.r_lower, r.r_mid, r.r_upper
                )
            })?;
            let delta = (r.r_mid - published).abs();
            worst = worst.max(delta);
            ensure(delta <= HOLDER_TOLERANCE, || {
                format!(
                    "{name}: r_mid {} vs {published} (|delta| {delta:.3e})",
                    r.r_mid
                )
            })?;
        }
    }
    let chaikin = holder_regularity(&get("binary-chaikin-2pt")).map_err(|e| e.to_string())?;
    ensure(chaikin.r_lower == 2.0 && chaikin.r_upper == 2.0, || {
        "2-point bounds not exactly 2".into()
    })?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(30), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "12 midpoints within {HOLDER_TOLERANCE} (largest |delta| {worst:.2e}, spectral-norm upper bound), {elapsed:.2?}"
    ))
}

fn sorted(mut v: Vec<Rational>) -> Vec<Rational> {
    v.sort();
    v
}

fn criterion_5() -> Check {
    let four = get("binary-siddiqi-4pt");
    let (p, nu) = smoothing_factorization(&four.mask.symbol(), 2);
    ensure(p == 5, || format!("4-point p = {p}"))?;
    ensure(
        sorted(nu.coefficients().to_vec()) == sorted(rats(&[(1, 12), (11, 6), (1, 12)])),
        || format!("4-point nu = {nu}"),
    )?;
    let five = get("quat-5pt");
    let (p, nu) = smoothing_factorization(&five.mask.symbol(), 4);
    ensure(p == 5, || format!("5-point p = {p}"))?;
    let expect = rats(&[
        (1, 144),
        (11, 72),
        (23, 144),
        (121, 36),
        (23, 144),
        (11, 72),
        (1, 144),
    ]);
    ensure(sorted(nu.coefficients().to_vec()) == sorted(expect), || {
        format!("5-point nu = {nu}")
    })?;
    Ok("p = 5 and remainder coefficients exact for both".into())
}

fn criterion_6() -> Check {
    let start = Instant::now();
    for (name, dop, dog) in DEGREE_TABLE {
        let s = get(name);
        let r = degree_of_precision(&s, DEFAULT_MAX_DEGREE).map_err(|e| e.to_string())?;
        ensure(
            r.degree_of_precision == dop && r.degree_of_generation == dog,
            || {
                format!(
                    "{name}: ({}, {}) expected ({dop}, {dog})",
                    r.degree_of_precision, r.degree_of_generation
                )
            },
        )?;
        ensure(degree_of_generation(&s) == dog, || {
            format!("{name}: generation mismatch")
        })?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(30), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!("14 schemes match, {elapsed:.2?}"))
}

fn affine(p: &Polygon, a: [[i64; 2]; 2], t: [i64; 2]) -> Polygon {
    let points = p
        .points()
        .iter()
        .map(|x| {
            (0..2)
                .map(|i| {
                    Rational::from(a[i][0]) * &x[0]
                        + Rational::from(a[i][1]) * &x[1]
                        + Rational::from(t[i])
                })
                .collect()
        })
        .collect();
    Polygon::new(points, p.topology()).unwrap()
}

fn random_laurent(rng: &mut impl Rng) -> LaurentPolynomial {
    let len = rng.gen_range(1..=6);
    let mut c: Vec<Rational> = (0..len)
        .map(|_| rat(rng.gen_range(-20..=20), rng.gen_range(1..=12)))
        .collect();
    if c[0].is_zero() {
        c[0] = Rational::one();
    }
    LaurentPolynomial::new(rng.gen_range(-4..=4), c)
}

fn criterion_7() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let cat = Catalog::builtin();
    for s in cat.iter() {
        let check = s.check_convergence_condition();
        ensure(check.sums.iter().all(|(_, v)| v.is_one()), || {
            format!("{}: coset sums {:?}", s.name, check.sums)
        })?;
    }

    let schemes: Vec<SubdivisionScheme> = cat.iter().cloned().collect();
    for k in 0..20 {
        let s = &schemes[k % schemes.len()];
        let a = [
            [rng.gen_range(-5..=5), rng.gen_range(-5..=5)],
            [rng.gen_range(-5..=5), rng.gen_range(-5..=5)],
        ];
        let t = [rng.gen_range(-9..=9), rng.gen_range(-9..=9)];
        let p = random_polygon(&mut rng);
        let lhs = refine_once(&affine(&p, a, t), s).unwrap();
        let rhs = affine(&refine_once(&p, s).unwrap(), a, t);
        ensure(lhs == rhs, || {
            format!("{}: refinement does not commute with {a:?} + {t:?}", s.name)
        })?;
    }

    let mut binaries: Vec<SubdivisionScheme> =
        builtin_pairs().iter().map(|(b, _)| get(b)).collect();
    for count in [2, 4, 6, 8, 10, 12, 14] {
        binaries.push(random_dual_scheme(&mut rng, count));
    }
    for b in &binaries {
        ensure(b.mask.is_palindromic(), || {
            format!("{} not palindromic", b.name)
        })?;
        let q = convert_via_symbol(b).map_err(|e| e.to_string())?;
        ensure(q.mask.is_palindromic(), || {
            format!("{}: conversion lost symmetry", b.name)
        })?;
    }

    for _ in 0..500 {
        let a = random_laurent(&mut rng);
        let b = random_laurent(&mut rng);
        let q = a.multiply(&b).try_divide(&b);
        ensure(q.as_ref() == Some(&a), || {
            format!("({a}) * ({b}) / ({b}) gave {q:?}")
        })?;
    }
    Ok("coset sums, 20 affine maps, symmetry under conversion, 500 division round trips".into())
}

fn criterion_8() -> Check {
    let bin = env!("CARGO_BIN_EXE_subdiv");
    let verify = Command::new(bin)
        .arg("verify")
        .output()
        .map_err(|e| e.to_string())?;
    ensure(verify.status.success(), || {
        format!(
            "verify exited {:?}:\n{}",
            verify.status.code(),
            String::from_utf8_lossy(&verify.stdout)
        )
    })?;

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let csv = dir.path().join("square.csv");
    let svg = dir.path().join("square.svg");
    std::fs::write(&csv, "closed\n0,0\n1,0\n1,1\n0,1\n").unwrap();
    let plot = Command::new(bin)
        .args([
            "plot",
            "--scheme",
            "binary-chaikin-2pt",
            "--steps",
            "2",
            "--in",
        ])
        .arg(&csv)
        .arg("--out")
        .arg(&svg)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(plot.status.success(), || {
        String::from_utf8_lossy(&plot.stderr).into_owned()
    })?;
    let text = std::fs::read_to_string(&svg).map_err(|e| e.to_string())?;
    let doc =
        roxmltree::Document::parse(&text).map_err(|e| format!("SVG is not well-formed: {e}"))?;
    let counts: Vec<usize> = doc
        .descendants()
        .filter(|n| n.has_tag_name("polyline"))
        .map(|n| {
            let pts: Vec<&str> = n
                .attribute("points")
                .unwrap_or("")
                .split_whitespace()
                .collect();
            // Closed outlines repeat their first vertex.
            if pts.len() > 1 && pts.first() == pts.last() {
                pts.len() - 1
            } else {
                pts.len()
            }
        })
        .collect();
    ensure(counts == [4, 8, 16], || {
        format!("polyline vertex counts {counts:?}")
    })?;
    Ok("verify exits 0; plot gives 3 polylines of 4, 8, 16 vertices".into())
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("conversion exactness", criterion_1),
        ("oracle equivalence", criterion_2),
        ("two-step equivalence", criterion_3),
        ("regularity midpoints", criterion_4),
        ("smoothing factorization", criterion_5),
        ("degree table", criterion_6),
        ("property suites", criterion_7),
        ("command line", criterion_8),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {detail}", k + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
