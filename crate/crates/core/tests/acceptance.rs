//! Acceptance criteria 1-14. Each test prints one `PASS`/`FAIL` line per
//! criterion plus the individual checks, then fails if any check failed.

use neutrostat::descriptive::{
    freq_table, mean_nn, mean_set, median_nn, median_set, quartiles, stddev_nn, stddev_set, wrong_obs_enumerate,
    Dataset, NNDataset, QuartileRule,
};
use neutrostat::distributions::{
    nbinomial_pmf, nbinomial_via_trinomial, nnormal_sigma_band, normalize_triplet, BinomialSpec, NormalSpec,
};
use neutrostat::inference::{
    ci_mean_t, ci_mean_z, ci_proportion, p_decision, p_value, phi, sample_size_mean, z_decision, z_test_stat,
    Alternative, CriticalTable, Level, Spread, TRowKey, Verdict,
};
use neutrostat::neutro_num::{complex_nth_root, complex_sqrt, nn_poly_eval, NeutroQuadratic};
use neutrostat::regression::{
    correlation, coverage_check, ls_fit, nss_resid_midpoint, nss_to, predict, r_squared, residuals, LinearModel,
    SetPoint,
};
use neutrostat::{Error, NeutroNumber, SetValue};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Criterion {
    id: u32,
    title: &'static str,
    checks: Vec<(String, bool)>,
}

impl Criterion {
    fn new(id: u32, title: &'static str) -> Self {
        Criterion {
            id,
            title,
            checks: vec![],
        }
    }

    fn check(&mut self, label: impl Into<String>, ok: bool) {
        self.checks.push((label.into(), ok));
    }

    fn close(&mut self, label: &str, got: f64, want: f64, tol: f64) {
        self.check(
            format!("{label}: got {got:.6}, want {want} ± {tol}"),
            (got - want).abs() <= tol,
        );
    }

    fn finish(self) {
        let ok = self.checks.iter().all(|c| c.1);
        println!(
            "criterion {:>2} {}: {}",
            self.id,
            if ok { "PASS" } else { "FAIL" },
            self.title
        );
        for (label, pass) in &self.checks {
            println!("    [{}] {label}", if *pass { "ok" } else { "FAIL" });
        }
        assert!(ok, "criterion {} failed", self.id);
    }
}

fn sv(s: &str) -> SetValue {
    s.parse().unwrap()
}

fn ds(items: &[&str]) -> Dataset {
    Dataset::new(items.iter().map(|s| sv(s)).collect(), "").unwrap()
}

fn nn(a: f64, b: f64) -> NeutroNumber {
    NeutroNumber::new(a, b)
}

fn has_root(roots: &[NeutroNumber], want: NeutroNumber, tol: f64) -> bool {
    roots.iter().any(|r| r.approx_eq(&want, tol))
}

#[test]
fn criterion_01_neutro_number_statistics() {
    let mut c = Criterion::new(1, "a+bI mean, median, stddev");
    let d = NNDataset::new(vec![nn(-2.0, -4.0), nn(-1.0, 0.0), nn(3.0, 5.0), nn(6.0, 7.0)]).unwrap();
    c.check("mean = 1.5+2I", mean_nn(&d) == nn(1.5, 2.0));
    c.check("median = 1+2.5I", median_nn(&d) == nn(1.0, 2.5));
    let s = stddev_nn(&d).unwrap();
    c.close("stddev determinate part", s.a, 3.20, 0.005);
    c.close("stddev I coefficient", s.b, 0.64, 0.005);
    c.finish();
}

#[test]
fn criterion_02_division() {
    let mut c = Criterion::new(2, "a+bI division");
    c.check(
        "(2+3I)/(1+I) = 2+0.5I",
        nn(2.0, 3.0).div(nn(1.0, 1.0)) == Ok(nn(2.0, 0.5)),
    );
    c.check(
        "(2+3I)/(8+12I) = 0.25+0I",
        nn(2.0, 3.0).div(nn(8.0, 12.0)) == Ok(nn(0.25, 0.0)),
    );
    c.check(
        "(2+3I)/(1-I) undefined",
        matches!(nn(2.0, 3.0).div(nn(1.0, -1.0)), Err(Error::UndefinedDivision { .. })),
    );
    c.check(
        "I/I undefined",
        matches!(nn(0.0, 1.0).div(nn(0.0, 1.0)), Err(Error::UndefinedDivision { .. })),
    );
    c.finish();
}

#[test]
fn criterion_03_roots() {
    let mut c = Criterion::new(3, "square and cube roots");
    let roots = nn(9.0, 7.0).sqrt_all().unwrap();
    let want = [nn(3.0, 1.0), nn(3.0, -7.0), nn(-3.0, -1.0), nn(-3.0, 7.0)];
    c.check(
        format!("sqrt(9+7I) has exactly the four pairs, got {roots:?}"),
        roots.len() == 4 && want.iter().all(|w| roots.contains(w)),
    );
    let cs = complex_sqrt(Complex64::new(3.0, -4.0));
    let target = Complex64::new(2.0, -1.0);
    c.check(
        "complex sqrt(3-4i) = ±(2-i)",
        cs.len() == 2 && cs.iter().any(|z| (z - target).norm() < 1e-9) && cs.iter().any(|z| (z + target).norm() < 1e-9),
    );
    let cube = complex_nth_root(Complex64::new(0.0, 1.0), 3).unwrap();
    c.check(
        "cube roots of i contain -i",
        cube.iter().any(|z| (z - Complex64::new(0.0, -1.0)).norm() < 1e-9),
    );
    c.finish();
}

#[test]
fn criterion_04_quadratic() {
    let mut c = Criterion::new(4, "neutrosophic quadratic");
    let q = NeutroQuadratic::new(nn(6.0, 0.0), nn(10.0, -1.0), nn(0.0, 3.0)).unwrap();
    let roots = q.solve().unwrap();
    let want = [
        nn(0.0, -0.5),
        nn(-5.0 / 3.0, 2.0 / 3.0),
        nn(0.0, -1.0),
        nn(-10.0 / 6.0, 7.0 / 6.0),
    ];
    c.check(format!("four roots, got {}", roots.len()), roots.len() == 4);
    for w in want {
        c.check(format!("root {w}"), has_root(&roots, w, 1e-9));
    }
    let fs = q.factorings().unwrap();
    c.check(format!("exactly 2 factorings, got {}", fs.len()), fs.len() == 2);
    for f in &fs {
        let e = f.expand();
        c.check(
            "factoring expands back",
            e.iter().zip(q.coeffs()).all(|(x, y)| x.approx_eq(&y, 1e-9)),
        );
    }
    for r in &roots {
        c.check(
            format!("p({r}) = 0"),
            nn_poly_eval(&q.coeffs(), *r).approx_eq(&nn(0.0, 0.0), 1e-9),
        );
    }
    c.finish();
}

#[test]
fn criterion_05_interval_descriptive() {
    let mut c = Criterion::new(5, "interval median, mean, stddev");
    let d = ds(&["[6,6]", "[2,5]", "[30,30]", "[18,24]"]);
    let med = median_set(&d);
    c.check(format!("median [16,17.5], got {med}"), med == sv("[16,17.5]"));
    c.check("mean [14,16.25]", mean_set(&d) == sv("[14,16.25]"));
    let s = stddev_set(&d);
    c.check(
        format!("stddev lower within 1% of 9.20163, got {}", s.infimum()),
        (s.infimum() - 9.20163).abs() <= 0.01 * 9.20163,
    );
    c.check(
        format!("stddev upper within 1% of 12.8754, got {}", s.supremum()),
        (s.supremum() - 12.8754).abs() <= 0.01 * 12.8754,
    );
    c.finish();
}

#[test]
fn criterion_06_quartiles() {
    let mut c = Criterion::new(6, "quartiles of the 12-observation sample");
    let d = ds(&[
        "1",
        "(2,3)",
        "{4,6}",
        "5",
        "[7,10]",
        "[7,11]",
        "9",
        "12",
        "14",
        "[14,15]",
        "20",
        "{21}U(22,25]",
    ]);
    let [q1, q2, q3] = quartiles(&d, QuartileRule::Average).unwrap();
    c.check(format!("Q1 = {{4.5,5.5}}, got {q1}"), q1 == sv("{4.5,5.5}"));
    c.check(format!("Q2 = [8,10], got {q2}"), q2 == sv("[8,10]"));
    c.check(format!("Q3 = [14,14.5], got {q3}"), q3 == sv("[14,14.5]"));
    c.finish();
}

#[test]
fn criterion_07_frequency_table() {
    let mut c = Criterion::new(7, "accident frequency table");
    let rows: Vec<(String, SetValue)> = [("0", "50"), ("1", "[60,80]"), ("2", "[70,90]"), ("3", "[40,50]")]
        .iter()
        .map(|(k, f)| (k.to_string(), sv(f)))
        .collect();
    let t = freq_table(&rows).unwrap();
    let want = [(0.185, 0.227), (0.240, 0.333), (0.280, 0.375), (0.154, 0.217)];
    for (row, (lo, hi)) in t.rows.iter().zip(want) {
        c.close(
            &format!("row {} lower", row.category),
            row.rel_freq.infimum(),
            lo,
            0.001,
        );
        c.close(
            &format!("row {} upper", row.category),
            row.rel_freq.supremum(),
            hi,
            0.001,
        );
    }
    c.close("total frequency lower", t.total_frequency.infimum(), 220.0, 0.001);
    c.close("total frequency upper", t.total_frequency.supremum(), 270.0, 0.001);
    c.close("total rel freq lower", t.total_rel_freq.infimum(), 0.859, 0.001);
    c.close("total rel freq upper", t.total_rel_freq.supremum(), 1.152, 0.001);
    for i in [1, 2] {
        let (own, naive) = (&t.rows[i].rel_freq, t.naive_rel_freq(i));
        c.check(
            format!("row {i} {own} strictly inside naive {naive}"),
            own.is_subset_of(&naive) && *own != naive,
        );
    }
    c.finish();
}

#[test]
fn criterion_08_wrong_observations() {
    let mut c = Criterion::new(8, "wrong-observation enumeration");
    let w = [0.4, 0.1, 0.3, 0.2, 0.7];
    let r = wrong_obs_enumerate(&[17.0, 12.0, 5.0, 8.0, 9.0], 1, Some(&w)).unwrap();
    let table = [
        (5.0, 10.5, 11.5, 3.5),
        (8.0, 10.5, 10.75, 4.38035),
        (9.0, 10.0, 10.5, 4.5),
        (12.0, 8.5, 9.75, 4.43706),
        (17.0, 8.5, 8.5, 2.5),
    ];
    c.check("five subsamples", r.samples.len() == 5);
    for (row, (wrong, med, mean, sd)) in r.samples.iter().zip(table) {
        c.check(format!("sample without {wrong}"), row.wrong == vec![wrong]);
        c.close(&format!("median without {wrong}"), row.median, med, 1e-4);
        c.close(&format!("mean without {wrong}"), row.mean, mean, 1e-4);
        c.close(&format!("stddev without {wrong}"), row.stddev, sd, 1e-4);
    }
    let is = &r.combined.interval_style;
    c.check("interval median [8.5,10.5]", is.median == sv("[8.5,10.5]"));
    c.check("interval mean [8.5,11.5]", is.mean == sv("[8.5,11.5]"));
    c.close("interval stddev lower", is.stddev.infimum(), 2.5, 1e-4);
    c.close("interval stddev upper", is.stddev.supremum(), 4.43706, 1e-4);
    let av = r.combined.average_style;
    c.close("average median", av.median, 9.6, 1e-4);
    c.close("average mean", av.mean, 10.2, 1e-4);
    c.close("average stddev", av.stddev, 3.86348, 1e-4);
    let ws = r.combined.weighted_style.unwrap();
    c.close("weighted median", ws.median, 9.35294, 1e-4);
    c.close("weighted mean", ws.mean, 9.83824, 1e-4);
    c.close("weighted stddev", ws.stddev, 3.42673, 1e-4);
    c.finish();
}

/// Sums chances over all 3^n outcome sequences.
fn brute_force(spec: &BinomialSpec, x: u32) -> (f64, f64, f64) {
    let n = spec.n;
    let (mut t, mut i, mut f) = (0.0, 0.0, 0.0);
    for code in 0..3u64.pow(n) {
        let (mut s, mut ind, mut p, mut k) = (0, 0, 1.0, code);
        for _ in 0..n {
            match k % 3 {
                0 => {
                    s += 1;
                    p *= spec.ps;
                }
                1 => {
                    ind += 1;
                    p *= spec.pi;
                }
                _ => p *= spec.pf,
            }
            k /= 3;
        }
        if ind > spec.th {
            i += p;
        } else if s == x {
            t += p;
        } else {
            f += p;
        }
    }
    (t, i, f)
}

#[test]
fn criterion_09_binomial() {
    let mut c = Criterion::new(9, "binomial with indeterminacy threshold");
    let spec = BinomialSpec::new(5, 2, 0.1, 0.2, 0.8).unwrap();
    let t = nbinomial_pmf(&spec, 2).unwrap();
    c.close("T2", t.t, 0.0992, 1e-5);
    c.close("I2", t.i, 0.07232, 1e-5);
    c.close("F2", t.f, 1.43899, 1e-5);
    let nt = normalize_triplet(&t).unwrap();
    c.close("normalized T", nt.t, 0.061595, 1e-5);
    c.close("normalized I", nt.i, 0.044905, 1e-5);
    c.close("normalized F", nt.f, 0.893500, 1e-5);
    c.close("T+I+F = 1.1^5", t.sum(), 1.1f64.powi(5), 1e-9);

    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let start = std::time::Instant::now();
    let mut worst: f64 = 0.0;
    for n in 1..=8u32 {
        for _ in 0..4 {
            let th = rng.random_range(0..=n);
            let spec = BinomialSpec::new(n, th, rng.random(), rng.random(), rng.random()).unwrap();
            for x in 0..=n {
                let a = nbinomial_pmf(&spec, x).unwrap();
                let b = nbinomial_via_trinomial(&spec, x).unwrap();
                let (bt, bi, bf) = brute_force(&spec, x);
                for (p, q) in [(a.t, b.t), (a.i, b.i), (a.f, b.f), (a.t, bt), (a.i, bi), (a.f, bf)] {
                    worst = worst.max((p - q).abs());
                }
            }
        }
    }
    c.check(
        format!("pmf = trinomial = brute force, worst gap {worst:.2e}"),
        worst <= 1e-9,
    );
    let spec8 = BinomialSpec::new(8, 3, 0.3, 0.3, 0.4).unwrap();
    let t8 = std::time::Instant::now();
    brute_force(&spec8, 4);
    c.check("brute force n=8 under 1 s", t8.elapsed().as_secs_f64() < 1.0);
    println!("    (randomized sweep took {:?})", start.elapsed());
    c.finish();
}

#[test]
fn criterion_10_normal_bands() {
    let mut c = Criterion::new(10, "normal sigma bands");
    let cases = [
        ("15", "[2,3]", ["[12,18]", "[9,21]", "[6,24]"]),
        ("[15,17]", "2", ["[13,19]", "[11,21]", "[9,23]"]),
        ("[15,17]", "[2,3]", ["[12,20]", "[9,23]", "[6,26]"]),
    ];
    for (mu, sigma, bands) in cases {
        let spec = NormalSpec::new(sv(mu), sv(sigma)).unwrap();
        for (k, want) in (1..=3).zip(bands) {
            let got = nnormal_sigma_band(&spec, k);
            c.check(format!("mu={mu} sigma={sigma} k={k}: {got} = {want}"), got == sv(want));
        }
    }
    c.finish();
}

fn regression_points() -> Vec<SetPoint> {
    [
        ("2", "[1,3]"),
        ("[4,5]", "6"),
        ("1", "2"),
        ("(6,7)", "(10,13)"),
        ("8", "{14,15}"),
        ("3", "5"),
    ]
    .iter()
    .map(|(x, y)| SetPoint::new(sv(x), sv(y)))
    .collect()
}

const PRINTED_PREDICTIONS: [(f64, f64); 6] = [
    (-21.3587, 18.7955),
    (-20.5014, 38.5603),
    (-21.7871, 12.2073),
    (-19.6443, 51.7367),
    (-18.7871, 58.325),
    (-20.93, 25.3838),
];
const PRINTED_RESIDUALS: [(f64, f64); 6] = [
    (-17.7985, 24.3587),
    (-32.5603, 26.5014),
    (-10.2073, 23.7871),
    (-41.7367, 32.6443),
    (-44.325, 33.7871),
    (-20.3838, 25.93),
];

fn compare_rows(c: &mut Criterion, what: &str, got: &[SetValue], want: &[(f64, f64)], tol: f64) {
    for (i, (g, w)) in got.iter().zip(want).enumerate() {
        c.close(&format!("{what} {} lower", i + 1), g.infimum(), w.0, tol);
        c.close(&format!("{what} {} upper", i + 1), g.supremum(), w.1, tol);
    }
}

#[test]
fn criterion_11_regression() {
    let mut c = Criterion::new(11, "least-squares line on the 6-point table");
    let p = regression_points();
    let m = ls_fit(&p).unwrap();
    c.close("b lower", m.slope_b.infimum(), 0.42857, 1e-4);
    c.close("b upper", m.slope_b.supremum(), 6.58824, 1e-4);
    c.close("a lower", m.intercept_a.infimum(), -22.2157, 1e-3);
    c.close("a upper", m.intercept_a.supremum(), 5.61905, 1e-3);
    let preds: Vec<SetValue> = p.iter().map(|pt| predict(&m, &pt.x)).collect();
    compare_rows(&mut c, "prediction", &preds, &PRINTED_PREDICTIONS, 1e-3);
    compare_rows(&mut c, "residual", &residuals(&p, &m), &PRINTED_RESIDUALS, 1e-3);
    c.check("coverage all true", coverage_check(&p, &m).iter().all(|&b| b));
    let resid = nss_resid_midpoint(&p, &m);
    c.close("midpoint NSSResid", resid, 122.16, 0.01);
    let to = nss_to(&p);
    c.close("NSSTo lower", to.infimum(), 308.222, 0.001);
    c.close("NSSTo upper", to.supremum(), 427.889, 0.001);
    let r2 = r_squared(resid, &to).unwrap();
    c.close("r² lower", r2.raw.infimum(), 0.6037, 0.001);
    let r = correlation(&p).unwrap();
    let clipped = r.clipped.clone().unwrap();
    c.close("correlation lower", clipped.infimum(), 0.2157, 0.001);
    c.check(
        format!("correlation clipped to (0.2157, 1], got {clipped}"),
        clipped.supremum() == 1.0 && clipped.contains(1.0) && !clipped.contains(clipped.infimum()),
    );

    // Reference only: the same pipeline driven by the printed coefficients.
    let printed = LinearModel::with_coefficients(
        SetValue::open_interval(-22.2157, 5.61905).unwrap(),
        SetValue::open_interval(0.42857, 6.58824).unwrap(),
        &p,
    );
    let mut info = Criterion::new(11, "reference run with the printed coefficients");
    let preds: Vec<SetValue> = p.iter().map(|pt| printed.predict(&pt.x)).collect();
    compare_rows(&mut info, "prediction", &preds, &PRINTED_PREDICTIONS, 1e-3);
    compare_rows(
        &mut info,
        "residual",
        &residuals(&p, &printed),
        &PRINTED_RESIDUALS,
        1e-3,
    );
    info.check("coverage all true", coverage_check(&p, &printed).iter().all(|&b| b));
    info.close("midpoint NSSResid", nss_resid_midpoint(&p, &printed), 122.16, 0.01);
    let n2 = SetValue::crisp(36.0);
    let s = &printed.sums;
    let to_n2 = s.syy.sub(&s.sy.pow(2).unwrap().div(&n2).unwrap());
    info.close("NSSTo with (Σy)²/n² lower", to_n2.infimum(), 308.222, 0.001);
    info.close("NSSTo with (Σy)²/n² upper", to_n2.supremum(), 427.889, 0.001);
    println!("    reference checks (not asserted):");
    for (label, ok) in &info.checks {
        println!("      [{}] {label}", if *ok { "ok" } else { "differs" });
    }
    c.finish();
}

#[test]
fn criterion_12_inference() {
    let mut c = Criterion::new(12, "tests, intervals and sample size");
    let t = CriticalTable::embedded();
    let z = z_test_stat(&sv("[48,50]"), &sv("[40,41]"), &sv("25"), &sv("64")).unwrap();
    c.check(format!("z = [2.24,3.2], got {z}"), z == sv("[2.24,3.2]"));
    let crit = t.z_crit(Level::OneTail(0.10)).unwrap();
    c.check(
        "z decision at 1.28 rejects",
        z_decision(&z, Alternative::GreaterThanSup, crit).verdict == Verdict::Reject,
    );
    let p = p_value(&z, Alternative::GreaterThanSup);
    c.close("P-value lower", p.infimum(), 0.0007, 1e-4);
    c.close("P-value upper", p.supremum(), 0.0125, 1e-4);
    c.check("Reject at 0.10", p_decision(&p, &sv("0.10")).verdict == Verdict::Reject);
    c.check(
        "FailToReject at 0.0005",
        p_decision(&p, &sv("0.0005")).verdict == Verdict::FailToReject,
    );
    let d = p_decision(&p, &sv("0.01"));
    c.check("Indeterminate at 0.01", d.verdict == Verdict::Indeterminate);
    c.close("reject chance", d.reject_chance, 0.79, 0.01);
    c.close("fail chance", d.fail_chance, 0.21, 0.01);

    let zci = ci_mean_z(
        &sv("[18,20]"),
        &Spread::SampleSd(sv("[4,5]")),
        &sv("60"),
        Level::Central(0.90),
        t,
    )
    .unwrap();
    c.close("z-CI lower", zci.interval.infimum(), 16.94, 0.01);
    c.close("z-CI upper", zci.interval.supremum(), 21.06, 0.01);
    let tci = ci_mean_t(&sv("[8,10]"), &sv("[3,4]"), &sv("18"), Level::Central(0.95), t).unwrap();
    c.check("t_crit(17) = 2.110", tci.critical == 2.110);
    c.close("t-CI lower", tci.interval.infimum(), 6.011, 0.001);
    c.close("t-CI upper", tci.interval.supremum(), 11.989, 0.001);
    let pci = ci_proportion(&sv("[0.68,0.75]"), &sv("[200,220]"), Level::Central(0.99), t).unwrap();
    c.close("proportion CI lower", pci.ci.interval.infimum(), 0.590626, 1e-5);
    c.close("proportion CI upper", pci.ci.interval.supremum(), 0.839374, 1e-5);
    c.close("precondition min{np}", pci.preconditions[0].value, 136.0, 1e-9);
    c.close("precondition min{n(1-p)}", pci.preconditions[1].value, 50.0, 1e-9);
    c.check("both preconditions hold", pci.preconditions.iter().all(|p| p.ok));
    let ss = sample_size_mean(&sv("[87.5,137.5]"), 40.0, Level::Central(0.95), t).unwrap();
    c.close("n_set lower", ss.n_set.infimum(), 18.38, 0.01);
    c.close("n_set upper", ss.n_set.supremum(), 45.39, 0.01);
    c.check(format!("n_final = 46, got {}", ss.n_final), ss.n_final == 46);
    c.finish();
}

const Z_CUMULATIVE: &str = include_str!("../tables/z_cumulative.csv");

#[test]
fn criterion_13_tables() {
    let mut c = Criterion::new(13, "normal CDF and critical-value tables");
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for line in Z_CUMULATIVE.lines().skip(1) {
        let (z, p) = line.split_once(',').unwrap();
        let (z, p): (f64, f64) = (z.parse().unwrap(), p.parse().unwrap());
        worst = worst.max((phi(z) - p).abs());
        count += 1;
    }
    c.check(
        format!("{count} cumulative entries, worst gap {worst:.2e} ≤ 1e-4"),
        worst <= 1e-4 + 1e-12,
    );
    let t = CriticalTable::embedded();
    let z_rows = [
        (1.28, 0.10, 0.80),
        (1.645, 0.05, 0.90),
        (1.96, 0.025, 0.95),
        (2.33, 0.01, 0.98),
        (2.58, 0.005, 0.99),
        (3.09, 0.001, 0.998),
        (3.29, 0.0005, 0.999),
    ];
    for (z, tail, central) in z_rows {
        c.check(
            format!("z_crit one-tail {tail} = {z}"),
            t.z_crit(Level::OneTail(tail)) == Ok(z),
        );
        c.check(
            format!("z_crit central {central} = {z}"),
            t.z_crit(Level::Central(central)) == Ok(z),
        );
    }
    let t_csv = include_str!("../tables/t_critical.csv");
    let levels: Vec<f64> = t_csv
        .lines()
        .next()
        .unwrap()
        .split(',')
        .skip(1)
        .map(|s| s.parse().unwrap())
        .collect();
    let mut cells = 0;
    let mut bad = 0;
    for line in t_csv.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        let df = match f[0] {
            "z" => 5000,
            d => d.parse().unwrap(),
        };
        for (lvl, v) in levels.iter().zip(&f[1..]) {
            let want: f64 = v.parse().unwrap();
            cells += 1;
            if t.t_crit(df, Level::OneTail(1.0 - lvl)) != Ok(want) {
                bad += 1;
            }
        }
    }
    c.check(
        format!("t_crit reproduces {cells} cells ({bad} mismatches)"),
        bad == 0 && cells == 36 * 11,
    );
    c.check("t table has a z row", t.t_rows.iter().any(|r| r.0 == TRowKey::Z));
    c.check(
        "t_crit(17, 95%) = 2.110",
        t.t_crit(17, Level::Central(0.95)) == Ok(2.110),
    );
    c.finish();
}

/// Endpoint samples of a SetValue, including interior points for intervals.
fn sample_points(s: &SetValue, rng: &mut ChaCha8Rng) -> Vec<f64> {
    match s {
        SetValue::Crisp(x) => vec![*x],
        SetValue::Finite(v) => v.clone(),
        _ => (0..8)
            .map(|_| {
                let u: f64 = rng.random();
                s.infimum() + u * (s.supremum() - s.infimum())
            })
            .filter(|x| s.contains(*x))
            .collect(),
    }
}

fn random_set(rng: &mut ChaCha8Rng) -> SetValue {
    let a: f64 = rng.random_range(-10.0..10.0);
    match rng.random_range(0..3) {
        0 => SetValue::crisp(a),
        1 => SetValue::interval(a, a + rng.random_range(0.1..5.0)).unwrap(),
        _ => SetValue::finite([a, a + rng.random_range(0.1..5.0), a - 1.0]).unwrap(),
    }
}

#[test]
fn criterion_14_property_sweep() {
    let mut c = Criterion::new(14, "fixed-seed property sweep");
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let start = std::time::Instant::now();

    let mut unsound = 0;
    for _ in 0..500 {
        let (s, t) = (random_set(&mut rng), random_set(&mut rng));
        let (ps, pt) = (sample_points(&s, &mut rng), sample_points(&t, &mut rng));
        let (sum, prod, diff) = (s.add(&t), s.mul(&t), s.sub(&t));
        for &x in &ps {
            for &y in &pt {
                let near = |set: &SetValue, v: f64| set.contains(v) || set.hull().contains(v) && !set.is_crisp();
                if !(near(&sum, x + y) && near(&prod, x * y) && near(&diff, x - y)) {
                    unsound += 1;
                }
            }
        }
    }
    c.check(format!("set arithmetic soundness ({unsound} violations)"), unsound == 0);

    let mut order_bad = 0;
    let sets: Vec<SetValue> = (0..60).map(|_| random_set(&mut rng)).collect();
    for a in &sets {
        for b in &sets {
            let ab = a.order_cmp(b);
            let ba = b.order_cmp(a);
            let flipped = std::cmp::Ordering::from(ab).reverse() == std::cmp::Ordering::from(ba);
            if !flipped {
                order_bad += 1;
            }
        }
    }
    c.check(
        format!("midpoint order antisymmetric ({order_bad} violations)"),
        order_bad == 0,
    );

    let mut crisp_bad = 0;
    for _ in 0..200 {
        let xs: Vec<f64> = (0..6).map(|_| rng.random_range(-20.0..20.0)).collect();
        let d = Dataset::new(xs.iter().map(|&x| SetValue::crisp(x)).collect(), "").unwrap();
        let mean = xs.iter().sum::<f64>() / 6.0;
        let sd = (xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / 6.0).sqrt();
        let gm = mean_set(&d).as_crisp().unwrap();
        let gs = stddev_set(&d).as_crisp().unwrap();
        if (gm - mean).abs() > 1e-9 || (gs - sd).abs() > 1e-9 {
            crisp_bad += 1;
        }
    }
    c.check(
        format!("crisp degeneration of descriptive stats ({crisp_bad} failures)"),
        crisp_bad == 0,
    );

    let mut div_bad = 0;
    for _ in 0..300 {
        let u = nn(rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0));
        let v = nn(rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0));
        if let Ok(q) = u.div(v) {
            if !(q * v).approx_eq(&u, 1e-9) {
                div_bad += 1;
            }
        }
        for r in u.sqrt_all().unwrap_or_default() {
            if !(r * r).approx_eq(&u, 1e-9) {
                div_bad += 1;
            }
        }
    }
    c.check(
        format!("division and root round-trips ({div_bad} failures)"),
        div_bad == 0,
    );

    let t = CriticalTable::embedded();
    let mut ci_bad = 0;
    for _ in 0..200 {
        let lo = rng.random_range(0.0..20.0);
        let xbar = SetValue::interval(lo, lo + rng.random_range(0.1..3.0)).unwrap();
        let s_lo = rng.random_range(0.5..5.0);
        let s = SetValue::interval(s_lo, s_lo + rng.random_range(0.1..2.0)).unwrap();
        let n = SetValue::interval(40.0, 80.0).unwrap();
        let ci = ci_mean_z(&xbar, &Spread::SampleSd(s.clone()), &n, Level::Central(0.95), t).unwrap();
        for _ in 0..5 {
            let x = rng.random_range(xbar.infimum()..=xbar.supremum());
            let sd = rng.random_range(s.infimum()..=s.supremum());
            let nn_ = rng.random_range(40.0..=80.0f64);
            let m = 1.96 * sd / nn_.sqrt();
            if !(ci.interval.contains(x - m) && ci.interval.contains(x + m)) {
                ci_bad += 1;
            }
        }
    }
    c.check(format!("CI selection containment ({ci_bad} failures)"), ci_bad == 0);
    c.check("sweep under 30 s", start.elapsed().as_secs_f64() < 30.0);
    c.finish();
}
