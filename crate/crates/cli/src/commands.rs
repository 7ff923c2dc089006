use std::path::PathBuf;

use clap::{Args, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};

use neutrostat::descriptive::{self, Dataset, NNDataset, QuartileRule};
use neutrostat::distributions::{self, BinomialSpec, MultinomialSpec, NeutroTriplet, NormalSpec};
use neutrostat::inference::{self, Alternative, Level, Spread};
use neutrostat::neutro_num::complex_sqrt;
use neutrostat::randgen::{NeutroRng, WeightedAlphabet};
use neutrostat::regression::{self, Deneutrosify, ScatterKind, SetPoint};
use neutrostat::{NeutroComplex, NeutroNumber, NeutroQuadratic, SetValue};

use crate::input::{csv_columns, file_tokens, parse_all, parse_reals, parse_set, tokenize};
use crate::report::{Report, Warning};
use crate::{plot, CliError, Ctx};

type Res<T> = Result<T, CliError>;

pub enum Output {
    Report(Report),
    /// Plain lines by default, the report when a format is requested.
    Lines {
        text: Vec<String>,
        report: Report,
    },
}

#[derive(Debug, Args)]
pub struct DataArgs {
    /// Inline observations, e.g. "[6,6] [2,5] 30 {21}U(22,25]".
    #[arg(long, allow_hyphen_values = true)]
    pub data: Option<String>,
    /// One observation per line.
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// CSV file with a header row; pick the column with --column.
    #[arg(long, requires = "column")]
    pub csv: Option<PathBuf>,
    /// Column name or 0-based index.
    #[arg(long, allow_hyphen_values = true)]
    pub column: Option<String>,
}

impl DataArgs {
    fn tokens(&self) -> Res<Vec<String>> {
        match (&self.data, &self.file, &self.csv) {
            (Some(d), None, None) => Ok(tokenize(d)),
            (None, Some(f), None) => file_tokens(f),
            (None, None, Some(c)) => {
                let col = self.column.as_deref().unwrap_or("0");
                Ok(csv_columns(c, &[col])?.remove(0))
            }
            _ => Err(CliError::Usage("give exactly one of --data, --file, --csv".into())),
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Rule {
    Average,
    Floor,
}

impl From<Rule> for QuartileRule {
    fn from(r: Rule) -> Self {
        match r {
            Rule::Average => QuartileRule::Average,
            Rule::Floor => QuartileRule::Floor,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Alt {
    /// Reject for large values.
    Upper,
    /// Reject for small values.
    Lower,
    Two,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum CiKind {
    MeanZ,
    MeanT,
    Proportion,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SizeKind {
    Mean,
    Proportion,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Mode {
    Uniform,
    Weighted,
    Balls,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum NnOp {
    Add,
    Sub,
    Mul,
    Div,
    Sqrt,
    Root,
    Solve,
    Csqrt,
    Ncsqrt,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Mean, median, standard deviation and quartiles.
    Describe {
        #[command(flatten)]
        data: DataArgs,
        /// Read observations as a+bI numbers.
        #[arg(long)]
        nn: bool,
        #[arg(long, value_enum, default_value = "average")]
        rule: Rule,
    },
    Quartiles {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long, value_enum, default_value = "average")]
        rule: Rule,
    },
    /// Frequency table with constrained relative frequencies.
    Freq {
        /// "category:frequency" pairs, e.g. "0:50 1:[60,80]".
        #[arg(long, allow_hyphen_values = true)]
        rows: String,
        /// "stem:leaf" pairs for a stem-and-leaf display, e.g. "6:(0,0.2) 6:[0,1]".
        #[arg(long, allow_hyphen_values = true)]
        stems: Option<String>,
    },
    /// Statistics over every way of discarding k wrong observations.
    Wrongobs {
        #[arg(long, allow_hyphen_values = true)]
        data: String,
        #[arg(long)]
        k: usize,
        /// One weight per subsample.
        #[arg(long, allow_hyphen_values = true)]
        weights: Option<String>,
    },
    Binom {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        th: u32,
        #[arg(long)]
        ps: f64,
        #[arg(long)]
        pi: f64,
        #[arg(long)]
        pf: f64,
        /// Omit for the whole table.
        #[arg(long)]
        x: Option<u32>,
    },
    Multinom {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        th: u32,
        #[arg(long, allow_hyphen_values = true)]
        probs: String,
        #[arg(long)]
        indet: f64,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// Density envelope and sigma bands with set-valued parameters.
    Normal {
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long, allow_hyphen_values = true)]
        sigma: String,
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
        #[arg(long, default_value = "1 2 3")]
        bands: String,
    },
    /// Least-squares line through set-valued points.
    Fit {
        #[arg(long, requires = "y", allow_hyphen_values = true)]
        x: Option<String>,
        #[arg(long, requires = "x", allow_hyphen_values = true)]
        y: Option<String>,
        #[arg(long, requires_all = ["xcol", "ycol"])]
        csv: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        xcol: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        ycol: Option<String>,
        /// Chosen crisp coefficients "a,b" instead of the midpoints.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "no_line")]
        choose: Option<String>,
        /// Only classify (and plot) the points.
        #[arg(long)]
        no_line: bool,
    },
    /// z test of the mean against a set-valued null.
    Test {
        #[arg(long, allow_hyphen_values = true)]
        xbar: String,
        #[arg(long, allow_hyphen_values = true)]
        null: String,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, allow_hyphen_values = true)]
        n: String,
        #[arg(long, value_enum)]
        alt: Alt,
        #[arg(long, default_value = "0.05")]
        alpha: String,
    },
    /// Confidence interval.
    Ci {
        #[arg(long, value_enum)]
        kind: CiKind,
        #[arg(long, allow_hyphen_values = true)]
        xbar: Option<String>,
        /// Population standard deviation.
        #[arg(long, conflicts_with = "s", allow_hyphen_values = true)]
        sigma: Option<String>,
        /// Sample standard deviation.
        #[arg(long, allow_hyphen_values = true)]
        s: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        p: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        n: String,
        #[arg(long, default_value_t = 0.95)]
        level: f64,
    },
    Samplesize {
        #[arg(long, value_enum)]
        kind: SizeKind,
        #[arg(long, conflicts_with_all = ["high", "low"])]
        sigma: Option<String>,
        /// Largest observation, for sigma ≈ range/4.
        #[arg(long, requires = "low", allow_hyphen_values = true)]
        high: Option<String>,
        #[arg(long, requires = "high", allow_hyphen_values = true)]
        low: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        p: Option<String>,
        #[arg(long)]
        bound: f64,
        #[arg(long, default_value_t = 0.95)]
        level: f64,
    },
    /// Random symbols with indeterminacy.
    Randgen {
        #[arg(long, value_enum, default_value = "uniform")]
        mode: Mode,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 12)]
        len: usize,
        /// Values for uniform mode.
        #[arg(long, default_value = "0 1 2 3 4 5 6 7 8 9")]
        values: String,
        /// Number of indeterminate symbols in uniform mode.
        #[arg(long, default_value_t = 1)]
        indet: u32,
        /// "symbol:weight" pairs for weighted mode; I, I1, I2 ... are indeterminacies.
        #[arg(long, allow_hyphen_values = true)]
        weights: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        lo: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        hi: Option<i64>,
    },
    /// Arithmetic on a+bI numbers.
    Nnalg {
        #[arg(value_enum)]
        op: NnOp,
        #[arg(long, visible_alias = "num", allow_hyphen_values = true)]
        a: Option<String>,
        #[arg(long, visible_alias = "den", allow_hyphen_values = true)]
        b: Option<String>,
        /// Root index.
        #[arg(long)]
        k: Option<u32>,
        /// Quadratic coefficients, highest degree first.
        #[arg(long, allow_hyphen_values = true)]
        coeffs: Option<String>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Describe { .. } => "describe",
            Command::Quartiles { .. } => "quartiles",
            Command::Freq { .. } => "freq",
            Command::Wrongobs { .. } => "wrongobs",
            Command::Binom { .. } => "binom",
            Command::Multinom { .. } => "multinom",
            Command::Normal { .. } => "normal",
            Command::Fit { .. } => "fit",
            Command::Test { .. } => "test",
            Command::Ci { .. } => "ci",
            Command::Samplesize { .. } => "samplesize",
            Command::Randgen { .. } => "randgen",
            Command::Nnalg { .. } => "nnalg",
        }
    }
}

struct Builder<'a> {
    ctx: &'a Ctx,
    command: &'static str,
    warnings: Vec<Warning>,
}

impl Builder<'_> {
    fn warn(&mut self, code: &'static str, message: impl Into<String>) {
        self.warnings.push(Warning::new(code, message));
    }

    fn finish(self, inputs: Value, results: Value) -> Report {
        Report {
            command: self.command.into(),
            inputs,
            results,
            warnings: self.warnings,
            error: None,
        }
    }

    fn no_plot(&mut self) {
        if self.ctx.plot.is_some() {
            self.warn("plot_ignored", format!("{} does not draw plots", self.command));
        }
    }
}

pub fn run(cmd: &Command, ctx: &Ctx) -> Res<Output> {
    let mut b = Builder {
        ctx,
        command: cmd.name(),
        warnings: Vec::new(),
    };
    if !matches!(cmd, Command::Freq { .. } | Command::Fit { .. }) {
        b.no_plot();
    }
    let report = match cmd {
        Command::Describe { data, nn, rule } => {
            if *nn {
                describe_nn(b, data)?
            } else {
                describe(b, data, (*rule).into())?
            }
        }
        Command::Quartiles { data, rule } => quartiles(b, data, (*rule).into())?,
        Command::Freq { rows, stems } => freq(b, rows, stems.as_deref())?,
        Command::Wrongobs { data, k, weights } => wrongobs(b, data, *k, weights.as_deref())?,
        Command::Binom { n, th, ps, pi, pf, x } => binom(b, BinomialSpec::new(*n, *th, *ps, *pi, *pf)?, *x)?,
        Command::Multinom { n, th, probs, indet, x } => multinom(b, *n, *th, probs, *indet, x)?,
        Command::Normal { mu, sigma, x, bands } => normal(b, mu, sigma, x.as_deref(), bands)?,
        Command::Fit {
            x,
            y,
            csv,
            xcol,
            ycol,
            choose,
            no_line,
        } => {
            let (xs, ys) = match (x, y, csv) {
                (Some(x), Some(y), None) => (tokenize(x), tokenize(y)),
                (None, None, Some(path)) => {
                    let mut cols =
                        csv_columns(path, &[xcol.as_deref().unwrap_or("0"), ycol.as_deref().unwrap_or("1")])?;
                    let ys = cols.pop().unwrap_or_default();
                    (cols.pop().unwrap_or_default(), ys)
                }
                _ => return Err(CliError::Usage("give either --x and --y, or --csv".into())),
            };
            fit(b, &xs, &ys, choose.as_deref(), *no_line)?
        }
        Command::Test {
            xbar,
            null,
            s,
            n,
            alt,
            alpha,
        } => test(b, [xbar, null, s, n, alpha], *alt)?,
        Command::Ci {
            kind,
            xbar,
            sigma,
            s,
            p,
            n,
            level,
        } => ci(
            b,
            *kind,
            xbar.as_deref(),
            sigma.as_deref(),
            s.as_deref(),
            p.as_deref(),
            n,
            *level,
        )?,
        Command::Samplesize {
            kind,
            sigma,
            high,
            low,
            p,
            bound,
            level,
        } => samplesize(
            b,
            *kind,
            sigma.as_deref(),
            high.as_deref().zip(low.as_deref()),
            p.as_deref(),
            *bound,
            *level,
        )?,
        Command::Randgen {
            mode,
            seed,
            len,
            values,
            indet,
            weights,
            lo,
            hi,
        } => {
            let (text, report) = randgen(b, *mode, *seed, *len, values, *indet, weights.as_deref(), *lo, *hi)?;
            return Ok(Output::Lines { text, report });
        }
        Command::Nnalg {
            op,
            a,
            b: rhs,
            k,
            coeffs,
        } => nnalg(b, *op, a.as_deref(), rhs.as_deref(), *k, coeffs.as_deref())?,
    };
    Ok(Output::Report(report))
}

fn dataset(data: &DataArgs) -> Res<Dataset> {
    Ok(Dataset::new(parse_all(&data.tokens()?)?, "data")?)
}

fn describe(mut b: Builder, data: &DataArgs, rule: QuartileRule) -> Res<Report> {
    let d = dataset(data)?;
    let f = b.ctx.fmt;
    let mut results = json!({
        "n": d.len(),
        "mean": f.set(&descriptive::mean_set(&d)),
        "median": f.set(&descriptive::median_set(&d)),
        "stddev": f.set(&descriptive::stddev_set(&d)),
        "sorted": f.sets(&d.sorted()),
    });
    match descriptive::quartiles(&d, rule) {
        Ok(q) => results["quartiles"] = f.sets(&q),
        Err(e) => b.warn("quartiles_skipped", e.to_string()),
    }
    Ok(b.finish(json!({ "observations": f.sets(d.observations()) }), results))
}

fn describe_nn(b: Builder, data: &DataArgs) -> Res<Report> {
    let d = NNDataset::new(parse_all(&data.tokens()?)?)?;
    let f = b.ctx.fmt;
    let msd = descriptive::mean_squared_deviation_nn(&d);
    let results = json!({
        "n": d.observations().len(),
        "mean": f.nn(&descriptive::mean_nn(&d)),
        "median": f.nn(&descriptive::median_nn(&d)),
        "mean_squared_deviation": f.nn(&msd),
        "stddev": f.nn(&descriptive::stddev_nn(&d)?),
    });
    let obs: Vec<Value> = d.observations().iter().map(|v| f.nn(v)).collect();
    Ok(b.finish(json!({ "observations": obs }), results))
}

fn quartiles(b: Builder, data: &DataArgs, rule: QuartileRule) -> Res<Report> {
    let d = dataset(data)?;
    let f = b.ctx.fmt;
    let q = descriptive::quartiles(&d, rule)?;
    let rule = match rule {
        QuartileRule::Average => "average",
        QuartileRule::Floor => "floor",
    };
    Ok(b.finish(
        json!({ "observations": f.sets(d.observations()), "rule": rule }),
        json!({ "q1": f.set(&q[0]), "q2": f.set(&q[1]), "q3": f.set(&q[2]), "sorted": f.sets(&d.sorted()) }),
    ))
}

fn pairs(text: &str, what: &str) -> Res<Vec<(String, String)>> {
    tokenize(text)
        .into_iter()
        .map(|t| match t.split_once(':') {
            Some((k, v)) if !k.is_empty() && !v.is_empty() => Ok((k.to_string(), v.to_string())),
            _ => Err(CliError::Usage(format!("{what}: expected key:value, got {t:?}"))),
        })
        .collect()
}

fn freq(mut b: Builder, rows: &str, stems: Option<&str>) -> Res<Report> {
    let f = b.ctx.fmt;
    let rows: Vec<(String, SetValue)> = pairs(rows, "--rows")?
        .into_iter()
        .map(|(k, v)| Ok((k, parse_set(&v)?)))
        .collect::<Res<_>>()?;
    let table = descriptive::freq_table(&rows)?;
    let out: Vec<Value> = table
        .rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            json!({
                "category": r.category,
                "frequency": f.set(&r.frequency),
                "rel_freq": f.set(&r.rel_freq),
                "naive_rel_freq": f.set(&table.naive_rel_freq(i)),
            })
        })
        .collect();
    let mut results = json!({
        "rows": out,
        "total_frequency": f.set(&table.total_frequency),
        "total_rel_freq": f.set(&table.total_rel_freq),
    });
    if let Some(s) = stems {
        let leaves: Vec<(i64, SetValue)> = pairs(s, "--stems")?
            .into_iter()
            .map(|(k, v)| {
                let stem = k
                    .parse::<i64>()
                    .map_err(|_| CliError::Usage(format!("--stems: stem {k:?} is not an integer")))?;
                Ok((stem, parse_set(&v)?))
            })
            .collect::<Res<_>>()?;
        results["stem_and_leaf"] = Value::Array(
            descriptive::stem_and_leaf(&leaves)
                .lines()
                .map(|l| Value::String(l.to_string()))
                .collect(),
        );
    }
    if let Some(path) = &b.ctx.plot {
        let svg = plot::histogram_svg("frequency", &rows);
        plot::write(path, &svg)?;
        results["plot"] = json!(path.display().to_string());
        if rows.iter().any(|(_, v)| !v.is_crisp() && v.hull() != *v) {
            b.warn("plot_hull", "non-interval frequencies are drawn by their hull");
        }
    }
    let inputs: Vec<Value> = rows.iter().map(|(k, v)| json!([k, f.set(v)])).collect();
    Ok(b.finish(json!({ "rows": inputs }), results))
}

fn wrongobs(b: Builder, data: &str, k: usize, weights: Option<&str>) -> Res<Report> {
    let f = b.ctx.fmt;
    let obs = parse_reals(data)?;
    let w = weights.map(parse_reals).transpose()?;
    let rep = descriptive::wrong_obs_enumerate(&obs, k, w.as_deref())?;
    let samples: Vec<Value> = rep
        .samples
        .iter()
        .map(|r| {
            json!({
                "wrong": f.nums(&r.wrong),
                "correct": f.nums(&r.correct),
                "median": f.num(r.median),
                "mean": f.num(r.mean),
                "deviations": f.nums(&r.deviations),
                "squared_deviations": f.nums(&r.squared_deviations),
                "stddev": f.num(r.stddev),
            })
        })
        .collect();
    let c = &rep.combined;
    let point = |p: &descriptive::PointStyle| json!({ "median": f.num(p.median), "mean": f.num(p.mean), "stddev": f.num(p.stddev) });
    let mut combined = json!({
        "interval_style": {
            "median": f.set(&c.interval_style.median),
            "mean": f.set(&c.interval_style.mean),
            "stddev": f.set(&c.interval_style.stddev),
        },
        "average_style": point(&c.average_style),
    });
    if let Some(ws) = &c.weighted_style {
        combined["weighted_style"] = point(ws);
    }
    let mut inputs = json!({ "observations": f.nums(&obs), "k": k });
    if let Some(w) = &w {
        inputs["weights"] = f.nums(w);
    }
    Ok(b.finish(inputs, json!({ "samples": samples, "combined": combined })))
}

fn triplet(b: &Builder, t: &NeutroTriplet) -> Value {
    let f = b.ctx.fmt;
    json!({ "T": f.num(t.t), "I": f.num(t.i), "F": f.num(t.f) })
}

fn binom(mut b: Builder, spec: BinomialSpec, x: Option<u32>) -> Res<Report> {
    let f = b.ctx.fmt;
    let mode = distributions::classify_mode(spec.ps, spec.pi, spec.pf)?;
    let xs: Vec<u32> = match x {
        Some(x) => vec![x],
        None => (0..=spec.n).collect(),
    };
    let mut rows = Vec::new();
    for x in xs {
        let t = distributions::nbinomial_pmf(&spec, x)?;
        let mut row = triplet(&b, &t);
        row["x"] = json!(x);
        row["sum"] = f.num(t.sum());
        row["F_shortcut"] = f.num(distributions::falsehood_shortcut(&spec, &t));
        match distributions::normalize_triplet(&t) {
            Ok(n) => row["normalized"] = triplet(&b, &n),
            Err(e) => b.warn("not_normalized", format!("x={x}: {e}")),
        }
        rows.push(row);
    }
    let inputs = json!({
        "n": spec.n, "th": spec.th,
        "ps": f.num(spec.ps), "pi": f.num(spec.pi), "pf": f.num(spec.pf),
        "x": x,
    });
    Ok(b.finish(inputs, json!({ "mode": mode.name(), "rows": rows })))
}

fn counts(text: &str) -> Res<Vec<u32>> {
    tokenize(text)
        .iter()
        .map(|t| {
            t.parse()
                .map_err(|_| CliError::Usage(format!("expected a count, got {t:?}")))
        })
        .collect()
}

fn multinom(b: Builder, n: u32, th: u32, probs: &str, indet: f64, x: &str) -> Res<Report> {
    let f = b.ctx.fmt;
    let spec = MultinomialSpec::new(n, th, parse_reals(probs)?, indet)?;
    let x = counts(x)?;
    let t = distributions::nmultinomial_pmf(&spec, &x)?;
    let mut results = triplet(&b, &t);
    results["sum"] = f.num(t.sum());
    if let Ok(norm) = distributions::normalize_triplet(&t) {
        results["normalized"] = triplet(&b, &norm);
    }
    let inputs = json!({ "n": n, "th": th, "probs": f.nums(&spec.probs), "indet": f.num(indet), "x": x });
    Ok(b.finish(inputs, results))
}

fn normal(b: Builder, mu: &str, sigma: &str, x: Option<&str>, bands: &str) -> Res<Report> {
    let f = b.ctx.fmt;
    let spec = NormalSpec::new(parse_set(mu)?, parse_set(sigma)?)?;
    let xs = x.map(parse_reals).transpose()?.unwrap_or_default();
    let pdf: Vec<Value> = xs
        .iter()
        .map(|&x| json!({ "x": f.num(x), "pdf": f.set(&distributions::nnormal_pdf(&spec, x)) }))
        .collect();
    let band: Vec<Value> = counts(bands)?
        .into_iter()
        .map(|k| json!({ "k": k, "range": f.set(&distributions::nnormal_sigma_band(&spec, k)) }))
        .collect();
    let inputs = json!({ "mu": f.set(spec.mu()), "sigma": f.set(spec.sigma()), "x": f.nums(&xs) });
    Ok(b.finish(inputs, json!({ "pdf": pdf, "bands": band })))
}

fn kind_name(k: ScatterKind) -> &'static str {
    match k {
        ScatterKind::Point => "point",
        ScatterKind::SegmentX => "segment_x",
        ScatterKind::SegmentY => "segment_y",
        ScatterKind::Rectangle => "rectangle",
    }
}

fn bounded(f: crate::report::Fmt, v: &regression::Bounded) -> Value {
    json!({
        "raw": f.set(&v.raw),
        "clipped": v.clipped.as_ref().map(|c| f.set(c)).unwrap_or(Value::Null),
    })
}

fn fit(mut b: Builder, xs: &[String], ys: &[String], choose: Option<&str>, no_line: bool) -> Res<Report> {
    let f = b.ctx.fmt;
    if xs.len() != ys.len() {
        return Err(CliError::Usage(format!(
            "{} x values but {} y values",
            xs.len(),
            ys.len()
        )));
    }
    let points: Vec<SetPoint> = parse_all::<SetValue>(xs)?
        .into_iter()
        .zip(parse_all::<SetValue>(ys)?)
        .map(|(x, y)| SetPoint::new(x, y))
        .collect();
    let inputs = json!({
        "x": points.iter().map(|p| f.set(&p.x)).collect::<Vec<_>>(),
        "y": points.iter().map(|p| f.set(&p.y)).collect::<Vec<_>>(),
    });
    let objects = regression::scatter_objects(&points);
    let scatter: Vec<&str> = objects.iter().map(|o| kind_name(o.kind)).collect();
    if no_line {
        let mut results = json!({ "scatter": scatter });
        if let Some(path) = &b.ctx.plot {
            plot::write(path, &plot::scatter_svg("scatter", &objects, None))?;
            results["plot"] = json!(path.display().to_string());
        }
        return Ok(b.finish(inputs, results));
    }
    let m = regression::ls_fit(&points)?;
    let preds: Vec<SetValue> = points.iter().map(|p| m.predict(&p.x)).collect();
    let resid = regression::residuals(&points, &m);
    let mids = regression::midpoint_report(&points, &m);
    let ss_resid = regression::nss_resid_midpoint(&points, &m);
    let to = regression::nss_to(&points);
    let rows: Vec<Value> = points
        .iter()
        .zip(&preds)
        .zip(&resid)
        .zip(regression::coverage_check(&points, &m))
        .zip(&mids)
        .map(|((((p, yh), r), cov), (pm, rm))| {
            json!({
                "x": f.set(&p.x), "y": f.set(&p.y),
                "predicted": f.set(yh), "residual": f.set(r), "covered": cov,
                "predicted_mid": f.num(*pm), "residual_mid": f.num(*rm),
            })
        })
        .collect();
    let strategy = match choose {
        None => Deneutrosify::Midpoint,
        Some(s) => match parse_reals(s)?.as_slice() {
            [a, b] => Deneutrosify::ChosenPoints(*a, *b),
            _ => return Err(CliError::Usage("--choose takes \"a,b\"".into())),
        },
    };
    let (ca, cb) = regression::deneutrosify(&m, strategy)?;
    let mut results = json!({
        "intercept_a": f.set(&m.intercept_a),
        "slope_b": f.set(&m.slope_b),
        "points": rows,
        "nss_resid_midpoint": f.num(ss_resid),
        "nss_resid_set": f.set(&regression::nss_resid_set(&points, &m)),
        "nss_to": f.set(&to),
        "crisp_line": { "a": f.num(ca), "b": f.num(cb) },
        "scatter": scatter,
    });
    b.warn(
        "nss_to_convention",
        "NSSTo = Syy - Sy^2/n over hull arithmetic; dividing Sy^2 by n^2 instead gives a different total",
    );
    match regression::r_squared(ss_resid, &to) {
        Ok(r2) => {
            if r2.was_clipped() {
                b.warn(
                    "r_squared_clipped",
                    format!("raw r^2 {} intersected with [0,1]", f.text(&r2.raw)),
                );
            }
            b.warn(
                "r_squared_pairing",
                format!(
                    "r^2 = 1 - {}/NSSTo; its lower end uses inf NSSTo = {} and its upper end sup NSSTo = {}",
                    f.num(ss_resid),
                    f.num(to.infimum()),
                    f.num(to.supremum())
                ),
            );
            results["r_squared"] = bounded(f, &r2);
        }
        Err(e) => b.warn("r_squared_undefined", e.to_string()),
    }
    match regression::correlation(&points) {
        Ok(r) => {
            if r.was_clipped() {
                b.warn(
                    "correlation_clipped",
                    format!("raw correlation {} intersected with [-1,1]", f.text(&r.raw)),
                );
            }
            results["correlation"] = bounded(f, &r);
        }
        Err(e) => b.warn("correlation_undefined", e.to_string()),
    }
    if let Some(path) = &b.ctx.plot {
        plot::write(path, &plot::scatter_svg("least squares", &objects, Some(&m)))?;
        results["plot"] = json!(path.display().to_string());
    }
    Ok(b.finish(inputs, results))
}

fn test(mut b: Builder, raw: [&String; 5], alt: Alt) -> Res<Report> {
    let f = b.ctx.fmt;
    let [xbar, null, s, n, alpha] = raw.map(|t| parse_set(t));
    let (xbar, null, s, n, alpha) = (xbar?, null?, s?, n?, alpha?);
    let alternative = match alt {
        Alt::Upper => Alternative::GreaterThanSup,
        Alt::Lower => Alternative::LessThanInf,
        Alt::Two => Alternative::Outside,
    };
    let z = inference::z_test_stat(&xbar, &null, &s, &n)?;
    let pval = inference::p_value(&z, alternative);
    let d = inference::p_decision(&pval, &alpha);
    let mut results = json!({
        "statistic": f.set(&z),
        "pvalue": f.set(&pval),
        "alpha": f.set(&alpha),
        "verdict": d.verdict.name(),
        "reject_chance": f.num(d.reject_chance),
    });
    match alpha.as_crisp() {
        Some(a) => {
            let level = match alt {
                Alt::Two => Level::Central(1.0 - a),
                _ => Level::OneTail(a),
            };
            match b.ctx.table().z_crit(level) {
                Ok(crit) => {
                    let zd = inference::z_decision(&z, alternative, crit);
                    results["critical"] = json!({
                        "value": f.num(crit),
                        "verdict": zd.verdict.name(),
                        "reject_chance": f.num(zd.reject_chance),
                    });
                }
                Err(e) => b.warn("no_critical_value", e.to_string()),
            }
        }
        None => b.warn("no_critical_value", "critical-value route needs a crisp alpha"),
    }
    let inputs = json!({
        "xbar": f.set(&xbar), "null": f.set(&null), "s": f.set(&s), "n": f.set(&n),
        "alternative": format!("{alt:?}").to_lowercase(),
    });
    Ok(b.finish(inputs, results))
}

fn required<'a>(v: Option<&'a str>, flag: &str) -> Res<&'a str> {
    v.ok_or_else(|| CliError::Usage(format!("{flag} is required here")))
}

#[allow(clippy::too_many_arguments)]
fn ci(
    b: Builder,
    kind: CiKind,
    xbar: Option<&str>,
    sigma: Option<&str>,
    s: Option<&str>,
    p: Option<&str>,
    n: &str,
    level: f64,
) -> Res<Report> {
    let f = b.ctx.fmt;
    let n = parse_set(n)?;
    let lvl = Level::Central(level);
    let table = b.ctx.table();
    let mut inputs = json!({ "n": f.set(&n), "level": f.num(level) });
    let results = match kind {
        CiKind::MeanZ | CiKind::MeanT => {
            let xbar = parse_set(required(xbar, "--xbar")?)?;
            inputs["xbar"] = f.set(&xbar);
            let ci = match (kind, sigma, s) {
                (CiKind::MeanZ, Some(sg), None) => {
                    let sg = parse_set(sg)?;
                    inputs["sigma"] = f.set(&sg);
                    inference::ci_mean_z(&xbar, &Spread::Sigma(sg), &n, lvl, table)?
                }
                (CiKind::MeanZ, None, Some(sd)) => {
                    let sd = parse_set(sd)?;
                    inputs["s"] = f.set(&sd);
                    inference::ci_mean_z(&xbar, &Spread::SampleSd(sd), &n, lvl, table)?
                }
                (CiKind::MeanT, None, Some(sd)) => {
                    let sd = parse_set(sd)?;
                    inputs["s"] = f.set(&sd);
                    inference::ci_mean_t(&xbar, &sd, &n, lvl, table)?
                }
                (CiKind::MeanT, _, _) => return Err(CliError::Usage("mean-t needs --s".into())),
                _ => return Err(CliError::Usage("mean-z needs --sigma or --s".into())),
            };
            json!({ "interval": f.set(&ci.interval), "margin": f.set(&ci.margin), "critical": f.num(ci.critical) })
        }
        CiKind::Proportion => {
            let p = parse_set(required(p, "--p")?)?;
            inputs["p"] = f.set(&p);
            let pi = inference::ci_proportion(&p, &n, lvl, table)?;
            let pre: Vec<Value> = pi
                .preconditions
                .iter()
                .map(
                    |c| json!({ "name": c.name, "value": f.num(c.value), "threshold": f.num(c.threshold), "ok": c.ok }),
                )
                .collect();
            json!({
                "interval": f.set(&pi.ci.interval),
                "margin": f.set(&pi.ci.margin),
                "critical": f.num(pi.ci.critical),
                "preconditions": pre,
            })
        }
    };
    Ok(b.finish(inputs, results))
}

fn samplesize(
    mut b: Builder,
    kind: SizeKind,
    sigma: Option<&str>,
    range: Option<(&str, &str)>,
    p: Option<&str>,
    bound: f64,
    level: f64,
) -> Res<Report> {
    let f = b.ctx.fmt;
    let lvl = Level::Central(level);
    let table = b.ctx.table();
    let mut inputs = json!({ "bound": f.num(bound), "level": f.num(level) });
    let mut results = json!({});
    let size = match kind {
        SizeKind::Mean => {
            let sigma = match (sigma, range) {
                (Some(s), None) => parse_set(s)?,
                (None, Some((hi, lo))) => {
                    let (hi, lo) = (parse_set(hi)?, parse_set(lo)?);
                    inputs["high"] = f.set(&hi);
                    inputs["low"] = f.set(&lo);
                    let est = inference::range_sigma_estimate(&hi, &lo);
                    results["sigma_estimate"] = f.set(&est);
                    est
                }
                _ => return Err(CliError::Usage("mean needs --sigma or --high/--low".into())),
            };
            inputs["sigma"] = f.set(&sigma);
            let size = inference::sample_size_mean(&sigma, bound, lvl, table)?;
            let z = table.z_crit(lvl)?;
            b.warn(
                "squared_form",
                format!(
                    "n = (z*sigma/B)^2 is used; the unsquared z*sigma/B would give {}",
                    f.text(&sigma.scale(z / bound))
                ),
            );
            size
        }
        SizeKind::Proportion => {
            let p = p.map(parse_set).transpose()?;
            if let Some(p) = &p {
                inputs["p"] = f.set(p);
            } else {
                b.warn(
                    "default_proportion",
                    "no --p given; using 0.5, the most conservative value",
                );
            }
            inference::sample_size_proportion(p.as_ref(), bound, lvl, table)?
        }
    };
    if size.degenerate {
        b.warn("degenerate", "the sample-size set is not positive");
    }
    results["n_set"] = f.set(&size.n_set);
    results["n_final"] = json!(size.n_final);
    Ok(b.finish(inputs, results))
}

fn symbol(t: &str) -> Res<Symbol> {
    if let Some(tag) = t.strip_prefix('I') {
        if tag.is_empty() {
            return Ok(Symbol::Indet(0));
        }
        return tag
            .parse()
            .map(Symbol::Indet)
            .map_err(|_| CliError::Usage(format!("bad indeterminacy tag {t:?}")));
    }
    t.parse()
        .map(Symbol::Value)
        .map_err(|_| CliError::Usage(format!("bad symbol {t:?}")))
}

enum Symbol {
    Value(f64),
    Indet(u32),
}

#[allow(clippy::too_many_arguments)]
fn randgen(
    b: Builder,
    mode: Mode,
    seed: u64,
    len: usize,
    values: &str,
    indet: u32,
    weights: Option<&str>,
    lo: Option<i64>,
    hi: Option<i64>,
) -> Res<(Vec<String>, Report)> {
    let f = b.ctx.fmt;
    let mut rng = NeutroRng::seed(seed);
    let mut inputs = json!({ "mode": format!("{mode:?}").to_lowercase(), "seed": seed, "len": len });
    let text: Vec<String> = match mode {
        Mode::Uniform => {
            let vals = parse_reals(values)?;
            inputs["values"] = f.nums(&vals);
            inputs["indet"] = json!(indet);
            rng.uniform_sequence(&vals, indet, len)?
                .iter()
                .map(|s| s.to_string())
                .collect()
        }
        Mode::Weighted => {
            let mut vals = Vec::new();
            let mut ind = Vec::new();
            for (k, w) in pairs(required(weights, "--weights")?, "--weights")? {
                let w: f64 = w.parse().map_err(|_| CliError::Usage(format!("bad weight {w:?}")))?;
                match symbol(&k)? {
                    Symbol::Value(v) => vals.push((v, w)),
                    Symbol::Indet(t) => ind.push((t, w)),
                }
            }
            let alphabet = WeightedAlphabet::new(vals, ind)?;
            inputs["weights"] = json!(weights);
            rng.weighted_sequence(&alphabet, len)?
                .iter()
                .map(|s| s.to_string())
                .collect()
        }
        Mode::Balls => {
            let (lo, hi) = (
                lo.ok_or_else(|| CliError::Usage("balls needs --lo".into()))?,
                hi.ok_or_else(|| CliError::Usage("balls needs --hi".into()))?,
            );
            inputs["lo"] = json!(lo);
            inputs["hi"] = json!(hi);
            rng.interval_ball_draw(lo, hi, len)?
                .iter()
                .map(|s| s.to_string())
                .collect()
        }
    };
    let report = b.finish(inputs, json!({ "sequence": text }));
    Ok((text, report))
}

fn nn_arg(v: Option<&str>, flag: &str) -> Res<NeutroNumber> {
    required(v, flag)?.trim().parse().map_err(CliError::Domain)
}

fn nnalg(
    b: Builder,
    op: NnOp,
    a: Option<&str>,
    rhs: Option<&str>,
    k: Option<u32>,
    coeffs: Option<&str>,
) -> Res<Report> {
    let f = b.ctx.fmt;
    let nns = |v: &[NeutroNumber]| Value::Array(v.iter().map(|x| f.nn(x)).collect());
    let op_name = format!("{op:?}").to_lowercase();
    let (inputs, results) = match op {
        NnOp::Add | NnOp::Sub | NnOp::Mul | NnOp::Div => {
            let (u, v) = (nn_arg(a, "--a")?, nn_arg(rhs, "--b")?);
            let r = match op {
                NnOp::Add => u + v,
                NnOp::Sub => u - v,
                NnOp::Mul => u * v,
                _ => u.div(v)?,
            };
            (json!({ "a": f.nn(&u), "b": f.nn(&v) }), json!({ "value": f.nn(&r) }))
        }
        NnOp::Sqrt => {
            let u = nn_arg(a, "--a")?;
            let roots = u.sqrt_all()?;
            (
                json!({ "a": f.nn(&u) }),
                json!({ "roots": nns(&roots), "principal": f.nn(&u.sqrt_principal()?) }),
            )
        }
        NnOp::Root => {
            let u = nn_arg(a, "--a")?;
            let k = k.ok_or_else(|| CliError::Usage("root needs --k".into()))?;
            (
                json!({ "a": f.nn(&u), "k": k }),
                json!({ "roots": nns(&u.nth_roots(k)?) }),
            )
        }
        NnOp::Solve => {
            let c: Vec<NeutroNumber> = parse_all(&tokenize(required(coeffs, "--coeffs")?))?;
            let [c2, c1, c0] = c[..] else {
                return Err(CliError::Usage("--coeffs takes three a+bI numbers".into()));
            };
            let q = NeutroQuadratic::new(c2, c1, c0)?;
            let fact: Vec<Value> = q
                .factorings()?
                .iter()
                .map(|fc| json!({ "leading": f.nn(&fc.leading), "root1": f.nn(&fc.root1), "root2": f.nn(&fc.root2) }))
                .collect();
            (
                json!({ "coeffs": nns(&c) }),
                json!({ "solutions": nns(&q.solve()?), "factorings": fact }),
            )
        }
        NnOp::Csqrt => {
            let z: NeutroComplex = required(a, "--a")?.trim().parse()?;
            if z.c != 0.0 || z.d != 0.0 {
                return Err(CliError::Usage(
                    "csqrt takes an ordinary complex number; use ncsqrt".into(),
                ));
            }
            let roots: Vec<Value> = complex_sqrt(Complex64::new(z.a, z.b))
                .iter()
                .map(|r| Value::String(NeutroComplex::new(r.re, r.im, 0.0, 0.0).to_string_sig(f.sig)))
                .collect();
            (json!({ "a": z.to_string_sig(f.sig) }), json!({ "roots": roots }))
        }
        NnOp::Ncsqrt => {
            let z: NeutroComplex = required(a, "--a")?.trim().parse()?;
            let roots: Vec<Value> = z
                .sqrt_all()?
                .iter()
                .map(|r| Value::String(r.to_string_sig(f.sig)))
                .collect();
            (json!({ "a": z.to_string_sig(f.sig) }), json!({ "roots": roots }))
        }
    };
    let mut inputs = inputs;
    inputs["op"] = json!(op_name);
    Ok(b.finish(inputs, results))
}
