//! Numbers `a + bI` with `I² = I`, and their complex analogue `a + bi + cI + diI`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, ParseError, Result};
use crate::setval::{format_number, scan_number};

/// `a + bI`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct NeutroNumber {
    pub a: f64,
    pub b: f64,
}

/// `a + bi + cI + diI`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct NeutroComplex {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

/// `coeff2·x² + coeff1·x + coeff0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NeutroQuadratic {
    coeff2: NeutroNumber,
    coeff1: NeutroNumber,
    coeff0: NeutroNumber,
}

/// `leading·(x − root1)(x − root2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Factoring {
    pub leading: NeutroNumber,
    pub root1: NeutroNumber,
    pub root2: NeutroNumber,
}

pub const I: NeutroNumber = NeutroNumber { a: 0.0, b: 1.0 };

fn close(x: f64, y: f64, tol: f64) -> bool {
    (x - y).abs() <= tol * x.abs().max(y.abs()).max(1.0)
}

impl NeutroNumber {
    pub fn new(a: f64, b: f64) -> Self {
        NeutroNumber { a: a + 0.0, b: b + 0.0 }
    }

    pub fn real(a: f64) -> Self {
        NeutroNumber::new(a, 0.0)
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0.0 && self.b == 0.0
    }

    /// Coefficientwise comparison with relative tolerance.
    pub fn approx_eq(&self, other: &NeutroNumber, tol: f64) -> bool {
        close(self.a, other.a, tol) && close(self.b, other.b, tol)
    }

    /// Defined when `v.a ≠ 0` and `v.a ≠ −v.b`.
    #[allow(clippy::should_implement_trait)]
    pub fn div(self, v: NeutroNumber) -> Result<NeutroNumber> {
        if v.a == 0.0 {
            return Err(Error::UndefinedDivision {
                reason: format!("divisor {v} has zero determinate part"),
            });
        }
        if v.a + v.b == 0.0 {
            return Err(Error::UndefinedDivision {
                reason: format!("divisor {v} has a = -b"),
            });
        }
        let x = self.a / v.a;
        let y = (v.a * self.b - self.a * v.b) / (v.a * (v.a + v.b));
        Ok(NeutroNumber::new(x, y))
    }

    pub fn powi(self, n: u32) -> NeutroNumber {
        let mut acc = NeutroNumber::real(1.0);
        let mut base = self;
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            k >>= 1;
        }
        acc
    }

    /// All real square roots `x + yI` (up to four).
    pub fn sqrt_all(self) -> Result<Vec<NeutroNumber>> {
        let total = self.a + self.b;
        if self.a < 0.0 || total < 0.0 {
            return Err(Error::NoRealRoot);
        }
        let (r, s) = (self.a.sqrt(), total.sqrt());
        let branches = [(r, -r + s), (r, -r - s), (-r, r - s), (-r, r + s)];
        let mut out: Vec<NeutroNumber> = Vec::with_capacity(4);
        for (x, y) in branches {
            let v = NeutroNumber::new(x, y);
            if !out.iter().any(|w| w.approx_eq(&v, 1e-12)) {
                out.push(v);
            }
        }
        Ok(out)
    }

    /// The root with `x ≥ 0`, `x + y ≥ 0` and the smallest `|y|`.
    pub fn sqrt_principal(self) -> Result<NeutroNumber> {
        self.sqrt_all()?
            .into_iter()
            .filter(|v| v.a >= 0.0 && v.a + v.b >= 0.0)
            .min_by(|p, q| p.b.abs().total_cmp(&q.b.abs()))
            .ok_or(Error::NoRealRoot)
    }

    /// All real `n`-th roots, found numerically branch by branch.
    pub fn nth_roots(self, n: u32) -> Result<Vec<NeutroNumber>> {
        if n < 2 {
            return Err(Error::InvalidParameter("root index must be at least 2".into()));
        }
        let even = n.is_multiple_of(2);
        if even && self.a < 0.0 {
            return Err(Error::NoRealRoot);
        }
        let r = if even {
            self.a.powf(1.0 / n as f64)
        } else {
            self.a.signum() * self.a.abs().powf(1.0 / n as f64)
        };
        let xs: Vec<f64> = if even && r != 0.0 { vec![r, -r] } else { vec![r] };

        let mut out: Vec<NeutroNumber> = Vec::new();
        for x in xs {
            let coeffs = indeterminate_poly(x, n, self.b);
            let reach = (self.a + self.b).abs().powf(1.0 / n as f64);
            let range = 1000f64.max(2.0 * (x.abs() + reach) + 1.0);
            let scale = 1f64.max(self.b.abs()).max(self.a.abs());
            let mut ys = real_roots(&coeffs, -range, range, scale);
            ys.sort_by(f64::total_cmp);
            for y in ys {
                let v = NeutroNumber::new(x, y);
                let back = v.powi(n);
                let tol = 1e-6 * scale;
                if (back.a - self.a).abs() <= tol
                    && (back.b - self.b).abs() <= tol
                    && !out.iter().any(|w| w.approx_eq(&v, 1e-7))
                {
                    out.push(v);
                }
            }
        }
        if out.is_empty() {
            Err(Error::NoRealRoot)
        } else {
            Ok(out)
        }
    }

    pub fn to_string_sig(&self, sig: Option<usize>) -> String {
        write_terms(&[(self.a, ""), (self.b, "I")], sig)
    }
}

/// Coefficients (lowest degree first) of `Σ_{k<n} C(n,k) y^{n−k} x^k − b` in `y`.
fn indeterminate_poly(x: f64, n: u32, b: f64) -> Vec<f64> {
    let n = n as usize;
    let mut coeffs = vec![0.0; n + 1];
    coeffs[0] = -b;
    let mut binom = 1.0;
    for k in 0..n {
        // C(n,k) y^{n-k} x^k
        coeffs[n - k] = binom * x.powi(k as i32);
        binom = binom * (n - k) as f64 / (k + 1) as f64;
    }
    coeffs
}

fn poly_eval(coeffs: &[f64], y: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * y + c)
}

fn poly_deriv_eval(coeffs: &[f64], y: f64) -> f64 {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .rev()
        .fold(0.0, |acc, (k, &c)| acc * y + k as f64 * c)
}

fn newton_polish(coeffs: &[f64], mut y: f64) -> f64 {
    for _ in 0..100 {
        let f = poly_eval(coeffs, y);
        let d = poly_deriv_eval(coeffs, y);
        if f == 0.0 || d == 0.0 || !d.is_finite() {
            break;
        }
        let next = y - f / d;
        if !next.is_finite() {
            break;
        }
        if (next - y).abs() <= 1e-15 * y.abs().max(1.0) {
            y = next;
            break;
        }
        y = next;
    }
    y
}

fn bisect(coeffs: &[f64], mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = poly_eval(coeffs, lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = poly_eval(coeffs, mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Real roots of a polynomial on `[lo, hi]` by grid scan, bisection and Newton
/// polish. Local minima of `|p|` are rescanned on a finer grid so that close
/// pairs and even-multiplicity roots are not missed.
fn real_roots(coeffs: &[f64], lo: f64, hi: f64, scale: f64) -> Vec<f64> {
    let mut out = Vec::new();
    let mut budget = 5000;
    scan(coeffs, lo, hi, 4000, 0, scale, &mut budget, &mut out);
    let mut uniq: Vec<f64> = Vec::new();
    for y in out {
        if !uniq.iter().any(|u| close(*u, y, 1e-7)) {
            uniq.push(y);
        }
    }
    uniq
}

#[allow(clippy::too_many_arguments)]
fn scan(
    coeffs: &[f64],
    lo: f64,
    hi: f64,
    steps: usize,
    depth: u32,
    scale: f64,
    budget: &mut usize,
    out: &mut Vec<f64>,
) {
    if *budget == 0 {
        return;
    }
    *budget -= 1;
    let h = (hi - lo) / steps as f64;
    let grid: Vec<f64> = (0..=steps).map(|i| lo + h * i as f64).collect();
    let vals: Vec<f64> = grid.iter().map(|&y| poly_eval(coeffs, y)).collect();
    for i in 0..steps {
        let (f0, f1) = (vals[i], vals[i + 1]);
        if f0 == 0.0 {
            out.push(grid[i]);
        } else if f1 != 0.0 && (f0 < 0.0) != (f1 < 0.0) {
            let y = bisect(coeffs, grid[i], grid[i + 1]);
            out.push(newton_polish(coeffs, y));
        }
    }
    if vals[steps] == 0.0 {
        out.push(grid[steps]);
    }
    for i in 1..steps {
        let (fp, f, fn_) = (vals[i - 1], vals[i], vals[i + 1]);
        let same_sign = (fp < 0.0) == (f < 0.0) && (f < 0.0) == (fn_ < 0.0);
        // ignore dips that are only rounding noise
        let dip = fp.abs().min(fn_.abs()) - f.abs();
        if f != 0.0 && same_sign && f.abs() < fp.abs() && f.abs() <= fn_.abs() && dip > 1e-9 * f.abs() {
            if f.abs() <= 1e-12 * scale {
                // touches zero without crossing: even multiplicity
                out.push(newton_polish(coeffs, grid[i]));
            } else if depth < 40 {
                scan(coeffs, grid[i - 1], grid[i + 1], 64, depth + 1, scale, budget, out);
            }
        }
    }
}

impl Add for NeutroNumber {
    type Output = NeutroNumber;
    fn add(self, v: NeutroNumber) -> NeutroNumber {
        NeutroNumber::new(self.a + v.a, self.b + v.b)
    }
}

impl Sub for NeutroNumber {
    type Output = NeutroNumber;
    fn sub(self, v: NeutroNumber) -> NeutroNumber {
        NeutroNumber::new(self.a - v.a, self.b - v.b)
    }
}

impl Mul for NeutroNumber {
    type Output = NeutroNumber;
    fn mul(self, v: NeutroNumber) -> NeutroNumber {
        NeutroNumber::new(self.a * v.a, self.a * v.b + v.a * self.b + self.b * v.b)
    }
}

impl Neg for NeutroNumber {
    type Output = NeutroNumber;
    fn neg(self) -> NeutroNumber {
        NeutroNumber::new(-self.a, -self.b)
    }
}

impl From<f64> for NeutroNumber {
    fn from(a: f64) -> Self {
        NeutroNumber::real(a)
    }
}

impl fmt::Display for NeutroNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_sig(None))
    }
}

impl FromStr for NeutroNumber {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = parse_terms(s, &["I"])?;
        Ok(NeutroNumber::new(t[0], t[1]))
    }
}

/// Horner evaluation; coefficients run from the highest degree down.
pub fn nn_poly_eval(coeffs: &[NeutroNumber], x: NeutroNumber) -> NeutroNumber {
    coeffs.iter().fold(NeutroNumber::default(), |acc, &c| acc * x + c)
}

impl NeutroQuadratic {
    pub fn new(coeff2: NeutroNumber, coeff1: NeutroNumber, coeff0: NeutroNumber) -> Result<Self> {
        if coeff2.is_zero() {
            return Err(Error::InvalidParameter("leading coefficient is 0".into()));
        }
        Ok(NeutroQuadratic { coeff2, coeff1, coeff0 })
    }

    pub fn coeffs(&self) -> [NeutroNumber; 3] {
        [self.coeff2, self.coeff1, self.coeff0]
    }

    pub fn eval(&self, x: NeutroNumber) -> NeutroNumber {
        nn_poly_eval(&self.coeffs(), x)
    }

    /// Quadratic formula over every square-root branch of the discriminant.
    pub fn solve(&self) -> Result<Vec<NeutroNumber>> {
        let (a, b, c) = (self.coeff2, self.coeff1, self.coeff0);
        let disc = b * b - NeutroNumber::real(4.0) * a * c;
        let two_a = NeutroNumber::real(2.0) * a;
        let mut out: Vec<NeutroNumber> = Vec::new();
        for s in disc.sqrt_all()? {
            for branch in [-b + s, -b - s] {
                let x = branch.div(two_a)?;
                if !out.iter().any(|w| w.approx_eq(&x, 1e-9)) {
                    out.push(x);
                }
            }
        }
        Ok(out)
    }

    /// Root pairs `{xi, xj}` (possibly `i = j`) with `A(x − xi)(x − xj)` equal to the quadratic.
    pub fn factorings(&self) -> Result<Vec<Factoring>> {
        let roots = self.solve()?;
        let (a, b, c) = (self.coeff2, self.coeff1, self.coeff0);
        let mut out = Vec::new();
        for i in 0..roots.len() {
            for j in i..roots.len() {
                let (p, q) = (roots[i], roots[j]);
                let lin = -(a * (p + q));
                let cst = a * p * q;
                if lin.approx_eq(&b, 1e-9) && cst.approx_eq(&c, 1e-9) {
                    out.push(Factoring {
                        leading: a,
                        root1: p,
                        root2: q,
                    });
                }
            }
        }
        Ok(out)
    }
}

impl Factoring {
    /// Coefficients of the expanded product, highest degree first.
    pub fn expand(&self) -> [NeutroNumber; 3] {
        let a = self.leading;
        [a, -(a * (self.root1 + self.root2)), a * self.root1 * self.root2]
    }
}

/// Both square roots of `a + bi`, principal (nonnegative real part) first.
pub fn complex_sqrt(z: Complex64) -> Vec<Complex64> {
    let (a, b) = (z.re, z.im);
    if a == 0.0 && b == 0.0 {
        return vec![Complex64::new(0.0, 0.0)];
    }
    let r = a.hypot(b);
    let roots = if b == 0.0 {
        if a > 0.0 {
            vec![Complex64::new(a.sqrt(), 0.0), Complex64::new(-a.sqrt(), 0.0)]
        } else {
            vec![Complex64::new(0.0, (-a).sqrt()), Complex64::new(0.0, -(-a).sqrt())]
        }
    } else {
        // y from x² − y² = a, x² + y² = r; x from 2xy = b
        let y0 = ((r - a) / 2.0).sqrt();
        let mut cands = Vec::new();
        for y in [y0, -y0] {
            let x = b / (2.0 * y);
            let w = Complex64::new(x, y);
            let sq = w * w;
            if close(sq.re, a, 1e-9) && close(sq.im, b, 1e-9) {
                cands.push(w);
            }
        }
        cands
    };
    let mut roots = roots;
    roots.sort_by(|p, q| q.re.total_cmp(&p.re).then(q.im.total_cmp(&p.im)));
    roots
}

/// All `n` roots of `z` in polar form, ordered by argument.
pub fn complex_nth_root(z: Complex64, n: u32) -> Result<Vec<Complex64>> {
    if n < 2 {
        return Err(Error::InvalidParameter("root index must be at least 2".into()));
    }
    if z.re == 0.0 && z.im == 0.0 {
        return Ok(vec![Complex64::new(0.0, 0.0)]);
    }
    let (r, theta) = z.to_polar();
    let m = r.powf(1.0 / n as f64);
    let snap = |v: f64| if v.abs() <= 1e-12 * m { 0.0 } else { v };
    Ok((0..n)
        .map(|k| {
            let w = Complex64::from_polar(m, (theta + 2.0 * std::f64::consts::PI * k as f64) / n as f64);
            Complex64::new(snap(w.re), snap(w.im))
        })
        .collect())
}

impl NeutroComplex {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        NeutroComplex {
            a: a + 0.0,
            b: b + 0.0,
            c: c + 0.0,
            d: d + 0.0,
        }
    }

    fn parts(&self) -> (Complex64, Complex64) {
        (Complex64::new(self.a, self.b), Complex64::new(self.c, self.d))
    }

    fn from_parts(p: Complex64, q: Complex64) -> Self {
        NeutroComplex::new(p.re, p.im, q.re, q.im)
    }

    pub fn norm(&self) -> f64 {
        (self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d).sqrt()
    }

    /// `(P + QI)² = P² + (2PQ + Q²)I` with `P = a + bi`, `Q = c + di`.
    pub fn square(&self) -> NeutroComplex {
        let (p, q) = self.parts();
        NeutroComplex::from_parts(p * p, 2.0 * p * q + q * q)
    }

    pub fn approx_eq(&self, other: &NeutroComplex, tol: f64) -> bool {
        close(self.a, other.a, tol)
            && close(self.b, other.b, tol)
            && close(self.c, other.c, tol)
            && close(self.d, other.d, tol)
    }

    /// Real solutions of `(x + yi + zI + wiI)² = self`.
    ///
    /// `x + yi` comes from [`complex_sqrt`]; the remaining pair `(z, w)` is
    /// solved by Newton's method from a 5×5 grid of starting points.
    pub fn sqrt_all(&self) -> Result<Vec<NeutroComplex>> {
        let (p, q) = self.parts();
        let scale = self.norm().max(1.0);
        let reach = self.norm() + 1.0;
        let grid = [-reach, -reach / 2.0, 0.0, reach / 2.0, reach];
        let snap = |v: f64| if v.abs() <= 1e-12 * scale { 0.0 } else { v };

        let mut out: Vec<NeutroComplex> = Vec::new();
        let mut best = f64::INFINITY;
        for root in complex_sqrt(p) {
            let (x, y) = (root.re, root.im);
            let residual = |z: f64, w: f64| {
                let f1 = 2.0 * x * z - 2.0 * y * w + z * z - w * w - q.re;
                let f2 = 2.0 * x * w + 2.0 * y * z + 2.0 * z * w - q.im;
                (f1, f2)
            };
            for &z0 in &grid {
                for &w0 in &grid {
                    let (mut z, mut w) = (z0, w0);
                    for _ in 0..200 {
                        let (f1, f2) = residual(z, w);
                        if f1 == 0.0 && f2 == 0.0 {
                            break;
                        }
                        let (u, v) = (x + z, y + w);
                        // Jacobian [[2u, -2v], [2v, 2u]]
                        let det = 4.0 * (u * u + v * v);
                        if det == 0.0 {
                            break;
                        }
                        let dz = (2.0 * u * f1 + 2.0 * v * f2) / det;
                        let dw = (-2.0 * v * f1 + 2.0 * u * f2) / det;
                        z -= dz;
                        w -= dw;
                        if !z.is_finite() || !w.is_finite() {
                            break;
                        }
                        // a double root only converges linearly, so keep going while steps are real
                        if dz.abs() + dw.abs() <= 1e-17 * (z.abs() + w.abs()) {
                            break;
                        }
                    }
                    if !z.is_finite() || !w.is_finite() {
                        continue;
                    }
                    let (f1, f2) = residual(z, w);
                    let res = f1.hypot(f2);
                    best = best.min(res);
                    if res <= 1e-8 * scale {
                        let cand = NeutroComplex::new(snap(x), snap(y), snap(z), snap(w));
                        if !out.iter().any(|s| s.approx_eq(&cand, 1e-7)) {
                            out.push(cand);
                        }
                    }
                }
            }
        }
        if out.is_empty() {
            Err(Error::NoRealSolution { residual: best })
        } else {
            Ok(out)
        }
    }

    pub fn to_string_sig(&self, sig: Option<usize>) -> String {
        write_terms(&[(self.a, ""), (self.b, "i"), (self.c, "I"), (self.d, "iI")], sig)
    }
}

impl fmt::Display for NeutroComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_sig(None))
    }
}

impl FromStr for NeutroComplex {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = parse_terms(s, &["i", "I", "iI"])?;
        Ok(NeutroComplex::new(t[0], t[1], t[2], t[3]))
    }
}

fn write_terms(terms: &[(f64, &str)], sig: Option<usize>) -> String {
    let mut out = String::new();
    for &(coef, unit) in terms {
        let text = format_number(coef, sig);
        if text == "0" {
            continue;
        }
        let body = match (text.as_str(), unit) {
            (_, "") => text.clone(),
            ("1", _) => unit.to_string(),
            ("-1", _) => format!("-{unit}"),
            _ => format!("{text}{unit}"),
        };
        if !out.is_empty() && !body.starts_with('-') {
            out.push('+');
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Parse a signed sum of terms; `units` lists the suffixes after the real one.
/// Returns coefficients in the order real, then `units`.
fn parse_terms(src: &str, units: &[&str]) -> Result<Vec<f64>> {
    let mut coefs = vec![0.0; units.len() + 1];
    let bytes = src.as_bytes();
    let skip_ws = |mut i: usize| {
        while i < bytes.len() && bytes[i].is_ascii_whitespace() {
            i += 1;
        }
        i
    };
    let mut i = skip_ws(0);
    if i >= bytes.len() {
        return Err(ParseError::new(i, "empty input").into());
    }
    let mut first = true;
    while i < bytes.len() {
        let term_start = i;
        let mut sign = 1.0;
        if bytes[i] == b'+' || bytes[i] == b'-' {
            if bytes[i] == b'-' {
                sign = -1.0;
            }
            i = skip_ws(i + 1);
        } else if !first {
            return Err(ParseError::new(i, "expected '+' or '-'").into());
        }
        let (mag, had_number) = match scan_number(src, i) {
            Ok((x, end)) if bytes[i] != b'+' && bytes[i] != b'-' => {
                i = end;
                (x, true)
            }
            _ => (1.0, false),
        };
        // longest matching unit suffix
        let mut slot = 0;
        let mut best_len = 0;
        for (k, u) in units.iter().enumerate() {
            if src[i..].starts_with(u) && u.len() > best_len {
                slot = k + 1;
                best_len = u.len();
            }
        }
        if best_len == 0 && src[i..].starts_with("Ii") && units.contains(&"iI") {
            slot = units.iter().position(|u| *u == "iI").unwrap() + 1;
            best_len = 2;
        }
        if !had_number && best_len == 0 {
            return Err(ParseError::new(term_start, "expected a term").into());
        }
        i = skip_ws(i + best_len);
        coefs[slot] += sign * mag;
        first = false;
    }
    Ok(coefs.into_iter().map(|c| c + 0.0).collect())
}
