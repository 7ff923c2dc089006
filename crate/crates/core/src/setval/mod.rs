//! Set values: crisp numbers, intervals, finite sets and unions of those.
//!
//! Arithmetic follows two rules. Combinations of crisp numbers and finite sets
//! are exact elementwise (Minkowski) results, and a crisp operand maps every
//! part of the other operand exactly. Anything else that touches an interval
//! or a union collapses to the hull interval of the exact result. Open/closed
//! endpoint flags are carried along for display and membership tests only: an
//! endpoint of a result is open when every operand combination producing it
//! involves an open endpoint.

mod parse;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub use parse::parse_setvalue;
pub(crate) use parse::scan_number;

/// Three-way outcome of [`SetValue::order_cmp`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ordering3 {
    Less,
    Equal,
    Greater,
}

impl From<Ordering3> for Ordering {
    fn from(o: Ordering3) -> Ordering {
        match o {
            Ordering3::Less => Ordering::Less,
            Ordering3::Equal => Ordering::Equal,
            Ordering3::Greater => Ordering::Greater,
        }
    }
}

/// A bounded interval with independently open or closed ends.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
    lo_open: bool,
    hi_open: bool,
}

impl Interval {
    pub fn new(lo: f64, hi: f64, lo_open: bool, hi_open: bool) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "interval endpoints must be finite, got ({lo}, {hi})"
            )));
        }
        if lo > hi {
            return Err(Error::EmptySet(format!("lower endpoint {lo} exceeds upper {hi}")));
        }
        if lo == hi && (lo_open || hi_open) {
            return Err(Error::EmptySet(format!("degenerate open interval at {lo}")));
        }
        Ok(Interval {
            lo: lo + 0.0,
            hi: hi + 0.0,
            lo_open,
            hi_open,
        })
    }

    pub fn closed(lo: f64, hi: f64) -> Result<Self> {
        Interval::new(lo, hi, false, false)
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn lo_open(&self) -> bool {
        self.lo_open
    }

    pub fn hi_open(&self) -> bool {
        self.hi_open
    }

    fn contains(&self, x: f64) -> bool {
        let above = if self.lo_open { x > self.lo } else { x >= self.lo };
        let below = if self.hi_open { x < self.hi } else { x <= self.hi };
        above && below
    }

    fn contains_span(&self, other: &Interval) -> bool {
        let lo_ok = other.lo > self.lo || (other.lo == self.lo && (!self.lo_open || other.lo_open));
        let hi_ok = other.hi < self.hi || (other.hi == self.hi && (!self.hi_open || other.hi_open));
        lo_ok && hi_ok
    }
}

/// A number, interval, finite set or union of those.
///
/// Values built through the constructors (or the parser) are normalized:
/// degenerate closed intervals and singleton finite sets collapse to
/// [`SetValue::Crisp`], and union parts are merged, disjoint and sorted.
#[derive(Debug, Clone, PartialEq)]
pub enum SetValue {
    Crisp(f64),
    Interval(Interval),
    /// Strictly increasing, at least two elements.
    Finite(Vec<f64>),
    /// At least two pairwise disjoint parts sorted by infimum; no nested unions.
    Union(Vec<SetValue>),
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Atom {
    Point(f64),
    Span(Interval),
}

impl Atom {
    fn as_span(self) -> Interval {
        match self {
            Atom::Point(x) => Interval {
                lo: x,
                hi: x,
                lo_open: false,
                hi_open: false,
            },
            Atom::Span(s) => s,
        }
    }

    fn lo(&self) -> f64 {
        match self {
            Atom::Point(x) => *x,
            Atom::Span(s) => s.lo,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Op {
    Add,
    Sub,
    Mul,
    Div,
}

impl Op {
    fn apply(self, x: f64, y: f64) -> f64 {
        match self {
            Op::Add => x + y,
            Op::Sub => x - y,
            Op::Mul => x * y,
            Op::Div => x / y,
        }
    }
}

/// Candidate endpoint: value plus whether it is excluded from the set.
#[derive(Debug, Clone, Copy)]
struct Bound {
    value: f64,
    open: bool,
}

fn lowest(cands: &[Bound]) -> Bound {
    let value = cands.iter().map(|b| b.value).fold(f64::INFINITY, f64::min);
    let open = cands.iter().filter(|b| b.value == value).all(|b| b.open);
    Bound { value, open }
}

fn highest(cands: &[Bound]) -> Bound {
    let value = cands.iter().map(|b| b.value).fold(f64::NEG_INFINITY, f64::max);
    let open = cands.iter().filter(|b| b.value == value).all(|b| b.open);
    Bound { value, open }
}

fn span_from_bounds(lo: Bound, hi: Bound) -> Atom {
    if lo.value == hi.value {
        Atom::Point(lo.value + 0.0)
    } else {
        Atom::Span(Interval {
            lo: lo.value + 0.0,
            hi: hi.value + 0.0,
            lo_open: lo.open,
            hi_open: hi.open,
        })
    }
}

/// Exact image of `a op b` for two spans (hull for mul/div, which is exact
/// for connected operands). `b` must not contain zero when dividing.
fn span_op(op: Op, a: Interval, b: Interval) -> Atom {
    match op {
        Op::Add => span_from_bounds(
            Bound {
                value: a.lo + b.lo,
                open: a.lo_open || b.lo_open,
            },
            Bound {
                value: a.hi + b.hi,
                open: a.hi_open || b.hi_open,
            },
        ),
        Op::Sub => span_from_bounds(
            Bound {
                value: a.lo - b.hi,
                open: a.lo_open || b.hi_open,
            },
            Bound {
                value: a.hi - b.lo,
                open: a.hi_open || b.lo_open,
            },
        ),
        Op::Mul | Op::Div => {
            let ends_a = [(a.lo, a.lo_open), (a.hi, a.hi_open)];
            let ends_b = [(b.lo, b.lo_open), (b.hi, b.hi_open)];
            let mut cands = Vec::with_capacity(4);
            for &(x, xo) in &ends_a {
                for &(y, yo) in &ends_b {
                    // a closed zero factor pins the product at zero
                    let pinned = (x == 0.0 && !xo) || (op == Op::Mul && y == 0.0 && !yo);
                    cands.push(Bound {
                        value: op.apply(x, y),
                        open: (xo || yo) && !pinned,
                    });
                }
            }
            span_from_bounds(lowest(&cands), highest(&cands))
        }
    }
}

fn atom_map_monotone(atom: Atom, f: impl Fn(f64) -> f64, increasing: bool) -> Atom {
    match atom {
        Atom::Point(x) => Atom::Point(f(x) + 0.0),
        Atom::Span(s) => {
            let (a, b) = (f(s.lo), f(s.hi));
            if increasing {
                span_from_bounds(
                    Bound {
                        value: a,
                        open: s.lo_open,
                    },
                    Bound {
                        value: b,
                        open: s.hi_open,
                    },
                )
            } else {
                span_from_bounds(
                    Bound {
                        value: b,
                        open: s.hi_open,
                    },
                    Bound {
                        value: a,
                        open: s.lo_open,
                    },
                )
            }
        }
    }
}

fn real_root(x: f64, n: u32) -> f64 {
    match n {
        2 => x.sqrt(),
        3 => x.cbrt(),
        _ if x < 0.0 => -(-x).powf(1.0 / n as f64),
        _ => x.powf(1.0 / n as f64),
    }
}

fn check_finite(x: f64) -> Result<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Error::InvalidParameter(format!("non-finite value {x}")))
    }
}

/// Two spans overlap or touch so that their union is a single span.
fn mergeable(s: &Interval, t: &Interval) -> bool {
    // assumes s.lo <= t.lo
    t.lo < s.hi || (t.lo == s.hi && (!s.hi_open || !t.lo_open))
}

fn merge_spans(s: Interval, t: Interval) -> Interval {
    let (lo, lo_open) = match s.lo.partial_cmp(&t.lo) {
        Some(Ordering::Less) => (s.lo, s.lo_open),
        Some(Ordering::Greater) => (t.lo, t.lo_open),
        _ => (s.lo, s.lo_open && t.lo_open),
    };
    let (hi, hi_open) = match s.hi.partial_cmp(&t.hi) {
        Some(Ordering::Greater) => (s.hi, s.hi_open),
        Some(Ordering::Less) => (t.hi, t.hi_open),
        _ => (s.hi, s.hi_open && t.hi_open),
    };
    Interval {
        lo,
        hi,
        lo_open,
        hi_open,
    }
}

impl SetValue {
    pub fn crisp(x: f64) -> Self {
        SetValue::Crisp(x + 0.0)
    }

    /// Closed interval `[lo, hi]`.
    pub fn interval(lo: f64, hi: f64) -> Result<Self> {
        SetValue::interval_with(lo, hi, false, false)
    }

    /// Open interval `(lo, hi)`.
    pub fn open_interval(lo: f64, hi: f64) -> Result<Self> {
        SetValue::interval_with(lo, hi, true, true)
    }

    pub fn interval_with(lo: f64, hi: f64, lo_open: bool, hi_open: bool) -> Result<Self> {
        let iv = Interval::new(lo, hi, lo_open, hi_open)?;
        Ok(SetValue::from_atoms(vec![Atom::Span(iv)]).expect("nonempty"))
    }

    pub fn finite(elements: impl IntoIterator<Item = f64>) -> Result<Self> {
        let atoms = elements
            .into_iter()
            .map(|x| check_finite(x).map(Atom::Point))
            .collect::<Result<Vec<_>>>()?;
        SetValue::from_atoms(atoms)
    }

    /// Union of arbitrary parts; overlapping parts are merged.
    pub fn union(parts: impl IntoIterator<Item = SetValue>) -> Result<Self> {
        let atoms = parts.into_iter().flat_map(|p| p.atoms()).collect();
        SetValue::from_atoms(atoms)
    }

    fn atoms(&self) -> Vec<Atom> {
        match self {
            SetValue::Crisp(x) => vec![Atom::Point(*x)],
            SetValue::Interval(iv) => vec![Atom::Span(*iv)],
            SetValue::Finite(xs) => xs.iter().map(|&x| Atom::Point(x)).collect(),
            SetValue::Union(parts) => parts.iter().flat_map(|p| p.atoms()).collect(),
        }
    }

    fn is_discrete(&self) -> bool {
        matches!(self, SetValue::Crisp(_) | SetValue::Finite(_))
    }

    fn from_atoms(atoms: Vec<Atom>) -> Result<Self> {
        let mut points: Vec<f64> = Vec::new();
        let mut spans: Vec<Interval> = Vec::new();
        for a in atoms {
            match a {
                Atom::Point(x) => points.push(x + 0.0),
                Atom::Span(s) if s.lo == s.hi => points.push(s.lo + 0.0),
                Atom::Span(s) => spans.push(s),
            }
        }
        if points.iter().any(|x| x.is_nan()) {
            return Err(Error::InvalidParameter("NaN in set".into()));
        }

        // Merge spans, absorbing points that sit on open endpoints, until stable.
        loop {
            spans.sort_by(|a, b| a.lo.total_cmp(&b.lo).then(b.lo_open.cmp(&a.lo_open).reverse()));
            let mut merged: Vec<Interval> = Vec::with_capacity(spans.len());
            for s in spans.drain(..) {
                match merged.last_mut() {
                    Some(last) if mergeable(last, &s) => *last = merge_spans(*last, s),
                    _ => merged.push(s),
                }
            }
            spans = merged;

            let mut changed = false;
            points.retain(|&p| {
                for s in spans.iter_mut() {
                    if s.contains(p) {
                        return false;
                    }
                    if p == s.lo && s.lo_open {
                        s.lo_open = false;
                        changed = true;
                        return false;
                    }
                    if p == s.hi && s.hi_open {
                        s.hi_open = false;
                        changed = true;
                        return false;
                    }
                }
                true
            });
            if !changed {
                break;
            }
        }

        points.sort_by(f64::total_cmp);
        points.dedup();

        let mut items: Vec<Atom> = points
            .into_iter()
            .map(Atom::Point)
            .chain(spans.into_iter().map(Atom::Span))
            .collect();
        items.sort_by(|a, b| a.lo().total_cmp(&b.lo()));

        let mut parts: Vec<SetValue> = Vec::new();
        let mut run: Vec<f64> = Vec::new();
        let flush = |run: &mut Vec<f64>, parts: &mut Vec<SetValue>| match run.len() {
            0 => {}
            1 => parts.push(SetValue::Crisp(run.pop().unwrap())),
            _ => parts.push(SetValue::Finite(std::mem::take(run))),
        };
        for it in items {
            match it {
                Atom::Point(x) => run.push(x),
                Atom::Span(s) => {
                    flush(&mut run, &mut parts);
                    parts.push(SetValue::Interval(s));
                }
            }
        }
        flush(&mut run, &mut parts);

        match parts.len() {
            0 => Err(Error::EmptySet("no elements".into())),
            1 => Ok(parts.pop().unwrap()),
            _ => Ok(SetValue::Union(parts)),
        }
    }

    fn lower_bound(&self) -> Bound {
        match self {
            SetValue::Crisp(x) => Bound { value: *x, open: false },
            SetValue::Interval(iv) => Bound {
                value: iv.lo,
                open: iv.lo_open,
            },
            SetValue::Finite(xs) => Bound {
                value: xs[0],
                open: false,
            },
            SetValue::Union(parts) => parts[0].lower_bound(),
        }
    }

    fn upper_bound(&self) -> Bound {
        match self {
            SetValue::Crisp(x) => Bound { value: *x, open: false },
            SetValue::Interval(iv) => Bound {
                value: iv.hi,
                open: iv.hi_open,
            },
            SetValue::Finite(xs) => Bound {
                value: xs[xs.len() - 1],
                open: false,
            },
            SetValue::Union(parts) => parts[parts.len() - 1].upper_bound(),
        }
    }

    pub fn infimum(&self) -> f64 {
        self.lower_bound().value
    }

    pub fn supremum(&self) -> f64 {
        self.upper_bound().value
    }

    /// `(inf + sup) / 2`.
    pub fn midpoint(&self) -> f64 {
        (self.infimum() + self.supremum()) / 2.0
    }

    pub fn width(&self) -> f64 {
        self.supremum() - self.infimum()
    }

    pub fn is_crisp(&self) -> bool {
        matches!(self, SetValue::Crisp(_))
    }

    pub fn as_crisp(&self) -> Option<f64> {
        match self {
            SetValue::Crisp(x) => Some(*x),
            _ => None,
        }
    }

    /// Closed interval `[inf, sup]` (a crisp value when inf = sup).
    pub fn hull(&self) -> SetValue {
        let (lo, hi) = (self.infimum(), self.supremum());
        if lo == hi {
            SetValue::Crisp(lo)
        } else {
            SetValue::Interval(Interval {
                lo,
                hi,
                lo_open: false,
                hi_open: false,
            })
        }
    }

    /// Hull that keeps the open/closed flags of the extreme endpoints.
    fn hull_with_flags(&self) -> SetValue {
        let (lo, hi) = (self.lower_bound(), self.upper_bound());
        match span_from_bounds(lo, hi) {
            Atom::Point(x) => SetValue::Crisp(x),
            Atom::Span(s) => SetValue::Interval(s),
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.atoms().iter().any(|a| match a {
            Atom::Point(p) => *p == x,
            Atom::Span(s) => s.contains(x),
        })
    }

    /// Whether every element of `self` belongs to `other`.
    pub fn is_subset_of(&self, other: &SetValue) -> bool {
        let theirs = other.atoms();
        self.atoms().iter().all(|a| {
            theirs.iter().any(|t| match (a, t) {
                (Atom::Point(p), Atom::Point(q)) => p == q,
                (Atom::Point(p), Atom::Span(s)) => s.contains(*p),
                (Atom::Span(_), Atom::Point(_)) => false,
                (Atom::Span(x), Atom::Span(s)) => s.contains_span(x),
            })
        })
    }

    /// Intersection with the closed interval `[lo, hi]`; `None` when empty.
    pub fn clip(&self, lo: f64, hi: f64) -> Option<SetValue> {
        let window = Interval {
            lo,
            hi,
            lo_open: false,
            hi_open: false,
        };
        let atoms: Vec<Atom> = self
            .atoms()
            .into_iter()
            .filter_map(|a| match a {
                Atom::Point(p) => window.contains(p).then_some(Atom::Point(p)),
                Atom::Span(s) => {
                    let (l, lo_open) = if s.lo < lo { (lo, false) } else { (s.lo, s.lo_open) };
                    let (h, hi_open) = if s.hi > hi { (hi, false) } else { (s.hi, s.hi_open) };
                    if l < h {
                        Some(Atom::Span(Interval {
                            lo: l,
                            hi: h,
                            lo_open,
                            hi_open,
                        }))
                    } else if l == h && !lo_open && !hi_open {
                        Some(Atom::Point(l))
                    } else {
                        None
                    }
                }
            })
            .collect();
        SetValue::from_atoms(atoms).ok()
    }

    fn binary(&self, other: &SetValue, op: Op) -> Result<SetValue> {
        if op == Op::Div && other.hull_touches_zero() {
            return Err(Error::DivisorContainsZero);
        }
        let (xs, ys) = (self.atoms(), other.atoms());
        if self.is_discrete() && other.is_discrete() {
            let pts = xs
                .iter()
                .flat_map(|x| ys.iter().map(move |y| (x.lo(), y.lo())))
                .map(|(x, y)| Atom::Point(op.apply(x, y)))
                .collect();
            return SetValue::from_atoms(pts);
        }
        let results: Vec<Atom> = xs
            .iter()
            .flat_map(|x| ys.iter().map(move |y| span_op(op, x.as_span(), y.as_span())))
            .collect();
        let exact = SetValue::from_atoms(results)?;
        if self.is_crisp() || other.is_crisp() {
            Ok(exact)
        } else {
            Ok(exact.hull_with_flags())
        }
    }

    /// Zero lies in the closure of some part (so a quotient would be unbounded).
    fn hull_touches_zero(&self) -> bool {
        self.atoms().iter().any(|a| match a {
            Atom::Point(p) => *p == 0.0,
            Atom::Span(s) => s.lo <= 0.0 && 0.0 <= s.hi,
        })
    }

    pub fn add(&self, other: &SetValue) -> SetValue {
        self.binary(other, Op::Add).expect("addition of nonempty sets")
    }

    pub fn sub(&self, other: &SetValue) -> SetValue {
        self.binary(other, Op::Sub).expect("subtraction of nonempty sets")
    }

    pub fn mul(&self, other: &SetValue) -> SetValue {
        self.binary(other, Op::Mul).expect("multiplication of nonempty sets")
    }

    pub fn div(&self, other: &SetValue) -> Result<SetValue> {
        self.binary(other, Op::Div)
    }

    pub fn neg(&self) -> SetValue {
        self.scale(-1.0)
    }

    pub fn scale(&self, k: f64) -> SetValue {
        self.mul(&SetValue::Crisp(k))
    }

    /// True image `{x^n : x in s}`.
    pub fn pow(&self, n: u32) -> Result<SetValue> {
        if n == 0 {
            return Err(Error::InvalidParameter("power must be a positive integer".into()));
        }
        let atoms = self
            .atoms()
            .into_iter()
            .map(|a| match a {
                Atom::Point(x) => Atom::Point(x.powi(n as i32)),
                Atom::Span(s) if n % 2 == 1 || s.lo >= 0.0 => atom_map_monotone(a, |x| x.powi(n as i32), true),
                Atom::Span(s) if s.hi <= 0.0 => atom_map_monotone(a, |x| x.powi(n as i32), false),
                Atom::Span(s) => {
                    let (l, h) = ((-s.lo).powi(n as i32), s.hi.powi(n as i32));
                    let top = highest(&[
                        Bound {
                            value: l,
                            open: s.lo_open,
                        },
                        Bound {
                            value: h,
                            open: s.hi_open,
                        },
                    ]);
                    span_from_bounds(
                        Bound {
                            value: 0.0,
                            open: false,
                        },
                        top,
                    )
                }
            })
            .collect();
        SetValue::from_atoms(atoms)
    }

    /// Elementwise principal `n`-th root (real root for odd `n`).
    pub fn nth_root(&self, n: u32) -> Result<SetValue> {
        if n < 2 {
            return Err(Error::InvalidParameter("root index must be at least 2".into()));
        }
        if n.is_multiple_of(2) && self.infimum() < 0.0 {
            return Err(Error::NegativeUnderEvenRoot);
        }
        let atoms = self
            .atoms()
            .into_iter()
            .map(|a| atom_map_monotone(a, |x| real_root(x, n), true))
            .collect();
        SetValue::from_atoms(atoms)
    }

    pub fn sqrt(&self) -> Result<SetValue> {
        self.nth_root(2)
    }

    /// Midpoint order, ties broken by infimum.
    pub fn order_cmp(&self, other: &SetValue) -> Ordering3 {
        match self
            .midpoint()
            .total_cmp(&other.midpoint())
            .then(self.infimum().total_cmp(&other.infimum()))
        {
            Ordering::Less => Ordering3::Less,
            Ordering::Equal => Ordering3::Equal,
            Ordering::Greater => Ordering3::Greater,
        }
    }

    /// Render with numbers rounded to `sig` significant digits (`None` = full).
    pub fn to_string_sig(&self, sig: Option<usize>) -> String {
        let mut out = String::new();
        self.write_into(&mut out, sig, false);
        out
    }

    fn write_into(&self, out: &mut String, sig: Option<usize>, in_union: bool) {
        let num = |x: f64| format_number(x, sig);
        match self {
            SetValue::Crisp(x) if in_union => out.push_str(&format!("{{{}}}", num(*x))),
            SetValue::Crisp(x) => out.push_str(&num(*x)),
            SetValue::Interval(iv) => out.push_str(&format!(
                "{}{},{}{}",
                if iv.lo_open { '(' } else { '[' },
                num(iv.lo),
                num(iv.hi),
                if iv.hi_open { ')' } else { ']' },
            )),
            SetValue::Finite(xs) => {
                let body: Vec<String> = xs.iter().map(|&x| num(x)).collect();
                out.push_str(&format!("{{{}}}", body.join(",")));
            }
            SetValue::Union(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        out.push('U');
                    }
                    p.write_into(out, sig, true);
                }
            }
        }
    }
}

/// Left fold of [`SetValue::add`]; the empty sum is 0.
pub fn sum<'a>(values: impl IntoIterator<Item = &'a SetValue>) -> SetValue {
    values.into_iter().fold(SetValue::Crisp(0.0), |acc, v| acc.add(v))
}

/// Left fold of [`SetValue::mul`]; the empty product is 1.
pub fn product<'a>(values: impl IntoIterator<Item = &'a SetValue>) -> SetValue {
    values.into_iter().fold(SetValue::Crisp(1.0), |acc, v| acc.mul(v))
}

/// Shortest round-trip rendering, or rounded to `sig` significant digits.
pub fn format_number(x: f64, sig: Option<usize>) -> String {
    let x = match sig {
        Some(d) => round_sig(x, d),
        None => x,
    };
    format!("{}", x + 0.0)
}

pub fn round_sig(x: f64, sig: usize) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let s = format!("{:.*e}", sig.max(1) - 1, x);
    s.parse().unwrap_or(x)
}

impl From<f64> for SetValue {
    fn from(x: f64) -> Self {
        SetValue::crisp(x)
    }
}

impl fmt::Display for SetValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_sig(None))
    }
}

impl FromStr for SetValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_setvalue(s)
    }
}

impl Serialize for SetValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SetValue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
