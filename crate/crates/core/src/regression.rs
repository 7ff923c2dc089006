//! Least-squares lines over set-valued points.

use crate::error::{Error, Result};
use crate::setval::{self, SetValue};

#[derive(Debug, Clone, PartialEq)]
pub struct SetPoint {
    pub x: SetValue,
    pub y: SetValue,
}

impl SetPoint {
    pub fn new(x: SetValue, y: SetValue) -> Self {
        SetPoint { x, y }
    }
}

/// Column sums used by the fit.
#[derive(Debug, Clone, PartialEq)]
pub struct Sums {
    pub sx: SetValue,
    pub sy: SetValue,
    pub sxx: SetValue,
    pub sxy: SetValue,
    pub syy: SetValue,
}

impl Sums {
    pub fn of(points: &[SetPoint]) -> Sums {
        let sq = |v: &SetValue| v.pow(2).expect("power 2");
        let xs: Vec<SetValue> = points.iter().map(|p| p.x.clone()).collect();
        let ys: Vec<SetValue> = points.iter().map(|p| p.y.clone()).collect();
        let xx: Vec<SetValue> = points.iter().map(|p| sq(&p.x)).collect();
        let xy: Vec<SetValue> = points.iter().map(|p| p.x.mul(&p.y)).collect();
        let yy: Vec<SetValue> = points.iter().map(|p| sq(&p.y)).collect();
        Sums {
            sx: setval::sum(&xs),
            sy: setval::sum(&ys),
            sxx: setval::sum(&xx),
            sxy: setval::sum(&xy),
            syy: setval::sum(&yy),
        }
    }
}

/// `ŷ = a + b·x`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearModel {
    pub intercept_a: SetValue,
    pub slope_b: SetValue,
    pub sums: Sums,
    pub n: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScatterKind {
    Point,
    SegmentX,
    SegmentY,
    Rectangle,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScatterObject {
    pub kind: ScatterKind,
    pub x: SetValue,
    pub y: SetValue,
}

/// A value together with its intersection with the admissible range.
#[derive(Debug, Clone, PartialEq)]
pub struct Bounded {
    pub raw: SetValue,
    /// `None` when the raw value misses the range entirely.
    pub clipped: Option<SetValue>,
}

impl Bounded {
    fn new(raw: SetValue, lo: f64, hi: f64) -> Bounded {
        let clipped = raw.clip(lo, hi);
        Bounded { raw, clipped }
    }

    /// Whether clipping changed anything.
    pub fn was_clipped(&self) -> bool {
        self.clipped.as_ref() != Some(&self.raw)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Deneutrosify {
    Midpoint,
    ChosenPoints(f64, f64),
}

fn crisp_n(n: usize) -> SetValue {
    SetValue::crisp(n as f64)
}

/// `b = (Sxy − Sx·Sy/n) / (Sxx − Sx²/n)`, `a = ȳ − b·x̄`.
pub fn ls_fit(points: &[SetPoint]) -> Result<LinearModel> {
    let n = points.len();
    if n < 2 {
        return Err(Error::TooFewPoints(n));
    }
    let sums = Sums::of(points);
    let nn = crisp_n(n);
    let num = sums.sxy.sub(&sums.sx.mul(&sums.sy).div(&nn)?);
    let den = sums.sxx.sub(&sums.sx.pow(2)?.div(&nn)?);
    let slope_b = num.div(&den).map_err(|e| match e {
        Error::DivisorContainsZero => Error::DegenerateX,
        other => other,
    })?;
    let xbar = sums.sx.div(&nn)?;
    let ybar = sums.sy.div(&nn)?;
    let intercept_a = ybar.sub(&slope_b.mul(&xbar));
    Ok(LinearModel {
        intercept_a,
        slope_b,
        sums,
        n,
    })
}

impl LinearModel {
    /// A model from given coefficients, with sums taken from `points`.
    pub fn with_coefficients(intercept_a: SetValue, slope_b: SetValue, points: &[SetPoint]) -> LinearModel {
        LinearModel {
            intercept_a,
            slope_b,
            sums: Sums::of(points),
            n: points.len(),
        }
    }

    pub fn predict(&self, x: &SetValue) -> SetValue {
        self.intercept_a.add(&self.slope_b.mul(x))
    }
}

pub fn predict(m: &LinearModel, x: &SetValue) -> SetValue {
    m.predict(x)
}

pub fn residuals(points: &[SetPoint], m: &LinearModel) -> Vec<SetValue> {
    points.iter().map(|p| p.y.sub(&m.predict(&p.x))).collect()
}

/// Whether each observed `y` lies inside the hull of its prediction.
pub fn coverage_check(points: &[SetPoint], m: &LinearModel) -> Vec<bool> {
    points
        .iter()
        .map(|p| p.y.is_subset_of(&m.predict(&p.x).hull()))
        .collect()
}

/// `Σ midpoint(residual_i)²`.
pub fn nss_resid_midpoint(points: &[SetPoint], m: &LinearModel) -> f64 {
    residuals(points, m).iter().map(|r| r.midpoint().powi(2)).sum()
}

/// `Σy² − a·Σy − b·Σxy`.
pub fn nss_resid_set(points: &[SetPoint], m: &LinearModel) -> SetValue {
    let s = Sums::of(points);
    s.syy.sub(&m.intercept_a.mul(&s.sy)).sub(&m.slope_b.mul(&s.sxy))
}

/// `Σy² − (Σy)²/n`.
pub fn nss_to(points: &[SetPoint]) -> SetValue {
    let s = Sums::of(points);
    let sq = s.sy.pow(2).expect("power 2");
    s.syy.sub(&sq.div(&crisp_n(points.len())).expect("n positive"))
}

/// `1 − resid/to`, raw and intersected with `[0, 1]`.
pub fn r_squared(resid: f64, to: &SetValue) -> Result<Bounded> {
    let raw = SetValue::crisp(1.0).sub(&SetValue::crisp(resid).div(to)?);
    Ok(Bounded::new(raw, 0.0, 1.0))
}

/// Product-moment coefficient, raw and intersected with `[−1, 1]`.
pub fn correlation(points: &[SetPoint]) -> Result<Bounded> {
    let s = Sums::of(points);
    let nn = crisp_n(points.len());
    let num = nn.mul(&s.sxy).sub(&s.sx.mul(&s.sy));
    let vx = nn.mul(&s.sxx).sub(&s.sx.pow(2)?);
    let vy = nn.mul(&s.syy).sub(&s.sy.pow(2)?);
    if vx.infimum() <= 0.0 || vy.infimum() <= 0.0 {
        return Err(Error::DegenerateVariance);
    }
    let raw = num.div(&vx.mul(&vy).sqrt()?)?;
    Ok(Bounded::new(raw, -1.0, 1.0))
}

/// Collapse the model to a crisp line.
pub fn deneutrosify(m: &LinearModel, strategy: Deneutrosify) -> Result<(f64, f64)> {
    match strategy {
        Deneutrosify::Midpoint => Ok((m.intercept_a.midpoint(), m.slope_b.midpoint())),
        Deneutrosify::ChosenPoints(a, b) => {
            for (v, set) in [(a, &m.intercept_a), (b, &m.slope_b)] {
                if !set.contains(v) {
                    return Err(Error::PointOutsideSet {
                        value: v,
                        set: set.to_string(),
                    });
                }
            }
            Ok((a, b))
        }
    }
}

/// Per point: (midpoint of prediction, midpoint of residual).
pub fn midpoint_report(points: &[SetPoint], m: &LinearModel) -> Vec<(f64, f64)> {
    points
        .iter()
        .map(|p| {
            let yhat = m.predict(&p.x);
            (yhat.midpoint(), p.y.sub(&yhat).midpoint())
        })
        .collect()
}

pub fn scatter_objects(points: &[SetPoint]) -> Vec<ScatterObject> {
    points
        .iter()
        .map(|p| {
            let kind = match (p.x.is_crisp(), p.y.is_crisp()) {
                (true, true) => ScatterKind::Point,
                (false, true) => ScatterKind::SegmentX,
                (true, false) => ScatterKind::SegmentY,
                (false, false) => ScatterKind::Rectangle,
            };
            ScatterObject {
                kind,
                x: p.x.clone(),
                y: p.y.clone(),
            }
        })
        .collect()
}
