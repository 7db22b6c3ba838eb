//! Globally adaptive Clenshaw–Curtis quadrature with a nested error estimate.
//!
//! Each panel is integrated with an `n`-interval rule and the `n/2` rule that
//! reuses every other node; their difference is the panel error estimate.
//! The panel with the largest estimate is bisected until the total estimate
//! falls below the requested tolerance.

use std::cell::RefCell;
use std::collections::{BinaryHeap, HashMap};
use std::cmp::Ordering;
use std::rc::Rc;

use super::complex::ComplexHP;
use super::real::Real;
use crate::error::{Error, Result};

/// Rule pair used on each panel.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    /// 17-point rule checked against the embedded 9-point rule.
    Standard,
    /// 33-point rule checked against the embedded 17-point rule.
    Medium,
    /// 129-point rule checked against the embedded 65-point rule.
    High,
}

impl Rule {
    fn intervals(self) -> usize {
        match self {
            Rule::Standard => 16,
            Rule::Medium => 32,
            Rule::High => 128,
        }
    }
}

/// How a panel's error is estimated from the difference d between its two rules.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorModel {
    /// d itself; safe but pessimistic once the coarse rule has converged.
    Difference,
    /// d·(d/M), M the panel's magnitude scale. Doubling the nodes on an analytic
    /// integrand roughly squares the relative error, so once d/M is small the fine
    /// rule is far more accurate than d suggests.
    Spectral,
}

#[derive(Clone, Debug)]
pub struct QuadOptions {
    pub rule: Rule,
    pub max_subdivisions: usize,
    pub error_model: ErrorModel,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions { rule: Rule::Medium, max_subdivisions: 4000, error_model: ErrorModel::Difference }
    }
}

#[derive(Clone, Debug)]
pub struct QuadratureResult {
    pub value: ComplexHP,
    pub abs_error_estimate: Real,
    pub subdivisions: usize,
}

struct CcTable {
    nodes: Vec<Real>,
    w_hi: Vec<Real>,
    w_lo: Vec<Real>,
}

thread_local! {
    static TABLES: RefCell<HashMap<(usize, usize), Rc<CcTable>>> = RefCell::new(HashMap::new());
}

/// Clenshaw–Curtis weights on [-1, 1] for the `n`-interval rule, given cos(π t / n) for t in 0..2n.
fn cc_weights(n: usize, cos_tab: &[Real], prec: usize) -> Vec<Real> {
    let half = n / 2;
    (0..=n)
        .map(|j| {
            let mut s = Real::one(prec);
            for m in 1..=half {
                let b = if m == half { 1 } else { 2 };
                let c = &cos_tab[(2 * j * m) % (2 * n)];
                let d = Real::from_i64((4 * m * m - 1) as i64, prec);
                s = s - c * Real::from_i64(b, prec) / d;
            }
            let cj = if j == 0 || j == n { 1 } else { 2 };
            s * Real::from_i64(cj, prec) / Real::from_i64(n as i64, prec)
        })
        .collect()
}

fn table(rule: Rule, prec: usize) -> Rc<CcTable> {
    let n = rule.intervals();
    TABLES.with(|t| {
        if let Some(tab) = t.borrow().get(&(n, prec)) {
            return tab.clone();
        }
        let p = prec + 32;
        let pi = Real::pi(p);
        let cos_tab: Vec<Real> = (0..2 * n)
            .map(|t| (&pi * Real::from_i64(t as i64, p) / Real::from_i64(n as i64, p)).cos())
            .collect();
        let cos_half: Vec<Real> = (0..n).map(|t| cos_tab[2 * t].clone()).collect();
        let w_hi = cc_weights(n, &cos_tab, p);
        let w_lo = cc_weights(n / 2, &cos_half, p);
        let tab = Rc::new(CcTable {
            nodes: cos_tab[..=n].iter().map(|x| x.with_prec(prec)).collect(),
            w_hi: w_hi.into_iter().map(|x| x.with_prec(prec)).collect(),
            w_lo: w_lo.into_iter().map(|x| x.with_prec(prec)).collect(),
        });
        t.borrow_mut().insert((n, prec), tab.clone());
        tab
    })
}

struct Panel {
    a: Real,
    b: Real,
    value: ComplexHP,
    err: Real,
    key: f64,
}

impl PartialEq for Panel {
    fn eq(&self, o: &Self) -> bool {
        self.key == o.key
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Panel {
    fn cmp(&self, o: &Self) -> Ordering {
        self.key.partial_cmp(&o.key).unwrap_or(Ordering::Equal)
    }
}

fn panel<F: Fn(&Real) -> ComplexHP>(f: &F, a: &Real, b: &Real, tab: &CcTable, prec: usize, model: ErrorModel) -> Panel {
    let two = Real::from_i64(2, prec);
    let mid = (a + b) / &two;
    let hw = (b - a) / &two;
    let mut hi = ComplexHP::zero(prec);
    let mut lo = ComplexHP::zero(prec);
    let mut peak = Real::zero(prec);
    for (j, x) in tab.nodes.iter().enumerate() {
        let fx = f(&(&mid + &(&hw * x)));
        if model == ErrorModel::Spectral {
            peak = Real::max(&peak, &fx.abs());
        }
        hi = &hi + &fx.scale(&tab.w_hi[j]);
        if j % 2 == 0 {
            lo = &lo + &fx.scale(&tab.w_lo[j / 2]);
        }
    }
    let value = hi.scale(&hw);
    let mut err = (&value - &lo.scale(&hw)).abs();
    if model == ErrorModel::Spectral {
        let scale = &peak * &hw.abs() * Real::from_i64(2, prec);
        if err < scale {
            err = &err * &(&err / &scale);
        }
    }
    let key = err.log2_abs();
    Panel { a: a.clone(), b: b.clone(), value, err, key }
}

/// Integrates `f` over `[a, b]` with the default options.
pub fn quad_finite<F: Fn(&Real) -> ComplexHP>(f: &F, a: &Real, b: &Real, tol: &Real) -> Result<QuadratureResult> {
    quad_finite_with(f, a, b, tol, &QuadOptions::default())
}

pub fn quad_finite_with<F: Fn(&Real) -> ComplexHP>(
    f: &F,
    a: &Real,
    b: &Real,
    tol: &Real,
    opts: &QuadOptions,
) -> Result<QuadratureResult> {
    if tol.is_negative() || tol.is_zero() {
        return Err(Error::InvalidArgument("quadrature tolerance must be positive".into()));
    }
    let prec = a.prec().max(b.prec());
    let tab = table(opts.rule, prec);
    let mut heap = BinaryHeap::new();
    let first = panel(f, a, b, &tab, prec, opts.error_model);
    let mut total_err = first.err.clone();
    heap.push(first);
    let mut subdivisions = 0usize;
    while total_err > *tol {
        if subdivisions >= opts.max_subdivisions {
            let value = heap.iter().fold(ComplexHP::zero(prec), |acc, p| &acc + &p.value);
            return Err(Error::QuadratureBudget {
                best: format!("{:.20}", value),
                err: total_err.to_sci(6),
                subdivisions,
            });
        }
        let worst = heap.pop().expect("non-empty panel set");
        let mid = (&worst.a + &worst.b) / Real::from_i64(2, prec);
        let left = panel(f, &worst.a, &mid, &tab, prec, opts.error_model);
        let right = panel(f, &mid, &worst.b, &tab, prec, opts.error_model);
        total_err = &total_err - &worst.err + &left.err + &right.err;
        heap.push(left);
        heap.push(right);
        subdivisions += 1;
        if subdivisions % 64 == 0 {
            total_err = heap.iter().fold(Real::zero(prec), |acc, p| acc + &p.err);
        }
    }
    let mut panels: Vec<Panel> = heap.into_vec();
    panels.sort_by(|x, y| x.a.partial_cmp(&y.a).unwrap_or(Ordering::Equal));
    let value = panels.iter().fold(ComplexHP::zero(prec), |acc, p| &acc + &p.value);
    let err = panels.iter().fold(Real::zero(prec), |acc, p| acc + &p.err);
    Ok(QuadratureResult { value, abs_error_estimate: err, subdivisions })
}

/// Integrates over the real line an integrand dominated by `envelope · e^{-c x²}`.
///
/// The line is truncated to `[-X, X]` with the Gaussian tail below `tol/4`,
/// and the remaining budget is passed to [`quad_finite_with`].
pub fn quad_decay<F: Fn(&Real) -> ComplexHP>(
    f: &F,
    c: &ComplexHP,
    envelope: &Real,
    tol: &Real,
    opts: &QuadOptions,
) -> Result<QuadratureResult> {
    if c.re.is_negative() || c.re.is_zero() {
        return Err(Error::InvalidArgument("quad_decay requires Re c > 0".into()));
    }
    let prec = c.prec().max(tol.prec());
    let four = Real::from_i64(4, prec);
    let x = (((&four / tol).ln() + (Real::one(prec) + envelope).ln()) / &c.re).sqrt();
    let x = Real::max(&x, &Real::one(prec));
    let zero = Real::zero(prec);
    let half_tol = (tol * Real::from_ratio(3, 8, prec)).with_prec(prec);
    let left = quad_finite_with(f, &-&x, &zero, &half_tol, opts)?;
    let right = quad_finite_with(f, &zero, &x, &half_tol, opts)?;
    Ok(QuadratureResult {
        value: &left.value + &right.value,
        abs_error_estimate: left.abs_error_estimate + right.abs_error_estimate + tol / four,
        subdivisions: left.subdivisions + right.subdivisions,
    })
}
