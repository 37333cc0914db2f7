//! Saddle-point search over the feasible strategy rectangle.
//!
//! Player A picks `p` to maximize `P_A(p, q)` and player B picks `q` to
//! minimize it. A point `(p0, q0)` is accepted as an equilibrium when
//!
//! ```text
//! P_A(p, q0) <= P_A(p0, q0) + br_tol   for all feasible p
//! P_A(p0, q) >= P_A(p0, q0) - br_tol   for all feasible q
//! ```
//!
//! checked on dense one-dimensional scans. Candidates come from a multi-start
//! damped Newton iteration on the finite-difference gradient (interior) and
//! from best-response scans along the four edges (boundary).

use std::fmt;

use rayon::prelude::*;

use crate::engine::QuantumGame;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::strategy::FeasibleDomain;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchSettings<T> {
    /// Central-difference step for the gradient.
    pub fd_step: T,
    /// Step for second differences.
    pub hessian_step: T,
    /// Newton starts per axis.
    pub start_grid: usize,
    pub grad_tol: T,
    /// `br_tol = br_rel_tol * (max - min)` of the sampled surface.
    pub br_rel_tol: T,
    pub dedup_radius: T,
    /// Points in each dense best-response scan.
    pub scan_points: usize,
    /// Surface resolution used to measure the payoff range.
    pub range_resolution: usize,
    pub max_iterations: usize,
}

impl<T: Real> Default for SearchSettings<T> {
    fn default() -> Self {
        Self {
            fd_step: T::lit(1e-5),
            hessian_step: T::lit(1e-4),
            start_grid: 15,
            grad_tol: T::lit(1e-8),
            br_rel_tol: T::lit(1e-6),
            dedup_radius: T::lit(1e-4),
            scan_points: 1001,
            range_resolution: 101,
            max_iterations: 100,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EquilibriumStatus {
    InteriorSaddle,
    BoundaryEquilibrium,
    None,
}

impl EquilibriumStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::InteriorSaddle => "interior-saddle",
            Self::BoundaryEquilibrium => "boundary-equilibrium",
            Self::None => "none",
        }
    }
}

impl fmt::Display for EquilibriumStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Classification of a single candidate point.
#[derive(Debug, Clone, PartialEq)]
pub struct CandidateReport<T> {
    pub status: EquilibriumStatus,
    pub point: (T, T),
    pub value: T,
    pub gradient_norm: T,
    /// `(max_p P(p, q0) - P0, P0 - min_q P(p0, q))`, clamped at zero.
    pub best_response_gaps: (T, T),
    pub on_boundary: bool,
}

impl<T: Real> CandidateReport<T> {
    pub fn is_equilibrium(&self) -> bool {
        self.status != EquilibriumStatus::None
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumReport<T> {
    pub status: EquilibriumStatus,
    pub point: Option<(T, T)>,
    pub value: Option<T>,
    pub gradient_norm: Option<T>,
    pub best_response_gaps: Option<(T, T)>,
    pub candidates_examined: usize,
    pub grad_tol: T,
    pub br_tol: T,
    pub interior_saddles: Vec<CandidateReport<T>>,
    pub boundary_equilibria: Vec<CandidateReport<T>>,
    pub rejected: Vec<CandidateReport<T>>,
}

/// `P_A` sampled on a uniform grid over the feasible rectangle.
#[derive(Debug, Clone, PartialEq)]
pub struct PayoffSurface<T> {
    pub p_grid: Vec<T>,
    pub q_grid: Vec<T>,
    /// Row-major: `values[i * q_grid.len() + j] = P_A(p_grid[i], q_grid[j])`.
    pub values: Vec<T>,
}

impl<T: Real> PayoffSurface<T> {
    pub fn get(&self, i: usize, j: usize) -> T {
        self.values[i * self.q_grid.len() + j]
    }

    pub fn min_value(&self) -> T {
        self.values.iter().copied().fold(T::infinity(), T::min)
    }

    pub fn max_value(&self) -> T {
        self.values.iter().copied().fold(T::neg_infinity(), T::max)
    }

    /// Minimum over `q` for each `p` row.
    pub fn row_minima(&self) -> Vec<T> {
        self.values
            .chunks(self.q_grid.len())
            .map(|row| row.iter().copied().fold(T::infinity(), T::min))
            .collect()
    }

    /// Maximum over `p` for each `q` column.
    pub fn column_maxima(&self) -> Vec<T> {
        let m = self.q_grid.len();
        (0..m)
            .map(|j| (0..self.p_grid.len()).map(|i| self.values[i * m + j]).fold(T::neg_infinity(), T::max))
            .collect()
    }

    /// A's guaranteed payoff on the grid: `max_p min_q`.
    pub fn lower_value(&self) -> T {
        self.row_minima().into_iter().fold(T::neg_infinity(), T::max)
    }

    /// B's guaranteed cap on the grid: `min_q max_p`.
    pub fn upper_value(&self) -> T {
        self.column_maxima().into_iter().fold(T::infinity(), T::min)
    }

    /// Grid points that are mutual best responses within `tol`.
    pub fn grid_equilibria(&self, tol: T) -> Vec<(usize, usize)> {
        let rmin = self.row_minima();
        let cmax = self.column_maxima();
        let m = self.q_grid.len();
        let mut out = Vec::new();
        for (i, &row_min) in rmin.iter().enumerate() {
            for (j, &col_max) in cmax.iter().enumerate() {
                let v = self.values[i * m + j];
                if v >= col_max - tol && v <= row_min + tol {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// Samples `P_A` on a `resolution × resolution` grid spanning both feasible
/// domains. Rows are evaluated concurrently; output order is fixed.
pub fn sample_surface<T: Real>(game: &QuantumGame<T>, resolution: usize) -> Result<PayoffSurface<T>> {
    sample_surface_with(game, resolution, resolution)
}

pub fn sample_surface_with<T: Real>(
    game: &QuantumGame<T>,
    p_points: usize,
    q_points: usize,
) -> Result<PayoffSurface<T>> {
    if p_points < 2 || q_points < 2 {
        return Err(Error::InvalidArgument(format!(
            "surface resolution must be at least 2, got {p_points}x{q_points}"
        )));
    }
    let p_grid = game.domain_a().linspace(p_points);
    let q_grid = game.domain_b().linspace(q_points);
    let ua = p_grid.iter().map(|&p| game.unitary_a(p)).collect::<Result<Vec<_>>>()?;
    let ub = q_grid.iter().map(|&q| game.unitary_b(q)).collect::<Result<Vec<_>>>()?;
    let rows = ua
        .par_iter()
        .map(|a| ub.iter().map(|b| game.payoff_with(a, b)).collect::<Result<Vec<T>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(PayoffSurface {
        p_grid,
        q_grid,
        values: rows.into_iter().flatten().collect(),
    })
}

pub fn find_critical_points<T: Real>(game: &QuantumGame<T>) -> Result<Vec<(T, T)>> {
    EquilibriumFinder::new(game, SearchSettings::default())?.critical_points()
}

pub fn classify<T: Real>(game: &QuantumGame<T>, point: (T, T)) -> Result<CandidateReport<T>> {
    EquilibriumFinder::new(game, SearchSettings::default())?.classify(point)
}

pub fn find_equilibrium<T: Real>(game: &QuantumGame<T>) -> Result<EquilibriumReport<T>> {
    EquilibriumFinder::new(game, SearchSettings::default())?.find()
}

pub struct EquilibriumFinder<'a, T> {
    game: &'a QuantumGame<T>,
    settings: SearchSettings<T>,
    br_tol: T,
}

impl<'a, T: Real> EquilibriumFinder<'a, T> {
    pub fn new(game: &'a QuantumGame<T>, settings: SearchSettings<T>) -> Result<Self> {
        let surface = sample_surface(game, settings.range_resolution)?;
        let (lo, hi) = (surface.min_value(), surface.max_value());
        let scale = T::one() + lo.abs().max(hi.abs());
        let floor = T::lit(64.0) * T::epsilon() * scale;
        let br_tol = (settings.br_rel_tol * (hi - lo)).max(floor);
        Ok(Self { game, settings, br_tol })
    }

    pub fn br_tol(&self) -> T {
        self.br_tol
    }

    pub fn settings(&self) -> &SearchSettings<T> {
        &self.settings
    }

    fn value(&self, p: T, q: T) -> Result<T> {
        self.game.payoff_at(p, q)
    }

    fn da(&self) -> &FeasibleDomain<T> {
        self.game.domain_a()
    }

    fn db(&self) -> &FeasibleDomain<T> {
        self.game.domain_b()
    }

    /// Central differences, falling back to one-sided stencils at the edges.
    pub fn gradient(&self, p: T, q: T) -> Result<(T, T)> {
        let h = self.settings.fd_step;
        let dp = self.partial(p, self.da(), |x| self.value(x, q), h)?;
        let dq = self.partial(q, self.db(), |y| self.value(p, y), h)?;
        Ok((dp, dq))
    }

    fn partial(&self, x: T, dom: &FeasibleDomain<T>, f: impl Fn(T) -> Result<T>, h: T) -> Result<T> {
        let lo = x - h >= dom.p_min;
        let hi = x + h <= dom.p_max;
        match (lo, hi) {
            (true, true) => Ok((f(x + h)? - f(x - h)?) / (h + h)),
            (false, true) => Ok((f(x + h)? - f(x)?) / h),
            (true, false) => Ok((f(x)? - f(x - h)?) / h),
            (false, false) => Err(Error::InvalidArgument("finite-difference step exceeds domain".into())),
        }
    }

    fn hessian(&self, p: T, q: T) -> Result<[[T; 2]; 2]> {
        let h = self.settings.hessian_step;
        let two = T::lit(2.0);
        let f0 = self.value(p, q)?;
        let fpp = (self.value(p + h, q)? - two * f0 + self.value(p - h, q)?) / (h * h);
        let fqq = (self.value(p, q + h)? - two * f0 + self.value(p, q - h)?) / (h * h);
        let fpq = (self.value(p + h, q + h)? - self.value(p + h, q - h)? - self.value(p - h, q + h)?
            + self.value(p - h, q - h)?)
            / (T::lit(4.0) * h * h);
        Ok([[fpp, fpq], [fpq, fqq]])
    }

    fn newton_box(&self) -> ((T, T), (T, T)) {
        let margin = T::lit(2.0) * self.settings.hessian_step;
        (
            (self.da().p_min + margin, self.da().p_max - margin),
            (self.db().p_min + margin, self.db().p_max - margin),
        )
    }

    /// Damped Newton on `grad P = 0`. `None` when the iteration stalls or
    /// keeps pressing against the edge of the box.
    fn newton(&self, start: (T, T)) -> Result<Option<(T, T)>> {
        let ((plo, phi), (qlo, qhi)) = self.newton_box();
        let clamp = |(p, q): (T, T)| -> ((T, T), bool) {
            let cp = p.max(plo).min(phi);
            let cq = q.max(qlo).min(qhi);
            ((cp, cq), cp != p || cq != q)
        };
        let mut x = start;
        let mut g = self.gradient(x.0, x.1)?;
        let mut edge_hits = 0;
        for _ in 0..self.settings.max_iterations {
            let gn = norm(g);
            if gn < self.settings.grad_tol {
                return Ok(Some(x));
            }
            let h = self.hessian(x.0, x.1)?;
            let det = h[0][0] * h[1][1] - h[0][1] * h[1][0];
            let mut directions = Vec::with_capacity(2);
            if det.abs() > T::epsilon() {
                directions.push((
                    -(h[1][1] * g.0 - h[0][1] * g.1) / det,
                    -(-h[1][0] * g.0 + h[0][0] * g.1) / det,
                ));
            }
            // Descent direction for |grad|^2 / 2.
            directions.push((-(h[0][0] * g.0 + h[0][1] * g.1), -(h[1][0] * g.0 + h[1][1] * g.1)));

            let mut accepted = None;
            'dirs: for d in directions {
                let mut t = T::one();
                for _ in 0..40 {
                    let (cand, clamped) = clamp((x.0 + t * d.0, x.1 + t * d.1));
                    let gc = self.gradient(cand.0, cand.1)?;
                    if norm(gc) < gn {
                        accepted = Some((cand, gc, clamped));
                        break 'dirs;
                    }
                    t = t * T::lit(0.5);
                }
            }
            let Some((cand, gc, clamped)) = accepted else {
                return Ok(None);
            };
            edge_hits = if clamped { edge_hits + 1 } else { 0 };
            if edge_hits >= 3 {
                return Ok(None);
            }
            x = cand;
            g = gc;
        }
        Ok((norm(g) < self.settings.grad_tol).then_some(x))
    }

    /// Deduplicated interior stationary points, in start-grid order.
    pub fn critical_points(&self) -> Result<Vec<(T, T)>> {
        let ((plo, phi), (qlo, qhi)) = self.newton_box();
        let n = self.settings.start_grid;
        let frac = |k: usize| T::lit((k + 1) as f64) / T::lit((n + 1) as f64);
        let mut found: Vec<(T, T)> = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let start = (plo + (phi - plo) * frac(i), qlo + (qhi - qlo) * frac(j));
                if let Some(x) = self.newton(start)? {
                    let r = self.settings.dedup_radius;
                    if !found.iter().any(|y| norm((x.0 - y.0, x.1 - y.1)) < r) {
                        found.push(x);
                    }
                }
            }
        }
        Ok(found)
    }

    pub fn classify(&self, point: (T, T)) -> Result<CandidateReport<T>> {
        let (p0, q0) = point;
        if !self.game.contains(p0, q0) {
            return Err(Error::OutOfDomain { p: p0.to_f64_lossy(), q: q0.to_f64_lossy() });
        }
        let v0 = self.value(p0, q0)?;
        let k = self.settings.scan_points;
        let ub0 = self.game.unitary_b(q0)?;
        let ua0 = self.game.unitary_a(p0)?;
        let mut best_p = T::neg_infinity();
        for p in self.da().linspace(k) {
            best_p = best_p.max(self.game.payoff_with(&self.game.unitary_a(p)?, &ub0)?);
        }
        let mut best_q = T::infinity();
        for q in self.db().linspace(k) {
            best_q = best_q.min(self.game.payoff_with(&ua0, &self.game.unitary_b(q)?)?);
        }
        let gaps = ((best_p - v0).max(T::zero()), (v0 - best_q).max(T::zero()));
        let gradient_norm = norm(self.gradient(p0, q0)?);
        let eps = T::lit(1e-9);
        let on_boundary = self.da().on_boundary(p0, eps) || self.db().on_boundary(q0, eps);
        let responds = gaps.0 <= self.br_tol && gaps.1 <= self.br_tol;
        let status = match (responds, on_boundary) {
            (true, true) => EquilibriumStatus::BoundaryEquilibrium,
            (true, false) if gradient_norm < self.settings.grad_tol => EquilibriumStatus::InteriorSaddle,
            _ => EquilibriumStatus::None,
        };
        Ok(CandidateReport {
            status,
            point,
            value: v0,
            gradient_norm,
            best_response_gaps: gaps,
            on_boundary,
        })
    }

    /// Points on the four edges where the edge player's fixed parameter is
    /// met by the other player's best response.
    pub fn boundary_candidates(&self) -> Result<Vec<(T, T)>> {
        let k = self.settings.scan_points;
        let mut out = Vec::new();
        for p_edge in [self.da().p_min, self.da().p_max] {
            let ua = self.game.unitary_a(p_edge)?;
            let f = |q: T| -> Result<T> { self.game.payoff_with(&ua, &self.game.unitary_b(q)?) };
            for q in self.extrema(self.db(), k, &f, false)? {
                out.push((p_edge, q));
            }
        }
        for q_edge in [self.db().p_min, self.db().p_max] {
            let ub = self.game.unitary_b(q_edge)?;
            let f = |p: T| -> Result<T> { self.game.payoff_with(&self.game.unitary_a(p)?, &ub) };
            for p in self.extrema(self.da(), k, &f, true)? {
                out.push((p, q_edge));
            }
        }
        let r = self.settings.dedup_radius;
        let mut deduped: Vec<(T, T)> = Vec::new();
        for x in out {
            if !deduped.iter().any(|y| norm((x.0 - y.0, x.1 - y.1)) < r * T::lit(1e-3)) {
                deduped.push(x);
            }
        }
        Ok(deduped)
    }

    /// Arguments attaining the global max (or min) of `f` on a dense scan,
    /// refined by golden-section search inside each isolated optimum.
    fn extrema(
        &self,
        dom: &FeasibleDomain<T>,
        k: usize,
        f: &impl Fn(T) -> Result<T>,
        maximize: bool,
    ) -> Result<Vec<T>> {
        let grid = dom.linspace(k);
        let sign = if maximize { -T::one() } else { T::one() };
        let vals = grid.iter().map(|&x| f(x).map(|v| sign * v)).collect::<Result<Vec<T>>>()?;
        let best = vals.iter().copied().fold(T::infinity(), T::min);
        let near = |v: T| v <= best + self.br_tol;
        let mut picks = Vec::new();
        let mut i = 0;
        while i < k {
            if !near(vals[i]) {
                i += 1;
                continue;
            }
            let start = i;
            while i + 1 < k && near(vals[i + 1]) {
                i += 1;
            }
            let end = i;
            if start == end {
                let lo = grid[start.saturating_sub(1)];
                let hi = grid[(end + 1).min(k - 1)];
                let g = |x: T| f(x).map(|v| sign * v);
                let x = golden_section_min(&g, lo, hi)?;
                let fx = g(x)?;
                picks.push(if fx <= vals[start] { x } else { grid[start] });
            } else {
                picks.push(grid[start]);
                picks.push(grid[(start + end) / 2]);
                picks.push(grid[end]);
            }
            i += 1;
        }
        Ok(picks)
    }

    pub fn find(&self) -> Result<EquilibriumReport<T>> {
        let mut interior = Vec::new();
        let mut boundary = Vec::new();
        let mut rejected = Vec::new();
        let mut examined = 0;
        let candidates = self.critical_points()?.into_iter().chain(self.boundary_candidates()?);
        for point in candidates {
            examined += 1;
            let report = self.classify(point)?;
            match report.status {
                EquilibriumStatus::InteriorSaddle => interior.push(report),
                EquilibriumStatus::BoundaryEquilibrium => boundary.push(report),
                EquilibriumStatus::None => rejected.push(report),
            }
        }
        let head = interior.first().or(boundary.first()).cloned();
        Ok(EquilibriumReport {
            status: head.as_ref().map_or(EquilibriumStatus::None, |r| r.status),
            point: head.as_ref().map(|r| r.point),
            value: head.as_ref().map(|r| r.value),
            gradient_norm: head.as_ref().map(|r| r.gradient_norm),
            best_response_gaps: head.as_ref().map(|r| r.best_response_gaps),
            candidates_examined: examined,
            grad_tol: self.settings.grad_tol,
            br_tol: self.br_tol,
            interior_saddles: interior,
            boundary_equilibria: boundary,
            rejected,
        })
    }
}

fn norm<T: Real>((a, b): (T, T)) -> T {
    a.hypot(b)
}

fn golden_section_min<T: Real>(f: &impl Fn(T) -> Result<T>, mut a: T, mut b: T) -> Result<T> {
    let inv_phi = (T::lit(5.0).sqrt() - T::one()) / T::lit(2.0);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    for _ in 0..200 {
        if (b - a).abs() <= T::epsilon() * T::lit(4.0) * (T::one() + a.abs()) {
            break;
        }
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d)?;
        }
    }
    Ok(if fc <= fd { c } else { d })
}
