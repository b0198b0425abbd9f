//! Nelder–Mead simplex minimiser used by both fitters.

#[derive(Debug, Clone, Copy)]
pub struct SimplexOptions {
    pub max_iterations: usize,
    /// Relative spread of objective values across the simplex.
    pub f_tolerance: f64,
    /// Largest vertex distance from the best vertex.
    pub x_tolerance: f64,
    pub initial_step: f64,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        SimplexOptions {
            max_iterations: 10_000,
            f_tolerance: 1e-8,
            x_tolerance: 1e-6,
            initial_step: 0.1,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SimplexOutcome {
    pub x: Vec<f64>,
    pub f: f64,
    pub iterations: usize,
    pub evaluations: usize,
    pub converged: bool,
    pub diameter: f64,
}

const REFLECT: f64 = 1.0;
const EXPAND: f64 = 2.0;
const CONTRACT: f64 = 0.5;
const SHRINK: f64 = 0.5;

/// Minimises `f` from `x0`. Non-finite objective values are treated as `+inf`.
pub fn minimize<F>(mut f: F, x0: &[f64], opts: &SimplexOptions) -> SimplexOutcome
where
    F: FnMut(&[f64]) -> f64,
{
    let dim = x0.len();
    assert!(dim >= 1, "empty starting point");
    let mut evaluations = 0usize;
    let mut eval = |x: &[f64]| {
        evaluations += 1;
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };

    let mut pts: Vec<Vec<f64>> = Vec::with_capacity(dim + 1);
    pts.push(x0.to_vec());
    for i in 0..dim {
        let mut p = x0.to_vec();
        p[i] += opts.initial_step;
        pts.push(p);
    }
    let mut vals: Vec<f64> = pts.iter().map(|p| eval(p)).collect();

    let mut iterations = 0;
    let mut converged = false;
    let mut diameter;
    loop {
        // stable order keeps ties deterministic
        let mut order: Vec<usize> = (0..=dim).collect();
        order.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
        pts = order.iter().map(|&i| pts[i].clone()).collect();
        vals = order.iter().map(|&i| vals[i]).collect();

        diameter = pts[1..]
            .iter()
            .map(|p| {
                p.iter()
                    .zip(&pts[0])
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum::<f64>()
                    .sqrt()
            })
            .fold(0.0, f64::max);
        let spread = vals[dim] - vals[0];
        let scale = vals[0].abs().max(1.0);
        if spread.is_finite() && spread <= opts.f_tolerance * scale && diameter <= opts.x_tolerance {
            converged = true;
            break;
        }
        if iterations >= opts.max_iterations {
            break;
        }
        iterations += 1;

        let centroid: Vec<f64> = (0..dim)
            .map(|j| pts[..dim].iter().map(|p| p[j]).sum::<f64>() / dim as f64)
            .collect();
        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&pts[dim])
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };

        let xr = along(REFLECT);
        let fr = eval(&xr);
        if fr < vals[0] {
            let xe = along(EXPAND);
            let fe = eval(&xe);
            if fe < fr {
                pts[dim] = xe;
                vals[dim] = fe;
            } else {
                pts[dim] = xr;
                vals[dim] = fr;
            }
            continue;
        }
        if fr < vals[dim - 1] {
            pts[dim] = xr;
            vals[dim] = fr;
            continue;
        }
        // outside contraction if the reflection helped at all, inside otherwise
        let xc = along(if fr < vals[dim] { CONTRACT } else { -CONTRACT });
        let fc = eval(&xc);
        if fc < vals[dim].min(fr) {
            pts[dim] = xc;
            vals[dim] = fc;
            continue;
        }
        let best = pts[0].clone();
        for i in 1..=dim {
            let p: Vec<f64> = best
                .iter()
                .zip(&pts[i])
                .map(|(b, x)| b + SHRINK * (x - b))
                .collect();
            vals[i] = eval(&p);
            pts[i] = p;
        }
    }

    SimplexOutcome {
        x: pts[0].clone(),
        f: vals[0],
        iterations,
        evaluations,
        converged,
        diameter,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_rosenbrock_minimum() {
        let rosen = |x: &[f64]| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2);
        let opts = SimplexOptions {
            f_tolerance: 1e-14,
            x_tolerance: 1e-8,
            ..Default::default()
        };
        let out = minimize(rosen, &[-1.2, 1.0], &opts);
        assert!(out.converged);
        assert!((out.x[0] - 1.0).abs() < 1e-5 && (out.x[1] - 1.0).abs() < 1e-5, "{:?}", out.x);
    }

    #[test]
    fn one_dimensional() {
        let out = minimize(|x| (x[0] - 3.0).powi(2), &[0.0], &SimplexOptions::default());
        assert!(out.converged);
        assert!((out.x[0] - 3.0).abs() < 1e-5);
    }

    #[test]
    fn flat_objective_collapses() {
        let out = minimize(|_| 0.0, &[0.0, 0.0], &SimplexOptions::default());
        assert!(out.converged);
        assert!(out.diameter <= 1e-6);
    }

    #[test]
    fn iteration_cap_reports_non_convergence() {
        let opts = SimplexOptions {
            max_iterations: 3,
            ..Default::default()
        };
        let out = minimize(|x| (x[0] - 50.0).powi(2) + x[1].powi(2), &[0.0, 0.0], &opts);
        assert!(!out.converged);
        assert_eq!(out.iterations, 3);
    }

    #[test]
    fn nan_is_treated_as_infinite() {
        let out = minimize(
            |x| if x[0] < 0.0 { f64::NAN } else { (x[0] - 1.0).powi(2) },
            &[0.5],
            &SimplexOptions::default(),
        );
        assert!((out.x[0] - 1.0).abs() < 1e-5);
    }
}
