//! Composite Gauss-Legendre quadrature.

use num_complex::Complex64;

/// Nodes and weights of an n-point Gauss-Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Default per-panel order for the oscillatory integrals in this crate.
    pub const DEFAULT_ORDER: usize = 8;

    /// Roots of P_n by Newton iteration from the Chebyshev-like initial guess.
    pub fn new(order: usize) -> Self {
        assert!(order >= 1, "Gauss-Legendre order must be at least 1");
        let n = order;
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Single-panel integral of `f` over `[lo, hi]`.
    pub fn integrate<F: Fn(f64) -> f64>(&self, lo: f64, hi: f64, f: F) -> f64 {
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        let s: f64 = self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| w * f(mid + half * x))
            .sum();
        s * half
    }

    pub fn integrate_complex<F: Fn(f64) -> Complex64>(&self, lo: f64, hi: f64, f: F) -> Complex64 {
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        let s: Complex64 = self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| f(mid + half * x) * w)
            .sum();
        s * half
    }

    /// Composite rule over `panels` equal panels, panel sums combined by
    /// pairwise reduction.
    pub fn composite<F: Fn(f64) -> f64>(&self, lo: f64, hi: f64, panels: usize, f: F) -> f64 {
        let h = (hi - lo) / panels as f64;
        let sums: Vec<f64> = (0..panels)
            .map(|p| {
                let a = lo + p as f64 * h;
                let b = if p + 1 == panels { hi } else { a + h };
                self.integrate(a, b, &f)
            })
            .collect();
        pairwise_sum(&sums)
    }

    pub fn composite_complex<F: Fn(f64) -> Complex64>(&self, lo: f64, hi: f64, panels: usize, f: F) -> Complex64 {
        let h = (hi - lo) / panels as f64;
        let sums: Vec<Complex64> = (0..panels)
            .map(|p| {
                let a = lo + p as f64 * h;
                let b = if p + 1 == panels { hi } else { a + h };
                self.integrate_complex(a, b, &f)
            })
            .collect();
        pairwise_sum(&sums)
    }
}

impl Default for GaussLegendre {
    fn default() -> Self {
        Self::new(Self::DEFAULT_ORDER)
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for j in 2..=n {
        let jf = j as f64;
        let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
        p0 = p1;
        p1 = p2;
    }
    let p = if n == 0 { 1.0 } else { p1 };
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p, d)
}

/// Pairwise (cascade) summation; fixed order regardless of caller.
pub fn pairwise_sum<T>(xs: &[T]) -> T
where
    T: Copy + std::ops::Add<Output = T> + Default,
{
    match xs.len() {
        0 => T::default(),
        1 => xs[0],
        n if n <= 8 => xs[1..].iter().fold(xs[0], |acc, &x| acc + x),
        n => {
            let (l, r) = xs.split_at(n / 2);
            pairwise_sum(l) + pairwise_sum(r)
        }
    }
}
