use std::f64::consts::PI;

use super::band::FrequencyBand;
use super::frame::{frame_unchecked, ModeCoordinate, Polarization, PolarizationFrame};
use crate::error::{domain, Result};

/// Gauss-Legendre nodes and weights on `[-1, 1]`, nodes ascending.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Tricomi's initial guess for the i-th largest root
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
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
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Quadrature orders in `Omega`, `cos(theta)` and `phi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridOrders {
    pub n_omega: usize,
    pub n_theta: usize,
    pub n_phi: usize,
}

impl GridOrders {
    pub fn new(n_omega: usize, n_theta: usize, n_phi: usize) -> Self {
        GridOrders { n_omega, n_theta, n_phi }
    }

    pub fn doubled(&self) -> Self {
        GridOrders::new(2 * self.n_omega, 2 * self.n_theta, 2 * self.n_phi)
    }
}

impl Default for GridOrders {
    fn default() -> Self {
        GridOrders::new(32, 32, 16)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralNode {
    pub omega: f64,
    pub weight: f64,
}

/// A direction on the unit sphere with its polarization frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngularNode {
    pub theta: f64,
    pub phi: f64,
    pub cos_theta: f64,
    pub sin_theta: f64,
    pub weight: f64,
    pub frame: PolarizationFrame,
}

/// Borrowed view of one `(Omega, theta, phi)` node.
#[derive(Debug, Clone, Copy)]
pub struct GridNode<'a> {
    pub index: usize,
    pub omega: f64,
    pub angular: &'a AngularNode,
    /// Product weight for the measure `dOmega d(cos theta) dphi`.
    pub weight: f64,
}

impl GridNode<'_> {
    pub fn coordinate(&self, sigma: Polarization) -> ModeCoordinate {
        ModeCoordinate { omega: self.omega, theta: self.angular.theta, phi: self.angular.phi, sigma }
    }
}

/// Tensor-product rule over the band and the sphere.
///
/// Gauss-Legendre in `Omega` over `[alpha, beta]`, Gauss-Legendre in
/// `u = cos(theta)` over `[-1, 1]` and a uniform rule in `phi`. Weights are
/// for the measure `dOmega du dphi`: the `sin(theta)` Jacobian of
/// `dOmega dtheta dphi` is absorbed by the `u` substitution, so an integrand
/// written against `dtheta` must carry its own `sin(theta)` factor.
///
/// Node `i` combines spectral node `i / n_angular` with angular node
/// `i % n_angular`; angular node `j` is `(theta_{j / n_phi}, phi_{j % n_phi})`.
/// Mode `m` is node `m / 2` with polarization `m % 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureGrid {
    band: FrequencyBand,
    orders: GridOrders,
    spectral: Vec<SpectralNode>,
    angular: Vec<AngularNode>,
}

pub fn build_quadrature(band: FrequencyBand, orders: GridOrders) -> Result<QuadratureGrid> {
    QuadratureGrid::new(band, orders)
}

impl QuadratureGrid {
    pub fn new(band: FrequencyBand, orders: GridOrders) -> Result<Self> {
        if orders.n_omega == 0 || orders.n_theta == 0 || orders.n_phi == 0 {
            return domain("grid orders must all be ≥ 1");
        }
        let half = 0.5 * band.width();
        let mid = 0.5 * (band.alpha() + band.beta());
        let (x, w) = gauss_legendre(orders.n_omega);
        let spectral = x
            .iter()
            .zip(&w)
            .map(|(&x, &w)| SpectralNode { omega: (mid + half * x).clamp(band.alpha(), band.beta()), weight: half * w })
            .collect();

        let (u, wu) = gauss_legendre(orders.n_theta);
        let w_phi = 2.0 * PI / orders.n_phi as f64;
        let mut angular = Vec::with_capacity(orders.n_theta * orders.n_phi);
        for (&u, &wu) in u.iter().zip(&wu) {
            let sin_theta = (1.0 - u * u).sqrt();
            let theta = u.acos();
            for j in 0..orders.n_phi {
                let phi = w_phi * j as f64;
                angular.push(AngularNode {
                    theta,
                    phi,
                    cos_theta: u,
                    sin_theta,
                    weight: wu * w_phi,
                    frame: frame_unchecked(u, sin_theta, phi),
                });
            }
        }
        Ok(QuadratureGrid { band, orders, spectral, angular })
    }

    pub fn band(&self) -> FrequencyBand {
        self.band
    }

    pub fn orders(&self) -> GridOrders {
        self.orders
    }

    pub fn spectral(&self) -> &[SpectralNode] {
        &self.spectral
    }

    pub fn angular(&self) -> &[AngularNode] {
        &self.angular
    }

    pub fn n_nodes(&self) -> usize {
        self.spectral.len() * self.angular.len()
    }

    pub fn n_modes(&self) -> usize {
        2 * self.n_nodes()
    }

    pub fn node(&self, index: usize) -> GridNode<'_> {
        let na = self.angular.len();
        let s = &self.spectral[index / na];
        let a = &self.angular[index % na];
        GridNode { index, omega: s.omega, angular: a, weight: s.weight * a.weight }
    }

    pub fn nodes(&self) -> impl Iterator<Item = GridNode<'_>> + '_ {
        (0..self.n_nodes()).map(move |i| self.node(i))
    }

    pub fn mode(&self, mode: usize) -> ModeCoordinate {
        self.node(mode / 2).coordinate(Polarization::BOTH[mode % 2])
    }

    /// Quadrature weight of each mode, in mode order.
    pub fn mode_weights(&self) -> Vec<f64> {
        self.nodes().flat_map(|n| [n.weight, n.weight]).collect()
    }

    pub fn total_weight(&self) -> f64 {
        self.nodes().map(|n| n.weight).sum()
    }

    /// Discrete `sum_i w_i g(node_i)` over `dOmega du dphi`.
    pub fn integrate<F: Fn(&GridNode<'_>) -> f64>(&self, f: F) -> f64 {
        self.nodes().map(|n| n.weight * f(&n)).sum()
    }
}
