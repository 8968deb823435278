#include "clex/montecarlo.hpp"

#include <algorithm>
#include <bit>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

namespace clex {

namespace {

constexpr int kSmoothBins = 400;

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double shell_volume(double a, double b, int d) {
  return surface_area(d) * (std::pow(b, d) - std::pow(a, d)) / d;
}

}  // namespace

RadialProposal::RadialProposal(const Potential& p, int dimension) : d_(dimension) {
  if (dimension < 1 || dimension > 3) throw std::invalid_argument("dimension must be 1, 2 or 3");
  edges_.push_back(0.0);
  if (p.piecewise_constant()) {
    for (double b : p.breakpoints()) edges_.push_back(b);
  } else {
    const double rmax = p.cutoff.value_or(kMonteCarloRange * p.sigma);
    for (int i = 1; i <= kSmoothBins; ++i) edges_.push_back(rmax * i / kSmoothBins);
  }
  if (edges_.size() < 2) throw std::logic_error("zero proposal mass: potential has no range");
  using boost::math::quadrature::gauss_kronrod;
  std::vector<double> masses;
  for (std::size_t i = 0; i + 1 < edges_.size(); ++i) {
    const double a = edges_[i];
    const double b = edges_[i + 1];
    double m = 0.0;
    if (p.piecewise_constant()) {
      m = mayer_fbar(p, 0.5 * (a + b)) * shell_volume(a, b, d_);
    } else {
      m = surface_area(d_) * gauss_kronrod<double, 31>::integrate(
                                 [&](double r) { return std::pow(r, d_ - 1) * mayer_fbar(p, r); },
                                 a, b, 10, 1e-12);
    }
    masses.push_back(m);
    mass_ += m;
  }
  if (!(mass_ > 0.0)) throw std::logic_error("zero proposal mass");
  double acc = 0.0;
  for (std::size_t i = 0; i < masses.size(); ++i) {
    acc += masses[i];
    cumulative_.push_back(acc / mass_);
    const double vol = shell_volume(edges_[i], edges_[i + 1], d_);
    density_.push_back(masses[i] / mass_ / vol);
  }
  cumulative_.back() = 1.0;
}

double RadialProposal::density(double r) const {
  if (r >= edges_.back()) return 0.0;
  const auto it = std::upper_bound(edges_.begin(), edges_.end(), r);
  const auto bin = static_cast<std::size_t>(it - edges_.begin()) - 1;
  return density_[bin];
}

double RadialProposal::sample(std::mt19937_64& rng, Point& out) const {
  const double u = uniform01(rng);
  auto bin = static_cast<std::size_t>(std::upper_bound(cumulative_.begin(), cumulative_.end(), u) -
                                      cumulative_.begin());
  bin = std::min(bin, cumulative_.size() - 1);
  while (density_[bin] == 0.0 && bin > 0) --bin;
  const double a = std::pow(edges_[bin], d_);
  const double b = std::pow(edges_[bin + 1], d_);
  const double r = std::pow(a + uniform01(rng) * (b - a), 1.0 / d_);
  out = {0.0, 0.0, 0.0};
  switch (d_) {
    case 1: out[0] = uniform01(rng) < 0.5 ? -r : r; break;
    case 2: {
      const double phi = 2.0 * std::numbers::pi * uniform01(rng);
      out[0] = r * std::cos(phi);
      out[1] = r * std::sin(phi);
      break;
    }
    default: {
      const double z = 2.0 * uniform01(rng) - 1.0;
      const double phi = 2.0 * std::numbers::pi * uniform01(rng);
      const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
      out[0] = r * s * std::cos(phi);
      out[1] = r * s * std::sin(phi);
      out[2] = r * z;
    }
  }
  return density_[bin];
}

double distance(const Point& a, const Point& b, int dimension) {
  double s = 0.0;
  for (int k = 0; k < dimension; ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  return std::sqrt(s);
}

CoefficientEstimate graph_weight_mc(const Graph& g, const Potential& p, int dimension,
                                    std::span<const Point> roots, const McOptions& options) {
  if (static_cast<int>(roots.size()) != g.white_count())
    throw std::invalid_argument("one root position per white vertex is required");
  if (g.white_count() == 0) throw std::invalid_argument("Monte Carlo weights need a root");
  if (options.samples == 0 || options.shards < 1)
    throw std::invalid_argument("need at least one sample and one shard");
  const int n = g.size();
  const auto edges = g.edges();

  // Spanning forest grown breadth-first from the white vertices.
  std::vector<int> parent(static_cast<std::size_t>(n), -1);
  std::vector<int> order;
  VertexSet seen = g.white_vertices();
  std::vector<int> queue;
  for (int w = 0; w < g.white_count(); ++w) queue.push_back(w);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int u = queue[head];
    for (VertexSet nb = g.neighbors(u) & ~seen; nb; nb &= nb - 1) {
      const int v = std::countr_zero(nb);
      parent[v] = u;
      seen |= vertex_bit(v);
      queue.push_back(v);
      order.push_back(v);
    }
  }
  if (seen != g.all_vertices())
    throw std::invalid_argument("graph is not connected to its roots");

  CoefficientEstimate est{0.0, 0.0, EstimateMethod::MonteCarlo, options.samples, options.seed};
  if (p.is_ideal() || (g.black_count() == 0)) {
    double w = edges.empty() ? 1.0 : 0.0;
    if (!p.is_ideal()) {
      w = 1.0;
      for (auto [i, j] : edges) w *= mayer_f(p, distance(roots[i], roots[j], dimension));
    }
    est.value = w;
    return est;
  }

  const RadialProposal proposal(p, dimension);
  double sum = 0.0;
  double sum_sq = 0.0;
  std::uint64_t total = 0;
  std::vector<Point> x(static_cast<std::size_t>(n));
  for (int w = 0; w < g.white_count(); ++w) x[w] = roots[w];
  for (int shard = 0; shard < options.shards; ++shard) {
    std::mt19937_64 rng(options.seed + static_cast<std::uint64_t>(shard));
    const std::uint64_t count = options.samples / options.shards +
                                (static_cast<std::uint64_t>(shard) < options.samples % options.shards ? 1 : 0);
    for (std::uint64_t s = 0; s < count; ++s) {
      double q = 1.0;
      for (int v : order) {
        Point disp;
        q *= proposal.sample(rng, disp);
        for (int k = 0; k < 3; ++k) x[v][k] = x[parent[v]][k] + disp[k];
      }
      double w = 1.0;
      for (auto [i, j] : edges) {
        w *= mayer_f(p, distance(x[i], x[j], dimension));
        if (w == 0.0) break;
      }
      w /= q;
      sum += w;
      sum_sq += w * w;
    }
    total += count;
  }
  const double mean = sum / double(total);
  const double var = std::max(0.0, sum_sq / double(total) - mean * mean);
  est.value = mean;
  est.std_error = total > 1 ? std::sqrt(var / double(total - 1)) : 0.0;
  if (est.std_error > options.max_relative_error * std::abs(est.value))
    throw NonConvergence("Monte Carlo estimate did not reach the requested relative error",
                         est.std_error / std::abs(est.value));
  return est;
}

}  // namespace clex
