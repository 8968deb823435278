#include "clex/exact1d.hpp"

#include <algorithm>
#include <cmath>

namespace clex {

namespace {

constexpr int kMaxDenominator = 4096;

bool is_multiple(double value, double unit) {
  const double q = value / unit;
  return std::abs(q - std::round(q)) <= 1e-9 * std::max(1.0, q);
}

// Cell decomposition: x = delta (m + u) with integer m and u in [0, 1). Pair factors are
// constant once the integer parts and the ordering of the fractional parts are fixed.
class CellIntegrator {
 public:
  CellIntegrator(const Potential& p, const CellProblem& pr) : p_(p), pr_(pr) {
    n_ = pr.n_vertices;
    nw_ = static_cast<int>(pr.white_positions.size());
    if (nw_ > n_) throw std::invalid_argument("more white positions than vertices");
    delta_ = commensurate_unit(p, pr.ring_length);
    if (pr.ring_length) cells_ = std::lround(*pr.ring_length / delta_);
    const auto support = p.support_radius();
    reach_ = std::lround(support.value_or(0.0) / delta_);
    build_tables();
  }

  double run() {
    for (const auto& t : pr_.terms) {
      if (t.a == t.b || t.a < 0 || t.b < 0 || t.a >= n_ || t.b >= n_)
        throw std::invalid_argument("invalid pair term");
      if (p_.is_ideal() && t.factor == PairFactor::Mayer) return 0.0;
    }
    place_whites();
    plan_blacks();
    if (constant_ == 0.0) return 0.0;
    dfs(0, constant_);
    return total_;
  }

 private:
  void build_tables() {
    // Factor at separation delta * (h + 1/2); beyond the support f vanishes.
    const long h_max = reach_ + 1;
    f_table_.resize(static_cast<std::size_t>(h_max));
    for (long h = 0; h < h_max; ++h)
      f_table_[static_cast<std::size_t>(h)] = mayer_f(p_, delta_ * (double(h) + 0.5));
  }

  // Separation delta * odd / 2 with odd an odd integer.
  double factor_at(long odd, PairFactor kind) const {
    long a = odd < 0 ? -odd : odd;
    if (cells_ > 0) {
      const long period = 2 * cells_;
      a %= period;
      a = std::min(a, period - a);
    }
    const long h = (a - 1) / 2;
    const double f = h < static_cast<long>(f_table_.size()) ? f_table_[static_cast<std::size_t>(h)] : 0.0;
    return kind == PairFactor::Mayer ? f : 1.0 + f;
  }

  void place_whites() {
    m_.assign(static_cast<std::size_t>(n_), 0);
    u_.assign(static_cast<std::size_t>(n_), 0.0);
    for (int w = 0; w < nw_; ++w) {
      double x = pr_.white_positions[w];
      if (pr_.ring_length) {
        x = std::fmod(x, *pr_.ring_length);
        if (x < 0) x += *pr_.ring_length;
      }
      double q = x / delta_;
      double m = std::floor(q);
      double u = q - m;
      if (u > 1.0 - 1e-12) {
        m += 1.0;
        u = 0.0;
      }
      if (u < 1e-12) u = 0.0;
      m_[w] = static_cast<long>(m);
      if (cells_ > 0) m_[w] %= cells_;
      u_[w] = u;
      seq_.push_back(w);
    }
    std::stable_sort(seq_.begin(), seq_.end(), [&](int a, int b) { return u_[a] < u_[b]; });
    pos_.assign(static_cast<std::size_t>(n_), -1);
    for (std::size_t i = 0; i < seq_.size(); ++i) pos_[seq_[i]] = static_cast<int>(i);
    segment_length_.clear();
    double prev = 0.0;
    for (int w : seq_) {
      segment_length_.push_back(u_[w] - prev);
      prev = u_[w];
    }
    segment_length_.push_back(1.0 - prev);
  }

  void plan_blacks() {
    std::vector<std::vector<int>> mayer_adj(static_cast<std::size_t>(n_));
    for (const auto& t : pr_.terms)
      if (t.factor == PairFactor::Mayer) {
        mayer_adj[t.a].push_back(t.b);
        mayer_adj[t.b].push_back(t.a);
      }
    parent_.assign(static_cast<std::size_t>(n_), -1);
    std::vector<int> rank(static_cast<std::size_t>(n_), -1);
    std::vector<int> queue;
    for (int w = 0; w < nw_; ++w) {
      queue.push_back(w);
      rank[w] = w;
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const int u = queue[head];
      for (int v : mayer_adj[u])
        if (rank[v] < 0) {
          rank[v] = static_cast<int>(queue.size());
          parent_[v] = u;
          queue.push_back(v);
          order_.push_back(v);
        }
    }
    for (int v = nw_; v < n_; ++v)
      if (rank[v] < 0) {
        if (!pr_.ring_length)
          throw std::domain_error("unbounded integral: black vertex not tied to a white vertex");
        rank[v] = static_cast<int>(queue.size());
        queue.push_back(v);
        order_.push_back(v);
      }
    back_terms_.assign(static_cast<std::size_t>(n_), {});
    for (const auto& t : pr_.terms) {
      if (t.a < nw_ && t.b < nw_) {
        constant_ *= white_pair(t);
        continue;
      }
      const int later = rank[t.a] > rank[t.b] ? t.a : t.b;
      const int earlier = later == t.a ? t.b : t.a;
      back_terms_[later].push_back({earlier, t.factor});
    }
  }

  double white_pair(const PairTerm& t) const {
    double d = std::abs(pr_.white_positions[t.a] - pr_.white_positions[t.b]);
    if (pr_.ring_length) d = periodic_distance(d, *pr_.ring_length);
    const double f = mayer_f(p_, d);
    return t.factor == PairFactor::Mayer ? f : 1.0 + f;
  }

  void dfs(std::size_t level, double weight) {
    if (level == order_.size()) {
      total_ += weight * volume();
      return;
    }
    const int j = order_[level];
    long lo = 0;
    long hi = cells_ - 1;
    bool wrap = false;
    if (parent_[j] >= 0 && (cells_ == 0 || 2 * reach_ + 1 <= cells_)) {
      lo = m_[parent_[j]] - reach_;
      hi = m_[parent_[j]] + reach_;
      wrap = cells_ > 0;
    }
    const std::size_t slots = seq_.size() + 1;
    for (long m = lo; m <= hi; ++m) {
      long mm = m;
      if (wrap) mm = ((m % cells_) + cells_) % cells_;
      m_[j] = mm;
      int whites_before = 0;
      for (std::size_t s = 0; s < slots; ++s) {
        if (s > 0 && seq_[s - 1] < nw_) ++whites_before;
        if (segment_length_[static_cast<std::size_t>(whites_before)] <= 0.0) continue;
        double prod = weight;
        for (const auto& [a, kind] : back_terms_[j]) {
          const bool after = pos_[a] < static_cast<int>(s);
          const long odd = 2 * (mm - m_[a]) + (after ? 1 : -1);
          prod *= factor_at(odd, kind);
          if (prod == 0.0) break;
        }
        if (prod == 0.0) continue;
        insert(j, s);
        dfs(level + 1, prod);
        erase(s);
      }
    }
  }

  void insert(int v, std::size_t s) {
    seq_.insert(seq_.begin() + static_cast<std::ptrdiff_t>(s), v);
    for (std::size_t i = s; i < seq_.size(); ++i) pos_[seq_[i]] = static_cast<int>(i);
  }

  void erase(std::size_t s) {
    pos_[seq_[s]] = -1;
    seq_.erase(seq_.begin() + static_cast<std::ptrdiff_t>(s));
    for (std::size_t i = s; i < seq_.size(); ++i) pos_[seq_[i]] = static_cast<int>(i);
  }

  double volume() const {
    double vol = std::pow(delta_, static_cast<double>(order_.size()));
    std::size_t seg = 0;
    int run = 0;
    auto close = [&](std::size_t s) {
      for (int i = 1; i <= run; ++i) vol *= segment_length_[s] / i;
      run = 0;
    };
    for (int v : seq_) {
      if (v < nw_) {
        close(seg);
        ++seg;
      } else {
        ++run;
      }
    }
    close(seg);
    return vol;
  }

  const Potential& p_;
  const CellProblem& pr_;
  int n_ = 0;
  int nw_ = 0;
  double delta_ = 1.0;
  long cells_ = 0;
  long reach_ = 0;
  std::vector<double> f_table_;
  std::vector<long> m_;
  std::vector<double> u_;
  std::vector<int> seq_;
  std::vector<int> pos_;
  std::vector<double> segment_length_;
  std::vector<int> parent_;
  std::vector<int> order_;
  std::vector<std::vector<std::pair<int, PairFactor>>> back_terms_;
  double constant_ = 1.0;
  double total_ = 0.0;
};

}  // namespace

double periodic_distance(double d, double ring_length) {
  double a = std::fmod(std::abs(d), ring_length);
  return std::min(a, ring_length - a);
}

double commensurate_unit(const Potential& p, std::optional<double> ring_length) {
  if (p.dimension != 1) throw NeedsMonteCarlo("exact cell integration is one-dimensional; use MC path");
  if (!p.piecewise_constant())
    throw NeedsMonteCarlo("Mayer function is not piecewise constant; use MC path");
  auto values = p.breakpoints();
  if (ring_length) {
    if (!(*ring_length > 0.0)) throw std::invalid_argument("ring length must be positive");
    values.push_back(*ring_length);
  }
  if (values.empty()) return 1.0;
  const double base = values.front();
  for (int q = 1; q <= kMaxDenominator; ++q) {
    const double unit = base / q;
    if (std::all_of(values.begin(), values.end(), [&](double v) { return is_multiple(v, unit); }))
      return unit;
  }
  throw NeedsMonteCarlo("breakpoints are not commensurate; use MC path");
}

double integrate_cells(const Potential& p, const CellProblem& problem) {
  return CellIntegrator(p, problem).run();
}

}  // namespace clex
