#include "ltlab/laws/berman.hpp"

#include <cmath>
#include <stdexcept>

#include "ltlab/core/numeric.hpp"

namespace ltlab::laws {

std::string to_string(BermanVerdict v) {
  switch (v) {
    case BermanVerdict::converges: return "converges";
    case BermanVerdict::diverges: return "diverges";
    case BermanVerdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

namespace {

struct TimeNode {
  double s, t, w;
};

// Nodes for ∫_0^T∫_0^T f(s,t) ds dt = 2 ∫_0^T du ∫_0^{T−u} ds f(s, s+u) (f symmetric).
std::vector<TimeNode> time_nodes(double horizon, std::size_t u_panels) {
  const QuadratureRule& gu = gauss_legendre(6);
  const QuadratureRule& gs = gauss_legendre(4);
  std::vector<TimeNode> out;
  for (std::size_t p = 0; p < u_panels; ++p) {
    const double hi = horizon * std::ldexp(1.0, -static_cast<int>(p));
    const double lo = (p + 1 == u_panels) ? 0.0 : 0.5 * hi;
    for (std::size_t i = 0; i < gu.nodes.size(); ++i) {
      const double u = lo + 0.5 * (hi - lo) * (gu.nodes[i] + 1.0);
      const double wu = 0.5 * (hi - lo) * gu.weights[i];
      const double len = horizon - u;
      for (std::size_t j = 0; j < gs.nodes.size(); ++j) {
        const double s = 0.5 * len * (gs.nodes[j] + 1.0);
        out.push_back({s, s + u, 2.0 * wu * 0.5 * len * gs.weights[j]});
      }
    }
  }
  return out;
}

// Integral of the charfn over the box ∏[lo_l, hi_l] in ξ and over time.
double box_integral(const IncrementCharfn& f, const std::vector<TimeNode>& tn, const std::vector<double>& lo,
                    const std::vector<double>& hi, std::size_t nodes) {
  const int d = f.d;
  const QuadratureRule& g = gauss_legendre(nodes);
  std::vector<std::size_t> idx(d, 0);
  std::vector<double> xi(d);
  CompensatedSum acc;
  const std::size_t total = static_cast<std::size_t>(std::pow(nodes, d));
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    double w = 1.0;
    for (int l = 0; l < d; ++l) {
      const std::size_t i = rem % nodes;
      rem /= nodes;
      const double half = 0.5 * (hi[l] - lo[l]);
      xi[l] = lo[l] + half * (g.nodes[i] + 1.0);
      w *= half * g.weights[i];
    }
    double inner = 0.0;
    for (const auto& n : tn) inner += n.w * f.value(n.s, n.t, xi);
    acc.add(w * inner);
  }
  return acc.value();
}

// Sup-norm shell a < ‖ξ‖_∞ ≤ b split into boxes: each axis takes one of
// [−b,−a], [−a,a], [a,b]; the all-middle box is excluded.
double shell_integral(const IncrementCharfn& f, const std::vector<TimeNode>& tn, double a, double b,
                      std::size_t nodes) {
  const int d = f.d;
  std::size_t combos = 1;
  for (int l = 0; l < d; ++l) combos *= 3;
  double total = 0.0;
  std::vector<double> lo(d), hi(d);
  for (std::size_t c = 0; c < combos; ++c) {
    std::size_t rem = c;
    bool all_middle = true;
    for (int l = 0; l < d; ++l) {
      const std::size_t pick = rem % 3;
      rem /= 3;
      if (pick == 0) {
        lo[l] = -b;
        hi[l] = -a;
        all_middle = false;
      } else if (pick == 1) {
        lo[l] = -a;
        hi[l] = a;
      } else {
        lo[l] = a;
        hi[l] = b;
        all_middle = false;
      }
    }
    if (!all_middle) total += box_integral(f, tn, lo, hi, nodes);
  }
  return total;
}

}  // namespace

BermanReport berman_criterion(const IncrementCharfn& charfn, double alpha, double horizon, int levels,
                              std::size_t xi_nodes, std::size_t u_panels) {
  if (!charfn.value) throw std::invalid_argument("berman_criterion: characteristic function required");
  if (charfn.d < 1) throw std::invalid_argument("berman_criterion: d must be >= 1");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("berman_criterion: alpha must lie in (0,1)");
  if (!(horizon > 0.0)) throw std::invalid_argument("berman_criterion: horizon must be positive");
  if (levels < 4) throw std::invalid_argument("berman_criterion: need at least four shells");
  const int d = charfn.d;
  BermanReport rep;
  rep.d = d;
  rep.alpha = alpha;
  rep.horizon = horizon;
  rep.predicted_ratio = std::pow(2.0, d - 1.0 / alpha);
  const std::vector<TimeNode> tn = time_nodes(horizon, u_panels);

  std::vector<double> lo(d, -1.0), hi(d, 1.0);
  rep.cutoffs.push_back(1.0);
  rep.shells.push_back(box_integral(charfn, tn, lo, hi, xi_nodes));
  for (int k = 1; k <= levels; ++k) {
    const double a = std::ldexp(1.0, k - 1), b = std::ldexp(1.0, k);
    rep.cutoffs.push_back(b);
    rep.shells.push_back(shell_integral(charfn, tn, a, b, xi_nodes));
  }
  double sum = 0.0;
  for (double j : rep.shells) {
    sum += j;
    rep.partial_sums.push_back(sum);
  }
  for (std::size_t k = 2; k < rep.shells.size(); ++k)
    rep.ratios.push_back(rep.shells[k - 1] > 0.0 ? rep.shells[k] / rep.shells[k - 1] : 0.0);
  const std::size_t n = rep.ratios.size();
  rep.tail_ratio = (rep.ratios[n - 1] + rep.ratios[n - 2] + rep.ratios[n - 3]) / 3.0;
  if (rep.tail_ratio < 0.9) {
    rep.verdict = BermanVerdict::converges;
    rep.extrapolated = sum + rep.shells.back() * rep.tail_ratio / (1.0 - rep.tail_ratio);
  } else if (rep.tail_ratio > 1.1) {
    rep.verdict = BermanVerdict::diverges;
    rep.extrapolated = std::numeric_limits<double>::infinity();
  } else {
    rep.verdict = BermanVerdict::inconclusive;
    rep.extrapolated = std::numeric_limits<double>::quiet_NaN();
  }
  return rep;
}

}  // namespace ltlab::laws
