#include "magshift/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

#include "magshift/errors.hpp"

namespace magshift {
namespace {

// 15-point Kronrod extension of 7-point Gauss-Legendre (QUADPACK QK15 nodes,
// positive half; kWg are the embedded Gauss weights at every second node).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <class T>
double vnorm(const T& x) {
  return std::abs(x);
}

template <class T>
struct Panel {
  double a = 0.0, b = 0.0;
  T value{};
  double error = 0.0;
};

template <class T>
struct PanelOrder {
  bool operator()(const Panel<T>& p, const Panel<T>& q) const {
    if (p.error != q.error) return p.error < q.error;
    return p.a > q.a;  // ties: leftmost panel first
  }
};

template <class T, class F>
Panel<T> gk15(const F& f, double a, double b, long& evals) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const T fc = f(c);
  T kronrod = kWgk[7] * fc;
  T gauss = kWg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = h * kXgk[i];
    const T f1 = f(c - dx);
    const T f2 = f(c + dx);
    kronrod += kWgk[i] * (f1 + f2);
    if (i % 2 == 1) gauss += kWg[i / 2] * (f1 + f2);
  }
  evals += 15;
  kronrod *= h;
  gauss *= h;
  return {a, b, kronrod, vnorm(kronrod - gauss)};
}

template <class T>
struct AdaptiveOutcome {
  T value{};
  double error = 0.0;
  long evaluations = 0;
  int subdivisions = 0;
};

// Globally adaptive refinement: bisect the panel with the largest error until
// the summed error estimate meets max(rel_tol |I|, abs_tol) or the budget runs
// out. Running totals and a deterministic tie-break keep results reproducible.
template <class T, class F>
AdaptiveOutcome<T> adapt(const F& f, const std::vector<double>& edges,
                         double rel_tol, double abs_tol, int max_subdivisions) {
  std::priority_queue<Panel<T>, std::vector<Panel<T>>, PanelOrder<T>> queue;
  long evals = 0;
  T total{};
  double toterr = 0.0;
  double l1 = 0.0;  // sum of |panel| values; floors the achievable tolerance
  for (size_t i = 0; i + 1 < edges.size(); ++i) {
    auto p = gk15<T>(f, edges[i], edges[i + 1], evals);
    total += p.value;
    toterr += p.error;
    l1 += vnorm(p.value);
    queue.push(p);
  }

  constexpr double kEps = std::numeric_limits<double>::epsilon();
  int splits = 0;
  while (toterr > std::max({rel_tol * vnorm(total), abs_tol, 50.0 * kEps * l1})) {
    if (splits >= max_subdivisions)
      throw ConvergenceError(
          "adaptive quadrature: subdivision budget exhausted (" +
          std::to_string(max_subdivisions) + " splits, error " +
          std::to_string(toterr) + ")");
    if (queue.empty()) break;
    const Panel<T> worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(worst.a < mid && mid < worst.b)) {
      // interval at floating-point resolution; its estimate cannot improve
      toterr -= worst.error;
      continue;
    }
    auto left = gk15<T>(f, worst.a, mid, evals);
    auto right = gk15<T>(f, mid, worst.b, evals);
    total += left.value + right.value - worst.value;
    toterr += left.error + right.error - worst.error;
    l1 += vnorm(left.value) + vnorm(right.value) - vnorm(worst.value);
    queue.push(left);
    queue.push(right);
    ++splits;
  }
  return {total, toterr, evals, splits};
}

std::vector<double> make_edges(double a, double b,
                               std::span<const double> interior) {
  std::vector<double> edges;
  edges.push_back(a);
  for (double x : interior)
    if (x > a && x < b) edges.push_back(x);
  edges.push_back(b);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

constexpr double kPi = 3.141592653589793;
constexpr double kPiHalf = 1.5707963267948966;
constexpr double kTanhSinhRange = 4.0;

}  // namespace

void QuadratureConfig::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
    throw DomainError("quadrature tolerances must be positive");
  if (max_subdivisions < 1)
    throw DomainError("max_subdivisions must be at least 1");
  if (extrapolation_order < 1)
    throw DomainError("extrapolation_order must be at least 1");
  if (regulator_sequence.empty())
    throw DomainError("regulator_sequence must not be empty");
  double prev = std::numeric_limits<double>::infinity();
  for (double d : regulator_sequence) {
    if (!(d > 0.0) || !(d < prev))
      throw DomainError(
          "regulator_sequence must be strictly decreasing and positive");
    prev = d;
  }
}

QuadResult integrate_finite(const std::function<double(double)>& f, double a,
                            double b, const QuadratureConfig& config,
                            std::span<const double> breakpoints) {
  config.validate();
  if (!(a < b)) throw DomainError("integrate_finite requires a < b");
  auto r = adapt<double>(f, make_edges(a, b, breakpoints), config.rel_tol,
                         config.abs_tol, config.max_subdivisions);
  return {r.value, r.error, r.evaluations, r.subdivisions};
}

QuadResult integrate_semi_infinite(const std::function<double(double)>& f,
                                   const QuadratureConfig& config,
                                   std::span<const double> breakpoints) {
  config.validate();
  if (config.u_transform == UTransform::ExpWeighted) {
    // u = -ln s maps (0, inf) to s in (0, 1)
    auto g = [&f](double s) { return f(-std::log(s)) / s; };
    std::vector<double> bp;
    for (double u : breakpoints)
      if (u > 0.0) bp.push_back(std::exp(-u));
    auto r = adapt<double>(g, make_edges(0.0, 1.0, bp), config.rel_tol,
                           config.abs_tol, config.max_subdivisions);
    return {r.value, r.error, r.evaluations, r.subdivisions};
  }
  // TanhSinh: u = exp((pi/2) sinh t); du = u (pi/2) cosh t dt
  auto g = [&f](double t) {
    const double u = std::exp(kPiHalf * std::sinh(t));
    if (u == 0.0 || !std::isfinite(u)) return 0.0;
    return f(u) * u * kPiHalf * std::cosh(t);
  };
  std::vector<double> bp;
  for (double u : breakpoints)
    if (u > 0.0) bp.push_back(std::asinh(std::log(u) / kPiHalf));
  auto r = adapt<double>(g, make_edges(-kTanhSinhRange, kTanhSinhRange, bp),
                         config.rel_tol, config.abs_tol,
                         config.max_subdivisions);
  return {r.value, r.error, r.evaluations, r.subdivisions};
}

QuadResult integrate_eta(const std::function<double(double)>& f,
                         const QuadratureConfig& config,
                         std::span<const double> breakpoints) {
  config.validate();
  if (config.eta_transform == EtaTransform::Reciprocal) {
    // eta = 1/t on t in (0, 1]
    auto g = [&f](double t) { return f(1.0 / t) / (t * t); };
    std::vector<double> bp;
    for (double eta : breakpoints)
      if (eta > 1.0) bp.push_back(1.0 / eta);
    auto r = adapt<double>(g, make_edges(0.0, 1.0, bp), config.rel_tol,
                           config.abs_tol, config.max_subdivisions);
    return {r.value, r.error, r.evaluations, r.subdivisions};
  }
  // RationalStretch: eta = 1 + t/(1-t)
  auto g = [&f](double t) {
    const double om = 1.0 - t;
    return f(1.0 + t / om) / (om * om);
  };
  std::vector<double> bp;
  for (double eta : breakpoints)
    if (eta > 1.0) bp.push_back((eta - 1.0) / eta);
  auto r = adapt<double>(g, make_edges(0.0, 1.0, bp), config.rel_tol,
                         config.abs_tol, config.max_subdivisions);
  return {r.value, r.error, r.evaluations, r.subdivisions};
}

namespace {

// One regulated evaluation F(delta) over (0, 36/delta]. For phase_rate > 0 the
// initial partition places about one panel per half period so the oscillation
// is never aliased; for phase_rate == 0 a rational map compresses the tail.
AdaptiveOutcome<std::complex<double>> regulated_integral(
    const std::function<std::complex<double>(double)>& g, double phase_rate,
    double delta, const QuadratureConfig& config,
    std::span<const double> breakpoints) {
  const double kmax = 36.0 / delta;
  const double rel = 0.1 * config.rel_tol;
  const double abs = 0.1 * config.abs_tol;
  if (phase_rate > 0.0) {
    auto h = [&](double k) {
      return g(k) * std::exp(std::complex<double>(-delta * k, phase_rate * k));
    };
    const double half_period = kPi / phase_rate;
    const int n_seed = static_cast<int>(
        std::min(32768.0, std::max(8.0, std::ceil(kmax / half_period))));
    std::vector<double> edges;
    edges.reserve(static_cast<size_t>(n_seed) + breakpoints.size() + 1);
    for (int i = 0; i <= n_seed; ++i)
      edges.push_back(kmax * static_cast<double>(i) / n_seed);
    for (double b : breakpoints)
      if (b > 0.0 && b < kmax) edges.push_back(b);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return adapt<std::complex<double>>(h, edges, rel, abs,
                                       config.max_subdivisions);
  }
  // no oscillation: k = (1-t)/t on t in (0, 1]
  auto h = [&](double t) {
    const double k = (1.0 - t) / t;
    return g(k) * (std::exp(-delta * k) / (t * t));
  };
  std::vector<double> bp;
  for (double b : breakpoints)
    if (b > 0.0) bp.push_back(1.0 / (1.0 + b));
  bp.push_back(1.0 / (1.0 + kmax));
  return adapt<std::complex<double>>(h, make_edges(0.0, 1.0, bp), rel, abs,
                                     config.max_subdivisions);
}

}  // namespace

OscillatoryResult integrate_oscillatory(
    const std::function<std::complex<double>(double)>& g, double phase_rate,
    const QuadratureConfig& config, std::span<const double> breakpoints) {
  config.validate();
  if (phase_rate < 0.0)
    throw DomainError("integrate_oscillatory requires phase_rate >= 0");

  // The listed regulator values are dimensionless; delta is conjugate to k,
  // so it carries the phase length as its scale. Past the listed stages the
  // geometric progression continues with its final ratio until the
  // extrapolants contract. Deep stages double the oscillatory range each
  // time, so extension is capped much earlier for oscillatory integrands.
  const double scale = phase_rate > 0.0 ? 0.5 * phase_rate : 1.0;
  const auto& seq = config.regulator_sequence;
  const int min_stages = static_cast<int>(seq.size());
  const int max_stages = phase_rate > 0.0 ? std::max(min_stages, 11) : 28;
  double ratio = 0.5;
  if (seq.size() >= 2) ratio = seq.back() / seq[seq.size() - 2];

  std::vector<double> deltas;
  std::vector<std::complex<double>> values;
  OscillatoryResult out;
  double quad_err = 0.0;
  std::complex<double> extrapolated{};
  double last_diff = std::numeric_limits<double>::infinity();
  double prev_diff = std::numeric_limits<double>::infinity();

  for (int stage = 0; stage < max_stages; ++stage) {
    const double d_dimless =
        stage < static_cast<int>(seq.size())
            ? seq[stage]
            : seq.back() *
                  std::pow(ratio, stage + 1 - static_cast<int>(seq.size()));
    auto F = regulated_integral(g, phase_rate, d_dimless * scale, config,
                                breakpoints);
    out.evaluations += F.evaluations;
    out.subdivisions += F.subdivisions;
    quad_err = std::max(quad_err, F.error);
    deltas.push_back(d_dimless * scale);
    values.push_back(F.value);
    out.stages = stage + 1;

    // Neville polynomial extrapolation to delta = 0 over the trailing window.
    const int window = std::min<int>(config.extrapolation_order + 1,
                                     static_cast<int>(values.size()));
    std::vector<std::complex<double>> t(values.end() - window, values.end());
    std::vector<double> x(deltas.end() - window, deltas.end());
    for (int j = 1; j < window; ++j)
      for (int i = window - 1; i >= j; --i)
        t[i] = (t[i] * x[i - j] - t[i - 1] * x[i]) / (x[i - j] - x[i]);
    const std::complex<double> previous = extrapolated;
    extrapolated = t[window - 1];
    prev_diff = last_diff;
    last_diff = std::abs(extrapolated - previous);

    if (stage + 1 >= std::max(min_stages, 2)) {
      // A linearly contracting tail leaves a residual comparable to the last
      // correction, so the gate sits at half the target and the reported
      // error covers the geometric remainder.
      const double target =
          std::max(config.rel_tol * std::abs(extrapolated), config.abs_tol);
      if (last_diff <= 0.5 * target) {
        out.value = extrapolated;
        out.error = 2.0 * last_diff + quad_err;
        return out;
      }
    }
  }
  if (last_diff > prev_diff)
    throw ConvergenceError(
        "oscillatory quadrature: regulator extrapolants do not contract");
  // Contracting but short of the requested tolerance: the extrapolation
  // spread is reported rather than failing outright.
  out.value = extrapolated;
  out.error = 2.0 * last_diff + quad_err;
  return out;
}

}  // namespace magshift
