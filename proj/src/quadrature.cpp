#include "psring/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <string>
#include <vector>

#include "format.hpp"

namespace psring {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Kronrod 15-point abscissae (positive half) and weights; the 7-point Gauss
// rule uses the odd-indexed abscissae.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double lo;
  double hi;
  double value;
  double error;
  double floor;  // roundoff floor 50 eps int|f|
};

class Evaluator {
public:
  explicit Evaluator(const Integrand& f) : f_(f) {}

  double operator()(double x) {
    const double y = f_(x);
    ++count_;
    if (!std::isfinite(y)) {
      throw NonFiniteValue("integrate", x);
    }
    return y;
  }

  std::size_t count() const noexcept { return count_; }

private:
  const Integrand& f_;
  std::size_t count_ = 0;
};

Panel gauss_kronrod_15(Evaluator& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  double resabs = std::abs(kronrod);
  std::array<double, 7> f1{};
  std::array<double, 7> f2{};
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = f(center - dx);
    f2[j] = f(center + dx);
    const double pair = f1[j] + f2[j];
    kronrod += kWgk[j] * pair;
    resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) {
      gauss += kWg[j / 2] * pair;
    }
  }
  const double mean = 0.5 * kronrod;
  double resasc = kWgk[7] * std::abs(fc - mean);
  for (std::size_t j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
  }
  const double scale = std::abs(half);
  resasc *= scale;
  resabs *= scale;
  double error = std::abs((kronrod - gauss) * half);
  if (resasc != 0.0 && error != 0.0) {
    error = resasc * std::min(1.0, std::pow(200.0 * error / resasc, 1.5));
  }
  const double floor = 50.0 * kEps * resabs;
  error = std::max(error, floor);
  return {lo, hi, kronrod * half, error, floor};
}

struct LargerError {
  const std::vector<Panel>* panels;
  bool operator()(std::size_t a, std::size_t b) const {
    const Panel& pa = (*panels)[a];
    const Panel& pb = (*panels)[b];
    if (pa.error != pb.error) {
      return pa.error < pb.error;
    }
    return pa.lo > pb.lo;
  }
};

QuadratureResult summarize(const std::vector<Panel>& panels, std::size_t evaluations) {
  // Sum in position order so the result does not depend on heap internals.
  std::vector<const Panel*> ordered;
  ordered.reserve(panels.size());
  for (const auto& p : panels) {
    ordered.push_back(&p);
  }
  std::sort(ordered.begin(), ordered.end(),
            [](const Panel* a, const Panel* b) { return a->lo < b->lo; });
  QuadratureResult r;
  double floor = 0.0;
  for (const Panel* p : ordered) {
    r.value += p->value;
    r.error_estimate += p->error;
    floor += p->floor;
  }
  r.evaluations = evaluations;
  r.roundoff_limited = r.error_estimate <= floor * (1.0 + 1e-9);
  return r;
}

}  // namespace

QuadratureResult integrate(const Integrand& f, double lower, double upper,
                           QuadratureTolerance tol, std::size_t max_subdivisions) {
  if (!(lower < upper) || !std::isfinite(lower) || !std::isfinite(upper)) {
    throw DomainError("integrate: need finite lower < upper");
  }
  if (!(tol.rel > 0.0) || !(tol.abs >= 0.0)) {
    throw DomainError("integrate: need rel_tol > 0 and abs_tol >= 0");
  }
  Evaluator eval(f);
  std::vector<Panel> panels;
  panels.reserve(std::min<std::size_t>(max_subdivisions + 1, 1024));
  panels.push_back(gauss_kronrod_15(eval, lower, upper));
  std::priority_queue<std::size_t, std::vector<std::size_t>, LargerError> queue(
      LargerError{&panels});
  queue.push(0);

  double value = panels[0].value;
  double error = panels[0].error;
  double floor = panels[0].floor;

  auto converged = [&] {
    const double target = std::max(tol.abs, tol.rel * std::abs(value));
    return error <= target || error <= floor * (1.0 + 1e-9);
  };

  std::size_t subdivisions = 0;
  while (!converged()) {
    if (subdivisions >= max_subdivisions || queue.empty()) {
      auto best = summarize(panels, eval.count());
      throw QuadratureError("integrate: subdivision budget exhausted on [" +
                                detail::format_number(lower) + ", " + detail::format_number(upper) +
                                "], error estimate " + detail::format_number(best.error_estimate),
                            best);
    }
    const std::size_t worst = queue.top();
    queue.pop();
    const Panel parent = panels[worst];
    const double mid = 0.5 * (parent.lo + parent.hi);
    if (!(parent.lo < mid && mid < parent.hi)) {
      // Interval at machine resolution: freeze it, its error cannot shrink.
      continue;
    }
    const Panel left = gauss_kronrod_15(eval, parent.lo, mid);
    const Panel right = gauss_kronrod_15(eval, mid, parent.hi);
    value += left.value + right.value - parent.value;
    error += left.error + right.error - parent.error;
    floor += left.floor + right.floor - parent.floor;
    panels[worst] = left;
    panels.push_back(right);
    queue.push(worst);
    queue.push(panels.size() - 1);
    ++subdivisions;
  }
  return summarize(panels, eval.count());
}

QuadratureResult integrate_semi_infinite(const Integrand& f, double lower, QuadratureTolerance tol,
                                         std::size_t max_subdivisions) {
  if (!std::isfinite(lower)) {
    throw DomainError("integrate_semi_infinite: lower limit must be finite");
  }
  // x = lower + t/(1-t), dx/dt = 1/(1-t)^2.
  const Integrand mapped = [&f, lower](double t) {
    const double one_minus = 1.0 - t;
    return f(lower + t / one_minus) / (one_minus * one_minus);
  };
  return integrate(mapped, 0.0, 1.0, tol, max_subdivisions);
}

QuadratureResult integrate(const Integral& spec, std::size_t max_subdivisions) {
  if (spec.upper == std::numeric_limits<double>::infinity()) {
    return integrate_semi_infinite(spec.integrand, spec.lower, spec.tol, max_subdivisions);
  }
  return integrate(spec.integrand, spec.lower, spec.upper, spec.tol, max_subdivisions);
}

QuadratureResult integrate_panels(const Integrand& f, std::span<const double> breakpoints,
                                  bool infinite_tail, QuadratureTolerance tol,
                                  std::size_t max_subdivisions) {
  if (breakpoints.empty() || (breakpoints.size() < 2 && !infinite_tail)) {
    throw DomainError("integrate_panels: need at least one panel");
  }
  const std::size_t n_panels = breakpoints.size() - 1 + (infinite_tail ? 1 : 0);
  QuadratureTolerance per_panel = tol;
  per_panel.abs = tol.abs / static_cast<double>(n_panels);
  QuadratureResult total;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    const auto r = integrate(f, breakpoints[i], breakpoints[i + 1], per_panel, max_subdivisions);
    total.value += r.value;
    total.error_estimate += r.error_estimate;
    total.evaluations += r.evaluations;
    total.roundoff_limited = total.roundoff_limited || r.roundoff_limited;
  }
  if (infinite_tail) {
    const auto r = integrate_semi_infinite(f, breakpoints.back(), per_panel, max_subdivisions);
    total.value += r.value;
    total.error_estimate += r.error_estimate;
    total.evaluations += r.evaluations;
    total.roundoff_limited = total.roundoff_limited || r.roundoff_limited;
  }
  return total;
}

}  // namespace psring
