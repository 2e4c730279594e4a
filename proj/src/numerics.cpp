#include "mmtc/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace mmtc::numerics {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
constexpr double kHalfLog2Pi = 0.91893853320467274178032973640562;

// zeta(2) .. zeta(9), for ln Gamma near its zeros.
constexpr double kZeta[] = {
    1.64493406684822643647,  // zeta(2)
    1.20205690315959428540,  // zeta(3)
    1.08232323371113819152,  // zeta(4)
    1.03692775514336992633,  // zeta(5)
    1.01734306198444913971,  // zeta(6)
    1.00834927738192282684,  // zeta(7)
    1.00407735619794433938,  // zeta(8)
    1.00200839282608221442,  // zeta(9)
};

// B_{2n} / (2n (2n-1)) for the Stirling series of ln Gamma.
constexpr double kStirling[] = {
    1.0 / 12.0,           -1.0 / 360.0,          1.0 / 1260.0,
    -1.0 / 1680.0,        1.0 / 1188.0,          -691.0 / 360360.0,
    1.0 / 156.0,          -3617.0 / 122400.0,
};

// B_{2n} / (2n) for the asymptotic series of psi.
constexpr double kDigammaTail[] = {
    1.0 / 12.0,   -1.0 / 120.0,       1.0 / 252.0,  -1.0 / 240.0,
    1.0 / 132.0,  -691.0 / 32760.0,   1.0 / 12.0,   -3617.0 / 8160.0,
};

// ln Gamma(1 + t) = -gamma t + sum_{k>=2} (-1)^k zeta(k) t^k / k, |t| <= 0.03.
double log_gamma_near_one(double t) {
  double sum = 0.0;
  double tk = t;
  double sign = 1.0;
  int k = 2;
  for (const double zeta : kZeta) {
    tk *= t;
    sum += sign * zeta * tk / k;
    sign = -sign;
    ++k;
  }
  return -kEulerGamma * t + sum;
}

double log_gamma_stirling(double x) {
  const double z = 1.0 / x;
  const double z2 = z * z;
  double tail = 0.0;
  for (int i = 7; i >= 0; --i) tail = tail * z2 + kStirling[i];
  return (x - 0.5) * std::log(x) - x + kHalfLog2Pi + tail * z;
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0) || !(abs_tol > 0) || !(tail_cutoff > 0))
    throw ValidationError("QuadratureSpec: tolerances must be strictly positive");
  if (max_subdivisions < 1)
    throw ValidationError("QuadratureSpec: max_subdivisions must be >= 1");
}

double log_gamma(double x) {
  if (!(x > 0)) throw std::invalid_argument("log_gamma: requires x > 0");
  if (x == 1.0 || x == 2.0) return 0.0;
  if (std::abs(x - 1.0) < 0.03) return log_gamma_near_one(x - 1.0);
  if (std::abs(x - 2.0) < 0.03)
    return log_gamma_near_one(x - 2.0) + std::log1p(x - 2.0);
  if (x >= 10.0) return log_gamma_stirling(x);
  // Recurrence up to the Stirling regime.
  double shift = 0.0;
  double y = x;
  while (y < 10.0) {
    shift -= std::log(y);
    y += 1.0;
  }
  return log_gamma_stirling(y) + shift;
}

double digamma(double x) {
  if (!(x > 0)) throw std::invalid_argument("digamma: requires x > 0");
  double acc = 0.0;
  while (x < 10.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  const double z = 1.0 / (x * x);
  double tail = 0.0;
  for (int i = 7; i >= 0; --i) tail = tail * z + kDigammaTail[i];
  return acc + std::log(x) - 0.5 / x - tail * z;
}

namespace {

double gamma_prefactor_log(double a, double x) {
  return a * std::log(x) - x - log_gamma(a);
}

// Series for P(a, x), valid/efficient for x < a + 1.
double gamma_p_series_sum(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n < 100000; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::abs(term) < std::abs(sum) * 1e-17) return sum;
  }
  throw NonConvergenceError("regularized_gamma_p: series did not converge");
}

// Modified Lentz continued fraction; Q(a, x) = exp(prefactor) * value.
double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / (b != 0.0 ? b : tiny);
  double h = d;
  for (int i = 1; i < 100000; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) return h;
  }
  throw NonConvergenceError("regularized_gamma_q: continued fraction did not converge");
}

void check_gamma_args(const char* who, double a, double x) {
  if (!(a > 0) || !(x >= 0) || !std::isfinite(a) || !std::isfinite(x)) {
    throw std::invalid_argument(std::string(who) + ": requires a > 0 and x >= 0");
  }
}

}  // namespace

double regularized_gamma_p(double a, double x) {
  check_gamma_args("regularized_gamma_p", a, x);
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) {
    return std::exp(gamma_prefactor_log(a, x)) * gamma_p_series_sum(a, x);
  }
  return 1.0 - std::exp(gamma_prefactor_log(a, x)) * gamma_q_cf(a, x);
}

double regularized_gamma_q(double a, double x) {
  check_gamma_args("regularized_gamma_q", a, x);
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) {
    return 1.0 - std::exp(gamma_prefactor_log(a, x)) * gamma_p_series_sum(a, x);
  }
  return std::exp(gamma_prefactor_log(a, x)) * gamma_q_cf(a, x);
}

double log_regularized_gamma_q(double a, double x) {
  check_gamma_args("log_regularized_gamma_q", a, x);
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) {
    const double p = std::exp(gamma_prefactor_log(a, x)) * gamma_p_series_sum(a, x);
    return std::log1p(-p);
  }
  return gamma_prefactor_log(a, x) + std::log(gamma_q_cf(a, x));
}

double upper_incomplete_gamma(double a, double x) {
  check_gamma_args("upper_incomplete_gamma", a, x);
  const double log_value = log_regularized_gamma_q(a, x) + log_gamma(a);
  const double value = std::exp(log_value);
  if (!std::isfinite(value))
    throw std::overflow_error("upper_incomplete_gamma: value exceeds double range");
  return value;
}

double log_binomial(long long n, long long k) {
  if (n < 0 || k < 0 || k > n)
    throw std::invalid_argument("log_binomial: requires 0 <= k <= n");
  k = std::min(k, n - k);
  if (k == 0) return 0.0;
  if (n <= 60) {
    unsigned long long c = 1;
    for (long long i = 1; i <= k; ++i) {
      c = c * static_cast<unsigned long long>(n - k + i) /
          static_cast<unsigned long long>(i);
    }
    return std::log(static_cast<double>(c));
  }
  double sum = 0.0;
  for (long long i = 1; i <= k; ++i) {
    sum += std::log(static_cast<double>(n - k + i) / static_cast<double>(i));
  }
  return sum;
}

double kummer_1f1_neg_int(long long a, double b, double z) {
  if (a > 0)
    throw std::invalid_argument(
        "kummer_1f1_neg_int: first argument must be a nonpositive integer");
  if (!(b > 0)) throw std::invalid_argument("kummer_1f1_neg_int: requires b > 0");
  const long long n = -a;
  double term = 1.0;
  double sum = 1.0;
  for (long long j = 0; j < n; ++j) {
    term *= static_cast<double>(a + j) * z /
            ((b + static_cast<double>(j)) * static_cast<double>(j + 1));
    sum += term;
  }
  return sum;
}

double log_kummer_1f1_neg_int(long long a, double b, double z) {
  if (a > 0)
    throw std::invalid_argument(
        "log_kummer_1f1_neg_int: first argument must be a nonpositive integer");
  if (!(b > 0))
    throw std::invalid_argument("log_kummer_1f1_neg_int: requires b > 0");
  if (z > 0)
    throw std::invalid_argument("log_kummer_1f1_neg_int: requires z <= 0");
  const long long n = -a;
  if (n == 0 || z == 0.0) return 0.0;
  // (a + j) * z = (n - j) * (-z) >= 0, so every term is nonnegative.
  double log_term = 0.0;
  double log_sum = 0.0;
  const double log_mz = std::log(-z);
  for (long long j = 0; j < n; ++j) {
    log_term += std::log(static_cast<double>(n - j)) + log_mz -
                std::log(b + static_cast<double>(j)) -
                std::log(static_cast<double>(j + 1));
    log_sum = log_add_exp(log_sum, log_term);
  }
  return log_sum;
}

double log_add_exp(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(std::min(a, b) - m));
}

namespace {

// 15-point Gauss-Legendre rule on [-1, 1].
constexpr double kGlNode[8] = {
    0.0,
    0.20119409399743451476,
    0.39415134707756336990,
    0.57097217260853884754,
    0.72441773136017004742,
    0.84820658341042721620,
    0.93727339240070590431,
    0.98799251802048542849,
};
constexpr double kGlWeight[8] = {
    0.20257824192556127288,
    0.19843148532711157646,
    0.18616100001556221103,
    0.16626920581699393355,
    0.13957067792615431445,
    0.10715922046717193501,
    0.07036604748810812471,
    0.03075324199611726835,
};

class PanelIntegrator {
 public:
  PanelIntegrator(const std::function<double(double)>& f, const QuadratureSpec& spec)
      : f_(f), spec_(spec) {}

  double gl15(double a, double b) const {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = kGlWeight[0] * f_(mid);
    for (int i = 1; i < 8; ++i) {
      const double dx = half * kGlNode[i];
      sum += kGlWeight[i] * (f_(mid - dx) + f_(mid + dx));
    }
    return sum * half;
  }

  // Integrates one panel, refining until the split estimate stabilizes.
  double panel(double a, double b, double tol) {
    charge(1);
    return refine(a, b, gl15(a, b), tol, 0);
  }

  long used() const { return used_; }

 private:
  double refine(double a, double b, double whole, double tol, int depth) {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) return whole;
    charge(2);
    const double left = gl15(a, mid);
    const double right = gl15(mid, b);
    const double err = std::abs(left + right - whole);
    if (err <= tol || depth >= 48) return left + right;
    return refine(a, mid, left, 0.5 * tol, depth + 1) +
           refine(mid, b, right, 0.5 * tol, depth + 1);
  }

  void charge(long n) {
    used_ += n;
    if (used_ > spec_.max_subdivisions)
      throw NonConvergenceError(
          "integrate_oscillatory: subdivision budget exhausted");
  }

  const std::function<double(double)>& f_;
  const QuadratureSpec& spec_;
  long used_ = 0;
};

// Wynn's epsilon table over the sequence of partial sums; accelerates the
// alternating panel series far past where raw summation would stop.
class WynnEpsilon {
 public:
  void add(double s) {
    std::vector<double> next;
    next.reserve(diag_.size() + 1);
    next.push_back(s);
    bool saturated = false;
    for (std::size_t j = 1; j <= diag_.size() && !saturated; ++j) {
      const double denom = next[j - 1] - diag_[j - 1];
      if (std::abs(denom) < 1e-305) {
        saturated = true;  // partial sums converged exactly
        break;
      }
      const double lower = (j >= 2) ? next[j - 2] : 0.0;
      next.push_back(lower + 1.0 / denom);
    }
    diag_ = std::move(next);
    prev_best_ = best_;
    have_prev_ = have_best_;
    std::size_t m = diag_.size() - 1;
    if (m % 2 == 1) --m;
    best_ = diag_[m];
    have_best_ = true;
    if (diag_.size() > 64) {
      // Restart on the tail subsequence; it shares the same limit.
      diag_.assign(1, s);
      have_prev_ = false;
    }
  }

  bool have() const { return have_best_ && have_prev_; }
  double best() const { return best_; }
  double change() const { return std::abs(best_ - prev_best_); }

 private:
  std::vector<double> diag_;
  double best_ = 0.0;
  double prev_best_ = 0.0;
  bool have_best_ = false;
  bool have_prev_ = false;
};

int sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

}  // namespace

double integrate_oscillatory(const std::function<double(double)>& f,
                             const QuadratureSpec& spec) {
  spec.validate();
  PanelIntegrator integ(f, spec);
  double sum = 0.0;
  double x = 0.0;
  double width = 1.0;
  double prev_abs = std::numeric_limits<double>::infinity();
  for (long k = 0; k < spec.max_subdivisions; ++k) {
    const double scale = std::max(1.0, std::abs(sum));
    const double tol = std::max(spec.abs_tol, spec.rel_tol * scale);
    const double part = integ.panel(x, x + width, 0.05 * tol);
    sum += part;
    const double cut = std::max(spec.tail_cutoff, 0.05 * tol);
    if (std::abs(part) <= cut && prev_abs <= cut) return sum;
    prev_abs = std::abs(part);
    x += width;
    width *= 2.0;
  }
  throw NonConvergenceError("integrate_oscillatory: panel budget exhausted");
}

double integrate_oscillatory(const std::function<double(double)>& f,
                             const SinePhase& phase,
                             const QuadratureSpec& spec) {
  spec.validate();
  if (!phase.value) return integrate_oscillatory(f, spec);
  PanelIntegrator integ(f, spec);
  WynnEpsilon eps;

  const auto sine_at = [&](double x) { return std::sin(phase.value(x)); };
  const auto step_hint = [&](double x) {
    double d = 0.0;
    if (phase.deriv) d = std::abs(phase.deriv(x));
    if (!(d > 0.0) || !std::isfinite(d)) return 1.0;
    double h = kPi / d;
    if (phase.deriv) {
      const double d2 = std::abs(phase.deriv(x + h));
      if (std::isfinite(d2) && d2 > d) h = kPi / d2;
    }
    return 0.9 * h;
  };

  double x = 0.0;
  double sum = 0.0;
  double prev_abs = std::numeric_limits<double>::infinity();
  int stable = 0;

  for (long panel_index = 0; panel_index < spec.max_subdivisions; ++panel_index) {
    // Locate the next sign change of sin(phase).
    double h = std::max(step_hint(x), 1e-14 * (1.0 + x));
    double lo = x;
    const double probe = x + 1e-6 * h;
    int ref_sign = sign_of(sine_at(probe));
    if (ref_sign == 0) ref_sign = sign_of(sine_at(x + 0.5 * h));
    bool bracketed = false;
    double hi = x;
    for (int expand = 0; expand < 200; ++expand) {
      hi = lo + h;
      const int s = sign_of(sine_at(hi));
      if (s != 0 && s != ref_sign) {
        bracketed = true;
        break;
      }
      lo = hi;
      h *= 1.4;
    }
    if (!bracketed) {
      // No further oscillation found; finish with geometrically growing
      // panels from x.
      double width = std::max(1.0, h);
      double tail_prev = std::numeric_limits<double>::infinity();
      double pos = x;
      for (long k = 0; k < spec.max_subdivisions; ++k) {
        const double scale = std::max(1.0, std::abs(sum));
        const double tol = std::max(spec.abs_tol, spec.rel_tol * scale);
        const double part = integ.panel(pos, pos + width, 0.05 * tol);
        sum += part;
        const double cut = std::max(spec.tail_cutoff, 0.05 * tol);
        if (std::abs(part) <= cut && tail_prev <= cut) return sum;
        tail_prev = std::abs(part);
        pos += width;
        width *= 2.0;
      }
      throw NonConvergenceError("integrate_oscillatory: panel budget exhausted");
    }
    // Bisect to the crossing.
    double blo = lo;
    double bhi = hi;
    for (int it = 0; it < 80 && (bhi - blo) > 1e-15 * (1.0 + bhi); ++it) {
      const double mid = 0.5 * (blo + bhi);
      const int s = sign_of(sine_at(mid));
      if (s == ref_sign)
        blo = mid;
      else
        bhi = mid;
    }
    const double crossing = bhi;

    const double scale = std::max(1.0, std::abs(sum));
    const double tol = std::max(spec.abs_tol, spec.rel_tol * scale);
    const double part = integ.panel(x, crossing, 0.05 * tol);
    sum += part;
    eps.add(sum);
    x = crossing;

    const double cut = std::max(spec.tail_cutoff, 0.05 * tol);
    if (std::abs(part) <= cut && prev_abs <= cut) return sum;
    prev_abs = std::abs(part);

    if (panel_index >= 5 && eps.have()) {
      const double est = eps.best();
      const double conv_tol =
          std::max(spec.abs_tol, spec.rel_tol * std::max(1.0, std::abs(est)));
      if (eps.change() <= 0.25 * conv_tol && std::isfinite(est)) {
        if (++stable >= 2) return est;
      } else {
        stable = 0;
      }
    }
  }
  throw NonConvergenceError("integrate_oscillatory: panel budget exhausted");
}

}  // namespace mmtc::numerics
