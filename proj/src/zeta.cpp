#include "circesc/zeta.hpp"

#include <cmath>
#include <stdexcept>

#include "circesc/numeric_util.hpp"

namespace circesc {

Complex pow_real_base(double x, Complex w) {
  const double lx = std::log(x);
  const double mag = std::exp(w.real() * lx);
  const double ang = w.imag() * lx;
  return {mag * std::cos(ang), mag * std::sin(ang)};
}

namespace {

constexpr double kLogTwoPiHalf = 0.91893853320467274178;  // log(2*pi)/2
constexpr double kLogPi = 1.1447298858494001741;

inline Complex pow_real(double x, Complex w) { return pow_real_base(x, w); }

inline Complex expm1_c(Complex w) {
  if (std::abs(w) < 1e-4) {
    // exp(w) - 1 without cancellation
    return w * (1.0 + w * (0.5 + w * (1.0 / 6.0 + w * (1.0 / 24.0))));
  }
  return std::exp(w) - 1.0;
}

// Lanczos coefficients, g = 607/128, 15 terms (Godfrey's set).
constexpr double kLanczosG = 4.7421875;
constexpr double kLanczos[15] = {
    0.99999999999999709182,     57.156235665862923517,     -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,   0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4, 0.15808870322491248884e-3,
    -0.21026444172410488319e-3, 0.21743961811521264320e-3, -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4, 0.36899182659531622704e-5};

Complex lanczos_lgamma_right(Complex z) {
  // valid for Re z >= 0.5
  Complex acc = kLanczos[0];
  for (int k = 1; k < 15; ++k) acc += kLanczos[k] / (z - 1.0 + static_cast<double>(k));
  const Complex t = z + (kLanczosG - 0.5);
  return kLogTwoPiHalf + (z - 0.5) * std::log(t) - t + std::log(acc);
}

// log(sin(pi z)) without overflow for large |Im z|.
Complex log_sin_pi(Complex z) {
  const Complex w = kPi * z;
  if (std::abs(w.imag()) < 20.0) return std::log(std::sin(w));
  const Complex i{0.0, 1.0};
  if (w.imag() > 0.0) {
    // sin w = (i/2) e^{-iw} (1 - e^{2iw})
    return Complex(-std::log(2.0), kPi / 2.0) - i * w + std::log(1.0 - std::exp(2.0 * i * w));
  }
  return Complex(-std::log(2.0), -kPi / 2.0) + i * w + std::log(1.0 - std::exp(-2.0 * i * w));
}

// Euler-Maclaurin coefficients B_{2k}/(2k)! for k = 1..10.
constexpr double kEmCoef[10] = {
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
    1.0 / 74724249600.0,
    -3617.0 / 10670622842880000.0,
    43867.0 / 5109094217170944000.0,
    -174611.0 / 802857662698291200000.0};

// Kahan accumulator; the partial sum and the integral term cancel heavily
// for negative Re s, so plain summation would cost several digits there.
struct CompensatedSum {
  Complex sum{0.0, 0.0};
  Complex carry{0.0, 0.0};
  void add(Complex v) {
    const Complex y = v - carry;
    const Complex t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

// zeta(s, a) - 1/(s-1) by Euler-Maclaurin; entire in s.
Complex em_hurwitz_deflated(Complex s, double a) {
  const int n_terms = std::max(20, static_cast<int>(std::ceil(1.3 * std::abs(s.imag()))));
  CompensatedSum acc;
  for (int n = 0; n < n_terms; ++n) acc.add(pow_real(n + a, -s));

  const double na = n_terms + a;
  const double lna = std::log(na);
  // ((N+a)^{1-s} - 1)/(s-1), the integral term with the pole removed
  const Complex x = (1.0 - s) * lna;
  acc.add(-lna * (std::abs(x) < 1e-8 ? (1.0 + x * (0.5 + x / 6.0)) : expm1_c(x) / x));
  acc.add(0.5 * pow_real(na, -s));

  // Bernoulli corrections: B_{2k}/(2k)! * (N+a)^{-s-2k+1} * prod_{j<2k-1}(s+j)
  Complex rising = s;  // s(s+1)...(s+2k-2), built incrementally
  Complex napow = pow_real(na, -s - 1.0);
  const double inv_na2 = 1.0 / (na * na);
  for (int k = 1; k <= 10; ++k) {
    acc.add(kEmCoef[k - 1] * rising * napow);
    rising *= (s + static_cast<double>(2 * k - 1)) * (s + static_cast<double>(2 * k));
    napow *= inv_na2;
  }
  return acc.sum;
}

Complex em_zeta(Complex s) { return em_hurwitz_deflated(s, 1.0) + 1.0 / (s - 1.0); }

}  // namespace

Complex log_gamma(Complex z) {
  if (z.real() >= 0.5) return lanczos_lgamma_right(z);
  if (z.real() > -0.5 && !(z.imag() == 0.0 && z.real() <= 0.0)) {
    // one recurrence step keeps the path off the reflection branch cuts
    return lanczos_lgamma_right(z + 1.0) - std::log(z);
  }
  if (z.imag() == 0.0 && z.real() == std::floor(z.real()))
    throw PoleError("log_gamma: pole at nonpositive integer");
  return kLogPi - log_sin_pi(z) - lanczos_lgamma_right(1.0 - z);
}

Complex gamma_fn(Complex z) { return std::exp(log_gamma(z)); }

bool zeta_box_contains(Complex s) {
  return std::abs(s.real()) <= 30.0 && std::abs(s.imag()) <= 150.0;
}

Complex riemann_zeta(Complex s) {
  if (s == Complex{1.0, 0.0}) throw PoleError("riemann_zeta: pole at s = 1");
  if (s.real() >= 0.5 || std::abs(s) <= 0.45) return em_zeta(s);
  // functional equation: zeta(s) = 2^s pi^{s-1} sin(pi s/2) Gamma(1-s) zeta(1-s)
  const Complex one_minus = 1.0 - s;
  const Complex chi = pow_real(2.0, s) * pow_real(kPi, s - 1.0) * std::sin(kPi * s / 2.0) *
                      std::exp(lanczos_lgamma_right(one_minus));
  return chi * em_zeta(one_minus);
}

Complex hurwitz_zeta_deflated(Complex s, double a) {
  if (!(a > 0.0) || a > 1.0)
    throw std::domain_error("hurwitz_zeta: a must lie in (0, 1]");
  return em_hurwitz_deflated(s, a);
}

Complex hurwitz_zeta(Complex s, double a) {
  if (s == Complex{1.0, 0.0}) throw PoleError("hurwitz_zeta: pole at s = 1");
  return hurwitz_zeta_deflated(s, a) + 1.0 / (s - 1.0);
}

Complex dirichlet_L(Complex s, const DirichletCharacter& chi) {
  const int q = chi.modulus();
  if (chi.is_trivial() && s == Complex{1.0, 0.0})
    throw PoleError("dirichlet_L: trivial character has a pole at s = 1");
  Complex sum{0.0, 0.0};
  int units = 0;
  for (int a = 1; a <= q; ++a) {
    if (chi.root_exponent(a) < 0) continue;
    ++units;
    sum += chi.value(a) * hurwitz_zeta_deflated(s, static_cast<double>(a) / q);
  }
  Complex out = pow_real(static_cast<double>(q), -s) * sum;
  if (chi.is_trivial())
    out += static_cast<double>(units) * pow_real(static_cast<double>(q), -s) / (s - 1.0);
  return out;
}

Complex zeta_derivative(Complex s) {
  if (std::abs(s - Complex{1.0, 0.0}) < 0.1)
    throw PoleError("zeta_derivative: too close to the pole at s = 1");
  const double h = 1e-5;
  auto central = [&](double hh) {
    return (riemann_zeta(s + Complex{hh, 0.0}) - riemann_zeta(s - Complex{hh, 0.0})) /
           (2.0 * hh);
  };
  const Complex d1 = central(h);
  const Complex d2 = central(h / 2.0);
  return (4.0 * d2 - d1) / 3.0;  // one Richardson step
}

double riemann_siegel_theta(double t) {
  const Complex lg = log_gamma(Complex{0.25, t / 2.0});
  return lg.imag() - t / 2.0 * kLogPi;
}

double hardy_z(double t) {
  const Complex z = riemann_zeta(Complex{0.5, t});
  const double th = riemann_siegel_theta(t);
  const Complex v = Complex{std::cos(th), std::sin(th)} * z;
  return v.real();
}

ZeroList find_zeros(double t_max) {
  if (!(t_max > 0.0) || t_max > 150.0)
    throw std::domain_error("find_zeros: t_max must lie in (0, 150]");
  ZeroList out;
  const double step = 0.05;
  double t0 = 2.0;
  if (t_max <= t0) return out;
  double z0 = hardy_z(t0);
  for (double t1 = t0 + step; t0 < t_max; t0 = t1, t1 += step) {
    if (t1 > t_max) t1 = t_max;
    if (t1 <= t0) break;
    const double z1 = hardy_z(t1);
    if ((z0 < 0.0) != (z1 < 0.0)) {
      double lo = t0, hi = t1, zlo = z0;
      while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        const double zm = hardy_z(mid);
        if ((zlo < 0.0) != (zm < 0.0)) {
          hi = mid;
        } else {
          lo = mid;
          zlo = zm;
        }
      }
      const double tau = 0.5 * (lo + hi);
      if (std::abs(riemann_zeta(Complex{0.5, tau})) >= 1e-8)
        throw AccuracyError("find_zeros: refined ordinate fails |zeta| < 1e-8");
      out.ordinates.push_back(tau);
      out.multiplicities.push_back(1);
    }
    z0 = z1;
  }
  return out;
}

const ZeroList& zeros_in_box() {
  static const ZeroList zeros = find_zeros(150.0);
  return zeros;
}

}  // namespace circesc
