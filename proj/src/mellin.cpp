#include "circesc/mellin.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "circesc/numeric_util.hpp"
#include "circesc/survival.hpp"

namespace circesc {

namespace {

constexpr double kPoleGuard = 1e-6;

void guard_small(const Complex& v, const char* what) {
  if (std::abs(v) < kPoleGuard) throw PoleError(std::string("p_tilde: pole proximity at ") + what);
}

// prefactor common to every transform: x^{s+1} / (s (s+1) (s+2))
Complex cubic_factor(Complex s) {
  guard_small(s, "s = 0");
  guard_small(s + 1.0, "s = -1");
  guard_small(s + 2.0, "s = -2");
  return s * (s + 1.0) * (s + 2.0);
}

}  // namespace

Complex p_tilde_closed(int q, Complex s) {
  guard_small(s - 1.0, "s = 1");
  const Complex cubic = cubic_factor(s);
  const Complex z = riemann_zeta(s);
  const Complex z1 = riemann_zeta(s + 1.0);
  guard_small(z1, "a zero of zeta(s+1)");
  switch (q) {
    case 1:
      return pow_real_base(kTwoPi, s + 1.0) * (z - 1.0) / (2.0 * cubic * z1);
    case 2:
      return pow_real_base(kPi, s + 1.0) * z / (cubic * z1);
    case 3: {
      const Complex p3 = pow_real_base(3.0, s + 1.0) - 1.0;
      guard_small(p3, "3^{s+1} = 1");
      const Complex num = pow_real_base(3.0, s) * (7.0 * z + pow_real_base(2.0, s + 2.0) * (z - 1.0) + 2.0) -
                          z * (pow_real_base(2.0, s + 2.0) + 1.0);
      return pow_real_base(kTwoPi / 3.0, s + 1.0) * num / (2.0 * cubic * p3 * z1);
    }
    case 4: {
      const Complex p2 = pow_real_base(2.0, s + 1.0) - 1.0;
      guard_small(p2, "2^{s+1} = 1");
      const Complex num = pow_real_base(2.0, s) * (13.0 * z + pow_real_base(3.0, s + 2.0) * (z - 1.0) + 3.0) -
                          z * (pow_real_base(3.0, s + 2.0) + 5.0);
      return pow_real_base(kPi / 2.0, s + 1.0) * num / (4.0 * cubic * p2 * z1);
    }
    case 6: {
      const Complex p2 = pow_real_base(2.0, s + 1.0) - 1.0;
      const Complex p3 = pow_real_base(3.0, s + 1.0) - 1.0;
      guard_small(p2, "2^{s+1} = 1");
      guard_small(p3, "3^{s+1} = 1");
      const Complex num =
          pow_real_base(6.0, s) + 8.0 * pow_real_base(12.0, s) - 25.0 * pow_real_base(30.0, s) +
          (1.0 - 3.0 * pow_real_base(2.0, s) - 13.0 * pow_real_base(3.0, s) -
           8.0 * pow_real_base(4.0, s) + 25.0 * pow_real_base(5.0, s) +
           27.0 * pow_real_base(6.0, s) - 25.0 * pow_real_base(10.0, s) +
           8.0 * pow_real_base(12.0, s) - 25.0 * pow_real_base(15.0, s) +
           25.0 * pow_real_base(30.0, s)) *
              z;
      return pow_real_base(kPi / 3.0, s + 1.0) * num / (2.0 * cubic * p2 * p3 * z1);
    }
    default:
      throw std::domain_error("p_tilde_closed: closed form only for q in {1,2,3,4,6}");
  }
}

Complex p_tilde_general(int r, int q, Complex s) {
  if (q < 1) throw std::domain_error("p_tilde_general: q must be >= 1");
  if (r == 0 && q != 1) throw std::domain_error("p_tilde_general: r = 0 requires q = 1");
  if (q > 1 && (r < 1 || r >= q || gcd_ll(r, q) != 1))
    throw std::domain_error("p_tilde_general: need gcd(r, q) = 1 with 0 < r < q");
  guard_small(s - 1.0, "s = 1");
  const Complex cubic = cubic_factor(s);
  const auto tables = shared_tables(static_cast<std::size_t>(std::max(q, 2)));

  // character tables and L values per divisor modulus q' = q/b
  struct PerModulus {
    CharacterTable table;
    std::vector<Complex> L_s;
    std::vector<Complex> L_s1;
  };
  std::map<int, PerModulus> cache;
  auto per_modulus = [&](int qp) -> PerModulus& {
    auto it = cache.find(qp);
    if (it != cache.end()) return it->second;
    PerModulus pm;
    pm.table = character_table(qp);
    for (const auto& chi : pm.table.characters) {
      pm.L_s.push_back(dirichlet_L(s, chi));
      pm.L_s1.push_back(dirichlet_L(s + 1.0, chi));
    }
    return cache.emplace(qp, std::move(pm)).first->second;
  };

  Complex total{0.0, 0.0};
  for (int a = 1; a <= q; ++a) {
    const int b = static_cast<int>(gcd_ll(a, q));
    const int ap = a / b;
    const int qp = q / b;
    const long long m = (static_cast<long long>(a) * r) % q;
    Complex bracket = pow_real_base(static_cast<double>(q - m) / q, s + 2.0);
    if (m != 0) bracket += pow_real_base(static_cast<double>(m) / q, s + 2.0);

    auto& pm = per_modulus(qp);
    const double phi_b = static_cast<double>(tables->phi[static_cast<std::size_t>(b)]);
    const double mu_b = static_cast<double>(tables->mu[static_cast<std::size_t>(b)]);
    const auto b_primes = distinct_prime_factors(b);

    Complex inner{0.0, 0.0};
    for (std::size_t ci = 0; ci < pm.table.characters.size(); ++ci) {
      const auto& chi = pm.table.characters[ci];
      Complex den = pm.L_s1[ci];
      guard_small(den, "a zero of L(s+1, chi)");
      for (long long p : b_primes) {
        const Complex factor =
            1.0 - chi.value(p) * pow_real_base(static_cast<double>(p), -s - 1.0);
        guard_small(factor, "an Euler factor zero");
        den *= factor;
      }
      inner += std::conj(chi.value(ap)) * (phi_b * pm.L_s[ci] - mu_b) / den;
    }
    const double phi_qp = static_cast<double>(pm.table.characters.size());
    total += bracket / (pow_real_base(static_cast<double>(b), s + 1.0) * phi_qp) * inner;
  }
  return pow_real_base(kTwoPi, s + 1.0) / (2.0 * cubic) * total;
}

Complex p_tilde_q_holes(int q, Complex s) {
  if (q < 2) throw std::domain_error("p_tilde_q_holes: q must be >= 2");
  guard_small(s - 1.0, "s = 1");
  const Complex cubic = cubic_factor(s);
  const Complex z1 = riemann_zeta(s + 1.0);
  guard_small(z1, "a zero of zeta(s+1)");
  return pow_real_base(kTwoPi, s + 1.0) * riemann_zeta(s) /
         (2.0 * pow_real_base(static_cast<double>(q), s) * cubic * z1);
}

MellinModel closed_form_model(int q) {
  if (q != 1 && q != 2 && q != 3 && q != 4 && q != 6)
    throw std::domain_error("closed_form_model: q must be in {1,2,3,4,6}");
  MellinModel m;
  m.q = q;
  m.r = q == 1 ? 0 : 1;
  m.source = MellinSource::TableClosedForm;
  m.evaluator = [q](Complex s) { return p_tilde_closed(q, s); };
  return m;
}

MellinModel character_series_model(int r, int q) {
  MellinModel m;
  m.q = q;
  m.r = r;
  m.source = MellinSource::CharacterSeries;
  m.evaluator = [r, q](Complex s) { return p_tilde_general(r, q, s); };
  return m;
}

MellinModel q_hole_model(int q) {
  MellinModel m;
  m.q = q;
  m.r = 1;
  m.source = MellinSource::QHole;
  m.evaluator = [q](Complex s) { return p_tilde_q_holes(q, s); };
  return m;
}

ResidueEstimate residue_numeric(const MellinModel& model, Complex s0, double delta,
                                double radius, int points) {
  if (!(delta > 0.0)) throw std::domain_error("residue_numeric: delta must be > 0");
  if (points < 8) throw std::domain_error("residue_numeric: need at least 8 points");
  if (!(radius > 0.0)) throw std::domain_error("residue_numeric: radius must be > 0");

  const int m2 = 2 * points;
  std::vector<Complex> values(static_cast<std::size_t>(m2));
  std::vector<Complex> offsets(static_cast<std::size_t>(m2));
  for (int k = 0; k < m2; ++k) {
    const double phi = kTwoPi * k / m2;
    const Complex off{radius * std::cos(phi), radius * std::sin(phi)};
    offsets[static_cast<std::size_t>(k)] = off;
    values[static_cast<std::size_t>(k)] = model.evaluator(s0 + off);
  }

  // n(d) = (radius-circle mean of) P(s) * d^{-(s - s0)} * unit tangent
  auto contour_mean = [&](double d, int stride) {
    const double ld = std::log(d);
    std::vector<double> re, im;
    for (int k = 0; k < m2; k += stride) {
      const Complex w = values[static_cast<std::size_t>(k)] *
                        std::exp(-offsets[static_cast<std::size_t>(k)] * ld) *
                        (offsets[static_cast<std::size_t>(k)] / radius);
      re.push_back(w.real());
      im.push_back(w.imag());
    }
    const double n = static_cast<double>(re.size());
    return Complex{pairwise_sum(re) / n, pairwise_sum(im) / n} * radius;
  };

  const double d1 = delta;
  const double d2 = delta * 0.5;
  const Complex n1_coarse = contour_mean(d1, 2);
  const Complex n1 = contour_mean(d1, 1);
  if (std::abs(n1 - n1_coarse) > 1e-8)
    throw AccuracyError("residue_numeric: trapezoid rule did not converge at 2x points");
  const Complex n2_coarse = contour_mean(d2, 2);
  const Complex n2 = contour_mean(d2, 1);
  if (std::abs(n2 - n2_coarse) > 1e-8)
    throw AccuracyError("residue_numeric: trapezoid rule did not converge at 2x points");

  // n(d) is linear in ln d: constant part + log coefficient (double pole)
  ResidueEstimate est;
  est.log_coefficient = (n1 - n2) / (std::log(d1) - std::log(d2));
  est.coefficient = n1 - est.log_coefficient * std::log(d1);
  return est;
}

double AsymptoticExpansion::evaluate_real_poles(double delta) const {
  const double ld = std::log(delta);
  std::vector<double> terms;
  terms.reserve(real_pole_terms.size());
  for (const auto& t : real_pole_terms)
    terms.push_back(std::pow(delta, -t.pole) * (t.coefficient + t.log_coefficient * ld));
  return pairwise_sum(terms);
}

double AsymptoticExpansion::evaluate(double delta) const {
  const double ld = std::log(delta);
  std::vector<double> terms;
  terms.reserve(critical_terms.size());
  const double half_power = std::sqrt(delta);
  for (const auto& t : critical_terms) {
    // pole pair at -1/2 +- i tau contributes 2 sqrt(delta) Re(c e^{-i tau ln d})
    const Complex rot{std::cos(t.tau * ld), -std::sin(t.tau * ld)};
    terms.push_back(2.0 * half_power * (t.coefficient * rot).real());
  }
  return evaluate_real_poles(delta) + pairwise_sum(terms);
}

AsymptoticExpansion asymptotic_expansion(const MellinModel& model, int real_pole_cutoff,
                                         int zero_count) {
  if (real_pole_cutoff < 1)
    throw std::domain_error("asymptotic_expansion: real_pole_cutoff must be >= 1");
  if (zero_count < 0) throw std::domain_error("asymptotic_expansion: zero_count must be >= 0");

  std::vector<double> poles{1.0, -1.0};
  if (real_pole_cutoff >= 2) poles.push_back(-2.0);
  for (int p = 3; p <= real_pole_cutoff; p += 2) poles.push_back(static_cast<double>(-p));

  AsymptoticExpansion expansion;
  for (double s0 : poles) {
    const auto est = residue_numeric(model, Complex{s0, 0.0}, 0.5);
    if (std::abs(est.coefficient.imag()) > 1e-7 || std::abs(est.log_coefficient.imag()) > 1e-7)
      throw AccuracyError("asymptotic_expansion: real pole residue has an imaginary part");
    double logc = est.log_coefficient.real();
    // noise floor: simple poles report |log part| at the quadrature error level
    if (std::abs(logc) < 1e-9 * std::max(1.0, std::abs(est.coefficient.real()))) logc = 0.0;
    expansion.real_pole_terms.push_back({s0, est.coefficient.real(), logc});
  }

  if (zero_count > 0) {
    const ZeroList& zeros = zeros_in_box();
    if (static_cast<std::size_t>(zero_count) > zeros.ordinates.size())
      throw std::domain_error("asymptotic_expansion: zero_count exceeds the zeros available");
    for (int j = 0; j < zero_count; ++j) {
      const double tau = zeros.ordinates[static_cast<std::size_t>(j)];
      double gap = tau;  // distance to the conjugate line is 2 tau, to tau=0 poles >> radius
      if (j > 0) gap = std::min(gap, tau - zeros.ordinates[static_cast<std::size_t>(j - 1)]);
      if (static_cast<std::size_t>(j + 1) < zeros.ordinates.size())
        gap = std::min(gap, zeros.ordinates[static_cast<std::size_t>(j + 1)] - tau);
      const double radius = std::min(0.2, 0.5 * gap);
      const auto est = residue_numeric(model, Complex{-0.5, tau}, 0.5, radius);
      if (std::abs(est.log_coefficient) > 1e-6)
        throw AccuracyError("asymptotic_expansion: unexpected multiple zero on the critical line");
      expansion.critical_terms.push_back({tau, est.coefficient});
    }
  }
  return expansion;
}

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double sum = left + right;
  if (depth <= 0) return sum;
  if (std::abs(sum - whole) <= 15.0 * tol) return sum + (sum - whole) / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, tol * 0.5, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, tol * 0.5, depth - 1);
}

double integrate_pieces(const std::function<double(double)>& f, std::vector<double> cuts) {
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [](double x, double y) { return std::abs(x - y) < 1e-14; }),
             cuts.end());
  // coarse pass for the tolerance scale
  double coarse = 0.0;
  std::vector<double> fvals(cuts.size());
  for (std::size_t i = 0; i < cuts.size(); ++i) fvals[i] = f(cuts[i]);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double m = 0.5 * (cuts[i] + cuts[i + 1]);
    coarse += (cuts[i + 1] - cuts[i]) / 6.0 * (fvals[i] + 4.0 * f(m) + fvals[i + 1]);
  }
  const double total_len = cuts.back() - cuts.front();
  const double tol_total = 1e-9 * std::max(1.0, std::abs(coarse));
  double out = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i], b = cuts[i + 1];
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    const double whole = (b - a) / 6.0 * (fvals[i] + 4.0 * fm + fvals[i + 1]);
    out += adaptive_simpson(f, a, b, fvals[i], fm, fvals[i + 1], whole,
                            tol_total * (b - a) / total_len, 28);
  }
  return out;
}

// seed cut points: kink locations of the finite survival sum for small n,
// log-spaced filler below them
std::vector<double> seed_cuts(const std::vector<double>& kinks, double lo, double hi) {
  std::vector<double> cuts{lo, hi};
  for (double k : kinks)
    if (k > lo * (1.0 + 1e-12) && k < hi * (1.0 - 1e-12)) cuts.push_back(k);
  const double smallest_kink = kinks.empty() ? hi : *std::min_element(kinks.begin(), kinks.end());
  const double fill_hi = std::max(lo, std::min(hi, smallest_kink));
  if (fill_hi > lo) {
    const int per_decade = 48;
    const double l0 = std::log10(lo), l1 = std::log10(fill_hi);
    const int n = std::max(2, static_cast<int>(std::ceil((l1 - l0) * per_decade)));
    for (int i = 1; i < n; ++i)
      cuts.push_back(std::pow(10.0, l0 + (l1 - l0) * i / static_cast<double>(n)));
  }
  return cuts;
}

double mellin_quadrature_impl(const std::function<double(double)>& p_of_delta,
                              const std::vector<double>& kinks, double support_end, double s,
                              double delta_min) {
  if (!(s > 1.0)) throw std::domain_error("mellin_quadrature: need real s > 1");
  if (!(delta_min > 0.0) || delta_min >= support_end)
    throw std::domain_error("mellin_quadrature: delta_min out of range");
  auto f = [&](double d) { return p_of_delta(d) * std::pow(d, s - 1.0); };
  const double body = integrate_pieces(f, seed_cuts(kinks, delta_min, support_end));
  // head [0, delta_min): leading 1/delta behavior measured, not assumed
  const double a = delta_min * p_of_delta(delta_min);
  const double head = a * std::pow(delta_min, s - 1.0) / (s - 1.0);
  return body + head;
}

}  // namespace

double mellin_quadrature_two_holes(int r, int q, double s, double delta_min) {
  const RationalAngle theta{r, q};
  auto p = [theta](double d) { return p_infinity_two_holes(theta, d).value; };
  std::vector<double> kinks;
  double support_end = 0.0;
  for (long long n = 2; n <= 96; ++n) {
    const double thp = theta_reduced(n, theta);
    const double a = kTwoPi / static_cast<double>(n) - thp;
    if (n <= 8) support_end = std::max({support_end, a, thp});
    if (a > 0.0) kinks.push_back(a);
    if (thp > 0.0) kinks.push_back(thp);
  }
  return mellin_quadrature_impl(p, kinks, support_end, s, delta_min);
}

double mellin_quadrature_q_holes(int q, double s, double delta_min) {
  if (q < 2) throw std::domain_error("mellin_quadrature_q_holes: q must be >= 2");
  auto p = [q](double d) { return p_infinity_q_holes(q, d).value; };
  std::vector<double> kinks;
  for (long long n = 2; n <= 96; ++n) {
    const long long qt = q / gcd_ll(n, q);
    kinks.push_back(kTwoPi / static_cast<double>(n * qt));
  }
  const double support_end = kTwoPi / q;
  return mellin_quadrature_impl(p, kinks, support_end, s, delta_min);
}

std::optional<ResidueReference> reference_residue(int q, int s) {
  // independent constants: Apery's zeta(3), zeta'(-2) = -zeta(3)/(4 pi^2),
  // zeta'(-1) = 1/12 - ln(Glaisher)
  constexpr double kZeta3 = 1.2020569031595942854;
  const double zp2 = -kZeta3 / (4.0 * kPi * kPi);
  constexpr double kZetaPrimeM1 = -0.16542114370045092921;
  const double l2 = std::log(2.0), l3 = std::log(3.0), l5 = std::log(5.0);

  auto ref = [](double c, double l = 0.0) { return ResidueReference{c, l}; };
  switch (q) {
    case 1:
      switch (s) {
        case 1: return ref(2.0);
        case -1: return ref(-13.0 / 12.0);
        case -2: return ref(3.0 / (2.0 * kPi));
        case -3: return ref(119.0 / (5760.0 * kPi * kPi * zp2));
      }
      break;
    case 2:
      switch (s) {
        case 1: return ref(1.0);
        case -1: return ref(-1.0 / 6.0);
        case -2: return ref(0.0);
        case -3: return ref(-1.0 / (720.0 * kPi * kPi * zp2));
      }
      break;
    case 3:
      switch (s) {
        case 1: return ref(1.0);
        case -1: return ref(-0.25 - 5.0 * l2 / (9.0 * l3));
        case -2: return ref(3.0 / (4.0 * kPi));
        case -3: return ref(49.0 / (5120.0 * kPi * kPi * zp2));
      }
      break;
    case 4:
      switch (s) {
        case 1: return ref(1.0);
        case -1: return ref(-1.0 / 3.0 - 11.0 * l3 / (16.0 * l2));
        case -2: return ref(3.0 / kPi);
        case -3: return ref(109.0 / (1620.0 * kPi * kPi * zp2));
      }
      break;
    case 6:
      switch (s) {
        case 1: return ref(1.0);
        case -1: {
          const double den = 72.0 * l2 * l3;
          const double c = (5.0 * l5 * (10.0 * l3 - 7.0 * l5) + l2 * (55.0 * l5 - 76.0 * l3) +
                            (10.0 * l5 - 8.0 * l2) * 12.0 * kZetaPrimeM1) /
                           den;
          const double l = 7.0 * (10.0 * l5 - 8.0 * l2) / den;
          return ref(c, l);
        }
        case -2: return ref(-3.0 / (2.0 * kPi));
        case -3: return ref(-79.0 / (6400.0 * kPi * kPi * zp2));
      }
      break;
    default:
      break;
  }
  return std::nullopt;
}

}  // namespace circesc
