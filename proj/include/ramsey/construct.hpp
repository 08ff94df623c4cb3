// Nested-interval construction of alpha with {alpha q_n} in [eps, (r-1)/r],
// and the bound on monochromatic diffsequence length that such an alpha
// yields for the fractional-part coloring.
#pragma once

#include <span>
#include <string>
#include <vector>

#include "ramsey/certificate.hpp"
#include "ramsey/errors.hpp"
#include "ramsey/exactnum.hpp"
#include "ramsey/gapsets.hpp"

namespace ramsey {

/// eps = delta (r-1) / (r (2 + 1/(r-1) + delta))
inline BigRational epsilon_of(int r, const BigRational& delta) {
  if (r < 2) throw InputError("epsilon_of: r must be >= 2");
  if (delta.sign() <= 0) throw InputError("epsilon_of: delta must be positive");
  const BigRational rm1(r - 1);
  return delta * rm1 / (BigRational(r) * (BigRational(2) + BigRational(1) / rm1 + delta));
}

/// 2 + 1/(r-1) + delta
inline BigRational growth_factor(int r, const BigRational& delta) {
  return BigRational(2) + BigRational(1) / BigRational(r - 1) + delta;
}

/// Snapshot of the recursion after `step` intervals.
struct NestedState {
  int r = 2;
  BigRational delta;
  BigRational eps;
  std::vector<BigInt> q;
  std::vector<BigInt> z;
  RatInterval interval;
  std::size_t step = 0;
};

struct FracVerdict {
  BigInt q;
  BigRational frac;
  bool pass = false;
};

struct AlphaCertificate {
  BigRational alpha;
  RatInterval enclosure;
  BigRational eps;
  BigRational eps1;
  int r = 2;
  std::size_t steps = 0;
  std::size_t offset = 1;  // q_n = d_{n + offset - 1}
  std::vector<BigInt> z;
  std::vector<RatInterval> intervals;
  std::vector<FracVerdict> verdicts;

  bool all_pass() const {
    for (const auto& v : verdicts) {
      if (!v.pass) return false;
    }
    return true;
  }
};

namespace detail {

// Integer for messages: digits, or a digit count when long.
inline std::string short_str(const BigInt& v) {
  std::string s = v.get_str();
  if (s.size() <= 30) return s;
  return s.substr(0, 12) + "...(" + std::to_string(s.size()) + " digits)";
}

inline RatInterval nested_interval(const BigInt& z, const BigInt& q, const BigRational& eps, int r) {
  BigRational lo = (BigRational(z) + eps) / BigRational(q);
  BigRational hi = BigRational(BigInt(r * z + (r - 1)), BigInt(r * q));
  return {lo, hi};
}

}  // namespace detail

/// Runs the nested-interval recursion over q_1 < ... < q_m. Each step picks
/// the smallest z_{k+1} with z_{k+1}/q_{k+1} >= (z_k + eps)/q_k, and every
/// containment I_{k+1} in I_k is checked exactly. alpha is the midpoint of I_m.
inline AlphaCertificate build_alpha(std::span<const BigInt> q, int r, const BigRational& delta, std::size_t m) {
  if (r < 2) throw InputError("build_alpha: r must be >= 2");
  if (delta.sign() <= 0) throw InputError("build_alpha: delta must be positive");
  if (m < 1 || m > q.size()) throw InputError("build_alpha: step count must be in [1, |q|]");
  if (q.front() < 1) throw InputError("build_alpha: q must be positive");

  const BigRational factor = growth_factor(r, delta);
  for (std::size_t n = 0; n + 1 < m; ++n) {
    if (q[n + 1] <= q[n]) throw InputError("build_alpha: q not strictly increasing at index " + std::to_string(n + 1));
    if (BigRational(q[n + 1]) < factor * BigRational(q[n])) {
      throw InputError("build_alpha: growth hypothesis q_{n+1} >= " + factor.str() + " q_n fails at n = " +
                       std::to_string(n + 1) + " (" + q[n].get_str() + ", " + q[n + 1].get_str() + ")");
    }
  }

  NestedState st;
  st.r = r;
  st.delta = delta;
  st.eps = epsilon_of(r, delta);
  st.q.assign(q.begin(), q.begin() + static_cast<std::ptrdiff_t>(m));
  st.z.push_back(0);
  st.interval = detail::nested_interval(0, q[0], st.eps, r);
  st.step = 1;

  AlphaCertificate out;
  out.intervals.push_back(st.interval);
  const BigRational width_num = BigRational(r - 1) - BigRational(r) * st.eps;

  for (std::size_t k = 0; k + 1 < m; ++k) {
    const BigInt& qk = q[k];
    const BigInt& qn = q[k + 1];
    const BigRational left = (BigRational(st.z[k]) + st.eps) / BigRational(qk);
    BigInt z_next = (left * BigRational(qn)).ceil();
    const BigRational landing(z_next, qn);
    if (landing < left || landing > left + BigRational(BigInt(1), qn)) {
      throw InternalError("build_alpha: z_{k+1}/q_{k+1} left the first subinterval at step " + std::to_string(k + 1));
    }
    RatInterval next = detail::nested_interval(z_next, qn, st.eps, r);
    if (!st.interval.contains(next)) {
      throw InternalError("build_alpha: nesting failed at step " + std::to_string(k + 1));
    }
    if (next.length() != width_num / (BigRational(r) * BigRational(qn))) {
      throw InternalError("build_alpha: interval width mismatch at step " + std::to_string(k + 1));
    }
    st.z.push_back(std::move(z_next));
    st.interval = next;
    st.step = k + 2;
    out.intervals.push_back(std::move(next));
  }

  out.alpha = st.interval.midpoint();
  out.enclosure = st.interval;
  out.eps = st.eps;
  out.eps1 = st.eps;
  out.r = r;
  out.steps = m;
  out.z = st.z;

  const BigRational top(BigInt(r - 1), BigInt(r));
  for (std::size_t n = 0; n < m; ++n) {
    BigRational f = frac(out.alpha * BigRational(q[n]));
    bool ok = st.eps <= f && f <= top;
    out.verdicts.push_back({q[n], std::move(f), ok});
  }
  return out;
}

/// First 1-based index N from which d_{n+1} >= factor * d_n holds for every
/// enumerated n >= N.
template <class Int>
std::size_t growth_offset(const BasicGapSetView<Int>& view, const BigRational& factor) {
  std::size_t offset = 1;
  for (std::size_t n = 1; n < view.size(); ++n) {
    if (BigRational(detail::to_big(view[n])) < factor * BigRational(detail::to_big(view[n - 1]))) offset = n + 1;
  }
  return offset;
}

/// Builds alpha from the tail q_n = d_{n+N-1} on which the growth condition
/// holds and rescales eps to eps1 = eps d_1 / d_N so the bound covers all of D.
template <class Int>
AlphaCertificate build_alpha_for(const BasicGapSetView<Int>& view, int r, const BigRational& delta, std::size_t steps) {
  if (view.empty()) throw InputError("build_alpha_for: empty gap set");
  const std::size_t offset = growth_offset(view, growth_factor(r, delta));
  std::vector<BigInt> q;
  for (std::size_t i = offset - 1; i < view.size(); ++i) q.push_back(detail::to_big(view[i]));
  if (steps > q.size()) {
    std::string msg = "build_alpha_for: only " + std::to_string(q.size()) + " tail elements enumerated";
    if (offset > 1) {
      const std::size_t n = offset - 1;
      msg += "; growth factor " + growth_factor(r, delta).str() + " fails at index " + std::to_string(n) + ": d_" +
             std::to_string(n + 1) + " = " + detail::short_str(detail::to_big(view[n])) + " < factor * d_" + std::to_string(n) +
             ", d_" + std::to_string(n) + " = " + detail::short_str(detail::to_big(view[n - 1]));
    }
    throw InputError(msg);
  }
  AlphaCertificate cert = build_alpha(q, r, delta, steps);
  cert.offset = offset;
  cert.eps1 = cert.eps * BigRational(detail::to_big(view[0]), q.front());
  return cert;
}

/// The part of D that a build_alpha_for certificate covers: d_1 .. d_{N+m-1}.
/// Its bound is the last covered element.
template <class Int>
BasicGapSetView<Int> covered_prefix(const BasicGapSetView<Int>& view, const AlphaCertificate& cert) {
  const std::size_t count = std::min(view.size(), cert.offset - 1 + cert.steps);
  BasicGapSetView<Int> out;
  out.elements.assign(view.begin(), view.begin() + static_cast<std::ptrdiff_t>(count));
  out.bound = count == 0 ? Int(0) : out.elements.back();
  return out;
}

/// frac(alpha d) in [eps, (r-1)/r] for every enumerated d.
template <class Int>
Certificate certify_fracs(const Q5Number& alpha, const BasicGapSetView<Int>& d_view, const BigRational& eps, int r) {
  if (r < 2) throw InputError("certify_fracs: r must be >= 2");
  const BigRational top(BigInt(r - 1), BigInt(r));
  if (eps.sign() <= 0 || eps > top) throw InputError("certify_fracs: need 0 < eps <= (r-1)/r");
  Certificate cert;
  cert.claim = "fracs_in_window";
  cert.parameters = {{"alpha", to_json(alpha)}, {"eps", eps.str()}, {"r", r}, {"window", {eps.str(), top.str()}}};
  cert.verified_range = {{"count", d_view.size()}, {"bound", to_json(detail::to_big(d_view.bound))}};
  if (!d_view.empty()) {
    cert.verified_range["first"] = to_json(detail::to_big(d_view.elements.front()));
    cert.verified_range["last"] = to_json(detail::to_big(d_view.elements.back()));
  }
  cert.pass = true;
  const Q5Number lo(eps);
  const Q5Number hi(top);
  for (const auto& d : d_view) {
    Q5Number f = frac(alpha * Q5Number(BigRational(detail::to_big(d))));
    if (q5_sign(f - lo) < 0 || q5_sign(hi - f) < 0) {
      cert.pass = false;
      cert.counterexample = {{"d", to_json(detail::to_big(d))}, {"frac", to_json(f)}, {"approx", f.approx()}};
      break;
    }
  }
  cert.note = "verified on the enumerated elements only";
  return cert;
}

/// ceil(1/(r eps)) + 1
inline BigInt diffseq_bound_from_eps(int r, const BigRational& eps) {
  if (r < 2) throw InputError("diffseq_bound_from_eps: r must be >= 2");
  if (eps.sign() <= 0 || eps > BigRational(BigInt(r - 1), BigInt(r))) {
    throw InputError("diffseq_bound_from_eps: need 0 < eps <= (r-1)/r");
  }
  return (BigRational(1) / (BigRational(r) * eps)).ceil() + 1;
}

inline json to_json(const AlphaCertificate& a) {
  json z = json::array();
  for (const auto& v : a.z) z.push_back(to_json(v));
  json intervals = json::array();
  for (const auto& i : a.intervals) intervals.push_back(to_json(i));
  json verdicts = json::array();
  for (const auto& v : a.verdicts) {
    verdicts.push_back({{"q", to_json(v.q)}, {"frac", v.frac.str()}, {"pass", v.pass}});
  }
  return {
      {"alpha", a.alpha.str()},
      {"alpha_approx", a.alpha.to_double()},
      {"enclosure", to_json(a.enclosure)},
      {"eps", a.eps.str()},
      {"eps1", a.eps1.str()},
      {"r", a.r},
      {"steps", a.steps},
      {"offset", a.offset},
      {"z", z},
      {"intervals", intervals},
      {"verdicts", verdicts},
      {"all_pass", a.all_pass()},
  };
}

}  // namespace ramsey
